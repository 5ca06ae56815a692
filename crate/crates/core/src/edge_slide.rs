//! Edge slides `a_j -> ell . a_j` of the rose and the action of their lifts on
//! `H_1` of the cover.
//!
//! The lifted action is computed two ways. [`lifted_action_formula`] uses the
//! closed formula `F(w) = w + sum_g xi_{(g,j)}(w) [g . ell~]`.
//! [`lifted_action_oracle`] builds the chain map directly by path lifting,
//! sending each edge `(g, i)` to the lift at `g` of the substituted generator,
//! and never looks at cocycles. The two must agree.

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cover::{CoverGraph, Edge};
use crate::finite_group::FiniteGroup;
use crate::homology::{ActionMatrix, Chain1, EdgeCocycle, HomologyBasis, HomologyClass, HomologyError};
use crate::linalg::{QMatrix, QVector, Rational};
use crate::word::{Letter, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlideError {
    #[error("slide loop uses the slid petal a{j}")]
    PetalInLoop { j: usize },
    #[error("petal {petal} out of range 1..={n}")]
    PetalOutOfRange { petal: usize, n: usize },
    #[error("slide loop does not lift to a closed loop (q(ell) != e)")]
    DoesNotLift,
    #[error("slide is on a rose of rank {slide}, cover is over rank {cover}")]
    RankMismatch { slide: usize, cover: usize },
    #[error("basis must be a basis of the whole cover")]
    NotWholeBasis,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// The automorphism `a_j -> ell . a_j`, `a_i -> a_i` (`i != j`) of `F_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SlideAutomorphism {
    n: usize,
    j: usize,
    ell: Word,
}

impl SlideAutomorphism {
    pub fn new(n: usize, j: usize, ell: Word) -> Result<Self, SlideError> {
        if !(1..=n).contains(&j) {
            return Err(SlideError::PetalOutOfRange { petal: j, n });
        }
        ell.check_rank(n)?;
        if ell.uses_petal(j) {
            return Err(SlideError::PetalInLoop { j });
        }
        Ok(SlideAutomorphism { n, j, ell })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn petal(&self) -> usize {
        self.j
    }

    pub fn ell(&self) -> &Word {
        &self.ell
    }

    pub fn is_identity(&self) -> bool {
        self.ell.free_reduce().is_empty()
    }

    /// Image of a single letter (not reduced).
    pub fn image_of_letter(&self, l: Letter) -> Word {
        if l.petal != self.j {
            return Word(vec![l]);
        }
        if l.inverse {
            &Word(vec![l]) * &self.ell.inverse()
        } else {
            &self.ell * &Word(vec![l])
        }
    }

    /// Image of `a_i`.
    pub fn image_of_generator(&self, i: usize) -> Word {
        self.image_of_letter(Letter::pos(i))
    }

    /// Applies the substitution letter by letter and freely reduces.
    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Vec::with_capacity(w.len() + self.ell.len());
        for &l in w.letters() {
            out.extend(self.image_of_letter(l).0);
        }
        Word(out).free_reduce()
    }

    /// Whether the slide lifts to the cover, i.e. `q(ell) = e`.
    pub fn lifts_to(&self, cover: &CoverGraph) -> bool {
        self.n == cover.rank() && cover.evaluate(&self.ell) == FiniteGroup::IDENTITY
    }

    fn check_against(&self, cover: &CoverGraph, basis: &HomologyBasis) -> Result<(), SlideError> {
        if self.n != cover.rank() {
            return Err(SlideError::RankMismatch { slide: self.n, cover: cover.rank() });
        }
        if basis.subgraph().removed_petal.is_some() || basis.subgraph().vertices.len() != cover.vertex_count() {
            return Err(SlideError::NotWholeBasis);
        }
        if !self.lifts_to(cover) {
            return Err(SlideError::DoesNotLift);
        }
        Ok(())
    }
}

/// A slide together with its lifted action on `H_1(Y)`.
#[derive(Debug, Clone)]
pub struct LiftedSlide {
    pub slide: SlideAutomorphism,
    /// `[ell~]`, the lift of `ell` at the identity vertex.
    pub ell_class: HomologyClass,
    /// `[g . ell~]`, indexed by `g`.
    pub translate_classes: Vec<HomologyClass>,
    /// Row vectors of `xi_{(g, j)}` in basis coordinates, indexed by `g`.
    pub pairings: Vec<QVector>,
    pub matrix: ActionMatrix,
}

impl LiftedSlide {
    /// `sum_g xi_{(g,j)}(w) [g . ell~]`
    pub fn increment(&self, w: &HomologyClass) -> HomologyClass {
        let mut delta = QVector::zeros(self.ell_class.len());
        for (row, class) in self.pairings.iter().zip(&self.translate_classes) {
            let c = row.dot(w);
            delta.axpy(&c, class);
        }
        delta
    }

    /// `F^d(w) = w + d * increment(w)`; negative `d` gives the inverse slide's
    /// iterates.
    pub fn iterate_closed_form(&self, d: i64, w: &HomologyClass) -> HomologyClass {
        let mut out = w.clone();
        out.axpy(&Rational::from_integer(d.into()), &self.increment(w));
        out
    }
}

impl Serialize for LiftedSlide {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LiftedSlide", 4)?;
        st.serialize_field("petal", &self.slide.petal())?;
        st.serialize_field("ell", &self.slide.ell().to_string())?;
        st.serialize_field("ell_class", &self.ell_class)?;
        st.serialize_field("matrix", &self.matrix)?;
        st.end()
    }
}

/// The lifted action via the closed formula, column by column.
pub fn lifted_action_formula(
    slide: &SlideAutomorphism,
    cover: &CoverGraph,
    basis: &HomologyBasis,
) -> Result<LiftedSlide, SlideError> {
    slide.check_against(cover, basis)?;
    let ell_chain = Chain1::from_path(&cover.lift_word(slide.ell(), FiniteGroup::IDENTITY));
    let translate_classes = cover
        .vertices()
        .map(|g| basis.chain_to_class(cover, &ell_chain.translate(cover, g)))
        .collect::<Result<Vec<_>, _>>()?;
    let pairings: Vec<QVector> = cover.vertices().map(|g| basis.cocycle_row(Edge::new(g, slide.petal()))).collect();

    let rank = basis.rank();
    let mut matrix = QMatrix::identity(rank);
    for (row, class) in pairings.iter().zip(&translate_classes) {
        for (k, xi) in row.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (r, c) in class.0.iter().enumerate() {
                let updated = matrix.get(r, k) + xi * c;
                matrix.set(r, k, updated);
            }
        }
    }
    Ok(LiftedSlide {
        slide: slide.clone(),
        ell_class: translate_classes[FiniteGroup::IDENTITY].clone(),
        translate_classes,
        pairings,
        matrix,
    })
}

/// The chain map `F_#` of the lift fixing every vertex: edge `(g, i)` goes to
/// the chain of the lift at `g` of the image of `a_i`.
#[derive(Debug, Clone)]
pub struct SlideChainMap {
    images: Vec<Chain1>,
}

impl SlideChainMap {
    pub fn new(slide: &SlideAutomorphism, cover: &CoverGraph) -> Result<Self, SlideError> {
        if slide.rank() != cover.rank() {
            return Err(SlideError::RankMismatch { slide: slide.rank(), cover: cover.rank() });
        }
        let generator_images: Vec<Word> = (1..=cover.rank()).map(|i| slide.image_of_generator(i)).collect();
        let mut images = Vec::with_capacity(cover.edge_count());
        for e in cover.edges() {
            let path = cover.lift_word(&generator_images[e.petal - 1], e.source);
            // F must fix every vertex, so the image path ends where e does
            if path.end(cover) != cover.target(e) {
                return Err(SlideError::DoesNotLift);
            }
            images.push(Chain1::from_path(&path));
        }
        Ok(SlideChainMap { images })
    }

    pub fn edge_image(&self, cover: &CoverGraph, e: Edge) -> &Chain1 {
        &self.images[cover.edge_index(e)]
    }

    pub fn apply(&self, cover: &CoverGraph, z: &Chain1) -> Chain1 {
        let mut out = Chain1::zero();
        for (e, c) in z.support() {
            out.add_scaled(c, self.edge_image(cover, e));
        }
        out
    }
}

/// The lifted action computed independently by path lifting every edge.
pub fn lifted_action_oracle(
    slide: &SlideAutomorphism,
    cover: &CoverGraph,
    basis: &HomologyBasis,
) -> Result<ActionMatrix, SlideError> {
    slide.check_against(cover, basis)?;
    let map = SlideChainMap::new(slide, cover)?;
    let columns = basis
        .cycles()
        .iter()
        .map(|z| basis.chain_to_class(cover, &map.apply(cover, z)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QMatrix::from_columns(basis.rank(), &columns))
}

/// `xi_{(g,j)}` for every `g`, as cocycles.
pub fn pairing_cocycles(cover: &CoverGraph, j: usize) -> Vec<EdgeCocycle> {
    cover.vertices().map(|g| EdgeCocycle(Edge::new(g, j))).collect()
}
