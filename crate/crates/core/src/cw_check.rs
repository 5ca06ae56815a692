//! Computational checks of the module structure of `H_1(Y; Q)`:
//! the character identity `H_1 = Q[G]^(n-1) + Q`, isotypic decomposition for
//! deck groups of exponent 2, elevations of loops, and the rank obstruction
//! for loops whose elevations have fewer than `|G|` components.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cover::CoverGraph;
use crate::finite_group::FiniteGroup;
use crate::homology::{character, deck_action_matrix, orbit_rank, ActionMatrix, HomologyBasis, HomologyClass};
use crate::linalg::{QMatrix, QVector, Rational};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CwError {
    #[error("isotypic decomposition needs an abelian group of exponent 2; element {element} has order {order}")]
    UnsupportedGroup { element: usize, order: usize },
    #[error("commutator check needs a rose of rank 2, got {0}")]
    WrongRank(usize),
    #[error("word must be nonempty")]
    EmptyWord,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterReport {
    pub group_order: usize,
    pub rank: usize,
    /// Trace of each deck transformation, indexed by element.
    pub traces: QVector,
    pub verdict: bool,
}

/// Compares the character of `H_1(Y)` with that of `Q[G]^(n-1) + Q`:
/// `(n-1)|G| + 1` at the identity and `1` elsewhere.
pub fn verify_chevalley_weil(cover: &CoverGraph, basis: &HomologyBasis) -> CharacterReport {
    let order = cover.group().order();
    let expected_dim = (cover.rank() - 1) * order + 1;
    let traces = QVector(cover.vertices().map(|g| character(cover, basis, g)).collect());
    let verdict = traces.0.iter().enumerate().all(|(g, t)| {
        let want = if g == FiniteGroup::IDENTITY { expected_dim } else { 1 };
        *t == Rational::from_integer(want.into())
    });
    CharacterReport { group_order: order, rank: basis.rank(), traces, verdict }
}

/// A `+-1`-valued character, stored by its value on every element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignCharacter {
    pub values: Vec<i8>,
}

impl SignCharacter {
    pub fn value(&self, g: usize) -> i8 {
        self.values[g]
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 1)
    }
}

/// All characters of an abelian group of exponent 2, trivial first.
///
/// Generators are chosen greedily in element order; the k-th character sends
/// generator `i` to `-1` exactly when bit `i` of `k` is set.
pub fn sign_characters(group: &FiniteGroup) -> Result<Vec<SignCharacter>, CwError> {
    if let Some(x) = group.elements().find(|&x| group.mul(x, x) != FiniteGroup::IDENTITY) {
        return Err(CwError::UnsupportedGroup { element: x, order: group.element_order(x) });
    }
    let mut gens = Vec::new();
    let mut span = group.subgroup_generated(&[]);
    for x in group.elements() {
        if !span.contains(x) {
            gens.push(x);
            span = group.subgroup_generated(&gens);
        }
    }
    // exponent 2 means abelian, and every element is a unique product of a
    // subset of the generators
    let mut subset_of = vec![0usize; group.order()];
    for mask in 0..(1usize << gens.len()) {
        let x = gens
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(FiniteGroup::IDENTITY, |acc, (_, &g)| group.mul(acc, g));
        subset_of[x] = mask;
    }
    Ok((0..(1usize << gens.len()))
        .map(|k| SignCharacter {
            values: subset_of.iter().map(|&mask| if (mask & k).count_ones() % 2 == 0 { 1 } else { -1 }).collect(),
        })
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct IsotypicReport {
    pub characters: Vec<SignCharacter>,
    pub dims: Vec<usize>,
    pub projectors: Vec<ActionMatrix>,
    pub idempotent: bool,
    pub orthogonal: bool,
    pub sums_to_identity: bool,
    pub equivariant: bool,
}

impl IsotypicReport {
    pub fn consistent(&self) -> bool {
        self.idempotent && self.orthogonal && self.sums_to_identity && self.equivariant
    }

    pub fn projector_for(&self, chi: &SignCharacter) -> Option<&ActionMatrix> {
        self.characters.iter().position(|c| c == chi).map(|k| &self.projectors[k])
    }
}

/// Projectors `p_chi = (1/|G|) sum_g chi(g) rho(g)` onto the isotypic
/// components, with their ranks and the algebraic checks on them.
pub fn isotypic_decomposition(cover: &CoverGraph, basis: &HomologyBasis) -> Result<IsotypicReport, CwError> {
    let group = cover.group();
    let characters = sign_characters(group)?;
    let rho: Vec<ActionMatrix> = cover.vertices().map(|g| deck_action_matrix(cover, basis, g)).collect();
    let scale = Rational::new(One::one(), group.order().into());
    let rank = basis.rank();

    let projectors: Vec<ActionMatrix> = characters
        .iter()
        .map(|chi| {
            let mut sum = QMatrix::zeros(rank, rank);
            for (g, m) in rho.iter().enumerate() {
                sum = if chi.value(g) == 1 { &sum + m } else { &sum - m };
            }
            sum.scale(&scale)
        })
        .collect();
    let dims = projectors.iter().map(QMatrix::rank).collect();

    let idempotent = projectors.iter().all(|p| &(p * p) == p);
    let orthogonal = projectors
        .iter()
        .enumerate()
        .all(|(a, p)| projectors.iter().enumerate().all(|(b, q)| a == b || (p * q).is_zero()));
    let total = projectors.iter().fold(QMatrix::zeros(rank, rank), |acc, p| &acc + p);
    let sums_to_identity = total.is_identity();
    let equivariant = projectors.iter().all(|p| rho.iter().all(|m| p * m == m * p));

    Ok(IsotypicReport { characters, dims, projectors, idempotent, orthogonal, sums_to_identity, equivariant })
}

/// Class of the elevation of `w` at `start`: the closed lift of `w^k`, where
/// `k` is the order of `q(w)`.
pub fn elevation_class(cover: &CoverGraph, basis: &HomologyBasis, w: &Word, start: usize) -> HomologyClass {
    let k = cover.group().element_order(cover.evaluate(w));
    let path = cover.lift_word(&w.pow(k as i64), start);
    basis.path_class(cover, &path).expect("elevation is a closed loop in the cover")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElevationReport {
    /// Number of elevations of `w`, i.e. `[G : <q(w)>]`.
    pub component_count: usize,
    pub orbit_rank: usize,
    /// `orbit_rank <= component_count`.
    pub bound_holds: bool,
    /// Fewer than `|G|` elevations, so no multiple of `w` has a full-rank orbit.
    pub obstructed: bool,
}

pub fn elevation_rank_obstruction(
    cover: &CoverGraph,
    basis: &HomologyBasis,
    w: &Word,
) -> Result<ElevationReport, CwError> {
    if w.is_empty() {
        return Err(CwError::EmptyWord);
    }
    let group = cover.group();
    let cyclic = group.subgroup_generated(&[cover.evaluate(w)]);
    let component_count = group.order() / cyclic.len();
    let class = elevation_class(cover, basis, w, FiniteGroup::IDENTITY);
    let orbit_rank = orbit_rank(cover, basis, &class);
    Ok(ElevationReport {
        component_count,
        orbit_rank,
        bound_holds: orbit_rank <= component_count,
        obstructed: component_count < group.order(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorReport {
    pub lifts: bool,
    pub class_nonzero: bool,
}

/// Whether `[a_1, a_2]` lifts to a closed loop at the identity vertex, and
/// whether that loop is nonzero in homology.
pub fn commutator_lift_check(cover: &CoverGraph, basis: &HomologyBasis) -> Result<CommutatorReport, CwError> {
    if cover.rank() != 2 {
        return Err(CwError::WrongRank(cover.rank()));
    }
    let commutator = Word::commutator(&Word::generator(1), &Word::generator(2));
    let path = cover.lift_word(&commutator, FiniteGroup::IDENTITY);
    if !path.is_closed(cover) {
        return Ok(CommutatorReport { lifts: false, class_nonzero: false });
    }
    let class = basis.path_class(cover, &path).expect("closed lift is a cycle");
    Ok(CommutatorReport { lifts: true, class_nonzero: !class.is_zero() })
}

/// Multiplicity-weighted dimension the character identity predicts for a
/// one-dimensional character: `n - 1` for nontrivial ones, `n` for the trivial
/// one.
pub fn expected_isotypic_dim(cover: &CoverGraph, chi: &SignCharacter) -> usize {
    if chi.is_trivial() {
        cover.rank()
    } else {
        cover.rank() - 1
    }
}

/// `true` iff `v` is an eigenvector of every deck transformation with the
/// prescribed sign character.
pub fn transforms_by(cover: &CoverGraph, basis: &HomologyBasis, v: &HomologyClass, chi: &SignCharacter) -> bool {
    cover.vertices().all(|g| {
        let image = basis.translate_class(cover, g, v);
        let sign = Rational::from_integer(chi.value(g).into());
        image == v.scale(&sign)
    }) && !v.0.iter().all(Zero::is_zero)
}
