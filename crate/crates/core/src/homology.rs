//! Exact rational 1-chains and first homology of the cover (or of a
//! subgraph of it).
//!
//! A graph has no 2-cells, so `H_1` is the cycle space. It is coordinatized by
//! the fundamental cycles of a deterministic breadth-first spanning tree: the
//! coordinate of a cycle on cotree edge `e` is just its coefficient on `e`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cover::{CoverGraph, Direction, Edge, EdgePath, Step, Subgraph};
use crate::linalg::{rank_of, EchelonBasis, QMatrix, QVector, Rational};
use crate::word::{Letter, Word};

/// Coordinates of a homology class in a [`HomologyBasis`].
pub type HomologyClass = QVector;

/// Matrix of a linear map on `H_1` in basis coordinates (acting on columns).
pub type ActionMatrix = QMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("chain is not a cycle: boundary is nonzero at vertex {vertex}")]
    NotACycle { vertex: usize },
    #[error("chain uses edge ({}, a{}) outside the subgraph", edge.source, edge.petal)]
    OutsideSubgraph { edge: Edge },
    #[error("class has {got} coordinates, basis has rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// A finitely supported rational combination of oriented edges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Chain1 {
    coeffs: BTreeMap<Edge, Rational>,
}

impl Chain1 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_edge(e: Edge) -> Self {
        let mut c = Self::zero();
        c.add_edge(e, Rational::one());
        c
    }

    /// Sum of `+-1` per step.
    pub fn from_path(p: &EdgePath) -> Self {
        let mut c = Self::zero();
        for s in &p.steps {
            c.add_edge(s.edge, Rational::from_integer(s.dir.sign().into()));
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, e: Edge) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (Edge, &Rational)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn add_edge(&mut self, e: Edge, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Rational, other: &Chain1) {
        if c.is_zero() {
            return;
        }
        for (e, x) in &other.coeffs {
            self.add_edge(*e, c * x);
        }
    }

    pub fn scaled(&self, c: &Rational) -> Chain1 {
        let mut out = Chain1::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn translate(&self, cover: &CoverGraph, g: usize) -> Chain1 {
        Chain1 { coeffs: self.coeffs.iter().map(|(e, c)| (cover.deck_translate_edge(g, *e), c.clone())).collect() }
    }

    /// `d(e) = target(e) - source(e)`; zero entries are dropped.
    pub fn boundary(&self, cover: &CoverGraph) -> BTreeMap<usize, Rational> {
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        for (e, c) in &self.coeffs {
            *out.entry(cover.target(*e)).or_insert_with(Rational::zero) += c;
            *out.entry(e.source).or_insert_with(Rational::zero) -= c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn is_cycle(&self, cover: &CoverGraph) -> bool {
        self.boundary(cover).is_empty()
    }
}

impl std::ops::Add for &Chain1 {
    type Output = Chain1;
    fn add(self, rhs: &Chain1) -> Chain1 {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), rhs);
        out
    }
}

impl std::ops::Sub for &Chain1 {
    type Output = Chain1;
    fn sub(self, rhs: &Chain1) -> Chain1 {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), rhs);
        out
    }
}

/// The cocycle `xi_e`: reads off the coefficient of the edge `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeCocycle(pub Edge);

impl EdgeCocycle {
    pub fn eval(&self, z: &Chain1) -> Rational {
        z.coefficient(self.0)
    }

    /// Value on a homology class given in coordinates of `basis`.
    pub fn eval_class(&self, basis: &HomologyBasis, v: &HomologyClass) -> Rational {
        basis.cocycle_row(self.0).dot(v)
    }
}

/// Fundamental-cycle basis of `H_1` of a subgraph (usually all of `Y`).
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    subgraph: Subgraph,
    tree: Vec<Edge>,
    // step from the parent into each reached vertex; None for the root
    parent: HashMap<usize, Option<Step>>,
    // chain of the tree path root -> v
    root_chains: HashMap<usize, Chain1>,
    cotree: Vec<Edge>,
    cotree_index: HashMap<Edge, usize>,
    cycles: Vec<Chain1>,
}

impl HomologyBasis {
    /// Basis of `H_1(Y)` for the whole cover.
    pub fn new(cover: &CoverGraph) -> Self {
        Self::for_subgraph(cover, Subgraph::whole(cover))
    }

    /// Breadth-first spanning tree from `subgraph.root`, scanning neighbors by
    /// petal ascending and, within a petal, the forward edge before the
    /// backward one.
    ///
    /// The subgraph must be connected.
    pub fn for_subgraph(cover: &CoverGraph, subgraph: Subgraph) -> Self {
        let group = cover.group();
        let petals: Vec<usize> = subgraph.petals(cover).collect();
        let mut parent: HashMap<usize, Option<Step>> = HashMap::with_capacity(subgraph.vertices.len());
        let mut root_chains: HashMap<usize, Chain1> = HashMap::with_capacity(subgraph.vertices.len());
        let mut tree = Vec::with_capacity(subgraph.vertices.len().saturating_sub(1));
        let mut queue = VecDeque::from([subgraph.root]);
        parent.insert(subgraph.root, None);
        root_chains.insert(subgraph.root, Chain1::zero());
        while let Some(v) = queue.pop_front() {
            for &i in &petals {
                let x = cover.image(i);
                let forward = Step { edge: Edge::new(v, i), dir: Direction::Forward };
                let back_src = group.mul(v, group.inv(x));
                let backward = Step { edge: Edge::new(back_src, i), dir: Direction::Backward };
                for (step, next) in [(forward, group.mul(v, x)), (backward, back_src)] {
                    if parent.contains_key(&next) {
                        continue;
                    }
                    parent.insert(next, Some(step));
                    let mut chain = root_chains[&v].clone();
                    chain.add_edge(step.edge, Rational::from_integer(step.dir.sign().into()));
                    root_chains.insert(next, chain);
                    tree.push(step.edge);
                    queue.push_back(next);
                }
            }
        }
        assert_eq!(parent.len(), subgraph.vertices.len(), "subgraph is not connected");

        let tree_set: std::collections::HashSet<Edge> = tree.iter().copied().collect();
        let cotree: Vec<Edge> = subgraph.edges(cover).into_iter().filter(|e| !tree_set.contains(e)).collect();
        let cotree_index = cotree.iter().enumerate().map(|(k, e)| (*e, k)).collect();
        let cycles = cotree
            .iter()
            .map(|&e| {
                let mut z = root_chains[&e.source].clone();
                z.add_edge(e, Rational::one());
                z.add_scaled(&-Rational::one(), &root_chains[&cover.target(e)]);
                z
            })
            .collect();
        HomologyBasis { subgraph, tree, parent, root_chains, cotree, cotree_index, cycles }
    }

    pub fn subgraph(&self) -> &Subgraph {
        &self.subgraph
    }

    pub fn rank(&self) -> usize {
        self.cotree.len()
    }

    pub fn tree(&self) -> &[Edge] {
        &self.tree
    }

    pub fn cotree(&self) -> &[Edge] {
        &self.cotree
    }

    pub fn is_tree_edge(&self, e: Edge) -> bool {
        self.subgraph.contains_edge(e) && !self.cotree_index.contains_key(&e)
    }

    pub fn cotree_position(&self, e: Edge) -> Option<usize> {
        self.cotree_index.get(&e).copied()
    }

    /// The fundamental cycle `z_k` of the k-th cotree edge.
    pub fn cycle(&self, k: usize) -> &Chain1 {
        &self.cycles[k]
    }

    pub fn cycles(&self) -> &[Chain1] {
        &self.cycles
    }

    /// Chain of the tree path from the root to `v`.
    pub fn root_chain(&self, v: usize) -> &Chain1 {
        &self.root_chains[&v]
    }

    /// The tree path from the root to `v`.
    pub fn tree_path(&self, cover: &CoverGraph, v: usize) -> EdgePath {
        let mut steps = Vec::new();
        let mut at = v;
        while let Some(Some(step)) = self.parent.get(&at) {
            steps.push(*step);
            at = match step.dir {
                Direction::Forward => step.edge.source,
                Direction::Backward => cover.target(step.edge),
            };
        }
        steps.reverse();
        EdgePath { start: self.subgraph.root, steps }
    }

    /// The word spelled by the tree path from the root to `v`.
    pub fn tree_word(&self, cover: &CoverGraph, v: usize) -> Word {
        Word(
            self.tree_path(cover, v)
                .steps
                .iter()
                .map(|s| match s.dir {
                    Direction::Forward => Letter::pos(s.edge.petal),
                    Direction::Backward => Letter::neg(s.edge.petal),
                })
                .collect(),
        )
    }

    /// Coordinates of the cycle `z`.
    pub fn chain_to_class(&self, cover: &CoverGraph, z: &Chain1) -> Result<HomologyClass, HomologyError> {
        if let Some((edge, _)) = z.support().find(|(e, _)| !self.subgraph.contains_edge(*e)) {
            return Err(HomologyError::OutsideSubgraph { edge });
        }
        if let Some((&vertex, _)) = z.boundary(cover).iter().next() {
            return Err(HomologyError::NotACycle { vertex });
        }
        Ok(QVector(self.cotree.iter().map(|&e| z.coefficient(e)).collect()))
    }

    /// `sum_k v_k z_k`
    pub fn class_to_chain(&self, v: &HomologyClass) -> Chain1 {
        assert_eq!(v.len(), self.rank(), "class dimension does not match basis");
        let mut z = Chain1::zero();
        for (c, cycle) in v.0.iter().zip(&self.cycles) {
            z.add_scaled(c, cycle);
        }
        z
    }

    pub fn check_class(&self, v: &HomologyClass) -> Result<(), HomologyError> {
        if v.len() == self.rank() {
            Ok(())
        } else {
            Err(HomologyError::DimensionMismatch { expected: self.rank(), got: v.len() })
        }
    }

    /// Class of a closed path in the subgraph.
    pub fn path_class(&self, cover: &CoverGraph, p: &EdgePath) -> Result<HomologyClass, HomologyError> {
        self.chain_to_class(cover, &Chain1::from_path(p))
    }

    /// Row vector `r` with `r . v = xi_e(v)` for classes in coordinates.
    pub fn cocycle_row(&self, e: Edge) -> QVector {
        QVector(self.cycles.iter().map(|z| z.coefficient(e)).collect())
    }

    /// Class of `g . v`. The subgraph must be invariant under `g`.
    pub fn translate_class(&self, cover: &CoverGraph, g: usize, v: &HomologyClass) -> HomologyClass {
        let z = self.class_to_chain(v).translate(cover, g);
        self.chain_to_class(cover, &z).expect("subgraph is not invariant under this deck transformation")
    }

    pub fn export(&self) -> BasisExport {
        BasisExport { tree: self.tree.clone(), cotree: self.cotree.clone() }
    }
}

/// Serializable description of a basis: the tree edges in discovery order and
/// the cotree edges in coordinate order.
#[derive(Debug, Clone, Serialize)]
pub struct BasisExport {
    pub tree: Vec<Edge>,
    pub cotree: Vec<Edge>,
}

/// Matrix of `z -> g . z` in `basis`. The basis subgraph must be invariant
/// under `g` (always true for the whole cover).
pub fn deck_action_matrix(cover: &CoverGraph, basis: &HomologyBasis, g: usize) -> ActionMatrix {
    let columns: Vec<QVector> = basis
        .cycles()
        .iter()
        .map(|z| {
            basis
                .chain_to_class(cover, &z.translate(cover, g))
                .expect("subgraph is not invariant under this deck transformation")
        })
        .collect();
    QMatrix::from_columns(basis.rank(), &columns)
}

/// Trace of the deck action of `g`, computed without building the matrix.
pub fn character(cover: &CoverGraph, basis: &HomologyBasis, g: usize) -> Rational {
    basis.cotree().iter().zip(basis.cycles()).fold(Rational::zero(), |acc, (&e, z)| {
        // diagonal entry: coefficient of e in g.z_e, i.e. of g^-1.e in z_e
        let pre = cover.deck_translate_edge(cover.group().inv(g), e);
        acc + z.coefficient(pre)
    })
}

/// Rank of the span of `{g . v : g in elements}`.
pub fn orbit_rank_under(cover: &CoverGraph, basis: &HomologyBasis, v: &HomologyClass, elements: &[usize]) -> usize {
    let z = basis.class_to_chain(v);
    let mut span = EchelonBasis::new();
    for &g in elements {
        let w = basis.chain_to_class(cover, &z.translate(cover, g)).expect("subgraph is not invariant under the orbit");
        span.insert(w);
    }
    span.rank()
}

/// Rank of the span of the deck-group orbit of `v`.
pub fn orbit_rank(cover: &CoverGraph, basis: &HomologyBasis, v: &HomologyClass) -> usize {
    let all: Vec<usize> = cover.vertices().collect();
    orbit_rank_under(cover, basis, v, &all)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionReport {
    pub component_ranks: Vec<usize>,
    pub combined_rank: usize,
    pub injective: bool,
}

/// Checks that `H_1(Y_0) + ... + H_1(Y_k) -> H_1(Y)` is injective, by mapping
/// every component's own fundamental cycles into `basis`.
pub fn inclusion_rank_test(cover: &CoverGraph, basis: &HomologyBasis, components: &[Subgraph]) -> InclusionReport {
    let mut images = Vec::new();
    let mut component_ranks = Vec::with_capacity(components.len());
    for comp in components {
        let local = HomologyBasis::for_subgraph(cover, comp.clone());
        component_ranks.push(local.rank());
        for z in local.cycles() {
            images.push(basis.chain_to_class(cover, z).expect("component cycle is a cycle of Y"));
        }
    }
    let combined_rank = rank_of(&images);
    let injective = combined_rank == component_ranks.iter().sum::<usize>();
    InclusionReport { component_ranks, combined_rank, injective }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_group::{FiniteGroup, GroupFamily};
    use crate::linalg::rat;

    fn mod2_cover() -> CoverGraph {
        let g = GroupFamily::ElementaryAbelian { p: 2, k: 2 }.build().unwrap();
        CoverGraph::from_parts(g, vec![1, 2]).unwrap()
    }

    fn z3_cover() -> CoverGraph {
        CoverGraph::from_parts(GroupFamily::Cyclic(3).build().unwrap(), vec![1, 1, 0]).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn basis_ranks() {
        let y = CoverGraph::from_parts(FiniteGroup::trivial(), vec![0, 0, 0]).unwrap();
        let b = HomologyBasis::new(&y);
        assert_eq!(b.rank(), 3);
        for (k, z) in b.cycles().iter().enumerate() {
            assert_eq!(*z, Chain1::from_edge(Edge::new(0, k + 1)));
        }
        assert_eq!(HomologyBasis::new(&mod2_cover()).rank(), 5);
        assert_eq!(HomologyBasis::new(&z3_cover()).rank(), 7);
    }

    #[test]
    fn mod2_tree_is_bfs() {
        let y = mod2_cover();
        let b = HomologyBasis::new(&y);
        // from 0: a forward -> 1, a backward (edge (1,a)) -> 1 already, b forward -> 2;
        // from 1: b forward -> 3
        assert_eq!(b.tree(), &[Edge::new(0, 1), Edge::new(0, 2), Edge::new(1, 2)]);
        assert_eq!(b.cotree(), &[Edge::new(1, 1), Edge::new(2, 1), Edge::new(2, 2), Edge::new(3, 1), Edge::new(3, 2)]);
    }

    #[test]
    fn cycles_are_independent_cycles_with_unit_coordinates() {
        for y in [mod2_cover(), z3_cover()] {
            let b = HomologyBasis::new(&y);
            for (k, z) in b.cycles().iter().enumerate() {
                assert!(z.is_cycle(&y));
                assert_eq!(b.chain_to_class(&y, z).unwrap(), QVector::unit(b.rank(), k));
            }
        }
    }

    #[test]
    fn chain_to_class_examples() {
        let y = mod2_cover();
        let b = HomologyBasis::new(&y);
        assert_eq!(b.chain_to_class(&y, &Chain1::zero()).unwrap(), QVector::zeros(5));
        let a_loop = Chain1::from_path(&y.lift_word(&w("a.a"), 0));
        let v = b.chain_to_class(&y, &a_loop).unwrap();
        assert!(!v.is_zero());
        assert_eq!(b.class_to_chain(&v), a_loop);
        let open = Chain1::from_edge(Edge::new(0, 1));
        assert!(matches!(b.chain_to_class(&y, &open), Err(HomologyError::NotACycle { .. })));
    }

    #[test]
    fn cocycle_examples() {
        let y = mod2_cover();
        let e = Edge::new(2, 1);
        assert_eq!(EdgeCocycle(e).eval(&Chain1::zero()), rat(0));
        assert_eq!(EdgeCocycle(e).eval(&Chain1::from_edge(e)), rat(1));
        let a_loop = Chain1::from_path(&y.lift_word(&w("a.a"), 0));
        assert_eq!(EdgeCocycle(Edge::new(0, 1)).eval(&a_loop), rat(1));
        assert_eq!(EdgeCocycle(Edge::new(1, 1)).eval(&a_loop), rat(1));
        assert_eq!(EdgeCocycle(Edge::new(2, 1)).eval(&a_loop), rat(0));
        let b = HomologyBasis::new(&y);
        let v = b.chain_to_class(&y, &a_loop).unwrap();
        assert_eq!(EdgeCocycle(Edge::new(1, 1)).eval_class(&b, &v), rat(1));
    }

    #[test]
    fn deck_matrices() {
        let y = mod2_cover();
        let b = HomologyBasis::new(&y);
        assert!(deck_action_matrix(&y, &b, 0).is_identity());
        let mats: Vec<QMatrix> = y.vertices().map(|g| deck_action_matrix(&y, &b, g)).collect();
        for g in y.vertices() {
            for h in y.vertices() {
                assert_eq!(&mats[g] * &mats[h], mats[y.group().mul(g, h)]);
            }
        }
        let a = b.chain_to_class(&y, &Chain1::from_path(&y.lift_word(&w("a.a"), 0))).unwrap();
        let qa = y.image(1);
        let qb = y.image(2);
        let b_a = b.chain_to_class(&y, &Chain1::from_path(&y.lift_word(&w("a.a"), qb))).unwrap();
        assert_eq!(mats[qb].mul_vec(&a), b_a);
        let line = &a - &b_a;
        assert_eq!(mats[qa].mul_vec(&line), line);
        assert_eq!(mats[qb].mul_vec(&line), line.scale(&rat(-1)));
    }

    #[test]
    fn characters() {
        let y = mod2_cover();
        let b = HomologyBasis::new(&y);
        assert_eq!(character(&y, &b, 0), rat(5));
        for g in 1..4 {
            assert_eq!(character(&y, &b, g), rat(1));
            assert_eq!(character(&y, &b, g), deck_action_matrix(&y, &b, g).trace());
        }
        let t = CoverGraph::from_parts(FiniteGroup::trivial(), vec![0, 0, 0]).unwrap();
        assert_eq!(character(&t, &HomologyBasis::new(&t), 0), rat(3));
    }

    #[test]
    fn orbit_ranks() {
        let y = mod2_cover();
        let b = HomologyBasis::new(&y);
        assert_eq!(orbit_rank(&y, &b, &QVector::zeros(5)), 0);
        let x = b.path_class(&y, &y.lift_word(&w("a.a.a.b^-1.a.b"), 0)).unwrap();
        assert_eq!(orbit_rank(&y, &b, &x), 4);
        let a = b.path_class(&y, &y.lift_word(&w("a.a"), 0)).unwrap();
        let transfer = &a + &b.translate_class(&y, y.image(2), &a);
        assert_eq!(orbit_rank(&y, &b, &transfer), 1);
    }

    #[test]
    fn inclusion_examples() {
        let t = CoverGraph::from_parts(FiniteGroup::trivial(), vec![0, 0, 0]).unwrap();
        let bt = HomologyBasis::new(&t);
        let r = inclusion_rank_test(&t, &bt, &t.petal_complement_components(1));
        assert_eq!(r.component_ranks, vec![2]);
        assert!(r.injective);

        let y = mod2_cover();
        let b = HomologyBasis::new(&y);
        let r = inclusion_rank_test(&y, &b, &y.petal_complement_components(1));
        assert_eq!(r, InclusionReport { component_ranks: vec![1, 1], combined_rank: 2, injective: true });

        let y = z3_cover();
        let b = HomologyBasis::new(&y);
        let r = inclusion_rank_test(&y, &b, &y.petal_complement_components(1));
        assert_eq!(r, InclusionReport { component_ranks: vec![4], combined_rank: 4, injective: true });
    }

    #[test]
    fn tree_words_spell_tree_paths() {
        let s3 = GroupFamily::Symmetric(3).build().unwrap();
        let y = CoverGraph::from_parts(s3, vec![1, 3, 0]).unwrap();
        let b = HomologyBasis::new(&y);
        for v in y.vertices() {
            let word = b.tree_word(&y, v);
            assert_eq!(y.lift_word(&word, 0), b.tree_path(&y, v));
            assert_eq!(Chain1::from_path(&b.tree_path(&y, v)), *b.root_chain(v));
            assert_eq!(y.evaluate(&word), v);
        }
    }

    #[test]
    fn subgraph_translation_outside_is_rejected() {
        let y = mod2_cover();
        let comps = y.petal_complement_components(1);
        let b0 = HomologyBasis::for_subgraph(&y, comps[0].clone());
        let z = Chain1::from_path(&y.lift_word(&w("b.b"), 1));
        assert!(matches!(b0.chain_to_class(&y, &z), Err(HomologyError::OutsideSubgraph { .. })));
    }
}
