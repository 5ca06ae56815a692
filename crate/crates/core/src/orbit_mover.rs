//! Moving a homology class: given `0 != v` in `H_1(Y; Q)`, find a slide loop
//! `ell` and a petal `j` such that the lift `F` of `a_j -> ell . a_j` satisfies
//! `F^d(v) = v + d * increment` with `increment != 0`.
//!
//! The loop has to satisfy three properties:
//!
//! 1. `ell` avoids petal `j`;
//! 2. `q(ell) = e`, so `ell` lifts to a closed loop at the identity vertex;
//! 3. the deck-group translates of `[ell~]` are linearly independent.
//!
//! Loops satisfying 1 and 2 are exactly the based loops in `Y_0`, the
//! component of the identity vertex once the lifts of `a_j` are removed. The
//! search runs over integer combinations of `Y_0`'s fundamental cycles until
//! the orbit has full rank `|G|`.

use std::collections::HashSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cover::{CoverGraph, Edge, Subgraph};
use crate::edge_slide::{lifted_action_formula, lifted_action_oracle, SlideAutomorphism, SlideError};
use crate::finite_group::FiniteGroup;
use crate::homology::{
    character, deck_action_matrix, inclusion_rank_test, orbit_rank_under, ActionMatrix, Chain1, EdgeCocycle,
    HomologyBasis, HomologyClass, HomologyError, InclusionReport,
};
use crate::linalg::{EchelonBasis, QVector, Rational};
use crate::word::{Letter, Word};

pub const DEFAULT_MAX_CANDIDATES: usize = 10_000;
pub const DEFAULT_DEPTH: usize = 10;

/// Random candidates drawn per coefficient bound before the bound doubles.
const RANDOM_ROUND: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("the zero class cannot be moved")]
    ZeroVector,
    #[error("rose rank {0} is too small: slide loops need at least 3 petals")]
    RankTooSmall(usize),
    #[error("no full-rank slide loop among the first {0} candidates")]
    SearchExhausted(usize),
    #[error("edge ({}, a{}) is not a cotree edge of the component", .0.source, .0.petal)]
    NotACotreeEdge(Edge),
    #[error("certificate failed verification: {}", .0.join(", "))]
    CertificateRejected(Vec<String>),
    #[error(transparent)]
    Slide(#[from] SlideError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_candidates: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_candidates: DEFAULT_MAX_CANDIDATES, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoveConfig {
    pub search: SearchConfig,
    /// Number of iterates `d = 1..=depth` checked in the certificate.
    pub depth: usize,
}

impl Default for MoveConfig {
    fn default() -> Self {
        MoveConfig { search: SearchConfig::default(), depth: DEFAULT_DEPTH }
    }
}

/// First edge `(g, j)` (smallest `j`, then smallest `g`) on which the cycle
/// representing `v` has a nonzero coefficient.
pub fn find_pairing_edge(cover: &CoverGraph, basis: &HomologyBasis, v: &HomologyClass) -> Result<Edge, MoveError> {
    basis.check_class(v)?;
    if v.is_zero() {
        return Err(MoveError::ZeroVector);
    }
    let z = basis.class_to_chain(v);
    (1..=cover.rank())
        .flat_map(|j| cover.vertices().map(move |g| Edge::new(g, j)))
        .find(|&e| !EdgeCocycle(e).eval(&z).is_zero())
        .ok_or(MoveError::ZeroVector)
}

/// The based loop at the component root spelled by the fundamental cycle of
/// the cotree edge `e`: tree path to `e`, across `e`, tree path back.
pub fn fundamental_loop_word(cover: &CoverGraph, component: &HomologyBasis, e: Edge) -> Result<Word, MoveError> {
    if component.cotree_position(e).is_none() {
        return Err(MoveError::NotACotreeEdge(e));
    }
    let there = component.tree_word(cover, e.source);
    let back = component.tree_word(cover, cover.target(e)).inverse();
    Ok(&(&there * &Word(vec![Letter::pos(e.petal)])) * &back)
}

/// A loop found by [`find_slide_loop`].
#[derive(Debug, Clone)]
pub struct SlideLoop {
    pub petal: usize,
    pub word: Word,
    /// Nonzero coefficients on the fundamental cycles of `Y_0`, by cotree
    /// position.
    pub coefficients: Vec<(usize, i64)>,
    /// `[ell~]` in the basis of `H_1(Y)`.
    pub class: HomologyClass,
    /// Index of the successful candidate in the enumeration order.
    pub candidates_tried: usize,
}

/// Candidate coefficient vectors on `r` fundamental cycles: unit vectors,
/// then 0/1 vectors of weight 2 and 3, then seeded random integer vectors with
/// entries in `[-m, m]`, `m` doubling every round.
struct Candidates {
    r: usize,
    phase: Phase,
    rng: ChaCha8Rng,
    bound: i64,
    in_round: usize,
}

enum Phase {
    Unit(usize),
    Subset(Vec<usize>),
    Random,
}

impl Candidates {
    fn new(r: usize, seed: u64) -> Self {
        Candidates { r, phase: Phase::Unit(0), rng: ChaCha8Rng::seed_from_u64(seed), bound: 1, in_round: 0 }
    }

    /// Next k-subset of `0..r` in lexicographic order.
    fn next_subset(idx: &mut [usize], r: usize) -> bool {
        let k = idx.len();
        for pos in (0..k).rev() {
            if idx[pos] < r - (k - pos) {
                idx[pos] += 1;
                for q in pos + 1..k {
                    idx[q] = idx[q - 1] + 1;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for Candidates {
    type Item = Vec<(usize, i64)>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.r == 0 {
            return None;
        }
        loop {
            match &mut self.phase {
                Phase::Unit(k) => {
                    if *k < self.r {
                        let out = vec![(*k, 1)];
                        *k += 1;
                        return Some(out);
                    }
                    self.phase = if self.r >= 2 { Phase::Subset(vec![]) } else { Phase::Random };
                }
                Phase::Subset(idx) => {
                    let advanced = if idx.is_empty() {
                        *idx = vec![0, 1];
                        true
                    } else if Self::next_subset(idx, self.r) {
                        true
                    } else if idx.len() < 3 && self.r >= 3 {
                        *idx = vec![0, 1, 2];
                        true
                    } else {
                        false
                    };
                    if advanced {
                        return Some(idx.iter().map(|&k| (k, 1)).collect());
                    }
                    self.phase = Phase::Random;
                }
                Phase::Random => {
                    if self.in_round == RANDOM_ROUND {
                        self.in_round = 0;
                        self.bound = self.bound.saturating_mul(2);
                    }
                    self.in_round += 1;
                    let m = self.bound;
                    let v: Vec<(usize, i64)> =
                        (0..self.r).map(|k| (k, self.rng.gen_range(-m..=m))).filter(|&(_, c)| c != 0).collect();
                    if !v.is_empty() {
                        return Some(v);
                    }
                }
            }
        }
    }
}

/// Whether the deck-group orbit of the cycle `z` has rank `|G|`.
fn has_full_orbit(cover: &CoverGraph, basis: &HomologyBasis, z: &Chain1) -> bool {
    // a nontrivial stabilizer already forces a deficient orbit
    if cover.vertices().skip(1).any(|g| z.translate(cover, g) == *z) {
        return false;
    }
    let mut span = EchelonBasis::new();
    for g in cover.vertices() {
        let w = basis.chain_to_class(cover, &z.translate(cover, g)).expect("translate of a cycle is a cycle");
        if !span.insert(w) {
            return false;
        }
    }
    true
}

/// Searches for a slide loop for petal `j` with properties 1-3.
pub fn find_slide_loop(
    cover: &CoverGraph,
    basis: &HomologyBasis,
    j: usize,
    config: &SearchConfig,
) -> Result<SlideLoop, MoveError> {
    if cover.rank() <= 2 {
        return Err(MoveError::RankTooSmall(cover.rank()));
    }
    cover.check_petal(j).map_err(|_| SlideError::PetalOutOfRange { petal: j, n: cover.rank() })?;
    let y0 = cover.petal_complement_components(j).swap_remove(0);
    let local = HomologyBasis::for_subgraph(cover, y0);

    for (tried, coeffs) in Candidates::new(local.rank(), config.seed).take(config.max_candidates).enumerate() {
        let mut z = Chain1::zero();
        for &(k, c) in &coeffs {
            z.add_scaled(&Rational::from_integer(c.into()), local.cycle(k));
        }
        if z.is_zero() || !has_full_orbit(cover, basis, &z) {
            continue;
        }
        let mut word = Word::empty();
        for &(k, c) in &coeffs {
            let loop_word = fundamental_loop_word(cover, &local, local.cotree()[k])?;
            word = &word * &loop_word.pow(c);
        }
        let word = word.free_reduce();
        let class = basis.chain_to_class(cover, &z)?;
        return Ok(SlideLoop { petal: j, word, coefficients: coeffs, class, candidates_tried: tried + 1 });
    }
    Err(MoveError::SearchExhausted(config.max_candidates))
}

/// Output of [`move_vector`]: one explicit lifted slide under which `v` has
/// infinitely many distinct iterates.
#[derive(Debug, Clone, Serialize)]
pub struct MoveCertificate {
    pub vector: HomologyClass,
    pub petal: usize,
    pub pairing_edge: Edge,
    pub ell: Word,
    pub ell_class: HomologyClass,
    pub orbit_rank_value: usize,
    pub increment: HomologyClass,
    pub matrix: ActionMatrix,
    pub iterates_checked: usize,
}

pub fn move_vector(
    cover: &CoverGraph,
    basis: &HomologyBasis,
    v: &HomologyClass,
    config: &MoveConfig,
) -> Result<MoveCertificate, MoveError> {
    basis.check_class(v)?;
    if v.is_zero() {
        return Err(MoveError::ZeroVector);
    }
    if cover.rank() <= 2 {
        return Err(MoveError::RankTooSmall(cover.rank()));
    }
    let pairing_edge = find_pairing_edge(cover, basis, v)?;
    let j = pairing_edge.petal;
    let found = find_slide_loop(cover, basis, j, &config.search)?;
    let slide = SlideAutomorphism::new(cover.rank(), j, found.word.clone())?;
    let lifted = lifted_action_formula(&slide, cover, basis)?;
    debug_assert_eq!(lifted.ell_class, found.class);
    let cert = MoveCertificate {
        vector: v.clone(),
        petal: j,
        pairing_edge,
        ell: found.word,
        orbit_rank_value: cover.group().order(),
        increment: lifted.increment(v),
        ell_class: lifted.ell_class,
        matrix: lifted.matrix,
        iterates_checked: config.depth,
    };
    let check = verify_certificate(cover, basis, v, &cert);
    if !check.passed {
        return Err(MoveError::CertificateRejected(check.failures));
    }
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateCheck {
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Re-derives every certificate claim from the cover alone. The lifted action
/// is recomputed through the path-lifting oracle and orbits through explicit
/// deck matrices, so nothing is shared with the search code path.
pub fn verify_certificate(
    cover: &CoverGraph,
    basis: &HomologyBasis,
    v: &HomologyClass,
    cert: &MoveCertificate,
) -> CertificateCheck {
    let mut failures: Vec<String> = Vec::new();
    let mut fail = |name: &str| failures.push(name.to_string());
    let order = cover.group().order();
    let rank = basis.rank();
    let j = cert.petal;

    let shapes_ok = v.len() == rank
        && cert.vector == *v
        && cert.ell_class.len() == rank
        && cert.increment.len() == rank
        && cert.matrix.rows() == rank
        && cert.matrix.cols() == rank;
    if !shapes_ok {
        fail("shapes");
        return CertificateCheck { passed: false, failures };
    }

    if !(1..=cover.rank()).contains(&j) || cert.ell.uses_petal(j) || cert.ell.check_rank(cover.rank()).is_err() {
        fail("property 1");
    }

    let ell_path = cover.lift_word(&cert.ell, FiniteGroup::IDENTITY);
    let ell_class = if ell_path.is_closed(cover) { basis.path_class(cover, &ell_path).ok() } else { None };
    match &ell_class {
        Some(c) if *c == cert.ell_class => {}
        _ => fail("property 2"),
    }

    let deck: Vec<ActionMatrix> = cover.vertices().map(|g| deck_action_matrix(cover, basis, g)).collect();
    let orbit: Vec<QVector> = deck.iter().map(|m| m.mul_vec(&cert.ell_class)).collect();
    if cert.orbit_rank_value != order || crate::linalg::rank_of(&orbit) != order {
        fail("property 3");
    }

    let z = basis.class_to_chain(v);
    if cert.pairing_edge.petal != j || EdgeCocycle(cert.pairing_edge).eval(&z).is_zero() {
        fail("pairing edge");
    }

    let mut increment = QVector::zeros(rank);
    for (g, translate) in orbit.iter().enumerate() {
        increment.axpy(&EdgeCocycle(Edge::new(g, j)).eval(&z), translate);
    }
    if increment != cert.increment {
        fail("increment");
    }
    if cert.increment.is_zero() {
        fail("increment nonzero");
    }

    let oracle = SlideAutomorphism::new(cover.rank(), j, cert.ell.clone())
        .ok()
        .and_then(|s| lifted_action_oracle(&s, cover, basis).ok());
    if oracle.as_ref() != Some(&cert.matrix) {
        fail("matrix oracle");
    }

    let mut seen = HashSet::new();
    let mut iterate = v.clone();
    let mut iterates_ok = true;
    for d in 0..=cert.iterates_checked {
        if d > 0 {
            iterate = cert.matrix.mul_vec(&iterate);
        }
        let mut expected = v.clone();
        expected.axpy(&Rational::from_integer(d.into()), &cert.increment);
        if iterate != expected || !seen.insert(iterate.clone()) {
            iterates_ok = false;
            break;
        }
    }
    if !iterates_ok {
        fail("iterates");
    }

    CertificateCheck { passed: failures.is_empty(), failures }
}

/// The facts behind the choice of loop, checked one by one for petal `j`:
/// the complement components, the homology of `Y_0` as a `G_0`-module, the
/// injectivity of `H_1(Y_0) + ... + H_1(Y_k) -> H_1(Y)`, and the orbit ranks of
/// the loop class under `G_0` (inside `Y_0`) and `G` (inside `Y`).
#[derive(Debug, Clone, Serialize)]
pub struct ClaimReport {
    pub petal: usize,
    pub group_order: usize,
    pub g0_order: usize,
    pub component_count: usize,
    pub components_are_cosets: bool,
    pub y0_rank: usize,
    pub y0_expected_rank: usize,
    pub y0_character_ok: bool,
    pub inclusion: InclusionReport,
    pub g0_orbit_rank_in_y0: Option<usize>,
    pub g_orbit_rank: Option<usize>,
}

impl ClaimReport {
    pub fn holds(&self) -> bool {
        let loop_ok = match (self.g0_orbit_rank_in_y0, self.g_orbit_rank) {
            (Some(local), Some(global)) => local == self.g0_order && global == self.group_order,
            (None, None) => true,
            _ => false,
        };
        self.components_are_cosets
            && self.y0_rank == self.y0_expected_rank
            && self.y0_character_ok
            && self.inclusion.injective
            && loop_ok
    }
}

pub fn check_claims(cover: &CoverGraph, basis: &HomologyBasis, j: usize, ell: Option<&Word>) -> ClaimReport {
    let g = cover.group();
    let others: Vec<usize> = (1..=cover.rank()).filter(|&i| i != j).map(|i| cover.image(i)).collect();
    let g0 = g.subgroup_generated(&others);
    let comps = cover.petal_complement_components(j);
    let cosets = g.left_cosets(&g0);
    let components_are_cosets = comps.len() == cosets.len()
        && comps.iter().zip(&cosets).all(|(c, block)| c.vertices == *block && c.root == block[0]);

    let y0: Subgraph = comps[0].clone();
    let local = HomologyBasis::for_subgraph(cover, y0);
    let y0_expected_rank = (cover.rank() - 2) * g0.len() + 1;
    let y0_character_ok = g0.members().iter().all(|&x| {
        let expected = if x == FiniteGroup::IDENTITY { y0_expected_rank } else { 1 };
        character(cover, &local, x) == Rational::from_integer(expected.into())
    });
    let inclusion = inclusion_rank_test(cover, basis, &comps);

    let (g0_orbit_rank_in_y0, g_orbit_rank) = match ell {
        Some(word) => {
            let path = cover.lift_word(word, FiniteGroup::IDENTITY);
            let local_class = local.path_class(cover, &path).ok();
            let global_class = basis.path_class(cover, &path).ok();
            let all: Vec<usize> = cover.vertices().collect();
            (
                local_class.map(|c| orbit_rank_under(cover, &local, &c, g0.members())),
                global_class.map(|c| orbit_rank_under(cover, basis, &c, &all)),
            )
        }
        None => (None, None),
    };

    ClaimReport {
        petal: j,
        group_order: g.order(),
        g0_order: g0.len(),
        component_count: comps.len(),
        components_are_cosets,
        y0_rank: local.rank(),
        y0_expected_rank,
        y0_character_ok,
        inclusion,
        g0_orbit_rank_in_y0,
        g_orbit_rank,
    }
}
