//! The normal cover of the rose determined by `q: F_n -> G`, realized as the
//! Cayley graph of `G` with respect to `q(a_1), ..., q(a_n)`.
//!
//! Vertex `g` is the lift of the base vertex labeled by `g`; vertex 0 is the
//! identity vertex. Edge `(g, i)` runs from `g` to `g * q(a_i)`. Deck
//! transformations act by left multiplication. Loops and multi-edges occur
//! whenever images coincide or are trivial, and are handled uniformly.

use std::fmt::Write as _;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::finite_group::{FiniteGroup, GeneratorImages, GroupError};
use crate::word::{Letter, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("generator images do not generate the group (cover is disconnected)")]
    Disconnected,
    #[error("rose rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("vertex {vertex} out of range (cover has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("petal {petal} out of range 1..={n}")]
    PetalOutOfRange { petal: usize, n: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// The data defining the cover: a finite group and the images of the petals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSpec {
    group: FiniteGroup,
    images: GeneratorImages,
}

impl CoverSpec {
    pub fn new(group: FiniteGroup, images: Vec<usize>) -> Result<Self, CoverError> {
        if images.len() < 2 {
            return Err(CoverError::RankTooSmall(images.len()));
        }
        let images = GeneratorImages::new(&group, images)?;
        Ok(CoverSpec { group, images })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn images(&self) -> &GeneratorImages {
        &self.images
    }

    pub fn rank(&self) -> usize {
        self.images.rank()
    }
}

/// An oriented edge of the cover: the lift of petal `petal` starting at
/// vertex `source`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub source: usize,
    pub petal: usize,
}

impl Edge {
    pub fn new(source: usize, petal: usize) -> Self {
        Edge { source, petal }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn sign(self) -> i64 {
        match self {
            Direction::Forward => 1,
            Direction::Backward => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Step {
    pub edge: Edge,
    pub dir: Direction,
}

/// A combinatorial path in the cover.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgePath {
    pub start: usize,
    pub steps: Vec<Step>,
}

impl EdgePath {
    pub fn constant(start: usize) -> Self {
        EdgePath { start, steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self, cover: &CoverGraph) -> usize {
        match self.steps.last() {
            None => self.start,
            Some(Step { edge, dir: Direction::Forward }) => cover.target(*edge),
            Some(Step { edge, dir: Direction::Backward }) => edge.source,
        }
    }

    pub fn is_closed(&self, cover: &CoverGraph) -> bool {
        self.end(cover) == self.start
    }

    /// Checks that consecutive steps are incident.
    pub fn is_valid(&self, cover: &CoverGraph) -> bool {
        let mut at = self.start;
        for s in &self.steps {
            let (from, to) = match s.dir {
                Direction::Forward => (s.edge.source, cover.target(s.edge)),
                Direction::Backward => (cover.target(s.edge), s.edge.source),
            };
            if from != at {
                return false;
            }
            at = to;
        }
        true
    }

    /// Concatenation; `other` must start where `self` ends.
    pub fn concat(&self, other: &EdgePath, cover: &CoverGraph) -> EdgePath {
        assert_eq!(self.end(cover), other.start, "paths are not composable");
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        EdgePath { start: self.start, steps }
    }
}

impl Serialize for EdgePath {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let steps: Vec<(usize, usize, i64)> =
            self.steps.iter().map(|st| (st.edge.source, st.edge.petal, st.dir.sign())).collect();
        let mut st = s.serialize_struct("EdgePath", 2)?;
        st.serialize_field("start", &self.start)?;
        st.serialize_field("steps", &steps)?;
        st.end()
    }
}

/// A subgraph of the cover spanned by a vertex set, using every edge between
/// those vertices except the lifts of `removed_petal`.
///
/// Vertex sets are always unions of left cosets closed under the remaining
/// petals, so the edge set is simply "all non-removed edges out of the
/// vertices".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    /// Smallest vertex; the root for spanning trees.
    pub root: usize,
    /// Sorted.
    pub vertices: Vec<usize>,
    pub removed_petal: Option<usize>,
}

impl Subgraph {
    pub fn whole(cover: &CoverGraph) -> Self {
        Subgraph { root: 0, vertices: cover.vertices().collect(), removed_petal: None }
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn uses_petal(&self, petal: usize) -> bool {
        self.removed_petal != Some(petal)
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.uses_petal(e.petal) && self.contains_vertex(e.source)
    }

    pub fn petals<'a>(&'a self, cover: &CoverGraph) -> impl Iterator<Item = usize> + 'a {
        (1..=cover.rank()).filter(move |&i| self.uses_petal(i))
    }

    pub fn edges(&self, cover: &CoverGraph) -> Vec<Edge> {
        let petals: Vec<usize> = self.petals(cover).collect();
        self.vertices.iter().flat_map(|&v| petals.iter().map(move |&i| Edge::new(v, i))).collect()
    }

    pub fn edge_count(&self, cover: &CoverGraph) -> usize {
        self.vertices.len() * self.petals(cover).count()
    }
}

/// The cover `Y` of the rose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverGraph {
    spec: CoverSpec,
}

impl CoverGraph {
    pub fn build(spec: CoverSpec) -> Result<Self, CoverError> {
        if !spec.images.generate(&spec.group) {
            return Err(CoverError::Disconnected);
        }
        Ok(CoverGraph { spec })
    }

    /// Shorthand for `build(CoverSpec::new(group, images)?)`.
    pub fn from_parts(group: FiniteGroup, images: Vec<usize>) -> Result<Self, CoverError> {
        Self::build(CoverSpec::new(group, images)?)
    }

    pub fn spec(&self) -> &CoverSpec {
        &self.spec
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.spec.group
    }

    /// Number of petals `n` of the base rose.
    pub fn rank(&self) -> usize {
        self.spec.rank()
    }

    /// `q(a_petal)`.
    pub fn image(&self, petal: usize) -> usize {
        self.spec.images.of(petal)
    }

    pub fn vertex_count(&self) -> usize {
        self.group().order()
    }

    pub fn edge_count(&self) -> usize {
        self.rank() * self.vertex_count()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.vertex_count()
    }

    /// All edges, ordered by source vertex then petal.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.rank();
        self.vertices().flat_map(move |g| (1..=n).map(move |i| Edge::new(g, i)))
    }

    pub fn edge_index(&self, e: Edge) -> usize {
        e.source * self.rank() + (e.petal - 1)
    }

    pub fn target(&self, e: Edge) -> usize {
        self.group().mul(e.source, self.image(e.petal))
    }

    pub fn check_vertex(&self, v: usize) -> Result<usize, CoverError> {
        if v < self.vertex_count() {
            Ok(v)
        } else {
            Err(CoverError::VertexOutOfRange { vertex: v, count: self.vertex_count() })
        }
    }

    pub fn check_petal(&self, petal: usize) -> Result<usize, CoverError> {
        if (1..=self.rank()).contains(&petal) {
            Ok(petal)
        } else {
            Err(CoverError::PetalOutOfRange { petal, n: self.rank() })
        }
    }

    /// `q(w)` as a group element.
    pub fn evaluate(&self, w: &Word) -> usize {
        let g = self.group();
        w.letters().iter().fold(FiniteGroup::IDENTITY, |acc, l| {
            let x = self.image(l.petal);
            g.mul(acc, if l.inverse { g.inv(x) } else { x })
        })
    }

    /// One step of path lifting: the step taken by letter `l` at vertex `at`.
    pub fn lift_letter(&self, l: Letter, at: usize) -> (Step, usize) {
        let x = self.image(l.petal);
        if l.inverse {
            let prev = self.group().mul(at, self.group().inv(x));
            (Step { edge: Edge::new(prev, l.petal), dir: Direction::Backward }, prev)
        } else {
            (Step { edge: Edge::new(at, l.petal), dir: Direction::Forward }, self.group().mul(at, x))
        }
    }

    /// The unique lift of `w` starting at `start`; it ends at `start * q(w)`.
    pub fn lift_word(&self, w: &Word, start: usize) -> EdgePath {
        let mut at = start;
        let steps = w
            .letters()
            .iter()
            .map(|&l| {
                let (step, next) = self.lift_letter(l, at);
                at = next;
                step
            })
            .collect();
        EdgePath { start, steps }
    }

    /// Left translation by the deck transformation `g`.
    pub fn deck_translate_edge(&self, g: usize, e: Edge) -> Edge {
        Edge::new(self.group().mul(g, e.source), e.petal)
    }

    pub fn deck_translate_path(&self, g: usize, p: &EdgePath) -> EdgePath {
        EdgePath {
            start: self.group().mul(g, p.start),
            steps: p.steps.iter().map(|s| Step { edge: self.deck_translate_edge(g, s.edge), dir: s.dir }).collect(),
        }
    }

    /// Connected components of `Y` with the interiors of all lifts of petal
    /// `j` removed, ordered by smallest vertex (so the identity component
    /// comes first).
    pub fn petal_complement_components(&self, j: usize) -> Vec<Subgraph> {
        let m = self.vertex_count();
        let mut comp = vec![usize::MAX; m];
        let mut out = Vec::new();
        for root in self.vertices() {
            if comp[root] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[root] = id;
            let mut stack = vec![root];
            let mut vertices = vec![root];
            while let Some(v) = stack.pop() {
                for i in (1..=self.rank()).filter(|&i| i != j) {
                    let x = self.image(i);
                    for w in [self.group().mul(v, x), self.group().mul(v, self.group().inv(x))] {
                        if comp[w] == usize::MAX {
                            comp[w] = id;
                            stack.push(w);
                            vertices.push(w);
                        }
                    }
                }
            }
            vertices.sort_unstable();
            out.push(Subgraph { root, vertices, removed_petal: Some(j) });
        }
        out
    }

    /// Graphviz rendering: vertices labeled by group labels, edges colored by
    /// petal.
    pub fn to_dot(&self) -> String {
        const COLORS: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"];
        let mut s = String::from("digraph cover {\n");
        for v in self.vertices() {
            let _ = writeln!(s, "  v{v} [label=\"{}\"];", self.group().label(v).replace('"', "\\\""));
        }
        for e in self.edges() {
            let _ = writeln!(
                s,
                "  v{} -> v{} [label=\"a{}\", color={}];",
                e.source,
                self.target(e),
                e.petal,
                COLORS[(e.petal - 1) % COLORS.len()]
            );
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_group::GroupFamily;

    fn mod2_cover() -> CoverGraph {
        let g = GroupFamily::ElementaryAbelian { p: 2, k: 2 }.build().unwrap();
        CoverGraph::from_parts(g, vec![1, 2]).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn build_examples() {
        let y = CoverGraph::from_parts(FiniteGroup::trivial(), vec![0, 0, 0]).unwrap();
        assert_eq!((y.vertex_count(), y.edge_count()), (1, 3));
        assert!(y.edges().all(|e| y.target(e) == e.source));

        let y = mod2_cover();
        assert_eq!((y.vertex_count(), y.edge_count()), (4, 8));

        let z3 = GroupFamily::Cyclic(3).build().unwrap();
        let y = CoverGraph::from_parts(z3, vec![1, 1, 0]).unwrap();
        assert_eq!((y.vertex_count(), y.edge_count()), (3, 9));
        let loops: Vec<Edge> = y.edges().filter(|&e| y.target(e) == e.source).collect();
        assert_eq!(loops.len(), 3);
        assert!(loops.iter().all(|e| e.petal == 3));
    }

    #[test]
    fn build_rejects_bad_specs() {
        let z3 = GroupFamily::Cyclic(3).build().unwrap();
        assert_eq!(CoverGraph::from_parts(z3.clone(), vec![0, 0]), Err(CoverError::Disconnected));
        assert_eq!(CoverGraph::from_parts(z3.clone(), vec![1]), Err(CoverError::RankTooSmall(1)));
        assert!(matches!(CoverGraph::from_parts(z3, vec![1, 5]), Err(CoverError::Group(_))));
    }

    #[test]
    fn lift_examples() {
        let y = mod2_cover();
        let p = y.lift_word(&Word::empty(), 2);
        assert!(p.is_empty());
        assert_eq!(p.end(&y), 2);

        let a_sq = y.lift_word(&w("a.a"), 0);
        assert_eq!(a_sq.len(), 2);
        assert!(a_sq.is_closed(&y));
        assert_eq!(a_sq.steps[0].edge, Edge::new(0, 1));
        assert_eq!(a_sq.steps[1].edge, Edge::new(1, 1));

        let a = y.lift_word(&w("a"), 0);
        assert_eq!(a.end(&y), y.image(1));
        assert!(!a.is_closed(&y));

        let back = y.lift_word(&w("a^-1"), 0);
        assert_eq!(back.steps[0], Step { edge: Edge::new(1, 1), dir: Direction::Backward });
        assert_eq!(back.end(&y), 1);
        assert!(back.is_valid(&y));
    }

    #[test]
    fn deck_translation_examples() {
        let y = mod2_cover();
        let a_sq = y.lift_word(&w("a.a"), 0);
        assert_eq!(y.deck_translate_path(0, &a_sq), a_sq);
        let qb = y.image(2);
        assert_eq!(y.deck_translate_path(qb, &a_sq), y.lift_word(&w("a.a"), qb));
        let p = y.lift_word(&w("a.b^-1.a.b.b"), 3);
        for g in y.vertices() {
            for h in y.vertices() {
                let two_step = y.deck_translate_path(h, &y.deck_translate_path(g, &p));
                assert_eq!(two_step, y.deck_translate_path(y.group().mul(h, g), &p));
            }
        }
    }

    #[test]
    fn complement_components_examples() {
        let y = CoverGraph::from_parts(FiniteGroup::trivial(), vec![0, 0, 0]).unwrap();
        let comps = y.petal_complement_components(2);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].edges(&y), vec![Edge::new(0, 1), Edge::new(0, 3)]);

        let y = mod2_cover();
        let comps = y.petal_complement_components(1);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].vertices, vec![0, 2]);
        assert_eq!(comps[1].vertices, vec![1, 3]);
        for c in &comps {
            let edges = c.edges(&y);
            assert_eq!(edges.len(), 2);
            assert!(edges.iter().all(|e| e.petal == 2));
        }

        let z3 = GroupFamily::Cyclic(3).build().unwrap();
        let y = CoverGraph::from_parts(z3, vec![1, 1, 0]).unwrap();
        let comps = y.petal_complement_components(1);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].vertices, vec![0, 1, 2]);
    }

    #[test]
    fn evaluate_matches_lift_endpoint() {
        let s3 = GroupFamily::Symmetric(3).build().unwrap();
        let y = CoverGraph::from_parts(s3, vec![1, 3, 0]).unwrap();
        let word = w("a1.a2^-1.a3.a1.a1.a2");
        for g in y.vertices() {
            assert_eq!(y.lift_word(&word, g).end(&y), y.group().mul(g, y.evaluate(&word)));
        }
    }

    #[test]
    fn path_json_and_dot() {
        let y = mod2_cover();
        let p = y.lift_word(&w("a.b^-1"), 0);
        let js = serde_json::to_string(&p).unwrap();
        // a: 0 -> 1 ; b^-1 from 1: edge (1*b^-1, 2) = (3, 2) backward
        assert_eq!(js, r#"{"start":0,"steps":[[0,1,1],[3,2,-1]]}"#);
        let dot = y.to_dot();
        assert!(dot.starts_with("digraph cover {"));
        assert_eq!(dot.matches("->").count(), 8);
        assert!(dot.contains("v0 [label=\"e\"]"));
    }
}
