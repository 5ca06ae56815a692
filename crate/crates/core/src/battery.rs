//! The fixed matrix of small covers used by the self-test and the test suites.

use rand::Rng;

use crate::cover::{CoverError, CoverGraph};
use crate::edge_slide::SlideAutomorphism;
use crate::finite_group::{FiniteGroup, GroupFamily};
use crate::homology::HomologyBasis;
use crate::word::{Letter, Word};

pub const BATTERY_RANKS: [usize; 3] = [2, 3, 4];

pub fn battery_families() -> Vec<GroupFamily> {
    let mut families: Vec<GroupFamily> = (1..=6).map(GroupFamily::Cyclic).collect();
    families.extend([
        GroupFamily::ElementaryAbelian { p: 2, k: 2 },
        GroupFamily::ElementaryAbelian { p: 2, k: 3 },
        GroupFamily::Dihedral(4),
        GroupFamily::Symmetric(3),
        GroupFamily::Symmetric(4),
    ]);
    families
}

/// Default images for a rank-`n` rose: the standard generators, then powers
/// `g^0, g^1, ...` of the first one for the remaining petals. `None` when there
/// are more standard generators than petals.
pub fn default_images(family: &GroupFamily, n: usize) -> Option<Vec<usize>> {
    let gens = family.standard_generators();
    if gens.len() > n {
        return None;
    }
    let group = family.build().ok()?;
    let first = gens.first().copied().unwrap_or(group.identity());
    let mut images = gens.clone();
    images.extend((0..n - gens.len()).map(|t| group.pow(first, t as i64)));
    Some(images)
}

#[derive(Debug, Clone)]
pub struct BatteryCover {
    pub family: GroupFamily,
    pub images: Vec<usize>,
    pub cover: CoverGraph,
}

impl BatteryCover {
    pub fn name(&self) -> String {
        let images: Vec<String> = self.images.iter().map(usize::to_string).collect();
        format!("{} n={} images={}", self.family, self.images.len(), images.join(","))
    }
}

pub fn build_cover(family: &GroupFamily, images: Vec<usize>) -> Result<BatteryCover, CoverError> {
    let group = family.build()?;
    let cover = CoverGraph::from_parts(group, images.clone())?;
    Ok(BatteryCover { family: *family, images, cover })
}

/// Every battery family at every battery rank with surjective default images,
/// plus two covers with a trivial petal image.
pub fn battery() -> Vec<BatteryCover> {
    let mut covers = Vec::new();
    for family in battery_families() {
        for n in BATTERY_RANKS {
            if let Some(images) = default_images(&family, n) {
                if let Ok(c) = build_cover(&family, images) {
                    covers.push(c);
                }
            }
        }
    }
    covers.push(build_cover(&GroupFamily::ElementaryAbelian { p: 2, k: 2 }, vec![1, 2, 0]).unwrap());
    covers.push(build_cover(&GroupFamily::Cyclic(3), vec![1, 1, 0]).unwrap());
    covers
}

/// Battery covers whose group order is at most `max_order`.
pub fn battery_up_to(max_order: usize) -> Vec<BatteryCover> {
    battery().into_iter().filter(|c| c.cover.group().order() <= max_order).collect()
}

/// A random slide that lifts to `cover`: a random petal `j`, and a loop made
/// of a random word of length up to `max_len` avoiding `a_j`, closed up by the
/// tree path of the identity component of `Y` minus the `a_j` lifts.
pub fn random_slide<R: Rng>(cover: &CoverGraph, rng: &mut R, max_len: usize) -> SlideAutomorphism {
    let n = cover.rank();
    let j = rng.gen_range(1..=n);
    let others: Vec<usize> = (1..=n).filter(|&i| i != j).collect();
    let len = rng.gen_range(0..=max_len);
    let head = Word(
        (0..len).map(|_| Letter::new(others[rng.gen_range(0..others.len())], if rng.gen() { 1 } else { -1 })).collect(),
    );
    let end = cover.lift_word(&head, FiniteGroup::IDENTITY).end(cover);
    let y0 = cover.petal_complement_components(j).swap_remove(0);
    let back = HomologyBasis::for_subgraph(cover, y0).tree_word(cover, end).inverse();
    let ell = (&head * &back).free_reduce();
    SlideAutomorphism::new(n, j, ell).expect("loop avoids the slid petal")
}
