//! Fixtures shared by the criterion benches.

use rosecover::battery::build_cover;
use rosecover::{CoverGraph, GroupFamily, HomologyBasis, QVector};

pub struct Fixture {
    pub name: &'static str,
    pub cover: CoverGraph,
    pub basis: HomologyBasis,
}

fn fixture(name: &'static str, family: GroupFamily, images: Vec<usize>) -> Fixture {
    let cover = build_cover(&family, images).expect("fixture cover").cover;
    let basis = HomologyBasis::new(&cover);
    Fixture { name, cover, basis }
}

/// Covers of increasing size, all on roses of rank 3.
pub fn fixtures() -> Vec<Fixture> {
    let default = |f: GroupFamily| rosecover::battery::default_images(&f, 3).expect("three petals suffice");
    vec![
        fixture("klein4", GroupFamily::ElementaryAbelian { p: 2, k: 2 }, vec![1, 2, 0]),
        fixture("dihedral4", GroupFamily::Dihedral(4), default(GroupFamily::Dihedral(4))),
        fixture("symmetric4", GroupFamily::Symmetric(4), default(GroupFamily::Symmetric(4))),
        fixture("cyclic24", GroupFamily::Cyclic(24), default(GroupFamily::Cyclic(24))),
    ]
}

/// The all-ones vector, which pairs with every cotree edge.
pub fn ones(rank: usize) -> QVector {
    QVector(vec![rosecover::Rational::from_integer(1.into()); rank])
}
