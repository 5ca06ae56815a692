//! Finite normal covers of a rose, their rational homology with deck-group
//! action, and lifted edge slides that move any nonzero homology class along an
//! infinite orbit.

pub mod battery;
pub mod cover;
pub mod cw_check;
pub mod edge_slide;
pub mod finite_group;
pub mod homology;
pub mod linalg;
pub mod orbit_mover;
pub mod word;

pub use cover::{CoverError, CoverGraph, CoverSpec, Direction, Edge, EdgePath, Step, Subgraph};
pub use cw_check::{CharacterReport, CommutatorReport, CwError, ElevationReport, IsotypicReport};
pub use edge_slide::{LiftedSlide, SlideAutomorphism, SlideError};
pub use finite_group::{FiniteGroup, GeneratorImages, GroupError, GroupFamily, NotAGroup};
pub use homology::{ActionMatrix, Chain1, HomologyBasis, HomologyClass, HomologyError};
pub use linalg::{QMatrix, QVector, Rational};
pub use orbit_mover::{MoveCertificate, MoveConfig, MoveError, SearchConfig};
pub use word::{Letter, Word, WordError};
