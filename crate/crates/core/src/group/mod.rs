pub mod classify;
#[allow(clippy::module_inception)]
pub mod group;
pub mod lattice;

pub use classify::{predict, sylow_shape, tambara_rank, Obstruction, Prediction, SylowShape, TambaraRank};
pub use group::{Descriptor, Group};
pub use lattice::{double_cosets, CosetSpace, Subgroup, SubgroupLattice};
