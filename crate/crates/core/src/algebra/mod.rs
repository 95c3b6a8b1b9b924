pub mod algebra;
pub mod hom;
pub mod meataxe;
pub mod module;
pub mod radical;
pub mod resolution;

pub use algebra::{Elem, FdAlgebra, Structure};
pub use module::{AModule, BlockMap, BlockSpace, Cover};
pub use radical::matrix_algebra_radical;
pub use resolution::{
    layer_report, minimal_resolution, regular_decomposition, self_injective, LayerReport, Resolution, ResolutionStatus,
};
