pub mod echelon;
pub mod field;
pub mod mat;
pub mod poly;

pub use echelon::{
    inverse, is_invertible, kernel, kernel_subspace, kernel_subspace_of_stack, rank, row_reduce, solve, subspace_ops,
    Rref, SpanBuilder, Subspace,
};
pub use field::PrimeField;
pub use mat::Mat;
pub use poly::Poly;
