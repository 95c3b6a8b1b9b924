pub mod brauer;
pub mod decompose;
pub mod descriptor;
pub mod hom;
pub mod module;
pub mod syzygy;

pub use brauer::{brauer_quotient, BrauerQuotient};
pub use decompose::{decompose, is_certified_indecomposable, Summand};
pub use descriptor::{parse_module, parse_subgroup};
pub use hom::{find_isomorphism, hom_basis, is_isomorphic, IsoSearch};
pub use module::{KGModule, ShortExact};
pub use syzygy::{free_cover, loewy_layers, loewy_length, restricted_omega_two, syzygy, FreeCover, RestrictedOmega};
