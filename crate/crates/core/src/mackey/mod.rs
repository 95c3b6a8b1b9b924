pub mod algebra;
pub mod probes;

pub use algebra::{CohomologicalQuotient, MackeyAlgebra, Span, MACKEY_ORDER_LIMIT};
pub use probes::{
    brauer_identity_check, mackey_split_mono_probe, self_injective_report, split_mono_probe, BrauerCheck, BrauerRow,
    ProjectiveMap, SelfInjectivity, SplitMonoReport,
};
