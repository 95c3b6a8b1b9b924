pub mod functor;
pub mod resolve;
pub mod yoshida;

pub use functor::{
    change_group_functor, dual, exactness, fp, fp_map, fq, fq_map, loewy_diagram, loewy_report, parse_functor, simple,
    simple_by_label, simple_label, CMFunctor, Direction, Exactness, Provenance,
};
pub use resolve::{
    explicit_resolution, gorenstein_probe, pd_probe, pim_multiset, resolution_start, ExplicitKind, ExplicitResolution,
    GorensteinReport, MapStrategy, PdOutcome, PdProbe, PimMultiset, ResolutionStart, Verdict,
};
pub use yoshida::{subgroup_class_labels, Family, YoshidaContext};
