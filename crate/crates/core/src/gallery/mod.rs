//! Linearized-gravity operator gallery over a metric: the Killing chain, the
//! curvature operators, their algebraic splitting maps, the dual (adjoint)
//! side, and the closed-form dimension tables.

mod algebraic;
mod curvature;
mod dims;
mod dual;
mod lie;
mod metric;
mod spaces;

pub use algebraic::{algebraic_map, packed_metric, raise_sym2, reassemble_t2, trace_op, AlgebraicKind};
pub use curvature::{linearized_curvature, riemann_components, CurvatureKind};
pub use dims::{dims_table, DimsTable};
pub use dual::{
    constraint_coherence_check, constraint_div, div_metric, dual_operator, gauge_reduce_einstein,
    DualKind, GaugeReduction,
};
pub use lie::{conformal_killing_embedded, lie_operator};
pub use metric::{Metric, MetricKind};
pub use spaces::{covector_space, sym2_space, sym2_trace_free_space, PackedSkew2, PackedSym2};
