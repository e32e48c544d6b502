//! Presentations of logarithmic sheaves on P².
//!
//! Twist bookkeeping: for a smooth curve `D = V(f)` of degree `d` the kernel
//! of the gradient row `O³ → O(d−1)` is `T(−log D)(−1)`, so the kernel-role
//! presentations here carry `sheaf_twist = 1`. The value is forced by
//! `c1(T(−log D)) = 3 − d`; splitting types reported for them are those of
//! `T(−log D)` itself. Generalized log sheaves `Ω¹(log(D, Z))` are
//! cokernels with `c1 = d − 3`.

mod arrangement;
mod curve;
mod jumping;
mod nbar;
mod pointed;
mod presentation;

pub use arrangement::{
    arrangement_chern, arrangement_multiplicity, arrangement_presentation, freeness_certificate, Arrangement, Freeness,
};
pub use curve::{chern_generalized, key_restriction_degrees, logtangent_presentation, KeyRestriction, PlaneCurve};
pub use jumping::{
    certify_pencil, conic_tangent, cubic_line_panel, jumping_curve_cubic, jumping_set_pointed_conic,
    pointed_conic_candidates, rational_linear_factors, triangle_vertex_test, triple_tangent_pencil, Completeness,
    JumpingReport, LineVerdict, PencilCertificate, TriplePencil,
};
pub use nbar::{
    cubic_point_matrix, default_params, nbar_comparison, nbar_expected_chern, nbar_point, presentation_report,
    st_cubic, PresentationReport,
};
pub use pointed::{
    chern_from_hilbert, det_forms, ideal_of_points, maximal_minors, minimalize, pointed_presentation,
    singular_locus_report, steiner_conic_points, PointedCurve, SingularLocusReport,
};
pub(crate) use pointed::combinations;
pub use presentation::{euler_characteristic, ChernPair, GradedPresentation, Role};
