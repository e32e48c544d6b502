use crate::exactalg::{parse_form, ratio, Form, PointP2, Rational};
use crate::p1split::{jumping_test, JumpVerdict, LineP2, SplittingType};
use crate::rng;
use crate::Result;

use super::curve::{chern_generalized, PlaneCurve};
use super::pointed::{pointed_presentation, singular_locus_report, PointedCurve, SingularLocusReport};
use super::presentation::{ChernPair, GradedPresentation, Role};

/// The marked point of the family `x0³ − x1³ + a·x2³`.
pub fn nbar_point() -> PointP2 {
    PointP2::new([1, 1, 0]).unwrap()
}

/// The matrix `Ñ` with columns `(y−x, z, 0, 0)` and `(0, x+y, y², z²)`,
/// a map `O(−3)² → O(−2)² ⊕ O(−1)²`. Its cokernel is `Ω¹(log(D_a, p₀))`
/// for every member `D_a = V(x³ − y³ + a·z³)`.
pub fn cubic_point_matrix() -> GradedPresentation {
    let f = |s: &str| parse_form(s).unwrap();
    let z0 = || Form::zero(0);
    let entries = vec![
        vec![f("x1-x0"), z0()],
        vec![f("x2"), f("x0+x1")],
        vec![z0(), f("x1^2")],
        vec![z0(), f("x2^2")],
    ];
    GradedPresentation::new(entries, vec![3, 3], vec![2, 2, 1, 1], Role::Cokernel, 0, 2, ChernPair::new(0, 4))
        .expect("constant matrix is well formed")
}

/// Member `x0³ − x1³ + a·x2³` of the family through `[1:1:0]`.
pub fn st_cubic(a: &Rational) -> PlaneCurve {
    let f = parse_form("x0^3-x1^3").unwrap().add(&Form::monomial([0, 0, 3], a.clone()));
    PlaneCurve::new(f).expect("nonzero cubic")
}

/// Verification data shared by `Ñ` and the horseshoe presentations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationReport {
    pub chern: ChernPair,
    pub whitney_chern: ChernPair,
    pub hilbert: Vec<(i64, i64)>,
    pub singular: SingularLocusReport,
    pub coordinate_lines: Vec<(LineP2, JumpVerdict)>,
    pub generic_splitting: SplittingType,
}

impl PresentationReport {
    /// The fields that must agree between equivalent presentations.
    pub fn signature(&self) -> (ChernPair, Vec<(i64, i64)>, bool, Vec<(LineP2, bool, i64)>, SplittingType) {
        (
            self.chern,
            self.hilbert.clone(),
            self.singular.exact(),
            self.coordinate_lines.iter().map(|(l, v)| (*l, v.jumping, v.order)).collect(),
            self.generic_splitting.clone(),
        )
    }
}

pub fn presentation_report(
    p: &GradedPresentation,
    z: &[PointP2],
    seed: u64,
    window: (i64, i64),
) -> Result<PresentationReport> {
    let hilbert = (window.0..=window.1).map(|t| (t, p.hilbert(t))).collect();
    let singular = singular_locus_report(p, z, seed, 20);
    let mut coordinate_lines = Vec::new();
    for i in 0..3 {
        let mut a = [0; 3];
        a[i] = 1;
        let l = LineP2::from_coords(a)?;
        coordinate_lines.push((l, jumping_test(p, p.c1(), &l)?));
    }
    let mut r = rng::stream(seed, "generic-line");
    let generic = loop {
        let l = LineP2::from_coords(rng::triple(&mut r, 30))?;
        if z.iter().all(|q| !l.contains(q)) {
            break l;
        }
    };
    Ok(PresentationReport {
        chern: p.chern,
        whitney_chern: p.whitney_chern(),
        hilbert,
        singular,
        coordinate_lines,
        generic_splitting: p.restricted_splitting(&generic, None)?,
    })
}

/// `Ñ`'s report and, for each family parameter, the horseshoe
/// presentation of the same pair with its report.
pub fn nbar_comparison(params: &[Rational], seed: u64) -> Result<(PresentationReport, Vec<(Rational, PresentationReport)>)> {
    let z = [nbar_point()];
    let window = (-1, 6);
    let nbar = presentation_report(&cubic_point_matrix(), &z, seed, window)?;
    let mut others = Vec::new();
    for a in params {
        let pc = PointedCurve::new(st_cubic(a), z.to_vec())?;
        let p = pointed_presentation(&pc)?;
        others.push((a.clone(), presentation_report(&p, &z, seed, window)?));
    }
    Ok((nbar, others))
}

/// Chern numbers the family should have.
pub fn nbar_expected_chern() -> ChernPair {
    chern_generalized(3, 1).expect("valid degree")
}

/// The default family parameters.
pub fn default_params() -> Vec<Rational> {
    vec![ratio(1, 1), ratio(2, 1), ratio(3, 1)]
}
