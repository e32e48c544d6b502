use num_traits::Zero;

use crate::exactalg::{dim_s, gradient, graded_map_matrix, parse_form, syzygies_up_to, Form, MatrixQ, PointP2};
use crate::{Error, Result};

use super::presentation::{ChernPair, GradedPresentation, Role};

/// A reduced plane curve `V(f)` with an exact smoothness flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    f: Form,
    smooth: bool,
}

impl PlaneCurve {
    pub fn new(f: Form) -> Result<PlaneCurve> {
        if f.is_zero() {
            return Err(Error::Precondition("the zero form does not define a curve".into()));
        }
        if f.degree() == 0 {
            return Err(Error::Precondition("a nonzero constant does not define a curve".into()));
        }
        let smooth = is_smooth(&f);
        Ok(PlaneCurve { f, smooth })
    }

    pub fn parse(text: &str) -> Result<PlaneCurve> {
        PlaneCurve::new(parse_form(text)?)
    }

    pub fn form(&self) -> &Form {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.f.degree()
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    pub fn contains(&self, p: &PointP2) -> bool {
        self.f.eval(&p.rational()).is_zero()
    }

    /// Whether `p` is a singular point of the curve (all partials vanish).
    pub fn is_singular_at(&self, p: &PointP2) -> bool {
        let x = p.rational();
        (0..3).all(|i| self.f.partial(i).eval(&x).is_zero())
    }

    pub(crate) fn require_smooth(&self) -> Result<()> {
        if self.smooth {
            Ok(())
        } else {
            Err(Error::Precondition(format!("the curve {} is not smooth", self.f)))
        }
    }

    /// Symmetric matrix of a conic, scaled so that `f = xᵗ A x / 2`.
    pub fn conic_matrix(&self) -> Result<MatrixQ> {
        if self.degree() != 2 {
            return Err(Error::Precondition("not a conic".into()));
        }
        let mut a = MatrixQ::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                a.set(i, j, self.f.partial(i).partial(j).eval_int([0, 0, 0]));
            }
        }
        Ok(a)
    }
}

/// Exact smoothness: the partials have no common zero iff their ideal
/// contains every form of degree `3d − 5` (they form a regular sequence,
/// whose Koszul complex pins down the Hilbert function). For conics this
/// is the same as a nonzero determinant, which is checked too.
fn is_smooth(f: &Form) -> bool {
    let d = f.degree() as i64;
    let grad = [f.partial(0), f.partial(1), f.partial(2)];
    if d == 1 {
        return true;
    }
    let t = 3 * d - 5;
    let m = graded_map_matrix(&[grad.to_vec()], &[d - 1; 3], &[0], t).expect("partials are homogeneous");
    let smooth = m.rank() == dim_s(t);
    if d == 2 {
        let mut a = MatrixQ::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                a.set(i, j, grad[i].partial(j).eval_int([0, 0, 0]));
            }
        }
        debug_assert_eq!(smooth, !a.det().is_zero());
    }
    smooth
}

/// `T(−log D)` of a smooth curve as `K(1)`, where `K` is the kernel of the
/// gradient row `O³ → O(d−1)`. The twist is fixed by `c1`: the kernel has
/// `c1 = 1 − d` and `T(−log D)` has `c1 = 3 − d`.
pub fn logtangent_presentation(c: &PlaneCurve) -> Result<GradedPresentation> {
    c.require_smooth()?;
    let d = c.degree() as i64;
    let row = gradient(c.form())?.to_vec();
    let mut p = GradedPresentation::new(
        vec![row.clone()],
        vec![0, 0, 0],
        vec![1 - d],
        Role::Kernel,
        1,
        2,
        ChernPair::new(3 - d, d * d - 3 * d + 3),
    )?;
    // Recorded in the row's own grading, where u_j has degree δ − (d − 1).
    p.syzygies = Some(syzygies_up_to(&row, d + 2)?);
    Ok(p)
}

/// Chern numbers of `Ω¹(log(D, Z))` for a smooth curve of degree `d` and
/// `k` marked points.
pub fn chern_generalized(d: i64, k: i64) -> Result<ChernPair> {
    if d < 1 || k < 0 {
        return Err(Error::Precondition(format!("need d >= 1 and k >= 0, got d={d}, k={k}")));
    }
    Ok(ChernPair::new(d - 3, d * d - 3 * d + 3 + k))
}

/// Degrees forced on a rational curve meeting the divisor in `support`
/// reduced points: sub-bundle degree `2 − |B|`, quotient `c1 − 2 + |B|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KeyRestriction {
    pub sub: i64,
    pub quotient: i64,
    /// The extension splits because `Ext¹(quot, sub)` vanishes.
    pub forced: bool,
}

impl KeyRestriction {
    /// Sorted splitting when forced.
    pub fn splitting(&self) -> Option<(i64, i64)> {
        self.forced.then(|| (self.sub.min(self.quotient), self.sub.max(self.quotient)))
    }
}

pub fn key_restriction_degrees(c1: i64, support: i64) -> Result<KeyRestriction> {
    if support < 1 {
        return Err(Error::Precondition(
            "the curve must meet the divisor: the restriction statement needs at least one support point".into(),
        ));
    }
    let sub = 2 - support;
    let quotient = c1 - sub;
    Ok(KeyRestriction { sub, quotient, forced: sub - quotient >= -1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoothness() {
        assert!(PlaneCurve::parse("x0*x1+x1*x2+x2*x0").unwrap().is_smooth());
        assert!(!PlaneCurve::parse("x0*x1").unwrap().is_smooth());
        assert!(PlaneCurve::parse("x0^3+x1^3+x2^3").unwrap().is_smooth());
        assert!(!PlaneCurve::parse("x0^3+x1^3+x0*x1*x2").unwrap().is_smooth());
        assert!(!PlaneCurve::parse("x1^2*x2-x0^3").unwrap().is_smooth());
        assert!(PlaneCurve::parse("x0^4+x1^4+x2^4").unwrap().is_smooth());
        assert!(!PlaneCurve::parse("x0^4+x1^4+x0*x1*x2^2").unwrap().is_smooth());
    }

    #[test]
    fn generalized_chern_values() {
        assert_eq!(chern_generalized(2, 3).unwrap(), ChernPair::new(-1, 4));
        assert_eq!(chern_generalized(3, 0).unwrap(), ChernPair::new(0, 3));
        assert_eq!(chern_generalized(3, 1).unwrap(), ChernPair::new(0, 4));
        assert!(chern_generalized(0, 1).is_err());
    }

    #[test]
    fn key_lemma_pairs() {
        let k = key_restriction_degrees(1, 1).unwrap();
        assert_eq!((k.sub, k.quotient, k.forced), (1, 0, true));
        assert_eq!(key_restriction_degrees(1, 2).unwrap().splitting(), Some((0, 1)));
        assert!(key_restriction_degrees(1, 0).is_err());
    }

    #[test]
    fn logtangent_metadata_matches_twists() {
        for f in ["x0*x1+x1*x2+x2*x0", "x0^3+x1^3+x2^3"] {
            let p = logtangent_presentation(&PlaneCurve::parse(f).unwrap()).unwrap();
            assert_eq!(p.whitney_chern(), p.chern);
            p.check_hilbert_polynomial(p.stable_degree(), 4).unwrap();
        }
    }
}
