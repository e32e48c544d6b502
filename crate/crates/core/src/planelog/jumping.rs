use num_traits::{One, Zero};

use crate::exactalg::{gradient, int, Form, MatrixQ, PointP2, Rational, UniPoly};
use crate::p1split::{jumping_test, restrict_form, BinaryForm, JumpVerdict, LineP2};
use crate::rng;
use crate::{Error, Result};

use super::curve::PlaneCurve;
use super::pointed::{combinations, det_forms, PointedCurve};
use super::presentation::GradedPresentation;

/// The jumping curve `S_D ⊂ (P²)^∨` of a smooth cubic, as a primitive cubic
/// form in the dual coordinates `a0, a1, a2`.
///
/// On a line `L` the kernel of `(∇f)|_L` acquires a section of degree one
/// exactly when the three restricted partials, binary conics, are linearly
/// dependent. In chart `i` the determinant of their coefficients equals
/// `α_i³·J`; every chart is divided out and compared.
pub fn jumping_curve_cubic(c: &PlaneCurve) -> Result<Form> {
    if c.degree() != 3 {
        return Err(Error::Precondition(format!("expected a cubic, got degree {}", c.degree())));
    }
    c.require_smooth()?;
    let grad = gradient(c.form())?;
    let mut found: Option<Form> = None;
    for i in 0..3 {
        let others: Vec<usize> = (0..3).filter(|&x| x != i).collect();
        let span = |j: usize| {
            let mut v = [Form::zero(1), Form::zero(1), Form::zero(1)];
            v[j] = Form::var(i);
            v[i] = Form::var(j).neg();
            v
        };
        let p = span(others[0]);
        let q = span(others[1]);
        let pq = [p[0].add(&q[0]), p[1].add(&q[1]), p[2].add(&q[2])];
        let rows: Vec<Vec<Form>> = grad
            .iter()
            .map(|g| {
                let a = g.compose(&p);
                let cc = g.compose(&q);
                let b = g.compose(&pq).sub(&a).sub(&cc);
                vec![a, b, cc]
            })
            .collect();
        let det = det_forms(&rows);
        let j = det
            .div_exact(&Form::var(i).pow(3))
            .ok_or_else(|| Error::Verification(format!("chart {i} determinant is not divisible by a{i}^3")))?;
        if j.is_zero() {
            return Err(Error::Verification(format!("chart {i} determinant vanishes identically")));
        }
        let j = j.primitive();
        match &found {
            None => found = Some(j),
            Some(prev) if *prev == j => {}
            Some(_) => return Err(Error::Verification("chart determinants disagree".into())),
        }
    }
    Ok(found.expect("three charts"))
}

/// Whether `ℓ²` lies in the span of the partials of the cubic.
pub fn triangle_vertex_test(c: &PlaneCurve, line: &LineP2) -> Result<bool> {
    if c.degree() != 3 {
        return Err(Error::Precondition(format!("expected a cubic, got degree {}", c.degree())));
    }
    c.require_smooth()?;
    let grad = gradient(c.form())?;
    let base = MatrixQ::from_rows(grad.iter().map(Form::to_vec).collect());
    let l2 = line.form().pow(2);
    let with = base.vstack(&MatrixQ::from_rows(vec![l2.to_vec()]));
    Ok(with.rank() == base.rank())
}

/// Linear factors of a form in three variables with rational coefficients,
/// primitive and without repetition.
///
/// A line that is not a coordinate line meets the coordinate triangle in at
/// least two distinct points, each a rational zero of the form restricted
/// to that side, so every factor is found among lines joining such zeros.
pub fn rational_linear_factors(f: &Form) -> Vec<Form> {
    let mut candidates: Vec<PointP2> = Vec::new();
    let mut zeros: Vec<Vec<PointP2>> = Vec::new();
    for side in 0..3 {
        let a = PointP2::new(unit(side)).unwrap();
        let line = LineP2::new(a);
        let r = restrict_form(f, &line);
        if r.is_zero() {
            candidates.push(a);
            zeros.push(Vec::new());
            continue;
        }
        let (p, q) = line.points();
        zeros.push(binary_rational_zeros(&r).into_iter().map(|(s, t)| combine(&p, &q, &s, &t)).collect());
    }
    for i in 0..3 {
        for j in i + 1..3 {
            for x in &zeros[i] {
                for y in &zeros[j] {
                    if let Some(l) = x.cross(y) {
                        candidates.push(l);
                    }
                }
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    candidates
        .into_iter()
        .map(|l| Form::linear_int(l.coords()).primitive())
        .filter(|l| f.div_exact(l).is_some())
        .collect()
}

fn unit(i: usize) -> [i64; 3] {
    let mut a = [0; 3];
    a[i] = 1;
    a
}

fn combine(p: &PointP2, q: &PointP2, s: &Rational, t: &Rational) -> PointP2 {
    let (p, q) = (p.rational(), q.rational());
    let v = [&p[0] * s + &q[0] * t, &p[1] * s + &q[1] * t, &p[2] * s + &q[2] * t];
    PointP2::from_rational(&v).expect("distinct spanning points")
}

/// Rational zeros `[s:t]` of a nonzero binary form.
fn binary_rational_zeros(b: &BinaryForm) -> Vec<(Rational, Rational)> {
    // coeffs[i] multiplies s^(d−i) t^i; at s = 1 the polynomial in t is
    // ascending in i.
    let poly = UniPoly::new(b.coeffs().to_vec());
    let mut out: Vec<(Rational, Rational)> =
        poly.rational_roots().into_iter().map(|t| (Rational::one(), t)).collect();
    if b.coeffs().first().is_some_and(|c| c.is_zero()) {
        out.push((Rational::zero(), Rational::one()));
    }
    out
}

/// Lines through `p` whose restriction of the cubic is a perfect cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriplePencil {
    pub point: PointP2,
    /// The pencil member through `p` and `λe_j + e_k`, with `i` the first
    /// nonzero coordinate of `p` and `j < k` the others.
    pub pencil_axis: (usize, usize),
    /// Monic gcd of the Hessian coefficients of the restricted cubic.
    pub polynomial: UniPoly,
    /// Whether the member through `e_j` (λ = ∞) is such a line.
    pub at_infinity: bool,
    /// The lines at rational roots and at infinity.
    pub lines: Vec<LineP2>,
}

fn pencil_point(p: &PointP2, lambda: Option<&Rational>) -> (usize, usize, PointP2) {
    let c = p.coords();
    let i = c.iter().position(|&x| x != 0).unwrap();
    let others: Vec<usize> = (0..3).filter(|&x| x != i).collect();
    let (j, k) = (others[0], others[1]);
    let q = match lambda {
        None => PointP2::new(unit(j)).unwrap(),
        Some(l) => {
            let mut v = [Rational::zero(), Rational::zero(), Rational::zero()];
            v[j] = l.clone();
            v[k] = Rational::one();
            PointP2::from_rational(&v).unwrap()
        }
    };
    (j, k, q)
}

/// Coefficients of `g(s·p + t·q)` on `s^(d−m) t^m`.
fn pencil_restriction(g: &Form, p: &PointP2, q: &PointP2) -> Vec<Rational> {
    let (p, q) = (p.rational(), q.rational());
    let img = |m: usize| Form::linear([p[m].clone(), q[m].clone(), Rational::zero()]);
    let r = g.compose(&[img(0), img(1), img(2)]);
    let d = g.degree();
    (0..=d).map(|m| r.coeff([d - m, m, 0])).collect()
}

/// Polynomial through the values at `λ = 0, 1, …`.
fn interpolate(values: &[Rational]) -> UniPoly {
    let mut acc = UniPoly::zero();
    for (i, v) in values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let mut basis = UniPoly::constant(Rational::one());
        for j in 0..values.len() {
            if j != i {
                let fac = UniPoly::new(vec![int(-(j as i64)), Rational::one()]);
                basis = basis.mul(&fac).scale(&(Rational::one() / int(i as i64 - j as i64)));
            }
        }
        acc = acc.add(&basis.scale(v));
    }
    acc
}

fn cube_hessian(c: &[Rational]) -> [Rational; 3] {
    let a = &c[0];
    let b = &c[1] / int(3);
    let cc = &c[2] / int(3);
    let d = &c[3];
    [a * &cc - &b * &b, a * d - &b * &cc, &b * d - &cc * &cc]
}

fn cube_hessian_poly(c: &[UniPoly]) -> [UniPoly; 3] {
    let third = Rational::new(1.into(), 3.into());
    let a = &c[0];
    let b = c[1].scale(&third);
    let cc = c[2].scale(&third);
    let d = &c[3];
    [
        a.mul(&cc).sub(&b.mul(&b)),
        a.mul(d).sub(&b.mul(&cc)),
        b.mul(d).sub(&cc.mul(&cc)),
    ]
}

/// Lines through a point off a cubic meeting it in a single point, found
/// as the common zeros of the Hessian coefficients of the restricted cubic
/// along the pencil. Only rational members are materialized.
pub fn triple_tangent_pencil(c: &PlaneCurve, p: &PointP2) -> Result<TriplePencil> {
    if c.degree() != 3 {
        return Err(Error::Precondition(format!("expected a cubic, got degree {}", c.degree())));
    }
    if c.contains(p) {
        return Err(Error::Precondition(format!("the point {p} lies on the cubic")));
    }
    let f = c.form();
    // λ = 0..3 leaves λe_j + e_k unchanged by normalization, so the samples
    // come from one polynomial family.
    let samples: Vec<Vec<Rational>> = (0..4)
        .map(|l| pencil_restriction(f, p, &pencil_point(p, Some(&int(l))).2))
        .collect();
    let coeffs: Vec<UniPoly> = (0..4)
        .map(|m| interpolate(&samples.iter().map(|s| s[m].clone()).collect::<Vec<_>>()))
        .collect();
    let h = cube_hessian_poly(&coeffs);
    let polynomial = h[0].gcd(&h[1]).gcd(&h[2]);
    let (j, k, e_j) = pencil_point(p, None);
    let at_infinity = cube_hessian(&pencil_restriction(f, p, &e_j)).iter().all(Zero::is_zero);
    let mut lines = Vec::new();
    if polynomial.is_zero() {
        return Err(Error::Verification("every line of the pencil is a triple tangent".into()));
    }
    for r in polynomial.rational_roots() {
        let (_, _, q) = pencil_point(p, Some(&r));
        lines.push(LineP2::through(*p, q)?);
    }
    if at_infinity {
        lines.push(LineP2::through(*p, e_j)?);
    }
    Ok(TriplePencil { point: *p, pencil_axis: (j, k), polynomial, at_infinity, lines })
}

/// How far the reported jumping set is established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    /// Candidates verified, random other lines checked.
    Sampled,
    /// As `Sampled`, and every line through a marked point was decided
    /// exactly along its pencil.
    PencilsCertified,
}

impl Completeness {
    pub fn label(&self) -> &'static str {
        match self {
            Completeness::Sampled => "sampled",
            Completeness::PencilsCertified => "sampled; pencils through Z certified",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineVerdict {
    pub line: LineP2,
    pub candidate: bool,
    pub verdict: JumpVerdict,
}

/// Exact jumping lines through one marked point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilCertificate {
    pub point: PointP2,
    /// Monic gcd of the maximal minors of the `h¹` matrix along the pencil.
    pub minors_gcd: UniPoly,
    pub at_infinity: bool,
    pub lines: Vec<LineP2>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpingReport {
    pub tested: Vec<LineVerdict>,
    /// Lines found to jump, sorted.
    pub jumping: Vec<LineP2>,
    pub dual_curve: Option<Form>,
    pub completeness: Completeness,
    pub pencils: Vec<PencilCertificate>,
}

impl JumpingReport {
    /// Candidates that failed to jump.
    pub fn missed_candidates(&self) -> Vec<LineP2> {
        self.tested.iter().filter(|v| v.candidate && !v.verdict.jumping).map(|v| v.line).collect()
    }

    /// Control lines that jumped.
    pub fn unexpected(&self) -> Vec<LineP2> {
        self.tested.iter().filter(|v| !v.candidate && v.verdict.jumping).map(|v| v.line).collect()
    }
}

/// Tangent line of a conic at a point on it: the polar `A·p`.
pub fn conic_tangent(q: &PlaneCurve, p: &PointP2) -> Result<LineP2> {
    let a = q.conic_matrix()?;
    if !q.contains(p) {
        return Err(Error::Precondition(format!("{p} is not on the conic")));
    }
    let v = a.mul_vec(&p.rational());
    let dual = PointP2::from_rational(&[v[0].clone(), v[1].clone(), v[2].clone()])
        .map_err(|_| Error::Precondition(format!("the conic is singular at {p}")))?;
    Ok(LineP2::new(dual))
}

/// Secants of the marked points and tangents of the conic at them.
pub fn pointed_conic_candidates(pc: &PointedCurve) -> Result<Vec<LineP2>> {
    let z = &pc.points;
    let mut out = Vec::new();
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            out.push(LineP2::through(z[i], z[j])?);
        }
    }
    for p in z {
        out.push(conic_tangent(&pc.curve, p)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Tests candidates and `negatives` seeded random other lines on the sheaf
/// presented by `p`. With `certify`, every pencil through a marked point is
/// decided exactly and compared with the lines found.
pub fn jumping_set_pointed_conic(
    p: &GradedPresentation,
    pc: &PointedCurve,
    candidates: Option<Vec<LineP2>>,
    negatives: usize,
    seed: u64,
    certify: bool,
) -> Result<JumpingReport> {
    if pc.curve.degree() != 2 {
        return Err(Error::Precondition("expected a pointed conic".into()));
    }
    let candidates = match candidates {
        Some(c) => c,
        None => pointed_conic_candidates(pc)?,
    };
    let c1 = p.c1();
    let mut tested = Vec::new();
    for l in &candidates {
        tested.push(LineVerdict { line: *l, candidate: true, verdict: jumping_test(p, c1, l)? });
    }
    let mut r = rng::stream(seed, "jumping-negatives");
    let mut controls = Vec::new();
    while controls.len() < negatives {
        let l = LineP2::from_coords(rng::triple(&mut r, 50))?;
        if candidates.contains(&l) || controls.contains(&l) {
            continue;
        }
        controls.push(l);
    }
    for l in controls {
        tested.push(LineVerdict { line: l, candidate: false, verdict: jumping_test(p, c1, &l)? });
    }
    let mut jumping: Vec<LineP2> = tested.iter().filter(|v| v.verdict.jumping).map(|v| v.line).collect();
    jumping.sort();
    jumping.dedup();
    let mut pencils = Vec::new();
    let mut completeness = Completeness::Sampled;
    if certify {
        for z in &pc.points {
            let cert = certify_pencil(p, z)?;
            let mut expected: Vec<LineP2> = candidates.iter().filter(|l| l.contains(z)).copied().collect();
            expected.sort();
            let mut got = cert.lines.clone();
            got.sort();
            if got != expected {
                return Err(Error::Verification(format!(
                    "pencil through {z}: exact jumping lines {got:?} differ from candidates {expected:?}"
                )));
            }
            pencils.push(cert);
        }
        completeness = Completeness::PencilsCertified;
    }
    Ok(JumpingReport { tested, jumping, dual_curve: None, completeness, pencils })
}

fn derivative(f: &UniPoly) -> UniPoly {
    UniPoly::new((1..f.coeffs().len()).map(|i| f.coeff(i) * int(i as i64)).collect())
}

fn det_uni(m: &[Vec<UniPoly>]) -> UniPoly {
    match m.len() {
        0 => UniPoly::constant(Rational::one()),
        1 => m[0][0].clone(),
        n => {
            let mut acc = UniPoly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<UniPoly>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let t = m[0][j].mul(&det_uni(&minor));
                acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            acc
        }
    }
}

/// Decides every line `s·z + t·(λe_j + e_k)` at once: the line jumps iff
/// the Serre dual degree-zero matrix of the twist `−1 − c1` drops rank,
/// i.e. `λ` is a root of the gcd of its maximal minors. The member through
/// `e_j` is tested on its own.
pub fn certify_pencil(p: &GradedPresentation, z: &PointP2) -> Result<PencilCertificate> {
    let t = p.sheaf_twist - 1 - p.c1();
    let max_deg = p
        .source
        .iter()
        .flat_map(|a| p.target.iter().map(move |b| a - b))
        .max()
        .unwrap_or(0)
        .max(0);
    // For λ ≥ 0 the point λe_j + e_k is already normalized, so sampled
    // entries are values of polynomials in λ of degree at most `max_deg`.
    let at = |lambda: i64| -> Result<MatrixQ> {
        let (_, _, q) = pencil_point(z, Some(&int(lambda)));
        let line = LineP2::with_points(*z, q)?;
        Ok(p.restrict(&line).serre_dual_matrix(t))
    };
    let samples: Vec<MatrixQ> = (0..=max_deg).map(at).collect::<Result<_>>()?;
    let (rows, cols) = (samples[0].rows(), samples[0].cols());
    let m: Vec<Vec<UniPoly>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| interpolate(&samples.iter().map(|s| s.get(i, j).clone()).collect::<Vec<_>>()))
                .collect()
        })
        .collect();
    if rows < cols {
        return Err(Error::Verification("h1 matrix has fewer rows than columns along the pencil".into()));
    }
    let mut g = UniPoly::zero();
    for idx in combinations(rows, cols) {
        let sub: Vec<Vec<UniPoly>> = idx.iter().map(|&i| m[i].clone()).collect();
        g = g.gcd(&det_uni(&sub));
    }
    if g.is_zero() {
        return Err(Error::Verification(format!("every line through {z} jumps")));
    }
    let squarefree = g.div_rem(&g.gcd(&derivative(&g))).0;
    let roots = squarefree.rational_roots();
    if roots.len() != squarefree.degree().unwrap_or(0) {
        return Err(Error::Verification(format!(
            "lines through {z} with irrational parameters jump: {}",
            g.to_string_with("l")
        )));
    }
    let mut lines = Vec::new();
    for r in &roots {
        let (_, _, q) = pencil_point(z, Some(r));
        lines.push(LineP2::through(*z, q)?);
    }
    let (_, _, e_j) = pencil_point(z, None);
    let inf = LineP2::through(*z, e_j)?;
    let at_infinity = jumping_test(p, p.c1(), &inf)?.jumping;
    if at_infinity {
        lines.push(inf);
    }
    lines.sort();
    Ok(PencilCertificate { point: *z, minors_gcd: g, at_infinity, lines })
}

/// Lines tested on a cubic's log tangent sheaf together with its jumping
/// curve: the coordinate lines and `n` seeded random lines.
pub fn cubic_line_panel(p: &GradedPresentation, c: &PlaneCurve, n: usize, seed: u64) -> Result<JumpingReport> {
    let j = jumping_curve_cubic(c)?;
    let mut lines: Vec<LineP2> = (0..3).map(|i| LineP2::new(PointP2::new(unit(i)).unwrap())).collect();
    let mut r = rng::stream(seed, "cubic-panel");
    while lines.len() < 3 + n {
        let l = LineP2::from_coords(rng::triple(&mut r, 50))?;
        if !lines.contains(&l) {
            lines.push(l);
        }
    }
    let mut tested = Vec::new();
    for l in lines {
        let on_curve = j.eval(&l.dual().rational()).is_zero();
        tested.push(LineVerdict { line: l, candidate: on_curve, verdict: jumping_test(p, p.c1(), &l)? });
    }
    let mut jumping: Vec<LineP2> = tested.iter().filter(|v| v.verdict.jumping).map(|v| v.line).collect();
    jumping.sort();
    Ok(JumpingReport { tested, jumping, dual_curve: Some(j), completeness: Completeness::Sampled, pencils: Vec::new() })
}
