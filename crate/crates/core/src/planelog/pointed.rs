use num_traits::Zero;

use crate::exactalg::{
    gradient, graded_map_matrix, int, monomials, syzygies_up_to, Echelon, Form, MatrixQ, PointP2, Rational,
};
use crate::rng;
use crate::{Error, Result};

use super::curve::{chern_generalized, PlaneCurve};
use super::presentation::{ChernPair, GradedPresentation, Role};

/// A smooth curve with distinct marked points on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedCurve {
    pub curve: PlaneCurve,
    pub points: Vec<PointP2>,
}

impl PointedCurve {
    pub fn new(curve: PlaneCurve, points: Vec<PointP2>) -> Result<PointedCurve> {
        curve.require_smooth()?;
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::Precondition(format!("marked point {p} is repeated")));
            }
            if !curve.contains(p) {
                return Err(Error::Precondition(format!("marked point {p} is not on the curve")));
            }
            if curve.is_singular_at(p) {
                return Err(Error::Precondition(format!("marked point {p} is a singular point")));
            }
        }
        Ok(PointedCurve { curve, points })
    }

    /// First line: the form; each further line: a point `[a:b:c]`.
    pub fn parse(text: &str) -> Result<PointedCurve> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let f = lines.next().ok_or_else(|| Error::Parse("empty pointed-curve input".into()))?;
        let curve = PlaneCurve::parse(f)?;
        let points = lines.map(PointP2::parse).collect::<Result<Vec<_>>>()?;
        PointedCurve::new(curve, points)
    }
}

/// Minimal generators of the ideal of a reduced set of points, found
/// degree by degree up to the number of points.
pub fn ideal_of_points(points: &[PointP2]) -> Vec<Form> {
    let mut gens: Vec<Form> = Vec::new();
    let k = points.len().max(1) as u32;
    for t in 1..=k {
        let mons = monomials(t);
        let mut ev = MatrixQ::zeros(points.len(), mons.len());
        for (i, p) in points.iter().enumerate() {
            let x = p.rational();
            for (j, m) in mons.iter().enumerate() {
                ev.set(i, j, Form::monomial(*m, int(1)).eval(&x));
            }
        }
        let mut span = Echelon::new();
        for g in &gens {
            for m in monomials(t - g.degree()) {
                span.insert(Form::monomial(m, int(1)).mul(g).to_vec());
            }
        }
        for v in ev.nullspace() {
            if span.insert(v.clone()) {
                gens.push(Form::from_vec(t, &v));
            }
        }
    }
    gens
}

/// `h = Σ x_i h_i`, each monomial assigned to its first variable.
fn euler_split(h: &Form) -> [Form; 3] {
    let d = h.degree().saturating_sub(1);
    let mut out = [Form::zero(d), Form::zero(d), Form::zero(d)];
    for (e, c) in h.terms() {
        let i = (0..3).find(|&i| e[i] > 0).expect("positive degree");
        let mut g = *e;
        g[i] -= 1;
        out[i] = out[i].add(&Form::monomial(g, c.clone()));
    }
    out
}

/// Koszul generators of Ω¹(2): w01, w02, w12 as columns.
fn koszul_columns() -> Vec<Vec<Form>> {
    let x = |i| Form::var(i);
    let z = || Form::zero(1);
    vec![
        vec![x(1), x(2), z()],
        vec![x(0).neg(), z(), x(2)],
        vec![z(), x(0).neg(), x(1).neg()],
    ]
}

/// Coefficients `c` (forms of degree `k − 1`) with `Σ c_ij w_ij = w`.
fn express_in_koszul(w: &[Form; 3], k: u32) -> Result<[Form; 3]> {
    let wm = koszul_columns();
    let a = graded_map_matrix(&wm, &[1, 1, 1], &[0, 0, 0], k as i64)?;
    let mut rhs = Vec::new();
    for x in w {
        if x.is_zero() {
            rhs.extend(std::iter::repeat(Rational::zero()).take(crate::exactalg::dim_s(k as i64)));
        } else {
            rhs.extend(x.to_vec());
        }
    }
    let sol = a
        .solve(&rhs)
        .ok_or_else(|| Error::Verification("lift system infeasible: form is not in Ω¹".into()))?;
    let n = crate::exactalg::dim_s(k as i64 - 1);
    Ok([
        Form::from_vec(k - 1, &sol[0..n]),
        Form::from_vec(k - 1, &sol[n..2 * n]),
        Form::from_vec(k - 1, &sol[2 * n..3 * n]),
    ])
}

/// Presentation `0 → ⊕O(−a_j) → ⊕O(−b_i) → Ω¹(log(D, Z)) → 0`.
///
/// Horseshoe construction over `0 → Ω¹ → E → I_{Z⊂D} → 0`: Ω¹ is resolved by
/// its Koszul generators and the Euler relation, `I_{Z⊂D}` by the ideal of Z
/// (Hilbert–Burch) together with `f`. A generator `h` of `I_Z` lifts to the
/// log form `(h∇f + f·v)/f` with `x·v = −d·h`. Units are cancelled at the end.
pub fn pointed_presentation(pc: &PointedCurve) -> Result<GradedPresentation> {
    let f = pc.curve.form();
    let d = f.degree() as i64;
    let grad = gradient(f)?;
    let k = pc.points.len();
    if k == 0 {
        return Err(Error::Precondition("no marked points; use the log tangent presentation".into()));
    }
    let h = ideal_of_points(&pc.points);
    let deltas: Vec<i64> = h.iter().map(|g| g.degree() as i64).collect();
    let syz = syzygies_up_to(&h, *deltas.iter().max().unwrap() + k as i64 + 1)?;
    if syz.len() + 1 != h.len() {
        return Err(Error::Verification(format!(
            "ideal of points has {} generators but {} syzygies",
            h.len(),
            syz.len()
        )));
    }
    let v: Vec<[Form; 3]> = h
        .iter()
        .map(|g| euler_split(g).map(|x| x.scale(&int(-d))))
        .collect();

    // f = Σ p_l h_l.
    let a = graded_map_matrix(&[h.clone()], &deltas, &[0], d)?;
    let sol = a
        .solve(&f.to_vec())
        .ok_or_else(|| Error::Precondition("the marked points are not on the curve".into()))?;
    let mut p = Vec::new();
    let mut pos = 0;
    for &dl in &deltas {
        let n = crate::exactalg::dim_s(d - dl);
        p.push(Form::from_vec((d - dl).max(0) as u32, &sol[pos..pos + n]));
        pos += n;
    }

    let nrows = 3 + h.len();
    let mut columns: Vec<(i64, Vec<Form>)> = Vec::new();
    // Euler relation among the Koszul generators.
    let mut col = vec![Form::var(2), Form::var(1).neg(), Form::var(0)];
    col.extend(h.iter().map(|_| Form::zero(0)));
    columns.push((3, col));
    // Liftings of the ideal syzygies and of f.
    let lift_column = |coeffs: &[Form], deg: i64, base: Option<&[Form; 3]>| -> Result<Vec<Form>> {
        let mut w = match base {
            Some(b) => b.clone(),
            None => [Form::zero(0), Form::zero(0), Form::zero(0)],
        };
        for (c, vl) in coeffs.iter().zip(&v) {
            for i in 0..3 {
                w[i] = w[i].add(&c.mul(&vl[i]));
            }
        }
        let c = express_in_koszul(&w, (deg - 1) as u32)?;
        let mut col: Vec<Form> = c.iter().map(|x| x.neg()).collect();
        col.extend(coeffs.iter().cloned());
        Ok(col)
    };
    for (g, &e) in syz.generators.iter().zip(&syz.degrees) {
        columns.push((e, lift_column(g, e, None)?));
    }
    columns.push((d, lift_column(&p, d, Some(&grad))?));

    let mut target = vec![2, 2, 2];
    target.extend(&deltas);
    let mut entries: Vec<Vec<Form>> = (0..nrows).map(|i| columns.iter().map(|(_, c)| c[i].clone()).collect()).collect();
    let mut source: Vec<i64> = columns.iter().map(|(a, _)| *a).collect();
    check_relations(&entries, &source, f, &grad, &h, &v)?;
    minimalize(&mut entries, &mut source, &mut target);

    let chern = chern_generalized(d, k as i64)?;
    let pres = GradedPresentation::new(entries, source, target, Role::Cokernel, 0, 2, chern)?;
    let w = pres.whitney_chern();
    if w != chern {
        return Err(Error::Verification(format!("twists give Chern numbers {w}, expected {chern}")));
    }
    Ok(pres)
}

/// Each column must map to zero under `e_ij ↦ f·w_ij`, `e_l ↦ h_l∇f + f·v_l`.
fn check_relations(
    entries: &[Vec<Form>],
    source: &[i64],
    f: &Form,
    grad: &[Form; 3],
    h: &[Form],
    v: &[[Form; 3]],
) -> Result<()> {
    let kos = koszul_columns();
    for j in 0..source.len() {
        let mut acc = [Form::zero(0), Form::zero(0), Form::zero(0)];
        for (i, row) in entries.iter().enumerate() {
            let c = &row[j];
            if c.is_zero() {
                continue;
            }
            for r in 0..3 {
                let image = if i < 3 {
                    f.mul(&kos[r][i])
                } else {
                    let l = i - 3;
                    h[l].mul(&grad[r]).add(&f.mul(&v[l][r]))
                };
                acc[r] = acc[r].add(&c.mul(&image));
            }
        }
        if acc.iter().any(|x| !x.is_zero()) {
            return Err(Error::Verification(format!("column {j} is not a relation")));
        }
    }
    Ok(())
}

/// Cancels constant nonzero entries (unit pivots) until none remain.
pub fn minimalize(entries: &mut Vec<Vec<Form>>, source: &mut Vec<i64>, target: &mut Vec<i64>) {
    loop {
        let mut pivot = None;
        'find: for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if source[j] == target[i] && !e.is_zero() {
                    pivot = Some((i, j));
                    break 'find;
                }
            }
        }
        let Some((pi, pj)) = pivot else { return };
        let u = entries[pi][pj].coeff([0, 0, 0]);
        let uinv = u.recip();
        let col: Vec<Form> = entries.iter().map(|r| r[pj].clone()).collect();
        let row = entries[pi].clone();
        for (i, r) in entries.iter_mut().enumerate() {
            if col[i].is_zero() {
                continue;
            }
            for (j, e) in r.iter_mut().enumerate() {
                if row[j].is_zero() {
                    continue;
                }
                *e = e.sub(&col[i].mul(&row[j]).scale(&uinv));
            }
        }
        entries.remove(pi);
        target.remove(pi);
        for r in entries.iter_mut() {
            r.remove(pj);
        }
        source.remove(pj);
    }
}

/// Presentation for three points on a conic: a Steiner matrix
/// `O(−3)³ → O(−2)⁵`.
pub fn steiner_conic_points(q: &PlaneCurve, z: &[PointP2]) -> Result<GradedPresentation> {
    if q.degree() != 2 {
        return Err(Error::Precondition("expected a conic".into()));
    }
    if z.len() != 3 {
        return Err(Error::Precondition(format!("expected 3 marked points, got {}", z.len())));
    }
    let pc = PointedCurve::new(q.clone(), z.to_vec())?;
    let p = pointed_presentation(&pc)?;
    if p.source != vec![3, 3, 3] || p.target != vec![2, 2, 2, 2, 2] {
        return Err(Error::Verification(format!(
            "expected a 5x3 Steiner matrix, got twists {:?} -> {:?}",
            p.source, p.target
        )));
    }
    Ok(p)
}

/// Determinant of a square matrix of forms by Laplace expansion.
pub fn det_forms(m: &[Vec<Form>]) -> Form {
    match m.len() {
        0 => Form::constant(int(1)),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Form::zero(0);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Form>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let t = m[0][j].mul(&det_forms(&minor));
                acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            acc
        }
    }
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Nonzero maximal minors (of size = number of columns).
pub fn maximal_minors(p: &GradedPresentation) -> Vec<Form> {
    let (rows, cols) = p.shape();
    combinations(rows, cols)
        .into_iter()
        .map(|idx| det_forms(&idx.iter().map(|&i| p.entries[i].clone()).collect::<Vec<_>>()))
        .filter(|f| !f.is_zero())
        .collect()
}

/// Singular-locus evidence for a cokernel presentation against a finite set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularLocusReport {
    /// Rank of the matrix at each marked point.
    pub rank_at_points: Vec<(PointP2, usize)>,
    /// Every marked point is a rank-drop point.
    pub drops_on_points: bool,
    /// The zero set of the maximal minors is contained in the marked set,
    /// certified by `I(Z)^N ⊆ (minors)` in some degree.
    pub contained_in_points: bool,
    /// Seeded random points off the set where the matrix has full rank.
    pub sampled_full_rank: usize,
    pub sampled: usize,
}

impl SingularLocusReport {
    pub fn exact(&self) -> bool {
        self.drops_on_points && self.contained_in_points && self.sampled_full_rank == self.sampled
    }
}

pub fn singular_locus_report(p: &GradedPresentation, z: &[PointP2], seed: u64, samples: usize) -> SingularLocusReport {
    let cols = p.shape().1;
    let rank_at_points: Vec<(PointP2, usize)> = z.iter().map(|q| (*q, p.rank_at(q))).collect();
    let drops_on_points = rank_at_points.iter().all(|(_, r)| *r < cols);
    let contained_in_points = minors_vanish_only_on(p, z);
    let mut rng = rng::stream(seed, "singular-locus");
    let mut full = 0;
    let mut tried = 0;
    while tried < samples {
        let q = PointP2::new(rng::triple(&mut rng, 50)).unwrap();
        if z.contains(&q) {
            continue;
        }
        tried += 1;
        if p.rank_at(&q) == cols {
            full += 1;
        }
    }
    SingularLocusReport { rank_at_points, drops_on_points, contained_in_points, sampled_full_rank: full, sampled: samples }
}

fn minors_vanish_only_on(p: &GradedPresentation, z: &[PointP2]) -> bool {
    let minors = maximal_minors(p);
    if minors.is_empty() {
        return false;
    }
    let iz = if z.is_empty() { vec![Form::constant(int(1))] } else { ideal_of_points(z) };
    let max_minor = minors.iter().map(|m| m.degree()).max().unwrap();
    let max_gen = iz.iter().map(|g| g.degree()).max().unwrap();
    for n in 1..=3u32 {
        let t = (n * max_gen).max(max_minor) + 2;
        let mut span = Echelon::new();
        for m in &minors {
            for mono in monomials(t - m.degree()) {
                span.insert(Form::monomial(mono, int(1)).mul(m).to_vec());
            }
        }
        let all_in = iz.iter().all(|g| {
            let gn = g.pow(n);
            monomials(t - gn.degree()).into_iter().all(|mono| span.contains(&Form::monomial(mono, int(1)).mul(&gn).to_vec()))
        });
        if all_in {
            return true;
        }
    }
    false
}

/// Chern pair recovered from the Hilbert polynomial of a rank-2 cokernel.
pub fn chern_from_hilbert(p: &GradedPresentation, t: i64) -> ChernPair {
    let h0 = p.hilbert(t);
    let h1 = p.hilbert(t + 1);
    // χ(t+1) − χ(t) = r(t+2) + c1 for rank r.
    let r = p.rank as i64;
    let c1 = h1 - h0 - r * (t + 2);
    // χ(t) is affine in c2 with slope −1.
    let base = super::presentation::euler_characteristic(p.rank as i64, ChernPair::new(c1, 0), t);
    let c2 = base - Rational::from_integer(h0.into());
    ChernPair::new(c1, c2.to_integer().try_into().unwrap_or(i64::MAX))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_of_three_coordinate_points() {
        let z = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].map(|c| PointP2::new(c).unwrap());
        let gens = ideal_of_points(&z);
        assert_eq!(gens.len(), 3);
        assert!(gens.iter().all(|g| g.degree() == 2));
    }

    #[test]
    fn euler_split_recovers_the_form() {
        let h = crate::exactalg::parse_form("x0*x1+x1*x2-3*x2^2").unwrap();
        let s = euler_split(&h);
        let back = (0..3).fold(Form::zero(2), |acc, i| acc.add(&Form::var(i).mul(&s[i])));
        assert_eq!(back, h);
    }
}
