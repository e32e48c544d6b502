use num_traits::Zero;

use super::form::{dim_s, monomial_index, monomials, Form};
use super::matrix::MatrixQ;
use super::rational::Rational;
use crate::{Error, Result};

/// Matrix of the degree-`t` piece of a map `⊕O(−a_j) → ⊕O(−b_i)`.
///
/// `rows[i][j]` must be homogeneous of degree `a_j − b_i` (or zero). Rows of
/// the result are indexed by the target blocks `S_{t−b_i}`, columns by the
/// source blocks `S_{t−a_j}`, each block in monomial order.
pub fn graded_map_matrix(rows: &[Vec<Form>], source: &[i64], target: &[i64], t: i64) -> Result<MatrixQ> {
    check_degrees(rows, source, target)?;
    let row_off = offsets(target.iter().map(|b| dim_s(t - b)));
    let col_off = offsets(source.iter().map(|a| dim_s(t - a)));
    let mut m = MatrixQ::zeros(*row_off.last().unwrap(), *col_off.last().unwrap());
    for (i, row) in rows.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            if entry.is_zero() || t - source[j] < 0 {
                continue;
            }
            for (k, mono) in monomials((t - source[j]) as u32).into_iter().enumerate() {
                for (e, c) in entry.terms() {
                    let p = [e[0] + mono[0], e[1] + mono[1], e[2] + mono[2]];
                    m.add_to(row_off[i] + monomial_index(p), col_off[j] + k, c);
                }
            }
        }
    }
    Ok(m)
}

fn offsets(dims: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for d in dims {
        out.push(out.last().unwrap() + d);
    }
    out
}

fn check_degrees(rows: &[Vec<Form>], source: &[i64], target: &[i64]) -> Result<()> {
    if rows.len() != target.len() {
        return Err(Error::Precondition(format!(
            "{} rows but {} target twists",
            rows.len(),
            target.len()
        )));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != source.len() {
            return Err(Error::Precondition(format!(
                "row {i} has {} entries but there are {} source twists",
                row.len(),
                source.len()
            )));
        }
        for (j, e) in row.iter().enumerate() {
            let want = source[j] - target[i];
            if !e.is_zero() && e.degree() as i64 != want {
                return Err(Error::Precondition(format!(
                    "entry ({i},{j}) has degree {} but the twists require {want}",
                    e.degree()
                )));
            }
        }
    }
    Ok(())
}

/// Generators of a graded submodule of `⊕S(−twists_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyBasis {
    /// Twists `d_j` of the ambient free module; component `j` of a degree-δ
    /// element has degree `δ − d_j`.
    pub twists: Vec<i64>,
    pub generators: Vec<Vec<Form>>,
    pub degrees: Vec<i64>,
}

impl SyzygyBasis {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Coefficient vector of a degree-δ element in the monomial basis.
    pub fn flatten(&self, v: &[Form], delta: i64) -> Vec<Rational> {
        flatten(&self.twists, v, delta)
    }

    /// Vectors spanning the degree-δ piece of the submodule.
    fn span_in_degree(&self, delta: i64) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for (g, &e) in self.generators.iter().zip(&self.degrees) {
            if e > delta {
                continue;
            }
            for mono in monomials((delta - e) as u32) {
                let m = Form::monomial(mono, Rational::from_integer(1.into()));
                let shifted: Vec<Form> = g.iter().map(|x| m.mul(x)).collect();
                out.push(flatten(&self.twists, &shifted, delta));
            }
        }
        out
    }
}

fn flatten(twists: &[i64], v: &[Form], delta: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    for (x, &d) in v.iter().zip(twists) {
        let k = delta - d;
        if k < 0 {
            continue;
        }
        if x.is_zero() {
            out.extend(std::iter::repeat(Rational::zero()).take(dim_s(k)));
        } else {
            out.extend(x.to_vec());
        }
    }
    out
}

fn unflatten(twists: &[i64], v: &[Rational], delta: i64) -> Vec<Form> {
    let mut out = Vec::with_capacity(twists.len());
    let mut pos = 0;
    for &d in twists {
        let k = delta - d;
        if k < 0 {
            out.push(Form::zero(0));
            continue;
        }
        let n = dim_s(k);
        out.push(Form::from_vec(k as u32, &v[pos..pos + n]));
        pos += n;
    }
    out
}

/// Incrementally maintained row-echelon basis of a subspace.
pub(crate) struct Echelon {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    pub(crate) fn new() -> Echelon {
        Echelon { rows: Vec::new() }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [Rational]) {
        for (p, r) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }

    /// Adds `v`; returns false when it was already in the span.
    pub(crate) fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, r) in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub(crate) fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }
}

/// Minimal generators, in degrees up to `dmax`, of the kernel of the map
/// `⊕O(−a_j) → ⊕O(−b_i)` given by `rows`.
pub fn kernel_generators(rows: &[Vec<Form>], source: &[i64], target: &[i64], dmax: i64) -> Result<SyzygyBasis> {
    check_degrees(rows, source, target)?;
    let mut basis = SyzygyBasis { twists: source.to_vec(), generators: Vec::new(), degrees: Vec::new() };
    let Some(&start) = source.iter().min() else {
        return Ok(basis);
    };
    for delta in start..=dmax {
        let a = graded_map_matrix(rows, source, target, delta)?;
        if a.cols() == 0 {
            continue;
        }
        let null = a.nullspace();
        if null.is_empty() {
            continue;
        }
        let mut span = Echelon::new();
        for v in basis.span_in_degree(delta) {
            span.insert(v);
        }
        if span.dim() == null.len() {
            continue;
        }
        for v in null {
            if span.insert(v.clone()) {
                basis.generators.push(unflatten(source, &v, delta));
                basis.degrees.push(delta);
            }
        }
    }
    Ok(basis)
}

/// Minimal syzygies of the row `g` in degrees up to `dmax`; the syzygy
/// `u` satisfies `Σ g_j u_j = 0` with `deg u_j = δ − deg g_j`.
pub fn syzygies_up_to(g: &[Form], dmax: i64) -> Result<SyzygyBasis> {
    let source: Vec<i64> = g.iter().map(|x| x.degree() as i64).collect();
    kernel_generators(&[g.to_vec()], &source, &[0], dmax)
}

/// Whether the degree-δ vector `v` lies in the submodule generated by `basis`.
pub fn module_contains(basis: &SyzygyBasis, v: &[Form], delta: i64) -> bool {
    let mut span = Echelon::new();
    for w in basis.span_in_degree(delta) {
        span.insert(w);
    }
    span.contains(&basis.flatten(v, delta))
}
