use std::fmt;

use num_traits::Zero;

use crate::exactalg::{int, MatrixQ, Rational};
use crate::{Error, Result};

use super::binary::BinaryForm;

fn dim(k: i64) -> usize {
    if k < 0 {
        0
    } else {
        k as usize + 1
    }
}

/// Matrix of binary forms presenting `⊕O(−a_j) → ⊕O(−b_i)` on P¹.
/// Entry `(i, j)` has degree `a_j − b_i` or is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrixP1 {
    entries: Vec<Vec<BinaryForm>>,
    source: Vec<i64>,
    target: Vec<i64>,
}

impl GradedMatrixP1 {
    pub fn new(entries: Vec<Vec<BinaryForm>>, source: Vec<i64>, target: Vec<i64>) -> Result<GradedMatrixP1> {
        if entries.len() != target.len() {
            return Err(Error::Precondition("row count differs from the number of target twists".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != source.len() {
                return Err(Error::Precondition(format!("row {i} has the wrong length")));
            }
            for (j, e) in row.iter().enumerate() {
                if !e.is_zero() && e.degree() as i64 != source[j] - target[i] {
                    return Err(Error::Precondition(format!(
                        "entry ({i},{j}) has degree {} but the twists require {}",
                        e.degree(),
                        source[j] - target[i]
                    )));
                }
            }
        }
        Ok(GradedMatrixP1 { entries, source, target })
    }

    pub fn rows(&self) -> usize {
        self.target.len()
    }

    pub fn cols(&self) -> usize {
        self.source.len()
    }

    pub fn entries(&self) -> &[Vec<BinaryForm>] {
        &self.entries
    }

    pub fn source(&self) -> &[i64] {
        &self.source
    }

    pub fn target(&self) -> &[i64] {
        &self.target
    }

    /// Degree-`t` piece `⊕S_{t−a_j} → ⊕S_{t−b_i}` in the monomial bases
    /// `s^k, s^(k−1)t, …, t^k`.
    pub fn degree_matrix(&self, t: i64) -> MatrixQ {
        let row_off = offsets(self.target.iter().map(|b| dim(t - b)));
        let col_off = offsets(self.source.iter().map(|a| dim(t - a)));
        let mut m = MatrixQ::zeros(*row_off.last().unwrap(), *col_off.last().unwrap());
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                for k in 0..dim(t - self.source[j]) {
                    for (m_idx, c) in e.coeffs().iter().enumerate() {
                        if !c.is_zero() {
                            m.add_to(row_off[i] + k + m_idx, col_off[j] + k, c);
                        }
                    }
                }
            }
        }
        m
    }

    /// Degree-0 piece of the transposed map
    /// `⊕O(b_i − t − 2) → ⊕O(a_j − t − 2)`; by Serre duality its cokernel
    /// is dual to the kernel of `H¹` of the degree-`t` piece.
    pub fn serre_dual_matrix(&self, t: i64) -> MatrixQ {
        let entries: Vec<Vec<BinaryForm>> = (0..self.cols())
            .map(|j| (0..self.rows()).map(|i| self.entries[i][j].clone()).collect())
            .collect();
        let source = self.target.iter().map(|b| t + 2 - b).collect();
        let target = self.source.iter().map(|a| t + 2 - a).collect();
        GradedMatrixP1 { entries, source, target }.degree_matrix(0)
    }

    /// Maximal degree of a nonzero entry.
    fn max_entry_degree(&self) -> i64 {
        self.entries
            .iter()
            .flatten()
            .filter(|e| !e.is_zero())
            .map(|e| e.degree() as i64)
            .max()
            .unwrap_or(0)
    }

    /// Value of the matrix at `[s:t]`.
    pub fn eval(&self, s: &Rational, t: &Rational) -> MatrixQ {
        MatrixQ::from_rows(
            self.entries
                .iter()
                .map(|row| row.iter().map(|e| e.eval(s, t)).collect())
                .collect(),
        )
    }

    /// Rank over the fraction field. A nonzero minor is a binary form of
    /// degree at most `min(m, n)·D`, so it cannot vanish at more than that
    /// many points `[1:c]`.
    pub fn generic_rank(&self) -> usize {
        let bound = self.rows().min(self.cols()) as i64 * self.max_entry_degree() + 1;
        let full = self.rows().min(self.cols());
        let mut best = 0;
        for c in 0..=bound {
            best = best.max(self.eval(&int(1), &int(c)).rank());
            if best == full {
                break;
            }
        }
        best
    }

    /// Sum of twists: the first Chern number of the cokernel.
    pub fn coker_degree(&self) -> i64 {
        self.source.iter().sum::<i64>() - self.target.iter().sum::<i64>()
    }
}

fn offsets(dims: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for d in dims {
        out.push(out.last().unwrap() + d);
    }
    out
}

/// Grothendieck splitting `⊕O(d_i)` plus the length of a torsion part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplittingType {
    pub degrees: Vec<i64>,
    pub torsion: u64,
}

impl SplittingType {
    pub fn new(mut degrees: Vec<i64>, torsion: u64) -> SplittingType {
        degrees.sort();
        SplittingType { degrees, torsion }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// Degree of the restricted sheaf: `Σ d_i + torsion`.
    pub fn degree(&self) -> i64 {
        self.degrees.iter().sum::<i64>() + self.torsion as i64
    }

    pub fn twist(&self, k: i64) -> SplittingType {
        SplittingType::new(self.degrees.iter().map(|d| d + k).collect(), self.torsion)
    }

    /// Splitting of the dual of the locally free part.
    pub fn dual(&self) -> SplittingType {
        SplittingType::new(self.degrees.iter().map(|d| -d).collect(), 0)
    }

    /// `h⁰` of the sheaf twisted by `t`.
    pub fn h0(&self, t: i64) -> i64 {
        self.degrees.iter().map(|d| (d + t + 1).max(0)).sum::<i64>() + self.torsion as i64
    }

    /// `h¹` of the sheaf twisted by `t`.
    pub fn h1(&self, t: i64) -> i64 {
        self.degrees.iter().map(|d| (-(d + t) - 1).max(0)).sum()
    }

    pub fn parse(s: &str) -> Result<SplittingType> {
        let bad = || Error::Parse(format!("expected (d1,d2,...;torsion=k), got '{s}'"));
        let inner = s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (degs, tors) = inner.split_once(';').ok_or_else(bad)?;
        let torsion = tors.trim().strip_prefix("torsion=").ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let mut degrees = Vec::new();
        for d in degs.split(',').map(str::trim).filter(|d| !d.is_empty()) {
            degrees.push(d.parse().map_err(|_| bad())?);
        }
        Ok(SplittingType::new(degrees, torsion))
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.degrees.iter().map(|x| x.to_string()).collect();
        write!(f, "({};torsion={})", d.join(","), self.torsion)
    }
}

/// Splitting of the kernel sheaf of `M` as a subsheaf of `⊕O(−a_j)`.
///
/// The kernel module is free; with `K_t` its dimension in degree `t`, the
/// number of generators in degree `t` is the second difference
/// `K_t − 2K_{t−1} + K_{t−2}`. A generator of degree `e` is a summand
/// `O(−e)`.
pub fn kernel_splitting(m: &GradedMatrixP1) -> SplittingType {
    let expected = m.cols() - m.generic_rank();
    let mut degrees = Vec::new();
    let Some(&start) = m.source().iter().min() else {
        return SplittingType::new(degrees, 0);
    };
    let nullity = |t: i64| -> i64 {
        let a = m.degree_matrix(t);
        (a.cols() - a.rank()) as i64
    };
    let (mut k2, mut k1) = (0i64, 0i64);
    let mut t = start;
    while degrees.len() < expected {
        let k0 = nullity(t);
        let count = k0 - 2 * k1 + k2;
        for _ in 0..count.max(0) {
            degrees.push(-t);
        }
        k2 = k1;
        k1 = k0;
        t += 1;
    }
    SplittingType::new(degrees, 0)
}

/// `h⁰` of the cokernel sheaf of `M` twisted by `t`: the cokernel of
/// `H⁰(φ(t))` plus the kernel of `H¹(φ(t))`, the latter through the Serre
/// dual matrix.
pub fn coker_h0(m: &GradedMatrixP1, t: i64) -> i64 {
    let a = m.degree_matrix(t);
    let h1_src: usize = m.source().iter().map(|a| dim(a - t - 2)).sum();
    let d = m.serre_dual_matrix(t);
    (a.rows() - a.rank()) as i64 + (h1_src - d.rank()) as i64
}

/// Recovers the splitting and torsion length of the cokernel sheaf of an
/// injective `M` by fitting `h⁰(F(t)) = Σ max(0, c_i+t+1) + torsion`.
///
/// `window` overrides the fit range. Without it the range
/// `±(max|twist| + rank + 2)` is tried first, then a range derived from the
/// twists that always contains every jump of the profile.
pub fn coker_profile(m: &GradedMatrixP1, window: Option<(i64, i64)>) -> Result<SplittingType> {
    if m.generic_rank() != m.cols() {
        return Err(Error::Verification(
            "inconsistent profile: the presentation matrix is not injective".into(),
        ));
    }
    let r = m.rows() - m.cols();
    if let Some(w) = window {
        return fit_profile(m, r, w);
    }
    let max_twist = m.source().iter().chain(m.target()).map(|x| x.abs()).max().unwrap_or(0);
    let span = max_twist + r as i64 + 2;
    if let Ok(s) = fit_profile(m, r, (-span, span)) {
        return Ok(s);
    }
    // Summands are quotients of ⊕O(−b_i), so c_i ≥ −max b; the total degree
    // then caps the largest summand.
    let max_b = m.target().iter().copied().max().unwrap_or(0);
    let c_max = m.coker_degree() + (r as i64 - 1).max(0) * max_b;
    fit_profile(m, r, (-c_max - 2, max_b + 1))
}

fn fit_profile(m: &GradedMatrixP1, r: usize, (lo, hi): (i64, i64)) -> Result<SplittingType> {
    if hi < lo + 2 {
        return Err(Error::Precondition(format!("degree window {lo}:{hi} too narrow")));
    }
    let h: Vec<i64> = (lo..=hi + 5).map(|t| coker_h0(m, t)).collect();
    let torsion = h[0];
    let mut degrees = Vec::new();
    for idx in 2..=(hi - lo) as usize {
        let count = h[idx] - 2 * h[idx - 1] + h[idx - 2];
        if count < 0 {
            return Err(Error::Verification(format!(
                "inconsistent profile: negative second difference at t={}",
                lo + idx as i64
            )));
        }
        for _ in 0..count {
            degrees.push(-(lo + idx as i64));
        }
    }
    if torsion < 0 || degrees.len() != r {
        return Err(Error::Precondition(format!(
            "degree window {lo}:{hi} too narrow for a unique fit ({} of {r} summands found)",
            degrees.len()
        )));
    }
    let s = SplittingType::new(degrees, torsion as u64);
    for (idx, &v) in h.iter().enumerate() {
        if s.h0(lo + idx as i64) != v {
            return Err(Error::Precondition(format!(
                "degree window {lo}:{hi} too narrow: profile deviates at t={}",
                lo + idx as i64
            )));
        }
    }
    if s.degree() != m.coker_degree() {
        return Err(Error::Verification(format!(
            "inconsistent profile: splitting {s} has degree {} but the twists give {}",
            s.degree(),
            m.coker_degree()
        )));
    }
    Ok(s)
}

/// Dimension of the kernel of the degree-`t` piece (for profile checks).
pub fn kernel_dim(m: &GradedMatrixP1, t: i64) -> usize {
    let a = m.degree_matrix(t);
    a.cols() - a.rank()
}
