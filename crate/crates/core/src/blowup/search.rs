use crate::exactalg::Rational;
use crate::{Error, Result};

use super::lattice::{slope_log, PicClass};
use super::restriction::{ConstraintRow, Relation};

/// Classes `x = aL + ΣbᵢEᵢ` in a box satisfying a list of rows and the
/// slope condition `x·H ≥ μ` (or `> μ`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSet {
    pub classes: Vec<PicClass>,
    pub slope: Rational,
    pub strict: bool,
    pub bounds: (i64, i64),
}

impl CandidateSet {
    /// `(a, b sorted descending)`, deduplicated: the classes up to
    /// permuting the six points.
    pub fn value_table(&self) -> Vec<(i64, Vec<i64>)> {
        let mut t: Vec<(i64, Vec<i64>)> = self
            .classes
            .iter()
            .map(|c| {
                let mut b = c.b.to_vec();
                b.sort_unstable_by(|x, y| y.cmp(x));
                (c.a, b)
            })
            .collect();
        t.sort_unstable_by(|x, y| y.cmp(x));
        t.dedup();
        t
    }
}

/// Integer row `Σ coef·v  rel  rhs` over `v = (a, b1, …, b6)`.
struct Linear {
    coef: [i64; 7],
    rel: Relation,
    rhs: i64,
}

impl Linear {
    fn from_row(r: &ConstraintRow) -> Linear {
        let mut coef = [0; 7];
        coef[0] = r.curve.a;
        for i in 0..6 {
            coef[i + 1] = -r.curve.b[i];
        }
        Linear { coef, rel: r.relation, rhs: r.bound }
    }

    /// Can the row still be met once the first `fixed` variables are set?
    fn feasible(&self, v: &[i64; 7], fixed: usize, lo: i64, hi: i64) -> bool {
        let mut min = 0;
        let mut max = 0;
        for (i, c) in self.coef.iter().enumerate() {
            if i < fixed {
                min += c * v[i];
                max += c * v[i];
            } else if *c >= 0 {
                min += c * lo;
                max += c * hi;
            } else {
                min += c * hi;
                max += c * lo;
            }
        }
        match self.rel {
            Relation::Le => min <= self.rhs,
            Relation::Ge => max >= self.rhs,
            Relation::Eq => min <= self.rhs && self.rhs <= max,
        }
    }
}

/// All classes with `a, bᵢ ∈ [lo, hi]` meeting every row and the slope
/// condition for `Ω¹_S(log D)`, in lexicographic order of `(a, b1, …, b6)`.
pub fn destabilizer_search(
    d: &PicClass,
    rows: &[ConstraintRow],
    bounds: (i64, i64),
    strict: bool,
) -> Result<CandidateSet> {
    let (lo, hi) = bounds;
    if lo > hi {
        return Err(Error::Precondition(format!("empty box {lo}:{hi}")));
    }
    let slope = slope_log(d, &PicClass::hyperplane());
    // μ is a half-integer, so x·H ≥ μ reads 2·x·H ≥ 2μ over the integers.
    let twice = (&slope * Rational::from_integer(2.into())).to_integer();
    let twice: i64 = i64::try_from(twice).map_err(|_| Error::Precondition("slope out of range".into()))?;
    let h = PicClass::hyperplane();
    let mut lin: Vec<Linear> = rows.iter().map(Linear::from_row).collect();
    lin.push(Linear {
        coef: [2 * h.a, -2 * h.b[0], -2 * h.b[1], -2 * h.b[2], -2 * h.b[3], -2 * h.b[4], -2 * h.b[5]],
        rel: Relation::Ge,
        rhs: if strict { twice + 1 } else { twice },
    });
    let mut classes = Vec::new();
    let mut v = [0i64; 7];
    dfs(&lin, &mut v, 0, lo, hi, &mut classes);
    debug_assert!(classes.iter().all(|c| rows.iter().all(|r| r.satisfied_by(c))));
    Ok(CandidateSet { classes, slope, strict, bounds })
}

fn dfs(lin: &[Linear], v: &mut [i64; 7], depth: usize, lo: i64, hi: i64, out: &mut Vec<PicClass>) {
    if depth == 7 {
        out.push(PicClass::new(v[0], [v[1], v[2], v[3], v[4], v[5], v[6]]));
        return;
    }
    for x in lo..=hi {
        v[depth] = x;
        if lin.iter().all(|l| l.feasible(v, depth + 1, lo, hi)) {
            dfs(lin, v, depth + 1, lo, hi, out);
        }
    }
}
