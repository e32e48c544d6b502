use std::fmt;

use crate::exactalg::{Form, PointP2};
use crate::{Error, Result};

/// A line of P² with a fixed parametrization `[s:t] ↦ s·P + t·Q`.
///
/// The default chart is the first index `i` with `α_i ≠ 0`; with `j < k` the
/// other two indices, `P = α_i e_j − α_j e_i` and `Q = α_i e_k − α_k e_i`.
/// For `α₀ ≠ 0` this parametrizes by the last two coordinates.
///
/// Equality and ordering look at the line only, not the parametrization.
#[derive(Clone, Copy, Debug)]
pub struct LineP2 {
    dual: PointP2,
    chart: usize,
    p: PointP2,
    q: PointP2,
}

impl LineP2 {
    pub fn new(dual: PointP2) -> LineP2 {
        let chart = dual.coords().iter().position(|&c| c != 0).unwrap();
        Self::with_chart(dual, chart).unwrap()
    }

    /// Same line, parametrized from chart `i`; needs `α_i ≠ 0`.
    pub fn with_chart(dual: PointP2, i: usize) -> Result<LineP2> {
        let a = dual.coords();
        if i > 2 || a[i] == 0 {
            return Err(Error::Precondition(format!("chart {i} is not available for the line {dual}")));
        }
        let others: Vec<usize> = (0..3).filter(|&x| x != i).collect();
        let span = |j: usize| {
            let mut v = [0i64; 3];
            v[j] = a[i];
            v[i] = -a[j];
            PointP2::new(v).unwrap()
        };
        Ok(LineP2 { dual, chart: i, p: span(others[0]), q: span(others[1]) })
    }

    pub fn from_coords(a: [i64; 3]) -> Result<LineP2> {
        Ok(LineP2::new(PointP2::new(a)?))
    }

    pub fn through(p: PointP2, q: PointP2) -> Result<LineP2> {
        let dual = p
            .cross(&q)
            .ok_or_else(|| Error::Precondition(format!("{p} and {q} do not span a line")))?;
        Ok(LineP2::new(dual))
    }

    /// The line through `p` and `q`, parametrized as `s·p + t·q`.
    pub fn with_points(p: PointP2, q: PointP2) -> Result<LineP2> {
        let dual = p
            .cross(&q)
            .ok_or_else(|| Error::Precondition(format!("{p} and {q} do not span a line")))?;
        let chart = dual.coords().iter().position(|&c| c != 0).unwrap();
        Ok(LineP2 { dual, chart, p, q })
    }

    pub fn parse(s: &str) -> Result<LineP2> {
        Ok(LineP2::new(PointP2::parse(s)?))
    }

    pub fn dual(&self) -> PointP2 {
        self.dual
    }

    pub fn chart(&self) -> usize {
        self.chart
    }

    pub fn points(&self) -> (PointP2, PointP2) {
        (self.p, self.q)
    }

    pub fn contains(&self, x: &PointP2) -> bool {
        self.dual.dot(x) == 0
    }

    /// The defining linear form `α₀x0 + α₁x1 + α₂x2`.
    pub fn form(&self) -> Form {
        Form::linear_int(self.dual.coords())
    }
}

impl PartialEq for LineP2 {
    fn eq(&self, other: &Self) -> bool {
        self.dual == other.dual
    }
}

impl Eq for LineP2 {}

impl std::hash::Hash for LineP2 {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dual.hash(state);
    }
}

impl PartialOrd for LineP2 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LineP2 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.dual.cmp(&other.dual)
    }
}

impl fmt::Display for LineP2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.dual.fmt(f)
    }
}
