use std::fmt;

use crate::exactalg::{gradient, parse_form, Form, PointP2};
use crate::p1split::SplittingType;
use crate::{Error, Result};

use super::presentation::{ChernPair, GradedPresentation, Role};

/// Distinct lines of P², stored by dual coordinates, with every point
/// where at least two of them meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    lines: Vec<PointP2>,
    points: Vec<(PointP2, usize)>,
}

impl Arrangement {
    pub fn new(lines: Vec<PointP2>) -> Result<Arrangement> {
        if lines.is_empty() {
            return Err(Error::Precondition("an arrangement needs at least one line".into()));
        }
        for (i, l) in lines.iter().enumerate() {
            if lines[..i].contains(l) {
                return Err(Error::Precondition(format!("line {l} is repeated")));
            }
        }
        let mut points: Vec<(PointP2, usize)> = Vec::new();
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let p = lines[i].cross(&lines[j]).expect("distinct lines meet in a point");
                if points.iter().any(|(q, _)| *q == p) {
                    continue;
                }
                let s = lines.iter().filter(|l| l.dot(&p) == 0).count();
                points.push((p, s));
            }
        }
        points.sort();
        let m = lines.len();
        let pairs: usize = points.iter().map(|(_, s)| s * (s - 1) / 2).sum();
        if pairs != m * (m - 1) / 2 {
            return Err(Error::Verification("incidence count does not match the number of line pairs".into()));
        }
        Ok(Arrangement { lines, points })
    }

    /// Parses linear forms separated by `;` or newlines.
    pub fn parse(text: &str) -> Result<Arrangement> {
        let mut lines = Vec::new();
        for piece in text.split([';', '\n']).map(str::trim).filter(|s| !s.is_empty()) {
            let f = parse_form(piece)?;
            if f.degree() != 1 || f.is_zero() {
                return Err(Error::Parse(format!("'{piece}' is not a linear form")));
            }
            let c: Vec<_> = (0..3)
                .map(|i| {
                    let mut e = [0; 3];
                    e[i] = 1;
                    f.coeff(e)
                })
                .collect();
            lines.push(PointP2::from_rational(&[c[0].clone(), c[1].clone(), c[2].clone()]).map_err(|e| Error::Parse(e.to_string()))?);
        }
        Arrangement::new(lines)
    }

    pub fn lines(&self) -> &[PointP2] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Intersection points with the number of lines through each.
    pub fn multiple_points(&self) -> &[(PointP2, usize)] {
        &self.points
    }

    /// Product of the lines.
    pub fn form(&self) -> Form {
        let mut f = Form::constant(crate::exactalg::int(1));
        for l in &self.lines {
            f = f.mul(&Form::linear_int(l.coords()));
        }
        f
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lines.iter().map(|l| Form::linear_int(l.coords()).to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

/// `c1 = 3 − m`, `c2 = Σ_x (s(x) − 1) + 3 − 2m` for `T(−log D)`.
pub fn arrangement_chern(a: &Arrangement) -> ChernPair {
    let m = a.len() as i64;
    let sum: i64 = a.points.iter().map(|(_, s)| *s as i64 - 1).sum();
    ChernPair::new(3 - m, sum + 3 - 2 * m)
}

/// Largest number of lines through one point (1 for a single line).
pub fn arrangement_multiplicity(a: &Arrangement) -> usize {
    a.points.iter().map(|(_, s)| *s).max().unwrap_or(1)
}

/// Verdict of the two sufficient freeness criteria.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Freeness {
    /// `T(−log D) ≅ O(d1) ⊕ O(d2)`; the pair is kept in the order the
    /// criterion produces it.
    Free { pair: (i64, i64), splitting: SplittingType },
    Unknown,
}

/// Criteria: if `2m(D) ≥ m+1` and `c2(T(−log D)(m−1−m(D))) = 0` then
/// `T(−log D) = O(1−m+m(D)) ⊕ O(2−m(D))`; if `2m(D) = m` and
/// `c2(T(−log D)(m(D)−2)) = 0` then `T(−log D) = O(2−m(D)) ⊕ O(1−m(D))`.
pub fn freeness_certificate(a: &Arrangement) -> Freeness {
    let m = a.len() as i64;
    let md = arrangement_multiplicity(a) as i64;
    let c = arrangement_chern(a);
    let free = |d1: i64, d2: i64| Freeness::Free { pair: (d1, d2), splitting: SplittingType::new(vec![d1, d2], 0) };
    if 2 * md >= m + 1 && c.twist(2, m - 1 - md).c2 == 0 {
        return free(1 - m + md, 2 - md);
    }
    if 2 * md == m && c.twist(2, md - 2).c2 == 0 {
        return free(2 - md, 1 - md);
    }
    Freeness::Unknown
}

/// Kernel of the gradient of the product of the lines, twisted by one:
/// `T(−log D)`. Restrictions through this presentation are exact on lines
/// that avoid the multiple points.
pub fn arrangement_presentation(a: &Arrangement) -> Result<GradedPresentation> {
    let f = a.form();
    let d = f.degree() as i64;
    let row = gradient(&f)?.to_vec();
    GradedPresentation::new(vec![row], vec![0, 0, 0], vec![1 - d], Role::Kernel, 1, 2, arrangement_chern(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pencil_and_generic() {
        let pencil = Arrangement::parse("x0; x1; x0+x1; x0-x1").unwrap();
        assert_eq!(arrangement_multiplicity(&pencil), 4);
        assert_eq!(arrangement_chern(&pencil), ChernPair::new(-1, -2));
        let generic = Arrangement::parse("x0; x1; x2; x0+x1+x2").unwrap();
        assert_eq!(arrangement_chern(&generic), ChernPair::new(-1, 1));
        assert_eq!(arrangement_multiplicity(&generic), 2);
        assert!(Arrangement::parse("x0; 2*x0").is_err());
    }
}
