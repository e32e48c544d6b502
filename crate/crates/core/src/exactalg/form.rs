use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::MatrixQ;
use super::rational::{int, Rational};
use crate::{Error, Result};

pub const VARS_X: [&str; 3] = ["x0", "x1", "x2"];
/// Coordinates on the dual plane, used for loci of lines.
pub const VARS_DUAL: [&str; 3] = ["a0", "a1", "a2"];

/// Dimension of the degree-`k` piece of Q[x0,x1,x2]; zero for negative `k`.
pub fn dim_s(k: i64) -> usize {
    if k < 0 {
        0
    } else {
        let k = k as usize;
        (k + 1) * (k + 2) / 2
    }
}

/// Monomials of degree `k` in graded lexicographic order, x0 > x1 > x2,
/// largest first.
pub fn monomials(k: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::with_capacity(dim_s(k as i64));
    for e0 in (0..=k).rev() {
        for e1 in (0..=k - e0).rev() {
            out.push([e0, e1, k - e0 - e1]);
        }
    }
    out
}

/// Position of a monomial in [`monomials`] of its own degree.
pub fn monomial_index(e: [u32; 3]) -> usize {
    let k = e[0] + e[1] + e[2];
    let m = (k - e[0]) as usize;
    m * (m + 1) / 2 + (m - e[1] as usize)
}

/// Homogeneous polynomial in x0, x1, x2 with rational coefficients.
///
/// Only nonzero coefficients are stored, so the zero form of a given degree
/// is the empty map and equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    degree: u32,
    terms: BTreeMap<[u32; 3], Rational>,
}

impl Form {
    pub fn zero(degree: u32) -> Form {
        Form { degree, terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Form {
        Form::monomial([0, 0, 0], c)
    }

    pub fn var(i: usize) -> Form {
        let mut e = [0; 3];
        e[i] = 1;
        Form::monomial(e, int(1))
    }

    pub fn monomial(e: [u32; 3], c: Rational) -> Form {
        let mut f = Form::zero(e[0] + e[1] + e[2]);
        if !c.is_zero() {
            f.terms.insert(e, c);
        }
        f
    }

    /// Linear form with the given coefficients.
    pub fn linear(c: [Rational; 3]) -> Form {
        let mut f = Form::zero(1);
        for (i, ci) in c.into_iter().enumerate() {
            let mut e = [0; 3];
            e[i] = 1;
            f.add_term(e, ci);
        }
        f
    }

    pub fn linear_int(c: [i64; 3]) -> Form {
        Form::linear([int(c[0]), int(c[1]), int(c[2])])
    }

    /// Builds a form from terms, checking homogeneity.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = ([u32; 3], Rational)>) -> Result<Form> {
        let mut f = Form::zero(degree);
        for (e, c) in terms {
            if e[0] + e[1] + e[2] != degree {
                return Err(Error::Precondition(format!(
                    "monomial of degree {} in a form of degree {degree}",
                    e[0] + e[1] + e[2]
                )));
            }
            f.add_term(e, c);
        }
        Ok(f)
    }

    pub(crate) fn add_term(&mut self, e: [u32; 3], c: Rational) {
        debug_assert_eq!(e[0] + e[1] + e[2], self.degree);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: [u32; 3]) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in graded lexicographic order, leading term first.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &Rational)> {
        self.terms.iter().rev()
    }

    pub fn add(&self, other: &Form) -> Form {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        Form {
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Form {
        if c.is_zero() {
            return Form::zero(self.degree);
        }
        Form {
            degree: self.degree,
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Form) -> Form {
        let mut out = Form::zero(self.degree + other.degree);
        for (e, c) in &self.terms {
            for (g, d) in &other.terms {
                out.add_term([e[0] + g[0], e[1] + g[1], e[2] + g[2]], c * d);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Form {
        let mut out = Form::constant(int(1));
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn partial(&self, i: usize) -> Form {
        let mut out = Form::zero(self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut g = *e;
                g[i] -= 1;
                out.add_term(g, c * int(e[i] as i64));
            }
        }
        out
    }

    pub fn eval(&self, p: &[Rational; 3]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                for _ in 0..e[i] {
                    t *= &p[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_int(&self, p: [i64; 3]) -> Rational {
        self.eval(&[int(p[0]), int(p[1]), int(p[2])])
    }

    /// Substitutes `x_i -> images[i]`; the images must share one degree.
    pub fn compose(&self, images: &[Form; 3]) -> Form {
        let k = images[0].degree;
        assert!(images.iter().all(|g| g.degree == k || g.is_zero()));
        let mut powers: Vec<Vec<Form>> = Vec::with_capacity(3);
        for g in images {
            let mut row = vec![Form::constant(int(1))];
            for n in 1..=self.degree {
                let next = row[n as usize - 1].mul(g);
                row.push(next);
            }
            powers.push(row);
        }
        let mut out = Form::zero(self.degree * k);
        for (e, c) in &self.terms {
            let t = powers[0][e[0] as usize]
                .mul(&powers[1][e[1] as usize])
                .mul(&powers[2][e[2] as usize]);
            let t = if t.is_zero() { Form::zero(out.degree) } else { t };
            out = out.add(&t.scale(c));
        }
        out
    }

    /// Coefficient vector in the monomial basis of [`monomials`].
    pub fn to_vec(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); dim_s(self.degree as i64)];
        for (e, c) in &self.terms {
            v[monomial_index(*e)] = c.clone();
        }
        v
    }

    pub fn from_vec(degree: u32, v: &[Rational]) -> Form {
        let mut f = Form::zero(degree);
        for (e, c) in monomials(degree).into_iter().zip(v) {
            f.add_term(e, c.clone());
        }
        f
    }

    /// Scales to coprime integer coefficients whose leading coefficient
    /// (graded lexicographic order) is positive. The zero form is returned
    /// unchanged.
    pub fn primitive(&self) -> Form {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&den / c.denom());
            g = g.gcd(&n);
        }
        let lead_neg = self.terms().next().map(|(_, c)| c.is_negative()).unwrap_or(false);
        let mut s = Rational::new(den, g);
        if lead_neg {
            s = -s;
        }
        self.scale(&s)
    }

    /// Exact quotient by `divisor`, or `None` when it does not divide.
    pub fn div_exact(&self, divisor: &Form) -> Option<Form> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return self.degree.checked_sub(divisor.degree).map(Form::zero);
        }
        let qd = self.degree.checked_sub(divisor.degree)?;
        let mons = monomials(qd);
        let mut a = MatrixQ::zeros(dim_s(self.degree as i64), mons.len());
        for (j, m) in mons.iter().enumerate() {
            for (e, c) in &divisor.terms {
                let p = [e[0] + m[0], e[1] + m[1], e[2] + m[2]];
                a.set(monomial_index(p), j, c.clone());
            }
        }
        let x = a.solve(&self.to_vec())?;
        Some(Form::from_vec(qd, &x))
    }

    /// Canonical text with the given variable names.
    pub fn to_string_with(&self, names: &[&str; 3]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                s.push('-');
            } else if k > 0 {
                s.push('+');
            }
            let mut factors: Vec<String> = Vec::new();
            for i in 0..3 {
                match e[i] {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    n => factors.push(format!("{}^{}", names[i], n)),
                }
            }
            if factors.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    s.push_str(&a.to_string());
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&VARS_X))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_order_and_index_agree() {
        for k in 0..6 {
            for (i, m) in monomials(k).into_iter().enumerate() {
                assert_eq!(monomial_index(m), i);
            }
        }
        assert_eq!(monomials(1), vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    }

    #[test]
    fn primitive_normalizes_sign_and_content() {
        let f = Form::linear([int(-2), int(4), super::super::rational::ratio(6, 1)]);
        assert_eq!(f.primitive(), Form::linear_int([1, -2, -3]));
    }

    #[test]
    fn exact_division() {
        let l = Form::linear_int([1, -1, 0]);
        let q = Form::linear_int([1, 1, 3]);
        assert_eq!(l.mul(&q).div_exact(&l), Some(q.clone()));
        assert_eq!(q.mul(&q).add(&Form::monomial([0, 0, 2], int(1))).div_exact(&l), None);
    }
}
