use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exactalg::{int, Form, Rational};

use super::line::LineP2;

/// Homogeneous binary form in s, t. `coeffs[i]` multiplies `s^(d-i) t^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    degree: u32,
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    pub fn zero(degree: u32) -> BinaryForm {
        BinaryForm { degree, coeffs: vec![Rational::zero(); degree as usize + 1] }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> BinaryForm {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { degree: coeffs.len() as u32 - 1, coeffs }
    }

    pub fn from_ints(c: &[i64]) -> BinaryForm {
        BinaryForm::from_coeffs(c.iter().map(|&x| int(x)).collect())
    }

    /// `a*s + b*t`.
    pub fn linear(a: Rational, b: Rational) -> BinaryForm {
        BinaryForm::from_coeffs(vec![a, b])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &BinaryForm) -> BinaryForm {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, o.degree, "adding binary forms of different degree");
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> BinaryForm {
        BinaryForm { degree: self.degree, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, o: &BinaryForm) -> BinaryForm {
        let mut out = BinaryForm::zero(self.degree + o.degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// Value at `[s:t]`.
    pub fn eval(&self, s: &Rational, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let d = self.degree as usize;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc += c * pow(s, d - i) * pow(t, i);
        }
        acc
    }
}

fn pow(x: &Rational, n: usize) -> Rational {
    let mut out = Rational::one();
    for _ in 0..n {
        out *= x;
    }
    out
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let d = self.degree as usize;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let mut factors = Vec::new();
            for (name, e) in [("s", d - i), ("t", i)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            let a = c.abs();
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{a}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Substitutes the parametrization `[s:t] ↦ s·P + t·Q` of `line` into `f`.
pub fn restrict_form(f: &Form, line: &LineP2) -> BinaryForm {
    let (p, q) = line.points();
    let (p, q) = (p.coords(), q.coords());
    let lin: Vec<BinaryForm> = (0..3).map(|i| BinaryForm::linear(int(p[i]), int(q[i]))).collect();
    let d = f.degree();
    let mut powers: Vec<Vec<BinaryForm>> = Vec::with_capacity(3);
    for l in &lin {
        let mut row = vec![BinaryForm::from_ints(&[1])];
        for k in 1..=d as usize {
            row.push(row[k - 1].mul(l));
        }
        powers.push(row);
    }
    let mut out = BinaryForm::zero(d);
    for (e, c) in f.terms() {
        let m = powers[0][e[0] as usize]
            .mul(&powers[1][e[1] as usize])
            .mul(&powers[2][e[2] as usize]);
        out = out.add(&m.scale(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_form, PointP2};

    #[test]
    fn conic_on_a_coordinate_line() {
        let q = parse_form("x0*x1+x1*x2+x2*x0").unwrap();
        let l = LineP2::new(PointP2::new([0, 0, 1]).unwrap());
        // Chart for [0:0:1] spans with [1:0:0] and [0:1:0] up to sign.
        let r = restrict_form(&q, &l);
        assert_eq!(r.degree(), 2);
        assert!(r.coeffs()[0].is_zero() && r.coeffs()[2].is_zero());
        assert!(!r.coeffs()[1].is_zero());
    }

    #[test]
    fn restriction_vanishes_on_contained_lines() {
        let l = LineP2::new(PointP2::new([1, 0, 0]).unwrap());
        assert!(restrict_form(&parse_form("x0").unwrap(), &l).is_zero());
        let through = LineP2::through(PointP2::new([1, 1, 0]).unwrap(), PointP2::new([0, 0, 1]).unwrap()).unwrap();
        assert!(restrict_form(&parse_form("x0^3-x1^3").unwrap(), &through).is_zero());
    }

    #[test]
    fn eval_at_infinity() {
        let b = BinaryForm::from_ints(&[1, 2, 3]);
        assert_eq!(b.eval(&int(0), &int(1)), int(3));
        assert_eq!(b.eval(&int(1), &int(1)), int(6));
        assert_eq!(b.to_string(), "s^2+2*s*t+3*t^2");
    }
}
