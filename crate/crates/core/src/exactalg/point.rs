use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::rational::{int, parse_rational, Rational};
use crate::{Error, Result};

/// Point of the projective plane with integer coordinates.
///
/// Stored primitive (gcd 1) with first nonzero coordinate positive, so two
/// representatives of the same point compare equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointP2([i64; 3]);

impl PointP2 {
    pub fn new(c: [i64; 3]) -> Result<PointP2> {
        Self::from_big([BigInt::from(c[0]), BigInt::from(c[1]), BigInt::from(c[2])])
    }

    pub fn from_big(c: [BigInt; 3]) -> Result<PointP2> {
        if c.iter().all(|x| x.is_zero()) {
            return Err(Error::Precondition("the zero vector is not a projective point".into()));
        }
        let g = c[0].gcd(&c[1]).gcd(&c[2]);
        let mut v: Vec<BigInt> = c.iter().map(|x| x / &g).collect();
        let first = v.iter().find(|x| !x.is_zero()).cloned().unwrap_or_default();
        if first < BigInt::zero() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
        let mut out = [0i64; 3];
        for i in 0..3 {
            out[i] = v[i]
                .to_i64()
                .ok_or_else(|| Error::Precondition("coordinate does not fit in 64 bits".into()))?;
        }
        Ok(PointP2(out))
    }

    /// Clears denominators of a rational representative.
    pub fn from_rational(c: &[Rational; 3]) -> Result<PointP2> {
        let mut den = BigInt::from(1);
        for x in c {
            den = den.lcm(x.denom());
        }
        let big = |x: &Rational| x.numer() * (&den / x.denom());
        Self::from_big([big(&c[0]), big(&c[1]), big(&c[2])])
    }

    pub fn coords(&self) -> [i64; 3] {
        self.0
    }

    pub fn rational(&self) -> [Rational; 3] {
        [int(self.0[0]), int(self.0[1]), int(self.0[2])]
    }

    /// Cross product: the line through two points, or the point on two lines.
    pub fn cross(&self, other: &PointP2) -> Option<PointP2> {
        let a = self.0.map(i128::from);
        let b = other.0.map(i128::from);
        let c = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        PointP2::from_big(c.map(BigInt::from)).ok()
    }

    pub fn dot(&self, other: &PointP2) -> i128 {
        (0..3).map(|i| self.0[i] as i128 * other.0[i] as i128).sum()
    }

    pub fn parse(s: &str) -> Result<PointP2> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [a:b:c], got '{s}'")))?;
        let parts: Vec<&str> = inner.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected three coordinates in '{s}'")));
        }
        let c = [
            parse_rational(parts[0])?,
            parse_rational(parts[1])?,
            parse_rational(parts[2])?,
        ];
        PointP2::from_rational(&c).map_err(|e| match e {
            Error::Precondition(m) => Error::Parse(m),
            other => other,
        })
    }
}

impl fmt::Display for PointP2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.0[0], self.0[1], self.0[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_is_canonical() {
        let p = PointP2::new([-2, 4, 0]).unwrap();
        assert_eq!(p.coords(), [1, -2, 0]);
        assert_eq!(PointP2::new([0, -3, 6]).unwrap(), PointP2::new([0, 1, -2]).unwrap());
        assert_eq!(PointP2::parse("[1/2:1:0]").unwrap().coords(), [1, 2, 0]);
        assert!(PointP2::new([0, 0, 0]).is_err());
        assert!(PointP2::parse("[1:2]").is_err());
    }
}
