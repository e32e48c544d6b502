use std::fmt;
use std::str::FromStr;

use crate::exactalg::{ratio, Rational};
use crate::{Error, Result};

/// A divisor class `aL + Σ b_i E_i` on the blow-up of P² at six points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PicClass {
    pub a: i64,
    pub b: [i64; 6],
}

impl PicClass {
    pub const fn new(a: i64, b: [i64; 6]) -> PicClass {
        PicClass { a, b }
    }

    pub const fn line() -> PicClass {
        PicClass::new(1, [0; 6])
    }

    /// `E_i`, with `i` counted from 1.
    pub fn exceptional(i: usize) -> PicClass {
        assert!((1..=6).contains(&i), "exceptional index out of range");
        let mut b = [0; 6];
        b[i - 1] = 1;
        PicClass::new(0, b)
    }

    /// `K_S = −3L + ΣE_i`.
    pub const fn canonical() -> PicClass {
        PicClass::new(-3, [1; 6])
    }

    /// `H = −K_S = 3L − ΣE_i`.
    pub const fn hyperplane() -> PicClass {
        PicClass::new(3, [-1; 6])
    }

    pub fn add(&self, o: &PicClass) -> PicClass {
        let mut b = self.b;
        for (x, y) in b.iter_mut().zip(o.b) {
            *x += y;
        }
        PicClass::new(self.a + o.a, b)
    }

    pub fn scale(&self, k: i64) -> PicClass {
        PicClass::new(self.a * k, self.b.map(|x| x * k))
    }

    pub fn neg(&self) -> PicClass {
        self.scale(-1)
    }

    pub fn sub(&self, o: &PicClass) -> PicClass {
        self.add(&o.neg())
    }

    pub fn self_intersection(&self) -> i64 {
        intersect(self, self)
    }

    /// `−K·C`, the degree in the anticanonical embedding.
    pub fn degree(&self) -> i64 {
        intersect(&PicClass::hyperplane(), self)
    }

    /// `(a; b1,…,b6)`.
    pub fn compact(&self) -> String {
        let b: Vec<String> = self.b.iter().map(|x| x.to_string()).collect();
        format!("({};{})", self.a, b.join(","))
    }
}

/// `a·a′ − Σ b_i b′_i`.
pub fn intersect(c: &PicClass, d: &PicClass) -> i64 {
    c.a * d.a - c.b.iter().zip(d.b).map(|(x, y)| x * y).sum::<i64>()
}

/// Arithmetic genus `(C² + C·K)/2 + 1`.
pub fn genus(c: &PicClass) -> Result<i64> {
    let s = c.self_intersection() + intersect(c, &PicClass::canonical());
    if s % 2 != 0 {
        return Err(Error::Verification(format!("odd adjunction numerator for {c}")));
    }
    Ok(s / 2 + 1)
}

/// Slope `(K_S + D)·H / 2` of `Ω¹_S(log D)`.
pub fn slope_log(d: &PicClass, h: &PicClass) -> Rational {
    ratio(intersect(&PicClass::canonical().add(d), h), 2)
}

/// The 27 lines: `E_i`, then `L − E_i − E_j` (i < j), then
/// `2L + E_i − ΣE_k`.
pub fn lines27() -> Vec<PicClass> {
    let mut out: Vec<PicClass> = (1..=6).map(PicClass::exceptional).collect();
    for i in 1..=6 {
        for j in i + 1..=6 {
            out.push(PicClass::line().sub(&PicClass::exceptional(i)).sub(&PicClass::exceptional(j)));
        }
    }
    for i in 1..=6 {
        out.push(hat_line(i));
    }
    out
}

/// `L̂_i = 2L + E_i − ΣE_k`.
pub fn hat_line(i: usize) -> PicClass {
    let mut b = [-1; 6];
    b[i - 1] = 0;
    PicClass::new(2, b)
}

/// The quadratic transformation centred at `p1, p2, p3`, written as the
/// change of basis `L̃ = 2L − E1 − E2 − E3`, `Ẽ1 = L − E2 − E3`,
/// `Ẽ2 = L − E1 − E3`, `Ẽ3 = L − E1 − E2`, `Ẽ_i = E_i` for `i ≥ 4`.
/// A class with coordinates `(a; b)` in the new basis is returned in the
/// old one.
pub fn cremona(c: &PicClass) -> PicClass {
    let e = PicClass::exceptional;
    let images = [
        PicClass::line().sub(&e(2)).sub(&e(3)),
        PicClass::line().sub(&e(1)).sub(&e(3)),
        PicClass::line().sub(&e(1)).sub(&e(2)),
        e(4),
        e(5),
        e(6),
    ];
    let l = PicClass::line().scale(2).sub(&e(1)).sub(&e(2)).sub(&e(3));
    let mut out = l.scale(c.a);
    for (bi, img) in c.b.iter().zip(images) {
        out = out.add(&img.scale(*bi));
    }
    out
}

impl fmt::Display for PicClass {
    /// `aL + b1 E1 + … + b6 E6`, all seven terms written.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}L", self.a)?;
        for (i, b) in self.b.iter().enumerate() {
            if *b < 0 {
                write!(f, " - {} E{}", -b, i + 1)?;
            } else {
                write!(f, " + {} E{}", b, i + 1)?;
            }
        }
        Ok(())
    }
}

impl FromStr for PicClass {
    type Err = Error;

    /// Accepts `(a;b1,…,b6)` or a sum of terms `kL`, `kEi` such as
    /// `2L - E1 - E2`.
    fn from_str(s: &str) -> Result<PicClass> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
            let (a, rest) = inner
                .split_once(';')
                .ok_or_else(|| Error::Parse(format!("expected '(a;b1,..,b6)', got '{s}'")))?;
            let a = parse_int(a)?;
            let bs: Vec<i64> = rest.split(',').map(parse_int).collect::<Result<_>>()?;
            if bs.len() > 6 {
                return Err(Error::Parse(format!("at most six exceptional coefficients, got {}", bs.len())));
            }
            let mut b = [0; 6];
            b[..bs.len()].copy_from_slice(&bs);
            return Ok(PicClass::new(a, b));
        }
        let compact: String = t.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty class".into()));
        }
        let mut out = PicClass::new(0, [0; 6]);
        let mut pieces = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);
        for p in pieces {
            let (sign, body) = match p.strip_prefix('-') {
                Some(r) => (-1, r),
                None => (1, p.strip_prefix('+').unwrap_or(p)),
            };
            let pos = body
                .find(['L', 'E'])
                .ok_or_else(|| Error::Parse(format!("term '{p}' names neither L nor E_i")))?;
            let coef = match body[..pos].trim_end_matches('*') {
                "" => 1,
                c => parse_int(c)?,
            } * sign;
            let sym = &body[pos..];
            if sym == "L" {
                out.a += coef;
            } else {
                let i: usize = sym[1..].parse().map_err(|_| Error::Parse(format!("bad exceptional index in '{p}'")))?;
                if !(1..=6).contains(&i) {
                    return Err(Error::Parse(format!("exceptional index {i} out of range 1..6")));
                }
                out.b[i - 1] += coef;
            }
        }
        Ok(out)
    }
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("'{}' is not an integer", s.trim())))
}

/// `π_*` and `R¹π_*` of a line bundle on the blow-up at `k` points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushforward {
    pub twist: i64,
    /// `(i, m)` for each factor `I_{p_i}^m`, from `b_i < 0`.
    pub ideal_powers: Vec<(usize, i64)>,
    /// `(i, m)` for each summand `O/I_{p_i}^m` of `R¹π_*`, from `b_i > 2`.
    pub r1: Vec<(usize, i64)>,
}

impl fmt::Display for Pushforward {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pi_* = O({})", self.twist)?;
        for (i, m) in &self.ideal_powers {
            write!(f, " (x) I_p{i}^{m}")?;
        }
        f.write_str("; R1 = ")?;
        if self.r1.is_empty() {
            f.write_str("0")
        } else {
            let parts: Vec<String> = self.r1.iter().map(|(i, m)| format!("O/I_p{i}^{m}")).collect();
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Pushforward rules. The `R¹` part is the rule `O/I^{b_i−2}` for
/// `b_i > 2` taken literally; counting lengths with formal functions gives
/// `O/I^{b_i−1}` for `b_i ≥ 2` instead (see the README).
pub fn pushforward_blowup(c: &PicClass, k: usize) -> Result<Pushforward> {
    if k > 6 {
        return Err(Error::Precondition(format!("at most six blown-up points, got {k}")));
    }
    if let Some(i) = (k..6).find(|&i| c.b[i] != 0) {
        return Err(Error::Precondition(format!("E{} is not among the {k} blown-up points", i + 1)));
    }
    let ideal_powers = (0..k).filter(|&i| c.b[i] < 0).map(|i| (i + 1, -c.b[i])).collect();
    let r1 = (0..k).filter(|&i| c.b[i] > 2).map(|i| (i + 1, c.b[i] - 2)).collect();
    Ok(Pushforward { twist: c.a, ideal_powers, r1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let c: PicClass = "2L - E1 - E2".parse().unwrap();
        assert_eq!(c, PicClass::new(2, [-1, -1, 0, 0, 0, 0]));
        assert_eq!("(2;0,0,0,0,0,0)".parse::<PicClass>().unwrap(), PicClass::line().scale(2));
        assert_eq!(c.to_string().parse::<PicClass>().unwrap(), c);
        assert!("3X".parse::<PicClass>().is_err());
        assert!("E7".parse::<PicClass>().is_err());
    }

    #[test]
    fn small_values() {
        assert_eq!(intersect(&PicClass::line(), &PicClass::line()), 1);
        assert_eq!(PicClass::hyperplane().self_intersection(), 3);
        assert_eq!(genus(&PicClass::line().scale(3)).unwrap(), 1);
        assert_eq!(slope_log(&PicClass::line().scale(2), &PicClass::hyperplane()), ratio(3, 2));
    }
}
