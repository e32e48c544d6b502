use std::fmt;
use std::str::FromStr;

use crate::planelog::{key_restriction_degrees, KeyRestriction};
use crate::{Error, Result};

use super::lattice::{genus, hat_line, intersect, PicClass};

/// Splitting data of `T_S(−log D)|_C` on a rational curve `C` meeting `D`
/// in `k ≥ 1` distinct points: sub-bundle `T_C(−log B)` of degree `2 − k`,
/// quotient of degree `(−K_S − D)·C − 2 + k`.
pub fn key_splitting_on_s(d: &PicClass, c: &PicClass, k: i64) -> Result<KeyRestriction> {
    let g = genus(c)?;
    if g != 0 {
        return Err(Error::Precondition(format!("{} has arithmetic genus {g}, not 0", c.compact())));
    }
    let c1 = intersect(&PicClass::hyperplane().sub(d), c);
    key_restriction_degrees(c1, k)
}

/// `Ω¹_S|_C` for a smooth rational curve, from the conormal sequence:
/// degrees `(−2, −C²)`, returned sorted. The sequence splits when
/// `−C² ≥ −3`.
pub fn omega_s_restriction(c: &PicClass) -> Result<(i64, i64)> {
    let g = genus(c)?;
    if g != 0 {
        return Err(Error::Precondition(format!("{} has arithmetic genus {g}, not 0", c.compact())));
    }
    let n = -c.self_intersection();
    Ok((n.min(-2), n.max(-2)))
}

/// Largest degree of a line sub-bundle of `Ω¹_S(log D)|_C` when `C` meets
/// `D` in `k` points (`k = 0`: `C` misses `D`).
fn omega_log_bound(d: &PicClass, c: &PicClass, k: i64) -> Result<i64> {
    if k == 0 {
        return Ok(omega_s_restriction(c)?.1);
    }
    let kr = key_splitting_on_s(d, c, k)?;
    Ok((-kr.sub).max(-kr.quotient))
}

/// Standard curve families on the cubic surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `|L|`
    Line,
    /// `E_i`
    Exceptional(usize),
    /// `|L − E_i|`
    LineThrough(usize),
    /// `L − E_i − E_j`
    Secant(usize, usize),
    /// `|2L − E_i − E_j − E_k − E_l|`
    Conic([usize; 4]),
    /// `L̂_i = 2L + E_i − ΣE_j`
    HatLine(usize),
}

impl Family {
    pub fn class(&self) -> PicClass {
        let e = PicClass::exceptional;
        match *self {
            Family::Line => PicClass::line(),
            Family::Exceptional(i) => e(i),
            Family::LineThrough(i) => PicClass::line().sub(&e(i)),
            Family::Secant(i, j) => PicClass::line().sub(&e(i)).sub(&e(j)),
            Family::Conic(idx) => idx.iter().fold(PicClass::line().scale(2), |acc, &i| acc.sub(&e(i))),
            Family::HatLine(i) => hat_line(i),
        }
    }

    pub fn tag(&self) -> String {
        match *self {
            Family::Line => "L".into(),
            Family::Exceptional(i) => format!("E{i}"),
            Family::LineThrough(i) => format!("L-E{i}"),
            Family::Secant(i, j) => format!("L-E{i}-E{j}"),
            Family::Conic([i, j, k, l]) => format!("2L-E{i}-E{j}-E{k}-E{l}"),
            Family::HatLine(i) => format!("Lhat{i}"),
        }
    }

    fn table1() -> Vec<Family> {
        let mut out = vec![Family::Line];
        out.extend((1..=6).map(Family::Exceptional));
        out.extend((1..=6).map(Family::LineThrough));
        for i in 1..=6 {
            for j in i + 1..=6 {
                out.push(Family::Secant(i, j));
            }
        }
        out
    }

    /// `L, E_i, L − E_i, L − E_i − E_j, 2L − ΣE_I (|I| = 4), L̂_i`.
    pub fn standard() -> Vec<Family> {
        let mut out = Family::table1();
        for i in 1..=6 {
            for j in i + 1..=6 {
                for k in j + 1..=6 {
                    for l in k + 1..=6 {
                        out.push(Family::Conic([i, j, k, l]));
                    }
                }
            }
        }
        out.extend((1..=6).map(Family::HatLine));
        out
    }
}

/// Which tangencies the curves of each family may have with `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scenario {
    /// Every curve meets `D` transversally: `k = D·C`.
    Generic,
    /// As `Generic`, except that the lines `L − E_i − E_j` may be tangent
    /// (`k ≥ 1`). Families `L, E_i, L − E_i, L − E_i − E_j` only.
    TangentLines,
    /// `TangentLines` plus every `L̂_i` meeting `D` in at least three points.
    CaseA,
    /// `TangentLines` plus `L̂_i` meeting `D` in exactly two points and
    /// every other `L̂_j` in at least two.
    CaseB(usize),
    /// `TangentLines` plus `L̂_i` meeting `D` in a single point. Every
    /// `L̂_j` is then only known to meet `D` somewhere, so the index labels
    /// the configuration without changing the rows.
    QuadTangent(usize),
}

impl Scenario {
    /// Allowed support counts `[lo, hi]` for `C`, given `D·C`.
    fn support(&self, f: &Family, dc: i64) -> (i64, i64) {
        let any = (1.min(dc), dc);
        match (self, f) {
            (Scenario::Generic, _) => (dc, dc),
            (_, Family::Secant(..)) => any,
            (Scenario::TangentLines, _) => (dc, dc),
            (Scenario::CaseA, Family::HatLine(_)) => (3.min(dc), dc),
            (Scenario::CaseB(i), Family::HatLine(j)) if i == j => (2.min(dc), 2.min(dc)),
            (Scenario::CaseB(_), Family::HatLine(_)) => (2.min(dc), dc),
            (Scenario::QuadTangent(_), Family::HatLine(_)) => any,
            _ => (dc, dc),
        }
    }

    fn families(&self, d: &PicClass) -> Vec<Family> {
        match self {
            Scenario::Generic => {
                // The members of |D| itself are left out when D is the class
                // of a line: that row excludes O_S outright, which the
                // stability argument handles separately by pushing forward.
                let mut f = Family::standard();
                if *d == PicClass::line() {
                    f.retain(|x| *x != Family::Line);
                }
                f
            }
            Scenario::TangentLines => Family::table1(),
            _ => {
                let mut f = Family::table1();
                f.extend((1..=6).map(Family::HatLine));
                f
            }
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scenario::Generic => f.write_str("generic"),
            Scenario::TangentLines => f.write_str("tangent-lines"),
            Scenario::CaseA => f.write_str("case-a"),
            Scenario::CaseB(i) => write!(f, "case-b:{i}"),
            Scenario::QuadTangent(i) => write!(f, "quad-tangent:{i}"),
        }
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scenario> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let index = || -> Result<usize> {
            let a = arg.ok_or_else(|| Error::Parse(format!("scenario '{name}' needs an index, e.g. '{name}:6'")))?;
            let i: usize = a.parse().map_err(|_| Error::Parse(format!("bad scenario index '{a}'")))?;
            if !(1..=6).contains(&i) {
                return Err(Error::Parse(format!("scenario index {i} out of range 1..6")));
            }
            Ok(i)
        };
        let no_arg = |sc: Scenario| -> Result<Scenario> {
            match arg {
                None => Ok(sc),
                Some(_) => Err(Error::Parse(format!("scenario '{name}' takes no index"))),
            }
        };
        match name {
            "generic" => no_arg(Scenario::Generic),
            "tangent-lines" => no_arg(Scenario::TangentLines),
            "case-a" => no_arg(Scenario::CaseA),
            "case-b" => Ok(Scenario::CaseB(index()?)),
            "quad-tangent" => Ok(Scenario::QuadTangent(index()?)),
            _ => Err(Error::Parse(format!("unknown scenario '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    pub fn holds(&self, lhs: i64, rhs: i64) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }
}

/// The linear condition `x·curve  rel  bound` on a candidate class `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintRow {
    pub curve: PicClass,
    pub relation: Relation,
    pub bound: i64,
    pub provenance: String,
}

impl ConstraintRow {
    pub fn satisfied_by(&self, x: &PicClass) -> bool {
        self.relation.holds(intersect(x, &self.curve), self.bound)
    }

    /// The row as an inequality in `a, b1..b6`, e.g. `a+b1+b2 <= 2`.
    pub fn inequality(&self) -> String {
        let mut terms = Vec::new();
        let push = |terms: &mut Vec<String>, coef: i64, name: String| match coef {
            0 => {}
            1 => terms.push(format!("+{name}")),
            -1 => terms.push(format!("-{name}")),
            c if c > 0 => terms.push(format!("+{c}{name}")),
            c => terms.push(format!("{c}{name}")),
        };
        push(&mut terms, self.curve.a, "a".into());
        for (i, b) in self.curve.b.iter().enumerate() {
            push(&mut terms, -b, format!("b{}", i + 1));
        }
        let mut s = terms.concat();
        if s.is_empty() {
            s = "0".into();
        }
        let s = s.strip_prefix('+').unwrap_or(&s).to_string();
        format!("{s} {} {}", self.relation.symbol(), self.bound)
    }
}

impl fmt::Display for ConstraintRow {
    /// Constraint-file line: `class <= bound # provenance`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} # {}", self.curve.compact(), self.relation.symbol(), self.bound, self.provenance)
    }
}

impl FromStr for ConstraintRow {
    type Err = Error;

    fn from_str(line: &str) -> Result<ConstraintRow> {
        let (body, provenance) = match line.split_once('#') {
            Some((b, p)) => (b, p.trim().to_string()),
            None => (line, String::new()),
        };
        for (sym, rel) in [("<=", Relation::Le), (">=", Relation::Ge), ("=", Relation::Eq)] {
            if let Some((c, b)) = body.split_once(sym) {
                let curve: PicClass = c.trim().parse()?;
                let bound = b
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad bound '{}'", b.trim())))?;
                return Ok(ConstraintRow { curve, relation: rel, bound, provenance });
            }
        }
        Err(Error::Parse(format!("constraint row '{line}' has no relation")))
    }
}

/// Parses a constraint file, skipping blank lines and full-line comments.
pub fn parse_constraints(text: &str) -> Result<Vec<ConstraintRow>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse)
        .collect()
}

/// Rows `x·C ≤ max degree of a line sub-bundle of Ω¹_S(log D)|_C` over the
/// scenario's families, taking the worst case over the allowed support
/// counts. Curves that are components of `D` are skipped.
pub fn restriction_table(d: &PicClass, scenario: Scenario) -> Result<Vec<ConstraintRow>> {
    let mut rows = Vec::new();
    for fam in scenario.families(d) {
        let c = fam.class();
        let dc = intersect(d, &c);
        if dc < 0 {
            continue;
        }
        let (lo, hi) = scenario.support(&fam, dc);
        let mut bound = i64::MIN;
        for k in lo..=hi {
            bound = bound.max(omega_log_bound(d, &c, k)?);
        }
        let support = if lo == hi { format!("k={lo}") } else { format!("k={lo}..{hi}") };
        rows.push(ConstraintRow {
            curve: c,
            relation: Relation::Le,
            bound,
            provenance: format!("{} {support} [{scenario}]", fam.tag()),
        });
    }
    Ok(rows)
}
