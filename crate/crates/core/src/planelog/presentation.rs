use std::fmt;

use crate::exactalg::{graded_map_matrix, parse_form_of_degree, ratio, Form, MatrixQ, PointP2, Rational, SyzygyBasis};
use crate::p1split::{coker_profile, kernel_splitting, restrict_form, BinaryForm, GradedMatrixP1, LineP2, SplittingType};
use crate::{Error, Result};

/// Whether the sheaf is the cokernel or the kernel of the matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Cokernel,
    Kernel,
}

/// First and second Chern numbers on P².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChernPair {
    pub c1: i64,
    pub c2: i64,
}

impl ChernPair {
    pub fn new(c1: i64, c2: i64) -> ChernPair {
        ChernPair { c1, c2 }
    }

    /// Chern numbers of `F(k)` for `F` of rank `r`.
    pub fn twist(&self, rank: i64, k: i64) -> ChernPair {
        ChernPair {
            c1: self.c1 + rank * k,
            c2: self.c2 + (rank - 1) * self.c1 * k + rank * (rank - 1) / 2 * k * k,
        }
    }
}

impl fmt::Display for ChernPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c1, self.c2)
    }
}

/// Euler characteristic of `F(t)` on P² by Riemann–Roch.
pub fn euler_characteristic(rank: i64, c: ChernPair, t: i64) -> Rational {
    let r = Rational::from_integer(rank.into());
    let c1 = Rational::from_integer(c.c1.into());
    let c2 = Rational::from_integer(c.c2.into());
    let t = Rational::from_integer(t.into());
    let ch1 = &c1 + &r * &t;
    let ch2 = (&c1 * &c1 - Rational::from_integer(2.into()) * &c2) * ratio(1, 2) + &c1 * &t + &r * &t * &t * ratio(1, 2);
    ch2 + ratio(3, 2) * ch1 + r
}

/// A matrix of forms `⊕O(−a_j) → ⊕O(−b_i)` presenting a sheaf as its
/// cokernel or kernel, twisted afterwards by `sheaf_twist`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPresentation {
    pub entries: Vec<Vec<Form>>,
    pub source: Vec<i64>,
    pub target: Vec<i64>,
    pub role: Role,
    pub sheaf_twist: i64,
    pub rank: usize,
    pub chern: ChernPair,
    /// Kernel generators, when they were computed.
    pub syzygies: Option<SyzygyBasis>,
}

impl GradedPresentation {
    pub fn new(
        entries: Vec<Vec<Form>>,
        source: Vec<i64>,
        target: Vec<i64>,
        role: Role,
        sheaf_twist: i64,
        rank: usize,
        chern: ChernPair,
    ) -> Result<GradedPresentation> {
        // Validates shapes and entry degrees.
        graded_map_matrix(&entries, &source, &target, 0)?;
        Ok(GradedPresentation { entries, source, target, role, sheaf_twist, rank, chern, syzygies: None })
    }

    pub fn c1(&self) -> i64 {
        self.chern.c1
    }

    pub fn c2(&self) -> i64 {
        self.chern.c2
    }

    pub fn twisted(&self, k: i64) -> GradedPresentation {
        let mut out = self.clone();
        out.sheaf_twist += k;
        out.chern = self.chern.twist(self.rank as i64, k);
        out
    }

    /// Twist of a rank-2 sheaf with `c1 ∈ {−1, 0}`.
    pub fn normalized(&self) -> GradedPresentation {
        if self.rank != 2 {
            return self.clone();
        }
        self.twisted(-self.chern.c1.div_euclid(2) - self.chern.c1.rem_euclid(2))
    }

    /// Chern numbers implied by the twists alone: `c(B)/c(A)` for a
    /// cokernel of `A → B`, `c(A)/c(B)` for a kernel of a surjection.
    pub fn whitney_chern(&self) -> ChernPair {
        let chern_of = |tw: &[i64]| {
            let c1: i64 = tw.iter().map(|b| -b).sum();
            let mut c2 = 0;
            for i in 0..tw.len() {
                for j in i + 1..tw.len() {
                    c2 += tw[i] * tw[j];
                }
            }
            (c1, c2)
        };
        let (num, den) = match self.role {
            Role::Cokernel => (chern_of(&self.target), chern_of(&self.source)),
            Role::Kernel => (chern_of(&self.source), chern_of(&self.target)),
        };
        let c1 = num.0 - den.0;
        let c2 = num.1 - num.0 * den.0 + den.0 * den.0 - den.1;
        let rank = match self.role {
            Role::Cokernel => self.target.len() as i64 - self.source.len() as i64,
            Role::Kernel => self.source.len() as i64 - self.target.len() as i64,
        };
        ChernPair::new(c1, c2).twist(rank, self.sheaf_twist)
    }

    /// Degree-`t` piece of the underlying map.
    pub fn degree_matrix(&self, t: i64) -> MatrixQ {
        graded_map_matrix(&self.entries, &self.source, &self.target, t).expect("validated at construction")
    }

    /// Dimension of the degree-`t` piece of the presented module, twisted.
    pub fn hilbert(&self, t: i64) -> i64 {
        let m = self.degree_matrix(t + self.sheaf_twist);
        let rank = m.rank();
        match self.role {
            Role::Cokernel => (m.rows() - rank) as i64,
            Role::Kernel => (m.cols() - rank) as i64,
        }
    }

    pub fn euler_characteristic(&self, t: i64) -> Rational {
        euler_characteristic(self.rank as i64, self.chern, t)
    }

    pub fn eval_at(&self, p: &PointP2) -> MatrixQ {
        let x = p.rational();
        MatrixQ::from_rows(self.entries.iter().map(|row| row.iter().map(|e| e.eval(&x)).collect()).collect())
    }

    /// Rank of the matrix at a point.
    pub fn rank_at(&self, p: &PointP2) -> usize {
        self.eval_at(p).rank()
    }

    pub fn restrict(&self, line: &LineP2) -> GradedMatrixP1 {
        let entries: Vec<Vec<BinaryForm>> = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, e)| {
                        if e.is_zero() {
                            BinaryForm::zero((self.source[j] - self.target[i]).max(0) as u32)
                        } else {
                            restrict_form(e, line)
                        }
                    })
                    .collect()
            })
            .collect();
        GradedMatrixP1::new(entries, self.source.clone(), self.target.clone()).expect("degrees preserved")
    }

    /// Splitting type of the sheaf restricted to `line`.
    ///
    /// For the kernel role this is the kernel of the restricted matrix, which
    /// agrees with the restricted sheaf whenever the matrix is surjective at
    /// every point of the line (smooth curves, or lines missing the singular
    /// points of an arrangement).
    pub fn restricted_splitting(&self, line: &LineP2, window: Option<(i64, i64)>) -> Result<SplittingType> {
        let m = self.restrict(line);
        let s = match self.role {
            Role::Cokernel => coker_profile(&m, window)?,
            Role::Kernel => kernel_splitting(&m),
        };
        Ok(s.twist(self.sheaf_twist))
    }

    /// Text format: a header line, then one row of forms per line.
    pub fn to_text(&self) -> String {
        let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let role = match self.role {
            Role::Cokernel => "coker",
            Role::Kernel => "kernel",
        };
        let mut s = format!(
            "{role} source={} target={} twist={} rank={} c1={} c2={}\n",
            join(&self.source),
            join(&self.target),
            self.sheaf_twist,
            self.rank,
            self.chern.c1,
            self.chern.c2
        );
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            s.push_str(&cells.join(", "));
            s.push('\n');
        }
        s
    }

    /// Parses [`GradedPresentation::to_text`] output. Lines starting with
    /// `#` are ignored.
    pub fn from_text(text: &str) -> Result<GradedPresentation> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty presentation".into()))?;
        let mut words = header.split_whitespace();
        let role = match words.next() {
            Some("coker") => Role::Cokernel,
            Some("kernel") => Role::Kernel,
            other => return Err(Error::Parse(format!("unknown presentation role {other:?}"))),
        };
        let mut source = None;
        let mut target = None;
        let (mut twist, mut rank, mut c1, mut c2) = (0i64, None, None, None);
        for w in words {
            let (k, v) = w.split_once('=').ok_or_else(|| Error::Parse(format!("bad header field '{w}'")))?;
            let int = |v: &str| v.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer '{v}'")));
            let list = |v: &str| -> Result<Vec<i64>> { v.split(',').filter(|x| !x.is_empty()).map(int).collect() };
            match k {
                "source" => source = Some(list(v)?),
                "target" => target = Some(list(v)?),
                "twist" => twist = int(v)?,
                "rank" => rank = Some(int(v)? as usize),
                "c1" => c1 = Some(int(v)?),
                "c2" => c2 = Some(int(v)?),
                _ => return Err(Error::Parse(format!("unknown header field '{k}'"))),
            }
        }
        let missing = |f: &str| Error::Parse(format!("header lacks {f}"));
        let source = source.ok_or_else(|| missing("source"))?;
        let target = target.ok_or_else(|| missing("target"))?;
        let mut entries = Vec::new();
        for (i, line) in lines.enumerate() {
            let b = *target.get(i).ok_or_else(|| Error::Parse("more rows than target twists".into()))?;
            let cells: Vec<&str> = line.split(',').map(str::trim).collect();
            if cells.len() != source.len() {
                return Err(Error::Parse(format!("row {i} has {} entries, expected {}", cells.len(), source.len())));
            }
            let mut row = Vec::new();
            for (j, c) in cells.iter().enumerate() {
                let deg = source[j] - b;
                let f = if deg < 0 {
                    if *c != "0" {
                        return Err(Error::Parse(format!("entry ({i},{j}) must be 0")));
                    }
                    Form::zero(0)
                } else {
                    parse_form_of_degree(c, deg as u32)?
                };
                row.push(f);
            }
            entries.push(row);
        }
        if entries.len() != target.len() {
            return Err(Error::Parse(format!("{} rows for {} target twists", entries.len(), target.len())));
        }
        GradedPresentation::new(
            entries,
            source,
            target,
            role,
            twist,
            rank.ok_or_else(|| missing("rank"))?,
            ChernPair::new(c1.ok_or_else(|| missing("c1"))?, c2.ok_or_else(|| missing("c2"))?),
        )
        .map_err(|e| match e {
            Error::Precondition(m) => Error::Parse(m),
            other => other,
        })
    }

    /// Checks the Hilbert function against Riemann–Roch in `count`
    /// consecutive degrees starting at `from`.
    pub fn check_hilbert_polynomial(&self, from: i64, count: i64) -> Result<()> {
        for t in from..from + count {
            let h = Rational::from_integer(self.hilbert(t).into());
            let chi = self.euler_characteristic(t);
            if h != chi {
                return Err(Error::Verification(format!(
                    "Hilbert function {h} differs from Euler characteristic {chi} in degree {t}"
                )));
            }
        }
        Ok(())
    }

    /// Degree past which the Hilbert function is polynomial for these
    /// twists; a generous bound used for metadata checks.
    pub fn stable_degree(&self) -> i64 {
        let hi = self.source.iter().chain(&self.target).copied().max().unwrap_or(0);
        hi + self.source.len() as i64 + 2 - self.sheaf_twist
    }

    /// (rows, columns) of the matrix.
    pub fn shape(&self) -> (usize, usize) {
        (self.target.len(), self.source.len())
    }
}
