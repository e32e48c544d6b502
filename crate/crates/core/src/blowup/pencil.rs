use std::fmt;

use crate::exactalg::{int, MatrixQ, PointP2, Rational};
use crate::p1split::LineP2;
use crate::planelog::combinations;
use crate::{Error, Result};

use super::lattice::PicClass;

/// Outcome of the general-position check for six points, with a witness
/// when it fails. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Position {
    General,
    Coincident(usize, usize),
    Collinear(usize, usize, usize),
    OnConic,
}

impl Position {
    pub fn is_general(&self) -> bool {
        *self == Position::General
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Position::General => f.write_str("general position"),
            Position::Coincident(i, j) => write!(f, "p{i} = p{j}"),
            Position::Collinear(i, j, k) => write!(f, "p{i}, p{j}, p{k} are collinear"),
            Position::OnConic => f.write_str("all six points lie on a conic"),
        }
    }
}

fn six(z: &[PointP2]) -> Result<()> {
    if z.len() != 6 {
        return Err(Error::Precondition(format!("expected six points, got {}", z.len())));
    }
    Ok(())
}

/// Distinct, no three on a line, not all six on a conic; checked in that
/// order with exact determinants.
pub fn general_position(z: &[PointP2]) -> Result<Position> {
    six(z)?;
    for c in combinations(6, 2) {
        if z[c[0]] == z[c[1]] {
            return Ok(Position::Coincident(c[0] + 1, c[1] + 1));
        }
    }
    for c in combinations(6, 3) {
        let m = MatrixQ::from_rows(c.iter().map(|&i| z[i].rational().to_vec()).collect());
        if m.det() == int(0) {
            return Ok(Position::Collinear(c[0] + 1, c[1] + 1, c[2] + 1));
        }
    }
    let veronese = |p: &PointP2| -> Vec<Rational> {
        let [x, y, w] = p.coords();
        [x * x, y * y, w * w, x * y, x * w, y * w].map(int).to_vec()
    };
    if MatrixQ::from_rows(z.iter().map(veronese).collect()).det() == int(0) {
        return Ok(Position::OnConic);
    }
    Ok(Position::General)
}

/// The image on the cubic surface of the strict transform of a line of P².
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PencilMember {
    /// The line misses `Z`: class `L`, a twisted cubic.
    TwistedCubic,
    /// The line passes through `p_i`: `(L − E_i) + E_i`, a conic plus a line.
    ConicPlusLine(usize),
    /// The line passes through `p_i, p_j`: `(L − E_i − E_j) + E_i + E_j`.
    ThreeLines(usize, usize),
}

impl PencilMember {
    /// The components' classes.
    pub fn components(&self) -> Vec<PicClass> {
        let e = PicClass::exceptional;
        match *self {
            PencilMember::TwistedCubic => vec![PicClass::line()],
            PencilMember::ConicPlusLine(i) => vec![PicClass::line().sub(&e(i)), e(i)],
            PencilMember::ThreeLines(i, j) => vec![PicClass::line().sub(&e(i)).sub(&e(j)), e(i), e(j)],
        }
    }
}

impl fmt::Display for PencilMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PencilMember::TwistedCubic => f.write_str("twisted cubic"),
            PencilMember::ConicPlusLine(i) => write!(f, "conic + line E{i}"),
            PencilMember::ThreeLines(i, j) => write!(f, "three lines L-E{i}-E{j}, E{i}, E{j}"),
        }
    }
}

pub fn classify_pencil_member(l: &LineP2, z: &[PointP2]) -> Result<PencilMember> {
    let pos = general_position(z)?;
    if !pos.is_general() {
        return Err(Error::Precondition(format!("points not in general position: {pos}")));
    }
    let on: Vec<usize> = (0..6).filter(|&i| l.dual().dot(&z[i]) == 0).map(|i| i + 1).collect();
    match on[..] {
        [] => Ok(PencilMember::TwistedCubic),
        [i] => Ok(PencilMember::ConicPlusLine(i)),
        [i, j] => Ok(PencilMember::ThreeLines(i, j)),
        _ => Err(Error::Verification(format!("line {l} contains three of the points"))),
    }
}
