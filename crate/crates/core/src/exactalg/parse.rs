use num_traits::One;

use super::form::{Form, VARS_X};
use super::rational::{parse_rational, Rational};
use crate::{Error, Result};

/// Parses a homogeneous polynomial in x0, x1, x2.
///
/// Grammar: terms joined by `+`/`-`; a term is an optional coefficient
/// (`p` or `p/q`) followed by `*`-separated factors `xi` or `xi^n`. A bare
/// `0` parses as the zero form of degree 0; use [`parse_form_of_degree`] to
/// pin the degree.
pub fn parse_form(text: &str) -> Result<Form> {
    parse_form_vars(text, &VARS_X, None)
}

pub fn parse_form_of_degree(text: &str, degree: u32) -> Result<Form> {
    parse_form_vars(text, &VARS_X, Some(degree))
}

pub fn parse_form_vars(text: &str, names: &[&str; 3], degree: Option<u32>) -> Result<Form> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms: Vec<([u32; 3], Rational)> = Vec::new();
    for (sign, body) in split_terms(&compact)? {
        let (e, mut c) = parse_term(body, names)?;
        if sign {
            c = -c;
        }
        terms.push((e, c));
    }
    let mut deg: Option<u32> = degree;
    for (e, c) in &terms {
        if num_traits::Zero::is_zero(c) {
            continue;
        }
        let d = e[0] + e[1] + e[2];
        match deg {
            None => deg = Some(d),
            Some(d0) if d0 != d => {
                return Err(Error::Parse(format!(
                    "non-homogeneous polynomial '{text}': degrees {d0} and {d}"
                )))
            }
            _ => {}
        }
    }
    let degree = deg.unwrap_or(0);
    let mut f = Form::zero(degree);
    for (e, c) in terms {
        if !num_traits::Zero::is_zero(&c) {
            f.add_term(e, c);
        }
    }
    Ok(f)
}

/// Splits on top-level `+`/`-`, returning (negated, term body) pairs.
fn split_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    let mut neg = false;
    let mut i = 0;
    if let Some(&b) = bytes.first() {
        if b == b'+' || b == b'-' {
            neg = b == b'-';
            start = 1;
            i = 1;
        }
    }
    while i < bytes.len() {
        let b = bytes[i];
        if (b == b'+' || b == b'-') && i > start {
            out.push((neg, &s[start..i]));
            neg = b == b'-';
            start = i + 1;
        } else if (b == b'+' || b == b'-') && i == start {
            return Err(Error::Parse(format!("dangling sign in '{s}'")));
        }
        i += 1;
    }
    if start >= bytes.len() {
        return Err(Error::Parse(format!("dangling sign in '{s}'")));
    }
    out.push((neg, &s[start..]));
    Ok(out)
}

fn parse_term(body: &str, names: &[&str; 3]) -> Result<([u32; 3], Rational)> {
    let mut e = [0u32; 3];
    let mut c = Rational::one();
    let mut saw_coeff = false;
    for (k, factor) in body.split('*').enumerate() {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in term '{body}'")));
        }
        if factor.as_bytes()[0].is_ascii_digit() {
            if k != 0 || saw_coeff {
                return Err(Error::Parse(format!("coefficient must lead the term '{body}'")));
            }
            c = parse_rational(factor)?;
            saw_coeff = true;
            continue;
        }
        let (name, pow) = match factor.split_once('^') {
            Some((n, p)) => {
                let p: u32 = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in '{factor}'")))?;
                (n, p)
            }
            None => (factor, 1),
        };
        let idx = names
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| Error::Parse(format!("unknown symbol '{name}'")))?;
        e[idx] += pow;
    }
    Ok((e, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, ratio};

    #[test]
    fn parses_conic_of_the_three_coordinate_points() {
        let q = parse_form("x0*x1+x1*x2+x2*x0").unwrap();
        assert_eq!(q.degree(), 2);
        assert_eq!(q.num_terms(), 3);
        assert_eq!(q.coeff([1, 0, 1]), int(1));
        assert_eq!(q.to_string(), "x0*x1+x0*x2+x1*x2");
    }

    #[test]
    fn zero_with_declared_degree() {
        let z = parse_form_of_degree("0", 3).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), 3);
    }

    #[test]
    fn roundtrip_with_fraction() {
        let f = parse_form("x0^3-x1^3+1/2*x2^3").unwrap();
        assert_eq!(f.coeff([0, 0, 3]), ratio(1, 2));
        let s = f.to_string();
        assert_eq!(s, "x0^3-x1^3+1/2*x2^3");
        assert_eq!(parse_form(&s).unwrap(), f);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_form("x0^2+x1"), Err(Error::Parse(_))));
        assert!(matches!(parse_form("x0*y"), Err(Error::Parse(_))));
        assert!(matches!(parse_form("1/0*x0"), Err(Error::Parse(_))));
        assert!(matches!(parse_form("3/x*x0"), Err(Error::Parse(_))));
        assert!(matches!(parse_form("x0+-x1"), Err(Error::Parse(_))));
        assert!(matches!(parse_form("x0+"), Err(Error::Parse(_))));
    }

    #[test]
    fn cancelling_terms_give_zero_of_the_right_degree() {
        let f = parse_form("x0*x1-x1*x0").unwrap();
        assert!(f.is_zero());
        assert_eq!(f.degree(), 2);
    }
}
