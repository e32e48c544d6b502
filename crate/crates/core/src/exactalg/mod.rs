//! Exact rational arithmetic, homogeneous ternary forms and graded linear
//! algebra over the polynomial ring Q[x0, x1, x2].

mod form;
mod graded;
mod matrix;
mod parse;
mod point;
mod rational;
mod unipoly;

pub use form::{dim_s, monomial_index, monomials, Form, VARS_DUAL, VARS_X};
pub use graded::{graded_map_matrix, kernel_generators, module_contains, syzygies_up_to, SyzygyBasis};
pub(crate) use graded::Echelon;
pub use matrix::MatrixQ;
pub use parse::{parse_form, parse_form_of_degree, parse_form_vars};
pub use point::PointP2;
pub use rational::{int, parse_rational, ratio, Rational};
pub use unipoly::UniPoly;

/// Gradient of a form of positive degree.
pub fn gradient(f: &Form) -> crate::Result<[Form; 3]> {
    if f.degree() == 0 {
        return Err(crate::Error::Precondition("gradient of a degree-0 form".into()));
    }
    Ok([f.partial(0), f.partial(1), f.partial(2)])
}
