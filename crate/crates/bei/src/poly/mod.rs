//! Exact multivariate polynomial arithmetic in `x_1..x_n, y_1..y_n` over the
//! rationals or a prime field, with pluggable monomial orders.

mod field;
mod monomial;
mod polynomial;

pub use field::{Coeff, FieldMode};
pub use monomial::{Monomial, MonomialOrder};
pub use polynomial::{normal_form, normal_form_with_quotients, s_polynomial, Polynomial};
