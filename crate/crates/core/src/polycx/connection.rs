//! Curvature and Chern–Simons forms of a matrix of 1-forms.

use super::form::Form;
use super::gauss::GaussRat;
use super::matrix::MatForm;

/// `R = dΓ + Γ∧Γ`.
pub fn curvature(gamma: &MatForm) -> MatForm {
    &gamma.d() + &gamma.mul(gamma)
}

/// `CS(Γ) = Tr(Γ∧R) − ⅓ Tr(Γ∧Γ∧Γ)`, so that `d CS = Tr(R∧R)`.
pub fn chern_simons(gamma: &MatForm) -> Form {
    let r = curvature(gamma);
    let cubic = gamma.mul(gamma).mul(gamma).trace().scale_c(&GaussRat::rat(1, 3));
    &gamma.mul(&r).trace() - &cubic
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycx::form::{anti_bit, holo_bit};
    use crate::polycx::poly::Poly;

    #[test]
    fn one_dimensional_example() {
        let g = MatForm::from_fn(1, |_, _| Form::term(holo_bit(0), Poly::bar_var(0)));
        let r = curvature(&g);
        assert_eq!(*r.get(0, 0), Form::term(holo_bit(0) | anti_bit(0), Poly::int(-1)));
        let cs = chern_simons(&g);
        assert!(cs.d().is_zero());
        assert!(r.mul(&r).trace().is_zero());
    }

    #[test]
    fn transgression_in_two_dimensions() {
        let g = MatForm::from_fn(2, |i, j| match (i, j) {
            (0, 1) => Form::term(holo_bit(0), &Poly::var(1) * &Poly::bar_var(0)),
            (1, 0) => Form::term(holo_bit(1), Poly::bar_var(1).pow(2)),
            (1, 1) => Form::term(holo_bit(0), Poly::var(0)),
            _ => Form::zero(),
        });
        let r = curvature(&g);
        assert_eq!(chern_simons(&g).d(), r.mul(&r).trace());
    }
}
