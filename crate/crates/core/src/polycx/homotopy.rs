//! Radial homotopy operators for `∂` and `∂̄` on star-shaped polynomial domains.
//!
//! On a term of holomorphic weight `w` (monomial degree in `b` plus number of
//! `db` factors) the Euler field satisfies `L_E = w`, so `K = ι_E / w` inverts
//! `∂` on closed forms of positive weight. The `∂̄` case is the conjugate.

use super::field::VField;
use super::form::{mask_bidegree, Form};
use super::gauss::GaussRat;
use super::poly::{Mono, Poly};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    /// `∂`
    Holo,
    /// `∂̄`
    Anti,
}

impl Operator {
    pub fn apply(self, w: &Form) -> Form {
        match self {
            Operator::Holo => w.d_holo(),
            Operator::Anti => w.d_anti(),
        }
    }
}

fn weight(op: Operator, mask: u64, m: &Mono) -> i32 {
    let (p, q) = mask_bidegree(mask);
    match op {
        Operator::Holo => m.holo_degree() + p as i32,
        Operator::Anti => m.anti_degree() + q as i32,
    }
}

/// The homotopy `K` with `dK + Kd = id` on positive-weight parts. Weight-zero
/// terms are reported as an error since they are not in the image of `d`.
pub fn homotopy(w: &Form, op: Operator) -> Result<Form> {
    let d = w.terms().map(|(_, c)| c.var_span()).max().unwrap_or(0).max(max_index(w));
    let euler = VField::euler(d);
    let mut out = Form::zero();
    for (mask, c) in w.terms() {
        for (m, coeff) in c.terms() {
            let wt = weight(op, *mask, m);
            if wt == 0 {
                return Err(Error::Domain(format!("weight-zero term in {w} has no primitive")));
            }
            let term = Form::term(*mask, Poly::monomial(m.clone(), coeff.clone()));
            let contracted = match op {
                Operator::Holo => term.contract(&euler),
                Operator::Anti => {
                    let bars: Vec<Poly> = (0..d).map(Poly::bar_var).collect();
                    term.contract_anti(&bars)
                }
            };
            out = &out + &contracted.scale_c(&GaussRat::rat(1, wt as i64));
        }
    }
    Ok(out)
}

fn max_index(w: &Form) -> usize {
    w.terms()
        .map(|(m, _)| {
            let lo = (m & 0xffff_ffff) as u32;
            let hi = (m >> 32) as u32;
            (32 - lo.leading_zeros()).max(32 - hi.leading_zeros()) as usize
        })
        .max()
        .unwrap_or(0)
}

/// Solves `op ξ = ω` for closed `ω`; the result resubstitutes exactly.
pub fn poincare_solve(w: &Form, op: Operator) -> Result<Form> {
    if !op.apply(w).is_zero() {
        return Err(Error::NotClosed(format!("{op:?} of {w} is nonzero")));
    }
    let xi = homotopy(w, op)?;
    debug_assert_eq!(op.apply(&xi), *w);
    Ok(xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycx::form::{anti_bit, holo_bit};

    #[test]
    fn area_form_primitive() {
        let w = Form::term(holo_bit(0) | holo_bit(1), Poly::one());
        let xi = poincare_solve(&w, Operator::Holo).unwrap();
        let expected = &Form::term(holo_bit(1), Poly::var(0).scale(&GaussRat::rat(1, 2)))
            - &Form::term(holo_bit(0), Poly::var(1).scale(&GaussRat::rat(1, 2)));
        assert_eq!(xi, expected);
    }

    #[test]
    fn zero_and_non_closed() {
        assert!(poincare_solve(&Form::zero(), Operator::Anti).unwrap().is_zero());
        let w = Form::term(anti_bit(0), Poly::bar_var(1));
        assert!(matches!(poincare_solve(&w, Operator::Anti), Err(Error::NotClosed(_))));
    }

    #[test]
    fn antiholomorphic_with_parameters() {
        // ∂̄-closed (1,1)-form with holomorphic parameters
        let f = &Poly::var(0) * &Poly::bar_var(0).pow(2);
        let w = Form::function(f).d_anti().wedge(&Form::db(1));
        let xi = poincare_solve(&w, Operator::Anti).unwrap();
        assert_eq!(xi.d_anti(), w);
    }
}
