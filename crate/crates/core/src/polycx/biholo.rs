//! Polynomial (and Laurent-monomial) biholomorphisms with explicit inverses,
//! together with the coordinate-change tensors `g_φ`, `θ_φ`, `WZ_φ` and the
//! composition 2-form `σ`.

use super::field::VField;
use super::form::Form;
use super::gauss::GaussRat;
use super::matrix::MatForm;
use super::poly::Poly;
use crate::{Error, Result};
use std::fmt;

/// `φ: U → V` given by `φ^i(b)`, with inverse images `ψ^i(b)`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyBiholo {
    forward: Vec<Poly>,
    inverse: Vec<Poly>,
    jac: MatForm,
    jac_inv: MatForm,
    theta: MatForm,
}

impl PolyBiholo {
    /// Validates holomorphy and both compositions symbolically.
    pub fn new(forward: Vec<Poly>, inverse: Vec<Poly>) -> Result<Self> {
        let d = forward.len();
        if inverse.len() != d {
            return Err(Error::Shape(format!("forward has {d} components, inverse {}", inverse.len())));
        }
        for p in forward.iter().chain(&inverse) {
            if !p.is_holomorphic() {
                return Err(Error::Domain(format!("component {p} is not holomorphic")));
            }
            if p.var_span() > d {
                return Err(Error::Shape(format!("component {p} uses variables beyond dimension {d}")));
            }
        }
        let ident: Vec<Poly> = (0..d).map(Poly::var).collect();
        let fi = compose(&forward, &inverse)?;
        let if_ = compose(&inverse, &forward)?;
        if fi != ident || if_ != ident {
            return Err(Error::Domain("forward and inverse are not mutually inverse".into()));
        }
        let jac = jacobian(&forward);
        // g_φ^{-1}(b) = g_{φ^{-1}}(φ(b))
        let jac_inv = jacobian(&inverse).pullback(&forward)?;
        let theta = jac_inv.mul(&jac.d_holo());
        Ok(PolyBiholo { forward, inverse, jac, jac_inv, theta })
    }

    pub fn identity(d: usize) -> Self {
        let id: Vec<Poly> = (0..d).map(Poly::var).collect();
        PolyBiholo::new(id.clone(), id).expect("identity map")
    }

    /// `b ↦ A b + c` for an invertible constant matrix `A`.
    pub fn affine(a: &[Vec<GaussRat>], c: &[GaussRat]) -> Result<Self> {
        let d = a.len();
        let ainv = invert_constant(a)?;
        let lin = |m: &[Vec<GaussRat>], shift: &[Poly]| -> Vec<Poly> {
            (0..d)
                .map(|i| {
                    let mut p = shift[i].clone();
                    for (j, mij) in m[i].iter().enumerate() {
                        p += &Poly::var(j).scale(mij);
                    }
                    p
                })
                .collect()
        };
        let cpoly: Vec<Poly> = c.iter().map(|x| Poly::constant(x.clone())).collect();
        // inverse: b ↦ A^{-1}(b − c)
        let neg_ainv_c: Vec<Poly> = (0..d)
            .map(|i| {
                let s: GaussRat = (0..d).fold(GaussRat::zero(), |acc, j| &acc + &(&ainv[i][j] * &c[j]));
                Poly::constant(-s)
            })
            .collect();
        PolyBiholo::new(lin(a, &cpoly), lin(&ainv, &neg_ainv_c))
    }

    /// Triangular shear `b^i ↦ b^i + p` with `p` independent of `b^i`.
    pub fn shear(d: usize, i: usize, p: Poly) -> Result<Self> {
        if !p.d(i).is_zero() {
            return Err(Error::Domain(format!("shear term {p} depends on b{}", i + 1)));
        }
        let mut fwd: Vec<Poly> = (0..d).map(Poly::var).collect();
        let mut inv = fwd.clone();
        fwd[i] = &fwd[i] + &p;
        inv[i] = &inv[i] - &p;
        PolyBiholo::new(fwd, inv)
    }

    /// `b ↦ 1/b` on the punctured line (self-inverse, `Tr θ ≠ 0`).
    pub fn inversion() -> Self {
        let inv = Poly::var(0).monomial_inverse().expect("monomial");
        PolyBiholo::new(vec![inv.clone()], vec![inv]).expect("inversion")
    }

    /// `(b¹, b²) ↦ (b¹, b²/b¹)` on `b¹ ≠ 0`, with inverse `(b¹, b¹b²)`.
    pub fn monomial_twist() -> Self {
        let b1 = Poly::var(0);
        let b2 = Poly::var(1);
        let b1inv = b1.monomial_inverse().expect("monomial");
        PolyBiholo::new(vec![b1.clone(), &b2 * &b1inv], vec![b1.clone(), &b1 * &b2]).expect("twist")
    }

    pub fn dim(&self) -> usize {
        self.forward.len()
    }

    pub fn forward(&self) -> &[Poly] {
        &self.forward
    }

    pub fn inverse_images(&self) -> &[Poly] {
        &self.inverse
    }

    /// The inverse biholomorphism.
    pub fn inverse(&self) -> PolyBiholo {
        PolyBiholo::new(self.inverse.clone(), self.forward.clone()).expect("validated pair")
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PolyBiholo) -> Result<PolyBiholo> {
        PolyBiholo::new(compose(&next.forward, &self.forward)?, compose(&self.inverse, &next.inverse)?)
    }

    /// `g_φ`, with `(g_φ)^i_j = ∂_j φ^i`.
    pub fn jacobian(&self) -> &MatForm {
        &self.jac
    }

    /// `g_φ^{-1}` as a function matrix on the source.
    pub fn jacobian_inv(&self) -> &MatForm {
        &self.jac_inv
    }

    /// `θ_φ = g^{-1} ∂g`.
    pub fn theta(&self) -> &MatForm {
        &self.theta
    }

    /// `WZ_φ = ⅓ Tr(θ∧θ∧θ)`.
    pub fn wz(&self) -> Form {
        let t = &self.theta;
        t.mul(t).mul(t).trace().scale_c(&GaussRat::rat(1, 3))
    }

    pub fn is_affine(&self) -> bool {
        self.theta.is_zero()
    }

    pub fn pull_fn(&self, f: &Poly) -> Result<Poly> {
        f.compose_holo(&self.forward)
    }

    pub fn pull_form(&self, w: &Form) -> Result<Form> {
        w.pullback(&self.forward)
    }

    /// `(φ*X)^j = (g^{-1})^j_i (X^i ∘ φ)` for a field `X` on the target.
    pub fn pull_field(&self, x: &VField) -> Result<VField> {
        let composed = x.try_map(|c| c.compose_holo(&self.forward))?;
        Ok(self.jac_inv.apply(&composed))
    }

    pub fn pull_mat(&self, m: &MatForm) -> Result<MatForm> {
        m.pullback(&self.forward)
    }

    /// Pushforward to the target, i.e. pullback along the inverse.
    pub fn push_fn(&self, f: &Poly) -> Result<Poly> {
        f.compose_holo(&self.inverse)
    }

    pub fn push_form(&self, w: &Form) -> Result<Form> {
        w.pullback(&self.inverse)
    }

    pub fn push_field(&self, x: &VField) -> Result<VField> {
        self.inverse().pull_field(x)
    }
}

/// `σ_{φ₂,φ₁} = Tr(θ_{φ₁} ∧ g_{φ₁}^{-1}·φ₁*θ_{φ₂}·g_{φ₁})` for `φ₁: U→V`, `φ₂: V→W`.
pub fn sigma(phi2: &PolyBiholo, phi1: &PolyBiholo) -> Result<Form> {
    let pulled = phi1.pull_mat(phi2.theta())?;
    let conj = phi1.jacobian_inv().mul(&pulled).mul(phi1.jacobian());
    Ok(phi1.theta().mul(&conj).trace())
}

/// `f ∘ g` componentwise: substitutes `g` into each component of `f`.
pub fn compose(f: &[Poly], g: &[Poly]) -> Result<Vec<Poly>> {
    f.iter().map(|p| p.compose_holo(g)).collect()
}

/// `(g)^i_j = ∂_j f^i`.
pub fn jacobian(f: &[Poly]) -> MatForm {
    let d = f.len();
    MatForm::from_fn(d, |i, j| Form::function(f[i].d(j)))
}

/// Inverse of a constant matrix by Gauss–Jordan elimination.
pub fn invert_constant(a: &[Vec<GaussRat>]) -> Result<Vec<Vec<GaussRat>>> {
    let n = a.len();
    let mut m: Vec<Vec<GaussRat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { GaussRat::one() } else { GaussRat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|r| !m[*r][col].is_zero())
            .ok_or_else(|| Error::Domain("singular linear part".into()))?;
        m.swap(col, piv);
        let inv = m[col][col].inv().expect("nonzero pivot");
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= &(&f * p);
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl fmt::Display for PolyBiholo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fw: Vec<String> = self.forward.iter().map(|p| p.to_string()).collect();
        let iv: Vec<String> = self.inverse.iter().map(|p| p.to_string()).collect();
        write!(f, "forward = {} ; inverse = {}", fw.join(", "), iv.join(", "))
    }
}

impl fmt::Debug for PolyBiholo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycx::form::holo_bit;

    fn shear2() -> PolyBiholo {
        PolyBiholo::shear(2, 1, Poly::var(0).pow(2)).unwrap()
    }

    #[test]
    fn shear_jacobian_and_theta() {
        let phi = shear2();
        let b1 = Poly::var(0);
        assert_eq!(phi.jacobian().fun(1, 0), b1.scale_int(2));
        assert_eq!(phi.jacobian().fun(0, 0), Poly::one());
        assert_eq!(*phi.theta().get(1, 0), Form::term(holo_bit(0), Poly::int(2)));
        assert!(phi.theta().get(0, 0).is_zero());
        assert!(phi.wz().is_zero());
        assert!(phi.theta().trace().is_zero());
    }

    #[test]
    fn maurer_cartan() {
        let phi = PolyBiholo::shear(2, 0, Poly::var(1).pow(3))
            .unwrap()
            .then(&shear2())
            .unwrap();
        let t = phi.theta();
        assert!((&t.d_holo() + &t.mul(t)).is_zero());
    }

    #[test]
    fn rejects_bad_inverse() {
        let r = PolyBiholo::new(vec![Poly::var(0)], vec![Poly::var(0).scale_int(2)]);
        assert!(r.is_err());
    }

    #[test]
    fn laurent_maps_have_trace() {
        let inv = PolyBiholo::inversion();
        assert!(!inv.theta().trace().is_zero());
        let tw = PolyBiholo::monomial_twist();
        assert!(!tw.theta().trace().is_zero());
    }
}
