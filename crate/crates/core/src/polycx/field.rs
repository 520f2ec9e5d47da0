//! `(1,0)` vector fields `X = X^i ∂_i` with polynomial coefficients.

use super::form::Form;
use super::gauss::GaussRat;
use super::poly::Poly;
use std::fmt;
use std::ops::{Add, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VField(pub Vec<Poly>);

impl VField {
    pub fn zero(d: usize) -> Self {
        VField(vec![Poly::zero(); d])
    }

    /// Coordinate field `∂_{i+1}`.
    pub fn coord(d: usize, i: usize) -> Self {
        let mut v = VField::zero(d);
        v.0[i] = Poly::one();
        v
    }

    /// Euler field `Σ b^i ∂_i`.
    pub fn euler(d: usize) -> Self {
        VField((0..d).map(Poly::var).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Poly::is_zero)
    }

    pub fn scale(&self, f: &Poly) -> VField {
        VField(self.0.iter().map(|c| c * f).collect())
    }

    pub fn scale_c(&self, c: &GaussRat) -> VField {
        VField(self.0.iter().map(|p| p.scale(c)).collect())
    }

    /// `X(f) = X^i ∂_i f`.
    pub fn apply(&self, f: &Poly) -> Poly {
        self.0.iter().enumerate().map(|(i, x)| x * &f.d(i)).sum()
    }

    /// `[X, Y]^i = X(Y^i) − Y(X^i)`.
    pub fn bracket(&self, o: &VField) -> VField {
        VField(
            (0..self.dim())
                .map(|i| &self.apply(&o.0[i]) - &o.apply(&self.0[i]))
                .collect(),
        )
    }

    /// `∂_i X^i`.
    pub fn divergence(&self) -> Poly {
        self.0.iter().enumerate().map(|(i, x)| x.d(i)).sum()
    }

    /// `⟨α, X⟩` for a 1-form `α`.
    pub fn pair(&self, alpha: &Form) -> Poly {
        alpha.contract(self).scalar()
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> VField {
        VField(self.0.iter().map(f).collect())
    }

    pub fn try_map(&self, f: impl Fn(&Poly) -> crate::Result<Poly>) -> crate::Result<VField> {
        Ok(VField(self.0.iter().map(f).collect::<crate::Result<_>>()?))
    }

    /// Holomorphic Jacobian `(∂_k X^i)` as rows `i`, columns `k`.
    pub fn jacobian(&self) -> Vec<Vec<Poly>> {
        let d = self.dim();
        self.0.iter().map(|x| (0..d).map(|k| x.d(k)).collect()).collect()
    }
}

impl<'a> Add<&'a VField> for &'a VField {
    type Output = VField;
    fn add(self, o: &VField) -> VField {
        VField(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a VField> for &'a VField {
    type Output = VField;
    fn sub(self, o: &VField) -> VField {
        VField(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &VField {
    type Output = VField;
    fn neg(self) -> VField {
        VField(self.0.iter().map(|a| -a).collect())
    }
}

impl Add for VField {
    type Output = VField;
    fn add(self, o: VField) -> VField {
        &self + &o
    }
}

impl Sub for VField {
    type Output = VField;
    fn sub(self, o: VField) -> VField {
        &self - &o
    }
}

impl fmt::Display for VField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})∂{}", i + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for VField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_example() {
        // [b² ∂₁, ∂₂] = −∂₁
        let x = VField(vec![Poly::var(1), Poly::zero()]);
        let y = VField::coord(2, 1);
        assert_eq!(x.bracket(&y), VField(vec![Poly::int(-1), Poly::zero()]));
    }

    #[test]
    fn lie_derivative_on_functions_and_forms() {
        let x = VField(vec![Poly::var(1), Poly::var(0)]);
        let f = &Poly::var(0) * &Poly::var(0);
        let df = Form::function(f.clone()).d_holo();
        // L_X ∂f = ∂(Xf)
        assert_eq!(df.lie(&x), Form::function(x.apply(&f)).d_holo());
    }
}
