//! Square matrices of forms; products use the wedge product entrywise.

use super::field::VField;
use super::form::Form;
use super::gauss::GaussRat;
use super::poly::Poly;
use crate::{Error, Result};
use std::fmt;
use std::ops::{Add, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatForm {
    n: usize,
    entries: Vec<Form>,
}

impl MatForm {
    pub fn zero(n: usize) -> Self {
        MatForm { n, entries: vec![Form::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        MatForm::from_fn(n, |i, j| if i == j { Form::function(Poly::one()) } else { Form::zero() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Form) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        MatForm { n, entries }
    }

    /// Matrix of functions.
    pub fn from_polys(rows: &[Vec<Poly>]) -> Self {
        let n = rows.len();
        MatForm::from_fn(n, |i, j| Form::function(rows[i][j].clone()))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Form {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: Form) {
        self.entries[i * self.n + j] = f;
    }

    /// Entry `(i, j)` as a function (0-form part).
    pub fn fun(&self, i: usize, j: usize) -> Poly {
        self.get(i, j).scalar()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Form::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Form) -> Form) -> MatForm {
        MatForm { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&Form) -> Result<Form>) -> Result<MatForm> {
        Ok(MatForm { n: self.n, entries: self.entries.iter().map(f).collect::<Result<_>>()? })
    }

    /// Matrix product with entrywise wedge.
    pub fn mul(&self, o: &MatForm) -> MatForm {
        let n = self.n;
        MatForm::from_fn(n, |i, j| (0..n).map(|k| self.get(i, k).wedge(o.get(k, j))).sum())
    }

    pub fn trace(&self) -> Form {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn scale_c(&self, c: &GaussRat) -> MatForm {
        self.map(|f| f.scale_c(c))
    }

    pub fn d_holo(&self) -> MatForm {
        self.map(Form::d_holo)
    }

    pub fn d_anti(&self) -> MatForm {
        self.map(Form::d_anti)
    }

    pub fn d(&self) -> MatForm {
        self.map(Form::d)
    }

    /// Entrywise interior product, e.g. `θ(Y) = ι_Y θ`.
    pub fn contract(&self, x: &VField) -> MatForm {
        self.map(|f| f.contract(x))
    }

    pub fn contract_anti(&self, comps: &[Poly]) -> MatForm {
        self.map(|f| f.contract_anti(comps))
    }

    pub fn pullback(&self, images: &[Poly]) -> Result<MatForm> {
        self.try_map(|f| f.pullback(images))
    }

    pub fn part(&self, p: usize, q: usize) -> MatForm {
        self.map(|f| f.part(p, q))
    }

    pub fn transpose(&self) -> MatForm {
        MatForm::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    /// Matrix–vector product for a function matrix acting on field components.
    pub fn apply(&self, x: &VField) -> VField {
        VField((0..self.n).map(|i| (0..self.n).map(|k| &self.fun(i, k) * &x.0[k]).sum()).collect())
    }

    /// Determinant of a function matrix (Laplace expansion; `n` is small).
    pub fn det(&self) -> Poly {
        fn rec(m: &[Vec<Poly>]) -> Poly {
            let n = m.len();
            if n == 0 {
                return Poly::one();
            }
            if n == 1 {
                return m[0][0].clone();
            }
            let mut acc = Poly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][j] * &rec(&minor);
                if j % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            acc
        }
        let rows: Vec<Vec<Poly>> = (0..self.n).map(|i| (0..self.n).map(|j| self.fun(i, j)).collect()).collect();
        rec(&rows)
    }

    /// Inverse of a function matrix whose determinant is a unit (a single
    /// Laurent monomial), via the adjugate.
    pub fn inverse(&self) -> Result<MatForm> {
        let det = self.det();
        let inv_det = det
            .monomial_inverse()
            .ok_or_else(|| Error::Domain(format!("determinant {det} is not a unit")))?;
        let n = self.n;
        let minor = |skip_r: usize, skip_c: usize| -> MatForm {
            let rows: Vec<Vec<Poly>> = (0..n)
                .filter(|r| *r != skip_r)
                .map(|r| (0..n).filter(|c| *c != skip_c).map(|c| self.fun(r, c)).collect())
                .collect();
            MatForm::from_polys(&rows)
        };
        Ok(MatForm::from_fn(n, |i, j| {
            let cof = minor(j, i).det();
            let signed = if (i + j) % 2 == 0 { cof } else { -cof };
            Form::function(&signed * &inv_det)
        }))
    }
}

impl<'a> Add<&'a MatForm> for &'a MatForm {
    type Output = MatForm;
    fn add(self, o: &MatForm) -> MatForm {
        MatForm { n: self.n, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a MatForm> for &'a MatForm {
    type Output = MatForm;
    fn sub(self, o: &MatForm) -> MatForm {
        MatForm { n: self.n, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &MatForm {
    type Output = MatForm;
    fn neg(self) -> MatForm {
        self.map(|f| -f)
    }
}

impl fmt::Display for MatForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for MatForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unipotent_inverse() {
        let b = Poly::var(0);
        let m = MatForm::from_polys(&[vec![Poly::one(), Poly::zero()], vec![b.scale_int(2), Poly::one()]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), MatForm::identity(2));
    }
}
