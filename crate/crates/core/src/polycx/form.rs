//! Mixed-degree differential forms with polynomial coefficients.
//!
//! A basis element `db^I ∧ db̄^J` is a bit mask: bit `i` is `db^{i+1}` and
//! bit `32 + i` is `db̄^{i+1}`. Ascending bit order is the canonical order,
//! so holomorphic generators always precede antiholomorphic ones.

use super::field::VField;
use super::gauss::GaussRat;
use super::poly::Poly;
use crate::Result;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

pub const MAX_DIM: usize = 32;
const HOLO_MASK: u64 = 0xffff_ffff;

pub fn holo_bit(i: usize) -> u64 {
    1u64 << i
}

pub fn anti_bit(i: usize) -> u64 {
    1u64 << (32 + i)
}

/// `(p, q)` bidegree of a basis mask.
pub fn mask_bidegree(m: u64) -> (usize, usize) {
    ((m & HOLO_MASK).count_ones() as usize, (m >> 32).count_ones() as usize)
}

fn parity(n: u32) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign and mask of `e_S ∧ e_T`, or `None` if they overlap.
pub fn wedge_masks(s: u64, t: u64) -> Option<(i64, u64)> {
    if s & t != 0 {
        return None;
    }
    let mut swaps = 0;
    let mut rest = t;
    while rest != 0 {
        let b = rest.trailing_zeros();
        rest &= rest - 1;
        // generators of S strictly above b must be passed
        swaps += (s >> b).count_ones();
    }
    Some((parity(swaps), s | t))
}

/// Sign for removing generator `bit` from `e_S` by interior product.
fn contract_sign(s: u64, bit: u64) -> i64 {
    parity((s & (bit - 1)).count_ones())
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Form {
    terms: BTreeMap<u64, Poly>,
}

impl Form {
    pub fn zero() -> Self {
        Form::default()
    }

    /// A function viewed as a 0-form.
    pub fn function(f: Poly) -> Self {
        Form::term(0, f)
    }

    pub fn term(mask: u64, f: Poly) -> Self {
        let mut out = Form::zero();
        out.add_term(mask, f);
        out
    }

    /// `db^{i+1}`.
    pub fn db(i: usize) -> Self {
        Form::term(holo_bit(i), Poly::one())
    }

    /// `db̄^{i+1}`.
    pub fn dbb(i: usize) -> Self {
        Form::term(anti_bit(i), Poly::one())
    }

    /// `Σ c_i db^i`.
    pub fn one_form(coeffs: &[Poly]) -> Self {
        let mut out = Form::zero();
        for (i, c) in coeffs.iter().enumerate() {
            out.add_term(holo_bit(i), c.clone());
        }
        out
    }

    /// `Σ c_i db̄^i`.
    pub fn anti_one_form(coeffs: &[Poly]) -> Self {
        let mut out = Form::zero();
        for (i, c) in coeffs.iter().enumerate() {
            out.add_term(anti_bit(i), c.clone());
        }
        out
    }

    /// Holomorphic 2-form from an antisymmetric component table `ω_{jk}`,
    /// i.e. `Σ_{j<k} ω_{jk} db^j∧db^k`.
    pub fn two_form(d: usize, comp: impl Fn(usize, usize) -> Poly) -> Self {
        let mut out = Form::zero();
        for j in 0..d {
            for k in j + 1..d {
                out.add_term(holo_bit(j) | holo_bit(k), comp(j, k));
            }
        }
        out
    }

    pub fn add_term(&mut self, mask: u64, f: Poly) {
        if f.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_default();
        *slot += &f;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u64, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mask: u64) -> Poly {
        self.terms.get(&mask).cloned().unwrap_or_default()
    }

    /// Value of a 0-form (the coefficient of the empty mask).
    pub fn scalar(&self) -> Poly {
        self.coeff(0)
    }

    /// Components `c_i` of the `(1,0)` part `Σ c_i db^i`.
    pub fn one_form_components(&self, d: usize) -> Vec<Poly> {
        (0..d).map(|i| self.coeff(holo_bit(i))).collect()
    }

    /// Antisymmetric component `ω_{jk}` of the `(2,0)` part.
    pub fn two_form_component(&self, j: usize, k: usize) -> Poly {
        match j.cmp(&k) {
            std::cmp::Ordering::Equal => Poly::zero(),
            std::cmp::Ordering::Less => self.coeff(holo_bit(j) | holo_bit(k)),
            std::cmp::Ordering::Greater => -self.coeff(holo_bit(j) | holo_bit(k)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Part of bidegree `(p, q)`.
    pub fn part(&self, p: usize, q: usize) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| mask_bidegree(**m) == (p, q))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Bidegrees present.
    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.terms.keys().map(|m| mask_bidegree(*m)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Total degree if homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.count_ones() as usize);
        let first = it.next()?;
        it.all(|k| k == first).then_some(first)
    }

    pub fn scale(&self, f: &Poly) -> Form {
        let mut out = Form::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * f);
        }
        out
    }

    pub fn scale_c(&self, c: &GaussRat) -> Form {
        self.map_coeffs(|p| p.scale(c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Form {
        let mut out = Form::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    pub fn try_map_coeffs(&self, f: impl Fn(&Poly) -> Result<Poly>) -> Result<Form> {
        let mut out = Form::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c)?);
        }
        Ok(out)
    }

    pub fn wedge(&self, o: &Form) -> Form {
        let mut out = Form::zero();
        for (s, a) in &self.terms {
            for (t, b) in &o.terms {
                if let Some((sign, m)) = wedge_masks(*s, *t) {
                    out.add_term(m, (a * b).scale_int(sign));
                }
            }
        }
        out
    }

    /// Holomorphic exterior derivative `∂`.
    pub fn d_holo(&self) -> Form {
        let mut out = Form::zero();
        for (m, c) in &self.terms {
            for i in 0..c.var_span() {
                let bit = holo_bit(i);
                if m & bit != 0 {
                    continue;
                }
                let dc = c.d(i);
                if !dc.is_zero() {
                    out.add_term(m | bit, dc.scale_int(contract_sign(*m, bit)));
                }
            }
        }
        out
    }

    /// Antiholomorphic exterior derivative `∂̄`.
    pub fn d_anti(&self) -> Form {
        let mut out = Form::zero();
        for (m, c) in &self.terms {
            for i in 0..c.var_span() {
                let bit = anti_bit(i);
                if m & bit != 0 {
                    continue;
                }
                let dc = c.dbar(i);
                if !dc.is_zero() {
                    out.add_term(m | bit, dc.scale_int(contract_sign(*m, bit)));
                }
            }
        }
        out
    }

    /// de Rham differential `∂ + ∂̄`.
    pub fn d(&self) -> Form {
        &self.d_holo() + &self.d_anti()
    }

    fn contract_bits(&self, comps: &[Poly], bit_of: fn(usize) -> u64) -> Form {
        let mut out = Form::zero();
        for (m, c) in &self.terms {
            for (i, x) in comps.iter().enumerate() {
                let bit = bit_of(i);
                if m & bit == 0 || x.is_zero() {
                    continue;
                }
                out.add_term(m & !bit, (c * x).scale_int(contract_sign(*m, bit)));
            }
        }
        out
    }

    /// Interior product with a `(1,0)` vector field.
    pub fn contract(&self, x: &VField) -> Form {
        self.contract_bits(&x.0, holo_bit)
    }

    /// Interior product with the `(0,1)` vector `Σ c_j ∂/∂b̄^j`.
    pub fn contract_anti(&self, comps: &[Poly]) -> Form {
        self.contract_bits(comps, anti_bit)
    }

    /// Lie derivative `ι_X∂ + ∂ι_X` along a `(1,0)` field, with `b̄` treated
    /// as a parameter.
    pub fn lie(&self, x: &VField) -> Form {
        &self.d_holo().contract(x) + &self.contract(x).d_holo()
    }

    /// Pullback along a holomorphic map given by the images of `b^1..b^d`.
    pub fn pullback(&self, images: &[Poly]) -> Result<Form> {
        let d = images.len();
        let holo: Vec<Form> = images.iter().map(|p| Form::function(p.clone()).d_holo()).collect();
        let anti: Vec<Form> = holo.iter().map(|f| f.conj()).collect();
        let mut basis_cache: BTreeMap<u64, Form> = BTreeMap::new();
        let mut out = Form::zero();
        for (m, c) in &self.terms {
            let img = match basis_cache.get(m) {
                Some(f) => f.clone(),
                None => {
                    let mut acc = Form::function(Poly::one());
                    let mut rest = *m;
                    while rest != 0 {
                        let b = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        let g = if b < 32 { holo.get(b) } else { anti.get(b - 32) };
                        let g = g.ok_or_else(|| {
                            crate::Error::Shape(format!("form index exceeds map dimension {d}"))
                        })?;
                        acc = acc.wedge(g);
                    }
                    basis_cache.insert(*m, acc.clone());
                    acc
                }
            };
            out = &out + &img.scale(&c.compose_holo(images)?);
        }
        Ok(out)
    }

    /// Complex conjugate: `db ↔ db̄` with coefficients conjugated.
    pub fn conj(&self) -> Form {
        let mut out = Form::zero();
        for (m, c) in &self.terms {
            let swapped = ((m & HOLO_MASK) << 32) | (m >> 32);
            // reorder anti block (old holo) behind holo block (old anti)
            let (p, q) = mask_bidegree(*m);
            let sign = parity((p * q) as u32);
            out.add_term(swapped, c.conj().scale_int(sign));
        }
        out
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.values().any(|c| c.has_negative_exponent())
    }
}

impl<'a> Add<&'a Form> for &'a Form {
    type Output = Form;
    fn add(self, o: &Form) -> Form {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Form> for &'a Form {
    type Output = Form;
    fn sub(self, o: &Form) -> Form {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.map_coeffs(|c| -c)
    }
}

impl Add for Form {
    type Output = Form;
    fn add(self, o: Form) -> Form {
        &self + &o
    }
}

impl Sub for Form {
    type Output = Form;
    fn sub(self, o: Form) -> Form {
        &self - &o
    }
}

impl Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        -&self
    }
}

impl std::iter::Sum for Form {
    fn sum<I: Iterator<Item = Form>>(iter: I) -> Form {
        iter.fold(Form::zero(), |a, b| &a + &b)
    }
}

fn mask_name(m: u64) -> String {
    let mut parts = Vec::new();
    let mut rest = m;
    while rest != 0 {
        let b = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        parts.push(if b < 32 { format!("db{}", b + 1) } else { format!("dB{}", b - 31) });
    }
    parts.join("∧")
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *m == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c}) {}", mask_name(*m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(i: usize) -> Poly {
        Poly::var(i)
    }

    #[test]
    fn dbar_sign_canonicalization() {
        // ∂̄(b̄¹ db¹) = db̄¹∧db¹ = −db¹∧db̄¹
        let w = Form::term(holo_bit(0), Poly::bar_var(0));
        let expected = Form::term(holo_bit(0) | anti_bit(0), Poly::int(-1));
        assert_eq!(w.d_anti(), expected);
    }

    #[test]
    fn d_squares_to_zero() {
        let f = &(&b(0).pow(2) * &Poly::bar_var(1)) + &(&b(1) * &b(0));
        let w = &Form::function(f.clone()).d() + &Form::db(0).scale(&f);
        assert!(w.d().d().is_zero());
        assert!(w.d_holo().d_holo().is_zero());
        assert!(w.d_anti().d_anti().is_zero());
    }

    #[test]
    fn pairing_is_derivative() {
        let df = Form::function(&b(0) * &b(1)).d_holo();
        let x = VField(vec![Poly::one(), Poly::zero()]);
        assert_eq!(df.contract(&x).scalar(), b(1));
    }

    #[test]
    fn conj_is_involution() {
        let w = Form::term(holo_bit(0) | holo_bit(1) | anti_bit(0), &b(0) * &Poly::constant(GaussRat::i()));
        assert_eq!(w.conj().conj(), w);
        // conj(db1∧dB1) = dB1∧db1 = −db1∧dB1
        let v = Form::term(holo_bit(0) | anti_bit(0), Poly::one());
        assert_eq!(v.conj(), -&v);
    }
}
