//! Laurent polynomials in holomorphic coordinates `b1..bd` and their
//! conjugates `B1..Bd`, with Gaussian-rational coefficients.
//!
//! Negative exponents are allowed so that charts such as `b -> 1/b` on the
//! punctured line can be modeled; operations that need a genuine polynomial
//! (radial homotopies, star-shaped domains) reject them explicitly.

use super::gauss::GaussRat;
use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Which family a variable belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Holo(usize),
    Anti(usize),
}

impl Var {
    fn slot(self) -> usize {
        match self {
            Var::Holo(i) => 2 * i,
            Var::Anti(i) => 2 * i + 1,
        }
    }

    fn from_slot(s: usize) -> Var {
        if s.is_multiple_of(2) {
            Var::Holo(s / 2)
        } else {
            Var::Anti(s / 2)
        }
    }
}

/// Exponent vector with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(Vec<i32>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    fn trimmed(mut v: Vec<i32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Mono(v)
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0.get(v.slot()).copied().unwrap_or(0)
    }

    pub fn with(&self, v: Var, e: i32) -> Self {
        let mut w = self.0.clone();
        let s = v.slot();
        if w.len() <= s {
            w.resize(s + 1, 0);
        }
        w[s] = e;
        Mono::trimmed(w)
    }

    fn mul(&self, o: &Mono) -> Mono {
        let n = self.0.len().max(o.0.len());
        let mut w = vec![0; n];
        for (i, e) in self.0.iter().enumerate() {
            w[i] += e;
        }
        for (i, e) in o.0.iter().enumerate() {
            w[i] += e;
        }
        Mono::trimmed(w)
    }

    fn inverse(&self) -> Mono {
        Mono(self.0.iter().map(|e| -e).collect())
    }

    /// Nonzero exponents as `(variable, exponent)` pairs.
    pub fn factors(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e != 0)
            .map(|(s, e)| (Var::from_slot(s), *e))
    }

    pub fn holo_degree(&self) -> i32 {
        self.0.iter().step_by(2).sum()
    }

    pub fn anti_degree(&self) -> i32 {
        self.0.iter().skip(1).step_by(2).sum()
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|e| *e < 0)
    }

    fn conj(&self) -> Mono {
        let mut w = vec![0; self.0.len() + 1];
        for (s, e) in self.0.iter().enumerate() {
            let t = if s % 2 == 0 { s + 1 } else { s - 1 };
            w[t] = *e;
        }
        Mono::trimmed(w)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, GaussRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Poly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut p = Poly::zero();
        p.add_term(Mono::one(), c);
        p
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(GaussRat::int(n))
    }

    pub fn rat(n: i64, d: i64) -> Self {
        Poly::constant(GaussRat::rat(n, d))
    }

    /// The holomorphic coordinate `b^{i+1}` (zero-based index).
    pub fn var(i: usize) -> Self {
        Poly::monomial(Mono::one().with(Var::Holo(i), 1), GaussRat::one())
    }

    /// The antiholomorphic coordinate `B^{i+1}` (zero-based index).
    pub fn bar_var(i: usize) -> Self {
        Poly::monomial(Mono::one().with(Var::Anti(i), 1), GaussRat::one())
    }

    pub fn of_var(v: Var) -> Self {
        Poly::monomial(Mono::one().with(v, 1), GaussRat::one())
    }

    pub fn monomial(m: Mono, c: GaussRat) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Mono, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &GaussRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if the polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.0.is_empty()).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn constant_term(&self) -> GaussRat {
        self.terms.get(&Mono::one()).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn scale_int(&self, n: i64) -> Poly {
        self.scale(&GaussRat::int(n))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a single-term polynomial.
    pub fn monomial_inverse(&self) -> Option<Poly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        Some(Poly::monomial(m.inverse(), c.inv()?))
    }

    /// Partial derivative with respect to one variable.
    pub fn diff(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e != 0 {
                out.add_term(m.with(v, e - 1), c * &GaussRat::int(e as i64));
            }
        }
        out
    }

    /// `∂/∂b^{i+1}`.
    pub fn d(&self, i: usize) -> Poly {
        self.diff(Var::Holo(i))
    }

    /// `∂/∂B^{i+1}`.
    pub fn dbar(&self, i: usize) -> Poly {
        self.diff(Var::Anti(i))
    }

    /// Complex conjugation: swaps `b` and `B` and conjugates coefficients.
    pub fn conj(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.conj(), c.conj())).collect() }
    }

    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|m| m.anti_degree() == 0 && m.factors().all(|(v, _)| matches!(v, Var::Holo(_))))
    }

    pub fn is_antiholomorphic(&self) -> bool {
        self.terms.keys().all(|m| m.factors().all(|(v, _)| matches!(v, Var::Anti(_))))
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.keys().any(|m| m.has_negative())
    }

    /// Largest total degree over all terms (0 for the zero polynomial).
    pub fn total_degree(&self) -> i32 {
        self.terms.keys().map(|m| m.holo_degree() + m.anti_degree()).max().unwrap_or(0)
    }

    /// Largest index `i` such that `b^{i+1}` or `B^{i+1}` appears, plus one.
    pub fn var_span(&self) -> usize {
        self.terms.keys().map(|m| m.0.len().div_ceil(2)).max().unwrap_or(0)
    }

    /// Splits into parts homogeneous in the holomorphic (or antiholomorphic) degree.
    pub fn graded_parts(&self, holo: bool) -> BTreeMap<i32, Poly> {
        let mut out: BTreeMap<i32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = if holo { m.holo_degree() } else { m.anti_degree() };
            out.entry(k).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    /// Substitutes every variable for which `image` returns `Some`.
    /// Negative powers require a single-term image.
    pub fn substitute(&self, image: &dyn Fn(Var) -> Option<Poly>) -> Result<Poly, crate::Error> {
        let mut cache: HashMap<(Var, i32), Poly> = HashMap::new();
        let mut images: HashMap<Var, Option<Poly>> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut kept = Mono::one();
            let mut acc = Poly::constant(c.clone());
            for (v, e) in m.factors() {
                let img = images.entry(v).or_insert_with(|| image(v)).clone();
                match img {
                    None => kept = kept.with(v, e),
                    Some(p) => {
                        let cached = match cache.entry((v, e)) {
                            Entry::Occupied(slot) => slot.into_mut(),
                            Entry::Vacant(slot) => slot.insert(if e >= 0 {
                                p.pow(e as u32)
                            } else {
                                p.monomial_inverse()
                                    .ok_or_else(|| {
                                        crate::Error::Domain(format!(
                                            "negative power of {} needs a monomial image",
                                            Poly::of_var(v)
                                        ))
                                    })?
                                    .pow((-e) as u32)
                            }),
                        };
                        acc = &acc * &*cached;
                    }
                }
            }
            let kept_poly = Poly::monomial(kept, GaussRat::one());
            out += &(&acc * &kept_poly);
        }
        Ok(out)
    }

    /// Pullback along a holomorphic map given by the images of `b^1..b^d`:
    /// `B^i` maps to the conjugate image.
    pub fn compose_holo(&self, images: &[Poly]) -> Result<Poly, crate::Error> {
        let conj: Vec<Poly> = images.iter().map(|p| p.conj()).collect();
        self.substitute(&|v| match v {
            Var::Holo(i) => images.get(i).cloned(),
            Var::Anti(i) => conj.get(i).cloned(),
        })
    }

    /// Evaluation-free map over coefficients.
    pub fn map_coeffs(&self, f: impl Fn(&GaussRat) -> GaussRat) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Multiplies every term `c·m` by `w(m)`; used by radial homotopies.
    pub fn weight_terms(&self, w: impl Fn(&Mono) -> GaussRat) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * &w(m));
        }
        out
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        if self.is_zero() || o.is_zero() {
            return out;
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

macro_rules! forward_poly {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: &Poly) -> Poly {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Poly> for &'a Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                self.$m(&o)
            }
        }
    };
}
forward_poly!(Add, add);
forward_poly!(Sub, sub);
forward_poly!(Mul, mul);

impl AddAssign<Poly> for Poly {
    fn add_assign(&mut self, o: Poly) {
        *self += &o;
    }
}

impl SubAssign<Poly> for Poly {
    fn sub_assign(&mut self, o: Poly) {
        *self -= &o;
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut acc = Poly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl From<GaussRat> for Poly {
    fn from(c: GaussRat) -> Self {
        Poly::constant(c)
    }
}

impl fmt::Display for Poly {
    /// Scenario-grammar rendering, e.g. `b1^2 - 1/2*B2 + (1+2*i)*b1*B1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Print highest degree first for readability.
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mut vars = Vec::new();
            for (v, e) in m.factors() {
                let name = match v {
                    Var::Holo(i) => format!("b{}", i + 1),
                    Var::Anti(i) => format!("B{}", i + 1),
                };
                vars.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            let (neg, mag) = if c.is_real() && c.re < num::zero() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            let coeff = if mag.is_real() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            let body = if vars.is_empty() {
                coeff
            } else if mag.is_one() {
                vars.join("*")
            } else {
                format!("{}*{}", coeff, vars.join("*"))
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                write!(f, "{body}")?;
            } else {
                write!(f, " {} {body}", if neg { "-" } else { "+" })?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
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
    fn product_and_derivative() {
        let p = &(&b(0) * &b(1)) + &b(0).pow(2);
        assert_eq!(p.d(0), &b(1) + &b(0).scale_int(2));
        assert_eq!(p.d(1), b(0));
        assert!(p.dbar(0).is_zero());
    }

    #[test]
    fn conjugation_swaps_families() {
        let p = &b(0) * &Poly::constant(GaussRat::i());
        let c = p.conj();
        assert_eq!(c, &Poly::bar_var(0) * &Poly::constant(-GaussRat::i()));
        assert_eq!(c.conj(), p);
    }

    #[test]
    fn laurent_substitution() {
        let inv = b(0).monomial_inverse().unwrap();
        let p = &b(0).pow(2) + &inv;
        let q = p.compose_holo(std::slice::from_ref(&inv)).unwrap();
        assert_eq!(q, &inv.pow(2) + &b(0));
        let bad = inv.compose_holo(&[&b(0) + &Poly::one()]);
        assert!(bad.is_err());
    }

    #[test]
    fn display_uses_grammar() {
        let p = &b(0).pow(2) - &Poly::bar_var(1).scale(&GaussRat::rat(1, 2));
        assert_eq!(p.to_string(), "b1^2 - 1/2*B2");
    }
}
