//! Truncated q-series with a rational exponent offset, the Dedekind η
//! function, Eisenstein series and level-one modularity decomposition.

use crate::polycx::gauss::{q, qi, Q};
use crate::{Error, Result};
use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub const DEFAULT_ORDER: usize = 10;

/// `q^offset · Σ_{n=0}^{order} coeffs[n] qⁿ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries {
    offset: Q,
    coeffs: Vec<Q>,
}

impl QSeries {
    pub fn new(offset: Q, coeffs: Vec<Q>) -> Self {
        assert!(!coeffs.is_empty(), "a q-series keeps at least the degree-0 slot");
        QSeries { offset, coeffs }
    }

    pub fn from_ints(offset: Q, coeffs: &[i64]) -> Self {
        QSeries::new(offset, coeffs.iter().map(|c| qi(*c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        QSeries::new(Q::zero(), vec![Q::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        QSeries::constant(Q::one(), order)
    }

    pub fn constant(c: Q, order: usize) -> Self {
        let mut v = vec![Q::zero(); order + 1];
        v[0] = c;
        QSeries::new(Q::zero(), v)
    }

    /// `q^offset · 1`.
    pub fn monomial(offset: Q, order: usize) -> Self {
        let mut s = QSeries::one(order);
        s.offset = offset;
        s
    }

    pub fn offset(&self) -> &Q {
        &self.offset
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Coefficient of `q^{offset + n}`.
    pub fn coeff(&self, n: usize) -> Q {
        self.coeffs.get(n).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn with_offset(&self, offset: Q) -> Self {
        QSeries { offset, coeffs: self.coeffs.clone() }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(order + 1, Q::zero());
        QSeries { offset: self.offset.clone(), coeffs: c }
    }

    pub fn scale(&self, c: &Q) -> Self {
        QSeries { offset: self.offset.clone(), coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Last known absolute exponent `offset + order`.
    fn horizon(&self) -> Q {
        &self.offset + qi(self.order() as i64)
    }

    fn combine(&self, o: &QSeries, sign: i64) -> Result<QSeries> {
        let diff = &o.offset - &self.offset;
        if !diff.is_integer() {
            return Err(Error::Domain(format!(
                "offsets {} and {} differ by a non-integer",
                self.offset, o.offset
            )));
        }
        let offset = self.offset.clone().min(o.offset.clone());
        let horizon = self.horizon().min(o.horizon());
        let order = (&horizon - &offset).to_integer();
        if order.is_negative() {
            return Err(Error::Domain("aligned series share no known coefficients".into()));
        }
        let order = order.to_usize().expect("small order");
        let shift_self = (&self.offset - &offset).to_integer().to_usize().unwrap();
        let shift_o = (&o.offset - &offset).to_integer().to_usize().unwrap();
        let mut coeffs = vec![Q::zero(); order + 1];
        for (n, c) in coeffs.iter_mut().enumerate() {
            if n >= shift_self {
                *c += self.coeff(n - shift_self);
            }
            if n >= shift_o {
                let t = o.coeff(n - shift_o);
                if sign > 0 {
                    *c += t;
                } else {
                    *c -= t;
                }
            }
        }
        Ok(QSeries { offset, coeffs })
    }

    pub fn add(&self, o: &QSeries) -> Result<QSeries> {
        self.combine(o, 1)
    }

    pub fn sub(&self, o: &QSeries) -> Result<QSeries> {
        self.combine(o, -1)
    }

    pub fn mul(&self, o: &QSeries) -> QSeries {
        let order = self.order().min(o.order());
        let mut coeffs = vec![Q::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(order + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QSeries { offset: &self.offset + &o.offset, coeffs }
    }

    pub fn invert(&self) -> Result<QSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::Domain("inverse needs a nonzero degree-0 coefficient".into()));
        }
        let n = self.order();
        let inv0 = c0.recip();
        let mut out = vec![Q::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut s = Q::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &out[k - j];
            }
            out[k] = -(s * &inv0);
        }
        Ok(QSeries { offset: -self.offset.clone(), coeffs: out })
    }

    pub fn pow(&self, e: i64) -> Result<QSeries> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut acc = QSeries::one(self.order());
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// First index where two series with equal offsets differ, within the shared order.
    pub fn first_difference(&self, o: &QSeries) -> Option<usize> {
        if self.offset != o.offset {
            return Some(0);
        }
        (0..=self.order().min(o.order())).find(|n| self.coeff(*n) != o.coeff(*n))
    }
}

/// `η(q)^m = q^{m/24} ∏ (1 − qⁿ)^m`.
pub fn eta_power(m: i64, order: usize) -> QSeries {
    // ∏(1 − qⁿ) via Euler's pentagonal theorem, then raised to |m|.
    let mut base = vec![Q::zero(); order + 1];
    let mut k: i64 = 0;
    loop {
        let mut any = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = kk * (3 * kk - 1) / 2;
            if e as usize <= order {
                base[e as usize] += if kk.is_even() { Q::one() } else { -Q::one() };
                any = true;
            }
        }
        if !any && k > 0 {
            break;
        }
        k += 1;
    }
    let prod = QSeries::new(Q::zero(), base);
    prod.pow(m).expect("leading coefficient 1").with_offset(q(m, 24))
}

fn divisor_power_sum(n: u64, k: u32) -> BigInt {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| BigInt::from(d).pow(k)).sum()
}

/// `E4` or `E6`.
pub fn eisenstein(k: u32, order: usize) -> Result<QSeries> {
    let c = match k {
        4 => 240,
        6 => -504,
        _ => return Err(Error::Input(format!("unsupported Eisenstein weight {k}"))),
    };
    let mut coeffs = vec![Q::zero(); order + 1];
    coeffs[0] = Q::one();
    for (n, slot) in coeffs.iter_mut().enumerate().skip(1) {
        *slot = Q::from_integer(divisor_power_sum(n as u64, k - 1) * c);
    }
    Ok(QSeries::new(Q::zero(), coeffs))
}

/// `E4^a E6^b` with `4a + 6b = weight`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisMonomial {
    pub e4: u32,
    pub e6: u32,
}

impl fmt::Display for BasisMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("E4", self.e4), ("E6", self.e6)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Level-one modular forms of a given weight.
#[derive(Clone, Debug)]
pub struct ModularWeightBasis {
    pub weight: u32,
    pub basis: Vec<BasisMonomial>,
}

impl ModularWeightBasis {
    pub fn new(weight: u32) -> Result<Self> {
        if weight % 2 == 1 {
            return Err(Error::Input(format!("odd weight {weight}")));
        }
        let basis = (0..=weight / 4)
            .filter(|a| (weight - 4 * a).is_multiple_of(6))
            .map(|a| BasisMonomial { e4: a, e6: (weight - 4 * a) / 6 })
            .collect();
        Ok(ModularWeightBasis { weight, basis })
    }

    pub fn series(&self, m: BasisMonomial, order: usize) -> QSeries {
        let e4 = eisenstein(4, order).unwrap();
        let e6 = eisenstein(6, order).unwrap();
        e4.pow(m.e4 as i64).unwrap().mul(&e6.pow(m.e6 as i64).unwrap())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decomposition {
    /// Exact combination reproducing every coefficient; zero entries omitted.
    Member(BTreeMap<BasisMonomial, Q>),
    /// Not enough coefficients to pin down the combination.
    Underdetermined { known: usize, needed: usize },
    /// Best fit on the determining coefficients fails at `degree`.
    NonMember { degree: usize, residual: Q },
}

/// Writes `series` in the basis `E4^a E6^b` of weight `weight`, to order `order`.
pub fn modularity_decompose(series: &QSeries, weight: u32, order: usize) -> Result<Decomposition> {
    if !series.offset.is_zero() {
        return Err(Error::Domain("modularity decomposition needs offset 0".into()));
    }
    if order > series.order() {
        return Err(Error::Domain(format!("series known only to order {}", series.order())));
    }
    let b = ModularWeightBasis::new(weight)?;
    let cols: Vec<QSeries> = b.basis.iter().map(|m| b.series(*m, order)).collect();
    let rows = order + 1;
    let n = cols.len();
    // Gaussian elimination on the (rows × n) system.
    let mut mat: Vec<Vec<Q>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Q> = cols.iter().map(|c| c.coeff(r)).collect();
            row.push(series.coeff(r));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows).find(|i| !mat[*i][c].is_zero()) else { continue };
        mat.swap(r, p);
        let inv = mat[r][c].recip();
        for x in mat[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                let pr = mat[r].clone();
                for (x, y) in mat[i].iter_mut().zip(pr.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() < n {
        return Ok(Decomposition::Underdetermined { known: rows, needed: n });
    }
    let sol: Vec<Q> = (0..n).map(|i| mat[i][n].clone()).collect();
    let mut recombined = QSeries::zero(order);
    for (c, s) in cols.iter().zip(&sol) {
        recombined = recombined.add(&c.scale(s))?;
    }
    let residual = series.truncate(order).sub(&recombined)?;
    if let Some(deg) = (0..=order).find(|k| !residual.coeff(*k).is_zero()) {
        return Ok(Decomposition::NonMember { degree: deg, residual: residual.coeff(deg) });
    }
    Ok(Decomposition::Member(
        b.basis.into_iter().zip(sol).filter(|(_, s)| !s.is_zero()).collect(),
    ))
}

/// JSON shape `{offset_num, offset_den, order, coeffs: ["n/d", ...]}`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct QSeriesJson {
    pub offset_num: String,
    pub offset_den: String,
    pub order: usize,
    pub coeffs: Vec<String>,
}

impl From<&QSeries> for QSeriesJson {
    fn from(s: &QSeries) -> Self {
        QSeriesJson {
            offset_num: s.offset.numer().to_string(),
            offset_den: s.offset.denom().to_string(),
            order: s.order(),
            coeffs: s.coeffs.iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect(),
        }
    }
}

impl TryFrom<&QSeriesJson> for QSeries {
    type Error = Error;
    fn try_from(j: &QSeriesJson) -> Result<QSeries> {
        let int = |s: &str| s.trim().parse::<BigInt>().map_err(|e| Error::Input(format!("{s}: {e}")));
        let den = int(&j.offset_den)?;
        if den.is_zero() {
            return Err(Error::Input("zero offset denominator".into()));
        }
        let offset = Q::new(int(&j.offset_num)?, den);
        let coeffs = j
            .coeffs
            .iter()
            .map(|c| match c.split_once('/') {
                Some((n, d)) => {
                    let d = int(d)?;
                    if d.is_zero() {
                        return Err(Error::Input(format!("zero denominator in {c}")));
                    }
                    Ok(Q::new(int(n)?, d))
                }
                None => Ok(Q::from_integer(int(c)?)),
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != j.order + 1 {
            return Err(Error::Input("coefficient count disagrees with order".into()));
        }
        Ok(QSeries::new(offset, coeffs))
    }
}

impl Serialize for QSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QSeriesJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = QSeriesJson::deserialize(d)?;
        QSeries::try_from(&j).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.offset.is_zero() {
            write!(f, "q^({}) * (", self.offset)?;
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() { (true, -c.clone()) } else { (false, c.clone()) };
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let body = match (n, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "q".to_string(),
                (1, false) => format!("{mag}q"),
                (_, true) => format!("q^{n}"),
                (_, false) => format!("{mag}q^{n}"),
            };
            write!(f, "{sep}{body}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)?;
        if !self.offset.is_zero() {
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let one_minus_q = QSeries::from_ints(Q::zero(), &[1, -1, 0, 0, 0, 0]);
        let inv = one_minus_q.invert().unwrap();
        assert_eq!(inv, QSeries::from_ints(Q::zero(), &[1, 1, 1, 1, 1, 1]));
        assert_eq!(one_minus_q.mul(&inv), QSeries::one(5));
    }

    #[test]
    fn offsets_add_under_product() {
        let a = QSeries::monomial(q(1, 24), 3);
        assert_eq!(*a.mul(&a).offset(), q(1, 12));
        assert!(a.add(&QSeries::one(3)).is_err());
    }

    #[test]
    fn discriminant_coefficients() {
        let d = eta_power(24, 4);
        assert_eq!(*d.offset(), Q::one());
        assert_eq!(d, QSeries::from_ints(Q::one(), &[1, -24, 252, -1472, 4830]));
        assert!(eta_power(0, 5) == QSeries::one(5));
        assert_eq!(eta_power(2, 2).mul(&eta_power(-2, 2)), QSeries::one(2));
    }

    #[test]
    fn eisenstein_oracles() {
        assert_eq!(eisenstein(4, 3).unwrap(), QSeries::from_ints(Q::zero(), &[1, 240, 2160, 6720]));
        assert_eq!(eisenstein(6, 1).unwrap(), QSeries::from_ints(Q::zero(), &[1, -504]));
        assert_eq!(eisenstein(4, 0).unwrap(), QSeries::one(0));
        assert!(eisenstein(8, 2).is_err());
    }

    #[test]
    fn decomposition_outcomes() {
        let e4 = eisenstein(4, 12).unwrap();
        let e6 = eisenstein(6, 12).unwrap();
        let e4sq = e4.mul(&e4);
        let Decomposition::Member(m) = modularity_decompose(&e4sq, 8, 8).unwrap() else { panic!() };
        assert_eq!(m.len(), 1);
        assert_eq!(m[&BasisMonomial { e4: 2, e6: 0 }], Q::one());

        let disc = e4.pow(3).unwrap().sub(&e6.pow(2).unwrap()).unwrap();
        let Decomposition::Member(m) = modularity_decompose(&disc, 12, 12).unwrap() else { panic!() };
        assert_eq!(m[&BasisMonomial { e4: 3, e6: 0 }], Q::one());
        assert_eq!(m[&BasisMonomial { e4: 0, e6: 2 }], -Q::one());

        assert_eq!(
            modularity_decompose(&QSeries::zero(6), 6, 6).unwrap(),
            Decomposition::Member(BTreeMap::new())
        );
        assert!(matches!(
            modularity_decompose(&disc, 12, 0).unwrap(),
            Decomposition::Underdetermined { .. }
        ));
        assert!(matches!(
            modularity_decompose(&e4, 6, 6).unwrap(),
            Decomposition::NonMember { degree: 1, .. }
        ));
    }

    #[test]
    fn json_round_trip() {
        let s = eta_power(-2, 4);
        let text = serde_json::to_string(&s).unwrap();
        let back: QSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
