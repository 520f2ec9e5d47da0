//! Characteristic-class calculus over formal Chern roots: the Witten genus,
//! Todd and Â genera, the CDO character and the identity relating them.
//!
//! Symmetric expressions in the roots are stored in the power-sum basis and
//! converted to Chern monomials by Newton's identities only when integrated.

use crate::polycx::gauss::{q, qi, Q};
use crate::qseries::{eta_power, QSeries};
use crate::{Error, Result};
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A partition, parts in weakly decreasing order.
pub type Partition = Vec<u32>;

/// All partitions of `n`, parts decreasing.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn merge(a: &Partition, b: &Partition) -> Partition {
    let mut v: Vec<u32> = a.iter().chain(b).copied().collect();
    v.sort_unstable_by(|x, y| y.cmp(x));
    v
}

/// Canonical key for a Chern monomial, e.g. `c1^2*c2`; `1` for the empty product.
pub fn chern_key(p: &Partition) -> String {
    if p.is_empty() {
        return "1".into();
    }
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for k in p {
        *counts.entry(*k).or_default() += 1;
    }
    counts
        .iter()
        .map(|(k, e)| if *e == 1 { format!("c{k}") } else { format!("c{k}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

/// Parses `c1^2*c2`, `c1^2c2`, `c2*c1^2` or `1`.
pub fn parse_chern_key(s: &str) -> Result<Partition> {
    let t = s.trim();
    if t == "1" {
        return Ok(Vec::new());
    }
    let bytes = t.as_bytes();
    let mut i = 0;
    let mut parts = Vec::new();
    let num = |i: &mut usize| -> Option<u32> {
        let start = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        t[start..*i].parse().ok()
    };
    while i < bytes.len() {
        match bytes[i] {
            b'*' | b' ' => i += 1,
            b'c' => {
                i += 1;
                let idx = num(&mut i).filter(|k| *k > 0).ok_or_else(|| bad_key(s))?;
                let mut exp = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    exp = num(&mut i).filter(|e| *e > 0).ok_or_else(|| bad_key(s))?;
                }
                parts.extend(std::iter::repeat_n(idx, exp as usize));
            }
            _ => return Err(bad_key(s)),
        }
    }
    if parts.is_empty() {
        return Err(bad_key(s));
    }
    parts.sort_unstable_by(|x, y| y.cmp(x));
    Ok(parts)
}

fn bad_key(s: &str) -> Error {
    Error::Input(format!("malformed Chern monomial '{s}'"))
}

/// Chern numbers `∫ c_λ` for every partition `λ` of `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernData {
    d: u32,
    numbers: BTreeMap<Partition, i64>,
}

impl ChernData {
    pub fn new(d: u32, numbers: BTreeMap<Partition, i64>) -> Result<Self> {
        for p in partitions(d) {
            if !numbers.contains_key(&p) {
                return Err(Error::Input(format!("missing Chern number for {}", chern_key(&p))));
            }
        }
        if let Some(p) = numbers.keys().find(|p| p.iter().sum::<u32>() != d) {
            return Err(Error::Input(format!("{} is not a partition of {d}", chern_key(p))));
        }
        Ok(ChernData { d, numbers })
    }

    pub fn point() -> Self {
        ChernData::new(0, [(Vec::new(), 1)].into_iter().collect()).unwrap()
    }

    /// Parses `{"c1^2": 0, "c2": 24}`-style entries.
    pub fn from_pairs<'a>(d: u32, pairs: impl IntoIterator<Item = (&'a str, i64)>) -> Result<Self> {
        let mut numbers = BTreeMap::new();
        for (k, v) in pairs {
            numbers.insert(parse_chern_key(k)?, v);
        }
        ChernData::new(d, numbers)
    }

    /// K3-type data: `d = 2`, `c1² = 0`, `c2 = 24`.
    pub fn k3() -> Self {
        ChernData::from_pairs(2, [("c1^2", 0), ("c2", 24)]).unwrap()
    }

    pub fn zero(d: u32) -> Self {
        ChernData::new(d, partitions(d).into_iter().map(|p| (p, 0)).collect()).unwrap()
    }

    pub fn dim(&self) -> u32 {
        self.d
    }

    pub fn number(&self, p: &Partition) -> Result<i64> {
        self.numbers
            .get(p)
            .copied()
            .ok_or_else(|| Error::Input(format!("missing Chern number for {}", chern_key(p))))
    }

    pub fn numbers(&self) -> &BTreeMap<Partition, i64> {
        &self.numbers
    }

    /// True when every Chern number involving `c1` vanishes.
    pub fn is_c1_free(&self) -> bool {
        self.numbers.iter().all(|(p, v)| !p.contains(&1) || *v == 0)
    }

    pub fn to_json(&self) -> ChernJson {
        ChernJson {
            d: self.d,
            chern_numbers: self.numbers.iter().map(|(p, v)| (chern_key(p), *v)).collect(),
        }
    }

    pub fn from_json(j: &ChernJson) -> Result<Self> {
        ChernData::from_pairs(j.d, j.chern_numbers.iter().map(|(k, v)| (k.as_str(), *v)))
    }
}

/// On-disk shape `{d, chern_numbers: {"c1^2": 0, "c2": 24}}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ChernJson {
    pub d: u32,
    pub chern_numbers: BTreeMap<String, i64>,
}

/// Polynomial in Chern classes, keyed by the multiset of class indices.
type ChernPoly = BTreeMap<Partition, Q>;

fn chern_mul(a: &ChernPoly, b: &ChernPoly) -> ChernPoly {
    let mut out = ChernPoly::new();
    for (pa, ca) in a {
        for (pb, cb) in b {
            let e = out.entry(merge(pa, pb)).or_insert_with(Q::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Newton's identities: `p_k` for `k = 1..=d` as polynomials in `c_1..c_d`.
fn power_sums_in_chern(d: u32) -> Vec<ChernPoly> {
    let e = |k: u32| -> ChernPoly { [(vec![k], Q::one())].into_iter().collect() };
    let mut p: Vec<ChernPoly> = vec![ChernPoly::new()];
    for k in 1..=d {
        let sign_k = if k % 2 == 1 { Q::one() } else { -Q::one() };
        let mut pk: ChernPoly = [(vec![k], sign_k * qi(k as i64))].into_iter().collect();
        for i in 1..k {
            let s = if i % 2 == 1 { Q::one() } else { -Q::one() };
            for (m, c) in chern_mul(&e(i), &p[(k - i) as usize]) {
                *pk.entry(m).or_insert_with(Q::zero) += c * &s;
            }
        }
        pk.retain(|_, v| !v.is_zero());
        p.push(pk);
    }
    p
}

/// `∫ p_λ` for every partition `λ` of `d`.
fn power_sum_integrals(data: &ChernData) -> Result<BTreeMap<Partition, Q>> {
    let ps = power_sums_in_chern(data.d);
    let mut out = BTreeMap::new();
    for lam in partitions(data.d) {
        let mut poly: ChernPoly = [(Vec::new(), Q::one())].into_iter().collect();
        for k in &lam {
            poly = chern_mul(&poly, &ps[*k as usize]);
        }
        let mut total = Q::zero();
        for (m, c) in poly {
            total += c * qi(data.number(&m)?);
        }
        out.insert(lam, total);
    }
    Ok(out)
}

/// Symmetric function in the roots, in the power-sum basis, with q-series
/// coefficients; truncated at root degree `deg` and q-order `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymExpansion {
    deg: u32,
    order: usize,
    terms: BTreeMap<Partition, QSeries>,
}

impl SymExpansion {
    pub fn zero(deg: u32, order: usize) -> Self {
        SymExpansion { deg, order, terms: BTreeMap::new() }
    }

    pub fn constant(c: QSeries, deg: u32) -> Self {
        let order = c.order();
        let mut s = SymExpansion::zero(deg, order);
        s.add_term(Vec::new(), c);
        s
    }

    pub fn one(deg: u32, order: usize) -> Self {
        SymExpansion::constant(QSeries::one(order), deg)
    }

    /// `c · p_k`.
    pub fn power_sum(k: u32, c: QSeries, deg: u32) -> Self {
        let order = c.order();
        let mut s = SymExpansion::zero(deg, order);
        if k <= deg {
            s.add_term(vec![k], c);
        }
        s
    }

    fn add_term(&mut self, p: Partition, c: QSeries) {
        if p.iter().sum::<u32>() > self.deg {
            return;
        }
        let c = c.truncate(self.order);
        let slot = self.terms.entry(p.clone()).or_insert_with(|| QSeries::zero(self.order));
        *slot = slot.add(&c).expect("offset-0 coefficients");
        if slot.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, QSeries> {
        &self.terms
    }

    pub fn add(&self, o: &SymExpansion) -> SymExpansion {
        let mut out = self.clone();
        out.order = self.order.min(o.order);
        for (p, c) in &o.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, o: &SymExpansion) -> SymExpansion {
        let mut out = SymExpansion::zero(self.deg.min(o.deg), self.order.min(o.order));
        for (pa, ca) in &self.terms {
            for (pb, cb) in &o.terms {
                if pa.iter().sum::<u32>() + pb.iter().sum::<u32>() <= out.deg {
                    out.add_term(merge(pa, pb), ca.mul(cb));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &QSeries) -> SymExpansion {
        let mut out = SymExpansion::zero(self.deg, self.order.min(c.order()));
        for (p, a) in &self.terms {
            out.add_term(p.clone(), a.mul(c));
        }
        out
    }

    /// `exp(X)` for `X` without constant term.
    pub fn exp(&self) -> Result<SymExpansion> {
        if self.terms.contains_key(&Vec::new()) {
            return Err(Error::Domain("exp needs a series without constant term".into()));
        }
        let mut acc = SymExpansion::one(self.deg, self.order);
        let mut power = SymExpansion::one(self.deg, self.order);
        for n in 1..=self.deg {
            power = power.mul(self);
            let inv_fact = QSeries::constant(q(1, 1) / factorial(n), self.order);
            acc = acc.add(&power.scale(&inv_fact));
        }
        Ok(acc)
    }

    /// Multiplicative class `∏ F(x_i) = exp(Σ_k c_k p_k)` from `log F = Σ_{k≥1} c_k x^k`.
    pub fn multiplicative(log_coeffs: &[QSeries], deg: u32, order: usize) -> Result<SymExpansion> {
        let mut s = SymExpansion::zero(deg, order);
        for (k, c) in log_coeffs.iter().enumerate().skip(1) {
            s = s.add(&SymExpansion::power_sum(k as u32, c.truncate(order), deg));
        }
        s.exp()
    }

    /// Chern character `Σ_i e^{±x_i}` of the bundle with roots `±x_i`.
    pub fn chern_character(sign: i64, rank: u32, deg: u32, order: usize) -> SymExpansion {
        let mut s = SymExpansion::constant(QSeries::constant(qi(rank as i64), order), deg);
        for k in 1..=deg {
            let c = qi(sign).pow(k as i32) / factorial(k);
            s = s.add(&SymExpansion::power_sum(k, QSeries::constant(c, order), deg));
        }
        s
    }
}

fn factorial(n: u32) -> Q {
    (1..=n).fold(Q::one(), |a, k| a * qi(k as i64))
}

/// Pairs the degree-`d` part of `expr` with the Chern numbers.
pub fn integrate(expr: &SymExpansion, data: &ChernData) -> Result<QSeries> {
    if expr.deg < data.d {
        return Err(Error::Domain(format!("expression truncated below degree {}", data.d)));
    }
    let ints = power_sum_integrals(data)?;
    let mut acc = QSeries::zero(expr.order);
    for (p, c) in &expr.terms {
        if p.iter().sum::<u32>() == data.d {
            acc = acc.add(&c.scale(&ints[p]))?;
        }
    }
    Ok(acc)
}

// Univariate power series in x with rational coefficients.

fn xs_inverse(f: &[Q]) -> Vec<Q> {
    let n = f.len();
    let mut g = vec![Q::zero(); n];
    g[0] = f[0].recip();
    for k in 1..n {
        let s: Q = (1..=k).map(|j| &f[j] * &g[k - j]).sum();
        g[k] = -(s * &g[0]);
    }
    g
}

fn xs_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().min(b.len());
    let mut out = vec![Q::zero(); n];
    for i in 0..n {
        for j in 0..n - i {
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

/// `log f` for `f(0) = 1`, as `∫ f'/f`.
fn xs_log(f: &[Q]) -> Vec<Q> {
    let n = f.len();
    let deriv: Vec<Q> = (0..n).map(|k| if k + 1 < n { &f[k + 1] * qi(k as i64 + 1) } else { Q::zero() }).collect();
    let ratio = xs_mul(&deriv, &xs_inverse(f));
    let mut out = vec![Q::zero(); n];
    for k in 1..n {
        out[k] = &ratio[k - 1] / qi(k as i64);
    }
    out
}

/// Coefficients of `log(x / (1 − e^{−x}))` up to `x^deg`.
fn log_todd(deg: u32) -> Vec<Q> {
    let n = deg as usize + 1;
    // (1 − e^{−x})/x = Σ (−1)^k x^k/(k+1)!
    let f: Vec<Q> = (0..n)
        .map(|k| {
            let s = if k % 2 == 0 { Q::one() } else { -Q::one() };
            s / factorial(k as u32 + 1)
        })
        .collect();
    xs_log(&xs_inverse(&f))
}

/// Coefficients of `log((x/2)/sinh(x/2))` up to `x^deg`.
fn log_ahat(deg: u32) -> Vec<Q> {
    let n = deg as usize + 1;
    // sinh(x/2)/(x/2) = Σ x^{2k} / (4^k (2k+1)!)
    let f: Vec<Q> = (0..n)
        .map(|k| if k % 2 == 0 { Q::one() / (qi(2).pow(k as i32) * factorial(k as u32 + 1)) } else { Q::zero() })
        .collect();
    xs_log(&f).into_iter().map(|c| -c).collect()
}

/// `log ∏_ℓ (1−q^ℓ)² / ((1−q^ℓe^x)(1−q^ℓe^{−x}))`: the `x^k` coefficient is
/// `(2/k!) Σ σ_{k−1}(n) qⁿ` for even `k ≥ 2` and zero otherwise.
fn log_theta_factor(deg: u32, order: usize) -> Vec<QSeries> {
    (0..=deg)
        .map(|k| {
            if k < 2 || k % 2 == 1 {
                return QSeries::zero(order);
            }
            let mut c = vec![Q::zero(); order + 1];
            for (n, slot) in c.iter_mut().enumerate().skip(1) {
                let sigma: Q = (1..=n as i64).filter(|m| n as i64 % m == 0).map(|m| qi(m).pow(k as i32 - 1)).sum();
                *slot = sigma * qi(2) / factorial(k);
            }
            QSeries::new(Q::zero(), c)
        })
        .collect()
}

fn rational_coeffs(v: Vec<Q>, order: usize) -> Vec<QSeries> {
    v.into_iter().map(|c| QSeries::constant(c, order)).collect()
}

fn add_coeffs(a: &[QSeries], b: &[QSeries]) -> Vec<QSeries> {
    a.iter().zip(b).map(|(x, y)| x.add(y).expect("offset 0")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// `∫ Â(TM)·ch(⊗ Sym_{q^k}(TM⊗C))·∏(1−q^k)^{2d}`.
    Witten,
    /// `q^{−d/12} ∫ Td·ch(⊗ Sym_{q^ℓ}(Ω¹ ⊕ T))`.
    CdoCharacter,
    /// `∫ e^{c1/2} W / η^{2d}`.
    WittenOverEta,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenusSeries {
    pub value: QSeries,
    pub provenance: Provenance,
}

/// The Witten genus to q-order `order`; offset 0 and `q⁰ = Â`.
pub fn witten_genus(data: &ChernData, order: usize) -> Result<GenusSeries> {
    let d = data.d;
    let logs = add_coeffs(&rational_coeffs(log_ahat(d), order), &log_theta_factor(d, order));
    let expr = SymExpansion::multiplicative(&logs, d, order)?;
    Ok(GenusSeries { value: integrate(&expr, data)?, provenance: Provenance::Witten })
}

/// `(Todd, Â)`.
pub fn todd_and_ahat(data: &ChernData) -> Result<(Q, Q)> {
    let d = data.d;
    let td = SymExpansion::multiplicative(&rational_coeffs(log_todd(d), 0), d, 0)?;
    let ah = SymExpansion::multiplicative(&rational_coeffs(log_ahat(d), 0), d, 0)?;
    Ok((integrate(&td, data)?.coeff(0), integrate(&ah, data)?.coeff(0)))
}

/// `∫ Td · E` (Hirzebruch–Riemann–Roch) for a symmetric expression `E`.
pub fn hrr(data: &ChernData, ch: &SymExpansion) -> Result<QSeries> {
    let d = data.d;
    let td = SymExpansion::multiplicative(&rational_coeffs(log_todd(d), ch.order), d, ch.order)?;
    integrate(&td.mul(ch), data)
}

/// Per-root factor `∏_ℓ 1/((1 − q^ℓ e^{−x})(1 − q^ℓ e^x))` expanded directly
/// as a power series in `x` with q-series coefficients.
fn oscillator_root_factor(deg: u32, order: usize) -> Vec<QSeries> {
    let n = deg as usize + 1;
    let mut acc: Vec<QSeries> = (0..n).map(|k| if k == 0 { QSeries::one(order) } else { QSeries::zero(order) }).collect();
    for l in 1..=order {
        for sign in [-1i64, 1] {
            // 1/(1 − q^l e^{sx}) = Σ_m q^{lm} e^{smx}
            let mut f: Vec<QSeries> = vec![QSeries::zero(order); n];
            for m in 0..=order / l {
                for (k, slot) in f.iter_mut().enumerate() {
                    let mut c = vec![Q::zero(); order + 1];
                    c[l * m] = (qi(sign) * qi(m as i64)).pow(k as i32) / factorial(k as u32);
                    *slot = slot.add(&QSeries::new(Q::zero(), c)).unwrap();
                }
            }
            let mut next = vec![QSeries::zero(order); n];
            for i in 0..n {
                for j in 0..n - i {
                    next[i + j] = next[i + j].add(&acc[i].mul(&f[j])).unwrap();
                }
            }
            acc = next;
        }
    }
    acc
}

/// Logarithm of a power series in `x` with q-series coefficients and
/// invertible constant term, normalised by that constant.
fn qx_log(f: &[QSeries]) -> Result<(QSeries, Vec<QSeries>)> {
    let c0 = f[0].clone();
    let inv0 = c0.invert()?;
    let g: Vec<QSeries> = f.iter().map(|c| c.mul(&inv0)).collect();
    let n = g.len();
    let order = c0.order();
    // h = log g via h' = g'/g, with 1/g computed by recursion.
    let mut ginv = vec![QSeries::zero(order); n];
    ginv[0] = QSeries::one(order);
    for k in 1..n {
        let mut s = QSeries::zero(order);
        for j in 1..=k {
            s = s.add(&g[j].mul(&ginv[k - j]))?;
        }
        ginv[k] = s.scale(&-Q::one());
    }
    let mut h = vec![QSeries::zero(order); n];
    for k in 1..n {
        let mut s = QSeries::zero(order);
        for j in 1..=k {
            s = s.add(&g[j].scale(&qi(j as i64)).mul(&ginv[k - j]))?;
        }
        h[k] = s.scale(&(Q::one() / qi(k as i64)));
    }
    Ok((c0, h))
}

/// The CDO character `q^{−d/12} Σ_k q^k χ((D^ch)_k)` by Hirzebruch–Riemann–Roch.
pub fn cdo_character(data: &ChernData, order: usize) -> Result<GenusSeries> {
    let d = data.d;
    let (c0, logs) = qx_log(&oscillator_root_factor(d, order))?;
    let logs = add_coeffs(&logs, &rational_coeffs(log_todd(d), order));
    let expr = SymExpansion::multiplicative(&logs, d, order)?;
    let value = integrate(&expr, data)?.mul(&c0.pow(d as i64)?).with_offset(q(-(d as i64), 12));
    Ok(GenusSeries { value, provenance: Provenance::CdoCharacter })
}

/// `∫ e^{c1/2} W(TM) / η^{2d}`, assembled from the Witten-genus integrand.
pub fn witten_over_eta(data: &ChernData, order: usize) -> Result<GenusSeries> {
    let d = data.d;
    let logs = add_coeffs(&rational_coeffs(log_ahat(d), order), &log_theta_factor(d, order));
    let w = SymExpansion::multiplicative(&logs, d, order)?;
    let half_c1 = SymExpansion::power_sum(1, QSeries::constant(q(1, 2), order), d).exp()?;
    let integral = integrate(&half_c1.mul(&w), data)?;
    let value = integral.mul(&eta_power(-2 * d as i64, order));
    Ok(GenusSeries { value, provenance: Provenance::WittenOverEta })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharacterCheck {
    pub character: QSeries,
    pub via_witten: QSeries,
    /// `(index, character coefficient, Witten-side coefficient)` at the first mismatch.
    pub first_difference: Option<(usize, Q, Q)>,
}

impl CharacterCheck {
    pub fn holds(&self) -> bool {
        self.first_difference.is_none()
    }
}

pub fn character_identity_check(data: &ChernData, order: usize) -> Result<CharacterCheck> {
    let character = cdo_character(data, order)?.value;
    let via_witten = witten_over_eta(data, order)?.value;
    let first_difference = character
        .first_difference(&via_witten)
        .map(|n| (n, character.coeff(n), via_witten.coeff(n)));
    Ok(CharacterCheck { character, via_witten, first_difference })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Condition {
    pub label: String,
    pub value: String,
    pub holds: bool,
}

/// Chern-number consequences of `ch1 = 0` and `ch2 = 0` in top degree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ObstructionReport {
    pub ch1_conditions: Vec<Condition>,
    pub ch2_conditions: Vec<Condition>,
    pub ch1_hold: bool,
    pub ch2_hold: bool,
    pub note: &'static str,
}

pub fn obstruction_predicates(data: &ChernData) -> Result<ObstructionReport> {
    let d = data.d;
    let mut ch1 = Vec::new();
    for p in partitions(d).into_iter().filter(|p| p.contains(&1)) {
        let v = data.number(&p)?;
        ch1.push(Condition { label: format!("∫{}", chern_key(&p)), value: v.to_string(), holds: v == 0 });
    }
    let mut ch2 = Vec::new();
    if d >= 2 {
        for mu in partitions(d - 2) {
            let v = data.number(&merge(&mu, &vec![1, 1]))? - 2 * data.number(&merge(&mu, &vec![2]))?;
            let rest = if mu.is_empty() { String::new() } else { format!("·{}", chern_key(&mu)) };
            ch2.push(Condition { label: format!("∫(c1^2-2*c2){rest}"), value: v.to_string(), holds: v == 0 });
        }
    }
    Ok(ObstructionReport {
        ch1_hold: ch1.iter().all(|c| c.holds),
        ch2_hold: ch2.iter().all(|c| c.holds),
        ch1_conditions: ch1,
        ch2_conditions: ch2,
        note: "necessary conditions only: vanishing of the classes is not decidable from Chern numbers",
    })
}

impl fmt::Display for ChernData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.numbers.iter().map(|(p, v)| format!("{}={v}", chern_key(p))).collect();
        write!(f, "d={} {{{}}}", self.d, parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn key_grammar() {
        assert_eq!(parse_chern_key("c1^2*c2").unwrap(), vec![2, 1, 1]);
        assert_eq!(parse_chern_key("c1^2c2").unwrap(), vec![2, 1, 1]);
        assert_eq!(chern_key(&vec![2, 1, 1]), "c1^2*c2");
        assert!(parse_chern_key("c0").is_err());
        assert!(parse_chern_key("x2").is_err());
    }

    #[test]
    fn missing_partition_rejected() {
        assert!(ChernData::from_pairs(2, [("c2", 24)]).is_err());
    }

    #[test]
    fn elementary_integrals() {
        let data = ChernData::from_pairs(1, [("c1", 3)]).unwrap();
        let e1 = SymExpansion::power_sum(1, QSeries::one(0), 1);
        assert_eq!(integrate(&e1, &data).unwrap().coeff(0), qi(3));
        // x1 x2 = (p1² − p2)/2 = e2
        let p1 = SymExpansion::power_sum(1, QSeries::one(0), 2);
        let p2 = SymExpansion::power_sum(2, QSeries::constant(q(-1, 2), 0), 2);
        let e2 = p1.mul(&p1).scale(&QSeries::constant(q(1, 2), 0)).add(&p2);
        assert_eq!(integrate(&e2, &ChernData::k3()).unwrap().coeff(0), qi(24));
    }

    #[test]
    fn k3_anchors() {
        let k3 = ChernData::k3();
        assert_eq!(todd_and_ahat(&k3).unwrap(), (qi(2), qi(2)));
        assert_eq!(witten_genus(&k3, 4).unwrap().value.coeff(0), qi(2));
        let obs = obstruction_predicates(&k3).unwrap();
        assert!(obs.ch1_hold);
        assert!(!obs.ch2_hold);
        assert_eq!(obs.ch2_conditions[0].value, "-48");
    }

    #[test]
    fn weight_one_is_euler_characteristics() {
        let k3 = ChernData::k3();
        let ch = cdo_character(&k3, 3).unwrap().value;
        assert_eq!(*ch.offset(), q(-1, 6));
        let omega = hrr(&k3, &SymExpansion::chern_character(-1, 2, 2, 0)).unwrap().coeff(0);
        let tangent = hrr(&k3, &SymExpansion::chern_character(1, 2, 2, 0)).unwrap().coeff(0);
        assert_eq!(omega, qi(-20));
        assert_eq!(tangent, qi(-20));
        assert_eq!(ch.coeff(1), omega + tangent);
    }

    #[test]
    fn point_and_curves() {
        assert_eq!(witten_genus(&ChernData::point(), 5).unwrap().value, QSeries::one(5));
        let c = cdo_character(&ChernData::point(), 5).unwrap().value;
        assert_eq!(c.coeff(0), Q::one());
        let curve = ChernData::from_pairs(1, [("c1", 0)]).unwrap();
        assert_eq!(todd_and_ahat(&curve).unwrap().0, Q::zero());
        assert!(witten_genus(&ChernData::zero(2), 4).unwrap().value.is_zero());
        assert!(character_identity_check(&ChernData::k3(), 6).unwrap().holds());
    }
}
