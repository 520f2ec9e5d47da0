//! The βγ vertex algebra on a coordinate chart, truncated at a weight cap.
//!
//! A state is a combination of Fock monomials `a_{i,n}… b^j_m… f(b₀)` with
//! `n, m < 0` and `f` a polynomial in the zero modes. The `f` part may carry
//! antiholomorphic variables, which the engine treats as scalars. Vertex
//! operators are not stored: `Y(u, z)` is rebuilt as the creation-left
//! normally ordered product of derivatives of the generator fields, with
//! `f(b(z))` expanded in a Taylor series around the zero modes.

use crate::algebroid::DeltaPhiXi;
use crate::polycx::{Form, GaussRat, Poly, PolyBiholo, VField};
use crate::qseries::QSeries;
use crate::random::Sampler;
use crate::report::Check;
use crate::{Error, Result};
use num::Zero;
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;

pub const DEFAULT_CAP: i32 = 4;

/// A single oscillator mode. Indices are 0-based (`i = 0` is `b1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    A { i: usize, n: i32 },
    B { i: usize, n: i32 },
}

impl Mode {
    /// Change in weight caused by the mode.
    pub fn weight_shift(self) -> i32 {
        match self {
            Mode::A { n, .. } | Mode::B { n, .. } => -n,
        }
    }

    fn is_creation(self) -> bool {
        match self {
            Mode::A { n, .. } => n < 0,
            Mode::B { n, .. } => n <= 0,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::A { i, n } => write!(f, "a({},{n})", i + 1),
            Mode::B { i, n } => write!(f, "b({},{n})", i + 1),
        }
    }
}

/// Creation part of a Fock monomial: sorted `(index, level)` lists, levels `< 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Osc {
    pub a: Vec<(usize, i32)>,
    pub b: Vec<(usize, i32)>,
}

impl Osc {
    pub fn weight(&self) -> i32 {
        -self.a.iter().chain(&self.b).map(|(_, n)| n).sum::<i32>()
    }

    fn insert(list: &mut Vec<(usize, i32)>, e: (usize, i32)) {
        let pos = list.partition_point(|x| (x.1, x.0) <= (e.1, e.0));
        list.insert(pos, e);
    }

    /// Removes one copy of `e`, returning its multiplicity before removal.
    fn remove(list: &mut Vec<(usize, i32)>, e: (usize, i32)) -> usize {
        let count = list.iter().filter(|x| **x == e).count();
        if let Some(pos) = list.iter().position(|x| *x == e) {
            list.remove(pos);
        }
        count
    }
}

impl fmt::Display for Osc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .a
            .iter()
            .map(|(i, n)| Mode::A { i: *i, n: *n }.to_string())
            .chain(self.b.iter().map(|(i, n)| Mode::B { i: *i, n: *n }.to_string()))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A state of bounded weight.
#[derive(Clone)]
pub struct BGState {
    d: usize,
    cap: i32,
    terms: BTreeMap<Osc, Poly>,
}

impl PartialEq for BGState {
    fn eq(&self, o: &Self) -> bool {
        self.d == o.d && self.terms == o.terms
    }
}

impl Eq for BGState {}

impl BGState {
    pub fn zero(d: usize, cap: i32) -> Self {
        BGState { d, cap, terms: BTreeMap::new() }
    }

    pub fn vacuum(d: usize, cap: i32) -> Self {
        Self::function(d, cap, Poly::one())
    }

    /// The weight-zero state `f`.
    pub fn function(d: usize, cap: i32, f: Poly) -> Self {
        let mut s = Self::zero(d, cap);
        s.add_term(Osc::default(), f);
        s
    }

    /// `a_{i₁n₁}… b^{j₁}_{m₁}… f`, with all levels negative.
    pub fn monomial(d: usize, cap: i32, a: &[(usize, i32)], b: &[(usize, i32)], f: Poly) -> Result<Self> {
        let mut s = Self::function(d, cap, f);
        for (i, n) in a {
            s = s.apply_mode(Mode::A { i: *i, n: *n })?;
        }
        for (i, m) in b {
            s = s.apply_mode(Mode::B { i: *i, n: *m })?;
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn cap(&self) -> i32 {
        self.cap
    }

    pub fn with_cap(mut self, cap: i32) -> Result<Self> {
        if let Some(w) = self.max_weight() {
            if w > cap {
                return Err(Error::Overflow(format!("state of weight {w} exceeds cap {cap}")));
            }
        }
        self.cap = cap;
        Ok(self)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Osc, &Poly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_weight(&self) -> Option<i32> {
        self.terms.keys().map(Osc::weight).max()
    }

    /// Coefficient of the pure zero-mode sector.
    pub fn function_part(&self) -> Poly {
        self.terms.get(&Osc::default()).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn coeff(&self, osc: &Osc) -> Poly {
        self.terms.get(osc).cloned().unwrap_or_else(Poly::zero)
    }

    fn add_term(&mut self, osc: Osc, f: Poly) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&osc) {
            Some(c) => {
                *c += &f;
                if c.is_zero() {
                    self.terms.remove(&osc);
                }
            }
            None => {
                self.terms.insert(osc, f);
            }
        }
    }

    /// Homogeneous components keyed by weight.
    pub fn by_weight(&self) -> BTreeMap<i32, BGState> {
        let mut out: BTreeMap<i32, BGState> = BTreeMap::new();
        for (k, f) in &self.terms {
            out.entry(k.weight())
                .or_insert_with(|| BGState::zero(self.d, self.cap))
                .add_term(k.clone(), f.clone());
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> BGState {
        let mut out = BGState::zero(self.d, self.cap);
        for (k, f) in &self.terms {
            out.add_term(k.clone(), f.scale(c));
        }
        out
    }

    /// Multiplication of the zero-mode part by `g`.
    pub fn mul_fn(&self, g: &Poly) -> BGState {
        let mut out = BGState::zero(self.d, self.cap);
        for (k, f) in &self.terms {
            out.add_term(k.clone(), f * g);
        }
        out
    }

    pub fn map_fn(&self, h: impl Fn(&Poly) -> Result<Poly>) -> Result<BGState> {
        let mut out = BGState::zero(self.d, self.cap);
        for (k, f) in &self.terms {
            out.add_term(k.clone(), h(f)?);
        }
        Ok(out)
    }

    pub fn apply_mode(&self, m: Mode) -> Result<BGState> {
        let mut out = BGState::zero(self.d, self.cap);
        let (i, n) = match m {
            Mode::A { i, n } | Mode::B { i, n } => (i, n),
        };
        if i >= self.d {
            return Err(Error::Shape(format!("mode {m} on a chart of dimension {}", self.d)));
        }
        for (k, f) in &self.terms {
            if m.is_creation() && k.weight() + m.weight_shift() > self.cap {
                return Err(Error::Overflow(format!("{m} on weight {} exceeds cap {}", k.weight(), self.cap)));
            }
            match m {
                Mode::A { .. } if n < 0 => {
                    let mut k2 = k.clone();
                    Osc::insert(&mut k2.a, (i, n));
                    out.add_term(k2, f.clone());
                }
                Mode::A { .. } if n == 0 => out.add_term(k.clone(), f.d(i)),
                Mode::A { .. } => {
                    let mut k2 = k.clone();
                    let c = Osc::remove(&mut k2.b, (i, -n));
                    if c > 0 {
                        out.add_term(k2, f.scale_int(c as i64));
                    }
                }
                Mode::B { .. } if n < 0 => {
                    let mut k2 = k.clone();
                    Osc::insert(&mut k2.b, (i, n));
                    out.add_term(k2, f.clone());
                }
                Mode::B { .. } if n == 0 => out.add_term(k.clone(), f * &Poly::var(i)),
                Mode::B { .. } => {
                    let mut k2 = k.clone();
                    let c = Osc::remove(&mut k2.a, (i, -n));
                    if c > 0 {
                        out.add_term(k2, f.scale_int(-(c as i64)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// The translation operator `T`, a derivation of the Fock ring.
    pub fn translate(&self) -> Result<BGState> {
        let mut out = BGState::zero(self.d, self.cap);
        for (k, f) in &self.terms {
            if k.weight() + 1 > self.cap {
                return Err(Error::Overflow(format!("translation of weight {} exceeds cap {}", k.weight(), self.cap)));
            }
            for (pos, (i, n)) in k.a.iter().enumerate() {
                let mut k2 = k.clone();
                k2.a.remove(pos);
                Osc::insert(&mut k2.a, (*i, n - 1));
                out.add_term(k2, f.scale_int(-*n as i64));
            }
            for (pos, (i, m)) in k.b.iter().enumerate() {
                let mut k2 = k.clone();
                k2.b.remove(pos);
                Osc::insert(&mut k2.b, (*i, m - 1));
                out.add_term(k2, f.scale_int(1 - *m as i64));
            }
            for i in 0..self.d {
                let di = f.d(i);
                if !di.is_zero() {
                    let mut k2 = k.clone();
                    Osc::insert(&mut k2.b, (i, -1));
                    out.add_term(k2, di);
                }
            }
        }
        Ok(out)
    }

    /// `u_{(n)} v`.
    pub fn nth_product(&self, n: i32, v: &BGState) -> Result<BGState> {
        if self.d != v.d {
            return Err(Error::Shape("states live on charts of different dimension".into()));
        }
        let cap = self.cap.max(v.cap);
        let mut out = BGState::zero(self.d, cap);
        for (k, f) in &self.terms {
            let wu = k.weight();
            let s = n + 1 - wu;
            for (wv, vpart) in v.by_weight() {
                let wr = wv - s;
                if wr < 0 {
                    continue;
                }
                if wr > cap {
                    return Err(Error::Overflow(format!("product of weight {wr} exceeds cap {cap}")));
                }
                let vpart = BGState { cap, ..vpart };
                let base = base_factors(k);
                for (alpha, g) in taylor(f, self.d, (wv + wr) as u32) {
                    let mut factors = base.clone();
                    for (i, e) in alpha.iter().enumerate() {
                        factors.extend(std::iter::repeat_n(Factor::Shift { i }, *e as usize));
                    }
                    let mut acc = BGState::zero(self.d, cap);
                    expand(&factors, 0, &vpart, 0, wv, s, 1, &mut Vec::new(), &mut acc)?;
                    for (k2, h) in acc.terms {
                        out.add_term(k2, &h * &g);
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug)]
enum Factor {
    /// `∂^{(e)} a_i(z)`
    A { i: usize, e: i32 },
    /// `∂^{(e)} b^i(z)` with `e ≥ 1`
    B { i: usize, e: i32 },
    /// `b^i(z) − b^i_0` from the Taylor expansion of `f(b(z))`
    Shift { i: usize },
}

impl Factor {
    fn coeff(self, level: i32) -> i64 {
        match self {
            Factor::A { e, .. } => binom(-(level as i64) - 1, e),
            Factor::B { e, .. } => binom(-(level as i64), e),
            Factor::Shift { .. } => 1,
        }
    }

    fn mode(self, level: i32) -> Mode {
        match self {
            Factor::A { i, .. } => Mode::A { i, n: level },
            Factor::B { i, .. } | Factor::Shift { i } => Mode::B { i, n: level },
        }
    }

    fn min_annihilator(self) -> i32 {
        match self {
            Factor::A { .. } => 0,
            _ => 1,
        }
    }
}

fn base_factors(k: &Osc) -> Vec<Factor> {
    k.a.iter()
        .map(|(i, n)| Factor::A { i: *i, e: -n - 1 })
        .chain(k.b.iter().map(|(i, m)| Factor::B { i: *i, e: -m }))
        .collect()
}

/// Generalized binomial coefficient `x choose k`.
fn binom(x: i64, k: i32) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for j in 0..k as i128 {
        num *= x as i128 - j;
        den *= j + 1;
    }
    (num / den) as i64
}

/// Nonzero Taylor coefficients `∂^α f / α!` with `|α| ≤ max`.
fn taylor(f: &Poly, d: usize, max: u32) -> Vec<(Vec<u32>, Poly)> {
    fn rec(f: &Poly, d: usize, i: usize, left: u32, alpha: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, Poly)>) {
        if f.is_zero() {
            return;
        }
        if i == d {
            out.push((alpha.clone(), f.clone()));
            return;
        }
        let mut g = f.clone();
        for e in 0..=left {
            if g.is_zero() {
                break;
            }
            alpha[i] = e;
            rec(&g, d, i + 1, left - e, alpha, out);
            g = g.d(i).scale(&GaussRat::rat(1, e as i64 + 1));
        }
        alpha[i] = 0;
    }
    let mut out = Vec::new();
    rec(f, d, 0, max, &mut vec![0; d], &mut out);
    out
}

/// Phase one: each factor either annihilates now or is deferred as a creator.
#[allow(clippy::too_many_arguments)]
fn expand(
    factors: &[Factor],
    k: usize,
    state: &BGState,
    drop: i32,
    wv: i32,
    s: i32,
    coeff: i64,
    creators: &mut Vec<Factor>,
    out: &mut BGState,
) -> Result<()> {
    if state.is_zero() || coeff == 0 {
        return Ok(());
    }
    if k == factors.len() {
        let rise = drop - s;
        if rise < creators.len() as i32 || (creators.is_empty() && rise != 0) {
            return Ok(());
        }
        return create(creators, 0, rise, state, coeff, out);
    }
    let f = factors[k];
    creators.push(f);
    expand(factors, k + 1, state, drop, wv, s, coeff, creators, out)?;
    creators.pop();
    for l in f.min_annihilator()..=(wv - drop) {
        let c = f.coeff(l);
        if c == 0 {
            continue;
        }
        let next = state.apply_mode(f.mode(l))?;
        expand(factors, k + 1, &next, drop + l, wv, s, coeff * c, creators, out)?;
    }
    Ok(())
}

/// Phase two: split the remaining weight among the deferred creators.
fn create(creators: &[Factor], k: usize, left: i32, state: &BGState, coeff: i64, out: &mut BGState) -> Result<()> {
    if coeff == 0 {
        return Ok(());
    }
    if k == creators.len() {
        if left == 0 {
            for (osc, f) in &state.terms {
                out.add_term(osc.clone(), f.scale_int(coeff));
            }
        }
        return Ok(());
    }
    let remaining = (creators.len() - k - 1) as i32;
    let f = creators[k];
    for w in 1..=(left - remaining) {
        let c = f.coeff(-w);
        if c == 0 {
            continue;
        }
        let next = state.apply_mode(f.mode(-w))?;
        create(creators, k + 1, left - w, &next, coeff * c, out)?;
    }
    Ok(())
}

impl std::ops::Add for &BGState {
    type Output = BGState;
    fn add(self, o: &BGState) -> BGState {
        let mut out = self.clone();
        out.cap = self.cap.max(o.cap);
        for (k, f) in &o.terms {
            out.add_term(k.clone(), f.clone());
        }
        out
    }
}

impl std::ops::Sub for &BGState {
    type Output = BGState;
    fn sub(self, o: &BGState) -> BGState {
        self + &(-o)
    }
}

impl std::ops::Neg for &BGState {
    type Output = BGState;
    fn neg(self) -> BGState {
        self.scale(&GaussRat::int(-1))
    }
}

impl fmt::Display for BGState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| if k.a.is_empty() && k.b.is_empty() { format!("[{c}]") } else { format!("{k} [{c}]") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for BGState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The conformal vector `ν = Σ a_{i,−1} b^i_{−1}` of a `d`-dimensional chart.
#[derive(Clone, Debug)]
pub struct ConformalData {
    pub nu: BGState,
}

impl ConformalData {
    pub fn new(d: usize, cap: i32) -> Result<Self> {
        let mut nu = BGState::zero(d, cap);
        for i in 0..d {
            nu = &nu + &BGState::monomial(d, cap, &[(i, -1)], &[(i, -1)], Poly::one())?;
        }
        Ok(ConformalData { nu })
    }

    /// `L_m s = ν_{(m+1)} s`.
    pub fn virasoro(&self, m: i32, s: &BGState) -> Result<BGState> {
        self.nu.nth_product(m + 1, s)
    }

    /// `c` read off from `ν_{(3)}ν = (c/2)|0⟩`.
    pub fn central_charge(&self) -> Result<GaussRat> {
        let top = self.nu.nth_product(3, &self.nu)?;
        let vac = top.function_part();
        if top.terms.len() > 1 || !vac.is_holomorphic() || vac.as_constant().is_none() {
            return Err(Error::Domain(format!("ν_(3)ν = {top} is not a multiple of the vacuum")));
        }
        Ok(vac.as_constant().expect("constant") * GaussRat::int(2))
    }
}

/// The section `s(X) = a_{i,−1} X^i`.
pub fn splitting(x: &VField, cap: i32) -> Result<BGState> {
    let d = x.dim();
    let mut out = BGState::zero(d, cap);
    for (i, c) in x.0.iter().enumerate() {
        out = &out + &BGState::monomial(d, cap, &[(i, -1)], &[], c.clone())?;
    }
    Ok(out)
}

/// Reads a state in the span of `b^i_{−1} f_i` as the 1-form `Σ f_i db^i`.
pub fn as_one_form(s: &BGState) -> Result<Form> {
    let mut comps = vec![Poly::zero(); s.d];
    for (k, f) in &s.terms {
        match (k.a.as_slice(), k.b.as_slice()) {
            ([], [(i, -1)]) => comps[*i] += f,
            _ => return Err(Error::Domain(format!("{k} [{f}] is not a 1-form term"))),
        }
    }
    Ok(Form::one_form(&comps))
}

/// The homomorphism `φ*_ξ` from the chart algebra of the target to that of the source.
#[derive(Clone, Debug)]
pub struct PhiXiHom {
    data: DeltaPhiXi,
    cap: i32,
    b_images: Vec<BGState>,
    a_images: Vec<BGState>,
}

impl PhiXiHom {
    pub fn new(phi: PolyBiholo, xi: Form, cap: i32) -> Result<Self> {
        let data = DeltaPhiXi::new(phi, xi)?;
        let phi = data.phi();
        let d = phi.dim();
        let ginv = phi.jacobian_inv();
        let thetas: Vec<_> = (0..d).map(|j| phi.theta().contract(&VField::coord(d, j))).collect();
        let half = GaussRat::rat(1, 2);
        let b_images = phi.forward().iter().map(|p| BGState::function(d, cap, p.clone())).collect();
        let mut a_images = Vec::with_capacity(d);
        for i in 0..d {
            let mut img = BGState::zero(d, cap);
            for j in 0..d {
                img = &img + &BGState::monomial(d, cap, &[(j, -1)], &[], ginv.fun(j, i))?;
                let mut c = Poly::zero();
                for (k, tk) in thetas.iter().enumerate() {
                    let inner = &data.xi().two_form_component(j, k) + &thetas[j].mul(tk).trace().scalar();
                    c += &(&inner * &ginv.fun(k, i));
                }
                img = &img + &BGState::monomial(d, cap, &[], &[(j, -1)], c.scale(&half))?;
            }
            a_images.push(img);
        }
        Ok(PhiXiHom { data, cap, b_images, a_images })
    }

    pub fn phi(&self) -> &PolyBiholo {
        self.data.phi()
    }

    pub fn xi(&self) -> &Form {
        self.data.xi()
    }

    /// Image of the weight-one generator `a_{i,−1}`.
    pub fn a_image(&self, i: usize) -> &BGState {
        &self.a_images[i]
    }

    pub fn apply(&self, s: &BGState) -> Result<BGState> {
        let d = self.phi().dim();
        let cap = self.cap.max(s.cap);
        let mut out = BGState::zero(d, cap);
        for (k, f) in &s.terms {
            let mut img = BGState::function(d, cap, self.phi().pull_fn(f)?);
            for (i, m) in k.b.iter().rev() {
                img = self.b_images[*i].nth_product(m - 1, &img)?;
            }
            for (i, n) in k.a.iter().rev() {
                img = self.a_images[*i].nth_product(*n, &img)?;
            }
            out = &out + &img;
        }
        Ok(out)
    }

    /// `Φ(ν) = ν` on the conformal vectors.
    pub fn preserves_conformal(&self) -> Result<bool> {
        let nu = ConformalData::new(self.phi().dim(), self.cap)?.nu;
        Ok(self.apply(&nu)? == nu)
    }
}

/// A random Fock monomial of weight exactly `w` with a random zero-mode part.
pub fn random_basis_state(s: &mut Sampler, d: usize, w: i32, cap: i32) -> Result<BGState> {
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut left = w;
    while left > 0 {
        let level = s.rng().gen_range(1..=left);
        let i = s.rng().gen_range(0..d);
        if s.rng().gen_bool(0.5) {
            a.push((i, -level));
        } else {
            b.push((i, -level));
        }
        left -= level;
    }
    let mut f = s.holo(d, 2);
    if f.is_zero() {
        f = Poly::one();
    }
    BGState::monomial(d, cap, &a, &b, f)
}

/// Checks `Φ(u_{(n)}v) = Φ(u)_{(n)}Φ(v)` on random `u, v` of weight `≤ k`, for
/// every `n` whose product stays within the weight cap.
pub fn hom_check(hom: &PhiXiHom, k: i32, trials: usize, seed: u64) -> Result<Vec<Check>> {
    let d = hom.phi().dim();
    let cap = hom.cap;
    let mut s = Sampler::new(seed);
    s.terms = 2;
    let mut products = None;
    let mut vacuum = None;
    let mut count = 0usize;
    let vac = BGState::vacuum(d, cap);
    if hom.apply(&vac)? != vac {
        vacuum = Some(format!("Φ(|0⟩) = {}", hom.apply(&vac)?));
    }
    for t in 0..trials {
        let wu = s.rng().gen_range(0..=k);
        let wv = s.rng().gen_range(0..=k);
        let u = random_basis_state(&mut s, d, wu, cap)?;
        let v = random_basis_state(&mut s, d, wv, cap)?;
        let (pu, pv) = (hom.apply(&u)?, hom.apply(&v)?);
        if pu.max_weight() > Some(wu) && vacuum.is_none() {
            vacuum = Some(format!("trial {t}: Φ({u}) has weight above {wu}"));
        }
        for n in (wu + wv - 1 - cap)..(wu + wv) {
            let lhs = hom.apply(&u.nth_product(n, &v)?)?;
            let rhs = pu.nth_product(n, &pv)?;
            count += 1;
            if lhs != rhs && products.is_none() {
                products = Some(format!("u = {u}, n = {n}, v = {v}: difference {}", &lhs - &rhs));
            }
        }
    }
    Ok(vec![
        Check::from_residual("Φ(u_(n)v) = Φ(u)_(n)Φ(v)", products)
            .with_detail(format!("{count} products, weights ≤ {k}, cap {cap}")),
        Check::from_residual("Φ preserves vacuum and weight", vacuum),
    ])
}

/// Skew-symmetry `u_(n)v = Σ_j (−1)^{n+j+1} T^j/j! (v_(n+j)u)` on random pairs
/// and the commutator formula `[u_(m), v_(n)]w = Σ_j C(m,j) (u_(j)v)_(m+n−j)w`
/// for `m, n ≥ 0` on random triples, all of weight `≤ k`.
pub fn borcherds_check(d: usize, k: i32, trials: usize, seed: u64) -> Result<Vec<Check>> {
    let cap = 3 * k + 1;
    let mut s = Sampler::new(seed);
    s.terms = 2;
    let (mut skew, mut comm) = (None, None);
    let (mut n_skew, mut n_comm) = (0usize, 0usize);
    for t in 0..trials {
        let w: Vec<i32> = (0..3).map(|_| s.rng().gen_range(0..=k)).collect();
        let u = random_basis_state(&mut s, d, w[0], cap)?;
        let v = random_basis_state(&mut s, d, w[1], cap)?;
        let x = random_basis_state(&mut s, d, w[2], cap)?;
        let top = w[0] + w[1];
        for n in (-1).max(top - 1 - cap)..top {
            let lhs = u.nth_product(n, &v)?;
            let mut rhs = BGState::zero(d, cap);
            let mut fact = 1i64;
            for j in 0..=(top - n) {
                if j > 0 {
                    fact *= j as i64;
                }
                let mut term = v.nth_product(n + j, &u)?;
                for _ in 0..j {
                    term = term.translate()?;
                }
                let sign = if (n + j + 1) % 2 == 0 { 1 } else { -1 };
                rhs = &rhs + &term.scale(&GaussRat::rat(sign, fact));
            }
            n_skew += 1;
            if lhs != rhs && skew.is_none() {
                skew = Some(format!("trial {t}: u = {u}, n = {n}, v = {v}: difference {}", &lhs - &rhs));
            }
        }
        for m in 0..=w[0] {
            for n in 0..=w[1] {
                let lhs = &u.nth_product(m, &v.nth_product(n, &x)?)? - &v.nth_product(n, &u.nth_product(m, &x)?)?;
                let mut rhs = BGState::zero(d, cap);
                let mut binom = 1i64;
                for j in 0..=m {
                    if j > 0 {
                        binom = binom * (m - j + 1) as i64 / j as i64;
                    }
                    rhs = &rhs + &u.nth_product(j, &v)?.nth_product(m + n - j, &x)?.scale(&GaussRat::int(binom));
                }
                n_comm += 1;
                if lhs != rhs && comm.is_none() {
                    comm = Some(format!("trial {t}: m = {m}, n = {n}, u = {u}, v = {v}, w = {x}"));
                }
            }
        }
    }
    Ok(vec![
        Check::from_residual("skew-symmetry", skew).with_detail(format!("{n_skew} products, weights ≤ {k}")),
        Check::from_residual("commutator formula", comm).with_detail(format!("{n_comm} triples, weights ≤ {k}")),
    ])
}

/// Compares VOA-side products of `s(X), s(Y), f` with the CDO structure maps.
pub fn algebroid_bridge(f: &Poly, x: &VField, y: &VField) -> Result<Vec<Check>> {
    use crate::algebroid::{Cdo, VertexAlgebroid};
    let d = x.dim();
    let cdo = Cdo { d };
    let cap = 2;
    let (sx, sy) = (splitting(x, cap)?, splitting(y, cap)?);
    let b0 = sx.nth_product(1, &sy)?;
    let b0_res = (b0 != BGState::function(d, cap, cdo.bracket0(x, y)))
        .then(|| format!("s(X)_(1)s(Y) = {b0}, algebroid {}", cdo.bracket0(x, y)));
    let b1 = as_one_form(&(&sx.nth_product(0, &sy)? - &splitting(&x.bracket(y), cap)?))?;
    let b1_res = (b1 != cdo.bracket1(x, y)).then(|| format!("VOA {b1}, algebroid {}", cdo.bracket1(x, y)));
    let fs = BGState::function(d, cap, f.clone());
    let st = as_one_form(&(&fs.nth_product(-1, &sx)? - &splitting(&x.scale(f), cap)?))?;
    let st_res = (st != cdo.star(f, x)).then(|| format!("VOA {st}, algebroid {}", cdo.star(f, x)));
    let act = sx.nth_product(0, &fs)?;
    let act_res = (act != BGState::function(d, cap, x.apply(f))).then(|| format!("s(X)_(0)f = {act}"));
    Ok(vec![
        Check::from_residual("{X,Y}0 = s(X)_(1)s(Y)", b0_res),
        Check::from_residual("{X,Y}1 = s(X)_(0)s(Y) − s([X,Y])", b1_res),
        Check::from_residual("f∗X = f_(−1)s(X) − s(fX)", st_res),
        Check::from_residual("s(X)_(0)f = X(f)", act_res),
    ])
}

/// All Fock monomials of the constant-coefficient sector with weight `w`.
pub fn oscillator_basis(d: usize, w: i32) -> Vec<Osc> {
    // generators (kind, index, level) in a fixed order; multisets of them
    let gens: Vec<(bool, usize, i32)> = (1..=w)
        .flat_map(|l| (0..d).flat_map(move |i| [(true, i, -l), (false, i, -l)]))
        .collect();
    fn rec(gens: &[(bool, usize, i32)], start: usize, left: i32, cur: &mut Osc, out: &mut Vec<Osc>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for (g, &(is_a, i, l)) in gens.iter().enumerate().skip(start) {
            if -l > left {
                continue;
            }
            let list = if is_a { &mut cur.a } else { &mut cur.b };
            Osc::insert(list, (i, l));
            rec(gens, g, left + l, cur, out);
            let list = if is_a { &mut cur.a } else { &mut cur.b };
            Osc::remove(list, (i, l));
        }
    }
    let mut out = Vec::new();
    rec(&gens, 0, w, &mut Osc::default(), &mut out);
    out
}

/// Graded dimension of the constant-coefficient sector up to weight `k`.
pub fn oscillator_character(d: usize, k: usize) -> QSeries {
    let counts: Vec<i64> = (0..=k).map(|w| oscillator_basis(d, w as i32).len() as i64).collect();
    QSeries::from_ints(num::BigRational::zero(), &counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::eta_power;

    fn b(i: usize) -> Poly {
        Poly::var(i)
    }

    #[test]
    fn mode_examples() {
        let s = BGState::function(1, 4, b(0));
        assert_eq!(s.apply_mode(Mode::A { i: 0, n: 0 }).unwrap(), BGState::vacuum(1, 4));
        let a = BGState::monomial(1, 4, &[(0, -1)], &[], Poly::one()).unwrap();
        assert_eq!(a.apply_mode(Mode::B { i: 0, n: 1 }).unwrap(), -&BGState::vacuum(1, 4));
        assert!(BGState::vacuum(1, 4).apply_mode(Mode::A { i: 0, n: 5 }).unwrap().is_zero());
        let top = BGState::monomial(1, 4, &[(0, -4)], &[], Poly::one()).unwrap();
        assert!(matches!(top.apply_mode(Mode::B { i: 0, n: -1 }), Err(Error::Overflow(_))));
    }

    #[test]
    fn product_examples() {
        let d = 2;
        let v = BGState::monomial(d, 4, &[(1, -2)], &[], &b(0) * &b(1)).unwrap();
        let f = BGState::function(d, 4, b(0));
        assert_eq!(f.nth_product(-1, &v).unwrap(), v.mul_fn(&b(0)));
        let a1 = BGState::monomial(d, 4, &[(0, -1)], &[], Poly::one()).unwrap();
        let a2 = BGState::monomial(d, 4, &[(1, -1)], &[], Poly::one()).unwrap();
        assert_eq!(a1.nth_product(0, &f).unwrap(), BGState::vacuum(d, 4));
        assert!(a1.nth_product(1, &a2).unwrap().is_zero());
    }

    #[test]
    fn central_charge_is_2d() {
        for d in 1..=3 {
            let c = ConformalData::new(d, 4).unwrap();
            assert_eq!(c.central_charge().unwrap(), GaussRat::int(2 * d as i64));
        }
    }

    #[test]
    fn grading_and_translation() {
        let c = ConformalData::new(2, 4).unwrap();
        let s = BGState::monomial(2, 4, &[(0, -1)], &[(1, -2)], Poly::one()).unwrap();
        assert_eq!(c.virasoro(0, &s).unwrap(), s.scale(&GaussRat::int(3)));
        let mut smp = Sampler::new(3);
        for w in 0..=2 {
            let u = random_basis_state(&mut smp, 2, w, 4).unwrap();
            assert_eq!(c.virasoro(-1, &u).unwrap(), u.translate().unwrap());
            assert_eq!(c.virasoro(0, &u).unwrap(), u.scale(&GaussRat::int(w as i64)));
        }
    }

    #[test]
    fn virasoro_bracket() {
        let c = ConformalData::new(1, 4).unwrap();
        let s = BGState::monomial(1, 4, &[(0, -1)], &[], b(0).pow(2)).unwrap();
        for (m, n) in [(1, -1), (2, -2), (1, -2), (2, -1), (0, -2)] {
            let lhs = &c.virasoro(m, &c.virasoro(n, &s).unwrap()).unwrap()
                - &c.virasoro(n, &c.virasoro(m, &s).unwrap()).unwrap();
            let mut rhs = c.virasoro(m + n, &s).unwrap().scale(&GaussRat::int((m - n) as i64));
            if m + n == 0 {
                let central = GaussRat::rat(2 * (m * m * m - m) as i64, 12);
                rhs = &rhs + &s.scale(&central);
            }
            assert_eq!(lhs, rhs, "m={m} n={n}");
        }
    }

    #[test]
    fn borcherds_identities() {
        for c in borcherds_check(2, 2, 6, 11).unwrap() {
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn bridge_matches_algebroid() {
        let x = VField(vec![b(1), Poly::zero()]);
        let y = VField(vec![Poly::zero(), b(0)]);
        let sx = splitting(&x, 2).unwrap();
        let sy = splitting(&y, 2).unwrap();
        assert_eq!(sx.nth_product(1, &sy).unwrap(), BGState::function(2, 2, Poly::int(-1)));
        for c in algebroid_bridge(&b(0).pow(2), &x, &y).unwrap() {
            assert!(c.passed, "{c}");
        }
        let mut s = Sampler::new(9);
        for _ in 0..5 {
            let (f, x, y) = (s.holo(2, 3), s.holo_field(2, 3), s.holo_field(2, 3));
            for c in algebroid_bridge(&f, &x, &y).unwrap() {
                assert!(c.passed, "{c}");
            }
        }
    }

    #[test]
    fn oscillator_counts() {
        let ch = oscillator_character(1, 5);
        assert_eq!(ch, QSeries::from_ints(num::BigRational::zero(), &[1, 2, 5, 10, 20, 36]));
        assert_eq!(oscillator_character(0, 3).coeff(0), num::BigRational::from_integer(1.into()));
        let eta = eta_power(-4, 6).with_offset(num::BigRational::zero());
        assert_eq!(oscillator_character(2, 5), eta.truncate(5));
    }

    #[test]
    fn affine_and_identity_images() {
        let phi = PolyBiholo::affine(
            &[vec![GaussRat::int(1), GaussRat::int(1)], vec![GaussRat::int(0), GaussRat::int(1)]],
            &[GaussRat::int(2), GaussRat::int(0)],
        )
        .unwrap();
        let hom = PhiXiHom::new(phi, Form::zero(), 4).unwrap();
        let expected = &BGState::monomial(2, 4, &[(1, -1)], &[], Poly::one()).unwrap()
            - &BGState::monomial(2, 4, &[(0, -1)], &[], Poly::one()).unwrap();
        assert_eq!(*hom.a_image(1), expected);
        for c in hom_check(&hom, 2, 4, 1).unwrap() {
            assert!(c.passed, "{c}");
        }
        let xi = Form::db(0).wedge(&Form::db(1));
        let id = PhiXiHom::new(PolyBiholo::identity(2), xi, 4).unwrap();
        let expected = &BGState::monomial(2, 4, &[(0, -1)], &[], Poly::one()).unwrap()
            + &BGState::monomial(2, 4, &[], &[(1, -1)], Poly::rat(-1, 2)).unwrap();
        assert_eq!(*id.a_image(0), expected);
    }

    #[test]
    fn shear_hom_and_conformal() {
        let phi = PolyBiholo::shear(2, 1, b(0).pow(2)).unwrap();
        let hom = PhiXiHom::new(phi, Form::zero(), 4).unwrap();
        for c in hom_check(&hom, 2, 4, 2).unwrap() {
            assert!(c.passed, "{c}");
        }
        assert!(hom.preserves_conformal().unwrap());
        let inv = PhiXiHom::new(PolyBiholo::inversion(), Form::zero(), 4).unwrap();
        assert!(!inv.preserves_conformal().unwrap());
        for c in hom_check(&inv, 2, 3, 5).unwrap() {
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn homs_compose_with_sigma() {
        use crate::algebroid::composite_xi;
        let phi1 = PolyBiholo::shear(2, 1, b(0).pow(2)).unwrap();
        let phi2 = PolyBiholo::shear(2, 0, b(1).pow(2)).unwrap();
        let h1 = PhiXiHom::new(phi1.clone(), Form::zero(), 4).unwrap();
        let h2 = PhiXiHom::new(phi2.clone(), Form::zero(), 4).unwrap();
        let eta = composite_xi(&phi1, &Form::zero(), &phi2, &Form::zero()).unwrap();
        assert!(!eta.is_zero());
        let h = PhiXiHom::new(phi1.then(&phi2).unwrap(), eta, 4).unwrap();
        let mut s = Sampler::new(4);
        for w in 0..=2 {
            let u = random_basis_state(&mut s, 2, w, 4).unwrap();
            assert_eq!(h1.apply(&h2.apply(&u).unwrap()).unwrap(), h.apply(&u).unwrap());
        }
    }
}
