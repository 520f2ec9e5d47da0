//! Finite nerves with gluing data, Čech cochains, the Eilenberg–Zilber
//! product and the Čech versions of the CDO structure maps.
//!
//! Cochains live on increasing tuples `α₀ < … < α_p`; the value on a tuple is
//! written in the coordinates of its first chart `α₀`. The face that drops
//! `α₀` is restricted by pulling back along `φ_{α₁α₀}`.

use crate::algebroid::{composite_xi, Cdo, DeltaPhiXi, VertexAlgebroid};
use crate::polycx::{
    chern_simons, curvature, poincare_solve, sigma, Form, MatForm, Operator, Poly, PolyBiholo, VField,
};
use crate::random::Sampler;
use crate::report::{Check, SuiteReport};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub type Simplex = Vec<usize>;

/// Values a cochain can carry.
pub trait CechValue: Clone + PartialEq + fmt::Display {
    fn plus(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn is_null(&self) -> bool;
    /// Pullback along `φ: U → V` of a value written in `V` coordinates.
    fn pull(&self, phi: &PolyBiholo) -> Result<Self>;
}

impl CechValue for Poly {
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_null(&self) -> bool {
        self.is_zero()
    }
    fn pull(&self, phi: &PolyBiholo) -> Result<Self> {
        phi.pull_fn(self)
    }
}

impl CechValue for Form {
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_null(&self) -> bool {
        self.is_zero()
    }
    fn pull(&self, phi: &PolyBiholo) -> Result<Self> {
        phi.pull_form(self)
    }
}

impl CechValue for VField {
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_null(&self) -> bool {
        self.is_zero()
    }
    fn pull(&self, phi: &PolyBiholo) -> Result<Self> {
        phi.pull_field(self)
    }
}

/// The charts and the declared intersections, closed under taking faces.
#[derive(Clone, Debug)]
pub struct Nerve {
    d: usize,
    names: Vec<String>,
    simplices: BTreeSet<Simplex>,
}

impl Nerve {
    /// Declares the given simplices and all their faces.
    pub fn new(d: usize, names: Vec<String>, declared: &[Simplex]) -> Result<Self> {
        let mut simplices = BTreeSet::new();
        for s in declared {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if s.iter().any(|v| *v >= names.len()) {
                return Err(Error::Input(format!("simplex {s:?} names an unknown chart")));
            }
            for mask in 1u32..(1 << s.len()) {
                simplices.insert(s.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, v)| *v).collect());
            }
        }
        for v in 0..names.len() {
            simplices.insert(vec![v]);
        }
        Ok(Nerve { d, names, simplices })
    }

    /// Every subset of the charts is an intersection.
    pub fn full(d: usize, names: Vec<String>) -> Self {
        let all: Simplex = (0..names.len()).collect();
        Nerve::new(d, names, &[all]).expect("valid indices")
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.simplices.contains(s)
    }

    /// Simplices with `p + 1` vertices.
    pub fn simplices(&self, p: usize) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().filter(move |s| s.len() == p + 1)
    }

    pub fn label(&self, s: &[usize]) -> String {
        s.iter().map(|v| self.names[*v].as_str()).collect::<Vec<_>>().join("")
    }
}

/// How [`GluingData::from_charts`] picks the 2-forms `ξ_{βα}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiChoice {
    Glued,
    Radial,
}

/// `(φ^{-1}, −(φ^{-1})*(ξ + σ(φ^{-1}, φ)))`, the inverse of `(φ, ξ)` under composition.
pub fn reverse_pair(phi: &PolyBiholo, xi: &Form) -> Result<(PolyBiholo, Form)> {
    let inv = phi.inverse();
    let back = sigma(&inv, phi)?;
    let xi_rev = -&inv.pull_form(&(xi + &back))?;
    Ok((inv, xi_rev))
}

/// A nerve with transition data `φ_{βα}`, `ξ_{βα}` for every edge, in both directions.
#[derive(Clone, Debug)]
pub struct GluingData {
    nerve: Nerve,
    pairs: BTreeMap<(usize, usize), DeltaPhiXi>,
}

impl GluingData {
    /// `forward` holds `(β, α) ↦ (φ_{βα}, ξ_{βα})` for `α < β`; reverse pairs are derived.
    pub fn new(nerve: Nerve, forward: BTreeMap<(usize, usize), (PolyBiholo, Form)>) -> Result<Self> {
        let mut pairs = BTreeMap::new();
        for e in nerve.simplices(1) {
            let (a, b) = (e[0], e[1]);
            let (phi, xi) = forward
                .get(&(b, a))
                .ok_or_else(|| Error::Input(format!("no transition declared for {}", nerve.label(e))))?;
            if phi.dim() != nerve.d {
                return Err(Error::Shape(format!("transition {} has dimension {}", nerve.label(e), phi.dim())));
            }
            let fwd = DeltaPhiXi::new(phi.clone(), xi.clone())?;
            let (inv, xi_rev) = reverse_pair(phi, xi)?;
            pairs.insert((a, b), DeltaPhiXi::new(inv, xi_rev)?);
            pairs.insert((b, a), fwd);
        }
        Ok(GluingData { nerve, pairs })
    }

    /// Charts given by maps `ψ_α` out of a common base chart, so that
    /// `φ_{βα} = ψ_β ∘ ψ_α^{-1}`. With [`XiChoice::Glued`] each `ξ_{β0}` is the
    /// radial primitive of `WZ` and the rest are composites through chart 0, so
    /// the associativity condition holds; [`XiChoice::Radial`] uses radial
    /// primitives on every edge.
    pub fn from_charts(names: Vec<String>, psis: &[PolyBiholo], choice: XiChoice) -> Result<Self> {
        let d = psis.first().map(|p| p.dim()).unwrap_or(0);
        let nerve = Nerve::full(d, names);
        let radial = |phi: &PolyBiholo| -> Result<Form> {
            let wz = phi.wz();
            if wz.is_zero() {
                Ok(Form::zero())
            } else {
                poincare_solve(&wz, Operator::Holo)
            }
        };
        let mut forward = BTreeMap::new();
        let mut from_base = Vec::new();
        for b in 0..psis.len() {
            let phi = psis[0].inverse().then(&psis[b])?;
            let xi = radial(&phi)?;
            from_base.push((phi, xi));
        }
        for a in 0..psis.len() {
            for b in a + 1..psis.len() {
                let phi = psis[a].inverse().then(&psis[b])?;
                let xi = match (choice, a) {
                    (XiChoice::Radial, _) | (_, 0) => radial(&phi)?,
                    (XiChoice::Glued, _) => {
                        let (to_base, to_base_xi) = reverse_pair(&from_base[a].0, &from_base[a].1)?;
                        composite_xi(&to_base, &to_base_xi, &from_base[b].0, &from_base[b].1)?
                    }
                };
                forward.insert((b, a), (phi, xi));
            }
        }
        GluingData::new(nerve, forward)
    }

    /// Replaces `ξ_{βα}` (for `α < β`) and rebuilds the reverse pair.
    pub fn with_xi(&self, b: usize, a: usize, xi: Form) -> Result<Self> {
        let mut forward: BTreeMap<_, _> = self
            .pairs
            .iter()
            .filter(|((x, y), _)| x > y)
            .map(|(k, v)| (*k, (v.phi().clone(), v.xi().clone())))
            .collect();
        let entry = forward.get_mut(&(b, a)).ok_or_else(|| Error::Input(format!("no pair ({b}, {a})")))?;
        entry.1 = xi;
        GluingData::new(self.nerve.clone(), forward)
    }

    pub fn nerve(&self) -> &Nerve {
        &self.nerve
    }

    pub fn dim(&self) -> usize {
        self.nerve.d
    }

    /// `(φ_{βα}, ξ_{βα})` as a `Δ` operator; `None` when `α = β`.
    pub fn pair(&self, b: usize, a: usize) -> Result<Option<&DeltaPhiXi>> {
        if a == b {
            return Ok(None);
        }
        self.pairs.get(&(b, a)).map(Some).ok_or_else(|| Error::Input(format!("charts {b}, {a} do not meet")))
    }

    pub fn phi(&self, b: usize, a: usize) -> Result<PolyBiholo> {
        Ok(match self.pair(b, a)? {
            Some(p) => p.phi().clone(),
            None => PolyBiholo::identity(self.dim()),
        })
    }

    pub fn xi(&self, b: usize, a: usize) -> Result<Form> {
        Ok(self.pair(b, a)?.map(|p| p.xi().clone()).unwrap_or_else(Form::zero))
    }

    /// Moves a value from the coordinates of chart `from` to those of chart `to`.
    pub fn restrict<T: CechValue>(&self, v: &T, from: usize, to: usize) -> Result<T> {
        match self.pair(from, to)? {
            None => Ok(v.clone()),
            Some(p) => v.pull(p.phi()),
        }
    }

    /// `Δ_{βα}(X)` for a field `X` in `β` coordinates; zero when `α = β`.
    pub fn delta(&self, b: usize, a: usize, x: &VField) -> Result<Form> {
        match self.pair(b, a)? {
            None => Ok(Form::zero()),
            Some(p) => p.apply(x),
        }
    }

    /// `σ_{γβα}` in `α` coordinates.
    pub fn sigma(&self, g: usize, b: usize, a: usize) -> Result<Form> {
        sigma(&self.phi(g, b)?, &self.phi(b, a)?)
    }
}

/// A Čech `p`-cochain; absent simplices carry zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<T> {
    p: usize,
    values: BTreeMap<Simplex, T>,
}

impl<T: CechValue> Cochain<T> {
    pub fn new(p: usize) -> Self {
        Cochain { p, values: BTreeMap::new() }
    }

    pub fn from_fn(nerve: &Nerve, p: usize, mut f: impl FnMut(&[usize]) -> Result<T>) -> Result<Self> {
        let mut c = Cochain::new(p);
        for s in nerve.simplices(p) {
            c.set(s.clone(), f(s)?);
        }
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn set(&mut self, s: Simplex, v: T) {
        if v.is_null() {
            self.values.remove(&s);
        } else {
            self.values.insert(s, v);
        }
    }

    pub fn get(&self, s: &[usize]) -> Option<&T> {
        self.values.get(s)
    }

    pub fn values(&self) -> impl Iterator<Item = (&Simplex, &T)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    fn accumulate(&mut self, s: &[usize], v: T) {
        let next = match self.values.get(s) {
            Some(old) => old.plus(&v),
            None => v,
        };
        self.set(s.to_vec(), next);
    }

    pub fn plus(&self, o: &Cochain<T>) -> Cochain<T> {
        let mut out = self.clone();
        for (s, v) in &o.values {
            out.accumulate(s, v.clone());
        }
        out
    }

    pub fn negate(&self) -> Cochain<T> {
        Cochain { p: self.p, values: self.values.iter().map(|(s, v)| (s.clone(), v.negate())).collect() }
    }

    pub fn minus(&self, o: &Cochain<T>) -> Cochain<T> {
        self.plus(&o.negate())
    }

    /// Multiplies by `(-1)^k`.
    pub fn signed(&self, k: usize) -> Cochain<T> {
        if k.is_multiple_of(2) {
            self.clone()
        } else {
            self.negate()
        }
    }

    pub fn map<U: CechValue>(&self, f: impl Fn(&[usize], &T) -> Result<U>) -> Result<Cochain<U>> {
        let mut out = Cochain::new(self.p);
        for (s, v) in &self.values {
            out.set(s.clone(), f(s, v)?);
        }
        Ok(out)
    }

    /// First nonzero entry, for witnesses.
    pub fn witness(&self, nerve: &Nerve) -> Option<String> {
        self.values.iter().next().map(|(s, v)| format!("{}: {v}", nerve.label(s)))
    }
}

/// The Čech differential.
pub fn differential<T: CechValue>(g: &GluingData, c: &Cochain<T>) -> Result<Cochain<T>> {
    let mut out = Cochain::new(c.p + 1);
    for s in g.nerve.simplices(c.p + 1) {
        for k in 0..s.len() {
            let mut face = s.clone();
            face.remove(k);
            let Some(v) = c.get(&face) else { continue };
            let v = if k == 0 { g.restrict(v, s[1], s[0])? } else { v.clone() };
            out.accumulate(s, if k % 2 == 0 { v } else { v.negate() });
        }
    }
    Ok(out)
}

/// `(a ⌣ b)_{0…p+q} = op(a_{0…p}, φ_{p0}* b_{p…p+q})`.
pub fn ez_product<A: CechValue, B: CechValue, C: CechValue>(
    g: &GluingData,
    a: &Cochain<A>,
    b: &Cochain<B>,
    op: impl Fn(&A, &B) -> C,
) -> Result<Cochain<C>> {
    let (p, q) = (a.p, b.p);
    let mut out = Cochain::new(p + q);
    for s in g.nerve.simplices(p + q) {
        let (Some(x), Some(y)) = (a.get(&s[..=p]), b.get(&s[p..])) else { continue };
        let y = g.restrict(y, s[p], s[0])?;
        out.set(s.clone(), op(x, &y));
    }
    Ok(out)
}

/// Like [`ez_product`] but the operation also sees the source chart of `b` and may fail.
fn ez_with<A: CechValue, B: CechValue, C: CechValue>(
    g: &GluingData,
    a: &Cochain<A>,
    b: &Cochain<B>,
    op: impl Fn(&[usize], &A, &B) -> Result<C>,
) -> Result<Cochain<C>> {
    let (p, q) = (a.p, b.p);
    let mut out = Cochain::new(p + q);
    for s in g.nerve.simplices(p + q) {
        let (Some(x), Some(y)) = (a.get(&s[..=p]), b.get(&s[p..])) else { continue };
        out.set(s.clone(), op(s, x, y)?);
    }
    Ok(out)
}

/// `Δ̌(X)_{0…p+1} = Δ₁₀(X_{1…p+1})`.
pub fn cech_delta(g: &GluingData, x: &Cochain<VField>) -> Result<Cochain<Form>> {
    let mut out = Cochain::new(x.p + 1);
    for s in g.nerve.simplices(x.p + 1) {
        if let Some(v) = x.get(&s[1..]) {
            out.set(s.clone(), g.delta(s[1], s[0], v)?);
        }
    }
    Ok(out)
}

/// `(f ∗̌ X)_{0…p+q} = f ∗ φ_{p0}*X + f·Δ_{p0}(X)`.
pub fn cech_star(g: &GluingData, f: &Cochain<Poly>, x: &Cochain<VField>) -> Result<Cochain<Form>> {
    let cdo = Cdo { d: g.dim() };
    let p = f.p;
    ez_with(g, f, x, |s, f0, xv| {
        let pulled = g.restrict(xv, s[p], s[0])?;
        Ok(&cdo.star(f0, &pulled) + &g.delta(s[p], s[0], xv)?.scale(f0))
    })
}

/// `{X,Y}̌₀ = {X, φ*Y}₀ + ⟨Δ_{p0}Y, X⟩`.
pub fn cech_bracket0(g: &GluingData, x: &Cochain<VField>, y: &Cochain<VField>) -> Result<Cochain<Poly>> {
    let cdo = Cdo { d: g.dim() };
    let p = x.p;
    ez_with(g, x, y, |s, xv, yv| {
        let pulled = g.restrict(yv, s[p], s[0])?;
        Ok(&cdo.bracket0(xv, &pulled) + &xv.pair(&g.delta(s[p], s[0], yv)?))
    })
}

/// `{X,Y}̌₁ = {X, φ*Y}₁ + L_X Δ_{p0}(Y)`.
pub fn cech_bracket1(g: &GluingData, x: &Cochain<VField>, y: &Cochain<VField>) -> Result<Cochain<Form>> {
    let cdo = Cdo { d: g.dim() };
    let p = x.p;
    ez_with(g, x, y, |s, xv, yv| {
        let pulled = g.restrict(yv, s[p], s[0])?;
        Ok(&cdo.bracket1(xv, &pulled) + &g.delta(s[p], s[0], yv)?.lie(xv))
    })
}

/// `φ_{βα}*ξ_{γβ} − ξ_{γα} + ξ_{βα} + s·σ_{γβα}` on a triple `α < β < γ`.
fn assoc_entry(g: &GluingData, t: &[usize], sigma_sign: i64) -> Result<Form> {
    let (a, b, c) = (t[0], t[1], t[2]);
    let pulled = g.restrict(&g.xi(c, b)?, b, a)?;
    let s = g.sigma(c, b, a)?.scale_c(&crate::polycx::GaussRat::int(sigma_sign));
    Ok(&(&(&pulled - &g.xi(c, a)?) + &g.xi(b, a)?) + &s)
}

/// The associativity obstruction `{φ*ξ − ξ + ξ + σ}` as a 2-cochain of holomorphic 2-forms.
pub fn assoc_cochain(g: &GluingData) -> Result<Cochain<Form>> {
    Cochain::from_fn(&g.nerve, 2, |t| assoc_entry(g, t, 1))
}

/// The conformal obstruction `{Tr θ_{βα}}`.
pub fn conformal_cochain(g: &GluingData) -> Result<Cochain<Form>> {
    Cochain::from_fn(&g.nerve, 1, |e| Ok(g.phi(e[1], e[0])?.theta().trace()))
}

/// Gluing predicates: transition cocycle, associativity and conformal conditions.
pub fn check_gluing(g: &GluingData) -> Result<Vec<Check>> {
    let mut cocycle = None;
    for t in g.nerve.simplices(2) {
        let composed = g.phi(t[1], t[0])?.then(&g.phi(t[2], t[1])?)?;
        if composed.forward() != g.phi(t[2], t[0])?.forward() && cocycle.is_none() {
            cocycle = Some(format!("{}: φ_γβ∘φ_βα = {composed}", g.nerve.label(t)));
        }
    }
    let assoc = assoc_cochain(g)?;
    let conf = conformal_cochain(g)?;
    let triples = g.nerve.simplices(2).count();
    Ok(vec![
        Check::from_residual("transition maps compose", cocycle),
        Check::from_residual("associativity gluing", assoc.witness(&g.nerve)).with_detail(format!("{triples} triples")),
        Check::from_residual("conformal gluing (Tr θ = 0)", conf.witness(&g.nerve)),
    ])
}

/// Both obstruction cochains with their closure checks.
pub fn obstruction_cocycles(g: &GluingData) -> Result<(Cochain<Form>, Cochain<Form>, Vec<Check>)> {
    let assoc = assoc_cochain(g)?;
    let conf = conformal_cochain(g)?;
    let d_assoc = differential(g, &assoc)?;
    let d_conf = differential(g, &conf)?;
    let holo_closed = |c: &Cochain<Form>| {
        c.values().find(|(_, v)| !v.d_holo().is_zero()).map(|(s, v)| format!("{}: ∂ = {}", g.nerve.label(s), v.d_holo()))
    };
    let checks = vec![
        Check::from_residual("δ(assoc cochain) = 0", d_assoc.witness(&g.nerve)),
        Check::from_residual("assoc cochain entries closed", holo_closed(&assoc)),
        Check::from_residual("δ(Tr θ cochain) = 0", d_conf.witness(&g.nerve)),
        Check::from_residual("Tr θ entries closed", holo_closed(&conf)),
    ];
    Ok((assoc, conf, checks))
}

/// Which sign of `σ` makes a corner of the staircase close.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaSign {
    Plus,
    Minus,
    Neither,
}

/// Per-chart connection 1-forms propagated from `gamma0` on chart 0:
/// `Γ_β = (φ^{-1})*(g(Γ_0 − θ)g^{-1})` with `φ = φ_{β0}`.
pub fn propagate_connection(g: &GluingData, gamma0: &MatForm) -> Result<Vec<MatForm>> {
    let mut out = vec![gamma0.clone()];
    for b in 1..g.nerve.len() {
        let phi = g.phi(b, 0)?;
        let local = phi.jacobian().mul(&(gamma0 - phi.theta())).mul(phi.jacobian_inv());
        out.push(local.pullback(phi.inverse_images())?);
    }
    Ok(out)
}

/// Residual of `g^{-1}·φ*Γ_β·g − Γ_α + θ` on the first failing pair.
pub fn connection_residual(g: &GluingData, gammas: &[MatForm]) -> Result<Option<String>> {
    for e in g.nerve.simplices(1) {
        let (a, b) = (e[0], e[1]);
        let phi = g.phi(b, a)?;
        let lhs = phi.jacobian_inv().mul(&phi.pull_mat(&gammas[b])?).mul(phi.jacobian());
        let r = &(&lhs - &gammas[a]) + phi.theta();
        if !r.is_zero() {
            return Ok(Some(format!("{}: residual {}", g.nerve.label(e), r.trace())));
        }
    }
    Ok(None)
}

/// Checks every arrow of the Čech–de Rham staircases built from `Γ`, `ξ`,
/// `CS(Γ)` and `Tr Γ`, and records the signs that make them close.
pub fn staircase_check(g: &GluingData, gammas: &[MatForm]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("staircase");
    let nerve = &g.nerve;
    rep.checks.push(Check::from_residual("connection transition law", connection_residual(g, gammas)?));

    let cs: Vec<Form> = gammas.iter().map(chern_simons).collect();
    let mut top = None;
    for (a, gamma) in gammas.iter().enumerate() {
        let r = curvature(gamma);
        let rr = r.mul(&r).trace();
        if cs[a].d() != rr && top.is_none() {
            top = Some(format!("chart {}: dCS − Tr(R∧R) = {}", nerve.names[a], &cs[a].d() - &rr));
        }
    }
    rep.checks.push(Check::from_residual("dCS(Γ) = Tr(R∧R)", top));

    // δ{CS} against WZ + s·dTr(θ∧Γ)
    let (mut plus, mut minus, mut d_row) = (true, true, None);
    let mut row2 = Cochain::<Form>::new(1);
    for e in nerve.simplices(1) {
        let (a, b) = (e[0], e[1]);
        let phi = g.phi(b, a)?;
        let dcs = &phi.pull_form(&cs[b])? - &cs[a];
        let tr = phi.theta().mul(&gammas[a]).trace();
        let dtr = tr.d();
        plus &= dcs == &phi.wz() + &dtr;
        minus &= dcs == &phi.wz() - &dtr;
        let entry = &g.xi(b, a)? + &tr;
        if entry.d() != &phi.wz() + &dtr && d_row.is_none() {
            d_row = Some(format!("{}: d(ξ + Tr θ∧Γ) ≠ WZ + dTr(θ∧Γ)", nerve.label(e)));
        }
        row2.set(e.clone(), entry);
    }
    match (plus, minus) {
        (true, true) => rep.checks.push(Check::pass("δ{CS(Γ)} = {WZ ± dTr(θ∧Γ)}", "dTr(θ∧Γ) vanishes; sign undetermined")),
        (false, false) => rep.checks.push(Check::fail("δ{CS(Γ)} = {WZ ± dTr(θ∧Γ)}", "no sign matches")),
        (plus, _) => {
            let sign = if plus { "+" } else { "−" };
            rep.checks.push(Check::pass("δ{CS(Γ)} = {WZ ± dTr(θ∧Γ)}", format!("sign {sign}")));
            rep.findings.push(format!("δ{{CS(Γ_α)}} = {{WZ_βα {sign} dTr(θ_βα∧Γ_α)}}"));
        }
    }
    rep.checks.push(Check::from_residual("d{ξ + Tr(θ∧Γ)} = {WZ + dTr(θ∧Γ)}", d_row));

    // corner: δ{ξ + Tr(θ∧Γ)} against the associativity cochain with ±σ
    let d_row2 = differential(g, &row2)?;
    let with_plus = Cochain::from_fn(nerve, 2, |t| assoc_entry(g, t, 1))?;
    let with_minus = Cochain::from_fn(nerve, 2, |t| assoc_entry(g, t, -1))?;
    let corner = match (d_row2 == with_plus, d_row2 == with_minus) {
        (true, true) => None,
        (true, false) => Some(SigmaSign::Plus),
        (false, true) => Some(SigmaSign::Minus),
        (false, false) => Some(SigmaSign::Neither),
    };
    match corner {
        None => rep.checks.push(Check::pass("δ{ξ + Tr(θ∧Γ)} = {φ*ξ − ξ + ξ ± σ}", "σ vanishes; sign undetermined")),
        Some(SigmaSign::Neither) => rep.checks.push(Check::fail(
            "δ{ξ + Tr(θ∧Γ)} = {φ*ξ − ξ + ξ ± σ}",
            d_row2.minus(&with_plus).witness(nerve).unwrap_or_default(),
        )),
        Some(s) => {
            let sign = if s == SigmaSign::Plus { "+" } else { "−" };
            rep.checks.push(Check::pass("δ{ξ + Tr(θ∧Γ)} = {φ*ξ − ξ + ξ ± σ}", format!("closes with {sign}σ")));
            rep.findings.push(format!("corner closes with {sign}σ_γβα; the opposite sign leaves a nonzero residual"));
        }
    }

    // conformal staircase: δ{Tr Γ} against ±{Tr θ}, and d{Tr Γ} = {Tr R}
    let tr_gamma = Cochain::from_fn(nerve, 0, |s| Ok(gammas[s[0]].trace()))?;
    let delta_tr = differential(g, &tr_gamma)?;
    let tr_theta = conformal_cochain(g)?;
    let printed = delta_tr == tr_theta;
    let flipped = delta_tr == tr_theta.negate();
    rep.checks.push(Check::from_residual(
        "δ{Tr Γ} = ∓{Tr θ}",
        (!printed && !flipped).then(|| delta_tr.minus(&tr_theta.negate()).witness(nerve).unwrap_or_default()),
    ));
    if !tr_theta.is_zero() {
        rep.findings.push(format!(
            "δ{{Tr Γ_α}} = {}{{Tr θ_βα}} under the transition law",
            if flipped { "−" } else { "+" }
        ));
    }
    let mut trr = None;
    for (a, gamma) in gammas.iter().enumerate() {
        if gamma.trace().d() != curvature(gamma).trace() && trr.is_none() {
            trr = Some(format!("chart {}", nerve.names[a]));
        }
    }
    rep.checks.push(Check::from_residual("d{Tr Γ} = {Tr R}", trr));
    Ok(rep)
}

/// Residuals of the homotopy-dg equations on random cochains of every degree
/// pair `p + q + 1 ≤ dim N`. With all products taken in Eilenberg–Zilber order:
///
/// * `δ(f ∗̌ X) − δf ∗̌ X − (−1)^p f ∗̌ δX = −Δ̌(fX) + (−1)^p f·Δ̌X`
/// * `δ{X,Y}̌₀ − {δX,Y}̌₀ − (−1)^p {X,δY}̌₀ = ⟨Δ̌X, Y⟩ + (−1)^p ⟨X, Δ̌Y⟩`
/// * `δ{X,Y}̌₁ − … = (−1)^p L_X Δ̌Y − (Δ̌X)·L_Y + ∂⟨Δ̌X, Y⟩ − Δ̌[X,Y]`
///
/// `mutate` flips the sign of `Δ̌` to exercise failure paths.
pub fn homotopy_dg_check(g: &GluingData, trials: usize, seed: u64, mutate: bool) -> Result<Vec<Check>> {
    let d = g.dim();
    let nerve = &g.nerve;
    let mut s = Sampler::new(seed);
    let dl = |x: &Cochain<VField>| -> Result<Cochain<Form>> {
        let c = cech_delta(g, x)?;
        Ok(if mutate { c.negate() } else { c })
    };
    let rand_fields = |s: &mut Sampler, p: usize| Cochain::from_fn(nerve, p, |_| Ok(s.holo_field(d, 2)));
    let rand_fns = |s: &mut Sampler, p: usize| Cochain::from_fn(nerve, p, |_| Ok(s.holo(d, 2)));
    let mut w = [None, None, None, None];
    fn record<T: CechValue>(slot: &mut Option<String>, nerve: &Nerve, c: &Cochain<T>, tag: String) {
        if slot.is_none() && !c.is_zero() {
            *slot = Some(format!("{tag}: {}", c.witness(nerve).unwrap_or_default()));
        }
    }
    let top = (0..nerve.len()).take_while(|k| nerve.simplices(*k).next().is_some()).last().unwrap_or(0);
    for _ in 0..trials {
        for p in 0..top {
            for q in 0..top - p {
                let (f, x, y) = (rand_fns(&mut s, p)?, rand_fields(&mut s, q)?, rand_fields(&mut s, q)?);
                let xp = rand_fields(&mut s, p)?;
                // δΔ̌ + Δ̌δ = 0
                let r0 = differential(g, &dl(&x)?)?.plus(&dl(&differential(g, &x)?)?);
                record(&mut w[0], nerve, &r0, format!("q={q}"));
                // star
                let lhs = differential(g, &cech_star(g, &f, &x)?)?
                    .minus(&cech_star(g, &differential(g, &f)?, &x)?)
                    .minus(&cech_star(g, &f, &differential(g, &x)?)?.signed(p));
                let fx = ez_product(g, &f, &x, |a, b| b.scale(a))?;
                let rhs = dl(&fx)?.negate().plus(&ez_product(g, &f, &dl(&x)?, |a, b: &Form| b.scale(a))?.signed(p));
                record(&mut w[1], nerve, &lhs.minus(&rhs), format!("p={p} q={q}"));
                // bracket0
                let lhs = differential(g, &cech_bracket0(g, &xp, &y)?)?
                    .minus(&cech_bracket0(g, &differential(g, &xp)?, &y)?)
                    .minus(&cech_bracket0(g, &xp, &differential(g, &y)?)?.signed(p));
                let rhs = ez_product(g, &dl(&xp)?, &y, |a: &Form, b| b.pair(a))?
                    .plus(&ez_product(g, &xp, &dl(&y)?, |a, b: &Form| a.pair(b))?.signed(p));
                record(&mut w[2], nerve, &lhs.minus(&rhs), format!("p={p} q={q}"));
                // bracket1
                let lhs = differential(g, &cech_bracket1(g, &xp, &y)?)?
                    .minus(&cech_bracket1(g, &differential(g, &xp)?, &y)?)
                    .minus(&cech_bracket1(g, &xp, &differential(g, &y)?)?.signed(p));
                let pair = ez_product(g, &dl(&xp)?, &y, |a: &Form, b| b.pair(a))?;
                let rhs = ez_product(g, &xp, &dl(&y)?, |a, b: &Form| b.lie(a))?
                    .signed(p)
                    .minus(&ez_product(g, &dl(&xp)?, &y, |a: &Form, b| a.lie(b))?)
                    .plus(&pair.map(|_, v| Ok(Form::function(v.clone()).d_holo()))?)
                    .minus(&dl(&ez_product(g, &xp, &y, |a, b| a.bracket(b))?)?);
                record(&mut w[3], nerve, &lhs.minus(&rhs), format!("p={p} q={q}"));
            }
        }
    }
    let detail = format!("{trials} trials, {} charts", nerve.len());
    Ok(vec![
        Check::from_residual("δΔ̌ + Δ̌δ = 0", w[0].take()).with_detail(detail.clone()),
        Check::from_residual("star homotopy equation", w[1].take()).with_detail(detail.clone()),
        Check::from_residual("{}0 homotopy equation", w[2].take()).with_detail(detail.clone()),
        Check::from_residual("{}1 homotopy equation", w[3].take()).with_detail(detail),
    ])
}

/// Associativity and Leibniz for the EZ product, plus a graded-symmetry
/// counterexample built from a 0-cochain and a 1-cochain.
pub fn ez_checks(g: &GluingData, trials: usize, seed: u64) -> Result<Vec<Check>> {
    let d = g.dim();
    let nerve = &g.nerve;
    let mut s = Sampler::new(seed);
    let mul = |a: &Poly, b: &Poly| a * b;
    let (mut assoc, mut leibniz) = (None, None);
    for _ in 0..trials {
        let a = Cochain::from_fn(nerve, 0, |_| Ok(s.holo(d, 2)))?;
        let b = Cochain::from_fn(nerve, 1, |_| Ok(s.holo(d, 2)))?;
        let c = Cochain::from_fn(nerve, 1, |_| Ok(s.holo(d, 2)))?;
        let left = ez_product(g, &ez_product(g, &a, &b, mul)?, &c, mul)?;
        let right = ez_product(g, &a, &ez_product(g, &b, &c, mul)?, mul)?;
        if left != right && assoc.is_none() {
            assoc = left.minus(&right).witness(nerve);
        }
        for (x, y, p) in [(&a, &b, 0), (&b, &a, 1)] {
            let lhs = differential(g, &ez_product(g, x, y, mul)?)?;
            let rhs = ez_product(g, &differential(g, x)?, y, mul)?
                .plus(&ez_product(g, x, &differential(g, y)?, mul)?.signed(p));
            if lhs != rhs && leibniz.is_none() {
                leibniz = lhs.minus(&rhs).witness(nerve);
            }
        }
    }
    // f = b1 on every chart, h = 1 on every edge: f⌣h and h⌣f differ once φ moves b1
    let f = Cochain::from_fn(nerve, 0, |_| Ok(Poly::var(0)))?;
    let h = Cochain::from_fn(nerve, 1, |_| Ok(Poly::one()))?;
    let fh = ez_product(g, &f, &h, mul)?;
    let hf = ez_product(g, &h, &f, mul)?;
    let sym = if fh != hf && fh != hf.negate() {
        Check::pass("EZ product is not graded symmetric", format!("f⌣h − h⌣f = {}", fh.minus(&hf).witness(nerve).unwrap_or_default()))
    } else {
        Check::fail("EZ product is not graded symmetric", "no counterexample on this nerve")
    };
    Ok(vec![
        Check::from_residual("EZ associativity", assoc).with_detail(format!("{trials} triples")),
        Check::from_residual("EZ Leibniz rule", leibniz),
        sym,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycx::{GaussRat, Form};

    fn b(i: usize) -> Poly {
        Poly::var(i)
    }

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("U{i}")).collect()
    }

    /// Three charts related by opposite shears; `σ ≠ 0` on the triple.
    pub(crate) fn shear_nerve() -> GluingData {
        let psis = vec![
            PolyBiholo::identity(2),
            PolyBiholo::shear(2, 1, b(0).pow(2)).unwrap(),
            PolyBiholo::shear(2, 1, b(0).pow(2)).unwrap().then(&PolyBiholo::shear(2, 0, b(1).pow(2)).unwrap()).unwrap(),
        ];
        GluingData::from_charts(names(3), &psis, XiChoice::Glued).unwrap()
    }

    fn affine_nerve() -> GluingData {
        let a = PolyBiholo::affine(
            &[vec![GaussRat::int(2), GaussRat::int(1)], vec![GaussRat::int(1), GaussRat::int(1)]],
            &[GaussRat::int(1), GaussRat::int(0)],
        )
        .unwrap();
        GluingData::from_charts(names(3), &[PolyBiholo::identity(2), a.clone(), a.then(&a).unwrap()], XiChoice::Glued).unwrap()
    }

    #[test]
    fn delta_squares_to_zero() {
        let g = shear_nerve();
        let mut s = Sampler::new(1);
        let c = Cochain::from_fn(g.nerve(), 0, |_| Ok(s.holo(2, 3))).unwrap();
        assert!(differential(&g, &differential(&g, &c).unwrap()).unwrap().is_zero());
        let f = Cochain::from_fn(g.nerve(), 0, |_| Ok(b(0))).unwrap();
        let df = differential(&g, &f).unwrap();
        assert_eq!(df.get(&[0, 1]), None);
        assert_eq!(*df.get(&[1, 2]).unwrap(), b(1).pow(2));
    }

    #[test]
    fn gluing_predicates() {
        for g in [shear_nerve(), affine_nerve()] {
            for c in check_gluing(&g).unwrap() {
                assert!(c.passed, "{c}");
            }
            let (_, _, checks) = obstruction_cocycles(&g).unwrap();
            assert!(checks.iter().all(|c| c.passed));
        }
        let bad = shear_nerve().with_xi(1, 0, Form::db(0).wedge(&Form::db(1))).unwrap();
        let checks = check_gluing(&bad).unwrap();
        assert!(!checks[1].passed);
        assert!(checks[1].witness.as_ref().unwrap().starts_with("U0U1U2"));
    }

    #[test]
    fn reverse_pairs_compose_to_identity() {
        let g = shear_nerve();
        let phi = g.phi(2, 0).unwrap();
        let back = g.phi(0, 2).unwrap();
        let eta = crate::algebroid::composite_xi(&phi, &g.xi(2, 0).unwrap(), &back, &g.xi(0, 2).unwrap()).unwrap();
        assert!(eta.is_zero());
    }

    #[test]
    fn homotopy_dg_equations() {
        for g in [shear_nerve(), affine_nerve()] {
            for c in homotopy_dg_check(&g, 2, 7, false).unwrap() {
                assert!(c.passed, "{c}");
            }
        }
        let mutated = homotopy_dg_check(&shear_nerve(), 2, 7, true).unwrap();
        assert!(!mutated[1].passed);
    }

    #[test]
    fn ez_product_properties() {
        for c in ez_checks(&shear_nerve(), 3, 2).unwrap() {
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn staircases() {
        let g = shear_nerve();
        let mut s = Sampler::new(5);
        let gamma0 = MatForm::from_fn(2, |_, _| Form::one_form(&[s.smooth(2, 1, 1), s.smooth(2, 1, 1)]));
        let gammas = propagate_connection(&g, &gamma0).unwrap();
        let rep = staircase_check(&g, &gammas).unwrap();
        println!("{rep}");
        assert!(rep.passed(), "{rep}");
        let psis = vec![PolyBiholo::identity(2), PolyBiholo::monomial_twist()];
        let lg = GluingData::from_charts(names(2), &psis, XiChoice::Glued).unwrap();
        let gammas = propagate_connection(&lg, &gamma0).unwrap();
        let rep = staircase_check(&lg, &gammas).unwrap();
        assert!(rep.passed(), "{rep}");
        println!("{rep}");
        assert!(rep.findings.iter().any(|f| f.contains("= −{Tr θ")), "{rep}");
    }

    #[test]
    fn radial_obstruction_on_four_charts() {
        let sh = |i, p: Poly| PolyBiholo::shear(2, i, p).unwrap();
        let psis = vec![
            PolyBiholo::identity(2),
            sh(1, b(0).pow(2)),
            sh(0, b(1).pow(2)),
            sh(1, b(0).pow(3)).then(&sh(0, b(1).pow(2))).unwrap(),
        ];
        let g = GluingData::from_charts(names(4), &psis, XiChoice::Radial).unwrap();
        let (assoc, _, checks) = obstruction_cocycles(&g).unwrap();
        println!("{}", assoc.witness(g.nerve()).unwrap_or_default());
        assert!(!assoc.is_zero());
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
        let glued = GluingData::from_charts(names(4), &psis, XiChoice::Glued).unwrap();
        assert!(assoc_cochain(&glued).unwrap().is_zero());
    }
}
