//! Smooth connection data on a glued nerve and the Dolbeault side of the
//! picture: the local primitive `h`, the deformed operators `Δ̄`, `∗̄`, `{}̄₀`,
//! `{}̄₁`, their frame-independent forms, the Čech–Dolbeault double complex,
//! local exactness and the isomorphism conditions between two `H`-twists.
//!
//! Forms valued in `Ω¹` are stored as ordinary `(1,q)` forms `Σ db^k ∧ α_k`.
//! The Dolbeault operator on coefficients is `1 ⊗ ∂̄`, which on a `(p,q)`
//! form is `(−1)^p d_anti`.

use crate::algebroid::{Cdo, VertexAlgebroid};
use crate::cech::{cech_delta, differential, CechValue, Cochain, GluingData};
use crate::polycx::form::{anti_bit, holo_bit};
use crate::polycx::homotopy::homotopy;
use crate::polycx::{chern_simons, curvature, Form, GaussRat, MatForm, Operator, Poly, PolyBiholo, VField};
use crate::random::Sampler;
use crate::report::{Check, SuiteReport};
use crate::voa::{splitting, BGState, ConformalData};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

fn half() -> GaussRat {
    GaussRat::rat(1, 2)
}

/// `1 ⊗ ∂̄` on a form whose holomorphic factors are treated as a frame.
pub fn dbar(w: &Form) -> Form {
    let mut out = Form::zero();
    for (p, q) in w.bidegrees() {
        let part = w.part(p, q).d_anti();
        out = if p % 2 == 0 { &out + &part } else { &out - &part };
    }
    out
}

/// A `T`-valued `(0,q)` form, stored as one `(0,*)` form per component.
#[derive(Clone, PartialEq)]
pub struct DolField {
    comps: Vec<Form>,
}

impl DolField {
    pub fn zero(d: usize) -> Self {
        DolField { comps: vec![Form::zero(); d] }
    }

    pub fn from_field(x: &VField) -> Self {
        DolField { comps: x.0.iter().map(|c| Form::function(c.clone())).collect() }
    }

    pub fn from_components(comps: Vec<Form>) -> Result<Self> {
        if comps.iter().any(|c| c.bidegrees().iter().any(|(p, _)| *p != 0)) {
            return Err(Error::Precondition("field components must be (0,q)-forms".into()));
        }
        Ok(DolField { comps })
    }

    pub fn random(s: &mut Sampler, d: usize, q: usize, deg: u32, deg_bar: u32) -> Self {
        DolField { comps: (0..d).map(|_| s.form(d, 0, q, deg, deg_bar)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Form] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Form::is_zero)
    }

    /// `X = Σ_I X_I ⊗ db̄^I` as a map from anti masks to fields.
    pub fn split(&self) -> BTreeMap<u64, VField> {
        let d = self.dim();
        let mut out: BTreeMap<u64, VField> = BTreeMap::new();
        for (j, c) in self.comps.iter().enumerate() {
            for (m, f) in c.terms() {
                out.entry(*m).or_insert_with(|| VField::zero(d)).0[j] += f;
            }
        }
        out
    }

    pub fn join(d: usize, parts: &BTreeMap<u64, VField>) -> Self {
        let mut comps = vec![Form::zero(); d];
        for (m, x) in parts {
            for (j, c) in x.0.iter().enumerate() {
                comps[j].add_term(*m, c.clone());
            }
        }
        DolField { comps }
    }

    pub fn dbar(&self) -> DolField {
        DolField { comps: self.comps.iter().map(Form::d_anti).collect() }
    }

    pub fn scale(&self, f: &Poly) -> DolField {
        DolField { comps: self.comps.iter().map(|c| c.scale(f)).collect() }
    }

    /// Applies a field-to-1-form operator coefficientwise: `Σ_I op(X_I) ∧ db̄^I`.
    pub fn apply_op(&self, op: impl Fn(&VField) -> Result<Form>) -> Result<Form> {
        let mut out = Form::zero();
        for (m, x) in self.split() {
            out = &out + &op(&x)?.wedge(&Form::term(m, Poly::one()));
        }
        Ok(out)
    }

    /// Componentwise radial `∂̄`-homotopy.
    pub fn homotopy(&self) -> Result<DolField> {
        Ok(DolField { comps: self.comps.iter().map(|c| homotopy(c, Operator::Anti)).collect::<Result<_>>()? })
    }
}

impl CechValue for DolField {
    fn plus(&self, o: &Self) -> Self {
        DolField { comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect() }
    }

    fn negate(&self) -> Self {
        DolField { comps: self.comps.iter().map(|c| -c).collect() }
    }

    fn is_null(&self) -> bool {
        self.is_zero()
    }

    fn pull(&self, phi: &PolyBiholo) -> Result<Self> {
        let d = self.dim();
        let mut comps = vec![Form::zero(); d];
        for (m, x) in self.split() {
            let pulled = phi.pull_field(&x)?;
            let w = Form::term(m, Poly::one()).pullback(phi.forward())?;
            for (j, c) in pulled.0.iter().enumerate() {
                comps[j] = &comps[j] + &w.scale(c);
            }
        }
        Ok(DolField { comps })
    }
}

impl fmt::Display for DolField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, c) in self.comps.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for DolField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `h(Y) = ∂_iY^j Γ^i_j + ½ Tr[Γ(Y)Γ] − ½ ι_Y B` for a smooth field `Y`.
pub fn h_local(gamma: &MatForm, b: &Form, y: &VField) -> Form {
    let d = y.dim();
    let mut acc = Form::zero();
    for i in 0..d {
        for j in 0..d {
            let dij = y.0[j].d(i);
            if !dij.is_zero() {
                acc = &acc + &gamma.get(i, j).scale(&dij);
            }
        }
    }
    let tr = gamma.contract(y).mul(gamma).trace();
    &(&acc + &tr.scale_c(&half())) - &b.contract(y).scale_c(&half())
}

/// Per-chart smooth data: a `(1,0)` connection matrix `Γ_α` and a `(2,0)`
/// form `B_α`, glued by `g^{-1}·φ*Γ_β·g − Γ_α = −θ` and
/// `φ*B_β − B_α = ξ + Tr(θ∧Γ_α)`.
#[derive(Clone, Debug)]
pub struct Geometry {
    gluing: GluingData,
    gammas: Vec<MatForm>,
    bs: Vec<Form>,
}

/// `B_β = (φ^{-1})*(B_0 + ξ + Tr(θ∧Γ_0))` for `φ = φ_{β0}`; `trace_term = false`
/// drops the connection term, which breaks the gluing law.
pub fn propagate_b(g: &GluingData, gammas: &[MatForm], b0: &Form, trace_term: bool) -> Result<Vec<Form>> {
    let mut out = vec![b0.clone()];
    for b in 1..g.nerve().len() {
        let phi = g.phi(b, 0)?;
        let mut local = b0 + &g.xi(b, 0)?;
        if trace_term {
            local = &local + &phi.theta().mul(&gammas[0]).trace();
        }
        out.push(local.pullback(phi.inverse_images())?);
    }
    Ok(out)
}

impl Geometry {
    pub fn new(gluing: GluingData, gammas: Vec<MatForm>, bs: Vec<Form>) -> Result<Self> {
        let n = gluing.nerve().len();
        if gammas.len() != n || bs.len() != n {
            return Err(Error::Shape(format!("{n} charts but {} connections and {} B-fields", gammas.len(), bs.len())));
        }
        if let Some(gm) = gammas.iter().find(|gm| gm.dim() != gluing.dim()) {
            return Err(Error::Shape(format!("connection of size {} on a {}-dimensional nerve", gm.dim(), gluing.dim())));
        }
        Ok(Geometry { gluing, gammas, bs })
    }

    /// Propagates `Γ_0` and `B_0` from chart 0 to every chart.
    pub fn propagate(gluing: GluingData, gamma0: &MatForm, b0: &Form) -> Result<Self> {
        let gammas = crate::cech::propagate_connection(&gluing, gamma0)?;
        let bs = propagate_b(&gluing, &gammas, b0, true)?;
        Geometry::new(gluing, gammas, bs)
    }

    /// Random smooth `(1,0)` connection and `(2,0)` form on chart 0, propagated.
    pub fn random(gluing: GluingData, seed: u64) -> Result<Self> {
        let d = gluing.dim();
        let mut s = Sampler::new(seed);
        let gamma0 = MatForm::from_fn(d, |_, _| {
            (0..d).fold(Form::zero(), |acc, i| &acc + &Form::term(holo_bit(i), s.smooth(d, 1, 1)))
        });
        let b0 = if d >= 2 { s.form(d, 2, 0, 1, 1) } else { Form::zero() };
        Geometry::propagate(gluing, &gamma0, &b0)
    }

    /// Like [`Geometry::random`] but with `Γ_0 = G^{-1}∂G` for a unipotent
    /// smooth `G`, so the curvature has type `(1,1)`.
    pub fn random_type11(gluing: GluingData, seed: u64) -> Result<Self> {
        let d = gluing.dim();
        let mut s = Sampler::new(seed);
        let g = Frame::random_unipotent(&mut s, d)?;
        let gamma0 = g.a_inv.mul(&g.a.d_holo());
        let b0 = if d >= 2 { s.form(d, 2, 0, 1, 1) } else { Form::zero() };
        Geometry::propagate(gluing, &gamma0, &b0)
    }

    pub fn with_b(&self, bs: Vec<Form>) -> Result<Self> {
        Geometry::new(self.gluing.clone(), self.gammas.clone(), bs)
    }

    pub fn gluing(&self) -> &GluingData {
        &self.gluing
    }

    pub fn dim(&self) -> usize {
        self.gluing.dim()
    }

    pub fn gamma(&self, a: usize) -> &MatForm {
        &self.gammas[a]
    }

    pub fn b(&self, a: usize) -> &Form {
        &self.bs[a]
    }

    pub fn h(&self, a: usize, y: &VField) -> Form {
        h_local(&self.gammas[a], &self.bs[a], y)
    }

    pub fn h_dol(&self, a: usize, x: &DolField) -> Result<Form> {
        x.apply_op(|y| Ok(self.h(a, y)))
    }

    /// `H = dB − CS(Γ)`.
    pub fn h3(&self, a: usize) -> Form {
        &self.bs[a].d() - &chern_simons(&self.gammas[a])
    }

    /// `A = Tr Γ`.
    pub fn a_form(&self, a: usize) -> Form {
        self.gammas[a].trace()
    }

    /// `Δ̄X = h(∂̄X) − ∂̄(hX)`.
    pub fn bar_delta(&self, a: usize, x: &DolField) -> Result<Form> {
        Ok(&self.h_dol(a, &x.dbar())? - &dbar(&self.h_dol(a, x)?))
    }

    /// `f ∗̄ X = f ∗ X + h(fX) − f h(X)`.
    pub fn bar_star(&self, a: usize, f: &Poly, x: &VField) -> Form {
        let cdo = Cdo { d: self.dim() };
        &(&cdo.star(f, x) + &self.h(a, &x.scale(f))) - &self.h(a, x).scale(f)
    }

    /// `{X,Y}̄₀ = {X,Y}₀ − ⟨hX, Y⟩ − ⟨hY, X⟩`.
    pub fn bar_bracket0(&self, a: usize, x: &VField, y: &VField) -> Poly {
        let cdo = Cdo { d: self.dim() };
        &(&cdo.bracket0(x, y) - &y.pair(&self.h(a, x))) - &x.pair(&self.h(a, y))
    }

    /// `{X,Y}̄₁ = {X,Y}₁ − L_X hY + L_Y hX − ∂⟨hX, Y⟩ + h[X,Y]`.
    pub fn bar_bracket1(&self, a: usize, x: &VField, y: &VField) -> Form {
        let cdo = Cdo { d: self.dim() };
        let (hx, hy) = (self.h(a, x), self.h(a, y));
        let mut out = &cdo.bracket1(x, y) - &hy.lie(x);
        out = &out + &hx.lie(y);
        out = &out - &Form::function(y.pair(&hx)).d_holo();
        &out + &self.h(a, &x.bracket(y))
    }
}

/// A smooth frame `e_a = A^i_a ∂_i` of the holomorphic tangent bundle.
#[derive(Clone, Debug)]
pub struct Frame {
    a: MatForm,
    a_inv: MatForm,
}

impl Frame {
    pub fn coordinate(d: usize) -> Self {
        Frame { a: MatForm::identity(d), a_inv: MatForm::identity(d) }
    }

    pub fn new(a: MatForm) -> Result<Self> {
        let a_inv = a.inverse()?;
        Ok(Frame { a, a_inv })
    }

    /// A unipotent upper-triangular frame with smooth entries.
    pub fn random_unipotent(s: &mut Sampler, d: usize) -> Result<Self> {
        let a = MatForm::from_fn(d, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => Form::function(Poly::one()),
            std::cmp::Ordering::Less => Form::function(s.smooth(d, 1, 1)),
            std::cmp::Ordering::Greater => Form::zero(),
        });
        Frame::new(a)
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn vector(&self, k: usize) -> VField {
        VField((0..self.dim()).map(|i| self.a.fun(i, k)).collect())
    }

    pub fn anti_vector(&self, k: usize) -> Vec<Poly> {
        (0..self.dim()).map(|i| self.a.fun(i, k).conj()).collect()
    }

    pub fn covector(&self, k: usize) -> Form {
        Form::one_form(&(0..self.dim()).map(|i| self.a_inv.fun(k, i)).collect::<Vec<_>>())
    }

    pub fn anti_covector(&self, k: usize) -> Form {
        self.covector(k).conj()
    }
}

/// `(∇̃X)^i_k = ∂_kX^i + Γ^i_k(X)`.
pub fn nabla_tilde(gamma: &MatForm, x: &VField) -> MatForm {
    let gx = gamma.contract(x);
    MatForm::from_fn(x.dim(), |i, k| &Form::function(x.0[i].d(k)) + gx.get(i, k))
}

/// `∇_Z M = Z(M) + [Γ(Z), M]` for a matrix of functions.
fn nabla_mat(gamma: &MatForm, z: &VField, m: &MatForm) -> MatForm {
    let g = gamma.contract(z);
    let dm = m.map(|f| Form::function(z.apply(&f.scalar())));
    &(&dm + &g.mul(m)) - &m.mul(&g)
}

/// The frame-independent expressions for the deformed operators, evaluated in
/// the frame `e`.
pub struct Invariant<'a> {
    pub gamma: &'a MatForm,
    pub h3: &'a Form,
    pub frame: &'a Frame,
}

impl Invariant<'_> {
    fn d(&self) -> usize {
        self.frame.dim()
    }

    /// `Δ̄X = [Tr(∇̃X ∘ R(e_a, ē_b)) + ½ H(X, e_a, ē_b)] e^a ∧ ē^b`.
    pub fn delta(&self, x: &VField) -> Form {
        let r = curvature(self.gamma);
        let nt = nabla_tilde(self.gamma, x);
        let hx = self.h3.contract(x);
        let mut out = Form::zero();
        for a in 0..self.d() {
            let ea = self.frame.vector(a);
            let ra = r.contract(&ea);
            let hxa = hx.contract(&ea);
            for b in 0..self.d() {
                let eb = self.frame.anti_vector(b);
                let rab = ra.contract_anti(&eb);
                let c = &nt.mul(&rab).trace().scalar() + &hxa.contract_anti(&eb).scalar().scale(&half());
                if !c.is_zero() {
                    out = &out + &self.frame.covector(a).wedge(&self.frame.anti_covector(b)).scale(&c);
                }
            }
        }
        out
    }

    /// `f ∗̄ X = −(∇_{e_a} ∂f)(X) e^a`.
    pub fn star(&self, f: &Poly, x: &VField) -> Form {
        let d = self.d();
        let df: Vec<Poly> = (0..d).map(|j| f.d(j)).collect();
        let mut out = Form::zero();
        for a in 0..d {
            let ea = self.frame.vector(a);
            let g = self.gamma.contract(&ea);
            // (∇_e ∂f)_j = e(∂_j f) − Γ^m_j(e) ∂_m f
            let mut c = Poly::zero();
            for j in 0..d {
                let mut comp = ea.apply(&df[j]);
                for (m, dfm) in df.iter().enumerate() {
                    comp -= &(&g.fun(m, j) * dfm);
                }
                c += &(&comp * &x.0[j]);
            }
            out = &out - &self.frame.covector(a).scale(&c);
        }
        out
    }

    /// `{X,Y}̄₀ = −Tr(∇̃X ∇̃Y)`.
    pub fn bracket0(&self, x: &VField, y: &VField) -> Poly {
        -&nabla_tilde(self.gamma, x).mul(&nabla_tilde(self.gamma, y)).trace().scalar()
    }

    /// `{X,Y}̄₁ = [−Tr(∇_{e_a}(∇̃X) ∘ ∇̃Y) + ½ H(X, Y, e_a)] e^a`. Matches the
    /// local operator only when `R` has no `(2,0)` part; see [`Invariant::bracket1`].
    pub fn bracket1_type11(&self, x: &VField, y: &VField) -> Form {
        let (nx, ny) = (nabla_tilde(self.gamma, x), nabla_tilde(self.gamma, y));
        let hxy = self.h3.contract(x).contract(y);
        let mut out = Form::zero();
        for a in 0..self.d() {
            let ea = self.frame.vector(a);
            let c = &(-&nabla_mat(self.gamma, &ea, &nx).mul(&ny).trace().scalar())
                + &hxy.contract(&ea).scalar().scale(&half());
            out = &out + &self.frame.covector(a).scale(&c);
        }
        out
    }

    /// The type-(1,1) expression plus `[−Tr(R(X,e_a)∇̃Y) + Tr(R(Y,e_a)∇̃X)] e^a`,
    /// valid for any smooth `(1,0)` connection.
    pub fn bracket1(&self, x: &VField, y: &VField) -> Form {
        let (nx, ny) = (nabla_tilde(self.gamma, x), nabla_tilde(self.gamma, y));
        let r = curvature(self.gamma);
        let (rx, ry) = (r.contract(x), r.contract(y));
        let mut out = self.bracket1_type11(x, y);
        for a in 0..self.d() {
            let ea = self.frame.vector(a);
            let c = &ry.contract(&ea).mul(&nx).trace().scalar() - &rx.contract(&ea).mul(&ny).trace().scalar();
            if !c.is_zero() {
                out = &out + &self.frame.covector(a).scale(&c);
            }
        }
        out
    }
}

/// `Δ̌` on Dolbeault-valued cochains: `Δ_{10}(X_I) ∧ φ_{10}*(db̄^I)`.
pub fn cech_delta_dol(g: &GluingData, x: &Cochain<DolField>) -> Result<Cochain<Form>> {
    let mut out = Cochain::new(x.degree() + 1);
    for s in g.nerve().simplices(x.degree() + 1) {
        let Some(v) = x.get(&s[1..]) else { continue };
        let phi = g.phi(s[1], s[0])?;
        let mut acc = Form::zero();
        for (m, y) in v.split() {
            let anti = Form::term(m, Poly::one()).pullback(phi.forward())?;
            acc = &acc + &g.delta(s[1], s[0], &y)?.wedge(&anti);
        }
        out.set(s.clone(), acc);
    }
    Ok(out)
}

/// Values the Dolbeault operator acts on.
pub trait Dolbeault: CechValue {
    fn dbar_value(&self) -> Self;
}

impl Dolbeault for Form {
    fn dbar_value(&self) -> Self {
        dbar(self)
    }
}

impl Dolbeault for DolField {
    fn dbar_value(&self) -> Self {
        self.dbar()
    }
}

/// An element of the Čech–Dolbeault total complex, split by Čech degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Total<T> {
    parts: BTreeMap<usize, Cochain<T>>,
}

impl<T: Dolbeault> Total<T> {
    pub fn from_cochain(c: Cochain<T>) -> Self {
        let mut t = Total { parts: BTreeMap::new() };
        t.add(c);
        t
    }

    fn add(&mut self, c: Cochain<T>) {
        let p = c.degree();
        let next = match self.parts.remove(&p) {
            Some(old) => old.plus(&c),
            None => c,
        };
        if !next.is_zero() {
            self.parts.insert(p, next);
        }
    }

    pub fn plus(&self, o: &Total<T>) -> Total<T> {
        let mut out = self.clone();
        for c in o.parts.values() {
            out.add(c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, p: usize) -> Option<&Cochain<T>> {
        self.parts.get(&p)
    }

    /// `D = δ + (−1)^p ∂̄` on each Čech degree `p`.
    pub fn differential(&self, g: &GluingData) -> Result<Total<T>> {
        let mut out = Total { parts: BTreeMap::new() };
        for (p, c) in &self.parts {
            out.add(differential(g, c)?);
            out.add(c.map(|_, v| Ok(v.dbar_value()))?.signed(*p));
        }
        Ok(out)
    }

    pub fn witness(&self, g: &GluingData) -> Option<String> {
        self.parts.iter().next().and_then(|(p, c)| c.witness(g.nerve()).map(|w| format!("p={p} {w}")))
    }
}

impl Total<DolField> {
    /// `Δ̌` applied degreewise.
    pub fn cech_delta(&self, g: &GluingData) -> Result<Total<Form>> {
        let mut out = Total { parts: BTreeMap::new() };
        for c in self.parts.values() {
            out.add(cech_delta_dol(g, c)?);
        }
        Ok(out)
    }
}

fn note(slot: &mut Option<String>, failed: bool, msg: impl FnOnce() -> String) {
    if failed && slot.is_none() {
        *slot = Some(msg());
    }
}

/// Gluing laws for `Γ`, `B`, `H = dB − CS(Γ)` and `A = Tr Γ`.
pub fn gluing_check(geom: &Geometry) -> Result<Vec<Check>> {
    let g = &geom.gluing;
    let nerve = g.nerve();
    let (mut b_law, mut h_law, mut a_law) = (None, None, None);
    let mut a_glues = true;
    let mut conformal = true;
    for e in nerve.simplices(1) {
        let (a, b) = (e[0], e[1]);
        let phi = g.phi(b, a)?;
        let theta_tr = phi.theta().trace();
        let expected = &g.xi(b, a)? + &phi.theta().mul(&geom.gammas[a]).trace();
        let got = &phi.pull_form(&geom.bs[b])? - &geom.bs[a];
        note(&mut b_law, got != expected, || format!("{}: φ*B_β − B_α − ξ − Tr(θ∧Γ) = {}", nerve.label(e), &got - &expected));
        let dh = &phi.pull_form(&geom.h3(b))? - &geom.h3(a);
        note(&mut h_law, !dh.is_zero(), || format!("{}: φ*H_β − H_α = {dh}", nerve.label(e)));
        let da = &phi.pull_form(&geom.a_form(b))? - &geom.a_form(a);
        note(&mut a_law, da != -&theta_tr, || format!("{}: φ*A_β − A_α = {da}", nerve.label(e)));
        a_glues &= da.is_zero();
        conformal &= theta_tr.is_zero();
    }
    let (mut closed, mut types, mut trr) = (None, None, None);
    for a in 0..nerve.len() {
        let h = geom.h3(a);
        let r = curvature(&geom.gammas[a]);
        let rr = r.mul(&r).trace();
        note(&mut closed, h.d() != -&rr, || format!("chart {}: dH + Tr(R∧R) = {}", nerve.names()[a], &h.d() + &rr));
        let bad: Vec<_> = h.bidegrees().into_iter().filter(|b| *b != (3, 0) && *b != (2, 1)).collect();
        note(&mut types, !bad.is_empty(), || format!("chart {}: H has bidegrees {bad:?}", nerve.names()[a]));
        let tr_r = r.trace();
        note(&mut trr, geom.a_form(a).d() != tr_r, || format!("chart {}", nerve.names()[a]));
    }
    Ok(vec![
        Check::from_residual("connection transition law", crate::cech::connection_residual(g, &geom.gammas)?),
        Check::from_residual("B transition law", b_law),
        Check::from_residual("H = dB − CS(Γ) is global", h_law),
        Check::from_residual("H has type (3,0) + (2,1)", types),
        Check::from_residual("dH = −Tr(R∧R)", closed),
        Check::from_residual("φ*A_β − A_α = −Tr θ", a_law),
        Check::from_residual("A glues iff Tr θ = 0", (a_glues != conformal).then(|| format!("A glues: {a_glues}, Tr θ = 0: {conformal}"))),
        Check::from_residual("dA = Tr R", trr),
    ])
}

/// `Δ_{βα}(X) = φ*(h_β X) − h_α(φ*X)` on pairs, and `Δ̌ = δh − hδ` on
/// cochains of degree 0 and 1.
pub fn h_check(geom: &Geometry, trials: usize, seed: u64) -> Result<Vec<Check>> {
    let g = &geom.gluing;
    let nerve = g.nerve();
    let d = geom.dim();
    let mut s = Sampler::new(seed);
    let mut pairs = None;
    for _ in 0..trials {
        let x = s.smooth_field(d, 2, 1);
        for e in nerve.simplices(1) {
            for (b, a) in [(e[1], e[0]), (e[0], e[1])] {
                let phi = g.phi(b, a)?;
                let px = phi.pull_field(&x)?;
                let rhs = &phi.pull_form(&geom.h(b, &x))? - &geom.h(a, &px);
                let lhs = g.delta(b, a, &x)?;
                note(&mut pairs, lhs != rhs, || format!("({b},{a}): residual {}", &lhs - &rhs));
            }
        }
    }
    let h_cochain = |c: &Cochain<VField>| c.map(|sx, v| Ok(geom.h(sx[0], v)));
    let mut cech = None;
    for p in 0..2.min(nerve.len().saturating_sub(1)) {
        let x = Cochain::from_fn(nerve, p, |_| Ok(s.smooth_field(d, 2, 1)))?;
        let lhs = cech_delta(g, &x)?;
        let rhs = differential(g, &h_cochain(&x)?)?.minus(&h_cochain(&differential(g, &x)?)?);
        note(&mut cech, lhs != rhs, || format!("p={p}: {}", lhs.minus(&rhs).witness(nerve).unwrap_or_default()));
    }
    Ok(vec![
        Check::from_residual("Δ_βα = φ*h_β − h_α φ*", pairs).with_detail(format!("{trials} smooth fields")),
        Check::from_residual("Δ̌ = δh − hδ", cech),
    ])
}

/// `(∂̄^ch)² = 0`, globality of `Δ̄` and of the deformed operators.
pub fn dbar_check(geom: &Geometry, trials: usize, seed: u64) -> Result<Vec<Check>> {
    let g = &geom.gluing;
    let nerve = g.nerve();
    let d = geom.dim();
    let mut s = Sampler::new(seed);
    let (mut square, mut global, mut ops) = (None, None, None);
    for _ in 0..trials {
        for q in 0..2 {
            let x = DolField::random(&mut s, d, q, 2, 2);
            for a in 0..nerve.len() {
                let r = &dbar(&geom.bar_delta(a, &x)?) + &geom.bar_delta(a, &x.dbar())?;
                note(&mut square, !r.is_zero(), || format!("q={q} chart {}: ∂̄Δ̄ + Δ̄∂̄ = {r}", nerve.names()[a]));
            }
            for e in nerve.simplices(1) {
                let (a, b) = (e[0], e[1]);
                let phi = g.phi(b, a)?;
                let r = &phi.pull_form(&geom.bar_delta(b, &x)?)? - &geom.bar_delta(a, &x.pull(&phi)?)?;
                note(&mut global, !r.is_zero(), || format!("q={q} {}: {r}", nerve.label(e)));
            }
        }
        let (f, x, y) = (s.smooth(d, 2, 1), s.smooth_field(d, 2, 1), s.smooth_field(d, 2, 1));
        for e in nerve.simplices(1) {
            let (a, b) = (e[0], e[1]);
            let phi = g.phi(b, a)?;
            let (pf, px, py) = (phi.pull_fn(&f)?, phi.pull_field(&x)?, phi.pull_field(&y)?);
            let r1 = &phi.pull_form(&geom.bar_star(b, &f, &x))? - &geom.bar_star(a, &pf, &px);
            let r2 = &phi.pull_fn(&geom.bar_bracket0(b, &x, &y))? - &geom.bar_bracket0(a, &px, &py);
            let r3 = &phi.pull_form(&geom.bar_bracket1(b, &x, &y))? - &geom.bar_bracket1(a, &px, &py);
            note(&mut ops, !r1.is_zero(), || format!("∗̄ on {}: {r1}", nerve.label(e)));
            note(&mut ops, !r2.is_zero(), || format!("{{}}̄₀ on {}: {r2}", nerve.label(e)));
            note(&mut ops, !r3.is_zero(), || format!("{{}}̄₁ on {}: {r3}", nerve.label(e)));
        }
    }
    Ok(vec![
        Check::from_residual("(∂̄^ch)² = 0", square).with_detail("q = 0, 1"),
        Check::from_residual("Δ̄ is global", global),
        Check::from_residual("∗̄, {}̄₀, {}̄₁ are global", ops),
    ])
}

/// Local formulas for the deformed operators against the invariant ones in
/// each frame. When `R^{2,0} = 0` the shorter `{}̄₁` expression is checked too.
pub fn invariant_check(geom: &Geometry, chart: usize, frames: &[Frame], trials: usize, seed: u64) -> Result<Vec<Check>> {
    let d = geom.dim();
    let mut s = Sampler::new(seed);
    let h3 = geom.h3(chart);
    let type11 = curvature(geom.gamma(chart)).part(2, 0).is_zero();
    let mut slots: [Option<String>; 5] = Default::default();
    for (k, frame) in frames.iter().enumerate() {
        let inv = Invariant { gamma: geom.gamma(chart), h3: &h3, frame };
        for _ in 0..trials {
            let (f, x, y) = (s.smooth(d, 2, 1), s.smooth_field(d, 2, 1), s.smooth_field(d, 2, 1));
            let r = &geom.bar_delta(chart, &DolField::from_field(&x))? - &inv.delta(&x);
            note(&mut slots[0], !r.is_zero(), || format!("frame {k}: {r}"));
            let r = &geom.bar_star(chart, &f, &x) - &inv.star(&f, &x);
            note(&mut slots[1], !r.is_zero(), || format!("frame {k}: {r}"));
            let r = &geom.bar_bracket0(chart, &x, &y) - &inv.bracket0(&x, &y);
            note(&mut slots[2], !r.is_zero(), || format!("frame {k}: {r}"));
            let local = geom.bar_bracket1(chart, &x, &y);
            let r = &local - &inv.bracket1(&x, &y);
            note(&mut slots[3], !r.is_zero(), || format!("frame {k}: {r}"));
            if type11 {
                let r = &local - &inv.bracket1_type11(&x, &y);
                note(&mut slots[4], !r.is_zero(), || format!("frame {k}: {r}"));
            }
        }
    }
    let detail = format!("{} frames, {trials} trials", frames.len());
    let [a, b, c, e, f] = slots;
    let mut out = vec![
        Check::from_residual("Δ̄ local = invariant", a).with_detail(detail.clone()),
        Check::from_residual("∗̄ local = invariant", b).with_detail(detail.clone()),
        Check::from_residual("{}̄₀ local = invariant", c).with_detail(detail.clone()),
        Check::from_residual("{}̄₁ local = invariant", e).with_detail(detail.clone()),
    ];
    if type11 {
        out.push(Check::from_residual("{}̄₁ local = invariant without R^{2,0} terms", f).with_detail(detail));
    }
    Ok(out)
}

/// `D² = 0` and `DΔ̌ + Δ̌D = 0` on the Čech–Dolbeault total complex, and
/// agreement of `Δ̌` with the holomorphic one in form degree 0.
pub fn double_complex_check(g: &GluingData, trials: usize, seed: u64) -> Result<Vec<Check>> {
    let nerve = g.nerve();
    let d = g.dim();
    let mut s = Sampler::new(seed);
    let (mut sq_fn, mut sq_field, mut anti, mut q0) = (None, None, None, None);
    let top = nerve.len().min(3);
    for _ in 0..trials {
        for p in 0..top.saturating_sub(1) {
            for q in 0..2 {
                let f = Total::from_cochain(Cochain::from_fn(nerve, p, |_| Ok(s.form(d, 0, q, 2, 2)))?);
                let r = f.differential(g)?.differential(g)?;
                note(&mut sq_fn, !r.is_zero(), || format!("functions p={p} q={q}: {}", r.witness(g).unwrap_or_default()));
                let x = Total::from_cochain(Cochain::from_fn(nerve, p, |_| Ok(DolField::random(&mut s, d, q, 2, 2)))?);
                let r = x.differential(g)?.differential(g)?;
                note(&mut sq_field, !r.is_zero(), || format!("fields p={p} q={q}: {}", r.witness(g).unwrap_or_default()));
                if p + 2 < nerve.len() {
                    let r = x.cech_delta(g)?.differential(g)?.plus(&x.differential(g)?.cech_delta(g)?);
                    note(&mut anti, !r.is_zero(), || format!("p={p} q={q}: {}", r.witness(g).unwrap_or_default()));
                }
            }
            let x = Cochain::from_fn(nerve, p, |_| Ok(s.holo_field(d, 2)))?;
            let lifted = x.map(|_, v| Ok(DolField::from_field(v)))?;
            let r = cech_delta_dol(g, &lifted)?.minus(&cech_delta(g, &x)?);
            note(&mut q0, !r.is_zero(), || r.witness(nerve).unwrap_or_default());
        }
    }
    Ok(vec![
        Check::from_residual("D² = 0 on functions", sq_fn),
        Check::from_residual("D² = 0 on fields", sq_field),
        Check::from_residual("DΔ̌ + Δ̌D = 0", anti),
        Check::from_residual("Δ̌ in form degree 0 is the holomorphic Δ̌", q0),
    ])
}

/// A `∂̄^ch`-closed pair `(α, X)` of form degree `q ≥ 1` and a primitive `(β, Y)`.
#[derive(Clone, Debug)]
pub struct Primitive {
    pub alpha: Form,
    pub x: DolField,
    pub beta: Form,
    pub y: DolField,
}

/// `∂̄^ch(β, Y) = (∂̄β + Δ̄Y, ∂̄Y)`.
pub fn dbar_ch(geom: &Geometry, chart: usize, beta: &Form, y: &DolField) -> Result<(Form, DolField)> {
    Ok((&dbar(beta) + &geom.bar_delta(chart, y)?, y.dbar()))
}

/// Solves `∂̄^ch(β, Y) = (α, X)` by `Y = K̄X`, `β = K̄(α − Δ̄Y)`.
pub fn local_primitive(geom: &Geometry, chart: usize, alpha: &Form, x: &DolField) -> Result<(Form, DolField)> {
    let (ca, cx) = dbar_ch(geom, chart, alpha, x)?;
    if !ca.is_zero() || !cx.is_zero() {
        return Err(Error::NotClosed("pair is not ∂̄^ch-closed".into()));
    }
    let y = x.homotopy()?;
    let rest = alpha - &geom.bar_delta(chart, &y)?;
    // 1 ⊗ ∂̄ is −d_anti on (1,q) forms
    let beta = -&homotopy(&rest, Operator::Anti)?;
    Ok((beta, y))
}

/// Random closed pairs `∂̄^ch(β₀, Y₀)` and their primitives.
pub fn exactness_check(geom: &Geometry, chart: usize, count: usize, seed: u64) -> Result<(Check, Vec<Primitive>)> {
    let d = geom.dim();
    let mut s = Sampler::new(seed);
    let mut bad = None;
    let mut out = Vec::new();
    for k in 0..count {
        let q = 1 + k % d.max(1);
        let beta0 = s.form(d, 1, q - 1, 2, 2);
        let y0 = DolField::random(&mut s, d, q - 1, 2, 2);
        let (alpha, x) = dbar_ch(geom, chart, &beta0, &y0)?;
        let (beta, y) = local_primitive(geom, chart, &alpha, &x)?;
        let (a2, x2) = dbar_ch(geom, chart, &beta, &y)?;
        note(&mut bad, a2 != alpha || x2 != x, || format!("sample {k} (q={q}): residual {}", &a2 - &alpha));
        out.push(Primitive { alpha, x, beta, y });
    }
    Ok((Check::from_residual("local ∂̄^ch-exactness", bad).with_detail(format!("{count} closed pairs")), out))
}

/// Conditions for `β(X) = ι_X β̃` to identify the `H`-twisted and the
/// `H′`-twisted operators, checked through the invariant formulas.
pub fn iso_conditions_check(
    gamma: &MatForm,
    h3: &Form,
    h3_prime: &Form,
    beta_tilde: &Form,
    trials: usize,
    seed: u64,
) -> Result<Vec<Check>> {
    let d = gamma.dim();
    let frame = Frame::coordinate(d);
    let inv = Invariant { gamma, h3, frame: &frame };
    let inv2 = Invariant { gamma, h3: h3_prime, frame: &frame };
    let beta = |x: &VField| beta_tilde.contract(x);
    let mut s = Sampler::new(seed);
    let mut slots: [Option<String>; 4] = Default::default();
    for _ in 0..trials {
        let (f, x, y) = (s.smooth(d, 2, 1), s.smooth_field(d, 2, 1), s.smooth_field(d, 2, 1));
        // ∂̄(βX) − β(∂̄X) = Δ̄_H X − Δ̄_{H′} X
        let lhs = &dbar(&beta(&x)) - &DolField::from_field(&x).dbar().apply_op(|v| Ok(beta(v)))?;
        let rhs = &inv.delta(&x) - &inv2.delta(&x);
        note(&mut slots[0], lhs != rhs, || format!("residual {}", &lhs - &rhs));
        let lhs = &inv2.star(&f, &x) - &inv.star(&f, &x);
        let rhs = &beta(&x.scale(&f)) - &beta(&x).scale(&f);
        note(&mut slots[1], lhs != rhs, || format!("residual {}", &lhs - &rhs));
        let lhs = &inv2.bracket0(&x, &y) - &inv.bracket0(&x, &y);
        let rhs = -&(&y.pair(&beta(&x)) + &x.pair(&beta(&y)));
        note(&mut slots[2], lhs != rhs, || format!("residual {}", &lhs - &rhs));
        let lhs = &inv2.bracket1(&x, &y) - &inv.bracket1(&x, &y);
        let (bx, by) = (beta(&x), beta(&y));
        let mut rhs = &bx.lie(&y) - &by.lie(&x);
        rhs = &rhs - &Form::function(y.pair(&bx)).d_holo();
        rhs = &rhs + &beta(&x.bracket(&y));
        note(&mut slots[3], lhs != rhs, || format!("residual {}", &lhs - &rhs));
    }
    let diff = (h3 - h3_prime).scale_c(&half());
    let anti = beta_tilde.d_anti();
    let holo = beta_tilde.d_holo();
    let [a, b, c, e] = slots;
    Ok(vec![
        Check::from_residual("iso: Δ̄ condition", a),
        Check::from_residual("iso: ∗̄ condition", b),
        Check::from_residual("iso: {}̄₀ condition", c),
        Check::from_residual("iso: {}̄₁ condition", e),
        Check::from_residual("∂̄β̃ = ½(H − H′)^{2,1}", (anti != diff.part(2, 1)).then(|| format!("residual {}", &anti - &diff.part(2, 1)))),
        Check::from_residual("∂β̃ = ½(H − H′)^{3,0}", (holo != diff.part(3, 0)).then(|| format!("residual {}", &holo - &diff.part(3, 0)))),
    ])
}

fn one_form_state(d: usize, cap: i32, w: &Form) -> Result<BGState> {
    let mut out = BGState::zero(d, cap);
    for k in 0..d {
        let c = w.coeff(holo_bit(k));
        if !c.is_zero() {
            out = &out + &BGState::monomial(d, cap, &[], &[(k, -1)], c)?;
        }
    }
    Ok(out)
}

/// The conformal vector rebuilt from the smooth data, its action on
/// functions and deformed fields `X_E = s(X) − h(X)`, and `∂̄^ch ν = 0`.
pub fn conformal_suite(geom: &Geometry, chart: usize, trials: usize, seed: u64) -> Result<Vec<Check>> {
    let d = geom.dim();
    let cap = crate::voa::DEFAULT_CAP;
    let gamma = geom.gamma(chart);
    let nu = ConformalData::new(d, cap)?.nu;
    let x_e = |x: &VField| -> Result<BGState> { Ok(&splitting(x, cap)? - &one_form_state(d, cap, &geom.h(chart, x))?) };
    let b_state = |i: usize| BGState::monomial(d, cap, &[], &[(i, -1)], Poly::one());
    let g_state = |a: usize, b: usize| one_form_state(d, cap, gamma.get(a, b));
    let mut rebuilt = BGState::zero(d, cap);
    for i in 0..d {
        rebuilt = &rebuilt + &x_e(&VField::coord(d, i))?.nth_product(-1, &b_state(i)?)?;
    }
    for a in 0..d {
        for b in 0..d {
            rebuilt = &rebuilt + &g_state(a, b)?.nth_product(-1, &g_state(b, a)?)?.scale(&half());
        }
    }
    let rebuilt_check = Check::from_residual("Σ (∂_i)_E(−1) b^i + ½ Γ(−1)Γ = ν", (rebuilt != nu).then(|| format!("difference {}", &rebuilt - &nu)));

    let mut s = Sampler::new(seed);
    let mut slots: [Option<String>; 6] = Default::default();
    for _ in 0..trials {
        let f = s.smooth(d, 2, 1);
        let fs = BGState::function(d, cap, f.clone());
        let r = &nu.nth_product(0, &fs)? - &fs.translate()?;
        note(&mut slots[0], !r.is_zero(), || format!("ν(0)f − Tf = {r}"));
        let r = nu.nth_product(1, &fs)?;
        note(&mut slots[1], !r.is_zero(), || format!("ν(1)f = {r}"));
        let x = s.smooth_field(d, 2, 1);
        let xe = x_e(&x)?;
        let div = x.divergence();
        let tr = &nabla_tilde(gamma, &x).trace().scalar() - &geom.a_form(chart).contract(&x).scalar();
        let r = &nu.nth_product(2, &xe)? - &BGState::function(d, cap, div.clone());
        note(&mut slots[2], !r.is_zero() || tr != div, || format!("ν(2)X_E − div X = {r}"));
        let r = &nu.nth_product(1, &xe)? - &xe;
        note(&mut slots[3], !r.is_zero(), || format!("ν(1)X_E − X_E = {r}"));
        let r = &nu.nth_product(0, &xe)? - &xe.translate()?;
        note(&mut slots[4], !r.is_zero(), || format!("ν(0)X_E − T X_E = {r}"));
    }
    // ∂̄^ch ν = 0 by the Leibniz rule, one db̄^l component at a time
    let dbar_l = |w: &Form, l: usize| w.map_coeffs(|c| c.dbar(l));
    for l in 0..d {
        let mut acc = BGState::zero(d, cap);
        for i in 0..d {
            let dd = geom.bar_delta(chart, &DolField::from_field(&VField::coord(d, i)))?;
            let comp = Form::one_form(&(0..d).map(|k| dd.coeff(holo_bit(k) | anti_bit(l))).collect::<Vec<_>>());
            acc = &acc + &one_form_state(d, cap, &comp)?.nth_product(-1, &b_state(i)?)?;
        }
        for a in 0..d {
            for b in 0..d {
                let left = one_form_state(d, cap, &dbar_l(gamma.get(a, b), l))?.nth_product(-1, &g_state(b, a)?)?;
                let right = g_state(a, b)?.nth_product(-1, &one_form_state(d, cap, &dbar_l(gamma.get(b, a), l))?)?;
                acc = &acc + &(&left + &right).scale(&half());
            }
        }
        note(&mut slots[5], !acc.is_zero(), || format!("db̄^{} component: {acc}", l + 1));
    }
    let [a, b, c, e, f, h] = slots;
    Ok(vec![
        rebuilt_check,
        Check::from_residual("ν(0) f = T f", a),
        Check::from_residual("ν(1) f = 0", b),
        Check::from_residual("ν(2) X_E = Tr ∇̃X − A(X) = div X", c),
        Check::from_residual("ν(1) X_E = X_E", e),
        Check::from_residual("ν(0) X_E = T X_E", f),
        Check::from_residual("∂̄^ch ν = 0", h),
    ])
}

/// Every Dolbeault-side check on one geometry.
pub fn dolbeault_suite(geom: &Geometry, trials: usize, exact: usize, seed: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("dolbeault");
    rep.extend(gluing_check(geom)?);
    rep.extend(h_check(geom, trials, seed)?);
    rep.extend(dbar_check(geom, trials, seed + 1)?);
    let mut s = Sampler::new(seed + 2);
    let frames = vec![Frame::coordinate(geom.dim()), Frame::random_unipotent(&mut s, geom.dim())?];
    rep.extend(invariant_check(geom, 0, &frames, trials, seed + 3)?);
    rep.extend(double_complex_check(&geom.gluing, 1, seed + 4)?);
    rep.checks.push(exactness_check(geom, 0, exact, seed + 5)?.0);
    rep.extend(conformal_suite(geom, 0, trials, seed + 6)?);
    Ok(rep)
}

/// The isomorphism conditions for `H′ = H − 2dβ̃` and for a perturbed `β̃`.
pub fn iso_suite(geom: &Geometry, trials: usize, seed: u64) -> Result<SuiteReport> {
    let d = geom.dim();
    let mut rep = SuiteReport::new("iso");
    let mut s = Sampler::new(seed);
    let beta_tilde = s.form(d, 2, 0, 2, 1);
    let h3 = geom.h3(0);
    let h3_prime = &h3 - &beta_tilde.d().scale_c(&GaussRat::int(2));
    rep.extend(iso_conditions_check(geom.gamma(0), &h3, &h3_prime, &beta_tilde, trials, seed + 1)?);
    let wrong = &beta_tilde + &s.form(d, 2, 0, 1, 1);
    let mutated = iso_conditions_check(geom.gamma(0), &h3, &h3_prime, &wrong, trials, seed + 1)?;
    let failing = mutated.iter().filter(|c| !c.passed).count();
    rep.checks.push(if failing > 0 {
        Check::pass("perturbed β̃ is rejected", format!("{failing} of {} conditions fail", mutated.len()))
    } else {
        Check::fail("perturbed β̃ is rejected", "every condition still holds")
    });
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::XiChoice;

    fn shear_geometry(seed: u64) -> Geometry {
        let b = Poly::var;
        let psis = vec![
            PolyBiholo::identity(2),
            PolyBiholo::shear(2, 1, b(0).pow(2)).unwrap(),
            PolyBiholo::shear(2, 1, b(0).pow(3)).unwrap(),
        ];
        let names = (0..3).map(|i| format!("U{i}")).collect();
        Geometry::random(GluingData::from_charts(names, &psis, XiChoice::Glued).unwrap(), seed).unwrap()
    }

    fn assert_all(checks: &[Check]) {
        for c in checks {
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn gluing_and_h() {
        let geom = shear_geometry(1);
        assert_all(&gluing_check(&geom).unwrap());
        assert_all(&h_check(&geom, 2, 3).unwrap());
        let bs = propagate_b(geom.gluing(), &geom.gammas, geom.b(0), false).unwrap();
        assert_ne!(bs, geom.bs);
        let broken = geom.with_b(bs).unwrap();
        assert!(!h_check(&broken, 1, 3).unwrap()[0].passed);
    }

    #[test]
    fn dbar_globality() {
        assert_all(&dbar_check(&shear_geometry(2), 1, 4).unwrap());
    }

    #[test]
    fn invariant_formulas() {
        let geom = shear_geometry(2);
        let mut s = Sampler::new(9);
        let frames = vec![Frame::coordinate(2), Frame::random_unipotent(&mut s, 2).unwrap()];
        let checks = invariant_check(&geom, 0, &frames, 2, 5).unwrap();
        assert_eq!(checks.len(), 4);
        assert_all(&checks);
        // a generic connection has R^{2,0} ≠ 0 and the short expression misses it
        let h3 = geom.h3(0);
        let inv = Invariant { gamma: geom.gamma(0), h3: &h3, frame: &frames[0] };
        let (x, y) = (s.smooth_field(2, 2, 1), s.smooth_field(2, 2, 1));
        assert_ne!(inv.bracket1(&x, &y), inv.bracket1_type11(&x, &y));
    }

    #[test]
    fn invariant_formulas_type11() {
        let names = (0..2).map(|i| format!("U{i}")).collect();
        let psis = vec![PolyBiholo::identity(2), PolyBiholo::shear(2, 1, Poly::var(0).pow(2)).unwrap()];
        let geom = Geometry::random_type11(GluingData::from_charts(names, &psis, XiChoice::Glued).unwrap(), 6).unwrap();
        assert!(curvature(geom.gamma(1)).part(2, 0).is_zero());
        assert!(!curvature(geom.gamma(1)).is_zero());
        let mut s = Sampler::new(10);
        let frames = vec![Frame::coordinate(2), Frame::random_unipotent(&mut s, 2).unwrap()];
        let checks = invariant_check(&geom, 0, &frames, 2, 5).unwrap();
        assert_eq!(checks.len(), 5);
        assert_all(&checks);
    }

    #[test]
    fn double_complex() {
        let geom = shear_geometry(3);
        assert_all(&double_complex_check(geom.gluing(), 1, 6).unwrap());
    }

    #[test]
    fn exactness_and_iso() {
        let geom = shear_geometry(4);
        let (c, prims) = exactness_check(&geom, 0, 4, 7).unwrap();
        assert!(c.passed, "{c}");
        assert_eq!(prims.len(), 4);
        let rep = iso_suite(&geom, 2, 8).unwrap();
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn conformal() {
        let geom = shear_geometry(5);
        assert_all(&conformal_suite(&geom, 0, 2, 9).unwrap());
    }

    #[test]
    fn dbar_sign_on_one_forms() {
        let w = Form::db(0).scale(&Poly::bar_var(0));
        assert_eq!(dbar(&w), Form::term(holo_bit(0) | anti_bit(0), Poly::one()));
    }
}
