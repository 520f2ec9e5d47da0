//! Named verification suites, one per module, as run by `cdo verify`.
//!
//! Cheap suites use `trials` samples per check. The symbolic Čech and
//! Dolbeault suites are far more expensive per sample and use
//! `heavy_trials(trials) = ⌈trials / 10⌉`.

use crate::algebroid::{axioms_check, composition_law_check, morphism_check, preserves_conformal, Cdo, VAMorphism};
use crate::cech::{check_gluing, ez_checks, homotopy_dg_check, obstruction_cocycles, propagate_connection, staircase_check, GluingData, XiChoice};
use crate::dolbeault::{dolbeault_suite, iso_suite, Geometry};
use crate::genus::{character_identity_check, cdo_character, hrr, todd_and_ahat, witten_genus, ChernData, SymExpansion};
use crate::polycx::{chern_simons, curvature, poincare_solve, Form, MatForm, Operator, Poly, PolyBiholo, Q};
use crate::qseries::{eisenstein, eta_power, modularity_decompose, Decomposition, QSeries};
use crate::random::Sampler;
use crate::report::{Check, SuiteReport};
use crate::voa::{algebroid_bridge, borcherds_check, hom_check, oscillator_character, random_basis_state, ConformalData, PhiXiHom};
use crate::{Error, Result};
use num::{One, Zero};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Qseries,
    Genus,
    Polycx,
    Algebroid,
    Voa,
    Cech,
    Staircase,
    Dolbeault,
    Iso,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Qseries,
        Suite::Genus,
        Suite::Polycx,
        Suite::Algebroid,
        Suite::Voa,
        Suite::Cech,
        Suite::Staircase,
        Suite::Dolbeault,
        Suite::Iso,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Qseries => "qseries",
            Suite::Genus => "genus",
            Suite::Polycx => "polycx",
            Suite::Algebroid => "algebroid",
            Suite::Voa => "voa",
            Suite::Cech => "cech",
            Suite::Staircase => "staircase",
            Suite::Dolbeault => "dolbeault",
            Suite::Iso => "iso",
        }
    }

    /// Suites that need a nerve with gluing data.
    pub fn needs_nerve(self) -> bool {
        matches!(self, Suite::Cech | Suite::Staircase | Suite::Dolbeault | Suite::Iso)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::Input(format!("unknown suite `{s}` (expected one of {})", names.join(", ")))
            })
    }
}

/// Which `(1,0)` connection the Dolbeault suites put on chart 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectionKind {
    /// Random polynomial entries.
    Generic,
    /// `G^{-1}∂G` for a random unipotent `G`, so the curvature is of type `(1,1)`.
    Type11,
}

impl ConnectionKind {
    pub fn name(self) -> &'static str {
        match self {
            ConnectionKind::Generic => "generic",
            ConnectionKind::Type11 => "type11",
        }
    }
}

impl FromStr for ConnectionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic" => Ok(ConnectionKind::Generic),
            "type11" => Ok(ConnectionKind::Type11),
            _ => Err(Error::Input(format!("unknown connection kind `{s}` (expected generic or type11)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub dim: usize,
    pub seed: u64,
    pub trials: usize,
    pub order: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { dim: 2, seed: 0, trials: 10, order: 10 }
    }
}

pub fn heavy_trials(trials: usize) -> usize {
    trials.div_ceil(10).max(1)
}

/// Optional inputs supplied by a scenario; suites fall back to built-in models.
#[derive(Clone, Debug)]
pub struct Inputs {
    pub gluing: Option<GluingData>,
    pub connection: ConnectionKind,
    pub geometry_seed: u64,
    pub chern: Option<ChernData>,
}

impl Default for Inputs {
    fn default() -> Self {
        Inputs { gluing: None, connection: ConnectionKind::Generic, geometry_seed: 1, chern: None }
    }
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("U{i}")).collect()
}

fn need_dim2(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::Input(format!("shear models need dimension ≥ 2, got {d}")));
    }
    Ok(())
}

/// Three charts `id`, `b² ↦ b² + (b¹)²` and that shear followed by
/// `b¹ ↦ b¹ + (b²)²`, with `ξ` glued through chart 0.
pub fn shear_nerve(d: usize) -> Result<GluingData> {
    need_dim2(d)?;
    let b = Poly::var;
    let s1 = PolyBiholo::shear(d, 1, b(0).pow(2))?;
    let s2 = s1.then(&PolyBiholo::shear(d, 0, b(1).pow(2))?)?;
    GluingData::from_charts(names(3), &[PolyBiholo::identity(d), s1, s2], XiChoice::Glued)
}

/// Two charts related by `b² ↦ b² + (b¹)²`.
pub fn shear_model(d: usize) -> Result<GluingData> {
    need_dim2(d)?;
    let s1 = PolyBiholo::shear(d, 1, Poly::var(0).pow(2))?;
    GluingData::from_charts(names(2), &[PolyBiholo::identity(d), s1], XiChoice::Glued)
}

/// `b^{k+1} ↦ b^{k+1} + (b^k)²` for `k = 1..d` cyclically; `WZ ≠ 0` once `d ≥ 3`.
pub fn cyclic_shears(d: usize) -> Result<PolyBiholo> {
    need_dim2(d)?;
    let mut phi = PolyBiholo::identity(d);
    for k in 0..d {
        phi = phi.then(&PolyBiholo::shear(d, (k + 1) % d, Poly::var(k).pow(2))?)?;
    }
    Ok(phi)
}

pub fn build_geometry(gluing: GluingData, kind: ConnectionKind, seed: u64) -> Result<Geometry> {
    match kind {
        ConnectionKind::Generic => Geometry::random(gluing, seed),
        ConnectionKind::Type11 => Geometry::random_type11(gluing, seed),
    }
}

/// Runs one suite and stamps its wall-clock time.
pub fn run(suite: Suite, opts: &SuiteOptions, inputs: &Inputs) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut rep = match suite {
        Suite::Qseries => qseries_suite(opts.order)?,
        Suite::Genus => genus_suite(opts, inputs.chern.as_ref())?,
        Suite::Polycx => polycx_suite(opts.dim, opts.trials, opts.seed)?,
        Suite::Algebroid => algebroid_suite(opts.dim, opts.trials, opts.seed)?,
        Suite::Voa => voa_suite(opts.dim, opts.trials, opts.seed)?,
        Suite::Cech => {
            let g = nerve_or(inputs, || shear_nerve(opts.dim))?;
            cech_suite(&g, heavy_trials(opts.trials), opts.seed)?
        }
        Suite::Staircase => {
            let g = nerve_or(inputs, || shear_nerve(opts.dim))?;
            staircase_suite(&g, opts.seed)?
        }
        Suite::Dolbeault => {
            let g = nerve_or(inputs, || shear_model(opts.dim))?;
            let geom = build_geometry(g, inputs.connection, inputs.geometry_seed)?;
            dolbeault_suite(&geom, heavy_trials(opts.trials), opts.trials.max(1), opts.seed)?
        }
        Suite::Iso => {
            let g = nerve_or(inputs, || shear_model(opts.dim))?;
            let geom = build_geometry(g, inputs.connection, inputs.geometry_seed)?;
            iso_suite(&geom, heavy_trials(opts.trials), opts.seed)?
        }
    };
    rep.elapsed_ms = start.elapsed().as_millis();
    Ok(rep)
}

fn nerve_or(inputs: &Inputs, default: impl FnOnce() -> Result<GluingData>) -> Result<GluingData> {
    match &inputs.gluing {
        Some(g) => Ok(g.clone()),
        None => default(),
    }
}

fn first_mismatch(a: &QSeries, b: &QSeries) -> Option<String> {
    a.first_difference(b).map(|n| format!("coefficient {n}: {} vs {}", a.coeff(n), b.coeff(n)))
}

/// `∏_{n≥1}(1 − qⁿ)` by direct multiplication, as an oracle for the pentagonal expansion.
fn euler_product(order: usize) -> QSeries {
    let mut acc = QSeries::one(order);
    for n in 1..=order {
        let mut c = vec![Q::zero(); order + 1];
        c[0] = Q::one();
        c[n] = -Q::one();
        acc = acc.mul(&QSeries::new(Q::zero(), c));
    }
    acc
}

pub fn qseries_suite(order: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("qseries");
    let mut mult = None;
    for (a, b) in [(24, -24), (-2, 4), (1, 1), (12, 12), (-24, -24), (5, -7)] {
        let lhs = eta_power(a, order).mul(&eta_power(b, order));
        if let Some(w) = first_mismatch(&lhs, &eta_power(a + b, order)) {
            mult.get_or_insert(format!("η^{a}·η^{b}: {w}"));
        }
    }
    rep.checks.push(Check::from_residual("η^a·η^b = η^(a+b)", mult).with_detail(format!("order {order}")));

    let oracle = euler_product(order.max(20)).pow(24)?.with_offset(Q::one());
    rep.checks.push(
        Check::from_residual("η^24 matches the direct product", first_mismatch(&eta_power(24, order.max(20)), &oracle))
            .with_detail(format!("order {}", order.max(20))),
    );

    let e4 = eisenstein(4, order)?;
    let e6 = eisenstein(6, order)?;
    let disc = e4.pow(3)?.sub(&e6.pow(2)?)?;
    let eta24 = eta_power(24, order);
    let mut shifted = vec![Q::zero(); order + 1];
    for (n, slot) in shifted.iter_mut().enumerate().skip(1) {
        *slot = eta24.coeff(n - 1) * Q::from_integer(1728.into());
    }
    rep.checks.push(
        Check::from_residual("E4³ − E6² = 1728·η^24", first_mismatch(&disc, &QSeries::new(Q::zero(), shifted)))
            .with_detail(format!("order {order}")),
    );

    let decomposition = modularity_decompose(&e4.mul(&e6), 10, order)?;
    rep.checks.push(match decomposition {
        Decomposition::Member(m) if m.len() == 1 && m.values().all(|c| c.is_one()) => {
            Check::pass("E4·E6 decomposes as itself in weight 10", "")
        }
        other => Check::fail("E4·E6 decomposes as itself in weight 10", format!("{other:?}")),
    });
    Ok(rep)
}

pub fn genus_suite(opts: &SuiteOptions, extra: Option<&ChernData>) -> Result<SuiteReport> {
    let order = opts.order;
    let mut rep = SuiteReport::new("genus");
    let point = witten_genus(&ChernData::point(), order)?.value;
    rep.checks.push(Check::from_residual("W(point) = 1", first_mismatch(&point, &QSeries::one(order))));

    let k3 = ChernData::k3();
    let w0 = witten_genus(&k3, order)?.value.coeff(0);
    let (td, ah) = todd_and_ahat(&k3)?;
    let two = Q::from_integer(2.into());
    rep.checks.push(if w0 == two && ah == two && td == two {
        Check::pass("c1² = 0, c2 = 24: W q⁰ = Â = Todd = 2", "")
    } else {
        Check::fail("c1² = 0, c2 = 24: W q⁰ = Â = Todd = 2", format!("W q⁰ = {w0}, Â = {ah}, Todd = {td}"))
    });

    let mut s = Sampler::new(opts.seed);
    let char_order = order.min(8);
    let (mut ahat, mut ident, mut weight_one) = (None, None, None);
    for t in 0..opts.trials {
        let d = 1 + (t % 4) as u32;
        let data = s.chern(d);
        let w = witten_genus(&data, 0)?.value.coeff(0);
        let a = todd_and_ahat(&data)?.1;
        if w != a {
            ahat.get_or_insert(format!("{data}: W q⁰ = {w}, Â = {a}"));
        }
        let free = s.c1_free_chern(d);
        let c = character_identity_check(&free, char_order)?;
        if let Some((n, x, y)) = c.first_difference {
            ident.get_or_insert(format!("{free}: coefficient {n}: {x} vs {y}"));
        }
        let ch = cdo_character(&data, 1)?.value.coeff(1);
        let omega = hrr(&data, &SymExpansion::chern_character(-1, d, d, 0))?.coeff(0);
        let tangent = hrr(&data, &SymExpansion::chern_character(1, d, d, 0))?.coeff(0);
        if ch != &omega + &tangent {
            weight_one.get_or_insert(format!("{data}: {ch} vs χ(Ω¹) + χ(T) = {}", omega + tangent));
        }
    }
    rep.checks.push(Check::from_residual("W q⁰ = Â", ahat).with_detail(format!("{} random data", opts.trials)));
    rep.checks.push(
        Check::from_residual("character = ∫e^{c1/2}W/η^{2d} for c1-free data", ident)
            .with_detail(format!("{} random data, d ≤ 4, order {char_order}", opts.trials)),
    );
    rep.checks.push(Check::from_residual("character weight 1 = χ(Ω¹) + χ(T)", weight_one));

    let mut zero = None;
    for d in 1..=3 {
        let z = ChernData::zero(d);
        if !witten_genus(&z, order)?.value.is_zero() || !cdo_character(&z, order)?.value.is_zero() {
            zero.get_or_insert(format!("d = {d}"));
        }
    }
    rep.checks.push(Check::from_residual("zero Chern numbers give zero series", zero));

    if let Some(data) = extra {
        let w = witten_genus(data, order)?.value.coeff(0);
        let a = todd_and_ahat(data)?.1;
        rep.checks.push(Check::from_residual(
            format!("supplied data {data}: W q⁰ = Â"),
            (w != a).then(|| format!("{w} vs {a}")),
        ));
        if data.is_c1_free() {
            let c = character_identity_check(data, char_order)?;
            rep.checks.push(Check::from_residual(
                format!("supplied data {data}: character identity"),
                c.first_difference.map(|(n, x, y)| format!("coefficient {n}: {x} vs {y}")),
            ));
        }
    }
    Ok(rep)
}

/// A tame automorphism: an affine map followed by a random quadratic shear.
fn random_tame(s: &mut Sampler, d: usize) -> Result<PolyBiholo> {
    let phi = s.affine(d);
    if d < 2 {
        return Ok(phi);
    }
    phi.then(&s.shear(d, 2))
}

pub fn polycx_suite(d: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("polycx");
    let mut s = Sampler::new(seed);
    let (mut mc, mut wz, mut functorial, mut d2, mut poincare, mut cs) = (None, None, None, None, None, None);
    for t in 0..trials {
        let phi1 = random_tame(&mut s, d)?;
        let phi2 = random_tame(&mut s, d)?;
        let th = phi1.theta();
        if !(&th.d_holo() + &th.mul(th)).is_zero() {
            mc.get_or_insert(format!("trial {t}: φ = {:?}", phi1.forward()));
        }
        if !phi1.wz().d_holo().is_zero() {
            wz.get_or_insert(format!("trial {t}: ∂WZ = {}", phi1.wz().d_holo()));
        }
        let w = s.form(d, 1, 1, 2, 1);
        let x = s.holo_field(d, 2);
        let comp = phi1.then(&phi2)?;
        let form_ok = comp.pull_form(&w)? == phi1.pull_form(&phi2.pull_form(&w)?)?;
        let field_ok = comp.pull_field(&x)? == phi1.pull_field(&phi2.pull_field(&x)?)?;
        if !(form_ok && field_ok) {
            functorial.get_or_insert(format!("trial {t}: forms {form_ok}, fields {field_ok}"));
        }
        let f = s.smooth(d, 3, 2);
        let df = Form::function(f).d();
        if !df.d().is_zero() || !w.d().d().is_zero() {
            d2.get_or_insert(format!("trial {t}"));
        }
        for op in [Operator::Holo, Operator::Anti] {
            let exact = op.apply(&s.form(d, 1, 0, 2, 2));
            let exact = if op == Operator::Anti { op.apply(&s.form(d, 0, 1, 2, 2)) } else { exact };
            if exact.is_zero() {
                continue;
            }
            let prim = poincare_solve(&exact, op)?;
            if op.apply(&prim) != exact {
                poincare.get_or_insert(format!("trial {t}: {op:?} primitive of {exact} fails"));
            }
        }
        let gamma = MatForm::from_fn(d, |_, _| s.form(d, 1, 0, 2, 1));
        let r = curvature(&gamma);
        if chern_simons(&gamma).d() != r.mul(&r).trace() {
            cs.get_or_insert(format!("trial {t}"));
        }
    }
    let detail = format!("{trials} trials, d = {d}");
    rep.checks.push(Check::from_residual("∂θ + θ∧θ = 0", mc).with_detail(detail.clone()));
    rep.checks.push(Check::from_residual("∂WZ = 0", wz));
    rep.checks.push(Check::from_residual("(φ₂∘φ₁)* = φ₁*φ₂* on forms and fields", functorial));
    rep.checks.push(Check::from_residual("d² = 0", d2));
    rep.checks.push(Check::from_residual("Poincaré primitives resubstitute", poincare));
    rep.checks.push(Check::from_residual("dCS(Γ) = Tr(R∧R)", cs).with_detail(detail));
    Ok(rep)
}

/// `ξ` with `∂ξ = WZ_φ`, zero when `WZ_φ` vanishes.
pub fn xi_for(phi: &PolyBiholo) -> Result<Form> {
    let wz = phi.wz();
    if wz.is_zero() {
        Ok(Form::zero())
    } else {
        poincare_solve(&wz, Operator::Holo)
    }
}

pub fn algebroid_suite(d: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("algebroid");
    let cdo = Cdo { d };
    rep.extend(axioms_check(&cdo, trials, seed, 3));
    let mut s = Sampler::new(seed.wrapping_add(1));
    let phi = random_tame(&mut s, d)?;
    let m = VAMorphism::from_phi_xi(phi.clone(), xi_for(&phi)?)?;
    rep.extend(
        morphism_check(&m, &cdo, &cdo, trials, seed, 2)?
            .into_iter()
            .map(|c| Check { name: format!("tame (φ, ξ): {}", c.name), ..c }),
    );
    let (p1, p2) = (s.affine(d), s.affine(d));
    rep.extend(
        composition_law_check(&p1, &Form::zero(), &p2, &Form::zero(), trials.min(20), seed)?
            .into_iter()
            .map(|c| Check { name: format!("affine pair: {}", c.name), ..c }),
    );
    let (p1, p2) = (random_tame(&mut s, d)?, random_tame(&mut s, d)?);
    let (x1, x2) = (xi_for(&p1)?, xi_for(&p2)?);
    rep.extend(
        composition_law_check(&p1, &x1, &p2, &x2, trials.min(20), seed)?
            .into_iter()
            .map(|c| Check { name: format!("tame pair: {}", c.name), ..c }),
    );
    if d >= 3 {
        let p1 = cyclic_shears(d)?;
        let p2 = random_tame(&mut s, d)?;
        let (x1, x2) = (xi_for(&p1)?, xi_for(&p2)?);
        let label = if p1.wz().is_zero() { "cyclic shears" } else { "cyclic shears, WZ ≠ 0" };
        rep.extend(
            composition_law_check(&p1, &x1, &p2, &x2, trials.min(10), seed)?
                .into_iter()
                .map(|c| Check { name: format!("{label}: {}", c.name), ..c }),
        );
    }
    if d >= 2 {
        let sh = PolyBiholo::shear(d, 1, Poly::var(0).pow(2))?;
        rep.checks.push(Check::from_residual(
            "shears preserve the conformal element",
            (!preserves_conformal(&sh)).then(|| "Tr θ ≠ 0 for a shear".to_string()),
        ));
    }
    Ok(rep)
}

pub fn voa_suite(d: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("voa");
    let cap = 4;
    let conf = ConformalData::new(d, cap)?;
    let c = conf.central_charge()?;
    rep.checks.push(Check::from_residual(
        "ν(3)ν = d|0⟩",
        (c != crate::polycx::GaussRat::int(2 * d as i64)).then(|| format!("central charge {c}")),
    ));
    let mut s = Sampler::new(seed);
    let (mut grading, mut translation) = (None, None);
    for _ in 0..trials.min(20) {
        for w in 0..=2 {
            let u = random_basis_state(&mut s, d, w, cap)?;
            if conf.virasoro(0, &u)? != u.scale(&crate::polycx::GaussRat::int(w as i64)) {
                grading.get_or_insert(format!("L0 on {u}"));
            }
            if conf.virasoro(-1, &u)? != u.translate()? {
                translation.get_or_insert(format!("L−1 on {u}"));
            }
        }
    }
    rep.checks.push(Check::from_residual("L0 = weight", grading));
    rep.checks.push(Check::from_residual("L−1 = T", translation));
    rep.extend(borcherds_check(d, 2, trials.min(20), seed)?);

    let affine = s.affine(d);
    let hom = PhiXiHom::new(affine, Form::zero(), cap)?;
    rep.extend(hom_check(&hom, 2, trials.min(20), seed)?.into_iter().map(|c| Check { name: format!("affine: {}", c.name), ..c }));
    if d >= 2 {
        let phi = random_tame(&mut s, d)?;
        let hom = PhiXiHom::new(phi.clone(), xi_for(&phi)?, cap)?;
        rep.extend(hom_check(&hom, 2, trials.min(10), seed)?.into_iter().map(|c| Check { name: format!("tame: {}", c.name), ..c }));
        let expect = phi.theta().trace().is_zero();
        let got = hom.preserves_conformal()?;
        rep.checks.push(Check::from_residual(
            "Φ(ν) = ν exactly when Tr θ = 0",
            (expect != got).then(|| format!("Tr θ = 0 is {expect}, Φ(ν) = ν is {got}")),
        ));
    }
    let mut bridge = None;
    for _ in 0..trials.min(20) {
        let (f, x, y) = (s.holo(d, 3), s.holo_field(d, 3), s.holo_field(d, 3));
        if let Some(c) = algebroid_bridge(&f, &x, &y)?.into_iter().find(|c| !c.passed) {
            bridge.get_or_insert(c.to_string());
        }
    }
    rep.checks.push(Check::from_residual("VOA products match the CDO maps", bridge));
    let osc = oscillator_character(d, 6);
    let eta = eta_power(-2 * d as i64, 6).with_offset(Q::zero());
    rep.checks.push(Check::from_residual("oscillator character = ∏(1−qⁿ)^{−2d}", first_mismatch(&osc, &eta)));
    Ok(rep)
}

pub fn cech_suite(g: &GluingData, trials: usize, seed: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("cech");
    rep.extend(check_gluing(g)?);
    rep.extend(obstruction_cocycles(g)?.2);
    rep.extend(homotopy_dg_check(g, trials, seed, false)?);
    rep.extend(ez_checks(g, trials, seed)?);
    Ok(rep)
}

/// Propagates a random `Γ_0` over the nerve and runs the staircase arrows.
pub fn staircase_suite(g: &GluingData, seed: u64) -> Result<SuiteReport> {
    let d = g.dim();
    let mut s = Sampler::new(seed);
    let gamma0 = MatForm::from_fn(d, |_, _| Form::one_form(&(0..d).map(|_| s.smooth(d, 1, 1)).collect::<Vec<_>>()));
    let gammas = propagate_connection(g, &gamma0)?;
    staircase_check(g, &gammas)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn cheap_suites_pass() {
        let opts = SuiteOptions { dim: 2, seed: 7, trials: 8, order: 8 };
        for s in [Suite::Qseries, Suite::Genus, Suite::Polycx, Suite::Algebroid, Suite::Voa] {
            let rep = run(s, &opts, &Inputs::default()).unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn one_dimensional_models_are_rejected() {
        assert!(matches!(shear_nerve(1), Err(Error::Input(_))));
    }

    #[test]
    fn cyclic_shears_carry_wz() {
        assert!(cyclic_shears(2).unwrap().wz().is_zero());
        let wz = cyclic_shears(3).unwrap().wz();
        assert_eq!(wz, Form::db(0).wedge(&Form::db(1)).wedge(&Form::db(2)).scale_c(&crate::polycx::GaussRat::int(-8)));
    }

    #[test]
    fn algebroid_suite_in_three_dimensions() {
        let rep = algebroid_suite(3, 5, 2).unwrap();
        assert!(rep.passed(), "{rep}");
        assert!(rep.checks.iter().any(|c| c.name.starts_with("cyclic shears, WZ ≠ 0")));
    }
}
