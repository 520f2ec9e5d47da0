//! Acceptance criteria, one timed line each. Every criterion is an exact
//! identity; the limit is wall-clock time for the whole criterion.
//!
//! cargo test --release --test acceptance

use cdo::algebroid::{axioms_check, composition_law_check, Cdo};
use cdo::cech::{ez_checks, homotopy_dg_check, obstruction_cocycles, GluingData, XiChoice};
use cdo::dolbeault::{dbar_check, exactness_check, gluing_check, h_check, invariant_check, iso_conditions_check, Frame};
use cdo::genus::{character_identity_check, todd_and_ahat, witten_genus, ChernData};
use cdo::polycx::{poincare_solve, Form, GaussRat, Operator, Poly, PolyBiholo, Q};
use cdo::qseries::{eisenstein, eta_power, QSeries};
use cdo::random::Sampler;
use cdo::report::Check;
use cdo::suites::{build_geometry, cyclic_shears, shear_model, shear_nerve, staircase_suite, ConnectionKind};
use cdo::voa::{hom_check, ConformalData, PhiXiHom};
use cdo::Result;
use std::process::ExitCode;
use std::time::{Duration, Instant};

const SEED: u64 = 20_240_601;

struct Outcome {
    checks: Vec<Check>,
    findings: Vec<String>,
}

impl From<Vec<Check>> for Outcome {
    fn from(checks: Vec<Check>) -> Self {
        Outcome { checks, findings: Vec::new() }
    }
}

fn labelled(label: &str, checks: Vec<Check>) -> Vec<Check> {
    checks.into_iter().map(|c| Check { name: format!("{label}: {}", c.name), ..c }).collect()
}

fn central_charge() -> Result<Outcome> {
    let mut checks = Vec::new();
    for d in 1..=3 {
        let c = ConformalData::new(d, 4)?.central_charge()?;
        let expected = GaussRat::int(2 * d as i64);
        checks.push(Check::from_residual(format!("d = {d}: c = {expected}"), (c != expected).then(|| format!("c = {c}"))));
    }
    Ok(checks.into())
}

fn algebroid_axioms() -> Result<Outcome> {
    let mut checks = Vec::new();
    for d in 1..=3 {
        checks.extend(axioms_check(&Cdo { d }, 100, SEED + d as u64, 3));
    }
    Ok(checks.into())
}

fn composition_cocycle() -> Result<Outcome> {
    let mut s = Sampler::new(SEED);
    let mut checks = Vec::new();
    for d in 1..=3 {
        let (p1, p2) = (s.affine(d), s.affine(d));
        checks.extend(labelled(&format!("affine, d = {d}"), composition_law_check(&p1, &Form::zero(), &p2, &Form::zero(), 20, SEED)?));
    }
    let b = Poly::var;
    let up = PolyBiholo::shear(2, 1, b(0).pow(2))?;
    let across = PolyBiholo::shear(2, 0, b(1).pow(3))?;
    checks.extend(labelled("opposite shears", composition_law_check(&up, &Form::zero(), &across, &Form::zero(), 20, SEED)?));

    // WZ of the cyclic composite is a nonzero multiple of db1∧db2∧db3.
    let p1 = cyclic_shears(3)?;
    let p2 = PolyBiholo::shear(3, 0, b(2).pow(2))?;
    checks.push(Check::from_residual("d = 3 shears have WZ ≠ 0", p1.wz().is_zero().then(|| "WZ = 0".into())));
    let x1 = poincare_solve(&p1.wz(), Operator::Holo)?;
    let x2 = poincare_solve(&p2.wz(), Operator::Holo)?;
    checks.extend(labelled("d = 3 shears", composition_law_check(&p1, &x1, &p2, &x2, 10, SEED)?));
    Ok(checks.into())
}

fn homomorphism() -> Result<Outcome> {
    let mut s = Sampler::new(SEED);
    let mut checks = Vec::new();
    let b = Poly::var;
    let cases = [
        ("affine", s.affine(2)),
        ("shear", PolyBiholo::shear(2, 1, b(0).pow(2))?),
        ("affine then shear", s.affine(2).then(&PolyBiholo::shear(2, 0, b(1).pow(2))?)?),
    ];
    for (name, phi) in cases {
        let xi = poincare_solve(&phi.wz(), Operator::Holo)?;
        let hom = PhiXiHom::new(phi, xi, 4)?;
        checks.extend(labelled(name, hom_check(&hom, 2, 20, SEED)?));
    }
    // Polynomial automorphisms have constant Jacobian determinant; the
    // Laurent twist supplies the Tr θ ≠ 0 side.
    let mut iff = None;
    let mut both_sides = [false, false];
    for (name, phi) in [
        ("identity", PolyBiholo::identity(2)),
        ("shear", PolyBiholo::shear(2, 1, b(0).pow(2))?),
        ("affine", s.affine(2)),
        ("twist", PolyBiholo::monomial_twist()),
        ("twist after shear", PolyBiholo::shear(2, 1, b(0).pow(2))?.then(&PolyBiholo::monomial_twist())?),
    ] {
        let traceless = phi.theta().trace().is_zero();
        both_sides[traceless as usize] = true;
        let preserved = PhiXiHom::new(phi, Form::zero(), 4)?.preserves_conformal()?;
        if preserved != traceless {
            iff.get_or_insert(format!("{name}: Tr θ = 0 is {traceless}, Φ(ν) = ν is {preserved}"));
        }
    }
    if !(both_sides[0] && both_sides[1]) {
        iff.get_or_insert("cases do not cover both Tr θ = 0 and Tr θ ≠ 0".into());
    }
    checks.push(Check::from_residual("Φ(ν) = ν exactly when Tr θ = 0", iff));
    Ok(checks.into())
}

fn character_identity() -> Result<Outcome> {
    let mut s = Sampler::new(SEED);
    let mut bad = None;
    for t in 0..20 {
        let data = s.c1_free_chern(1 + t % 4);
        let c = character_identity_check(&data, 8)?;
        if let Some((n, x, y)) = c.first_difference {
            bad.get_or_insert(format!("{data}: coefficient {n}: {x} vs {y}"));
        }
    }
    Ok(vec![Check::from_residual("character = q^(−d/12)-side of ∫e^{c1/2}W/η^{2d}", bad).with_detail("20 data, d ≤ 4, order 8")].into())
}

/// `Π(1 − qⁿ)` from Euler's pentagonal number theorem.
fn pentagonal(order: usize) -> Vec<i64> {
    let mut c = vec![0i64; order + 1];
    for k in 0i64.. {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let mut any = false;
        for g in [k * (3 * k - 1) / 2, k * (3 * k + 1) / 2] {
            if (g as usize) <= order {
                c[g as usize] = sign;
                any = true;
            }
        }
        if !any {
            break;
        }
    }
    c
}

fn genus_anchors() -> Result<Outcome> {
    let mut checks = Vec::new();
    let point = witten_genus(&ChernData::point(), 10)?.value;
    checks.push(Check::from_residual("W(point) = 1", (point != QSeries::one(10)).then(|| point.to_string())));

    let k3 = ChernData::from_pairs(2, [("c1^2", 0), ("c2", 24)])?;
    let w0 = witten_genus(&k3, 4)?.value.coeff(0);
    let (todd, ahat) = todd_and_ahat(&k3)?;
    let two = Q::from_integer(2.into());
    checks.push(Check::from_residual(
        "c1² = 0, c2 = 24: q⁰ = 2 = Â = Todd",
        (w0 != two || ahat != two || todd != two).then(|| format!("q⁰ = {w0}, Â = {ahat}, Todd = {todd}")),
    ));

    let order = 20;
    let euler = QSeries::from_ints(Q::from_integer(0.into()), &pentagonal(order));
    let oracle = euler.pow(24)?.with_offset(Q::from_integer(1.into()));
    let eta24 = eta_power(24, order);
    checks.push(Check::from_residual(
        "η^24 matches the pentagonal oracle",
        eta24.first_difference(&oracle).map(|n| format!("coefficient {n}: {} vs {}", eta24.coeff(n), oracle.coeff(n))),
    ).with_detail("order 20"));

    let order = 10;
    let (e4, e6) = (eisenstein(4, order)?, eisenstein(6, order)?);
    let disc = e4.pow(3)?.sub(&e6.pow(2)?)?;
    let eta24 = eta_power(24, order);
    let bad = (0..=order).find(|&n| {
        let expected = if n == 0 { Q::from_integer(0.into()) } else { eta24.coeff(n - 1) * Q::from_integer(1728.into()) };
        disc.coeff(n) != expected
    });
    checks.push(Check::from_residual("E4³ − E6² = 1728·η^24", bad.map(|n| format!("coefficient {n}"))).with_detail("order 10"));
    Ok(checks.into())
}

fn cech_layer() -> Result<Outcome> {
    let g = shear_nerve(2)?;
    let mut checks = homotopy_dg_check(&g, 5, SEED, false)?;
    checks.extend(obstruction_cocycles(&g)?.2);
    let ez = ez_checks(&g, 5, SEED)?;
    let counterexample = ez.iter().find(|c| c.name.contains("not graded symmetric")).map(|c| c.detail.clone()).filter(|d| !d.is_empty());
    checks.extend(ez);
    checks.push(Check::from_residual(
        "graded-symmetry counterexample produced",
        counterexample.is_none().then(|| "no counterexample".into()),
    ));
    Ok(checks.into())
}

fn staircases() -> Result<Outcome> {
    let mut checks = Vec::new();
    let mut findings = Vec::new();
    let shear = staircase_suite(&shear_nerve(2)?, SEED)?;
    let twist = GluingData::from_charts(
        vec!["U0".into(), "U1".into(), "U2".into()],
        &[PolyBiholo::identity(2), PolyBiholo::monomial_twist(), PolyBiholo::shear(2, 1, Poly::var(0).pow(2))?],
        XiChoice::Glued,
    )?;
    let twist = staircase_suite(&twist, SEED)?;
    for (label, rep) in [("shear nerve", &shear), ("twist nerve", &twist)] {
        checks.extend(labelled(label, rep.checks.clone()));
        findings.extend(rep.findings.iter().map(|f| format!("{label}: {f}")));
    }
    let sigma = shear.findings.iter().any(|f| f.contains("+σ"));
    checks.push(Check::from_residual("σ-sign finding recorded", (!sigma).then(|| "no σ finding".into())));
    Ok(Outcome { checks, findings })
}

fn dolbeault_layer() -> Result<Outcome> {
    let geom = build_geometry(shear_model(2)?, ConnectionKind::Generic, SEED)?;
    let mut checks = gluing_check(&geom)?;
    checks.extend(h_check(&geom, 3, SEED)?);
    checks.extend(dbar_check(&geom, 3, SEED)?);
    let mut s = Sampler::new(SEED);
    let frames = vec![Frame::coordinate(2), Frame::random_unipotent(&mut s, 2)?];
    checks.extend(invariant_check(&geom, 0, &frames, 3, SEED)?);
    let (exact, primitives) = exactness_check(&geom, 0, 20, SEED)?;
    checks.push(exact);
    checks.push(Check::from_residual(
        "20 primitives returned",
        (primitives.len() != 20).then(|| format!("{} primitives", primitives.len())),
    ));
    Ok(checks.into())
}

fn iso_conditions() -> Result<Outcome> {
    let mut checks = Vec::new();
    let mut s = Sampler::new(SEED);
    for kind in [ConnectionKind::Generic, ConnectionKind::Type11] {
        let geom = build_geometry(shear_model(2)?, kind, SEED)?;
        let gamma = geom.gamma(0);
        let h3 = geom.h3(0);
        let mut mismatch = None;
        let (mut agree_true, mut agree_false) = (0, 0);
        for t in 0..6 {
            let beta_tilde = s.form(2, 2, 0, 2, 1);
            let h3_prime = &h3 - &beta_tilde.d().scale_c(&GaussRat::int(2));
            // Odd trials perturb β̃ after building H′.
            let used = if t % 2 == 0 { beta_tilde } else { &beta_tilde + &s.form(2, 2, 0, 1, 1) };
            let res = iso_conditions_check(gamma, &h3, &h3_prime, &used, 5, SEED + t)?;
            let four = res[..4].iter().all(|c| c.passed);
            let two = res[4..].iter().all(|c| c.passed);
            match (four, two) {
                (true, true) => agree_true += 1,
                (false, false) => agree_false += 1,
                _ => {
                    mismatch.get_or_insert(format!("trial {t}: four conditions {four}, reduced equations {two}"));
                }
            }
        }
        if agree_true == 0 || agree_false == 0 {
            mismatch.get_or_insert(format!("only one side exercised ({agree_true} hold, {agree_false} fail)"));
        }
        checks.push(
            Check::from_residual(format!("{}: four conditions ⇔ two reduced equations", kind.name()), mismatch)
                .with_detail(format!("{agree_true} triples hold, {agree_false} fail")),
        );
    }
    Ok(checks.into())
}

type Criterion = (&'static str, u64, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("central charge", 10, central_charge),
        ("algebroid axioms", 60, algebroid_axioms),
        ("composition cocycle", 60, composition_cocycle),
        ("homomorphism", 120, homomorphism),
        ("character identity", 60, character_identity),
        ("genus anchors", 10, genus_anchors),
        ("Čech layer", 120, cech_layer),
        ("staircases", 120, staircases),
        ("Dolbeault layer", 180, dolbeault_layer),
        ("isomorphism conditions", 60, iso_conditions),
    ];
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let (ok, detail) = match &outcome {
            Ok(o) => match o.checks.iter().find(|c| !c.passed) {
                None => (in_time, format!("{} checks", o.checks.len())),
                Some(c) => (false, c.to_string()),
            },
            Err(e) => (false, format!("error: {e}")),
        };
        let verdict = if ok { "PASS" } else { "FAIL" };
        let slow = if in_time { "" } else { " (over the limit)" };
        println!("criterion {:>2} {verdict} {name}: {detail}; {:.2}s of {limit}s{slow}", i + 1, elapsed.as_secs_f64());
        if let Ok(o) = &outcome {
            for f in &o.findings {
                println!("             finding: {f}");
            }
        }
        if !ok {
            failures += 1;
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
