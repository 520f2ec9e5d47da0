//! Frozen values and independent oracles. Divisor sums and the Euler product
//! are recomputed here from scratch rather than taken from the library.

use cdo::genus::{cdo_character, witten_genus, ChernData};
use cdo::polycx::form::holo_bit;
use cdo::polycx::{q, qi, Form, Poly, PolyBiholo, Q};
use cdo::qseries::QSeries;
use cdo::scenario::Scenario;
use cdo::suites::{cyclic_shears, shear_nerve};
use cdo::voa::{oscillator_character, ConformalData};

fn sigma(k: u32, n: usize) -> i64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| (d as i64).pow(k)).sum()
}

/// `1 + c Σ σ_{k}(n) qⁿ`.
fn divisor_series(k: u32, c: i64, order: usize) -> QSeries {
    let coeffs: Vec<i64> = (0..=order).map(|n| if n == 0 { 1 } else { c * sigma(k, n) }).collect();
    QSeries::from_ints(qi(0), &coeffs)
}

fn euler_product(order: usize) -> QSeries {
    let mut acc = QSeries::one(order);
    for n in 1..=order {
        let mut f = vec![0i64; order + 1];
        f[0] = 1;
        f[n] = -1;
        acc = acc.mul(&QSeries::from_ints(qi(0), &f));
    }
    acc
}

fn ints(s: &QSeries) -> Vec<Q> {
    s.coeffs().to_vec()
}

#[test]
fn k3_witten_genus_is_twice_e2() {
    let w = witten_genus(&ChernData::k3(), 12).unwrap().value;
    assert_eq!(w, divisor_series(1, -24, 12).scale(&qi(2)));
}

#[test]
fn k3_character_is_frozen_and_matches_e2_over_eta() {
    let ch = cdo_character(&ChernData::k3(), 6).unwrap().value;
    assert_eq!(ch.offset(), &q(-1, 6));
    let frozen = [2, -40, -308, -1360, -4830, -14616, -40180];
    assert_eq!(ints(&ch), frozen.iter().map(|&c| qi(c)).collect::<Vec<_>>());
    let oracle = divisor_series(1, -24, 6).scale(&qi(2)).mul(&euler_product(6).pow(-4).unwrap());
    assert_eq!(ch.with_offset(qi(0)), oracle);
}

#[test]
fn string_fourfold_witten_genus_is_a_multiple_of_e4() {
    // c1 = 0 and c2² = 0, so W is a weight-4 form with q⁰ = Â = −c4/720.
    let data = ChernData::from_pairs(4, [("c1^4", 0), ("c1^2*c2", 0), ("c1*c3", 0), ("c2^2", 0), ("c4", 1440)]).unwrap();
    let w = witten_genus(&data, 8).unwrap().value;
    assert_eq!(w, divisor_series(3, 240, 8).scale(&qi(-2)));
}

#[test]
fn central_charges_are_twice_the_dimension() {
    for d in 1..=3 {
        let c = ConformalData::new(d, 4).unwrap().central_charge().unwrap();
        assert_eq!(c.to_string(), (2 * d).to_string());
    }
}

#[test]
fn oscillator_counts_match_the_inverse_euler_product() {
    let frozen = [1, 2, 5, 10, 20, 36, 65];
    assert_eq!(ints(&oscillator_character(1, 6)), frozen.iter().map(|&c| qi(c)).collect::<Vec<_>>());
    let two = oscillator_character(2, 6);
    assert_eq!(two, euler_product(6).pow(-4).unwrap());
}

#[test]
fn cyclic_shears_have_frozen_wz() {
    let wz = cyclic_shears(3).unwrap().wz();
    let expected = Form::term(holo_bit(0) | holo_bit(1) | holo_bit(2), Poly::int(-8));
    assert_eq!(wz, expected);
    assert!(cyclic_shears(2).unwrap().wz().is_zero());
}

#[test]
fn opposite_shears_have_frozen_sigma() {
    let g = shear_nerve(2).unwrap();
    let expected = Form::term(holo_bit(0) | holo_bit(1), Poly::int(4));
    assert_eq!(g.sigma(2, 1, 0).unwrap(), expected);
}

#[test]
fn twist_has_logarithmic_trace() {
    let tr = PolyBiholo::monomial_twist().theta().trace();
    let b1_inv = Poly::var(0).monomial_inverse().unwrap();
    assert_eq!(tr, Form::db(0).scale(&-b1_inv));
}

#[test]
fn shear_scenario_file_matches_the_built_in_nerve() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/shear2.scn");
    let text = std::fs::read_to_string(path).unwrap();
    let sc = Scenario::parse(&text).unwrap();
    let reparsed = Scenario::parse(&sc.to_string()).unwrap();
    assert_eq!(reparsed.to_string(), sc.to_string());

    let built = shear_nerve(2).unwrap();
    let from_file = sc.gluing().unwrap();
    for b in 1..3 {
        assert_eq!(from_file.phi(b, 0).unwrap().forward(), built.phi(b, 0).unwrap().forward());
    }
    assert_eq!(from_file.sigma(2, 1, 0).unwrap(), built.sigma(2, 1, 0).unwrap());
}

#[test]
fn every_shipped_scenario_parses() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "scn") {
            let sc = Scenario::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            sc.inputs().unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        }
    }
}
