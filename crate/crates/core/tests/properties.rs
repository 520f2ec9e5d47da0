//! Randomised algebraic laws over small polynomial inputs.

use cdo::genus::{todd_and_ahat, witten_genus, ChernData};
use cdo::polycx::form::{anti_bit, holo_bit};
use cdo::polycx::{qi, Form, Poly, PolyBiholo};
use cdo::qseries::eta_power;
use cdo::scenario::Scenario;
use proptest::prelude::*;

/// Sum of `c·(b¹)^i (b²)^j (B¹)^k` terms.
fn poly(terms: &[(i64, u32, u32, u32)]) -> Poly {
    let mut acc = Poly::zero();
    for &(c, i, j, k) in terms {
        let m = &(&Poly::var(0).pow(i) * &Poly::var(1).pow(j)) * &Poly::bar_var(0).pow(k);
        acc += &m.scale_int(c);
    }
    acc
}

fn terms(max_deg: u32) -> impl Strategy<Value = Vec<(i64, u32, u32, u32)>> {
    prop::collection::vec((-3i64..=3, 0..=max_deg, 0..=max_deg, 0..=1u32), 0..4)
}

fn holo_terms(max_deg: u32) -> impl Strategy<Value = Vec<(i64, u32, u32, u32)>> {
    prop::collection::vec((-3i64..=3, 0..=max_deg, 0..=max_deg, Just(0u32)), 1..4)
}

/// `Σ cₙ (b^{k+1})ⁿ`.
fn in_var(k: usize, coeffs: &[i64]) -> Poly {
    let mut acc = Poly::zero();
    for (n, &c) in coeffs.iter().enumerate() {
        acc += &Poly::var(k).pow(n as u32).scale_int(c);
    }
    acc
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 0..5)
}

fn one_form(a: &[(i64, u32, u32, u32)], b: &[(i64, u32, u32, u32)], c: &[(i64, u32, u32, u32)]) -> Form {
    &(&Form::term(holo_bit(0), poly(a)) + &Form::term(holo_bit(1), poly(b))) + &Form::term(anti_bit(0), poly(c))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn polynomials_distribute(f in terms(3), g in terms(3), h in terms(3)) {
        let (f, g, h) = (poly(&f), poly(&g), poly(&h));
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
    }

    #[test]
    fn derivatives_obey_leibniz(f in terms(3), g in terms(3)) {
        let (f, g) = (poly(&f), poly(&g));
        for i in 0..2 {
            prop_assert_eq!((&f * &g).d(i), &(&f.d(i) * &g) + &(&f * &g.d(i)));
        }
    }

    #[test]
    fn exterior_derivative_squares_to_zero(a in terms(3), b in terms(3), c in terms(3)) {
        let w = one_form(&a, &b, &c);
        prop_assert!(w.d().d().is_zero());
        prop_assert!(w.d_holo().d_holo().is_zero());
        prop_assert_eq!(&w.d_holo() + &w.d_anti(), w.d());
    }

    #[test]
    fn one_forms_anticommute(a in terms(2), b in terms(2), c in terms(2), e in terms(2)) {
        let u = one_form(&a, &b, &c);
        let v = one_form(&e, &c, &a);
        prop_assert_eq!(u.wedge(&v), -&v.wedge(&u));
    }

    #[test]
    fn pullback_is_contravariant(p in coeffs(), r in coeffs(), a in holo_terms(2), b in holo_terms(2)) {
        let s1 = PolyBiholo::shear(2, 1, in_var(0, &p)).unwrap();
        let s2 = PolyBiholo::shear(2, 0, in_var(1, &r)).unwrap();
        let w = &Form::term(holo_bit(0), poly(&a)) + &Form::term(holo_bit(1), poly(&b));
        let composite = s1.then(&s2).unwrap();
        prop_assert_eq!(composite.pull_form(&w).unwrap(), s1.pull_form(&s2.pull_form(&w).unwrap()).unwrap());
        let round_trip = s1.then(&s1.inverse()).unwrap();
        let id = PolyBiholo::identity(2);
        prop_assert_eq!(round_trip.forward(), id.forward());
    }

    #[test]
    fn eta_powers_multiply(a in -30i64..=30, b in -30i64..=30) {
        prop_assert_eq!(eta_power(a, 12).mul(&eta_power(b, 12)), eta_power(a + b, 12));
    }

    #[test]
    fn witten_constant_term_is_a_hat(c11 in -50i64..=50, c2 in -50i64..=50) {
        let data = ChernData::from_pairs(2, [("c1^2", c11), ("c2", c2)]).unwrap();
        let w = witten_genus(&data, 2).unwrap().value;
        prop_assert_eq!(w.coeff(0), todd_and_ahat(&data).unwrap().1);
        prop_assert_eq!(w.coeff(0), qi(c11 - 2 * c2) / qi(-24));
    }

    #[test]
    fn scenario_maps_round_trip(p in coeffs()) {
        let shift = in_var(0, &p);
        let text = format!(
            "[nerve]\ndim = 2\ncharts = U0, U1\n[chart U1]\nmap = b1, b2 + ({shift})\ninverse = b1, b2 - ({shift})\n"
        );
        let sc = Scenario::parse(&text).unwrap();
        let again = Scenario::parse(&sc.to_string()).unwrap();
        prop_assert_eq!(again.to_string(), sc.to_string());
        let expected = PolyBiholo::shear(2, 1, shift).unwrap();
        let psis = sc.psis().unwrap();
        prop_assert_eq!(psis[1].forward(), expected.forward());
    }
}
