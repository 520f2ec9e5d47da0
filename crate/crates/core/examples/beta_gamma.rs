//! The βγ system on `C^d` with polynomial coefficients: n-th products, the
//! Virasoro modes of `ν = Σ a_{i,−1} b^i_{−1}`, the central charge, the
//! Borcherds identities and a `(φ, ξ)` homomorphism.
//!
//! cargo run --example beta_gamma

use cdo::polycx::{Poly, PolyBiholo};
use cdo::suites::xi_for;
use cdo::voa::{borcherds_check, hom_check, oscillator_character, BGState, ConformalData, PhiXiHom};
use cdo::Result;

fn main() -> Result<()> {
    let (d, cap) = (2, 4);
    let conf = ConformalData::new(d, cap)?;
    println!("ν = {}", conf.nu);
    println!("central charge = {}", conf.central_charge()?);

    // a_{1,−1} acting on the function b¹b², and the translation of the result.
    let b = Poly::var;
    let a1 = BGState::monomial(d, cap, &[(0, -1)], &[], Poly::one())?;
    let f = BGState::function(d, cap, &b(0) * &b(1));
    for n in [-1, 0] {
        println!("a_(−1) ({n})-product b¹b² = {}", a1.nth_product(n, &f)?);
    }
    let u = a1.nth_product(-1, &f)?;
    println!("L0 u = {}", conf.virasoro(0, &u)?);
    println!("L−1 u = {}", conf.virasoro(-1, &u)?);

    for c in borcherds_check(d, 2, 4, 7)? {
        println!("{c}");
    }

    let phi = PolyBiholo::shear(2, 1, b(0).pow(2))?;
    let hom = PhiXiHom::new(phi.clone(), xi_for(&phi)?, cap)?;
    println!("image of a_(1,−1): {}", hom.a_image(0));
    for c in hom_check(&hom, 2, 5, 8)? {
        println!("{c}");
    }
    println!("oscillator character, d = 1: {}", oscillator_character(1, 6));
    Ok(())
}
