//! Exact forms on `C^d`: a tame coordinate change, its `θ`, the WZ 3-form, the
//! 2-form `σ` of a composite and a primitive from the Poincaré homotopy.
//!
//! cargo run --example polynomial_forms

use cdo::polycx::{chern_simons, curvature, poincare_solve, sigma, Form, MatForm, Operator, Poly, PolyBiholo};
use cdo::suites::cyclic_shears;
use cdo::Result;

fn main() -> Result<()> {
    let b = Poly::var;
    let shear = PolyBiholo::shear(2, 1, b(0).pow(2))?;
    println!("shear: {shear}");
    println!("θ = {}", shear.theta());
    println!("Tr θ = {}", shear.theta().trace());
    println!("WZ(shear) = {}", shear.wz());

    let other = PolyBiholo::shear(2, 0, b(1).pow(3))?;
    println!("σ(other, shear) = {}", sigma(&other, &shear)?);

    let phi = cyclic_shears(3)?;
    let wz = phi.wz();
    println!("WZ(cyclic shears in C^3) = {wz}");
    let xi = poincare_solve(&wz, Operator::Holo)?;
    println!("ξ with ∂ξ = WZ: {xi}");
    println!("∂ξ − WZ = 0: {}", (&xi.d_holo() - &wz).is_zero());

    // A connection matrix with polynomial entries.
    let gamma = MatForm::from_fn(2, |i, j| Form::db(j).scale(&b(i)));
    println!("Γ = {gamma}");
    println!("R = {}", curvature(&gamma));
    let cs = chern_simons(&gamma);
    println!("CS(Γ) = {cs}, dCS = {}", cs.d());
    Ok(())
}
