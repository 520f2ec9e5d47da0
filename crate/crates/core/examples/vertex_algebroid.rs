//! The CDO vertex algebroid on `C^d`: axiom checks, a deliberately broken
//! algebroid, a tame morphism `(φ*, Δ_{φ,ξ})` and the composition law.
//!
//! cargo run --example vertex_algebroid

use cdo::algebroid::{axioms_check, composition_law_check, morphism_check, preserves_conformal, Cdo, VAMorphism, ZeroMaps};
use cdo::polycx::{Poly, PolyBiholo};
use cdo::suites::{cyclic_shears, xi_for};
use cdo::Result;

fn main() -> Result<()> {
    let cdo = Cdo { d: 2 };
    println!("axioms for the CDO algebroid on C^2:");
    for c in axioms_check(&cdo, 30, 1, 3) {
        println!("  {c}");
    }
    let broken = axioms_check(&ZeroMaps { d: 2 }, 30, 1, 3);
    println!("zero maps fail {} of {} axioms", broken.iter().filter(|c| !c.passed).count(), broken.len());

    let b = Poly::var;
    let phi = PolyBiholo::shear(2, 1, b(0).pow(2))?.then(&PolyBiholo::shear(2, 0, b(1).pow(3))?)?;
    let xi = xi_for(&phi)?;
    println!("φ = {phi}, ξ = {xi}");
    let m = VAMorphism::from_phi_xi(phi.clone(), xi)?;
    for c in morphism_check(&m, &cdo, &cdo, 20, 2, 2)? {
        println!("  {c}");
    }
    println!("φ preserves the conformal element: {}", preserves_conformal(&phi));

    // In C^3 the cyclic shear composite has WZ ≠ 0, so ξ must be nonzero.
    let p1 = cyclic_shears(3)?;
    let p2 = PolyBiholo::shear(3, 0, b(2).pow(2))?;
    let (x1, x2) = (xi_for(&p1)?, xi_for(&p2)?);
    println!("WZ(p1) = {}, ξ1 = {x1}", p1.wz());
    for c in composition_law_check(&p1, &x1, &p2, &x2, 10, 3)? {
        println!("  {c}");
    }
    Ok(())
}
