//! Gluing CDOs over a three-chart nerve: transition data, the obstruction
//! cocycles, the homotopy-transferred algebroid on Čech cochains and the
//! Eilenberg–Zilber product checks.
//!
//! cargo run --release --example cech_gluing

use cdo::cech::{assoc_cochain, check_gluing, conformal_cochain, ez_checks, homotopy_dg_check, obstruction_cocycles};
use cdo::suites::shear_nerve;
use cdo::Result;

fn main() -> Result<()> {
    let g = shear_nerve(2)?;
    for (i, name) in g.nerve().names().iter().enumerate().skip(1) {
        println!("φ_{name},U0 = {}", g.phi(i, 0)?);
    }
    println!("σ on the triple = {}", g.sigma(2, 1, 0)?);
    println!("assoc cochain zero: {}", assoc_cochain(&g)?.is_zero());
    println!("Tr θ cochain zero: {}", conformal_cochain(&g)?.is_zero());

    let mut checks = check_gluing(&g)?;
    checks.extend(obstruction_cocycles(&g)?.2);
    checks.extend(homotopy_dg_check(&g, 2, 4, false)?);
    checks.extend(ez_checks(&g, 2, 4)?);
    for c in &checks {
        println!("{c}");
    }
    Ok(())
}
