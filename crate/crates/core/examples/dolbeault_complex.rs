//! The Čech–Dolbeault side on a two-chart model: propagated `(Γ, B)` data, the
//! operator `∂̄^ch`, local primitives and the conformal checks.
//!
//! cargo run --release --example dolbeault_complex

use cdo::dolbeault::{dbar_ch, exactness_check, DolField};
use cdo::random::Sampler;
use cdo::suites::{build_geometry, shear_model, ConnectionKind};
use cdo::Result;

fn main() -> Result<()> {
    let geom = build_geometry(shear_model(2)?, ConnectionKind::Generic, 1)?;
    println!("Γ on U0 = {}", geom.gamma(0));
    println!("B on U0 = {}", geom.b(0));
    println!("H on U0 = {}", geom.h3(0));

    // ∂̄^ch on a (0,1) pair, applied twice.
    let mut s = Sampler::new(2);
    let beta = s.form(2, 1, 1, 1, 1);
    let y = DolField::random(&mut s, 2, 1, 1, 1);
    let (b1, y1) = dbar_ch(&geom, 0, &beta, &y)?;
    let (b2, y2) = dbar_ch(&geom, 0, &b1, &y1)?;
    println!("(∂̄^ch)² vanishes: {}", b2.is_zero() && y2.is_zero());

    let (check, primitives) = exactness_check(&geom, 0, 3, 3)?;
    println!("{check}");
    if let Some(p) = primitives.first() {
        let (b_again, y_again) = dbar_ch(&geom, 0, &p.beta, &p.y)?;
        println!("first primitive maps back onto its target: {}", b_again == p.alpha && y_again == p.x);
    }

    let rep = cdo::dolbeault::dolbeault_suite(&geom, 2, 3, 4)?;
    println!("{rep}");
    Ok(())
}
