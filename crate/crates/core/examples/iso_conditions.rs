//! Isomorphism conditions between Dolbeault CDO data: `H′ = H − 2dβ̃` passes,
//! a perturbed `β̃` is rejected.
//!
//! cargo run --release --example iso_conditions

use cdo::dolbeault::iso_suite;
use cdo::suites::{build_geometry, shear_model, ConnectionKind};
use cdo::Result;

fn main() -> Result<()> {
    for kind in [ConnectionKind::Generic, ConnectionKind::Type11] {
        let geom = build_geometry(shear_model(2)?, kind, 3)?;
        println!("connection: {}", kind.name());
        println!("{}", iso_suite(&geom, 5, 9)?);
    }
    Ok(())
}
