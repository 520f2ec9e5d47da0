//! Čech–de Rham staircases for a connection propagated over two nerves: the
//! shear nerve, where `Tr θ = 0`, and a Laurent twist, where it is not.
//!
//! cargo run --release --example staircases

use cdo::cech::{GluingData, XiChoice};
use cdo::polycx::PolyBiholo;
use cdo::suites::{shear_nerve, staircase_suite};
use cdo::Result;

fn main() -> Result<()> {
    let shear = shear_nerve(2)?;
    println!("{}", staircase_suite(&shear, 1)?);

    let twist = GluingData::from_charts(
        vec!["U0".into(), "U1".into()],
        &[PolyBiholo::identity(2), PolyBiholo::monomial_twist()],
        XiChoice::Glued,
    )?;
    println!("Tr θ on the twist = {}", twist.phi(1, 0)?.theta().trace());
    println!("{}", staircase_suite(&twist, 1)?);
    Ok(())
}
