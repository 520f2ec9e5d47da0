//! Graded character of chiral differential operators by Riemann–Roch, compared
//! term by term with `∫ e^{c1/2} W / η^{2d}` on c1-free data.
//!
//! cargo run --example cdo_character

use cdo::genus::{cdo_character, character_identity_check};
use cdo::random::Sampler;
use cdo::Result;

fn main() -> Result<()> {
    let mut s = Sampler::new(5);
    for d in 1..=4 {
        let data = s.c1_free_chern(d);
        let check = character_identity_check(&data, 6)?;
        println!("d = {d}: {data}");
        println!("  character   = {}", check.character);
        println!("  Witten side = {}", check.via_witten);
        println!("  identical: {}", check.holds());
    }

    // With c1 ≠ 0 only the character itself is defined here.
    let data = s.chern(2);
    println!("c1 ≠ 0: {data}\n  character = {}", cdo_character(&data, 6)?.value);
    Ok(())
}
