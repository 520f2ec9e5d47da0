//! Witten genus from Chern numbers: the point, a K3 surface and a random
//! 4-fold, with the `ch1`/`ch2` necessary conditions and, when they hold, the
//! modular-form decomposition.
//!
//! cargo run --example witten_genus

use cdo::genus::{obstruction_predicates, todd_and_ahat, witten_genus, ChernData};
use cdo::qseries::{modularity_decompose, Decomposition};
use cdo::random::Sampler;
use cdo::Result;

fn show(label: &str, data: &ChernData, order: usize) -> Result<()> {
    let w = witten_genus(data, order)?;
    let (todd, ahat) = todd_and_ahat(data)?;
    let obs = obstruction_predicates(data)?;
    println!("{label}: {data}");
    println!("  W      = {}", w.value);
    println!("  Todd = {todd}, Â = {ahat}");
    println!("  ch1 conditions hold: {}, ch2 conditions hold: {}", obs.ch1_hold, obs.ch2_hold);
    if obs.ch1_hold && obs.ch2_hold && data.dim().is_multiple_of(2) {
        match modularity_decompose(&w.value, data.dim(), order)? {
            Decomposition::Member(terms) if terms.is_empty() => println!("  weight {}: the zero form", data.dim()),
            Decomposition::Member(terms) => {
                let parts: Vec<String> = terms.iter().map(|(m, c)| format!("{c}·{m}")).collect();
                println!("  weight {}: W = {}", data.dim(), parts.join(" + "));
            }
            other => println!("  weight {}: {other:?}", data.dim()),
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    show("point", &ChernData::point(), 5)?;
    show("K3", &ChernData::k3(), 5)?;
    // p1 = c1² − 2c2 vanishes here, so both conditions can hold.
    show("string-like surface", &ChernData::from_pairs(2, [("c1^2", 0), ("c2", 0)])?, 5)?;
    show("random 4-fold", &Sampler::new(3).chern(4), 4)?;
    Ok(())
}
