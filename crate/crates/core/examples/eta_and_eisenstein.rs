//! q-series arithmetic: η powers, Eisenstein series, the weight-12 relation
//! `E4³ − E6² = 1728 η^24` and a decomposition in the `E4^a E6^b` basis.
//!
//! cargo run --example eta_and_eisenstein

use cdo::polycx::qi;
use cdo::qseries::{eisenstein, eta_power, modularity_decompose, Decomposition};
use cdo::Result;

fn main() -> Result<()> {
    let order = 8;
    let delta = eta_power(24, order);
    println!("η^24   = {delta}");
    println!("η^-2   = {}", eta_power(-2, order));

    let e4 = eisenstein(4, order)?;
    let e6 = eisenstein(6, order)?;
    println!("E4     = {e4}");
    println!("E6     = {e6}");

    // η^24 starts at q^1, so coefficient n of the difference pairs with n − 1.
    let disc = e4.pow(3)?.sub(&e6.pow(2)?)?;
    println!("E4³−E6² = {disc}");
    let agrees = (1..=order).all(|n| disc.coeff(n) == delta.coeff(n - 1) * qi(1728));
    println!("equals 1728·η^24 through q^{order}: {agrees}");

    match modularity_decompose(&e4.mul(&e6), 10, order)? {
        Decomposition::Member(terms) => {
            let parts: Vec<String> = terms.iter().map(|(m, c)| format!("{c}·{m}")).collect();
            println!("weight 10: E4·E6 = {}", parts.join(" + "));
        }
        other => println!("weight 10: {other:?}"),
    }
    Ok(())
}
