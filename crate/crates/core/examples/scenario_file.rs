//! Scenario files: parse an inline nerve, print its canonical form, and run
//! the suites it lists into a JSON report.
//!
//! cargo run --release --example scenario_file

use cdo::report::Report;
use cdo::scenario::Scenario;
use cdo::suites;
use cdo::Result;

const TEXT: &str = "
[nerve]
dim = 2
charts = U0, U1

[chart U1]
map = b1, b2 + b1^3
inverse = b1, b2 - b1^3

[run]
suites = cech
trials = 3
seed = 5
";

fn main() -> Result<()> {
    let sc = Scenario::parse(TEXT)?;
    println!("canonical form:\n{sc}");

    let opts = sc.options();
    let inputs = sc.inputs()?;
    let mut report = Report::new("example", opts.seed, opts.order);
    for s in &sc.suites {
        report.push(suites::run(*s, &opts, &inputs)?);
    }
    println!("{}", serde_json::to_string_pretty(&report)?);

    match Scenario::parse("[nerve]\ndim = 2\ncharts = U0\n[chart U9]\nmap = b1, b2\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => println!("unexpectedly accepted"),
    }
    Ok(())
}
