//! `cdo witten | character | verify`: q-series and verification suites from the
//! command line. Exit status: 0 all checks pass, 1 a check failed, 2 bad input,
//! 3 weight overflow.

use cdo::genus::{character_identity_check, cdo_character, obstruction_predicates, todd_and_ahat, witten_genus, ChernData, ChernJson};
use cdo::qseries::{modularity_decompose, Decomposition};
use cdo::report::{Check, Report, SuiteReport};
use cdo::scenario::Scenario;
use cdo::suites::{self, Inputs, Suite, SuiteOptions};
use cdo::{Error, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cdo", version, about = "Exact checks for chiral differential operators and the Witten genus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Also write the report as JSON to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Witten genus of a set of Chern numbers.
    Witten {
        /// JSON file `{"d": 2, "chern_numbers": {"c1^2": 0, "c2": 24}}`.
        #[arg(long, value_name = "FILE")]
        chern: PathBuf,
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[command(flatten)]
        out: Output,
    },
    /// CDO character by Riemann–Roch, compared with the Witten side when c1 vanishes.
    Character {
        #[arg(long, value_name = "FILE")]
        chern: PathBuf,
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Run verification suites, optionally on a scenario file.
    Verify {
        /// Suite to run; repeat for several. Defaults to the scenario's list, or all suites.
        #[arg(long = "suite", value_name = "NAME")]
        suites: Vec<String>,
        #[arg(long, value_name = "FILE")]
        scenario: Option<PathBuf>,
        /// Complex dimension of the built-in models (ignored with a scenario).
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Random samples per check; the Čech and Dolbeault suites use one tenth.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        order: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
}

fn load_chern(path: &PathBuf) -> Result<ChernData> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    let j: ChernJson = serde_json::from_str(&text)?;
    ChernData::from_json(&j)
}

fn witten(report: &mut Report, chern: &PathBuf, order: usize) -> Result<()> {
    let data = load_chern(chern)?;
    let w = witten_genus(&data, order)?;
    let (todd, ahat) = todd_and_ahat(&data)?;
    let obstruction = obstruction_predicates(&data)?;
    let modularity = if obstruction.ch1_hold && obstruction.ch2_hold && data.dim() % 2 == 0 {
        match modularity_decompose(&w.value, data.dim(), order)? {
            Decomposition::Member(m) => {
                let terms: Vec<String> = m.iter().map(|(b, c)| format!("{c}·{b}")).collect();
                json!({ "weight": data.dim(), "member": terms })
            }
            other => json!({ "weight": data.dim(), "result": format!("{other:?}") }),
        }
    } else {
        serde_json::Value::Null
    };
    let mut suite = SuiteReport::new("witten");
    suite.checks.push(Check::from_residual(
        "q⁰ = Â",
        (w.value.coeff(0) != ahat).then(|| format!("q⁰ = {}, Â = {ahat}", w.value.coeff(0))),
    ));
    report.series = Some(json!({
        "chern": data.to_json(),
        "provenance": w.provenance,
        "series": w.value,
        "text": w.value.to_string(),
        "ahat": ahat.to_string(),
        "todd": todd.to_string(),
        "obstructions": obstruction,
        "modularity": modularity,
    }));
    report.push(suite);
    Ok(())
}

fn character(report: &mut Report, chern: &PathBuf, order: usize) -> Result<()> {
    let data = load_chern(chern)?;
    let ch = cdo_character(&data, order)?;
    let mut suite = SuiteReport::new("character");
    if data.is_c1_free() {
        let c = character_identity_check(&data, order)?;
        suite.checks.push(Check::from_residual(
            "character = ∫e^{c1/2}W/η^{2d}",
            c.first_difference.map(|(n, x, y)| format!("coefficient {n}: {x} vs {y}")),
        ));
    } else {
        suite.findings.push("c1 numbers are nonzero; the Witten-side comparison is skipped".into());
    }
    report.series = Some(json!({
        "chern": data.to_json(),
        "provenance": ch.provenance,
        "series": ch.value,
        "text": ch.value.to_string(),
    }));
    report.push(suite);
    Ok(())
}

fn verify(
    report: &mut Report,
    names: &[String],
    scenario: Option<&PathBuf>,
    overrides: (Option<usize>, Option<u64>, Option<usize>, Option<usize>),
) -> Result<()> {
    let (sc, inputs) = match scenario {
        Some(p) => {
            let sc = Scenario::load(p)?;
            let inputs = sc.inputs()?;
            (Some(sc), inputs)
        }
        None => (None, Inputs::default()),
    };
    let mut opts = sc.as_ref().map(Scenario::options).unwrap_or_default();
    let (dim, seed, trials, order) = overrides;
    if let Some(d) = dim {
        if sc.as_ref().is_some_and(|s| !s.charts.is_empty() && s.dim != d) {
            return Err(Error::Input(format!("--dim {d} conflicts with the scenario dimension {}", opts.dim)));
        }
        opts.dim = d;
    }
    opts.seed = seed.unwrap_or(opts.seed);
    opts.trials = trials.unwrap_or(opts.trials);
    opts.order = order.unwrap_or(opts.order);
    report.seed = opts.seed;
    report.order = opts.order;
    let selected: Vec<Suite> = if !names.is_empty() {
        names.iter().map(|n| n.parse()).collect::<Result<_>>()?
    } else if let Some(s) = sc.as_ref().filter(|s| !s.suites.is_empty()) {
        s.suites.clone()
    } else {
        Suite::ALL.to_vec()
    };
    run_suites(report, &selected, &opts, &inputs)
}

fn run_suites(report: &mut Report, selected: &[Suite], opts: &SuiteOptions, inputs: &Inputs) -> Result<()> {
    for s in selected {
        report.push(suites::run(*s, opts, inputs)?);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut report, out, outcome) = match &cli.command {
        Command::Witten { chern, order, out } => {
            let mut r = Report::new("witten", 0, *order);
            let res = witten(&mut r, chern, *order);
            (r, out, res)
        }
        Command::Character { chern, order, out } => {
            let mut r = Report::new("character", 0, *order);
            let res = character(&mut r, chern, *order);
            (r, out, res)
        }
        Command::Verify { suites, scenario, dim, seed, trials, order, out } => {
            let mut r = Report::new("verify", seed.unwrap_or(0), order.unwrap_or(10));
            let res = verify(&mut r, suites, scenario.as_ref(), (*dim, *seed, *trials, *order));
            (r, out, res)
        }
    };
    let code = match &outcome {
        Ok(()) if report.passed => 0,
        Ok(()) => 1,
        Err(e) => {
            report.fail_with(e);
            e.exit_code()
        }
    };
    println!("{report}");
    if let Some(path) = &out.json {
        let written = serde_json::to_string_pretty(&report)
            .map_err(Error::from)
            .and_then(|text| std::fs::write(path, text + "\n").map_err(Error::from));
        if let Err(e) = written {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code as u8)
}
