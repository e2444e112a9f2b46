use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use imix_core::channels::{linspace, sweep, ChannelKind, SweepRow};
use imix_core::measures::report;
use imix_core::mims::{ddim_mims, qutrit_mims, MimsSpec, SignMask, Variant};
use imix_core::search::{max_imaginarity_at_mixedness, DEFAULT_BUDGET};
use imix_core::states::random_state_with;
use imix_core::tradeoffs::{verify, TradeoffReport};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::criteria::{self, Scale};
use crate::fixtures::{self, Pinned};
use crate::format::{csv_row, csv_table, read_state, state_to_json, to_pretty_json, SearchJson};

#[derive(Debug, Parser)]
#[command(name = "imix", version, about = "Imaginarity and mixedness of finite-dimensional quantum states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Write here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print every imaginarity and mixedness measure of a state
    Measure {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Build a maximally imaginary mixed state
    Mims {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        mixedness: f64,
        #[arg(long, default_value = "lower", conflicts_with = "index")]
        variant: Variant,
        /// Diagonal signs such as "+-+"; the first must be "+"
        #[arg(long, conflicts_with = "index")]
        mask: Option<SignMask>,
        /// Qutrit state 1..=8 in the canonical enumeration
        #[arg(long)]
        index: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate the trade-off relations on a state or a random batch
    Verify {
        #[arg(long = "in", value_name = "FILE", conflicts_with_all = ["random", "dim", "seed"], required_unless_present = "random")]
        input: Option<PathBuf>,
        /// Number of Hilbert-Schmidt random states, emitted as CSV
        #[arg(long, value_name = "N", requires_all = ["dim", "seed"])]
        random: Option<usize>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// F before and after a qubit channel along r(theta), as CSV
    ChannelSweep {
        #[arg(long)]
        kind: ChannelKind,
        /// Single channel parameter; omit for an evenly spaced grid on [0, 1]
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 21)]
        p_steps: usize,
        #[arg(long, default_value_t = 101)]
        theta_steps: usize,
        /// Separate p blocks with blank lines for gnuplot surfaces
        #[arg(long)]
        gnuplot: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Numerically maximize M_l1 at fixed linear entropy
    Search {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        mixedness: f64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Run the acceptance checks and report pass/fail counts
    Selftest {
        /// Reduced sample counts
        #[arg(long)]
        quick: bool,
        #[arg(long, value_name = "FILE")]
        fixtures: Option<PathBuf>,
    },
}

/// Runs the CLI with std streams and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Exit codes: 0 success, 1 domain or IO error, 2 usage error.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    }
}

fn emit(output: &Output, text: &str, out: &mut dyn Write) -> anyhow::Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => out.write_all(text.as_bytes()).context("writing to stdout"),
    }
}

fn tradeoff_row(r: &TradeoffReport) -> Vec<f64> {
    vec![
        r.f_l1,
        r.msi,
        r.comp_1norm,
        r.comp_entropy,
        r.slacks.f_l1,
        r.slacks.msi,
        r.slacks.comp_1norm,
        r.slacks.comp_entropy,
        if r.is_mims { 1.0 } else { 0.0 },
    ]
}

fn execute(command: Command, out: &mut dyn Write) -> anyhow::Result<i32> {
    match command {
        Command::Measure { input, output } => {
            let rho = read_state(&input)?;
            emit(&output, &to_pretty_json(&report(&rho)), out)?;
        }
        Command::Mims {
            dim,
            mixedness,
            variant,
            mask,
            index,
            output,
        } => {
            let rho = match index {
                Some(k) => {
                    anyhow::ensure!(dim == 3, "--index selects qutrit states and needs --dim 3");
                    qutrit_mims(mixedness, k)?
                }
                None => {
                    let mask = mask.unwrap_or_else(|| SignMask::identity(dim));
                    ddim_mims(&MimsSpec::new(dim, mixedness, variant, mask)?)?
                }
            };
            emit(&output, &(state_to_json(&rho) + "\n"), out)?;
        }
        Command::Verify {
            input,
            random,
            dim,
            seed,
            tol,
            output,
        } => match (input, random) {
            (Some(path), _) => {
                let rho = read_state(&path)?;
                emit(&output, &to_pretty_json(&verify(&rho, tol)), out)?;
            }
            (None, Some(n)) => {
                let dim = dim.context("--random needs --dim")?;
                let seed = seed.context("--random needs --seed")?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut rows = Vec::with_capacity(n);
                for _ in 0..n {
                    let rho = random_state_with(dim, &mut rng)?;
                    rows.push(tradeoff_row(&verify(&rho, tol)));
                }
                emit(&output, &csv_table(TradeoffReport::CSV_HEADER, rows), out)?;
            }
            (None, None) => unreachable!("clap requires --in or --random"),
        },
        Command::ChannelSweep {
            kind,
            p,
            p_steps,
            theta_steps,
            gnuplot,
            output,
        } => {
            anyhow::ensure!(kind != ChannelKind::Custom, "channel kind must be one of bf, pd, dp, ad");
            anyhow::ensure!(theta_steps >= 2 && p_steps >= 1, "grids need at least 2 theta points and 1 p point");
            let p_grid = match p {
                Some(p) => vec![p],
                None => linspace(0.0, 1.0, p_steps),
            };
            let thetas = linspace(0.0, std::f64::consts::PI, theta_steps);
            let rows = sweep(kind, &p_grid, &thetas)?;
            emit(&output, &sweep_csv(&rows, theta_steps, gnuplot), out)?;
        }
        Command::Search {
            dim,
            mixedness,
            budget,
            seed,
            output,
        } => {
            let result = max_imaginarity_at_mixedness(dim, mixedness, budget, seed)?;
            emit(&output, &to_pretty_json(&SearchJson::new(&result, mixedness, budget)), out)?;
        }
        Command::Selftest { quick, fixtures: path } => {
            let path = path.unwrap_or_else(fixtures::default_path);
            let pinned = Pinned::load(&path)?;
            let scale = if quick { Scale::Quick } else { Scale::Full };
            let outcomes = criteria::run_all(scale, &pinned);
            let passed = outcomes.iter().filter(|o| o.passed).count();
            for o in &outcomes {
                writeln!(out, "{}", o.line())?;
            }
            writeln!(out, "passed {passed} of {}", outcomes.len())?;
            return Ok(if passed == outcomes.len() { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn sweep_csv(rows: &[SweepRow], block: usize, gnuplot: bool) -> String {
    let mut text = String::from(SweepRow::CSV_HEADER);
    text.push('\n');
    for (k, r) in rows.iter().enumerate() {
        if gnuplot && k > 0 && k % block == 0 {
            text.push('\n');
        }
        text.push_str(&csv_row(&[r.p, r.theta, r.f_in, r.f_out_closed, r.f_out_numeric]));
        text.push('\n');
    }
    text
}
