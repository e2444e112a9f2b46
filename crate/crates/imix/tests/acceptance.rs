use std::process::ExitCode;

use imix::criteria::{run_all, Scale};
use imix::fixtures::{default_path, Pinned};

fn main() -> ExitCode {
    let pinned = match Pinned::load(&default_path()) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("cannot load fixtures: {e:#}");
            return ExitCode::FAILURE;
        }
    };
    let outcomes = run_all(Scale::Full, &pinned);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("acceptance: {passed} of {} criteria passed", outcomes.len());
    if passed == outcomes.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
