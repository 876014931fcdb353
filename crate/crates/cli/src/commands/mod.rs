mod bord;
mod choi;
mod frob;
mod ms;
mod qcs;

use qcskit::frobenius::{AlgebraData, FrobeniusAlgebra};
use qcskit::report::CheckReport;
use qcskit::{MembershipVerdict, C64};
use serde_json::{json, Value};

use crate::args::{Cli, Command};
use crate::error::CliError;
use crate::input::load;
use crate::output::{to_value, Outcome, Status};

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    if !(g.tol.is_finite() && g.tol >= 0.0) {
        return Err(CliError::Invalid(format!("--tol must be a finite non-negative number, got {}", g.tol)));
    }
    if g.samples == 0 {
        return Err(CliError::Invalid("--samples must be positive".into()));
    }
    match &cli.command {
        Command::Qcs(c) => qcs::run(c, g),
        Command::Choi(c) => choi::run(c, g),
        Command::Frob(c) => frob::run(c, g),
        Command::Bord(c) => bord::run(c),
        Command::Ms(c) => ms::run(c, g),
    }
}

fn verdict(v: &MembershipVerdict) -> Outcome {
    Outcome::new(Status::from_answer(v.answer), to_value(v))
}

fn reports(r: &[CheckReport]) -> Outcome {
    Outcome::new(Status::from_reports(r), json!({ "checks": r }))
}

fn complex(z: C64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn algebra(arg: &str) -> Result<FrobeniusAlgebra, CliError> {
    let data: AlgebraData = load(arg)?;
    Ok(FrobeniusAlgebra::new(data)?)
}
