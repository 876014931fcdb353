use qcskit::bord::{euler_char, evaluate, parse, typecheck};
use qcskit::Term;
use serde_json::json;

use super::algebra;
use crate::args::{BordCmd, TermArg};
use crate::error::CliError;
use crate::input::read_path;
use crate::output::Outcome;

fn term(arg: &TermArg) -> Result<Term, CliError> {
    match (&arg.term, &arg.file) {
        (Some(src), _) => Ok(parse(src)?),
        (None, Some(path)) => Ok(parse(&read_path(path)?.1)?),
        (None, None) => Err(CliError::Invalid("a term or --file is required".into())),
    }
}

/// Term errors carry `line:col`; prefix the file name when the term came from one.
pub fn run(cmd: &BordCmd) -> Result<Outcome, CliError> {
    let arg = match cmd {
        BordCmd::Parse(a) | BordCmd::Type(a) | BordCmd::Euler(a) => a,
        BordCmd::Eval { term, .. } => term,
    };
    run_inner(cmd).map_err(|e| match (e, &arg.file) {
        (CliError::Core(qcskit::Error::Bord(b)), Some(path)) => CliError::Invalid(format!("{}:{b}", path.display())),
        (e, _) => e,
    })
}

fn run_inner(cmd: &BordCmd) -> Result<Outcome, CliError> {
    Ok(match cmd {
        BordCmd::Parse(arg) => {
            let t = term(arg)?;
            Outcome::done(json!({ "term": t.to_string(), "atoms": t.size() }))
        }
        BordCmd::Type(arg) => {
            let t = term(arg)?;
            let ty = typecheck(&t)?;
            Outcome::done(json!({ "term": t.to_string(), "inputs": ty.inputs, "outputs": ty.outputs }))
        }
        BordCmd::Euler(arg) => {
            let t = term(arg)?;
            let ty = typecheck(&t)?;
            Outcome::done(json!({ "term": t.to_string(), "euler": euler_char(&t), "closed": ty.is_closed() }))
        }
        BordCmd::Eval { term: arg, algebra: path } => {
            let t = term(arg)?;
            let a = algebra(path)?;
            let m = evaluate(&t, &a)?;
            let ty = typecheck(&t)?;
            Outcome::done(json!({
                "term": t.to_string(),
                "inputs": ty.inputs,
                "outputs": ty.outputs,
                "matrix": m,
            }))
        }
    })
}
