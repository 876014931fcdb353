use qcskit::choi::is_completely_positive;
use qcskit::ms::{build_ms, functor_axiom_check, qcs_morphism_audit, scale_audit, tensor_gap_demo, trace_out_build};
use qcskit::{MsTqft, C64};
use serde_json::json;

use super::{algebra, reports};
use crate::args::{Global, MsCmd, TheoryArgs};
use crate::error::CliError;
use crate::output::{to_value, Outcome, Status};

fn theory(args: &TheoryArgs) -> Result<MsTqft, CliError> {
    let a = algebra(&args.algebra)?;
    Ok(build_ms(&a, args.lambda, args.policy.into())?)
}

pub fn run(cmd: &MsCmd, g: &Global) -> Result<Outcome, CliError> {
    Ok(match cmd {
        MsCmd::Build(args) => {
            let ms = theory(args)?;
            let gens: Vec<_> = ms
                .generator_chois()
                .map(|(gen, f)| {
                    json!({
                        "generator": gen,
                        "euler": gen.euler(),
                        "domain": f.domain().to_string(),
                        "codomain": f.codomain().to_string(),
                        "choi_dim": f.choi().dim(),
                        "completely_positive": is_completely_positive(f, g.tol),
                    })
                })
                .collect();
            Outcome::done(json!({
                "lambda": ms.lambda(),
                "policy": ms.policy().to_string(),
                "generators": gens,
            }))
        }
        MsCmd::ScaleAudit { algebra: path } => {
            let audit = scale_audit(&algebra(path)?);
            let norms: Vec<_> = audit.norms.iter().map(|(gen, n)| json!({ "generator": gen, "norm": n })).collect();
            Outcome::new(
                Status::from_pass(audit.is_feasible()),
                json!({
                    "norms": norms,
                    "feasibility": to_value(&audit.feasibility),
                    "lambda": audit.lambda(),
                }),
            )
        }
        MsCmd::Axioms(args) => reports(&functor_axiom_check(&theory(args)?, g.tol)?),
        MsCmd::HomAudit(args) => reports(&qcs_morphism_audit(&theory(args)?, g.samples, g.seed)?),
        MsCmd::TraceOut { algebra: path, mu, mu_im } => {
            let out = trace_out_build(&algebra(path)?, C64::new(*mu, *mu_im), g.samples, g.seed)?;
            let mut o = reports(&out.reports);
            o.result["lambda"] = json!(out.theory.lambda());
            o
        }
        MsCmd::TensorGap { n } => reports(&tensor_gap_demo(*n, g.seed)?),
    })
}
