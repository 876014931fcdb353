use qcskit::frobenius::{closed_surface_invariant, semisimple_invariant, validate_frobenius, AlgebraData};
use qcskit::Generator;
use serde_json::json;

use super::{algebra, complex};
use crate::args::{FrobCmd, Global};
use crate::error::CliError;
use crate::input::load;
use crate::output::{to_value, Outcome, Status};

pub fn run(cmd: &FrobCmd, g: &Global) -> Result<Outcome, CliError> {
    Ok(match cmd {
        FrobCmd::Validate { algebra } => {
            let data: AlgebraData = load(algebra)?;
            let report = validate_frobenius(&data)?;
            let ok = report.checks.iter().all(|c| c.residual <= g.tol);
            Outcome::new(Status::from_pass(ok), to_value(&report))
        }
        FrobCmd::Gen { algebra: path, name } => {
            let a = algebra(path)?;
            let gm = a.generator_map(Generator::from(*name));
            Outcome::done(json!({
                "generator": gm.generator,
                "euler": gm.euler,
                "shape": [gm.matrix.rows(), gm.matrix.cols()],
                "matrix": gm.matrix,
            }))
        }
        FrobCmd::Invariant { algebra: path, genus } => {
            let a = algebra(path)?;
            let z = closed_surface_invariant(&a, *genus)?;
            let mut out = json!({ "genus": genus, "invariant": complex(z) });
            if let Some(theta) = a.theta() {
                out["weight_formula"] = json!(semisimple_invariant(theta, *genus));
            }
            Outcome::done(out)
        }
    })
}
