use qcskit::choi::{compose_choi, hom_membership_audit, tensor_choi};
use qcskit::{ChoiMorphism, HermMat};
use serde_json::json;

use super::reports;
use crate::args::{ChoiCmd, Global};
use crate::error::CliError;
use crate::input::load;
use crate::output::Outcome;

pub fn run(cmd: &ChoiCmd, g: &Global) -> Result<Outcome, CliError> {
    Ok(match cmd {
        ChoiCmd::Apply { morphism, input } => {
            let (f, c): (ChoiMorphism, HermMat) = (load(morphism)?, load(input)?);
            Outcome::done(json!({ "image": f.apply(&c)? }))
        }
        ChoiCmd::Compose { first, second } => {
            let (f1, f2): (ChoiMorphism, ChoiMorphism) = (load(first)?, load(second)?);
            Outcome::done(json!({ "morphism": compose_choi(&f2, &f1)? }))
        }
        ChoiCmd::Tensor { left, right } => {
            let (f1, f2): (ChoiMorphism, ChoiMorphism) = (load(left)?, load(right)?);
            Outcome::done(json!({ "morphism": tensor_choi(&f1, &f2)? }))
        }
        ChoiCmd::HomAudit { morphism } => {
            let f: ChoiMorphism = load(morphism)?;
            reports(&hom_membership_audit(&f, g.samples, g.seed)?)
        }
    })
}
