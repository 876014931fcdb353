use qcskit::herm::inner;
use qcskit::qcs::{
    bipolar_membership_tol, canonical_membership_tol, is_polar_pair, polar_membership, qcs_axiom_suite,
    tensor_membership_with, unit_object_audit, TensorOptions,
};
use qcskit::{HermMat, QcsDesc};
use serde_json::json;

use super::{reports, verdict};
use crate::args::{Global, QcsCmd};
use crate::error::CliError;
use crate::input::load;
use crate::output::{Outcome, Status};

pub fn run(cmd: &QcsCmd, g: &Global) -> Result<Outcome, CliError> {
    Ok(match cmd {
        QcsCmd::PolarPair { f, g: other } => {
            let (f, h): (HermMat, HermMat) = (load(f)?, load(other)?);
            let pairing = inner(&f, &h)?;
            let ok = is_polar_pair(&f, &h, g.tol)?;
            Outcome::new(Status::from_pass(ok), json!({ "pairing": pairing, "polar": ok }))
        }
        QcsCmd::PolarMember { g: point, gens } => {
            let (x, s): (HermMat, Vec<HermMat>) = (load(point)?, load(gens)?);
            verdict(&polar_membership(&x, &s, g.tol)?)
        }
        QcsCmd::BipolarMember { f, gens } => {
            let (x, s): (HermMat, Vec<HermMat>) = (load(f)?, load(gens)?);
            verdict(&bipolar_membership_tol(&x, &s, g.tol)?)
        }
        QcsCmd::Canonical { f, set } => {
            let x: HermMat = load(f)?;
            verdict(&canonical_membership_tol(&x, (*set).into(), g.tol))
        }
        QcsCmd::Suite { gens } => {
            let s: Vec<HermMat> = load(gens)?;
            reports(&qcs_axiom_suite(&s, g.samples, g.seed)?)
        }
        QcsCmd::TensorMember { f, left, right, budget } => {
            let x: HermMat = load(f)?;
            let (l, r): (QcsDesc, QcsDesc) = (load(left)?, load(right)?);
            let opts = TensorOptions {
                budget: *budget,
                tol: g.tol,
                seed: g.seed,
                ..TensorOptions::default()
            };
            verdict(&tensor_membership_with(&x, &l, &r, &opts)?)
        }
        QcsCmd::UnitAudit => reports(&unit_object_audit()),
    })
}
