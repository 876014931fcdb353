//! Sampled audits of the closure laws of `∼` and of the tensor unit.

use rand::Rng;

use super::sample::{sample_bipolar_members, sample_polar_members};
use super::{bipolar_membership, check_generators, polar_membership, QcsError, DEFAULT_TOL};
use crate::herm::{inner, HermMat};
use crate::random::{random_hermitian, rng};
use crate::report::{CheckReport, Tally};

/// Cap on sampled members of `∼∼S` used to approximate `∼∼∼S`.
const BIPOLAR_PANEL: usize = 60;

/// Checks, for `C = ∼∼S`:
/// (a) `S ⊆ C`;
/// (b) membership in `∼S` agrees with membership in `∼∼∼S`, the latter tested
///     against `S` plus a panel of sampled members of `C`;
/// (c) `λf ∈ C` for sampled `f ∈ C` and `λ ∈ [0, 1]`;
/// (d) midpoints of sampled members are members.
pub fn qcs_axiom_suite(gens: &[HermMat], samples: usize, seed: u64) -> Result<Vec<CheckReport>, QcsError> {
    let n = check_generators(gens)?;
    if n > super::LP_CARRIER_CAP {
        return Err(QcsError::DimensionGuard {
            dim: n,
            cap: super::LP_CARRIER_CAP,
        });
    }
    let tol = DEFAULT_TOL;
    let mut r = rng(seed);
    let mut reports = Vec::with_capacity(4);

    let mut t = Tally::default();
    for s in gens {
        let v = bipolar_membership(s, gens)?;
        let excess = v.witness.as_ref().map_or(0.0, |w| violation(w.pairing));
        t.record(v.is_in(), excess, || s.clone());
    }
    reports.push(t.into_report("extensive: S ⊆ ∼∼S"));

    let members: Vec<HermMat> = sample_bipolar_members(gens, BIPOLAR_PANEL.min(samples.max(1)), &mut r)?
        .into_iter()
        .map(|s| s.f)
        .collect();
    let mut t = Tally::default();
    let polar_half = sample_polar_members(gens, samples / 2, &mut r)?;
    let mut probes = polar_half;
    while probes.len() < samples {
        let scale = 2.0 * r.random::<f64>();
        probes.push(random_hermitian(n, &mut r).scale(scale));
    }
    for g in &probes {
        let once = polar_membership(g, gens, tol)?.is_in();
        let mut thrice = true;
        let mut worst = 0.0f64;
        for f in gens.iter().chain(&members) {
            let p = inner(f, g)?;
            if p < -tol || p > 1.0 + tol {
                thrice = false;
                worst = worst.max(violation(p));
            }
        }
        // ∼S ⊆ ∼∼∼S must hold exactly; the converse is exact on the S part.
        let agree = once == thrice;
        t.record(agree, if once { worst } else { 0.0 }, || g.clone());
    }
    reports.push(
        t.into_report("polar idempotent: ∼S = ∼∼∼S")
            .with_note(format!("∼∼S panel of {} sampled members plus S", members.len())),
    );

    let mut t = Tally::default();
    for k in 0..samples {
        let f = &members[k % members.len()];
        let lambda: f64 = r.random();
        let scaled = f.scale(lambda);
        let v = bipolar_membership(&scaled, gens)?;
        let excess = v.witness.as_ref().map_or(0.0, |w| violation(w.pairing));
        t.record(v.is_in(), excess, || scaled.clone());
    }
    reports.push(t.into_report("scaling: λ·∼∼S ⊆ ∼∼S for λ ∈ [0,1]"));

    let mut t = Tally::default();
    for _ in 0..samples {
        let a = &members[r.random_range(0..members.len())];
        let b = &members[r.random_range(0..members.len())];
        let mid = a.lincomb(0.5, b, 0.5)?;
        let v = bipolar_membership(&mid, gens)?;
        let excess = v.witness.as_ref().map_or(0.0, |w| violation(w.pairing));
        t.record(v.is_in(), excess, || mid.clone());
    }
    reports.push(t.into_report("convex: midpoints of ∼∼S members"));
    Ok(reports)
}

fn violation(p: f64) -> f64 {
    if p < 0.0 {
        -p
    } else if p > 1.0 {
        p - 1.0
    } else {
        0.0
    }
}

/// Analytic facts about the candidate tensor units on the one-dimensional
/// carrier, where `H(C) ≅ ℝ` and the pairing is multiplication.
///
/// The positive half-line has polar `{0}`, whose polar is all of `ℝ`, so it is
/// not equal to its double polar. The interval `[0, 1]` is its own polar.
pub fn unit_object_audit() -> Vec<CheckReport> {
    let s = HermMat::scalar;
    let mut out = Vec::new();

    // ∼ℝ₊ = {0}: each g ≠ 0 is refuted by some f ≥ 0.
    let mut ok = true;
    let mut notes = Vec::new();
    for g in [-1.0, -0.25, 0.25, 1.0, 3.0] {
        let f: f64 = if g < 0.0 { 1.0 } else { 2.0 / g };
        let p = f * g;
        ok &= f >= 0.0 && !(0.0..=1.0).contains(&p);
        notes.push(format!("g = {g}: f = {f} ≥ 0 gives fg = {p}"));
    }
    notes.push("g = 0: fg = 0 for every f".into());
    let mut r = CheckReport::new("polar of R+ is {0}", ok, 0.0);
    r.notes = notes;
    out.push(r);

    // ∼{0} = ℝ.
    let probes = [-3.0, -1.0, 0.0, 2.0, 1e6];
    let ok = probes.iter().all(|&g| (0.0..=1.0).contains(&(0.0 * g)));
    out.push(
        CheckReport::new("polar of {0} is R", ok, 0.0)
            .with_note(format!("0·g = 0 ∈ [0,1] for g ∈ {probes:?}")),
    );

    // ∼∼ℝ₊ = ∼{0} = ℝ ≠ ℝ₊.
    let zero = [s(0.0)];
    let two_in = polar_membership(&s(2.0), &zero, 0.0).map(|v| v.is_in()).unwrap_or(false);
    let minus_one_in = polar_membership(&s(-1.0), &zero, 0.0).map(|v| v.is_in()).unwrap_or(false);
    out.push(
        CheckReport::new("double polar of R+ is not R+", two_in && minus_one_in, 0.0)
            .with_witness(s(-1.0))
            .with_note("f = 2: pairing with every element of ∼R+ = {0} is 0, so 2 ∈ ∼∼R+")
            .with_note("f = −1: also pairs to 0 with {0}, so −1 ∈ ∼∼R+ while −1 ∉ R+"),
    );

    // [0, 1] is self-polar.
    let p11 = 1.0 * 1.0;
    let p111 = 1.0 * 1.1;
    let ok = (0.0..=1.0).contains(&p11) && !(0.0..=1.0).contains(&p111);
    out.push(
        CheckReport::new("[0,1] is self-polar", ok, 0.0)
            .with_witness(s(1.1))
            .with_note(format!("f = 1, g = 1: fg = {p11} ∈ [0,1]"))
            .with_note(format!("f = 1, g = 1.1: fg = {p111} ∉ [0,1], so 1.1 ∉ ∼[0,1]")),
    );

    // ∼∼{1} = [0, 1] by the LP oracle.
    let one = [s(1.0)];
    let mut ok = true;
    let mut notes = Vec::new();
    for (x, expect_in) in [(0.0, true), (0.5, true), (1.0, true), (-0.1, false), (1.1, false)] {
        let got = bipolar_membership(&s(x), &one).map(|v| v.is_in()).unwrap_or(!expect_in);
        ok &= got == expect_in;
        notes.push(format!("{x}: {}", if got { "in" } else { "out" }));
    }
    let mut r = CheckReport::new("double polar of [0,1] by LP", ok, 0.0);
    r.notes = notes;
    out.push(r);
    out
}
