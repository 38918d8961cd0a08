//! The `check` subcommand: the verification suite with seeded draws.

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use rayon::prelude::*;
use serde_json::json;

use susyqm::checks::{self, CriterionReport, SHAPE_DRAWS};
use susyqm::sip::SipKind;

use crate::output::{Outcome, Table};

pub const DEFAULT_SEED: u64 = 20_240_917;

/// Uniform `[0, 1)⁴` draws, `SHAPE_DRAWS` per catalog entry.
pub fn shape_draws(seed: u64) -> Vec<[f64; 4]> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..SipKind::ALL.len() * SHAPE_DRAWS)
        .map(|_| [rng.random(), rng.random(), rng.random(), rng.random()])
        .collect()
}

/// Every criterion, run in parallel and returned in suite order.
pub fn run_suite(seed: u64) -> Vec<CriterionReport> {
    let draws = shape_draws(seed);
    let jobs: [&(dyn Fn() -> CriterionReport + Sync); 14] = [
        &checks::infinite_well_ladder,
        &checks::degeneracy_theorem,
        &checks::reflectionless_family,
        &|| checks::shape_invariance(&draws),
        &checks::isospectral_spectrum,
        &checks::isospectral_q1,
        &checks::isospectral_q2,
        &checks::pursey_limit,
        &checks::swkb_exactness,
        &checks::swkb_ground_state,
        &checks::lame_a1,
        &checks::lame_a2,
        &checks::superalgebra,
        &checks::oscillation_theorem,
    ];
    jobs.par_iter().map(|f| f()).collect()
}

pub fn check(seed: u64) -> Outcome {
    let reports = run_suite(seed);
    let mut t = Table::new(["id", "status", "title", "detail"]);
    let mut text = String::new();
    for r in &reports {
        t.push(vec![
            r.id.into(),
            if r.passed { "PASS" } else { "FAIL" }.into(),
            r.title.into(),
            r.detail.clone().into(),
        ]);
        text.push_str(&r.to_string());
        text.push('\n');
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    text.push_str(&format!("{} passed, {failed} failed\n", reports.len() - failed));
    let mut out = Outcome::new(t);
    out.diag("seed", json!(seed));
    out.diag("failed", json!(failed));
    out.report = Some(text);
    out.failed = failed > 0;
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_seeded() {
        let a = shape_draws(1);
        assert_eq!(a, shape_draws(1));
        assert_ne!(a, shape_draws(2));
        assert_eq!(a.len(), SipKind::ALL.len() * SHAPE_DRAWS);
        assert!(a.iter().flatten().all(|u| (0.0..1.0).contains(u)));
    }
}
