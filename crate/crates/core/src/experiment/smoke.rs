//! A quick randomized self-check of the main properties, run by `verify`.
//!
//! Random relations are built from random attributes and closed under the
//! t-norm in use, so they are `T`-equivalences for it.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::approximations::{lower_classic, upper_classic, Aggregation, ApproximationModel};
use crate::connectives::{unit_grid, TNorm};
use crate::error::Result;
use crate::granularity::granular_decomposition;
use crate::measures::MonotoneMeasure;
use crate::sets::{build_relation, FuzzyRelation, FuzzySet};

pub const SMOKE_SEED: u64 = 0x5eed;
const INSTANCES: usize = 25;
const TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct SmokeCheck {
    pub name: String,
    pub cases: usize,
    pub max_deviation: f64,
    pub passed: bool,
}

fn random_instance(rng: &mut StdRng, t: &TNorm) -> Result<(FuzzyRelation, FuzzySet)> {
    let n = rng.gen_range(3..=8);
    let m = rng.gen_range(1..=3);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..m).map(|_| rng.gen::<f64>()).collect())
        .collect();
    let sigmas: Vec<f64> = (0..m).map(|_| rng.gen_range(0.2..1.0)).collect();
    let r = build_relation(&rows, &sigmas)?.transitive_closure(t);
    let a = FuzzySet::new((0..n).map(|_| rng.gen::<f64>()).collect())?;
    Ok((r, a))
}

fn deviation(x: &FuzzySet, y: &FuzzySet) -> f64 {
    x.max_abs_diff(y)
}

fn check(name: &str, cases: usize, max_deviation: f64, tol: f64) -> SmokeCheck {
    SmokeCheck {
        name: name.to_string(),
        cases,
        max_deviation,
        passed: max_deviation <= tol,
    }
}

fn fixpoint_check(
    name: &str,
    rng: &mut StdRng,
    tnorms: &[TNorm],
    sugeno: bool,
) -> Result<SmokeCheck> {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for _ in 0..INSTANCES {
        let t = tnorms[rng.gen_range(0..tnorms.len())].clone();
        let (r, a) = random_instance(rng, &t)?;
        let mu = MonotoneMeasure::random(r.size(), rng)?;
        let agg = if sugeno {
            Aggregation::Sugeno(mu)
        } else {
            Aggregation::Choquet(mu)
        };
        let model = ApproximationModel::new(agg, t.clone())?;
        let i = model.implicator();
        let lower = model.lower(&r, &a)?;
        let upper = model.upper(&r, &a)?;
        worst = worst
            .max(deviation(&lower_classic(&r, &lower, i)?, &lower))
            .max(deviation(&upper_classic(&r, &upper, &t)?, &upper))
            .max(deviation(
                &granular_decomposition(&r, &lower, &t, i)?,
                &lower,
            ));
        cases += 1;
    }
    Ok(check(name, cases, worst, TOLERANCE))
}

fn residuation_check() -> Result<SmokeCheck> {
    let grid = unit_grid(0.05);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for t in [TNorm::Lukasiewicz, TNorm::Minimum, TNorm::Product] {
        let i = t.residual()?;
        for &x in &grid {
            for &y in &grid {
                for &z in &grid {
                    let lhs = i.apply(t.apply(x, y), z);
                    let rhs = i.apply(x, i.apply(y, z));
                    worst = worst.max((lhs - rhs).abs());
                    cases += 1;
                }
            }
        }
    }
    Ok(check("residuation exchange", cases, worst, 1e-12))
}

/// Runs every smoke check from a fixed seed.
pub fn run_smoke_suite(seed: u64) -> Result<Vec<SmokeCheck>> {
    let mut rng = StdRng::seed_from_u64(seed);
    Ok(vec![
        residuation_check()?,
        fixpoint_check(
            "choquet fixpoint",
            &mut rng,
            &[TNorm::Lukasiewicz, TNorm::Product],
            false,
        )?,
        fixpoint_check(
            "sugeno fixpoint",
            &mut rng,
            &[TNorm::Lukasiewicz, TNorm::Minimum, TNorm::Product],
            true,
        )?,
    ])
}
