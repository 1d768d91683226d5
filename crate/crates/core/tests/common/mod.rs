#![allow(dead_code)]

use fqfrs::{build_relation, FuzzyRelation, FuzzySet, MonotoneMeasure, TNorm};
use rand::Rng;

pub const TNORMS: [TNorm; 3] = [TNorm::Lukasiewicz, TNorm::Minimum, TNorm::Product];

/// A `T`-equivalence on `n` elements: the similarity relation of random
/// attributes, closed under `t` (a no-op for Łukasiewicz).
pub fn random_relation<R: Rng>(rng: &mut R, n: usize, t: &TNorm) -> FuzzyRelation {
    let m = rng.gen_range(1..=3);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..m).map(|_| rng.gen::<f64>()).collect())
        .collect();
    let sigmas: Vec<f64> = (0..m).map(|_| rng.gen_range(0.1..1.0)).collect();
    let r = build_relation(&rows, &sigmas).unwrap();
    match t {
        TNorm::Lukasiewicz => r,
        _ => r.transitive_closure(t),
    }
}

/// Random degrees, with a share of exact 0s and 1s.
pub fn random_set<R: Rng>(rng: &mut R, n: usize) -> FuzzySet {
    let degrees = (0..n)
        .map(|_| match rng.gen_range(0..10) {
            0 => 0.0,
            1 => 1.0,
            _ => rng.gen::<f64>(),
        })
        .collect();
    FuzzySet::new(degrees).unwrap()
}

/// Distinct values in `[0, 1)`.
pub fn distinct_values<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        let mut s = v.clone();
        s.sort_by(f64::total_cmp);
        if s.windows(2).all(|w| w[0] < w[1]) {
            return v;
        }
    }
}

pub fn random_measure<R: Rng>(rng: &mut R, n: usize) -> MonotoneMeasure {
    MonotoneMeasure::random(n, rng).unwrap()
}

/// Ascending order by insertion sort, ties by index.
fn ascending(f: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = Vec::with_capacity(f.len());
    for i in 0..f.len() {
        let pos = order
            .iter()
            .position(|&j| f[j] > f[i])
            .unwrap_or(order.len());
        order.insert(pos, i);
    }
    order
}

/// `Σ_i f(x*_i) [μ(A*_i) − μ(A*_{i+1})]`, with `μ` queried on explicit subsets.
pub fn choquet_oracle(f: &[f64], mu: &MonotoneMeasure) -> f64 {
    let order = ascending(f);
    let n = f.len();
    let mut sum = 0.0;
    for i in 0..n {
        let upper = mu.eval(&order[i..]).unwrap();
        let next = if i + 1 < n {
            mu.eval(&order[i + 1..]).unwrap()
        } else {
            0.0
        };
        sum += f[order[i]] * (upper - next);
    }
    sum
}

/// `max_i min(f(x*_i), μ(A*_i))`.
pub fn sugeno_oracle(f: &[f64], mu: &MonotoneMeasure) -> f64 {
    let order = ascending(f);
    (0..f.len())
        .map(|i| f[order[i]].min(mu.eval(&order[i..]).unwrap()))
        .fold(0.0, f64::max)
}

/// `Σ_i w_i f_(i)` with `f_(1) >= f_(2) >= …`.
pub fn owa_oracle(f: &[f64], w: &[f64]) -> f64 {
    let mut sorted = f.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    sorted.iter().zip(w).map(|(v, w)| v * w).sum()
}

/// `min_y I(R(x, y), A(y))` by a direct double loop.
pub fn lower_oracle(r: &FuzzyRelation, a: &FuzzySet, t: &TNorm) -> Vec<f64> {
    let i = t.residual().unwrap();
    let n = r.size();
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| i.apply(r.get(x, y), a.get(y)))
                .fold(1.0, f64::min)
        })
        .collect()
}

/// `max_y T(R(x, y), A(y))` by a direct double loop.
pub fn upper_oracle(r: &FuzzyRelation, a: &FuzzySet, t: &TNorm) -> Vec<f64> {
    let n = r.size();
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| t.apply(r.get(x, y), a.get(y)))
                .fold(0.0, f64::max)
        })
        .collect()
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
