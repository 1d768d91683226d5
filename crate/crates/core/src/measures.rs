//! RIM quantifiers, OWA weight vectors and the monotone measures that
//! parametrise every approximation model.
//!
//! A measure only ever gets queried along the nested chain of upper level
//! sets of an integrand, so each representation knows how to produce those
//! chain values directly (see [`MonotoneMeasure::level_values`]) in addition
//! to evaluating arbitrary subsets.

use std::fmt;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::sets::FuzzySet;

/// Largest universe for which an explicit subset table may be built.
pub const MAX_TABLE_SIZE: usize = 20;
/// Universes up to this size are checked exhaustively for monotonicity.
pub const EXHAUSTIVE_CHECK_LIMIT: usize = 10;
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

/// A regular increasing monotone quantifier: non-decreasing on `[0, 1]` with
/// `Λ(0) = 0` and `Λ(1) = 1`.
#[derive(Clone)]
pub enum Quantifier {
    Identity,
    /// Zadeh's S-function `Λ_(α,β)`.
    ZadehS {
        alpha: f64,
        beta: f64,
    },
    /// The crisp universal quantifier: 1 at `p = 1`, 0 elsewhere.
    Universal,
    Custom {
        name: String,
        eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl Quantifier {
    /// Zadeh's S-function. `zadeh_s(1, 1)` is taken as the universal
    /// quantifier, the limit of `Λ_(α,1)` as `α -> 1`.
    pub fn zadeh_s(alpha: f64, beta: f64) -> Result<Self> {
        if alpha == 1.0 && beta == 1.0 {
            return Ok(Quantifier::Universal);
        }
        if !(alpha.is_finite() && beta.is_finite() && 0.0 <= alpha && alpha < beta && beta <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "S-function needs 0 <= alpha < beta <= 1, got alpha={alpha}, beta={beta}"
            )));
        }
        Ok(Quantifier::ZadehS { alpha, beta })
    }

    /// A user quantifier, validated on a grid of step `0.001`.
    pub fn custom(
        name: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let q = Quantifier::Custom {
            name: name.into(),
            eval: Arc::new(eval),
        };
        q.validate(1000)?;
        Ok(q)
    }

    pub fn eval(&self, p: f64) -> f64 {
        let p = p.clamp(0.0, 1.0);
        match self {
            Quantifier::Identity => p,
            Quantifier::ZadehS { alpha, beta } => {
                let (a, b) = (*alpha, *beta);
                let width = (b - a) * (b - a);
                if p <= a {
                    0.0
                } else if p <= 0.5 * (a + b) {
                    2.0 * (p - a) * (p - a) / width
                } else if p <= b {
                    1.0 - 2.0 * (p - b) * (p - b) / width
                } else {
                    1.0
                }
            }
            Quantifier::Universal => {
                if p >= 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Quantifier::Custom { eval, .. } => eval(p).clamp(0.0, 1.0),
        }
    }

    /// Checks the RIM conditions on `points + 1` equally spaced points.
    pub fn validate(&self, points: usize) -> Result<()> {
        if self.eval(0.0) != 0.0 || self.eval(1.0) != 1.0 {
            return Err(Error::InvalidParameter(format!(
                "quantifier {self} must map 0 to 0 and 1 to 1"
            )));
        }
        let points = points.max(1);
        let mut prev = 0.0;
        for i in 0..=points {
            let v = self.eval(i as f64 / points as f64);
            if v < prev {
                return Err(Error::InvalidParameter(format!(
                    "quantifier {self} decreases near {}",
                    i as f64 / points as f64
                )));
            }
            prev = v;
        }
        Ok(())
    }
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantifier::Identity => f.write_str("identity"),
            Quantifier::ZadehS { alpha, beta } => write!(f, "zadeh_s({alpha},{beta})"),
            Quantifier::Universal => f.write_str("universal"),
            Quantifier::Custom { name, .. } => f.write_str(name),
        }
    }
}

impl fmt::Debug for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quantifier({self})")
    }
}

/// Free-function constructor for the S-function quantifier.
pub fn zadeh_s(alpha: f64, beta: f64) -> Result<Quantifier> {
    Quantifier::zadeh_s(alpha, beta)
}

/// Non-negative weights summing to one.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("empty weight vector".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::InvalidWeights(format!(
                "weight {w} is negative or not finite"
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::InvalidWeights(format!(
                "weights sum to {sum}, not 1"
            )));
        }
        Ok(Self(weights))
    }

    /// `w_i = Λ(i/n) - Λ((i-1)/n)`, Yager's quantifier-guided weights.
    pub fn from_quantifier(q: &Quantifier, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidWeights("empty weight vector".into()));
        }
        let weights = (1..=n)
            .map(|i| q.eval(i as f64 / n as f64) - q.eval((i - 1) as f64 / n as f64))
            .collect();
        Self::new(weights)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug)]
enum Repr {
    /// `values[k]` is the measure of any subset with `k` elements.
    Symmetric(Vec<f64>),
    /// `μ(E) = Λ(Σ_{i∈E} w_i / Σ_i w_i)`.
    Weighted {
        quantifier: Quantifier,
        weights: Vec<f64>,
    },
    /// Explicit table indexed by subset bitmask.
    Table { n: usize, values: Vec<f64> },
}

/// A normalised monotone set function on the subsets of `{0, .., n-1}`.
#[derive(Clone, Debug)]
pub struct MonotoneMeasure {
    repr: Repr,
}

impl MonotoneMeasure {
    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Symmetric(values) => values.len() - 1,
            Repr::Weighted { weights, .. } => weights.len(),
            Repr::Table { n, .. } => *n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Symmetric measure from its values per cardinality (`values[k]` for
    /// `|E| = k`, `k = 0..=n`).
    pub fn symmetric(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidParameter(
                "symmetric measure needs n >= 1".into(),
            ));
        }
        if values[0] != 0.0 || values[values.len() - 1] != 1.0 {
            return Err(Error::InvalidParameter(
                "measure must be 0 on the empty set and 1 on the universe".into(),
            ));
        }
        if values
            .windows(2)
            .any(|w| w[0].partial_cmp(&w[1]).is_none_or(|o| o.is_gt()))
        {
            return Err(Error::InvalidParameter(
                "measure values must be non-decreasing".into(),
            ));
        }
        Ok(Self {
            repr: Repr::Symmetric(values),
        })
    }

    /// Measure given by an explicit table of `2^n` values indexed by bitmask
    /// (bit `i` set means element `i` belongs to the subset).
    pub fn from_table(n: usize, values: Vec<f64>) -> Result<Self> {
        if n == 0 || n > MAX_TABLE_SIZE {
            return Err(Error::InvalidParameter(format!(
                "table measures support 1..={MAX_TABLE_SIZE} elements, got {n}"
            )));
        }
        if values.len() != 1 << n {
            return Err(Error::UniverseMismatch {
                expected: 1 << n,
                found: values.len(),
            });
        }
        if values[0] != 0.0 || values[(1 << n) - 1] != 1.0 {
            return Err(Error::InvalidParameter(
                "measure must be 0 on the empty set and 1 on the universe".into(),
            ));
        }
        for mask in 1..values.len() {
            let v = values[mask];
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Domain { value: v });
            }
            let mut bits = mask;
            while bits != 0 {
                let low = bits & bits.wrapping_neg();
                if values[mask ^ low] > v {
                    return Err(Error::InvalidParameter(format!(
                        "measure is not monotone at subset mask {mask:#b}"
                    )));
                }
                bits ^= low;
            }
        }
        Ok(Self {
            repr: Repr::Table { n, values },
        })
    }

    /// Random monotone measure on `n <= MAX_TABLE_SIZE` elements. Subsets are
    /// visited in increasing bitmask order, so every subset of `E` is
    /// assigned before `E`; each `μ(E)` is the largest value among its
    /// one-smaller subsets plus a random (sometimes zero) increment, and the
    /// table is finally rescaled so that `μ(X) = 1`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        if n == 0 || n > MAX_TABLE_SIZE {
            return Err(Error::InvalidParameter(format!(
                "table measures support 1..={MAX_TABLE_SIZE} elements, got {n}"
            )));
        }
        let size = 1usize << n;
        let mut values = vec![0.0; size];
        for mask in 1..size {
            let mut floor = 0.0_f64;
            let mut bits = mask;
            while bits != 0 {
                let low = bits & bits.wrapping_neg();
                floor = floor.max(values[mask ^ low]);
                bits ^= low;
            }
            let step = if rng.gen_bool(0.25) {
                0.0
            } else {
                rng.gen::<f64>()
            };
            values[mask] = floor + step;
        }
        let top = values[size - 1];
        if top > 0.0 {
            for v in values.iter_mut() {
                *v /= top;
            }
        } else {
            // every increment came out zero: fall back to the min measure
            values.iter_mut().for_each(|v| *v = 0.0);
        }
        values[size - 1] = 1.0;
        Ok(Self {
            repr: Repr::Table { n, values },
        })
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self.repr, Repr::Symmetric(_))
    }

    /// Measure of the subset containing the given element indices.
    pub fn eval(&self, subset: &[usize]) -> Result<f64> {
        let n = self.len();
        let mut member = vec![false; n];
        for &i in subset {
            *member
                .get_mut(i)
                .ok_or(Error::IndexOutOfRange { index: i, len: n })? = true;
        }
        let count = member.iter().filter(|m| **m).count();
        if count == 0 {
            return Ok(0.0);
        }
        if count == n {
            return Ok(1.0);
        }
        Ok(match &self.repr {
            Repr::Symmetric(values) => values[count],
            Repr::Weighted {
                quantifier,
                weights,
            } => {
                let total: f64 = weights.iter().sum();
                let mass: f64 = weights
                    .iter()
                    .zip(&member)
                    .filter(|(_, m)| **m)
                    .map(|(w, _)| *w)
                    .sum();
                quantifier.eval(mass / total)
            }
            Repr::Table { values, .. } => {
                let mask = member
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| **m)
                    .fold(0usize, |acc, (i, _)| acc | (1 << i));
                values[mask]
            }
        })
    }

    /// Measures of the upper level sets of an integrand.
    ///
    /// `order` lists the elements by ascending integrand value and `starts`
    /// holds the offsets in `order` where each distinct value begins. The
    /// returned `v[j]` is `μ(order[starts[j]..])`. Weights inside a level are
    /// summed in ascending order of value, so the result does not depend on
    /// how tied elements are labelled or arranged.
    pub(crate) fn level_values(&self, order: &[usize], starts: &[usize]) -> Vec<f64> {
        let n = order.len();
        let mut out = vec![0.0; starts.len()];
        match &self.repr {
            Repr::Symmetric(values) => {
                for (v, &s) in out.iter_mut().zip(starts) {
                    *v = values[n - s];
                }
            }
            Repr::Weighted {
                quantifier,
                weights,
            } => {
                let mut acc = 0.0;
                let mut masses = vec![0.0; starts.len()];
                for j in (0..starts.len()).rev() {
                    let end = starts.get(j + 1).copied().unwrap_or(n);
                    let mut block: Vec<f64> =
                        order[starts[j]..end].iter().map(|&i| weights[i]).collect();
                    block.sort_by(f64::total_cmp);
                    let block: f64 = block.iter().sum();
                    acc += block;
                    masses[j] = acc;
                }
                let total = acc;
                for (v, m) in out.iter_mut().zip(&masses) {
                    *v = quantifier.eval(m / total);
                }
            }
            Repr::Table { values, .. } => {
                let mut mask = 0usize;
                for j in (0..starts.len()).rev() {
                    let end = starts.get(j + 1).copied().unwrap_or(n);
                    for &i in &order[starts[j]..end] {
                        mask |= 1 << i;
                    }
                    out[j] = values[mask];
                }
            }
        }
        if let Some(first) = out.first_mut() {
            *first = 1.0;
        }
        out
    }

    /// Verifies `μ(∅) = 0`, `μ(X) = 1` and monotonicity: exhaustively over
    /// all single-element extensions for small universes, otherwise along
    /// `samples` random maximal chains.
    pub fn check_monotone(&self, tol: f64, samples: usize) -> bool {
        let n = self.len();
        if self.eval(&[]).unwrap_or(f64::NAN) != 0.0 {
            return false;
        }
        let all: Vec<usize> = (0..n).collect();
        if self.eval(&all).unwrap_or(f64::NAN) != 1.0 {
            return false;
        }
        if n <= EXHAUSTIVE_CHECK_LIMIT {
            let subsets: Vec<Vec<usize>> = (0..1usize << n)
                .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
                .collect();
            let vals: Vec<f64> = subsets.iter().map(|s| self.eval(s).unwrap()).collect();
            for mask in 0..1usize << n {
                for i in 0..n {
                    if mask & (1 << i) == 0 && vals[mask] > vals[mask | (1 << i)] + tol {
                        return false;
                    }
                }
            }
            true
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed);
            let mut perm = all;
            for _ in 0..samples.max(1) {
                perm.shuffle(&mut rng);
                let mut prev = 0.0;
                for k in 1..=n {
                    let v = self.eval(&perm[..k]).unwrap();
                    if v + tol < prev {
                        return false;
                    }
                    prev = v;
                }
            }
            true
        }
    }
}

/// `μ_Λ(E) = Λ(|E| / n)`.
pub fn symmetric_measure(q: &Quantifier, n: usize) -> MonotoneMeasure {
    assert!(n > 0, "universe must be non-empty");
    let mut values: Vec<f64> = (0..=n).map(|k| q.eval(k as f64 / n as f64)).collect();
    values[0] = 0.0;
    values[n] = 1.0;
    MonotoneMeasure {
        repr: Repr::Symmetric(values),
    }
}

/// `μ_A(E) = Λ(|A ∩ E| / |A|)`.
pub fn wowa_measure(q: &Quantifier, a: &FuzzySet) -> Result<MonotoneMeasure> {
    if a.is_empty() || a.cardinality() <= 0.0 {
        return Err(Error::DegenerateMeasure);
    }
    Ok(MonotoneMeasure {
        repr: Repr::Weighted {
            quantifier: q.clone(),
            weights: a.degrees().to_vec(),
        },
    })
}

/// `μ*_A(E) = Λ(s_|E| / |A|)`, where `s_k` is the sum of the `k` smallest
/// degrees of `A`. Symmetric: it depends on `E` only through `|E|`.
pub fn ywi_measure(q: &Quantifier, a: &FuzzySet) -> Result<MonotoneMeasure> {
    let n = a.len();
    if n == 0 || a.cardinality() <= 0.0 {
        return Err(Error::DegenerateMeasure);
    }
    let mut sorted = a.degrees().to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut cumulative = Vec::with_capacity(n + 1);
    cumulative.push(0.0);
    let mut acc = 0.0;
    for d in &sorted {
        acc += d;
        cumulative.push(acc);
    }
    let total = acc;
    let mut values: Vec<f64> = cumulative.iter().map(|c| q.eval(c / total)).collect();
    values[0] = 0.0;
    values[n] = 1.0;
    Ok(MonotoneMeasure {
        repr: Repr::Symmetric(values),
    })
}

/// Symmetric measure `μ(E) = Σ_{i <= |E|} w_i`, the measure whose Choquet
/// integral is the OWA operator with weights `w`.
pub fn owa_weights_to_measure(w: &WeightVector) -> MonotoneMeasure {
    let n = w.len();
    let mut values = Vec::with_capacity(n + 1);
    values.push(0.0);
    let mut acc = 0.0;
    for &wi in w.as_slice() {
        acc += wi;
        values.push(acc.min(1.0));
    }
    values[n] = 1.0;
    MonotoneMeasure {
        repr: Repr::Symmetric(values),
    }
}
