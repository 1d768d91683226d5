//! Choquet and Sugeno integrals of finite functions with respect to a
//! monotone measure, with OWA as the symmetric special case.
//!
//! Both integrals are computed over the distinct values of the integrand
//! (its level sets) rather than over individual elements. Elements with
//! equal values therefore never influence the result through the order in
//! which they happen to be sorted: tie invariance is exact, not approximate.

use crate::error::{Error, Result};
use crate::measures::{owa_weights_to_measure, MonotoneMeasure, WeightVector};

/// An integrand sorted in ascending order together with the measure of each
/// of its upper level sets.
#[derive(Clone, Debug)]
pub struct SortedEvaluation {
    permutation: Vec<usize>,
    level_starts: Vec<usize>,
    level_values: Vec<f64>,
    chain_values: Vec<f64>,
}

impl SortedEvaluation {
    pub fn new(f: &[f64], mu: &MonotoneMeasure) -> Result<Self> {
        check_shared_universe(f, mu)?;
        Ok(Self::build(f, mu))
    }

    fn build(f: &[f64], mu: &MonotoneMeasure) -> Self {
        let n = f.len();
        let mut permutation: Vec<usize> = (0..n).collect();
        // stable, so equal values keep ascending index order
        permutation.sort_by(|&i, &j| f[i].total_cmp(&f[j]));

        let mut level_starts = Vec::new();
        let mut level_values = Vec::new();
        for (pos, &i) in permutation.iter().enumerate() {
            if level_values.last() != Some(&f[i]) {
                level_starts.push(pos);
                level_values.push(f[i]);
            }
        }
        let chain_values = mu.level_values(&permutation, &level_starts);
        Self {
            permutation,
            level_starts,
            level_values,
            chain_values,
        }
    }

    /// Element indices by ascending integrand value, ties by index.
    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    /// Distinct integrand values, ascending.
    pub fn level_values(&self) -> &[f64] {
        &self.level_values
    }

    /// `μ({x : f(x) >= level_values[j]})` for each level `j`; non-increasing
    /// and equal to 1 at the first level.
    pub fn chain_values(&self) -> &[f64] {
        &self.chain_values
    }

    /// Offsets in [`permutation`](Self::permutation) where each level begins.
    pub fn level_starts(&self) -> &[usize] {
        &self.level_starts
    }

    pub fn choquet(&self) -> f64 {
        let levels = self.level_values.len();
        let mut sum = 0.0;
        for j in 0..levels {
            let next = self.chain_values.get(j + 1).copied().unwrap_or(0.0);
            sum += self.level_values[j] * (self.chain_values[j] - next);
        }
        sum
    }

    pub fn sugeno(&self) -> f64 {
        self.level_values
            .iter()
            .zip(&self.chain_values)
            .map(|(v, m)| v.min(*m))
            .fold(0.0, f64::max)
    }
}

fn check_shared_universe(f: &[f64], mu: &MonotoneMeasure) -> Result<()> {
    if f.len() != mu.len() {
        return Err(Error::UniverseMismatch {
            expected: mu.len(),
            found: f.len(),
        });
    }
    Ok(())
}

/// Choquet integral of a non-negative function.
pub fn choquet(f: &[f64], mu: &MonotoneMeasure) -> Result<f64> {
    check_shared_universe(f, mu)?;
    if let Some(&v) = f.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(Error::InvalidParameter(format!(
            "Choquet integrand must be finite and non-negative, got {v}"
        )));
    }
    Ok(choquet_unchecked(f, mu))
}

/// Sugeno integral of a `[0, 1]`-valued function.
pub fn sugeno(f: &[f64], mu: &MonotoneMeasure) -> Result<f64> {
    check_shared_universe(f, mu)?;
    if let Some(&value) = f.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::Domain { value });
    }
    Ok(sugeno_unchecked(f, mu))
}

/// Ordered weighted average: the Choquet integral with respect to the
/// symmetric measure built from `w`.
pub fn owa(f: &[f64], w: &WeightVector) -> Result<f64> {
    if f.len() != w.len() {
        return Err(Error::UniverseMismatch {
            expected: w.len(),
            found: f.len(),
        });
    }
    choquet(f, &owa_weights_to_measure(w))
}

pub(crate) fn choquet_unchecked(f: &[f64], mu: &MonotoneMeasure) -> f64 {
    SortedEvaluation::build(f, mu).choquet()
}

pub(crate) fn sugeno_unchecked(f: &[f64], mu: &MonotoneMeasure) -> f64 {
    SortedEvaluation::build(f, mu).sugeno()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{symmetric_measure, wowa_measure, ywi_measure, Quantifier};
    use crate::sets::FuzzySet;

    #[test]
    fn choquet_example_one_row_two() {
        let rx2 = FuzzySet::new(vec![0.5, 1.0, 0.5, 0.5, 0.5]).unwrap();
        let mu = ywi_measure(&Quantifier::Identity, &rx2).unwrap();
        let f = [1.0, 1.0, 1.0, 0.5, 0.5];
        assert!((choquet(&f, &mu).unwrap() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn sugeno_example_rows() {
        let rx4 = FuzzySet::new(vec![0.09, 0.09, 0.29, 1.0, 0.91]).unwrap();
        let mu = ywi_measure(&Quantifier::Identity, &rx4).unwrap();
        let f = [1.0, 1.0, 1.0, 0.0, 0.09];
        assert!((sugeno(&f, &mu).unwrap() - 0.19747).abs() < 1e-4);

        let rx1 = FuzzySet::new(vec![1.0, 0.2, 0.2, 0.2, 0.8]).unwrap();
        let mu = wowa_measure(&Quantifier::Identity, &rx1).unwrap();
        let f = [1.0, 1.0, 1.0, 1.0, 0.2];
        assert!((sugeno(&f, &mu).unwrap() - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn constant_integrand() {
        let mu = MonotoneMeasure::from_table(2, vec![0.0, 0.3, 0.6, 1.0]).unwrap();
        for c in [0.0, 0.37, 1.0] {
            assert_eq!(choquet(&[c, c], &mu).unwrap(), c);
            assert_eq!(sugeno(&[c, c], &mu).unwrap(), c);
        }
    }

    #[test]
    fn additive_measure_gives_mean() {
        let mu = symmetric_measure(&Quantifier::Identity, 3);
        assert!((choquet(&[0.2, 0.4, 0.6], &mu).unwrap() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn owa_extremes() {
        let f = [0.3, 0.9, 0.1, 0.5];
        let max = WeightVector::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let min = WeightVector::new(vec![0.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(owa(&f, &max).unwrap(), 0.9);
        assert_eq!(owa(&f, &min).unwrap(), 0.1);
    }

    #[test]
    fn mismatches_and_domain() {
        let mu = symmetric_measure(&Quantifier::Identity, 3);
        assert!(matches!(
            choquet(&[0.1, 0.2], &mu),
            Err(Error::UniverseMismatch { .. })
        ));
        assert!(sugeno(&[0.1, 0.2, 1.5], &mu).is_err());
        assert!(choquet(&[0.1, 0.2, 1.5], &mu).is_ok());
        assert!(choquet(&[0.1, -0.2, 1.5], &mu).is_err());
        let w = WeightVector::new(vec![0.5, 0.5]).unwrap();
        assert!(owa(&[0.1, 0.2, 0.3], &w).is_err());
    }

    #[test]
    fn sorted_evaluation_invariants() {
        let mu =
            MonotoneMeasure::from_table(3, vec![0.0, 0.2, 0.1, 0.5, 0.3, 0.6, 0.4, 1.0]).unwrap();
        let s = SortedEvaluation::new(&[0.4, 0.1, 0.4], &mu).unwrap();
        assert_eq!(s.permutation(), &[1, 0, 2]);
        assert_eq!(s.level_values(), &[0.1, 0.4]);
        assert_eq!(s.level_starts(), &[0, 1]);
        assert_eq!(s.chain_values(), &[1.0, 0.6]);
        assert!((s.choquet() - (0.1 * 0.4 + 0.4 * 0.6)).abs() < 1e-15);
        assert_eq!(s.sugeno(), 0.4);
    }
}
