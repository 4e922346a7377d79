// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! The Poisson reference law and total-variation distance to it.

use std::collections::BTreeMap;

use statrs::function::factorial::ln_factorial;

use crate::error::Error;

const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// `P(Po(lambda) = k)`, evaluated in log space.
pub fn poisson_pmf(lambda: f64, k: u64) -> f64 {
    if lambda == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    (k as f64 * lambda.ln() - lambda - ln_factorial(k)).exp()
}

/// `P(Po(lambda) > k)`.
pub fn poisson_tail(lambda: f64, k: u64) -> f64 {
    if lambda == 0.0 {
        return 0.0;
    }
    if (k as f64) < lambda {
        let mut cdf = KahanSum::default();
        for j in 0..=k {
            cdf.add(poisson_pmf(lambda, j));
        }
        return (1.0 - cdf.value()).max(0.0);
    }
    // Right of the mode the terms decrease, so sum them upward directly.
    let mut tail = KahanSum::default();
    let mut term = poisson_pmf(lambda, k + 1);
    let mut j = k + 1;
    while term > 0.0 {
        tail.add(term);
        j += 1;
        term *= lambda / j as f64;
        if term < tail.value() * 1e-18 {
            break;
        }
    }
    tail.value()
}

/// Total-variation distance between an empirical law on the non-negative
/// integers and `Po(lambda)`.
pub fn tv_distance_empirical(hist: &BTreeMap<u64, f64>, lambda: f64) -> Result<f64, Error> {
    let total: f64 = hist.values().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOLERANCE || hist.values().any(|&p| p < 0.0) {
        return Err(Error::UnnormalizedHistogram(total));
    }
    let max_seen = hist.keys().next_back().copied().unwrap_or(0);
    let cutoff = max_seen + (10.0 + 10.0 * lambda).ceil() as u64;
    let mut sum = KahanSum::default();
    for k in 0..=cutoff {
        let observed = hist.get(&k).copied().unwrap_or(0.0);
        sum.add((observed - poisson_pmf(lambda, k)).abs());
    }
    sum.add(poisson_tail(lambda, cutoff));
    Ok(0.5 * sum.value())
}

#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub(crate) fn add(&mut self, x: f64) {
        let y = x - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pmf_values() {
        assert_eq!(poisson_pmf(0.0, 0), 1.0);
        assert_eq!(poisson_pmf(0.0, 3), 0.0);
        assert!((poisson_pmf(1.0, 1) - 0.367_879_441_171_442_3).abs() < 1e-15);
        let total: f64 = (0..=200).map(|k| poisson_pmf(5.0, k)).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(poisson_pmf(1e3, 1000) > 0.0);
    }

    #[test]
    fn tail_matches_direct_sums() {
        for &lambda in &[0.3, 1.0, 4.5, 20.0] {
            for k in [0u64, 1, 3, 10, 40] {
                let direct: f64 = (k + 1..k + 400).map(|j| poisson_pmf(lambda, j)).sum();
                let tail = poisson_tail(lambda, k);
                assert!(
                    (tail - direct).abs() <= 1e-13 + 1e-10 * direct,
                    "lambda={lambda} k={k}: {tail} vs {direct}"
                );
            }
        }
        assert_eq!(poisson_tail(0.0, 0), 0.0);
        assert!((poisson_tail(2.0, 0) - (1.0 - (-2.0f64).exp())).abs() < 1e-15);
    }

    #[test]
    fn tv_of_exact_poisson_is_zero() {
        let lambda = 2.5;
        let hist: BTreeMap<u64, f64> = (0..=80).map(|k| (k, poisson_pmf(lambda, k))).collect();
        let norm: f64 = hist.values().sum();
        let hist = hist.into_iter().map(|(k, p)| (k, p / norm)).collect();
        assert!(tv_distance_empirical(&hist, lambda).unwrap() < 1e-9);
    }

    #[test]
    fn tv_of_point_mass() {
        let hist = BTreeMap::from([(0u64, 1.0)]);
        for lambda in [0.1, 1.0, 3.0] {
            let tv = tv_distance_empirical(&hist, lambda).unwrap();
            assert!((tv - (1.0 - (-lambda).exp())).abs() < 1e-12);
        }
        assert_eq!(tv_distance_empirical(&hist, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn tv_matches_direct_half_l1() {
        // Oracle: plain half-L1 over a wide support, no tail handling.
        let (shifted, lambda) = (1.7, 1.2);
        let hist: BTreeMap<u64, f64> = (0..=60).map(|k| (k, poisson_pmf(shifted, k))).collect();
        let norm: f64 = hist.values().sum();
        let hist: BTreeMap<u64, f64> = hist.into_iter().map(|(k, p)| (k, p / norm)).collect();
        let direct: f64 = 0.5
            * (0..400u64)
                .map(|k| (hist.get(&k).copied().unwrap_or(0.0) - poisson_pmf(lambda, k)).abs())
                .sum::<f64>();
        let tv = tv_distance_empirical(&hist, lambda).unwrap();
        assert!((tv - direct).abs() < 1e-12, "{tv} vs {direct}");
    }

    #[test]
    fn rejects_unnormalized() {
        let hist = BTreeMap::from([(0u64, 0.5), (1, 0.4)]);
        assert!(matches!(
            tv_distance_empirical(&hist, 1.0),
            Err(Error::UnnormalizedHistogram(_))
        ));
    }
}
