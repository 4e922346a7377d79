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

//! Seeded replicate ensembles of copy counts.
//!
//! Replicate `r` draws its graph from the stream `(seed, r)`, so the result
//! does not depend on how replicates are scheduled across threads. Counts are
//! gathered in replicate order before any floating-point accumulation.

use std::collections::BTreeMap;
use std::time::Instant;

use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{bound_graphon, bound_sbm, lambda_value, mu_graphon, mu_sbm, DEFAULT_QUAD_POINTS};
use crate::count::count_copies;
use crate::error::{BoundError, Error};
use crate::models::{replicate_rng, Model};
use crate::motif::{AnalyzedMotif, Motif};
use crate::poisson::{tv_distance_empirical, KahanSum};

pub const BOOTSTRAP_RESAMPLES: usize = 200;

/// Stream index reserved for bootstrap resampling; replicate streams count
/// up from zero.
pub const BOOTSTRAP_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationPlan {
    pub model: Model,
    pub motif: Motif,
    pub n: usize,
    pub replicates: u64,
    pub seed: u64,
    /// Quadrature nodes per axis for smooth graphons.
    pub quad_points: usize,
}

impl SimulationPlan {
    pub fn new(model: Model, motif: Motif, n: usize, replicates: u64, seed: u64) -> SimulationPlan {
        SimulationPlan {
            model,
            motif,
            n,
            replicates,
            seed,
            quad_points: DEFAULT_QUAD_POINTS,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.replicates == 0 {
            return Err(Error::InvalidPlan("replicates must be at least 1".into()));
        }
        if self.n < self.motif.vertex_count() {
            return Err(Error::InvalidPlan(format!(
                "n = {} is smaller than the motif's {} vertices",
                self.n,
                self.motif.vertex_count()
            )));
        }
        match &self.model {
            Model::Graphon(g) => g.validate()?,
            Model::Sbm(_) => {}
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub n: usize,
    pub replicates: u64,
    pub seed: u64,
    pub mu: f64,
    pub lambda: f64,
    /// Replicates observing each count.
    pub counts: BTreeMap<u64, u64>,
    /// `counts / replicates`.
    pub histogram: BTreeMap<u64, f64>,
    pub sample_mean: f64,
    /// Unbiased; zero for a single replicate.
    pub sample_variance: f64,
    pub empirical_tv: f64,
    pub tv_standard_error: f64,
    /// Block-model or graphon bound, matching the model; absent when the
    /// motif is not strictly balanced.
    pub theoretical_bound: Option<f64>,
    pub quadrature_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_seconds: Option<f64>,
}

impl SimulationSummary {
    /// The histogram as `count,frequency` rows with CRLF line ends.
    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("count,frequency\r\n");
        for (k, p) in &self.histogram {
            out.push_str(&format!("{k},{p}\r\n"));
        }
        out
    }
}

fn frequencies(counts: &BTreeMap<u64, u64>, total: u64) -> BTreeMap<u64, f64> {
    counts
        .iter()
        .map(|(&k, &c)| (k, c as f64 / total as f64))
        .collect()
}

/// Run the replicates on the ambient rayon pool and summarise them.
pub fn run(plan: &SimulationPlan) -> Result<SimulationSummary, Error> {
    plan.validate()?;
    let start = Instant::now();
    let analyzed = AnalyzedMotif::new(plan.motif.clone());

    let (mu, quadrature_error) = match &plan.model {
        Model::Sbm(p) => (mu_sbm(p, &plan.motif)?, None),
        Model::Graphon(g) => {
            let est = mu_graphon(g, &plan.motif, plan.quad_points)?;
            (est.value, Some(est.error_estimate))
        }
    };
    let lambda = lambda_value(&analyzed, plan.n, mu);
    let bound = match &plan.model {
        Model::Sbm(p) => bound_sbm(p, &analyzed, plan.n),
        Model::Graphon(g) => bound_graphon(g, &analyzed, plan.n, plan.quad_points),
    };
    let theoretical_bound = match bound {
        Ok(report) => Some(report.bound),
        Err(BoundError::NotStrictlyBalanced) => None,
        Err(e) => return Err(e.into()),
    };

    let observed: Vec<u64> = (0..plan.replicates)
        .into_par_iter()
        .map(|r| -> Result<u64, Error> {
            let graph = plan.model.sample(plan.n, plan.seed, r)?;
            Ok(count_copies(&graph, &plan.motif)?.count)
        })
        .collect::<Result<_, _>>()?;

    let mut counts = BTreeMap::new();
    for &w in &observed {
        *counts.entry(w).or_insert(0u64) += 1;
    }
    let r = plan.replicates as f64;
    let mut sum = KahanSum::default();
    observed.iter().for_each(|&w| sum.add(w as f64));
    let sample_mean = sum.value() / r;
    let sample_variance = if plan.replicates > 1 {
        let mut squares = KahanSum::default();
        observed
            .iter()
            .for_each(|&w| squares.add((w as f64 - sample_mean).powi(2)));
        squares.value() / (r - 1.0)
    } else {
        0.0
    };
    let histogram = frequencies(&counts, plan.replicates);
    let empirical_tv = tv_distance_empirical(&histogram, lambda)?;
    let tv_se = if plan.replicates >= 2 {
        tv_standard_error(&histogram, plan.replicates, lambda, plan.seed)?
    } else {
        0.0
    };

    Ok(SimulationSummary {
        n: plan.n,
        replicates: plan.replicates,
        seed: plan.seed,
        mu,
        lambda,
        counts,
        histogram,
        sample_mean,
        sample_variance,
        empirical_tv,
        tv_standard_error: tv_se,
        theoretical_bound,
        quadrature_error,
        wall_time_seconds: Some(start.elapsed().as_secs_f64()),
    })
}

/// Bootstrap standard error of the empirical TV distance: redraw `replicates`
/// observations from `hist` [`BOOTSTRAP_RESAMPLES`] times and take the sample
/// standard deviation of the recomputed distances.
///
/// Each resample is a multinomial draw, generated as a chain of conditional
/// binomials over the support in increasing order.
pub fn tv_standard_error(
    hist: &BTreeMap<u64, f64>,
    replicates: u64,
    lambda: f64,
    seed: u64,
) -> Result<f64, Error> {
    if replicates < 2 {
        return Err(Error::InvalidPlan("bootstrap needs at least 2 replicates".into()));
    }
    // Validates normalisation up front.
    tv_distance_empirical(hist, lambda)?;
    let support: Vec<(u64, f64)> = hist.iter().map(|(&k, &p)| (k, p)).collect();
    let mut rng = replicate_rng(seed, BOOTSTRAP_STREAM);
    let mut stats = Vec::with_capacity(BOOTSTRAP_RESAMPLES);
    for _ in 0..BOOTSTRAP_RESAMPLES {
        let mut remaining = replicates;
        let mut mass_left = 1.0;
        let mut resample = BTreeMap::new();
        for (i, &(k, p)) in support.iter().enumerate() {
            if remaining == 0 {
                break;
            }
            let draw = if i + 1 == support.len() {
                remaining
            } else {
                let q = (p / mass_left).clamp(0.0, 1.0);
                Binomial::new(remaining, q)
                    .expect("probability clamped to [0, 1]")
                    .sample(&mut rng)
            };
            mass_left -= p;
            remaining -= draw;
            if draw > 0 {
                resample.insert(k, draw);
            }
        }
        stats.push(tv_distance_empirical(&frequencies(&resample, replicates), lambda)?);
    }
    // Shifted by the first draw so identical statistics give exactly zero.
    let shift = stats[0];
    let count = stats.len() as f64;
    let sum: f64 = stats.iter().map(|x| x - shift).sum();
    let squares: f64 = stats.iter().map(|x| (x - shift).powi(2)).sum();
    let var = (squares - sum * sum / count) / (count - 1.0);
    Ok(var.max(0.0).sqrt())
}
