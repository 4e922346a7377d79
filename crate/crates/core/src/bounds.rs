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

//! Occurrence probabilities, the Poisson mean and the total-variation bounds.
//!
//! All four bound variants share one bracket:
//!
//! ```text
//! 2 v^2 / v! * n^(v-1) * P_pair + P_single + sum_{s=2}^{v-1} C(v,s) n^(v-s) / (v-s)! * P_s
//! ```
//!
//! where the `P` factors are powers of the maximum edge probability (block
//! model, graphon) or entries of a user-supplied [`NuTable`]. The bound is
//! `(1 - e^-lambda) * rho * g * bracket`, with `g` the dependence width.

use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::BoundError;
use crate::models::{graphon_to_sbm, h_star, GraphonSpec, SbmParams};
use crate::motif::{factorial, AnalyzedMotif, Motif};
use crate::ratio_serde;

/// Upper limit on the number of summands in an exact occurrence-probability
/// sum or quadrature grid.
pub const MAX_TERMS: u128 = 100_000_000;

pub const DEFAULT_QUAD_POINTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundVariant {
    Sbm,
    IndependentEdges,
    Nu,
    Graphon,
}

/// Which factor multiplies the headline bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Prefactor {
    /// `1 - e^-lambda`
    OneMinusExp,
    /// `min(1, lambda)`
    MinOneLambda,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundTerms {
    /// `2 v^2 / v! * n^(v-1) * P_pair`
    pub pair_term: f64,
    /// `P_single`, from a second copy on the same vertex set.
    pub same_position_term: f64,
    /// Overlap `s` contributions for `s = 2..v-1`.
    pub overlap_terms: BTreeMap<usize, f64>,
}

impl BoundTerms {
    pub fn sum(&self) -> f64 {
        self.pair_term + self.same_position_term + self.overlap_terms.values().sum::<f64>()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub variant: BoundVariant,
    pub n: usize,
    pub mu: f64,
    pub lambda: f64,
    /// Maximum edge probability feeding the terms; absent for nu tables.
    pub max_edge_probability: Option<f64>,
    /// Dependence width `g`.
    pub dependence_width: u64,
    pub rho: u64,
    pub terms: BoundTerms,
    pub bracket: f64,
    /// `1 - e^-lambda`
    pub prefactor_exp: f64,
    /// `min(1, lambda)`
    pub prefactor_min: f64,
    pub prefactor_used: Prefactor,
    pub bound: f64,
    pub bound_min_prefactor: f64,
    pub bound_unit_prefactor: f64,
    /// Set when the bound exceeds 1 and so says nothing.
    pub vacuous: bool,
    pub quadrature_error: Option<f64>,
}

/// `x^r` for an exact rational exponent.
pub fn pow_rational(x: f64, r: Rational64) -> f64 {
    if r.is_integer() {
        x.powi(r.to_integer() as i32)
    } else {
        x.powf(r.to_f64().unwrap())
    }
}

/// `C(n, k)` in floating point, as a running product.
pub fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn require_strictly_balanced(m: &AnalyzedMotif) -> Result<(), BoundError> {
    if m.stats.strictly_balanced {
        Ok(())
    } else {
        Err(BoundError::NotStrictlyBalanced)
    }
}

fn check_probability(x: f64, what: &str) -> Result<(), BoundError> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(BoundError::InvalidArgument(format!("{what} = {x} is outside [0, 1]")))
    }
}

/// Sum over all assignments `c` of motif vertices to `weights.len()` labels
/// of `prod_i weights[c_i] * prod_{(u,v) in E} matrix[c_u][c_v]`.
fn tensor_sum(weights: &[f64], matrix: &[f64], motif: &Motif) -> f64 {
    let q = weights.len();
    let v = motif.vertex_count();
    let parents: Vec<Vec<usize>> = (0..v)
        .map(|u| (0..u).filter(|&w| motif.has_edge(u, w)).collect())
        .collect();
    let mut assignment = vec![0usize; v];
    tensor_sum_from(0, weights, matrix, q, &parents, &mut assignment)
}

fn tensor_sum_from(
    depth: usize,
    weights: &[f64],
    matrix: &[f64],
    q: usize,
    parents: &[Vec<usize>],
    assignment: &mut [usize],
) -> f64 {
    let last = depth + 1 == parents.len();
    let mut total = 0.0;
    for c in 0..q {
        let row = &matrix[c * q..(c + 1) * q];
        let mut w = weights[c];
        for &p in &parents[depth] {
            w *= row[assignment[p]];
        }
        if w == 0.0 {
            continue;
        }
        if last {
            total += w;
        } else {
            assignment[depth] = c;
            total += w * tensor_sum_from(depth + 1, weights, matrix, q, parents, assignment);
        }
    }
    total
}

fn term_count(base: usize, v: usize) -> u128 {
    (base as u128).saturating_pow(v as u32)
}

/// Occurrence probability of one labelled copy in the block model, summed
/// exactly over all `Q^v` class assignments.
pub fn mu_sbm(params: &SbmParams, m: &Motif) -> Result<f64, BoundError> {
    let q = params.class_count();
    let terms = term_count(q, m.vertex_count());
    if terms > MAX_TERMS {
        return Err(BoundError::TooManyTerms(terms));
    }
    let matrix: Vec<f64> = params.edge_probs().iter().flatten().copied().collect();
    Ok(tensor_sum(params.proportions(), &matrix, m))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureEstimate {
    /// Richardson-extrapolated value (exact for piecewise-constant graphons).
    pub value: f64,
    /// Midpoint rule on `quad_points` nodes per axis.
    pub coarse: f64,
    /// Midpoint rule on `2 * quad_points` nodes per axis.
    pub fine: f64,
    /// `|fine - coarse| / 3`.
    pub error_estimate: f64,
}

fn midpoint_rule(spec: &GraphonSpec, m: &Motif, points: usize) -> f64 {
    let nodes: Vec<f64> = (0..points).map(|i| (i as f64 + 0.5) / points as f64).collect();
    let weights = vec![1.0 / points as f64; points];
    let matrix: Vec<f64> = nodes
        .iter()
        .flat_map(|&x| nodes.iter().map(move |&y| spec.value(x, y)))
        .collect();
    tensor_sum(&weights, &matrix, m)
}

/// Occurrence probability of one labelled copy under a graphon: the
/// `v`-dimensional integral of `prod_{(i,j) in E} h(u_i, u_j)`.
///
/// Smooth families use the tensor midpoint rule at `quad_points` and twice
/// that, combined by Richardson extrapolation. Piecewise-constant graphons
/// are evaluated exactly through the equivalent block model. The term limit
/// applies to the `quad_points^v` grid; the refined grid is `2^v` times larger.
pub fn mu_graphon(
    spec: &GraphonSpec,
    m: &Motif,
    quad_points: usize,
) -> Result<QuadratureEstimate, BoundError> {
    spec.validate()?;
    if let GraphonSpec::PiecewiseConstant { .. } = spec {
        let value = mu_sbm(&graphon_to_sbm(spec)?, m)?;
        return Ok(QuadratureEstimate {
            value,
            coarse: value,
            fine: value,
            error_estimate: 0.0,
        });
    }
    if quad_points < 2 {
        return Err(BoundError::InvalidArgument(format!(
            "quad_points must be at least 2, got {quad_points}"
        )));
    }
    let terms = term_count(quad_points, m.vertex_count());
    if terms > MAX_TERMS {
        return Err(BoundError::TooManyTerms(terms));
    }
    let coarse = midpoint_rule(spec, m, quad_points);
    let fine = midpoint_rule(spec, m, 2 * quad_points);
    Ok(QuadratureEstimate {
        value: ((4.0 * fine - coarse) / 3.0).clamp(0.0, 1.0),
        coarse,
        fine,
        error_estimate: (fine - coarse).abs() / 3.0,
    })
}

/// `lambda = C(n, v) * rho * mu`.
pub fn lambda_value(m: &AnalyzedMotif, n: usize, mu: f64) -> f64 {
    binomial_f64(n, m.vertex_count()) * m.stats.rho as f64 * mu
}

struct TermFactors {
    pair: f64,
    single: f64,
    overlap: BTreeMap<usize, f64>,
}

impl TermFactors {
    fn from_max_probability(m: &AnalyzedMotif, p: f64) -> TermFactors {
        let e = Rational64::from_integer(m.edge_count() as i64);
        TermFactors {
            pair: pow_rational(p, e),
            single: p,
            overlap: m
                .stats
                .kappa
                .iter()
                .map(|(&s, &kappa)| (s, pow_rational(p, kappa)))
                .collect(),
        }
    }
}

fn assemble(
    variant: BoundVariant,
    m: &AnalyzedMotif,
    n: usize,
    mu: f64,
    width: u64,
    max_edge_probability: Option<f64>,
    factors: TermFactors,
) -> BoundReport {
    let v = m.vertex_count();
    let nf = n as f64;
    let v_fact = factorial(v) as f64;
    let pair_term = 2.0 * (v * v) as f64 / v_fact * nf.powi(v as i32 - 1) * factors.pair;
    let overlap_terms = factors
        .overlap
        .iter()
        .map(|(&s, &x)| {
            let coefficient = binomial_f64(v, s) / factorial(v - s) as f64;
            (s, coefficient * nf.powi((v - s) as i32) * x)
        })
        .collect();
    let terms = BoundTerms {
        pair_term,
        same_position_term: factors.single,
        overlap_terms,
    };
    let bracket = terms.sum();
    let lambda = lambda_value(m, n, mu);
    let prefactor_exp = -(-lambda).exp_m1();
    let prefactor_min = lambda.min(1.0);
    let scale = m.stats.rho as f64 * width as f64 * bracket;
    // 1 - e^-x <= min(1, x) always, so the exponential factor is the tighter.
    let bound = prefactor_exp * scale;
    BoundReport {
        variant,
        n,
        mu,
        lambda,
        max_edge_probability,
        dependence_width: width,
        rho: m.stats.rho,
        terms,
        bracket,
        prefactor_exp,
        prefactor_min,
        prefactor_used: Prefactor::OneMinusExp,
        bound,
        bound_min_prefactor: prefactor_min * scale,
        bound_unit_prefactor: scale,
        vacuous: bound > 1.0,
        quadrature_error: None,
    }
}

/// Total-variation bound for copy counts in `SBM(n, pi, f)`.
pub fn bound_sbm(params: &SbmParams, m: &AnalyzedMotif, n: usize) -> Result<BoundReport, BoundError> {
    require_strictly_balanced(m)?;
    let mu = mu_sbm(params, &m.motif)?;
    let pi_star = params.pi_star();
    Ok(assemble(
        BoundVariant::Sbm,
        m,
        n,
        mu,
        1,
        Some(pi_star),
        TermFactors::from_max_probability(m, pi_star),
    ))
}

/// The bound for independent edges with every edge probability at most
/// `nu_max`, taking `mu = nu_max^e` (the homogeneous case).
pub fn bound_independent_edges(
    m: &AnalyzedMotif,
    n: usize,
    nu_max: f64,
) -> Result<BoundReport, BoundError> {
    let mu = nu_max.powi(m.edge_count() as i32);
    bound_independent_edges_with_mu(m, n, nu_max, mu)
}

/// As [`bound_independent_edges`] with the occurrence probability supplied.
pub fn bound_independent_edges_with_mu(
    m: &AnalyzedMotif,
    n: usize,
    nu_max: f64,
    mu: f64,
) -> Result<BoundReport, BoundError> {
    require_strictly_balanced(m)?;
    check_probability(nu_max, "nu_max")?;
    check_probability(mu, "mu")?;
    Ok(assemble(
        BoundVariant::IndependentEdges,
        m,
        n,
        mu,
        1,
        Some(nu_max),
        TermFactors::from_max_probability(m, nu_max),
    ))
}

/// Key of a conditional-probability bound: `k` further edges given `v`
/// present edges, sharing `s` vertices. `k` is an exact rational because the
/// overlap exponents can be fractional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NuKey {
    #[serde(with = "ratio_serde")]
    pub k: Rational64,
    pub v: usize,
    pub s: usize,
}

impl NuKey {
    pub fn new(k: Rational64, v: usize, s: usize) -> NuKey {
        NuKey { k, v, s }
    }
}

/// Table of `nu_{k,v,s}` values for the locally dependent model.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "NuTableFile", into = "NuTableFile")]
pub struct NuTable {
    entries: BTreeMap<NuKey, f64>,
}

#[derive(Serialize, Deserialize)]
struct NuEntry {
    #[serde(flatten)]
    key: NuKey,
    value: f64,
}

#[derive(Serialize, Deserialize)]
struct NuTableFile {
    entries: Vec<NuEntry>,
}

impl TryFrom<NuTableFile> for NuTable {
    type Error = BoundError;

    fn try_from(file: NuTableFile) -> Result<Self, Self::Error> {
        let mut table = NuTable::new();
        for entry in file.entries {
            table.insert(entry.key, entry.value)?;
        }
        Ok(table)
    }
}

impl From<NuTable> for NuTableFile {
    fn from(table: NuTable) -> Self {
        NuTableFile {
            entries: table
                .entries
                .into_iter()
                .map(|(key, value)| NuEntry { key, value })
                .collect(),
        }
    }
}

impl NuTable {
    pub fn new() -> NuTable {
        NuTable::default()
    }

    pub fn insert(&mut self, key: NuKey, value: f64) -> Result<(), BoundError> {
        check_probability(value, "nu")?;
        self.entries.insert(key, value);
        Ok(())
    }

    pub fn get(&self, key: &NuKey) -> Option<f64> {
        self.entries.get(key).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Keys the bound reads: `(e, e, 1)`, `(1, e, 1)` and `(kappa_s, e, s)`.
    pub fn required_keys(m: &AnalyzedMotif) -> Vec<NuKey> {
        let e = m.edge_count();
        let mut keys = vec![
            NuKey::new(Rational64::from_integer(e as i64), e, 1),
            NuKey::new(Rational64::from_integer(1), e, 1),
        ];
        keys.extend(m.stats.kappa.iter().map(|(&s, &kappa)| NuKey::new(kappa, e, s)));
        keys
    }

    /// The table `nu_{k,v,s} = base^k` over the required keys, which is what
    /// independent edges (`base = nu`) and graphons (`base = h*`) give.
    pub fn power_family(m: &AnalyzedMotif, base: f64) -> Result<NuTable, BoundError> {
        let mut table = NuTable::new();
        for key in NuTable::required_keys(m) {
            table.insert(key, pow_rational(base, key.k))?;
        }
        Ok(table)
    }

    fn lookup(&self, key: NuKey) -> Result<f64, BoundError> {
        self.get(&key).ok_or_else(|| BoundError::IncompleteNuTable {
            k: key.k.to_string(),
            v: key.v,
            s: key.s,
        })
    }
}

/// Total-variation bound for locally dependent random edge probabilities.
///
/// `mu` is model specific and must be supplied; `width` bounds the size of
/// the dependence sets `N(u, v)`.
pub fn bound_nu(
    m: &AnalyzedMotif,
    n: usize,
    width: u64,
    mu: f64,
    nu: &NuTable,
) -> Result<BoundReport, BoundError> {
    require_strictly_balanced(m)?;
    if width == 0 {
        return Err(BoundError::InvalidArgument("dependence width g must be at least 1".into()));
    }
    check_probability(mu, "mu")?;
    let e = m.edge_count();
    let e_rational = Rational64::from_integer(e as i64);
    let factors = TermFactors {
        pair: nu.lookup(NuKey::new(e_rational, e, 1))?,
        single: nu.lookup(NuKey::new(Rational64::from_integer(1), e, 1))?,
        overlap: m
            .stats
            .kappa
            .iter()
            .map(|(&s, &kappa)| Ok((s, nu.lookup(NuKey::new(kappa, e, s))?)))
            .collect::<Result<_, BoundError>>()?,
    };
    Ok(assemble(BoundVariant::Nu, m, n, mu, width, None, factors))
}

/// Total-variation bound for the `h`-graphon model (dependence width 2).
pub fn bound_graphon(
    spec: &GraphonSpec,
    m: &AnalyzedMotif,
    n: usize,
    quad_points: usize,
) -> Result<BoundReport, BoundError> {
    require_strictly_balanced(m)?;
    let mu = mu_graphon(spec, &m.motif, quad_points)?;
    let h = h_star(spec);
    let mut report = assemble(
        BoundVariant::Graphon,
        m,
        n,
        mu.value,
        2,
        Some(h),
        TermFactors::from_max_probability(m, h),
    );
    report.quadrature_error = Some(mu.error_estimate);
    Ok(report)
}

/// The bound under `c n^(-1/d) <= pi_ab <= C n^(-1/d)`, in closed form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaledBoundReport {
    pub n: usize,
    pub c_lower: f64,
    pub c_upper: f64,
    /// `rho / v^v * c^e`
    pub lambda_lower: f64,
    /// `rho / v! * C^e`
    pub lambda_upper: f64,
    /// `(1 + C^alpha)^(v-1) * n^(1 - alpha/d)`
    pub a: f64,
    /// `C^(e+gamma) * (1 + C^-d)^(v-1) * n^(-gamma/d)`
    pub b: f64,
    /// `min(1, lambda_upper)`
    pub prefactor: f64,
    /// `2 v^2 / v! * C^e / n`
    pub pair_term: f64,
    /// `C n^(-1/d)`
    pub same_position_term: f64,
    pub bound: f64,
}

pub fn bound_scaled(
    m: &AnalyzedMotif,
    n: usize,
    c_lower: f64,
    c_upper: f64,
) -> Result<ScaledBoundReport, BoundError> {
    require_strictly_balanced(m)?;
    if !(c_lower > 0.0 && c_lower <= c_upper && c_upper.is_finite()) {
        return Err(BoundError::InvalidArgument(format!(
            "need 0 < c <= C, got c = {c_lower}, C = {c_upper}"
        )));
    }
    let s = &m.stats;
    let v = s.vertex_count;
    let (vf, ef, nf) = (v as f64, s.edge_count as f64, n as f64);
    let rho = s.rho as f64;
    let v_fact = factorial(v) as f64;
    let d = s.density.to_f64().unwrap();
    let alpha = s.alpha.to_f64().unwrap();
    let gamma = s.gamma.to_f64().unwrap();

    let lambda_lower = rho / vf.powi(v as i32) * c_lower.powf(ef);
    let lambda_upper = rho / v_fact * c_upper.powf(ef);
    let a = (1.0 + c_upper.powf(alpha)).powi(v as i32 - 1) * nf.powf(1.0 - alpha / d);
    let b = c_upper.powf(ef + gamma)
        * (1.0 + c_upper.powf(-d)).powi(v as i32 - 1)
        * nf.powf(-gamma / d);
    let prefactor = lambda_upper.min(1.0);
    let pair_term = 2.0 * vf * vf / v_fact * c_upper.powf(ef) / nf;
    let same_position_term = c_upper * nf.powf(-1.0 / d);
    let bound = prefactor * rho * (pair_term + same_position_term + a.min(b));
    Ok(ScaledBoundReport {
        n,
        c_lower,
        c_upper,
        lambda_lower,
        lambda_upper,
        a,
        b,
        prefactor,
        pair_term,
        same_position_term,
        bound,
    })
}

/// Decay exponent `r` of the block-model bound, `O(n^-r)`, when the maximum
/// edge probability scales as `n^(-1/d)`.
pub fn rate_exponent(m: &AnalyzedMotif) -> Result<Rational64, BoundError> {
    require_strictly_balanced(m)?;
    let s = &m.stats;
    let v = s.vertex_count as i64;
    let mut rate = Rational64::from_integer(1).min(s.density.recip());
    for (&overlap, &kappa) in &s.kappa {
        rate = rate.min(kappa / s.density - (v - overlap as i64));
    }
    Ok(rate)
}
