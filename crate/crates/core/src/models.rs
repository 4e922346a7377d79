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

//! Block-model and graphon parameterisations, and seeded samplers for both.
//!
//! Every sampler draws from a ChaCha8 stream selected by `(seed, replicate)`
//! and consumes it in a fixed order: latent variables for vertices `0..n`,
//! then one uniform per unordered pair in lexicographic order. Replicate `r`
//! therefore reproduces independently of how replicates are scheduled.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::motif::parse_edge_lines;

const PROPORTION_TOLERANCE: f64 = 1e-12;

/// Parameters of `SBM(n, pi, f)`: class proportions and a symmetric matrix
/// of class-pair edge probabilities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSbm", into = "RawSbm")]
pub struct SbmParams {
    proportions: Vec<f64>,
    edge_probs: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct RawSbm {
    #[serde(rename = "Q")]
    classes: usize,
    f: Vec<f64>,
    pi: Vec<Vec<f64>>,
}

impl TryFrom<RawSbm> for SbmParams {
    type Error = ModelError;

    fn try_from(raw: RawSbm) -> Result<Self, Self::Error> {
        if raw.f.len() != raw.classes {
            return Err(invalid(format!(
                "Q = {} but f has {} entries",
                raw.classes,
                raw.f.len()
            )));
        }
        SbmParams::new(raw.f, raw.pi)
    }
}

impl From<SbmParams> for RawSbm {
    fn from(p: SbmParams) -> Self {
        RawSbm {
            classes: p.proportions.len(),
            f: p.proportions,
            pi: p.edge_probs,
        }
    }
}

fn invalid(msg: impl Into<String>) -> ModelError {
    ModelError::InvalidParams(msg.into())
}

fn check_probability(x: f64, what: &str) -> Result<(), ModelError> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(invalid(format!("{what} = {x} is outside [0, 1]")))
    }
}

fn check_symmetric_matrix(m: &[Vec<f64>], q: usize, what: &str) -> Result<(), ModelError> {
    if m.len() != q || m.iter().any(|row| row.len() != q) {
        return Err(invalid(format!("{what} must be {q}x{q}")));
    }
    for (a, row) in m.iter().enumerate() {
        for (b, &x) in row.iter().enumerate() {
            check_probability(x, &format!("{what}[{a}][{b}]"))?;
            if x != m[b][a] {
                return Err(invalid(format!("{what} is not symmetric at ({a}, {b})")));
            }
        }
    }
    Ok(())
}

impl SbmParams {
    pub fn new(proportions: Vec<f64>, edge_probs: Vec<Vec<f64>>) -> Result<SbmParams, ModelError> {
        let q = proportions.len();
        if q == 0 {
            return Err(invalid("need at least one class"));
        }
        if let Some(bad) = proportions.iter().find(|f| !(f.is_finite() && **f > 0.0)) {
            return Err(invalid(format!("class proportion {bad} is not positive")));
        }
        let total: f64 = proportions.iter().sum();
        if (total - 1.0).abs() > PROPORTION_TOLERANCE {
            return Err(invalid(format!("class proportions sum to {total}")));
        }
        check_symmetric_matrix(&edge_probs, q, "pi")?;
        Ok(SbmParams {
            proportions,
            edge_probs,
        })
    }

    /// The single-class model, i.e. `G(n, p)`.
    pub fn erdos_renyi(p: f64) -> Result<SbmParams, ModelError> {
        SbmParams::new(vec![1.0], vec![vec![p]])
    }

    pub fn class_count(&self) -> usize {
        self.proportions.len()
    }

    pub fn proportions(&self) -> &[f64] {
        &self.proportions
    }

    pub fn edge_probs(&self) -> &[Vec<f64>] {
        &self.edge_probs
    }

    pub fn edge_prob(&self, a: usize, b: usize) -> f64 {
        self.edge_probs[a][b]
    }

    /// Largest class-pair edge probability, diagonal included.
    pub fn pi_star(&self) -> f64 {
        self.edge_probs
            .iter()
            .flatten()
            .copied()
            .fold(0.0, f64::max)
    }

    fn draw_class(&self, rng: &mut ChaCha8Rng) -> usize {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (class, f) in self.proportions.iter().enumerate() {
            acc += f;
            if u < acc {
                return class;
            }
        }
        self.proportions.len() - 1
    }
}

/// Closed family of symmetric graphons `h: [0,1]^2 -> [0,1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGraphon", into = "RawGraphon")]
pub enum GraphonSpec {
    /// `h(x, y) = c * x * y`.
    Product { c: f64 },
    /// `h` constant on `[s_i, s_{i+1}) x [s_j, s_{j+1})`.
    PiecewiseConstant {
        breakpoints: Vec<f64>,
        values: Vec<Vec<f64>>,
    },
    /// `h(x, y) = c * (x + y) / 2`.
    AffineMean { c: f64 },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
enum RawGraphon {
    Product {
        c: f64,
    },
    PiecewiseConstant {
        breakpoints: Vec<f64>,
        values: Vec<Vec<f64>>,
    },
    AffineMean {
        c: f64,
    },
}

impl TryFrom<RawGraphon> for GraphonSpec {
    type Error = ModelError;

    fn try_from(raw: RawGraphon) -> Result<Self, Self::Error> {
        let spec = match raw {
            RawGraphon::Product { c } => GraphonSpec::Product { c },
            RawGraphon::AffineMean { c } => GraphonSpec::AffineMean { c },
            RawGraphon::PiecewiseConstant {
                breakpoints,
                values,
            } => GraphonSpec::PiecewiseConstant {
                breakpoints,
                values,
            },
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl From<GraphonSpec> for RawGraphon {
    fn from(spec: GraphonSpec) -> Self {
        match spec {
            GraphonSpec::Product { c } => RawGraphon::Product { c },
            GraphonSpec::AffineMean { c } => RawGraphon::AffineMean { c },
            GraphonSpec::PiecewiseConstant {
                breakpoints,
                values,
            } => RawGraphon::PiecewiseConstant {
                breakpoints,
                values,
            },
        }
    }
}

impl GraphonSpec {
    pub fn product(c: f64) -> Result<GraphonSpec, ModelError> {
        let spec = GraphonSpec::Product { c };
        spec.validate()?;
        Ok(spec)
    }

    pub fn affine_mean(c: f64) -> Result<GraphonSpec, ModelError> {
        let spec = GraphonSpec::AffineMean { c };
        spec.validate()?;
        Ok(spec)
    }

    pub fn piecewise_constant(
        breakpoints: Vec<f64>,
        values: Vec<Vec<f64>>,
    ) -> Result<GraphonSpec, ModelError> {
        let spec = GraphonSpec::PiecewiseConstant {
            breakpoints,
            values,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn family(&self) -> &'static str {
        match self {
            GraphonSpec::Product { .. } => "product",
            GraphonSpec::PiecewiseConstant { .. } => "piecewise_constant",
            GraphonSpec::AffineMean { .. } => "affine_mean",
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        match self {
            GraphonSpec::Product { c } | GraphonSpec::AffineMean { c } => {
                check_probability(*c, "graphon scale c")
            }
            GraphonSpec::PiecewiseConstant {
                breakpoints,
                values,
            } => {
                if breakpoints.len() < 2 {
                    return Err(invalid("need at least two breakpoints"));
                }
                if breakpoints[0] != 0.0 || *breakpoints.last().unwrap() != 1.0 {
                    return Err(invalid("breakpoints must start at 0 and end at 1"));
                }
                if breakpoints.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
                    return Err(invalid("breakpoints must be strictly increasing"));
                }
                check_symmetric_matrix(values, breakpoints.len() - 1, "values")
            }
        }
    }

    /// Evaluates `h(x, y)`.
    pub fn value(&self, x: f64, y: f64) -> f64 {
        match self {
            GraphonSpec::Product { c } => c * (x * y),
            GraphonSpec::AffineMean { c } => c * (x + y) / 2.0,
            GraphonSpec::PiecewiseConstant {
                breakpoints,
                values,
            } => values[block_of(breakpoints, x)][block_of(breakpoints, y)],
        }
    }
}

fn block_of(breakpoints: &[f64], u: f64) -> usize {
    let blocks = breakpoints.len() - 1;
    breakpoints[1..blocks]
        .partition_point(|&s| s <= u)
        .min(blocks - 1)
}

/// The exact supremum of `h` for the builtin families.
pub fn h_star(spec: &GraphonSpec) -> f64 {
    match spec {
        GraphonSpec::Product { c } | GraphonSpec::AffineMean { c } => *c,
        GraphonSpec::PiecewiseConstant { values, .. } => {
            values.iter().flatten().copied().fold(0.0, f64::max)
        }
    }
}

/// Reads a piecewise-constant graphon as the equivalent block model: one
/// class per interval, with the interval length as its proportion.
pub fn graphon_to_sbm(spec: &GraphonSpec) -> Result<SbmParams, ModelError> {
    match spec {
        GraphonSpec::PiecewiseConstant {
            breakpoints,
            values,
        } => {
            let proportions = breakpoints.windows(2).map(|w| w[1] - w[0]).collect();
            SbmParams::new(proportions, values.clone())
        }
        _ => Err(ModelError::WrongFamily),
    }
}

/// Either random-graph model.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Model {
    Sbm(SbmParams),
    Graphon(GraphonSpec),
}

impl Model {
    pub fn sample(&self, n: usize, seed: u64, replicate: u64) -> Result<SampledGraph, ModelError> {
        match self {
            Model::Sbm(p) => sample_sbm_replicate(p, n, seed, replicate),
            Model::Graphon(g) => sample_graphon_replicate(g, n, seed, replicate),
        }
    }
}

impl From<SbmParams> for Model {
    fn from(p: SbmParams) -> Self {
        Model::Sbm(p)
    }
}

impl From<GraphonSpec> for Model {
    fn from(g: GraphonSpec) -> Self {
        Model::Graphon(g)
    }
}

/// The random stream for replicate `replicate` under `seed`.
pub fn replicate_rng(seed: u64, replicate: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replicate);
    rng
}

pub fn sample_sbm(params: &SbmParams, n: usize, seed: u64) -> Result<SampledGraph, ModelError> {
    sample_sbm_replicate(params, n, seed, 0)
}

pub fn sample_sbm_replicate(
    params: &SbmParams,
    n: usize,
    seed: u64,
    replicate: u64,
) -> Result<SampledGraph, ModelError> {
    if n < 2 {
        return Err(ModelError::TooFewVertices(n));
    }
    let mut rng = replicate_rng(seed, replicate);
    let classes: Vec<usize> = (0..n).map(|_| params.draw_class(&mut rng)).collect();
    let mut graph = SampledGraph::empty(n);
    for i in 0..n {
        let row = &params.edge_probs[classes[i]];
        for j in i + 1..n {
            let u: f64 = rng.random();
            if u < row[classes[j]] {
                graph.add_edge(i, j);
            }
        }
    }
    graph.class_labels = Some(classes);
    Ok(graph)
}

pub fn sample_graphon(spec: &GraphonSpec, n: usize, seed: u64) -> Result<SampledGraph, ModelError> {
    sample_graphon_replicate(spec, n, seed, 0)
}

pub fn sample_graphon_replicate(
    spec: &GraphonSpec,
    n: usize,
    seed: u64,
    replicate: u64,
) -> Result<SampledGraph, ModelError> {
    if n < 2 {
        return Err(ModelError::TooFewVertices(n));
    }
    spec.validate()?;
    let mut rng = replicate_rng(seed, replicate);
    let latent: Vec<f64> = (0..n).map(|_| rng.random()).collect();
    let mut graph = SampledGraph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            let u: f64 = rng.random();
            if u < spec.value(latent[i], latent[j]) {
                graph.add_edge(i, j);
            }
        }
    }
    graph.latent_u = Some(latent);
    Ok(graph)
}

/// A simple undirected graph on `0..n` stored as adjacency bitsets.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    pub class_labels: Option<Vec<usize>>,
    pub latent_u: Option<Vec<f64>>,
}

impl SampledGraph {
    pub fn empty(n: usize) -> SampledGraph {
        let words = n.div_ceil(64).max(1);
        SampledGraph {
            n,
            words,
            rows: vec![0; n * words],
            class_labels: None,
            latent_u: None,
        }
    }

    pub fn complete(n: usize) -> SampledGraph {
        let mut g = SampledGraph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<SampledGraph, ModelError> {
        let mut g = SampledGraph::empty(n);
        for &(a, b) in edges {
            if a == b {
                return Err(ModelError::Parse(format!("self-loop at {a}")));
            }
            if a >= n || b >= n {
                return Err(ModelError::Parse(format!("edge ({a}, {b}) outside 0..{n}")));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    /// Parses the edge-list text format. A `# n = N` comment fixes the vertex
    /// count; otherwise it is one more than the largest label.
    pub fn parse_edge_list(text: &str) -> Result<SampledGraph, ModelError> {
        let declared = text.lines().find_map(|line| {
            let rest = line.trim().strip_prefix('#')?.trim();
            let value = rest.strip_prefix("n")?.trim().strip_prefix('=')?;
            value.trim().parse::<usize>().ok()
        });
        let edges = parse_edge_lines(text).map_err(ModelError::Parse)?;
        let implied = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        SampledGraph::from_edges(declared.unwrap_or(implied), &edges)
    }

    pub fn to_edge_list_text(&self) -> String {
        let mut out = format!("# n = {}\n", self.n);
        for (a, b) in self.edges() {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of 64-bit words per adjacency row.
    pub fn words(&self) -> usize {
        self.words
    }

    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rows[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b && a < self.n && b < self.n, "invalid edge ({a}, {b})");
        self.rows[a * self.words + b / 64] |= 1 << (b % 64);
        self.rows[b * self.words + a / 64] |= 1 << (a % 64);
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.rows[a * self.words + b / 64] &= !(1 << (b % 64));
        self.rows[b * self.words + a / 64] &= !(1 << (a % 64));
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| {
            (a + 1..self.n)
                .filter(move |&b| self.has_edge(a, b))
                .map(move |b| (a, b))
        })
    }

    /// The graph with vertex `u` renamed to `perm[u]`. Latent data is dropped.
    pub fn permuted(&self, perm: &[usize]) -> SampledGraph {
        let mut g = SampledGraph::empty(self.n);
        for (a, b) in self.edges() {
            g.add_edge(perm[a], perm[b]);
        }
        g
    }
}
