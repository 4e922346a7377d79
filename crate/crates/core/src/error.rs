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

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MotifError {
    #[error("motif edge list is empty")]
    EmptyEdgeSet,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} is not an endpoint of any edge")]
    IsolatedVertex(usize),
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("motif needs at least two edges, got {0}")]
    SingleEdge(usize),
    #[error("motif has {0} vertices, the cap is {cap}", cap = crate::motif::MAX_MOTIF_VERTICES)]
    TooLarge(usize),
    #[error("builtin motifs need at least 3 vertices, got {0}")]
    TooSmall(usize),
    #[error("unknown motif family {0:?}")]
    UnknownFamily(String),
    #[error("cannot parse motif: {0}")]
    Parse(String),
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),
    #[error("graph needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("operation requires a piecewise_constant graphon")]
    WrongFamily,
    #[error("cannot parse graph: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("motif has {motif} vertices but the graph only {graph}")]
    MotifLargerThanGraph { motif: usize, graph: usize },
    #[error("brute-force oracle is limited to {max} vertices, graph has {n}")]
    GraphTooLargeForOracle { n: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("motif is not strictly balanced")]
    NotStrictlyBalanced,
    #[error("summation needs {0} terms, more than the limit of 1e8")]
    TooManyTerms(u128),
    #[error("nu table has no entry for k={k}, v={v}, s={s}")]
    IncompleteNuTable { k: String, v: usize, s: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Motif(#[from] MotifError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error("invalid simulation plan: {0}")]
    InvalidPlan(String),
    #[error("histogram frequencies sum to {0}, expected 1")]
    UnnormalizedHistogram(f64),
}
