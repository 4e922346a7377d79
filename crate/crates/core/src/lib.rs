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

//! Poisson approximation of motif counts in stochastic block models and
//! graphon random graphs.
//!
//! The crate is organised bottom-up:
//!
//! - [`motif`] holds the fixed small graph and its exact invariants
//!   (density, the subgraph minima `alpha` and `gamma`, overlap exponents,
//!   automorphism counts).
//! - [`models`] parameterises and samples block models and graphons.
//! - [`count`] counts copies of a motif in a sampled graph exactly.
//! - [`bounds`] evaluates occurrence probabilities, the Poisson mean and the
//!   total-variation bounds, and [`poisson`] holds the reference distribution
//!   helpers.
//! - [`montecarlo`] runs seeded replicate ensembles and compares the empirical
//!   law of the count against the Poisson reference and the bound.

pub mod bounds;
pub mod count;
pub mod error;
pub mod models;
pub mod montecarlo;
pub mod motif;
pub mod poisson;
mod ratio_serde;

pub use bounds::{
    bound_graphon, bound_independent_edges, bound_independent_edges_with_mu, bound_nu,
    bound_sbm, bound_scaled, lambda_value, mu_graphon, mu_sbm, rate_exponent, BoundReport,
    BoundTerms, BoundVariant, NuKey, NuTable, QuadratureEstimate, ScaledBoundReport,
};
pub use count::{count_copies, count_copies_bruteforce, CopyCount};
pub use error::{BoundError, CountError, Error, ModelError, MotifError};
pub use models::{
    graphon_to_sbm, h_star, sample_graphon, sample_sbm, GraphonSpec, Model, SampledGraph,
    SbmParams,
};
pub use montecarlo::{run, tv_standard_error, SimulationPlan, SimulationSummary};
pub use motif::{AnalyzedMotif, Motif, MotifFamily, MotifStats, MAX_MOTIF_VERTICES};
pub use poisson::{poisson_pmf, poisson_tail, tv_distance_empirical};
