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

#![allow(dead_code)]

use motif_poisson::{Motif, SampledGraph};
use proptest::prelude::*;

/// Random valid motif on at most `max_v` vertices: each pair is kept with
/// the drawn mask bit, then isolated vertices are dropped by renumbering.
pub fn motif_strategy(max_v: usize) -> impl Strategy<Value = Motif> {
    (3..=max_v)
        .prop_flat_map(|v| {
            let pairs = v * (v - 1) / 2;
            (Just(v), proptest::collection::vec(any::<bool>(), pairs))
        })
        .prop_filter_map("needs two edges", |(v, keep)| {
            let mut edges = Vec::new();
            let mut idx = 0;
            for a in 0..v {
                for b in a + 1..v {
                    if keep[idx] {
                        edges.push((a, b));
                    }
                    idx += 1;
                }
            }
            Motif::from_edges(&edges).ok()
        })
}

pub fn graph_strategy(max_n: usize) -> impl Strategy<Value = SampledGraph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), proptest::collection::vec(0.0..1.0f64, pairs), 0.0..1.0f64)
        })
        .prop_map(|(n, draws, p)| {
            let mut g = SampledGraph::empty(n);
            let mut idx = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if draws[idx] < p {
                        g.add_edge(a, b);
                    }
                    idx += 1;
                }
            }
            g
        })
}

pub fn permutation_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}
