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

//! Exact copy counting.
//!
//! A copy of the motif is an edge subset of the host graph isomorphic to it;
//! extra edges among the image vertices are allowed. The fast counter
//! enumerates injective homomorphisms by backtracking and divides by the
//! automorphism count. The brute-force counter walks vertex subsets and
//! labelled copies directly and exists as an oracle.

use serde::Serialize;

use crate::error::CountError;
use crate::models::SampledGraph;
use crate::motif::{pair_index, Motif};

/// Vertex limit for [`count_copies_bruteforce`].
pub const ORACLE_MAX_VERTICES: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CopyCount {
    /// Number of copies `W`.
    pub count: u64,
    /// Injective homomorphisms, `count * automorphisms`.
    pub injections: u64,
}

/// Order in which motif vertices are mapped, with the earlier-mapped
/// neighbours of each.
struct SearchPlan {
    order: Vec<usize>,
    parents: Vec<Vec<usize>>,
}

impl SearchPlan {
    // Greedy: next vertex has the most already-ordered neighbours, ties broken
    // by degree then label. A vertex with none starts a new component.
    fn new(m: &Motif) -> SearchPlan {
        let v = m.vertex_count();
        let mut placed = vec![false; v];
        let mut position = vec![usize::MAX; v];
        let mut order = Vec::with_capacity(v);
        for _ in 0..v {
            let next = (0..v)
                .filter(|&u| !placed[u])
                .max_by_key(|&u| {
                    let linked = (0..v).filter(|&w| placed[w] && m.has_edge(u, w)).count();
                    (linked, m.degree(u), std::cmp::Reverse(u))
                })
                .unwrap();
            placed[next] = true;
            position[next] = order.len();
            order.push(next);
        }
        let parents = order
            .iter()
            .enumerate()
            .map(|(depth, &u)| {
                order[..depth]
                    .iter()
                    .filter(|&&w| m.has_edge(u, w))
                    .map(|&w| position[w])
                    .collect()
            })
            .collect();
        SearchPlan { order, parents }
    }
}

/// Counts copies of `m` in `g`.
pub fn count_copies(g: &SampledGraph, m: &Motif) -> Result<CopyCount, CountError> {
    let v = m.vertex_count();
    if g.n() < v {
        return Err(CountError::MotifLargerThanGraph { motif: v, graph: g.n() });
    }
    let plan = SearchPlan::new(m);
    let words = g.words();
    let mut all = vec![0u64; words];
    for u in 0..g.n() {
        all[u / 64] |= 1 << (u % 64);
    }
    let mut image = vec![0usize; v];
    let mut used = vec![0u64; words];
    let mut scratch = vec![vec![0u64; words]; v];
    let injections = extend(g, &plan, &all, 0, &mut image, &mut used, &mut scratch);
    let automorphisms = m.automorphism_count();
    debug_assert_eq!(injections % automorphisms, 0);
    Ok(CopyCount {
        count: injections / automorphisms,
        injections,
    })
}

fn extend(
    g: &SampledGraph,
    plan: &SearchPlan,
    all: &[u64],
    depth: usize,
    image: &mut [usize],
    used: &mut [u64],
    scratch: &mut [Vec<u64>],
) -> u64 {
    let (cand, rest) = scratch.split_first_mut().unwrap();
    let parents = &plan.parents[depth];
    match parents.split_first() {
        None => {
            for ((c, a), u) in cand.iter_mut().zip(all).zip(used.iter()) {
                *c = a & !u;
            }
        }
        Some((&first, others)) => {
            for ((c, r), u) in cand.iter_mut().zip(g.row(image[first])).zip(used.iter()) {
                *c = r & !u;
            }
            for &p in others {
                for (c, r) in cand.iter_mut().zip(g.row(image[p])) {
                    *c &= r;
                }
            }
        }
    }
    if depth + 1 == plan.order.len() {
        return cand.iter().map(|w| w.count_ones() as u64).sum();
    }
    let mut total = 0;
    for (w, &word) in cand.iter().enumerate() {
        let mut word = word;
        while word != 0 {
            let bit = word.trailing_zeros() as usize;
            word &= word - 1;
            let target = w * 64 + bit;
            image[depth] = target;
            used[w] |= 1 << bit;
            total += extend(g, plan, all, depth + 1, image, used, rest);
            used[w] &= !(1 << bit);
        }
    }
    total
}

/// Sums the copy indicators over every vertex subset and every labelled copy
/// on it. Limited to graphs with at most [`ORACLE_MAX_VERTICES`] vertices.
pub fn count_copies_bruteforce(g: &SampledGraph, m: &Motif) -> Result<CopyCount, CountError> {
    let v = m.vertex_count();
    let n = g.n();
    if n > ORACLE_MAX_VERTICES {
        return Err(CountError::GraphTooLargeForOracle { n, max: ORACLE_MAX_VERTICES });
    }
    if n < v {
        return Err(CountError::MotifLargerThanGraph { motif: v, graph: n });
    }
    let copies = m.labelled_copies();
    let slot_pairs: Vec<(usize, usize)> =
        (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
    let mut count = 0u64;
    for_each_subset(n, v, |subset| {
        let mut present = 0u64;
        for &(a, b) in &slot_pairs {
            if g.has_edge(subset[a], subset[b]) {
                present |= 1 << pair_index(v, a, b);
            }
        }
        count += copies.iter().filter(|&&c| c & !present == 0).count() as u64;
    });
    Ok(CopyCount {
        count,
        injections: count * m.automorphism_count(),
    })
}

/// The indicator of every labelled copy of `m` placed on the vertex tuple
/// `position`, each reported with its edges in host labels.
pub fn position_indicators(
    g: &SampledGraph,
    m: &Motif,
    position: &[usize],
) -> Vec<(Vec<(usize, usize)>, bool)> {
    let v = m.vertex_count();
    assert_eq!(position.len(), v, "position must name one host vertex per motif vertex");
    let slot_pairs: Vec<(usize, usize)> =
        (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
    m.labelled_copies()
        .into_iter()
        .map(|mask| {
            let edges: Vec<(usize, usize)> = slot_pairs
                .iter()
                .filter(|&&(a, b)| mask >> pair_index(v, a, b) & 1 == 1)
                .map(|&(a, b)| {
                    let (x, y) = (position[a], position[b]);
                    (x.min(y), x.max(y))
                })
                .collect();
            let present = edges.iter().all(|&(x, y)| g.has_edge(x, y));
            (edges, present)
        })
        .collect()
}

fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        visit(&subset);
        let Some(i) = (0..k).rev().find(|&i| subset[i] != i + n - k) else {
            return;
        };
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
}
