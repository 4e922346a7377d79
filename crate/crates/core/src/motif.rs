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

//! The fixed motif and its exact graph invariants.
//!
//! Densities and the subgraph minima are kept as exact rationals so that
//! ties and strict inequalities (strict balance in particular) are decided
//! exactly. Floats only appear once a bound is evaluated.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::MotifError;
use crate::ratio_serde;

/// Largest supported motif. Automorphisms are enumerated over all vertex
/// permutations, so this also caps that search at 10! leaves.
pub const MAX_MOTIF_VERTICES: usize = 10;

/// The four builtin motif families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MotifFamily {
    /// The path on `v` vertices, standing in for any tree on `v` vertices.
    TreePath,
    Cycle,
    /// The complete graph with the edge `{0, 1}` removed.
    AlmostComplete,
    Complete,
}

impl MotifFamily {
    pub const ALL: [MotifFamily; 4] = [
        MotifFamily::TreePath,
        MotifFamily::Cycle,
        MotifFamily::AlmostComplete,
        MotifFamily::Complete,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MotifFamily::TreePath => "tree",
            MotifFamily::Cycle => "cycle",
            MotifFamily::AlmostComplete => "almost_complete",
            MotifFamily::Complete => "complete",
        }
    }
}

impl fmt::Display for MotifFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MotifFamily {
    type Err = MotifError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "tree" | "tree_path" | "path" => Ok(MotifFamily::TreePath),
            "cycle" => Ok(MotifFamily::Cycle),
            "almost_complete" => Ok(MotifFamily::AlmostComplete),
            "complete" => Ok(MotifFamily::Complete),
            other => Err(MotifError::UnknownFamily(other.to_string())),
        }
    }
}

/// A small simple graph with no isolated vertices and at least two edges.
///
/// Vertices are `0..vertex_count`; edges are stored sorted with the smaller
/// endpoint first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Motif {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adjacency: Vec<u16>,
}

impl Motif {
    /// Builds a motif from an edge list, renumbering the touched vertices
    /// densely in increasing label order.
    pub fn from_edges(edges: &[(usize, usize)]) -> Result<Motif, MotifError> {
        if edges.is_empty() {
            return Err(MotifError::EmptyEdgeSet);
        }
        let mut labels: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        labels.sort_unstable();
        labels.dedup();
        let renumbered: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| {
                let a = labels.binary_search(&a).unwrap();
                let b = labels.binary_search(&b).unwrap();
                (a, b)
            })
            .collect();
        Motif::with_vertex_count(labels.len(), &renumbered)
    }

    /// Builds a motif on exactly `vertex_count` vertices without renumbering.
    pub fn with_vertex_count(
        vertex_count: usize,
        edges: &[(usize, usize)],
    ) -> Result<Motif, MotifError> {
        if edges.is_empty() {
            return Err(MotifError::EmptyEdgeSet);
        }
        let mut canonical = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(MotifError::SelfLoop(a));
            }
            if a >= vertex_count || b >= vertex_count {
                return Err(MotifError::VertexOutOfRange(a, b, vertex_count));
            }
            canonical.push((a.min(b), a.max(b)));
        }
        canonical.sort_unstable();
        if let Some(w) = canonical.windows(2).find(|w| w[0] == w[1]) {
            return Err(MotifError::DuplicateEdge(w[0].0, w[0].1));
        }
        if vertex_count > MAX_MOTIF_VERTICES {
            return Err(MotifError::TooLarge(vertex_count));
        }
        let mut adjacency = vec![0u16; vertex_count];
        for &(a, b) in &canonical {
            adjacency[a] |= 1 << b;
            adjacency[b] |= 1 << a;
        }
        if let Some(isolated) = adjacency.iter().position(|&row| row == 0) {
            return Err(MotifError::IsolatedVertex(isolated));
        }
        if canonical.len() < 2 {
            return Err(MotifError::SingleEdge(canonical.len()));
        }
        Ok(Motif {
            vertex_count,
            edges: canonical,
            adjacency,
        })
    }

    pub fn builtin(family: MotifFamily, v: usize) -> Result<Motif, MotifError> {
        if v < 3 {
            return Err(MotifError::TooSmall(v));
        }
        if v > MAX_MOTIF_VERTICES {
            return Err(MotifError::TooLarge(v));
        }
        let edges: Vec<(usize, usize)> = match family {
            MotifFamily::TreePath => (0..v - 1).map(|i| (i, i + 1)).collect(),
            MotifFamily::Cycle => (0..v).map(|i| (i, (i + 1) % v)).collect(),
            MotifFamily::AlmostComplete => complete_pairs(v).filter(|&e| e != (0, 1)).collect(),
            MotifFamily::Complete => complete_pairs(v).collect(),
        };
        Motif::with_vertex_count(v, &edges)
    }

    /// Parses the text format: one `u v` edge per line, `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Motif, MotifError> {
        let edges = parse_edge_lines(text).map_err(MotifError::Parse)?;
        Motif::from_edges(&edges)
    }

    /// Parses a builtin reference such as `cycle:5`.
    pub fn parse_builtin(spec: &str) -> Result<Motif, MotifError> {
        let (family, v) = spec
            .split_once(':')
            .ok_or_else(|| MotifError::Parse(format!("expected family:v, got {spec:?}")))?;
        let family: MotifFamily = family.parse()?;
        let v: usize = v
            .trim()
            .parse()
            .map_err(|_| MotifError::Parse(format!("bad vertex count in {spec:?}")))?;
        Motif::builtin(family, v)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbourhood of `u` as a bitmask over motif vertices.
    pub fn neighbours(&self, u: usize) -> u16 {
        self.adjacency[u]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a] >> b & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count).map(|u| self.degree(u)).collect()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = 1u16;
        let mut frontier = 1u16;
        while frontier != 0 {
            let mut next = 0u16;
            for u in bits(frontier) {
                next |= self.adjacency[u];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == self.vertex_count
    }

    /// The motif with vertex `u` renamed to `perm[u]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Motif, MotifError> {
        let edges: Vec<(usize, usize)> =
            self.edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        Motif::with_vertex_count(self.vertex_count, &edges)
    }

    pub fn to_edge_list_text(&self) -> String {
        self.edges.iter().map(|(a, b)| format!("{a} {b}\n")).collect()
    }

    /// Number of vertex permutations mapping the edge set onto itself.
    pub fn automorphism_count(&self) -> u64 {
        let v = self.vertex_count;
        let mut image = vec![0usize; v];
        self.extend_automorphism(0, 0, &mut image)
    }

    fn extend_automorphism(&self, depth: usize, used: u16, image: &mut [usize]) -> u64 {
        if depth == self.vertex_count {
            return 1;
        }
        let mut total = 0;
        for cand in 0..self.vertex_count {
            if used >> cand & 1 == 1 || self.degree(cand) != self.degree(depth) {
                continue;
            }
            let consistent = (0..depth).all(|j| self.has_edge(depth, j) == self.has_edge(cand, image[j]));
            if consistent {
                image[depth] = cand;
                total += self.extend_automorphism(depth + 1, used | 1 << cand, image);
            }
        }
        total
    }

    /// Every distinct edge set on the slots `0..v` that is isomorphic to the
    /// motif, as bitmasks over [`pair_index`]. Its length is `rho`.
    pub fn labelled_copies(&self) -> Vec<u64> {
        let v = self.vertex_count;
        let mut perm: Vec<usize> = (0..v).collect();
        let mut seen = HashSet::new();
        // Heap's algorithm over all v! relabellings.
        let mut counters = vec![0usize; v];
        seen.insert(self.edge_mask(&perm));
        let mut i = 0;
        while i < v {
            if counters[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(counters[i], i);
                }
                seen.insert(self.edge_mask(&perm));
                counters[i] += 1;
                i = 0;
            } else {
                counters[i] = 0;
                i += 1;
            }
        }
        let mut copies: Vec<u64> = seen.into_iter().collect();
        copies.sort_unstable();
        copies
    }

    fn edge_mask(&self, perm: &[usize]) -> u64 {
        self.edges
            .iter()
            .fold(0u64, |mask, &(a, b)| mask | 1 << pair_index(self.vertex_count, perm[a], perm[b]))
    }

    /// `C(n, v) * rho`, the number of copies in the complete graph `K_n`.
    pub fn max_copy_capacity(&self, n: usize) -> Result<u64, MotifError> {
        let positions = binomial_u64(n as u64, self.vertex_count as u64)
            .ok_or(MotifError::Overflow("binomial coefficient"))?;
        positions
            .checked_mul(self.stats().rho)
            .ok_or(MotifError::Overflow("copy capacity"))
    }

    pub fn stats(&self) -> MotifStats {
        MotifStats::compute(self)
    }
}

impl fmt::Display for Motif {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v={} e={} [", self.vertex_count, self.edges.len())?;
        for (i, (a, b)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}-{b}")?;
        }
        f.write_str("]")
    }
}

/// Position of the pair `{a, b}` in the lexicographic list of all pairs of
/// `0..v`.
pub fn pair_index(v: usize, a: usize, b: usize) -> usize {
    let (a, b) = (a.min(b), a.max(b));
    a * (2 * v - a - 1) / 2 + (b - a - 1)
}

fn complete_pairs(v: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..v).flat_map(move |a| (a + 1..v).map(move |b| (a, b)))
}

fn bits(mut mask: u16) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

pub(crate) fn parse_edge_lines(text: &str) -> Result<Vec<(usize, usize)>, String> {
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let mut next = || -> Result<usize, String> {
            fields
                .next()
                .ok_or_else(|| format!("line {}: expected two vertex labels", lineno + 1))?
                .parse()
                .map_err(|_| format!("line {}: bad vertex label in {line:?}", lineno + 1))
        };
        let (a, b) = (next()?, next()?);
        if fields.next().is_some() {
            return Err(format!("line {}: trailing fields in {line:?}", lineno + 1));
        }
        edges.push((a, b));
    }
    Ok(edges)
}

pub(crate) fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Exact invariants of a motif.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MotifStats {
    pub vertex_count: usize,
    pub edge_count: usize,
    /// `e / v`.
    #[serde(with = "ratio_serde")]
    pub density: Rational64,
    /// Minimum of `(e - e(H)) / (v - v(H))` over proper subgraphs `H` with
    /// fewer vertices.
    #[serde(with = "ratio_serde")]
    pub alpha: Rational64,
    /// Minimum of `d * v(H) - e(H)` over proper subgraphs `H`.
    #[serde(with = "ratio_serde")]
    pub gamma: Rational64,
    /// Densest proper subgraph, used for the strict-balance test.
    #[serde(with = "ratio_serde")]
    pub max_subgraph_density: Rational64,
    pub automorphism_count: u64,
    /// `v! / a`, the number of copies on a fixed vertex set.
    pub rho: u64,
    pub strictly_balanced: bool,
    /// Overlap exponent for `s = 2..v-1`.
    #[serde(serialize_with = "ratio_serde::map::serialize")]
    pub kappa: BTreeMap<usize, Rational64>,
    pub degrees: Vec<usize>,
}

impl MotifStats {
    // Subgraphs without isolated vertices are parameterised by their vertex
    // set S; the best H on S for both minima (and for the density maximum) is
    // the induced subgraph G[S], which qualifies when it has no isolated
    // vertex. Proper spanning subgraphs have v(H) = v and contribute
    // `d*v - e(H) >= 1`, with equality iff some edge can be dropped without
    // isolating an endpoint.
    fn compute(motif: &Motif) -> MotifStats {
        let v = motif.vertex_count;
        let e = motif.edge_count();
        let density = Rational64::new(e as i64, v as i64);
        let full: u16 = ((1u32 << v) - 1) as u16;

        let mut alpha: Option<Rational64> = None;
        let mut gamma: Option<Rational64> = None;
        let mut max_density = Rational64::from_integer(0);
        let keep_min = |slot: &mut Option<Rational64>, x: Rational64| {
            if slot.is_none_or(|cur| x < cur) {
                *slot = Some(x);
            }
        };

        for mask in 1..full {
            let k = mask.count_ones() as usize;
            if k < 2 {
                continue;
            }
            let mut degree_sum = 0u32;
            let mut isolated = false;
            for u in bits(mask) {
                let d = (motif.adjacency[u] & mask).count_ones();
                isolated |= d == 0;
                degree_sum += d;
            }
            if isolated {
                continue;
            }
            let induced = (degree_sum / 2) as i64;
            let (k, vi, ei) = (k as i64, v as i64, e as i64);
            keep_min(&mut alpha, Rational64::new(ei - induced, vi - k));
            keep_min(&mut gamma, density * k - induced);
            max_density = max_density.max(Rational64::new(induced, k));
        }
        let droppable = motif
            .edges
            .iter()
            .any(|&(a, b)| motif.degree(a) >= 2 && motif.degree(b) >= 2);
        if droppable {
            keep_min(&mut gamma, Rational64::from_integer(1));
            max_density = max_density.max(Rational64::new(e as i64 - 1, v as i64));
        }

        // A single edge is always a proper subgraph on 2 < v vertices.
        let alpha = alpha.expect("motif has a proper subgraph");
        let gamma = gamma.expect("motif has a proper subgraph");
        let kappa = (2..v)
            .map(|s| (s, kappa_value(e, v, s, density, alpha, gamma)))
            .collect();

        let automorphism_count = motif.automorphism_count();
        let rho = factorial(v) / automorphism_count;
        MotifStats {
            vertex_count: v,
            edge_count: e,
            density,
            alpha,
            gamma,
            max_subgraph_density: max_density,
            automorphism_count,
            rho,
            strictly_balanced: max_density < density,
            kappa,
            degrees: motif.degrees(),
        }
    }
}

/// `max(e - s*d + gamma, (v - s) * alpha)`.
pub fn kappa_value(
    e: usize,
    v: usize,
    s: usize,
    density: Rational64,
    alpha: Rational64,
    gamma: Rational64,
) -> Rational64 {
    let left = Rational64::from_integer(e as i64) - density * s as i64 + gamma;
    let right = alpha * (v as i64 - s as i64);
    left.max(right)
}

pub(crate) fn factorial(v: usize) -> u64 {
    (1..=v as u64).product()
}

/// A motif together with its precomputed invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalyzedMotif {
    pub motif: Motif,
    pub stats: MotifStats,
}

impl AnalyzedMotif {
    pub fn new(motif: Motif) -> AnalyzedMotif {
        let stats = motif.stats();
        AnalyzedMotif { motif, stats }
    }

    pub fn vertex_count(&self) -> usize {
        self.motif.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.motif.edge_count()
    }
}

impl From<Motif> for AnalyzedMotif {
    fn from(motif: Motif) -> Self {
        AnalyzedMotif::new(motif)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn path_from_edge_list() {
        let p3 = Motif::from_edges(&[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.vertex_count(), 3);
        assert_eq!(p3.edge_count(), 2);
    }

    #[test]
    fn labels_are_renumbered_densely() {
        let m = Motif::from_edges(&[(10, 4), (4, 7)]).unwrap();
        assert_eq!(m.vertex_count(), 3);
        assert_eq!(m.edges(), &[(0, 1), (0, 2)]);
    }

    #[test]
    fn rejects_invalid_edge_lists() {
        assert_eq!(Motif::from_edges(&[]), Err(MotifError::EmptyEdgeSet));
        assert_eq!(Motif::from_edges(&[(0, 1)]), Err(MotifError::SingleEdge(1)));
        assert_eq!(Motif::from_edges(&[(0, 0), (0, 1)]), Err(MotifError::SelfLoop(0)));
        assert_eq!(
            Motif::from_edges(&[(0, 1), (1, 0)]),
            Err(MotifError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Motif::with_vertex_count(4, &[(0, 1), (1, 2)]),
            Err(MotifError::IsolatedVertex(3))
        );
        let big: Vec<_> = (0..11).map(|i| (i, i + 1)).collect();
        assert_eq!(Motif::from_edges(&big), Err(MotifError::TooLarge(12)));
    }

    #[test]
    fn builtin_shapes() {
        let k3 = Motif::from_edges(&[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(Motif::builtin(MotifFamily::Cycle, 3).unwrap(), k3);
        assert_eq!(Motif::builtin(MotifFamily::Complete, 3).unwrap(), k3);
        assert_eq!(Motif::builtin(MotifFamily::Complete, 4).unwrap().edge_count(), 6);
        assert_eq!(Motif::builtin(MotifFamily::AlmostComplete, 4).unwrap().edge_count(), 5);
        assert_eq!(Motif::builtin(MotifFamily::TreePath, 11), Err(MotifError::TooLarge(11)));
        assert_eq!(Motif::builtin(MotifFamily::Cycle, 2), Err(MotifError::TooSmall(2)));
    }

    #[test]
    fn parses_text_and_builtin_specs() {
        let text = "# a path\n0 1\n\n1 2  # trailing comment\n";
        assert_eq!(
            Motif::parse_edge_list(text).unwrap(),
            Motif::builtin(MotifFamily::TreePath, 3).unwrap()
        );
        assert!(Motif::parse_edge_list("0 1 2\n").is_err());
        assert!(Motif::parse_edge_list("0 x\n").is_err());
        assert_eq!(
            Motif::parse_builtin("almost_complete:5").unwrap(),
            Motif::builtin(MotifFamily::AlmostComplete, 5).unwrap()
        );
        assert!(matches!(Motif::parse_builtin("star:4"), Err(MotifError::UnknownFamily(_))));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(Motif::builtin(MotifFamily::Complete, 3).unwrap().automorphism_count(), 6);
        let p3 = Motif::builtin(MotifFamily::TreePath, 3).unwrap();
        assert_eq!(p3.automorphism_count(), 2);
        assert_eq!(p3.stats().rho, 3);
        assert_eq!(Motif::builtin(MotifFamily::Cycle, 4).unwrap().automorphism_count(), 8);
        assert_eq!(
            Motif::builtin(MotifFamily::Complete, 10).unwrap().automorphism_count(),
            3_628_800
        );
    }

    #[test]
    fn labelled_copies_match_rho() {
        for family in MotifFamily::ALL {
            for v in 3..=6 {
                let m = Motif::builtin(family, v).unwrap();
                assert_eq!(m.labelled_copies().len() as u64, m.stats().rho, "{family} {v}");
            }
        }
    }

    #[test]
    fn stats_for_triangle_and_path() {
        let k3 = Motif::builtin(MotifFamily::Complete, 3).unwrap().stats();
        assert_eq!((k3.density, k3.alpha, k3.gamma), (r(1, 1), r(2, 1), r(1, 1)));
        assert_eq!(k3.kappa[&2], r(2, 1));
        let p3 = Motif::builtin(MotifFamily::TreePath, 3).unwrap().stats();
        assert_eq!((p3.density, p3.alpha, p3.gamma), (r(2, 3), r(1, 1), r(1, 3)));
        let ac3 = Motif::builtin(MotifFamily::AlmostComplete, 3).unwrap().stats();
        assert_eq!(ac3.gamma, r(1, 3));
        assert!(k3.strictly_balanced && p3.strictly_balanced);
    }

    #[test]
    fn almost_complete_four_has_triangle_gap() {
        // The triangle inside K4 minus an edge gives 3 * 5/4 - 3.
        let s = Motif::builtin(MotifFamily::AlmostComplete, 4).unwrap().stats();
        assert_eq!(s.gamma, r(3, 4));
        assert_eq!(s.alpha, r(2, 1));
    }

    #[test]
    fn not_strictly_balanced_examples() {
        // Triangle with a pendant edge: the triangle is denser than the whole.
        let m = Motif::from_edges(&[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let s = m.stats();
        assert!(!s.strictly_balanced);
        assert!(s.gamma <= r(0, 1));
        // Two disjoint edges: balanced but not strictly.
        let s = Motif::from_edges(&[(0, 1), (2, 3)]).unwrap().stats();
        assert!(!s.strictly_balanced);
        assert_eq!(s.gamma, r(0, 1));
    }

    #[test]
    fn capacity() {
        let p3 = Motif::builtin(MotifFamily::TreePath, 3).unwrap();
        assert_eq!(p3.max_copy_capacity(4), Ok(12));
        let k3 = Motif::builtin(MotifFamily::Complete, 3).unwrap();
        assert_eq!(k3.max_copy_capacity(3), Ok(1));
        assert_eq!(k3.max_copy_capacity(100), Ok(161_700));
        let c10 = Motif::builtin(MotifFamily::Cycle, 10).unwrap();
        assert_eq!(
            c10.max_copy_capacity(usize::MAX / 2),
            Err(MotifError::Overflow("binomial coefficient"))
        );
    }

    #[test]
    fn pair_index_is_dense() {
        let v = 6;
        let mut seen: Vec<usize> = complete_pairs(v).map(|(a, b)| pair_index(v, a, b)).collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..15).collect::<Vec<_>>());
    }
}
