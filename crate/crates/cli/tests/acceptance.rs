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

//! One line per acceptance criterion, `PASS` or `FAIL`, with the offending
//! cases listed on failure. Exits non-zero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use motif_poisson::count::position_indicators;
use motif_poisson::{
    bound_graphon, bound_independent_edges, bound_nu, bound_sbm, count_copies,
    count_copies_bruteforce, graphon_to_sbm, mu_graphon, mu_sbm, rate_exponent, run,
    AnalyzedMotif, GraphonSpec, Model, Motif, MotifFamily, NuTable, SampledGraph, SbmParams,
    SimulationPlan,
};
use num_rational::Rational64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    failures: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome {
            failures: Vec::new(),
            detail: String::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn r(a: i64, b: i64) -> Rational64 {
    Rational64::new(a, b)
}

fn builtin(family: MotifFamily, v: usize) -> AnalyzedMotif {
    AnalyzedMotif::new(Motif::builtin(family, v).unwrap())
}

fn binomial2(v: i64) -> i64 {
    v * (v - 1) / 2
}

/// `(d, alpha, gamma)` as tabulated for the four families.
fn tabulated_stats(family: MotifFamily, v: i64) -> (Rational64, Rational64, Rational64) {
    match family {
        MotifFamily::TreePath => (r(v - 1, v), r(1, 1), r(1, v)),
        MotifFamily::Cycle => (r(1, 1), r(v - 1, v - 2), r(1, 1)),
        MotifFamily::AlmostComplete => (
            r((v + 1) * (v - 2), 2 * v),
            r(v * v - v - 4, 2 * (v - 2)),
            if v == 3 { r(1, 3) } else { r((v + 1) * (v - 2), 2) - (binomial2(v) - 2) },
        ),
        MotifFamily::Complete => (r(v - 1, 2), r(v + 1, 2), r(binomial2(v), 1) - (binomial2(v) - 1)),
    }
}

fn tabulated_rate(family: MotifFamily, v: i64) -> Rational64 {
    match family {
        MotifFamily::TreePath => r(1, v - 1),
        MotifFamily::Cycle => r(1, 1),
        MotifFamily::AlmostComplete if v == 3 => r(1, 2),
        MotifFamily::AlmostComplete | MotifFamily::Complete => r(2, v - 1),
    }
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    for family in MotifFamily::ALL {
        for v in 3..=7 {
            let s = builtin(family, v).stats;
            let want = tabulated_stats(family, v as i64);
            let got = (s.density, s.alpha, s.gamma);
            out.check(got == want, || {
                format!("{family}:{v} got (d, alpha, gamma) = ({}, {}, {}), table ({}, {}, {})",
                    got.0, got.1, got.2, want.0, want.1, want.2)
            });
        }
    }
    out.detail = "20 cells, exact rationals".into();
    out
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new();
    let mut worst: f64 = 0.0;
    for family in MotifFamily::ALL {
        for v in 3..=7 {
            let m = builtin(family, v);
            let want = tabulated_rate(family, v as i64);
            let got = rate_exponent(&m).unwrap();
            out.check(got == want, || format!("{family}:{v} rate {got}, table {want}"));
            let d = m.stats.density.to_f64().unwrap();
            let at = |n: usize| {
                let p = (n as f64).powf(-1.0 / d);
                bound_sbm(&SbmParams::erdos_renyi(p).unwrap(), &m, n).unwrap().bound
            };
            let slope = (at(1_000_000) / at(10_000_000)).log10();
            let gap = (slope - want.to_f64().unwrap()).abs();
            worst = worst.max(gap);
            out.check(gap <= 0.05, || {
                format!("{family}:{v} slope {slope:.4} vs table {want} (computed rate {got})")
            });
        }
    }
    out.detail = format!("20 cells, largest slope gap {worst:.4}");
    out
}

fn random_motif(rng: &mut ChaCha8Rng, max_v: usize) -> Motif {
    loop {
        let v = rng.random_range(3..=max_v);
        let density = rng.random_range(0.3..1.0);
        let edges: Vec<(usize, usize)> = (0..v)
            .flat_map(|a| (a + 1..v).map(move |b| (a, b)))
            .filter(|_| rng.random_bool(density))
            .collect();
        if let Ok(m) = Motif::from_edges(&edges) {
            return m;
        }
    }
}

fn random_model(rng: &mut ChaCha8Rng) -> Model {
    match rng.random_range(0..4) {
        0 => SbmParams::erdos_renyi(rng.random_range(0.2..0.9)).unwrap().into(),
        1 => {
            let a = rng.random_range(0.1..0.9);
            let (x, y, z) = (
                rng.random_range(0.3..1.0),
                rng.random_range(0.0..0.6),
                rng.random_range(0.3..1.0),
            );
            let pi = vec![vec![x, y], vec![y, z]];
            SbmParams::new(vec![a, 1.0 - a], pi).unwrap().into()
        }
        2 => GraphonSpec::product(rng.random_range(0.5..1.0)).unwrap().into(),
        _ => GraphonSpec::affine_mean(rng.random_range(0.5..1.0)).unwrap().into(),
    }
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut total = 0u64;
    for case in 0..200u64 {
        let m = random_motif(&mut rng, 5);
        let n = rng.random_range(m.vertex_count().max(5)..=12);
        let g = random_model(&mut rng).sample(n, 1000 + case, 0).unwrap();
        let fast = count_copies(&g, &m).unwrap();
        let oracle = count_copies_bruteforce(&g, &m).unwrap();
        total += fast.count;
        out.check(fast == oracle, || format!("case {case}: {fast:?} vs oracle {oracle:?} for {m}"));
    }
    out.detail = format!("200 instances, {total} copies in total");
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    let product = GraphonSpec::product(1.0).unwrap();
    let mut worst: f64 = 0.0;
    for spec in ["complete:3", "tree:3", "cycle:4", "complete:4"] {
        let m = Motif::parse_builtin(spec).unwrap();
        let exact: f64 = m.degrees().iter().map(|&d| 1.0 / (d as f64 + 1.0)).product();
        let got = mu_graphon(&product, &m, 64).unwrap().value;
        worst = worst.max((got - exact).abs());
        out.check((got - exact).abs() <= 1e-6, || format!("{spec}: {got} vs {exact}"));
    }
    let p = 0.37;
    let single = GraphonSpec::piecewise_constant(vec![0.0, 1.0], vec![vec![p]]).unwrap();
    let two = GraphonSpec::piecewise_constant(
        vec![0.0, 0.35, 1.0],
        vec![vec![0.3, 0.05], vec![0.05, 0.6]],
    )
    .unwrap();
    for spec in ["complete:3", "cycle:4", "almost_complete:5"] {
        let m = Motif::parse_builtin(spec).unwrap();
        let got = mu_graphon(&single, &m, 2).unwrap().value;
        let exact = p.powi(m.edge_count() as i32);
        out.check(got == exact, || format!("single block {spec}: {got} vs {exact}"));
        let got = mu_graphon(&two, &m, 2).unwrap().value;
        let exact = mu_sbm(&graphon_to_sbm(&two).unwrap(), &m).unwrap();
        out.check(got == exact, || format!("two blocks {spec}: {got} vs {exact}"));
    }
    out.detail = format!("largest quadrature error {worst:.2e}");
    out
}

fn rel_close(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let balanced: Vec<AnalyzedMotif> = MotifFamily::ALL
        .iter()
        .flat_map(|&f| (3..=7).map(move |v| builtin(f, v)))
        .filter(|m| m.stats.strictly_balanced)
        .collect();
    for case in 0..50 {
        let m = &balanced[rng.random_range(0..balanced.len())];
        let p: f64 = rng.random_range(0.0..1.0);
        let n = rng.random_range(m.vertex_count()..10_000);
        let sbm = bound_sbm(&SbmParams::erdos_renyi(p).unwrap(), m, n).unwrap();
        let ind = bound_independent_edges(m, n, p).unwrap();
        let table = NuTable::power_family(m, p).unwrap();
        let nu = bound_nu(m, n, 1, sbm.mu, &table).unwrap();
        let single = GraphonSpec::piecewise_constant(vec![0.0, 1.0], vec![vec![p]]).unwrap();
        let graphon = bound_graphon(&single, m, n, 64).unwrap();
        let label = || format!("case {case} ({}, p={p}, n={n})", m.motif);
        out.check(rel_close(sbm.bound, ind.bound), || format!("{}: sbm vs independent", label()));
        out.check(rel_close(sbm.bound, nu.bound), || format!("{}: sbm vs nu", label()));
        out.check(rel_close(graphon.lambda, sbm.lambda), || format!("{}: graphon lambda", label()));
        out.check(rel_close(graphon.bound, 2.0 * sbm.bound), || format!("{}: graphon vs 2x", label()));
        out.check(rel_close(graphon.bracket, sbm.bracket), || format!("{}: brackets", label()));
    }
    out.detail = "50 triples, relative tolerance 1e-12".into();
    out
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    let n = 100;
    let c: f64 = 1.68;
    let scenarios: Vec<(&str, Model, &str)> = vec![
        (
            "triangle, two-class block model",
            SbmParams::new(vec![0.5, 0.5], vec![vec![0.03, 0.01], vec![0.01, 0.03]]).unwrap().into(),
            "complete:3",
        ),
        (
            "4-cycle, p = c/n",
            SbmParams::erdos_renyi(c / n as f64).unwrap().into(),
            "cycle:4",
        ),
        (
            "triangle, two-block graphon",
            GraphonSpec::piecewise_constant(
                vec![0.0, 0.4, 1.0],
                vec![vec![0.04, 0.01], vec![0.01, 0.02]],
            )
            .unwrap()
            .into(),
            "complete:3",
        ),
    ];
    let mut notes = Vec::new();
    for (i, (name, model, motif)) in scenarios.into_iter().enumerate() {
        let plan = SimulationPlan::new(model, Motif::parse_builtin(motif).unwrap(), n, 10_000, 600 + i as u64);
        let s = run(&plan).unwrap();
        let bound = s.theoretical_bound.unwrap();
        let band = 3.0 * (s.sample_variance / s.replicates as f64).sqrt();
        notes.push(format!(
            "{name}: lambda {:.3}, mean {:.3}, tv {:.4} +- {:.4}, bound {:.3}",
            s.lambda, s.sample_mean, s.empirical_tv, s.tv_standard_error, bound
        ));
        out.check((0.5..=3.0).contains(&s.lambda), || format!("{name}: lambda {} outside [0.5, 3]", s.lambda));
        out.check(s.empirical_tv <= bound + 3.0 * s.tv_standard_error, || {
            format!("{name}: tv {} exceeds bound {} + 3 se", s.empirical_tv, bound)
        });
        out.check((s.sample_mean - s.lambda).abs() <= band, || {
            format!("{name}: mean {} vs lambda {}", s.sample_mean, s.lambda)
        });
    }
    out.detail = notes.join("; ");
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    let g = SampledGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let p3 = Motif::from_edges(&[(0, 1), (1, 2)]).unwrap();
    // Host vertices 1, 2, 3 are 0, 1, 2 here; copies are listed by the
    // relabelled centre vertex, giving centres 1, 2, 3 in turn.
    let indicators = position_indicators(&g, &p3, &[0, 1, 2]);
    let mut by_centre: Vec<(usize, bool)> = indicators
        .iter()
        .map(|(edges, present)| {
            let centre = [0, 1, 2]
                .into_iter()
                .find(|&x| edges.iter().filter(|&&(a, b)| a == x || b == x).count() == 2)
                .unwrap();
            (centre, *present)
        })
        .collect();
    by_centre.sort_unstable();
    let values: Vec<u8> = by_centre.iter().map(|&(_, x)| x as u8).collect();
    out.check(values == [0, 1, 0], || format!("indicators {values:?}"));
    let w = count_copies(&g, &p3).unwrap().count;
    out.check(w == 4, || format!("count {w}"));
    out.detail = format!("indicators {values:?}, W = {w}");
    out
}

fn simulate_json(threads: usize) -> Vec<u8> {
    let output = Command::new(env!("CARGO_BIN_EXE_motif-poisson"))
        .args([
            "simulate",
            "--model",
            r#"{"Q": 2, "f": [0.5, 0.5], "pi": [[0.05, 0.02], [0.02, 0.05]]}"#,
            "--motif",
            "complete:3",
            "--n",
            "60",
            "--replicates",
            "2000",
            "--seed",
            "8",
            "--threads",
            &threads.to_string(),
        ])
        .output()
        .expect("binary runs");
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    output.stdout
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    let runs: Vec<Vec<u8>> = [1, 1, 1, 4].into_iter().map(simulate_json).collect();
    for (i, run) in runs.iter().enumerate().skip(1) {
        out.check(run == &runs[0], || format!("run {i} differs from run 0"));
    }
    out.detail = format!("{} bytes, 3 runs at 1 thread and 1 at 4", runs[0].len());
    out
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 motif invariants table", criterion_1, Duration::from_secs(1)),
        ("2 rate exponents and bound slopes", criterion_2, Duration::from_secs(1)),
        ("3 counter vs brute-force oracle", criterion_3, Duration::from_secs(120)),
        ("4 product graphon occurrence probability", criterion_4, Duration::from_secs(30)),
        ("5 consistency across bound variants", criterion_5, Duration::from_secs(10)),
        ("6 empirical soundness", criterion_6, Duration::from_secs(600)),
        ("7 four-cycle worked example", criterion_7, Duration::from_secs(1)),
        ("8 simulation determinism", criterion_8, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if elapsed > budget {
            outcome.failures.push(format!("took {elapsed:.2?}, budget {budget:?}"));
        }
        let status = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("{status} criterion {name} [{elapsed:.2?}] {}", outcome.detail);
        for f in &outcome.failures {
            println!("    {f}");
        }
        failed += !outcome.failures.is_empty() as usize;
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
