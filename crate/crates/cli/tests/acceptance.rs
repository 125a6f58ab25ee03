//! Acceptance run: every check prints one PASS/FAIL line with its timing.
//! Mismatches are also written to stderr as JSON oracle reports.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use algraph::autodiff::{record_determinant, Tape};
use algraph::distances::{directed_distances, undirected_negative_distances, DiameterProbe, Extent};
use algraph::engine::{symbolic_nonzero, ZeroVerdict};
use algraph::matching::{allowed_edges, mwpm, second_smallest_pm_weight};
use algraph::shortest_cycle::{shortest_cycle, verify_cycle, CycleWeight, ShortCycleIndex};
use algraph::{Fe, FieldPoly, Graph, Params, PrimeField};
use algraph_oracles::{
    bellman_ford, corpus, floyd_warshall, matching_dp, min_cycle_weight, simple_path_distances,
    vertices_on_cycles_at_most, OracleError, OracleReport, RefGraph,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

struct Criterion {
    id: &'static str,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn to_graph(r: &RefGraph) -> Graph {
    Graph::new(r.n, r.directed, r.edges.iter().copied()).expect("corpus graphs are valid")
}

fn mismatch<A: serde::Serialize, B: serde::Serialize>(instance: String, quantity: &str, oracle: A, subject: B) -> String {
    let rep = OracleReport::new(instance, quantity, oracle, subject);
    eprintln!("{}", rep.to_json_line());
    format!("{} mismatch on {}", rep.quantity, rep.instance)
}

fn expected_cycle(r: &RefGraph) -> CycleWeight {
    match min_cycle_weight(r).expect("instance within enumeration limits") {
        None => CycleWeight::NoCycle,
        Some(w) if w < 0 => CycleWeight::NegativeCycle,
        Some(w) => CycleWeight::Finite(w),
    }
}

fn cycle_json(w: CycleWeight) -> serde_json::Value {
    match w {
        CycleWeight::Finite(x) => x.into(),
        CycleWeight::NoCycle => "none".into(),
        CycleWeight::NegativeCycle => "negative".into(),
    }
}

// ----- modular reference arithmetic -----

const P: u64 = (1 << 61) - 1;

fn mulm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn laplace(m: &[u64], n: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    let mut acc = 0u64;
    for c in 0..n {
        let minor: Vec<u64> =
            (1..n).flat_map(|r| (0..n).filter(move |&k| k != c).map(move |k| (r, k))).map(|(r, k)| m[r * n + k]).collect();
        let t = mulm(m[c], laplace(&minor, n - 1));
        acc = if c % 2 == 0 { (acc + t) % P } else { (acc + P - t) % P };
    }
    acc
}

fn cofactor(m: &[u64], n: usize, r: usize, c: usize) -> u64 {
    let minor: Vec<u64> = (0..n)
        .filter(|&i| i != r)
        .flat_map(|i| (0..n).filter(move |&j| j != c).map(move |j| (i, j)))
        .map(|(i, j)| m[i * n + j])
        .collect();
    let d = laplace(&minor, n - 1);
    if (r + c) % 2 == 0 {
        d
    } else {
        (P - d) % P
    }
}

fn random_tape(rng: &mut ChaCha8Rng, n: usize) -> (Tape, Vec<u64>, Vec<usize>, usize) {
    let f = PrimeField::mersenne61();
    let m: Vec<u64> = (0..n * n).map(|_| rng.gen_range(0..P)).collect();
    let mut tape = Tape::new(f);
    let inputs: Vec<usize> = m.iter().map(|&x| tape.input(f.elem(x))).collect();
    let det = record_determinant(&mut tape, &inputs, n).expect("square input");
    (tape, m, inputs, det)
}

// ----- criteria -----

fn tape_cost() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for k in 0..1000 {
        let n = 1 + k % 8;
        let (tape, _, _, det) = random_tape(&mut rng, n);
        let g = tape.reverse_sweep(det).map_err(|e| format!("tape {k}: {e}"))?;
        let fwd = tape.forward_ops();
        if g.ops > 5 * fwd {
            return Err(format!("tape {k} (n = {n}): reverse {} ops, forward {fwd}", g.ops));
        }
        if fwd > 0 {
            worst = worst.max(g.ops as f64 / fwd as f64);
        }
    }
    Ok(format!("1000 tapes, worst reverse/forward ratio {worst:.2}"))
}

fn tape_gradient() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..200 {
        let n = 1 + k % 6;
        let (tape, m, inputs, det) = random_tape(&mut rng, n);
        if tape.value(det).value() != laplace(&m, n) {
            return Err(mismatch(format!("matrix {k}"), "determinant", laplace(&m, n), tape.value(det).value()));
        }
        let g = tape.reverse_sweep(det).map_err(|e| format!("matrix {k}: {e}"))?;
        for r in 0..n {
            for c in 0..n {
                let got = g.get(inputs[r * n + c]).unwrap_or(Fe::ZERO).value();
                let want = cofactor(&m, n, r, c);
                if got != want {
                    return Err(mismatch(format!("matrix {k} entry ({r},{c})"), "gradient", want, got));
                }
            }
        }
    }
    Ok("200 matrices, every gradient entry equals its cofactor".into())
}

fn directed_cycles() -> Check {
    let mut finite = 0;
    for s in 0..500u64 {
        let n = 2 + (s as usize % 9);
        let density = [0.2, 0.3, 0.45][s as usize % 3];
        let r = corpus::digraph_without_negative_cycle(s, n, density, 4, 0.25);
        let g = to_graph(&r);
        let res = shortest_cycle(&g, &Params::new(3000 + s)).map_err(|e| format!("digraph {s}: {e}"))?;
        let want = expected_cycle(&r);
        if res.weight != want {
            return Err(mismatch(format!("digraph {s}"), "cycle weight", cycle_json(want), cycle_json(res.weight)));
        }
        if let CycleWeight::Finite(w) = res.weight {
            finite += 1;
            let cyc = res.cycle.as_ref().ok_or(format!("digraph {s}: no cycle returned"))?;
            verify_cycle(&g, cyc, w).map_err(|e| format!("digraph {s}: {e}"))?;
        }
    }
    for s in 0..200u64 {
        let n = 3 + (s as usize % 8);
        let r = corpus::digraph_with_negative_cycle(10_000 + s, n, 0.3, 4);
        let oracle_neg = (0..r.n).any(|v| matches!(bellman_ford(&r, v), Err(OracleError::NegativeCycle)));
        let res = shortest_cycle(&to_graph(&r), &Params::new(3500 + s)).map_err(|e| format!("planted {s}: {e}"))?;
        let got_neg = res.weight == CycleWeight::NegativeCycle;
        if oracle_neg != got_neg {
            return Err(mismatch(format!("planted {s}"), "negative cycle", oracle_neg, got_neg));
        }
    }
    Ok(format!("500 digraphs ({finite} with a cycle, all witnesses verified), 200 planted negative cycles"))
}

fn undirected_cycles() -> Check {
    let mut finite = 0;
    let mut negative = 0;
    for s in 0..500u64 {
        let n = 3 + (s as usize % 7);
        let r = if s < 300 {
            corpus::random_graph(s, n, false, 0.45, 5, 0.0)
        } else if s % 4 == 0 {
            corpus::random_graph(s, n, false, 0.4, 3, 0.25)
        } else {
            corpus::undirected_without_negative_cycle(s, n, 0.45, 3, 0.25)
        };
        let g = to_graph(&r);
        let res = shortest_cycle(&g, &Params::new(4000 + s)).map_err(|e| format!("graph {s}: {e}"))?;
        let want = expected_cycle(&r);
        if res.weight != want {
            return Err(mismatch(format!("graph {s}"), "cycle weight", cycle_json(want), cycle_json(res.weight)));
        }
        match res.weight {
            CycleWeight::Finite(w) => {
                finite += 1;
                let cyc = res.cycle.as_ref().ok_or(format!("graph {s}: no cycle returned"))?;
                verify_cycle(&g, cyc, w).map_err(|e| format!("graph {s}: {e}"))?;
            }
            CycleWeight::NegativeCycle => negative += 1,
            CycleWeight::NoCycle => {}
        }
    }
    Ok(format!("300 nonnegative + 200 with negative edges; {finite} cycles verified, {negative} negative"))
}

fn distances_and_diameter() -> Check {
    let probe_check = |g: &Graph, p: &Params, diam: Extent, name: &str| -> Result<(), String> {
        let probe = DiameterProbe::new(g, p).map_err(|e| format!("{name}: {e}"))?;
        let t = probe.threshold();
        if t != diam {
            return Err(mismatch(name.to_string(), "diameter threshold", format!("{diam:?}"), format!("{t:?}")));
        }
        if let Extent::Finite(d) = diam {
            if !probe.at_most(d) || probe.at_most(d - 1) {
                return Err(format!("{name}: probe not sharp at {d}"));
            }
        }
        Ok(())
    };
    for s in 0..300u64 {
        let n = 2 + (s as usize % 9);
        let r = corpus::digraph_without_negative_cycle(s, n, 0.35, 4, 0.2);
        let g = to_graph(&r);
        let p = Params::new(5000 + s);
        let d = directed_distances(&g, &p).map_err(|e| format!("digraph {s}: {e}"))?;
        let want = floyd_warshall(&r).map_err(|e| format!("digraph {s}: {e}"))?;
        if d.dist != want {
            return Err(mismatch(format!("digraph {s}"), "distances", want, &d.dist));
        }
        probe_check(&g, &p, d.diameter(), &format!("digraph {s}"))?;
    }
    for s in 0..150u64 {
        let n = 2 + (s as usize % 6);
        let r = corpus::undirected_without_negative_cycle(s, n, 0.5, 3, 0.3);
        let g = to_graph(&r);
        let p = Params::new(5500 + s);
        let d = undirected_negative_distances(&g, &p).map_err(|e| format!("graph {s}: {e}"))?;
        let want = simple_path_distances(&r).map_err(|e| format!("graph {s}: {e}"))?;
        if d.dist != want {
            return Err(mismatch(format!("graph {s}"), "distances", want, &d.dist));
        }
        probe_check(&g, &p, d.diameter(), &format!("graph {s}"))?;
    }
    Ok("300 digraphs vs Floyd-Warshall, 150 split-graph instances vs simple paths, all diameter thresholds sharp".into())
}

fn connected_in(set: &[usize], edges: &[(usize, usize)]) -> bool {
    let mut seen = BTreeSet::from([set[0]]);
    let mut stack = vec![set[0]];
    while let Some(x) = stack.pop() {
        for &(a, b) in edges {
            for (p, q) in [(a, b), (b, a)] {
                if p == x && set.binary_search(&q).is_ok() && seen.insert(q) {
                    stack.push(q);
                }
            }
        }
    }
    seen.len() == set.len()
}

/// Odd cycles, each with a hub adjacent to all of its vertices, joined by
/// heavier edges. These force nontrivial blossoms.
fn odd_cycle_gadgets(seed: u64) -> RefGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut n = 0;
    let mut hubs = Vec::new();
    while n < 6 || (n < 12 && rng.gen_bool(0.5)) {
        let k = if rng.gen_bool(0.5) { 3 } else { 5 };
        // uniform weights inside a gadget keep every cycle vertex matchable to the hub
        let (a, b) = (rng.gen_range(1..=2), rng.gen_range(1..=3));
        for i in 0..k {
            edges.push((n + i, n + (i + 1) % k, a));
            edges.push((n + i, n + k, b));
        }
        hubs.push(n + k);
        n += k + 1;
    }
    for u in 0..n {
        for v in u + 1..n {
            if !hubs.contains(&u) && !hubs.contains(&v) && rng.gen_bool(0.1) && !edges.iter().any(|e| (e.0, e.1) == (u, v)) {
                edges.push((u, v, 5));
            }
        }
    }
    RefGraph::new(n, false, edges).expect("valid gadget graph")
}

fn matchings() -> Check {
    let mut allowed_checked = 0;
    let mut blossoms = 0;
    for s in 0..700u64 {
        let n = 2 * (1 + s as usize % 8);
        let r = if s < 500 {
            corpus::matching_instance(s, n, 0.35, 5, if s % 3 == 0 { 0.3 } else { 0.0 })
        } else {
            odd_cycle_gadgets(s)
        };
        let n = r.n;
        let g = to_graph(&r);
        let p = Params::new(6000 + s);
        let name = format!("matching {s}");
        let oracle = matching_dp(&r).map_err(|e| format!("{name}: {e}"))?;
        let res = mwpm(&g, &p).map_err(|e| format!("{name}: {e}"))?;
        if Some(res.matching.weight) != oracle.min_weight || !res.matching.is_perfect(n) {
            return Err(mismatch(name, "perfect matching weight", oracle.min_weight, res.matching.weight));
        }
        let sum: i64 = res.matching.edges.iter().map(|&(u, v)| g.weight(u, v).unwrap_or(i64::MAX / 4)).sum();
        if sum != res.matching.weight {
            return Err(format!("{name}: edges sum to {sum}, reported {}", res.matching.weight));
        }
        if n <= 12 {
            allowed_checked += 1;
            let got = allowed_edges(&g, &p).map_err(|e| format!("{name}: {e}"))?;
            if got != oracle.allowed_edges {
                return Err(mismatch(name, "allowed edges", &oracle.allowed_edges, got));
            }
        }
        for f in &res.forests {
            if !f.is_laminar() {
                return Err(format!("{name}: blossom family not laminar"));
            }
            if f.thresholds.len() > n {
                return Err(format!("{name}: {} distinct transformed weights", f.thresholds.len()));
            }
            for set in &f.sets {
                blossoms += 1;
                if set.len() % 2 == 0 {
                    return Err(format!("{name}: even blossom {set:?}"));
                }
                if !connected_in(set, &res.allowed) {
                    return Err(format!("{name}: blossom {set:?} disconnected in the allowed graph"));
                }
                let crossing = res.matching.edges.iter().filter(|&&(a, b)| set.contains(&a) != set.contains(&b)).count();
                if crossing != 1 {
                    return Err(format!("{name}: blossom {set:?} crossed by {crossing} matching edges"));
                }
            }
        }
    }
    if allowed_checked < 300 {
        return Err(format!("only {allowed_checked} allowed-edge checks"));
    }
    Ok(format!("500 random + 200 odd-cycle instances, {allowed_checked} allowed-edge sets, {blossoms} blossoms checked"))
}

fn second_smallest() -> Check {
    let mut some = 0;
    for s in 0..200u64 {
        let n = 2 * (1 + s as usize % 6);
        let r = corpus::matching_instance(20_000 + s, n, 0.45, 4, if s % 4 == 0 { 0.3 } else { 0.0 });
        let name = format!("matching {s}");
        let oracle = matching_dp(&r).map_err(|e| format!("{name}: {e}"))?;
        let got = second_smallest_pm_weight(&to_graph(&r), &Params::new(7000 + s)).map_err(|e| format!("{name}: {e}"))?;
        if got != oracle.second_smallest {
            return Err(mismatch(name, "second smallest", oracle.second_smallest, got));
        }
        some += got.is_some() as usize;
    }
    Ok(format!("200 instances ({some} with a second matching)"))
}

fn zero_test_rate() -> Check {
    let f = PrimeField::new(101).map_err(|e| e.to_string())?;
    let mut poly = FieldPoly::constant(Fe::ONE);
    for k in 0..20 {
        poly = poly.mul(&f, &FieldPoly::from_coeffs(vec![f.neg(f.elem(k)), Fe::ONE]));
    }
    let trials = 100_000u32;
    let bound = 20.0 / 101.0;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut zeros = 0u32;
    for _ in 0..trials {
        let x = f.elem(rng.gen_range(0..101));
        if let ZeroVerdict::Zero { error_bound } = symbolic_nonzero(&f, poly.eval(&f, x), 20) {
            if (error_bound - bound).abs() > 1e-12 {
                return Err(format!("reported bound {error_bound}, expected {bound}"));
            }
            zeros += 1;
        }
    }
    let rate = zeros as f64 / trials as f64;
    let sigma = (bound * (1.0 - bound) / trials as f64).sqrt();
    if rate > bound + 3.0 * sigma {
        return Err(format!("false-zero rate {rate:.5} exceeds {:.5}", bound + 3.0 * sigma));
    }
    Ok(format!("false-zero rate {rate:.5} <= {:.5}", bound + 3.0 * sigma))
}

fn short_cycle_vertices() -> Check {
    let mut queries = 0;
    for s in 0..100u64 {
        let n = 3 + (s as usize % 6);
        let directed = s % 2 == 0;
        let r = if directed {
            corpus::digraph_without_negative_cycle(30_000 + s, n, 0.35, 4, 0.15)
        } else {
            corpus::undirected_without_negative_cycle(30_000 + s, n, 0.45, 4, if s % 3 == 0 { 0.2 } else { 0.0 })
        };
        let g = to_graph(&r);
        let name = format!("graph {s}");
        let idx = ShortCycleIndex::new(&g, &Params::new(9000 + s)).map_err(|e| format!("{name}: {e}"))?;
        for t in 1..=(n as i64 * g.w_bound()) {
            queries += 1;
            let want = vertices_on_cycles_at_most(&r, t).map_err(|e| format!("{name}: {e}"))?;
            let got = idx.vertices(t);
            if got != want {
                return Err(mismatch(format!("{name}, t = {t}"), "short-cycle vertices", want, got));
            }
        }
    }
    Ok(format!("100 graphs, {queries} thresholds"))
}

fn cli_determinism() -> Check {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut fixtures: Vec<_> = std::fs::read_dir(&dir).map_err(|e| e.to_string())?.flatten().map(|e| e.path()).collect();
    fixtures.sort();
    let commands: [&[&str]; 10] = [
        &["shortest-cycle"],
        &["negative-cycle"],
        &["cycle-vertices", "--t", "4"],
        &["distances"],
        &["diameter"],
        &["radius"],
        &["eccentricities"],
        &["check-diameter", "--c", "3"],
        &["mwpm", "--repeats", "3"],
        &["second-matching"],
    ];
    let mut runs = 0;
    for path in &fixtures {
        for cmd in commands {
            let run = || {
                Command::new(env!("CARGO_BIN_EXE_algraph"))
                    .arg(cmd[0])
                    .arg(path)
                    .args(&cmd[1..])
                    .args(["--seed", "42"])
                    .output()
                    .map_err(|e| e.to_string())
            };
            let (a, b) = (run()?, run()?);
            runs += 2;
            if a.stdout != b.stdout || a.status.code() != b.status.code() {
                return Err(format!("{} on {} differs between runs", cmd[0], path.display()));
            }
        }
    }
    Ok(format!("{} fixtures x {} commands, {runs} runs byte-identical", fixtures.len(), commands.len()))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: "tape-cost", name: "reverse sweep within 5x forward cost", limit: Duration::from_secs(10), run: tape_cost },
        Criterion { id: "tape-gradient", name: "tape gradients equal cofactors", limit: Duration::from_secs(10), run: tape_gradient },
        Criterion { id: "directed-cycles", name: "directed shortest cycles and negative cycles", limit: Duration::from_secs(60), run: directed_cycles },
        Criterion { id: "undirected-cycles", name: "undirected shortest cycles", limit: Duration::from_secs(120), run: undirected_cycles },
        Criterion { id: "distances", name: "distances and diameter thresholds", limit: Duration::from_secs(120), run: distances_and_diameter },
        Criterion { id: "mwpm", name: "minimum weight perfect matchings and blossoms", limit: Duration::from_secs(300), run: matchings },
        Criterion { id: "second-matching", name: "second smallest perfect matching weight", limit: Duration::from_secs(30), run: second_smallest },
        Criterion { id: "zero-test", name: "false-zero rate at p = 101", limit: Duration::from_secs(30), run: zero_test_rate },
        Criterion { id: "cycle-vertices", name: "vertices on short cycles", limit: Duration::from_secs(60), run: short_cycle_vertices },
        Criterion { id: "cli-determinism", name: "CLI output deterministic", limit: Duration::from_secs(120), run: cli_determinism },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if took <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; over time limit")),
            Err(e) => (false, e),
        };
        failed += !ok as usize;
        println!(
            "{} {:<18} {} ({detail}) [{:.2} s / {} s]",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            took.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
