use algraph::{AlgError, Graph};
use algraph_oracles::{
    floyd_warshall, matching_dp, min_cycle_weight, simple_path_distances, vertices_on_cycles_at_most, DistTable,
    OracleError, RefGraph,
};
use serde_json::{json, Map, Value};

use crate::Task;

pub enum Verdict {
    Pass,
    Skipped(String),
    Mismatch(String),
}

/// What the oracle expects: answer fields, or a negative-cycle or
/// no-perfect-matching verdict.
enum Expect {
    Fields(Vec<(&'static str, Value)>),
    NegativeCycle,
    NoPerfectMatching,
}

fn ref_graph(g: &Graph) -> RefGraph {
    RefGraph::new(g.n(), g.directed(), g.edges().iter().map(|e| (e.u, e.v, e.w))).expect("graph already validated")
}

fn oracle_distances(r: &RefGraph) -> Result<Option<DistTable>, OracleError> {
    if r.directed {
        return match floyd_warshall(r) {
            Ok(d) => Ok(Some(d)),
            Err(OracleError::NegativeCycle) => Ok(None),
            Err(e) => Err(e),
        };
    }
    if min_cycle_weight(r)?.is_some_and(|w| w < 0) {
        return Ok(None);
    }
    simple_path_distances(r).map(Some)
}

fn ecc(row: &[Option<i64>]) -> Option<i64> {
    let mut best = 0;
    for d in row {
        best = best.max((*d)?);
    }
    Some(best)
}

fn expected(task: Task, r: &RefGraph) -> Result<Expect, OracleError> {
    let cycle_min = || -> Result<Option<i64>, OracleError> { min_cycle_weight(r) };
    Ok(match task {
        Task::ShortestCycle => match cycle_min()? {
            Some(w) if w < 0 => Expect::NegativeCycle,
            w => Expect::Fields(vec![("weight", json!(w))]),
        },
        Task::NegativeCycle => Expect::Fields(vec![("negative_cycle", json!(cycle_min()?.is_some_and(|w| w < 0)))]),
        Task::CycleVertices(t) => match cycle_min()? {
            Some(w) if w < 0 => Expect::NegativeCycle,
            _ => {
                let vs: Vec<usize> = vertices_on_cycles_at_most(r, t)?.into_iter().map(|v| v + 1).collect();
                Expect::Fields(vec![("vertices", json!(vs))])
            }
        },
        Task::Diameter | Task::Radius | Task::Eccentricities | Task::Distances | Task::CheckDiameter(_) => {
            let Some(d) = oracle_distances(r)? else { return Ok(Expect::NegativeCycle) };
            let eccs: Vec<Option<i64>> = d.iter().map(|row| ecc(row)).collect();
            let diameter = if eccs.iter().any(Option::is_none) { None } else { eccs.iter().flatten().max().copied() };
            let radius = eccs.iter().flatten().min().copied();
            match task {
                Task::Diameter => Expect::Fields(vec![("diameter", json!(diameter))]),
                Task::Radius => Expect::Fields(vec![("radius", json!(radius))]),
                Task::Eccentricities => Expect::Fields(vec![("eccentricities", json!(eccs))]),
                Task::Distances => Expect::Fields(vec![("distances", json!(d))]),
                Task::CheckDiameter(c) => Expect::Fields(vec![("diameter_at_most", json!(diameter.is_some_and(|x| x <= c)))]),
                _ => unreachable!(),
            }
        }
        Task::Mwpm | Task::SecondMatching => {
            if r.directed {
                return Err(OracleError::DirectedInput);
            }
            let rep = matching_dp(r)?;
            match (task, rep.min_weight) {
                (_, None) => Expect::NoPerfectMatching,
                (Task::Mwpm, Some(w)) => Expect::Fields(vec![("weight", json!(w))]),
                _ => Expect::Fields(vec![("second_smallest", json!(rep.second_smallest))]),
            }
        }
    })
}

pub fn check(task: Task, g: &Graph, got: &Result<(Map<String, Value>, f64), AlgError>) -> Verdict {
    let r = ref_graph(g);
    let want = match expected(task, &r) {
        Ok(w) => w,
        Err(e) => return Verdict::Skipped(e.to_string()),
    };
    match (want, got) {
        (Expect::NegativeCycle, Err(AlgError::NegativeCycle)) => Verdict::Pass,
        (Expect::NoPerfectMatching, Err(AlgError::NoPerfectMatching)) => Verdict::Pass,
        (Expect::Fields(fields), Ok((answer, _))) => {
            for (k, v) in fields {
                let actual = answer.get(k).cloned().unwrap_or(Value::Null);
                if actual != v {
                    return Verdict::Mismatch(format!("{k}: oracle {v}, algorithm {actual}"));
                }
            }
            Verdict::Pass
        }
        (Expect::NegativeCycle, _) => Verdict::Mismatch("oracle finds a negative cycle".into()),
        (Expect::NoPerfectMatching, _) => Verdict::Mismatch("oracle finds no perfect matching".into()),
        (Expect::Fields(_), Err(e)) => Verdict::Mismatch(format!("oracle has an answer, algorithm failed: {e}")),
    }
}
