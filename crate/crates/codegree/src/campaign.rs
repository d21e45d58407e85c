//! Verification campaigns. Each check expands into cells that run on the
//! current rayon pool; verdicts come back in cell order.

use std::collections::BTreeSet;

use codegree_core::badtriple::search_bad_triple;
use codegree_core::extremal::{enumerate_feasible, feasible, max_feasible, EnumerateOptions};
use codegree_core::kernels::{kernel_codegree_check, kernel_edge_count, main_extremal, punctured_kernel, PUNCTURE};
use codegree_core::shadow::{verify_kk_special_case, KkOutcome};
use codegree_core::sunflower::{erdos_rado_bound, find_sunflower};
use codegree_core::{binomial, Error, ExtNat, Hypergraph, Params, SearchLimits, VertexSet};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::json::{labels, SearchResultJson};
use crate::oracle::{independent_sunflower_check, plain_max_feasible};
use crate::report::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    /// Search-tree nodes per cell.
    pub nodes: u64,
    /// Core pairs per bad-triple search.
    pub pairs: u64,
    /// Families per Kruskal–Katona cell.
    pub families: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { nodes: 100_000_000, pairs: 10_000_000, families: 10_000_000 }
    }
}

impl Budgets {
    pub fn limits(&self) -> SearchLimits<'static> {
        SearchLimits { max_nodes: self.nodes, max_pairs: self.pairs, ..Default::default() }
    }
}

/// Grid bounds; the defaults are the pinned acceptance cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Grid {
    pub max_k: u32,
    pub max_t: u32,
    pub max_r: u32,
    pub nobad_max_n: u32,
    pub low_rank_max_k: u32,
    pub low_rank_max_t: u32,
    pub low_rank_max_n: u32,
    pub sunflower_max_r: u32,
    pub sunflower_max_p: u32,
    pub sunflower_n: u32,
    pub sunflower_samples: u32,
    pub kk_max_k: u32,
    pub kk_max_s: u32,
    pub kk_max_m: u32,
    pub oracle_cells: u32,
    pub oracle_max_universe: u32,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            max_k: 4,
            max_t: 3,
            max_r: 5,
            nobad_max_n: 10,
            low_rank_max_k: 4,
            low_rank_max_t: 4,
            low_rank_max_n: 7,
            sunflower_max_r: 3,
            sunflower_max_p: 3,
            sunflower_n: 20,
            sunflower_samples: 200,
            kk_max_k: 5,
            kk_max_s: 3,
            kk_max_m: 7,
            oracle_cells: 50,
            oracle_max_universe: 20,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Campaign {
    pub grid: Grid,
    pub budgets: Budgets,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Counterexample,
    KernelCodegree,
    SunflowerBound,
    KruskalKatona,
    ExtremalCells,
    RankBelowCore,
    NoBadTriple,
    BnbOracle,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Counterexample,
        Check::KernelCodegree,
        Check::SunflowerBound,
        Check::KruskalKatona,
        Check::ExtremalCells,
        Check::RankBelowCore,
        Check::NoBadTriple,
        Check::BnbOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Counterexample => "counterexample-audit",
            Check::KernelCodegree => "kernel-codegree",
            Check::SunflowerBound => "sunflower-bound",
            Check::KruskalKatona => "kruskal-katona",
            Check::ExtremalCells => "extremal-cells",
            Check::RankBelowCore => "rank-below-core",
            Check::NoBadTriple => "no-bad-triple",
            Check::BnbOracle => "bnb-oracle",
        }
    }

    pub fn from_name(name: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn run(self, campaign: &Campaign) -> Vec<Verdict> {
        match self {
            Check::Counterexample => counterexample_audit(4, 12),
            Check::KernelCodegree => kernel_codegree(&campaign.grid),
            Check::SunflowerBound => sunflower_bound(&campaign.grid, campaign.seed),
            Check::KruskalKatona => kruskal_katona(&campaign.grid, campaign.budgets.families),
            Check::ExtremalCells => extremal_cells(&campaign.budgets),
            Check::RankBelowCore => rank_below_core(&campaign.grid, &campaign.budgets),
            Check::NoBadTriple => no_bad_triple(&campaign.grid, &campaign.budgets),
            Check::BnbOracle => bnb_oracle(&campaign.grid, &campaign.budgets, campaign.seed),
        }
    }
}

fn params_json(p: &Params) -> Value {
    json!({"k": p.k, "s": p.s, "t": p.t, "r": p.r})
}

fn ext(d: ExtNat) -> Value {
    match d {
        ExtNat::Finite(v) => json!(v),
        ExtNat::Infinity => json!("infinity"),
    }
}

/// Turns budget stops into inconclusive verdicts and other errors into fails.
fn settle(check: &str, details: Value, res: Result<Verdict, Error>) -> Verdict {
    match res {
        Ok(v) => v,
        Err(Error::BudgetExceeded(limit)) => Verdict::inconclusive(check, format!("budget exhausted: {limit}"), details),
        Err(e @ Error::TooLarge { .. }) => Verdict::inconclusive(check, format!("threshold: {e}"), details),
        Err(e) => Verdict::failed(check, e, details),
    }
}

/// Valid `(k, s, t, r)` with `k <= max_k`, `t <= max_t`, `r <= max_r`.
pub fn params_grid(max_k: u32, max_t: u32, max_r: u32) -> Vec<Params> {
    let mut out = Vec::new();
    for k in 1..=max_k {
        for s in 1..=k {
            for t in s..=max_t {
                for r in t..=max_r {
                    out.extend(Params::new(k, r, s, t).ok());
                }
            }
        }
    }
    out
}

fn kernel_cells(grid: &Grid) -> Vec<Params> {
    params_grid(grid.max_k, grid.max_t, grid.max_r).into_iter().filter(|p| p.r >= p.core_size()).collect()
}

/// Claims about the punctured kernel system on `[n]`.
pub fn counterexample_audit(r: u32, n: u32) -> Vec<Verdict> {
    const CHECK: &str = "counterexample-audit";
    let cell = json!({"r": r, "n": n});
    let h = match punctured_kernel(r, n) {
        Ok(h) => h,
        Err(e) => return vec![Verdict::failed(CHECK, e, cell)],
    };
    let params = Params::new(4, r, 2, 2).expect("k=4 s=t=2 is valid for r >= 4");
    // every r-set containing the puncture meets the six-set in at least four
    let expected_edges = kernel_edge_count(n, r, 6, 4) - binomial(u64::from(n - 4), u64::from(r - 4));
    let delta = h.min_positive_degree(r - 2).expect("r - 2 <= r");
    let puncture_degree = h.degree(PUNCTURE);
    let claim = |name: &str, pass: bool, extra: Value| {
        let mut d = json!({"claim": name, "r": r, "n": n});
        if let (Value::Object(m), Value::Object(x)) = (&mut d, extra) {
            m.extend(x);
        }
        Verdict::new(CHECK, pass, d)
    };
    vec![
        claim(
            "edge count",
            h.len() as u64 == expected_edges,
            json!({"edges": h.len(), "expected": expected_edges}),
        ),
        claim("codegree equals five", delta == ExtNat::Finite(5), json!({"delta": ext(delta)})),
        claim(
            "codegree above threshold",
            delta.exceeds(params.codegree_threshold()),
            json!({"delta": ext(delta), "threshold": params.codegree_threshold()}),
        ),
        claim("2-intersecting", h.is_t_intersecting(2), json!({})),
        claim(
            "puncture in no edge",
            puncture_degree == 0,
            json!({"set": labels(PUNCTURE), "degree": puncture_degree}),
        ),
    ]
}

fn kernel_codegree(grid: &Grid) -> Vec<Verdict> {
    const CHECK: &str = "kernel-codegree";
    kernel_cells(grid)
        .par_iter()
        .map(|p| {
            let n = p.kernel_size() + p.r;
            let details = json!({"params": params_json(p), "n": n});
            settle(
                CHECK,
                details.clone(),
                kernel_codegree_check(p, n).map(|rep| {
                    Verdict::new(
                        CHECK,
                        rep.holds(),
                        json!({
                            "params": params_json(p), "n": n, "edges": rep.edges,
                            "delta": ext(rep.delta), "expected": rep.expected,
                            "tIntersecting": rep.t_intersecting,
                        }),
                    )
                }),
            )
        })
        .collect()
}

fn cell_rng(seed: u64, check: u64, cell: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ check.rotate_left(32));
    rng.set_stream(cell);
    rng
}

/// `count` distinct random `r`-subsets of `[n]`.
pub fn random_graph(rng: &mut impl Rng, n: u32, r: u32, count: u64) -> Result<Hypergraph, Error> {
    let mut edges = BTreeSet::new();
    if count > binomial(u64::from(n), u64::from(r)) {
        return Err(Error::InvalidArgument("more edges requested than r-sets exist"));
    }
    while (edges.len() as u64) < count {
        let e: VertexSet = sample(rng, n as usize, r as usize).into_iter().map(|v| v as u32).collect();
        edges.insert(e);
    }
    Hypergraph::new(n, r, edges)
}

fn sunflower_bound(grid: &Grid, seed: u64) -> Vec<Verdict> {
    const CHECK: &str = "sunflower-bound";
    let cells: Vec<(u32, u32)> =
        (1..=grid.sunflower_max_r).flat_map(|r| (2..=grid.sunflower_max_p).map(move |p| (r, p))).collect();
    cells
        .par_iter()
        .enumerate()
        .map(|(idx, &(r, p))| {
            let n = grid.sunflower_n;
            let edges = erdos_rado_bound(r, p) + 1;
            let details = json!({"r": r, "p": p, "n": n, "edges": edges, "samples": grid.sunflower_samples});
            let mut rng = cell_rng(seed, 3, idx as u64);
            let mut found = 0u32;
            let mut invalid = Vec::new();
            for sample_idx in 0..grid.sunflower_samples {
                let h = match random_graph(&mut rng, n, r, edges) {
                    Ok(h) => h,
                    Err(e) => return Verdict::failed(CHECK, e, details),
                };
                match find_sunflower(&h, p) {
                    Some(sf) => {
                        found += 1;
                        if let Err(why) = independent_sunflower_check(&h, &sf, p as usize) {
                            invalid.push(json!({"sample": sample_idx, "error": why}));
                        }
                    }
                    None => invalid.push(json!({"sample": sample_idx, "error": "no sunflower found"})),
                }
            }
            let pass = found == grid.sunflower_samples && invalid.is_empty();
            let mut d = details;
            d["found"] = json!(found);
            d["failures"] = Value::Array(invalid.into_iter().take(5).collect());
            Verdict::new(CHECK, pass, d)
        })
        .collect()
}

/// Cells that must reach exactly `C(k-1, 1)`.
pub const KK_PINNED: [(u32, u32, u32, u32); 2] = [(4, 2, 1, 5), (5, 2, 1, 6)];

fn kruskal_katona(grid: &Grid, budget: u64) -> Vec<Verdict> {
    const CHECK: &str = "kruskal-katona";
    let mut cells = Vec::new();
    for k in 1..=grid.kk_max_k {
        for s in 1..=grid.kk_max_s.min(k.saturating_sub(1)) {
            for i in 0..=s {
                for m in s.max(k - 1)..=grid.kk_max_m {
                    cells.push((k, s, i, m));
                }
            }
        }
    }
    cells
        .par_iter()
        .map(|&(k, s, i, m)| {
            let details = json!({"k": k, "s": s, "i": i, "m": m});
            let pinned = KK_PINNED.contains(&(k, s, i, m));
            settle(
                CHECK,
                details.clone(),
                verify_kk_special_case(k, s, i, m, budget).map(|out| match out {
                    KkOutcome::Verified { families, min_shadow, bound } => Verdict::new(
                        CHECK,
                        min_shadow == bound,
                        json!({"k": k, "s": s, "i": i, "m": m, "families": families,
                               "minShadow": min_shadow, "bound": bound, "pinned": pinned}),
                    ),
                    KkOutcome::Violated { family, shadow_size, bound } => Verdict::new(
                        CHECK,
                        false,
                        json!({"k": k, "s": s, "i": i, "m": m, "shadow": shadow_size, "bound": bound,
                               "family": family.members().iter().map(|x| labels(*x)).collect::<Vec<_>>()}),
                    ),
                    KkOutcome::OverBudget { required, budget } => {
                        let d = json!({"k": k, "s": s, "i": i, "m": m, "required": required, "pinned": pinned});
                        if pinned {
                            Verdict::failed(CHECK, "pinned cell over budget", d)
                        } else {
                            Verdict::inconclusive(CHECK, format!("family budget {budget} below {required}"), d)
                        }
                    }
                }),
            )
        })
        .collect()
}

/// `max_feasible` with and without symmetry plus plain enumeration when
/// the universe is small.
fn exact_cell(check: &str, n: u32, p: &Params, budgets: &Budgets, expected: Option<u64>) -> Verdict {
    let details = json!({"params": params_json(p), "n": n});
    let run = || -> Result<Verdict, Error> {
        let limits = budgets.limits();
        let sym = max_feasible(n, p, &limits, true)?;
        let plain = max_feasible(n, p, &limits, false)?;
        if !sym.optimal || !plain.optimal {
            return Ok(Verdict::inconclusive(
                check,
                format!("node budget {} exhausted", budgets.nodes),
                json!({"params": params_json(p), "n": n, "bestSoFar": sym.max_edges.max(plain.max_edges)}),
            ));
        }
        let enumerated = plain_max_feasible(n, p);
        let witness_ok = feasible(&sym.witness, p).is_feasible();
        let mut pass = sym.max_edges == plain.max_edges && witness_ok;
        if let Some(e) = enumerated {
            pass &= e == sym.max_edges;
        }
        if let Some(e) = expected {
            pass &= e == sym.max_edges;
        }
        Ok(Verdict::new(
            check,
            pass,
            json!({
                "params": params_json(p), "n": n,
                "result": SearchResultJson::from(&sym),
                "withoutSymmetry": plain.max_edges,
                "plainEnumeration": enumerated,
                "expected": expected,
            }),
        ))
    };
    settle(check, details, run())
}

fn extremal_cells(budgets: &Budgets) -> Vec<Verdict> {
    const CHECK: &str = "extremal-cells";
    let cells = [
        (6, Params::new(2, 2, 1, 1).expect("valid"), kernel_edge_count(6, 2, 3, 2), true),
        (5, Params::new(1, 2, 1, 1).expect("valid"), binomial(4, 1), false),
    ];
    cells
        .par_iter()
        .map(|(n, p, expected, need_kernel)| {
            let mut v = exact_cell(CHECK, *n, p, budgets, Some(*expected));
            let d = &v.details;
            let is_kernel = d["result"]["witnessIsKernel"].as_bool() == Some(true);
            let optimal = d["result"]["optimal"].as_bool() == Some(true);
            if v.status == crate::report::Status::Pass && (!optimal || (*need_kernel && !is_kernel)) {
                v.status = crate::report::Status::Fail;
            }
            v
        })
        .collect()
}

fn rank_below_core(grid: &Grid, budgets: &Budgets) -> Vec<Verdict> {
    const CHECK: &str = "rank-below-core";
    let mut cells = Vec::new();
    for p in params_grid(grid.low_rank_max_k, grid.low_rank_max_t, grid.low_rank_max_n) {
        if p.r < p.core_size() {
            for n in p.r.max(1)..=grid.low_rank_max_n {
                cells.push((n, p));
            }
        }
    }
    cells
        .par_iter()
        .map(|(n, p)| {
            let details = json!({"params": params_json(p), "n": n});
            settle(
                CHECK,
                details,
                max_feasible(*n, p, &budgets.limits(), true).map(|res| {
                    let d = json!({"params": params_json(p), "n": n, "maxEdges": res.max_edges,
                                   "optimal": res.optimal, "nodes": res.nodes_explored});
                    if res.optimal {
                        Verdict::new(CHECK, res.max_edges == 0, d)
                    } else if res.max_edges > 0 {
                        Verdict::new(CHECK, false, d)
                    } else {
                        Verdict::inconclusive(CHECK, format!("node budget {} exhausted", budgets.nodes), d)
                    }
                }),
            )
        })
        .collect()
}

fn bad_triple_cell(label: Value, graphs: &[Hypergraph], p: &Params, budgets: &Budgets) -> Verdict {
    const CHECK: &str = "no-bad-triple";
    let mut pairs = 0u64;
    let mut nodes = 0u64;
    for h in graphs {
        match search_bad_triple(h, p, &budgets.limits()) {
            Ok(out) => {
                pairs += out.pairs_examined;
                nodes += out.nodes;
                if let Some(w) = out.witness {
                    return Verdict::new(
                        CHECK,
                        false,
                        json!({"instance": label, "params": params_json(p),
                               "witness": crate::json::WitnessJson::from(&w),
                               "graph": crate::json::HypergraphJson::from(h)}),
                    );
                }
            }
            Err(e) => return settle(CHECK, json!({"instance": label, "params": params_json(p)}), Err(e)),
        }
    }
    Verdict::new(
        CHECK,
        true,
        json!({"instance": label, "params": params_json(p), "graphs": graphs.len(), "pairs": pairs, "nodes": nodes}),
    )
}

fn no_bad_triple(grid: &Grid, budgets: &Budgets) -> Vec<Verdict> {
    enum Job {
        Enumerated(u32, Params),
        Kernel(u32, Params),
        Punctured(u32, u32),
    }
    let mut jobs = vec![Job::Enumerated(5, Params::new(2, 2, 1, 1).expect("valid"))];
    for p in kernel_cells(grid) {
        let n = p.kernel_size() + p.r;
        if n <= grid.nobad_max_n {
            jobs.push(Job::Kernel(n, p));
        }
    }
    jobs.push(Job::Punctured(4, 12));
    jobs.par_iter()
        .map(|job| {
            let made: Result<(Value, Vec<Hypergraph>, Params), Error> = match job {
                Job::Enumerated(n, p) => enumerate_feasible(*n, p, &EnumerateOptions::default(), &budgets.limits())
                    .map(|gs| (json!({"source": "enumerated", "n": n}), gs, *p)),
                Job::Kernel(n, p) => main_extremal(p, *n).map(|h| (json!({"source": "kernel", "n": n}), vec![h], *p)),
                Job::Punctured(r, n) => punctured_kernel(*r, *n).map(|h| {
                    (json!({"source": "punctured", "n": n}), vec![h], Params::new(4, *r, 2, 2).expect("valid"))
                }),
            };
            match made {
                Ok((label, graphs, p)) => bad_triple_cell(label, &graphs, &p, budgets),
                Err(e) => settle("no-bad-triple", Value::Null, Err(e)),
            }
        })
        .collect()
}

/// Random valid cells with `3 <= C(n, r) <= max_universe`, drawn in order.
/// `(n, r)` is uniform over the admissible shapes with `n <= 8`.
pub fn oracle_cells(seed: u64, count: u32, max_universe: u32) -> Vec<(u32, Params)> {
    let shapes: Vec<(u32, u32)> = (2..=8u32)
        .flat_map(|n| (1..=n).map(move |r| (n, r)))
        .filter(|&(n, r)| (3..=u64::from(max_universe)).contains(&binomial(u64::from(n), u64::from(r))))
        .collect();
    let mut rng = cell_rng(seed, 8, 0);
    let mut out = Vec::new();
    while !shapes.is_empty() && out.len() < count as usize {
        let (n, r) = shapes[rng.gen_range(0..shapes.len())];
        let k = rng.gen_range(1..=4u32);
        let s = rng.gen_range(1..=k);
        if s > r {
            continue;
        }
        let t = rng.gen_range(s..=r);
        if let Ok(p) = Params::new(k, r, s, t) {
            out.push((n, p));
        }
    }
    out
}

fn bnb_oracle(grid: &Grid, budgets: &Budgets, seed: u64) -> Vec<Verdict> {
    oracle_cells(seed, grid.oracle_cells, grid.oracle_max_universe.min(24))
        .par_iter()
        .map(|(n, p)| exact_cell("bnb-oracle", *n, p, budgets, None))
        .collect()
}

/// One `verify-theorem` cell.
pub fn theorem_cell(p: &Params, n: u32, budgets: &Budgets) -> Verdict {
    const CHECK: &str = "theorem";
    let base = json!({"params": params_json(p), "n": n});
    let run = || -> Result<Verdict, Error> {
        let (a, b) = (p.kernel_size(), p.core_size());
        let res = max_feasible(n, p, &budgets.limits(), true)?;
        let mut d = json!({"params": params_json(p), "n": n, "result": SearchResultJson::from(&res)});
        if p.r < b {
            d["claim"] = json!("rank below core size forces empty");
            return Ok(if !res.optimal && res.max_edges == 0 {
                Verdict::inconclusive(CHECK, format!("node budget {} exhausted", budgets.nodes), d)
            } else {
                Verdict::new(CHECK, res.max_edges == 0, d)
            });
        }
        let mut pass = feasible(&res.witness, p).is_feasible();
        if n >= a + p.r {
            let rep = kernel_codegree_check(p, n)?;
            d["kernelCodegree"] = json!({"delta": ext(rep.delta), "expected": rep.expected});
            pass &= rep.holds() && res.max_edges >= res.kernel_count;
        }
        let triple = search_bad_triple(&res.witness, p, &budgets.limits())?;
        d["badTriple"] = json!(triple.witness.as_ref().map(crate::json::WitnessJson::from));
        pass &= triple.witness.is_none();
        if !res.optimal && pass {
            return Ok(Verdict::inconclusive(CHECK, format!("node budget {} exhausted", budgets.nodes), d));
        }
        Ok(Verdict::new(CHECK, pass, d))
    };
    settle(CHECK, base, run())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(Check::from_name(c.name()), Some(c));
        }
        assert_eq!(Check::from_name("nope"), None);
    }

    #[test]
    fn small_extremal_cells() {
        let b = Budgets::default();
        let v = theorem_cell(&Params::new(2, 2, 1, 1).unwrap(), 6, &b);
        assert_eq!(v.status, Status::Pass, "{}", v.details);
        assert_eq!(v.details["result"]["maxEdges"], 3);
        let v = theorem_cell(&Params::new(3, 3, 1, 2).unwrap(), 6, &b);
        assert_eq!(v.status, Status::Pass, "{}", v.details);
        assert_eq!(v.details["result"]["maxEdges"], 0);
        let tiny = Budgets { nodes: 1, ..b };
        assert_eq!(theorem_cell(&Params::new(2, 3, 1, 1).unwrap(), 7, &tiny).status, Status::Inconclusive);
    }

    #[test]
    fn audit_claims() {
        assert!(counterexample_audit(4, 12).iter().all(|v| v.status == Status::Pass));
        assert!(counterexample_audit(4, 10).iter().all(|v| v.status == Status::Pass));
        let rejected = counterexample_audit(3, 10);
        assert_eq!(rejected.len(), 1);
        assert_eq!(rejected[0].status, Status::Fail);
    }

    #[test]
    fn oracle_cells_are_reproducible() {
        assert_eq!(oracle_cells(9, 20, 20), oracle_cells(9, 20, 20));
        assert!(oracle_cells(9, 20, 20).iter().all(|(n, p)| binomial(u64::from(*n), u64::from(p.r)) <= 20));
    }
}
