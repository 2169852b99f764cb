use std::time::Instant;

use domset::approx_k::{approx_tradeoff, greedy_dominating_set, TradeoffConfig};
use domset::compress::{compress, rds_brute};
use domset::decomp::decompose;
use domset::dp_tw::{approx2_tw, solve_exact_tw};
use domset::fes::{fes_modulator, solve_exact_fes};
use domset::graph::io::Instance;
use domset::graph::{dominates_all, fes_number};
use domset::modulator::{approx2_twd, find_modulator, solve_exact_vc, ModulatorInstance};
use domset::oracle::brute_min_ds;
use domset::{Graph, VertexSet, Weights};
use serde::Serialize;

use crate::args::{Algo, AlgoParams};
use crate::error::{CliError, CliResult};

/// Largest graph `--check-oracle` runs on.
pub const CHECK_ORACLE_MAX_N: usize = 14;

#[derive(Clone, Debug, Default, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulator_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vc: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
}

impl Params {
    /// The single value shown in the `parameter` column of `bench`.
    pub fn headline(&self) -> String {
        [self.width, self.modulator_size, self.vc, self.fes, self.k]
            .into_iter()
            .flatten()
            .next()
            .map_or_else(String::new, |v| v.to_string())
    }
}

pub struct Outcome {
    pub set: VertexSet,
    pub params: Params,
    pub modulator: Option<VertexSet>,
    pub detail: Option<serde_json::Value>,
}

pub fn run_algo(inst: &Instance, algo: Algo, p: &AlgoParams, threads: usize) -> CliResult<Outcome> {
    let g = &inst.graph;
    let w = &inst.weights;
    let mut params = Params::default();
    let mut modulator = None;
    let mut detail = None;
    let set = match algo {
        Algo::TwExact | Algo::TwApprox2 => {
            let d = decompose(g)?;
            params.width = Some(d.width);
            if algo == Algo::TwExact {
                solve_exact_tw(g, w, &d.nice)?.set
            } else {
                let a = approx2_tw(g, w, &d.nice)?;
                detail = Some(serde_json::json!({
                    "first_weight": a.first_weight,
                    "second_weight": a.second_weight,
                    "slack": a.slack,
                }));
                a.set
            }
        }
        Algo::TwdApprox2 => {
            let m = match &inst.modulator {
                Some(m) => m.clone(),
                None => find_modulator(g, p.width)?,
            };
            params.width = Some(p.width);
            params.modulator_size = Some(m.len());
            let mi = ModulatorInstance::new(g.clone(), w.clone(), m.clone(), p.width)?;
            let a = approx2_twd(&mi)?;
            detail = Some(serde_json::json!({
                "modulator_weight": a.modulator_weight,
                "rest_weight": a.rest_weight,
            }));
            modulator = Some(m);
            a.set
        }
        Algo::VcExact => {
            let s = solve_exact_vc(g, w, inst.modulator.as_ref())?;
            let cover = match &inst.modulator {
                Some(m) => m.clone(),
                None => domset::graph::min_vertex_cover(g, domset::modulator::MODULATOR_MAX)
                    .expect("the solver already found a cover within the cap"),
            };
            params.vc = Some(cover.len());
            modulator = Some(cover);
            s.set
        }
        Algo::FesExact => {
            params.fes = Some(fes_number(g));
            let s = solve_exact_fes(g, w)?;
            let m = fes_modulator(g).modulator;
            params.modulator_size = Some(m.len());
            modulator = Some(m);
            s.set
        }
        Algo::ApproxK => {
            require_unit(w, algo)?;
            let mut cfg = TradeoffConfig::new(p.alpha, p.k);
            cfg.threads = threads;
            params.k = Some(p.k);
            params.alpha = Some(p.alpha.to_string());
            let r = approx_tradeoff(g, &cfg)?;
            detail = Some(serde_json::to_value(&r.report).expect("report serializes"));
            r.set
        }
        Algo::Greedy => {
            require_unit(w, algo)?;
            greedy_dominating_set(g)
        }
        Algo::CompressBrute => {
            require_unit(w, algo)?;
            let c = compress(g)?;
            params.fes = Some(c.cycle_rank);
            let best = rds_brute(&c.instance)?;
            detail = Some(serde_json::json!({
                "compressed_n": c.instance.graph.n(),
                "compressed_m": c.instance.graph.m(),
                "partial_size": c.partial.len(),
            }));
            c.lift(&best.witness)?
        }
        Algo::Brute => brute_min_ds(g, w)?.witness,
    };
    Ok(Outcome { set, params, modulator, detail })
}

fn require_unit(w: &Weights, algo: Algo) -> CliResult<()> {
    if !w.is_unit() {
        return Err(domset::Error::input(format!("{} handles unit weights only", algo.id())).into());
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct OracleCheck {
    /// `ran`, `skipped: cap` or `off`.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimum: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub within_contract: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct Verification {
    pub dominating: bool,
    pub oracle: OracleCheck,
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    pub parameters: Params,
    /// 1-based ids.
    pub solution: Vec<usize>,
    pub size: usize,
    pub weight: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulator: Option<Vec<usize>>,
    pub verification: Verification,
    pub wall_time_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
}

pub fn one_based(s: &VertexSet) -> Vec<usize> {
    s.iter().map(|v| v + 1).collect()
}

fn oracle_check(g: &Graph, w: &Weights, weight: u64, algo: Algo, enabled: bool) -> CliResult<OracleCheck> {
    if !enabled {
        return Ok(OracleCheck { status: "off".into(), optimum: None, ratio: None, within_contract: None });
    }
    if g.n() > CHECK_ORACLE_MAX_N {
        return Ok(OracleCheck { status: "skipped: cap".into(), optimum: None, ratio: None, within_contract: None });
    }
    let opt = brute_min_ds(g, w)?.weight.expect("every graph has a dominating set");
    let ratio = if opt == 0 { if weight == 0 { 1.0 } else { f64::INFINITY } } else { weight as f64 / opt as f64 };
    Ok(OracleCheck {
        status: "ran".into(),
        optimum: Some(opt),
        ratio: Some(ratio),
        within_contract: algo.contract().map(|c| weight <= c * opt),
    })
}

/// Runs, verifies and reports. Contract violations are returned alongside the
/// report so the report is still written.
pub fn solve(
    inst: &Instance,
    algo: Algo,
    p: &AlgoParams,
    threads: usize,
    check_oracle: bool,
    emit_modulator: bool,
    verbose: bool,
) -> CliResult<(SolveReport, Option<CliError>)> {
    let start = Instant::now();
    let out = run_algo(inst, algo, p, threads)?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let g = &inst.graph;
    let weight = inst.weights.total(&out.set);
    let dominating = dominates_all(g, &out.set);
    let oracle = oracle_check(g, &inst.weights, weight, algo, check_oracle)?;
    let failure = if !dominating {
        Some(CliError::Contract(format!("{} returned a set that does not dominate the graph", algo.id())))
    } else if oracle.within_contract == Some(false) {
        Some(CliError::Contract(format!("{} exceeded its approximation ratio", algo.id())))
    } else {
        None
    };
    let report = SolveReport {
        algorithm: algo.id(),
        n: g.n(),
        m: g.m(),
        parameters: out.params,
        solution: one_based(&out.set),
        size: out.set.len(),
        weight,
        modulator: if emit_modulator { out.modulator.as_ref().map(one_based) } else { None },
        verification: Verification { dominating, oracle },
        wall_time_ms,
        detail: if verbose { out.detail } else { None },
    };
    Ok((report, failure))
}
