//! Command-line front end for the `domset` solvers.

mod args;
mod error;
mod solve;

use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::Parser;
use domset::compress::{compress, lift, parse_trace, replay, write_trace};
use domset::decomp::pace::{parse_td, write_td};
use domset::decomp::{decompose, verify_raw};
use domset::graph::gen::{complete, cycle, gen_cactus, gen_random, gen_random_connected, gen_subdivided, gen_weights, path, star};
use domset::graph::io::{parse_instance, parse_solution, set_line, write_graph, Instance};
use domset::graph::{dominates_all, fes_number};
use domset::Weights;
use serde_json::json;

use args::{BenchArgs, Cli, Command, CompressArgs, DecomposeArgs, Family, GenArgs, LiftArgs, SolveArgs, VerifyArgs};
use error::{CliError, CliResult};
use solve::run_algo;

const THREADS_VAR: &str = "DOMSETKIT_THREADS";

fn threads() -> usize {
    std::env::var(THREADS_VAR).ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> CliResult<Instance> {
    Ok(parse_instance(&read(path)?)?)
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

fn cmd_solve(a: SolveArgs) -> CliResult<()> {
    let inst = load(&a.graph)?;
    let (report, failure) =
        solve::solve(&inst, a.algo, &a.params, threads(), a.check_oracle, a.emit_modulator, a.verbose)?;
    emit(a.out.as_deref(), &pretty(&report))?;
    failure.map_or(Ok(()), Err)
}

fn cmd_compress(a: CompressArgs) -> CliResult<()> {
    let inst = load(&a.graph)?;
    if inst.weighted {
        return Err(domset::Error::input("compression handles unit weights only").into());
    }
    let g = &inst.graph;
    let c = compress(g)?;
    fs::create_dir_all(&a.out).map_err(|source| CliError::Io { path: a.out.clone(), source })?;
    let mut graph_file = write_graph(&c.instance.graph, None);
    graph_file.push_str(&set_line('x', &c.instance.exempt));
    write(&a.out.join("compressed.ds"), &graph_file)?;
    write(&a.out.join("partial.sol"), &set_line('s', &c.partial))?;
    write(&a.out.join("trace.jsonl"), &write_trace(&c.trace))?;
    let summary = json!({
        "n": g.n(),
        "m": g.m(),
        "cycle_rank": c.cycle_rank,
        "compressed_n": c.instance.graph.n(),
        "compressed_m": c.instance.graph.m(),
        "high_degree": c.high_degree_count(),
        "within_bounds": c.within_bounds(),
        "partial_size": c.partial.len(),
        "trace_steps": c.trace.len(),
    });
    print!("{}", pretty(&summary));
    if !c.within_bounds() {
        return Err(CliError::Contract("compressed instance exceeds its size bounds".into()));
    }
    Ok(())
}

fn cmd_lift(a: LiftArgs) -> CliResult<()> {
    let g = load(&a.graph)?.graph;
    let trace = parse_trace(&read(&a.trace)?)?;
    let (compressed, _) = replay(&g, &trace)?.instance();
    let sol = parse_solution(&read(&a.solution)?, compressed.graph.n())?;
    if !compressed.is_solution(&sol) {
        return Err(CliError::Contract("the solution does not dominate the non-exempt compressed vertices".into()));
    }
    let full = lift(&g, &trace, &sol)?;
    if !dominates_all(&g, &full) {
        return Err(CliError::Contract("the lifted set does not dominate the graph".into()));
    }
    emit(a.out.as_deref(), &set_line('s', &full))
}

fn cmd_decompose(a: DecomposeArgs) -> CliResult<()> {
    let g = load(&a.graph)?.graph;
    let d = decompose(&g)?;
    let raw = if a.nice { d.nice.to_raw() } else { d.raw };
    let text = format!("c width {} exact {}\n{}", d.width, d.exact, write_td(&raw, g.n()));
    emit(a.out.as_deref(), &text)
}

fn cmd_verify(a: VerifyArgs) -> CliResult<()> {
    let inst = load(&a.graph)?;
    let g = &inst.graph;
    if let Some(td_path) = &a.td {
        let (td, n) = parse_td(&read(td_path)?)?;
        if n != g.n() {
            return Err(domset::Error::input(format!("decomposition is for {n} vertices, graph has {}", g.n())).into());
        }
        let violations: Vec<String> = verify_raw(&td, g).iter().map(ToString::to_string).collect();
        print!("{}", pretty(&json!({ "valid": violations.is_empty(), "width": td.width(), "violations": violations })));
        if !violations.is_empty() {
            return Err(CliError::Contract("invalid tree decomposition".into()));
        }
        return Ok(());
    }
    let path = a.solution.as_deref().expect("clap requires a solution or --td");
    let s = parse_solution(&read(path)?, g.n())?;
    let covered = g.closed_neighborhood_of(&s);
    let undominated: Vec<usize> = g.vertices().filter(|&v| !covered.contains(v)).map(|v| v + 1).collect();
    print!(
        "{}",
        pretty(&json!({
            "dominating": undominated.is_empty(),
            "size": s.len(),
            "weight": inst.weights.total(&s),
            "undominated": undominated,
        }))
    );
    if !undominated.is_empty() {
        return Err(CliError::Contract("the set does not dominate the graph".into()));
    }
    Ok(())
}

fn cmd_gen(a: GenArgs) -> CliResult<()> {
    let g = match a.family {
        Family::Random => gen_random(a.n, a.p, a.seed)?,
        Family::Connected => gen_random_connected(a.n, a.p, a.seed)?,
        Family::Cactus => gen_cactus(a.n, a.seed),
        Family::Subdivided => gen_subdivided(a.n, a.seed),
        Family::Path => path(a.n),
        Family::Cycle => cycle(a.n),
        Family::Star => star(a.n.saturating_sub(1)),
        Family::Complete => complete(a.n),
    };
    let w: Option<Weights> = a.max_weight.map(|max| gen_weights(g.n(), max, a.seed));
    let text = format!("c {:?} n={} seed={}\n{}", a.family, a.n, a.seed, write_graph(&g, w.as_ref()));
    emit(a.out.as_deref(), &text.to_lowercase())
}

fn bench_row(path: &Path, a: &BenchArgs, algo: args::Algo) -> String {
    let name = path.display().to_string();
    let inst = match load(path) {
        Ok(i) => i,
        Err(e) => return format!("{name},{},,,,error: {e},\n", algo.id()),
    };
    let g = &inst.graph;
    let start = Instant::now();
    // The pool already runs instances in parallel.
    let r = run_algo(&inst, algo, &a.params, 1);
    let ms = start.elapsed().as_secs_f64() * 1e3;
    match r {
        Ok(out) => {
            let param = if out.params.headline().is_empty() { fes_number(g).to_string() } else { out.params.headline() };
            let w = inst.weights.total(&out.set);
            format!("{name},{},{},{},{param},{w},{ms:.3}\n", algo.id(), g.n(), g.m())
        }
        Err(e) => format!("{name},{},{},{},,error: {e},{ms:.3}\n", algo.id(), g.n(), g.m()),
    }
}

fn cmd_bench(a: BenchArgs) -> CliResult<()> {
    let jobs: Vec<(usize, args::Algo)> =
        (0..a.graphs.len()).flat_map(|i| a.algos.iter().map(move |&al| (i, al))).collect();
    let workers = match threads() {
        0 => std::thread::available_parallelism().map_or(1, |p| p.get()),
        t => t,
    }
    .min(jobs.len().max(1));
    let rows: Mutex<Vec<Option<String>>> = Mutex::new(vec![None; jobs.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let j = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(i, algo)) = jobs.get(j) else { break };
                let row = bench_row(&a.graphs[i], &a, algo);
                rows.lock().expect("no worker panics while holding the lock")[j] = Some(row);
            });
        }
    });
    let mut out = std::io::stdout().lock();
    let fail = |source| CliError::Io { path: "<stdout>".into(), source };
    out.write_all(b"instance,algo,n,m,parameter,weight,time-ms\n").map_err(fail)?;
    for row in rows.into_inner().expect("workers finished").into_iter().flatten() {
        out.write_all(row.as_bytes()).map_err(fail)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Compress(a) => cmd_compress(a),
        Command::Lift(a) => cmd_lift(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("domsetkit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
