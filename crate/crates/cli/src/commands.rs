use std::fs;
use std::path::Path;
use std::time::Duration;

use serde::Serialize;

use hcover::epsnet::{build_epsnet, derive_seed, EpsNetResult, NetConfig};
use hcover::exact::{count_all_maximal_empty_rects, opt_capacitated_cover, opt_hitting_set, verify_epsnet, OracleBudget};
use hcover::experiments::{
    decay_average, greedy_ratio_suite, harmonic, hitting_ratio_suite, net_size_sweep, summarize_ratios,
    within_harmonic_bound,
};
use hcover::flowcheck::max_value;
use hcover::generate::{self, CoverParams};
use hcover::geometry::jitter_to_general_position;
use hcover::hitting::{solve_hitting, verify_hitting};
use hcover::io::{read_points, read_rects, write_points, write_rects, write_table};
use hcover::setsystem::FORMAT_VERSION;
use hcover::wolsey::solve_capacitated;
use hcover::{Error, Point, PointSet, SetCoverInstance};

use crate::args::{BenchArgs, BudgetArgs, CoverArgs, EpsnetArgs, ExactCommand, GenKind, HitsetArgs, Suite};

/// Exit status for a command that ran but found the instance infeasible or a
/// result invalid.
pub const INVALID: i32 = 2;
pub const INPUT: i32 = 3;
pub const BUDGET: i32 = 4;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Infeasible { .. } | Error::Precondition(_) | Error::DegenerateInput(_) => INVALID,
        Error::Malformed(_) | Error::Parse(_) | Error::Io(_) => INPUT,
        Error::BudgetExceeded(_) | Error::NetSampleFailure { .. } | Error::BgDivergence(_) => BUDGET,
    }
}

type Outcome = Result<i32, Error>;

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn ids(list: &[usize]) -> String {
    list.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

fn budget(b: &BudgetArgs) -> OracleBudget {
    OracleBudget {
        max_subsets: b.max_subsets,
        max_candidates: b.max_candidates,
        timeout: b.timeout_secs.map(Duration::from_secs),
    }
}

fn load_instance(path: &Path) -> Result<SetCoverInstance, Error> {
    SetCoverInstance::from_json(&read(path)?)
}

fn load_points(path: &Path) -> Result<Vec<Point>, Error> {
    let points = read_points(&read(path)?)?;
    PointSet::new(points.clone())?;
    Ok(points)
}

pub fn gen(kind: &GenKind) -> Outcome {
    match kind {
        GenKind::RandomCover { n, m, cap_min, cap_max, cost_min, cost_max, density, seed, output } => {
            let params =
                CoverParams { n: *n, m: *m, capacity: (*cap_min, *cap_max), cost: (*cost_min, *cost_max), density: *density };
            emit(output.out.as_deref(), &generate::random_cover(&params, *seed)?.to_json())?;
        }
        GenKind::Antenna { users, antennas, seed, out, instance_out } => {
            let scene = generate::antenna(*users, *antennas, *seed)?;
            write(out, &scene.to_json())?;
            write(instance_out, &scene.to_instance()?.to_json())?;
        }
        GenKind::Example { output, .. } => emit(output.out.as_deref(), &hcover::fixtures::six_element_example().to_json())?,
        GenKind::UniformPoints { n, seed, output } => {
            emit(output.out.as_deref(), &write_points(&generate::uniform_points(*n, *seed)))?
        }
        GenKind::Clustered { n, clusters, seed, output } => {
            emit(output.out.as_deref(), &write_points(&generate::clustered_points(*n, *clusters, *seed)))?
        }
        GenKind::Staircase { s, output, .. } => emit(output.out.as_deref(), &write_points(&generate::staircase(*s)))?,
        GenKind::Grid { rows, cols, output, .. } => {
            emit(output.out.as_deref(), &write_points(&generate::grid(*rows, *cols)))?
        }
        GenKind::Rects { points, m, max_side, seed, output } => {
            if !(*max_side > 0.0 && max_side.is_finite()) {
                return Err(Error::Precondition("max-side must be positive".into()));
            }
            let rects = generate::random_rects(&load_points(points)?, *m, *max_side, *seed)?;
            emit(output.out.as_deref(), &write_rects(&rects))?
        }
    }
    Ok(0)
}

pub fn feas(path: &Path) -> Outcome {
    let inst = load_instance(path)?;
    let f = max_value(&inst);
    let n = inst.n_elements();
    let verdict = if f == n { "FEASIBLE" } else { "INFEASIBLE" };
    println!("f={f} / n={n} {verdict}");
    Ok(if f == n { 0 } else { INVALID })
}

pub fn cover(args: &CoverArgs) -> Outcome {
    let inst = load_instance(&args.instance)?;
    let trace = match solve_capacitated(&inst) {
        Ok(t) => t,
        Err(Error::Infeasible { best, .. }) => {
            println!("INFEASIBLE: at most {best} of {} elements can be served", inst.n_elements());
            return Ok(INVALID);
        }
        Err(e) => return Err(e),
    };
    if args.trace {
        for (i, s) in trace.steps.iter().enumerate() {
            println!("step {} set {} gain {} ratio {} covered {}/{}", i + 1, s.set, s.gain, s.ratio, s.covered, inst.n_elements());
        }
    }
    println!("sets {}", ids(&trace.chosen_sequence()));
    println!("cost {}", trace.cost);
    if let Some(out) = &args.out {
        write(out, &trace.cover.to_json())?;
    }
    if args.exact {
        let opt = opt_capacitated_cover(&inst, &budget(&args.budget))?;
        let n = inst.n_elements();
        let ok = within_harmonic_bound(trace.cost.units(), opt.cost.units(), n);
        let ratio = if opt.cost.units() == 0 { 1.0 } else { trace.cost.to_f64() / opt.cost.to_f64() };
        println!("opt {} sets {}", opt.cost, ids(&opt.family));
        println!("ratio {ratio:.4} H_{n} {:.4} {}", harmonic(n), if ok { "within bound" } else { "BOUND VIOLATED" });
        if !ok {
            return Ok(INVALID);
        }
    }
    Ok(0)
}

fn net_config(args: &EpsnetArgs) -> NetConfig {
    let a = &args.net;
    NetConfig { eps: a.eps, c: a.c, k_hw: a.k_hw, seed: a.seed, max_retries: a.max_retries }
}

#[derive(Serialize)]
struct NetSummary<'a> {
    format_version: u32,
    config: &'a NetConfig,
    n: usize,
    r: f64,
    s: f64,
    threshold: f64,
    jittered: bool,
    sample_size: usize,
    anchored_rects: usize,
    kept_rects: usize,
    retries: u32,
    net: &'a [usize],
}

fn summary(res: &EpsNetResult, jittered: bool) -> NetSummary<'_> {
    NetSummary {
        format_version: FORMAT_VERSION,
        config: &res.config,
        n: res.n,
        r: res.r,
        s: res.s,
        threshold: res.threshold,
        jittered,
        sample_size: res.first_level.len(),
        anchored_rects: res.rects.len(),
        kept_rects: res.rects.iter().filter(|m| m.kept).count(),
        retries: res.retries,
        net: &res.net,
    }
}

pub fn epsnet(args: &EpsnetArgs) -> Outcome {
    let original = load_points(&args.points)?;
    let config = net_config(args);
    config.validate()?;
    let mut points = original.clone();
    let jittered = PointSet::new(points.clone())?.require_general_position().is_err();
    if jittered {
        jitter_to_general_position(&mut points, derive_seed(config.seed, 0x6a, 0));
        eprintln!("warning: points share coordinates; applied seeded rank-preserving jitter");
    }
    let res = build_epsnet(&points, &config)?;
    println!(
        "n {} r {} s {:.3} sample {} net {} kept {} retries {}",
        res.n,
        res.r,
        res.s,
        res.first_level.len(),
        res.net.len(),
        res.rects.iter().filter(|m| m.kept).count(),
        res.retries
    );
    let json = if args.full { res.to_json() } else { to_json(&summary(&res, jittered)) };
    if let Some(out) = &args.out {
        write(out, &json)?;
    }
    if let Some(path) = &args.profile {
        write(path, &write_table(&res.decay)?)?;
    }
    if args.verify {
        return report_check(&original, config.eps, &res.net);
    }
    Ok(0)
}

fn report_check(points: &[Point], eps: f64, net: &[usize]) -> Outcome {
    let check = verify_epsnet(points, eps, net)?;
    match check.witness {
        None => {
            println!("verify ok ({} rectangles checked)", check.rects_checked);
            Ok(0)
        }
        Some(w) => {
            println!(
                "verify FAILED: [{}, {}] x [{}, {}] holds {} points and no net point",
                w.x_lo, w.x_hi, w.y_lo, w.y_hi, check.witness_load
            );
            Ok(INVALID)
        }
    }
}

pub fn hitset(args: &HitsetArgs) -> Outcome {
    let points = load_points(&args.points)?;
    let rects = read_rects(&read(&args.rects)?)?;
    let res = solve_hitting(&points, &rects, &NetConfig::new(0.5, args.seed))?;
    println!("points {} guess {} rounds {}", res.points.len(), res.guess, res.rounds.len());
    println!("chosen {}", ids(&res.points));
    if let Some(out) = &args.out {
        write(out, &res.to_json())?;
    }
    if let Some(r) = verify_hitting(&points, &res.points, &rects) {
        println!("INVALID: rectangle {r} is not hit");
        return Ok(INVALID);
    }
    println!("hit {} / {} rectangles", rects.len(), rects.len());
    if args.exact {
        let (opt, chosen) = opt_hitting_set(&points, &rects, &budget(&args.budget))?;
        let ratio = if opt == 0 { 1.0 } else { res.points.len() as f64 / opt as f64 };
        println!("opt {opt} chosen {}", ids(&chosen));
        println!("ratio {ratio:.4}");
    }
    Ok(0)
}

pub fn exact(cmd: &ExactCommand) -> Outcome {
    match cmd {
        ExactCommand::Cover { instance, budget: b } => {
            let inst = load_instance(instance)?;
            match opt_capacitated_cover(&inst, &budget(b)) {
                Ok(opt) => {
                    println!("opt {} sets {}", opt.cost, ids(&opt.family));
                    Ok(0)
                }
                Err(Error::Infeasible { best, .. }) => {
                    println!("INFEASIBLE: at most {best} of {} elements can be served", inst.n_elements());
                    Ok(INVALID)
                }
                Err(e) => Err(e),
            }
        }
        ExactCommand::Hitset { points, rects, budget: b } => {
            let points = load_points(points)?;
            let rects = read_rects(&read(rects)?)?;
            let (opt, chosen) = opt_hitting_set(&points, &rects, &budget(b))?;
            println!("opt {opt} chosen {}", ids(&chosen));
            Ok(0)
        }
        ExactCommand::EmptyRects { points, budget: b } => {
            let count = count_all_maximal_empty_rects(&load_points(points)?, &budget(b))?;
            println!("maximal empty rectangles {count}");
            Ok(0)
        }
        ExactCommand::Verify { points, net, eps } => {
            let points = load_points(points)?;
            let value: serde_json::Value = serde_json::from_str(&read(net)?)?;
            let ids: Vec<usize> = serde_json::from_value(value.get("net").cloned().unwrap_or(value))?;
            report_check(&points, *eps, &ids)
        }
    }
}

/// One suite's CSV plus any rows that failed their hard check.
struct Table {
    file: &'static str,
    csv: String,
    failures: Vec<String>,
}

fn run_suite(suite: Suite, args: &BenchArgs) -> Result<Table, Error> {
    let seeds = &args.seeds.0;
    match suite {
        Suite::NetSize => {
            let rows = net_size_sweep(&args.eps, seeds, args.density)?;
            let mut failures: Vec<String> =
                rows.iter().filter(|r| !r.within_bound).map(|r| format!("net-size eps {}: above bound", r.eps)).collect();
            for w in rows.windows(2) {
                if w[1].ratio > 1.15 * w[0].ratio {
                    failures.push(format!("net-size eps {}: ratio grew more than 15%", w[1].eps));
                }
            }
            Ok(Table { file: "net_size.csv", csv: write_table(&rows)?, failures })
        }
        Suite::Decay => {
            let summary = decay_average(args.decay_n, args.decay_eps, seeds, args.max_j)?;
            let failures = summary
                .level_bound_violations
                .iter()
                .map(|(seed, level)| format!("decay seed {seed} level {level}: |CT_0| above 2|R| + 2r"))
                .collect();
            Ok(Table { file: "decay.csv", csv: write_table(&summary.rows)?, failures })
        }
        Suite::Ratio => {
            let rows = summarize_ratios(&greedy_ratio_suite(seeds)?);
            let failures =
                rows.iter().filter(|r| !r.within_bound).map(|r| format!("ratio n {}: above H_n", r.n)).collect();
            Ok(Table { file: "ratio.csv", csv: write_table(&rows)?, failures })
        }
        Suite::Hitting => {
            let rows = hitting_ratio_suite(seeds)?;
            let failures = rows
                .iter()
                .filter(|r| !r.valid || !r.within_bound)
                .map(|r| format!("hitting seed {}: {}", r.seed, if r.valid { "above bound" } else { "not a hitting set" }))
                .collect();
            Ok(Table { file: "hitting.csv", csv: write_table(&rows)?, failures })
        }
        Suite::All => unreachable!("expanded by the caller"),
    }
}

pub fn bench(args: &BenchArgs) -> Outcome {
    let suites = match args.suite {
        Suite::All => vec![Suite::NetSize, Suite::Decay, Suite::Ratio, Suite::Hitting],
        s => vec![s],
    };
    let tables = suites.iter().map(|&s| run_suite(s, args)).collect::<Result<Vec<_>, _>>()?;
    match (&args.out, args.suite) {
        (Some(dir), Suite::All) => {
            fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
            for t in &tables {
                write(&dir.join(t.file), &t.csv)?;
            }
        }
        (out, _) => {
            let text: String = tables.iter().map(|t| t.csv.as_str()).collect();
            emit(out.as_deref(), &text)?;
        }
    }
    let failures: Vec<&String> = tables.iter().flat_map(|t| &t.failures).collect();
    for f in &failures {
        eprintln!("FAILED {f}");
    }
    Ok(if failures.is_empty() { 0 } else { INVALID })
}
