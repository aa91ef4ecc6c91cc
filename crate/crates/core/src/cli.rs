//! Command line front end. `main` only forwards to [`run`].

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::bench::{self, BenchParams, CSV_HEADER};
use crate::error::{Error, Result, EXIT_INVALID_INPUT, EXIT_OK};
use crate::instance::{self, Instance};
use crate::model::{tally, validate, Election, Manipulation, RecountSet, Rule, Tally};
use crate::reductions::{
    gen_is_pd_rec, gen_partition_pv_recreg, gen_random, gen_sss_pd_man, gen_subsetsum_pv_man,
    gen_subsetsum_pv_rec, gen_x3c_pv_rec, random_manipulation, GammaMode, Graph, RandomParams,
};
use crate::report::{scores_json, SolveReport};
use crate::solve::{solve_man, solve_rec, ManAlgo, RecAlgo};

#[derive(Parser, Debug)]
#[command(name = "recount", version, about = "Attack and recount solvers for district elections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tally an instance: true outcome, distorted outcome, optional recount.
    Eval {
        file: PathBuf,
        /// Comma separated districts to recount.
        #[arg(long, value_delimiter = ',')]
        recount: Option<Vec<usize>>,
    },
    /// Run a solver.
    #[command(subcommand)]
    Solve(Solve),
    /// Write a generated instance.
    Gen {
        #[command(subcommand)]
        kind: Gen,
        /// Output file instead of standard output.
        #[arg(long, short, global = true)]
        out: Option<PathBuf>,
    },
    /// Benchmark greedy recounting against the optimal defender (CSV).
    Bench(BenchArgs),
}

#[derive(Subcommand, Debug)]
enum Solve {
    /// Defender: recount the instance's manipulation.
    Rec {
        file: PathBuf,
        /// Decide whether this candidate can be made the winner; without it
        /// the defender's best response is computed.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, value_enum, default_value_t = RecAlgo::Dp)]
        algo: RecAlgo,
        /// Recount budget, defaults to the instance's defender budget.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        timing: bool,
    },
    /// Attacker: search for a manipulation that survives the defender.
    Man {
        file: PathBuf,
        /// Only consider regular manipulations.
        #[arg(long)]
        regular: bool,
        #[arg(long, value_enum, default_value_t = ManAlgo::Auto)]
        algo: ManAlgo,
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Subcommand, Debug)]
enum Gen {
    /// PV recount from Subset Sum.
    SubsetSumRec {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        xs: Vec<i64>,
        /// PD with weights equal to district sizes.
        #[arg(long)]
        weighted: bool,
    },
    /// PV recount from exact cover by 3-sets.
    X3c {
        #[arg(long)]
        ell: usize,
        /// Sets such as `1-2-3,4-5-6`.
        #[arg(long, value_delimiter = ',', value_parser = parse_triple, required = true)]
        sets: Vec<[usize; 3]>,
    },
    /// PV attacker from Subset Sum.
    SubsetSumMan {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        xs: Vec<i64>,
    },
    /// Weighted PD recount from Independent Set.
    IndependentSet {
        #[arg(long)]
        nodes: usize,
        /// Edges such as `0-1,1-2`.
        #[arg(long, value_delimiter = ',', value_parser = parse_edge, required = true)]
        edges: Vec<(usize, usize)>,
        #[arg(long)]
        ell: usize,
    },
    /// PD attacker from Sub-Subset Sum.
    Sss {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        xs: Vec<i64>,
        #[arg(long)]
        ell: usize,
    },
    /// Regular PV recount from Partition.
    Partition {
        #[arg(long, value_delimiter = ',', required = true)]
        xs: Vec<i64>,
        #[arg(long)]
        epsilon: f64,
    },
    /// Seeded random instance.
    Random {
        #[command(flatten)]
        params: RandomArgs,
        #[arg(long)]
        seed: u64,
        /// Also sample a manipulation of at most this many districts.
        #[arg(long)]
        manipulation: Option<usize>,
        /// Sample a regular manipulation.
        #[arg(long, requires = "manipulation")]
        regular: bool,
    },
}

#[derive(Args, Debug, Clone)]
struct RandomArgs {
    #[arg(long, default_value = "pd")]
    rule: Rule,
    /// Districts.
    #[arg(long, default_value_t = 6)]
    k: usize,
    /// Candidates.
    #[arg(long, default_value_t = 3)]
    m: usize,
    #[arg(long, default_value_t = 5)]
    n_max: i64,
    #[arg(long, default_value_t = 10)]
    w_max: i64,
    #[arg(long, default_value = "full")]
    gamma: GammaMode,
    #[arg(long, default_value_t = 3)]
    budget_attacker: usize,
    #[arg(long, default_value_t = 1)]
    budget_defender: usize,
}

impl RandomArgs {
    fn params(&self) -> RandomParams {
        RandomParams {
            rule: self.rule,
            k: self.k,
            m: self.m,
            n_max: self.n_max,
            w_max: self.w_max,
            gamma: self.gamma,
            budget_attacker: self.budget_attacker,
            budget_defender: self.budget_defender,
        }
    }
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    trials: usize,
    #[command(flatten)]
    params: RandomArgs,
    /// Sample regular manipulations.
    #[arg(long)]
    regular: bool,
    /// Most districts a sampled attack touches, defaults to the attacker budget.
    #[arg(long)]
    max_manipulated: Option<usize>,
    /// Worker threads, 0 for one per core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn parse_triple(s: &str) -> std::result::Result<[usize; 3], String> {
    let parts: Vec<&str> = s.split('-').collect();
    let bad = || format!("expected three elements like 1-2-3, got `{s}`");
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut out = [0; 3];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.parse().map_err(|_| bad())?;
    }
    Ok(out)
}

fn parse_edge(s: &str) -> std::result::Result<(usize, usize), String> {
    let bad = || format!("expected an edge like 0-1, got `{s}`");
    let (u, v) = s.split_once('-').ok_or_else(bad)?;
    Ok((u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?))
}

/// Parses `args` (program name first) and runs the command, writing results
/// to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Eval { file, recount } => {
            let inst = load(&file)?;
            print_json(out, &eval(&inst, recount)?)
        }
        Command::Solve(Solve::Rec { file, target, algo, budget, timing }) => {
            let inst = load(&file)?;
            let value = cmd_rec(&inst, target.as_deref(), algo, budget, timing)?;
            print_json(out, &value)
        }
        Command::Solve(Solve::Man { file, regular, algo, timing }) => {
            let inst = load(&file)?;
            print_json(out, &cmd_man(&inst, regular, algo, timing)?)
        }
        Command::Gen { kind, out: path } => {
            let text = generate(kind)?;
            match path {
                Some(p) => fs::write(&p, text).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
                None => emit(out, text.as_bytes()),
            }
        }
        Command::Bench(args) => run_bench(&args, out),
    }
}

fn emit(out: &mut dyn Write, bytes: &[u8]) -> Result<()> {
    out.write_all(bytes).map_err(|e| Error::Internal(format!("write failed: {e}")))
}

fn print_json(out: &mut dyn Write, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    emit(out, text.as_bytes())
}

fn load(path: &PathBuf) -> Result<Instance> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    instance::parse(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn need_manipulation(inst: &Instance) -> Result<&Manipulation> {
    inst.manipulation
        .as_ref()
        .ok_or_else(|| Error::Parse("the instance has no manipulation".into()))
}

fn outcome_json(e: &Election, m: Option<&Manipulation>, r: Option<&RecountSet>) -> Result<Value> {
    let t = tally(e, m, r)?;
    Ok(json!({ "scores": scores_json(e, &t.scores), "winner": e.candidate_name(t.winner) }))
}

fn eval(inst: &Instance, recount: Option<Vec<usize>>) -> Result<Value> {
    let e = &inst.election;
    let mut v = json!({
        "rule": e.rule().as_str(),
        "true": outcome_json(e, None, None)?,
    });
    if let Some(m) = &inst.manipulation {
        v["distorted"] = outcome_json(e, Some(m), None)?;
        v["regular"] = json!(e.preferred().is_some() && validate(e, m, true).is_ok());
    }
    if let Some(list) = recount {
        let m = need_manipulation(inst)?;
        let r: RecountSet = list.into_iter().collect();
        r.validate(m, e.num_districts())?;
        v["recounted"] = outcome_json(e, Some(m), Some(&r))?;
    }
    Ok(v)
}

fn report_json(e: &Election, report: &SolveReport, replay: Option<Tally>, timing: bool) -> Value {
    let mut v = report.to_json(e);
    v["scores"] = json!(replay.map(|t| scores_json(e, &t.scores)));
    if timing {
        v["stats"]["elapsed_ms"] = json!(report.stats.elapsed.as_secs_f64() * 1e3);
    }
    v
}

fn cmd_rec(inst: &Instance, target: Option<&str>, algo: RecAlgo, budget: Option<usize>, timing: bool) -> Result<Value> {
    let e = &inst.election;
    let budget = budget.unwrap_or(e.budget_defender());
    let target = target.map(|t| e.resolve(t)).transpose()?;
    let (report, replay) = solve_rec(e, inst.manipulation.as_ref(), target, algo, budget)?;
    let mut v = report_json(e, &report, replay, timing);
    v["target"] = json!(target.map(|t| e.candidate_name(t)));
    v["budget"] = json!(budget);
    Ok(v)
}

fn cmd_man(inst: &Instance, regular: bool, algo: ManAlgo, timing: bool) -> Result<Value> {
    let e = &inst.election;
    let (report, replay) = solve_man(e, inst.manipulation.as_ref(), regular, algo)?;
    let mut v = report_json(e, &report, replay, timing);
    v["attacker_wins"] = json!(report.decision);
    v["preferred"] = json!(e.preferred().map(|p| e.candidate_name(p)));
    Ok(v)
}

fn generate(kind: Gen) -> Result<String> {
    let (e, m) = match kind {
        Gen::SubsetSumRec { xs, weighted } => {
            let (e, m) = gen_subsetsum_pv_rec(&xs, weighted)?;
            (e, Some(m))
        }
        Gen::X3c { ell, sets } => {
            let (e, m) = gen_x3c_pv_rec(ell, &sets)?;
            (e, Some(m))
        }
        Gen::SubsetSumMan { xs } => (gen_subsetsum_pv_man(&xs)?, None),
        Gen::IndependentSet { nodes, edges, ell } => {
            let (e, m) = gen_is_pd_rec(&Graph::new(nodes, edges)?, ell)?;
            (e, Some(m))
        }
        Gen::Sss { xs, ell } => (gen_sss_pd_man(&xs, ell)?, None),
        Gen::Partition { xs, epsilon } => {
            let (e, m) = gen_partition_pv_recreg(&xs, epsilon)?;
            (e, Some(m))
        }
        Gen::Random { params, seed, manipulation, regular } => {
            let e = gen_random(&params.params(), seed)?;
            let m = match manipulation {
                Some(size) => Some(random_manipulation(&e, size, regular, seed)?),
                None => None,
            };
            (e, m)
        }
    };
    Ok(instance::to_string(&e, m.as_ref()))
}

fn run_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<()> {
    let instance = args.params.params();
    let params = BenchParams {
        seed: args.seed,
        trials: args.trials,
        instance,
        regular: args.regular,
        max_manipulated: args.max_manipulated.unwrap_or(instance.budget_attacker),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let rows = pool.install(|| bench::run(&params))?;
    let mut text = String::from(CSV_HEADER);
    text.push('\n');
    for row in &rows {
        text.push_str(&bench::csv_line(&params, row));
        text.push('\n');
    }
    emit(out, text.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("recount").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn gen_random_is_deterministic() {
        let args = ["gen", "random", "--seed", "7", "--k", "5", "--manipulation", "3", "--regular"];
        let (code, a, _) = call(&args);
        assert_eq!(code, 0);
        assert_eq!(call(&args).1, a);
        assert!(instance::parse(&a).unwrap().manipulation.is_some());
    }

    #[test]
    fn bad_flags_are_invalid_input() {
        assert_eq!(call(&["solve", "rec"]).0, EXIT_INVALID_INPUT);
        assert_eq!(call(&["gen", "x3c", "--ell", "1", "--sets", "1-2"]).0, EXIT_INVALID_INPUT);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn generator_preconditions_exit_4() {
        let (code, _, err) = call(&["gen", "sss", "--xs=1,1", "--ell", "1"]);
        assert_eq!(code, 4);
        assert!(err.contains("distinct"));
    }

    #[test]
    fn missing_file_is_invalid_input() {
        assert_eq!(call(&["eval", "/nonexistent/instance.json"]).0, EXIT_INVALID_INPUT);
    }
}
