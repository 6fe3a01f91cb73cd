//! `ordgl`: command-line front end for the ordinal, logic, topology,
//! combinatorics and bouquet modules.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ordgl::bouquet::{build_model_with, check_root, tree_rank, Model, Verdict, DEFAULT_MAX_N};
use ordgl::lab::{
    arrow_search, descending_extraction, find_homogeneous, gamma_fragment, gamma_ordinal_model,
    proof_coloring, LabError, DEFAULT_ARROW_BUDGET,
};
use ordgl::logic::{
    gl_sat_with, parse_formula, Formula, FormulaSet, SatResult, TableauConfig, DEFAULT_BUDGET,
};
use ordgl::ordinal::{classify, end_log, fundamental_seq, hyper_exp, hyper_log, Ordinal};
use ordgl::random::{random_ordinal, rng};
use ordgl::topo::{derived_set_iter, eval_formula, rank_of, RegionJson, SpaceSpec, ValuationJson};
use ordgl::Exec;

#[derive(Parser)]
#[command(
    name = "ordgl",
    version,
    about = "GL provability logic over ordinal spaces"
)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Search budget (tableau steps, or colourings for `ramsey`).
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ordinal arithmetic.
    Ord {
        #[command(subcommand)]
        op: OrdOp,
    },
    /// Decide whether a formula is a GL theorem.
    Prove { formula: String },
    /// Decide satisfiability of a comma-separated formula set.
    Sat {
        formulas: String,
        /// Print the model found.
        #[arg(long, value_enum)]
        model: Option<TreeFormat>,
    },
    /// Evaluate a formula at a point under a valuation file.
    Mc {
        formula: String,
        valuation: PathBuf,
        point: String,
    },
    /// Iterated derived set of a formula's region under a valuation file.
    Derive {
        valuation: PathBuf,
        formula: String,
        #[arg(default_value_t = 1)]
        times: usize,
    },
    /// Cantor-Bendixson rank of a point in (theta, I_lambda).
    Rank {
        point: String,
        theta: String,
        lambda: String,
    },
    /// Finite fragments of Gamma and their ordinal models.
    Gamma {
        n: u32,
        /// Show the rank-layer model.
        #[arg(long, conflicts_with_all = ["coloring", "extract"])]
        model: bool,
        /// Evaluate every fragment member at alpha.
        #[arg(long, requires = "model")]
        verify: bool,
        /// Colour pairs along the fundamental sequence, trying indices below L.
        #[arg(long, value_name = "L", conflicts_with = "extract")]
        coloring: Option<u32>,
        /// Extract a descending chain below alpha.
        #[arg(long)]
        extract: bool,
        /// Index of the fundamental sequence bounding the extraction.
        #[arg(long, default_value_t = 0, requires = "extract")]
        n_star: u64,
    },
    /// Finite partition relations.
    Ramsey {
        #[command(subcommand)]
        op: RamseyOp,
    },
    /// Bouquet models.
    Bouquet {
        #[command(subcommand)]
        op: BouquetOp,
    },
}

#[derive(Subcommand)]
enum OrdOp {
    Add {
        a: String,
        b: String,
    },
    /// The gamma with a + gamma = b.
    Sub {
        a: String,
        b: String,
    },
    Cmp {
        a: String,
        b: String,
    },
    /// End logarithm.
    Log {
        a: String,
    },
    Hlog {
        xi: String,
        a: String,
    },
    Hexp {
        n: String,
        a: String,
    },
    Cf {
        a: String,
    },
    Fund {
        a: String,
        n: u64,
    },
    /// Random ordinals from --seed.
    Rand {
        #[arg(long, default_value_t = 3)]
        height: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum RamseyOp {
    /// Does n -> (k)^2_c hold?
    Arrow { n: usize, k: usize, c: u32 },
}

#[derive(Subcommand)]
enum BouquetOp {
    Build {
        /// Formula file: one or more comma-separated formulas per line.
        #[arg(long)]
        input: PathBuf,
        /// Check every input formula at the root, sampling K children.
        #[arg(long, value_name = "K")]
        check: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: u64,
        /// Export the model.
        #[arg(long, value_enum)]
        export: Option<TreeFormat>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeFormat {
    Dot,
    Json,
}

/// Exit status of a successful run: 0 for yes/holds, 1 for no/fails.
enum Answer {
    Yes,
    No,
}

type Outcome = Result<Answer, String>;

fn answer(b: bool) -> Answer {
    if b {
        Answer::Yes
    } else {
        Answer::No
    }
}

fn ordinal(s: &str) -> Result<Ordinal, String> {
    s.parse().map_err(|e| format!("ordinal {s:?}: {e}"))
}

fn formula(s: &str) -> Result<Formula, String> {
    parse_formula(s).map_err(|e| format!("formula {s:?}: {e}"))
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn valuation(path: &Path) -> Result<ordgl::topo::OrdinalValuation, String> {
    let text = read(path)?;
    let j: ValuationJson = serde_json::from_str(&text)
        .map_err(|e| format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))?;
    j.to_valuation()
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(cli: &Cli, text: impl std::fmt::Display, value: serde_json::Value) {
    if cli.json {
        println!("{value}");
    } else {
        println!("{text}");
    }
}

fn config(cli: &Cli) -> TableauConfig {
    TableauConfig {
        budget: cli.budget.unwrap_or(DEFAULT_BUDGET),
    }
}

fn run_ord(cli: &Cli, op: &OrdOp) -> Outcome {
    let show = |o: Ordinal| emit(cli, &o, json!({ "result": o.to_string() }));
    match op {
        OrdOp::Add { a, b } => show(ordinal(a)?.add(&ordinal(b)?)),
        OrdOp::Sub { a, b } => show(
            ordinal(a)?
                .left_sub(&ordinal(b)?)
                .map_err(|e| e.to_string())?,
        ),
        OrdOp::Cmp { a, b } => {
            let sym = match ordinal(a)?.cmp(&ordinal(b)?) {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            emit(cli, sym, json!({ "result": sym }));
        }
        OrdOp::Log { a } => show(end_log(&ordinal(a)?)),
        OrdOp::Hlog { xi, a } => show(hyper_log(&ordinal(xi)?, &ordinal(a)?)),
        OrdOp::Hexp { n, a } => {
            show(hyper_exp(&ordinal(n)?, &ordinal(a)?).map_err(|e| e.to_string())?)
        }
        OrdOp::Cf { a } => {
            let cf = classify(&ordinal(a)?);
            emit(cli, cf, json!({ "result": cf.to_string() }));
        }
        OrdOp::Fund { a, n } => show(fundamental_seq(&ordinal(a)?, *n).map_err(|e| e.to_string())?),
        OrdOp::Rand { height, count } => {
            let mut r = rng(cli.seed);
            let out: Vec<String> = (0..*count)
                .map(|_| random_ordinal(&mut r, *height, 3, 4).to_string())
                .collect();
            emit(cli, out.join("\n"), json!({ "result": out }));
        }
    }
    Ok(Answer::Yes)
}

fn print_tree(model: &ordgl::logic::KripkeTree, format: TreeFormat) {
    match format {
        TreeFormat::Dot => print!("{}", model.to_dot()),
        TreeFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&model.to_json()).expect("tree json")
        ),
    }
}

fn run_sat(
    cli: &Cli,
    gamma: &FormulaSet,
    model_format: Option<TreeFormat>,
    negate: bool,
) -> Outcome {
    let result = gl_sat_with(gamma, config(cli)).map_err(|e| e.to_string())?;
    let sat = result.is_sat();
    let word = match (negate, sat) {
        (true, true) => "not valid",
        (true, false) => "valid",
        (false, true) => "sat",
        (false, false) => "unsat",
    };
    match &result {
        SatResult::Sat { model, witness } if cli.json => println!(
            "{}",
            json!({ "result": word, "witness": witness, "model": model.to_json() })
        ),
        SatResult::Sat { model, .. } => {
            println!("{word}");
            if let Some(f) = model_format {
                print_tree(model, f);
            }
        }
        SatResult::Unsat => emit(cli, word, json!({ "result": word })),
    }
    Ok(answer(sat != negate))
}

fn run_gamma(
    cli: &Cli,
    n: u32,
    model: bool,
    verify: bool,
    coloring: Option<u32>,
    extract: bool,
    n_star: u64,
) -> Outcome {
    let lab = |e: LabError| e.to_string();
    let fragment = gamma_fragment(n);
    if !model && coloring.is_none() && !extract {
        let list: Vec<String> = fragment.iter().map(ToString::to_string).collect();
        emit(cli, list.join("\n"), json!({ "formulas": list }));
        return Ok(Answer::Yes);
    }
    let m = gamma_ordinal_model(n).map_err(lab)?;
    let space = m.space();
    if model {
        let mut lines = vec![
            format!("theta: {}", space.theta),
            format!("lambda: {}", space.lambda),
            format!("alpha: {}", m.alpha),
        ];
        for (i, r) in m.valuation.props() {
            lines.push(format!("p{i}: {r}"));
        }
        let mut failing = Vec::new();
        if verify {
            for phi in &fragment {
                let ok = eval_formula(phi, &m.valuation)
                    .and_then(|r| r.member(&m.alpha))
                    .map_err(|e| e.to_string())?;
                lines.push(format!("{}: {phi}", if ok { "holds" } else { "fails" }));
                if !ok {
                    failing.push(phi.to_string());
                }
            }
            if failing.is_empty() {
                lines.push(format!("all {} formulas hold", fragment.len()));
            }
        }
        let props: serde_json::Map<String, serde_json::Value> = m
            .valuation
            .props()
            .iter()
            .map(|(i, r)| {
                (
                    format!("p{i}"),
                    serde_json::to_value(RegionJson::from_region(r)).expect("region json"),
                )
            })
            .collect();
        emit(
            cli,
            lines.join("\n"),
            json!({
                "theta": space.theta.to_string(),
                "lambda": space.lambda.to_string(),
                "alpha": m.alpha.to_string(),
                "props": props,
                "verified": verify,
                "failing": failing,
            }),
        );
        return Ok(answer(failing.is_empty()));
    }
    if let Some(limit) = coloring {
        let c = match proof_coloring(&m.valuation, &m.alpha, n as usize, limit) {
            Ok(c) => c,
            Err(e @ LabError::NoBound { .. }) => {
                emit(
                    cli,
                    format!("no bound: {e}"),
                    json!({ "error": e.to_string() }),
                );
                return Ok(Answer::No);
            }
            Err(e) => return Err(e.to_string()),
        };
        let w = find_homogeneous(&c, 3.min(n as usize));
        let mut lines: Vec<String> = Vec::new();
        for j in 1..c.n() {
            for i in 0..j {
                lines.push(format!("c({i},{j}) = {}", c.get(i, j)));
            }
        }
        if let Some(w) = &w {
            let s: Vec<String> = w.subset.iter().map(ToString::to_string).collect();
            lines.push(format!(
                "homogeneous: {{{}}} colour {}",
                s.join(", "),
                w.color
            ));
        }
        emit(
            cli,
            lines.join("\n"),
            json!({ "coloring": c.to_json(), "homogeneous": w }),
        );
        return Ok(Answer::Yes);
    }
    let indices: Vec<u32> = (0..n).collect();
    let chain = descending_extraction(&m.valuation, &m.alpha, &indices, n_star, indices.len())
        .map_err(lab)?;
    let lines: Vec<String> = chain
        .iter()
        .enumerate()
        .map(|(k, (b, i))| format!("beta_{k} = {b} (p{i})"))
        .collect();
    let items: Vec<_> = chain
        .iter()
        .map(|(b, i)| json!({ "beta": b.to_string(), "index": i }))
        .collect();
    emit(cli, lines.join("\n"), json!({ "chain": items }));
    Ok(Answer::Yes)
}

fn read_formula_file(path: &Path) -> Result<FormulaSet, String> {
    let text = read(path)?;
    let mut gamma = FormulaSet::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let set = FormulaSet::parse_list(line)
            .map_err(|e| format!("{}:{}: {e}", path.display(), no + 1))?;
        gamma = gamma.union(&set);
    }
    Ok(gamma)
}

fn verdict_line(phi: &Formula, v: &Verdict) -> String {
    match v {
        Verdict::Holds(_) => format!("holds: {phi}"),
        Verdict::Fails(_) => format!("fails: {phi}"),
        Verdict::Unverified(why) => format!("unverified: {phi} ({why})"),
    }
}

fn run_bouquet(
    cli: &Cli,
    input: &Path,
    check: Option<u64>,
    max_n: u64,
    export: Option<TreeFormat>,
) -> Outcome {
    let gamma = read_formula_file(input)?;
    let m = build_model_with(&gamma, max_n, config(cli)).map_err(|e| e.to_string())?;
    let kind = match &m {
        Model::Finite(_) => "finite",
        Model::Bouquet(_) => "bouquet",
    };
    let rank = tree_rank(&m);
    let k = check.unwrap_or(0);
    let verdicts: Vec<(Formula, Verdict)> = match check {
        Some(k) => gamma
            .iter()
            .map(|phi| (phi.clone(), check_root(&m, phi, k)))
            .collect(),
        None => Vec::new(),
    };
    let all_hold = verdicts.iter().all(|(_, v)| v.holds());
    if cli.json {
        let model = m.to_json(k.max(1)).map_err(|e| e.to_string())?;
        let checks: Vec<_> = verdicts
            .iter()
            .map(|(phi, v)| json!({ "formula": phi.to_string(), "verdict": v }))
            .collect();
        println!(
            "{}",
            json!({ "kind": kind, "rank": rank.to_string(), "model": model, "checks": checks })
        );
    } else {
        println!("model: {kind}");
        println!("rank: {rank}");
        for (phi, v) in &verdicts {
            println!("{}", verdict_line(phi, v));
        }
        match export {
            Some(TreeFormat::Dot) => print!("{}", m.to_dot(k.max(1)).map_err(|e| e.to_string())?),
            Some(TreeFormat::Json) => println!(
                "{}",
                serde_json::to_string_pretty(&m.to_json(k.max(1)).map_err(|e| e.to_string())?)
                    .expect("model json")
            ),
            None => {}
        }
    }
    Ok(answer(all_hold))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Ord { op } => run_ord(cli, op),
        Command::Prove { formula: f } => {
            let phi = formula(f)?;
            run_sat(cli, &FormulaSet::singleton(Formula::not(phi)), None, true)
        }
        Command::Sat { formulas, model } => {
            let gamma = FormulaSet::parse_list(formulas)
                .map_err(|e| format!("formulas {formulas:?}: {e}"))?;
            run_sat(cli, &gamma, *model, false)
        }
        Command::Mc {
            formula: f,
            valuation: path,
            point,
        } => {
            let v = valuation(path)?;
            let phi = formula(f)?;
            let p = ordinal(point)?;
            let ok = eval_formula(&phi, &v)
                .and_then(|r| r.member(&p))
                .map_err(|e| e.to_string())?;
            emit(cli, ok, json!({ "result": ok }));
            Ok(answer(ok))
        }
        Command::Derive {
            valuation: path,
            formula: f,
            times,
        } => {
            let v = valuation(path)?;
            let r = eval_formula(&formula(f)?, &v).map_err(|e| e.to_string())?;
            let d = derived_set_iter(&r, *times);
            emit(cli, &d, json!({ "result": RegionJson::from_region(&d) }));
            Ok(Answer::Yes)
        }
        Command::Rank {
            point,
            theta,
            lambda,
        } => {
            let space =
                SpaceSpec::new(ordinal(theta)?, ordinal(lambda)?).map_err(|e| e.to_string())?;
            let r = rank_of(&ordinal(point)?, &space).map_err(|e| e.to_string())?;
            emit(cli, &r, json!({ "result": r.to_string() }));
            Ok(Answer::Yes)
        }
        Command::Gamma {
            n,
            model,
            verify,
            coloring,
            extract,
            n_star,
        } => run_gamma(cli, *n, *model, *verify, *coloring, *extract, *n_star),
        Command::Ramsey {
            op: RamseyOp::Arrow { n, k, c },
        } => {
            let budget = cli.budget.unwrap_or(DEFAULT_ARROW_BUDGET);
            let bad =
                arrow_search(*n, *k, *c, budget, Exec::default()).map_err(|e| e.to_string())?;
            let holds = bad.is_none();
            let text = match &bad {
                None => "true".to_string(),
                Some(c) => format!(
                    "false\ncounterexample: {}",
                    serde_json::to_string(&c.to_json()).expect("coloring json")
                ),
            };
            emit(
                cli,
                text,
                json!({ "result": holds, "counterexample": bad.map(|c| c.to_json()) }),
            );
            Ok(answer(holds))
        }
        Command::Bouquet {
            op:
                BouquetOp::Build {
                    input,
                    check,
                    max_n,
                    export,
                },
        } => run_bouquet(cli, input, *check, *max_n, *export),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Answer::Yes) => ExitCode::SUCCESS,
        Ok(Answer::No) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
