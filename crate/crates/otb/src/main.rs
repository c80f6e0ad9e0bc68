use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use otb::claims::verify_catalog_claims;
use otb::planfile::{parse_plan, serialize_plan};
use otb::report::{estimability_tsv, plan_header, relations_tsv, search_tsv};
use otb_core::catalog::{catalog, catalog_subspace};
use otb_core::expansion::expand;
use otb_core::linmodel::estimable_pencils;
use otb_core::relations::{relation_matrix, PairRelation};
use otb_core::search::{candidates, rank_scores, score_subspace};
use otb_core::{EffectModel, Pencil, Plan, Subspace};

#[derive(Parser)]
#[command(name = "otb", version, about = "Blocked fractional factorial plans over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelFlag {
    #[value(name = "mains")]
    Mains,
    #[value(name = "mains+2fi")]
    MainsAnd2fi,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a plan by a subspace and write the result as a plan file.
    Expand {
        /// Plan file, or `catalog:<name>`.
        #[arg(long)]
        plan: String,
        /// Basis digit strings joined by `;`, or `catalog:<name>`.
        #[arg(long)]
        subspace: String,
        /// Output path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Relation flags of two effects.
    Check {
        #[arg(long)]
        plan: String,
        a: String,
        b: String,
    },
    /// Relation matrix and estimability of a model.
    Report {
        #[arg(long)]
        plan: String,
        /// Expand the plan first.
        #[arg(long)]
        subspace: Option<String>,
        #[arg(long, value_enum, default_value = "mains+2fi")]
        model: ModelFlag,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score every expansion subspace of dimension `t`.
    Search {
        #[arg(long)]
        plan: String,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 10)]
        limit: usize,
        #[arg(long, value_enum, default_value = "mains+2fi")]
        model: ModelFlag,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the structure stated for every catalog plan.
    VerifyPaper {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

fn load_plan(arg: &str) -> Result<Plan, Failure> {
    if let Some(name) = arg.strip_prefix("catalog:") {
        return catalog(name).map(|e| e.plan).map_err(usage);
    }
    let text = fs::read_to_string(arg).map_err(|e| usage(format!("{arg}: {e}")))?;
    parse_plan(&text).map_err(|e| usage(format!("{arg}: {e}")))
}

fn load_subspace(arg: &str, plan: &Plan) -> Result<Subspace, Failure> {
    let v = match arg.strip_prefix("catalog:") {
        Some(name) => catalog_subspace(name),
        None => Subspace::parse(plan.field(), plan.m(), arg),
    }
    .map_err(|e| usage(format!("subspace {arg:?}: {e}")))?;
    if v.ambient_dim() != plan.m() {
        return Err(usage(format!("subspace {arg:?} does not live in a space of dimension {}", plan.m())));
    }
    Ok(v)
}

fn model_for(flag: ModelFlag, plan: &Plan) -> EffectModel {
    match flag {
        ModelFlag::Mains => EffectModel::mains(plan.m(), plan.field()),
        ModelFlag::MainsAnd2fi => EffectModel::mains_and_2fi(plan.m(), plan.field()),
    }
}

fn emit(out: Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(&path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Expand { plan, subspace, out } => {
            let base = load_plan(&plan)?;
            let v = load_subspace(&subspace, &base)?;
            let expanded = expand(&base, &v).map_err(usage)?;
            emit(out, &serialize_plan(&expanded).map_err(usage)?)
        }
        Command::Check { plan, a, b } => {
            let plan = load_plan(&plan)?;
            let parse = |n: &str| Pencil::parse(n, plan.m(), plan.field()).map_err(|e| usage(format!("{n:?}: {e}")));
            let (a, b) = (parse(&a)?, parse(&b)?);
            let rel = PairRelation::compute(&plan, &a, &b).map_err(usage)?;
            println!("{}", rel.flags());
            Ok(())
        }
        Command::Report {
            plan,
            subspace,
            model,
            out,
        } => {
            let mut plan = load_plan(&plan)?;
            if let Some(s) = subspace {
                let v = load_subspace(&s, &plan)?;
                plan = expand(&plan, &v).map_err(usage)?;
            }
            let model = model_for(model, &plan);
            let rm = relation_matrix(&plan, &model).map_err(usage)?;
            let est = estimable_pencils(&plan, &model).map_err(usage)?;
            let mut text = plan_header(&plan);
            text.push_str(&relations_tsv(&rm));
            text.push_str(&estimability_tsv(&est));
            emit(out, &text)
        }
        Command::Search {
            plan,
            t,
            limit,
            model,
            out,
        } => {
            let plan = load_plan(&plan)?;
            let model = model_for(model, &plan);
            let cands = candidates(&plan, t).map_err(usage)?;
            let scores = cands
                .par_iter()
                .map(|v| score_subspace(&plan, v, &model))
                .collect::<Result<Vec<_>, _>>()
                .map_err(usage)?;
            let mut text = plan_header(&plan);
            text.push_str(&format!("# t={} candidates={}\n", t, cands.len()));
            text.push_str(&search_tsv(&rank_scores(scores, limit)));
            emit(out, &text)
        }
        Command::VerifyPaper { out } => {
            let report = verify_catalog_claims();
            emit(out, &report.to_tsv())?;
            match report.failures() {
                0 => Ok(()),
                n => Err(Failure {
                    code: 1,
                    message: format!("{n} claim(s) failed"),
                }),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("otb: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
