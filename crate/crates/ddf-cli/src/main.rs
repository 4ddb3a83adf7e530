//! Command-line driver: constructions, verification, invariants,
//! isomorphism testing and the one-shot reproduction suite.
//!
//! Element indexing conventions (also emitted in every JSON header):
//! field groups use index 0 = zero and index 1+t = α^t; ring groups use the
//! packed base-p² coefficient code, constant term least significant.
//!
//! Exit codes: 0 ok, 2 parameter error, 3 io/parse error, 4 budget
//! exceeded, 5 check failure.

mod reproduce;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ddf::io::{
    group_from_desc, AutJson, DesignJson, FamilyJson, IsoJson, ProfileJson, RankJson, VerifyJson,
    WitnessJson, INDEXING_NOTE,
};
use ddf::verify::{check_edf_ddf_bridge, is_relative_difference_set};
use ddf::*;

type CliResult<T> = std::result::Result<T, CliError>;

const EXIT_PARAMS: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_CHECK: u8 = 5;

#[derive(Parser)]
#[command(name = "ddf", version, about = "Difference families, their 2-designs, and isomorphism invariants")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Size of the rayon thread pool for profile computations (0 = default).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct BudgetArg {
    /// Canonical-form search budget: maximum number of blocks (points are
    /// capped at min(budget, 128)). Defaults to 128 points / 512 blocks.
    #[arg(long)]
    budget: Option<usize>,
}

impl BudgetArg {
    fn to_budget(&self) -> Budget {
        match self.budget {
            None => Budget::default(),
            Some(b) => Budget { max_points: b.min(128), max_blocks: b },
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Build one of the three families and emit it as JSON.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Check a family file for the ddf/edf/difference-set/bridge properties.
    Verify {
        family: PathBuf,
        #[arg(long, value_enum)]
        kind: VerifyKind,
    },
    /// Develop a family file into its translate 2-design.
    Develop { family: PathBuf },
    /// Block intersection profile of a design file.
    Profile { design: PathBuf },
    /// Rank of the incidence matrix of a design file over GF(p).
    Rank {
        design: PathBuf,
        #[arg(long)]
        p: u64,
    },
    /// Test two design files for isomorphism.
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Automorphism group order of a design file.
    Aut {
        design: PathBuf,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Run the full reproduction suite and emit a pass/fail table.
    Reproduce {
        /// Only run checks whose id or claim contains this string.
        #[arg(long)]
        only: Option<String>,
        #[command(flatten)]
        budget: BudgetArg,
        /// Seed for the randomized relabeling checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Cyclotomic cosets of index e in GF(p^m).
    Wilson {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        e: u64,
    },
    /// The (p^{4n}, (p^{2n}+1)(p^n-1), k-1)-DDF in GR(p^2, 2n).
    Momihara {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
    },
    /// The (p^{2r}, p^r-1, p^r-2)-DDF in GR(p^2, r).
    Davis {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Ddf,
    Edf,
    /// Union of the blocks as a single difference set.
    Ds,
    /// The λ_edf = λ_ds − λ_ddf relation for near-complete families.
    Bridge,
    /// First block as a relative difference set; forbidden subgroup is the
    /// maximal ideal (ring families only).
    Rds,
}

struct CliError {
    code: u8,
    msg: String,
}

impl CliError {
    fn new(code: u8, msg: impl Into<String>) -> CliError {
        CliError { code, msg: msg.into() }
    }
}

/// Library errors signal bad parameters unless they are budget errors.
impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_PARAMS,
        };
        CliError::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn load_family(path: &Path) -> CliResult<BlockFamily> {
    let doc: FamilyJson = read_json(path)?;
    doc.into_family()
        .map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn load_design(path: &Path) -> CliResult<Design> {
    let doc: DesignJson = read_json(path)?;
    doc.into_design()
        .map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(doc: &T, out: &Option<PathBuf>, format: Format) -> CliResult<()> {
    let value = serde_json::to_value(doc).expect("output types serialize");
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
            s.push('\n');
            s
        }
        Format::Table => render_table(&value),
    };
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display()))),
    }
}

/// Flat human rendering of the JSON document: one `key: value` row per
/// top-level field, nested values in compact JSON.
fn render_table(value: &serde_json::Value) -> String {
    let mut rows = Vec::new();
    match value {
        serde_json::Value::Object(map) => {
            let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
            for (key, val) in map {
                let rendered = match val {
                    serde_json::Value::String(s) => s.clone(),
                    other => serde_json::to_string(other).expect("value serializes"),
                };
                rows.push(format!("{key:width$}  {rendered}"));
            }
        }
        other => rows.push(serde_json::to_string(other).expect("value serializes")),
    }
    rows.push(String::new());
    rows.join("\n")
}

fn run(cli: Cli) -> CliResult<u8> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| CliError::new(EXIT_PARAMS, e.to_string()))?;
    }
    match cli.cmd {
        Cmd::Construct { kind } => {
            let fam = match kind {
                ConstructKind::Wilson { p, m, e } => wilson_family(p, m, e)?,
                ConstructKind::Momihara { p, n } => momihara_family(p, n)?,
                ConstructKind::Davis { p, r } => davis_family(p, r)?,
            };
            emit(&FamilyJson::from_family(&fam), &cli.out, cli.format)?;
            Ok(0)
        }
        Cmd::Verify { family, kind } => {
            let fam = load_family(&family)?;
            let doc = verify_doc(&fam, kind)?;
            let holds = doc.holds;
            emit(&doc, &cli.out, cli.format)?;
            Ok(if holds { 0 } else { EXIT_CHECK })
        }
        Cmd::Develop { family } => {
            let fam = load_family(&family)?;
            let design = develop(&fam);
            let lambda = verify_2design(&design).ok();
            emit(&DesignJson::from_design(&design, lambda), &cli.out, cli.format)?;
            Ok(0)
        }
        Cmd::Profile { design } => {
            let d = load_design(&design)?;
            let profile = intersection_profile(&d);
            emit(&ProfileJson::new(&d.origin, &profile), &cli.out, cli.format)?;
            Ok(0)
        }
        Cmd::Rank { design, p } => {
            let d = load_design(&design)?;
            let rank = incidence_p_rank(&d, p)?;
            let doc = RankJson {
                indexing: INDEXING_NOTE.into(),
                origin: d.origin.clone(),
                ell: p,
                rank,
            };
            emit(&doc, &cli.out, cli.format)?;
            Ok(0)
        }
        Cmd::Iso { first, second, budget } => {
            let d1 = load_design(&first)?;
            let d2 = load_design(&second)?;
            let doc = match are_isomorphic(&d1, &d2, &budget.to_budget())? {
                IsoOutcome::Isomorphic(map) => IsoJson {
                    indexing: INDEXING_NOTE.into(),
                    isomorphic: true,
                    bijection: Some(map),
                },
                IsoOutcome::NotIsomorphic => IsoJson {
                    indexing: INDEXING_NOTE.into(),
                    isomorphic: false,
                    bijection: None,
                },
            };
            emit(&doc, &cli.out, cli.format)?;
            Ok(0)
        }
        Cmd::Aut { design, budget } => {
            let d = load_design(&design)?;
            let order = automorphism_group_order(&d, &budget.to_budget())?;
            let doc = AutJson {
                indexing: INDEXING_NOTE.into(),
                origin: d.origin.clone(),
                order,
            };
            emit(&doc, &cli.out, cli.format)?;
            Ok(0)
        }
        Cmd::Reproduce { only, budget, seed } => {
            let suite = reproduce::Suite { budget: budget.to_budget(), seed, only };
            let report = reproduce::run(&suite);
            let (failed, skipped) = (report.failed, report.skipped);
            emit(&report, &cli.out, cli.format)?;
            Ok(if failed > 0 {
                EXIT_CHECK
            } else if skipped > 0 {
                EXIT_BUDGET
            } else {
                0
            })
        }
    }
}

fn verify_doc(fam: &BlockFamily, kind: VerifyKind) -> CliResult<VerifyJson> {
    let mut doc = VerifyJson {
        indexing: INDEXING_NOTE.into(),
        kind: String::new(),
        label: fam.label.clone(),
        holds: false,
        lambda: None,
        witness: None,
        values: Default::default(),
    };
    let fill = |doc: &mut VerifyJson, u: &ddf::verify::Uniformity| match *u {
        Uniformity::Constant(l) => {
            doc.holds = true;
            doc.lambda = Some(l);
        }
        Uniformity::NotConstant { element, multiplicity } => {
            doc.witness = Some(WitnessJson { element, multiplicity });
        }
    };
    match kind {
        VerifyKind::Ddf => {
            doc.kind = "ddf".into();
            fill(&mut doc, &is_ddf(fam)?);
        }
        VerifyKind::Edf => {
            doc.kind = "edf".into();
            fill(&mut doc, &is_edf(fam)?);
        }
        VerifyKind::Ds => {
            doc.kind = "ds".into();
            let union: Vec<u32> = fam.blocks.iter().flatten().copied().collect();
            fill(&mut doc, &is_difference_set(&fam.group, &union));
        }
        VerifyKind::Bridge => {
            doc.kind = "bridge".into();
            let report = check_edf_ddf_bridge(fam)?;
            doc.holds = report.holds;
            if let Some(l) = report.lambda_ddf {
                doc.values.insert("lambda_ddf".into(), l);
            }
            if let Some(l) = report.lambda_edf {
                doc.values.insert("lambda_edf".into(), l);
            }
            if let Some(l) = report.lambda_ds {
                doc.values.insert("lambda_ds".into(), l);
            }
        }
        VerifyKind::Rds => {
            doc.kind = "rds".into();
            let GroupDesc::Ring { p, .. } = *fam.group.desc() else {
                return Err(CliError::new(
                    EXIT_PARAMS,
                    "rds verification needs a ring family (forbidden subgroup = maximal ideal)",
                ));
            };
            let group = group_from_desc(fam.group.desc())?;
            let forbidden: Vec<u32> = (0..group.order())
                .filter(|&c| {
                    // ideal elements: every coefficient divisible by p
                    let mut x = c;
                    let p2 = p * p;
                    loop {
                        if x == 0 {
                            break true;
                        }
                        if x % p2 % p != 0 {
                            break false;
                        }
                        x /= p2;
                    }
                })
                .map(|c| group.index_of_code(c).expect("ideal code in group"))
                .collect();
            let set = fam.blocks.first().cloned().unwrap_or_default();
            match is_relative_difference_set(&group, &set, &forbidden)? {
                RdsCheck::Certified { m, n, k, lambda } => {
                    doc.holds = true;
                    doc.lambda = Some(lambda);
                    doc.values.insert("m".into(), m);
                    doc.values.insert("n".into(), n);
                    doc.values.insert("k".into(), k);
                }
                RdsCheck::Failure { witness, multiplicity } => {
                    doc.witness = Some(WitnessJson { element: witness, multiplicity });
                }
            }
        }
    }
    Ok(doc)
}
