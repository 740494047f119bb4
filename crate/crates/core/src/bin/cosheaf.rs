use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use cosheaf::cosheaf::{canonical_comparison, hat_eval, hat_table, is_iso};
use cosheaf::counterexample::kernel_counterexample;
use cosheaf::error::{Error, ErrorClass, Result};
use cosheaf::homology::{
    bm_homology, cech_homology_checked, crosscheck, derived_homology, vertex_cover_cech, Verdict,
};
use cosheaf::io::{document_json, error_json, iso_class_json, read_document, report_json};
use cosheaf::poset::Cover;
use cosheaf::random::{corpus_instance, CorpusConfig};

const EXIT_INPUT: u8 = 1;
const EXIT_CONTRACT: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(name = "cosheaf", version, about = "Exact homology of cellular cosheaves over finite posets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a document: group presentations, well-defined maps, commuting diagrams.
    Check { file: PathBuf },
    /// Borel-Moore homology (simplicial-complex documents).
    Bm { file: PathBuf },
    /// Čech homology for the cover by minimal open stars.
    Cech { file: PathBuf },
    /// Derived colimits from a projective resolution.
    Derived {
        file: PathBuf,
        /// Highest degree to report (default: dimension + 1).
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Compare Borel-Moore, Čech, derived and subdivided Borel-Moore homology.
    Crosscheck { file: PathBuf },
    /// Value of the cosheafification on an open set given by its members.
    Cosheafify {
        file: PathBuf,
        #[arg(long, num_args = 0.., required = true)]
        open: Vec<String>,
    },
    /// Built-in worked examples.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
    },
    /// Randomized agreement check of all pipelines on a seeded corpus.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "COSHEAF_FUZZ_COUNT", default_value_t = 200)]
        count: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleName {
    /// Open-set kernel on the three-point space that is not a cosheaf.
    #[value(name = "paper-kernel")]
    KernelOnOpens,
}

struct Outcome {
    output: Value,
    mismatch: bool,
}

impl From<Value> for Outcome {
    fn from(output: Value) -> Self {
        Outcome { output, mismatch: false }
    }
}

fn verdict_json(v: &Verdict) -> Value {
    json!({
        "agree": v.agree(),
        "reports": v.reports.iter().map(report_json).collect::<Vec<_>>(),
        "mismatch": v.mismatch.as_ref().map(|m| json!({
            "degree": m.degree,
            "expected": {"pipeline": m.expected.0.tag(), "group": iso_class_json(&m.expected.1)},
            "found": {"pipeline": m.found.0.tag(), "group": iso_class_json(&m.found.1)},
        })),
    })
}

fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Check { file } => {
            let doc = read_document(&file)?;
            Ok(json!({
                "valid": true,
                "kind": doc.kind(),
                "elements": doc.poset().len(),
                "covering_pairs": doc.poset().hasse().len(),
            })
            .into())
        }
        Command::Bm { file } => {
            let doc = read_document(&file)?;
            Ok(report_json(&bm_homology(doc.require_complex()?, &doc.cosheaf)?).into())
        }
        Command::Cech { file } => {
            let doc = read_document(&file)?;
            match &doc.complex {
                Some(k) => Ok(report_json(&vertex_cover_cech(k, &doc.cosheaf)?).into()),
                None => {
                    let cover = Cover::minimal_stars(doc.poset());
                    let out = cech_homology_checked(&cover, &doc.cosheaf)?;
                    let mut v = report_json(&out.report);
                    v["cover_acyclic"] = json!(out.hypothesis_holds());
                    Ok(v.into())
                }
            }
        }
        Command::Derived { file, max_degree } => {
            let doc = read_document(&file)?;
            let dim = match &doc.complex {
                Some(k) => k.dim(),
                None => doc.poset().height(),
            };
            let top = max_degree.unwrap_or(dim + 1);
            Ok(report_json(&derived_homology(&doc.cosheaf, top + 1)?).into())
        }
        Command::Crosscheck { file } => {
            let doc = read_document(&file)?;
            let v = crosscheck(doc.require_complex()?, &doc.cosheaf)?;
            Ok(Outcome {
                output: verdict_json(&v),
                mismatch: !v.agree(),
            })
        }
        Command::Cosheafify { file, open } => {
            let doc = read_document(&file)?;
            let p = doc.poset();
            let u = p.open_from_names(&open)?;
            let mut opens: Vec<_> = (0..p.len()).map(|x| p.principal_open(x)).collect();
            if !opens.contains(&u) {
                opens.push(u.clone());
            }
            let table = hat_table(&doc.cosheaf, &opens)?;
            let plus = cosheaf::cosheaf::cosheafify(&table)?;
            Ok(json!({
                "open": u.names(p),
                "value": iso_class_json(&hat_eval(&plus, &u)?.iso_class()),
                "table_value": iso_class_json(&table.value(&u)?.iso_class()),
                "comparison_is_iso": is_iso(&canonical_comparison(&table, &u)?)?,
            })
            .into())
        }
        Command::Example { name: ExampleName::KernelOnOpens } => {
            let ex = kernel_counterexample()?;
            let table: Vec<Value> = ex
                .opens
                .iter()
                .map(|u| -> Result<Value> {
                    Ok(json!({"open": u.names(&ex.poset), "kernel": iso_class_json(&ex.table.value(u)?.iso_class())}))
                })
                .collect::<Result<_>>()?;
            Ok(json!({
                "space": {"elements": ex.poset.names(), "hasse": [["a", "b"], ["a", "c"]]},
                "kernel_table": table,
                "cover": ["U_a", "U_b", "U_c"],
                "nerve_colimit": iso_class_json(&ex.check.nerve_colimit),
                "table_value": iso_class_json(&ex.check.value),
                "canonical_map_is_iso": ex.check.canonical_is_iso,
                "verdict": if ex.check.holds() { "cosheaf" } else { "not a cosheaf" },
                "cosheafification_value": iso_class_json(&ex.cosheafified_value),
            })
            .into())
        }
        Command::Fuzz { seed, count } => {
            let cfg = CorpusConfig::default();
            let results: Vec<(u64, Result<Verdict>, Value)> = (0..count)
                .into_par_iter()
                .map(|i| match corpus_instance(seed, i, &cfg) {
                    Ok(inst) => (
                        i,
                        crosscheck(&inst.complex, &inst.cosheaf),
                        document_json(Some(&inst.complex), &inst.cosheaf),
                    ),
                    Err(e) => (i, Err(e), Value::Null),
                })
                .collect();
            let mut failures = Vec::new();
            let mut agreed = 0u64;
            for (i, verdict, doc) in results {
                match verdict {
                    Ok(v) if v.agree() => agreed += 1,
                    Ok(v) => failures.push(json!({"index": i, "verdict": verdict_json(&v), "document": doc})),
                    Err(e) => failures.push(json!({"index": i, "error": error_json(&e)["error"], "document": doc})),
                }
            }
            Ok(Outcome {
                mismatch: !failures.is_empty(),
                output: json!({"seed": seed, "count": count, "agreed": agreed, "failures": failures}),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if !e.use_stderr() {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let err = Error::Parse {
                context: "command line".into(),
                message: e.kind().to_string(),
            };
            eprintln!("{}", e.render());
            eprintln!("{}", error_json(&err));
            return ExitCode::from(EXIT_INPUT);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.output).expect("json values serialize");
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if out.mismatch {
                ExitCode::from(EXIT_MISMATCH)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("{}", error_json(&e));
            match e.class() {
                ErrorClass::Input => ExitCode::from(EXIT_INPUT),
                ErrorClass::Contract => ExitCode::from(EXIT_CONTRACT),
            }
        }
    }
}
