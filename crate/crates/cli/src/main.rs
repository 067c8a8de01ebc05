//! `pgt`: build groups, measure them, and run the verification suites.
//!
//! Exit status: 0 when every check passes, 1 when a counterexample was found
//! (the witness is printed as JSON on stdout), 2 on usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use pgt_core::catalog::{catalog_report_csv, default_catalog, entries_csv, run_catalog};
use pgt_core::centralizer::parameters;
use pgt_core::construct::{self, BuildParams};
use pgt_core::io::{parse_semifield, read_group, write_group};
use pgt_core::maxabel::{bound_certificate, enumerate_maximal_abelian, extend_to_maximal_abelian};
use pgt_core::ses::{fingerprint, fingerprint_compare};
use pgt_core::suite::{run_suite, to_csv, to_json, SuiteId, SuiteOptions};
use pgt_core::{Error, Group};

#[derive(Parser)]
#[command(name = "pgt", version, about = "Centralizers, element centers and maximal abelian subgroups of finite p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Lemmas,
    Theorem,
    Ses,
    Openq,
    Oracle,
}

impl From<Suite> for SuiteId {
    fn from(s: Suite) -> Self {
        match s {
            Suite::Lemmas => SuiteId::Lemmas,
            Suite::Theorem => SuiteId::Theorem,
            Suite::Ses => SuiteId::Ses,
            Suite::Openq => SuiteId::Openq,
            Suite::Oracle => SuiteId::Oracle,
        }
    }
}

#[derive(clap::Args)]
struct Caps {
    /// Skip groups above this order (the oracle suite defaults to 729).
    #[arg(long)]
    max_order: Option<u64>,
    /// Tuple budget for the open-question checks before sampling kicks in.
    #[arg(long, default_value_t = pgt_core::ses::DEFAULT_MAX_TUPLES)]
    max_tuples: u64,
}

impl Caps {
    fn options(&self) -> SuiteOptions {
        SuiteOptions { max_order: self.max_order, max_tuples: self.max_tuples }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a named group and write it as a group file.
    Construct {
        /// extraspecial, heisenberg, paperH, sfheis, gab, example-n4,
        /// example-n5, D4, Q8, S3, S4, A4, or a catalog name such as
        /// heisenberg-3-2.
        name: String,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Semifield file for sfheis and gab instead of the field of order p^n.
        #[arg(long)]
        semifield: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Print the order and the exponents n_total, m, b, l.
    Info { file: PathBuf },
    /// Enumerate maximal abelian subgroups.
    Maxabel {
        file: PathBuf,
        /// List every subgroup rather than the order counts.
        #[arg(long)]
        all: bool,
    },
    /// Bound certificate for one maximal abelian subgroup, or for all.
    Certify {
        file: PathBuf,
        /// Comma-separated element labels or indices; the subgroup they
        /// generate with the center must be maximal abelian.
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Run a verification suite over group files.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        caps: Caps,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// List the built-in catalog, or check it and run every suite on it.
    Catalog {
        #[arg(long)]
        run_all: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        caps: Caps,
    },
    /// Compare isomorphism invariants of two groups.
    Fingerprint { file1: PathBuf, file2: PathBuf },
}

enum Failure {
    Input(String),
    Counterexample,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn load(path: &Path) -> Result<Group, Failure> {
    Ok(read_group(path)?)
}

fn construct_cmd(name: &str, params: BuildParams, semifield: Option<&Path>, output: &Path) -> Outcome {
    let g = match semifield {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let s = parse_semifield(&text)?;
            match name {
                "sfheis" => construct::semifield_heisenberg(&s)?,
                "gab" => construct::generalized_semifield_group(&s, &construct::centralizer_candidate_presentation(s.p(), s.n())?)?,
                _ => return Err(Failure::Input(format!("--semifield applies to sfheis and gab, not {name}"))),
            }
        }
        None => construct::build(name, params)?,
    };
    write_group(&g, output)?;
    eprintln!("wrote {} (order {}) to {}", g.name(), g.order(), output.display());
    Ok(())
}

fn info_cmd(path: &Path) -> Outcome {
    let g = load(path)?;
    match parameters(&g) {
        Ok(q) => {
            let mut line = format!("p={} |G|={} n_total={} m={} b={} l={}", q.p, g.order(), q.n_total, q.m, q.b, q.l);
            if let Some(k) = q.k {
                line.push_str(&format!(" k={k}"));
            }
            println!("{line}");
        }
        Err(Error::NotPGroup) => println!("|G|={} |Z(G)|={} not a p-group", g.order(), g.subgroup_order(&g.center())),
        Err(Error::AbelianGroup) => println!("|G|={} abelian", g.order()),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn maxabel_cmd(path: &Path, all: bool) -> Outcome {
    let g = load(path)?;
    let list = enumerate_maximal_abelian(&g)?;
    if all {
        let docs: Vec<_> = list
            .iter()
            .map(|a| json!({"order": g.subgroup_order(a), "subgroup": g.subgroup_description(a)}))
            .collect();
        print!("{}", to_json(&json!({"group": g.name(), "count": list.len(), "subgroups": docs})));
    } else {
        let mut orders = std::collections::BTreeMap::new();
        for a in &list {
            *orders.entry(g.subgroup_order(a)).or_insert(0u64) += 1;
        }
        print!("{}", to_json(&json!({"group": g.name(), "count": list.len(), "orders": orders})));
    }
    Ok(())
}

fn parse_witness(g: &Group, text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            g.elements()
                .find(|&x| g.element_label(x) == s)
                .or_else(|| s.parse::<usize>().ok().filter(|&x| x < g.len()))
                .ok_or_else(|| Failure::Input(format!("--subgroup: {s:?} is not an element index or label")))
        })
        .collect()
}

fn certify_cmd(path: &Path, subgroup: Option<&str>) -> Outcome {
    let g = load(path)?;
    let subgroups = match subgroup {
        Some(text) => {
            let gens = parse_witness(&g, text)?;
            let mut a = g.center();
            for x in gens {
                a = g.subgroup_adjoin(&a, x);
            }
            if !g.is_maximal_abelian(&a) {
                let hint = match extend_to_maximal_abelian(&g, &a) {
                    Ok(m) => format!("; it extends to the maximal abelian subgroup generated by {:?}", g.subgroup_generators(&m)),
                    Err(_) => String::new(),
                };
                return Err(Failure::Input(format!("--subgroup does not generate a maximal abelian subgroup{hint}")));
            }
            vec![a]
        }
        None => enumerate_maximal_abelian(&g)?,
    };
    let certs = subgroups.iter().map(|a| bound_certificate(&g, a)).collect::<Result<Vec<_>, _>>()?;
    let ok = certs.iter().all(|c| c.verified());
    print!("{}", to_json(&json!({"group": g.name(), "verified": ok, "certificates": certs})));
    if ok {
        Ok(())
    } else {
        Err(Failure::Counterexample)
    }
}

fn verify_cmd(suite: SuiteId, format: Format, opts: SuiteOptions, files: &[PathBuf]) -> Outcome {
    let groups = files.iter().map(|f| load(f)).collect::<Result<Vec<_>, _>>()?;
    let start = Instant::now();
    let report = run_suite(suite, &groups, &opts);
    eprintln!("{suite}: {} groups in {:.2?}", groups.len(), start.elapsed());
    match format {
        Format::Json => print!("{}", to_json(&report)),
        Format::Csv => print!("{}", to_csv(&report)),
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Counterexample)
    }
}

fn catalog_cmd(run_all: bool, format: Format, opts: SuiteOptions) -> Outcome {
    let entries = default_catalog();
    if !run_all {
        match format {
            Format::Json => print!("{}", to_json(&entries)),
            Format::Csv => print!("{}", entries_csv(&entries)),
        }
        return Ok(());
    }
    let start = Instant::now();
    let report = run_catalog(&entries, &opts);
    eprintln!("catalog: {} entries in {:.2?}", entries.len(), start.elapsed());
    match format {
        Format::Json => print!("{}", to_json(&report)),
        Format::Csv => print!("{}", catalog_report_csv(&report)),
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Counterexample)
    }
}

fn fingerprint_cmd(a: &Path, b: &Path) -> Outcome {
    let (ga, gb) = (load(a)?, load(b)?);
    let (fa, fb) = (fingerprint(&ga)?, fingerprint(&gb)?);
    let cmp = fingerprint_compare(&fa, &fb);
    print!("{}", to_json(&json!({"first": fa, "second": fb, "comparison": cmp})));
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Construct { name, p, a, n, k, semifield, output } => {
            construct_cmd(&name, BuildParams { p, a, n, k }, semifield.as_deref(), &output)
        }
        Command::Info { file } => info_cmd(&file),
        Command::Maxabel { file, all } => maxabel_cmd(&file, all),
        Command::Certify { file, subgroup } => certify_cmd(&file, subgroup.as_deref()),
        Command::Verify { suite, format, caps, files } => verify_cmd(suite.into(), format, caps.options(), &files),
        Command::Catalog { run_all, format, caps } => catalog_cmd(run_all, format, caps.options()),
        Command::Fingerprint { file1, file2 } => fingerprint_cmd(&file1, &file2),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = std::env::var("PGT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().ok();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Counterexample) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("pgt: {msg}");
            ExitCode::from(2)
        }
    }
}
