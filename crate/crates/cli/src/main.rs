use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sn2s::chartable::{dixon_table, CharacterTable};
use sn2s::galois::{odd_degree_rows, sigma_permutation, sigma_preserves_central_characters};
use sn2s::gggr::{gggr_character, NilpotentData};
use sn2s::group::{GroupData, DEFAULT_BUDGET};
use sn2s::groups::{GroupSpec, Kind};
use sn2s::sylow::{brute_check, build_sylow, QDescription};
use sn2s::verifier::{
    gggr_check, parse_config, parse_partition, run_catalog, run_default_catalog, witness_check, CatalogEntry, CheckKind,
    RunOptions, Verdict,
};
use sn2s::witness::DEFAULT_SEARCH_LIMIT;

#[derive(Parser)]
#[command(name = "sn2s", version, about = "Verifier for self-normalising Sylow 2-subgroups in classical groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
    /// Enumeration budget (maximum group order).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Directory for cached enumerations.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the catalog (default, or from a config file), or a single spec.
    Verify {
        /// Catalog config file; one entry per line.
        #[arg(long, conflicts_with = "spec")]
        config: Option<PathBuf>,
        /// Run checks on a single group instead of a catalog.
        #[arg(long)]
        spec: Option<String>,
        /// Comma-separated checks for --spec.
        #[arg(long, value_delimiter = ',', default_value = "navarro,table,galois")]
        check: Vec<String>,
        /// Q descriptions for --spec, separated by `|`.
        #[arg(long = "Q", default_value = "trivial")]
        q: String,
        /// Skip enumeration for --spec.
        #[arg(long)]
        symbolic: bool,
        /// Include wall times.
        #[arg(long)]
        timing: bool,
    },
    /// Print the character table.
    Table {
        #[arg(long)]
        spec: String,
    },
    /// Sylow 2-subgroup of GL_n^eps(q) from the 2-adic expansion of n.
    Sylow {
        /// GL(n,q,+1) or GU(n,q,-1).
        #[arg(long)]
        spec: String,
        /// Also enumerate the group and check the normalizer.
        #[arg(long)]
        brute_check: bool,
    },
    /// Action of sigma on the irreducible characters.
    Galois {
        #[arg(long)]
        spec: String,
    },
    /// Witness element s for GL_n^eps(q) and a 2-group Q of field/graph automorphisms.
    Witness {
        #[arg(long)]
        spec: String,
        #[arg(long = "Q", default_value = "trivial")]
        q: String,
        /// Maximum number of candidates in conjugator cross-checks.
        #[arg(long, default_value_t = DEFAULT_SEARCH_LIMIT)]
        limit: u64,
    },
    /// Generalized Gelfand-Graev character for a nilpotent of the given Jordan type.
    Gggr {
        #[arg(long)]
        spec: String,
        /// Jordan type, e.g. 2,1.
        #[arg(long)]
        partition: String,
        /// Run the integrality, Galois and value-field checks.
        #[arg(long)]
        check: bool,
    },
}

fn parse_spec(s: &str) -> Result<GroupSpec> {
    s.parse::<GroupSpec>().map_err(|e| anyhow!("{e}"))
}

fn load_group(spec: &GroupSpec, c: &Common) -> Result<GroupData> {
    let budget = c.budget.unwrap_or(DEFAULT_BUDGET);
    let g = match &c.cache {
        Some(dir) => GroupData::from_spec_cached(spec, budget, dir),
        None => GroupData::from_spec(spec, budget),
    };
    g.with_context(|| format!("enumerating {spec}"))
}

fn load_table(spec: &GroupSpec, c: &Common) -> Result<(GroupData, CharacterTable)> {
    let g = load_group(spec, c)?;
    let t = dixon_table(&g).with_context(|| format!("character table of {spec}"))?;
    Ok((g, t))
}

fn print_evidence(title: &str, verdict: Option<Verdict>, evidence: &BTreeMap<String, String>) {
    match verdict {
        Some(v) => println!("{title}: {v}"),
        None => println!("{title}"),
    }
    for (k, v) in evidence {
        println!("  {k} = {v}");
    }
}

fn emit(c: &Common, json: Value, text: impl FnOnce()) {
    match c.report {
        ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&json).expect("json")),
        ReportFormat::Text => text(),
    }
}

fn verdict_code(v: Verdict) -> ExitCode {
    if v == Verdict::Fail {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let c = cli.common;
    match cli.command {
        Command::Verify { config, spec, check, q, symbolic, timing } => {
            let opts = RunOptions { budget: c.budget, cache: c.cache.clone(), search_limit: None };
            let report = if let Some(spec) = spec {
                let checks = check.iter().map(|x| x.parse::<CheckKind>()).collect::<Result<Vec<_>, _>>().map_err(|e| anyhow!(e))?;
                let mut entry = CatalogEntry::new(parse_spec(&spec)?, checks);
                entry.qs = q.split('|').map(QDescription::parse).collect::<Result<_, _>>().map_err(|e| anyhow!("{e}"))?;
                entry.symbolic = symbolic;
                run_catalog(&[entry], &opts)
            } else if let Some(path) = config {
                let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                let entries = parse_config(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
                run_catalog(&entries, &opts)
            } else {
                run_default_catalog(&opts)
            };
            match c.report {
                ReportFormat::Json => println!("{}", report.to_json(timing)),
                ReportFormat::Text => print!("{}", report.to_text(timing)),
            }
            Ok(if report.failures() == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Table { spec } => {
            let spec = parse_spec(&spec)?;
            let (g, t) = load_table(&spec, &c)?;
            let values: Vec<Vec<String>> = t.values.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            emit(
                &c,
                json!({
                    "spec": spec.to_string(),
                    "order": t.order,
                    "class_sizes": t.class_sizes,
                    "class_orders": t.class_orders,
                    "degrees": t.degrees,
                    "values": values,
                    "checks_pass": t.check().all(),
                }),
                || print!("{}", t.to_text(&g)),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Sylow { spec, brute_check: brute } => {
            let spec = parse_spec(&spec)?;
            if !matches!(spec.kind, Kind::GL | Kind::GU) {
                bail!("sylow expects GL(n,q,+1) or GU(n,q,-1), got {spec}");
            }
            let dec = build_sylow(spec.n, spec.q, spec.eps()).map_err(|e| anyhow!("{e}"))?;
            let f = spec.field();
            let gens: Vec<String> = dec.generators.iter().map(|m| m.to_literal(&f)).collect();
            let zs: Vec<String> = dec.z_generators.iter().map(|m| m.to_literal(&f)).collect();
            let check = if brute {
                let g = load_group(&spec, &c)?;
                Some(brute_check(&dec, &g).ok_or_else(|| anyhow!("construction is not inside {spec}"))?)
            } else {
                None
            };
            let brute_json = check.as_ref().map(|b| {
                json!({
                    "sylow_order": b.sylow_order,
                    "normalizer_order": b.normalizer_order,
                    "cf3_factorization": b.cf3_factorization,
                    "cf1": b.cf1,
                    "passes": b.passes(),
                })
            });
            emit(
                &c,
                json!({
                    "spec": spec.to_string(),
                    "order": dec.order.to_string(),
                    "predicted_normalizer_order": dec.predicted_normalizer_order.to_string(),
                    "generators": gens,
                    "z_generators": zs,
                    "brute_check": brute_json,
                }),
                || {
                    println!("{spec}: |P| = {}, predicted |N(P)| = {}", dec.order, dec.predicted_normalizer_order);
                    println!("generators:");
                    for g in &gens {
                        println!("  {g}");
                    }
                    println!("z generators:");
                    for z in &zs {
                        println!("  {z}");
                    }
                    if let Some(b) = &check {
                        println!(
                            "brute: |P| = {}, |N(P)| = {}, factorization = {}, cf1 = {:?}: {}",
                            b.sylow_order,
                            b.normalizer_order,
                            b.cf3_factorization,
                            b.cf1,
                            if b.passes() { "PASS" } else { "FAIL" }
                        );
                    }
                },
            );
            Ok(match &check {
                Some(b) if !b.passes() => ExitCode::FAILURE,
                _ => ExitCode::SUCCESS,
            })
        }
        Command::Galois { spec } => {
            let spec = parse_spec(&spec)?;
            let (g, t) = load_table(&spec, &c)?;
            let action = sigma_permutation(&t).map_err(|e| anyhow!("{e}"))?;
            let odd = odd_degree_rows(&t);
            let moved: Vec<usize> = odd.iter().copied().filter(|&i| action.perm[i] != i).collect();
            let preserved = sigma_preserves_central_characters(&g, &t).map_err(|e| anyhow!("{e}"))?;
            emit(
                &c,
                json!({
                    "spec": spec.to_string(),
                    "degrees": t.degrees,
                    "permutation": action.perm,
                    "odd_degree_rows": odd,
                    "odd_rows_moved": moved,
                    "degrees_and_central_characters_preserved": preserved,
                }),
                || {
                    println!("{spec}: sigma on {} characters", t.degrees.len());
                    for (i, &j) in action.perm.iter().enumerate() {
                        let mark = if i == j { "fixed" } else { "moved" };
                        println!("  chi_{i} (degree {}) -> chi_{j}  {mark}", t.degrees[i]);
                    }
                    println!("odd-degree rows moved: {moved:?}");
                    println!("degrees and central characters preserved: {preserved}");
                },
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Witness { spec, q, limit } => {
            let spec = parse_spec(&spec)?;
            let lin = spec.with_kind(if spec.eps() > 0 { Kind::GL } else { Kind::GU });
            let qd = QDescription::parse(&q).map_err(|e| anyhow!("{e}"))?;
            let out = witness_check(&lin, &qd, limit);
            emit(
                &c,
                json!({ "spec": lin.to_string(), "Q": qd.to_string(), "verdict": out.verdict, "evidence": out.evidence }),
                || print_evidence(&format!("witness for {lin}, Q = {qd}"), Some(out.verdict), &out.evidence),
            );
            Ok(verdict_code(out.verdict))
        }
        Command::Gggr { spec, partition, check } => {
            let spec = parse_spec(&spec)?;
            let partition = parse_partition(&partition).map_err(|e| anyhow!(e))?;
            if check {
                let (g, t) = load_table(&spec, &c)?;
                let (v, e) = gggr_check(&g, &t, &partition).map_err(|e| anyhow!(e))?;
                emit(
                    &c,
                    json!({ "spec": spec.to_string(), "partition": partition, "verdict": v, "evidence": e }),
                    || print_evidence(&format!("GGGR of {spec} for partition {partition:?}"), Some(v), &e),
                );
                return Ok(verdict_code(v));
            }
            let g = load_group(&spec, &c)?;
            let nil = NilpotentData::new(&g.field, &partition).map_err(|e| anyhow!("{e}"))?;
            let gg = gggr_character(&g, &nil).map_err(|e| anyhow!("{e}"))?;
            let values: Vec<String> = gg.gamma.values.iter().map(|x| x.to_string()).collect();
            let reps: Vec<String> = g.classes.iter().map(|cl| g.elem(cl.rep).to_literal(&g.field)).collect();
            emit(
                &c,
                json!({ "spec": spec.to_string(), "partition": partition, "class_reps": reps, "values": values }),
                || {
                    println!("GGGR of {spec}, partition {partition:?}, u = {}", nil.u.to_literal(&g.field));
                    for (r, v) in reps.iter().zip(&values) {
                        println!("  {r}  {v}");
                    }
                },
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
