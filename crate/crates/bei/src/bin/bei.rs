//! Command-line front end: tree classification, d-sequence verification,
//! regularity prediction/computation, theorem cross-validation sweeps, and
//! product-ideal checks.
//!
//! Exit codes are a contract: 0 success or match, 1 negative verdict,
//! 2 parse error, 3 precondition failure, 4 inconclusive (budget or
//! resource limit), 5 theorem mismatch.

use std::fs;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use bei::binomial_edge::{
    binomial_edge_ideal, bridge_colon_check, exists_d_sequence_order, is_d_sequence, DSeqVerdict,
};
use bei::graph::{
    canonical_dseq_order, classify_tree, internal_vertex_count, unlabeled_trees, Graph,
};
use bei::regularity::{
    parse_path_forest, predict, product_regularity_check, regularity, regularity_with_limits,
    RegularityReport,
};
use bei::poly::FieldMode;
use bei::{BeiError, Result};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;
const EXIT_MISMATCH: u8 = 5;

#[derive(Parser)]
#[command(name = "bei", version, about = "binomial edge ideal toolkit")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunConfig {
    /// coefficient field: q, fp, or fp:<prime>
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    field: FieldMode,
    /// cap on Groebner-basis runs for d-sequence checks and searches
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// worker threads for parallel linear algebra and sweeps
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// random seed recorded for reproducibility
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// cap on the homological degree i in Betti computations
    #[arg(long, global = true)]
    imax: Option<usize>,
    /// cap on the Betti diagonal depth j - i
    #[arg(long, global = true)]
    jmax: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a tree into the d-sequence degree-sequence families
    Classify { graph: String },
    /// Check or search for a d-sequence ordering of the edge binomials
    Dseq {
        graph: String,
        #[arg(long, value_enum, default_value_t = OrderMode::Search)]
        order: OrderMode,
        /// explicit edge ordering as "1-2,2-3,..." (with --order explicit)
        #[arg(long)]
        edges: Option<String>,
    },
    /// Predict, compute, or cross-check the regularity of S/J_G^s
    Reg {
        graph: String,
        #[arg(long, default_value_t = 1)]
        power: usize,
        #[arg(long, conflicts_with_all = ["compute", "check"])]
        predict_only: bool,
        #[arg(long, conflicts_with = "check")]
        compute: bool,
        #[arg(long)]
        check: bool,
    },
    /// Cross-validate a theorem over all unlabeled trees up to a size
    Sweep {
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum)]
        mode: SweepMode,
        /// JSONL output file (defaults to stdout)
        #[arg(long)]
        out: Option<String>,
    },
    /// Check the product formula reg S/(J_H J_{K_m}) = 2 + n
    Product {
        /// path forest: comma-separated "L" or "L@v" entries
        #[arg(long)]
        paths: String,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderMode {
    Canonical,
    Search,
    Explicit,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepMode {
    Dseq,
    Reg,
    Colon,
}

fn parse_field(s: &str) -> std::result::Result<FieldMode, String> {
    match s {
        "q" | "Q" => Ok(FieldMode::Q),
        "fp" => Ok(FieldMode::Fp(FieldMode::DEFAULT_PRIME)),
        _ => {
            let p = s
                .strip_prefix("fp:")
                .ok_or_else(|| format!("expected q, fp, or fp:<prime>, got {s:?}"))?
                .parse::<u32>()
                .map_err(|e| format!("bad prime: {e}"))?;
            if !is_prime(p) {
                return Err(format!("{p} is not prime"));
            }
            Ok(FieldMode::Fp(p))
        }
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("BEI_LOG")).init();
    let cli = Cli::parse();
    if let Some(workers) = cli.config.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .ok();
    }
    log::info!("seed={}, field={}", cli.config.seed, cli.config.field);
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &BeiError) -> u8 {
    match e {
        BeiError::Parse(_) => EXIT_PARSE,
        BeiError::BudgetExceeded(_) | BeiError::ResourceLimit(_) => EXIT_INCONCLUSIVE,
        _ => EXIT_PRECONDITION,
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable report")
}

fn load_graph(path: &str) -> Result<Graph> {
    let text = fs::read_to_string(path)
        .map_err(|e| BeiError::Parse(format!("cannot read {path}: {e}")))?;
    Graph::from_json_str(&text)
}

fn run(cli: &Cli) -> Result<u8> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Classify { graph } => cmd_classify(graph, cfg),
        Command::Dseq { graph, order, edges } => cmd_dseq(graph, *order, edges.as_deref(), cfg),
        Command::Reg { graph, power, predict_only, compute, check } => {
            // --check is the default action
            let mode = if *predict_only {
                RegAction::PredictOnly
            } else if *compute {
                RegAction::Compute
            } else {
                let _ = check;
                RegAction::Check
            };
            cmd_reg(graph, *power, mode, cfg)
        }
        Command::Sweep { max_n, mode, out } => cmd_sweep(*max_n, *mode, out.as_deref(), cfg),
        Command::Product { paths, m } => cmd_product(paths, *m, cfg),
    }
}

fn cmd_classify(path: &str, cfg: &RunConfig) -> Result<u8> {
    let g = load_graph(path)?;
    let c = classify_tree(&g)?;
    let i = internal_vertex_count(&g)?;
    let formula = c.is_dseq_family().then(|| match i {
        0 => "2s - 1".to_string(),
        1 => "2s".to_string(),
        k => format!("2s + {}", k - 1),
    });
    let report = json!({
        "classification": c,
        "internal_vertices": i,
        "reg_power_formula": formula,
    });
    match cfg.format {
        Format::Json => println!("{}", pretty(&report)),
        Format::Table => {
            println!("variant:           {}", c.variant_name());
            println!("internal vertices: {i}");
            println!(
                "reg S/J^s:         {}",
                report["reg_power_formula"].as_str().unwrap_or("no closed form")
            );
        }
    }
    Ok(EXIT_OK)
}

fn parse_edge_list(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .map(|e| {
            let (a, b) = e
                .trim()
                .split_once('-')
                .ok_or_else(|| BeiError::Parse(format!("bad edge {e:?}, expected i-j")))?;
            let a = a.trim().parse().map_err(|_| BeiError::Parse(format!("bad edge {e:?}")))?;
            let b = b.trim().parse().map_err(|_| BeiError::Parse(format!("bad edge {e:?}")))?;
            Ok((a, b))
        })
        .collect()
}

fn cmd_dseq(path: &str, order: OrderMode, edges: Option<&str>, cfg: &RunConfig) -> Result<u8> {
    let g = load_graph(path)?;
    let verdict: DSeqVerdict = match order {
        OrderMode::Canonical => {
            let c = classify_tree(&g)?;
            let ordering = canonical_dseq_order(&c, &g)?;
            is_d_sequence(&g, &ordering, cfg.field, cfg.budget)?
        }
        OrderMode::Search => exists_d_sequence_order(&g, cfg.field, cfg.budget)?,
        OrderMode::Explicit => {
            let edges = edges.ok_or_else(|| {
                BeiError::BadParameters("--order explicit requires --edges".into())
            })?;
            is_d_sequence(&g, &parse_edge_list(edges)?, cfg.field, cfg.budget)?
        }
    };
    match cfg.format {
        Format::Json => println!("{}", pretty(&serde_json::to_value(&verdict).unwrap())),
        Format::Table => {
            println!("d-sequence: {}", if verdict.holds { "holds" } else { "fails" });
            if let Some(o) = &verdict.ordering {
                let o: Vec<String> = o.iter().map(|(a, b)| format!("{a}-{b}")).collect();
                println!("ordering:   {}", o.join(", "));
            }
            println!("exhaustive: {}", verdict.exhaustive);
        }
    }
    Ok(if verdict.holds {
        EXIT_OK
    } else if verdict.exhaustive {
        EXIT_NEGATIVE
    } else {
        EXIT_INCONCLUSIVE
    })
}

enum RegAction {
    PredictOnly,
    Compute,
    Check,
}

fn compute_report(g: &Graph, s: usize, hint: Option<usize>, cfg: &RunConfig) -> Result<RegularityReport> {
    let ideal = binomial_edge_ideal(g, cfg.field)?.power(s);
    regularity_with_limits(&ideal, hint, cfg.imax.unwrap_or(ideal.nvars()), cfg.jmax)
}

fn print_report(report: &RegularityReport, cfg: &RunConfig) -> Result<()> {
    match cfg.format {
        Format::Json => println!("{}", pretty(&report.to_json())),
        Format::Table => {
            println!("{}", report.table.render_text());
            println!("reg:       {}", report.observed_reg);
            println!("certified: {}", report.certified);
        }
    }
    Ok(())
}

fn cmd_reg(path: &str, s: usize, action: RegAction, cfg: &RunConfig) -> Result<u8> {
    let g = load_graph(path)?;
    match action {
        RegAction::PredictOnly => {
            let p = predict(&g, s)?;
            println!(
                "{}",
                pretty(&json!({"predicted": p.value, "rule": p.rule}))
            );
            Ok(EXIT_OK)
        }
        RegAction::Compute => {
            let hint = predict(&g, s).ok().map(|p| p.value);
            let report = compute_report(&g, s, hint, cfg)?;
            print_report(&report, cfg)?;
            Ok(EXIT_OK)
        }
        RegAction::Check => {
            let p = predict(&g, s)?;
            let mut report = compute_report(&g, s, Some(p.value), cfg)?;
            report.predicted = Some(p);
            print_report(&report, cfg)?;
            if !report.certified {
                Ok(EXIT_INCONCLUSIVE)
            } else if report.observed_reg == p.value {
                Ok(EXIT_OK)
            } else {
                Ok(EXIT_MISMATCH)
            }
        }
    }
}

fn cmd_product(paths: &str, m: usize, cfg: &RunConfig) -> Result<u8> {
    let paths = parse_path_forest(paths)?;
    let check = product_regularity_check(&paths, m, cfg.field)?;
    println!("{}", pretty(&check.to_json()));
    Ok(if !check.report.certified {
        EXIT_INCONCLUSIVE
    } else if check.matches {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

fn cmd_sweep(max_n: usize, mode: SweepMode, out: Option<&str>, cfg: &RunConfig) -> Result<u8> {
    let cap = match mode {
        SweepMode::Dseq => 7,
        SweepMode::Reg => 6,
        SweepMode::Colon => 8,
    };
    if max_n > cap || max_n < 2 {
        return Err(BeiError::BadParameters(format!(
            "this sweep mode supports 2 <= max-n <= {cap}"
        )));
    }
    let mut sink: Box<dyn std::io::Write> = match out {
        Some(path) => Box::new(
            fs::File::create(path).map_err(|e| BeiError::Parse(format!("cannot write {path}: {e}")))?,
        ),
        None => Box::new(std::io::stdout()),
    };
    let mut mismatches = 0usize;
    let mut inconclusive = 0usize;
    let mut records = 0usize;
    for n in 2..=max_n {
        for g in unlabeled_trees(n) {
            for record in sweep_tree(&g, mode, cfg)? {
                if record["mismatch"] == json!(true) {
                    mismatches += 1;
                }
                if record["inconclusive"] == json!(true) {
                    inconclusive += 1;
                }
                records += 1;
                writeln!(sink, "{record}").map_err(|e| BeiError::Parse(e.to_string()))?;
            }
        }
    }
    let summary = json!({
        "summary": {"records": records, "mismatches": mismatches, "inconclusive": inconclusive},
    });
    writeln!(sink, "{summary}").map_err(|e| BeiError::Parse(e.to_string()))?;
    Ok(if mismatches > 0 {
        EXIT_NEGATIVE
    } else if inconclusive > 0 {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    })
}

/// Per-tree sweep records; budget exhaustion marks the record inconclusive
/// instead of aborting the sweep.
fn sweep_tree(g: &Graph, mode: SweepMode, cfg: &RunConfig) -> Result<Vec<serde_json::Value>> {
    let base = json!({"n": g.n(), "edges": g.edges()});
    let mut base = base.as_object().unwrap().clone();
    match mode {
        SweepMode::Dseq => {
            // classification into a family must coincide with the existence
            // of a d-sequence ordering
            let family = classify_tree(g)?.is_dseq_family();
            let verdict = exists_d_sequence_order(g, cfg.field, cfg.budget)?;
            base.insert("family".into(), json!(family));
            base.insert("dseq_holds".into(), json!(verdict.holds));
            base.insert("exhaustive".into(), json!(verdict.exhaustive));
            base.insert("inconclusive".into(), json!(!verdict.exhaustive));
            base.insert(
                "mismatch".into(),
                json!(verdict.exhaustive && family != verdict.holds),
            );
            Ok(vec![base.into()])
        }
        SweepMode::Reg => {
            // computed regularity must equal internal vertex count plus one
            let expected = internal_vertex_count(g)? + 1;
            let ideal = binomial_edge_ideal(g, cfg.field)?;
            let report = regularity(&ideal, Some(expected))?;
            base.insert("expected".into(), json!(expected));
            base.insert("computed".into(), json!(report.observed_reg));
            base.insert("certified".into(), json!(report.certified));
            base.insert("inconclusive".into(), json!(!report.certified));
            base.insert(
                "mismatch".into(),
                json!(report.certified && report.observed_reg != expected),
            );
            Ok(vec![base.into()])
        }
        SweepMode::Colon => {
            // every edge e of the tree is a bridge extension of the forest
            // obtained by removing it
            let mut out = Vec::new();
            for &e in g.edges() {
                let rest: Vec<(usize, usize)> =
                    g.edges().iter().copied().filter(|&f| f != e).collect();
                let forest = Graph::new(g.n(), rest)?;
                let holds = if forest.num_edges() == 0 {
                    true // zero ideal: both sides are zero
                } else {
                    bridge_colon_check(&forest, e, cfg.field)?
                };
                let mut rec = base.clone();
                rec.insert("bridge".into(), json!([e.0, e.1]));
                rec.insert("holds".into(), json!(holds));
                rec.insert("inconclusive".into(), json!(false));
                rec.insert("mismatch".into(), json!(!holds));
                out.push(rec.into());
            }
            Ok(out)
        }
    }
}
