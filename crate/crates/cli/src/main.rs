//! `prehom`: explore the correspondence between finite-dimensional
//! commutative algebras and prehomogeneous modules of commutative groups.
//!
//! Exit codes: 0 for a positive result, 1 for a valid negative result
//! (inconclusive comparison, failed reconstruction preconditions, broken
//! action axioms), 2 for input errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use prehom_core::algebra::{Comparison, FiniteAlgebra, OrbitCount};
use prehom_core::error::Error;
use prehom_core::present::{
    format_presentation, load_table, parse_presentation, table_entry, Presentation,
};
use prehom_core::rat::{format_rat, parse_rat, Rat};
use prehom_core::reconstruct::{orbit_certificate, reconstruct_algebra, MatrixGroupInput};
use prehom_core::rep::{matrix_rep, ParamMatrixRep};
use prehom_core::sweep::{pairwise_table_comparison, ExecMode};

#[derive(Parser)]
#[command(name = "prehom", version, about = "Finite-dimensional commutative algebras and their prehomogeneous modules")]
struct Cli {
    /// Seed for generic-point searches
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Browse the built-in table of local algebras of dimension up to 6
    Table {
        #[command(subcommand)]
        cmd: TableCmd,
    },
    /// Analyze a presented algebra
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Emit the symbolic matrix representation of the unit group
    Rep {
        #[command(subcommand)]
        cmd: RepCmd,
    },
    /// Compare two local algebras by their invariants
    Compare(CompareArgs),
    /// Reconstruct the algebra from a commuting matrix family
    Reconstruct(ReconstructArgs),
    /// Check a built-in polynomial action
    Action {
        #[command(subcommand)]
        cmd: ActionCmd,
    },
}

#[derive(Subcommand)]
enum TableCmd {
    /// List all 42 entries
    List,
    /// Show one entry with its invariants
    Show { index: u32 },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Dimension, locality, decomposition, fingerprint, orbit data
    Info {
        /// Table index, presentation text, or path to a file
        spec: String,
    },
}

#[derive(Subcommand)]
enum RepCmd {
    /// Print the parameterized matrix of G(A) acting on A
    Matrix {
        /// Table index, presentation text, or path to a file
        spec: String,
        /// Comma-separated monomial basis override, e.g. 1,x1,x2,x1^2
        #[arg(long)]
        basis: Option<String>,
        /// Comma-separated parameter values, e.g. l1=2,a1=3
        #[arg(long)]
        eval: Option<String>,
    },
}

#[derive(Args)]
struct CompareArgs {
    /// First algebra (table index or presentation), unless --all
    a: Option<String>,
    /// Second algebra (table index or presentation)
    b: Option<String>,
    /// Compare every pair of table entries
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct ReconstructArgs {
    /// JSON file with { n, lie_basis, base_point? }
    #[arg(long)]
    matrices: PathBuf,
    /// Base vector, comma-separated rationals; a seeded generic point is
    /// tried when absent
    #[arg(long)]
    vector: Option<String>,
}

#[derive(Subcommand)]
enum ActionCmd {
    /// Verify axioms, linearity, fixed points and orbit rank
    Check {
        /// translations | hirzebruch | polex | scalar | table_rep
        name: String,
        /// Integer parameters, repeatable: --param d=1 --param n=3
        #[arg(long = "param")]
        params: Vec<String>,
        /// Evaluate the orbit rank at this point instead of a seeded one
        #[arg(long)]
        point: Option<String>,
        /// Exit 1 unless the action provably has a fixed point
        #[arg(long)]
        expect_fixed_point: bool,
    },
}

/// A run outcome: rendered output plus the exit classification.
struct Outcome {
    text: String,
    negative: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let seed = cli.seed;
    let result = run(&cli.command, format, seed);
    match result {
        Ok(outcome) => {
            let emitted = emit(&cli.output, &outcome.text);
            if let Err(e) = emitted {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.negative {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match output {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            writeln!(f, "{text}")
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(cmd: &Command, format: Format, seed: u64) -> Result<Outcome, Error> {
    match cmd {
        Command::Table { cmd } => table_cmd(cmd, format),
        Command::Algebra { cmd } => algebra_cmd(cmd, format),
        Command::Rep { cmd } => rep_cmd(cmd, format),
        Command::Compare(args) => compare_cmd(args, format),
        Command::Reconstruct(args) => reconstruct_cmd(args, format, seed),
        Command::Action { cmd } => action_cmd(cmd, format, seed),
    }
}

/// Resolve a table index, presentation text, or file into an algebra.
fn resolve_algebra(spec: &str) -> Result<(FiniteAlgebra, Option<Presentation>), Error> {
    if let Ok(k) = spec.trim().parse::<u32>() {
        let entry = table_entry(k)?;
        let alg = FiniteAlgebra::from_quotient(&entry.presentation)?;
        return Ok((alg, Some(entry.presentation.clone())));
    }
    let path = std::path::Path::new(spec);
    if path.exists() {
        let contents = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {spec:?}: {e}")))?;
        let trimmed = contents.trim_start();
        if trimmed.starts_with('{') {
            let value: serde_json::Value = serde_json::from_str(trimmed)?;
            let alg = FiniteAlgebra::from_json(&value)?;
            return Ok((alg, None));
        }
        let p = parse_presentation(contents.trim())?;
        let alg = FiniteAlgebra::from_quotient(&p)?;
        return Ok((alg, Some(p)));
    }
    let p = parse_presentation(spec)?;
    let alg = FiniteAlgebra::from_quotient(&p)?;
    Ok((alg, Some(p)))
}

fn table_cmd(cmd: &TableCmd, format: Format) -> Result<Outcome, Error> {
    match cmd {
        TableCmd::List => {
            let table = load_table();
            let text = match format {
                Format::Json => {
                    let rows: Vec<serde_json::Value> = table
                        .iter()
                        .map(|e| {
                            serde_json::json!({
                                "index": e.index,
                                "dim": e.declared_dim,
                                "presentation": format_presentation(&e.presentation),
                            })
                        })
                        .collect();
                    serde_json::to_string_pretty(&rows)?
                }
                _ => {
                    let mut lines = Vec::new();
                    for e in table {
                        lines.push(format!(
                            "{:>2}  dim {}  {}",
                            e.index,
                            e.declared_dim,
                            format_presentation(&e.presentation)
                        ));
                    }
                    lines.join("\n")
                }
            };
            Ok(Outcome {
                text,
                negative: false,
            })
        }
        TableCmd::Show { index } => {
            let entry = table_entry(*index)?;
            let alg = FiniteAlgebra::from_quotient(&entry.presentation)?;
            let fp = alg.fingerprint()?;
            let chain = alg.is_chain()?;
            let square_zero = alg.is_square_zero_radical()?;
            let orbits = alg.orbit_count()?;
            let orbit_text = match orbits {
                OrbitCount::Finite(k) => k.to_string(),
                OrbitCount::Infinite => "infinite".to_string(),
            };
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&serde_json::json!({
                    "index": entry.index,
                    "dim": entry.declared_dim,
                    "presentation": format_presentation(&entry.presentation),
                    "hilbert": fp.hilbert,
                    "socle_dim": fp.socle_dim,
                    "embedding_dim": fp.embedding_dim,
                    "chain": chain,
                    "square_zero_radical": square_zero,
                    "orbit_count": orbit_text,
                }))?,
                _ => format!(
                    "entry {}\n  presentation: {}\n  dim: {}\n  hilbert: {:?}\n  socle dim: {}\n  embedding dim: {}\n  chain: {}\n  square-zero radical: {}\n  orbit count: {}",
                    entry.index,
                    format_presentation(&entry.presentation),
                    entry.declared_dim,
                    fp.hilbert,
                    fp.socle_dim,
                    fp.embedding_dim,
                    chain,
                    square_zero,
                    orbit_text
                ),
            };
            Ok(Outcome {
                text,
                negative: false,
            })
        }
    }
}

fn algebra_cmd(cmd: &AlgebraCmd, format: Format) -> Result<Outcome, Error> {
    let AlgebraCmd::Info { spec } = cmd;
    let (alg, presentation) = resolve_algebra(spec)?;
    let report = alg.verify_axioms();
    if !report.all_ok() {
        return Err(Error::AxiomViolation(
            report.failures.first().cloned().unwrap_or_default(),
        ));
    }
    let local = alg.is_geometrically_local()?;
    let decomp = alg.local_decomposition()?;
    let summand_dims: Vec<usize> = decomp.summands.iter().map(FiniteAlgebra::dim).collect();
    let orbits = alg.orbit_count()?;
    let orbit_text = match orbits {
        OrbitCount::Finite(k) => k.to_string(),
        OrbitCount::Infinite => "infinite".to_string(),
    };
    let hyperplanes: Vec<Vec<String>> = alg
        .unit_hyperplanes()?
        .iter()
        .map(|f| f.iter().map(format_rat).collect())
        .collect();
    let fingerprints: Vec<serde_json::Value> = decomp
        .summands
        .iter()
        .map(|s| {
            let fp = s.fingerprint()?;
            Ok(serde_json::json!({
                "dim": fp.dim,
                "hilbert": fp.hilbert,
                "socle_dim": fp.socle_dim,
                "ann_filtration": fp.ann_filtration,
                "embedding_dim": fp.embedding_dim,
            }))
        })
        .collect::<Result<_, Error>>()?;
    let chain = decomp
        .summands
        .iter()
        .map(|s| s.is_chain())
        .collect::<Result<Vec<_>, _>>()?;
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&serde_json::json!({
            "presentation": presentation.as_ref().map(format_presentation),
            "dim": alg.dim(),
            "axioms_ok": true,
            "local": local,
            "summand_dims": summand_dims,
            "summand_fingerprints": fingerprints,
            "summands_chain": chain,
            "orbit_count": orbit_text,
            "unit_hyperplanes": hyperplanes,
        }))?,
        _ => {
            let mut lines = Vec::new();
            if let Some(p) = &presentation {
                lines.push(format!("presentation: {}", format_presentation(p)));
            }
            lines.push(format!("dim: {}", alg.dim()));
            lines.push("axioms: ok".to_string());
            lines.push(format!("geometrically local: {local}"));
            lines.push(format!(
                "local summands: {} with dims {:?}",
                decomp.summands.len(),
                summand_dims
            ));
            for (i, s) in decomp.summands.iter().enumerate() {
                let fp = s.fingerprint()?;
                lines.push(format!(
                    "  summand {}: dim {}, hilbert {:?}, socle {}, chain: {}",
                    i + 1,
                    fp.dim,
                    fp.hilbert,
                    fp.socle_dim,
                    chain[i]
                ));
            }
            lines.push(format!("orbit count: {orbit_text}"));
            lines.push(format!(
                "unit hyperplanes: {}",
                hyperplanes
                    .iter()
                    .map(|f| format!("({})", f.join(", ")))
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
            lines.join("\n")
        }
    };
    Ok(Outcome {
        text,
        negative: false,
    })
}

fn parse_eval_list(eval: &str) -> Result<BTreeMap<String, Rat>, Error> {
    let mut values = BTreeMap::new();
    for pair in eval.split(',') {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("bad assignment {pair:?}")))?;
        values.insert(k.trim().to_string(), parse_rat(v)?);
    }
    Ok(values)
}

fn rep_cmd(cmd: &RepCmd, format: Format) -> Result<Outcome, Error> {
    let RepCmd::Matrix { spec, basis, eval } = cmd;
    let (alg, _) = resolve_algebra(spec)?;
    let basis_override: Option<Vec<String>> = basis
        .as_ref()
        .map(|b| b.split(',').map(|s| s.trim().to_string()).collect());
    let rep = matrix_rep(&alg, basis_override.as_deref())?;
    let text = match eval {
        Some(e) => {
            let values = parse_eval_list(e)?;
            let m = rep.evaluate(&values)?;
            render_rat_matrix(&m, format)?
        }
        None => render_rep(&rep, format)?,
    };
    Ok(Outcome {
        text,
        negative: false,
    })
}

fn render_rat_matrix(
    m: &prehom_core::linalg::RatMat,
    format: Format,
) -> Result<String, Error> {
    match format {
        Format::Json => {
            let rows: Vec<Vec<String>> = (0..m.rows)
                .map(|i| m.row(i).iter().map(format_rat).collect())
                .collect();
            Ok(serde_json::to_string_pretty(&serde_json::json!({
                "rows": m.rows,
                "cols": m.cols,
                "entries": rows,
            }))?)
        }
        Format::Latex => {
            let mut out = String::from("\\begin{pmatrix}\n");
            for i in 0..m.rows {
                let row: Vec<String> = m.row(i).iter().map(format_rat).collect();
                out.push_str(&row.join(" & "));
                if i + 1 < m.rows {
                    out.push_str(" \\\\");
                }
                out.push('\n');
            }
            out.push_str("\\end{pmatrix}");
            Ok(out)
        }
        Format::Text => {
            let rows: Vec<Vec<String>> = (0..m.rows)
                .map(|i| m.row(i).iter().map(format_rat).collect())
                .collect();
            Ok(render_grid(&rows))
        }
    }
}

fn render_rep(rep: &ParamMatrixRep, format: Format) -> Result<String, Error> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&rep.to_json())?),
        Format::Latex => Ok(rep.to_latex()),
        Format::Text => {
            let rows: Vec<Vec<String>> = (0..rep.n)
                .map(|i| {
                    (0..rep.n)
                        .map(|j| rep.entries[(i, j)].to_string())
                        .collect()
                })
                .collect();
            let mut out = format!(
                "basis: {}\ntorus params: {:?}, additive params: {:?}\n",
                rep.basis_labels.join(", "),
                rep.torus_params,
                rep.additive_params
            );
            out.push_str(&render_grid(&rows));
            Ok(out)
        }
    }
}

fn render_grid(rows: &[Vec<String>]) -> String {
    let cols = rows.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r
                .iter()
                .enumerate()
                .map(|(j, c)| format!("{:>w$}", c, w = widths[j]))
                .collect();
            format!("[ {} ]", cells.join("  "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn compare_cmd(args: &CompareArgs, format: Format) -> Result<Outcome, Error> {
    if args.all {
        let results = pairwise_table_comparison(ExecMode::Parallel)?;
        let mut lines = Vec::new();
        let mut inconclusive = 0usize;
        for r in &results {
            match &r.comparison {
                Comparison::Separation { invariant, .. } => {
                    lines.push(format!("{:>2} vs {:>2}: separated by {}", r.left, r.right, invariant));
                }
                Comparison::Inconclusive => {
                    inconclusive += 1;
                    lines.push(format!("{:>2} vs {:>2}: inconclusive", r.left, r.right));
                }
            }
        }
        let text = match format {
            Format::Json => {
                let rows: Vec<serde_json::Value> = results
                    .iter()
                    .map(|r| match &r.comparison {
                        Comparison::Separation { invariant, left, right } => serde_json::json!({
                            "left": r.left, "right": r.right,
                            "separated_by": invariant,
                            "values": [left, right],
                        }),
                        Comparison::Inconclusive => serde_json::json!({
                            "left": r.left, "right": r.right,
                            "separated_by": serde_json::Value::Null,
                        }),
                    })
                    .collect();
                serde_json::to_string_pretty(&rows)?
            }
            _ => {
                lines.push(format!(
                    "{} pairs, {} inconclusive",
                    results.len(),
                    inconclusive
                ));
                lines.join("\n")
            }
        };
        return Ok(Outcome {
            text,
            negative: false,
        });
    }
    let (a_spec, b_spec) = match (&args.a, &args.b) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::InvalidInput(
                "compare needs two algebras or --all".into(),
            ))
        }
    };
    let (a, _) = resolve_algebra(a_spec)?;
    let (b, _) = resolve_algebra(b_spec)?;
    let comparison = FiniteAlgebra::certify_nonisomorphic(&a, &b)?;
    let (text, negative) = match &comparison {
        Comparison::Separation { invariant, left, right } => (
            match format {
                Format::Json => serde_json::to_string_pretty(&serde_json::json!({
                    "separated_by": invariant,
                    "left": left,
                    "right": right,
                }))?,
                _ => format!("separated by {invariant}: {left} vs {right}"),
            },
            false,
        ),
        Comparison::Inconclusive => (
            match format {
                Format::Json => serde_json::to_string_pretty(&serde_json::json!({
                    "separated_by": serde_json::Value::Null,
                }))?,
                _ => "inconclusive: all implemented invariants agree".to_string(),
            },
            true,
        ),
    };
    Ok(Outcome { text, negative })
}

fn reconstruct_cmd(
    args: &ReconstructArgs,
    format: Format,
    seed: u64,
) -> Result<Outcome, Error> {
    let contents = std::fs::read_to_string(&args.matrices)
        .map_err(|e| Error::InvalidInput(format!("cannot read {:?}: {e}", args.matrices)))?;
    let value: serde_json::Value = serde_json::from_str(&contents)?;
    let input = MatrixGroupInput::from_json(&value)?;
    if !input.check_commutative() {
        return Ok(Outcome {
            text: "lie basis is not commutative".to_string(),
            negative: true,
        });
    }
    let v: Vec<Rat> = match &args.vector {
        Some(text) => text
            .split(',')
            .map(|s| parse_rat(s.trim()))
            .collect::<Result<_, _>>()?,
        None => match orbit_certificate(&input, seed) {
            Ok((v, _)) => v,
            Err(Error::NoOpenOrbit) => {
                return Ok(Outcome {
                    text: "no open orbit found at tested points".to_string(),
                    negative: true,
                })
            }
            Err(e) => return Err(e),
        },
    };
    match reconstruct_algebra(&input, &v) {
        Ok(rec) => {
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&rec.algebra.to_json())?,
                _ => {
                    let mut lines = vec![format!(
                        "reconstructed algebra of dim {} at witness ({})",
                        rec.algebra.dim(),
                        rec.witness
                            .iter()
                            .map(format_rat)
                            .collect::<Vec<_>>()
                            .join(", ")
                    )];
                    lines.push(render_structure(&rec.algebra));
                    lines.join("\n")
                }
            };
            Ok(Outcome {
                text,
                negative: false,
            })
        }
        Err(
            e @ (Error::NotCyclic
            | Error::NonCommutativeCommutant
            | Error::DimensionMismatch { .. }),
        ) => Ok(Outcome {
            text: format!("reconstruction impossible: {e}"),
            negative: true,
        }),
        Err(e) => Err(e),
    }
}

fn render_structure(alg: &FiniteAlgebra) -> String {
    let n = alg.dim();
    let mut lines = Vec::new();
    for i in 0..n {
        for j in i..n {
            let coords: Vec<String> = (0..n)
                .map(|k| format_rat(alg.structure_constant(i, j, k)))
                .collect();
            lines.push(format!(
                "  {} * {} = ({})",
                alg.basis_labels()[i],
                alg.basis_labels()[j],
                coords.join(", ")
            ));
        }
    }
    lines.join("\n")
}

fn action_cmd(cmd: &ActionCmd, format: Format, seed: u64) -> Result<Outcome, Error> {
    let ActionCmd::Check {
        name,
        params,
        point,
        expect_fixed_point,
    } = cmd;
    let mut parsed = BTreeMap::new();
    for p in params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("bad parameter {p:?}")))?;
        let v: i64 = v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad integer in {p:?}")))?;
        parsed.insert(k.trim().to_string(), v);
    }
    let act = prehom_core::action::builtin(name, &parsed)?;
    let mut report = act.report(seed);
    if let Some(text) = point {
        let v: Vec<Rat> = text
            .split(',')
            .map(|s| parse_rat(s.trim()))
            .collect::<Result<_, _>>()?;
        if v.len() != act.n {
            return Err(Error::DimensionMismatch {
                expected: act.n,
                found: v.len(),
            });
        }
        report.orbit_rank_at_witness = act.orbit_rank(&v);
        report.witness = v;
    }
    let fixed = match report.fixed_point {
        prehom_core::action::FixedPoint::Yes => "yes",
        prehom_core::action::FixedPoint::No => "no",
        prehom_core::action::FixedPoint::Unknown => "unknown",
    };
    let negative =
        !report.axioms_ok || (*expect_fixed_point && fixed != "yes");
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&serde_json::json!({
            "action": name,
            "r": act.r,
            "s": act.s,
            "n": act.n,
            "axioms_ok": report.axioms_ok,
            "linear": report.linear,
            "fixed_point": fixed,
            "orbit_rank": report.orbit_rank_at_witness,
            "witness": report.witness.iter().map(format_rat).collect::<Vec<_>>(),
        }))?,
        _ => format!(
            "action {name}: axioms {}, linear={}, fixed point: {}, orbit rank {} at ({})",
            if report.axioms_ok { "ok" } else { "FAIL" },
            report.linear,
            fixed,
            report.orbit_rank_at_witness,
            report
                .witness
                .iter()
                .map(format_rat)
                .collect::<Vec<_>>()
                .join(", ")
        ),
    };
    Ok(Outcome { text, negative })
}
