use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hadamat::constructions::{catalog_names, circulant, fourier, lookup, CirculantSpec};
use hadamat::equivalence::{equiv_with, EquivMode};
use hadamat::format::{entry_min_order, format_matrix, parse_entry, parse_matrix};
use hadamat::report::{equiv_json, hadamard_json, matrix_json, mub_json, verify_paper, Verdict};
use hadamat::search::{budget_from_env, render_rows, row_matrix, search, SearchTask};
use hadamat::{CycloMatrix, CATALOG_ORDER};

/// Exit codes: 0 completed, 1 `--assert` failure, 2 usage, parse or guard error.
const EXIT_ASSERT: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "hadamat", version, about = "Exact complex Hadamard matrix toolkit")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Exit with status 1 when the computed verdict is false.
    #[arg(long, global = true)]
    assert: bool,

    /// Root order: target field for `gen`, `check` and `canon`; `N` for `search`.
    #[arg(long, global = true, value_name = "M")]
    order: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a catalog matrix or a family member as a matrix file.
    Gen {
        /// Catalog name (F5, D_1, A11, ...) or family: fourier, identity, circulant.
        name: String,
        /// Dimension for families.
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated first row for `circulant`, in entry syntax.
        #[arg(long)]
        row: Option<String>,
    },
    /// Check a property of matrix files.
    Check {
        kind: CheckKind,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Dephase a matrix (first row and column all ones).
    Canon { file: PathBuf },
    /// Decide Hadamard equivalence of two matrices (n <= 5).
    Equiv {
        first: PathBuf,
        second: PathBuf,
        /// Stop at the first matching permutation pair.
        #[arg(long)]
        first_match: bool,
        /// Skip the search when the invariant fingerprints differ (implies
        /// --first-match).
        #[arg(long)]
        prefilter: bool,
    },
    /// Enumerate circulant complex Hadamard matrices with entries in the
    /// `--order` roots of unity.
    Search {
        #[arg(long)]
        n: usize,
        /// Let the first entry range over all roots instead of fixing it to 1.
        #[arg(long)]
        free_first: bool,
        /// Disable partial-row pruning.
        #[arg(long)]
        no_prune: bool,
        #[arg(long, value_enum, default_value_t = SearchFormat::Rows)]
        format: SearchFormat,
    },
    /// Adjudicate every claim in the catalog's source and print the JSON report.
    VerifyPaper,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Hadamard,
    Unitary,
    Mub,
    InverseOrthogonal,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchFormat {
    Rows,
    Matrix,
}

/// A usage, parse or guard error; always exit code 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

/// What a completed command produced: its output and the verdict `--assert`
/// looks at.
struct Outcome {
    text: String,
    verdict: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if cli.assert && !out.verdict {
                ExitCode::from(EXIT_ASSERT)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Fatal> {
    match &cli.command {
        Command::Gen { name, n, row } => {
            let m = generate(name, *n, row.as_deref())?;
            let m = match cli.order {
                Some(order) => m.embed(order)?,
                None => m,
            };
            Ok(Outcome {
                text: format_matrix(&m),
                verdict: true,
            })
        }
        Command::Check { kind, files } => check(cli, *kind, files),
        Command::Canon { file } => {
            let m = load(file, cli.order)?;
            let d = m.dephase()?;
            Ok(Outcome {
                text: format_matrix(&d),
                verdict: true,
            })
        }
        Command::Equiv {
            first,
            second,
            first_match,
            prefilter,
        } => {
            let h1 = load(first, cli.order)?;
            let h2 = load(second, cli.order)?;
            let mode = if *prefilter {
                EquivMode::Prefilter
            } else if *first_match {
                EquivMode::FirstMatch
            } else {
                EquivMode::Exhaustive
            };
            let v = equiv_with(mode, &h1, &h2)?;
            let text = if cli.json {
                json_text(&equiv_json(&v, &h1, &h2))
            } else {
                let mut t = format!(
                    "equivalent: {}\npairs_examined: {}\nfingerprints_match: {}\n",
                    v.equivalent, v.pairs_examined, v.fingerprints_match
                );
                if let Some(k) = v.matching_pairs {
                    t += &format!("matching_pairs: {k}\n");
                }
                if let Some(w) = &v.witness {
                    let d = |xs: &[hadamat::CycloNum]| {
                        xs.iter()
                            .map(hadamat::format::format_entry)
                            .collect::<Vec<_>>()
                            .join(" ")
                    };
                    t += &format!(
                        "witness: H2[i][j] = d1[i] * H1[p1[i]][p2[j]] * d2[j]\n  p1: {:?}\n  p2: {:?}\n  d1: {}\n  d2: {}\n",
                        w.p1,
                        w.p2,
                        d(&w.d1),
                        d(&w.d2)
                    );
                }
                t
            };
            Ok(Outcome {
                text,
                verdict: v.equivalent,
            })
        }
        Command::Search {
            n,
            free_first,
            no_prune,
            format,
        } => {
            let order = cli
                .order
                .ok_or_else(|| Fatal("search needs --order N (the root order)".into()))?;
            let task = SearchTask::new(*n, order, !free_first)?
                .with_budget(budget_from_env()?)
                .with_prune(!no_prune);
            let result = search(&task)?;
            let text = if cli.json {
                json_text(&json!({
                    "n": task.n,
                    "order": task.order,
                    "fix_first": task.fix_first,
                    "rows": result.rows,
                    "solutions": result.rows.len(),
                    "classes": result.class_count,
                    "classes_exact": result.class_count_exact,
                }))
            } else {
                match format {
                    SearchFormat::Rows => render_rows(&result),
                    SearchFormat::Matrix => {
                        let mut t = String::new();
                        for row in &result.rows {
                            t += &format_matrix(&row_matrix(order, row)?);
                            t.push('\n');
                        }
                        t + &format!("# solutions {}\n", result.rows.len())
                    }
                }
            };
            Ok(Outcome {
                verdict: !result.rows.is_empty(),
                text,
            })
        }
        Command::VerifyPaper => {
            let report = verify_paper();
            let verdict = report.claims.iter().all(|c| c.verdict != Verdict::Fail);
            Ok(Outcome {
                text: report.to_json_string(),
                verdict,
            })
        }
    }
}

/// Resolves `F5`, `A11`, `D1` and similar spellings to catalog names.
fn catalog_name(name: &str) -> Option<&'static str> {
    let squash = |s: &str| s.replace('_', "");
    let wanted = squash(name);
    catalog_names().into_iter().find(|c| *c == name || squash(c) == wanted)
}

fn generate(name: &str, n: Option<usize>, row: Option<&str>) -> Result<CycloMatrix, Fatal> {
    let need_n = || n.ok_or_else(|| Fatal(format!("family {name} needs --n")));
    match name {
        "fourier" => Ok(fourier(need_n()?)?),
        "identity" => Ok(CycloMatrix::identity(need_n()?, 1)),
        "circulant" => {
            let row = row.ok_or_else(|| Fatal("circulant needs --row".into()))?;
            let cells: Vec<&str> = row.split(',').map(str::trim).collect();
            if let Some(n) = n {
                if n != cells.len() {
                    return Err(Fatal(format!("--n {n} but the row has {} entries", cells.len())));
                }
            }
            let mut order = 1u32;
            for c in &cells {
                order = lcm(order, entry_min_order(c).map_err(Fatal)?);
            }
            let entries = cells
                .iter()
                .map(|c| parse_entry(c, order))
                .collect::<Result<Vec<_>, _>>()
                .map_err(Fatal)?;
            Ok(circulant(&CirculantSpec::new(entries)?))
        }
        _ => match catalog_name(name).and_then(lookup) {
            Some(m) => Ok(m.matrix.clone()),
            None => Err(Fatal(format!(
                "unknown matrix {name:?}; families: fourier, identity, circulant; catalog (order {CATALOG_ORDER}): {}",
                catalog_names().join(", ")
            ))),
        },
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn load(path: &Path, order: Option<u32>) -> Result<CycloMatrix, Fatal> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
    let m = parse_matrix(&text).map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
    match order {
        Some(o) => m
            .embed(o)
            .map_err(|e| Fatal(format!("{}: {e}", path.display()))),
        None => Ok(m),
    }
}

fn label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn check(cli: &Cli, kind: CheckKind, files: &[PathBuf]) -> Result<Outcome, Fatal> {
    let mats = files
        .iter()
        .map(|f| Ok((label(f), load(f, cli.order)?)))
        .collect::<Result<Vec<_>, Fatal>>()?;

    if let CheckKind::Mub = kind {
        let members: Vec<(&str, &CycloMatrix)> =
            mats.iter().map(|(n, m)| (n.as_str(), m)).collect();
        let r = hadamat::mub::check_mub_set(&members)?;
        let text = if cli.json {
            json_text(&mub_json(&r))
        } else {
            use hadamat::mub::PairCell;
            let mut t = String::new();
            for (i, row) in r.pairwise.iter().enumerate() {
                for (j, cell) in row.iter().enumerate().skip(i + 1) {
                    let v = match cell {
                        PairCell::Vacuous => continue,
                        PairCell::Unbiased => "unbiased".to_string(),
                        PairCell::Biased(w) => format!(
                            "biased at columns ({}, {}), n|<u,v>|^2 - 1 = {}",
                            w.i,
                            w.j,
                            hadamat::format::format_entry(&w.value)
                        ),
                        PairCell::Error(e) => format!("error: {e}"),
                    };
                    t += &format!("{} / {}: {v}\n", r.names[i], r.names[j]);
                }
            }
            t + &format!("mub: {}\n", r.verdict)
        };
        return Ok(Outcome {
            text,
            verdict: r.verdict,
        });
    }

    let mut results = Vec::new();
    for (name, m) in &mats {
        let (ok, detail) = match kind {
            CheckKind::Hadamard => {
                let d = hadamard_json(m);
                (d["is_hadamard"].as_bool().unwrap_or(false), d)
            }
            CheckKind::Unitary => {
                let ok = m.is_unitary();
                (ok, json!({ "is_unitary": ok, "scale": m.scale_exp() }))
            }
            CheckKind::InverseOrthogonal => match m.is_inverse_orthogonal() {
                Ok(ok) => (ok, json!({ "is_inverse_orthogonal": ok })),
                Err(e) => (false, json!({ "is_inverse_orthogonal": false, "reason": e.to_string() })),
            },
            CheckKind::Mub => unreachable!("handled above"),
        };
        results.push((name.clone(), m, ok, detail));
    }
    let verdict = results.iter().all(|r| r.2);
    let kind_name = match kind {
        CheckKind::Hadamard => "hadamard",
        CheckKind::Unitary => "unitary",
        CheckKind::InverseOrthogonal => "inverse-orthogonal",
        CheckKind::Mub => "mub",
    };
    let text = if cli.json {
        json_text(&json!({
            "check": kind_name,
            "verdict": verdict,
            "matrices": results.iter().map(|(name, m, ok, detail)| json!({
                "name": name,
                "verdict": ok,
                "matrix": matrix_json(m),
                "details": detail,
            })).collect::<Vec<_>>(),
        }))
    } else {
        let mut t = String::new();
        for (name, _, ok, detail) in &results {
            t += &format!("{name}: {kind_name} {ok}");
            if let Some(cell) = detail.get("failing_cell").filter(|c| !c.is_null()) {
                t += &format!(
                    " (first failure at ({}, {}): {} = {})",
                    cell["row"], cell["col"], cell["kind"].as_str().unwrap_or(""),
                    cell["value"]["numeric"].as_str().unwrap_or("")
                );
            }
            if let Some(reason) = detail.get("reason").and_then(Value::as_str) {
                t += &format!(" ({reason})");
            }
            t.push('\n');
        }
        t
    };
    Ok(Outcome { text, verdict })
}
