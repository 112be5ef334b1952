//! `ptree`: generate, check, complete and embed pseudotrees, rank sequential
//! trees and do ordinal-term arithmetic.
//!
//! Exit status is 0 on success, 1 when the input is well formed but fails a
//! validation (a JSON report goes to stdout), and 2 on malformed input.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pseudotree::ordinal::{OrderChoice, DEFAULT_MAX_DEPTH};
use pseudotree::seqtree::SeqTreeJson;
use pseudotree::{
    canonical_tree, check_pm, check_pseudotree, complete_to_pm, embed_countable,
    isomorphism_prefix, random_pseudotree, rank, truncate, AnyOrd, CheckReport, FinitePm,
    FinitePseudotree, OrdError, Rational, SequentialTree, StdOrd, TqEnumeration, TqStructure,
    Truncation,
};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "ptree",
    version,
    about = "Pseudotrees, T_Q embeddings, tree ranks and ordinal terms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum BEnum {
    /// Canonical enumeration with indices 1<->2, 3<->4, ... swapped.
    Swapped,
    /// Every endpoint multiplied by `--scale`.
    Scaled,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    /// Exponents are standard terms.
    Std,
    /// Naturals below a dense block of primed rationals.
    Cut,
}

#[derive(Subcommand)]
enum Command {
    /// Random pseudotree from a seed.
    GenPseudotree {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        size: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
    },
    /// Validate a structure; exit 1 with a violation report if it fails.
    Check {
        /// JSON structure, `-` for stdin.
        #[arg(long = "in")]
        input: PathBuf,
        /// Also require a least element and all binary meets.
        #[arg(long)]
        pm: bool,
    },
    /// Down-set completion to a PM structure.
    Complete {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
        /// Also write the embedding as `[original, completion]` pairs.
        #[arg(long)]
        emb: Option<PathBuf>,
    },
    /// Embed a finite PM structure into T_Q.
    EmbedTq {
        #[arg(long = "in")]
        input: PathBuf,
        /// Shuffle the extension order (root stays first).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Back-and-forth between two enumerations of T_Q.
    IsoPrefix {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "swapped")]
        b_enum: BEnum,
        /// Factor for `--b-enum scaled`.
        #[arg(long, default_value = "2")]
        scale: String,
    },
    /// Ranks of every node of a sequential tree.
    Rank {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// Truncated canonical tree of a given rank.
    CanonicalTree {
        term: String,
        #[arg(long, default_value_t = 3)]
        width: u64,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
    },
    /// Ordinal-term arithmetic.
    Ord {
        #[command(subcommand)]
        op: OrdOp,
        /// Exponent order; primed exponents select `cut` when omitted.
        #[arg(long, value_enum, global = true)]
        order: Option<Order>,
        #[arg(long, value_enum, default_value = "text", global = true)]
        format: TextFormat,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH, global = true)]
        max_depth: usize,
    },
}

#[derive(Subcommand)]
enum OrdOp {
    /// Prints `<`, `=` or `>`.
    Cmp {
        a: String,
        b: String,
    },
    Add {
        a: String,
        b: String,
    },
    /// The `d` with `a + d = b`.
    Sub {
        a: String,
        b: String,
    },
    /// Non-standard head `i` and standard tail `w` with `a = i + w`.
    Split {
        a: String,
    },
    /// A pure term strictly between pure terms `a < b`.
    Between {
        a: String,
        b: String,
    },
}

enum Failure {
    /// Well-formed input that fails validation; the payload goes to stdout.
    Invalid(String),
    Malformed(String),
}

type Outcome = Result<String, Failure>;

fn malformed(e: impl std::fmt::Display) -> Failure {
    Failure::Malformed(e.to_string())
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| malformed(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| malformed(format!("{}: {e}", path.display())))
}

fn read_structure(path: &Path) -> Result<FinitePseudotree, Failure> {
    FinitePseudotree::from_json_str(&read_input(path)?).map_err(malformed)
}

fn pretty(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// One `[domain, codomain]` pair per line.
fn pairs_json(pairs: &[(String, String)]) -> String {
    let lines: Vec<String> = pairs
        .iter()
        .map(|p| format!("  {}", serde_json::to_string(p).expect("strings serialize")))
        .collect();
    if lines.is_empty() {
        "[]\n".to_string()
    } else {
        format!("[\n{}\n]\n", lines.join(",\n"))
    }
}

fn report_outcome(report: CheckReport) -> Outcome {
    if report.valid {
        Ok(pretty(&report))
    } else {
        Err(Failure::Invalid(pretty(&report)))
    }
}

fn render_graph(t: &FinitePseudotree, format: GraphFormat) -> String {
    match format {
        GraphFormat::Json => format!("{}\n", t.to_json_string()),
        GraphFormat::Dot => t.to_dot(),
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::GenPseudotree { seed, size, format } => {
            let t = random_pseudotree(seed, size).map_err(malformed)?;
            Ok(render_graph(&t, format))
        }
        Command::Check { input, pm } => {
            let t = read_structure(&input)?;
            report_outcome(if pm {
                check_pm(&t)
            } else {
                check_pseudotree(&t)
            })
        }
        Command::Complete { input, format, emb } => {
            let t = read_structure(&input)?;
            let c = complete_to_pm(&t).map_err(|e| Failure::Invalid(pretty(&e.0)))?;
            if let Some(path) = emb {
                fs::write(&path, pairs_json(&c.embedding_pairs(&t)))
                    .map_err(|e| malformed(format!("{}: {e}", path.display())))?;
            }
            Ok(render_graph(&c.structure, format))
        }
        Command::EmbedTq { input, seed } => {
            let t = read_structure(&input)?;
            let report = check_pm(&t);
            if !report.valid {
                return Err(Failure::Invalid(pretty(&report)));
            }
            let pm = FinitePm::new(t).expect("checked above");
            let pm = match seed {
                Some(s) => pm.shuffled(s),
                None => pm,
            };
            let tq = TqStructure::canonical();
            let pi = embed_countable(&pm, &tq, pm.len() as u64)
                .map_err(|e| Failure::Invalid(pretty(&e.to_string())))?;
            Ok(pairs_json(&pi.render_pairs(&pm, &tq)))
        }
        Command::IsoPrefix { n, b_enum, scale } => {
            let a = TqStructure::canonical();
            let b = TqStructure::new(match b_enum {
                BEnum::Swapped => TqEnumeration::SwappedPairs,
                BEnum::Scaled => {
                    let q: Rational = scale.parse().map_err(malformed)?;
                    if !q.is_positive() {
                        return Err(malformed("--scale must be positive"));
                    }
                    TqEnumeration::Scaled(q)
                }
            });
            let (pi, _) = isomorphism_prefix(&a, &b, n)
                .map_err(|e| Failure::Invalid(pretty(&e.to_string())))?;
            Ok(pairs_json(&pi.render_pairs(&a, &b)))
        }
        Command::Rank { input, format } => {
            let tree = SequentialTree::from_json_str(&read_input(&input)?).map_err(malformed)?;
            let table = rank(&tree).map_err(malformed)?;
            Ok(match format {
                TextFormat::Text => {
                    let mut s = format!("rank {}\n", table.tree_rank);
                    for (node, r) in &table.ranks {
                        s.push_str(&format!("{} {r}\n", serde_json::to_string(node).unwrap()));
                    }
                    s
                }
                TextFormat::Json => {
                    #[derive(Serialize)]
                    struct RankJson<'a> {
                        tree_rank: u64,
                        ranks: Vec<(&'a Vec<u64>, u64)>,
                    }
                    let json = RankJson {
                        tree_rank: table.tree_rank,
                        ranks: table.ranks.iter().map(|(k, v)| (k, *v)).collect(),
                    };
                    format!("{}\n", serde_json::to_string(&json).unwrap())
                }
            })
        }
        Command::CanonicalTree {
            term,
            width,
            depth,
            max_depth,
        } => {
            let alpha = StdOrd::parse(&term).map_err(malformed)?;
            let recipe = canonical_tree(&alpha, max_depth).map_err(malformed)?;
            let tree = truncate(&recipe, Truncation { width, depth });
            let json: SeqTreeJson = tree.to_json();
            Ok(format!("{}\n", serde_json::to_string(&json).unwrap()))
        }
        Command::Ord {
            op,
            order,
            format,
            max_depth,
        } => run_ord(op, order, format, max_depth),
    }
}

/// Parse errors and depth overruns are malformed input; arithmetic
/// preconditions that fail on well-formed terms are validation failures.
fn ord_failure(e: OrdError) -> Failure {
    match e {
        OrdError::Parse { .. } | OrdError::MixedOrders | OrdError::TooDeep { .. } => malformed(e),
        other => {
            #[derive(Serialize)]
            struct ErrJson {
                error: String,
            }
            Failure::Invalid(pretty(&ErrJson {
                error: other.to_string(),
            }))
        }
    }
}

fn run_ord(op: OrdOp, order: Option<Order>, format: TextFormat, max_depth: usize) -> Outcome {
    let texts: Vec<&str> = match &op {
        OrdOp::Split { a } => vec![a],
        OrdOp::Cmp { a, b }
        | OrdOp::Add { a, b }
        | OrdOp::Sub { a, b }
        | OrdOp::Between { a, b } => {
            vec![a, b]
        }
    };
    let choice = match order {
        Some(Order::Std) => OrderChoice::Standard,
        Some(Order::Cut) => OrderChoice::Cut,
        None => OrderChoice::detect(texts.iter().copied()),
    };
    let terms = texts
        .iter()
        .map(|t| AnyOrd::parse(t, choice, max_depth))
        .collect::<Result<Vec<_>, _>>()
        .map_err(ord_failure)?;
    let single = |value: AnyOrd| match format {
        TextFormat::Text => format!("{value}\n"),
        TextFormat::Json => pretty(&value.to_string()),
    };
    match op {
        OrdOp::Cmp { .. } => {
            let ord = terms[0].cmp_checked(&terms[1]).map_err(ord_failure)?;
            let sym = match ord {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            Ok(match format {
                TextFormat::Text => format!("{sym}\n"),
                TextFormat::Json => pretty(&sym),
            })
        }
        OrdOp::Add { .. } => terms[0].add(&terms[1]).map(single).map_err(ord_failure),
        OrdOp::Sub { .. } => terms[0].sub(&terms[1]).map(single).map_err(ord_failure),
        OrdOp::Between { .. } => terms[0]
            .dense_between(&terms[1])
            .map(single)
            .map_err(ord_failure),
        OrdOp::Split { .. } => {
            let (i, w) = terms[0].split();
            Ok(match format {
                TextFormat::Text => format!("i = {i}\nw = {w}\n"),
                TextFormat::Json => {
                    #[derive(Serialize)]
                    struct SplitJson {
                        i: String,
                        w: String,
                    }
                    pretty(&SplitJson {
                        i: i.to_string(),
                        w: w.to_string(),
                    })
                }
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(cli.command) {
        Ok(out) => (out, 0),
        Err(Failure::Invalid(out)) => (out, 1),
        Err(Failure::Malformed(msg)) => {
            eprintln!("ptree: {msg}");
            return ExitCode::from(2);
        }
    };
    let mut stdout = io::stdout().lock();
    if stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
