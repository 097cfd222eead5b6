//! The `ultragh` command line front end.
//!
//! Every subcommand is a thin wrapper over a library call. Exit codes:
//! 0 on success (or a positive check), 1 on a domain-level failure such
//! as an invalid space or a non-admissible order, 2 on usage or parse
//! errors. Input paths may be `-` for stdin.

use std::fs;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::canon::canonical_signature;
use crate::dendrogram::dendrogram_of;
use crate::embed::{embed_finite, one_point_extension, verify_embedding, ExtensionInput, SpaceFamily};
use crate::gen::{random_space, GenConfig};
use crate::ghdist::{spec_lower_bound, ugh_with, SearchMode};
use crate::io::{self, IoError, RenderFormat};
use crate::order::{admissible_order, check_admissible, contiguity_violations, default_admissible_order, PointOrder};
use crate::rational::Rational;
use crate::space::UltrametricSpace;

#[derive(Debug, Parser)]
#[command(name = "ultragh", version, about = "Exact computations on finite ultrametric spaces")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Ascii,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LinkageFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the ultrametric axioms.
    Validate { input: String },
    /// Print the spectrum (distinct distances, including 0).
    Spectrum {
        input: String,
        /// Only values at or above this level.
        #[arg(long)]
        above: Option<String>,
    },
    /// Quotient at a level, as a space document.
    Quotient {
        input: String,
        #[arg(long)]
        level: String,
    },
    /// Canonical signature of each input, one per line.
    Canon {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Gromov-Hausdorff ultrametric between two spaces.
    Ugh {
        a: String,
        b: String,
        /// Print only the spectral lower bound.
        #[arg(long)]
        lower_bound_only: bool,
        /// Exhaustive scan over candidate levels instead of binary search.
        #[arg(long)]
        scan: bool,
    },
    /// Build or check an admissible order.
    Order {
        input: String,
        /// Insertion sequence as comma-separated point indices.
        #[arg(long, conflicts_with = "check")]
        sequence: Option<String>,
        /// Check the order given by --order instead of building one.
        #[arg(long, requires = "order")]
        check: bool,
        /// Comma-separated labels.
        #[arg(long)]
        order: Option<String>,
    },
    /// Embed a space by prefix subspaces of an admissible order.
    Embed {
        input: String,
        /// `auto` or comma-separated labels.
        #[arg(long, default_value = "auto")]
        order: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Extend an embedding by one point.
    Extend {
        family: String,
        /// Base space; defaults to the family's source.
        #[arg(long)]
        source: Option<String>,
        /// `label:d1,d2,...`, distances to the base points in order.
        #[arg(long)]
        new_point: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Recompute all pairwise distances of an embedding.
    Verify {
        family: String,
        /// Space to check against; defaults to the family's source.
        #[arg(long)]
        source: Option<String>,
    },
    /// Generate a random ultrametric space.
    Gen {
        #[arg(long)]
        n: usize,
        /// Comma-separated positive merge heights.
        #[arg(long)]
        heights: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_arity: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Convert a linkage table into a space document.
    Linkage {
        input: String,
        /// Comma-separated leaf labels; defaults to 0..n-1.
        #[arg(long)]
        labels: Option<String>,
        /// Input format; guessed from the content when omitted.
        #[arg(long, value_enum)]
        format: Option<LinkageFormat>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Draw the dendrogram of a space.
    Render {
        input: String,
        /// `auto` or comma-separated labels.
        #[arg(long, default_value = "auto")]
        order: String,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Debug)]
enum Failure {
    /// Exit 1, message on stdout.
    Domain(String),
    /// Exit 2, message on stderr.
    Usage(String),
}

type CliResult = Result<String, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

struct Context<'a> {
    stdin: &'a mut dyn Read,
    json: bool,
}

impl Context<'_> {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| usage(format!("stdin: {e}")))?;
            Ok(s)
        } else {
            fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))
        }
    }

    fn space(&mut self, path: &str) -> Result<UltrametricSpace, Failure> {
        let text = self.read(path)?;
        io::space_from_json(&text).map_err(|e| usage(format!("{path}: {e}")))
    }

    fn family(&mut self, path: &str) -> Result<SpaceFamily, Failure> {
        let text = self.read(path)?;
        io::family_from_json(&text).map_err(|e| usage(format!("{path}: {e}")))
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let mut ctx = Context { stdin, json: cli.json };
    match dispatch(cli.command, &mut ctx) {
        Ok(text) => {
            let _ = write!(out, "{text}");
            0
        }
        Err(Failure::Domain(text)) => {
            let _ = write!(out, "{text}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn parse_rational(text: &str, what: &str) -> Result<Rational, Failure> {
    text.parse().map_err(|e| usage(format!("{what}: {e}")))
}

fn split_list(text: &str) -> Vec<String> {
    text.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn to_json(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
    s.push('\n');
    s
}

fn emit(text: String, out: Option<&str>) -> CliResult {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| usage(format!("{path}: {e}")))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn resolve_order(space: &UltrametricSpace, choice: &str) -> Result<PointOrder, Failure> {
    if choice == "auto" {
        return Ok(default_admissible_order(space));
    }
    PointOrder::from_labels(space, &split_list(choice)).map_err(usage)
}

fn dispatch(command: Command, ctx: &mut Context<'_>) -> CliResult {
    match command {
        Command::Validate { input } => validate(ctx, &input),
        Command::Spectrum { input, above } => {
            let space = ctx.space(&input)?;
            let values = match above {
                Some(eps) => space.spectrum_above(&parse_rational(&eps, "--above")?),
                None => space.spectrum().values().to_vec(),
            };
            if ctx.json {
                Ok(to_json(json!({ "spectrum": values })))
            } else {
                let parts: Vec<String> = values.iter().map(ToString::to_string).collect();
                Ok(format!("{}\n", parts.join(" ")))
            }
        }
        Command::Quotient { input, level } => {
            let space = ctx.space(&input)?;
            let t = parse_rational(&level, "--level")?;
            Ok(io::space_to_json(&space.quotient(&t)))
        }
        Command::Canon { inputs } => {
            let mut sigs = Vec::with_capacity(inputs.len());
            for path in &inputs {
                sigs.push(canonical_signature(&ctx.space(path)?));
            }
            if ctx.json {
                Ok(to_json(json!({ "signatures": sigs })))
            } else {
                Ok(sigs.iter().map(|s| format!("{s}\n")).collect())
            }
        }
        Command::Ugh {
            a,
            b,
            lower_bound_only,
            scan,
        } => {
            let x = ctx.space(&a)?;
            let y = ctx.space(&b)?;
            if lower_bound_only {
                let bound = spec_lower_bound(&x, &y);
                return Ok(if ctx.json {
                    to_json(json!({ "lower_bound": bound }))
                } else {
                    format!("lower_bound={bound}\n")
                });
            }
            let mode = if scan { SearchMode::Scan } else { SearchMode::Binary };
            let r = ugh_with(&x, &y, mode);
            Ok(if ctx.json {
                to_json(serde_json::to_value(&r).expect("result serializes"))
            } else {
                format!(
                    "value={} level={} signature={}\n",
                    r.value, r.witness_level, r.witness_signature
                )
            })
        }
        Command::Order {
            input,
            sequence,
            check,
            order,
        } => order_cmd(ctx, &input, sequence, check, order),
        Command::Embed { input, order, out } => {
            let space = ctx.space(&input)?;
            let ord = resolve_order(&space, &order)?;
            let fam = embed_finite(&space, &ord).map_err(|e| Failure::Domain(format!("{e}\n")))?;
            emit(io::family_to_json(&fam), out.as_deref())
        }
        Command::Extend {
            family,
            source,
            new_point,
            out,
        } => {
            let fam = ctx.family(&family)?;
            let fam = match source {
                Some(path) => {
                    let src = ctx.space(&path)?;
                    let (_, images) = fam.into_parts();
                    SpaceFamily::new(src, images).map_err(usage)?
                }
                None => fam,
            };
            let (label, dists) = new_point
                .split_once(':')
                .ok_or_else(|| usage("--new-point must look like `label:d1,d2,...`"))?;
            let distances = split_list(dists)
                .iter()
                .map(|d| parse_rational(d, "--new-point"))
                .collect::<Result<Vec<_>, _>>()?;
            let input = ExtensionInput {
                base: fam,
                label: label.trim().to_string(),
                distances,
            };
            let ext = one_point_extension(&input).map_err(|e| Failure::Domain(format!("{e}\n")))?;
            emit(io::family_to_json(&ext.into_family(&input.base)), out.as_deref())
        }
        Command::Verify { family, source } => {
            let fam = ctx.family(&family)?;
            let src = match source {
                Some(path) => ctx.space(&path)?,
                None => fam.source().clone(),
            };
            let report = verify_embedding(&src, fam.images()).map_err(usage)?;
            let text = if ctx.json {
                to_json(json!({
                    "passed": report.passed(),
                    "pairs": report.pairs,
                }))
            } else {
                let failures = report.failures();
                let mut s = format!(
                    "{} pairs={} mismatches={}\n",
                    if failures.is_empty() { "pass" } else { "fail" },
                    report.pairs.len(),
                    failures.len()
                );
                for p in &failures {
                    s.push_str(&format!(
                        "{} {} expected={} actual={}\n",
                        src.label(p.i),
                        src.label(p.j),
                        p.expected,
                        p.actual
                    ));
                }
                s
            };
            if report.passed() {
                Ok(text)
            } else {
                Err(Failure::Domain(text))
            }
        }
        Command::Gen {
            n,
            heights,
            seed,
            max_arity,
            out,
        } => {
            let heights = split_list(&heights)
                .iter()
                .map(|h| parse_rational(h, "--heights"))
                .collect::<Result<Vec<_>, _>>()?;
            let cfg = GenConfig::new(n, heights, seed, max_arity).map_err(usage)?;
            emit(io::space_to_json(&random_space(&cfg)), out.as_deref())
        }
        Command::Linkage {
            input,
            labels,
            format,
            out,
        } => {
            let text = ctx.read(&input)?;
            let format = format.unwrap_or(if text.trim_start().starts_with('[') {
                LinkageFormat::Json
            } else {
                LinkageFormat::Csv
            });
            let rows = match format {
                LinkageFormat::Csv => io::parse_linkage_csv(&text),
                LinkageFormat::Json => io::parse_linkage_json(&text),
            }
            .map_err(|e| usage(format!("{input}: {e}")))?;
            let labels = match labels {
                Some(l) => split_list(&l),
                None => (0..=rows.len()).map(|i| i.to_string()).collect(),
            };
            let dendro = io::parse_linkage(&rows, &labels).map_err(|e| usage(format!("{input}: {e}")))?;
            dendro.validate().map_err(usage)?;
            emit(io::space_to_json(&dendro.to_space()), out.as_deref())
        }
        Command::Render {
            input,
            order,
            format,
            out,
        } => {
            let space = ctx.space(&input)?;
            let labels: Vec<String> = if order == "auto" {
                default_admissible_order(&space)
                    .labels(&space)
                    .into_iter()
                    .map(String::from)
                    .collect()
            } else {
                split_list(&order)
            };
            let format = match format {
                Format::Svg => RenderFormat::Svg,
                Format::Ascii => RenderFormat::Ascii,
            };
            let text = io::render(&dendrogram_of(&space), &labels, format).map_err(usage)?;
            emit(text, out.as_deref())
        }
    }
}

fn validate(ctx: &mut Context<'_>, input: &str) -> CliResult {
    let text = ctx.read(input)?;
    match io::space_from_json(&text) {
        Ok(space) => Ok(if ctx.json {
            to_json(json!({ "valid": true, "n": space.len() }))
        } else {
            format!("valid n={}\n", space.len())
        }),
        Err(IoError::Space(e)) => Err(Failure::Domain(if ctx.json {
            to_json(json!({ "valid": false, "error": e.to_string() }))
        } else {
            format!("invalid: {e}\n")
        })),
        Err(e) => Err(usage(format!("{input}: {e}"))),
    }
}

fn order_cmd(
    ctx: &mut Context<'_>,
    input: &str,
    sequence: Option<String>,
    check: bool,
    order: Option<String>,
) -> CliResult {
    let space = ctx.space(input)?;
    if check {
        let ord = PointOrder::from_labels(&space, &split_list(order.as_deref().unwrap_or_default())).map_err(usage)?;
        let intrusions = contiguity_violations(&space, &ord).len();
        return match check_admissible(&space, &ord) {
            Ok(()) => Ok(if ctx.json {
                to_json(json!({ "admissible": true, "contiguity_violations": intrusions }))
            } else {
                "OK\n".to_string()
            }),
            Err(v) => {
                let (a, b, c) = v.labels(&space);
                Err(Failure::Domain(if ctx.json {
                    to_json(json!({
                        "admissible": false,
                        "violation": [a, b, c],
                        "ranks": [v.ranks.0, v.ranks.1, v.ranks.2],
                        "contiguity_violations": intrusions,
                    }))
                } else {
                    format!(
                        "violation: ({a},{b},{c}) at ranks ({},{},{})\n",
                        v.ranks.0, v.ranks.1, v.ranks.2
                    )
                }))
            }
        };
    }
    if order.is_some() {
        return Err(usage("--order is only used with --check"));
    }
    let ord = match sequence {
        Some(seq) => {
            let indices = split_list(&seq)
                .iter()
                .map(|s| s.parse::<usize>().map_err(|e| usage(format!("--sequence: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            admissible_order(&space, &indices).map_err(usage)?
        }
        None => default_admissible_order(&space),
    };
    let labels = ord.labels(&space);
    Ok(if ctx.json {
        to_json(json!({ "order": labels }))
    } else {
        format!("{}\n", labels.join(","))
    })
}
