//! Argument parsing and command execution.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use hyperline_core::decimal::{digit_at, extended_value, parse_extended, render_lightstone};
use hyperline_core::expr::Expr;
use hyperline_core::microscope::{render_ascii, MicroscopeView, Placement, MIN_ASCII_WIDTH};
use hyperline_core::{hyperfinite_sum, Classification, Error, Hypernat, Hyperreal, SeqExpr};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::laws::{run_suite, FieldOps, Verdict};
use crate::svg::render_svg;

/// Longest rank range `digits` prints.
pub const MAX_DIGIT_SPAN: u32 = 10_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "hyperline",
    version,
    about = "Exact arithmetic on hyperreal germs in one infinite unit H"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the canonical form of a germ.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Compare two germs: Less, Equal or Greater.
    Cmp {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Standard part of a limited germ.
    St {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Zero, Infinitesimal, NonzeroLimited or Infinite.
    Classify {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Hyperfinite sum from n = 1: `sum TERM UPPER` or `sum "sum(TERM, UPPER)"`.
    Sum {
        #[arg(allow_hyphen_values = true)]
        term: String,
        upper: Option<String>,
    },
    /// Substitute H for n in a sequence.
    Ultralimit {
        #[arg(allow_hyphen_values = true)]
        sequence: String,
    },
    /// Extended decimal expansion of a germ, or the value of one.
    Lightstone {
        #[arg(allow_hyphen_values = true)]
        input: String,
        /// Read INPUT as an extended decimal and print its value.
        #[arg(long)]
        from_decimal: bool,
    },
    /// Decimal digits of a germ in [0, 1) at finite ranks.
    Digits {
        expr: String,
        #[arg(long, default_value_t = 1)]
        from: u32,
        #[arg(long, default_value_t = 10)]
        to: u32,
    },
    /// Place labelled points under a microscope and draw the view.
    Microscope {
        #[arg(long, allow_hyphen_values = true)]
        center: String,
        #[arg(long, default_value = "pow(1/10,H)", allow_hyphen_values = true)]
        unit: String,
        /// Points as `label=expr` (or just `expr`).
        points: Vec<String>,
        #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u16).range(MIN_ASCII_WIDTH as i64..))]
        width: u16,
        /// Also write an SVG rendering to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Place the points that blur into the center again at unit².
        #[arg(long)]
        resolve_blur: bool,
    },
    /// Run the ordered-field and standard-part law suites.
    Laws {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u32).range(1..))]
        cases: u32,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Cmp { .. } => "cmp",
            Command::St { .. } => "st",
            Command::Classify { .. } => "classify",
            Command::Sum { .. } => "sum",
            Command::Ultralimit { .. } => "ultralimit",
            Command::Lightstone { .. } => "lightstone",
            Command::Digits { .. } => "digits",
            Command::Microscope { .. } => "microscope",
            Command::Laws { .. } => "laws",
        }
    }

    fn input_json(&self) -> Value {
        match self {
            Command::Eval { expr } | Command::St { expr } | Command::Classify { expr } => {
                json!({ "expr": expr })
            }
            Command::Cmp { left, right } => json!({ "left": left, "right": right }),
            Command::Sum { term, upper } => json!({ "term": term, "upper": upper }),
            Command::Ultralimit { sequence } => json!({ "sequence": sequence }),
            Command::Lightstone {
                input,
                from_decimal,
            } => {
                json!({ "input": input, "from_decimal": from_decimal })
            }
            Command::Digits { expr, from, to } => json!({ "expr": expr, "from": from, "to": to }),
            Command::Microscope {
                center,
                unit,
                points,
                width,
                svg,
                resolve_blur,
            } => json!({
                "center": center,
                "unit": unit,
                "points": points,
                "width": width,
                "svg": svg.as_ref().map(|p| p.display().to_string()),
                "resolve_blur": resolve_blur,
            }),
            Command::Laws { seed, cases } => json!({ "seed": seed, "cases": cases }),
        }
    }
}

/// What a command produced. `failure` is set when output exists but the
/// command still ends unsuccessfully.
struct Outcome {
    text: String,
    result: Value,
    failure: Option<CliError>,
}

impl Outcome {
    fn line(text: impl Into<String>) -> Self {
        let text = text.into();
        Outcome {
            result: Value::String(text.clone()),
            text,
            failure: None,
        }
    }
}

fn germ(text: &str) -> Result<Hyperreal, Error> {
    text.parse()
}

/// Reads `a*H + c` written in the germ grammar.
fn hypernat(text: &str) -> Result<Hypernat, CliError> {
    let not_affine = || {
        CliError::Domain(Error::UnsupportedForm(format!(
            "upper bound {text} is not of the form a*H + c"
        )))
    };
    let value = germ(text)?.as_exppoly().ok_or_else(not_affine)?;
    let mut coeffs = vec![];
    for (base, poly) in value.terms() {
        if !base.is_one() || poly.degree().unwrap_or(0) > 1 {
            return Err(not_affine());
        }
        coeffs = poly.coeffs().to_vec();
    }
    coeffs.resize(2, hyperline_core::Rational::zero());
    let int = |q: &hyperline_core::Rational| -> Result<i64, CliError> {
        if !q.is_integer() {
            return Err(not_affine());
        }
        i64::try_from(q.numer()).map_err(|_| not_affine())
    };
    Ok(Hypernat::new(int(&coeffs[1])?, int(&coeffs[0])?)?)
}

fn sum_note(total: &Hyperreal) -> Result<String, Error> {
    if total.classify() == Classification::Infinite {
        return Ok("sum is infinite".into());
    }
    let shadow = total.st()?;
    let gap = total.sub(&Hyperreal::from_rational(shadow.clone()))?;
    Ok(match gap.signum() {
        0 => format!("sum is standard (st = {shadow})"),
        s if s < 0 => format!("shortfall is infinitesimal (st = {shadow})"),
        _ => format!("excess is infinitesimal (st = {shadow})"),
    })
}

fn placements_text(placements: &[Placement], width: usize, out: &mut String) {
    for p in placements {
        let _ = writeln!(out, "{}: {}", p.label, p.position);
    }
    out.push('\n');
    out.push_str(&render_ascii(placements, width));
}

fn placements_json(placements: &[Placement]) -> Value {
    placements
        .iter()
        .map(|p| json!({ "label": p.label, "position": p.position.to_string() }))
        .collect()
}

fn verdict_json(v: &Verdict) -> Value {
    json!({
        "law": v.law,
        "passed": v.passed(),
        "cases": v.cases,
        "failures": v.failures,
        "counterexample": v.first.as_ref().map(|cx| json!({
            "case": cx.case,
            "inputs": cx.inputs.iter().map(|(k, v)| (k.to_string(), Value::String(v.clone()))).collect::<serde_json::Map<_, _>>(),
            "detail": cx.detail,
        })),
    })
}

fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Eval { expr } => Ok(Outcome::line(germ(expr)?.to_string())),
        Command::Cmp { left, right } => {
            let order = germ(left)?.compare(&germ(right)?);
            Ok(Outcome::line(format!("{order:?}")))
        }
        Command::St { expr } => Ok(Outcome::line(germ(expr)?.st()?.to_string())),
        Command::Classify { expr } => Ok(Outcome::line(germ(expr)?.classify().name())),
        Command::Sum { term, upper } => {
            let (term, upper) = match upper {
                Some(upper) => (SeqExpr::parse(term)?, hypernat(upper)?),
                None => {
                    let (term, upper) = Expr::parse_sum_call(term, 'n', 'H')?;
                    (SeqExpr::new(term), Hypernat::try_from(upper)?)
                }
            };
            let total = hyperfinite_sum(&term, upper)?;
            let note = sum_note(&total)?;
            Ok(Outcome {
                text: format!("{total}\nnote: {note}"),
                result: json!({
                    "value": total.to_string(),
                    "classification": total.classify().name(),
                    "note": note,
                }),
                failure: None,
            })
        }
        Command::Ultralimit { sequence } => Ok(Outcome::line(
            SeqExpr::parse(sequence)?.ultralimit()?.to_string(),
        )),
        Command::Lightstone {
            input,
            from_decimal: true,
        } => Ok(Outcome::line(
            extended_value(&parse_extended(input)?)?.to_string(),
        )),
        Command::Lightstone {
            input,
            from_decimal: false,
        } => Ok(Outcome::line(render_lightstone(&germ(input)?)?)),
        Command::Digits { expr, from, to } => {
            if *from == 0 || to < from || to - from >= MAX_DIGIT_SPAN {
                return Err(CliError::Usage(format!(
                    "rank range must satisfy 1 <= from <= to < from + {MAX_DIGIT_SPAN}"
                )));
            }
            let x = germ(expr)?;
            let digits = (*from..=*to)
                .map(|k| digit_at(&x, k).map(|d| char::from(b'0' + d)))
                .collect::<Result<String, _>>()?;
            Ok(Outcome {
                result: json!({ "from": from, "to": to, "digits": digits }),
                text: digits,
                failure: None,
            })
        }
        Command::Microscope {
            center,
            unit,
            points,
            width,
            svg,
            resolve_blur,
        } => {
            let mut view = MicroscopeView::new(germ(center)?, germ(unit)?);
            for point in points {
                let (label, expr) = point.split_once('=').unwrap_or((point, point));
                view = view.with_point(label.trim(), germ(expr)?);
            }
            let width = usize::from(*width);
            let placements = view.place()?;
            let mut text = String::new();
            placements_text(&placements, width, &mut text);
            let mut result = json!({
                "placements": placements_json(&placements),
                "ascii": render_ascii(&placements, width),
            });
            if *resolve_blur {
                let refined = view.refined()?;
                let closer = refined.place()?;
                if !closer.is_empty() {
                    text.push_str("\nresolved at unit^2:\n");
                    placements_text(&closer, width, &mut text);
                }
                result["resolved"] = placements_json(&closer);
            }
            if let Some(path) = svg {
                render_svg(&placements, path)?;
            }
            Ok(Outcome {
                text: text.trim_end().to_string(),
                result,
                failure: None,
            })
        }
        Command::Laws { seed, cases } => {
            let verdicts = run_suite(&FieldOps::exact(), *seed, *cases as usize);
            let failed = verdicts.iter().filter(|v| !v.passed()).count();
            let mut text = String::new();
            for v in &verdicts {
                let _ = writeln!(text, "{v}");
            }
            let _ = write!(
                text,
                "{} laws, {} passed, {} failed",
                verdicts.len(),
                verdicts.len() - failed,
                failed
            );
            Ok(Outcome {
                text,
                result: json!({
                    "seed": seed,
                    "cases": cases,
                    "laws": verdicts.iter().map(verdict_json).collect::<Vec<_>>(),
                }),
                failure: (failed > 0).then_some(CliError::LawFailure {
                    failed,
                    laws: verdicts.len(),
                }),
            })
        }
    }
}

fn report_error(
    format: Format,
    command: &Command,
    e: &CliError,
    out: &mut dyn Write,
    err: &mut dyn Write,
) {
    let _ = writeln!(err, "{e}");
    if format == Format::Json {
        let object = json!({
            "subcommand": command.name(),
            "input": command.input_json(),
            "error": { "name": e.name(), "message": e.to_string() },
        });
        let _ = writeln!(out, "{object}");
    }
}

/// Runs one command line and returns its exit status: 0 on success, 1 for
/// a domain error, 2 for a usage or syntax error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                let _ = write!(out, "{rendered}");
                return if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                    2
                } else {
                    0
                };
            }
            let _ = write!(
                err,
                "UsageError: {}",
                rendered.trim_start_matches("error: ")
            );
            return 2;
        }
    };
    let command = &cli.command;
    match execute(command) {
        Ok(outcome) => {
            match cli.format {
                Format::Text => {
                    let _ = writeln!(out, "{}", outcome.text);
                }
                Format::Json => {
                    let object = json!({
                        "subcommand": command.name(),
                        "input": command.input_json(),
                        "result": outcome.result,
                    });
                    let _ = writeln!(out, "{object}");
                }
            }
            match outcome.failure {
                None => 0,
                Some(e) => {
                    let _ = writeln!(err, "{e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            report_error(cli.format, command, &e, out, err);
            e.exit_code()
        }
    }
}
