use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "logtangent", version, about = "Exact computations with logarithmic sheaves on P² and the cubic surface")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Seed for every sampled panel.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Certify pencils through the marked points (jumping-set).
    #[arg(long, global = true)]
    pub certify: bool,
    /// Fit range for splitting profiles, `lo:hi`.
    #[arg(long, global = true, value_parser = parse_range, allow_hyphen_values = true)]
    pub degree_window: Option<(i64, i64)>,
    /// Search box for destabilizers, `lo:hi`.
    #[arg(long = "box", global = true, value_parser = parse_range, allow_hyphen_values = true)]
    pub bounds: Option<(i64, i64)>,
    /// Tangency scenario for destabilizers.
    #[arg(long, global = true)]
    pub scenario: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got '{s}'"))?;
    let p = |x: &str| x.trim().parse::<i64>().map_err(|_| format!("'{x}' is not an integer"));
    Ok((p(a)?, p(b)?))
}

/// Where a sheaf comes from: exactly one of these is expected.
#[derive(Args, Debug, Clone, Default)]
pub struct SheafInput {
    /// Presentation file (header line, then rows of forms).
    #[arg(long)]
    pub presentation: Option<String>,
    /// Smooth curve: the log tangent sheaf `T(−log D)`.
    #[arg(long)]
    pub curve: Option<String>,
    /// Line arrangement, linear forms separated by `;`.
    #[arg(long)]
    pub arrangement: Option<String>,
    /// Pointed-curve file: the form, then one point per line.
    #[arg(long)]
    pub pointed: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Chern numbers of a log sheaf.
    Chern(SheafInput),
    /// Splitting type of a sheaf restricted to a line.
    Splitting {
        #[command(flatten)]
        input: SheafInput,
        #[arg(long)]
        line: String,
    },
    /// Whether a line is a jumping line of the normalized sheaf.
    JumpingTest {
        #[command(flatten)]
        input: SheafInput,
        #[arg(long)]
        line: String,
    },
    /// Equation of the jumping lines of a smooth cubic in dual coordinates.
    JumpingCurve {
        #[arg(long)]
        cubic: String,
    },
    /// Jumping lines of a pointed conic, or a line panel for a cubic.
    JumpingSet {
        #[arg(long)]
        pointed: Option<String>,
        #[arg(long)]
        cubic: Option<String>,
        /// Random lines tested besides the candidates.
        #[arg(long, default_value_t = 50)]
        negatives: usize,
    },
    /// Freeness certificate of a line arrangement.
    Freeness {
        #[arg(long)]
        arrangement: String,
    },
    /// Presentation of the generalized log sheaf of a pointed curve.
    Steiner {
        #[arg(long)]
        pointed: String,
    },
    /// The matrix Ñ and its comparison with the pointed cubic family.
    NbarMatrix {
        /// Family parameters, comma separated rationals.
        #[arg(long, default_value = "1,2,3")]
        params: String,
    },
    /// Syzygies of a row of forms.
    Syzygy {
        /// Forms separated by `,`.
        #[arg(long)]
        forms: String,
        #[arg(long, default_value_t = 4)]
        max_degree: i64,
    },
    /// Intersection numbers of divisor classes on the cubic surface.
    Pic {
        class: String,
        other: Option<String>,
    },
    /// The 27 lines.
    Lines27,
    /// Pushforward of a line bundle to P².
    Pushforward {
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 6)]
        points: usize,
    },
    /// Restriction of `T_S(−log D)` to a rational curve.
    Keylemma {
        #[arg(long)]
        divisor: String,
        #[arg(long = "on")]
        curve: String,
        /// Number of points of `C ∩ D`.
        #[arg(long)]
        support: i64,
    },
    /// Candidate destabilizing line bundles of `Ω¹_S(log D)`.
    Destabilizers {
        #[arg(long)]
        divisor: String,
        /// Extra constraint file, one row per line.
        #[arg(long)]
        constraints: Option<String>,
        /// Only the rows from the file.
        #[arg(long)]
        no_table: bool,
        /// Require `x·H > μ` instead of `≥`.
        #[arg(long)]
        strict: bool,
        /// Print the constraint rows.
        #[arg(long)]
        rows: bool,
    },
    /// What a line of P² becomes on the cubic surface.
    ClassifyMember {
        /// Six points `[a:b:c]`, separated by spaces or `;`.
        #[arg(long)]
        points: String,
        #[arg(long)]
        line: String,
    },
    /// Whether six points are in general position.
    GeneralPosition {
        #[arg(long)]
        points: String,
    },
}

/// A command result in both output formats.
pub struct Output {
    pub text: String,
    pub json: Value,
    /// Set when a check failed; the report is still printed.
    pub failure: Option<String>,
}

fn dispatch(cli: &Cli) -> anyhow::Result<Output> {
    let run = &cli.run;
    match &cli.command {
        Command::Chern(input) => commands::chern(input),
        Command::Splitting { input, line } => commands::splitting(run, input, line),
        Command::JumpingTest { input, line } => commands::jumping_test(run, input, line),
        Command::JumpingCurve { cubic } => commands::jumping_curve(cubic),
        Command::JumpingSet { pointed, cubic, negatives } => {
            commands::jumping_set(run, pointed.as_deref(), cubic.as_deref(), *negatives)
        }
        Command::Freeness { arrangement } => commands::freeness(arrangement),
        Command::Steiner { pointed } => commands::steiner(run, pointed),
        Command::NbarMatrix { params } => commands::nbar_matrix(run, params),
        Command::Syzygy { forms, max_degree } => commands::syzygy(forms, *max_degree),
        Command::Pic { class, other } => commands::pic(class, other.as_deref()),
        Command::Lines27 => commands::lines27(),
        Command::Pushforward { class, points } => commands::pushforward(class, *points),
        Command::Keylemma { divisor, curve, support } => commands::keylemma(divisor, curve, *support),
        Command::Destabilizers { divisor, constraints, no_table, strict, rows } => {
            commands::destabilizers(run, divisor, constraints.as_deref(), *no_table, *strict, *rows)
        }
        Command::ClassifyMember { points, line } => commands::classify_member(points, line),
        Command::GeneralPosition { points } => commands::general_position(points),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Chern(_) => "chern",
        Command::Splitting { .. } => "splitting",
        Command::JumpingTest { .. } => "jumping-test",
        Command::JumpingCurve { .. } => "jumping-curve",
        Command::JumpingSet { .. } => "jumping-set",
        Command::Freeness { .. } => "freeness",
        Command::Steiner { .. } => "steiner",
        Command::NbarMatrix { .. } => "nbar-matrix",
        Command::Syzygy { .. } => "syzygy",
        Command::Pic { .. } => "pic",
        Command::Lines27 => "lines27",
        Command::Pushforward { .. } => "pushforward",
        Command::Keylemma { .. } => "keylemma",
        Command::Destabilizers { .. } => "destabilizers",
        Command::ClassifyMember { .. } => "classify-member",
        Command::GeneralPosition { .. } => "general-position",
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<logtangent::Error>() {
        Some(logtangent::Error::Parse(_)) | None => 2,
        Some(logtangent::Error::Precondition(_)) => 3,
        Some(logtangent::Error::Verification(_)) => 4,
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            match cli.run.format {
                Format::Text => emit(&out.text),
                Format::Json => {
                    let mut v = json!({ "schema": "logtangent/1", "command": command_name(&cli.command) });
                    if out.failure.is_some() {
                        v["verified"] = json!(false);
                    }
                    if let (Value::Object(m), Value::Object(extra)) = (&mut v, out.json.clone()) {
                        m.extend(extra);
                    }
                    emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable")));
                }
            }
            match out.failure {
                Some(why) => {
                    eprintln!("verification failed: {why}");
                    ExitCode::from(4)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
