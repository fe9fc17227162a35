//! `twinlab` — exhaustive desk-scale verifier for Coxeter panel realizations
//! and twin-model stabilizer arithmetic.
//!
//! Exit codes: 0 when every executed check passed, 1 when a check failed,
//! 2 on input/validation/resource errors.

mod output;
mod pipeline;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use twinlab_core::{
    panel_complex_a, panel_complex_b, realize, tree_check, Caps, ConditionVerdict, CoxeterSystem,
    Error, Gen, Result, Word,
};

use output::{classification_echo, system_echo, ClassificationEcho, SystemEcho, VerificationReport};
use pipeline::{run_pipeline, twin_suite, PipelineConfig, TwinSelect, VERSION};

#[derive(Parser)]
#[command(
    name = "twinlab",
    version,
    about = "Desk-scale verifier for Coxeter panel realizations and twin-model stabilizer arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Args)]
struct IoArgs {
    /// Input Coxeter system file: {"rank": n, "m": [[..]]} with 0 = infinite label
    #[arg(short, long)]
    input: PathBuf,
    /// Write the output here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the diagram shape (condition A / condition B / 2-spherical / unknown)
    Classify {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Reduce a word to its canonical shortest form
    Reduce {
        #[command(flatten)]
        io: IoArgs,
        /// Generator indices separated by commas, spaces, or dots (e.g. "0,1,0")
        word: String,
    },
    /// Build the panel complex for the diagram and realize it over a chamber ball
    Realize {
        #[command(flatten)]
        io: IoArgs,
        /// Chamber ball radius
        #[arg(short, long, default_value_t = 6)]
        radius: usize,
        /// Also write the realized complex as an edge-list file
        #[arg(long)]
        export_graphs: bool,
    },
    /// Run the realization checks and report pass/fail per statement
    Verify {
        #[command(flatten)]
        io: IoArgs,
        /// Chamber ball radius
        #[arg(short, long, default_value_t = 6)]
        radius: usize,
        /// Word-length cap for the factorization sweep
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Run the twin-model stabilizer arithmetic (rank-2 model over F_q[t, 1/t])
    Twin {
        #[command(flatten)]
        io: IoArgs,
        /// Field sizes to test, comma-separated or repeated
        #[arg(short = 'q', long = "twin-q", value_delimiter = ',', default_values_t = vec![2u8, 3])]
        twin_q: Vec<u8>,
    },
    /// Full pipeline: classification, realization checks, twin model, conclusion
    Report {
        #[command(flatten)]
        io: IoArgs,
        /// Chamber ball radius
        #[arg(short, long, default_value_t = 6)]
        radius: usize,
        /// Word-length cap for the factorization sweep
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Field sizes for the twin-model suite, comma-separated or repeated
        #[arg(short = 'q', long = "twin-q", value_delimiter = ',', default_values_t = vec![2u8, 3])]
        twin_q: Vec<u8>,
        /// Run the twin-model suite even when the input is not its rank-2 diagram
        #[arg(long)]
        twin: bool,
        /// Also write realized complexes as edge-list files
        #[arg(long)]
        export_graphs: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Hard caps, optionally raised via `TWINLAB_CAP_OVERRIDE=max_radius,max_ball[,max_word_len]`.
fn caps_from_env() -> Result<Caps> {
    let Ok(raw) = std::env::var("TWINLAB_CAP_OVERRIDE") else {
        return Ok(Caps::default());
    };
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    if parts.len() < 2 || parts.len() > 3 {
        return Err(Error::Precondition(format!(
            "TWINLAB_CAP_OVERRIDE must be 'max_radius,max_ball[,max_word_len]', got '{raw}'"
        )));
    }
    let parse = |text: &str, what: &str| {
        text.parse::<usize>().map_err(|_| {
            Error::Precondition(format!(
                "TWINLAB_CAP_OVERRIDE: {what} '{text}' is not a non-negative integer"
            ))
        })
    };
    Ok(Caps {
        max_radius: parse(parts[0], "max_radius")?,
        max_ball: parse(parts[1], "max_ball")?,
        max_twin_len: match parts.get(2) {
            Some(text) => Some(parse(text, "max_word_len")?),
            None => None,
        },
    })
}

fn load_system(path: &PathBuf) -> Result<CoxeterSystem> {
    let text = fs::read_to_string(path)?;
    CoxeterSystem::from_json(&text)
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn render(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Markdown => report.to_markdown(),
    }
}

/// Writes exported edge lists next to the report (or into the working
/// directory when the report goes to stdout).
fn write_exports(output: Option<&PathBuf>, exports: &[(String, String)]) -> Result<()> {
    for (name, contents) in exports {
        let path = match output.and_then(|out| out.parent()) {
            Some(dir) => dir.join(name),
            None => PathBuf::from(name),
        };
        fs::write(path, contents)?;
    }
    Ok(())
}

fn parse_word(raw: &str, system: &CoxeterSystem) -> Result<Vec<Gen>> {
    let mut letters = Vec::new();
    for token in raw.split([',', ' ', '.', ';']).filter(|t| !t.is_empty()) {
        let letter: Gen = token.parse().map_err(|_| {
            Error::Precondition(format!("'{token}' is not a generator index"))
        })?;
        system.check_gen(letter)?;
        letters.push(letter);
    }
    Ok(letters)
}

#[derive(Serialize)]
struct ReduceOutput {
    system: SystemEcho,
    input: String,
    normal_form: String,
    length: usize,
    is_identity: bool,
    version: String,
}

#[derive(Serialize)]
struct RealizationEcho {
    chambers: usize,
    vertex_classes: usize,
    edge_classes: usize,
    connected: bool,
    acyclic: bool,
    is_tree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    cycle_witness: Option<Vec<String>>,
}

#[derive(Serialize)]
struct RealizeOutput {
    system: SystemEcho,
    classification: ClassificationEcho,
    realization: RealizationEcho,
    version: String,
}

fn run(cli: Cli) -> Result<ExitCode> {
    let caps = caps_from_env()?;
    match cli.command {
        Command::Classify { io } => {
            let system = load_system(&io.input)?;
            let classification = system.classify_condition();
            system.verify_classification(&classification)?;
            let report = VerificationReport {
                system: system_echo(&system),
                classification: classification_echo(&classification),
                lemmas: Vec::new(),
                conclusion: None,
                version: VERSION.to_string(),
            };
            emit(&render(&report, io.format), io.output.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce { io, word } => {
            let system = load_system(&io.input)?;
            let letters = parse_word(&word, &system)?;
            let element = system.reduce_capped(&Word::new(letters.clone()), &caps)?;
            let out = ReduceOutput {
                system: system_echo(&system),
                input: Word::new(letters).to_string(),
                normal_form: element.to_string(),
                length: element.len(),
                is_identity: element.is_identity(),
                version: VERSION.to_string(),
            };
            let text = match io.format {
                Format::Json => {
                    let mut text = serde_json::to_string_pretty(&out)?;
                    text.push('\n');
                    text
                }
                Format::Markdown => format!(
                    "# twinlab reduce\n\n- input: `{}`\n- normal form: `{}`\n- length: {}\n- identity: {}\n\n---\ntwinlab {}\n",
                    out.input, out.normal_form, out.length, out.is_identity, out.version
                ),
            };
            emit(&text, io.output.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Realize {
            io,
            radius,
            export_graphs,
        } => {
            let system = load_system(&io.input)?;
            let classification = system.classify_condition();
            system.verify_classification(&classification)?;
            let z = match &classification.verdict {
                ConditionVerdict::ConditionA { j, k } => panel_complex_a(&system, j, k)?,
                ConditionVerdict::ConditionB { parts } => panel_complex_b(&system, parts)?,
                other => {
                    return Err(Error::Precondition(format!(
                        "no panel complex is defined for this diagram (classified as {other})"
                    )))
                }
            };
            let ball = system.enumerate_ball(radius, &caps)?;
            let rc = realize(&ball, &z)?;
            let tr = tree_check(&rc)?;
            let out = RealizeOutput {
                system: system_echo(&system),
                classification: classification_echo(&classification),
                realization: RealizationEcho {
                    chambers: rc.chamber_count(),
                    vertex_classes: rc.vertex_count(),
                    edge_classes: rc.edge_count(),
                    connected: tr.connected,
                    acyclic: tr.acyclic,
                    is_tree: tr.is_tree,
                    cycle_witness: tr.cycle_witness.clone(),
                },
                version: VERSION.to_string(),
            };
            let text = match io.format {
                Format::Json => {
                    let mut text = serde_json::to_string_pretty(&out)?;
                    text.push('\n');
                    text
                }
                Format::Markdown => format!(
                    "# twinlab realize\n\n- chambers: {}\n- vertex classes: {}\n- edge classes: {}\n- connected: {}\n- acyclic: {}\n- tree: {}\n\n---\ntwinlab {}\n",
                    out.realization.chambers,
                    out.realization.vertex_classes,
                    out.realization.edge_classes,
                    out.realization.connected,
                    out.realization.acyclic,
                    out.realization.is_tree,
                    out.version
                ),
            };
            emit(&text, io.output.as_ref())?;
            if export_graphs {
                let exports = vec![(format!("realized_r{radius}.edges"), rc.export_edge_list())];
                write_exports(io.output.as_ref(), &exports)?;
            }
            Ok(if tr.is_tree {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Verify {
            io,
            radius,
            max_len,
        } => {
            let system = load_system(&io.input)?;
            let config = PipelineConfig {
                radius,
                max_len,
                twin_q: Vec::new(),
                twin: TwinSelect::Off,
                caps,
            };
            let out = run_pipeline(&system, &config)?;
            emit(&render(&out.report, io.format), io.output.as_ref())?;
            Ok(ExitCode::from(out.report.exit_code() as u8))
        }
        Command::Twin { io, twin_q } => {
            let system = load_system(&io.input)?;
            let classification = system.classify_condition();
            system.verify_classification(&classification)?;
            let config = PipelineConfig {
                radius: 0,
                max_len: 0,
                twin_q,
                twin: TwinSelect::On,
                caps,
            };
            let lemmas = twin_suite(&config)?;
            let report = VerificationReport {
                system: system_echo(&system),
                classification: classification_echo(&classification),
                lemmas,
                conclusion: None,
                version: VERSION.to_string(),
            };
            emit(&render(&report, io.format), io.output.as_ref())?;
            Ok(ExitCode::from(report.exit_code() as u8))
        }
        Command::Report {
            io,
            radius,
            max_len,
            twin_q,
            twin,
            export_graphs,
        } => {
            let system = load_system(&io.input)?;
            let config = PipelineConfig {
                radius,
                max_len,
                twin_q,
                twin: if twin { TwinSelect::On } else { TwinSelect::Auto },
                caps,
            };
            let out = run_pipeline(&system, &config)?;
            emit(&render(&out.report, io.format), io.output.as_ref())?;
            if export_graphs {
                write_exports(io.output.as_ref(), &out.exports)?;
            }
            Ok(ExitCode::from(out.report.exit_code() as u8))
        }
    }
}
