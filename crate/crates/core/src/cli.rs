//! The `toric` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 input or validation error,
//! 3 falsification (a theorem or invariant check failed).

use std::io::{Read, Write};

use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::Analysis;
use crate::arrangement::{parse_arrangement, Arrangement};
use crate::census::{
    construct_family, realizable_region, threads_from_env, verify_shnurnikov_set, verify_three_line_theorems,
    SearchBounds, ShnurnikovReport, ThreeLineReport,
};
use crate::genus::{genus_report, SurfaceProfile};
use crate::torus_geometry::{render_svg, RenderOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_FALSIFIED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "toric", version, about = "Toric line arrangements on the 2-torus")]
struct Cli {
    /// Do not print the version banner on stderr.
    #[arg(long, global = true)]
    no_banner: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    ParallelPencil,
    Shnurnikov,
    Cone,
    TwoLines,
    OddSimplicial,
    ThreeEqual,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::ParallelPencil => "parallel-pencil",
            Family::Shnurnikov => "shnurnikov",
            Family::Cone => "cone",
            Family::TwoLines => "two-lines",
            Family::OddSimplicial => "odd-simplicial",
            Family::ThreeEqual => "three-equal",
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Face numbers, profiles and poset data of an arrangement file.
    Analyze {
        /// Arrangement file, or `-` for stdin.
        file: String,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
        /// Include the full intersection poset and Möbius table (JSON only).
        #[arg(long)]
        poset: bool,
    },
    /// Write one of the explicit constructions as an arrangement file.
    Construct {
        family: Family,
        params: Vec<u64>,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Bounded exhaustive census plus the theorem checks.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        coef: i64,
        #[arg(long)]
        denom: i64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        report: Option<String>,
        /// Upper end of the f2 range for the chamber-count check.
        #[arg(long, default_value_t = 12)]
        f2_max: u64,
    },
    /// Exit 0 iff every invariant holds for the arrangement.
    Verify { file: String },
    /// Draw the arrangement in the fundamental domain as SVG.
    Render {
        file: String,
        #[arg(short, long)]
        output: String,
        #[arg(long)]
        labels: bool,
    },
    /// Identity and bound checks for a surface profile JSON file.
    GenusCheck { profile: String },
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

/// Failure carrying its exit code.
struct Failure(i32, String);

type Outcome = Result<i32, Failure>;

fn input(code: i32) -> impl Fn(String) -> Failure {
    move |m| Failure(code, m)
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        let mut s = String::new();
        if path == "-" {
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure(EXIT_INPUT, format!("reading stdin: {e}")))?;
        } else {
            s = std::fs::read_to_string(path).map_err(|e| Failure(EXIT_INPUT, format!("{path}: {e}")))?;
        }
        Ok(s)
    }

    fn write(&mut self, path: &str, content: &str) -> Result<(), Failure> {
        if path == "-" {
            self.stdout
                .write_all(content.as_bytes())
                .map_err(|e| Failure(EXIT_INPUT, format!("writing stdout: {e}")))
        } else {
            std::fs::write(path, content).map_err(|e| Failure(EXIT_INPUT, format!("{path}: {e}")))
        }
    }

    fn arrangement(&mut self, path: &str) -> Result<Arrangement, Failure> {
        let text = self.read(path)?;
        let name = if path == "-" { "<stdin>" } else { path };
        parse_arrangement(&text).map_err(|e| Failure(EXIT_INPUT, format!("{name}: {e}")))
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn analyze(io: &mut Io, file: &str, as_json: bool, with_poset: bool) -> Outcome {
    let arr = io.arrangement(file)?;
    let a = Analysis::new(&arr);
    let out = if as_json {
        json(&if with_poset { a.report_with_poset() } else { a.report() })
    } else {
        a.text()
    };
    io.write("-", &out)?;
    if a.routes_agree() {
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(io.stderr, "falsification: face-count routes disagree");
        Ok(EXIT_FALSIFIED)
    }
}

fn construct(io: &mut Io, family: Family, params: &[u64], output: &str) -> Outcome {
    let arr = construct_family(family.name(), params).map_err(|e| Failure(EXIT_INPUT, e.to_string()))?;
    let args: Vec<String> = params.iter().map(u64::to_string).collect();
    let text = format!("# {} {}\n{}", family.name(), args.join(" "), arr.serialize());
    io.write(output, &text)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct BoundsJson {
    coef: i64,
    denom: i64,
}

#[derive(Serialize)]
struct SearchReport {
    n: usize,
    bounds: BoundsJson,
    examined: u64,
    realized: Vec<(u64, u64, String)>,
    realized_f2: Vec<(u64, String)>,
    chamber_counts: ShnurnikovReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    three_lines: Option<ThreeLineReport>,
    falsifications: Vec<String>,
}

fn search(io: &mut Io, n: usize, coef: i64, denom: i64, report: Option<&str>, f2_max: u64) -> Outcome {
    let bounds = SearchBounds::new(n, coef, denom).map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
    let threads = threads_from_env().map_err(input(EXIT_USAGE))?;

    let census = realizable_region(&bounds, threads);
    let chamber_counts = verify_shnurnikov_set(n, &bounds, 1..=f2_max);
    let three_lines = (n == 3).then(|| verify_three_line_theorems(&bounds, threads));

    let mut falsifications = census.falsifications.clone();
    falsifications.extend(chamber_counts.falsifications.iter().cloned());
    if let Some(t) = &three_lines {
        falsifications.extend(t.falsifications());
    }
    let rep = SearchReport {
        n,
        bounds: BoundsJson { coef, denom },
        examined: census.examined,
        realized: census
            .realized_pairs
            .iter()
            .map(|(&(f0, f2), w)| (f0, f2, w.serialize()))
            .collect(),
        realized_f2: census.realized_f2.iter().map(|(&f2, w)| (f2, w.serialize())).collect(),
        chamber_counts,
        three_lines,
        falsifications,
    };
    let body = json(&rep);
    match report {
        Some(path) => {
            io.write(path, &body)?;
            let _ = writeln!(
                io.stdout,
                "examined {} arrangements, {} (f0, f2) pairs, {} falsification(s)",
                rep.examined,
                rep.realized.len(),
                rep.falsifications.len()
            );
        }
        None => io.write("-", &body)?,
    }
    for f in &rep.falsifications {
        let _ = writeln!(io.stderr, "FALSIFICATION: {f}");
    }
    Ok(if rep.falsifications.is_empty() { EXIT_OK } else { EXIT_FALSIFIED })
}

fn verify(io: &mut Io, file: &str) -> Outcome {
    let arr = io.arrangement(file)?;
    let violations = Analysis::new(&arr).invariant_violations();
    match violations.first() {
        None => {
            let _ = writeln!(io.stdout, "ok: all invariants hold");
            Ok(EXIT_OK)
        }
        Some(v) => {
            let _ = writeln!(io.stdout, "violated: {v}");
            Ok(EXIT_FALSIFIED)
        }
    }
}

fn render(io: &mut Io, file: &str, output: &str, labels: bool) -> Outcome {
    let arr = io.arrangement(file)?;
    let svg = render_svg(
        &arr,
        &RenderOptions {
            labels,
            ..RenderOptions::default()
        },
    );
    io.write(output, &svg)?;
    Ok(EXIT_OK)
}

fn genus_check(io: &mut Io, path: &str) -> Outcome {
    let text = io.read(path)?;
    let profile: SurfaceProfile =
        serde_json::from_str(&text).map_err(|e| Failure(EXIT_INPUT, format!("{path}: {e}")))?;
    profile
        .validate_domain()
        .map_err(|e| Failure(EXIT_INPUT, format!("{path}: {e}")))?;
    let report = genus_report(&profile);
    io.write("-", &json(&report))?;
    Ok(if report.passes() { EXIT_OK } else { EXIT_INPUT })
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    if !cli.no_banner {
        let _ = writeln!(stderr, "toric {}", env!("CARGO_PKG_VERSION"));
    }
    let mut io = Io { stdin, stdout, stderr };
    let outcome = match &cli.command {
        Command::Analyze { file, json, text: _, poset } => analyze(&mut io, file, *json, *poset),
        Command::Construct { family, params, output } => construct(&mut io, *family, params, output),
        Command::Search {
            n,
            coef,
            denom,
            report,
            f2_max,
        } => search(&mut io, *n, *coef, *denom, report.as_deref(), *f2_max),
        Command::Verify { file } => verify(&mut io, file),
        Command::Render { file, output, labels } => render(&mut io, file, output, *labels),
        Command::GenusCheck { profile } => genus_check(&mut io, profile),
    };
    let _ = io.stdout.flush();
    match outcome {
        Ok(code) => code,
        Err(Failure(code, message)) => {
            let _ = writeln!(io.stderr, "error: {message}");
            code
        }
    }
}

pub fn main_exit() -> i32 {
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock())
}
