use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use starmon::graph::{
    cardinality_formula, enumerate_class_with_limit, standard_generators, EndoClass,
    DEFAULT_MAX_ENUMERATION_DEGREE,
};
use starmon::monoid::{generate_with_budget, is_generating_set, DEFAULT_ELEMENT_BUDGET};
use starmon::presentation::{
    standard_assignment, star_presentation, verify_presentation_with, Presentation,
    QuotientOptions, Verdict, DEFAULT_MAX_CLASSES,
};
use starmon::rank::{rank_with_options, RankOptions, RankOutcome};
use starmon::Error;

const EXIT_REFUTED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "starmon", version, about = "Endomorphism monoids of star graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a class by brute force and write its element dump.
    Enumerate {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = DEFAULT_MAX_ENUMERATION_DEGREE)]
        budget_degree: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Certify the star graph presentation of a class (end, swend, wend).
    Verify {
        #[command(flatten)]
        target: Target,
        /// Verify this presentation file instead of the built-in one.
        #[arg(long)]
        presentation: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_CLASSES)]
        budget_classes: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_ENUMERATION_DEGREE)]
        budget_degree: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Tabulate cardinality formulas against enumeration as CSV.
    Census {
        /// Inclusive range of n, written `a..b`.
        #[arg(long, value_parser = parse_range)]
        range: (usize, usize),
        #[arg(long, default_value_t = DEFAULT_MAX_ENUMERATION_DEGREE)]
        budget_degree: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Minimum size of a generating set, searched up to `--max-k`.
    Rank {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 6)]
        max_k: usize,
        #[arg(long, default_value_t = 600)]
        budget_rank_secs: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_ENUMERATION_DEGREE)]
        budget_degree: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Write a star graph presentation in the structured JSON format.
    DumpPresentation {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check that the standard generators generate their class.
    CheckGenerators {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = DEFAULT_MAX_ENUMERATION_DEGREE)]
        budget_degree: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Target {
    #[arg(long)]
    n: usize,
    /// One of end, send, swend, wend, aut.
    #[arg(long, value_parser = parse_class)]
    class: EndoClass,
}

#[derive(Args)]
struct Output {
    /// Print the run report as JSON.
    #[arg(long)]
    json: bool,
    /// Write the main artifact (dump, CSV, report) to this file.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_class(s: &str) -> Result<EndoClass, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a range like 3..5, got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    let (a, b) = (parse(a)?, parse(b)?);
    if a == 0 || a > b {
        return Err(format!("range {s:?} must satisfy 1 <= a <= b"));
    }
    Ok((a, b))
}

/// Failure of a command: exit code plus message for standard error.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: format!("{}: {e}", path.display()),
    }
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    parameters: Value,
    results: Value,
    timings_ms: Value,
    version: &'static str,
}

/// What a command produced: the report, its human rendering and exit code.
struct Run {
    parameters: Value,
    results: Value,
    timings: Vec<(&'static str, Duration)>,
    human: String,
    /// Written to `--output` when given (otherwise included in human output).
    artifact: Option<String>,
    code: u8,
}

fn ms(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

fn timed<T>(timings: &mut Vec<(&'static str, Duration)>, label: &'static str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let value = f();
    timings.push((label, start.elapsed()));
    value
}

fn formula_text(n: usize, class: EndoClass) -> Option<String> {
    cardinality_formula(n, class).ok().map(|f| f.to_string())
}

fn enumerate(target: &Target, budget_degree: usize) -> Result<Run, Failure> {
    let mut timings = Vec::new();
    let monoid = timed(&mut timings, "enumerate", || {
        enumerate_class_with_limit(target.n, target.class, budget_degree)
    })?;
    let formula = formula_text(target.n, target.class);
    let matches = formula.as_ref().map(|f| *f == monoid.len().to_string());
    let human = format!(
        "{} S_{}: {} element{}{}\n",
        target.class.label(),
        target.n,
        monoid.len(),
        if monoid.len() == 1 { "" } else { "s" },
        match (&formula, matches) {
            (Some(f), Some(true)) => format!(" (formula {f}, match)"),
            (Some(f), _) => format!(" (formula {f}, MISMATCH)"),
            _ => String::new(),
        }
    );
    Ok(Run {
        parameters: json!({"n": target.n, "class": target.class, "budget_degree": budget_degree}),
        results: json!({"size": monoid.len(), "formula": formula, "formula_matches": matches}),
        timings,
        human,
        artifact: Some(monoid.dump()),
        code: if matches == Some(false) { EXIT_REFUTED } else { 0 },
    })
}

fn verify(
    target: &Target,
    presentation: Option<&Path>,
    budget_classes: usize,
    budget_degree: usize,
) -> Result<Run, Failure> {
    let (p, presentation_id) = match presentation {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
            (Presentation::from_json(&text)?, path.display().to_string())
        }
        None => (
            star_presentation(target.n, target.class)?,
            format!("{}_star_presentation({})", target.class.label(), target.n),
        ),
    };
    let assignment = standard_assignment(target.n, target.class)?;
    let mut timings = Vec::new();
    let monoid = timed(&mut timings, "enumerate", || {
        enumerate_class_with_limit(target.n, target.class, budget_degree)
    })?;
    let options = QuotientOptions {
        bound: monoid.len(),
        max_classes: budget_classes.max(monoid.len()),
    };
    let target_id = format!("{} S_{}", target.class.label(), target.n);
    let report = timed(&mut timings, "verify", || {
        verify_presentation_with(&p, &monoid, &assignment, &options, (&presentation_id, &target_id))
    })?;
    let code = match report.verdict {
        Verdict::Verified => 0,
        Verdict::RefutedRelations | Verdict::RefutedSize => EXIT_REFUTED,
        Verdict::InconclusiveBudget => EXIT_BUDGET,
    };
    let mut human = format!(
        "{}: {} (quotient {}, target {})\n",
        target_id,
        report.verdict.label(),
        match report.quotient_size {
            starmon::presentation::QuotientSize::Exact { size } => size.to_string(),
            starmon::presentation::QuotientSize::Exceeded { classes_reached } => {
                format!("not finished after {classes_reached} classes")
            }
        },
        report.target_size
    );
    for r in &report.failing_relations {
        human.push_str(&format!("  fails: {r}\n"));
    }
    Ok(Run {
        parameters: json!({
            "n": target.n,
            "class": target.class,
            "presentation": presentation_id,
            "budget_classes": options.max_classes,
            "budget_degree": budget_degree,
        }),
        results: serde_json::to_value(&report).expect("report serializes"),
        timings,
        human,
        artifact: None,
        code,
    })
}

fn census(range: (usize, usize), budget_degree: usize) -> Result<Run, Failure> {
    let classes = [EndoClass::End, EndoClass::StrongWeakEnd, EndoClass::WeakEnd, EndoClass::Aut];
    let mut timings = Vec::new();
    let mut rows = Vec::new();
    let mut csv = String::from("n,class,formula,enumerated,match\n");
    let start = Instant::now();
    for n in range.0..=range.1 {
        for class in classes {
            let Some(formula) = formula_text(n, class) else {
                continue;
            };
            let size = enumerate_class_with_limit(n, class, budget_degree)?.len();
            let matches = formula == size.to_string();
            csv.push_str(&format!("{n},{},{formula},{size},{matches}\n", class.label()));
            rows.push(json!({"n": n, "class": class, "formula": formula, "enumerated": size, "match": matches}));
        }
    }
    timings.push(("census", start.elapsed()));
    let all_match = rows.iter().all(|r| r["match"] == json!(true));
    Ok(Run {
        parameters: json!({"range": [range.0, range.1], "budget_degree": budget_degree}),
        results: json!({"rows": rows, "all_match": all_match}),
        timings,
        human: String::new(),
        artifact: Some(csv),
        code: if all_match { 0 } else { EXIT_REFUTED },
    })
}

fn rank(target: &Target, max_k: usize, secs: u64, budget_degree: usize) -> Result<Run, Failure> {
    let mut timings = Vec::new();
    let monoid = timed(&mut timings, "enumerate", || {
        enumerate_class_with_limit(target.n, target.class, budget_degree)
    })?;
    let options = RankOptions {
        deadline: Some(Duration::from_secs(secs)),
        ..RankOptions::new(max_k)
    };
    let outcome = timed(&mut timings, "rank", || rank_with_options(&monoid, &options));
    let (human, code) = match &outcome {
        RankOutcome::Exact { rank, witness } => {
            let gens: Vec<String> = witness.iter().map(|w| format!("[{w}]")).collect();
            (format!("rank {rank}; generated by {}\n", gens.join(" ")), 0)
        }
        RankOutcome::Unknown { searched_up_to, timed_out: false } => (
            format!("unknown: no generating set of size <= {searched_up_to}\n"),
            0,
        ),
        RankOutcome::Unknown { searched_up_to, timed_out: true } => (
            format!("unknown: deadline reached while searching sizes <= {searched_up_to}\n"),
            EXIT_BUDGET,
        ),
    };
    Ok(Run {
        parameters: json!({
            "n": target.n,
            "class": target.class,
            "max_k": max_k,
            "budget_rank_secs": secs,
            "budget_degree": budget_degree,
        }),
        results: json!({"size": monoid.len(), "rank": outcome}),
        timings,
        human: format!("{} S_{}: {human}", target.class.label(), target.n),
        artifact: None,
        code,
    })
}

fn check_generators(target: &Target, budget_degree: usize) -> Result<Run, Failure> {
    let mut timings = Vec::new();
    let monoid = timed(&mut timings, "enumerate", || {
        enumerate_class_with_limit(target.n, target.class, budget_degree)
    })?;
    let gens = standard_generators(target.n, target.class)?;
    let images: Vec<_> = gens.iter().map(|(_, g)| g.clone()).collect();
    let generates = timed(&mut timings, "generate", || is_generating_set(&monoid, &images))?;
    let generated = generate_with_budget(&gens, DEFAULT_ELEMENT_BUDGET)?;
    let listed: Vec<Value> = gens
        .iter()
        .map(|(name, g)| json!({"name": name, "images": g.to_string()}))
        .collect();
    let mut human = String::new();
    for (name, g) in &gens {
        human.push_str(&format!("{name} = [{g}]\n"));
    }
    human.push_str(&format!(
        "{} S_{}: generated {} of {} elements, {}\n",
        target.class.label(),
        target.n,
        generated.len(),
        monoid.len(),
        if generates { "generating" } else { "NOT generating" }
    ));
    Ok(Run {
        parameters: json!({"n": target.n, "class": target.class, "budget_degree": budget_degree}),
        results: json!({
            "generators": listed,
            "generated_size": generated.len(),
            "target_size": monoid.len(),
            "generates": generates,
        }),
        timings,
        human,
        artifact: None,
        code: if generates { 0 } else { EXIT_REFUTED },
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn finish(run: Run, out: &Output) -> Result<u8, Failure> {
    let command = std::iter::once("starmon".to_string())
        .chain(std::env::args().skip(1))
        .collect::<Vec<_>>()
        .join(" ");
    if let (Some(path), Some(artifact)) = (&out.output, &run.artifact) {
        write_file(path, artifact)?;
    }
    let report = RunReport {
        command,
        parameters: run.parameters,
        results: run.results,
        timings_ms: run
            .timings
            .iter()
            .map(|(label, d)| (label.to_string(), json!(ms(*d))))
            .collect::<serde_json::Map<_, _>>()
            .into(),
        version: env!("CARGO_PKG_VERSION"),
    };
    if out.json {
        let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        match (&out.output, &run.artifact) {
            (Some(path), None) => write_file(path, &text)?,
            _ => print!("{text}"),
        }
    } else {
        let mut text = run.human;
        if out.output.is_none() {
            if let Some(artifact) = &run.artifact {
                text.push_str(artifact);
            }
        }
        match (&out.output, &run.artifact) {
            (Some(path), None) => write_file(path, &text)?,
            _ => print!("{text}"),
        }
    }
    Ok(run.code)
}

fn dump_presentation(target: &Target, output: Option<&Path>) -> Result<u8, Failure> {
    let json = star_presentation(target.n, target.class)?.to_json();
    match output {
        Some(path) => write_file(path, &json)?,
        None => print!("{json}"),
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Enumerate { target, budget_degree, out } => finish(enumerate(&target, budget_degree)?, &out),
        Command::Verify {
            target,
            presentation,
            budget_classes,
            budget_degree,
            out,
        } => finish(
            verify(&target, presentation.as_deref(), budget_classes, budget_degree)?,
            &out,
        ),
        Command::Census { range, budget_degree, out } => finish(census(range, budget_degree)?, &out),
        Command::Rank {
            target,
            max_k,
            budget_rank_secs,
            budget_degree,
            out,
        } => finish(rank(&target, max_k, budget_rank_secs, budget_degree)?, &out),
        Command::DumpPresentation { target, output } => dump_presentation(&target, output.as_deref()),
        Command::CheckGenerators { target, budget_degree, out } => {
            finish(check_generators(&target, budget_degree)?, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("starmon: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
