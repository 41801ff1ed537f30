//! `caustic`: caustics by reflection from the command line.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use caustic_core::algebra::mpoly::{Poly, Vars};
use caustic_core::algebra::parse::parse_poly;
use caustic_core::harness::{self, CurveData, RunReport};
use caustic_core::implicitize::{self, ImageOptions};
use caustic_core::localinv::invariant_bundle;
use caustic_core::numericlab::{self, Window};
use caustic_core::projgeom::ProjPoint;
use caustic_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "caustic",
    version,
    about = "Caustics by reflection of plane algebraic curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Caustic and its dual by elimination.
    Compute(Opts),
    /// Local invariants and the predicted degree and class.
    Invariants(Opts),
    /// Compare the formulas with elimination and run the sampling test.
    Verify(Opts),
    /// Verify every built-in curve at several generic sources.
    Catalog(Opts),
    /// Real points of the caustic in a window, for plotting.
    Trace(Opts),
    /// The curve of sources that are bad for a given point of the mirror.
    Badsource(Opts),
}

#[derive(Args, Clone)]
struct Opts {
    /// Homogeneous equation in x, y, z, or a catalog name.
    #[arg(long)]
    curve: Option<String>,
    /// Light source `[a:b:c]`, or `random` for a generic one.
    #[arg(long)]
    source: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// `x0,x1,y0,y1`.
    #[arg(long, allow_hyphen_values = true, default_value = "-2,2,-2,2")]
    window: String,
    /// Sample count for the sampling test, or slice count for traces.
    #[arg(long)]
    samples: Option<usize>,
    /// Point `[a:b:c]` of the mirror.
    #[arg(long)]
    point: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
    Svg,
}

/// Exit status and a one-line reason.
struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_usage() { 2 } else { 3 },
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        kind: "usage".into(),
        message: message.into(),
    }
}

fn curve(o: &Opts) -> Result<Poly, Failure> {
    let text = o
        .curve
        .as_deref()
        .ok_or_else(|| usage("--curve is required"))?;
    if let Some(e) = harness::entry(text) {
        return Ok(e.equation);
    }
    let f = parse_poly(text, &Vars::xyz())?;
    if !f.is_homogeneous() || f.total_degree().unwrap_or(0) < 2 {
        return Err(usage(
            "the curve must be a homogeneous form of degree at least 2",
        ));
    }
    Ok(f)
}

fn source(o: &Opts, f: &Poly) -> Result<ProjPoint, Failure> {
    match o.source.as_deref() {
        None => Err(usage("--source is required")),
        Some("random") => Ok(harness::generic_source(f, o.seed)?),
        Some(text) => Ok(ProjPoint::parse(text)?),
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn text_report(r: &RunReport) -> String {
    let mut s = format!("curve: {}\n", r.curve);
    if let Some(src) = &r.source {
        s += &format!("source: {src}\n");
    }
    if let Some(i) = &r.invariants {
        s += &format!(
            "invariants: d={} d_dual={} f0={} t_I={} t_J={} g={} mu_I={} mu_J={}\n",
            i.d, i.d_dual, i.f0, i.t_i, i.t_j, i.g, i.mu_i, i.mu_j
        );
    }
    if let Some(p) = &r.predicted {
        s += &format!("predicted: degree {} class {}\n", p.degree, p.class);
    }
    if let Some(c) = &r.computed {
        s += &format!("computed: degree {} class {}\n", c.degree, c.class);
    }
    if let Some(o) = &r.oracle {
        let show = |v: &Option<String>| v.clone().unwrap_or_else(|| "unstable".into());
        s += &format!(
            "oracle: degree {} class {}\n",
            show(&o.degree),
            show(&o.class)
        );
    }
    if let Some(b) = &r.birationality {
        s += &format!(
            "birationality: {:?} over {} samples\n",
            b.verdict, b.samples
        );
    }
    if let Some(e) = &r.caustic_equation {
        s += &format!("caustic: {e}\n");
    }
    if let Some(e) = &r.dual_equation {
        s += &format!("dual of caustic: {e}\n");
    }
    for w in &r.warnings {
        s += &format!("warning: {w}\n");
    }
    s
}

fn emit_run(o: &Opts, r: &RunReport) -> String {
    if o.format == Format::Text {
        text_report(r)
    } else {
        json(r)
    }
}

fn only_json_or_text(o: &Opts) -> Result<(), Failure> {
    if matches!(o.format, Format::Csv | Format::Svg) {
        return Err(usage("csv and svg output are only available for trace"));
    }
    Ok(())
}

/// Output text and whether the checks it reports passed.
fn run(cmd: &Command) -> Result<(String, bool), Failure> {
    match cmd {
        Command::Compute(o) => {
            only_json_or_text(o)?;
            let f = curve(o)?;
            let s = source(o, &f)?;
            let opts = ImageOptions::with_seed(o.seed);
            let c = implicitize::caustic_implicit(&f, &s, &opts)?;
            let d = implicitize::caustic_dual_implicit(&f, &s, &opts)?;
            let mut r = RunReport::new(&f, o.seed);
            r.source = Some(s.to_string());
            r.computed = Some(harness::report::DegreeClass {
                degree: c.degree.to_string(),
                class: d.degree.to_string(),
            });
            r.caustic_equation = Some(c.equation.to_string());
            r.dual_equation = Some(d.equation.to_string());
            r.warnings
                .extend(c.warnings.iter().map(|w| format!("caustic: {w}")));
            r.warnings
                .extend(d.warnings.iter().map(|w| format!("caustic dual: {w}")));
            Ok((emit_run(o, &r), true))
        }
        Command::Invariants(o) => {
            only_json_or_text(o)?;
            let f = curve(o)?;
            let s = match &o.source {
                Some(_) => source(o, &f)?,
                None => ProjPoint::from_ints(0, 0, 1),
            };
            let dual = implicitize::dual_curve(&f, &ImageOptions::with_seed(o.seed))?;
            let b = invariant_bundle(&f, &s, dual.degree)?;
            let mut r = RunReport::new(&f, o.seed);
            r.source = o.source.as_ref().map(|_| s.to_string());
            r.set_invariants(&b);
            Ok((emit_run(o, &r), true))
        }
        Command::Verify(o) => {
            only_json_or_text(o)?;
            let f = curve(o)?;
            let s = source(o, &f)?;
            if let Some(why) = harness::source_defect(&f, &s)? {
                return Err(usage(format!("source {s} is not generic: {why}")));
            }
            let data = CurveData::new(&f, o.seed)?;
            let v = harness::verify_with(&data, &s, o.seed)?;
            let n = o.samples.unwrap_or(harness::BIRATIONALITY_SAMPLES);
            let bir = numericlab::birationality_test(
                &f,
                &v.report.source,
                n,
                o.seed,
                harness::COLLISION_TOL,
            )?;
            let r = RunReport::from_verification(&f, o.seed, &v, Some(&bir));
            Ok((emit_run(o, &r), r.passed()))
        }
        Command::Catalog(o) => {
            only_json_or_text(o)?;
            let rep = harness::run_catalog(o.seed);
            let out = if o.format == Format::Text {
                let mut s = String::new();
                for e in &rep.entries {
                    s += &format!("{}: {}\n", e.name, if e.passed { "pass" } else { "FAIL" });
                    for r in &e.sources {
                        s += &text_report(r)
                            .lines()
                            .map(|l| format!("  {l}\n"))
                            .collect::<String>();
                    }
                    for err in &e.errors {
                        s += &format!("  error: {err}\n");
                    }
                }
                s
            } else {
                json(&rep)
            };
            Ok((out, rep.passed))
        }
        Command::Trace(o) => {
            let f = curve(o)?;
            let s = source(o, &f)?;
            let w: Window = o.window.parse()?;
            let segs = numericlab::real_trace(&f, &s, &w, o.samples.unwrap_or(400))?;
            let out = match o.format {
                Format::Csv => numericlab::to_csv(&segs),
                Format::Svg => numericlab::to_svg(&segs, &w),
                Format::Json => json(&segs),
                Format::Text => segs
                    .iter()
                    .map(|seg| {
                        seg.iter()
                            .map(|p| format!("{} {}", p[0], p[1]))
                            .collect::<Vec<_>>()
                            .join("\n")
                            + "\n\n"
                    })
                    .collect(),
            };
            Ok((out, true))
        }
        Command::Badsource(o) => {
            only_json_or_text(o)?;
            let f = curve(o)?;
            let text = o
                .point
                .as_deref()
                .ok_or_else(|| usage("--point is required"))?;
            let m = ProjPoint::parse(text)?;
            let b = harness::bad_source_curve(&f, &m, o.seed)?;
            let ok = b.degree <= b.bound;
            let out = if o.format == Format::Text {
                format!(
                    "point: {}\nequation: {}\ndegree: {} (bound {})\n",
                    b.point, b.equation, b.degree, b.bound
                )
            } else {
                json(&b)
            };
            Ok((out, ok))
        }
    }
}

fn out_path(cmd: &Command) -> Option<&PathBuf> {
    match cmd {
        Command::Compute(o)
        | Command::Invariants(o)
        | Command::Verify(o)
        | Command::Catalog(o)
        | Command::Trace(o)
        | Command::Badsource(o) => o.out.as_ref(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.command).and_then(|(text, ok)| {
        match out_path(&cli.command) {
            Some(p) => std::fs::write(p, &text),
            None => std::io::stdout().write_all(text.as_bytes()),
        }
        .map_err(|e| Failure {
            code: 3,
            kind: "io".into(),
            message: e.to_string(),
        })?;
        Ok(ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: verification_failed: a check did not pass");
            ExitCode::from(1)
        }
        Err(f) => {
            eprintln!("error: {}: {}", f.kind, f.message.replace('\n', " "));
            ExitCode::from(f.code)
        }
    }
}
