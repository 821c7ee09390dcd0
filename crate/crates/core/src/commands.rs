//! The `sfc` command line: argument parsing and one runner per subcommand.
//!
//! Errors are reported as one machine-parsable line on stderr,
//! `error: code=<code> message="<text>"`, followed by a human hint.

use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::curve::{CriticalSet, SampledCurve};
use crate::error::{Error, Result};
use crate::evolutoid::{self, SingularSet};
use crate::figures;
use crate::involutoid::{self, InvolutoidCurve, InvolutoidSingularities};
use crate::io::{self, Cell, LayerKind, PlotDocument, SpecFile};
use crate::measures;
use crate::space::{SpaceForm, Vec3};
use crate::verify;
use crate::wavefront;

/// Inclusive sweep `lo:hi:n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sweep {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n] = parts[..] else {
            return Err(format!("expected lo:hi:n, got \"{s}\""));
        };
        let lo: f64 = lo.parse().map_err(|e| format!("bad lower bound: {e}"))?;
        let hi: f64 = hi.parse().map_err(|e| format!("bad upper bound: {e}"))?;
        let n: usize = n.parse().map_err(|e| format!("bad count: {e}"))?;
        if n == 0 || !lo.is_finite() || !hi.is_finite() {
            return Err("sweep needs finite bounds and a positive count".into());
        }
        Ok(Sweep { lo, hi, n })
    }
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        wavefront::sweep_values(self.lo, self.hi, self.n)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "sfc",
    version,
    about = "Evolutoids, involutoids and wavefronts of convex curves in the hyperbolic plane, the plane and the sphere",
    after_help = "Angles are in radians unless --deg is given. SFC_SAMPLES overrides the default sample count."
)]
pub struct Cli {
    /// Samples per period (a power of two, at least 64).
    #[arg(long, global = true, env = "SFC_SAMPLES", default_value_t = 2048)]
    pub samples: usize,

    /// Read every angle argument in degrees.
    #[arg(long, global = true)]
    pub deg: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the α-evolutoid, its singular points and cusp types.
    Evolutoid(EvolutoidArgs),
    /// Closed involutoid, or a single trajectory of the λ equation.
    Involutoid(InvolutoidArgs),
    /// Slanted wavefronts and their singular points.
    Wavefront(WavefrontArgs),
    /// Length ratio and enclosed areas for one angle.
    Measure(MeasureArgs),
    /// Area ratio of geodesic circles and their evolutoids over a radius sweep.
    AreaRatio(AreaRatioArgs),
    /// First angle at which the evolutoid becomes singular.
    Alpha0(Alpha0Args),
    /// Regenerate the figure set.
    Figures(FiguresArgs),
    /// Run the full property suite.
    Verify,
}

#[derive(Debug, Args)]
pub struct EvolutoidArgs {
    /// Curve spec (JSON).
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long)]
    pub alpha: f64,
    /// CSV columns: s, rho, x1, x2, x3, speed, regular, k_alpha.
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
    #[arg(long)]
    pub out_svg: Option<PathBuf>,
    /// On the sphere, also emit the antipodal copy (rows appended after the principal copy).
    #[arg(long)]
    pub both_copies: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Fwd,
    Bwd,
}

#[derive(Debug, Args)]
pub struct InvolutoidArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long)]
    pub alpha: f64,
    /// The unique closed involutoid (default).
    #[arg(long, conflicts_with = "from_lambda0")]
    pub closed: bool,
    /// Integrate from this initial value instead.
    #[arg(long)]
    pub from_lambda0: Option<f64>,
    #[arg(long, value_enum, default_value_t = Direction::Fwd, requires = "from_lambda0")]
    pub direction: Direction,
    #[arg(long, default_value_t = 1, requires = "from_lambda0")]
    pub periods: usize,
    /// CSV columns: s, lambda, x1, x2, x3, singular_flag.
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
    #[arg(long)]
    pub out_svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WavefrontArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, required_unless_present = "c0_sweep")]
    pub c0: Option<f64>,
    /// Sweep of front constants, `lo:hi:n`.
    #[arg(long)]
    pub c0_sweep: Option<Sweep>,
    /// CSV columns: s, r, x1, x2, x3, speed, singular (fronts concatenated).
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
    #[arg(long)]
    pub out_svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long)]
    pub alpha: f64,
}

#[derive(Debug, Args)]
pub struct AreaRatioArgs {
    #[arg(long, default_value = "hyperbolic")]
    pub space: String,
    #[arg(long)]
    pub alpha: f64,
    /// Radius sweep `lo:hi:n`.
    #[arg(long = "r")]
    pub radii: Sweep,
    /// CSV columns: alpha, radius, ratio, closed_form, evolutoid_radius.
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Alpha0Args {
    #[arg(long)]
    pub spec: PathBuf,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[arg(long, default_value = "figures")]
    pub out_dir: PathBuf,
}

/// Validated run settings shared by the subcommands.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunConfig {
    pub samples: usize,
    pub deg: bool,
}

impl RunConfig {
    pub fn new(samples: usize, deg: bool) -> Result<Self> {
        if samples < 64 || !samples.is_power_of_two() {
            return Err(Error::InvalidInput(format!(
                "samples must be a power of two >= 64, got {samples}"
            )));
        }
        Ok(RunConfig { samples, deg })
    }

    /// Angle argument in radians, checked against `[0, π/2]`.
    pub fn alpha(&self, raw: f64) -> Result<f64> {
        let a = if self.deg { raw.to_radians() } else { raw };
        if !(0.0..=std::f64::consts::FRAC_PI_2 + 1e-12).contains(&a) {
            return Err(Error::Domain {
                what: "alpha must lie in [0, pi/2]",
                value: a,
            });
        }
        Ok(a.min(std::f64::consts::FRAC_PI_2))
    }
}

/// Parses `args`, runs the subcommand and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let text = e.to_string();
            let summary: Vec<&str> = text
                .lines()
                .take_while(|l| !l.starts_with("Usage:"))
                .map(|l| l.trim().trim_start_matches("error: "))
                .filter(|l| !l.is_empty() && !l.starts_with("For more information"))
                .collect();
            eprintln!("error: code=usage message={:?}", summary.join(" "));
            let human = text
                .trim_start_matches("error: ")
                .trim_start_matches(summary.first().copied().unwrap_or(""));
            let usage: String = human
                .lines()
                .filter(|l| !l.trim().is_empty())
                .map(|l| format!("{l}\n"))
                .collect();
            eprint!("{usage}");
            return 2;
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            report(&e);
            1
        }
    }
}

/// Prints the one-line diagnostic for `e` and a human hint.
pub fn report(e: &Error) {
    eprintln!("error: code={} message={:?}", e.code(), e.to_string());
    let hint = match e {
        Error::Spec(_) => "check the curve spec fields; every violated constraint is listed above",
        Error::NotConvex { .. } => "the curve must have k > 0 (k > 1 on the hyperbolic plane)",
        Error::NotClosed { .. } => {
            "this operation needs a closed curve; use a closing curvature family or explicit samples"
        }
        Error::Io { .. } => "check that the path exists and is writable",
        Error::Domain { .. } => "angles are in radians unless --deg is given",
        _ => "see `sfc --help`",
    };
    eprintln!("{hint}");
}

pub fn run(cli: &Cli) -> Result<i32> {
    let cfg = RunConfig::new(cli.samples, cli.deg)?;
    match &cli.command {
        Command::Evolutoid(a) => run_evolutoid(&cfg, a).map(|_| 0),
        Command::Involutoid(a) => run_involutoid(&cfg, a).map(|_| 0),
        Command::Wavefront(a) => run_wavefront(&cfg, a).map(|_| 0),
        Command::Measure(a) => run_measure(&cfg, a).map(|_| 0),
        Command::AreaRatio(a) => run_area_ratio(&cfg, a).map(|_| 0),
        Command::Alpha0(a) => run_alpha0(&cfg, a).map(|_| 0),
        Command::Figures(a) => {
            for p in figures::run_figure_suite(&a.out_dir, cfg.samples)? {
                println!("{}", p.display());
            }
            Ok(0)
        }
        Command::Verify => {
            let checks = verify::run_suite(cfg.samples);
            for c in &checks {
                println!("{c}");
            }
            Ok(if checks.iter().all(|c| c.passed) { 0 } else { 1 })
        }
    }
}

fn load(cfg: &RunConfig, path: &PathBuf) -> Result<(SpecFile, SampledCurve)> {
    let file = io::read_spec(path)?;
    let curve = file.spec.build(cfg.samples)?;
    Ok((file, curve))
}

fn plot(
    file: &SpecFile,
    curve: &SampledCurve,
    title: &str,
    alpha: Option<f64>,
    cfg: &RunConfig,
) -> Result<PlotDocument> {
    let mut doc = PlotDocument::new(curve.form(), title);
    doc.alpha = alpha;
    doc.samples = cfg.samples;
    doc.spec_hash = Some(file.hash.clone());
    let pts: Vec<Vec3> = curve.frames()[..curve.len()].iter().map(|f| f.point).collect();
    if curve.is_closed() {
        doc.add_curve(LayerKind::Curve, &pts, true)?;
    } else {
        doc.add_path_lenient(
            LayerKind::Curve,
            &curve.frames().iter().map(|f| f.point).collect::<Vec<_>>(),
        );
    }
    Ok(doc)
}

fn xyz(p: &Vec3) -> [Cell; 3] {
    [p.x.into(), p.y.into(), p.z.into()]
}

pub const EVOLUTOID_COLUMNS: [&str; 8] = ["s", "rho", "x1", "x2", "x3", "speed", "regular", "k_alpha"];

pub fn run_evolutoid(cfg: &RunConfig, args: &EvolutoidArgs) -> Result<()> {
    let alpha = cfg.alpha(args.alpha)?;
    let (file, curve) = load(cfg, &args.spec)?;
    if args.both_copies && curve.form() != SpaceForm::Spherical {
        return Err(Error::InvalidInput(
            "--both-copies only applies to spherical curves".into(),
        ));
    }
    let samples = evolutoid::sample_evolutoid(&curve, alpha)?;
    let mut rows: Vec<Vec<Cell>> = Vec::with_capacity(samples.len());
    let copies: &[f64] = if args.both_copies { &[1.0, -1.0] } else { &[1.0] };
    for &sign in copies {
        for e in &samples {
            let [x1, x2, x3] = xyz(&(e.point * sign));
            rows.push(vec![
                e.s.into(),
                e.rho.into(),
                x1,
                x2,
                x3,
                e.speed.into(),
                e.regular.into(),
                e.curvature_alpha.into(),
            ]);
        }
    }
    let singular = evolutoid::singular_set(&curve, alpha)?;
    println!("space: {}", curve.form().name());
    println!("alpha: {alpha}");
    println!("samples: {}", samples.len());
    match &singular {
        SingularSet::Everywhere => println!("singular: every point (evolutoid collapses to a point)"),
        SingularSet::Isolated(pts) => {
            println!("singular points: {}", pts.len());
            for p in pts {
                println!("  s = {:.12}  type = {}", p.s0, p.kind.name());
            }
        }
    }
    if let Some(path) = &args.out_csv {
        io::emit_csv(&EVOLUTOID_COLUMNS, &rows, path)?;
    }
    if let Some(path) = &args.out_svg {
        let mut doc = plot(&file, &curve, "evolutoid", Some(alpha), cfg)?;
        let pts: Vec<Vec3> = samples.iter().map(|e| e.point).collect();
        doc.add_curve(LayerKind::Evolutoid, &pts, curve.is_closed())?;
        if args.both_copies {
            let anti: Vec<Vec3> = pts.iter().map(|p| -p).collect();
            doc.add_path_lenient(LayerKind::Evolutoid, &anti);
        }
        let marks = singular
            .points()
            .iter()
            .map(|p| evolutoid::evolutoid_point(&curve, p.s0, alpha))
            .collect::<Result<Vec<_>>>()?;
        doc.add_markers(LayerKind::Singular, &marks)?;
        io::emit_svg(&doc, path)?;
    }
    Ok(())
}

pub const INVOLUTOID_COLUMNS: [&str; 6] = ["s", "lambda", "x1", "x2", "x3", "singular_flag"];

fn involutoid_rows(inv: &InvolutoidCurve) -> Vec<Vec<Cell>> {
    let sol = &inv.solution;
    let marks: Vec<f64> = match involutoid::involutoid_singularities(inv) {
        InvolutoidSingularities::All => sol.s.clone(),
        InvolutoidSingularities::Points(p) => p,
    };
    let half = sol.s.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max) * 0.5;
    sol.s
        .iter()
        .zip(&sol.lambda)
        .zip(&inv.points)
        .map(|((&s, &l), p)| {
            let flag = marks.iter().any(|&m| (m - s).abs() <= half) || l == 0.0;
            let [x1, x2, x3] = xyz(p);
            vec![s.into(), l.into(), x1, x2, x3, flag.into()]
        })
        .collect()
}

pub fn run_involutoid(cfg: &RunConfig, args: &InvolutoidArgs) -> Result<()> {
    let alpha = cfg.alpha(args.alpha)?;
    let (file, curve) = load(cfg, &args.spec)?;
    let inv = match args.from_lambda0 {
        None => {
            let inv = involutoid::closed_involutoid(&curve, alpha)?;
            println!("closed involutoid: lambda(0) = {}", inv.solution.lambda[0]);
            println!("period defect: {:.3e}", inv.solution.period_defect);
            if let Some(u) = &inv.uniqueness {
                println!("uniqueness spread over {} starts: {:.3e}", u.starts.len(), u.spread);
            }
            if let Some((a, b)) = inv.solution.trap_bounds {
                println!("trapping interval: [{a}, {b}]");
            }
            inv
        }
        Some(l0) => {
            let span = args.periods as f64 * curve.period();
            let end = match args.direction {
                Direction::Fwd => span,
                Direction::Bwd => -span,
            };
            let step = curve.period() / (512usize.max(curve.len())) as f64;
            let sol = involutoid::integrate_lambda(&curve, alpha, l0, 0.0, end, step)?;
            println!("status: {:?}", sol.status);
            println!("lambda at end: {}", sol.last());
            println!("kink events: {}", sol.events.len());
            involutoid::reconstruct_involutoid(&curve, &sol)?
        }
    };
    if let Some(path) = &args.out_csv {
        io::emit_csv(&INVOLUTOID_COLUMNS, &involutoid_rows(&inv), path)?;
    }
    if let Some(path) = &args.out_svg {
        let mut doc = plot(&file, &curve, "involutoid", Some(alpha), cfg)?;
        match &inv.curve {
            Some(c) => {
                let pts: Vec<Vec3> = c.frames()[..c.len()].iter().map(|f| f.point).collect();
                doc.add_curve(LayerKind::Involutoid, &pts, true)?;
            }
            None => doc.add_path_lenient(LayerKind::Involutoid, &inv.points),
        }
        io::emit_svg(&doc, path)?;
    }
    Ok(())
}

pub const WAVEFRONT_COLUMNS: [&str; 7] = ["s", "r", "x1", "x2", "x3", "speed", "singular"];

pub fn run_wavefront(cfg: &RunConfig, args: &WavefrontArgs) -> Result<()> {
    let alpha = cfg.alpha(args.alpha)?;
    let (file, curve) = load(cfg, &args.spec)?;
    let constants = match (&args.c0_sweep, args.c0) {
        (Some(sw), _) => sw.values(),
        (None, Some(c0)) => vec![c0],
        (None, None) => return Err(Error::InvalidInput("give --c0 or --c0-sweep".into())),
    };
    let grid: Vec<f64> = (0..=curve.len()).map(|i| curve.arc(i)).collect();
    let mut rows = Vec::new();
    let mut fronts = Vec::new();
    for &c0 in &constants {
        let front = wavefront::wavefront(&curve, alpha, c0, &grid)?;
        for w in &front {
            let [x1, x2, x3] = xyz(&w.point);
            rows.push(vec![
                w.s.into(),
                w.r.into(),
                x1,
                x2,
                x3,
                w.speed.into(),
                w.singular.into(),
            ]);
        }
        fronts.push(front);
    }
    let sweep = wavefront::wavefront_sweep(&curve, alpha, &constants)?;
    println!("fronts: {}", constants.len());
    println!("singular points: {}", sweep.points.len());
    for p in &sweep.points {
        println!("  s = {:.12}  branch = {}", p.s, p.branch);
    }
    println!("max distance to evolutoid: {:.3e}", sweep.to_evolutoid);
    if let Some(path) = &args.out_csv {
        io::emit_csv(&WAVEFRONT_COLUMNS, &rows, path)?;
    }
    if let Some(path) = &args.out_svg {
        let mut doc = plot(&file, &curve, "wavefronts", Some(alpha), cfg)?;
        let evo: Vec<Vec3> = evolutoid::sample_evolutoid(&curve, alpha)?
            .iter()
            .map(|e| e.point)
            .collect();
        doc.add_path_lenient(LayerKind::Evolutoid, &evo);
        for front in &fronts {
            doc.add_path_lenient(LayerKind::Wavefront, &front.iter().map(|w| w.point).collect::<Vec<_>>());
        }
        let marks: Vec<Vec3> = sweep.points.iter().map(|p| p.point).collect();
        doc.add_markers(LayerKind::Singular, &marks)?;
        io::emit_svg(&doc, path)?;
    }
    Ok(())
}

pub fn run_measure(cfg: &RunConfig, args: &MeasureArgs) -> Result<()> {
    let alpha = cfg.alpha(args.alpha)?;
    let (file, curve) = load(cfg, &args.spec)?;
    let report = measures::length_ratio(&curve, alpha)?;
    let mut out = json!({
        "spec_sha256": file.hash,
        "space": curve.form().name(),
        "report": report,
        "cos_alpha": alpha.cos(),
    });
    if report.alpha_star_ok {
        out["length_ratio_error"] = json!((report.ratio - alpha.cos()).abs());
    }
    if curve.form() == SpaceForm::Euclidean && curve.is_closed() {
        out["area_inequality"] = serde_json::to_value(measures::plane_area_inequality(&curve, alpha)?)?;
    }
    if let CriticalSet::Points(v) = crate::curve::vertices(&curve) {
        out["vertices"] = json!(v);
    }
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

pub const AREA_RATIO_COLUMNS: [&str; 5] = figures::AREA_RATIO_COLUMNS;

pub fn run_area_ratio(cfg: &RunConfig, args: &AreaRatioArgs) -> Result<()> {
    let alpha = cfg.alpha(args.alpha)?;
    let form = SpaceForm::from_name(&args.space)?;
    let radii = args.radii.values();
    let table = measures::area_ratio_sweep(form, alpha, &radii, cfg.samples.min(1024))?;
    let rows: Vec<Vec<Cell>> = table
        .iter()
        .map(|r| {
            vec![
                r.alpha.into(),
                r.radius.into(),
                r.ratio.into(),
                r.closed_form.into(),
                r.evolutoid_radius.into(),
            ]
        })
        .collect();
    match &args.out_csv {
        Some(path) => io::emit_csv(&AREA_RATIO_COLUMNS, &rows, path)?,
        None => print!("{}", io::csv_string(&AREA_RATIO_COLUMNS, &rows)?),
    }
    Ok(())
}

pub fn run_alpha0(cfg: &RunConfig, args: &Alpha0Args) -> Result<()> {
    let (file, curve) = load(cfg, &args.spec)?;
    let az = evolutoid::alpha_zero(&curve)?;
    let mut out = json!({
        "spec_sha256": file.hash,
        "alpha0": az.alpha,
        "alpha0_deg": az.alpha.to_degrees(),
        "s": az.s,
        "g_s": az.g_s,
    });
    if !curve.curvature_model().is_constant() {
        let p = evolutoid::classify_cusp(&curve, az.s, az.alpha)?;
        out["type"] = json!(p.kind.name());
        out["diagnostics"] = serde_json::to_value(p.diagnostics)?;
    }
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_syntax() {
        assert_eq!(
            "0.05:3:60".parse::<Sweep>().unwrap(),
            Sweep {
                lo: 0.05,
                hi: 3.0,
                n: 60
            }
        );
        assert!("1:2".parse::<Sweep>().is_err());
        assert!("a:2:3".parse::<Sweep>().is_err());
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig::new(100, false).is_err());
        assert!(RunConfig::new(32, false).is_err());
        let cfg = RunConfig::new(64, true).unwrap();
        assert!((cfg.alpha(45.0).unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        assert!(cfg.alpha(100.0).is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
