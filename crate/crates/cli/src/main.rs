//! `shapeft` command-line front end.
//!
//! Machine-readable JSON goes to stdout and diagnostics to stderr. Exit
//! codes: 0 success, 1 malformed input, 2 invariant or tolerance failure,
//! 3 asymptotic-regime violation.

mod manifest;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use shapeft::geom::{signed_area, turning_number, Polygon};
use shapeft::io::{parse_shape, Shape};
use shapeft::moments::{
    davis_sum, first_moments, moments_from_vertices, ComplexPolygon, MomentTable,
};
use shapeft::oracle::triangulate;
use shapeft::scatter::{
    porod_slope, read_pgm, render_pattern, Aperture, DiffractionConfig, IntensityGrid, PorodFit,
    PorodShape, ToneMap,
};
use shapeft::verify::{run_suite, Suite};
use shapeft::xform::{
    polygon_form_factor, polyhedron_form_factor, PolyhedronKernel, Wavevector2, Wavevector3,
};
use shapeft::Error;

use manifest::RunManifest;

/// Largest accepted `|M - oracle| / (|area| diam^(a+b))` for `moments --oracle`.
const MOMENT_ORACLE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "shapeft",
    version,
    about = "Exact Fourier transforms, moments and scattering of polygons and polyhedra"
)]
struct Cli {
    /// Accept self-intersecting polygons; no invariant is asserted for them.
    #[arg(long, global = true)]
    allow_nonsimple: bool,

    /// Re-parse every JSON output and fail unless it reserializes identically.
    #[arg(long, global = true, hide = true)]
    echo_check: bool,

    /// Write the run manifest here instead of stderr.
    #[arg(long, global = true, value_name = "PATH")]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
enum Command {
    /// Area, centroid, perimeter and turning number (volume and surface area for polyhedra).
    Area { shape: PathBuf },

    /// Table of polygon moments M(x^a y^b) for a + b <= K.
    Moments {
        shape: PathBuf,
        #[arg(long, value_name = "K")]
        max_order: usize,
        /// Append triangulation values and the largest deviation from them.
        #[arg(long)]
        oracle: bool,
    },

    /// Form factor at one wavevector.
    Fourier {
        shape: PathBuf,
        /// Components `bx,by` for polygons or `bx,by,bz` for polyhedra.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        beta: Vec<f64>,
    },

    /// Vertex-weight sum equal to the area integral of h'' for h = sum c_k z^k.
    Davis {
        shape: PathBuf,
        /// Coefficients `c0,c1,...`, each real or complex such as `1-2i`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true, value_parser = parse_complex)]
        coeffs: Vec<Complex64>,
    },

    /// Far-field diffraction pattern written as CSV or 16-bit PGM.
    Diffract {
        #[command(flatten)]
        aperture: ApertureArgs,
        #[arg(long)]
        wavelength: f64,
        /// Aperture-to-screen distance.
        #[arg(long)]
        distance: f64,
        /// Screen half-width.
        #[arg(long)]
        extent: f64,
        /// Pixels per axis.
        #[arg(long)]
        res: usize,
        /// Output path ending in `.csv` or `.pgm`.
        #[arg(long)]
        out: PathBuf,
        /// Logarithmic tone map for PGM output.
        #[arg(long)]
        log: bool,
    },

    /// Fit of the orientation-averaged intensity decay exponent.
    Porod {
        #[command(flatten)]
        shape: PorodArgs,
        #[arg(long)]
        kmin: f64,
        #[arg(long)]
        kmax: f64,
        #[arg(long, default_value_t = 60)]
        samples: usize,
        /// Minimum number of averaging directions.
        #[arg(long, default_value_t = 32)]
        directions: usize,
    },

    /// Run the built-in invariant suites; exit 0 iff all pass.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Area { .. } => "area",
            Command::Moments { .. } => "moments",
            Command::Fourier { .. } => "fourier",
            Command::Davis { .. } => "davis",
            Command::Diffract { .. } => "diffract",
            Command::Porod { .. } => "porod",
            Command::Verify { .. } => "verify",
        }
    }
}

#[derive(Debug, Args, Serialize)]
#[group(required = true, multiple = false)]
struct ApertureArgs {
    /// Polygon aperture file.
    shape: Option<PathBuf>,
    /// Disk aperture of this radius.
    #[arg(long, value_name = "R")]
    disk: Option<f64>,
    /// Rectangle aperture with half-widths `a1,a2`.
    #[arg(long, value_name = "A1,A2", value_delimiter = ',')]
    rect: Option<Vec<f64>>,
}

#[derive(Debug, Args, Serialize)]
#[group(required = true, multiple = false)]
struct PorodArgs {
    /// Polygon or polyhedron file.
    shape: Option<PathBuf>,
    #[arg(long, value_name = "R")]
    sphere: Option<f64>,
    #[arg(long, value_name = "R")]
    disk: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum SuiteArg {
    Geom,
    Xform,
    Moments,
    Identities,
    All,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    s.trim()
        .parse::<Complex64>()
        .map_err(|e| format!("{s:?} is not a complex number: {e}"))
}

/// Error carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn check(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::InvalidPolygon(_)
            | Error::InvalidPolyhedron(_)
            | Error::InvalidArgument(_)
            | Error::Degenerate(_)
            | Error::MissingMoment { .. } => 1,
            Error::Invariant(_)
            | Error::InconsistentMoments { .. }
            | Error::QuadratureFailed { .. } => 2,
            Error::Regime(_) => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Stdout text plus a failure to report after printing it.
struct Report {
    stdout: String,
    verdict: Option<Failure>,
}

impl Report {
    fn ok(stdout: String) -> Self {
        Report {
            stdout,
            verdict: None,
        }
    }
}

struct Ctx {
    allow_nonsimple: bool,
    echo_check: bool,
    manifest: RunManifest,
}

impl Ctx {
    fn read(&mut self, path: &Path) -> Result<Vec<u8>, Failure> {
        let bytes = fs::read(path)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
        self.manifest.record_input(path, &bytes);
        Ok(bytes)
    }

    fn shape(&mut self, path: &Path) -> Result<Shape, Failure> {
        let bytes = self.read(path)?;
        let text = String::from_utf8(bytes)
            .map_err(|_| Failure::input(format!("{} is not UTF-8", path.display())))?;
        Ok(parse_shape(&text, self.allow_nonsimple)?)
    }

    fn polygon(&mut self, path: &Path) -> Result<Polygon, Failure> {
        match self.shape(path)? {
            Shape::Polygon(p) => Ok(p),
            Shape::Polyhedron(_) => Err(Failure::input(
                "this subcommand needs a polygon, found a polyhedron",
            )),
        }
    }

    /// Serializes `value`; under `--echo-check` also parses it back and
    /// requires an identical reserialization.
    fn emit<T: Serialize + DeserializeOwned>(&self, value: &T) -> Result<String, Failure> {
        let text = serde_json::to_string_pretty(value).expect("report types serialize");
        if self.echo_check {
            let back: T = serde_json::from_str(&text)
                .map_err(|e| Failure::check(format!("echo check: output does not parse: {e}")))?;
            let again = serde_json::to_string_pretty(&back).expect("report types serialize");
            if again != text {
                return Err(Failure::check("echo check: output does not round-trip"));
            }
        }
        Ok(text)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolygonReport {
    area: f64,
    /// Absent when the signed area vanishes.
    centroid: Option<[f64; 2]>,
    perimeter: f64,
    turning_number: i32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyhedronReport {
    volume: f64,
    surface_area: f64,
    centroid: [f64; 3],
}

#[derive(Serialize, Deserialize)]
struct MomentValue {
    a: usize,
    b: usize,
    value: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OracleMoments {
    moments: Vec<MomentValue>,
    max_deviation: f64,
    /// Largest `|M - oracle| / (|area| diam^(a+b))`.
    max_scaled_deviation: f64,
    tolerance: f64,
}

#[derive(Serialize, Deserialize)]
struct MomentsReport {
    #[serde(flatten)]
    table: MomentTable,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleMoments>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexValue {
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiffractReport {
    out: String,
    format: String,
    resolution: usize,
    extent: f64,
    beta_scale: f64,
    max_intensity: f64,
    warnings: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CheckReport {
    suite: String,
    name: String,
    passed: bool,
    worst: f64,
    tolerance: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VerifyReport {
    passed: bool,
    checks: Vec<CheckReport>,
}

fn area(ctx: &mut Ctx, shape: &Path) -> Result<Report, Failure> {
    let text = match ctx.shape(shape)? {
        Shape::Polygon(p) => {
            let centroid = match first_moments(&p) {
                Ok(fm) => Some(fm.centroid.into()),
                Err(Error::Degenerate(_)) => None,
                Err(e) => return Err(e.into()),
            };
            ctx.emit(&PolygonReport {
                area: signed_area(&p),
                centroid,
                perimeter: p.perimeter(),
                turning_number: turning_number(&p),
            })?
        }
        Shape::Polyhedron(p) => {
            let k = PolyhedronKernel::new(&p)?;
            ctx.emit(&PolyhedronReport {
                volume: k.volume(),
                surface_area: p.surface_area(),
                centroid: k.centroid().into(),
            })?
        }
    };
    Ok(Report::ok(text))
}

fn moments(ctx: &mut Ctx, shape: &Path, max_order: usize, oracle: bool) -> Result<Report, Failure> {
    let poly = ctx.polygon(shape)?;
    let table = moments_from_vertices(&poly, max_order)?;
    let mut verdict = None;
    let oracle = if oracle {
        let tri = triangulate(&poly)?;
        let (area, diam) = (table.area().abs(), poly.diameter());
        let mut max_deviation: f64 = 0.0;
        let mut max_scaled: f64 = 0.0;
        let moments = table
            .iter()
            .map(|(a, b, m)| {
                let value = tri.monomial_integral(a, b);
                max_deviation = max_deviation.max((m - value).abs());
                max_scaled = max_scaled.max((m - value).abs() / (area * diam.powi((a + b) as i32)));
                MomentValue { a, b, value }
            })
            .collect();
        if max_scaled.is_nan() || max_scaled > MOMENT_ORACLE_TOLERANCE {
            verdict = Some(Failure::check(format!(
                "moments deviate from triangulation by {max_scaled:e} (scaled), above {MOMENT_ORACLE_TOLERANCE:e}"
            )));
        }
        Some(OracleMoments {
            moments,
            max_deviation,
            max_scaled_deviation: max_scaled,
            tolerance: MOMENT_ORACLE_TOLERANCE,
        })
    } else {
        None
    };
    Ok(Report {
        stdout: ctx.emit(&MomentsReport { table, oracle })?,
        verdict,
    })
}

fn fourier(ctx: &mut Ctx, shape: &Path, beta: &[f64]) -> Result<Report, Failure> {
    if !beta.iter().all(|b| b.is_finite()) {
        return Err(Failure::input("--beta components must be finite"));
    }
    let value = match (ctx.shape(shape)?, beta) {
        (Shape::Polygon(p), &[bx, by]) => polygon_form_factor(&p, Wavevector2::new(bx, by)),
        (Shape::Polyhedron(p), &[bx, by, bz]) => {
            polyhedron_form_factor(&p, Wavevector3::new(bx, by, bz))?
        }
        (Shape::Polygon(_), _) => {
            return Err(Failure::input("--beta needs 2 components for a polygon"))
        }
        (Shape::Polyhedron(_), _) => {
            return Err(Failure::input("--beta needs 3 components for a polyhedron"))
        }
    };
    Ok(Report::ok(ctx.emit(&value)?))
}

fn davis(ctx: &mut Ctx, shape: &Path, coeffs: &[Complex64]) -> Result<Report, Failure> {
    let poly = ctx.polygon(shape)?;
    let v = davis_sum(&ComplexPolygon::from(&poly), coeffs)?;
    Ok(Report::ok(ctx.emit(&ComplexValue { re: v.re, im: v.im })?))
}

#[allow(clippy::too_many_arguments)]
fn diffract(
    ctx: &mut Ctx,
    aperture: &ApertureArgs,
    wavelength: f64,
    distance: f64,
    extent: f64,
    res: usize,
    out: &Path,
    log: bool,
) -> Result<Report, Failure> {
    let aperture = match (&aperture.shape, aperture.disk, aperture.rect.as_deref()) {
        (Some(path), _, _) => Aperture::Polygon(ctx.polygon(path)?),
        (_, Some(radius), _) => Aperture::Disk { radius },
        (_, _, Some(&[a1, a2])) => Aperture::Rect { a1, a2 },
        (_, _, Some(_)) => return Err(Failure::input("--rect needs exactly two half-widths")),
        _ => return Err(Failure::input("need a shape file, --disk or --rect")),
    };
    let format = match out.extension().and_then(|e| e.to_str()) {
        Some("csv") => "csv",
        Some("pgm") => "pgm",
        _ => return Err(Failure::input("--out must end in .csv or .pgm")),
    };
    if log && format == "csv" {
        eprintln!("warning: --log only affects PGM output");
    }
    let grid = render_pattern(&DiffractionConfig {
        wavelength,
        distance,
        extent,
        resolution: res,
        aperture,
    })?;
    for w in &grid.warnings {
        eprintln!("warning: {w}");
    }
    let map = if log { ToneMap::Log } else { ToneMap::Linear };
    let mut bytes = Vec::new();
    match format {
        "csv" => grid.write_csv(&mut bytes),
        _ => grid.write_pgm(&mut bytes, map),
    }
    .expect("writing to memory succeeds");
    fs::write(out, &bytes)
        .map_err(|e| Failure::input(format!("cannot write {}: {e}", out.display())))?;
    if ctx.echo_check {
        let same = match format {
            "csv" => {
                let text = String::from_utf8(bytes).expect("CSV output is ASCII");
                IntensityGrid::from_csv(&text)? == grid
            }
            _ => read_pgm(&bytes)?.pixels == grid.tone_mapped(map),
        };
        if !same {
            return Err(Failure::check("echo check: grid file does not round-trip"));
        }
    }
    let text = ctx.emit(&DiffractReport {
        out: out.display().to_string(),
        format: format.into(),
        resolution: grid.resolution,
        extent: grid.extent,
        beta_scale: grid.beta_scale,
        max_intensity: grid.max(),
        warnings: grid.warnings.clone(),
    })?;
    Ok(Report::ok(text))
}

fn porod(
    ctx: &mut Ctx,
    args: &PorodArgs,
    kmin: f64,
    kmax: f64,
    samples: usize,
    directions: usize,
) -> Result<Report, Failure> {
    let shape = match (&args.shape, args.sphere, args.disk) {
        (Some(path), _, _) => match ctx.shape(path)? {
            Shape::Polygon(p) => PorodShape::Polygon(p),
            Shape::Polyhedron(p) => PorodShape::Polyhedron(p),
        },
        (_, Some(r), _) => PorodShape::Sphere(r),
        (_, _, Some(r)) => PorodShape::Disk(r),
        _ => return Err(Failure::input("need a shape file, --sphere or --disk")),
    };
    if !(shape.diameter() > 0.0 && shape.diameter().is_finite()) {
        return Err(Failure::input("radius must be positive"));
    }
    let fit: PorodFit = porod_slope(&shape, kmin, kmax, samples, directions)?;
    Ok(Report::ok(ctx.emit(&fit)?))
}

fn verify(ctx: &mut Ctx, suite: SuiteArg) -> Result<Report, Failure> {
    let suites: Vec<Suite> = match suite {
        SuiteArg::Geom => vec![Suite::Geom],
        SuiteArg::Xform => vec![Suite::Xform],
        SuiteArg::Moments => vec![Suite::Moments],
        SuiteArg::Identities => vec![Suite::Identities],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let checks: Vec<CheckReport> = suites
        .into_iter()
        .flat_map(run_suite)
        .map(|c| CheckReport {
            suite: c.suite.into(),
            name: c.name.into(),
            passed: c.passed,
            worst: c.worst,
            tolerance: c.tolerance,
        })
        .collect();
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}/{}", c.suite, c.name))
        .collect();
    let report = VerifyReport {
        passed: failed.is_empty(),
        checks,
    };
    Ok(Report {
        stdout: ctx.emit(&report)?,
        verdict: (!failed.is_empty())
            .then(|| Failure::check(format!("failed checks: {}", failed.join(", ")))),
    })
}

fn dispatch(cli: &Cli, ctx: &mut Ctx) -> Result<Report, Failure> {
    match &cli.command {
        Command::Area { shape } => area(ctx, shape),
        Command::Moments {
            shape,
            max_order,
            oracle,
        } => moments(ctx, shape, *max_order, *oracle),
        Command::Fourier { shape, beta } => fourier(ctx, shape, beta),
        Command::Davis { shape, coeffs } => davis(ctx, shape, coeffs),
        Command::Diffract {
            aperture,
            wavelength,
            distance,
            extent,
            res,
            out,
            log,
        } => diffract(
            ctx,
            aperture,
            *wavelength,
            *distance,
            *extent,
            *res,
            out,
            *log,
        ),
        Command::Porod {
            shape,
            kmin,
            kmax,
            samples,
            directions,
        } => porod(ctx, shape, *kmin, *kmax, *samples, *directions),
        Command::Verify { suite } => verify(ctx, *suite),
    }
}

fn write_manifest(cli: &Cli, manifest: &RunManifest) -> Result<(), Failure> {
    let dest = match (&cli.manifest, &cli.command) {
        (Some(p), _) => Some(p.clone()),
        (None, Command::Diffract { out, .. }) => {
            let mut name = out.clone().into_os_string();
            name.push(".manifest.json");
            Some(PathBuf::from(name))
        }
        _ => None,
    };
    match dest {
        Some(p) => fs::write(&p, manifest.to_json() + "\n")
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", p.display()))),
        None => {
            eprintln!(
                "manifest: {}",
                serde_json::to_string(manifest).expect("manifest is plain data")
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let flags = serde_json::to_value(&cli).expect("parsed arguments serialize");
    let mut ctx = Ctx {
        allow_nonsimple: cli.allow_nonsimple,
        echo_check: cli.echo_check,
        manifest: RunManifest::new(cli.command.name(), flags),
    };
    let outcome = dispatch(&cli, &mut ctx).and_then(|report| {
        println!("{}", report.stdout);
        write_manifest(&cli, &ctx.manifest)?;
        report.verdict.map_or(Ok(()), Err)
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
