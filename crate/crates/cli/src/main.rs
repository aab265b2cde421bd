//! `xlsparse`: deterministic command-line front end for sparse XL-array
//! design and near-field analysis. Subcommands generate layouts, reproduce
//! the published layout comparison table, sweep range CRBs, analyze LoS
//! channel ranks, and render beampatterns; artifacts are CSV/JSON files
//! whose bytes are identical across reruns.

mod config;

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use xlsparse_core::{
    beampattern, crb_range_sweep, dof_report, dof_report_csv, fmt_f64, los_channel,
    mismatched_rows, reference_csv, reference_report, spectrum_csv, sweep_csv, ArrayLayout, Error,
    LayoutSpec, RankReport, SourceParams,
};

use crate::config::ExperimentConfig;

/// Anything a subcommand can fail with: a domain error (already rendered
/// as `kind: detail`), a file-system error, or a reference-table
/// verification failure.
#[derive(Debug)]
pub enum Failure {
    Domain(Error),
    Io { path: PathBuf, source: io::Error },
    Verification(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Domain(err) => write!(f, "{err}"),
            Failure::Io { path, source } => {
                write!(f, "io-error: {}: {source}", path.display())
            }
            Failure::Verification(detail) => write!(f, "verification-failed: {detail}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::Domain(err)
    }
}

#[derive(Parser)]
#[command(
    name = "xlsparse",
    version,
    about = "Sparse XL-array design, co-array analysis, and near-field sensing/communication metrics"
)]
struct Cli {
    /// Experiment config file (flat key=value lines; missing keys keep
    /// their defaults)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Artifact directory (overrides the config value and the
    /// XLSPARSE_OUTPUT_DIR environment variable; default `out`)
    #[arg(long, global = true, value_name = "PATH")]
    output_dir: Option<PathBuf>,

    /// Reserved for future randomized features; accepted and ignored (all
    /// current computations are deterministic)
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a layout and write its JSON description
    Generate(GenerateArgs),
    /// Reproduce the 16-row published layout comparison (positions, spans,
    /// apertures, co-array DoF)
    Table1(Table1Args),
    /// Root range CRB over the configured layouts and ranges
    CrbSweep(CrbSweepArgs),
    /// LoS channel singular-value spectra and effective ranks
    Rank(RankArgs),
    /// Focused-beam gain over a (theta, range) grid
    Beampattern(BeampatternArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Dua,
    Na,
    Ca,
    Nra,
    Wsms,
    Nms,
    Cms,
    Nrms,
}

#[derive(Args)]
struct GenerateArgs {
    /// Layout family
    #[arg(long, value_enum)]
    kind: KindArg,

    /// Element count (dua, na, nra)
    #[arg(long, value_name = "N")]
    n: Option<u64>,

    /// Smaller coprime factor (ca, cms)
    #[arg(long, value_name = "P")]
    p: Option<u64>,

    /// Larger coprime factor (ca, cms)
    #[arg(long, value_name = "Q")]
    q: Option<u64>,

    /// Number of subarrays (wsms, nms, nrms)
    #[arg(long, value_name = "M")]
    subarrays: Option<u64>,

    /// Elements per subarray (wsms, nms, cms, nrms)
    #[arg(long, value_name = "K")]
    subarray_size: Option<u64>,

    /// Subarray start pitch in spacing units (default: 2x subarray size
    /// for wsms, subarray size otherwise)
    #[arg(long, value_name = "UNITS")]
    stride: Option<u64>,

    /// Output file (default: layout_<spec>.json in the artifact directory)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Table1Args {
    /// Exit non-zero unless every generated row matches the published
    /// positions and DoF
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct CrbSweepArgs {
    /// Source azimuth [rad]
    #[arg(
        long,
        value_name = "RAD",
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    theta_rad: f64,
}

#[derive(Args)]
struct RankArgs {
    /// Normalized singular-value cutoff in (0, 1] (default: config
    /// sv_threshold)
    #[arg(long, value_name = "T")]
    threshold: Option<f64>,
}

#[derive(Args)]
struct BeampatternArgs {
    /// Layout spec to focus (default: first configured layout)
    #[arg(long, value_name = "SPEC")]
    layout: Option<String>,

    /// Focus azimuth [rad]
    #[arg(
        long,
        value_name = "RAD",
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    focus_theta_rad: f64,

    /// Focus range [m]
    #[arg(long, value_name = "M", default_value_t = 20.0)]
    focus_range_m: f64,

    /// Azimuth grid point count
    #[arg(long, value_name = "N", default_value_t = 91)]
    theta_points: usize,

    /// Azimuth grid start [rad]
    #[arg(long, value_name = "RAD", default_value_t = -std::f64::consts::FRAC_PI_3, allow_negative_numbers = true)]
    theta_min_rad: f64,

    /// Azimuth grid end [rad]
    #[arg(long, value_name = "RAD", default_value_t = std::f64::consts::FRAC_PI_3, allow_negative_numbers = true)]
    theta_max_rad: f64,

    /// Range grid point count
    #[arg(long, value_name = "N", default_value_t = 20)]
    range_points: usize,

    /// Range grid start [m]
    #[arg(long, value_name = "M", default_value_t = 10.0)]
    range_min_m: f64,

    /// Range grid end [m]
    #[arg(long, value_name = "M", default_value_t = 200.0)]
    range_max_m: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = ExperimentConfig::load(cli.config.as_deref())?;
    let out_dir = resolve_output_dir(cli.output_dir, &config);
    match cli.command {
        Command::Generate(args) => cmd_generate(&config, &out_dir, args),
        Command::Table1(args) => cmd_table1(&config, &out_dir, args),
        Command::CrbSweep(args) => cmd_crb_sweep(&config, &out_dir, args),
        Command::Rank(args) => cmd_rank(&config, &out_dir, args),
        Command::Beampattern(args) => cmd_beampattern(&config, &out_dir, args),
    }
}

/// Precedence: `--output-dir` flag, then config `output_dir`, then
/// `XLSPARSE_OUTPUT_DIR`, then `out`.
fn resolve_output_dir(flag: Option<PathBuf>, config: &ExperimentConfig) -> PathBuf {
    flag.or_else(|| config.output_dir.clone())
        .or_else(|| std::env::var_os("XLSPARSE_OUTPUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"))
}

/// Writes via a temp file in the same directory and renames into place, so
/// a crash never leaves a truncated artifact.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let wrap = |source: io::Error| Failure::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(wrap)?;
        }
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents).map_err(wrap)?;
    fs::rename(&tmp, path).map_err(wrap)
}

/// File-name-safe form of a layout spec string.
fn sanitize(spec: &str) -> String {
    spec.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

/// Builds every configured layout, named by its spec string.
fn build_configured_layouts(
    config: &ExperimentConfig,
) -> Result<Vec<(String, ArrayLayout)>, Failure> {
    let wavelength = config.wavelength_m();
    config
        .layouts
        .iter()
        .map(|spec| Ok((spec.to_string(), spec.build(wavelength)?)))
        .collect()
}

fn cmd_generate(
    config: &ExperimentConfig,
    out_dir: &Path,
    args: GenerateArgs,
) -> Result<(), Failure> {
    let spec = layout_spec_from_flags(&args)?;
    let layout = spec.build(config.wavelength_m())?;
    let path = match args.out {
        Some(p) if p.is_absolute() => p,
        Some(p) => out_dir.join(p),
        None => out_dir.join(format!("layout_{}.json", sanitize(&spec.to_string()))),
    };
    write_atomic(&path, &format!("{}\n", layout.to_json()))?;
    println!(
        "layout {}: {} elements, span {} units, aperture {:.6} m, fraunhofer {:.6} m",
        spec,
        layout.n_elements(),
        layout.aperture_units(),
        layout.aperture_m(),
        layout.fraunhofer_distance_m()
    );
    println!("wrote {}", path.display());
    Ok(())
}

fn layout_spec_from_flags(args: &GenerateArgs) -> Result<LayoutSpec, Failure> {
    fn need(value: Option<u64>, kind: &str, flag: &str) -> Result<u64, Failure> {
        value.ok_or_else(|| {
            Failure::Domain(Error::InvalidParameter {
                detail: format!("--kind {kind} requires {flag}"),
            })
        })
    }
    Ok(match args.kind {
        KindArg::Dua => LayoutSpec::Dua {
            n: need(args.n, "dua", "--n")?,
        },
        KindArg::Na => LayoutSpec::Nested {
            n: need(args.n, "na", "--n")?,
        },
        KindArg::Ca => LayoutSpec::Coprime {
            p: need(args.p, "ca", "--p")?,
            q: need(args.q, "ca", "--q")?,
        },
        KindArg::Nra => LayoutSpec::NonRedundant {
            n: need(args.n, "nra", "--n")?,
        },
        KindArg::Wsms => LayoutSpec::Wsms {
            m: need(args.subarrays, "wsms", "--subarrays")?,
            k: need(args.subarray_size, "wsms", "--subarray-size")?,
            stride: args.stride,
        },
        KindArg::Nms => LayoutSpec::Nms {
            m: need(args.subarrays, "nms", "--subarrays")?,
            k: need(args.subarray_size, "nms", "--subarray-size")?,
            stride: args.stride,
        },
        KindArg::Cms => LayoutSpec::Cms {
            p: need(args.p, "cms", "--p")?,
            q: need(args.q, "cms", "--q")?,
            k: need(args.subarray_size, "cms", "--subarray-size")?,
            stride: args.stride,
        },
        KindArg::Nrms => LayoutSpec::Nrms {
            m: need(args.subarrays, "nrms", "--subarrays")?,
            k: need(args.subarray_size, "nrms", "--subarray-size")?,
            stride: args.stride,
        },
    })
}

fn cmd_table1(config: &ExperimentConfig, out_dir: &Path, args: Table1Args) -> Result<(), Failure> {
    let rows = reference_report(config.wavelength_m())?;

    let table_path = out_dir.join("table1.csv");
    write_atomic(&table_path, &reference_csv(&rows))?;

    let names: Vec<String> = rows
        .iter()
        .map(|row| format!("{}/{}", row.case, row.name))
        .collect();
    let entries: Vec<(&str, &ArrayLayout)> = names
        .iter()
        .map(String::as_str)
        .zip(rows.iter().map(|row| row.layout()))
        .collect();
    let dof_path = out_dir.join("table1_dof.csv");
    write_atomic(&dof_path, &dof_report_csv(&dof_report(&entries)?))?;

    let verified = rows.iter().filter(|row| row.verified()).count();
    let convention_mismatches = rows.iter().filter(|row| !row.aperture_matches).count();
    if args.verify {
        let offending = mismatched_rows(&rows);
        if !offending.is_empty() {
            for row in &offending {
                eprintln!(
                    "mismatch: {}/{}: positions_match={}, computed dof {}, published {}",
                    row.case, row.name, row.positions_match, row.dof, row.dof_printed
                );
            }
            return Err(Failure::Verification(format!(
                "{} of {} rows disagree with the published table",
                offending.len(),
                rows.len()
            )));
        }
    }
    println!(
        "table1: {verified}/{} DoF matches, {convention_mismatches} aperture convention mismatches",
        rows.len()
    );
    println!("wrote {}", table_path.display());
    println!("wrote {}", dof_path.display());
    Ok(())
}

fn cmd_crb_sweep(
    config: &ExperimentConfig,
    out_dir: &Path,
    args: CrbSweepArgs,
) -> Result<(), Failure> {
    let built = build_configured_layouts(config)?;
    let entries: Vec<(&str, &ArrayLayout)> = built
        .iter()
        .map(|(name, layout)| (name.as_str(), layout))
        .collect();
    let template = SourceParams::with_signal(
        args.theta_rad,
        config.ranges_m[0],
        config.snr_db,
        config.snapshots,
    )?;
    let rows = crb_range_sweep(&entries, &config.ranges_m, &template)?;
    let path = out_dir.join("crb_sweep.csv");
    write_atomic(&path, &sweep_csv(&rows))?;
    println!(
        "crb-sweep: {} rows ({} layouts x {} ranges, theta {} rad)",
        rows.len(),
        entries.len(),
        config.ranges_m.len(),
        args.theta_rad
    );
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_rank(config: &ExperimentConfig, out_dir: &Path, args: RankArgs) -> Result<(), Failure> {
    let threshold = args.threshold.unwrap_or(config.sv_threshold);
    let built = build_configured_layouts(config)?;
    for (name, layout) in &built {
        let channel = los_channel(layout, layout, config.separation_m)?;
        let rank = channel.effective_rank(threshold)?;
        let stem = sanitize(name);
        let spectrum_file = format!("spectrum_{stem}.csv");
        write_atomic(&out_dir.join(&spectrum_file), &spectrum_csv(&channel))?;
        let report = RankReport {
            layout: name.clone(),
            distance_m: config.separation_m,
            threshold,
            rank,
            spectrum_file,
        };
        let report_path = out_dir.join(format!("rank_{stem}.json"));
        write_atomic(&report_path, &report.to_json())?;
        println!(
            "rank {name} = {rank} (separation {} m, threshold {threshold})",
            config.separation_m
        );
    }
    println!(
        "wrote {} spectrum/rank artifact pairs to {}",
        built.len(),
        out_dir.display()
    );
    Ok(())
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| lo + step * i as f64).collect()
}

fn cmd_beampattern(
    config: &ExperimentConfig,
    out_dir: &Path,
    args: BeampatternArgs,
) -> Result<(), Failure> {
    if args.theta_points == 0 || args.range_points == 0 {
        return Err(Failure::Domain(Error::InvalidParameter {
            detail: "beampattern grid needs at least one point per axis".to_string(),
        }));
    }
    let spec = match &args.layout {
        Some(text) => LayoutSpec::parse(text)?,
        None => config.layouts[0],
    };
    let layout = spec.build(config.wavelength_m())?;
    let focus = SourceParams::new(args.focus_theta_rad, args.focus_range_m)?;

    let thetas = linspace(args.theta_min_rad, args.theta_max_rad, args.theta_points);
    let ranges = linspace(args.range_min_m, args.range_max_m, args.range_points);
    let grid: Vec<(f64, f64)> = thetas
        .iter()
        .flat_map(|&theta| ranges.iter().map(move |&r| (theta, r)))
        .collect();
    let gains = beampattern(&layout, &focus, &grid)?;

    let mut csv = String::from("theta_rad,range_m,gain\n");
    for (&(theta, r), gain) in grid.iter().zip(&gains) {
        csv.push_str(&format!(
            "{},{},{}\n",
            fmt_f64(theta),
            fmt_f64(r),
            fmt_f64(*gain)
        ));
    }
    let path = out_dir.join("beampattern.csv");
    write_atomic(&path, &csv)?;
    println!(
        "beampattern {}: {} cells ({} x {}), focus ({} rad, {} m)",
        spec,
        grid.len(),
        args.theta_points,
        args.range_points,
        args.focus_theta_rad,
        args.focus_range_m
    );
    println!("wrote {}", path.display());
    Ok(())
}
