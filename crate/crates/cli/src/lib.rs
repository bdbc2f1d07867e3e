//! Command-line front end: sweeps to CSV/SVG, detector verdicts, and the
//! validation suites.

pub mod args;
mod output;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use phasecrit::chain::ModelSpec;
use phasecrit::criticality::{
    detect_cusp, detect_discontinuity, detect_divergence, factorization_scan, run_sweep, Backend,
    DetectionKind, DetectionReport, DetectorConfig, Observable, ScanOptions, SweepSpec, Target,
    DEFAULT_XXZ_SITES,
};
use phasecrit::parse::{parse_angles, parse_distances, parse_phase_point, parse_range};
use phasecrit::phase_space::AngleConfig;
use phasecrit::validation::{run_suite, Suite};
use thiserror::Error;

pub use args::Cli;
use args::{
    Command, DetectArgs, DetectorArg, ModelArg, ObservableArg, ObservableArgs, SweepArgs,
    TargetArg, ValidateArgs,
};
pub use output::{render_svg, write_csv};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(#[source] phasecrit::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for bad configuration or unwritable output, 3 for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

fn config(e: phasecrit::Error) -> CliError {
    CliError::Config(e.to_string())
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Runs one command, writing its report to `out`; returns the exit code.
pub fn run(cli: &Cli, out: &mut (dyn Write + Send)) -> Result<i32, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Config("--threads must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    pool.install(|| match &cli.command {
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Detect(a) => cmd_detect(a, out),
        Command::Validate(a) => cmd_validate(a, out),
    })
}

/// Builds and validates the sweep described by the flags.
pub fn sweep_spec(a: &ObservableArgs) -> Result<SweepSpec, CliError> {
    let range = parse_range(&a.range).map_err(config)?;
    let model = match a.model {
        ModelArg::Xy => {
            let gamma = a
                .gamma
                .ok_or_else(|| CliError::Config("--model xy needs --gamma".into()))?;
            ModelSpec::xy(range.lo.max(0.0), gamma).map_err(config)?
        }
        ModelArg::Xxz => {
            if a.gamma.is_some() {
                return Err(CliError::Config("--gamma does not apply to xxz".into()));
            }
            ModelSpec::xxz(range.lo).map_err(config)?
        }
    };
    let backend = match (a.model, a.n_sites) {
        (ModelArg::Xy, None) => Backend::ThermoLimit,
        (ModelArg::Xxz, None) => Backend::ExactDiagonalization {
            n_sites: DEFAULT_XXZ_SITES,
        },
        (_, Some(n_sites)) => Backend::ExactDiagonalization { n_sites },
    };
    let observable = observable(a)?;
    let spec =
        SweepSpec::new(model, range.lo, range.hi, range.points, observable).with_backend(backend);
    spec.validate().map_err(config)?;
    Ok(spec)
}

fn angle_config(a: &ObservableArgs) -> Result<AngleConfig, CliError> {
    let theta = a
        .theta
        .as_deref()
        .ok_or_else(|| CliError::Config("this observable needs --theta".into()))?;
    let thetas = parse_angles(theta).map_err(config)?;
    let phis = match &a.phi {
        Some(p) => parse_angles(p).map_err(config)?,
        None => vec![0.0; thetas.len()],
    };
    if phis.len() != thetas.len() {
        return Err(CliError::Config(format!(
            "{} polar angles but {} azimuthal angles",
            thetas.len(),
            phis.len()
        )));
    }
    AngleConfig::from_lists(&thetas, &phis).map_err(config)
}

fn observable(a: &ObservableArgs) -> Result<Observable, CliError> {
    let no_sqrt = |what: &str| -> Result<(), CliError> {
        if a.sqrt {
            return Err(CliError::Config(format!(
                "--sqrt needs a two-site observable, not {what}"
            )));
        }
        Ok(())
    };
    let m = a.m;
    Ok(match a.observable {
        ObservableArg::Dwf => {
            let text = a
                .point
                .as_deref()
                .ok_or_else(|| CliError::Config("dwf needs --point".into()))?;
            let point = parse_phase_point(text).map_err(config)?;
            match point.n_qubits() {
                1 => {
                    no_sqrt("a one-site DWF")?;
                    Observable::DwfSingle { x: point.x() }
                }
                2 => Observable::DwfPair {
                    point,
                    m,
                    sqrt: a.sqrt,
                },
                n => {
                    return Err(CliError::Config(format!(
                        "DWF sweeps cover one or two sites, got {n}"
                    )))
                }
            }
        }
        ObservableArg::Gwf => {
            let config = angle_config(a)?;
            match config.n_sites() {
                1 => {
                    no_sqrt("a one-site GWF")?;
                    Observable::GwfSingle {
                        theta: config.theta(0),
                    }
                }
                2 => Observable::GwfPair {
                    config,
                    m,
                    sqrt: a.sqrt,
                },
                _ => {
                    no_sqrt("a three-site GWF")?;
                    Observable::GwfTriple {
                        config,
                        m_ij: m,
                        m_jk: a.m_jk.unwrap_or(m),
                    }
                }
            }
        }
        ObservableArg::DwfExtremes => Observable::DwfExtremes { m, sqrt: a.sqrt },
        ObservableArg::GwfExtremes => {
            no_sqrt("gwf-extremes")?;
            Observable::GwfExtremes { m }
        }
        ObservableArg::Entanglement => {
            no_sqrt("entanglement")?;
            Observable::Entanglement { m }
        }
        ObservableArg::GwfSpread => {
            no_sqrt("gwf-spread")?;
            Observable::GwfSpread {
                config: angle_config(a)?,
                distances: parse_distances(&a.distances).map_err(config)?,
            }
        }
    })
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path).map(BufWriter::new).map_err(io_err(path))
}

fn cmd_sweep(a: &SweepArgs, out: &mut (dyn Write + Send)) -> Result<i32, CliError> {
    let spec = sweep_spec(&a.obs)?;
    // Open outputs first so an unwritable path fails before the computation.
    let csv_file = a.out.as_deref().map(create).transpose()?;
    let svg_file = a.svg.as_deref().map(create).transpose()?;
    let res = run_sweep(&spec).map_err(CliError::Numerical)?;
    let csv_err = |e: csv::Error| CliError::Io {
        path: a
            .out
            .as_ref()
            .map_or("stdout".into(), |p| p.display().to_string()),
        source: e.into(),
    };
    match csv_file {
        Some(f) => write_csv(f, &res).map_err(csv_err)?,
        None => write_csv(&mut *out, &res).map_err(csv_err)?,
    }
    if let (Some(mut f), Some(path)) = (svg_file, a.svg.as_deref()) {
        f.write_all(render_svg(&res).as_bytes())
            .and_then(|_| f.flush())
            .map_err(io_err(path))?;
    }
    Ok(0)
}

fn kind_name(kind: DetectionKind) -> &'static str {
    match kind {
        DetectionKind::None => "None",
        DetectionKind::Divergence => "Divergence",
        DetectionKind::Discontinuity => "Discontinuity",
        DetectionKind::Cusp => "Cusp",
        DetectionKind::FactorizationLine => "FactorizationLine",
    }
}

fn report_line(r: &DetectionReport) -> String {
    match r.location {
        Some(x) => format!(
            "{} {x:.6} strength={:.6e} spacing={:.3e}",
            kind_name(r.kind),
            r.strength,
            r.finest_spacing
        ),
        None => "None".to_string(),
    }
}

fn stdout_err(e: std::io::Error) -> CliError {
    CliError::Io {
        path: "stdout".into(),
        source: e,
    }
}

fn cmd_detect(a: &DetectArgs, out: &mut (dyn Write + Send)) -> Result<i32, CliError> {
    let spec = sweep_spec(&a.obs)?.with_refinement(a.refine);
    spec.validate().map_err(config)?;
    if a.refine == 0 {
        return Err(CliError::Config(
            "detectors need --refine of at least 1".into(),
        ));
    }
    if a.detector == DetectorArg::Divergence && a.refine < 2 {
        return Err(CliError::Config(
            "the divergence detector needs --refine of at least 2".into(),
        ));
    }
    let cfg = DetectorConfig::default();
    let report = match a.detector {
        DetectorArg::Factorization => {
            let gamma = match spec.model {
                ModelSpec::Xy { gamma, .. } => gamma,
                ModelSpec::Xxz { .. } => {
                    return Err(CliError::Config("the factorization scan is XY only".into()))
                }
            };
            let opts = ScanOptions {
                lo: spec.lo,
                hi: spec.hi,
                points: spec.points,
                levels: a.refine,
                distances: parse_distances(&a.obs.distances).map_err(config)?,
                ..ScanOptions::default()
            };
            let r = factorization_scan(gamma, &opts).map_err(CliError::Numerical)?;
            let fmt_opt = |v: Option<f64>| v.map_or("none".to_string(), |x| format!("{x:.6}"));
            let head = match r.spread_location {
                Some(x) => format!("FactorizationLine {x:.6}"),
                None => "None".to_string(),
            };
            writeln!(
                out,
                "{head} spread={:.3e} sqrt_dwf={} analytic={} spacing={:.3e}",
                r.spread_min,
                fmt_opt(r.sqrt_dwf_location),
                fmt_opt(r.analytic),
                r.grid_spacing
            )
            .map_err(stdout_err)?;
            return Ok(if r.spread_location.is_some() { 0 } else { 1 });
        }
        detector => {
            let column = match &a.column {
                None => 0,
                Some(name) => spec
                    .observable
                    .columns()
                    .iter()
                    .position(|c| c == name)
                    .ok_or_else(|| {
                        CliError::Config(format!(
                            "unknown column {name:?}; available: {}",
                            spec.observable.columns().join(", ")
                        ))
                    })?,
            };
            let probe = spec.probe(column).map_err(config)?;
            let (lo, hi, n, l) = (spec.lo, spec.hi, spec.points, a.refine);
            let result = match detector {
                DetectorArg::Divergence => detect_divergence(&probe, lo, hi, n, l, &cfg),
                DetectorArg::Discontinuity => {
                    let target = match a.target {
                        TargetArg::Value => Target::Value,
                        TargetArg::D1 => Target::FirstDerivative,
                    };
                    detect_discontinuity(&probe, lo, hi, n, l, target, &cfg)
                }
                DetectorArg::Cusp => detect_cusp(&probe, lo, hi, n, l, &cfg),
                DetectorArg::Factorization => unreachable!("handled above"),
            };
            result.map_err(CliError::Numerical)?
        }
    };
    writeln!(out, "{}", report_line(&report)).map_err(stdout_err)?;
    Ok(if report.is_none() { 1 } else { 0 })
}

fn cmd_validate(a: &ValidateArgs, out: &mut (dyn Write + Send)) -> Result<i32, CliError> {
    let suites = match &a.suite {
        Some(name) => vec![Suite::from_name(name).map_err(config)?],
        None => Suite::ALL.to_vec(),
    };
    let (mut total, mut failed) = (0, 0);
    for s in suites {
        for check in run_suite(s, a.seed).map_err(CliError::Numerical)? {
            writeln!(out, "{check}").map_err(stdout_err)?;
            if !check.informational {
                total += 1;
                failed += usize::from(!check.passed);
            }
        }
    }
    writeln!(out, "{total} checks, {failed} failed").map_err(stdout_err)?;
    Ok(if failed == 0 { 0 } else { 1 })
}
