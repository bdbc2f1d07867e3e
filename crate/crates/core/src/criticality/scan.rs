use std::f64::consts::FRAC_PI_8;

use crate::chain::ModelSpec;
use crate::criticality::detect::{
    find_discontinuities, DetectionKind, DetectionReport, DetectorConfig, Target,
};
use crate::criticality::sweep::{evaluate, run_sweep, Backend, Observable, SweepProbe, SweepSpec};
use crate::error::{Error, Result};
use crate::phase_space::{AngleConfig, PhasePoint};

/// Settings of the factorization-line scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanOptions {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    /// Site distances whose GWF values must coincide.
    pub distances: Vec<usize>,
    pub config: AngleConfig,
    /// Largest spread accepted as distance independence.
    pub threshold: f64,
    /// Refinement levels of the √ρ cross-check.
    pub levels: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            lo: 1.02,
            hi: 2.5,
            points: 512,
            distances: vec![1, 5, 20],
            config: AngleConfig::uniform(2, FRAC_PI_8, 0.0).expect("valid angles"),
            threshold: 1e-6,
            levels: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationReport {
    pub gamma: f64,
    /// 1/√(1−γ²), when finite.
    pub analytic: Option<f64>,
    /// Where the GWF stops depending on distance; `None` if the smallest
    /// spread stays above the threshold.
    pub spread_location: Option<f64>,
    pub spread_min: f64,
    /// First-derivative jump of the √ρ DWF at (00,00), nearest to the spread
    /// minimum.
    pub sqrt_dwf_location: Option<f64>,
    pub grid_spacing: f64,
}

impl FactorizationReport {
    pub fn detection(&self) -> DetectionReport {
        match self.spread_location {
            Some(x) => DetectionReport {
                kind: DetectionKind::FactorizationLine,
                location: Some(x),
                strength: self.spread_min,
                coarse_spacing: self.grid_spacing,
                finest_spacing: self.grid_spacing,
            },
            None => DetectionReport::none(self.grid_spacing),
        }
    }
}

fn golden_min(f: &dyn Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64) -> Result<(f64, f64)> {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while hi - lo > 1e-11 * hi.abs().max(1.0) {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2)?;
        }
    }
    let x = 0.5 * (lo + hi);
    Ok((x, f(x)?))
}

/// Locates the XY factorization line at anisotropy `gamma` by the distance
/// independence of the two-site GWF, and cross-checks it against the
/// first-derivative jump of the √ρ DWF.
pub fn factorization_scan(gamma: f64, opts: &ScanOptions) -> Result<FactorizationReport> {
    let model = ModelSpec::xy(opts.lo.max(0.0), gamma)?;
    let spread = Observable::GwfSpread {
        config: opts.config.clone(),
        distances: opts.distances.clone(),
    };
    let spec = SweepSpec::new(model, opts.lo, opts.hi, opts.points, spread.clone());
    let res = run_sweep(&spec)?;
    let h = res.spacing()?;
    let vals = &res.values[0];
    let i = (0..vals.len())
        .min_by(|&a, &b| vals[a].total_cmp(&vals[b]))
        .ok_or_else(|| Error::InvalidArgument("empty scan".into()))?;
    let at = |x: f64| -> Result<f64> {
        Ok(evaluate(&model.with_parameter(x)?, &spread, Backend::ThermoLimit)?[0])
    };
    let (lo, hi) = (
        res.grid[i.saturating_sub(1)],
        res.grid[(i + 1).min(vals.len() - 1)],
    );
    let (x, fx) = golden_min(&at, lo, hi)?;
    let (x, fx) = if fx <= vals[i] {
        (x, fx)
    } else {
        (res.grid[i], vals[i])
    };
    let spread_location = (fx < opts.threshold).then_some(x);

    let probe = SweepProbe::new(
        model,
        Observable::DwfPair {
            point: PhasePoint::new(2, 0, 0)?,
            m: 1,
            sqrt: true,
        },
        Backend::ThermoLimit,
        0,
    )?;
    let jumps = find_discontinuities(
        &probe,
        opts.lo,
        opts.hi,
        opts.points,
        opts.levels,
        Target::FirstDerivative,
        &DetectorConfig::default(),
    )?;
    let reference = spread_location.unwrap_or(x);
    let sqrt_dwf_location = jumps
        .iter()
        .filter_map(|r| r.location)
        .min_by(|a, b| (a - reference).abs().total_cmp(&(b - reference).abs()));

    Ok(FactorizationReport {
        gamma,
        analytic: (gamma < 1.0).then(|| 1.0 / (1.0 - gamma * gamma).sqrt()),
        spread_location,
        spread_min: fx,
        sqrt_dwf_location,
        grid_spacing: h,
    })
}
