use std::fmt;

use crate::criticality::diff::finite_diff_values;
use crate::criticality::sweep::uniform_grid;
use crate::error::{Error, Result};

/// Something that can be sampled on any uniform grid.
pub trait Probe: Sync {
    /// Values at `points` evenly spaced parameters from `lo` to `hi`.
    fn sample(&self, lo: f64, hi: f64, points: usize) -> Result<Vec<f64>>;
}

/// Probe backed by a plain function.
pub struct FnProbe<F>(pub F);

impl<F: Fn(f64) -> f64 + Sync> Probe for FnProbe<F> {
    fn sample(&self, lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
        Ok(uniform_grid(lo, hi, points)
            .into_iter()
            .map(&self.0)
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DetectionKind {
    None,
    Divergence,
    Discontinuity,
    Cusp,
    FactorizationLine,
}

impl DetectionKind {
    pub fn label(self) -> &'static str {
        match self {
            DetectionKind::None => "none",
            DetectionKind::Divergence => "divergence",
            DetectionKind::Discontinuity => "discontinuity",
            DetectionKind::Cusp => "cusp",
            DetectionKind::FactorizationLine => "factorization-line",
        }
    }
}

/// Series a jump detector looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Value,
    FirstDerivative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectionReport {
    pub kind: DetectionKind,
    /// Estimated parameter value; `None` when nothing was found.
    pub location: Option<f64>,
    /// Jump size at the finest level, or the per-level growth factor of the
    /// second derivative for divergences.
    pub strength: f64,
    pub coarse_spacing: f64,
    pub finest_spacing: f64,
}

impl DetectionReport {
    pub fn none(coarse_spacing: f64) -> Self {
        Self {
            kind: DetectionKind::None,
            location: None,
            strength: 0.0,
            coarse_spacing,
            finest_spacing: coarse_spacing,
        }
    }

    pub fn is_none(&self) -> bool {
        self.kind == DetectionKind::None
    }
}

impl fmt::Display for DetectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.location {
            Some(x) => write!(
                f,
                "{} at {x:.6} (strength {:.4e}, spacing {:.3e})",
                self.kind.label(),
                self.strength,
                self.finest_spacing
            ),
            None => write!(f, "none"),
        }
    }
}

/// Thresholds shared by the detectors.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectorConfig {
    /// Divergence refinement window half-width, as a fraction of the range.
    pub window_fraction: f64,
    /// Jump refinement window half-width, in coarse spacings.
    pub jump_window: usize,
    /// Points ignored at each end of a grid.
    pub edge_guard: usize,
    /// Minimum per-level growth of max |d²|.
    pub growth_factor: f64,
    /// Minimum per-level ratio between successive increments of max |d¹|.
    pub increment_ratio: f64,
    /// Largest drift of the divergence location across levels, in coarse
    /// spacings.
    pub max_drift: f64,
    /// Largest per-level ratio of a quantity that must shrink.
    pub shrink_factor: f64,
    /// A jump candidate must exceed this multiple of the median local
    /// variation.
    pub jump_factor: f64,
    /// Allowed per-level ratio range of a persistent jump.
    pub persistence: (f64, f64),
    /// Largest per-level movement of either side limit, relative to the jump.
    pub side_drift: f64,
    pub max_candidates: usize,
    /// Minimum |d²(±3) − d²(±6)| around the finest d² peak, relative to the
    /// peak; a 1/t tail passes, the isolated spike of a kink or jump does not.
    pub tail_ratio: f64,
    /// Relative size below which differences are treated as rounding noise.
    pub noise_floor: f64,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        Self {
            window_fraction: 0.1,
            jump_window: 8,
            edge_guard: 2,
            growth_factor: 1.5,
            increment_ratio: 0.65,
            max_drift: 2.0,
            shrink_factor: 0.75,
            jump_factor: 10.0,
            persistence: (0.75, 1.33),
            side_drift: 0.25,
            max_candidates: 8,
            tail_ratio: 0.02,
            noise_floor: 1e-9,
        }
    }
}

/// Samples of one refinement level on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    pub lo: f64,
    pub hi: f64,
    pub values: Vec<f64>,
}

impl Level {
    fn spacing(&self) -> f64 {
        (self.hi - self.lo) / (self.values.len() - 1) as f64
    }

    fn x(&self, i: usize) -> f64 {
        self.lo + i as f64 * self.spacing()
    }
}

fn check_grid(lo: f64, hi: f64, points: usize, levels: usize, min_levels: usize) -> Result<f64> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidArgument(format!(
            "range [{lo}, {hi}] is empty"
        )));
    }
    if points < 16 {
        return Err(Error::InvalidArgument(format!(
            "{points} coarse points; detectors need at least 16"
        )));
    }
    if levels < min_levels {
        return Err(Error::InvalidArgument(format!(
            "{levels} refinement levels; this detector needs at least {min_levels}"
        )));
    }
    Ok((hi - lo) / (points - 1) as f64)
}

// Nested dyadic refinements of the coarse sub-grid [i_lo, i_hi].
fn refine(
    probe: &dyn Probe,
    coarse: &[f64],
    lo: f64,
    h0: f64,
    (i_lo, i_hi): (usize, usize),
    levels: usize,
) -> Result<Vec<Level>> {
    let (a, b) = (lo + i_lo as f64 * h0, lo + i_hi as f64 * h0);
    let mut out = vec![Level {
        lo: a,
        hi: b,
        values: coarse[i_lo..=i_hi].to_vec(),
    }];
    for l in 1..=levels {
        let points = (i_hi - i_lo) * (1 << l) + 1;
        out.push(Level {
            lo: a,
            hi: b,
            values: probe.sample(a, b, points)?,
        });
    }
    Ok(out)
}

fn median(mut v: Vec<f64>) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn argmax_abs(v: &[f64], range: std::ops::Range<usize>) -> usize {
    let mut best = range.start;
    for i in range {
        if v[i].abs() > v[best].abs() {
            best = i;
        }
    }
    best
}

/// Looks for a divergence of the second derivative: samples the coarse grid,
/// centers a window on the largest |d²|, and refines it `levels` times.
pub fn detect_divergence(
    probe: &dyn Probe,
    lo: f64,
    hi: f64,
    points: usize,
    levels: usize,
    cfg: &DetectorConfig,
) -> Result<DetectionReport> {
    let h0 = check_grid(lo, hi, points, levels, 2)?;
    let coarse = probe.sample(lo, hi, points)?;
    let d2 = finite_diff_values(&coarse, h0, 2)?;
    let g = cfg.edge_guard;
    let c = argmax_abs(&d2, g..points - g);
    let half = ((cfg.window_fraction * (hi - lo) / h0).round() as usize).max(4 * g);
    let window = (c.saturating_sub(half), (c + half).min(points - 1));
    let lv = refine(probe, &coarse, lo, h0, window, levels)?;
    divergence_from_levels(&lv, h0, cfg)
}

/// Divergence decision from already sampled nested levels (coarsest first).
///
/// Confirms when, level over level: max |d²| grows by `growth_factor`; the
/// peak of |d¹ − median d¹| keeps increasing by roughly constant steps; its
/// position stays within `max_drift` coarse spacings; and the largest
/// one-step change in value shrinks (so a jump is not mistaken for a
/// divergence). At the finest level d² must also keep a 1/t-like tail around
/// its peak, which rules out kinks.
pub fn divergence_from_levels(
    levels: &[Level],
    coarse_spacing: f64,
    cfg: &DetectorConfig,
) -> Result<DetectionReport> {
    let none = DetectionReport::none(coarse_spacing);
    if levels.len() < 3 {
        return Err(Error::InvalidArgument(
            "divergence needs the coarse level and at least two refinements".into(),
        ));
    }
    let mut peak = Vec::new();
    let mut curv = Vec::new();
    let mut loc = Vec::new();
    let mut step = Vec::new();
    for level in levels {
        let n = level.values.len();
        let g = cfg.edge_guard.max(1);
        if n < 2 * g + 5 {
            return Err(Error::InvalidArgument("refinement window too small".into()));
        }
        let h = level.spacing();
        let d1 = finite_diff_values(&level.values, h, 1)?;
        let d2 = finite_diff_values(&level.values, h, 2)?;
        let inner = g..n - g;
        let mid = median(d1[inner.clone()].to_vec());
        let prominence: Vec<f64> = d1.iter().map(|d| d - mid).collect();
        // The d¹ peak is looked for next to the d² peak, where the
        // singularity sits, so a steep smooth background cannot outrank it.
        let p = argmax_abs(&d2, inner.clone());
        let i = argmax_abs(&prominence, p.saturating_sub(2).max(g)..(p + 3).min(n - g));
        peak.push(prominence[i].abs());
        loc.push(level.x(i));
        curv.push(inner.clone().map(|k| d2[k].abs()).fold(0.0, f64::max));
        step.push(
            inner
                .clone()
                .skip(1)
                .map(|k| (level.values[k] - level.values[k - 1]).abs())
                .fold(0.0, f64::max),
        );
    }
    let growth: Vec<f64> = curv.windows(2).map(|w| w[1] / w[0]).collect();
    if growth.iter().any(|r| r.is_nan() || *r < cfg.growth_factor) {
        return Ok(none);
    }
    let incr: Vec<f64> = peak.windows(2).map(|w| w[1] - w[0]).collect();
    if incr.iter().any(|d| d.is_nan() || *d <= 0.0) {
        return Ok(none);
    }
    for w in incr.windows(2) {
        if w[1] / w[0] < cfg.increment_ratio {
            return Ok(none);
        }
    }
    if loc
        .iter()
        .any(|x| (x - loc[0]).abs() >= cfg.max_drift * coarse_spacing)
    {
        return Ok(none);
    }
    if step.windows(2).any(|w| w[1] > cfg.shrink_factor * w[0]) {
        return Ok(none);
    }
    let finest = levels.last().expect("at least three levels");
    let n = finest.values.len();
    let d2 = finite_diff_values(&finest.values, finest.spacing(), 2)?;
    let g = cfg.edge_guard.max(1);
    let p = argmax_abs(&d2, g..n - g);
    if p < g + 6 || p + 6 >= n - g {
        return Ok(none);
    }
    let tail = (d2[p - 3] - d2[p - 6])
        .abs()
        .min((d2[p + 3] - d2[p + 6]).abs());
    if tail.is_nan() || tail < cfg.tail_ratio * d2[p].abs() {
        return Ok(none);
    }
    let rate = growth.iter().map(|r| r.ln()).sum::<f64>() / growth.len() as f64;
    Ok(DetectionReport {
        kind: DetectionKind::Divergence,
        location: loc.last().copied(),
        strength: rate.exp(),
        coarse_spacing,
        finest_spacing: finest.spacing(),
    })
}

// The series a jump detector inspects, with the first and last valid index.
fn series(values: &[f64], h: f64, target: Target) -> Result<(Vec<f64>, usize)> {
    match target {
        Target::Value => Ok((values.to_vec(), 0)),
        Target::FirstDerivative => Ok((finite_diff_values(values, h, 1)?, 1)),
    }
}

fn noise(values: &[f64], h: f64, target: Target, cfg: &DetectorConfig) -> f64 {
    let scale = values
        .iter()
        .fold(0.0f64, |a, v| a.max(v.abs()))
        .max(1e-300);
    match target {
        Target::Value => cfg.noise_floor * scale,
        Target::FirstDerivative => cfg.noise_floor * scale / h,
    }
}

// Side limits at the middle of [k, k+1], each extrapolated linearly from the
// two clean points on its side ([k−2, k−1] and [k+2, k+3]).
fn side_limits(s: &[f64], k: usize) -> (f64, f64) {
    let left = s[k - 1] + 1.5 * (s[k - 1] - s[k - 2]);
    let right = s[k + 2] - 1.5 * (s[k + 3] - s[k + 2]);
    (left, right)
}

// Step k against the trend of the steps two away on either side, so a smooth
// slope or curvature does not mask a small jump.
fn step_residual(s: &[f64], k: usize) -> f64 {
    let step = |i: usize| s[i + 1] - s[i];
    (step(k) - 0.5 * (step(k - 2) + step(k + 2))).abs()
}

fn span_jump(s: &[f64], k: usize) -> f64 {
    let (left, right) = side_limits(s, k);
    (right - left).abs()
}

// Value jump at the middle of the span [k−1, k+2], from linear extrapolation
// of each side to the midpoint of [k, k+1].
fn extrapolated_jump(v: &[f64], k: usize) -> f64 {
    let left = v[k] + 0.5 * (v[k] - v[k - 1]);
    let right = v[k + 1] - 0.5 * (v[k + 2] - v[k + 1]);
    (right - left).abs()
}

#[allow(clippy::too_many_arguments)]
fn track_jump(
    probe: &dyn Probe,
    coarse: &[f64],
    lo: f64,
    h0: f64,
    k0: usize,
    levels: usize,
    target: Target,
    kind: DetectionKind,
    cfg: &DetectorConfig,
) -> Result<Option<DetectionReport>> {
    let n = coarse.len();
    let w = cfg.jump_window.max(4);
    let (i_lo, i_hi) = (k0.saturating_sub(w), (k0 + 1 + w).min(n - 1));
    let (a, b) = (lo + i_lo as f64 * h0, lo + i_hi as f64 * h0);
    let mut prev: Option<(f64, f64, f64)> = None; // jump, left, right
    let mut centre = lo + (k0 as f64 + 0.5) * h0;
    let mut last_h = h0;
    let mut finest = None;
    for l in 0..=levels {
        // Finer levels are only sampled while the candidate survives.
        let level = Level {
            lo: a,
            hi: b,
            values: if l == 0 {
                coarse[i_lo..=i_hi].to_vec()
            } else {
                probe.sample(a, b, (i_hi - i_lo) * (1 << l) + 1)?
            },
        };
        let h = level.spacing();
        let (s, g) = series(&level.values, h, target)?;
        let m = s.len();
        if m < 2 * g + 6 {
            return Ok(None);
        }
        let radius = 1.5 * last_h + 1e-12 * h0;
        let mut best: Option<(usize, f64)> = None;
        for k in (g + 2)..(m - 3 - g) {
            let c = level.x(k) + 0.5 * h;
            if (c - centre).abs() <= radius {
                let r = step_residual(&s, k);
                if best.is_none_or(|(_, br)| r > br) {
                    best = Some((k, r));
                }
            }
        }
        let Some((k, _)) = best else { return Ok(None) };
        let j = span_jump(&s, k);
        if j.is_nan() || j <= noise(&level.values, h, target, cfg) {
            return Ok(None);
        }
        let (left, right) = side_limits(&s, k);
        if let Some((pj, pl, pr)) = prev {
            let r = j / pj;
            if r < cfg.persistence.0 || r > cfg.persistence.1 {
                return Ok(None);
            }
            if (left - pl).abs() > cfg.side_drift * j || (right - pr).abs() > cfg.side_drift * j {
                return Ok(None);
            }
        }
        // A cusp's one-sided extrapolations of the value meet within the
        // resolution of the slope jump.
        if kind == DetectionKind::Cusp {
            let v = &level.values;
            let gap = extrapolated_jump(v, k);
            if gap > j * h + noise(v, 1.0, Target::Value, cfg) {
                return Ok(None);
            }
        }
        centre = level.x(k) + 0.5 * h;
        prev = Some((j, left, right));
        last_h = h;
        finest = Some((level, k, j));
    }
    let Some((level, k, j)) = finest else {
        return Ok(None);
    };
    let h = level.spacing();
    Ok(Some(DetectionReport {
        kind,
        location: Some(level.x(k) + 0.5 * h),
        strength: j,
        coarse_spacing: h0,
        finest_spacing: h,
    }))
}

fn jump_candidates(s: &[f64], g: usize, floor: f64, cfg: &DetectorConfig) -> Vec<usize> {
    let m = s.len();
    let lo = g + 2;
    let hi = (m - 1 - g).saturating_sub(2);
    if hi <= lo {
        return Vec::new();
    }
    let resid = |k: usize| step_residual(s, k);
    let threshold = cfg.jump_factor * median((lo..hi).map(resid).collect()).max(floor);
    // A jump is an isolated spike: only local maxima of the residual within
    // three steps qualify, so a steep smooth stretch yields one candidate.
    let peak = |k: usize| {
        let r = resid(k);
        (k.saturating_sub(3).max(lo)..(k + 4).min(hi)).all(|i| resid(i) <= r)
    };
    let mut cands: Vec<(usize, f64)> = (lo..hi)
        .map(|k| (k, resid(k)))
        .filter(|&(k, j)| j > threshold && peak(k))
        .collect();
    cands.sort_by(|a, b| b.1.total_cmp(&a.1));
    let mut chosen: Vec<usize> = Vec::new();
    for (k, _) in cands {
        if chosen.iter().all(|&c| c.abs_diff(k) > 3) {
            chosen.push(k);
            if chosen.len() == cfg.max_candidates {
                break;
            }
        }
    }
    chosen
}

#[allow(clippy::too_many_arguments)]
fn find_jumps(
    probe: &dyn Probe,
    lo: f64,
    hi: f64,
    points: usize,
    levels: usize,
    target: Target,
    kind: DetectionKind,
    cfg: &DetectorConfig,
) -> Result<Vec<DetectionReport>> {
    let h0 = check_grid(lo, hi, points, levels, 1)?;
    let coarse = probe.sample(lo, hi, points)?;
    let (s, g) = series(&coarse, h0, target)?;
    let floor = noise(&coarse, h0, target, cfg);
    let mut found = Vec::new();
    for k in jump_candidates(&s, g, floor, cfg) {
        if let Some(r) = track_jump(probe, &coarse, lo, h0, k, levels, target, kind, cfg)? {
            found.push(r);
        }
    }
    found.sort_by(|a, b| b.strength.total_cmp(&a.strength));
    Ok(found)
}

/// All jumps of the value or of its first derivative that persist, with
/// stable size and converging side limits, under `levels` refinements.
/// Strongest first.
pub fn find_discontinuities(
    probe: &dyn Probe,
    lo: f64,
    hi: f64,
    points: usize,
    levels: usize,
    target: Target,
    cfg: &DetectorConfig,
) -> Result<Vec<DetectionReport>> {
    find_jumps(
        probe,
        lo,
        hi,
        points,
        levels,
        target,
        DetectionKind::Discontinuity,
        cfg,
    )
}

/// Strongest persistent jump, or a `None` report.
pub fn detect_discontinuity(
    probe: &dyn Probe,
    lo: f64,
    hi: f64,
    points: usize,
    levels: usize,
    target: Target,
    cfg: &DetectorConfig,
) -> Result<DetectionReport> {
    let h0 = check_grid(lo, hi, points, levels, 1)?;
    Ok(
        find_discontinuities(probe, lo, hi, points, levels, target, cfg)?
            .into_iter()
            .next()
            .unwrap_or_else(|| DetectionReport::none(h0)),
    )
}

/// Persistent first-derivative jumps where the value itself stays
/// continuous: at every level the linear extrapolations from both sides meet
/// to within the slope jump times the spacing.
pub fn find_cusps(
    probe: &dyn Probe,
    lo: f64,
    hi: f64,
    points: usize,
    levels: usize,
    cfg: &DetectorConfig,
) -> Result<Vec<DetectionReport>> {
    find_jumps(
        probe,
        lo,
        hi,
        points,
        levels,
        Target::FirstDerivative,
        DetectionKind::Cusp,
        cfg,
    )
}

/// Strongest cusp, or a `None` report.
pub fn detect_cusp(
    probe: &dyn Probe,
    lo: f64,
    hi: f64,
    points: usize,
    levels: usize,
    cfg: &DetectorConfig,
) -> Result<DetectionReport> {
    let h0 = check_grid(lo, hi, points, levels, 1)?;
    Ok(find_cusps(probe, lo, hi, points, levels, cfg)?
        .into_iter()
        .next()
        .unwrap_or_else(|| DetectionReport::none(h0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> DetectorConfig {
        DetectorConfig::default()
    }

    #[test]
    fn log_divergence_is_found() {
        let c = 0.4137;
        let p = FnProbe(move |x: f64| {
            let t = x - c;
            0.3 * x + t * (t.abs() + 1e-300).ln() + 0.2 * x * x
        });
        let r = detect_divergence(&p, 0.0, 1.0, 256, 3, &cfg()).unwrap();
        assert_eq!(r.kind, DetectionKind::Divergence);
        assert!((r.location.unwrap() - c).abs() < 2.0 * r.finest_spacing);
    }

    #[test]
    fn smooth_kink_and_jump_are_not_divergences() {
        let smooth = FnProbe(|x: f64| (5.0 * x).tanh());
        let kink = FnProbe(|x: f64| (x - 0.3).abs());
        let jump = FnProbe(|x: f64| if x < 0.3 { 0.0 } else { 1.0 } + x);
        for p in [&smooth as &dyn Probe, &kink, &jump] {
            let r = detect_divergence(p, -1.0, 1.0, 256, 3, &cfg()).unwrap();
            assert!(r.is_none(), "{r}");
        }
    }

    #[test]
    fn value_jump_is_found() {
        let p = FnProbe(|x: f64| x.sin() + if x < 0.693 { 0.0 } else { 0.05 });
        let r = detect_discontinuity(&p, 0.0, 2.0, 256, 3, Target::Value, &cfg()).unwrap();
        assert_eq!(r.kind, DetectionKind::Discontinuity);
        assert!((r.location.unwrap() - 0.693).abs() < r.finest_spacing);
        assert!((r.strength - 0.05).abs() < 0.01);
        assert!(detect_cusp(&p, 0.0, 2.0, 256, 3, &cfg()).unwrap().is_none());
    }

    #[test]
    fn kink_is_a_cusp_not_a_value_jump() {
        let p = FnProbe(|x: f64| (x - 1.234).abs() * 0.5 + x.cos());
        let v = detect_discontinuity(&p, 0.0, 2.0, 256, 3, Target::Value, &cfg()).unwrap();
        assert!(v.is_none(), "{v}");
        let d =
            detect_discontinuity(&p, 0.0, 2.0, 256, 3, Target::FirstDerivative, &cfg()).unwrap();
        assert_eq!(d.kind, DetectionKind::Discontinuity);
        let c = detect_cusp(&p, 0.0, 2.0, 256, 3, &cfg()).unwrap();
        assert_eq!(c.kind, DetectionKind::Cusp);
        assert!((c.location.unwrap() - 1.234).abs() < 2.0 * c.finest_spacing);
        assert!((c.strength - 1.0).abs() < 0.05);
    }

    #[test]
    fn log_divergence_is_not_a_jump() {
        let p = FnProbe(|x: f64| {
            let t = x - 0.61;
            t * (t.abs() + 1e-300).ln()
        });
        let d =
            detect_discontinuity(&p, 0.0, 1.0, 256, 3, Target::FirstDerivative, &cfg()).unwrap();
        assert!(d.is_none(), "{d}");
        assert!(detect_cusp(&p, 0.0, 1.0, 256, 3, &cfg()).unwrap().is_none());
    }

    #[test]
    fn constant_is_quiet() {
        let p = FnProbe(|_| 0.125);
        for t in [Target::Value, Target::FirstDerivative] {
            assert!(detect_discontinuity(&p, -2.0, -1.0, 64, 2, t, &cfg())
                .unwrap()
                .is_none());
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let p = FnProbe(|x: f64| x);
        assert!(detect_divergence(&p, 0.0, 1.0, 256, 1, &cfg()).is_err());
        assert!(detect_divergence(&p, 1.0, 0.0, 256, 3, &cfg()).is_err());
        assert!(detect_cusp(&p, 0.0, 1.0, 8, 3, &cfg()).is_err());
    }
}
