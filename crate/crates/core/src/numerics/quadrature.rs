//! Adaptive Gauss–Kronrod (10/21 point) integration of vector-valued integrands.
//!
//! All components share one panel partition. A panel is split while the
//! largest Kronrod/Gauss discrepancy over components exceeds its share of the
//! absolute tolerance.

#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// QUADPACK qk21 abscissae and weights.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_460,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_958_109_831,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];
// Gauss 10-point weights, attached to the odd Kronrod nodes XGK[1], XGK[3], ...
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadratureOptions {
    pub abs_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            max_panels: 1 << 14,
        }
    }
}

#[derive(Debug, Clone)]
pub struct QuadratureResult {
    pub values: Vec<f64>,
    pub error: f64,
    pub panels: usize,
}

struct Panel {
    a: f64,
    b: f64,
    values: Vec<f64>,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod_panel<F>(f: &F, a: f64, b: f64, dim: usize, buf: &mut [f64]) -> Panel
where
    F: Fn(f64, &mut [f64]),
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = vec![0.0; dim];
    let mut gauss = vec![0.0; dim];
    let mut scale = 0.0f64;

    f(center, buf);
    for c in 0..dim {
        kronrod[c] = WGK[10] * buf[c];
        scale = scale.max(buf[c].abs());
    }
    for (j, (&x, &wk)) in XGK[..10].iter().zip(&WGK[..10]).enumerate() {
        let dx = half * x;
        for side in [-1.0, 1.0] {
            f(center + side * dx, buf);
            for c in 0..dim {
                kronrod[c] += wk * buf[c];
                if j % 2 == 1 {
                    gauss[c] += WG[j / 2] * buf[c];
                }
                scale = scale.max(buf[c].abs());
            }
        }
    }
    let mut error = 0.0f64;
    for c in 0..dim {
        kronrod[c] *= half;
        gauss[c] *= half;
        error = error.max((kronrod[c] - gauss[c]).abs());
    }
    // Below this the discrepancy is rounding noise, not truncation error.
    let floor = 50.0 * f64::EPSILON * scale * half.abs();
    if error < floor {
        error = 0.0;
    }
    Panel {
        a,
        b,
        values: kronrod,
        error,
    }
}

/// Integrates a `dim`-component integrand over `[a, b]`.
///
/// `f(x, out)` must fill `out` (length `dim`) with the integrand at `x`.
pub fn integrate_vec<F>(
    f: F,
    a: f64,
    b: f64,
    dim: usize,
    opts: QuadratureOptions,
) -> Result<QuadratureResult>
where
    F: Fn(f64, &mut [f64]),
{
    let mut buf = vec![0.0; dim];
    let mut heap = BinaryHeap::new();
    heap.push(kronrod_panel(&f, a, b, dim, &mut buf));
    let mut panels = 1usize;

    loop {
        let total_error: f64 = heap.iter().map(|p| p.error).sum();
        if total_error <= opts.abs_tol {
            break;
        }
        if panels >= opts.max_panels {
            return Err(Error::Quadrature {
                tolerance: opts.abs_tol,
                achieved: total_error,
            });
        }
        let worst = heap.pop().expect("panel heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(kronrod_panel(&f, worst.a, mid, dim, &mut buf));
        heap.push(kronrod_panel(&f, mid, worst.b, dim, &mut buf));
        panels += 1;
    }

    // Sum in a fixed (positional) order so results do not depend on heap layout.
    let mut done: Vec<Panel> = heap.into_vec();
    done.sort_by(|p, q| p.a.total_cmp(&q.a));
    let mut values = vec![0.0; dim];
    let mut error = 0.0;
    for p in &done {
        for (v, pv) in values.iter_mut().zip(&p.values) {
            *v += pv;
        }
        error += p.error;
    }
    Ok(QuadratureResult {
        values,
        error,
        panels,
    })
}

/// Scalar convenience wrapper around [`integrate_vec`].
pub fn integrate<F>(f: F, a: f64, b: f64, opts: QuadratureOptions) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let r = integrate_vec(|x, out: &mut [f64]| out[0] = f(x), a, b, 1, opts)?;
    Ok((r.values[0], r.error))
}
