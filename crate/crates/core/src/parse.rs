//! Parsers for the textual forms used on the command line.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::phase_space::PhasePoint;

/// Sweep range written `lo:hi:points`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

fn parse_err(what: &str, input: &str) -> Error {
    Error::Parse(format!("{what}: {input:?}"))
}

/// Parses `lo:hi:points`; needs lo < hi, both finite, and points ≥ 2.
pub fn parse_range(input: &str) -> Result<RangeSpec> {
    let parts: Vec<&str> = input.trim().split(':').collect();
    let [lo, hi, points] = parts.as_slice() else {
        return Err(parse_err("expected lo:hi:points", input));
    };
    let lo = parse_real(lo)?;
    let hi = parse_real(hi)?;
    let points: usize = points
        .trim()
        .parse()
        .map_err(|_| parse_err("point count is not a non-negative integer", input))?;
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(parse_err("range must have lo < hi", input));
    }
    if points < 2 {
        return Err(parse_err("range needs at least two points", input));
    }
    Ok(RangeSpec { lo, hi, points })
}

/// Parses a phase point `x,p` written as bit strings, site 0 first, e.g.
/// `01,00`. Both strings must have the same length (1 to 3).
pub fn parse_phase_point(input: &str) -> Result<PhasePoint> {
    let (x, p) = input
        .trim()
        .split_once(',')
        .ok_or_else(|| parse_err("expected x,p bit strings", input))?;
    let bits = |s: &str| -> Result<Vec<u8>> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(parse_err("bit strings may only contain 0 and 1", input)),
            })
            .collect()
    };
    let (x, p) = (bits(x)?, bits(p)?);
    if x.is_empty() || x.len() != p.len() || x.len() > 3 {
        return Err(parse_err(
            "bit strings must have equal length 1 to 3",
            input,
        ));
    }
    PhasePoint::from_bits(&x, &p)
}

/// Parses one real number; accepts `pi` multiples such as `pi/4`, `3*pi/8`,
/// `2pi` and `-pi/2`.
pub fn parse_real(input: &str) -> Result<f64> {
    let s = input.trim();
    let value = if let Some(pos) = s.find("pi") {
        let (head, tail) = (s[..pos].trim(), s[pos + 2..].trim());
        let coef = match head.trim_end_matches('*').trim() {
            "" | "+" => 1.0,
            "-" => -1.0,
            c => c
                .parse::<f64>()
                .map_err(|_| parse_err("bad multiple of pi", input))?,
        };
        let div = match tail {
            "" => 1.0,
            t => t
                .strip_prefix('/')
                .and_then(|d| d.trim().parse::<f64>().ok())
                .ok_or_else(|| parse_err("bad divisor of pi", input))?,
        };
        coef * PI / div
    } else {
        s.parse::<f64>()
            .map_err(|_| parse_err("not a number", input))?
    };
    if !value.is_finite() {
        return Err(parse_err("number is not finite", input));
    }
    Ok(value)
}

/// Parses a comma-separated list of angles (see [`parse_real`]).
pub fn parse_angles(input: &str) -> Result<Vec<f64>> {
    if input.trim().is_empty() {
        return Err(parse_err("empty angle list", input));
    }
    input.split(',').map(parse_real).collect()
}

/// Parses a comma-separated list of positive site distances.
pub fn parse_distances(input: &str) -> Result<Vec<usize>> {
    input
        .split(',')
        .map(|s| match s.trim().parse::<usize>() {
            Ok(m) if m >= 1 => Ok(m),
            _ => Err(parse_err("distances must be positive integers", input)),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ranges() {
        let r = parse_range("0.5:1.5:256").unwrap();
        assert_eq!((r.lo, r.hi, r.points), (0.5, 1.5, 256));
        assert_eq!(parse_range(" -2 : 2.5 : 512 ").unwrap().lo, -2.0);
        for bad in [
            "", "1:2", "1:2:3:4", "2:1:10", "1:1:10", "0:1:1", "0:1:-3", "a:1:5", "0:inf:5",
            "0:1:2.5",
        ] {
            assert!(parse_range(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn phase_points() {
        let p = parse_phase_point("01,00").unwrap();
        assert_eq!((p.n_qubits(), p.x_bit(0), p.x_bit(1), p.p()), (2, 0, 1, 0));
        assert_eq!(parse_phase_point("1,0").unwrap().n_qubits(), 1);
        for bad in ["", "01", "01,0", "02,00", "0000,0000", ",", "ab,cd"] {
            assert!(parse_phase_point(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn angles() {
        let a = parse_angles("pi/4, 3*pi/8,2pi,-pi/2,0.25").unwrap();
        let want = [PI / 4.0, 3.0 * PI / 8.0, 2.0 * PI, -PI / 2.0, 0.25];
        for (x, y) in a.iter().zip(want) {
            assert!((x - y).abs() < 1e-15);
        }
        for bad in ["", "pi/", "pi/x", "xpi", "1,,2", "nan"] {
            assert!(parse_angles(bad).is_err(), "{bad}");
        }
        assert_eq!(parse_distances("1,5,20").unwrap(), vec![1, 5, 20]);
        assert!(parse_distances("0,1").is_err());
    }

    proptest! {
        #[test]
        fn range_round_trip(lo in -1e3f64..1e3, w in 1e-3f64..1e3, n in 2usize..100_000) {
            let r = parse_range(&format!("{lo}:{}:{n}", lo + w)).unwrap();
            prop_assert_eq!(r.lo, lo);
            prop_assert_eq!(r.points, n);
        }

        #[test]
        fn parsers_never_panic(s in "\\PC*") {
            let _ = parse_range(&s);
            let _ = parse_phase_point(&s);
            let _ = parse_angles(&s);
            let _ = parse_distances(&s);
        }
    }
}
