use std::fmt::Write as _;
use std::io::Write;

use phasecrit::criticality::SweepResult;

/// CSV with a header, the parameter first, then each value column followed
/// by its first and second derivatives. Values use 17 significant digits.
pub fn write_csv<W: Write>(out: W, res: &SweepResult) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let mut header = vec![res.parameter_name.to_string()];
    for c in &res.columns {
        header.push(c.clone());
        header.push(format!("d1_{c}"));
        header.push(format!("d2_{c}"));
    }
    w.write_record(&header)?;
    for (i, x) in res.grid.iter().enumerate() {
        let mut row = vec![format!("{x:.16e}")];
        for c in 0..res.columns.len() {
            row.push(format!("{:.16e}", res.values[c][i]));
            row.push(format!("{:.16e}", res.d1[c][i]));
            row.push(format!("{:.16e}", res.d2[c][i]));
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

const COLORS: [&str; 4] = ["#1f4e9c", "#c0392b", "#27864a", "#7d3c98"];

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    (0..=4).map(|k| lo + (hi - lo) * k as f64 / 4.0).collect()
}

/// Polylines of the value columns against the parameter, with ticks.
pub fn render_svg(res: &SweepResult) -> String {
    let (w, h, pad) = (720.0, 440.0, 60.0);
    let (x0, x1) = (res.grid[0], res.grid[res.grid.len() - 1]);
    let all = res.values.iter().flatten().filter(|v| v.is_finite());
    let (mut y0, mut y1) = all.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
        (a.min(v), b.max(v))
    });
    if y0.is_nan() || y1.is_nan() || y1 <= y0 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let sx = |x: f64| pad + (x - x0) / (x1 - x0) * (w - 2.0 * pad);
    let sy = |y: f64| h - pad - (y - y0) / (y1 - y0) * (h - 2.0 * pad);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{pad}" y="{pad}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        w - 2.0 * pad,
        h - 2.0 * pad
    );
    for t in ticks(x0, x1) {
        let x = sx(t);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{t:.3}</text>"#,
            h - pad,
            h - pad + 5.0,
            h - pad + 20.0
        );
    }
    for t in ticks(y0, y1) {
        let y = sy(t);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{pad}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{t:.4}</text>"#,
            pad - 5.0,
            pad - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        w / 2.0,
        h - 15.0,
        res.parameter_name
    );
    for (c, name) in res.columns.iter().enumerate() {
        let color = COLORS[c % COLORS.len()];
        let pts: Vec<String> = res
            .grid
            .iter()
            .zip(&res.values[c])
            .filter(|(_, v)| v.is_finite())
            .map(|(x, v)| format!("{:.2},{:.2}", sx(*x), sy(*v)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            pts.join(" ")
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" fill="{color}">{name}</text>"#,
            w - pad - 120.0,
            pad + 18.0 * (c + 1) as f64
        );
    }
    s.push_str("</svg>\n");
    s
}
