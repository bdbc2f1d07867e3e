use std::fs;
use std::process::{Command, Output};

use phasecrit_cli::CliError;

fn phasecrit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phasecrit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn sweep_writes_one_row_per_grid_point() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("dwf.csv");
    let o = phasecrit(&[
        "sweep",
        "--model",
        "xy",
        "--gamma",
        "0.5",
        "--point",
        "00,00",
        "--range",
        "0.5:1.5:64",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "lambda,dwf,d1_dwf,d2_dwf");
    assert_eq!(lines.len(), 65);
    let first: Vec<f64> = lines[1].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(first[0], 0.5);
    assert_eq!(first.len(), 4);
}

#[test]
fn sweep_output_does_not_depend_on_thread_count() {
    let args = |t: &'static str| {
        vec![
            "--threads",
            t,
            "sweep",
            "--model",
            "xxz",
            "--n-sites",
            "8",
            "--observable",
            "entanglement",
            "--range",
            "-1.5:1.5:64",
        ]
    };
    let one = phasecrit(&args("1"));
    let two = phasecrit(&args("2"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&two));
    assert!(stdout(&one).starts_with("delta,negativity,"));
}

#[test]
fn svg_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("plot.svg");
    let o = phasecrit(&[
        "sweep",
        "--model",
        "xy",
        "--gamma",
        "1",
        "--observable",
        "dwf-extremes",
        "--range",
        "0.5:1.5:64",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.trim_end().ends_with("</svg>"));
    assert!(text.contains("w_max"));
}

#[test]
fn detect_reports_a_divergence() {
    let o = phasecrit(&[
        "detect",
        "--model",
        "xy",
        "--gamma",
        "0.5",
        "--point",
        "01,00",
        "--range",
        "0.5:1.5:128",
        "--detector",
        "divergence",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    assert!(line.starts_with("Divergence 1.00"), "{line}");
}

#[test]
fn detect_without_a_transition_exits_one() {
    let o = phasecrit(&[
        "detect",
        "--model",
        "xy",
        "--gamma",
        "0.5",
        "--point",
        "00,00",
        "--range",
        "0.2:0.8:64",
        "--detector",
        "cusp",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "None");
}

#[test]
fn factorization_scan_prints_the_line() {
    let o = phasecrit(&[
        "detect",
        "--model",
        "xy",
        "--gamma",
        "0.5",
        "--observable",
        "gwf-spread",
        "--theta",
        "pi/8,pi/8",
        "--phi",
        "0,0",
        "--range",
        "1.02:2.5:256",
        "--detector",
        "factorization",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("FactorizationLine 1.1547"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn configuration_errors_exit_two() {
    let cases: [&[&str]; 6] = [
        &[
            "sweep", "--model", "xy", "--gamma", "0.5", "--point", "00,00", "--range", "1:0:64",
        ],
        &[
            "sweep", "--model", "xy", "--point", "00,00", "--range", "0:1:64",
        ],
        &[
            "sweep",
            "--model",
            "xxz",
            "--n-sites",
            "9",
            "--point",
            "00,00",
            "--range",
            "0:1:64",
        ],
        &[
            "sweep",
            "--model",
            "xy",
            "--gamma",
            "0.5",
            "--observable",
            "gwf-extremes",
            "--range",
            "0.5:1.5:64",
        ],
        &[
            "detect",
            "--model",
            "xy",
            "--gamma",
            "0.5",
            "--point",
            "00,00",
            "--range",
            "0.5:1.5:64",
            "--detector",
            "divergence",
            "--refine",
            "1",
        ],
        &[
            "sweep",
            "--model",
            "xy",
            "--gamma",
            "0.5",
            "--point",
            "00,00",
            "--range",
            "0.5:1.5:64",
            "--out",
            "/nonexistent-dir/x.csv",
        ],
    ];
    for args in cases {
        let o = phasecrit(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(
            String::from_utf8_lossy(&o.stderr).starts_with("error:"),
            "{args:?}"
        );
    }
}

#[test]
fn numerical_failures_map_to_exit_three() {
    let e = CliError::Numerical(phasecrit::Error::InvalidArgument("x".into()));
    assert_eq!(e.exit_code(), 3);
    assert_eq!(CliError::Config("x".into()).exit_code(), 2);
}

#[test]
fn validate_runs_a_suite() {
    let o = phasecrit(&["validate", "--suite", "sw", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.lines().filter(|l| l.starts_with("pass sw")).count() >= 4,
        "{out}"
    );
    assert!(out.trim_end().ends_with("0 failed"), "{out}");
}
