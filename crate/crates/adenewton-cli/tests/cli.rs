//! Integration tests for the CLI: render/parse round trips, report
//! determinism, schema conformance, and exit codes.

use std::path::Path;
use std::process::Command as Process;

use adenewton_cli::config::{Config, Format};
use adenewton_cli::{parse, run, Command};
use adenewton_core::sampling::Sampler;
use adenewton_core::series::FieldPreset;
use serde_json::Value;

fn cfg(preset: FieldPreset, format: Format) -> Config {
    let mut c = Config::default();
    c.preset = preset;
    c.format = format;
    c
}

#[test]
fn render_parse_round_trip_500() {
    for preset in [FieldPreset::h_type(), FieldPreset::monotone()] {
        let mut s = Sampler::new(preset, 2024);
        for _ in 0..250 {
            let p = s.diffpoly(3, 4, 5);
            let text = p.to_string();
            let back = parse::parse_poly(&text, preset, 8)
                .unwrap_or_else(|e| panic!("reparse failed on `{text}`: {e}"));
            assert_eq!(back, p, "round trip failed on `{text}`");
        }
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let commands = [
        Command::Solve {
            equation: "Y^2 + t*Y + t^3 = 0 where Y preceq 1".into(),
            target: Some("6".into()),
            branch_bound: None,
            depth: None,
        },
        Command::Diagram {
            poly: "Y^2 + t*Y + t^3".into(),
            constraint: Some("all".into()),
        },
        Command::Analyze {
            equation: "Y^2 - 2*t*Y + t^2 - t^3 where Y preceq 1".into(),
        },
        Command::CheckField { samples: 50 },
    ];
    for format in [Format::Text, Format::Json] {
        for cmd in &commands {
            let a = run(cmd, &cfg(FieldPreset::h_type(), format)).unwrap();
            let b = run(cmd, &cfg(FieldPreset::h_type(), format)).unwrap();
            assert_eq!(a.0, b.0);
            assert_eq!(a.1, b.1);
        }
    }
}

/// Minimal structural validator: checks `type`, `required`, `properties`,
/// `items`, and `enum` clauses of the shipped draft-07 schemas.
fn validate(schema: &Value, value: &Value) -> Result<(), String> {
    if let Some(types) = schema.get("type") {
        let names: Vec<String> = match types {
            Value::String(s) => vec![s.clone()],
            Value::Array(a) => a
                .iter()
                .map(|v| v.as_str().unwrap_or_default().to_string())
                .collect(),
            _ => vec![],
        };
        let matches = names.iter().any(|n| match n.as_str() {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.is_i64() || value.is_u64(),
            "number" => value.is_number(),
            "boolean" => value.is_boolean(),
            "null" => value.is_null(),
            _ => false,
        });
        if !matches {
            return Err(format!("value {value} does not have type {names:?}"));
        }
    }
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            return Err(format!("value {value} not in enum"));
        }
    }
    if value.is_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required {
                let key = key.as_str().unwrap();
                if value.get(key).is_none() {
                    return Err(format!("missing required key `{key}`"));
                }
            }
        }
        if let Some(props) = schema.get("properties").and_then(Value::as_object) {
            for (key, sub) in props {
                if let Some(v) = value.get(key) {
                    validate(sub, v).map_err(|e| format!("{key}: {e}"))?;
                }
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), value.as_array()) {
        for (i, v) in arr.iter().enumerate() {
            validate(items, v).map_err(|e| format!("[{i}]: {e}"))?;
        }
    }
    Ok(())
}

fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs")
        .join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn json_reports_match_shipped_schemas() {
    let cases: Vec<(Command, &str)> = vec![
        (
            Command::Solve {
                equation: "Y^2 + t*Y + t^3 = 0 where Y preceq 1".into(),
                target: Some("6".into()),
                branch_bound: None,
                depth: None,
            },
            "solve_report.schema.json",
        ),
        (
            Command::Solve {
                equation: "Y^2 + 1 where Y preceq 1".into(),
                target: Some("4".into()),
                branch_bound: None,
                depth: None,
            },
            "solve_report.schema.json",
        ),
        (
            Command::Diagram {
                poly: "Y^2 + t*Y + t^3".into(),
                constraint: None,
            },
            "diagram_report.schema.json",
        ),
        (
            Command::Analyze {
                equation: "Y^2 - t where Y preceq 1".into(),
            },
            "analyze_report.schema.json",
        ),
        (
            Command::Equalizer {
                p: "Y^2".into(),
                q: "Y'".into(),
            },
            "equalizer_report.schema.json",
        ),
        (
            Command::ChainDdeg {
                poly: "Y^2 + t*Y + t^3".into(),
                chain: "0; -t; -t + t^2".into(),
            },
            "chain_report.schema.json",
        ),
        (
            Command::CheckField { samples: 20 },
            "check_field_report.schema.json",
        ),
    ];
    for (cmd, schema_name) in cases {
        let (_, out) = run(&cmd, &cfg(FieldPreset::h_type(), Format::Json)).unwrap();
        let value: Value = serde_json::from_str(&out).unwrap();
        validate(&schema(schema_name), &value)
            .unwrap_or_else(|e| panic!("{schema_name}: {e}\nreport: {out}"));
    }
}

#[test]
fn exit_codes_reflect_outcomes() {
    // solvable equation: 0
    let (code, _) = run(
        &Command::Solve {
            equation: "Y^2 + t*Y + t^3 = 0 where Y preceq 1".into(),
            target: Some("4".into()),
            branch_bound: None,
            depth: None,
        },
        &cfg(FieldPreset::h_type(), Format::Text),
    )
    .unwrap();
    assert_eq!(code, 0);
    // stuck-only outcome: 2
    let (code, _) = run(
        &Command::Solve {
            equation: "Y^2 + 1 where Y preceq 1".into(),
            target: Some("4".into()),
            branch_bound: None,
            depth: None,
        },
        &cfg(FieldPreset::h_type(), Format::Text),
    )
    .unwrap();
    assert_eq!(code, 2);
    // malformed input: Err, mapped to 1 by main
    assert!(run(
        &Command::Solve {
            equation: "Y^^ + %".into(),
            target: None,
            branch_bound: None,
            depth: None,
        },
        &cfg(FieldPreset::h_type(), Format::Text),
    )
    .is_err());
}

#[test]
fn binary_is_deterministic_and_reports_codes() {
    let bin = env!("CARGO_BIN_EXE_adenewton");
    let run_solve = || {
        Process::new(bin)
            .args([
                "solve",
                "Y^2 + t*Y + t^3 = 0 where Y preceq 1",
                "--target",
                "6",
                "--format",
                "json",
            ])
            .output()
            .unwrap()
    };
    let a = run_solve();
    let b = run_solve();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let stuck = Process::new(bin)
        .args(["solve", "Y^2 + 1 where Y preceq 1"])
        .output()
        .unwrap();
    assert_eq!(stuck.status.code(), Some(2));
    let bad = Process::new(bin)
        .args(["solve", "Y^ ??"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let analyze = Process::new(bin)
        .args([
            "analyze",
            "Y' + Y - z - t = 0 where Y preceq 1",
            "--preset",
            "monotone",
        ])
        .output()
        .unwrap();
    assert!(analyze.status.success());
    let text = String::from_utf8(analyze.stdout).unwrap();
    assert!(text.contains("quasilinear: true"));
}

#[test]
fn constraint_flag_and_dimension_errors() {
    let bin = env!("CARGO_BIN_EXE_adenewton");
    // diagram restricted below t keeps only the deeper starting monomial
    let out = Process::new(bin)
        .args(["diagram", "Y^2 + t*Y + t^3", "--in", "prec t", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["i_sequence"], serde_json::json!([0, 1]));
    assert_eq!(v["equalizers"], serde_json::json!(["2"]));
    // the n = 2 variant supports the field checks but not the diagram
    let ok = Process::new(bin)
        .args(["check-field", "--preset", "monotone", "--dim", "2", "--samples", "40"])
        .output()
        .unwrap();
    assert!(ok.status.success());
    let err = Process::new(bin)
        .args(["diagram", "Y^2 + t*Y", "--preset", "monotone", "--dim", "2"])
        .output()
        .unwrap();
    assert_eq!(err.status.code(), Some(1));
    let msg = String::from_utf8(err.stderr).unwrap();
    assert!(msg.contains("dimension 1"), "stderr was: {msg}");
}

#[test]
fn solve_monotone_exact_root_via_binary() {
    let bin = env!("CARGO_BIN_EXE_adenewton");
    let out = Process::new(bin)
        .args([
            "solve",
            "Y' + Y - z - t = 0 where Y preceq 1",
            "--preset",
            "monotone",
            "--target",
            "5",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let branches = v["branches"].as_array().unwrap();
    assert!(branches
        .iter()
        .any(|b| b["status"] == "ExactRoot" && b["y"] == "(z - 1) + t"));
}

#[test]
fn config_file_drives_the_run() {
    let dir = std::env::temp_dir().join("adenewton-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.toml");
    std::fs::write(
        &path,
        "[field]\npreset = \"h-type\"\nprecision = \"4\"\n[output]\nformat = \"json\"\n",
    )
    .unwrap();
    let bin = env!("CARGO_BIN_EXE_adenewton");
    let out = Process::new(bin)
        .args(["--config", path.to_str().unwrap(), "solve", "Y^2 - t where Y preceq 1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["target"], "4");
    assert_eq!(v["branches"].as_array().unwrap().len(), 2);
}
