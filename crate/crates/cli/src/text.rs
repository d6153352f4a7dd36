//! Human-readable rendering of the JSON reports.
//!
//! Everything here reads from the serialized `serde_json::Value`, so every
//! number printed is the exact token the JSON output would contain.

use std::fmt::Write;

use serde_json::Value;

fn at<'a>(v: &'a Value, path: &str) -> &'a Value {
    path.split('.').fold(v, |v, key| &v[key])
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn complex(z: &Value) -> String {
    format!("{}{:+}i", scalar(&z["re"]), ComplexIm(&z["im"]))
}

struct ComplexIm<'a>(&'a Value);

impl std::fmt::Display for ComplexIm<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = scalar(self.0);
        if s.starts_with('-') || !f.sign_plus() {
            f.write_str(&s)
        } else {
            write!(f, "+{s}")
        }
    }
}

fn matrix(m: &Value) -> String {
    let row = |r: &Value| {
        let cells: Vec<String> = r.as_array().into_iter().flatten().map(complex).collect();
        format!("[{}]", cells.join(", "))
    };
    let rows: Vec<String> = m.as_array().into_iter().flatten().map(row).collect();
    format!("[{}]", rows.join(", "))
}

fn list(v: &Value) -> String {
    let items: Vec<String> = v.as_array().into_iter().flatten().map(scalar).collect();
    format!("[{}]", items.join(", "))
}

fn describe_spec(spec: &Value) -> String {
    let kind = scalar(&spec["kind"]);
    match kind.as_str() {
        "named" => {
            let name = scalar(&spec["name"]);
            match spec.get("gamma") {
                Some(g) => format!("{name} (gamma={})", scalar(g)),
                None => name,
            }
        }
        "general" => "general amplitudes".into(),
        _ => {
            let keys = ["a", "b", "delta", "lambda", "gamma"];
            let params: Vec<String> = keys
                .iter()
                .map(|k| format!("{k}={}", scalar(&spec[*k])))
                .collect();
            format!("{kind} ({})", params.join(", "))
        }
    }
}

/// Key-value rendering of a channel report.
pub fn render_report(r: &Value) -> String {
    let mut out = String::new();
    let line = |out: &mut String, key: &str| {
        let _ = writeln!(out, "{key} = {}", scalar(at(r, key)));
    };

    let _ = writeln!(out, "channel: {}", describe_spec(&r["channel"]["spec"]));
    let amps: Vec<String> = r["channel"]["amplitudes"]
        .as_array()
        .into_iter()
        .flatten()
        .map(complex)
        .collect();
    let _ = writeln!(out, "amplitudes: [{}]", amps.join(", "));

    let perfect = r["verdict"]["perfect"].as_bool().unwrap_or(false);
    let _ = writeln!(
        out,
        "verdict: {}",
        if perfect { "PERFECT" } else { "NOT PERFECT" }
    );
    let _ = writeln!(
        out,
        "verdict.unitary_indices = {}",
        list(&r["verdict"]["unitary_indices"])
    );
    let _ = writeln!(
        out,
        "verdict.zero_indices = {}",
        list(&r["verdict"]["zero_indices"])
    );
    for key in [
        "verdict.max_unitary_residual",
        "verdict.max_zero_residual",
        "verdict.operator_completeness_deviation",
        "verdict.canonical_corrections",
        "basis_deviations.max_gram_deviation",
        "basis_deviations.max_completeness_deviation",
        "rho3.max_deviation_from_half_identity",
        "entropy_bits",
        "three_tangle",
    ] {
        line(&mut out, key);
    }
    if !r["fidelity"].is_null() {
        for key in [
            "fidelity.sessions",
            "fidelity.min_fidelity",
            "fidelity.mean_fidelity",
        ] {
            line(&mut out, key);
        }
    }

    let _ = writeln!(out, "operators:");
    for op in r["operators"].as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "  sigma{} {:<8} {}",
            scalar(&op["index"]),
            scalar(&op["tag"]["kind"]),
            matrix(&op["matrix"])
        );
    }
    if let Some(corr) = r["verdict"]["corrections"]
        .as_array()
        .filter(|c| !c.is_empty())
    {
        let _ = writeln!(out, "corrections:");
        for c in corr {
            let _ = writeln!(
                out,
                "  outcome {} -> {}",
                scalar(&c["index"]),
                matrix(&c["matrix"])
            );
        }
    }
    if let Some(basis) = r["channel"]["basis"].as_array() {
        let _ = writeln!(out, "basis:");
        for e in basis {
            let amps: Vec<String> = e["amplitudes"]
                .as_array()
                .into_iter()
                .flatten()
                .map(complex)
                .collect();
            let _ = writeln!(out, "  phi{} [{}]", scalar(&e["index"]), amps.join(", "));
        }
    }
    if let Some(traces) = r["fidelity"]["traces"].as_array() {
        let _ = writeln!(out, "traces:");
        for (k, t) in traces.iter().enumerate() {
            let _ = writeln!(
                out,
                "  {k}: outcome {} p={} fidelity={}",
                scalar(&t["outcome"]["outcome_index"]),
                scalar(&t["probability"]),
                scalar(&t["fidelity"])
            );
        }
    }
    out
}

const SWEEP_COLUMNS: [&str; 6] = [
    "a",
    "b",
    "perfect",
    "max_unitary_residual",
    "max_zero_residual",
    "canonical_residual",
];

/// Summary block followed by one row per grid point.
pub fn render_sweep(r: &Value) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "sweep: form {} grid {} random_phases {} seed {}",
        scalar(&r["family"]),
        scalar(&r["grid"]),
        scalar(&r["random_phases"]),
        scalar(&r["seed"])
    );
    if let Some(summary) = r["summary"].as_object() {
        for (k, v) in summary {
            let _ = writeln!(out, "summary.{k} = {}", scalar(v));
        }
    }
    let _ = writeln!(out, "{}", SWEEP_COLUMNS.join("\t"));
    for p in r["points"].as_array().into_iter().flatten() {
        let row: Vec<String> = SWEEP_COLUMNS.iter().map(|c| scalar(&p[*c])).collect();
        let _ = writeln!(out, "{}", row.join("\t"));
    }
    out
}
