//! JSON and CSV rendering of reports.

use parabolic_o::report::Report;
use serde_json::Value;

use crate::config::Format;

const MATRIX_KEYS: [&str; 4] = ["D", "C", "E", "ext_delta_simple"];

/// One JSON document: a single report, or an array for rank sweeps.
pub fn json(reports: &[Report]) -> String {
    let mut s = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        serde_json::to_string_pretty(reports).expect("reports serialize")
    };
    s.push('\n');
    s
}

/// Matrices as labelled tables followed by certificate rows.
pub fn csv(reports: &[Report]) -> String {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for r in reports {
        let n = r.config.n.to_string();
        let labels: Vec<String> = match r.body.get("block") {
            Some(Value::Array(v)) => v.iter().map(|x| x.as_str().unwrap_or_default().to_string()).collect(),
            _ => Vec::new(),
        };
        for key in MATRIX_KEYS {
            let Some(Value::Array(rows)) = r.body.get(key) else { continue };
            w.write_record(["matrix", key, "n", &n]).expect("in-memory write");
            let mut header = vec![String::new()];
            header.extend(labels.iter().cloned());
            w.write_record(&header).expect("in-memory write");
            for (i, row) in rows.iter().enumerate() {
                let mut rec = vec![labels.get(i).cloned().unwrap_or_default()];
                if let Value::Array(cells) = row {
                    rec.extend(cells.iter().map(|c| c.as_str().unwrap_or_default().to_string()));
                }
                w.write_record(&rec).expect("in-memory write");
            }
        }
        for (name, ok) in &r.certificates {
            w.write_record(["certificate", name, "n", &n, if *ok { "pass" } else { "fail" }]).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

pub fn render(reports: &[Report], format: Format) -> String {
    match format {
        Format::Json => json(reports),
        Format::Csv => csv(reports),
    }
}
