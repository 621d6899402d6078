//! Versioned JSON envelope shared by every command.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::liedata::LieType;

const RESERVED: [&str; 6] = ["schema_version", "command", "config", "certificates", "pass", "timings"];

pub const SCHEMA_VERSION: u32 = 1;

/// The full configuration a report was produced from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    #[serde(rename = "type")]
    pub lie_type: LieType,
    pub m: usize,
    pub n: usize,
    pub lambda: Option<String>,
    pub y: Vec<String>,
    /// Command-specific settings such as `depth` or `n_range`.
    pub extra: BTreeMap<String, String>,
}

/// Wall-clock milliseconds per named phase.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings(BTreeMap<String, f64>);

impl Timings {
    pub fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        *self.0.entry(name.to_string()).or_default() += start.elapsed().as_secs_f64() * 1e3;
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: Config,
    /// Verdict of every certificate the command ran.
    pub certificates: BTreeMap<String, bool>,
    pub pass: bool,
    /// Command payload; its keys sit at the top level.
    #[serde(flatten)]
    pub body: BTreeMap<String, Value>,
    pub timings: Timings,
}

impl Report {
    pub fn new(command: &str, config: Config) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            config,
            certificates: BTreeMap::new(),
            pass: true,
            body: BTreeMap::new(),
            timings: Timings::default(),
        }
    }

    /// Adds a body entry. Panics on the keys the envelope already uses, since
    /// flattening would silently shadow them.
    pub fn insert(&mut self, key: &str, value: impl Serialize) {
        assert!(!RESERVED.contains(&key), "report key `{key}` is reserved");
        let v = serde_json::to_value(value).expect("report values serialize");
        self.body.insert(key.to_string(), v);
    }

    pub fn certify(&mut self, name: &str, ok: bool) {
        self.certificates.insert(name.to_string(), ok);
        self.pass &= ok;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Drops the `timings` object, leaving only reproducible content.
pub fn strip_timings(json: &str) -> Option<String> {
    let mut v: Value = serde_json::from_str(json).ok()?;
    v.as_object_mut()?.remove("timings");
    serde_json::to_string_pretty(&v).ok()
}
