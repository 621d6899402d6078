//! Run configuration: defaults, a plain `key = value` file, and flags on top.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::Args;
use parabolic_o::liedata::LieType;
use parabolic_o::weights::{ParabolicSpec, WeightSpec, DEFAULT_DEPTH};
use parabolic_o::{Error, RootDatum, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Flags shared by every subcommand.
#[derive(Args, Clone, Debug, Default)]
pub struct CommonArgs {
    /// Key-value config file (`key = value` per line, `#` comments); flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Lie type: a, b, c or d.
    #[arg(long = "type", global = true)]
    pub lie_type: Option<String>,
    /// Head size m >= 1.
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Tail rank n >= 1.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Inclusive rank range `lo..hi`; sweeps over n (the target rank for `stability`).
    #[arg(long = "n-range", global = true)]
    pub n_range: Option<String>,
    /// Lower rank for `stability`; defaults to the smallest rank holding the weight.
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Anchor weight, e.g. `head:[0] tail:[2,1] d:0`.
    #[arg(long, global = true)]
    pub weight: Option<String>,
    /// Parabolic Y: `standard`, `tail`, or head-root labels such as `alpha_-2,-eps`.
    #[arg(long, global = true)]
    pub y: Option<String>,
    /// Simple-root height window for characters.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Random samples for the cocycle and iota checks of `realize`.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Seed for `realize` sampling.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

/// Validated configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub lie_type: LieType,
    pub m: usize,
    pub ranks: Vec<usize>,
    pub k: Option<usize>,
    pub weight: WeightSpec,
    pub y: String,
    pub depth: usize,
    pub samples: usize,
    pub seed: u64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
}

fn usage(key: &str, msg: impl Into<String>) -> Error {
    Error::Parse { key: key.into(), msg: msg.into() }
}

pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| usage("config", format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, Error> {
    let mut out = BTreeMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| usage("config", format!("line {}: expected key = value", no + 1)))?;
        out.insert(k.trim().replace('-', "_"), v.trim().to_string());
    }
    Ok(out)
}

fn parse_range(s: &str) -> Result<(usize, usize), Error> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| usage("n-range", format!("expected lo..hi, got `{s}`")))?;
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| usage("n-range", format!("bad bound `{x}`")));
    let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
    if lo == 0 || lo > hi {
        return Err(usage("n-range", format!("empty or zero range {lo}..{hi}")));
    }
    Ok((lo, hi))
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<Self, Error> {
        let file = match &args.config {
            Some(p) => read_config_file(p)?,
            None => BTreeMap::new(),
        };
        const KEYS: [&str; 13] =
            ["type", "m", "n", "n_range", "k", "weight", "y", "depth", "samples", "seed", "format", "output", "threads"];
        if let Some(bad) = file.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(usage(bad, "unknown config key"));
        }
        let pick = |flag: Option<String>, key: &str| flag.or_else(|| file.get(key).cloned());
        let num = |flag: Option<usize>, key: &str| -> Result<Option<usize>, Error> {
            match flag {
                Some(v) => Ok(Some(v)),
                None => file.get(key).map(|v| v.parse().map_err(|_| usage(key, format!("expected an integer, got `{v}`")))).transpose(),
            }
        };

        let weight_text = pick(args.weight.clone(), "weight").unwrap_or_default();
        let weight = WeightSpec::parse(&weight_text)?;
        let lie_type = match pick(args.lie_type.clone(), "type") {
            Some(t) => t.parse()?,
            None => weight.lie_type.unwrap_or(LieType::A),
        };
        let m = num(args.m, "m")?.or(weight.m).unwrap_or(1);
        let n = num(args.n, "n")?.or(weight.n);
        let ranks = match pick(args.n_range.clone(), "n_range") {
            Some(r) => {
                let (lo, hi) = parse_range(&r)?;
                (lo..=hi).collect()
            }
            None => vec![n.unwrap_or_else(|| weight.tail.len().max(1))],
        };
        let format = match args.format {
            Some(f) => f,
            None => match file.get("format").map(String::as_str) {
                None | Some("json") => Format::Json,
                Some("csv") => Format::Csv,
                Some(other) => return Err(usage("format", format!("expected json or csv, got `{other}`"))),
            },
        };
        let seed = match args.seed {
            Some(s) => s,
            None => file.get("seed").map(|v| v.parse().map_err(|_| usage("seed", format!("bad seed `{v}`")))).transpose()?.unwrap_or(1),
        };
        let cfg = RunConfig {
            lie_type,
            m,
            ranks,
            k: num(args.k, "k")?,
            weight,
            y: pick(args.y.clone(), "y").unwrap_or_else(|| "standard".into()),
            depth: num(args.depth, "depth")?.unwrap_or(DEFAULT_DEPTH),
            samples: num(args.samples, "samples")?.unwrap_or(100),
            seed,
            format,
            output: args.output.clone().or_else(|| file.get("output").map(PathBuf::from)),
            threads: num(args.threads, "threads")?,
        };
        cfg.datum(cfg.ranks[0])?;
        Ok(cfg)
    }

    pub fn datum(&self, n: usize) -> Result<RootDatum, Error> {
        RootDatum::with_degenerate(self.lie_type, self.m, n)
    }

    pub fn parabolic(&self, datum: &RootDatum) -> Result<ParabolicSpec, Error> {
        ParabolicSpec::parse(datum, &self.y)
    }

    pub fn anchor(&self, n: usize) -> Result<Weight, Error> {
        self.weight.weight(self.m, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_values_yield_to_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "# sample\ntype = b\nm = 2\nn-range = 2..3\nweight = head:[0,0] tail:[1] d:0\n").unwrap();
        let args = CommonArgs { config: Some(path), m: Some(1), ..Default::default() };
        let cfg = RunConfig::resolve(&args).unwrap();
        assert_eq!(cfg.lie_type, LieType::B);
        assert_eq!(cfg.m, 1);
        assert_eq!(cfg.ranks, vec![2, 3]);
        assert_eq!(cfg.depth, DEFAULT_DEPTH);
    }

    #[test]
    fn bad_inputs_name_their_key() {
        let e = parse_config("type b").unwrap_err();
        assert!(matches!(e, Error::Parse { ref key, .. } if key == "config"));
        let args = CommonArgs { n_range: Some("4..2".into()), ..Default::default() };
        assert!(matches!(RunConfig::resolve(&args), Err(Error::Parse { ref key, .. }) if key == "n-range"));
        let args = CommonArgs { weight: Some("head:[0] tial:[1]".into()), ..Default::default() };
        assert!(matches!(RunConfig::resolve(&args), Err(Error::Parse { ref key, .. }) if key == "tial"));
    }

    #[test]
    fn weight_spec_supplies_shape() {
        let args = CommonArgs { weight: Some("type:c m:2 n:3 head:[-1,-1] tail:[1] d:4".into()), ..Default::default() };
        let cfg = RunConfig::resolve(&args).unwrap();
        assert_eq!((cfg.lie_type, cfg.m, cfg.ranks.clone()), (LieType::C, 2, vec![3]));
    }
}
