use crate::pipeline::{Checks, Outcome, Timings, Witness};
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;

pub const SCHEMA: u32 = 1;

/// Hash of the crate sources, fixed at build time.
pub const SOURCE_HASH: &str = env!("OPENBOOK_HFK_SOURCE_HASH");

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Version {
    #[serde(rename = "crate")]
    pub krate: &'static str,
    pub hash: &'static str,
}

pub fn version() -> Version {
    Version { krate: env!("CARGO_PKG_VERSION"), hash: SOURCE_HASH }
}

/// Settings that influence results, echoed into every output.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Config {
    pub cap: u64,
    pub max_moves: usize,
    pub rv_bound: usize,
    pub crosscheck_limit: usize,
}

/// `b` is a count or infinity; JSON has no infinity, so it is a string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bound(pub Option<usize>);

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Some(n) => s.serialize_u64(n as u64),
            None => s.serialize_str("infinity"),
        }
    }
}

impl std::fmt::Display for Bound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.0 {
            Some(n) => write!(f, "{n}"),
            None => f.write_str("infinity"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub genus: usize,
    pub word: String,
    pub ranks: BTreeMap<i32, usize>,
    pub total_rank: usize,
    pub contact_nonzero: bool,
    pub b: Bound,
    pub rv_witness: Option<Witness>,
    pub hf_rank: usize,
    pub level_ranks: BTreeMap<i32, usize>,
    pub generators: usize,
    pub differentials: usize,
    pub fingers: usize,
    pub checks: Checks,
    pub timings: Timings,
    pub config: Config,
    pub seed: u64,
    pub version: Version,
}

impl Report {
    pub fn new(o: &Outcome, config: Config, seed: u64) -> Report {
        let a = &o.analysis;
        Report {
            schema: SCHEMA,
            genus: o.genus,
            word: o.word.clone(),
            ranks: a.ranks.clone(),
            total_rank: a.total_rank,
            contact_nonzero: a.contact_nonzero(),
            b: Bound(a.b()),
            rv_witness: o.rv_witness.clone(),
            hf_rank: a.hf_rank,
            level_ranks: a.level_ranks.clone(),
            generators: o.generators,
            differentials: o.edges,
            fingers: o.fingers,
            checks: o.checks.clone(),
            timings: o.timings.clone(),
            config,
            seed,
            version: version(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// `k:r` pairs joined by `;`, lowest grading first.
pub fn ranks_field(ranks: &BTreeMap<i32, usize>) -> String {
    ranks.iter().map(|(k, r)| format!("{k}:{r}")).collect::<Vec<_>>().join(";")
}

/// `start:crossings:end@endpoint`, empty when there is no witness.
pub fn witness_field(w: &Option<Witness>) -> String {
    match w {
        None => String::new(),
        Some(w) => {
            let arc: Vec<String> = w.arc.iter().map(|x| x.to_string()).collect();
            format!("{}:{}:{}@{}", w.feet[0], arc.join(" "), w.feet[1], w.endpoint)
        }
    }
}
