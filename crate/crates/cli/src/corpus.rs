//! Corpus sweeps over all short twist words of one genus.
//!
//! Words are listed in shortlex order over the tokens `a A b B …`, one pair
//! per alphabet letter in alphabet order. When there are more words than
//! `limit`, a seeded uniform sample of `limit` of them is taken instead,
//! still in shortlex order.
//!
//! The CSV never contains timings, so two runs with the same header are
//! byte-identical whatever `--jobs` is.

use crate::error::CliError;
use crate::pipeline::{self, Outcome};
use crate::report::{ranks_field, version, witness_field, Bound, Config};
use openbook_hfk_core::floer::{self, Options};
use openbook_hfk_core::openbook::OpenBook;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;

pub const DEFAULT_LIMIT: usize = 2000;

/// Frozen CSV column order.
pub const COLUMNS: [&str; 13] = [
    "genus",
    "word",
    "status",
    "generators",
    "ranks",
    "total_rank",
    "rank_g_minus_1",
    "bottom_level_rank",
    "hf_rank",
    "contact_nonzero",
    "b",
    "rv_witness",
    "lspace",
];

#[derive(Clone, Debug)]
pub struct CorpusConfig {
    pub genus: usize,
    pub max_word_len: usize,
    pub limit: usize,
    pub seed: u64,
    pub opt: Options,
    pub jobs: usize,
}

/// Tokens of the standard alphabet: each letter then its inverse.
pub fn tokens(genus: usize) -> Result<Vec<String>, CliError> {
    let ob = OpenBook::new(genus, "")?;
    Ok(ob
        .alphabet
        .letters
        .iter()
        .flat_map(|l| [l.name.clone(), l.name.to_uppercase()])
        .collect())
}

fn count_upto(t: u128, n: usize) -> Option<u128> {
    let mut total: u128 = 0;
    let mut p: u128 = 1;
    for _ in 0..=n {
        total = total.checked_add(p)?;
        p = p.checked_mul(t)?;
    }
    Some(total)
}

/// The `i`-th word in shortlex order.
fn nth_word(tokens: &[String], mut i: u128) -> String {
    let t = tokens.len() as u128;
    let mut len = 0u32;
    let mut block: u128 = 1;
    while i >= block {
        i -= block;
        len += 1;
        block *= t;
    }
    let mut digits = vec![0usize; len as usize];
    for d in digits.iter_mut().rev() {
        *d = (i % t) as usize;
        i /= t;
    }
    digits.iter().map(|&d| tokens[d].as_str()).collect()
}

/// Words of the corpus, in shortlex order.
pub fn words(genus: usize, max_len: usize, limit: usize, seed: u64) -> Result<Vec<String>, CliError> {
    let toks = tokens(genus)?;
    let total = count_upto(toks.len() as u128, max_len)
        .filter(|&n| n <= usize::MAX as u128)
        .ok_or_else(|| CliError::Parse(format!("too many words up to length {max_len}")))?
        as usize;
    if total <= limit {
        return Ok((0..total).map(|i| nth_word(&toks, i as u128)).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = rand::seq::index::sample(&mut rng, total, limit).into_vec();
    picks.sort_unstable();
    Ok(picks.into_iter().map(|i| nth_word(&toks, i as u128)).collect())
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Row {
    pub genus: usize,
    pub word: String,
    pub status: String,
    pub generators: Option<usize>,
    pub ranks: String,
    pub total_rank: Option<usize>,
    pub rank_g_minus_1: Option<usize>,
    pub bottom_level_rank: Option<usize>,
    pub hf_rank: Option<usize>,
    pub contact_nonzero: Option<bool>,
    pub b: String,
    pub rv_witness: String,
    pub lspace: Option<bool>,
}

impl Row {
    fn from_result(genus: usize, word: &str, r: &Result<Outcome, CliError>) -> Row {
        match r {
            Ok(o) => {
                let a = &o.analysis;
                Row {
                    genus,
                    word: o.word.clone(),
                    status: if o.structural_ok() { "ok" } else { "check_failed" }.into(),
                    generators: Some(o.generators),
                    ranks: ranks_field(&a.ranks),
                    total_rank: Some(a.total_rank),
                    rank_g_minus_1: Some(o.rank_g_minus_1()),
                    bottom_level_rank: Some(o.bottom_level_rank()),
                    hf_rank: Some(a.hf_rank),
                    contact_nonzero: Some(a.contact_nonzero()),
                    b: Bound(a.b()).to_string(),
                    rv_witness: witness_field(&o.rv_witness),
                    lspace: Some(floer::lspace_constraint_check(a)),
                }
            }
            Err(e) => Row {
                genus,
                word: word.into(),
                status: e.status(),
                generators: None,
                ranks: String::new(),
                total_rank: None,
                rank_g_minus_1: None,
                bottom_level_rank: None,
                hf_rank: None,
                contact_nonzero: None,
                b: String::new(),
                rv_witness: String::new(),
                lspace: None,
            },
        }
    }
}

pub struct CorpusRun {
    pub words: Vec<String>,
    pub results: Vec<Result<Outcome, CliError>>,
    pub rows: Vec<Row>,
}

impl CorpusRun {
    pub fn status_counts(&self) -> BTreeMap<String, usize> {
        let mut m = BTreeMap::new();
        for r in &self.rows {
            *m.entry(r.status.clone()).or_insert(0) += 1;
        }
        m
    }

    pub fn outcomes(&self) -> impl Iterator<Item = &Outcome> {
        self.results.iter().filter_map(|r| r.as_ref().ok())
    }
}

/// Runs the pipeline on each word with `jobs` threads, 0 meaning all cores.
pub fn evaluate(genus: usize, words: &[String], opt: &Options, jobs: usize) -> Result<Vec<Result<Outcome, CliError>>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Invariant(e.to_string()))?;
    Ok(pool.install(|| {
        words
            .par_iter()
            .map(|w| OpenBook::new(genus, w).map_err(CliError::from).and_then(|ob| pipeline::run(&ob, opt)))
            .collect()
    }))
}

pub fn run(cfg: &CorpusConfig) -> Result<CorpusRun, CliError> {
    let words = words(cfg.genus, cfg.max_word_len, cfg.limit, cfg.seed)?;
    let results = evaluate(cfg.genus, &words, &cfg.opt, cfg.jobs)?;
    let rows = words.iter().zip(&results).map(|(w, r)| Row::from_result(cfg.genus, w, r)).collect();
    Ok(CorpusRun { words, results, rows })
}

pub fn config_of(cfg: &CorpusConfig) -> Config {
    Config {
        cap: cfg.opt.cap,
        max_moves: cfg.opt.max_moves,
        rv_bound: pipeline::RV_BOUND,
        crosscheck_limit: pipeline::CROSSCHECK_LIMIT,
    }
}

/// Writes the CSV: one `#` comment line with the settings, the header, then
/// one row per word.
pub fn write_csv<W: Write>(cfg: &CorpusConfig, rows: &[Row], mut out: W) -> Result<(), CliError> {
    let header = serde_json::json!({
        "genus": cfg.genus,
        "max_word_len": cfg.max_word_len,
        "limit": cfg.limit,
        "seed": cfg.seed,
        "config": config_of(cfg),
        "version": version(),
    });
    writeln!(out, "# {header}")?;
    let mut w = csv::WriterBuilder::new().has_headers(true).from_writer(out);
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::Io(io),
        other => CliError::Invariant(format!("{other:?}")),
    }
}

pub fn to_csv_bytes(cfg: &CorpusConfig, rows: &[Row]) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    write_csv(cfg, rows, &mut buf)?;
    Ok(buf)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortlex_order_for_genus_one() {
        let w = words(1, 2, 100, 0).unwrap();
        assert_eq!(w.len(), 1 + 4 + 16);
        assert_eq!(&w[..6], ["", "x", "X", "y", "Y", "xx"]);
        assert_eq!(w.last().unwrap(), "YY");
    }

    #[test]
    fn sampling_is_seeded_and_sorted() {
        let a = words(1, 6, 50, 7).unwrap();
        let b = words(1, 6, 50, 7).unwrap();
        let c = words(1, 6, 50, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 50);
        assert!(a.windows(2).all(|p| p[0].len() <= p[1].len()));
    }

    #[test]
    fn header_matches_frozen_columns() {
        let cfg = CorpusConfig { genus: 1, max_word_len: 0, limit: 10, seed: 0, opt: Options::default(), jobs: 1 };
        let run = run(&cfg).unwrap();
        let text = String::from_utf8(to_csv_bytes(&cfg, &run.rows).unwrap()).unwrap();
        let line = text.lines().nth(1).unwrap();
        assert_eq!(line, COLUMNS.join(","));
    }
}
