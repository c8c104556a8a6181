//! Open-book input files.
//!
//! ```json
//! {"genus": 1, "word": "xY"}
//! {"genus": 1, "word": "aB", "alphabet": [{"name": "a", "curve": [1]}, {"name": "b", "curve": [2]}]}
//! ```
//!
//! A curve is a cyclic word in the reference arcs: `k` crosses arc `k`
//! positively and `-k` negatively, arcs numbered from 1.

use crate::error::CliError;
use openbook_hfk_core::openbook::OpenBook;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct OpenBookSpec {
    pub genus: usize,
    pub word: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<LetterSpec>>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LetterSpec {
    pub name: String,
    pub curve: Vec<i32>,
}

impl OpenBookSpec {
    pub fn parse(text: &str) -> Result<OpenBookSpec, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self) -> Result<OpenBook, CliError> {
        Ok(match &self.alphabet {
            None => OpenBook::new(self.genus, &self.word)?,
            Some(a) => {
                let entries: Vec<(String, Vec<i32>)> =
                    a.iter().map(|l| (l.name.clone(), l.curve.clone())).collect();
                OpenBook::with_alphabet(self.genus, &entries, &self.word)?
            }
        })
    }
}

/// Reads an open book from a file, or from standard input for `-`.
pub fn read(path: &str) -> Result<OpenBook, CliError> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(path)?
    };
    OpenBookSpec::parse(&text)?.build()
}
