use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problems::ProblemSlice;
use crate::string::Alphabet;
use crate::universe::{Slice, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordList {
    /// Only `"all"` is accepted.
    All(String),
    Words(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionDescriptor {
    pub solution: String,
    pub words: Vec<String>,
}

/// Table-driven problem:
///
/// ```json
/// {"alphabet": ["0","1"], "length": 2, "e": "all", "f": ["11"],
///  "regions": [{"solution": "y1", "words": ["11"]}]}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemDescriptor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub alphabet: Alphabet,
    pub length: usize,
    pub e: WordList,
    pub f: Vec<String>,
    pub regions: Vec<RegionDescriptor>,
}

impl ProblemDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn parse_words(texts: &[String], alphabet: &Alphabet, length: usize, what: &str) -> Result<BTreeSet<Word>> {
    texts
        .iter()
        .map(|t| {
            let w = Word::parse(t, alphabet)?;
            if w.len() != length {
                return Err(Error::Validation(format!(
                    "{what} word `{t}` does not have length {length}"
                )));
            }
            Ok(w)
        })
        .collect()
}

pub fn generic_problem(desc: &ProblemDescriptor) -> Result<ProblemSlice> {
    let label = desc.label.clone().unwrap_or_else(|| "generic".into());
    let alphabet = desc.alphabet.clone();
    let slice = match &desc.e {
        WordList::All(k) if k == "all" => Slice::full(alphabet.clone(), desc.length)?,
        WordList::All(k) => {
            return Err(Error::Validation(format!("`e` must be \"all\" or a word list, got `{k}`")))
        }
        WordList::Words(words) => {
            let refs: Vec<&str> = words.iter().map(String::as_str).collect();
            Slice::from_words(alphabet.clone(), desc.length, "E", &refs)?
        }
    }
    .relabel(format!("{label}/E"));

    let f = parse_words(&desc.f, &alphabet, desc.length, "F")?;
    if let Some(w) = f.iter().find(|w| !slice.contains(w)) {
        return Err(Error::Validation(format!(
            "F word {} is not in E",
            w.render(&alphabet)
        )));
    }
    let mut regions = Vec::with_capacity(desc.regions.len());
    for r in &desc.regions {
        let words = parse_words(&r.words, &alphabet, desc.length, "region")?;
        if let Some(w) = words.iter().find(|w| !f.contains(*w)) {
            return Err(Error::Validation(format!(
                "region {} contains {} which is not in F",
                r.solution,
                w.render(&alphabet)
            )));
        }
        regions.push(words);
    }
    // word -> regions containing it
    let mut membership: BTreeMap<Word, Vec<usize>> = BTreeMap::new();
    for (i, words) in regions.iter().enumerate() {
        for w in words {
            membership.entry(w.clone()).or_default().push(i);
        }
    }
    if let Some(w) = f.iter().find(|w| !membership.contains_key(*w)) {
        return Err(Error::Validation(format!(
            "regions do not cover F: {} is missing",
            w.render(&alphabet)
        )));
    }
    let solutions = desc.regions.iter().map(|r| r.solution.clone()).collect();
    ProblemSlice::new(
        slice,
        label,
        move |x| f.contains(x),
        solutions,
        move |x, i| membership.get(x).is_some_and(|rs| rs.contains(&i)),
    )
}
