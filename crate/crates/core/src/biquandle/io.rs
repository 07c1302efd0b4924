//! Biquandle files: JSON `{ "m": .., "circ": [[..]], "star": [[..]] }` or a
//! plain text form with the two `m x m` matrices separated by a blank line.

use serde::{Deserialize, Serialize};

use super::{verify_axioms, AxiomReport, Biquandle};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiquandleFile {
    pub m: usize,
    pub circ: Vec<Vec<usize>>,
    pub star: Vec<Vec<usize>>,
}

impl BiquandleFile {
    pub fn parse(text: &str) -> Result<BiquandleFile> {
        let t = text.trim_start();
        if t.starts_with('{') {
            let f: BiquandleFile = serde_json::from_str(t)?;
            return Ok(f);
        }
        parse_plain(text)
    }

    pub fn from_biquandle(b: &Biquandle) -> BiquandleFile {
        BiquandleFile { m: b.m(), circ: b.circ_rows(), star: b.star_rows() }
    }

    pub fn report(&self) -> Result<AxiomReport> {
        verify_axioms(self.m, &self.circ, &self.star)
    }

    pub fn build(&self) -> Result<Biquandle> {
        if self.circ.len() != self.m {
            return Err(Error::MalformedTable(format!("circ has {} rows, expected {}", self.circ.len(), self.m)));
        }
        Biquandle::new(self.circ.clone(), self.star.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn parse_plain(text: &str) -> Result<BiquandleFile> {
    let mut blocks: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        let lower = line.to_ascii_lowercase();
        if line.is_empty() || lower.starts_with("circ") || lower.starts_with("star") {
            if !blocks.last().unwrap().is_empty() {
                blocks.push(Vec::new());
            }
            continue;
        }
        let row: std::result::Result<Vec<usize>, _> =
            line.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).map(str::parse).collect();
        let row = row.map_err(|_| Error::MalformedTable(format!("bad row `{line}`")))?;
        blocks.last_mut().unwrap().push(row);
    }
    blocks.retain(|b| !b.is_empty());
    if blocks.len() != 2 {
        return Err(Error::MalformedTable(format!("expected two matrices, found {}", blocks.len())));
    }
    let star = blocks.pop().unwrap();
    let circ = blocks.pop().unwrap();
    Ok(BiquandleFile { m: circ.len(), circ, star })
}
