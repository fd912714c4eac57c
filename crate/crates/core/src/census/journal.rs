//! Append-only JSON-lines record of finished stripes.
//!
//! The first line identifies the run; each later line holds one stripe's raw
//! counts. A final line without its newline is discarded on reopen.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Strategy, StripeCounts};
use crate::error::{Error, Result};

const TAG: &str = "galois-census";

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct Header {
    journal: String,
    degree: u32,
    height: u32,
    strategy: Strategy,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    a: i64,
    counts: StripeCounts,
}

pub struct Journal {
    file: File,
    completed: BTreeMap<i64, StripeCounts>,
}

impl Journal {
    /// Opens or creates the journal at `path`. An existing journal must
    /// belong to the same degree, height and strategy.
    pub fn open(path: &Path, degree: u32, height: u32, strategy: Strategy) -> Result<Self> {
        let header = Header { journal: TAG.into(), degree, height, strategy };
        let mut completed = BTreeMap::new();
        let text = if path.exists() { std::fs::read_to_string(path)? } else { String::new() };
        let mut keep = 0usize;
        if text.is_empty() {
            let mut file = File::create(path)?;
            writeln!(file, "{}", serde_json::to_string(&header)?)?;
            file.sync_data()?;
        } else {
            let mut offset = 0usize;
            for (k, raw) in text.split_inclusive('\n').enumerate() {
                let torn = !raw.ends_with('\n');
                let line = raw.trim_end();
                offset += raw.len();
                if k == 0 {
                    let found: Header = serde_json::from_str(line)
                        .map_err(|e| Error::JournalMismatch(format!("unreadable header: {e}")))?;
                    if found != header {
                        return Err(Error::JournalMismatch(format!(
                            "journal is for degree {} height {} ({}), run is degree {degree} height {height} ({})",
                            found.degree,
                            found.height,
                            found.strategy.name(),
                            strategy.name()
                        )));
                    }
                } else if torn {
                    break;
                } else {
                    let e: Entry = serde_json::from_str(line)
                        .map_err(|e| Error::JournalMismatch(format!("line {}: {e}", k + 1)))?;
                    if !(0..=height as i64).contains(&e.a) {
                        return Err(Error::JournalMismatch(format!("stripe a={} out of range", e.a)));
                    }
                    completed.insert(e.a, e.counts);
                }
                keep = offset;
            }
            if keep == 0 {
                return Err(Error::JournalMismatch("header line is incomplete".into()));
            }
        }
        let file = OpenOptions::new().append(true).open(path)?;
        if keep > 0 {
            // drop a torn final line
            file.set_len(keep as u64)?;
        }
        Ok(Journal { file, completed })
    }

    pub fn completed(&self) -> &BTreeMap<i64, StripeCounts> {
        &self.completed
    }

    pub fn record(&mut self, a: i64, counts: &StripeCounts) -> Result<()> {
        let line = serde_json::to_string(&Entry { a, counts: *counts })?;
        writeln!(self.file, "{line}")?;
        self.file.sync_data()?;
        self.completed.insert(a, *counts);
        Ok(())
    }
}
