//! Exhaustive Galois group census over the box `[-H, H]^n` of monic cubics
//! (`n = 3`) or quartics (`n = 4`).
//!
//! Work is split into stripes by the `X^{n-1}` coefficient `a`. The
//! substitution `X -> -X` maps `(a, b, c, d)` to `(-a, b, -c, d)` without
//! changing the splitting field, so only stripes with `a >= 0` are run; the
//! `a = 0` stripe is counted once and every other stripe twice.
//!
//! Two strategies are available:
//!
//! * `direct` (default): per-`(a, b)` sweeps that find every reducible
//!   polynomial and every cubic-resolvent root by solving for the remaining
//!   coefficients, then classify what is left from the discriminant.
//! * `table`: a global one-bit-per-polynomial irreducibility table built by
//!   marking all products of lower-degree factors, followed by per-polynomial
//!   classification. Memory grows like `H^n`, so it is capped.

mod journal;
mod kernel;
mod table;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::GaloisClass;

pub use journal::Journal;
pub use kernel::{resolvent_root_bound, CUBIC_KERNEL_MAX_HEIGHT, QUARTIC_KERNEL_MAX_HEIGHT};
pub use table::{build_irreducible_table, IrreducibleTable};

/// Default cap on the irreducibility table (2 GiB).
pub const DEFAULT_TABLE_CAP_BYTES: u64 = 2 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Direct,
    Table,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Direct => "direct",
            Strategy::Table => "table",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Strategy::Direct),
            "table" => Ok(Strategy::Table),
            other => Err(Error::InvalidInput(format!("unknown strategy {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::InvalidInput(format!("unknown format {other:?}"))),
        }
    }
}

/// Where a finished report should be written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Emit {
    pub path: Option<PathBuf>,
    pub format: OutputFormat,
}

#[derive(Clone, Debug)]
pub struct CensusRequest {
    pub degree: u32,
    pub height: u32,
    pub strategy: Strategy,
    /// Worker threads; 0 uses every available core.
    pub workers: usize,
    pub table_cap_bytes: u64,
    /// Stripe journal for resuming interrupted runs.
    pub journal: Option<PathBuf>,
    /// Print per-stripe progress to stderr.
    pub progress: bool,
    pub emit: Emit,
}

impl CensusRequest {
    pub fn new(degree: u32, height: u32) -> Self {
        CensusRequest {
            degree,
            height,
            strategy: Strategy::Direct,
            workers: 0,
            table_cap_bytes: DEFAULT_TABLE_CAP_BYTES,
            journal: None,
            progress: false,
            emit: Emit { path: None, format: OutputFormat::Json },
        }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_journal(mut self, path: impl Into<PathBuf>) -> Self {
        self.journal = Some(path.into());
        self
    }

    fn validate(&self) -> Result<&'static [GaloisClass]> {
        let classes = GaloisClass::for_degree(self.degree)?;
        if self.height as i128 > crate::arith::INPUT_BOUND {
            return Err(Error::InvalidInput(format!(
                "height {} exceeds the input bound",
                self.height
            )));
        }
        Ok(classes)
    }

    /// Number of polynomials in the box.
    pub fn box_size(&self) -> u64 {
        (2 * self.height as u64 + 1).pow(self.degree)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub degree: u32,
    pub height: u32,
    pub strategy: Strategy,
    pub counts: BTreeMap<GaloisClass, u64>,
    pub total: u64,
    pub wall_time_s: f64,
    /// FNV-1a of the parameters that determine the counts.
    pub params_checksum: String,
}

impl CensusReport {
    pub fn count(&self, class: GaloisClass) -> u64 {
        self.counts.get(&class).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,height,strategy,class,count\n");
        for (class, n) in &self.counts {
            out.push_str(&format!("{},{},{},{class},{n}\n", self.degree, self.height, self.strategy.name()));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "degree {} height {} ({} strategy, {:.3} s)\n",
            self.degree,
            self.height,
            self.strategy.name(),
            self.wall_time_s
        );
        for (class, n) in &self.counts {
            out.push_str(&format!("{:>10} {n}\n", class.name()));
        }
        out.push_str(&format!("{:>10} {}\n", "total", self.total));
        out
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        Ok(match format {
            OutputFormat::Json => self.to_json()?,
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Text => self.to_text(),
        })
    }
}

pub(crate) fn params_checksum(degree: u32, height: u32) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in format!("degree={degree};box=[-{height},{height}]").bytes() {
        h ^= byte as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    format!("{h:016x}")
}

/// Raw (unweighted) class counts for one stripe, in `GaloisClass::for_degree` order.
pub(crate) type StripeCounts = [u64; 6];

pub fn run_census(req: &CensusRequest) -> Result<CensusReport> {
    let classes = req.validate()?;
    let start = Instant::now();

    let table = match req.strategy {
        Strategy::Table => Some(build_irreducible_table(req.degree, req.height, req.table_cap_bytes)?),
        Strategy::Direct => None,
    };

    let h = req.height as i64;
    let mut journal = match &req.journal {
        Some(path) => Some(Journal::open(path, req.degree, req.height, req.strategy)?),
        None => None,
    };
    let mut done: BTreeMap<i64, StripeCounts> =
        journal.as_ref().map(|j| j.completed().clone()).unwrap_or_default();
    let pending: Vec<i64> = (0..=h).filter(|a| !done.contains_key(a)).collect();
    let journal_lock = journal.as_mut().map(std::sync::Mutex::new);

    let run_stripe = |a: i64| -> Result<(i64, StripeCounts)> {
        let counts = match &table {
            Some(t) => table::stripe(t, a)?,
            None => kernel::stripe(req.degree, a, h)?,
        };
        if let Some(lock) = &journal_lock {
            lock.lock().expect("journal lock poisoned").record(a, &counts)?;
        }
        if req.progress {
            eprintln!("census: degree {} height {} stripe a={a} done", req.degree, req.height);
        }
        Ok((a, counts))
    };

    let results: Vec<Result<(i64, StripeCounts)>> = if req.workers == 1 {
        pending.iter().map(|&a| run_stripe(a)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(req.workers)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
        pool.install(|| pending.par_iter().map(|&a| run_stripe(a)).collect())
    };
    for r in results {
        let (a, counts) = r?;
        done.insert(a, counts);
    }

    let mut totals = [0u64; 6];
    for (&a, counts) in &done {
        let weight = if a == 0 { 1 } else { 2 };
        for (t, c) in totals.iter_mut().zip(counts) {
            *t += weight * c;
        }
    }
    let counts: BTreeMap<GaloisClass, u64> =
        classes.iter().zip(totals).map(|(&class, n)| (class, n)).collect();
    let total = counts.values().sum();
    debug_assert_eq!(total, req.box_size());

    Ok(CensusReport {
        degree: req.degree,
        height: req.height,
        strategy: req.strategy,
        counts,
        total,
        wall_time_s: start.elapsed().as_secs_f64(),
        params_checksum: params_checksum(req.degree, req.height),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_height_one() {
        let r = run_census(&CensusRequest::new(3, 1)).unwrap();
        assert_eq!(r.count(GaloisClass::Reducible), 15);
        assert_eq!(r.count(GaloisClass::S3), 12);
        assert_eq!(r.count(GaloisClass::A3), 0);
        assert_eq!(r.total, 27);
    }

    #[test]
    fn quartic_height_zero() {
        for strategy in [Strategy::Direct, Strategy::Table] {
            let r = run_census(&CensusRequest::new(4, 0).with_strategy(strategy)).unwrap();
            assert_eq!(r.count(GaloisClass::Reducible), 1);
            assert_eq!(r.total, 1);
        }
    }

    #[test]
    fn rejects_bad_degree() {
        assert!(matches!(
            run_census(&CensusRequest::new(5, 3)),
            Err(Error::UnsupportedDegree(5))
        ));
    }

    #[test]
    fn csv_and_json_shapes() {
        let r = run_census(&CensusRequest::new(3, 1)).unwrap();
        assert_eq!(
            r.to_csv(),
            "degree,height,strategy,class,count\n3,1,direct,Reducible,15\n3,1,direct,S3,12\n3,1,direct,A3,0\n"
        );
        let json = r.to_json().unwrap();
        assert!(json.starts_with(r#"{"degree":3,"height":1,"strategy":"direct","counts":{"Reducible":15,"S3":12,"A3":0},"total":27,"#));
    }

    #[test]
    fn checksum_ignores_strategy() {
        assert_eq!(params_checksum(4, 12), params_checksum(4, 12));
        assert_ne!(params_checksum(4, 12), params_checksum(4, 13));
        assert_ne!(params_checksum(3, 12), params_checksum(4, 12));
    }
}
