//! Append-only JSON-lines cache of traces of Frobenius.
//!
//! One record per (field, curve, prime ideal). Records from other schema
//! versions are ignored. A torn final line, left by an interrupted write, is
//! dropped; malformed lines elsewhere, or two records disagreeing about the
//! same ideal, make the cache unusable.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use isosieve_core::criteria::TraceSource;
use isosieve_core::ellcurve::{CurveModel, FrobeniusData};
use isosieve_core::numfield::{NumberField, PrimeIdealData};
use isosieve_core::{Error, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const CACHE_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub schema: u32,
    pub field: String,
    pub curve: String,
    pub ell: u64,
    /// Local generator, constant term first.
    pub gen: Vec<String>,
    pub e: usize,
    pub trace: String,
}

type Key = (String, String, u64, Vec<String>, usize);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub verified: u64,
}

pub struct TraceCache {
    path: Option<PathBuf>,
    entries: Mutex<HashMap<Key, BigInt>>,
    writer: Mutex<Option<File>>,
    verify: bool,
    stats: Mutex<CacheStats>,
}

fn digest(text: &str) -> String {
    hex::encode(&Sha256::digest(text.as_bytes())[..16])
}

pub fn field_hash(k: &NumberField) -> String {
    let coeffs: Vec<String> = k.defining_poly().coeffs().iter().map(ToString::to_string).collect();
    digest(&coeffs.join(","))
}

pub fn curve_hash(curve: &CurveModel) -> String {
    let parts: Vec<String> = curve
        .coefficients()
        .iter()
        .map(|a| {
            let num: Vec<String> = a.numerator().coeffs().iter().map(ToString::to_string).collect();
            format!("{}/{}", num.join(","), a.denominator())
        })
        .collect();
    digest(&format!("{}|{}", field_hash(curve.field()), parts.join(";")))
}

fn key(curve: &CurveModel, q: &PrimeIdealData) -> Key {
    (
        field_hash(curve.field()),
        curve_hash(curve),
        q.ell,
        q.local_gen.coeffs().iter().map(ToString::to_string).collect(),
        q.ramification,
    )
}

impl TraceCache {
    /// A cache that lives only as long as the process.
    pub fn in_memory(verify: bool) -> Self {
        TraceCache {
            path: None,
            entries: Mutex::new(HashMap::new()),
            writer: Mutex::new(None),
            verify,
            stats: Mutex::new(CacheStats::default()),
        }
    }

    /// Loads `path` if it exists and appends new records to it.
    pub fn open(path: &Path, verify: bool) -> std::result::Result<Self, CliError> {
        let bad = |message: String| CliError::Cache { path: path.to_path_buf(), message };
        let mut entries = HashMap::new();
        if path.exists() {
            let file = File::open(path).map_err(|e| bad(e.to_string()))?;
            let lines: Vec<String> = BufReader::new(file)
                .lines()
                .collect::<std::io::Result<_>>()
                .map_err(|e| bad(e.to_string()))?;
            let last = lines.len();
            for (i, line) in lines.iter().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let record: CacheRecord = match serde_json::from_str(line) {
                    Ok(r) => r,
                    Err(_) if i + 1 == last => break,
                    Err(e) => return Err(bad(format!("line {}: {e}", i + 1))),
                };
                if record.schema != CACHE_SCHEMA {
                    continue;
                }
                let trace: BigInt = record
                    .trace
                    .parse()
                    .map_err(|_| bad(format!("line {}: trace {:?} is not an integer", i + 1, record.trace)))?;
                let k = (record.field, record.curve, record.ell, record.gen, record.e);
                if let Some(old) = entries.insert(k, trace.clone()) {
                    if old != trace {
                        return Err(bad(format!("line {}: conflicting traces {old} and {trace}", i + 1)));
                    }
                }
            }
        }
        let writer = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| bad(e.to_string()))?;
        Ok(TraceCache {
            path: Some(path.to_path_buf()),
            entries: Mutex::new(entries),
            writer: Mutex::new(Some(writer)),
            verify,
            stats: Mutex::new(CacheStats::default()),
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn stats(&self) -> CacheStats {
        *self.stats.lock().expect("stats lock")
    }

    fn bump(&self, f: impl FnOnce(&mut CacheStats)) {
        f(&mut self.stats.lock().expect("stats lock"));
    }

    fn append(&self, k: &Key, trace: &BigInt) -> Result<()> {
        let mut guard = self.writer.lock().expect("writer lock");
        let Some(file) = guard.as_mut() else { return Ok(()) };
        let record = CacheRecord {
            schema: CACHE_SCHEMA,
            field: k.0.clone(),
            curve: k.1.clone(),
            ell: k.2,
            gen: k.3.clone(),
            e: k.4,
            trace: trace.to_string(),
        };
        let mut line = serde_json::to_string(&record).expect("record serializes");
        line.push('\n');
        // A single write per record keeps lines whole.
        file.write_all(line.as_bytes())
            .map_err(|e| Error::Invalid(format!("cannot append to trace cache: {e}")))
    }
}

impl TraceSource for TraceCache {
    fn frobenius(&self, curve: &CurveModel, q: &PrimeIdealData) -> Result<FrobeniusData> {
        let k = key(curve, q);
        let cached = self.entries.lock().expect("cache lock").get(&k).cloned();
        if let Some(trace) = cached {
            self.bump(|s| s.hits += 1);
            if self.verify {
                let fresh = curve.trace_of_frobenius(q)?;
                if fresh.trace != trace {
                    return Err(Error::InternalInconsistency(format!(
                        "cached trace {trace} at {q} disagrees with recomputed {}",
                        fresh.trace
                    )));
                }
                self.bump(|s| s.verified += 1);
            }
            return FrobeniusData::new(q.clone(), trace);
        }
        self.bump(|s| s.misses += 1);
        let fd = curve.trace_of_frobenius(q)?;
        let fresh_entry = self
            .entries
            .lock()
            .expect("cache lock")
            .insert(k.clone(), fd.trace.clone())
            .is_none();
        if fresh_entry {
            self.append(&k, &fd.trace)?;
        }
        Ok(fd)
    }
}
