//! Line-delimited JSON catalog of search results.

use crate::error::{Error, Result};
use crate::partitions::PartitionSpec;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::report::Report;
use chrono::{DateTime, Utc};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordKind {
    /// A concrete curve, round-trip verified.
    Concrete,
    /// A symbolic family: free variables and residual constraints.
    Family,
    Impossible,
    Stuck,
    /// The partition could not be processed.
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub kind: RecordKind,
    pub g: usize,
    pub n: usize,
    pub m: usize,
    pub partition: PartitionSpec,
    /// delta_0, ..., delta_{m-1}.
    pub degrees: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Poly>,
    /// Exact value for concrete curves, an expression otherwise.
    pub kappa: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub free: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub assignment: BTreeMap<String, String>,
    /// SHA-256 of the elimination trace JSON.
    pub trace: String,
    pub steps: usize,
    pub verification: Report,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub created: DateTime<Utc>,
}

impl CurveRecord {
    /// Hash of everything except the creation time.
    pub fn content_hash(&self) -> String {
        let mut v = serde_json::to_value(self).expect("serializable");
        if let Some(map) = v.as_object_mut() {
            map.remove("created");
        }
        hex(&Sha256::digest(v.to_string().as_bytes()))
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_line(s: &str) -> Result<CurveRecord> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn kappa_value(&self) -> Option<Rational> {
        crate::rational::parse_rational(&self.kappa).ok()
    }

    pub fn summary(&self) -> String {
        let kind = format!("{:?}", self.kind).to_uppercase();
        match (&self.f, &self.witness) {
            (Some(f), _) => format!("{kind} {} kappa={} f={f}", self.partition, self.kappa),
            (None, Some(w)) => format!("{kind} {} witness={w}", self.partition),
            _ if !self.constraints.is_empty() => {
                format!("{kind} {} free={} constraints={}", self.partition, self.free.join(","), self.constraints.join("; "))
            }
            _ => format!("{kind} {} free={}", self.partition, self.free.join(",")),
        }
    }
}

pub(crate) fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Order-independent digest of a set of records.
pub fn digest(records: &[CurveRecord]) -> String {
    let mut hashes: Vec<String> = records.iter().map(|r| r.content_hash()).collect();
    hashes.sort();
    hex(&Sha256::digest(hashes.join("\n").as_bytes()))
}

/// Append-only catalog file. Appends are serialized and skip records whose
/// content hash is already present.
pub struct Catalog {
    path: PathBuf,
    seen: Mutex<HashSet<String>>,
}

impl Catalog {
    pub fn open(path: impl AsRef<Path>) -> Result<Catalog> {
        let path = path.as_ref().to_path_buf();
        let mut seen = HashSet::new();
        if path.exists() {
            for rec in read_catalog(&path)? {
                seen.insert(rec.content_hash());
            }
        }
        Ok(Catalog { path, seen: Mutex::new(seen) })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Returns false when an identical record is already stored.
    pub fn append(&self, rec: &CurveRecord) -> Result<bool> {
        if !rec.verified {
            return Err(Error::UnverifiedRecord);
        }
        let hash = rec.content_hash();
        let mut seen = self.seen.lock().expect("catalog lock");
        if seen.contains(&hash) {
            return Ok(false);
        }
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        file.write_all(format!("{}\n", rec.to_line()).as_bytes())?;
        file.flush()?;
        seen.insert(hash);
        Ok(true)
    }
}

static OPEN: Lazy<Mutex<HashMap<PathBuf, Arc<Catalog>>>> = Lazy::new(Default::default);

/// Appends `rec` to the catalog at `path`, sharing one writer per path
/// within the process.
pub fn record_curve(rec: &CurveRecord, path: impl AsRef<Path>) -> Result<bool> {
    if !rec.verified {
        return Err(Error::UnverifiedRecord);
    }
    let key = if path.as_ref().is_absolute() {
        path.as_ref().to_path_buf()
    } else {
        std::env::current_dir()?.join(path.as_ref())
    };
    let cat = {
        let mut open = OPEN.lock().expect("registry lock");
        match open.get(&key) {
            Some(c) => c.clone(),
            None => {
                let c = Arc::new(Catalog::open(&key)?);
                open.insert(key, c.clone());
                c
            }
        }
    };
    cat.append(rec)
}

pub fn read_catalog(path: impl AsRef<Path>) -> Result<Vec<CurveRecord>> {
    let file = File::open(path)?;
    let mut out = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(CurveRecord::from_line(&line)?);
        }
    }
    Ok(out)
}
