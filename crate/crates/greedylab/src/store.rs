//! On-disk result records.
//!
//! Every estimate can be frozen into a JSON record whose filename encodes
//! all inputs that determine the value: basis id, quantity, level, grid
//! resolution, budget, seed, and toolkit version. Reruns with identical
//! inputs map to the same file, so the store doubles as a cache: a hit
//! returns the stored record byte for byte. Witness coefficients are stored
//! as exact rational strings and the value as a shortest-round-trip float,
//! making exhaustive-mode records reproducible bit for bit; only the
//! timestamp inside the file records when the computation actually ran.

use crate::error::{Error, Result};
use crate::estimator::{Estimate, SearchOpts};
use crate::grid::Level;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "GREEDYLAB_CACHE_DIR";
/// Default cache directory, relative to the working directory.
pub const DEFAULT_CACHE_DIR: &str = ".greedylab-cache";

/// Resolves the cache directory: `$GREEDYLAB_CACHE_DIR` if set and
/// nonempty, else `./.greedylab-cache`.
pub fn cache_dir() -> PathBuf {
    match std::env::var_os(CACHE_DIR_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => PathBuf::from(DEFAULT_CACHE_DIR),
    }
}

/// Serialized witness: exact rational coefficient strings plus the index
/// set, on-set signs, and the optional scale/level attachments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub coeffs: Vec<String>,
    pub set: Vec<usize>,
    pub signs: Vec<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at_level: Option<String>,
}

/// One stored estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub basis_id: String,
    pub quantity: String,
    pub level: Option<String>,
    pub m: i64,
    pub budget: u64,
    pub seed: u64,
    pub value: f64,
    pub witness: WitnessRecord,
    pub mode: String,
    pub timestamp_unix_secs: u64,
    pub toolkit_version: String,
}

impl ResultRecord {
    /// Freezes an estimate, stamping the current time and crate version.
    pub fn from_estimate(basis_id: &str, e: &Estimate, opts: &SearchOpts) -> ResultRecord {
        let w = &e.witness;
        ResultRecord {
            basis_id: basis_id.to_string(),
            quantity: e.quantity.token().to_string(),
            level: e.level.map(|l| l.to_string()),
            m: e.m(),
            budget: opts.budget,
            seed: opts.seed,
            value: e.value,
            witness: WitnessRecord {
                coeffs: w.coeffs.entry_strings(),
                set: w.set.indices(),
                signs: w.signs.clone(),
                scale: w.scale.map(|s| crate::linalg::format_ratio(&s)),
                at_level: w.at_level.map(|l| l.to_string()),
            },
            mode: e.mode.label().to_string(),
            timestamp_unix_secs: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Deterministic record filename for an input combination.
pub fn record_filename(
    basis_id: &str,
    quantity: &str,
    level: Option<&Level>,
    mode_m: i64,
    opts: &SearchOpts,
) -> String {
    let level_part = match level {
        Some(l) => format!("{}-{}", l.numer(), l.denom()),
        None => "none".to_string(),
    };
    format!(
        "{basis_id}__{quantity}__{level_part}__m{mode_m}__b{}__s{}__v{}.json",
        opts.budget,
        opts.seed,
        env!("CARGO_PKG_VERSION")
    )
}

/// Reads a record if the file exists; `Ok(None)` when it does not.
pub fn load_record(dir: &Path, filename: &str) -> Result<Option<ResultRecord>> {
    let path = dir.join(filename);
    if !path.exists() {
        return Ok(None);
    }
    let source = std::fs::read_to_string(&path)?;
    let record = serde_json::from_str(&source).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        detail: e.to_string(),
    })?;
    Ok(Some(record))
}

/// Writes a record, creating the directory as needed.
pub fn store_record(dir: &Path, filename: &str, record: &ResultRecord) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(filename);
    let mut body = serde_json::to_string_pretty(record).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        detail: e.to_string(),
    })?;
    body.push('\n');
    std::fs::write(&path, body)?;
    Ok(())
}

/// Looks up a cached record, or computes one via `run` and stores it.
/// Returns the record and whether it came from the cache.
pub fn cached_estimate(
    dir: &Path,
    basis_id: &str,
    quantity: &str,
    level: Option<&Level>,
    mode_m: i64,
    opts: &SearchOpts,
    run: impl FnOnce() -> Result<Estimate>,
) -> Result<(ResultRecord, bool)> {
    let filename = record_filename(basis_id, quantity, level, mode_m, opts);
    if let Some(record) = load_record(dir, &filename)? {
        return Ok((record, true));
    }
    let estimate = run()?;
    let record = ResultRecord::from_estimate(basis_id, &estimate, opts);
    store_record(dir, &filename, &record)?;
    Ok((record, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::Basis;
    use crate::estimator::{estimate_phi, SearchOpts};
    use crate::grid::GridSpec;

    #[test]
    fn filenames_encode_every_input() {
        let opts = SearchOpts::default();
        let a = Level::new(1, 2).unwrap();
        let name = record_filename("summing-3", "phi", Some(&a), 2, &opts);
        assert_eq!(name, "summing-3__phi__1-2__m2__b10000000__s0__v0.1.0.json");
        let name = record_filename("l1-2", "gamma", None, 4, &opts);
        assert_eq!(name, "l1-2__gamma__none__m4__b10000000__s0__v0.1.0.json");
    }

    #[test]
    fn record_round_trips_bitwise() {
        let basis = Basis::summing(3).unwrap();
        let grid = GridSpec::new(2).unwrap();
        let opts = SearchOpts::default();
        let a = Level::one();
        let e = estimate_phi(&basis, &a, &grid, &opts).unwrap();
        let record = ResultRecord::from_estimate("summing-3", &e, &opts);

        let dir = tempfile::tempdir().unwrap();
        let filename = record_filename("summing-3", "phi", Some(&a), 2, &opts);
        store_record(dir.path(), &filename, &record).unwrap();
        let loaded = load_record(dir.path(), &filename).unwrap().unwrap();
        assert_eq!(loaded, record);
        assert_eq!(loaded.value.to_bits(), e.value.to_bits());
    }

    #[test]
    fn cache_hits_return_the_stored_record() {
        let basis = Basis::summing(3).unwrap();
        let grid = GridSpec::new(1).unwrap();
        let opts = SearchOpts::default();
        let a = Level::one();
        let dir = tempfile::tempdir().unwrap();

        let mut runs = 0;
        let (first, hit1) =
            cached_estimate(dir.path(), "summing-3", "phi", Some(&a), 1, &opts, || {
                runs += 1;
                estimate_phi(&basis, &a, &grid, &opts)
            })
            .unwrap();
        assert!(!hit1);
        let (second, hit2) =
            cached_estimate(dir.path(), "summing-3", "phi", Some(&a), 1, &opts, || {
                panic!("cache hit must not recompute")
            })
            .unwrap();
        assert!(hit2);
        assert_eq!(runs, 1);
        assert_eq!(first, second);
    }

    #[test]
    fn missing_records_are_not_errors() {
        let dir = tempfile::tempdir().unwrap();
        assert!(load_record(dir.path(), "absent.json").unwrap().is_none());
    }
}
