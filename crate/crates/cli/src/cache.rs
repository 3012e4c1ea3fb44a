//! On-disk store of memoized tables, one JSON-lines file per root system.
//!
//! Line 1 is a header `{"format":1,"normalization":…,"system":…}`; every
//! following line is one [`Record`]. Records are written in the engine's
//! deterministic export order, so an unchanged table rewrites identically.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use fti_core::{Engine, Record, RecordKind};

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;
/// Conventions every stored table depends on.
pub const NORMALIZATION: &str = "weights-by-length;long-roots-norm-2;tau-orbit-sums";
pub const ENV_VAR: &str = "FTI_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub format: u32,
    pub normalization: String,
    pub system: String,
}

impl Header {
    pub fn for_system(system: &str) -> Self {
        Header {
            format: FORMAT_VERSION,
            normalization: NORMALIZATION.to_string(),
            system: system.to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CacheStore {
    root: PathBuf,
}

#[derive(Clone, Debug, Serialize)]
pub struct FileStat {
    pub system: String,
    pub bytes: u64,
    pub records: Vec<(String, usize)>,
}

impl CacheStore {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        CacheStore { root: root.into() }
    }

    /// `--cache-dir`, else the environment variable, else no store.
    pub fn resolve(flag: Option<&Path>) -> Option<Self> {
        flag.map(Path::to_path_buf)
            .or_else(|| std::env::var_os(ENV_VAR).map(PathBuf::from))
            .map(Self::new)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path_for(&self, system: &str) -> PathBuf {
        self.root.join(format!("{system}.jsonl"))
    }

    /// Header and records of one system; `None` when nothing is stored.
    pub fn read(&self, system: &str) -> Result<Option<(Header, Vec<Record>)>, CliError> {
        let path = self.path_for(system);
        if !path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&path)?;
        let mut lines = text.lines();
        let first = lines
            .next()
            .ok_or_else(|| CliError::Cache(format!("{}: empty file", path.display())))?;
        let header: Header = serde_json::from_str(first)
            .map_err(|e| CliError::Cache(format!("{}: bad header: {e}", path.display())))?;
        let expected = Header::for_system(system);
        if header != expected {
            return Err(CliError::Cache(format!(
                "{}: header {} does not match {}",
                path.display(),
                first,
                serde_json::to_string(&expected).expect("header serializes")
            )));
        }
        let records = lines
            .enumerate()
            .map(|(i, l)| {
                serde_json::from_str(l)
                    .map_err(|e| CliError::Cache(format!("{}:{}: {e}", path.display(), i + 2)))
            })
            .collect::<Result<Vec<Record>, _>>()?;
        Ok(Some((header, records)))
    }

    /// Load stored tables into the engine.
    pub fn load(&self, engine: &Engine) -> Result<usize, CliError> {
        let system = engine.root_system().name();
        match self.read(&system)? {
            Some((_, records)) => Ok(engine.import_records(&records)?),
            None => Ok(0),
        }
    }

    /// Write every memoized table. Stored records must reappear unchanged.
    pub fn save(&self, engine: &Engine) -> Result<(), CliError> {
        let system = engine.root_system().name();
        let records = engine.export_records();
        let mut text = serde_json::to_string(&Header::for_system(&system)).expect("header serializes");
        text.push('\n');
        for r in &records {
            text.push_str(&serde_json::to_string(r).expect("record serializes"));
            text.push('\n');
        }
        let path = self.path_for(&system);
        if let Ok(old) = fs::read_to_string(&path) {
            if old == text {
                return Ok(());
            }
            let new_lines: std::collections::HashSet<&str> = text.lines().collect();
            if let Some(lost) = old.lines().find(|l| !new_lines.contains(l)) {
                return Err(CliError::Cache(format!(
                    "{}: stored record would change: {lost}",
                    path.display()
                )));
            }
        }
        fs::create_dir_all(&self.root)?;
        let tmp = path.with_extension("jsonl.tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(text.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// Per-system record counts.
    pub fn stat(&self) -> Result<Vec<FileStat>, CliError> {
        let mut out = Vec::new();
        if !self.root.exists() {
            return Ok(out);
        }
        let mut names: Vec<String> = fs::read_dir(&self.root)?
            .filter_map(|e| e.ok())
            .filter_map(|e| {
                let name = e.file_name().into_string().ok()?;
                name.strip_suffix(".jsonl").map(str::to_string)
            })
            .collect();
        names.sort();
        for system in names {
            let bytes = fs::metadata(self.path_for(&system))?.len();
            let (_, records) = self.read(&system)?.unwrap_or((Header::for_system(&system), Vec::new()));
            let records = RecordKind::ALL
                .iter()
                .map(|k| (k.tag().to_string(), records.iter().filter(|r| r.kind == *k).count()))
                .collect();
            out.push(FileStat { system, bytes, records });
        }
        Ok(out)
    }

    /// Remove every stored file; returns the number removed.
    pub fn clear(&self) -> Result<usize, CliError> {
        let mut n = 0;
        if !self.root.exists() {
            return Ok(0);
        }
        for e in fs::read_dir(&self.root)? {
            let p = e?.path();
            if p.extension().is_some_and(|x| x == "jsonl") {
                fs::remove_file(p)?;
                n += 1;
            }
        }
        Ok(n)
    }
}
