//! JSON-lines cache of exact chromatic numbers, one record per `(n, k, r, s)`.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use kneser::{KneserParams, SolverStatus};
use serde::{Deserialize, Serialize};

pub const DEFAULT_CACHE_PATH: &str = "kneser-cache.jsonl";
pub const CACHE_ENV: &str = "KNESER_CACHE";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub n: u32,
    pub k: u32,
    pub r: u32,
    pub s: u32,
    pub chi: Option<u32>,
    pub solver_status: SolverStatus,
    pub nodes: u64,
    pub tool_version: String,
    pub timestamp: String,
}

impl CacheRecord {
    pub fn key(&self) -> (u32, u32, u32, u32) {
        (self.n, self.k, self.r, self.s)
    }

    /// `chi` is present exactly when the status is `chi_found`.
    pub fn is_consistent(&self) -> bool {
        self.chi.is_some() == (self.solver_status == SolverStatus::ChiFound)
    }
}

fn key_of(p: &KneserParams) -> (u32, u32, u32, u32) {
    (p.n, p.k, p.r, p.s)
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    records: Vec<CacheRecord>,
    index: HashMap<(u32, u32, u32, u32), usize>,
}

impl Cache {
    /// Resolves `--cache`, then `KNESER_CACHE`, then the default file name.
    pub fn resolve_path(flag: Option<&Path>) -> PathBuf {
        flag.map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_PATH))
    }

    /// Loads the file if it exists. Unparseable or inconsistent lines are
    /// skipped with a warning; a later record for the same key wins.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let mut cache = Self { path, records: Vec::new(), index: HashMap::new() };
        let file = match File::open(&cache.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e).with_context(|| format!("opening {}", cache.path.display())),
        };
        for (lineno, line) in BufReader::new(file).lines().enumerate() {
            let line = line.with_context(|| format!("reading {}", cache.path.display()))?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<CacheRecord>(&line) {
                Ok(rec) if rec.is_consistent() => cache.insert(rec),
                Ok(_) => log::warn!("{}:{}: chi and status disagree, skipping", cache.path.display(), lineno + 1),
                Err(e) => log::warn!("{}:{}: skipping corrupt line: {e}", cache.path.display(), lineno + 1),
            }
        }
        Ok(cache)
    }

    fn insert(&mut self, rec: CacheRecord) {
        match self.index.get(&rec.key()) {
            Some(&i) => self.records[i] = rec,
            None => {
                self.index.insert(rec.key(), self.records.len());
                self.records.push(rec);
            }
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[CacheRecord] {
        &self.records
    }

    pub fn get(&self, params: &KneserParams) -> Option<&CacheRecord> {
        self.index.get(&key_of(params)).map(|&i| &self.records[i])
    }

    /// A record usable under a node budget: any exact value, or a budget
    /// failure that already spent at least `max_nodes`.
    pub fn lookup(&self, params: &KneserParams, max_nodes: u64) -> Option<&CacheRecord> {
        self.get(params).filter(|rec| match rec.solver_status {
            SolverStatus::ChiFound => true,
            SolverStatus::BudgetExceeded => rec.nodes >= max_nodes,
            SolverStatus::Skipped => false,
        })
    }

    /// Stores a record. New keys are appended under an exclusive lock; a
    /// replaced key rewrites the file so keys stay unique.
    pub fn put(&mut self, rec: CacheRecord) -> Result<()> {
        let replacing = self.index.contains_key(&rec.key());
        let line = serde_json::to_string(&rec)?;
        self.insert(rec);
        if replacing {
            return self.rewrite();
        }
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .with_context(|| format!("opening {} for append", self.path.display()))?;
        file.lock()?;
        writeln!(file, "{line}")?;
        file.unlock()?;
        Ok(())
    }

    fn rewrite(&self) -> Result<()> {
        let tmp = self.path.with_extension("jsonl.tmp");
        {
            let mut out = File::create(&tmp)?;
            out.lock()?;
            for rec in &self.records {
                writeln!(out, "{}", serde_json::to_string(rec)?)?;
            }
            out.sync_all()?;
        }
        fs::rename(&tmp, &self.path).with_context(|| format!("replacing {}", self.path.display()))?;
        Ok(())
    }
}
