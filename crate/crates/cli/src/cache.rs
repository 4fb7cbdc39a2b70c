//! Certificate cache: one canonical JSON file per key, written atomically.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use ggs_core::{Certificate, Claim, DefiningVector};

/// Everything the certificate depends on.
pub struct CacheKey<'a> {
    pub claim: Claim,
    pub vector: &'a DefiningVector,
    pub level: Option<u32>,
    pub budget: usize,
    pub extra: Vec<(&'static str, String)>,
}

fn escape(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '.' {
                c.to_string()
            } else {
                format!("~{:x}", c as u32)
            }
        })
        .collect()
}

impl CacheKey<'_> {
    pub fn file_name(&self) -> String {
        let e: Vec<String> = self.vector.entries().iter().map(|x| x.to_string()).collect();
        let mut name = format!(
            "{}_p{}_e{}_n{}_b{}",
            self.claim.id(),
            self.vector.p(),
            e.join("."),
            self.level.map_or("default".into(), |n| n.to_string()),
            self.budget
        );
        for (k, v) in &self.extra {
            name.push_str(&format!("_{k}{}", escape(v)));
        }
        name.push_str(&format!("_v{}.json", env!("CARGO_PKG_VERSION")));
        name
    }
}

pub fn path(dir: &Path, key: &CacheKey) -> PathBuf {
    dir.join(key.file_name())
}

pub fn load(dir: &Path, key: &CacheKey) -> Option<Certificate> {
    let text = fs::read_to_string(path(dir, key)).ok()?;
    Certificate::from_json(&text).ok()
}

pub fn store(dir: &Path, key: &CacheKey, cert: &Certificate) -> Result<()> {
    write_atomic(&path(dir, key), cert.to_json().as_bytes())
}

/// Write to a temporary file in the target directory, then rename.
pub fn write_atomic(target: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match target.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(target)
        .with_context(|| format!("writing {}", target.display()))?;
    Ok(())
}
