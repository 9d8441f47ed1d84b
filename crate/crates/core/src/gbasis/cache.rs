//! Content-addressed on-disk cache of Gröbner bases.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use sha2::{Digest, Sha256};

use super::{buchberger_truncated, Completeness, GbError, GbLimits, GroebnerBasis};
use crate::corealg::{parse_poly, AlgebraPresentation};

pub const CACHE_ENV: &str = "NCREG_CACHE_DIR";
const HEADER: &str = "ncreg-groebner v1";

pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

#[derive(Clone, Debug)]
pub struct GbCache {
    dir: PathBuf,
}

impl GbCache {
    pub fn new(dir: impl Into<PathBuf>) -> GbCache {
        GbCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(a: &AlgebraPresentation, d_gb: u32) -> String {
        let mut h = Sha256::new();
        h.update(HEADER.as_bytes());
        h.update(a.canonical_text().as_bytes());
        h.update(format!("\ntruncation {d_gb}\n").as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.gb"))
    }

    pub fn load(&self, a: &Arc<AlgebraPresentation>, d_gb: u32) -> Result<Option<GroebnerBasis>, GbError> {
        let key = Self::key(a, d_gb);
        let text = match fs::read_to_string(self.path(&key)) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(GbError::Cache(e.to_string())),
        };
        decode(&text, &key, a, d_gb).map(Some)
    }

    pub fn store(&self, gb: &GroebnerBasis) -> Result<(), GbError> {
        let io = |e: std::io::Error| GbError::Cache(e.to_string());
        fs::create_dir_all(&self.dir).map_err(io)?;
        let key = Self::key(gb.presentation(), gb.truncation());
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        tmp.write_all(encode(gb, &key).as_bytes()).map_err(io)?;
        tmp.persist(self.path(&key)).map_err(|e| io(e.error))?;
        Ok(())
    }
}

fn encode(gb: &GroebnerBasis, key: &str) -> String {
    let mut s = format!("{HEADER}\nkey {key}\ntruncation {}\n", gb.truncation());
    match gb.completeness() {
        Completeness::Complete => s.push_str("completeness complete\n"),
        Completeness::CompleteUpTo(d) => s.push_str(&format!("completeness upto {d}\n")),
    }
    for line in gb.render() {
        s.push_str("element ");
        s.push_str(&line);
        s.push('\n');
    }
    s
}

fn decode(text: &str, key: &str, a: &Arc<AlgebraPresentation>, d_gb: u32) -> Result<GroebnerBasis, GbError> {
    let bad = |m: &str| GbError::Cache(format!("malformed cache entry {key}: {m}"));
    let mut lines = text.lines();
    if lines.next() != Some(HEADER) {
        return Err(bad("unknown header"));
    }
    if lines.next() != Some(&format!("key {key}")) {
        return Err(bad("key mismatch"));
    }
    if lines.next() != Some(&format!("truncation {d_gb}")) {
        return Err(bad("truncation mismatch"));
    }
    let completeness = match lines.next().and_then(|l| l.strip_prefix("completeness ")) {
        Some("complete") => Completeness::Complete,
        Some(rest) => match rest.strip_prefix("upto ").and_then(|d| d.parse().ok()) {
            Some(d) => Completeness::CompleteUpTo(d),
            None => return Err(bad("completeness")),
        },
        None => return Err(bad("completeness")),
    };
    let order = a.order();
    let mut elements = Vec::new();
    for line in lines {
        let body = line.strip_prefix("element ").ok_or_else(|| bad("expected element"))?;
        let p = parse_poly(body, a).map_err(|e| bad(&e.to_string()))?;
        if p.is_zero() {
            return Err(bad("zero element"));
        }
        elements.push(p.monic(order));
    }
    Ok(GroebnerBasis::from_parts(a.clone(), elements, d_gb, completeness))
}

/// Returns the cached basis when present, otherwise computes and stores it.
pub fn load_or_compute(
    a: &Arc<AlgebraPresentation>,
    d_gb: u32,
    limits: &GbLimits,
    cache: Option<&GbCache>,
) -> Result<GroebnerBasis, GbError> {
    if let Some(c) = cache {
        if let Some(gb) = c.load(a, d_gb)? {
            return Ok(gb);
        }
    }
    let gb = buchberger_truncated(a, d_gb, limits)?;
    if let Some(c) = cache {
        c.store(&gb)?;
    }
    Ok(gb)
}
