//! Census fixtures: one graph6 file per order plus a sha256 manifest.
//!
//! The data directory holds `graphs{m}.g6` files and `MANIFEST.sha256` in
//! the usual `sha256sum` layout (`<hex>  <file name>`). Small orders come
//! from the built-in generator; larger lists are supplied by the user and
//! must be listed in the manifest.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufReader, Read};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use specgraph_core::graph::{encode_graph6, enumerate_connected_graphs, GENERATOR_MAX_ORDER};
use specgraph_core::Graph;

use crate::g6io::read_all;

pub const DATA_DIR_ENV: &str = "SPECGRAPH_DATA_DIR";
pub const MANIFEST: &str = "MANIFEST.sha256";

#[derive(Debug)]
pub enum FixtureError {
    Io(PathBuf, io::Error),
    ChecksumMismatch { file: PathBuf, expected: String, actual: String },
    NotInManifest(PathBuf),
    Malformed { file: PathBuf, line: u64, reason: String },
    /// Neither a fixture file nor the generator covers this order.
    Unavailable { order: usize, dir: PathBuf },
}

impl std::fmt::Display for FixtureError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FixtureError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            FixtureError::ChecksumMismatch { file, expected, actual } => {
                write!(f, "{}: sha256 {actual} does not match manifest {expected}", file.display())
            }
            FixtureError::NotInManifest(p) => write!(f, "{} is not listed in {MANIFEST}", p.display()),
            FixtureError::Malformed { file, line, reason } => write!(f, "{}:{line}: {reason}", file.display()),
            FixtureError::Unavailable { order, dir } => write!(
                f,
                "no fixture for order {order} in {} and the generator stops at {GENERATOR_MAX_ORDER}",
                dir.display()
            ),
        }
    }
}

impl std::error::Error for FixtureError {}

/// `$SPECGRAPH_DATA_DIR`, or `data` relative to the working directory.
pub fn data_dir() -> PathBuf {
    std::env::var_os(DATA_DIR_ENV).map_or_else(|| PathBuf::from("data"), PathBuf::from)
}

pub fn fixture_name(m: usize) -> String {
    format!("graphs{m}.g6")
}

fn hex(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(2 * bytes.len());
    for b in bytes {
        let _ = write!(s, "{b:02x}");
    }
    s
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex(&Sha256::digest(bytes))
}

fn sha256_file(path: &Path) -> Result<String, FixtureError> {
    let mut file = fs::File::open(path).map_err(|e| FixtureError::Io(path.into(), e))?;
    let mut hasher = Sha256::new();
    let mut buf = vec![0u8; 1 << 16];
    loop {
        let n = file.read(&mut buf).map_err(|e| FixtureError::Io(path.into(), e))?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(hex(&hasher.finalize()))
}

/// Manifest entries keyed by file name. A missing manifest is empty.
pub fn read_manifest(dir: &Path) -> Result<BTreeMap<String, String>, FixtureError> {
    let path = dir.join(MANIFEST);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
        Err(e) => return Err(FixtureError::Io(path, e)),
    };
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let malformed = |reason: &str| FixtureError::Malformed { file: path.clone(), line: i as u64 + 1, reason: reason.into() };
        let (hash, name) = line.split_once(char::is_whitespace).ok_or_else(|| malformed("expected `<sha256>  <file>`"))?;
        // sha256sum marks binary mode with a leading `*`
        let name = name.trim_start().trim_start_matches('*');
        if hash.len() != 64 || !hash.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(malformed("invalid sha256 digest"));
        }
        out.insert(name.to_string(), hash.to_ascii_lowercase());
    }
    Ok(out)
}

fn write_manifest(dir: &Path, entries: &BTreeMap<String, String>) -> Result<(), FixtureError> {
    let text: String = entries.iter().map(|(name, hash)| format!("{hash}  {name}\n")).collect();
    let path = dir.join(MANIFEST);
    fs::write(&path, text).map_err(|e| FixtureError::Io(path, e))
}

/// Checks `path` against the manifest in its own directory.
pub fn verify_file(path: &Path) -> Result<(), FixtureError> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let manifest = read_manifest(dir)?;
    let expected = manifest.get(&name).ok_or_else(|| FixtureError::NotInManifest(path.into()))?;
    let actual = sha256_file(path)?;
    if &actual != expected {
        return Err(FixtureError::ChecksumMismatch { file: path.into(), expected: expected.clone(), actual });
    }
    Ok(())
}

/// Graph6 text of `graphs`, one per line.
pub fn graph6_text(graphs: &[Graph]) -> Vec<u8> {
    let mut out = Vec::new();
    for g in graphs {
        out.extend(encode_graph6(g).expect("fixture orders are encodable"));
        out.push(b'\n');
    }
    out
}

/// Generates the order-`m` census and writes it with its manifest entry.
/// Returns the file path and the number of graphs.
pub fn write_fixture(dir: &Path, m: usize) -> Result<(PathBuf, usize), FixtureError> {
    let graphs = enumerate_connected_graphs(m).map_err(|_| FixtureError::Unavailable { order: m, dir: dir.into() })?;
    fs::create_dir_all(dir).map_err(|e| FixtureError::Io(dir.into(), e))?;
    let text = graph6_text(&graphs);
    let name = fixture_name(m);
    let path = dir.join(&name);
    fs::write(&path, &text).map_err(|e| FixtureError::Io(path.clone(), e))?;
    let mut manifest = read_manifest(dir)?;
    manifest.insert(name, sha256_hex(&text));
    write_manifest(dir, &manifest)?;
    Ok((path, graphs.len()))
}

/// Reads a verified fixture file.
pub fn read_fixture(path: &Path) -> Result<Vec<Graph>, FixtureError> {
    verify_file(path)?;
    let file = fs::File::open(path).map_err(|e| FixtureError::Io(path.into(), e))?;
    let mut graphs = Vec::new();
    for (line, parsed) in read_all(BufReader::new(file)).map_err(|e| FixtureError::Io(path.into(), e))? {
        let g = parsed.map_err(|e| FixtureError::Malformed { file: path.into(), line, reason: e.to_string() })?;
        graphs.push(g);
    }
    Ok(graphs)
}

/// The order-`m` census: from `dir` when a fixture exists there (and
/// matches the manifest), otherwise from the generator.
pub fn load_order(dir: &Path, m: usize) -> Result<Vec<Graph>, FixtureError> {
    let path = dir.join(fixture_name(m));
    if path.exists() {
        return read_fixture(&path);
    }
    enumerate_connected_graphs(m).map_err(|_| FixtureError::Unavailable { order: m, dir: dir.into() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha256_known_value() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn write_then_verify() {
        let dir = tempfile::tempdir().unwrap();
        let (path, n) = write_fixture(dir.path(), 5).unwrap();
        assert_eq!(n, 21);
        assert_eq!(load_order(dir.path(), 5).unwrap().len(), 21);
        write_fixture(dir.path(), 4).unwrap();
        assert_eq!(read_manifest(dir.path()).unwrap().len(), 2);

        fs::write(&path, b"Bw\n").unwrap();
        assert!(matches!(load_order(dir.path(), 5), Err(FixtureError::ChecksumMismatch { .. })));
    }

    #[test]
    fn unlisted_file_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join(fixture_name(3)), b"Bg\nBw\n").unwrap();
        assert!(matches!(load_order(dir.path(), 3), Err(FixtureError::NotInManifest(_))));
    }

    #[test]
    fn generator_fallback_and_limit() {
        let dir = tempfile::tempdir().unwrap();
        assert_eq!(load_order(dir.path(), 4).unwrap().len(), 6);
        assert!(matches!(load_order(dir.path(), 10), Err(FixtureError::Unavailable { order: 10, .. })));
    }

    #[test]
    fn malformed_manifest() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join(MANIFEST), "nothex  graphs3.g6\n").unwrap();
        assert!(matches!(read_manifest(dir.path()), Err(FixtureError::Malformed { line: 1, .. })));
    }
}
