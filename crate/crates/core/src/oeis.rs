//! OEIS b-file retrieval with a local cache, plus sequence comparison.
//!
//! Cache files hold the verbatim downloaded bytes; writes go through a
//! temporary file and a rename so concurrent fetches cannot corrupt them.
//! Offline mode never touches the network: only the cache and any
//! configured fixture directory are consulted.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// A validated OEIS identifier: `A` followed by six digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OeisId(String);

impl OeisId {
    pub fn new(id: &str) -> Result<Self> {
        let ok =
            id.len() == 7 && id.starts_with('A') && id[1..].chars().all(|c| c.is_ascii_digit());
        if !ok {
            return Err(Error::InvalidInput(format!(
                "malformed OEIS id {id:?}; expected A followed by six digits"
            )));
        }
        Ok(Self(id.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// File name of the b-file, e.g. `b000073.txt`.
    pub fn bfile_name(&self) -> String {
        format!("b{}.txt", &self.0[1..])
    }

    pub fn url(&self) -> String {
        format!("https://oeis.org/{}/{}", self.0, self.bfile_name())
    }
}

impl fmt::Display for OeisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for OeisId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BFileSource {
    Network,
    Cache,
    Fixture,
}

impl fmt::Display for BFileSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BFileSource::Network => write!(f, "network"),
            BFileSource::Cache => write!(f, "cache"),
            BFileSource::Fixture => write!(f, "fixture"),
        }
    }
}

/// A parsed b-file: strictly increasing indices with exact values.
#[derive(Debug, Clone)]
pub struct BFile {
    pub id: OeisId,
    pub entries: Vec<(i64, BigInt)>,
    pub source: BFileSource,
}

impl BFile {
    pub fn value(&self, index: i64) -> Option<&BigInt> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|pos| &self.entries[pos].1)
    }

    pub fn first_index(&self) -> Option<i64> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn last_index(&self) -> Option<i64> {
        self.entries.last().map(|(i, _)| *i)
    }
}

/// Parses b-file text: `#` comment lines are ignored, data lines are
/// `<index> <value>`, indices strictly increasing.
pub fn parse_bfile(text: &str) -> Result<Vec<(i64, BigInt)>> {
    let mut entries: Vec<(i64, BigInt)> = Vec::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let index_tok = tokens.next().expect("nonempty line has a token");
        let value_tok = tokens.next().ok_or(Error::BFileParse {
            line: line_no + 1,
            message: "missing value field".into(),
        })?;
        if tokens.next().is_some() {
            return Err(Error::BFileParse {
                line: line_no + 1,
                message: "trailing tokens after value".into(),
            });
        }
        let index: i64 = index_tok.parse().map_err(|_| Error::BFileParse {
            line: line_no + 1,
            message: format!("bad index {index_tok:?}"),
        })?;
        let value: BigInt = value_tok.parse().map_err(|_| Error::BFileParse {
            line: line_no + 1,
            message: format!("bad value {value_tok:?}"),
        })?;
        if entries.last().is_some_and(|(prev, _)| *prev >= index) {
            return Err(Error::BFileParse {
                line: line_no + 1,
                message: format!("index {index} does not increase"),
            });
        }
        entries.push((index, value));
    }
    Ok(entries)
}

/// Retrieves b-files, preferring the cache, then fixtures, then (unless
/// offline) the network.
pub struct OeisClient {
    cache_dir: PathBuf,
    fixture_dir: Option<PathBuf>,
    offline: bool,
}

impl OeisClient {
    pub fn new(cache_dir: impl Into<PathBuf>) -> Self {
        Self {
            cache_dir: cache_dir.into(),
            fixture_dir: None,
            offline: false,
        }
    }

    pub fn offline(mut self, offline: bool) -> Self {
        self.offline = offline;
        self
    }

    pub fn with_fixture_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.fixture_dir = Some(dir.into());
        self
    }

    pub fn cache_path(&self, id: &OeisId) -> PathBuf {
        self.cache_dir.join(id.bfile_name())
    }

    pub fn fetch(&self, id: &OeisId) -> Result<BFile> {
        let cache_path = self.cache_path(id);
        if cache_path.is_file() {
            let text = fs::read_to_string(&cache_path)?;
            return Ok(BFile {
                id: id.clone(),
                entries: parse_bfile(&text)?,
                source: BFileSource::Cache,
            });
        }
        if let Some(fixture_dir) = &self.fixture_dir {
            let fixture_path = fixture_dir.join(id.bfile_name());
            if fixture_path.is_file() {
                let text = fs::read_to_string(&fixture_path)?;
                return Ok(BFile {
                    id: id.clone(),
                    entries: parse_bfile(&text)?,
                    source: BFileSource::Fixture,
                });
            }
        }
        if self.offline {
            return Err(Error::NetworkUnavailable(format!(
                "offline mode and {id} is in neither the cache nor the fixtures"
            )));
        }
        let text = download(&id.url())?;
        let entries = parse_bfile(&text)?;
        self.write_cache(&cache_path, &text)?;
        Ok(BFile {
            id: id.clone(),
            entries,
            source: BFileSource::Network,
        })
    }

    /// Write-temp-then-rename; the last complete write wins.
    fn write_cache(&self, path: &Path, text: &str) -> Result<()> {
        fs::create_dir_all(&self.cache_dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.cache_dir)?;
        tmp.write_all(text.as_bytes())?;
        tmp.persist(path).map_err(|e| Error::Io(e.error))?;
        Ok(())
    }
}

fn download(url: &str) -> Result<String> {
    let mut response = ureq::get(url)
        .call()
        .map_err(|e| Error::NetworkUnavailable(format!("GET {url}: {e}")))?;
    response
        .body_mut()
        .read_to_string()
        .map_err(|e| Error::NetworkUnavailable(format!("reading {url}: {e}")))
}

/// One disagreeing index.
#[derive(Debug, Clone)]
pub struct Mismatch {
    pub index: i64,
    pub computed: BigInt,
    pub reference: BigInt,
}

/// Index-by-index comparison outcome over the overlap.
#[derive(Debug, Clone)]
pub struct CompareReport {
    /// Number of overlapping indices compared.
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CompareReport {
    pub fn all_match(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares computed values (starting at `offset`) against a b-file: our
/// value at index n is matched with the b-file value at `n + shift`, plus
/// `add`. Every overlapping index is checked; an empty overlap is an error.
pub fn compare(
    values: &[BigInt],
    offset: i64,
    bfile: &BFile,
    shift: i64,
    add: i64,
) -> Result<CompareReport> {
    let reference: BTreeMap<i64, &BigInt> = bfile.entries.iter().map(|(i, v)| (*i, v)).collect();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for (pos, computed) in values.iter().enumerate() {
        let n = offset + pos as i64;
        if let Some(reference_value) = reference.get(&(n + shift)) {
            checked += 1;
            let adjusted = *reference_value + add;
            if *computed != adjusted {
                mismatches.push(Mismatch {
                    index: n,
                    computed: computed.clone(),
                    reference: adjusted,
                });
            }
        }
    }
    if checked == 0 {
        return Err(Error::InvalidInput(
            "no overlap between the computed sequence and the b-file".into(),
        ));
    }
    Ok(CompareReport {
        checked,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn id_validation() {
        assert!(OeisId::new("A000073").is_ok());
        assert!(OeisId::new("123").is_err());
        assert!(OeisId::new("A73").is_err());
        assert!(OeisId::new("B000073").is_err());
        assert_eq!(OeisId::new("A000073").unwrap().bfile_name(), "b000073.txt");
        assert_eq!(
            OeisId::new("A000073").unwrap().url(),
            "https://oeis.org/A000073/b000073.txt"
        );
    }

    #[test]
    fn parse_comments_and_whitespace() {
        let text = "# header\n  # indented comment\n0 0\n1 0\n 2 1\n\n3 1\n";
        let entries = parse_bfile(text).unwrap();
        assert_eq!(entries.len(), 4);
        assert_eq!(entries[2], (2, BigInt::from(1)));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse_bfile("0 0\n1 x\n") {
            Err(Error::BFileParse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_bfile("0 0\n0 1\n") {
            Err(Error::BFileParse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected ordering error, got {other:?}"),
        }
        assert!(parse_bfile("0 0 0\n").is_err());
        assert!(parse_bfile("5\n").is_err());
    }

    #[test]
    fn compare_detects_mismatches() {
        let bfile = BFile {
            id: OeisId::new("A000073").unwrap(),
            entries: parse_bfile("0 0\n1 0\n2 1\n3 1\n4 2\n").unwrap(),
            source: BFileSource::Fixture,
        };
        let zeros = vec![BigInt::from(0); 5];
        let report = compare(&zeros, 0, &bfile, 0, 0).unwrap();
        assert!(!report.all_match());
        assert_eq!(report.mismatches[0].index, 2);

        let trib: Vec<BigInt> = [0, 0, 1, 1, 2].map(BigInt::from).to_vec();
        let report = compare(&trib, 0, &bfile, 0, 0).unwrap();
        assert!(report.all_match());
        assert_eq!(report.checked, 5);

        // no overlap
        assert!(compare(&trib, 100, &bfile, 0, 0).is_err());
    }

    #[test]
    fn offline_without_sources_is_unavailable() {
        let dir = tempfile::tempdir().unwrap();
        let client = OeisClient::new(dir.path().join("cache")).offline(true);
        match client.fetch(&OeisId::new("A000045").unwrap()) {
            Err(Error::NetworkUnavailable(_)) => {}
            other => panic!("expected unavailable, got {other:?}"),
        }
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().join("cache");
        let client = OeisClient::new(&cache).offline(true);
        let id = OeisId::new("A000045").unwrap();
        let text = "# locally written\n0 0\n1 1\n2 1\n3 2\n";
        client.write_cache(&client.cache_path(&id), text).unwrap();
        let fetched = client.fetch(&id).unwrap();
        assert_eq!(fetched.source, BFileSource::Cache);
        assert_eq!(fetched.entries.len(), 4);
        // bytes are verbatim
        assert_eq!(fs::read_to_string(client.cache_path(&id)).unwrap(), text);
        // idempotent
        let again = client.fetch(&id).unwrap();
        assert_eq!(again.entries, fetched.entries);
    }
}
