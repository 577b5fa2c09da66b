//! Insert-if-absent set of canonical forms that spills sorted runs to disk
//! once its in-memory part exceeds a byte ceiling.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::PathBuf;

use crate::canon::CanonicalForm;
use crate::complex::{Complex, VertexSet};
use crate::error::Result;

/// Environment variable overriding the memory ceiling, in bytes.
pub const MEMORY_CEILING_ENV: &str = "TRICENSUS_MEMORY_CEILING";

const DEFAULT_CEILING: usize = 4 << 30;
// rough per-entry overhead of the hash set on top of the key bytes
const ENTRY_OVERHEAD: usize = 48;

pub struct DedupeStore {
    ceiling: usize,
    mem: HashSet<Vec<u8>>,
    mem_bytes: usize,
    runs: Vec<PathBuf>,
    dir: Option<tempfile::TempDir>,
}

fn encode(form: &CanonicalForm) -> Vec<u8> {
    let mut key = Vec::with_capacity(2 + 2 * form.facets().len());
    key.push(form.dim() as u8);
    key.push(form.n() as u8);
    for f in form.facets() {
        key.extend_from_slice(&f.bits().to_be_bytes());
    }
    key
}

fn decode(key: &[u8]) -> CanonicalForm {
    let dim = key[0] as usize;
    let facets = key[2..].chunks_exact(2).map(|c| VertexSet::from_bits(u16::from_be_bytes([c[0], c[1]])));
    CanonicalForm::from_canonical_complex(&Complex::new(dim, facets).expect("stored forms are valid"))
}

fn read_key<R: Read>(r: &mut R) -> Result<Option<Vec<u8>>> {
    let mut len = [0u8; 2];
    match r.read_exact(&mut len) {
        Ok(()) => {}
        Err(e) if e.kind() == std::io::ErrorKind::UnexpectedEof => return Ok(None),
        Err(e) => return Err(e.into()),
    }
    let mut key = vec![0u8; u16::from_le_bytes(len) as usize];
    r.read_exact(&mut key)?;
    Ok(Some(key))
}

impl DedupeStore {
    pub fn new(ceiling: usize) -> Self {
        DedupeStore { ceiling, mem: HashSet::new(), mem_bytes: 0, runs: Vec::new(), dir: None }
    }

    /// Ceiling from the environment, 4 GiB by default.
    pub fn from_env() -> Self {
        let ceiling = std::env::var(MEMORY_CEILING_ENV).ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_CEILING);
        Self::new(ceiling)
    }

    /// False if the form is already held in memory. Duplicates of spilled
    /// forms are only removed when merging.
    pub fn insert(&mut self, form: &CanonicalForm) -> Result<bool> {
        let key = encode(form);
        let bytes = key.len() + ENTRY_OVERHEAD;
        if !self.mem.insert(key) {
            return Ok(false);
        }
        self.mem_bytes += bytes;
        if self.mem_bytes > self.ceiling {
            self.spill()?;
        }
        Ok(true)
    }

    pub fn spilled_runs(&self) -> usize {
        self.runs.len()
    }

    fn spill(&mut self) -> Result<()> {
        if self.dir.is_none() {
            self.dir = Some(tempfile::tempdir()?);
        }
        let path = self.dir.as_ref().unwrap().path().join(format!("run{}", self.runs.len()));
        let mut keys: Vec<Vec<u8>> = self.mem.drain().collect();
        keys.sort_unstable();
        let mut w = BufWriter::new(File::create(&path)?);
        for k in &keys {
            w.write_all(&(k.len() as u16).to_le_bytes())?;
            w.write_all(k)?;
        }
        w.flush()?;
        log::debug!("spilled {} forms to {}", keys.len(), path.display());
        self.runs.push(path);
        self.mem_bytes = 0;
        Ok(())
    }

    /// Visits every distinct form once, in the order of their encoded keys.
    pub fn for_each_distinct(self, mut f: impl FnMut(CanonicalForm)) -> Result<usize> {
        let mut mem: Vec<Vec<u8>> = self.mem.into_iter().collect();
        mem.sort_unstable();
        let mut readers = Vec::with_capacity(self.runs.len());
        for p in &self.runs {
            readers.push(BufReader::new(File::open(p)?));
        }
        let mut heads: Vec<Option<Vec<u8>>> = Vec::with_capacity(readers.len() + 1);
        for r in readers.iter_mut() {
            heads.push(read_key(r)?);
        }
        let mut mem_iter = mem.into_iter();
        heads.push(mem_iter.next());
        let mem_slot = heads.len() - 1;
        let mut last: Option<Vec<u8>> = None;
        let mut count = 0;
        while let Some(i) = (0..heads.len()).filter(|&i| heads[i].is_some()).min_by(|&a, &b| heads[a].cmp(&heads[b])) {
            let next = if i == mem_slot { mem_iter.next() } else { read_key(&mut readers[i])? };
            let key = std::mem::replace(&mut heads[i], next).unwrap();
            if last.as_ref() != Some(&key) {
                f(decode(&key));
                count += 1;
                last = Some(key);
            }
        }
        Ok(count)
    }

    pub fn into_vec(self) -> Result<Vec<CanonicalForm>> {
        let mut out = Vec::new();
        self.for_each_distinct(|c| out.push(c))?;
        Ok(out)
    }
}
