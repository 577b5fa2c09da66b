//! Enumeration of the triangulated closed 3-manifolds on `n <= 10` vertices.
//!
//! Every manifold has a vertex of maximal degree `k` whose link comes first
//! in catalog order among all links of size `k`. Taking that vertex as apex 1
//! and labelling its link canonically with `2..=k+1` turns the manifold into
//! a completion of the cone over that link, so each catalog entry seeds one
//! backtracking run. Closing a vertex link of size `k` that precedes the seed
//! in catalog order prunes the branch, which makes runs over different seeds
//! disjoint up to isomorphism; a canonical-form set removes the remaining
//! relabeled copies within a run.

pub mod kernel;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::canon::{canonical_form, CanonicalForm};
use crate::census::{parse_form, CensusRecord};
use crate::complex::{Complex, VertexSet};
use crate::enum2::{seed_star, LinkCatalog};
use crate::error::{Error, Result};
use crate::topo;
use kernel::{search, triangles_form_sphere, LinkRule, PartialComplex};

pub const MIN_VERTICES: usize = 5;
pub const MAX_VERTICES: usize = 10;

/// Closed links must be 2-spheres; a closed link of the seed's size must not
/// precede the seed in the catalog.
pub struct CatalogRule<'a> {
    catalog: &'a LinkCatalog,
    seed: usize,
    seed_size: usize,
    // catalog index range of the seed-sized spheres sharing an invariant
    ranges: HashMap<u64, (usize, usize)>,
}

/// Isomorphism invariant of a triangulated 2-sphere given by its triangle
/// masks: the multiset of (degree, sorted neighbour degrees).
fn sphere_invariant(tris: &[u16]) -> u64 {
    let mut deg = [0u8; 16];
    let mut adj = [0u16; 16];
    for &t in tris {
        let mut m = t;
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            adj[b] |= t & !(1 << b);
            m &= m - 1;
        }
    }
    for b in 0..16 {
        deg[b] = adj[b].count_ones() as u8;
    }
    let mut keys: Vec<u64> = (0..16)
        .filter(|&b| deg[b] > 0)
        .map(|b| {
            let mut nd: Vec<u8> = (0..16).filter(|&c| adj[b] & (1 << c) != 0).map(|c| deg[c]).collect();
            nd.sort_unstable();
            nd.iter().fold(deg[b] as u64, |h, &d| h * 16 + d as u64)
        })
        .collect();
    keys.sort_unstable();
    keys.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &k| (h ^ k).wrapping_mul(0x0100_0000_01b3))
}

impl<'a> CatalogRule<'a> {
    pub fn new(catalog: &'a LinkCatalog, seed: usize) -> Self {
        let seed_size = catalog.spheres()[seed].n();
        let mut ranges: HashMap<u64, (usize, usize)> = HashMap::new();
        for (i, s) in catalog.spheres().iter().enumerate().filter(|(_, s)| s.n() == seed_size) {
            let tris: Vec<u16> = s.facets().iter().map(|t| t.bits()).collect();
            let r = ranges.entry(sphere_invariant(&tris)).or_insert((i, i));
            r.0 = r.0.min(i);
            r.1 = r.1.max(i);
        }
        CatalogRule { catalog, seed, seed_size, ranges }
    }
}

impl LinkRule for CatalogRule<'_> {
    fn closed_link_ok(&self, pc: &PartialComplex, b: usize) -> bool {
        let vb = 1u16 << b;
        let tris: Vec<u16> = pc.facets().iter().filter(|&&f| f & vb != 0).map(|&f| f & !vb).collect();
        if !triangles_form_sphere(&tris) {
            return false;
        }
        if pc.degree(b) < self.seed_size {
            return true;
        }
        match self.ranges.get(&sphere_invariant(&tris)) {
            Some(&(lo, _)) if lo >= self.seed => return true,
            Some(&(_, hi)) if hi < self.seed => return false,
            None => return false,
            _ => {}
        }
        let link = Complex::new(2, tris.iter().map(|&t| VertexSet::from_bits(t))).expect("distinct triangles");
        match self.catalog.index_of(&canonical_form(&link)) {
            Some(i) => i >= self.seed,
            None => false,
        }
    }
}

/// A resumable piece of work: one seed link and the facet chosen to close
/// the first open triangle of its star.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WorkUnit {
    pub seed: usize,
    pub first: VertexSet,
}

impl std::fmt::Display for WorkUnit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "seed={} first={}", self.seed, self.first)
    }
}

impl std::str::FromStr for WorkUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse { line: 0, msg: format!("bad work unit {s:?}") };
        let rest = s.strip_prefix("seed=").ok_or_else(err)?;
        let (seed, first) = rest.split_once(" first=").ok_or_else(err)?;
        let labels: std::result::Result<Vec<u8>, _> = first.split_whitespace().map(str::parse).collect();
        let labels = labels.map_err(|_| err())?;
        if labels.len() != 4 || labels.iter().any(|&v| v == 0 || v > 16) {
            return Err(err());
        }
        Ok(WorkUnit { seed: seed.parse().map_err(|_| err())?, first: VertexSet::from_labels(&labels) })
    }
}

fn max_facets(n: usize) -> usize {
    n * (n - 1) / 2 - n
}

fn seeded(n: usize, catalog: &LinkCatalog, seed: usize) -> PartialComplex {
    let link = &catalog.spheres()[seed];
    let mut pc = PartialComplex::new(3, n, link.n(), max_facets(n));
    for f in seed_star(link) {
        pc.add(f);
    }
    pc
}

fn seeds(n: usize, catalog: &LinkCatalog) -> impl Iterator<Item = usize> + '_ {
    (0..catalog.len()).filter(move |&i| catalog.spheres()[i].n() < n)
}

fn check_args(n: usize, catalog: &LinkCatalog) -> Result<()> {
    if !(MIN_VERTICES..=MAX_VERTICES).contains(&n) {
        return Err(Error::OutOfRange(n));
    }
    if !catalog.covers(n - 1) {
        return Err(Error::MissingCatalog);
    }
    Ok(())
}

/// All work units for `n` vertices, in increasing order.
pub fn work_units(n: usize, catalog: &LinkCatalog) -> Result<Vec<WorkUnit>> {
    check_args(n, catalog)?;
    let mut out = Vec::new();
    for seed in seeds(n, catalog) {
        let mut pc = seeded(n, catalog, seed);
        let rule = CatalogRule::new(catalog, seed);
        for f in pc.candidates() {
            if pc.try_add(f, &rule, true) {
                pc.remove_last();
                out.push(WorkUnit { seed, first: VertexSet::from_bits(f) });
            }
        }
    }
    Ok(out)
}

/// Distinct canonical forms of all manifolds completing one work unit.
pub fn run_unit(n: usize, catalog: &LinkCatalog, unit: WorkUnit) -> Vec<CanonicalForm> {
    let mut pc = seeded(n, catalog, unit.seed);
    let rule = CatalogRule::new(catalog, unit.seed);
    let mut found = BTreeSet::new();
    if pc.try_add(unit.first.bits(), &rule, true) {
        search(&mut pc, &rule, false, &mut |pc: &PartialComplex| {
            let k = pc.to_complex();
            if k.is_closed_3manifold().unwrap_or(false) {
                found.insert(canonical_form(&k));
            }
        });
    }
    found.into_iter().collect()
}

#[derive(Clone, Debug, Default)]
pub struct EnumOptions {
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
    /// Directory for resumable progress.
    pub checkpoint: Option<PathBuf>,
    /// Stop after this many newly completed units (for interruption tests).
    pub max_units: Option<usize>,
}

const META: &str = "meta";
const UNITS: &str = "units";
const RESULTS: &str = "results";

fn catalog_digest(catalog: &LinkCatalog) -> String {
    let mut h = Sha256::new();
    for s in catalog.spheres() {
        h.update(s.to_string().as_bytes());
        h.update(b"\n");
    }
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Progress recorded in a checkpoint directory.
struct Checkpoint {
    done: HashSet<WorkUnit>,
    forms: Vec<CanonicalForm>,
}

fn open_checkpoint(dir: &Path, meta: &str) -> Result<Checkpoint> {
    fs::create_dir_all(dir)?;
    let meta_path = dir.join(META);
    if meta_path.exists() {
        let found = fs::read_to_string(&meta_path)?;
        if found.trim_end() != meta {
            return Err(Error::CheckpointMismatch(format!("checkpoint is for {:?}, run is {meta:?}", found.trim_end())));
        }
    } else {
        let mut f = File::create(&meta_path)?;
        writeln!(f, "{meta}")?;
        f.sync_all()?;
    }
    for name in [UNITS, RESULTS] {
        drop_torn_line(&dir.join(name))?;
    }
    let mut done = HashSet::new();
    if let Ok(f) = File::open(dir.join(UNITS)) {
        for line in BufReader::new(f).lines() {
            let line = line?;
            if let Ok(u) = line.parse::<WorkUnit>() {
                done.insert(u);
            }
        }
    }
    let mut forms = Vec::new();
    if let Ok(f) = File::open(dir.join(RESULTS)) {
        for line in BufReader::new(f).lines() {
            let line = line?;
            if let Ok(form) = parse_form(&line, 3) {
                forms.push(form);
            }
        }
    }
    Ok(Checkpoint { done, forms })
}

/// Cuts an interrupted final line so that later appends start cleanly.
/// Its unit is not yet recorded as done and will be redone.
fn drop_torn_line(path: &Path) -> Result<()> {
    let Ok(bytes) = fs::read(path) else { return Ok(()) };
    if bytes.last().is_some_and(|&b| b != b'\n') {
        let keep = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
        let f = OpenOptions::new().write(true).open(path)?;
        f.set_len(keep as u64)?;
        f.sync_all()?;
    }
    Ok(())
}

fn append_synced(path: &Path, text: &str) -> Result<()> {
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    f.write_all(text.as_bytes())?;
    f.sync_data()?;
    Ok(())
}

/// Canonical forms of all triangulated closed 3-manifolds on exactly `n`
/// vertices, sorted by edge count and then by form. `None` signals that
/// `max_units` stopped the run early.
pub fn enumerate_forms(n: usize, catalog: &LinkCatalog, opts: &EnumOptions) -> Result<Option<Vec<CanonicalForm>>> {
    let units = work_units(n, catalog)?;
    let meta = format!("n={n} catalog={} units={}", catalog_digest(catalog), units.len());
    let (done, mut forms) = match &opts.checkpoint {
        Some(dir) => {
            let cp = open_checkpoint(dir, &meta)?;
            (cp.done, cp.forms)
        }
        None => (HashSet::new(), Vec::new()),
    };
    let mut todo: Vec<WorkUnit> = units.iter().copied().filter(|u| !done.contains(u)).collect();
    let stopped = opts.max_units.is_some_and(|m| m < todo.len());
    if let Some(m) = opts.max_units {
        todo.truncate(m);
    }
    log::info!("n={n}: {} work units, {} already done", units.len(), done.len());

    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build().map_err(|e| Error::Invariant(e.to_string()))?;
    let (tx, rx) = mpsc::channel::<(WorkUnit, Vec<CanonicalForm>)>();
    let checkpoint = opts.checkpoint.clone();
    let total = todo.len();
    let writer = std::thread::spawn(move || -> Result<Vec<CanonicalForm>> {
        let mut out = Vec::new();
        for (i, (unit, found)) in rx.into_iter().enumerate() {
            if let Some(dir) = &checkpoint {
                let text: String = found.iter().map(|f| format!("{f}\n")).collect();
                append_synced(&dir.join(RESULTS), &text)?;
                append_synced(&dir.join(UNITS), &format!("{unit}\n"))?;
            }
            log::debug!("unit {} of {total} ({unit}): {} forms", i + 1, found.len());
            out.extend(found);
        }
        Ok(out)
    });
    pool.install(|| {
        todo.par_iter().for_each_with(tx, |tx, &unit| {
            let found = run_unit(n, catalog, unit);
            tx.send((unit, found)).expect("writer thread alive");
        })
    });
    forms.extend(writer.join().expect("writer thread panicked")?);
    if stopped {
        return Ok(None);
    }
    let mut distinct: Vec<(usize, CanonicalForm)> =
        forms.into_iter().collect::<BTreeSet<_>>().into_iter().map(|f| (f.to_complex().faces(1).len(), f)).collect();
    distinct.sort();
    Ok(Some(distinct.into_iter().map(|(_, f)| f).collect()))
}

/// Census records with f-vector and topological type filled in.
pub fn enumerate_3manifolds(n: usize, catalog: &LinkCatalog, opts: &EnumOptions) -> Result<Option<Vec<CensusRecord>>> {
    let Some(forms) = enumerate_forms(n, catalog, opts)? else { return Ok(None) };
    let records = forms
        .into_par_iter()
        .map(|form| {
            let mut r = CensusRecord::new(form);
            let t = topo::classify(&r.complex())?;
            if !r.f_vector.satisfies_closed3_relations() {
                return Err(Error::Invariant(format!("f-vector {} of {}", r.f_vector, r.form)));
            }
            r.topo_type = Some(t);
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(records))
}
