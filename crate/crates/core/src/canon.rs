//! Canonical labeling, isomorphism testing and combinatorial automorphism
//! groups.
//!
//! The canonical form of a complex is the lexicographically least sorted
//! facet list over all relabelings of its vertices by `1..=n`. It is found by
//! a branch-and-bound over labelings that emits the sorted facet list one
//! facet at a time: given labels `1..=k` already placed, the next facet of the
//! sorted list must be one of the remaining facets whose known labels form
//! the smallest prefix, and its unlabeled vertices must receive `k+1, k+2, ..`
//! in some order. Branching over those choices reaches every optimal
//! labeling, so the set of optimal labelings is a coset of the automorphism
//! group and doubles as the group itself.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::complex::{Complex, VertexSet};

const UNKNOWN: u32 = 31;
const MAX_FACETS: usize = 128;

/// Lexicographically least relabeled facet list of a complex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    dim: usize,
    n: usize,
    facets: Vec<VertexSet>,
}

impl CanonicalForm {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn to_complex(&self) -> Complex {
        Complex::from_sorted(self.dim, self.facets.clone())
    }

    /// Trusts the caller that `k` already is in canonical labeling.
    pub fn from_canonical_complex(k: &Complex) -> Self {
        CanonicalForm { dim: k.dim(), n: k.n(), facets: k.facets().to_vec() }
    }

    /// Approximate heap footprint, for the dedupe store's memory ceiling.
    pub fn heap_bytes(&self) -> usize {
        std::mem::size_of::<Self>() + self.facets.capacity() * 2
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, facet) in self.facets.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{facet}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({self})")
    }
}

/// A permutation of the labels `1..=n`; `images[i]` is the image of `i + 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n as u8).collect() }
    }

    /// `images` must be a permutation of `1..=images.len()`.
    pub fn from_images(images: Vec<u8>) -> Self {
        let mut seen = vec![false; images.len() + 1];
        for &v in &images {
            assert!(v >= 1 && (v as usize) <= images.len() && !seen[v as usize], "not a permutation");
            seen[v as usize] = true;
        }
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, v: u8) -> u8 {
        self.images[v as usize - 1]
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// `self` after `other`: `v -> self(other(v))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&v| self.apply(v)).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        Permutation { images: inv }
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = self.compose(&p);
            k += 1;
        }
        k
    }

    pub fn map_set(&self, s: VertexSet) -> VertexSet {
        s.iter().fold(VertexSet::EMPTY, |acc, v| acc.with(self.apply(v)))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

/// Automorphism group as generators plus structural invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFingerprint {
    pub order: usize,
    pub generators: Vec<Permutation>,
    pub transitive: bool,
    pub abelian: bool,
    pub cyclic: bool,
    /// Orbit sizes on the vertices, descending.
    pub orbit_sizes: Vec<usize>,
}

struct Search<'a> {
    facets: &'a [u16],
    best: Vec<u32>,
    have_best: bool,
    epoch: u64,
    collect_all: bool,
    optimal: Vec<[u8; 16]>,
    cur: Vec<u32>,
}

fn pack(known: u32, unknown: usize) -> u32 {
    let mut key = 0u32;
    let mut m = known;
    while m != 0 {
        key = (key << 5) | m.trailing_zeros();
        m &= m - 1;
    }
    for _ in 0..unknown {
        key = (key << 5) | UNKNOWN;
    }
    key
}

fn next_permutation(xs: &mut [u8]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

impl<'a> Search<'a> {
    fn new(facets: &'a [u16], collect_all: bool) -> Self {
        Search {
            facets,
            best: Vec::with_capacity(facets.len()),
            have_best: false,
            epoch: 0,
            collect_all,
            optimal: Vec::new(),
            cur: Vec::with_capacity(facets.len()),
        }
    }

    fn run(&mut self) {
        let mut label = [0u8; 16];
        self.rec(&mut label, 1, 0, true);
    }

    /// `less`: the emitted prefix is already strictly below the best list.
    fn rec(&mut self, label: &mut [u8; 16], next: u8, used: u128, less: bool) {
        let depth = self.cur.len();
        if depth == self.facets.len() {
            if less || !self.have_best {
                self.best.clear();
                self.best.extend_from_slice(&self.cur);
                self.have_best = true;
                self.epoch += 1;
                self.optimal.clear();
                self.optimal.push(*label);
            } else if self.collect_all {
                self.optimal.push(*label);
            }
            return;
        }

        let mut min_key = u32::MAX;
        let mut ties: [u8; MAX_FACETS] = [0; MAX_FACETS];
        let mut nties = 0usize;
        let mut min_known = 0u32;
        let mut min_unknown = 0usize;
        for (i, &f) in self.facets.iter().enumerate() {
            if used & (1u128 << i) != 0 {
                continue;
            }
            let mut known = 0u32;
            let mut unknown = 0usize;
            let mut m = f;
            while m != 0 {
                let b = m.trailing_zeros() as usize;
                m &= m - 1;
                match label[b] {
                    0 => unknown += 1,
                    l => known |= 1 << l,
                }
            }
            let key = pack(known, unknown);
            if key < min_key {
                min_key = key;
                nties = 0;
                min_known = known;
                min_unknown = unknown;
            }
            if key == min_key {
                ties[nties] = i as u8;
                nties += 1;
            }
        }

        let mut emitted_known = min_known;
        for l in next..next + min_unknown as u8 {
            emitted_known |= 1 << l;
        }
        let emitted = pack(emitted_known, 0);
        let mut child_less = less || !self.have_best;
        if !child_less {
            match emitted.cmp(&self.best[depth]) {
                std::cmp::Ordering::Greater => return,
                std::cmp::Ordering::Less => child_less = true,
                std::cmp::Ordering::Equal => {}
            }
        }

        self.cur.push(emitted);
        for &t in &ties[..nties] {
            let i = t as usize;
            let f = self.facets[i];
            let mut unknown: Vec<u8> = (0..16u8)
                .filter(|&b| f & (1 << b) != 0 && label[b as usize] == 0)
                .collect();
            loop {
                for (k, &b) in unknown.iter().enumerate() {
                    label[b as usize] = next + k as u8;
                }
                let epoch = self.epoch;
                self.rec(label, next + unknown.len() as u8, used | (1u128 << i), child_less);
                if self.epoch != epoch {
                    // the new best runs through this node's prefix
                    child_less = false;
                }
                for &b in &unknown {
                    label[b as usize] = 0;
                }
                if !next_permutation(&mut unknown) {
                    break;
                }
            }
        }
        self.cur.pop();
    }
}

fn compact_masks(k: &Complex) -> (Vec<u16>, Vec<u8>) {
    let (c, old) = k.compacted();
    (c.facets().iter().map(|f| f.bits()).collect(), old)
}

fn form_from_label(k: &Complex, masks: &[u16], label: &[u8; 16]) -> CanonicalForm {
    let mut facets: Vec<VertexSet> = masks
        .iter()
        .map(|&m| {
            (0..16).filter(|b| m & (1 << b) != 0).fold(VertexSet::EMPTY, |s, b| s.with(label[b]))
        })
        .collect();
    facets.sort_unstable();
    CanonicalForm { dim: k.dim(), n: k.n(), facets }
}

/// The canonical form together with one canonical labeling, given as the
/// new label of each vertex of `k` (indexed by position in `k`'s sorted
/// vertex list).
pub fn canonical_labeling(k: &Complex) -> (CanonicalForm, Vec<u8>) {
    let (masks, _) = compact_masks(k);
    assert!(masks.len() <= MAX_FACETS, "too many facets for canonical labeling");
    if masks.is_empty() {
        return (CanonicalForm { dim: k.dim(), n: 0, facets: Vec::new() }, Vec::new());
    }
    let mut s = Search::new(&masks, false);
    s.run();
    let label = s.optimal[0];
    (form_from_label(k, &masks, &label), label[..k.n()].to_vec())
}

pub fn canonical_form(k: &Complex) -> CanonicalForm {
    canonical_labeling(k).0
}

/// Cheap relabeling-invariant vertex colours: degree in the 1-skeleton and
/// the sorted degree sequence of the vertex link, refined by neighbourhood
/// colour multisets until the partition is stable. Indexed by position in
/// the sorted vertex list.
pub fn vertex_invariants(k: &Complex) -> Vec<u64> {
    let verts: Vec<u8> = k.vertex_set().iter().collect();
    let mut adj = [VertexSet::EMPTY; 17];
    for f in k.facets() {
        for v in f.iter() {
            adj[v as usize] = adj[v as usize] | f.without(v);
        }
    }
    let mut colour: Vec<u64> = verts
        .iter()
        .map(|&v| {
            let mut link_degrees: Vec<usize> = adj[v as usize]
                .iter()
                .map(|w| {
                    let edge = VertexSet::from_labels(&[v, w]);
                    k.facets()
                        .iter()
                        .filter(|f| edge.is_subset(**f))
                        .fold(VertexSet::EMPTY, |a, &f| a | (f - edge))
                        .len()
                })
                .collect();
            link_degrees.sort_unstable();
            let star = k.facets().iter().filter(|f| f.contains(v)).count();
            mix(&[adj[v as usize].len() as u64, star as u64], &link_degrees)
        })
        .collect();
    let index_of = |v: u8| verts.iter().position(|&w| w == v).unwrap();
    let mut classes = count_classes(&colour);
    loop {
        let next: Vec<u64> = verts
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let mut around: Vec<usize> =
                    adj[v as usize].iter().map(|w| colour[index_of(w)] as usize).collect();
                around.sort_unstable();
                mix(&[colour[i]], &around)
            })
            .collect();
        let c = count_classes(&next);
        colour = next;
        if c == classes {
            return colour;
        }
        classes = c;
    }
}

fn mix(head: &[u64], tail: &[usize]) -> u64 {
    // FNV-1a over the words
    let mut h: u64 = 0xcbf29ce484222325;
    for x in head.iter().copied().chain(tail.iter().map(|&t| t as u64)) {
        h ^= x;
        h = h.wrapping_mul(0x100000001b3);
        h ^= h >> 29;
    }
    h
}

fn count_classes(c: &[u64]) -> usize {
    c.iter().collect::<HashSet<_>>().len()
}

pub fn are_isomorphic(a: &Complex, b: &Complex) -> bool {
    if a.dim() != b.dim() || a.n() != b.n() || a.facets().len() != b.facets().len() {
        return false;
    }
    if a.f_vector() != b.f_vector() {
        return false;
    }
    let mut ia = vertex_invariants(a);
    let mut ib = vertex_invariants(b);
    ia.sort_unstable();
    ib.sort_unstable();
    if ia != ib {
        return false;
    }
    canonical_form(a) == canonical_form(b)
}

/// Every vertex permutation of `1..=n` mapping the facet set of the
/// compacted complex onto itself.
pub fn automorphisms(k: &Complex) -> Vec<Permutation> {
    let (masks, _) = compact_masks(k);
    let n = k.n();
    if masks.is_empty() {
        return vec![Permutation::identity(0)];
    }
    let mut s = Search::new(&masks, true);
    s.run();
    // optimal labelings λ satisfy λ(K) = C, so λ0⁻¹ ∘ λ fixes K
    let to_perm = |l: &[u8; 16]| Permutation::from_images(l[..n].to_vec());
    let l0_inv = to_perm(&s.optimal[0]).inverse();
    let mut out: Vec<Permutation> = s.optimal.iter().map(|l| l0_inv.compose(&to_perm(l))).collect();
    out.sort();
    out
}

/// Closure of a generating set under composition.
pub fn generate_group(n: usize, generators: &[Permutation]) -> Vec<Permutation> {
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(p) = queue.pop() {
        for g in generators {
            let q = g.compose(&p);
            if seen.insert(q.clone()) {
                queue.push(q);
            }
        }
    }
    let mut out: Vec<Permutation> = seen.into_iter().collect();
    out.sort();
    out
}

pub fn fingerprint_from_elements(n: usize, elements: &[Permutation]) -> GroupFingerprint {
    let order = elements.len();
    let mut generators: Vec<Permutation> = Vec::new();
    let mut closure: HashSet<Permutation> = HashSet::from([Permutation::identity(n)]);
    for g in elements {
        if !closure.contains(g) {
            generators.push(g.clone());
            closure = generate_group(n, &generators).into_iter().collect();
            if closure.len() == order {
                break;
            }
        }
    }
    let abelian = generators
        .iter()
        .all(|a| generators.iter().all(|b| a.compose(b) == b.compose(a)));
    let cyclic = abelian && elements.iter().any(|g| g.order() == order);

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for g in &generators {
        for v in 0..n {
            let (a, b) = (find(&mut parent, v), find(&mut parent, g.images[v] as usize - 1));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..n {
        *sizes.entry(find(&mut parent, v)).or_default() += 1;
    }
    let mut orbit_sizes: Vec<usize> = sizes.into_values().collect();
    orbit_sizes.sort_unstable_by(|a, b| b.cmp(a));
    GroupFingerprint {
        order,
        generators,
        transitive: orbit_sizes == [n],
        abelian,
        cyclic,
        orbit_sizes,
    }
}

pub fn automorphism_group(k: &Complex) -> GroupFingerprint {
    fingerprint_from_elements(k.n(), &automorphisms(k))
}

/// Number of complexes with a non-trivial automorphism group, and the
/// histogram group order -> number of complexes.
pub fn nontrivial_group_census(complexes: &[Complex]) -> (usize, BTreeMap<usize, usize>) {
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for k in complexes {
        *hist.entry(automorphisms(k).len()).or_default() += 1;
    }
    let nontrivial = hist.iter().filter(|(&o, _)| o > 1).map(|(_, &c)| c).sum();
    (nontrivial, hist)
}
