//! Backtracking over pure complexes in which every ridge must end up in
//! exactly two facets, shared by the 2- and 3-dimensional enumerations.
//!
//! Vertex `v` occupies bit `v - 1` of a `u16`; ridges and facets are masks.
//! The search always completes the lexicographically smallest open ridge
//! (a ridge lying in exactly one chosen facet), so every closed complex that
//! contains the seed is reached along exactly one path.

use crate::complex::{Complex, VertexSet};

const RIDGE_SPACE: usize = 1 << 16;

/// Why a candidate facet was refused.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    /// Already chosen.
    Present,
    /// Some ridge would lie in three facets.
    RidgeOverused,
    /// Some vertex would exceed the admissible link size.
    LinkTooLarge,
    /// Extends the star of a vertex whose link is already closed.
    ClosedLinkExtended,
    /// More facets than a closed complex on `n` vertices can have.
    TooManyFacets,
}

/// Called whenever a vertex's link has just closed up.
pub trait LinkRule {
    fn closed_link_ok(&self, pc: &PartialComplex, b: usize) -> bool;
}

/// A partial complex: chosen facets, per-ridge usage counts, the open-ridge
/// frontier and per-vertex bookkeeping for the link conditions.
pub struct PartialComplex {
    dim: usize,
    n: usize,
    max_degree: usize,
    max_facets: usize,
    facets: Vec<u16>,
    usage: Box<[u8]>,
    present: Box<[u64]>,
    open: Vec<u16>,
    open_count: [u8; 16],
    facet_count: [u8; 16],
    adj: [u16; 16],
    adj_log: Vec<[u16; 16]>,
}

fn bits(m: u16) -> impl Iterator<Item = usize> {
    let mut m = m;
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}

fn lex_less(a: u16, b: u16) -> bool {
    VertexSet::from_bits(a) < VertexSet::from_bits(b)
}

impl PartialComplex {
    /// `max_degree` bounds the number of neighbours of every vertex.
    pub fn new(dim: usize, n: usize, max_degree: usize, max_facets: usize) -> Self {
        assert!(n <= 16 && (1..=3).contains(&dim));
        PartialComplex {
            dim,
            n,
            max_degree,
            max_facets,
            facets: Vec::with_capacity(max_facets),
            usage: vec![0u8; RIDGE_SPACE].into_boxed_slice(),
            present: vec![0u64; RIDGE_SPACE / 64].into_boxed_slice(),
            open: Vec::with_capacity(128),
            open_count: [0; 16],
            facet_count: [0; 16],
            adj: [0; 16],
            adj_log: Vec::with_capacity(max_facets),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[u16] {
        &self.facets
    }

    pub fn ridge_usage(&self, r: u16) -> u8 {
        self.usage[r as usize]
    }

    pub fn open_ridges(&self) -> &[u16] {
        &self.open
    }

    pub fn degree(&self, b: usize) -> usize {
        self.adj[b].count_ones() as usize
    }

    pub fn neighbours(&self, b: usize) -> u16 {
        self.adj[b]
    }

    pub fn is_used(&self, b: usize) -> bool {
        self.facet_count[b] > 0
    }

    /// The vertex has facets and no open ridge through it.
    pub fn is_closed(&self, b: usize) -> bool {
        self.facet_count[b] > 0 && self.open_count[b] == 0
    }

    fn is_present(&self, f: u16) -> bool {
        self.present[f as usize / 64] & (1 << (f % 64)) != 0
    }

    fn ridges(f: u16) -> impl Iterator<Item = u16> {
        bits(f).map(move |b| f & !(1 << b))
    }

    /// Pruning rules for adding `f` to the current partial complex.
    pub fn check_candidate(&self, f: u16) -> Verdict {
        if self.is_present(f) {
            return Verdict::Present;
        }
        if self.facets.len() >= self.max_facets {
            return Verdict::TooManyFacets;
        }
        if Self::ridges(f).any(|r| self.usage[r as usize] >= 2) {
            return Verdict::RidgeOverused;
        }
        for b in bits(f) {
            if self.is_closed(b) {
                return Verdict::ClosedLinkExtended;
            }
            if (self.adj[b] | (f & !(1 << b))).count_ones() as usize > self.max_degree {
                return Verdict::LinkTooLarge;
            }
        }
        Verdict::Accept
    }

    /// Adds a facet without any checks.
    pub fn add(&mut self, f: u16) {
        debug_assert_eq!(f.count_ones() as usize, self.dim + 1);
        self.adj_log.push(self.adj);
        for b in bits(f) {
            self.adj[b] |= f & !(1 << b);
            self.facet_count[b] += 1;
        }
        for r in Self::ridges(f) {
            let u = &mut self.usage[r as usize];
            *u += 1;
            match *u {
                1 => {
                    self.open.push(r);
                    for b in bits(r) {
                        self.open_count[b] += 1;
                    }
                }
                2 => {
                    let i = self.open.iter().position(|&o| o == r).unwrap();
                    self.open.swap_remove(i);
                    for b in bits(r) {
                        self.open_count[b] -= 1;
                    }
                }
                _ => {}
            }
        }
        self.present[f as usize / 64] |= 1 << (f % 64);
        self.facets.push(f);
    }

    pub fn remove_last(&mut self) {
        let f = self.facets.pop().expect("nothing to remove");
        self.present[f as usize / 64] &= !(1 << (f % 64));
        for r in Self::ridges(f) {
            let u = &mut self.usage[r as usize];
            *u -= 1;
            match *u {
                1 => {
                    self.open.push(r);
                    for b in bits(r) {
                        self.open_count[b] += 1;
                    }
                }
                0 => {
                    let i = self.open.iter().position(|&o| o == r).unwrap();
                    self.open.swap_remove(i);
                    for b in bits(r) {
                        self.open_count[b] -= 1;
                    }
                }
                _ => {}
            }
        }
        for b in bits(f) {
            self.facet_count[b] -= 1;
        }
        self.adj = self.adj_log.pop().unwrap();
    }

    pub fn smallest_open(&self) -> Option<u16> {
        let mut it = self.open.iter().copied();
        let first = it.next()?;
        Some(it.fold(first, |m, r| if lex_less(r, m) { r } else { m }))
    }

    /// Whether some vertex could still close the open ridge `r`.
    pub fn ridge_completable(&self, r: u16) -> bool {
        let mut unused_tried = false;
        for w in 0..self.n {
            if r & (1 << w) != 0 {
                continue;
            }
            if !self.is_used(w) {
                if unused_tried {
                    continue;
                }
                unused_tried = true;
            }
            if self.check_candidate(r | (1 << w)) == Verdict::Accept {
                return true;
            }
        }
        false
    }

    pub fn to_complex(&self) -> Complex {
        Complex::new(self.dim, self.facets.iter().map(|&f| VertexSet::from_bits(f)))
            .expect("partial complexes hold distinct facets of equal size")
    }

    fn all_used(&self) -> bool {
        (0..self.n).all(|b| self.is_used(b))
    }

    /// Adds `f` if it passes the pruning rules, the link rule for every
    /// vertex whose link closes, and (optionally) the look-ahead that every
    /// open ridge can still be completed.
    pub fn try_add<R: LinkRule>(&mut self, f: u16, rule: &R, look_ahead: bool) -> bool {
        if self.check_candidate(f) != Verdict::Accept {
            return false;
        }
        self.add(f);
        let ok = bits(f).all(|b| !self.is_closed(b) || rule.closed_link_ok(self, b))
            && (!look_ahead || self.open.iter().all(|&r| self.ridge_completable(r)));
        if !ok {
            self.remove_last();
        }
        ok
    }

    /// Candidate facets for closing the smallest open ridge. Unused vertices
    /// are interchangeable, so only the smallest one is offered.
    pub fn candidates(&self) -> Vec<u16> {
        let Some(t) = self.smallest_open() else { return Vec::new() };
        let mut out = Vec::new();
        let mut unused_tried = false;
        for w in 0..self.n {
            if t & (1 << w) != 0 {
                continue;
            }
            if !self.is_used(w) {
                if unused_tried {
                    continue;
                }
                unused_tried = true;
            }
            out.push(t | (1 << w));
        }
        out
    }
}

/// Depth-first completion; `emit` sees every closed complex using all `n`
/// vertices.
pub fn search<R: LinkRule, E: FnMut(&PartialComplex)>(
    pc: &mut PartialComplex,
    rule: &R,
    look_ahead: bool,
    emit: &mut E,
) {
    if pc.open.is_empty() {
        if pc.all_used() {
            emit(pc);
        }
        return;
    }
    for f in pc.candidates() {
        if pc.try_add(f, rule, look_ahead) {
            search(pc, rule, look_ahead, emit);
            pc.remove_last();
        }
    }
}

/// Whether a set of edges (2-bit masks) is a single cycle, given that every
/// vertex already has degree two.
pub fn edges_form_one_cycle(edges: &[u16]) -> bool {
    if edges.len() < 3 {
        return false;
    }
    let all = edges.iter().fold(0u16, |a, &e| a | e);
    if all.count_ones() as usize != edges.len() {
        return false;
    }
    let mut reached = edges[0];
    loop {
        let grown = edges.iter().filter(|&&e| e & reached != 0).fold(reached, |a, &e| a | e);
        if grown == reached {
            return reached == all;
        }
        reached = grown;
    }
}

/// Whether a closed set of triangles (each edge in two of them) is a
/// 2-sphere: every vertex link a single cycle, connected, Euler
/// characteristic two.
pub fn triangles_form_sphere(tris: &[u16]) -> bool {
    let all = tris.iter().fold(0u16, |a, &t| a | t);
    let v = all.count_ones() as usize;
    if tris.len() + 4 != 2 * v {
        return false;
    }
    let mut edges: Vec<u16> = Vec::with_capacity(16);
    for a in bits(all) {
        edges.clear();
        edges.extend(tris.iter().filter(|&&t| t & (1 << a) != 0).map(|&t| t & !(1 << a)));
        if !edges_form_one_cycle(&edges) {
            return false;
        }
    }
    let mut reached = tris[0];
    loop {
        let grown = tris.iter().filter(|&&t| t & reached != 0).fold(reached, |a, &t| a | t);
        if grown == reached {
            return reached == all;
        }
        reached = grown;
    }
}
