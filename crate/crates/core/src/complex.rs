//! Pure simplicial complexes over at most 16 vertex labels.
//!
//! Vertex labels are `u8` values in `1..=16`; label `v` occupies bit `v - 1`
//! of a [`VertexSet`]. Faces are never stored: they are regenerated from the
//! facet list whenever a predicate needs them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use crate::error::{Error, Result};
use crate::topo;

pub const MAX_VERTICES: usize = 16;

/// A set of vertex labels packed into a bitmask.
///
/// The ordering is the lexicographic order of the ascending label sequences,
/// so sorting facets by `Ord` gives the usual lex order of facet lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u16);

/// A facet is just the vertex set of a maximal face.
pub type Facet = VertexSet;

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u16) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u16 {
        self.0
    }

    /// Panics on labels outside `1..=16`.
    pub fn from_labels(labels: &[u8]) -> Self {
        labels.iter().fold(VertexSet::EMPTY, |s, &v| s.with(v))
    }

    pub fn singleton(v: u8) -> Self {
        VertexSet::EMPTY.with(v)
    }

    /// `{1, ..., n}`.
    pub fn range(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        VertexSet(((1u32 << n) - 1) as u16)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: u8) -> bool {
        (1..=16).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub fn with(self, v: u8) -> Self {
        assert!((1..=16).contains(&v), "vertex label {v} out of range");
        VertexSet(self.0 | (1 << (v - 1)))
    }

    pub fn without(self, v: u8) -> Self {
        VertexSet(self.0 & !(1 << (v - 1)))
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<u8> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as u8 + 1)
    }

    pub fn max(self) -> Option<u8> {
        (self.0 != 0).then(|| 16 - self.0.leading_zeros() as u8)
    }

    /// Labels in ascending order.
    pub fn iter(self) -> Labels {
        Labels(self.0)
    }

    /// Zero-based position of `v` in the ascending label sequence.
    pub fn position(self, v: u8) -> usize {
        (self.0 & ((1u16 << (v - 1)) - 1)).count_ones() as usize
    }

    /// All subsets with exactly `k` elements, in increasing bitmask order.
    pub fn subsets_of_size(self, k: usize) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut sub: u32 = 0;
        let mut done = false;
        std::iter::from_fn(move || loop {
            if done {
                return None;
            }
            // submask enumeration from 0 upwards
            sub = ((sub | !full as u32) + 1) & full as u32;
            if sub == 0 {
                done = true;
                if k == 0 {
                    return Some(VertexSet::EMPTY);
                }
                return None;
            }
            if sub.count_ones() as usize == k {
                return Some(VertexSet(sub as u16));
            }
        })
    }

    /// The codimension-one faces of this simplex.
    pub fn ridges(self) -> impl Iterator<Item = VertexSet> {
        self.iter().map(move |v| self.without(v))
    }
}

pub struct Labels(u16);

impl Iterator for Labels {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as u8 + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Labels {}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.0 as u32, other.0 as u32);
        if a == b {
            return Ordering::Equal;
        }
        let low = (a ^ b).trailing_zeros();
        let above = !((2u32 << low) - 1);
        // the side holding `low` is smaller unless the other side ends there
        if a & (1 << low) != 0 {
            if b & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if a & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> Self {
        VertexSet(!self.0)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Face counts per dimension, `f0` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FVector(Vec<usize>);

impl FVector {
    pub fn new(counts: Vec<usize>) -> Self {
        FVector(counts)
    }

    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// `f2 = 2 f1 - 2 f0` and `f3 = f1 - f0`, the linear relations every
    /// closed 3-manifold satisfies.
    pub fn satisfies_closed3_relations(&self) -> bool {
        self.0.len() == 4
            && self.get(2) as i64 == 2 * self.get(1) as i64 - 2 * self.get(0) as i64
            && self.get(3) as i64 == self.get(1) as i64 - self.get(0) as i64
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// An immutable pure simplicial complex given by its facets.
///
/// Facets are kept strictly increasing in lex order. Labels are not required
/// to be contiguous (links and stars keep the labels of their parent); use
/// [`Complex::compacted`] to relabel to `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Complex {
    dim: usize,
    vertices: VertexSet,
    facets: Vec<Facet>,
}

impl Complex {
    pub fn new(dim: usize, facets: impl IntoIterator<Item = Facet>) -> Result<Self> {
        let mut facets: Vec<Facet> = facets.into_iter().collect();
        if let Some(bad) = facets.iter().find(|f| f.len() != dim + 1) {
            return Err(Error::InvalidComplex(format!(
                "facet {{{bad}}} does not have {} vertices",
                dim + 1
            )));
        }
        facets.sort_unstable();
        if let Some(w) = facets.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidComplex(format!("duplicate facet {{{}}}", w[0])));
        }
        Ok(Self::from_sorted(dim, facets))
    }

    /// Builds from label lists, inferring the dimension from the first facet.
    pub fn from_lists<L: AsRef<[u8]>>(lists: &[L]) -> Result<Self> {
        let dim = match lists.first() {
            Some(l) if !l.as_ref().is_empty() => l.as_ref().len() - 1,
            _ => return Err(Error::InvalidComplex("no facets".into())),
        };
        for l in lists {
            if l.as_ref().iter().any(|&v| !(1..=16).contains(&v)) {
                return Err(Error::InvalidComplex("vertex label outside 1..16".into()));
            }
        }
        Self::new(dim, lists.iter().map(|l| VertexSet::from_labels(l.as_ref())))
    }

    pub(crate) fn from_sorted(dim: usize, facets: Vec<Facet>) -> Self {
        debug_assert!(facets.windows(2).all(|w| w[0] < w[1]));
        let vertices = facets.iter().fold(VertexSet::EMPTY, |a, &f| a | f);
        Complex { dim, vertices, facets }
    }

    pub fn empty(dim: usize) -> Self {
        Complex { dim, vertices: VertexSet::EMPTY, facets: Vec::new() }
    }

    /// The single simplex on `1..=dim+1`.
    pub fn simplex(dim: usize) -> Self {
        Self::from_sorted(dim, vec![VertexSet::range(dim + 1)])
    }

    /// Boundary of the `(dim+1)`-simplex: all `(dim+1)`-subsets of `1..=dim+2`.
    pub fn simplex_boundary(dim: usize) -> Self {
        let all = VertexSet::range(dim + 2);
        let mut facets: Vec<Facet> = all.ridges().collect();
        facets.sort_unstable();
        Self::from_sorted(dim, facets)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn contains_facet(&self, f: Facet) -> bool {
        self.facets.binary_search(&f).is_ok()
    }

    pub fn contains_face(&self, g: VertexSet) -> bool {
        self.facets.iter().any(|&f| g.is_subset(f))
    }

    /// True when the labels are exactly `1..=n`.
    pub fn is_contiguous(&self) -> bool {
        self.vertices == VertexSet::range(self.n())
    }

    /// Relabels to `1..=n` preserving the relative order of labels. Returns
    /// the relabeled complex and the old label of each new label.
    pub fn compacted(&self) -> (Complex, Vec<u8>) {
        let old: Vec<u8> = self.vertices.iter().collect();
        if self.is_contiguous() {
            return (self.clone(), old);
        }
        let mut map = [0u8; 17];
        for (i, &v) in old.iter().enumerate() {
            map[v as usize] = i as u8 + 1;
        }
        (self.relabeled(|v| map[v as usize]), old)
    }

    /// Applies a label map; the map must be injective on the vertex set.
    pub fn relabeled(&self, map: impl Fn(u8) -> u8) -> Complex {
        let mut facets: Vec<Facet> = self
            .facets
            .iter()
            .map(|f| f.iter().fold(VertexSet::EMPTY, |s, v| s.with(map(v))))
            .collect();
        facets.sort_unstable();
        Complex::from_sorted(self.dim, facets)
    }

    /// All faces with `k + 1` vertices, sorted by bitmask.
    pub fn faces(&self, k: usize) -> Vec<VertexSet> {
        if k > self.dim {
            return Vec::new();
        }
        let mut out: Vec<VertexSet> = self
            .facets
            .iter()
            .flat_map(|f| f.subsets_of_size(k + 1))
            .collect();
        out.sort_unstable_by_key(|s| s.bits());
        out.dedup();
        out
    }

    pub fn f_vector(&self) -> FVector {
        FVector((0..=self.dim).map(|k| self.faces(k).len()).collect())
    }

    /// Number of facets containing each ridge, for every ridge that occurs.
    pub fn ridge_degrees(&self) -> Vec<(VertexSet, usize)> {
        let mut ridges: Vec<VertexSet> = self.facets.iter().flat_map(|f| f.ridges()).collect();
        ridges.sort_unstable_by_key(|s| s.bits());
        let mut out: Vec<(VertexSet, usize)> = Vec::new();
        for r in ridges {
            match out.last_mut() {
                Some((last, c)) if *last == r => *c += 1,
                _ => out.push((r, 1)),
            }
        }
        out
    }

    /// Facet indices incident to each ridge.
    pub fn ridge_incidence(&self) -> HashMap<VertexSet, Vec<usize>> {
        let mut map: HashMap<VertexSet, Vec<usize>> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for r in f.ridges() {
                map.entry(r).or_default().push(i);
            }
        }
        map
    }

    /// Whether the facets are connected through shared ridges.
    pub fn is_strongly_connected(&self) -> bool {
        if self.facets.len() <= 1 {
            return true;
        }
        let inc = self.ridge_incidence();
        let mut seen = vec![false; self.facets.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for r in self.facets[i].ridges() {
                for &j in &inc[&r] {
                    if !seen[j] {
                        seen[j] = true;
                        count += 1;
                        stack.push(j);
                    }
                }
            }
        }
        count == self.facets.len()
    }

    /// Whether the underlying space is connected (facets linked through any
    /// shared vertex).
    pub fn is_connected(&self) -> bool {
        if self.facets.is_empty() {
            return true;
        }
        let mut reached = self.facets[0];
        loop {
            let grown = self
                .facets
                .iter()
                .filter(|f| !f.is_disjoint(reached))
                .fold(reached, |a, &f| a | f);
            if grown == reached {
                return reached == self.vertices;
            }
            reached = grown;
        }
    }

    fn require_dim3(&self) -> Result<()> {
        if self.facets.is_empty() || self.n() <= 1 {
            return Err(Error::Degenerate);
        }
        if self.dim != 3 {
            return Err(Error::WrongDimension { expected: 3, found: self.dim });
        }
        Ok(())
    }

    fn require_vertex(&self, v: u8) -> Result<()> {
        if self.vertices.contains(v) {
            Ok(())
        } else {
            Err(Error::UnusedVertex(v))
        }
    }

    /// Link of a non-maximal face. Labels are kept.
    pub fn link(&self, face: VertexSet) -> Result<Complex> {
        if face.len() > self.dim || !self.contains_face(face) {
            return Err(Error::FaceNotPresent(format!("{{{face}}}")));
        }
        let facets: Vec<Facet> = self
            .facets
            .iter()
            .filter(|f| face.is_subset(**f))
            .map(|&f| f - face)
            .collect();
        Complex::new(self.dim - face.len(), facets)
    }

    pub fn vertex_link(&self, v: u8) -> Result<Complex> {
        self.require_vertex(v)?;
        self.link(VertexSet::singleton(v))
    }

    /// All facets containing `v`.
    pub fn star(&self, v: u8) -> Result<Complex> {
        self.require_vertex(v)?;
        let facets = self.facets.iter().copied().filter(|f| f.contains(v)).collect();
        Ok(Complex::from_sorted(self.dim, facets))
    }

    /// All facets not containing `v`.
    pub fn delete_star(&self, v: u8) -> Result<Complex> {
        self.require_vertex(v)?;
        let facets = self.facets.iter().copied().filter(|f| !f.contains(v)).collect();
        Ok(Complex::from_sorted(self.dim, facets))
    }

    /// Ridges lying in exactly one facet.
    pub fn boundary_complex(&self) -> Result<Complex> {
        if self.dim == 0 {
            return Err(Error::Unsupported("boundary of a 0-complex".into()));
        }
        let mut facets = Vec::new();
        for (r, c) in self.ridge_degrees() {
            match c {
                1 => facets.push(r),
                2 => {}
                _ => return Err(Error::RidgeOverused(format!("{{{r}}}"))),
            }
        }
        facets.sort_unstable();
        Ok(Complex::from_sorted(self.dim - 1, facets))
    }

    /// Every ridge in exactly two facets and the facets strongly connected.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        !self.facets.is_empty()
            && self.ridge_degrees().iter().all(|&(_, c)| c == 2)
            && self.is_strongly_connected()
    }

    pub fn is_closed_pseudomanifold3(&self) -> Result<bool> {
        self.require_dim3()?;
        Ok(self.is_closed_pseudomanifold())
    }

    /// A connected 1-complex in which every vertex has degree two.
    pub fn is_cycle(&self) -> bool {
        self.dim == 1
            && self.facets.len() >= 3
            && self.vertices.iter().all(|v| self.facets.iter().filter(|e| e.contains(v)).count() == 2)
            && self.is_connected()
    }

    /// A connected 1-complex with two endpoints and all other degrees two.
    pub fn is_path(&self) -> bool {
        if self.dim != 1 || self.facets.is_empty() || !self.is_connected() {
            return false;
        }
        let mut ends = 0;
        for v in self.vertices.iter() {
            match self.facets.iter().filter(|e| e.contains(v)).count() {
                1 => ends += 1,
                2 => {}
                _ => return false,
            }
        }
        ends == 2
    }

    pub fn is_sphere2(&self) -> bool {
        self.dim == 2
            && self.facets.len() >= 4
            && self.ridge_degrees().iter().all(|&(_, c)| c == 2)
            && self.vertices.iter().all(|v| self.vertex_link(v).is_ok_and(|l| l.is_cycle()))
            && self.is_connected()
            && self.f_vector().euler_characteristic() == 2
    }

    /// Triangulated disc: a connected 2-manifold with a single boundary cycle
    /// and Euler characteristic one.
    pub fn is_disc2(&self) -> bool {
        if self.dim != 2 || self.facets.is_empty() {
            return false;
        }
        if self.ridge_degrees().iter().any(|&(_, c)| c > 2) {
            return false;
        }
        let links_ok = self
            .vertices
            .iter()
            .all(|v| self.vertex_link(v).is_ok_and(|l| l.is_cycle() || l.is_path()));
        links_ok
            && self.is_connected()
            && self.boundary_complex().is_ok_and(|b| b.is_cycle())
            && self.f_vector().euler_characteristic() == 1
    }

    pub fn is_closed_3manifold(&self) -> Result<bool> {
        if !self.is_closed_pseudomanifold3()? {
            return Ok(false);
        }
        Ok(self
            .vertices
            .iter()
            .all(|v| self.vertex_link(v).is_ok_and(|l| l.is_sphere2())))
    }

    /// Ballness test: a connected 3-manifold with boundary whose boundary is
    /// a 2-sphere and whose reduced homology vanishes.
    pub fn is_ball3(&self) -> Result<bool> {
        self.require_dim3()?;
        if self.ridge_degrees().iter().any(|&(_, c)| c > 2) || !self.is_strongly_connected() {
            return Ok(false);
        }
        let links_ok = self.vertices.iter().all(|v| {
            self.vertex_link(v)
                .is_ok_and(|l| l.is_sphere2() || l.is_disc2())
        });
        if !links_ok {
            return Ok(false);
        }
        let boundary = self.boundary_complex()?;
        if !boundary.is_sphere2() {
            return Ok(false);
        }
        Ok(topo::homology(self).is_acyclic())
    }

    /// Orientability of a closed pseudomanifold of any dimension.
    pub fn is_orientable_pseudomanifold(&self) -> Result<bool> {
        if !self.is_closed_pseudomanifold() {
            return Err(Error::NotPseudomanifold);
        }
        let inc = self.ridge_incidence();
        let mut sign = vec![0i8; self.facets.len()];
        sign[0] = 1;
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            let f = self.facets[i];
            for r in f.ridges() {
                let a = (f - r).min().unwrap();
                let j = *inc[&r].iter().find(|&&j| j != i).unwrap();
                let g = self.facets[j];
                let b = (g - r).min().unwrap();
                let parity = (f.position(a) + g.position(b)) % 2;
                let want = if parity == 0 { -sign[i] } else { sign[i] };
                if sign[j] == 0 {
                    sign[j] = want;
                    stack.push(j);
                } else if sign[j] != want {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_orientable(&self) -> Result<bool> {
        if !self.is_closed_pseudomanifold3()? {
            return Err(Error::NotPseudomanifold);
        }
        self.is_orientable_pseudomanifold()
    }
}

impl fmt::Display for Complex {
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

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex(dim={}, n={}, [{self}])", self.dim, self.n())
    }
}
