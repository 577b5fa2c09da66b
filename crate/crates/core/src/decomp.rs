//! Shellability, extendable shellability, vertex-decomposability and
//! constructibility of balls and spheres of dimension 2 to 4.
//!
//! Facet sets of up to 64 facets are handled as `u64` bitsets over facet
//! indices; faces are `u16` vertex masks.

use std::collections::{HashMap, HashSet};

use crate::canon::CanonicalForm;
use crate::complex::{Complex, Facet, VertexSet};
use crate::error::{Error, Result};
use crate::topo::{self, TopoType};

const MAX_FACETS: usize = 64;

/// Whether a complex is treated as a ball or as a sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Ball,
    Sphere,
}

/// Facets in build order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shelling {
    pub order: Vec<Facet>,
}

fn masks(k: &Complex) -> Vec<u16> {
    k.facets().iter().map(|f| f.bits()).collect()
}

fn full(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

fn bit_indices(mut s: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (s != 0).then(|| {
            let i = s.trailing_zeros() as usize;
            s &= s - 1;
            i
        })
    })
}

fn ridge_masks(f: u16) -> impl Iterator<Item = u16> {
    let mut m = f;
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m & m.wrapping_neg();
            m &= m - 1;
            f & !b
        })
    })
}

/// Ridges lying in exactly one facet of the subset, sorted.
fn boundary_ridges(facets: &[u16], state: u64) -> Vec<u16> {
    let mut all: Vec<u16> = bit_indices(state).flat_map(|i| ridge_masks(facets[i])).collect();
    all.sort_unstable();
    let mut out = Vec::with_capacity(all.len());
    let mut i = 0;
    while i < all.len() {
        let mut j = i + 1;
        while j < all.len() && all[j] == all[i] {
            j += 1;
        }
        if j - i == 1 {
            out.push(all[i]);
        }
        i = j;
    }
    out
}

/// Whether facet `f` of the ball spanned by `state` can be removed leaving
/// a ball: its boundary ridges form a nonempty proper subset of its ridges
/// and `f` meets the boundary in nothing beyond their closure.
fn is_free(f: u16, boundary: &[u16]) -> bool {
    // vertices of f whose opposite ridge is on the boundary
    let mut opposite = 0u16;
    for r in ridge_masks(f) {
        if boundary.binary_search(&r).is_ok() {
            opposite |= f & !r;
        }
    }
    let c = opposite.count_ones();
    if c == 0 || c == f.count_ones() {
        return false;
    }
    // a common face g of f and the boundary lies in a boundary ridge of f
    // exactly when some vertex of f outside g has its opposite ridge there
    boundary.iter().all(|&r| {
        let g = r & f;
        g == 0 || (f & !g) & opposite != 0
    })
}

/// Free facets of a ball (removable with a ball remaining).
pub fn free_facets(b: &Complex) -> Result<Vec<Facet>> {
    if b.facets().len() < 2 {
        return Err(Error::SingleFacet);
    }
    if b.facets().len() > MAX_FACETS {
        return Err(Error::Unsupported(format!("more than {MAX_FACETS} facets")));
    }
    let fs = masks(b);
    let boundary = boundary_ridges(&fs, full(fs.len()));
    Ok(b.facets().iter().copied().filter(|f| is_free(f.bits(), &boundary)).collect())
}

/// A ball with at least two facets and no free facet.
pub fn is_strongly_nonshellable(b: &Complex) -> Result<bool> {
    Ok(free_facets(b)?.is_empty())
}

struct Peeler<'a> {
    facets: &'a [u16],
    dead: HashSet<u64>,
    order: Vec<usize>,
}

impl Peeler<'_> {
    fn peel(&mut self, state: u64) -> bool {
        if state.count_ones() == 1 {
            self.order.push(state.trailing_zeros() as usize);
            return true;
        }
        if self.dead.contains(&state) {
            return false;
        }
        let boundary = boundary_ridges(self.facets, state);
        for i in bit_indices(state) {
            if is_free(self.facets[i], &boundary) {
                self.order.push(i);
                if self.peel(state & !(1 << i)) {
                    return true;
                }
                self.order.pop();
            }
        }
        self.dead.insert(state);
        false
    }
}

/// Shelling search without checking that the input is a ball or sphere of
/// the given shape. A sphere is shelled by removing its first facet and
/// shelling the remaining ball.
pub fn find_shelling(k: &Complex, shape: Shape) -> Result<Option<Shelling>> {
    let fs = masks(k);
    if fs.len() > MAX_FACETS {
        return Err(Error::Unsupported(format!("more than {MAX_FACETS} facets")));
    }
    if fs.is_empty() {
        return Err(Error::Degenerate);
    }
    let mut p = Peeler { facets: &fs, dead: HashSet::new(), order: Vec::with_capacity(fs.len()) };
    let start = match shape {
        Shape::Ball => full(fs.len()),
        Shape::Sphere => {
            p.order.push(0);
            full(fs.len()) & !1
        }
    };
    if !p.peel(start) {
        return Ok(None);
    }
    Ok(Some(Shelling { order: p.order.iter().rev().map(|&i| k.facets()[i]).collect() }))
}

/// Decides whether `k` is a ball or a sphere of dimension 2, 3 or 4. In
/// dimension 4 a pseudomanifold with the homology of a point or sphere is
/// accepted.
pub fn shape_of(k: &Complex) -> Result<Shape> {
    let bad = || Error::Unsupported("not a ball or sphere of dimension 2 to 4".into());
    let degrees = k.ridge_degrees();
    if k.facets().is_empty() || degrees.iter().any(|&(_, c)| c > 2) {
        return Err(bad());
    }
    let closed = degrees.iter().all(|&(_, c)| c == 2);
    let ok = match (k.dim(), closed) {
        (2, false) => k.is_disc2(),
        (2, true) => k.is_sphere2(),
        (3, false) => k.is_ball3()?,
        (3, true) => k.is_closed_3manifold()? && topo::classify(k)? == TopoType::S3,
        (4, c) => {
            let h = topo::homology(k);
            k.is_strongly_connected() && if c { h.is_sphere_like() } else { h.is_acyclic() }
        }
        _ => false,
    };
    match (ok, closed) {
        (true, false) => Ok(Shape::Ball),
        (true, true) => Ok(Shape::Sphere),
        _ => Err(bad()),
    }
}

/// A shelling if one exists.
pub fn is_shellable(k: &Complex) -> Result<Option<Shelling>> {
    let shape = shape_of(k)?;
    find_shelling(k, shape)
}

/// Forward check of a shelling: the order is a permutation of the facets and
/// every facet after the first meets the union of its predecessors in a
/// nonempty pure complex of codimension one.
pub fn check_shelling(k: &Complex, s: &Shelling) -> bool {
    let mut sorted = s.order.clone();
    sorted.sort();
    if sorted != k.facets() {
        return false;
    }
    let d = k.dim();
    for j in 1..s.order.len() {
        let f = s.order[j];
        let meets: Vec<VertexSet> = s.order[..j].iter().map(|&g| f & g).filter(|g| !g.is_empty()).collect();
        let ridges: Vec<VertexSet> = meets.iter().copied().filter(|g| g.len() == d).collect();
        if ridges.is_empty() || !meets.iter().all(|g| ridges.iter().any(|r| g.is_subset(*r))) {
            return false;
        }
    }
    true
}

fn attaches_purely(facets: &[u16], placed: u64, f: u16) -> bool {
    let d = f.count_ones() - 1;
    let mut ridges = 0usize;
    let mut meets = [0u16; MAX_FACETS];
    let mut m = 0;
    for i in bit_indices(placed) {
        let g = facets[i] & f;
        if g != 0 {
            ridges += usize::from(g.count_ones() == d);
            meets[m] = g;
            m += 1;
        }
    }
    ridges > 0
        && meets[..m].iter().all(|&g| meets[..m].iter().any(|&r| r.count_ones() == d && g & !r == 0))
}

/// Every partial shelling extends to a full one.
pub fn is_extendably_shellable(b: &Complex) -> Result<bool> {
    let fs = masks(b);
    if fs.len() > MAX_FACETS {
        return Err(Error::Unsupported(format!("more than {MAX_FACETS} facets")));
    }
    let all = full(fs.len());
    // memo: state -> can be completed; every reachable state must complete
    let mut memo: HashMap<u64, bool> = HashMap::new();
    fn completes(fs: &[u16], all: u64, state: u64, memo: &mut HashMap<u64, bool>) -> bool {
        if state == all {
            return true;
        }
        if let Some(&v) = memo.get(&state) {
            return v;
        }
        let mut any = false;
        let mut every = true;
        for i in bit_indices(all & !state) {
            if attaches_purely(fs, state, fs[i]) {
                let ok = completes(fs, all, state | (1 << i), memo);
                any |= ok;
                every &= ok;
            }
        }
        // a reachable dead end anywhere below makes the answer false
        let v = any && every;
        memo.insert(state, v);
        v
    }
    Ok((0..fs.len()).all(|i| completes(&fs, all, 1 << i, &mut memo)))
}

/// Vertex-decomposability: a simplex (or any 0-dimensional complex) is
/// vertex-decomposable; otherwise some vertex `v` has a deletion (faces
/// avoiding `v`) that is pure of full dimension and vertex-decomposable and
/// a vertex-decomposable link.
pub fn is_vertex_decomposable(k: &Complex) -> bool {
    let mut memo = HashMap::new();
    let mut fs = masks(k);
    fs.sort_unstable();
    vd(&fs, &mut memo)
}

fn vd(fs: &[u16], memo: &mut HashMap<Vec<u16>, bool>) -> bool {
    if fs.len() <= 1 || fs[0].count_ones() <= 1 {
        return true;
    }
    if let Some(&v) = memo.get(fs) {
        return v;
    }
    let verts = fs.iter().fold(0u16, |a, &f| a | f);
    let mut result = false;
    for b in 0..16 {
        let v = 1u16 << b;
        if verts & v == 0 {
            continue;
        }
        let del: Vec<u16> = fs.iter().copied().filter(|f| f & v == 0).collect();
        if del.is_empty() {
            continue;
        }
        let link: Vec<u16> = fs.iter().filter(|&&f| f & v != 0).map(|&f| f & !v).collect();
        // every face avoiding v must lie in a facet avoiding v
        if !link.iter().all(|&r| del.iter().any(|&g| r & !g == 0)) {
            continue;
        }
        let mut link = link;
        link.sort_unstable();
        if vd(&link, memo) && vd(&del, memo) {
            result = true;
            break;
        }
    }
    memo.insert(fs.to_vec(), result);
    result
}

/// Witness that a ball is constructible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constructibility {
    Shellable(Shelling),
    /// Two shellable balls meeting in a triangulated disc.
    Split { first: Complex, second: Complex, interface: Complex },
}

fn faces_of(facets: impl Iterator<Item = u16>) -> HashSet<u16> {
    let mut out = HashSet::new();
    for f in facets {
        let mut s = f;
        // all nonempty submasks of f
        loop {
            if s != 0 {
                out.insert(s);
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & f;
        }
    }
    out
}

fn facet_adjacency(fs: &[u16]) -> Vec<u64> {
    let d = fs.first().map_or(0, |f| f.count_ones() - 1);
    let mut adj = vec![0u64; fs.len()];
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            if (fs[i] & fs[j]).count_ones() == d {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    adj
}

fn connected_within(adj: &[u64], set: u64) -> bool {
    if set == 0 {
        return false;
    }
    let mut reached = set & set.wrapping_neg();
    loop {
        let grown = bit_indices(reached).fold(reached, |a, i| a | (adj[i] & set));
        if grown == reached {
            return reached == set;
        }
        reached = grown;
    }
}

/// Connected facet subsets containing facet 0, excluding the whole set.
fn connected_subsets(adj: &[u64], all: u64) -> Vec<u64> {
    let mut out = Vec::new();
    // grow from {0}, only adding facets from the extension set; facets
    // excluded on a branch stay excluded below it
    fn grow(adj: &[u64], all: u64, set: u64, frontier: u64, excluded: u64, out: &mut Vec<u64>) {
        if set != all {
            out.push(set);
        }
        let mut cand = frontier & !excluded;
        let mut excl = excluded;
        while cand != 0 {
            let i = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let nset = set | (1 << i);
            let nfront = (frontier | adj[i]) & all & !nset;
            grow(adj, all, nset, nfront, excl, out);
            excl |= 1 << i;
        }
    }
    grow(adj, all, 1, adj[0] & all, 0, &mut out);
    out
}

fn sub_complex(k: &Complex, set: u64) -> Complex {
    Complex::new(k.dim(), bit_indices(set).map(|i| k.facets()[i])).expect("subsets of facets are valid")
}

/// A constructibility certificate for a 3-ball: a shelling, or a split into
/// two shellable balls meeting in a disc. Splits are tried in order of
/// increasing interface size. `None` does not prove non-constructibility.
pub fn constructibility_certificate(b: &Complex) -> Result<Option<Constructibility>> {
    if !b.is_ball3()? {
        return Err(Error::NotABall);
    }
    if let Some(s) = find_shelling(b, Shape::Ball)? {
        return Ok(Some(Constructibility::Shellable(s)));
    }
    let fs = masks(b);
    let all = full(fs.len());
    let adj = facet_adjacency(&fs);
    let mut splits: Vec<(u32, u64)> = connected_subsets(&adj, all)
        .into_iter()
        .filter(|&s| connected_within(&adj, all & !s))
        .map(|s| {
            let cut: u32 = bit_indices(s).map(|i| (adj[i] & all & !s).count_ones()).sum();
            (cut, s)
        })
        .collect();
    splits.sort_unstable();
    for (_, s) in splits {
        let rest = all & !s;
        let interface_tris: Vec<u16> = bit_indices(s)
            .flat_map(|i| bit_indices(adj[i] & rest).map(move |j| (i, j)))
            .map(|(i, j)| fs[i] & fs[j])
            .collect();
        let shared = faces_of(bit_indices(s).map(|i| fs[i]));
        let other = faces_of(bit_indices(rest).map(|i| fs[i]));
        let pinched = shared.intersection(&other).any(|&g| !interface_tris.iter().any(|&t| g & !t == 0));
        if pinched {
            continue;
        }
        let interface = Complex::new(2, interface_tris.iter().map(|&t| VertexSet::from_bits(t)))?;
        if !interface.is_disc2() {
            continue;
        }
        let (first, second) = (sub_complex(b, s), sub_complex(b, rest));
        if !first.is_ball3()? || !second.is_ball3()? {
            continue;
        }
        if find_shelling(&first, Shape::Ball)?.is_some() && find_shelling(&second, Shape::Ball)?.is_some() {
            return Ok(Some(Constructibility::Split { first, second, interface }));
        }
    }
    Ok(None)
}

/// Non-shellable members of a ball census.
#[derive(Clone, Debug, Default)]
pub struct NonShellableReport {
    pub balls: Vec<CanonicalForm>,
    pub strongly: Vec<bool>,
    /// facet count -> number of non-shellable balls
    pub facet_histogram: std::collections::BTreeMap<usize, usize>,
}

impl NonShellableReport {
    pub fn strongly_count(&self) -> usize {
        self.strongly.iter().filter(|&&s| s).count()
    }

    /// The non-shellable balls with the fewest facets.
    pub fn smallest(&self) -> Vec<&CanonicalForm> {
        let min = self.balls.iter().map(|b| b.facets().len()).min();
        self.balls.iter().filter(|b| Some(b.facets().len()) == min).collect()
    }
}

pub fn nonshellable_census(balls: &[CanonicalForm]) -> Result<NonShellableReport> {
    use rayon::prelude::*;
    let flags: Vec<bool> = balls
        .par_iter()
        .map(|b| find_shelling(&b.to_complex(), Shape::Ball).map(|s| s.is_none()))
        .collect::<Result<_>>()?;
    let mut report = NonShellableReport::default();
    for (b, _) in balls.iter().zip(flags).filter(|(_, bad)| *bad) {
        let k = b.to_complex();
        report.strongly.push(is_strongly_nonshellable(&k)?);
        *report.facet_histogram.entry(k.facets().len()).or_default() += 1;
        report.balls.push(b.clone());
    }
    Ok(report)
}
