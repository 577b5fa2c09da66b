//! Brute-force reference implementations, independent of the library's
//! search code.

#![allow(dead_code)]

use std::collections::HashSet;

use tricensus::canon::canonical_form;
use tricensus::{CanonicalForm, Complex, VertexSet};

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut p: Vec<u8> = (0..n as u8).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { return out };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

fn relabel(k: &Complex, perm: &[u8]) -> Vec<VertexSet> {
    let mut fs: Vec<VertexSet> = k
        .facets()
        .iter()
        .map(|f| VertexSet::from_labels(&f.iter().map(|v| perm[v as usize - 1] + 1).collect::<Vec<_>>()))
        .collect();
    fs.sort();
    fs
}

/// Lexicographically least relabeled facet list over all `n!` relabelings
/// of a complex on labels `1..=n`.
pub fn brute_canonical(k: &Complex) -> Vec<VertexSet> {
    permutations(k.n()).iter().map(|p| relabel(k, p)).min().unwrap()
}

/// Number of relabelings fixing the facet set.
pub fn brute_automorphism_count(k: &Complex) -> usize {
    permutations(k.n()).iter().filter(|p| relabel(k, p) == k.facets()).count()
}

/// Closed 3-manifolds on exactly the labels `1..=n`, found by deciding each
/// tetrahedron in lexicographic order; a triangle whose last containing
/// tetrahedron has been decided must lie in zero or two chosen ones.
/// Returns the isomorphism classes and the number of labeled complexes.
pub fn brute_3manifolds(n: usize) -> (HashSet<CanonicalForm>, usize) {
    let tets: Vec<VertexSet> = VertexSet::range(n).subsets_of_size(4).collect();
    // for each tetrahedron, the triangles whose last tetrahedron it is
    let mut last_of: Vec<Vec<VertexSet>> = vec![Vec::new(); tets.len()];
    for t in VertexSet::range(n).subsets_of_size(3) {
        let last = tets.iter().rposition(|f| t.is_subset(*f)).unwrap();
        last_of[last].push(t);
    }
    struct St<'a> {
        tets: &'a [VertexSet],
        last_of: &'a [Vec<VertexSet>],
        usage: std::collections::HashMap<VertexSet, u8>,
        chosen: Vec<VertexSet>,
        n: usize,
        classes: HashSet<CanonicalForm>,
        labeled: usize,
    }
    fn rec(s: &mut St, i: usize) {
        if i == s.tets.len() {
            if s.chosen.is_empty() {
                return;
            }
            let k = Complex::new(3, s.chosen.iter().copied()).unwrap();
            if k.n() == s.n && k.vertex_set() == VertexSet::range(s.n) && k.is_closed_3manifold().unwrap() {
                s.labeled += 1;
                s.classes.insert(canonical_form(&k));
            }
            return;
        }
        let t = s.tets[i];
        for take in [false, true] {
            if take {
                if t.ridges().any(|r| s.usage.get(&r).copied().unwrap_or(0) >= 2) {
                    continue;
                }
                for r in t.ridges() {
                    *s.usage.entry(r).or_insert(0) += 1;
                }
                s.chosen.push(t);
            }
            let ok = s.last_of[i].iter().all(|r| s.usage.get(r).copied().unwrap_or(0) != 1);
            if ok {
                rec(s, i + 1);
            }
            if take {
                s.chosen.pop();
                for r in t.ridges() {
                    *s.usage.get_mut(&r).unwrap() -= 1;
                }
            }
        }
    }
    let mut s = St {
        tets: &tets,
        last_of: &last_of,
        usage: Default::default(),
        chosen: Vec::new(),
        n,
        classes: HashSet::new(),
        labeled: 0,
    };
    rec(&mut s, 0);
    (s.classes, s.labeled)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Orbit-counting identity: labeled complexes = sum over classes of n!/|Aut|.
pub fn labeled_count(classes: &[Complex]) -> usize {
    classes.iter().map(|k| factorial(k.n()) / brute_automorphism_count(k)).sum()
}
