//! Bistellar (Pachner) moves on closed 3-manifolds and a randomized
//! reduction towards the boundary of the 4-simplex.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Complex, VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    OneFour,
    TwoThree,
    ThreeTwo,
    FourOne,
}

impl MoveKind {
    /// Dimension of the face the move is centred on.
    pub fn pivot_dim(self) -> usize {
        match self {
            MoveKind::OneFour => 3,
            MoveKind::TwoThree => 2,
            MoveKind::ThreeTwo => 1,
            MoveKind::FourOne => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BistellarMove {
    pub kind: MoveKind,
    pub pivot: VertexSet,
}

struct Incidence {
    facets: HashSet<VertexSet>,
    triangles: HashSet<VertexSet>,
    edges: HashSet<VertexSet>,
    // facets through each triangle / edge / vertex
    around: HashMap<VertexSet, Vec<VertexSet>>,
}

impl Incidence {
    fn new(k: &Complex) -> Self {
        let mut inc = Incidence {
            facets: k.facets().iter().copied().collect(),
            triangles: HashSet::new(),
            edges: HashSet::new(),
            around: HashMap::new(),
        };
        for &f in k.facets() {
            for size in 1..=3 {
                for g in f.subsets_of_size(size) {
                    inc.around.entry(g).or_default().push(f);
                    match size {
                        3 => {
                            inc.triangles.insert(g);
                        }
                        2 => {
                            inc.edges.insert(g);
                        }
                        _ => {}
                    }
                }
            }
        }
        inc
    }

    /// Union of the facets around `g`, minus `g`.
    fn link_vertices(&self, g: VertexSet) -> VertexSet {
        self.around[&g].iter().fold(VertexSet::EMPTY, |a, &f| a | f) - g
    }
}

/// All legal moves on a closed 3-manifold. A move is legal when the star it
/// replaces is the standard one and the replacement introduces no face that
/// already exists.
pub fn applicable_moves(k: &Complex) -> Vec<BistellarMove> {
    let inc = Incidence::new(k);
    let mut out = Vec::new();
    if k.vertex_set().max().unwrap_or(0) < MAX_VERTICES as u8 {
        out.extend(k.facets().iter().map(|&f| BistellarMove { kind: MoveKind::OneFour, pivot: f }));
    }
    let mut triangles: Vec<VertexSet> = inc.triangles.iter().copied().collect();
    triangles.sort_unstable();
    for t in triangles {
        let opposite = inc.link_vertices(t);
        if inc.around[&t].len() == 2 && !inc.edges.contains(&opposite) {
            out.push(BistellarMove { kind: MoveKind::TwoThree, pivot: t });
        }
    }
    let mut edges: Vec<VertexSet> = inc.edges.iter().copied().collect();
    edges.sort_unstable();
    for e in edges {
        if inc.around[&e].len() == 3 {
            let link = inc.link_vertices(e);
            if link.len() == 3 && !inc.triangles.contains(&link) {
                out.push(BistellarMove { kind: MoveKind::ThreeTwo, pivot: e });
            }
        }
    }
    for v in k.vertex_set().iter() {
        let s = VertexSet::singleton(v);
        if inc.around[&s].len() == 4 {
            let link = inc.link_vertices(s);
            if link.len() == 4 && !inc.facets.contains(&link) {
                out.push(BistellarMove { kind: MoveKind::FourOne, pivot: s });
            }
        }
    }
    out
}

/// Applies a move; after a 4→1 move the labels are compacted.
pub fn apply_move(k: &Complex, m: &BistellarMove) -> Result<Complex> {
    let inc = Incidence::new(k);
    let illegal = || Error::Unsupported(format!("illegal move {m:?}"));
    let (remove, add): (Vec<VertexSet>, Vec<VertexSet>) = match m.kind {
        MoveKind::OneFour => {
            if !inc.facets.contains(&m.pivot) {
                return Err(illegal());
            }
            let fresh = k.vertex_set().max().unwrap_or(0) + 1;
            if fresh as usize > MAX_VERTICES {
                return Err(illegal());
            }
            (vec![m.pivot], m.pivot.ridges().map(|r| r.with(fresh)).collect())
        }
        MoveKind::TwoThree => {
            let around = inc.around.get(&m.pivot).ok_or_else(illegal)?;
            let opp = inc.link_vertices(m.pivot);
            if m.pivot.len() != 3 || around.len() != 2 || inc.edges.contains(&opp) {
                return Err(illegal());
            }
            (around.clone(), m.pivot.ridges().map(|e| e | opp).collect())
        }
        MoveKind::ThreeTwo => {
            let around = inc.around.get(&m.pivot).ok_or_else(illegal)?;
            let link = inc.link_vertices(m.pivot);
            if m.pivot.len() != 2 || around.len() != 3 || link.len() != 3 || inc.triangles.contains(&link) {
                return Err(illegal());
            }
            (around.clone(), m.pivot.iter().map(|v| link.with(v)).collect())
        }
        MoveKind::FourOne => {
            let around = inc.around.get(&m.pivot).ok_or_else(illegal)?;
            let link = inc.link_vertices(m.pivot);
            if m.pivot.len() != 1 || around.len() != 4 || link.len() != 4 || inc.facets.contains(&link) {
                return Err(illegal());
            }
            (around.clone(), vec![link])
        }
    };
    let facets = k
        .facets()
        .iter()
        .copied()
        .filter(|f| !remove.contains(f))
        .chain(add);
    let out = Complex::new(3, facets)?;
    Ok(if m.kind == MoveKind::FourOne { out.compacted().0 } else { out })
}

/// Schedule for [`reduce`].
///
/// Reducing moves (4→1, then 3→2) are taken greedily; with probability
/// `worsen_accept` a random 2→3 move is taken instead. At a local minimum a
/// random 2→3 move is forced and further 2→3 moves follow while a coin with
/// bias `plateau_accept` keeps coming up.
#[derive(Clone, Debug)]
pub struct ReduceConfig {
    pub budget: usize,
    pub plateau_accept: f64,
    pub worsen_accept: f64,
}

impl Default for ReduceConfig {
    fn default() -> Self {
        ReduceConfig { budget: 10_000, plateau_accept: 0.3, worsen_accept: 0.05 }
    }
}

#[derive(Clone, Debug)]
pub struct Reduction {
    /// Smallest complex reached, by (f0, f3).
    pub complex: Complex,
    pub moves: usize,
    /// The reduction reached the boundary of the 4-simplex.
    pub certified_sphere: bool,
}

fn size_key(k: &Complex) -> (usize, usize) {
    (k.n(), k.facets().len())
}

pub fn reduce(k: &Complex, config: &ReduceConfig, seed: u64) -> Result<Reduction> {
    if !k.is_closed_3manifold()? {
        return Err(Error::Unsupported("bistellar reduction needs a closed 3-manifold".into()));
    }
    let target = Complex::simplex_boundary(3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = k.compacted().0;
    let mut best = cur.clone();
    let mut moves = 0;
    let mut heating = 0usize;
    while moves < config.budget && best != target {
        let legal = applicable_moves(&cur);
        let of = |kind: MoveKind| legal.iter().filter(move |m| m.kind == kind).copied().collect::<Vec<_>>();
        let (four_one, three_two, two_three) = (of(MoveKind::FourOne), of(MoveKind::ThreeTwo), of(MoveKind::TwoThree));
        let reducing = if four_one.is_empty() { &three_two } else { &four_one };
        let chosen = if heating > 0 && !two_three.is_empty() {
            heating -= 1;
            two_three.choose(&mut rng)
        } else if !reducing.is_empty() && !(rng.gen_bool(config.worsen_accept) && !two_three.is_empty()) {
            reducing.choose(&mut rng)
        } else if !two_three.is_empty() {
            while rng.gen_bool(config.plateau_accept) {
                heating += 1;
            }
            two_three.choose(&mut rng)
        } else {
            legal.choose(&mut rng)
        };
        let Some(m) = chosen else { break };
        cur = apply_move(&cur, m)?;
        moves += 1;
        if size_key(&cur) < size_key(&best) {
            best = cur.clone();
        }
    }
    let certified_sphere = best == target;
    Ok(Reduction { complex: best, moves, certified_sphere })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topo::homology;

    fn count(moves: &[BistellarMove], kind: MoveKind) -> usize {
        moves.iter().filter(|m| m.kind == kind).count()
    }

    #[test]
    fn moves_on_simplex_boundary() {
        let s = Complex::simplex_boundary(3);
        let moves = applicable_moves(&s);
        assert_eq!(count(&moves, MoveKind::OneFour), 5);
        assert_eq!(count(&moves, MoveKind::TwoThree), 0);
        assert_eq!(count(&moves, MoveKind::ThreeTwo), 0);
        assert_eq!(count(&moves, MoveKind::FourOne), 0);
    }

    #[test]
    fn one_four_then_four_one() {
        let s = Complex::simplex_boundary(3);
        let m = BistellarMove { kind: MoveKind::OneFour, pivot: s.facets()[0] };
        let t = apply_move(&s, &m).unwrap();
        assert_eq!(t.n(), 6);
        assert!(t.is_closed_3manifold().unwrap());
        let inverse: Vec<_> = applicable_moves(&t).into_iter().filter(|m| m.kind == MoveKind::FourOne).collect();
        // the new vertex and the vertex opposite the subdivided facet both
        // have the boundary of a tetrahedron as link
        assert_eq!(inverse.len(), 2);
        assert!(inverse.iter().any(|m| m.pivot == VertexSet::singleton(6)));
        for m in &inverse {
            assert_eq!(apply_move(&t, m).unwrap(), s);
        }
    }

    #[test]
    fn two_three_round_trip() {
        let s = Complex::simplex_boundary(3);
        let t = apply_move(&s, &BistellarMove { kind: MoveKind::OneFour, pivot: s.facets()[0] }).unwrap();
        let two_three: Vec<_> = applicable_moves(&t).into_iter().filter(|m| m.kind == MoveKind::TwoThree).collect();
        assert!(!two_three.is_empty());
        let u = apply_move(&t, &two_three[0]).unwrap();
        assert_eq!(u.facets().len(), t.facets().len() + 1);
        assert!(u.is_closed_3manifold().unwrap());
        let back: Vec<_> = applicable_moves(&u).into_iter().filter(|m| m.kind == MoveKind::ThreeTwo).collect();
        assert!(back.iter().any(|m| apply_move(&u, m).unwrap() == t));
    }

    #[test]
    fn illegal_moves_are_rejected() {
        let s = Complex::simplex_boundary(3);
        let bad = BistellarMove { kind: MoveKind::TwoThree, pivot: VertexSet::from_labels(&[1, 2, 3]) };
        assert!(apply_move(&s, &bad).is_err());
        let bad = BistellarMove { kind: MoveKind::FourOne, pivot: VertexSet::singleton(1) };
        assert!(apply_move(&s, &bad).is_err());
    }

    #[test]
    fn reduce_is_identity_on_simplex_boundary() {
        let s = Complex::simplex_boundary(3);
        let r = reduce(&s, &ReduceConfig::default(), 7).unwrap();
        assert_eq!(r.moves, 0);
        assert!(r.certified_sphere);
    }

    #[test]
    fn random_walk_and_reduce_back() {
        let s = Complex::simplex_boundary(3);
        let mut rng = ChaCha8Rng::seed_from_u64(2006);
        let mut k = s.clone();
        let h = homology(&s);
        for _ in 0..50 {
            let legal = applicable_moves(&k);
            let m = legal.choose(&mut rng).unwrap();
            k = apply_move(&k, m).unwrap();
            assert_eq!(homology(&k), h);
        }
        assert!(k.is_closed_3manifold().unwrap());
        let r = reduce(&k, &ReduceConfig::default(), 1).unwrap();
        assert!(r.certified_sphere, "stuck at {:?}", r.complex.f_vector());
    }
}
