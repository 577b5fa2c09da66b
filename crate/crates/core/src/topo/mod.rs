//! Integral homology, topological type of closed 3-manifolds on at most ten
//! vertices, bistellar moves and Walkup's edge bounds.

mod bistellar;
pub mod snf;

use std::fmt;
use std::str::FromStr;

pub use bistellar::{apply_move, applicable_moves, reduce, BistellarMove, MoveKind, ReduceConfig, Reduction};

use crate::complex::{Complex, VertexSet};
use crate::error::{Error, Result};

/// Betti numbers and torsion coefficients per dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<u64>>,
}

impl HomologyProfile {
    /// Same homology as a point.
    pub fn is_acyclic(&self) -> bool {
        self.betti.first() == Some(&1)
            && self.betti[1..].iter().all(|&b| b == 0)
            && self.torsion.iter().all(|t| t.is_empty())
    }

    pub fn is_sphere_like(&self) -> bool {
        let d = self.betti.len() - 1;
        self.torsion.iter().all(|t| t.is_empty())
            && self.betti.iter().enumerate().all(|(i, &b)| b == usize::from(i == 0 || i == d))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// Boundary matrix of `C_k -> C_{k-1}`: rows indexed by `lower`, columns by
/// `upper`, both sorted by bitmask.
fn boundary_matrix(lower: &[VertexSet], upper: &[VertexSet]) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; upper.len()]; lower.len()];
    for (j, s) in upper.iter().enumerate() {
        for (pos, v) in s.iter().enumerate() {
            let face = s.without(v);
            let i = lower
                .binary_search_by_key(&face.bits(), |f| f.bits())
                .expect("faces are closed under taking subsets");
            m[i][j] = if pos % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// Integral simplicial homology through Smith normal forms of the boundary
/// matrices.
pub fn homology(k: &Complex) -> HomologyProfile {
    let d = k.dim();
    let faces: Vec<Vec<VertexSet>> = (0..=d).map(|i| k.faces(i)).collect();
    // rank[i], torsion[i] of the boundary map out of dimension i
    let mut rank = vec![0usize; d + 2];
    let mut tors = vec![Vec::new(); d + 2];
    for i in 1..=d {
        let (r, t) = snf::rank_and_torsion(&boundary_matrix(&faces[i - 1], &faces[i]));
        rank[i] = r;
        tors[i] = t;
    }
    let betti = (0..=d).map(|i| faces[i].len() - rank[i] - rank[i + 1]).collect();
    let torsion = (0..=d).map(|i| tors[i + 1].clone()).collect();
    HomologyProfile { betti, torsion }
}

/// The topological types occurring among closed 3-manifolds with at most ten
/// vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TopoType {
    S3,
    S2xS1,
    S2twistS1,
    Other,
}

impl TopoType {
    pub const ALL: [TopoType; 4] = [TopoType::S3, TopoType::S2xS1, TopoType::S2twistS1, TopoType::Other];

    pub fn as_str(self) -> &'static str {
        match self {
            TopoType::S3 => "S3",
            TopoType::S2xS1 => "S2xS1",
            TopoType::S2twistS1 => "S2twistS1",
            TopoType::Other => "other",
        }
    }

    /// γ in Walkup's bound `f1 >= 4 f0 + γ`. For anything outside the three
    /// types the weakest remaining value (that of RP³) is used.
    pub fn walkup_gamma(self) -> i64 {
        match self {
            TopoType::S3 => -10,
            TopoType::S2xS1 | TopoType::S2twistS1 => 0,
            TopoType::Other => 7,
        }
    }
}

impl fmt::Display for TopoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TopoType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TopoType::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Parse { line: 0, msg: format!("unknown type {s:?}") })
    }
}

/// Homology-and-orientability classifier for closed 3-manifolds.
pub fn classify(k: &Complex) -> Result<TopoType> {
    if !k.is_closed_pseudomanifold3()? {
        return Err(Error::NotPseudomanifold);
    }
    Ok(classify_profile(&homology(k), k.is_orientable()?))
}

pub fn classify_profile(h: &HomologyProfile, orientable: bool) -> TopoType {
    let no_torsion = |i: usize| h.torsion[i].is_empty();
    if h.is_sphere_like() {
        TopoType::S3
    } else if orientable && h.betti == [1, 1, 1, 1] && (0..4).all(no_torsion) {
        TopoType::S2xS1
    } else if !orientable && h.betti == [1, 1, 0, 0] && no_torsion(1) && h.torsion[2] == [2] {
        TopoType::S2twistS1
    } else {
        TopoType::Other
    }
}

/// `f1 >= 4 n + γ(t)`.
pub fn walkup_check(k: &Complex, t: TopoType) -> bool {
    let f = k.f_vector();
    f.get(1) as i64 >= 4 * f.get(0) as i64 + t.walkup_gamma()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tests::{octahedron, suspension, torus7};

    #[test]
    fn sphere_homology() {
        let s = Complex::simplex_boundary(3);
        let h = homology(&s);
        assert_eq!(h.betti, vec![1, 0, 0, 1]);
        assert!(h.is_sphere_like());
        assert_eq!(classify(&s).unwrap(), TopoType::S3);
        assert!(homology(&Complex::simplex(3)).is_acyclic());
    }

    #[test]
    fn torus_homology() {
        let h = homology(&torus7());
        assert_eq!(h.betti, vec![1, 2, 1]);
        assert_eq!(h.euler_characteristic(), torus7().f_vector().euler_characteristic());
    }

    #[test]
    fn euler_poincare_on_suspensions() {
        for k in [suspension(&octahedron()), suspension(&torus7())] {
            assert_eq!(homology(&k).euler_characteristic(), k.f_vector().euler_characteristic());
        }
        // ΣT² has H1 = 0, H2 = Z², H3 = Z
        assert_eq!(homology(&suspension(&torus7())).betti, vec![1, 0, 2, 1]);
    }

    #[test]
    fn projective_plane_torsion() {
        // 6-vertex RP²
        let rp2 = Complex::from_lists(&[
            [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
            [2, 3, 5], [3, 4, 6], [2, 4, 5], [3, 5, 6], [2, 4, 6],
        ])
        .unwrap();
        let h = homology(&rp2);
        assert_eq!(h.betti, vec![1, 0, 0]);
        assert_eq!(h.torsion[1], vec![2]);
        assert!(!rp2.is_orientable_pseudomanifold().unwrap());
    }

    #[test]
    fn walkup() {
        let s = Complex::simplex_boundary(3);
        assert!(walkup_check(&s, TopoType::S3));
        assert!(!walkup_check(&s, TopoType::S2xS1));
        assert_eq!("S2twistS1".parse::<TopoType>().unwrap(), TopoType::S2twistS1);
    }
}
