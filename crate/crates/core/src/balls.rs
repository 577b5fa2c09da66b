//! Triangulated 3-balls from 3-spheres by deleting vertex stars, and back by
//! coning off the boundary.

use rayon::prelude::*;

use crate::canon::{canonical_form, CanonicalForm};
use crate::census::{CensusRecord, DedupeStore};
use crate::complex::{Complex, VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::topo::{self, TopoType};

fn star_deletions(s: &Complex) -> Vec<Complex> {
    s.vertex_set()
        .iter()
        .map(|v| s.delete_star(v).expect("v is a vertex").compacted().0)
        .collect()
}

/// The balls `S - star(v)`, relabeled to `1..n-1`, one per vertex `v`.
pub fn balls_from_sphere(s: &Complex) -> Result<Vec<Complex>> {
    if !s.is_closed_3manifold()? || topo::classify(s)? != TopoType::S3 {
        return Err(Error::NotASphere);
    }
    Ok(star_deletions(s))
}

/// Isomorphism classes of 3-balls with `m` vertices, from the census of
/// `(m+1)`-vertex 3-manifolds. Sorted by facet count, then by form.
pub fn enumerate_balls(m: usize, census: &[CensusRecord]) -> Result<Vec<CanonicalForm>> {
    if !(4..MAX_VERTICES).contains(&m) {
        return Err(Error::OutOfRange(m));
    }
    let spheres: Vec<&CensusRecord> = census.iter().filter(|r| r.topo_type == Some(TopoType::S3)).collect();
    if spheres.is_empty() || census.iter().any(|r| r.form.n() != m + 1) {
        return Err(Error::MissingCensus(m + 1));
    }
    let mut store = DedupeStore::from_env();
    for chunk in spheres.chunks(4096) {
        let forms: Vec<Vec<CanonicalForm>> = chunk
            .par_iter()
            .map(|r| star_deletions(&r.complex()).iter().map(canonical_form).collect())
            .collect();
        for f in forms.iter().flatten() {
            store.insert(f)?;
        }
    }
    let mut out = store.into_vec()?;
    out.sort_by(|a, b| a.facets().len().cmp(&b.facets().len()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn add_apex(facets: impl IntoIterator<Item = VertexSet>, apex: u8) -> impl Iterator<Item = VertexSet> {
    facets.into_iter().map(move |f| f.with(apex))
}

fn fresh_apex(k: &Complex) -> Result<u8> {
    let apex = k.vertex_set().max().unwrap_or(0) + 1;
    if apex as usize > MAX_VERTICES {
        return Err(Error::Unsupported(format!("more than {MAX_VERTICES} vertices")));
    }
    Ok(apex)
}

/// `B ∪ (v * ∂B)` for a fresh vertex `v`.
pub fn sphere_from_ball(b: &Complex) -> Result<Complex> {
    if !b.is_ball3()? {
        return Err(Error::NotABall);
    }
    let apex = fresh_apex(b)?;
    let boundary = b.boundary_complex()?;
    Complex::new(3, b.facets().iter().copied().chain(add_apex(boundary.facets().iter().copied(), apex)))
}

/// Join with a fresh apex vertex.
pub fn cone(k: &Complex) -> Result<Complex> {
    let apex = fresh_apex(k)?;
    Complex::new(k.dim() + 1, add_apex(k.facets().iter().copied(), apex))
}

/// `#S(m+1) <= #B(m) <= (m+1) #S(m+1)`.
pub fn sandwich_check(m: usize, spheres: usize, balls: usize) -> bool {
    spheres <= balls && balls <= (m + 1) * spheres
}
