//! Triangulated 2-spheres with 4 to 9 vertices, generated with the same
//! star-seeded backtracking kernel as the 3-manifolds one dimension down.
//! They form the catalog of admissible vertex links.

use std::collections::{HashMap, HashSet};

use crate::canon::{canonical_form, CanonicalForm};
use crate::enum3::kernel::{search, LinkRule, PartialComplex};
use crate::error::{Error, Result};

pub const MIN_LINK_VERTICES: usize = 4;
pub const MAX_LINK_VERTICES: usize = 9;

/// A closed vertex link of a surface must be one cycle.
struct CycleRule;

impl LinkRule for CycleRule {
    fn closed_link_ok(&self, pc: &PartialComplex, b: usize) -> bool {
        let vb = 1u16 << b;
        let edges: Vec<u16> = pc.facets().iter().filter(|&&f| f & vb != 0).map(|&f| f & !vb).collect();
        crate::enum3::kernel::edges_form_one_cycle(&edges)
    }
}

/// All triangulated 2-spheres on exactly `n` vertices, up to isomorphism,
/// sorted by canonical form.
pub fn enumerate_2spheres(n: usize) -> Result<Vec<CanonicalForm>> {
    if !(MIN_LINK_VERTICES..=MAX_LINK_VERTICES).contains(&n) {
        return Err(Error::OutOfRange(n));
    }
    let mut found: HashSet<CanonicalForm> = HashSet::new();
    // seed: vertex 1 with the largest degree k, its link the cycle 2..k+1
    for k in (3..n).rev() {
        let mut pc = PartialComplex::new(2, n, k, 2 * n - 4);
        for i in 0..k {
            let a = 1 + i;
            let b = 1 + (i + 1) % k;
            pc.add(1 | (1 << a) | (1 << b));
        }
        search(&mut pc, &CycleRule, false, &mut |pc: &PartialComplex| {
            let k = pc.to_complex();
            debug_assert!(k.is_sphere2());
            found.insert(canonical_form(&k));
        });
    }
    let mut out: Vec<CanonicalForm> = found.into_iter().collect();
    out.sort();
    Ok(out)
}

/// The 2-spheres with 4..=9 vertices ordered by decreasing vertex count,
/// ties broken by canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkCatalog {
    spheres: Vec<CanonicalForm>,
    index: HashMap<CanonicalForm, usize>,
}

impl LinkCatalog {
    /// Orders and validates a set of spheres.
    pub fn from_spheres(mut spheres: Vec<CanonicalForm>) -> Result<Self> {
        spheres.sort_by(|a, b| b.n().cmp(&a.n()).then_with(|| a.cmp(b)));
        spheres.dedup();
        for s in &spheres {
            if s.dim() != 2 || !s.to_complex().is_sphere2() || canonical_form(&s.to_complex()) != *s {
                return Err(Error::MissingCatalog);
            }
        }
        let index = spheres.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Ok(LinkCatalog { spheres, index })
    }

    pub fn spheres(&self) -> &[CanonicalForm] {
        &self.spheres
    }

    pub fn len(&self) -> usize {
        self.spheres.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spheres.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&CanonicalForm> {
        self.spheres.get(i)
    }

    /// Position of a canonical form in catalog order.
    pub fn index_of(&self, form: &CanonicalForm) -> Option<usize> {
        self.index.get(form).copied()
    }

    /// Covers every vertex count from 4 up to `max_n`.
    pub fn covers(&self, max_n: usize) -> bool {
        (MIN_LINK_VERTICES..=max_n).all(|n| self.spheres.iter().any(|s| s.n() == n))
    }
}

pub fn build_link_catalog() -> LinkCatalog {
    let spheres = (MIN_LINK_VERTICES..=MAX_LINK_VERTICES)
        .flat_map(|n| enumerate_2spheres(n).expect("n in range"))
        .collect();
    LinkCatalog::from_spheres(spheres).expect("generated spheres are canonical")
}

/// Relabels a link form for use as a seed: apex 1, link vertices `2..=k+1`.
pub(crate) fn seed_star(link: &CanonicalForm) -> Vec<u16> {
    link.facets().iter().map(|t| 1 | (t.bits() << 1)).collect()
}
