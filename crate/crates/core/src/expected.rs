//! Published census values used by `verify` and the acceptance suite.

use crate::topo::TopoType;

/// Manifolds per vertex count: (n, all, S3, S2xS1, twisted).
pub const MANIFOLDS: [(usize, usize, usize, usize, usize); 6] = [
    (5, 1, 1, 0, 0),
    (6, 2, 2, 0, 0),
    (7, 5, 5, 0, 0),
    (8, 39, 39, 0, 0),
    (9, 1297, 1296, 0, 1),
    (10, 249015, 247882, 518, 615),
];

/// Ten-vertex manifolds per f-vector: (f-vector, all, S3, S2xS1, twisted).
pub const TEN_VERTEX_ROWS: [([usize; 4], usize, usize, usize, usize); 16] = [
    ([10, 30, 40, 20], 30, 30, 0, 0),
    ([10, 31, 42, 21], 124, 124, 0, 0),
    ([10, 32, 44, 22], 385, 385, 0, 0),
    ([10, 33, 46, 23], 952, 952, 0, 0),
    ([10, 34, 48, 24], 2142, 2142, 0, 0),
    ([10, 35, 50, 25], 4340, 4340, 0, 0),
    ([10, 36, 52, 26], 8106, 8106, 0, 0),
    ([10, 37, 54, 27], 13853, 13853, 0, 0),
    ([10, 38, 56, 28], 21702, 21702, 0, 0),
    ([10, 39, 58, 29], 30526, 30526, 0, 0),
    ([10, 40, 60, 30], 38575, 38553, 10, 12),
    ([10, 41, 62, 31], 42581, 42498, 37, 46),
    ([10, 42, 64, 32], 39526, 39299, 110, 117),
    ([10, 43, 66, 33], 28439, 28087, 162, 190),
    ([10, 44, 68, 34], 14057, 13745, 145, 167),
    ([10, 45, 70, 35], 3677, 3540, 54, 83),
];

/// One row of the symmetry group table.
#[derive(Clone, Copy, Debug)]
pub struct GroupRow {
    pub n: usize,
    pub kind: TopoType,
    pub order: usize,
    pub name: &'static str,
    pub transitive: bool,
    pub types: usize,
}

const fn row(n: usize, kind: TopoType, order: usize, name: &'static str, transitive: bool, types: usize) -> GroupRow {
    GroupRow { n, kind, order, name, transitive, types }
}

use TopoType::{S2twistS1 as TW, S2xS1 as SS, S3};

pub const GROUP_ROWS: &[GroupRow] = &[
    row(5, S3, 120, "S5", true, 1),
    row(6, S3, 48, "O*=Z2 wr S3", false, 1),
    row(6, S3, 72, "S3 wr Z2", true, 1),
    row(7, S3, 8, "D4", false, 2),
    row(7, S3, 12, "S3xZ2", false, 1),
    row(7, S3, 14, "D7", true, 1),
    row(7, S3, 48, "D4xD3", false, 1),
    row(8, S3, 1, "trivial", false, 3),
    row(8, S3, 2, "Z2", false, 13),
    row(8, S3, 4, "Z4", false, 1),
    row(8, S3, 4, "Z2xZ2", false, 9),
    row(8, S3, 6, "S3", false, 1),
    row(8, S3, 8, "Z2^3", false, 1),
    row(8, S3, 8, "D4", false, 3),
    row(8, S3, 12, "S3xZ2", false, 4),
    row(8, S3, 16, "D4xZ2", false, 1),
    row(8, S3, 16, "D8", true, 1),
    row(8, S3, 60, "D5xD3", false, 1),
    row(8, S3, 384, "Z2 wr S4", true, 1),
    row(9, S3, 1, "trivial", false, 889),
    row(9, S3, 2, "Z2", false, 319),
    row(9, S3, 3, "Z3", false, 3),
    row(9, S3, 4, "Z4", false, 6),
    row(9, S3, 4, "Z2xZ2", false, 46),
    row(9, S3, 6, "Z6", false, 1),
    row(9, S3, 6, "S3", false, 8),
    row(9, S3, 8, "Z2^3", false, 3),
    row(9, S3, 8, "D4", false, 5),
    row(9, S3, 12, "S3xZ2", false, 10),
    row(9, S3, 18, "D9", true, 1),
    row(9, S3, 24, "T*=S4", false, 3),
    row(9, S3, 72, "D6xD3", false, 1),
    row(9, S3, 80, "D5xD4", false, 1),
    row(9, TW, 18, "D9", true, 1),
    row(10, S3, 1, "trivial", false, 240683),
    row(10, S3, 2, "Z2", false, 6675),
    row(10, S3, 3, "Z3", false, 10),
    row(10, S3, 4, "Z4", false, 53),
    row(10, S3, 4, "Z2xZ2", false, 358),
    row(10, S3, 5, "Z5", false, 1),
    row(10, S3, 6, "Z6", false, 1),
    row(10, S3, 6, "S3", false, 19),
    row(10, S3, 8, "Z2^3", false, 15),
    row(10, S3, 8, "D4", false, 31),
    row(10, S3, 10, "Z10", true, 1),
    row(10, S3, 10, "D5", false, 4),
    row(10, S3, 12, "S3xZ2", false, 15),
    row(10, S3, 16, "D4xZ2", false, 3),
    row(10, S3, 20, "D10", true, 1),
    row(10, S3, 20, "AGL(1,5)", true, 2),
    row(10, S3, 24, "T*=S4", false, 1),
    row(10, S3, 24, "D6xZ2", false, 2),
    row(10, S3, 48, "O*=Z2 wr S3", false, 2),
    row(10, S3, 84, "D7xD3", false, 1),
    row(10, S3, 96, "D6xD4", false, 1),
    row(10, S3, 120, "S5", false, 1),
    row(10, S3, 200, "D5 wr Z2", true, 1),
    row(10, S3, 240, "S5xZ2", true, 1),
    row(10, SS, 1, "trivial", false, 420),
    row(10, SS, 2, "Z2", false, 95),
    row(10, SS, 10, "Z10", true, 1),
    row(10, SS, 16, "<2,2,2>_2", false, 1),
    row(10, SS, 20, "D10", true, 1),
    row(10, TW, 1, "trivial", false, 469),
    row(10, TW, 2, "Z2", false, 127),
    row(10, TW, 4, "Z2xZ2", false, 14),
    row(10, TW, 8, "D4", false, 2),
    row(10, TW, 10, "D5", false, 1),
    row(10, TW, 20, "D10", true, 2),
];

/// Group order -> number of types, for one vertex count and type.
pub fn group_order_histogram(n: usize, kind: TopoType) -> std::collections::BTreeMap<usize, usize> {
    let mut out = std::collections::BTreeMap::new();
    for r in GROUP_ROWS.iter().filter(|r| r.n == n && r.kind == kind) {
        *out.entry(r.order).or_insert(0) += r.types;
    }
    out
}

/// Manifolds with a nontrivial symmetry group, for n = 5..10.
pub const NONTRIVIAL_GROUPS: [usize; 6] = [1, 1, 5, 36, 408, 7443];

/// Stated total of vertex-transitive manifolds with at most ten vertices.
pub const VERTEX_TRANSITIVE_TOTAL: usize = 14;

/// Balls per vertex count: (m, all, non-shellable, not vertex-decomposable).
pub const BALLS: [(usize, usize, usize, usize); 6] = [
    (4, 1, 0, 0),
    (5, 3, 0, 0),
    (6, 12, 0, 0),
    (7, 167, 0, 2),
    (8, 10211, 0, 628),
    (9, 2451305, 29, 623819),
];

pub const NONSHELLABLE_STRONGLY: usize = 10;
pub const NONSHELLABLE_FACETS: std::ops::RangeInclusive<usize> = 18..=22;
pub const NONSHELLABLE_SMALLEST_FVECTOR: [usize; 4] = [9, 33, 43, 18];

/// Spheres that are not vertex-decomposable: (n, count).
pub const NOT_VD_SPHERES: [(usize, usize); 6] = [(5, 0), (6, 0), (7, 0), (8, 0), (9, 7), (10, 14468)];
pub const NOT_VD_SPHERE_FACETS_9: [usize; 7] = [25, 26, 26, 27, 27, 27, 27];

/// The smallest sphere that is not vertex-decomposable.
pub const NOT_VD_25: [[u8; 4]; 25] = [
    [1, 2, 3, 4], [1, 2, 3, 5], [1, 2, 4, 6], [1, 2, 5, 7], [1, 2, 6, 8],
    [1, 2, 7, 8], [1, 3, 4, 5], [1, 4, 5, 6], [1, 5, 6, 7], [1, 6, 7, 9],
    [1, 6, 8, 9], [1, 7, 8, 9], [2, 3, 4, 8], [2, 3, 5, 9], [2, 3, 7, 8],
    [2, 3, 7, 9], [2, 4, 6, 8], [2, 5, 7, 9], [3, 4, 5, 8], [3, 5, 6, 8],
    [3, 5, 6, 9], [3, 6, 8, 9], [3, 7, 8, 9], [4, 5, 6, 8], [5, 6, 7, 9],
];

/// Triangulated 2-spheres with 4..=9 vertices.
pub const LINK_CATALOG_SIZE: usize = 73;
