//! Smith normal form over the integers.
//!
//! The elimination runs on `i64` with checked arithmetic and is repeated on
//! `BigInt` only if an intermediate value overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, ToPrimitive};

trait Scalar: Clone + Integer + Signed + CheckedMul + CheckedSub + CheckedAdd {}
impl<T: Clone + Integer + Signed + CheckedMul + CheckedSub + CheckedAdd> Scalar for T {}

/// `row[dst] -= q * row[src]` over the columns `from..`.
fn row_axpy<T: Scalar>(m: &mut [Vec<T>], dst: usize, src: usize, q: &T, from: usize) -> Option<()> {
    for j in from..m[0].len() {
        if m[src][j].is_zero() {
            continue;
        }
        let v = m[dst][j].checked_sub(&q.checked_mul(&m[src][j])?)?;
        m[dst][j] = v;
    }
    Some(())
}

fn col_axpy<T: Scalar>(m: &mut [Vec<T>], dst: usize, src: usize, q: &T, from: usize) -> Option<()> {
    for row in m.iter_mut().skip(from) {
        if row[src].is_zero() {
            continue;
        }
        let v = row[dst].checked_sub(&q.checked_mul(&row[src])?)?;
        row[dst] = v;
    }
    Some(())
}

/// Nonzero diagonal of the Smith normal form (absolute values, each dividing
/// the next), or `None` on overflow.
fn diagonal<T: Scalar>(mut m: Vec<Vec<T>>) -> Option<Vec<T>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !m[i][t].is_zero() {
                    let q = m[i][t].div_floor(&m[t][t]);
                    row_axpy(&mut m, i, t, &q, t)?;
                    if !m[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !m[t][j].is_zero() {
                    let q = m[t][j].div_floor(&m[t][t]);
                    col_axpy(&mut m, j, t, &q, t)?;
                    if !m[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // a remainder is smaller than the pivot: move it into place
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.1 == t {
                    m.swap(t, best.0);
                } else {
                    for row in m.iter_mut() {
                        row.swap(t, best.1);
                    }
                }
                continue;
            }
            let p = m[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let minus_one = T::zero() - T::one();
                    row_axpy(&mut m, t, i, &minus_one, t)?;
                }
                None => break,
            }
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    Some(out)
}

/// Invariant factors of an integer matrix given as rows.
pub fn invariant_factors(rows: &[Vec<i64>]) -> Vec<BigInt> {
    if rows.is_empty() || rows[0].is_empty() {
        return Vec::new();
    }
    if let Some(d) = diagonal(rows.to_vec()) {
        return d.into_iter().map(BigInt::from).collect();
    }
    let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    diagonal(big).expect("BigInt arithmetic does not overflow")
}

/// Rank and the invariant factors greater than one (as `u64`).
pub fn rank_and_torsion(rows: &[Vec<i64>]) -> (usize, Vec<u64>) {
    let d = invariant_factors(rows);
    let torsion = d
        .iter()
        .filter(|x| **x > BigInt::from(1))
        .map(|x| x.to_u64().expect("torsion coefficient fits in u64"))
        .collect();
    (d.len(), torsion)
}
