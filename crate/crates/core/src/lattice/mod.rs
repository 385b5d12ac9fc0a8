//! Integer sublattices of `Z^p` and the commensurability obstruction.
//!
//! Bases are stored as rows in Hermite normal form: rows in echelon form,
//! each pivot positive, and every entry above a pivot reduced into
//! `[0, pivot)`. Two generating sets span the same lattice iff their
//! normal forms are equal.

mod obstruction;

pub use obstruction::{
    binomial, obstruction, tubular_obstruction, CommensurabilityClass, IntersectionData,
    ObstructionReport, PresentationError, TubularEdge, TubularPresentation, HIGHEST_HYPOTHESIS,
};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("vector {index} has {got} entries, ambient rank is {expected}")]
    DimensionMismatch { index: usize, expected: usize, got: usize },
    #[error("ambient ranks differ: {0} and {1}")]
    AmbientMismatch(usize, usize),
    #[error("integer overflow")]
    Overflow,
    #[error("lattice {index} has rank {got}, expected {expected}")]
    RankMismatch { index: usize, expected: usize, got: usize },
    #[error("vector {0:?} is not primitive")]
    NotPrimitive(Vec<i64>),
    #[error("zero vector in presentation")]
    ZeroVector,
}

/// A sublattice of `Z^p`, with its basis rows in Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Sublattice {
    pub ambient: usize,
    pub basis: Vec<Vec<i64>>,
}

impl Sublattice {
    pub fn zero(p: usize) -> Self {
        Sublattice {
            ambient: p,
            basis: Vec::new(),
        }
    }

    pub fn full(p: usize) -> Self {
        Sublattice {
            ambient: p,
            basis: (0..p).map(|i| (0..p).map(|j| (i == j) as i64).collect()).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Whether `v` is an integer combination of the basis rows.
    pub fn contains(&self, v: &[i64]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for row in &self.basis {
            let c = row.iter().position(|&x| x != 0).expect("nonzero basis row");
            let piv = row[c] as i128;
            if w[c] % piv != 0 {
                return false;
            }
            let q = w[c] / piv;
            for (x, &r) in w.iter_mut().zip(row) {
                *x -= q * r as i128;
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// Index in `Z^p` for full-rank lattices (the product of the pivots).
    pub fn index(&self) -> Option<u128> {
        if self.rank() != self.ambient {
            return None;
        }
        self.basis
            .iter()
            .enumerate()
            .try_fold(1u128, |acc, (i, r)| acc.checked_mul(r[i] as u128))
    }
}

/// Integer row reduction. Rows are brought to echelon form using pivots in
/// the first `pivot_cols` columns only; operations act on whole rows.
/// Returns the number of pivot rows, which come first.
fn echelon(rows: &mut [Vec<i128>], pivot_cols: usize) -> Result<usize, LatticeError> {
    let n = rows.len();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == n {
            break;
        }
        loop {
            // Smallest nonzero |entry| in column c among rows r.. becomes the pivot.
            let best = (r..n)
                .filter(|&i| rows[i][c] != 0)
                .min_by_key(|&i| rows[i][c].unsigned_abs());
            let Some(b) = best else { break };
            rows.swap(r, b);
            let mut done = true;
            for i in (r + 1)..n {
                if rows[i][c] != 0 {
                    let q = rows[i][c].div_euclid(rows[r][c]);
                    let (top, rest) = rows.split_at_mut(r + 1);
                    sub_multiple(&mut rest[i - r - 1], &top[r], q)?;
                    if rows[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c] == 0 {
            continue;
        }
        if rows[r][c] < 0 {
            for x in rows[r].iter_mut() {
                *x = -*x;
            }
        }
        let piv = rows[r][c];
        for i in 0..r {
            let q = rows[i][c].div_euclid(piv);
            if q != 0 {
                let (top, rest) = rows.split_at_mut(r);
                sub_multiple(&mut top[i], &rest[0], q)?;
            }
        }
        r += 1;
    }
    Ok(r)
}

fn sub_multiple(target: &mut [i128], row: &[i128], q: i128) -> Result<(), LatticeError> {
    for (t, &x) in target.iter_mut().zip(row) {
        *t = q
            .checked_mul(x)
            .and_then(|m| t.checked_sub(m))
            .filter(|v| v.unsigned_abs() < 1u128 << 100)
            .ok_or(LatticeError::Overflow)?;
    }
    Ok(())
}

fn to_i64_rows(rows: &[Vec<i128>]) -> Result<Vec<Vec<i64>>, LatticeError> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|&x| i64::try_from(x).map_err(|_| LatticeError::Overflow))
                .collect()
        })
        .collect()
}

/// Hermite normal form of the integer span of `vectors` in `Z^p`.
pub fn hnf(p: usize, vectors: &[Vec<i64>]) -> Result<Sublattice, LatticeError> {
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != p {
            return Err(LatticeError::DimensionMismatch {
                index: i,
                expected: p,
                got: v.len(),
            });
        }
    }
    let mut rows: Vec<Vec<i128>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| x as i128).collect())
        .collect();
    let r = echelon(&mut rows, p)?;
    rows.truncate(r);
    Ok(Sublattice {
        ambient: p,
        basis: to_i64_rows(&rows)?,
    })
}

/// Vectors lying in both lattices.
pub fn intersect(a: &Sublattice, b: &Sublattice) -> Result<Sublattice, LatticeError> {
    if a.ambient != b.ambient {
        return Err(LatticeError::AmbientMismatch(a.ambient, b.ambient));
    }
    let p = a.ambient;
    let (r1, r2) = (a.rank(), b.rank());
    // Left kernel of [A; -B]: rows (x, y) with x A = y B.
    let width = p + r1 + r2;
    let mut rows: Vec<Vec<i128>> = Vec::with_capacity(r1 + r2);
    for (i, v) in a.basis.iter().enumerate() {
        let mut row = vec![0i128; width];
        for (j, &x) in v.iter().enumerate() {
            row[j] = x as i128;
        }
        row[p + i] = 1;
        rows.push(row);
    }
    for (i, v) in b.basis.iter().enumerate() {
        let mut row = vec![0i128; width];
        for (j, &x) in v.iter().enumerate() {
            row[j] = -(x as i128);
        }
        row[p + r1 + i] = 1;
        rows.push(row);
    }
    let r = echelon(&mut rows, p)?;
    let mut gens = Vec::new();
    for row in &rows[r..] {
        let mut v = vec![0i128; p];
        for (i, basis_row) in a.basis.iter().enumerate() {
            let coef = row[p + i];
            for (x, &e) in v.iter_mut().zip(basis_row) {
                *x = coef
                    .checked_mul(e as i128)
                    .and_then(|m| x.checked_add(m))
                    .ok_or(LatticeError::Overflow)?;
            }
        }
        gens.push(v);
    }
    let k = echelon(&mut gens, p)?;
    gens.truncate(k);
    Ok(Sublattice {
        ambient: p,
        basis: to_i64_rows(&gens)?,
    })
}

/// Equal rational spans: both lattices and their intersection have one rank.
pub fn commensurable(a: &Sublattice, b: &Sublattice) -> Result<bool, LatticeError> {
    let i = intersect(a, b)?;
    Ok(a.rank() == b.rank() && b.rank() == i.rank())
}

/// Rank over the rationals of a list of integer vectors.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let Some(p) = rows.first().map(|r| r.len()) else {
        return 0;
    };
    // Fraction-free elimination with gcd normalisation keeps entries small.
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut rank = 0;
    for c in 0..p {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        for i in (rank + 1)..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let (a, b) = (m[rank][c], m[i][c]);
            let g = num_integer::gcd(a, b);
            let (fa, fb) = (b / g, a / g);
            for j in 0..p {
                m[i][j] = m[i][j] * fb - m[rank][j] * fa;
            }
            let g = m[i].iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
            if g > 1 {
                m[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(p: usize, v: &[&[i64]]) -> Sublattice {
        hnf(p, &v.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(lat(2, &[&[2, 0], &[0, 1]]).basis, vec![vec![2, 0], vec![0, 1]]);
        assert_eq!(lat(2, &[]).rank(), 0);
        assert_eq!(lat(2, &[&[1, 1], &[1, -1]]).basis, vec![vec![1, 1], vec![0, 2]]);
        assert_eq!(lat(2, &[&[1, 1], &[1, -1]]).index(), Some(2));
        assert!(matches!(
            hnf(2, &[vec![1, 2, 3]]),
            Err(LatticeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn hnf_is_order_independent() {
        let a = lat(3, &[&[2, 4, 6], &[0, 3, 1], &[1, 1, 1]]);
        let b = lat(3, &[&[1, 1, 1], &[2, 4, 6], &[0, 3, 1]]);
        assert_eq!(a, b);
        assert_eq!(hnf(3, &a.basis).unwrap(), a);
    }

    #[test]
    fn intersect_examples() {
        let z2 = Sublattice::full(2);
        let l = lat(2, &[&[2, 1], &[0, 3]]);
        assert_eq!(intersect(&l, &z2).unwrap(), l);
        assert_eq!(
            intersect(&lat(2, &[&[2, 0], &[0, 1]]), &lat(2, &[&[1, 0], &[0, 3]])).unwrap(),
            lat(2, &[&[2, 0], &[0, 3]])
        );
        assert_eq!(intersect(&lat(2, &[&[1, 1]]), &lat(2, &[&[1, -1]])).unwrap().rank(), 0);
        assert!(intersect(&z2, &Sublattice::full(3)).is_err());
    }

    #[test]
    fn commensurable_examples() {
        let l = lat(2, &[&[1, 2]]);
        assert!(commensurable(&l, &l).unwrap());
        assert!(commensurable(&lat(2, &[&[2, 0]]), &lat(2, &[&[3, 0]])).unwrap());
        assert_eq!(intersect(&lat(2, &[&[2, 0]]), &lat(2, &[&[3, 0]])).unwrap(), lat(2, &[&[6, 0]]));
        assert!(!commensurable(&lat(2, &[&[1, 0]]), &lat(2, &[&[1, 1]])).unwrap());
    }

    #[test]
    fn contains_and_rank() {
        let l = lat(2, &[&[1, 1], &[1, -1]]);
        assert!(l.contains(&[3, 1]));
        assert!(!l.contains(&[1, 0]));
        assert_eq!(rational_rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rational_rank(&[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 2]]), 2);
    }
}
