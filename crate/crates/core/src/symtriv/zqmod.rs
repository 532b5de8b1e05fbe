//! Finitely generated submodules `H` of `R^m` for `R = Z ∝ Q`, `m <= 3`.
//!
//! An element of `R^m` is a pair `(u, w) ∈ Z^m × Q^m`. For generators
//! `(x_i, y_i)`, `H = {(Σ c_i x_i, Σ c_i y_i + v) : c ∈ Z^p, v ∈ KU}` where
//! `U = Σ x_i Z` and `KU` is its rational span. Reducing every `y_i` modulo
//! `KU` leaves residues `r_i`; `H` is the lattice spanned by `(x_i, r_i)`
//! and it splits as `U ∝ KU` exactly when all residues vanish.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{hnf, reduce_by_hnf};

pub const MAX_AMBIENT_RANK: usize = 3;

/// An element `(u, w)` of `(Z ∝ Q)^m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZQVector {
    pub u: Vec<BigInt>,
    pub w: Vec<BigRational>,
}

impl ZQVector {
    pub fn zero(m: usize) -> Self {
        ZQVector {
            u: vec![BigInt::zero(); m],
            w: vec![BigRational::zero(); m],
        }
    }

    /// `(c, f) · (u, w) = (cu, cw + fu)`.
    pub fn scale(&self, c: &BigInt, f: &BigRational) -> ZQVector {
        let cr = BigRational::from_integer(c.clone());
        ZQVector {
            u: self.u.iter().map(|x| c * x).collect(),
            w: self
                .w
                .iter()
                .zip(&self.u)
                .map(|(w, u)| &cr * w + f * BigRational::from_integer(u.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &ZQVector) -> ZQVector {
        ZQVector {
            u: self.u.iter().zip(&other.u).map(|(a, b)| a + b).collect(),
            w: self.w.iter().zip(&other.w).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Reduced row echelon form over `Q`, pivoting only in the first `ncols`
/// columns. Returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// How `H` sits relative to `U ∝ KU`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubmoduleKind {
    /// `H = U ∝ KU`.
    Split,
    /// Some generator has an `E`-part outside `KU`.
    General {
        /// Nonzero residues of generator `E`-parts modulo `KU`.
        residues: Vec<Vec<BigRational>>,
        /// HNF of the integer lattice spanned by `(x_i, scale · r_i)`,
        /// residues restricted to non-pivot columns.
        lattice: Vec<Vec<BigInt>>,
        scale: BigInt,
    },
}

/// Normal form of a finitely generated submodule of `(Z ∝ Q)^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZQSubmoduleNF {
    pub m: usize,
    /// HNF basis of `U ⊆ Z^m`.
    pub u: Vec<Vec<BigInt>>,
    /// RREF basis of `KU ⊆ Q^m`.
    pub ku: Vec<Vec<BigRational>>,
    pub pivots: Vec<usize>,
    pub kind: SubmoduleKind,
}

impl ZQSubmoduleNF {
    pub fn is_split(&self) -> bool {
        self.kind == SubmoduleKind::Split
    }

    /// `w` reduced modulo `KU`; zero exactly on `KU`.
    pub fn residue(&self, w: &[BigRational]) -> Vec<BigRational> {
        let mut v = w.to_vec();
        for (row, &p) in self.ku.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = &*x - &f * r;
                }
            }
        }
        v
    }

    fn free_columns(&self) -> Vec<usize> {
        (0..self.m).filter(|c| !self.pivots.contains(c)).collect()
    }

    pub fn contains(&self, x: &ZQVector) -> bool {
        let res = self.residue(&x.w);
        match &self.kind {
            SubmoduleKind::Split => res.iter().all(Zero::is_zero) && lattice_member(&self.u, &x.u),
            SubmoduleKind::General { lattice, scale, .. } => {
                let mut v = x.u.clone();
                for c in self.free_columns() {
                    let s = &res[c] * BigRational::from_integer(scale.clone());
                    if !s.is_integer() {
                        return false;
                    }
                    v.push(s.to_integer());
                }
                lattice_member(lattice, &v)
            }
        }
    }

    /// Is the `E`-part `{w : (u, w) ∈ H}` a `Q`-vector space? A nonzero
    /// residue spans only a lattice in `Q^m/KU`, so this holds iff every
    /// residue vanishes.
    pub fn e_part_is_vector_space(&self) -> bool {
        match &self.kind {
            SubmoduleKind::Split => true,
            SubmoduleKind::General { residues, .. } => residues.iter().all(|r| r.iter().all(Zero::is_zero)),
        }
    }
}

fn lattice_member(basis: &[Vec<BigInt>], x: &[BigInt]) -> bool {
    reduce_by_hnf(basis, x, None).iter().all(Zero::is_zero)
}

fn check_rank(m: usize) -> Result<()> {
    if m > MAX_AMBIENT_RANK {
        Err(Error::BudgetExceeded {
            needed: m as u128,
            budget: MAX_AMBIENT_RANK,
        })
    } else {
        Ok(())
    }
}

pub fn zq_submodule_nf(m: usize, gens: &[ZQVector]) -> Result<ZQSubmoduleNF> {
    check_rank(m)?;
    if gens.iter().any(|g| g.u.len() != m || g.w.len() != m) {
        return Err(Error::InvalidInput("generator has the wrong length".into()));
    }
    let u = hnf(gens.iter().map(|g| g.u.clone()).collect(), m, None);
    let (ku, pivots) = rref(u.iter().map(|r| to_rational(r)).collect(), m);
    let mut nf = ZQSubmoduleNF {
        m,
        u,
        ku,
        pivots,
        kind: SubmoduleKind::Split,
    };
    let residues: Vec<Vec<BigRational>> = gens.iter().map(|g| nf.residue(&g.w)).collect();
    if residues.iter().all(|r| r.iter().all(Zero::is_zero)) {
        return Ok(nf);
    }
    let free = nf.free_columns();
    let scale = residues
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scale_q = BigRational::from_integer(scale.clone());
    let rows: Vec<Vec<BigInt>> = gens
        .iter()
        .zip(&residues)
        .map(|(g, r)| {
            let mut row = g.u.clone();
            row.extend(free.iter().map(|&c| (&r[c] * &scale_q).to_integer()));
            row
        })
        .collect();
    let lattice = hnf(rows, m + free.len(), None);
    nf.kind = SubmoduleKind::General {
        residues: residues.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect(),
        lattice,
        scale,
    };
    Ok(nf)
}

/// `H` is `n`-presented iff `n = 0` or `H = U ∝ KU` (over `Z` the lattice
/// `U` is always finitely presented).
pub fn zq_is_n_presented(h: &ZQSubmoduleNF, n: usize) -> bool {
    n == 0 || h.is_split()
}

/// For generators `(x_i, 0)` of a split `H`: the integer kernel `W` of
/// `Z^p → Z^m, c ↦ Σ c_i x_i` and the rational kernel `KW` of the same map
/// over `Q`. The syzygy module of `H` is `W ∝ KW`.
pub fn zq_split_kernel(xs: &[Vec<BigInt>]) -> Result<(Vec<Vec<BigInt>>, Vec<Vec<BigRational>>)> {
    let p = xs.len();
    let m = xs.first().map_or(0, |x| x.len());
    check_rank(m)?;
    let rows: Vec<Vec<BigInt>> = xs
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let mut row = x.clone();
            row.extend((0..p).map(|j| BigInt::from(u8::from(i == j))));
            row
        })
        .collect();
    let h = hnf(rows.clone(), m + p, None);
    let w = h
        .into_iter()
        .filter(|r| r[..m].iter().all(Zero::is_zero))
        .map(|r| r[m..].to_vec())
        .collect();
    let rank_x = rref(rows.iter().map(|r| to_rational(&r[..m])).collect(), m).0.len();
    // rows past the X-rank have zero X-part after elimination
    let full = eliminate_keep_all(rows.iter().map(|r| to_rational(r)).collect(), m);
    let kw = full[rank_x..].iter().map(|r| r[m..].to_vec()).collect();
    Ok((w, kw))
}

/// Gaussian elimination on the first `ncols` columns that keeps zero rows.
fn eliminate_keep_all(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> Vec<Vec<BigRational>> {
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * p;
                }
            }
        }
        r += 1;
    }
    rows
}

/// Rank over `Q` of a list of rational vectors.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let n = rows.first().map_or(0, |r| r.len());
    rref(rows.to_vec(), n).0.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn v(u: &[i64], w: &[(i64, i64)]) -> ZQVector {
        ZQVector {
            u: u.iter().map(|&x| BigInt::from(x)).collect(),
            w: w.iter().map(|&(n, d)| r(n, d)).collect(),
        }
    }

    #[test]
    fn r_zero_one_is_not_finitely_presented() {
        let h = zq_submodule_nf(1, &[v(&[0], &[(1, 1)])]).unwrap();
        assert!(!h.is_split());
        assert!(zq_is_n_presented(&h, 0));
        assert!(!zq_is_n_presented(&h, 1));
        assert!(h.contains(&v(&[0], &[(3, 1)])));
        assert!(!h.contains(&v(&[0], &[(1, 2)])));
    }

    #[test]
    fn r_two_zero_splits() {
        let h = zq_submodule_nf(1, &[v(&[2], &[(0, 1)])]).unwrap();
        assert!(h.is_split());
        assert_eq!(h.u, vec![vec![BigInt::from(2)]]);
        assert!(h.contains(&v(&[4], &[(1, 7)])));
        assert!(!h.contains(&v(&[1], &[(0, 1)])));
        assert!(zq_is_n_presented(&h, 5));
    }

    #[test]
    fn whole_ring_splits() {
        let h = zq_submodule_nf(1, &[v(&[1], &[(0, 1)]), v(&[0], &[(1, 1)])]).unwrap();
        assert!(h.is_split());
        assert_eq!(h.u, vec![vec![BigInt::from(1)]]);
    }

    #[test]
    fn rank_two_general_case() {
        // (1,0 | 0,1/2): the second coordinate of w is off KU = Q×0
        let h = zq_submodule_nf(2, &[v(&[1, 0], &[(0, 1), (1, 2)])]).unwrap();
        assert!(!h.is_split());
        assert!(h.contains(&v(&[2, 0], &[(5, 3), (1, 1)])));
        assert!(!h.contains(&v(&[2, 0], &[(5, 3), (1, 2)])));
        assert!(zq_submodule_nf(4, &[]).is_err());
    }

    #[test]
    fn split_kernel_matches_rational_nullspace() {
        let xs = vec![vec![BigInt::from(2), BigInt::from(0)], vec![BigInt::from(4), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(3)]];
        let (w, kw) = zq_split_kernel(&xs).unwrap();
        assert_eq!(w, vec![vec![BigInt::from(2), BigInt::from(-1), BigInt::from(0)]]);
        assert_eq!(kw.len(), 1);
        assert_eq!(rational_rank(&kw), 1);
    }
}
