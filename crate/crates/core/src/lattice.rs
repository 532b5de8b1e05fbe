//! Integer lattice reductions: row-style Hermite normal form (optionally modulo
//! a diagonal sublattice), triangular solves against an HNF basis, and Smith
//! normal form with column transforms.
//!
//! Every finite abelian group in this crate is `Z^k / diag(d)`, so its
//! subgroups are exactly the lattices `L` with `diag(d) ⊆ L ⊆ Z^k`. Passing the
//! orders as `moduli` keeps all intermediate entries below `max(d)^2`.

use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// `(g, s, t)` with `g = s*a + t*b` and `g >= 0`.
pub fn ext_gcd<T: Clone + Integer + Signed>(a: &T, b: &T) -> (T, T, T) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

fn is_zero_row<T: Zero>(row: &[T]) -> bool {
    row.iter().all(Zero::is_zero)
}

fn reduce_tail<T: Clone + Integer>(row: &mut [T], from: usize, moduli: Option<&[T]>) {
    if let Some(m) = moduli {
        for c in from..row.len() {
            row[c] = row[c].mod_floor(&m[c]);
        }
    }
}

/// Hermite normal form of the lattice spanned by `rows` (each of length
/// `ncols`), plus `m_c e_c` for every column when `moduli` is given.
///
/// The result is in row echelon form with positive pivots and every entry
/// above a pivot reduced into `[0, pivot)`. It is unique for the lattice, so
/// two lattices are equal iff their HNFs are equal. With moduli the lattice is
/// full rank and the result is square upper triangular.
pub fn hnf<T: Clone + Integer + Signed>(
    rows: Vec<Vec<T>>,
    ncols: usize,
    moduli: Option<&[T]>,
) -> Vec<Vec<T>> {
    let mut work: Vec<Vec<T>> = rows
        .into_iter()
        .map(|mut r| {
            debug_assert_eq!(r.len(), ncols);
            reduce_tail(&mut r, 0, moduli);
            r
        })
        .filter(|r| !is_zero_row(r))
        .collect();
    let mut out: Vec<Vec<T>> = Vec::new();

    for c in 0..ncols {
        if let Some(m) = moduli {
            let mut v = vec![T::zero(); ncols];
            v[c] = m[c].clone();
            work.push(v);
        }
        let mut pivot: Option<Vec<T>> = None;
        let mut rest = Vec::with_capacity(work.len());
        for row in work.drain(..) {
            if row[c].is_zero() {
                rest.push(row);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(row),
                Some(p) => {
                    let (g, s, t) = ext_gcd(&p[c], &row[c]);
                    let pa = p[c].clone() / g.clone();
                    let ra = row[c].clone() / g;
                    let mut np = vec![T::zero(); ncols];
                    let mut nr = vec![T::zero(); ncols];
                    for j in c..ncols {
                        np[j] = s.clone() * p[j].clone() + t.clone() * row[j].clone();
                        nr[j] = ra.clone() * p[j].clone() - pa.clone() * row[j].clone();
                    }
                    reduce_tail(&mut np, c + 1, moduli);
                    reduce_tail(&mut nr, c + 1, moduli);
                    pivot = Some(np);
                    if !is_zero_row(&nr) {
                        rest.push(nr);
                    }
                }
            }
        }
        work = rest;
        if let Some(mut p) = pivot {
            if p[c].is_negative() {
                for x in p.iter_mut() {
                    *x = -x.clone();
                }
                reduce_tail(&mut p, c + 1, moduli);
            }
            for r in out.iter_mut() {
                let q = r[c].div_floor(&p[c]);
                if !q.is_zero() {
                    for j in c..ncols {
                        r[j] = r[j].clone() - q.clone() * p[j].clone();
                    }
                    reduce_tail(r, c + 1, moduli);
                }
            }
            out.push(p);
        }
    }
    out
}

/// Pivot column of each HNF row.
pub fn pivot_columns<T: Zero>(basis: &[Vec<T>]) -> Vec<usize> {
    basis
        .iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero"))
        .collect()
}

/// Reduce `x` against an HNF basis. Returns the remainder; `x` lies in the
/// lattice iff the remainder is zero (after reduction modulo `moduli`).
pub fn reduce_by_hnf<T: Clone + Integer + Signed>(
    basis: &[Vec<T>],
    x: &[T],
    moduli: Option<&[T]>,
) -> Vec<T> {
    let mut v = x.to_vec();
    reduce_tail(&mut v, 0, moduli);
    for row in basis {
        let c = row.iter().position(|e| !e.is_zero()).expect("HNF rows are nonzero");
        let q = v[c].div_floor(&row[c]);
        if !q.is_zero() {
            for j in c..v.len() {
                v[j] = v[j].clone() - q.clone() * row[j].clone();
            }
            reduce_tail(&mut v, c + 1, moduli);
        }
    }
    v
}

/// Solve `y · L = x` for a square upper-triangular `L` with nonzero diagonal.
/// Returns `None` when the solution is not integral.
pub fn solve_upper<T: Clone + Integer + Signed>(l: &[Vec<T>], x: &[T]) -> Option<Vec<T>> {
    let n = l.len();
    let mut y: Vec<T> = Vec::with_capacity(n);
    for c in 0..n {
        let mut acc = x[c].clone();
        for (i, yi) in y.iter().enumerate() {
            acc = acc - yi.clone() * l[i][c].clone();
        }
        let (q, r) = acc.div_rem(&l[c][c]);
        if !r.is_zero() {
            return None;
        }
        y.push(q);
    }
    Some(y)
}

/// Smith normal form `A · V = U^{-1} · S` of a square matrix, recording the
/// column transform `V` and its inverse. `diag` holds the invariant factors
/// in divisibility order (zeros last).
#[derive(Debug, Clone)]
pub struct Smith {
    pub diag: Vec<i128>,
    pub v: Vec<Vec<i128>>,
    pub v_inv: Vec<Vec<i128>>,
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

pub fn smith(mut a: Vec<Vec<i128>>) -> Smith {
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    let mut v = identity(m);
    let mut v_inv = identity(m);
    let steps = n.min(m);

    // column j <- column j - q * column t
    let col_sub = |a: &mut Vec<Vec<i128>>,
                   v: &mut Vec<Vec<i128>>,
                   v_inv: &mut Vec<Vec<i128>>,
                   j: usize,
                   t: usize,
                   q: i128| {
        for row in a.iter_mut() {
            row[j] -= q * row[t];
        }
        for row in v.iter_mut() {
            row[j] -= q * row[t];
        }
        let (rt, rj) = (v_inv[t].clone(), &v_inv[j]);
        v_inv[t] = rt.iter().zip(rj.iter()).map(|(x, y)| x + q * y).collect();
    };
    let col_swap = |a: &mut Vec<Vec<i128>>,
                    v: &mut Vec<Vec<i128>>,
                    v_inv: &mut Vec<Vec<i128>>,
                    i: usize,
                    j: usize| {
        if i == j {
            return;
        }
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        v_inv.swap(i, j);
    };

    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..m {
                    if a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(t, bi);
            col_swap(&mut a, &mut v, &mut v_inv, t, bj);

            let mut clean = true;
            for i in t + 1..n {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(a[t][t]);
                    let pivot_row = a[t].clone();
                    for (x, p) in a[i].iter_mut().zip(pivot_row.iter()) {
                        *x -= q * p;
                    }
                    if a[i][t] != 0 {
                        clean = false;
                    }
                }
            }
            for j in t + 1..m {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(a[t][t]);
                    col_sub(&mut a, &mut v, &mut v_inv, j, t, q);
                    if a[t][j] != 0 {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            let d = a[t][t];
            let bad = (t + 1..n).find(|&i| (t + 1..m).any(|j| a[i][j] % d != 0));
            match bad {
                Some(i) => {
                    let row_i = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(row_i.iter()) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if t < n && t < m && a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    let diag = (0..steps).map(|i| a[i][i]).collect();
    Smith { diag, v, v_inv }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_z4_times_z2_subgroup() {
        // subgroup of Z/4 x Z/2 generated by (2,1)
        let b = hnf(vec![vec![2i64, 1]], 2, Some(&[4, 2]));
        assert_eq!(b, vec![vec![2, 1], vec![0, 2]]);
    }

    #[test]
    fn hnf_is_canonical_for_different_generators() {
        let m = [6i64, 6];
        let a = hnf(vec![vec![2, 0], vec![0, 3]], 2, Some(&m));
        let b = hnf(vec![vec![2, 3], vec![4, 0], vec![0, 3]], 2, Some(&m));
        assert_eq!(a, b);
    }

    #[test]
    fn hnf_without_moduli_keeps_rank() {
        let b = hnf(vec![vec![4i64, 6], vec![6, 9]], 2, None);
        assert_eq!(b, vec![vec![2, 3]]);
    }

    #[test]
    fn solve_upper_detects_non_members() {
        let l = vec![vec![2i64, 1], vec![0, 3]];
        assert_eq!(solve_upper(&l, &[4, 5]), Some(vec![2, 1]));
        assert_eq!(solve_upper(&l, &[1, 0]), None);
    }

    #[test]
    fn smith_of_small_matrix() {
        let s = smith(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(s.diag, vec![2, 6, 12]);
        // V * V^{-1} = I
        let n = 3;
        for i in 0..n {
            for j in 0..n {
                let e: i128 = (0..n).map(|k| s.v[i][k] * s.v_inv[k][j]).sum();
                assert_eq!(e, i128::from(i == j));
            }
        }
    }
}
