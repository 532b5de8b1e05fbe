//! Finite abelian groups `Z/d_1 × … × Z/d_k` and their subgroups.
//!
//! A subgroup is stored as the HNF of its preimage lattice in `Z^k`, which is
//! canonical: two subgroups are equal iff their bases are equal.

use alloc::vec;
use alloc::vec::Vec;

use crate::budget;
use crate::error::{Error, Result};
use crate::lattice::{self, hnf, reduce_by_hnf, smith, solve_upper};

/// Additive presentation `Z/d_1 × … × Z/d_k` with every `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    orders: Vec<i64>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<i64>) -> Result<Self> {
        if let Some(&d) = orders.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidInput(alloc::format!(
                "additive order {d} must be at least 2"
            )));
        }
        Ok(AbelianGroup { orders })
    }

    pub fn trivial() -> Self {
        AbelianGroup { orders: Vec::new() }
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Number of elements, saturating at `u128::MAX`.
    pub fn size(&self) -> u128 {
        self.orders
            .iter()
            .fold(1u128, |acc, &d| acc.saturating_mul(d as u128))
    }

    /// Exponent of the group (lcm of the orders).
    pub fn exponent(&self) -> i64 {
        use num_integer::Integer;
        self.orders.iter().fold(1i64, |acc, d| acc.lcm(d))
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<i64> {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    pub fn reduce(&self, x: &mut [i64]) {
        for (c, d) in x.iter_mut().zip(&self.orders) {
            *c = c.rem_euclid(*d);
        }
    }

    pub fn reduced(&self, mut x: Vec<i64>) -> Vec<i64> {
        self.reduce(&mut x);
        x
    }

    pub fn is_reduced(&self, x: &[i64]) -> bool {
        x.len() == self.rank() && x.iter().zip(&self.orders).all(|(c, d)| 0 <= *c && c < d)
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((a, b), d)| (a + b).rem_euclid(*d))
            .collect()
    }

    pub fn sub(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((a, b), d)| (a - b).rem_euclid(*d))
            .collect()
    }

    pub fn neg(&self, x: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(&self.orders)
            .map(|(a, d)| (-a).rem_euclid(*d))
            .collect()
    }

    pub fn scale(&self, n: i64, x: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(&self.orders)
            .map(|(a, d)| ((n.rem_euclid(*d)) * a).rem_euclid(*d))
            .collect()
    }

    pub fn is_zero(&self, x: &[i64]) -> bool {
        x.iter().zip(&self.orders).all(|(a, d)| a.rem_euclid(*d) == 0)
    }

    /// Mixed-radix index of a reduced element (first coordinate least
    /// significant).
    pub fn index_of(&self, x: &[i64]) -> usize {
        let mut idx = 0usize;
        for (c, d) in x.iter().zip(&self.orders).rev() {
            idx = idx * (*d as usize) + c.rem_euclid(*d) as usize;
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> Vec<i64> {
        self.orders
            .iter()
            .map(|&d| {
                let c = (idx % d as usize) as i64;
                idx /= d as usize;
                c
            })
            .collect()
    }

    /// All elements in index order; fails when the group exceeds the
    /// enumeration budget.
    pub fn elements(&self) -> Result<Vec<Vec<i64>>> {
        let n = budget::check_elements(self.size())?;
        Ok((0..n).map(|i| self.element_at(i)).collect())
    }

    pub fn direct_sum(parts: &[&AbelianGroup]) -> AbelianGroup {
        AbelianGroup {
            orders: parts.iter().flat_map(|g| g.orders.iter().copied()).collect(),
        }
    }
}

/// Subgroup of an [`AbelianGroup`], kept as the canonical HNF of its
/// preimage lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    basis: Vec<Vec<i64>>,
}

impl Subgroup {
    pub fn generated(group: &AbelianGroup, gens: &[Vec<i64>]) -> Subgroup {
        let k = group.rank();
        Subgroup {
            basis: hnf(gens.to_vec(), k, Some(group.orders())),
        }
    }

    pub fn zero(group: &AbelianGroup) -> Subgroup {
        Subgroup::generated(group, &[])
    }

    pub fn whole(group: &AbelianGroup) -> Subgroup {
        let gens: Vec<Vec<i64>> = (0..group.rank()).map(|i| group.basis_vector(i)).collect();
        Subgroup::generated(group, &gens)
    }

    /// The HNF basis of the preimage lattice (square, upper triangular).
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn pivots(&self) -> impl Iterator<Item = i64> + '_ {
        self.basis.iter().enumerate().map(|(i, r)| r[i])
    }

    pub fn contains(&self, group: &AbelianGroup, x: &[i64]) -> bool {
        reduce_by_hnf(&self.basis, x, Some(group.orders()))
            .iter()
            .all(|c| *c == 0)
    }

    pub fn order(&self, group: &AbelianGroup) -> u128 {
        self.pivots()
            .zip(group.orders())
            .fold(1u128, |acc, (p, d)| acc.saturating_mul((d / p) as u128))
    }

    pub fn is_zero(&self, group: &AbelianGroup) -> bool {
        self.pivots().zip(group.orders()).all(|(p, d)| p == *d)
    }

    pub fn is_whole(&self) -> bool {
        self.pivots().all(|p| p == 1)
    }

    /// Additive generators: the basis rows that are nonzero modulo the
    /// relations, reduced.
    pub fn generators(&self, group: &AbelianGroup) -> Vec<Vec<i64>> {
        self.basis
            .iter()
            .enumerate()
            .filter(|(i, r)| r[*i] < group.orders()[*i])
            .map(|(_, r)| group.reduced(r.clone()))
            .collect()
    }

    pub fn is_subgroup_of(&self, group: &AbelianGroup, other: &Subgroup) -> bool {
        self.generators(group).iter().all(|g| other.contains(group, g))
    }

    pub fn join(&self, group: &AbelianGroup, other: &Subgroup) -> Subgroup {
        let mut rows = self.generators(group);
        rows.extend(other.generators(group));
        Subgroup::generated(group, &rows)
    }

    /// Extend by extra generators.
    pub fn extended(&self, group: &AbelianGroup, extra: &[Vec<i64>]) -> Subgroup {
        let mut rows = self.basis.clone();
        rows.extend(extra.iter().cloned());
        Subgroup {
            basis: hnf(rows, group.rank(), Some(group.orders())),
        }
    }

    pub fn meet(&self, group: &AbelianGroup, other: &Subgroup) -> Subgroup {
        let k = group.rank();
        let mut rows = Vec::with_capacity(2 * k);
        for r in &self.basis {
            let mut row = r.clone();
            row.extend_from_slice(r);
            rows.push(row);
        }
        for r in &other.basis {
            let mut row = r.clone();
            row.extend(core::iter::repeat_n(0, k));
            rows.push(row);
        }
        let mut moduli = group.orders().to_vec();
        moduli.extend_from_slice(group.orders());
        let h = hnf(rows, 2 * k, Some(&moduli));
        Subgroup {
            basis: h[k..].iter().map(|r| r[k..].to_vec()).collect(),
        }
    }

    /// Elements of the subgroup, via the HNF transversal
    /// `Σ c_i b_i, 0 <= c_i < d_i / p_i`.
    pub fn elements(&self, group: &AbelianGroup) -> Result<Vec<Vec<i64>>> {
        let n = budget::check_elements(self.order(group))?;
        let k = group.rank();
        let ranges: Vec<i64> = self
            .pivots()
            .zip(group.orders())
            .map(|(p, d)| d / p)
            .collect();
        let mut out = Vec::with_capacity(n);
        let mut coeff = vec![0i64; k];
        loop {
            let mut x = group.zero();
            for (i, c) in coeff.iter().enumerate() {
                if *c != 0 {
                    for j in i..k {
                        x[j] += c * self.basis[i][j];
                    }
                }
            }
            group.reduce(&mut x);
            out.push(x);
            let mut i = 0;
            loop {
                if i == k {
                    return Ok(out);
                }
                coeff[i] += 1;
                if coeff[i] < ranges[i] {
                    break;
                }
                coeff[i] = 0;
                i += 1;
            }
        }
    }

    /// Coset representatives of `group / self`: vectors with
    /// `0 <= x_i < p_i`.
    pub fn coset_representatives(&self, group: &AbelianGroup) -> Result<Vec<Vec<i64>>> {
        let total: u128 = self.pivots().fold(1u128, |a, p| a.saturating_mul(p as u128));
        let n = budget::check_elements(total)?;
        let pivots: Vec<i64> = self.pivots().collect();
        let mut out = Vec::with_capacity(n);
        let mut x = group.zero();
        loop {
            out.push(x.clone());
            let mut i = 0;
            loop {
                if i == x.len() {
                    return Ok(out);
                }
                x[i] += 1;
                if x[i] < pivots[i] {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
        }
    }
}

/// Homomorphism `Z^k/D → Z^l/D'` given by the images of the source basis.
/// Returns `{x : φ(x) ∈ target_sub}` (the kernel when `target_sub` is zero).
pub fn preimage(
    source: &AbelianGroup,
    images: &[Vec<i64>],
    target: &AbelianGroup,
    target_sub: &Subgroup,
) -> Subgroup {
    let k = source.rank();
    let l = target.rank();
    debug_assert_eq!(images.len(), k);
    let mut rows = Vec::with_capacity(k + l);
    for (i, img) in images.iter().enumerate() {
        let mut row = img.clone();
        row.extend((0..k).map(|j| i64::from(i == j)));
        rows.push(row);
    }
    for r in target_sub.basis() {
        let mut row = r.clone();
        row.extend(core::iter::repeat_n(0, k));
        rows.push(row);
    }
    let mut moduli = target.orders().to_vec();
    moduli.extend_from_slice(source.orders());
    let h = hnf(rows, l + k, Some(&moduli));
    Subgroup {
        basis: h[l..].iter().map(|r| r[l..].to_vec()).collect(),
    }
}

/// Check that `images` defines a homomorphism: `d_i · φ(e_i) = 0`.
pub fn is_well_defined(source: &AbelianGroup, images: &[Vec<i64>], target: &AbelianGroup) -> bool {
    images.len() == source.rank()
        && images
            .iter()
            .zip(source.orders())
            .all(|(img, d)| img.len() == target.rank() && target.is_zero(&target.scale(*d, img)))
}

/// Cyclic decomposition of a subquotient `L / L0` of `Z^k`, where
/// `L0 ⊆ L` are full-rank lattices given as subgroups of `ambient`
/// (so `L0 ⊇ diag(d)`).
#[derive(Debug, Clone)]
pub struct Subquotient {
    ambient: AbelianGroup,
    lattice: Vec<Vec<i64>>,
    /// Orders of the cyclic factors (all >= 2).
    orders: Vec<i64>,
    /// Generator of each cyclic factor, in ambient coordinates.
    gens: Vec<Vec<i64>>,
    /// Column transform mapping HNF coordinates to factor coordinates, with
    /// trivial factors dropped.
    transform: Vec<Vec<i128>>,
    kept: Vec<usize>,
}

impl Subquotient {
    pub fn new(ambient: &AbelianGroup, upper: &Subgroup, lower: &Subgroup) -> Result<Subquotient> {
        let k = ambient.rank();
        let lat = upper.basis().to_vec();
        // rows of the lower lattice (including the relations) in terms of `lat`
        let mut c: Vec<Vec<i128>> = Vec::with_capacity(k);
        for row in lower.basis() {
            let y = solve_upper(&lat, row).ok_or_else(|| {
                Error::InvalidInput("lower subgroup is not contained in the upper one".into())
            })?;
            c.push(y.into_iter().map(i128::from).collect());
        }
        let s = smith(c);
        let mut orders = Vec::new();
        let mut gens = Vec::new();
        let mut kept = Vec::new();
        for (j, d) in s.diag.iter().enumerate() {
            if *d == 0 {
                return Err(Error::Internal("subquotient of full-rank lattices has a zero invariant"));
            }
            if *d == 1 {
                continue;
            }
            // generator j: row j of V^{-1} · L
            let mut g = vec![0i64; k];
            for (t, coeff) in s.v_inv[j].iter().enumerate() {
                if *coeff != 0 {
                    for col in 0..k {
                        let val = (*coeff * i128::from(lat[t][col])).rem_euclid(i128::from(ambient.orders()[col]));
                        g[col] = ((i128::from(g[col]) + val) % i128::from(ambient.orders()[col])) as i64;
                    }
                }
            }
            orders.push(i64::try_from(*d).map_err(|_| Error::Internal("invariant factor overflow"))?);
            gens.push(g);
            kept.push(j);
        }
        Ok(Subquotient {
            ambient: ambient.clone(),
            lattice: lat,
            orders,
            gens,
            transform: s.v,
            kept,
        })
    }

    pub fn group(&self) -> AbelianGroup {
        AbelianGroup {
            orders: self.orders.clone(),
        }
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.gens
    }

    /// Coordinates of an ambient element of the upper lattice, modulo the
    /// lower one. Fails if `x` is outside the upper subgroup.
    pub fn coords(&self, x: &[i64]) -> Result<Vec<i64>> {
        // lift x to a lattice vector first: x is only defined mod diag(d)
        let reduced = self.ambient.reduced(x.to_vec());
        let y0 = solve_upper(&self.lattice, &reduced)
            .ok_or_else(|| Error::InvalidInput("element outside the presented subgroup".into()))?;
        let out = self
            .kept
            .iter()
            .zip(&self.orders)
            .map(|(&j, &d)| {
                let s: i128 = y0
                    .iter()
                    .enumerate()
                    .map(|(t, yt)| i128::from(*yt) * self.transform[t][j])
                    .sum();
                s.rem_euclid(i128::from(d)) as i64
            })
            .collect();
        Ok(out)
    }

    /// Ambient representative of factor coordinates.
    pub fn lift(&self, y: &[i64]) -> Vec<i64> {
        let mut x = self.ambient.zero();
        for (c, g) in y.iter().zip(&self.gens) {
            for (xi, gi) in x.iter_mut().zip(g) {
                *xi += c * gi;
            }
        }
        self.ambient.reduced(x)
    }
}

/// Solve membership of `x` in a lattice given as HNF rows without moduli.
pub fn lattice_contains(basis: &[Vec<i64>], x: &[i64]) -> bool {
    lattice::reduce_by_hnf(basis, x, None).iter().all(|c| *c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(orders: &[i64]) -> AbelianGroup {
        AbelianGroup::new(orders.to_vec()).unwrap()
    }

    #[test]
    fn subgroup_orders_and_membership() {
        let grp = g(&[4, 2]);
        let h = Subgroup::generated(&grp, &[vec![2, 1]]);
        assert_eq!(h.order(&grp), 2);
        assert!(h.contains(&grp, &[2, 1]));
        assert!(!h.contains(&grp, &[2, 0]));
        assert_eq!(h.elements(&grp).unwrap(), vec![vec![0, 0], vec![2, 1]]);
    }

    #[test]
    fn meet_and_join() {
        let grp = g(&[4, 2]);
        let a = Subgroup::generated(&grp, &[vec![2, 0]]);
        let b = Subgroup::generated(&grp, &[vec![2, 1]]);
        assert!(a.meet(&grp, &b).is_zero(&grp));
        assert_eq!(a.join(&grp, &b).order(&grp), 4);
    }

    #[test]
    fn kernel_of_doubling_on_z4() {
        let grp = g(&[4]);
        let k = preimage(&grp, &[vec![2]], &grp, &Subgroup::zero(&grp));
        assert_eq!(k.elements(&grp).unwrap(), vec![vec![0], vec![2]]);
    }

    #[test]
    fn subquotient_of_z4_by_2z4() {
        let grp = g(&[4]);
        let whole = Subgroup::whole(&grp);
        let m = Subgroup::generated(&grp, &[vec![2]]);
        let q = Subquotient::new(&grp, &whole, &m).unwrap();
        assert_eq!(q.group().orders(), &[2]);
        assert_eq!(q.coords(&[3]).unwrap(), vec![1]);
        assert_eq!(q.coords(&[2]).unwrap(), vec![0]);
    }

    #[test]
    fn subquotient_presents_subgroup() {
        // 2Z/12 inside Z/12 is cyclic of order 6
        let grp = g(&[12]);
        let sub = Subgroup::generated(&grp, &[vec![4], vec![6]]);
        let q = Subquotient::new(&grp, &sub, &Subgroup::zero(&grp)).unwrap();
        assert_eq!(q.group().size(), 6);
        for x in sub.elements(&grp).unwrap() {
            let y = q.coords(&x).unwrap();
            assert_eq!(q.lift(&y), x);
        }
    }

    #[test]
    fn coset_representatives_count() {
        let grp = g(&[4, 2]);
        let h = Subgroup::generated(&grp, &[vec![2, 1]]);
        assert_eq!(h.coset_representatives(&grp).unwrap().len(), 4);
    }
}
