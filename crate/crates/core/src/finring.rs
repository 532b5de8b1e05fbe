//! Finite commutative unital rings given by an additive presentation and
//! multiplication structure constants.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::sync::atomic::{AtomicU8, Ordering};

use crate::error::{Error, Result};
use crate::group::{preimage, AbelianGroup, Subgroup, Subquotient};
use crate::idealops::Ideal;

pub type Ring = Arc<FiniteRing>;

/// A finite commutative ring `Z/d_1 × … × Z/d_k` (as a group) with the product
/// of basis vectors `b_i b_j` stored as a coefficient vector.
#[derive(Debug)]
pub struct FiniteRing {
    label: String,
    group: AbelianGroup,
    table: Vec<Vec<i64>>,
    one: Vec<i64>,
    components: Vec<Ring>,
    // 0 = not yet checked, 1 = every regular element is a unit, 2 = not
    total_quotient: AtomicU8,
}

impl Clone for FiniteRing {
    fn clone(&self) -> Self {
        FiniteRing {
            label: self.label.clone(),
            group: self.group.clone(),
            table: self.table.clone(),
            one: self.one.clone(),
            components: self.components.clone(),
            total_quotient: AtomicU8::new(self.total_quotient.load(Ordering::Relaxed)),
        }
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label
            && self.group == other.group
            && self.table == other.table
            && self.one == other.one
            && self.components == other.components
    }
}

impl Eq for FiniteRing {}

impl FiniteRing {
    /// Build a ring from structure constants, checking the ring axioms on
    /// basis vectors (which suffices by bilinearity).
    pub fn from_structure(
        label: impl Into<String>,
        orders: Vec<i64>,
        table: Vec<Vec<i64>>,
        one: Vec<i64>,
    ) -> Result<Ring> {
        let group = AbelianGroup::new(orders)?;
        let k = group.rank();
        if table.len() != k * k || table.iter().any(|r| r.len() != k) || one.len() != k {
            return Err(Error::InvalidInput("structure constants have the wrong shape".into()));
        }
        let table = table.into_iter().map(|r| group.reduced(r)).collect();
        let one = group.reduced(one);
        let ring = FiniteRing {
            label: label.into(),
            group,
            table,
            one,
            components: Vec::new(),
            total_quotient: AtomicU8::new(0),
        };
        ring.verify_structure()?;
        Ok(Arc::new(ring))
    }

    fn verify_structure(&self) -> Result<()> {
        let k = self.rank();
        let g = &self.group;
        for i in 0..k {
            for j in 0..k {
                let p = &self.table[i * k + j];
                if !g.is_zero(&g.scale(g.orders()[i], p)) {
                    return Err(Error::InvalidInput(format!(
                        "product b{i}·b{j} is not killed by the order of b{i}"
                    )));
                }
                if p != &self.table[j * k + i] {
                    return Err(Error::InvalidInput(format!("b{i}·b{j} ≠ b{j}·b{i}")));
                }
            }
        }
        for i in 0..k {
            let bi = g.basis_vector(i);
            if self.mul(&self.one, &bi) != bi {
                return Err(Error::InvalidInput(format!("one is not an identity on b{i}")));
            }
            for j in 0..k {
                let bij = &self.table[i * k + j];
                for l in 0..k {
                    let bl = g.basis_vector(l);
                    let left = self.mul(bij, &bl);
                    let right = self.mul(&bi, &self.table[j * k + l]);
                    if left != right {
                        return Err(Error::InvalidInput(format!(
                            "associativity fails on (b{i}, b{j}, b{l})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn size(&self) -> u128 {
        self.group.size()
    }

    pub fn one_coeffs(&self) -> &[i64] {
        &self.one
    }

    /// Structure constants, `table()[i * k + j] = b_i b_j`.
    pub fn table(&self) -> &[Vec<i64>] {
        &self.table
    }

    /// Component rings when built by [`make_product`]; empty otherwise.
    pub fn components(&self) -> &[Ring] {
        &self.components
    }

    pub fn mul(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let k = self.rank();
        let mut out = vec![0i64; k];
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if *yj == 0 {
                    continue;
                }
                let c = xi * yj;
                for (o, t) in out.iter_mut().zip(&self.table[i * k + j]) {
                    *o += c * t;
                }
            }
        }
        self.group.reduced(out)
    }

    /// Images of the additive basis under multiplication by `x`.
    pub fn mult_images(&self, x: &[i64]) -> Vec<Vec<i64>> {
        (0..self.rank())
            .map(|j| self.mul(x, &self.group.basis_vector(j)))
            .collect()
    }

    /// The subgroup `xR`.
    pub fn principal_subgroup(&self, x: &[i64]) -> Subgroup {
        Subgroup::generated(&self.group, &self.mult_images(x))
    }

    pub fn is_unit_coeffs(&self, x: &[i64]) -> bool {
        self.principal_subgroup(x).contains(&self.group, &self.one)
    }

    /// Multiplication by `x` is injective.
    pub fn is_regular_coeffs(&self, x: &[i64]) -> bool {
        preimage(&self.group, &self.mult_images(x), &self.group, &Subgroup::zero(&self.group))
            .is_zero(&self.group)
    }

    pub fn pow(&self, x: &[i64], mut n: u64) -> Vec<i64> {
        let mut acc = self.one.clone();
        let mut base = x.to_vec();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a unit: walk the powers of `x` until one
    /// returns to 1.
    pub fn inverse_coeffs(&self, x: &[i64]) -> Option<Vec<i64>> {
        if !self.is_unit_coeffs(x) {
            return None;
        }
        let mut prev = self.one.clone();
        let mut cur = x.to_vec();
        loop {
            if cur == self.one {
                return Some(prev);
            }
            prev = cur.clone();
            cur = self.mul(&cur, x);
        }
    }

    /// All idempotents, in element-index order.
    pub fn idempotents(&self) -> Result<Vec<Vec<i64>>> {
        Ok(self
            .group
            .elements()?
            .into_iter()
            .filter(|e| &self.mul(e, e) == e)
            .collect())
    }

    /// Nonzero idempotents `e` with no idempotent strictly below them
    /// (`f e = f` forces `f ∈ {0, e}`). They are orthogonal and sum to 1.
    pub fn primitive_idempotents(&self) -> Result<Vec<Vec<i64>>> {
        let ids = self.idempotents()?;
        let zero = self.group.zero();
        Ok(ids
            .iter()
            .filter(|e| **e != zero)
            .filter(|e| {
                ids.iter()
                    .all(|f| *f == zero || f == *e || self.mul(f, e) != **f)
            })
            .cloned()
            .collect())
    }

    /// Whether every regular element is a unit, so that `Q(R) = R`.
    /// Decided once by enumeration and cached.
    pub fn regular_elements_are_units(&self) -> Result<bool> {
        match self.total_quotient.load(Ordering::Relaxed) {
            1 => return Ok(true),
            2 => return Ok(false),
            _ => {}
        }
        let ok = self
            .group
            .elements()?
            .iter()
            .all(|x| !self.is_regular_coeffs(x) || self.is_unit_coeffs(x));
        self.total_quotient.store(if ok { 1 } else { 2 }, Ordering::Relaxed);
        Ok(ok)
    }

    pub fn is_local(&self) -> Result<bool> {
        Ok(self.primitive_idempotents()?.len() == 1)
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// An element of a [`FiniteRing`].
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    ring: Ring,
    coeffs: Vec<i64>,
}

impl RingElement {
    pub fn new(ring: &Ring, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != ring.rank() {
            return Err(Error::InvalidInput(format!(
                "element has {} coefficients, ring {} has rank {}",
                coeffs.len(),
                ring.label(),
                ring.rank()
            )));
        }
        let coeffs = ring.group().reduced(coeffs);
        Ok(RingElement {
            ring: ring.clone(),
            coeffs,
        })
    }

    pub fn zero(ring: &Ring) -> Self {
        RingElement {
            ring: ring.clone(),
            coeffs: ring.group().zero(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        RingElement {
            ring: ring.clone(),
            coeffs: ring.one_coeffs().to_vec(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit_coeffs(&self.coeffs)
    }

    pub fn is_regular(&self) -> bool {
        self.ring.is_regular_coeffs(&self.coeffs)
    }

    pub fn inverse(&self) -> Option<RingElement> {
        self.ring.inverse_coeffs(&self.coeffs).map(|c| RingElement {
            ring: self.ring.clone(),
            coeffs: c,
        })
    }

    pub fn pow(&self, n: u64) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            coeffs: self.ring.pow(&self.coeffs, n),
        }
    }

    fn same_ring(&self, other: &RingElement) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "elements of different rings"
        );
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        f.write_str("(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.same_ring(rhs);
        RingElement {
            ring: self.ring.clone(),
            coeffs: self.ring.group().add(&self.coeffs, &rhs.coeffs),
        }
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.same_ring(rhs);
        RingElement {
            ring: self.ring.clone(),
            coeffs: self.ring.group().sub(&self.coeffs, &rhs.coeffs),
        }
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.same_ring(rhs);
        RingElement {
            ring: self.ring.clone(),
            coeffs: self.ring.mul(&self.coeffs, &rhs.coeffs),
        }
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            coeffs: self.ring.group().neg(&self.coeffs),
        }
    }
}

/// `Z/nZ`.
pub fn make_zmod(n: i64) -> Result<Ring> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("Z/n needs n >= 2, got {n}")));
    }
    FiniteRing::from_structure(format!("Z/{n}"), vec![n], vec![vec![1]], vec![1])
}

pub fn is_prime(p: i64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn poly_label(f: &[i64]) -> String {
    let mut terms = Vec::new();
    for (i, c) in f.iter().enumerate().rev() {
        if *c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        terms.push(match (*c, i) {
            (c, 0) => format!("{c}"),
            (1, _) => mono,
            (c, _) => format!("{c}{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// `F_p[x]/(f)` with `f` given low-degree first and monic.
pub fn make_quotient_poly(p: i64, f: &[i64]) -> Result<Ring> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let f: Vec<i64> = f.iter().map(|c| c.rem_euclid(p)).collect();
    let t = f.len().checked_sub(1).ok_or_else(|| Error::InvalidInput("empty polynomial".into()))?;
    if t == 0 {
        return Err(Error::InvalidInput("polynomial must have degree >= 1".into()));
    }
    if f[t] != 1 {
        return Err(Error::InvalidInput(format!("{} is not monic", poly_label(&f))));
    }
    // powers x^0 .. x^{2t-2} reduced modulo f
    let mut powers: Vec<Vec<i64>> = Vec::with_capacity(2 * t);
    let mut cur = vec![0i64; t];
    cur[0] = 1;
    for _ in 0..(2 * t - 1) {
        powers.push(cur.clone());
        // multiply by x
        let top = cur[t - 1];
        let mut next = vec![0i64; t];
        for i in (1..t).rev() {
            next[i] = cur[i - 1];
        }
        for (i, c) in next.iter_mut().enumerate() {
            *c = (*c - top * f[i]).rem_euclid(p);
        }
        cur = next;
    }
    let mut table = Vec::with_capacity(t * t);
    for i in 0..t {
        for j in 0..t {
            table.push(powers[i + j].clone());
        }
    }
    let mut one = vec![0i64; t];
    one[0] = 1;
    FiniteRing::from_structure(
        format!("F_{p}[x]/({})", poly_label(&f)),
        vec![p; t],
        table,
        one,
    )
}

/// Componentwise product `R_1 × … × R_m`.
pub fn make_product(rings: &[Ring]) -> Result<Ring> {
    if rings.is_empty() {
        return Err(Error::InvalidInput("product of an empty family".into()));
    }
    let k: usize = rings.iter().map(|r| r.rank()).sum();
    let mut orders = Vec::with_capacity(k);
    let mut one = Vec::with_capacity(k);
    let mut table = vec![vec![0i64; k]; k * k];
    let mut offset = 0;
    for r in rings {
        let rk = r.rank();
        orders.extend_from_slice(r.group().orders());
        one.extend_from_slice(r.one_coeffs());
        for i in 0..rk {
            for j in 0..rk {
                let dst = &mut table[(offset + i) * k + offset + j];
                dst[offset..offset + rk].copy_from_slice(&r.table()[i * rk + j]);
            }
        }
        offset += rk;
    }
    let label = rings
        .iter()
        .map(|r| {
            if r.components().is_empty() {
                r.label().to_string()
            } else {
                format!("({})", r.label())
            }
        })
        .collect::<Vec<_>>()
        .join(" × ");
    let ring = FiniteRing::from_structure(label, orders, table, one)?;
    let mut ring = Arc::try_unwrap(ring).expect("fresh ring");
    ring.components = rings.to_vec();
    Ok(Arc::new(ring))
}

/// Coordinate ranges of each component inside a product ring.
pub fn component_spans(ring: &FiniteRing) -> Vec<core::ops::Range<usize>> {
    let mut spans = Vec::new();
    let mut offset = 0;
    for c in ring.components() {
        spans.push(offset..offset + c.rank());
        offset += c.rank();
    }
    spans
}

/// Projection of a product-ring element onto component `j`.
pub fn project(ring: &FiniteRing, x: &[i64], j: usize) -> Vec<i64> {
    let spans = component_spans(ring);
    x[spans[j].clone()].to_vec()
}

/// One local factor `eR` of a ring, presented as a ring in its own right.
#[derive(Debug, Clone)]
pub struct LocalFactor {
    pub ring: Ring,
    pub idempotent: Vec<i64>,
    presentation: Subquotient,
}

impl LocalFactor {
    /// Coordinates in the factor of an element of `eR`.
    pub fn coords(&self, x: &[i64]) -> Result<Vec<i64>> {
        self.presentation.coords(x)
    }

    /// Representative in the source ring of factor coordinates.
    pub fn lift(&self, y: &[i64]) -> Vec<i64> {
        self.presentation.lift(y)
    }
}

/// `R ≅ ∏ e_i R` over the primitive idempotents, every factor local.
#[derive(Debug, Clone)]
pub struct LocalDecomposition {
    pub source: Ring,
    pub factors: Vec<LocalFactor>,
}

impl LocalDecomposition {
    pub fn forward(&self, x: &[i64]) -> Result<Vec<Vec<i64>>> {
        self.factors
            .iter()
            .map(|f| f.coords(&self.source.mul(&f.idempotent, x)))
            .collect()
    }

    pub fn backward(&self, parts: &[Vec<i64>]) -> Vec<i64> {
        let g = self.source.group();
        self.factors
            .iter()
            .zip(parts)
            .fold(g.zero(), |acc, (f, y)| g.add(&acc, &f.lift(y)))
    }
}

pub fn decompose_into_local(ring: &Ring) -> Result<LocalDecomposition> {
    let prims = ring.primitive_idempotents()?;
    let g = ring.group();
    let mut factors = Vec::with_capacity(prims.len());
    for (n, e) in prims.into_iter().enumerate() {
        let sub = ring.principal_subgroup(&e);
        let pres = Subquotient::new(g, &sub, &Subgroup::zero(g))?;
        let basis = pres.generators().to_vec();
        let mut table = Vec::with_capacity(basis.len() * basis.len());
        for a in &basis {
            for b in &basis {
                table.push(pres.coords(&ring.mul(a, b))?);
            }
        }
        let one = pres.coords(&e)?;
        let label = if n == 0 && basis.len() == ring.rank() && g.orders() == pres.group().orders() && e == ring.one_coeffs() {
            ring.label().to_string()
        } else {
            format!("{}·e{}", ring.label(), n + 1)
        };
        let factor = FiniteRing::from_structure(label, pres.group().orders().to_vec(), table, one)?;
        factors.push(LocalFactor {
            ring: factor,
            idempotent: e,
            presentation: pres,
        });
    }
    Ok(LocalDecomposition {
        source: ring.clone(),
        factors,
    })
}

/// All maximal ideals. A finite ring is a product of local rings `e_i R`, so
/// each maximal ideal is `(1 - e_i)R + {non-units of e_i R}`.
pub fn maximal_ideals(ring: &Ring) -> Result<Vec<Ideal>> {
    let g = ring.group();
    let prims = ring.primitive_idempotents()?;
    let mut out = Vec::with_capacity(prims.len());
    for e in &prims {
        let complement = g.sub(ring.one_coeffs(), e);
        let mut gens = vec![complement];
        let ideal_e = ring.principal_subgroup(e);
        for x in ideal_e.elements(g)? {
            // x ∈ eR is a unit of eR iff e ∈ xR
            if !ring.principal_subgroup(&x).contains(g, e) {
                gens.push(x);
            }
        }
        out.push(Ideal::generated(ring, gens)?);
    }
    Ok(out)
}

/// The maximal ideal of a local ring.
pub fn local_maximal_ideal(ring: &Ring) -> Result<Ideal> {
    let mut ms = maximal_ideals(ring)?;
    if ms.len() != 1 {
        return Err(Error::NotLocal);
    }
    Ok(ms.pop().expect("one maximal ideal"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(r: &Ring, c: &[i64]) -> RingElement {
        RingElement::new(r, c.to_vec()).unwrap()
    }

    #[test]
    fn zmod_rejects_small_moduli() {
        assert!(make_zmod(1).is_err());
        assert!(make_zmod(0).is_err());
        let r = make_zmod(4).unwrap();
        assert_eq!(r.group().orders(), &[4]);
        assert_eq!(r.one_coeffs(), &[1]);
    }

    #[test]
    fn units_and_regular_elements_in_z4() {
        let r = make_zmod(4).unwrap();
        assert!(el(&r, &[3]).is_unit() && el(&r, &[3]).is_regular());
        assert!(!el(&r, &[2]).is_unit() && !el(&r, &[2]).is_regular());
        assert!(el(&r, &[1]).is_unit());
        assert_eq!(el(&r, &[3]).inverse().unwrap().coeffs(), &[3]);
    }

    #[test]
    fn quotient_poly_constructions() {
        let r = make_quotient_poly(2, &[0, 0, 1]).unwrap();
        assert_eq!(r.size(), 4);
        let x = el(&r, &[0, 1]);
        assert!((&x * &x).is_zero());
        let f2 = make_quotient_poly(2, &[0, 1]).unwrap();
        assert_eq!(f2.size(), 2);
        assert!(make_quotient_poly(4, &[0, 1]).is_err());
        assert!(make_quotient_poly(3, &[1, 0, 2]).is_err());
    }

    #[test]
    fn f9_is_a_field() {
        let r = make_quotient_poly(3, &[1, 0, 1]).unwrap();
        // x^2 + 1 has no root mod 3
        assert!((0..3).all(|a| (a * a + 1) % 3 != 0));
        for x in r.group().elements().unwrap() {
            if x.iter().any(|c| *c != 0) {
                assert!(r.is_unit_coeffs(&x));
            }
        }
    }

    #[test]
    fn z6_decomposes_via_3_and_4() {
        let r = make_zmod(6).unwrap();
        let d = decompose_into_local(&r).unwrap();
        let mut ids: Vec<i64> = d.factors.iter().map(|f| f.idempotent[0]).collect();
        ids.sort();
        assert_eq!(ids, vec![3, 4]);
        let mut sizes: Vec<u128> = d.factors.iter().map(|f| f.ring.size()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 3]);
        for x in r.group().elements().unwrap() {
            assert_eq!(d.backward(&d.forward(&x).unwrap()), x);
        }
    }

    #[test]
    fn maximal_ideals_of_small_rings() {
        let z4 = make_zmod(4).unwrap();
        let m = local_maximal_ideal(&z4).unwrap();
        assert_eq!(m.elements().unwrap(), vec![vec![0], vec![2]]);
        let z6 = make_zmod(6).unwrap();
        let mut ms: Vec<Vec<Vec<i64>>> = maximal_ideals(&z6)
            .unwrap()
            .iter()
            .map(|i| i.elements().unwrap())
            .collect();
        ms.sort();
        assert_eq!(ms, vec![vec![vec![0], vec![2], vec![4]], vec![vec![0], vec![3]]]);
        let f2 = make_zmod(2).unwrap();
        assert!(local_maximal_ideal(&f2).unwrap().is_zero());
    }

    #[test]
    fn product_of_f2_and_f3() {
        let r = make_product(&[make_zmod(2).unwrap(), make_zmod(3).unwrap()]).unwrap();
        assert_eq!(r.size(), 6);
        assert_eq!(r.components().len(), 2);
        let x = el(&r, &[1, 2]);
        assert_eq!(project(&r, (&x * &x).coeffs(), 1), vec![1]);
    }
}
