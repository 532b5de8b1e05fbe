//! Ideal arithmetic over finite rings, the v-operation with `Q(R) = R`, and
//! ring predicates built on the ideal lattice.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::budget;
use crate::error::{Error, Result};
use crate::finmod::{regular_module, Submodule};
use crate::finring::{component_spans, maximal_ideals, project, Ring};
use crate::group::{preimage, Subgroup};

/// A finitely generated ideal with its canonical additive carrier.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Vec<i64>>,
    carrier: Subgroup,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.carrier == other.carrier
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({}; gens {:?})", self.ring.label(), self.generators)
    }
}

impl Ideal {
    pub fn generated(ring: &Ring, gens: Vec<Vec<i64>>) -> Result<Ideal> {
        let g = ring.group();
        let gens: Vec<Vec<i64>> = gens
            .into_iter()
            .map(|x| {
                if x.len() == ring.rank() {
                    Ok(g.reduced(x))
                } else {
                    Err(Error::InvalidInput(format!(
                        "generator {x:?} has the wrong length for {}",
                        ring.label()
                    )))
                }
            })
            .collect::<Result<_>>()?;
        let mut rows = Vec::with_capacity(gens.len() * ring.rank());
        for x in &gens {
            rows.extend(ring.mult_images(x));
        }
        Ok(Ideal {
            carrier: Subgroup::generated(g, &rows),
            generators: gens,
            ring: ring.clone(),
        })
    }

    /// Wrap a subgroup that should be an ideal; closure under multiplication
    /// is checked.
    pub fn from_carrier(ring: &Ring, carrier: Subgroup) -> Result<Ideal> {
        let g = ring.group();
        let add_gens = carrier.generators(g);
        for x in &add_gens {
            for img in ring.mult_images(x) {
                if !carrier.contains(g, &img) {
                    return Err(Error::Internal("subgroup is not an ideal"));
                }
            }
        }
        let mut span = Subgroup::zero(g);
        let mut generators = Vec::new();
        for x in add_gens {
            if !span.contains(g, &x) {
                span = span.join(g, &ring.principal_subgroup(&x));
                generators.push(x);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators,
            carrier,
        })
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal {
            ring: ring.clone(),
            generators: Vec::new(),
            carrier: Subgroup::zero(ring.group()),
        }
    }

    pub fn whole(ring: &Ring) -> Ideal {
        Ideal {
            ring: ring.clone(),
            generators: alloc::vec![ring.one_coeffs().to_vec()],
            carrier: Subgroup::whole(ring.group()),
        }
    }

    pub fn principal(ring: &Ring, x: &[i64]) -> Result<Ideal> {
        Ideal::generated(ring, alloc::vec![x.to_vec()])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn carrier(&self) -> &Subgroup {
        &self.carrier
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.carrier.contains(self.ring.group(), x)
    }

    pub fn order(&self) -> u128 {
        self.carrier.order(self.ring.group())
    }

    pub fn is_zero(&self) -> bool {
        self.carrier.is_zero(self.ring.group())
    }

    pub fn is_whole(&self) -> bool {
        self.carrier.is_whole()
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.carrier.is_subgroup_of(self.ring.group(), &other.carrier)
    }

    pub fn elements(&self) -> Result<Vec<Vec<i64>>> {
        self.carrier.elements(self.ring.group())
    }

    /// The ideal as a submodule of the regular module.
    pub fn as_submodule(&self) -> Submodule {
        Submodule::generated(&regular_module(&self.ring), &self.generators)
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn describe(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| format!("{g:?}")).collect();
        format!("({}) of order {}", gens.join(", "), self.order())
    }
}

/// `(0 : x)`.
pub fn annihilator(ring: &Ring, x: &[i64]) -> Result<Ideal> {
    let g = ring.group();
    Ideal::from_carrier(ring, preimage(g, &ring.mult_images(x), g, &Subgroup::zero(g)))
}

pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.same_ring(j)?;
    Ideal::from_carrier(&i.ring, i.carrier.meet(i.ring.group(), &j.carrier))
}

pub fn sum(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.same_ring(j)?;
    let mut gens = i.generators.clone();
    gens.extend(j.generators.iter().cloned());
    Ok(Ideal {
        ring: i.ring.clone(),
        generators: gens,
        carrier: i.carrier.join(i.ring.group(), &j.carrier),
    })
}

pub fn product(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.same_ring(j)?;
    let g = i.ring.group();
    let mut rows = Vec::new();
    for x in i.carrier.generators(g) {
        for y in j.carrier.generators(g) {
            rows.push(i.ring.mul(&x, &y));
        }
    }
    let carrier = Subgroup::generated(g, &rows);
    Ideal::from_carrier(&i.ring, carrier)
}

/// `(I : J) = {x ∈ R : xJ ⊆ I}`.
pub fn colon(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.same_ring(j)?;
    let g = i.ring.group();
    let mut carrier = Subgroup::whole(g);
    for y in j.carrier.generators(g) {
        let pre = preimage(g, &i.ring.mult_images(&y), g, &i.carrier);
        carrier = carrier.meet(g, &pre);
    }
    Ideal::from_carrier(&i.ring, carrier)
}

/// Check that every regular element is a unit, so that `Q(R) = R`.
/// Returns the first offending element otherwise.
pub fn total_quotient_is_self(ring: &Ring) -> Result<Option<Vec<i64>>> {
    for x in ring.group().elements()? {
        if ring.is_regular_coeffs(&x) && !ring.is_unit_coeffs(&x) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

fn require_total_quotient(ring: &Ring) -> Result<()> {
    if ring.regular_elements_are_units()? {
        Ok(())
    } else {
        Err(Error::Internal("a regular element is not a unit"))
    }
}

/// `I^{-1} = (R : I)` computed inside `Q(R) = R`.
pub fn inverse_finite(i: &Ideal) -> Result<Ideal> {
    if i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    require_total_quotient(&i.ring)?;
    colon(&Ideal::whole(&i.ring), i)
}

/// `I_v = (I^{-1})^{-1}`.
pub fn v_closure_finite(i: &Ideal) -> Result<Ideal> {
    inverse_finite(&inverse_finite(i)?)
}

/// A finitely generated `J` with `J_v = I_v`; in a finite ring `R` itself
/// works, and the equality is recomputed.
pub fn v_finite_witness_finite(i: &Ideal) -> Result<Ideal> {
    let w = Ideal::whole(&i.ring);
    if v_closure_finite(i)? != v_closure_finite(&w)? {
        return Err(Error::Internal("v-closure differs from that of R"));
    }
    Ok(w)
}

/// Nakayama-minimal generators of an ideal of a local ring.
#[derive(Debug, Clone)]
pub struct MinimalGenerators {
    pub ideal: Ideal,
    pub gens: Vec<Vec<i64>>,
    pub mu: usize,
}

pub fn minimal_generators(i: &Ideal) -> Result<MinimalGenerators> {
    let gens = i.as_submodule().minimal_generators()?;
    Ok(MinimalGenerators {
        ideal: i.clone(),
        mu: gens.len(),
        gens,
    })
}

/// Every ideal of `R`, smallest first.
///
/// Starting from `0`, each ideal `I` is extended by `I + Rx` for `x` in the
/// socle `(I : J(R))` of `R/I`; every nonzero `J/I` meets that socle, so the
/// search reaches every ideal.
pub fn all_ideals(ring: &Ring) -> Result<Vec<Ideal>> {
    budget::check(ring.size(), budget::ideal_lattice_budget())?;
    let g = ring.group();
    let jac = maximal_ideals(ring)?
        .into_iter()
        .map(|m| m.carrier)
        .reduce(|a, b| a.meet(g, &b))
        .unwrap_or_else(|| Subgroup::zero(g));
    let jac_gens = jac.generators(g);
    let mut principal: BTreeMap<Vec<i64>, Subgroup> = BTreeMap::new();
    for x in g.elements()? {
        let p = ring.principal_subgroup(&x);
        principal.insert(x, p);
    }
    let zero = Subgroup::zero(g);
    let mut seen: BTreeSet<Subgroup> = BTreeSet::new();
    seen.insert(zero.clone());
    let mut frontier = alloc::vec![zero];
    while let Some(cur) = frontier.pop() {
        let mut socle = Subgroup::whole(g);
        for y in &jac_gens {
            socle = socle.meet(g, &preimage(g, &ring.mult_images(y), g, &cur));
        }
        for x in socle.elements(g)? {
            if cur.contains(g, &x) {
                continue;
            }
            let next = cur.join(g, &principal[&x]);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let mut out: Vec<Subgroup> = seen.into_iter().collect();
    out.sort_by(|a, b| a.order(g).cmp(&b.order(g)).then_with(|| b.cmp(a)));
    out.into_iter().map(|c| Ideal::from_carrier(ring, c)).collect()
}

/// Every principal ideal, deduplicated, with a generator for each.
pub fn principal_ideals(ring: &Ring) -> Result<Vec<(Vec<i64>, Subgroup)>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in ring.group().elements()? {
        let p = ring.principal_subgroup(&x);
        if seen.insert(p.clone()) {
            out.push((x, p));
        }
    }
    Ok(out)
}

/// Von Neumann regularity: every principal ideal is generated by an
/// idempotent. On failure the offending principal ideal is returned.
pub fn is_von_neumann_regular(ring: &Ring) -> Result<(bool, Option<Ideal>)> {
    let idem: BTreeSet<Subgroup> = ring
        .idempotents()?
        .iter()
        .map(|e| ring.principal_subgroup(e))
        .collect();
    for (x, p) in principal_ideals(ring)? {
        if !idem.contains(&p) {
            return Ok((false, Some(Ideal::principal(ring, &x)?)));
        }
    }
    Ok((true, None))
}

/// Bézout: every 2-generated ideal is principal. Sums of principal ideals
/// cover all 2-generated ideals, and if those are principal an induction on
/// the number of generators covers the rest. On failure the non-principal
/// sum is returned.
pub fn is_bezout(ring: &Ring) -> Result<(bool, Option<Ideal>)> {
    let g = ring.group();
    let ps = principal_ideals(ring)?;
    let set: BTreeSet<&Subgroup> = ps.iter().map(|(_, p)| p).collect();
    for (a, (x, px)) in ps.iter().enumerate() {
        for (y, py) in &ps[a + 1..] {
            let s = px.join(g, py);
            if !set.contains(&s) {
                return Ok((false, Some(Ideal::generated(ring, alloc::vec![x.clone(), y.clone()])?)));
            }
        }
    }
    Ok((true, None))
}

/// Which product identity failed in [`componentwise_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentwiseFailure {
    Annihilator { element: Vec<i64> },
    PrincipalIntersection { elements: Vec<Vec<i64>> },
    Intersection { left: Vec<Vec<i64>>, right: Vec<Vec<i64>> },
    Inverse { ideal: Vec<Vec<i64>> },
}

/// Outcome of [`componentwise_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentwiseReport {
    pub instances: usize,
    pub failure: Option<ComponentwiseFailure>,
}

fn component_ideal(ring: &Ring, j: usize, ideal: &Ideal) -> Result<Ideal> {
    let comp = &ring.components()[j];
    let gens = ideal
        .carrier
        .generators(ring.group())
        .iter()
        .map(|x| project(ring, x, j))
        .collect();
    Ideal::generated(comp, gens)
}

/// Reassemble `∏ I_j` from component ideals.
fn product_of_components(ring: &Ring, parts: &[Ideal]) -> Result<Ideal> {
    let spans = component_spans(ring);
    let mut gens = Vec::new();
    for (part, span) in parts.iter().zip(spans) {
        for x in part.carrier.generators(part.ring.group()) {
            let mut v = ring.group().zero();
            v[span.clone()].copy_from_slice(&x);
            gens.push(v);
        }
    }
    let carrier = Subgroup::generated(ring.group(), &gens);
    Ideal::from_carrier(ring, carrier)
}

/// Check the four product formulas on a ring built by `make_product`:
/// `(0:C) = ∏ (0:c_j)` for every element, `⋂ RA_i = ∏ ⋂ R_j a_{ij}` for
/// every pair of elements, and `I ∩ J = ∏ (I_j ∩ J_j)`, `I^{-1} = ∏ I_j^{-1}`
/// for every pair of ideals.
pub fn componentwise_check(ring: &Ring) -> Result<ComponentwiseReport> {
    let comps = ring.components();
    if comps.is_empty() {
        return Err(Error::InvalidInput(format!("{} is not a product ring", ring.label())));
    }
    let m = comps.len();
    let elems = ring.group().elements()?;
    let mut instances = 0;
    for c in &elems {
        instances += 1;
        let parts = (0..m)
            .map(|j| annihilator(&comps[j], &project(ring, c, j)))
            .collect::<Result<Vec<_>>>()?;
        if annihilator(ring, c)? != product_of_components(ring, &parts)? {
            return Ok(ComponentwiseReport {
                instances,
                failure: Some(ComponentwiseFailure::Annihilator { element: c.clone() }),
            });
        }
    }
    let principal: Vec<Ideal> = principal_ideals(ring)?
        .into_iter()
        .map(|(x, _)| Ideal::principal(ring, &x))
        .collect::<Result<_>>()?;
    for a in &principal {
        for b in &principal {
            instances += 1;
            let left = intersect(a, b)?;
            let parts = (0..m)
                .map(|j| {
                    let pa = Ideal::principal(&comps[j], &project(ring, &a.generators[0], j))?;
                    let pb = Ideal::principal(&comps[j], &project(ring, &b.generators[0], j))?;
                    intersect(&pa, &pb)
                })
                .collect::<Result<Vec<_>>>()?;
            if left != product_of_components(ring, &parts)? {
                return Ok(ComponentwiseReport {
                    instances,
                    failure: Some(ComponentwiseFailure::PrincipalIntersection {
                        elements: alloc::vec![a.generators[0].clone(), b.generators[0].clone()],
                    }),
                });
            }
        }
    }
    let ideals = all_ideals(ring)?;
    for i in &ideals {
        let iparts = (0..m).map(|j| component_ideal(ring, j, i)).collect::<Result<Vec<_>>>()?;
        if !i.is_zero() {
            instances += 1;
            let inv = inverse_finite(i)?;
            // a zero component has (R_j : 0) = R_j
            let parts = iparts
                .iter()
                .map(|p| colon(&Ideal::whole(&p.ring), p))
                .collect::<Result<Vec<_>>>()?;
            if inv != product_of_components(ring, &parts)? {
                return Ok(ComponentwiseReport {
                    instances,
                    failure: Some(ComponentwiseFailure::Inverse {
                        ideal: i.generators.clone(),
                    }),
                });
            }
        }
        for j in &ideals {
            instances += 1;
            let jparts = (0..m).map(|t| component_ideal(ring, t, j)).collect::<Result<Vec<_>>>()?;
            let parts = iparts
                .iter()
                .zip(&jparts)
                .map(|(a, b)| intersect(a, b))
                .collect::<Result<Vec<_>>>()?;
            if intersect(i, j)? != product_of_components(ring, &parts)? {
                return Ok(ComponentwiseReport {
                    instances,
                    failure: Some(ComponentwiseFailure::Intersection {
                        left: i.generators.clone(),
                        right: j.generators.clone(),
                    }),
                });
            }
        }
    }
    Ok(ComponentwiseReport {
        instances,
        failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finmod::{residue_field_power, trivial_extension};
    use crate::finring::{make_product, make_zmod};

    fn z4e() -> crate::finmod::TrivialExtension {
        let a = make_zmod(4).unwrap();
        let e = residue_field_power(&a, 1).unwrap();
        trivial_extension(&a, &e).unwrap()
    }

    fn sorted(i: &Ideal) -> Vec<Vec<i64>> {
        let mut v = i.elements().unwrap();
        v.sort();
        v
    }

    #[test]
    fn annihilators_in_z4_trivext() {
        let t = z4e();
        let r = &t.ring;
        assert_eq!(
            sorted(&annihilator(r, &[0, 1]).unwrap()),
            vec![vec![0, 0], vec![0, 1], vec![2, 0], vec![2, 1]]
        );
        let ann = annihilator(r, &[2, 1]).unwrap();
        assert_eq!(ann.order(), 4);
        assert!(annihilator(r, &[1, 0]).unwrap().is_zero());
    }

    #[test]
    fn intersection_of_two_lines_is_zero() {
        let t = z4e();
        let a = Ideal::principal(&t.ring, &[2, 0]).unwrap();
        let b = Ideal::principal(&t.ring, &[2, 1]).unwrap();
        assert!(intersect(&a, &b).unwrap().is_zero());
        assert_eq!(intersect(&a, &Ideal::whole(&t.ring)).unwrap(), a);
        let f = t.fiber_ideal().unwrap();
        assert!(product(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn colon_examples() {
        let r = make_zmod(4).unwrap();
        let w = Ideal::whole(&r);
        assert_eq!(colon(&w, &w).unwrap(), w);
        let two = Ideal::principal(&r, &[2]).unwrap();
        assert_eq!(colon(&Ideal::zero(&r), &two).unwrap(), two);
        assert_eq!(colon(&two, &Ideal::zero(&r)).unwrap(), w);
    }

    #[test]
    fn v_closure_of_zero_divisor_ideal() {
        let r = make_zmod(4).unwrap();
        let two = Ideal::principal(&r, &[2]).unwrap();
        assert!(inverse_finite(&two).unwrap().is_whole());
        let v = v_closure_finite(&two).unwrap();
        assert!(v.is_whole());
        assert_ne!(v, two);
        assert_eq!(inverse_finite(&Ideal::zero(&r)), Err(Error::ZeroIdeal));
        assert!(v_finite_witness_finite(&two).unwrap().is_whole());
        let t = z4e();
        assert!(v_closure_finite(&t.fiber_ideal().unwrap()).unwrap().is_whole());
    }

    #[test]
    fn mu_of_maximal_ideal_in_z4_trivext() {
        let t = z4e();
        let m = crate::finring::local_maximal_ideal(&t.ring).unwrap();
        assert_eq!(m.order(), 4);
        assert_eq!(minimal_generators(&m).unwrap().mu, 2);
        let redundant = Ideal::generated(&t.ring, vec![vec![2, 1], vec![2, 0], vec![0, 1], vec![2, 1]]).unwrap();
        assert_eq!(minimal_generators(&redundant).unwrap().mu, 2);
        assert!(minimal_generators(&Ideal::whole(&make_zmod(6).unwrap())).is_err());
    }

    #[test]
    fn ideal_lattice_sizes() {
        assert_eq!(all_ideals(&make_zmod(4).unwrap()).unwrap().len(), 3);
        assert_eq!(all_ideals(&z4e().ring).unwrap().len(), 6);
        assert_eq!(all_ideals(&make_zmod(2).unwrap()).unwrap().len(), 2);
        assert_eq!(all_ideals(&make_zmod(12).unwrap()).unwrap().len(), 6);
    }

    #[test]
    fn regularity_and_bezout() {
        assert!(is_von_neumann_regular(&make_zmod(6).unwrap()).unwrap().0);
        let (vnr, w) = is_von_neumann_regular(&make_zmod(4).unwrap()).unwrap();
        assert!(!vnr);
        assert_eq!(w.unwrap().elements().unwrap(), vec![vec![0], vec![2]]);
        let t = z4e();
        let (bez, w) = is_bezout(&t.ring).unwrap();
        assert!(!bez);
        assert_eq!(w.unwrap(), crate::finring::local_maximal_ideal(&t.ring).unwrap());
        assert!(is_bezout(&make_zmod(12).unwrap()).unwrap().0);
    }

    #[test]
    fn componentwise_identities_hold() {
        let r = make_product(&[make_zmod(2).unwrap(), make_zmod(3).unwrap()]).unwrap();
        assert_eq!(componentwise_check(&r).unwrap().failure, None);
        let ann = annihilator(&r, &[0, 1]).unwrap();
        assert_eq!(sorted(&ann), vec![vec![0, 0], vec![1, 0]]);
        let r = make_product(&[make_zmod(4).unwrap(), make_zmod(4).unwrap()]).unwrap();
        assert_eq!(componentwise_check(&r).unwrap().failure, None);
        let i = Ideal::generated(&r, vec![vec![2, 0], vec![0, 2]]).unwrap();
        let j = Ideal::generated(&r, vec![vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(intersect(&i, &j).unwrap(), i);
        assert!(componentwise_check(&make_zmod(4).unwrap()).is_err());
    }
}
