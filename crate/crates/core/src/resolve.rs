//! Free presentations, minimal syzygies and projective-dimension verdicts
//! for finite modules over finite rings.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::finmod::{free_module, quotient_module, FiniteModule, Module, ModuleMap, Submodule};
use crate::finring::{decompose_into_local, LocalFactor, Ring};
use crate::group::{Subgroup, Subquotient};
use crate::idealops::{all_ideals, minimal_generators, Ideal};

/// `F_n → … → F_1 → F_0 → N → 0`, exact, with every `F_j` free.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub module: Submodule,
    /// `F_0 → ambient(N)` with image `N`.
    pub augmentation: ModuleMap,
    /// `steps[j]: F_{j+1} → F_j`.
    pub steps: Vec<ModuleMap>,
}

impl Presentation {
    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    /// Ranks of `F_0, F_1, …` as free modules.
    pub fn free_ranks(&self) -> Vec<usize> {
        let k = self.module.ambient().ring().rank();
        let mut out = alloc::vec![self.augmentation.source().rank() / k.max(1)];
        out.extend(self.steps.iter().map(|s| s.source().rank() / k.max(1)));
        out
    }

    /// Image of the augmentation is `N`, and the image of each step is the
    /// kernel of the one before it.
    pub fn is_exact(&self) -> Result<bool> {
        if self.augmentation.image() != self.module {
            return Ok(false);
        }
        let mut prev = &self.augmentation;
        for step in &self.steps {
            if step.image() != prev.kernel()? {
                return Ok(false);
            }
            prev = step;
        }
        Ok(true)
    }
}

/// `R^n → target`, sending the `t`-th free generator to `gens[t]`.
pub fn free_map(ring: &Ring, gens: &[Vec<i64>], target: &Module) -> ModuleMap {
    let source = free_module(ring, gens.len());
    let rg = ring.group();
    let mut images = Vec::with_capacity(source.rank());
    for g in gens {
        for i in 0..ring.rank() {
            images.push(target.act(&rg.basis_vector(i), g));
        }
    }
    ModuleMap::from_parts(source, target.clone(), images)
}

/// Generators used at each presentation step: Nakayama-minimal over a local
/// ring, a greedy irredundant set otherwise.
fn step_generators(sub: &Submodule) -> Result<Vec<Vec<i64>>> {
    if sub.ambient().ring().is_local()? {
        sub.minimal_generators()
    } else {
        let g = sub.ambient().group();
        let mut span = Subgroup::zero(g);
        let mut out = Vec::new();
        let mut candidates = sub.generators().to_vec();
        candidates.extend(sub.carrier().generators(g));
        for c in candidates {
            if !span.contains(g, &c) {
                span = span.join(g, &sub.ambient().span(core::slice::from_ref(&c)));
                out.push(c);
            }
        }
        Ok(out)
    }
}

/// An `n`-step presentation. Over a finite ring this always exists, so every
/// finitely generated module is `n`-presented for every `n`.
pub fn presentation(module: &Submodule, depth: usize) -> Result<Presentation> {
    let ring = module.ambient().ring().clone();
    let gens = step_generators(module)?;
    let augmentation = free_map(&ring, &gens, module.ambient());
    let mut steps = Vec::with_capacity(depth);
    let mut prev = augmentation.clone();
    for _ in 0..depth {
        let kernel = prev.kernel()?;
        let gens = step_generators(&kernel)?;
        let step = free_map(&ring, &gens, prev.source());
        steps.push(step.clone());
        prev = step;
    }
    Ok(Presentation {
        module: module.clone(),
        augmentation,
        steps,
    })
}

/// The submodule `I^n ⊆ R^n` (each coordinate ranging over `I`).
pub fn ideal_power_in_free(ideal: &Ideal, n: usize) -> Submodule {
    let ring = ideal.ring();
    let free = free_module(ring, n);
    let k = ring.rank();
    let mut gens = Vec::new();
    for t in 0..n {
        for x in ideal.carrier().generators(ring.group()) {
            let mut v = free.group().zero();
            v[t * k..(t + 1) * k].copy_from_slice(&x);
            gens.push(v);
        }
    }
    Submodule::generated(&free, &gens)
}

/// Kernel of `u: R^n → R, (c_i) ↦ Σ c_i x_i` for a minimal generating set
/// `x_1..x_n` of an ideal of a local ring.
pub fn minimal_syzygy(ring: &Ring, gens: &[Vec<i64>]) -> Result<Submodule> {
    let ideal = Ideal::generated(ring, gens.to_vec())?;
    let mu = minimal_generators(&ideal)?.mu;
    if gens.len() != mu {
        return Err(Error::NotMinimal {
            given: gens.len(),
            minimal: mu,
        });
    }
    let target = crate::finmod::regular_module(ring);
    free_map(ring, gens, &target).kernel()
}

/// Projective-dimension verdict up to a bound.
#[derive(Debug, Clone)]
pub enum PdResult {
    /// Projective; the basis lies in the ambient module. Over a non-local
    /// ring it is the union of the bases of the local pieces.
    Free { basis: Vec<Vec<i64>> },
    /// The minimal syzygies `Ω^1 … Ω^bound` are all nonzero.
    NotFreeUpTo { bound: usize, syzygies: Vec<Submodule> },
}

impl PdResult {
    pub fn is_free(&self) -> bool {
        matches!(self, PdResult::Free { .. })
    }
}

fn local_pd(module: &Submodule, bound: usize) -> Result<PdResult> {
    let ring = module.ambient().ring().clone();
    let gens = module.minimal_generators()?;
    let aug = free_map(&ring, &gens, module.ambient());
    let mut kernel = aug.kernel()?;
    if kernel.is_zero() {
        return Ok(PdResult::Free { basis: gens });
    }
    let mut syzygies = alloc::vec![kernel.clone()];
    for _ in 1..bound.max(1) {
        let gens = kernel.minimal_generators()?;
        let step = free_map(&ring, &gens, kernel.ambient());
        kernel = step.kernel()?;
        if kernel.is_zero() {
            return Err(Error::Internal("minimal syzygy vanished past level 1 over a local ring"));
        }
        syzygies.push(kernel.clone());
    }
    Ok(PdResult::NotFreeUpTo {
        bound: bound.max(1),
        syzygies,
    })
}

/// `eN` as a module over the factor ring `eR`, with its presentation inside
/// the ambient module.
pub fn restrict_to_factor(module: &Submodule, factor: &LocalFactor) -> Result<(Submodule, Subquotient)> {
    let x = module.ambient();
    let g = x.group();
    let rows: Vec<Vec<i64>> = module
        .carrier()
        .generators(g)
        .iter()
        .map(|n| x.act(&factor.idempotent, n))
        .collect();
    let en = Subgroup::generated(g, &rows);
    let pres = Subquotient::new(g, &en, &Subgroup::zero(g))?;
    let fr = factor.ring.group();
    let basis = pres.generators().to_vec();
    let mut action = Vec::with_capacity(factor.ring.rank() * basis.len());
    for i in 0..factor.ring.rank() {
        let r = factor.lift(&fr.basis_vector(i));
        for b in &basis {
            action.push(pres.coords(&x.act(&r, b))?);
        }
    }
    let m = FiniteModule::new(
        &factor.ring,
        pres.group().orders().to_vec(),
        action,
        alloc::format!("{}·({})", factor.ring.label(), module.label()),
    )?;
    Ok((Submodule::whole(&m), pres))
}

/// Free or not-free-up-to-`bound`. Non-local rings are split into local
/// factors and the module is checked on each.
pub fn projective_dimension_up_to(module: &Submodule, bound: usize) -> Result<PdResult> {
    let ring = module.ambient().ring().clone();
    if ring.is_local()? {
        return local_pd(module, bound);
    }
    let dec = decompose_into_local(&ring)?;
    let mut basis = Vec::new();
    for factor in &dec.factors {
        let (piece, pres) = restrict_to_factor(module, factor)?;
        match local_pd(&piece, bound)? {
            PdResult::Free { basis: b } => basis.extend(b.iter().map(|y| pres.lift(y))),
            not_free => return Ok(not_free),
        }
    }
    Ok(PdResult::Free { basis })
}

/// `R/I` as a submodule (the whole) of the quotient module.
pub fn cyclic_quotient(ideal: &Ideal) -> Result<Submodule> {
    let (q, _) = quotient_module(&ideal.as_submodule())?;
    Ok(Submodule::whole(&q))
}

/// `R/I` is projective iff `I = Re` for an idempotent `e`; returns `e`.
pub fn is_projective_cyclic(ideal: &Ideal) -> Result<Option<Vec<i64>>> {
    let ring = ideal.ring();
    Ok(ring
        .idempotents()?
        .into_iter()
        .find(|e| ring.principal_subgroup(e) == *ideal.carrier()))
}

/// Result of [`weak_nd_check_finite`].
#[derive(Debug, Clone)]
pub struct WeakNdReport {
    pub holds: bool,
    pub ideals_checked: usize,
    /// Ideals `I` whose `R/I` has projective dimension above `d`.
    pub witnesses: Vec<Ideal>,
}

/// Is every `n`-presented cyclic module of projective dimension `<= d`?
/// Each `R/I` gets an explicit `n`-step presentation, then a pd verdict
/// computed up to `min(bound, d + 1)`.
pub fn weak_nd_check_finite(ring: &Ring, n: usize, d: usize, bound: usize) -> Result<WeakNdReport> {
    let ideals = all_ideals(ring)?;
    let pd_bound = bound.min(d + 1);
    let mut witnesses = Vec::new();
    for ideal in &ideals {
        let module = cyclic_quotient(ideal)?;
        let pres = presentation(&module, n)?;
        if pres.depth() != n {
            return Err(Error::Internal("presentation is shorter than requested"));
        }
        let exceeds = match projective_dimension_up_to(&module, pd_bound)? {
            PdResult::Free { .. } => false,
            PdResult::NotFreeUpTo { bound: b, .. } => b > d,
        };
        if exceeds {
            witnesses.push(ideal.clone());
        }
    }
    Ok(WeakNdReport {
        holds: witnesses.is_empty(),
        ideals_checked: ideals.len(),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finmod::regular_module;
    use crate::finring::{make_quotient_poly, make_zmod};

    #[test]
    fn periodic_resolution_of_two_in_z4() {
        let r = make_zmod(4).unwrap();
        let two = Ideal::principal(&r, &[2]).unwrap().as_submodule();
        let p = presentation(&two, 2).unwrap();
        assert_eq!(p.free_ranks(), vec![1, 1, 1]);
        assert!(p.is_exact().unwrap());
        for s in &p.steps {
            assert_eq!(s.images(), &[vec![2]]);
        }
        match projective_dimension_up_to(&two, 4).unwrap() {
            PdResult::NotFreeUpTo { bound, syzygies } => {
                assert_eq!(bound, 4);
                for s in syzygies {
                    assert_eq!(s.elements().unwrap(), vec![vec![0], vec![2]]);
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_module_has_free_verdict() {
        let r = make_zmod(4).unwrap();
        let whole = Submodule::whole(&regular_module(&r));
        assert!(projective_dimension_up_to(&whole, 3).unwrap().is_free());
        let p = presentation(&whole, 2).unwrap();
        assert!(p.steps.iter().all(|s| s.source().rank() == 0));
    }

    #[test]
    fn syzygy_examples() {
        let r = make_zmod(4).unwrap();
        let k = minimal_syzygy(&r, &[vec![2]]).unwrap();
        assert_eq!(k.elements().unwrap(), vec![vec![0], vec![2]]);
        assert!(minimal_syzygy(&r, &[vec![1]]).unwrap().is_zero());
        assert_eq!(
            minimal_syzygy(&r, &[vec![2], vec![2]]).unwrap_err(),
            Error::NotMinimal { given: 2, minimal: 1 }
        );
    }

    #[test]
    fn z6_quotient_is_projective() {
        let r = make_zmod(6).unwrap();
        let i = Ideal::principal(&r, &[2]).unwrap();
        assert_eq!(is_projective_cyclic(&i).unwrap(), Some(vec![4]));
        let m = cyclic_quotient(&i).unwrap();
        assert!(projective_dimension_up_to(&m, 3).unwrap().is_free());
        assert!(weak_nd_check_finite(&r, 2, 0, 4).unwrap().holds);
    }

    #[test]
    fn z4_is_not_weak_2_0() {
        let r = make_zmod(4).unwrap();
        assert_eq!(is_projective_cyclic(&Ideal::principal(&r, &[2]).unwrap()).unwrap(), None);
        assert_eq!(is_projective_cyclic(&Ideal::zero(&r)).unwrap(), Some(vec![0]));
        let rep = weak_nd_check_finite(&r, 2, 0, 4).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.witnesses, vec![Ideal::principal(&r, &[2]).unwrap()]);
    }

    #[test]
    fn field_is_weak_nd() {
        let f = make_quotient_poly(3, &[1, 0, 1]).unwrap();
        assert!(weak_nd_check_finite(&f, 3, 0, 4).unwrap().holds);
    }
}
