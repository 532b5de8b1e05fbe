//! Finite modules over a [`FiniteRing`], linear maps, submodules, and the
//! trivial extension `A ∝ E`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::budget;
use crate::error::{Error, Result};
use crate::finring::{local_maximal_ideal, FiniteRing, Ring};
use crate::group::{is_well_defined, preimage, AbelianGroup, Subgroup, Subquotient};
use crate::idealops::Ideal;

pub type Module = Arc<FiniteModule>;

/// A module `E` over a finite ring `A`, given by its additive presentation
/// and the action `b_i · m_j` of ring basis vectors on module basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModule {
    ring: Ring,
    group: AbelianGroup,
    action: Vec<Vec<i64>>,
    label: String,
}

fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl FiniteModule {
    /// `action[i * l + j] = b_i · m_j` for ring basis `b_i` and module basis
    /// `m_j`. The module axioms are checked on basis vectors.
    pub fn new(
        ring: &Ring,
        orders: Vec<i64>,
        action: Vec<Vec<i64>>,
        label: impl Into<String>,
    ) -> Result<Module> {
        let group = AbelianGroup::new(orders)?;
        let k = ring.rank();
        let l = group.rank();
        if action.len() != k * l || action.iter().any(|r| r.len() != l) {
            return Err(Error::InvalidInput("action constants have the wrong shape".into()));
        }
        let action = action.into_iter().map(|r| group.reduced(r)).collect();
        let m = FiniteModule {
            ring: ring.clone(),
            group,
            action,
            label: label.into(),
        };
        m.verify_axioms()?;
        Ok(Arc::new(m))
    }

    fn verify_axioms(&self) -> Result<()> {
        let k = self.ring.rank();
        let l = self.group.rank();
        let rg = self.ring.group();
        let g = &self.group;
        for i in 0..k {
            for j in 0..l {
                let v = &self.action[i * l + j];
                if !g.is_zero(&g.scale(rg.orders()[i], v)) || !g.is_zero(&g.scale(g.orders()[j], v)) {
                    return Err(Error::InvalidInput(format!(
                        "b{i}·m{j} is not compatible with the additive orders"
                    )));
                }
            }
        }
        for j in 0..l {
            let mj = g.basis_vector(j);
            if self.act(self.ring.one_coeffs(), &mj) != mj {
                return Err(Error::InvalidInput(format!("1·m{j} ≠ m{j}")));
            }
            for i in 0..k {
                let bi = rg.basis_vector(i);
                for t in 0..k {
                    let bt = rg.basis_vector(t);
                    let left = self.act(&self.ring.mul(&bi, &bt), &mj);
                    let right = self.act(&bi, &self.act(&bt, &mj));
                    if left != right {
                        return Err(Error::InvalidInput(format!(
                            "(b{i}b{t})·m{j} ≠ b{i}·(b{t}·m{j})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
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

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn action_table(&self) -> &[Vec<i64>] {
        &self.action
    }

    pub fn act(&self, r: &[i64], m: &[i64]) -> Vec<i64> {
        let l = self.rank();
        let mut out = vec![0i64; l];
        for (i, ri) in r.iter().enumerate() {
            if *ri == 0 {
                continue;
            }
            for (j, mj) in m.iter().enumerate() {
                if *mj == 0 {
                    continue;
                }
                let c = ri * mj;
                for (o, t) in out.iter_mut().zip(&self.action[i * l + j]) {
                    *o += c * t;
                }
            }
        }
        self.group.reduced(out)
    }

    /// Images of the module basis under `m ↦ r·m`.
    pub fn act_images(&self, r: &[i64]) -> Vec<Vec<i64>> {
        (0..self.rank())
            .map(|j| self.act(r, &self.group.basis_vector(j)))
            .collect()
    }

    /// Additive span of `R·gens`.
    pub fn span(&self, gens: &[Vec<i64>]) -> Subgroup {
        let rg = self.ring.group();
        let mut rows = Vec::with_capacity(gens.len() * self.ring.rank());
        for gen in gens {
            for i in 0..self.ring.rank() {
                rows.push(self.act(&rg.basis_vector(i), gen));
            }
        }
        Subgroup::generated(&self.group, &rows)
    }

    /// Is the subgroup closed under the ring action?
    pub fn is_stable(&self, sub: &Subgroup) -> bool {
        let rg = self.ring.group();
        sub.generators(&self.group).iter().all(|g| {
            (0..self.ring.rank()).all(|i| sub.contains(&self.group, &self.act(&rg.basis_vector(i), g)))
        })
    }
}

/// `R` as a module over itself.
pub fn regular_module(ring: &Ring) -> Module {
    Arc::new(FiniteModule {
        ring: ring.clone(),
        group: ring.group().clone(),
        action: ring.table().to_vec(),
        label: ring.label().into(),
    })
}

/// `M_1 ⊕ … ⊕ M_n`.
pub fn direct_sum(ring: &Ring, parts: &[Module]) -> Result<Module> {
    if parts.iter().any(|p| !same_ring(p.ring(), ring)) {
        return Err(Error::RingMismatch);
    }
    let groups: Vec<&AbelianGroup> = parts.iter().map(|p| p.group()).collect();
    let group = AbelianGroup::direct_sum(&groups);
    let k = ring.rank();
    let l = group.rank();
    let mut action = vec![vec![0i64; l]; k * l];
    let mut offset = 0;
    for p in parts {
        let pl = p.rank();
        for i in 0..k {
            for j in 0..pl {
                action[i * l + offset + j][offset..offset + pl].copy_from_slice(&p.action[i * pl + j]);
            }
        }
        offset += pl;
    }
    let label = if parts.is_empty() {
        "0".into()
    } else {
        parts.iter().map(|p| p.label()).collect::<Vec<_>>().join(" ⊕ ")
    };
    Ok(Arc::new(FiniteModule {
        ring: ring.clone(),
        group,
        action,
        label,
    }))
}

/// `R^n`.
pub fn free_module(ring: &Ring, n: usize) -> Module {
    let copies = vec![regular_module(ring); n];
    let mut m = direct_sum(ring, &copies).expect("copies share the ring");
    let label = match n {
        0 => "0".into(),
        1 => ring.label().into(),
        _ => format!("({})^{n}", ring.label()),
    };
    Arc::get_mut(&mut m).expect("fresh module").label = label;
    m
}

/// `M / N` together with the projection `M → M/N`.
pub fn quotient_module(n: &Submodule) -> Result<(Module, ModuleMap)> {
    let m = n.ambient();
    let g = m.group();
    let pres = Subquotient::new(g, &Subgroup::whole(g), n.carrier())?;
    let q_group = pres.group();
    let k = m.ring().rank();
    let lifts = pres.generators().to_vec();
    let mut action = Vec::with_capacity(k * lifts.len());
    let rg = m.ring().group();
    for i in 0..k {
        for lift in &lifts {
            action.push(pres.coords(&m.act(&rg.basis_vector(i), lift))?);
        }
    }
    let label = format!("{}/{}", m.label(), n.label());
    let q = if q_group.rank() == 0 {
        Arc::new(FiniteModule {
            ring: m.ring().clone(),
            group: q_group,
            action: Vec::new(),
            label,
        })
    } else {
        FiniteModule::new(m.ring(), q_group.orders().to_vec(), action, label)?
    };
    let images = (0..m.rank())
        .map(|j| pres.coords(&g.basis_vector(j)))
        .collect::<Result<Vec<_>>>()?;
    let proj = ModuleMap::new(m, &q, images)?;
    Ok((q, proj))
}

/// `(A/M)^r` for a local ring `A`, with `A` acting through `A → A/M`.
pub fn residue_field_power(ring: &Ring, r: usize) -> Result<Module> {
    if r == 0 {
        return Err(Error::InvalidInput("residue_field_power needs r >= 1".into()));
    }
    let max = local_maximal_ideal(ring)?;
    let (k, _) = quotient_module(&max.as_submodule())?;
    let mut m = direct_sum(ring, &vec![k; r])?;
    let inner = Arc::get_mut(&mut m).expect("fresh module");
    inner.label = if r == 1 {
        format!("{}/M", ring.label())
    } else {
        format!("({}/M)^{r}", ring.label())
    };
    Ok(m)
}

/// A linear map, given by the images of the source basis.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    images: Vec<Vec<i64>>,
}

impl ModuleMap {
    pub fn new(source: &Module, target: &Module, images: Vec<Vec<i64>>) -> Result<ModuleMap> {
        if !same_ring(source.ring(), target.ring()) {
            return Err(Error::RingMismatch);
        }
        let images: Vec<Vec<i64>> = images
            .into_iter()
            .map(|v| {
                if v.len() == target.rank() {
                    Ok(target.group().reduced(v))
                } else {
                    Err(Error::InvalidInput("image has the wrong length".into()))
                }
            })
            .collect::<Result<_>>()?;
        if !is_well_defined(source.group(), &images, target.group()) {
            return Err(Error::InvalidInput("images do not respect the additive orders".into()));
        }
        let map = ModuleMap {
            source: source.clone(),
            target: target.clone(),
            images,
        };
        let rg = source.ring().group();
        for i in 0..source.ring().rank() {
            let bi = rg.basis_vector(i);
            for j in 0..source.rank() {
                let mj = source.group().basis_vector(j);
                if map.apply(&source.act(&bi, &mj)) != target.act(&bi, &map.apply(&mj)) {
                    return Err(Error::InvalidInput(format!("map is not linear on (b{i}, m{j})")));
                }
            }
        }
        Ok(map)
    }

    /// Assemble a map whose linearity holds by construction (images of the
    /// form `b_i · g`); only the shapes are checked.
    pub fn from_parts(source: Module, target: Module, images: Vec<Vec<i64>>) -> ModuleMap {
        debug_assert_eq!(images.len(), source.rank());
        debug_assert!(images.iter().all(|v| v.len() == target.rank()));
        ModuleMap {
            source,
            target,
            images,
        }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn images(&self) -> &[Vec<i64>] {
        &self.images
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let mut out = self.target.group().zero();
        for (c, img) in x.iter().zip(&self.images) {
            if *c != 0 {
                for (o, v) in out.iter_mut().zip(img) {
                    *o += c * v;
                }
            }
        }
        self.target.group().reduced(out)
    }

    /// Kernel, computed as a group kernel and then checked to be stable.
    pub fn kernel(&self) -> Result<Submodule> {
        let carrier = preimage(
            self.source.group(),
            &self.images,
            self.target.group(),
            &Subgroup::zero(self.target.group()),
        );
        Submodule::from_carrier(&self.source, carrier)
    }

    pub fn image(&self) -> Submodule {
        Submodule::generated(&self.target, &self.images)
    }

    /// Preimage of a submodule of the target.
    pub fn preimage_of(&self, sub: &Submodule) -> Result<Submodule> {
        let carrier = preimage(self.source.group(), &self.images, self.target.group(), sub.carrier());
        Submodule::from_carrier(&self.source, carrier)
    }
}

/// A submodule of a [`FiniteModule`], stored by its generators and the
/// canonical additive basis of its carrier.
#[derive(Debug, Clone)]
pub struct Submodule {
    ambient: Module,
    generators: Vec<Vec<i64>>,
    carrier: Subgroup,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient == other.ambient)
            && self.carrier == other.carrier
    }
}

impl Eq for Submodule {}

impl Submodule {
    /// Smallest submodule containing `gens`.
    pub fn generated(ambient: &Module, gens: &[Vec<i64>]) -> Submodule {
        let gens: Vec<Vec<i64>> = gens.iter().map(|g| ambient.group().reduced(g.clone())).collect();
        Submodule {
            carrier: ambient.span(&gens),
            generators: gens,
            ambient: ambient.clone(),
        }
    }

    /// Wrap a subgroup already known to be a submodule; the stability is
    /// checked and violations reported as internal errors.
    pub fn from_carrier(ambient: &Module, carrier: Subgroup) -> Result<Submodule> {
        if !ambient.is_stable(&carrier) {
            return Err(Error::Internal("subgroup is not closed under the ring action"));
        }
        let generators = greedy_generators(ambient, &carrier);
        Ok(Submodule {
            ambient: ambient.clone(),
            generators,
            carrier,
        })
    }

    pub fn zero(ambient: &Module) -> Submodule {
        Submodule::generated(ambient, &[])
    }

    pub fn whole(ambient: &Module) -> Submodule {
        let gens: Vec<Vec<i64>> = (0..ambient.rank()).map(|j| ambient.group().basis_vector(j)).collect();
        Submodule::generated(ambient, &gens)
    }

    pub fn ambient(&self) -> &Module {
        &self.ambient
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn carrier(&self) -> &Subgroup {
        &self.carrier
    }

    pub fn label(&self) -> String {
        if self.generators.is_empty() {
            return "0".into();
        }
        let gens: Vec<String> = self.generators.iter().map(|g| format!("{g:?}")).collect();
        format!("<{}>", gens.join(", "))
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.carrier.contains(self.ambient.group(), x)
    }

    pub fn order(&self) -> u128 {
        self.carrier.order(self.ambient.group())
    }

    pub fn is_zero(&self) -> bool {
        self.carrier.is_zero(self.ambient.group())
    }

    pub fn elements(&self) -> Result<Vec<Vec<i64>>> {
        self.carrier.elements(self.ambient.group())
    }

    pub fn is_submodule_of(&self, other: &Submodule) -> bool {
        self.carrier.is_subgroup_of(self.ambient.group(), &other.carrier)
    }

    pub fn meet(&self, other: &Submodule) -> Result<Submodule> {
        self.check_ambient(other)?;
        Submodule::from_carrier(&self.ambient, self.carrier.meet(self.ambient.group(), &other.carrier))
    }

    pub fn join(&self, other: &Submodule) -> Result<Submodule> {
        self.check_ambient(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(Submodule {
            ambient: self.ambient.clone(),
            generators: gens,
            carrier: self.carrier.join(self.ambient.group(), &other.carrier),
        })
    }

    fn check_ambient(&self, other: &Submodule) -> Result<()> {
        if Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient == other.ambient {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// `I·N` for an ideal `I` of the base ring.
    pub fn ideal_times(&self, ideal: &Ideal) -> Result<Submodule> {
        if !same_ring(ideal.ring(), self.ambient.ring()) {
            return Err(Error::RingMismatch);
        }
        let g = self.ambient.group();
        let mut rows = Vec::new();
        for a in ideal.carrier().generators(ideal.ring().group()) {
            for n in self.carrier.generators(g) {
                rows.push(self.ambient.act(&a, &n));
            }
        }
        let carrier = Subgroup::generated(g, &rows);
        Submodule::from_carrier(&self.ambient, carrier)
    }

    /// Minimal generators over a local ring: lifts of a basis of `N/MN`.
    /// Candidates are tried in order, the given generators first.
    pub fn minimal_generators(&self) -> Result<Vec<Vec<i64>>> {
        let ring = self.ambient.ring();
        let max = local_maximal_ideal(ring)?;
        let mn = self.ideal_times(&max)?;
        let g = self.ambient.group();
        let mut span = mn.carrier.clone();
        let mut chosen = Vec::new();
        let mut candidates = self.generators.clone();
        candidates.extend(self.carrier.generators(g));
        for c in candidates {
            if !span.contains(g, &c) {
                span = span.join(g, &self.ambient.span(core::slice::from_ref(&c)));
                chosen.push(c);
            }
        }
        if span != self.carrier {
            return Err(Error::Internal("greedy lifts do not span the submodule"));
        }
        let q = ring.size() / max.order();
        let quotient = self.order() / mn.order();
        if q.checked_pow(chosen.len() as u32) != Some(quotient) {
            return Err(Error::Internal("dimension of N/MN does not match the generator count"));
        }
        Ok(chosen)
    }

    /// Replace the generator list, checking it generates the same carrier.
    pub fn with_generators(&self, gens: Vec<Vec<i64>>) -> Result<Submodule> {
        let other = Submodule::generated(&self.ambient, &gens);
        if other.carrier != self.carrier {
            return Err(Error::InvalidInput("generators span a different submodule".into()));
        }
        Ok(other)
    }
}

/// Small generating set: carrier generators kept only when they enlarge the
/// submodule generated so far.
fn greedy_generators(ambient: &Module, carrier: &Subgroup) -> Vec<Vec<i64>> {
    let g = ambient.group();
    let mut span = Subgroup::zero(g);
    let mut out = Vec::new();
    for c in carrier.generators(g) {
        if !span.contains(g, &c) {
            span = span.join(g, &ambient.span(core::slice::from_ref(&c)));
            out.push(c);
        }
    }
    out
}

/// `R = A ∝ E` with its projections and section.
#[derive(Debug, Clone)]
pub struct TrivialExtension {
    pub base: Ring,
    pub fiber: Module,
    pub ring: Ring,
}

/// Build `A ∝ E` with `(a,e)(a',e') = (aa', ae' + a'e)`. The additive basis
/// is `(b_i, 0)` followed by `(0, m_j)`.
pub fn trivial_extension(base: &Ring, fiber: &Module) -> Result<TrivialExtension> {
    if !same_ring(base, fiber.ring()) {
        return Err(Error::RingMismatch);
    }
    budget::check_elements(base.size().saturating_mul(fiber.size()))?;
    let k = base.rank();
    let l = fiber.rank();
    let n = k + l;
    let mut table = vec![vec![0i64; n]; n * n];
    for i in 0..k {
        for j in 0..k {
            table[i * n + j][..k].copy_from_slice(&base.table()[i * k + j]);
        }
        for j in 0..l {
            let v = &fiber.action_table()[i * l + j];
            table[i * n + k + j][k..].copy_from_slice(v);
            table[(k + j) * n + i][k..].copy_from_slice(v);
        }
    }
    let mut orders = base.group().orders().to_vec();
    orders.extend_from_slice(fiber.group().orders());
    let mut one = base.one_coeffs().to_vec();
    one.extend(core::iter::repeat_n(0, l));
    let ring = FiniteRing::from_structure(
        format!("{} ∝ {}", base.label(), fiber.label()),
        orders,
        table,
        one,
    )?;
    Ok(TrivialExtension {
        base: base.clone(),
        fiber: fiber.clone(),
        ring,
    })
}

impl TrivialExtension {
    pub fn proj_a(&self, x: &[i64]) -> Vec<i64> {
        x[..self.base.rank()].to_vec()
    }

    pub fn proj_e(&self, x: &[i64]) -> Vec<i64> {
        x[self.base.rank()..].to_vec()
    }

    pub fn embed(&self, a: &[i64], e: &[i64]) -> Vec<i64> {
        let mut v = self.base.group().reduced(a.to_vec());
        v.extend(self.fiber.group().reduced(e.to_vec()));
        v
    }

    /// The law `(aa', ae' + a'e)` evaluated directly from the components.
    pub fn law(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let (a, e) = (self.proj_a(x), self.proj_e(x));
        let (b, f) = (self.proj_a(y), self.proj_e(y));
        let fg = self.fiber.group();
        let e_part = fg.add(&self.fiber.act(&a, &f), &self.fiber.act(&b, &e));
        self.embed(&self.base.mul(&a, &b), &e_part)
    }

    /// `U ∝ E'` as an ideal of `R`, for an ideal `U` of `A` and a submodule
    /// `E'` of `E`.
    pub fn ideal_of(&self, u: &Ideal, e: &Submodule) -> Result<Ideal> {
        let mut gens: Vec<Vec<i64>> = u
            .carrier()
            .generators(self.base.group())
            .iter()
            .map(|a| self.embed(a, &self.fiber.group().zero()))
            .collect();
        gens.extend(
            e.carrier()
                .generators(self.fiber.group())
                .iter()
                .map(|f| self.embed(&self.base.group().zero(), f)),
        );
        let carrier = Subgroup::generated(self.ring.group(), &gens);
        Ideal::from_carrier(&self.ring, carrier)
    }

    /// `0 ∝ E`.
    pub fn fiber_ideal(&self) -> Result<Ideal> {
        self.ideal_of(&Ideal::zero(&self.base), &Submodule::whole(&self.fiber))
    }

    /// `proj_a(N)` and `proj_e(N)` of an ideal of `R`, as an ideal of `A`
    /// and a submodule of `E`.
    pub fn components_of(&self, ideal: &Ideal) -> Result<(Ideal, Submodule)> {
        let gens = ideal.carrier().generators(self.ring.group());
        let u = Ideal::generated(&self.base, gens.iter().map(|x| self.proj_a(x)).collect())?;
        let e = Submodule::generated(&self.fiber, &gens.iter().map(|x| self.proj_e(x)).collect::<Vec<_>>());
        Ok((u, e))
    }
}
