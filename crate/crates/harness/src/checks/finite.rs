//! Checks over the finite tier: every ring is rebuilt from its recipe and
//! every claim is decided by exhaustive computation inside it.

use anyhow::{anyhow, Context};
use rand::seq::index;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use trivext_core::finmod::{free_module, regular_module, TrivialExtension};
use trivext_core::finring::local_maximal_ideal;
use trivext_core::idealops::{
    all_ideals, annihilator, componentwise_check, intersect, inverse_finite, is_von_neumann_regular,
    minimal_generators, product, total_quotient_is_self, v_closure_finite, ComponentwiseFailure,
};
use trivext_core::resolve::{free_map, ideal_power_in_free, minimal_syzygy, weak_nd_check_finite};
use trivext_core::{Ideal, Ring, Submodule};

use super::{Ctx, Outcome, Tally};
use crate::recipe::{Built, Fiber, Recipe};
use crate::report::Witness;
use crate::suite::{Family, Instance};

fn carrier_gens(i: &Ideal) -> Vec<Vec<i64>> {
    i.carrier().generators(i.ring().group())
}

fn proper_nonzero_ideals(ring: &Ring) -> anyhow::Result<Vec<Ideal>> {
    Ok(all_ideals(ring)?
        .into_iter()
        .filter(|i| !i.is_zero() && !i.is_whole())
        .collect())
}

/// Indices `0..n`, or a sorted seeded sample of `cap` of them.
fn pick(rng: &mut ChaCha8Rng, n: usize, cap: usize) -> Vec<usize> {
    if n <= cap {
        return (0..n).collect();
    }
    let mut v = index::sample(rng, n, cap).into_vec();
    v.sort_unstable();
    v
}

fn random_element(rng: &mut ChaCha8Rng, ring: &Ring) -> Vec<i64> {
    ring.group().orders().iter().map(|&d| rng.gen_range(0..d)).collect()
}

fn rebuild(w: &Witness) -> anyhow::Result<Built> {
    w.ring.as_ref().ok_or_else(|| anyhow!("witness has no ring recipe"))?.build()
}

fn rebuild_ext(w: &Witness) -> anyhow::Result<TrivialExtension> {
    rebuild(w)?.ext.ok_or_else(|| anyhow!("witness ring is not a trivial extension"))
}

fn ext_of(inst: &Instance) -> anyhow::Result<&TrivialExtension> {
    inst.ext.as_ref().with_context(|| format!("{} is not a trivial extension", inst.label))
}

// ---- ax.ring ----

/// Which axiom, if any, fails on the triple `(x, y, z)`.
fn axiom_failure(b: &Built, x: &[i64], y: &[i64], z: &[i64]) -> Option<&'static str> {
    let r = &b.ring;
    let g = r.group();
    let one = r.one_coeffs();
    if r.mul(x, y) != r.mul(y, x) {
        return Some("commutativity");
    }
    if r.mul(x, one) != g.reduced(x.to_vec()) {
        return Some("identity");
    }
    if r.mul(&r.mul(x, y), z) != r.mul(x, &r.mul(y, z)) {
        return Some("associativity");
    }
    if r.mul(x, &g.add(y, z)) != g.add(&r.mul(x, y), &r.mul(x, z)) {
        return Some("distributivity");
    }
    if let Some(t) = &b.ext {
        if t.law(x, y) != r.mul(x, y) {
            return Some("trivial-extension law");
        }
    }
    None
}

struct Tables {
    n: usize,
    mul: Vec<u16>,
    add: Vec<u16>,
}

fn tables(r: &Ring) -> anyhow::Result<Tables> {
    let g = r.group();
    let elems = g.elements()?;
    let n = elems.len();
    let mut mul = vec![0u16; n * n];
    let mut add = vec![0u16; n * n];
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            mul[i * n + j] = g.index_of(&r.mul(x, y)) as u16;
            add[i * n + j] = g.index_of(&g.add(x, y)) as u16;
        }
    }
    Ok(Tables { n, mul, add })
}

/// First failing triple of indices under the exhaustive table check.
fn exhaustive_axioms(b: &Built) -> anyhow::Result<Option<(usize, usize, usize)>> {
    let r = &b.ring;
    let t = tables(r)?;
    let n = t.n;
    let m = |i: usize, j: usize| t.mul[i * n + j] as usize;
    let a = |i: usize, j: usize| t.add[i * n + j] as usize;
    let one = r.group().index_of(r.one_coeffs());
    let elems = r.group().elements()?;
    for x in 0..n {
        if m(x, one) != x {
            return Ok(Some((x, 0, 0)));
        }
        for y in 0..n {
            if m(x, y) != m(y, x) {
                return Ok(Some((x, y, 0)));
            }
            if let Some(e) = &b.ext {
                if r.group().index_of(&e.law(&elems[x], &elems[y])) != m(x, y) {
                    return Ok(Some((x, y, 0)));
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = m(x, y);
            for z in 0..n {
                if m(xy, z) != m(x, m(y, z)) || m(x, a(y, z)) != a(xy, m(x, z)) {
                    return Ok(Some((x, y, z)));
                }
            }
        }
    }
    Ok(None)
}

pub fn ax_ring(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let mut tally = Tally::default();
    let (mut exhaustive, mut sampled) = (0usize, 0usize);
    for inst in &ctx.suite.instances {
        let built = Built {
            ring: inst.ring.clone(),
            ext: inst.ext.clone(),
        };
        tally.instances += 1;
        let triple = if inst.size() <= ctx.config.exhaustive_limit {
            exhaustive += 1;
            exhaustive_axioms(&built)?.map(|(x, y, z)| {
                let g = inst.ring.group();
                (g.element_at(x), g.element_at(y), g.element_at(z))
            })
        } else {
            sampled += 1;
            let mut found = None;
            for _ in 0..ctx.config.axiom_samples {
                let x = random_element(&mut ctx.rng, &inst.ring);
                let y = random_element(&mut ctx.rng, &inst.ring);
                let z = random_element(&mut ctx.rng, &inst.ring);
                if axiom_failure(&built, &x, &y, &z).is_some() {
                    found = Some((x, y, z));
                    break;
                }
            }
            found
        };
        if let Some((x, y, z)) = triple {
            let what = axiom_failure(&built, &x, &y, &z).unwrap_or("axiom");
            return Ok(tally.fail(Witness::finite(
                "ax.ring",
                &inst.recipe,
                vec![x, y, z],
                format!("{what} fails in {}", inst.label),
            )));
        }
    }
    tally
        .evidence
        .push(format!("{exhaustive} rings checked exhaustively, {sampled} by sampling"));
    Ok(tally.confirmed())
}

pub fn ax_ring_replay(w: &Witness) -> anyhow::Result<bool> {
    let b = rebuild(w)?;
    anyhow::ensure!(w.elements.len() == 3, "expected a triple");
    Ok(axiom_failure(&b, &w.elements[0], &w.elements[1], &w.elements[2]).is_some())
}

// ---- fin.vtrivial ----

fn vtrivial_failure(ring: &Ring) -> anyhow::Result<Option<(Vec<Vec<i64>>, String)>> {
    if let Some(x) = total_quotient_is_self(ring)? {
        return Ok(Some((vec![x], "regular non-unit".into())));
    }
    for i in all_ideals(ring)? {
        if i.is_zero() {
            continue;
        }
        if !inverse_finite(&i)?.is_whole() {
            return Ok(Some((carrier_gens(&i), "I^-1 ≠ R".into())));
        }
        if !v_closure_finite(&i)?.is_whole() {
            return Ok(Some((carrier_gens(&i), "I_v ≠ R".into())));
        }
    }
    Ok(None)
}

pub fn vtrivial(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let mut tally = Tally::default();
    let mut ideals = 0usize;
    let mut strict = None;
    for inst in &ctx.suite.instances {
        tally.instances += 1;
        if let Some((gens, what)) = vtrivial_failure(&inst.ring)? {
            return Ok(tally.fail(Witness::finite("fin.vtrivial", &inst.recipe, gens, format!("{what} in {}", inst.label))));
        }
        let all = all_ideals(&inst.ring)?;
        ideals += all.len() - 1;
        if strict.is_none() {
            // a principal (a) with (a)_v = R strictly larger than (a)
            for i in &all {
                if !i.is_zero() && !i.is_whole() && i.generators().len() == 1 {
                    strict = Some(format!(
                        "{}: ({})_v = {} ≠ ({})",
                        inst.label,
                        show_gen(&i.generators()[0]),
                        inst.label,
                        show_gen(&i.generators()[0])
                    ));
                    break;
                }
            }
        }
    }
    tally.evidence.push(format!("{ideals} nonzero ideals with I^-1 = I_v = R"));
    tally.evidence.extend(strict);
    Ok(tally.confirmed())
}

fn show_gen(x: &[i64]) -> String {
    if x.len() == 1 {
        x[0].to_string()
    } else {
        format!("{x:?}")
    }
}

pub fn vtrivial_replay(w: &Witness) -> anyhow::Result<bool> {
    Ok(vtrivial_failure(&rebuild(w)?.ring)?.is_some())
}

// ---- thm3.10.fin ----

fn weak_vs_vnr(ring: &Ring, bound: usize) -> anyhow::Result<(bool, bool, Vec<Vec<Vec<i64>>>)> {
    let weak = weak_nd_check_finite(ring, 2, 0, bound)?;
    let vnr = is_von_neumann_regular(ring)?.0;
    Ok((weak.holds, vnr, weak.witnesses.iter().map(carrier_gens).collect()))
}

pub fn thm310(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let mut tally = Tally::default();
    let mut regular = 0usize;
    for inst in &ctx.suite.instances {
        tally.instances += 1;
        let (weak, vnr, wit) = weak_vs_vnr(&inst.ring, ctx.config.pd_bound)?;
        if weak != vnr {
            let w = Witness::finite(
                "thm3.10.fin",
                &inst.recipe,
                wit.into_iter().flatten().collect(),
                format!("{}: weak (2,0) = {weak}, von Neumann regular = {vnr}", inst.label),
            );
            return Ok(tally.fail(w));
        }
        regular += vnr as usize;
    }
    tally.evidence.push(format!(
        "{regular} von Neumann regular rings, {} others with pd R/I > 0",
        tally.instances - regular
    ));
    Ok(tally.confirmed())
}

pub fn thm310_replay(w: &Witness) -> anyhow::Result<bool> {
    let (weak, vnr, _) = weak_vs_vnr(&rebuild(w)?.ring, 4)?;
    Ok(weak != vnr)
}

// ---- prod.componentwise ----

fn componentwise_failure(ring: &Ring) -> anyhow::Result<Option<(Vec<Vec<i64>>, Vec<usize>, String)>> {
    let rep = componentwise_check(ring)?;
    Ok(rep.failure.map(|f| match f {
        ComponentwiseFailure::Annihilator { element } => (vec![element], vec![], "(0:C) ≠ ∏ (0:c_j)".into()),
        ComponentwiseFailure::PrincipalIntersection { elements } => {
            (elements, vec![], "principal intersection not componentwise".into())
        }
        ComponentwiseFailure::Intersection { left, right } => {
            let g = vec![left.len(), right.len()];
            (left.into_iter().chain(right).collect(), g, "I ∩ J ≠ ∏ (I_j ∩ J_j)".into())
        }
        ComponentwiseFailure::Inverse { ideal } => (ideal, vec![], "I^-1 ≠ ∏ I_j^-1".into()),
    }))
}

pub fn componentwise(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let mut tally = Tally::default();
    let mut rings = 0usize;
    for inst in ctx.suite.of_family(Family::Products) {
        rings += 1;
        tally.instances += componentwise_check(&inst.ring)?.instances;
        if let Some((els, groups, what)) = componentwise_failure(&inst.ring)? {
            let w = Witness::finite("prod.componentwise", &inst.recipe, els, format!("{what} in {}", inst.label));
            return Ok(tally.fail(w.grouped(groups)));
        }
    }
    tally.evidence.push(format!("{rings} product rings"));
    Ok(tally.confirmed())
}

pub fn componentwise_replay(w: &Witness) -> anyhow::Result<bool> {
    Ok(componentwise_failure(&rebuild(w)?.ring)?.is_some())
}

// ---- ex2.4.ann ----

fn ex24_ann_at(ring: &Ring, m: &Ideal, c: &[i64]) -> anyhow::Result<bool> {
    Ok(annihilator(ring, c)? == *m)
}

pub fn ex24_ann(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let mut tally = Tally::default();
    let mut rings = 0usize;
    for inst in ctx.suite.of_family(Family::M2zero) {
        let m = local_maximal_ideal(&inst.ring)?;
        rings += 1;
        if !product(&m, &m)?.is_zero() {
            anyhow::bail!("{} is in the M²=0 family but M² ≠ 0", inst.label);
        }
        for c in m.elements()? {
            if inst.ring.group().is_zero(&c) {
                continue;
            }
            tally.instances += 1;
            if !ex24_ann_at(&inst.ring, &m, &c)? {
                let w = Witness::finite("ex2.4.ann", &inst.recipe, vec![c], format!("(0:c) ≠ M in {}", inst.label));
                return Ok(tally.fail(w));
            }
        }
    }
    tally.evidence.push(format!("{rings} local rings with M² = 0"));
    Ok(tally.confirmed())
}

pub fn ex24_ann_replay(w: &Witness) -> anyhow::Result<bool> {
    let r = rebuild(w)?.ring;
    let m = local_maximal_ideal(&r)?;
    let c = w.elements.first().ok_or_else(|| anyhow!("missing element"))?;
    Ok(!ex24_ann_at(&r, &m, c)?)
}

// ---- ex2.4.ker ----

fn ex24_ker_holds(ring: &Ring, m: &Ideal, gens: &[Vec<i64>]) -> anyhow::Result<bool> {
    Ok(minimal_syzygy(ring, gens)? == ideal_power_in_free(m, gens.len()))
}

pub fn ex24_ker(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let mut tally = Tally::default();
    for inst in ctx.suite.of_family(Family::M2zero) {
        let m = local_maximal_ideal(&inst.ring)?;
        let ideals = proper_nonzero_ideals(&inst.ring)?;
        for k in pick(&mut ctx.rng, ideals.len(), ctx.config.ideals_per_ring) {
            tally.instances += 1;
            let gens = minimal_generators(&ideals[k])?.gens;
            if !ex24_ker_holds(&inst.ring, &m, &gens)? {
                let w = Witness::finite("ex2.4.ker", &inst.recipe, gens, format!("Ker(u) ≠ M^n in {}", inst.label));
                return Ok(tally.fail(w));
            }
        }
    }
    tally.evidence.push(format!("{} ideals with Ker(u) = M^n", tally.instances));
    Ok(tally.confirmed())
}

pub fn ex24_ker_replay(w: &Witness) -> anyhow::Result<bool> {
    let r = rebuild(w)?.ring;
    let m = local_maximal_ideal(&r)?;
    Ok(!ex24_ker_holds(&r, &m, &w.elements)?)
}

// ---- lem2.7.formulas ----

#[derive(Clone, Copy, PartialEq, Eq)]
enum AnnCase {
    NonzeroA,
    ZeroA,
    /// `a` is a unit or `c = 0`; the lemma says nothing.
    Outside,
}

fn lem27_at(t: &TrivialExtension, ma: &Ideal, c: &[i64]) -> anyhow::Result<(AnnCase, bool)> {
    let a = t.proj_a(c);
    let e = t.proj_e(c);
    let whole_e = Submodule::whole(&t.fiber);
    let a_zero = t.base.group().is_zero(&a);
    let (case, expected) = if !a_zero && ma.contains(&a) {
        (AnnCase::NonzeroA, t.ideal_of(&annihilator(&t.base, &a)?, &whole_e)?)
    } else if a_zero && !t.fiber.group().is_zero(&e) {
        (AnnCase::ZeroA, t.ideal_of(ma, &whole_e)?)
    } else {
        return Ok((AnnCase::Outside, true));
    };
    Ok((case, annihilator(&t.ring, c)? == expected))
}

pub fn lem27(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let mut tally = Tally::default();
    let (mut nonzero_a, mut zero_a) = (0usize, 0usize);
    for inst in ctx.suite.of_family(Family::Mezero) {
        let t = ext_of(inst)?;
        let ma = local_maximal_ideal(&t.base)?;
        for c in t.ring.group().elements()? {
            let (case, ok) = lem27_at(t, &ma, &c)?;
            match case {
                AnnCase::NonzeroA => nonzero_a += 1,
                AnnCase::ZeroA => zero_a += 1,
                AnnCase::Outside => continue,
            }
            tally.instances += 1;
            if !ok {
                let what = if case == AnnCase::NonzeroA { "(0:c) ≠ (0:a) ∝ E" } else { "(0:c) ≠ M ∝ E" };
                let w = Witness::finite("lem2.7.formulas", &inst.recipe, vec![c], format!("{what} in {}", inst.label));
                return Ok(tally.fail(w));
            }
        }
    }
    tally.evidence.push(format!("{nonzero_a} elements with 0 ≠ a ∈ M"));
    tally.evidence.push(format!("{zero_a} elements with a = 0, e ≠ 0"));
    Ok(tally.confirmed())
}

pub fn lem27_replay(w: &Witness) -> anyhow::Result<bool> {
    let t = rebuild_ext(w)?;
    let ma = local_maximal_ideal(&t.base)?;
    let c = w.elements.first().ok_or_else(|| anyhow!("missing element"))?;
    Ok(!lem27_at(&t, &ma, c)?.1)
}

// ---- thm2.6.ker ----

/// `Ker(u) = Ker(v) ∝ E^n` for `u: R^n → R, v: A^n → A` given by the `a_i`.
fn thm26_ker_holds(t: &TrivialExtension, a: &[Vec<i64>]) -> anyhow::Result<bool> {
    let n = a.len();
    let (ka, kr) = (t.base.rank(), t.ring.rank());
    let lifted: Vec<Vec<i64>> = a.iter().map(|x| t.embed(x, &t.fiber.group().zero())).collect();
    let ker_u = free_map(&t.ring, &lifted, &regular_module(&t.ring)).kernel()?;
    let ker_v = free_map(&t.base, a, &regular_module(&t.base)).kernel()?;
    let free_r = free_module(&t.ring, n);
    let mut gens = Vec::new();
    for g in ker_v.carrier().generators(ker_v.ambient().group()) {
        let mut v = free_r.group().zero();
        for i in 0..n {
            let x = t.embed(&g[i * ka..(i + 1) * ka], &t.fiber.group().zero());
            v[i * kr..(i + 1) * kr].copy_from_slice(&x);
        }
        gens.push(v);
    }
    for i in 0..n {
        for j in 0..t.fiber.rank() {
            let mut v = free_r.group().zero();
            let x = t.embed(&t.base.group().zero(), &t.fiber.group().basis_vector(j));
            v[i * kr..(i + 1) * kr].copy_from_slice(&x);
            gens.push(v);
        }
    }
    let expected = Submodule::generated(&free_r, &gens);
    Ok(ker_u.is_submodule_of(&expected) && expected.is_submodule_of(&ker_u))
}

pub fn thm26_ker(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let mut tally = Tally::default();
    for inst in ctx.suite.of_family(Family::Mezero) {
        let t = ext_of(inst)?;
        let ma = local_maximal_ideal(&t.base)?;
        let mut lists: Vec<Vec<Vec<i64>>> = Vec::new();
        for i in proper_nonzero_ideals(&t.base)? {
            lists.push(minimal_generators(&i)?.gens);
        }
        if !ma.is_zero() {
            let elems = ma.elements()?;
            for _ in 0..2 {
                let len = ctx.rng.gen_range(1..=3);
                lists.push((0..len).map(|_| elems[ctx.rng.gen_range(0..elems.len())].clone()).collect());
            }
        }
        for k in pick(&mut ctx.rng, lists.len(), ctx.config.ideals_per_ring) {
            tally.instances += 1;
            if !thm26_ker_holds(t, &lists[k])? {
                let w = Witness::finite(
                    "thm2.6.ker",
                    &inst.recipe,
                    lists[k].clone(),
                    format!("Ker(u) ≠ Ker(v) ∝ E^n in {}", inst.label),
                );
                return Ok(tally.fail(w));
            }
        }
    }
    tally.evidence.push(format!("{} generator tuples with Ker(u) = Ker(v) ∝ E^n", tally.instances));
    Ok(tally.confirmed())
}

pub fn thm26_ker_replay(w: &Witness) -> anyhow::Result<bool> {
    let t = rebuild_ext(w)?;
    let a: Vec<Vec<i64>> = w.elements.clone();
    Ok(!thm26_ker_holds(&t, &a)?)
}

// ---- thm2.6.intersection ----

/// For `x_i = (a_i, e_i)` with `J = ⋂ R x_i` strictly inside every `R x_i`,
/// does `J = (⋂ A a_i) ∝ 0`? `None` when the hypothesis fails.
fn thm26_intersection_holds(t: &TrivialExtension, xs: &[Vec<i64>]) -> anyhow::Result<Option<bool>> {
    let mut j = Ideal::whole(&t.ring);
    let mut ja = Ideal::whole(&t.base);
    let mut principals = Vec::new();
    for x in xs {
        let p = Ideal::principal(&t.ring, x)?;
        j = intersect(&j, &p)?;
        ja = intersect(&ja, &Ideal::principal(&t.base, &t.proj_a(x))?)?;
        principals.push(p);
    }
    if principals.contains(&j) {
        return Ok(None);
    }
    Ok(Some(j == t.ideal_of(&ja, &Submodule::zero(&t.fiber))?))
}

fn fails(t: &TrivialExtension, xs: &[Vec<i64>]) -> anyhow::Result<bool> {
    Ok(thm26_intersection_holds(t, xs)? == Some(false))
}

/// Drop generators while the failure persists.
fn shrink(t: &TrivialExtension, mut xs: Vec<Vec<i64>>) -> anyhow::Result<Vec<Vec<i64>>> {
    let mut k = 0;
    while k < xs.len() && xs.len() > 1 {
        let mut fewer = xs.clone();
        fewer.remove(k);
        if fails(t, &fewer)? {
            xs = fewer;
        } else {
            k += 1;
        }
    }
    Ok(xs)
}

pub fn thm26_intersection(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let mut tally = Tally::default();
    let mut vacuous = 0usize;
    for inst in ctx.suite.of_family(Family::Mezero) {
        let t = ext_of(inst)?;
        let ma = local_maximal_ideal(&t.base)?;
        let cands: Vec<Vec<i64>> = t
            .ring
            .group()
            .elements()?
            .into_iter()
            .filter(|x| !t.ring.group().is_zero(x) && ma.contains(&t.proj_a(x)))
            .collect();
        let n = cands.len();
        let mut tuples: Vec<Vec<usize>> = Vec::new();
        if n <= 24 {
            for i in 0..n {
                for j in i + 1..n {
                    tuples.push(vec![i, j]);
                }
            }
        } else {
            for _ in 0..ctx.config.ideals_per_ring {
                let p = index::sample(&mut ctx.rng, n, 2).into_vec();
                tuples.push(p);
            }
        }
        if n >= 3 {
            for _ in 0..16 {
                tuples.push(index::sample(&mut ctx.rng, n, 3).into_vec());
            }
        }
        for tup in tuples {
            let xs: Vec<Vec<i64>> = tup.iter().map(|&i| cands[i].clone()).collect();
            match thm26_intersection_holds(t, &xs)? {
                None => vacuous += 1,
                Some(true) => tally.instances += 1,
                Some(false) => {
                    tally.instances += 1;
                    let xs = shrink(t, xs)?;
                    let detail = format!(
                        "{}: ⋂ R x_i ≠ (⋂ A a_i) ∝ 0 for x = {}",
                        inst.label,
                        xs.iter().map(|x| format!("({})", fmt_pair(t, x))).collect::<Vec<_>>().join(", ")
                    );
                    return Ok(tally.fail(Witness::finite("thm2.6.intersection", &inst.recipe, xs, detail)));
                }
            }
        }
    }
    tally.evidence.push(format!("{vacuous} tuples skipped: J equals some R x_i"));
    Ok(tally.confirmed())
}

fn fmt_pair(t: &TrivialExtension, x: &[i64]) -> String {
    let a = t.proj_a(x);
    let e = t.proj_e(x);
    let f = |v: &[i64]| if v.len() == 1 { v[0].to_string() } else { format!("{v:?}") };
    format!("{},{}", f(&a), f(&e))
}

pub fn thm26_intersection_replay(w: &Witness) -> anyhow::Result<bool> {
    fails(&rebuild_ext(w)?, &w.elements)
}

// ---- ex2.5.strict ----

fn rank_one_residue(r: &Recipe) -> bool {
    matches!(r, Recipe::Trivext { fiber: Fiber::ResidueFieldPower { rank: 1 }, .. })
}

/// For `J = R(x,e)`: `(I, E') = (Ax, E)` and `(x,0) ∈ (I ∝ E') \ J`.
fn ex25_at(t: &TrivialExtension, x: &[i64], e: &[i64]) -> anyhow::Result<bool> {
    let j = Ideal::principal(&t.ring, &t.embed(x, e))?;
    let (i, ep) = t.components_of(&j)?;
    let x0 = t.embed(x, &t.fiber.group().zero());
    Ok(ep == Submodule::whole(&t.fiber)
        && i == Ideal::principal(&t.base, x)?
        && t.ideal_of(&i, &ep)?.contains(&x0)
        && !j.contains(&x0))
}

/// `N = U ∝ E'` iff `0 ∝ E' ⊆ N` iff `U ∝ 0 ⊆ N`, with `(U, E')` the
/// projections of `N`.
fn correspondence_at(t: &TrivialExtension, n: &Ideal) -> anyhow::Result<bool> {
    let (u, ep) = t.components_of(n)?;
    let split = *n == t.ideal_of(&u, &ep)?;
    let fiber_in = t.ideal_of(&Ideal::zero(&t.base), &ep)?.is_subset_of(n);
    let zero = t.fiber.group().zero();
    let base_in = u.carrier().generators(t.base.group()).iter().all(|a| n.contains(&t.embed(a, &zero)));
    Ok(split == fiber_in && split == base_in)
}

pub fn ex25_strict(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let mut tally = Tally::default();
    let mut first = None;
    for inst in ctx.suite.of_family(Family::Mezero) {
        if !rank_one_residue(&inst.recipe) {
            continue;
        }
        let t = ext_of(inst)?;
        let ma = local_maximal_ideal(&t.base)?;
        for x in ma.elements()? {
            if t.base.group().is_zero(&x) {
                continue;
            }
            for e in t.fiber.group().elements()? {
                if t.fiber.group().is_zero(&e) {
                    continue;
                }
                tally.instances += 1;
                if !ex25_at(t, &x, &e)? {
                    let w = Witness::finite(
                        "ex2.5.strict",
                        &inst.recipe,
                        vec![t.embed(&x, &e)],
                        format!("R(x,e) is not strictly inside I ∝ E' in {}", inst.label),
                    );
                    return Ok(tally.fail(w));
                }
                if first.is_none() {
                    let xe = t.embed(&x, &e);
                    let x0 = t.embed(&x, &t.fiber.group().zero());
                    first = Some(format!("{}: ({}) ∉ R({})", inst.label, fmt_pair(t, &x0), fmt_pair(t, &xe)));
                }
            }
        }
        for n in all_ideals(&t.ring)? {
            tally.instances += 1;
            if !correspondence_at(t, &n)? {
                let gens = carrier_gens(&n);
                let len = gens.len();
                let w = Witness::finite("ex2.5.strict", &inst.recipe, gens, format!("ideal correspondence fails in {}", inst.label));
                return Ok(tally.fail(w.grouped(vec![len])));
            }
        }
    }
    tally.evidence.extend(first);
    Ok(tally.confirmed())
}

pub fn ex25_strict_replay(w: &Witness) -> anyhow::Result<bool> {
    let t = rebuild_ext(w)?;
    if !w.groups.is_empty() {
        let n = Ideal::generated(&t.ring, w.elements.clone())?;
        return Ok(!correspondence_at(&t, &n)?);
    }
    let c = w.elements.first().ok_or_else(|| anyhow!("missing element"))?;
    Ok(!ex25_at(&t, &t.proj_a(c), &t.proj_e(c))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4e() -> Recipe {
        Recipe::trivext(Recipe::zmod(4), Fiber::ResidueFieldPower { rank: 1 })
    }

    #[test]
    fn intersection_counterexample_in_z4_trivext() {
        let t = z4e().build().unwrap().ext.unwrap();
        let xs = vec![t.embed(&[2], &[0]), t.embed(&[2], &[1])];
        assert_eq!(thm26_intersection_holds(&t, &xs).unwrap(), Some(false));
        assert_eq!(shrink(&t, xs.clone()).unwrap(), xs);
        // a single generator never satisfies the strictness hypothesis
        assert_eq!(thm26_intersection_holds(&t, &xs[..1]).unwrap(), None);
    }

    #[test]
    fn strict_inclusion_in_z4_trivext() {
        let t = z4e().build().unwrap().ext.unwrap();
        assert!(ex25_at(&t, &[2], &[1]).unwrap());
        for n in all_ideals(&t.ring).unwrap() {
            assert!(correspondence_at(&t, &n).unwrap());
        }
    }

    #[test]
    fn kernel_identity_on_small_cases() {
        let t = z4e().build().unwrap().ext.unwrap();
        assert!(thm26_ker_holds(&t, &[vec![2]]).unwrap());
        assert!(thm26_ker_holds(&t, &[vec![2], vec![2]]).unwrap());
    }

    #[test]
    fn axiom_tables_accept_z6() {
        let b = Recipe::zmod(6).build().unwrap();
        assert_eq!(exhaustive_axioms(&b).unwrap(), None);
        assert!(axiom_failure(&b, &[2], &[3], &[5]).is_none());
    }

    #[test]
    fn pick_is_all_or_sorted_sample() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(pick(&mut rng, 3, 5), vec![0, 1, 2]);
        let p = pick(&mut rng, 100, 5);
        assert_eq!(p.len(), 5);
        assert!(p.windows(2).all(|w| w[0] < w[1]));
    }
}
