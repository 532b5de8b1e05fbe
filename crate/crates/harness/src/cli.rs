//! The `trivext` subcommands, returning their printed output.

use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context};
use clap::ValueEnum;
use trivext_core::idealops::{
    annihilator, colon, intersect, inverse_finite, minimal_generators, v_closure_finite, v_finite_witness_finite,
};
use trivext_core::resolve::{presentation, projective_dimension_up_to, PdResult};
use trivext_core::symtriv::uze::{uze_annihilator, uze_inverse_class, UZEAnn, UZEInverse};
use trivext_core::symtriv::zq::{
    zq_annihilator, zq_colon, zq_ideal_nf, zq_intersection, zq_inverse, zq_v_closure, zq_v_finite_witness, ZQIdeal,
};
use trivext_core::{Ideal, Submodule};

use crate::checks::{all_ids, replay, run_suite};
use crate::report::{ReportFile, Status};
use crate::ringspec::{ideal_from_texts, parse_element_coeffs, IdealObj, RingObj, RingSpec};
use crate::suite::{Config, Suite};
use crate::symtext::{format_coeffs, parse_uze, parse_zq, split_list};

/// Environment variable overriding the element budget.
pub const BUDGET_VAR: &str = "TRIVEXT_BUDGET";

/// Apply `TRIVEXT_BUDGET` if set.
pub fn apply_budget_env() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var(BUDGET_VAR) {
        let n: usize = v
            .trim()
            .parse()
            .with_context(|| format!("{BUDGET_VAR}={v} is not a non-negative integer"))?;
        trivext_core::budget::set_element_budget(n);
    }
    Ok(())
}

// ---- check ----

pub fn parse_check_list(s: &str) -> anyhow::Result<Vec<&'static str>> {
    if s.trim() == "all" {
        return Ok(all_ids());
    }
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            all_ids()
                .into_iter()
                .find(|id| *id == t)
                .ok_or_else(|| anyhow!("unregistered check `{t}`"))
        })
        .collect()
}

/// Run checks on a named suite, or on the finite rings of a spec with the
/// sampling parameters of the named suite.
pub fn check(suite: Option<&str>, spec: Option<&RingSpec>, checks: &str, seed: u64) -> anyhow::Result<ReportFile> {
    let config = Config::named(suite.unwrap_or("default"))?;
    let ids = parse_check_list(checks)?;
    let suite = match spec {
        Some(s) => Suite::from_recipes(&s.finite_recipes())?,
        None => Suite::generate(&config)?,
    };
    let reports = run_suite(&ids, &suite, &config, seed)?;
    Ok(ReportFile::new(seed, &config, &suite, reports))
}

pub fn summary(file: &ReportFile) -> String {
    let mut out = String::new();
    for r in &file.reports {
        let open = if r.registry_status == crate::report::RegistryStatus::Open { " [open]" } else { "" };
        let line = match &r.status {
            Status::Confirmed => format!("confirmed       {}{open} ({} instances)", r.check, r.instances_run),
            Status::Counterexample { witness } => {
                format!("counterexample  {}{open}: {}", r.check, witness.detail)
            }
            Status::Skipped { reason } => format!("skipped         {}{open}: {reason}", r.check),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

// ---- replay ----

/// Replay every counterexample in a report; the flag is true when each one
/// still fails.
pub fn replay_report(file: &ReportFile) -> anyhow::Result<(String, bool)> {
    let mut out = String::new();
    let mut all = true;
    for r in &file.reports {
        if let Some(w) = r.witness() {
            let still = replay(w)?;
            all &= still;
            let verdict = if still { "still fails" } else { "no longer fails" };
            writeln!(out, "{}: {verdict}", r.check)?;
        }
    }
    if out.is_empty() {
        out.push_str("no counterexamples to replay\n");
    }
    Ok((out, all))
}

// ---- ideal ----

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdealOp {
    /// `(0 : x)` of one element.
    Ann,
    /// `I ∩ J`.
    Cap,
    /// `(I : J)`.
    Colon,
    /// `I^{-1}`.
    Inv,
    /// `I_v` with a v-finiteness witness.
    V,
}

impl IdealOp {
    fn name(self) -> &'static str {
        match self {
            IdealOp::Ann => "ann",
            IdealOp::Cap => "cap",
            IdealOp::Colon => "colon",
            IdealOp::Inv => "inv",
            IdealOp::V => "v",
        }
    }

    fn arity(self) -> usize {
        match self {
            IdealOp::Cap | IdealOp::Colon => 2,
            _ => 1,
        }
    }
}

/// The ring the arguments live in: `--ring`, else the ring of the first
/// named ideal, else the only ring of the spec.
fn pick_ring(spec: &RingSpec, ring: Option<&str>, args: &[String]) -> anyhow::Result<String> {
    if let Some(r) = ring {
        spec.ring(r)?;
        return Ok(r.to_string());
    }
    if let Some(def) = args.iter().find_map(|a| spec.ideals.get(a)) {
        return Ok(def.ring.clone());
    }
    match spec.rings.keys().collect::<Vec<_>>()[..] {
        [only] => Ok(only.clone()),
        _ => bail!("the spec has several rings; pass --ring"),
    }
}

fn ideal_arg(spec: &RingSpec, ring_name: &str, ring: &RingObj, s: &str) -> anyhow::Result<IdealObj> {
    if let Some(def) = spec.ideals.get(s) {
        if def.ring != ring_name {
            bail!("ideal `{s}` lives in ring `{}`, not `{ring_name}`", def.ring);
        }
        return Ok(spec.ideal(s)?.1);
    }
    ideal_from_texts(ring, &split_list(s)?).with_context(|| format!("`{s}` is neither an ideal name nor a generator list"))
}

fn list(v: &[Vec<i64>]) -> String {
    v.iter().map(|x| format_coeffs(x)).collect::<Vec<_>>().join(", ")
}

const ELEMENT_LIST_LIMIT: u128 = 64;

fn describe_finite(ring: &RingObj, i: &Ideal) -> anyhow::Result<String> {
    let RingObj::Finite { built, .. } = ring else {
        bail!("not a finite ring");
    };
    let mut out = String::new();
    writeln!(out, "ideal of order {}", i.order())?;
    if built.ring.is_local()? {
        let mg = minimal_generators(i)?;
        writeln!(out, "minimal generators (μ = {}): {}", mg.mu, list(&mg.gens))?;
    } else {
        writeln!(out, "generators: {}", list(&i.carrier().generators(built.ring.group())))?;
    }
    if i.order() <= ELEMENT_LIST_LIMIT {
        writeln!(out, "elements: {}", list(&i.elements()?))?;
    }
    if let Some(t) = &built.ext {
        let (u, ep) = t.components_of(i)?;
        let ep_text = if ep.is_zero() {
            "0".to_string()
        } else if ep == Submodule::whole(&t.fiber) {
            "E".to_string()
        } else {
            format!("of order {}", ep.order())
        };
        let u_text = format!("<{}> of order {}", list(&u.carrier().generators(t.base.group())), u.order());
        if *i == t.ideal_of(&u, &ep)? {
            writeln!(out, "= U ∝ E' with U = {u_text}, E' = {ep_text}")?;
        } else {
            writeln!(out, "not of the form U ∝ E' (projections U = {u_text}, E' = {ep_text})")?;
        }
    }
    Ok(out)
}

fn zq_gens(i: &IdealObj) -> anyhow::Result<&[trivext_core::symtriv::zq::ZQElement]> {
    match i {
        IdealObj::Zq(g) => Ok(g),
        _ => bail!("expected an ideal of Z ∝ Q"),
    }
}

fn finite_ideal(i: &IdealObj) -> anyhow::Result<&Ideal> {
    match i {
        IdealObj::Finite(x) => Ok(x),
        _ => bail!("expected an ideal of a finite ring"),
    }
}

fn uze_ann_text(a: &UZEAnn) -> String {
    let set = |s: &std::collections::BTreeSet<u32>| {
        s.iter().map(u32::to_string).collect::<Vec<_>>().join(", ")
    };
    match a {
        UZEAnn::Zero => "0".into(),
        UZEAnn::Whole => "R".into(),
        UZEAnn::ZeroTimesE => "0 × E (not finitely generated)".into(),
        UZEAnn::ZeroTimesSubsets { support } => format!("{{(0, f) : f ⊆ {{{}}}}} = R(0, {{{}}})", set(support), set(support)),
        UZEAnn::ZeroTimesComplement { support } => {
            format!("{{(0, f) : f ∩ {{{}}} = ∅}} (not finitely generated)", set(support))
        }
        UZEAnn::Mixed { support } => format!(
            "{{(b, f) : b even, f ∩ {{{0}}} = ∅}} ∪ {{(b, f) : b odd, {{{0}}} ⊆ f}} (not finitely generated)",
            set(support)
        ),
    }
}

pub fn ideal(spec: &RingSpec, ring: Option<&str>, op: IdealOp, args: &[String]) -> anyhow::Result<String> {
    if args.len() != op.arity() {
        bail!("--op {} takes {} argument(s), got {}", op.name(), op.arity(), args.len());
    }
    let ring_name = pick_ring(spec, ring, args)?;
    let r = spec.ring(&ring_name)?;
    let mut out = format!("ring: {}\n", r.label());
    if op == IdealOp::Ann {
        let x = &args[0];
        match &r {
            RingObj::Finite { built, .. } => {
                let c = parse_element_coeffs(&r, x)?;
                writeln!(out, "(0 : {}):", format_coeffs(&c))?;
                out.push_str(&describe_finite(&r, &annihilator(&built.ring, &c)?)?);
            }
            RingObj::Zq => {
                let e = parse_zq(x)?;
                let a = zq_annihilator(&e);
                writeln!(out, "(0 : {e}) = {a}")?;
            }
            RingObj::Uze => {
                let e = parse_uze(x)?;
                writeln!(out, "(0 : {e}) = {}", uze_ann_text(&uze_annihilator(&e)))?;
            }
        }
        return Ok(out);
    }
    let ideals = args
        .iter()
        .map(|a| ideal_arg(spec, &ring_name, &r, a))
        .collect::<anyhow::Result<Vec<_>>>()?;
    match (&r, op) {
        (RingObj::Finite { .. }, _) => {
            let i = finite_ideal(&ideals[0])?;
            let res = match op {
                IdealOp::Cap => intersect(i, finite_ideal(&ideals[1])?)?,
                IdealOp::Colon => colon(i, finite_ideal(&ideals[1])?)?,
                IdealOp::Inv => inverse_finite(i)?,
                IdealOp::V => v_closure_finite(i)?,
                IdealOp::Ann => unreachable!("handled above"),
            };
            let head = match op {
                IdealOp::Cap => "I ∩ J",
                IdealOp::Colon => "(I : J)",
                IdealOp::Inv => "I^-1",
                _ => "I_v",
            };
            writeln!(out, "{head}:")?;
            out.push_str(&describe_finite(&r, &res)?);
            if op == IdealOp::V {
                let w = v_finite_witness_finite(i)?;
                writeln!(out, "v-finite witness: J = <{}> with J_v = I_v", list(w.generators()))?;
            }
        }
        (RingObj::Zq, _) => {
            let nf = zq_ideal_nf(zq_gens(&ideals[0])?);
            match op {
                IdealOp::Cap => {
                    let nf2 = zq_ideal_nf(zq_gens(&ideals[1])?);
                    writeln!(out, "{nf} ∩ {nf2} = {}", zq_intersection(&nf, &nf2))?;
                }
                IdealOp::Colon => {
                    let nf2 = zq_ideal_nf(zq_gens(&ideals[1])?);
                    writeln!(out, "({nf} : {nf2}) = {}", zq_colon(&nf, &nf2))?;
                }
                IdealOp::Inv => writeln!(out, "({nf})^-1 = {}", zq_inverse(&nf.to_fractional())?)?,
                IdealOp::V => {
                    writeln!(out, "({nf})_v = {}", zq_v_closure(&nf.to_fractional())?)?;
                    let w = zq_v_finite_witness(&ZQIdeal::Fg(nf))?;
                    let w: Vec<String> = w.iter().map(ToString::to_string).collect();
                    writeln!(out, "v-finite witness: J = <{}> with J_v = I_v", w.join(", "))?;
                }
                IdealOp::Ann => unreachable!("handled above"),
            }
        }
        (RingObj::Uze, IdealOp::Inv) => {
            let IdealObj::Uze(g) = &ideals[0] else {
                bail!("expected an ideal of Z ×' ⊕F2");
            };
            match uze_inverse_class(g) {
                UZEInverse::TotalRing => writeln!(out, "J^-1 = Q(R)")?,
                UZEInverse::EquivPrincipal { gcd } => writeln!(out, "J^-1 = (R({gcd}, ∅))^-1")?,
            }
        }
        (RingObj::Uze, _) => bail!("--op {} is not available for Z ×' ⊕F2 (ann and inv are)", op.name()),
    }
    Ok(out)
}

// ---- resolve ----

fn pd_text(p: &PdResult) -> String {
    match p {
        PdResult::Free { .. } => "Free(0)".into(),
        PdResult::NotFreeUpTo { bound, .. } => format!("NotFreeUpTo({bound})"),
    }
}

pub fn resolve(spec: &RingSpec, module: &str, depth: usize) -> anyhow::Result<String> {
    let m = spec.module(module)?;
    let ring = m.ambient().ring().clone();
    let mut out = String::new();
    writeln!(out, "module `{module}`: order {} in {} over {}", m.order(), m.ambient().label(), ring.label())?;
    let pres = presentation(&m, depth)?;
    let ranks = pres.free_ranks();
    let k = ring.rank();
    let images = |map: &trivext_core::ModuleMap, n: usize| -> Vec<Vec<i64>> {
        (0..n)
            .map(|t| {
                let mut x = vec![0; n * k];
                x[t * k..(t + 1) * k].copy_from_slice(ring.one_coeffs());
                map.apply(&x)
            })
            .collect()
    };
    writeln!(out, "F0 = R^{} → N: {}", ranks[0], list(&images(&pres.augmentation, ranks[0])))?;
    for (j, step) in pres.steps.iter().enumerate() {
        writeln!(out, "F{} = R^{} → F{}: {}", j + 1, ranks[j + 1], j, list(&images(step, ranks[j + 1])))?;
    }
    writeln!(out, "exact: {}", pres.is_exact()?)?;
    let pd = projective_dimension_up_to(&m, depth)?;
    match &pd {
        PdResult::Free { basis } => writeln!(out, "basis: {}", list(basis))?,
        PdResult::NotFreeUpTo { syzygies, .. } => {
            let orders: Vec<String> = syzygies.iter().map(|s| s.order().to_string()).collect();
            writeln!(out, "minimal syzygy orders: {}", orders.join(", "))?;
        }
    }
    writeln!(out, "pd: {}", pd_text(&pd))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(name: &str) -> RingSpec {
        let path = format!("{}/specs/{name}", env!("CARGO_MANIFEST_DIR"));
        RingSpec::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    fn args(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn ann_of_fiber_element_is_m_times_e() {
        let out = ideal(&spec("z4e.toml"), None, IdealOp::Ann, &args(&["(0, 1)"])).unwrap();
        assert!(out.contains("ideal of order 4"), "{out}");
        assert!(out.contains("μ = 2"), "{out}");
        assert!(out.contains("E' = E"), "{out}");
    }

    #[test]
    fn cap_with_whole_ring_is_identity() {
        let s = spec("z4e.toml");
        let a = ideal(&s, None, IdealOp::Cap, &args(&["m", "whole"])).unwrap();
        let b = ideal(&s, None, IdealOp::Cap, &args(&["m", "m"])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zq_inverse_of_two() {
        let out = ideal(&spec("symbolic.toml"), None, IdealOp::Inv, &args(&["two"])).unwrap();
        assert!(out.contains("= (1/2)Z ∝ Q"), "{out}");
        let out = ideal(&spec("symbolic.toml"), Some("zq"), IdealOp::Ann, &args(&["(0, 1)"])).unwrap();
        assert!(out.contains("0 ∝ Q (not finitely generated)"), "{out}");
    }

    #[test]
    fn resolve_examples() {
        let out = resolve(&spec("z4.toml"), "two", 4).unwrap();
        assert!(out.ends_with("pd: NotFreeUpTo(4)\n"), "{out}");
        assert!(out.contains("exact: true"));
        assert!(resolve(&spec("z4.toml"), "free2", 2).unwrap().ends_with("pd: Free(0)\n"));
        assert!(resolve(&spec("z6.toml"), "quot", 2).unwrap().ends_with("pd: Free(0)\n"));
    }

    #[test]
    fn check_lists() {
        assert_eq!(parse_check_list("all").unwrap().len(), 23);
        assert_eq!(parse_check_list("ax.ring, ex2.4.ann").unwrap(), vec!["ax.ring", "ex2.4.ann"]);
        assert!(parse_check_list("ax.ring,nope").is_err());
    }
}
