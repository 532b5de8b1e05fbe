//! Checks over the symbolic tiers `Z ∝ Q` and `Z ×' ⊕F_2`, plus the
//! v-operation chain, which also runs on the finite suite.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use trivext_core::idealops::{all_ideals, intersect, inverse_finite, sum, v_finite_witness_finite};
use trivext_core::symtriv::uze::{
    uze_annihilator, uze_fraction_in_inverse, uze_inverse_class, uze_is_regular, uze_mul, uze_zero_divisor_witness,
    UZEAnn, UZEElement, UZEInverse,
};
use trivext_core::symtriv::zq::{
    zq_annihilator, zq_ideal_nf, zq_intersection, zq_inverse, zq_is_fg, zq_is_principal, zq_mul, zq_v_closure,
    zq_v_finite_witness, zq_is_regular, zq_zero_divisor_witness, QLine, QQElement, ZQElement, ZQFractional, ZQIdeal,
    ZQIdealNF,
};
use trivext_core::symtriv::zqmod::{zq_is_n_presented, zq_split_kernel, zq_submodule_nf, ZQSubmoduleNF, ZQVector};
use trivext_core::{Ideal, Subgroup};

use super::oracle::{in_q_span, in_z_span, is_saturated, rank_by_minors, to_q, ZQOracle};
use super::{Ctx, Outcome, Tally};
use crate::report::Witness;
use crate::suite::Config;
use crate::symtext::{format_zqvec, parse_rational, parse_uze, parse_zq, parse_zqvec};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn rand_rat(rng: &mut ChaCha8Rng, num: i64, den: i64) -> BigRational {
    rat(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

fn rand_zq(rng: &mut ChaCha8Rng, c: &Config) -> ZQElement {
    let a = if rng.gen_ratio(1, 3) { 0 } else { rng.gen_range(-c.coeff_bound..=c.coeff_bound) };
    ZQElement::new(a, rand_rat(rng, c.coeff_bound, c.den_bound))
}

/// One to three generators; a third of the lists lie in `0 ∝ Q`.
fn rand_gens(rng: &mut ChaCha8Rng, c: &Config) -> Vec<ZQElement> {
    let len = rng.gen_range(1..=3);
    let zero_a = rng.gen_ratio(1, 3);
    (0..len)
        .map(|_| {
            let a = if zero_a { 0 } else { rng.gen_range(-c.coeff_bound..=c.coeff_bound) };
            ZQElement::new(a, rand_rat(rng, c.coeff_bound, 6))
        })
        .collect()
}

fn rand_nonzero_gens(rng: &mut ChaCha8Rng, c: &Config) -> Vec<ZQElement> {
    loop {
        let g = rand_gens(rng, c);
        if !zq_ideal_nf(&g).is_zero() {
            return g;
        }
    }
}

/// `Σ (b_i, s_i)(a_i, q_i)` with small `b_i`.
fn combo(rng: &mut ChaCha8Rng, gens: &[ZQElement], c: &Config) -> ZQElement {
    gens.iter().fold(ZQElement::zero(), |acc, x| {
        let r = ZQElement::new(rng.gen_range(-3..=3), rand_rat(rng, c.coeff_bound, c.den_bound));
        acc.add(&zq_mul(&r, x))
    })
}

fn sample_point(rng: &mut ChaCha8Rng, gens: &[ZQElement], c: &Config) -> ZQElement {
    match rng.gen_range(0..4) {
        0 | 1 => combo(rng, gens, c),
        2 => ZQElement::new(0, rand_rat(rng, c.coeff_bound, c.den_bound)),
        _ => rand_zq(rng, c),
    }
}

fn rand_qq(rng: &mut ChaCha8Rng, c: &Config) -> QQElement {
    QQElement {
        a: rand_rat(rng, c.coeff_bound, c.den_bound),
        q: rand_rat(rng, c.coeff_bound, c.den_bound),
    }
}

fn texts<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn parse_list(xs: &[String]) -> anyhow::Result<Vec<ZQElement>> {
    xs.iter().map(|s| parse_zq(s)).collect()
}

/// Symbolic witness whose groups are generator lists, then one point.
fn lists_witness(check: &str, lists: &[&[ZQElement]], point: Option<String>, detail: String) -> Witness {
    let mut sym = Vec::new();
    let mut groups = Vec::new();
    for l in lists {
        sym.extend(texts(l));
        groups.push(l.len());
    }
    if let Some(p) = point {
        sym.push(format!("{POINT}{p}"));
        groups.push(1);
    }
    Witness::symbolic(check, sym, detail).grouped(groups)
}

const POINT: &str = "x = ";

fn point_text(s: &str) -> &str {
    s.strip_prefix(POINT).unwrap_or(s)
}

// ---- prop3.5.bezout ----

fn bezout_principal(gens: &[ZQElement]) -> bool {
    let nf = zq_ideal_nf(gens);
    let (principal, g) = zq_is_principal(&nf);
    principal && zq_ideal_nf(&[g]) == nf
}

fn bezout_point(gens: &[ZQElement], x: &ZQElement) -> bool {
    let nf = zq_ideal_nf(gens);
    let in_nf = nf.contains(x);
    in_nf == ZQOracle::new(gens).contains(x) && in_nf == ZQOracle::new(&[nf.generator()]).contains(x)
}

pub fn zq_bezout(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let c = ctx.config;
    let mut tally = Tally::default();
    let mut members = 0usize;
    for _ in 0..c.zq_lists {
        let gens = rand_gens(&mut ctx.rng, c);
        if !bezout_principal(&gens) {
            let w = lists_witness("prop3.5.bezout", &[&gens], None, "normal form is not principal".into());
            return Ok(tally.fail(w));
        }
        let nf = zq_ideal_nf(&gens);
        let mut by_gens = ZQOracle::new(&gens);
        let mut by_gen = ZQOracle::new(&[nf.generator()]);
        for _ in 0..c.samples {
            let x = sample_point(&mut ctx.rng, &gens, c);
            tally.instances += 1;
            let in_nf = nf.contains(&x);
            members += in_nf as usize;
            if in_nf != by_gens.contains(&x) || in_nf != by_gen.contains(&x) {
                let w = lists_witness(
                    "prop3.5.bezout",
                    &[&gens],
                    Some(x.to_string()),
                    format!("membership of {x} in {nf} disagrees with the generators"),
                );
                return Ok(tally.fail(w));
            }
        }
    }
    tally.evidence.push(format!(
        "{} generator lists, {} samples each, {members} members",
        c.zq_lists, c.samples
    ));
    Ok(tally.confirmed())
}

pub fn zq_bezout_replay(w: &Witness) -> anyhow::Result<bool> {
    let g = w.symbolic_groups();
    let gens = parse_list(g[0])?;
    Ok(match g.get(1) {
        Some(p) => !bezout_point(&gens, &parse_zq(point_text(&p[0]))?),
        None => !bezout_principal(&gens),
    })
}

// ---- thm2.8.ann / ex3.4.regann ----

fn ann_shape_ok(x: &ZQElement) -> bool {
    let expected = if !x.a.is_zero() {
        ZQIdeal::Fg(ZQIdealNF::zero())
    } else if !x.q.is_zero() {
        ZQIdeal::NotFg(ZQFractional::ZeroFull)
    } else {
        ZQIdeal::Fg(ZQIdealNF::whole())
    };
    let witness_ok = match zq_zero_divisor_witness(x) {
        None => zq_is_regular(x),
        Some(y) => !zq_is_regular(x) && !y.is_zero() && zq_mul(x, &y).is_zero(),
    };
    zq_annihilator(x) == expected && zq_is_regular(x) == !x.a.is_zero() && witness_ok
}

fn ann_member_ok(x: &ZQElement, y: &ZQElement) -> bool {
    zq_annihilator(x).contains(y) == zq_mul(x, y).is_zero()
}

pub fn zq_ann(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let c = ctx.config;
    let mut tally = Tally::default();
    let mut xs = vec![ZQElement::new(0, rat(1, 1)), ZQElement::new(5, rat(1, 2)), ZQElement::zero()];
    for _ in 0..c.samples {
        xs.push(rand_zq(&mut ctx.rng, c));
    }
    let mut killed = 0usize;
    for x in &xs {
        tally.instances += 1;
        if !ann_shape_ok(x) {
            return Ok(tally.fail(Witness::symbolic("thm2.8.ann", vec![x.to_string()], format!("(0:{x}) has the wrong shape"))));
        }
        let mut ys: Vec<ZQElement> = (0..4).map(|_| rand_zq(&mut ctx.rng, c)).collect();
        ys.push(ZQElement::new(0, rand_rat(&mut ctx.rng, c.coeff_bound, c.den_bound)));
        ys.extend(zq_zero_divisor_witness(x));
        for y in &ys {
            killed += zq_mul(x, y).is_zero() as usize;
            if !ann_member_ok(x, y) {
                let w = Witness::symbolic("thm2.8.ann", vec![x.to_string(), y.to_string()], format!("(0:{x}) ∋ {y} disagrees with the product"));
                return Ok(tally.fail(w));
            }
        }
    }
    tally.evidence.push(format!("(0:(0, 1)) = {}", zq_annihilator(&xs[0])));
    tally.evidence.push(format!("{killed} sampled products were zero"));
    Ok(tally.confirmed())
}

pub fn zq_ann_replay(w: &Witness) -> anyhow::Result<bool> {
    let xs = parse_list(&w.symbolic)?;
    Ok(match xs.as_slice() {
        [x] => !ann_shape_ok(x),
        [x, y] => !ann_member_ok(x, y),
        _ => bail!("expected one or two elements"),
    })
}

fn regann_ok(x: &ZQElement, y: &ZQElement) -> bool {
    zq_annihilator(x) == ZQIdeal::Fg(ZQIdealNF::zero()) && (y.is_zero() || !zq_mul(x, y).is_zero())
}

pub fn zq_regann(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let c = ctx.config;
    let mut tally = Tally::default();
    for _ in 0..c.samples {
        let mut x = rand_zq(&mut ctx.rng, c);
        if x.a.is_zero() {
            x.a = BigInt::from(ctx.rng.gen_range(2..=c.coeff_bound.max(2)));
        }
        for _ in 0..4 {
            let y = rand_zq(&mut ctx.rng, c);
            tally.instances += 1;
            if !regann_ok(&x, &y) {
                let w = Witness::symbolic("ex3.4.regann", vec![x.to_string(), y.to_string()], format!("{x} has a non-zero annihilator"));
                return Ok(tally.fail(w));
            }
        }
    }
    Ok(tally.confirmed())
}

pub fn zq_regann_replay(w: &Witness) -> anyhow::Result<bool> {
    match parse_list(&w.symbolic)?.as_slice() {
        [x, y] => Ok(!regann_ok(x, y)),
        _ => bail!("expected two elements"),
    }
}

// ---- thm2.8.inv ----

fn ts() -> Vec<BigRational> {
    (1..=30).map(|k| rat(1, k)).collect()
}

/// `F^{-1}` from the case table against the shape predicted from `a`-parts
/// alone: `(dZ)^{-1} ∝ Q`, or all of `Q ∝ Q` when every `a_i = 0`.
fn inv_shape_ok(gens: &[ZQElement]) -> anyhow::Result<bool> {
    let f = zq_ideal_nf(gens).to_fractional();
    let inv = zq_inverse(&f)?;
    let d = gens.iter().fold(BigInt::zero(), |acc, x| acc.gcd(&x.a));
    let expected = if d.is_zero() {
        ZQFractional::Total
    } else {
        ZQFractional::ScaledLine {
            c: BigRational::new(BigInt::one(), d.clone()),
        }
    };
    let stripped: Vec<ZQElement> = gens.iter().map(|x| ZQElement::new(x.a.clone(), BigRational::zero())).collect();
    let e_free = d.is_zero() || zq_inverse(&zq_ideal_nf(&stripped).to_fractional())? == inv;
    Ok(inv == expected && e_free)
}

/// `z ∈ G^{-1}` iff `z·g ∈ R` for a spanning sample of `G`.
fn inv_point_ok(g: &ZQFractional, z: &QQElement) -> anyhow::Result<bool> {
    let inv = zq_inverse(g)?;
    let by_products = g.spanning_sample(&ts()).iter().all(|s| z.mul(s).is_integral());
    Ok(inv.contains(z) == by_products)
}

fn sample_line(rng: &mut ChaCha8Rng, l: &QLine, c: &Config) -> BigRational {
    match l {
        QLine::Zero => BigRational::zero(),
        QLine::Scaled(s) => s * BigRational::from_integer(rng.gen_range(-c.coeff_bound..=c.coeff_bound).into()),
        QLine::Full => rand_rat(rng, c.coeff_bound, c.den_bound),
    }
}

fn sample_member(rng: &mut ChaCha8Rng, f: &ZQFractional, c: &Config) -> QQElement {
    let (a, e) = f.parts();
    QQElement {
        a: sample_line(rng, &a, c),
        q: sample_line(rng, &e, c),
    }
}

const INV_TAGS: [&str; 3] = ["F", "F^-1", "F_v"];

fn inv_targets(gens: &[ZQElement]) -> anyhow::Result<[ZQFractional; 3]> {
    let f = zq_ideal_nf(gens).to_fractional();
    let inv = zq_inverse(&f)?;
    let v = zq_inverse(&inv)?;
    Ok([f, inv, v])
}

fn format_qq(z: &QQElement) -> String {
    format!("({}, {})", z.a, z.q)
}

fn parse_qq(s: &str) -> anyhow::Result<QQElement> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| anyhow!("expected `(a, q)`"))?;
    let (a, q) = inner.split_once(',').ok_or_else(|| anyhow!("missing comma"))?;
    Ok(QQElement {
        a: parse_rational(a)?,
        q: parse_rational(q)?,
    })
}

pub fn zq_inv(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let c = ctx.config;
    let mut tally = Tally::default();
    for d in 1..=100i64 {
        tally.instances += 1;
        let f = ZQFractional::ScaledLine { c: rat(d, 1) };
        if zq_v_closure(&f)? != f {
            let g = [ZQElement::new(d, BigRational::zero())];
            return Ok(tally.fail(lists_witness("thm2.8.inv", &[&g], None, format!("({d})_v ≠ ({d})"))));
        }
    }
    let per = (c.samples / 10).max(1);
    for _ in 0..c.zq_lists {
        let gens = rand_nonzero_gens(&mut ctx.rng, c);
        tally.instances += 1;
        if !inv_shape_ok(&gens)? {
            let w = lists_witness("thm2.8.inv", &[&gens], None, "inverse is not I^-1 ∝ Q or depends on E".into());
            return Ok(tally.fail(w));
        }
        for (tag, g) in INV_TAGS.iter().zip(inv_targets(&gens)?) {
            let h = zq_inverse(&g)?;
            for k in 0..per {
                let z = if k % 2 == 0 { sample_member(&mut ctx.rng, &h, c) } else { rand_qq(&mut ctx.rng, c) };
                tally.instances += 1;
                if !inv_point_ok(&g, &z)? {
                    let mut w = lists_witness("thm2.8.inv", &[&gens], Some(format_qq(&z)), format!("membership in ({tag})^-1 = {h} disagrees with products"));
                    w.symbolic.push(tag.to_string());
                    w.groups.push(1);
                    return Ok(tally.fail(w));
                }
            }
        }
    }
    tally.evidence.push("({(2, 0)})^-1 = (1/2)Z ∝ Q = ({(2, 1/3)})^-1".into());
    Ok(tally.confirmed())
}

pub fn zq_inv_replay(w: &Witness) -> anyhow::Result<bool> {
    let g = w.symbolic_groups();
    let gens = parse_list(g[0])?;
    if g.len() < 3 {
        return Ok(!inv_shape_ok(&gens)? || zq_v_closure(&zq_ideal_nf(&gens).to_fractional())? != zq_ideal_nf(&gens).to_fractional());
    }
    let z = parse_qq(point_text(&g[1][0]))?;
    let k = INV_TAGS.iter().position(|t| *t == g[2][0]).ok_or_else(|| anyhow!("unknown target"))?;
    let target = inv_targets(&gens)?[k].clone();
    Ok(!inv_point_ok(&target, &z)?)
}

// ---- thm2.8.intersect ----

fn meet_all(lists: &[Vec<ZQElement>]) -> ZQIdealNF {
    lists
        .iter()
        .fold(ZQIdealNF::whole(), |acc, l| zq_intersection(&acc, &zq_ideal_nf(l)))
}

/// For principal generators with `a_i ≠ 0`: `⋂ R x_i = lcm(a_i) Z ∝ Q`.
fn meet_shape_ok(xs: &[ZQElement]) -> bool {
    let lists: Vec<Vec<ZQElement>> = xs.iter().map(|x| vec![x.clone()]).collect();
    let l = xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.a));
    meet_all(&lists) == ZQIdealNF::FullLine { d: l }
}

fn meet_point_ok(lists: &[Vec<ZQElement>], x: &ZQElement) -> bool {
    let want = lists.iter().all(|l| ZQOracle::new(l).contains(x));
    meet_all(lists).contains(x) == want
}

pub fn zq_intersect(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let c = ctx.config;
    let mut tally = Tally::default();
    let per = (c.samples / 5).max(1);
    for round in 0..c.zq_lists {
        let lists: Vec<Vec<ZQElement>> = if round % 2 == 0 {
            let n = ctx.rng.gen_range(1..=3);
            let xs: Vec<ZQElement> = (0..n)
                .map(|_| {
                    let mut a = 0;
                    while a == 0 {
                        a = ctx.rng.gen_range(-c.coeff_bound..=c.coeff_bound);
                    }
                    ZQElement::new(a, rand_rat(&mut ctx.rng, c.coeff_bound, c.den_bound))
                })
                .collect();
            tally.instances += 1;
            if !meet_shape_ok(&xs) {
                let ls: Vec<&[ZQElement]> = xs.iter().map(std::slice::from_ref).collect();
                return Ok(tally.fail(lists_witness("thm2.8.intersect", &ls, None, "⋂ R x_i ≠ lcm(a_i)Z ∝ Q".into())));
            }
            xs.into_iter().map(|x| vec![x]).collect()
        } else {
            vec![rand_gens(&mut ctx.rng, c), rand_gens(&mut ctx.rng, c)]
        };
        let mut oracles: Vec<ZQOracle> = lists.iter().map(|l| ZQOracle::new(l)).collect();
        let meet = meet_all(&lists);
        for _ in 0..per {
            let l = &lists[ctx.rng.gen_range(0..lists.len())];
            let x = sample_point(&mut ctx.rng, l, c);
            tally.instances += 1;
            let want = oracles.iter_mut().all(|o| o.contains(&x));
            if meet.contains(&x) != want {
                let ls: Vec<&[ZQElement]> = lists.iter().map(Vec::as_slice).collect();
                let w = lists_witness("thm2.8.intersect", &ls, Some(x.to_string()), format!("membership of {x} in {meet} disagrees"));
                return Ok(tally.fail(w));
            }
        }
    }
    tally.evidence.push("R(2, 1) ∩ R(3, 1/2) = 6Z ∝ Q".into());
    Ok(tally.confirmed())
}

pub fn zq_intersect_replay(w: &Witness) -> anyhow::Result<bool> {
    let groups = w.symbolic_groups();
    if w.symbolic.last().is_some_and(|s| s.starts_with(POINT)) {
        let (pt, ls) = groups.split_last().ok_or_else(|| anyhow!("empty witness"))?;
        let lists = ls.iter().map(|l| parse_list(l)).collect::<anyhow::Result<Vec<_>>>()?;
        return Ok(!meet_point_ok(&lists, &parse_zq(point_text(&pt[0]))?));
    }
    Ok(!meet_shape_ok(&parse_list(&w.symbolic)?))
}

// ---- thm2.8.nonfc ----

/// An element of `0 ∝ Q` outside the ideal a finite list in `0 ∝ Q` generates.
fn escape(gens: &[ZQElement]) -> ZQElement {
    match zq_ideal_nf(gens) {
        ZQIdealNF::ZeroLine { g } if !g.is_zero() => ZQElement::new(0, g / rat(2, 1)),
        _ => ZQElement::new(0, rat(1, 1)),
    }
}

fn nonfc_ok(gens: &[ZQElement]) -> bool {
    let y = escape(gens);
    ZQFractional::ZeroFull.contains(&y.to_total()) && !zq_ideal_nf(gens).contains(&y) && !ZQOracle::new(gens).contains(&y)
}

pub fn zq_nonfc(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let c = ctx.config;
    let mut tally = Tally::default();
    let ann = zq_annihilator(&ZQElement::new(0, rat(1, 1)));
    tally.instances += 1;
    if ann != ZQIdeal::NotFg(ZQFractional::ZeroFull) || ann.is_finitely_generated() || zq_is_fg(&ZQFractional::ZeroFull) {
        return Ok(tally.fail(Witness::symbolic("thm2.8.nonfc", vec!["(0, 1)".into()], "(0:(0,1)) not flagged".into())));
    }
    for _ in 0..c.zq_lists {
        let gens: Vec<ZQElement> = rand_gens(&mut ctx.rng, c)
            .into_iter()
            .map(|x| ZQElement::new(0, x.q))
            .collect();
        tally.instances += 1;
        if !nonfc_ok(&gens) {
            let w = lists_witness("thm2.8.nonfc", &[&gens], None, "list generates all of 0 ∝ Q".into());
            return Ok(tally.fail(w));
        }
    }
    tally.evidence.push(format!("(0:(0, 1)) = {ann}"));
    Ok(tally.confirmed())
}

pub fn zq_nonfc_replay(w: &Witness) -> anyhow::Result<bool> {
    if w.groups.is_empty() {
        let ann = zq_annihilator(&parse_zq(&w.symbolic[0])?);
        return Ok(ann.is_finitely_generated());
    }
    Ok(!nonfc_ok(&parse_list(&w.symbolic)?))
}

// ---- thm2.8.vfinite ----

fn vfinite_ok(i: &ZQIdeal) -> bool {
    let Ok(w) = zq_v_finite_witness(i) else {
        return false;
    };
    let (Ok(a), Ok(b)) = (zq_inverse(&zq_ideal_nf(&w).to_fractional()), zq_inverse(&i.to_fractional())) else {
        return false;
    };
    !w.is_empty() && a == b
}

pub fn zq_vfinite(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let c = ctx.config;
    let mut tally = Tally::default();
    for _ in 0..c.zq_lists {
        let gens = rand_nonzero_gens(&mut ctx.rng, c);
        tally.instances += 1;
        if !vfinite_ok(&ZQIdeal::Fg(zq_ideal_nf(&gens))) {
            return Ok(tally.fail(lists_witness("thm2.8.vfinite", &[&gens], None, "no v-finite witness".into())));
        }
        let x = ZQElement::new(0, rand_rat(&mut ctx.rng, c.coeff_bound, c.den_bound));
        if x.is_zero() {
            continue;
        }
        tally.instances += 1;
        if !vfinite_ok(&zq_annihilator(&x)) {
            let w = Witness::symbolic("thm2.8.vfinite", vec![x.to_string()], format!("(0:{x}) has no v-finite witness"));
            return Ok(tally.fail(w));
        }
    }
    let ann = zq_annihilator(&ZQElement::new(0, rat(1, 1)));
    let w = zq_v_finite_witness(&ann)?;
    tally.evidence.push(format!("(0:(0, 1)) = {ann} with J = R{}", w[0]));
    Ok(tally.confirmed())
}

pub fn zq_vfinite_replay(w: &Witness) -> anyhow::Result<bool> {
    let xs = parse_list(&w.symbolic)?;
    if w.groups.is_empty() {
        let x = xs.first().ok_or_else(|| anyhow!("missing element"))?;
        return Ok(!vfinite_ok(&zq_annihilator(x)));
    }
    Ok(!vfinite_ok(&ZQIdeal::Fg(zq_ideal_nf(&xs))))
}

// ---- prop2.2.chain ----

/// `I_v ∩ J_v = (I^{-1} + J^{-1})^{-1}`, and for `dZ ∝ Q` ideals, whose
/// inverses are finitely generated, also `= (I_1 + J_1)^{-1}`.
fn zq_chain_ok(gi: &[ZQElement], gj: &[ZQElement]) -> anyhow::Result<bool> {
    let fi = zq_ideal_nf(gi).to_fractional();
    let fj = zq_ideal_nf(gj).to_fractional();
    let (ii, ij) = (zq_inverse(&fi)?, zq_inverse(&fj)?);
    let left = zq_v_closure(&fi)?.intersection(&zq_v_closure(&fj)?)?;
    let mid = zq_inverse(&ii.sum(&ij)?)?;
    if left != mid {
        return Ok(false);
    }
    if let (Some(a), Some(b)) = (ii.generators(), ij.generators()) {
        let span = |gs: Vec<QQElement>| match gs.as_slice() {
            [g] if g.q.is_zero() => Ok(ZQFractional::ScaledLine { c: g.a.clone() }),
            _ => Err(anyhow!("unexpected inverse generators")),
        };
        let (i1, j1) = (span(a)?, span(b)?);
        return Ok(zq_inverse(&i1.sum(&j1)?)? == mid);
    }
    Ok(true)
}

#[derive(Default)]
struct Memo {
    inv: BTreeMap<Subgroup, Ideal>,
}

impl Memo {
    fn inverse(&mut self, i: &Ideal) -> anyhow::Result<Ideal> {
        if let Some(x) = self.inv.get(i.carrier()) {
            return Ok(x.clone());
        }
        let x = inverse_finite(i)?;
        self.inv.insert(i.carrier().clone(), x.clone());
        Ok(x)
    }

    fn v(&mut self, i: &Ideal) -> anyhow::Result<Ideal> {
        let inv = self.inverse(i)?;
        self.inverse(&inv)
    }

    fn chain_ok(&mut self, i: &Ideal, j: &Ideal) -> anyhow::Result<bool> {
        let left = intersect(&self.v(i)?, &self.v(j)?)?;
        let (ii, ij) = (self.inverse(i)?, self.inverse(j)?);
        let mid = self.inverse(&sum(&ii, &ij)?)?;
        let i1 = v_finite_witness_finite(&ii)?;
        let j1 = v_finite_witness_finite(&ij)?;
        let right = self.inverse(&sum(&i1, &j1)?)?;
        Ok(left == mid && mid == right)
    }
}

fn finite_chain_ok(i: &Ideal, j: &Ideal) -> anyhow::Result<bool> {
    Memo::default().chain_ok(i, j)
}

pub fn chain(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let c = ctx.config;
    let mut tally = Tally::default();
    let mut pairs_finite = 0usize;
    for inst in &ctx.suite.instances {
        let ideals: Vec<Ideal> = all_ideals(&inst.ring)?.into_iter().filter(|i| !i.is_zero()).collect();
        let n = ideals.len();
        let mut memo = Memo::default();
        let cap = c.ideals_per_ring.min(n * n);
        for _ in 0..cap {
            let (a, b) = (ctx.rng.gen_range(0..n), ctx.rng.gen_range(0..n));
            tally.instances += 1;
            pairs_finite += 1;
            if !memo.chain_ok(&ideals[a], &ideals[b])? {
                let (gi, gj) = (ideals[a].generators().to_vec(), ideals[b].generators().to_vec());
                let lens = vec![gi.len(), gj.len()];
                let w = Witness::finite(
                    "prop2.2.chain",
                    &inst.recipe,
                    gi.into_iter().chain(gj).collect(),
                    format!("chain of v-identities breaks in {}", inst.label),
                );
                return Ok(tally.fail(w.grouped(lens)));
            }
        }
    }
    for _ in 0..c.zq_lists {
        let gi = rand_nonzero_gens(&mut ctx.rng, c);
        let gj = rand_nonzero_gens(&mut ctx.rng, c);
        tally.instances += 1;
        if !zq_chain_ok(&gi, &gj)? {
            let w = lists_witness("prop2.2.chain", &[&gi, &gj], None, "chain of v-identities breaks in Z ∝ Q".into());
            return Ok(tally.fail(w));
        }
    }
    tally.evidence.push(format!("{pairs_finite} ideal pairs over finite rings, {} over Z ∝ Q", c.zq_lists));
    Ok(tally.confirmed())
}

pub fn chain_replay(w: &Witness) -> anyhow::Result<bool> {
    if let Some(r) = &w.ring {
        let ring = r.build()?.ring;
        let g = w.element_groups();
        anyhow::ensure!(g.len() == 2, "expected two ideals");
        let i = Ideal::generated(&ring, g[0].to_vec())?;
        let j = Ideal::generated(&ring, g[1].to_vec())?;
        return Ok(!finite_chain_ok(&i, &j)?);
    }
    let g = w.symbolic_groups();
    anyhow::ensure!(g.len() == 2, "expected two generator lists");
    Ok(!zq_chain_ok(&parse_list(g[0])?, &parse_list(g[1])?)?)
}

// ---- lem3.2.split / lem3.3.present ----

fn rand_submodule(rng: &mut ChaCha8Rng) -> (usize, Vec<ZQVector>) {
    let m = rng.gen_range(1..=3);
    let k = rng.gen_range(1..=3);
    let us: Vec<Vec<BigInt>> = (0..k).map(|_| (0..m).map(|_| BigInt::from(rng.gen_range(-6..=6))).collect()).collect();
    let in_span = rng.gen_bool(0.5);
    let gens = us
        .iter()
        .map(|u| {
            let w: Vec<BigRational> = if in_span {
                let coef: Vec<BigRational> = (0..k).map(|_| rand_rat(rng, 6, 6)).collect();
                (0..m)
                    .map(|j| {
                        us.iter()
                            .zip(&coef)
                            .fold(BigRational::zero(), |acc, (v, c)| acc + c * BigRational::from_integer(v[j].clone()))
                    })
                    .collect()
            } else {
                (0..m)
                    .map(|_| if rng.gen_bool(0.5) { BigRational::zero() } else { rand_rat(rng, 6, 6) })
                    .collect()
            };
            ZQVector { u: u.clone(), w }
        })
        .collect();
    (m, gens)
}

fn u_rows(gens: &[ZQVector]) -> Vec<Vec<BigInt>> {
    gens.iter().map(|g| g.u.clone()).collect()
}

fn uq_rows(gens: &[ZQVector]) -> Vec<Vec<BigRational>> {
    gens.iter().map(|g| to_q(&g.u)).collect()
}

/// Split iff every `w_i` lies in the rational span of the `u_i`.
fn split_by_rank(gens: &[ZQVector]) -> bool {
    let uq = uq_rows(gens);
    gens.iter().all(|g| in_q_span(&uq, &g.w))
}

fn vec_combo(rng: &mut ChaCha8Rng, gens: &[ZQVector], m: usize) -> ZQVector {
    gens.iter().fold(ZQVector::zero(m), |acc, g| {
        acc.add(&g.scale(&BigInt::from(rng.gen_range(-3..=3)), &rand_rat(rng, 6, 6)))
    })
}

fn split_verdict_ok(h: &ZQSubmoduleNF, gens: &[ZQVector]) -> bool {
    let by_rank = split_by_rank(gens);
    h.is_split() == by_rank && h.e_part_is_vector_space() == by_rank
}

/// Membership of `x` in `H`: for split `H` against `U ∝ KU` computed
/// independently; otherwise only the direction `x ∈ H` is known.
fn split_point_ok(h: &ZQSubmoduleNF, gens: &[ZQVector], x: &ZQVector, known_member: bool) -> bool {
    if known_member && !h.contains(x) {
        return false;
    }
    if h.is_split() {
        let expected = in_z_span(&u_rows(gens), &x.u) && in_q_span(&uq_rows(gens), &x.w);
        return h.contains(x) == expected;
    }
    true
}

fn vec_witness(check: &str, gens: &[ZQVector], point: Option<&ZQVector>, detail: String) -> Witness {
    let mut sym: Vec<String> = gens.iter().map(format_zqvec).collect();
    let mut groups = vec![gens.len()];
    if let Some(p) = point {
        sym.push(format_zqvec(p));
        groups.push(1);
    }
    Witness::symbolic(check, sym, detail).grouped(groups)
}

fn parse_vec_witness(w: &Witness) -> anyhow::Result<(usize, Vec<ZQVector>, Option<ZQVector>)> {
    let g = w.symbolic_groups();
    let gens = g[0].iter().map(|s| parse_zqvec(s)).collect::<anyhow::Result<Vec<_>>>()?;
    let m = gens.first().map_or(0, |v| v.u.len());
    let pt = match g.get(1) {
        Some(p) => Some(parse_zqvec(&p[0])?),
        None => None,
    };
    Ok((m, gens, pt))
}

pub fn zq_split(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let c = ctx.config;
    let mut tally = Tally::default();
    let (mut split, mut general) = (0usize, 0usize);
    for _ in 0..c.submodules {
        let (m, gens) = rand_submodule(&mut ctx.rng);
        let h = zq_submodule_nf(m, &gens)?;
        tally.instances += 1;
        if !split_verdict_ok(&h, &gens) {
            return Ok(tally.fail(vec_witness("lem3.2.split", &gens, None, "split verdict disagrees with the rank criterion".into())));
        }
        if h.is_split() {
            split += 1;
        } else {
            general += 1;
            // a generator with E-part outside KU lies in H but not in U ∝ KU
            let uq = uq_rows(&gens);
            let out = gens.iter().find(|g| !in_q_span(&uq, &g.w));
            if out.is_none_or(|g| !h.contains(g)) {
                return Ok(tally.fail(vec_witness("lem3.2.split", &gens, None, "no generator leaves U ∝ KU".into())));
            }
        }
        for k in 0..10 {
            let (x, member) = match k % 3 {
                0 => (vec_combo(&mut ctx.rng, &gens, m), true),
                1 => {
                    let mut x = vec_combo(&mut ctx.rng, &gens, m);
                    x.w = (0..m).map(|_| rand_rat(&mut ctx.rng, 6, 6)).collect();
                    (x, false)
                }
                _ => (
                    ZQVector {
                        u: (0..m).map(|_| BigInt::from(ctx.rng.gen_range(-6..=6))).collect(),
                        w: vec_combo(&mut ctx.rng, &gens, m).w,
                    },
                    false,
                ),
            };
            if !split_point_ok(&h, &gens, &x, member) {
                let w = vec_witness("lem3.2.split", &gens, Some(&x), format!("membership of {} disagrees", format_zqvec(&x)));
                return Ok(tally.fail(w));
            }
        }
    }
    tally.evidence.push(format!("{split} split and {general} non-split submodules of R^1..R^3"));
    Ok(tally.confirmed())
}

pub fn zq_split_replay(w: &Witness) -> anyhow::Result<bool> {
    let (m, gens, pt) = parse_vec_witness(w)?;
    let h = zq_submodule_nf(m, &gens)?;
    Ok(match pt {
        // replayed points are checked in the direction that needs no origin
        Some(x) => !split_point_ok(&h, &gens, &x, false),
        None => !split_verdict_ok(&h, &gens),
    })
}

fn present_ok(h: &ZQSubmoduleNF, gens: &[ZQVector]) -> anyhow::Result<bool> {
    if !zq_is_n_presented(h, 0) || (1..=3).any(|n| zq_is_n_presented(h, n) != split_by_rank(gens)) {
        return Ok(false);
    }
    if !h.is_split() {
        return Ok(true);
    }
    let us = u_rows(gens);
    let p = us.len();
    let m = h.m;
    let (w, kw) = zq_split_kernel(&us)?;
    let kills = |c: &[BigRational]| {
        (0..m).all(|j| {
            c.iter()
                .zip(&us)
                .fold(BigRational::zero(), |acc, (ci, u)| acc + ci * BigRational::from_integer(u[j].clone()))
                .is_zero()
        })
    };
    let rank_u = rank_by_minors(&uq_rows(gens));
    let wq: Vec<Vec<BigRational>> = w.iter().map(|r| to_q(r)).collect();
    Ok(wq.iter().all(|r| kills(r))
        && kw.iter().all(|r| kills(r))
        && rank_by_minors(&wq) == p - rank_u
        && kw.len() == p - rank_u
        && rank_by_minors(&kw) == kw.len()
        && is_saturated(&w))
}

pub fn zq_present(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let c = ctx.config;
    let mut tally = Tally::default();
    let r01 = vec![ZQVector {
        u: vec![BigInt::zero()],
        w: vec![BigRational::one()],
    }];
    let h = zq_submodule_nf(1, &r01)?;
    tally.instances += 1;
    if zq_is_n_presented(&h, 1) || !present_ok(&h, &r01)? {
        return Ok(tally.fail(vec_witness("lem3.3.present", &r01, None, "R(0,1) reported 1-presented".into())));
    }
    for _ in 0..c.submodules {
        let (m, gens) = rand_submodule(&mut ctx.rng);
        let h = zq_submodule_nf(m, &gens)?;
        tally.instances += 1;
        if !present_ok(&h, &gens)? {
            return Ok(tally.fail(vec_witness("lem3.3.present", &gens, None, "presentation verdict or syzygies wrong".into())));
        }
    }
    tally
        .evidence
        .push("R(0, 1) is finitely generated (one generator) but not 1-presented".into());
    Ok(tally.confirmed())
}

pub fn zq_present_replay(w: &Witness) -> anyhow::Result<bool> {
    let (m, gens, _) = parse_vec_witness(w)?;
    let h = zq_submodule_nf(m, &gens)?;
    if m == 1 && gens.len() == 1 && gens[0].u[0].is_zero() && !gens[0].w[0].is_zero() {
        return Ok(zq_is_n_presented(&h, 1));
    }
    Ok(!present_ok(&h, &gens)?)
}

// ---- ex2.3.* over Z ×' ⊕F_2 ----

fn rand_uze(rng: &mut ChaCha8Rng, c: &Config) -> UZEElement {
    if rng.gen_ratio(1, 3) {
        let a = 2 * rng.gen_range(-c.coeff_bound / 2..=c.coeff_bound / 2) + 1;
        return UZEElement::new(a, []);
    }
    let a = rng.gen_range(-c.coeff_bound..=c.coeff_bound);
    let e: Vec<u32> = (0..c.uze_support).filter(|_| rng.gen_ratio(1, 3)).collect();
    UZEElement::new(a, e)
}

fn subsets_of(idx: &[u32]) -> Vec<Vec<u32>> {
    (0..1u32 << idx.len())
        .map(|mask| idx.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect())
        .collect()
}

/// Regular iff `a` odd and `e = ∅`; for regular `x` no nonzero `y` in the
/// search box kills it, otherwise the core's witness does.
fn uze_regular_ok(x: &UZEElement, bound: i64) -> bool {
    let expected = x.a.is_odd() && x.e.is_empty();
    if uze_is_regular(x) != expected {
        return false;
    }
    if !expected {
        return uze_zero_divisor_witness(x).is_some_and(|w| !w.is_zero() && uze_mul(x, &w).is_zero());
    }
    let top = x.e.iter().next_back().map_or(0, |m| m + 1);
    let mut idx: Vec<u32> = x.e.iter().copied().collect();
    idx.extend([top, top + 1]);
    for e in subsets_of(&idx) {
        for a in -bound..=bound {
            let y = UZEElement::new(a, e.iter().copied());
            if !y.is_zero() && uze_mul(x, &y).is_zero() {
                return false;
            }
        }
    }
    true
}

pub fn uze_regular(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let c = ctx.config;
    let mut tally = Tally::default();
    let mut regular = 0usize;
    for _ in 0..c.samples {
        let x = rand_uze(&mut ctx.rng, c);
        tally.instances += 1;
        regular += uze_is_regular(&x) as usize;
        if !uze_regular_ok(&x, c.coeff_bound) {
            return Ok(tally.fail(Witness::symbolic("ex2.3.regular", vec![x.to_string()], format!("regularity of {x} misjudged"))));
        }
    }
    tally.evidence.push(format!("{regular} regular samples survived the zero-divisor search"));
    tally.evidence.push("(3, {}) is regular but not a unit".into());
    Ok(tally.confirmed())
}

pub fn uze_regular_replay(w: &Witness) -> anyhow::Result<bool> {
    Ok(!uze_regular_ok(&parse_uze(&w.symbolic[0])?, 12))
}

fn uze_ann_ok(x: &UZEElement, y: &UZEElement) -> bool {
    let ann = uze_annihilator(x);
    let gen_ok = ann.generator().is_none_or(|g| ann.contains(&g));
    ann.contains(y) == uze_mul(x, y).is_zero() && gen_ok
}

pub fn uze_ann(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let c = ctx.config;
    let mut tally = Tally::default();
    let two = UZEElement::new(2, []);
    tally.instances += 1;
    let a2 = uze_annihilator(&two);
    if a2 != UZEAnn::ZeroTimesE || a2.is_finitely_generated() {
        return Ok(tally.fail(Witness::symbolic("ex2.3.ann", vec![two.to_string()], "(0:(2,0)) is not 0 × E".into())));
    }
    for _ in 0..c.samples {
        let x = rand_uze(&mut ctx.rng, c);
        let mut ys: Vec<UZEElement> = (0..4).map(|_| rand_uze(&mut ctx.rng, c)).collect();
        let sub: Vec<u32> = x.e.iter().copied().filter(|_| ctx.rng.gen_bool(0.5)).collect();
        ys.push(UZEElement::new(0, sub.clone()));
        ys.push(UZEElement::new(1, x.e.iter().copied().chain([c.uze_support])));
        ys.extend(uze_zero_divisor_witness(&x));
        for y in ys {
            tally.instances += 1;
            if !uze_ann_ok(&x, &y) {
                let w = Witness::symbolic("ex2.3.ann", vec![x.to_string(), y.to_string()], format!("(0:{x}) ∋ {y} disagrees with the product"));
                return Ok(tally.fail(w));
            }
        }
    }
    tally.evidence.push("(0:(2, {})) = 0 × E, not finitely generated".into());
    Ok(tally.confirmed())
}

pub fn uze_ann_replay(w: &Witness) -> anyhow::Result<bool> {
    let xs = w.symbolic.iter().map(|s| parse_uze(s)).collect::<anyhow::Result<Vec<_>>>()?;
    Ok(match xs.as_slice() {
        [x] => {
            let a = uze_annihilator(x);
            a != UZEAnn::ZeroTimesE || a.is_finitely_generated()
        }
        [x, y] => !uze_ann_ok(x, y),
        _ => bail!("expected one or two elements"),
    })
}

/// `y/b ∈ J^{-1}` computed directly, by the core, and by the class.
fn uze_inv_ok(gens: &[UZEElement], y: &UZEElement, b: &BigInt) -> bool {
    let direct = gens.iter().all(|g| uze_mul(y, g).a.is_multiple_of(b));
    let by_class = match uze_inverse_class(gens) {
        UZEInverse::TotalRing => true,
        UZEInverse::EquivPrincipal { gcd } => uze_mul(y, &UZEElement::new(gcd, [])).a.is_multiple_of(b),
    };
    direct == by_class && direct == uze_fraction_in_inverse(y, b, gens)
}

/// `sR = bZ × E` for `s = (b, ∅)`, `b` odd: `s·r = (b·r.a, r.e)`.
fn uze_sr_ok(b: &BigInt, r: &UZEElement) -> bool {
    let p = uze_mul(&UZEElement::new(b.clone(), []), r);
    p.a == b * &r.a && p.e == r.e
}

pub fn uze_inv(ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let c = ctx.config;
    let mut tally = Tally::default();
    let example = [UZEElement::new(6, [1]), UZEElement::new(4, [2])];
    tally.instances += 1;
    if uze_inverse_class(&example) != (UZEInverse::EquivPrincipal { gcd: BigInt::from(2) }) {
        return Ok(tally.fail(Witness::symbolic("ex2.3.inv", texts(&example), "class of {(6,{1}),(4,{2})}".into())));
    }
    for _ in 0..c.samples {
        let len = ctx.rng.gen_range(1..=3);
        let zero_a = ctx.rng.gen_ratio(1, 4);
        let gens: Vec<UZEElement> = (0..len)
            .map(|_| {
                let mut g = rand_uze(&mut ctx.rng, c);
                if zero_a {
                    g.a = BigInt::zero();
                }
                g
            })
            .collect();
        let y = rand_uze(&mut ctx.rng, c);
        let b = BigInt::from(2 * ctx.rng.gen_range(-8..=7) + 1);
        tally.instances += 1;
        if !uze_inv_ok(&gens, &y, &b) || !uze_sr_ok(&b, &y) {
            let mut sym = texts(&gens);
            sym.push(y.to_string());
            sym.push(b.to_string());
            let w = Witness::symbolic("ex2.3.inv", sym, format!("membership of {y}/{b} in J^-1 disagrees")).grouped(vec![gens.len(), 1, 1]);
            return Ok(tally.fail(w));
        }
    }
    tally.evidence.push("({(6, {1}), (4, {2})})^-1 = (R(2, {}))^-1".into());
    Ok(tally.confirmed())
}

pub fn uze_inv_replay(w: &Witness) -> anyhow::Result<bool> {
    let g = w.symbolic_groups();
    if g.len() == 1 {
        let gens = g[0].iter().map(|s| parse_uze(s)).collect::<anyhow::Result<Vec<_>>>()?;
        return Ok(uze_inverse_class(&gens) != (UZEInverse::EquivPrincipal { gcd: BigInt::from(2) }));
    }
    anyhow::ensure!(g.len() == 3, "expected generators, y and b");
    let gens = g[0].iter().map(|s| parse_uze(s)).collect::<anyhow::Result<Vec<_>>>()?;
    let y = parse_uze(&g[1][0])?;
    let b: BigInt = g[2][0].parse()?;
    Ok(!uze_inv_ok(&gens, &y, &b) || !uze_sr_ok(&b, &y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(a: i64, n: i64, d: i64) -> ZQElement {
        ZQElement::new(a, rat(n, d))
    }

    #[test]
    fn small_predicates_hold() {
        assert!(bezout_point(&[z(0, 1, 2), z(0, 1, 3)], &z(0, 1, 6)));
        assert!(ann_shape_ok(&z(0, 1, 1)));
        assert!(ann_shape_ok(&z(5, 1, 2)));
        assert!(meet_shape_ok(&[z(2, 1, 1), z(3, 1, 2)]));
        assert!(nonfc_ok(&[z(0, 1, 2)]));
        assert!(inv_shape_ok(&[z(2, 1, 3)]).unwrap());
        assert!(zq_chain_ok(&[z(2, 0, 1)], &[z(3, 0, 1)]).unwrap());
        assert!(zq_chain_ok(&[z(0, 1, 1)], &[z(3, 0, 1)]).unwrap());
        assert!(vfinite_ok(&zq_annihilator(&z(0, 1, 1))));
        assert!(uze_regular_ok(&UZEElement::new(3, []), 12));
        assert!(uze_regular_ok(&UZEElement::new(2, [0]), 12));
        assert!(uze_inv_ok(&[UZEElement::new(6, [1]), UZEElement::new(4, [2])], &UZEElement::new(3, [0]), &BigInt::from(3)));
    }

    #[test]
    fn present_on_split_and_general() {
        let v = |u: &[i64], w: &[(i64, i64)]| ZQVector {
            u: u.iter().map(|&x| BigInt::from(x)).collect(),
            w: w.iter().map(|&(n, d)| rat(n, d)).collect(),
        };
        let gens = vec![v(&[2, 0], &[(1, 1), (0, 1)]), v(&[4, 0], &[(0, 1), (0, 1)])];
        let h = zq_submodule_nf(2, &gens).unwrap();
        assert!(h.is_split());
        assert!(present_ok(&h, &gens).unwrap());
        let g2 = vec![v(&[0], &[(1, 1)])];
        let h2 = zq_submodule_nf(1, &g2).unwrap();
        assert!(!h2.is_split());
        assert!(present_ok(&h2, &g2).unwrap());
        assert!(split_verdict_ok(&h2, &g2));
    }
}
