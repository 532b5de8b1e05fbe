//! The twelve acceptance criteria, run against the default suite.
//!
//! Each criterion prints one `PASS` or `FAIL` line; the test fails if any
//! criterion does.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use trivext_core::idealops::{all_ideals, annihilator, minimal_generators, v_closure_finite};
use trivext_core::symtriv::zqmod::{zq_is_n_presented, zq_submodule_nf, ZQVector};
use trivext_core::Ideal;
use trivext_harness::checks::{all_ids, replay, run_suite};
use trivext_harness::recipe::{Fiber, Recipe};
use trivext_harness::report::{CheckReport, RegistryStatus, ReportFile, Status};
use trivext_harness::suite::{Config, Family, Suite};

const SEED: u64 = 20_240_601;

struct Run {
    config: Config,
    suite: Suite,
    file: ReportFile,
    json: String,
}

fn fresh_run() -> Run {
    let config = Config::named("default").unwrap();
    let suite = Suite::generate(&config).unwrap();
    let reports = run_suite(&all_ids(), &suite, &config, SEED).unwrap();
    let file = ReportFile::new(SEED, &config, &suite, reports);
    let json = file.to_json();
    Run { config, suite, file, json }
}

fn run() -> &'static Run {
    static RUN: OnceLock<Run> = OnceLock::new();
    RUN.get_or_init(fresh_run)
}

type Verdict = Result<String, String>;

fn report(id: &str) -> Result<&'static CheckReport, String> {
    run()
        .file
        .reports
        .iter()
        .find(|r| r.check == id)
        .ok_or_else(|| format!("{id} missing from the report"))
}

fn confirmed(id: &str) -> Result<&'static CheckReport, String> {
    let r = report(id)?;
    match &r.status {
        Status::Confirmed => Ok(r),
        Status::Counterexample { witness } => Err(format!("{id}: counterexample {}", witness.detail)),
        Status::Skipped { reason } => Err(format!("{id}: skipped ({reason})")),
    }
}

fn has_evidence(r: &CheckReport, needle: &str) -> Result<(), String> {
    if r.evidence.iter().any(|e| e.contains(needle)) {
        Ok(())
    } else {
        Err(format!("{}: no evidence line containing `{needle}` in {:?}", r.check, r.evidence))
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1_axioms() -> Verdict {
    let r = confirmed("ax.ring")?;
    let n = run().suite.instances.len();
    ensure(r.instances_run == n, format!("{} of {n} rings checked", r.instances_run))?;
    let exhaustive = run().suite.instances.iter().filter(|i| i.size() <= run().config.exhaustive_limit).count();
    has_evidence(r, &format!("{exhaustive} rings checked exhaustively"))?;
    Ok(format!("{n} rings, zero violations"))
}

fn c2_ex24_ann() -> Verdict {
    let r = confirmed("ex2.4.ann")?;
    let locals = run().suite.of_family(Family::M2zero).count();
    has_evidence(r, &format!("{locals} local rings with M² = 0"))?;
    let z4 = Recipe::zmod(4).build().unwrap().ring;
    let ann = annihilator(&z4, &[2]).unwrap();
    ensure(ann == Ideal::principal(&z4, &[2]).unwrap(), "(0:2) ≠ (2) in Z/4")?;
    Ok(format!("{locals} rings, {} elements c", r.instances_run))
}

fn c3_kernels() -> Verdict {
    let a = confirmed("ex2.4.ker")?;
    let b = confirmed("thm2.6.ker")?;
    ensure(a.instances_run >= 50, format!("ex2.4.ker covered {} ideals", a.instances_run))?;
    ensure(b.instances_run >= 50, format!("thm2.6.ker covered {} ideals", b.instances_run))?;
    Ok(format!("{} and {} ideals", a.instances_run, b.instances_run))
}

fn c4_lem27() -> Verdict {
    let r = confirmed("lem2.7.formulas")?;
    let count = |prefix: &str| -> usize {
        r.evidence
            .iter()
            .find(|e| e.contains(prefix))
            .and_then(|e| e.split_whitespace().next()?.parse().ok())
            .unwrap_or(0)
    };
    let (nonzero, zero) = (count("0 ≠ a ∈ M"), count("a = 0, e ≠ 0"));
    ensure(nonzero > 0 && zero > 0, format!("cases covered: a ≠ 0 {nonzero}, a = 0 {zero}"))?;
    Ok(format!("{nonzero} elements with a ≠ 0, {zero} with a = 0"))
}

fn c5_z4_trivext() -> Verdict {
    let t = Recipe::trivext(Recipe::zmod(4), Fiber::ResidueFieldPower { rank: 1 })
        .build()
        .unwrap()
        .ext
        .unwrap();
    let ideals = all_ideals(&t.ring).unwrap();
    ensure(ideals.len() == 6, format!("{} ideals", ideals.len()))?;
    let m = Ideal::generated(&t.ring, vec![t.embed(&[2], &[0]), t.embed(&[0], &[1])]).unwrap();
    let mu = minimal_generators(&m).unwrap().mu;
    ensure(mu == 2, format!("μ(M ∝ E) = {mu}"))?;
    let r = confirmed("ex2.5.strict")?;
    has_evidence(r, "Z/4 ∝ k^1: (2,0) ∉ R(2,1)")?;
    let j = Ideal::principal(&t.ring, &t.embed(&[2], &[1])).unwrap();
    ensure(!j.contains(&t.embed(&[2], &[0])), "(2,0) ∈ R(2,1)")?;
    Ok("6 ideals, μ = 2, (2,0) ∉ R(2,1)".into())
}

fn c6_vtrivial() -> Verdict {
    let r = confirmed("fin.vtrivial")?;
    let n = run().suite.instances.len();
    ensure(r.instances_run == n, format!("{} of {n} rings", r.instances_run))?;
    has_evidence(r, "Z/4: (2)_v = Z/4 ≠ (2)")?;
    let z4 = Recipe::zmod(4).build().unwrap().ring;
    let two = Ideal::principal(&z4, &[2]).unwrap();
    let v = v_closure_finite(&two).unwrap();
    ensure(v.is_whole() && v != two, "(2)_v in Z/4 is not Z/4")?;
    Ok(format!("{n} rings; (2)_v = Z/4 recomputed"))
}

fn c7_zq() -> Verdict {
    let c = &run().config;
    ensure(c.samples >= 1000 && c.zq_lists >= 100, "sampling below 1000 × 100")?;
    let b = confirmed("prop3.5.bezout")?;
    ensure(
        b.instances_run >= c.samples * c.zq_lists,
        format!("{} membership samples", b.instances_run),
    )?;
    for id in ["thm2.8.ann", "thm2.8.inv", "thm2.8.intersect", "thm2.8.nonfc", "thm2.8.vfinite", "prop2.2.chain"] {
        confirmed(id)?;
    }
    has_evidence(confirmed("thm2.8.nonfc")?, "(0:(0, 1)) = 0 ∝ Q (not finitely generated)")?;
    has_evidence(confirmed("thm2.8.inv")?, "({(2, 0)})^-1 = (1/2)Z ∝ Q = ({(2, 1/3)})^-1")?;
    Ok(format!("{} lists × {} samples; all zq checks confirmed", c.zq_lists, c.samples))
}

fn c8_submodules() -> Verdict {
    let s = confirmed("lem3.2.split")?;
    let p = confirmed("lem3.3.present")?;
    ensure(s.instances_run >= 200, format!("lem3.2.split: {} submodules", s.instances_run))?;
    ensure(p.instances_run >= 200, format!("lem3.3.present: {} submodules", p.instances_run))?;
    let r01 = vec![ZQVector {
        u: vec![BigInt::zero()],
        w: vec![BigRational::one()],
    }];
    let h = zq_submodule_nf(1, &r01).map_err(|e| e.to_string())?;
    ensure(!zq_is_n_presented(&h, 1), "R(0,1) reported 1-presented")?;
    has_evidence(p, "R(0, 1) is finitely generated (one generator) but not 1-presented")?;
    Ok(format!("{} and {} submodules; R(0,1) fg, not 1-presented", s.instances_run, p.instances_run))
}

fn c9_uze() -> Verdict {
    ensure(run().config.uze_support >= 8, "support bound below 8")?;
    confirmed("ex2.3.regular")?;
    has_evidence(confirmed("ex2.3.ann")?, "(0:(2, {})) = 0 × E, not finitely generated")?;
    let inv = confirmed("ex2.3.inv")?;
    ensure(inv.instances_run >= 1000, format!("ex2.3.inv: {} samples", inv.instances_run))?;
    Ok(format!("{} inverse-class samples", inv.instances_run))
}

fn c10_thm310() -> Verdict {
    let r = confirmed("thm3.10.fin")?;
    let n = run().suite.instances.len();
    ensure(r.instances_run == n, format!("{} of {n} rings", r.instances_run))?;
    ensure(run().config.pd_bound == 4, "pd bound is not 4")?;
    Ok(format!("{n} rings, zero disagreements"))
}

fn c11_intersection() -> Verdict {
    let r = report("thm2.6.intersection")?;
    ensure(r.registry_status == RegistryStatus::Open, "registry status is not open")?;
    ensure(!r.is_failure() && run().file.exit_code() == 0, "the open check fails the run")?;
    match &r.status {
        Status::Confirmed => Ok(format!("confirmed on {} tuples", r.instances_run)),
        Status::Counterexample { witness } => {
            let again = replay(witness).map_err(|e| e.to_string())?;
            ensure(again, "replay no longer fails")?;
            let json = serde_json::to_string(witness).unwrap();
            let back = serde_json::from_str(&json).unwrap();
            ensure(replay(&back).map_err(|e| e.to_string())?, "deserialized witness does not replay")?;
            Ok(format!("counterexample, replay = true: {}", witness.detail))
        }
        Status::Skipped { reason } => Err(format!("no verdict: {reason}")),
    }
}

fn c12_determinism() -> Verdict {
    let second = fresh_run();
    ensure(second.json == run().json, "reports differ between runs")?;
    Ok(format!("{} bytes, identical", second.json.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Verdict); 12] = [
        ("ring axioms and the trivial-extension law", c1_axioms),
        ("ex2.4.ann", c2_ex24_ann),
        ("ex2.4.ker and thm2.6.ker", c3_kernels),
        ("lem2.7.formulas, both cases", c4_lem27),
        ("Z/4 ∝ Z/2: ideals, μ, ex2.5.strict", c5_z4_trivext),
        ("fin.vtrivial", c6_vtrivial),
        ("zq tier", c7_zq),
        ("lem3.2.split and lem3.3.present", c8_submodules),
        ("ex2.3 checks", c9_uze),
        ("thm3.10.fin", c10_thm310),
        ("thm2.6.intersection verdict and replay", c11_intersection),
        ("determinism", c12_determinism),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(note) => println!("PASS {:>2} {name}: {note}", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", n + 1);
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}

