//! The claim registry and the check runner.

mod finite;
pub mod oracle;
mod symbolic;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::report::{CheckReport, RegistryStatus, Status, Witness};
use crate::suite::{Config, Suite};

pub struct Ctx<'a> {
    pub suite: &'a Suite,
    pub config: &'a Config,
    pub rng: ChaCha8Rng,
}

#[derive(Debug, Clone)]
pub enum Outcome {
    Confirmed { instances: usize, evidence: Vec<String> },
    Counterexample { instances: usize, witness: Witness },
    Skipped { reason: String },
}

/// Running tally for a check: instances seen, evidence lines, first failure.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    pub instances: usize,
    pub evidence: Vec<String>,
}

impl Tally {
    pub fn confirmed(self) -> Outcome {
        if self.instances == 0 {
            Outcome::Skipped {
                reason: "no applicable instances in the suite".into(),
            }
        } else {
            Outcome::Confirmed {
                instances: self.instances,
                evidence: self.evidence,
            }
        }
    }

    pub fn fail(&self, witness: Witness) -> Outcome {
        Outcome::Counterexample {
            instances: self.instances,
            witness,
        }
    }
}

type RunFn = fn(&mut Ctx) -> anyhow::Result<Outcome>;
type ReplayFn = fn(&Witness) -> anyhow::Result<bool>;

pub struct CheckDef {
    pub id: &'static str,
    pub anchor: &'static str,
    pub status: RegistryStatus,
    pub run: RunFn,
    /// True when the witness still violates the claim.
    pub replay: ReplayFn,
}

const fn def(id: &'static str, anchor: &'static str, run: RunFn, replay: ReplayFn) -> CheckDef {
    CheckDef {
        id,
        anchor,
        status: RegistryStatus::Standard,
        run,
        replay,
    }
}

static REGISTRY: [CheckDef; 23] = [
    def("ax.ring", "commutative unital ring axioms; (a,e)(a',e') = (aa', ae'+a'e)", finite::ax_ring, finite::ax_ring_replay),
    def("ex2.3.regular", "Z ×' ⊕F2: regular iff s = (a,0) with a odd", symbolic::uze_regular, symbolic::uze_regular_replay),
    def("ex2.3.ann", "Z ×' ⊕F2: (0:(2,0)) = 0 × E is not finitely generated", symbolic::uze_ann, symbolic::uze_ann_replay),
    def("ex2.3.inv", "Z ×' ⊕F2: J^-1 = Q(R) or J^-1 = (R(x,0))^-1", symbolic::uze_inv, symbolic::uze_inv_replay),
    def("ex2.4.ann", "local (R,M) with M^2 = 0: Ann(c) = (0:c) = M", finite::ex24_ann, finite::ex24_ann_replay),
    def("ex2.4.ker", "local (R,M) with M^2 = 0: Ker(u) = M^n", finite::ex24_ker, finite::ex24_ker_replay),
    def("ex2.5.strict", "J = R(x,1) is strictly inside I ∝ E'", finite::ex25_strict, finite::ex25_strict_replay),
    def("lem2.7.formulas", "ME = 0: (0:c) = (0:a) ∝ E for a ≠ 0 in M, (0:c) = M ∝ E for a = 0", finite::lem27, finite::lem27_replay),
    def("thm2.6.ker", "ME = 0, J = ΣR(a_i,0): Ker(u) = Ker(v) ∝ E^n", finite::thm26_ker, finite::thm26_ker_replay),
    CheckDef {
        status: RegistryStatus::Open,
        ..def(
            "thm2.6.intersection",
            "ME = 0, J = ∩R(a_i,e_i) strictly inside each R(a_i,e_i): J = (∩Aa_i) ∝ 0",
            finite::thm26_intersection,
            finite::thm26_intersection_replay,
        )
    },
    def("thm2.8.ann", "Z ∝ Q: (a,e) regular iff a ≠ 0; (0:c) = 0 ∝ Q for c = (0,e) ≠ 0", symbolic::zq_ann, symbolic::zq_ann_replay),
    def("thm2.8.inv", "Z ∝ Q: (I ∝ E)^-1 = I^-1 ∝ Q", symbolic::zq_inv, symbolic::zq_inv_replay),
    def("thm2.8.intersect", "Z ∝ Q: ∩R(a_i,e_i) = (∩Ra_i) ∝ Q", symbolic::zq_intersect, symbolic::zq_intersect_replay),
    def("thm2.8.nonfc", "Z ∝ Q: (0:(0,1)) = 0 ∝ Q is not finitely generated", symbolic::zq_nonfc, symbolic::zq_nonfc_replay),
    def("thm2.8.vfinite", "Z ∝ Q: every finitely generated ideal and every (0:a) is v-finite", symbolic::zq_vfinite, symbolic::zq_vfinite_replay),
    def("ex3.4.regann", "Z ∝ Q: (a,e) with a ≠ 0 has no non-zero annihilator", symbolic::zq_regann, symbolic::zq_regann_replay),
    def("prop2.2.chain", "I_v ∩ J_v = (I^-1 + J^-1)^-1 = (I_1 + J_1)^-1", symbolic::chain, symbolic::chain_replay),
    def("prop3.5.bezout", "Z ∝ Q is Bézout: every finitely generated ideal is principal", symbolic::zq_bezout, symbolic::zq_bezout_replay),
    def("lem3.2.split", "H finitely generated with Q-space E-part iff H = U ∝ KU", symbolic::zq_split, symbolic::zq_split_replay),
    def("lem3.3.present", "H n-presented iff U n-presented and H = U ∝ KU", symbolic::zq_present, symbolic::zq_present_replay),
    def("prod.componentwise", "(0:C), I ∩ J and I^-1 are computed componentwise in ∏R_j", finite::componentwise, finite::componentwise_replay),
    def("fin.vtrivial", "Q(R) = R for finite R: I^-1 = I_v = R for every nonzero ideal", finite::vtrivial, finite::vtrivial_replay),
    def("thm3.10.fin", "finite R: weak (2,0)-ring iff von Neumann regular", finite::thm310, finite::thm310_replay),
];

pub fn registry() -> &'static [CheckDef] {
    &REGISTRY
}

pub fn find(id: &str) -> Option<&'static CheckDef> {
    REGISTRY.iter().find(|d| d.id == id)
}

pub fn all_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|d| d.id).collect()
}

/// Per-check RNG: ChaCha8 keyed by `sha256(seed || id)`.
pub fn check_rng(seed: u64, id: &str) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(id.as_bytes());
    let mut key = [0u8; 32];
    key.copy_from_slice(&h.finalize());
    ChaCha8Rng::from_seed(key)
}

pub fn run_check(def: &CheckDef, suite: &Suite, config: &Config, seed: u64) -> CheckReport {
    let mut ctx = Ctx {
        suite,
        config,
        rng: check_rng(seed, def.id),
    };
    let (status, instances_run, evidence) = match (def.run)(&mut ctx) {
        Ok(Outcome::Confirmed { instances, evidence }) => (Status::Confirmed, instances, evidence),
        Ok(Outcome::Counterexample { instances, witness }) => (Status::Counterexample { witness }, instances, Vec::new()),
        Ok(Outcome::Skipped { reason }) => (Status::Skipped { reason }, 0, Vec::new()),
        Err(e) => (Status::Skipped { reason: format!("error: {e}") }, 0, Vec::new()),
    };
    CheckReport {
        check: def.id.to_string(),
        anchor: def.anchor.to_string(),
        registry_status: def.status,
        status,
        instances_run,
        evidence,
    }
}

/// Run the named checks concurrently; reports come back in the order given.
pub fn run_suite(ids: &[&str], suite: &Suite, config: &Config, seed: u64) -> anyhow::Result<Vec<CheckReport>> {
    let defs = ids
        .iter()
        .map(|id| find(id).ok_or_else(|| anyhow::anyhow!("unregistered check `{id}`")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(defs.par_iter().map(|d| run_check(d, suite, config, seed)).collect())
}

/// Re-execute a counterexample; true if it still fails.
pub fn replay(witness: &Witness) -> anyhow::Result<bool> {
    let def = find(&witness.check).ok_or_else(|| anyhow::anyhow!("unregistered check `{}`", witness.check))?;
    (def.replay)(witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique() {
        let mut ids = all_ids();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), REGISTRY.len());
        assert_eq!(find("thm2.6.intersection").unwrap().status, RegistryStatus::Open);
        assert_eq!(REGISTRY.iter().filter(|d| d.status == RegistryStatus::Open).count(), 1);
    }

    #[test]
    fn rng_depends_on_seed_and_id() {
        use rand::RngCore;
        let a = check_rng(7, "ax.ring").next_u64();
        assert_eq!(a, check_rng(7, "ax.ring").next_u64());
        assert_ne!(a, check_rng(8, "ax.ring").next_u64());
        assert_ne!(a, check_rng(7, "fin.vtrivial").next_u64());
    }

    #[test]
    fn empty_run() {
        let suite = Suite { instances: vec![] };
        assert!(run_suite(&[], &suite, &Config::default(), 0).unwrap().is_empty());
        assert!(run_suite(&["nope"], &suite, &Config::default(), 0).is_err());
    }
}
