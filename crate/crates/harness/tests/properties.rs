use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use trivext_core::symtriv::uze::UZEElement;
use trivext_core::symtriv::zq::ZQElement;
use trivext_core::symtriv::zqmod::ZQVector;
use trivext_harness::checks::{find, replay, run_check};
use trivext_harness::recipe::{Fiber, Recipe};
use trivext_harness::report::Status;
use trivext_harness::ringspec::{GenDef, IdealDef, RingDef, RingSpec, SPEC_VERSION};
use trivext_harness::suite::{Config, Suite};
use trivext_harness::symtext::{format_zqvec, parse_uze, parse_zq, parse_zqvec};

fn local_recipe() -> impl Strategy<Value = Recipe> {
    prop_oneof![
        prop::sample::select(vec![2i64, 3, 4, 5, 8, 9]).prop_map(Recipe::zmod),
        (prop::sample::select(vec![2i64, 3]), 2usize..4).prop_map(|(p, t)| Recipe::truncated(p, t)),
    ]
}

fn recipe() -> impl Strategy<Value = Recipe> {
    prop_oneof![
        local_recipe(),
        prop::collection::vec(local_recipe(), 2..3).prop_map(Recipe::product),
        (local_recipe(), 1usize..3).prop_map(|(a, r)| Recipe::trivext(a, Fiber::ResidueFieldPower { rank: r })),
        (prop::sample::select(vec![2i64, 3]), 1usize..3).prop_map(|(p, r)| Recipe::trivext(Recipe::zmod(p), Fiber::Free { rank: r })),
    ]
}

fn ring_def(r: &Recipe) -> RingDef {
    match r.clone() {
        Recipe::Zmod { n } => RingDef::Zmod { n },
        Recipe::Gfpoly { p, f } => RingDef::Gfpoly { p, f },
        Recipe::Product { parts } => RingDef::Product { parts },
        Recipe::Trivext { base, fiber } => RingDef::Trivext { base: *base, fiber },
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn recipes_round_trip_through_json(r in recipe()) {
        let s = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<Recipe>(&s).unwrap(), r);
    }

    #[test]
    fn specs_round_trip_through_toml(rs in prop::collection::vec(recipe(), 1..4), zq in any::<bool>()) {
        let mut rings: BTreeMap<String, RingDef> =
            rs.iter().enumerate().map(|(i, r)| (format!("r{i}"), ring_def(r))).collect();
        let mut ideals = BTreeMap::new();
        if zq {
            rings.insert("q".into(), RingDef::Zq);
            ideals.insert("two".into(), IdealDef { ring: "q".into(), generators: vec![GenDef::Text("(2, 1/3)".into())] });
        }
        let built = rs[0].build().unwrap();
        let zero = vec![0i64; built.ring.rank()];
        ideals.insert("z".into(), IdealDef { ring: "r0".into(), generators: vec![GenDef::Coeffs(zero)] });
        let spec = RingSpec { version: SPEC_VERSION, rings, ideals, modules: BTreeMap::new() };
        let text = spec.to_toml();
        let back = RingSpec::parse(&text).unwrap();
        prop_assert_eq!(&back, &spec);
        prop_assert_eq!(back.to_toml(), text);
    }

    #[test]
    fn symbolic_text_round_trips(a in -50i64..50, n in -50i64..50, d in 1i64..20,
                                 e in prop::collection::btree_set(0u32..10, 0..4),
                                 u in prop::collection::vec(-9i64..9, 1..4)) {
        let x = ZQElement::new(a, BigRational::new(n.into(), d.into()));
        prop_assert_eq!(parse_zq(&x.to_string()).unwrap(), x);
        let y = UZEElement::new(a, e);
        prop_assert_eq!(parse_uze(&y.to_string()).unwrap(), y);
        let v = ZQVector {
            w: u.iter().map(|&k| BigRational::new(k.into(), d.into())).collect(),
            u: u.into_iter().map(BigInt::from).collect(),
        };
        prop_assert_eq!(parse_zqvec(&format_zqvec(&v)).unwrap(), v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// Same seed, same report; every counterexample replays.
    #[test]
    fn checks_are_deterministic_and_witnesses_replay(seed in any::<u64>()) {
        let config = Config::named("small").unwrap();
        let suite = Suite::generate(&config).unwrap();
        for id in ["thm2.6.intersection", "thm2.8.ann", "ex2.4.ker"] {
            let def = find(id).unwrap();
            let a = run_check(def, &suite, &config, seed);
            prop_assert_eq!(&a, &run_check(def, &suite, &config, seed));
            let skipped = matches!(a.status, Status::Skipped { .. });
            prop_assert!(!skipped);
            if let Some(w) = a.witness() {
                prop_assert!(replay(w).unwrap());
            }
        }
    }
}
