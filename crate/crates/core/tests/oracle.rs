//! Frozen example values, each recomputed here by naive enumeration over
//! element lists before being compared with the library.

use std::collections::BTreeSet;

use trivext_core::finmod::{residue_field_power, trivial_extension, TrivialExtension};
use trivext_core::finring::{decompose_into_local, make_product, make_quotient_poly, make_zmod, maximal_ideals};
use trivext_core::idealops::{
    all_ideals, annihilator, intersect, is_bezout, is_von_neumann_regular, minimal_generators, v_closure_finite, Ideal,
};
use trivext_core::resolve::{is_projective_cyclic, minimal_syzygy, projective_dimension_up_to, weak_nd_check_finite, PdResult};
use trivext_core::Ring;

type Set = BTreeSet<Vec<i64>>;

fn elements(r: &Ring) -> Vec<Vec<i64>> {
    r.group().elements().unwrap()
}

/// Naive ideal closure: repeatedly add sums and products until stable.
fn naive_ideal(r: &Ring, gens: &[Vec<i64>]) -> Set {
    let all = elements(r);
    let mut s: Set = gens.iter().cloned().collect();
    s.insert(r.group().zero());
    loop {
        let mut next = s.clone();
        for x in &s {
            for y in &s {
                next.insert(r.group().add(x, y));
            }
            for a in &all {
                next.insert(r.mul(a, x));
            }
        }
        if next == s {
            return s;
        }
        s = next;
    }
}

fn naive_ann(r: &Ring, x: &[i64]) -> Set {
    elements(r).into_iter().filter(|y| r.group().is_zero(&r.mul(x, y))).collect()
}

fn carrier(i: &Ideal) -> Set {
    i.elements().unwrap().into_iter().collect()
}

fn z4_z2() -> TrivialExtension {
    let a = make_zmod(4).unwrap();
    trivial_extension(&a, &residue_field_power(&a, 1).unwrap()).unwrap()
}

#[test]
fn z4_z2_law_and_annihilators() {
    let t = z4_z2();
    let r = &t.ring;
    let x = t.embed(&[2], &[1]);
    assert!(r.group().is_zero(&r.mul(&x, &x)));
    let c = t.embed(&[0], &[1]);
    let ann = annihilator(r, &c).unwrap();
    assert_eq!(carrier(&ann), naive_ann(r, &c));
    assert_eq!(ann.order(), 4);
    assert_eq!(carrier(&annihilator(r, &x).unwrap()), naive_ann(r, &x));
    assert_eq!(annihilator(r, &x).unwrap().order(), 4);
}

#[test]
fn z4_z2_ideal_lattice() {
    let t = z4_z2();
    let r = &t.ring;
    let ideals = all_ideals(r).unwrap();
    let naive: BTreeSet<Set> = elements(r)
        .iter()
        .flat_map(|x| elements(r).into_iter().map(move |y| (x.clone(), y)))
        .map(|(x, y)| naive_ideal(r, &[x, y]))
        .collect();
    assert_eq!(ideals.len(), 6);
    assert_eq!(ideals.iter().map(carrier).collect::<BTreeSet<_>>(), naive);

    let m = Ideal::generated(r, vec![t.embed(&[2], &[0]), t.embed(&[0], &[1])]).unwrap();
    assert_eq!(minimal_generators(&m).unwrap().mu, 2);
    let (bezout, witness) = is_bezout(r).unwrap();
    assert!(!bezout);
    assert_eq!(witness.unwrap(), m);

    let i1 = Ideal::principal(r, &t.embed(&[2], &[0])).unwrap();
    let i2 = Ideal::principal(r, &t.embed(&[2], &[1])).unwrap();
    let cap = intersect(&i1, &i2).unwrap();
    assert_eq!(carrier(&cap), &carrier(&i1) & &carrier(&i2));
    assert!(cap.is_zero());
    assert!(!i2.contains(&t.embed(&[2], &[0])));
}

#[test]
fn ideal_counts_match_naive_enumeration() {
    for (r, expected) in [
        (make_zmod(4).unwrap(), 3),
        (make_zmod(12).unwrap(), 6),
        (make_zmod(2).unwrap(), 2),
        (make_quotient_poly(2, &[0, 0, 1]).unwrap(), 3),
        (make_product(&[make_zmod(2).unwrap(), make_zmod(2).unwrap()]).unwrap(), 4),
    ] {
        let naive: BTreeSet<Set> = elements(&r).iter().map(|x| naive_ideal(&r, std::slice::from_ref(x))).collect();
        // every ring here is a principal ideal ring
        assert_eq!(naive.len(), expected);
        assert_eq!(all_ideals(&r).unwrap().iter().map(carrier).collect::<BTreeSet<_>>(), naive);
    }
}

#[test]
fn maximal_ideals_by_brute_force() {
    let z6 = make_zmod(6).unwrap();
    let got: BTreeSet<Set> = maximal_ideals(&z6).unwrap().iter().map(carrier).collect();
    let want: BTreeSet<Set> = [naive_ideal(&z6, &[vec![2]]), naive_ideal(&z6, &[vec![3]])].into_iter().collect();
    assert_eq!(got, want);
    let z4 = make_zmod(4).unwrap();
    assert!(z4.is_local().unwrap());
    assert_eq!(carrier(&maximal_ideals(&z4).unwrap()[0]), naive_ideal(&z4, &[vec![2]]));
}

#[test]
fn z6_decomposition_and_regularity() {
    let z6 = make_zmod(6).unwrap();
    let dec = decompose_into_local(&z6).unwrap();
    let mut idem: Vec<Vec<i64>> = dec.factors.iter().map(|f| f.idempotent.clone()).collect();
    idem.sort();
    assert_eq!(idem, vec![vec![3], vec![4]]);
    for e in &idem {
        assert_eq!(z6.mul(e, e), *e);
    }
    assert!(is_von_neumann_regular(&z6).unwrap().0);
    let (vnr, w) = is_von_neumann_regular(&make_zmod(4).unwrap()).unwrap();
    assert!(!vnr);
    assert_eq!(w.unwrap().generators(), &[vec![2]]);

    let two = Ideal::principal(&z6, &[2]).unwrap();
    assert_eq!(is_projective_cyclic(&two).unwrap(), Some(vec![4]));
    assert!(weak_nd_check_finite(&z6, 2, 0, 4).unwrap().holds);
    assert!(!weak_nd_check_finite(&make_zmod(4).unwrap(), 2, 0, 4).unwrap().holds);
}

#[test]
fn syzygies_over_z4() {
    let z4 = make_zmod(4).unwrap();
    let syz = minimal_syzygy(&z4, &[vec![2]]).unwrap();
    assert_eq!(syz.elements().unwrap().into_iter().collect::<Set>(), naive_ann(&z4, &[2]));
    let two = Ideal::principal(&z4, &[2]).unwrap();
    match projective_dimension_up_to(&two.as_submodule(), 4).unwrap() {
        PdResult::NotFreeUpTo { bound, syzygies } => {
            assert_eq!(bound, 4);
            assert!(syzygies.iter().all(|s| s.order() == 2));
        }
        other => panic!("{other:?}"),
    }
    assert!(v_closure_finite(&two).unwrap().is_whole());
}
