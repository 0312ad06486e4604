use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::field::Field;
use crate::groebner::{ideal_quotient, Ideal, Power};
use crate::modcat::{hilbert_function, FpModule};
use crate::polyring::{MonomialOrder, Polynomial, Ring};

fn ring(vars: &[&str]) -> Arc<Ring> {
    Ring::new(Field::prime(32003).unwrap(), vars, MonomialOrder::GRevLex).unwrap()
}

fn seq(r: &Arc<Ring>, s: &str) -> Vec<Polynomial> {
    s.split(',').map(|x| r.poly(x.trim()).unwrap()).collect()
}

fn cyc(r: &Arc<Ring>, gens: &str) -> FpModule {
    FpModule::cyclic(&Ideal::parse(r, gens).unwrap()).unwrap()
}

fn hf(m: &FpModule, lo: i64, hi: i64) -> Vec<usize> {
    hilbert_function(m, lo, hi).unwrap().into_values().collect()
}

fn image_ideal(t: &Torsion, m: &FpModule) -> Ideal {
    let r = m.ring();
    let mut gens: Vec<Polynomial> = t.inclusion.matrix().columns().iter().map(|c| c[0].clone()).collect();
    gens.extend(m.relations().columns().iter().map(|c| c[0].clone()));
    Ideal::new(r, gens).unwrap()
}

#[test]
fn torsion_of_a_cyclic_module() {
    let r = ring(&["x", "y"]);
    let m = cyc(&r, "x^2*y");
    let tor = torsion_submodule(&m, &Ideal::parse(&r, "x").unwrap()).unwrap();
    assert_eq!(tor.exponent, 2);
    let sat = ideal_quotient(&Ideal::parse(&r, "x^2*y").unwrap(), &r.poly("x").unwrap(), Power::Infinity).unwrap();
    assert_eq!(sat.ideal, Ideal::parse(&r, "y").unwrap());
    assert!(image_ideal(&tor, &m).same_ideal(&sat.ideal).unwrap());
    // (y)/(x²y) ≅ (R/(x²))(-1)
    assert_eq!(hf(&tor.module, 0, 4), vec![0, 1, 2, 2, 2]);
    assert!(tor.inclusion.kernel().unwrap().module().is_zero().unwrap());
}

#[test]
fn torsion_trivial_cases() {
    let r = ring(&["x", "y"]);
    let free = FpModule::free(&r, vec![0]);
    let tor = torsion_submodule(&free, &Ideal::parse(&r, "x").unwrap()).unwrap();
    assert!(tor.module.is_zero().unwrap());
    assert_eq!(tor.exponent, 0);
    let k = cyc(&r, "x, y");
    let tor = torsion_submodule(&k, &Ideal::parse(&r, "x, y").unwrap()).unwrap();
    assert_eq!(hf(&tor.module, -1, 2), vec![0, 1, 0, 0]);
    assert_eq!(tor.exponent, 1);
}

#[test]
fn torsion_depends_on_the_radical_only() {
    let r = ring(&["x", "y"]);
    let m = cyc(&r, "x^3*y^2, x*y^3");
    let a = torsion_submodule(&m, &Ideal::parse(&r, "x").unwrap()).unwrap();
    let b = torsion_submodule(&m, &Ideal::parse(&r, "x^2").unwrap()).unwrap();
    assert!(image_ideal(&a, &m).same_ideal(&image_ideal(&b, &m)).unwrap());
    let c = torsion_submodule(&m, &Ideal::parse(&r, "x, y").unwrap()).unwrap();
    let d = torsion_submodule(&m, &Ideal::parse(&r, "x^2, x*y, y^3").unwrap()).unwrap();
    assert!(image_ideal(&c, &m).same_ideal(&image_ideal(&d, &m)).unwrap());
}

/// Monomials `xᵃyᵇ` with `a, b < r` in degree `2r - d`.
fn top_count(r: i64, d: i64) -> usize {
    let e = 2 * r - d;
    (0..r).filter(|&a| e - a >= 0 && e - a < r).count()
}

#[test]
fn top_local_cohomology_of_the_plane() {
    let r = ring(&["x", "y"]);
    let m = FpModule::free(&r, vec![0]);
    let t = seq(&r, "x, y");
    let kz = local_cohomology_graded(&m, &t, 2, (-6, 2), 8, Method::KoszulColim).unwrap();
    let ex = local_cohomology_graded(&m, &t, 2, (-6, 2), 8, Method::ExtColim).unwrap();
    for d in 2..=6i64 {
        assert_eq!(kz.value(-d), Some(d as usize - 1));
        assert_eq!(ex.value(-d), Some(d as usize - 1));
        let row = kz.row(-d).unwrap();
        for (k, &dim) in row.dims.iter().enumerate() {
            assert_eq!(dim, top_count(k as i64 + 1, d), "d = {d}, stage {}", k + 1);
        }
    }
    for d in -1..=2 {
        assert_eq!(kz.value(d), Some(0));
        assert_eq!(ex.value(d), Some(0));
    }
    assert_eq!(kz.entries.len(), 9 * 8);
    assert!(kz.entries.contains(&[-6, 8, 5]));
}

#[test]
fn lower_local_cohomology_of_the_plane_vanishes() {
    let r = ring(&["x", "y"]);
    let m = FpModule::free(&r, vec![0]);
    let t = seq(&r, "x, y");
    for i in 0..2 {
        for method in [Method::KoszulColim, Method::ExtColim] {
            let tab = local_cohomology_graded(&m, &t, i, (-4, 2), 4, method).unwrap();
            assert!(tab.entries.iter().all(|e| e[2] == 0), "{method:?} i = {i}");
            assert!(tab.all_stable());
        }
    }
}

#[test]
fn non_primary_support_grows() {
    let r = ring(&["x", "y"]);
    let m = FpModule::free(&r, vec![0]);
    let tab = local_cohomology_graded(&m, &seq(&r, "x"), 1, (0, 0), 5, Method::KoszulColim).unwrap();
    let row = tab.row(0).unwrap();
    assert_eq!(row.dims, vec![1, 2, 3, 4, 5]);
    assert!(!row.stable);
    assert_eq!(row.value, None);
    assert_eq!(tab.unstable_degrees(), vec![0]);
}

#[test]
fn methods_agree_on_small_modules() {
    let r = ring(&["x", "y"]);
    let t = seq(&r, "x, y");
    for m in [cyc(&r, "x"), cyc(&r, "x^2, x*y"), cyc(&r, "x, y")] {
        for i in 0..=2 {
            let a = local_cohomology_graded(&m, &t, i, (-4, 2), 6, Method::KoszulColim).unwrap();
            let b = local_cohomology_graded(&m, &t, i, (-4, 2), 6, Method::ExtColim).unwrap();
            for d in -4..=2 {
                if let (Some(x), Some(y)) = (a.value(d), b.value(d)) {
                    assert_eq!(x, y, "{m} i = {i} d = {d}");
                }
            }
        }
    }
}

#[test]
fn local_cohomology_rejects_ungraded_input() {
    let r = ring(&["x", "y"]);
    let m = FpModule::free(&r, vec![0]);
    let e = local_cohomology_graded(&m, &seq(&r, "x + 1"), 1, (0, 0), 2, Method::KoszulColim);
    assert!(matches!(e, Err(Error::NotGraded(_))));
    let table = local_cohomology_graded(&m, &seq(&r, "x"), 1, (0, 1), 2, Method::ExtColim).unwrap();
    let json = serde_json::to_string(&table).unwrap();
    assert!(json.contains("\"ext-colim\""));
}

#[test]
fn proregular_plane() {
    let r = ring(&["x", "y"]);
    let cert = proregularity_check(&seq(&r, "x, y"), 3, 6).unwrap();
    assert_eq!(cert.verdict, Verdict::Certified);
    assert!(cert.witnesses.iter().all(|w| w.s == Some(w.r + 1)));
    assert!(cert.verify().unwrap());
    let json = serde_json::to_string(&cert).unwrap();
    let back: ProregularityCertificate = serde_json::from_str(&json).unwrap();
    assert!(back.verify().unwrap());
}

#[test]
fn proregular_non_regular_sequence() {
    let r = ring(&["x", "y"]);
    let t = seq(&r, "x^2, x*y");
    let cert = proregularity_check(&t, 2, 6).unwrap();
    assert_eq!(cert.verdict, Verdict::Certified);
    assert!(cert.verify().unwrap());
    for w in cert.witnesses.iter().filter(|w| w.i == 2) {
        let s = w.s.unwrap();
        let big = ideal_quotient(
            &Ideal::parse(&r, &format!("x^{}", 2 * s)).unwrap(),
            &r.poly(&format!("x^{s}*y^{s}")).unwrap(),
            Power::Finite(1),
        )
        .unwrap()
        .ideal;
        let small = ideal_quotient(
            &Ideal::parse(&r, &format!("x^{}", 2 * w.r)).unwrap(),
            &r.poly(&format!("x^{0}*y^{0}", s - w.r)).unwrap(),
            Power::Finite(1),
        )
        .unwrap()
        .ideal;
        assert!(small.contains_ideal(&big).unwrap());
    }
}

#[test]
fn proregularity_bound_exhaustion() {
    let r = ring(&["x"]);
    let cert = proregularity_check(&seq(&r, "x"), 1, 1).unwrap();
    assert_eq!(cert.verdict, Verdict::Undecided);
    assert_eq!(cert.witnesses[0].s, None);
    assert!(cert.verify().unwrap());
    let cert = proregularity_check(&seq(&r, "x"), 2, 2).unwrap();
    assert_eq!(cert.verdict, Verdict::Undecided);
    assert!(matches!(
        proregularity_check(&[r.poly("x").unwrap(), Polynomial::zero(&r)], 1, 2),
        Err(Error::ZeroElement)
    ));
}

#[test]
fn tampered_proregularity_certificates_fail() {
    let r = ring(&["x", "y"]);
    let cert = proregularity_check(&seq(&r, "x, y"), 2, 5).unwrap();
    let mut late = cert.clone();
    late.witnesses[1].s = Some(4);
    assert!(!late.verify().unwrap());
    let mut claimed = cert.clone();
    claimed.witnesses[0].s = None;
    assert!(!claimed.verify().unwrap());
    let mut short = cert;
    short.witnesses.pop();
    assert!(!short.verify().unwrap());
}

#[test]
fn proregularity_over_a_quotient_ring() {
    let s = ring(&["x", "y"]);
    let q = s.quotient_by(&[s.poly("x*y").unwrap()]).unwrap();
    let cert = proregularity_check(&seq(&q, "x, y"), 3, 7).unwrap();
    assert_eq!(cert.verdict, Verdict::Certified);
    assert!(cert.verify().unwrap());
}

#[test]
fn essential_nullity_on_crossing_lines() {
    let s = ring(&["x", "y"]);
    let q = s.quotient_by(&[s.poly("x*y").unwrap()]).unwrap();
    let p = FpModule::free(&q, vec![0]);
    let cert = essential_nullity_check(&seq(&q, "x"), &p, 1, 3, 7).unwrap();
    assert_eq!(cert.verdict, Verdict::Certified);
    for w in &cert.witnesses {
        assert_eq!(w.s, Some(w.r + 1));
    }
    // (0 : xʳ) = (y) and x·y = 0
    for r in 1..=3 {
        let ann = ideal_quotient(&Ideal::zero(&q), &q.poly(&format!("x^{r}")).unwrap(), Power::Finite(1)).unwrap();
        assert_eq!(ann.ideal, Ideal::parse(&q, "y").unwrap());
    }
    assert!(crate::groebner::reduce_mod_ring(&q.poly("x*y").unwrap()).unwrap().is_zero());
    assert!(cert.verify().unwrap());
    let json = serde_json::to_string(&cert).unwrap();
    let back: EssentialNullityCertificate = serde_json::from_str(&json).unwrap();
    assert!(back.verify().unwrap());
    let mut late = back;
    late.witnesses[0].s = Some(3);
    assert!(!late.verify().unwrap());
}

#[test]
fn essential_nullity_trivial_cases() {
    let r = ring(&["x"]);
    let p = FpModule::free(&r, vec![0]);
    let cert = essential_nullity_check(&seq(&r, "x"), &p, 1, 3, 5).unwrap();
    assert!(cert.witnesses.iter().all(|w| w.s == Some(w.r + 1)));
    let cert = essential_nullity_check(&seq(&r, "x"), &p, 3, 2, 4).unwrap();
    assert!(cert.witnesses.iter().all(|w| w.s == Some(w.r + 1)));
    assert!(cert.verify().unwrap());
    assert!(matches!(essential_nullity_check(&seq(&r, "x"), &p, 0, 2, 4), Err(Error::BadBounds(_))));
    let cert = essential_nullity_check(&seq(&r, "x"), &p, 1, 2, 2).unwrap();
    assert_eq!(cert.verdict, Verdict::Undecided);
}

fn monomial_strategy() -> impl Strategy<Value = String> {
    (0u32..3, 0u32..3, 0u32..3)
        .prop_filter("nonconstant", |(a, b, c)| a + b + c > 0)
        .prop_map(|(a, b, c)| format!("x^{a}*y^{b}*z^{c}"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn proregularity_is_permutation_invariant(
        gens in prop::collection::vec(monomial_strategy(), 2..=3),
    ) {
        let r = ring(&["x", "y", "z"]);
        let t: Vec<Polynomial> = gens.iter().map(|g| r.poly(g).unwrap()).collect();
        let a = proregularity_check(&t, 2, 6).unwrap();
        let mut u = t.clone();
        u.reverse();
        let b = proregularity_check(&u, 2, 6).unwrap();
        prop_assert_eq!(a.verdict, Verdict::Certified);
        prop_assert_eq!(b.verdict, Verdict::Certified);
        prop_assert!(a.verify().unwrap());
        let p = FpModule::free(&r, vec![0]);
        let e = essential_nullity_check(&t, &p, 1, 2, 6).unwrap();
        prop_assert_eq!(e.verdict, Verdict::Certified);
    }
}
