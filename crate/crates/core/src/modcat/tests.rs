use std::sync::Arc;

use super::*;
use crate::field::Field;
use crate::groebner::{Ideal, Matrix};
use crate::polyring::{MonomialOrder, Polynomial, Ring};

fn qxy() -> Arc<Ring> {
    Ring::new(Field::rationals(), &["x", "y"], MonomialOrder::GRevLex).unwrap()
}

fn cyc(r: &Arc<Ring>, gens: &str) -> FpModule {
    FpModule::cyclic(&Ideal::parse(r, gens).unwrap()).unwrap()
}

fn hf(m: &FpModule, lo: i64, hi: i64) -> Vec<usize> {
    hilbert_function(m, lo, hi).unwrap().into_values().collect()
}

fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
    r.poly(s).unwrap()
}

#[test]
fn koszul_resolution_of_residue_field() {
    let r = qxy();
    let res = free_resolution(&cyc(&r, "x, y"), 5).unwrap();
    assert_eq!(res.ranks(), vec![1, 2, 1]);
    assert_eq!(res.twists(1), vec![1, 1]);
    assert_eq!(res.twists(2), vec![2]);
    for w in res.maps().windows(2) {
        assert!(w[0].mul(&w[1]).unwrap().is_zero());
    }
}

#[test]
fn resolution_of_x2_xy() {
    let r = qxy();
    let res = free_resolution(&cyc(&r, "x^2, x*y"), 5).unwrap();
    assert_eq!(res.ranks(), vec![1, 2, 1]);
    assert_eq!(res.twists(2), vec![3]);
    let d2 = &res.maps()[1];
    let col = d2.column(0);
    let a = [p(&r, "y"), p(&r, "-x")];
    let b = [p(&r, "-y"), p(&r, "x")];
    assert!(col == a || col == b);
}

#[test]
fn free_module_has_empty_resolution() {
    let r = qxy();
    let res = free_resolution(&FpModule::free(&r, vec![0]), 3).unwrap();
    assert!(res.is_empty());
}

#[test]
fn hilbert_functions() {
    let r = qxy();
    assert_eq!(hf(&FpModule::free(&r, vec![0]), 0, 4), vec![1, 2, 3, 4, 5]);
    assert_eq!(hf(&cyc(&r, "x"), 0, 4), vec![1, 1, 1, 1, 1]);
    assert_eq!(hf(&cyc(&r, "x^2, x*y"), 0, 4), vec![1, 2, 1, 1, 1]);
    assert_eq!(hf(&FpModule::free(&r, vec![2]), 0, 3), vec![0, 0, 1, 2]);
}

#[test]
fn hilbert_function_needs_grading() {
    let r = qxy();
    assert!(matches!(cyc(&r, "x - 1").hilbert_function(0, 2), Err(crate::Error::NotGraded(_))));
}

#[test]
fn ext_zero_of_free_is_identity() {
    let r = qxy();
    let m = cyc(&r, "x^2, x*y");
    let e = ext_module(&FpModule::free(&r, vec![0]), &m, 0).unwrap();
    let f = ModuleMap::new(m.clone(), e.clone(), Matrix::identity(&r, vec![0])).unwrap();
    assert!(verify_isomorphism(&f).unwrap().is_iso());
}

#[test]
fn ext_one_of_residue_field_over_line() {
    let r = Ring::new(Field::rationals(), &["x"], MonomialOrder::GRevLex).unwrap();
    let k = FpModule::cyclic(&Ideal::parse(&r, "x").unwrap()).unwrap();
    let e = ext_module(&k, &k, 1).unwrap();
    let total: usize = hf(&e, -5, 5).iter().sum();
    assert_eq!(total, 1);
}

#[test]
fn ext_two_of_residue_field_into_ring() {
    let r = qxy();
    let k = cyc(&r, "x, y");
    let e = ext_module(&k, &FpModule::free(&r, vec![0]), 2).unwrap();
    let h = hilbert_function(&e, -5, 5).unwrap();
    let support: Vec<(i64, usize)> = h.into_iter().filter(|(_, v)| *v > 0).collect();
    assert_eq!(support, vec![(-2, 1)]);
    // shifting the target by the canonical twist moves it to degree 0
    let e = ext_module(&k, &FpModule::free(&r, vec![2]), 2).unwrap();
    assert_eq!(e.hilbert_value(0).unwrap(), 1);
}

#[test]
fn ext_vanishes_above_global_dimension() {
    let r = qxy();
    let m = cyc(&r, "x^2, x*y");
    for n in [FpModule::free(&r, vec![0]), cyc(&r, "y")] {
        assert!(ext_module(&m, &n, 3).unwrap().is_zero().unwrap());
    }
}

#[test]
fn isomorphism_verdicts() {
    let r = qxy();
    let m = cyc(&r, "x^2, x*y");
    assert!(verify_isomorphism(&ModuleMap::identity(&m)).unwrap().is_iso());

    let free = FpModule::free(&r, vec![0]);
    let shifted = FpModule::free(&r, vec![-1]);
    let f = ModuleMap::new(shifted, free, Matrix::from_rows(&r, vec![vec![p(&r, "x")]]).unwrap()).unwrap();
    match verify_isomorphism(&f).unwrap() {
        IsoVerdict::NotIso { kernel, cokernel } => {
            assert!(kernel.is_zero().unwrap());
            assert_eq!(hf(&cokernel, 0, 3), vec![1, 1, 1, 1]);
        }
        IsoVerdict::Iso => panic!("multiplication by x is not onto"),
    }

    let rx = cyc(&r, "x");
    let f = ModuleMap::new(rx.twist(-1), rx.clone(), Matrix::from_rows(&r, vec![vec![p(&r, "y")]]).unwrap()).unwrap();
    match verify_isomorphism(&f).unwrap() {
        IsoVerdict::NotIso { kernel, cokernel } => {
            assert!(kernel.is_zero().unwrap());
            assert_eq!(hf(&cokernel, 0, 2), vec![1, 0, 0]);
        }
        IsoVerdict::Iso => panic!("cokernel is the residue field"),
    }
}

#[test]
fn maps_must_respect_relations() {
    let r = qxy();
    let rx = cyc(&r, "x");
    let free = FpModule::free(&r, vec![0]);
    // R/(x) → R, 1 ↦ 1 is not well defined
    assert!(ModuleMap::new(rx, free, Matrix::identity(&r, vec![0])).is_err());
}

#[test]
fn prune_removes_unit_relations() {
    let r = qxy();
    let rel = Matrix::new(&r, vec![0, 1], vec![1, 2], vec![vec![p(&r, "x"), p(&r, "-1")], vec![p(&r, "0"), p(&r, "y")]]).unwrap();
    let m = FpModule::new(rel).unwrap();
    let pr = m.prune().unwrap();
    assert_eq!(pr.module.rank(), 1);
    assert_eq!(hf(&pr.module, 0, 3), hf(&m, 0, 3));
    // e1 = x·e0 leaves R/(xy)
    assert_eq!(hf(&pr.module, 0, 3), vec![1, 2, 2, 2]);
}

#[test]
fn modules_over_quotient_rings() {
    let base = qxy();
    let r = base.quotient_by(&[p(&base, "x*y")]).unwrap();
    let free = FpModule::free(&r, vec![0]);
    assert_eq!(hf(&free, 0, 3), vec![1, 2, 2, 2]);
    let res = free_resolution(&cyc(&r, "x"), 3).unwrap();
    // periodic: (x) ← (y) ← (x) ← …
    assert_eq!(res.ranks(), vec![1, 1, 1, 1]);
}

mod props {
    use super::*;
    use crate::polyring::Monomial;
    use proptest::prelude::*;

    fn monomial_ideal() -> impl Strategy<Value = Vec<(u32, u32)>> {
        prop::collection::vec((0u32..4, 0u32..4), 1..4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        /// Hilbert function equals the alternating sum read off a resolution.
        #[test]
        fn euler_characteristic_of_resolution(gens in monomial_ideal(), extra in (0u32..3, 0u32..3)) {
            let r = Ring::new(Field::prime(32003).unwrap(), &["x", "y"], MonomialOrder::GRevLex).unwrap();
            let mono = |a: u32, b: u32| Polynomial::monomial(&r, Monomial::from_exponents(&[a, b]).unwrap(), r.field().one());
            let mut g: Vec<Polynomial> = gens.iter().map(|&(a, b)| mono(a, b)).collect();
            // one binomial so the ideal is not monomial
            let (a, b) = extra;
            g.push(mono(a + 1, b).sub(&mono(a, b + 1)));
            let m = FpModule::cyclic(&Ideal::new(&r, g).unwrap()).unwrap();
            let res = free_resolution(&m, 4).unwrap();
            for d in 0..7i64 {
                let mut alt = 0i64;
                for k in 0..=res.len() {
                    for t in res.twists(k) {
                        let dim = if d >= t { d - t + 1 } else { 0 };
                        alt += if k % 2 == 0 { dim } else { -dim };
                    }
                }
                prop_assert_eq!(alt, m.hilbert_value(d).unwrap() as i64);
            }
        }
    }
}
