use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::complexes::{cone, ComplexMap, FreeComplex};
use crate::field::Field;
use crate::groebner::{Ideal, Matrix};
use crate::koszul::{dual_koszul_tower, koszul_complex};
use crate::localcoh::{essential_nullity_check, Verdict};
use crate::modcat::{FpModule, ModuleMap};
use crate::polyring::{MonomialOrder, Polynomial, Ring};

fn ring(vars: &[&str]) -> Arc<Ring> {
    Ring::new(Field::prime(32003).unwrap(), vars, MonomialOrder::GRevLex).unwrap()
}

fn seq(r: &Arc<Ring>, s: &str) -> Vec<Polynomial> {
    s.split(',').map(|x| r.poly(x.trim()).unwrap()).collect()
}

fn unit(r: &Arc<Ring>) -> FreeComplex {
    FreeComplex::from_module(&FpModule::free(r, vec![0]), 0)
}

#[test]
fn adic_towers_of_small_rings() {
    let r = ring(&["x"]);
    let a = adic_tower(&FpModule::free(&r, vec![0]), &Ideal::parse(&r, "x").unwrap(), 4).unwrap();
    assert!(a.all_surjective());
    assert_eq!(a.summary(None).unwrap().dims, vec![Some(1), Some(2), Some(3), Some(4)]);

    let s = ring(&["x", "y"]);
    let m = Ideal::parse(&s, "x, y").unwrap();
    let a = adic_tower(&FpModule::free(&s, vec![0]), &m, 4).unwrap();
    let dims: Vec<usize> = a.summary(None).unwrap().dims.into_iter().map(Option::unwrap).collect();
    assert_eq!(dims, vec![1, 3, 6, 10]);
    let line = FpModule::cyclic(&Ideal::parse(&s, "x").unwrap()).unwrap();
    let a = adic_tower(&line, &m, 4).unwrap();
    let sum = a.summary(Some((0, 4))).unwrap();
    assert_eq!(sum.dims, vec![Some(1), Some(2), Some(3), Some(4)]);
    assert!(sum.hilbert.contains(&[3, 4, 1]));
    assert!(sum.hilbert.contains(&[3, 3, 0]));
    assert!(a.stage(0).is_err());
}

#[test]
fn adic_tower_off_a_point_is_infinite() {
    let s = ring(&["x", "y"]);
    let a = adic_tower(&FpModule::free(&s, vec![0]), &Ideal::parse(&s, "x").unwrap(), 2).unwrap();
    assert_eq!(a.summary(None).unwrap().dims, vec![None, None]);
    assert!(a.all_surjective());
}

#[test]
fn local_homology_of_a_line() {
    let r = ring(&["x"]);
    let p = FpModule::free(&r, vec![0]);
    let rep = local_homology_tower(&seq(&r, "x"), &p, 4).unwrap();
    assert!(rep.h0_holds(), "{rep:?}");
    assert!(rep.pro_zero());
    assert!(rep.ml_holds(), "{:?}", rep.ml);
    assert_eq!(rep.verdict, TowerVerdict::Consistent);
    let tower = dual_koszul_tower(&seq(&r, "x"), &p, 4).unwrap();
    for k in 1..=4 {
        assert!(tower.homology(k, -1).unwrap().is_zero().unwrap());
    }
    // x^m R is never stationary as a module
    assert!(rep.ml.iter().any(|e| e.degree == -1 && !e.module_stationary));
    assert!(rep.ml.iter().filter(|e| e.degree == 0).all(|e| e.module_stationary));
}

#[test]
fn local_homology_of_a_free_plane_module() {
    let r = ring(&["x", "y"]);
    let p = FpModule::free(&r, vec![0, 0]);
    let t = seq(&r, "x, y");
    let rep = local_homology_tower(&t, &p, 4).unwrap();
    assert_eq!(rep.verdict, TowerVerdict::Consistent);
    assert_eq!(local_homology_tower(&t, &p, 3).unwrap().verdict, TowerVerdict::Undecided);
    let tower = dual_koszul_tower(&t, &p, 3).unwrap();
    for k in 1..=3 {
        assert!(tower.homology(k, -1).unwrap().is_zero().unwrap());
        assert!(tower.homology(k, -2).unwrap().is_zero().unwrap());
    }
    let json = serde_json::to_string(&rep).unwrap();
    let back: LocalHomologyReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, rep);
}

#[test]
fn local_homology_of_a_non_regular_sequence() {
    let r = ring(&["x", "y", "z"]);
    let p = FpModule::free(&r, vec![0]);
    let t = seq(&r, "x^2, x*y");
    let rep = local_homology_tower(&t, &p, 4).unwrap();
    assert!(rep.h0_holds());
    assert_eq!(rep.verdict, TowerVerdict::Consistent);
    let cert = &rep.nullity[0];
    assert!(cert.witnesses.iter().all(|w| w.s.unwrap() <= w.r + 2));
    let independent = essential_nullity_check(&t, &p, 1, 4, 8).unwrap();
    assert_eq!(independent.witnesses, cert.witnesses);
    assert_eq!(independent.verdict, Verdict::Certified);
}

#[test]
fn local_homology_requires_free_coefficients() {
    let r = ring(&["x"]);
    let p = FpModule::cyclic(&Ideal::parse(&r, "x^2").unwrap()).unwrap();
    assert!(local_homology_tower(&seq(&r, "x"), &p, 3).is_err());
    let f = FpModule::free(&r, vec![0]);
    assert!(local_homology_tower(&seq(&r, "x"), &f, 1).is_err());
}

fn is_signed_permutation(m: &Matrix) -> bool {
    let one = Polynomial::one(m.ring());
    let unitish = |p: &Polynomial| *p == one || p.neg() == one;
    let rows_ok = (0..m.nrows()).all(|i| (0..m.ncols()).filter(|&j| !m.entry(i, j).is_zero()).count() == 1);
    let cols_ok = m.columns().iter().all(|c| c.iter().filter(|p| !p.is_zero()).count() == 1);
    let entries_ok = m.columns().iter().flatten().all(|p| p.is_zero() || unitish(p));
    m.nrows() == m.ncols() && rows_ok && cols_ok && entries_ok
}

#[test]
fn adjunction_unit_case_is_identity() {
    let r = ring(&["x", "y"]);
    let e = unit(&r);
    let rep = gm_adjunction_check(&e, &e, &seq(&r, "x"), (1, 1)).unwrap();
    assert!(rep.passed());
    let phi = &rep.maps[0];
    for n in phi.source().degrees() {
        let c = phi.component(n);
        assert_eq!(c, Matrix::identity(&r, phi.source().twists(n)));
    }
    assert!(rep.reverify().unwrap());
}

#[test]
fn adjunction_with_a_koszul_argument() {
    let r = ring(&["x", "y"]);
    let e = koszul_complex(&seq(&r, "y"), 1, None).unwrap();
    let f = unit(&r);
    let rep = gm_adjunction_check(&e, &f, &seq(&r, "x"), (1, 2)).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.squares.len(), 1);
    for phi in &rep.maps {
        assert_eq!(phi.source().ranks(), vec![1, 2, 1]);
        assert!(is_signed_permutation(&phi.component(-1)));
        assert_eq!(phi.component(-1).nrows(), 2);
        assert!(is_signed_permutation(&phi.component(-2)));
    }
    // the swap of K(x) ⊗ K(y) carries exactly one sign, on the top cell
    let top = rep.maps[0].component(-2);
    assert_eq!(top.entry(0, 0), &Polynomial::one(&r).neg());
}

#[test]
fn adjunction_for_a_non_square_differential() {
    let r = ring(&["x", "y"]);
    let src = FpModule::free(&r, vec![0]);
    let tgt = FpModule::free(&r, vec![-1, -1]);
    let m = Matrix::new(&r, vec![-1, -1], vec![0], vec![seq(&r, "x, y")]).unwrap();
    let e = FreeComplex::from_map(&ModuleMap::new(src, tgt, m).unwrap(), 0).unwrap();
    assert_eq!(e.ranks(), vec![1, 2]);
    let rep = gm_adjunction_check(&e, &unit(&r), &seq(&r, "x, y"), (1, 2)).unwrap();
    assert!(rep.passed());
}

#[test]
fn stage_factorization_of_dual_towers() {
    let r = ring(&["x", "y", "z"]);
    let p = unit(&r);
    for k in 1..=2 {
        let front = koszul_complex(&seq(&r, "x, y"), k, None).unwrap();
        let back = koszul_complex(&seq(&r, "z"), k, None).unwrap();
        let phi = adjunction_map(&back, &front, &p).unwrap();
        assert!(phi.is_isomorphism().unwrap());
        let whole = koszul_complex(&seq(&r, "z, x, y"), k, None).unwrap();
        assert_eq!(**phi.source(), crate::complexes::hom_complex(&whole, &p).unwrap());
    }
}

fn random_map(r: &Arc<Ring>, coeffs: &[(i64, u32)]) -> ModuleMap {
    let entries: Vec<Vec<Polynomial>> = coeffs
        .iter()
        .map(|&(c, a)| vec![Polynomial::from_i64(r, c).mul(&r.poly(&format!("x^{a}")).unwrap()).unwrap()])
        .collect();
    let src_twists: Vec<i64> = coeffs.iter().map(|&(_, a)| a as i64).collect();
    let src = FpModule::free(r, src_twists.clone());
    let m = Matrix::new(r, vec![0], src_twists, entries).unwrap();
    ModuleMap::new(src, FpModule::free(r, vec![0]), m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn adjunction_on_cones(
        coeffs in prop::collection::vec((1i64..5, 0u32..3), 1..3),
        shift in -1i64..2,
        two in any::<bool>(),
    ) {
        let r = ring(&["x", "y"]);
        let f = random_map(&r, &coeffs);
        let c = Arc::new(FreeComplex::from_map(&f, 0).unwrap());
        let id = ComplexMap::identity(&c);
        let e = cone(&id).unwrap().shift(shift);
        prop_assert!(e.d_squared_is_zero().unwrap());
        let t = if two { seq(&r, "x, y") } else { seq(&r, "x") };
        let rep = gm_adjunction_check(&e, &unit(&r), &t, (1, 2)).unwrap();
        prop_assert!(rep.passed());
    }
}
