use std::sync::Arc;

use crate::complexes::{long_exact_sequence, tensor_complexes, ComplexMap, ExactnessSpot, FreeComplex};
use crate::complexes::hom_complex;
use crate::error::{Error, Result};
use crate::groebner::{reduce_mod_ring, Matrix};
use crate::modcat::FpModule;
use crate::polyring::{Polynomial, Ring};

pub(crate) fn check_sequence(t: &[Polynomial]) -> Result<Arc<Ring>> {
    let Some(first) = t.first() else {
        return Err(Error::BadBounds("empty sequence".into()));
    };
    let ring = first.ring().clone();
    for x in t {
        if !x.ring().same(&ring) {
            return Err(Error::MixedRings);
        }
        if reduce_mod_ring(x)?.is_zero() {
            return Err(Error::ZeroElement);
        }
    }
    Ok(ring)
}

fn power(t: &Polynomial, e: u32) -> Result<Polynomial> {
    reduce_mod_ring(&t.pow(e)?)
}

/// Generator degree of `t`, or 0 when `t` is not homogeneous.
fn weight(t: &Polynomial) -> i64 {
    if t.is_homogeneous() {
        t.degree().unwrap_or(0)
    } else {
        0
    }
}

/// `K(tʳ) = [R → R(r·deg t)]` in degrees 0, 1.
pub(crate) fn factor(t: &Polynomial, r: u32) -> Result<FreeComplex> {
    let ring = t.ring();
    let w = weight(t) * r as i64;
    let d = Matrix::new(ring, vec![-w], vec![0], vec![vec![power(t, r)?]])?;
    FreeComplex::new(
        ring,
        0,
        vec![FpModule::free(ring, vec![0]), FpModule::free(ring, vec![-w])],
        vec![d],
    )
}

fn factor_transition(t: &Polynomial, r: u32, s: u32, src: Arc<FreeComplex>, tgt: Arc<FreeComplex>) -> Result<ComplexMap> {
    let ring = t.ring();
    let one = Matrix::identity(ring, vec![0]);
    let m = Matrix::new(ring, tgt.twists(1), src.twists(1), vec![vec![power(t, s - r)?]])?;
    ComplexMap::new(src, tgt, vec![one, m])
}

/// `K(tʳ) ⊗ M = K(t₁ʳ) ⊗ … ⊗ K(t_μʳ) ⊗ M`.
pub fn koszul_complex(t: &[Polynomial], r: u32, m: Option<&FpModule>) -> Result<FreeComplex> {
    let ring = check_sequence(t)?;
    if r == 0 {
        return Err(Error::BadBounds("exponent must be positive".into()));
    }
    let mut k = factor(&t[0], r)?;
    for x in &t[1..] {
        k = tensor_complexes(&k, &factor(x, r)?)?;
    }
    match m {
        None => Ok(k),
        Some(m) => {
            if !m.ring().same(&ring) {
                return Err(Error::MixedRings);
            }
            tensor_complexes(&k, &FreeComplex::from_module(m, 0))
        }
    }
}

/// The transition `K(tʳ) ⊗ M → K(tˢ) ⊗ M`: identity in degree 0 and `t_i^{s-r}` in
/// degree 1 of each factor.
pub fn koszul_transition(t: &[Polynomial], r: u32, s: u32, m: Option<&FpModule>) -> Result<ComplexMap> {
    let src = Arc::new(koszul_complex(t, r, m)?);
    let tgt = Arc::new(koszul_complex(t, s, m)?);
    transition_between(t, r, s, m, &src, &tgt)
}

pub(crate) fn transition_between(
    t: &[Polynomial],
    r: u32,
    s: u32,
    m: Option<&FpModule>,
    src: &Arc<FreeComplex>,
    tgt: &Arc<FreeComplex>,
) -> Result<ComplexMap> {
    check_sequence(t)?;
    if r == 0 || r > s {
        return Err(Error::BadBounds(format!("need 1 ≤ r ≤ s, got r = {r}, s = {s}")));
    }
    let mut a = Arc::new(factor(&t[0], r)?);
    let mut b = Arc::new(factor(&t[0], s)?);
    let mut f = factor_transition(&t[0], r, s, a.clone(), b.clone())?;
    for x in &t[1..] {
        let fa = Arc::new(factor(x, r)?);
        let fb = Arc::new(factor(x, s)?);
        let g = factor_transition(x, r, s, fa.clone(), fb.clone())?;
        let na = Arc::new(tensor_complexes(&a, &fa)?);
        let nb = Arc::new(tensor_complexes(&b, &fb)?);
        f = ComplexMap::tensor(&f, &g, &na, &nb)?;
        a = na;
        b = nb;
    }
    if let Some(m) = m {
        let mc = Arc::new(FreeComplex::from_module(m, 0));
        let id = ComplexMap::identity(&mc);
        let na = Arc::new(tensor_complexes(&a, &mc)?);
        let nb = Arc::new(tensor_complexes(&b, &mc)?);
        f = ComplexMap::tensor(&f, &id, &na, &nb)?;
    }
    ComplexMap::build(src.clone(), tgt.clone(), f.components().to_vec())
}

/// Subsets of the sequence indexing the basis of each degree of `K(tʳ)`.
pub fn koszul_subsets(k: &FreeComplex, mu: usize) -> Vec<Vec<Vec<usize>>> {
    k.degrees()
        .map(|n| {
            k.keys(n)
                .iter()
                .map(|key| (0..mu).filter(|&i| key[i] == 0).collect())
                .collect()
        })
        .collect()
}

/// The isomorphism `K(tʳ) → K(σ(t)ʳ)` with `σ(t)_i = t_{σ(i)}`, a signed
/// permutation of the exterior bases.
pub fn permutation_isomorphism(t: &[Polynomial], sigma: &[usize], r: u32) -> Result<ComplexMap> {
    let mu = t.len();
    let mut seen = vec![false; mu];
    for &i in sigma {
        if i >= mu || seen[i] {
            return Err(Error::BadBounds("not a permutation".into()));
        }
        seen[i] = true;
    }
    if sigma.len() != mu {
        return Err(Error::BadBounds("not a permutation".into()));
    }
    let permuted: Vec<Polynomial> = sigma.iter().map(|&i| t[i].clone()).collect();
    let src = Arc::new(koszul_complex(t, r, None)?);
    let tgt = Arc::new(koszul_complex(&permuted, r, None)?);
    // position of t_j inside σ(t)
    let mut inv = vec![0; mu];
    for (pos, &j) in sigma.iter().enumerate() {
        inv[j] = pos;
    }
    let ss = koszul_subsets(&src, mu);
    let ts = koszul_subsets(&tgt, mu);
    let perm: Vec<Vec<usize>> = ss
        .iter()
        .zip(&ts)
        .map(|(sdeg, tdeg)| {
            sdeg.iter()
                .map(|set| {
                    let mut image: Vec<usize> = set.iter().map(|&j| inv[j]).collect();
                    image.sort_unstable();
                    tdeg.iter().position(|x| *x == image).expect("same subsets")
                })
                .collect()
        })
        .collect();
    ComplexMap::signed_permutation(&src, &tgt, &perm)
}

/// The split sequence `0 → R[-1] → K(t_μʳ) → R → 0` tensored with
/// `K((t₁ʳ,…,t_{μ-1}ʳ))`, dualized into `P`, and checked for exactness of the
/// homology sequence at every spot.
pub fn split_sequence_check(t: &[Polynomial], p: &FpModule, r: u32) -> Result<Vec<ExactnessSpot>> {
    let ring = check_sequence(t)?;
    if r == 0 {
        return Err(Error::BadBounds("exponent must be positive".into()));
    }
    let (last, head) = t.split_last().expect("nonempty");
    let k = Arc::new(factor(last, r)?);
    let w = k.twists(1);
    let sub = Arc::new(FreeComplex::new(&ring, 1, vec![FpModule::free(&ring, w.clone())], Vec::new())?);
    let quo = Arc::new(FreeComplex::new(&ring, 0, vec![FpModule::free(&ring, vec![0])], Vec::new())?);
    let inc = ComplexMap::new(sub.clone(), k.clone(), vec![Matrix::identity(&ring, w)])?;
    let proj = ComplexMap::new(k.clone(), quo.clone(), vec![
        Matrix::identity(&ring, vec![0]),
        Matrix::zero(&ring, Vec::new(), k.twists(1)),
    ])?;
    let front = Arc::new(if head.is_empty() {
        FreeComplex::unit(&ring)
    } else {
        koszul_complex(head, r, None)?
    });
    let id = ComplexMap::identity(&front);
    let ts = Arc::new(tensor_complexes(&front, &sub)?);
    let tk = Arc::new(tensor_complexes(&front, &k)?);
    let tq = Arc::new(tensor_complexes(&front, &quo)?);
    let inc = ComplexMap::tensor(&id, &inc, &ts, &tk)?;
    let proj = ComplexMap::tensor(&id, &proj, &tk, &tq)?;
    let pc = FreeComplex::from_module(p, 0);
    let hq = Arc::new(hom_complex(&tq, &pc)?);
    let hk = Arc::new(hom_complex(&tk, &pc)?);
    let hs = Arc::new(hom_complex(&ts, &pc)?);
    let a = proj.hom_into(&pc, &hq, &hk)?;
    let b = inc.hom_into(&pc, &hk, &hs)?;
    long_exact_sequence(&a, &b)
}
