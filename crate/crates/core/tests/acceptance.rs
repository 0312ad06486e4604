//! One test per acceptance criterion. Each prints a single
//! `criterion N [...]: PASS|FAIL` line; run with `--nocapture` to see them.

use std::collections::HashMap;
use std::fmt::Display;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use koszulab::complexes::{cone, hom_complex, tensor_complexes, ComplexMap, FreeComplex};
use koszulab::completion::{adjunction_map, gm_adjunction_check, local_homology_tower};
use koszulab::duality::graded_local_duality_check;
use koszulab::groebner::{syzygy_kernel, Ideal, Matrix};
use koszulab::koszul::{koszul_complex, permutation_isomorphism};
use koszulab::localcoh::{essential_nullity_check, local_cohomology_graded, proregularity_check, Method, Verdict};
use koszulab::text::{parse_module, parse_ring, parse_sequence};
use koszulab::{Error, FpModule, ModuleMap, Polynomial, Ring};

fn report(n: u32, name: &str, pass: bool, detail: impl Display) {
    println!("criterion {n} [{name}]: {} ({detail})", if pass { "PASS" } else { "FAIL" });
}

const PROREG_BUDGET: Duration = Duration::from_secs(30);
const LOCHOM_BUDGET: Duration = Duration::from_secs(60);
const DUALITY_BUDGET: Duration = Duration::from_secs(60);
const WINDOW: (i64, i64) = (-6, 2);
const STAGE_MAX: u32 = 8;

fn corpus() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("F32003[x]", vec!["x", "x^2"]),
        ("F32003[x,y]", vec!["x, y", "y, x", "x^2, y^3", "x^2, x*y", "x*y"]),
        ("F32003[x,y,z]", vec!["x, y, z", "x*y, z", "x^2, x*y", "x*z, y*z"]),
        ("F32003[x,y]/(x*y)", vec!["x", "x, y", "x^2, y"]),
        ("F32003[x,y,z]/(x*z, y*z)", vec!["x, y", "z", "x, z^2"]),
    ]
}

#[test]
fn criterion_1_proregularity_corpus() {
    let start = Instant::now();
    let mut cases = 0;
    let mut bad = Vec::new();
    for (ring, seqs) in corpus() {
        let r = parse_ring(ring).unwrap();
        for s in seqs {
            cases += 1;
            let t = parse_sequence(&r, s).unwrap();
            let cert = proregularity_check(&t, 3, 7).unwrap();
            let ok = cert.verdict == Verdict::Certified && cert.verify().unwrap();
            if !ok {
                bad.push(format!("{ring} ({s}): {:?}", cert.verdict));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = cases >= 12 && bad.is_empty() && elapsed < PROREG_BUDGET;
    report(1, "proregularity", pass, format!("{cases} cases, {} not certified, {elapsed:.2?}", bad.len()));
    assert!(pass, "{bad:?}");
}

#[test]
fn criterion_2_nullity_from_proregularity() {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (ring, seqs) in corpus() {
        let r = parse_ring(ring).unwrap();
        let unit = FpModule::free(&r, vec![0]);
        for s in seqs {
            let t = parse_sequence(&r, s).unwrap();
            if proregularity_check(&t, 3, 7).unwrap().verdict != Verdict::Certified {
                continue;
            }
            checked += 1;
            let cert = essential_nullity_check(&t, &unit, 1, 3, 7).unwrap();
            if cert.verdict != Verdict::Certified || !cert.verify().unwrap() {
                bad.push(format!("{ring} ({s})"));
            }
        }
    }
    let r = parse_ring("F32003[x,y]/(x*y)").unwrap();
    let cert = essential_nullity_check(&parse_sequence(&r, "x").unwrap(), &FpModule::free(&r, vec![0]), 1, 3, 7).unwrap();
    let exact = cert.witnesses.iter().map(|w| (w.r, w.s)).collect::<Vec<_>>();
    let lines_ok = exact == vec![(1, Some(2)), (2, Some(3)), (3, Some(4))];
    let pass = bad.is_empty() && lines_ok && checked > 0;
    report(2, "essential nullity", pass, format!("{checked} certified cases, crossing lines witnesses {exact:?}"));
    assert!(pass, "{bad:?}");
}

#[test]
fn criterion_3_local_homology_towers() {
    const R_MAX: u32 = 5;
    let start = Instant::now();
    let mut runs = 0;
    let mut bad = Vec::new();
    for (ring, vars) in [("F32003[x]", "x"), ("F32003[x,y]", "x, y"), ("F32003[x,y,z]", "x, y, z")] {
        let r = parse_ring(ring).unwrap();
        let mut seqs = vec![vars];
        if r.nvars() > 1 {
            seqs.push("x^2, x*y");
        }
        for s in seqs {
            let t = parse_sequence(&r, s).unwrap();
            for rank in 1..=3 {
                runs += 1;
                let p = FpModule::free(&r, vec![0; rank]);
                let rep = local_homology_tower(&t, &p, R_MAX).unwrap();
                let (a, b, c) = (rep.h0_holds(), rep.pro_zero(), rep.ml_holds());
                if !(a && b && c) {
                    bad.push(format!("{ring} ({s}) R^{rank}: h0 {a}, pro-zero {b}, ML {c}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && elapsed < LOCHOM_BUDGET;
    report(3, "local homology tower", pass, format!("{runs} towers to r = {R_MAX}, {} failing, {elapsed:.2?}", bad.len()));
    assert!(pass, "{bad:?}");
}

fn random_mono(rng: &mut StdRng, deg: u32) -> String {
    let a = rng.random_range(0..=deg);
    format!("x^{a}*y^{}", deg - a)
}

/// `f : ⊕ R(-aᵢ) → R(-b)`, entries `cᵢ · monomial` of degree `aᵢ - b`.
fn random_map(rng: &mut StdRng, r: &Arc<Ring>) -> ModuleMap {
    let k = rng.random_range(1..=2);
    let b: i64 = rng.random_range(-1..=1);
    let mut twists = Vec::new();
    let mut row = Vec::new();
    for _ in 0..k {
        let e = rng.random_range(0..=2u32);
        let c = rng.random_range(1..=7);
        twists.push(b + e as i64);
        row.push(r.poly(&format!("{c}*{}", random_mono(rng, e))).unwrap());
    }
    let m = Matrix::new(r, vec![b], twists.clone(), row.into_iter().map(|p| vec![p]).collect()).unwrap();
    ModuleMap::new(FpModule::free(r, twists), FpModule::free(r, vec![b]), m).unwrap()
}

fn random_complex(rng: &mut StdRng, r: &Arc<Ring>) -> FreeComplex {
    let c = Arc::new(FreeComplex::from_map(&random_map(rng, r), 0).unwrap());
    let built = match rng.random_range(0..3) {
        0 => (*c).clone(),
        1 => cone(&ComplexMap::identity(&c)).unwrap(),
        _ => {
            let d = Arc::new(FreeComplex::from_map(&random_map(rng, r), 0).unwrap());
            cone(&ComplexMap::zero(&c, &d)).unwrap()
        }
    };
    built.shift(rng.random_range(-1..=1))
}

#[test]
fn criterion_4_adjunction_on_random_pairs() {
    let r = parse_ring("F32003[x,y]").unwrap();
    let mut rng = StdRng::seed_from_u64(0x6d61);
    let seqs = [parse_sequence(&r, "x").unwrap(), parse_sequence(&r, "x, y").unwrap()];
    let mut failures = Vec::new();
    for k in 0..25 {
        let e = random_complex(&mut rng, &r);
        let f = if rng.random_bool(0.5) {
            FreeComplex::from_module(&FpModule::free(&r, vec![rng.random_range(-1..=1)]), 0)
        } else {
            random_complex(&mut rng, &r)
        };
        let t = &seqs[k % 2];
        assert!(e.d_squared_is_zero().unwrap() && f.d_squared_is_zero().unwrap());
        let rep = gm_adjunction_check(&e, &f, t, (1, 3)).unwrap();
        if !rep.passed() || !rep.reverify().unwrap() {
            failures.push(format!("pair {k}: E = {e} F = {f}"));
        }
    }
    let pass = failures.is_empty();
    report(4, "adjunction", pass, format!("25 pairs, r in 1..=3, {} failures", failures.len()));
    assert!(pass, "{failures:?}");
}

fn lc_modules(r: &Arc<Ring>) -> Vec<(&'static str, FpModule)> {
    ["R", "R/(x)", "R/(x^2, x*y)", "R/(x, y)"]
        .into_iter()
        .map(|s| (s, parse_module(r, s).unwrap()))
        .collect()
}

/// `H²_m(k[x,y])_{-d}` has basis `x^{-a} y^{-b}` with `a, b ≥ 1`, `a + b = d`.
fn top_count(d: i64) -> usize {
    (1..d).filter(|&a| d - a >= 1).count()
}

#[test]
fn criterion_5_two_methods_agree() {
    let r = parse_ring("F32003[x,y]").unwrap();
    let vars = r.vars_as_polys();
    let mut unstable = Vec::new();
    let mut mismatch = Vec::new();
    let mut agreed = 0;
    for (name, m) in lc_modules(&r) {
        for i in 0..=2 {
            let kz = local_cohomology_graded(&m, &vars, i, WINDOW, STAGE_MAX, Method::KoszulColim).unwrap();
            let ex = local_cohomology_graded(&m, &vars, i, WINDOW, STAGE_MAX, Method::ExtColim).unwrap();
            for d in WINDOW.0..=WINDOW.1 {
                match (kz.value(d), ex.value(d)) {
                    (Some(a), Some(b)) if a == b => agreed += 1,
                    (Some(a), Some(b)) => mismatch.push(format!("{name} i={i} d={d}: {a} vs {b}")),
                    _ => unstable.push((name, m.clone(), i, d, kz.row(d).unwrap().dims.clone(), ex.row(d).unwrap().dims.clone())),
                }
            }
        }
    }
    let plane = FpModule::free(&r, vec![0]);
    let top = local_cohomology_graded(&plane, &vars, 2, WINDOW, STAGE_MAX, Method::KoszulColim).unwrap();
    let oracle_ok = (2..=6).all(|d| top.value(-d) == Some(top_count(d)) && top_count(d) == d as usize - 1);
    for (name, m, i, d, kd, ed) in &unstable {
        let deeper = |method| local_cohomology_graded(m, &vars, *i, (*d, *d), 10, method).unwrap().value(*d);
        println!(
            "  {name} i={i} d={d} unstable at stage {STAGE_MAX}: koszul {kd:?}, ext {ed:?}; at stage 10: {:?} vs {:?}",
            deeper(Method::KoszulColim),
            deeper(Method::ExtColim)
        );
    }
    let pass = unstable.is_empty() && mismatch.is_empty() && oracle_ok;
    report(
        5,
        "two-method local cohomology",
        pass,
        format!("{agreed} entries agree, {} unstable, {} mismatched, top oracle {oracle_ok}", unstable.len(), mismatch.len()),
    );
    assert!(mismatch.is_empty(), "{mismatch:?}");
    assert!(oracle_ok);
    assert!(pass, "entries not stabilized by stage {STAGE_MAX}");
}

#[test]
fn criterion_6_graded_local_duality() {
    let r = parse_ring("F32003[x,y]").unwrap();
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut entries = 0;
    for (name, m) in lc_modules(&r) {
        match graded_local_duality_check(&m, WINDOW, STAGE_MAX) {
            Ok(tab) => {
                entries += tab.entries.len();
                let euler_ok = tab.euler.iter().all(|[_, a, b]| a == b);
                if !tab.passed() || !euler_ok {
                    problems.push(format!("{name}: {:?}", tab.mismatches()));
                }
            }
            Err(Error::UnstableWindow { stage_max, degrees }) => {
                let later = graded_local_duality_check(&m, WINDOW, 10).map(|t| t.passed());
                println!("  {name}: degrees {degrees:?} unstable at stage {stage_max}; stage 10 passes: {later:?}");
                problems.push(format!("{name}: unstable {degrees:?}"));
            }
            Err(e) => panic!("{name}: {e}"),
        }
    }
    let elapsed = start.elapsed();
    let pass = problems.is_empty() && elapsed < DUALITY_BUDGET;
    report(6, "graded local duality", pass, format!("{entries} entries compared, {} problems, {elapsed:.2?}", problems.len()));
    assert!(pass, "{problems:?}");
}

#[test]
fn criterion_7_koszul_identities() {
    let r = parse_ring("F32003[x,y,z]").unwrap();
    let seq = |s: &str| parse_sequence(&r, s).unwrap();
    let unit = FreeComplex::unit(&r);
    let mut complexes = 0;
    let mut bad = Vec::new();
    let mut d2 = |c: &FreeComplex, what: &str, bad: &mut Vec<String>| {
        complexes += 1;
        if !c.d_squared_is_zero().unwrap() {
            bad.push(format!("d² ≠ 0 on {what}"));
        }
    };
    for (front, back) in [("x", "y"), ("x, y", "z")] {
        for k in 1..=3 {
            let a = koszul_complex(&seq(front), k, None).unwrap();
            let b = koszul_complex(&seq(back), k, None).unwrap();
            let whole = koszul_complex(&seq(&format!("{front}, {back}")), k, None).unwrap();
            let product = tensor_complexes(&a, &b).unwrap();
            if whole != product || whole.to_string() != product.to_string() {
                bad.push(format!("K(({front}),({back}))^{k} is not the tensor product"));
            }
            let phi = adjunction_map(&b, &a, &unit).unwrap();
            let reversed = koszul_complex(&seq(&format!("{back}, {front}")), k, None).unwrap();
            let dual = hom_complex(&reversed, &unit).unwrap();
            if **phi.source() != dual || phi.source().to_string() != dual.to_string() || !phi.is_isomorphism().unwrap() {
                bad.push(format!("Hom factorization fails for ({front}),({back}) at r = {k}"));
            }
            for (c, what) in [(&a, "front"), (&b, "back"), (&whole, "whole"), (&product, "tensor"), (&dual, "dual")] {
                d2(c, what, &mut bad);
            }
            d2(phi.target(), "iterated Hom", &mut bad);
        }
    }
    let t = seq("x, y, z");
    let mut perms = 0;
    for sigma in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        perms += 1;
        let f = permutation_isomorphism(&t, &sigma, 2).unwrap();
        if !f.is_isomorphism().unwrap() {
            bad.push(format!("permutation {sigma:?} is not an isomorphism"));
        }
        for n in f.source().degrees() {
            let c = f.component(n);
            let ok = c.columns().iter().all(|col| {
                let nz: Vec<&Polynomial> = col.iter().filter(|p| !p.is_zero()).collect();
                nz.len() == 1 && (nz[0].is_constant() && (nz[0].add(&Polynomial::one(&r)).is_zero() || nz[0].sub(&Polynomial::one(&r)).is_zero()))
            });
            if !ok {
                bad.push(format!("permutation {sigma:?} is not a signed permutation in degree {n}"));
            }
        }
        d2(f.source(), "source", &mut bad);
        d2(f.target(), "permuted", &mut bad);
    }
    let pass = bad.is_empty();
    report(7, "koszul identities", pass, format!("{perms} permutations, {complexes} complexes with d² = 0"));
    assert!(pass, "{bad:?}");
}

/// Dense degreewise linear algebra over 𝔽₃₂₀₀₃, independent of the engine.
mod oracle {
    use std::collections::HashMap;

    use koszulab::Polynomial;

    pub const P: u64 = 32003;
    pub type Exp = Vec<u32>;
    pub type Dense = HashMap<Exp, u64>;

    pub fn monomials(n: usize, d: i64) -> Vec<Exp> {
        if d < 0 {
            return Vec::new();
        }
        if n == 1 {
            return vec![vec![d as u32]];
        }
        let mut out = Vec::new();
        for a in (0..=d).rev() {
            for mut rest in monomials(n - 1, d - a) {
                rest.insert(0, a as u32);
                out.push(rest);
            }
        }
        out
    }

    pub fn dense(p: &Polynomial) -> Dense {
        let n = p.ring().nvars();
        let field = p.ring().field();
        p.terms()
            .iter()
            .map(|(m, c)| {
                let e = m.exponents(n).iter().map(|&x| x as u32).collect();
                let v: i64 = field.to_signed_string(c).parse().unwrap();
                (e, v.rem_euclid(P as i64) as u64)
            })
            .collect()
    }

    pub fn times(m: &Exp, f: &Dense) -> Dense {
        f.iter()
            .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), *c))
            .collect()
    }

    /// Coordinates of `parts[j]` in `bases[j]`, concatenated.
    pub fn coords(parts: &[Dense], bases: &[Vec<Exp>]) -> Vec<u64> {
        let mut v = Vec::new();
        for (f, basis) in parts.iter().zip(bases) {
            for e in basis {
                v.push(*f.get(e).unwrap_or(&0));
            }
            assert!(f.keys().all(|e| basis.contains(e)), "element outside its graded piece");
        }
        v
    }

    fn pow(mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % P;
            }
            a = a * a % P;
            e >>= 1;
        }
        r
    }

    pub fn rank(mut rows: Vec<Vec<u64>>) -> usize {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..ncols {
            let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
            rows.swap(rank, piv);
            let inv = pow(rows[rank][col], P - 2);
            for x in rows[rank].iter_mut() {
                *x = *x * inv % P;
            }
            for i in 0..rows.len() {
                if i != rank && rows[i][col] != 0 {
                    let f = rows[i][col];
                    for j in 0..ncols {
                        rows[i][j] = (rows[i][j] + P - f * rows[rank][j] % P) % P;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

fn random_in_degrees(rng: &mut StdRng, r: &Arc<Ring>, lo: i64, hi: i64) -> Polynomial {
    let deg = rng.random_range(lo..=hi);
    random_homogeneous(rng, r, deg)
}

fn random_homogeneous(rng: &mut StdRng, r: &Arc<Ring>, deg: i64) -> Polynomial {
    let monos = oracle::monomials(3, deg);
    let terms = rng.random_range(1..=3.min(monos.len()));
    let mut parts = Vec::new();
    for _ in 0..terms {
        let e = &monos[rng.random_range(0..monos.len())];
        let c = rng.random_range(1..oracle::P);
        parts.push(format!("{c}*x^{}*y^{}*z^{}", e[0], e[1], e[2]));
    }
    let p = r.poly(&parts.join(" + ")).unwrap();
    if p.is_zero() {
        r.poly(&format!("x^{deg}")).unwrap()
    } else {
        p
    }
}

fn degree(p: &Polynomial) -> i64 {
    p.degree().unwrap()
}

/// Normal-form membership against `I_d = span{m·gᵢ}`.
fn membership_instance(rng: &mut StdRng, r: &Arc<Ring>) -> Result<(), String> {
    let k = rng.random_range(1..=3);
    let gens: Vec<Polynomial> = (0..k).map(|_| random_in_degrees(rng, r, 1, 3)).collect();
    let d = rng.random_range(gens.iter().map(degree).min().unwrap()..=6);
    let f = if rng.random_bool(0.5) {
        let mut acc = Polynomial::zero(r);
        for g in &gens {
            if degree(g) <= d {
                acc = acc.add(&g.mul(&random_homogeneous(rng, r, d - degree(g))).unwrap());
            }
        }
        acc
    } else {
        random_homogeneous(rng, r, d)
    };
    let ideal = Ideal::new(r, gens.clone()).unwrap();
    let nf = ideal.normal_form(&f).unwrap();
    let basis = vec![oracle::monomials(3, d)];
    let mut rows = Vec::new();
    for g in &gens {
        for m in oracle::monomials(3, d - degree(g)) {
            rows.push(oracle::coords(&[oracle::times(&m, &oracle::dense(g))], &basis));
        }
    }
    let base = oracle::rank(rows.clone());
    let in_span = |v: Vec<u64>| {
        let mut all = rows.clone();
        all.push(v);
        oracle::rank(all) == base
    };
    let member = in_span(oracle::coords(&[oracle::dense(&f)], &basis));
    if member != nf.is_zero() {
        return Err(format!("membership of {f} in {ideal}: oracle {member}, engine nf {nf}"));
    }
    if !nf.is_zero() && (!nf.is_homogeneous() || degree(&nf) != d) {
        return Err(format!("normal form {nf} of {f} leaves degree {d}"));
    }
    if !in_span(oracle::coords(&[oracle::dense(&f.sub(&nf))], &basis)) {
        return Err(format!("{f} - {nf} is not in {ideal}"));
    }
    Ok(())
}

/// Degreewise dimension of the syzygies of `[g₁ … g_k]` against the span of
/// the computed kernel generators.
fn syzygy_instance(rng: &mut StdRng, r: &Arc<Ring>) -> Result<(), String> {
    let k = rng.random_range(2..=3);
    let common = rng.random_bool(0.4).then(|| random_homogeneous(rng, r, 1));
    let gens: Vec<Polynomial> = (0..k)
        .map(|_| {
            let g = random_in_degrees(rng, r, 1, 2);
            match &common {
                Some(h) => g.mul(h).unwrap(),
                None => g,
            }
        })
        .collect();
    let degs: Vec<i64> = gens.iter().map(degree).collect();
    let row = Matrix::new(r, vec![0], degs.clone(), gens.iter().map(|g| vec![g.clone()]).collect()).unwrap();
    let kernel = syzygy_kernel(&row).map_err(|e| e.to_string())?;
    if !row.mul(&kernel).unwrap().is_zero() {
        return Err(format!("kernel of {row} does not compose to zero"));
    }
    let dense_gens: Vec<oracle::Dense> = gens.iter().map(oracle::dense).collect();
    for d in 0..=6 {
        let bases: Vec<Vec<oracle::Exp>> = degs.iter().map(|&a| oracle::monomials(3, d - a)).collect();
        let target = vec![oracle::monomials(3, d)];
        let mut images = Vec::new();
        let mut dim_source = 0;
        for (j, basis) in bases.iter().enumerate() {
            for m in basis {
                dim_source += 1;
                images.push(oracle::coords(&[oracle::times(m, &dense_gens[j])], &target));
            }
        }
        let oracle_dim = dim_source - oracle::rank(images);
        let mut span = Vec::new();
        for (c, &tw) in kernel.col_twists().iter().enumerate() {
            let col: Vec<oracle::Dense> = kernel.column(c).iter().map(oracle::dense).collect();
            for m in oracle::monomials(3, d - tw) {
                let parts: Vec<oracle::Dense> = col.iter().map(|p| oracle::times(&m, p)).collect();
                span.push(oracle::coords(&parts, &bases));
            }
        }
        let engine_dim = if span.is_empty() { 0 } else { oracle::rank(span) };
        if engine_dim != oracle_dim {
            return Err(format!("syzygies of {row} in degree {d}: oracle {oracle_dim}, engine {engine_dim}"));
        }
    }
    Ok(())
}

/// `dim H^n(K(t^r))_d` against `dim ker - rank` of the dense differentials.
fn homology_instance(rng: &mut StdRng, r: &Arc<Ring>) -> Result<(), String> {
    let mu = rng.random_range(2..=3);
    let t: Vec<Polynomial> = (0..mu).map(|_| random_in_degrees(rng, r, 1, 2)).collect();
    let power = if t.iter().all(|x| degree(x) == 1) && rng.random_bool(0.5) { 2 } else { 1 };
    let k = koszul_complex(&t, power, None).map_err(|e| e.to_string())?;
    let lo = k.degrees().flat_map(|n| k.twists(n)).min().unwrap();
    let dense_map = |n: i64, d: i64| -> (usize, usize) {
        // (dim C^n_d, rank of d^n on degree d)
        let src: Vec<Vec<oracle::Exp>> = k.twists(n).iter().map(|&a| oracle::monomials(3, d - a)).collect();
        let dim = src.iter().map(Vec::len).sum();
        if n >= k.hi() || n < k.lo() {
            return (dim, 0);
        }
        let tgt_tw = k.twists(n + 1);
        let tgt: Vec<Vec<oracle::Exp>> = tgt_tw.iter().map(|&a| oracle::monomials(3, d - a)).collect();
        let mat = k.differential(n);
        let mut rows = Vec::new();
        for (j, basis) in src.iter().enumerate() {
            for m in basis {
                let parts: Vec<oracle::Dense> = (0..tgt_tw.len()).map(|i| oracle::times(m, &oracle::dense(mat.entry(i, j)))).collect();
                rows.push(oracle::coords(&parts, &tgt));
            }
        }
        (dim, if rows.is_empty() { 0 } else { oracle::rank(rows) })
    };
    for n in k.degrees() {
        let h = k.homology(n).map_err(|e| e.to_string())?;
        for d in lo..=lo + 6 {
            let (dim, rank_out) = dense_map(n, d);
            let rank_in = if n > k.lo() { dense_map(n - 1, d).1 } else { 0 };
            let oracle_dim = dim - rank_out - rank_in;
            let engine_dim = h.hilbert_value(d).map_err(|e| e.to_string())?;
            if oracle_dim != engine_dim {
                let ts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
                return Err(format!("H^{n} of K({ts:?})^{power} in degree {d}: oracle {oracle_dim}, engine {engine_dim}"));
            }
        }
    }
    Ok(())
}

#[test]
fn criterion_8_dense_oracles() {
    let r = parse_ring("F32003[x,y,z]").unwrap();
    let mut rng = StdRng::seed_from_u64(0x0bad_cafe);
    let mut counts: HashMap<&str, usize> = HashMap::new();
    let mut disagreements = Vec::new();
    let plan: [(&str, usize, fn(&mut StdRng, &Arc<Ring>) -> Result<(), String>); 3] = [
        ("membership", 90, membership_instance),
        ("syzygies", 60, syzygy_instance),
        ("homology", 60, homology_instance),
    ];
    for (name, n, check) in plan {
        for _ in 0..n {
            *counts.entry(name).or_default() += 1;
            if let Err(e) = check(&mut rng, &r) {
                disagreements.push(e);
            }
        }
    }
    let total: usize = counts.values().sum();
    let pass = total >= 200 && disagreements.is_empty();
    report(
        8,
        "engine soundness",
        pass,
        format!(
            "{total} instances (membership {}, syzygies {}, homology {}), {} disagreements",
            counts["membership"],
            counts["syzygies"],
            counts["homology"],
            disagreements.len()
        ),
    );
    assert!(pass, "{disagreements:#?}");
}
