use crate::error::{Error, Result};
use crate::groebner::{Ideal, Matrix, SubmoduleGb};
use crate::modcat::{FpModule, ModuleMap, Subquotient};
use crate::polyring::Polynomial;

/// `Γ_I(M)` with its inclusion into `M`.
#[derive(Clone, Debug)]
pub struct Torsion {
    pub module: FpModule,
    pub inclusion: ModuleMap,
    /// Least `n ≥ 0` with `(0 :_M Iⁿ) = (0 :_M I^{n+1})`.
    pub exponent: u32,
}

const MAX_EXPONENT: u32 = 256;

/// Cover vectors `v` with `g·v ∈ span(base)` for every `g`, modulo `M`.
fn killed_into(m: &FpModule, gens: &[Polynomial], base: &[Vec<Polynomial>]) -> Result<Vec<Vec<Polynomial>>> {
    let ring = m.ring();
    let n = m.rank();
    let quotient = FpModule::from_columns(ring, m.twists().to_vec(), base.to_vec())?;
    let parts: Vec<&FpModule> = gens.iter().map(|_| &quotient).collect();
    let target = FpModule::direct_sum(&parts)?;
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut c = vec![Polynomial::zero(ring); n * gens.len()];
        for (k, g) in gens.iter().enumerate() {
            c[k * n + j] = g.clone();
        }
        cols.push(c);
    }
    let mat = Matrix::new(ring, target.twists().to_vec(), m.twists().to_vec(), cols)?;
    ModuleMap::new_unchecked(m.clone(), target, mat).kernel_generators()
}

/// Computes `colim (0 :_M Iⁿ)` along the ascending chain, stopping at the
/// first repeat.
pub fn torsion_submodule(m: &FpModule, i: &Ideal) -> Result<Torsion> {
    let ring = m.ring();
    if !i.ring().same(ring) {
        return Err(Error::MixedRings);
    }
    let gens: Vec<Polynomial> = i.generators().to_vec();
    let rels = m.relations().columns().to_vec();
    let mut current: Vec<Vec<Polynomial>> = Vec::new();
    let mut exponent = 0;
    loop {
        if exponent > MAX_EXPONENT {
            return Err(Error::DegreeOverflow);
        }
        let mut base = rels.clone();
        base.extend(current.iter().cloned());
        let next = if gens.is_empty() {
            (0..m.rank()).map(|j| m.unit_vector(j)).collect()
        } else {
            killed_into(m, &gens, &base)?
        };
        let gb = SubmoduleGb::new(ring, m.twists(), &base)?;
        let mut same = true;
        for v in &next {
            if !gb.contains(v)? {
                same = false;
                break;
            }
        }
        if same {
            break;
        }
        current = next;
        exponent += 1;
    }
    let sq = Subquotient::new(ring, m.twists().to_vec(), current, rels)?;
    let cols = sq.generators().to_vec();
    let mat = Matrix::new(ring, m.twists().to_vec(), sq.module().twists().to_vec(), cols)?;
    let inclusion = ModuleMap::new(sq.module().clone(), m.clone(), mat)?;
    Ok(Torsion {
        module: sq.into_module(),
        inclusion,
        exponent,
    })
}
