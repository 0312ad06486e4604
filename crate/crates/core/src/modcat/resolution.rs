use crate::error::{Error, Result};
use crate::groebner::{syzygy_kernel, LiftGb, Matrix, SubmoduleGb};
use crate::modcat::map::ModuleMap;
use crate::modcat::module::FpModule;
use crate::modcat::subquotient::Subquotient;
use crate::polyring::Polynomial;

/// A free resolution `… → F₂ → F₁ → F₀ → M`; `maps[k] : F_{k+1} → F_k`.
#[derive(Clone, Debug)]
pub struct Resolution {
    module: FpModule,
    f0: Vec<i64>,
    maps: Vec<Matrix>,
}

impl Resolution {
    /// The (pruned) module being resolved.
    pub fn module(&self) -> &FpModule {
        &self.module
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Generator degrees of `F_k` (empty beyond the computed range).
    pub fn twists(&self, k: usize) -> Vec<i64> {
        if k == 0 {
            self.f0.clone()
        } else {
            self.maps.get(k - 1).map(|m| m.col_twists().to_vec()).unwrap_or_default()
        }
    }

    pub fn ranks(&self) -> Vec<usize> {
        (0..=self.maps.len()).map(|k| self.twists(k).len()).collect()
    }
}

/// Resolution with at most `length` maps; minimal in the graded case.
pub fn free_resolution(m: &FpModule, length: usize) -> Result<Resolution> {
    let module = m.prune()?.module;
    let f0 = module.twists().to_vec();
    let mut maps: Vec<Matrix> = Vec::new();
    if length > 0 && module.relations().ncols() > 0 {
        maps.push(module.relations().clone());
    }
    while maps.len() < length {
        let Some(d) = maps.last() else { break };
        let k = syzygy_kernel(d)?;
        if k.ncols() == 0 {
            break;
        }
        // exactness: every syzygy lies in the span of the new generators
        let raw = LiftGb::from_matrix(d)?.syzygies()?;
        let span = SubmoduleGb::from_matrix(&k)?;
        for s in &raw {
            if !span.contains(s)? {
                return Err(Error::LiftFailure("resolution is not exact".into()));
            }
        }
        maps.push(k);
    }
    Ok(Resolution { module, f0, maps })
}

/// `Hom(F, N)` for `F = ⊕ R(-aᵢ)`: one copy of `N(aᵢ)` per generator.
pub fn hom_free_into(twists: &[i64], n: &FpModule) -> Result<FpModule> {
    let parts: Vec<FpModule> = twists.iter().map(|&a| n.twist(a)).collect();
    if parts.is_empty() {
        return Ok(FpModule::zero(n.ring()));
    }
    let refs: Vec<&FpModule> = parts.iter().collect();
    FpModule::direct_sum(&refs)
}

/// `Hom(d, N) : Hom(F_k, N) → Hom(F_{k+1}, N)` for `d : F_{k+1} → F_k`.
pub fn hom_map_into(d: &Matrix, n: &FpModule) -> Result<ModuleMap> {
    let ring = n.ring();
    let src = hom_free_into(d.row_twists(), n)?;
    let tgt = hom_free_into(d.col_twists(), n)?;
    let r = n.rank();
    let mut cols = Vec::with_capacity(src.rank());
    for i in 0..d.nrows() {
        for t in 0..r {
            let mut col = vec![Polynomial::zero(ring); tgt.rank()];
            for j in 0..d.ncols() {
                col[j * r + t] = d.entry(i, j).clone();
            }
            cols.push(col);
        }
    }
    let m = Matrix::new(ring, tgt.twists().to_vec(), src.twists().to_vec(), cols)?;
    ModuleMap::new(src, tgt, m)
}

/// Homology `ker(next) / im(prev)` at a module in a complex of presented modules.
pub fn homology_at(middle: &FpModule, prev: Option<&ModuleMap>, next: Option<&ModuleMap>) -> Result<Subquotient> {
    let gens = match next {
        Some(g) => g.kernel_generators()?,
        None => (0..middle.rank()).map(|i| middle.unit_vector(i)).collect(),
    };
    let mut den = middle.relations().columns().to_vec();
    if let Some(f) = prev {
        den.extend(f.matrix().columns().iter().cloned());
    }
    Subquotient::new(middle.ring(), middle.twists().to_vec(), gens, den)
}

/// `Ext^i(M, N)` as the cohomology of `Hom(F•, N)`.
pub fn ext_module(m: &FpModule, n: &FpModule, i: usize) -> Result<FpModule> {
    if !m.ring().same(n.ring()) {
        return Err(Error::MixedRings);
    }
    let res = free_resolution(m, i + 1)?;
    let middle = hom_free_into(&res.twists(i), n)?;
    let next = match res.maps().get(i) {
        Some(d) => Some(hom_map_into(d, n)?),
        None => None,
    };
    let prev = if i == 0 {
        None
    } else {
        match res.maps().get(i - 1) {
            Some(d) => Some(hom_map_into(d, n)?),
            None => None,
        }
    };
    Ok(homology_at(&middle, prev.as_ref(), next.as_ref())?.into_module())
}
