use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::FreeComplex;
use crate::error::{Error, Result};
use crate::koszul::{check_sequence, KoszulTower};
use crate::linalg::DenseMatrix;
use crate::modcat::{ring_is_graded, FpModule, ModuleMap};
use crate::polyring::Polynomial;

use super::ext::ext_tower;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// `colim_r H^i(K(tʳ) ⊗ M)`.
    KoszulColim,
    /// `colim_n Ext^i(R/Iⁿ, M)`.
    ExtColim,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "koszul" | "koszul-colim" => Ok(Method::KoszulColim),
            "ext" | "ext-colim" => Ok(Method::ExtColim),
            _ => Err(Error::BadBounds(format!("unknown method `{s}`"))),
        }
    }
}

/// One degree of the table across all stages.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub degree: i64,
    /// `dims[k]` is the dimension at stage `k + 1`.
    pub dims: Vec<usize>,
    /// `iso[k]` says whether the transition from stage `k + 1` to `k + 2` is
    /// bijective on this degree.
    pub iso: Vec<bool>,
    pub stable: bool,
    /// The colimit dimension, when stable.
    pub value: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalCohomologyTable {
    pub method: Method,
    pub index: usize,
    pub window: (i64, i64),
    pub stage_max: u32,
    /// `[degree, stage, dim]`.
    pub entries: Vec<[i64; 3]>,
    pub rows: Vec<DegreeRow>,
}

impl LocalCohomologyTable {
    pub fn row(&self, degree: i64) -> Option<&DegreeRow> {
        self.rows.iter().find(|r| r.degree == degree)
    }

    pub fn value(&self, degree: i64) -> Option<usize> {
        self.row(degree).and_then(|r| r.value)
    }

    pub fn all_stable(&self) -> bool {
        self.rows.iter().all(|r| r.stable)
    }

    pub fn unstable_degrees(&self) -> Vec<i64> {
        self.rows.iter().filter(|r| !r.stable).map(|r| r.degree).collect()
    }
}

fn rank_on(f: &ModuleMap, d: i64) -> Result<usize> {
    let m: DenseMatrix = f.degree_matrix(d)?;
    Ok(m.rank())
}

fn tabulate(
    method: Method,
    index: usize,
    window: (i64, i64),
    stage_max: u32,
    homology: &[FpModule],
    maps: &[ModuleMap],
) -> Result<LocalCohomologyTable> {
    let (lo, hi) = window;
    let rows = (lo..=hi)
        .into_par_iter()
        .map(|d| {
            let dims = homology.iter().map(|h| h.hilbert_value(d)).collect::<Result<Vec<_>>>()?;
            let mut iso = Vec::with_capacity(maps.len());
            for (k, f) in maps.iter().enumerate() {
                let ok = dims[k] == dims[k + 1] && (dims[k] == 0 || rank_on(f, d)? == dims[k]);
                iso.push(ok);
            }
            let stable = match iso.last() {
                Some(&b) => b,
                None => false,
            };
            let value = stable.then(|| *dims.last().expect("stage_max ≥ 1"));
            Ok(DegreeRow {
                degree: d,
                dims,
                iso,
                stable,
                value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::new();
    for row in &rows {
        for (k, &dim) in row.dims.iter().enumerate() {
            entries.push([row.degree, k as i64 + 1, dim as i64]);
        }
    }
    Ok(LocalCohomologyTable {
        method,
        index,
        window,
        stage_max,
        entries,
        rows,
    })
}

/// Degreewise dimensions of `H^i_I(M)` over `window`, `I = (t)`, computed as
/// a colimit over stages `1..=stage_max`. A degree is stable once the last
/// transition is bijective on it.
pub fn local_cohomology_graded(
    m: &FpModule,
    t: &[Polynomial],
    i: usize,
    window: (i64, i64),
    stage_max: u32,
    method: Method,
) -> Result<LocalCohomologyTable> {
    let ring = check_sequence(t)?;
    if !m.ring().same(&ring) {
        return Err(Error::MixedRings);
    }
    if !ring_is_graded(&ring) {
        return Err(Error::NotGraded("ring is not graded".into()));
    }
    if let Some(p) = t.iter().find(|p| !p.is_homogeneous()) {
        return Err(Error::NotGraded(format!("{p} is not homogeneous")));
    }
    m.require_graded()?;
    if stage_max == 0 {
        return Err(Error::BadBounds("stage_max must be positive".into()));
    }
    if window.0 > window.1 {
        return Err(Error::BadBounds(format!("empty window {}..{}", window.0, window.1)));
    }
    let n = i as i64;
    let (homology, maps) = match method {
        Method::KoszulColim => {
            let tower = KoszulTower::direct(t, Some(m), stage_max)?;
            let homology = (1..=stage_max)
                .into_par_iter()
                .map(|r| tower.homology(r, n))
                .collect::<Result<Vec<_>>>()?;
            let maps = (1..stage_max)
                .into_par_iter()
                .map(|r| tower.homology_map(r, r + 1, n))
                .collect::<Result<Vec<_>>>()?;
            (homology, maps)
        }
        Method::ExtColim => {
            let tower = ext_tower(t, m, i, stage_max)?;
            let homology = tower
                .stages
                .par_iter()
                .map(|c: &Arc<FreeComplex>| c.homology(n))
                .collect::<Result<Vec<_>>>()?;
            let maps = tower
                .transitions
                .par_iter()
                .map(|f| f.induced_homology_map(n))
                .collect::<Result<Vec<_>>>()?;
            (homology, maps)
        }
    };
    tabulate(method, i, window, stage_max, &homology, &maps)
}
