//! Graded local duality over `k[x₁..xₙ]`: `dim H^i_m(M)_e` against
//! `dim Ext^{n-i}(M, R(-n))_{-e}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::koszul::koszul_complex;
use crate::localcoh::{local_cohomology_graded, Method};
use crate::modcat::{ext_module, ring_is_graded, FpModule};
use crate::text;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityEntry {
    pub i: usize,
    /// Degree `e` of the local cohomology side; the Ext side is read at `-e`.
    pub degree: i64,
    pub lhs: usize,
    pub rhs: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityTable {
    pub ring: String,
    pub module: String,
    pub n: usize,
    pub window: (i64, i64),
    pub stage_max: u32,
    pub entries: Vec<DualityEntry>,
    /// `[degree, Σ (-1)^i lhs, Σ (-1)^i rhs]`.
    pub euler: Vec<[i64; 3]>,
}

impl DualityTable {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn entry(&self, i: usize, degree: i64) -> Option<&DualityEntry> {
        self.entries.iter().find(|e| e.i == i && e.degree == degree)
    }

    pub fn mismatches(&self) -> Vec<&DualityEntry> {
        self.entries.iter().filter(|e| !e.pass).collect()
    }
}

fn check_ring(m: &FpModule) -> Result<()> {
    let ring = m.ring();
    if ring.has_quotient() {
        return Err(Error::InvalidRing("duality needs a polynomial ring without relations".into()));
    }
    if !ring_is_graded(ring) {
        return Err(Error::NotGraded("ring is not graded".into()));
    }
    m.require_graded()
}

/// Least `j` with `H^j(K(x₁..xₙ) ⊗ M) ≠ 0`; `n + 1` for `M = 0`.
pub fn koszul_depth(m: &FpModule) -> Result<usize> {
    check_ring(m)?;
    let ring = m.ring();
    let vars = ring.vars_as_polys();
    let k = koszul_complex(&vars, 1, Some(m))?;
    for j in 0..=vars.len() {
        if !k.homology(j as i64)?.is_zero()? {
            return Ok(j);
        }
    }
    Ok(vars.len() + 1)
}

/// Compares both sides on every `e` in `window` and `0 ≤ i ≤ n`, with the
/// canonical module normalized as `R(-n)`. Local cohomology comes from the
/// Koszul colimit and must be stable on the whole window.
pub fn graded_local_duality_check(m: &FpModule, window: (i64, i64), stage_max: u32) -> Result<DualityTable> {
    check_ring(m)?;
    if window.0 > window.1 {
        return Err(Error::BadBounds(format!("empty window {}..{}", window.0, window.1)));
    }
    let ring = m.ring();
    let n = ring.nvars();
    let vars = ring.vars_as_polys();
    let omega = FpModule::free(ring, vec![n as i64]);
    let sides = (0..=n)
        .into_par_iter()
        .map(|i| {
            let lc = local_cohomology_graded(m, &vars, i, window, stage_max, Method::KoszulColim)?;
            let ext = ext_module(m, &omega, n - i)?;
            Ok((lc, ext))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut unstable: Vec<i64> = sides.iter().flat_map(|(lc, _)| lc.unstable_degrees()).collect();
    unstable.sort_unstable();
    unstable.dedup();
    if !unstable.is_empty() {
        return Err(Error::UnstableWindow {
            stage_max: stage_max as usize,
            degrees: unstable,
        });
    }
    let mut entries = Vec::new();
    for (i, (lc, ext)) in sides.iter().enumerate() {
        for e in window.0..=window.1 {
            let lhs = lc.value(e).expect("stable");
            let rhs = ext.hilbert_value(-e)?;
            entries.push(DualityEntry {
                i,
                degree: e,
                lhs,
                rhs,
                pass: lhs == rhs,
            });
        }
    }
    let euler = (window.0..=window.1)
        .map(|e| {
            let mut l = 0i64;
            let mut r = 0i64;
            for x in entries.iter().filter(|x| x.degree == e) {
                let sign = if x.i % 2 == 0 { 1 } else { -1 };
                l += sign * x.lhs as i64;
                r += sign * x.rhs as i64;
            }
            [e, l, r]
        })
        .collect();
    Ok(DualityTable {
        ring: text::ring_text(ring),
        module: text::module_text(m),
        n,
        window,
        stage_max,
        entries,
        euler,
    })
}
