use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::{LiftGb, Matrix};
use crate::linalg::DenseMatrix;
use crate::modcat::module::FpModule;
use crate::modcat::subquotient::Subquotient;
use crate::polyring::Polynomial;

/// A homomorphism of finitely presented modules, given on covers.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: FpModule,
    target: FpModule,
    matrix: Matrix,
}

/// Outcome of [`ModuleMap::verify_isomorphism`].
#[derive(Clone, Debug)]
pub enum IsoVerdict {
    Iso,
    NotIso { kernel: FpModule, cokernel: FpModule },
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Iso)
    }
}

impl ModuleMap {
    /// Checks that relations of `source` land in the relations of `target`.
    pub fn new(source: FpModule, target: FpModule, matrix: Matrix) -> Result<Self> {
        if matrix.nrows() != target.rank() || matrix.ncols() != source.rank() {
            return Err(Error::Shape(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                target.rank(),
                source.rank()
            )));
        }
        if !matrix.ring().same(source.ring()) || !matrix.ring().same(target.ring()) {
            return Err(Error::MixedRings);
        }
        let matrix = matrix.with_twists(target.twists().to_vec(), source.twists().to_vec())?;
        for c in source.relations().columns() {
            let img = matrix.apply(c)?;
            if !target.element_is_zero(&img)? {
                return Err(Error::InvalidMap("a relation is not carried to a relation".into()));
            }
        }
        Ok(ModuleMap {
            source,
            target,
            matrix,
        })
    }

    pub(crate) fn new_unchecked(source: FpModule, target: FpModule, matrix: Matrix) -> Self {
        let matrix = matrix
            .with_twists(target.twists().to_vec(), source.twists().to_vec())
            .expect("shape");
        ModuleMap {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(m: &FpModule) -> Self {
        Self::new_unchecked(m.clone(), m.clone(), Matrix::identity(m.ring(), m.twists().to_vec()))
    }

    pub fn zero(source: &FpModule, target: &FpModule) -> Self {
        Self::new_unchecked(
            source.clone(),
            target.clone(),
            Matrix::zero(source.ring(), target.twists().to_vec(), source.twists().to_vec()),
        )
    }

    pub fn source(&self) -> &FpModule {
        &self.source
    }

    pub fn target(&self) -> &FpModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if other.target != self.source {
            return Err(Error::InvalidMap("composition of non-matching maps".into()));
        }
        Ok(Self::new_unchecked(
            other.source.clone(),
            self.target.clone(),
            self.matrix.mul(&other.matrix)?,
        ))
    }

    pub fn is_graded(&self) -> bool {
        self.source.is_graded() && self.target.is_graded() && self.matrix.is_homogeneous()
    }

    pub fn is_zero(&self) -> Result<bool> {
        for c in self.matrix.columns() {
            if !self.target.element_is_zero(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether two maps with the same ends agree.
    pub fn equals(&self, other: &ModuleMap) -> Result<bool> {
        if self.source != other.source || self.target != other.target {
            return Ok(false);
        }
        let d = self.matrix.sub(&other.matrix)?;
        for c in d.columns() {
            if !self.target.element_is_zero(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Elements of the source cover generating the kernel (modulo source relations).
    pub fn kernel_generators(&self) -> Result<Vec<Vec<Polynomial>>> {
        let n = self.source.rank();
        let mut cols = self.matrix.columns().to_vec();
        cols.extend(self.target.relations().columns().iter().cloned());
        let mut ct = self.source.twists().to_vec();
        ct.extend_from_slice(self.target.relations().col_twists());
        let syz = LiftGb::new(self.matrix.ring(), self.target.twists(), &ct, &cols)?.syzygies()?;
        Ok(syz.into_iter().map(|mut s| {
            s.truncate(n);
            s
        })
        .filter(|s| s.iter().any(|p| !p.is_zero()))
        .collect())
    }

    /// The kernel as a subquotient of the source cover.
    pub fn kernel(&self) -> Result<Subquotient> {
        let gens = self.kernel_generators()?;
        Subquotient::new(
            self.source.ring(),
            self.source.twists().to_vec(),
            gens,
            self.source.relations().columns().to_vec(),
        )
    }

    pub fn cokernel(&self) -> Result<FpModule> {
        let m = Matrix::hcat(&[self.target.relations(), &self.matrix])?;
        Ok(FpModule::new(m)?.prune()?.module)
    }

    pub fn verify_isomorphism(&self) -> Result<IsoVerdict> {
        let kernel = self.kernel()?;
        let coker = self.cokernel()?;
        let verdict = if kernel.module().is_zero()? && coker.is_zero()? {
            IsoVerdict::Iso
        } else {
            IsoVerdict::NotIso {
                kernel: kernel.module().clone(),
                cokernel: coker,
            }
        };
        if verdict.is_iso() && self.is_graded() {
            // an isomorphism must preserve graded dimensions
            let lo = self
                .source
                .twists()
                .iter()
                .chain(self.target.twists())
                .copied()
                .min()
                .unwrap_or(0);
            for d in lo..lo + 4 {
                if self.source.hilbert_value(d)? != self.target.hilbert_value(d)? {
                    return Err(Error::LiftFailure(format!(
                        "isomorphism verdict contradicts Hilbert function in degree {d}"
                    )));
                }
            }
        }
        Ok(verdict)
    }

    /// Matrix of the map on degree-`d` pieces in the standard-monomial bases.
    pub fn degree_matrix(&self, d: i64) -> Result<DenseMatrix> {
        let sb = self.source.degree_basis(d)?;
        let tb = self.target.degree_basis(d)?;
        self.target.require_graded()?;
        if !self.matrix.is_homogeneous() {
            return Err(Error::NotGraded("map is not homogeneous of degree 0".into()));
        }
        let index: HashMap<_, usize> = tb.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        let cols = sb
            .iter()
            .map(|&b| {
                let img = self.matrix.apply(&self.source.basis_element(b))?;
                self.target.coordinates_indexed(&img, &index, tb.len())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DenseMatrix::from_columns(self.source.ring().field(), tb.len(), cols))
    }
}
