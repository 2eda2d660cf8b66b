//! Subobjects of words given by projections, as in an idempotent completion.

use super::{Category, Word};
use crate::error::{Error, Result};
use crate::numkit::{kron, orthonormal_span, ComplexMatrix, MorphismSpace};

/// A word together with a projection `P` in `End(word)`.
#[derive(Clone, Debug)]
pub struct DecoratedObject {
    pub word: Word,
    pub projection: ComplexMatrix,
}

impl DecoratedObject {
    /// Validate that `p` is a self-adjoint idempotent in `End(word)`.
    pub fn new(cat: &Category, word: Word, p: ComplexMatrix) -> Result<Self> {
        let end = cat.end_basis(&word)?;
        if p.shape() != (end.rows, end.cols) {
            return Err(Error::DimensionMismatch(format!("projection must be {0}x{0}", end.rows)));
        }
        let eps = cat.tol().check_eps.sqrt();
        let defect = (&p * &p).max_abs_diff(&p).max(p.adjoint().max_abs_diff(&p));
        if defect > eps {
            return Err(Error::InvalidInput(format!("not a projection, residual {defect:e}")));
        }
        if end.residual(&p) > eps {
            return Err(Error::InvalidInput("projection is not an intertwiner".into()));
        }
        Ok(DecoratedObject { word, projection: p })
    }

    /// The whole word.
    pub fn full(cat: &Category, word: Word) -> Self {
        let n = cat.vdim(&word);
        DecoratedObject { word, projection: ComplexMatrix::identity(n) }
    }

    /// `(rho psi, P (x) Q)`.
    pub fn tensor(&self, other: &DecoratedObject) -> Self {
        DecoratedObject { word: self.word.concat(&other.word), projection: kron(&self.projection, &other.projection) }
    }

    /// Statistical dimension `d(word) tr(P)`.
    pub fn dim_stat(&self, cat: &Category) -> Result<f64> {
        Ok(cat.dim_stat(&self.word) * cat.trace(&self.word, &self.projection)?.re)
    }

    /// Morphisms `T` with `Q T P = T`.
    pub fn hom(cat: &Category, a: &DecoratedObject, b: &DecoratedObject) -> Result<MorphismSpace> {
        let h = cat.hom_words(&a.word, &b.word)?;
        let vecs: Vec<_> = h.basis.iter().map(|t| (&(&b.projection * t) * &a.projection).into_data()).collect();
        let n = h.rows * h.cols;
        let span = orthonormal_span(&vecs, n, cat.tol());
        let basis = (0..span.cols())
            .map(|k| ComplexMatrix::column(span.col_vec(k)).reshape(h.rows, h.cols))
            .collect::<Result<Vec<_>>>()?;
        Ok(MorphismSpace { rows: h.rows, cols: h.cols, basis })
    }
}
