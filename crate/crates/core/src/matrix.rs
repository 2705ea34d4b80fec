//! Matrices over a presented algebra, projector checks and the block-projector
//! construction `½ [[1+Z, t], [t̃, 1−Z]]`.

use std::fmt;
use std::sync::Arc;

use crate::coeff::ParamScalar;
use crate::error::{Error, Result};
use crate::ncpoly::{NCPoly, Presentation};

/// Dense matrix of reduced elements of one presented algebra.
#[derive(Clone)]
pub struct AlgMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<NCPoly>,
    pres: Arc<Presentation>,
}

/// Entry `(row, col)` (zero-based) with its nonzero residual.
#[derive(Clone, Debug)]
pub struct EntryResidual {
    pub row: usize,
    pub col: usize,
    pub residual: NCPoly,
}

/// Outcome of an entrywise matrix identity check.
#[derive(Clone, Debug, Default)]
pub struct MatrixCheck {
    pub failures: Vec<EntryResidual>,
}

impl MatrixCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn from_diff(diff: &AlgMatrix) -> Self {
        let mut failures = Vec::new();
        for r in 0..diff.rows {
            for c in 0..diff.cols {
                let e = diff.get(r, c);
                if !e.is_zero() {
                    failures.push(EntryResidual { row: r, col: c, residual: e.clone() });
                }
            }
        }
        Self { failures }
    }
}

/// Result of checking `t̃ t = t t̃ = (1 − Z²) I`.
#[derive(Clone, Debug, Default)]
pub struct DetConditionReport {
    pub left: MatrixCheck,
    pub right: MatrixCheck,
}

impl DetConditionReport {
    pub fn passed(&self) -> bool {
        self.left.passed() && self.right.passed()
    }
}

impl AlgMatrix {
    /// Builds a matrix from row-major entries, reducing each one.
    pub fn new(pres: Arc<Presentation>, rows: usize, cols: usize, entries: Vec<NCPoly>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let entries = entries.iter().map(|e| pres.normal_form(e)).collect();
        Ok(Self { rows, cols, entries, pres })
    }

    pub fn from_rows(pres: Arc<Presentation>, rows: Vec<Vec<NCPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(pres, r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity(pres: Arc<Presentation>, n: usize) -> Self {
        Self::scalar_diag(pres, n, &NCPoly::one())
    }

    pub fn zeros(pres: Arc<Presentation>, rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![NCPoly::zero(); rows * cols], pres }
    }

    /// `a · I_n`
    pub fn scalar_diag(pres: Arc<Presentation>, n: usize, a: &NCPoly) -> Self {
        let a = pres.normal_form(a);
        let mut m = Self::zeros(pres, n, n);
        for i in 0..n {
            m.entries[i * n + i] = a.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn get(&self, r: usize, c: usize) -> &NCPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[NCPoly] {
        &self.entries
    }

    pub fn set(&mut self, r: usize, c: usize, v: NCPoly) {
        self.entries[r * self.cols + c] = self.pres.normal_form(&v);
    }

    fn same_pres(&self, other: &AlgMatrix) -> Result<()> {
        if Arc::ptr_eq(&self.pres, &other.pres) || self.pres.name() == other.pres.name() {
            Ok(())
        } else {
            Err(Error::PresentationMismatch(self.pres.name().into(), other.pres.name().into()))
        }
    }

    fn same_shape(&self, other: &AlgMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgMatrix) -> Result<AlgMatrix> {
        self.same_pres(other)?;
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        Ok(AlgMatrix { entries, ..self.clone() })
    }

    pub fn sub(&self, other: &AlgMatrix) -> Result<AlgMatrix> {
        self.same_pres(other)?;
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect();
        Ok(AlgMatrix { entries, ..self.clone() })
    }

    pub fn scale(&self, c: &ParamScalar) -> AlgMatrix {
        AlgMatrix { entries: self.entries.iter().map(|e| e.scale(c)).collect(), ..self.clone() }
    }

    /// Product with entries `nf(Σ_k A_ik B_kj)`.
    pub fn mat_mul(&self, other: &AlgMatrix) -> Result<AlgMatrix> {
        self.same_pres(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = NCPoly::zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_assign(&a.mul(b));
                    }
                }
                entries.push(self.pres.normal_form(&acc));
            }
        }
        Ok(AlgMatrix { rows: self.rows, cols: other.cols, entries, pres: self.pres.clone() })
    }

    /// Checks `A² = A`, reporting every failing entry of `A² − A`.
    pub fn is_idempotent(&self) -> Result<MatrixCheck> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("idempotence needs a square matrix".into()));
        }
        let sq = self.mat_mul(self)?;
        Ok(MatrixCheck::from_diff(&sq.sub(self)?))
    }

    /// Transpose combined with the involution of the algebra.
    pub fn mat_adjoint(&self) -> Result<AlgMatrix> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..self.cols {
            for j in 0..self.rows {
                entries.push(self.pres.apply_involution(self.get(j, i))?);
            }
        }
        Ok(AlgMatrix { rows: self.cols, cols: self.rows, entries, pres: self.pres.clone() })
    }

    pub fn is_self_adjoint(&self) -> Result<MatrixCheck> {
        let adj = self.mat_adjoint()?;
        self.same_shape(&adj)?;
        Ok(MatrixCheck::from_diff(&adj.sub(self)?))
    }

    /// Entrywise equality check `self − other = 0`.
    pub fn check_equal(&self, other: &AlgMatrix) -> Result<MatrixCheck> {
        Ok(MatrixCheck::from_diff(&self.sub(other)?))
    }

    /// Re-reduces the entries in another presentation with the same generator names.
    pub fn transfer(&self, pres: Arc<Presentation>) -> Result<AlgMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| import_element(&self.pres, &pres, e))
            .collect::<Result<Vec<_>>>()?;
        AlgMatrix::new(pres, self.rows, self.cols, entries)
    }

    pub fn trace(&self) -> NCPoly {
        let mut acc = NCPoly::zero();
        for i in 0..self.rows.min(self.cols) {
            acc.add_assign(self.get(i, i));
        }
        acc
    }

    /// Specializes the entries into `pres`, which must be the matching
    /// specialization of this matrix's presentation.
    pub fn specialize_into(&self, pres: Arc<Presentation>, at: &crate::coeff::Assignment) -> Result<AlgMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| Ok(pres.normal_form(&e.specialize(at)?)))
            .collect::<Result<Vec<_>>>()?;
        AlgMatrix::new(pres, self.rows, self.cols, entries)
    }

    /// Specializes both the presentation and the entries.
    pub fn specialize(&self, at: &crate::coeff::Assignment) -> Result<AlgMatrix> {
        let pres = Arc::new(self.pres.specialize(at)?);
        self.specialize_into(pres, at)
    }
}

/// Maps an element between presentations by generator name.
pub fn import_element(from: &Presentation, to: &Presentation, a: &NCPoly) -> Result<NCPoly> {
    let map: Vec<_> = from
        .generators()
        .iter()
        .map(|n| to.gen_index(n).ok_or_else(|| Error::Unknown(n.clone())))
        .collect::<Result<_>>()?;
    let mut out = NCPoly::zero();
    for (w, c) in a.terms() {
        let gens = w.letters().iter().map(|&g| map[g as usize]).collect();
        out.add_term(crate::ncpoly::Word::from_gens(gens), c.clone());
    }
    Ok(to.normal_form(&out))
}

/// Checks `t̃ t = t t̃ = (1 − Z²) I` entrywise.
pub fn verify_det_condition(t: &AlgMatrix, ttilde: &AlgMatrix, z: &NCPoly) -> Result<DetConditionReport> {
    if !t.is_square() || t.rows != ttilde.rows || t.cols != ttilde.cols {
        return Err(Error::DimensionMismatch("t and t̃ must be square of equal size".into()));
    }
    let pres = t.pres.clone();
    let rhs = AlgMatrix::scalar_diag(pres.clone(), t.rows, &NCPoly::one().sub(&z.mul(z)));
    let left = MatrixCheck::from_diff(&ttilde.mat_mul(t)?.sub(&rhs)?);
    let right = MatrixCheck::from_diff(&t.mat_mul(ttilde)?.sub(&rhs)?);
    Ok(DetConditionReport { left, right })
}

/// `½ [[1+Z, t], [t̃, 1−Z]]`; requires `Z` central, does not assume the
/// determinant condition.
pub fn block_projector(t: &AlgMatrix, ttilde: &AlgMatrix, z: &NCPoly) -> Result<AlgMatrix> {
    if !t.is_square() || t.rows != ttilde.rows || !ttilde.is_square() {
        return Err(Error::DimensionMismatch("t and t̃ must be square of equal size".into()));
    }
    t.same_pres(ttilde)?;
    let pres = t.pres.clone();
    let z = pres.normal_form(z);
    if let Some(g) = pres.non_central_witness(&z) {
        return Err(Error::NotCentral { witness: pres.gen_name(g).to_string() });
    }
    let n = t.rows;
    let half = ParamScalar::ratio(1, 2);
    let one = NCPoly::one();
    let mut entries = vec![NCPoly::zero(); 4 * n * n];
    for i in 0..n {
        entries[i * 2 * n + i] = one.add(&z).scale(&half);
        entries[(n + i) * 2 * n + n + i] = one.sub(&z).scale(&half);
        for j in 0..n {
            entries[i * 2 * n + n + j] = t.get(i, j).scale(&half);
            entries[(n + i) * 2 * n + j] = ttilde.get(i, j).scale(&half);
        }
    }
    AlgMatrix::new(pres, 2 * n, 2 * n, entries)
}

impl fmt::Debug for AlgMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::exprio::format_matrix(self))
    }
}

impl PartialEq for AlgMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.pres.name() == other.pres.name()
            && self.entries == other.entries
    }
}
