//! FRT quantum matrix algebras: the standard R-matrix, Yang-Baxter check,
//! RTT relations, quantum minors and determinant, the *-structure and the
//! sphere obtained by adjoining a central `Z` with `D = 1 − Z²`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coeff::{Assignment, ParamScalar};
use crate::error::{Error, Result};
use crate::matrix::{block_projector, AlgMatrix, MatrixCheck};
use crate::ncpoly::{Gen, NCPoly, Presentation, PresentationBuilder, Word};
use crate::presentations::extend_with_z;

/// An `n²×n²` matrix of scalars; row `(i, j)` has index `i·n + j` (zero-based).
#[derive(Clone, PartialEq, Eq)]
pub struct RMatrix {
    n: usize,
    entries: Vec<ParamScalar>,
}

impl RMatrix {
    pub fn from_entries(n: usize, entries: Vec<ParamScalar>) -> Self {
        assert_eq!(entries.len(), n * n * n * n, "R-matrix needs n^4 entries");
        Self { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        let m = n * n;
        let mut entries = vec![ParamScalar::zero(); m * m];
        for i in 0..m {
            entries[i * m + i] = ParamScalar::one();
        }
        Self { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &ParamScalar {
        &self.entries[row * self.dim() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: ParamScalar) {
        let m = self.dim();
        self.entries[row * m + col] = v;
    }

    /// Entry `R_{(i,j),(k,l)}`.
    pub fn at(&self, i: usize, j: usize, k: usize, l: usize) -> &ParamScalar {
        self.get(i * self.n + j, k * self.n + l)
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(|x| x.mul(c)).collect() }
    }

    pub fn specialize(&self, at: &Assignment) -> Result<Self> {
        let entries = self.entries.iter().map(|x| x.specialize(at)).collect::<Result<_>>()?;
        Ok(Self { n: self.n, entries })
    }

    /// Gaussian elimination over the coefficient field.
    pub fn is_invertible(&self) -> bool {
        let m = self.dim();
        let mut a: Vec<Vec<ParamScalar>> = (0..m).map(|i| self.entries[i * m..(i + 1) * m].to_vec()).collect();
        for col in 0..m {
            let Some(piv) = (col..m).find(|&r| !a[r][col].is_zero()) else { return false };
            a.swap(col, piv);
            let inv = a[col][col].inv().expect("nonzero pivot");
            for r in col + 1..m {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].mul(&inv);
                let (top, rest) = a.split_at_mut(r);
                for (x, y) in rest[0][col..].iter_mut().zip(&top[col][col..]) {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        true
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::exprio::format_rmatrix(self))
    }
}

/// The `GL_q(n)` solution without its `q^{-1/n}` normalization.
pub fn standard_r(n: usize) -> RMatrix {
    let q = ParamScalar::q();
    let mut r = RMatrix::from_entries(n, vec![ParamScalar::zero(); n * n * n * n]);
    let off = q.sub(&q.inv().expect("q is invertible"));
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            r.set(row, row, if i == j { q.clone() } else { ParamScalar::one() });
            if i > j {
                r.set(row, j * n + i, off.clone());
            }
        }
    }
    r
}

type Sparse = BTreeMap<usize, BTreeMap<usize, ParamScalar>>;

fn sparse_mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (&i, row) in a {
        let mut acc: BTreeMap<usize, ParamScalar> = BTreeMap::new();
        for (&k, x) in row {
            if let Some(brow) = b.get(&k) {
                for (&j, y) in brow {
                    let e = acc.entry(j).or_insert_with(ParamScalar::zero);
                    *e = e.add(&x.mul(y));
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        if !acc.is_empty() {
            out.insert(i, acc);
        }
    }
    out
}

/// `R` acting on tensor slots `(a, b)` of `(Cⁿ)^{⊗3}`.
fn embed(r: &RMatrix, slots: (usize, usize)) -> Sparse {
    let n = r.n;
    let idx = |v: [usize; 3]| (v[0] * n + v[1]) * n + v[2];
    let other = 3 - slots.0 - slots.1;
    let mut out = Sparse::new();
    for row in 0..r.dim() {
        for col in 0..r.dim() {
            let x = r.get(row, col);
            if x.is_zero() {
                continue;
            }
            for k in 0..n {
                let mut a = [0; 3];
                let mut b = [0; 3];
                a[slots.0] = row / n;
                a[slots.1] = row % n;
                b[slots.0] = col / n;
                b[slots.1] = col % n;
                a[other] = k;
                b[other] = k;
                out.entry(idx(a)).or_default().insert(idx(b), x.clone());
            }
        }
    }
    out
}

/// A differing entry of the two Yang-Baxter triple products.
#[derive(Clone, Debug)]
pub struct YbeResidual {
    pub row: usize,
    pub col: usize,
    pub left: ParamScalar,
    pub right: ParamScalar,
}

#[derive(Clone, Debug, Default)]
pub struct YbeReport {
    pub failures: Vec<YbeResidual>,
}

impl YbeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares `R₁₂R₁₃R₂₃` with `R₂₃R₁₃R₁₂` entrywise.
pub fn ybe_check(r: &RMatrix) -> YbeReport {
    let (r12, r13, r23) = (embed(r, (0, 1)), embed(r, (0, 2)), embed(r, (1, 2)));
    let left = sparse_mul(&sparse_mul(&r12, &r13), &r23);
    let right = sparse_mul(&sparse_mul(&r23, &r13), &r12);
    let get = |m: &Sparse, i: usize, j: usize| m.get(&i).and_then(|r| r.get(&j)).cloned().unwrap_or_else(ParamScalar::zero);
    let mut keys: Vec<(usize, usize)> = Vec::new();
    for m in [&left, &right] {
        for (&i, row) in m {
            keys.extend(row.keys().map(|&j| (i, j)));
        }
    }
    keys.sort_unstable();
    keys.dedup();
    let failures = keys
        .into_iter()
        .filter_map(|(i, j)| {
            let (l, rr) = (get(&left, i, j), get(&right, i, j));
            (l != rr).then_some(YbeResidual { row: i, col: j, left: l, right: rr })
        })
        .collect();
    YbeReport { failures }
}

/// Generator name of `t_{ij}` (one-based indices).
pub fn t_name(n: usize, i: usize, j: usize) -> String {
    if n < 10 {
        format!("t{i}{j}")
    } else {
        format!("t{i}_{j}")
    }
}

fn t_gen(n: usize, i: usize, j: usize) -> Gen {
    (i * n + j) as Gen
}

/// The `n⁴` entries of `R t₁ t₂ − t₂ t₁ R` as free polynomials in `t_{ij}`
/// (generator `t_{ij}` has index `i·n + j`, zero-based).
pub fn rtt_relations(r: &RMatrix) -> Vec<NCPoly> {
    let n = r.n;
    let tt = |a: usize, b: usize, c: usize, d: usize| Word::from_gens(vec![t_gen(n, a, b), t_gen(n, c, d)]);
    let mut out = Vec::with_capacity(n * n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut rel = NCPoly::zero();
                    for a in 0..n {
                        for b in 0..n {
                            let x = r.at(i, j, a, b);
                            if !x.is_zero() {
                                rel.add_term(tt(a, k, b, l), x.clone());
                            }
                            let y = r.at(a, b, k, l);
                            if !y.is_zero() {
                                rel.add_term(tt(j, b, i, a), y.neg());
                            }
                        }
                    }
                    out.push(rel);
                }
            }
        }
    }
    out
}

/// `A(R)` with its confluence-verified presentation.
#[derive(Clone, Debug)]
pub struct QuantumMatrixAlgebra {
    pub n: usize,
    pub pres: Arc<Presentation>,
    pub r: RMatrix,
}

impl QuantumMatrixAlgebra {
    /// The generator matrix `t`.
    pub fn t_matrix(&self) -> AlgMatrix {
        let n = self.n;
        let entries = (0..n * n).map(|g| NCPoly::gen(g as Gen)).collect();
        AlgMatrix::new(self.pres.clone(), n, n, entries).expect("n×n entries")
    }
}

/// Row-reduces the RTT relations over degree-2 words and orients each pivot word
/// to its remainder.
pub fn make_quantum_matrix_algebra(r: &RMatrix) -> Result<QuantumMatrixAlgebra> {
    let n = r.n;
    let names: Vec<String> = (1..=n).flat_map(|i| (1..=n).map(move |j| t_name(n, i, j))).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut b = PresentationBuilder::with_generators(&format!("frt{n}"), &refs);
    let order = b.order();

    let rels = rtt_relations(r);
    let mut words: Vec<Word> = rels.iter().flat_map(|p| p.terms().map(|(w, _)| w.clone())).collect();
    words.sort_by(|u, v| order.compare(v, u));
    words.dedup();
    let col_of: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut rows: Vec<Vec<ParamScalar>> = rels
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let mut v = vec![ParamScalar::zero(); words.len()];
            for (w, c) in p.terms() {
                v[col_of[w]] = c.clone();
            }
            v
        })
        .collect();

    let pivots = rref(&mut rows);
    for (row, &pc) in rows.iter().zip(&pivots) {
        let mut rhs = NCPoly::zero();
        for (c, x) in row.iter().enumerate() {
            if c != pc && !x.is_zero() {
                rhs.add_term(words[c].clone(), x.neg());
            }
        }
        b.rule(words[pc].clone(), rhs)?;
    }
    let pres = b.build()?;
    Ok(QuantumMatrixAlgebra { n, pres: Arc::new(pres), r: r.clone() })
}

/// Reduced row echelon form in place; drops zero rows and returns pivot columns.
fn rref(rows: &mut Vec<Vec<ParamScalar>>) -> Vec<usize> {
    let ncols = rows.first().map(Vec::len).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Permutations of `0..k` with their inversion counts.
fn permutations(k: usize) -> Vec<(Vec<usize>, usize)> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, usize)>) {
        if prefix.len() == used.len() {
            let inv = (0..prefix.len())
                .flat_map(|a| (a + 1..prefix.len()).map(move |b| (a, b)))
                .filter(|&(a, b)| prefix[a] > prefix[b])
                .count();
            out.push((prefix.clone(), inv));
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

fn minus_q_pow(e: i64) -> ParamScalar {
    ParamScalar::q().neg().pow(e as i32).expect("q is invertible")
}

/// Quantum-minor matrix `t̃`; index sets are the complements of `i` and `j`.
pub fn tilde_matrix(qm: &QuantumMatrixAlgebra) -> AlgMatrix {
    let n = qm.n;
    let perms = permutations(n - 1);
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let is: Vec<usize> = (0..n).filter(|&x| x != i).collect();
            let js: Vec<usize> = (0..n).filter(|&x| x != j).collect();
            let mut acc = NCPoly::zero();
            for (sigma, len) in &perms {
                let w = Word::from_gens((0..n - 1).map(|a| t_gen(n, js[a], is[sigma[a]])).collect());
                acc.add_term(w, minus_q_pow(*len as i64));
            }
            let acc = acc.scale(&minus_q_pow(i as i64 - j as i64));
            entries.push(qm.pres.normal_form(&acc));
        }
    }
    AlgMatrix::new(qm.pres.clone(), n, n, entries).expect("n×n entries")
}

/// Verification of `t t̃ = t̃ t = D·I` with `D = (t t̃)₁₁`.
#[derive(Clone, Debug)]
pub struct QuantumDetReport {
    pub det: NCPoly,
    pub right: MatrixCheck,
    pub left: MatrixCheck,
    /// First generator failing to commute with `D`.
    pub non_central: Option<String>,
    /// Whether `D` equals `Σ_σ (−q)^{ℓ(σ)} t_{1σ(1)}…t_{nσ(n)}`.
    pub matches_permutation_sum: bool,
}

impl QuantumDetReport {
    pub fn passed(&self) -> bool {
        self.right.passed() && self.left.passed() && self.non_central.is_none()
    }
}

pub fn quantum_det(qm: &QuantumMatrixAlgebra) -> Result<QuantumDetReport> {
    let n = qm.n;
    let t = qm.t_matrix();
    let tt = tilde_matrix(qm);
    let prod = t.mat_mul(&tt)?;
    let det = prod.get(0, 0).clone();
    let d_id = AlgMatrix::scalar_diag(qm.pres.clone(), n, &det);
    let right = prod.check_equal(&d_id)?;
    let left = tt.mat_mul(&t)?.check_equal(&d_id)?;
    let non_central = qm.pres.non_central_witness(&det).map(|g| qm.pres.gen_name(g).to_string());
    let mut cand = NCPoly::zero();
    for (sigma, len) in permutations(n) {
        let w = Word::from_gens((0..n).map(|a| t_gen(n, a, sigma[a])).collect());
        cand.add_term(w, minus_q_pow(len as i64));
    }
    let matches_permutation_sum = qm.pres.normal_form(&cand) == det;
    Ok(QuantumDetReport { det, right, left, non_central, matches_permutation_sum })
}

/// `A(R)` with the involution `t_{ij}* = t̃_{ji}`.
#[derive(Clone, Debug)]
pub struct StarStructure {
    pub pres: Arc<Presentation>,
    /// Set when the involution table is not involutive or fails on a relation.
    pub anomaly: Option<String>,
}

pub fn star_quantum_matrices(qm: &QuantumMatrixAlgebra) -> Result<StarStructure> {
    let n = qm.n;
    let tt = tilde_matrix(qm);
    let mut b = qm.pres.to_builder(&format!("{}_star", qm.pres.name()));
    for i in 0..n {
        for j in 0..n {
            b.set_involution_image(t_gen(n, i, j), tt.get(j, i).clone());
        }
    }
    let mut pres = b.build()?;
    let report = pres.check_involution()?;
    let mut anomaly = None;
    if !report.passed() {
        let what = if n == 1 {
            "n = 1: t̃ = [1] gives t11* = 1, which is not involutive; t11 is taken self-adjoint instead".to_string()
        } else {
            format!("{report:?}")
        };
        if n != 1 {
            return Err(Error::InvolutionInconsistent(what));
        }
        let mut b = qm.pres.to_builder(&format!("{}_star", qm.pres.name()));
        b.set_involution_image(0, NCPoly::gen(0));
        pres = b.build()?;
        anomaly = Some(what);
    }
    Ok(StarStructure { pres: Arc::new(pres), anomaly })
}

/// The sphere algebra `A(R)[Z]`, `Z` central with `D = 1 − Z²`, and its block projector.
#[derive(Clone, Debug)]
pub struct FrtSphere {
    pub pres: Arc<Presentation>,
    pub projector: AlgMatrix,
    pub t: AlgMatrix,
    pub ttilde: AlgMatrix,
    pub z: NCPoly,
    pub star_anomaly: Option<String>,
}

pub fn sphere_from_frt(qm: &QuantumMatrixAlgebra) -> Result<FrtSphere> {
    let det = quantum_det(qm)?;
    if !det.passed() {
        return Err(Error::NotIdempotent(format!("quantum determinant checks failed: {det:?}")));
    }
    let star = star_quantum_matrices(qm)?;
    let base = star.pres.clone();
    let pres = Arc::new(extend_with_z(&base, &NCPoly::one().sub(&det.det), &format!("frt{}_sphere", qm.n))?);
    let t = qm.t_matrix().transfer(pres.clone())?;
    let ttilde = tilde_matrix(qm).transfer(pres.clone())?;
    let z = pres.gen("Z")?;
    let projector = block_projector(&t, &ttilde, &z)?;
    let check = projector.is_idempotent()?;
    if !check.passed() {
        return Err(Error::NotIdempotent(format!("{} failing entries", check.failures.len())));
    }
    Ok(FrtSphere { pres, projector, t, ttilde, z, star_anomaly: star.anomaly })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprio::{format_element, parse_element};

    #[test]
    fn standard_r_small_cases() {
        let r1 = standard_r(1);
        assert_eq!(*r1.get(0, 0), ParamScalar::q());
        let r2 = standard_r(2);
        let diag: Vec<_> = (0..4).map(|i| r2.get(i, i).clone()).collect();
        assert_eq!(diag, vec![ParamScalar::q(), ParamScalar::one(), ParamScalar::one(), ParamScalar::q()]);
        let off: Vec<_> = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).filter(|&(i, j)| i != j && !r2.get(i, j).is_zero()).collect();
        assert_eq!(off, vec![(2, 1)]);
        assert_eq!(r2.specialize(&Assignment::q(1)).unwrap(), RMatrix::identity(2));
        assert!(r2.is_invertible());
    }

    #[test]
    fn ybe_detects_perturbation() {
        assert!(ybe_check(&RMatrix::identity(2)).passed());
        assert!(ybe_check(&standard_r(2)).passed());
        let mut bad = standard_r(2);
        bad.set(2, 1, ParamScalar::q());
        assert!(!ybe_check(&bad).passed());
    }

    #[test]
    fn rtt_n1_is_trivial() {
        assert!(rtt_relations(&standard_r(1)).iter().all(NCPoly::is_zero));
        let qm = make_quantum_matrix_algebra(&standard_r(1)).unwrap();
        assert!(qm.pres.rules().is_empty());
    }

    #[test]
    fn quantum_2x2_relations() {
        let qm = make_quantum_matrix_algebra(&standard_r(2)).unwrap();
        let p = &qm.pres;
        for rel in ["t11*t12 - q*t12*t11", "t11*t21 - q*t21*t11", "t12*t22 - q*t22*t12", "t21*t22 - q*t22*t21", "t12*t21 - t21*t12", "t11*t22 - t22*t11 - (q - q^-1)*t12*t21"] {
            assert!(parse_element(rel, p).unwrap().is_zero(), "{rel}");
        }
    }

    #[test]
    fn tilde_and_det_n2() {
        let qm = make_quantum_matrix_algebra(&standard_r(2)).unwrap();
        let tt = tilde_matrix(&qm);
        assert_eq!(format_element(&qm.pres, tt.get(0, 0)), "t22");
        assert_eq!(format_element(&qm.pres, tt.get(0, 1)), "-q^-1*t12");
        assert_eq!(format_element(&qm.pres, tt.get(1, 0)), "-q*t21");
        let rep = quantum_det(&qm).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.det.len(), 2);
        let classical = rep.det.specialize(&Assignment::q(1)).unwrap();
        assert_eq!(classical, parse_element("t11*t22 - t12*t21", &qm.pres).unwrap());
    }

    #[test]
    fn star_n2_is_involutive() {
        let qm = make_quantum_matrix_algebra(&standard_r(2)).unwrap();
        let st = star_quantum_matrices(&qm).unwrap();
        assert!(st.anomaly.is_none());
        let t11 = st.pres.gen("t11").unwrap();
        assert_eq!(st.pres.apply_involution(&t11).unwrap(), st.pres.gen("t22").unwrap());
        let t12 = st.pres.gen("t12").unwrap();
        let twice = st.pres.apply_involution(&st.pres.apply_involution(&t12).unwrap()).unwrap();
        assert_eq!(twice, t12);
    }

    #[test]
    fn n1_sphere_and_anomaly() {
        let qm = make_quantum_matrix_algebra(&standard_r(1)).unwrap();
        let st = star_quantum_matrices(&qm).unwrap();
        assert!(st.anomaly.is_some());
        let sp = sphere_from_frt(&qm).unwrap();
        assert_eq!(sp.projector.rows(), 2);
        assert!(sp.projector.is_idempotent().unwrap().passed());
    }

    #[test]
    fn sphere_n2_projector() {
        let qm = make_quantum_matrix_algebra(&standard_r(2)).unwrap();
        let sp = sphere_from_frt(&qm).unwrap();
        assert!(sp.projector.is_idempotent().unwrap().passed());
        assert!(sp.projector.is_self_adjoint().unwrap().passed());
        let classical = sp.projector.specialize(&Assignment::q(1)).unwrap();
        assert!(classical.is_idempotent().unwrap().passed());
    }

    #[test]
    fn permutation_inversions() {
        let ps = permutations(3);
        assert_eq!(ps.len(), 6);
        assert_eq!(ps.iter().map(|p| p.1).sum::<usize>(), 9);
    }
}
