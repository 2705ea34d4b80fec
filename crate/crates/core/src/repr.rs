//! Numerical check of the representations `π_{c,±}` of the *-presentation on a
//! truncated basis `|k, l⟩`, `0 ≤ k < K`, `−L ≤ l ≤ L`.
//!
//! Convention: `ζ|k,l⟩ = α q^{2k}|k,l⟩`, `ξ|k,l⟩ = p^l ω_{k+1}|k+1,l⟩`,
//! `ξ*|k,l⟩ = p^{−l} ω_k|k−1,l⟩`, `U|k,l⟩ = c|k,l+1⟩`, `U*|k,l⟩ = c̄|k,l−1⟩`.
//! Basis vector `|k, l⟩` has index `k·(2L+1) + (l+L)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ncpoly::{NCPoly, Presentation};
use crate::presentations::{make_sphere4, make_sphere4_star, PROJECTOR_E};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ReprParams {
    pub q: f64,
    pub s: f64,
    pub c: Complex64,
    pub theta: f64,
    pub sign: Sign,
    /// Number of `k` levels.
    pub k: usize,
    /// `l` ranges over `−L..=L`.
    pub l: usize,
}

impl Default for ReprParams {
    fn default() -> Self {
        Self { q: 0.5, s: 1.0, c: Complex64::new(0.3, 0.0), theta: 0.1, sign: Sign::Plus, k: 30, l: 10 }
    }
}

/// Slack allowed on `|c| ≤ s`.
const DOMAIN_TOL: f64 = 1e-12;

impl ReprParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.q.abs() > 0.0 && self.q.abs() < 1.0) {
            return Err(Error::Domain(format!("need 0 < |q| < 1, got q = {}", self.q)));
        }
        if !(self.s > 0.0 && self.s <= 1.0) {
            return Err(Error::Domain(format!("need 0 < s <= 1, got s = {}", self.s)));
        }
        if self.c.norm() > self.s + DOMAIN_TOL {
            return Err(Error::Domain(format!("need |c| <= s, got |c| = {} > s = {}", self.c.norm(), self.s)));
        }
        if !(0.0..1.0).contains(&self.theta) {
            return Err(Error::Domain(format!("need 0 <= theta < 1, got {}", self.theta)));
        }
        if self.k < 2 || self.l < 2 {
            return Err(Error::Domain("truncations K and L must be at least 2".into()));
        }
        Ok(())
    }

    pub fn p(&self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * self.theta)
    }

    pub fn alpha(&self) -> Result<f64> {
        let (ap, am) = alpha_pm(self.s, self.c.norm())?;
        Ok(match self.sign {
            Sign::Plus => ap,
            Sign::Minus => am,
        })
    }

    pub fn dim(&self) -> usize {
        self.k * self.width()
    }

    fn width(&self) -> usize {
        2 * self.l + 1
    }

    pub fn index(&self, k: usize, l: i64) -> usize {
        k * self.width() + (l + self.l as i64) as usize
    }

    pub fn coords(&self, idx: usize) -> (usize, i64) {
        (idx / self.width(), (idx % self.width()) as i64 - self.l as i64)
    }

    /// Basis vectors with `k ≤ K−2` and `|l| ≤ L−1`.
    pub fn interior(&self) -> Vec<usize> {
        let l = self.l as i64 - 1;
        (0..self.k - 1).flat_map(|k| (-l..=l).map(move |ll| (k, ll))).map(|(k, ll)| self.index(k, ll)).collect()
    }
}

/// `α± = ½(1 − s² ± √((s²+1)² − 4|c|²))`, `α₊ ≥ α₋`.
pub fn alpha_pm(s: f64, c_abs: f64) -> Result<(f64, f64)> {
    let disc = (s * s + 1.0).powi(2) - 4.0 * c_abs * c_abs;
    if disc < -DOMAIN_TOL {
        return Err(Error::Domain(format!("alpha is complex: (s^2+1)^2 - 4|c|^2 = {disc}")));
    }
    let r = disc.max(0.0).sqrt();
    Ok((0.5 * (1.0 - s * s + r), 0.5 * (1.0 - s * s - r)))
}

/// `(1 − α q^{2k})(s² + α q^{2k}) − |c|²`, evaluated as `(α₊ − x)(x − α₋)` with
/// `x = α q^{2k}` when the roots are real, so that it vanishes exactly at `x = α±`.
pub fn radicand(k: usize, alpha: f64, s: f64, c_abs: f64, q: f64) -> f64 {
    let x = alpha * q.powi(2 * k as i32);
    match alpha_pm(s, c_abs) {
        Ok((ap, am)) => (ap - x) * (x - am),
        Err(_) => (1.0 - x) * (s * s + x) - c_abs * c_abs,
    }
}

/// `ω_k`, with radicands in `[−tol, 0)` clamped to zero.
pub fn omega(k: usize, alpha: f64, s: f64, c_abs: f64, q: f64, tol: f64) -> Result<f64> {
    let r = radicand(k, alpha, s, c_abs, q);
    if r < -tol {
        return Err(Error::Domain(format!("radicand {r} < 0 at k = {k}")));
    }
    Ok(r.max(0.0).sqrt())
}

pub type SparseVec = BTreeMap<usize, Complex64>;

/// Operator stored by columns.
#[derive(Clone, Debug)]
pub struct SparseOp {
    pub name: String,
    cols: Vec<Vec<(usize, Complex64)>>,
}

impl SparseOp {
    fn new(name: &str, dim: usize) -> Self {
        Self { name: name.to_string(), cols: vec![Vec::new(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    fn push(&mut self, row: usize, col: usize, v: Complex64) {
        if v != Complex64::new(0.0, 0.0) {
            self.cols[col].push((row, v));
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&j, x) in v {
            for &(i, a) in &self.cols[j] {
                *out.entry(i).or_default() += a * x;
            }
        }
        out
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.cols[col].iter().filter(|(r, _)| *r == row).map(|(_, v)| *v).sum()
    }

    pub fn scaled(&self, name: &str, c: Complex64) -> Self {
        Self { name: name.to_string(), cols: self.cols.iter().map(|col| col.iter().map(|&(r, v)| (r, v * c)).collect()).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self, name: &str) -> Self {
        let mut out = Self::new(name, self.dim());
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                out.push(j, i, v.conj());
            }
        }
        out
    }
}

/// The truncated operators `U, U*, ζ, ξ, ξ*`.
#[derive(Clone, Debug)]
pub struct Operators {
    pub params: ReprParams,
    pub alpha: f64,
    pub u: SparseOp,
    pub u_star: SparseOp,
    pub zeta: SparseOp,
    pub xi: SparseOp,
    pub xi_star: SparseOp,
}

impl Operators {
    /// Looks up the operator for a generator name of `sphere4_star` or `sphere4`
    /// (`eta = −ξ*`, `V = U*`).
    pub fn by_name(&self, name: &str) -> Option<SparseOp> {
        Some(match name {
            "U" => self.u.clone(),
            "U_star" | "V" => self.u_star.clone(),
            "zeta" => self.zeta.clone(),
            "xi" => self.xi.clone(),
            "xi_star" => self.xi_star.clone(),
            "eta" => self.xi_star.scaled("eta", Complex64::new(-1.0, 0.0)),
            _ => return None,
        })
    }
}

pub fn build_operators(p: &ReprParams) -> Result<Operators> {
    p.validate()?;
    let alpha = p.alpha()?;
    let dim = p.dim();
    let pp = p.p();
    let c_abs = p.c.norm();
    let omegas: Vec<f64> = (0..=p.k).map(|k| omega(k, alpha, p.s, c_abs, p.q, 1e-12)).collect::<Result<_>>()?;
    let mut u = SparseOp::new("U", dim);
    let mut zeta = SparseOp::new("zeta", dim);
    let mut xi = SparseOp::new("xi", dim);
    for idx in 0..dim {
        let (k, l) = p.coords(idx);
        if l < p.l as i64 {
            u.push(p.index(k, l + 1), idx, p.c);
        }
        zeta.push(idx, idx, Complex64::new(alpha * p.q.powi(2 * k as i32), 0.0));
        if k + 1 < p.k {
            xi.push(p.index(k + 1, l), idx, pp.powi(l as i32) * omegas[k + 1]);
        }
    }
    let u_star = u.adjoint("U_star");
    let xi_star = xi.adjoint("xi_star");
    Ok(Operators { params: *p, alpha, u, u_star, zeta, xi, xi_star })
}

fn basis(idx: usize) -> SparseVec {
    SparseVec::from([(idx, Complex64::new(1.0, 0.0))])
}

fn max_abs(v: &SparseVec) -> f64 {
    v.values().map(|x| x.norm()).fold(0.0, f64::max)
}

fn add_scaled(acc: &mut SparseVec, v: &SparseVec, c: Complex64) {
    for (&i, x) in v {
        *acc.entry(i).or_default() += c * x;
    }
}

/// Evaluates elements of a presentation as operators.
pub struct Evaluator<'a> {
    pres: &'a Presentation,
    gen_ops: Vec<SparseOp>,
    at: [Complex64; 3],
}

impl<'a> Evaluator<'a> {
    /// Generators are mapped through [`Operators::by_name`].
    pub fn new(pres: &'a Presentation, ops: &Operators) -> Result<Self> {
        let pr = &ops.params;
        let gen_ops = pres
            .generators()
            .iter()
            .map(|n| ops.by_name(n).ok_or_else(|| Error::Unknown(n.clone())))
            .collect::<Result<_>>()?;
        Ok(Self { pres, gen_ops, at: [Complex64::new(pr.q, 0.0), pr.p(), Complex64::new(pr.s, 0.0)] })
    }

    pub fn apply(&self, a: &NCPoly, v: &SparseVec) -> Result<SparseVec> {
        let mut out = SparseVec::new();
        for (w, c) in a.terms() {
            let mut x = v.clone();
            for &g in w.letters().iter().rev() {
                x = self.gen_ops[g as usize].apply(&x);
            }
            add_scaled(&mut out, &x, c.eval_complex(self.at)?);
        }
        Ok(out)
    }

    /// The truncated operator of `a`, column by column.
    pub fn operator(&self, a: &NCPoly) -> Result<SparseOp> {
        let dim = self.gen_ops.first().map(SparseOp::dim).unwrap_or(0);
        let mut op = SparseOp::new(&crate::exprio::format_element(self.pres, a), dim);
        for j in 0..dim {
            for (i, v) in self.apply(a, &basis(j))? {
                op.push(i, j, v);
            }
        }
        Ok(op)
    }

    /// Largest entry of `a` applied to the interior basis vectors.
    pub fn interior_residual(&self, a: &NCPoly, interior: &[usize]) -> Result<f64> {
        let mut worst = 0.0f64;
        for &j in interior {
            worst = worst.max(max_abs(&self.apply(a, &basis(j))?));
        }
        Ok(worst)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationResidual {
    pub relation: String,
    pub residual: f64,
}

/// Residual of every defining relation of `sphere4_star` on the interior.
pub fn relation_residuals(p: &ReprParams) -> Result<Vec<RelationResidual>> {
    let ops = build_operators(p)?;
    let pres = make_sphere4_star();
    let ev = Evaluator::new(&pres, &ops)?;
    let interior = p.interior();
    pres.rules()
        .iter()
        .map(|r| {
            let rel = r.as_relation();
            Ok(RelationResidual {
                relation: format!("{} = {}", crate::exprio::format_word(&pres, &r.lhs), crate::exprio::format_element(&pres, &r.rhs)),
                residual: ev.interior_residual(&rel, &interior)?,
            })
        })
        .collect()
}

/// Residual of `ξξ* + (ζ−1)(ζ+s²) + UU* = 0` on `|0, l⟩` under the literal
/// reading `ζ|k⟩ = α q^{2(k−1)}`, `ξ*|k+1⟩ = p^{−l} ω_k|k⟩` with `k ≥ 0`.
pub fn literal_convention_k0_residual(p: &ReprParams) -> Result<f64> {
    p.validate()?;
    let alpha = p.alpha()?;
    let z = alpha / (p.q * p.q);
    // ξ* annihilates |0, l⟩ in this reading, so only the scalar part survives.
    Ok(((z - 1.0) * (z + p.s * p.s) + p.c.norm_sqr()).abs())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProjectorResidual {
    pub idempotent: f64,
    pub self_adjoint: f64,
}

/// `e` under `π` with `η = −ξ*`, `V = U*`: `max|e² − e|` and `max|e − e*|` on the interior.
pub fn check_projector_numeric(p: &ReprParams) -> Result<ProjectorResidual> {
    let ops = build_operators(p)?;
    let pres = make_sphere4();
    let ev = Evaluator::new(&pres, &ops)?;
    let e = crate::exprio::parse_matrix(PROJECTOR_E, &std::sync::Arc::new(pres.clone()))?;
    let n = e.rows();
    let ent: Vec<SparseOp> = e.entries().iter().map(|x| ev.operator(x)).collect::<Result<_>>()?;
    let interior = p.interior();
    let mut idem = 0.0f64;
    let mut sa = 0.0f64;
    for a in 0..n {
        for c in 0..n {
            let adj = ent[c * n + a].adjoint("adj");
            for &j in &interior {
                let v = basis(j);
                let direct = ent[a * n + c].apply(&v);
                let mut acc = SparseVec::new();
                add_scaled(&mut acc, &direct, Complex64::new(-1.0, 0.0));
                for b in 0..n {
                    add_scaled(&mut acc, &ent[a * n + b].apply(&ent[b * n + c].apply(&v)), Complex64::new(1.0, 0.0));
                }
                idem = idem.max(max_abs(&acc));
                let mut diff = direct.clone();
                add_scaled(&mut diff, &adj.apply(&v), Complex64::new(-1.0, 0.0));
                sa = sa.max(max_abs(&diff));
            }
        }
    }
    Ok(ProjectorResidual { idempotent: idem, self_adjoint: sa })
}

/// Eigenvalues `α q^{2k}` of `ζ`.
pub fn zeta_spectrum(p: &ReprParams) -> Result<Vec<f64>> {
    p.validate()?;
    let alpha = p.alpha()?;
    Ok((0..p.k).map(|k| alpha * p.q.powi(2 * k as i32)).collect())
}

/// `k, zeta, omega` rows for the CSV dump.
pub fn spectrum_csv(p: &ReprParams) -> Result<String> {
    let alpha = p.alpha()?;
    let mut out = String::from("k,zeta,radicand,omega\n");
    for k in 0..p.k {
        let r = radicand(k, alpha, p.s, p.c.norm(), p.q);
        let w = omega(k, alpha, p.s, p.c.norm(), p.q, 1e-12)?;
        out.push_str(&format!("{},{:.17e},{:.17e},{:.17e}\n", k, alpha * p.q.powi(2 * k as i32), r, w));
    }
    Ok(out)
}

/// Smallest radicand over `k = 1..k_max` for both signs of `α`.
pub fn min_radicand(s: f64, c_abs: f64, q: f64, k_max: usize) -> Result<f64> {
    let (ap, am) = alpha_pm(s, c_abs)?;
    Ok([ap, am]
        .iter()
        .flat_map(|&a| (1..=k_max).map(move |k| radicand(k, a, s, c_abs, q)))
        .fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_examples() {
        let (a, b) = alpha_pm(1.0, 0.0).unwrap();
        assert!((a - 1.0).abs() < 1e-15 && (b + 1.0).abs() < 1e-15);
        let (a, b) = alpha_pm(1.0, 1.0).unwrap();
        assert!(a.abs() < 1e-15 && b.abs() < 1e-15);
        for (s, c) in [(0.7, 0.2), (1.0, 0.3), (0.4, 0.4)] {
            let (a, b) = alpha_pm(s, c).unwrap();
            assert!((a + b - (1.0 - s * s)).abs() < 1e-12);
            assert!((a * b - (c * c - s * s)).abs() < 1e-12);
        }
    }

    #[test]
    fn omega_examples() {
        let w = omega(1, 1.0, 1.0, 0.0, 0.5, 1e-12).unwrap();
        assert!((w - 0.9375f64.sqrt()).abs() < 1e-14);
        let (a, _) = alpha_pm(0.8, 0.5).unwrap();
        assert_eq!(omega(0, a, 0.8, 0.5, 0.5, 1e-12).unwrap(), 0.0);
        let x = a * 0.25;
        let expanded = (1.0 - x) * (0.64 + x) - 0.25;
        assert!((radicand(1, a, 0.8, 0.5, 0.5) - expanded).abs() < 1e-14);
        // |c| = s: radicand tends to s² − |c|² = 0
        let (_, am) = alpha_pm(0.6, 0.6).unwrap();
        assert!(radicand(60, am, 0.6, 0.6, 0.5).abs() < 1e-12);
    }

    #[test]
    fn operators_shape() {
        let p = ReprParams { k: 5, l: 3, ..Default::default() };
        let ops = build_operators(&p).unwrap();
        for l in -3..=3 {
            assert!(ops.xi_star.apply(&basis(p.index(0, l))).values().all(|x| x.norm() == 0.0));
        }
        let j = p.index(2, 1);
        let uu = ops.u_star.apply(&ops.u.apply(&basis(j)));
        assert!((uu[&j] - Complex64::new(0.09, 0.0)).norm() < 1e-15);
        assert!((ops.zeta.entry(j, j).re - ops.alpha * 0.5f64.powi(4)).abs() < 1e-15);
    }

    #[test]
    fn residuals_vanish_with_c_zero() {
        let p = ReprParams { c: Complex64::new(0.0, 0.0), k: 8, l: 3, ..Default::default() };
        for r in relation_residuals(&p).unwrap() {
            assert!(r.residual < 1e-12, "{r:?}");
        }
    }

    #[test]
    fn degenerate_alpha_residuals() {
        let p = ReprParams { c: Complex64::new(1.0, 0.0), k: 8, l: 3, ..Default::default() };
        for r in relation_residuals(&p).unwrap() {
            assert!(r.residual < 1e-10, "{r:?}");
        }
    }

    #[test]
    fn domain_errors() {
        let p = ReprParams { c: Complex64::new(1.5, 0.0), ..Default::default() };
        assert!(matches!(p.validate(), Err(Error::Domain(_))));
        assert!(ReprParams { q: 1.0, ..Default::default() }.validate().is_err());
    }

    #[test]
    fn literal_reading_breaks_at_bottom() {
        assert!(literal_convention_k0_residual(&ReprParams::default()).unwrap() > 1e-3);
    }
}
