//! Chern-Connes character components of idempotent matrices as explicit
//! tensors over normal-form words.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coeff::{one_plus_s2, Assignment, ParamScalar};
use crate::error::{Error, Result};
use crate::exprio::{coeff_text, format_word};
use crate::matrix::AlgMatrix;
use crate::ncpoly::{NCPoly, Presentation, Word};

/// `Σ c · w₁ ⊗ … ⊗ w_{2n+1}` over reduced words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicTensor {
    degree: usize,
    terms: BTreeMap<Vec<Word>, ParamScalar>,
}

impl CyclicTensor {
    pub fn zero(degree: usize) -> Self {
        Self { degree, terms: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of tensor factors, `2n + 1`.
    pub fn arity(&self) -> usize {
        2 * self.degree + 1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, tuple: &[Word]) -> ParamScalar {
        self.terms.get(tuple).cloned().unwrap_or_else(ParamScalar::zero)
    }

    pub fn add_term(&mut self, tuple: Vec<Word>, c: ParamScalar) {
        debug_assert_eq!(tuple.len(), self.arity());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(tuple) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&ParamScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        Self { degree: self.degree, terms: self.terms.iter().map(|(t, x)| (t.clone(), x.mul(c))).collect() }
    }

    /// `a₁ ⊗ a₂ ⊗ …` expanded into the word-tuple basis.
    pub fn from_factors(factors: &[&NCPoly]) -> Self {
        assert!(factors.len() % 2 == 1, "tensors have an odd number of factors");
        let mut partial: Vec<(Vec<Word>, ParamScalar)> = vec![(Vec::new(), ParamScalar::one())];
        for f in factors {
            let mut next = Vec::with_capacity(partial.len() * f.len());
            for (t, c) in &partial {
                for (w, x) in f.terms() {
                    let mut t2 = t.clone();
                    t2.push(w.clone());
                    next.push((t2, c.mul(x)));
                }
            }
            partial = next;
        }
        let mut out = Self::zero(factors.len() / 2);
        for (t, c) in partial {
            out.add_term(t, c);
        }
        out
    }

    /// Whether every tuple satisfies `pred`.
    pub fn support_all(&self, mut pred: impl FnMut(&[Word]) -> bool) -> bool {
        self.terms.keys().all(|t| pred(t))
    }

    /// Terms sorted by descending deglex order on tuples.
    pub fn sorted_terms(&self, pres: &Presentation) -> Vec<(&Vec<Word>, &ParamScalar)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        let order = pres.order();
        ts.sort_by(|a, b| {
            let la: usize = a.0.iter().map(Word::len).sum();
            let lb: usize = b.0.iter().map(Word::len).sum();
            lb.cmp(&la).then_with(|| {
                for (u, v) in a.0.iter().zip(b.0.iter()) {
                    match order.compare(v, u) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
        });
        ts
    }

    /// One `coef * w₁ ⊗ w₂ ⊗ …` line per term; `0` for the zero tensor.
    pub fn format(&self, pres: &Presentation) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.to_rows(pres)
            .into_iter()
            .map(|r| format!("{} * {}", r.coeff, r.factors.join(" ⊗ ")))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_rows(&self, pres: &Presentation) -> Vec<TensorRow> {
        self.sorted_terms(pres)
            .into_iter()
            .map(|(t, c)| {
                let (neg, txt) = coeff_text(c);
                TensorRow {
                    coeff: if neg { format!("-{txt}") } else { txt },
                    factors: t.iter().map(|w| format_word(pres, w)).collect(),
                }
            })
            .collect()
    }
}

/// Machine-readable tensor term.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TensorRow {
    pub coeff: String,
    pub factors: Vec<String>,
}

/// Drops the empty-word component.
pub fn bar_project(a: &NCPoly) -> NCPoly {
    a.without_constant()
}

/// `ch_n` of a square matrix, together with the scalar part that the bar
/// projection removes when `n = 0`.
#[derive(Clone, Debug)]
pub struct ChernComponent {
    pub tensor: CyclicTensor,
    /// Empty-word part of `tr(A − ½)`; zero for `n ≥ 1`.
    pub scalar_part: ParamScalar,
}

impl ChernComponent {
    pub fn is_zero(&self) -> bool {
        self.tensor.is_zero() && self.scalar_part.is_zero()
    }
}

/// Common denominator of all entry coefficients.
fn common_denominator(a: &AlgMatrix) -> ParamScalar {
    let mut den = crate::coeff::LaurentPoly::one();
    for e in a.entries() {
        for (_, c) in e.terms() {
            den = crate::coeff::lcm(&den, c.denominator());
        }
    }
    ParamScalar::from_laurent(den)
}

type TensorTerm = (Vec<Word>, ParamScalar);

/// `Σ (A−½)_{i₁i₂} ⊗ Ā_{i₂i₃} ⊗ … ⊗ Ā_{i_{2n+1}i₁}` with `c_n = 1`.
///
/// Entries are first cleared of denominators so that the expansion only
/// multiplies polynomial coefficients; the factor is restored at the end.
pub fn chern_component(a: &AlgMatrix, n: usize) -> Result<ChernComponent> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("chern_component needs a square matrix".into()));
    }
    let m = a.rows();
    let half = ParamScalar::ratio(1, 2);
    if n == 0 {
        let tr = a.trace().sub(&NCPoly::scalar(half.mul(&ParamScalar::from_int(m as i64))));
        let scalar_part = tr.constant_term();
        let tensor = CyclicTensor::from_factors(&[&bar_project(&tr)]);
        return Ok(ChernComponent { tensor, scalar_part });
    }
    let d = common_denominator(a);
    let first: Vec<NCPoly> = (0..m * m)
        .map(|k| {
            let (i, j) = (k / m, k % m);
            let mut e = a.get(i, j).scale(&d);
            if i == j {
                e = e.sub(&NCPoly::scalar(half.mul(&d)));
            }
            e
        })
        .collect();
    let barred: Vec<NCPoly> = (0..m * m).map(|k| bar_project(&a.get(k / m, k % m).scale(&d))).collect();

    // state[(i₁, i_k)] = partial tensor of the first k factors
    let mut state: BTreeMap<(usize, usize), Vec<TensorTerm>> = BTreeMap::new();
    for i in 0..m {
        for j in 0..m {
            let e = &first[i * m + j];
            if !e.is_zero() {
                state.insert((i, j), e.terms().map(|(w, c)| (vec![w.clone()], c.clone())).collect());
            }
        }
    }
    let arity = 2 * n + 1;
    for step in 1..arity {
        let closing = step == arity - 1;
        let mut next: BTreeMap<(usize, usize), BTreeMap<Vec<Word>, ParamScalar>> = BTreeMap::new();
        for (&(i1, ik), partial) in &state {
            let targets: Vec<usize> = if closing { vec![i1] } else { (0..m).collect() };
            for j in targets {
                let f = &barred[ik * m + j];
                if f.is_zero() {
                    continue;
                }
                let acc = next.entry((i1, j)).or_default();
                for (t, c) in partial {
                    for (w, x) in f.terms() {
                        let mut t2 = t.clone();
                        t2.push(w.clone());
                        let v = c.mul(x);
                        match acc.entry(t2) {
                            std::collections::btree_map::Entry::Vacant(e) => {
                                e.insert(v);
                            }
                            std::collections::btree_map::Entry::Occupied(mut e) => {
                                let s = e.get().add(&v);
                                *e.get_mut() = s;
                            }
                        }
                    }
                }
            }
        }
        state = next
            .into_iter()
            .map(|(k, acc)| (k, acc.into_iter().filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>()))
            .filter(|(_, v)| !v.is_empty())
            .collect();
    }
    let mut tensor = CyclicTensor::zero(n);
    for (_, partial) in state {
        for (t, c) in partial {
            tensor.add_term(t, c);
        }
    }
    let restore = d.pow(-(arity as i32))?;
    Ok(ChernComponent { tensor: tensor.scale(&restore), scalar_part: ParamScalar::zero() })
}

/// `λ` with `t1 = λ·t2`, if one exists. Zero against zero gives `λ = 1`.
pub fn proportional_to(t1: &CyclicTensor, t2: &CyclicTensor) -> Option<ParamScalar> {
    if t1.degree != t2.degree {
        return None;
    }
    if t1.is_zero() && t2.is_zero() {
        return Some(ParamScalar::one());
    }
    let (tuple, c2) = t2.terms.iter().next()?;
    let c1 = t1.terms.get(tuple)?;
    let lambda = c1.div(c2).ok()?;
    (t2.scale(&lambda) == *t1).then_some(lambda)
}

/// Coefficient-wise specialization; terms that vanish are dropped.
pub fn tensor_specialize(t: &CyclicTensor, at: &Assignment) -> Result<CyclicTensor> {
    let mut out = CyclicTensor::zero(t.degree);
    for (tuple, c) in &t.terms {
        out.add_term(tuple.clone(), c.specialize(at)?);
    }
    Ok(out)
}

/// The displayed `ch₁` of `e`:
/// `(q²−1)/(1+s²)³ (ζ⊗(U⊗V − V⊗U) + U⊗(V⊗ζ − ζ⊗V) + V⊗(ζ⊗U − U⊗ζ))`.
pub fn displayed_ch1_e(pres: &Presentation) -> Result<CyclicTensor> {
    let (z, u, v) = (pres.gen("zeta")?, pres.gen("U")?, pres.gen("V")?);
    let mut t = CyclicTensor::zero(1);
    for (a, b, c) in [(&z, &u, &v), (&u, &v, &z), (&v, &z, &u)] {
        t = t.add(&CyclicTensor::from_factors(&[a, b, c]));
        t = t.sub(&CyclicTensor::from_factors(&[a, c, b]));
    }
    let q2m1 = ParamScalar::q().mul(&ParamScalar::q()).sub(&ParamScalar::one());
    let k = q2m1.div(&one_plus_s2().pow(3)?)?;
    Ok(t.scale(&k))
}

/// `Σᵢⱼ t⊗(t̃⊗Z − Z⊗t̃) + t̃⊗(Z⊗t − t⊗Z) + Z⊗(t⊗t̃ − t̃⊗t)` with `t = t_ij`,
/// `t̃ = t̃_ji`; the second and third factors are bar-projected.
pub fn block_ch1_expression(t: &AlgMatrix, ttilde: &AlgMatrix, z: &NCPoly) -> CyclicTensor {
    let n = t.rows();
    let zb = bar_project(z);
    let mut out = CyclicTensor::zero(1);
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (t.get(i, j), ttilde.get(j, i));
            let (ab, bb) = (bar_project(a), bar_project(b));
            let plus = [[a, &bb, &zb], [b, &zb, &ab], [z, &ab, &bb]];
            let minus = [[a, &zb, &bb], [b, &ab, &zb], [z, &bb, &ab]];
            for f in plus {
                out = out.add(&CyclicTensor::from_factors(&f));
            }
            for f in minus {
                out = out.sub(&CyclicTensor::from_factors(&f));
            }
        }
    }
    out
}

/// Every tuple has total length 3 and uses only the named generators.
pub fn supported_in_degree(t: &CyclicTensor, pres: &Arc<Presentation>, degree: usize, gens: &[&str]) -> bool {
    let allowed: Vec<_> = gens.iter().filter_map(|g| pres.gen_index(g)).collect();
    t.support_all(|tuple| {
        tuple.iter().map(Word::len).sum::<usize>() == degree
            && tuple.iter().all(|w| w.letters().iter().all(|g| allowed.contains(g)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprio::{parse_element, parse_matrix};
    use crate::presentations::{catalog_projector, make_sphere4};

    #[test]
    fn bar_projection_drops_constants() {
        let p = make_sphere4();
        assert!(bar_project(&NCPoly::one()).is_zero());
        let a = parse_element("1 - zeta", &p).unwrap();
        assert_eq!(bar_project(&a), parse_element("-zeta", &p).unwrap());
    }

    #[test]
    fn constant_matrices_have_no_higher_components() {
        let p = Arc::new(make_sphere4());
        let m = parse_matrix("[[1, 0], [0, 0]]", &p).unwrap();
        assert!(chern_component(&m, 1).unwrap().is_zero());
        let c0 = chern_component(&m, 0).unwrap();
        assert!(c0.tensor.is_zero() && c0.scalar_part.is_zero());
    }

    #[test]
    fn ch0_of_e_vanishes() {
        let e = catalog_projector("e").unwrap();
        assert!(chern_component(&e, 0).unwrap().is_zero());
    }

    #[test]
    fn proportionality() {
        let p = make_sphere4();
        let z = p.gen("zeta").unwrap();
        let u = p.gen("U").unwrap();
        let t = CyclicTensor::from_factors(&[&z, &u, &z]);
        let two = ParamScalar::from_int(2);
        assert_eq!(proportional_to(&t.scale(&two), &t), Some(two));
        let other = CyclicTensor::from_factors(&[&u, &u, &u]);
        assert_eq!(proportional_to(&t, &other), None);
        assert_eq!(proportional_to(&CyclicTensor::zero(1), &CyclicTensor::zero(1)), Some(ParamScalar::one()));
    }

    #[test]
    fn brute_force_matches_dp() {
        // direct sum over all index tuples for a 2x2 matrix
        let p = Arc::new(make_sphere4());
        let m = parse_matrix("[[1/2 + zeta/3, xi], [-eta, U + 2]]", &p).unwrap();
        let got = chern_component(&m, 1).unwrap().tensor;
        let mut want = CyclicTensor::zero(1);
        let half = NCPoly::scalar(ParamScalar::ratio(1, 2));
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let mut f0 = m.get(i, j).clone();
                    if i == j {
                        f0 = f0.sub(&half);
                    }
                    let f1 = bar_project(m.get(j, k));
                    let f2 = bar_project(m.get(k, i));
                    want = want.add(&CyclicTensor::from_factors(&[&f0, &f1, &f2]));
                }
            }
        }
        assert_eq!(got, want);
    }
}

