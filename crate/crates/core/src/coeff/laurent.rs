use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector over the parameters `(q, p, s)`.
pub type Exps = [i32; 3];

pub const VAR_NAMES: [char; 3] = ['q', 'p', 's'];

/// Laurent polynomial in `q`, `p` with polynomial dependence on `s`, rational coefficients.
///
/// Terms are kept in a `BTreeMap` so the representation is canonical: no zero
/// coefficients are ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exps, BigRational>,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Degree-then-lex comparison of exponent vectors.
pub fn deglex_cmp(a: &Exps, b: &Exps) -> Ordering {
    let da: i64 = a.iter().map(|&e| e as i64).sum();
    let db: i64 = b.iter().map(|&e| e as i64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: BigRational, e: Exps) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// The parameter with index `v` (0 = q, 1 = p, 2 = s).
    pub fn var(v: usize) -> Self {
        let mut e = [0; 3];
        e[v] = 1;
        Self::monomial(BigRational::one(), e)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exps, BigRational)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&[0, 0, 0]).map(|c| c.is_one()).unwrap_or(false)
    }

    /// Returns the value if this is a constant (possibly zero).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exps) -> Option<&BigRational> {
        self.terms.get(e)
    }

    pub fn add_term(&mut self, e: Exps, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// Multiplies by the monomial `q^d[0] p^d[1] s^d[2]`.
    pub fn shift(&self, d: Exps) -> Self {
        if d == [0, 0, 0] {
            return self.clone();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ([e[0] + d[0], e[1] + d[1], e[2] + d[2]], c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Per-variable minimum exponent (zeros for the zero polynomial).
    pub fn min_exps(&self) -> Exps {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return [0, 0, 0] };
        let mut m = *first;
        for e in it {
            for v in 0..3 {
                m[v] = m[v].min(e[v]);
            }
        }
        m
    }

    pub fn degree_in(&self, v: usize) -> i32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Leading term in degree-lex order.
    pub fn deglex_leading(&self) -> Option<(&Exps, &BigRational)> {
        self.terms.iter().max_by(|a, b| deglex_cmp(a.0, b.0))
    }

    /// Leading term in pure lex order (the last map entry).
    pub fn lex_leading(&self) -> Option<(&Exps, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Replaces `p` by `p^{-1}`.
    pub fn invert_p(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| ([e[0], -e[1], e[2]], c.clone())).collect() }
    }

    /// Substitutes rational values for a subset of the parameters.
    pub fn substitute(&self, at: &[Option<BigRational>; 3]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut c = c.clone();
            let mut ne = *e;
            for v in 0..3 {
                if let Some(val) = &at[v] {
                    c *= rat_pow(val, e[v]);
                    ne[v] = 0;
                }
            }
            out.add_term(ne, c);
        }
        out
    }

    /// Exact division of polynomials (non-negative exponents). `None` if not divisible.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        debug_assert!(!divisor.is_zero());
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (de, dc) = divisor.lex_leading().map(|(e, c)| (*e, c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((re, rc)) = rem.lex_leading().map(|(e, c)| (*e, c.clone())) {
            let qe = [re[0] - de[0], re[1] - de[1], re[2] - de[2]];
            if qe.iter().any(|&x| x < 0) {
                return None;
            }
            let qc = rc / &dc;
            let term = Self::monomial(qc.clone(), qe);
            rem = rem.sub(&divisor.mul(&term));
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Rational factor `u` such that `self * u` has coprime integer coefficients and
    /// positive leading coefficient under `lead`.
    pub fn unit_normalizer(&self, lead: impl Fn(&Self) -> Option<BigRational>) -> BigRational {
        if self.is_zero() {
            return BigRational::one();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&n);
        }
        let mut u = BigRational::new(den_lcm, num_gcd);
        if lead(self).map(|c| c.is_negative()).unwrap_or(false) {
            u = -u;
        }
        u
    }

    /// Numerical value at complex parameters.
    pub fn eval(&self, at: [num_complex::Complex64; 3]) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = num_complex::Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for v in 0..3 {
                if e[v] != 0 {
                    t *= at[v].powi(e[v]);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn fmt_with_names(&self, f: &mut impl fmt::Write) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| deglex_cmp(b.0, a.0));
        for (i, (e, c)) in ts.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { "-" } else { "+" })?;
            }
            let is_unit_monomial = *e == [0, 0, 0];
            let mut parts: Vec<String> = Vec::new();
            if !a.is_one() || is_unit_monomial {
                parts.push(a.to_string());
            }
            for v in 0..3 {
                match e[v] {
                    0 => {}
                    1 => parts.push(VAR_NAMES[v].to_string()),
                    k => parts.push(format!("{}^{}", VAR_NAMES[v], k)),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

pub(crate) fn rat_pow(x: &BigRational, e: i32) -> BigRational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    let mut out = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        out *= &base;
    }
    out
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.fmt_with_names(&mut s)?;
        f.write_str(&s)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LaurentPoly {
        LaurentPoly::var(0)
    }
    fn s() -> LaurentPoly {
        LaurentPoly::var(2)
    }

    #[test]
    fn exact_division_recovers_factor() {
        let a = q().add(&s()).add(&LaurentPoly::one());
        let b = q().sub(&s().pow(2));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(prod.add(&LaurentPoly::one()).div_exact(&b).is_none());
    }

    #[test]
    fn display_is_deglex_descending() {
        let p = s().pow(2).sub(&LaurentPoly::one());
        assert_eq!(p.to_string(), "s^2-1");
        let m = LaurentPoly::monomial(rat(-3), [-2, 1, 0]);
        assert_eq!(m.to_string(), "-3*q^-2*p");
    }

    #[test]
    fn substitution_handles_negative_exponents() {
        let p = LaurentPoly::monomial(rat(1), [-2, 0, 0]);
        let v = p.substitute(&[Some(BigRational::new(1.into(), 2.into())), None, None]);
        assert_eq!(v.as_constant().unwrap(), rat(4));
    }
}
