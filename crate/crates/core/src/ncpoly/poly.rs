use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::coeff::{Assignment, ParamScalar};
use crate::error::Result;

use super::word::{Gen, Word};

/// Finite linear combination of words with coefficients in Q(q, p, s).
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct NCPoly {
    terms: BTreeMap<Word, ParamScalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(ParamScalar::one())
    }

    pub fn scalar(c: ParamScalar) -> Self {
        Self::term(c, Word::empty())
    }

    pub fn int(n: i64) -> Self {
        Self::scalar(ParamScalar::from_int(n))
    }

    pub fn gen(g: Gen) -> Self {
        Self::term(ParamScalar::one(), Word::single(g))
    }

    pub fn word(w: Word) -> Self {
        Self::term(ParamScalar::one(), w)
    }

    pub fn term(c: ParamScalar, w: Word) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, ParamScalar)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (w, c) in it {
            out.add_term(w, c);
        }
        out
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, ParamScalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> ParamScalar {
        self.terms.get(w).cloned().unwrap_or_else(ParamScalar::zero)
    }

    /// Coefficient of the empty word.
    pub fn constant_term(&self) -> ParamScalar {
        self.coeff(&Word::empty())
    }

    /// True if every word is empty (the element is a scalar).
    pub fn as_scalar(&self) -> Option<ParamScalar> {
        match self.terms.len() {
            0 => Some(ParamScalar::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &NCPoly) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> NCPoly {
        Self { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &ParamScalar) -> NCPoly {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Self { terms: self.terms.iter().map(|(w, x)| (w.clone(), x.mul(c))).collect() }
    }

    /// Free-algebra product (concatenation), without reduction.
    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = Self::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), ca.mul(cb));
            }
        }
        out
    }

    /// Drops the empty-word component.
    pub fn without_constant(&self) -> NCPoly {
        let mut out = self.clone();
        out.terms.remove(&Word::empty());
        out
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&ParamScalar) -> Result<ParamScalar>) -> Result<NCPoly> {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Coefficient-wise substitution of parameter values.
    pub fn specialize(&self, at: &Assignment) -> Result<NCPoly> {
        self.map_coeffs(|c| c.specialize(at))
    }

    pub fn uses_gen(&self, g: Gen) -> bool {
        self.terms.keys().any(|w| w.contains_gen(g))
    }
}

impl From<ParamScalar> for NCPoly {
    fn from(c: ParamScalar) -> Self {
        NCPoly::scalar(c)
    }
}
