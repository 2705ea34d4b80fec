use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::{gcd, lcm};
use super::laurent::{deglex_cmp, rat, Exps, LaurentPoly, VAR_NAMES};
use crate::error::{Error, Result};

/// Element of the coefficient field Q(q, p, s), `q` and `p` invertible.
///
/// Stored as a reduced fraction. The denominator is a polynomial with no `q`/`p`
/// monomial content, coprime integer coefficients and positive degree-lex leading
/// coefficient, so equal field elements have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParamScalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

fn deglex_lead(p: &LaurentPoly) -> Option<BigRational> {
    p.deglex_leading().map(|(_, c)| c.clone())
}

impl ParamScalar {
    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self { num: LaurentPoly::constant(r), den: LaurentPoly::one() }
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn q() -> Self {
        Self::from_laurent(LaurentPoly::var(0))
    }

    pub fn p() -> Self {
        Self::from_laurent(LaurentPoly::var(1))
    }

    pub fn s() -> Self {
        Self::from_laurent(LaurentPoly::var(2))
    }

    /// `c * q^e[0] p^e[1] s^e[2]`; negative `s` exponents become a denominator.
    pub fn monomial(c: BigRational, e: Exps) -> Self {
        if e[2] < 0 {
            let num = LaurentPoly::monomial(c, [e[0], e[1], 0]);
            let den = LaurentPoly::monomial(BigRational::one(), [0, 0, -e[2]]);
            return Self::from_parts(num, den).expect("nonzero denominator");
        }
        Self::from_laurent(LaurentPoly::monomial(c, e))
    }

    /// Wraps a Laurent polynomial; `s` exponents must be non-negative.
    pub fn from_laurent(num: LaurentPoly) -> Self {
        assert!(num.terms().all(|(e, _)| e[2] >= 0), "negative power of s in numerator");
        Self { num, den: LaurentPoly::one() }
    }

    /// Builds `num / den` in canonical form.
    pub fn from_parts(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        // negative s exponents anywhere are moved to the other side
        let smin = num.min_exps()[2].min(den.min_exps()[2]).min(0);
        let (num, den) = if smin < 0 {
            (num.shift([0, 0, -smin]), den.shift([0, 0, -smin]))
        } else {
            (num, den)
        };
        let dm = den.min_exps();
        let shift_qp = [-dm[0], -dm[1], 0];
        let den = den.shift(shift_qp);
        let num = num.shift(shift_qp);
        if let Some(c) = den.as_constant() {
            return Ok(Self { num: num.scale(&c.recip()), den: LaurentPoly::one() });
        }
        let nm = num.min_exps();
        let nshift = [nm[0], nm[1], 0];
        let mut num_poly = num.shift([-nshift[0], -nshift[1], 0]);
        let mut den = den;
        let g = gcd(&num_poly, &den);
        if !g.is_one() {
            num_poly = num_poly.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
        if let Some(c) = den.as_constant() {
            return Ok(Self { num: num_poly.shift(nshift).scale(&c.recip()), den: LaurentPoly::one() });
        }
        let u = den.unit_normalizer(deglex_lead);
        Ok(Self { num: num_poly.shift(nshift).scale(&u), den: den.scale(&u) })
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value as a rational number when it has no parameter dependence.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    fn den_is_trivial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den_is_trivial() && other.den_is_trivial() {
            return Self { num: self.num.add(&other.num), den: LaurentPoly::one() };
        }
        if self.den == other.den {
            return Self::from_parts(self.num.add(&other.num), self.den.clone()).unwrap();
        }
        let l = lcm(&self.den, &other.den);
        let fa = l.div_exact(&self.den).expect("lcm multiple");
        let fb = l.div_exact(&other.den).expect("lcm multiple");
        Self::from_parts(self.num.mul(&fa).add(&other.num.mul(&fb)), l).unwrap()
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den_is_trivial() && other.den_is_trivial() {
            return Self { num: self.num.mul(&other.num), den: LaurentPoly::one() };
        }
        if let Some(c) = self.as_rational() {
            return Self { num: other.num.scale(&c), den: other.den.clone() };
        }
        if let Some(c) = other.as_rational() {
            return Self { num: self.num.scale(&c), den: self.den.clone() };
        }
        Self::from_parts(self.num.mul(&other.num), self.den.mul(&other.den)).unwrap()
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::from_parts(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// Involution fixing `q`, `s` and rationals, sending `p` to `p^{-1}`.
    pub fn conj(&self) -> Self {
        if !self.involves_p() {
            return self.clone();
        }
        Self::from_parts(self.num.invert_p(), self.den.invert_p()).unwrap()
    }

    fn involves_p(&self) -> bool {
        self.num.terms().chain(self.den.terms()).any(|(e, _)| e[1] != 0)
    }

    /// Substitutes values for some of the parameters.
    pub fn specialize(&self, at: &Assignment) -> Result<Self> {
        for (v, val) in at.values.iter().enumerate() {
            if v < 2 && val.as_ref().map(|x| x.is_zero()).unwrap_or(false) {
                return Err(Error::ZeroParameter { name: VAR_NAMES[v] });
            }
        }
        let den = self.den.substitute(&at.values);
        if den.is_zero() {
            return Err(Error::DenominatorVanishes { assignment: at.to_string() });
        }
        let num = self.num.substitute(&at.values);
        Self::from_parts(num, den)
    }

    /// Numerical value at complex `(q, p, s)`.
    pub fn eval_complex(&self, at: [num_complex::Complex64; 3]) -> Result<num_complex::Complex64> {
        let den = self.den.eval(at);
        if den.norm() == 0.0 {
            return Err(Error::DenominatorVanishes { assignment: format!("q={}, p={}, s={}", at[0], at[1], at[2]) });
        }
        Ok(self.num.eval(at) / den)
    }

    /// Renders the scalar in the expression grammar.
    pub fn to_expr(&self) -> String {
        if self.den.is_one() {
            return self.num.to_string();
        }
        let num = if self.num.is_monomial() {
            self.num.to_string()
        } else {
            format!("({})", self.num)
        };
        format!("{}/({})", num, self.den)
    }

    /// True if the printed form is a single signed monomial or a constant.
    pub fn is_simple(&self) -> bool {
        self.den.is_one() && self.num.is_monomial()
    }

    /// Sign of the leading numerator term, used by formatters.
    pub fn leading_is_negative(&self) -> bool {
        self.num
            .terms()
            .max_by(|a, b| deglex_cmp(a.0, b.0))
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl fmt::Debug for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl Default for ParamScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for ParamScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $call:expr) => {
        impl std::ops::$tr<&ParamScalar> for &ParamScalar {
            type Output = ParamScalar;
            fn $m(self, rhs: &ParamScalar) -> ParamScalar {
                $call(self, rhs)
            }
        }
        impl std::ops::$tr<ParamScalar> for ParamScalar {
            type Output = ParamScalar;
            fn $m(self, rhs: ParamScalar) -> ParamScalar {
                $call(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, ParamScalar::add);
forward_binop!(Sub, sub, ParamScalar::sub);
forward_binop!(Mul, mul, ParamScalar::mul);

impl std::ops::Neg for ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar::neg(&self)
    }
}

impl std::ops::Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar::neg(self)
    }
}

/// Partial assignment of rational values to `q`, `p`, `s`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    values: [Option<BigRational>; 3],
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(mut self, name: char, value: BigRational) -> Result<Self> {
        let v = VAR_NAMES
            .iter()
            .position(|&c| c == name)
            .ok_or_else(|| Error::Unknown(name.to_string()))?;
        if v < 2 && value.is_zero() {
            return Err(Error::ZeroParameter { name });
        }
        self.values[v] = Some(value);
        Ok(self)
    }

    pub fn q(value: i64) -> Self {
        Self::new().set('q', rat(value)).expect("nonzero")
    }

    pub fn is_empty(&self) -> bool {
        self.values.iter().all(|v| v.is_none())
    }

    pub fn get(&self, name: char) -> Option<&BigRational> {
        VAR_NAMES.iter().position(|&c| c == name).and_then(|v| self.values[v].as_ref())
    }

    /// Parses `q=1,s=1/2,p=-1`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Self::new();
        for (off, part) in split_with_offsets(text, ',') {
            let part_t = part.trim();
            if part_t.is_empty() {
                continue;
            }
            let (name, value) = part_t
                .split_once('=')
                .ok_or_else(|| Error::Parse { pos: off, msg: format!("expected name=value in `{part_t}`") })?;
            let name = name.trim();
            let mut chars = name.chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return Err(Error::Parse { pos: off, msg: format!("unknown parameter `{name}`") });
            };
            let value: BigRational = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse { pos: off, msg: format!("bad rational `{}`", value.trim()) })?;
            out = out.set(c, value)?;
        }
        Ok(out)
    }
}

fn split_with_offsets(text: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        if ch == sep {
            out.push((start, &text[start..i]));
            start = i + ch.len_utf8();
        }
    }
    out.push((start, &text[start..]));
    out
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .enumerate()
            .filter_map(|(v, x)| x.as_ref().map(|x| format!("{}={}", VAR_NAMES[v], x)))
            .collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ParamScalar {
        ParamScalar::q()
    }
    fn s() -> ParamScalar {
        ParamScalar::s()
    }
    fn int(n: i64) -> ParamScalar {
        ParamScalar::from_int(n)
    }
    fn one_plus_s2() -> ParamScalar {
        int(1) + s().mul(&s())
    }

    #[test]
    fn additive_identity_and_inverse() {
        let x = q().mul(&s()) + int(3);
        assert_eq!(ParamScalar::zero() + x.clone(), x);
        assert!((q() + q().neg()).is_zero());
    }

    #[test]
    fn fraction_sum_collapses_to_one() {
        let d = one_plus_s2().inv().unwrap();
        let a = d.clone();
        let b = s().mul(&s()).mul(&d);
        assert!((a + b).is_one());
    }

    #[test]
    fn laurent_inverse_and_reciprocal() {
        assert!(q().mul(&q().inv().unwrap()).is_one());
        assert!(one_plus_s2().mul(&one_plus_s2().inv().unwrap()).is_one());
        // (q - q^-1) q = q^2 - 1
        let lhs = (q() - q().inv().unwrap()).mul(&q());
        assert_eq!(lhs, q().pow(2).unwrap() - int(1));
    }

    #[test]
    fn inversion() {
        assert!(int(1).inv().unwrap().is_one());
        assert_eq!(ParamScalar::p().inv().unwrap(), ParamScalar::p().pow(-1).unwrap());
        assert_eq!(ParamScalar::zero().inv(), Err(Error::DivisionByZero));
        let r = one_plus_s2().inv().unwrap();
        assert_eq!(r.denominator(), one_plus_s2().numerator());
        assert!(r.numerator().is_one());
    }

    #[test]
    fn conjugation() {
        let x = q().pow(2).unwrap().mul(&s());
        assert_eq!(x.conj(), x);
        let p = ParamScalar::p();
        assert_eq!(p.conj(), p.inv().unwrap());
        let sym = p.clone() + p.inv().unwrap();
        assert_eq!(sym.conj(), sym);
        let frac = p.clone().div(&(p.clone() + int(2))).unwrap();
        assert_eq!(frac.conj().conj(), frac);
    }

    #[test]
    fn specialization() {
        let a = q().pow(2).unwrap() - int(1);
        assert!(a.specialize(&Assignment::q(1)).unwrap().is_zero());
        let r = one_plus_s2().inv().unwrap();
        let at = Assignment::new().set('s', rat(1)).unwrap();
        assert_eq!(r.specialize(&at).unwrap(), ParamScalar::ratio(1, 2));
        let half = Assignment::parse("q=1/2").unwrap();
        let v = (q() - q().inv().unwrap()).specialize(&half).unwrap();
        assert_eq!(v, ParamScalar::ratio(-3, 2));
    }

    #[test]
    fn specialization_rejects_vanishing_denominator() {
        let x = (q() - int(1)).inv().unwrap();
        match x.specialize(&Assignment::q(1)) {
            Err(Error::DenominatorVanishes { assignment }) => assert_eq!(assignment, "q=1"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Assignment::parse("p=0").is_err());
    }

    #[test]
    fn canonical_denominator_shape() {
        // q / (2 q^3 + 2 q s) = 1 / (2 q^2 + 2 s) -> (1/2) / (q^2 + s)
        let n = q();
        let d = int(2).mul(&q().pow(3).unwrap()) + int(2).mul(&q()).mul(&s());
        let x = n.div(&d).unwrap();
        assert_eq!(x.denominator(), &(q().pow(2).unwrap() + s()).numerator().clone());
        assert_eq!(x.numerator().as_constant(), Some(BigRational::new(1.into(), 2.into())));
        // monomial content moves to numerator
        let y = int(1).div(&(q().mul(&s()) + q())).unwrap();
        assert_eq!(y.numerator(), q().inv().unwrap().numerator());
    }
}
