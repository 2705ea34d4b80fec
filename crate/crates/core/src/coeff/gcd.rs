//! Multivariate polynomial gcd over Q[q, p, s].
//!
//! Recursive content/primitive-part scheme with a primitive pseudo-remainder
//! sequence in the main variable. Inputs must have non-negative exponents.

use std::collections::BTreeMap;

use super::laurent::LaurentPoly;

fn lex_lead(p: &LaurentPoly) -> Option<num_rational::BigRational> {
    p.lex_leading().map(|(_, c)| c.clone())
}

/// Scales to coprime integer coefficients with positive lex-leading coefficient.
pub(crate) fn normalize(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return p.clone();
    }
    let u = p.unit_normalizer(lex_lead);
    p.scale(&u)
}

fn split_by(p: &LaurentPoly, v: usize) -> BTreeMap<i32, LaurentPoly> {
    let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut e2 = *e;
        e2[v] = 0;
        out.entry(e[v]).or_default().add_term(e2, c.clone());
    }
    out
}

fn lc_in(p: &LaurentPoly, v: usize) -> (i32, LaurentPoly) {
    let d = p.degree_in(v);
    let mut out = LaurentPoly::zero();
    for (e, c) in p.terms() {
        if e[v] == d {
            let mut e2 = *e;
            e2[v] = 0;
            out.add_term(e2, c.clone());
        }
    }
    (d, out)
}

fn content_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let mut g = LaurentPoly::zero();
    for c in split_by(p, v).into_values() {
        g = gcd(&g, &c);
        if g.as_constant().is_some() && !g.is_zero() {
            return LaurentPoly::one();
        }
    }
    g
}

fn primitive_part(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let c = content_in(p, v);
    let pp = p.div_exact(&c).expect("content divides polynomial");
    normalize(&pp)
}

fn pseudo_rem(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let (db, lb) = lc_in(b, v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let (dr, lr) = lc_in(&r, v);
        let mut sh = [0; 3];
        sh[v] = dr - db;
        r = r.mul(&lb).sub(&b.mul(&lr).shift(sh));
        r = normalize(&r);
    }
    r
}

/// Greatest common divisor, normalized to a primitive integer polynomial with
/// positive lex-leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    debug_assert!(a.is_polynomial() && b.is_polynomial());
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return LaurentPoly::one();
    }
    if a == b {
        return normalize(a);
    }
    // common monomial factor
    let (ma, mb) = (a.min_exps(), b.min_exps());
    let m = [ma[0].min(mb[0]), ma[1].min(mb[1]), ma[2].min(mb[2])];
    if m != [0, 0, 0] {
        let g = gcd(&a.shift([-m[0], -m[1], -m[2]]), &b.shift([-m[0], -m[1], -m[2]]));
        return g.shift(m);
    }
    // a variable present in only one argument reduces to a content gcd
    for v in 0..3 {
        let (da, db) = (a.degree_in(v), b.degree_in(v));
        if da > 0 && db == 0 {
            return gcd(&content_in(a, v), b);
        }
        if db > 0 && da == 0 {
            return gcd(a, &content_in(b, v));
        }
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if large.div_exact(small).is_some() {
        return normalize(small);
    }
    // main variable of least degree keeps the remainder sequence short
    let v = (0..3)
        .filter(|&v| a.degree_in(v) > 0)
        .min_by_key(|&v| (a.degree_in(v).min(b.degree_in(v)), a.degree_in(v).max(b.degree_in(v))))
        .expect("non-constant polynomial has a variable");
    let c = gcd(&content_in(a, v), &content_in(b, v));
    let (mut x, mut y) = (primitive_part(a, v), primitive_part(b, v));
    if x.degree_in(v) < y.degree_in(v) {
        std::mem::swap(&mut x, &mut y);
    }
    let g = loop {
        let r = pseudo_rem(&x, &y, v);
        if r.is_zero() {
            break y;
        }
        if r.degree_in(v) == 0 {
            break LaurentPoly::one();
        }
        x = y;
        y = primitive_part(&r, v);
    };
    normalize(&c.mul(&g))
}

/// Least common multiple (normalized like [`gcd`]).
pub fn lcm(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() || b.is_zero() {
        return LaurentPoly::zero();
    }
    let g = gcd(a, b);
    let l = a.mul(b).div_exact(&g).expect("gcd divides product");
    normalize(&l)
}
