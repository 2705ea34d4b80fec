//! Shared generators and property runners for the integration suites.
#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ncsphere::coeff::{one_plus_s2, ParamScalar};
use ncsphere::exprio::{format_element, parse_element, parse_scalar};
use ncsphere::matrix::AlgMatrix;
use ncsphere::ncpoly::{NCPoly, Presentation, PresentationBuilder, Word};
use ncsphere::presentations::{extend_with_z, make_sphere2, make_sphere4};

pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn monomial(c: i64, e: [i32; 3]) -> ParamScalar {
    ParamScalar::monomial(BigRational::from_integer(BigInt::from(c)), e)
}

fn denominators() -> Vec<ParamScalar> {
    let (q, p, s) = (ParamScalar::q(), ParamScalar::p(), ParamScalar::s());
    vec![
        ParamScalar::one(),
        one_plus_s2(),
        q.add(&s),
        ParamScalar::one().add(&q.mul(&q)),
        p.add(&ParamScalar::one()),
        ParamScalar::from_int(2).sub(&s),
    ]
}

/// Random elements of Q(q, p, s): a small Laurent numerator over one of a few denominators.
pub fn scalar_strategy() -> impl Strategy<Value = ParamScalar> {
    let term = (-4i64..=4, -2i32..=2, -1i32..=1, 0i32..=2);
    (prop::collection::vec(term, 0..4), 0usize..6).prop_map(|(terms, d)| {
        let mut num = ParamScalar::zero();
        for (c, a, b, e) in terms {
            num = num.add(&monomial(c, [a, b, e]));
        }
        num.div(&denominators()[d]).expect("denominators are nonzero")
    })
}

/// Coefficients for algebra elements: integers, parameter monomials, and `1/(1+s²)`.
fn coeff_strategy() -> impl Strategy<Value = ParamScalar> {
    (-3i64..=3, -1i32..=1, -1i32..=1, 0i32..=1, any::<bool>()).prop_map(|(c, a, b, e, frac)| {
        let m = monomial(if c == 0 { 1 } else { c }, [a, b, e]);
        if frac {
            m.div(&one_plus_s2()).unwrap()
        } else {
            m
        }
    })
}

/// Raw terms; generator indices are reduced modulo the presentation size.
pub fn raw_element_strategy() -> impl Strategy<Value = Vec<(ParamScalar, Vec<u16>)>> {
    prop::collection::vec((coeff_strategy(), prop::collection::vec(0u16..16, 0..4)), 0..4)
}

pub fn build_element(pres: &Presentation, raw: &[(ParamScalar, Vec<u16>)]) -> NCPoly {
    let n = pres.num_gens() as u16;
    let mut a = NCPoly::zero();
    for (c, w) in raw {
        a.add_term(Word::from_gens(w.iter().map(|g| g % n).collect()), c.clone());
    }
    a
}

fn catalog_pair() -> [Presentation; 2] {
    [make_sphere2(), make_sphere4()]
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

pub fn field_axioms(cases: u32) -> Result<(), String> {
    let strat = (scalar_strategy(), scalar_strategy(), scalar_strategy());
    runner(cases)
        .run(&strat, |(a, b, c)| {
            check(a.add(&b).add(&c) == a.add(&b.add(&c)), || "addition is not associative".into())?;
            check(a.add(&b) == b.add(&a), || "addition is not commutative".into())?;
            check(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), || "multiplication is not associative".into())?;
            check(a.mul(&b) == b.mul(&a), || "multiplication is not commutative".into())?;
            check(a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c)), || "distributivity fails".into())?;
            check(a.add(&ParamScalar::zero()) == a && a.mul(&ParamScalar::one()) == a, || "identities fail".into())?;
            check(a.sub(&a).is_zero(), || "a - a != 0".into())?;
            if !a.is_zero() {
                check(a.mul(&a.inv().unwrap()).is_one(), || format!("{a} * {a}^-1 != 1"))?;
            }
            check(a.conj().conj() == a, || "conj is not involutive".into())?;
            check(a.mul(&b).conj() == a.conj().mul(&b.conj()), || "conj is not multiplicative".into())?;
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn nf_idempotent(cases: u32) -> Result<(), String> {
    let pres = catalog_pair();
    runner(cases)
        .run(&(any::<bool>(), raw_element_strategy()), |(which, raw)| {
            let p = &pres[which as usize];
            let nf = p.normal_form(&build_element(p, &raw));
            check(p.normal_form(&nf) == nf, || "nf(nf(a)) != nf(a)".into())?;
            let reduced = nf.terms().all(|(w, _)| p.is_reduced_word(w));
            check(reduced, || "nf contains a reducible word".into())
        })
        .map_err(|e| e.to_string())
}

pub fn nf_linear(cases: u32) -> Result<(), String> {
    let pres = catalog_pair();
    let strat = (any::<bool>(), raw_element_strategy(), raw_element_strategy(), coeff_strategy());
    runner(cases)
        .run(&strat, |(which, ra, rb, c)| {
            let p = &pres[which as usize];
            let (a, b) = (build_element(p, &ra), build_element(p, &rb));
            let lhs = p.normal_form(&a.add(&b.scale(&c)));
            let rhs = p.normal_form(&a).add(&p.normal_form(&b).scale(&c));
            check(lhs == rhs, || "nf is not linear".into())
        })
        .map_err(|e| e.to_string())
}

pub fn nf_associative(cases: u32) -> Result<(), String> {
    let pres = catalog_pair();
    let strat = (any::<bool>(), raw_element_strategy(), raw_element_strategy(), raw_element_strategy());
    runner(cases)
        .run(&strat, |(which, ra, rb, rc)| {
            let p = &pres[which as usize];
            let (a, b, c) = (build_element(p, &ra), build_element(p, &rb), build_element(p, &rc));
            let lhs = p.mul(&p.mul(&a, &b), &c);
            let rhs = p.mul(&a, &p.mul(&b, &c));
            check(lhs == rhs, || "reduced product is not associative".into())
        })
        .map_err(|e| e.to_string())
}

pub fn parser_round_trip(cases: u32) -> Result<(), String> {
    let pres = catalog_pair();
    runner(cases)
        .run(&(any::<bool>(), raw_element_strategy(), scalar_strategy()), |(which, raw, c)| {
            let p = &pres[which as usize];
            let nf = p.normal_form(&build_element(p, &raw));
            let text = format_element(p, &nf);
            let back = parse_element(&text, p).map_err(|e| TestCaseError::fail(format!("`{text}`: {e}")))?;
            check(back == nf, || format!("round trip changed `{text}`"))?;
            let ctext = c.to_expr();
            let cback = parse_scalar(&ctext).map_err(|e| TestCaseError::fail(format!("`{ctext}`: {e}")))?;
            check(cback == c, || format!("scalar round trip changed `{ctext}`"))
        })
        .map_err(|e| e.to_string())
}

/// Commuting generators `g1 < g2 < g3`.
pub fn commutative_base(k: usize) -> Presentation {
    let names: Vec<String> = (1..=k).map(|i| format!("g{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut b = PresentationBuilder::with_generators("commutative", &refs);
    for i in 0..k as u16 {
        for j in i + 1..k as u16 {
            b.relation(&NCPoly::gen(j).mul(&NCPoly::gen(i)), &NCPoly::gen(i).mul(&NCPoly::gen(j))).unwrap();
        }
    }
    b.build().unwrap()
}

/// Determinant by cofactor expansion along the first row (commutative entries).
pub fn det(pres: &Presentation, m: &[Vec<NCPoly>]) -> NCPoly {
    let n = m.len();
    if n == 0 {
        return NCPoly::one();
    }
    let mut acc = NCPoly::zero();
    for j in 0..n {
        let minor: Vec<Vec<NCPoly>> =
            (1..n).map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c].clone()).collect()).collect();
        let term = pres.mul(&m[0][j], &det(pres, &minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    pres.normal_form(&acc)
}

/// Classical adjugate, so that `t · adj(t) = det(t) · I`.
pub fn adjugate(pres: &Presentation, m: &[Vec<NCPoly>]) -> Vec<Vec<NCPoly>> {
    let n = m.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let minor: Vec<Vec<NCPoly>> = (0..n)
                        .filter(|&r| r != j)
                        .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c].clone()).collect())
                        .collect();
                    let d = det(pres, &minor);
                    if (i + j) % 2 == 0 {
                        d
                    } else {
                        d.neg()
                    }
                })
                .collect()
        })
        .collect()
}

fn affine(rng: &mut ChaCha8Rng, k: usize, constant_only: bool) -> NCPoly {
    let mut a = NCPoly::int(rng.random_range(-3..=3));
    if !constant_only {
        for g in 0..k as u16 {
            let c = rng.random_range(-2..=2);
            if c != 0 {
                let coeff = if rng.random_bool(0.3) { ParamScalar::from_int(c).mul(&ParamScalar::q()) } else { ParamScalar::from_int(c) };
                a.add_term(Word::single(g), coeff);
            }
        }
    }
    a
}

/// Block data `(t, t̃, Z)` over commuting generators with `Z² = 1 − det t` (or, when
/// `violate`, `Z² = 1 − det t + g1`) and `t̃ = adj t`.
///
/// Sizes 1 and 2 use affine entries; size 3 keeps two rows constant so that
/// `det t` stays linear and `Z²` remains the leading word.
pub fn block_instance(rng: &mut ChaCha8Rng, violate: bool) -> (AlgMatrix, AlgMatrix, NCPoly) {
    let k = 3;
    let base = commutative_base(k);
    let n = rng.random_range(1..=3usize);
    let free_row = rng.random_range(0..n);
    let t: Vec<Vec<NCPoly>> = (0..n)
        .map(|i| (0..n).map(|_| affine(rng, k, n == 3 && i != free_row)).collect())
        .collect();
    let tt = adjugate(&base, &t);
    let d = det(&base, &t);
    let mut square = NCPoly::one().sub(&d);
    if violate {
        square = square.add(&NCPoly::gen(0));
    }
    let ext = Arc::new(extend_with_z(&base, &square, "commutative_z").expect("central square"));
    let lift = |m: Vec<Vec<NCPoly>>| {
        AlgMatrix::from_rows(Arc::new(base.clone()), m).unwrap().transfer(ext.clone()).unwrap()
    };
    let z = ext.gen("Z").unwrap();
    (lift(t), lift(tt), z)
}

/// Block data with `t = t̃` arbitrary (no determinant condition).
pub fn symmetric_block_instance(rng: &mut ChaCha8Rng) -> (AlgMatrix, NCPoly) {
    let k = 3;
    let base = commutative_base(k);
    let n = rng.random_range(1..=2usize);
    let t: Vec<Vec<NCPoly>> = (0..n).map(|_| (0..n).map(|_| affine(rng, k, false)).collect()).collect();
    let ext = Arc::new(extend_with_z(&base, &NCPoly::gen(0), "commutative_z").unwrap());
    let t = AlgMatrix::from_rows(Arc::new(base), t).unwrap().transfer(ext.clone()).unwrap();
    let z = ext.gen("Z").unwrap();
    (t, z)
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
