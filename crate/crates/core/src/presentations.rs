//! Catalog of the sphere algebras as confluence-verified presentations.
//!
//! | name           | generators (ascending precedence)   | involution                |
//! |----------------|-------------------------------------|---------------------------|
//! | `sphere2`      | z < x < y                           | z* = z, x* = −y           |
//! | `sphere4`      | zeta < V < U < xi < eta             | ζ* = ζ, ξ* = −η, U* = V   |
//! | `sphere4_star` | zeta < U_star < U < xi < xi_star    | ζ* = ζ, ξ ↔ ξ*, U ↔ U*    |
//! | `sphere4z`     | `sphere4` plus central Z on top, Z² = UV | Z* = Z               |

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coeff::{one_plus_s2, ParamScalar};
use crate::error::{Error, Result};
use crate::exprio::{format_element, format_word, parse_matrix};
use crate::matrix::AlgMatrix;
use crate::ncpoly::{NCPoly, Presentation, PresentationBuilder};

fn sc(c: ParamScalar) -> NCPoly {
    NCPoly::scalar(c)
}

fn q2() -> ParamScalar {
    ParamScalar::q().mul(&ParamScalar::q())
}

fn s2() -> ParamScalar {
    ParamScalar::s().mul(&ParamScalar::s())
}

/// `(a·w − 1)(a·w + s²)` for a generator element `w`.
fn shifted_quadratic(w: &NCPoly, a: &ParamScalar) -> NCPoly {
    let aw = w.scale(a);
    aw.sub(&NCPoly::one()).mul(&aw.add(&sc(s2())))
}

/// Podleś sphere A(S²_{q,s}).
pub fn make_sphere2() -> Presentation {
    let mut b = PresentationBuilder::with_generators("sphere2", &["z", "x", "y"]);
    let (x, y, z) = (b.gen("x"), b.gen("y"), b.gen("z"));
    let one = ParamScalar::one();
    b.relation(&z.mul(&x), &x.mul(&z).scale(&q2())).unwrap();
    b.relation(&y.mul(&z), &z.mul(&y).scale(&q2())).unwrap();
    b.relation(&x.mul(&y), &shifted_quadratic(&z, &one)).unwrap();
    b.relation(&y.mul(&x), &shifted_quadratic(&z, &q2())).unwrap();
    b.involution(vec![z.clone(), y.neg(), x.neg()]);
    b.build().expect("sphere2 is confluent")
}

/// Four-sphere A(S⁴_{p,q,s}) on ξ, η, ζ, U, V.
pub fn make_sphere4() -> Presentation {
    let mut b = PresentationBuilder::with_generators("sphere4", &["zeta", "V", "U", "xi", "eta"]);
    let (xi, eta, zeta, u, v) = (b.gen("xi"), b.gen("eta"), b.gen("zeta"), b.gen("U"), b.gen("V"));
    let p = ParamScalar::p();
    let one = ParamScalar::one();
    let uv = u.mul(&v);
    b.relation(&zeta.mul(&xi), &xi.mul(&zeta).scale(&q2())).unwrap();
    b.relation(&eta.mul(&zeta), &zeta.mul(&eta).scale(&q2())).unwrap();
    b.relation(&xi.mul(&u), &u.mul(&xi).scale(&p)).unwrap();
    b.relation(&v.mul(&xi), &xi.mul(&v).scale(&p)).unwrap();
    b.relation(&eta.mul(&v), &v.mul(&eta).scale(&p)).unwrap();
    b.relation(&u.mul(&eta), &eta.mul(&u).scale(&p)).unwrap();
    b.relation(&u.mul(&v), &v.mul(&u)).unwrap();
    b.relation(&u.mul(&zeta), &zeta.mul(&u)).unwrap();
    b.relation(&v.mul(&zeta), &zeta.mul(&v)).unwrap();
    b.relation(&xi.mul(&eta), &shifted_quadratic(&zeta, &one).add(&uv)).unwrap();
    b.relation(&eta.mul(&xi), &shifted_quadratic(&zeta, &q2()).add(&uv)).unwrap();
    // generator order: zeta, V, U, xi, eta
    b.involution(vec![zeta.clone(), u.clone(), v.clone(), eta.neg(), xi.neg()]);
    b.build().expect("sphere4 is confluent")
}

/// The *-presentation on ξ, ξ*, ζ, U, U*, closed under the involution.
pub fn make_sphere4_star() -> Presentation {
    let mut b =
        PresentationBuilder::with_generators("sphere4_star", &["zeta", "U_star", "U", "xi", "xi_star"]);
    let (xi, xis, zeta, u, us) =
        (b.gen("xi"), b.gen("xi_star"), b.gen("zeta"), b.gen("U"), b.gen("U_star"));
    let p = ParamScalar::p();
    let one = ParamScalar::one();
    let uus = u.mul(&us);
    b.relation(&zeta.mul(&xi), &xi.mul(&zeta).scale(&q2())).unwrap();
    b.relation(&xi.mul(&u), &u.mul(&xi).scale(&p)).unwrap();
    b.relation(&us.mul(&xi), &xi.mul(&us).scale(&p)).unwrap();
    b.relation(&u.mul(&us), &us.mul(&u)).unwrap();
    b.relation(&u.mul(&zeta), &zeta.mul(&u)).unwrap();
    b.push_relation(xi.mul(&xis).add(&shifted_quadratic(&zeta, &one)).add(&uus)).unwrap();
    b.push_relation(xis.mul(&xi).add(&shifted_quadratic(&zeta, &q2())).add(&uus)).unwrap();
    // images of the relations above under the involution
    b.relation(&xis.mul(&zeta), &zeta.mul(&xis).scale(&q2())).unwrap();
    b.relation(&us.mul(&xis), &xis.mul(&us).scale(&p.inv().unwrap())).unwrap();
    b.relation(&xis.mul(&u), &u.mul(&xis).scale(&p.inv().unwrap())).unwrap();
    b.relation(&zeta.mul(&us), &us.mul(&zeta)).unwrap();
    // generator order: zeta, U_star, U, xi, xi_star
    b.involution(vec![zeta.clone(), u.clone(), us.clone(), xis.clone(), xi.clone()]);
    b.build().expect("sphere4_star is confluent")
}

/// Adjoins a self-adjoint central generator `Z` with `Z² = square_of`, placed at
/// the top of the precedence.
pub fn extend_with_z(base: &Presentation, square_of: &NCPoly, name: &str) -> Result<Presentation> {
    let sq = base.normal_form(square_of);
    if let Some(g) = base.non_central_witness(&sq) {
        return Err(Error::NotCentral { witness: base.gen_name(g).to_string() });
    }
    let mut b = base.to_builder(name);
    let z = b.push_top("Z");
    let zp = NCPoly::gen(z);
    for g in 0..z {
        let gp = NCPoly::gen(g);
        b.relation(&zp.mul(&gp), &gp.mul(&zp))?;
    }
    b.push_relation(zp.mul(&zp).sub(&sq))?;
    if base.has_involution() {
        b.set_involution_image(z, zp.clone());
    }
    b.build()
}

/// A(S⁴) with central `Z`, `Z² = UV`.
pub fn make_sphere4_z() -> Presentation {
    let s4 = make_sphere4();
    let uv = s4.gen("U").unwrap().mul(&s4.gen("V").unwrap());
    extend_with_z(&s4, &uv, "sphere4z").expect("UV is central in sphere4")
}

/// The 4×4 projector `e` over `sphere4`.
pub const PROJECTOR_E: &str = "[[(1-zeta)/(1+s^2), 0, U/(1+s^2), xi/(1+s^2)],
 [0, (1-q^2*zeta)/(1+s^2), -eta/(1+s^2), -p*V/(1+s^2)],
 [V/(1+s^2), xi/(1+s^2), (s^2+zeta)/(1+s^2), 0],
 [-eta/(1+s^2), -p^-1*U/(1+s^2), 0, (s^2+q^2*zeta)/(1+s^2)]]";

/// The monopole projector `f` over `sphere2`.
pub const PROJECTOR_F: &str = "[[(1-z)/(1+s^2), x/(1+s^2)], [-y/(1+s^2), (s^2+q^2*z)/(1+s^2)]]";

/// The 4×4 projector `ẽ` over `sphere4z`.
pub const PROJECTOR_ETILDE: &str = "[[(1+s^2+2*Z)/(2*(1+s^2)), 0, (1-s^2-2*zeta)/(2*(1+s^2)), 2*xi/(2*(1+s^2))],
 [0, (1+s^2+2*Z)/(2*(1+s^2)), -2*eta/(2*(1+s^2)), (s^2-1+2*q^2*zeta)/(2*(1+s^2))],
 [(1-s^2-2*zeta)/(2*(1+s^2)), 2*xi/(2*(1+s^2)), (1+s^2-2*Z)/(2*(1+s^2)), 0],
 [-2*eta/(2*(1+s^2)), (s^2-1+2*q^2*zeta)/(2*(1+s^2)), 0, (1+s^2-2*Z)/(2*(1+s^2))]]";

/// Block data of `ẽ` over `sphere4z`: `t = t̃ = (2/(1+s²))[[1−ζ, ξ], [−η, s²+q²ζ]] − I`
/// and the central element `2Z/(1+s²)`.
pub fn monopole_block(pres: &Arc<Presentation>) -> Result<(AlgMatrix, NCPoly)> {
    let (xi, eta, zeta, z) = (pres.gen("xi")?, pres.gen("eta")?, pres.gen("zeta")?, pres.gen("Z")?);
    let k = ParamScalar::from_int(2).div(&one_plus_s2())?;
    let one = NCPoly::one();
    let t = AlgMatrix::from_rows(
        pres.clone(),
        vec![
            vec![one.sub(&zeta).scale(&k).sub(&one), xi.scale(&k)],
            vec![eta.neg().scale(&k), sc(s2()).add(&zeta.scale(&q2())).scale(&k).sub(&one)],
        ],
    )?;
    Ok((t, z.scale(&k)))
}

/// Catalog projectors by name (`e`, `f`, `etilde`), each over its own presentation.
pub fn catalog_projector(name: &str) -> Result<AlgMatrix> {
    let (pres, text) = match name {
        "e" | "projector_e" => (make_sphere4(), PROJECTOR_E),
        "f" | "projector_f" => (make_sphere2(), PROJECTOR_F),
        "etilde" | "projector_etilde" => (make_sphere4_z(), PROJECTOR_ETILDE),
        other => return Err(Error::Unknown(other.to_string())),
    };
    parse_matrix(text, &Arc::new(pres))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CatalogInfo {
    pub name: String,
    pub description: String,
    pub generators: Vec<String>,
    pub has_involution: bool,
    pub parameter_constraints: String,
}

const CATALOG: &[(&str, &str, &str)] = &[
    ("sphere2", "Podles quantum 2-sphere on x, y, z", "q != 0, s^2 != -1"),
    ("sphere4", "quantum 4-sphere on xi, eta, zeta, U, V", "p, q != 0, s^2 != -1"),
    (
        "sphere4_star",
        "*-presentation of the 4-sphere on xi, xi_star, zeta, U, U_star",
        "-1 < q < 1, 0 < s <= 1, p = exp(2 pi i theta)",
    ),
    ("sphere4z", "4-sphere with central Z, Z^2 = UV", "p, q != 0, s^2 != -1"),
];

/// Builds a catalog presentation by name.
pub fn by_name(name: &str) -> Result<Presentation> {
    match name {
        "sphere2" => Ok(make_sphere2()),
        "sphere4" => Ok(make_sphere4()),
        "sphere4_star" => Ok(make_sphere4_star()),
        "sphere4z" => Ok(make_sphere4_z()),
        other => Err(Error::Unknown(other.to_string())),
    }
}

pub fn list_catalog() -> Vec<CatalogInfo> {
    CATALOG
        .iter()
        .map(|(name, desc, cons)| {
            let p = by_name(name).expect("catalog entry builds");
            CatalogInfo {
                name: name.to_string(),
                description: desc.to_string(),
                generators: p.generators().to_vec(),
                has_involution: p.has_involution(),
                parameter_constraints: cons.to_string(),
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RuleDoc {
    pub lhs: String,
    pub rhs: String,
}

/// Stable export schema for a presentation.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PresentationDoc {
    pub schema: String,
    pub name: String,
    pub generators: Vec<String>,
    /// Generator names in ascending precedence.
    pub precedence: Vec<String>,
    pub rules: Vec<RuleDoc>,
    pub involution: Option<Vec<RuleDoc>>,
    pub confluent: bool,
}

pub const PRESENTATION_SCHEMA: &str = "ncsphere.presentation/1";

pub fn export_presentation(p: &Presentation) -> PresentationDoc {
    PresentationDoc {
        schema: PRESENTATION_SCHEMA.to_string(),
        name: p.name().to_string(),
        generators: p.generators().to_vec(),
        precedence: p.order().ascending().iter().map(|&g| p.gen_name(g).to_string()).collect(),
        rules: p
            .rules()
            .iter()
            .map(|r| RuleDoc { lhs: format_word(p, &r.lhs), rhs: format_element(p, &r.rhs) })
            .collect(),
        involution: p.involution().map(|table| {
            table
                .iter()
                .enumerate()
                .map(|(g, img)| RuleDoc {
                    lhs: p.gen_name(g as u16).to_string(),
                    rhs: format_element(p, img),
                })
                .collect()
        }),
        confluent: p.is_confluent(),
    }
}

/// Rebuilds a presentation from its exported form, re-running the confluence check
/// when the document claims confluence.
pub fn import_presentation(doc: &PresentationDoc) -> Result<Presentation> {
    let mut b = PresentationBuilder::new(&doc.name);
    for g in &doc.generators {
        b.push_top(g);
    }
    let ranks: Vec<u32> = doc
        .generators
        .iter()
        .map(|g| {
            doc.precedence
                .iter()
                .position(|x| x == g)
                .map(|r| r as u32)
                .ok_or_else(|| Error::Unknown(g.clone()))
        })
        .collect::<Result<_>>()?;
    b.set_ranks(ranks)?;
    let free = b.build_unchecked();
    for r in &doc.rules {
        let lhs = crate::exprio::parse_element(&r.lhs, &free)?;
        let rhs = crate::exprio::parse_element(&r.rhs, &free)?;
        let (w, c) = lhs.terms().next().map(|(w, c)| (w.clone(), c.clone())).ok_or_else(|| {
            Error::BadRelation(format!("empty rule lhs `{}`", r.lhs))
        })?;
        if lhs.len() != 1 || !c.is_one() {
            return Err(Error::BadRelation(format!("rule lhs `{}` is not a word", r.lhs)));
        }
        b.rule(w, rhs)?;
    }
    if let Some(inv) = &doc.involution {
        for d in inv {
            let g = free.gen_index(&d.lhs).ok_or_else(|| Error::Unknown(d.lhs.clone()))?;
            b.set_involution_image(g, crate::exprio::parse_element(&d.rhs, &free)?);
        }
    }
    if doc.confluent {
        b.build()
    } else {
        Ok(b.build_unchecked())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprio::parse_element;

    #[test]
    fn sphere2_reorders_xz() {
        let p = make_sphere2();
        let nf = parse_element("x*z", &p).unwrap();
        let expected = parse_element("q^-2*z*x", &p).unwrap();
        assert_eq!(nf, expected);
        assert_eq!(format_element(&p, &nf), "q^-2*z*x");
    }

    #[test]
    fn sphere2_quadratic_relations() {
        let p = make_sphere2();
        let yx = parse_element("y*x", &p).unwrap();
        assert_eq!(yx, parse_element("q^4*z^2 + q^2*(s^2-1)*z - s^2", &p).unwrap());
        assert!(parse_element("z*x - q^2*x*z", &p).unwrap().is_zero());
    }

    #[test]
    fn sphere4_relations() {
        let p = make_sphere4();
        assert!(parse_element("U*V - V*U", &p).unwrap().is_zero());
        assert!(parse_element("U*zeta - zeta*U", &p).unwrap().is_zero());
        let d = parse_element("xi*eta - eta*xi", &p).unwrap();
        assert_eq!(d, parse_element("(1-q^4)*zeta^2 + (s^2-1)*(1-q^2)*zeta", &p).unwrap());
    }

    #[test]
    fn sphere4_star_relations() {
        let p = make_sphere4_star();
        assert!(parse_element("U*U_star - U_star*U", &p).unwrap().is_zero());
        let lhs = parse_element("xi_star*xi", &p).unwrap();
        let rhs = parse_element("-(q^2*zeta-1)*(q^2*zeta+s^2) - U*U_star", &p).unwrap();
        assert_eq!(lhs, rhs);
        let rel = parse_element("xi*U - p*U*xi", &p).unwrap();
        assert!(rel.is_zero());
        let img = p.apply_involution(&parse_element("xi*U", &p).unwrap().sub(&parse_element("p*U*xi", &p).unwrap())).unwrap();
        assert!(img.is_zero());
    }

    #[test]
    fn z_extension() {
        let p = make_sphere4_z();
        assert_eq!(parse_element("Z^2", &p).unwrap(), parse_element("V*U", &p).unwrap());
        assert!(parse_element("zeta*Z - Z*zeta", &p).unwrap().is_zero());
        assert!(parse_element("Z^4 - U*V*U*V", &p).unwrap().is_zero());
        assert!(p.check_involution().unwrap().passed());
    }

    #[test]
    fn z_extension_rejects_noncentral_square() {
        let s4 = make_sphere4();
        let err = extend_with_z(&s4, &s4.gen("xi").unwrap(), "bad").unwrap_err();
        assert!(matches!(err, Error::NotCentral { .. }));
    }

    #[test]
    fn catalog_projectors_are_self_adjoint_idempotents() {
        for name in ["e", "f", "etilde"] {
            let m = catalog_projector(name).unwrap();
            assert!(m.is_idempotent().unwrap().passed(), "{name}");
            assert!(m.is_self_adjoint().unwrap().passed(), "{name}");
        }
    }

    #[test]
    fn perturbed_e_fails_at_u_entry() {
        let e = catalog_projector("e").unwrap();
        let mut bad = e.clone();
        bad.set(0, 2, e.get(0, 2).scale(&ParamScalar::from_int(2)));
        let check = bad.is_idempotent().unwrap();
        // Row 1 times column 3 still reproduces 2U/(1+s²), so (1,3) stays exact.
        let failing: Vec<_> = check.failures.iter().map(|f| (f.row, f.col)).collect();
        assert_eq!(failing, vec![(0, 0), (0, 1), (2, 2), (3, 2)]);
        let pres = e.presentation();
        let expected = parse_element("V*U/(1+s^2)^2", pres).unwrap();
        assert_eq!(check.failures[0].residual, expected);
    }

    #[test]
    fn etilde_is_the_block_projector() {
        let pres = Arc::new(make_sphere4_z());
        let (t, z) = monopole_block(&pres).unwrap();
        assert!(crate::matrix::verify_det_condition(&t, &t, &z).unwrap().passed());
        let block = crate::matrix::block_projector(&t, &t, &z).unwrap();
        let literal = parse_matrix(PROJECTOR_ETILDE, &pres).unwrap();
        assert!(block.check_equal(&literal).unwrap().passed());
    }

    #[test]
    fn catalog_lists_spheres() {
        let names: Vec<String> = list_catalog().into_iter().map(|c| c.name).collect();
        for n in ["sphere2", "sphere4", "sphere4_star"] {
            assert!(names.contains(&n.to_string()));
        }
        assert!(by_name("torus").is_err());
    }

    #[test]
    fn export_import_round_trip() {
        for name in ["sphere2", "sphere4", "sphere4_star", "sphere4z"] {
            let p = by_name(name).unwrap();
            let doc = export_presentation(&p);
            let json = serde_json::to_string(&doc).unwrap();
            let back: PresentationDoc = serde_json::from_str(&json).unwrap();
            let q = import_presentation(&back).unwrap();
            assert_eq!(export_presentation(&q), doc);
        }
    }
}
