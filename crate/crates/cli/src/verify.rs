use std::sync::Arc;

use ncsphere::exprio::{format_element, format_word, parse_element, parse_matrix};
use ncsphere::matrix::{block_projector, verify_det_condition, AlgMatrix};
use ncsphere::ncpoly::{NCPoly, Presentation};
use ncsphere::presentations::{by_name, catalog_projector, monopole_block};

use crate::report::{matrix_outcome, matrix_witness, Outcome, Report};
use crate::UsageError;

pub const TARGETS: &[&str] =
    &["sphere2", "sphere4", "sphere4_star", "projector_e", "projector_f", "projector_etilde"];

pub struct BlockArgs {
    pub algebra: String,
    pub t: Option<String>,
    pub ttilde: Option<String>,
    pub z: Option<String>,
}

pub fn run(target: &str, block: &BlockArgs) -> Result<Report, UsageError> {
    match target {
        "all" => {
            let mut report = Report::new("verify all");
            for t in TARGETS {
                report.absorb(t, run(t, block)?);
            }
            Ok(report)
        }
        "block" => verify_block(block),
        t if t.starts_with("projector_") => {
            let m = catalog_projector(t).map_err(UsageError::from)?;
            Ok(verify_projector(t, &m))
        }
        t => {
            let pres = by_name(t).map_err(UsageError::from)?;
            let mut report = Report::new(format!("verify {t}"));
            presentation_checks(&mut report, &pres);
            Ok(report)
        }
    }
}

/// Confluence, involution consistency and vanishing of the defining relations.
pub fn presentation_checks(report: &mut Report, pres: &Presentation) {
    report.check("confluence", || {
        let r = pres.confluence_check();
        Ok(match r.failures.first() {
            None => Outcome::pass(format!("{} ambiguities resolve", r.checked)),
            Some(f) => Outcome::fail(
                format!("{} of {} ambiguities unresolved", r.failures.len(), r.checked),
                Some(format!("{}: {}", format_word(pres, &f.word), format_element(pres, &f.left.sub(&f.right)))),
            ),
        })
    });
    if pres.has_involution() {
        report.check("involution", || {
            let r = pres.check_involution()?;
            if r.passed() {
                return Ok(Outcome::pass("involution is involutive and respects every relation"));
            }
            let witness = r
                .not_involutive
                .first()
                .map(|(g, img)| format!("{}** = {}", pres.gen_name(*g), format_element(pres, img)))
                .or_else(|| r.inconsistent.first().map(|(i, res)| format!("rule {}: {}", i + 1, format_element(pres, res))));
            Ok(Outcome::fail("involution is inconsistent", witness))
        });
    }
    report.check("relations", || {
        let survivor = pres.relations().iter().find(|r| !pres.normal_form(r).is_zero());
        Ok(match survivor {
            None => Outcome::pass(format!("{} relations reduce to 0", pres.relations().len())),
            Some(r) => Outcome::fail("a relation survives reduction", Some(format_element(pres, r))),
        })
    });
}

fn verify_projector(name: &str, m: &AlgMatrix) -> Report {
    let pres = m.presentation().clone();
    let mut report = Report::new(format!("verify {name}"));
    report.param("algebra", pres.name()).param("size", m.rows());
    presentation_checks(&mut report, &pres);
    report.check("idempotent", || Ok(matrix_outcome(&pres, &m.is_idempotent()?, "P^2 = P", "P^2 != P")));
    report.check("self_adjoint", || Ok(matrix_outcome(&pres, &m.is_self_adjoint()?, "P* = P", "P* != P")));
    if name == "projector_etilde" {
        report.check("det_condition", || {
            let (t, z) = monopole_block(&pres)?;
            let r = verify_det_condition(&t, &t, &z)?;
            let block = block_projector(&t, &t, &z)?;
            let same = block.check_equal(m)?;
            if !same.passed() {
                return Ok(Outcome::fail("block data does not reproduce the matrix", matrix_witness(&pres, &same)));
            }
            Ok(matrix_outcome(&pres, &r.right, "t t~ = t~ t = (1 - Z^2) I", "t t~ != (1 - Z^2) I"))
        });
    }
    report
}

/// A matrix argument: `I`, `I<n>`, literal text, or `@path`.
fn matrix_arg(text: &str, pres: &Arc<Presentation>, size: Option<usize>) -> Result<AlgMatrix, UsageError> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix('I') {
        if rest.is_empty() || rest.chars().all(|c| c.is_ascii_digit()) {
            let n = if rest.is_empty() { size.unwrap_or(1) } else { rest.parse().unwrap() };
            return Ok(AlgMatrix::identity(pres.clone(), n));
        }
    }
    let body = read_arg(text)?;
    parse_matrix(&body, pres).map_err(UsageError::from)
}

pub fn read_arg(text: &str) -> Result<String, UsageError> {
    match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {path}: {e}"))),
        None => Ok(text.to_string()),
    }
}

fn is_identity_text(s: &str) -> bool {
    let s = s.trim();
    s.strip_prefix('I').is_some_and(|r| r.is_empty())
}

fn verify_block(args: &BlockArgs) -> Result<Report, UsageError> {
    let (Some(t_text), Some(z_text)) = (&args.t, &args.z) else {
        return Err(UsageError("verify block needs --t and --z (and optionally --ttilde)".into()));
    };
    let tt_text = args.ttilde.clone().unwrap_or_else(|| t_text.clone());
    let pres = Arc::new(by_name(&args.algebra).map_err(UsageError::from)?);
    // a bare `I` takes its size from the other matrix
    let (t, tt) = if is_identity_text(t_text) && !is_identity_text(&tt_text) {
        let tt = matrix_arg(&tt_text, &pres, None)?;
        (matrix_arg(t_text, &pres, Some(tt.rows()))?, tt)
    } else {
        let t = matrix_arg(t_text, &pres, None)?;
        let tt = matrix_arg(&tt_text, &pres, Some(t.rows()))?;
        (t, tt)
    };
    let z: NCPoly = parse_element(&read_arg(z_text)?, &pres).map_err(UsageError::from)?;
    let mut report = Report::new("verify block");
    report.param("algebra", pres.name()).param("t", t_text.as_str()).param("ttilde", tt_text.as_str()).param("z", z_text.as_str());
    report.check("z_central", || {
        Ok(match pres.non_central_witness(&z) {
            None => Outcome::pass("Z is central"),
            Some(g) => Outcome::fail("Z is not central", Some(format!("fails to commute with {}", pres.gen_name(g)))),
        })
    });
    report.check("det_condition", || {
        let r = verify_det_condition(&t, &tt, &z)?;
        let worst = if r.right.passed() { &r.left } else { &r.right };
        Ok(matrix_outcome(&pres, worst, "t t~ = t~ t = (1 - Z^2) I", "determinant condition fails"))
    });
    let block = block_projector(&t, &tt, &z);
    report.check("idempotent", || {
        let b = block.clone()?;
        Ok(matrix_outcome(&pres, &b.is_idempotent()?, "P^2 = P", "P^2 != P"))
    });
    if pres.has_involution() {
        report.check("self_adjoint", || {
            let b = block.clone()?;
            Ok(matrix_outcome(&pres, &b.is_self_adjoint()?, "P* = P", "P* != P"))
        });
    }
    Ok(report)
}
