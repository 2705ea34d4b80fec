use ncsphere::exprio::{format_element, parse_rmatrix};
use ncsphere::frt::{
    make_quantum_matrix_algebra, quantum_det, sphere_from_frt, standard_r, star_quantum_matrices, ybe_check,
    QuantumMatrixAlgebra, RMatrix,
};

use crate::report::{matrix_outcome, Outcome, Report};
use crate::verify::read_arg;
use crate::UsageError;

pub const CHECKS: &[&str] = &["ybe", "relations", "det", "star", "sphere"];

pub struct FrtArgs {
    pub n: Option<usize>,
    pub rmatrix: Option<String>,
    pub checks: Vec<String>,
    pub max_n: usize,
}

pub fn run(args: &FrtArgs) -> Result<Report, UsageError> {
    for c in &args.checks {
        if !CHECKS.contains(&c.as_str()) {
            return Err(UsageError(format!("unknown check `{c}`; expected one of {}", CHECKS.join(","))));
        }
    }
    let r: RMatrix = match &args.rmatrix {
        Some(path) => {
            let r = parse_rmatrix(&read_arg(&format!("@{path}"))?).map_err(UsageError::from)?;
            if args.n.is_some_and(|n| n != r.n()) {
                return Err(UsageError(format!("--n {} disagrees with the R-matrix size {}", args.n.unwrap(), r.n())));
            }
            r
        }
        None => standard_r(args.n.unwrap_or(2)),
    };
    let n = r.n();
    let wants = |c: &str| args.checks.iter().any(|x| x == c);
    let symbolic = ["relations", "det", "star", "sphere"].iter().any(|c| wants(c));
    if symbolic && n > args.max_n {
        return Err(UsageError(format!("n = {n} exceeds the symbolic cap {}; raise it with --max-n", args.max_n)));
    }
    let mut report = Report::new(format!("frt n = {n}"));
    report.param("n", n).param("rmatrix", args.rmatrix.clone().unwrap_or_else(|| "standard".into()));
    report.param("checks", args.checks.join(","));

    if wants("ybe") {
        report.check("ybe", || {
            let y = ybe_check(&r);
            Ok(match y.failures.first() {
                None => Outcome::pass(format!("R12 R13 R23 = R23 R13 R12 ({0}x{0} entries)", n * n * n)),
                Some(f) => Outcome::fail(
                    format!("YBE fails at {} entries", y.failures.len()),
                    Some(format!("entry ({}, {}): left = {}, right = {}", f.row + 1, f.col + 1, f.left.to_expr(), f.right.to_expr())),
                ),
            })
        });
    }
    if !symbolic {
        return Ok(report);
    }
    let mut qm: Option<QuantumMatrixAlgebra> = None;
    let built = report.check("relations", || {
        let a = make_quantum_matrix_algebra(&r)?;
        let out = Outcome::pass(format!("{} rewrite rules, confluent", a.pres.rules().len()));
        qm = Some(a);
        Ok(out)
    });
    let Some(qm) = qm.filter(|_| built) else {
        return Ok(report);
    };
    if wants("det") {
        report.check("det", || {
            let d = quantum_det(&qm)?;
            let shown = format!("D = {}", format_element(&qm.pres, &d.det));
            if let Some(g) = &d.non_central {
                return Ok(Outcome::fail(format!("D is not central (fails against {g})"), Some(shown)));
            }
            let mut out = matrix_outcome(&qm.pres, if d.right.passed() { &d.left } else { &d.right }, "t t~ = t~ t = D I, D central", "t t~ != D I");
            if out.passed && !d.matches_permutation_sum {
                out = Outcome::fail("D differs from the signed permutation sum", None);
            }
            Ok(out.with_witness(Some(shown)))
        });
    }
    if wants("star") {
        report.check("star", || {
            let s = star_quantum_matrices(&qm)?;
            Ok(match s.anomaly {
                None => Outcome::pass("t_ij* = t~_ji is a consistent involution"),
                Some(a) => Outcome::fail("t_ij* = t~_ji is not a consistent involution", Some(a)),
            })
        });
    }
    if wants("sphere") {
        report.check("sphere", || {
            let s = sphere_from_frt(&qm)?;
            let p = &s.projector;
            let idem = matrix_outcome(&s.pres, &p.is_idempotent()?, "", "P^2 != P");
            if !idem.passed {
                return Ok(idem);
            }
            let sa = matrix_outcome(&s.pres, &p.is_self_adjoint()?, "", "P* != P");
            if !sa.passed {
                return Ok(sa);
            }
            let note = s.star_anomaly.map(|a| format!("; {a}")).unwrap_or_default();
            Ok(Outcome::pass(format!("{0}x{0} projector, idempotent and self-adjoint{note}", p.rows())))
        });
    }
    Ok(report)
}
