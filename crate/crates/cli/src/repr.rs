use ncsphere::repr::{
    alpha_pm, check_projector_numeric, omega, radicand, relation_residuals, spectrum_csv, zeta_spectrum, ReprParams,
};

use crate::report::{Outcome, Report};
use crate::UsageError;

const RELATION_TOL: f64 = 1e-10;
const OMEGA_TOL: f64 = 1e-12;
const QUADRATIC_TOL: f64 = 1e-12;
const RADICAND_TOL: f64 = 1e-12;
const SPECTRUM_TOL: f64 = 1e-12;

pub fn run(p: &ReprParams, csv: Option<&str>) -> Result<Report, UsageError> {
    p.validate().map_err(UsageError::from)?;
    let mut report = Report::new("repr");
    report
        .param("q", p.q)
        .param("s", p.s)
        .param("c_re", p.c.re)
        .param("c_im", p.c.im)
        .param("theta", p.theta)
        .param("sign", format!("{:?}", p.sign))
        .param("K", p.k)
        .param("L", p.l);
    let c_abs = p.c.norm();

    report.check("relations", || {
        let rs = relation_residuals(p)?;
        let worst = rs.iter().max_by(|a, b| a.residual.total_cmp(&b.residual)).expect("relations exist");
        let details = format!("max interior residual {:.3e} over {} relations", worst.residual, rs.len());
        let witness = Some(format!("{}: {:.3e}", worst.relation, worst.residual));
        Ok(if worst.residual < RELATION_TOL { Outcome::pass(details) } else { Outcome::fail(details, witness) })
    });
    report.check("omega0", || {
        let w = omega(0, p.alpha()?, p.s, c_abs, p.q, RADICAND_TOL)?;
        let details = format!("omega_0 = {w:.3e}");
        Ok(if w < OMEGA_TOL { Outcome::pass(details) } else { Outcome::fail(details, None) })
    });
    report.check("alpha_quadratic", || {
        let (ap, am) = alpha_pm(p.s, c_abs)?;
        let res = [ap, am].map(|a| (a * a - (1.0 - p.s * p.s) * a + c_abs * c_abs - p.s * p.s).abs());
        let details = format!("alpha+ = {ap:.12}, alpha- = {am:.12}, residuals {:.1e}, {:.1e}", res[0], res[1]);
        Ok(if res.iter().all(|r| *r < QUADRATIC_TOL) { Outcome::pass(details) } else { Outcome::fail(details, None) })
    });
    report.check("positivity", || {
        let alpha = p.alpha()?;
        let (k, worst) = (0..p.k)
            .map(|k| (k, radicand(k, alpha, p.s, c_abs, p.q)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("K >= 2");
        let details = format!("min radicand {worst:.3e} at k = {k}");
        Ok(if worst >= -RADICAND_TOL { Outcome::pass(details) } else { Outcome::fail(details, None) })
    });
    report.check("spectrum", || {
        let spectrum = zeta_spectrum(p)?;
        let lo = spectrum.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = spectrum.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let details = format!("zeta eigenvalues in [{lo:.6}, {hi:.6}] (bounds [{:.6}, 1])", -p.s * p.s);
        let inside = lo >= -p.s * p.s - SPECTRUM_TOL && hi <= 1.0 + SPECTRUM_TOL;
        Ok(if inside { Outcome::pass(details) } else { Outcome::fail(details, None) })
    });
    report.check("projector", || {
        let r = check_projector_numeric(p)?;
        let details = format!("|e^2 - e| = {:.3e}, |e - e*| = {:.3e}", r.idempotent, r.self_adjoint);
        let ok = r.idempotent < RELATION_TOL && r.self_adjoint < RELATION_TOL;
        Ok(if ok { Outcome::pass(details) } else { Outcome::fail(details, None) })
    });
    if let Some(path) = csv {
        let text = spectrum_csv(p).map_err(UsageError::from)?;
        std::fs::write(path, text).map_err(|e| UsageError(format!("cannot write {path}: {e}")))?;
        report.param("csv", path);
    }
    Ok(report)
}
