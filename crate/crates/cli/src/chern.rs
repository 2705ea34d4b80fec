use ncsphere::chern::{chern_component, displayed_ch1_e, proportional_to, tensor_specialize};
use ncsphere::coeff::Assignment;
use ncsphere::presentations::catalog_projector;

use crate::report::{Outcome, Report};
use crate::UsageError;

pub struct ChernArgs {
    pub projector: String,
    pub degree: usize,
    pub max_degree: usize,
    pub specialize: Option<String>,
    pub expect: Option<Expect>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Expect {
    Zero,
    Nonzero,
}

pub fn run(args: &ChernArgs) -> Result<Report, UsageError> {
    if args.degree > args.max_degree {
        return Err(UsageError(format!(
            "degree {} exceeds the cap {}; raise it with --max-degree",
            args.degree, args.max_degree
        )));
    }
    let m = catalog_projector(&args.projector).map_err(UsageError::from)?;
    let at = match &args.specialize {
        Some(text) => Some(Assignment::parse(text).map_err(UsageError::from)?),
        None => None,
    };
    let pres = m.presentation().clone();
    let n = args.degree;
    let mut report = Report::new(format!("chern {} degree {n}", args.projector));
    report.param("projector", args.projector.as_str()).param("degree", n);
    if let Some(at) = &at {
        report.param("specialize", at.to_string());
    }
    let mut tensor = None;
    report.check(&format!("ch{n}"), || {
        let ch = chern_component(&m, n)?;
        let (t, scalar) = match &at {
            Some(at) => (tensor_specialize(&ch.tensor, at)?, ch.scalar_part.specialize(at)?),
            None => (ch.tensor, ch.scalar_part),
        };
        let zero = t.is_zero() && scalar.is_zero();
        let mut details = if zero { "zero".to_string() } else { format!("nonzero, {} terms", t.len()) };
        if n == 0 {
            details.push_str(&format!("; scalar part {}", scalar.to_expr()));
        }
        let passed = match args.expect {
            Some(Expect::Zero) => zero,
            Some(Expect::Nonzero) => !zero,
            None => true,
        };
        let witness = (!t.is_zero()).then(|| t.format(&pres));
        tensor = Some(t);
        Ok(Outcome { passed, details, witness })
    });
    let is_e = matches!(args.projector.as_str(), "e" | "projector_e");
    if let (true, 1, Some(t)) = (is_e, n, tensor.filter(|t| !t.is_zero())) {
        report.check("proportionality", || {
            let mut shown = displayed_ch1_e(&pres)?;
            if let Some(at) = &at {
                shown = tensor_specialize(&shown, at)?;
            }
            Ok(match proportional_to(&t, &shown) {
                Some(l) => Outcome::pass(format!("ch1(e) = ({}) * displayed expression", l.to_expr())),
                None => {
                    let diff = t.sub(&shown);
                    Outcome::pass(format!("no scalar relates ch1(e) to the displayed expression; difference has {} terms", diff.len()))
                        .with_witness(Some(diff.format(&pres)))
                }
            })
        });
    }
    Ok(report)
}
