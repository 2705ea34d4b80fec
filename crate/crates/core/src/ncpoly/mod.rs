//! Free noncommutative algebra over Q(q, p, s), rewriting to normal form,
//! diamond-lemma confluence checks and involutions.

mod confluence;
mod poly;
mod presentation;
mod word;

pub use confluence::{Ambiguity, AmbiguityKind, ConfluenceReport, UnresolvedAmbiguity};
pub use poly::NCPoly;
pub use presentation::{InvolutionReport, Presentation, PresentationBuilder, RewriteRule};
pub use word::{Gen, TermOrder, Word};
