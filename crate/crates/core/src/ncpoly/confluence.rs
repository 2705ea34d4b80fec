//! Diamond-lemma ambiguity enumeration and resolution.

use super::poly::NCPoly;
use super::presentation::Presentation;
use super::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AmbiguityKind {
    /// A suffix of the first lhs of this length equals a prefix of the second.
    Overlap { shared: usize },
    /// The second lhs occurs inside the first at this offset.
    Inclusion { offset: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    pub first: usize,
    pub second: usize,
    pub word: Word,
    pub kind: AmbiguityKind,
}

#[derive(Clone, Debug)]
pub struct UnresolvedAmbiguity {
    pub ambiguity: Ambiguity,
    pub word: Word,
    pub left: NCPoly,
    pub right: NCPoly,
}

#[derive(Clone, Debug, Default)]
pub struct ConfluenceReport {
    pub checked: usize,
    pub failures: Vec<UnresolvedAmbiguity>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn overlap_ambiguities(p: &Presentation) -> Vec<Ambiguity> {
    let rules = p.rules();
    let mut out = Vec::new();
    for (i, a) in rules.iter().enumerate() {
        let la = a.lhs.letters();
        for (j, b) in rules.iter().enumerate() {
            let lb = b.lhs.letters();
            for k in 1..la.len().min(lb.len()) {
                if la[la.len() - k..] == lb[..k] {
                    out.push(Ambiguity {
                        first: i,
                        second: j,
                        word: Word::from_gens(la.iter().chain(&lb[k..]).copied().collect()),
                        kind: AmbiguityKind::Overlap { shared: k },
                    });
                }
            }
            if i != j && lb.len() <= la.len() {
                for off in 0..=la.len() - lb.len() {
                    if la[off..off + lb.len()] == *lb {
                        out.push(Ambiguity {
                            first: i,
                            second: j,
                            word: a.lhs.clone(),
                            kind: AmbiguityKind::Inclusion { offset: off },
                        });
                    }
                }
            }
        }
    }
    out
}

fn resolve(p: &Presentation, amb: &Ambiguity) -> (NCPoly, NCPoly) {
    let rules = p.rules();
    let (a, b) = (&rules[amb.first], &rules[amb.second]);
    let w = amb.word.letters();
    match amb.kind {
        AmbiguityKind::Overlap { shared } => {
            let tail = Word::from_gens(b.lhs.letters()[shared..].to_vec());
            let head = Word::from_gens(a.lhs.letters()[..a.lhs.len() - shared].to_vec());
            let left = a.rhs.mul(&NCPoly::word(tail));
            let right = NCPoly::word(head).mul(&b.rhs);
            (p.normal_form(&left), p.normal_form(&right))
        }
        AmbiguityKind::Inclusion { offset } => {
            let head = NCPoly::word(Word::from_gens(w[..offset].to_vec()));
            let tail = NCPoly::word(Word::from_gens(w[offset + b.lhs.len()..].to_vec()));
            let right = head.mul(&b.rhs).mul(&tail);
            (p.normal_form(&a.rhs), p.normal_form(&right))
        }
    }
}

/// Reduces every ambiguity both ways; passes iff all pairs agree.
pub fn confluence_check(p: &Presentation) -> ConfluenceReport {
    let ambs = overlap_ambiguities(p);
    let mut report = ConfluenceReport { checked: ambs.len(), failures: Vec::new() };
    for amb in ambs {
        let (left, right) = resolve(p, &amb);
        if left != right {
            report.failures.push(UnresolvedAmbiguity { word: amb.word.clone(), ambiguity: amb, left, right });
        }
    }
    report
}
