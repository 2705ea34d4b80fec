use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::coeff::{Assignment, ParamScalar};
use crate::error::{Error, Result};

use super::confluence::{self, ConfluenceReport};
use super::poly::NCPoly;
use super::word::{Gen, OrderKey, TermOrder, Word};

/// Oriented relation `lhs -> rhs`; every word of `rhs` is smaller than `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: NCPoly,
}

impl RewriteRule {
    /// The rule as the free polynomial `lhs - rhs`.
    pub fn as_relation(&self) -> NCPoly {
        NCPoly::word(self.lhs.clone()).sub(&self.rhs)
    }
}

/// Generators, term order, oriented relations and optional involution.
#[derive(Clone, Debug)]
pub struct Presentation {
    name: String,
    gens: Vec<String>,
    order: TermOrder,
    rules: Vec<RewriteRule>,
    relations: Vec<NCPoly>,
    involution: Option<Vec<NCPoly>>,
    confluent: bool,
    by_first: Vec<Vec<usize>>,
}

/// Report of involution consistency checks.
#[derive(Clone, Debug, Default)]
pub struct InvolutionReport {
    /// Generators whose image under the involution applied twice differs from them.
    pub not_involutive: Vec<(Gen, NCPoly)>,
    /// Rules whose image under the involution does not reduce to zero.
    pub inconsistent: Vec<(usize, NCPoly)>,
}

impl InvolutionReport {
    pub fn passed(&self) -> bool {
        self.not_involutive.is_empty() && self.inconsistent.is_empty()
    }
}

impl Presentation {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[String] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_name(&self, g: Gen) -> &str {
        &self.gens[g as usize]
    }

    pub fn gen_index(&self, name: &str) -> Option<Gen> {
        self.gens.iter().position(|n| n == name).map(|i| i as Gen)
    }

    /// The generator as an element; errors on unknown names.
    pub fn gen(&self, name: &str) -> Result<NCPoly> {
        self.gen_index(name).map(NCPoly::gen).ok_or_else(|| Error::Unknown(name.to_string()))
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    /// The defining relations as free polynomials (each is zero in the algebra).
    pub fn relations(&self) -> &[NCPoly] {
        &self.relations
    }

    pub fn involution(&self) -> Option<&[NCPoly]> {
        self.involution.as_deref()
    }

    pub fn has_involution(&self) -> bool {
        self.involution.is_some()
    }

    pub fn is_confluent(&self) -> bool {
        self.confluent
    }

    /// Reopens the presentation for extension.
    pub fn to_builder(&self, name: &str) -> PresentationBuilder {
        PresentationBuilder {
            name: name.to_string(),
            gens: self.gens.clone(),
            rank: self.order.ranks().to_vec(),
            rules: self.rules.clone(),
            relations: self.relations.clone(),
            involution: self.involution.clone(),
        }
    }

    /// Leftmost occurrence of any rule's left-hand side: `(offset, rule index)`.
    pub fn find_redex(&self, w: &[Gen]) -> Option<(usize, usize)> {
        for pos in 0..w.len() {
            for &ri in &self.by_first[w[pos] as usize] {
                let lhs = self.rules[ri].lhs.letters();
                if w.len() - pos >= lhs.len() && &w[pos..pos + lhs.len()] == lhs {
                    return Some((pos, ri));
                }
            }
        }
        None
    }

    pub fn is_reduced_word(&self, w: &Word) -> bool {
        self.find_redex(w.letters()).is_none()
    }

    /// Unique representative modulo the relations (on confluent presentations).
    ///
    /// Repeatedly takes the largest word in the term order; irreducible words are
    /// emitted, reducible ones are rewritten at their leftmost redex. Every
    /// rewrite produces strictly smaller words, so this terminates.
    pub fn normal_form(&self, a: &NCPoly) -> NCPoly {
        if self.rules.is_empty() {
            return a.clone();
        }
        let mut todo: BTreeMap<OrderKey, (Word, ParamScalar)> = BTreeMap::new();
        let push = |todo: &mut BTreeMap<OrderKey, (Word, ParamScalar)>, w: Word, c: ParamScalar| {
            if c.is_zero() {
                return;
            }
            let key = self.order.key(&w);
            match todo.entry(key) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert((w, c));
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let sum = o.get().1.add(&c);
                    if sum.is_zero() {
                        o.remove();
                    } else {
                        o.get_mut().1 = sum;
                    }
                }
            }
        };
        for (w, c) in a.terms() {
            push(&mut todo, w.clone(), c.clone());
        }
        let mut out = NCPoly::zero();
        while let Some((_, (w, c))) = todo.pop_last() {
            match self.find_redex(w.letters()) {
                None => out.add_term(w, c),
                Some((pos, ri)) => {
                    let rule = &self.rules[ri];
                    let letters = w.letters();
                    let prefix = &letters[..pos];
                    let suffix = &letters[pos + rule.lhs.len()..];
                    for (rw, rc) in rule.rhs.terms() {
                        push(&mut todo, rw.wrap(prefix, suffix), c.mul(rc));
                    }
                }
            }
        }
        out
    }

    /// Reduced product.
    pub fn mul(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        self.normal_form(&a.mul(b))
    }

    /// `nf(a b - b a)`
    pub fn commutator(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        self.normal_form(&a.mul(b).sub(&b.mul(a)))
    }

    /// First generator that fails to commute with `a`, if any.
    pub fn non_central_witness(&self, a: &NCPoly) -> Option<Gen> {
        (0..self.gens.len() as Gen).find(|&g| !self.commutator(&NCPoly::gen(g), a).is_zero())
    }

    /// Antilinear anti-homomorphism extending the involution table, reduced.
    pub fn apply_involution(&self, a: &NCPoly) -> Result<NCPoly> {
        let table = self.involution.as_ref().ok_or_else(|| Error::NoInvolution(self.name.clone()))?;
        Ok(self.normal_form(&involute_free(table, a)))
    }

    pub fn check_involution(&self) -> Result<InvolutionReport> {
        let table = self.involution.as_ref().ok_or_else(|| Error::NoInvolution(self.name.clone()))?;
        let mut report = InvolutionReport::default();
        for g in 0..self.gens.len() as Gen {
            let twice = self.normal_form(&involute_free(table, &table[g as usize]));
            if twice != NCPoly::gen(g) {
                report.not_involutive.push((g, twice));
            }
        }
        for (i, rule) in self.rules.iter().enumerate() {
            let img = self.normal_form(&involute_free(table, &rule.as_relation()));
            if !img.is_zero() {
                report.inconsistent.push((i, img));
            }
        }
        Ok(report)
    }

    pub fn specialize_poly(&self, a: &NCPoly, at: &Assignment) -> Result<NCPoly> {
        a.specialize(at)
    }

    /// The presentation with parameters substituted in every rule and in the
    /// involution table. Confluence is re-checked; the flag reflects the result.
    pub fn specialize(&self, at: &Assignment) -> Result<Presentation> {
        let mut b = self.to_builder(&format!("{}[{}]", self.name, at));
        for r in &mut b.rules {
            r.rhs = r.rhs.specialize(at)?;
        }
        b.relations = b.rules.iter().map(RewriteRule::as_relation).collect();
        if let Some(inv) = &mut b.involution {
            for x in inv.iter_mut() {
                *x = x.specialize(at)?;
            }
        }
        let mut p = b.assemble();
        p.confluent = p.confluence_check().passed();
        Ok(p)
    }

    pub fn overlap_ambiguities(&self) -> Vec<confluence::Ambiguity> {
        confluence::overlap_ambiguities(self)
    }

    pub fn confluence_check(&self) -> ConfluenceReport {
        confluence::confluence_check(self)
    }
}

pub(crate) fn involute_free(table: &[NCPoly], a: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero();
    for (w, c) in a.terms() {
        let mut img = NCPoly::scalar(c.conj());
        for &g in w.letters().iter().rev() {
            img = img.mul(&table[g as usize]);
        }
        out.add_assign(&img);
    }
    out
}

/// Incremental construction of a [`Presentation`].
#[derive(Clone, Debug)]
pub struct PresentationBuilder {
    name: String,
    gens: Vec<String>,
    rank: Vec<u32>,
    rules: Vec<RewriteRule>,
    relations: Vec<NCPoly>,
    involution: Option<Vec<NCPoly>>,
}

impl PresentationBuilder {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            gens: Vec::new(),
            rank: Vec::new(),
            rules: Vec::new(),
            relations: Vec::new(),
            involution: None,
        }
    }

    /// Declares generators in ascending precedence.
    pub fn with_generators(name: &str, ascending: &[&str]) -> Self {
        let mut b = Self::new(name);
        for g in ascending {
            b.push_top(g);
        }
        b
    }

    /// Adds a generator above every existing one in the precedence.
    pub fn push_top(&mut self, name: &str) -> Gen {
        let g = self.gens.len() as Gen;
        self.gens.push(name.to_string());
        self.rank.push(g as u32);
        if let Some(inv) = &mut self.involution {
            inv.push(NCPoly::gen(g));
        }
        g
    }

    /// Adds a generator directly above `below` (or at the bottom when `None`).
    pub fn insert_above(&mut self, name: &str, below: Option<Gen>) -> Gen {
        let new_rank = below.map(|b| self.rank[b as usize] + 1).unwrap_or(0);
        for r in &mut self.rank {
            if *r >= new_rank {
                *r += 1;
            }
        }
        let g = self.gens.len() as Gen;
        self.gens.push(name.to_string());
        self.rank.push(new_rank);
        if let Some(inv) = &mut self.involution {
            inv.push(NCPoly::gen(g));
        }
        g
    }

    pub fn gen_index(&self, name: &str) -> Option<Gen> {
        self.gens.iter().position(|n| n == name).map(|i| i as Gen)
    }

    /// Replaces the precedence; `ranks[g]` is the rank of generator `g`.
    pub fn set_ranks(&mut self, ranks: Vec<u32>) -> Result<&mut Self> {
        let mut sorted = ranks.clone();
        sorted.sort_unstable();
        if ranks.len() != self.gens.len() || sorted.iter().enumerate().any(|(i, &r)| r != i as u32) {
            return Err(Error::BadRelation("precedence is not a permutation of the generators".into()));
        }
        self.rank = ranks;
        Ok(self)
    }

    pub fn gen(&self, name: &str) -> NCPoly {
        NCPoly::gen(self.gen_index(name).unwrap_or_else(|| panic!("unknown generator {name}")))
    }

    pub fn order(&self) -> TermOrder {
        TermOrder::new(self.rank.clone())
    }

    /// Orients `lhs = rhs` so that the largest word becomes the rule's left side.
    pub fn relation(&mut self, lhs: &NCPoly, rhs: &NCPoly) -> Result<&mut Self> {
        let rel = lhs.sub(rhs);
        self.push_relation(rel)
    }

    /// Adds the relation `rel = 0`.
    pub fn push_relation(&mut self, rel: NCPoly) -> Result<&mut Self> {
        let order = self.order();
        let (lead, c) = rel
            .terms()
            .max_by(|a, b| order.compare(a.0, b.0))
            .map(|(w, c)| (w.clone(), c.clone()))
            .ok_or_else(|| Error::BadRelation("relation is zero".into()))?;
        if lead.is_empty() {
            return Err(Error::BadRelation("relation forces a nonzero scalar to vanish".into()));
        }
        let inv = c.inv()?;
        let mut rhs = NCPoly::zero();
        for (w, x) in rel.terms() {
            if *w != lead {
                rhs.add_term(w.clone(), x.mul(&inv).neg());
            }
        }
        self.rules.push(RewriteRule { lhs: lead, rhs });
        self.relations.push(rel);
        Ok(self)
    }

    /// Adds an already oriented rule, checking that it decreases the order.
    pub fn rule(&mut self, lhs: Word, rhs: NCPoly) -> Result<&mut Self> {
        let order = self.order();
        if lhs.is_empty() {
            return Err(Error::BadRelation("empty left-hand side".into()));
        }
        if rhs.terms().any(|(w, _)| order.compare(w, &lhs) != Ordering::Less) {
            return Err(Error::BadRelation("rule does not decrease the term order".into()));
        }
        let rule = RewriteRule { lhs, rhs };
        self.relations.push(rule.as_relation());
        self.rules.push(rule);
        Ok(self)
    }

    pub fn involution(&mut self, images: Vec<NCPoly>) -> &mut Self {
        assert_eq!(images.len(), self.gens.len(), "one involution image per generator");
        self.involution = Some(images);
        self
    }

    pub fn set_involution_image(&mut self, g: Gen, image: NCPoly) -> &mut Self {
        let n = self.gens.len();
        let inv = self.involution.get_or_insert_with(|| (0..n as Gen).map(NCPoly::gen).collect());
        inv[g as usize] = image;
        self
    }

    pub fn clear_involution(&mut self) -> &mut Self {
        self.involution = None;
        self
    }

    fn assemble(&self) -> Presentation {
        let order = self.order();
        let mut by_first = vec![Vec::new(); self.gens.len()];
        for (i, r) in self.rules.iter().enumerate() {
            by_first[r.lhs.letters()[0] as usize].push(i);
        }
        let mut p = Presentation {
            name: self.name.clone(),
            gens: self.gens.clone(),
            order,
            rules: self.rules.clone(),
            relations: self.relations.clone(),
            involution: None,
            confluent: false,
            by_first,
        };
        if let Some(inv) = &self.involution {
            let reduced = inv.iter().map(|x| p.normal_form(x)).collect();
            p.involution = Some(reduced);
        }
        p
    }

    /// Builds without running the confluence check.
    pub fn build_unchecked(&self) -> Presentation {
        self.assemble()
    }

    /// Builds and runs the confluence check; the result carries the verified flag.
    pub fn build(&self) -> Result<Presentation> {
        let mut p = self.assemble();
        let report = p.confluence_check();
        if let Some(first) = report.failures.first() {
            let witness = crate::exprio::format_word(&p, &first.word);
            return Err(Error::NotConfluent { name: p.name.clone(), count: report.failures.len(), witness });
        }
        p.confluent = true;
        Ok(p)
    }
}
