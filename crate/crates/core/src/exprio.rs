//! Text format for algebra elements, matrices and R-matrix files.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' '-'? int)?
//! atom   := int | param | generator | '(' expr ')'
//! matrix := '[' row (',' row)* ']'      row := '[' expr (',' expr)* ']'
//! ```
//!
//! Multiplication is always explicit. Division and negative powers are only
//! allowed on scalars. `q`, `p`, `s` are parameters unless the presentation
//! declares a generator of that name. `ξ`, `η`, `ζ` are accepted as aliases for
//! `xi`, `eta`, `zeta`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeff::ParamScalar;
use crate::error::{Error, Result};
use crate::frt::RMatrix;
use crate::matrix::AlgMatrix;
use crate::ncpoly::{NCPoly, Presentation, PresentationBuilder, Word};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

fn alias(name: &str) -> &str {
    match name {
        "ξ" => "xi",
        "η" => "eta",
        "ζ" => "zeta",
        other => other,
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, ch)) = it.peek() {
        if ch.is_whitespace() {
            it.next();
            continue;
        }
        let single = match ch {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = single {
            out.push((pos, t));
            it.next();
            continue;
        }
        if ch.is_ascii_digit() {
            let mut end = pos;
            while let Some(&(p, c)) = it.peek() {
                if c.is_ascii_digit() {
                    end = p + c.len_utf8();
                    it.next();
                } else {
                    break;
                }
            }
            let n: BigInt = text[pos..end].parse().expect("digits");
            out.push((pos, Tok::Int(n)));
            continue;
        }
        if ch.is_alphabetic() || ch == '_' {
            let mut end = pos;
            while let Some(&(p, c)) = it.peek() {
                if c.is_alphanumeric() || c == '_' {
                    end = p + c.len_utf8();
                    it.next();
                } else {
                    break;
                }
            }
            out.push((pos, Tok::Ident(text[pos..end].to_string())));
            continue;
        }
        return Err(Error::Parse { pos, msg: format!("unexpected character `{ch}`") });
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    pres: &'a Presentation,
}

impl<'a> Parser<'a> {
    fn new(text: &str, pres: &'a Presentation) -> Result<Self> {
        Ok(Self { toks: lex(text)?, at: 0, pres })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<NCPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NCPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = self.pres.mul(&acc, &rhs);
                }
                Tok::Slash => {
                    self.bump();
                    let pos = self.pos();
                    let rhs = self.factor()?;
                    let Some(c) = rhs.as_scalar() else {
                        return Err(Error::Parse { pos, msg: "division by a non-scalar".into() });
                    };
                    let inv = c.inv().map_err(|_| Error::Parse { pos, msg: "division by zero".into() })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    /// Unary minus binds looser than `^`, so `-s^2` is `-(s^2)`.
    fn factor(&mut self) -> Result<NCPoly> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let Tok::Int(n) = self.bump() else {
            return Err(Error::Parse { pos, msg: "expected integer exponent".into() });
        };
        let k: i32 = n.try_into().map_err(|_| Error::Parse { pos, msg: "exponent too large".into() })?;
        if neg {
            let Some(c) = base.as_scalar() else {
                return Err(Error::Parse { pos, msg: "negative power of a generator".into() });
            };
            let v = c.pow(-k).map_err(|_| Error::Parse { pos, msg: "negative power of zero".into() })?;
            return Ok(NCPoly::scalar(v));
        }
        let mut out = NCPoly::one();
        for _ in 0..k {
            out = self.pres.mul(&out, &base);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<NCPoly> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(NCPoly::scalar(ParamScalar::from_rational(BigRational::from_integer(n)))),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let name = alias(&name);
                if let Some(g) = self.pres.gen_index(name) {
                    return Ok(NCPoly::gen(g));
                }
                match name {
                    "q" => Ok(NCPoly::scalar(ParamScalar::q())),
                    "p" => Ok(NCPoly::scalar(ParamScalar::p())),
                    "s" => Ok(NCPoly::scalar(ParamScalar::s())),
                    _ => Err(Error::Parse { pos, msg: format!("unknown generator `{name}`") }),
                }
            }
            Tok::End => Err(Error::Parse { pos, msg: "unexpected end of input".into() }),
            t => Err(Error::Parse { pos, msg: format!("unexpected token {t:?}") }),
        }
    }

    fn matrix(&mut self) -> Result<Vec<Vec<NCPoly>>> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut rows = Vec::new();
        loop {
            self.expect(Tok::LBracket, "`[` opening a row")?;
            let mut row = vec![self.expr()?];
            while *self.peek() == Tok::Comma {
                self.bump();
                row.push(self.expr()?);
            }
            self.expect(Tok::RBracket, "`]` closing a row")?;
            if let Some(first) = rows.first() {
                let first: &Vec<NCPoly> = first;
                if first.len() != row.len() {
                    return self.err(format!("ragged rows: {} vs {} entries", first.len(), row.len()));
                }
            }
            rows.push(row);
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        self.expect(Tok::RBracket, "`]` closing the matrix")?;
        Ok(rows)
    }

    fn finish(&self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.err("trailing input")
        }
    }
}

/// Parses an element and reduces it to normal form.
pub fn parse_element(text: &str, pres: &Presentation) -> Result<NCPoly> {
    let mut p = Parser::new(text, pres)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(pres.normal_form(&e))
}

fn scalar_context() -> Presentation {
    PresentationBuilder::new("scalars").build_unchecked()
}

/// Parses a parameter expression without generators.
pub fn parse_scalar(text: &str) -> Result<ParamScalar> {
    let e = parse_element(text, &scalar_context())?;
    e.as_scalar().ok_or_else(|| Error::Parse { pos: 0, msg: "expected a scalar".into() })
}

/// Parses `[[e, …], …]` into a matrix over `pres`.
pub fn parse_matrix(text: &str, pres: &Arc<Presentation>) -> Result<AlgMatrix> {
    let mut p = Parser::new(text, pres)?;
    let rows = p.matrix()?;
    p.finish()?;
    AlgMatrix::from_rows(pres.clone(), rows)
}

/// Parses an R-matrix file: a dimension line `n = N` (or just `N`) followed by
/// an `N²×N²` bracketed matrix of scalars. `#` starts a comment.
pub fn parse_rmatrix(text: &str) -> Result<RMatrix> {
    let mut offset = 0;
    let mut n: Option<usize> = None;
    let mut body_start = text.len();
    for line in text.split_inclusive('\n') {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            offset += line.len();
            continue;
        }
        let dim = content.strip_prefix('n').map(|r| r.trim_start().trim_start_matches('=').trim()).unwrap_or(content);
        n = Some(dim.parse().map_err(|_| Error::Parse { pos: offset, msg: format!("expected dimension line, found `{content}`") })?);
        body_start = offset + line.len();
        break;
    }
    let n = n.ok_or(Error::Parse { pos: 0, msg: "missing dimension line".into() })?;
    if n == 0 {
        return Err(Error::Parse { pos: 0, msg: "dimension must be positive".into() });
    }
    let body: String = text[body_start..]
        .split_inclusive('\n')
        .map(|l| match l.find('#') {
            Some(i) => format!("{}{}", &l[..i], " ".repeat(l.len() - i)),
            None => l.to_string(),
        })
        .collect();
    let ctx = scalar_context();
    let mut p = Parser::new(&body, &ctx).map_err(|e| shift_pos(e, body_start))?;
    let rows = p.matrix().map_err(|e| shift_pos(e, body_start))?;
    p.finish().map_err(|e| shift_pos(e, body_start))?;
    let m = n * n;
    if rows.len() != m || rows[0].len() != m {
        return Err(Error::DimensionMismatch(format!(
            "R-matrix for n = {n} must be {m}x{m}, found {}x{}",
            rows.len(),
            rows[0].len()
        )));
    }
    let mut entries = Vec::with_capacity(m * m);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, e) in row.into_iter().enumerate() {
            entries.push(e.as_scalar().ok_or_else(|| Error::Parse {
                pos: body_start,
                msg: format!("entry ({}, {}) is not a scalar", i + 1, j + 1),
            })?);
        }
    }
    Ok(RMatrix::from_entries(n, entries))
}

fn shift_pos(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

/// Writes an R-matrix in the file format read by [`parse_rmatrix`].
pub fn format_rmatrix(r: &RMatrix) -> String {
    let m = r.n() * r.n();
    let mut out = format!("n = {}\n[", r.n());
    for i in 0..m {
        let row: Vec<String> = (0..m).map(|j| r.get(i, j).to_expr()).collect();
        out.push_str(&format!("{}[{}]", if i == 0 { "" } else { ",\n " }, row.join(", ")));
    }
    out.push_str("]\n");
    out
}

/// `z^2*x` style rendering of a word; the empty word is `1`.
pub fn format_word(pres: &Presentation, w: &Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let g = letters[i];
        let mut j = i + 1;
        while j < letters.len() && letters[j] == g {
            j += 1;
        }
        let name = pres.gen_name(g);
        parts.push(if j - i == 1 { name.to_string() } else { format!("{}^{}", name, j - i) });
        i = j;
    }
    parts.join("*")
}

/// Coefficient rendering that can be followed by `*word`; returns (negative, text).
pub fn coeff_text(c: &ParamScalar) -> (bool, String) {
    let neg = c.numerator().is_monomial() && c.leading_is_negative();
    let a = if neg { c.neg() } else { c.clone() };
    let num = a.numerator();
    let num_txt = if num.is_monomial() { num.to_string() } else { format!("({num})") };
    if a.denominator().is_one() {
        return (neg, num_txt);
    }
    let den = a.denominator();
    let den_txt = if den.is_monomial() && den.as_constant().is_none() && den.to_string().matches('*').count() == 0 {
        den.to_string()
    } else {
        format!("({den})")
    };
    (neg, format!("{num_txt}/{den_txt}"))
}

/// Deterministic rendering, terms in descending term order.
pub fn format_element(pres: &Presentation, a: &NCPoly) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<_> = a.terms().collect();
    terms.sort_by(|x, y| pres.order().compare(y.0, x.0));
    let mut out = String::new();
    for (i, (w, c)) in terms.into_iter().enumerate() {
        let (neg, ctxt) = coeff_text(c);
        let body = if w.is_empty() {
            ctxt
        } else if ctxt == "1" {
            format_word(pres, w)
        } else {
            format!("{}*{}", ctxt, format_word(pres, w))
        };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

pub fn format_matrix(m: &AlgMatrix) -> String {
    let pres = m.presentation();
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let row: Vec<String> = (0..m.cols()).map(|j| format_element(pres, m.get(i, j))).collect();
            format!("[{}]", row.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{make_sphere2, make_sphere4};

    #[test]
    fn relation_text_reduces_to_zero() {
        let s2 = make_sphere2();
        assert!(parse_element("q^2*x*z - z*x", &s2).unwrap().is_zero());
    }

    #[test]
    fn scalar_division() {
        let s2 = make_sphere2();
        let e = parse_element("1/(1+s^2)*(1-z)", &s2).unwrap();
        let d = crate::coeff::one_plus_s2().inv().unwrap();
        let expected = NCPoly::scalar(d.clone()).sub(&s2.gen("z").unwrap().scale(&d));
        assert_eq!(e, expected);
    }

    #[test]
    fn negative_generator_power_is_rejected() {
        let s2 = make_sphere2();
        match parse_element("x^-1", &s2) {
            Err(Error::Parse { pos, msg }) => {
                assert_eq!(pos, 2);
                assert!(msg.contains("negative power"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_element("q^-2*x", &s2).is_ok());
    }

    #[test]
    fn zero_and_product_formatting() {
        let s2 = make_sphere2();
        assert_eq!(format_element(&s2, &NCPoly::zero()), "0");
        let xy = parse_element("x*y", &s2).unwrap();
        assert_eq!(format_element(&s2, &xy), "z^2 + (s^2-1)*z - s^2");
    }

    #[test]
    fn unicode_aliases() {
        let s4 = make_sphere4();
        let a = parse_element("ζ*ξ", &s4).unwrap();
        let b = parse_element("zeta*xi", &s4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn error_positions_point_at_token() {
        let s2 = make_sphere2();
        match parse_element("x + w", &s2) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        match parse_element("x + $", &s2) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_element("x y", &s2), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn matrices() {
        let s2 = Arc::new(make_sphere2());
        let i = parse_matrix("[[1,0],[0,1]]", &s2).unwrap();
        assert_eq!(i, AlgMatrix::identity(s2.clone(), 2));
        assert!(parse_matrix("[[1],[1,2]]", &s2).is_err());
        let f = parse_matrix("[[1-z, x], [-y, s^2+q^2*z]]", &s2).unwrap();
        assert_eq!(format_matrix(&f), "[[-z + 1, x], [-y, q^2*z + s^2]]");
    }

    #[test]
    fn rmatrix_file() {
        let text = "# standard R for n = 1\nn = 1\n[[q]]\n";
        let r = parse_rmatrix(text).unwrap();
        assert_eq!(r.n(), 1);
        assert_eq!(r.get(0, 0), &ParamScalar::q());
        assert!(matches!(parse_rmatrix("n = 2\n[[1]]"), Err(Error::DimensionMismatch(_))));
        let r2 = crate::frt::standard_r(2);
        assert_eq!(parse_rmatrix(&format_rmatrix(&r2)).unwrap(), r2);
    }
}
