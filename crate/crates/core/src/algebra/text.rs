//! Canonical text form for operator polynomials.
//!
//! The printed grammar, which [`parse_op`] accepts back verbatim:
//!
//! ```text
//! X^2 P^2 - 2iħ X P - (2/3)ħ^2
//! ```
//!
//! Terms are sorted by descending total degree, then descending X power;
//! within one `X^a P^b` cell, ascending ħ power. Coefficients are exact:
//! integers print bare, fractions print as `(p/q)`, pure imaginaries carry
//! a trailing `i`, and genuinely complex values print as `(re±im i)`.
//! `hbar` is accepted as an ASCII spelling of `ħ`. Unit coefficients are
//! suppressed next to operator or ħ factors. Words must be normal-ordered:
//! an `X` after a `P` inside one term is rejected rather than silently
//! commuted.

use num::{BigInt, BigRational, One, Signed, Zero};

use super::{GaussRat, HbarPoly, OpPoly, MAX_DEGREE};
use crate::error::{Error, Result};

fn rational_plain(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rational_factor(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

fn power(sym: &str, e: u32) -> String {
    if e == 1 {
        sym.to_string()
    } else {
        format!("{sym}^{e}")
    }
}

/// Renders one `coeff · ħ^he · X^xe P^pe` printed term, returning the sign
/// separately so the caller can join terms with ` + ` / ` - `.
fn format_term(c: &GaussRat, he: u32, xe: u32, pe: u32) -> (bool, String) {
    let has_factor = he > 0 || xe > 0 || pe > 0;
    let (negative, coeff_str) = if c.im.is_zero() {
        let mag = c.re.abs();
        let s = if mag.is_one() && has_factor { String::new() } else { rational_factor(&mag) };
        (c.re.is_negative(), s)
    } else if c.re.is_zero() {
        let mag = c.im.abs();
        let s = if mag.is_one() { "i".to_string() } else { format!("{}i", rational_factor(&mag)) };
        (c.im.is_negative(), s)
    } else {
        let im_abs = c.im.abs();
        let im_str = if im_abs.is_one() { "i".to_string() } else { format!("{}i", rational_plain(&im_abs)) };
        let joiner = if c.im.is_negative() { "-" } else { "+" };
        (false, format!("({}{}{})", rational_plain(&c.re), joiner, im_str))
    };
    let mut s = coeff_str;
    if he > 0 {
        s.push_str(&power("ħ", he));
    }
    if xe > 0 {
        if !s.is_empty() {
            s.push(' ');
        }
        s.push_str(&power("X", xe));
    }
    if pe > 0 {
        if !s.is_empty() {
            s.push(' ');
        }
        s.push_str(&power("P", pe));
    }
    if s.is_empty() {
        s.push('1');
    }
    (negative, s)
}

/// Canonical text form of an operator polynomial.
pub fn format_op(op: &OpPoly) -> String {
    let mut triples: Vec<(u32, u32, u32, &GaussRat)> = Vec::new();
    for ((xe, pe), hp) in op.terms() {
        for (he, c) in hp.coeffs() {
            triples.push((xe, pe, he, c));
        }
    }
    if triples.is_empty() {
        return "0".to_string();
    }
    triples.sort_by(|a, b| {
        let da = a.0 + a.1;
        let db = b.0 + b.1;
        db.cmp(&da).then(b.0.cmp(&a.0)).then(a.2.cmp(&b.2))
    });
    let mut out = String::new();
    for (idx, (xe, pe, he, c)) in triples.iter().enumerate() {
        let (neg, body) = format_term(c, *he, *xe, *pe);
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Caret,
    LParen,
    RParen,
    Rational(BigRational),
    ImagUnit,
    Hbar,
    OpX,
    OpP,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { at: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn next_tok(&mut self) -> Result<Option<Tok>> {
        let c = match self.peek() {
            Some(c) => c,
            None => return Ok(None),
        };
        let tok = match c {
            '+' => {
                self.pos += 1;
                Tok::Plus
            }
            '-' | '−' => {
                self.pos += c.len_utf8();
                Tok::Minus
            }
            '^' => {
                self.pos += 1;
                Tok::Caret
            }
            '(' => {
                self.pos += 1;
                Tok::LParen
            }
            ')' => {
                self.pos += 1;
                Tok::RParen
            }
            '0'..='9' => {
                let num = self.digits()?;
                if self.src[self.pos..].starts_with('/') {
                    self.pos += 1;
                    let den = self.digits()?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    Tok::Rational(BigRational::new(num, den))
                } else {
                    Tok::Rational(BigRational::from_integer(num))
                }
            }
            'i' => {
                self.pos += 1;
                Tok::ImagUnit
            }
            'X' => {
                self.pos += 1;
                Tok::OpX
            }
            'P' => {
                self.pos += 1;
                Tok::OpP
            }
            'ħ' => {
                self.pos += c.len_utf8();
                Tok::Hbar
            }
            'h' => {
                if self.src[self.pos..].starts_with("hbar") {
                    self.pos += 4;
                    Tok::Hbar
                } else {
                    return Err(self.err("expected 'hbar'"));
                }
            }
            _ => return Err(self.err(&format!("unexpected character '{c}'"))),
        };
        Ok(Some(tok))
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_ascii_digit() {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        self.src[start..self.pos]
            .parse::<BigInt>()
            .map_err(|_| self.err("bad integer"))
    }

    fn uint(&mut self) -> Result<u32> {
        self.skip_ws();
        let v = self.digits()?;
        v.to_string().parse::<u32>().map_err(|_| self.err("exponent too large"))
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    lookahead: Option<Tok>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { lex: Lexer::new(src), lookahead: None }
    }

    fn peek(&mut self) -> Result<Option<Tok>> {
        if self.lookahead.is_none() {
            self.lookahead = self.lex.next_tok()?;
        }
        Ok(self.lookahead.clone())
    }

    fn bump(&mut self) -> Result<Option<Tok>> {
        let t = self.peek()?;
        self.lookahead = None;
        Ok(t)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { at: self.lex.pos, msg: msg.to_string() }
    }

    fn optional_exponent(&mut self) -> Result<u32> {
        if self.peek()? == Some(Tok::Caret) {
            self.bump()?;
            self.lex.uint()
        } else {
            Ok(1)
        }
    }

    /// Content between parentheses: a rational, optionally complex
    /// (`re±im i`, `re i`, ...).
    fn paren_coefficient(&mut self) -> Result<GaussRat> {
        let mut acc = GaussRat::zero();
        let mut sign = BigRational::one();
        let mut saw_component = false;
        loop {
            match self.bump()? {
                Some(Tok::Plus) => {}
                Some(Tok::Minus) => sign = -sign,
                Some(Tok::Rational(r)) => {
                    let v = &sign * &r;
                    if self.peek()? == Some(Tok::ImagUnit) {
                        self.bump()?;
                        acc.im += v;
                    } else {
                        acc.re += v;
                    }
                    sign = BigRational::one();
                    saw_component = true;
                }
                Some(Tok::ImagUnit) => {
                    acc.im += &sign * &BigRational::one();
                    sign = BigRational::one();
                    saw_component = true;
                }
                Some(Tok::RParen) => {
                    if !saw_component {
                        return Err(self.err("empty parentheses"));
                    }
                    return Ok(acc);
                }
                _ => return Err(self.err("expected rational, 'i', or ')'")),
            }
        }
    }

    fn parse(&mut self) -> Result<OpPoly> {
        let mut out = OpPoly::zero();
        let mut first = true;
        loop {
            match self.peek()? {
                None => {
                    if first {
                        return Err(self.err("empty input"));
                    }
                    return Ok(out);
                }
                Some(_) => {
                    let term = self.term(first)?;
                    out.add_assign(&term);
                    first = false;
                }
            }
        }
    }

    fn term(&mut self, first: bool) -> Result<OpPoly> {
        let mut negative = false;
        // Leading sign: mandatory separator after the first term, optional
        // before it.
        match self.peek()? {
            Some(Tok::Plus) => {
                self.bump()?;
            }
            Some(Tok::Minus) => {
                self.bump()?;
                negative = true;
            }
            _ if first => {}
            _ => return Err(self.err("expected '+' or '-' between terms")),
        }
        let mut coeff = GaussRat::one();
        let mut he = 0u32;
        let mut xe = 0u32;
        let mut pe = 0u32;
        let mut saw_atom = false;
        loop {
            match self.peek()? {
                Some(Tok::Rational(r)) => {
                    self.bump()?;
                    coeff = coeff.mul(&GaussRat::from_rational(r));
                }
                Some(Tok::LParen) => {
                    self.bump()?;
                    let c = self.paren_coefficient()?;
                    coeff = coeff.mul(&c);
                }
                Some(Tok::ImagUnit) => {
                    self.bump()?;
                    coeff = coeff.mul(&GaussRat::i());
                }
                Some(Tok::Hbar) => {
                    self.bump()?;
                    he = he
                        .checked_add(self.optional_exponent()?)
                        .ok_or_else(|| self.err("ħ exponent overflow"))?;
                }
                Some(Tok::OpX) => {
                    self.bump()?;
                    if pe > 0 {
                        return Err(self.err("X after P: terms must be normal-ordered"));
                    }
                    xe = xe
                        .checked_add(self.optional_exponent()?)
                        .ok_or_else(|| self.err("X exponent overflow"))?;
                }
                Some(Tok::OpP) => {
                    self.bump()?;
                    pe = pe
                        .checked_add(self.optional_exponent()?)
                        .ok_or_else(|| self.err("P exponent overflow"))?;
                }
                _ => break,
            }
            saw_atom = true;
        }
        if !saw_atom {
            return Err(self.err("empty term"));
        }
        if xe + pe > MAX_DEGREE {
            return Err(Error::DegreeCap(xe + pe, MAX_DEGREE));
        }
        if negative {
            coeff = coeff.neg();
        }
        Ok(OpPoly::monomial(xe, pe, HbarPoly::term(coeff, he)))
    }
}

/// Parses the grammar emitted by [`format_op`].
pub fn parse_op(src: &str) -> Result<OpPoly> {
    Parser::new(src).parse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{quantize_monomial, QuantScheme};

    fn bj22() -> OpPoly {
        quantize_monomial(2, 2, &QuantScheme::BornJordan).unwrap()
    }

    #[test]
    fn canonical_strings_for_the_ordered_squares() {
        assert_eq!(format_op(&bj22()), "X^2 P^2 - 2iħ X P - (2/3)ħ^2");
        let weyl = quantize_monomial(2, 2, &QuantScheme::Weyl).unwrap();
        assert_eq!(format_op(&weyl), "X^2 P^2 - 2iħ X P - (1/2)ħ^2");
        assert_eq!(format_op(&OpPoly::zero()), "0");
    }

    #[test]
    fn printed_forms_parse_back_to_the_same_polynomial() {
        for op in [
            bj22(),
            quantize_monomial(3, 2, &QuantScheme::Tau(BigRational::new(1.into(), 3.into())))
                .unwrap(),
            OpPoly::x().commutator(&OpPoly::p()).unwrap(),
            OpPoly::one(),
        ] {
            let text = format_op(&op);
            let back = parse_op(&text).unwrap();
            assert_eq!(back, op, "round trip through {text:?}");
        }
    }

    #[test]
    fn ascii_spellings_are_accepted() {
        let reference = bj22();
        let ascii = parse_op("X^2 P^2 - 2ihbar X P - (2/3)hbar^2").unwrap();
        assert_eq!(ascii, reference);
        let unicode_minus = parse_op("X^2 P^2 \u{2212} 2iħ X P \u{2212} (2/3)ħ^2").unwrap();
        assert_eq!(unicode_minus, reference);
    }

    #[test]
    fn words_must_be_normal_ordered() {
        let err = parse_op("P X").unwrap_err();
        match err {
            Error::Parse { msg, .. } => assert!(msg.contains("normal-ordered")),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(parse_op("X P").is_ok());
        assert!(parse_op("2 X P^2").is_ok());
    }

    #[test]
    fn malformed_input_is_rejected_with_positions() {
        assert!(parse_op("").is_err());
        assert!(parse_op("()").is_err());
        assert!(parse_op("1/0").is_err());
        assert!(parse_op("X +").is_err());
        assert!(parse_op("X ? P").is_err());
        assert!(parse_op("hbor").is_err());
        match parse_op("X ? P").unwrap_err() {
            Error::Parse { at, .. } => assert_eq!(at, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn mixed_complex_coefficients_survive_the_round_trip() {
        let mut op = OpPoly::monomial(
            1,
            1,
            HbarPoly::term(GaussRat::from_ratio(3, 4).add(&GaussRat::i().mul(&GaussRat::from_int(-2))), 1),
        );
        op.add_assign(&OpPoly::monomial(0, 2, HbarPoly::constant(GaussRat::from_ratio(-5, 7))));
        let text = format_op(&op);
        assert_eq!(parse_op(&text).unwrap(), op);
    }
}
