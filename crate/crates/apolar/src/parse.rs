//! Text input/output for binary forms.
//!
//! Two input syntaxes are accepted by [`parse_form`]:
//!
//! * a JSON object `{"degree": l, "coeffs": ["a0", ..., "al"]}` where
//!   `coeffs[k]` is the coefficient of `X0^k X1^(l−k)` as a rational string;
//! * an expression over `X0`, `X1` with integer or rational coefficients and
//!   the operators `+`, `-`, `*`, `^` and parentheses, e.g.
//!   `X0^2*X1 - 1/2*X1^3`.
//!
//! [`render_form`] emits the JSON flavour; `parse_form(render_form(p)) == p`
//! bit-exactly, including the nominal degree of zero forms.

use crate::form::BinaryForm;
use crate::rational::{parse_rational, render_rational, Rational};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("unexpected character {0:?} at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {expected}, found {found}")]
    Expected { expected: String, found: String },
    #[error("zero denominator in rational literal")]
    ZeroDenominator,
    #[error("exponent too large: {0}")]
    HugeExponent(u64),
    #[error("polynomial is not homogeneous: saw total degrees {0} and {1}")]
    NotHomogeneous(usize, usize),
    #[error("malformed JSON form: {0}")]
    Json(String),
}

/// Canonical JSON rendering: `{"coeffs":[...],"degree":l}` with rational
/// strings in lowest terms.
pub fn render_form(p: &BinaryForm) -> String {
    let coeffs: Vec<serde_json::Value> = p
        .coeffs()
        .iter()
        .map(|c| serde_json::Value::String(render_rational(c)))
        .collect();
    serde_json::json!({ "degree": p.degree(), "coeffs": coeffs }).to_string()
}

/// Parse either syntax; see the module docs.
pub fn parse_form(input: &str) -> Result<BinaryForm, ParseError> {
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Err(ParseError::Empty);
    }
    if trimmed.starts_with('{') {
        parse_json_form(trimmed)
    } else {
        parse_expression(trimmed)
    }
}

fn parse_json_form(input: &str) -> Result<BinaryForm, ParseError> {
    let value: serde_json::Value =
        serde_json::from_str(input).map_err(|e| ParseError::Json(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| ParseError::Json("expected an object".into()))?;
    let degree = obj
        .get("degree")
        .and_then(serde_json::Value::as_u64)
        .ok_or_else(|| ParseError::Json("missing or invalid \"degree\"".into()))?
        as usize;
    let coeffs = obj
        .get("coeffs")
        .and_then(serde_json::Value::as_array)
        .ok_or_else(|| ParseError::Json("missing or invalid \"coeffs\"".into()))?;
    let mut parsed = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        let r = match c {
            serde_json::Value::String(s) => parse_rational(s),
            serde_json::Value::Number(n) => n.as_i64().map(crate::rational::rat_int),
            _ => None,
        };
        parsed.push(r.ok_or_else(|| ParseError::Json(format!("invalid coefficient {c}")))?);
    }
    BinaryForm::new(degree, parsed)
        .map_err(|_| ParseError::Json(format!("expected {} coefficients", degree + 1)))
}

// ---------------------------------------------------------------------------
// Expression parser: a small recursive-descent parser over the token stream.
// During parsing polynomials are kept as inhomogeneous coefficient tables
// (index = X0-exponent per total degree); homogeneity is checked at the end.
// The maximal total degree of any *written* monomial fixes the nominal degree
// even when terms cancel, so `0*X0^3` parses to the degree-3 zero form.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Number(Rational),
    X0,
    X1,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' | '\u{2212}' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '/' => {
                tokens.push(Token::Slash);
                i += 1;
            }
            '(' => {
                tokens.push(Token::LParen);
                i += 1;
            }
            ')' => {
                tokens.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let n = parse_rational(&text).ok_or(ParseError::UnexpectedEnd)?;
                tokens.push(Token::Number(n));
            }
            'X' | 'x' if matches!(chars.get(i + 1), Some('0') | Some('1')) => {
                tokens.push(if chars[i + 1] == '0' {
                    Token::X0
                } else {
                    Token::X1
                });
                i += 2;
            }
            _ => return Err(ParseError::UnexpectedChar(c, i)),
        }
    }
    Ok(tokens)
}

/// Inhomogeneous bivariate polynomial: `table[d][k]` multiplies `X0^k X1^(d−k)`.
/// `max_written` tracks the largest total degree that appeared syntactically.
#[derive(Debug, Clone)]
struct Poly {
    table: Vec<Vec<Rational>>,
    max_written: usize,
}

impl Poly {
    fn constant(c: Rational) -> Self {
        Poly {
            table: vec![vec![c]],
            max_written: 0,
        }
    }

    fn variable(which: usize) -> Self {
        let mut row = vec![Rational::zero(); 2];
        row[which] = Rational::one();
        Poly {
            table: vec![vec![Rational::zero()], row],
            max_written: 1,
        }
    }

    fn grow(&mut self, degree: usize) {
        while self.table.len() <= degree {
            let d = self.table.len();
            self.table.push(vec![Rational::zero(); d + 1]);
        }
    }

    fn add(mut self, other: &Poly) -> Poly {
        self.grow(other.table.len() - 1);
        for (d, row) in other.table.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                self.table[d][k] += c;
            }
        }
        self.max_written = self.max_written.max(other.max_written);
        self
    }

    fn negate(mut self) -> Poly {
        for row in &mut self.table {
            for c in row.iter_mut() {
                *c = -c.clone();
            }
        }
        self
    }

    fn multiply(&self, other: &Poly) -> Poly {
        let da = self.table.len() - 1;
        let db = other.table.len() - 1;
        let mut out = Poly::constant(Rational::zero());
        out.grow(da + db);
        for (d1, row1) in self.table.iter().enumerate() {
            for (k1, c1) in row1.iter().enumerate() {
                if c1.is_zero() {
                    continue;
                }
                for (d2, row2) in other.table.iter().enumerate() {
                    for (k2, c2) in row2.iter().enumerate() {
                        if !c2.is_zero() {
                            out.table[d1 + d2][k1 + k2] += c1 * c2;
                        }
                    }
                }
            }
        }
        out.max_written = self.max_written + other.max_written;
        out
    }

    fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::constant(Rational::one());
        acc.max_written = 0;
        for _ in 0..e {
            acc = acc.multiply(self);
        }
        acc.max_written = self.max_written * e;
        acc
    }

    fn into_form(self) -> Result<BinaryForm, ParseError> {
        let mut support_degree: Option<usize> = None;
        for (d, row) in self.table.iter().enumerate() {
            if row.iter().any(|c| !c.is_zero()) {
                match support_degree {
                    Some(prev) => return Err(ParseError::NotHomogeneous(prev, d)),
                    None => support_degree = Some(d),
                }
            }
        }
        match support_degree {
            Some(d) => Ok(BinaryForm::new(d, self.table[d].clone()).expect("row length matches")),
            // all terms cancelled (or literal zero): keep the written degree
            None => Ok(BinaryForm::zero(self.max_written)),
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    // expr := ['-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut negate_first = false;
        if self.peek() == Some(&Token::Minus) {
            self.next();
            negate_first = true;
        }
        let mut acc = self.term()?;
        if negate_first {
            acc = acc.negate();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Token::Minus) => {
                    self.next();
                    let t = self.term()?.negate();
                    acc = acc.add(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.next();
            let f = self.factor()?;
            acc = acc.multiply(&f);
        }
        Ok(acc)
    }

    // factor := atom ['^' uint]
    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.next();
            match self.next() {
                Some(Token::Number(n)) if n.is_integer() && n >= Rational::zero() => {
                    let e: u64 = n
                        .numer()
                        .try_into()
                        .map_err(|_| ParseError::HugeExponent(u64::MAX))?;
                    if e > 64 {
                        return Err(ParseError::HugeExponent(e));
                    }
                    Ok(base.pow(e as usize))
                }
                other => Err(ParseError::Expected {
                    expected: "a nonnegative integer exponent".into(),
                    found: format!("{other:?}"),
                }),
            }
        } else {
            Ok(base)
        }
    }

    // atom := number ['/' number] | X0 | X1 | '(' expr ')'
    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.next() {
            Some(Token::Number(n)) => {
                if self.peek() == Some(&Token::Slash) {
                    self.next();
                    match self.next() {
                        Some(Token::Number(d)) => {
                            if d.is_zero() {
                                return Err(ParseError::ZeroDenominator);
                            }
                            Ok(Poly::constant(n / d))
                        }
                        other => Err(ParseError::Expected {
                            expected: "an integer denominator".into(),
                            found: format!("{other:?}"),
                        }),
                    }
                } else {
                    Ok(Poly::constant(n))
                }
            }
            Some(Token::X0) => Ok(Poly::variable(1)),
            Some(Token::X1) => Ok(Poly::variable(0)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    other => Err(ParseError::Expected {
                        expected: "')'".into(),
                        found: format!("{other:?}"),
                    }),
                }
            }
            Some(t) => Err(ParseError::Expected {
                expected: "a factor".into(),
                found: format!("{t:?}"),
            }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }
}

fn parse_expression(input: &str) -> Result<BinaryForm, ParseError> {
    let tokens = tokenize(input)?;
    let mut parser = Parser { tokens, pos: 0 };
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(ParseError::Expected {
            expected: "end of input".into(),
            found: format!("{:?}", parser.tokens[parser.pos]),
        });
    }
    poly.into_form()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn parses_monomials_and_sums() {
        let p = parse_form("X0^2*X1^3").unwrap();
        assert_eq!(p, BinaryForm::monomial(5, 2));
        let p = parse_form("X0 + X1").unwrap();
        assert_eq!(p, BinaryForm::from_integers(1, &[1, 1]).unwrap());
        let p = parse_form("2*X0^2 - 1/2*X0*X1 + X1^2").unwrap();
        assert_eq!(
            p,
            BinaryForm::new(2, vec![rat_int(1), rat(-1, 2), rat_int(2)]).unwrap()
        );
    }

    #[test]
    fn parses_parenthesized_products() {
        let p = parse_form("X0*X1*(X0+X1)*(X0+3*X1)").unwrap();
        // X0^3 X1 + 4 X0^2 X1^2 + 3 X0 X1^3
        assert_eq!(p, BinaryForm::from_integers(4, &[0, 3, 4, 1, 0]).unwrap());
        let q = parse_form("(X0+X1)^2").unwrap();
        assert_eq!(q, BinaryForm::from_integers(2, &[1, 2, 1]).unwrap());
        let r = parse_form("-(X0-X1)^2 + X0^2").unwrap();
        assert_eq!(r, BinaryForm::from_integers(2, &[-1, 2, 0]).unwrap());
    }

    #[test]
    fn zero_and_degree_tracking() {
        assert_eq!(parse_form("0").unwrap(), BinaryForm::zero(0));
        assert_eq!(parse_form("0*X0^3").unwrap(), BinaryForm::zero(3));
        assert_eq!(parse_form("X0^2 - X0^2").unwrap(), BinaryForm::zero(2));
    }

    #[test]
    fn rejects_inhomogeneous_and_garbage() {
        assert!(matches!(
            parse_form("X0 + X1^2"),
            Err(ParseError::NotHomogeneous(1, 2))
        ));
        assert!(parse_form("X2").is_err());
        assert!(parse_form("X0^").is_err());
        assert!(parse_form("1/0").is_err());
        assert!(parse_form("").is_err());
        assert!(parse_form("X0 X1").is_err()); // implicit multiplication is not a thing
    }

    #[test]
    fn json_round_trip() {
        let p = BinaryForm::new(3, vec![rat(-1, 3), rat_int(0), rat_int(2), rat_int(1)]).unwrap();
        assert_eq!(parse_form(&render_form(&p)).unwrap(), p);
        let z = BinaryForm::zero(5);
        assert_eq!(parse_form(&render_form(&z)).unwrap(), z);
        // JSON with plain integer coefficients is accepted on input
        let q = parse_form(r#"{"degree": 1, "coeffs": [2, "1/2"]}"#).unwrap();
        assert_eq!(q, BinaryForm::new(1, vec![rat_int(2), rat(1, 2)]).unwrap());
        assert!(parse_form(r#"{"degree": 2, "coeffs": ["1"]}"#).is_err());
    }

    #[test]
    fn display_parses_back() {
        let p = BinaryForm::new(
            4,
            vec![rat(5, 2), rat_int(-3), rat_int(0), rat_int(1), rat_int(-1)],
        )
        .unwrap();
        assert_eq!(parse_form(&p.to_string()).unwrap(), p);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn render_parse_round_trip(degree in 0usize..8, seeds in proptest::collection::vec((-9i64..=9, 1i64..=9), 9)) {
                let coeffs: Vec<Rational> = (0..=degree).map(|k| rat(seeds[k].0, seeds[k].1)).collect();
                let p = BinaryForm::new(degree, coeffs).unwrap();
                prop_assert_eq!(parse_form(&render_form(&p)).unwrap(), p.clone());
                // the human-readable rendering parses back too (the Display of a
                // zero form drops the nominal degree, so only nonzero forms round-trip)
                if !p.is_zero() {
                    prop_assert_eq!(parse_form(&p.to_string()).unwrap(), p);
                }
            }
        }
    }
}
