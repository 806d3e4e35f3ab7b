//! Text input: binary forms, morphisms, projective points, and the field
//! flag, via a small recursive-descent parser.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! form   := "-"? term (("+" | "-") term)*
//! term   := coeff ("*" mono)? | mono
//! mono   := var ("^" nat)? ("*" var ("^" nat)?)*
//! var    := "u" | "v"
//! coeff  := nat ("/" nat)?
//! point  := "(" scalar (":" scalar)+ ")"
//! scalar := "-"? nat ("/" nat)?
//! map    := "(" form (":" form)+ ")"
//! ```
//!
//! Homogeneity is checked after parsing, not in the grammar, so a mixed
//! input like `u + v^2` reports the offending term's position. Everything a
//! form or point renders to parses back to an equal value.

use curvelift_core::{
    BinaryForm, Error, FieldSpec, MorphismP1, ProjectivePoint, Result, Scalar,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Token {
    Int(u64),
    Var(char),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Colon,
}

fn describe(token: Token) -> String {
    match token {
        Token::Int(n) => format!("integer '{n}'"),
        Token::Var(c) => format!("variable '{c}'"),
        Token::Plus => "'+'".into(),
        Token::Minus => "'-'".into(),
        Token::Star => "'*'".into(),
        Token::Caret => "'^'".into(),
        Token::Slash => "'/'".into(),
        Token::LParen => "'('".into(),
        Token::RParen => "')'".into(),
        Token::Colon => "':'".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        let token = match bytes[i] {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let lit = &text[start..i];
                let value = lit.parse::<u64>().map_err(|_| Error::BadScalarLiteral {
                    pos: start,
                    message: format!("integer literal '{lit}' is out of range"),
                })?;
                out.push((start, Token::Int(value)));
                continue;
            }
            b'u' => Token::Var('u'),
            b'v' => Token::Var('v'),
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'^' => Token::Caret,
            b'/' => Token::Slash,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b':' => Token::Colon,
            _ => {
                let ch = text[i..].chars().next().expect("valid char boundary");
                return Err(Error::Syntax {
                    pos: i,
                    message: format!("unexpected character '{ch}'"),
                });
            }
        };
        out.push((start, token));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    field: FieldSpec,
    tokens: Vec<(usize, Token)>,
    cursor: usize,
    text_len: usize,
}

impl Parser {
    fn new(field: FieldSpec, text: &str) -> Result<Parser> {
        Ok(Parser {
            field,
            tokens: lex(text)?,
            cursor: 0,
            text_len: text.len(),
        })
    }

    fn peek(&self) -> Option<Token> {
        self.tokens.get(self.cursor).map(|&(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map_or(self.text_len, |&(p, _)| p)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.peek();
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn syntax(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos(),
            message: message.into(),
        }
    }

    fn expect(&mut self, token: Token) -> Result<()> {
        match self.peek() {
            Some(t) if t == token => {
                self.cursor += 1;
                Ok(())
            }
            Some(t) => Err(self.syntax(format!(
                "expected {}, found {}",
                describe(token),
                describe(t)
            ))),
            None => Err(self.syntax(format!("expected {}, found end of input", describe(token)))),
        }
    }

    fn at_end(&self) -> bool {
        self.cursor == self.tokens.len()
    }

    fn expect_end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.syntax(format!(
                "unexpected trailing {}",
                describe(self.peek().expect("not at end"))
            )))
        }
    }

    /// nat — a bare unsigned integer token, range-checked into i64.
    fn nat(&mut self) -> Result<i64> {
        let pos = self.pos();
        match self.advance() {
            Some(Token::Int(n)) => i64::try_from(n).map_err(|_| Error::BadScalarLiteral {
                pos,
                message: format!("integer literal '{n}' is out of range"),
            }),
            Some(t) => Err(Error::Syntax {
                pos,
                message: format!("expected an integer, found {}", describe(t)),
            }),
            None => Err(Error::Syntax {
                pos,
                message: "expected an integer, found end of input".into(),
            }),
        }
    }

    /// coeff := nat ("/" nat)?, with the sign already decided by the caller.
    fn coeff(&mut self, negate: bool) -> Result<Scalar> {
        let pos = self.pos();
        let mut numerator = self.nat()?;
        if negate {
            numerator = -numerator;
        }
        if self.peek() == Some(Token::Slash) {
            self.advance();
            let denominator = self.nat()?;
            self.field
                .integer(numerator)
                .div(&self.field.integer(denominator))
                .map_err(|_| Error::BadScalarLiteral {
                    pos,
                    message: format!("denominator {denominator} is zero in this field"),
                })
        } else {
            Ok(self.field.integer(numerator))
        }
    }

    /// mono := var ("^" nat)? ("*" var ("^" nat)?)*
    fn mono(&mut self) -> Result<(usize, usize)> {
        let (mut u_exp, mut v_exp) = (0usize, 0usize);
        loop {
            let Some(Token::Var(var)) = self.peek() else {
                return Err(self.syntax("expected 'u' or 'v'"));
            };
            self.advance();
            let mut exp = 1usize;
            if self.peek() == Some(Token::Caret) {
                self.advance();
                let pos = self.pos();
                let n = self.nat()?;
                exp = usize::try_from(n).map_err(|_| Error::Syntax {
                    pos,
                    message: "exponent out of range".into(),
                })?;
            }
            if var == 'u' {
                u_exp += exp;
            } else {
                v_exp += exp;
            }
            if self.peek() == Some(Token::Star) {
                self.advance();
            } else {
                return Ok((u_exp, v_exp));
            }
        }
    }

    /// term := coeff ("*" mono)? | mono → (position, coefficient, u_exp, v_exp)
    fn term(&mut self, negate: bool) -> Result<(usize, Scalar, usize, usize)> {
        let pos = self.pos();
        match self.peek() {
            Some(Token::Int(_)) => {
                let c = self.coeff(negate)?;
                if self.peek() == Some(Token::Star) {
                    self.advance();
                    let (u_exp, v_exp) = self.mono()?;
                    Ok((pos, c, u_exp, v_exp))
                } else {
                    Ok((pos, c, 0, 0))
                }
            }
            Some(Token::Var(_)) => {
                let (u_exp, v_exp) = self.mono()?;
                let one = self.field.one();
                let c = if negate { one.neg() } else { one };
                Ok((pos, c, u_exp, v_exp))
            }
            _ => Err(self.syntax("expected a coefficient or a variable")),
        }
    }

    /// form := "-"? term (("+" | "-") term)*
    fn form(&mut self) -> Result<BinaryForm> {
        let mut negate = false;
        if self.peek() == Some(Token::Minus) {
            self.advance();
            negate = true;
        }
        let mut terms = vec![self.term(negate)?];
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.advance();
                    terms.push(self.term(false)?);
                }
                Some(Token::Minus) => {
                    self.advance();
                    terms.push(self.term(true)?);
                }
                _ => break,
            }
        }
        let degree = terms[0].2 + terms[0].3;
        for &(pos, _, u_exp, v_exp) in &terms[1..] {
            if u_exp + v_exp != degree {
                return Err(Error::NotHomogeneous {
                    pos,
                    degrees: (degree, u_exp + v_exp),
                });
            }
        }
        let mut coeffs = vec![self.field.zero(); degree + 1];
        for (_, c, _, v_exp) in terms {
            coeffs[v_exp] = coeffs[v_exp].add(&c).expect("same field");
        }
        BinaryForm::from_coeffs(self.field, coeffs)
    }

    /// scalar := "-"? nat ("/" nat)?
    fn scalar(&mut self) -> Result<Scalar> {
        let mut negate = false;
        if self.peek() == Some(Token::Minus) {
            self.advance();
            negate = true;
        }
        self.coeff(negate)
    }
}

/// Parses a homogeneous binary form in u and v over the given field.
pub fn parse_form(field: FieldSpec, text: &str) -> Result<BinaryForm> {
    let mut parser = Parser::new(field, text)?;
    let form = parser.form()?;
    parser.expect_end()?;
    Ok(form)
}

/// Parses a projective point "(a:b:…)" with integer or fractional entries.
pub fn parse_point(field: FieldSpec, text: &str) -> Result<ProjectivePoint> {
    let mut parser = Parser::new(field, text)?;
    parser.expect(Token::LParen)?;
    let mut coords = vec![parser.scalar()?];
    while parser.peek() == Some(Token::Colon) {
        parser.advance();
        coords.push(parser.scalar()?);
    }
    if coords.len() < 2 {
        return Err(parser.syntax("a point needs at least two coordinates"));
    }
    parser.expect(Token::RParen)?;
    parser.expect_end()?;
    ProjectivePoint::new(field, coords)
}

/// Parses a morphism "(F_0 : F_1 : …)" with at least two coordinate forms,
/// normalizing it and reporting the stripped common factor if there was one.
pub fn parse_morphism(
    field: FieldSpec,
    text: &str,
) -> Result<(MorphismP1, Option<BinaryForm>)> {
    let mut parser = Parser::new(field, text)?;
    parser.expect(Token::LParen)?;
    let mut forms = vec![parser.form()?];
    while parser.peek() == Some(Token::Colon) {
        parser.advance();
        forms.push(parser.form()?);
    }
    if forms.len() < 2 {
        return Err(parser.syntax("a morphism needs at least two components"));
    }
    parser.expect(Token::RParen)?;
    parser.expect_end()?;
    MorphismP1::new_with_factor(field, forms)
}

/// Parses a semicolon-separated list of points; empty input is the empty
/// list.
pub fn parse_point_list(field: FieldSpec, text: &str) -> Result<Vec<ProjectivePoint>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut points = Vec::new();
    let mut offset = 0;
    for fragment in text.split(';') {
        let point = parse_point(field, fragment).map_err(|e| shift_position(e, offset))?;
        points.push(point);
        offset += fragment.len() + 1;
    }
    Ok(points)
}

/// Re-anchors a fragment-relative error position in the full input text.
fn shift_position(error: Error, by: usize) -> Error {
    match error {
        Error::Syntax { pos, message } => Error::Syntax {
            pos: pos + by,
            message,
        },
        Error::BadScalarLiteral { pos, message } => Error::BadScalarLiteral {
            pos: pos + by,
            message,
        },
        Error::NotHomogeneous { pos, degrees } => Error::NotHomogeneous {
            pos: pos + by,
            degrees,
        },
        other => other,
    }
}

/// Parses the --field flag: "Q" for the rationals, "F<p>" for a prime field.
pub fn parse_field_flag(text: &str) -> std::result::Result<FieldSpec, String> {
    if text == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(rest) = text.strip_prefix('F') {
        let p: u64 = rest
            .parse()
            .map_err(|_| format!("invalid field '{text}': expected Q or F<p> with p prime"))?;
        return FieldSpec::prime(p).map_err(|e| e.to_string());
    }
    Err(format!(
        "invalid field '{text}': expected Q or F<p> with p prime"
    ))
}
