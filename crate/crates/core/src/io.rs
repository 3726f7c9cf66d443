//! File formats: matroids and fans as JSON, ideals as plain text.
//!
//! Rationals in JSON are strings `"p/q"` or `"p"` (bare JSON integers are
//! also accepted on input).  The ideal format is line-oriented: a `vars n`
//! header, then one polynomial per line over `x1 … xn` with `+ - * ^` and
//! parenthesized subexpressions; implicit multiplication is not allowed.
//! Lines starting with `#` are comments.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::Error;
use crate::fan::{WeightedCone, WeightedFan};
use crate::groebner::{Ideal, Polynomial};
use crate::linalg::{Rational, RationalMatrix};
use crate::matroid::{Matroid, Subset};

/// Parse `"p"` or `"p/q"` with a nonzero denominator.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        None => (s, None),
        Some((n, d)) => (n, Some(d)),
    };
    let parse_int = |t: &str| {
        BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("'{t}' is not an integer")))
    };
    let n = parse_int(num)?;
    let d = match den {
        None => BigInt::one(),
        Some(d) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in '{s}'")));
            }
            d
        }
    };
    Ok(Rational::new(n, d))
}

pub fn rational_to_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn rational_from_value(v: &Value) -> Result<Rational, Error> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(BigInt::from(i)))
            } else {
                Err(Error::Parse(format!(
                    "non-integer number {n}; write rationals as \"p/q\" strings"
                )))
            }
        }
        other => Err(Error::Parse(format!(
            "expected a rational (string or integer), found {other}"
        ))),
    }
}

fn vector_from_value(v: &Value) -> Result<Vec<Rational>, Error> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array of rationals, found {v}")))?
        .iter()
        .map(rational_from_value)
        .collect()
}

fn usize_field(obj: &serde_json::Map<String, Value>, key: &str) -> Result<usize, Error> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| Error::Parse(format!("missing or invalid field '{key}'")))
}

/// Read a matroid from JSON.  Accepts four forms: explicit
/// `{"n":…, "bases":[[…]]}`, `{"uniform":[r,n]}`, `{"matrix":[[…]]}`
/// (columns are the vectors), and `{"builtin":"vamos"}`.
pub fn matroid_from_json(text: &str) -> Result<Matroid, Error> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("matroid file must be a JSON object".into()))?;

    if let Some(u) = obj.get("uniform") {
        let pair = u
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Parse("'uniform' takes a pair [r, n]".into()))?;
        let r = pair[0]
            .as_u64()
            .ok_or_else(|| Error::Parse("uniform rank must be a non-negative integer".into()))?;
        let n = pair[1]
            .as_u64()
            .ok_or_else(|| Error::Parse("uniform size must be a non-negative integer".into()))?;
        return Matroid::uniform(r as usize, n as usize);
    }
    if let Some(mx) = obj.get("matrix") {
        let rows = mx
            .as_array()
            .ok_or_else(|| Error::Parse("'matrix' must be an array of rows".into()))?
            .iter()
            .map(vector_from_value)
            .collect::<Result<Vec<_>, _>>()?;
        return Matroid::from_matrix(&RationalMatrix::from_rows(rows)?);
    }
    if let Some(b) = obj.get("builtin") {
        return match b.as_str() {
            Some("vamos") => Ok(Matroid::vamos()),
            _ => Err(Error::Parse(format!(
                "unknown builtin {b}; available: \"vamos\""
            ))),
        };
    }

    let n = usize_field(obj, "n")?;
    let bases_val = obj
        .get("bases")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing 'bases' array".into()))?;
    let mut bases = Vec::new();
    for b in bases_val {
        let elems = b
            .as_array()
            .ok_or_else(|| Error::Parse(format!("basis {b} is not an array")))?
            .iter()
            .map(|e| {
                e.as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| Error::Parse(format!("element {e} is not a positive integer")))
            })
            .collect::<Result<Vec<usize>, _>>()?;
        bases.push(Subset::from_elements(n, &elems)?);
    }
    Matroid::from_bases(n, bases)
}

/// Canonical JSON for a matroid: explicit bases, sorted lexicographically.
pub fn matroid_to_json(m: &Matroid) -> String {
    let bases: Vec<Vec<usize>> = m.bases().iter().map(|b| b.elements()).collect();
    let v = json!({ "n": m.n(), "bases": bases });
    format!(
        "{}\n",
        serde_json::to_string_pretty(&v).expect("serializable")
    )
}

/// Read a fan from JSON: `{"n":…, "lineality":[[…]], "cones":[{"rays":[[…]],
/// "weight":…, "label":…}]}`.  `lineality`, `weight`, and `label` may be
/// omitted (empty, 1, and "" respectively).
pub fn fan_from_json(text: &str) -> Result<WeightedFan, Error> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("fan file must be a JSON object".into()))?;
    let n = usize_field(obj, "n")?;
    let lineality = match obj.get("lineality") {
        None => Vec::new(),
        Some(l) => l
            .as_array()
            .ok_or_else(|| Error::Parse("'lineality' must be an array of vectors".into()))?
            .iter()
            .map(vector_from_value)
            .collect::<Result<Vec<_>, _>>()?,
    };
    let cones_val = obj
        .get("cones")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing 'cones' array".into()))?;
    let mut cones = Vec::new();
    for c in cones_val {
        let cobj = c
            .as_object()
            .ok_or_else(|| Error::Parse(format!("cone {c} is not an object")))?;
        let rays = match cobj.get("rays") {
            None => Vec::new(),
            Some(r) => r
                .as_array()
                .ok_or_else(|| Error::Parse("'rays' must be an array of vectors".into()))?
                .iter()
                .map(vector_from_value)
                .collect::<Result<Vec<_>, _>>()?,
        };
        let weight = match cobj.get("weight") {
            None => 1,
            Some(w) => w
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("weight {w} is not an integer")))?,
        };
        let label = match cobj.get("label") {
            None => String::new(),
            Some(l) => l
                .as_str()
                .ok_or_else(|| Error::Parse(format!("label {l} is not a string")))?
                .to_string(),
        };
        cones.push(WeightedCone {
            rays,
            weight,
            label,
        });
    }
    WeightedFan::new(n, lineality, cones)
}

/// Canonical JSON for a fan; rationals serialize as `"p"` / `"p/q"` strings.
pub fn fan_to_json(f: &WeightedFan) -> String {
    let vecs = |rows: &[Vec<Rational>]| -> Vec<Vec<String>> {
        rows.iter()
            .map(|r| r.iter().map(rational_to_string).collect())
            .collect()
    };
    let cones: Vec<Value> = f
        .cones()
        .iter()
        .map(|c| {
            json!({
                "rays": vecs(&c.rays),
                "weight": c.weight,
                "label": c.label,
            })
        })
        .collect();
    let v = json!({
        "n": f.n(),
        "lineality": vecs(f.lineality()),
        "cones": cones,
    });
    format!(
        "{}\n",
        serde_json::to_string_pretty(&v).expect("serializable")
    )
}

/// An ideal read from text, plus any warnings the screen produced
/// (monomial generators, dropped zero lines).
#[derive(Clone, Debug)]
pub struct ParsedIdeal {
    pub ideal: Ideal,
    pub warnings: Vec<String>,
}

/// Parse the line-oriented ideal format.
pub fn ideal_from_text(text: &str) -> Result<ParsedIdeal, Error> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty ideal file; expected a 'vars n' header".into()))?;
    let n = header
        .strip_prefix("vars")
        .map(str::trim)
        .and_then(|t| t.parse::<usize>().ok())
        .ok_or_else(|| Error::Parse(format!("first line must be 'vars n', found '{header}'")))?;

    let mut generators = Vec::new();
    let mut warnings = Vec::new();
    for (lineno, line) in lines {
        let p = parse_polynomial(line, n)
            .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        if p.is_zero() {
            warnings.push(format!(
                "line {}: polynomial is zero; generator dropped",
                lineno + 1
            ));
            continue;
        }
        if p.is_monomial() {
            warnings.push(format!(
                "line {}: generator '{p}' is a monomial — a prime ideal containing it \
                 contains a variable (a loop); downstream checks may reject this ideal",
                lineno + 1
            ));
        }
        generators.push(p);
    }
    Ok(ParsedIdeal {
        ideal: Ideal::new(n, generators)?,
        warnings,
    })
}

/// Canonical text for an ideal.
pub fn ideal_to_text(p: &Ideal) -> String {
    let mut out = format!("vars {}\n", p.nvars());
    for g in p.generators() {
        let _ = writeln!(out, "{g}");
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Token>, String> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '/' => {
                tokens.push(Token::Slash);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
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
                tokens.push(Token::Number(
                    BigInt::from_str(&text).map_err(|_| format!("bad number '{text}'"))?,
                ));
            }
            'x' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == start {
                    return Err("variable name must be x followed by digits (x1, x2, …)".into());
                }
                let text: String = chars[start..j].iter().collect();
                let idx: usize = text
                    .parse()
                    .map_err(|_| format!("bad variable index '{text}'"))?;
                tokens.push(Token::Var(idx));
                i = j;
            }
            other => return Err(format!("unexpected character '{other}'")),
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    // expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Polynomial, String> {
        let mut negate_first = false;
        match self.peek() {
            Some(Token::Minus) => {
                negate_first = true;
                self.pos += 1;
            }
            Some(Token::Plus) => {
                self.pos += 1;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate_first { first.neg() } else { first };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<Polynomial, String> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                // adjacency of two operands means implicit multiplication
                Some(Token::Var(_)) | Some(Token::Number(_)) | Some(Token::LParen) => {
                    return Err(
                        "implicit multiplication is not allowed; write 2*x1, not 2x1".into(),
                    );
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // factor := base ('^' number)?
    fn factor(&mut self) -> Result<Polynomial, String> {
        let base = self.base()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            let e = match self.next() {
                Some(Token::Number(e)) => e.clone(),
                other => return Err(format!("expected an exponent after '^', found {other:?}")),
            };
            let e: u32 = e
                .try_into()
                .map_err(|_| "exponent out of range".to_string())?;
            if e > 256 {
                return Err(format!("exponent {e} exceeds the supported maximum 256"));
            }
            let mut acc = Polynomial::constant(self.nvars, Rational::one());
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    // base := number ['/' number] | variable | '(' expr ')'
    fn base(&mut self) -> Result<Polynomial, String> {
        match self.next().cloned() {
            Some(Token::Number(n)) => {
                if let Some(Token::Slash) = self.peek() {
                    self.pos += 1;
                    match self.next().cloned() {
                        Some(Token::Number(d)) => {
                            if d.is_zero() {
                                return Err("zero denominator".into());
                            }
                            Ok(Polynomial::constant(self.nvars, Rational::new(n, d)))
                        }
                        other => Err(format!("expected a denominator, found {other:?}")),
                    }
                } else {
                    Ok(Polynomial::constant(self.nvars, Rational::from_integer(n)))
                }
            }
            Some(Token::Var(i)) => {
                if i == 0 || i > self.nvars {
                    return Err(format!(
                        "variable x{i} out of range (ring has x1 … x{})",
                        self.nvars
                    ));
                }
                Ok(Polynomial::var(self.nvars, i))
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err("missing closing parenthesis".into()),
                }
            }
            other => Err(format!(
                "expected a number, variable, or '(', found {other:?}"
            )),
        }
    }
}

/// Parse one polynomial over `x1 … xn`.
pub fn parse_polynomial(input: &str, nvars: usize) -> Result<Polynomial, Error> {
    let tokens = tokenize(input).map_err(Error::Parse)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        nvars,
    };
    let p = parser.expr().map_err(Error::Parse)?;
    if parser.pos != tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input after position {}",
            parser.pos
        )));
    }
    Ok(p)
}
