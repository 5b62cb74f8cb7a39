use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::ast::{ClaimFile, SeriesExpr, Statement};
use super::eval::is_builtin_name;
use crate::congruence::Progression;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected {}, found {found}", expected.join(" or "))]
    Syntax {
        expected: Vec<String>,
        found: String,
    },
    #[error("unknown series name `{0}`")]
    UnknownName(String),
    #[error("`{func}` takes {expected} arguments, found {found}")]
    Arity {
        func: String,
        expected: usize,
        found: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("duplicate label \"{0}\"")]
    DuplicateLabel(String),
    #[error("series `{0}` is already defined")]
    DuplicateName(String),
    #[error("`{0}` is reserved and cannot name a series")]
    ReservedName(String),
    #[error("unterminated string")]
    UnterminatedString,
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Str(String),
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
    Colon,
    Assign,
    EqEq,
    Newline,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(i) => format!("`{i}`"),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Assign => "`=`".into(),
            Tok::EqEq => "`==`".into(),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, col, kind| ParseError { line, col, kind };
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let mut push = |tok| {
            out.push(Token {
                tok,
                line: tl,
                col: tc,
            })
        };
        match c {
            '\n' => {
                push(Tok::Newline);
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            c if c.is_whitespace() => {}
            '+' => push(Tok::Plus),
            '-' => push(Tok::Minus),
            '*' => push(Tok::Star),
            '/' => push(Tok::Slash),
            '^' => push(Tok::Caret),
            '(' => push(Tok::LParen),
            ')' => push(Tok::RParen),
            '[' => push(Tok::LBracket),
            ']' => push(Tok::RBracket),
            ',' => push(Tok::Comma),
            ':' => push(Tok::Colon),
            '=' => {
                if chars.get(i + 1) == Some(&'=') {
                    push(Tok::EqEq);
                    i += 2;
                    col += 2;
                    continue;
                }
                push(Tok::Assign);
            }
            '"' => {
                let mut s = String::new();
                let mut j = i + 1;
                loop {
                    match chars.get(j) {
                        None | Some('\n') => {
                            return Err(err(tl, tc, ParseErrorKind::UnterminatedString))
                        }
                        Some('"') => break,
                        Some('\\') if matches!(chars.get(j + 1), Some('"') | Some('\\')) => {
                            s.push(chars[j + 1]);
                            j += 2;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            j += 1;
                        }
                    }
                }
                push(Tok::Str(s));
                col += j + 1 - i;
                i = j + 1;
                continue;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                push(Tok::Int(digits.parse().expect("ascii digits")));
                col += i - start;
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                push(Tok::Ident(chars[start..i].iter().collect()));
                col += i - start;
                continue;
            }
            other => return Err(err(tl, tc, ParseErrorKind::UnexpectedChar(other))),
        }
        i += 1;
        col += 1;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

const KEYWORDS: &[&str] = &[
    "series",
    "identity",
    "congruence",
    "internal",
    "mod",
    "n",
    "q",
    "extract",
    "huff",
    "subst",
];

fn eta_scale(ident: &str) -> Option<&str> {
    let digits = ident.strip_prefix('f')?;
    (!digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())).then_some(digits)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    defined: HashSet<String>,
    labels: HashSet<String>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if &self.peek().tok == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error_at(&self, tok: &Token, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: tok.line,
            col: tok.col,
            kind,
        }
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let t = self.peek();
        self.error_at(
            t,
            ParseErrorKind::Syntax {
                expected: expected.iter().map(|s| s.to_string()).collect(),
                found: t.tok.describe(),
            },
        )
    }

    fn expect(&mut self, tok: Tok) -> PResult<Token> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&[&tok.describe()]))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<()> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => Err(self.unexpected(&[&format!("`{kw}`")])),
        }
    }

    fn integer(&mut self) -> PResult<(BigInt, Token)> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(ref v) => {
                let v = v.clone();
                self.bump();
                Ok((v, t))
            }
            _ => Err(self.unexpected(&["integer"])),
        }
    }

    fn small<T: TryFrom<BigInt>>(&self, v: BigInt, at: &Token, what: &str) -> PResult<T> {
        T::try_from(v.clone()).map_err(|_| {
            self.error_at(
                at,
                ParseErrorKind::InvalidParameter(format!("{what} {v} is out of range")),
            )
        })
    }

    fn signed_integer(&mut self) -> PResult<(BigInt, Token)> {
        let at = self.peek().clone();
        let neg = self.eat(&Tok::Minus);
        let (v, _) = self.integer()?;
        Ok((if neg { -v } else { v }, at))
    }

    fn label(&mut self) -> PResult<String> {
        let t = self.peek().clone();
        let Tok::Str(label) = t.tok.clone() else {
            return Err(self.unexpected(&["quoted label"]));
        };
        self.bump();
        if !self.labels.insert(label.clone()) {
            return Err(self.error_at(&t, ParseErrorKind::DuplicateLabel(label)));
        }
        Ok(label)
    }

    fn series_name(&mut self) -> PResult<String> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Ident(name) => {
                let name = name.clone();
                self.bump();
                if !self.resolves(&name) {
                    return Err(self.error_at(&t, ParseErrorKind::UnknownName(name)));
                }
                Ok(name)
            }
            _ => Err(self.unexpected(&["series name"])),
        }
    }

    fn resolves(&self, name: &str) -> bool {
        !KEYWORDS.contains(&name) && (self.defined.contains(name) || is_builtin_name(name))
    }

    fn file(&mut self) -> PResult<ClaimFile> {
        let mut file = ClaimFile::default();
        loop {
            while self.eat(&Tok::Newline) {}
            if self.peek().tok == Tok::Eof {
                return Ok(file);
            }
            file.statements.push(self.statement()?);
            if !self.eat(&Tok::Newline) && self.peek().tok != Tok::Eof {
                return Err(self.unexpected(&["end of line"]));
            }
        }
    }

    fn statement(&mut self) -> PResult<Statement> {
        let t = self.peek().clone();
        let Tok::Ident(kw) = &t.tok else {
            return Err(self.unexpected(&["`series`", "`identity`", "`congruence`", "`internal`"]));
        };
        match kw.as_str() {
            "series" => {
                self.bump();
                let nt = self.peek().clone();
                let Tok::Ident(name) = nt.tok.clone() else {
                    return Err(self.unexpected(&["series name"]));
                };
                self.bump();
                if KEYWORDS.contains(&name.as_str()) || eta_scale(&name).is_some() {
                    return Err(self.error_at(&nt, ParseErrorKind::ReservedName(name)));
                }
                if self.defined.contains(&name) {
                    return Err(self.error_at(&nt, ParseErrorKind::DuplicateName(name)));
                }
                self.expect(Tok::Assign)?;
                let expr = self.expr()?;
                // defined only after its body, so a definition cannot refer to itself
                self.defined.insert(name.clone());
                Ok(Statement::Series { name, expr })
            }
            "identity" => {
                self.bump();
                let label = self.label()?;
                self.expect(Tok::Colon)?;
                let lhs = self.expr()?;
                self.expect(Tok::EqEq)?;
                let rhs = self.expr()?;
                Ok(Statement::Identity { label, lhs, rhs })
            }
            "congruence" => {
                self.bump();
                let label = self.label()?;
                self.expect(Tok::Colon)?;
                let series = self.series_name()?;
                let at = self.peek().clone();
                let progression = self.indexed()?;
                if progression.offset < 0 || progression.offset >= progression.step as i64 {
                    return Err(self.error_at(
                        &at,
                        ParseErrorKind::InvalidParameter(format!(
                            "offset must satisfy 0 <= B < A in {progression}"
                        )),
                    ));
                }
                self.expect(Tok::EqEq)?;
                let (zero, zt) = self.integer()?;
                if !zero.is_zero() {
                    return Err(self.error_at(
                        &zt,
                        ParseErrorKind::Syntax {
                            expected: vec!["`0`".into()],
                            found: format!("`{zero}`"),
                        },
                    ));
                }
                let modulus = self.modulus()?;
                Ok(Statement::Congruence {
                    label,
                    series,
                    progression,
                    modulus,
                })
            }
            "internal" => {
                self.bump();
                let label = self.label()?;
                self.expect(Tok::Colon)?;
                let series = self.series_name()?;
                let left = self.indexed()?;
                self.expect(Tok::EqEq)?;
                let at = self.peek().clone();
                let other = self.series_name()?;
                if other != series {
                    return Err(self.error_at(
                        &at,
                        ParseErrorKind::InvalidParameter(
                            "both sides of an internal congruence must index the same series"
                                .into(),
                        ),
                    ));
                }
                let right = self.indexed()?;
                let modulus = self.modulus()?;
                Ok(Statement::Internal {
                    label,
                    series,
                    left,
                    right,
                    modulus,
                })
            }
            _ => Err(self.unexpected(&["`series`", "`identity`", "`congruence`", "`internal`"])),
        }
    }

    fn modulus(&mut self) -> PResult<u64> {
        self.expect_keyword("mod")?;
        let (m, mt) = self.integer()?;
        let m: u64 = self.small(m, &mt, "modulus")?;
        if m < 2 {
            return Err(self.error_at(
                &mt,
                ParseErrorKind::InvalidParameter("modulus must be at least 2".into()),
            ));
        }
        Ok(m)
    }

    /// `[A*n+B]`, with `A*` and `+B` optional.
    fn indexed(&mut self) -> PResult<Progression> {
        self.expect(Tok::LBracket)?;
        let mut step = 1u64;
        if let Tok::Int(_) = self.peek().tok {
            let (a, at) = self.integer()?;
            step = self.small(a, &at, "step")?;
            if step == 0 {
                return Err(self.error_at(
                    &at,
                    ParseErrorKind::InvalidParameter("step must be positive".into()),
                ));
            }
            self.expect(Tok::Star)?;
        }
        self.expect_keyword("n")?;
        let mut offset = 0i64;
        if matches!(self.peek().tok, Tok::Plus | Tok::Minus) {
            let neg = self.bump().tok == Tok::Minus;
            let (b, bt) = self.integer()?;
            let b: i64 = self.small(b, &bt, "offset")?;
            offset = if neg { -b } else { b };
        }
        self.expect(Tok::RBracket)?;
        Ok(Progression::new(step, offset))
    }

    fn expr(&mut self) -> PResult<SeriesExpr> {
        let mut lhs = if self.eat(&Tok::Minus) {
            -self.term()?
        } else {
            self.term()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                lhs = lhs + self.term()?;
            } else if self.eat(&Tok::Minus) {
                lhs = lhs - self.term()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> PResult<SeriesExpr> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                lhs = lhs * self.factor()?;
            } else if self.eat(&Tok::Slash) {
                lhs = lhs / self.factor()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> PResult<SeriesExpr> {
        let (base, bare_q) = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let paren = self.eat(&Tok::LParen);
        let (e, et) = self.signed_integer()?;
        if paren {
            self.expect(Tok::RParen)?;
        }
        let e: i64 = self.small(e, &et, "exponent")?;
        Ok(if bare_q {
            SeriesExpr::QPower(e)
        } else {
            base.pow(e)
        })
    }

    fn atom(&mut self) -> PResult<(SeriesExpr, bool)> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(v) => {
                let v = v.clone();
                self.bump();
                Ok((SeriesExpr::Int(v), false))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok((e, false))
            }
            Tok::Ident(id) if id == "q" => {
                self.bump();
                Ok((SeriesExpr::QPower(1), true))
            }
            Tok::Ident(id) if matches!(id.as_str(), "extract" | "huff" | "subst") => {
                let func = id.clone();
                self.bump();
                Ok((self.call(&func, &t)?, false))
            }
            Tok::Ident(id) => {
                if let Some(digits) = eta_scale(id) {
                    let m = digits
                        .parse::<u64>()
                        .ok()
                        .filter(|&m| m >= 1)
                        .ok_or_else(|| {
                            self.error_at(
                                &t,
                                ParseErrorKind::InvalidParameter(format!(
                                    "eta scale in `{id}` must be a positive integer"
                                )),
                            )
                        })?;
                    self.bump();
                    return Ok((SeriesExpr::Eta(m), false));
                }
                let name = self.series_name()?;
                Ok((SeriesExpr::Name(name), false))
            }
            _ => Err(self.unexpected(&[
                "f<m>",
                "q",
                "integer",
                "series name",
                "`(`",
                "`extract`",
                "`huff`",
                "`subst`",
            ])),
        }
    }

    fn call(&mut self, func: &str, at: &Token) -> PResult<SeriesExpr> {
        self.expect(Tok::LParen)?;
        let inner = self.expr()?;
        let mut params = Vec::new();
        while self.eat(&Tok::Comma) {
            let (v, vt) = self.integer()?;
            params.push(self.small::<u64>(v, &vt, "parameter")?);
        }
        self.expect(Tok::RParen)?;
        let expected = if func == "extract" { 3 } else { 2 };
        if params.len() + 1 != expected {
            return Err(self.error_at(
                at,
                ParseErrorKind::Arity {
                    func: func.to_string(),
                    expected,
                    found: params.len() + 1,
                },
            ));
        }
        let step = params[0];
        if step == 0 {
            return Err(self.error_at(
                at,
                ParseErrorKind::InvalidParameter(format!("`{func}` step must be positive")),
            ));
        }
        Ok(match func {
            "extract" => {
                let residue = params[1];
                if residue >= step {
                    return Err(self.error_at(
                        at,
                        ParseErrorKind::InvalidParameter(format!(
                            "residue {residue} must be below step {step}"
                        )),
                    ));
                }
                inner.extract(step, residue)
            }
            "huff" => inner.huff(step),
            _ => inner.subst(step),
        })
    }
}

/// Parses a claim file.
pub fn parse(text: &str) -> Result<ClaimFile, ParseError> {
    let mut p = Parser {
        tokens: lex(text)?,
        pos: 0,
        defined: HashSet::new(),
        labels: HashSet::new(),
    };
    p.file()
}

/// Parses a single series expression; names must be built-ins.
pub fn parse_expr(text: &str) -> Result<SeriesExpr, ParseError> {
    let mut p = Parser {
        tokens: lex(text)?,
        pos: 0,
        defined: HashSet::new(),
        labels: HashSet::new(),
    };
    while p.eat(&Tok::Newline) {}
    let e = p.expr()?;
    while p.eat(&Tok::Newline) {}
    if p.peek().tok != Tok::Eof {
        return Err(p.unexpected(&["end of input", "operator"]));
    }
    Ok(e)
}
