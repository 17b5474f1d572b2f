//! Plain-text syntax for expressions, 3×3 frame literals and bindings.
//!
//! ```text
//! expr     = term { ("+" | "-") term } ;
//! term     = unary { ("*" | "/") unary } ;
//! unary    = "-" unary | power ;
//! power    = atom [ "^" integer ] ;
//! atom     = integer | ident | "(" expr ")" ;
//! ident    = (letter | "_") { letter | digit | "_" } { "'" } ;
//! matrix   = "[" row "," row "," row "]" ;
//! row      = "[" expr "," expr "," expr "]" ;
//! bindings = [ binding { ("," | newline) binding } ] ;
//! binding  = ident "=" expr ;
//! ```
//!
//! `i` is the imaginary unit and `theta`, `thetabar` the odd coordinates.
//! Other identifiers resolve to registered odd generators (`c`, `cbar` and
//! their primes) or registered even symbols; anything else is an
//! [`ParseError::UnknownSymbol`]. Multiplication is always explicit.
//!
//! Inside a frame literal the slot names `a … e`, `alpha … delta` stand for
//! the generic entry of that slot, e.g. `b` is `b_B + b_S*thetabar*theta`.

mod lexer;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::actions::VierbeinParams;
use crate::grassmann::{Generator, GrassmannError, Parity, SuperNumber};
use crate::ring::{GaussRat, RatFunc, Symbol};
use crate::supermatrix::GradedIndex;

use lexer::{tokenize, Spanned, Tok};
pub use lexer::Pos;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown symbol `{name}` at line {line}, column {column}")]
    UnknownSymbol {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("parity mismatch in slot {slot} (`{entry}`): expected {expected} entry at line {line}, column {column}")]
    ParityMismatch {
        slot: String,
        entry: &'static str,
        expected: &'static str,
        line: usize,
        column: usize,
    },
    #[error("binding for `{name}` must be a scalar")]
    NotScalar { name: String },
    #[error("at line {line}, column {column}: {source}")]
    Eval {
        line: usize,
        column: usize,
        source: GrassmannError,
    },
}

impl ParseError {
    /// `(line, column)` of the offending input, when known.
    pub fn position(&self) -> Option<(usize, usize)> {
        match *self {
            ParseError::Syntax { line, column, .. }
            | ParseError::UnknownSymbol { line, column, .. }
            | ParseError::ParityMismatch { line, column, .. }
            | ParseError::Eval { line, column, .. } => Some((line, column)),
            ParseError::NotScalar { .. } => None,
        }
    }
}

struct Parser {
    toks: Vec<Spanned>,
    at: usize,
    depth: usize,
    newline_ends: bool,
    macros: HashMap<&'static str, SuperNumber>,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Self {
            toks: tokenize(src)?,
            at: 0,
            depth: 0,
            newline_ends: false,
            macros: HashMap::new(),
        })
    }

    fn skip_blank(&mut self) {
        while self.toks[self.at].tok == Tok::Newline && !(self.newline_ends && self.depth == 0) {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> &Spanned {
        self.skip_blank();
        &self.toks[self.at]
    }

    fn bump(&mut self) -> Spanned {
        self.skip_blank();
        let t = self.toks[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn error_here(&mut self, what: &str) -> ParseError {
        let t = self.peek().clone();
        ParseError::Syntax {
            line: t.pos.line,
            column: t.pos.column,
            message: format!("expected {what}, found {}", t.tok.describe()),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error_here(what))
        }
    }

    fn expr(&mut self) -> Result<SuperNumber, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SuperNumber, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    let pos = self.bump().pos;
                    let rhs = self.unary()?;
                    let inv = rhs.inv().map_err(|source| ParseError::Eval {
                        line: pos.line,
                        column: pos.column,
                        source,
                    })?;
                    acc = &acc * &inv;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<SuperNumber, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<SuperNumber, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        match t.tok {
            Tok::Int(n) => match n.to_u32().filter(|&e| e <= MAX_EXPONENT) {
                Some(e) => Ok(base.pow(e)),
                None => Err(ParseError::Syntax {
                    line: t.pos.line,
                    column: t.pos.column,
                    message: format!("exponent exceeds {MAX_EXPONENT}"),
                }),
            },
            other => Err(ParseError::Syntax {
                line: t.pos.line,
                column: t.pos.column,
                message: format!("expected integer exponent, found {}", other.describe()),
            }),
        }
    }

    fn atom(&mut self) -> Result<SuperNumber, ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(n) => {
                self.bump();
                Ok(integer(n))
            }
            Tok::Ident(name) => {
                self.bump();
                self.resolve(&name, t.pos)
            }
            Tok::LParen => {
                self.bump();
                self.depth += 1;
                let v = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                self.depth -= 1;
                Ok(v)
            }
            _ => Err(self.error_here("a number, symbol or `(`")),
        }
    }

    fn resolve(&self, name: &str, pos: Pos) -> Result<SuperNumber, ParseError> {
        match name {
            "i" => return Ok(SuperNumber::i()),
            "theta" => return Ok(SuperNumber::theta()),
            "thetabar" => return Ok(SuperNumber::thetabar()),
            _ => {}
        }
        if let Some(v) = self.macros.get(name) {
            return Ok(v.clone());
        }
        if let Some(g) = Generator::lookup(name) {
            return Ok(SuperNumber::generator(g));
        }
        if let Some(s) = Symbol::lookup(name) {
            return Ok(SuperNumber::scalar(RatFunc::var(s)));
        }
        Err(ParseError::UnknownSymbol {
            name: name.to_owned(),
            line: pos.line,
            column: pos.column,
        })
    }

    fn end(&mut self) -> Result<(), ParseError> {
        if self.peek().tok == Tok::Eof {
            Ok(())
        } else {
            Err(self.error_here("an operator or end of input"))
        }
    }

    fn matrix(&mut self) -> Result<[[(SuperNumber, Pos); 3]; 3], ParseError> {
        self.expect(Tok::LBracket, "`[`")?;
        self.depth += 1;
        let mut rows = Vec::with_capacity(3);
        for r in 0..3 {
            if r > 0 {
                self.expect(Tok::Comma, "`,` between rows")?;
            }
            self.expect(Tok::LBracket, "`[` opening a row")?;
            let mut row = Vec::with_capacity(3);
            for c in 0..3 {
                if c > 0 {
                    self.expect(Tok::Comma, "`,` between entries")?;
                }
                let pos = self.peek().pos;
                row.push((self.expr()?, pos));
            }
            self.expect(Tok::RBracket, "`]` closing a row of three entries")?;
            rows.push(<[_; 3]>::try_from(row).expect("three entries"));
        }
        self.expect(Tok::RBracket, "`]` closing a matrix of three rows")?;
        self.depth -= 1;
        Ok(<[_; 3]>::try_from(rows).expect("three rows"))
    }
}

fn integer(n: BigInt) -> SuperNumber {
    SuperNumber::scalar(RatFunc::constant(GaussRat::from_rational(BigRational::from_integer(n))))
}

/// Parses a single expression.
pub fn parse_expr(src: &str) -> Result<SuperNumber, ParseError> {
    let mut p = Parser::new(src)?;
    let v = p.expr()?;
    p.end()?;
    Ok(v)
}

/// Prints `x` in the syntax accepted by [`parse_expr`].
pub fn print_expr(x: &SuperNumber) -> String {
    x.to_string()
}

/// Parses a 3×3 literal without slot names or parity checks.
pub fn parse_matrix(src: &str) -> Result<[[SuperNumber; 3]; 3], ParseError> {
    let mut p = Parser::new(src)?;
    let m = p.matrix()?;
    p.end()?;
    Ok(m.map(|row| row.map(|(v, _)| v)))
}

const SLOT_NAMES: [[&str; 3]; 3] = [
    ["a", "alpha", "beta"],
    ["gamma", "b", "c"],
    ["delta", "d", "e"],
];

/// Parses a frame literal, rows `t, theta, thetabar` (flat) and columns
/// `t, theta, thetabar` (curved), checking the parity of every slot.
pub fn parse_vierbein(src: &str) -> Result<VierbeinParams, ParseError> {
    let mut p = Parser::new(src)?;
    let generic = VierbeinParams::generic();
    p.macros = generic
        .entries()
        .into_iter()
        .map(|(n, v)| (n, v.clone()))
        .collect();
    let m = p.matrix()?;
    p.end()?;
    for (r, row) in m.iter().enumerate() {
        for (c, (v, pos)) in row.iter().enumerate() {
            let (ri, ci) = (GradedIndex::ALL[r], GradedIndex::ALL[c]);
            let want = ri.parity().add(ci.parity());
            let ok = v.is_zero() || v.parity() == Some(want);
            if !ok {
                return Err(ParseError::ParityMismatch {
                    slot: format!("({},{})", ri.label(), ci.label()),
                    entry: SLOT_NAMES[r][c],
                    expected: match want {
                        Parity::Even => "even",
                        Parity::Odd => "odd",
                    },
                    line: pos.line,
                    column: pos.column,
                });
            }
        }
    }
    let e = m.map(|row| row.map(|(v, _)| v));
    let [[a, alpha, beta], [gamma, b, c], [delta, d, e]] = e;
    Ok(VierbeinParams {
        a,
        alpha,
        beta,
        gamma,
        b,
        c,
        delta,
        d,
        e,
    })
}

/// Parses `name = expr` pairs separated by commas or newlines. Names are
/// registered as even symbols; values must be scalars.
pub fn parse_bindings(src: &str) -> Result<BTreeMap<Symbol, RatFunc>, ParseError> {
    let mut p = Parser::new(src)?;
    p.newline_ends = true;
    let mut out = BTreeMap::new();
    loop {
        while matches!(p.peek().tok, Tok::Newline | Tok::Comma) {
            p.bump();
        }
        let t = p.bump();
        let name = match t.tok {
            Tok::Eof => return Ok(out),
            Tok::Ident(n) => n,
            other => {
                return Err(ParseError::Syntax {
                    line: t.pos.line,
                    column: t.pos.column,
                    message: format!("expected a symbol name, found {}", other.describe()),
                })
            }
        };
        if matches!(name.as_str(), "i" | "theta" | "thetabar") || Generator::lookup(&name).is_some() {
            return Err(ParseError::Syntax {
                line: t.pos.line,
                column: t.pos.column,
                message: format!("`{name}` cannot be bound"),
            });
        }
        p.expect(Tok::Eq, "`=`")?;
        let v = p.expr()?;
        let v = v.as_scalar().ok_or(ParseError::NotScalar { name: name.clone() })?;
        out.insert(Symbol::new(&name), v);
        if !matches!(p.peek().tok, Tok::Newline | Tok::Comma | Tok::Eof) {
            return Err(p.error_here("`,` or end of line"));
        }
    }
}

#[cfg(test)]
mod tests;
