//! Recursive-descent parser for weight expressions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := ('-'|'+') unary | power
//! power  := base ('^' ['-'|'+'] integer)?
//! base   := number | 'm' | 'n' | 'exp(' expr ')' | 'abs(' expr ')'
//!         | 'max(' expr ',' expr ')' | 'min(' expr ',' expr ')'
//!         | 'if' cond 'then' expr 'else' expr | '(' expr ')'
//! cond   := var ('>='|'>'|'='|'=='|'<'|'<=') ['-'] integer
//! ```

use crate::num::parse_decimal;
use crate::weight::expr::{CmpOp, Cond, Expr, Var, MAX_EXPONENT};

use super::Diagnostic;

const MAX_DEPTH: usize = 64;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(&'static str),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    /// Zero-based character offset.
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, (usize, String)> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            out.push(Token { tok: Tok::Num(chars[start..i].iter().collect()), pos: start });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), pos: start });
            continue;
        }
        let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        let sym = match two.as_str() {
            ">=" => Some(">="),
            "<=" => Some("<="),
            "==" => Some("=="),
            _ => None,
        };
        if let Some(s) = sym {
            out.push(Token { tok: Tok::Sym(s), pos: start });
            i += 2;
            continue;
        }
        let s = match c {
            '+' => "+",
            '-' => "-",
            '*' => "*",
            '/' => "/",
            '^' => "^",
            '(' => "(",
            ')' => ")",
            ',' => ",",
            '>' => ">",
            '<' => "<",
            '=' => "=",
            _ => return Err((start, format!("unexpected character '{c}'"))),
        };
        out.push(Token { tok: Tok::Sym(s), pos: start });
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
    end: usize,
    depth: usize,
}

type PResult<T> = Result<T, (usize, String)>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.pos)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(x)) if *x == s) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> PResult<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err((self.pos(), format!("expected '{s}'{}", self.found())))
        }
    }

    fn eat_ident(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(x)) if x == s) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn found(&self) -> String {
        match self.peek() {
            None => ", found end of input".into(),
            Some(Tok::Num(s)) | Some(Tok::Ident(s)) => format!(", found '{s}'"),
            Some(Tok::Sym(s)) => format!(", found '{s}'"),
        }
    }

    fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err((self.pos(), "expression nested too deeply".into()));
        }
        Ok(())
    }

    fn expr(&mut self) -> PResult<Expr> {
        self.enter()?;
        let mut acc = self.term()?;
        loop {
            if self.eat_sym("+") {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat_sym("-") {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_sym("*") {
                acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
            } else if self.eat_sym("/") {
                acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<Expr> {
        self.enter()?;
        let e = if self.eat_sym("-") {
            Expr::Neg(Box::new(self.unary()?))
        } else if self.eat_sym("+") {
            self.unary()?
        } else {
            self.power()?
        };
        self.depth -= 1;
        Ok(e)
    }

    fn integer(&mut self, allow_sign: bool) -> PResult<i64> {
        let pos = self.pos();
        let neg = allow_sign && self.eat_sym("-");
        if allow_sign && !neg {
            self.eat_sym("+");
        }
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.i += 1;
                let v: i64 = s.parse().map_err(|_| (pos, format!("'{s}' is not an integer")))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err((self.pos(), format!("expected an integer{}", self.found()))),
        }
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.base()?;
        if self.eat_sym("^") {
            let pos = self.pos();
            let k = self.integer(true)?;
            if k.abs() > MAX_EXPONENT as i64 {
                return Err((pos, format!("exponent {k} exceeds {MAX_EXPONENT} in absolute value")));
            }
            return Ok(Expr::Pow(Box::new(base), k as i32));
        }
        Ok(base)
    }

    fn call1(&mut self) -> PResult<Expr> {
        self.expect_sym("(")?;
        let a = self.expr()?;
        self.expect_sym(")")?;
        Ok(a)
    }

    fn call2(&mut self) -> PResult<(Expr, Expr)> {
        self.expect_sym("(")?;
        let a = self.expr()?;
        self.expect_sym(",")?;
        let c = self.expr()?;
        self.expect_sym(")")?;
        Ok((a, c))
    }

    fn var(&mut self) -> PResult<Var> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == "m" => {
                self.i += 1;
                Ok(Var::M)
            }
            Some(Tok::Ident(s)) if s == "n" => {
                self.i += 1;
                Ok(Var::N)
            }
            _ => Err((self.pos(), format!("expected variable 'm' or 'n'{}", self.found()))),
        }
    }

    fn cond(&mut self) -> PResult<Cond> {
        let var = self.var()?;
        let op = if self.eat_sym(">=") {
            CmpOp::Ge
        } else if self.eat_sym("<=") {
            CmpOp::Le
        } else if self.eat_sym(">") {
            CmpOp::Gt
        } else if self.eat_sym("<") {
            CmpOp::Lt
        } else if self.eat_sym("=") || self.eat_sym("==") {
            CmpOp::Eq
        } else {
            return Err((self.pos(), format!("expected a comparison{}", self.found())));
        };
        let value = self.integer(true)?;
        Ok(Cond { var, op, value })
    }

    fn base(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.i += 1;
                parse_decimal(&s).map(Expr::Num).ok_or((pos, format!("malformed number '{s}'")))
            }
            Some(Tok::Sym("(")) => {
                self.i += 1;
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(e)
            }
            Some(Tok::Ident(id)) => {
                self.i += 1;
                match id.as_str() {
                    "m" => Ok(Expr::Var(Var::M)),
                    "n" => Ok(Expr::Var(Var::N)),
                    "exp" => Ok(Expr::Exp(Box::new(self.call1()?))),
                    "abs" => Ok(Expr::Abs(Box::new(self.call1()?))),
                    "max" => {
                        let (a, c) = self.call2()?;
                        Ok(Expr::Max(Box::new(a), Box::new(c)))
                    }
                    "min" => {
                        let (a, c) = self.call2()?;
                        Ok(Expr::Min(Box::new(a), Box::new(c)))
                    }
                    "if" => {
                        let cond = self.cond()?;
                        if !self.eat_ident("then") {
                            return Err((self.pos(), format!("expected 'then'{}", self.found())));
                        }
                        let a = self.expr()?;
                        if !self.eat_ident("else") {
                            return Err((self.pos(), format!("expected 'else'{}", self.found())));
                        }
                        let c = self.expr()?;
                        Ok(Expr::If(cond, Box::new(a), Box::new(c)))
                    }
                    other => Err((pos, format!("unknown identifier '{other}'"))),
                }
            }
            _ => Err((pos, format!("expected a number, variable or '('{}", self.found()))),
        }
    }
}

/// Parses a weight expression. Diagnostics are positioned on line 1.
pub fn parse_expr(src: &str) -> Result<Expr, Diagnostic> {
    parse_expr_at(src, 1, 1)
}

/// Parses an expression that starts at `line:col` of a larger input.
pub fn parse_expr_at(src: &str, line: usize, col: usize) -> Result<Expr, Diagnostic> {
    let mk = |(p, msg): (usize, String)| Diagnostic::new(line, col + p, "syntax", msg);
    let toks = lex(src).map_err(mk)?;
    let end = src.chars().count();
    let mut p = Parser { toks, i: 0, end, depth: 0 };
    if p.toks.is_empty() {
        return Err(mk((0, "empty expression".into())));
    }
    let e = p.expr().map_err(mk)?;
    if p.i < p.toks.len() {
        return Err(mk((p.pos(), format!("unexpected trailing input{}", p.found()))));
    }
    Ok(e)
}
