//! Expression grammar shared by `eval` and `act`: rational scalars, the
//! imaginary unit `i`, the deformation scale `a0`, indexed generator symbols,
//! integer powers, products, sums, parentheses and the bracket functions
//! `comm`, `acomm` and `gcomm`.
//!
//! Two symbol namespaces coexist. `xhat[mu]` and `xi[mu]` are *abstract*:
//! an expression built from them alone is normalized as a noncommutative
//! polynomial in the deformed generators. Every other symbol — the ambient
//! Weyl generators `x`, `del`, `dx`, `q`, the realized operators `thetap`,
//! `p`, `M`, `Mt`, `M1`, `phi`, the shifts `Z`, `Zinv`, `Z^(p/q)` and the
//! exterior derivatives `dS`, `d1`, `d2` — is *concrete*. A single concrete
//! symbol switches the whole expression to operator evaluation, in which
//! abstract symbols are resolved through the realization table.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};

use kappa_core::{
    AlgebraError, Coefficient, Element, Family, GaussRat, NCAtom, NCExpression, PbwRules,
    Realization,
};

/// A lexing or parsing failure, with the character offset it occurred at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError { position, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at character {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Word(String),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut pos = 0usize;
    while pos < chars.len() {
        let c = chars[pos];
        if c.is_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let tok = match c {
            '[' => {
                pos += 1;
                Tok::LBracket
            }
            ']' => {
                pos += 1;
                Tok::RBracket
            }
            '(' => {
                pos += 1;
                Tok::LParen
            }
            ')' => {
                pos += 1;
                Tok::RParen
            }
            ',' => {
                pos += 1;
                Tok::Comma
            }
            '+' => {
                pos += 1;
                Tok::Plus
            }
            '-' => {
                pos += 1;
                Tok::Minus
            }
            '*' => {
                pos += 1;
                Tok::Star
            }
            '^' => {
                pos += 1;
                Tok::Caret
            }
            d if d.is_ascii_digit() => {
                let mut num = String::new();
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    num.push(chars[pos]);
                    pos += 1;
                }
                // a '/' directly followed by digits continues the rational
                if pos + 1 < chars.len() && chars[pos] == '/' && chars[pos + 1].is_ascii_digit() {
                    pos += 1;
                    let mut den = String::new();
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        den.push(chars[pos]);
                        pos += 1;
                    }
                    let p = BigInt::from_str(&num).expect("digits parse");
                    let q = BigInt::from_str(&den).expect("digits parse");
                    if q.is_zero() {
                        return Err(ParseError::new(start, "zero denominator"));
                    }
                    Tok::Num(BigRational::new(p, q))
                } else {
                    Tok::Num(BigRational::from_integer(
                        BigInt::from_str(&num).expect("digits parse"),
                    ))
                }
            }
            a if a.is_ascii_alphabetic() => {
                let mut word = String::new();
                while pos < chars.len() && chars[pos].is_ascii_alphanumeric() {
                    word.push(chars[pos]);
                    pos += 1;
                }
                Tok::Word(word)
            }
            other => {
                return Err(ParseError::new(start, format!("unexpected character `{other}`")));
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

/// A generator symbol with resolved indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sym {
    X(u32),
    Del(u32),
    Dx(u32),
    Q(u32),
    XHat(u32),
    Xi(u32),
    ThetaP,
    P(u32),
    M(u32, u32),
    Mt(u32, u32),
    M1(u32, u32),
    Phi(u32),
    Z,
    ZInv,
    DS,
    D1,
    D2,
}

impl Sym {
    /// Abstract symbols stay in the noncommutative-polynomial namespace.
    fn is_abstract(&self) -> bool {
        matches!(self, Sym::XHat(_) | Sym::Xi(_))
    }

    fn name(&self) -> String {
        match self {
            Sym::X(mu) => format!("x[{mu}]"),
            Sym::Del(mu) => format!("del[{mu}]"),
            Sym::Dx(mu) => format!("dx[{mu}]"),
            Sym::Q(mu) => format!("q[{mu}]"),
            Sym::XHat(mu) => format!("xhat[{mu}]"),
            Sym::Xi(mu) => format!("xi[{mu}]"),
            Sym::ThetaP => "thetap".to_string(),
            Sym::P(mu) => format!("p[{mu}]"),
            Sym::M(a, b) => format!("M[{a},{b}]"),
            Sym::Mt(a, b) => format!("Mt[{a},{b}]"),
            Sym::M1(a, b) => format!("M1[{a},{b}]"),
            Sym::Phi(mu) => format!("phi[{mu}]"),
            Sym::Z => "Z".to_string(),
            Sym::ZInv => "Zinv".to_string(),
            Sym::DS => "dS".to_string(),
            Sym::D1 => "d1".to_string(),
            Sym::D2 => "d2".to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketKind {
    Comm,
    Acomm,
    Gcomm,
}

#[derive(Clone, Debug)]
enum Ast {
    Scalar(GaussRat),
    A0,
    Sym(Sym),
    ZPow(BigRational),
    Pow(Box<Ast>, u32),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Bracket(BracketKind, Box<Ast>, Box<Ast>),
}

/// A parsed expression, with the namespace decision already made.
#[derive(Clone, Debug)]
pub struct ParsedExpr {
    ast: Ast,
    concrete: Option<String>,
}

impl ParsedExpr {
    /// The name of the first concrete symbol, if any.
    pub fn concrete_symbol(&self) -> Option<&str> {
        self.concrete.as_deref()
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    cursor: usize,
    n: u32,
    end: usize,
}

/// Parse an expression, validating generator indices against the dimension.
pub fn parse(src: &str, n: u32) -> Result<ParsedExpr, ParseError> {
    let toks = lex(src)?;
    let end = src.chars().count();
    let mut p = Parser { toks, cursor: 0, n, end };
    let ast = p.expr()?;
    if let Some((pos, tok)) = p.peek_raw() {
        return Err(ParseError::new(pos, format!("unexpected `{}`", describe(tok))));
    }
    let concrete = first_concrete(&ast);
    Ok(ParsedExpr { ast, concrete })
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Num(v) => v.to_string(),
        Tok::Word(w) => w.clone(),
        Tok::LBracket => "[".to_string(),
        Tok::RBracket => "]".to_string(),
        Tok::LParen => "(".to_string(),
        Tok::RParen => ")".to_string(),
        Tok::Comma => ",".to_string(),
        Tok::Plus => "+".to_string(),
        Tok::Minus => "-".to_string(),
        Tok::Star => "*".to_string(),
        Tok::Caret => "^".to_string(),
    }
}

fn first_concrete(ast: &Ast) -> Option<String> {
    match ast {
        Ast::Scalar(_) | Ast::A0 => None,
        Ast::Sym(s) => (!s.is_abstract()).then(|| s.name()),
        Ast::ZPow(r) => Some(format!("Z^({r})")),
        Ast::Pow(b, _) | Ast::Neg(b) => first_concrete(b),
        Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Bracket(_, a, b) => {
            first_concrete(a).or_else(|| first_concrete(b))
        }
    }
}

impl Parser {
    fn peek_raw(&self) -> Option<(usize, &Tok)> {
        self.toks.get(self.cursor).map(|(p, t)| (*p, t))
    }

    fn next_tok(&mut self) -> Option<(usize, Tok)> {
        let item = self.toks.get(self.cursor).cloned();
        if item.is_some() {
            self.cursor += 1;
        }
        item
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<usize, ParseError> {
        match self.next_tok() {
            Some((pos, tok)) if tok == want => Ok(pos),
            Some((pos, tok)) => Err(ParseError::new(
                pos,
                format!("expected {what}, found `{}`", describe(&tok)),
            )),
            None => Err(ParseError::new(self.end, format!("expected {what}, found end of input"))),
        }
    }

    fn eof_error(&self, what: &str) -> ParseError {
        ParseError::new(self.end, format!("expected {what}, found end of input"))
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek_raw() {
                Some((_, Tok::Plus)) => {
                    self.cursor += 1;
                    let rhs = self.term()?;
                    lhs = Ast::Add(Box::new(lhs), Box::new(rhs));
                }
                Some((_, Tok::Minus)) => {
                    self.cursor += 1;
                    let rhs = self.term()?;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.unary()?;
        while matches!(self.peek_raw(), Some((_, Tok::Star))) {
            self.cursor += 1;
            let rhs = self.unary()?;
            lhs = Ast::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ast, ParseError> {
        if matches!(self.peek_raw(), Some((_, Tok::Minus))) {
            self.cursor += 1;
            let inner = self.unary()?;
            return Ok(Ast::Neg(Box::new(inner)));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Ast, ParseError> {
        let base = self.primary()?;
        if !matches!(self.peek_raw(), Some((_, Tok::Caret))) {
            return Ok(base);
        }
        let (caret_pos, _) = self.next_tok().expect("peeked");
        match base {
            Ast::Sym(Sym::Z) => {
                let r = self.z_exponent()?;
                Ok(Ast::ZPow(r))
            }
            Ast::Sym(_) | Ast::A0 => {
                let (pos, exp) = self.integer_exponent()?;
                let exp = exp.to_u32().ok_or_else(|| {
                    ParseError::new(pos, "exponent out of range".to_string())
                })?;
                Ok(Ast::Pow(Box::new(base), exp))
            }
            _ => Err(ParseError::new(
                caret_pos,
                "`^` applies only to generator symbols, `a0` and `Z`".to_string(),
            )),
        }
    }

    /// A bare non-negative integer exponent.
    fn integer_exponent(&mut self) -> Result<(usize, BigInt), ParseError> {
        match self.next_tok() {
            Some((pos, Tok::Num(v))) => {
                if !v.is_integer() {
                    return Err(ParseError::new(pos, "exponent must be an integer"));
                }
                Ok((pos, v.to_integer()))
            }
            Some((pos, tok)) => Err(ParseError::new(
                pos,
                format!("expected an exponent, found `{}`", describe(&tok)),
            )),
            None => Err(self.eof_error("an exponent")),
        }
    }

    /// `Z` accepts a bare integer or a parenthesized signed rational.
    fn z_exponent(&mut self) -> Result<BigRational, ParseError> {
        match self.peek_raw() {
            Some((_, Tok::LParen)) => {
                self.cursor += 1;
                let negative = if matches!(self.peek_raw(), Some((_, Tok::Minus))) {
                    self.cursor += 1;
                    true
                } else {
                    false
                };
                let r = match self.next_tok() {
                    Some((_, Tok::Num(v))) => v,
                    Some((pos, tok)) => {
                        return Err(ParseError::new(
                            pos,
                            format!("expected a rational exponent, found `{}`", describe(&tok)),
                        ))
                    }
                    None => return Err(self.eof_error("a rational exponent")),
                };
                self.expect(Tok::RParen, "`)`")?;
                Ok(if negative { -r } else { r })
            }
            Some((_, Tok::Num(_))) => {
                let (_, exp) = self.integer_exponent()?;
                Ok(BigRational::from_integer(exp))
            }
            Some((pos, tok)) => Err(ParseError::new(
                pos,
                format!("expected an exponent, found `{}`", describe(tok)),
            )),
            None => Err(self.eof_error("an exponent")),
        }
    }

    fn primary(&mut self) -> Result<Ast, ParseError> {
        match self.next_tok() {
            Some((_, Tok::Num(v))) => Ok(Ast::Scalar(GaussRat::from_rational(v))),
            Some((_, Tok::LParen)) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some((pos, Tok::Word(w))) => self.word(pos, &w),
            Some((pos, tok)) => Err(ParseError::new(
                pos,
                format!("expected an expression, found `{}`", describe(&tok)),
            )),
            None => Err(self.eof_error("an expression")),
        }
    }

    fn word(&mut self, pos: usize, w: &str) -> Result<Ast, ParseError> {
        match w {
            "i" => Ok(Ast::Scalar(GaussRat::i())),
            "a0" => Ok(Ast::A0),
            "comm" | "acomm" | "gcomm" => {
                let kind = match w {
                    "comm" => BracketKind::Comm,
                    "acomm" => BracketKind::Acomm,
                    _ => BracketKind::Gcomm,
                };
                self.expect(Tok::LParen, "`(`")?;
                let a = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Ast::Bracket(kind, Box::new(a), Box::new(b)))
            }
            "thetap" => Ok(Ast::Sym(Sym::ThetaP)),
            "Z" => Ok(Ast::Sym(Sym::Z)),
            "Zinv" => Ok(Ast::Sym(Sym::ZInv)),
            "dS" => Ok(Ast::Sym(Sym::DS)),
            "d1" => Ok(Ast::Sym(Sym::D1)),
            "d2" => Ok(Ast::Sym(Sym::D2)),
            "x" | "del" | "dx" | "q" | "xhat" | "xi" | "p" | "phi" => {
                let mu = self.one_index()?;
                Ok(Ast::Sym(match w {
                    "x" => Sym::X(mu),
                    "del" => Sym::Del(mu),
                    "dx" => Sym::Dx(mu),
                    "q" => Sym::Q(mu),
                    "xhat" => Sym::XHat(mu),
                    "xi" => Sym::Xi(mu),
                    "p" => Sym::P(mu),
                    _ => Sym::Phi(mu),
                }))
            }
            "M" | "Mt" | "M1" => {
                let (a, b) = self.two_indices()?;
                Ok(Ast::Sym(match w {
                    "M" => Sym::M(a, b),
                    "Mt" => Sym::Mt(a, b),
                    _ => Sym::M1(a, b),
                }))
            }
            other => Err(ParseError::new(pos, format!("unknown symbol `{other}`"))),
        }
    }

    fn index(&mut self) -> Result<u32, ParseError> {
        match self.next_tok() {
            Some((pos, Tok::Num(v))) => {
                if !v.is_integer() || v.is_negative() {
                    return Err(ParseError::new(pos, "index must be a non-negative integer"));
                }
                let idx = v.to_integer().to_u32().ok_or_else(|| {
                    ParseError::new(pos, "index out of range".to_string())
                })?;
                if idx >= self.n {
                    return Err(ParseError::new(
                        pos,
                        format!("index {idx} out of range for n = {}", self.n),
                    ));
                }
                Ok(idx)
            }
            Some((pos, tok)) => Err(ParseError::new(
                pos,
                format!("expected an index, found `{}`", describe(&tok)),
            )),
            None => Err(self.eof_error("an index")),
        }
    }

    fn one_index(&mut self) -> Result<u32, ParseError> {
        self.expect(Tok::LBracket, "`[`")?;
        let mu = self.index()?;
        self.expect(Tok::RBracket, "`]`")?;
        Ok(mu)
    }

    fn two_indices(&mut self) -> Result<(u32, u32), ParseError> {
        self.expect(Tok::LBracket, "`[`")?;
        let a = self.index()?;
        self.expect(Tok::Comma, "`,`")?;
        let b = self.index()?;
        self.expect(Tok::RBracket, "`]`")?;
        Ok((a, b))
    }
}

/// The result of evaluating a parsed expression.
pub enum Evaluated {
    /// Operator evaluation (at least one concrete symbol, or forced).
    Concrete(Element),
    /// Noncommutative-polynomial evaluation (abstract symbols only).
    Abstract(NCExpression),
}

impl fmt::Display for Evaluated {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evaluated::Concrete(e) => write!(f, "{e}"),
            Evaluated::Abstract(e) => write!(f, "{e}"),
        }
    }
}

/// Evaluate against the ambient realization: operator mode when any concrete
/// symbol is present, abstract normalization otherwise.
pub fn eval(parsed: &ParsedExpr, rea: &Realization) -> Result<Evaluated, AlgebraError> {
    if parsed.concrete_symbol().is_some() {
        eval_element(&parsed.ast, rea).map(Evaluated::Concrete)
    } else {
        let rules = PbwRules::new(rea.ctx(), rea.family(), rea.c().clone());
        eval_nc(&parsed.ast, &rules).map(Evaluated::Abstract)
    }
}

/// Evaluate as an operator regardless of namespace (abstract symbols are
/// realized through the table).
pub fn eval_concrete(parsed: &ParsedExpr, rea: &Realization) -> Result<Element, AlgebraError> {
    eval_element(&parsed.ast, rea)
}

/// Evaluate as a noncommutative polynomial; concrete symbols are rejected.
pub fn eval_abstract(
    parsed: &ParsedExpr,
    rea: &Realization,
) -> Result<NCExpression, AlgebraError> {
    if let Some(name) = &parsed.concrete {
        return Err(AlgebraError::NamespaceMix(name.clone()));
    }
    let rules = PbwRules::new(rea.ctx(), rea.family(), rea.c().clone());
    eval_nc(&parsed.ast, &rules)
}

fn eval_element(ast: &Ast, rea: &Realization) -> Result<Element, AlgebraError> {
    let ctx = rea.ctx();
    match ast {
        Ast::Scalar(v) => Ok(Element::scalar(ctx, v.clone())),
        Ast::A0 => Ok(Element::from_coefficient(
            ctx,
            Coefficient::a0_power(GaussRat::one(), 1, ctx.order()),
        )),
        Ast::Sym(sym) => resolve_symbol(sym, rea),
        Ast::ZPow(r) => rea.z_power(r),
        Ast::Pow(base, exp) => {
            let b = eval_element(base, rea)?;
            let mut out = Element::one(ctx);
            for _ in 0..*exp {
                out = out.multiply(&b);
            }
            Ok(out)
        }
        Ast::Neg(inner) => Ok(eval_element(inner, rea)?.negated()),
        Ast::Add(a, b) => eval_element(a, rea)?.try_add(&eval_element(b, rea)?),
        Ast::Sub(a, b) => eval_element(a, rea)?.try_sub(&eval_element(b, rea)?),
        Ast::Mul(a, b) => Ok(eval_element(a, rea)?.multiply(&eval_element(b, rea)?)),
        Ast::Bracket(kind, a, b) => {
            let a = eval_element(a, rea)?;
            let b = eval_element(b, rea)?;
            Ok(match kind {
                BracketKind::Comm => a.commutator(&b),
                BracketKind::Acomm => a.anticommutator(&b),
                BracketKind::Gcomm => a.graded_commutator(&b),
            })
        }
    }
}

fn resolve_symbol(sym: &Sym, rea: &Realization) -> Result<Element, AlgebraError> {
    let ctx = rea.ctx();
    Ok(match sym {
        Sym::X(mu) => Element::coord(ctx, *mu),
        Sym::Del(mu) => Element::deriv(ctx, *mu),
        Sym::Dx(mu) => Element::form(ctx, *mu),
        Sym::Q(mu) => Element::form_deriv(ctx, *mu),
        Sym::XHat(mu) => rea.xhat(*mu).clone(),
        Sym::Xi(mu) => rea.xi(*mu).clone(),
        Sym::ThetaP => rea.theta_prime()?.clone(),
        Sym::P(mu) => rea.p(*mu).clone(),
        Sym::M(a, b) => rea.m(*a, *b)?,
        Sym::Mt(a, b) => rea.m_tilde(*a, *b)?,
        Sym::M1(a, b) => rea.m1(*a, *b)?,
        Sym::Phi(mu) => rea.phi(*mu)?.clone(),
        Sym::Z => rea.z().clone(),
        Sym::ZInv => rea.z_inv().clone(),
        Sym::DS => family_ext_deriv(rea, Family::Sitarz),
        Sym::D1 => family_ext_deriv(rea, Family::D1),
        Sym::D2 => family_ext_deriv(rea, Family::D2),
    })
}

/// The exterior derivative of the named family, reusing the ambient table
/// when the families coincide.
fn family_ext_deriv(rea: &Realization, family: Family) -> Element {
    if rea.family() == family {
        return rea.ext_deriv().clone();
    }
    Realization::build(rea.ctx(), family, rea.c().clone())
        .ext_deriv()
        .clone()
}

fn eval_nc(ast: &Ast, rules: &PbwRules) -> Result<NCExpression, AlgebraError> {
    let ctx = rules.ctx();
    match ast {
        Ast::Scalar(v) => Ok(NCExpression::scalar(
            ctx,
            Coefficient::scalar(v.clone(), ctx.order()),
        )),
        Ast::A0 => Ok(NCExpression::scalar(
            ctx,
            Coefficient::a0_power(GaussRat::one(), 1, ctx.order()),
        )),
        Ast::Sym(Sym::XHat(mu)) => Ok(NCExpression::atom(ctx, NCAtom::XHat(*mu))),
        Ast::Sym(Sym::Xi(mu)) => Ok(NCExpression::atom(ctx, NCAtom::Xi(*mu))),
        Ast::Sym(other) => Err(AlgebraError::NamespaceMix(other.name())),
        Ast::ZPow(r) => Err(AlgebraError::NamespaceMix(format!("Z^({r})"))),
        Ast::Pow(base, exp) => {
            let b = eval_nc(base, rules)?;
            let mut out = NCExpression::one(ctx);
            for _ in 0..*exp {
                out = out.multiply(&b, rules)?;
            }
            Ok(out)
        }
        Ast::Neg(inner) => Ok(eval_nc(inner, rules)?.negated()),
        Ast::Add(a, b) => eval_nc(a, rules)?.try_add(&eval_nc(b, rules)?),
        Ast::Sub(a, b) => eval_nc(a, rules)?.try_sub(&eval_nc(b, rules)?),
        Ast::Mul(a, b) => eval_nc(a, rules)?.multiply(&eval_nc(b, rules)?, rules),
        Ast::Bracket(kind, a, b) => {
            let a = eval_nc(a, rules)?;
            let b = eval_nc(b, rules)?;
            match kind {
                BracketKind::Comm => a.commutator(&b, rules),
                BracketKind::Acomm => a.anticommutator(&b, rules),
                BracketKind::Gcomm => a.graded_commutator(&b, rules),
            }
        }
    }
}

/// The highest basis-word degree appearing in an abstract expression.
pub fn expression_degree(e: &NCExpression) -> u32 {
    e.terms().map(|(w, _)| w.degree()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use kappa_core::Context;

    fn rea() -> Realization {
        Realization::build(
            Context::new(4, 6),
            Family::D1,
            BigRational::from_integer(BigInt::from(1)),
        )
    }

    #[test]
    fn abstract_expressions_normalize() {
        let r = rea();
        let parsed = parse("xhat[0]*xhat[1] - xhat[1]*xhat[0]", 4).unwrap();
        assert!(parsed.concrete_symbol().is_none());
        let out = eval(&parsed, &r).unwrap();
        assert_eq!(out.to_string(), "i*a0*xhat[1]");
        assert!(matches!(out, Evaluated::Abstract(_)));
    }

    #[test]
    fn a_single_concrete_symbol_switches_modes() {
        let r = rea();
        let parsed = parse("gcomm(d1, xhat[0])", 4).unwrap();
        assert_eq!(parsed.concrete_symbol(), Some("d1"));
        let out = eval(&parsed, &r).unwrap();
        assert!(matches!(out, Evaluated::Concrete(_)));
        // [[d1, xhat[0]]] is the realized xi[0] = dx[0] Z at c = 1
        let direct = eval(&parse("xi[0]*Z^0", 4).unwrap(), &r).unwrap();
        match (out, direct) {
            (Evaluated::Concrete(a), Evaluated::Concrete(b)) => assert_eq!(a, b),
            _ => panic!("both sides must be concrete"),
        }
    }

    #[test]
    fn printed_output_reparses_to_the_same_value() {
        let r = rea();
        for src in [
            "comm(p[1], xhat[0])",
            "Z^(1/2)*Z^(1/2)",
            "gcomm(dS, xhat[1])",
            "M[1,0]*x[2]^2 - (1/2 + 3/4*i)*del[0]",
            "phi[0] + q[1]*dx[1]",
        ] {
            let parsed = parse(src, 4).unwrap();
            let printed = eval(&parsed, &r).unwrap().to_string();
            let reparsed = parse(&printed, 4).unwrap();
            let reprinted = eval(&reparsed, &r).unwrap().to_string();
            assert_eq!(printed, reprinted, "round-trip failed for `{src}`");
        }
    }

    #[test]
    fn abstract_round_trip() {
        let r = rea();
        for src in ["xhat[1]*xhat[0]*xhat[0]", "xi[1]*xhat[0] + i*a0^2*xi[2]", "0"] {
            let parsed = parse(src, 4).unwrap();
            let printed = eval(&parsed, &r).unwrap().to_string();
            let reparsed = parse(&printed, 4).unwrap();
            let reprinted = eval(&reparsed, &r).unwrap().to_string();
            assert_eq!(printed, reprinted, "round-trip failed for `{src}`");
        }
    }

    #[test]
    fn act_targets_must_be_abstract() {
        let r = rea();
        let parsed = parse("xhat[0]*x[1]", 4).unwrap();
        let err = eval_abstract(&parsed, &r).unwrap_err();
        assert!(matches!(err, AlgebraError::NamespaceMix(_)));
        assert!(err.to_string().contains("x[1]"));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse("xhat[7]", 4).unwrap_err();
        assert_eq!(err.position, 5);
        assert!(err.message.contains("out of range"));

        let err = parse("xhat[0] $ 2", 4).unwrap_err();
        assert_eq!(err.position, 8);

        let err = parse("comm(xhat[0]", 4).unwrap_err();
        assert!(err.message.contains("end of input"));

        let err = parse("(xhat[0] + xhat[1])^2", 4).unwrap_err();
        assert!(err.message.contains("applies only to"));

        let err = parse("foo[1]", 4).unwrap_err();
        assert!(err.message.contains("unknown symbol"));
    }

    #[test]
    fn rational_and_power_literals() {
        let r = rea();
        let parsed = parse("3/4*a0^2*x[1]^2", 4).unwrap();
        let out = eval(&parsed, &r).unwrap();
        assert_eq!(out.to_string(), "3/4*a0^2*x[1]^2");
        // zero denominators are lexing errors
        assert!(parse("1/0", 4).is_err());
    }

    #[test]
    fn z_exponent_forms() {
        let r = rea();
        let half = eval(&parse("Z^(1/2)", 4).unwrap(), &r).unwrap().to_string();
        let square = eval(&parse("Z^(1/2)*Z^(1/2)", 4).unwrap(), &r).unwrap().to_string();
        let z = eval(&parse("Z", 4).unwrap(), &r).unwrap().to_string();
        assert_ne!(half, z);
        assert_eq!(square, z);
        let zinv = eval(&parse("Z^(-1)", 4).unwrap(), &r).unwrap().to_string();
        let direct = eval(&parse("Zinv", 4).unwrap(), &r).unwrap().to_string();
        assert_eq!(zinv, direct);
        let z2 = eval(&parse("Z^2", 4).unwrap(), &r).unwrap().to_string();
        let zz = eval(&parse("Z*Z", 4).unwrap(), &r).unwrap().to_string();
        assert_eq!(z2, zz);
    }
}
