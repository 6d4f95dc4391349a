//! Text front end for functions, polynomials, points and arcs.
//!
//! One expression grammar serves every context: `+ - * / ^` with the usual
//! precedence, explicit `*`, parenthesized subexpressions, integer literals
//! and quotients of them.  `^` is right-associative and takes integer
//! exponents; fractional exponents are reserved for the arc parameter `t`.
//! Variables are either `x, y, z` or `x1..xn`, never mixed.  Points and arc
//! coefficients admit exact algebraic scalars written `root(p, lo, hi)`,
//! the single real root of `p` strictly between `lo` and `hi`.  Error
//! offsets are one-based character positions.

use crate::alg::{Coef, RealRoot, TowerRef};
use crate::arcs::{Arc, PuiseuxPoly};
use crate::mpoly::MPoly;
use crate::rat::BigRat;
use crate::ratfunc::RationalFunction;
use crate::realzeros::root_to_coef;
use crate::unipoly::{SturmChain, UniPoly};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn syntax(pos: usize, message: impl Into<String>) -> Error {
    Error::Syntax { offset: pos + 1, message: message.into() }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
    Comma,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let simple = match b {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::Open),
            b')' => Some(Tok::Close),
            b',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = simple {
            toks.push((t, i));
            i += 1;
            continue;
        }
        if b.is_ascii_whitespace() {
            i += 1;
        } else if b.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = BigInt::parse_bytes(&bytes[start..i], 10).expect("digit run parses");
            toks.push((Tok::Int(n), start));
        } else if b.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            toks.push((Tok::Name(text[start..i].to_string()), start));
        } else {
            let c = text[i..].chars().next().expect("inside the string");
            return Err(syntax(i, format!("unexpected character '{c}'")));
        }
    }
    toks.push((Tok::End, text.len()));
    Ok(toks)
}

#[derive(Debug, Clone)]
enum Ast {
    Num(BigInt),
    Var(String, usize),
    Scalar(Coef),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>, usize),
    Pow(Box<Ast>, BigRat, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VarKind {
    Named(usize),
    Indexed(usize),
    Param,
}

fn classify(name: &str, pos: usize) -> Result<VarKind> {
    match name {
        "x" => return Ok(VarKind::Named(0)),
        "y" => return Ok(VarKind::Named(1)),
        "z" => return Ok(VarKind::Named(2)),
        "t" => return Ok(VarKind::Param),
        _ => {}
    }
    let (head, digits) = name.split_at(1);
    if head == "x" && !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
        if digits.starts_with('0') {
            return Err(syntax(pos, "variable indices have no leading zeros"));
        }
        let k: usize = digits
            .parse()
            .ok()
            .filter(|k| *k <= 256)
            .ok_or_else(|| syntax(pos, "variable index too large"))?;
        return Ok(VarKind::Indexed(k - 1));
    }
    Err(syntax(pos, format!("unknown name '{name}'")))
}

/// Root-expression cache: identical `root(...)` texts share one tower
/// level, and distinct ones extend a single chain so that mixed algebraic
/// scalars from one request stay arithmetically compatible.
pub struct Session {
    cache: Vec<((Vec<BigRat>, BigRat, BigRat), Coef)>,
    last: Option<TowerRef>,
}

impl Default for Session {
    fn default() -> Session {
        Session::new()
    }
}

impl Session {
    pub fn new() -> Session {
        Session { cache: Vec::new(), last: None }
    }

    pub fn function(&mut self, text: &str, arity: Option<usize>) -> Result<RationalFunction> {
        let ast = self.expression(text)?;
        let vars = collect_vars(&ast)?;
        let n = resolve_arity(&vars, arity)?;
        eval_fn(&ast, n)
    }

    pub fn polynomial(&mut self, text: &str, arity: Option<usize>) -> Result<MPoly> {
        let f = self.function(text, arity)?;
        match f.den().as_constant() {
            Some(c) => Ok(f
                .num()
                .mul_coef(&c.invert().expect("canonical denominators are nonzero"))),
            None => Err(syntax(0, "expected a polynomial")),
        }
    }

    pub fn point(&mut self, text: &str, arity: Option<usize>) -> Result<Vec<Coef>> {
        let toks = lex(text)?;
        let mut p = P { toks, i: 0, sess: self, in_root: false };
        p.eat(&Tok::Open, "'('")?;
        let mut coords = Vec::new();
        loop {
            let ast = p.expr()?;
            coords.push(eval_coef(&ast)?);
            match p.peek() {
                Tok::Comma => {
                    p.bump();
                }
                Tok::Close => {
                    p.bump();
                    break;
                }
                _ => return Err(syntax(p.pos(), "expected ',' or ')'")),
            }
        }
        p.eat(&Tok::End, "end of input")?;
        if let Some(n) = arity {
            if coords.len() != n {
                return Err(Error::ArityMismatch { expected: n, found: coords.len() });
            }
        }
        Ok(coords)
    }

    pub fn arc(&mut self, text: &str) -> Result<Arc> {
        let toks = lex(text)?;
        let mut p = P { toks, i: 0, sess: self, in_root: false };
        p.eat(&Tok::Open, "'('")?;
        let mut entries = Vec::new();
        loop {
            let ast = p.expr()?;
            entries.push(eval_arc_entry(&ast)?);
            match p.peek() {
                Tok::Comma => {
                    p.bump();
                }
                Tok::Close => {
                    p.bump();
                    break;
                }
                _ => return Err(syntax(p.pos(), "expected ',' or ')'")),
            }
        }
        p.eat(&Tok::End, "end of input")?;
        Arc::new(entries)
    }

    fn expression(&mut self, text: &str) -> Result<Ast> {
        let toks = lex(text)?;
        let mut p = P { toks, i: 0, sess: self, in_root: false };
        let ast = p.expr()?;
        p.eat(&Tok::End, "end of input")?;
        Ok(ast)
    }

    fn root_scalar(&mut self, poly: UniPoly, lo: BigRat, hi: BigRat, pos: usize) -> Result<Coef> {
        let p = poly.value_trimmed();
        if p.deg().map_or(true, |d| d == 0) {
            return Err(syntax(pos, "root polynomial is constant"));
        }
        if lo > hi {
            return Err(syntax(pos, "empty root interval"));
        }
        if lo == hi {
            return if p.eval_rat(&lo).is_zero() {
                Ok(Coef::from_rat(lo))
            } else {
                Err(syntax(pos, "the pinned value is not a root"))
            };
        }
        let sf = p.squarefree_part().monic();
        if sf.eval_rat(&lo).is_zero() || sf.eval_rat(&hi).is_zero() {
            return Err(syntax(pos, "root interval endpoints must not be roots"));
        }
        let n = SturmChain::new(&sf).count_in(&lo, &hi);
        if n != 1 {
            return Err(syntax(
                pos,
                format!("root interval isolates {n} real roots, need exactly one"),
            ));
        }
        let coefs = sf.all_rational().expect("root polynomials are rational");
        let key = (coefs, lo.clone(), hi.clone());
        if let Some((_, c)) = self.cache.iter().find(|(k, _)| *k == key) {
            return Ok(c.clone());
        }
        let c = root_to_coef(&RealRoot { poly: sf, lo, hi }, self.last.as_ref());
        if let Some(t) = c.tower() {
            self.last = Some(t.clone());
        }
        self.cache.push((key, c.clone()));
        Ok(c)
    }
}

struct P<'s> {
    toks: Vec<(Tok, usize)>,
    i: usize,
    sess: &'s mut Session,
    in_root: bool,
}

impl P<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Ast::Add(acc.into(), self.term()?.into());
                }
                Tok::Minus => {
                    self.bump();
                    acc = Ast::Sub(acc.into(), self.term()?.into());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = Ast::Mul(acc.into(), self.factor()?.into());
                }
                Tok::Slash => {
                    let off = self.pos();
                    self.bump();
                    acc = Ast::Div(acc.into(), self.factor()?.into(), off);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Ast> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(Ast::Neg(self.factor()?.into()))
            }
            Tok::Plus => {
                self.bump();
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if matches!(self.peek(), Tok::Caret) {
            self.bump();
            let off = self.pos();
            let e = self.exponent()?;
            return Ok(Ast::Pow(base.into(), e, off));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(Ast::Num(n)),
            Tok::Name(name) => {
                if name == "root" && !self.in_root {
                    self.root_call()
                } else {
                    Ok(Ast::Var(name, pos))
                }
            }
            Tok::Open => {
                let e = self.expr()?;
                self.eat(&Tok::Close, "')'")?;
                Ok(e)
            }
            _ => Err(syntax(pos, "expected a value")),
        }
    }

    fn root_call(&mut self) -> Result<Ast> {
        self.eat(&Tok::Open, "'(' after root")?;
        let poly_pos = self.pos();
        self.in_root = true;
        let ast = self.expr();
        self.in_root = false;
        let poly = eval_root_poly(&ast?)?;
        self.eat(&Tok::Comma, "','")?;
        let lo = self.rational_literal()?;
        self.eat(&Tok::Comma, "','")?;
        let hi = self.rational_literal()?;
        self.eat(&Tok::Close, "')'")?;
        self.sess.root_scalar(poly, lo, hi, poly_pos).map(Ast::Scalar)
    }

    fn rational_literal(&mut self) -> Result<BigRat> {
        let neg = if matches!(self.peek(), Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let pos = self.pos();
        let n = match self.bump() {
            Tok::Int(n) => n,
            _ => return Err(syntax(pos, "expected a rational literal")),
        };
        let mut r = BigRat::from_integer(n);
        if matches!(self.peek(), Tok::Slash) {
            self.bump();
            let dpos = self.pos();
            let d = match self.bump() {
                Tok::Int(d) => d,
                _ => return Err(syntax(dpos, "expected a denominator")),
            };
            if d.is_zero() {
                return Err(syntax(dpos, "zero denominator"));
            }
            r = BigRat::new(r.to_integer(), d);
        }
        Ok(if neg { -r } else { r })
    }

    fn exponent(&mut self) -> Result<BigRat> {
        match self.peek().clone() {
            Tok::Minus => {
                self.bump();
                let n = self.small_int()?;
                Ok(BigRat::from_integer(BigInt::from(-n)))
            }
            Tok::Int(_) => {
                let n = self.small_int()?;
                if matches!(self.peek(), Tok::Caret) {
                    self.bump();
                    let off = self.pos();
                    let e = self.exponent()?;
                    if !e.is_integer() || e.is_negative() {
                        return Err(syntax(off, "stacked exponents are nonnegative integers"));
                    }
                    let k = e
                        .to_integer()
                        .to_u32()
                        .ok_or_else(|| syntax(off, "exponent too large"))?;
                    let v = n
                        .checked_pow(k)
                        .filter(|v| v.abs() <= 1_000_000)
                        .ok_or_else(|| syntax(off, "exponent too large"))?;
                    return Ok(BigRat::from_integer(BigInt::from(v)));
                }
                Ok(BigRat::from_integer(BigInt::from(n)))
            }
            Tok::Open => {
                self.bump();
                let r = self.rational_literal()?;
                self.eat(&Tok::Close, "')'")?;
                Ok(r)
            }
            _ => Err(syntax(self.pos(), "expected an exponent")),
        }
    }

    fn small_int(&mut self) -> Result<i64> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => n
                .to_i64()
                .filter(|v| *v <= 1_000_000)
                .ok_or_else(|| syntax(pos, "exponent too large")),
            _ => Err(syntax(pos, "expected an integer exponent")),
        }
    }
}

/// Minimal polynomial inside `root(...)`: a single free variable of any
/// name, rational coefficients, no nesting.
fn eval_root_poly(ast: &Ast) -> Result<UniPoly> {
    fn go(ast: &Ast, var: &mut Option<String>) -> Result<UniPoly> {
        match ast {
            Ast::Num(n) => Ok(UniPoly::constant(Coef::from_rat(BigRat::from_integer(
                n.clone(),
            )))),
            Ast::Var(name, pos) => {
                if name == "root" {
                    return Err(syntax(*pos, "nested root(...) is not supported"));
                }
                match var {
                    Some(v) if v != name => {
                        Err(syntax(*pos, "root polynomial uses a single variable"))
                    }
                    _ => {
                        *var = Some(name.clone());
                        Ok(UniPoly::var())
                    }
                }
            }
            Ast::Scalar(_) => unreachable!("root calls are flat"),
            Ast::Neg(a) => Ok(go(a, var)?.neg()),
            Ast::Add(a, b) => Ok(go(a, var)?.add(&go(b, var)?)),
            Ast::Sub(a, b) => Ok(go(a, var)?.sub(&go(b, var)?)),
            Ast::Mul(a, b) => Ok(go(a, var)?.mul(&go(b, var)?)),
            Ast::Div(a, b, off) => {
                let d = go(b, var)?.value_trimmed();
                if d.deg() != Some(0) {
                    return Err(syntax(*off, "root polynomial divides only by constants"));
                }
                let c = d.coef(0).invert().expect("trimmed constant is nonzero");
                Ok(go(a, var)?.mul_coef(&c))
            }
            Ast::Pow(a, e, off) => {
                if !e.is_integer() || e.is_negative() {
                    return Err(syntax(*off, "polynomial exponents are nonnegative integers"));
                }
                let k = int_exponent(e, *off)?;
                let b = go(a, var)?;
                let mut acc = UniPoly::constant(Coef::one());
                for _ in 0..k {
                    acc = acc.mul(&b);
                }
                Ok(acc)
            }
        }
    }
    go(ast, &mut None)
}

fn collect_vars(ast: &Ast) -> Result<Vec<(VarKind, usize)>> {
    fn go(ast: &Ast, out: &mut Vec<(VarKind, usize)>) -> Result<()> {
        match ast {
            Ast::Num(_) | Ast::Scalar(_) => Ok(()),
            Ast::Var(name, pos) => {
                out.push((classify(name, *pos)?, *pos));
                Ok(())
            }
            Ast::Neg(a) | Ast::Pow(a, _, _) => go(a, out),
            Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b, _) => {
                go(a, out)?;
                go(b, out)
            }
        }
    }
    let mut out = Vec::new();
    go(ast, &mut out)?;
    Ok(out)
}

fn resolve_arity(vars: &[(VarKind, usize)], requested: Option<usize>) -> Result<usize> {
    let mut named = false;
    let mut indexed = false;
    let mut needed = 0usize;
    for (v, pos) in vars {
        match v {
            VarKind::Param => {
                return Err(syntax(*pos, "the parameter t only appears in arcs"));
            }
            VarKind::Named(i) => {
                if indexed {
                    return Err(syntax(*pos, "cannot mix x, y, z with indexed variables"));
                }
                named = true;
                needed = needed.max(i + 1);
            }
            VarKind::Indexed(i) => {
                if named {
                    return Err(syntax(*pos, "cannot mix x, y, z with indexed variables"));
                }
                indexed = true;
                needed = needed.max(i + 1);
            }
        }
    }
    match requested {
        Some(n) => {
            if needed > n {
                return Err(Error::ArityMismatch { expected: n, found: needed });
            }
            Ok(n)
        }
        None => Ok(needed.max(1)),
    }
}

fn int_exponent(e: &BigRat, off: usize) -> Result<i64> {
    if !e.is_integer() {
        return Err(syntax(off, "fractional exponents only apply to the arc parameter t"));
    }
    e.to_integer()
        .to_i64()
        .filter(|k| k.abs() <= 4096)
        .ok_or_else(|| syntax(off, "exponent too large"))
}

fn eval_fn(ast: &Ast, arity: usize) -> Result<RationalFunction> {
    match ast {
        Ast::Num(n) => Ok(RationalFunction::constant(
            arity,
            Coef::from_rat(BigRat::from_integer(n.clone())),
        )),
        Ast::Var(name, pos) => {
            let k = match classify(name, *pos)? {
                VarKind::Named(i) | VarKind::Indexed(i) => i,
                VarKind::Param => unreachable!("rejected while resolving the arity"),
            };
            Ok(RationalFunction::from_poly(MPoly::var(arity, k)))
        }
        Ast::Scalar(c) => Ok(RationalFunction::constant(arity, c.clone())),
        Ast::Neg(a) => Ok(eval_fn(a, arity)?.neg()),
        Ast::Add(a, b) => Ok(eval_fn(a, arity)?.add(&eval_fn(b, arity)?)),
        Ast::Sub(a, b) => Ok(eval_fn(a, arity)?.sub(&eval_fn(b, arity)?)),
        Ast::Mul(a, b) => Ok(eval_fn(a, arity)?.mul(&eval_fn(b, arity)?)),
        Ast::Div(a, b, _) => eval_fn(a, arity)?.div(&eval_fn(b, arity)?),
        Ast::Pow(a, e, off) => {
            let k = int_exponent(e, *off)?;
            eval_fn(a, arity)?.pow(k)
        }
    }
}

fn eval_coef(ast: &Ast) -> Result<Coef> {
    match ast {
        Ast::Num(n) => Ok(Coef::from_rat(BigRat::from_integer(n.clone()))),
        Ast::Var(_, pos) => Err(syntax(*pos, "expected a constant")),
        Ast::Scalar(c) => Ok(c.clone()),
        Ast::Neg(a) => Ok(eval_coef(a)?.neg()),
        Ast::Add(a, b) => Ok(eval_coef(a)?.add(&eval_coef(b)?)),
        Ast::Sub(a, b) => Ok(eval_coef(a)?.sub(&eval_coef(b)?)),
        Ast::Mul(a, b) => Ok(eval_coef(a)?.mul(&eval_coef(b)?)),
        Ast::Div(a, b, _) => eval_coef(a)?.div(&eval_coef(b)?),
        Ast::Pow(a, e, off) => {
            let k = int_exponent(e, *off)?;
            let b = eval_coef(a)?;
            if k < 0 {
                b.pow_u((-k) as u32).invert()
            } else {
                Ok(b.pow_u(k as u32))
            }
        }
    }
}

fn eval_arc_entry(ast: &Ast) -> Result<PuiseuxPoly> {
    let minus_one = || PuiseuxPoly::constant(Coef::from_int(-1));
    match ast {
        Ast::Num(n) => Ok(PuiseuxPoly::constant(Coef::from_rat(BigRat::from_integer(
            n.clone(),
        )))),
        Ast::Var(name, pos) => match classify(name, *pos)? {
            VarKind::Param => Ok(PuiseuxPoly::monomial(BigRat::one(), Coef::one())),
            _ => Err(syntax(*pos, "arc entries are written in the parameter t")),
        },
        Ast::Scalar(c) => Ok(PuiseuxPoly::constant(c.clone())),
        Ast::Neg(a) => Ok(eval_arc_entry(a)?.mul(&minus_one())),
        Ast::Add(a, b) => Ok(eval_arc_entry(a)?.add(&eval_arc_entry(b)?)),
        Ast::Sub(a, b) => Ok(eval_arc_entry(a)?.add(&eval_arc_entry(b)?.mul(&minus_one()))),
        Ast::Mul(a, b) => Ok(eval_arc_entry(a)?.mul(&eval_arc_entry(b)?)),
        Ast::Div(a, b, off) => {
            let d = eval_arc_entry(b)?;
            if !d.is_constant() {
                return Err(syntax(*off, "arc entries divide only by constants"));
            }
            let c = d.constant_term().invert()?;
            Ok(eval_arc_entry(a)?.mul(&PuiseuxPoly::constant(c)))
        }
        Ast::Pow(a, e, off) => {
            if let Ast::Var(name, pos) = &**a {
                if classify(name, *pos)? == VarKind::Param {
                    return Ok(PuiseuxPoly::monomial(e.clone(), Coef::one()));
                }
            }
            let k = int_exponent(e, *off)?;
            let b = eval_arc_entry(a)?;
            if k < 0 {
                if !b.is_constant() {
                    return Err(syntax(*off, "arc entries divide only by constants"));
                }
                let c = b.constant_term().pow_u((-k) as u32).invert()?;
                return Ok(PuiseuxPoly::constant(c));
            }
            let mut acc = PuiseuxPoly::constant(Coef::one());
            for _ in 0..k {
                acc = acc.mul(&b);
            }
            Ok(acc)
        }
    }
}

pub fn function(text: &str, arity: Option<usize>) -> Result<RationalFunction> {
    Session::new().function(text, arity)
}

pub fn polynomial(text: &str, arity: Option<usize>) -> Result<MPoly> {
    Session::new().polynomial(text, arity)
}

pub fn point(text: &str, arity: Option<usize>) -> Result<Vec<Coef>> {
    Session::new().point(text, arity)
}

pub fn arc(text: &str) -> Result<Arc> {
    Session::new().arc(text)
}
