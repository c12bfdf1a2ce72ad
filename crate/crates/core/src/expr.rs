//! Expression language for Weyl-algebra and tensor-square input.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := '-' term | product
//! product := power ('*' power)*
//! power   := atom ('^' UINT)?
//! atom    := UINT | 'sqrt(' UINT ')' | 'inv(' expr ')' | 'x' UINT | 'y' UINT | '(' expr ')'
//! ```
//!
//! `*` is noncommutative. `inv(...)` is evaluated as a scalar and rejected
//! when the scalar is not invertible; `sqrt(d)` is only meaningful in a
//! number-field context.

use std::fmt;

use crate::azalg::{AlgElem, FreeAlgebra};
use crate::error::{Error, Result};
use crate::ring::{Field, Fp, PolyRing, Quadratic, QuadraticField};
use crate::weyl::{WeylContext, WeylElement};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GenKind {
    /// Generators of the first tensor factor (or of A_n itself).
    X,
    /// Generators of the second tensor factor.
    Y,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Expr {
    Int(u64),
    Sqrt(u64),
    Inv(Box<Expr>),
    Gen(GenKind, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u64),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Neg(_) => 2,
            Expr::Mul(..) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write(&self, out: &mut String, min: u8) {
        if self.precedence() < min {
            out.push('(');
            self.write(out, 0);
            out.push(')');
            return;
        }
        match self {
            Expr::Int(v) => out.push_str(&v.to_string()),
            Expr::Sqrt(d) => out.push_str(&format!("sqrt({d})")),
            Expr::Inv(e) => {
                out.push_str("inv(");
                e.write(out, 0);
                out.push(')');
            }
            Expr::Gen(GenKind::X, i) => out.push_str(&format!("x{i}")),
            Expr::Gen(GenKind::Y, i) => out.push_str(&format!("y{i}")),
            Expr::Neg(e) => {
                out.push('-');
                e.write(out, 2);
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write(out, 1);
                out.push_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " });
                b.write(out, 2);
            }
            Expr::Mul(a, b) => {
                a.write(out, 3);
                out.push('*');
                b.write(out, 4);
            }
            Expr::Pow(b, e) => {
                b.write(out, 5);
                out.push_str(&format!("^{e}"));
            }
        }
    }

    /// Largest generator index of each kind used in the expression.
    pub fn max_generator(&self, kind: GenKind) -> usize {
        match self {
            Expr::Gen(k, i) if *k == kind => *i,
            Expr::Int(_) | Expr::Sqrt(_) | Expr::Gen(..) => 0,
            Expr::Inv(e) | Expr::Neg(e) | Expr::Pow(e, _) => e.max_generator(kind),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.max_generator(kind).max(b.max_generator(kind)),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s, 0);
        f.write_str(&s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Gen(GenKind, usize),
    Sqrt,
    Inv,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
    let digits = |start: usize| -> (usize, &str) {
        let mut j = start;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        (j, &text[start..j])
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'0'..=b'9' => {
                let (j, s) = digits(i);
                let v = s.parse::<u64>().map_err(|_| err(start, "integer literal too large"))?;
                out.push((start, Tok::Int(v)));
                i = j;
                continue;
            }
            b'x' | b'y' => {
                let (j, s) = digits(i + 1);
                if s.is_empty() {
                    return Err(err(start, "generator needs an index"));
                }
                let idx = s.parse::<usize>().map_err(|_| err(start, "generator index too large"))?;
                if idx == 0 {
                    return Err(err(start, "generator indices start at 1"));
                }
                let kind = if c == b'x' { GenKind::X } else { GenKind::Y };
                out.push((start, Tok::Gen(kind, idx)));
                i = j;
                continue;
            }
            b'a'..=b'z' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_lowercase() {
                    j += 1;
                }
                match &text[i..j] {
                    "sqrt" => out.push((start, Tok::Sqrt)),
                    "inv" => out.push((start, Tok::Inv)),
                    w => return Err(err(start, &format!("unknown word '{w}'"))),
                }
                i = j;
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(err(start, &format!("unexpected character '{ch}'")));
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Which generators are in scope while parsing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scope {
    /// Generators x1..x_g (and y1..y_g when `tensor`).
    pub generators: usize,
    pub tensor: bool,
}

impl Scope {
    pub fn weyl(ctx: WeylContext) -> Self {
        Scope {
            generators: ctx.num_generators(),
            tensor: false,
        }
    }

    pub fn tensor_square(ctx: WeylContext) -> Self {
        Scope {
            generators: ctx.num_generators(),
            tensor: true,
        }
    }

    pub fn scalars() -> Self {
        Scope {
            generators: 0,
            tensor: false,
        }
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    scope: Option<Scope>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        self.product()
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.power()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
        }
        Ok(lhs)
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek() {
                Some(Tok::Int(e)) => {
                    let e = *e;
                    self.pos += 1;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return self.err("expected a non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Expr::Int(v))
            }
            Some(Tok::Gen(kind, i)) => {
                if let Some(scope) = self.scope {
                    if kind == GenKind::Y && !scope.tensor {
                        return self.err(format!("y{i} is not in scope (no tensor square)"));
                    }
                    if i > scope.generators {
                        let name = if kind == GenKind::X { 'x' } else { 'y' };
                        return self.err(format!("generator {name}{i} out of range 1..={}", scope.generators));
                    }
                }
                self.pos += 1;
                Ok(Expr::Gen(kind, i))
            }
            Some(Tok::Sqrt) => {
                self.pos += 1;
                self.expect(Tok::LParen, "'(' after sqrt")?;
                let d = match self.peek() {
                    Some(Tok::Int(d)) => *d,
                    _ => return self.err("sqrt takes an integer literal"),
                };
                self.pos += 1;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Sqrt(d))
            }
            Some(Tok::Inv) => {
                self.pos += 1;
                self.expect(Tok::LParen, "'(' after inv")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Inv(Box::new(inner)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(_) => self.err("expected a number, generator or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_impl(text: &str, scope: Option<Scope>) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        scope,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Parses without restricting generator indices.
pub fn parse(text: &str) -> Result<Expr> {
    parse_impl(text, None)
}

/// Parses, rejecting generators outside `scope`.
pub fn parse_in(text: &str, scope: Scope) -> Result<Expr> {
    parse_impl(text, Some(scope))
}

/// Where expression values live.
pub trait Target {
    type Scalar: Field;
    type Value: Clone;

    fn scalar_desc(&self) -> <Self::Scalar as Field>::Desc;
    fn sqrt(&self, d: u64) -> Result<Self::Scalar> {
        Err(Error::Unsupported(format!("sqrt({d}) needs a number-field context")))
    }
    fn generator(&self, kind: GenKind, index: usize) -> Result<Self::Value>;
    fn lift(&self, s: &Self::Scalar) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn scale(&self, s: &Self::Scalar, a: &Self::Value) -> Self::Value {
        self.mul(&self.lift(s), a)
    }
    fn pow(&self, a: &Self::Value, mut e: u64) -> Self::Value {
        let mut base = a.clone();
        let mut acc = self.lift(&Self::Scalar::one(self.scalar_desc()));
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

enum Val<T: Target> {
    Scalar(T::Scalar),
    Elem(T::Value),
}

fn int_scalar<S: Field>(desc: S::Desc, v: u64) -> S {
    // Reduce in chunks so large literals stay exact in every field.
    let chunk = 1u64 << 31;
    let big = S::from_i64(desc, chunk as i64);
    let (hi, lo) = (v / chunk, v % chunk);
    let hi = if hi >= chunk { int_scalar::<S>(desc, hi) } else { S::from_i64(desc, hi as i64) };
    hi * big + S::from_i64(desc, lo as i64)
}

fn eval_val<T: Target>(e: &Expr, t: &T) -> Result<Val<T>> {
    let desc = t.scalar_desc();
    let elem = |v: Val<T>| match v {
        Val::Scalar(s) => t.lift(&s),
        Val::Elem(x) => x,
    };
    Ok(match e {
        Expr::Int(v) => Val::Scalar(int_scalar::<T::Scalar>(desc, *v)),
        Expr::Sqrt(d) => Val::Scalar(t.sqrt(*d)?),
        Expr::Inv(inner) => match eval_val(inner, t)? {
            Val::Scalar(s) => Val::Scalar(
                s.inv()
                    .ok_or_else(|| Error::NotInvertible(format!("inv({inner}) is zero")))?,
            ),
            Val::Elem(_) => return Err(Error::Unsupported(format!("inv({inner}): only scalars can be inverted"))),
        },
        Expr::Gen(kind, i) => Val::Elem(t.generator(*kind, *i)?),
        Expr::Neg(a) => match eval_val(a, t)? {
            Val::Scalar(s) => Val::Scalar(-s),
            Val::Elem(x) => Val::Elem(t.neg(&x)),
        },
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (va, vb) = (eval_val(a, t)?, eval_val(b, t)?);
            let sub = matches!(e, Expr::Sub(..));
            match (va, vb) {
                (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(if sub { x - y } else { x + y }),
                (va, vb) => {
                    let (x, y) = (elem(va), elem(vb));
                    Val::Elem(if sub { t.sub(&x, &y) } else { t.add(&x, &y) })
                }
            }
        }
        Expr::Mul(a, b) => match (eval_val(a, t)?, eval_val(b, t)?) {
            (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(x * y),
            (Val::Scalar(x), Val::Elem(y)) | (Val::Elem(y), Val::Scalar(x)) => Val::Elem(t.scale(&x, &y)),
            (Val::Elem(x), Val::Elem(y)) => Val::Elem(t.mul(&x, &y)),
        },
        Expr::Pow(a, k) => match eval_val(a, t)? {
            Val::Scalar(s) => Val::Scalar(s.pow(*k)),
            Val::Elem(x) => Val::Elem(t.pow(&x, *k)),
        },
    })
}

/// Lowers an expression into the target.
pub fn evaluate<T: Target>(e: &Expr, t: &T) -> Result<T::Value> {
    Ok(match eval_val(e, t)? {
        Val::Scalar(s) => t.lift(&s),
        Val::Elem(x) => x,
    })
}

/// A_n(F_p) in PBW normal form; `y` generators are rejected.
pub struct WeylTarget(pub WeylContext);

impl Target for WeylTarget {
    type Scalar = Fp;
    type Value = WeylElement;

    fn scalar_desc(&self) -> crate::ring::PrimeField {
        self.0.field()
    }

    fn generator(&self, kind: GenKind, index: usize) -> Result<WeylElement> {
        if kind == GenKind::Y {
            return Err(Error::Precondition(format!("y{index} needs a tensor-square context")));
        }
        WeylElement::generator(self.0, index)
    }

    fn lift(&self, s: &Fp) -> WeylElement {
        WeylElement::scalar(self.0, *s)
    }

    fn add(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        a.add(b).expect("same context")
    }

    fn sub(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        a.sub(b).expect("same context")
    }

    fn mul(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        a.multiply(b).expect("same context")
    }

    fn neg(&self, a: &WeylElement) -> WeylElement {
        a.neg()
    }

    fn scale(&self, s: &Fp, a: &WeylElement) -> WeylElement {
        a.scale(*s)
    }

    fn pow(&self, a: &WeylElement, e: u64) -> WeylElement {
        a.power(e)
    }
}

/// A free algebra with named generator elements: `x_i` ↦ `xs[i-1]`,
/// `y_i` ↦ `ys[i-1]`.
pub struct AlgebraTarget<'a, F: Field> {
    pub algebra: &'a FreeAlgebra<F>,
    pub xs: Vec<AlgElem<F>>,
    pub ys: Vec<AlgElem<F>>,
}

impl<F: Field> AlgebraTarget<'_, F> {
    fn ring(&self) -> PolyRing<F> {
        self.algebra.ring()
    }
}

impl<F: Field> Target for AlgebraTarget<'_, F> {
    type Scalar = F;
    type Value = AlgElem<F>;

    fn scalar_desc(&self) -> F::Desc {
        self.ring().field
    }

    fn generator(&self, kind: GenKind, index: usize) -> Result<AlgElem<F>> {
        let (list, name) = match kind {
            GenKind::X => (&self.xs, 'x'),
            GenKind::Y => (&self.ys, 'y'),
        };
        list.get(index.wrapping_sub(1))
            .cloned()
            .ok_or_else(|| Error::Precondition(format!("generator {name}{index} is not defined here")))
    }

    fn lift(&self, s: &F) -> AlgElem<F> {
        self.algebra.scalar(&self.ring().constant(s.clone()))
    }

    fn add(&self, a: &AlgElem<F>, b: &AlgElem<F>) -> AlgElem<F> {
        a.add(b)
    }

    fn sub(&self, a: &AlgElem<F>, b: &AlgElem<F>) -> AlgElem<F> {
        a.sub(b)
    }

    fn mul(&self, a: &AlgElem<F>, b: &AlgElem<F>) -> AlgElem<F> {
        self.algebra.mul(a, b)
    }

    fn neg(&self, a: &AlgElem<F>) -> AlgElem<F> {
        a.neg()
    }

    fn scale(&self, s: &F, a: &AlgElem<F>) -> AlgElem<F> {
        a.scale(&self.ring().constant(s.clone()))
    }

    fn pow(&self, a: &AlgElem<F>, e: u64) -> AlgElem<F> {
        self.algebra.pow(a, e)
    }
}

/// Scalars of a field; generators are rejected.
pub struct ScalarTarget<F: Field>(pub F::Desc);

impl<F: Field> Target for ScalarTarget<F> {
    type Scalar = F;
    type Value = F;

    fn scalar_desc(&self) -> F::Desc {
        self.0
    }

    fn generator(&self, kind: GenKind, index: usize) -> Result<F> {
        let name = if kind == GenKind::X { 'x' } else { 'y' };
        Err(Error::Precondition(format!("{name}{index} is not a scalar")))
    }

    fn lift(&self, s: &F) -> F {
        s.clone()
    }

    fn add(&self, a: &F, b: &F) -> F {
        a.clone() + b.clone()
    }

    fn sub(&self, a: &F, b: &F) -> F {
        a.clone() - b.clone()
    }

    fn mul(&self, a: &F, b: &F) -> F {
        a.clone() * b.clone()
    }

    fn neg(&self, a: &F) -> F {
        -a.clone()
    }
}

/// Elements of Q(√d); `sqrt(d)` is accepted for the field's own radicand
/// and for perfect-square multiples of it.
pub struct QuadraticTarget(pub QuadraticField);

impl Target for QuadraticTarget {
    type Scalar = Quadratic;
    type Value = Quadratic;

    fn scalar_desc(&self) -> QuadraticField {
        self.0
    }

    fn sqrt(&self, d: u64) -> Result<Quadratic> {
        let q = self.0.int(i64::try_from(d).map_err(|_| Error::Unsupported("radicand too large".into()))?, 0);
        q.sqrt()
            .ok_or_else(|| Error::Unsupported(format!("sqrt({d}) is not in Q(sqrt({}))", self.0.radicand())))
    }

    fn generator(&self, kind: GenKind, index: usize) -> Result<Quadratic> {
        ScalarTarget::<Quadratic>(self.0).generator(kind, index)
    }

    fn lift(&self, s: &Quadratic) -> Quadratic {
        s.clone()
    }

    fn add(&self, a: &Quadratic, b: &Quadratic) -> Quadratic {
        a.clone() + b.clone()
    }

    fn sub(&self, a: &Quadratic, b: &Quadratic) -> Quadratic {
        a.clone() - b.clone()
    }

    fn mul(&self, a: &Quadratic, b: &Quadratic) -> Quadratic {
        a.clone() * b.clone()
    }

    fn neg(&self, a: &Quadratic) -> Quadratic {
        -a.clone()
    }
}

/// Substitutes `{name}` placeholders in a template.
pub fn fill_template(template: &str, values: &[(&str, String)]) -> String {
    let mut out = template.to_string();
    for (k, v) in values {
        out = out.replace(&format!("{{{k}}}"), v);
    }
    out
}

/// Fifty expressions exercising every grammar rule; used for the
/// round-trip check.
pub const ROUND_TRIP_CORPUS: [&str; 50] = [
    "0",
    "1",
    "x1",
    "y2",
    "x1^0",
    "x1*x2",
    "x1*x2 - x2*x1 + 1",
    "x2*x1",
    "x1 + x2",
    "x1 - x2",
    "-x1",
    "--x1",
    "-x1*x2",
    "-(x1 + x2)",
    "(x1 + x2)^3",
    "(x1 - y1)^3",
    "x1^2*x2^2",
    "(x1*x2)^2",
    "x1*(x2*x1)",
    "(x1*x2)*x1",
    "x1 - (x2 - x1)",
    "(x1 - x2) - x1",
    "x1 + -x2",
    "2*x1 + 3*x2",
    "inv(2)*(x1 + y1)",
    "inv(2)^1*(x1 + y1)",
    "inv(1 + 1)*(1*x1 + 1*y1)",
    "inv(2 + 1)^0*(2*x2 - 1*y2)",
    "sqrt(2)",
    "-sqrt(2)",
    "1 + sqrt(2)",
    "(1 - sqrt(2))*(1 + sqrt(2))",
    "sqrt(8)",
    "inv(sqrt(2))",
    "x1^3",
    "x2^3 - x1^3",
    "((x1))",
    "x1*x1*x1",
    "x1*(x1*x1)",
    "(x1 + 1)^2 - x1^2 - 2*x1 - 1",
    "x3*x1 - x1*x3",
    "x4*x2 - x2*x4",
    "y1*x2 - x2*y1",
    "(x1 + y1)*(x1 - y1)",
    "x1*y1^2*x2",
    "-(-(x1))",
    "12345*x1",
    "inv(3)*x1",
    "1 - 1 + 1 - 1",
    "(x1 + x2 + y1 + y2)^2",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::azalg::{tensor_over_r, weyl_basis_index, weyl_structure_constants};

    fn weyl(text: &str, p: u64, n: usize) -> Result<WeylElement> {
        let ctx = WeylContext::new(p, n).unwrap();
        evaluate(&parse_in(text, Scope::weyl(ctx))?, &WeylTarget(ctx))
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("-x1*x2").unwrap().to_string(), "-x1*x2");
        assert!(matches!(parse("-x1*x2").unwrap(), Expr::Neg(_)));
        assert!(matches!(parse("x1 + x2*x1").unwrap(), Expr::Add(..)));
        assert!(matches!(parse("x1*x2^2").unwrap(), Expr::Mul(..)));
        assert_eq!(parse("a - (b - c)".replace(['a', 'b', 'c'], "x1").as_str()).unwrap().to_string(), "x1 - (x1 - x1)");
        assert_eq!(parse("(x1 - x2) - x1").unwrap().to_string(), "x1 - x2 - x1");
    }

    #[test]
    fn evaluation_examples() {
        assert!(weyl("x1*x2 - x2*x1 + 1", 3, 1).unwrap().is_zero());
        let ctx = WeylContext::new(3, 1).unwrap();
        assert_eq!(weyl("x1^0", 3, 1).unwrap(), WeylElement::one(ctx));
        assert_eq!(weyl("x2*x1", 3, 1).unwrap().to_string(), "1*x1^1*x2^1 + 1");
        assert_eq!(weyl("inv(2)*x1", 3, 1).unwrap().to_string(), "2*x1^1");
        assert!(weyl("x4*x2 - x2*x4 - 1", 3, 2).unwrap().is_zero());
    }

    #[test]
    fn tensor_square_relation_e() {
        let a = weyl_structure_constants(3, 1).unwrap();
        let ctx = WeylContext::new(3, 1).unwrap();
        let t = tensor_over_r(&a, &a).unwrap();
        let gen = |g: [u32; 2]| a.basis(weyl_basis_index(ctx, &g));
        let target = AlgebraTarget {
            algebra: &t,
            xs: vec![t.left(&gen([1, 0])).unwrap(), t.left(&gen([0, 1])).unwrap()],
            ys: vec![t.right(&gen([1, 0])).unwrap(), t.right(&gen([0, 1])).unwrap()],
        };
        let e = parse_in("(x1 - y1)^3", Scope::tensor_square(ctx)).unwrap();
        assert!(evaluate(&e, &target).unwrap().is_zero());
        let e = parse_in("(x1 + y1)^3 - x1^3 - y1^3", Scope::tensor_square(ctx)).unwrap();
        assert!(evaluate(&e, &target).unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("x1 + ").unwrap_err(), Error::Parse { pos: 5, msg: "unexpected end of input".into() });
        assert!(matches!(parse("x1 $ x2"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse("x0"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse("(x1"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse("x1 x2"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse("x1^-1"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse("foo(1)"), Err(Error::Parse { pos: 0, .. })));
        let ctx = WeylContext::new(3, 1).unwrap();
        assert!(matches!(parse_in("x1 + x3", Scope::weyl(ctx)), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_in("y1", Scope::weyl(ctx)), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn scalar_rules() {
        assert!(matches!(weyl("inv(3)*x1", 3, 1), Err(Error::NotInvertible(_))));
        assert!(matches!(weyl("inv(x1)", 3, 1), Err(Error::Unsupported(_))));
        assert!(matches!(weyl("sqrt(2)", 3, 1), Err(Error::Unsupported(_))));
        let k = QuadraticField::new(2).unwrap();
        let v = evaluate(&parse("(1 - sqrt(2))*(1 + sqrt(2))").unwrap(), &QuadraticTarget(k)).unwrap();
        assert_eq!(v, k.int(-1, 0));
        let v = evaluate(&parse("sqrt(8)").unwrap(), &QuadraticTarget(k)).unwrap();
        assert_eq!(v, k.int(0, 2));
        assert!(evaluate(&parse("sqrt(3)").unwrap(), &QuadraticTarget(k)).is_err());
        let big = evaluate(&parse("18446744073709551615").unwrap(), &ScalarTarget::<Fp>(crate::ring::PrimeField::new(7).unwrap())).unwrap();
        assert_eq!(big.value(), 18446744073709551615u64 % 7);
    }

    #[test]
    fn round_trip_corpus() {
        for text in ROUND_TRIP_CORPUS {
            let once = parse(text).unwrap();
            let printed = once.to_string();
            let twice = parse(&printed).unwrap();
            assert_eq!(once, twice, "{text}");
            assert_eq!(printed, twice.to_string(), "{text}");
        }
    }

    #[test]
    fn templates() {
        let t = fill_template("inv({c} + {cp})^{eps}*x{i}", &[("c", "1".into()), ("cp", "2".into()), ("eps", "1".into()), ("i", "2".into())]);
        assert_eq!(t, "inv(1 + 2)^1*x2");
    }
}
