//! Exact arithmetic in the cyclotomic field `Q(zeta_N)` and a small text
//! grammar for field elements.
//!
//! A [`CyclotomicContext`] fixes the order `N` once per computation session
//! and carries the `N`-th cyclotomic polynomial `Phi_N`. A [`Scalar`] is a
//! polynomial in `zeta_N` reduced modulo `Phi_N`, stored as a dense vector of
//! `phi(N)` exact rationals, so equality of coefficient vectors is equality
//! in the field. Orders 1 and 2 degenerate to plain rationals and are handled
//! uniformly (`phi(1) = phi(2) = 1`).
//!
//! The expression grammar accepted by [`parse_scalar`]:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' ('-')? INTEGER)?
//! atom   := INTEGER | 'E' '(' INTEGER ')' | '(' expr ')'
//! ```
//!
//! `E(n)` denotes a primitive n-th root of unity; every `n` that appears must
//! divide the context order `N`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

/// Little-endian rational polynomial helpers used for the modulus arithmetic.
type RatPoly = Vec<BigRational>;

fn poly_trim(p: &mut RatPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Long division `a / b`, returning `(quotient, remainder)`. `b` nonzero.
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (RatPoly, RatPoly) {
    let mut rem: RatPoly = a.to_vec();
    poly_trim(&mut rem);
    let mut bb: RatPoly = b.to_vec();
    poly_trim(&mut bb);
    assert!(!bb.is_empty(), "division by zero polynomial");
    let db = bb.len() - 1;
    let lead = bb[db].clone();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let c = &rem[dr] / &lead;
        let shift = dr - db;
        quot[shift] = c.clone();
        for (k, cb) in bb.iter().enumerate() {
            let sub = cb * &c;
            rem[shift + k] -= sub;
        }
        poly_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// The `n`-th cyclotomic polynomial via `Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d`.
fn cyclotomic_polynomial(n: u64) -> RatPoly {
    let mut table: Vec<Option<RatPoly>> = vec![None; (n + 1) as usize];
    for m in 1..=n {
        if n % m != 0 {
            continue;
        }
        // x^m - 1
        let mut num = vec![BigRational::zero(); (m + 1) as usize];
        num[0] = -BigRational::one();
        num[m as usize] = BigRational::one();
        let mut den = vec![BigRational::one()];
        for d in 1..m {
            if m % d == 0 {
                den = poly_mul(&den, table[d as usize].as_ref().unwrap());
            }
        }
        let (q, r) = poly_divmod(&num, &den);
        debug_assert!(r.is_empty(), "cyclotomic division must be exact");
        table[m as usize] = Some(q);
    }
    table[n as usize].take().unwrap()
}

/// Shared per-session field description: the order `N` and `Phi_N`.
///
/// Read-only after construction; hand it around behind an [`Arc`].
#[derive(Debug)]
pub struct CyclotomicContext {
    order: u64,
    /// Coefficients of the monic `Phi_N`, little-endian, length `phi(N) + 1`.
    minimal_polynomial: RatPoly,
    /// Reduced representations of `zeta^j` for `j in 0..N`.
    zeta_powers: Vec<Vec<BigRational>>,
}

impl CyclotomicContext {
    pub fn new(order: u64) -> Arc<Self> {
        assert!(order >= 1, "cyclotomic order must be positive");
        let min = cyclotomic_polynomial(order);
        let degree = min.len() - 1;
        let mut zeta_powers: Vec<Vec<BigRational>> = Vec::with_capacity(order as usize);
        let mut cur = vec![BigRational::zero(); degree];
        cur[0] = BigRational::one();
        for _ in 0..order {
            zeta_powers.push(cur.clone());
            // multiply by x, reduce mod Phi_N
            let mut next = vec![BigRational::zero(); degree + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] = c.clone();
            }
            let top = next.pop().unwrap();
            if !top.is_zero() {
                for (i, m) in min.iter().take(degree).enumerate() {
                    let adj = m * &top;
                    next[i] -= adj;
                }
            }
            cur = next;
        }
        Arc::new(CyclotomicContext {
            order,
            minimal_polynomial: min,
            zeta_powers,
        })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `phi(N)`, the degree of the field over the rationals.
    pub fn degree(&self) -> usize {
        self.minimal_polynomial.len() - 1
    }

    pub fn minimal_polynomial(&self) -> &[BigRational] {
        &self.minimal_polynomial
    }
}

/// An element of `Q(zeta_N)` in canonical reduced form.
#[derive(Clone)]
pub struct Scalar {
    ctx: Arc<CyclotomicContext>,
    /// Length `phi(N)`; coefficient of `zeta^i` at index `i`.
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        debug_assert_eq!(self.ctx.order, other.ctx.order, "mixed cyclotomic contexts");
        self.coeffs == other.coeffs
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl Scalar {
    pub fn zero(ctx: &Arc<CyclotomicContext>) -> Self {
        Scalar {
            ctx: ctx.clone(),
            coeffs: vec![BigRational::zero(); ctx.degree()],
        }
    }

    pub fn one(ctx: &Arc<CyclotomicContext>) -> Self {
        Scalar::from_rational(ctx, BigRational::one())
    }

    pub fn from_integer(ctx: &Arc<CyclotomicContext>, n: i64) -> Self {
        Scalar::from_rational(ctx, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(ctx: &Arc<CyclotomicContext>, num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::from_rational(ctx, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(ctx: &Arc<CyclotomicContext>, q: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); ctx.degree()];
        coeffs[0] = q;
        Scalar {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    /// `zeta_N^power`, reduced.
    pub fn zeta_power(ctx: &Arc<CyclotomicContext>, power: i64) -> Self {
        let n = ctx.order as i64;
        let p = power.rem_euclid(n) as usize;
        Scalar {
            ctx: ctx.clone(),
            coeffs: ctx.zeta_powers[p].clone(),
        }
    }

    /// A primitive `n`-th root of unity `E(n) = zeta_N^(N/n)`.
    ///
    /// Fails when `n` does not divide the context order.
    pub fn root_of_unity(ctx: &Arc<CyclotomicContext>, n: u64) -> Result<Self, ParseError> {
        if n == 0 || ctx.order % n != 0 {
            return Err(ParseError {
                pos: 0,
                kind: ParseErrorKind::RootOutsideField { n, order: ctx.order },
            });
        }
        Ok(Scalar::zeta_power(ctx, (ctx.order / n) as i64))
    }

    pub fn context(&self) -> &Arc<CyclotomicContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when this element lies in `Q`, else `None`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn reduce(ctx: &Arc<CyclotomicContext>, mut poly: RatPoly) -> Self {
        let degree = ctx.degree();
        if poly.len() > degree {
            let (_, rem) = poly_divmod(&poly, &ctx.minimal_polynomial);
            poly = rem;
        }
        poly.resize(degree, BigRational::zero());
        Scalar {
            ctx: ctx.clone(),
            coeffs: poly,
        }
    }

    pub fn neg(&self) -> Self {
        Scalar {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.ctx.order, other.ctx.order);
        Scalar {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.ctx.order, other.ctx.order);
        Scalar {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.ctx.order, other.ctx.order);
        let prod = poly_mul(&self.coeffs, &other.coeffs);
        Scalar::reduce(&self.ctx, prod)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`
    /// against `Phi_N`. `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // Invariants: r0 = s0*f (mod Phi), r1 = s1*f (mod Phi).
        let mut r0: RatPoly = self.ctx.minimal_polynomial.clone();
        let mut r1: RatPoly = self.coeffs.clone();
        poly_trim(&mut r1);
        let mut s0: RatPoly = Vec::new();
        let mut s1: RatPoly = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let qs1 = poly_mul(&q, &s1);
            let mut s_next = s0.clone();
            s_next.resize(s_next.len().max(qs1.len()), BigRational::zero());
            for (i, c) in qs1.iter().enumerate() {
                s_next[i] -= c;
            }
            poly_trim(&mut s_next);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s_next;
        }
        // r0 is now a nonzero constant gcd (Phi_N is irreducible).
        debug_assert_eq!(r0.len(), 1, "gcd with irreducible modulus must be constant");
        let scale = r0[0].recip();
        let inv: RatPoly = s0.iter().map(|c| c * &scale).collect();
        Some(Scalar::reduce(&self.ctx, inv))
    }

    pub fn pow(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Scalar::one(&self.ctx);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(acc)
    }

    /// Image under the automorphism `zeta_N -> zeta_N^(N-1)`, i.e. complex
    /// conjugation restricted to the field. Fixes the rationals.
    pub fn conjugate(&self) -> Self {
        let n = self.ctx.order;
        if n <= 2 {
            return self.clone();
        }
        let mut acc = vec![BigRational::zero(); self.ctx.degree()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let image = &self.ctx.zeta_powers[((n - 1) * i as u64 % n) as usize];
            for (k, z) in image.iter().enumerate() {
                if !z.is_zero() {
                    acc[k] += c * z;
                }
            }
        }
        Scalar {
            ctx: self.ctx.clone(),
            coeffs: acc,
        }
    }

    /// True when printing this scalar needs parentheses inside a product.
    pub fn is_compound(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() > 1
    }
}

fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    /// Canonical printing: terms by ascending power of `E(N)`, rational
    /// coefficients in lowest terms. [`parse_scalar`] inverts this exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.ctx.order;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{}", format_rational(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", format_rational(&mag))?;
                }
                if i == 1 {
                    write!(f, "E({n})")?;
                } else {
                    write!(f, "E({n})^{i}")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("division by zero")]
    DivisionByZero,
    #[error("E({n}): {n} does not divide the field order {order}")]
    RootOutsideField { n: u64, order: u64 },
    #[error("integer literal out of range")]
    IntOutOfRange,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
}

/// Position-reported scalar grammar error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at byte {pos}: {kind}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Token::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Token::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Token::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Token::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: BigInt = text[start..i].parse().map_err(|_| ParseError {
                    pos: start,
                    kind: ParseErrorKind::IntOutOfRange,
                })?;
                out.push((start, Token::Int(lit)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
            }
            other => {
                return Err(ParseError {
                    pos: i,
                    kind: ParseErrorKind::UnexpectedChar(other),
                })
            }
        }
    }
    Ok(out)
}

struct ScalarParser<'a> {
    toks: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    ctx: &'a Arc<CyclotomicContext>,
}

impl ScalarParser<'_> {
    fn peek(&self) -> Option<&(usize, Token)> {
        self.toks.get(self.pos)
    }

    fn err_here(&self, kind: ParseErrorKind) -> ParseError {
        let pos = self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end);
        ParseError { pos, kind }
    }

    fn expr(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = self.term()?;
        while let Some((_, tok)) = self.peek() {
            match tok {
                Token::Plus => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Token::Minus => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = self.unary()?;
        while let Some((p, tok)) = self.peek() {
            let p = *p;
            match tok {
                Token::Star => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Token::Slash => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    let inv = rhs.inverse().ok_or(ParseError {
                        pos: p,
                        kind: ParseErrorKind::DivisionByZero,
                    })?;
                    acc = acc.mul(&inv);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar, ParseError> {
        if let Some((_, Token::Minus)) = self.peek() {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, ParseError> {
        let base = self.atom()?;
        if let Some((p, Token::Caret)) = self.peek() {
            let p = *p;
            self.pos += 1;
            let mut sign = 1i64;
            if let Some((_, Token::Minus)) = self.peek() {
                self.pos += 1;
                sign = -1;
            }
            let exp = match self.peek() {
                Some((_, Token::Int(n))) => {
                    let e = i64::try_from(n.clone()).map_err(|_| ParseError {
                        pos: p,
                        kind: ParseErrorKind::IntOutOfRange,
                    })?;
                    self.pos += 1;
                    e
                }
                _ => return Err(self.err_here(ParseErrorKind::Expected("integer exponent"))),
            };
            return base.pow(sign * exp).ok_or(ParseError {
                pos: p,
                kind: ParseErrorKind::DivisionByZero,
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, ParseError> {
        match self.peek().cloned() {
            Some((_, Token::Int(n))) => {
                self.pos += 1;
                Ok(Scalar::from_rational(
                    self.ctx,
                    BigRational::from_integer(n),
                ))
            }
            Some((p, Token::Ident(name))) => {
                if name != "E" {
                    return Err(ParseError {
                        pos: p,
                        kind: ParseErrorKind::UnknownSymbol(name),
                    });
                }
                self.pos += 1;
                match self.peek() {
                    Some((_, Token::LParen)) => self.pos += 1,
                    _ => return Err(self.err_here(ParseErrorKind::Expected("`(` after E"))),
                }
                let n = match self.peek().cloned() {
                    Some((q, Token::Int(n))) => {
                        let v = u64::try_from(n).map_err(|_| ParseError {
                            pos: q,
                            kind: ParseErrorKind::IntOutOfRange,
                        })?;
                        self.pos += 1;
                        v
                    }
                    _ => return Err(self.err_here(ParseErrorKind::Expected("integer root order"))),
                };
                match self.peek() {
                    Some((_, Token::RParen)) => self.pos += 1,
                    _ => return Err(self.err_here(ParseErrorKind::Expected("`)`"))),
                }
                Scalar::root_of_unity(self.ctx, n).map_err(|e| ParseError { pos: p, ..e })
            }
            Some((_, Token::LParen)) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some((_, Token::RParen)) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.err_here(ParseErrorKind::Expected("`)`"))),
                }
            }
            Some((p, tok)) => Err(ParseError {
                pos: p,
                kind: ParseErrorKind::Expected(match tok {
                    Token::RParen => "expression before `)`",
                    _ => "integer, E(n) or `(`",
                }),
            }),
            None => Err(ParseError {
                pos: self.end,
                kind: ParseErrorKind::UnexpectedEnd,
            }),
        }
    }
}

/// Parse a scalar expression against the given context.
pub fn parse_scalar(text: &str, ctx: &Arc<CyclotomicContext>) -> Result<Scalar, ParseError> {
    let toks = tokenize(text)?;
    let mut p = ScalarParser {
        toks,
        pos: 0,
        end: text.len(),
        ctx,
    };
    let value = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err_here(ParseErrorKind::Expected("end of input")));
    }
    Ok(value)
}

/// Scan free text for `E(n)` tokens and return the lcm of all `n`, defaulting
/// to 1. Used to size the field before any expression is parsed.
pub fn scan_root_orders(text: &str) -> u64 {
    let bytes = text.as_bytes();
    let mut lcm: u64 = 1;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'E' {
            // reject identifier continuations like `ZE(3)` or `Ex(3)`
            let prev_joins =
                i > 0 && ((bytes[i - 1] as char).is_ascii_alphanumeric() || bytes[i - 1] == b'_');
            let mut j = i + 1;
            while j < bytes.len() && (bytes[j] as char).is_whitespace() {
                j += 1;
            }
            if !prev_joins && j < bytes.len() && bytes[j] == b'(' {
                j += 1;
                while j < bytes.len() && (bytes[j] as char).is_whitespace() {
                    j += 1;
                }
                let start = j;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j > start {
                    if let Ok(n) = std::str::from_utf8(&bytes[start..j]).unwrap().parse::<u64>() {
                        if n > 0 {
                            lcm = num::integer::lcm(lcm, n);
                        }
                    }
                }
            }
        }
        i += 1;
    }
    lcm
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ctx(n: u64) -> Arc<CyclotomicContext> {
        CyclotomicContext::new(n)
    }

    #[test]
    fn cyclotomic_polynomials_match_known_values() {
        let as_i64 = |p: RatPoly| -> Vec<i64> {
            p.iter()
                .map(|c| {
                    assert!(c.denom().is_one());
                    i64::try_from(c.numer().clone()).unwrap()
                })
                .collect()
        };
        assert_eq!(as_i64(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        // degree phi(N)
        assert_eq!(ctx(8).degree(), 4);
        assert_eq!(ctx(9).degree(), 6);
        assert_eq!(ctx(1).degree(), 1);
        assert_eq!(ctx(2).degree(), 1);
    }

    #[test]
    fn parses_rational_arithmetic() {
        let c = ctx(1);
        let v = parse_scalar("1/2 + 1/3", &c).unwrap();
        assert_eq!(v, Scalar::from_ratio(&c, 5, 6));
    }

    #[test]
    fn quartic_root_squares_to_minus_one() {
        let c = ctx(4);
        let v = parse_scalar("E(4)^2", &c).unwrap();
        assert_eq!(v, Scalar::from_integer(&c, -1));
    }

    #[test]
    fn cube_root_square_reduces() {
        let c = ctx(3);
        let v = parse_scalar("E(3)^2", &c).unwrap();
        let expect = Scalar::from_integer(&c, -1).sub(&Scalar::zeta_power(&c, 1));
        assert_eq!(v, expect);
    }

    #[test]
    fn root_order_must_divide_context() {
        let c = ctx(4);
        let err = parse_scalar("E(3)", &c).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::RootOutsideField { .. }));
    }

    #[test]
    fn division_by_zero_reports_position() {
        let c = ctx(1);
        let err = parse_scalar("1/(2 - 2)", &c).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DivisionByZero);
        let err = parse_scalar("3 + @", &c).unwrap_err();
        assert_eq!(err.pos, 4);
    }

    #[test]
    fn conjugation_examples() {
        let c1 = ctx(1);
        let r = Scalar::from_ratio(&c1, 5, 6);
        assert_eq!(r.conjugate(), r);

        let c3 = ctx(3);
        let z = Scalar::zeta_power(&c3, 1);
        let expect = Scalar::from_integer(&c3, -1).sub(&z);
        assert_eq!(z.conjugate(), expect);
    }

    fn random_scalar(rng: &mut StdRng, c: &Arc<CyclotomicContext>) -> Scalar {
        let mut acc = Scalar::zero(c);
        for i in 0..c.degree() {
            let num = rng.gen_range(-4i64..=4);
            if num == 0 {
                continue;
            }
            let den = rng.gen_range(1i64..=3);
            let coeff = Scalar::from_ratio(c, num, den);
            acc = acc.add(&coeff.mul(&Scalar::zeta_power(c, i as i64)));
        }
        acc
    }

    #[test]
    fn field_axioms_hold_on_random_triples() {
        let mut rng = StdRng::seed_from_u64(0x5ca1ab1e);
        for &n in &[1u64, 3, 4, 6, 12] {
            let c = ctx(n);
            for _ in 0..40 {
                let a = random_scalar(&mut rng, &c);
                let b = random_scalar(&mut rng, &c);
                let d = random_scalar(&mut rng, &c);
                assert_eq!(a.add(&b).add(&d), a.add(&b.add(&d)));
                assert_eq!(a.mul(&b), b.mul(&a));
                assert_eq!(a.mul(&b.mul(&d)), a.mul(&b).mul(&d));
                assert_eq!(a.mul(&b.add(&d)), a.mul(&b).add(&a.mul(&d)));
                if !a.is_zero() {
                    assert!(a.mul(&a.inverse().unwrap()).is_one());
                }
            }
        }
    }

    #[test]
    fn conjugate_is_an_involutive_automorphism() {
        let mut rng = StdRng::seed_from_u64(42);
        for &n in &[3u64, 4, 5, 12] {
            let c = ctx(n);
            for _ in 0..30 {
                let a = random_scalar(&mut rng, &c);
                let b = random_scalar(&mut rng, &c);
                assert_eq!(a.conjugate().conjugate(), a);
                assert_eq!(a.mul(&b).conjugate(), a.conjugate().mul(&b.conjugate()));
                assert_eq!(a.add(&b).conjugate(), a.conjugate().add(&b.conjugate()));
            }
        }
    }

    proptest! {
        #[test]
        fn print_then_parse_roundtrips(seed in any::<u64>(), n in prop::sample::select(vec![1u64, 2, 3, 4, 6, 8, 12])) {
            let c = ctx(n);
            let mut rng = StdRng::seed_from_u64(seed);
            let x = random_scalar(&mut rng, &c);
            let printed = x.to_string();
            let back = parse_scalar(&printed, &c).unwrap();
            prop_assert_eq!(back, x);
        }
    }

    #[test]
    fn root_scan_takes_lcm() {
        assert_eq!(scan_root_orders("no roots here"), 1);
        assert_eq!(scan_root_orders("E(4) + E(6)"), 12);
        assert_eq!(scan_root_orders("E( 3 ) * ZE(5) + Ex(7)"), 3);
        assert_eq!(scan_root_orders("[[\"E(8)\"]]"), 8);
    }
}
