//! Exact multivariate polynomials over the rationals in the fixed variable
//! set `{x, y, t, a, b}`.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic on `(x, y, t, a, b)`: higher total degree first, then
//! larger exponent of `x`, then `y`, and so on. Two equal polynomials
//! therefore always serialize to the same string.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim().replace('\u{2212}', "-");
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.as_str(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    T,
    A,
    B,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::X, Var::Y, Var::T, Var::A, Var::B];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::T => "t",
            Var::A => "a",
            Var::B => "b",
        }
    }

    fn from_name(c: char) -> Option<Var> {
        Some(match c {
            'x' => Var::X,
            'y' => Var::Y,
            't' => Var::T,
            'a' => Var::A,
            'b' => Var::B,
            _ => return None,
        })
    }
}

/// Exponent vector over `(x, y, t, a, b)`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 5]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 5]);

    pub fn var(v: Var) -> Self {
        let mut e = [0; 5];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 5]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a -= b;
        }
        Monomial(e)
    }
}

// `Less` means "earlier in canonical order".
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(v.name())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Partial assignment of rational values to variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bindings {
    values: [Option<Rational>; 5],
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: Var, value: Rational) -> Self {
        self.values[v.index()] = Some(value);
        self
    }

    pub fn set(&mut self, v: Var, value: Rational) {
        self.values[v.index()] = Some(value);
    }

    pub fn get(&self, v: Var) -> Option<&Rational> {
        self.values[v.index()].as_ref()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl SymPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn x() -> Self {
        Self::var(Var::X)
    }
    pub fn y() -> Self {
        Self::var(Var::Y)
    }
    pub fn t() -> Self {
        Self::var(Var::T)
    }
    pub fn a() -> Self {
        Self::var(Var::A)
    }
    pub fn b() -> Self {
        Self::var(Var::B)
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SymPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next()
    }

    /// The constant coefficient if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn involves(&self, v: Var) -> bool {
        self.degree_in(v) > 0
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero();
        }
        SymPoly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> SymPoly {
        let mut out = SymPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Exact partial evaluation; unbound variables survive.
    pub fn substitute(&self, bindings: &Bindings) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = *m;
            for v in Var::ALL {
                if let Some(val) = bindings.get(v) {
                    let e = m.exponent(v);
                    if e > 0 {
                        coeff *= num_traits::pow(val.clone(), e as usize);
                        rest.0[v.index()] = 0;
                    }
                }
            }
            out.add_term(rest, coeff);
        }
        out
    }

    /// Full evaluation; fails if a variable occurring in the polynomial is unbound.
    pub fn eval(&self, bindings: &Bindings) -> Result<Rational> {
        self.substitute(bindings)
            .as_constant()
            .ok_or_else(|| Error::Unbound(self.to_string()))
    }

    /// Substitutes polynomials for variables simultaneously.
    pub fn compose(&self, images: &[(Var, SymPoly)]) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            let mut prod = SymPoly::constant(c.clone());
            for v in Var::ALL {
                let e = m.exponent(v);
                if e == 0 {
                    continue;
                }
                let base = images
                    .iter()
                    .find(|(w, _)| *w == v)
                    .map(|(_, p)| p.clone())
                    .unwrap_or_else(|| SymPoly::var(v));
                prod = &prod * &base.pow(e);
            }
            out = out + prod;
        }
        out
    }

    /// Translation `v -> v + shift` for each listed variable.
    pub fn translate(&self, shifts: &[(Var, Rational)]) -> SymPoly {
        let images: Vec<(Var, SymPoly)> = shifts
            .iter()
            .map(|(v, s)| (*v, SymPoly::var(*v) + SymPoly::constant(s.clone())))
            .collect();
        self.compose(&images)
    }

    pub fn derivative(&self, v: Var) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut d = *m;
            d.0[v.index()] -= 1;
            out.add_term(d, c * int(e as i64));
        }
        out
    }

    /// Coefficient of `x^i y^j ...` where only the exponents of `vars` are
    /// matched; the result is a polynomial in the remaining variables.
    pub fn coefficient(&self, vars: &[Var], exps: &[u32]) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            if vars.iter().zip(exps).all(|(v, e)| m.exponent(*v) == *e) {
                let mut rest = *m;
                for v in vars {
                    rest.0[v.index()] = 0;
                }
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Keeps only terms whose total degree in `vars` equals `deg`.
    pub fn homogeneous_part(&self, vars: &[Var], deg: u32) -> SymPoly {
        SymPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().map(|v| m.exponent(*v)).sum::<u32>() == deg)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &SymPoly) -> Option<SymPoly> {
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut quot = SymPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let q = SymPoly::term(c / &lc, m.div(&lm));
            rem = rem - &q * divisor;
            quot = quot + q;
        }
        Some(quot)
    }

    /// Scales by a positive rational so that coefficients are coprime
    /// integers, then fixes the sign so the leading term is positive.
    pub fn normalize_primitive(&self) -> Result<SymPoly> {
        Ok(self.scale(&self.primitive_factor()?))
    }

    /// The rational `λ` with `normalize_primitive(p) = λ·p`.
    pub fn primitive_factor(&self) -> Result<Rational> {
        let (_, lead) = self
            .leading_term()
            .ok_or_else(|| Error::Degenerate("cannot normalize zero".into()))?;
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&den / c.denom());
            g = g.gcd(&n);
        }
        let mut factor = Rational::new(den, g);
        if lead.is_negative() {
            factor = -factor;
        }
        Ok(factor)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl From<Rational> for SymPoly {
    fn from(c: Rational) -> Self {
        SymPoly::constant(c)
    }
}

impl From<i64> for SymPoly {
    fn from(n: i64) -> Self {
        SymPoly::int(n)
    }
}

impl<'a> Add<&'a SymPoly> for &'a SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for SymPoly {
    type Output = SymPoly;
    fn add(mut self, rhs: SymPoly) -> SymPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&SymPoly> for SymPoly {
    fn add_assign(&mut self, rhs: &SymPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<'a> Sub<&'a SymPoly> for &'a SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Sub for SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: SymPoly) -> SymPoly {
        &self - &rhs
    }
}

impl Neg for SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        SymPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        -self.clone()
    }
}

impl<'a> Mul<&'a SymPoly> for &'a SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: SymPoly) -> SymPoly {
        &self * &rhs
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for SymPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<SymPoly> {
        let mut p = Parser {
            chars: s.replace('\u{2212}', "-").chars().collect(),
            pos: 0,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }
}

/// Recursive-descent parser for `+ - * / ^ ( )`, integer literals and the
/// five variables. Division is only allowed by constants.
struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err(&self, what: &str) -> Error {
        let text: String = self.chars.iter().collect();
        Error::Parse(format!("{what} at offset {} in `{text}`", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<SymPoly> {
        let mut acc = self.product()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc + self.product()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = acc - self.product()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<SymPoly> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                '/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    let d = d
                        .as_constant()
                        .filter(|d| !d.is_zero())
                        .ok_or_else(|| self.err("division by a non-constant or zero"))?;
                    acc = acc.scale(&d.recip());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<SymPoly> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<SymPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
                self.pos += 1;
            }
            let e: u32 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| self.err("expected exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<SymPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
                    self.pos += 1;
                }
                let n: BigInt = self.chars[start..self.pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| self.err("bad integer"))?;
                Ok(SymPoly::constant(Rational::from_integer(n)))
            }
            Some(c) => match Var::from_name(c) {
                Some(v) => {
                    self.pos += 1;
                    Ok(SymPoly::var(v))
                }
                None => Err(self.err("unexpected character")),
            },
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Shorthand for parsing a polynomial literal known to be well formed.
pub fn poly(s: &str) -> SymPoly {
    s.parse()
        .unwrap_or_else(|e| panic!("bad polynomial literal `{s}`: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn add_cancels_and_has_identity() {
        assert_eq!(poly("x + y") + poly("-y"), poly("x"));
        let p = poly("3*x^2*a - b/2");
        assert_eq!(&p + &SymPoly::zero(), p);
        assert_eq!(
            poly("2*a*(y^2+y)") + poly("b*(x^2+2*x)"),
            poly("2*a*y^2 + 2*a*y + b*x^2 + 2*b*x")
        );
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(poly("(x+1)*(x-1)"), poly("x^2 - 1"));
        let lhs = &(&(&poly("t") * &poly("t")) * &(&poly("a") * &poly("b"))) * &poly("a + 2*b");
        assert_eq!(lhs, poly("t^2*a^2*b + 2*t^2*a*b^2"));
        let p = poly("x*y - 7/3*t");
        assert_eq!(&p * &SymPoly::one(), p);
    }

    #[test]
    fn substitution_examples() {
        let wall = poly("t^2*a*b*(a+2*b) + 2*a*(y^2+y) + b*(x^2+2*x)");
        let sliced = wall.substitute(&Bindings::new().with(Var::T, int(0)));
        assert_eq!(sliced, poly("2*a*(y^2+y) + b*(x^2+2*x)"));
        assert_eq!(wall.substitute(&Bindings::new()), wall);
        let at = Bindings::new()
            .with(Var::X, int(-2))
            .with(Var::Y, int(-1))
            .with(Var::T, int(0))
            .with(Var::A, int(2))
            .with(Var::B, int(1));
        assert_eq!(wall.eval(&at).unwrap(), int(0));
    }

    #[test]
    fn eval_requires_all_variables() {
        assert!(poly("x + y").eval(&Bindings::new().with(Var::X, int(1))).is_err());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(
            poly("-2*x^2 - 4*y^2").normalize_primitive().unwrap(),
            poly("x^2 + 2*y^2")
        );
        assert_eq!(poly("3/2*x").normalize_primitive().unwrap(), poly("x"));
        assert!(SymPoly::zero().normalize_primitive().is_err());
    }

    #[test]
    fn canonical_order_is_graded_lex() {
        let p = poly("1 + b + x + y^2 + x*y + t^2*a");
        let order: Vec<String> = p.terms().map(|(m, _)| m.to_string()).collect();
        assert_eq!(order, ["t^2*a", "x*y", "y^2", "x", "b", "1"]);
        assert_eq!(p.to_string(), "t^2*a + x*y + y^2 + x + b + 1");
    }

    #[test]
    fn display_roundtrips_through_parser() {
        let p = poly("-1/2*x^2*b + 3*t^2*a^2 - y + 5/7");
        assert_eq!(p.to_string().parse::<SymPoly>().unwrap(), p);
    }

    #[test]
    fn exact_division() {
        let p = poly("12*a^2 - 24*a*b");
        assert_eq!(p.div_exact(&poly("a - 2*b")).unwrap(), poly("12*a"));
        assert!(p.div_exact(&poly("a + b")).is_none());
    }

    #[test]
    fn derivative_and_coefficients() {
        let p = poly("b*x^2 + 2*b*x + 2*a*y^2 + 3*x*y*a");
        assert_eq!(p.derivative(Var::X), poly("2*b*x + 2*b + 3*y*a"));
        assert_eq!(p.coefficient(&[Var::X, Var::Y], &[1, 1]), poly("3*a"));
        assert_eq!(p.coefficient(&[Var::X, Var::Y], &[2, 0]), poly("b"));
    }

    #[test]
    fn translate_shifts_variables() {
        let p = poly("x^2 + y");
        assert_eq!(p.translate(&[(Var::X, int(1))]), poly("x^2 + 2*x + 1 + y"));
    }

    #[test]
    fn parse_errors() {
        assert!("x +".parse::<SymPoly>().is_err());
        assert!("x / y".parse::<SymPoly>().is_err());
        assert!("z".parse::<SymPoly>().is_err());
        assert!("(x".parse::<SymPoly>().is_err());
    }

    fn small_poly() -> impl Strategy<Value = SymPoly> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..2, 0u32..2, 0u32..2), -5i64..6, 1i64..4), 0..5)
            .prop_map(|terms| {
                terms.into_iter().fold(SymPoly::zero(), |acc, ((i, j, k, l, m), n, d)| {
                    acc + SymPoly::term(rat(n, d), Monomial([i, j, k, l, m]))
                })
            })
    }

    fn small_bindings() -> impl Strategy<Value = Bindings> {
        prop::collection::vec(prop::option::of((-4i64..5, 1i64..4)), 5).prop_map(|vals| {
            let mut b = Bindings::new();
            for (v, val) in Var::ALL.iter().zip(vals) {
                if let Some((n, d)) = val {
                    b.set(*v, rat(n, d));
                }
            }
            b
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in small_poly(), q in small_poly(), r in small_poly()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn normalize_is_scale_invariant(p in small_poly(), n in 1i64..9, d in 1i64..9) {
            prop_assume!(!p.is_zero());
            let base = p.normalize_primitive().unwrap();
            prop_assert_eq!(p.scale(&rat(n, d)).normalize_primitive().unwrap(), base.clone());
            prop_assert_eq!((-p.clone()).normalize_primitive().unwrap(), base.clone());
            let (_, lead) = base.leading_term().unwrap();
            prop_assert!(lead.is_positive());
            prop_assert!(base.terms().all(|(_, c)| c.is_integer()));
        }

        #[test]
        fn substitute_is_a_ring_homomorphism(p in small_poly(), q in small_poly(), b in small_bindings()) {
            prop_assert_eq!((&p * &q).substitute(&b), &p.substitute(&b) * &q.substitute(&b));
            prop_assert_eq!((&p + &q).substitute(&b), &p.substitute(&b) + &q.substitute(&b));
        }

        #[test]
        fn serialization_roundtrip(p in small_poly()) {
            prop_assert_eq!(p.to_string().parse::<SymPoly>().unwrap(), p);
        }

        #[test]
        fn division_inverts_multiplication(p in small_poly(), q in small_poly()) {
            prop_assume!(!q.is_zero());
            prop_assert_eq!((&p * &q).div_exact(&q).unwrap(), p);
        }
    }
}
