//! Min-plus values and valued coefficient fields.
//!
//! [`Val`] is an element of `ℚ ∪ {+∞}`; `+∞` stands for absolute value zero.
//! Two coefficient models are provided: rationals with a `p`-adic valuation
//! ([`PAdic`]) and rational functions in `t` with the `t`-adic valuation
//! ([`TAdic`]).

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Q;

/// Valuation: a rational number or `+∞`.
///
/// The derived order puts every finite value below `Inf`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val {
    Fin(Q),
    Inf,
}

impl Val {
    pub fn zero() -> Val {
        Val::Fin(Q::zero())
    }

    pub fn int(v: i64) -> Val {
        Val::Fin(Q::from_integer(v.into()))
    }

    pub fn frac(n: i64, d: i64) -> Val {
        Val::Fin(Q::new(n.into(), d.into()))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Val::Inf)
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            Val::Fin(q) => Some(q),
            Val::Inf => None,
        }
    }

    /// `k · self` for a natural multiplicity, with `0 · ∞ = 0`.
    pub fn times(&self, k: u64) -> Val {
        match self {
            _ if k == 0 => Val::zero(),
            Val::Fin(q) => Val::Fin(q * Q::from_integer(k.into())),
            Val::Inf => Val::Inf,
        }
    }

    /// Tropical sum (min).
    pub fn min_plus(self, other: Val) -> Val {
        core::cmp::min(self, other)
    }
}

impl Add for Val {
    type Output = Val;

    fn add(self, rhs: Val) -> Val {
        match (self, rhs) {
            (Val::Fin(a), Val::Fin(b)) => Val::Fin(a + b),
            _ => Val::Inf,
        }
    }
}

impl Add<&Q> for Val {
    type Output = Val;

    fn add(self, rhs: &Q) -> Val {
        match self {
            Val::Fin(a) => Val::Fin(a + rhs),
            Val::Inf => Val::Inf,
        }
    }
}

impl Sub<&Q> for Val {
    type Output = Val;

    fn sub(self, rhs: &Q) -> Val {
        match self {
            Val::Fin(a) => Val::Fin(a - rhs),
            Val::Inf => Val::Inf,
        }
    }
}

impl From<Q> for Val {
    fn from(q: Q) -> Val {
        Val::Fin(q)
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Inf => f.write_str("inf"),
            Val::Fin(q) => write!(f, "{q}"),
        }
    }
}

impl core::str::FromStr for Val {
    type Err = Error;

    fn from_str(s: &str) -> Result<Val> {
        match s.trim() {
            "inf" | "+inf" | "Inf" | "INF" | "∞" | "+∞" => Ok(Val::Inf),
            other => parse_rational(other).map(Val::Fin),
        }
    }
}

/// Minimum of a nonempty list of values.
pub fn tropical_min_plus<I: IntoIterator<Item = Val>>(terms: I) -> Result<Val> {
    terms.into_iter().min().ok_or(Error::EmptyMin)
}

/// Parses `"6"`, `"-1/4"` or `"0.125"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let err = || Error::Parse(alloc::format!("bad rational {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Q::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.trim_start().starts_with('-');
        let ip = ip.trim().trim_start_matches(['-', '+']);
        if (ip.is_empty() && fp.is_empty()) || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let whole: BigInt = if ip.is_empty() { BigInt::zero() } else { ip.parse().map_err(|_| err())? };
        let frac: BigInt = if fp.is_empty() { BigInt::zero() } else { fp.parse().map_err(|_| err())? };
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let q = Q::new(whole * &scale + frac, scale);
        return Ok(if neg { -q } else { q });
    }
    let n: BigInt = s.parse().map_err(|_| err())?;
    Ok(Q::from_integer(n))
}

/// Exact field element usable as a polynomial coefficient.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
}

impl<T> Coefficient for T where
    T: Clone + PartialEq + fmt::Debug + fmt::Display + Add<Output = T> + Mul<Output = T> + Neg<Output = T> + Zero + One
{
}

/// A coefficient field with a non-archimedean valuation.
pub trait ValuedField {
    type Elem: Coefficient;

    fn val(&self, a: &Self::Elem) -> Val;

    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    fn name(&self) -> String;
}

/// `ℚ` with the `p`-adic valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdic {
    p: BigInt,
}

impl PAdic {
    pub fn new(p: u64) -> Result<PAdic> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::NotPrime(p));
        }
        Ok(PAdic { p: BigInt::from(p) })
    }

    pub fn prime(&self) -> &BigInt {
        &self.p
    }

    fn ord(&self, n: &BigInt) -> i64 {
        let mut n = n.clone();
        let mut k = 0;
        loop {
            let (q, r) = n.div_rem(&self.p);
            if !r.is_zero() {
                return k;
            }
            n = q;
            k += 1;
        }
    }
}

impl ValuedField for PAdic {
    type Elem = Q;

    fn val(&self, a: &Q) -> Val {
        if a.is_zero() {
            return Val::Inf;
        }
        Val::int(self.ord(a.numer()) - self.ord(a.denom()))
    }

    fn parse_elem(&self, s: &str) -> Result<Q> {
        parse_rational(s)
    }

    fn name(&self) -> String {
        alloc::format!("{}-adic", self.p)
    }
}

/// `ℚ(t)` with the valuation `ord_t` at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TAdic;

impl ValuedField for TAdic {
    type Elem = RatFn;

    fn val(&self, a: &RatFn) -> Val {
        if a.is_zero() {
            return Val::Inf;
        }
        Val::int(a.num.ord() as i64 - a.den.ord() as i64)
    }

    fn parse_elem(&self, s: &str) -> Result<RatFn> {
        s.parse()
    }

    fn name(&self) -> String {
        "t-adic".to_string()
    }
}

/// `F` with its valuation multiplied by a positive rational, the effect of a
/// field extension that rescales the value group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rescaled<F> {
    pub inner: F,
    pub factor: Q,
}

impl<F: ValuedField> ValuedField for Rescaled<F> {
    type Elem = F::Elem;

    fn val(&self, a: &F::Elem) -> Val {
        match self.inner.val(a) {
            Val::Fin(q) => Val::Fin(q * &self.factor),
            Val::Inf => Val::Inf,
        }
    }

    fn parse_elem(&self, s: &str) -> Result<F::Elem> {
        self.inner.parse_elem(s)
    }

    fn name(&self) -> String {
        alloc::format!("{} scaled by {}", self.inner.name(), self.factor)
    }
}

/// Dense univariate polynomial over `ℚ`, lowest degree first, no trailing
/// zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct UPoly(Vec<Q>);

impl UPoly {
    fn trimmed(mut v: Vec<Q>) -> UPoly {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        UPoly(v)
    }

    fn constant(c: Q) -> UPoly {
        UPoly::trimmed(vec![c])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &Q {
        self.0.last().expect("nonzero polynomial")
    }

    /// Order of vanishing at zero.
    fn ord(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let z = Q::zero();
        UPoly::trimmed((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::default();
        }
        let mut out = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::trimmed(out)
    }

    fn scale(&self, c: &Q) -> UPoly {
        UPoly::trimmed(self.0.iter().map(|a| a * c).collect())
    }

    fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let mut r = self.clone();
        if r.0.len() < d.0.len() {
            return (UPoly::default(), r);
        }
        let mut q = vec![Q::zero(); r.0.len() - d.0.len() + 1];
        let dl = d.lead().clone();
        while !r.is_zero() && r.0.len() >= d.0.len() {
            let shift = r.degree() - d.degree();
            let c = r.lead() / &dl;
            for (i, dc) in d.0.iter().enumerate() {
                let t = dc * &c;
                r.0[i + shift] -= t;
            }
            q[shift] = c;
            r = UPoly::trimmed(r.0);
        }
        (UPoly::trimmed(q), r)
    }

    fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let l = a.lead().clone();
        a.scale(&(Q::one() / l))
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = a.is_one();
            match (deg, unit) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}*")?,
            }
            match deg {
                0 => {}
                1 => f.write_str("t")?,
                d => write!(f, "t^{d}")?,
            }
        }
        Ok(())
    }
}

/// Rational function `num / den` in one variable `t`, kept in lowest terms
/// with a monic denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFn {
    num: UPoly,
    den: UPoly,
}

impl RatFn {
    fn normalized(num: UPoly, den: UPoly) -> RatFn {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFn { num, den: UPoly::constant(Q::one()) };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let l = Q::one() / den.lead().clone();
        RatFn { num: num.scale(&l), den: den.scale(&l) }
    }

    pub fn constant(c: Q) -> RatFn {
        RatFn { num: UPoly::constant(c), den: UPoly::constant(Q::one()) }
    }

    pub fn t() -> RatFn {
        RatFn { num: UPoly(vec![Q::zero(), Q::one()]), den: UPoly::constant(Q::one()) }
    }

    pub fn inv(&self) -> Result<RatFn> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFn::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: u32) -> RatFn {
        (0..e).fold(RatFn::one(), |acc, _| acc * self.clone())
    }
}

impl Add for RatFn {
    type Output = RatFn;

    fn add(self, o: RatFn) -> RatFn {
        if self.den == o.den {
            return RatFn::normalized(self.num.add(&o.num), self.den);
        }
        RatFn::normalized(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
}

impl Sub for RatFn {
    type Output = RatFn;

    fn sub(self, o: RatFn) -> RatFn {
        self + (-o)
    }
}

impl Mul for RatFn {
    type Output = RatFn;

    fn mul(self, o: RatFn) -> RatFn {
        RatFn::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl Neg for RatFn {
    type Output = RatFn;

    fn neg(self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den }
    }
}

impl Zero for RatFn {
    fn zero() -> RatFn {
        RatFn::constant(Q::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFn {
    fn one() -> RatFn {
        RatFn::constant(Q::one())
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den_one = self.den.0.len() == 1 && self.den.0[0].is_one();
        if den_one {
            if self.num.0.iter().filter(|c| !c.is_zero()).count() > 1 {
                f.write_str("(")?;
                self.num.fmt_with(f)?;
                return f.write_str(")");
            }
            return self.num.fmt_with(f);
        }
        f.write_str("(")?;
        self.num.fmt_with(f)?;
        f.write_str(")/(")?;
        self.den.fmt_with(f)?;
        f.write_str(")")
    }
}

impl core::str::FromStr for RatFn {
    type Err = Error;

    /// Arithmetic expressions in `t` with `+ - * / ^`, parentheses, integer and
    /// decimal literals, e.g. `"t^3/(1+t)"` or `"3/2*t^2 - 1"`.
    fn from_str(s: &str) -> Result<RatFn> {
        let mut p = ExprParser { src: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(v)
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(alloc::format!("{msg} at offset {} in {:?}", self.pos, String::from_utf8_lossy(self.src)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFn> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFn> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = acc * self.unary()?.inv()?;
                }
                // implicit product such as "2t" or "3(1+t)"
                Some(b't' | b'(') => acc = acc * self.unary()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFn> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFn> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = core::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| self.error("expected exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFn> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(RatFn::t())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.') {
                    self.pos += 1;
                }
                let lit = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(RatFn::constant(parse_rational(lit)?))
            }
            _ => Err(self.error("unexpected token")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn p_adic_valuations() {
        let f = PAdic::new(2).unwrap();
        assert_eq!(f.val(&q(6, 1)), Val::int(1));
        assert_eq!(f.val(&q(1, 4)), Val::int(-2));
        assert_eq!(f.val(&q(0, 1)), Val::Inf);
        assert_eq!(PAdic::new(3).unwrap().val(&q(-18, 5)), Val::int(2));
    }

    #[test]
    fn t_adic_valuations() {
        let f = TAdic;
        let c: RatFn = "t^3/(1+t)".parse().unwrap();
        assert_eq!(f.val(&c), Val::int(3));
        assert_eq!(f.val(&"1/t^2".parse().unwrap()), Val::int(-2));
        assert_eq!(f.val(&"t - t".parse().unwrap()), Val::Inf);
        assert_eq!(f.val(&"(t^2+t)/(t)".parse().unwrap()), Val::int(0));
    }

    #[test]
    fn primes_are_checked() {
        assert!(PAdic::new(2).is_ok());
        assert!(PAdic::new(97).is_ok());
        assert_eq!(PAdic::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PAdic::new(91), Err(Error::NotPrime(91)));
    }

    #[test]
    fn tropical_min() {
        assert_eq!(tropical_min_plus([Val::int(1), Val::int(3), Val::Inf]), Ok(Val::int(1)));
        assert_eq!(tropical_min_plus([Val::Inf, Val::Inf]), Ok(Val::Inf));
        assert_eq!(tropical_min_plus([Val::int(-2), Val::int(0)]), Ok(Val::int(-2)));
        assert_eq!(tropical_min_plus(Vec::new()), Err(Error::EmptyMin));
    }

    #[test]
    fn val_parsing_and_display() {
        assert_eq!("inf".parse::<Val>().unwrap(), Val::Inf);
        assert_eq!("1/2".parse::<Val>().unwrap(), Val::frac(1, 2));
        assert_eq!("-0.25".parse::<Val>().unwrap(), Val::frac(-1, 4));
        assert_eq!(".5".parse::<Val>().unwrap(), Val::frac(1, 2));
        assert_eq!(Val::frac(-3, 6).to_string(), "-1/2");
        assert_eq!(Val::Inf.to_string(), "inf");
        assert!("1/0".parse::<Val>().is_err());
        assert!("abc".parse::<Val>().is_err());
    }

    #[test]
    fn ratfn_display_roundtrip() {
        for s in ["t^3/(1+t)", "3/2*t^2 - 1", "-t", "(1 - t)^2/(2 + t^3)", "0", "5/7", "2t(1+t)"] {
            let a: RatFn = s.parse().unwrap();
            let b: RatFn = a.to_string().parse().unwrap();
            assert_eq!(a, b, "{s} -> {a}");
        }
        assert!("1/(t-t)".parse::<RatFn>().is_err());
        assert!("t^".parse::<RatFn>().is_err());
        assert!("(t".parse::<RatFn>().is_err());
    }

    #[test]
    fn ratfn_field_ops() {
        let a: RatFn = "1/(1-t)".parse().unwrap();
        let b: RatFn = "1 - t".parse().unwrap();
        assert_eq!(a * b, RatFn::one());
        let c: RatFn = "t/(t^2+t)".parse().unwrap();
        assert_eq!(c, "1/(t+1)".parse().unwrap());
    }
}
