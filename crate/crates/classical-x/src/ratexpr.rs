use crate::error::ClassicalError;
use crate::mpoly::{gcd, MPoly};
use num::{BigInt, BigRational, One, Signed};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Rational expression in generators Z1…Zn over ℚ, kept in lowest terms,
/// optionally carrying one factor of the central marker ℓ.
///
/// Canonical form: numerator and denominator share no polynomial factor,
/// the denominator's leading coefficient is 1, and the zero expression is
/// 0/1 without the marker. Equality of canonical forms is structural.
///
/// ℓ is nilpotent of degree two, so arithmetic refuses to build ℓ², and
/// sums may not mix marked and unmarked nonzero operands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatExpr {
    num: MPoly,
    den: MPoly,
    ell: bool,
}

impl RatExpr {
    fn normalized(num: MPoly, den: MPoly, ell: bool) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatExpr {
                num: MPoly::zero(den.nvars()),
                den: MPoly::one(den.nvars()),
                ell: false,
            };
        }
        let g = if den.is_one() {
            MPoly::one(den.nvars())
        } else {
            gcd(&num, &den)
        };
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.divexact(&g).expect("gcd divides the numerator"),
                den.divexact(&g).expect("gcd divides the denominator"),
            )
        };
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.mul_scalar(&inv);
            den = den.mul_scalar(&inv);
        }
        RatExpr { num, den, ell }
    }

    pub fn zero(nvars: usize) -> Self {
        RatExpr {
            num: MPoly::zero(nvars),
            den: MPoly::one(nvars),
            ell: false,
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MPoly::one(nvars))
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::from_poly(MPoly::constant(nvars, c))
    }

    pub fn from_int(nvars: usize, v: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(BigInt::from(v)))
    }

    /// The generator Z_{i+1} (indices are 0-based, display names 1-based).
    pub fn gen(nvars: usize, i: usize) -> Self {
        Self::from_poly(MPoly::var(nvars, i))
    }

    pub fn from_poly(p: MPoly) -> Self {
        let n = p.nvars();
        RatExpr {
            num: p,
            den: MPoly::one(n),
            ell: false,
        }
    }

    /// Laurent monomial Z^e with signed exponents.
    pub fn monomial(nvars: usize, exps: &[i64]) -> Self {
        assert_eq!(exps.len(), nvars);
        let up: Vec<u32> = exps.iter().map(|&e| e.max(0) as u32).collect();
        let down: Vec<u32> = exps.iter().map(|&e| (-e).max(0) as u32).collect();
        RatExpr {
            num: MPoly::monomial(nvars, up, BigRational::one()),
            den: MPoly::monomial(nvars, down, BigRational::one()),
            ell: false,
        }
    }

    pub fn from_num_den(num: MPoly, den: MPoly) -> Result<Self, ClassicalError> {
        if den.is_zero() {
            return Err(ClassicalError::DivisionByZero);
        }
        Ok(Self::normalized(num, den, false))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn has_ell(&self) -> bool {
        self.ell
    }

    /// Attach or remove the ℓ marker; the zero expression stays unmarked.
    pub fn with_ell(&self, ell: bool) -> Self {
        let mut out = self.clone();
        out.ell = ell && !self.is_zero();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        !self.ell && self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is a single monomial.
    pub fn is_laurent(&self) -> bool {
        self.den.as_monomial().is_some()
    }

    fn join_ell(a: &Self, b: &Self) -> bool {
        if a.is_zero() {
            return b.ell;
        }
        if b.is_zero() {
            return a.ell;
        }
        assert_eq!(a.ell, b.ell, "cannot add expressions of different ell degree");
        a.ell
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars(), other.nvars());
        let ell = Self::join_ell(self, other);
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::normalized(num, den, ell)
    }

    pub fn neg(&self) -> Self {
        RatExpr {
            num: self.num.neg(),
            den: self.den.clone(),
            ell: self.ell,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars(), other.nvars());
        assert!(
            !(self.ell && other.ell),
            "ell is nilpotent: refusing to form an ell^2 term"
        );
        let ell = self.ell || other.ell;
        let one = MPoly::one(self.nvars());
        let g1 = if other.den.is_one() { one.clone() } else { gcd(&self.num, &other.den) };
        let g2 = if self.den.is_one() { one } else { gcd(&other.num, &self.den) };
        let na = self.num.divexact(&g1).expect("gcd divides");
        let db = other.den.divexact(&g1).expect("gcd divides");
        let nb = other.num.divexact(&g2).expect("gcd divides");
        let da = self.den.divexact(&g2).expect("gcd divides");
        Self::normalized(na.mul(&nb), da.mul(&db), ell)
    }

    pub fn inv(&self) -> Result<Self, ClassicalError> {
        if self.is_zero() {
            return Err(ClassicalError::DivisionByZero);
        }
        assert!(!self.ell, "ell is not invertible");
        Ok(Self::normalized(self.den.clone(), self.num.clone(), false))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ClassicalError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self, ClassicalError> {
        if e == 0 {
            return Ok(Self::one(self.nvars()));
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        assert!(!base.ell, "powers of ell-marked expressions are not defined");
        let mut out = Self::one(self.nvars());
        let mut b = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(out)
    }

    pub fn partial_derivative(&self, v: usize) -> Self {
        let dn = self.num.partial_derivative(v);
        let dd = self.den.partial_derivative(v);
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        let den = self.den.mul(&self.den);
        Self::normalized(num, den, self.ell)
    }

    /// Replace generator i by `images[i]` everywhere.
    pub fn substitute(&self, images: &[RatExpr]) -> Result<Self, ClassicalError> {
        if images.len() != self.nvars() {
            return Err(ClassicalError::RankMismatch {
                left: self.nvars(),
                right: images.len(),
            });
        }
        let m = images.first().map(|r| r.nvars()).unwrap_or(0);
        for img in images {
            assert_eq!(img.nvars(), m);
            assert!(!img.has_ell(), "substitution images must be ell-free");
        }
        let n = poly_substitute(&self.num, images, m);
        let d = poly_substitute(&self.den, images, m);
        if d.is_zero() {
            return Err(ClassicalError::DivisionByZero);
        }
        Ok(n.div(&d)?.with_ell(self.ell))
    }
}

fn poly_substitute(p: &MPoly, images: &[RatExpr], m: usize) -> RatExpr {
    let mut maxe = vec![0u32; p.nvars()];
    for (e, _) in p.terms() {
        for (i, &x) in e.iter().enumerate() {
            maxe[i] = maxe[i].max(x);
        }
    }
    let ladders: Vec<Vec<RatExpr>> = images
        .iter()
        .enumerate()
        .map(|(i, img)| {
            let mut l = vec![RatExpr::one(m)];
            for k in 1..=maxe[i] as usize {
                let next = l[k - 1].mul(img);
                l.push(next);
            }
            l
        })
        .collect();
    let mut acc = RatExpr::zero(m);
    for (e, c) in p.terms() {
        let mut t = RatExpr::constant(m, c.clone());
        for (i, &x) in e.iter().enumerate() {
            if x > 0 {
                t = t.mul(&ladders[i][x as usize]);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

fn fmt_poly(p: &MPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (idx, (exps, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        if idx == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push(if neg { '-' } else { '+' });
        }
        let abs = c.abs();
        let factors: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("Z{}", i + 1)
                } else {
                    format!("Z{}^{}", i + 1, e)
                }
            })
            .collect();
        if factors.is_empty() {
            s.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                s.push_str(&abs.to_string());
                s.push('*');
            }
            s.push_str(&factors.join("*"));
        }
    }
    s
}

impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ell && self.num.is_one() && self.den.is_one() {
            return write!(f, "l");
        }
        let body = if self.den.is_one() {
            fmt_poly(&self.num)
        } else {
            format!("({})/({})", fmt_poly(&self.num), fmt_poly(&self.den))
        };
        if self.ell {
            if self.den.is_one() && self.num.num_terms() > 1 {
                write!(f, "l*({body})")
            } else {
                write!(f, "l*{body}")
            }
        } else {
            write!(f, "{body}")
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Gen(usize),
    Ell,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>, ClassicalError> {
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = s[start..i]
                    .parse()
                    .map_err(|_| ClassicalError::Parse(format!("bad integer at byte {start}")))?;
                out.push(Token::Int(v));
            }
            'Z' => {
                i += 1;
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(ClassicalError::Parse("generator name needs an index".into()));
                }
                let idx: usize = s[start..i]
                    .parse()
                    .map_err(|_| ClassicalError::Parse("bad generator index".into()))?;
                if idx == 0 {
                    return Err(ClassicalError::Parse("generator indices start at Z1".into()));
                }
                out.push(Token::Gen(idx - 1));
            }
            'l' => {
                out.push(Token::Ell);
                i += 1;
            }
            _ => {
                return Err(ClassicalError::Parse(format!("unexpected character {c:?}")));
            }
        }
    }
    Ok(out)
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

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn checked_mul(a: &RatExpr, b: &RatExpr) -> Result<RatExpr, ClassicalError> {
        if a.has_ell() && b.has_ell() {
            return Err(ClassicalError::Parse("product has ell degree 2".into()));
        }
        Ok(a.mul(b))
    }

    fn checked_add(a: &RatExpr, b: &RatExpr) -> Result<RatExpr, ClassicalError> {
        if !a.is_zero() && !b.is_zero() && a.has_ell() != b.has_ell() {
            return Err(ClassicalError::Parse("sum mixes ell degrees".into()));
        }
        Ok(a.add(b))
    }

    fn expr(&mut self) -> Result<RatExpr, ClassicalError> {
        let mut negate = false;
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = Self::checked_add(&acc, &t)?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = Self::checked_add(&acc, &t.neg())?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatExpr, ClassicalError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = Self::checked_mul(&acc, &f)?;
                }
                Some(Token::Slash) => {
                    self.bump();
                    let f = self.factor()?;
                    if f.is_zero() {
                        return Err(ClassicalError::Parse("division by zero".into()));
                    }
                    if f.has_ell() {
                        return Err(ClassicalError::Parse("cannot divide by ell".into()));
                    }
                    acc = acc.div(&f)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatExpr, ClassicalError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.bump();
            let mut sign = 1i64;
            if matches!(self.peek(), Some(Token::Minus)) {
                self.bump();
                sign = -1;
            }
            match self.bump() {
                Some(Token::Int(v)) => {
                    let e: i64 = v
                        .try_into()
                        .map_err(|_| ClassicalError::Parse("exponent out of range".into()))?;
                    if base.has_ell() {
                        return Err(ClassicalError::Parse("cannot raise ell to a power".into()));
                    }
                    if base.is_zero() && sign * e < 0 {
                        return Err(ClassicalError::Parse("division by zero".into()));
                    }
                    base.pow(sign * e)
                }
                _ => Err(ClassicalError::Parse("expected integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RatExpr, ClassicalError> {
        match self.bump() {
            Some(Token::Int(v)) => Ok(RatExpr::constant(
                self.nvars,
                BigRational::from_integer(v),
            )),
            Some(Token::Gen(i)) => {
                if i >= self.nvars {
                    return Err(ClassicalError::Parse(format!(
                        "generator Z{} exceeds rank {}",
                        i + 1,
                        self.nvars
                    )));
                }
                Ok(RatExpr::gen(self.nvars, i))
            }
            Some(Token::Ell) => Ok(RatExpr::one(self.nvars).with_ell(true)),
            Some(Token::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(e),
                    _ => Err(ClassicalError::Parse("missing closing parenthesis".into())),
                }
            }
            other => Err(ClassicalError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

impl RatExpr {
    /// Parse the canonical string form in a context of `nvars` generators.
    pub fn parse(s: &str, nvars: usize) -> Result<Self, ClassicalError> {
        let tokens = tokenize(s)?;
        let mut p = Parser {
            tokens: &tokens,
            pos: 0,
            nvars,
        };
        let e = p.expr()?;
        if p.pos != tokens.len() {
            return Err(ClassicalError::Parse("trailing input".into()));
        }
        Ok(e)
    }
}

impl FromStr for RatExpr {
    type Err = ClassicalError;

    /// Parse with the rank inferred as the largest generator index present.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens = tokenize(s)?;
        let nvars = tokens
            .iter()
            .filter_map(|t| match t {
                Token::Gen(i) => Some(i + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        let mut p = Parser {
            tokens: &tokens,
            pos: 0,
            nvars,
        };
        let e = p.expr()?;
        if p.pos != tokens.len() {
            return Err(ClassicalError::Parse("trailing input".into()));
        }
        Ok(e)
    }
}

impl Serialize for RatExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RatExpr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}
