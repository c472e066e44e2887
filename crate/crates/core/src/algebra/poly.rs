use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Exponent pair of `x^x · y^y`, ordered graded-lexicographically
/// (total degree first, then the power of `x`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub const fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(self) -> u32 {
        self.x + self.y
    }

    fn divides(self, other: Monomial) -> bool {
        self.x <= other.x && self.y <= other.y
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Bivariate polynomial with rational coefficients. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn coeff(&self, x: u32, y: u32) -> Rational {
        self.terms.get(&Monomial::new(x, y)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in descending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> {
        self.terms.iter().rev().map(|(m, c)| (*m, c))
    }

    pub fn leading(&self) -> Option<(Monomial, &Rational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    fn mul_term(&self, m: Monomial, s: &Rational) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, c)| (Monomial::new(k.x + m.x, k.y + m.y), c * s)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::constant(Rational::one());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading()?;
        let mut rest = self.clone();
        let mut quotient = Poly::zero();
        while let Some((m, c)) = rest.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = Monomial::new(m.x - lm.x, m.y - lm.y);
            let qc = c / lc;
            rest = &rest - &divisor.mul_term(qm, &qc);
            quotient.add_term(qm, qc);
        }
        Some(quotient)
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| c * num_traits::pow(x.clone(), m.x as usize) * num_traits::pow(y.clone(), m.y as usize))
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| c.to_f64().unwrap_or(f64::NAN) * x.powi(m.x as i32) * y.powi(m.y as i32))
            .sum()
    }

    /// `|p(x, y)| / Σ|c|·|x|^i·|y|^j`: the residual relative to the size of
    /// the individual terms.
    pub fn scaled_residual(&self, x: f64, y: f64) -> f64 {
        let mut value = 0.0;
        let mut scale = 0.0;
        for (m, c) in &self.terms {
            let t = c.to_f64().unwrap_or(f64::NAN) * x.powi(m.x as i32) * y.powi(m.y as i32);
            value += t;
            scale += t.abs();
        }
        if scale == 0.0 {
            0.0
        } else {
            value.abs() / scale
        }
    }

    /// Integer coefficients with content 1 and a positive leading
    /// coefficient. The zero polynomial maps to itself.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lcm = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<(Monomial, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| (*m, (c * Rational::from_integer(lcm.clone())).to_integer()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
        let lead_negative = self.leading().map(|(_, c)| c.is_negative()).unwrap_or(false);
        let divisor = if lead_negative { -content } else { content };
        Poly {
            terms: ints.into_iter().map(|(m, c)| (m, Rational::from_integer(c / &divisor))).collect(),
        }
    }

    /// Parses the text form `i,j:c;i,j:c;...`. Terms may appear in any order;
    /// repeated monomials are rejected.
    pub fn parse(s: &str) -> Result<Poly> {
        let mut p = Poly::zero();
        let mut seen = std::collections::HashSet::new();
        for raw in s.split(';') {
            let part = raw.trim();
            if part.is_empty() {
                continue;
            }
            let (exps, coeff) =
                part.split_once(':').ok_or_else(|| Error::Parse(format!("term {part:?} lacks ':'")))?;
            let (i, j) =
                exps.split_once(',').ok_or_else(|| Error::Parse(format!("term {part:?} lacks ','")))?;
            let parse_exp = |e: &str| {
                e.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {part:?}")))
            };
            let m = Monomial::new(parse_exp(i)?, parse_exp(j)?);
            if !seen.insert(m) {
                return Err(Error::Parse(format!("monomial {},{} repeated", m.x, m.y)));
            }
            p.add_term(m, parse_rational(coeff)?);
        }
        Ok(p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                f.write_str(";")?;
            }
            first = false;
            write!(f, "{},{}:{}", m.x, m.y, format_rational(c))?;
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(Monomial::new(ma.x + mb.x, ma.y + mb.y), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}
