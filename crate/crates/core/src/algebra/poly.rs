use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Laurent polynomial over GF(2): the set of exponents carrying coefficient one.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        LaurentPoly { terms: vec![0] }
    }

    pub fn monomial(e: i64) -> Self {
        LaurentPoly { terms: vec![e] }
    }

    /// Builds a polynomial from exponents; repeated exponents cancel in pairs.
    pub fn from_exponents<I: IntoIterator<Item = i64>>(exps: I) -> Self {
        let mut v: Vec<i64> = exps.into_iter().collect();
        v.sort_unstable();
        let mut terms = Vec::with_capacity(v.len());
        let mut i = 0;
        while i < v.len() {
            let mut j = i;
            while j < v.len() && v[j] == v[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                terms.push(v[i]);
            }
            i = j;
        }
        LaurentPoly { terms }
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms == [0]
    }

    /// Units of GF(2)[D, D^-1] are exactly the monomials.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn weight(&self) -> usize {
        self.terms.len()
    }

    /// Lowest exponent.
    pub fn del(&self) -> Option<i64> {
        self.terms.first().copied()
    }

    /// Highest exponent.
    pub fn deg(&self) -> Option<i64> {
        self.terms.last().copied()
    }

    /// deg - del; the Euclidean norm of the Laurent ring.
    pub fn span(&self) -> Option<i64> {
        Some(self.deg()? - self.del()?)
    }

    pub fn coeff(&self, e: i64) -> bool {
        self.terms.binary_search(&e).is_ok()
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|e| e + k).collect() }
    }

    /// Time reversal D -> D^-1.
    pub fn conj(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().rev().map(|e| -e).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        LaurentPoly { terms: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        if self.is_monomial() {
            return other.shift(self.terms[0]);
        }
        if other.is_monomial() {
            return self.shift(other.terms[0]);
        }
        let mut acc = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                acc.push(a + b);
            }
        }
        LaurentPoly::from_exponents(acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Splits p = D^k q with q delay-free (constant term one). Zero maps to (0, 0).
    pub fn delay_free(&self) -> (i64, LaurentPoly) {
        match self.del() {
            None => (0, LaurentPoly::zero()),
            Some(d) => (d, self.shift(-d)),
        }
    }

    /// D^deg p(D^-1) for a delay-free p.
    pub fn reciprocal(&self) -> Self {
        match self.deg() {
            None => LaurentPoly::zero(),
            Some(d) => self.conj().shift(d),
        }
    }

    /// Ordinary division of polynomials with non-negative exponents.
    fn poly_divrem(a: &Self, b: &Self) -> (Self, Self) {
        let db = b.deg().expect("division by zero polynomial");
        let mut r = a.clone();
        let mut q = Vec::new();
        while let Some(dr) = r.deg() {
            if dr < db {
                break;
            }
            let s = dr - db;
            q.push(s);
            r = r.add(&b.shift(s));
        }
        (LaurentPoly::from_exponents(q), r)
    }

    /// Euclidean division in GF(2)[D, D^-1]: self = q*d + r with r = 0 or span(r) < span(d).
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return (LaurentPoly::zero(), LaurentPoly::zero());
        }
        let (alpha, a0) = self.delay_free();
        let (beta, b0) = d.delay_free();
        let (q0, r0) = Self::poly_divrem(&a0, &b0);
        (q0.shift(alpha - beta), r0.shift(alpha))
    }

    /// Exact quotient if `d` divides `self` in the Laurent ring.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.divrem(self).1.is_zero()
    }

    /// Keeps only terms with exponent in [lo, hi).
    pub fn truncate(&self, lo: i64, hi: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().copied().filter(|e| *e >= lo && *e < hi).collect() }
    }

    /// Terms with non-negative exponent.
    pub fn positive_part(&self) -> Self {
        self.truncate(0, i64::MAX)
    }

    /// True when p(D) = p(D^-1).
    pub fn is_symmetric(&self) -> bool {
        *self == self.conj()
    }
}

/// Greatest common divisor, normalized to be delay-free.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let mut x = a.delay_free().1;
    let mut y = b.delay_free().1;
    while !y.is_zero() {
        let r = x.divrem(&y).1;
        x = y;
        y = r.delay_free().1;
    }
    Ok(x.delay_free().1)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&e| match e {
                0 => "1".to_string(),
                1 => "D".to_string(),
                _ => format!("D^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut exps = Vec::new();
        for term in s.split('+') {
            let e = match term {
                "0" => continue,
                "1" => 0,
                "D" => 1,
                t if t.starts_with("D^") => {
                    let k = t[2..].trim_start_matches('{').trim_end_matches('}');
                    k.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in term '{t}'")))?
                }
                t => return Err(Error::Parse(format!("bad polynomial term '{t}'"))),
            };
            exps.push(e);
        }
        Ok(LaurentPoly::from_exponents(exps))
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::add(self, rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("D^-1+1+D^2").to_string(), "D^-1+1+D^2");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("D+D"), LaurentPoly::zero());
        assert!("D^x".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn square_is_frobenius() {
        assert_eq!(p("1+D").mul(&p("1+D")), p("1+D^2"));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p("1+D"), &p("1+D")).unwrap(), p("1+D"));
        assert_eq!(poly_gcd(&p("1+D^2"), &p("1+D+D^2")).unwrap(), p("1"));
        assert_eq!(poly_gcd(&p("D^-1+D"), &p("1+D^2")).unwrap(), p("1+D^2"));
        assert_eq!(poly_gcd(&LaurentPoly::zero(), &LaurentPoly::zero()), Err(Error::BothZero));
    }

    #[test]
    fn divrem_reduces_span() {
        let a = p("D^-2+D+D^5");
        let d = p("D+D^3");
        let (q, r) = a.divrem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.is_zero() || r.span().unwrap() < d.span().unwrap());
    }

    #[test]
    fn conj_and_reciprocal() {
        assert_eq!(p("1+D+D^3").conj(), p("1+D^-1+D^-3"));
        assert_eq!(p("1+D+D^3").reciprocal(), p("1+D^2+D^3"));
        assert!(p("D^-1+D").is_symmetric());
    }
}
