use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{poly_gcd, LaurentPoly};
use crate::error::{Error, Result};

/// Element of GF(2)(D) kept in lowest terms with a delay-free denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        rational_reduce(num, den)
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFn { num: p, den: LaurentPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn monomial(e: i64) -> Self {
        Self::from_poly(LaurentPoly::monomial(e))
    }

    /// 1/p for nonzero p.
    pub fn recip_of(p: &LaurentPoly) -> Result<Self> {
        rational_reduce(LaurentPoly::one(), p.clone())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_poly(&self) -> Option<LaurentPoly> {
        self.is_poly().then(|| self.num.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return rational_reduce(self.num.add(&o.num), self.den.clone()).unwrap();
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        rational_reduce(num, self.den.mul(&o.den)).unwrap()
    }

    pub fn mul(&self, o: &Self) -> Self {
        rational_reduce(self.num.mul(&o.num), self.den.mul(&o.den)).unwrap()
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        rational_reduce(self.num.mul(p), self.den.clone()).unwrap()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(rational_reduce(self.den.clone(), self.num.clone()).unwrap())
        }
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.inv()?))
    }

    /// Time reversal D -> D^-1.
    pub fn conj(&self) -> Self {
        rational_reduce(self.num.conj(), self.den.conj()).unwrap()
    }

    pub fn shift(&self, k: i64) -> Self {
        RationalFn { num: self.num.shift(k), den: self.den.clone() }
    }

    /// Power-series coefficients of the expansion in increasing powers of D, restricted to [lo, hi).
    pub fn series(&self, lo: i64, hi: i64) -> LaurentPoly {
        let Some(start) = self.num.del() else {
            return LaurentPoly::zero();
        };
        if hi <= start {
            return LaurentPoly::zero();
        }
        let len = (hi - start) as usize;
        // inverse of the delay-free denominator as a power series
        let mut inv = vec![false; len];
        inv[0] = true;
        for k in 1..len {
            let mut bit = false;
            for &e in self.den.terms() {
                let e = e as usize;
                if e >= 1 && e <= k && inv[k - e] {
                    bit = !bit;
                }
            }
            inv[k] = bit;
        }
        let inv_poly = LaurentPoly::from_exponents((0..len).filter(|&k| inv[k]).map(|k| k as i64));
        self.num.mul(&inv_poly).truncate(lo.max(start), hi)
    }
}

/// Canonical form: denominator delay-free with constant term one and coprime to the numerator.
pub fn rational_reduce(num: LaurentPoly, den: LaurentPoly) -> Result<RationalFn> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if num.is_zero() {
        return Ok(RationalFn::zero());
    }
    let (dshift, den0) = den.delay_free();
    let num = num.shift(-dshift);
    let g = poly_gcd(&num, &den0)?;
    if g.is_one() {
        return Ok(RationalFn { num, den: den0 });
    }
    let num = num.exact_div(&g).expect("gcd divides numerator");
    let den = den0.exact_div(&g).expect("gcd divides denominator").delay_free().1;
    Ok(RationalFn { num, den })
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for RationalFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.find(")/(") {
            Some(pos) => {
                let num: LaurentPoly = s[..=pos].parse()?;
                let den: LaurentPoly = s[pos + 2..].parse()?;
                rational_reduce(num, den)
            }
            None => match s.split_once('/') {
                Some((a, b)) => rational_reduce(a.parse()?, b.parse()?),
                None => Ok(RationalFn::from_poly(s.parse()?)),
            },
        }
    }
}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> Self {
        RationalFn::from_poly(p)
    }
}

impl Serialize for RationalFn {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RationalFn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
