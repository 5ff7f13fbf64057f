use std::fmt;
use std::str::FromStr;

use super::matrix::PolyMatrix;
use super::poly::LaurentPoly;
use super::{Field, Ring};
use crate::error::{Error, Result};

/// GF(4) = {0, 1, w, w^2 = wbar} with w^2 = w + 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Gf4 {
    Zero,
    One,
    W,
    Wb,
}

impl Gf4 {
    /// (a, b) with x = a + b*w
    fn coords(self) -> (u8, u8) {
        match self {
            Gf4::Zero => (0, 0),
            Gf4::One => (1, 0),
            Gf4::W => (0, 1),
            Gf4::Wb => (1, 1),
        }
    }

    fn from_coords(a: u8, b: u8) -> Self {
        match (a & 1, b & 1) {
            (0, 0) => Gf4::Zero,
            (1, 0) => Gf4::One,
            (0, 1) => Gf4::W,
            _ => Gf4::Wb,
        }
    }

    /// Symplectic image (z | x): 0 -> I, w -> X, 1 -> Y, wbar -> Z.
    pub fn to_zx(self) -> (u8, u8) {
        match self {
            Gf4::Zero => (0, 0),
            Gf4::W => (0, 1),
            Gf4::One => (1, 1),
            Gf4::Wb => (1, 0),
        }
    }

    /// Trace x + xbar, an element of GF(2).
    pub fn trace(self) -> u8 {
        let t = self.plus(&self.conj());
        u8::from(t == Gf4::One)
    }
}

impl fmt::Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Gf4::Zero => "0",
            Gf4::One => "1",
            Gf4::W => "w",
            Gf4::Wb => "W",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Gf4 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(Gf4::Zero),
            "1" => Ok(Gf4::One),
            "w" | "ω" => Ok(Gf4::W),
            "W" | "wb" | "ω̄" => Ok(Gf4::Wb),
            t => Err(Error::Parse(format!("bad GF(4) element '{t}'"))),
        }
    }
}

impl Ring for Gf4 {
    fn zero() -> Self {
        Gf4::Zero
    }
    fn one() -> Self {
        Gf4::One
    }
    fn is_zero(&self) -> bool {
        *self == Gf4::Zero
    }
    fn plus(&self, o: &Self) -> Self {
        let (a, b) = self.coords();
        let (c, d) = o.coords();
        Gf4::from_coords(a ^ c, b ^ d)
    }
    fn times(&self, o: &Self) -> Self {
        let (a, b) = self.coords();
        let (c, d) = o.coords();
        // (a + bw)(c + dw) = ac + bd + (ad + bc + bd) w
        Gf4::from_coords((a & c) ^ (b & d), (a & d) ^ (b & c) ^ (b & d))
    }
    fn conj(&self) -> Self {
        match self {
            Gf4::W => Gf4::Wb,
            Gf4::Wb => Gf4::W,
            x => *x,
        }
    }
}

impl Field for Gf4 {
    fn inv(&self) -> Option<Self> {
        match self {
            Gf4::Zero => None,
            Gf4::One => Some(Gf4::One),
            Gf4::W => Some(Gf4::Wb),
            Gf4::Wb => Some(Gf4::W),
        }
    }
}

pub type Gf4Matrix = PolyMatrix<Gf4>;

/// Parses whitespace-separated rows of GF(4) symbols (0, 1, w, W).
pub fn parse_gf4_matrix(text: &str) -> Result<Gf4Matrix> {
    let rows: Vec<Vec<Gf4>> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(str::parse).collect())
        .collect::<Result<_>>()?;
    PolyMatrix::from_rows(rows)
}

/// Element a(D) + b(D) w of GF(4)[D, D^-1].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf4Poly {
    pub a: LaurentPoly,
    pub b: LaurentPoly,
}

impl Gf4Poly {
    pub fn new(a: LaurentPoly, b: LaurentPoly) -> Self {
        Gf4Poly { a, b }
    }

    pub fn scale(&self, s: Gf4) -> Self {
        match s {
            Gf4::Zero => Gf4Poly::zero(),
            Gf4::One => self.clone(),
            // w(a + bw) = b + (a + b) w
            Gf4::W => Gf4Poly::new(self.b.clone(), self.a.add(&self.b)),
            // wbar(a + bw) = (a + b) + a w
            Gf4::Wb => Gf4Poly::new(self.a.add(&self.b), self.a.clone()),
        }
    }

    /// Symplectic image (z | x) of each coefficient: z = a, x = a + b.
    pub fn to_zx(&self) -> (LaurentPoly, LaurentPoly) {
        (self.a.clone(), self.a.add(&self.b))
    }
}

impl fmt::Display for Gf4Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let lo = self.a.del().into_iter().chain(self.b.del()).min();
        let hi = self.a.deg().into_iter().chain(self.b.deg()).max();
        if let (Some(lo), Some(hi)) = (lo, hi) {
            for e in lo..=hi {
                let c = Gf4::from_coords(self.a.coeff(e) as u8, self.b.coeff(e) as u8);
                if c == Gf4::Zero {
                    continue;
                }
                let mono = match e {
                    0 => String::new(),
                    1 => "D".to_string(),
                    _ => format!("D^{e}"),
                };
                parts.push(match (c, mono.is_empty()) {
                    (Gf4::One, true) => "1".to_string(),
                    (Gf4::One, false) => mono,
                    (c, _) => format!("{c}{mono}"),
                });
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

impl FromStr for Gf4Poly {
    type Err = Error;
    /// Terms joined by '+'; each term is an optional coefficient w or W followed by a monomial.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = Gf4Poly::zero();
        for term in s.split('+') {
            if term == "0" {
                continue;
            }
            let (coef, rest) = match term.chars().next() {
                Some('w') => (Gf4::W, &term[1..]),
                Some('W') => (Gf4::Wb, &term[1..]),
                _ => (Gf4::One, term),
            };
            let rest = rest.trim_start_matches('*');
            let mono: LaurentPoly = if rest.is_empty() { LaurentPoly::one() } else { rest.parse()? };
            out = out.plus(&Gf4Poly::new(mono, LaurentPoly::zero()).scale(coef));
        }
        Ok(out)
    }
}

impl Ring for Gf4Poly {
    fn zero() -> Self {
        Gf4Poly::new(LaurentPoly::zero(), LaurentPoly::zero())
    }
    fn one() -> Self {
        Gf4Poly::new(LaurentPoly::one(), LaurentPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        Gf4Poly::new(self.a.add(&o.a), self.b.add(&o.b))
    }
    fn times(&self, o: &Self) -> Self {
        let ac = self.a.mul(&o.a);
        let bd = self.b.mul(&o.b);
        let ad = self.a.mul(&o.b);
        let bc = self.b.mul(&o.a);
        Gf4Poly::new(ac.add(&bd), ad.add(&bc).add(&bd))
    }
    /// Field conjugation together with time reversal.
    fn conj(&self) -> Self {
        Gf4Poly::new(self.a.add(&self.b).conj(), self.b.conj())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_exhaustive() {
        let all = [Gf4::Zero, Gf4::One, Gf4::W, Gf4::Wb];
        assert_eq!(Gf4::W.times(&Gf4::W), Gf4::Wb);
        assert_eq!(Gf4::W.times(&Gf4::Wb), Gf4::One);
        for x in all {
            for y in all {
                assert_eq!(x.times(&y), y.times(&x));
                for z in all {
                    assert_eq!(x.times(&y.plus(&z)), x.times(&y).plus(&x.times(&z)));
                }
            }
            if x != Gf4::Zero {
                assert_eq!(x.times(&x.inv().unwrap()), Gf4::One);
            }
        }
        assert_eq!(Gf4::W.trace(), 1);
        assert_eq!(Gf4::One.trace(), 0);
    }

    #[test]
    fn poly_parse_roundtrip() {
        let p: Gf4Poly = "1+WD+wD^2".parse().unwrap();
        assert_eq!(p.to_string(), "1+WD+wD^2");
        assert_eq!(p.to_string().parse::<Gf4Poly>().unwrap(), p);
    }
}
