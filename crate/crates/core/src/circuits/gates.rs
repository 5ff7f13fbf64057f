use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{LaurentPoly, RationalFn, Ring};
use crate::conv_core::ConvCheckMatrix;
use crate::error::{Error, Result};
use crate::pauli::ConvGenerator;

/// Shift-invariant Clifford operation acting on the columns of a check matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConvGate {
    /// X_j += f(D) X_i, Z_i += f(D^-1) Z_j
    Cnot {
        i: usize,
        j: usize,
        f: LaurentPoly,
    },
    H(usize),
    P(usize),
    /// Z_j += f(D) X_i, Z_i += f(D^-1) X_j
    Cphase {
        i: usize,
        j: usize,
        f: LaurentPoly,
    },
    /// Z_i += (D^k + D^-k) X_i
    CphaseSelf {
        i: usize,
        k: i64,
    },
    Swap(usize, usize),
    /// Both columns of qubit i times D^l.
    Delay {
        i: usize,
        l: i64,
    },
    /// X_i *= r(D), Z_i *= 1/r(D^-1); r must have a monomial numerator.
    Rcnot {
        i: usize,
        r: RationalFn,
    },
}

impl ConvGate {
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            ConvGate::Cnot { i, j, .. } | ConvGate::Cphase { i, j, .. } | ConvGate::Swap(i, j) => vec![*i, *j],
            ConvGate::H(i)
            | ConvGate::P(i)
            | ConvGate::CphaseSelf { i, .. }
            | ConvGate::Delay { i, .. }
            | ConvGate::Rcnot { i, .. } => vec![*i],
        }
    }

    pub fn offset(&self, k: usize) -> Self {
        self.remap(|q| q + k)
    }

    pub fn remap(&self, m: impl Fn(usize) -> usize) -> Self {
        match self.clone() {
            ConvGate::Cnot { i, j, f } => ConvGate::Cnot { i: m(i), j: m(j), f },
            ConvGate::H(i) => ConvGate::H(m(i)),
            ConvGate::P(i) => ConvGate::P(m(i)),
            ConvGate::Cphase { i, j, f } => ConvGate::Cphase { i: m(i), j: m(j), f },
            ConvGate::CphaseSelf { i, k } => ConvGate::CphaseSelf { i: m(i), k },
            ConvGate::Swap(i, j) => ConvGate::Swap(m(i), m(j)),
            ConvGate::Delay { i, l } => ConvGate::Delay { i: m(i), l },
            ConvGate::Rcnot { i, r } => ConvGate::Rcnot { i: m(i), r },
        }
    }

    pub fn is_infinite_depth(&self) -> bool {
        matches!(self, ConvGate::Rcnot { r, .. } if !r.is_poly())
    }

    /// Gates undoing this one. An RCNOT by 1/h is undone by multiplying X by h, which is
    /// emitted as H, RCNOT by the reciprocal, DELAY, H.
    pub fn inverse(&self) -> Vec<ConvGate> {
        match self {
            ConvGate::Delay { i, l } => vec![ConvGate::Delay { i: *i, l: -l }],
            ConvGate::Rcnot { i, r } => {
                // r = D^m / h with h delay-free
                let m = r.num().del().unwrap_or(0);
                let h = r.den().clone();
                let mut out = Vec::new();
                if m != 0 {
                    out.push(ConvGate::Delay { i: *i, l: -m });
                }
                if !h.is_one() {
                    let recip = RationalFn::recip_of(&h.reciprocal()).unwrap();
                    out.push(ConvGate::H(*i));
                    out.push(ConvGate::Rcnot { i: *i, r: recip });
                    out.push(ConvGate::Delay { i: *i, l: h.deg().unwrap() });
                    out.push(ConvGate::H(*i));
                }
                out
            }
            g => vec![g.clone()],
        }
    }
}

/// Inverse of a whole gate list.
pub fn invert_gates(gates: &[ConvGate]) -> Vec<ConvGate> {
    gates.iter().rev().flat_map(|g| g.inverse()).collect()
}

impl fmt::Display for ConvGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConvGate::Cnot { i, j, f: p } => write!(f, "CNOT {} {} {}", i + 1, j + 1, p),
            ConvGate::H(i) => write!(f, "H {}", i + 1),
            ConvGate::P(i) => write!(f, "P {}", i + 1),
            ConvGate::Cphase { i, j, f: p } => write!(f, "CPHASE {} {} {}", i + 1, j + 1, p),
            ConvGate::CphaseSelf { i, k } => write!(f, "CPHASESELF {} {}", i + 1, k),
            ConvGate::Swap(i, j) => write!(f, "SWAP {} {}", i + 1, j + 1),
            ConvGate::Delay { i, l } => write!(f, "DELAY {} {}", i + 1, l),
            ConvGate::Rcnot { i, r } => write!(f, "RCNOT {} ({})/({})", i + 1, r.num(), r.den()),
        }
    }
}

impl FromStr for ConvGate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let bad = || Error::Parse(format!("malformed gate '{s}'"));
        let idx = |k: usize| -> Result<usize> {
            let v: usize = parts.get(k).ok_or_else(bad)?.parse().map_err(|_| bad())?;
            v.checked_sub(1).ok_or_else(|| Error::Parse("qubit indices are 1-based".into()))
        };
        let int = |k: usize| -> Result<i64> { parts.get(k).ok_or_else(bad)?.parse().map_err(|_| bad()) };
        let rest = |k: usize| -> Result<String> {
            if parts.len() <= k {
                return Err(bad());
            }
            Ok(parts[k..].join(""))
        };
        let name = parts.first().ok_or_else(bad)?.to_ascii_uppercase();
        let g = match name.as_str() {
            "CNOT" => ConvGate::Cnot {
                i: idx(1)?,
                j: idx(2)?,
                f: if parts.len() > 3 { rest(3)?.parse()? } else { LaurentPoly::one() },
            },
            "H" => ConvGate::H(idx(1)?),
            "P" => ConvGate::P(idx(1)?),
            "CPHASE" => ConvGate::Cphase {
                i: idx(1)?,
                j: idx(2)?,
                f: if parts.len() > 3 { rest(3)?.parse()? } else { LaurentPoly::one() },
            },
            "CPHASESELF" => ConvGate::CphaseSelf { i: idx(1)?, k: int(2)? },
            "SWAP" => ConvGate::Swap(idx(1)?, idx(2)?),
            "DELAY" => ConvGate::Delay { i: idx(1)?, l: int(2)? },
            "RCNOT" => ConvGate::Rcnot { i: idx(1)?, r: rest(2)?.parse()? },
            _ => return Err(Error::Parse(format!("unknown gate '{s}'"))),
        };
        Ok(g)
    }
}

impl Serialize for ConvGate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ConvGate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn parse_gate_list(text: &str) -> Result<Vec<ConvGate>> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(str::parse).collect()
}

/// Coefficient rings a gate can act on.
pub trait GateCoeff: Ring {
    fn from_poly(p: &LaurentPoly) -> Self;
    fn mul_rational(&self, r: &RationalFn) -> Option<Self>;
}

impl GateCoeff for LaurentPoly {
    fn from_poly(p: &LaurentPoly) -> Self {
        p.clone()
    }
    fn mul_rational(&self, r: &RationalFn) -> Option<Self> {
        RationalFn::from_poly(self.clone()).mul(r).to_poly()
    }
}

impl GateCoeff for RationalFn {
    fn from_poly(p: &LaurentPoly) -> Self {
        RationalFn::from_poly(p.clone())
    }
    fn mul_rational(&self, r: &RationalFn) -> Option<Self> {
        Some(self.mul(r))
    }
}

fn check_gate(g: &ConvGate, n: usize) -> Result<()> {
    if let Some(&q) = g.qubits().iter().find(|&&q| q >= n) {
        return Err(Error::IndexOutOfRange { index: q, n });
    }
    match g {
        ConvGate::Cnot { i, j, f } | ConvGate::Cphase { i, j, f } => {
            if i == j {
                return Err(Error::InvalidParams(format!("gate '{g}' acts twice on one qubit")));
            }
            if f.is_zero() {
                return Err(Error::InvalidParams(format!("gate '{g}' has zero polynomial")));
            }
        }
        ConvGate::Swap(i, j) if i == j => {
            return Err(Error::InvalidParams(format!("gate '{g}' swaps a qubit with itself")));
        }
        ConvGate::Rcnot { r, .. } if !r.num().is_monomial() => {
            return Err(Error::NonUnitNumerator(r.to_string()));
        }
        _ => {}
    }
    Ok(())
}

pub fn apply_gate_to_row<T: GateCoeff>(row: &mut ConvGenerator<T>, g: &ConvGate) -> Result<()> {
    match g {
        ConvGate::Cnot { i, j, f } => {
            let fx = T::from_poly(f);
            let fz = T::from_poly(&f.conj());
            row.x[*j] = row.x[*j].plus(&fx.times(&row.x[*i]));
            row.z[*i] = row.z[*i].plus(&fz.times(&row.z[*j]));
        }
        ConvGate::H(i) => std::mem::swap(&mut row.z[*i], &mut row.x[*i]),
        ConvGate::P(i) => row.z[*i] = row.z[*i].plus(&row.x[*i]),
        ConvGate::Cphase { i, j, f } => {
            let a = T::from_poly(f).times(&row.x[*i]);
            let b = T::from_poly(&f.conj()).times(&row.x[*j]);
            row.z[*j] = row.z[*j].plus(&a);
            row.z[*i] = row.z[*i].plus(&b);
        }
        ConvGate::CphaseSelf { i, k } => {
            let s = T::from_poly(&LaurentPoly::from_exponents([*k, -*k]));
            row.z[*i] = row.z[*i].plus(&s.times(&row.x[*i]));
        }
        ConvGate::Swap(i, j) => {
            row.z.swap(*i, *j);
            row.x.swap(*i, *j);
        }
        ConvGate::Delay { i, l } => {
            let m = T::from_poly(&LaurentPoly::monomial(*l));
            row.z[*i] = row.z[*i].times(&m);
            row.x[*i] = row.x[*i].times(&m);
        }
        ConvGate::Rcnot { i, r } => {
            let zr = r.conj().inv().ok_or(Error::ZeroDenominator)?;
            let nonpoly = || Error::InvalidParams(format!("gate '{g}' leaves polynomial entries"));
            row.x[*i] = row.x[*i].mul_rational(r).ok_or_else(nonpoly)?;
            row.z[*i] = row.z[*i].mul_rational(&zr).ok_or_else(nonpoly)?;
        }
    }
    Ok(())
}

pub fn apply_conv_gate<T: GateCoeff>(m: &ConvCheckMatrix<T>, g: &ConvGate) -> Result<ConvCheckMatrix<T>> {
    let mut out = m.clone();
    apply_conv_gate_mut(&mut out, g)?;
    Ok(out)
}

pub fn apply_conv_gate_mut<T: GateCoeff>(m: &mut ConvCheckMatrix<T>, g: &ConvGate) -> Result<()> {
    check_gate(g, m.n)?;
    for row in &mut m.gens {
        apply_gate_to_row(row, g)?;
    }
    Ok(())
}

pub fn apply_gates<T: GateCoeff>(m: &ConvCheckMatrix<T>, gates: &[ConvGate]) -> Result<ConvCheckMatrix<T>> {
    let mut out = m.clone();
    for g in gates {
        apply_conv_gate_mut(&mut out, g)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip() {
        for s in [
            "CNOT 1 2 1+D",
            "H 3",
            "P 1",
            "CPHASE 2 1 D^-1",
            "CPHASESELF 2 3",
            "SWAP 1 4",
            "DELAY 2 -1",
            "RCNOT 3 (1)/(1+D+D^2)",
        ] {
            let g: ConvGate = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        assert!("RCNOT 1 (1+D)/(1+D^3)".parse::<ConvGate>().is_ok());
        assert!("CNOT 0 2 1".parse::<ConvGate>().is_err());
    }

    #[test]
    fn non_unit_numerator_rejected() {
        let m = ConvCheckMatrix::new(1, vec![ConvGenerator::parse_row("1 | 1").unwrap()]).unwrap().to_rational();
        let g: ConvGate = "RCNOT 1 (1+D)/(1+D+D^2)".parse().unwrap();
        assert!(matches!(apply_conv_gate(&m, &g), Err(Error::NonUnitNumerator(_))));
    }

    #[test]
    fn rcnot_inverse_restores() {
        let m = ConvCheckMatrix::new(
            2,
            vec![
                ConvGenerator::parse_row("1+D, 0 | D, 1+D^2").unwrap(),
                ConvGenerator::parse_row("0, D | 1, D^-1").unwrap(),
            ],
        )
        .unwrap()
        .to_rational();
        let g: ConvGate = "RCNOT 2 (D)/(1+D+D^3)".parse().unwrap();
        let there = apply_conv_gate(&m, &g).unwrap();
        assert_ne!(there, m);
        assert_eq!(apply_gates(&there, &g.inverse()).unwrap(), m);
    }
}
