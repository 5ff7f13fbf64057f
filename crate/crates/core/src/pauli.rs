//! Pauli strings, the Pauli-to-binary map and symplectic products.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::gf2::BinMatrix;
use crate::algebra::{Gf4, Gf4Matrix, Gf4Poly, LaurentPoly, RationalFn, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_zx(z: u8, x: u8) -> Self {
        match (z & 1, x & 1) {
            (0, 0) => Pauli::I,
            (0, 1) => Pauli::X,
            (1, 1) => Pauli::Y,
            _ => Pauli::Z,
        }
    }

    pub fn zx(self) -> (u8, u8) {
        match self {
            Pauli::I => (0, 0),
            Pauli::X => (0, 1),
            Pauli::Y => (1, 1),
            Pauli::Z => (1, 0),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Phase-free tensor product of single-qubit Paulis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PauliString(pub Vec<Pauli>);

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString(vec![Pauli::I; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|p| *p == Pauli::I)
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|p| **p != Pauli::I).count()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|p| p.letter()).collect();
        write!(f, "{s}")
    }
}

impl FromStr for PauliString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .trim()
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'I' | 'i' => Ok(Pauli::I),
                'X' | 'x' => Ok(Pauli::X),
                'Y' | 'y' => Ok(Pauli::Y),
                'Z' | 'z' => Ok(Pauli::Z),
                _ => Err(Error::Parse(format!("bad Pauli letter '{c}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if letters.is_empty() {
            return Err(Error::Parse("empty Pauli string".into()));
        }
        Ok(PauliString(letters))
    }
}

/// Binary image (z | x) of a Pauli string.
impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SymplecticVector {
    pub z: Vec<u8>,
    pub x: Vec<u8>,
}

impl SymplecticVector {
    pub fn zeros(n: usize) -> Self {
        SymplecticVector { z: vec![0; n], x: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn add(&self, o: &Self) -> Self {
        SymplecticVector {
            z: self.z.iter().zip(&o.z).map(|(a, b)| a ^ b).collect(),
            x: self.x.iter().zip(&o.x).map(|(a, b)| a ^ b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.z.iter().chain(&self.x).all(|b| *b == 0)
    }

    /// Concatenated [z | x] bits.
    pub fn bits(&self) -> Vec<u8> {
        self.z.iter().chain(&self.x).copied().collect()
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let n = bits.len() / 2;
        SymplecticVector { z: bits[..n].to_vec(), x: bits[n..].to_vec() }
    }
}

impl fmt::Display for SymplecticVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z: String = self.z.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect();
        let x: String = self.x.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect();
        write!(f, "{z}|{x}")
    }
}

pub fn p2b_forward(p: &PauliString) -> SymplecticVector {
    let (z, x) = p.0.iter().map(|q| q.zx()).unzip();
    SymplecticVector { z, x }
}

pub fn p2b_inverse(v: &SymplecticVector) -> PauliString {
    PauliString(v.z.iter().zip(&v.x).map(|(z, x)| Pauli::from_zx(*z, *x)).collect())
}

pub fn symplectic_product(u: &SymplecticVector, v: &SymplecticVector) -> Result<u8> {
    if u.n() != v.n() {
        return Err(Error::DimensionMismatch(format!("lengths {} and {}", u.n(), v.n())));
    }
    let s = (0..u.n()).fold(0u8, |acc, i| acc ^ (u.z[i] & v.x[i]) ^ (u.x[i] & v.z[i]));
    Ok(s)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BlockCheckMatrix {
    pub n: usize,
    pub rows: Vec<SymplecticVector>,
}

impl BlockCheckMatrix {
    pub fn new(n: usize, rows: Vec<SymplecticVector>) -> Result<Self> {
        if rows.iter().any(|r| r.z.len() != n || r.x.len() != n) {
            return Err(Error::DimensionMismatch("row length differs from n".into()));
        }
        Ok(BlockCheckMatrix { n, rows })
    }

    pub fn from_paulis(strs: &[&str]) -> Result<Self> {
        let rows: Vec<SymplecticVector> =
            strs.iter().map(|s| s.parse().map(|p| p2b_forward(&p))).collect::<Result<_>>()?;
        let n = rows.first().map_or(0, |r| r.n());
        Self::new(n, rows)
    }

    /// Builds from [H_Z | H_X].
    pub fn from_parts(hz: &BinMatrix, hx: &BinMatrix) -> Result<Self> {
        if hz.len() != hx.len() {
            return Err(Error::DimensionMismatch("H_Z and H_X row counts differ".into()));
        }
        let n = hz.first().map_or(0, |r| r.len());
        let rows = hz.iter().zip(hx).map(|(z, x)| SymplecticVector { z: z.clone(), x: x.clone() }).collect();
        Self::new(n, rows)
    }

    pub fn hz(&self) -> BinMatrix {
        self.rows.iter().map(|r| r.z.clone()).collect()
    }

    pub fn hx(&self) -> BinMatrix {
        self.rows.iter().map(|r| r.x.clone()).collect()
    }

    pub fn paulis(&self) -> Vec<PauliString> {
        self.rows.iter().map(p2b_inverse).collect()
    }

    pub fn bits(&self) -> BinMatrix {
        self.rows.iter().map(|r| r.bits()).collect()
    }

    /// Accepts either Pauli strings or binary rows "z... | x..." one per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            if let Some((z, x)) = line.split_once('|') {
                let bits = |s: &str| -> Result<Vec<u8>> {
                    s.chars()
                        .filter(|c| !c.is_whitespace() && *c != ',')
                        .map(|c| match c {
                            '0' => Ok(0),
                            '1' => Ok(1),
                            _ => Err(Error::Parse(format!("bad binary digit '{c}'"))),
                        })
                        .collect()
                };
                rows.push(SymplecticVector { z: bits(z)?, x: bits(x)? });
            } else {
                rows.push(p2b_forward(&line.parse()?));
            }
        }
        let n = rows.first().map_or(0, |r: &SymplecticVector| r.n());
        if rows.iter().any(|r| r.z.len() != n || r.x.len() != n) {
            return Err(Error::Parse("rows have different lengths".into()));
        }
        Ok(BlockCheckMatrix { n, rows })
    }
}

impl fmt::Display for BlockCheckMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{}", p2b_inverse(r))?;
        }
        Ok(())
    }
}

/// [Omega]_ij = h_i . h_j over GF(2).
pub fn symplectic_matrix(h: &BlockCheckMatrix) -> BinMatrix {
    h.rows.iter().map(|u| h.rows.iter().map(|v| symplectic_product(u, v).unwrap()).collect()).collect()
}

/// gamma([w H; wbar H]).
pub fn gf4_import_block(h: &Gf4Matrix) -> BlockCheckMatrix {
    let mut rows = Vec::new();
    for s in [Gf4::W, Gf4::Wb] {
        for i in 0..h.rows() {
            let (z, x) = (0..h.cols()).map(|j| s.times(h.get(i, j)).to_zx()).unzip();
            rows.push(SymplecticVector { z, x });
        }
    }
    BlockCheckMatrix { n: h.cols(), rows }
}

/// Convolutional generator [z(D) | x(D)] over a frame of n qubits.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct ConvGenerator<T = LaurentPoly> {
    pub n: usize,
    pub z: Vec<T>,
    pub x: Vec<T>,
}

impl<T: Ring> ConvGenerator<T> {
    pub fn new(z: Vec<T>, x: Vec<T>) -> Result<Self> {
        if z.len() != x.len() {
            return Err(Error::DimensionMismatch("z and x parts differ in length".into()));
        }
        Ok(ConvGenerator { n: z.len(), z, x })
    }

    pub fn zero(n: usize) -> Self {
        ConvGenerator { n, z: vec![T::zero(); n], x: vec![T::zero(); n] }
    }

    pub fn is_zero(&self) -> bool {
        self.z.iter().chain(&self.x).all(|e| e.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        ConvGenerator {
            n: self.n,
            z: self.z.iter().zip(&o.z).map(|(a, b)| a.plus(b)).collect(),
            x: self.x.iter().zip(&o.x).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn scale(&self, f: &T) -> Self {
        ConvGenerator {
            n: self.n,
            z: self.z.iter().map(|e| f.times(e)).collect(),
            x: self.x.iter().map(|e| f.times(e)).collect(),
        }
    }

    /// Entries as one row [z_1 .. z_n, x_1 .. x_n].
    pub fn entries(&self) -> Vec<T> {
        self.z.iter().chain(&self.x).cloned().collect()
    }

    pub fn from_entries(e: Vec<T>) -> Self {
        let n = e.len() / 2;
        let x = e[n..].to_vec();
        let mut z = e;
        z.truncate(n);
        ConvGenerator { n, z, x }
    }
}

fn parse_generator<T: Ring + FromStr<Err = Error>>(line: &str) -> Result<ConvGenerator<T>> {
    let (z, x) = line.split_once('|').ok_or_else(|| Error::Parse(format!("missing '|' in generator '{line}'")))?;
    let parse =
        |s: &str| -> Result<Vec<T>> { s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect() };
    ConvGenerator::new(parse(z)?, parse(x)?)
}

impl ConvGenerator<RationalFn> {
    /// Like `parse_row`, with entries written as polynomials or "(num)/(den)".
    pub fn parse_rational_row(line: &str) -> Result<Self> {
        parse_generator(line)
    }
}

impl ConvGenerator<LaurentPoly> {
    pub fn parse_row(line: &str) -> Result<Self> {
        parse_generator(line)
    }

    pub fn shift(&self, k: i64) -> Self {
        ConvGenerator {
            n: self.n,
            z: self.z.iter().map(|e| e.shift(k)).collect(),
            x: self.x.iter().map(|e| e.shift(k)).collect(),
        }
    }

    /// Frames [lo, hi] spanned by the nonzero entries.
    pub fn frame_range(&self) -> Option<(i64, i64)> {
        let lo = self.z.iter().chain(&self.x).filter_map(|e| e.del()).min()?;
        let hi = self.z.iter().chain(&self.x).filter_map(|e| e.deg()).max()?;
        Some((lo, hi))
    }

    /// The n-qubit Pauli acting on frame t.
    pub fn frame(&self, t: i64) -> PauliString {
        PauliString((0..self.n).map(|i| Pauli::from_zx(self.z[i].coeff(t) as u8, self.x[i].coeff(t) as u8)).collect())
    }

    pub fn from_frames(start: i64, frames: &[PauliString]) -> Result<Self> {
        let n = frames.first().map_or(0, |f| f.len());
        if frames.iter().any(|f| f.len() != n) {
            return Err(Error::DimensionMismatch("frames differ in size".into()));
        }
        let mut z = vec![Vec::new(); n];
        let mut x = vec![Vec::new(); n];
        for (t, f) in frames.iter().enumerate() {
            for (i, p) in f.0.iter().enumerate() {
                let (zb, xb) = p.zx();
                if zb == 1 {
                    z[i].push(start + t as i64);
                }
                if xb == 1 {
                    x[i].push(start + t as i64);
                }
            }
        }
        Ok(ConvGenerator {
            n,
            z: z.into_iter().map(LaurentPoly::from_exponents).collect(),
            x: x.into_iter().map(LaurentPoly::from_exponents).collect(),
        })
    }

    /// Pauli frames from frame 0 through the last nonzero one, joined by '|'.
    pub fn pauli_frames(&self) -> String {
        let (lo, hi) = self.frame_range().unwrap_or((0, 0));
        (lo.min(0)..=hi.max(0)).map(|t| self.frame(t).to_string()).collect::<Vec<_>>().join("|")
    }
}

impl<T: Ring> fmt::Display for ConvGenerator<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z: Vec<String> = self.z.iter().map(|e| e.to_string()).collect();
        let x: Vec<String> = self.x.iter().map(|e| e.to_string()).collect();
        write!(f, "{} | {}", z.join(", "), x.join(", "))
    }
}

/// Imports a quaternary convolutional row h(D) as the pair gamma(w h), gamma(wbar h).
pub fn gf4_import_conv(row: &[Gf4Poly]) -> [ConvGenerator; 2] {
    let image = |s: Gf4| {
        let (z, x) = row.iter().map(|e| e.scale(s).to_zx()).unzip();
        ConvGenerator { n: row.len(), z, x }
    };
    [image(Gf4::W), image(Gf4::Wb)]
}
