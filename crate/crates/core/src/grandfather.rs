//! Codes that mix ebits, ancillas, gauge qubits, classical bits and information qubits.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::LaurentPoly;
use crate::circuits::{apply_gates, ConvGate};
use crate::conv_core::{in_rowspace, shifted_omega, shifted_product, syndrome_bits, ConvCheckMatrix};
use crate::error::{Error, Result};
use crate::pauli::{ConvGenerator, Pauli, PauliString};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrandfatherParams {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub r: usize,
    pub c: usize,
}

impl GrandfatherParams {
    /// Ancillas per frame, a = n - k - l - r - c.
    pub fn ancillas(&self) -> Result<usize> {
        self.n
            .checked_sub(self.k + self.l + self.r + self.c)
            .ok_or_else(|| Error::InvalidParams(format!("k+l+r+c exceeds n = {}", self.n)))
    }
}

/// Parameters plus an encoder, as read from a bundle file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrandfatherSpec {
    #[serde(flatten)]
    pub params: GrandfatherParams,
    pub encoder: Vec<ConvGate>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrandfatherCode {
    pub params: GrandfatherParams,
    pub a: usize,
    pub encoder: Vec<ConvGate>,
    /// Entanglement subgroup: c Z-type rows then c X-type rows, sender columns only.
    pub s_e: ConvCheckMatrix,
    pub s_i: ConvCheckMatrix,
    /// Gauge subgroup: r Z-type rows then r X-type rows.
    pub s_g: ConvCheckMatrix,
    pub s_c: ConvCheckMatrix,
    /// Logical Z rows then logical X rows of the information qubits.
    pub logical: ConvCheckMatrix,
    /// Measured stabilizer over the receiver's c columns followed by the sender's n.
    pub s_full: ConvCheckMatrix,
}

fn units(n: usize, cols: impl Iterator<Item = usize> + Clone, z: bool) -> Vec<ConvGenerator> {
    cols.map(|q| {
        let mut g = ConvGenerator::zero(n);
        if z {
            g.z[q] = LaurentPoly::one();
        } else {
            g.x[q] = LaurentPoly::one();
        }
        g
    })
    .collect()
}

fn both(n: usize, cols: std::ops::Range<usize>) -> Vec<ConvGenerator> {
    let mut v = units(n, cols.clone(), true);
    v.extend(units(n, cols, false));
    v
}

pub fn build_grandfather(params: GrandfatherParams, encoder: &[ConvGate]) -> Result<GrandfatherCode> {
    let a = params.ancillas()?;
    let GrandfatherParams { n, k, l, r, c } = params;
    if let Some(g) = encoder.iter().find(|g| g.is_infinite_depth()) {
        return Err(Error::InvalidParams(format!("encoder must be finite-depth, found '{g}'")));
    }
    let (e0, i0, g0, c0) = (0, c, c + a, c + a + r);
    let info0 = c0 + l;
    let groups = [
        both(n, e0..e0 + c),
        units(n, i0..i0 + a, true),
        both(n, g0..g0 + r),
        units(n, c0..c0 + l, true),
        both(n, info0..info0 + k),
    ];
    let sizes: Vec<usize> = groups.iter().map(Vec::len).collect();
    let tracked = ConvCheckMatrix::new(n, groups.concat())?;
    let encoded = apply_gates(&tracked, encoder)?;
    if shifted_omega(&tracked) != shifted_omega(&encoded) {
        return Err(Error::RelationViolated("encoder changed the shifted symplectic products".into()));
    }
    let mut rows = encoded.gens.into_iter();
    let mut take = |m: usize| ConvCheckMatrix::new(n, rows.by_ref().take(m).collect());
    let s_e = take(sizes[0])?;
    let s_i = take(sizes[1])?;
    let s_g = take(sizes[2])?;
    let s_c = take(sizes[3])?;
    let logical = take(sizes[4])?;

    let mut full = Vec::new();
    for (idx, g) in s_e.gens.iter().chain(&s_i.gens).enumerate() {
        let mut row = ConvGenerator::zero(c + n);
        row.z[c..].clone_from_slice(&g.z);
        row.x[c..].clone_from_slice(&g.x);
        if idx < c {
            row.z[idx] = LaurentPoly::one();
        } else if idx < 2 * c {
            row.x[idx - c] = LaurentPoly::one();
        }
        full.push(row);
    }
    let s_full = ConvCheckMatrix::new(c + n, full)?;
    Ok(GrandfatherCode { params, a, encoder: encoder.to_vec(), s_e, s_i, s_g, s_c, logical, s_full })
}

impl GrandfatherCode {
    /// Generators whose syndromes are measured: S_E then S_I.
    pub fn measured(&self) -> Vec<ConvGenerator> {
        self.s_e.gens.iter().chain(&self.s_i.gens).cloned().collect()
    }

    /// Generators of the passively corrected group <S_I, S_G, S_C>.
    pub fn passive(&self) -> Vec<ConvGenerator> {
        self.s_i.gens.iter().chain(&self.s_g.gens).chain(&self.s_c.gens).cloned().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyndromeEntry {
    /// e.g. "X1" or "X1Z3"
    pub label: String,
    pub error: PauliString,
    pub syndrome: Vec<u8>,
}

/// Syndromes of all errors up to some weight within one frame.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SyndromeTable {
    pub n: usize,
    pub window: usize,
    pub generators: usize,
    pub entries: Vec<SyndromeEntry>,
}

pub fn bit_string(bits: &[u8]) -> String {
    bits.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect()
}

fn combinations(pool: &[usize], w: usize) -> Vec<Vec<usize>> {
    if w == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &q) in pool.iter().enumerate() {
        for mut rest in combinations(&pool[i + 1..], w - 1) {
            rest.insert(0, q);
            out.push(rest);
        }
    }
    out
}

impl SyndromeTable {
    /// Errors are enumerated by weight, then position, then X, Y, Z; `noiseless` columns
    /// never carry errors.
    pub fn build(
        measured: &[ConvGenerator],
        n: usize,
        noiseless: &[usize],
        weight: usize,
        window: usize,
    ) -> Result<Self> {
        if weight == 0 {
            return Err(Error::InvalidParams("weight must be at least 1".into()));
        }
        let noisy: Vec<usize> = (0..n).filter(|q| !noiseless.contains(q)).collect();
        let mut entries = Vec::new();
        for w in 1..=weight.min(noisy.len()) {
            for pos in combinations(&noisy, w) {
                for mut code in 0..3usize.pow(w as u32) {
                    let mut err = PauliString::identity(n);
                    let mut label = String::new();
                    let mut kinds = Vec::new();
                    for _ in 0..w {
                        kinds.push([Pauli::X, Pauli::Y, Pauli::Z][code % 3]);
                        code /= 3;
                    }
                    kinds.reverse();
                    for (&q, &p) in pos.iter().zip(&kinds) {
                        err.0[q] = p;
                        let _ = write!(label, "{}{}", p.letter(), q + 1);
                    }
                    let e = ConvGenerator::from_frames(0, std::slice::from_ref(&err))?;
                    let syndrome = syndrome_bits(measured, &e, window)?;
                    entries.push(SyndromeEntry { label, error: err, syndrome });
                }
            }
        }
        Ok(SyndromeTable { n, window, generators: measured.len(), entries })
    }

    /// All syndromes nonzero and pairwise distinct.
    pub fn is_unique(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.entries.iter().all(|e| e.syndrome.contains(&1) && seen.insert(e.syndrome.clone()))
    }

    /// First (lowest-weight) entry with these bits.
    pub fn lookup(&self, bits: &[u8]) -> Option<&SyndromeEntry> {
        self.entries.iter().find(|e| e.syndrome == bits)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("error,syndrome_bits\n");
        for e in &self.entries {
            let _ = writeln!(s, "{},{}", e.label, bit_string(&e.syndrome));
        }
        s
    }
}

pub fn syndrome_table(code: &GrandfatherCode, weight: usize, window: usize) -> Result<SyndromeTable> {
    SyndromeTable::build(&code.measured(), code.params.n, &[], weight, window)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ErrorClass {
    Active,
    Passive,
    UndetectedLogical,
}

pub fn classify_error(code: &GrandfatherCode, e: &ConvGenerator) -> Result<ErrorClass> {
    for g in code.measured() {
        if !shifted_product(&g, e)?.is_zero() {
            return Ok(ErrorClass::Active);
        }
    }
    if in_rowspace(&code.passive(), e) {
        Ok(ErrorClass::Passive)
    } else {
        Ok(ErrorClass::UndetectedLogical)
    }
}

/// The worked example: one ebit, one ancilla, one gauge qubit, one classical bit and one
/// information qubit in five-qubit frames.
pub fn example_spec() -> GrandfatherSpec {
    let text = "H 2\nCNOT 2 3 D\nCNOT 2 4 1+D\nCNOT 2 5 D\nH 3\nH 4\nH 5\nCNOT 2 3 D\nCNOT 2 5 D\nH 2\n\
                CNOT 1 2 D\nCNOT 1 4 1+D\nCNOT 1 5 1+D\nH 1\nH 2\nH 3\nH 4\nH 5\nCNOT 1 3 D\n\
                CNOT 1 4 1+D\nCNOT 1 5 1+D\nSWAP 1 4";
    GrandfatherSpec {
        params: GrandfatherParams { n: 5, k: 1, l: 1, r: 1, c: 1 },
        encoder: crate::circuits::parse_gate_list(text).expect("valid gate list"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_encoder_keeps_layout() {
        let p = GrandfatherParams { n: 5, k: 1, l: 1, r: 1, c: 1 };
        let code = build_grandfather(p, &[]).unwrap();
        assert_eq!(code.a, 1);
        assert_eq!(code.s_i.gens[0].z[1], LaurentPoly::one());
        assert_eq!(code.s_c.gens[0].z[3], LaurentPoly::one());
    }

    #[test]
    fn too_many_slots() {
        let p = GrandfatherParams { n: 3, k: 1, l: 1, r: 1, c: 1 };
        assert!(matches!(build_grandfather(p, &[]), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn combos() {
        assert_eq!(combinations(&[0, 1, 2], 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }
}
