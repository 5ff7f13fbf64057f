//! Entanglement-assisted block codes: Gram-Schmidt, ebit counts and encoding circuits.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::gf2::{gf2_mul, gf2_rank, gf2_rowspace_eq, gf2_transpose, BinMatrix};
use crate::algebra::{rank_ff, Gf4Matrix};
use crate::error::{Error, Result};
use crate::pauli::{symplectic_matrix, symplectic_product, BlockCheckMatrix, SymplecticVector};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum BlockGate {
    Cnot(usize, usize),
    H(usize),
    P(usize),
    Swap(usize, usize),
}

impl BlockGate {
    pub fn offset(self, k: usize) -> Self {
        match self {
            BlockGate::Cnot(i, j) => BlockGate::Cnot(i + k, j + k),
            BlockGate::H(i) => BlockGate::H(i + k),
            BlockGate::P(i) => BlockGate::P(i + k),
            BlockGate::Swap(i, j) => BlockGate::Swap(i + k, j + k),
        }
    }

    fn qubits(self) -> Vec<usize> {
        match self {
            BlockGate::Cnot(i, j) | BlockGate::Swap(i, j) => vec![i, j],
            BlockGate::H(i) | BlockGate::P(i) => vec![i],
        }
    }
}

impl fmt::Display for BlockGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockGate::Cnot(i, j) => write!(f, "CNOT {} {}", i + 1, j + 1),
            BlockGate::H(i) => write!(f, "H {}", i + 1),
            BlockGate::P(i) => write!(f, "P {}", i + 1),
            BlockGate::Swap(i, j) => write!(f, "SWAP {} {}", i + 1, j + 1),
        }
    }
}

impl FromStr for BlockGate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let idx = |k: usize| -> Result<usize> {
            let v: usize = parts
                .get(k)
                .ok_or_else(|| Error::Parse(format!("missing operand in '{s}'")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad qubit index in '{s}'")))?;
            v.checked_sub(1).ok_or_else(|| Error::Parse("qubit indices are 1-based".into()))
        };
        match parts.first().map(|p| p.to_ascii_uppercase()).as_deref() {
            Some("CNOT") => Ok(BlockGate::Cnot(idx(1)?, idx(2)?)),
            Some("H") => Ok(BlockGate::H(idx(1)?)),
            Some("P") => Ok(BlockGate::P(idx(1)?)),
            Some("SWAP") => Ok(BlockGate::Swap(idx(1)?, idx(2)?)),
            _ => Err(Error::Parse(format!("unknown gate '{s}'"))),
        }
    }
}

pub fn apply_block_gate(m: &BlockCheckMatrix, g: BlockGate) -> Result<BlockCheckMatrix> {
    let mut out = m.clone();
    apply_block_gate_mut(&mut out, g)?;
    Ok(out)
}

fn apply_block_gate_mut(m: &mut BlockCheckMatrix, g: BlockGate) -> Result<()> {
    if let Some(&bad) = g.qubits().iter().find(|&&q| q >= m.n) {
        return Err(Error::IndexOutOfRange { index: bad, n: m.n });
    }
    if let BlockGate::Cnot(i, j) = g {
        if i == j {
            return Err(Error::InvalidParams("CNOT control equals target".into()));
        }
    }
    for r in &mut m.rows {
        apply_to_row(r, g);
    }
    Ok(())
}

fn apply_to_row(r: &mut SymplecticVector, g: BlockGate) {
    match g {
        BlockGate::Cnot(i, j) => {
            r.x[j] ^= r.x[i];
            r.z[i] ^= r.z[j];
        }
        BlockGate::H(i) => std::mem::swap(&mut r.z[i], &mut r.x[i]),
        BlockGate::P(i) => r.z[i] ^= r.x[i],
        BlockGate::Swap(i, j) => {
            r.z.swap(i, j);
            r.x.swap(i, j);
        }
    }
}

/// Row `dst` += row `src`, indices into the original matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RowAdd {
    pub src: usize,
    pub dst: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EAStructure {
    pub c: usize,
    pub a: usize,
    /// Pairs (u_1, v_1), ..., (u_c, v_c), then the a isotropic rows.
    pub reordered: BlockCheckMatrix,
    pub row_ops: Vec<RowAdd>,
    /// Original index of each row of `reordered`.
    pub order: Vec<usize>,
}

/// Symplectic Gram-Schmidt by row operations.
pub fn block_sgsop(h: &BlockCheckMatrix) -> Result<EAStructure> {
    if gf2_rank(&h.bits()) < h.rows.len() {
        return Err(Error::DependentRows);
    }
    let mut rows = h.rows.clone();
    let mut remaining: Vec<usize> = (0..rows.len()).collect();
    let mut pairs = Vec::new();
    let mut iso = Vec::new();
    let mut row_ops = Vec::new();
    while let Some(&first) = remaining.first() {
        let partner =
            remaining[1..].iter().copied().find(|&j| symplectic_product(&rows[first], &rows[j]).unwrap() == 1);
        let Some(second) = partner else {
            iso.push(first);
            remaining.remove(0);
            continue;
        };
        remaining.retain(|&r| r != first && r != second);
        for &g in &remaining {
            if symplectic_product(&rows[g], &rows[second]).unwrap() == 1 {
                rows[g] = rows[g].add(&rows[first]);
                row_ops.push(RowAdd { src: first, dst: g });
            }
            if symplectic_product(&rows[g], &rows[first]).unwrap() == 1 {
                rows[g] = rows[g].add(&rows[second]);
                row_ops.push(RowAdd { src: second, dst: g });
            }
        }
        pairs.push((first, second));
    }
    let order: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).chain(iso.iter().copied()).collect();
    let reordered = BlockCheckMatrix { n: h.n, rows: order.iter().map(|&i| rows[i].clone()).collect() };
    Ok(EAStructure { c: pairs.len(), a: iso.len(), reordered, row_ops, order })
}

pub fn ebits_general(h: &BlockCheckMatrix) -> usize {
    let r = gf2_rank(&symplectic_matrix(h));
    assert!(r.is_multiple_of(2), "symplectic matrix has odd rank");
    r / 2
}

pub fn ebits_css(h1: &BinMatrix, h2: &BinMatrix) -> Result<usize> {
    let c1 = h1.first().map_or(0, |r| r.len());
    let c2 = h2.first().map_or(0, |r| r.len());
    if c1 != c2 {
        return Err(Error::DimensionMismatch(format!("{c1} vs {c2} columns")));
    }
    Ok(gf2_rank(&gf2_mul(h1, &gf2_transpose(h2))))
}

pub fn ebits_gf4(h: &Gf4Matrix) -> usize {
    rank_ff(&h.mul(&h.conj_transpose()).expect("shapes agree"))
}

/// Stacked CSS check matrix [H1 | 0; 0 | H2].
pub fn css_check_matrix(h1: &BinMatrix, h2: &BinMatrix) -> Result<BlockCheckMatrix> {
    let n = h1.first().or(h2.first()).map_or(0, |r| r.len());
    let mut rows: Vec<SymplecticVector> = h1.iter().map(|r| SymplecticVector { z: r.clone(), x: vec![0; n] }).collect();
    rows.extend(h2.iter().map(|r| SymplecticVector { z: vec![0; n], x: r.clone() }));
    BlockCheckMatrix::new(n, rows)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockEncoder {
    pub gates: Vec<BlockGate>,
    pub c: usize,
    pub a: usize,
    /// Z_1, X_1, ..., Z_c, X_c, then Z rows for the ancillas.
    pub canonical: BlockCheckMatrix,
}

impl BlockEncoder {
    /// Canonical stabilizer with the receiver's c qubits prepended: each pair's first
    /// row carries X on its receiver qubit and the second row carries Z.
    pub fn canonical_augmented(&self) -> BlockCheckMatrix {
        let n = self.canonical.n;
        let rows = self
            .canonical
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut z = vec![0; self.c];
                let mut x = vec![0; self.c];
                if i < 2 * self.c {
                    if i % 2 == 0 {
                        x[i / 2] = 1;
                    } else {
                        z[i / 2] = 1;
                    }
                }
                z.extend(&r.z);
                x.extend(&r.x);
                SymplecticVector { z, x }
            })
            .collect();
        BlockCheckMatrix { n: n + self.c, rows }
    }

    /// Runs the encoder (the synthesized gates reversed) on the augmented canonical stabilizer.
    pub fn encoded_stabilizer(&self) -> BlockCheckMatrix {
        let mut m = self.canonical_augmented();
        for g in self.gates.iter().rev() {
            apply_block_gate_mut(&mut m, g.offset(self.c)).expect("gate indices in range");
        }
        m
    }

    /// Sender-side rows of the encoded stabilizer span the same GF(2) space as `h`.
    pub fn reproduces(&self, h: &BlockCheckMatrix) -> bool {
        let enc = self.encoded_stabilizer();
        let alice: BinMatrix =
            enc.rows.iter().map(|r| r.z[self.c..].iter().chain(&r.x[self.c..]).copied().collect()).collect();
        gf2_rowspace_eq(&alice, &h.bits())
    }
}

struct Synth {
    m: BlockCheckMatrix,
    gates: Vec<BlockGate>,
}

impl Synth {
    fn gate(&mut self, g: BlockGate) {
        apply_block_gate_mut(&mut self.m, g).unwrap();
        self.gates.push(g);
    }

    /// Turns row r (supported on columns >= t) into X_t.
    fn make_x(&mut self, r: usize, t: usize) {
        let n = self.m.n;
        if self.m.rows[r].x[t] == 0 {
            let row = &self.m.rows[r];
            if let Some(j) = (t..n).find(|&j| row.x[j] == 1) {
                self.gate(BlockGate::Swap(t, j));
            } else {
                let j = (t..n).find(|&j| row.z[j] == 1).expect("nonzero row");
                self.gate(BlockGate::H(j));
                if j != t {
                    self.gate(BlockGate::Swap(t, j));
                }
            }
        }
        for j in t + 1..n {
            if self.m.rows[r].x[j] == 1 {
                self.gate(BlockGate::Cnot(t, j));
            }
        }
        if self.m.rows[r].z[t] == 1 {
            self.gate(BlockGate::P(t));
        }
        for j in t + 1..n {
            if self.m.rows[r].z[j] == 1 {
                self.gate(BlockGate::H(j));
                self.gate(BlockGate::Cnot(t, j));
            }
        }
    }

    /// Turns the partner row r (with x_t = 1, commuting with X on other columns) into X_t,
    /// leaving the finished Z_t row alone.
    fn partner_to_x(&mut self, r: usize, t: usize) {
        let n = self.m.n;
        for j in t + 1..n {
            if self.m.rows[r].x[j] == 1 {
                self.gate(BlockGate::Cnot(t, j));
            }
        }
        for j in t + 1..n {
            if self.m.rows[r].z[j] == 1 {
                self.gate(BlockGate::H(j));
                self.gate(BlockGate::Cnot(t, j));
                self.gate(BlockGate::H(j));
            }
        }
        if self.m.rows[r].z[t] == 1 {
            self.gate(BlockGate::P(t));
        }
    }
}

/// Clifford encoding circuit in decoding direction: the returned gates take the input
/// stabilizer to canonical form.
pub fn synth_block_encoder(h: &BlockCheckMatrix) -> Result<BlockEncoder> {
    let ea = block_sgsop(h)?;
    let mut s = Synth { m: ea.reordered.clone(), gates: Vec::new() };
    let mut t = 0;
    for p in 0..ea.c {
        let (u, v) = (2 * p, 2 * p + 1);
        s.make_x(u, t);
        s.gate(BlockGate::H(t));
        s.partner_to_x(v, t);
        t += 1;
    }
    for w in 2 * ea.c..s.m.rows.len() {
        // clear Z entries sitting on finished ancilla columns
        for q in ea.c..t {
            if s.m.rows[w].z[q] == 1 {
                let done = s.m.rows[2 * ea.c + (q - ea.c)].clone();
                s.m.rows[w] = s.m.rows[w].add(&done);
            }
        }
        s.make_x(w, t);
        s.gate(BlockGate::H(t));
        t += 1;
    }
    let gates = cancel_pairs(s.gates);
    Ok(BlockEncoder { gates, c: ea.c, a: ea.a, canonical: s.m })
}

/// Drops adjacent identical self-inverse gates.
fn cancel_pairs(gates: Vec<BlockGate>) -> Vec<BlockGate> {
    let mut out: Vec<BlockGate> = Vec::with_capacity(gates.len());
    for g in gates {
        let same = match (out.last(), g) {
            (Some(BlockGate::Swap(a, b)), BlockGate::Swap(c, d)) => (*a, *b) == (c, d) || (*a, *b) == (d, c),
            (Some(last), g) => *last == g && !matches!(g, BlockGate::P(_)),
            _ => false,
        };
        if same {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}
