use serde::{Deserialize, Serialize};

use crate::algebra::matrix::{clear_denominators, primitive_row, right_null_space};
use crate::algebra::smith::{apply_col_op, apply_row_op};
use crate::algebra::{rank_ff, rowspace_eq, rref, smith_form, LaurentPoly, PolyMatrix, RationalFn};
use crate::conv_core::{shifted_omega, ConvCheckMatrix, ConvDecomposition};
use crate::error::{Error, Result};
use crate::pauli::ConvGenerator;
use crate::ratio::Ratio;

use super::gates::{apply_gates, invert_gates, ConvGate};
use super::synth::{reduce_free, reduce_standard_form, Reduction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CodeClass {
    FiniteDepth,
    InfiniteDepthEncoder,
}

/// An entanglement-assisted convolutional code with its circuits.
///
/// Column layout of the full system: the receiver's c halves of the ebits come first,
/// then the sender's n qubits. The encoder acts on the sender's qubits only (indices
/// 0..n); the decoder acts on all c + n qubits.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EAQConvCode {
    pub n: usize,
    pub k: usize,
    pub c: usize,
    pub a: usize,
    pub klass: CodeClass,
    pub encoder: Vec<ConvGate>,
    pub decoder: Vec<ConvGate>,
    /// Check matrix the encoder realizes (up to row operations over the rational functions).
    pub target: ConvCheckMatrix,
    /// Sender qubit carrying each ebit half, ancilla, and information qubit.
    pub ebit_cols: Vec<usize>,
    pub ancilla_cols: Vec<usize>,
    pub info_cols: Vec<usize>,
    /// Stabilizer of the unencoded state over all c + n qubits.
    pub init_stabilizer: ConvCheckMatrix<RationalFn>,
    /// Rows of `init_stabilizer` whose images form the code's check matrix.
    pub code_rows: Vec<usize>,
    /// Logical Z and X of each information qubit, before encoding.
    pub init_info: ConvCheckMatrix<RationalFn>,
}

impl EAQConvCode {
    pub fn params(&self) -> String {
        format!("[[{},{};{}]]", self.n, self.k, self.c)
    }

    /// (information rate, entanglement rate)
    pub fn rates(&self) -> (Ratio, Ratio) {
        (Ratio::new(self.k, self.n), Ratio::new(self.c, self.n))
    }
}

fn unit(total: usize, col: usize, z: bool) -> ConvGenerator<RationalFn> {
    let mut g = ConvGenerator::<RationalFn>::zero(total);
    if z {
        g.z[col] = RationalFn::one();
    } else {
        g.x[col] = RationalFn::one();
    }
    g
}

fn build(n: usize, target: ConvCheckMatrix, red: Reduction, free: bool) -> Result<EAQConvCode> {
    let c = red.ebit_cols.len();
    let a = red.ancilla_cols.len();
    let k = red.info_cols.len();
    let total = c + n;
    let infinite = red.sigma.iter().any(|g| g.is_infinite_depth());
    let all = red.all_gates();
    let encoder = invert_gates(&all);
    let decoder: Vec<ConvGate> = if infinite {
        let ebit = red.ebit_cols.clone();
        let mirror = move |j: usize| match ebit.iter().position(|&q| q == j) {
            Some(i) => i,
            None => c + j,
        };
        red.a.iter().map(|g| g.offset(c)).chain(red.b.iter().map(|g| g.remap(&mirror))).collect()
    } else {
        all.iter().map(|g| g.offset(c)).collect()
    };

    let mut rows = Vec::new();
    for (i, &q) in red.ebit_cols.iter().enumerate() {
        let mut zz = unit(total, i, true);
        zz.z[c + q] = RationalFn::one();
        let mut xx = unit(total, i, false);
        xx.x[c + q] = RationalFn::one();
        rows.push(zz);
        rows.push(xx);
    }
    for &q in &red.ancilla_cols {
        rows.push(unit(total, c + q, true));
    }
    let code_rows: Vec<usize> = if free {
        for (kk, &q) in red.ebit_cols.iter().enumerate() {
            let mut r = unit(total, kk, false);
            r.x[c + q] = RationalFn::one();
            for (l, &ql) in red.ebit_cols.iter().enumerate() {
                let j = RationalFn::from_poly(red.coupling[kk][l].clone());
                r.z[l] = r.z[l].add(&j);
                r.z[c + ql] = r.z[c + ql].add(&j);
            }
            rows.push(r);
        }
        (2 * c..rows.len()).collect()
    } else {
        (0..rows.len()).collect()
    };
    let init_stabilizer = ConvCheckMatrix::new(total, rows)?;
    let mut info = Vec::new();
    for &q in &red.info_cols {
        info.push(unit(total, c + q, true));
        info.push(unit(total, c + q, false));
    }
    let init_info = ConvCheckMatrix::new(total, info)?;
    Ok(EAQConvCode {
        n,
        k,
        c,
        a,
        klass: if infinite { CodeClass::InfiniteDepthEncoder } else { CodeClass::FiniteDepth },
        encoder,
        decoder,
        target,
        ebit_cols: red.ebit_cols,
        ancilla_cols: red.ancilla_cols,
        info_cols: red.info_cols,
        init_stabilizer,
        code_rows,
        init_info,
    })
}

fn all_units(m: &PolyMatrix<LaurentPoly>) -> Result<()> {
    let s = smith_form(m);
    if s.rank < m.rows() {
        return Err(Error::RankDeficient);
    }
    if s.invariant_factors().iter().any(|f| !f.is_one()) {
        return Err(Error::CatastrophicInput);
    }
    Ok(())
}

/// CSS code from two classical check matrices over GF(2)[D, D^-1]: H1 gives the Z checks,
/// H2 the X checks.
pub fn css_construct(h1: &PolyMatrix<LaurentPoly>, h2: &PolyMatrix<LaurentPoly>) -> Result<EAQConvCode> {
    let n = h1.cols();
    if h2.cols() != n {
        return Err(Error::DimensionMismatch(format!("{} vs {} columns", n, h2.cols())));
    }
    all_units(h1)?;
    all_units(h2)?;
    let e = h1.mul(&h2.conj_transpose())?;
    let s = smith_form(&e);
    let r = s.rank;
    let mut a_inv = PolyMatrix::identity(h1.rows());
    for op in &s.row_ops {
        apply_row_op(&mut a_inv, op);
    }
    let mut b_inv = PolyMatrix::identity(h2.rows());
    for op in &s.col_ops {
        apply_col_op(&mut b_inv, op);
    }
    let u = a_inv.mul(h1)?;
    let v = b_inv.conj_transpose().mul(h2)?;
    let zero = vec![LaurentPoly::zero(); n];
    let zrow = |i: usize| ConvGenerator { n, z: u.row(i), x: zero.clone() };
    let xrow = |i: usize| ConvGenerator { n, z: zero.clone(), x: v.row(i) };
    let pairs: Vec<_> = (0..r).map(|i| (zrow(i), xrow(i))).collect();
    let iso: Vec<_> = (r..u.rows()).map(zrow).chain((r..v.rows()).map(xrow)).collect();
    let red = reduce_standard_form(n, &pairs, &iso)?;
    let mut gens: Vec<ConvGenerator> =
        (0..h1.rows()).map(|i| ConvGenerator { n, z: h1.row(i), x: zero.clone() }).collect();
    gens.extend((0..h2.rows()).map(|i| ConvGenerator { n, z: zero.clone(), x: h2.row(i) }));
    build(n, ConvCheckMatrix::new(n, gens)?, red, false)
}

/// Code from the output of the symplectic Gram-Schmidt procedure.
pub fn general_construct(d: &ConvDecomposition) -> Result<EAQConvCode> {
    let n = d.expanded.n;
    let rows = &d.finitized.gens;
    let pairs: Vec<_> = (0..d.c).map(|i| (rows[2 * i].clone(), rows[2 * i + 1].clone())).collect();
    let red = reduce_standard_form(n, &pairs, &rows[2 * d.c..])?;
    build(n, d.expanded.clone(), red, false)
}

/// Code whose ebits are shared as part of the stabilizer: the radical of the shifted
/// symplectic form goes to ancillas, the complement to ebits.
pub fn free_ent_construct(s: &ConvCheckMatrix) -> Result<EAQConvCode> {
    let n = s.n;
    if rank_ff(&s.as_matrix()) < s.len() {
        return Err(Error::DependentRows);
    }
    let omega = shifted_omega(s).map(|p| RationalFn::from_poly(p.clone()));
    let mut w = Vec::new();
    for y in right_null_space(&omega.transpose()) {
        let y = clear_denominators(y);
        let mut g = ConvGenerator::zero(n);
        for (coef, row) in y.iter().zip(&s.gens) {
            g = g.add(&row.scale(coef));
        }
        let mut e = g.entries();
        primitive_row(&mut e);
        w.push(ConvGenerator::from_entries(e));
    }
    let mut v = Vec::new();
    let mut basis: Vec<Vec<LaurentPoly>> = w.iter().map(|g| g.entries()).collect();
    for g in &s.gens {
        basis.push(g.entries());
        if rank_ff(&PolyMatrix::from_rows(basis.clone())?) == basis.len() {
            v.push(g.clone());
        } else {
            basis.pop();
        }
    }
    let red = reduce_free(n, &w, &v)?;
    build(n, s.clone(), red, true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    /// Encoded code rows span the target over GF(2)(D).
    pub stabilizer_ok: bool,
    /// Decoding returns every logical operator to itself up to a delay, modulo the stabilizer.
    pub logical_ok: bool,
    pub delays: Vec<i64>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.stabilizer_ok && self.logical_ok
    }
}

fn normal_form(row: &[RationalFn], basis: &[Vec<RationalFn>], pivots: &[usize]) -> Vec<RationalFn> {
    let mut r = row.to_vec();
    for (b, &p) in basis.iter().zip(pivots) {
        if !r[p].is_zero() {
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(b) {
                *x = x.add(&f.mul(y));
            }
        }
    }
    r
}

/// Replays the encoder and decoder on the initial state and checks both halves of the
/// round trip.
pub fn verify_encoding(code: &EAQConvCode) -> Result<VerifyReport> {
    let c = code.c;
    let enc: Vec<ConvGate> = code.encoder.iter().map(|g| g.offset(c)).collect();
    let encoded = apply_gates(&code.init_stabilizer, &enc)?;
    let alice: Vec<Vec<RationalFn>> = code
        .code_rows
        .iter()
        .map(|&i| {
            let g = &encoded.gens[i];
            g.z[c..].iter().chain(&g.x[c..]).cloned().collect()
        })
        .collect();
    let stabilizer_ok = rowspace_eq(&PolyMatrix::from_rows(alice)?, &code.target.to_rational().as_matrix());

    let dec_stab = apply_gates(&encoded, &code.decoder)?;
    let (basis, pivots) = rref(&dec_stab.as_matrix());
    let enc_info = apply_gates(&code.init_info, &enc)?;
    let dec_info = apply_gates(&enc_info, &code.decoder)?;
    let mut logical_ok = true;
    let mut delays = Vec::new();
    for (l0, l1) in code.init_info.gens.iter().zip(&dec_info.gens) {
        let a = normal_form(&l0.entries(), &basis, &pivots);
        let b = normal_form(&l1.entries(), &basis, &pivots);
        let Some(idx) = a.iter().position(|e| !e.is_zero()) else {
            logical_ok = false;
            continue;
        };
        let s = b[idx].div(&a[idx]).unwrap_or_else(RationalFn::zero);
        let delay = match s.to_poly() {
            Some(p) if p.is_monomial() => p.del().unwrap(),
            _ => {
                logical_ok = false;
                continue;
            }
        };
        if a.iter().zip(&b).any(|(x, y)| x.mul(&s) != *y) {
            logical_ok = false;
        }
        delays.push(delay);
    }
    Ok(VerifyReport { stabilizer_ok, logical_ok, delays })
}
