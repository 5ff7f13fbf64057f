//! Greedy reduction of a check matrix in diagonal standard form to canonical single-qubit
//! rows using finite-depth gates plus one rational stage. The gate list found here runs in
//! the decoding direction; encoders are its inverse.

use crate::algebra::matrix::rank_ff;
use crate::algebra::{poly_gcd, smith_form, ElemOp, LaurentPoly, PolyMatrix, RationalFn};
use crate::conv_core::shifted_product;
use crate::error::{Error, Result};
use crate::pauli::ConvGenerator;

use super::gates::{apply_gate_to_row, ConvGate};

#[derive(Clone, Debug)]
pub(crate) struct Reduction {
    /// Finite-depth gates before the rational stage.
    pub a: Vec<ConvGate>,
    /// RCNOTs on ebit columns.
    pub sigma: Vec<ConvGate>,
    /// Gates controlled from ebit columns, diagonal in the control's computational basis.
    pub b: Vec<ConvGate>,
    pub ebit_cols: Vec<usize>,
    pub ancilla_cols: Vec<usize>,
    pub info_cols: Vec<usize>,
    /// Z-coefficients of each canonical pair row on the ebit columns: v_k = X_{q_k} + sum_l J_kl Z_{q_l}.
    pub coupling: Vec<Vec<LaurentPoly>>,
}

impl Reduction {
    pub fn all_gates(&self) -> Vec<ConvGate> {
        self.a.iter().chain(&self.sigma).chain(&self.b).cloned().collect()
    }
}

struct Engine {
    n: usize,
    rows: Vec<ConvGenerator>,
    used: Vec<bool>,
    /// row index holding exactly Z_q for each finished column q
    finished: Vec<Option<usize>>,
    /// finished columns whose row has a partner; row ops with them would couple pairs
    pair: Vec<bool>,
    /// partner row of each first pair row
    partner: Vec<Option<usize>>,
    gates: Vec<ConvGate>,
}

fn construction(msg: impl Into<String>) -> Error {
    Error::Construction(msg.into())
}

impl Engine {
    fn new(n: usize, rows: Vec<ConvGenerator>) -> Self {
        let m = rows.len();
        Engine {
            n,
            rows,
            used: vec![false; n],
            finished: vec![None; n],
            pair: vec![false; n],
            partner: vec![None; m],
            gates: Vec::new(),
        }
    }

    fn gate(&mut self, g: ConvGate) -> Result<()> {
        for row in &mut self.rows {
            apply_gate_to_row(row, &g)?;
        }

        self.gates.push(g);
        Ok(())
    }

    fn free(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| !self.used[q]).collect()
    }

    /// Row op: clears Z entries of row r on finished columns.
    fn clear_finished_z(&mut self, r: usize) -> Result<()> {
        for q in 0..self.n {
            let Some(src) = self.finished[q] else { continue };
            if src == r || self.pair[q] {
                continue;
            }
            if !self.rows[r].x[q].is_zero() {
                return Err(construction("row has X support on a finished ancilla column"));
            }
            let f = self.rows[r].z[q].clone();
            if !f.is_zero() {
                let add = self.rows[src].scale(&f);
                self.rows[r] = self.rows[r].add(&add);
            }
        }
        Ok(())
    }

    /// If the free part of row r is not primitive, clears its Z entries on finished pair
    /// columns by row operations, rescaling the partner rows so pairs stay decoupled.
    fn absorb_pair_z(&mut self, r: usize, free: &[usize]) -> Result<()> {
        let mut g: Option<LaurentPoly> = None;
        for &q in free {
            for e in [&self.rows[r].z[q], &self.rows[r].x[q]] {
                if !e.is_zero() {
                    g = Some(match g {
                        None => e.delay_free().1,
                        Some(acc) => poly_gcd(&acc, e)?,
                    });
                }
            }
        }
        if g.is_none_or(|g| g.is_one()) {
            return Ok(());
        }
        let Some(rp) = self.partner[r] else {
            return Err(construction("row content is not a unit"));
        };
        for q in 0..self.n {
            let f = self.rows[r].z[q].clone();
            let Some(s) = self.finished[q] else { continue };
            if !self.pair[q] || f.is_zero() {
                continue;
            }
            let sp = self.partner[s].expect("pair row has a partner");
            let hr = shifted_product(&self.rows[r], &self.rows[rp])?;
            let hs = shifted_product(&self.rows[s], &self.rows[sp])?;
            let add = self.rows[s].scale(&f);
            self.rows[r] = self.rows[r].add(&add);
            let keep = self.rows[sp].scale(&hr.conj());
            let mix = self.rows[rp].scale(&f.mul(&hs).conj());
            self.rows[sp] = keep.add(&mix);
        }
        Ok(())
    }

    /// Reduces row r (self-orthogonal, commuting with the finished rows) to Z_p; returns p.
    /// `pair` marks r as the first row of a pair.
    fn reduce_to_z(&mut self, r: usize, pair: bool) -> Result<usize> {
        self.clear_finished_z(r)?;
        let free = self.free();
        for q in 0..self.n {
            let stray = !self.rows[r].x[q].is_zero() || (!self.pair[q] && !self.rows[r].z[q].is_zero());
            if self.used[q] && stray {
                return Err(construction("row overlaps a column that is already in use"));
            }
        }
        self.absorb_pair_z(r, &free)?;
        // strip the content
        let mut g: Option<LaurentPoly> = None;
        for q in 0..self.n {
            for e in [&self.rows[r].z[q], &self.rows[r].x[q]] {
                if !e.is_zero() {
                    g = Some(match g {
                        None => e.delay_free().1,
                        Some(acc) => poly_gcd(&acc, e)?,
                    });
                }
            }
        }
        let Some(g) = g else { return Err(Error::DependentRows) };
        if free.iter().all(|&q| self.rows[r].z[q].is_zero() && self.rows[r].x[q].is_zero()) {
            return Err(Error::DependentRows);
        }
        if !g.is_one() {
            let row = &mut self.rows[r];
            for e in row.z.iter_mut().chain(row.x.iter_mut()) {
                *e = e.exact_div(&g).expect("content divides entries");
            }
        }
        for &q in &free {
            if self.rows[r].x[q].is_zero() && !self.rows[r].z[q].is_zero() {
                self.gate(ConvGate::H(q))?;
            }
        }
        let p = loop {
            let xs: Vec<usize> = free.iter().copied().filter(|&q| !self.rows[r].x[q].is_zero()).collect();
            if xs.is_empty() {
                let q = *free.iter().find(|&&q| !self.rows[r].z[q].is_zero()).expect("row is nonzero");
                self.gate(ConvGate::H(q))?;
                continue;
            }
            if xs.len() > 1 {
                let p = *xs.iter().min_by_key(|&&q| self.rows[r].x[q].span().unwrap()).unwrap();
                for &j in xs.iter().filter(|&&j| j != p) {
                    let (q, _) = self.rows[r].x[j].divrem(&self.rows[r].x[p]);
                    if !q.is_zero() {
                        self.gate(ConvGate::Cnot { i: p, j, f: q })?;
                    }
                }
                continue;
            }
            let p = xs[0];
            let zs: Vec<usize> = free.iter().copied().filter(|&q| q != p && !self.rows[r].z[q].is_zero()).collect();
            if !zs.is_empty() {
                for j in zs {
                    let (q, rem) = self.rows[r].z[j].divrem(&self.rows[r].x[p]);
                    if !q.is_zero() {
                        self.gate(ConvGate::Cphase { i: p, j, f: q })?;
                    }
                    if !rem.is_zero() {
                        self.gate(ConvGate::H(j))?;
                    }
                }
                continue;
            }
            let z = self.rows[r].z[p].clone();
            if z.is_zero() {
                break p;
            }
            let x = self.rows[r].x[p].clone();
            let (sz, sx) = (z.span().unwrap(), x.span().unwrap());
            if sz == sx {
                self.gate(ConvGate::P(p))?;
            } else if sz > sx {
                let k = z.deg().unwrap() - x.deg().unwrap();
                if k <= 0 || z.del().unwrap() != x.del().unwrap() - k {
                    return Err(construction("row is not self-orthogonal"));
                }
                self.gate(ConvGate::CphaseSelf { i: p, k })?;
            } else {
                self.gate(ConvGate::H(p))?;
            }
        };
        let x = self.rows[r].x[p].clone();
        if !x.is_monomial() {
            return Err(construction("row content is not a unit"));
        }
        let m = x.del().unwrap();
        if m != 0 {
            self.gate(ConvGate::Delay { i: p, l: -m })?;
        }
        self.gate(ConvGate::H(p))?;
        for q in 0..self.n {
            let f = self.rows[r].z[q].clone();
            if q != p && self.pair[q] && !f.is_zero() {
                self.gate(ConvGate::Cnot { i: q, j: p, f: f.conj() })?;
            }
        }
        self.used[p] = true;
        self.finished[p] = Some(r);
        self.pair[p] = pair;
        Ok(p)
    }

    /// Clears X and Z support of the pair row r on the information columns using gates
    /// controlled from column q (where row r carries X_q).
    fn clear_info(&mut self, r: usize, q: usize, info: &[usize]) -> Result<()> {
        for &j in info {
            let f = self.rows[r].x[j].clone();
            if !f.is_zero() {
                self.gate(ConvGate::Cnot { i: q, j, f })?;
            }
        }
        for &j in info {
            let f = self.rows[r].z[j].clone();
            if !f.is_zero() {
                self.gate(ConvGate::Cphase { i: q, j, f })?;
            }
        }
        Ok(())
    }
}

/// Pairs (u_i, v_i) with u_i . v_i != 0, all other products among pairs and `iso` zero.
pub(crate) fn reduce_standard_form(
    n: usize,
    pairs: &[(ConvGenerator, ConvGenerator)],
    iso: &[ConvGenerator],
) -> Result<Reduction> {
    let c = pairs.len();
    let mut rows: Vec<ConvGenerator> = Vec::new();
    for (u, v) in pairs {
        rows.push(u.clone());
        rows.push(v.clone());
    }
    rows.extend(iso.iter().cloned());
    let mut e = Engine::new(n, rows);
    for i in 0..c {
        e.partner[2 * i] = Some(2 * i + 1);
    }
    let mut ancilla_cols = Vec::new();
    for w in 0..iso.len() {
        ancilla_cols.push(e.reduce_to_z(2 * c + w, false)?);
    }
    let mut ebit_cols = Vec::new();
    for i in 0..c {
        ebit_cols.push(e.reduce_to_z(2 * i, true)?);
    }
    for (i, &q) in ebit_cols.iter().enumerate() {
        let h = e.rows[2 * i + 1].x[q].clone();
        if h.is_zero() {
            return Err(construction("pair rows commute"));
        }
        let m = h.del().unwrap();
        if m != 0 {
            e.gate(ConvGate::Delay { i: q, l: -m })?;
        }
    }
    let a = std::mem::take(&mut e.gates);
    for (i, &q) in ebit_cols.iter().enumerate() {
        let h = e.rows[2 * i + 1].x[q].clone();
        if !h.is_one() {
            e.gate(ConvGate::Rcnot { i: q, r: RationalFn::recip_of(&h)? })?;
        }
    }
    let sigma = std::mem::take(&mut e.gates);
    let info_cols = e.free();
    for (i, &q) in ebit_cols.iter().enumerate() {
        let r = 2 * i + 1;
        for (k, &qk) in ebit_cols.iter().enumerate() {
            if k != i && !e.rows[r].x[qk].is_zero() {
                return Err(construction("pair rows are not decoupled"));
            }
        }
        if ancilla_cols.iter().any(|&qa| !e.rows[r].x[qa].is_zero()) {
            return Err(construction("pair row does not commute with the isotropic rows"));
        }
        e.clear_info(r, q, &info_cols)?;
    }
    let b = std::mem::take(&mut e.gates);
    let coupling = (0..c).map(|i| ebit_cols.iter().map(|&q| e.rows[2 * i + 1].z[q].clone()).collect()).collect();
    Ok(Reduction { a, sigma, b, ebit_cols, ancilla_cols, info_cols, coupling })
}

/// Free-entanglement reduction: isotropic rows `w` to ancillas, the remaining rows `v`
/// (full rank c = |v| on X after a local basis choice) to X on c ebit columns.
pub(crate) fn reduce_free(n: usize, w: &[ConvGenerator], v: &[ConvGenerator]) -> Result<Reduction> {
    let c = v.len();
    let mut rows: Vec<ConvGenerator> = v.to_vec();
    rows.extend(w.iter().cloned());
    let mut e = Engine::new(n, rows);
    let mut ancilla_cols = Vec::new();
    for k in 0..w.len() {
        ancilla_cols.push(e.reduce_to_z(c + k, false)?);
    }
    for r in 0..c {
        e.clear_finished_z(r)?;
    }
    let free = e.free();
    let x_rank = |e: &Engine| {
        let m = PolyMatrix::from_rows((0..c).map(|r| free.iter().map(|&q| e.rows[r].x[q].clone()).collect()).collect())
            .unwrap();
        rank_ff(&m)
    };
    // local basis choice per column: identity, H, or X += Z
    let mut rank = x_rank(&e);
    for &q in &free {
        if rank == c {
            break;
        }
        for opt in [vec![ConvGate::H(q)], vec![ConvGate::H(q), ConvGate::P(q), ConvGate::H(q)]] {
            let saved = (e.rows.clone(), e.gates.len());
            for g in &opt {
                e.gate(g.clone())?;
            }
            let nr = x_rank(&e);
            if nr > rank {
                rank = nr;
                break;
            }
            e.rows = saved.0;
            e.gates.truncate(saved.1);
        }
    }
    if rank < c {
        return Err(Error::RankDeficient);
    }
    let xv = PolyMatrix::from_rows((0..c).map(|r| free.iter().map(|&q| e.rows[r].x[q].clone()).collect()).collect())
        .unwrap();
    let s = smith_form(&xv);
    for op in &s.col_ops {
        let g = match op {
            ElemOp::Add { src, dst, f } => ConvGate::Cnot { i: free[*src], j: free[*dst], f: f.clone() },
            ElemOp::Swap(a, b) => ConvGate::Swap(free[*a], free[*b]),
            ElemOp::Scale { idx, k } => ConvGate::Delay { i: free[*idx], l: *k },
        };
        e.gate(g)?;
    }
    for op in &s.row_ops {
        match op {
            ElemOp::Add { src, dst, f } => {
                let add = e.rows[*src].scale(f);
                e.rows[*dst] = e.rows[*dst].add(&add);
            }
            ElemOp::Swap(a, b) => e.rows.swap(*a, *b),
            ElemOp::Scale { idx, k } => e.rows[*idx] = e.rows[*idx].shift(*k),
        }
    }
    let ebit_cols: Vec<usize> = free[..c].to_vec();
    let a = std::mem::take(&mut e.gates);
    for (k, &q) in ebit_cols.iter().enumerate() {
        let h = e.rows[k].x[q].clone();
        if !h.is_one() {
            e.gate(ConvGate::Rcnot { i: q, r: RationalFn::recip_of(&h)? })?;
        }
    }
    let sigma = std::mem::take(&mut e.gates);
    let info_cols: Vec<usize> = free[c..].to_vec();
    for (k, &q) in ebit_cols.iter().enumerate() {
        e.clear_info(k, q, &info_cols)?;
    }
    for r in 0..c {
        e.clear_finished_z(r)?;
    }
    let b = std::mem::take(&mut e.gates);
    let coupling = (0..c).map(|k| ebit_cols.iter().map(|&q| e.rows[k].z[q].clone()).collect()).collect();
    Ok(Reduction { a, sigma, b, ebit_cols, ancilla_cols, info_cols, coupling })
}
