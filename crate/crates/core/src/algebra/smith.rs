use serde::{Deserialize, Serialize};

use super::matrix::PolyMatrix;
use super::poly::LaurentPoly;

/// Elementary operation on rows or columns of a Laurent matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ElemOp {
    /// line `dst` += f * line `src`
    Add {
        src: usize,
        dst: usize,
        f: LaurentPoly,
    },
    Swap(usize, usize),
    /// line `idx` *= D^k
    Scale {
        idx: usize,
        k: i64,
    },
}

/// M = A * Gamma * B with A, B unimodular over GF(2)[D, D^-1].
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub a: PolyMatrix<LaurentPoly>,
    pub gamma: PolyMatrix<LaurentPoly>,
    pub b: PolyMatrix<LaurentPoly>,
    pub rank: usize,
    /// Row operations applied to M, in order (their product is A^-1).
    pub row_ops: Vec<ElemOp>,
    /// Column operations applied to M, in order (their product is B^-1).
    pub col_ops: Vec<ElemOp>,
}

impl SmithDecomposition {
    pub fn invariant_factors(&self) -> Vec<LaurentPoly> {
        (0..self.rank).map(|i| self.gamma.get(i, i).clone()).collect()
    }
}

fn row_op(m: &mut PolyMatrix<LaurentPoly>, op: &ElemOp) {
    match op {
        ElemOp::Add { src, dst, f } => {
            for j in 0..m.cols() {
                let v = m.get(*dst, j).add(&f.mul(m.get(*src, j)));
                m.set(*dst, j, v);
            }
        }
        ElemOp::Swap(a, b) => {
            for j in 0..m.cols() {
                let t = m.get(*a, j).clone();
                m.set(*a, j, m.get(*b, j).clone());
                m.set(*b, j, t);
            }
        }
        ElemOp::Scale { idx, k } => {
            for j in 0..m.cols() {
                let v = m.get(*idx, j).shift(*k);
                m.set(*idx, j, v);
            }
        }
    }
}

fn col_op(m: &mut PolyMatrix<LaurentPoly>, op: &ElemOp) {
    match op {
        ElemOp::Add { src, dst, f } => {
            for i in 0..m.rows() {
                let v = m.get(i, *dst).add(&f.mul(m.get(i, *src)));
                m.set(i, *dst, v);
            }
        }
        ElemOp::Swap(a, b) => {
            for i in 0..m.rows() {
                let t = m.get(i, *a).clone();
                m.set(i, *a, m.get(i, *b).clone());
                m.set(i, *b, t);
            }
        }
        ElemOp::Scale { idx, k } => {
            for i in 0..m.rows() {
                let v = m.get(i, *idx).shift(*k);
                m.set(i, *idx, v);
            }
        }
    }
}

pub fn apply_row_op(m: &mut PolyMatrix<LaurentPoly>, op: &ElemOp) {
    row_op(m, op)
}

pub fn apply_col_op(m: &mut PolyMatrix<LaurentPoly>, op: &ElemOp) {
    col_op(m, op)
}

struct Work {
    m: PolyMatrix<LaurentPoly>,
    row_ops: Vec<ElemOp>,
    col_ops: Vec<ElemOp>,
}

impl Work {
    fn row(&mut self, op: ElemOp) {
        row_op(&mut self.m, &op);
        self.row_ops.push(op);
    }
    fn col(&mut self, op: ElemOp) {
        col_op(&mut self.m, &op);
        self.col_ops.push(op);
    }
}

/// Smith normal form over the Laurent polynomial ring, recording every elementary operation.
pub fn smith_form(m: &PolyMatrix<LaurentPoly>) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work { m: m.clone(), row_ops: Vec::new(), col_ops: Vec::new() };
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: entry of least span in the trailing block
        let mut best: Option<(i64, usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if let Some(s) = w.m.get(i, j).span() {
                    if best.is_none_or(|b| s < b.0) {
                        best = Some((s, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        if pi != t {
            w.row(ElemOp::Swap(t, pi));
        }
        if pj != t {
            w.col(ElemOp::Swap(t, pj));
        }
        let mut dirty = false;
        for i in t + 1..rows {
            if w.m.get(i, t).is_zero() {
                continue;
            }
            let (q, r) = w.m.get(i, t).divrem(w.m.get(t, t));
            w.row(ElemOp::Add { src: t, dst: i, f: q });
            dirty |= !r.is_zero();
        }
        for j in t + 1..cols {
            if w.m.get(t, j).is_zero() {
                continue;
            }
            let (q, r) = w.m.get(t, j).divrem(w.m.get(t, t));
            w.col(ElemOp::Add { src: t, dst: j, f: q });
            dirty |= !r.is_zero();
        }
        if dirty {
            continue;
        }
        // divisibility of the trailing block
        let piv = w.m.get(t, t).clone();
        let offender =
            (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| !piv.divides(w.m.get(i, j)));
        if let Some((i, _)) = offender {
            w.row(ElemOp::Add { src: i, dst: t, f: LaurentPoly::one() });
            continue;
        }
        let d = piv.del().unwrap();
        if d != 0 {
            w.col(ElemOp::Scale { idx: t, k: -d });
        }
        t += 1;
    }
    let rank = t;

    let mut a = PolyMatrix::identity(rows);
    for op in &w.row_ops {
        // A = E1^-1 E2^-1 ...: right-multiply by each inverse
        let inv = match op {
            ElemOp::Add { src, dst, f } => ElemOp::Add { src: *dst, dst: *src, f: f.clone() },
            ElemOp::Swap(x, y) => ElemOp::Swap(*x, *y),
            ElemOp::Scale { idx, k } => ElemOp::Scale { idx: *idx, k: -k },
        };
        col_op(&mut a, &inv);
    }
    let mut b = PolyMatrix::identity(cols);
    for op in &w.col_ops {
        // B = ... E2^-1 E1^-1: left-multiply by each inverse
        let inv = match op {
            ElemOp::Add { src, dst, f } => ElemOp::Add { src: *dst, dst: *src, f: f.clone() },
            ElemOp::Swap(x, y) => ElemOp::Swap(*x, *y),
            ElemOp::Scale { idx, k } => ElemOp::Scale { idx: *idx, k: -k },
        };
        row_op(&mut b, &inv);
    }
    SmithDecomposition { a, gamma: w.m, b, rank, row_ops: w.row_ops, col_ops: w.col_ops }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(rows: &[&[&str]]) -> PolyMatrix<LaurentPoly> {
        PolyMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| s.parse().unwrap()).collect()).collect()).unwrap()
    }

    fn check(m: &PolyMatrix<LaurentPoly>) -> SmithDecomposition {
        let s = smith_form(m);
        assert_eq!(&s.a.mul(&s.gamma).unwrap().mul(&s.b).unwrap(), m);
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
        s
    }

    #[test]
    fn identity() {
        let s = check(&PolyMatrix::identity(3));
        assert_eq!(s.rank, 3);
        assert!(s.invariant_factors().iter().all(|f| f.is_one()));
    }

    #[test]
    fn noncatastrophic_row() {
        let s = check(&pm(&[&["1+D^2", "1+D+D^2"]]));
        assert_eq!(s.rank, 1);
        assert!(s.invariant_factors()[0].is_one());
    }

    #[test]
    fn divisibility_fixup() {
        let s = check(&pm(&[&["1+D", "0"], &["0", "D+D^2+D^3"]]));
        assert_eq!(s.invariant_factors(), vec!["1".parse().unwrap(), "1+D^3".parse().unwrap()]);
    }
}
