use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::{poly_gcd, LaurentPoly};
use super::rational::RationalFn;
use super::{Field, Ring};
use crate::error::{Error, Result};

/// Dense matrix over a ring; the entry type is the ring tag.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> PolyMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(PolyMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).plus(&a.times(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Transpose with every entry conjugated: M^T(D^-1).
    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> PolyMatrix<U> {
        PolyMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl<T: Ring> fmt::Display for PolyMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: Ring> fmt::Debug for PolyMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Divides a row of Laurent polynomials by the gcd of its entries and strips common powers of D.
pub fn primitive_row(row: &mut [LaurentPoly]) {
    let mut g: Option<LaurentPoly> = None;
    let mut low: Option<i64> = None;
    for e in row.iter().filter(|e| !e.is_zero()) {
        g = Some(match g {
            None => e.delay_free().1,
            Some(acc) => poly_gcd(&acc, e).unwrap(),
        });
        let d = e.del().unwrap();
        low = Some(low.map_or(d, |l: i64| l.min(d)));
    }
    if let (Some(g), Some(low)) = (g, low) {
        for e in row.iter_mut() {
            if !e.is_zero() {
                *e = e.exact_div(&g).expect("gcd divides entry").shift(-low);
            }
        }
    }
}

/// Rank over the fraction field by fraction-free elimination (cross multiplication only).
pub fn rank_ff<T: Ring>(m: &PolyMatrix<T>) -> usize {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let piv = a[rank][col].clone();
        for r in rank + 1..rows {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in col..cols {
                let v = piv.times(&a[r][j]).plus(&f.times(&a[rank][j]));
                a[r][j] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over GF(2)(D): clear denominators row by row, then fraction-free elimination with
/// content removal after each step.
pub fn rank_rational(m: &PolyMatrix<RationalFn>) -> usize {
    let mut a: Vec<Vec<LaurentPoly>> = m.to_rows().into_iter().map(clear_denominators).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pick = (rank..rows).filter(|&r| !a[r][col].is_zero()).min_by_key(|&r| a[r][col].weight());
        let Some(p) = pick else { continue };
        a.swap(rank, p);
        let piv = a[rank][col].clone();
        for r in rank + 1..rows {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in col..cols {
                a[r][j] = piv.mul(&a[r][j]).add(&f.mul(&a[rank][j]));
            }
            primitive_row(&mut a[r]);
        }
        rank += 1;
    }
    rank
}

/// Multiplies a rational row by the product of its distinct denominators.
pub fn clear_denominators(row: Vec<RationalFn>) -> Vec<LaurentPoly> {
    let mut dens: Vec<LaurentPoly> = Vec::new();
    for e in &row {
        if !e.den().is_one() && !dens.contains(e.den()) {
            dens.push(e.den().clone());
        }
    }
    let mut l = LaurentPoly::one();
    for d in &dens {
        let g = poly_gcd(&l, d).unwrap();
        l = l.mul(&d.exact_div(&g).unwrap());
    }
    row.iter().map(|e| e.mul_poly(&l).to_poly().expect("denominator cleared")).collect()
}

/// Reduced row echelon form over a field; returns the nonzero rows and pivot columns.
pub fn rref<F: Field>(m: &PolyMatrix<F>) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][col].inv().unwrap();
        for j in col..cols {
            a[rank][j] = a[rank][j].times(&inv);
        }
        for r in 0..rows {
            if r == rank || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in col..cols {
                let v = a[r][j].plus(&f.times(&a[rank][j]));
                a[r][j] = v;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    a.truncate(rank);
    (a, pivots)
}

/// Basis of {y : M y = 0} over a field.
pub fn right_null_space<F: Field>(m: &PolyMatrix<F>) -> Vec<Vec<F>> {
    let (r, pivots) = rref(m);
    let cols = m.cols();
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut y = vec![F::zero(); cols];
            y[f] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                // characteristic two: -a = a
                y[p] = r[i][f].clone();
            }
            y
        })
        .collect()
}

/// Row-space equality over a field via canonical reduced echelon forms.
pub fn rowspace_eq<F: Field>(a: &PolyMatrix<F>, b: &PolyMatrix<F>) -> bool {
    a.cols() == b.cols() && rref(a).0 == rref(b).0
}
