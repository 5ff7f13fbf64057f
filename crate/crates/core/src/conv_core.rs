//! Convolutional check matrices, shifted symplectic products, expansion and the
//! polynomial symplectic Gram-Schmidt procedure.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::matrix::clear_denominators;
use crate::algebra::{poly_gcd, rank_ff, rank_rational, Gf4Poly, LaurentPoly, PolyMatrix, RationalFn, Ring};
use crate::error::{Error, Result};
use crate::pauli::ConvGenerator;

pub type ShiftedOmega = PolyMatrix<LaurentPoly>;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct ConvCheckMatrix<T = LaurentPoly> {
    pub n: usize,
    pub gens: Vec<ConvGenerator<T>>,
}

impl<T: Ring> ConvCheckMatrix<T> {
    pub fn new(n: usize, gens: Vec<ConvGenerator<T>>) -> Result<Self> {
        if gens.iter().any(|g| g.n != n || g.z.len() != n || g.x.len() != n) {
            return Err(Error::DimensionMismatch(format!("generator frame differs from n={n}")));
        }
        Ok(ConvCheckMatrix { n, gens })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> ConvCheckMatrix<U> {
        ConvCheckMatrix {
            n: self.n,
            gens: self
                .gens
                .iter()
                .map(|g| ConvGenerator { n: g.n, z: g.z.iter().map(&f).collect(), x: g.x.iter().map(&f).collect() })
                .collect(),
        }
    }

    /// The (rows x 2n) matrix [Z(D) | X(D)].
    pub fn as_matrix(&self) -> PolyMatrix<T> {
        if self.gens.is_empty() {
            return PolyMatrix::zeros(0, 2 * self.n);
        }
        PolyMatrix::from_rows(self.gens.iter().map(|g| g.entries()).collect()).unwrap()
    }

    pub fn from_matrix(m: &PolyMatrix<T>) -> Self {
        let n = m.cols() / 2;
        ConvCheckMatrix { n, gens: m.to_rows().into_iter().map(ConvGenerator::from_entries).collect() }
    }

    pub fn z_matrix(&self) -> PolyMatrix<T> {
        PolyMatrix::from_rows(self.gens.iter().map(|g| g.z.clone()).collect()).unwrap()
    }

    pub fn x_matrix(&self) -> PolyMatrix<T> {
        PolyMatrix::from_rows(self.gens.iter().map(|g| g.x.clone()).collect()).unwrap()
    }
}

fn parse_check_text<T: Ring>(text: &str, row: impl Fn(&str) -> Result<ConvGenerator<T>>) -> Result<ConvCheckMatrix<T>> {
    let mut n = None;
    let mut gens = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        if let Some(rest) = line.strip_prefix("frame") {
            let v = rest.trim().trim_start_matches("n=").trim();
            n = Some(v.parse().map_err(|_| Error::Parse(format!("bad frame header '{line}'")))?);
            continue;
        }
        gens.push(row(line)?);
    }
    let n = n.or(gens.first().map(|g| g.n)).ok_or_else(|| Error::Parse("no generators".into()))?;
    ConvCheckMatrix::new(n, gens).map_err(|e| Error::Parse(e.to_string()))
}

impl ConvCheckMatrix<RationalFn> {
    /// Same text format as `parse`, entries may be "(num)/(den)".
    pub fn parse_rational(text: &str) -> Result<Self> {
        parse_check_text(text, ConvGenerator::parse_rational_row)
    }
}

impl ConvCheckMatrix<LaurentPoly> {
    pub fn to_rational(&self) -> ConvCheckMatrix<RationalFn> {
        self.map(|p| RationalFn::from_poly(p.clone()))
    }

    /// Parses the text format: optional header `frame n=<n>`, then one generator per line as
    /// comma-separated Z polynomials, "|", comma-separated X polynomials.
    pub fn parse(text: &str) -> Result<Self> {
        parse_check_text(text, ConvGenerator::parse_row)
    }

    pub fn shift_rows(&self, k: i64) -> Self {
        ConvCheckMatrix { n: self.n, gens: self.gens.iter().map(|g| g.shift(k)).collect() }
    }
}

impl<T: Ring> fmt::Display for ConvCheckMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "frame n={}", self.n)?;
        for g in &self.gens {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Classical check matrix rows, one comma-separated polynomial row per line.
pub fn parse_classical(text: &str) -> Result<PolyMatrix<LaurentPoly>> {
    let rows: Vec<Vec<LaurentPoly>> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("frame"))
        .map(|l| l.split(',').map(str::trim).map(str::parse).collect())
        .collect::<Result<_>>()?;
    PolyMatrix::from_rows(rows).map_err(|e| Error::Parse(e.to_string()))
}

/// Quaternary polynomial rows, comma-separated entries.
pub fn parse_gf4_conv(text: &str) -> Result<PolyMatrix<Gf4Poly>> {
    let rows: Vec<Vec<Gf4Poly>> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("frame"))
        .map(|l| l.split(',').map(str::trim).map(str::parse).collect())
        .collect::<Result<_>>()?;
    PolyMatrix::from_rows(rows).map_err(|e| Error::Parse(e.to_string()))
}

/// (u . v)(D) = sum_i z_i(D) x'_i(D^-1) + x_i(D) z'_i(D^-1).
pub fn shifted_product<T: Ring>(u: &ConvGenerator<T>, v: &ConvGenerator<T>) -> Result<T> {
    if u.n != v.n {
        return Err(Error::DimensionMismatch(format!("frames {} and {}", u.n, v.n)));
    }
    let mut acc = T::zero();
    for i in 0..u.n {
        if !u.z[i].is_zero() && !v.x[i].is_zero() {
            acc = acc.plus(&u.z[i].times(&v.x[i].conj()));
        }
        if !u.x[i].is_zero() && !v.z[i].is_zero() {
            acc = acc.plus(&u.x[i].times(&v.z[i].conj()));
        }
    }
    Ok(acc)
}

/// Whether `e` lies in the row space of `rows` over GF(2)(D).
pub fn in_rowspace(rows: &[ConvGenerator], e: &ConvGenerator) -> bool {
    if e.is_zero() {
        return true;
    }
    let mut m: Vec<Vec<LaurentPoly>> = rows.iter().map(|g| g.entries()).collect();
    let before = if m.is_empty() { 0 } else { rank_ff(&PolyMatrix::from_rows(m.clone()).unwrap()) };
    m.push(e.entries());
    rank_ff(&PolyMatrix::from_rows(m).unwrap()) == before
}

/// Anticommutation bits of a single-frame error `e` with each generator: bit (g, t) is the
/// coefficient of D^t in (g . e), i.e. whether e meets the frame-t part of g.
pub fn syndrome_bits(gens: &[ConvGenerator], e: &ConvGenerator, window: usize) -> Result<Vec<u8>> {
    let mut bits = Vec::with_capacity(gens.len() * window);
    for g in gens {
        let p = shifted_product(g, e)?;
        bits.extend((0..window as i64).map(|t| p.coeff(t) as u8));
    }
    Ok(bits)
}

pub fn shifted_omega<T: Ring>(h: &ConvCheckMatrix<T>) -> PolyMatrix<T> {
    let k = h.gens.len();
    let mut out = PolyMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            out.set(i, j, shifted_product(&h.gens[i], &h.gens[j]).unwrap());
        }
    }
    out
}

/// R(D) Omega(D) R^T(D^-1).
pub fn transform_omega(omega: &PolyMatrix<RationalFn>, r: &PolyMatrix<RationalFn>) -> Result<PolyMatrix<RationalFn>> {
    if r.rows() != r.cols() || r.cols() != omega.rows() {
        return Err(Error::DimensionMismatch("R must be square and match Omega".into()));
    }
    if rank_rational(r) < r.rows() {
        return Err(Error::Singular);
    }
    r.mul(omega)?.mul(&r.conj_transpose())
}

/// Row transformation H -> R H of a check matrix.
pub fn transform_rows(
    h: &ConvCheckMatrix<RationalFn>,
    r: &PolyMatrix<RationalFn>,
) -> Result<ConvCheckMatrix<RationalFn>> {
    Ok(ConvCheckMatrix::from_matrix(&r.mul(&h.as_matrix())?))
}

/// Re-indexes one Laurent polynomial entry for expansion by l: exponents s with
/// s + p - q divisible by l map to D^((s + p - q)/l).
fn expand_entry(e: &LaurentPoly, l: i64, p: i64, q: i64) -> LaurentPoly {
    LaurentPoly::from_exponents(
        e.terms().iter().map(|&s| s + p - q).filter(|t| t.rem_euclid(l) == 0).map(|t| t.div_euclid(l)),
    )
}

pub fn expand_check(h: &ConvCheckMatrix, l: usize) -> Result<ConvCheckMatrix> {
    if l == 0 {
        return Err(Error::InvalidParams("expansion factor must be at least 1".into()));
    }
    let (n, rows) = (h.n, h.gens.len());
    let li = l as i64;
    let mut gens = vec![ConvGenerator::zero(n * l); rows * l];
    for p in 0..l {
        for (r, g) in h.gens.iter().enumerate() {
            let out = &mut gens[p * rows + r];
            for q in 0..l {
                for c in 0..n {
                    out.z[q * n + c] = expand_entry(&g.z[c], li, p as i64, q as i64);
                    out.x[q * n + c] = expand_entry(&g.x[c], li, p as i64, q as i64);
                }
            }
        }
    }
    Ok(ConvCheckMatrix { n: n * l, gens })
}

pub fn expand_omega(omega: &ShiftedOmega, l: usize, rows_per_block: usize) -> Result<ShiftedOmega> {
    if l == 0 {
        return Err(Error::InvalidParams("expansion factor must be at least 1".into()));
    }
    let rows = rows_per_block;
    if omega.rows() != rows || omega.cols() != rows {
        return Err(Error::DimensionMismatch("Omega size differs from rows_per_block".into()));
    }
    let li = l as i64;
    let mut out = PolyMatrix::zeros(rows * l, rows * l);
    for p in 0..l {
        for q in 0..l {
            for r in 0..rows {
                for s in 0..rows {
                    out.set(p * rows + r, q * rows + s, expand_entry(omega.get(r, s), li, p as i64, q as i64));
                }
            }
        }
    }
    Ok(out)
}

/// Half the rank of the shifted symplectic product matrix over GF(2)(D).
pub fn conv_ebits(h: &ConvCheckMatrix) -> usize {
    rank_ff(&shifted_omega(h)) / 2
}

pub fn conv_ebits_rational(h: &ConvCheckMatrix<RationalFn>) -> usize {
    rank_rational(&shifted_omega(h)) / 2
}

/// rank H(D) H^dagger(D^-1) over quaternary polynomials.
pub fn conv_ebits_gf4(h: &PolyMatrix<Gf4Poly>) -> usize {
    rank_ff(&h.mul(&h.conj_transpose()).expect("shapes agree"))
}

/// Logged row operation on a check matrix with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConvRowOp {
    /// row *= f
    Scale { row: usize, f: RationalFn },
    /// dst += f * src
    AddMul { src: usize, dst: usize, f: RationalFn },
}

pub fn apply_row_ops(h: &ConvCheckMatrix<RationalFn>, ops: &[ConvRowOp]) -> ConvCheckMatrix<RationalFn> {
    let mut rows = h.gens.clone();
    for op in ops {
        match op {
            ConvRowOp::Scale { row, f } => rows[*row] = rows[*row].scale(f),
            ConvRowOp::AddMul { src, dst, f } => {
                let t = rows[*src].scale(f);
                rows[*dst] = rows[*dst].add(&t);
            }
        }
    }
    ConvCheckMatrix { n: h.n, gens: rows }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvDecomposition {
    pub c: usize,
    pub a: usize,
    /// Expansion factor used.
    pub l: usize,
    /// The l-expanded input.
    pub expanded: ConvCheckMatrix,
    /// Pairs then isotropic rows; Omega = J + ... + J + 0 + ... + 0.
    pub reordered: ConvCheckMatrix<RationalFn>,
    /// `reordered` with each row multiplied through by its denominators and made primitive.
    pub finitized: ConvCheckMatrix,
    /// Operations on the rows of `expanded` (fixed indices) before reordering.
    pub row_ops: Vec<ConvRowOp>,
    /// Index in `expanded` of each row of `reordered`.
    pub order: Vec<usize>,
}

pub const DEFAULT_L_MAX: usize = 12;

pub fn poly_sgsop(h: &ConvCheckMatrix, l_max: usize) -> Result<ConvDecomposition> {
    if h.gens.iter().any(|g| g.is_zero()) {
        return Err(Error::DependentRows);
    }
    for l in 1..=l_max.max(1) {
        let expanded = expand_check(h, l)?;
        if rank_ff(&expanded.as_matrix()) < expanded.len() {
            return Err(Error::DependentRows);
        }
        if let Some(d) = sgsop_once(&expanded)? {
            return Ok(ConvDecomposition { l, ..d });
        }
    }
    Err(Error::ExpansionLimit(l_max))
}

fn sgsop_once(expanded: &ConvCheckMatrix) -> Result<Option<ConvDecomposition>> {
    let mut rows = expanded.to_rational().gens;
    let mut remaining: Vec<usize> = (0..rows.len()).collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut iso = Vec::new();
    let mut ops = Vec::new();
    let prod = |rows: &[ConvGenerator<RationalFn>], i: usize, j: usize| shifted_product(&rows[i], &rows[j]).unwrap();

    while !remaining.is_empty() {
        // isotropic: orthogonal to every remaining row, itself included
        if let Some(pos) = remaining.iter().position(|&i| remaining.iter().all(|&j| prod(&rows, i, j).is_zero())) {
            iso.push(remaining.remove(pos));
            continue;
        }
        let candidates: Vec<(usize, usize)> = remaining
            .iter()
            .enumerate()
            .flat_map(|(a, &i)| remaining[a + 1..].iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| {
                prod(&rows, i, i).is_zero() && prod(&rows, j, j).is_zero() && !prod(&rows, i, j).is_zero()
            })
            .collect();
        let monomial = candidates.iter().copied().find(|&(i, j)| {
            let p = prod(&rows, i, j);
            p.is_poly() && p.num().is_monomial()
        });
        let Some((i, j)) = monomial.or(candidates.first().copied()) else {
            return Ok(None);
        };
        let f = prod(&rows, j, i).inv().unwrap();
        if f != RationalFn::one() {
            rows[j] = rows[j].scale(&f);
            ops.push(ConvRowOp::Scale { row: j, f });
        }
        remaining.retain(|&r| r != i && r != j);
        for &r in &remaining {
            let a = prod(&rows, r, j);
            let b = prod(&rows, r, i);
            if !a.is_zero() {
                rows[r] = rows[r].add(&rows[i].scale(&a));
                ops.push(ConvRowOp::AddMul { src: i, dst: r, f: a });
            }
            if !b.is_zero() {
                rows[r] = rows[r].add(&rows[j].scale(&b));
                ops.push(ConvRowOp::AddMul { src: j, dst: r, f: b });
            }
            if rows[r].is_zero() {
                return Err(Error::DependentRows);
            }
        }
        pairs.push((i, j));
    }
    let order: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).chain(iso.iter().copied()).collect();
    let reordered = ConvCheckMatrix { n: expanded.n, gens: order.iter().map(|&i| rows[i].clone()).collect() };
    let finitized = ConvCheckMatrix { n: expanded.n, gens: reordered.gens.iter().map(finitize).collect() };
    Ok(Some(ConvDecomposition {
        c: pairs.len(),
        a: iso.len(),
        l: 0,
        expanded: expanded.clone(),
        reordered,
        finitized,
        row_ops: ops,
        order,
    }))
}

/// Clears denominators of a rational generator and strips its polynomial content.
pub fn finitize(g: &ConvGenerator<RationalFn>) -> ConvGenerator {
    let mut row = clear_denominators(g.entries());
    crate::algebra::matrix::primitive_row(&mut row);
    ConvGenerator::from_entries(row)
}

/// Content (delay-free gcd of the entries) of a polynomial generator.
pub fn content(g: &ConvGenerator) -> Option<LaurentPoly> {
    let mut acc: Option<LaurentPoly> = None;
    for e in g.z.iter().chain(&g.x).filter(|e| !e.is_zero()) {
        acc = Some(match acc {
            None => e.delay_free().1,
            Some(a) => poly_gcd(&a, e).unwrap(),
        });
    }
    acc
}
