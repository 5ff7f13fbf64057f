//! Entanglement distillation from arbitrary convolutional generators by appending noiseless
//! ebit columns that cancel the shifted symplectic products.

use serde::{Deserialize, Serialize};

use crate::algebra::{poly_gcd, LaurentPoly};
use crate::conv_core::{shifted_omega, shifted_product, ConvCheckMatrix};
use crate::error::{Error, Result};
use crate::pauli::ConvGenerator;
use crate::ratio::Ratio;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DistillConstruction {
    /// Augmented stabilizer over n + m qubits per frame; the last m are noiseless.
    pub stabilizer: ConvCheckMatrix,
    pub n: usize,
    pub m: usize,
    /// Measured generators per frame.
    pub generators: usize,
    pub yield_: Ratio,
    pub catalytic_ebits: usize,
    pub noiseless_columns: Vec<usize>,
}

/// Terms with exponent >= 0.
pub fn positive_part(p: &LaurentPoly) -> LaurentPoly {
    p.positive_part()
}

fn append(g: &ConvGenerator, z: &[LaurentPoly], x: &[LaurentPoly]) -> ConvGenerator {
    let mut out = g.clone();
    out.z.extend_from_slice(z);
    out.x.extend_from_slice(x);
    out.n += z.len();
    out
}

/// [z | x] -> [z, (u.u)^+ | x, 1]
pub fn augment_single(u: &ConvGenerator) -> Result<ConvGenerator> {
    let s = shifted_product(u, u)?;
    Ok(append(u, &[positive_part(&s)], &[LaurentPoly::one()]))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AugmentForm {
    /// row i: (0, .., u_i^+, u_{i,i+1}, .., u_{i,m} | e_i)
    #[default]
    Upper,
    /// row i: (u_{i,1}, .., u_{i,i-1}, u_i^+, 0, .. | e_i)
    Lower,
}

/// Frames spanned by the longest generator.
fn constraint_length(h: &ConvCheckMatrix) -> usize {
    h.gens.iter().filter_map(|g| g.frame_range()).map(|(lo, hi)| (hi - lo + 1) as usize).max().unwrap_or(0)
}

fn finish(stabilizer: ConvCheckMatrix, n: usize, m: usize) -> DistillConstruction {
    let generators = stabilizer.len();
    let nu = constraint_length(&stabilizer);
    DistillConstruction {
        n,
        m,
        generators,
        yield_: Ratio::new(n.saturating_sub(generators), n),
        catalytic_ebits: (n + m) * nu,
        noiseless_columns: (n..n + m).collect(),
        stabilizer,
    }
}

pub fn augment_multi(u: &ConvCheckMatrix, form: AugmentForm) -> Result<DistillConstruction> {
    let m = u.len();
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut z = vec![LaurentPoly::zero(); m];
        for j in 0..m {
            let keep = match form {
                AugmentForm::Upper => j > i,
                AugmentForm::Lower => j < i,
            };
            if j == i {
                z[j] = positive_part(&shifted_product(&u.gens[i], &u.gens[i])?);
            } else if keep {
                z[j] = shifted_product(&u.gens[i], &u.gens[j])?;
            }
        }
        let mut x = vec![LaurentPoly::zero(); m];
        x[i] = LaurentPoly::one();
        rows.push(append(&u.gens[i], &z, &x));
    }
    Ok(finish(ConvCheckMatrix::new(u.n + m, rows)?, u.n, m))
}

fn pure_z(g: &ConvGenerator) -> bool {
    g.x.iter().all(|e| e.is_zero())
}

fn pure_x(g: &ConvGenerator) -> bool {
    g.z.iter().all(|e| e.is_zero())
}

fn divide_content(g: &mut ConvGenerator) -> Result<()> {
    let mut acc: Option<LaurentPoly> = None;
    for e in g.z.iter().chain(&g.x).filter(|e| !e.is_zero()) {
        acc = Some(match acc {
            None => e.delay_free().1,
            Some(a) => poly_gcd(&a, e)?,
        });
    }
    if let Some(d) = acc.filter(|d| !d.is_one()) {
        for e in g.z.iter_mut().chain(g.x.iter_mut()) {
            *e = e.exact_div(&d).expect("gcd divides");
        }
    }
    Ok(())
}

/// Pairing Gram-Schmidt on pure-Z rows followed by pure-X rows, then one noiseless column
/// per pair.
pub fn css_distill_augment(w: &ConvCheckMatrix) -> Result<DistillConstruction> {
    let n = w.n;
    let p = w.gens.iter().take_while(|g| pure_z(g)).count();
    if !w.gens[p..].iter().all(pure_x) {
        return Err(Error::InvalidParams("rows must be pure Z followed by pure X".into()));
    }
    let mut rows = w.gens.clone();
    let m = rows.len();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut lone: Vec<usize> = Vec::new();
    let mut idx = 0;
    while idx < m {
        let a = idx;
        let partner = (a + 1..m)
            .map(|j| shifted_product(&rows[a], &rows[j]).map(|s| (j, s)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .find(|(_, s)| !s.is_zero());
        let Some((j, _)) = partner else {
            lone.push(a);
            idx += 1;
            continue;
        };
        rows.swap(j, a + 1);
        let b = a + 1;
        for r in b + 1..m {
            // r meets whichever of a, b has the opposite type
            let (mate, same) = if pure_z(&rows[r]) == pure_z(&rows[a]) { (b, a) } else { (a, b) };
            let s = shifted_product(&rows[r], &rows[mate])?;
            if s.is_zero() {
                continue;
            }
            let f = shifted_product(&rows[same], &rows[mate])?;
            let mut nr = rows[r].scale(&f).add(&rows[same].scale(&s));
            divide_content(&mut nr)?;
            rows[r] = nr;
        }
        pairs.push((a, b));
        idx += 2;
    }
    let c = pairs.len();
    let mut out = Vec::with_capacity(m);
    for (i, &(a, b)) in pairs.iter().enumerate() {
        let f = shifted_product(&rows[a], &rows[b])?;
        let mut z = vec![LaurentPoly::zero(); c];
        z[i] = f;
        out.push(append(&rows[a], &z, &vec![LaurentPoly::zero(); c]));
    }
    for (i, &(_, b)) in pairs.iter().enumerate() {
        let mut x = vec![LaurentPoly::zero(); c];
        x[i] = LaurentPoly::one();
        out.push(append(&rows[b], &vec![LaurentPoly::zero(); c], &x));
    }
    for &u in &lone {
        out.push(append(&rows[u], &vec![LaurentPoly::zero(); c], &vec![LaurentPoly::zero(); c]));
    }
    Ok(finish(ConvCheckMatrix::new(n + c, out)?, n, c))
}

pub fn protocol_yield(d: &DistillConstruction) -> Ratio {
    d.yield_
}

impl DistillConstruction {
    pub fn is_commuting(&self) -> bool {
        shifted_omega(&self.stabilizer).is_zero()
    }
}
