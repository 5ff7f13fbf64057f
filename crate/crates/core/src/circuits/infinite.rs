use serde::{Deserialize, Serialize};

use crate::algebra::{LaurentPoly, RationalFn};
use crate::block_ea::BlockGate;
use crate::error::{Error, Result};

/// Sliding-window circuit for multiplying one qubit stream by 1/f(D).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowCircuit {
    /// Qubits in the window, N = deg f - del f + 1.
    pub window: usize,
    /// Priming frames before the window is full.
    pub scratch_frames: usize,
    /// CNOTs applied each frame; the newest qubit is index N-1.
    pub gates: Vec<BlockGate>,
    /// Delay-free denominator.
    pub f: LaurentPoly,
}

pub fn realize_infinite_depth(r: &RationalFn) -> Result<WindowCircuit> {
    if r.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if !r.num().is_monomial() {
        return Err(Error::NonUnitNumerator(r.to_string()));
    }
    let f = r.den().clone();
    let deg = f.deg().unwrap() as usize;
    let window = deg + 1;
    let gates = f
        .terms()
        .iter()
        .rev()
        .filter(|&&e| e > 0)
        .map(|&e| BlockGate::Cnot(window - 1 - e as usize, window - 1))
        .collect();
    Ok(WindowCircuit { window, scratch_frames: deg, gates, f })
}

impl WindowCircuit {
    /// Pushes an X on frame 0 through `frames` applications of the window and returns the
    /// X pattern on the stream.
    pub fn simulate(&self, frames: usize) -> LaurentPoly {
        let mut bits = vec![false; frames];
        if frames > 0 {
            bits[0] = true;
        }
        let newest = self.window - 1;
        for t in 0..frames {
            for g in &self.gates {
                if let BlockGate::Cnot(c, tgt) = *g {
                    debug_assert_eq!(tgt, newest);
                    let back = newest - c;
                    if t >= back && bits[t - back] {
                        bits[t] = !bits[t];
                    }
                }
            }
        }
        LaurentPoly::from_exponents((0..frames).filter(|&t| bits[t]).map(|t| t as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_denominator() {
        let w = realize_infinite_depth(&RationalFn::one()).unwrap();
        assert_eq!((w.window, w.scratch_frames), (1, 0));
        assert!(w.gates.is_empty());
    }

    #[test]
    fn geometric_window() {
        let r: RationalFn = "(1)/(1+D)".parse().unwrap();
        let w = realize_infinite_depth(&r).unwrap();
        assert_eq!(w.window, 2);
        assert_eq!(w.gates, vec![BlockGate::Cnot(0, 1)]);
        assert_eq!(w.simulate(6), "1+D+D^2+D^3+D^4+D^5".parse().unwrap());
    }
}
