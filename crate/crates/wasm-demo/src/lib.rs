//! Browser bindings; every function takes text and returns text, errors as `error: ...`.

use eaqcc::block_ea::block_sgsop;
use eaqcc::conv_core::{expand_check, shifted_product, ConvCheckMatrix};
use eaqcc::pauli::{BlockCheckMatrix, ConvGenerator};
use wasm_bindgen::prelude::wasm_bindgen;

fn text(r: eaqcc::Result<String>) -> String {
    r.unwrap_or_else(|e| format!("error: {}: {e}", e.name()))
}

/// Shifted symplectic product of two generators written `z1, .. | x1, ..`.
#[wasm_bindgen]
pub fn product(u: &str, v: &str) -> String {
    text((|| {
        let u = ConvGenerator::parse_row(u.trim())?;
        let v = ConvGenerator::parse_row(v.trim())?;
        Ok(shifted_product(&u, &v)?.to_string())
    })())
}

/// Check matrix of the code whose frames are `factor` consecutive frames.
#[wasm_bindgen]
pub fn expand(matrix: &str, factor: usize) -> String {
    text((|| Ok(expand_check(&ConvCheckMatrix::parse(matrix)?, factor)?.to_string()))())
}

/// Ebits, ancillas and reordered generators of a block code given as Pauli strings.
#[wasm_bindgen]
pub fn gram_schmidt(paulis: &str) -> String {
    text((|| {
        let ea = block_sgsop(&BlockCheckMatrix::parse(paulis)?)?;
        Ok(format!("ebits {}\nancillas {}\n{}", ea.c, ea.a, ea.reordered))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operations() {
        assert_eq!(product("D | 1", "D | 1"), "D^-1+D");
        assert_eq!(expand("D | 1", 2), "frame n=2\n0, 1 | 1, 0\nD, 0 | 0, 1\n");
        let gs = gram_schmidt("ZXZI\nZZIZ\nXYXI\nXXIX");
        assert!(gs.starts_with("ebits 1\nancillas 2\n"), "{gs}");
        assert!(product("1+Q | 0", "0 | 1").starts_with("error: PARSE_ERROR"));
    }
}
