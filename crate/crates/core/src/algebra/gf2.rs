//! Dense binary matrices as rows of 0/1 bytes.

pub type BinMatrix = Vec<Vec<u8>>;

pub fn gf2_rref(m: &BinMatrix) -> (BinMatrix, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r][col] & 1 == 1) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && a[r][col] & 1 == 1 {
                for j in 0..cols {
                    a[r][j] ^= a[rank][j];
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    a.truncate(rank);
    (a, pivots)
}

pub fn gf2_rank(m: &BinMatrix) -> usize {
    gf2_rref(m).1.len()
}

pub fn gf2_mul(a: &BinMatrix, b: &BinMatrix) -> BinMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter().map(|row| (0..cols).map(|j| (0..inner).fold(0u8, |acc, k| acc ^ (row[k] & b[k][j]))).collect()).collect()
}

pub fn gf2_transpose(a: &BinMatrix) -> BinMatrix {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn gf2_add(a: &BinMatrix, b: &BinMatrix) -> BinMatrix {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p ^ q).collect()).collect()
}

pub fn gf2_rowspace_eq(a: &BinMatrix, b: &BinMatrix) -> bool {
    gf2_rref(a).0 == gf2_rref(b).0
}

/// Parses rows of 0/1 characters; whitespace inside a row is ignored.
pub fn parse_bin_matrix(text: &str) -> crate::error::Result<BinMatrix> {
    let mut out = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let row: Vec<u8> = line
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(crate::error::Error::Parse(format!("bad binary digit '{c}'"))),
            })
            .collect::<crate::error::Result<_>>()?;
        out.push(row);
    }
    if out.windows(2).any(|w| w[0].len() != w[1].len()) {
        return Err(crate::error::Error::Parse("ragged binary matrix".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming() -> BinMatrix {
        parse_bin_matrix("1010101\n0110011\n0001111").unwrap()
    }

    #[test]
    fn identity_rank() {
        let id: BinMatrix = (0..4).map(|i| (0..4).map(|j| (i == j) as u8).collect()).collect();
        assert_eq!(gf2_rank(&id), 4);
    }

    #[test]
    fn hamming_is_self_orthogonal() {
        let h = hamming();
        let hht = gf2_mul(&h, &gf2_transpose(&h));
        // every pair of rows overlaps in an even number of positions
        assert!(hht.iter().flatten().all(|&b| b == 0));
        assert_eq!(gf2_rank(&hht), 0);
    }
}
