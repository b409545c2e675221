//! Dense 0/1 matrices as `Vec<Vec<u8>>`, one inner vector per row.

use std::collections::HashSet;

/// Matrix product mod 2 by the textbook triple loop.
pub fn naive_product(a: &[Vec<u8>], b: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let rows = a.len();
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![0u8; cols]; rows];
    for i in 0..rows {
        assert_eq!(a[i].len(), inner, "inner dimensions differ");
        for j in 0..cols {
            let mut acc = 0u8;
            for k in 0..inner {
                acc ^= a[i][k] & b[k][j] & 1;
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Kronecker product straight from the definition
/// `(A ⊗ B)[i*p + k][j*q + l] = A[i][j] * B[k][l]`.
pub fn kron_elementwise(a: &[Vec<u8>], b: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let (ar, ac) = (a.len(), a.first().map_or(0, Vec::len));
    let (br, bc) = (b.len(), b.first().map_or(0, Vec::len));
    let mut out = vec![vec![0u8; ac * bc]; ar * br];
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[i * br + k][j * bc + l] = a[i][j] & b[k][l] & 1;
                }
            }
        }
    }
    out
}

/// Rank as `log2 |row space|`, found by closing the span under addition.
///
/// Exponential in the rank; only meant for matrices with at most ~16 rows.
pub fn rank_by_span(m: &[Vec<u8>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut span: HashSet<Vec<u8>> = HashSet::new();
    span.insert(vec![0u8; cols]);
    for row in m {
        let row: Vec<u8> = row.iter().map(|v| v & 1).collect();
        let current: Vec<Vec<u8>> = span.iter().cloned().collect();
        for v in current {
            let sum: Vec<u8> = v.iter().zip(&row).map(|(x, y)| x ^ y).collect();
            span.insert(sum);
        }
    }
    let size = span.len();
    assert!(size.is_power_of_two());
    size.trailing_zeros() as usize
}

/// Row reduction on a scratch copy; used by the chain-complex oracle only.
pub(crate) fn rank_by_elimination(m: &[Vec<u8>]) -> usize {
    let mut rows: Vec<Vec<u8>> = m.iter().map(|r| r.iter().map(|v| v & 1).collect()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] == 1) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] == 1 {
                for (dst, src) in row.iter_mut().zip(&pivot_row) {
                    *dst ^= src;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_rank_small_cases() {
        assert_eq!(rank_by_span(&[vec![1, 0], vec![0, 1]]), 2);
        assert_eq!(rank_by_span(&[vec![1, 1], vec![1, 1]]), 1);
        assert_eq!(rank_by_span(&[vec![0, 0, 0]]), 0);
    }

    #[test]
    fn elimination_agrees_with_span() {
        let m = vec![
            vec![1, 0, 1, 1],
            vec![0, 1, 1, 0],
            vec![1, 1, 0, 1],
            vec![0, 0, 0, 1],
        ];
        assert_eq!(rank_by_elimination(&m), rank_by_span(&m));
    }

    #[test]
    fn kron_shape() {
        let k = kron_elementwise(&[vec![1, 1]], &[vec![1], vec![0]]);
        assert_eq!(k, vec![vec![1, 1], vec![0, 0]]);
    }
}
