//! Dense GF(2) matrices with at most 64 columns, one machine word per row.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result, ZicError};

/// Row-major GF(2) matrix. Bit `j` of row word `i` is entry `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBitMatrix", into = "RawBitMatrix")]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawBitMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<Vec<u8>>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if cols > 64 {
            return Err(invalid(format!("{cols} columns exceed the 64-column limit")));
        }
        Ok(Self {
            rows,
            cols,
            data: vec![0; rows],
        })
    }

    /// Builds a matrix from explicit 0/1 rows.
    pub fn from_rows(rows: usize, cols: usize, bits: &[Vec<u8>]) -> Result<Self> {
        let mut out = Self::zeros(rows, cols)?;
        if bits.len() != rows {
            return Err(invalid(format!("expected {rows} rows, got {}", bits.len())));
        }
        for (i, row) in bits.iter().enumerate() {
            if row.len() != cols {
                return Err(invalid(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, &b) in row.iter().enumerate() {
                match b {
                    0 => {}
                    1 => out.data[i] |= 1 << j,
                    other => return Err(invalid(format!("matrix entry {other} is not a bit"))),
                }
            }
        }
        Ok(out)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows && col < self.cols, "index out of range");
        self.data[row] >> col & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        if value {
            self.data[row] |= 1 << col;
        } else {
            self.data[row] &= !(1 << col);
        }
    }

    pub fn toggle(&mut self, row: usize, col: usize) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        self.data[row] ^= 1 << col;
    }

    /// Matrix-vector product over GF(2); bit `j` of `v` is input coordinate `j`.
    pub fn mul_vec(&self, v: u64) -> u64 {
        self.data
            .iter()
            .enumerate()
            .fold(0, |acc, (i, row)| acc | (((row & v).count_ones() as u64) & 1) << i)
    }

    /// Column `j` packed as a word (bit `i` is row `i`).
    pub fn column(&self, col: usize) -> u64 {
        assert!(col < self.cols, "column out of range");
        self.data
            .iter()
            .enumerate()
            .fold(0, |acc, (i, row)| acc | (row >> col & 1) << i)
    }

    pub fn row_word(&self, row: usize) -> u64 {
        self.data[row]
    }

    pub(crate) fn ensure_shape(&self, rows: usize, cols: usize, what: &str) -> Result<()> {
        if self.rows != rows || self.cols != cols {
            return Err(ZicError::Validation(format!(
                "{what} is {}x{}, expected {rows}x{cols}",
                self.rows, self.cols
            )));
        }
        Ok(())
    }
}

impl TryFrom<RawBitMatrix> for BitMatrix {
    type Error = ZicError;

    fn try_from(raw: RawBitMatrix) -> Result<Self> {
        BitMatrix::from_rows(raw.rows, raw.cols, &raw.bits)
    }
}

impl From<BitMatrix> for RawBitMatrix {
    fn from(m: BitMatrix) -> Self {
        let bits = (0..m.rows)
            .map(|i| (0..m.cols).map(|j| u8::from(m.get(i, j))).collect())
            .collect();
        RawBitMatrix {
            rows: m.rows,
            cols: m.cols,
            bits,
        }
    }
}

/// Dimension of the GF(2) span of a set of packed vectors.
pub fn rank(vectors: &[u64]) -> usize {
    // XOR basis indexed by leading bit.
    let mut basis = [0u64; 64];
    let mut r = 0;
    for &v in vectors {
        let mut x = v;
        while x != 0 {
            let lead = 63 - x.leading_zeros() as usize;
            if basis[lead] == 0 {
                basis[lead] = x;
                r += 1;
                break;
            }
            x ^= basis[lead];
        }
    }
    r
}

/// True iff every vector of `sub` lies in the span of `span`.
pub fn span_contains(span: &[u64], sub: &[u64]) -> bool {
    let base = rank(span);
    let mut all = span.to_vec();
    all.extend_from_slice(sub);
    rank(&all) == base
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_sets() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[0, 0]), 0);
        assert_eq!(rank(&[0b011, 0b101, 0b110]), 2);
        assert_eq!(rank(&[0b001, 0b010, 0b100]), 3);
        assert_eq!(rank(&[u64::MAX, 1 << 63, u64::MAX >> 1]), 2);
    }

    #[test]
    fn span_containment() {
        assert!(span_contains(&[0b011, 0b101], &[0b110]));
        assert!(!span_contains(&[0b011], &[0b001]));
        assert!(span_contains(&[], &[0]));
    }

    #[test]
    fn mul_and_columns_agree() {
        let m = BitMatrix::from_rows(3, 2, &[vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(m.column(0), 0b011);
        assert_eq!(m.column(1), 0b110);
        assert_eq!(m.mul_vec(0b01), 0b011);
        assert_eq!(m.mul_vec(0b11), 0b101);
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(BitMatrix::from_rows(1, 2, &[vec![1, 2]]).is_err());
        assert!(BitMatrix::from_rows(2, 2, &[vec![1, 0]]).is_err());
        assert!(BitMatrix::zeros(1, 65).is_err());
    }

    #[test]
    fn json_keeps_empty_shapes() {
        let m = BitMatrix::zeros(0, 5).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        let back: BitMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back.rows(), 0);
        assert_eq!(back.cols(), 5);
    }
}
