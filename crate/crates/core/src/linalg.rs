//! Dense matrices over a prime field `GF(p)`.

use serde::{Deserialize, Serialize};

use crate::gf::inv_mod;

/// Row-major matrix with entries in `0..p`. The modulus is carried by callers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matrix {
    rows: Vec<Vec<u32>>,
}

impl Matrix {
    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Self {
        if let Some(first) = rows.first() {
            assert!(rows.iter().all(|r| r.len() == first.len()), "ragged matrix");
        }
        Matrix { rows }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix {
            rows: vec![vec![0; ncols]; nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = 1;
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.rows[i][j]
    }

    pub fn into_rows(self) -> Vec<Vec<u32>> {
        self.rows
    }

    pub fn push_row(&mut self, row: Vec<u32>) {
        assert!(
            self.rows.is_empty() || row.len() == self.ncols(),
            "row length mismatch"
        );
        self.rows.push(row);
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.nrows(), other.nrows());
        Matrix {
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.iter().chain(b).copied().collect())
                .collect(),
        }
    }

    /// Drops column `j`.
    pub fn without_column(&self, j: usize) -> Matrix {
        Matrix {
            rows: self
                .rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect(),
        }
    }

    /// Columns `range` as a new matrix.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Matrix {
        Matrix {
            rows: self
                .rows
                .iter()
                .map(|r| r[range.clone()].to_vec())
                .collect(),
        }
    }

    /// `self * self^T mod p`.
    pub fn gram(&self, p: u32) -> Matrix {
        let k = self.nrows();
        let mut g = Self::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let v = dot(&self.rows[i], &self.rows[j], p);
                g.rows[i][j] = v;
                g.rows[j][i] = v;
            }
        }
        g
    }

    /// `msg * self mod p`.
    pub fn encode(&self, msg: &[u32], p: u32) -> Vec<u32> {
        assert_eq!(msg.len(), self.nrows());
        let mut out = vec![0u64; self.ncols()];
        for (row, &c) in self.rows.iter().zip(msg).filter(|(_, &c)| c != 0) {
            for (o, &v) in out.iter_mut().zip(row) {
                *o += c as u64 * v as u64;
            }
        }
        out.into_iter().map(|v| (v % p as u64) as u32).collect()
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, p: u32) -> Vec<usize> {
        let (nr, nc) = (self.nrows(), self.ncols());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..nc {
            if r == nr {
                break;
            }
            let Some(piv) = (r..nr).find(|&i| self.rows[i][c] != 0) else {
                continue;
            };
            self.rows.swap(r, piv);
            let inv = inv_mod(self.rows[r][c], p).expect("pivot is nonzero");
            scale_row(&mut self.rows[r], inv, p);
            for i in 0..nr {
                if i != r && self.rows[i][c] != 0 {
                    let f = self.rows[i][c];
                    let (src, dst) = if i < r {
                        let (a, b) = self.rows.split_at_mut(r);
                        (&b[0], &mut a[i])
                    } else {
                        let (a, b) = self.rows.split_at_mut(i);
                        (&a[r], &mut b[0])
                    };
                    axpy(dst, src, p - f, p);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, p: u32) -> usize {
        self.clone().rref(p).len()
    }

    /// Basis of `{x : self * x^T = 0}`, i.e. of the dual of the row space.
    pub fn nullspace(&self, p: u32) -> Matrix {
        let nc = self.ncols();
        let mut r = self.clone();
        let pivots = r.rref(p);
        let free: Vec<usize> = (0..nc).filter(|c| !pivots.contains(c)).collect();
        let rows = free
            .iter()
            .map(|&f| {
                let mut v = vec![0u32; nc];
                v[f] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - r.rows[i][f]) % p;
                }
                v
            })
            .collect();
        Matrix { rows }
    }
}

pub fn dot(a: &[u32], b: &[u32], p: u32) -> u32 {
    (a.iter()
        .zip(b)
        .map(|(&x, &y)| x as u64 * y as u64)
        .sum::<u64>()
        % p as u64) as u32
}

fn scale_row(row: &mut [u32], c: u32, p: u32) {
    row.iter_mut()
        .for_each(|v| *v = (*v as u64 * c as u64 % p as u64) as u32);
}

/// `dst += c * src`.
pub fn axpy(dst: &mut [u32], src: &[u32], c: u32, p: u32) {
    let c = c as u64;
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = ((*d as u64 + c * s as u64) % p as u64) as u32;
    }
}
