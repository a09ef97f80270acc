//! Gaussian elimination over GF(2).

use alloc::vec;
use alloc::vec::Vec;

/// A dense GF(2) matrix with rows packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    cols: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl Gf2Matrix {
    pub fn new(cols: usize) -> Gf2Matrix {
        Gf2Matrix {
            cols,
            words: cols.div_ceil(64).max(1),
            rows: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn push_row(&mut self, bits: &[bool]) {
        assert_eq!(bits.len(), self.cols, "row length");
        let mut r = vec![0u64; self.words];
        for (i, &b) in bits.iter().enumerate() {
            if b {
                r[i / 64] |= 1 << (i % 64);
            }
        }
        self.rows.push(r);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r][c / 64] >> (c % 64) & 1 == 1
    }
}

/// Outcome of solving `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gf2Solution {
    Inconsistent,
    /// `values[c]` is `Some` exactly when every solution agrees on `x_c`.
    Solved {
        values: Vec<Option<bool>>,
        rank: usize,
    },
}

/// Solves `A x = b` and reports which unknowns are determined.
pub fn solve(a: &Gf2Matrix, b: &[bool]) -> Gf2Solution {
    assert_eq!(a.rows(), b.len(), "right-hand side length");
    let n = a.cols;
    let w = a.words;
    // Augmented rows: column `n` holds the right-hand side.
    let aw = (n + 1).div_ceil(64);
    let mut rows: Vec<Vec<u64>> = a
        .rows
        .iter()
        .zip(b)
        .map(|(r, &rhs)| {
            let mut x = vec![0u64; aw];
            x[..w.min(aw)].copy_from_slice(&r[..w.min(aw)]);
            if rhs {
                x[n / 64] |= 1 << (n % 64);
            }
            x
        })
        .collect();
    let bit = |r: &Vec<u64>, c: usize| r[c / 64] >> (c % 64) & 1 == 1;
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..rows.len()).find(|&i| bit(&rows[i], c)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && bit(row, c) {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| bit(r, n)) {
        return Gf2Solution::Inconsistent;
    }
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut values = vec![None; n];
    for (i, &c) in pivots.iter().enumerate() {
        let free = (0..n).any(|j| !is_pivot[j] && bit(&rows[i], j));
        if !free {
            values[c] = Some(bit(&rows[i], n));
        }
    }
    Gf2Solution::Solved { values, rank }
}
