//! Dense GF(2) linear algebra on bit-packed rows.

use rand::Rng;

use super::ParityCheckMatrix;

/// Bit-packed binary vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.set(i);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }
}

fn packed_rows(h: &ParityCheckMatrix) -> Vec<BitVec> {
    h.checks()
        .map(|row| {
            let mut v = BitVec::zeros(h.n());
            for &i in row {
                v.set(i);
            }
            v
        })
        .collect()
}

/// Reduced row echelon form; returns the pivot column of each nonzero row.
fn rref(rows: &mut Vec<BitVec>, n: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&k| rows[k].get(col)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row.get(col) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Rank of `H` over GF(2).
pub fn rank(h: &ParityCheckMatrix) -> usize {
    let mut rows = packed_rows(h);
    rref(&mut rows, h.n()).len()
}

/// A basis of the code `{x : Hx = 0 (mod 2)}`.
#[derive(Debug, Clone)]
pub struct NullspaceBasis {
    n: usize,
    vectors: Vec<BitVec>,
}

impl NullspaceBasis {
    /// Code dimension `k`.
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    pub fn block_length(&self) -> usize {
        self.n
    }

    pub fn vectors(&self) -> &[BitVec] {
        &self.vectors
    }

    /// XOR of the basis vectors whose coefficient is 1.
    pub fn combine(&self, coefficients: &[bool]) -> Vec<u8> {
        let mut acc = BitVec::zeros(self.n);
        for (v, &c) in self.vectors.iter().zip(coefficients) {
            if c {
                acc.xor_assign(v);
            }
        }
        acc.to_bits()
    }

    /// Uniformly random codeword: each basis vector is included with
    /// probability 1/2.
    pub fn sample_codeword<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u8> {
        let mut acc = BitVec::zeros(self.n);
        let mut word = 0u64;
        for (k, v) in self.vectors.iter().enumerate() {
            if k % 64 == 0 {
                word = rng.gen();
            }
            if word >> (k % 64) & 1 == 1 {
                acc.xor_assign(v);
            }
        }
        acc.to_bits()
    }
}

/// Basis of the null space by Gaussian elimination; one vector per free
/// column of the reduced echelon form.
pub fn nullspace_basis(h: &ParityCheckMatrix) -> NullspaceBasis {
    let n = h.n();
    let mut rows = packed_rows(h);
    let pivots = rref(&mut rows, n);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = BitVec::zeros(n);
            v.set(free);
            for (row, &p) in rows.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p);
                }
            }
            v
        })
        .collect();
    NullspaceBasis { n, vectors }
}
