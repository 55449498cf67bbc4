//! Exact products of matrices with arbitrary-precision nonnegative entries.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;
use rayon::prelude::*;

use crate::config::Kernel;
use crate::error::{Error, Result};
use crate::ops;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigUint>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigUint::zero(); rows * cols],
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigUint>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn from_u64(rows: usize, cols: usize, data: &[u64]) -> Self {
        Self::from_vec(rows, cols, data.iter().map(|&v| BigUint::from(v)).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigUint::from(1u8);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.data[i * self.cols + j]
    }

    pub fn into_vec(self) -> Vec<BigUint> {
        self.data
    }
}

/// Exact integer product `A·B` with the selected kernel. Both kernels give
/// identical results.
pub fn ring_matmul(a: &IntMatrix, b: &IntMatrix, kernel: Kernel, cutoff: usize) -> Result<IntMatrix> {
    if a.cols != b.rows {
        return Err(Error::Dimension(format!(
            "{}x{} times {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(match kernel {
        Kernel::Schoolbook => schoolbook(a, b),
        Kernel::Strassen => strassen(a, b, cutoff.max(1)),
    })
}

fn schoolbook(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (l, m, n) = (a.rows, a.cols, b.cols);
    let rows: Vec<(Vec<BigUint>, u64, u64)> = (0..l)
        .into_par_iter()
        .map(|i| {
            let mut out = vec![BigUint::zero(); n];
            let (mut mults, mut bits) = (0u64, 0u64);
            for k in 0..m {
                let x = &a.data[i * m + k];
                if x.is_zero() {
                    continue;
                }
                for (j, acc) in out.iter_mut().enumerate() {
                    let y = &b.data[k * n + j];
                    if y.is_zero() {
                        continue;
                    }
                    let p = x * y;
                    mults += 1;
                    bits += p.bits();
                    *acc += p;
                }
            }
            (out, mults, bits)
        })
        .collect();
    let mut data = Vec::with_capacity(l * n);
    let (mut mults, mut bits) = (0, 0);
    for (row, m_, b_) in rows {
        data.extend(row);
        mults += m_;
        bits += b_;
    }
    ops::add_ring_mults(mults, bits);
    IntMatrix::from_vec(l, n, data)
}

/// Square signed block used inside the Strassen recursion.
#[derive(Clone)]
struct Block {
    n: usize,
    data: Vec<BigInt>,
}

impl Block {
    fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    fn quadrant(&self, qi: usize, qj: usize) -> Self {
        let h = self.n / 2;
        let mut out = Self::zeros(h);
        for i in 0..h {
            let src = (qi * h + i) * self.n + qj * h;
            out.data[i * h..(i + 1) * h].clone_from_slice(&self.data[src..src + h]);
        }
        out
    }

    fn add(&self, o: &Self) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    fn mul_schoolbook(&self, o: &Self) -> (Self, u64, u64) {
        let n = self.n;
        let mut out = Self::zeros(n);
        let (mut mults, mut bits) = (0u64, 0u64);
        for i in 0..n {
            for k in 0..n {
                let x = &self.data[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = &o.data[k * n + j];
                    if y.is_zero() {
                        continue;
                    }
                    let p = x * y;
                    mults += 1;
                    bits += p.bits();
                    out.data[i * n + j] += p;
                }
            }
        }
        (out, mults, bits)
    }
}

fn strassen(a: &IntMatrix, b: &IntMatrix, cutoff: usize) -> IntMatrix {
    let (l, m, n) = (a.rows, a.cols, b.cols);
    let side = l.max(m).max(n).max(1).next_power_of_two();
    let pad = |src: &IntMatrix| {
        let mut blk = Block::zeros(side);
        for i in 0..src.rows {
            for j in 0..src.cols {
                blk.data[i * side + j] = BigInt::from_biguint(Sign::Plus, src.data[i * src.cols + j].clone());
            }
        }
        blk
    };
    let (pa, pb) = (pad(a), pad(b));
    let (prod, mults, bits) = strassen_rec(&pa, &pb, cutoff);
    ops::add_ring_mults(mults, bits);
    let mut data = Vec::with_capacity(l * n);
    for i in 0..l {
        for j in 0..n {
            let v = prod.data[i * side + j]
                .to_biguint()
                .expect("product of nonnegative matrices is nonnegative");
            data.push(v);
        }
    }
    IntMatrix::from_vec(l, n, data)
}

fn strassen_rec(a: &Block, b: &Block, cutoff: usize) -> (Block, u64, u64) {
    let n = a.n;
    if n <= cutoff || n == 1 {
        return a.mul_schoolbook(b);
    }
    let h = n / 2;
    let (a11, a12, a21, a22) = (a.quadrant(0, 0), a.quadrant(0, 1), a.quadrant(1, 0), a.quadrant(1, 1));
    let (b11, b12, b21, b22) = (b.quadrant(0, 0), b.quadrant(0, 1), b.quadrant(1, 0), b.quadrant(1, 1));

    let operands = [
        (a11.add(&a22), b11.add(&b22)),
        (a21.add(&a22), b11.clone()),
        (a11.clone(), b12.sub(&b22)),
        (a22.clone(), b21.sub(&b11)),
        (a11.add(&a12), b22.clone()),
        (a21.sub(&a11), b11.add(&b12)),
        (a12.sub(&a22), b21.add(&b22)),
    ];
    let products: Vec<(Block, u64, u64)> = operands
        .par_iter()
        .map(|(x, y)| strassen_rec(x, y, cutoff))
        .collect();
    let mults = products.iter().map(|p| p.1).sum();
    let bits = products.iter().map(|p| p.2).sum();
    let m: Vec<&Block> = products.iter().map(|p| &p.0).collect();

    let c11 = m[0].add(m[3]).sub(m[4]).add(m[6]);
    let c12 = m[2].add(m[4]);
    let c21 = m[1].add(m[3]);
    let c22 = m[0].sub(m[1]).add(m[2]).add(m[5]);

    let mut out = Block::zeros(n);
    for (q, (qi, qj)) in [(&c11, (0, 0)), (&c12, (0, 1)), (&c21, (1, 0)), (&c22, (1, 1))] {
        for i in 0..h {
            let dst = (qi * h + i) * n + qj * h;
            out.data[dst..dst + h].clone_from_slice(&q.data[i * h..(i + 1) * h]);
        }
    }
    (out, mults, bits)
}
