//! Matrices whose entries are polynomials with Boolean coefficients.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::ring::{ring_matmul, IntMatrix};
use crate::config::Config;
use crate::error::Result;
use crate::matrix::BoolMatrix;

/// `n × n` matrix of polynomials, each with `s` Boolean coefficients
/// (degree at most `s - 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    s: usize,
    coeffs: Vec<bool>,
}

impl PolyMatrix {
    pub fn new(n: usize, s: usize) -> Self {
        Self {
            n,
            s,
            coeffs: vec![false; n * n * s],
        }
    }

    /// Coefficient `q` of every entry is taken from `layers[q]`.
    pub fn from_layers(layers: &[&BoolMatrix]) -> Self {
        let n = layers.first().map_or(0, |m| m.n());
        let mut p = Self::new(n, layers.len());
        for (q, layer) in layers.iter().enumerate() {
            assert_eq!(layer.n(), n, "layer dimension");
            for (i, j) in layer.pairs() {
                p.set(i, j, q, true);
            }
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of coefficients per entry.
    pub fn len_coeffs(&self) -> usize {
        self.s
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, q: usize) -> bool {
        self.coeffs[(i * self.n + j) * self.s + q]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, q: usize, v: bool) {
        self.coeffs[(i * self.n + j) * self.s + q] = v;
    }

    /// The Boolean matrix of coefficient `q` (all-false past the degree bound).
    pub fn layer(&self, q: usize) -> BoolMatrix {
        if q >= self.s {
            return BoolMatrix::new(self.n);
        }
        BoolMatrix::from_fn(self.n, |i, j| self.get(i, j, q))
    }
}

/// Radix for the integer encoding of an `n × n` matrix with `s` coefficients
/// per entry. A product coefficient counts triples `(w, q1, q2)` with
/// `q1 + q2 = q`, so it is at most `n·s`; the radix exceeds that.
pub fn poly_radix(n: usize, s: usize) -> u64 {
    (n as u64) * (s as u64) + 1
}

/// `B²` over polynomials, coefficients saturated to Booleans. Entries are
/// evaluated at `x = poly_radix(n, s)`, multiplied with the ring kernel,
/// and read back digit by digit.
pub fn poly_square(b: &PolyMatrix, cfg: &Config) -> Result<PolyMatrix> {
    let (n, s) = (b.n, b.s);
    let out_len = if s == 0 { 0 } else { 2 * s - 1 };
    if n == 0 || s == 0 {
        return Ok(PolyMatrix::new(n, out_len));
    }
    let z = poly_radix(n, s);
    let mut powers = Vec::with_capacity(s);
    powers.push(BigUint::from(1u8));
    for q in 1..s {
        let next = &powers[q - 1] * z;
        powers.push(next);
    }
    let data: Vec<BigUint> = (0..n * n)
        .map(|idx| {
            let mut v = BigUint::zero();
            for (q, pw) in powers.iter().enumerate() {
                if b.coeffs[idx * s + q] {
                    v += pw;
                }
            }
            v
        })
        .collect();
    let enc = IntMatrix::from_vec(n, n, data);
    let prod = ring_matmul(&enc, &enc, cfg.kernel, cfg.strassen_cutoff)?;

    // Peel as many digits per big division as fit in a u64.
    let mut chunk = 1usize;
    let mut chunk_mod: u64 = z;
    while let Some(next) = chunk_mod.checked_mul(z) {
        chunk_mod = next;
        chunk += 1;
    }
    let coeffs: Vec<bool> = prod
        .into_vec()
        .into_par_iter()
        .flat_map_iter(|mut v| {
            let mut digits = vec![false; out_len];
            let mut q = 0;
            while !v.is_zero() && q < out_len {
                let mut low = (&v % chunk_mod).to_u64().expect("remainder below modulus");
                v /= chunk_mod;
                for _ in 0..chunk {
                    if q >= out_len {
                        break;
                    }
                    digits[q] = !low.is_multiple_of(z);
                    low /= z;
                    q += 1;
                }
            }
            digits
        })
        .collect();
    Ok(PolyMatrix {
        n,
        s: out_len,
        coeffs,
    })
}
