//! Matrix kernels: min-plus products (naive and via integer encoding),
//! Boolean products, truncation and the entrywise helpers the threshold
//! algorithms are written in.

mod poly;
mod ring;

pub use poly::{poly_square, PolyMatrix};
pub use ring::{ring_matmul, IntMatrix};

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::matrix::{add, BoolMatrix, WeightMatrix, INF};
use crate::ops;

/// `C[i,j] = min_k A[i,k] + B[k,j]`, by the triple loop.
pub fn dist_product_naive(a: &WeightMatrix, b: &WeightMatrix) -> Result<WeightMatrix> {
    check_inner(a, b)?;
    let (l, m, n) = (a.rows(), a.cols(), b.cols());
    let data: Vec<i64> = (0..l)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = vec![INF; n];
            for k in 0..m {
                let x = a.get(i, k);
                if x == INF {
                    continue;
                }
                for (j, o) in out.iter_mut().enumerate() {
                    let v = add(x, b.get(k, j));
                    if v < *o {
                        *o = v;
                    }
                }
            }
            out
        })
        .collect();
    ops::add_relaxations((l * m * n) as u64);
    Ok(WeightMatrix::from_vec(l, n, data))
}

/// Min-plus product through one exact integer matrix product.
///
/// Each finite entry `a ∈ [-bound, bound]` becomes `z^(bound - a)` with
/// `z = m + 1` (`m` the inner dimension) and `INF` becomes 0. At most `m`
/// terms land on any digit of the product entry, so no digit carries and the
/// highest nonzero digit position `p` gives the minimum `2·bound - p`.
pub fn dist_product_fast(a: &WeightMatrix, b: &WeightMatrix, bound: i64, cfg: &Config) -> Result<WeightMatrix> {
    check_inner(a, b)?;
    if bound < 0 {
        return Err(Error::Parameter(format!("negative entry bound {bound}")));
    }
    for &e in a.as_slice().iter().chain(b.as_slice()) {
        if e != INF && e.abs() > bound {
            return Err(Error::EntryBound { value: e, bound });
        }
    }
    let (l, m, n) = (a.rows(), a.cols(), b.cols());
    if m == 0 {
        return Ok(WeightMatrix::infinite(l, n));
    }
    let z = BigUint::from(m as u64 + 1);
    let top = usize::try_from(4 * bound).map_err(|_| Error::Parameter("entry bound too large".into()))?;
    let mut powers = Vec::with_capacity(top + 1);
    powers.push(BigUint::from(1u8));
    for p in 1..=top {
        let next = &powers[p - 1] * &z;
        powers.push(next);
    }
    let encode = |x: &WeightMatrix| {
        let data = x
            .as_slice()
            .iter()
            .map(|&e| {
                if e == INF {
                    BigUint::zero()
                } else {
                    powers[(bound - e) as usize].clone()
                }
            })
            .collect();
        IntMatrix::from_vec(x.rows(), x.cols(), data)
    };
    let prod = ring_matmul(&encode(a), &encode(b), cfg.kernel, cfg.strassen_cutoff)?;
    let data = prod
        .into_vec()
        .into_par_iter()
        .map(|v| {
            if v.is_zero() {
                INF
            } else {
                // largest p with z^p <= v
                let p = powers.partition_point(|pw| pw <= &v) - 1;
                2 * bound - p as i64
            }
        })
        .collect();
    Ok(WeightMatrix::from_vec(l, n, data))
}

fn check_inner(a: &WeightMatrix, b: &WeightMatrix) -> Result<()> {
    if a.cols() != b.rows() {
        return Err(Error::Dimension(format!(
            "{}x{} times {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}

/// `⟨D⟩_t`: entries with `|e| > t` become `INF`.
pub fn truncate(d: &WeightMatrix, t: i64) -> WeightMatrix {
    d.map(|e| if e != INF && e.abs() <= t { e } else { INF })
}

/// Entrywise minimum.
pub fn min_merge(r: &WeightMatrix, s: &WeightMatrix) -> Result<WeightMatrix> {
    if r.rows() != s.rows() || r.cols() != s.cols() {
        return Err(Error::Dimension(format!(
            "{}x{} vs {}x{}",
            r.rows(),
            r.cols(),
            s.rows(),
            s.cols()
        )));
    }
    let data = r.as_slice().iter().zip(s.as_slice()).map(|(&x, &y)| x.min(y)).collect();
    Ok(WeightMatrix::from_vec(r.rows(), r.cols(), data))
}

/// Mathematical ceiling `⌈a / k⌉` for `k > 0`.
#[inline]
pub fn div_ceil(a: i64, k: i64) -> i64 {
    -((-a).div_euclid(k))
}

/// Finite entries become `⌈e / k⌉`.
pub fn scale_div_ceil(p: &WeightMatrix, k: i64) -> Result<WeightMatrix> {
    if k < 1 {
        return Err(Error::Parameter(format!("scale factor must be positive, got {k}")));
    }
    Ok(p.map(|e| if e == INF { INF } else { div_ceil(e, k) }))
}

/// Entries in `[lo, hi]` are decreased by `shift`; everything else is `INF`.
pub fn window_shift(p: &WeightMatrix, lo: i64, hi: i64, shift: i64) -> WeightMatrix {
    p.map(|e| if e != INF && lo <= e && e <= hi { e - shift } else { INF })
}

/// Boolean product on packed rows: row `i` of the result is the OR of the
/// rows `k` of `b` with `a[i,k]` set.
pub fn bool_product(a: &BoolMatrix, b: &BoolMatrix) -> Result<BoolMatrix> {
    if a.n() != b.n() {
        return Err(Error::Dimension(format!("{} vs {}", a.n(), b.n())));
    }
    let n = a.n();
    let rows: Vec<Vec<u64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut acc = b.row_words(0).iter().map(|_| 0u64).collect::<Vec<_>>();
            for k in 0..n {
                if a.get(i, k) {
                    for (w, x) in acc.iter_mut().zip(b.row_words(k)) {
                        *w |= x;
                    }
                }
            }
            acc
        })
        .collect();
    let mut c = BoolMatrix::new(n);
    for (i, row) in rows.into_iter().enumerate() {
        c.row_words_mut(i).copy_from_slice(&row);
    }
    Ok(c)
}

/// Boolean product routed through the integer ring kernel, saturating
/// nonzero counts to `true`.
pub fn bool_product_ring(a: &BoolMatrix, b: &BoolMatrix, cfg: &Config) -> Result<BoolMatrix> {
    if a.n() != b.n() {
        return Err(Error::Dimension(format!("{} vs {}", a.n(), b.n())));
    }
    let n = a.n();
    let lift = |x: &BoolMatrix| {
        let data: Vec<u64> = (0..n * n).map(|idx| x.get(idx / n, idx % n) as u64).collect();
        IntMatrix::from_u64(n, n, &data)
    };
    let prod = ring_matmul(&lift(a), &lift(b), cfg.kernel, cfg.strassen_cutoff)?;
    Ok(BoolMatrix::from_fn(n, |i, j| !prod.get(i, j).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Kernel;

    fn wm(rows: &[&[Option<i64>]]) -> WeightMatrix {
        WeightMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    const X: Option<i64> = None;

    #[test]
    fn naive_hand_example() {
        let a = wm(&[&[Some(0), Some(3)], &[X, Some(0)]]);
        let b = wm(&[&[Some(0), X], &[Some(4), Some(0)]]);
        let c = dist_product_naive(&a, &b).unwrap();
        assert_eq!(c, wm(&[&[Some(0), Some(3)], &[Some(4), Some(0)]]));
    }

    #[test]
    fn naive_path_two_hops() {
        let w = wm(&[
            &[Some(0), Some(3), X],
            &[X, Some(0), Some(4)],
            &[X, X, Some(0)],
        ]);
        let w2 = dist_product_naive(&w, &w).unwrap();
        assert_eq!(w2.get(0, 2), 7);
    }

    #[test]
    fn identity_is_neutral() {
        let a = wm(&[&[Some(2), Some(-1)], &[X, Some(5)]]);
        let id = WeightMatrix::identity(2);
        assert_eq!(dist_product_naive(&a, &id).unwrap(), a);
        assert_eq!(dist_product_fast(&a, &id, 5, &Config::default()).unwrap(), a);
    }

    #[test]
    fn fast_scalar_and_infinite() {
        let cfg = Config::default();
        let a = WeightMatrix::from_vec(1, 1, vec![2]);
        let b = WeightMatrix::from_vec(1, 1, vec![-1]);
        assert_eq!(dist_product_fast(&a, &b, 2, &cfg).unwrap().get(0, 0), 1);
        let inf = WeightMatrix::infinite(3, 3);
        let any = WeightMatrix::filled(3, 3, 1);
        assert_eq!(dist_product_fast(&inf, &any, 1, &cfg).unwrap(), inf);
    }

    #[test]
    fn fast_rejects_out_of_bound_entries() {
        let a = WeightMatrix::from_vec(1, 1, vec![5]);
        let err = dist_product_fast(&a, &a, 4, &Config::default()).unwrap_err();
        assert_eq!(err, Error::EntryBound { value: 5, bound: 4 });
    }

    #[test]
    fn fast_matches_naive_both_kernels_rectangular() {
        let a = WeightMatrix::from_vec(2, 3, vec![1, -2, INF, 0, 3, -3]);
        let b = WeightMatrix::from_vec(3, 2, vec![INF, 2, -1, 1, 3, INF]);
        let want = dist_product_naive(&a, &b).unwrap();
        for kernel in [Kernel::Schoolbook, Kernel::Strassen] {
            let mut cfg = Config::default().with_kernel(kernel);
            cfg.strassen_cutoff = 1;
            assert_eq!(dist_product_fast(&a, &b, 3, &cfg).unwrap(), want);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let a = WeightMatrix::identity(2);
        let b = WeightMatrix::identity(3);
        assert!(dist_product_naive(&a, &b).is_err());
        assert!(dist_product_fast(&a, &b, 1, &Config::default()).is_err());
        assert!(min_merge(&a, &b).is_err());
    }

    #[test]
    fn truncation_examples() {
        let d = wm(&[&[Some(1), Some(-3)], &[Some(2), Some(5)]]);
        assert_eq!(truncate(&d, 2), wm(&[&[Some(1), X], &[Some(2), X]]));
        assert_eq!(truncate(&d, 5), d);
        let z = wm(&[&[Some(0), Some(1)], &[Some(-1), Some(0)]]);
        assert_eq!(truncate(&z, 0), wm(&[&[Some(0), X], &[X, Some(0)]]));
    }

    #[test]
    fn min_merge_examples() {
        let d = wm(&[&[Some(1), X], &[Some(-2), Some(0)]]);
        assert_eq!(min_merge(&d, &WeightMatrix::infinite(2, 2)).unwrap(), d);
        assert_eq!(min_merge(&d, &d).unwrap(), d);
        let r = WeightMatrix::from_vec(1, 1, vec![3]);
        let s = WeightMatrix::from_vec(1, 1, vec![-1]);
        assert_eq!(min_merge(&r, &s).unwrap().get(0, 0), -1);
    }

    #[test]
    fn ceiling_division() {
        let p = WeightMatrix::from_vec(1, 3, vec![7, -7, INF]);
        assert_eq!(scale_div_ceil(&p, 3).unwrap().as_slice(), &[3, -2, INF]);
        assert_eq!(scale_div_ceil(&p, 1).unwrap(), p);
        assert!(scale_div_ceil(&p, 0).is_err());
        assert_eq!(div_ceil(6, 3), 2);
        assert_eq!(div_ceil(-6, 3), -2);
        assert_eq!(div_ceil(-1, 4), 0);
    }

    #[test]
    fn window_examples() {
        let p = WeightMatrix::from_vec(1, 2, vec![5, 9]);
        assert_eq!(window_shift(&p, 4, 6, 4).as_slice(), &[1, INF]);
        assert_eq!(window_shift(&p, 0, 100, 0), p);
        assert_eq!(window_shift(&p, 50, 60, 0), WeightMatrix::infinite(1, 2));
    }

    #[test]
    fn bool_products() {
        let mut a = BoolMatrix::new(3);
        a.set(0, 1, true);
        a.set(1, 2, true);
        let sq = bool_product(&a, &a).unwrap();
        assert!(sq.get(0, 2));
        assert_eq!(sq.count_ones(), 1);
        assert_eq!(bool_product(&a, &BoolMatrix::identity(3)).unwrap(), a);
        assert_eq!(bool_product_ring(&a, &a, &Config::default()).unwrap(), sq);
    }
}
