//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use cosheaf::linalg::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Determinant by fraction-free (Bareiss) elimination.
pub fn bareiss_det(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `D_k = gcd of all k×k minors`, for `k = 1..=min(rows, cols)`.
pub fn determinantal_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let r = m.rows().min(m.cols());
    (1..=r)
        .map(|k| {
            let mut g = BigInt::zero();
            for rows in combinations(m.rows(), k) {
                for cols in combinations(m.cols(), k) {
                    g = g.gcd(&bareiss_det(&m.select_rows(&rows).select_columns(&cols)));
                }
            }
            g
        })
        .collect()
}

/// Smith diagonal predicted by the determinantal divisors: `d_k = D_k / D_{k-1}`.
pub fn minor_gcd_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let dd = determinantal_divisors(m);
    let mut prev = BigInt::one();
    dd.into_iter()
        .map(|d| {
            if d.is_zero() {
                BigInt::zero()
            } else {
                let q = &d / &prev;
                prev = d;
                q
            }
        })
        .collect()
}

/// Rank over the rationals, from the determinantal divisors.
pub fn rational_rank(m: &IntMatrix) -> usize {
    determinantal_divisors(m).iter().filter(|d| !d.is_zero()).count()
}

pub fn is_unimodular(m: &IntMatrix) -> bool {
    m.rows() == m.cols() && bareiss_det(m).abs().is_one()
}

pub fn is_diagonal(m: &IntMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m.get(i, j).is_zero()))
}

pub fn divisibility_chain(d: &[BigInt]) -> bool {
    let nonzero = d.iter().take_while(|x| !x.is_zero()).count();
    d[nonzero..].iter().all(Zero::is_zero)
        && d.iter().all(|x| !x.is_negative())
        && d[..nonzero].windows(2).all(|w| w[1].is_multiple_of(&w[0]))
}

/// Random matrix, sometimes of deficient rank (a product through a thin
/// inner dimension) and sometimes with large entries.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> IntMatrix {
    let rows = rng.gen_range(0..=max_dim);
    let cols = rng.gen_range(0..=max_dim);
    let fill = |rng: &mut R, r: usize, c: usize, bound: i64| {
        let data = (0..r * c).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
        IntMatrix::from_data(r, c, data).unwrap()
    };
    match rng.gen_range(0..4) {
        0 => {
            let inner = rng.gen_range(0..=max_dim.min(2));
            let a = fill(rng, rows, inner, 5);
            let b = fill(rng, inner, cols, 5);
            a.mul(&b).unwrap()
        }
        1 => fill(rng, rows, cols, 1_000_000_007),
        _ => fill(rng, rows, cols, 9),
    }
}
