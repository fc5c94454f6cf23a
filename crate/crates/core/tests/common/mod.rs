#![allow(dead_code)]

use nalgebra::DMatrix;
use pcortho::{half_len, SkewMatrix, WeightMatrix};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_vec(rng: &mut StdRng, n: usize, scale: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-scale..scale)).collect()
}

pub fn random_skew(rng: &mut StdRng, n: usize, scale: f64) -> SkewMatrix {
    SkewMatrix::from_upper(n, random_vec(rng, half_len(n), scale)).unwrap()
}

pub fn random_dense(rng: &mut StdRng, rows: usize, cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0))
}

/// `L Lᵀ + δ I`, symmetrized exactly.
pub fn random_weight(rng: &mut StdRng, n: usize) -> WeightMatrix {
    let l = random_dense(rng, n, n);
    let mut w = &l * l.transpose();
    for i in 0..n {
        w[(i, i)] += 0.1 + rng.random_range(0.0..1.0);
    }
    let w = (&w + w.transpose()) * 0.5;
    WeightMatrix::new(w).unwrap()
}

/// `‖X‖_W = sqrt(tr(X W Xᵀ))`.
pub fn w_norm(b: &SkewMatrix, w: &WeightMatrix) -> f64 {
    let d = b.to_dense();
    pcortho::w_frobenius(&d, &d, w).unwrap().sqrt()
}

/// Rank over GF(p). For the integer matrices used here the rational rank is
/// at least this value, and the tests pair it with a known upper bound.
pub fn rank_mod_p(rows: &[Vec<i64>]) -> usize {
    const P: i64 = 1_000_000_007;
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(P)).collect())
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let inv = |a: i64| -> i64 {
        let (mut base, mut exp, mut acc) = (a, P - 2, 1i64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            exp >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let pinv = inv(m[rank][col]);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col] * pinv % P;
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x = (*x - f * p).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn to_int_rows(elements: &[SkewMatrix]) -> Vec<Vec<i64>> {
    elements
        .iter()
        .map(|e| {
            e.upper()
                .iter()
                .map(|&x| {
                    assert_eq!(x, x.round(), "entry {x} is not an integer");
                    x as i64
                })
                .collect()
        })
        .collect()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    if d == 0.0 {
        0.0
    } else {
        d / a.abs().max(b.abs())
    }
}
