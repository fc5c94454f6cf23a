//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test -p pcortho --test acceptance -- --nocapture --test-threads=1`.

mod common;

use std::time::{Duration, Instant};

use common::{random_skew, random_vec, random_weight, rank_mod_p, rel_err, rng, to_int_rows, w_norm};
use pcortho::*;
use rand::Rng;

fn verdict(id: u32, title: &str, passed: bool, detail: String) {
    let tag = if passed { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id:>2}: {title} ({detail})");
    assert!(passed, "criterion {id} failed: {title} ({detail})");
}

fn skew3(x: f64, y: f64, z: f64) -> SkewMatrix {
    SkewMatrix::from_upper(3, vec![x, y, z]).unwrap()
}

#[test]
fn criterion_01_golden_h4_basis() {
    let start = Instant::now();
    let basis = hn_cycle_basis(4).unwrap();
    let elapsed = start.elapsed();
    let expected: [[[f64; 4]; 4]; 3] = [
        [
            [0.0, 1.0, -1.0, 0.0],
            [-1.0, 0.0, 1.0, 0.0],
            [1.0, -1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ],
        [
            [0.0, 1.0, 0.0, -1.0],
            [-1.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 0.0, 0.0],
            [1.0, -1.0, 0.0, 0.0],
        ],
        [
            [0.0, 0.0, 1.0, -1.0],
            [0.0, 0.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 1.0],
            [1.0, 0.0, -1.0, 0.0],
        ],
    ];
    let exact = basis.len() == 3
        && basis.elements().iter().zip(&expected).all(|(e, m)| {
            let d = e.to_dense();
            (0..4).all(|i| (0..4).all(|j| d[(i, j)] == m[i][j]))
        });
    verdict(
        1,
        "hn_cycle_basis(4) equals the expected h4 cycle matrices exactly, < 1 ms",
        exact && elapsed < Duration::from_millis(1),
        format!("exact={exact}, {elapsed:?}"),
    );
}

#[test]
fn criterion_02_golden_n3_geometry() {
    let mut r = rng(2);
    let w = WeightMatrix::identity(3).unwrap();
    let n = skew3(1.0, -1.0, 1.0);
    let start = Instant::now();
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let v = random_vec(&mut r, 3, 5.0);
        let (x, y, z) = (v[0], v[1], v[2]);
        let d = decompose(&skew3(x, y, z), &w).unwrap();
        let bh = n.scaled((x - y + z) / 3.0);
        let bl = skew3(
            (2.0 * x + y - z) / 3.0,
            (x + 2.0 * y + z) / 3.0,
            (-x + y + 2.0 * z) / 3.0,
        );
        worst = worst
            .max(d.inconsistent.max_abs_diff(&bh))
            .max(d.consistent.max_abs_diff(&bl));
    }
    let elapsed = start.elapsed();
    verdict(
        2,
        "n=3 decomposition matches closed forms for B_h and B_l",
        worst <= 1e-12 && elapsed < Duration::from_secs(1),
        format!("max abs err {worst:.2e}, {elapsed:?}"),
    );
}

#[test]
fn criterion_03_fourier_coefficients_n3() {
    let c1 = skew3(1.0, 1.0, 0.0);
    let c2 = skew3(-1.0, 1.0, 2.0);
    // the same pair comes out of Gram-Schmidt on E1, E2 (up to positive scale)
    let gs = gram_schmidt_skew(&[c1.clone(), skew3(0.0, 1.0, 1.0)], &InnerProduct::Frobenius)
        .unwrap();
    let same_span = gs[0] == c1 && gs[1].max_abs_diff(&c2.scaled(0.5)) < 1e-15;

    let ip = InnerProduct::Frobenius;
    let (c1d, c2d) = (c1.to_dense(), c2.to_dense());
    let n1 = ip.on_matrices(&c1d, &c1d).unwrap();
    let n2 = ip.on_matrices(&c2d, &c2d).unwrap();
    let mut r = rng(3);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let a = random_skew(&mut r, 3, 5.0);
        let ad = a.to_dense();
        let (a12, a13, a23) = (a.get(0, 1), a.get(0, 2), a.get(1, 2));
        let k1 = ip.on_matrices(&ad, &c1d).unwrap() / n1;
        let k2 = ip.on_matrices(&ad, &c2d).unwrap() / n2;
        worst = worst
            .max((k1 - 2.0 * (a12 + a13) / 4.0).abs())
            .max((k2 - 2.0 * (-a12 + a13 + 2.0 * a23) / 12.0).abs());
    }
    verdict(
        3,
        "Fourier coefficients along C1, C2 equal (a12+a13)/2 and (-a12+a13+2a23)/6",
        same_span && worst <= 1e-12,
        format!("gram-schmidt match={same_span}, max abs err {worst:.2e}"),
    );
}

#[test]
fn criterion_04_pair_closed_form() {
    let mut r = rng(4);
    let mut worst = 0.0_f64;
    for n in 3..=10 {
        for _ in 0..500 {
            let w = random_weight(&mut r, n);
            let v = random_vec(&mut r, n, 2.0);
            let u = random_vec(&mut r, n, 2.0);
            let closed = f_pair_w(&v, &u, &w).unwrap();
            let direct = w_frobenius(&f_n(&v).to_dense(), &f_n(&u).to_dense(), &w).unwrap();
            worst = worst.max(rel_err(closed, direct));
        }
    }
    verdict(
        4,
        "f_pair_w equals w_frobenius(f_n(v), f_n(w), W)",
        worst <= 1e-10,
        format!("max rel err {worst:.2e}"),
    );
}

#[test]
fn criterion_05_complement_characterization() {
    let mut r = rng(5);
    let mut worst_literal = 0.0_f64;
    let mut worst_balance = 0.0_f64;
    for n in 3..=10 {
        for _ in 0..200 {
            let w = random_weight(&mut r, n);
            let b = random_skew(&mut r, n, 3.0);
            let d = decompose(&b, &w).unwrap();
            let scale = 1.0 + b.norm_inf() * w.norm_inf();
            worst_literal = worst_literal.max(row_balance_residual(&d.inconsistent, &w).unwrap() / scale);
            worst_balance = worst_balance.max(hn_residual(&d.inconsistent, &w).unwrap() / scale);
        }
    }
    let mut converse = true;
    for n in 3..=10 {
        let w = WeightMatrix::identity(n).unwrap();
        let basis = hn_cycle_basis(n).unwrap();
        for _ in 0..50 {
            let mut combo = SkewMatrix::zeros(n);
            for e in basis.elements() {
                combo.axpy(r.random_range(-3.0..3.0), e);
            }
            converse &= hn_membership(&combo, &w).unwrap();
        }
    }
    println!(
        "       diagnostic: max ½‖(B_h W + W B_h) 1‖∞ / (1+‖B‖‖W‖) = {worst_balance:.2e} \
         (W-orthogonal complement identity)"
    );
    verdict(
        5,
        "‖B_h W 1‖∞ <= 1e-9 (1+‖B‖∞‖W‖∞) for random (B, W); cycle-basis combinations in h_n",
        worst_literal <= 1e-9 && converse,
        format!("max scaled ‖B_h W 1‖∞ {worst_literal:.2e}, converse={converse}"),
    );
}

#[test]
fn criterion_06_triple_path_equivalence() {
    let mut r = rng(6);
    let mut worst_identity = 0.0_f64;
    let mut worst_weighted = 0.0_f64;
    for n in 3..=30 {
        let id = WeightMatrix::identity(n).unwrap();
        let raw = ln_basis(n).unwrap();
        for _ in 0..100 {
            let b = random_skew(&mut r, n, 3.0);
            let closed = project_ln_closed(&b);
            let weighted = project_ln_w(&b, &id).unwrap();
            let oracle = oracle_project(&b, &raw, &InnerProduct::Frobenius).unwrap();
            worst_identity = worst_identity
                .max(closed.max_abs_diff(&weighted))
                .max(closed.max_abs_diff(&oracle))
                .max(weighted.max_abs_diff(&oracle));
        }
        for _ in 0..5 {
            let w = random_weight(&mut r, n);
            let basis = ln_w_basis(n, &w).unwrap();
            let ip = InnerProduct::Weighted(w.clone());
            for _ in 0..20 {
                let b = random_skew(&mut r, n, 3.0);
                let p = project_ln_w_with(&b, &w, &basis).unwrap();
                let o = oracle_project(&b, &raw, &ip).unwrap();
                worst_weighted = worst_weighted.max(p.max_abs_diff(&o) / (1.0 + o.max_abs()));
            }
        }
    }
    verdict(
        6,
        "closed form = project_ln_w(I) = oracle (1e-10); project_ln_w = oracle under random W (1e-9)",
        worst_identity <= 1e-10 && worst_weighted <= 1e-9,
        format!("identity {worst_identity:.2e}, weighted rel {worst_weighted:.2e}"),
    );
}

#[test]
fn criterion_07_pythagoras_and_minimality() {
    let mut r = rng(7);
    let mut worst = 0.0_f64;
    let mut strict = true;
    for n in 3..=12 {
        for _ in 0..10 {
            let w = random_weight(&mut r, n);
            let b = random_skew(&mut r, n, 3.0);
            let d = decompose(&b, &w).unwrap();
            let total = w_norm(&b, &w).powi(2);
            let parts = w_norm(&d.consistent, &w).powi(2) + w_norm(&d.inconsistent, &w).powi(2);
            worst = worst.max(rel_err(total, parts));
            let best = w_norm(&d.inconsistent, &w);
            for _ in 0..50 {
                let c = f_n(&random_vec(&mut r, n, 3.0));
                strict &= best < w_norm(&b.sub(&c), &w);
            }
        }
    }
    verdict(
        7,
        "‖B‖²_W = ‖B_l‖²_W + ‖B_h‖²_W and B_l is strictly closest among random consistent C",
        worst <= 1e-9 && strict,
        format!("max rel err {worst:.2e}, strict minimality={strict}"),
    );
}

#[test]
fn criterion_08_dimensions_and_ranks() {
    let mut ok = true;
    let mut detail = Vec::new();
    for n in 2..=10 {
        let l = ln_basis(n).unwrap();
        let h = hn_cycle_basis(n).unwrap();
        let mut stacked = to_int_rows(l.elements());
        stacked.extend(to_int_rows(h.elements()));
        let combined = if stacked.is_empty() { 0 } else { rank_mod_p(&stacked) };
        let p = incidence_matrix(n).unwrap();
        let p_rows: Vec<Vec<i64>> = p
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(i64::from).collect())
            .collect();
        let p_rank = rank_mod_p(&p_rows);
        let good = l.len() == n - 1
            && h.len() == (n - 1) * (n - 2) / 2
            && combined == n * (n - 1) / 2
            && p_rank == n - 1;
        if !good {
            detail.push(format!("n={n}: |l|={}, |h|={}, rank={combined}, rank P={p_rank}", l.len(), h.len()));
        }
        ok &= good;
    }
    verdict(
        8,
        "basis sizes n-1 and (n-1)(n-2)/2, combined rank n(n-1)/2, rank P = n-1 for n=2..10",
        ok,
        if detail.is_empty() { "all exact".into() } else { detail.join("; ") },
    );
}

#[test]
fn criterion_09_factorization() {
    let mut r = rng(9);
    let mut worst = 0.0_f64;
    let mut consistent = true;
    for n in 3..=8 {
        for k in 0..100 {
            let a = phi(&random_skew(&mut r, n, 2.0));
            let w = if k % 2 == 0 {
                WeightMatrix::identity(n).unwrap()
            } else {
                random_weight(&mut r, n)
            };
            let f = factor_pc(&a, &w).unwrap();
            let back = f.inconsistent.hadamard(&f.consistent).unwrap();
            worst = worst.max(back.max_rel_diff(&a));
            consistent &= is_consistent(&f.consistent, 1e-9)
                && f.consistent.is_reciprocal(1e-12)
                && f.inconsistent.is_reciprocal(1e-12);
        }
    }
    verdict(
        9,
        "φ(B_h) ⊙ φ(B_l) reproduces A and φ(B_l) is consistent",
        worst <= 1e-11 && consistent,
        format!("max rel err {worst:.2e}, consistent factors={consistent}"),
    );
}

#[test]
fn criterion_10_performance_smoke() {
    let mut r = rng(10);
    let big = random_skew(&mut r, 2000, 3.0);
    let start = Instant::now();
    let p = project_ln_closed(&big);
    let closed = start.elapsed();
    assert_eq!(p.order(), 2000);

    let w = random_weight(&mut r, 200);
    let b = random_skew(&mut r, 200, 3.0);
    let start = Instant::now();
    let basis = ln_w_basis(200, &w).unwrap();
    let q = project_ln_w_with(&b, &w, &basis).unwrap();
    let weighted = start.elapsed();
    assert_eq!(q.order(), 200);

    verdict(
        10,
        "closed form n=2000 < 5 s; ln_w_basis + project_ln_w n=200 < 10 s",
        closed < Duration::from_secs(5) && weighted < Duration::from_secs(10),
        format!("closed {closed:?}, weighted {weighted:?}"),
    );
}
