mod common;

use common::{random_skew, random_vec, random_weight, rel_err, rng, w_norm};
use nalgebra::DMatrix;
use pcortho::*;
use proptest::prelude::*;

fn skew_strategy(n: usize) -> impl Strategy<Value = SkewMatrix> {
    proptest::collection::vec(-5.0..5.0f64, half_len(n))
        .prop_map(move |u| SkewMatrix::from_upper(n, u).unwrap())
}

fn sized_skew() -> impl Strategy<Value = SkewMatrix> {
    (2usize..12).prop_flat_map(skew_strategy)
}

proptest! {
    #[test]
    fn phi_mu_round_trip(b in sized_skew()) {
        let a = phi(&b);
        let back = phi(&mu(&a).unwrap());
        prop_assert!(back.max_rel_diff(&a) <= 1e-12);
    }

    #[test]
    fn half_vector_round_trip_is_bitwise(b in sized_skew()) {
        let back = half_to_skew(&skew_to_half(&b));
        prop_assert_eq!(back.upper(), b.upper());
    }

    #[test]
    fn f_n_images_are_consistent(v in proptest::collection::vec(-10.0..10.0f64, 2..15)) {
        let b = f_n(&v);
        let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        prop_assert!(is_additively_consistent(&b, 1e-13 * (1.0 + scale)));
        let d = b.to_dense();
        prop_assert_eq!(d.clone(), -d.transpose());
    }

    #[test]
    fn f_n_kernel_is_constants(v in proptest::collection::vec(-10.0..10.0f64, 2..15)) {
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        let spread = v.iter().fold(0.0f64, |m, x| m.max((x - mean).abs()));
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if f_n(&v).is_zero() {
            prop_assert!(spread <= 1e-12 * norm);
        }
        let c = v[0];
        prop_assert!(f_n(&vec![c; v.len()]).is_zero());
    }

    #[test]
    fn projection_is_idempotent_and_linear(
        seed in 0u64..1000,
        alpha in -3.0..3.0f64,
        n in 3usize..9,
    ) {
        let mut r = rng(seed);
        let w = random_weight(&mut r, n);
        let b = random_skew(&mut r, n, 2.0);
        let c = random_skew(&mut r, n, 2.0);
        let pb = project_ln_w(&b, &w).unwrap();
        let ppb = project_ln_w(&pb, &w).unwrap();
        prop_assert!(ppb.max_abs_diff(&pb) <= 1e-11);

        let combo = b.scaled(alpha).add(&c);
        let lhs = project_ln_w(&combo, &w).unwrap();
        let rhs = pb.scaled(alpha).add(&project_ln_w(&c, &w).unwrap());
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-10);
    }

    #[test]
    fn ranking_round_trip(seed in 0u64..1000, n in 2usize..15) {
        let mut r = rng(seed);
        let w = random_weight(&mut r, n);
        let d = decompose(&random_skew(&mut r, n, 3.0), &w).unwrap();
        let rank = d.ranking().unwrap();
        prop_assert!(f_n(rank.logvalues()).max_abs_diff(&d.consistent) <= 1e-10);
        prop_assert!(rank.logvalues().iter().sum::<f64>().abs() <= 1e-12);
        prop_assert!((rank.weights().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn reciprocal_consistency_matches_additive_consistency() {
    let mut r = rng(11);
    let mut seen = [0usize; 2];
    for trial in 0..400 {
        let n = 3 + trial % 6;
        let b = if trial % 2 == 0 {
            f_n(&random_vec(&mut r, n, 3.0))
        } else {
            random_skew(&mut r, n, 3.0)
        };
        let a = phi(&b);
        let multiplicative = a.is_reciprocal(1e-9) && is_consistent(&a, 1e-9);
        let additive = is_additively_consistent(&mu(&a).unwrap(), 1e-9);
        assert_eq!(multiplicative, additive, "trial {trial}");
        seen[usize::from(additive)] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn w_frobenius_with_identity_is_frobenius() {
    let mut r = rng(3);
    for n in 2..=20 {
        let i = WeightMatrix::identity(n).unwrap();
        for _ in 0..10 {
            let a = common::random_dense(&mut r, n, n);
            let b = common::random_dense(&mut r, n, n);
            let x = w_frobenius(&a, &b, &i).unwrap();
            let y = frobenius(&a, &b).unwrap();
            assert!(rel_err(x, y) <= 1e-13, "n={n}: {x} vs {y}");
        }
    }
}

#[test]
fn weighted_ip_equals_frobenius_of_product() {
    let mut r = rng(4);
    for _ in 0..50 {
        let w = random_weight(&mut r, 4);
        let x = common::random_dense(&mut r, 4, 4);
        let y = common::random_dense(&mut r, 4, 4);
        let lhs = w_frobenius(&x, &y, &w).unwrap();
        let rhs = frobenius(&(&x * w.as_matrix()), &y).unwrap();
        assert!(rel_err(lhs, rhs) <= 1e-12);
        let sym = w_frobenius(&y, &x, &w).unwrap();
        assert!(rel_err(lhs, sym) <= 1e-12);
        assert!(w_frobenius(&x, &x, &w).unwrap() > 0.0);
    }
}

#[test]
fn metric_matrix_represents_f_pair_w_on_sum_zero_vectors() {
    let mut r = rng(5);
    for n in 3..=10 {
        let w = random_weight(&mut r, n);
        let m = metric_matrix(&w);
        for _ in 0..20 {
            let center = |v: Vec<f64>| {
                let mean = v.iter().sum::<f64>() / v.len() as f64;
                v.into_iter().map(|x| x - mean).collect::<Vec<_>>()
            };
            let v = center(random_vec(&mut r, n, 2.0));
            let u = center(random_vec(&mut r, n, 2.0));
            let closed = f_pair_w(&v, &u, &w).unwrap();
            let quad = (nalgebra::DVector::from_row_slice(&v).transpose()
                * &m
                * nalgebra::DVector::from_row_slice(&u))[(0, 0)];
            assert!(rel_err(closed, quad) <= 1e-10, "n={n}: {closed} vs {quad}");
        }
        assert!(check_positive_definite(&m).unwrap());
    }
}

#[test]
fn induced_vector_ip_is_an_inner_product() {
    let mut r = rng(6);
    for n in 2..=8 {
        let w = random_weight(&mut r, n);
        for base in [InnerProduct::Frobenius, InnerProduct::Weighted(w.clone())] {
            for _ in 0..1000 {
                let x = random_vec(&mut r, n, 1.0);
                assert!(induced_vector_ip(&x, &x, &base).unwrap() > 0.0);
            }
            let ones = vec![1.0; n];
            let nn = (n * n) as f64;
            assert!(rel_err(induced_vector_ip(&ones, &ones, &base).unwrap(), nn) <= 1e-14);

            let x = random_vec(&mut r, n, 1.0);
            let y = random_vec(&mut r, n, 1.0);
            let z = random_vec(&mut r, n, 1.0);
            let a = 0.7;
            let xz: Vec<f64> = x.iter().zip(&z).map(|(p, q)| a * p + q).collect();
            let lhs = induced_vector_ip(&xz, &y, &base).unwrap();
            let rhs = a * induced_vector_ip(&x, &y, &base).unwrap()
                + induced_vector_ip(&z, &y, &base).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
            let xy = induced_vector_ip(&x, &y, &base).unwrap();
            let yx = induced_vector_ip(&y, &x, &base).unwrap();
            assert!(rel_err(xy, yx) <= 1e-12);
        }
    }
}

#[test]
fn gram_schmidt_orthogonalizes_and_preserves_span() {
    let mut r = rng(7);
    for n in 3..=7 {
        let w = random_weight(&mut r, n);
        let ip = InnerProduct::Weighted(w.clone());
        let inputs: Vec<SkewMatrix> = (0..half_len(n)).map(|_| random_skew(&mut r, n, 1.0)).collect();
        let out = gram_schmidt_skew(&inputs, &ip).unwrap();
        let norms: Vec<f64> = out.iter().map(|e| w_norm(e, &w)).collect();
        for i in 0..out.len() {
            for j in 0..i {
                let c = ip.on_skew(&out[i], &out[j]).unwrap();
                assert!(c.abs() <= 1e-10 * norms[i] * norms[j], "n={n} ({i},{j}): {c:e}");
            }
        }
        // each input is recovered from its expansion over the outputs
        for x in &inputs {
            let mut rebuilt = SkewMatrix::zeros(n);
            for (q, nq) in out.iter().zip(&norms) {
                rebuilt.axpy(ip.on_skew(x, q).unwrap() / (nq * nq), q);
            }
            assert!(rebuilt.max_abs_diff(x) <= 1e-10);
        }
    }
}

#[test]
fn incidence_identity_and_cycle_null_space() {
    let mut r = rng(8);
    for n in 3..=8 {
        let p = incidence_matrix(n).unwrap();
        for _ in 0..100 {
            let b = random_skew(&mut r, n, 5.0);
            let lhs = p.apply(skew_to_half(&b).coords());
            let rhs = b.row_sums();
            for (x, y) in lhs.iter().zip(&rhs) {
                assert!((x - y).abs() <= 1e-13);
            }
        }
        for e in hn_cycle_basis(n).unwrap().elements() {
            assert!(p.apply(e.upper()).iter().all(|&x| x == 0.0));
        }
        for e in 0..p.edge_count() {
            let col: Vec<i8> = (0..n).map(|v| p.get(v, e)).collect();
            assert_eq!(col.iter().filter(|&&x| x == 1).count(), 1);
            assert_eq!(col.iter().filter(|&&x| x == -1).count(), 1);
        }
    }
}

#[test]
fn consistent_and_cycle_bases_are_frobenius_orthogonal() {
    for n in 2..=10 {
        let l = ln_basis(n).unwrap();
        let h = hn_cycle_basis(n).unwrap();
        for e in l.elements() {
            for c in h.elements() {
                assert!(frobenius(&e.to_dense(), &c.to_dense()).unwrap().abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn w_basis_is_orthogonal_to_projected_complements() {
    let mut r = rng(9);
    for n in 3..=8 {
        let w = random_weight(&mut r, n);
        let ip = InnerProduct::Weighted(w.clone());
        let basis = ln_w_basis(n, &w).unwrap();
        let raw = ln_basis(n).unwrap();
        for _ in 0..10 {
            let b = random_skew(&mut r, n, 2.0);
            let bh = b.sub(&oracle_project(&b, &raw, &ip).unwrap());
            assert!(hn_membership(&bh, &w).unwrap());
            for e in basis.elements() {
                let c = w_frobenius(&e.to_dense(), &bh.to_dense(), &w).unwrap();
                assert!(c.abs() <= 1e-9 * (1.0 + w_norm(e, &w) * w_norm(&bh, &w)), "{c:e}");
            }
        }
        for (i, e) in basis.elements().iter().enumerate() {
            for f in &basis.elements()[..i] {
                let c = ip.on_skew(e, f).unwrap();
                assert!(c.abs() <= 1e-10 * w_norm(e, &w) * w_norm(f, &w));
            }
        }
    }
}

#[test]
fn decomposition_invariants_hold_for_random_weights() {
    let mut r = rng(10);
    for n in 3..=12 {
        let w = random_weight(&mut r, n);
        let basis = ln_w_basis(n, &w).unwrap();
        for _ in 0..10 {
            let b = random_skew(&mut r, n, 3.0);
            let d = decompose_with(&b, &w, &basis).unwrap();
            assert!(d.residual_check <= 1e-12);
            assert!(is_additively_consistent(&d.consistent, 1e-9));
            assert!(hn_membership(&d.inconsistent, &w).unwrap());
            let cross =
                w_frobenius(&d.consistent.to_dense(), &d.inconsistent.to_dense(), &w).unwrap();
            assert!(cross.abs() <= 1e-9 * (w_norm(&b, &w).powi(2)));
            let report = corollary_checks(&d);
            assert!(report.balance <= 1e-9, "{report:?}");
            let ratio = d.inconsistency_ratio().unwrap();
            assert!((0.0..=1.0).contains(&ratio));
        }
    }
}

#[test]
fn corollary_holds_for_identity_weight() {
    let mut r = rng(12);
    for n in 3..=10 {
        let w = WeightMatrix::identity(n).unwrap();
        for _ in 0..20 {
            let report = corollary_checks(&decompose(&random_skew(&mut r, n, 2.0), &w).unwrap());
            assert!(report.passes(1e-9), "{report:?}");
        }
    }
}

#[test]
fn hn_basis_orthogonalization_and_normalization() {
    let h = hn_cycle_basis(6).unwrap();
    let o = h.orthogonalized(InnerProduct::Frobenius).unwrap().normalized().unwrap();
    let g = DMatrix::from_fn(o.len(), o.len(), |i, j| {
        o.elements()[i].frobenius_dot(&o.elements()[j])
    });
    assert!((g - DMatrix::identity(o.len(), o.len())).abs().max() < 1e-12);
}
