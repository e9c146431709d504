mod common;

use binormix::{
    canonicalize, modality_bound, p_of_alpha, q_numerator, q_of_alpha, q_roots_in_unit,
    ridge_point, s_alpha, type2_cubic, PairType,
};
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn endpoints_are_exact(p in pair()) {
        prop_assert!(ridge_point(&p, 0.0).unwrap().distance(p.f1.mu()) < 1e-12);
        prop_assert!(ridge_point(&p, 1.0).unwrap().distance(p.f2.mu()) < 1e-12);
        prop_assert_eq!(q_of_alpha(&p, 0.0).unwrap(), 1.0);
        prop_assert_eq!(q_of_alpha(&p, 1.0).unwrap(), 1.0);
    }

    // x*(α) solves (1−α)Σ1⁻¹(x − μ1) + αΣ2⁻¹(x − μ2) = 0 and lies on S(F)
    #[test]
    fn ridge_points_are_stationary_and_singular(p in pair(), alpha in 0.0..=1.0f64) {
        let x = ridge_point(&p, alpha).unwrap();
        let r = p.f1.precision().mul_vec(x - p.f1.mu()) * (1.0 - alpha)
            + p.f2.precision().mul_vec(x - p.f2.mu()) * alpha;
        let scale = p.precision_scale() * (1.0 + x.norm() + p.f1.mu().norm() + p.f2.mu().norm());
        prop_assert!(r.norm() < 1e-12 * scale);
        prop_assert!(p.singular_residual(x) < 1e-9);
    }

    #[test]
    fn numerator_matches_rational_form(p in pair(), alpha in 0.0..=1.0f64) {
        let num = q_numerator(&p).eval(alpha);
        let det = s_alpha(&p, alpha).unwrap().det();
        let pa = p_of_alpha(&p, alpha).unwrap();
        let direct = det.powi(3) * (1.0 - alpha * (1.0 - alpha) * pa);
        let scale = det.powi(3) * (1.0 + alpha * (1.0 - alpha) * pa);
        prop_assert!((num - direct).abs() <= 1e-9 * scale, "{num} vs {direct}");
    }

    #[test]
    fn roots_match_sign_changes(p in pair()) {
        let roots = q_roots_in_unit(&p);
        for r in &roots {
            prop_assert!(q_of_alpha(&p, r.alpha).unwrap().abs() < 1e-6);
        }
        let n = 10_000;
        let qs: Vec<f64> = (0..=n).map(|i| q_of_alpha(&p, i as f64 / n as f64).unwrap()).collect();
        let changes = qs.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
        let crossing = roots.iter().filter(|r| !r.tangent).count();
        let min_gap = roots.windows(2).map(|w| w[1].alpha - w[0].alpha).fold(1.0, f64::min);
        if min_gap > 2.0 / n as f64 && !roots.iter().any(|r| r.tangent) {
            prop_assert_eq!(changes, crossing);
        }
        // q starts and ends at 1, so crossings pair up
        prop_assert_eq!(crossing % 2, 0);
    }

    #[test]
    fn bound_respects_type(p in any_typed_pair()) {
        let b = modality_bound(&p);
        prop_assert_eq!(b.root_bound, b.n_roots / 2 + 1);
        prop_assert!(b.bound <= b.pair_type.max_modes());
        prop_assert!(b.bound <= b.root_bound);
    }

    #[test]
    fn type2_roots_solve_the_cubic(p in typed_pair(PairType::Type2)) {
        let cf = canonicalize(&p).unwrap();
        let [a, b, c, d] = type2_cubic(&cf).unwrap();
        let scale = a.abs() + b.abs() + c.abs() + d.abs();
        for r in q_roots_in_unit(&p) {
            let x = r.alpha;
            prop_assert!((((a * x + b) * x + c) * x + d).abs() < 1e-8 * scale);
        }
    }

    #[test]
    fn roots_are_affine_invariant(p in pair(), t in affine()) {
        let a = q_roots_in_unit(&p);
        let b = q_roots_in_unit(&p.push_forward(&t).unwrap());
        if a.iter().chain(&b).all(|r| !r.tangent) {
            prop_assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x.alpha - y.alpha).abs() < 1e-8);
            }
        }
    }
}
