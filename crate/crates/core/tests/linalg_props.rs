mod common;

use binormix::linalg::{spd_inv_sqrt, spd_inverse};
use binormix::{Mat2, Spd2, Vec2};
use common::*;
use proptest::prelude::*;

proptest! {
    #[test]
    fn inverse_round_trip(s in spd()) {
        let inv = spd_inverse(s).unwrap().sym().to_mat();
        prop_assert!((inv * s.to_mat()).max_abs_diff(&Mat2::IDENTITY) < 1e-12);
    }

    #[test]
    fn inv_sqrt_whitens(s in spd()) {
        let w = spd_inv_sqrt(s).unwrap().sym().to_mat();
        prop_assert!((w * s.to_mat() * w).max_abs_diff(&Mat2::IDENTITY) < 1e-12);
    }

    #[test]
    fn eigen_reconstructs(s in spd()) {
        let e = s.eigen();
        prop_assert!(e.lambda1 >= e.lambda2);
        let r = e.reconstruct();
        prop_assert!(r.sub(&s).norm_max() < 1e-13 * e.lambda1);
        prop_assert!((e.rot.transpose() * e.rot).max_abs_diff(&Mat2::IDENTITY) < 1e-14);
    }

    #[test]
    fn affine_round_trip(t in affine(), p in point(10.0)) {
        let inv = t.inverse().unwrap();
        prop_assert!(inv.apply(t.apply(p)).distance(p) < 1e-12 * (1.0 + p.norm()));
        let id = inv.compose(&t);
        prop_assert!(id.linear().max_abs_diff(&Mat2::IDENTITY) < 1e-13);
        prop_assert!(id.shift().norm() < 1e-12);
    }

    #[test]
    fn compose_matches_sequential(a in affine(), b in affine(), p in point(5.0)) {
        let ab = a.compose(&b);
        let seq = a.apply(b.apply(p));
        prop_assert!(ab.apply(p).distance(seq) < 1e-12 * (1.0 + seq.norm()));
    }

    #[test]
    fn congruence_stays_spd(s in spd(), t in affine()) {
        let m = s.congruence(&t.linear());
        prop_assert!(Spd2::try_from_sym(m).is_ok());
        let v = Vec2::new(0.3, -1.1);
        let direct = s.quad_form(t.linear().mul_vec(v));
        prop_assert!(rel_close(m.quad_form(v), direct, 1e-12));
    }
}
