#![allow(dead_code)]

use binormix::{Affine2, GaussianPair, Mat2, PairType, Sym2, Vec2};
use proptest::prelude::*;

pub fn spd_from(angle: f64, l1: f64, l2: f64) -> Sym2 {
    let r = Mat2::rotation(angle);
    (r * Mat2::diag(l1, l2) * r.transpose()).symmetric_part()
}

/// Eigenvalues in `[0.1, 10]`, any orientation.
pub fn spd() -> impl Strategy<Value = Sym2> {
    (0.0..std::f64::consts::PI, -1.0..1.0f64, -1.0..1.0f64)
        .prop_map(|(a, e1, e2)| spd_from(a, 10f64.powf(e1), 10f64.powf(e2)))
}

pub fn point(r: f64) -> impl Strategy<Value = Vec2> {
    (-r..r, -r..r).prop_map(|(x, y)| Vec2::new(x, y))
}

pub fn pair() -> impl Strategy<Value = GaussianPair> {
    (point(3.0), spd(), point(3.0), spd()).prop_filter_map("distinct means", |(m1, s1, m2, s2)| {
        if m1.distance(m2) < 0.05 {
            return None;
        }
        GaussianPair::from_params(m1, s1, m2, s2).ok()
    })
}

/// A pair built to be of the given type.
pub fn typed_pair(ty: PairType) -> impl Strategy<Value = GaussianPair> {
    any::<u64>().prop_map(move |s| binormix::random_pair(&mut binormix::trial_rng(s, ty, 0), ty))
}

pub fn any_typed_pair() -> impl Strategy<Value = GaussianPair> {
    prop_oneof![
        typed_pair(PairType::Type1),
        typed_pair(PairType::Type2),
        typed_pair(PairType::Type3),
    ]
}

/// Invertible affine maps with singular values in `[0.2, 5]`, either orientation.
pub fn affine() -> impl Strategy<Value = Affine2> {
    (
        0.0..std::f64::consts::TAU,
        0.0..std::f64::consts::TAU,
        -0.7..0.7f64,
        -0.7..0.7f64,
        any::<bool>(),
        point(3.0),
    )
        .prop_map(|(a, b, e1, e2, flip, shift)| {
            let reflect = if flip {
                Mat2::diag(1.0, -1.0)
            } else {
                Mat2::IDENTITY
            };
            let lin = Mat2::rotation(a)
                * Mat2::diag(10f64.powf(e1), 10f64.powf(e2))
                * reflect
                * Mat2::rotation(b);
            Affine2::new(lin, shift).unwrap()
        })
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
