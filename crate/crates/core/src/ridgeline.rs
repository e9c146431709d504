//! The ridgeline `x*(α)`, the curvature function `q(α) = 1 − α(1−α)p(α)` and
//! the mode bound obtained from the number of roots of `q` in `[0, 1]`.
//!
//! With `S_α = (1−α)Σ1⁻¹ + αΣ2⁻¹` and `d = μ2 − μ1`,
//!
//! ```text
//! x*(α) = S_α⁻¹ [(1−α)Σ1⁻¹μ1 + αΣ2⁻¹μ2]
//! p(α)  = dᵀ Σ1⁻¹ S_α⁻¹ Σ2⁻¹ S_α⁻¹ Σ2⁻¹ S_α⁻¹ Σ1⁻¹ d
//! ```
//!
//! Every critical point of every mixture `M_c` lies on `x*`, and `x*` lies in
//! the singular set of `F = (f1, f2)`.

use alloc::vec::Vec;

use crate::classify::{pair_type, CanonicalForm, PairType, DEFAULT_REL_TOL};
use crate::error::{Error, Result};
use crate::gaussian::GaussianPair;
use crate::linalg::{Spd2, Sym2, Vec2};
use crate::poly::{Bernstein, Poly};

/// Bisection width for roots of `q`.
pub const ROOT_XTOL: f64 = 1e-12;
/// `|q'|` below this at a root flags the root as a tangency.
pub const TANGENCY_TOL: f64 = 1e-7;

/// One point of the ridgeline with the quantities plotted along it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RidgeSample {
    pub alpha: f64,
    pub x_star: Vec2,
    pub f1_val: f64,
    pub f2_val: f64,
    pub q_val: f64,
}

/// Numerator of `q`, i.e. `det(S_α)³ · q(α)`, a polynomial of degree ≤ 6.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QPolynomial {
    /// Monomial coefficients, ascending: `coeffs[k]` multiplies `α^k`.
    pub coeffs: [f64; 7],
    /// Degree-6 Bernstein coefficients on `[0, 1]`; used for evaluation and roots.
    pub bernstein: [f64; 7],
}

impl QPolynomial {
    pub fn eval(&self, alpha: f64) -> f64 {
        self.bernstein_poly().eval(alpha)
    }

    pub fn bernstein_poly(&self) -> Bernstein {
        Bernstein::new(&self.bernstein)
    }

    pub fn poly(&self) -> Poly {
        let mut p = Poly::new(&self.coeffs);
        p.trim(1e-14);
        p
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QRoot {
    pub alpha: f64,
    /// `|q'(α)| < TANGENCY_TOL` or `q` touches zero without crossing.
    pub tangent: bool,
}

/// Mode bound from the root count of `q`, capped by the per-type results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModalityBound {
    pub n_roots: usize,
    /// `⌊n_roots / 2⌋ + 1`
    pub root_bound: usize,
    /// `root_bound` capped at 3, and at 2 for Type 2 and Type 3 pairs.
    pub bound: usize,
    pub pair_type: PairType,
    /// Some root was tangent, so `n_roots` counted it once.
    pub tangency: bool,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}

fn s_alpha_sym(p: &GaussianPair, alpha: f64) -> Sym2 {
    p.f1.precision()
        .sym()
        .scale(1.0 - alpha)
        .add(&p.f2.precision().sym().scale(alpha))
}

/// `S_α = (1−α)Σ1⁻¹ + αΣ2⁻¹`.
pub fn s_alpha(p: &GaussianPair, alpha: f64) -> Result<Spd2> {
    check_alpha(alpha)?;
    Spd2::try_from_sym(s_alpha_sym(p, alpha))
}

/// `x*(α)`, evaluated as `μ1 + α S_α⁻¹Σ2⁻¹d` for `α ≤ ½` and as
/// `μ2 − (1−α) S_α⁻¹Σ1⁻¹d` above, which makes both endpoints exact.
pub fn ridge_point(p: &GaussianPair, alpha: f64) -> Result<Vec2> {
    let s_inv = s_alpha(p, alpha)?.inverse();
    let d = p.mean_offset();
    Ok(if alpha <= 0.5 {
        p.f1.mu() + s_inv.mul_vec(p.f2.precision().mul_vec(d)) * alpha
    } else {
        p.f2.mu() - s_inv.mul_vec(p.f1.precision().mul_vec(d)) * (1.0 - alpha)
    })
}

pub fn p_of_alpha(p: &GaussianPair, alpha: f64) -> Result<f64> {
    let s_inv = s_alpha(p, alpha)?.inverse();
    let d = p.mean_offset();
    let v =
        p.f2.precision()
            .mul_vec(s_inv.mul_vec(p.f1.precision().mul_vec(d)));
    Ok(s_inv.quad_form(v))
}

pub fn q_of_alpha(p: &GaussianPair, alpha: f64) -> Result<f64> {
    if alpha == 0.0 || alpha == 1.0 {
        return Ok(1.0);
    }
    Ok(1.0 - alpha * (1.0 - alpha) * p_of_alpha(p, alpha)?)
}

pub fn ridge_sample(p: &GaussianPair, alpha: f64) -> Result<RidgeSample> {
    let x_star = ridge_point(p, alpha)?;
    let (f1_val, f2_val) = p.eval(x_star);
    Ok(RidgeSample {
        alpha,
        x_star,
        f1_val,
        f2_val,
        q_val: q_of_alpha(p, alpha)?,
    })
}

/// `n` samples at `α = i/(n+1)`, `i = 1..=n`.
pub fn ridge_samples(p: &GaussianPair, n: usize) -> Vec<RidgeSample> {
    (1..=n)
        .map(|i| {
            let alpha = i as f64 / (n + 1) as f64;
            ridge_sample(p, alpha).expect("alpha inside (0, 1)")
        })
        .collect()
}

/// `det(S_α)³ · q(α)` without division: with `A = adj(S_α)`,
/// `det³ · p = ṽᵀ A ṽ` where `ṽ = Σ2⁻¹ A Σ1⁻¹ d`.
///
/// Every factor is a low-degree Bernstein polynomial in `α`:
/// `det S_α` has coefficients `[|P1|, tr(adj(P1) P2)/2, |P2|]` (all positive),
/// `A` is linear between `adj P1` and `adj P2`, and `ṽ` is linear between
/// `|P1| P2 d` and `|P2| P1 d`, with `Pi = Σi⁻¹`.
pub fn q_numerator(p: &GaussianPair) -> QPolynomial {
    let (p1, p2) = (p.f1.precision().sym(), p.f2.precision().sym());
    let (a0, a1) = (p1.adjugate(), p2.adjugate());
    let d = p.mean_offset();
    let v0 = p2.mul_vec(d) * p1.det();
    let v1 = p1.mul_vec(d) * p2.det();
    let a = [a0, a1];
    let v = [v0, v1];
    let form = |i: usize, j: usize, k: usize| v[i].dot(a[j].mul_vec(v[k]));

    let det = Bernstein::new(&[
        p1.det(),
        0.5 * (a0.to_mat() * p2.to_mat()).trace(),
        p2.det(),
    ]);
    let det3 = det.mul(&det).mul(&det);
    let cubic = [
        form(0, 0, 0),
        (2.0 * form(0, 0, 1) + form(0, 1, 0)) / 3.0,
        (2.0 * form(0, 1, 1) + form(1, 0, 1)) / 3.0,
        form(1, 1, 1),
    ];
    // α(1−α)·B³_m = C(3,m)/C(5,m+1) · B⁵_{m+1}
    let mut e5 = [0.0; 6];
    for (m, &c) in cubic.iter().enumerate() {
        let (c3, c5) = (
            [1.0, 3.0, 3.0, 1.0][m],
            [1.0, 5.0, 10.0, 10.0, 5.0, 1.0][m + 1],
        );
        e5[m + 1] = c * c3 / c5;
    }
    let e6 = Bernstein::new(&e5).elevate();
    let mut bernstein = [0.0; 7];
    for (k, b) in bernstein.iter_mut().enumerate() {
        *b = det3.coeffs()[k] - e6.coeffs()[k];
    }
    let mono = Bernstein::new(&bernstein).to_monomial();
    let mut coeffs = [0.0; 7];
    coeffs[..mono.coeffs().len()].copy_from_slice(mono.coeffs());
    QPolynomial { coeffs, bernstein }
}

/// Roots of `q` in `[0, 1]`, ascending.
pub fn q_roots_in_unit(p: &GaussianPair) -> Vec<QRoot> {
    let num = q_numerator(p).bernstein_poly();
    let dnum = num.derivative();
    num.roots(ROOT_XTOL, 1e-11)
        .into_iter()
        .map(|r| {
            let det = s_alpha_sym(p, r.x).det();
            let dq = dnum.eval(r.x) / (det * det * det);
            QRoot {
                alpha: r.x,
                tangent: r.touching || dq.abs() < TANGENCY_TOL,
            }
        })
        .collect()
}

pub fn modality_bound(p: &GaussianPair) -> ModalityBound {
    let roots = q_roots_in_unit(p);
    let ty = pair_type(p, DEFAULT_REL_TOL);
    let n_roots = roots.len();
    let root_bound = n_roots / 2 + 1;
    ModalityBound {
        n_roots,
        root_bound,
        bound: root_bound.min(ty.max_modes()),
        pair_type: ty,
        tangency: roots.iter().any(|r| r.tangent),
    }
}

/// Cubic whose roots are the zeros of `q` for a canonical codirectional pair
/// `Σ1 = I`, `Σ2 = diag(σ²_along, ·)`, `d = (m, 0)`; descending coefficients
/// `[α³, α², α, 1]`:
///
/// ```text
/// (σ²−1)³ α³ − σ²(m² + 3(σ²−1)²) α² + σ²(m² + 3σ²(σ²−1)) α − σ⁶
/// ```
pub fn type2_cubic_coeffs(sigma_sq: f64, m: f64) -> [f64; 4] {
    let s = sigma_sq;
    let m2 = m * m;
    let t = s - 1.0;
    [
        t * t * t,
        -s * (m2 + 3.0 * t * t),
        s * (m2 + 3.0 * s * t),
        -s * s * s,
    ]
}

/// [`type2_cubic_coeffs`] for a canonical form whose mean lies on one axis.
/// The variance along that axis is used, so both canonical orientations work.
pub fn type2_cubic(cf: &CanonicalForm) -> Result<[f64; 4]> {
    let tol = DEFAULT_REL_TOL * cf.m.norm();
    if cf.m.y.abs() <= tol {
        Ok(type2_cubic_coeffs(cf.s1_sq, cf.m.x))
    } else if cf.m.x.abs() <= tol {
        Ok(type2_cubic_coeffs(cf.s2_sq, cf.m.y))
    } else {
        Err(Error::NotType2Canonical)
    }
}
