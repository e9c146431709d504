//! Bivariate normal densities, their product mapping and two-component mixtures.

use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{Affine2, Mat2, Spd2, Sym2, Vec2};

/// Bivariate normal density `φ(x; μ, Σ)`.
///
/// The precision matrix and the log normalising constant are cached at
/// construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian2D {
    mu: Vec2,
    sigma: Spd2,
    precision: Spd2,
    log_norm: f64,
}

impl Gaussian2D {
    pub fn new(mu: Vec2, sigma: Spd2) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::NonFinite("mean"));
        }
        Ok(Gaussian2D {
            mu,
            sigma,
            precision: sigma.inverse(),
            log_norm: -libm::log(2.0 * PI) - 0.5 * libm::log(sigma.det()),
        })
    }

    pub fn standard() -> Self {
        Gaussian2D::new(Vec2::ZERO, Spd2::IDENTITY).expect("identity is SPD")
    }

    pub fn mu(&self) -> Vec2 {
        self.mu
    }

    pub fn sigma(&self) -> Spd2 {
        self.sigma
    }

    pub fn precision(&self) -> Spd2 {
        self.precision
    }

    pub fn log_norm_const(&self) -> f64 {
        self.log_norm
    }

    /// Density value at the mean, `1 / (2π |Σ|^{1/2})`.
    pub fn peak(&self) -> f64 {
        libm::exp(self.log_norm)
    }

    /// Largest standard deviation (square root of the top covariance eigenvalue).
    pub fn sigma_max(&self) -> f64 {
        libm::sqrt(self.sigma.spectral_norm())
    }

    pub fn log_density(&self, pt: Vec2) -> f64 {
        self.log_norm - 0.5 * self.precision.quad_form(pt - self.mu)
    }

    pub fn density(&self, pt: Vec2) -> f64 {
        libm::exp(self.log_density(pt))
    }

    /// `∇ log φ = −Σ⁻¹ (pt − μ)`.
    pub fn log_density_grad(&self, pt: Vec2) -> Vec2 {
        -self.precision.mul_vec(pt - self.mu)
    }

    pub fn grad(&self, pt: Vec2) -> Vec2 {
        self.log_density_grad(pt) * self.density(pt)
    }

    /// `φ · (g gᵀ − Σ⁻¹)` with `g = ∇ log φ`.
    pub fn hessian(&self, pt: Vec2) -> Sym2 {
        let g = self.log_density_grad(pt);
        let p = self.precision.sym();
        Sym2::new(g.x * g.x - p.a11, g.x * g.y - p.a12, g.y * g.y - p.a22).scale(self.density(pt))
    }

    /// Distribution of `T(X)` for `X ~ self`: mean `T(μ)`, covariance `A Σ Aᵀ`.
    ///
    /// The result's density is `self ∘ T⁻¹ / |det A|`.
    pub fn push_forward(&self, t: &Affine2) -> Result<Gaussian2D> {
        let sigma = self.sigma.sym().congruence(&t.linear().transpose());
        Gaussian2D::new(t.apply(self.mu), Spd2::try_from_sym(sigma)?)
    }
}

/// Ordered pair `(f1, f2)` defining the product mapping `F = (f1, f2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPair {
    pub f1: Gaussian2D,
    pub f2: Gaussian2D,
}

impl GaussianPair {
    pub fn new(f1: Gaussian2D, f2: Gaussian2D) -> Result<Self> {
        if f1.mu == f2.mu {
            return Err(Error::EqualMeans);
        }
        Ok(GaussianPair { f1, f2 })
    }

    /// Convenience constructor from raw means and covariances.
    pub fn from_params(mu1: Vec2, sigma1: Sym2, mu2: Vec2, sigma2: Sym2) -> Result<Self> {
        GaussianPair::new(
            Gaussian2D::new(mu1, Spd2::try_from_sym(sigma1)?)?,
            Gaussian2D::new(mu2, Spd2::try_from_sym(sigma2)?)?,
        )
    }

    pub fn swapped(&self) -> GaussianPair {
        GaussianPair {
            f1: self.f2,
            f2: self.f1,
        }
    }

    /// `μ2 − μ1`
    pub fn mean_offset(&self) -> Vec2 {
        self.f2.mu - self.f1.mu
    }

    pub fn push_forward(&self, t: &Affine2) -> Result<GaussianPair> {
        GaussianPair::new(self.f1.push_forward(t)?, self.f2.push_forward(t)?)
    }

    pub fn eval(&self, pt: Vec2) -> (f64, f64) {
        (self.f1.density(pt), self.f2.density(pt))
    }

    /// `cross(∇log f1, ∇log f2)`; its zero set is the singular set `S(F)`.
    pub fn log_grad_cross(&self, pt: Vec2) -> f64 {
        self.f1
            .log_density_grad(pt)
            .cross(self.f2.log_density_grad(pt))
    }

    /// Jacobian of `F` at `pt`, rows `∇f1`, `∇f2`.
    pub fn jacobian(&self, pt: Vec2) -> Mat2 {
        Mat2::from_rows(self.f1.grad(pt), self.f2.grad(pt))
    }

    /// `det J_F = f1 · f2 · cross(∇log f1, ∇log f2)`.
    pub fn jacobian_det(&self, pt: Vec2) -> f64 {
        let (v1, v2) = self.eval(pt);
        v1 * v2 * self.log_grad_cross(pt)
    }

    /// Singular-set residual of `pt`, normalised by the size of the terms that
    /// cancel in the cross product: `‖Σ1⁻¹‖ ‖Σ2⁻¹‖ (‖pt‖ + ‖μ1‖)(‖pt‖ + ‖μ2‖)`.
    ///
    /// The same number is the relative size of `det J_F`, since the density
    /// factors cancel.
    pub fn singular_residual(&self, pt: Vec2) -> f64 {
        let r = pt.norm();
        let scale = self.f1.precision.spectral_norm()
            * self.f2.precision.spectral_norm()
            * (r + self.f1.mu.norm())
            * (r + self.f2.mu.norm());
        self.log_grad_cross(pt).abs() / scale.max(f64::MIN_POSITIVE)
    }

    /// Largest spectral norm of the two precision matrices.
    pub fn precision_scale(&self) -> f64 {
        self.f1
            .precision
            .spectral_norm()
            .max(self.f2.precision.spectral_norm())
    }

    pub fn sigma_max(&self) -> f64 {
        self.f1.sigma_max().max(self.f2.sigma_max())
    }
}

/// `M_c = c·f1 + (1 − c)·f2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mixture {
    pair: GaussianPair,
    c: f64,
}

impl Mixture {
    pub fn new(pair: GaussianPair, c: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&c) {
            return Err(Error::MixingOutOfRange(c));
        }
        Ok(Mixture { pair, c })
    }

    pub fn pair(&self) -> &GaussianPair {
        &self.pair
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn value(&self, pt: Vec2) -> f64 {
        if self.c == 1.0 {
            return self.pair.f1.density(pt);
        }
        if self.c == 0.0 {
            return self.pair.f2.density(pt);
        }
        self.c * self.pair.f1.density(pt) + (1.0 - self.c) * self.pair.f2.density(pt)
    }

    pub fn grad(&self, pt: Vec2) -> Vec2 {
        self.pair.f1.grad(pt) * self.c + self.pair.f2.grad(pt) * (1.0 - self.c)
    }

    pub fn hessian(&self, pt: Vec2) -> Sym2 {
        self.pair
            .f1
            .hessian(pt)
            .scale(self.c)
            .add(&self.pair.f2.hessian(pt).scale(1.0 - self.c))
    }

    /// `ln M_c(pt)` and the component responsibilities `(w1, w2)`, computed
    /// without forming the densities so that far tails do not underflow.
    pub fn log_value_and_weights(&self, pt: Vec2) -> (f64, f64, f64) {
        let l1 = if self.c > 0.0 {
            libm::log(self.c) + self.pair.f1.log_density(pt)
        } else {
            f64::NEG_INFINITY
        };
        let l2 = if self.c < 1.0 {
            libm::log(1.0 - self.c) + self.pair.f2.log_density(pt)
        } else {
            f64::NEG_INFINITY
        };
        let top = l1.max(l2);
        let e1 = libm::exp(l1 - top);
        let e2 = libm::exp(l2 - top);
        let s = e1 + e2;
        (top + libm::log(s), e1 / s, e2 / s)
    }

    pub fn log_value(&self, pt: Vec2) -> f64 {
        self.log_value_and_weights(pt).0
    }

    /// Gradient and Hessian of `ln M_c`.
    pub fn log_derivatives(&self, pt: Vec2) -> (f64, Vec2, Sym2) {
        let (lv, w1, w2) = self.log_value_and_weights(pt);
        let g1 = self.pair.f1.log_density_grad(pt);
        let g2 = self.pair.f2.log_density_grad(pt);
        let g = g1 * w1 + g2 * w2;
        let p1 = self.pair.f1.precision.sym();
        let p2 = self.pair.f2.precision.sym();
        let outer = |v: Vec2| Sym2::new(v.x * v.x, v.x * v.y, v.y * v.y);
        let h = outer(g1)
            .sub(&p1)
            .scale(w1)
            .add(&outer(g2).sub(&p2).scale(w2))
            .sub(&outer(g));
        (lv, g, h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn crossed() -> GaussianPair {
        GaussianPair::from_params(
            Vec2::ZERO,
            Sym2::diag(1.0, 0.2),
            Vec2::new(1.0, 1.0),
            Sym2::diag(0.2, 1.0),
        )
        .unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn density_examples() {
        let g = Gaussian2D::standard();
        assert!(rel(g.density(Vec2::ZERO), 1.0 / (2.0 * PI)) < 1e-15);
        assert!(rel(g.density(Vec2::new(1.0, 0.0)), libm::exp(-0.5) / (2.0 * PI)) < 1e-15);
        let g = Gaussian2D::new(Vec2::ZERO, Spd2::diag(1.0, 0.2).unwrap()).unwrap();
        let expected = libm::exp(-3.0) / (2.0 * PI * libm::sqrt(0.2));
        assert!(rel(g.density(Vec2::new(1.0, 1.0)), expected) < 1e-14);
        assert!(rel(g.peak(), 1.0 / (2.0 * PI * libm::sqrt(0.2))) < 1e-15);
    }

    #[test]
    fn log_gradient_examples() {
        let g = Gaussian2D::new(Vec2::new(0.4, -2.0), Spd2::new(2.0, 0.3, 0.5).unwrap()).unwrap();
        assert_eq!(g.log_density_grad(g.mu()), Vec2::ZERO);
        assert_eq!(
            Gaussian2D::standard().log_density_grad(Vec2::new(1.0, 0.0)),
            Vec2::new(-1.0, 0.0)
        );
        let g = Gaussian2D::new(Vec2::ZERO, Spd2::diag(1.0, 0.2).unwrap()).unwrap();
        let pt = Vec2::new(1.0, 1.0);
        let grad = g.log_density_grad(pt);
        assert!((grad.x + 1.0).abs() < 1e-15 && (grad.y + 5.0).abs() < 1e-14);
        let h = 1e-6;
        let fd = |d: Vec2| (g.log_density(pt + d * h) - g.log_density(pt - d * h)) / (2.0 * h);
        assert!((fd(Vec2::new(1.0, 0.0)) - grad.x).abs() < 1e-6);
        assert!((fd(Vec2::new(0.0, 1.0)) - grad.y).abs() < 1e-6);
    }

    #[test]
    fn mixture_endpoints_and_midpoint() {
        let pair = crossed();
        let pt = Vec2::new(0.5, 0.5);
        assert_eq!(
            Mixture::new(pair, 0.0).unwrap().value(pt),
            pair.f2.density(pt)
        );
        assert_eq!(
            Mixture::new(pair, 1.0).unwrap().value(pt),
            pair.f1.density(pt)
        );
        let m = Mixture::new(pair, 0.5).unwrap();
        let (a, b) = pair.eval(pt);
        assert!(rel(m.value(pt), 0.5 * (a + b)) < 1e-15);
        assert!(rel(libm::exp(m.log_value(pt)), m.value(pt)) < 1e-14);
        assert_eq!(Mixture::new(pair, 1.5), Err(Error::MixingOutOfRange(1.5)));
    }

    #[test]
    fn single_component_maximum() {
        let pair = crossed();
        let m = Mixture::new(pair, 1.0).unwrap();
        assert_eq!(m.grad(pair.f1.mu()), Vec2::ZERO);
        let h = m.hessian(pair.f1.mu());
        assert!(h.a11 < 0.0 && h.det() > 0.0);
    }

    #[test]
    fn mixture_gradient_matches_finite_differences() {
        let m = Mixture::new(crossed(), 0.5).unwrap();
        let pt = Vec2::new(0.5, 0.5);
        let h = 1e-5;
        let g = m.grad(pt);
        let fx = (m.value(pt + Vec2::new(h, 0.0)) - m.value(pt - Vec2::new(h, 0.0))) / (2.0 * h);
        let fy = (m.value(pt + Vec2::new(0.0, h)) - m.value(pt - Vec2::new(0.0, h))) / (2.0 * h);
        assert!(rel(g.x, fx) < 1e-6 && rel(g.y, fy) < 1e-6);
    }

    #[test]
    fn jacobian_det_examples() {
        let pair = crossed();
        assert_eq!(pair.jacobian_det(pair.f1.mu()), 0.0);
        let pt = Vec2::new(0.5, 0.5);
        let h = 1e-6;
        let d = |e: Vec2| {
            let (a1, a2) = pair.eval(pt + e * h);
            let (b1, b2) = pair.eval(pt - e * h);
            ((a1 - b1) / (2.0 * h), (a2 - b2) / (2.0 * h))
        };
        let (f1x, f2x) = d(Vec2::new(1.0, 0.0));
        let (f1y, f2y) = d(Vec2::new(0.0, 1.0));
        let fd_det = f1x * f2y - f1y * f2x;
        assert!(rel(pair.jacobian_det(pt), fd_det) < 1e-6);
        assert!(rel(pair.jacobian(pt).det(), pair.jacobian_det(pt)) < 1e-12);
        assert_eq!(pair.swapped().jacobian_det(pt), -pair.jacobian_det(pt));
    }

    #[test]
    fn equal_means_rejected() {
        let g = Gaussian2D::standard();
        assert_eq!(GaussianPair::new(g, g), Err(Error::EqualMeans));
    }

    #[test]
    fn push_forward_matches_change_of_variables() {
        let g = Gaussian2D::new(Vec2::new(0.5, -1.0), Spd2::new(2.0, 0.4, 0.7).unwrap()).unwrap();
        let t = Affine2::new(Mat2::new(1.3, 0.2, -0.5, 0.8), Vec2::new(0.1, 2.0)).unwrap();
        let pushed = g.push_forward(&t).unwrap();
        let det = t.linear().det().abs();
        let x = Vec2::new(0.2, 0.3);
        assert!(rel(pushed.density(t.apply(x)) * det, g.density(x)) < 1e-13);
    }
}
