//! Exact-size 2×2 linear algebra.
//!
//! Everything here is closed form: adjugate inverses, trace/determinant
//! eigenvalues and a half-angle rotation for the eigenvectors.

use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Relative gap below which the two eigenvalues of a [`Sym2`] are treated as
/// equal and the eigenbasis defaults to the identity.
pub const DEGENERATE_SPECTRUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// Scalar cross product `x·o.y − y·o.x`.
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        libm::hypot(self.x, self.y)
    }

    pub fn norm_max(self) -> f64 {
        self.x.abs().max(self.y.abs())
    }

    /// Counter-clockwise quarter turn.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    /// Unit vector in the same direction; the zero vector is returned unchanged.
    pub fn normalized(self) -> Vec2 {
        let n = self.norm();
        if n > 0.0 {
            self * (1.0 / n)
        } else {
            self
        }
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

/// General 2×2 matrix, row major: `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn diag(d1: f64, d2: f64) -> Self {
        Mat2::new(d1, 0.0, 0.0, d2)
    }

    /// Counter-clockwise rotation by `theta` radians.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = libm::sincos(theta);
        Mat2::new(c, -s, s, c)
    }

    pub fn from_cols(c0: Vec2, c1: Vec2) -> Self {
        Mat2::new(c0.x, c1.x, c0.y, c1.y)
    }

    pub fn from_rows(r0: Vec2, r1: Vec2) -> Self {
        Mat2::new(r0.x, r0.y, r1.x, r1.y)
    }

    pub fn col(&self, j: usize) -> Vec2 {
        match j {
            0 => Vec2::new(self.a, self.c),
            _ => Vec2::new(self.b, self.d),
        }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.a, self.c, self.b, self.d)
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return Err(Error::SingularAffine);
        }
        let r = 1.0 / det;
        Ok(Mat2::new(self.d * r, -self.b * r, -self.c * r, self.a * r))
    }

    pub fn mul_vec(&self, v: Vec2) -> Vec2 {
        Vec2::new(self.a * v.x + self.b * v.y, self.c * v.x + self.d * v.y)
    }

    pub fn norm_max(&self) -> f64 {
        self.a
            .abs()
            .max(self.b.abs())
            .max(self.c.abs())
            .max(self.d.abs())
    }

    /// Largest absolute entry of `self − o`.
    pub fn max_abs_diff(&self, o: &Mat2) -> f64 {
        Mat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d).norm_max()
    }

    /// Symmetric part `(M + Mᵀ)/2`.
    pub fn symmetric_part(&self) -> Sym2 {
        Sym2::new(self.a, 0.5 * (self.b + self.c), self.d)
    }

    /// Singular values `(s_max, s_min)` and the right singular vector of `s_min`.
    pub fn smallest_right_singular(&self) -> (f64, f64, Vec2) {
        let gram = Sym2::new(
            self.a * self.a + self.c * self.c,
            self.a * self.b + self.c * self.d,
            self.b * self.b + self.d * self.d,
        );
        let eig = gram.eigen();
        let s_max = libm::sqrt(eig.lambda1.max(0.0));
        let s_min = libm::sqrt(eig.lambda2.max(0.0));
        (s_max, s_min, eig.rot.col(1))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Mul<Vec2> for Mat2 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        self.mul_vec(v)
    }
}

/// Symmetric 2×2 matrix with the off-diagonal stored once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sym2 {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
}

/// Eigen-decomposition `rot · diag(lambda1, lambda2) · rotᵀ` with
/// `lambda1 ≥ lambda2` and `rot` a proper rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymEigen {
    pub lambda1: f64,
    pub lambda2: f64,
    /// Rotation angle of the `lambda1` eigenvector, in `(−π/2, π/2]`.
    pub angle: f64,
    pub rot: Mat2,
}

impl SymEigen {
    pub fn reconstruct(&self) -> Sym2 {
        let m = self.rot * Mat2::diag(self.lambda1, self.lambda2) * self.rot.transpose();
        m.symmetric_part()
    }
}

impl Sym2 {
    pub const IDENTITY: Sym2 = Sym2::new(1.0, 0.0, 1.0);

    pub const fn new(a11: f64, a12: f64, a22: f64) -> Self {
        Sym2 { a11, a12, a22 }
    }

    pub const fn diag(d1: f64, d2: f64) -> Self {
        Sym2::new(d1, 0.0, d2)
    }

    pub fn to_mat(self) -> Mat2 {
        Mat2::new(self.a11, self.a12, self.a12, self.a22)
    }

    pub fn is_finite(&self) -> bool {
        self.a11.is_finite() && self.a12.is_finite() && self.a22.is_finite()
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a12
    }

    pub fn trace(&self) -> f64 {
        self.a11 + self.a22
    }

    pub fn mul_vec(&self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.a11 * v.x + self.a12 * v.y,
            self.a12 * v.x + self.a22 * v.y,
        )
    }

    /// `vᵀ · self · v`
    pub fn quad_form(&self, v: Vec2) -> f64 {
        self.a11 * v.x * v.x + 2.0 * self.a12 * v.x * v.y + self.a22 * v.y * v.y
    }

    pub fn scale(&self, s: f64) -> Sym2 {
        Sym2::new(self.a11 * s, self.a12 * s, self.a22 * s)
    }

    pub fn add(&self, o: &Sym2) -> Sym2 {
        Sym2::new(self.a11 + o.a11, self.a12 + o.a12, self.a22 + o.a22)
    }

    pub fn sub(&self, o: &Sym2) -> Sym2 {
        Sym2::new(self.a11 - o.a11, self.a12 - o.a12, self.a22 - o.a22)
    }

    pub fn norm_max(&self) -> f64 {
        self.a11.abs().max(self.a12.abs()).max(self.a22.abs())
    }

    /// Adjugate; equals `det · self⁻¹` and is defined for every matrix.
    pub fn adjugate(&self) -> Sym2 {
        Sym2::new(self.a22, -self.a12, self.a11)
    }

    /// `Aᵀ · self · A` for a general `A`.
    pub fn congruence(&self, a: &Mat2) -> Sym2 {
        (a.transpose() * self.to_mat() * *a).symmetric_part()
    }

    /// Closed-form eigen-decomposition.
    ///
    /// When the eigenvalues agree to [`DEGENERATE_SPECTRUM_TOL`] relative, the
    /// rotation is the identity.
    pub fn eigen(&self) -> SymEigen {
        let half_trace = 0.5 * (self.a11 + self.a22);
        let half_diff = 0.5 * (self.a11 - self.a22);
        let radius = libm::hypot(half_diff, self.a12);
        let det = self.det();
        // the eigenvalue of smaller magnitude is recovered from det to avoid cancellation
        let (lambda1, lambda2) = if half_trace >= 0.0 {
            let l1 = half_trace + radius;
            let l2 = if l1 != 0.0 {
                det / l1
            } else {
                half_trace - radius
            };
            (l1, l2.min(l1))
        } else {
            let l2 = half_trace - radius;
            let l1 = if l2 != 0.0 {
                det / l2
            } else {
                half_trace + radius
            };
            (l1.max(l2), l2)
        };
        let scale = lambda1.abs().max(lambda2.abs());
        let angle = if radius <= DEGENERATE_SPECTRUM_TOL * scale || radius == 0.0 {
            0.0
        } else {
            0.5 * libm::atan2(2.0 * self.a12, self.a11 - self.a22)
        };
        // diagonal input with a22 > a11: exact quarter turn, no cos(π/2) residue
        let rot = if self.a12 == 0.0 && angle != 0.0 {
            Mat2::new(0.0, -1.0, 1.0, 0.0)
        } else {
            Mat2::rotation(angle)
        };
        SymEigen {
            lambda1,
            lambda2,
            angle,
            rot,
        }
    }
}

/// Symmetric positive definite 2×2 matrix.
///
/// The invariant `a11 > 0 ∧ a11·a22 − a12² > 0` is checked without tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spd2(Sym2);

impl Spd2 {
    pub const IDENTITY: Spd2 = Spd2(Sym2::IDENTITY);

    pub fn new(a11: f64, a12: f64, a22: f64) -> Result<Self> {
        Spd2::try_from_sym(Sym2::new(a11, a12, a22))
    }

    pub fn diag(d1: f64, d2: f64) -> Result<Self> {
        Spd2::new(d1, 0.0, d2)
    }

    pub fn try_from_sym(m: Sym2) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite("matrix"));
        }
        if m.a11 > 0.0 && m.det() > 0.0 {
            Ok(Spd2(m))
        } else {
            Err(Error::NotPositiveDefinite)
        }
    }

    pub fn sym(&self) -> Sym2 {
        self.0
    }

    pub fn det(&self) -> f64 {
        self.0.det()
    }

    pub fn mul_vec(&self, v: Vec2) -> Vec2 {
        self.0.mul_vec(v)
    }

    pub fn quad_form(&self, v: Vec2) -> f64 {
        self.0.quad_form(v)
    }

    /// Largest eigenvalue (spectral norm).
    pub fn spectral_norm(&self) -> f64 {
        self.0.eigen().lambda1
    }

    pub fn inverse(&self) -> Spd2 {
        let r = 1.0 / self.det();
        Spd2(self.0.adjugate().scale(r))
    }

    /// Symmetric `s` with `s · self · s = I`.
    pub fn inv_sqrt(&self) -> Spd2 {
        let e = self.0.eigen();
        let d = Mat2::diag(1.0 / libm::sqrt(e.lambda1), 1.0 / libm::sqrt(e.lambda2));
        Spd2((e.rot * d * e.rot.transpose()).symmetric_part())
    }

    pub fn scale(&self, s: f64) -> Result<Spd2> {
        Spd2::try_from_sym(self.0.scale(s))
    }
}

pub fn spd_inverse(m: Sym2) -> Result<Spd2> {
    Ok(Spd2::try_from_sym(m)?.inverse())
}

pub fn spd_inv_sqrt(m: Sym2) -> Result<Spd2> {
    Ok(Spd2::try_from_sym(m)?.inv_sqrt())
}

pub fn sym_eigen(m: Sym2) -> SymEigen {
    m.eigen()
}

/// Invertible affine map `v ↦ linear · v + shift`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine2 {
    linear: Mat2,
    shift: Vec2,
}

impl Affine2 {
    pub const IDENTITY: Affine2 = Affine2 {
        linear: Mat2::IDENTITY,
        shift: Vec2::ZERO,
    };

    pub fn new(linear: Mat2, shift: Vec2) -> Result<Self> {
        let det = linear.det();
        if det == 0.0 || !det.is_finite() || !shift.is_finite() {
            return Err(Error::SingularAffine);
        }
        Ok(Affine2 { linear, shift })
    }

    pub fn translation(shift: Vec2) -> Self {
        Affine2 {
            linear: Mat2::IDENTITY,
            shift,
        }
    }

    pub fn linear(&self) -> Mat2 {
        self.linear
    }

    pub fn shift(&self) -> Vec2 {
        self.shift
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        self.linear.mul_vec(v) + self.shift
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &Affine2) -> Affine2 {
        Affine2 {
            linear: self.linear * inner.linear,
            shift: self.linear.mul_vec(inner.shift) + self.shift,
        }
    }

    pub fn inverse(&self) -> Result<Affine2> {
        let inv = self.linear.inverse()?;
        Ok(Affine2 {
            linear: inv,
            shift: -inv.mul_vec(self.shift),
        })
    }
}
