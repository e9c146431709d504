//! Type 1/2/3 classification of a pair of normal densities by the shape of
//! the singular set of `F = (f1, f2)`.
//!
//! | type | singular set          | proportional | codirectional | modes      |
//! |------|-----------------------|--------------|---------------|------------|
//! | 1    | hyperbola (one cusp)  | no           | no            | 1, 2 or 3  |
//! | 2    | two intersecting lines| no           | yes           | 1 or 2     |
//! | 3    | line                  | yes          | –             | 1 or 2     |
//!
//! The type is decided from the proportional/codirectional flags. Canonical
//! coordinates (`μ1 = 0`, `Σ1 = I`, `Σ2 = diag(s1², s2²)`, `μ2 = m`) give the
//! singular set as the conic `λ(x, y) = xᵀQx + Lx = 0` with
//! `Q = [[0, −(s1²−s2²)/2], [−(s1²−s2²)/2, 0]]` and `L = (m2·s1², −m1·s2²)`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::gaussian::GaussianPair;
use crate::linalg::{Affine2, Mat2, Spd2, Sym2, Vec2};

/// Relative tolerance shared by the proportional, codirectional and canonical
/// trichotomy tests.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

const CUSP_SCAN_STEPS: usize = 4000;
const CUSP_BRACKET_WIDTH: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairType {
    Type1,
    Type2,
    Type3,
}

impl PairType {
    /// Largest possible number of modes of any mixture of a pair of this type.
    pub fn max_modes(self) -> usize {
        match self {
            PairType::Type1 => 3,
            PairType::Type2 | PairType::Type3 => 2,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            PairType::Type1 => 1,
            PairType::Type2 => 2,
            PairType::Type3 => 3,
        }
    }

    pub fn conic_kind(self) -> ConicKind {
        match self {
            PairType::Type1 => ConicKind::Hyperbola,
            PairType::Type2 => ConicKind::TwoLines,
            PairType::Type3 => ConicKind::Line,
        }
    }
}

impl fmt::Display for PairType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Type {}", self.index())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConicKind {
    Hyperbola,
    TwoLines,
    Line,
}

impl fmt::Display for ConicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConicKind::Hyperbola => "hyperbola",
            ConicKind::TwoLines => "two lines",
            ConicKind::Line => "line",
        })
    }
}

/// Canonical parameters of a pair and the source map that produces them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalForm {
    /// Canonical second mean `(m1, m2)`.
    pub m: Vec2,
    pub s1_sq: f64,
    pub s2_sq: f64,
    /// Maps original coordinates to canonical ones.
    pub to_canonical: Affine2,
}

impl CanonicalForm {
    /// The canonical pair `(N(0, I), N(m, diag(s1², s2²)))`.
    pub fn pair(&self) -> GaussianPair {
        GaussianPair::from_params(
            Vec2::ZERO,
            Sym2::IDENTITY,
            self.m,
            Sym2::diag(self.s1_sq, self.s2_sq),
        )
        .expect("canonical form has m ≠ 0 and positive variances")
    }

    /// Canonical trichotomy under the shared relative tolerance.
    pub fn kind(&self, rel_tol: f64) -> ConicKind {
        if (self.s1_sq - self.s2_sq).abs() <= rel_tol * self.s1_sq.max(self.s2_sq) {
            ConicKind::Line
        } else if (self.m.x * self.m.y).abs() <= rel_tol * self.m.dot(self.m) {
            ConicKind::TwoLines
        } else {
            ConicKind::Hyperbola
        }
    }

    pub fn sigma_max(&self) -> f64 {
        libm::sqrt(self.s1_sq.max(self.s2_sq).max(1.0))
    }
}

/// `λ(x, y) = xᵀQx + Lx` in canonical coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularConic {
    pub q: Sym2,
    pub l: Vec2,
    pub kind: ConicKind,
}

impl SingularConic {
    fn from_canonical(cf: &CanonicalForm, kind: ConicKind) -> Self {
        let off = -0.5 * (cf.s1_sq - cf.s2_sq);
        SingularConic {
            q: Sym2::new(0.0, off, 0.0),
            l: Vec2::new(cf.m.y * cf.s1_sq, -cf.m.x * cf.s2_sq),
            kind,
        }
    }

    pub fn eval(&self, z: Vec2) -> f64 {
        self.q.quad_form(z) + self.l.dot(z)
    }

    pub fn gradient(&self, z: Vec2) -> Vec2 {
        self.q.mul_vec(z) * 2.0 + self.l
    }
}

/// Location of the cusp of a Type 1 pair with its bisection certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuspReport {
    /// Original coordinates.
    pub point: Vec2,
    /// Final bracket, original coordinates.
    pub bracket: [Vec2; 2],
    pub bracket_width: f64,
    /// Unit kernel × unit tangent at the two bracket ends; opposite signs.
    pub cross_left: f64,
    pub cross_right: f64,
    /// More than one sign change was seen; the steepest one was kept.
    pub ambiguous: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub pair_type: PairType,
    /// `Some(r)` with `Σ1 = r·Σ2` when the covariances are proportional.
    pub proportional: Option<f64>,
    /// Defined only for non-proportional covariances.
    pub codirectional: Option<bool>,
    /// `μ1 − μ2` is an eigenvector of both covariances.
    pub shared_eigenvector: bool,
    pub canonical: CanonicalForm,
    pub conic: SingularConic,
    pub cusp: Option<CuspReport>,
}

/// `Some(r)`, `r = tr Σ1 / tr Σ2`, iff `‖Σ1 − rΣ2‖_max ≤ rel_tol · ‖Σ1‖_max`.
pub fn is_proportional(s1: &Spd2, s2: &Spd2, rel_tol: f64) -> Option<f64> {
    let (a, b) = (s1.sym(), s2.sym());
    let r = a.trace() / b.trace();
    (a.sub(&b.scale(r)).norm_max() <= rel_tol * a.norm_max()).then_some(r)
}

/// Whether `d = μ1 − μ2` is an eigenvector of `Σ2 Σ1⁻¹`, tested as
/// `|cross(Σ1⁻¹d, Σ2⁻¹d)| ≤ rel_tol · ‖Σ1⁻¹d‖ ‖Σ2⁻¹d‖`.
///
/// This is the affine-invariant form of "d is an eigenvector of both Σ1 and
/// Σ2": it agrees whenever either covariance is a multiple of the identity,
/// is implied by it in general, and is preserved by every affine change of
/// coordinates.
pub fn is_codirectional(p: &GaussianPair, rel_tol: f64) -> Result<bool> {
    if is_proportional(&p.f1.sigma(), &p.f2.sigma(), rel_tol).is_some() {
        return Err(Error::ProportionalCovariances);
    }
    let d = p.mean_offset();
    let u = p.f1.precision().mul_vec(d);
    let v = p.f2.precision().mul_vec(d);
    Ok(u.cross(v).abs() <= rel_tol * u.norm() * v.norm())
}

/// Literal eigenvector test: `|cross(Σi d, d)| ≤ rel_tol · ‖Σi‖_max ‖d‖²` for both `i`.
/// Not affine invariant; see [`is_codirectional`].
pub fn shares_mean_eigenvector(p: &GaussianPair, rel_tol: f64) -> bool {
    let d = p.f1.mu() - p.f2.mu();
    [p.f1.sigma(), p.f2.sigma()]
        .iter()
        .all(|s| s.mul_vec(d).cross(d).abs() <= rel_tol * s.sym().norm_max() * d.dot(d))
}

/// Translate by `−μ1`, whiten with `Σ1^{−1/2}`, then rotate so that the
/// whitened `Σ2` becomes `diag(s1², s2²)` with `s1² ≥ s2²`.
pub fn canonicalize(p: &GaussianPair) -> Result<CanonicalForm> {
    let d = p.mean_offset();
    if d == Vec2::ZERO {
        return Err(Error::EqualMeans);
    }
    let w = p.f1.sigma().inv_sqrt().sym().to_mat();
    let whitened = p.f2.sigma().sym().congruence(&w);
    let eig = whitened.eigen();
    let linear = eig.rot.transpose() * w;
    let to_canonical = Affine2::new(linear, -linear.mul_vec(p.f1.mu()))?;
    Ok(CanonicalForm {
        m: linear.mul_vec(d),
        s1_sq: eig.lambda1,
        s2_sq: eig.lambda2,
        to_canonical,
    })
}

pub fn pair_type(p: &GaussianPair, rel_tol: f64) -> PairType {
    if is_proportional(&p.f1.sigma(), &p.f2.sigma(), rel_tol).is_some() {
        PairType::Type3
    } else if is_codirectional(p, rel_tol).unwrap_or(false) {
        PairType::Type2
    } else {
        PairType::Type1
    }
}

pub fn singular_conic(cf: &CanonicalForm) -> SingularConic {
    SingularConic::from_canonical(cf, cf.kind(DEFAULT_REL_TOL))
}

pub fn classify(p: &GaussianPair, rel_tol: f64) -> Result<ClassificationReport> {
    let proportional = is_proportional(&p.f1.sigma(), &p.f2.sigma(), rel_tol);
    let codirectional = match proportional {
        Some(_) => None,
        None => Some(is_codirectional(p, rel_tol)?),
    };
    let ty = pair_type(p, rel_tol);
    let canonical = canonicalize(p)?;
    let cusp = match ty {
        PairType::Type1 => Some(locate_cusp(p)?),
        _ => None,
    };
    Ok(ClassificationReport {
        pair_type: ty,
        proportional,
        codirectional,
        shared_eigenvector: shares_mean_eigenvector(p, rel_tol),
        canonical,
        conic: SingularConic::from_canonical(&canonical, ty.conic_kind()),
        cusp,
    })
}

/// Rectangular hyperbola `(x − x0)(y − y0) = k` in canonical coordinates.
struct HyperbolaFrame {
    center: Vec2,
    k: f64,
}

impl HyperbolaFrame {
    fn new(cf: &CanonicalForm) -> Self {
        let diff = cf.s1_sq - cf.s2_sq;
        HyperbolaFrame {
            center: Vec2::new(-cf.s2_sq * cf.m.x / diff, cf.s1_sq * cf.m.y / diff),
            k: -cf.s1_sq * cf.s2_sq * cf.m.x * cf.m.y / (diff * diff),
        }
    }

    /// Point of the branch `side ∈ {−1, +1}` at parameter `t`: `x − x0 = side·√|k|·eᵗ`.
    fn point(&self, side: f64, t: f64) -> Vec2 {
        let u = side * libm::sqrt(self.k.abs()) * libm::exp(t);
        Vec2::new(self.center.x + u, self.center.y + self.k / u)
    }

    /// Parameter half-range so that each branch reaches `window` past the centre.
    fn t_max(&self, window: f64) -> f64 {
        let reach = window + self.center.norm();
        libm::log(reach / libm::sqrt(self.k.abs())).max(1.0)
    }
}

fn window(cf: &CanonicalForm) -> f64 {
    10.0 * cf.m.norm().max(cf.sigma_max())
}

fn linspace(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| {
        if n == 1 {
            0.5 * (a + b)
        } else {
            a + (b - a) * i as f64 / (n - 1) as f64
        }
    })
}

/// `n` points of the singular set in original coordinates, grouped by branch
/// (two hyperbola branches, two lines, or one line).
pub fn sample_singular_set(p: &GaussianPair, n: usize) -> Result<Vec<Vec<Vec2>>> {
    if n < 2 {
        return Err(Error::TooFewSamples { min: 2, got: n });
    }
    let cf = canonicalize(p)?;
    let back = cf.to_canonical.inverse()?;
    let w = window(&cf);
    let (n_a, n_b) = (n / 2, n - n / 2);
    let m = cf.m;

    let branches: Vec<Vec<Vec2>> = match pair_type(p, DEFAULT_REL_TOL) {
        PairType::Type3 => {
            let dir = m.normalized();
            let len = m.norm();
            alloc::vec![linspace(-w, len + w, n).map(|t| dir * t).collect()]
        }
        PairType::Type2 => {
            let diff = cf.s1_sq - cf.s2_sq;
            if m.y.abs() <= m.x.abs() {
                // y = 0 and x = −s2² m1 / (s1² − s2²)
                let x0 = -cf.s2_sq * m.x / diff;
                let lo = m.x.min(0.0).min(x0) - w;
                let hi = m.x.max(0.0).max(x0) + w;
                alloc::vec![
                    linspace(lo, hi, n_a).map(|x| Vec2::new(x, 0.0)).collect(),
                    linspace(-w, w, n_b).map(|y| Vec2::new(x0, y)).collect(),
                ]
            } else {
                // x = 0 and y = s1² m2 / (s1² − s2²)
                let y0 = cf.s1_sq * m.y / diff;
                let lo = m.y.min(0.0).min(y0) - w;
                let hi = m.y.max(0.0).max(y0) + w;
                alloc::vec![
                    linspace(lo, hi, n_a).map(|y| Vec2::new(0.0, y)).collect(),
                    linspace(-w, w, n_b).map(|x| Vec2::new(x, y0)).collect(),
                ]
            }
        }
        PairType::Type1 => {
            let h = HyperbolaFrame::new(&cf);
            let t = h.t_max(w);
            alloc::vec![
                linspace(-t, t, n_a).map(|s| h.point(-1.0, s)).collect(),
                linspace(-t, t, n_b).map(|s| h.point(1.0, s)).collect(),
            ]
        }
    };
    Ok(branches
        .into_iter()
        .filter(|b| !b.is_empty())
        .map(|b| b.into_iter().map(|z| back.apply(z)).collect())
        .collect())
}

/// Kernel direction of `J_F` at canonical `z`, from the matrix of
/// log-gradients (same kernel, rows rescaled by the positive densities).
fn canonical_kernel(cf: &CanonicalForm, z: Vec2) -> Vec2 {
    let a = -z;
    let b = Vec2::new(-(z.x - cf.m.x) / cf.s1_sq, -(z.y - cf.m.y) / cf.s2_sq);
    Mat2::from_rows(a, b).smallest_right_singular().2
}

struct CuspProbe<'a> {
    cf: &'a CanonicalForm,
    conic: SingularConic,
    frame: HyperbolaFrame,
    side: f64,
}

impl CuspProbe<'_> {
    /// Unit kernel × unit tangent with the kernel sign aligned to `reference`.
    fn cross(&self, t: f64, reference: Vec2) -> (f64, Vec2) {
        let z = self.frame.point(self.side, t);
        let mut k = canonical_kernel(self.cf, z);
        if k.dot(reference) < 0.0 {
            k = -k;
        }
        let tangent = self.conic.gradient(z).perp().normalized();
        (k.cross(tangent), k)
    }
}

/// The unique cusp of a Type 1 singular set, where the kernel of `J_F` is
/// tangent to `S(F)`.
///
/// Each hyperbola branch is scanned with the kernel direction tracked
/// continuously; the sign change of `cross(kernel, tangent)` is then refined by
/// bisection until the bracket is narrower than `1e-10` in original units.
pub fn locate_cusp(p: &GaussianPair) -> Result<CuspReport> {
    let ty = pair_type(p, DEFAULT_REL_TOL);
    if ty != PairType::Type1 {
        return Err(Error::NotType1(ty));
    }
    let cf = canonicalize(p)?;
    let back = cf.to_canonical.inverse()?;
    let frame = HyperbolaFrame::new(&cf);
    let t_max = frame.t_max(window(&cf));

    // (side, t_left, t_right, g_left, g_right, kernel_left)
    let mut crossings: Vec<(f64, f64, f64, f64, f64, Vec2)> = Vec::new();
    for side in [-1.0, 1.0] {
        let probe = CuspProbe {
            cf: &cf,
            conic: SingularConic::from_canonical(&cf, ConicKind::Hyperbola),
            frame: HyperbolaFrame::new(&cf),
            side,
        };
        let ts: Vec<f64> = linspace(-t_max, t_max, CUSP_SCAN_STEPS).collect();
        let first = canonical_kernel(&cf, frame.point(side, ts[0]));
        let (mut g_prev, mut k_prev) = probe.cross(ts[0], first);
        for w in ts.windows(2) {
            let (g, k) = probe.cross(w[1], k_prev);
            if g_prev * g < 0.0 || g == 0.0 {
                crossings.push((side, w[0], w[1], g_prev, g, k_prev));
            }
            g_prev = g;
            k_prev = k;
        }
    }
    let ambiguous = crossings.len() > 1;
    let &(side, mut lo, mut hi, mut g_lo, mut g_hi, mut k_lo) = crossings
        .iter()
        .max_by(|a, b| (a.4 - a.3).abs().total_cmp(&(b.4 - b.3).abs()))
        .ok_or(Error::CuspNotFound)?;

    let probe = CuspProbe {
        cf: &cf,
        conic: SingularConic::from_canonical(&cf, ConicKind::Hyperbola),
        frame,
        side,
    };
    let to_orig = |t: f64| back.apply(probe.frame.point(side, t));
    for _ in 0..200 {
        if to_orig(lo).distance(to_orig(hi)) < CUSP_BRACKET_WIDTH || g_hi == 0.0 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let (g, k) = probe.cross(mid, k_lo);
        if (g < 0.0) == (g_lo < 0.0) && g != 0.0 {
            lo = mid;
            g_lo = g;
            k_lo = k;
        } else {
            hi = mid;
            g_hi = g;
        }
    }
    let bracket = [to_orig(lo), to_orig(hi)];
    Ok(CuspReport {
        point: to_orig(0.5 * (lo + hi)),
        bracket,
        bracket_width: bracket[0].distance(bracket[1]),
        cross_left: g_lo,
        cross_right: g_hi,
        ambiguous,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(mu1: Vec2, s1: Sym2, mu2: Vec2, s2: Sym2) -> GaussianPair {
        GaussianPair::from_params(mu1, s1, mu2, s2).unwrap()
    }

    fn crossed() -> GaussianPair {
        pair(
            Vec2::ZERO,
            Sym2::diag(1.0, 0.2),
            Vec2::new(1.0, 1.0),
            Sym2::diag(0.2, 1.0),
        )
    }

    const TOL: f64 = DEFAULT_REL_TOL;

    #[test]
    fn proportionality_examples() {
        let i = Spd2::IDENTITY;
        assert_eq!(is_proportional(&i, &i, TOL), Some(1.0));
        let a = Spd2::diag(1.0, 0.2).unwrap();
        let b = Spd2::diag(0.2, 1.0).unwrap();
        assert_eq!(is_proportional(&a, &b, TOL), None);
        assert_eq!(
            is_proportional(&Spd2::diag(2.0, 2.0).unwrap(), &i, TOL),
            Some(2.0)
        );
    }

    #[test]
    fn codirectionality_examples() {
        let s1 = Sym2::new(1.0, -0.5, 1.0);
        let s2 = Sym2::new(1.0, 0.5, 1.0);
        let not_codir = pair(Vec2::ZERO, s1, Vec2::new(0.0, 1.0), s2);
        assert!(!is_codirectional(&not_codir, TOL).unwrap());
        let codir = pair(Vec2::ZERO, s1, Vec2::new(1.0, 1.0), s2);
        assert!(is_codirectional(&codir, TOL).unwrap());
        assert!(shares_mean_eigenvector(&codir, TOL));

        let axis_offset = pair(
            Vec2::ZERO,
            Sym2::diag(1.0, 0.2),
            Vec2::new(1.0, 0.0),
            Sym2::diag(0.2, 1.0),
        );
        assert!(is_codirectional(&axis_offset, TOL).unwrap());

        let prop = pair(
            Vec2::ZERO,
            Sym2::IDENTITY,
            Vec2::new(1.0, 0.0),
            Sym2::diag(3.0, 3.0),
        );
        assert_eq!(
            is_codirectional(&prop, TOL),
            Err(Error::ProportionalCovariances)
        );
    }

    #[test]
    fn codirectionality_survives_shear() {
        let p = pair(
            Vec2::ZERO,
            Sym2::IDENTITY,
            Vec2::new(1.0, 0.0),
            Sym2::diag(2.0, 1.0),
        );
        let shear = Affine2::new(Mat2::new(1.0, -1.0, 0.0, 1.0), Vec2::ZERO).unwrap();
        let sheared = p.push_forward(&shear).unwrap();
        assert!(!shares_mean_eigenvector(&sheared, TOL));
        assert!(is_codirectional(&sheared, TOL).unwrap());
        assert_eq!(pair_type(&sheared, TOL), PairType::Type2);
    }

    #[test]
    fn canonical_examples() {
        let p = pair(
            Vec2::ZERO,
            Sym2::IDENTITY,
            Vec2::new(1.0, 0.0),
            Sym2::diag(4.0, 1.0),
        );
        let cf = canonicalize(&p).unwrap();
        assert_eq!(cf.m, Vec2::new(1.0, 0.0));
        assert_eq!((cf.s1_sq, cf.s2_sq), (4.0, 1.0));
        assert_eq!(cf.to_canonical, Affine2::IDENTITY);

        let cf = canonicalize(&crossed()).unwrap();
        assert!(cf.m.x * cf.m.y != 0.0 && cf.s1_sq > cf.s2_sq);
        let pushed = crossed().push_forward(&cf.to_canonical).unwrap();
        assert!(pushed.f1.mu().norm() < 1e-12);
        assert!(pushed.f1.sigma().sym().sub(&Sym2::IDENTITY).norm_max() < 1e-12);
        assert!(pushed.f2.mu().distance(cf.m) < 1e-12);
        let s2 = pushed.f2.sigma().sym();
        assert!(s2.sub(&Sym2::diag(cf.s1_sq, cf.s2_sq)).norm_max() < 1e-12);
    }

    #[test]
    fn types_of_reference_pairs() {
        assert_eq!(pair_type(&crossed(), TOL), PairType::Type1);
        let correlated = pair(
            Vec2::ZERO,
            Sym2::IDENTITY,
            Vec2::new(1.0, 1.0),
            Sym2::new(1.0, 0.8, 1.0),
        );
        assert_eq!(pair_type(&correlated, TOL), PairType::Type2);
        let shifted = pair(
            Vec2::ZERO,
            Sym2::IDENTITY,
            Vec2::new(1.0, 0.0),
            Sym2::IDENTITY,
        );
        assert_eq!(pair_type(&shifted, TOL), PairType::Type3);
        // mean offset along a shared axis: codirectional, hence Type 2
        let axis_offset = pair(
            Vec2::ZERO,
            Sym2::diag(1.0, 0.2),
            Vec2::new(1.0, 0.0),
            Sym2::diag(0.2, 1.0),
        );
        assert_eq!(pair_type(&axis_offset, TOL), PairType::Type2);
    }

    #[test]
    fn conic_examples() {
        let cf = CanonicalForm {
            m: Vec2::new(1.0, 0.0),
            s1_sq: 0.2,
            s2_sq: 5.0,
            to_canonical: Affine2::IDENTITY,
        };
        let c = singular_conic(&cf);
        assert_eq!(c.kind, ConicKind::TwoLines);
        assert_eq!(c.l, Vec2::new(0.0, -5.0));
        assert!((c.q.a12 - 2.4).abs() < 1e-15 && c.q.a11 == 0.0 && c.q.a22 == 0.0);
        assert_eq!(c.eval(Vec2::ZERO), 0.0);

        let cf = CanonicalForm {
            m: Vec2::new(1.0, 1.0),
            s1_sq: 2.5,
            s2_sq: 2.5,
            to_canonical: Affine2::IDENTITY,
        };
        let c = singular_conic(&cf);
        assert_eq!(c.kind, ConicKind::Line);
        assert_eq!(c.q, Sym2::new(0.0, 0.0, 0.0));
    }

    #[test]
    fn conic_matches_log_gradient_cross() {
        let cf = canonicalize(&crossed()).unwrap();
        let canon = cf.pair();
        let c = singular_conic(&cf);
        for z in [
            Vec2::new(0.3, -1.2),
            Vec2::new(2.0, 0.7),
            Vec2::new(-4.0, 3.0),
        ] {
            // λ = −s1² s2² · cross(∇log f1, ∇log f2)
            let lhs = c.eval(z);
            let rhs = -cf.s1_sq * cf.s2_sq * canon.log_grad_cross(z);
            assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()));
        }
        assert!(c.eval(cf.m).abs() < 1e-12);
    }

    #[test]
    fn singular_set_samples_lie_on_the_set() {
        let correlated = pair(
            Vec2::ZERO,
            Sym2::IDENTITY,
            Vec2::new(1.0, 1.0),
            Sym2::new(1.0, 0.8, 1.0),
        );
        let shifted = pair(
            Vec2::ZERO,
            Sym2::IDENTITY,
            Vec2::new(1.0, 0.0),
            Sym2::IDENTITY,
        );
        for (p, n_branches) in [(crossed(), 2), (correlated, 2), (shifted, 1)] {
            let branches = sample_singular_set(&p, 400).unwrap();
            assert_eq!(branches.len(), n_branches);
            assert_eq!(branches.iter().map(Vec::len).sum::<usize>(), 400);
            for pt in branches.iter().flatten() {
                assert!(p.singular_residual(*pt) < 1e-8, "{pt:?}");
            }
        }
        // Type 3: the line through both means
        for pt in &sample_singular_set(&shifted, 50).unwrap()[0] {
            assert!(pt.y.abs() < 1e-14);
        }
        assert!(matches!(
            sample_singular_set(&shifted, 1),
            Err(Error::TooFewSamples { .. })
        ));
    }

    #[test]
    fn type2_lines_match_factorisation() {
        let (s1, s2, m1) = (0.2, 5.0, 1.0);
        let p = pair(
            Vec2::ZERO,
            Sym2::IDENTITY,
            Vec2::new(m1, 0.0),
            Sym2::diag(s1, s2),
        );
        let cf = canonicalize(&p).unwrap();
        let x0 = s2 * m1 / (s2 - s1);
        // canonical axes are swapped (s1² ≥ s2²); check in original coordinates
        let branches = sample_singular_set(&p, 200).unwrap();
        assert!(cf.m.x.abs() < 1e-15);
        for pt in branches.iter().flatten() {
            assert!(pt.y.abs() < 1e-12 || (pt.x - x0).abs() < 1e-12, "{pt:?}");
        }
    }

    #[test]
    fn cusp_guard_and_certificate() {
        let shifted = pair(
            Vec2::ZERO,
            Sym2::IDENTITY,
            Vec2::new(1.0, 0.0),
            Sym2::IDENTITY,
        );
        assert_eq!(locate_cusp(&shifted), Err(Error::NotType1(PairType::Type3)));

        let c = locate_cusp(&crossed()).unwrap();
        assert!(c.bracket_width < 1e-10);
        assert!(c.cross_left * c.cross_right <= 0.0);
        assert!(crossed().singular_residual(c.point) < 1e-8);
        assert!(!c.ambiguous);
        // (x, y) ↦ (1 − y, 1 − x) swaps the two densities, so it fixes the cusp
        assert!((c.point.x + c.point.y - 1.0).abs() < 1e-8, "{:?}", c.point);
    }

    #[test]
    fn report_flags_follow_table() {
        let r = classify(&crossed(), TOL).unwrap();
        assert_eq!(r.pair_type, PairType::Type1);
        assert_eq!((r.proportional, r.codirectional), (None, Some(false)));
        assert_eq!(r.conic.kind, ConicKind::Hyperbola);
        assert!(r.cusp.is_some());

        let shifted = pair(
            Vec2::ZERO,
            Sym2::IDENTITY,
            Vec2::new(1.0, 0.0),
            Sym2::IDENTITY,
        );
        let r = classify(&shifted, TOL).unwrap();
        assert_eq!(
            (r.pair_type, r.proportional, r.codirectional),
            (PairType::Type3, Some(1.0), None)
        );
        assert_eq!(r.conic.kind, ConicKind::Line);
    }
}
