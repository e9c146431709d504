//! Real polynomials in the monomial and Bernstein bases, with root isolation
//! on an interval.
//!
//! Roots are isolated by splitting the interval at the critical points
//! (the roots of the derivative, found recursively) so that the polynomial is
//! monotone on every piece; a piece then holds a simple root exactly when its
//! endpoint values differ in sign, and the root is refined by bisection.
//! Even-multiplicity roots have no sign change and are picked up at the
//! critical points instead.

use alloc::vec::Vec;

/// Coefficients in ascending order: `c[0] + c[1]·x + c[2]·x² + …`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

/// A root found by [`Poly::roots_in`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyRoot {
    pub x: f64,
    /// The polynomial touches zero without changing sign.
    pub touching: bool,
}

impl Poly {
    pub fn new(coeffs: &[f64]) -> Self {
        let mut p = Poly {
            coeffs: coeffs.to_vec(),
        };
        p.trim(0.0);
        p
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree after trimming; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Drops leading coefficients with magnitude at most `rel · max |c_i|`.
    pub fn trim(&mut self, rel: f64) {
        let max = self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        while let Some(&last) = self.coeffs.last() {
            if self.coeffs.len() > 1 && last.abs() <= rel * max {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `Σ |c_i| |x|^i`, the floating-point scale of [`Poly::eval`] at `x`.
    pub fn magnitude(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * ax + c.abs())
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly {
                coeffs: alloc::vec![0.0],
            };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * i as f64)
            .collect();
        Poly { coeffs }
    }

    /// Real roots in `[lo, hi]`, ascending, each refined to bracket width `xtol`.
    ///
    /// A critical point where `|p| ≤ touch_tol · magnitude` counts as a root;
    /// it is reported once, with `touching = true` when `p` keeps its sign
    /// across it.
    pub fn roots_in(&self, lo: f64, hi: f64, xtol: f64, touch_tol: f64) -> Vec<PolyRoot> {
        isolate(self, lo, hi, xtol, touch_tol)
    }
}

trait Univariate {
    fn degree(&self) -> usize;
    fn eval(&self, x: f64) -> f64;
    fn magnitude(&self, x: f64) -> f64;
    fn derivative(&self) -> Self;
}

impl Univariate for Poly {
    fn degree(&self) -> usize {
        Poly::degree(self)
    }
    fn eval(&self, x: f64) -> f64 {
        Poly::eval(self, x)
    }
    fn magnitude(&self, x: f64) -> f64 {
        Poly::magnitude(self, x)
    }
    fn derivative(&self) -> Self {
        Poly::derivative(self)
    }
}

fn isolate<P: Univariate>(p: &P, lo: f64, hi: f64, xtol: f64, touch_tol: f64) -> Vec<PolyRoot> {
    let mut out = Vec::new();
    if p.degree() == 0 || lo > hi {
        return out;
    }
    let crit: Vec<f64> = isolate(&p.derivative(), lo, hi, xtol, 0.0)
        .into_iter()
        .map(|r| r.x)
        .filter(|&x| x > lo && x < hi)
        .collect();

    let mut breaks = Vec::with_capacity(crit.len() + 2);
    breaks.push(lo);
    breaks.extend(crit.iter().copied());
    breaks.push(hi);
    let mut vals: Vec<f64> = breaks.iter().map(|&x| p.eval(x)).collect();
    // critical values indistinguishable from zero are snapped, so a double
    // root is reported once instead of as two crossings straddling it
    for i in 1..breaks.len() - 1 {
        if vals[i].abs() <= touch_tol * p.magnitude(breaks[i]) {
            vals[i] = 0.0;
        }
    }

    for i in 0..breaks.len() {
        if vals[i] == 0.0 {
            let left = if i > 0 { vals[i - 1] } else { 0.0 };
            let right = vals.get(i + 1).copied().unwrap_or(0.0);
            out.push(PolyRoot {
                x: breaks[i],
                touching: left * right > 0.0,
            });
        }
        if i + 1 < breaks.len() && vals[i] * vals[i + 1] < 0.0 {
            out.push(PolyRoot {
                x: bisect(p, breaks[i], breaks[i + 1], vals[i], xtol),
                touching: false,
            });
        }
    }

    out.sort_by(|a, b| a.x.total_cmp(&b.x));
    // a near-touch can sit next to a genuine crossing; keep the crossing
    let mut merged: Vec<PolyRoot> = Vec::with_capacity(out.len());
    for r in out {
        match merged.last_mut() {
            Some(prev) if (r.x - prev.x).abs() <= 4.0 * xtol => {
                if prev.touching && !r.touching {
                    *prev = r;
                }
            }
            _ => merged.push(r),
        }
    }
    merged
}

fn bisect<P: Univariate>(p: &P, mut a: f64, mut b: f64, fa: f64, xtol: f64) -> f64 {
    let neg_left = fa < 0.0;
    while b - a > xtol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = p.eval(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == neg_left {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Polynomial on `[0, 1]` in the Bernstein basis
/// `B_k(x) = C(n, k) xᵏ (1 − x)ⁿ⁻ᵏ`.
///
/// Evaluation by de Casteljau is backward stable, with error bounded by
/// `Σ |b_k| B_k(x)` rather than by the monomial coefficient sizes, which is
/// what keeps positive-coefficient products accurate across a large dynamic
/// range.
#[derive(Debug, Clone, PartialEq)]
pub struct Bernstein {
    coeffs: Vec<f64>,
}

impl Bernstein {
    pub fn new(coeffs: &[f64]) -> Self {
        assert!(
            !coeffs.is_empty(),
            "Bernstein polynomial needs a coefficient"
        );
        Bernstein {
            coeffs: coeffs.to_vec(),
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Nominal degree (number of coefficients minus one).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut b = self.coeffs.clone();
        let y = 1.0 - x;
        for r in 1..b.len() {
            for k in 0..b.len() - r {
                b[k] = y * b[k] + x * b[k + 1];
            }
        }
        b[0]
    }

    pub fn magnitude(&self, x: f64) -> f64 {
        Bernstein {
            coeffs: self.coeffs.iter().map(|c| c.abs()).collect(),
        }
        .eval(x.clamp(0.0, 1.0))
    }

    pub fn derivative(&self) -> Bernstein {
        let n = self.degree();
        if n == 0 {
            return Bernstein::new(&[0.0]);
        }
        Bernstein {
            coeffs: self
                .coeffs
                .windows(2)
                .map(|w| n as f64 * (w[1] - w[0]))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Bernstein) -> Bernstein {
        let (m, n) = (self.degree(), o.degree());
        let mut c = alloc::vec![0.0; m + n + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] += binomial(m, i) * binomial(n, j) / binomial(m + n, i + j) * a * b;
            }
        }
        Bernstein { coeffs: c }
    }

    /// Same polynomial with nominal degree raised by one.
    pub fn elevate(&self) -> Bernstein {
        let n = self.degree() + 1;
        let b = &self.coeffs;
        let coeffs = (0..=n)
            .map(|k| {
                let t = k as f64 / n as f64;
                let lo = if k > 0 { t * b[k - 1] } else { 0.0 };
                let hi = if k < n { (1.0 - t) * b[k] } else { 0.0 };
                lo + hi
            })
            .collect();
        Bernstein { coeffs }
    }

    /// Monomial coefficients, ascending.
    pub fn to_monomial(&self) -> Poly {
        let n = self.degree();
        let mut a = alloc::vec![0.0; n + 1];
        for (k, &b) in self.coeffs.iter().enumerate() {
            for (j, aj) in a.iter_mut().enumerate().skip(k) {
                let sign = if (j - k) % 2 == 0 { 1.0 } else { -1.0 };
                *aj += sign * binomial(n, j) * binomial(j, k) * b;
            }
        }
        Poly::new(&a)
    }

    /// Roots in `[0, 1]`, as [`Poly::roots_in`].
    pub fn roots(&self, xtol: f64, touch_tol: f64) -> Vec<PolyRoot> {
        isolate(self, 0.0, 1.0, xtol, touch_tol)
    }
}

impl Univariate for Bernstein {
    fn degree(&self) -> usize {
        Bernstein::degree(self)
    }
    fn eval(&self, x: f64) -> f64 {
        Bernstein::eval(self, x)
    }
    fn magnitude(&self, x: f64) -> f64 {
        Bernstein::magnitude(self, x)
    }
    fn derivative(&self) -> Self {
        Bernstein::derivative(self)
    }
}

/// Solves the dense system `a · x = b` by Gaussian elimination with partial
/// pivoting. Returns `None` for a numerically singular matrix.
pub fn solve_dense<const N: usize>(mut a: [[f64; N]; N], mut b: [f64; N]) -> Option<[f64; N]> {
    for col in 0..N {
        let pivot = (col..N).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col] == 0.0 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..N {
            let f = a[row][col] / a[col][col];
            let pivot_row = a[col];
            for (x, p) in a[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * p;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; N];
    for row in (0..N).rev() {
        let s: f64 = (row + 1..N).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_roots() {
        // 1 − 9α(1 − α) = 9α² − 9α + 1
        let p = Poly::new(&[1.0, -9.0, 9.0]);
        let roots = p.roots_in(0.0, 1.0, 1e-13, 1e-12);
        let s = libm::sqrt(45.0);
        assert_eq!(roots.len(), 2);
        assert!((roots[0].x - (9.0 - s) / 18.0).abs() < 1e-12);
        assert!((roots[1].x - (9.0 + s) / 18.0).abs() < 1e-12);
    }

    #[test]
    fn no_roots_when_positive() {
        let p = Poly::new(&[1.0, -1.0, 1.0]);
        assert!(p.roots_in(0.0, 1.0, 1e-13, 1e-12).is_empty());
    }

    #[test]
    fn touching_root_reported_once() {
        // (x − 0.5)² (x + 2)
        let p = Poly::new(&[0.5, -1.75, 1.0, 1.0]);
        let roots = p.roots_in(0.0, 1.0, 1e-13, 1e-12);
        assert_eq!(roots.len(), 1);
        assert!(roots[0].touching);
        assert!((roots[0].x - 0.5).abs() < 1e-7);
    }

    #[test]
    fn sextic_with_known_roots() {
        // (x − 0.1)(x − 0.3)(x − 0.35)(x − 0.9)(x − 1.5)(x + 0.2)
        let rts = [0.1, 0.3, 0.35, 0.9, 1.5, -0.2];
        let mut c = alloc::vec![1.0];
        for r in rts {
            let mut next = alloc::vec![0.0; c.len() + 1];
            for (i, &ci) in c.iter().enumerate() {
                next[i] -= r * ci;
                next[i + 1] += ci;
            }
            c = next;
        }
        let roots = Poly::new(&c).roots_in(0.0, 1.0, 1e-14, 1e-12);
        let xs: Vec<f64> = roots.iter().map(|r| r.x).collect();
        assert_eq!(xs.len(), 4);
        for (x, e) in xs.iter().zip([0.1, 0.3, 0.35, 0.9]) {
            assert!((x - e).abs() < 1e-12, "{x} vs {e}");
        }
    }

    #[test]
    fn dense_solve() {
        let a = [[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 4.0]];
        let x = solve_dense(a, [3.0, 5.0, 5.0]).unwrap();
        for (xi, e) in x.iter().zip([1.0, 1.0, 1.0]) {
            assert!((xi - e).abs() < 1e-14);
        }
        assert!(solve_dense([[1.0, 2.0], [2.0, 4.0]], [1.0, 2.0]).is_none());
    }

    #[test]
    fn bernstein_matches_monomial() {
        let b = Bernstein::new(&[1.0, -2.0, 0.5, 3.0]);
        let m = b.to_monomial();
        for i in 0..=10 {
            let x = i as f64 / 10.0;
            assert!((b.eval(x) - m.eval(x)).abs() < 1e-14);
        }
        // x = B_1/n summed: the identity x = Σ (k/n) B_k
        let x = Bernstein::new(&[0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0]).to_monomial();
        assert!(x
            .coeffs()
            .iter()
            .zip([0.0, 1.0])
            .all(|(a, e)| (a - e).abs() < 1e-15));
    }

    #[test]
    fn bernstein_product_and_elevation() {
        let a = Bernstein::new(&[1.0, 2.0]);
        let b = Bernstein::new(&[3.0, -1.0, 0.5]);
        let ab = a.mul(&b);
        let e = b.elevate().elevate();
        for i in 0..=8 {
            let x = i as f64 / 8.0;
            assert!((ab.eval(x) - a.eval(x) * b.eval(x)).abs() < 1e-14);
            assert!((e.eval(x) - b.eval(x)).abs() < 1e-14);
            let h = 1e-6;
            let fd = (b.eval(x + h) - b.eval(x - h)) / (2.0 * h);
            assert!((b.derivative().eval(x) - fd).abs() < 1e-8);
        }
    }

    #[test]
    fn bernstein_roots() {
        // 9α² − 9α + 1 in degree-2 Bernstein form: [1, 1 − 9/2, 1]
        let b = Bernstein::new(&[1.0, -3.5, 1.0]);
        let r = b.roots(1e-14, 1e-12);
        let s = libm::sqrt(45.0);
        assert_eq!(r.len(), 2);
        assert!((r[0].x - (9.0 - s) / 18.0).abs() < 1e-13);
        assert!((r[1].x - (9.0 + s) / 18.0).abs() < 1e-13);
    }
}
