//! Mode counting for `M_c`.
//!
//! [`find_modes`] runs a Newton ascent from points spread along the
//! ridgeline, which contains every critical point of every `M_c`.
//! [`grid_oracle_modes`] is an independent check that looks for strict local
//! maxima on a lattice and then polishes them. Both certify a mode with the
//! gradient and the Hessian of the full two-dimensional density.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gaussian::Mixture;
use crate::linalg::{Sym2, Vec2};
use crate::ridgeline::ridge_point;

/// Gradient certificate: `‖∇M‖ < GRAD_CERT · M · ‖Σ⁻¹‖_max`.
pub const GRAD_CERT: f64 = 1e-9;
/// Hessian eigenvalues within `HESSIAN_DEGENERATE · M · ‖Σ⁻¹‖_max` of zero are
/// treated as degenerate.
pub const HESSIAN_DEGENERATE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub seeds: usize,
    pub grid_resolution: usize,
    pub padding_sigmas: f64,
    /// `None` means `1e-4` of the search box diagonal.
    pub dedupe_radius: Option<f64>,
    pub max_newton_iters: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seeds: 200,
            grid_resolution: 512,
            padding_sigmas: 5.0,
            dedupe_radius: None,
            max_newton_iters: 50,
        }
    }
}

impl SearchConfig {
    // negated comparisons also reject NaN
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    fn validate(&self) -> Result<()> {
        if self.seeds < 2 {
            return Err(Error::InvalidConfig("seeds must be at least 2"));
        }
        if self.grid_resolution < 3 {
            return Err(Error::InvalidConfig("grid_resolution must be at least 3"));
        }
        if !(self.padding_sigmas > 0.0) {
            return Err(Error::InvalidConfig("padding_sigmas must be positive"));
        }
        if matches!(self.dedupe_radius, Some(r) if !(r > 0.0)) {
            return Err(Error::InvalidConfig("dedupe_radius must be positive"));
        }
        if self.max_newton_iters == 0 {
            return Err(Error::InvalidConfig("max_newton_iters must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeMethod {
    NewtonSeeded,
    GridOracle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub location: Vec2,
    pub value: f64,
    pub hessian_negdef: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeReport {
    /// Certified modes, by descending value.
    pub modes: Vec<Mode>,
    pub count: usize,
    pub method: ModeMethod,
    /// Converged critical points that are not modes (saddles, degenerate points).
    pub other_critical: Vec<Mode>,
    /// Some converged point had a degenerate Hessian.
    pub degenerate: bool,
}

/// Square search box `[lo, hi]²` around both means.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBox {
    pub lo: f64,
    pub hi: f64,
}

impl SearchBox {
    pub fn for_mixture(m: &Mixture, padding_sigmas: f64) -> Self {
        let p = m.pair();
        let (a, b) = (p.f1.mu(), p.f2.mu());
        let pad = padding_sigmas * p.sigma_max();
        SearchBox {
            lo: a.x.min(a.y).min(b.x).min(b.y) - pad,
            hi: a.x.max(a.y).max(b.x).max(b.y) + pad,
        }
    }

    pub fn diagonal(&self) -> f64 {
        (self.hi - self.lo) * core::f64::consts::SQRT_2
    }
}

struct Ascent<'a> {
    mix: &'a Mixture,
    precision: f64,
    max_step: f64,
    max_iters: usize,
}

enum Critical {
    Mode(Mode),
    Other { point: Mode, degenerate: bool },
}

impl<'a> Ascent<'a> {
    fn new(mix: &'a Mixture, max_iters: usize) -> Self {
        let p = mix.pair();
        Ascent {
            mix,
            precision: p.precision_scale(),
            max_step: 2.0 * p.sigma_max(),
            max_iters,
        }
    }

    /// Newton ascent on `ln M`, with the Hessian's eigenvalues replaced by
    /// `−max(|λ|, δ)` so every step goes uphill, plus Armijo backtracking.
    fn run(&self, start: Vec2) -> Option<Vec2> {
        let mut x = start;
        let floor = 1e-8 * self.precision;
        for _ in 0..self.max_iters {
            let (lv, g, h) = self.mix.log_derivatives(x);
            if g.norm() <= 1e-13 * self.precision * (1.0 + x.norm()) {
                return Some(x);
            }
            let e = h.eigen();
            let r = e.rot;
            let gl = r.transpose().mul_vec(g);
            let dl = Vec2::new(
                gl.x / e.lambda1.abs().max(floor),
                gl.y / e.lambda2.abs().max(floor),
            );
            let mut d = r.mul_vec(dl);
            let len = d.norm();
            if len > self.max_step {
                d = d * (self.max_step / len);
            }
            // near a mode the plain Newton step is trusted whenever it shrinks
            // the gradient: value-based backtracking cannot resolve the top of
            // a peak more finely than about sqrt(eps)
            if e.lambda1 < 0.0 && len <= self.max_step {
                let cand = x + d;
                let gn = self.mix.log_derivatives(cand).1.norm();
                if gn < 0.5 * g.norm() {
                    x = cand;
                    continue;
                }
            }
            let slope = g.dot(d);
            let mut t = 1.0;
            let mut moved = false;
            for _ in 0..60 {
                let cand = x + d * t;
                if self.mix.log_value(cand) >= lv + 1e-4 * t * slope {
                    let step = (cand - x).norm();
                    x = cand;
                    moved = step > 1e-15 * (1.0 + x.norm());
                    break;
                }
                t *= 0.5;
            }
            if !moved {
                // no representable uphill step: stationary to rounding
                return Some(x);
            }
        }
        let g = self.mix.log_derivatives(x).1;
        (g.norm() <= GRAD_CERT * self.precision).then_some(x)
    }

    fn certify(&self, x: Vec2) -> Option<Critical> {
        let (lv, g, hl) = self.mix.log_derivatives(x);
        if g.norm() >= GRAD_CERT * self.precision {
            return None;
        }
        // Hessian of M divided by M
        let h = hl.add(&Sym2::new(g.x * g.x, g.x * g.y, g.y * g.y));
        let top = h.eigen().lambda1;
        let value = libm::exp(lv);
        let degenerate = top.abs() < HESSIAN_DEGENERATE * self.precision;
        let negdef = top < 0.0 && !degenerate;
        let point = Mode {
            location: x,
            value,
            hessian_negdef: negdef,
        };
        Some(if negdef {
            Critical::Mode(point)
        } else {
            Critical::Other { point, degenerate }
        })
    }
}

fn dedupe(mut pts: Vec<Mode>, radius: f64) -> Vec<Mode> {
    pts.sort_by(|a, b| b.value.total_cmp(&a.value));
    let mut kept: Vec<Mode> = Vec::new();
    for p in pts {
        if kept
            .iter()
            .all(|k| k.location.distance(p.location) > radius)
        {
            kept.push(p);
        }
    }
    kept
}

fn endpoint_report(m: &Mixture, method: ModeMethod) -> Option<ModeReport> {
    let g = if m.c() == 1.0 {
        m.pair().f1
    } else if m.c() == 0.0 {
        m.pair().f2
    } else {
        return None;
    };
    let mode = Mode {
        location: g.mu(),
        value: g.peak(),
        hessian_negdef: true,
    };
    Some(ModeReport {
        modes: alloc::vec![mode],
        count: 1,
        method,
        other_critical: Vec::new(),
        degenerate: false,
    })
}

fn assemble(
    m: &Mixture,
    cfg: &SearchConfig,
    ascent: &Ascent<'_>,
    converged: impl Iterator<Item = Vec2>,
    method: ModeMethod,
) -> Result<ModeReport> {
    let radius = cfg
        .dedupe_radius
        .unwrap_or_else(|| 1e-4 * SearchBox::for_mixture(m, cfg.padding_sigmas).diagonal());
    let mut modes = Vec::new();
    let mut others = Vec::new();
    let mut degenerate = false;
    let mut any = false;
    for x in converged {
        any = true;
        match ascent.certify(x) {
            Some(Critical::Mode(p)) => modes.push(p),
            Some(Critical::Other {
                point,
                degenerate: d,
            }) => {
                degenerate |= d;
                others.push(point);
            }
            None => {}
        }
    }
    if !any {
        return Err(Error::NewtonDivergence);
    }
    let modes = dedupe(modes, radius);
    let others = dedupe(others, radius)
        .into_iter()
        .filter(|o| {
            modes
                .iter()
                .all(|k| k.location.distance(o.location) > radius)
        })
        .collect();
    Ok(ModeReport {
        count: modes.len(),
        modes,
        method,
        other_critical: others,
        degenerate,
    })
}

/// Modes of `M_c` by Newton ascent from `cfg.seeds` equispaced ridgeline points.
pub fn find_modes(m: &Mixture, cfg: &SearchConfig) -> Result<ModeReport> {
    cfg.validate()?;
    if let Some(r) = endpoint_report(m, ModeMethod::NewtonSeeded) {
        return Ok(r);
    }
    let ascent = Ascent::new(m, cfg.max_newton_iters);
    let n = cfg.seeds;
    let converged = (0..n).filter_map(|i| {
        let alpha = i as f64 / (n - 1) as f64;
        let seed = ridge_point(m.pair(), alpha).expect("alpha in [0, 1]");
        ascent.run(seed)
    });
    assemble(m, cfg, &ascent, converged, ModeMethod::NewtonSeeded)
}

/// Modes of `M_c` from strict 8-neighbour maxima (ties broken by index) of `ln M_c` on a
/// `grid_resolution²` lattice over the search box, each polished by Newton.
pub fn grid_oracle_modes(m: &Mixture, cfg: &SearchConfig) -> Result<ModeReport> {
    cfg.validate()?;
    let n = cfg.grid_resolution;
    let bx = SearchBox::for_mixture(m, cfg.padding_sigmas);
    let h = (bx.hi - bx.lo) / (n - 1) as f64;
    let coord = |i: usize| bx.lo + h * i as f64;
    let mut grid = alloc::vec![0.0f64; n * n];
    for j in 0..n {
        for i in 0..n {
            grid[j * n + i] = m.log_value(Vec2::new(coord(i), coord(j)));
        }
    }
    let mut peaks = Vec::new();
    for j in 1..n - 1 {
        for i in 1..n - 1 {
            let v = grid[j * n + i];
            // ties go to the lower lattice index so a peak straddled by two
            // equal samples is still seen once
            let k = j * n + i;
            let is_peak = (j - 1..=j + 1).all(|jj| {
                (i - 1..=i + 1).all(|ii| {
                    let kk = jj * n + ii;
                    kk == k || grid[kk] < v || (grid[kk] == v && k < kk)
                })
            });
            if is_peak {
                peaks.push(Vec2::new(coord(i), coord(j)));
            }
        }
    }
    if let Some(r) = endpoint_report(m, ModeMethod::GridOracle) {
        // single Gaussian: the lattice peak polished onto the mean
        if peaks.is_empty() {
            return Ok(r);
        }
    }
    let ascent = Ascent::new(m, cfg.max_newton_iters);
    let converged: Vec<Vec2> = peaks.into_iter().filter_map(|p| ascent.run(p)).collect();
    if converged.is_empty() {
        return Ok(ModeReport {
            modes: Vec::new(),
            count: 0,
            method: ModeMethod::GridOracle,
            other_critical: Vec::new(),
            degenerate: false,
        });
    }
    assemble(
        m,
        cfg,
        &ascent,
        converged.into_iter(),
        ModeMethod::GridOracle,
    )
}
