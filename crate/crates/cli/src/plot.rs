//! Plot data for a pair: density contours, the singular set, the ridgeline and
//! their images under `F = (f1, f2)`, written as CSV files.

use std::fs;
use std::path::{Path, PathBuf};

use binormix::{
    classify, ridge_sample, sample_singular_set, GaussianPair, Mixture, PairType, RidgeSample,
    SearchBox, Vec2, DEFAULT_REL_TOL,
};
use serde::Serialize;

use crate::contour::{Lattice, Polyline};
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone)]
pub struct PlotOptions {
    /// Lattice points per side for the contours (same box as the grid oracle).
    pub grid: usize,
    pub padding_sigmas: f64,
    pub levels: usize,
    pub ridge_samples: usize,
    pub singular_samples: usize,
    /// Lattice points per side for `image_points`.
    pub image_grid: usize,
}

impl Default for PlotOptions {
    fn default() -> Self {
        PlotOptions {
            grid: 512,
            padding_sigmas: 5.0,
            levels: 8,
            ridge_samples: 201,
            singular_samples: 2000,
            image_grid: 64,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ContourSet {
    pub level: f64,
    pub lines: Vec<Polyline>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImagePoint {
    pub x: Vec2,
    pub f1: f64,
    pub f2: f64,
}

#[derive(Debug, Clone)]
pub struct PlotBundle {
    pub pair_type: PairType,
    pub bbox: SearchBox,
    pub contours_f1: Vec<ContourSet>,
    pub contours_f2: Vec<ContourSet>,
    /// Branches clipped to the plot box.
    pub singular_set: Vec<Vec<Vec2>>,
    pub ridgeline: Vec<RidgeSample>,
    pub image_points: Vec<ImagePoint>,
    /// `(f1(x*), f2(x*))` for each ridgeline sample, in the same order.
    pub image_ridgeline: Vec<(f64, f64)>,
    pub singular_value_set: Vec<Vec<(f64, f64)>>,
    pub cusp: Option<Vec2>,
    pub cusp_values: Option<(f64, f64)>,
}

/// `levels` values log-spaced from `peak / 1000` up to `peak`.
pub fn log_levels(peak: f64, levels: usize) -> Vec<f64> {
    match levels {
        0 => Vec::new(),
        1 => vec![peak],
        n => (0..n)
            .map(|k| peak * 1e-3f64.powf(1.0 - k as f64 / (n - 1) as f64))
            .collect(),
    }
}

fn contours(lat: &Lattice, levels: &[f64]) -> Vec<ContourSet> {
    levels
        .iter()
        .map(|&level| ContourSet {
            level,
            lines: lat.contour(level),
        })
        .collect()
}

fn clip(branch: &[Vec2], b: &SearchBox) -> Vec<Vec<Vec2>> {
    let inside = |p: &Vec2| p.x >= b.lo && p.x <= b.hi && p.y >= b.lo && p.y <= b.hi;
    let mut runs = Vec::new();
    let mut run = Vec::new();
    for p in branch {
        if inside(p) {
            run.push(*p);
        } else if !run.is_empty() {
            runs.push(std::mem::take(&mut run));
        }
    }
    if !run.is_empty() {
        runs.push(run);
    }
    runs
}

pub fn build_plot_bundle(pair: &GaussianPair, c: f64, opts: &PlotOptions) -> CliResult<PlotBundle> {
    if opts.grid < 3 || opts.image_grid < 2 || opts.ridge_samples < 2 || opts.singular_samples < 2 {
        return Err(CliError::validation(
            "options",
            "grid sizes and sample counts are too small",
        ));
    }
    let mix = Mixture::new(*pair, c).map_err(CliError::numerical("emit-plot"))?;
    let bbox = SearchBox::for_mixture(&mix, opts.padding_sigmas);
    let origin = Vec2::new(bbox.lo, bbox.lo);
    let h = (bbox.hi - bbox.lo) / (opts.grid - 1) as f64;
    let step = Vec2::new(h, h);

    let lat1 = Lattice::sample(opts.grid, opts.grid, origin, step, |p| pair.f1.density(p));
    let lat2 = Lattice::sample(opts.grid, opts.grid, origin, step, |p| pair.f2.density(p));
    let contours_f1 = contours(&lat1, &log_levels(pair.f1.peak(), opts.levels));
    let contours_f2 = contours(&lat2, &log_levels(pair.f2.peak(), opts.levels));

    let report = classify(pair, DEFAULT_REL_TOL).map_err(CliError::numerical("emit-plot"))?;
    let singular_set: Vec<Vec<Vec2>> = sample_singular_set(pair, opts.singular_samples)
        .map_err(CliError::numerical("emit-plot"))?
        .iter()
        .flat_map(|b| clip(b, &bbox))
        .collect();

    let n = opts.ridge_samples;
    let ridgeline = (0..n)
        .map(|i| ridge_sample(pair, i as f64 / (n - 1) as f64))
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::numerical("emit-plot"))?;
    let image_ridgeline = ridgeline.iter().map(|s| pair.eval(s.x_star)).collect();

    let m = opts.image_grid;
    let hi = (bbox.hi - bbox.lo) / (m - 1) as f64;
    let mut image_points = Vec::with_capacity(m * m);
    for j in 0..m {
        for i in 0..m {
            let x = origin + Vec2::new(hi * i as f64, hi * j as f64);
            let (f1, f2) = pair.eval(x);
            image_points.push(ImagePoint { x, f1, f2 });
        }
    }
    let singular_value_set = singular_set
        .iter()
        .map(|b| b.iter().map(|&x| pair.eval(x)).collect())
        .collect();

    let cusp = report.cusp.map(|c| c.point);
    Ok(PlotBundle {
        pair_type: report.pair_type,
        bbox,
        contours_f1,
        contours_f2,
        singular_set,
        ridgeline,
        image_points,
        image_ridgeline,
        singular_value_set,
        cusp,
        cusp_values: cusp.map(|x| pair.eval(x)),
    })
}

fn writer(path: &Path, header: &[&str]) -> CliResult<csv::Writer<fs::File>> {
    let file = fs::File::create(path).map_err(CliError::io(path))?;
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(file);
    w.write_record(header)?;
    Ok(w)
}

fn finish(mut w: csv::Writer<fs::File>, path: &Path) -> CliResult<()> {
    w.flush().map_err(CliError::io(path))
}

fn write_contours(path: &Path, sets: &[ContourSet]) -> CliResult<()> {
    let mut w = writer(path, &["id", "level", "closed", "x", "y"])?;
    let mut id = 0usize;
    for set in sets {
        for line in &set.lines {
            for p in &line.points {
                w.serialize((id, set.level, line.closed, p.x, p.y))?;
            }
            id += 1;
        }
    }
    finish(w, path)
}

pub fn write_ridgeline<W: std::io::Write>(out: W, samples: &[RidgeSample]) -> CliResult<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(["alpha", "x", "y", "f1", "f2", "q"])?;
    for s in samples {
        w.serialize((s.alpha, s.x_star.x, s.x_star.y, s.f1_val, s.f2_val, s.q_val))?;
    }
    w.flush().map_err(|e| CliError::Csv(e.into()))
}

#[derive(Serialize)]
struct Summary<'a> {
    pair_type: &'a str,
    bbox: [f64; 2],
    grid: usize,
    levels_f1: Vec<f64>,
    levels_f2: Vec<f64>,
    singular_branches: usize,
    ridge_samples: usize,
    cusp: Option<[f64; 2]>,
    files: &'a [&'a str],
}

pub const BUNDLE_FILES: [&str; 9] = [
    "contours_f1.csv",
    "contours_f2.csv",
    "singular_set.csv",
    "ridgeline.csv",
    "image_points.csv",
    "image_ridgeline.csv",
    "singular_value_set.csv",
    "cusp.csv",
    "summary.json",
];

/// Writes every file of [`BUNDLE_FILES`] into `dir`, creating it if needed.
pub fn write_bundle(b: &PlotBundle, opts: &PlotOptions, dir: &Path) -> CliResult<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(CliError::io(dir))?;
    let path = |name: &str| dir.join(name);

    write_contours(&path("contours_f1.csv"), &b.contours_f1)?;
    write_contours(&path("contours_f2.csv"), &b.contours_f2)?;

    let p = path("singular_set.csv");
    let mut w = writer(&p, &["id", "x", "y"])?;
    for (id, branch) in b.singular_set.iter().enumerate() {
        for x in branch {
            w.serialize((id, x.x, x.y))?;
        }
    }
    finish(w, &p)?;

    let p = path("ridgeline.csv");
    write_ridgeline(
        fs::File::create(&p).map_err(CliError::io(&p))?,
        &b.ridgeline,
    )?;

    let p = path("image_points.csv");
    let mut w = writer(&p, &["x", "y", "f1", "f2"])?;
    for ip in &b.image_points {
        w.serialize((ip.x.x, ip.x.y, ip.f1, ip.f2))?;
    }
    finish(w, &p)?;

    let p = path("image_ridgeline.csv");
    let mut w = writer(&p, &["alpha", "f1", "f2"])?;
    for (s, (f1, f2)) in b.ridgeline.iter().zip(&b.image_ridgeline) {
        w.serialize((s.alpha, f1, f2))?;
    }
    finish(w, &p)?;

    let p = path("singular_value_set.csv");
    let mut w = writer(&p, &["id", "f1", "f2"])?;
    for (id, branch) in b.singular_value_set.iter().enumerate() {
        for (f1, f2) in branch {
            w.serialize((id, f1, f2))?;
        }
    }
    finish(w, &p)?;

    let p = path("cusp.csv");
    let mut w = writer(&p, &["x", "y", "f1", "f2"])?;
    if let Some(c) = b.cusp {
        let (f1, f2) = b.cusp_values.unwrap_or((f64::NAN, f64::NAN));
        w.serialize((c.x, c.y, f1, f2))?;
    }
    finish(w, &p)?;

    let p = path("summary.json");
    let summary = Summary {
        pair_type: match b.pair_type {
            PairType::Type1 => "Type1",
            PairType::Type2 => "Type2",
            PairType::Type3 => "Type3",
        },
        bbox: [b.bbox.lo, b.bbox.hi],
        grid: opts.grid,
        levels_f1: b.contours_f1.iter().map(|s| s.level).collect(),
        levels_f2: b.contours_f2.iter().map(|s| s.level).collect(),
        singular_branches: b.singular_set.len(),
        ridge_samples: b.ridgeline.len(),
        cusp: b.cusp.map(|c| [c.x, c.y]),
        files: &BUNDLE_FILES,
    };
    let mut text = serde_json::to_string_pretty(&summary)?;
    text.push('\n');
    fs::write(&p, text).map_err(CliError::io(&p))?;

    Ok(BUNDLE_FILES.iter().map(|f| path(f)).collect())
}
