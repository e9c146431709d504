//! Marching squares on a regular lattice.

use std::collections::HashMap;

use binormix::Vec2;

/// Values `z[j * nx + i]` at `(x0 + i·hx, y0 + j·hy)`.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub nx: usize,
    pub ny: usize,
    pub origin: Vec2,
    pub step: Vec2,
    pub z: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub points: Vec<Vec2>,
    pub closed: bool,
}

impl Lattice {
    pub fn sample(nx: usize, ny: usize, origin: Vec2, step: Vec2, f: impl Fn(Vec2) -> f64) -> Self {
        let mut z = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                z.push(f(origin + Vec2::new(step.x * i as f64, step.y * j as f64)));
            }
        }
        Lattice {
            nx,
            ny,
            origin,
            step,
            z,
        }
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.z[j * self.nx + i]
    }

    fn node(&self, i: usize, j: usize) -> Vec2 {
        self.origin + Vec2::new(self.step.x * i as f64, self.step.y * j as f64)
    }

    // horizontal edge (i,j)-(i+1,j) and vertical edge (i,j)-(i,j+1)
    fn h_edge(&self, i: usize, j: usize) -> usize {
        2 * (j * self.nx + i)
    }

    fn v_edge(&self, i: usize, j: usize) -> usize {
        2 * (j * self.nx + i) + 1
    }

    fn crossing(&self, key: usize, level: f64) -> Vec2 {
        let node = key / 2;
        let (i, j) = (node % self.nx, node / self.nx);
        let (a, b) = if key.is_multiple_of(2) {
            ((i, j), (i + 1, j))
        } else {
            ((i, j), (i, j + 1))
        };
        let (za, zb) = (self.at(a.0, a.1), self.at(b.0, b.1));
        let t = if za == zb {
            0.5
        } else {
            ((level - za) / (zb - za)).clamp(0.0, 1.0)
        };
        let (pa, pb) = (self.node(a.0, a.1), self.node(b.0, b.1));
        pa + (pb - pa) * t
    }

    /// Level curve `z = level`, joined into polylines.
    pub fn contour(&self, level: f64) -> Vec<Polyline> {
        let mut segments: Vec<[usize; 2]> = Vec::new();
        for j in 0..self.ny.saturating_sub(1) {
            for i in 0..self.nx.saturating_sub(1) {
                let v = [
                    self.at(i, j),
                    self.at(i + 1, j),
                    self.at(i + 1, j + 1),
                    self.at(i, j + 1),
                ];
                let case = v
                    .iter()
                    .enumerate()
                    .fold(0, |acc, (k, &z)| acc | (((z >= level) as usize) << k));
                let (b, r, t, l) = (
                    self.h_edge(i, j),
                    self.v_edge(i + 1, j),
                    self.h_edge(i, j + 1),
                    self.v_edge(i, j),
                );
                let center_high = 0.25 * v.iter().sum::<f64>() >= level;
                match case {
                    0 | 15 => {}
                    1 | 14 => segments.push([l, b]),
                    2 | 13 => segments.push([b, r]),
                    3 | 12 => segments.push([l, r]),
                    4 | 11 => segments.push([r, t]),
                    6 | 9 => segments.push([b, t]),
                    7 | 8 => segments.push([l, t]),
                    5 => {
                        if center_high {
                            segments.push([l, t]);
                            segments.push([b, r]);
                        } else {
                            segments.push([l, b]);
                            segments.push([r, t]);
                        }
                    }
                    10 => {
                        if center_high {
                            segments.push([l, b]);
                            segments.push([r, t]);
                        } else {
                            segments.push([l, t]);
                            segments.push([b, r]);
                        }
                    }
                    _ => unreachable!(),
                }
            }
        }
        self.join(&segments, level)
    }

    fn join(&self, segments: &[[usize; 2]], level: f64) -> Vec<Polyline> {
        let mut by_edge: HashMap<usize, Vec<usize>> = HashMap::new();
        for (s, seg) in segments.iter().enumerate() {
            for &e in seg {
                by_edge.entry(e).or_default().push(s);
            }
        }
        let mut used = vec![false; segments.len()];
        let mut out = Vec::new();
        for start in 0..segments.len() {
            if used[start] {
                continue;
            }
            used[start] = true;
            let mut chain: Vec<usize> = segments[start].to_vec();
            // walk forward from the last edge, then backward from the first
            for forward in [true, false] {
                loop {
                    let end = if forward {
                        *chain.last().unwrap()
                    } else {
                        chain[0]
                    };
                    let next = by_edge[&end].iter().copied().find(|&s| !used[s]);
                    let Some(s) = next else { break };
                    used[s] = true;
                    let other = if segments[s][0] == end {
                        segments[s][1]
                    } else {
                        segments[s][0]
                    };
                    if forward {
                        chain.push(other);
                    } else {
                        chain.insert(0, other);
                    }
                }
            }
            let closed = chain.len() > 2 && chain.first() == chain.last();
            if closed {
                chain.pop();
            }
            out.push(Polyline {
                points: chain.iter().map(|&e| self.crossing(e, level)).collect(),
                closed,
            });
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_contour_is_one_closed_loop() {
        let n = 101;
        let h = 4.0 / (n - 1) as f64;
        let lat = Lattice::sample(n, n, Vec2::new(-2.0, -2.0), Vec2::new(h, h), |p| p.norm());
        let lines = lat.contour(1.0);
        assert_eq!(lines.len(), 1);
        assert!(lines[0].closed);
        for p in &lines[0].points {
            assert!((p.norm() - 1.0).abs() < 2e-3);
        }
    }

    #[test]
    fn open_line_across_the_box() {
        let lat = Lattice::sample(11, 11, Vec2::ZERO, Vec2::new(0.1, 0.1), |p| p.x);
        let lines = lat.contour(0.55);
        assert_eq!(lines.len(), 1);
        assert!(!lines[0].closed);
        assert_eq!(lines[0].points.len(), 11);
        assert!(lines[0].points.iter().all(|p| (p.x - 0.55).abs() < 1e-12));
    }

    #[test]
    fn level_outside_range_is_empty() {
        let lat = Lattice::sample(5, 5, Vec2::ZERO, Vec2::new(1.0, 1.0), |p| p.x + p.y);
        assert!(lat.contour(100.0).is_empty());
    }
}
