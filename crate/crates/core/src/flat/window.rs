//! Finite windows of a periodic wallspace.
//!
//! The window of radius `N` keeps translates `t` in `[-N, N)` of every orbit,
//! so each orbit contributes `2N` walls. Crossing comes from the tables; two
//! parallel walls that do not cross are nested by position. The dual of this
//! finite system is the windowed hull.

use std::collections::HashMap;

use serde::Serialize;

use super::{validate, FlatError, PeriodicWallspace, WallRef, MAX_WINDOW_VERTICES};
use crate::bits::Bits;
use crate::median::{CubeComplex, Side};
use crate::sageev::{DualComplex, Orientation, WallSystem};

/// Translate `translate` of orbit representative `(class, rep)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WindowWall {
    pub class: usize,
    pub rep: usize,
    pub translate: i64,
}

impl WindowWall {
    pub fn orbit(&self) -> WallRef {
        WallRef::new(self.class, self.rep)
    }
}

/// Exact sample points of the flat, recorded by their positions along each
/// class normal, scaled to integers so that no sample lies on a wall.
#[derive(Debug, Clone)]
pub(crate) struct Frame {
    /// Positions are multiplied by this factor.
    scale: i128,
    /// Scaled position of the wall `(class, rep, translate = 0)` and the scaled period.
    offsets: Vec<Vec<i128>>,
    periods: Vec<i128>,
    directions: Vec<Vec<i64>>,
    /// `2L` in `x = y / (2L) + e`.
    grid: i128,
    /// `K` in the perturbation `e_k = K^-(k+1) / (2L)`.
    k: i128,
    rank: usize,
}

impl Frame {
    pub(crate) fn new(pw: &PeriodicWallspace) -> Result<Frame, FlatError> {
        let mut l: i64 = 1;
        for c in &pw.classes {
            for r in std::iter::once(&c.period).chain(&c.reps) {
                l = num_integer::lcm(l, *r.denom());
                if l > 1 << 30 {
                    return Err(FlatError::Overflow);
                }
            }
        }
        let p = pw.rank;
        let max_n = pw
            .classes
            .iter()
            .flat_map(|c| c.direction.iter())
            .map(|x| x.unsigned_abs() as i128)
            .max()
            .unwrap_or(1);
        let k = 2 * max_n + 2;
        let kp = k.checked_pow(p as u32).ok_or(FlatError::Overflow)?;
        let grid = 2 * l as i128;
        let scale = grid.checked_mul(kp).ok_or(FlatError::Overflow)?;
        let exact = |r: &super::Rational| -> i128 { *r.numer() as i128 * (scale / *r.denom() as i128) };
        Ok(Frame {
            scale,
            offsets: pw.classes.iter().map(|c| c.reps.iter().map(exact).collect()).collect(),
            periods: pw.classes.iter().map(|c| exact(&c.period)).collect(),
            directions: pw.classes.iter().map(|c| c.direction.clone()).collect(),
            grid,
            k,
            rank: p,
        })
    }

    /// Scaled positions along every class normal of `y / (2L) + e`.
    pub(crate) fn sample(&self, y: &[i64]) -> Vec<i128> {
        let kp = self.scale / self.grid;
        self.directions
            .iter()
            .map(|n| {
                let dot: i128 = n.iter().zip(y).map(|(&a, &b)| a as i128 * b as i128).sum();
                let mut pert = 0i128;
                let mut w = kp;
                for &a in n {
                    w /= self.k;
                    pert += a as i128 * w;
                }
                dot * kp + pert
            })
            .collect()
    }

    /// Positions after translating by the lattice vector `v`.
    pub(crate) fn shifted(&self, pos: &[i128], v: &[i64]) -> Vec<i128> {
        pos.iter()
            .zip(&self.directions)
            .map(|(&x, n)| {
                let dot: i128 = n.iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum();
                x + dot * self.scale
            })
            .collect()
    }

    pub(crate) fn wall_position(&self, w: &WindowWall) -> i128 {
        self.offsets[w.class][w.rep] + self.periods[w.class] * w.translate as i128
    }

    pub(crate) fn side(&self, w: &WindowWall, pos: &[i128]) -> Side {
        Side::from_bit(pos[w.class] > self.wall_position(w))
    }

    /// Whether every class position lies in the span `[-N P, N P)` of window `n`.
    pub(crate) fn inside(&self, pos: &[i128], n: i64) -> bool {
        pos.iter()
            .zip(&self.periods)
            .all(|(&x, &p)| -(n as i128) * p <= x && x < n as i128 * p)
    }

    /// Samples `y / (2L) + e` with `|y|_inf <= 2L R`, where `R` covers window `n`.
    pub(crate) fn samples(&self, n: i64) -> Vec<Vec<i128>> {
        let max_period = self.periods.iter().copied().max().unwrap_or(self.scale);
        let r = num_integer::Integer::div_ceil(&((n as i128 + 1) * max_period), &self.scale) as i64;
        let bound = self.grid as i64 * r;
        let mut out = Vec::new();
        let mut y = vec![-bound; self.rank];
        loop {
            out.push(self.sample(&y));
            let mut k = 0;
            loop {
                if k == self.rank {
                    return out;
                }
                if y[k] < bound {
                    y[k] += 1;
                    break;
                }
                y[k] = -bound;
                k += 1;
            }
        }
    }
}

/// Walls of window `n` for the orbits accepted by `keep`, in (class, rep, translate) order.
pub(crate) fn window_walls(pw: &PeriodicWallspace, n: i64, keep: impl Fn(WallRef) -> bool) -> Vec<WindowWall> {
    let mut walls = Vec::new();
    for (i, c) in pw.classes.iter().enumerate() {
        for j in 0..c.reps.len() {
            if keep(WallRef::new(i, j)) {
                for t in -n..n {
                    walls.push(WindowWall {
                        class: i,
                        rep: j,
                        translate: t,
                    });
                }
            }
        }
    }
    walls
}

pub(crate) fn walls_cross(pw: &PeriodicWallspace, a: &WindowWall, b: &WindowWall) -> bool {
    if a.class != b.class {
        return true;
    }
    pw.classes[a.class].walls_cross(a.rep, a.translate, b.rep, b.translate)
}

pub(crate) fn system_for(pw: &PeriodicWallspace, frame: &Frame, walls: &[WindowWall]) -> WallSystem {
    let m = walls.len();
    let mut sys = WallSystem::unconstrained(m);
    for a in 0..m {
        for b in (a + 1)..m {
            if walls_cross(pw, &walls[a], &walls[b]) {
                continue;
            }
            let (lo, hi) = if frame.wall_position(&walls[a]) < frame.wall_position(&walls[b]) {
                (a, b)
            } else {
                (b, a)
            };
            // Nothing lies left of the lower wall and right of the upper one.
            sys.forbid(lo, Side::Left, hi, Side::Right);
        }
    }
    sys
}

/// The dual of a window, with the wall list behind it.
#[derive(Debug, Clone)]
pub struct WindowHull {
    pub n: i64,
    pub walls: Vec<WindowWall>,
    pub dual: DualComplex,
    index: HashMap<WindowWall, usize>,
    pub(crate) frame: Frame,
}

impl WindowHull {
    pub(crate) fn build(
        pw: &PeriodicWallspace,
        n: i64,
        keep: impl Fn(WallRef) -> bool,
    ) -> Result<WindowHull, FlatError> {
        if n < 1 {
            return Err(FlatError::WindowTooSmall { n, min: 1 });
        }
        let frame = Frame::new(pw)?;
        let walls = window_walls(pw, n, keep);
        let sys = system_for(pw, &frame, &walls);
        let origin = frame.sample(&vec![0; pw.rank]);
        let seed = Orientation(Bits::from_fn(walls.len(), |w| frame.side(&walls[w], &origin).bit()));
        let dual = sys.dual(&[seed], Some(MAX_WINDOW_VERTICES))?;
        let index = walls.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        Ok(WindowHull {
            n,
            walls,
            dual,
            index,
            frame,
        })
    }

    pub fn complex(&self) -> &CubeComplex {
        &self.dual.complex
    }

    pub fn vertex_count(&self) -> usize {
        self.dual.complex.vertex_count()
    }

    pub fn wall_index(&self, w: &WindowWall) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Orientation of the walls of this window at the vertex `v`.
    pub fn orientation(&self, v: usize) -> &Bits {
        &self.dual.orientations[v].0
    }

    pub fn vertex_of(&self, o: &Bits) -> Option<usize> {
        self.dual.vertex_of(&Orientation(o.clone()))
    }

    /// Canonical orientation of the point with the given scaled positions.
    pub(crate) fn canonical(&self, pos: &[i128]) -> Bits {
        Bits::from_fn(self.walls.len(), |w| self.frame.side(&self.walls[w], pos).bit())
    }
}

/// Dual of the window of radius `n` over all orbits.
pub fn window_hull(pw: &PeriodicWallspace, n: i64) -> Result<WindowHull, FlatError> {
    validate(pw)?;
    WindowHull::build(pw, n, |_| true)
}
