//! Dual cube complexes of finite wallspaces.
//!
//! Vertices of the dual are consistent orientations of the walls: one side per
//! wall, any two chosen sides meeting. Only the component of the flip graph
//! containing the canonical orientations of the seed points is built.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::Bits;
use crate::median::{CubeComplex, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualError {
    #[error("wallspace has no points")]
    NoPoints,
    #[error("unknown point {0}")]
    UnknownPoint(usize),
    #[error("wall {0} has an empty side")]
    EmptySide(usize),
    #[error("walls {0} and {1} induce the same bipartition")]
    DuplicateWall(usize, usize),
    #[error("seed orientation {0} is inconsistent")]
    InconsistentSeed(usize),
    #[error("seed orientation {0} has {1} walls, expected {2}")]
    SeedLength(usize, usize, usize),
    #[error("dual complex exceeds {0} vertices")]
    TooLarge(usize),
}

/// A finite set of points with a list of bipartitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wallspace {
    points: usize,
    /// Per wall, the points on its left side.
    left: Vec<Bits>,
}

/// Serialized form `{"points": N, "walls": [[left-side point ids], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallspaceJson {
    pub points: usize,
    pub walls: Vec<Vec<usize>>,
}

impl Wallspace {
    /// Each wall is given by its left-side points; the right side is the rest.
    pub fn new(points: usize, walls: &[Vec<usize>]) -> Result<Self, DualError> {
        if points == 0 {
            return Err(DualError::NoPoints);
        }
        let mut left = Vec::with_capacity(walls.len());
        let mut seen: HashMap<Bits, usize> = HashMap::new();
        for (i, w) in walls.iter().enumerate() {
            let mut b = Bits::zeros(points);
            for &p in w {
                if p >= points {
                    return Err(DualError::UnknownPoint(p));
                }
                b.set(p, true);
            }
            let count = b.count_ones();
            if count == 0 || count == points {
                return Err(DualError::EmptySide(i));
            }
            let key = if b.get(0) { b.clone() } else { b.not() };
            if let Some(&j) = seen.get(&key) {
                return Err(DualError::DuplicateWall(j, i));
            }
            seen.insert(key, i);
            left.push(b);
        }
        Ok(Wallspace { points, left })
    }

    pub fn from_json(j: &WallspaceJson) -> Result<Self, DualError> {
        Wallspace::new(j.points, &j.walls)
    }

    pub fn to_json(&self) -> WallspaceJson {
        WallspaceJson {
            points: self.points,
            walls: self.left.iter().map(|b| b.iter_ones().collect()).collect(),
        }
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn wall_count(&self) -> usize {
        self.left.len()
    }

    pub fn side(&self, wall: usize, point: usize) -> Side {
        Side::from_bit(!self.left[wall].get(point))
    }

    /// Orients every wall toward the side containing `p`.
    pub fn canonical_orientation(&self, p: usize) -> Result<Orientation, DualError> {
        if p >= self.points {
            return Err(DualError::UnknownPoint(p));
        }
        Ok(Orientation(Bits::from_fn(self.left.len(), |w| {
            !self.left[w].get(p)
        })))
    }

    /// Pairwise compatibility data: two sides are compatible iff some point lies in both.
    pub fn system(&self) -> WallSystem {
        let m = self.left.len();
        let right: Vec<Bits> = self.left.iter().map(|b| b.not()).collect();
        let mut sys = WallSystem::unconstrained(m);
        for i in 0..m {
            for j in (i + 1)..m {
                let mut mask = 0u8;
                for (si, a) in [&self.left[i], &right[i]].into_iter().enumerate() {
                    for (sj, b) in [&self.left[j], &right[j]].into_iter().enumerate() {
                        if a.intersects(b) {
                            mask |= 1 << (2 * si + sj);
                        }
                    }
                }
                sys.set_mask(i, j, mask);
            }
        }
        sys
    }

    pub fn dual(&self) -> Result<DualComplex, DualError> {
        let seeds: Vec<Orientation> = (0..self.points)
            .map(|p| self.canonical_orientation(p))
            .collect::<Result<_, _>>()?;
        self.system().dual(&seeds, None)
    }
}

/// A choice of side for every wall; bit set means the right side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation(pub Bits);

impl Orientation {
    pub fn side(&self, wall: usize) -> Side {
        Side::from_bit(self.0.get(wall))
    }

    pub fn sides(&self) -> Vec<Side> {
        (0..self.0.len()).map(|w| self.side(w)).collect()
    }
}

/// Abstract walls with pairwise side compatibility. `mask(i, j)` has bit
/// `2 * si + sj` set when side `si` of wall `i` and side `sj` of wall `j` may
/// be chosen together (0 = left, 1 = right).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallSystem {
    walls: usize,
    masks: Vec<u8>,
}

impl WallSystem {
    pub fn unconstrained(walls: usize) -> Self {
        WallSystem {
            walls,
            masks: vec![0b1111; walls * walls],
        }
    }

    pub fn wall_count(&self) -> usize {
        self.walls
    }

    /// Sets the compatibility of walls `i` and `j`, keeping the transposed entry in sync.
    pub fn set_mask(&mut self, i: usize, j: usize, mask: u8) {
        let transposed = (mask & 0b1001) | (mask & 0b0010) << 1 | (mask & 0b0100) >> 1;
        self.masks[i * self.walls + j] = mask;
        self.masks[j * self.walls + i] = transposed;
    }

    pub fn mask(&self, i: usize, j: usize) -> u8 {
        self.masks[i * self.walls + j]
    }

    /// Forbids side `si` of wall `i` together with side `sj` of wall `j`.
    pub fn forbid(&mut self, i: usize, si: Side, j: usize, sj: Side) {
        let m = self.mask(i, j) & !(1 << (2 * si.bit() as u8 + sj.bit() as u8));
        self.set_mask(i, j, m);
    }

    /// Walls `i` and `j` cross iff all four side combinations are allowed.
    pub fn crosses(&self, i: usize, j: usize) -> bool {
        i != j && self.mask(i, j) == 0b1111
    }

    fn compatible(&self, o: &Bits, h: usize) -> bool {
        let sh = o.get(h) as usize;
        let row = &self.masks[h * self.walls..(h + 1) * self.walls];
        row.iter()
            .enumerate()
            .all(|(g, &mask)| g == h || mask >> (2 * sh + o.get(g) as usize) & 1 == 1)
    }

    pub fn is_consistent(&self, o: &Orientation) -> bool {
        (0..self.walls).all(|h| self.compatible(&o.0, h))
    }

    /// Breadth-first flip closure of `seeds`. Vertices are numbered in
    /// discovery order, starting with the distinct seeds in the given order.
    pub fn dual(&self, seeds: &[Orientation], limit: Option<usize>) -> Result<DualComplex, DualError> {
        let m = self.walls;
        let mut index: HashMap<Bits, usize> = HashMap::new();
        let mut orientations: Vec<Bits> = Vec::new();
        for (i, s) in seeds.iter().enumerate() {
            if s.0.len() != m {
                return Err(DualError::SeedLength(i, s.0.len(), m));
            }
            if !self.is_consistent(s) {
                return Err(DualError::InconsistentSeed(i));
            }
            if !index.contains_key(&s.0) {
                index.insert(s.0.clone(), orientations.len());
                orientations.push(s.0.clone());
            }
        }
        let mut edges: Vec<(usize, usize, usize)> = Vec::new();
        let mut flipped = vec![false; m];
        let mut queue: VecDeque<usize> = (0..orientations.len()).collect();
        while let Some(v) = queue.pop_front() {
            for h in 0..m {
                let mut t = orientations[v].clone();
                t.flip(h);
                if !self.compatible(&t, h) {
                    continue;
                }
                let u = match index.get(&t) {
                    Some(&u) => u,
                    None => {
                        let u = orientations.len();
                        if limit.is_some_and(|l| u >= l) {
                            return Err(DualError::TooLarge(u));
                        }
                        index.insert(t.clone(), u);
                        orientations.push(t);
                        queue.push_back(u);
                        u
                    }
                };
                if u > v {
                    edges.push((v, u, h));
                    flipped[h] = true;
                }
            }
        }
        // Only walls flipped somewhere in the component are hyperplanes of the dual.
        let hyperplane_walls: Vec<usize> = (0..m).filter(|&h| flipped[h]).collect();
        let mut dense = vec![usize::MAX; m];
        for (i, &h) in hyperplane_walls.iter().enumerate() {
            dense[h] = i;
        }
        let signs = orientations
            .iter()
            .map(|o| Bits::from_fn(hyperplane_walls.len(), |i| o.get(hyperplane_walls[i])))
            .collect();
        let edges = edges.into_iter().map(|(u, v, h)| (u, v, dense[h])).collect();
        let ids = hyperplane_walls.iter().map(|&h| h as u64).collect();
        let complex = CubeComplex::from_sign_vectors(signs, edges, ids);
        Ok(DualComplex {
            complex,
            orientations: orientations.into_iter().map(Orientation).collect(),
            index,
            hyperplane_walls,
        })
    }
}

/// A dual complex together with the orientation behind each vertex.
#[derive(Debug, Clone)]
pub struct DualComplex {
    /// Hyperplane ids are wall indices.
    pub complex: CubeComplex,
    /// Orientation of every wall at each vertex.
    pub orientations: Vec<Orientation>,
    index: HashMap<Bits, usize>,
    /// Wall index of each dense hyperplane of `complex`.
    pub hyperplane_walls: Vec<usize>,
}

impl DualComplex {
    pub fn vertex_of(&self, o: &Orientation) -> Option<usize> {
        self.index.get(&o.0).copied()
    }
}
