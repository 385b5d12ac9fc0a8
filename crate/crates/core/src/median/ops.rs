use std::collections::VecDeque;

use serde::Serialize;

use super::{CubeComplex, MedianError, Vertex, VertexSet};
use crate::bits::Bits;

/// Outcome of a Helly query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Helly {
    /// Smallest-index vertex in the common intersection.
    Common { vertex: Vertex },
    /// Lexicographically first pair of disjoint members.
    NoCommonPoint { first: usize, second: usize },
}

/// Result of a cubical thickening: `hull(N_r(y))`, with the realised outer radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thickening {
    pub set: VertexSet,
    pub radius: usize,
    /// Largest distance from a vertex of `set` to the original set.
    pub realized: usize,
}

impl CubeComplex {
    /// Edge-path distance, computed as the number of separating hyperplanes.
    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<usize, MedianError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.signs[u].hamming(&self.signs[v]))
    }

    /// The unique vertex on geodesics between each pair of `x`, `y`, `z`.
    pub fn median(&self, x: Vertex, y: Vertex, z: Vertex) -> Result<Vertex, MedianError> {
        for v in [x, y, z] {
            self.check_vertex(v)?;
        }
        let maj = Bits::majority(&self.signs[x], &self.signs[y], &self.signs[z]);
        self.lookup
            .get(&maj)
            .copied()
            .ok_or(MedianError::MedianAxiom(x, y, z))
    }

    /// Intersection of all halfspaces containing `s`.
    pub fn hull(&self, s: &VertexSet) -> Result<VertexSet, MedianError> {
        self.check_set(s)?;
        let first = s.first().ok_or(MedianError::EmptySet)?;
        let mut result = Bits::ones(self.vertex_count());
        for h in 0..self.hyperplane_count() {
            let right = &self.right[h];
            if s.bits().is_subset(right) {
                result = result.and(right);
            } else if !s.bits().intersects(right) {
                result = result.and_not(right);
            }
        }
        debug_assert!(result.get(first));
        Ok(VertexSet::from_bits(result))
    }

    pub fn is_convex(&self, s: &VertexSet) -> Result<bool, MedianError> {
        Ok(self.hull(s)? == *s)
    }

    /// Finds a common vertex of a convex family, or the first disjoint pair.
    pub fn helly_point(&self, family: &[VertexSet]) -> Result<Helly, MedianError> {
        if family.is_empty() {
            return Err(MedianError::EmptyFamily);
        }
        for (i, y) in family.iter().enumerate() {
            self.check_set(y)?;
            if y.is_empty() {
                return Err(MedianError::EmptySet);
            }
            if !self.is_convex(y)? {
                return Err(MedianError::NotConvex(i));
            }
        }
        for i in 0..family.len() {
            for j in (i + 1)..family.len() {
                if !family[i].intersects(&family[j]) {
                    return Ok(Helly::NoCommonPoint { first: i, second: j });
                }
            }
        }
        let common = family[1..]
            .iter()
            .fold(family[0].clone(), |acc, y| acc.intersection(y));
        common
            .first()
            .map(|vertex| Helly::Common { vertex })
            .ok_or(MedianError::HellyViolated)
    }

    /// Metric `r`-neighbourhood of `s`, by multi-source breadth-first search.
    pub fn neighborhood(&self, s: &VertexSet, r: usize) -> Result<VertexSet, MedianError> {
        self.check_set(s)?;
        let dist = self.distances_from_set(s);
        let mut out = VertexSet::empty(self.vertex_count());
        for (v, &d) in dist.iter().enumerate() {
            if d <= r {
                out.insert(v);
            }
        }
        Ok(out)
    }

    fn distances_from_set(&self, s: &VertexSet) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        for v in s.iter() {
            dist[v] = 0;
            queue.push_back(v);
        }
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &self.adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Convex `r`-thickening `hull(N_r(y))`. For convex `y` this sits between
    /// the `r`- and `realized`-neighbourhoods of `y`.
    pub fn thicken(&self, y: &VertexSet, r: usize) -> Result<Thickening, MedianError> {
        self.check_set(y)?;
        if y.is_empty() {
            return Err(MedianError::EmptySet);
        }
        let set = self.hull(&self.neighborhood(y, r)?)?;
        let dist = self.distances_from_set(y);
        let realized = set.iter().map(|v| dist[v]).max().unwrap_or(0);
        Ok(Thickening {
            set,
            radius: r,
            realized,
        })
    }

    /// Maximum number of `r`-thickened translates sharing a vertex.
    pub fn packing_number(&self, translates: &[VertexSet], r: usize) -> Result<usize, MedianError> {
        if translates.is_empty() {
            return Err(MedianError::EmptyFamily);
        }
        let mut multiplicity = vec![0usize; self.vertex_count()];
        for (i, y) in translates.iter().enumerate() {
            if !self.is_convex(y)? {
                return Err(MedianError::NotConvex(i));
            }
            let t = self.thicken(y, r)?;
            for v in t.set.iter() {
                multiplicity[v] += 1;
            }
        }
        Ok(multiplicity.into_iter().max().unwrap_or(0))
    }
}
