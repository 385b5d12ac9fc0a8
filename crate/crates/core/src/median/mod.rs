//! Finite CAT(0) cube complexes, stored as hyperplane-labelled median graphs.
//!
//! Only the 1-skeleton is kept. Higher cubes are implicit: a set of pairwise
//! crossing hyperplanes at a vertex spans a cube. Every vertex carries its
//! sign vector (which side of each hyperplane it lies on), so distances are
//! Hamming distances and medians are bitwise majorities.
//!
//! Side convention: for each hyperplane the *left* side is the component
//! containing the smallest vertex id. This choice is conventional.

mod canon;
mod io;
mod ops;
mod product;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use io::{ComplexJson, DOT_PALETTE};
pub use ops::{Helly, Thickening};
pub use product::ProductDecomposition;

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::bits::Bits;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MedianError {
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("empty vertex set")]
    EmptySet,
    #[error("empty family")]
    EmptyFamily,
    #[error("complex has no vertices")]
    NoVertices,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge between {0} and {1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is not connected (vertex {0} unreachable from 0)")]
    Disconnected(usize),
    #[error("graph is not bipartite (odd cycle through edge {0}-{1})")]
    NotBipartite(usize, usize),
    #[error("hyperplane {id} splits the graph into {components} components")]
    BadHyperplaneCut { id: u64, components: usize },
    #[error("edge {u}-{v} of hyperplane {id} does not join its two halfspaces")]
    EdgeNotInCut { id: u64, u: usize, v: usize },
    #[error("distance {graph} between {u} and {v} differs from {separating} separating hyperplanes")]
    NotPartialCube {
        u: usize,
        v: usize,
        graph: usize,
        separating: usize,
    },
    #[error("median axiom fails for vertices {0}, {1}, {2}")]
    MedianAxiom(usize, usize, usize),
    #[error("consistent orientation adjacent to vertex {vertex} across hyperplane {id} is missing")]
    MissingVertex { vertex: usize, id: u64 },
    #[error("family member {0} is not convex")]
    NotConvex(usize),
    #[error("vertex set has universe {got}, expected {expected}")]
    UniverseMismatch { expected: usize, got: usize },
    #[error("pairwise-intersecting convex family has empty intersection (Helly property violated)")]
    HellyViolated,
}

/// How much checking [`CubeComplex::from_edges`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationConfig {
    /// Check distances and the median axiom at all.
    pub strict: bool,
    /// Full partial-cube and median verification runs below this vertex count.
    pub median_check_limit: usize,
    /// Exhaustive triple enumeration of the median axiom runs below this count.
    pub exhaustive_triple_limit: usize,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig {
            strict: true,
            median_check_limit: 5000,
            exhaustive_triple_limit: 160,
        }
    }
}

impl ValidationConfig {
    pub fn lenient() -> Self {
        ValidationConfig {
            strict: false,
            ..Self::default()
        }
    }
}

/// Left or right halfspace of a hyperplane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn from_bit(b: bool) -> Side {
        if b {
            Side::Right
        } else {
            Side::Left
        }
    }

    pub fn bit(self) -> bool {
        self == Side::Right
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A subset of the vertices of one complex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet(Bits);

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet(Bits::zeros(universe))
    }

    pub fn full(universe: usize) -> Self {
        VertexSet(Bits::ones(universe))
    }

    pub fn from_vertices(
        universe: usize,
        vertices: impl IntoIterator<Item = Vertex>,
    ) -> Result<Self, MedianError> {
        let mut b = Bits::zeros(universe);
        for v in vertices {
            if v >= universe {
                return Err(MedianError::UnknownVertex(v));
            }
            b.set(v, true);
        }
        Ok(VertexSet(b))
    }

    pub(crate) fn from_bits(bits: Bits) -> Self {
        VertexSet(bits)
    }

    pub(crate) fn bits(&self) -> &Bits {
        &self.0
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        v < self.0.len() && self.0.get(v)
    }

    pub fn insert(&mut self, v: Vertex) {
        self.0.set(v, true);
    }

    pub fn len(&self) -> usize {
        self.0.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        !self.0.any()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter_ones()
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.and(&other.0))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.or(&other.0))
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.0.intersects(&other.0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first_one()
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// One of the two halfspaces of a hyperplane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfspace {
    pub hyperplane: u64,
    pub side: Side,
    pub members: VertexSet,
}

impl Halfspace {
    pub fn contains(&self, v: Vertex) -> bool {
        self.members.contains(v)
    }
}

/// The 1-skeleton of a finite CAT(0) cube complex.
#[derive(Clone)]
pub struct CubeComplex {
    adjacency: Vec<Vec<(Vertex, usize)>>,
    edges: Vec<(Vertex, Vertex, usize)>,
    hyperplane_ids: Vec<u64>,
    /// Per vertex: bit `h` set means the vertex lies on the right of hyperplane `h`.
    signs: Vec<Bits>,
    /// Per hyperplane: the vertices on its right side.
    right: Vec<Bits>,
    lookup: HashMap<Bits, Vertex>,
}

impl std::fmt::Debug for CubeComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CubeComplex")
            .field("vertices", &self.vertex_count())
            .field("edges", &self.edges.len())
            .field("hyperplanes", &self.hyperplane_ids.len())
            .finish()
    }
}

impl CubeComplex {
    /// Builds and validates a complex from `(u, v, hyperplane id)` triples.
    pub fn from_edges(
        vertices: usize,
        edges: &[(Vertex, Vertex, u64)],
        config: &ValidationConfig,
    ) -> Result<Self, MedianError> {
        if vertices == 0 {
            return Err(MedianError::NoVertices);
        }
        let mut ids: Vec<u64> = edges.iter().map(|e| e.2).collect();
        ids.sort_unstable();
        ids.dedup();
        let dense: HashMap<u64, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();

        let mut adjacency = vec![Vec::new(); vertices];
        let mut seen = std::collections::HashSet::new();
        let mut dense_edges = Vec::with_capacity(edges.len());
        for &(u, v, id) in edges {
            for x in [u, v] {
                if x >= vertices {
                    return Err(MedianError::UnknownVertex(x));
                }
            }
            if u == v {
                return Err(MedianError::SelfLoop(u));
            }
            let (a, b) = (u.min(v), u.max(v));
            if !seen.insert((a, b)) {
                return Err(MedianError::DuplicateEdge(a, b));
            }
            let h = dense[&id];
            adjacency[u].push((v, h));
            adjacency[v].push((u, h));
            dense_edges.push((a, b, h));
        }
        dense_edges.sort_unstable();
        for adj in &mut adjacency {
            adj.sort_unstable();
        }

        // Connectivity and bipartiteness in one sweep.
        let mut colour = vec![u8::MAX; vertices];
        colour[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &adjacency[u] {
                if colour[v] == u8::MAX {
                    colour[v] = 1 - colour[u];
                    queue.push_back(v);
                } else if colour[v] == colour[u] {
                    return Err(MedianError::NotBipartite(u.min(v), u.max(v)));
                }
            }
        }
        if let Some(v) = colour.iter().position(|&c| c == u8::MAX) {
            return Err(MedianError::Disconnected(v));
        }

        // Halfspaces: components after deleting each hyperplane's edges.
        let m = ids.len();
        let mut signs = vec![Bits::zeros(m); vertices];
        let mut comp = vec![usize::MAX; vertices];
        for h in 0..m {
            comp.iter_mut().for_each(|c| *c = usize::MAX);
            let mut count = 0;
            for start in 0..vertices {
                if comp[start] != usize::MAX {
                    continue;
                }
                comp[start] = count;
                queue.push_back(start);
                while let Some(u) = queue.pop_front() {
                    for &(v, g) in &adjacency[u] {
                        if g != h && comp[v] == usize::MAX {
                            comp[v] = count;
                            queue.push_back(v);
                        }
                    }
                }
                count += 1;
            }
            if count != 2 {
                return Err(MedianError::BadHyperplaneCut {
                    id: ids[h],
                    components: count,
                });
            }
            for &(u, v, g) in &dense_edges {
                if g == h && comp[u] == comp[v] {
                    return Err(MedianError::EdgeNotInCut { id: ids[h], u, v });
                }
            }
            // Component 0 contains vertex 0, the smallest id: that is the left side.
            for (v, s) in signs.iter_mut().enumerate() {
                if comp[v] == 1 {
                    s.set(h, true);
                }
            }
        }

        let complex = Self::assemble(adjacency, dense_edges, ids, signs);
        if config.strict && vertices <= config.median_check_limit {
            complex.check_partial_cube()?;
            complex.check_median_closure()?;
            if vertices <= config.exhaustive_triple_limit {
                complex.check_median_triples()?;
            }
        }
        Ok(complex)
    }

    /// Builds a complex from trusted sign vectors (bit `h` = side of hyperplane `h`)
    /// and edges labelled by hyperplane index. Sides are renormalised so that
    /// vertex 0 is on the left of every hyperplane.
    pub(crate) fn from_sign_vectors(
        mut signs: Vec<Bits>,
        edges: Vec<(Vertex, Vertex, usize)>,
        hyperplane_ids: Vec<u64>,
    ) -> Self {
        let n = signs.len();
        let m = hyperplane_ids.len();
        if n > 0 {
            let base = signs[0].clone();
            for s in signs.iter_mut() {
                for h in base.iter_ones() {
                    s.flip(h);
                }
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut dense_edges = Vec::with_capacity(edges.len());
        for (u, v, h) in edges {
            debug_assert!(h < m);
            adjacency[u].push((v, h));
            adjacency[v].push((u, h));
            dense_edges.push((u.min(v), u.max(v), h));
        }
        dense_edges.sort_unstable();
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        Self::assemble(adjacency, dense_edges, hyperplane_ids, signs)
    }

    fn assemble(
        adjacency: Vec<Vec<(Vertex, usize)>>,
        edges: Vec<(Vertex, Vertex, usize)>,
        hyperplane_ids: Vec<u64>,
        signs: Vec<Bits>,
    ) -> Self {
        let n = signs.len();
        let m = hyperplane_ids.len();
        let mut right = vec![Bits::zeros(n); m];
        for (v, s) in signs.iter().enumerate() {
            for h in s.iter_ones() {
                right[h].set(v, true);
            }
        }
        let lookup = signs.iter().cloned().enumerate().map(|(v, s)| (s, v)).collect();
        CubeComplex {
            adjacency,
            edges,
            hyperplane_ids,
            signs,
            right,
            lookup,
        }
    }

    /// Graph distance equals the number of separating hyperplanes for every pair.
    fn check_partial_cube(&self) -> Result<(), MedianError> {
        let n = self.vertex_count();
        if self.lookup.len() != n {
            // Two vertices with the same sign vector are at Hamming distance 0.
            let mut by_sign: HashMap<&Bits, usize> = HashMap::new();
            for (v, s) in self.signs.iter().enumerate() {
                if let Some(&u) = by_sign.get(s) {
                    return Err(MedianError::NotPartialCube {
                        u,
                        v,
                        graph: self.bfs_distances(u)[v],
                        separating: 0,
                    });
                }
                by_sign.insert(s, v);
            }
        }
        for u in 0..n {
            let dist = self.bfs_distances(u);
            for v in (u + 1)..n {
                let sep = self.signs[u].hamming(&self.signs[v]);
                if dist[v] != sep {
                    return Err(MedianError::NotPartialCube {
                        u,
                        v,
                        graph: dist[v],
                        separating: sep,
                    });
                }
            }
        }
        Ok(())
    }

    /// A partial cube is median iff its vertices are exactly the consistent
    /// orientations of its hyperplanes. Consistent orientations form a connected
    /// flip graph, so it suffices that no single flip of a vertex leaves the
    /// vertex set while staying consistent.
    fn check_median_closure(&self) -> Result<(), MedianError> {
        let m = self.hyperplane_count();
        // quad[h * m + g] bit (2*sh + sg): halfspaces sh of h and sg of g meet.
        let mut quad = vec![0u8; m * m];
        for h in 0..m {
            for g in 0..m {
                let rh = &self.right[h];
                let rg = &self.right[g];
                let lh = rh.not();
                let lg = rg.not();
                let mut q = 0u8;
                if lh.intersects(&lg) {
                    q |= 1;
                }
                if lh.intersects(rg) {
                    q |= 2;
                }
                if rh.intersects(&lg) {
                    q |= 4;
                }
                if rh.intersects(rg) {
                    q |= 8;
                }
                quad[h * m + g] = q;
            }
        }
        for (v, s) in self.signs.iter().enumerate() {
            for h in 0..m {
                let mut t = s.clone();
                t.flip(h);
                if self.lookup.contains_key(&t) {
                    continue;
                }
                let sh = t.get(h) as usize;
                let consistent = (0..m).all(|g| {
                    g == h || quad[h * m + g] >> (2 * sh + t.get(g) as usize) & 1 == 1
                });
                if consistent {
                    return Err(MedianError::MissingVertex {
                        vertex: v,
                        id: self.hyperplane_ids[h],
                    });
                }
            }
        }
        Ok(())
    }

    fn check_median_triples(&self) -> Result<(), MedianError> {
        let n = self.vertex_count();
        for x in 0..n {
            for y in x..n {
                for z in y..n {
                    let maj = Bits::majority(&self.signs[x], &self.signs[y], &self.signs[z]);
                    if !self.lookup.contains_key(&maj) {
                        return Err(MedianError::MedianAxiom(x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn bfs_distances(&self, source: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
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

    pub fn vertex_count(&self) -> usize {
        self.signs.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn hyperplane_count(&self) -> usize {
        self.hyperplane_ids.len()
    }

    /// External hyperplane ids, indexed by dense hyperplane index.
    pub fn hyperplane_ids(&self) -> &[u64] {
        &self.hyperplane_ids
    }

    /// Edges as `(u, v, dense hyperplane index)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(Vertex, Vertex, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, usize)] {
        &self.adjacency[v]
    }

    pub fn sign_vector(&self, v: Vertex) -> &Bits {
        &self.signs[v]
    }

    pub fn vertex_with_signs(&self, signs: &Bits) -> Option<Vertex> {
        self.lookup.get(signs).copied()
    }

    pub fn side(&self, v: Vertex, hyperplane: usize) -> Side {
        Side::from_bit(self.signs[v].get(hyperplane))
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn vertex_set(
        &self,
        vertices: impl IntoIterator<Item = Vertex>,
    ) -> Result<VertexSet, MedianError> {
        VertexSet::from_vertices(self.vertex_count(), vertices)
    }

    /// Halfspace of the hyperplane with dense index `h`.
    pub fn halfspace(&self, h: usize, side: Side) -> Halfspace {
        let right = &self.right[h];
        let members = match side {
            Side::Right => right.clone(),
            Side::Left => right.not(),
        };
        Halfspace {
            hyperplane: self.hyperplane_ids[h],
            side,
            members: VertexSet::from_bits(members),
        }
    }

    /// Whether hyperplanes `h` and `g` (dense indices) cross: all four
    /// quadrants are nonempty.
    pub fn crosses(&self, h: usize, g: usize) -> bool {
        if h == g {
            return false;
        }
        let rh = &self.right[h];
        let rg = &self.right[g];
        rh.intersects(rg)
            && rh.and_not(rg).any()
            && rg.and_not(rh).any()
            && rh.or(rg).count_ones() < self.vertex_count()
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), MedianError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(MedianError::UnknownVertex(v))
        }
    }

    fn check_set(&self, s: &VertexSet) -> Result<(), MedianError> {
        if s.universe() != self.vertex_count() {
            return Err(MedianError::UniverseMismatch {
                expected: self.vertex_count(),
                got: s.universe(),
            });
        }
        Ok(())
    }

    /// Cartesian product of two complexes. Vertex `(a, b)` gets id
    /// `a * other.vertex_count() + b`; hyperplanes of `other` are renumbered
    /// after those of `self`.
    pub fn product(&self, other: &CubeComplex) -> CubeComplex {
        let (n1, n2) = (self.vertex_count(), other.vertex_count());
        let m1 = self.hyperplane_count();
        let m = m1 + other.hyperplane_count();
        let mut signs = Vec::with_capacity(n1 * n2);
        for a in 0..n1 {
            for b in 0..n2 {
                signs.push(Bits::from_fn(m, |h| {
                    if h < m1 {
                        self.signs[a].get(h)
                    } else {
                        other.signs[b].get(h - m1)
                    }
                }));
            }
        }
        let mut edges = Vec::new();
        for &(u, v, h) in &self.edges {
            for b in 0..n2 {
                edges.push((u * n2 + b, v * n2 + b, h));
            }
        }
        for &(u, v, h) in &other.edges {
            for a in 0..n1 {
                edges.push((a * n2 + u, a * n2 + v, m1 + h));
            }
        }
        CubeComplex::from_sign_vectors(signs, edges, (0..m as u64).collect())
    }

    /// Path with `len` edges (`len + 1` vertices).
    pub fn path(len: usize) -> CubeComplex {
        let signs = (0..=len).map(|i| Bits::from_fn(len, |h| h < i)).collect();
        let edges = (0..len).map(|i| (i, i + 1, i)).collect();
        CubeComplex::from_sign_vectors(signs, edges, (0..len as u64).collect())
    }

    /// `m × n` grid of vertices; vertex `(x, y)` has id `x * n + y`.
    /// Hyperplanes `0..m-1` separate columns, `m-1..` separate rows.
    pub fn grid(m: usize, n: usize) -> CubeComplex {
        assert!(m >= 1 && n >= 1, "grid needs at least one vertex per side");
        CubeComplex::path(m - 1).product(&CubeComplex::path(n - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_has_expected_shape() {
        let g = CubeComplex::grid(3, 4);
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g.edge_count(), 2 * 4 + 3 * 3);
        assert_eq!(g.hyperplane_count(), 5);
    }

    #[test]
    fn grid_passes_strict_validation() {
        let g = CubeComplex::grid(4, 4);
        let edges: Vec<_> = g.edges().iter().map(|&(u, v, h)| (u, v, h as u64)).collect();
        let again = CubeComplex::from_edges(16, &edges, &ValidationConfig::default()).unwrap();
        assert_eq!(again.hyperplane_count(), 6);
    }

    #[test]
    fn rejects_odd_cycle() {
        let err = CubeComplex::from_edges(3, &[(0, 1, 0), (1, 2, 1), (2, 0, 2)], &Default::default())
            .unwrap_err();
        assert!(matches!(err, MedianError::NotBipartite(..)));
    }

    #[test]
    fn rejects_disconnected() {
        let err = CubeComplex::from_edges(4, &[(0, 1, 0), (2, 3, 1)], &Default::default()).unwrap_err();
        assert_eq!(err, MedianError::Disconnected(2));
    }

    #[test]
    fn rejects_mislabelled_square() {
        // 4-cycle with all four edges labelled differently: no hyperplane cuts it in two.
        let err = CubeComplex::from_edges(
            4,
            &[(0, 1, 0), (1, 2, 1), (2, 3, 2), (3, 0, 3)],
            &Default::default(),
        )
        .unwrap_err();
        assert!(matches!(err, MedianError::BadHyperplaneCut { components: 1, .. }));
    }

    #[test]
    fn rejects_hexagon_labelled_as_partial_cube_but_not_median() {
        // K_{2,3}: 0,1 on one side, 2,3,4 on the other. Not a partial cube.
        let edges = [(0, 2, 0), (0, 3, 1), (0, 4, 2), (1, 2, 1), (1, 3, 0), (1, 4, 3)];
        assert!(CubeComplex::from_edges(5, &edges, &Default::default()).is_err());
    }

    #[test]
    fn rejects_cube_missing_a_corner() {
        // 3-cube with one vertex deleted is a partial cube but not median.
        let mut edges = Vec::new();
        let idx = |b: usize| -> Option<usize> {
            if b == 7 {
                None
            } else {
                Some(b)
            }
        };
        for b in 0..8usize {
            for h in 0..3 {
                let c = b ^ (1 << h);
                if b < c {
                    if let (Some(u), Some(v)) = (idx(b), idx(c)) {
                        edges.push((u, v, h as u64));
                    }
                }
            }
        }
        let err = CubeComplex::from_edges(7, &edges, &Default::default()).unwrap_err();
        assert!(
            matches!(err, MedianError::MissingVertex { .. } | MedianError::MedianAxiom(..)),
            "{err:?}"
        );
    }

    #[test]
    fn left_side_contains_vertex_zero() {
        let g = CubeComplex::grid(3, 3);
        for h in 0..g.hyperplane_count() {
            assert!(g.halfspace(h, Side::Left).contains(0));
            assert!(!g.halfspace(h, Side::Right).contains(0));
        }
    }
}
