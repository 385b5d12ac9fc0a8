use std::collections::HashMap;

use super::CubeComplex;
use crate::bits::Bits;

/// Splitting of a complex along classes of hyperplanes that pairwise cross.
#[derive(Debug, Clone)]
pub struct ProductDecomposition {
    /// Dense hyperplane indices of each class, classes ordered by smallest index.
    pub classes: Vec<Vec<usize>>,
    /// Factor complex of each class, obtained by collapsing all other hyperplanes.
    pub factors: Vec<CubeComplex>,
    /// Vertex `v` of the input projects to `projection[v][i]` in factor `i`.
    pub projection: Vec<Vec<usize>>,
    /// Whether the factor vertex counts multiply to the input vertex count.
    pub exact: bool,
}

impl CubeComplex {
    /// Finest partition of the hyperplanes such that hyperplanes in different
    /// classes pairwise cross, together with the factor complexes.
    pub fn product_decomposition(&self) -> ProductDecomposition {
        let m = self.hyperplane_count();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for h in 0..m {
            for g in (h + 1)..m {
                if !self.crosses(h, g) {
                    let (a, b) = (find(&mut parent, h), find(&mut parent, g));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); m];
        for h in 0..m {
            let r = find(&mut parent, h);
            by_root[r].push(h);
        }
        let classes: Vec<Vec<usize>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();

        let n = self.vertex_count();
        let mut projection = vec![Vec::with_capacity(classes.len()); n];
        let mut factors = Vec::with_capacity(classes.len());
        for class in &classes {
            let local: HashMap<usize, usize> =
                class.iter().enumerate().map(|(i, &h)| (h, i)).collect();
            let mut index: HashMap<Bits, usize> = HashMap::new();
            let mut signs = Vec::new();
            for (v, proj) in projection.iter_mut().enumerate() {
                let s = Bits::from_fn(class.len(), |i| self.signs[v].get(class[i]));
                let id = *index.entry(s.clone()).or_insert_with(|| {
                    signs.push(s);
                    signs.len() - 1
                });
                proj.push(id);
            }
            let mut edges = Vec::new();
            let mut seen = std::collections::HashSet::new();
            for &(u, v, h) in &self.edges {
                if let Some(&i) = local.get(&h) {
                    let (a, b) = (proj_of(&projection, u), proj_of(&projection, v));
                    let (a, b) = (a.min(b), a.max(b));
                    if seen.insert((a, b)) {
                        edges.push((a, b, i));
                    }
                }
            }
            let ids = class.iter().map(|&h| self.hyperplane_ids[h]).collect();
            factors.push(CubeComplex::from_sign_vectors(signs, edges, ids));
        }
        let product: Option<usize> = factors
            .iter()
            .try_fold(1usize, |acc, f| acc.checked_mul(f.vertex_count()));
        ProductDecomposition {
            exact: product == Some(n),
            classes,
            factors,
            projection,
        }
    }
}

fn proj_of(projection: &[Vec<usize>], v: usize) -> usize {
    *projection[v].last().expect("projection filled for current class")
}
