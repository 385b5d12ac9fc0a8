//! Product of quasilines versus non-cocompact minset.

use serde::Serialize;

use super::classify::{alignment_partition, semi_crossing_pairs};
use super::pushoff::{pushoff, PushoffAudit};
use super::quasiline::quasiline_width;
use super::window::WindowHull;
use super::{validate, CrossingInterval, FlatError, PeriodicWallspace, WallRef};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasilineFactor {
    pub orbits: Vec<WallRef>,
    /// Crossing width at the analysis window.
    pub width: usize,
    /// Crossing width at the doubled window; equal to `width`.
    pub width_doubled: usize,
    /// Vertices of the dual of this class's window walls.
    pub vertices: usize,
}

/// Evidence that the window hull is the product of the factor duals: the
/// projection to the factors is injective and vertex and edge counts agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductCertificate {
    pub hull_vertices: usize,
    pub product_vertices: usize,
    pub hull_edges: usize,
    pub product_edges: usize,
    pub projection_injective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiCrossingWitness {
    pub class: usize,
    /// A semi-crossing pair `above > below`.
    pub above: WallRef,
    pub below: WallRef,
    /// The maximal alignment class that is pushed off.
    pub maximal_class: Vec<WallRef>,
    pub k: i64,
    pub pushoff: PushoffAudit,
    /// The same push-off audited at the doubled window.
    pub pushoff_doubled: PushoffAudit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExcessClassesWitness {
    pub classes: Vec<Vec<WallRef>>,
    pub count: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    ProductOfQuasilines {
        factors: Vec<QuasilineFactor>,
        certificate: ProductCertificate,
    },
    NonCocompact {
        witness: Witness,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    SemiCrossing(SemiCrossingWitness),
    ExcessClasses(ExcessClassesWitness),
}

impl Verdict {
    pub fn is_product(&self) -> bool {
        matches!(self, Verdict::ProductOfQuasilines { .. })
    }

    pub fn semi_crossing(&self) -> Option<&SemiCrossingWitness> {
        match self {
            Verdict::NonCocompact {
                witness: Witness::SemiCrossing(w),
            } => Some(w),
            _ => None,
        }
    }

    pub fn excess_classes(&self) -> Option<&ExcessClassesWitness> {
        match self {
            Verdict::NonCocompact {
                witness: Witness::ExcessClasses(w),
            } => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DichotomyReport {
    pub verdict: Verdict,
    pub rank: usize,
    pub window: i64,
    /// Window at which the evidence was recomputed.
    pub stability_window: i64,
    pub hull_vertices: usize,
    pub factor_vertices: Vec<usize>,
}

/// The maximal alignment class to push off: among classes lying above some
/// other class, with nothing above them, the one with the smallest first orbit.
fn choose_maximal(pw: &PeriodicWallspace, partition: &[Vec<WallRef>]) -> Option<(Vec<WallRef>, WallRef, WallRef)> {
    let pairs = semi_crossing_pairs(pw);
    let above = |a: WallRef, b: WallRef| {
        a.class == b.class && matches!(pw.classes[a.class].interval(a.rep, b.rep), CrossingInterval::AtLeast { .. })
    };
    for q in partition {
        let Some(&(a, b)) = pairs.iter().find(|(a, _)| q.contains(a)) else {
            continue;
        };
        let dominated = pw
            .refs()
            .into_iter()
            .any(|h| !q.contains(&h) && q.iter().any(|&m| above(h, m)));
        if !dominated {
            return Some((q.clone(), a, b));
        }
    }
    None
}

/// Decides between a product of `rank` quasilines and a non-cocompact hull.
/// Window evidence is computed at `n` and again at `2n`.
pub fn dichotomy(pw: &PeriodicWallspace, rank: usize, n: i64) -> Result<DichotomyReport, FlatError> {
    validate(pw)?;
    if rank == 0 || rank > pw.rank {
        return Err(FlatError::BadRank { rank, p: pw.rank });
    }
    if n < 2 {
        return Err(FlatError::WindowTooSmall { n, min: 2 });
    }
    let partition = alignment_partition(pw);
    let hull = WindowHull::build(pw, n, |_| true)?;
    let factor_duals: Vec<WindowHull> = partition
        .iter()
        .map(|q| WindowHull::build(pw, n, |r| q.contains(&r)))
        .collect::<Result<_, _>>()?;
    let factor_vertices: Vec<usize> = factor_duals.iter().map(|f| f.vertex_count()).collect();

    let verdict = if let Some((q, a, b)) = choose_maximal(pw, &partition) {
        let first = pushoff(pw, &q, 1, n)?;
        let second = pushoff(pw, &q, 1, 2 * n)?;
        if first.audit.min_displacement.is_none() || second.audit.min_displacement.is_none() {
            return Err(FlatError::Unstable(n, 2 * n));
        }
        Verdict::NonCocompact {
            witness: Witness::SemiCrossing(SemiCrossingWitness {
                class: a.class,
                above: a,
                below: b,
                maximal_class: q,
                k: 1,
                pushoff: first.audit,
                pushoff_doubled: second.audit,
            }),
        }
    } else if partition.len() > rank {
        Verdict::NonCocompact {
            witness: Witness::ExcessClasses(ExcessClassesWitness {
                count: partition.len(),
                classes: partition.clone(),
                rank,
            }),
        }
    } else {
        let mut factors = Vec::with_capacity(partition.len());
        for (q, f) in partition.iter().zip(&factor_duals) {
            let width = quasiline_width(pw, q, n)?;
            let width_doubled = quasiline_width(pw, q, 2 * n)?;
            if width != width_doubled {
                return Err(FlatError::QuasilineFailure {
                    widths: vec![width, width_doubled],
                    windows: vec![n, 2 * n],
                });
            }
            factors.push(QuasilineFactor {
                orbits: q.clone(),
                width,
                width_doubled,
                vertices: f.vertex_count(),
            });
        }
        let certificate = product_certificate(&hull, &factor_duals)?;
        if !certificate.projection_injective
            || certificate.hull_vertices != certificate.product_vertices
            || certificate.hull_edges != certificate.product_edges
        {
            return Err(FlatError::Audit(format!(
                "window hull is not the product of its factors: {certificate:?}"
            )));
        }
        Verdict::ProductOfQuasilines { factors, certificate }
    };

    Ok(DichotomyReport {
        verdict,
        rank,
        window: n,
        stability_window: 2 * n,
        hull_vertices: hull.vertex_count(),
        factor_vertices,
    })
}

fn product_certificate(hull: &WindowHull, factors: &[WindowHull]) -> Result<ProductCertificate, FlatError> {
    let product_vertices = factors
        .iter()
        .try_fold(1usize, |acc, f| acc.checked_mul(f.vertex_count()))
        .ok_or(FlatError::Overflow)?;
    let mut product_edges = 0usize;
    for (i, f) in factors.iter().enumerate() {
        let others = factors
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .try_fold(1usize, |acc, (_, g)| acc.checked_mul(g.vertex_count()))
            .ok_or(FlatError::Overflow)?;
        product_edges = f
            .complex()
            .edge_count()
            .checked_mul(others)
            .and_then(|e| e.checked_add(product_edges))
            .ok_or(FlatError::Overflow)?;
    }
    // Position of each factor wall inside the hull's wall list.
    let wall_maps: Vec<Vec<usize>> = factors
        .iter()
        .map(|f| f.walls.iter().map(|w| hull.wall_index(w).expect("factor wall in hull")).collect())
        .collect();
    let mut seen = std::collections::HashSet::new();
    let mut injective = true;
    for v in 0..hull.vertex_count() {
        let o = hull.orientation(v);
        let mut tuple = Vec::with_capacity(factors.len());
        for (f, map) in factors.iter().zip(&wall_maps) {
            let proj = crate::bits::Bits::from_fn(map.len(), |w| o.get(map[w]));
            match f.vertex_of(&proj) {
                Some(x) => tuple.push(x),
                None => {
                    injective = false;
                    break;
                }
            }
        }
        if !seen.insert(tuple) {
            injective = false;
        }
    }
    Ok(ProductCertificate {
        hull_vertices: hull.vertex_count(),
        product_vertices,
        hull_edges: hull.complex().edge_count(),
        product_edges,
        projection_injective: injective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn grid_is_a_product() {
        let r = dichotomy(&fixtures::standard_grid(), 2, 4).unwrap();
        let Verdict::ProductOfQuasilines { factors, certificate } = &r.verdict else {
            panic!("{r:?}");
        };
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|f| f.width == 0));
        assert_eq!(certificate.hull_vertices, 81);
        assert_eq!(r.factor_vertices, vec![9, 9]);
    }

    #[test]
    fn glide_has_excess_classes() {
        let r = dichotomy(&fixtures::glide(), 1, 4).unwrap();
        let w = r.verdict.excess_classes().unwrap();
        assert_eq!((w.count, w.rank), (2, 1));
        assert_eq!(r.hull_vertices, 81);
    }

    #[test]
    fn halfplane_semi_crosses() {
        let r = dichotomy(&fixtures::halfplane(), 1, 4).unwrap();
        let w = r.verdict.semi_crossing().unwrap();
        assert_eq!(w.maximal_class, vec![WallRef::new(0, 0)]);
        assert_eq!(w.pushoff.min_displacement, Some(1));
    }

    #[test]
    fn rank_is_checked() {
        assert!(matches!(
            dichotomy(&fixtures::standard_grid(), 3, 4),
            Err(FlatError::BadRank { .. })
        ));
    }
}
