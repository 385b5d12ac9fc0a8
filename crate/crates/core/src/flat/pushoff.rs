//! Push-off maps: shift the orientations of one maximal alignment class by
//! `k` translates and keep all others.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::classify::alignment_partition;
use super::window::WindowHull;
use super::{validate, CrossingInterval, FlatError, PeriodicWallspace, WallRef};
use crate::bits::Bits;

/// Below this many domain vertices, distances are compared on all pairs.
pub const ALL_PAIRS_LIMIT: usize = 1500;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PushoffAudit {
    pub injective: bool,
    pub edges_checked: usize,
    /// Vertex pairs whose distance was compared; 0 when the domain was too large.
    pub pairs_checked: usize,
    pub distance_nonincreasing: bool,
    /// Distinct canonical vertices of sample points inside the window.
    pub canonical_vertices: usize,
    pub shifts_checked: usize,
    /// Least distance from the image of a canonical vertex to a lattice translate
    /// of that vertex; `None` when the shifted class is empty.
    pub min_displacement: Option<usize>,
}

/// A push-off from the window-`n` hull into the window-`n + k` hull.
#[derive(Debug, Clone)]
pub struct Pushoff {
    pub k: i64,
    pub n: i64,
    pub class: Vec<WallRef>,
    /// Image in the codomain of each domain vertex.
    pub map: Vec<usize>,
    pub domain: WindowHull,
    pub codomain: WindowHull,
    pub audit: PushoffAudit,
}

/// Checks that `q` is an alignment class and that no orbit lies above it.
fn check_maximal(pw: &PeriodicWallspace, q: &[WallRef]) -> Result<(), FlatError> {
    if q.is_empty() {
        return Ok(());
    }
    for &r in q {
        pw.class(r)?;
    }
    let mut sorted = q.to_vec();
    sorted.sort();
    sorted.dedup();
    if !alignment_partition(pw).contains(&sorted) {
        return Err(FlatError::NotAlignmentClass(q.to_vec()));
    }
    let i = sorted[0].class;
    let c = &pw.classes[i];
    for h in 0..c.reps.len() {
        let href = WallRef::new(i, h);
        if sorted.contains(&href) {
            continue;
        }
        for b in &sorted {
            if matches!(c.interval(h, b.rep), CrossingInterval::AtLeast { .. }) {
                return Err(FlatError::NotMaximal {
                    above: href,
                    below: *b,
                });
            }
        }
    }
    Ok(())
}

/// `phi_k`: orientation of wall `(Q, t)` becomes that of `(Q, t - k)`; walls
/// outside the source window are oriented toward the window.
pub fn pushoff(pw: &PeriodicWallspace, q: &[WallRef], k: i64, n: i64) -> Result<Pushoff, FlatError> {
    validate(pw)?;
    if k < 1 {
        return Err(FlatError::NonPositiveShift(k));
    }
    if 2 * k > n {
        return Err(FlatError::ShiftEscapesWindow { k, n });
    }
    check_maximal(pw, q)?;
    let domain = WindowHull::build(pw, n, |_| true)?;
    let codomain = WindowHull::build(pw, n + k, |_| true)?;

    let source: Vec<Option<usize>> = codomain
        .walls
        .iter()
        .map(|w| {
            let mut s = *w;
            if q.contains(&w.orbit()) {
                s.translate -= k;
            }
            domain.wall_index(&s)
        })
        .collect();
    let image_of = |o: &Bits| -> Bits {
        Bits::from_fn(codomain.walls.len(), |w| match source[w] {
            Some(i) => o.get(i),
            None => codomain.walls[w].translate - if q.contains(&codomain.walls[w].orbit()) { k } else { 0 } < -n,
        })
    };

    let dn = domain.vertex_count();
    let mut map = Vec::with_capacity(dn);
    let mut images: Vec<Bits> = Vec::with_capacity(dn);
    for v in 0..dn {
        let img = image_of(domain.orientation(v));
        let u = codomain.vertex_of(&img).ok_or_else(|| {
            FlatError::Audit(format!("image of vertex {v} is not a vertex of the window {} hull", n + k))
        })?;
        map.push(u);
        images.push(img);
    }

    let injective = map.iter().collect::<HashSet<_>>().len() == dn;
    if !injective {
        return Err(FlatError::Audit("map is not injective on vertices".into()));
    }
    let edges = domain.complex().edges();
    for &(a, b, _) in edges {
        if images[a].hamming(&images[b]) > 1 {
            return Err(FlatError::Audit(format!("edge {a}-{b} is stretched")));
        }
    }
    let mut pairs_checked = 0;
    if dn <= ALL_PAIRS_LIMIT {
        for a in 0..dn {
            for b in (a + 1)..dn {
                let before = domain.orientation(a).hamming(domain.orientation(b));
                if images[a].hamming(&images[b]) > before {
                    return Err(FlatError::Audit(format!("distance between {a} and {b} increases")));
                }
                pairs_checked += 1;
            }
        }
    }

    let mut canonical_vertices = 0;
    let mut shifts_checked = 0;
    let mut min_displacement = None;
    if !q.is_empty() {
        let frame = &codomain.frame;
        let mut seen: HashMap<Bits, ()> = HashMap::new();
        let shifts = lattice_box(pw.rank, n);
        for pos in frame.samples(n) {
            if !frame.inside(&pos, n) {
                continue;
            }
            let cell = codomain.canonical(&pos);
            if seen.insert(cell, ()).is_some() {
                continue;
            }
            canonical_vertices += 1;
            let x = domain.vertex_of(&domain.canonical(&pos)).ok_or_else(|| {
                FlatError::Audit("canonical orientation is not a vertex of the hull".into())
            })?;
            for v in &shifts {
                let target = codomain.canonical(&frame.shifted(&pos, v));
                let d = images[x].hamming(&target);
                shifts_checked += 1;
                min_displacement = Some(min_displacement.map_or(d, |m: usize| m.min(d)));
            }
        }
        match min_displacement {
            Some(m) if m < k as usize => {
                return Err(FlatError::Audit(format!(
                    "a canonical vertex moves only {m} < {k} from one of its translates"
                )))
            }
            None => return Err(FlatError::Audit("no canonical vertex inside the window".into())),
            _ => {}
        }
    }

    Ok(Pushoff {
        k,
        n,
        class: q.to_vec(),
        map,
        audit: PushoffAudit {
            injective,
            edges_checked: edges.len(),
            pairs_checked,
            distance_nonincreasing: true,
            canonical_vertices,
            shifts_checked,
            min_displacement,
        },
        domain,
        codomain,
    })
}

/// All vectors of `Z^p` with entries in `[-n, n]`.
fn lattice_box(p: usize, n: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..p {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-n..=n).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}
