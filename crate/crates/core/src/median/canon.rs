//! Canonical labelling and isomorphism of small unlabelled graphs by colour
//! refinement and individualisation. The canonical form visits every
//! automorphism, so its cost grows with the symmetry group; the isomorphism
//! test stops at the first match.

use super::CubeComplex;

/// Canonical form of an unlabelled graph: vertex count and the sorted edge
/// list under the canonical relabelling. Two graphs are isomorphic iff their
/// canonical forms are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

fn adjacency(c: &CubeComplex) -> Vec<Vec<usize>> {
    (0..c.vertex_count())
        .map(|v| c.neighbors(v).iter().map(|&(u, _)| u).collect())
        .collect()
}

/// Searches for one isomorphism, refining both graphs jointly and stopping at
/// the first consistent bijection. Unlike [`canonical_form`], this does not
/// enumerate automorphisms, so symmetric graphs such as cubes stay cheap.
pub fn is_isomorphic(a: &CubeComplex, b: &CubeComplex) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    // Disjoint union: vertices of `b` are shifted by `n`.
    let mut adj = adjacency(a);
    adj.extend(adjacency(b).into_iter().map(|nb| nb.into_iter().map(|u| u + n).collect()));
    let colours = refine(&adj, vec![0; 2 * n]);
    matches(&adj, n, colours)
}

/// Per colour: (count among the first `n` vertices, count among the rest).
fn balanced(colours: &[usize], n: usize) -> Option<Vec<(usize, usize)>> {
    let mut counts = vec![(0usize, 0usize); colours.len().max(1)];
    for (v, &c) in colours.iter().enumerate() {
        if v < n {
            counts[c].0 += 1;
        } else {
            counts[c].1 += 1;
        }
    }
    counts.iter().all(|&(x, y)| x == y).then_some(counts)
}

fn matches(adj: &[Vec<usize>], n: usize, colours: Vec<usize>) -> bool {
    let Some(counts) = balanced(&colours, n) else {
        return false;
    };
    let Some(cell) = (0..counts.len()).find(|&c| counts[c].0 > 1) else {
        // Discrete on both sides: the colour pairing is the only candidate.
        let mut image = vec![0; n];
        let mut by_colour = vec![0; counts.len()];
        for v in n..2 * n {
            by_colour[colours[v]] = v - n;
        }
        for v in 0..n {
            image[v] = by_colour[colours[v]];
        }
        return (0..n).all(|v| {
            let mut x: Vec<usize> = adj[v].iter().map(|&u| image[u]).collect();
            let mut y: Vec<usize> = adj[image[v] + n].iter().map(|&u| u - n).collect();
            x.sort_unstable();
            y.sort_unstable();
            x == y
        });
    };
    let v = (0..n).find(|&v| colours[v] == cell).expect("cell has a vertex in the first graph");
    (n..2 * n).filter(|&w| colours[w] == cell).any(|w| {
        let split: Vec<usize> = colours
            .iter()
            .enumerate()
            .map(|(u, &c)| if c > cell || (c == cell && u != v && u != w) { c + 1 } else { c })
            .collect();
        matches(adj, n, refine(adj, split))
    })
}

pub fn canonical_form(c: &CubeComplex) -> CanonicalForm {
    let n = c.vertex_count();
    let adj = adjacency(c);
    let colours = refine(&adj, vec![0; n]);
    let mut best: Option<CanonicalForm> = None;
    search(&adj, colours, &mut best);
    best.expect("search visits at least one leaf")
}

/// Equitable refinement. Colours are renumbered by sorting signatures, so the
/// result depends only on the isomorphism class of (graph, initial colouring).
fn refine(adj: &[Vec<usize>], mut colours: Vec<usize>) -> Vec<usize> {
    let n = adj.len();
    let mut count = distinct(&colours);
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = adj[v].iter().map(|&u| colours[u]).collect();
                nb.sort_unstable();
                (colours[v], nb, v)
            })
            .collect();
        sigs.sort();
        let mut next = vec![0; n];
        let mut c = 0;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                c += 1;
            }
            next[sigs[i].2] = c;
        }
        let new_count = if n == 0 { 0 } else { c + 1 };
        colours = next;
        if new_count == count {
            return colours;
        }
        count = new_count;
    }
}

fn distinct(colours: &[usize]) -> usize {
    let mut c = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn search(adj: &[Vec<usize>], colours: Vec<usize>, best: &mut Option<CanonicalForm>) {
    let n = adj.len();
    // Smallest colour class with more than one vertex.
    let mut sizes = vec![0usize; n.max(1)];
    for &c in &colours {
        sizes[c] += 1;
    }
    let target = (0..sizes.len()).find(|&c| sizes[c] > 1);
    match target {
        None => {
            let mut edges: Vec<(usize, usize)> = Vec::new();
            for (v, nb) in adj.iter().enumerate() {
                for &u in nb {
                    let (a, b) = (colours[v], colours[u]);
                    if a < b {
                        edges.push((a, b));
                    }
                }
            }
            edges.sort_unstable();
            let form = CanonicalForm { vertices: n, edges };
            if best.as_ref().is_none_or(|b| form < *b) {
                *best = Some(form);
            }
        }
        Some(cell) => {
            for v in (0..n).filter(|&v| colours[v] == cell) {
                // Individualise v: it keeps `cell`, the rest of its cell moves up.
                let split: Vec<usize> = colours
                    .iter()
                    .enumerate()
                    .map(|(u, &c)| {
                        if c > cell || (c == cell && u != v) {
                            c + 1
                        } else {
                            c
                        }
                    })
                    .collect();
                search(adj, refine(adj, split), best);
            }
        }
    }
}
