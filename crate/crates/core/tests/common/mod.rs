#![allow(dead_code)]

use std::collections::HashSet;

use cubeflat::flat::{validate, CrossingInterval, ParallelClass, PeriodicWallspace, Rational};
use cubeflat::median::{CubeComplex, VertexSet};
use cubeflat::sageev::Wallspace;
use petgraph::graph::{NodeIndex, UnGraph};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Points are random vertices of a cube `{0,1}^m`; walls are the coordinate
/// cuts that separate some points, with duplicates and complements dropped.
pub fn random_wallspace(rng: &mut ChaCha8Rng, max_walls: usize) -> Wallspace {
    let m = rng.gen_range(1..=max_walls);
    let points = rng.gen_range(2..=10usize);
    let coords: Vec<Vec<bool>> = (0..points).map(|_| (0..m).map(|_| rng.gen()).collect()).collect();
    let mut seen = HashSet::new();
    let mut walls = Vec::new();
    for c in 0..m {
        let left: Vec<usize> = (0..points).filter(|&p| !coords[p][c]).collect();
        if left.is_empty() || left.len() == points {
            continue;
        }
        let key: Vec<bool> = (0..points).map(|p| coords[p][c] == coords[0][c]).collect();
        if seen.insert(key) {
            walls.push(left);
        }
    }
    Wallspace::new(points, &walls).expect("generated wallspace is well formed")
}

/// Points of an `m × n` grid with a wall between consecutive columns and rows.
pub fn grid_wallspace(m: usize, n: usize) -> Wallspace {
    let mut walls = Vec::new();
    for c in 1..m {
        walls.push((0..m * n).filter(|p| p / n < c).collect());
    }
    for r in 1..n {
        walls.push((0..m * n).filter(|p| p % n < r).collect());
    }
    Wallspace::new(m * n, &walls).unwrap()
}

pub fn to_petgraph(c: &CubeComplex) -> UnGraph<(), ()> {
    let mut g = UnGraph::new_undirected();
    for _ in 0..c.vertex_count() {
        g.add_node(());
    }
    for &(u, v, _) in c.edges() {
        g.add_edge(NodeIndex::new(u), NodeIndex::new(v), ());
    }
    g
}

/// All-pairs graph distances by breadth-first search.
pub fn bfs_distances(c: &CubeComplex) -> Vec<Vec<usize>> {
    let g = to_petgraph(c);
    (0..c.vertex_count())
        .map(|s| {
            let d = petgraph::algo::dijkstra(&g, NodeIndex::new(s), None, |_| 1usize);
            (0..c.vertex_count()).map(|t| d[&NodeIndex::new(t)]).collect()
        })
        .collect()
}

/// Smallest geodesically closed set containing `s`.
pub fn interval_closure(dist: &[Vec<usize>], s: &[usize]) -> Vec<usize> {
    let n = dist.len();
    let mut inside = vec![false; n];
    for &v in s {
        inside[v] = true;
    }
    loop {
        let members: Vec<usize> = (0..n).filter(|&v| inside[v]).collect();
        let mut grew = false;
        for &a in &members {
            for &b in &members {
                for w in 0..n {
                    if !inside[w] && dist[a][w] + dist[w][b] == dist[a][b] {
                        inside[w] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return (0..n).filter(|&v| inside[v]).collect();
        }
    }
}

pub fn random_subset(rng: &mut ChaCha8Rng, n: usize, max: usize) -> Vec<usize> {
    let k = rng.gen_range(1..=max.min(n));
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(k);
    all.sort();
    all
}

pub fn set(c: &CubeComplex, vs: &[usize]) -> VertexSet {
    VertexSet::from_vertices(c.vertex_count(), vs.iter().copied()).unwrap()
}

fn random_interval(rng: &mut ChaCha8Rng) -> CrossingInterval {
    match rng.gen_range(0..5) {
        0 => CrossingInterval::Empty,
        1 => {
            let lo = rng.gen_range(-2..=1);
            CrossingInterval::Finite {
                lo,
                hi: lo + rng.gen_range(0..=2),
            }
        }
        2 => CrossingInterval::AtLeast { lo: rng.gen_range(-1..=2) },
        3 => CrossingInterval::AtMost { hi: rng.gen_range(-2..=1) },
        _ => CrossingInterval::All,
    }
}

fn random_class(rng: &mut ChaCha8Rng, direction: Vec<i64>, reps: usize, semi: bool) -> ParallelClass {
    let mut offsets: Vec<Rational> = (0..8).map(|i| Rational::new(i, 8)).collect();
    offsets.shuffle(rng);
    offsets.truncate(reps);
    offsets.sort();
    let mut crossing = vec![vec![CrossingInterval::Empty; reps]; reps];
    for a in 0..reps {
        let h = rng.gen_range(0..=1);
        crossing[a][a] = if h == 0 {
            CrossingInterval::Empty
        } else {
            CrossingInterval::Finite { lo: -h, hi: h }
        };
        for b in (a + 1)..reps {
            let mut iv = random_interval(rng);
            while !semi && matches!(iv, CrossingInterval::AtLeast { .. } | CrossingInterval::AtMost { .. }) {
                iv = random_interval(rng);
            }
            crossing[a][b] = iv;
            crossing[b][a] = iv.negate();
        }
    }
    ParallelClass {
        direction,
        period: Rational::from_integer(1),
        reps: offsets,
        crossing,
    }
}

/// A random periodic wallspace passing validation, with at most `max_reps`
/// representatives per class. Semi-crossing pairs appear only if `semi`.
pub fn random_periodic(rng: &mut ChaCha8Rng, max_reps: usize, semi: bool) -> PeriodicWallspace {
    loop {
        let rank = rng.gen_range(1..=2usize);
        let directions: Vec<Vec<i64>> = if rank == 1 {
            vec![vec![1]]
        } else {
            let mut d = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
            d.truncate(rng.gen_range(2..=3));
            d
        };
        let classes = directions
            .into_iter()
            .map(|dir| {
                let reps = rng.gen_range(1..=max_reps);
                random_class(rng, dir, reps, semi)
            })
            .collect();
        let pw = PeriodicWallspace { rank, classes };
        if validate(&pw).is_ok() {
            return pw;
        }
    }
}

/// A validated single class of `reps` orbits totally ordered by semi-crossing.
pub fn random_chain(rng: &mut ChaCha8Rng, reps: usize) -> PeriodicWallspace {
    loop {
        let mut c = random_class(rng, vec![1], reps, true);
        for a in 0..reps {
            for b in (a + 1)..reps {
                c.crossing[b][a] = CrossingInterval::AtLeast { lo: 0 };
                c.crossing[a][b] = CrossingInterval::AtMost { hi: 0 };
            }
        }
        let pw = PeriodicWallspace {
            rank: 1,
            classes: vec![c],
        };
        if validate(&pw).is_ok() {
            return pw;
        }
    }
}

/// Smallest positive gcd of the `r × r` minors of `rows`, with `r` the rank;
/// `(rank, divisor)`. Computed by Bareiss elimination on every row subset.
pub fn determinantal_divisor(rows: &[Vec<i64>], p: usize) -> (usize, i128) {
    let n = rows.len();
    for r in (1..=p.min(n)).rev() {
        let mut g: i128 = 0;
        for row_set in subsets(n, r) {
            for col_set in subsets(p, r) {
                let m: Vec<Vec<i128>> = row_set
                    .iter()
                    .map(|&i| col_set.iter().map(|&j| rows[i][j] as i128).collect())
                    .collect();
                g = num_integer::gcd(g, det(m));
            }
        }
        if g != 0 {
            return (r, g);
        }
    }
    (0, 1)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Membership in the integer span of `gens`, decided by determinantal
/// divisors: adding `x` keeps the rank and the divisor iff `x` is in the span.
pub fn in_span(gens: &[Vec<i64>], x: &[i64]) -> bool {
    let p = x.len();
    if x.iter().all(|&v| v == 0) {
        return true;
    }
    let (r0, d0) = determinantal_divisor(gens, p);
    let mut with = gens.to_vec();
    with.push(x.to_vec());
    let (r1, d1) = determinantal_divisor(&with, p);
    r0 == r1 && d0 == d1
}

/// Rank over the rationals, by determinantal divisors.
pub fn oracle_rank(rows: &[Vec<i64>], p: usize) -> usize {
    determinantal_divisor(rows, p).0
}

/// All integer points of `[-b, b]^p`.
pub fn box_points(p: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..p {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (-b..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}
