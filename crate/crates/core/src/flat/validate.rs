use serde::Serialize;
use thiserror::Error;

use super::classify::alignment_partition;
use super::{CrossingInterval, ParallelClass, PeriodicWallspace, Rational};
use crate::lattice::rational_rank;

/// The consistency condition a [`ValidationError`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    /// Directions, periods, offsets and table shape.
    Structure,
    /// `interval(j', j) = -interval(j, j')`.
    Antisymmetry,
    /// Self intervals are finite, symmetric, and a wall meets finitely many of its translates.
    SelfCrossing,
    /// Alignment of orbits is an equivalence relation.
    AlignmentEquivalence,
    /// Semi-crossing is a partial order, compatible with alignment.
    SemiCrossingOrder,
    /// Every orbit outside a maximal alignment class crosses it or lies below it.
    MaximalClass,
    /// Of three parallel walls, the outer two cross only if the middle one crosses one of them.
    Nesting,
}

impl std::fmt::Display for Lemma {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Lemma::Structure => "structure",
            Lemma::Antisymmetry => "antisymmetry",
            Lemma::SelfCrossing => "self-crossing",
            Lemma::AlignmentEquivalence => "alignment equivalence",
            Lemma::SemiCrossingOrder => "semi-crossing order",
            Lemma::MaximalClass => "maximal class",
            Lemma::Nesting => "nesting",
        };
        f.write_str(s)
    }
}

/// Wall data that no CAT(0) cube complex realises.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("{lemma} violated: {detail}")]
pub struct ValidationError {
    pub lemma: Lemma,
    /// Parallelism class of the witness, if any.
    pub class: Option<usize>,
    /// Witnessing representatives within that class.
    pub reps: Vec<usize>,
    pub detail: String,
}

fn fail(lemma: Lemma, class: Option<usize>, reps: Vec<usize>, detail: String) -> ValidationError {
    ValidationError {
        lemma,
        class,
        reps,
        detail,
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// Checks shape and the necessary conditions satisfied by wall data coming
/// from an actual cube complex, in a fixed order.
pub fn validate(pw: &PeriodicWallspace) -> Result<(), ValidationError> {
    check_structure(pw)?;
    for (i, c) in pw.classes.iter().enumerate() {
        check_antisymmetry(i, c)?;
    }
    for (i, c) in pw.classes.iter().enumerate() {
        check_self(i, c)?;
    }
    for (i, c) in pw.classes.iter().enumerate() {
        check_alignment(i, c)?;
    }
    for (i, c) in pw.classes.iter().enumerate() {
        check_order(i, c)?;
    }
    check_maximal(pw)?;
    for (i, c) in pw.classes.iter().enumerate() {
        check_nesting(i, c)?;
    }
    Ok(())
}

fn check_structure(pw: &PeriodicWallspace) -> Result<(), ValidationError> {
    let s = |class: Option<usize>, detail: String| fail(Lemma::Structure, class, vec![], detail);
    let p = pw.rank;
    if p == 0 {
        return Err(s(None, "rank must be positive".into()));
    }
    for (i, c) in pw.classes.iter().enumerate() {
        if c.direction.len() != p {
            return Err(s(
                Some(i),
                format!("direction has {} entries, rank is {p}", c.direction.len()),
            ));
        }
        let g = c.direction.iter().fold(0, |g, &x| gcd(g, x));
        if g != 1 {
            return Err(s(Some(i), format!("direction {:?} is not primitive", c.direction)));
        }
        if c.period <= Rational::from_integer(0) {
            return Err(s(Some(i), "period must be positive".into()));
        }
        for &x in &c.direction {
            if !(Rational::from_integer(x) / c.period).is_integer() {
                return Err(s(
                    Some(i),
                    format!(
                        "lattice vectors do not move walls by whole periods (direction {:?}, period {})",
                        c.direction, c.period
                    ),
                ));
            }
        }
        if c.reps.is_empty() {
            return Err(s(Some(i), "class has no representatives".into()));
        }
        for (j, o) in c.reps.iter().enumerate() {
            if *o < Rational::from_integer(0) || *o >= c.period {
                return Err(s(Some(i), format!("offset {o} of rep {j} is outside [0, period)")));
            }
            if c.reps[..j].contains(o) {
                return Err(s(Some(i), format!("offset {o} is repeated")));
            }
        }
        let r = c.reps.len();
        if c.crossing.len() != r || c.crossing.iter().any(|row| row.len() != r) {
            return Err(s(Some(i), format!("crossing table is not {r}x{r}")));
        }
        for row in &c.crossing {
            for iv in row {
                if let CrossingInterval::Finite { lo, hi } = iv {
                    if lo > hi {
                        return Err(s(Some(i), format!("finite interval [{lo}, {hi}] is empty")));
                    }
                }
            }
        }
    }
    for a in 0..pw.classes.len() {
        for b in (a + 1)..pw.classes.len() {
            let (u, v) = (&pw.classes[a].direction, &pw.classes[b].direction);
            if rational_rank(&[u.clone(), v.clone()]) < 2 {
                return Err(s(Some(b), format!("classes {a} and {b} have parallel directions")));
            }
        }
    }
    let dirs: Vec<Vec<i64>> = pw.classes.iter().map(|c| c.direction.clone()).collect();
    if rational_rank(&dirs) < p {
        return Err(s(None, format!("class directions do not span a space of rank {p}")));
    }
    Ok(())
}

fn check_antisymmetry(i: usize, c: &ParallelClass) -> Result<(), ValidationError> {
    let r = c.reps.len();
    for a in 0..r {
        for b in (a + 1)..r {
            let (x, y) = (c.interval(a, b), c.interval(b, a));
            if y != x.negate() {
                return Err(fail(
                    Lemma::Antisymmetry,
                    Some(i),
                    vec![a, b],
                    format!("interval({a},{b}) = {x:?} but interval({b},{a}) = {y:?}"),
                ));
            }
        }
    }
    Ok(())
}

fn check_self(i: usize, c: &ParallelClass) -> Result<(), ValidationError> {
    for j in 0..c.reps.len() {
        let ok = match c.interval(j, j) {
            CrossingInterval::Empty => true,
            CrossingInterval::Finite { lo, hi } => lo == -hi,
            _ => false,
        };
        if !ok {
            return Err(fail(
                Lemma::SelfCrossing,
                Some(i),
                vec![j],
                format!("self interval of rep {j} is {:?}", c.interval(j, j)),
            ));
        }
    }
    Ok(())
}

fn aligned(c: &ParallelClass, a: usize, b: usize) -> bool {
    c.interval(a, b).is_bounded()
}

fn above(c: &ParallelClass, a: usize, b: usize) -> bool {
    matches!(c.interval(a, b), CrossingInterval::AtLeast { .. })
}

fn check_alignment(i: usize, c: &ParallelClass) -> Result<(), ValidationError> {
    let r = c.reps.len();
    for a in 0..r {
        for b in 0..r {
            if b == a || !aligned(c, a, b) {
                continue;
            }
            for d in 0..r {
                if d != a && d != b && aligned(c, b, d) && !aligned(c, a, d) {
                    return Err(fail(
                        Lemma::AlignmentEquivalence,
                        Some(i),
                        vec![a, b, d],
                        format!("{a}~{b} and {b}~{d} are aligned but {a},{d} are not"),
                    ));
                }
            }
        }
    }
    Ok(())
}

fn check_order(i: usize, c: &ParallelClass) -> Result<(), ValidationError> {
    let r = c.reps.len();
    let err = |reps: Vec<usize>, detail: String| fail(Lemma::SemiCrossingOrder, Some(i), reps, detail);
    for a in 0..r {
        for b in 0..r {
            if a == b {
                continue;
            }
            for d in 0..r {
                if d == a || d == b {
                    continue;
                }
                if above(c, a, b) && above(c, b, d) && !above(c, a, d) {
                    return Err(err(vec![a, b, d], format!("{a} > {b} > {d} but not {a} > {d}")));
                }
                // a > b and b ~ d aligned force a > d; likewise below.
                if aligned(c, b, d) {
                    if above(c, a, b) && !above(c, a, d) {
                        return Err(err(
                            vec![a, b, d],
                            format!("{a} > {b} with {b} aligned to {d}, but not {a} > {d}"),
                        ));
                    }
                    if above(c, b, a) && !above(c, d, a) {
                        return Err(err(
                            vec![a, b, d],
                            format!("{b} > {a} with {b} aligned to {d}, but not {d} > {a}"),
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_maximal(pw: &PeriodicWallspace) -> Result<(), ValidationError> {
    for part in alignment_partition(pw) {
        let i = part[0].class;
        let c = &pw.classes[i];
        let in_q = |j: usize| part.iter().any(|w| w.rep == j);
        let maximal = (0..c.reps.len())
            .filter(|&h| !in_q(h))
            .all(|h| part.iter().all(|q| !above(c, h, q.rep)));
        if !maximal {
            continue;
        }
        for h in (0..c.reps.len()).filter(|&h| !in_q(h)) {
            let crosses_all = part.iter().all(|q| c.interval(h, q.rep) == CrossingInterval::All);
            let below_all = part.iter().all(|q| above(c, q.rep, h));
            if !crosses_all && !below_all {
                return Err(fail(
                    Lemma::MaximalClass,
                    Some(i),
                    vec![h, part[0].rep],
                    format!(
                        "rep {h} neither crosses nor lies below the maximal class of rep {}",
                        part[0].rep
                    ),
                ));
            }
        }
    }
    Ok(())
}

fn check_nesting(i: usize, c: &ParallelClass) -> Result<(), ValidationError> {
    let r = c.reps.len();
    let w = 2 * c.max_bound() + 4;
    let mut walls: Vec<(usize, i64)> = Vec::with_capacity(r * (2 * w as usize + 1));
    for j in 0..r {
        for t in -w..=w {
            walls.push((j, t));
        }
    }
    walls.sort_by_key(|&(j, t)| c.position(j, t));
    let cross = |x: (usize, i64), y: (usize, i64)| c.walls_cross(x.0, x.1, y.0, y.1);
    // Outer walls x < z (by position) with one of them at translate 0.
    for (ix, &x) in walls.iter().enumerate() {
        for (iz, &z) in walls.iter().enumerate().skip(ix + 2) {
            if (x.1 != 0 && z.1 != 0) || !cross(x, z) {
                continue;
            }
            for &y in &walls[ix + 1..iz] {
                if !cross(x, y) && !cross(y, z) {
                    return Err(fail(
                        Lemma::Nesting,
                        Some(i),
                        vec![x.0, y.0, z.0],
                        format!(
                            "walls {}@{}, {}@{} cross although {}@{} between them crosses neither",
                            x.0, x.1, z.0, z.1, y.0, y.1
                        ),
                    ));
                }
            }
        }
    }
    Ok(())
}
