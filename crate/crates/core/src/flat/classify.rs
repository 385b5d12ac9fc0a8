use super::{
    validate, CrossingInterval, Direction, FlatError, OrbitPairClass, PeriodicWallspace, WallRef,
};

/// Crossing, semi-crossing or aligned, from the crossing table of `a` against `b`.
pub fn classify_pair(pw: &PeriodicWallspace, a: WallRef, b: WallRef) -> Result<OrbitPairClass, FlatError> {
    let c = pw.class(a)?;
    pw.class(b)?;
    if a.class != b.class {
        return Ok(OrbitPairClass::Crossing);
    }
    Ok(match c.interval(a.rep, b.rep) {
        CrossingInterval::All => OrbitPairClass::Crossing,
        CrossingInterval::AtLeast { lo } => OrbitPairClass::SemiCrossing {
            direction: Direction::Up,
            threshold: lo - 1,
        },
        CrossingInterval::AtMost { hi } => OrbitPairClass::SemiCrossing {
            direction: Direction::Down,
            threshold: -hi - 1,
        },
        CrossingInterval::Empty | CrossingInterval::Finite { .. } => OrbitPairClass::Aligned,
    })
}

/// Pairs `(a, b)` with `a > b`: translates of `a` cross translates of `b` from some shift on.
pub(crate) fn semi_crossing_pairs(pw: &PeriodicWallspace) -> Vec<(WallRef, WallRef)> {
    let mut out = Vec::new();
    for (i, c) in pw.classes.iter().enumerate() {
        for a in 0..c.reps.len() {
            for b in 0..c.reps.len() {
                if matches!(c.interval(a, b), CrossingInterval::AtLeast { .. }) {
                    out.push((WallRef::new(i, a), WallRef::new(i, b)));
                }
            }
        }
    }
    out
}

/// Equivalence closure of alignment, without validating or rejecting
/// semi-crossing pairs. Classes are sorted, and ordered by first member.
pub fn alignment_partition(pw: &PeriodicWallspace) -> Vec<Vec<WallRef>> {
    let mut out = Vec::new();
    for (i, c) in pw.classes.iter().enumerate() {
        let r = c.reps.len();
        let mut label: Vec<usize> = (0..r).collect();
        // Closure by repeated relabelling; r is small.
        let mut changed = true;
        while changed {
            changed = false;
            for a in 0..r {
                for b in 0..r {
                    if c.interval(a, b).is_bounded() && label[b] > label[a] {
                        label[b] = label[a];
                        changed = true;
                    }
                }
            }
        }
        for root in 0..r {
            let members: Vec<WallRef> = (0..r)
                .filter(|&j| label[j] == root)
                .map(|j| WallRef::new(i, j))
                .collect();
            if !members.is_empty() {
                out.push(members);
            }
        }
    }
    out
}

/// Alignment classes of validated, semi-crossing-free data. Orbits in
/// distinct classes pairwise cross.
pub fn alignment_classes(pw: &PeriodicWallspace) -> Result<Vec<Vec<WallRef>>, FlatError> {
    validate(pw)?;
    if let Some(&(a, b)) = semi_crossing_pairs(pw).first() {
        return Err(FlatError::SemiCrossingPresent(a, b));
    }
    Ok(alignment_partition(pw))
}

/// Least `n >= 1` such that no nonzero multiple of `n` lies in the self
/// interval of `r`: the `n`-th power of the class generator acts disjointly.
pub fn disjointness_index(pw: &PeriodicWallspace, r: WallRef) -> Result<u64, FlatError> {
    let c = pw.class(r)?;
    Ok(match c.interval(r.rep, r.rep) {
        CrossingInterval::Empty => 1,
        CrossingInterval::Finite { lo, hi } => lo.unsigned_abs().max(hi.unsigned_abs()) + 1,
        other => {
            return Err(FlatError::Invalid(super::ValidationError {
                lemma: super::Lemma::SelfCrossing,
                class: Some(r.class),
                reps: vec![r.rep],
                detail: format!("self interval {other:?} is unbounded"),
            }))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn classify_examples() {
        let grid = fixtures::standard_grid();
        assert_eq!(
            classify_pair(&grid, WallRef::new(0, 0), WallRef::new(1, 0)).unwrap(),
            OrbitPairClass::Crossing
        );
        assert_eq!(
            classify_pair(&grid, WallRef::new(0, 0), WallRef::new(0, 0)).unwrap(),
            OrbitPairClass::Aligned
        );
        let fig = fixtures::halfplane();
        assert_eq!(
            classify_pair(&fig, WallRef::new(0, 0), WallRef::new(0, 1)).unwrap(),
            OrbitPairClass::SemiCrossing {
                direction: Direction::Up,
                threshold: 0
            }
        );
        assert_eq!(
            classify_pair(&fig, WallRef::new(0, 1), WallRef::new(0, 0)).unwrap(),
            OrbitPairClass::SemiCrossing {
                direction: Direction::Down,
                threshold: 0
            }
        );
        assert!(matches!(
            classify_pair(&fig, WallRef::new(0, 2), WallRef::new(0, 0)),
            Err(FlatError::UnknownRef(_))
        ));
    }

    #[test]
    fn alignment_examples() {
        assert_eq!(alignment_classes(&fixtures::standard_grid()).unwrap().len(), 2);
        let glide = alignment_classes(&fixtures::glide()).unwrap();
        assert_eq!(glide, vec![vec![WallRef::new(0, 0)], vec![WallRef::new(0, 1)]]);
        assert!(matches!(
            alignment_classes(&fixtures::halfplane()),
            Err(FlatError::SemiCrossingPresent(..))
        ));
    }

    #[test]
    fn disjointness_examples() {
        let mut pw = fixtures::standard_grid();
        let r = WallRef::new(0, 0);
        assert_eq!(disjointness_index(&pw, r).unwrap(), 1);
        pw.classes[0].crossing[0][0] = CrossingInterval::Finite { lo: -1, hi: 1 };
        assert_eq!(disjointness_index(&pw, r).unwrap(), 2);
        pw.classes[0].crossing[0][0] = CrossingInterval::Finite { lo: -2, hi: 2 };
        assert_eq!(disjointness_index(&pw, r).unwrap(), 3);
    }
}
