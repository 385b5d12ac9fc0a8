//! Shipped example data.

use crate::flat::PeriodicWallspace;
use crate::lattice::{IntersectionData, TubularPresentation};
use crate::sageev::{Wallspace, WallspaceJson};

pub const STANDARD_GRID_JSON: &str = include_str!("../../../fixtures/standard-grid.json");
pub const HALFPLANE_JSON: &str = include_str!("../../../fixtures/halfplane.json");
pub const GLIDE_JSON: &str = include_str!("../../../fixtures/glide.json");
pub const THREE_DIRECTIONS_JSON: &str = include_str!("../../../fixtures/three-directions.json");
pub const GENERIC_TXT: &str = include_str!("../../../fixtures/generic.txt");
pub const TWO_CROSSING_WALLS_JSON: &str = include_str!("../../../fixtures/two-crossing-walls.json");

/// Lines `x = 1/2 + t` and `y = 1/2 + t` in the plane: the square tiling.
pub fn standard_grid() -> PeriodicWallspace {
    PeriodicWallspace::parse(STANDARD_GRID_JSON).expect("standard grid fixture")
}

/// A cubical halfplane over a line: two orbits of points on the line whose
/// translates cross from a threshold on.
pub fn halfplane() -> PeriodicWallspace {
    PeriodicWallspace::parse(HALFPLANE_JSON).expect("halfplane fixture")
}

/// A glide reflection of the plane acting on the square tiling, seen on its
/// axis: two orbits of walls, every pair of which crosses.
pub fn glide() -> PeriodicWallspace {
    PeriodicWallspace::parse(GLIDE_JSON).expect("glide fixture")
}

/// Three pairwise non-commensurable cyclic subgroups of `Z^2`.
pub fn three_directions() -> IntersectionData {
    serde_json::from_str(THREE_DIRECTIONS_JSON).expect("intersection fixture")
}

/// `Z^3` with two stable letters and four distinct edge directions.
pub fn generic() -> TubularPresentation {
    TubularPresentation::parse(GENERIC_TXT).expect("presentation fixture")
}

/// Four points cut by two crossing walls.
pub fn two_crossing_walls() -> Wallspace {
    let j: WallspaceJson = serde_json::from_str(TWO_CROSSING_WALLS_JSON).expect("wallspace fixture");
    Wallspace::from_json(&j).expect("wallspace fixture")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load() {
        assert_eq!(standard_grid().classes.len(), 2);
        assert_eq!(halfplane().classes[0].reps.len(), 2);
        assert_eq!(glide().rank, 1);
        assert_eq!(three_directions().intersections.len(), 3);
        assert_eq!(generic().edges.len(), 2);
        assert_eq!(two_crossing_walls().dual().unwrap().complex.vertex_count(), 4);
    }
}
