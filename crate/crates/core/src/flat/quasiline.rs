use super::window::{walls_cross, window_walls, Frame, WindowWall};
use super::{validate, FlatError, PeriodicWallspace, WallRef};

/// Orders the window walls of `orbits` by position and returns the largest
/// order distance between two crossing walls (0 if none cross).
pub fn quasiline_width(pw: &PeriodicWallspace, orbits: &[WallRef], n: i64) -> Result<usize, FlatError> {
    for &r in orbits {
        pw.class(r)?;
    }
    if n < 1 {
        return Err(FlatError::WindowTooSmall { n, min: 1 });
    }
    let frame = Frame::new(pw)?;
    let mut walls: Vec<WindowWall> = window_walls(pw, n, |r| orbits.contains(&r));
    walls.sort_by_key(|w| (frame.wall_position(w), w.class, w.rep, w.translate));
    let mut width = 0;
    for a in 0..walls.len() {
        for b in (a + width + 1)..walls.len() {
            if walls_cross(pw, &walls[a], &walls[b]) {
                width = b - a;
            }
        }
    }
    Ok(width)
}

/// Width of `orbits` at windows `n` and `2n`; a width that does not grow
/// certifies that the dual of the family is a quasiline.
pub fn quasiline_certificate(pw: &PeriodicWallspace, orbits: &[WallRef], n: i64) -> Result<usize, FlatError> {
    validate(pw)?;
    let w1 = quasiline_width(pw, orbits, n)?;
    let w2 = quasiline_width(pw, orbits, 2 * n)?;
    if w1 == w2 {
        Ok(w1)
    } else {
        Err(FlatError::QuasilineFailure {
            widths: vec![w1, w2],
            windows: vec![n, 2 * n],
        })
    }
}
