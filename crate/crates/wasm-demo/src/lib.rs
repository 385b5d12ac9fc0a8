//! Browser demo: grid thickenings, the halfplane push-off and the
//! commensurability obstruction. Each export returns a JSON string.

use cubeflat::fixtures;
use cubeflat::flat::{pushoff, WallRef, WindowHull};
use cubeflat::lattice::{tubular_obstruction, IntersectionData, TubularPresentation};
use cubeflat::median::{CubeComplex, VertexSet};
use serde::Serialize;
use wasm_bindgen::prelude::*;

const MAX_GRID_SIDE: usize = 40;
const MAX_WINDOW: i64 = 12;

#[derive(Serialize)]
struct GridView {
    m: usize,
    n: usize,
    set: Vec<usize>,
    hull: Vec<usize>,
    thickened: Vec<usize>,
    realized: usize,
}

/// Hull and `r`-thickening of vertex set `cells` (vertex `(x, y)` is `x * n + y`)
/// in the `m × n` grid.
pub fn grid_view(m: usize, n: usize, cells: &[usize], r: usize) -> Result<String, String> {
    if !(1..=MAX_GRID_SIDE).contains(&m) || !(1..=MAX_GRID_SIDE).contains(&n) {
        return Err(format!("grid sides must lie in 1..={MAX_GRID_SIDE}"));
    }
    let g = CubeComplex::grid(m, n);
    let set = VertexSet::from_vertices(g.vertex_count(), cells.iter().copied()).map_err(|e| e.to_string())?;
    let hull = g.hull(&set).map_err(|e| e.to_string())?;
    let t = g.thicken(&hull, r).map_err(|e| e.to_string())?;
    let view = GridView {
        m,
        n,
        set: set.to_vec(),
        hull: hull.to_vec(),
        thickened: t.set.to_vec(),
        realized: t.realized,
    };
    Ok(serde_json::to_string(&view).expect("view serializes"))
}

#[derive(Serialize)]
struct StaircaseView {
    n: i64,
    k: i64,
    /// Per domain vertex: right-side wall counts of the two orbit families.
    domain: Vec<(usize, usize)>,
    codomain: Vec<(usize, usize)>,
    map: Vec<usize>,
    min_displacement: Option<usize>,
    shifts_checked: usize,
}

fn staircase(h: &WindowHull) -> Vec<(usize, usize)> {
    (0..h.vertex_count())
        .map(|v| {
            let o = h.orientation(v);
            let count = |rep| h.walls.iter().enumerate().filter(|(i, w)| w.rep == rep && o.get(*i)).count();
            (count(0), count(1))
        })
        .collect()
}

/// Push-off of the upper orbit of the cubical halfplane by `k` at window `n`.
pub fn halfplane_pushoff(n: i64, k: i64) -> Result<String, String> {
    if n > MAX_WINDOW {
        return Err(format!("window must be at most {MAX_WINDOW}"));
    }
    let p = pushoff(&fixtures::halfplane(), &[WallRef::new(0, 0)], k, n).map_err(|e| e.to_string())?;
    let view = StaircaseView {
        n,
        k,
        domain: staircase(&p.domain),
        codomain: staircase(&p.codomain),
        map: p.map.clone(),
        min_displacement: p.audit.min_displacement,
        shifts_checked: p.audit.shifts_checked,
    };
    Ok(serde_json::to_string(&view).expect("view serializes"))
}

/// Obstruction report for intersection data (JSON) or a presentation (text).
pub fn obstruction_report(text: &str) -> Result<String, String> {
    let report = if text.trim_start().starts_with('{') {
        let data: IntersectionData = serde_json::from_str(text).map_err(|e| e.to_string())?;
        data.obstruction().map_err(|e| e.to_string())?
    } else {
        let t = TubularPresentation::parse(text).map_err(|e| e.to_string())?;
        tubular_obstruction(&t).map_err(|e| e.to_string())?
    };
    Ok(serde_json::to_string(&report).expect("report serializes"))
}

#[wasm_bindgen(js_name = gridView)]
pub fn grid_view_js(m: usize, n: usize, cells: Vec<usize>, r: usize) -> Result<String, JsError> {
    grid_view(m, n, &cells, r).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = halfplanePushoff)]
pub fn halfplane_pushoff_js(n: i32, k: i32) -> Result<String, JsError> {
    halfplane_pushoff(n as i64, k as i64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = obstructionReport)]
pub fn obstruction_report_js(text: &str) -> Result<String, JsError> {
    obstruction_report(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = exampleInputs)]
pub fn example_inputs() -> String {
    serde_json::json!({
        "three_directions": fixtures::THREE_DIRECTIONS_JSON,
        "generic": fixtures::GENERIC_TXT,
    })
    .to_string()
}
