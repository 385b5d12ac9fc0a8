use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{CubeComplex, MedianError, ValidationConfig};

/// Edge colours for DOT export, indexed by hyperplane id modulo the length.
pub const DOT_PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Serialized form `{"vertices": N, "edges": [[u, v, hyperplaneId], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, u64)>,
}

impl ComplexJson {
    pub fn from_complex(c: &CubeComplex) -> Self {
        let ids = c.hyperplane_ids();
        ComplexJson {
            vertices: c.vertex_count(),
            edges: c.edges().iter().map(|&(u, v, h)| (u, v, ids[h])).collect(),
        }
    }

    pub fn to_complex(&self, config: &ValidationConfig) -> Result<CubeComplex, MedianError> {
        CubeComplex::from_edges(self.vertices, &self.edges, config)
    }
}

impl CubeComplex {
    pub fn to_json(&self) -> ComplexJson {
        ComplexJson::from_complex(self)
    }

    /// Undirected DOT graph; each edge is coloured by its hyperplane id.
    pub fn to_dot(&self) -> String {
        let ids = self.hyperplane_ids();
        let mut out = String::from("graph complex {\n  node [shape=circle, width=0.3, fontsize=10];\n");
        for v in 0..self.vertex_count() {
            let _ = writeln!(out, "  {v};");
        }
        for &(u, v, h) in self.edges() {
            let id = ids[h];
            let colour = DOT_PALETTE[(id % DOT_PALETTE.len() as u64) as usize];
            let _ = writeln!(out, "  {u} -- {v} [label=\"{id}\", color=\"{colour}\"];");
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::median::is_isomorphic;

    #[test]
    fn json_round_trip() {
        let g = CubeComplex::grid(3, 2);
        let text = serde_json::to_string(&g.to_json()).unwrap();
        assert!(text.starts_with("{\"vertices\":6,\"edges\":[["));
        let back: ComplexJson = serde_json::from_str(&text).unwrap();
        let h = back.to_complex(&ValidationConfig::default()).unwrap();
        assert!(is_isomorphic(&g, &h));
    }

    #[test]
    fn dot_colours_by_id() {
        let dot = CubeComplex::path(9).to_dot();
        assert!(dot.contains("8 -- 9 [label=\"8\", color=\"#1f77b4\"]"));
        assert!(dot.contains("0 -- 1 [label=\"0\", color=\"#1f77b4\"]"));
        assert!(dot.contains("1 -- 2 [label=\"1\", color=\"#d62728\"]"));
    }
}
