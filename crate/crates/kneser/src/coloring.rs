use std::fmt::Write as _;

use crate::error::{invalid, Result};
use crate::subset::VertexSet;

/// A total map from vertex index (canonical order) to a color in `1..=num_colors`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<u32>,
    num_colors: u32,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, num_colors: u32) -> Result<Self> {
        if let Some((i, c)) = colors
            .iter()
            .enumerate()
            .find(|(_, &c)| c == 0 || c > num_colors)
        {
            return invalid(format!("vertex {i} has color {c} outside [1, {num_colors}]"));
        }
        Ok(Self { colors, num_colors })
    }

    /// Takes `num_colors` to be the largest color present.
    pub fn from_colors(colors: Vec<u32>) -> Result<Self> {
        let m = colors.iter().copied().max().unwrap_or(1).max(1);
        Self::new(colors, m)
    }

    /// Every vertex gets color 1.
    pub fn uniform(len: usize) -> Self {
        Self { colors: vec![1; len], num_colors: 1 }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    pub fn color(&self, vertex: usize) -> u32 {
        self.colors[vertex]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.colors
    }

    /// Number of distinct colors that actually occur.
    pub fn colors_used(&self) -> u32 {
        let mut seen = vec![false; self.num_colors as usize + 1];
        for &c in &self.colors {
            seen[c as usize] = true;
        }
        seen.iter().filter(|&&b| b).count() as u32
    }

    /// Checks the coloring covers exactly the given vertex set.
    pub fn check_total(&self, vertices: &VertexSet) -> Result<()> {
        if self.colors.len() != vertices.len() {
            return invalid(format!(
                "coloring has {} entries but the hypergraph has {} vertices",
                self.colors.len(),
                vertices.len()
            ));
        }
        Ok(())
    }

    /// JSON array, index = vertex index.
    pub fn to_json(&self) -> String {
        let parts: Vec<String> = self.colors.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// One `<vertex elements> -> <color>` line per vertex.
    pub fn to_text(&self, vertices: &VertexSet) -> String {
        let mut out = String::new();
        for (v, c) in vertices.iter().zip(&self.colors) {
            let elems: Vec<String> = v.elements().map(|e| e.to_string()).collect();
            let _ = writeln!(out, "{} -> {c}", elems.join(" "));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_range() {
        assert!(Coloring::new(vec![1, 2, 3], 2).is_err());
        assert!(Coloring::new(vec![0, 1], 2).is_err());
        let c = Coloring::from_colors(vec![1, 3, 3]).unwrap();
        assert_eq!(c.num_colors(), 3);
        assert_eq!(c.colors_used(), 2);
    }

    #[test]
    fn serializations() {
        let v = VertexSet::new(3, 2).unwrap();
        let c = Coloring::new(vec![1, 2, 1], 2).unwrap();
        assert_eq!(c.to_json(), "[1,2,1]");
        assert_eq!(c.to_text(&v), "1 2 -> 1\n1 3 -> 2\n2 3 -> 1\n");
        assert!(c.check_total(&v).is_ok());
        assert!(Coloring::uniform(2).check_total(&v).is_err());
    }
}
