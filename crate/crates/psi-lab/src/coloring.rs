//! Surjective vertex colorings and the pseudocompleteness predicate.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A total, surjective assignment of the vertices `0..n` to the colors
/// `1..=num_colors`. Not necessarily proper: adjacent vertices may share a
/// color.
#[derive(Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u32>,
    num_colors: u32,
}

impl Serialize for Coloring {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Coloring", 3)?;
        s.serialize_field("num_colors", &self.num_colors)?;
        s.serialize_field("colors", &self.colors)?;
        s.serialize_field("text", &self.as_text())?;
        s.end()
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coloring({}: {})", self.num_colors, self.as_text())
    }
}

impl Coloring {
    /// Builds a coloring from per-vertex colors, inferring `num_colors` as
    /// the maximum. Fails unless the colors are exactly `1..=max` with every
    /// value present.
    pub fn new(colors: Vec<u32>) -> Result<Self> {
        let num_colors = colors.iter().copied().max().unwrap_or(0);
        Self::with_num_colors(colors, num_colors)
    }

    /// As [`Coloring::new`] but with an explicit color count to check
    /// surjectivity against.
    pub fn with_num_colors(colors: Vec<u32>, num_colors: u32) -> Result<Self> {
        let mut seen = vec![false; num_colors as usize + 1];
        for (v, &c) in colors.iter().enumerate() {
            if c == 0 || c > num_colors {
                return Err(Error::Contract(format!(
                    "vertex {v} has color {c}, outside 1..={num_colors}"
                )));
            }
            seen[c as usize] = true;
        }
        if let Some(missing) = (1..=num_colors as usize).find(|&c| !seen[c]) {
            return Err(Error::Contract(format!(
                "coloring is not surjective: color {missing} unused"
            )));
        }
        Ok(Coloring { colors, num_colors })
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Vertices carrying color `c`.
    pub fn class(&self, c: u32) -> VertexSet {
        self.colors
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x == c)
            .map(|(v, _)| v)
            .collect()
    }

    /// Space-separated colors in vertex order.
    pub fn as_text(&self) -> String {
        self.colors
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn check_on(&self, g: &Graph) -> Result<()> {
        if self.colors.len() != g.n() {
            return Err(Error::Contract(format!(
                "coloring covers {} vertices but the graph has {}",
                self.colors.len(),
                g.n()
            )));
        }
        Ok(())
    }
}

/// Outcome of the pseudocompleteness test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PseudoCheck {
    Complete,
    /// The lexicographically first unordered color pair no edge realizes.
    MissingPair(u32, u32),
}

impl PseudoCheck {
    pub fn is_complete(self) -> bool {
        matches!(self, PseudoCheck::Complete)
    }
}

/// Tests whether `c` is pseudocomplete on `g`: every unordered pair of
/// distinct colors must appear on the endpoints of some edge. The coloring
/// must be total and surjective (enforced by `Coloring` construction, with
/// the vertex count re-checked here).
pub fn is_pseudocomplete(g: &Graph, c: &Coloring) -> Result<PseudoCheck> {
    c.check_on(g)?;
    let t = c.num_colors() as usize;
    let mut covered = vec![false; t * t];
    for (u, v) in g.edges() {
        let (a, b) = (c.color(u) as usize - 1, c.color(v) as usize - 1);
        covered[a * t + b] = true;
        covered[b * t + a] = true;
    }
    for i in 0..t {
        for j in i + 1..t {
            if !covered[i * t + j] {
                return Ok(PseudoCheck::MissingPair(i as u32 + 1, j as u32 + 1));
            }
        }
    }
    Ok(PseudoCheck::Complete)
}

/// How often each color is used: `counts[k] = n_k` is the number of colors
/// used exactly `k` times, and `clique_colors` lists the once-used colors
/// (whose vertices always induce a clique in a pseudocomplete coloring).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityProfile {
    pub counts: Vec<(usize, usize)>,
    pub clique_colors: Vec<u32>,
}

impl MultiplicityProfile {
    /// `n_k`, i.e. how many colors are used exactly `k` times.
    pub fn n_k(&self, k: usize) -> usize {
        self.counts
            .iter()
            .find(|&&(kk, _)| kk == k)
            .map_or(0, |&(_, n)| n)
    }

    pub fn max_multiplicity(&self) -> usize {
        self.counts.iter().map(|&(k, _)| k).max().unwrap_or(0)
    }
}

/// Computes the multiplicity profile of `c` on `g`.
pub fn multiplicity_profile(g: &Graph, c: &Coloring) -> Result<MultiplicityProfile> {
    c.check_on(g)?;
    let t = c.num_colors() as usize;
    let mut usage = vec![0usize; t + 1];
    for v in 0..g.n() {
        usage[c.color(v) as usize] += 1;
    }
    let max_mult = usage[1..].iter().copied().max().unwrap_or(0);
    let mut counts = Vec::new();
    for k in 1..=max_mult {
        let n_k = usage[1..].iter().filter(|&&u| u == k).count();
        if n_k > 0 {
            counts.push((k, n_k));
        }
    }
    let clique_colors = (1..=t as u32).filter(|&c| usage[c as usize] == 1).collect();
    let profile = MultiplicityProfile { counts, clique_colors };
    debug_assert_eq!(
        profile.counts.iter().map(|&(k, n)| k * n).sum::<usize>(),
        g.n()
    );
    debug_assert_eq!(
        profile.counts.iter().map(|&(_, n)| n).sum::<usize>(),
        t
    );
    Ok(profile)
}
