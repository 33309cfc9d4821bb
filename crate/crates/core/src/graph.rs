//! Simple graphs on up to 16 vertices and their automorphisms.
//!
//! Vertices are 0-based internally; the text file format and all rendered
//! output use 1-based labels.

use crate::error::{Error, Result};
use crate::pauli::MAX_QUBITS;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::Path;

/// An undirected simple graph; the single source of truth for a graph state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    n: usize,
    /// Edges as (i, j) with i < j, sorted, 0-based.
    edges: Vec<(usize, usize)>,
    name: Option<String>,
}

impl GraphSpec {
    /// Builds a graph from 0-based vertex pairs.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n < 1 || n > MAX_QUBITS {
            return Err(Error::InvalidGraph(format!(
                "vertex count {n} outside 1..={MAX_QUBITS}"
            )));
        }
        let mut norm = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) references a vertex beyond {n}",
                    a + 1,
                    b + 1
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {}", a + 1)));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        let before = norm.len();
        norm.dedup();
        if norm.len() != before {
            return Err(Error::InvalidGraph("duplicate edge".into()));
        }
        Ok(GraphSpec {
            n,
            edges: norm,
            name: None,
        })
    }

    /// Same as [`GraphSpec::new`] but with 1-based vertex pairs.
    pub fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        for &(a, b) in edges {
            if a == 0 || b == 0 {
                return Err(Error::InvalidGraph("vertex labels start at 1".into()));
            }
        }
        let shifted: Vec<_> = edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
        GraphSpec::new(n, &shifted)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Neighbor mask of vertex `v`.
    pub fn neighbors(&self, v: usize) -> u16 {
        let mut mask = 0u16;
        for &(a, b) in &self.edges {
            if a == v {
                mask |= 1 << b;
            } else if b == v {
                mask |= 1 << a;
            }
        }
        mask
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = 1u32;
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            let mut nb = self.neighbors(v);
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if seen & (1 << w) == 0 {
                    seen |= 1 << w;
                    stack.push(w);
                }
            }
        }
        seen.count_ones() as usize == self.n
    }

    /// Parses the graph file format: a line `n <count>`, then `e <i> <j>`
    /// lines with 1-based vertices; `#` comments and blank lines ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let tag = it.next().unwrap();
            let fields: Vec<&str> = it.collect();
            let bad = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
            match tag {
                "n" => {
                    if n.is_some() {
                        return Err(bad("repeated vertex-count line"));
                    }
                    let [v] = fields[..] else {
                        return Err(bad("expected `n <count>`"));
                    };
                    n = Some(v.parse().map_err(|_| bad("bad vertex count"))?);
                }
                "e" => {
                    let [a, b] = fields[..] else {
                        return Err(bad("expected `e <i> <j>`"));
                    };
                    let a: usize = a.parse().map_err(|_| bad("bad vertex"))?;
                    let b: usize = b.parse().map_err(|_| bad("bad vertex"))?;
                    if a == 0 || b == 0 {
                        return Err(bad("vertices are 1-based"));
                    }
                    edges.push((a - 1, b - 1));
                }
                _ => return Err(bad("unknown line tag")),
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing `n <count>` line".into()))?;
        GraphSpec::new(n, &edges)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(&path)?;
        let stem = path
            .as_ref()
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned());
        let g = GraphSpec::parse(&text)?;
        Ok(match stem {
            Some(s) => g.with_name(s),
            None => g,
        })
    }

    /// All vertex permutations mapping the edge set onto itself, in
    /// lexicographic order; always starts with the identity.
    pub fn automorphisms(&self) -> Result<Vec<Automorphism>> {
        const MAX_BRUTE: usize = 8;
        if self.n > MAX_BRUTE {
            return Err(Error::TooLarge {
                what: "automorphism brute force",
                value: self.n,
                limit: MAX_BRUTE,
            });
        }
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..self.n).collect();
        self.collect_autos(&mut perm, 0, &mut out);
        out.sort_by(|a, b| a.perm.cmp(&b.perm));
        Ok(out)
    }

    fn collect_autos(&self, perm: &mut Vec<usize>, k: usize, out: &mut Vec<Automorphism>) {
        if k == self.n {
            if self
                .edges
                .iter()
                .all(|&(a, b)| self.has_edge(perm[a], perm[b]))
            {
                out.push(Automorphism { perm: perm.clone() });
            }
            return;
        }
        for i in k..self.n {
            perm.swap(k, i);
            self.collect_autos(perm, k + 1, out);
            perm.swap(k, i);
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            write!(f, "{name}: ")?;
        }
        write!(f, "n={}", self.n)?;
        for &(a, b) in &self.edges {
            write!(f, " {}-{}", a + 1, b + 1)?;
        }
        Ok(())
    }
}

/// A graph automorphism: a vertex bijection preserving the edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    perm: Vec<usize>,
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Automorphism {
            perm: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn image(&self, v: usize) -> usize {
        self.perm[v]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Relabels a vertex-subset mask: bit i maps to bit perm[i].
    pub fn apply_mask(&self, mask: u32) -> u32 {
        let mut out = 0u32;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= 1 << self.perm[i];
        }
        out
    }

    pub fn compose(&self, then: &Automorphism) -> Automorphism {
        Automorphism {
            perm: self.perm.iter().map(|&v| then.perm[v]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &v)| i == v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(n: usize) -> GraphSpec {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        GraphSpec::new(n, &edges).unwrap()
    }

    fn path(n: usize) -> GraphSpec {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        GraphSpec::new(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> GraphSpec {
        let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n - 1));
        GraphSpec::new(n, &edges).unwrap()
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(GraphSpec::new(3, &[(0, 0)]).is_err());
        assert!(GraphSpec::new(3, &[(0, 3)]).is_err());
        assert!(GraphSpec::new(3, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn parse_round_trip() {
        let text = "# a path on four vertices\nn 4\ne 1 2\ne 2 3\n\ne 3 4 # trailing comment\n";
        let g = GraphSpec::parse(text).unwrap();
        assert_eq!(g, path(4));
    }

    #[test]
    fn parse_errors() {
        assert!(GraphSpec::parse("e 1 2\n").is_err());
        assert!(GraphSpec::parse("n 3\ne 0 1\n").is_err());
        assert!(GraphSpec::parse("n 3\nq 1 2\n").is_err());
    }

    #[test]
    fn ring5_automorphisms_are_dihedral() {
        let autos = cycle(5).automorphisms().unwrap();
        assert_eq!(autos.len(), 10);
        assert!(autos[0].is_identity());
    }

    #[test]
    fn star4_automorphisms_permute_leaves() {
        let autos = star(4).automorphisms().unwrap();
        assert_eq!(autos.len(), 6);
        assert!(autos.iter().all(|a| a.image(0) == 0));
    }

    #[test]
    fn path4_automorphisms_are_identity_and_reversal() {
        let autos = path(4).automorphisms().unwrap();
        assert_eq!(autos.len(), 2);
        assert_eq!(autos[1].perm(), &[3, 2, 1, 0]);
    }

    #[test]
    fn automorphisms_closed_under_composition() {
        let autos = cycle(6).automorphisms().unwrap();
        for a in &autos {
            for b in &autos {
                let c = a.compose(b);
                assert!(autos.contains(&c));
            }
        }
    }

    #[test]
    fn mask_relabeling() {
        let rev = Automorphism {
            perm: vec![3, 2, 1, 0],
        };
        assert_eq!(rev.apply_mask(0b0001), 0b1000);
        assert_eq!(rev.apply_mask(0b0011), 0b1100);
    }

    #[test]
    fn connectivity() {
        assert!(path(4).is_connected());
        assert!(!GraphSpec::new(4, &[(0, 1), (2, 3)]).unwrap().is_connected());
    }
}
