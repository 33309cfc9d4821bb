//! Graph-state stabilizer generators, the full 2^n-element group, and
//! orbits of group elements under graph automorphisms.

use crate::error::{Error, Result};
use crate::graph::{Automorphism, GraphSpec};
use crate::pauli::PauliString;

/// A product of generators, indexed by the generator subset that forms it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerElement {
    /// Generator subset mask; bit i selects the generator of vertex i.
    pub index_set: u32,
    pub pauli: PauliString,
    /// ±1; always the Hermitian sign of `pauli`.
    pub sign: i8,
}

/// The generators g_i = X_i ⊗ (Z on each neighbor of i).
pub fn generators_from_graph(graph: &GraphSpec) -> Vec<StabilizerElement> {
    (0..graph.n())
        .map(|i| {
            let pauli = PauliString::from_masks(graph.n(), 1 << i, graph.neighbors(i), 0);
            StabilizerElement {
                index_set: 1 << i,
                pauli,
                sign: 1,
            }
        })
        .collect()
}

/// All 2^n products of the generators, ordered by index mask; signs exact.
pub fn stabilizer_group(generators: &[StabilizerElement]) -> Result<Vec<StabilizerElement>> {
    let n = generators.len();
    assert!(n >= 1 && n <= 16);
    for (i, a) in generators.iter().enumerate() {
        for b in &generators[i + 1..] {
            if !a.pauli.commutes(&b.pauli)? {
                return Err(Error::NonCommutingGenerators);
            }
        }
    }
    let size = 1usize << n;
    let mut elements = Vec::with_capacity(size);
    elements.push(StabilizerElement {
        index_set: 0,
        pauli: PauliString::identity(generators[0].pauli.n()),
        sign: 1,
    });
    for mask in 1..size as u32 {
        let low = mask.trailing_zeros() as usize;
        let rest = &elements[(mask & (mask - 1)) as usize];
        let pauli = generators[low].pauli.multiply(&rest.pauli)?;
        let sign = pauli.hermitian_sign()?;
        elements.push(StabilizerElement {
            index_set: mask,
            pauli,
            sign,
        });
    }
    Ok(elements)
}

/// A graph, its generators, and the full stabilizer group, built once and
/// shared read-only by search workers.
#[derive(Debug, Clone)]
pub struct StabilizerGroup {
    graph: GraphSpec,
    generators: Vec<StabilizerElement>,
    elements: Vec<StabilizerElement>,
}

impl StabilizerGroup {
    pub fn from_graph(graph: &GraphSpec) -> Result<Self> {
        let generators = generators_from_graph(graph);
        let elements = stabilizer_group(&generators)?;
        Ok(StabilizerGroup {
            graph: graph.clone(),
            generators,
            elements,
        })
    }

    pub fn graph(&self) -> &GraphSpec {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn generators(&self) -> &[StabilizerElement] {
        &self.generators
    }

    /// All 2^n elements, indexed by generator-subset mask.
    pub fn elements(&self) -> &[StabilizerElement] {
        &self.elements
    }

    pub fn element(&self, index_set: u32) -> &StabilizerElement {
        &self.elements[index_set as usize]
    }

    /// The 2^n − 1 non-identity elements.
    pub fn non_identity(&self) -> impl Iterator<Item = &StabilizerElement> {
        self.elements.iter().skip(1)
    }
}

/// Partitions the non-identity index masks 1..2^n−1 into orbits under the
/// automorphism action I ↦ π(I). Orbits are sorted internally and listed
/// by their smallest member.
pub fn orbits(autos: &[Automorphism], n: usize) -> Vec<Vec<u32>> {
    let total = (1u32 << n) - 1;
    let mut seen = vec![false; (total + 1) as usize];
    let mut out = Vec::new();
    for mask in 1..=total {
        if seen[mask as usize] {
            continue;
        }
        let mut orbit: Vec<u32> = autos.iter().map(|a| a.apply_mask(mask)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &m in &orbit {
            seen[m as usize] = true;
        }
        out.push(orbit);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_lookup;

    fn group(name: &str) -> StabilizerGroup {
        StabilizerGroup::from_graph(&catalog_lookup(name).unwrap()).unwrap()
    }

    #[test]
    fn ghz3_generators() {
        let gens = generators_from_graph(&catalog_lookup("ghz3").unwrap());
        let strings: Vec<String> = gens.iter().map(|g| g.pauli.to_string()).collect();
        assert_eq!(strings, ["+XZZ", "+ZXI", "+ZIX"]);
        assert!(gens.iter().all(|g| g.sign == 1));
    }

    #[test]
    fn path_generator_has_two_z_neighbors() {
        let g = catalog_lookup("lc4").unwrap();
        let gens = generators_from_graph(&g);
        assert_eq!(gens[1].pauli.to_string(), "+ZXZI");
    }

    #[test]
    fn edge_graph_generators() {
        let g = GraphSpec::new(2, &[(0, 1)]).unwrap();
        let gens = generators_from_graph(&g);
        assert_eq!(gens[0].pauli.to_string(), "+XZ");
        assert_eq!(gens[1].pauli.to_string(), "+ZX");
    }

    #[test]
    fn ghz3_group_signs() {
        let g = group("ghz3");
        assert_eq!(g.elements().len(), 8);
        assert_eq!(g.element(0).sign, 1);
        assert!(g.element(0).pauli.is_identity());
        // s_{1,2,3} = −X₁Y₂Y₃
        let full = g.element(0b111);
        assert_eq!(full.pauli.to_string(), "-XYY");
        assert_eq!(full.sign, -1);
    }

    #[test]
    fn lc4_element_23() {
        let g = group("lc4");
        let e = g.element(0b0110);
        assert_eq!(e.pauli.to_string(), "+ZYYZ");
        assert_eq!(e.sign, 1);
    }

    #[test]
    fn group_closure_with_signs() {
        // multiply(s_I, s_J) = s_{I⊕J} exactly, phases included.
        for name in ["ghz3", "ghz4", "lc4", "rc5"] {
            let g = group(name);
            let size = g.elements().len() as u32;
            for i in 0..size {
                for j in 0..size {
                    let prod = g.element(i).pauli.multiply(&g.element(j).pauli).unwrap();
                    assert_eq!(prod, g.element(i ^ j).pauli, "{name}: {i} * {j}");
                }
            }
        }
    }

    #[test]
    fn elements_are_hermitian() {
        let g = group("rc6");
        for e in g.elements() {
            assert_eq!(e.pauli.phase_exp() % 2, 0);
            assert_eq!(e.sign, e.pauli.hermitian_sign().unwrap());
        }
    }

    #[test]
    fn ghz3_orbits() {
        let graph = catalog_lookup("ghz3").unwrap();
        let autos = graph.automorphisms().unwrap();
        let parts = orbits(&autos, 3);
        // {1} and {1,2,3} are fixed points; {2},{3} pair up.
        assert!(parts.contains(&vec![0b001]));
        assert!(parts.contains(&vec![0b111]));
        assert!(parts.contains(&vec![0b010, 0b100]));
    }

    #[test]
    fn lc4_endpoint_generators_share_an_orbit() {
        let graph = catalog_lookup("lc4").unwrap();
        let autos = graph.automorphisms().unwrap();
        let parts = orbits(&autos, 4);
        assert!(parts.contains(&vec![0b0001, 0b1000]));
    }

    #[test]
    fn orbits_cover_non_identity_masks() {
        for name in ["ghz4", "rc5", "h6", "no10"] {
            let graph = catalog_lookup(name).unwrap();
            let autos = graph.automorphisms().unwrap();
            let parts = orbits(&autos, graph.n());
            let count: usize = parts.iter().map(|o| o.len()).sum();
            assert_eq!(count, (1 << graph.n()) - 1, "{name}");
            let mut all: Vec<u32> = parts.into_iter().flatten().collect();
            all.sort_unstable();
            all.dedup();
            assert_eq!(all.len(), (1 << graph.n()) - 1);
        }
    }
}
