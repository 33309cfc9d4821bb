//! Dense statevector construction for graph states and exact Pauli
//! expectation values, used to verify the stabilizer side numerically.

use crate::error::{Error, Result};
use crate::graph::GraphSpec;
use crate::pauli::PauliString;
use crate::stabilizer::StabilizerElement;
use num_complex::Complex64;

/// Largest qubit count for which a dense vector is built.
pub const MAX_DENSE_QUBITS: usize = 12;

/// Builds the graph state |G⟩: the uniform superposition with a phase
/// flip on every basis state whose bits are 11 across an edge.
pub fn build_state_vector(graph: &GraphSpec) -> Result<Vec<Complex64>> {
    let n = graph.n();
    if n > MAX_DENSE_QUBITS {
        return Err(Error::TooLarge {
            what: "dense statevector",
            value: n,
            limit: MAX_DENSE_QUBITS,
        });
    }
    let dim = 1usize << n;
    let amp = 1.0 / (dim as f64).sqrt();
    let mut state = vec![Complex64::new(amp, 0.0); dim];
    for &(a, b) in graph.edges() {
        let mask = (1usize << a) | (1usize << b);
        for (b_idx, v) in state.iter_mut().enumerate() {
            if b_idx & mask == mask {
                *v = -*v;
            }
        }
    }
    Ok(state)
}

/// ⟨state| P |state⟩ for an arbitrary Pauli string, applied sparsely:
/// the x mask permutes basis states, the z mask and Y letters contribute
/// phases. Returns the real part; the imaginary part vanishes for
/// Hermitian strings.
pub fn expectation_pauli(state: &[Complex64], p: &PauliString) -> Result<f64> {
    let dim = 1usize << p.n();
    if state.len() != dim {
        return Err(Error::DimensionMismatch {
            left: state.len(),
            right: dim,
        });
    }
    // P = i^t · X^x Z^z with t = phase_exp + (number of Y letters),
    // and X^x Z^z |b⟩ = (−1)^⟨z,b⟩ |b ⊕ x⟩.
    let t = (p.phase_exp() as u32 + (p.x_mask() & p.z_mask()).count_ones()) % 4;
    let x = p.x_mask() as usize;
    let z = p.z_mask() as usize;
    let mut sum = Complex64::new(0.0, 0.0);
    for (b, v) in state.iter().enumerate() {
        let parity = ((b & z).count_ones() & 1) as i32;
        let term = state[b ^ x].conj() * v;
        sum += if parity == 0 { term } else { -term };
    }
    let phase = match t {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    Ok((phase * sum).re)
}

/// Expectation of a stabilizer element (its stored phase included).
pub fn expectation(state: &[Complex64], s: &StabilizerElement) -> Result<f64> {
    expectation_pauli(state, &s.pauli)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog_lookup, CATALOG};
    use crate::stabilizer::StabilizerGroup;

    #[test]
    fn single_vertex_is_plus_state() {
        let g = GraphSpec::new(1, &[]).unwrap();
        let state = build_state_vector(&g).unwrap();
        let a = 1.0 / 2.0_f64.sqrt();
        assert!((state[0].re - a).abs() < 1e-15);
        assert!((state[1].re - a).abs() < 1e-15);
    }

    #[test]
    fn identity_expectation_is_one() {
        let g = catalog_lookup("ghz3").unwrap();
        let state = build_state_vector(&g).unwrap();
        let id = PauliString::identity(3);
        assert!((expectation_pauli(&state, &id).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn edge_graph_generator_expectation() {
        let g = GraphSpec::new(2, &[(0, 1)]).unwrap();
        let state = build_state_vector(&g).unwrap();
        let xz: PauliString = "XZ".parse().unwrap();
        assert!((expectation_pauli(&state, &xz).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ghz3_stabilizer_and_non_stabilizer() {
        let g = catalog_lookup("ghz3").unwrap();
        let state = build_state_vector(&g).unwrap();
        let group = StabilizerGroup::from_graph(&g).unwrap();
        // −X₁Y₂Y₃ is the mask-7 element; bare X₁ is not in the group.
        let e = group.element(0b111);
        assert!((expectation(&state, e).unwrap() - 1.0).abs() < 1e-12);
        let x1: PauliString = "XII".parse().unwrap();
        assert!(expectation_pauli(&state, &x1).unwrap().abs() < 1e-12);
    }

    #[test]
    fn perfect_correlations_for_every_catalog_graph() {
        for entry in CATALOG {
            let graph = entry.graph();
            let state = build_state_vector(&graph).unwrap();
            let group = StabilizerGroup::from_graph(&graph).unwrap();
            for e in group.elements() {
                let v = expectation(&state, e).unwrap();
                assert!(
                    (v - 1.0).abs() < 1e-12,
                    "{}: mask {} gave {v}",
                    entry.name,
                    e.index_set
                );
            }
        }
    }

    #[test]
    fn rejects_oversized_graphs() {
        let edges: Vec<_> = (0..13).map(|i| (i, (i + 1) % 14)).collect();
        let g = GraphSpec::new(14, &edges).unwrap();
        assert!(matches!(
            build_state_vector(&g),
            Err(Error::TooLarge { .. })
        ));
    }
}
