//! The published Bell operators for the catalog states, expanded into
//! term masks over this crate's generator numbering (bit i−1 ⇔ g_i).
//!
//! These are reference data: each operator is re-derived at test and
//! verify time (exact classical bound, statevector value, settings), so
//! transcription errors cannot survive. The `no16` row is stored but not
//! bound-checked; its printed expansion is internally inconsistent with
//! the printed bound.

use crate::error::Result;
use crate::lhv::BellOperator;
use crate::stabilizer::StabilizerGroup;
use std::sync::Arc;

/// One published inequality: name, claimed (q, bound), printed settings
/// (first listed variant), and the expanded term masks.
#[derive(Debug, Clone)]
pub struct PublishedInequality {
    pub name: &'static str,
    pub q: u32,
    pub bound: u32,
    pub printed_settings: &'static [u8],
    /// Whether (q, bound) are internally consistent as printed.
    pub consistent: bool,
    pub masks: Vec<u32>,
}

/// XOR-combines a core mask with every subset of `free` factor masks.
fn product_terms(core: u32, free: &[u32]) -> Vec<u32> {
    let mut out = vec![core];
    for &f in free {
        let prior: Vec<u32> = out.clone();
        out.extend(prior.into_iter().map(|m| m ^ f));
    }
    out.sort_unstable();
    out
}

/// Cross-combines every pair from two mask families.
fn cross(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x ^ y);
        }
    }
    out
}

/// All published inequalities, one per catalog state.
pub fn published_inequalities() -> Vec<PublishedInequality> {
    let mut rows = Vec::new();
    let mut add = |name, q, bound, settings: &'static [u8], consistent, masks: Vec<u32>| {
        rows.push(PublishedInequality {
            name,
            q,
            bound,
            printed_settings: settings,
            consistent,
            masks,
        });
    };

    // g1(1+g2)(1+g3)
    add("ghz3", 4, 2, &[2, 2, 2], true, product_terms(1, &[2, 4]));
    // g1(1 + g2g3 + g2g4 + g3g4)
    add("ghz4", 4, 2, &[1, 2, 2, 2], true, vec![1, 7, 11, 13]);
    // (1+g1)g2(1+g3)
    add("lc4", 4, 2, &[2, 2, 2, 1], true, product_terms(2, &[1, 4]));
    // g1(1+g2)(1+g3)(1+g4)(1+g5)
    add(
        "ghz5",
        16,
        4,
        &[2, 2, 2, 2, 2],
        true,
        product_terms(1, &[2, 4, 8, 16]),
    );
    // g2[(1+g1+g5)(1+g3+g3g4) + (1+g1g5)g4] + (g1+g5)g3(1+g4)
    add(
        "y5",
        15,
        7,
        &[3, 3, 3, 3, 2],
        true,
        vec![2, 3, 5, 6, 7, 10, 13, 14, 15, 18, 20, 22, 27, 28, 30],
    );
    // (1+g1)[(1+g2)g3(1+g4) + g2g4](1+g5)
    add(
        "lc5",
        20,
        8,
        &[3, 3, 3, 3, 3],
        true,
        cross(&cross(&[4, 6, 12, 14, 10], &[0, 1]), &[0, 16]),
    );
    // γ + Σ g_i g_{i+1}, γ the sum of all odd-size generator products
    let mut rc5 = (1u32..32).filter(|m| m.count_ones() % 2 == 1).collect::<Vec<_>>();
    rc5.extend([3, 6, 12, 24, 17]);
    add("rc5", 21, 9, &[3, 3, 3, 3, 3], true, rc5);
    // g1(1 + Σ g_i g_j + Σ g_i g_j g_k g_l) over leaf pairs and quadruples
    let mut ghz6 = vec![1u32];
    let leaves = [2u32, 4, 8, 16, 32];
    for i in 0..5 {
        for j in i + 1..5 {
            ghz6.push(1 | leaves[i] | leaves[j]);
        }
    }
    for skip in 0..5 {
        let quad: u32 = leaves
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != skip)
            .map(|(_, &m)| m)
            .sum();
        ghz6.push(1 | quad);
    }
    add("ghz6", 16, 4, &[1, 2, 2, 2, 2, 2], true, ghz6);
    // (1+g1)(1+g2)(1+g3)(1+g5)g6
    add(
        "no10",
        16,
        4,
        &[2, 2, 2, 1, 2, 2],
        true,
        product_terms(32, &[1, 2, 4, 16]),
    );
    // g1(1+g2)(1+g3)(1+g4)(1+g5)g6
    add(
        "h6",
        16,
        4,
        &[1, 2, 3, 3, 3, 2],
        true,
        product_terms(33, &[2, 4, 8, 16]),
    );
    // (1+g1)g2(1+g3)g4(1+g5)(1+g6)
    add(
        "y6",
        16,
        4,
        &[2, 2, 1, 2, 2, 2],
        true,
        product_terms(10, &[1, 4, 16, 32]),
    );
    // (1+g3+g3g6)[(1+g1)g2 + g4(1+g5) + (1+g1)g2g4(1+g5)]
    add(
        "e6",
        24,
        8,
        &[2, 3, 3, 3, 2, 2],
        true,
        cross(&[0, 4, 36], &[2, 3, 8, 24, 10, 11, 26, 27]),
    );
    // (1+g1)g2(1+g3)(1+g4)g5(1+g6)
    add(
        "lc6",
        16,
        4,
        &[2, 2, 3, 3, 2, 2],
        true,
        product_terms(18, &[1, 4, 8, 32]),
    );
    // (g3+g5)(1+g1)(1+g2)(1+g4)(1+g6) + (1+g3g5)(g4+g2g4+g6+g1g6)
    let mut no15 = cross(&[4, 16], &product_terms(0, &[1, 2, 8, 32]));
    no15.extend(cross(&[0, 20], &[8, 10, 32, 33]));
    add("no15", 40, 16, &[3, 3, 3, 3, 3, 3], true, no15);
    // g3(1+g1+g2+g1g2+g4+g5+g4g5)(1+g6) + (1+g1)g2(1+g5+g6)
    // + g4(1+g5)(1+g1+g6) + (1+g1)g2g4(1+g5): 30 terms as printed, which
    // cannot reach the printed bound 12 at D=3.
    let mut no16 = cross(&cross(&[4], &[0, 1, 2, 3, 8, 16, 24]), &[0, 32]);
    no16.extend(cross(&cross(&[0, 1], &[2]), &[0, 16, 32]));
    no16.extend(cross(&cross(&[8], &[0, 16]), &[0, 1, 32]));
    no16.extend(cross(&cross(&[0, 1], &[10]), &[0, 16]));
    add("no16", 30, 12, &[3, 3, 3, 3, 3, 3], false, no16);
    // [g1(1+g2g5)(g3+g4) + (1+g1)(g2+g5)(1+g3g4)](1+g6)
    let mut no17_inner = cross(&cross(&[1], &[0, 18]), &[4, 8]);
    no17_inner.extend(cross(&cross(&[0, 1], &[2, 16]), &[0, 12]));
    add(
        "no17",
        24,
        8,
        &[3, 3, 3, 3, 3, 3],
        true,
        cross(&no17_inner, &[0, 32]),
    );
    // Σ s_i − 1 − Σ g_i − g1g3g5 − g2g4g6
    let excluded = [1u32, 2, 4, 8, 16, 32, 21, 42];
    let rc6 = (1u32..64).filter(|m| !excluded.contains(m)).collect();
    add("rc6", 55, 19, &[3, 3, 3, 3, 3, 3], true, rc6);
    // g1g4 + g3g6 + g1g3g4g6 + g2(g4+g6+g4g6) + g5(g1+g3+g1g3)
    // + (g2+g5)(g3g4+g1g6+g1g3g4g6) + g2g5[g1g4(1+g3+g6)+g3g6(1+g1+g4)]
    let mut no19 = vec![9u32, 36, 45, 10, 34, 42, 17, 20, 21];
    no19.extend(cross(&[2, 16], &[12, 33, 45]));
    no19.extend(cross(&[18], &[9, 13, 41, 36, 37, 44]));
    add("no19", 21, 9, &[3, 3, 3, 3, 3, 3], true, no19);

    rows
}

pub fn published_inequality(name: &str) -> Option<PublishedInequality> {
    published_inequalities()
        .into_iter()
        .find(|r| r.name.eq_ignore_ascii_case(name))
}

/// Builds the published operator on the named catalog graph.
pub fn published_operator(row: &PublishedInequality) -> Result<BellOperator> {
    let graph = crate::catalog::catalog_lookup(row.name)?;
    let group = Arc::new(StabilizerGroup::from_graph(&graph)?);
    BellOperator::new(group, row.masks.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lhv::classical_bound;
    use crate::metrics::settings_signature;
    use crate::search::verify_quantum_value;

    #[test]
    fn term_counts_match_q() {
        for row in published_inequalities() {
            let op = published_operator(&row).unwrap();
            assert_eq!(op.q() as u32, row.q, "{}", row.name);
        }
    }

    #[test]
    fn quantum_values_equal_term_counts() {
        for row in published_inequalities() {
            let op = published_operator(&row).unwrap();
            let v = verify_quantum_value(&op).unwrap();
            assert!((v - row.q as f64).abs() < 1e-9, "{}", row.name);
        }
    }

    #[test]
    fn consistent_rows_reproduce_printed_bounds() {
        for row in published_inequalities() {
            if !row.consistent {
                continue;
            }
            let op = published_operator(&row).unwrap();
            let cb = classical_bound(&op).unwrap();
            assert_eq!(cb.bound, row.bound as i64, "{}", row.name);
        }
    }

    #[test]
    fn h6_published_settings() {
        let row = published_inequality("h6").unwrap();
        let op = published_operator(&row).unwrap();
        assert_eq!(settings_signature(&op), vec![1, 2, 3, 3, 3, 2]);
    }

    #[test]
    fn ghz3_published_settings() {
        let row = published_inequality("ghz3").unwrap();
        let op = published_operator(&row).unwrap();
        assert_eq!(settings_signature(&op), vec![2, 2, 2]);
    }
}
