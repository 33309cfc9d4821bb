// Scratch check: brute-force p over all 2^15 assignments for a suspect subset.
use mermin_core::lhv::{term_value, Assignment, BellOperator};
use mermin_core::pauli::Letter;
use mermin_core::stabilizer::StabilizerGroup;
use mermin_core::catalog_lookup;
use std::sync::Arc;

fn main() {
    let graph = catalog_lookup("y5").unwrap();
    let group = Arc::new(StabilizerGroup::from_graph(&graph).unwrap());
    let masks = vec![4u32, 5, 6, 7, 12, 13, 14, 15, 22, 23, 30, 31];
    let op = BellOperator::new(group.clone(), masks).unwrap();
    for t in op.terms() {
        println!("mask {:>2}: {}", t.index_set, t.pauli);
    }
    let n = 5;
    let letters = [Letter::X, Letter::Y, Letter::Z];
    let mut best = 0u32;
    for raw in 0u32..(1 << (3 * n)) {
        let mut a = Assignment::new(n);
        for q in 0..n {
            for (r, &l) in letters.iter().enumerate() {
                a.set(q, l, if raw >> (3 * q + r) & 1 == 1 { -1 } else { 1 });
            }
        }
        let count = op
            .terms()
            .map(|t| (term_value(&a, t).unwrap() == 1) as u32)
            .sum::<u32>();
        best = best.max(count);
    }
    println!("q = {}, brute-force p = {best}, bound = {}", op.q(), 2 * best as i64 - op.q() as i64);
}
