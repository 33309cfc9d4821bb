// Check the published 15-term Y5 operator's exact bound on the Y-tree group.
use mermin_core::lhv::{classical_bound, BellOperator};
use mermin_core::stabilizer::StabilizerGroup;
use mermin_core::catalog_lookup;
use std::sync::Arc;

fn main() {
    let graph = catalog_lookup("y5").unwrap();
    let group = Arc::new(StabilizerGroup::from_graph(&graph).unwrap());
    // g2[(1+g1+g5)(1+g3+g3g4) + (1+g1g5)g4] + (g1+g5)g3(1+g4)
    let masks = vec![2u32, 6, 14, 3, 7, 15, 18, 22, 30, 10, 27, 5, 13, 20, 28];
    let op = BellOperator::new(group, masks).unwrap();
    let cb = classical_bound(&op).unwrap();
    println!("q = {}, p = {}, bound = {}", op.q(), cb.p, cb.bound);
}
