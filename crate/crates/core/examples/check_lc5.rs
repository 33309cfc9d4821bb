// Published LC5 operator: (1+g1)[(1+g2)g3(1+g4)+g2g4](1+g5)
use mermin_core::lhv::{classical_bound, BellOperator};
use mermin_core::metrics::settings_signature;
use mermin_core::stabilizer::StabilizerGroup;
use mermin_core::catalog_lookup;
use std::sync::Arc;

fn main() {
    let graph = catalog_lookup("lc5").unwrap();
    let group = Arc::new(StabilizerGroup::from_graph(&graph).unwrap());
    let inner = [4u32, 6, 12, 14, 10];
    let mut masks = Vec::new();
    for b in inner {
        for a in [0u32, 1] {
            for c in [0u32, 16] {
                masks.push(b | a | c);
            }
        }
    }
    let op = BellOperator::new(group, masks).unwrap();
    let cb = classical_bound(&op).unwrap();
    println!("q = {}, p = {}, bound = {}, settings = {:?}", op.q(), cb.p, cb.bound, settings_signature(&op));
    println!("masks = {:?}", op.term_masks());
}
