//! Deterministic local-hidden-variable models and exact classical bounds.
//!
//! A model assigns a predefined ±1 value to every (qubit, letter) slot;
//! the classical bound of a Bell operator is 2p − q where p is the largest
//! number of its q terms any assignment satisfies. Three routes compute p:
//!
//! * [`classical_bound`] — the production path. Term values over all
//!   assignments form an affine binary code of rank ≤ min(3n, q), so p is
//!   q minus the minimum Hamming weight of a coset, found by enumerating
//!   the 2^rank codewords.
//! * [`enumerate_bound`] — the reference path: direct enumeration of the
//!   2^(#used slots) assignments restricted to slots the operator touches.
//! * [`brute_force_bound`] — the oracle: all 2^(3n) full assignments,
//!   limited to n ≤ 4 and kept free of any shared machinery.

use crate::bits::{gf2_row_reduce, Bits};
use crate::error::{Error, Result};
use crate::pauli::Letter;
use crate::stabilizer::{StabilizerElement, StabilizerGroup};
use std::collections::BTreeSet;
use std::sync::Arc;

/// Letters that can carry an assigned value (everything but identity).
pub const ASSIGNABLE: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];

fn letter_rank(letter: Letter) -> Option<usize> {
    match letter {
        Letter::I => None,
        Letter::X => Some(0),
        Letter::Y => Some(1),
        Letter::Z => Some(2),
    }
}

/// A (partial) deterministic assignment of ±1 to (qubit, letter) slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    n: usize,
    values: Vec<i8>, // 3n entries; 0 = unset
}

impl Assignment {
    pub fn new(n: usize) -> Self {
        Assignment {
            n,
            values: vec![0; 3 * n],
        }
    }

    /// An assignment with every slot set to +1.
    pub fn all_plus(n: usize) -> Self {
        Assignment {
            n,
            values: vec![1; 3 * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, qubit: usize, letter: Letter, value: i8) {
        assert!(value == 1 || value == -1, "values are ±1");
        let r = letter_rank(letter).expect("identity carries no value");
        self.values[3 * qubit + r] = value;
    }

    pub fn get(&self, qubit: usize, letter: Letter) -> Option<i8> {
        let r = letter_rank(letter)?;
        match self.values[3 * qubit + r] {
            0 => None,
            v => Some(v),
        }
    }

    /// Slots with a value, in (qubit, letter) order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, Letter, i8)> + '_ {
        (0..self.n).flat_map(move |q| {
            ASSIGNABLE.iter().filter_map(move |&l| {
                self.get(q, l).map(|v| (q, l, v))
            })
        })
    }
}

/// The predicted value of one stabilizing operator under an assignment:
/// the element's sign times the product of the assigned slot values over
/// its support.
pub fn term_value(a: &Assignment, s: &StabilizerElement) -> Result<i8> {
    let mut v = s.sign;
    for qubit in 0..s.pauli.n() {
        let letter = s.pauli.letter_at(qubit)?;
        if letter == Letter::I {
            continue;
        }
        match a.get(qubit, letter) {
            Some(x) => v *= x,
            None => {
                return Err(Error::MissingAssignment {
                    qubit: qubit + 1,
                    letter: letter.as_char(),
                })
            }
        }
    }
    Ok(v)
}

/// A sum of distinct non-identity stabilizing operators with unit
/// coefficients; the quantum value is the term count q.
#[derive(Debug, Clone)]
pub struct BellOperator {
    group: Arc<StabilizerGroup>,
    masks: Vec<u32>,
}

impl BellOperator {
    pub fn new(group: Arc<StabilizerGroup>, masks: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut masks: Vec<u32> = masks.into_iter().collect();
        masks.sort_unstable();
        masks.dedup();
        if masks.is_empty() {
            return Err(Error::EmptyOperator);
        }
        if masks[0] == 0 {
            return Err(Error::IdentityTerm);
        }
        let limit = 1u32 << group.n();
        if *masks.last().unwrap() >= limit {
            return Err(Error::InvalidArgument(format!(
                "term mask {} outside the {}-generator group",
                masks.last().unwrap(),
                group.n()
            )));
        }
        Ok(BellOperator { group, masks })
    }

    pub fn group(&self) -> &Arc<StabilizerGroup> {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.group.n()
    }

    pub fn q(&self) -> usize {
        self.masks.len()
    }

    pub fn term_masks(&self) -> &[u32] {
        &self.masks
    }

    pub fn terms(&self) -> impl Iterator<Item = &StabilizerElement> {
        self.masks.iter().map(|&m| self.group.element(m))
    }

    /// Maps each term mask through I ↦ I ⊕ mask (multiplication of the
    /// whole operator by the stabilizer element of `mask`). Fails if any
    /// term lands on the identity. The classical bound of the result is
    /// not assumed preserved; callers re-derive it.
    pub fn translate(&self, mask: u32) -> Result<BellOperator> {
        if mask == 0 {
            return Err(Error::InvalidArgument("translation mask is empty".into()));
        }
        if self.masks.contains(&mask) {
            return Err(Error::IdentityTerm);
        }
        BellOperator::new(self.group.clone(), self.masks.iter().map(|&m| m ^ mask))
    }
}

/// Outcome of a classical-bound computation.
#[derive(Debug, Clone)]
pub struct ClassicalBoundResult {
    /// Maximum number of satisfied predictions over all assignments.
    pub p: u32,
    /// The bound 2p − q of the Bell inequality.
    pub bound: i64,
    /// One assignment achieving p: the lexicographically smallest over
    /// the used slots in (qubit, letter) order, +1 before −1.
    pub witness: Assignment,
}

/// The affine structure of a Bell operator's term values: over all
/// assignments, the vector of term signs ranges over `offset ⊕ span(basis)`
/// (bit t set means term t predicts −1).
#[derive(Debug, Clone)]
pub struct TermCode {
    /// Slots appearing in the operator, sorted by (qubit, letter).
    pub slots: Vec<(usize, Letter)>,
    /// Per-slot incidence columns over the q terms.
    pub columns: Vec<Bits>,
    /// Row-reduced independent basis of the value-vector space.
    pub basis: Vec<Bits>,
    /// Sign offset: bit t set iff term t carries sign −1.
    pub offset: Bits,
}

impl TermCode {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Builds the affine-code view of an operator's term values.
pub fn affine_code_reduction(op: &BellOperator) -> TermCode {
    let q = op.q();
    let mut slot_set: BTreeSet<(usize, Letter)> = BTreeSet::new();
    for term in op.terms() {
        for qubit in 0..term.pauli.n() {
            let letter = term.pauli.letter_at(qubit).expect("qubit in range");
            if letter != Letter::I {
                slot_set.insert((qubit, letter));
            }
        }
    }
    let slots: Vec<(usize, Letter)> = slot_set.into_iter().collect();
    let mut columns = vec![Bits::zero(q); slots.len()];
    let mut offset = Bits::zero(q);
    for (t, term) in op.terms().enumerate() {
        if term.sign < 0 {
            offset.set(t, true);
        }
        for (s, &(qubit, letter)) in slots.iter().enumerate() {
            if term.pauli.letter_at(qubit).expect("in range") == letter {
                columns[s].set(t, true);
            }
        }
    }
    let basis = gf2_row_reduce(&columns);
    TermCode {
        slots,
        columns,
        basis,
    offset,
    }
}

/// Guard on the coset-enumeration exponent.
const MAX_RANK: usize = 28;
/// Largest used-slot count for which witnesses are found by direct scan.
const MAX_DIRECT_SLOTS: usize = 26;

/// Exact classical bound via the affine-code fast path.
pub fn classical_bound(op: &BellOperator) -> Result<ClassicalBoundResult> {
    let code = affine_code_reduction(op);
    let r = code.rank();
    if r > MAX_RANK {
        return Err(Error::TooLarge {
            what: "term-code rank",
            value: r,
            limit: MAX_RANK,
        });
    }
    let q = op.q() as u32;
    // Minimum Hamming weight over the coset offset ⊕ span(basis),
    // Gray-code enumeration of the 2^r codewords.
    let mut v = code.offset.clone();
    let mut min_w = v.count_ones();
    for k in 1u64..(1u64 << r) {
        let flip = k.trailing_zeros() as usize;
        v.xor_assign(&code.basis[flip]);
        min_w = min_w.min(v.count_ones());
        if min_w == 0 {
            break;
        }
    }
    let p = q - min_w;
    let witness = find_witness(op, &code, p)?;
    Ok(ClassicalBoundResult {
        p,
        bound: 2 * p as i64 - q as i64,
        witness,
    })
}

/// Reference path: enumerate every assignment of the used slots.
pub fn enumerate_bound(op: &BellOperator) -> Result<ClassicalBoundResult> {
    let code = affine_code_reduction(op);
    let used = code.slots.len();
    if used > MAX_DIRECT_SLOTS {
        return Err(Error::TooLarge {
            what: "used-slot enumeration",
            value: used,
            limit: MAX_DIRECT_SLOTS,
        });
    }
    let q = op.q() as u32;
    let (p, best_key) = scan_assignments(&code, q, None);
    let witness = assignment_from_key(op.n(), &code.slots, best_key);
    Ok(ClassicalBoundResult {
        p,
        bound: 2 * p as i64 - q as i64,
        witness,
    })
}

/// Walks all 2^used assignments in Gray order, returning the maximum
/// satisfied count and the lexicographically smallest achieving key.
/// With `target` set, only that count is considered when picking the key.
fn scan_assignments(code: &TermCode, q: u32, target: Option<u32>) -> (u32, u64) {
    let used = code.slots.len();
    let mut v = code.offset.clone();
    let mut best_count = q - v.count_ones();
    let mut best_key = match target {
        Some(t) if best_count != t => u64::MAX,
        _ => 0,
    };
    let mut gray = 0u64;
    for k in 1u64..(1u64 << used) {
        let flip = k.trailing_zeros() as usize;
        gray ^= 1 << flip;
        v.xor_assign(&code.columns[flip]);
        let count = q - v.count_ones();
        let key = lex_key(gray, used);
        match target {
            Some(t) => {
                if count == t && key < best_key {
                    best_key = key;
                }
                if count > best_count {
                    best_count = count;
                }
            }
            None => {
                if count > best_count || (count == best_count && key < best_key) {
                    if count > best_count {
                        best_key = key;
                    } else {
                        best_key = best_key.min(key);
                    }
                    best_count = count;
                }
            }
        }
    }
    (best_count, best_key)
}

/// Key ordering assignments lexicographically: slot 0 is the most
/// significant bit and a set bit means −1, so all-plus sorts first.
fn lex_key(gray_bits: u64, used: usize) -> u64 {
    gray_bits.reverse_bits() >> (64 - used)
}

fn assignment_from_key(n: usize, slots: &[(usize, Letter)], key: u64) -> Assignment {
    let mut a = Assignment::new(n);
    let used = slots.len();
    for (s, &(qubit, letter)) in slots.iter().enumerate() {
        let bit = (key >> (used - 1 - s)) & 1;
        a.set(qubit, letter, if bit == 1 { -1 } else { 1 });
    }
    a
}

fn find_witness(op: &BellOperator, code: &TermCode, p: u32) -> Result<Assignment> {
    let used = code.slots.len();
    if used <= MAX_DIRECT_SLOTS {
        let q = op.q() as u32;
        let (max_count, key) = scan_assignments(code, q, Some(p));
        debug_assert_eq!(max_count, p, "code path and direct path disagree");
        Ok(assignment_from_key(op.n(), &code.slots, key))
    } else {
        Err(Error::TooLarge {
            what: "witness reconstruction",
            value: used,
            limit: MAX_DIRECT_SLOTS,
        })
    }
}

/// Independent oracle: every one of the 2^(3n) full assignments.
pub fn brute_force_bound(op: &BellOperator) -> Result<ClassicalBoundResult> {
    const MAX_N: usize = 4;
    let n = op.n();
    if n > MAX_N {
        return Err(Error::TooLarge {
            what: "brute-force assignment space",
            value: n,
            limit: MAX_N,
        });
    }
    let slots = 3 * n;
    let q = op.q() as u32;
    let mut best_count = 0u32;
    let mut best_key = u64::MAX;
    for raw in 0u64..(1u64 << slots) {
        // Bit s of `raw` is slot s (qubit-major, letters X,Y,Z), with the
        // slot-0 bit most significant so that `raw` orders assignments
        // lexicographically.
        let mut a = Assignment::new(n);
        for qubit in 0..n {
            for (r, &letter) in ASSIGNABLE.iter().enumerate() {
                let s = 3 * qubit + r;
                let bit = (raw >> (slots - 1 - s)) & 1;
                a.set(qubit, letter, if bit == 1 { -1 } else { 1 });
            }
        }
        let mut count = 0u32;
        for term in op.terms() {
            if term_value(&a, term)? == 1 {
                count += 1;
            }
        }
        if count > best_count || (count == best_count && raw < best_key) {
            best_count = count;
            best_key = raw;
        }
    }
    let mut witness = Assignment::new(n);
    for qubit in 0..n {
        for (r, &letter) in ASSIGNABLE.iter().enumerate() {
            let s = 3 * qubit + r;
            let bit = (best_key >> (slots - 1 - s)) & 1;
            witness.set(qubit, letter, if bit == 1 { -1 } else { 1 });
        }
    }
    Ok(ClassicalBoundResult {
        p: best_count,
        bound: 2 * best_count as i64 - q as i64,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_lookup;

    fn ghz3_group() -> Arc<StabilizerGroup> {
        Arc::new(StabilizerGroup::from_graph(&catalog_lookup("ghz3").unwrap()).unwrap())
    }

    fn op(group: &Arc<StabilizerGroup>, masks: &[u32]) -> BellOperator {
        BellOperator::new(group.clone(), masks.iter().copied()).unwrap()
    }

    #[test]
    fn term_values() {
        let g = ghz3_group();
        let plus = Assignment::all_plus(3);
        // g₁ = +X₁Z₂Z₃ under all-plus.
        assert_eq!(term_value(&plus, g.element(0b001)).unwrap(), 1);
        // s₇ = −X₁Y₂Y₃: the sign dominates.
        assert_eq!(term_value(&plus, g.element(0b111)).unwrap(), -1);
        // One −1 on a support slot flips it back.
        let mut a = Assignment::all_plus(3);
        a.set(1, Letter::Y, -1);
        assert_eq!(term_value(&a, g.element(0b111)).unwrap(), 1);
    }

    #[test]
    fn term_value_missing_slot() {
        let g = ghz3_group();
        let a = Assignment::new(3);
        assert!(matches!(
            term_value(&a, g.element(0b001)),
            Err(Error::MissingAssignment { .. })
        ));
    }

    #[test]
    fn operator_construction_rules() {
        let g = ghz3_group();
        assert!(matches!(
            BellOperator::new(g.clone(), [0u32, 1]),
            Err(Error::IdentityTerm)
        ));
        assert!(matches!(
            BellOperator::new(g.clone(), std::iter::empty()),
            Err(Error::EmptyOperator)
        ));
        let o = op(&g, &[5, 1, 5, 3]);
        assert_eq!(o.term_masks(), &[1, 3, 5]);
        assert_eq!(o.q(), 3);
    }

    #[test]
    fn ghz3_mermin_bound() {
        let g = ghz3_group();
        // g₁(1 + g₂)(1 + g₃): masks {1}, {1,2}, {1,3}, {1,2,3}.
        let o = op(&g, &[0b001, 0b011, 0b101, 0b111]);
        let r = classical_bound(&o).unwrap();
        assert_eq!(r.p, 3);
        assert_eq!(r.bound, 2);
        // Witness achieves exactly p satisfied terms.
        let sat: u32 = o
            .terms()
            .map(|t| (term_value(&r.witness, t).unwrap() == 1) as u32)
            .sum();
        assert_eq!(sat, r.p);
    }

    #[test]
    fn ghz3_code_rank() {
        let g = ghz3_group();
        let o = op(&g, &[0b001, 0b011, 0b101, 0b111]);
        let code = affine_code_reduction(&o);
        assert_eq!(code.slots.len(), 6);
        assert_eq!(code.rank(), 3);
    }

    #[test]
    fn single_term_bound_is_one() {
        let g = ghz3_group();
        let o = op(&g, &[0b001]);
        let r = classical_bound(&o).unwrap();
        assert_eq!((r.p, r.bound), (1, 1));
        let code = affine_code_reduction(&o);
        assert!(code.rank() <= 1);
    }

    #[test]
    fn paths_agree_on_ghz3_subsets() {
        let g = ghz3_group();
        for masks in 1u32..128 {
            let subset: Vec<u32> = (1..8).filter(|i| masks >> (i - 1) & 1 == 1).collect();
            if subset.is_empty() {
                continue;
            }
            let o = op(&g, &subset);
            let fast = classical_bound(&o).unwrap();
            let direct = enumerate_bound(&o).unwrap();
            let brute = brute_force_bound(&o).unwrap();
            assert_eq!(fast.p, brute.p, "masks {masks:b}");
            assert_eq!(direct.p, brute.p, "masks {masks:b}");
            assert_eq!(fast.witness, direct.witness, "witness tie-break");
        }
    }

    #[test]
    fn translation_is_checked_not_assumed() {
        let g = ghz3_group();
        let o = op(&g, &[0b001, 0b011, 0b101, 0b111]);
        let t = o.translate(0b010).unwrap();
        assert_eq!(t.q(), 4);
        let r = classical_bound(&t).unwrap();
        assert_eq!(r.bound, 2);
        // Translating by a term mask would create an identity term.
        assert!(matches!(o.translate(0b001), Err(Error::IdentityTerm)));
    }

    #[test]
    fn witness_is_lex_smallest() {
        let g = ghz3_group();
        let o = op(&g, &[0b001]);
        let r = classical_bound(&o).unwrap();
        // Setting every used slot to +1 satisfies the single positive term.
        for (_, _, v) in r.witness.entries() {
            assert_eq!(v, 1);
        }
    }
}
