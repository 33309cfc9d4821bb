//! Exact maximization of the violation ratio over subsets of stabilizer
//! elements.
//!
//! Every assignment's predicted signs over the N = 2^n − 1 non-identity
//! elements form an affine binary code of rank r ≤ 3n. For a candidate
//! subset T with q elements, the classical bound is q − 2m where
//! m = min over the 2^r code words of the number of violated elements
//! inside T, so maximizing D = q/(q − 2m) is maximizing m/q. The searcher
//! walks subsets of "atoms" (single elements, or whole automorphism
//! orbits in symmetric mode) depth-first, keeping per-code-word violation
//! counters, and prunes with an upper envelope on the reachable m/q.
//! Pruning is conservative: only subtrees that cannot beat or tie the
//! incumbent are dropped, which keeps the search exact and lets it count
//! every optimal subset.

use crate::bits::{gf2_row_reduce, Bits};
use crate::error::{Error, Result};
use crate::pauli::Letter;
use crate::stabilizer::StabilizerGroup;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

/// Working-set ceiling (bytes) for the per-code-word tables.
const MEMORY_BUDGET: usize = 1 << 30;

/// Incumbent value: m violated-count minimum and q term count.
/// Ordered by the ratio m/q, then by fewer terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Incumbent {
    pub m: u32,
    pub q: u32,
}

impl Incumbent {
    /// Strictly better: larger m/q, or equal ratio with smaller q.
    pub fn beats(self, other: Incumbent) -> bool {
        let lhs = self.m as u64 * other.q as u64;
        let rhs = other.m as u64 * self.q as u64;
        lhs > rhs || (lhs == rhs && self.q < other.q)
    }

    fn pack(self) -> u64 {
        ((self.m as u64) << 32) | self.q as u64
    }

    fn unpack(v: u64) -> Option<Incumbent> {
        if v == 0 {
            None
        } else {
            Some(Incumbent {
                m: (v >> 32) as u32,
                q: v as u32,
            })
        }
    }
}

/// One selectable unit of the candidate space.
#[derive(Debug, Clone)]
pub struct Atom {
    /// Element index masks belonging to this atom, sorted.
    pub members: Vec<u32>,
}

/// Precomputed search tables for one stabilizer group and atom partition.
pub struct Engine {
    /// Generator count of the underlying group.
    n: usize,
    /// log2 of the code-word count.
    rank: usize,
    lam: usize,
    sizes: Vec<u32>,
    /// inc[j][w]: violated members of atom j under code word w.
    inc: Vec<Vec<u8>>,
    /// rem[k][w]: total violations available from atoms k.. under word w.
    rem: Vec<Vec<u8>>,
    /// suffix_sizes[k]: total element count of atoms k.. .
    suffix_sizes: Vec<u32>,
    atoms: Vec<Atom>,
}

/// Search limits and outcome switches.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_q: Option<u32>,
    pub node_budget: Option<u64>,
    pub workers: usize,
}

/// Raw engine result before records are built.
#[derive(Debug)]
pub struct RawOutcome {
    pub best: Option<Incumbent>,
    /// Optimal subsets as element-mask lists, sorted and deduplicated.
    pub optima: Vec<Vec<u32>>,
    pub nodes: u64,
    pub complete: bool,
}

impl Engine {
    /// Builds the violation tables for `atoms` over the group's
    /// non-identity elements.
    pub fn new(group: &StabilizerGroup, atoms: Vec<Atom>) -> Result<Engine> {
        let n = group.n();
        let count = (1usize << n) - 1;
        // Slot incidence columns over the elements.
        let mut slot_set: BTreeSet<(usize, Letter)> = BTreeSet::new();
        for e in group.non_identity() {
            for qubit in 0..n {
                let l = e.pauli.letter_at(qubit)?;
                if l != Letter::I {
                    slot_set.insert((qubit, l));
                }
            }
        }
        let mut columns = Vec::with_capacity(slot_set.len());
        for &(qubit, letter) in &slot_set {
            let mut col = Bits::zero(count);
            for (idx, e) in group.non_identity().enumerate() {
                if e.pauli.letter_at(qubit)? == letter {
                    col.set(idx, true);
                }
            }
            columns.push(col);
        }
        let basis = gf2_row_reduce(&columns);
        let rank = basis.len();
        let lam = 1usize << rank;
        let working = lam * (2 * atoms.len() + 3);
        if working > MEMORY_BUDGET {
            return Err(Error::TooLarge {
                what: "search working set",
                value: working,
                limit: MEMORY_BUDGET,
            });
        }
        // Sign offset over the elements.
        let mut offset = Bits::zero(count);
        for (idx, e) in group.non_identity().enumerate() {
            if e.sign < 0 {
                offset.set(idx, true);
            }
        }
        let member_bits: Vec<Bits> = atoms
            .iter()
            .map(|a| {
                let mut b = Bits::zero(count);
                for &mask in &a.members {
                    b.set(mask as usize - 1, true);
                }
                b
            })
            .collect();
        // Enumerate all code words in Gray order, recording per-atom
        // violation counts.
        let mut inc: Vec<Vec<u8>> = atoms.iter().map(|_| vec![0u8; lam]).collect();
        let mut v = offset.clone();
        for w in 0..lam {
            if w > 0 {
                let flip = w.trailing_zeros() as usize;
                v.xor_assign(&basis[flip]);
            }
            for (j, mb) in member_bits.iter().enumerate() {
                inc[j][w] = v.and_count(mb) as u8;
            }
        }
        let sizes: Vec<u32> = atoms.iter().map(|a| a.members.len() as u32).collect();
        let mut engine = Engine {
            n,
            rank,
            lam,
            sizes,
            inc,
            rem: Vec::new(),
            suffix_sizes: Vec::new(),
            atoms,
        };
        engine.rebuild_suffix_tables();
        Ok(engine)
    }

    fn rebuild_suffix_tables(&mut self) {
        let count = self.atoms.len();
        let mut rem: Vec<Vec<u8>> = vec![vec![0u8; self.lam]; count + 1];
        for k in (0..count).rev() {
            let (head, tail) = rem.split_at_mut(k + 1);
            for w in 0..self.lam {
                head[k][w] = tail[0][w] + self.inc[k][w];
            }
        }
        self.rem = rem;
        let mut suffix_sizes = vec![0u32; count + 1];
        for k in (0..count).rev() {
            suffix_sizes[k] = suffix_sizes[k + 1] + self.sizes[k];
        }
        self.suffix_sizes = suffix_sizes;
    }

    /// Permutes the atoms so the seed subset comes first; the candidate
    /// space is unchanged, only the traversal order.
    fn apply_order(&mut self, order: &[usize]) {
        debug_assert_eq!(order.len(), self.atoms.len());
        self.atoms = order.iter().map(|&j| self.atoms[j].clone()).collect();
        self.sizes = order.iter().map(|&j| self.sizes[j]).collect();
        let mut taken: Vec<Vec<u8>> = std::mem::take(&mut self.inc);
        self.inc = order
            .iter()
            .map(|&j| std::mem::take(&mut taken[j]))
            .collect();
        self.rebuild_suffix_tables();
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// Runs the exact search and returns every subset achieving the
    /// maximal ratio at the minimal term count.
    pub fn run(&mut self, limits: Limits) -> RawOutcome {
        let seed = self.greedy_seed(limits.max_q);
        if let Some((_, chosen)) = &seed {
            let mut order: Vec<usize> = (0..self.atoms.len()).filter(|&j| chosen[j]).collect();
            order.extend((0..self.atoms.len()).filter(|&j| !chosen[j]));
            self.apply_order(&order);
        }
        let seed = seed.map(|(incumbent, _)| incumbent);
        if std::env::var_os("MERMIN_TRACE").is_some() {
            eprintln!(
                "engine: rank={} atoms={} seed={:?}",
                self.rank,
                self.atoms.len(),
                seed
            );
        }
        let shared_best = AtomicU64::new(seed.map(Incumbent::pack).unwrap_or(0));
        let shared_nodes = AtomicU64::new(0);
        let abort = AtomicBool::new(false);
        let tasks: Vec<usize> = (0..self.atoms.len()).collect();

        let run_task = |&first: &usize| -> TaskResult {
            let mut s = Searcher::new(self, limits, &shared_best, &shared_nodes, &abort);
            s.push(first);
            s.visit(first + 1);
            if !s.aborted {
                s.descend(first + 1);
            }
            s.pop(first);
            TaskResult {
                best: s.best,
                optima: s.optima,
                aborted: s.aborted,
            }
        };

        let results: Vec<TaskResult> = if limits.workers == 1 {
            tasks.iter().map(run_task).collect()
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(limits.workers)
                .build()
                .expect("thread pool");
            pool.install(|| tasks.par_iter().map(run_task).collect())
        };

        let mut best: Option<Incumbent> = None;
        for r in &results {
            if let Some(b) = r.best {
                if best.map_or(true, |cur| b.beats(cur)) {
                    best = Some(b);
                }
            }
        }
        let mut optima: Vec<Vec<u32>> = Vec::new();
        if let Some(global) = best {
            for r in results.iter() {
                if r.best == Some(global) {
                    optima.extend(r.optima.iter().cloned());
                }
            }
        }
        optima.sort();
        optima.dedup();
        let complete = !results.iter().any(|r| r.aborted);
        RawOutcome {
            best,
            optima,
            nodes: shared_nodes.load(Ordering::Relaxed),
            complete,
        }
    }

    /// Deterministic add/remove hill climbing from several starting
    /// subsets; seeds the incumbent (and the atom ordering) but is never
    /// reported directly.
    fn greedy_seed(&self, max_q: Option<u32>) -> Option<(Incumbent, Vec<bool>)> {
        let cap = max_q.unwrap_or(u32::MAX);
        let count = self.atoms.len();
        let mut best: Option<(Incumbent, Vec<bool>)> = None;

        // Single-atom values double as restart rankings.
        let mut singles: Vec<(Incumbent, usize)> = (0..count)
            .map(|j| {
                let m = self.inc[j].iter().copied().min().unwrap_or(0) as u32;
                (
                    Incumbent {
                        m,
                        q: self.sizes[j],
                    },
                    j,
                )
            })
            .collect();
        for (cand, j) in &singles {
            if cand.m >= 1
                && cand.q <= cap
                && best.as_ref().is_none_or(|(b, _)| cand.beats(*b))
            {
                let mut chosen = vec![false; count];
                chosen[*j] = true;
                best = Some((*cand, chosen));
            }
        }
        singles.sort_by(|a, b| match (a.0.beats(b.0), b.0.beats(a.0)) {
            (true, _) => std::cmp::Ordering::Less,
            (_, true) => std::cmp::Ordering::Greater,
            _ => a.1.cmp(&b.1),
        });

        let mut starts: Vec<Vec<bool>> = Vec::new();
        if self.suffix_sizes[0] <= cap {
            starts.push(vec![true; count]);
        }
        for (_, j) in singles.iter().take(8) {
            let mut chosen = vec![false; count];
            chosen[*j] = true;
            starts.push(chosen);
        }
        for start in starts {
            if let Some(found) = self.hill_climb(start, cap) {
                if best
                    .as_ref()
                    .is_none_or(|(b, _)| found.0.beats(*b))
                {
                    best = Some(found);
                }
            }
        }
        if let Some(found) = self.best_coset_family(cap) {
            if best
                .as_ref()
                .is_none_or(|(b, _)| found.0.beats(*b))
            {
                best = Some(found);
            }
        }
        best
    }

    /// Evaluates every subset of the form {core ⊕ s : s ⊆ span(F)} with F
    /// a set of generators disjoint from the core (the shape of the
    /// known product-form optima), keeping those expressible as atom
    /// unions. Returns the best such seed.
    fn best_coset_family(&self, cap: u32) -> Option<(Incumbent, Vec<bool>)> {
        let full = (1u32 << self.n) - 1;
        let mut atom_of = vec![usize::MAX; (full + 1) as usize];
        for (j, atom) in self.atoms.iter().enumerate() {
            for &m in &atom.members {
                atom_of[m as usize] = j;
            }
        }
        let mut best: Option<(Incumbent, Vec<bool>)> = None;
        let mut viol = vec![0u8; self.lam];
        for core in 1..=full {
            let comp = full & !core;
            // All subsets of the complement bits, including the empty one.
            let mut free = comp;
            loop {
                'skip: {
                    let width = free.count_ones();
                    let q = 1u32 << width;
                    if q > cap {
                        break 'skip;
                    }
                    // Collect the atoms covering the family; reject if the
                    // union is not exactly the family.
                    let mut chosen = vec![false; self.atoms.len()];
                    let mut covered = 0u32;
                    let mut sub = free;
                    loop {
                        let j = atom_of[(core | sub) as usize];
                        if !chosen[j] {
                            chosen[j] = true;
                            covered += self.sizes[j];
                        }
                        if sub == 0 {
                            break;
                        }
                        sub = (sub - 1) & free;
                    }
                    if covered != q {
                        break 'skip;
                    }
                    viol.fill(0);
                    for (j, picked) in chosen.iter().enumerate() {
                        if *picked {
                            for (v, i) in viol.iter_mut().zip(&self.inc[j]) {
                                *v += i;
                            }
                        }
                    }
                    let m = viol.iter().copied().min().unwrap_or(0) as u32;
                    let cand = Incumbent { m, q };
                    if m >= 1
                        && best
                            .as_ref()
                            .is_none_or(|(b, _)| cand.beats(*b))
                    {
                        best = Some((cand, chosen));
                    }
                }
                if free == 0 {
                    break;
                }
                free = (free - 1) & comp;
            }
        }
        best
    }

    /// Steepest add/remove ascent on (m/q, fewer terms) from one start.
    fn hill_climb(&self, mut chosen: Vec<bool>, cap: u32) -> Option<(Incumbent, Vec<bool>)> {
        let count = self.atoms.len();
        let mut viol = vec![0u8; self.lam];
        let mut q = 0u32;
        for j in 0..count {
            if chosen[j] {
                for (v, i) in viol.iter_mut().zip(&self.inc[j]) {
                    *v += i;
                }
                q += self.sizes[j];
            }
        }
        let mut m = viol.iter().copied().min().unwrap_or(0) as u32;
        loop {
            let cur = Incumbent { m, q };
            let mut move_to: Option<(usize, Incumbent)> = None;
            for j in 0..count {
                let cand = if chosen[j] {
                    if q == self.sizes[j] {
                        continue;
                    }
                    let m2 = viol
                        .iter()
                        .zip(&self.inc[j])
                        .map(|(&v, &i)| v - i)
                        .min()
                        .unwrap() as u32;
                    Incumbent {
                        m: m2,
                        q: q - self.sizes[j],
                    }
                } else {
                    if q + self.sizes[j] > cap {
                        continue;
                    }
                    let m2 = viol
                        .iter()
                        .zip(&self.inc[j])
                        .map(|(&v, &i)| v + i)
                        .min()
                        .unwrap() as u32;
                    Incumbent {
                        m: m2,
                        q: q + self.sizes[j],
                    }
                };
                if cand.m >= 1
                    && cand.beats(cur)
                    && move_to.is_none_or(|(_, c)| cand.beats(c))
                {
                    move_to = Some((j, cand));
                }
            }
            match move_to {
                Some((j, cand)) => {
                    if chosen[j] {
                        for (v, i) in viol.iter_mut().zip(&self.inc[j]) {
                            *v -= i;
                        }
                    } else {
                        for (v, i) in viol.iter_mut().zip(&self.inc[j]) {
                            *v += i;
                        }
                    }
                    chosen[j] = !chosen[j];
                    m = cand.m;
                    q = cand.q;
                }
                None => break,
            }
        }
        if m >= 1 {
            Some((Incumbent { m, q }, chosen))
        } else {
            None
        }
    }
}

struct TaskResult {
    best: Option<Incumbent>,
    optima: Vec<Vec<u32>>,
    aborted: bool,
}

struct Searcher<'a> {
    engine: &'a Engine,
    limits: Limits,
    shared_best: &'a AtomicU64,
    shared_nodes: &'a AtomicU64,
    abort: &'a AtomicBool,
    viol: Vec<u8>,
    chosen: Vec<usize>,
    q: u32,
    best: Option<Incumbent>,
    optima: Vec<Vec<u32>>,
    local_nodes: u64,
    aborted: bool,
}

impl<'a> Searcher<'a> {
    fn new(
        engine: &'a Engine,
        limits: Limits,
        shared_best: &'a AtomicU64,
        shared_nodes: &'a AtomicU64,
        abort: &'a AtomicBool,
    ) -> Self {
        Searcher {
            engine,
            limits,
            shared_best,
            shared_nodes,
            abort,
            viol: vec![0u8; engine.lam],
            chosen: Vec::new(),
            q: 0,
            best: Incumbent::unpack(shared_best.load(Ordering::Relaxed)),
            optima: Vec::new(),
            local_nodes: 0,
            aborted: false,
        }
    }

    fn push(&mut self, j: usize) {
        for (v, i) in self.viol.iter_mut().zip(&self.engine.inc[j]) {
            *v += i;
        }
        self.chosen.push(j);
        self.q += self.engine.sizes[j];
    }

    fn pop(&mut self, j: usize) {
        for (v, i) in self.viol.iter_mut().zip(&self.engine.inc[j]) {
            *v -= i;
        }
        self.chosen.pop();
        self.q -= self.engine.sizes[j];
    }

    fn adopt_shared(&mut self) {
        if let Some(shared) = Incumbent::unpack(self.shared_best.load(Ordering::Relaxed)) {
            if self.best.map_or(true, |b| shared.beats(b)) {
                self.best = Some(shared);
                self.optima.clear();
            }
        }
    }

    fn publish(&self, cand: Incumbent) {
        let mut cur = self.shared_best.load(Ordering::Relaxed);
        loop {
            if Incumbent::unpack(cur).is_some_and(|c| !cand.beats(c)) {
                return;
            }
            match self.shared_best.compare_exchange_weak(
                cur,
                cand.pack(),
                Ordering::Relaxed,
                Ordering::Relaxed,
            ) {
                Ok(_) => return,
                Err(now) => cur = now,
            }
        }
    }

    /// Evaluates the current subset and records it if it beats or ties
    /// the incumbent. Returns the exact minimum violation count.
    fn visit(&mut self, _depth: usize) -> u32 {
        self.local_nodes += 1;
        if self.local_nodes % 1024 == 0 {
            self.adopt_shared();
            if self.abort.load(Ordering::Relaxed) {
                self.aborted = true;
            }
        }
        if let Some(budget) = self.limits.node_budget {
            let total = self.shared_nodes.fetch_add(1, Ordering::Relaxed) + 1;
            if total > budget {
                self.abort.store(true, Ordering::Relaxed);
                self.aborted = true;
            }
        } else {
            self.shared_nodes.fetch_add(1, Ordering::Relaxed);
        }
        let m = self.viol.iter().copied().min().unwrap_or(0) as u32;
        if m >= 1 {
            let cand = Incumbent { m, q: self.q };
            match self.best {
                Some(b) if cand.beats(b) => {
                    self.best = Some(cand);
                    self.optima.clear();
                    self.optima.push(self.subset_masks());
                    self.publish(cand);
                }
                Some(b) if b == cand => {
                    self.optima.push(self.subset_masks());
                }
                None => {
                    self.best = Some(cand);
                    self.optima.clear();
                    self.optima.push(self.subset_masks());
                    self.publish(cand);
                }
                _ => {}
            }
        }
        m
    }

    fn subset_masks(&self) -> Vec<u32> {
        let mut masks: Vec<u32> = self
            .chosen
            .iter()
            .flat_map(|&j| self.engine.atoms[j].members.iter().copied())
            .collect();
        masks.sort_unstable();
        masks
    }

    fn descend(&mut self, start: usize) {
        let cap = self.limits.max_q.unwrap_or(u32::MAX);
        for j in start..self.engine.atoms.len() {
            if self.aborted {
                return;
            }
            if self.q + self.engine.sizes[j] > cap {
                continue;
            }
            self.push(j);
            self.visit(j + 1);
            if !self.aborted && self.admits_descent(j + 1) {
                self.descend(j + 1);
            }
            self.pop(j);
        }
    }

    /// Decides whether any completion with atoms from `depth..` could
    /// beat or tie the incumbent.
    fn admits_descent(&mut self, depth: usize) -> bool {
        let total = self.engine.suffix_sizes[depth];
        if total == 0 {
            return false;
        }
        let cap = self.limits.max_q.unwrap_or(u32::MAX);
        // Cheap envelope: one fused pass for min(viol) and min(viol+rem).
        let rem = &self.engine.rem[depth];
        let mut min_v = u8::MAX;
        let mut min_vr = u8::MAX;
        for (v, r) in self.viol.iter().zip(rem) {
            min_v = min_v.min(*v);
            min_vr = min_vr.min(v + r);
        }
        let cheap = |a: u32| -> u32 { (min_v as u32 + a).min(min_vr as u32) };
        if !self.envelope_admits(total, cap, cheap) {
            return false;
        }
        // Strong envelope: bucket the minimum of viol by remaining count.
        let mut bucket = [u8::MAX; 256];
        for (v, r) in self.viol.iter().zip(rem) {
            let b = &mut bucket[*r as usize];
            if *v < *b {
                *b = *v;
            }
        }
        let max_r = total.min(255) as usize;
        // suffix_min[a] = min over r' ≥ a of bucket[r'];
        // prefix_plus[a] = min over r' < a of bucket[r'] + r'.
        let mut suffix_min = vec![u32::MAX; max_r + 2];
        for a in (0..=max_r).rev() {
            suffix_min[a] = suffix_min[a + 1].min(bucket[a] as u32);
        }
        let mut prefix_plus = vec![u32::MAX; max_r + 2];
        for a in 1..=max_r + 1 {
            let r = a - 1;
            let add = if bucket[r] == u8::MAX {
                u32::MAX
            } else {
                bucket[r] as u32 + r as u32
            };
            prefix_plus[a] = prefix_plus[a - 1].min(add);
        }
        let strong = |a: u32| -> u32 {
            let ai = (a as usize).min(max_r + 1);
            let up = if ai <= max_r && suffix_min[ai] != u32::MAX {
                suffix_min[ai].saturating_add(a)
            } else {
                u32::MAX
            };
            up.min(prefix_plus[ai])
        };
        self.envelope_admits(total, cap, strong)
    }

    fn envelope_admits(&self, total: u32, cap: u32, ub: impl Fn(u32) -> u32) -> bool {
        for a in 1..=total {
            let q_c = self.q + a;
            if q_c > cap {
                break;
            }
            let m_ub = ub(a);
            if m_ub == 0 {
                continue;
            }
            let cand = Incumbent { m: m_ub, q: q_c };
            match self.best {
                None => {
                    if m_ub >= 1 {
                        return true;
                    }
                }
                Some(b) => {
                    if cand.beats(b) || (!b.beats(cand) && q_c == b.q) {
                        return true;
                    }
                }
            }
        }
        false
    }
}
