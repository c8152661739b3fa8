//! Exact shortest-chain search.
//!
//! Iterative deepening over strictly increasing chains. Each trial depth
//! starts from [`lower_bound_length`] and the DFS prunes any node whose top
//! element cannot reach the target in the steps that remain. Witnesses are
//! deterministic (largest candidate first) but not lexicographically minimal.

mod batch;
mod cache;

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub use batch::{batch_lengths, smallest_drop, DropScan, DropWitness, LengthEntry};
pub use cache::LengthCache;

use crate::bits::{ceil_log2, ceil_log2_u64};
use crate::chain::{binary_chain_u64, binary_length_u64, AdditionChain};
use crate::class::ChainClass;
use crate::error::LabError;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Largest target accepted by the search.
pub const MAX_TARGET: u64 = 1 << 62;

/// Upper bound on Schönhage's constant, as a fraction `213/100`.
pub(crate) const CS_BOUND_NUM: u32 = 213;
pub(crate) const CS_BOUND_DEN: u32 = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchStatus {
    Exact {
        length: u32,
        witness: AdditionChain,
    },
    /// The node budget ran out; `upper_bound` is the best chain length known.
    BudgetExhausted { upper_bound: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub n: u64,
    pub class: String,
    pub status: SearchStatus,
    pub nodes_expanded: u64,
}

impl SearchOutcome {
    pub fn length(&self) -> Option<u32> {
        match self.status {
            SearchStatus::Exact { length, .. } => Some(length),
            SearchStatus::BudgetExhausted { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&AdditionChain> {
        match &self.status {
            SearchStatus::Exact { witness, .. } => Some(witness),
            SearchStatus::BudgetExhausted { .. } => None,
        }
    }

    pub fn into_exact(self) -> Result<(u32, AdditionChain), LabError> {
        match self.status {
            SearchStatus::Exact { length, witness } => Ok((length, witness)),
            SearchStatus::BudgetExhausted { upper_bound } => Err(LabError::BudgetExhausted {
                n: self.n,
                class: self.class,
                upper_bound,
                nodes: self.nodes_expanded,
            }),
        }
    }
}

/// `max(ceil(log2 n), ceil(log2 n + log2 ones(n) - 2.13))`, a lower bound on
/// the chain length of `n` in every admissible class.
pub fn lower_bound_length(n: &BigUint) -> Result<u64, LabError> {
    let trivial = ceil_log2(n)?;
    let weighted = n * BigUint::from(n.count_ones());
    // Smallest L with 2^(100 L + 213) >= (n * ones)^100.
    let lhs = weighted.pow(CS_BOUND_DEN);
    let mut l = (weighted.bits() as i64 - 4).max(0) as u64;
    while (BigUint::one() << (u64::from(CS_BOUND_DEN) * l + u64::from(CS_BOUND_NUM))) < lhs {
        l += 1;
    }
    Ok(trivial.max(l))
}

pub fn lower_bound_u64(n: u64) -> u32 {
    if n.is_power_of_two() {
        return ceil_log2_u64(n);
    }
    lower_bound_length(&BigUint::from(n)).expect("n > 0") as u32
}

/// Shortest chain for `n` within `class`, spending at most `budget` nodes.
pub fn shortest_length(n: u64, class: &ChainClass, budget: u64) -> Result<SearchOutcome, LabError> {
    shortest_length_with_hint(n, class, budget, None)
}

/// As [`shortest_length`], but with a known chain for `n` in `class`. Depths
/// at or above its length are never searched.
pub fn shortest_length_with_hint(
    n: u64,
    class: &ChainClass,
    budget: u64,
    hint: Option<AdditionChain>,
) -> Result<SearchOutcome, LabError> {
    if n == 0 {
        return Err(LabError::ZeroTarget);
    }
    if n >= MAX_TARGET {
        return Err(LabError::TargetTooLarge(n.to_string()));
    }
    if budget == 0 {
        return Err(LabError::InvalidArgument("budget must be at least 1".into()));
    }
    let builtin = !matches!(class, ChainClass::Custom(_));
    let mut known: Option<Vec<u64>> = hint.map(|c| {
        c.elements()
            .iter()
            .map(|x| u64::try_from(x).expect("hint lies below the target"))
            .collect()
    });
    if builtin {
        let binary = binary_chain_u64(n);
        if known.as_ref().is_none_or(|k| k.len() > binary.len()) {
            known = Some(binary);
        }
    }

    let mut dfs = Dfs::new(n, class, budget, builtin);
    let lower = lower_bound_u64(n);
    let ceiling = known.as_ref().map(|k| (k.len() - 1) as u32);
    let mut depth = lower;
    loop {
        if let Some(ceiling) = ceiling {
            if depth >= ceiling {
                let elements = known.expect("ceiling implies a known chain");
                return exact(n, class, ceiling, &elements, dfs.nodes);
            }
        }
        match dfs.run(depth) {
            Ok(true) => {
                let length = (dfs.chain.len() - 1) as u32;
                return exact(n, class, length, &dfs.chain, dfs.nodes);
            }
            Ok(false) => depth += 1,
            Err(Exhausted) => {
                return Ok(SearchOutcome {
                    n,
                    class: class.tag().to_string(),
                    status: SearchStatus::BudgetExhausted {
                        upper_bound: ceiling.unwrap_or(binary_length_u64(n)),
                    },
                    nodes_expanded: dfs.nodes,
                })
            }
        }
    }
}

/// Where a capped search starts deepening.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartDepth {
    /// [`lower_bound_length`], which relies on the 2.13 bound.
    LowerBound,
    /// `ceil(log2 n)` only; for checks that must not assume the bound.
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CappedStatus {
    Exact { length: u32, witness: AdditionChain },
    /// No chain of length `<= cap` exists.
    Exceeds { cap: u32 },
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CappedOutcome {
    pub n: u64,
    pub status: CappedStatus,
    pub nodes_expanded: u64,
}

/// Decides whether `n` has a chain of length at most `cap` in `class`, and
/// finds the shortest one if so. Cheaper than [`shortest_length`] when the
/// true length is far above `cap`.
pub fn length_at_most(
    n: u64,
    class: &ChainClass,
    cap: u32,
    budget: u64,
    start: StartDepth,
) -> Result<CappedOutcome, LabError> {
    if n == 0 {
        return Err(LabError::ZeroTarget);
    }
    if n >= MAX_TARGET {
        return Err(LabError::TargetTooLarge(n.to_string()));
    }
    if budget == 0 {
        return Err(LabError::InvalidArgument("budget must be at least 1".into()));
    }
    let builtin = !matches!(class, ChainClass::Custom(_));
    let mut dfs = Dfs::new(n, class, budget, builtin);
    let first = match start {
        StartDepth::LowerBound => lower_bound_u64(n),
        StartDepth::Trivial => ceil_log2_u64(n),
    };
    let binary = builtin.then(|| binary_chain_u64(n));
    for depth in first..=cap {
        if let Some(b) = &binary {
            if depth as usize + 1 >= b.len() {
                let length = (b.len() - 1) as u32;
                return capped_exact(n, class, length, b, dfs.nodes);
            }
        }
        match dfs.run(depth) {
            Ok(true) => {
                let length = (dfs.chain.len() - 1) as u32;
                return capped_exact(n, class, length, &dfs.chain, dfs.nodes);
            }
            Ok(false) => {}
            Err(Exhausted) => {
                return Ok(CappedOutcome {
                    n,
                    status: CappedStatus::BudgetExhausted,
                    nodes_expanded: dfs.nodes,
                })
            }
        }
    }
    Ok(CappedOutcome {
        n,
        status: CappedStatus::Exceeds { cap },
        nodes_expanded: dfs.nodes,
    })
}

fn capped_exact(n: u64, class: &ChainClass, length: u32, elements: &[u64], nodes: u64) -> Result<CappedOutcome, LabError> {
    Ok(CappedOutcome {
        n,
        status: CappedStatus::Exact {
            length,
            witness: AdditionChain::from_u64(elements, class)?,
        },
        nodes_expanded: nodes,
    })
}

fn exact(n: u64, class: &ChainClass, length: u32, elements: &[u64], nodes: u64) -> Result<SearchOutcome, LabError> {
    let witness = AdditionChain::from_u64(elements, class)?;
    debug_assert_eq!(witness.length() as u32, length);
    Ok(SearchOutcome {
        n,
        class: class.tag().to_string(),
        status: SearchStatus::Exact { length, witness },
        nodes_expanded: nodes,
    })
}

struct Exhausted;

struct Dfs<'a> {
    target: u64,
    class: &'a ChainClass,
    budget: u64,
    nodes: u64,
    /// Whether appending doublings always stays inside the class.
    doubling_closed: bool,
    binary: Option<Vec<u64>>,
    chain: Vec<u64>,
    scratch: Vec<Vec<u64>>,
    /// Unused-element bookkeeping; only sound for the unrestricted class,
    /// where dropping an unused element leaves a valid shorter chain.
    track_use: bool,
    uses: Vec<u32>,
    unused: u32,
    marks: Vec<u32>,
    mark_starts: Vec<usize>,
    /// Largest Hamming weight among the chain elements, per prefix length.
    max_ones: Vec<u32>,
}

/// `x * 2^shift >= n`, saturating.
#[inline]
fn reaches(x: u64, shift: u32, n: u64) -> bool {
    if shift >= 64 || x.leading_zeros() < shift {
        return true;
    }
    (x << shift) >= n
}

#[inline]
fn reaches_wide(x: u128, shift: u32, n: u128) -> bool {
    if shift >= 128 || x.leading_zeros() < shift {
        return true;
    }
    (x << shift) >= n
}

/// Smallest `j` with `weight * 2^j >= goal`.
#[inline]
fn nondoublings_needed(weight: u32, goal: u32) -> u32 {
    let mut j = 0;
    while weight << j < goal {
        j += 1;
    }
    j
}

/// Can `t` more steps, at least `j` of them non-doubling, starting from top
/// `a` and second element `b >= a/2`, reach `n`? The largest reachable value
/// puts all non-doublings first: `(F(j+1) a + F(j) b) 2^(t-j)`.
#[inline]
fn within_nondoubling(a: u64, b: u64, t: u32, j: u32, n: u64) -> bool {
    let (f0, f1) = (FIB[j as usize], FIB[j as usize + 1]);
    reaches_wide(f1 * u128::from(a) + f0 * u128::from(b), t - j, u128::from(n))
}

/// `FIB[i]` is the `i`-th Fibonacci number.
const FIB: [u128; 96] = {
    let mut f = [0u128; 96];
    f[1] = 1;
    let mut i = 2;
    while i < 96 {
        f[i] = f[i - 1] + f[i - 2];
        i += 1;
    }
    f
};

impl<'a> Dfs<'a> {
    fn new(target: u64, class: &'a ChainClass, budget: u64, doubling_closed: bool) -> Self {
        let binary = matches!(class, ChainClass::Binary).then(|| binary_chain_u64(target));
        Dfs {
            target,
            class,
            budget,
            nodes: 0,
            doubling_closed,
            binary,
            chain: Vec::with_capacity(64),
            scratch: Vec::new(),
            track_use: matches!(class, ChainClass::All),
            uses: Vec::with_capacity(64),
            unused: 0,
            marks: Vec::new(),
            mark_starts: Vec::new(),
            max_ones: Vec::with_capacity(64),
        }
    }

    fn push(&mut self, c: u64) {
        if self.track_use {
            self.mark_starts.push(self.marks.len());
            for i in (0..self.chain.len()).rev() {
                let x = self.chain[i];
                if 2 * x < c {
                    break;
                }
                if let Ok(j) = self.chain[..=i].binary_search(&(c - x)) {
                    self.mark(i);
                    if j != i {
                        self.mark(j);
                    }
                }
            }
            self.uses.push(0);
            self.unused += 1;
        }
        let m = *self.max_ones.last().unwrap();
        self.max_ones.push(m.max(c.count_ones()));
        self.chain.push(c);
    }

    fn mark(&mut self, i: usize) {
        if self.uses[i] == 0 {
            self.unused -= 1;
        }
        self.uses[i] += 1;
        self.marks.push(i as u32);
    }

    fn pop(&mut self) {
        self.chain.pop();
        self.max_ones.pop();
        if self.track_use {
            self.uses.pop();
            self.unused -= 1;
            let start = self.mark_starts.pop().unwrap();
            for k in start..self.marks.len() {
                let i = self.marks[k] as usize;
                self.uses[i] -= 1;
                if self.uses[i] == 0 {
                    self.unused += 1;
                }
            }
            self.marks.truncate(start);
        }
    }

    /// Is there a chain of exactly `depth` steps?
    fn run(&mut self, depth: u32) -> Result<bool, Exhausted> {
        self.chain.clear();
        self.chain.push(1);
        self.max_ones.clear();
        self.max_ones.push(1);
        self.uses.clear();
        self.uses.push(0);
        self.unused = 1;
        self.marks.clear();
        self.mark_starts.clear();
        if self.target == 1 {
            return Ok(depth == 0);
        }
        if depth == 0 {
            return Ok(false);
        }
        if self.scratch.len() < depth as usize + 1 {
            self.scratch.resize_with(depth as usize + 1, Vec::new);
        }
        self.expand(depth)
    }

    fn tick(&mut self) -> Result<(), Exhausted> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(Exhausted)
        } else {
            Ok(())
        }
    }

    /// One step left: can the target be written as a permitted sum?
    fn finish(&mut self) -> bool {
        let n = self.target;
        let top = *self.chain.last().unwrap();
        if n > 2 * top || (self.track_use && self.unused > 2) {
            return false;
        }
        let ok = match self.class {
            // The top and any other unused element must be summands.
            ChainClass::All => match self.unused_below_top() {
                (0, _) => n - top <= top && self.chain.binary_search(&(n - top)).is_ok(),
                (1, [u, _]) => n - top == u,
                _ => false,
            },
            ChainClass::Star => self.chain.binary_search(&(n - top)).is_ok(),
            ChainClass::Binary => {
                let b = self.binary.as_ref().unwrap();
                b.len() == self.chain.len() + 1 && b[..self.chain.len()] == self.chain[..]
            }
            ChainClass::Custom(_) => {
                let is_sum = self
                    .chain
                    .iter()
                    .any(|&x| x <= n && self.chain.binary_search(&(n - x)).is_ok());
                is_sum && self.class.accepts_small(&self.chain, n, n)
            }
        };
        if ok {
            self.chain.push(n);
        }
        ok
    }

    /// Two steps left: is there a permitted `c` with `target = c + y`,
    /// `y` in the chain or `y = c`? Only for the built-in unrestricted and
    /// star classes.
    fn finish_two(&mut self) -> Option<bool> {
        let n = self.target;
        let top = *self.chain.last().unwrap();
        if n > 4 * top {
            return Some(false);
        }
        let found = match self.class {
            ChainClass::All => self.finish_two_all(top),
            ChainClass::Star => self.chain.iter().rev().find_map(|&x| {
                let c = top + x;
                (c < n && (n == 2 * c || self.chain.binary_search(&(n - c)).is_ok())).then_some(c)
            }),
            _ => return None,
        };
        match found {
            Some(c) => {
                self.chain.push(c);
                self.chain.push(n);
                Some(true)
            }
            None => Some(false),
        }
    }

    /// The number of unused elements below the top and the first two of them.
    fn unused_below_top(&self) -> (u32, [u64; 2]) {
        let mut found = [0u64; 2];
        let mut count = 0;
        let last = self.chain.len() - 1;
        for i in 0..last {
            if self.uses[i] == 0 {
                if count < 2 {
                    found[count as usize] = self.chain[i];
                }
                count += 1;
            }
        }
        (count, found)
    }

    /// [`Self::finish_two`] for the unrestricted class: the middle element
    /// `c` is `top + y` or `target - top`, and every unused element must be
    /// a summand of `c` or of the target.
    fn finish_two_all(&self, top: u64) -> Option<u64> {
        let n = self.target;
        let chain = &self.chain;
        let has = |v: u64| chain.binary_search(&v).is_ok();
        let star = |y: u64| {
            let c = top + y;
            (c < n && (n - c == c || (n - c <= top && has(n - c)))).then_some(c)
        };
        let (count, [u1, u2]) = self.unused_below_top();
        let closing = n - top;
        let closing_ok = closing > top && closing <= 2 * top;
        match count {
            0 => {
                let a = chain.iter().rev().find_map(|&y| star(y));
                let b = (closing_ok && in_sumset(chain, closing)).then_some(closing);
                a.max(b)
            }
            1 => {
                let u = u1;
                let a = star(u);
                let b = (n > u && n - u > top && n - u - top <= top && has(n - u - top)).then_some(n - u);
                let c = (closing_ok && closing > u && closing - u <= top && has(closing - u)).then_some(closing);
                a.max(b).max(c)
            }
            2 => {
                let a = (top + u1 < n && n - top - u1 == u2).then_some(top + u1);
                let b = (top + u2 < n && n - top - u2 == u1).then_some(top + u2);
                let c = (closing_ok && closing == u1 + u2).then_some(closing);
                a.max(b).max(c)
            }
            _ => None,
        }
    }

    /// Tries every completion in `t` steps that uses exactly one
    /// non-doubling step, all others doubling the top. On success the chain
    /// is extended to the target.
    fn finish_with_one_nondoubling(&mut self, t: u32) -> bool {
        let m = self.target;
        let a = *self.chain.last().unwrap();
        let slack = m.trailing_zeros();
        let first = t.saturating_sub(slack).max(1);
        for j in first..=t {
            let c = m >> (t - j);
            let hit = if j == 1 {
                c > a
                    && c < 2 * a
                    && match self.class {
                        ChainClass::Star => self.chain.binary_search(&(c - a)).is_ok(),
                        _ => in_sumset(&self.chain, c),
                    }
            } else {
                if a.leading_zeros() < j {
                    break;
                }
                let top = a << (j - 1);
                if c <= top {
                    continue;
                }
                let y = c - top;
                // y must already be present: a chain element, or one of the
                // doublings a*2 .. a*2^(j-2) made on the way.
                y < top
                    && (self.chain.binary_search(&y).is_ok()
                        || (y.is_multiple_of(a) && (y / a).is_power_of_two() && y / a >= 2))
            };
            if hit {
                let mut x = a;
                for _ in 1..j {
                    x <<= 1;
                    self.chain.push(x);
                }
                let mut x = c;
                self.chain.push(x);
                for _ in j..t {
                    x <<= 1;
                    self.chain.push(x);
                }
                debug_assert_eq!(x, m);
                return true;
            }
        }
        false
    }

    /// Sums above `floor` (and above the top), largest first.
    fn candidates(&self, out: &mut Vec<u64>, floor: u64) {
        out.clear();
        let n = self.target;
        let top = *self.chain.last().unwrap();
        match self.class {
            ChainClass::Binary => {
                let b = self.binary.as_ref().unwrap();
                if let Some(&next) = b.get(self.chain.len()) {
                    out.push(next);
                }
                return;
            }
            ChainClass::Star => {
                for &x in self.chain.iter().rev() {
                    let s = top + x;
                    if s <= n {
                        out.push(s);
                    }
                }
                return;
            }
            ChainClass::All | ChainClass::Custom(_) => {}
        }
        let len = self.chain.len();
        let floor = top.max(floor);
        for i in (0..len).rev() {
            let hi = self.chain[i];
            if 2 * hi <= floor {
                break;
            }
            for j in (0..=i).rev() {
                let s = hi + self.chain[j];
                if s <= floor {
                    break;
                }
                if s <= n {
                    out.push(s);
                }
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out.dedup();
        if let ChainClass::Custom(_) = self.class {
            let chain = &self.chain;
            let class = self.class;
            out.retain(|&s| class.accepts_small(chain, s, n));
        }
    }

    fn expand(&mut self, remaining: u32) -> Result<bool, Exhausted> {
        self.tick()?;
        if remaining == 1 {
            return Ok(self.finish());
        }
        if remaining == 2 {
            if let Some(found) = self.finish_two() {
                return Ok(found);
            }
        }
        let n = self.target;
        let prev_top = *self.chain.last().unwrap();
        let depth = self.chain.len();
        let mut cands = std::mem::take(&mut self.scratch[depth]);
        let after = remaining - 1;
        // Below this no candidate can reach the target.
        let mut floor = if after >= 64 { 0 } else { (n - 1) >> after };
        if matches!(self.class, ChainClass::All | ChainClass::Star) && after < 64 {
            // Doubling straight to the target is the only way to finish from
            // `c` with `(c + top) 2^(after-1) < n`.
            if n.trailing_zeros() >= after && (n >> after) > prev_top {
                let d = n >> after;
                let ok = match self.class {
                    ChainClass::Star => self.chain.binary_search(&(d - prev_top)).is_ok(),
                    _ => in_sumset(&self.chain, d),
                };
                if ok {
                    self.chain.push(d);
                    for _ in 0..after {
                        let x = *self.chain.last().unwrap() << 1;
                        self.chain.push(x);
                    }
                    self.scratch[depth] = cands;
                    return Ok(true);
                }
            }
            let half = ((n - 1) >> (after - 1)) + 1;
            floor = floor.max(half.saturating_sub(prev_top + 1));
        }
        self.candidates(&mut cands, floor);

        let mut found = false;
        for &c in &cands {
            if c == n {
                self.chain.push(c);
                found = true;
                break;
            }
            if !reaches(c, after, n) {
                // Candidates are sorted descending; the rest fall short too.
                break;
            }
            if self.doubling_closed && after < 64 && c.leading_zeros() >= after && c << after == n {
                self.chain.push(c);
                for _ in 0..after {
                    let d = *self.chain.last().unwrap() << 1;
                    self.chain.push(d);
                }
                found = true;
                break;
            }
            // Each non-doubling step at most doubles the largest Hamming
            // weight, so reaching ones(n) forces a minimum number of them.
            let weight = (*self.max_ones.last().unwrap()).max(c.count_ones());
            let needed = nondoublings_needed(weight, n.count_ones()).max(1);
            if needed > after || !within_nondoubling(c, prev_top, after, needed, n) {
                continue;
            }
            let completions_only = after >= 2
                && self.doubling_closed
                && !matches!(self.class, ChainClass::Binary)
                && !within_nondoubling(c, prev_top, after, needed.max(2), n);
            if completions_only && needed > 1 {
                continue;
            }
            self.push(c);
            if completions_only {
                if self.finish_with_one_nondoubling(after) {
                    found = true;
                    break;
                }
                self.pop();
                continue;
            }
            // Every element but the target must feed a later step, and the
            // remaining steps offer 2*after slots for after-1 new elements.
            if self.track_use && self.unused > after + 1 {
                self.pop();
                continue;
            }
            // The smallest unused element `u` is first used by a step at
            // most `u + top`.
            if self.track_use && self.unused > 1 {
                let last = self.chain.len() - 1;
                let u = (0..last).find(|&i| self.uses[i] == 0).map(|i| self.chain[i]);
                if let Some(u) = u {
                    if !reaches(u + c, after - 1, n) {
                        self.pop();
                        continue;
                    }
                }
            }
            match self.expand(after) {
                Ok(true) => {
                    found = true;
                    break;
                }
                Ok(false) => {
                    self.pop();
                }
                Err(e) => {
                    self.scratch[depth] = cands;
                    return Err(e);
                }
            }
        }
        self.scratch[depth] = cands;
        Ok(found)
    }
}

/// Whether `v` is a sum of two (not necessarily distinct) elements of the
/// sorted slice.
#[inline]
fn in_sumset(sorted: &[u64], v: u64) -> bool {
    let Some(&top) = sorted.last() else {
        return false;
    };
    if v > 2 * top {
        return false;
    }
    let mut lo = sorted.partition_point(|&x| x + top < v);
    let mut hi = sorted.len() - 1;
    while lo <= hi {
        let s = sorted[lo] + sorted[hi];
        if s == v {
            return true;
        }
        if s < v {
            lo += 1;
        } else {
            if hi == 0 {
                return false;
            }
            hi -= 1;
        }
    }
    false
}

/// A chain class plus node budget plus a shared length cache.
#[derive(Debug, Clone)]
pub struct Engine {
    class: ChainClass,
    budget: u64,
    cache: Arc<LengthCache>,
}

impl Engine {
    pub fn new(class: ChainClass) -> Self {
        Engine {
            class,
            budget: DEFAULT_BUDGET,
            cache: Arc::new(LengthCache::new()),
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_cache(mut self, cache: Arc<LengthCache>) -> Self {
        self.cache = cache;
        self
    }

    pub fn class(&self) -> &ChainClass {
        &self.class
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn cache(&self) -> &Arc<LengthCache> {
        &self.cache
    }

    /// Full search with witness. Exact results are recorded in the cache.
    pub fn solve(&self, n: u64) -> Result<SearchOutcome, LabError> {
        self.solve_with_hint(n, None)
    }

    pub fn solve_with_hint(&self, n: u64, hint: Option<AdditionChain>) -> Result<SearchOutcome, LabError> {
        let outcome = shortest_length_with_hint(n, &self.class, self.budget, hint)?;
        if let Some(len) = outcome.length() {
            self.cache.insert(self.class.tag(), n, len)?;
        }
        Ok(outcome)
    }

    /// Exact length, from the cache when present.
    pub fn length(&self, n: u64) -> Result<u32, LabError> {
        if n == 0 {
            return Err(LabError::ZeroTarget);
        }
        if let Some(len) = self.cache.get(self.class.tag(), n) {
            return Ok(len);
        }
        self.solve(n)?.into_exact().map(|(len, _)| len)
    }

    /// Exact length of `n` given that some chain of length `ceiling` is
    /// known; only shorter depths are searched.
    pub fn length_with_ceiling(&self, n: u64, ceiling: u32) -> Result<u32, LabError> {
        if let Some(len) = self.cache.get(self.class.tag(), n) {
            return Ok(len);
        }
        let len = if ceiling == 0 {
            0
        } else {
            let outcome = length_at_most(n, &self.class, ceiling - 1, self.budget, StartDepth::LowerBound)?;
            match outcome.status {
                CappedStatus::Exact { length, .. } => length,
                CappedStatus::Exceeds { .. } => ceiling,
                CappedStatus::BudgetExhausted => {
                    return Err(LabError::BudgetExhausted {
                        n,
                        class: self.class.tag().to_string(),
                        upper_bound: ceiling,
                        nodes: outcome.nodes_expanded,
                    })
                }
            }
        };
        self.cache.insert(self.class.tag(), n, len)?;
        Ok(len)
    }

    /// `len(2^i n)` for `i = 0..=k`. Since `len(2x) <= len(x) + 1`, a
    /// stretch whose ends differ by exactly its number of doublings is
    /// determined by its ends; other stretches are bisected.
    pub fn doubling_lengths(&self, n: u64, k: u32) -> Result<Vec<u32>, LabError> {
        if n == 0 {
            return Err(LabError::ZeroTarget);
        }
        let top = n
            .checked_shl(k)
            .filter(|&m| m >> k == n && m < MAX_TARGET)
            .ok_or_else(|| LabError::TargetTooLarge(format!("{n} * 2^{k}")))?;
        let mut lens = vec![0u32; k as usize + 1];
        lens[0] = self.length(n)?;
        if k > 0 {
            lens[k as usize] = self.length_with_ceiling(top, lens[0] + k)?;
            self.fill_doublings(n, &mut lens, 0, k as usize)?;
        }
        Ok(lens)
    }

    fn fill_doublings(&self, n: u64, lens: &mut [u32], lo: usize, hi: usize) -> Result<(), LabError> {
        if hi - lo < 2 {
            return Ok(());
        }
        if lens[hi] as usize == lens[lo] as usize + (hi - lo) {
            for i in lo + 1..hi {
                lens[i] = lens[lo] + (i - lo) as u32;
                self.cache.insert(self.class.tag(), n << i, lens[i])?;
            }
            return Ok(());
        }
        let mid = (lo + hi) / 2;
        lens[mid] = self.length_with_ceiling(n << mid, lens[lo] + (mid - lo) as u32)?;
        self.fill_doublings(n, lens, lo, mid)?;
        self.fill_doublings(n, lens, mid, hi)
    }

    /// `Some(length)` if `n` has a chain of length at most `cap`, `None`
    /// otherwise. Exact lengths found on the way are cached. With
    /// [`StartDepth::Trivial`] the cache is bypassed, since its entries were
    /// derived with the 2.13 bound.
    pub fn capped(&self, n: u64, cap: u32, start: StartDepth) -> Result<Option<u32>, LabError> {
        if start == StartDepth::LowerBound {
            if let Some(len) = self.cache.get(self.class.tag(), n) {
                return Ok((len <= cap).then_some(len));
            }
        }
        let outcome = length_at_most(n, &self.class, cap, self.budget, start)?;
        match outcome.status {
            CappedStatus::Exact { length, .. } => {
                if start == StartDepth::LowerBound {
                    self.cache.insert(self.class.tag(), n, length)?;
                }
                Ok(Some(length))
            }
            CappedStatus::Exceeds { .. } => Ok(None),
            CappedStatus::BudgetExhausted => Err(LabError::BudgetExhausted {
                n,
                class: self.class.tag().to_string(),
                upper_bound: binary_length_u64(n),
                nodes: outcome.nodes_expanded,
            }),
        }
    }
}

/// `n` as a search target.
pub fn to_u64(n: &BigUint) -> Result<u64, LabError> {
    if n.is_zero() {
        return Err(LabError::ZeroTarget);
    }
    u64::try_from(n)
        .ok()
        .filter(|&v| v < MAX_TARGET)
        .ok_or_else(|| LabError::TargetTooLarge(n.to_string()))
}
