//! Independent exhaustive oracles: plain iterative deepening over strictly
//! increasing chains, pruned only by "doubling the top element each remaining
//! step must reach n". Shares no code with the engine.

#![allow(dead_code)]

/// Explores every strictly increasing chain of length at most `depth`.
fn extend(chain: &mut Vec<u64>, depth: usize, n: u64, star: bool) -> bool {
    let last = *chain.last().unwrap();
    if last == n {
        return true;
    }
    let steps = chain.len() - 1;
    if steps == depth {
        return false;
    }
    let remaining = (depth - steps) as u32;
    if last.checked_shl(remaining).is_some_and(|top| top < n) {
        return false;
    }
    let len = chain.len();
    let first = if star { len - 1 } else { 0 };
    let mut tried: Vec<u64> = Vec::new();
    for i in (first..len).rev() {
        for j in (0..=i).rev() {
            let s = chain[i] + chain[j];
            if s <= last {
                break;
            }
            if s > n || tried.contains(&s) {
                continue;
            }
            tried.push(s);
            chain.push(s);
            if extend(chain, depth, n, star) {
                return true;
            }
            chain.pop();
        }
    }
    false
}

fn search(n: u64, star: bool) -> Vec<u64> {
    assert!(n >= 1);
    let mut depth = (64 - (n - 1).leading_zeros()) as usize;
    if n == 1 {
        depth = 0;
    }
    loop {
        let mut chain = vec![1];
        if extend(&mut chain, depth, n, star) {
            return chain;
        }
        depth += 1;
    }
}

/// A shortest addition chain for `n`.
pub fn oracle_chain(n: u64) -> Vec<u64> {
    search(n, false)
}

pub fn oracle_length(n: u64) -> u32 {
    (oracle_chain(n).len() - 1) as u32
}

pub fn oracle_star_length(n: u64) -> u32 {
    (search(n, true).len() - 1) as u32
}

/// `table[n]` is the shortest length of `n`; `table[0]` is unused.
pub fn oracle_table(max: u64) -> Vec<u32> {
    let mut table = vec![0];
    table.extend((1..=max).map(oracle_length));
    table
}

/// Checks the defining property of an addition chain directly.
pub fn is_addition_chain(chain: &[u64]) -> bool {
    chain.first() == Some(&1)
        && (1..chain.len()).all(|k| {
            chain[..k]
                .iter()
                .any(|&a| chain[..k].iter().any(|&b| a + b == chain[k]))
        })
}

