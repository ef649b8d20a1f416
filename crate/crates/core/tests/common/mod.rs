//! Slow, independent reference implementations used only by tests.

#![allow(dead_code)]

use bordersub::tensor::all_triples;
use bordersub::{Support, Triple};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every support of format `n` with at most `max_len` triples.
pub fn supports_up_to(n: usize, max_len: usize) -> Vec<Support> {
    let all: Vec<Triple> = all_triples(n).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << all.len()) {
        if mask.count_ones() as usize > max_len {
            continue;
        }
        let picked = all.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &t)| t);
        out.push(Support::new(n, picked).unwrap());
    }
    out
}

/// `count` seeded supports of format `n` with sizes uniform in `0..=max_len`.
pub fn random_supports(n: usize, count: usize, max_len: usize, seed: u64) -> Vec<Support> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<Triple> = all_triples(n).collect();
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            Support::new(n, all.choose_multiple(&mut rng, len).copied()).unwrap()
        })
        .collect()
}

/// Exhaustive search for injective integer gradings with free values in
/// `[-(3n)², (3n)²]`. `τ_A(1) = τ_B(1) = 0` by translation.
pub fn tight_by_search(s: &Support) -> bool {
    let n = s.n();
    let triples: Vec<[usize; 3]> = s.iter().map(|(i, j, k)| [i - 1, n + j - 1, 2 * n + k - 1]).collect();
    for (x, t) in triples.iter().enumerate() {
        for u in &triples[x + 1..] {
            if (0..3).filter(|&c| t[c] != u[c]).count() == 1 {
                return false;
            }
        }
    }
    // order variables so each one shares a triple with earlier ones when possible
    let mut order = vec![0];
    while order.len() < 3 * n {
        let score = |v: usize| triples.iter().filter(|t| t.contains(&v) && t.iter().any(|w| order.contains(w))).count();
        let next = (0..3 * n).filter(|v| !order.contains(v)).max_by_key(|&v| (score(v), std::cmp::Reverse(v))).unwrap();
        order.push(next);
    }
    let bound = (9 * n * n) as i64;
    search(n, &triples, &order, vec![None; 3 * n], bound)
}

fn consistent(n: usize, vals: &mut [Option<i64>], triples: &[[usize; 3]]) -> bool {
    loop {
        let mut changed = false;
        for t in triples {
            let known: Vec<usize> = t.iter().copied().filter(|&v| vals[v].is_some()).collect();
            match known.len() {
                3 => {
                    if t.iter().map(|&v| vals[v].unwrap()).sum::<i64>() != 0 {
                        return false;
                    }
                }
                2 => {
                    let free = *t.iter().find(|&&v| vals[v].is_none()).unwrap();
                    vals[free] = Some(-known.iter().map(|&v| vals[v].unwrap()).sum::<i64>());
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    for block in 0..3 {
        let mut seen: Vec<i64> = (0..n).filter_map(|p| vals[block * n + p]).collect();
        let len = seen.len();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != len {
            return false;
        }
    }
    true
}

fn search(n: usize, triples: &[[usize; 3]], order: &[usize], mut vals: Vec<Option<i64>>, bound: i64) -> bool {
    if !consistent(n, &mut vals, triples) {
        return false;
    }
    let Some(&var) = order.iter().find(|&&v| vals[v].is_none()) else {
        return true;
    };
    let candidates: Vec<i64> = if var == 0 || var == n {
        vec![0]
    } else {
        std::iter::once(0).chain((1..=bound).flat_map(|v| [v, -v])).collect()
    };
    let block = var / n;
    for c in candidates {
        if (0..n).any(|p| vals[block * n + p] == Some(c)) {
            continue;
        }
        let mut next = vals.clone();
        next[var] = Some(c);
        if search(n, triples, order, next, bound) {
            return true;
        }
    }
    false
}
