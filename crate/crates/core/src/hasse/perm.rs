//! Permutations with per-position lower bounds, and restricted compositions.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::ceil_div;

/// A permutation of `0..n` (as images `τ(0), ..., τ(n-1)`) with its sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    pub images: Vec<usize>,
    pub sign: i8,
}

/// All permutations `τ` of `0..n` with `τ(l) >= lower[l]`, by backtracking over
/// the per-position candidate lists. Output is in lexicographic order.
pub fn bounded_permutations(lower: &[i64]) -> Vec<SignedPerm> {
    let n = lower.len();
    let mut out = Vec::new();
    let mut images = vec![0usize; n];
    let mut used = vec![false; n];
    backtrack(lower, 0, &mut images, &mut used, &mut out);
    out
}

fn backtrack(lower: &[i64], l: usize, images: &mut [usize], used: &mut [bool], out: &mut Vec<SignedPerm>) {
    let n = lower.len();
    if l == n {
        out.push(SignedPerm { images: images.to_vec(), sign: sign_of(images) });
        return;
    }
    let start = lower[l].max(0) as usize;
    for v in start..n {
        if used[v] {
            continue;
        }
        used[v] = true;
        images[l] = v;
        backtrack(lower, l + 1, images, used, out);
        used[v] = false;
    }
}

pub fn sign_of(images: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] > images[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Vectors `(n_1, ..., n_d)` with `Σ j n_j = big_n` and `Σ n_j = ⌈big_n / d⌉`.
pub fn restricted_compositions(big_n: u64, d: u64) -> Vec<Vec<u64>> {
    let parts = ceil_div(big_n as i64, d as i64) as u64;
    let mut out = Vec::new();
    let mut cur = vec![0u64; d as usize];
    compose(d, big_n, parts, &mut cur, &mut out);
    out.sort();
    out
}

// Choose n_j for j = top, top-1, ..., 1.
fn compose(top: u64, rest: u64, parts: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if top == 1 {
        if rest == parts {
            cur[0] = rest;
            out.push(cur.clone());
            cur[0] = 0;
        }
        return;
    }
    // the remaining parts are each at most top - 1
    for nj in 0..=(rest / top).min(parts) {
        let (r, k) = (rest - top * nj, parts - nj);
        if r < k || r > k * (top - 1) {
            continue;
        }
        cur[top as usize - 1] = nj;
        compose(top - 1, r, k, cur, out);
        cur[top as usize - 1] = 0;
    }
}
