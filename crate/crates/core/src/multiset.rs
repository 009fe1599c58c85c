//! Multisets of a fixed size drawn from `0..n`.

use alloc::vec;
use alloc::vec::Vec;

/// Number of multisets of size `k` from `n` kinds, `C(n + k - 1, k)`.
///
/// Saturates at `u128::MAX`.
pub fn multiset_count(n: u64, k: u64) -> u128 {
    if k == 0 {
        return 1;
    }
    if n == 0 {
        return 0;
    }
    // C(n - 1 + k, k) built up as a product of exact partial binomials.
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        let num = (n as u128 - 1) + i;
        acc = match acc.checked_mul(num) {
            Some(v) => v / i,
            None => return u128::MAX,
        };
    }
    acc
}

/// Iterator over all multisets of size `k` from `0..n`, as nondecreasing
/// index vectors in lexicographic order.
#[derive(Debug, Clone)]
pub struct Multisets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Multisets {
    pub fn new(n: usize, k: usize) -> Self {
        let current = if n == 0 && k > 0 {
            None
        } else {
            Some(vec![0; k])
        };
        Multisets { n, current }
    }
}

impl Iterator for Multisets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut i = next.len();
        while i > 0 {
            i -= 1;
            if next[i] + 1 < self.n {
                let v = next[i] + 1;
                for slot in &mut next[i..] {
                    *slot = v;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}
