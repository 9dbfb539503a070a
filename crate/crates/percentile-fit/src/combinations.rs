//! Lexicographic enumeration of k-element index subsets.
//!
//! Subsets are streamed through a single reusable buffer; nothing is
//! materialized in bulk. `from_rank` jumps to an arbitrary position, which is
//! what lets the solvers split an enumeration into chunks for worker threads
//! while keeping the visit order of each chunk fixed.

/// Number of k-subsets of an n-set, saturating at `u128::MAX` on overflow.
pub fn count(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 1..=k {
        // result * (n - k + i) stays integral at every step.
        match result.checked_mul((n - k + i) as u128) {
            Some(v) => result = v / i as u128,
            None => return u128::MAX,
        }
    }
    result
}

/// Streaming iterator over k-subsets of `{0, .., n-1}` in lexicographic order.
pub struct Combinations {
    n: usize,
    k: usize,
    item: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            k,
            item: (0..k).collect(),
            done: k > n,
        }
    }

    /// Iterator positioned at the combination with lexicographic rank `rank`.
    /// `rank` must be below `count(n, k)`.
    pub fn from_rank(n: usize, k: usize, rank: u128) -> Self {
        debug_assert!(rank < count(n, k).max(1) || (k > n && rank == 0));
        let mut item = vec![0usize; k];
        let mut remaining = rank;
        let mut candidate = 0usize;
        for i in 0..k {
            loop {
                let with_candidate = count(n - 1 - candidate, k - 1 - i);
                if remaining < with_candidate {
                    item[i] = candidate;
                    candidate += 1;
                    break;
                }
                remaining -= with_candidate;
                candidate += 1;
            }
        }
        Self {
            n,
            k,
            item,
            done: k > n,
        }
    }

    /// The combination the iterator currently points at, or `None` when
    /// exhausted.
    pub fn current(&self) -> Option<&[usize]> {
        if self.done {
            None
        } else {
            Some(&self.item)
        }
    }

    /// Steps to the next combination in lexicographic order.
    pub fn advance(&mut self) {
        if self.done {
            return;
        }
        if self.k == 0 {
            self.done = true;
            return;
        }
        // Rightmost position that can still move up.
        let mut i = self.k;
        while i > 0 {
            i -= 1;
            if self.item[i] < self.n - self.k + i {
                self.item[i] += 1;
                for j in i + 1..self.k {
                    self.item[j] = self.item[j - 1] + 1;
                }
                return;
            }
        }
        self.done = true;
    }
}
