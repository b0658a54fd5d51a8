use crate::error::{Error, Result};

/// Default limit on `C(n, f)` per side of a game matrix.
pub const DEFAULT_ENUM_CAP: usize = 10_000;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Bijection between ranks `0..C(n, f)` and the `f`-subsets of `0..n` in
/// lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetIndex {
    n: usize,
    f: usize,
    count: usize,
}

impl SubsetIndex {
    pub fn new(n: usize, f: usize, cap: usize) -> Result<Self> {
        if f == 0 || f > n {
            return Err(Error::config(format!(
                "budget f = {f} must satisfy 1 <= f <= n = {n}"
            )));
        }
        let count = binomial(n, f);
        if count > cap as u128 {
            return Err(Error::EnumerationLimit { n, f, count, cap });
        }
        Ok(SubsetIndex {
            n,
            f,
            count: count as usize,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Rank of a sorted subset.
    pub fn rank(&self, subset: &[usize]) -> usize {
        debug_assert_eq!(subset.len(), self.f);
        let mut r = 0u128;
        let mut next = 0;
        for (pos, &c) in subset.iter().enumerate() {
            for v in next..c {
                r += binomial(self.n - 1 - v, self.f - 1 - pos);
            }
            next = c + 1;
        }
        r as usize
    }

    pub fn unrank(&self, mut r: usize) -> Vec<usize> {
        debug_assert!(r < self.count);
        let mut out = Vec::with_capacity(self.f);
        let mut v = 0;
        for pos in 0..self.f {
            loop {
                let block = binomial(self.n - 1 - v, self.f - 1 - pos) as usize;
                if r < block {
                    break;
                }
                r -= block;
                v += 1;
            }
            out.push(v);
            v += 1;
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.count).map(|r| self.unrank(r))
    }
}
