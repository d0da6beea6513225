//! Set partitions as restricted growth strings.
//!
//! A partition of `{0, …, n−1}` is stored as `a` with `a[0] = 0` and
//! `a[i] ≤ max(a[..i]) + 1`; `a[i]` is the block of element `i`. Iteration
//! is in lexicographic order of these strings, which fixes the tie-break
//! used by callers that search over partitions.

use std::fmt;

use crate::error::{Error, Result};

/// Exhaustive search is capped at this many elements.
pub const MAX_ELEMENTS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition {
    rgs: Vec<u8>,
    blocks: usize,
}

impl SetPartition {
    pub fn growth_string(&self) -> &[u8] {
        &self.rgs
    }

    pub fn n_blocks(&self) -> usize {
        self.blocks
    }

    /// Blocks of 0-based element indices, in order of first appearance.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (i, &b) in self.rgs.iter().enumerate() {
            out[b as usize].push(i);
        }
        out
    }

    /// Bitmask of each block.
    pub fn block_masks(&self) -> Vec<usize> {
        let mut out = vec![0usize; self.blocks];
        for (i, &b) in self.rgs.iter().enumerate() {
            out[b as usize] |= 1 << i;
        }
        out
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(|i| (i + 1).to_string()).collect::<String>())
            .collect();
        write!(f, "{{{}}}", parts.join("|"))
    }
}

/// Iterator over partitions of `n` elements with at most `max_blocks` blocks.
#[derive(Clone, Debug)]
pub struct Partitions {
    rgs: Vec<u8>,
    /// `prefix_max[i] = max(rgs[..=i])`
    prefix_max: Vec<u8>,
    max_blocks: u8,
    done: bool,
}

impl Iterator for Partitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let n = self.rgs.len();
        let current = SetPartition {
            rgs: self.rgs.clone(),
            blocks: self.prefix_max[n - 1] as usize + 1,
        };
        // advance: rightmost position that can still grow
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            let limit = (self.prefix_max[i - 1] + 1).min(self.max_blocks - 1);
            if self.rgs[i] < limit {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                break;
            }
        }
        Some(current)
    }
}

/// Every set partition of `n` elements into at most `max_blocks` blocks,
/// each exactly once, in lexicographic growth-string order.
pub fn enumerate_partitions(n: usize, max_blocks: usize) -> Result<Partitions> {
    if n > MAX_ELEMENTS {
        return Err(Error::TooLarge(format!("{n} elements exceeds the limit of {MAX_ELEMENTS}")));
    }
    if n == 0 || max_blocks == 0 || max_blocks > n {
        return Err(Error::InvalidPartition(format!(
            "need 1 <= max_blocks <= n, got n = {n}, max_blocks = {max_blocks}"
        )));
    }
    Ok(Partitions {
        rgs: vec![0; n],
        prefix_max: vec![0; n],
        max_blocks: max_blocks as u8,
        done: false,
    })
}
