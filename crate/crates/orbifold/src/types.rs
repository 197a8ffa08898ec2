//! Dimension-type sequences and their enumeration.
//!
//! A type of dimension n is the nonincreasing integer sequence
//! (d_0, d'_1, d_1, ..., d'_n, d_n) with d_0 = n generated by: either the
//! whole tail is constant (d'_1 = d_1 = c), or there is a strict first step
//! n >= d'_1 > d_1 followed by the tail of a type of dimension d_1, padded
//! to full length with its final value.

use num::bigint::BigInt;

use crate::error::{Error, Result};

/// Largest dimension the enumerator accepts; the counts grow like the
/// even-indexed Fibonacci numbers.
pub const MAX_ENUMERATION_DIM: u32 = 14;

/// A validated type sequence of length 2n+1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TypeSequence {
    entries: Vec<u32>,
}

impl TypeSequence {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() || entries.len().is_multiple_of(2) {
            return Err(Error::InvalidModel(format!(
                "a type sequence has odd length 2n+1, got {} entries",
                entries.len()
            )));
        }
        let n = entries[0];
        if entries.len() != 2 * n as usize + 1 {
            return Err(Error::InvalidModel(format!(
                "head {} needs {} entries, got {}",
                n,
                2 * n + 1,
                entries.len()
            )));
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidModel(
                "type sequence must be nonincreasing".into(),
            ));
        }
        if !grammar_accepts(&entries) {
            return Err(Error::InvalidModel(format!(
                "sequence {:?} is not generated by the type grammar",
                entries
            )));
        }
        Ok(TypeSequence { entries })
    }

    pub fn dimension(&self) -> u32 {
        self.entries[0]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// The number of genuine steps before the sequence stabilizes at its
    /// final value: the least k with d_k = d_n (d_k sits at index 2k).
    pub fn length(&self) -> u32 {
        let last = *self.entries.last().expect("sequence is nonempty");
        (0..=self.dimension())
            .find(|k| self.entries[2 * *k as usize] == last)
            .expect("d_n equals itself")
    }
}

impl std::fmt::Display for TypeSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> =
            self.entries.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn grammar_accepts(entries: &[u32]) -> bool {
    let n = entries[0] as usize;
    if n == 0 {
        return entries == [0];
    }
    let (d1_prime, d1) = (entries[1], entries[2]);
    if d1_prime == d1 {
        return entries[3..].iter().all(|&e| e == d1);
    }
    // Strict step: recurse into the flattened dimension-d1 tail.
    debug_assert!(d1_prime > d1);
    let tail_len = 2 * d1 as usize;
    let mut candidate = Vec::with_capacity(tail_len + 1);
    candidate.push(d1);
    candidate.extend_from_slice(&entries[3..3 + tail_len]);
    if !grammar_accepts(&candidate) {
        return false;
    }
    let last = *candidate.last().expect("candidate is nonempty");
    entries[3 + tail_len..].iter().all(|&e| e == last)
}

/// Number of types of dimension n: c(0) = 1, c(1) = 3,
/// c(n+1) = 3c(n) - c(n-1).
pub fn count_types(n: u32) -> BigInt {
    let mut prev = BigInt::from(1);
    let mut cur = BigInt::from(3);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = BigInt::from(3) * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// All types of dimension n in ascending lexicographic order.
pub fn enumerate_types(n: u32) -> Result<Vec<TypeSequence>> {
    if n > MAX_ENUMERATION_DIM {
        return Err(Error::DimensionTooLarge(n));
    }
    // Bottom-up over dimensions: lists[d] holds the raw sequences of
    // dimension d.
    let mut lists: Vec<Vec<Vec<u32>>> = Vec::with_capacity(n as usize + 1);
    for dim in 0..=n {
        let full_len = 2 * dim as usize + 1;
        let mut out: Vec<Vec<u32>> = Vec::new();
        if dim == 0 {
            out.push(vec![0]);
        } else {
            for c in 0..=dim {
                let mut seq = vec![c; full_len];
                seq[0] = dim;
                out.push(seq);
            }
            for d1_prime in 1..=dim {
                for d1 in 0..d1_prime {
                    for tail in &lists[d1 as usize] {
                        let mut seq = Vec::with_capacity(full_len);
                        seq.push(dim);
                        seq.push(d1_prime);
                        seq.extend_from_slice(tail);
                        let last = *tail.last().expect("tail is nonempty");
                        seq.resize(full_len, last);
                        out.push(seq);
                    }
                }
            }
        }
        lists.push(out);
    }
    let mut raw = lists.pop().expect("list for dimension n was built");
    raw.sort();
    Ok(raw
        .into_iter()
        .map(|entries| TypeSequence { entries })
        .collect())
}
