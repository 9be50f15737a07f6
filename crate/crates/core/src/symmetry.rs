//! Mirror symmetry of the generation order and the transition weights
//! between consecutive permutations.
//!
//! Ranks `a` and `n! - 1 - a` hold mirror-image permutations, so the
//! concatenation of all of `S_n` in rank order is a palindrome. Consecutive
//! permutations factor as `p_a = rev(A) B` and `p_{a+1} = B A`; the length
//! of `A` is the *weight* of the transition, and the sequence of all
//! weights is the ruler sequence.
//!
//! ```
//! use shiftrank::symmetry::ruler_sequence;
//!
//! let ruler = ruler_sequence(4, 10).unwrap();
//! assert_eq!(ruler.run_length(), "1^3 2 1^3 2 1^3 3 1^3 2 1^3 2 1^3");
//! assert_eq!(ruler.total(), 29);
//! ```

use std::collections::BTreeMap;
use std::thread;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::codec::{generate_all, rank_to_perm};
use crate::error::{Error, Result};
use crate::orbits::{terminal_level_of_code, trailing_max_digits};
use crate::perm::{Permutation, Word};
use crate::radix::{factorial, factorial_u64, PiNumber};

/// Default cap on the order of [`palindrome_word`] (`9 * 9!` symbols).
pub const PALINDROME_MAX_ORDER: usize = 9;

/// Default cap on the order of a materialised [`RulerSequence`].
pub const RULER_MAX_ORDER: usize = 10;

/// Rank of the mirror image: `(n! - 1) - a`.
pub fn mirror_rank(n: usize, a: &BigUint) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Order { n, min: 1 });
    }
    let total = factorial(n);
    if *a >= total {
        return Err(Error::RankOutOfRange { n, rank: a.clone() });
    }
    Ok(total - 1u32 - a)
}

/// All of `S_n` concatenated in rank order.
pub fn palindrome_word(n: usize, cap: usize) -> Result<Word> {
    if n > cap {
        return Err(Error::ResourceCap {
            what: "palindrome word",
            n,
            cap,
        });
    }
    let mut symbols = Vec::with_capacity(n * factorial_u64(n).unwrap_or(0) as usize);
    for item in generate_all(n)? {
        symbols.extend_from_slice(item.perm.symbols());
    }
    let word = Word::new(n, symbols);
    if !word.is_palindrome() {
        return Err(Error::LawViolation(format!(
            "concatenation of S_{n} is not a palindrome"
        )));
    }
    Ok(word)
}

/// The factorisation `p_a = rev(A) B`, `p_{a+1} = B A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitAb {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

impl SplitAb {
    /// `rev(A) B`, which equals `p_a`.
    pub fn current(&self) -> Vec<u32> {
        self.a.iter().rev().chain(&self.b).copied().collect()
    }

    /// `B A`, which equals `p_{a+1}`.
    pub fn next(&self) -> Vec<u32> {
        self.b.iter().chain(&self.a).copied().collect()
    }

    pub fn weight(&self) -> usize {
        self.a.len()
    }
}

fn successor_code(n: usize, a: &BigUint) -> Result<PiNumber> {
    if n < 2 {
        return Err(Error::Order { n, min: 2 });
    }
    let code = PiNumber::encode(n, a)?;
    if code.is_max() {
        return Err(Error::NoSuccessor { n, rank: a.clone() });
    }
    Ok(code)
}

/// Weight of the transition `a -> a + 1`, read off the digits: one more
/// than the number of low digits at their maximum.
pub fn transition_weight(n: usize, a: &BigUint) -> Result<usize> {
    Ok(trailing_max_digits(&successor_code(n, a)?) + 1)
}

/// Splits `p_a` and `p_{a+1}` into the words `A` and `B`.
pub fn split_ab(n: usize, a: &BigUint) -> Result<SplitAb> {
    let code = successor_code(n, a)?;
    let k = terminal_level_of_code(&code).level;
    let current = rank_to_perm(n, a)?;
    let next = rank_to_perm(n, &(a + 1u32))?;
    let (b, tail) = next.symbols().split_at(n - k - 1);
    let split = SplitAb {
        a: tail.to_vec(),
        b: b.to_vec(),
    };
    if split.current() != current.symbols() || split.next() != next.symbols() {
        return Err(Error::LawViolation(format!(
            "p_{a} = {current} and p_{} = {next} do not factor as rev(A)B / BA with |A| = {}",
            a + 1u32,
            k + 1
        )));
    }
    Ok(split)
}

/// The `n! - 1` transition weights of `S_n`, each in `1..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RulerSequence {
    n: usize,
    weights: Vec<u8>,
}

/// Weights for the transitions `start -> start + 1, ..., end - 1 -> end`,
/// `end <= n! - 1`. Chunks over disjoint ranges are independent.
pub fn ruler_chunk(n: usize, start: u64, end: u64) -> Result<Vec<u8>> {
    if n < 2 {
        return Err(Error::Order { n, min: 2 });
    }
    let last = factorial_u64(n).ok_or(Error::ResourceCap {
        what: "ruler chunk",
        n,
        cap: crate::radix::FAST_PATH_MAX_ORDER,
    })? - 1;
    if end > last {
        return Err(Error::RankOutOfRange {
            n,
            rank: BigUint::from(end),
        });
    }
    if start >= end {
        return Ok(Vec::new());
    }
    let mut code = PiNumber::encode_u64(n, start)?;
    Ok((start..end)
        .map(|_| (code.increment_in_place() + 1) as u8)
        .collect())
}

/// The ruler sequence of order `n`, materialised and validated.
pub fn ruler_sequence(n: usize, cap: usize) -> Result<RulerSequence> {
    ruler_sequence_chunked(n, cap, 1)
}

/// As [`ruler_sequence`], evaluated on `threads` disjoint rank ranges in
/// parallel. The result does not depend on `threads`.
pub fn ruler_sequence_chunked(n: usize, cap: usize, threads: usize) -> Result<RulerSequence> {
    if n < 2 {
        return Err(Error::Order { n, min: 2 });
    }
    if n > cap {
        return Err(Error::ResourceCap {
            what: "ruler sequence",
            n,
            cap,
        });
    }
    let len = factorial_u64(n).expect("capped order") - 1;
    let threads = threads.max(1) as u64;
    let step = len.div_ceil(threads).max(1);
    let bounds: Vec<(u64, u64)> = (0..len)
        .step_by(step as usize)
        .map(|s| (s, (s + step).min(len)))
        .collect();
    let chunks: Vec<Result<Vec<u8>>> = if bounds.len() <= 1 {
        bounds.iter().map(|&(s, e)| ruler_chunk(n, s, e)).collect()
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = bounds
                .iter()
                .map(|&(s, e)| scope.spawn(move || ruler_chunk(n, s, e)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("ruler worker panicked"))
                .collect()
        })
    };
    let mut weights = Vec::with_capacity(len as usize);
    for chunk in chunks {
        weights.extend(chunk?);
    }
    let ruler = RulerSequence { n, weights };
    ruler.validate()?;
    Ok(ruler)
}

impl RulerSequence {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[u8] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_palindrome(&self) -> bool {
        self.weights.iter().eq(self.weights.iter().rev())
    }

    pub fn total(&self) -> u64 {
        self.weights.iter().map(|&w| w as u64).sum()
    }

    /// Histogram obtained by counting the weights.
    pub fn histogram(&self) -> WeightHistogram {
        let mut counts: BTreeMap<usize, BigUint> = BTreeMap::new();
        for &w in &self.weights {
            *counts.entry(w as usize).or_default() += 1u32;
        }
        WeightHistogram {
            n: self.n,
            counts,
            total: BigUint::from(self.total()),
        }
    }

    /// Checks length, palindrome, histogram and sum laws.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        let expected_len = factorial(n) - 1u32;
        if BigUint::from(self.len()) != expected_len {
            return Err(Error::LawViolation(format!(
                "ruler sequence of order {n} has {} terms, expected {expected_len}",
                self.len()
            )));
        }
        if let Some(i) = (0..self.len()).find(|&i| self.weights[i] != self.weights[self.len() - 1 - i])
        {
            return Err(Error::LawViolation(format!(
                "ruler sequence of order {n} is not a palindrome (index {i})"
            )));
        }
        let counted = self.histogram();
        let formula = weight_histogram(n)?;
        if counted != formula {
            return Err(Error::LawViolation(format!(
                "weight histogram {counted:?} differs from {formula:?}"
            )));
        }
        Ok(())
    }

    /// Run-length form, e.g. `1^2 2 1^2` for `n = 3`.
    pub fn run_length(&self) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.weights.len() {
            let w = self.weights[i];
            let run = self.weights[i..].iter().take_while(|&&x| x == w).count();
            parts.push(if run == 1 {
                w.to_string()
            } else {
                format!("{w}^{run}")
            });
            i += run;
        }
        parts.join(" ")
    }
}

/// `W_n = 1! + 2! + ... + n! - n`, the sum of the ruler sequence.
pub fn ruler_total(n: usize) -> BigUint {
    let sum: BigUint = (1..=n).map(factorial).sum();
    sum - BigUint::from(n)
}

/// Count of each weight in the ruler sequence, and their weighted sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightHistogram {
    pub n: usize,
    #[serde(serialize_with = "serialize_counts")]
    pub counts: BTreeMap<usize, BigUint>,
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub total: BigUint,
}

fn serialize_counts<S: serde::Serializer>(
    counts: &BTreeMap<usize, BigUint>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = serializer.serialize_map(Some(counts.len()))?;
    for (k, v) in counts {
        match v.to_u64() {
            Some(small) => map.serialize_entry(&k.to_string(), &small)?,
            None => map.serialize_entry(&k.to_string(), &v.to_string())?,
        }
    }
    map.end()
}

/// The histogram predicted in closed form: weight `k` occurs
/// `(n-k) (n-k)!` times for `k = 1..n-1`; total `W_n`.
pub fn weight_histogram(n: usize) -> Result<WeightHistogram> {
    if n < 2 {
        return Err(Error::Order { n, min: 2 });
    }
    let counts: BTreeMap<usize, BigUint> = (1..n)
        .map(|k| (k, factorial(n - k) * (n - k) as u64))
        .collect();
    let total = counts
        .iter()
        .map(|(&k, c)| c * k as u64)
        .fold(BigUint::zero(), |acc, x| acc + x);
    Ok(WeightHistogram { n, counts, total })
}

/// `true` when `p` and `q` are mirror images.
pub fn are_mirrors(p: &Permutation, q: &Permutation) -> bool {
    p.mirror() == *q
}
