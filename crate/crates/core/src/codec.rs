//! The bijection between ranks in `Z_{n!}` and permutations generated by
//! cyclic shift.
//!
//! Digit `α_i` of a rank is the exponent of the cyclic shift that inserted
//! symbol `n - i`. Unranking starts from `(1)` and applies the shifts from
//! the most significant digit down; ranking peels the top symbol off and
//! reads its right-counted position.
//!
//! ```
//! use num_bigint::BigUint;
//! use shiftrank::codec::{perm_to_rank, rank_to_perm};
//!
//! let p = rank_to_perm(5, &BigUint::from(84u32)).unwrap();
//! assert_eq!(p.to_string(), "51324");
//!
//! let ranked = perm_to_rank(&"42315".parse().unwrap());
//! assert_eq!(ranked.rank, BigUint::from(35u32));
//! assert_eq!(ranked.code.to_string(), "0130");
//! ```

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::radix::{factorial, PiNumber};

/// Largest order [`oracle_generate`] will materialise.
pub const ORACLE_MAX_ORDER: usize = 9;

/// A permutation together with its rank and the digits of that rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankedPermutation {
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub rank: BigUint,
    pub code: PiNumber,
    pub perm: Permutation,
}

/// Builds the permutation whose shift exponents are the digits of `code`.
pub fn code_to_perm(code: &PiNumber) -> Permutation {
    let n = code.order();
    let mut symbols = Vec::with_capacity(n);
    symbols.push(1);
    for i in (0..n - 1).rev() {
        symbols.push((n - i) as u32);
        symbols.rotate_left(code.digit(i) as usize);
    }
    Permutation::from_symbols_unchecked(symbols)
}

/// The permutation of rank `a` in `S_n`.
pub fn rank_to_perm(n: usize, a: &BigUint) -> Result<Permutation> {
    match n {
        0 => Err(Error::Order { n, min: 1 }),
        1 if a.is_zero() => Ok(Permutation::identity(1)),
        1 => Err(Error::RankOutOfRange { n, rank: a.clone() }),
        _ => Ok(code_to_perm(&PiNumber::encode(n, a)?)),
    }
}

pub fn rank_to_perm_u64(n: usize, a: u64) -> Result<Permutation> {
    rank_to_perm(n, &BigUint::from(a))
}

/// Reads the shift exponents of `p`, from the top symbol down.
pub fn perm_to_code(p: &Permutation) -> PiNumber {
    let n = p.order();
    if n == 1 {
        return PiNumber::trivial();
    }
    let mut symbols = p.symbols().to_vec();
    let mut digits = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let m = n - i;
        let index = symbols
            .iter()
            .position(|&s| s as usize == m)
            .expect("top symbol present");
        let position = m - 1 - index;
        digits.push(position as u32);
        symbols.rotate_left((m - position) % m);
        symbols.pop();
    }
    PiNumber::from_digits(n, digits).expect("positions are valid digits")
}

/// Rank and code of `p`; the inverse of [`rank_to_perm`].
pub fn perm_to_rank(p: &Permutation) -> RankedPermutation {
    let code = perm_to_code(p);
    RankedPermutation {
        rank: code.decode(),
        code,
        perm: p.clone(),
    }
}

/// How [`Generator`] produces each successive permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GenerationMode {
    /// Increment the code and rebuild only the levels whose exponent changed.
    #[default]
    Incremental,
    /// Unrank every rank from scratch. Reference path.
    Naive,
}

/// Pull-based stream of `S_n` in rank order over a half-open rank range.
///
/// The generator keeps every intermediate permutation `p^(1), ..., p^(n)`
/// of the generation scheme. Incrementing the code changes digits
/// `α_0 ..= α_r`; only levels `n - r ..= n` are rebuilt.
#[derive(Debug, Clone)]
pub struct Generator {
    n: usize,
    mode: GenerationMode,
    code: PiNumber,
    levels: Vec<Vec<u32>>,
    rank: BigUint,
    end: BigUint,
}

impl Generator {
    /// All of `S_n`, ranks `0..n!`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Order { n, min: 1 });
        }
        Self::range(n, BigUint::zero(), factorial(n))
    }

    /// Ranks `start..end`; `end` may equal `n!`.
    pub fn range(n: usize, start: BigUint, end: BigUint) -> Result<Self> {
        if n == 0 {
            return Err(Error::Order { n, min: 1 });
        }
        let total = factorial(n);
        if end > total {
            return Err(Error::RankOutOfRange { n, rank: end });
        }
        let end = end.max(start.clone());
        let code = if n == 1 {
            PiNumber::trivial()
        } else if start < total {
            PiNumber::encode(n, &start)?
        } else {
            PiNumber::zero(n)?
        };
        let mut generator = Generator {
            n,
            mode: GenerationMode::default(),
            code,
            levels: (1..=n).map(Vec::with_capacity).collect(),
            rank: start,
            end,
        };
        generator.levels[0].push(1);
        generator.rebuild_from(2);
        Ok(generator)
    }

    pub fn with_mode(mut self, mode: GenerationMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Rank of the next item to be produced.
    pub fn next_rank(&self) -> &BigUint {
        &self.rank
    }

    /// Recomputes levels `m ..= n` from level `m - 1`.
    fn rebuild_from(&mut self, m: usize) {
        for size in m.max(2)..=self.n {
            let (done, rest) = self.levels.split_at_mut(size - 1);
            let prev = &done[size - 2];
            let level = &mut rest[0];
            level.clear();
            level.extend_from_slice(prev);
            level.push(size as u32);
            level.rotate_left(self.code.digit(self.n - size) as usize);
        }
    }

    fn advance(&mut self) {
        self.rank += 1u32;
        if self.n == 1 || self.rank >= self.end {
            return;
        }
        match self.mode {
            GenerationMode::Incremental => {
                let rolled = self.code.increment_in_place();
                self.rebuild_from(self.n - rolled.min(self.n - 2));
            }
            GenerationMode::Naive => {
                self.code = PiNumber::encode(self.n, &self.rank).expect("rank below end");
                let perm = code_to_perm(&self.code);
                self.levels[self.n - 1] = perm.into_symbols();
            }
        }
    }
}

impl Iterator for Generator {
    type Item = RankedPermutation;

    fn next(&mut self) -> Option<RankedPermutation> {
        if self.rank >= self.end {
            return None;
        }
        let item = RankedPermutation {
            rank: self.rank.clone(),
            code: self.code.clone(),
            perm: Permutation::from_symbols_unchecked(self.levels[self.n - 1].clone()),
        };
        self.advance();
        Some(item)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        match (&self.end - &self.rank).to_usize() {
            Some(left) => (left, Some(left)),
            None => (usize::MAX, None),
        }
    }
}

/// Streams `S_n` in rank order.
pub fn generate_all(n: usize) -> Result<Generator> {
    Generator::new(n)
}

/// Independent listing of `S_n` in cyclic-shift order that never touches
/// the number system: the list for `m` symbols is, for each `q` in the list
/// for `m - 1` symbols, the rotations `C^0 ι(q), ..., C^{m-1} ι(q)`.
pub fn oracle_generate(n: usize) -> Result<Vec<Permutation>> {
    if n == 0 {
        return Err(Error::Order { n, min: 1 });
    }
    if n > ORACLE_MAX_ORDER {
        return Err(Error::ResourceCap {
            what: "oracle listing",
            n,
            cap: ORACLE_MAX_ORDER,
        });
    }
    let mut list = vec![Permutation::identity(1)];
    for m in 2..=n {
        list = list
            .iter()
            .flat_map(|q| {
                let lifted = q.insert_right();
                (0..m).map(move |k| lifted.circular(k))
            })
            .collect();
    }
    Ok(list)
}

#[cfg(test)]
pub(crate) fn count_u64(n: usize) -> u64 {
    crate::radix::factorial_u64(n).expect("order within u64 range")
}

impl RankedPermutation {
    /// `rank<TAB>code_w<TAB>perm`.
    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}",
            self.rank,
            self.code.to_machine_string(),
            self.perm
        )
    }
}
