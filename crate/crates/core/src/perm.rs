//! Permutations of the canonical alphabet `1..=n` and the primitives used
//! to generate them by cyclic shift.
//!
//! * [`Permutation::insert_right`] appends the new top symbol `n + 1`;
//! * [`Permutation::circular`] rotates left `k` times;
//! * [`Permutation::cyclic_shift`] is the composition of the two;
//! * [`Permutation::position_of_top`] recovers the exponent of the last
//!   cyclic shift, counting positions from the right.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A position counted from the right: the last symbol is at position 0,
/// the first at `n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position(usize);

impl Position {
    pub fn value(self) -> usize {
        self.0
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An ordered arrangement of the symbols `1..=n`, `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    symbols: Vec<u32>,
}

impl Permutation {
    /// Validates that `symbols` holds each of `1..=len` exactly once.
    pub fn new(symbols: Vec<u32>) -> Result<Self> {
        let n = symbols.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty".into()));
        }
        let mut seen = vec![false; n];
        for &s in &symbols {
            let slot = (s as usize)
                .checked_sub(1)
                .filter(|&i| i < n)
                .ok_or_else(|| {
                    Error::InvalidPermutation(format!("symbol {s} outside 1..={n}"))
                })?;
            if std::mem::replace(&mut seen[slot], true) {
                return Err(Error::InvalidPermutation(format!("symbol {s} repeated")));
            }
        }
        Ok(Permutation { symbols })
    }

    pub(crate) fn from_symbols_unchecked(symbols: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(symbols.clone()).is_ok());
        Permutation { symbols }
    }

    /// `(1 2 ... n)`.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "a permutation needs at least one symbol");
        Permutation {
            symbols: (1..=n as u32).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u32> {
        self.symbols
    }

    /// Appends the symbol `n + 1` at the right.
    pub fn insert_right(&self) -> Permutation {
        let mut symbols = Vec::with_capacity(self.symbols.len() + 1);
        symbols.extend_from_slice(&self.symbols);
        symbols.push(self.symbols.len() as u32 + 1);
        Permutation { symbols }
    }

    /// Applies the circular permutation `k` times:
    /// `(a_1 a_2 ... a_m) -> (a_{k+1} ... a_m a_1 ... a_k)`.
    /// The exponent is taken modulo `m`.
    pub fn circular(&self, k: usize) -> Permutation {
        let mut symbols = self.symbols.clone();
        let m = symbols.len();
        symbols.rotate_left(k % m);
        Permutation { symbols }
    }

    /// The cyclic shift of exponent `k`: insert the top symbol at the right,
    /// then rotate left `k` times.
    pub fn cyclic_shift(&self, k: usize) -> Permutation {
        let mut symbols = Vec::with_capacity(self.symbols.len() + 1);
        symbols.extend_from_slice(&self.symbols);
        symbols.push(self.symbols.len() as u32 + 1);
        let m = symbols.len();
        symbols.rotate_left(k % m);
        Permutation { symbols }
    }

    /// Right-counted position of `symbol`, if present.
    pub fn position_of(&self, symbol: u32) -> Option<Position> {
        let m = self.symbols.len();
        self.symbols
            .iter()
            .position(|&s| s == symbol)
            .map(|j| Position(m - 1 - j))
    }

    /// Position (from the right) of the top symbol `m`. This is the
    /// exponent `k` with `self = S^k q`.
    pub fn position_of_top(&self) -> Position {
        self.position_of(self.symbols.len() as u32)
            .expect("a valid permutation contains its top symbol")
    }

    /// Undoes [`Permutation::cyclic_shift`]: returns `(q, k)` with
    /// `self = q.cyclic_shift(k)`. `None` for a single symbol.
    pub fn strip_top(&self) -> Option<(Permutation, Position)> {
        let m = self.symbols.len();
        if m < 2 {
            return None;
        }
        let k = self.position_of_top();
        let mut rest = self.circular(m - k.value()).symbols;
        rest.pop();
        Some((Permutation { symbols: rest }, k))
    }

    /// The mirror image `(a_n ... a_1)`.
    pub fn mirror(&self) -> Permutation {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Permutation { symbols }
    }
}

fn write_symbols(f: &mut fmt::Formatter<'_>, symbols: &[u32], n: usize) -> fmt::Result {
    let comma = n > 9;
    for (i, s) in symbols.iter().enumerate() {
        if comma && i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{s}")?;
    }
    Ok(())
}

/// Concatenated digits for `n <= 9` (`51324`), comma-separated above.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbols(f, &self.symbols, self.symbols.len())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Splits either `"4321"` or `"4,3,2,1"` into symbols. Concatenated input
/// is read one decimal digit per symbol.
pub fn parse_symbols(text: &str) -> Result<Vec<u32>> {
    let text = text.trim().trim_start_matches('(').trim_end_matches(')');
    if text.contains(',') {
        text.split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad symbol `{part}`")))
            })
            .collect()
    } else {
        text.chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::Parse(format!("bad symbol `{c}`")))
            })
            .collect()
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `"51324"` or `"5,1,3,2,4"`. The concatenated form only makes
    /// sense for `n <= 9`; `"10..."` style input must use commas.
    fn from_str(text: &str) -> Result<Self> {
        Permutation::new(parse_symbols(text)?)
    }
}

/// A word over the alphabet `1..=n`, e.g. a concatenation of permutations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    n: usize,
    symbols: Vec<u32>,
}

impl Word {
    pub fn new(n: usize, symbols: Vec<u32>) -> Self {
        Word { n, symbols }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn is_palindrome(&self) -> bool {
        self.symbols.iter().eq(self.symbols.iter().rev())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbols(f, &self.symbols, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Permutation {
        text.parse().unwrap()
    }

    #[test]
    fn validation() {
        assert!(Permutation::new(vec![1, 2, 2]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!(Permutation::new(vec![]).is_err());
        assert!("12a".parse::<Permutation>().is_err());
        assert_eq!(p("4,3,2,1"), p("4321"));
    }

    #[test]
    fn insert_right_examples() {
        assert_eq!(p("21").insert_right(), p("213"));
        assert_eq!(p("1").insert_right(), p("12"));
        assert_eq!(p("1324").insert_right(), p("13245"));
    }

    #[test]
    fn circular_examples() {
        assert_eq!(p("1234").circular(1), p("2341"));
        assert_eq!(p("31524").circular(0), p("31524"));
        assert_eq!(p("13245").circular(4), p("51324"));
        assert_eq!(p("13245").circular(9), p("51324"));
    }

    #[test]
    fn circular_composes() {
        let q = p("3152647");
        for a in 0..7 {
            for b in 0..7 {
                assert_eq!(q.circular(b).circular(a), q.circular((a + b) % 7));
            }
        }
    }

    #[test]
    fn cyclic_shift_examples() {
        assert_eq!(p("1").cyclic_shift(1), p("21"));
        assert_eq!(p("312").cyclic_shift(0), p("3124"));
        assert_eq!(p("1324").cyclic_shift(4), p("51324"));
        let q = p("2413");
        assert_eq!(q.cyclic_shift(0).symbols().last(), Some(&5));
        assert_eq!(q.cyclic_shift(4).symbols().first(), Some(&5));
        // Exponents live in Z_n.
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(q.cyclic_shift(i) == q.cyclic_shift(j), i == j);
            }
            assert_eq!(q.cyclic_shift(i), q.cyclic_shift(i + 5));
        }
    }

    #[test]
    fn position_examples() {
        assert_eq!(p("51324").position_of_top().value(), 4);
        assert_eq!(p("31245").position_of_top().value(), 0);
        assert_eq!(p("2314").position_of_top().value(), 0);
        assert_eq!(p("2341").position_of_top().value(), 1);
    }

    #[test]
    fn strip_top_inverts_cyclic_shift() {
        let q = p("2413");
        for k in 0..5 {
            let (back, pos) = q.cyclic_shift(k).strip_top().unwrap();
            assert_eq!(back, q);
            assert_eq!(pos.value(), k);
        }
        assert!(p("1").strip_top().is_none());
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(p("51324").mirror(), p("42315"));
        assert_eq!(p("1").mirror(), p("1"));
        assert_eq!(p("2413").mirror().mirror(), p("2413"));
    }

    #[test]
    fn display_forms() {
        assert_eq!(p("51324").to_string(), "51324");
        let big = Permutation::new(vec![10, 3, 1, 2, 4, 5, 6, 7, 8, 9]).unwrap();
        assert_eq!(big.to_string(), "10,3,1,2,4,5,6,7,8,9");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
    }

    #[test]
    fn orbit_partition_small_orders() {
        use std::collections::HashSet;
        // Every S^k q for q in S_{n-1}, k in Z_n is distinct, n! in total.
        let mut level = vec![Permutation::identity(1)];
        for n in 2..=7usize {
            let next: Vec<_> = level
                .iter()
                .flat_map(|q| (0..n).map(move |k| q.cyclic_shift(k)))
                .collect();
            let distinct: HashSet<_> = next.iter().collect();
            assert_eq!(distinct.len(), next.len());
            assert_eq!(next.len(), (1..=n).product::<usize>());
            level = next;
        }
    }
}
