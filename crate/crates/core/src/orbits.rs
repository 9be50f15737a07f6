//! The nested block structure of the generation order.
//!
//! For `0 <= k <= n - 2`, a rank splits as `a = beta * w(n, k) + gamma`
//! where `beta` is made of the high digits `α_k .. α_{n-2}` and `gamma` of
//! the low digits `α_0 .. α_{k-1}`. The ranks sharing a `beta` form a block
//! of `w(n, k)` consecutive permutations, the *k-orbit* of the permutation
//! `q_beta` of `n - k` symbols: every member is obtained from `q_beta` by
//! `k` further cyclic shifts. The whole of `S_n` is treated as the single
//! `(n-1)`-orbit.

use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::codec::{rank_to_perm, rank_to_perm_u64};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::radix::{factorial, falling_factorial, PiNumber};

/// Largest order [`orbit_tree`] will materialise.
pub const TREE_MAX_ORDER: usize = 8;

/// The `k`-orbit of the permutation of rank `beta` in `S_{n-k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbitRef {
    n: usize,
    k: usize,
    beta: BigUint,
}

impl OrbitRef {
    pub fn new(n: usize, k: usize, beta: BigUint) -> Result<Self> {
        if n < 2 {
            return Err(Error::Order { n, min: 2 });
        }
        if k > n - 1 {
            return Err(Error::Level { n, k, max: n - 1 });
        }
        if beta >= factorial(n - k) {
            return Err(Error::OrbitIndex { n, k, beta });
        }
        Ok(OrbitRef { n, k, beta })
    }

    /// `S_n` as a single `(n-1)`-orbit of `(1)`.
    pub fn whole(n: usize) -> Result<Self> {
        Self::new(n, n.saturating_sub(1), BigUint::zero())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> usize {
        self.k
    }

    pub fn beta(&self) -> &BigUint {
        &self.beta
    }

    /// Number of members, `w(n, k)` (which is `n!` for `k = n - 1`).
    pub fn size(&self) -> BigUint {
        falling_factorial(self.n, self.k)
    }

    pub fn first_rank(&self) -> BigUint {
        &self.beta * self.size()
    }

    pub fn last_rank(&self) -> BigUint {
        self.first_rank() + self.size() - 1u32
    }

    pub fn contains(&self, a: &BigUint) -> bool {
        *a >= self.first_rank() && *a <= self.last_rank()
    }

    /// The base permutation `q_beta` of `n - k` symbols.
    pub fn base(&self) -> Permutation {
        rank_to_perm(self.n - self.k, &self.beta).expect("beta validated on construction")
    }

    /// Member ranks in ascending order.
    pub fn members(&self) -> Ranks {
        let next = self.first_rank();
        let end = &next + self.size();
        Ranks { next, end }
    }
}

impl fmt::Display for OrbitRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({}, {}, {})", self.n, self.k, self.beta)
    }
}

/// Ascending iterator over a half-open range of ranks.
#[derive(Debug, Clone)]
pub struct Ranks {
    next: BigUint,
    end: BigUint,
}

impl Iterator for Ranks {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        if self.next >= self.end {
            return None;
        }
        let current = self.next.clone();
        self.next += 1u32;
        Some(current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        if self.next >= self.end {
            return (0, Some(0));
        }
        match (&self.end - &self.next).to_usize() {
            Some(left) => (left, Some(left)),
            None => (usize::MAX, None),
        }
    }
}

/// Member ranks of an orbit, ascending.
pub fn orbit_members(orbit: &OrbitRef) -> Ranks {
    orbit.members()
}

fn check_split_level(n: usize, k: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Order { n, min: 2 });
    }
    if k > n - 2 {
        return Err(Error::Level { n, k, max: n - 2 });
    }
    Ok(())
}

/// Splits `a = beta * w(n, k) + gamma`, reading `beta` off the digits
/// `α_k ..` and `gamma` off the digits `.. α_{k-1}`.
pub fn split_code(a: &BigUint, n: usize, k: usize) -> Result<(BigUint, BigUint)> {
    check_split_level(n, k)?;
    let code = PiNumber::encode(n, a)?;
    let beta_digits = code.digits()[k..].to_vec();
    let beta = PiNumber::from_digits(n - k, beta_digits)?.decode();
    let mut gamma = BigUint::zero();
    for i in (0..k).rev() {
        gamma = gamma * (n - i) as u64 + code.digit(i);
    }
    Ok((beta, gamma))
}

/// The `k`-orbit containing rank `a`; `k` may be `n - 1`.
pub fn orbit_of(a: &BigUint, n: usize, k: usize) -> Result<OrbitRef> {
    if n >= 2 && k == n - 1 {
        if *a >= factorial(n) {
            return Err(Error::RankOutOfRange { n, rank: a.clone() });
        }
        return OrbitRef::whole(n);
    }
    let (beta, _) = split_code(a, n, k)?;
    OrbitRef::new(n, k, beta)
}

/// Digit `α_k` of `a`: the index of `a`'s `k`-orbit inside its `(k+1)`-orbit.
pub fn orbit_rank_digit(a: &BigUint, n: usize, k: usize) -> Result<u32> {
    check_split_level(n, k)?;
    Ok(PiNumber::encode(n, a)?.digit(k))
}

/// Result of [`max_terminal_level`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TerminalLevel {
    /// Largest `k` such that the permutation closes a `k`-orbit but not
    /// the enclosing `(k+1)`-orbit.
    pub level: usize,
    /// Set for rank `n! - 1`, which closes every orbit. `level` is then
    /// `n - 2` by convention.
    pub global_last: bool,
}

/// Number of low digits at their maximum, i.e. `α_i = n - i - 1` for
/// `i < count`.
pub fn trailing_max_digits(code: &PiNumber) -> usize {
    let n = code.order();
    code.digits()
        .iter()
        .enumerate()
        .take_while(|&(i, &d)| d as usize == n - i - 1)
        .count()
}

pub fn terminal_level_of_code(code: &PiNumber) -> TerminalLevel {
    let count = trailing_max_digits(code);
    let n = code.order();
    if count == n - 1 {
        TerminalLevel {
            level: n.saturating_sub(2),
            global_last: true,
        }
    } else {
        TerminalLevel {
            level: count,
            global_last: false,
        }
    }
}

/// Largest `k` with `p_a` the last element of a `k`-orbit and not of the
/// enclosing `(k+1)`-orbit.
pub fn max_terminal_level(a: &BigUint, n: usize) -> Result<TerminalLevel> {
    Ok(terminal_level_of_code(&PiNumber::encode(n, a)?))
}

/// One block of the orbit tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitBlock {
    pub level: usize,
    pub beta: u64,
    pub first: u64,
    pub last: u64,
    pub base: Permutation,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<OrbitBlock>,
}

fn build_block(n: usize, k: usize, beta: u64, min_level: usize) -> OrbitBlock {
    let size = falling_factorial(n, k).to_u64().expect("capped order");
    let children = if k > min_level {
        // A k-orbit holds n - k + 1 orbits of level k - 1.
        let fan = (n - k + 1) as u64;
        (0..fan)
            .map(|j| build_block(n, k - 1, beta * fan + j, min_level))
            .collect()
    } else {
        Vec::new()
    };
    OrbitBlock {
        level: k,
        beta,
        first: beta * size,
        last: beta * size + size - 1,
        base: rank_to_perm_u64(n - k, beta).expect("beta in range"),
        children,
    }
}

/// The full nesting of `S_n` from the `(n-1)`-orbit down to `min_level`.
pub fn orbit_tree(n: usize, min_level: usize) -> Result<OrbitBlock> {
    if n < 2 {
        return Err(Error::Order { n, min: 2 });
    }
    if n > TREE_MAX_ORDER {
        return Err(Error::ResourceCap {
            what: "orbit tree",
            n,
            cap: TREE_MAX_ORDER,
        });
    }
    if min_level > n - 1 {
        return Err(Error::Level {
            n,
            k: min_level,
            max: n - 1,
        });
    }
    Ok(build_block(n, n - 1, 0, min_level))
}

impl OrbitBlock {
    /// Indented outline, one block per line; level-0 blocks print as
    /// `rank perm`.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        let indent = "  ".repeat(depth);
        if self.level == 0 {
            let _ = writeln!(out, "{indent}{} {}", self.first, self.base);
        } else {
            let _ = writeln!(
                out,
                "{indent}{}-orbit #{} ranks {}..{} base {}",
                self.level, self.beta, self.first, self.last, self.base
            );
        }
        for child in &self.children {
            child.render_into(out, depth + 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::count_u64;
    use num_integer::Integer;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn split_examples() {
        assert_eq!(split_code(&big(17), 4, 1).unwrap(), (big(4), big(1)));
        assert_eq!(split_code(&big(84), 5, 2).unwrap(), (big(4), big(4)));
        assert_eq!(split_code(&big(84), 5, 0).unwrap(), (big(84), big(0)));
        assert!(matches!(
            split_code(&big(3), 4, 3),
            Err(Error::Level { max: 2, .. })
        ));
        // p_17 = S^1 of q_4 = (132).
        let orbit = orbit_of(&big(17), 4, 1).unwrap();
        assert_eq!(orbit.base().to_string(), "132");
        assert_eq!(orbit.base().cyclic_shift(1).to_string(), "3241");
    }

    #[test]
    fn members_examples() {
        let one = OrbitRef::new(4, 1, big(4)).unwrap();
        assert_eq!(one.members().collect::<Vec<_>>(), (16..20).map(big).collect::<Vec<_>>());
        let two = OrbitRef::new(4, 2, big(1)).unwrap();
        assert_eq!(two.members().collect::<Vec<_>>(), (12..24).map(big).collect::<Vec<_>>());
        let zero = OrbitRef::new(4, 0, big(9)).unwrap();
        assert_eq!(zero.members().collect::<Vec<_>>(), vec![big(9)]);
        let whole = OrbitRef::whole(4).unwrap();
        assert_eq!(whole.size(), big(24));
        assert_eq!(whole.base().to_string(), "1");
        assert!(OrbitRef::new(4, 3, big(1)).is_err());
        assert!(OrbitRef::new(4, 1, big(6)).is_err());
    }

    #[test]
    fn orbit_digit_examples() {
        assert_eq!(orbit_rank_digit(&big(17), 4, 2).unwrap(), 1);
        assert_eq!(orbit_rank_digit(&big(7), 4, 1).unwrap(), 1);
        for k in 0..5 {
            assert_eq!(orbit_rank_digit(&big(0), 6, k).unwrap(), 0);
        }
    }

    #[test]
    fn terminal_level_examples() {
        let at = |a| max_terminal_level(&big(a), 4).unwrap();
        assert_eq!(at(11).level, 2);
        assert_eq!(at(3).level, 1);
        assert_eq!(at(5).level, 0);
        let last = at(23);
        assert!(last.global_last);
        assert_eq!(last.level, 2);
        assert!(!at(11).global_last);
    }

    #[test]
    fn split_matches_integer_division() {
        for n in 2..=6usize {
            for k in 0..=n - 2 {
                let w = falling_factorial(n, k);
                for a in 0..count_u64(n) {
                    let a = big(a);
                    let (beta, gamma) = split_code(&a, n, k).unwrap();
                    assert_eq!((beta, gamma), a.div_rem(&w));
                }
            }
        }
    }

    #[test]
    fn k_orbits_tile_ranks() {
        for n in 2..=7usize {
            let total = count_u64(n);
            for k in 0..=n - 2 {
                let mut covered = vec![0u8; total as usize];
                for beta in 0..count_u64(n - k) {
                    for a in OrbitRef::new(n, k, big(beta)).unwrap().members() {
                        covered[a.to_usize().unwrap()] += 1;
                    }
                }
                assert!(covered.iter().all(|&c| c == 1), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn members_grow_from_base_by_shifts() {
        for n in 2..=6usize {
            for a in 0..count_u64(n) {
                let code = PiNumber::encode_u64(n, a).unwrap();
                for k in 0..=n - 2 {
                    let orbit = orbit_of(&big(a), n, k).unwrap();
                    let mut p = orbit.base();
                    for i in (0..k).rev() {
                        p = p.cyclic_shift(code.digit(i) as usize);
                    }
                    assert_eq!(p, rank_to_perm_u64(n, a).unwrap());
                }
            }
        }
    }

    #[test]
    fn tree_shape_for_four() {
        let tree = orbit_tree(4, 0).unwrap();
        assert_eq!((tree.first, tree.last, tree.level), (0, 23, 3));
        assert_eq!(tree.children.len(), 2);
        assert_eq!(tree.children[1].first, 12);
        assert_eq!(tree.children[1].children.len(), 3);
        assert_eq!(tree.children[1].children[1].first, 16);
        assert_eq!(tree.children[1].children[1].base.to_string(), "132");
        let text = tree.render_text();
        assert!(text.starts_with("3-orbit #0 ranks 0..23 base 1\n"));
        assert!(text.contains("      17 3241\n"));
        assert_eq!(text.lines().count(), 1 + 2 + 6 + 24);
        assert!(orbit_tree(9, 0).is_err());
    }
}
