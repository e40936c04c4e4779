//! Compositions and partitions.
//!
//! A [`Composition`] is an ordered list of positive parts. Indices in the
//! public accessors are 1-based to match the usual notation `i_1, i_2, ...`,
//! and negative indices count from the end (`i_{-1}` is the last part).
//!
//! `C_n` denotes the compositions of `n` whose parts are all at least 2; it is
//! enumerated by [`compositions_min2`] in lexicographic order of the part
//! sequence, e.g. for `n = 6`: `2,2,2 < 2,4 < 3,3 < 4,2 < 6`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;

use crate::error::{domain, Error, Result};

/// Ordered list of positive integer parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Composition(Vec<usize>);

impl Composition {
    /// Builds a composition, rejecting zero parts.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(domain!("composition parts must be positive: {:?}", parts));
        }
        Ok(Composition(parts))
    }

    pub(crate) fn from_parts(parts: Vec<usize>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0));
        Composition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }

    /// Number of parts, `ℓ(I)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the parts, `|I|`.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Part at a 1-based index; negative indices count from the end.
    pub fn part(&self, index: isize) -> Option<usize> {
        let len = self.0.len() as isize;
        let pos = match index {
            0 => return None,
            i if i > 0 => i - 1,
            i => len + i,
        };
        if (0..len).contains(&pos) {
            Some(self.0[pos as usize])
        } else {
            None
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// True when every part is at least 2, i.e. the composition lies in `C_{|I|}`.
    pub fn is_min2(&self) -> bool {
        self.0.iter().all(|&p| p >= 2)
    }

    /// Concatenation of several compositions.
    pub fn concat(pieces: &[&Composition]) -> Composition {
        let mut parts = Vec::with_capacity(pieces.iter().map(|c| c.len()).sum());
        for c in pieces {
            parts.extend_from_slice(&c.0);
        }
        Composition(parts)
    }

    /// The composition with `part` put in front.
    pub fn prepend(&self, part: usize) -> Composition {
        let mut parts = Vec::with_capacity(self.len() + 1);
        parts.push(part);
        parts.extend_from_slice(&self.0);
        Composition::from_parts(parts)
    }

    pub fn underlying_partition(&self) -> Partition {
        Partition::from_unsorted(self.0.clone())
    }

    /// The `a`-surplus `Θ_I(a)`: the smallest prefix sum that is at least `a`,
    /// minus `a`. The empty prefix counts, so `Θ_I(0) = 0`.
    pub fn surplus(&self, a: usize) -> Result<usize> {
        surplus_of(&self.0, a).ok_or_else(|| domain!("surplus target {} exceeds |I| = {}", a, self.size()))
    }

    /// `w'_I = (i_2 - 1)(i_3 - 1)...`; the empty product is 1.
    pub fn weight_prime(&self) -> Result<BigInt> {
        if self.is_empty() {
            return Err(domain!("weight of the empty composition"));
        }
        Ok(weight_prime_of(&self.0))
    }

    /// `w_I = i_1 · w'_I`.
    pub fn weight(&self) -> Result<BigInt> {
        if self.is_empty() {
            return Err(domain!("weight of the empty composition"));
        }
        Ok(weight_of(&self.0))
    }

    /// 1-based index of the first odd part.
    pub fn first_odd(&self) -> Option<usize> {
        self.0.iter().position(|p| p % 2 == 1).map(|i| i + 1)
    }

    /// 1-based index of the last odd part.
    pub fn last_odd(&self) -> Option<usize> {
        self.0.iter().rposition(|p| p % 2 == 1).map(|i| i + 1)
    }

    pub fn first_odd_part(&self) -> Option<usize> {
        self.0.iter().copied().find(|p| p % 2 == 1)
    }

    pub fn last_odd_part(&self) -> Option<usize> {
        self.0.iter().rev().copied().find(|p| p % 2 == 1)
    }

    /// Number of leading even parts. Equals `fo(I) - 1` when `I` has an odd
    /// part and `ℓ(I)` otherwise.
    pub fn even_prefix_len(&self) -> usize {
        self.0.iter().take_while(|p| *p % 2 == 0).count()
    }

    /// Number of trailing even parts. Equals `ℓ(I) - lo(I)` when `I` has an
    /// odd part and `ℓ(I)` otherwise.
    pub fn even_suffix_len(&self) -> usize {
        self.0.iter().rev().take_while(|p| *p % 2 == 0).count()
    }

    pub fn odd_count(&self) -> usize {
        self.0.iter().filter(|p| *p % 2 == 1).count()
    }

    /// True when all parts are even (vacuously for the empty composition).
    pub fn is_even(&self) -> bool {
        self.0.iter().all(|p| p % 2 == 0)
    }

    /// `U(K)`: moves the longest all-odd suffix of `K` to the front, keeping the
    /// order inside both pieces.
    pub fn rotate_longest_odd_suffix(&self) -> Result<Composition> {
        if self.is_empty() {
            return Err(domain!("cannot rotate the empty composition"));
        }
        let odd_tail = self.0.iter().rev().take_while(|p| *p % 2 == 1).count();
        let split = self.len() - odd_tail;
        let mut parts = Vec::with_capacity(self.len());
        parts.extend_from_slice(&self.0[split..]);
        parts.extend_from_slice(&self.0[..split]);
        Ok(Composition(parts))
    }

    /// Inverse of [`rotate_longest_odd_suffix`](Self::rotate_longest_odd_suffix)
    /// on compositions whose first part is even: moves the longest all-odd
    /// prefix to the end.
    pub fn rotate_longest_odd_prefix(&self) -> Result<Composition> {
        if self.is_empty() {
            return Err(domain!("cannot rotate the empty composition"));
        }
        let odd_head = self.0.iter().take_while(|p| *p % 2 == 1).count();
        let mut parts = Vec::with_capacity(self.len());
        parts.extend_from_slice(&self.0[odd_head..]);
        parts.extend_from_slice(&self.0[..odd_head]);
        Ok(Composition(parts))
    }
}

/// Alphabetic comparison of two compositions of the same size.
///
/// `K > L` iff at the first index where they differ `k_s > l_s`. Equal sizes
/// rule out one being a proper prefix of the other, so this is a total order.
pub fn alpha_compare(k: &Composition, l: &Composition) -> Result<Ordering> {
    if k.size() != l.size() {
        return Err(domain!("alphabetic comparison needs equal sizes, got {} and {}", k.size(), l.size()));
    }
    Ok(k.0.cmp(&l.0))
}

pub(crate) fn surplus_of(parts: &[usize], a: usize) -> Option<usize> {
    let mut sum = 0;
    if a == 0 {
        return Some(0);
    }
    for &p in parts {
        sum += p;
        if sum >= a {
            return Some(sum - a);
        }
    }
    None
}

/// `Θ(a)` for `a ≤ |I|`, panicking otherwise. Used on hot paths where the
/// caller already guarantees the bound.
pub(crate) fn theta(parts: &[usize], a: usize) -> usize {
    surplus_of(parts, a).expect("surplus target within composition size")
}

/// `∏ (p - 1)` over the given parts, exact.
pub(crate) fn product_minus_one(parts: &[usize]) -> BigInt {
    let mut acc: u128 = 1;
    for (i, &p) in parts.iter().enumerate() {
        match acc.checked_mul((p as u128).saturating_sub(1)) {
            Some(v) => acc = v,
            None => {
                let mut big = BigInt::from(acc);
                for &q in &parts[i..] {
                    big *= q.saturating_sub(1);
                }
                return big;
            }
        }
    }
    BigInt::from(acc)
}

pub(crate) fn weight_prime_of(parts: &[usize]) -> BigInt {
    product_minus_one(&parts[1..])
}

pub(crate) fn weight_of(parts: &[usize]) -> BigInt {
    weight_prime_of(parts) * parts[0]
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0, ",")
    }
}

fn write_joined(f: &mut fmt::Formatter<'_>, parts: &[usize], sep: &str) -> fmt::Result {
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{}", p)?;
    }
    Ok(())
}

/// Parses comma-separated decimal parts such as `18,18,3,2,2`.
impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty composition".to_string()));
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(alloc::format!("bad part {:?}: {}", t, e)))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl From<Composition> for String {
    fn from(c: Composition) -> String {
        c.to_string()
    }
}

/// Non-increasing list of positive parts; the key of an `e`-basis term.
///
/// Ordered by length first, then reverse-lexicographically, so `[3] < [2,1]`
/// and `[9,1] < [8,2]`. This is the canonical term order of [`EFunction`].
///
/// [`EFunction`]: crate::EFunction
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts the given positive parts into a partition.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(domain!("partition parts must be positive: {:?}", parts));
        }
        Ok(Partition::from_unsorted(parts))
    }

    pub(crate) fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Multiset union of the parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i] >= b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Partition(out)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        write_joined(f, &self.0, ",")?;
        f.write_str("]")
    }
}

impl From<&Composition> for Partition {
    fn from(c: &Composition) -> Partition {
        c.underlying_partition()
    }
}

/// Lexicographic stream of compositions with every part at least 2 that
/// start with a fixed prefix.
#[derive(Debug, Clone)]
pub struct Min2Compositions {
    parts: Vec<usize>,
    fixed: usize,
    done: bool,
}

impl Min2Compositions {
    /// All compositions of `n` that start with `prefix` and whose remaining
    /// parts are all at least 2. The prefix itself is not checked.
    pub fn with_prefix(prefix: &[usize], n: usize) -> Self {
        let used: usize = prefix.iter().sum();
        let mut parts = prefix.to_vec();
        let fixed = parts.len();
        let done = match n.checked_sub(used) {
            None | Some(1) => true,
            Some(0) => fixed == 0,
            Some(rest) => {
                fill_minimal(&mut parts, rest);
                false
            }
        };
        Min2Compositions { parts, fixed, done }
    }

    fn advance(&mut self) {
        let suffix = self.parts.len() - self.fixed;
        if suffix < 2 {
            self.done = true;
            return;
        }
        let tail = self.parts.pop().expect("non-empty suffix");
        let last = self.parts.last_mut().expect("suffix of length at least 2");
        if tail == 2 {
            *last += 2;
        } else {
            *last += 1;
            fill_minimal(&mut self.parts, tail - 1);
        }
    }
}

impl Iterator for Min2Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        if self.done {
            return None;
        }
        let out = Composition::from_parts(self.parts.clone());
        self.advance();
        Some(out)
    }
}

/// Appends the lexicographically smallest composition of `rest >= 2` with
/// parts at least 2: all 2s, ending in a 3 when `rest` is odd.
fn fill_minimal(parts: &mut Vec<usize>, rest: usize) {
    debug_assert!(rest >= 2);
    let twos = if rest.is_multiple_of(2) { rest / 2 } else { (rest - 3) / 2 };
    parts.extend(core::iter::repeat_n(2, twos));
    if rest % 2 == 1 {
        parts.push(3);
    }
}

/// `C_n`: compositions of `n` with all parts at least 2, lexicographic.
pub fn compositions_min2(n: usize) -> Result<Min2Compositions> {
    if n < 2 {
        return Err(domain!("C_n needs n >= 2, got {}", n));
    }
    Ok(Min2Compositions::with_prefix(&[], n))
}

/// `C_n` as a vector, for the small sets that are reused many times.
pub fn min2_vec(n: usize) -> Result<Vec<Composition>> {
    Ok(compositions_min2(n)?.collect())
}

/// Compositions of `n` whose parts after the first are all at least 2; these
/// are exactly the compositions with `w_I != 0`.
pub fn compositions_path_support(n: usize) -> Result<impl Iterator<Item = Composition>> {
    if n < 1 {
        return Err(domain!("path support needs n >= 1"));
    }
    Ok((1..=n).flat_map(move |first| Min2Compositions::with_prefix(&[first], n)))
}

/// A contiguous piece of the lexicographic enumeration of `C_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shard {
    pub prefix: Vec<usize>,
    pub n: usize,
}

impl Shard {
    pub fn iter(&self) -> Min2Compositions {
        Min2Compositions::with_prefix(&self.prefix, self.n)
    }
}

/// Splits `C_n` into shards by prefixes of up to `depth` parts.
///
/// Iterating the shards in order and concatenating their streams reproduces
/// [`compositions_min2`] exactly.
pub fn min2_shards(n: usize, depth: usize) -> Result<Vec<Shard>> {
    if n < 2 {
        return Err(domain!("C_n needs n >= 2, got {}", n));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    collect_shards(n, n, depth.max(1), &mut prefix, &mut out);
    Ok(out)
}

fn collect_shards(n: usize, rest: usize, depth: usize, prefix: &mut Vec<usize>, out: &mut Vec<Shard>) {
    for first in 2..=rest {
        let left = rest - first;
        if left == 1 {
            continue;
        }
        prefix.push(first);
        if left == 0 || prefix.len() == depth {
            out.push(Shard { prefix: prefix.clone(), n });
        } else {
            collect_shards(n, left, depth, prefix, out);
        }
        prefix.pop();
    }
}
