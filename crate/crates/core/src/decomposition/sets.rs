//! The `A`/`B` partition of `C_n` and the `S`-sets that contain the images of
//! the injections.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::composition::{min2_vec, surplus_of, theta, Composition};
use crate::error::{domain, Result};

use super::{check_m, order_n, TripleSpace};

/// The five blocks of `C_n` in the `X_0` expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AbSet {
    A,
    B1,
    B2,
    B1p,
    B2p,
}

impl AbSet {
    pub const ALL: [AbSet; 5] = [AbSet::A, AbSet::B1, AbSet::B2, AbSet::B1p, AbSet::B2p];

    /// The verbatim surplus condition, given `(Θ(2m+1), Θ(4m+2), Θ(4m+3))`.
    fn holds(self, a: usize, b: usize, c: usize) -> bool {
        match self {
            AbSet::A => a * c != 0,
            AbSet::B1 => a <= 1 && b == 1,
            AbSet::B2 => a >= 2 && b == 1,
            AbSet::B1p => a == 0 && b == 0,
            AbSet::B2p => a == 0 && b >= 2,
        }
    }
}

impl fmt::Display for AbSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AbSet::A => "A",
            AbSet::B1 => "B1",
            AbSet::B2 => "B2",
            AbSet::B1p => "B1'",
            AbSet::B2p => "B2'",
        };
        f.write_str(s)
    }
}

fn surpluses(parts: &[usize], m: usize) -> (usize, usize, usize) {
    (theta(parts, 2 * m + 1), theta(parts, 4 * m + 2), theta(parts, 4 * m + 3))
}

/// The block containing `I`. The caller guarantees `|I| = 6m + 4`.
pub(crate) fn ab_class(parts: &[usize], m: usize) -> AbSet {
    let (a, b, c) = surpluses(parts, m);
    AbSet::ALL
        .into_iter()
        .find(|s| s.holds(a, b, c))
        .expect("the surplus conditions cover C_n")
}

/// Evaluates the surplus characterization of `which` on `I`.
pub fn membership(i: &Composition, which: AbSet, m: usize) -> Result<bool> {
    check_m(m)?;
    if i.size() != order_n(m) {
        return Err(domain!("|I| = {} but n = {}", i.size(), order_n(m)));
    }
    let (a, b, c) = surpluses(i.parts(), m);
    Ok(which.holds(a, b, c))
}

fn b2_pairs(m: usize) -> Result<Vec<(Composition, Composition)>> {
    let qs = min2_vec(2 * m + 1)?;
    let mut out = Vec::new();
    for p in min2_vec(4 * m + 3)? {
        if theta(p.parts(), 2 * m + 1) >= 2 {
            for q in &qs {
                out.push((p.clone(), q.clone()));
            }
        }
    }
    Ok(out)
}

/// `{PQ : P ∈ C_{4m+3}, Q ∈ C_{2m+1}, Θ_P(2m+1) >= 2}`.
pub fn b2_from_pairs(m: usize) -> Result<BTreeSet<Composition>> {
    check_m(m)?;
    Ok(b2_pairs(m)?.iter().map(|(p, q)| Composition::concat(&[p, q])).collect())
}

/// `{QP}` over the same pairs.
pub fn b2p_from_pairs(m: usize) -> Result<BTreeSet<Composition>> {
    check_m(m)?;
    Ok(b2_pairs(m)?.iter().map(|(p, q)| Composition::concat(&[q, p])).collect())
}

/// `{JKL, KJL : (J,K,L) ∈ T}`.
pub fn b1_from_triples(m: usize) -> Result<BTreeSet<Composition>> {
    let space = TripleSpace::new(m)?;
    let mut out = BTreeSet::new();
    for (j, k, l) in space.iter() {
        out.insert(Composition::concat(&[j, k, l]));
        out.insert(Composition::concat(&[k, j, l]));
    }
    Ok(out)
}

/// `{KLJ : (J,K,L) ∈ T}`.
pub fn b1p_from_triples(m: usize) -> Result<BTreeSet<Composition>> {
    let space = TripleSpace::new(m)?;
    Ok(space.iter().map(|(j, k, l)| Composition::concat(&[k, l, j])).collect())
}

/// Labels of the image supersets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SSetLabel {
    S1,
    S2,
    S3,
    S41,
    S42,
}

impl SSetLabel {
    pub const ALL: [SSetLabel; 5] = [SSetLabel::S1, SSetLabel::S2, SSetLabel::S3, SSetLabel::S41, SSetLabel::S42];
}

impl fmt::Display for SSetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SSetLabel::S1 => "S1",
            SSetLabel::S2 => "S2",
            SSetLabel::S3 => "S3",
            SSetLabel::S41 => "S41",
            SSetLabel::S42 => "S42",
        };
        f.write_str(s)
    }
}

/// A split `I = PQR`. `Q` may be empty for `S3` and `S42`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    pub p: Composition,
    pub q: Composition,
    pub r: Composition,
}

impl Factorization {
    fn from_cuts(parts: &[usize], a: usize, b: usize) -> Self {
        Factorization {
            p: Composition::from_parts(parts[..a].to_vec()),
            q: Composition::from_parts(parts[a..b].to_vec()),
            r: Composition::from_parts(parts[b..].to_vec()),
        }
    }
}

/// Index `i` with `parts[..i]` summing to `target`, if any.
fn cut_at(parts: &[usize], target: usize) -> Option<usize> {
    let mut sum = 0;
    for (i, &p) in parts.iter().enumerate() {
        if sum == target {
            return Some(i);
        }
        sum += p;
        if sum > target {
            return None;
        }
    }
    (sum == target).then_some(parts.len())
}

fn is_even(x: usize) -> bool {
    x.is_multiple_of(2)
}

/// The part after the first odd part of `r`, if any.
fn after_first_odd(r: &Composition) -> Option<usize> {
    r.first_odd().and_then(|fo| r.part(fo as isize + 1))
}

fn check_size(i: &Composition, m: usize) -> Result<()> {
    check_m(m)?;
    if i.size() != order_n(m) {
        return Err(domain!("|I| = {} but n = {}", i.size(), order_n(m)));
    }
    Ok(())
}

fn s2_generic(i: &Composition, m: usize, require_ge4: bool) -> Vec<Factorization> {
    let parts = i.parts();
    let (Some(a), Some(b)) = (cut_at(parts, 2 * m + 2), cut_at(parts, 4 * m + 5)) else {
        return Vec::new();
    };
    if b >= parts.len() {
        return Vec::new();
    }
    let fac = Factorization::from_cuts(parts, a, b);
    let last = fac.q.last().expect("|Q| = 2m+3");
    let ok = fac.q.first() == Some(2) && is_even(last) && (!require_ge4 || last >= 4);
    if ok {
        alloc::vec![fac]
    } else {
        Vec::new()
    }
}

/// Every split of `I` witnessing membership in the `label` set.
///
/// For `S1` and `S2` the split is fixed by prefix sums. For the other three
/// the `Q`/`R` boundary is found by trying every cut after `P`; more than one
/// result would contradict uniqueness of the factorization.
pub fn s_factorizations(i: &Composition, label: SSetLabel, m: usize) -> Result<Vec<Factorization>> {
    check_size(i, m)?;
    let parts = i.parts();
    if label == SSetLabel::S1 {
        let out = match (cut_at(parts, 2 * m + 3), cut_at(parts, 4 * m + 4)) {
            (Some(a), Some(b)) if b < parts.len() => alloc::vec![Factorization::from_cuts(parts, a, b)],
            _ => Vec::new(),
        };
        return Ok(out);
    }
    if label == SSetLabel::S2 {
        return Ok(s2_generic(i, m, true));
    }
    let Some(a) = cut_at(parts, 2 * m + 2) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for b in a..parts.len() {
        let fac = Factorization::from_cuts(parts, a, b);
        if fac.r.first() != Some(2) {
            continue;
        }
        let (q, r) = (&fac.q, &fac.r);
        let ok = match label {
            SSetLabel::S3 => {
                r.odd_count() >= 2
                    && q.size() + r.first_odd_part().expect("two odd parts") == 2 * m + 1
                    && ((r.even_prefix_len() <= q.even_suffix_len() && after_first_odd(r).is_some_and(|x| !is_even(x)))
                        || r.even_prefix_len() == q.even_suffix_len() + 1)
            }
            SSetLabel::S41 => {
                q.odd_count() >= 2
                    && q.size() == 2 * m + 1 + q.last_odd_part().expect("two odd parts")
                    && r.even_prefix_len() >= q.even_suffix_len()
            }
            SSetLabel::S42 => {
                r.odd_count() >= 2
                    && q.size() + r.first_odd_part().expect("two odd parts") == 2 * m + 1
                    && r.even_prefix_len() <= q.even_suffix_len()
                    && after_first_odd(r).is_some_and(is_even)
            }
            SSetLabel::S1 | SSetLabel::S2 => unreachable!(),
        };
        if ok {
            out.push(fac);
        }
    }
    Ok(out)
}

/// `S2` without the `q_{-1} >= 4` requirement.
pub fn s2_relaxed_factorizations(i: &Composition, m: usize) -> Result<Vec<Factorization>> {
    check_size(i, m)?;
    Ok(s2_generic(i, m, false))
}

/// True when `I` admits at least one factorization for `label`.
pub fn s_membership(i: &Composition, label: SSetLabel, m: usize) -> Result<bool> {
    Ok(!s_factorizations(i, label, m)?.is_empty())
}

/// `Θ_I(2m+2)`, the statistic separating `S1` from the other four sets.
pub fn separation_surplus(i: &Composition, m: usize) -> Option<usize> {
    surplus_of(i.parts(), 2 * m + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::compositions_min2;

    fn c(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn ab_examples() {
        assert!(membership(&c(&[3, 3, 4]), AbSet::B1p, 1).unwrap());
        assert!(membership(&c(&[10]), AbSet::A, 1).unwrap());
        assert!(!membership(&c(&[10]), AbSet::B1, 1).unwrap());
        assert!(membership(&c(&[3, 3]), AbSet::A, 1).is_err());
    }

    #[test]
    fn ab_partition_small() {
        for m in 1..=3 {
            for i in compositions_min2(order_n(m)).unwrap() {
                let hits: Vec<_> = AbSet::ALL.iter().filter(|s| membership(&i, **s, m).unwrap()).collect();
                assert_eq!(hits.len(), 1, "{:?}", i);
                assert_eq!(*hits[0], ab_class(i.parts(), m));
            }
        }
    }

    #[test]
    fn duals_m1() {
        let m = 1;
        let by = |s: AbSet| -> BTreeSet<Composition> {
            compositions_min2(order_n(m)).unwrap().filter(|i| membership(i, s, m).unwrap()).collect()
        };
        assert_eq!(b2_from_pairs(m).unwrap(), by(AbSet::B2));
        assert_eq!(b2p_from_pairs(m).unwrap(), by(AbSet::B2p));
        assert_eq!(b1_from_triples(m).unwrap(), by(AbSet::B1));
        assert_eq!(b1p_from_triples(m).unwrap(), by(AbSet::B1p));
    }

    #[test]
    fn worked_images_land_in_their_sets() {
        assert!(s_membership(&c(&[3, 6, 3, 4, 2, 2, 2]), SSetLabel::S1, 3).unwrap());
        assert!(s_membership(&c(&[8, 2, 3, 4, 3, 2]), SSetLabel::S2, 3).unwrap());
        assert!(s_membership(&c(&[8, 6, 4, 3, 3, 2, 3, 3, 2, 6]), SSetLabel::S3, 6).unwrap());
        assert!(s_membership(&c(&[8, 6, 3, 3, 2, 2, 2, 2, 3, 2, 2, 3, 2]), SSetLabel::S42, 6).unwrap());
        assert!(s_membership(&c(&[8, 6, 3, 3, 5, 3, 2, 2, 2, 2, 2, 2]), SSetLabel::S41, 6).unwrap());
    }

    #[test]
    fn factorization_pieces() {
        let f = s_factorizations(&c(&[8, 6, 4, 3, 3, 2, 3, 3, 2, 6]), SSetLabel::S3, 6).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].q, c(&[4, 3, 3]));
        assert_eq!(f[0].r, c(&[2, 3, 3, 2, 6]));
    }

    #[test]
    fn s2_relaxed_is_superset() {
        let m = 2;
        for i in compositions_min2(order_n(m)).unwrap() {
            if s_membership(&i, SSetLabel::S2, m).unwrap() {
                assert!(!s2_relaxed_factorizations(&i, m).unwrap().is_empty());
            }
        }
        // q_{-1} = 2 is only in the relaxed set: P = (6), Q = (2,3,2), R = (3)
        let i = c(&[6, 2, 3, 2, 3]);
        assert!(!s_membership(&i, SSetLabel::S2, 2).unwrap());
        assert_eq!(s2_relaxed_factorizations(&i, 2).unwrap().len(), 1);
    }

    #[test]
    fn cut_positions() {
        assert_eq!(cut_at(&[2, 3, 4], 0), Some(0));
        assert_eq!(cut_at(&[2, 3, 4], 5), Some(2));
        assert_eq!(cut_at(&[2, 3, 4], 9), Some(3));
        assert_eq!(cut_at(&[2, 3, 4], 4), None);
    }
}
