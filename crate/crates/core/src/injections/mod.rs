//! The maps `φ1`, `φ2`, `φ3`, `φ4 = φ41 ⊔ φ42` from the negative classes of
//! `T` into `A`, their coefficients, inverses, verification and the
//! end-to-end certificate.
//!
//! Every map takes `(J, K, L)` and returns a composition of `6m + 4` with the
//! same underlying partition as `JKL`. The set of maps used by the verifiers
//! is passed in as an [`InjectionMaps`] value so that tests can substitute
//! deliberately broken maps.

mod certificate;
mod inverse;
mod verify;

pub use certificate::{certify, certify_with, Certificate, Group};
pub use inverse::{bar_q_lo, phi1_inverse, phi2_inverse, phi3_inverse, phi41_inverse, phi42_inverse, phi4_inverse};
pub use verify::{
    verify_disjointness, verify_disjointness_with, verify_injections, verify_injections_with, DisjointnessReport,
    InjectionReport, MapStats, Violation,
};

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::composition::{weight_of, weight_prime_of, Composition};
use crate::decomposition::f_poly;
use crate::error::{domain, Error, Result};

/// Signature shared by all the maps.
pub type MapFn = fn(&Composition, &Composition, &Composition) -> Result<Composition>;

/// The maps under test. [`InjectionMaps::STANDARD`] holds the real ones.
#[derive(Clone, Copy)]
pub struct InjectionMaps {
    pub phi1: MapFn,
    pub phi2: MapFn,
    pub phi3: MapFn,
    pub phi41: MapFn,
    pub phi42: MapFn,
}

impl InjectionMaps {
    pub const STANDARD: InjectionMaps = InjectionMaps { phi1, phi2, phi3, phi41, phi42 };

    /// `φ4` assembled from this set's `φ41` and `φ42`.
    pub fn phi4(&self, j: &Composition, k: &Composition, l: &Composition) -> Result<Composition> {
        if in_t41(k, l)? {
            (self.phi41)(j, k, l)
        } else {
            (self.phi42)(j, k, l)
        }
    }
}

impl Default for InjectionMaps {
    fn default() -> Self {
        InjectionMaps::STANDARD
    }
}

impl core::fmt::Debug for InjectionMaps {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("InjectionMaps { .. }")
    }
}

fn first(c: &Composition) -> usize {
    c.first().expect("nonempty")
}

/// `J ∈ C_{2m+2}`, `K, L ∈ C_{2m+1}` for some `m >= 1`.
fn check_shape(j: &Composition, k: &Composition, l: &Composition) -> Result<usize> {
    let ok = j.is_min2()
        && k.is_min2()
        && l.is_min2()
        && !j.is_empty()
        && !k.is_empty()
        && !l.is_empty()
        && k.size() == l.size()
        && k.size() % 2 == 1
        && j.size() == k.size() + 1
        && k.size() >= 3;
    if !ok {
        return Err(domain!("({:?}, {:?}, {:?}) is not in C_(2m+2) x C_(2m+1) x C_(2m+1)", j, k, l));
    }
    Ok((k.size() - 1) / 2)
}

fn cat(pieces: &[&[usize]]) -> Composition {
    let mut parts = Vec::with_capacity(pieces.iter().map(|p| p.len()).sum());
    for p in pieces {
        parts.extend_from_slice(p);
    }
    Composition::new(parts).expect("parts come from compositions")
}

/// `φ1` on `T1 = {j_1 = 2, k_1 = l_1 = 3, K >= L}`: `P·K·R` with
/// `P = min(j_{-1}, 3)·j_2…j_{-2}·max(j_{-1}, 3)` and `R = 2·l_2…l_{-1}`.
pub fn phi1(j: &Composition, k: &Composition, l: &Composition) -> Result<Composition> {
    check_shape(j, k, l)?;
    if !(first(j) == 2 && first(k) == 3 && first(l) == 3 && k >= l) {
        return Err(domain!("φ1 needs j1 = 2, k1 = l1 = 3 and K >= L"));
    }
    let jp = j.parts();
    let last = *jp.last().expect("nonempty");
    let p = cat(&[&[last.min(3)], &jp[1..jp.len() - 1], &[last.max(3)]]);
    let r = cat(&[&[2], &l.parts()[1..]]);
    Ok(Composition::concat(&[&p, k, &r]))
}

/// `φ2` on `T2 = {l_1 = 2, f(j_1,k_1,2) < 0, k_1 even >= 4}`: `J·Q·R` with
/// `Q = 2·k_2…k_{-1}·k_1` and `R = l_2…l_{-1}`.
pub fn phi2(j: &Composition, k: &Composition, l: &Composition) -> Result<Composition> {
    check_shape(j, k, l)?;
    let (j1, k1) = (first(j), first(k));
    if !(first(l) == 2 && f_poly(j1 as i64, k1 as i64, 2) < 0 && k1 % 2 == 0 && k1 >= 4) {
        return Err(domain!("φ2 needs l1 = 2, f(j1,k1,2) < 0 and k1 even >= 4"));
    }
    let q = cat(&[&[2], &k.parts()[1..], &[k1]]);
    let r = cat(&[&l.parts()[1..]]);
    Ok(Composition::concat(&[j, &q, &r]))
}

/// `φ3` on `T3 = {l_1 = 2, f(j_1,k_1,2) < 0, k_1 odd}`: `J·Q·R` with `Q` the
/// tail of `K` and `R` equal to `L` with `k_1` inserted after
/// `min(fo(L) - 1, ℓ(K) - lo(K) + 1)` parts.
pub fn phi3(j: &Composition, k: &Composition, l: &Composition) -> Result<Composition> {
    check_shape(j, k, l)?;
    let (j1, k1) = (first(j), first(k));
    if !(first(l) == 2 && f_poly(j1 as i64, k1 as i64, 2) < 0 && k1 % 2 == 1) {
        return Err(domain!("φ3 needs l1 = 2, f(j1,k1,2) < 0 and k1 odd"));
    }
    let pos = l.even_prefix_len().min(k.even_suffix_len() + 1);
    let lp = l.parts();
    let r = cat(&[&lp[..pos], &[k1], &lp[pos..]]);
    let q = cat(&[&k.parts()[1..]]);
    Ok(Composition::concat(&[j, &q, &r]))
}

fn check_t4_prime(j: &Composition, k: &Composition, l: &Composition) -> Result<()> {
    check_shape(j, k, l)?;
    if !(first(k) == 2 && first(l) == 2) {
        return Err(domain!("φ4 needs k1 = l1 = 2"));
    }
    Ok(())
}

/// `fo(L) - 1 <= ℓ(U(K)) - lo(U(K))`, the `T41` side of `T4'`.
pub fn in_t41(k: &Composition, l: &Composition) -> Result<bool> {
    let u = k.rotate_longest_odd_suffix()?;
    Ok(l.even_prefix_len() <= u.even_suffix_len())
}

/// `φ41`: moves the first odd part of `L` into `U(K)` so that exactly
/// `fo(L) - 1` parts follow it.
pub fn phi41(j: &Composition, k: &Composition, l: &Composition) -> Result<Composition> {
    check_t4_prime(j, k, l)?;
    if !in_t41(k, l)? {
        return Err(domain!("φ41 needs fo(L) - 1 <= ℓ(U) - lo(U)"));
    }
    let u = k.rotate_longest_odd_suffix()?;
    let y = l.even_prefix_len();
    let (up, lp) = (u.parts(), l.parts());
    let cut = up.len() - y;
    let q = cat(&[&up[..cut], &[lp[y]], &up[cut..]]);
    let r = cat(&[&lp[..y], &lp[y + 1..]]);
    Ok(Composition::concat(&[j, &q, &r]))
}

/// `φ42`: moves the last odd part of `U(K)` into `L` so that exactly
/// `ℓ(U) - lo(U)` parts precede it.
pub fn phi42(j: &Composition, k: &Composition, l: &Composition) -> Result<Composition> {
    check_t4_prime(j, k, l)?;
    if in_t41(k, l)? {
        return Err(domain!("φ42 needs fo(L) - 1 > ℓ(U) - lo(U)"));
    }
    let u = k.rotate_longest_odd_suffix()?;
    let x = u.even_suffix_len();
    let (up, lp) = (u.parts(), l.parts());
    let lo = up.len() - x - 1;
    let q = cat(&[&up[..lo], &up[lo + 1..]]);
    let r = cat(&[&lp[..x], &[up[lo]], &lp[x..]]);
    Ok(Composition::concat(&[j, &q, &r]))
}

/// `φ4` on `T4' = {k_1 = l_1 = 2}`, dispatching to `φ41` or `φ42`.
pub fn phi4(j: &Composition, k: &Composition, l: &Composition) -> Result<Composition> {
    InjectionMaps::STANDARD.phi4(j, k, l)
}

/// The combinatorial description of `φ4`: put a bar between `U(K)` and `L`,
/// take the odd part nearest to it (the right one on a tie) and mirror it to
/// the same distance on the other side.
pub fn phi4_bar(j: &Composition, k: &Composition, l: &Composition) -> Result<Composition> {
    check_t4_prime(j, k, l)?;
    let u = k.rotate_longest_odd_suffix()?;
    let (left, right) = (u.parts(), l.parts());
    let dl = left.iter().rev().position(|p| p % 2 == 1).map(|i| i + 1);
    let dr = right.iter().position(|p| p % 2 == 1).map(|i| i + 1);
    let (mut left, mut right) = (left.to_vec(), right.to_vec());
    match (dl, dr) {
        (Some(a), Some(b)) if a < b => {
            let part = left.remove(left.len() - a);
            right.insert(a - 1, part);
        }
        (_, Some(b)) => {
            let part = right.remove(b - 1);
            let at = left.len() - (b - 1);
            left.insert(at, part);
        }
        _ => return Err(Error::Invariant("L has no odd part".into())),
    }
    Ok(Composition::concat(&[j, &cat(&[&left]), &cat(&[&right])]))
}

/// `w_I / (w'_J w'_K w'_L)`, insisting on exact division.
pub fn weight_ratio(image: &Composition, j: &Composition, k: &Composition, l: &Composition) -> Result<BigInt> {
    let den = weight_prime_of(j.parts()) * weight_prime_of(k.parts()) * weight_prime_of(l.parts());
    let num = weight_of(image.parts());
    if den.is_zero() || !(&num % &den).is_zero() {
        return Err(Error::Invariant(alloc::format!(
            "w({:?}) is not divisible by w'_J w'_K w'_L = {}",
            image,
            den
        )));
    }
    Ok(num / den)
}

fn to_i64(x: BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Invariant("coefficient out of range".into()))
}

fn with_f(ratio: BigInt, f: i64) -> Result<i64> {
    to_i64(ratio + f)
}

/// `c1 = w_{φ1}/(w'w'w') + f(j_1,k_1,l_1)`.
pub fn c1(j: &Composition, k: &Composition, l: &Composition) -> Result<i64> {
    c1_with(&InjectionMaps::STANDARD, j, k, l)
}

pub fn c1_with(maps: &InjectionMaps, j: &Composition, k: &Composition, l: &Composition) -> Result<i64> {
    let image = (maps.phi1)(j, k, l)?;
    with_f(weight_ratio(&image, j, k, l)?, f_poly(2, 3, 3))
}

/// `c2 = w_{φ2}/(w'w'w') + f(j_1,k_1,2)`.
pub fn c2(j: &Composition, k: &Composition, l: &Composition) -> Result<i64> {
    c2_with(&InjectionMaps::STANDARD, j, k, l)
}

pub fn c2_with(maps: &InjectionMaps, j: &Composition, k: &Composition, l: &Composition) -> Result<i64> {
    let image = (maps.phi2)(j, k, l)?;
    with_f(weight_ratio(&image, j, k, l)?, f_poly(first(j) as i64, first(k) as i64, 2))
}

/// `c3 = w_{φ3}/(w'w'w') + f(j_1,k_1,2)`.
pub fn c3(j: &Composition, k: &Composition, l: &Composition) -> Result<i64> {
    c3_with(&InjectionMaps::STANDARD, j, k, l)
}

pub fn c3_with(maps: &InjectionMaps, j: &Composition, k: &Composition, l: &Composition) -> Result<i64> {
    let image = (maps.phi3)(j, k, l)?;
    with_f(weight_ratio(&image, j, k, l)?, f_poly(first(j) as i64, first(k) as i64, 2))
}

/// `c4` on `T4 = {k_1 = l_1 = 2, K >= L}`: both images plus `f` when
/// `K > L`, the single image plus `f/2` when `K = L`.
pub fn c4(j: &Composition, k: &Composition, l: &Composition) -> Result<i64> {
    c4_with(&InjectionMaps::STANDARD, j, k, l)
}

pub fn c4_with(maps: &InjectionMaps, j: &Composition, k: &Composition, l: &Composition) -> Result<i64> {
    let f = f_poly(first(j) as i64, 2, 2);
    match k.cmp(l) {
        Ordering::Less => Err(domain!("c4 needs K >= L")),
        Ordering::Equal => with_f(weight_ratio(&maps.phi4(j, k, l)?, j, k, l)?, f / 2),
        Ordering::Greater => {
            let a = weight_ratio(&maps.phi4(j, k, l)?, j, k, l)?;
            let b = weight_ratio(&maps.phi4(j, l, k)?, j, k, l)?;
            with_f(a + b, f)
        }
    }
}
