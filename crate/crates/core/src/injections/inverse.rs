//! Reconstruction of `(J, K, L)` from an image.

use alloc::vec::Vec;

use crate::composition::{surplus_of, Composition};
use crate::decomposition::{s_factorizations, Factorization, SSetLabel};
use crate::error::{domain, Result};

use super::in_t41;

type Triple = (Composition, Composition, Composition);

fn comp(parts: Vec<usize>) -> Composition {
    Composition::new(parts).expect("parts come from a composition")
}

fn check_size(image: &Composition, m: usize) -> Result<()> {
    if m < 1 || image.size() != 6 * m + 4 {
        return Err(domain!("{:?} is not a composition of 6m + 4 for m = {}", image, m));
    }
    Ok(())
}

/// Splits `parts` at the given running sums, requiring each to be hit exactly.
fn split_at_sums(parts: &[usize], sums: &[usize]) -> Option<Vec<Vec<usize>>> {
    let mut out = Vec::with_capacity(sums.len() + 1);
    let mut cur = Vec::new();
    let mut acc = 0;
    let mut targets = sums.iter().copied().peekable();
    for &p in parts {
        cur.push(p);
        acc += p;
        if let Some(&t) = targets.peek() {
            if acc == t {
                out.push(core::mem::take(&mut cur));
                targets.next();
            } else if acc > t {
                return None;
            }
        }
    }
    if targets.next().is_some() || cur.is_empty() {
        return None;
    }
    out.push(cur);
    Some(out)
}

fn unique(image: &Composition, label: SSetLabel, m: usize) -> Result<Factorization> {
    let mut facs = s_factorizations(image, label, m)?;
    match facs.len() {
        1 => Ok(facs.pop().expect("one element")),
        0 => Err(domain!("{:?} is not in {}", image, label)),
        k => Err(domain!("{:?} has {} factorizations in {}", image, k, label)),
    }
}

/// Inverse of `φ1`: `P` is the prefix of size `2m+3`; `J` ends in `2` exactly
/// when `p_1 = 2`.
pub fn phi1_inverse(image: &Composition, m: usize) -> Result<Triple> {
    check_size(image, m)?;
    let pieces = split_at_sums(image.parts(), &[2 * m + 3, 4 * m + 4])
        .ok_or_else(|| domain!("{:?} has no (2m+3, 2m+1, 2m) split", image))?;
    let (p, k, r) = (&pieces[0], &pieces[1], &pieces[2]);
    if p.len() < 2 || r[0] != 2 {
        return Err(domain!("{:?} is not an image of φ1", image));
    }
    let last = if p[0] == 2 { 2 } else { p[p.len() - 1] };
    let mut j = Vec::with_capacity(p.len());
    j.push(2);
    j.extend_from_slice(&p[1..p.len() - 1]);
    j.push(last);
    let mut l = r.clone();
    l[0] = 3;
    Ok((comp(j), comp(k.clone()), comp(l)))
}

/// Inverse of `φ2`: drop `q_1 = 2`, move `q_{-1}` back to the front, and put
/// `2` in front of `R`.
pub fn phi2_inverse(image: &Composition, m: usize) -> Result<Triple> {
    check_size(image, m)?;
    if m < 2 {
        return Err(domain!("φ2 has no images for m = 1"));
    }
    let pieces = split_at_sums(image.parts(), &[2 * m + 2, 4 * m + 5])
        .ok_or_else(|| domain!("{:?} has no (2m+2, 2m+3, 2m-1) split", image))?;
    let (j, q, r) = (&pieces[0], &pieces[1], &pieces[2]);
    if q.len() < 2 || q[0] != 2 {
        return Err(domain!("{:?} is not an image of φ2", image));
    }
    let mut k = Vec::with_capacity(q.len() - 1);
    k.push(q[q.len() - 1]);
    k.extend_from_slice(&q[1..q.len() - 1]);
    let mut l = Vec::with_capacity(r.len() + 1);
    l.push(2);
    l.extend_from_slice(r);
    Ok((comp(j.clone()), comp(k), comp(l)))
}

/// Inverse of `φ3`: the first odd part of `R` returns to the front of `Q`.
pub fn phi3_inverse(image: &Composition, m: usize) -> Result<Triple> {
    check_size(image, m)?;
    let fac = unique(image, SSetLabel::S3, m)?;
    let fo = fac.r.first_odd().expect("R has odd parts") - 1;
    let mut k = Vec::with_capacity(fac.q.len() + 1);
    k.push(fac.r.parts()[fo]);
    k.extend_from_slice(fac.q.parts());
    let mut l = fac.r.into_parts();
    l.remove(fo);
    Ok((fac.p, comp(k), comp(l)))
}

/// Inverse of `φ41`: `q_lo` goes back into `R` after `ℓ(Q) - lo(Q)` parts, and
/// `K` is `Q` without `q_lo` with its odd prefix moved to the end.
pub fn phi41_inverse(image: &Composition, m: usize) -> Result<Triple> {
    check_size(image, m)?;
    let fac = unique(image, SSetLabel::S41, m)?;
    let lo = fac.q.last_odd().expect("Q has odd parts") - 1;
    let y = fac.q.len() - lo - 1;
    let mut u = fac.q.into_parts();
    let moved = u.remove(lo);
    let mut l = fac.r.into_parts();
    if y > l.len() {
        return Err(domain!("{:?} is not an image of φ41", image));
    }
    l.insert(y, moved);
    let k = comp(u).rotate_longest_odd_prefix()?;
    Ok((fac.p, k, comp(l)))
}

/// Inverse of `φ42`: `r_fo` goes back into `Q` with `fo(R) - 1` parts after it.
pub fn phi42_inverse(image: &Composition, m: usize) -> Result<Triple> {
    check_size(image, m)?;
    let fac = unique(image, SSetLabel::S42, m)?;
    let fo = fac.r.first_odd().expect("R has odd parts") - 1;
    let mut l = fac.r.into_parts();
    let moved = l.remove(fo);
    let mut u = fac.q.into_parts();
    if fo > u.len() {
        return Err(domain!("{:?} is not an image of φ42", image));
    }
    let at = u.len() - fo;
    u.insert(at, moved);
    let k = comp(u).rotate_longest_odd_prefix()?;
    Ok((fac.p, k, comp(l)))
}

/// Inverse of `φ4`, trying the `S41` reading first.
pub fn phi4_inverse(image: &Composition, m: usize) -> Result<Triple> {
    if let Ok(t) = phi41_inverse(image, m) {
        if in_t41(&t.1, &t.2)? {
            return Ok(t);
        }
    }
    let t = phi42_inverse(image, m)?;
    if in_t41(&t.1, &t.2)? {
        return Err(domain!("{:?} is not an image of φ4", image));
    }
    Ok(t)
}

/// The bar reading of `q_lo`: cut after the part covering cell `4m+4` and
/// take the nearest odd part on the left of the cut.
pub fn bar_q_lo(image: &Composition, m: usize) -> Option<usize> {
    let parts = image.parts();
    surplus_of(parts, 4 * m + 4)?;
    let mut acc = 0;
    let mut cut = parts.len();
    for (i, &p) in parts.iter().enumerate() {
        acc += p;
        if acc >= 4 * m + 4 {
            cut = i + 1;
            break;
        }
    }
    parts[..cut].iter().rev().copied().find(|p| p % 2 == 1)
}
