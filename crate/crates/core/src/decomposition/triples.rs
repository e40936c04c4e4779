//! The triple set `T = C_{2m+2} × C_{2m+1} × C_{2m+1}` and its classes.

use alloc::vec::Vec;
use core::fmt;

use crate::composition::{min2_vec, Composition};
use crate::error::Result;

use super::{check_m, f_poly};

/// Class of a triple among the negative-coefficient families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TripleClass {
    T1,
    T2,
    T3,
    T4,
    Unmatched,
}

impl TripleClass {
    pub const MATCHED: [TripleClass; 4] = [TripleClass::T1, TripleClass::T2, TripleClass::T3, TripleClass::T4];
}

impl fmt::Display for TripleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TripleClass::T1 => "T1",
            TripleClass::T2 => "T2",
            TripleClass::T3 => "T3",
            TripleClass::T4 => "T4",
            TripleClass::Unmatched => "unmatched",
        };
        f.write_str(s)
    }
}

/// Classifies `(J, K, L)` by its first parts and the order of `K` and `L`.
pub fn classify_triple(j: &Composition, k: &Composition, l: &Composition) -> TripleClass {
    let (j1, k1, l1) = (j.parts()[0], k.parts()[0], l.parts()[0]);
    let k_ge_l = k >= l;
    if j1 == 2 && k1 == 3 && l1 == 3 && k_ge_l {
        return TripleClass::T1;
    }
    if k1 == 2 && l1 == 2 {
        return if k_ge_l { TripleClass::T4 } else { TripleClass::Unmatched };
    }
    if l1 == 2 && f_poly(j1 as i64, k1 as i64, 2) < 0 {
        if k1 % 2 == 1 {
            return TripleClass::T3;
        }
        if k1 >= 4 {
            return TripleClass::T2;
        }
    }
    TripleClass::Unmatched
}

/// A classified element of `T`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripleT {
    pub j: Composition,
    pub k: Composition,
    pub l: Composition,
    pub class: TripleClass,
}

impl TripleT {
    /// `JKL`.
    pub fn concat(&self) -> Composition {
        Composition::concat(&[&self.j, &self.k, &self.l])
    }
}

/// The factors of `T`, materialized once.
#[derive(Debug, Clone)]
pub struct TripleSpace {
    pub m: usize,
    pub js: Vec<Composition>,
    pub ks: Vec<Composition>,
}

impl TripleSpace {
    pub fn new(m: usize) -> Result<Self> {
        check_m(m)?;
        Ok(TripleSpace {
            m,
            js: min2_vec(2 * m + 2)?,
            ks: min2_vec(2 * m + 1)?,
        })
    }

    pub fn len(&self) -> usize {
        self.js.len() * self.ks.len() * self.ks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(J, K, L)` in lexicographic order of `(J, K, L)`.
    pub fn iter(&self) -> impl Iterator<Item = (&Composition, &Composition, &Composition)> + '_ {
        self.js
            .iter()
            .flat_map(move |j| self.ks.iter().flat_map(move |k| self.ks.iter().map(move |l| (j, k, l))))
    }

    pub fn classified(&self) -> impl Iterator<Item = TripleT> + '_ {
        self.iter().map(|(j, k, l)| TripleT {
            j: j.clone(),
            k: k.clone(),
            l: l.clone(),
            class: classify_triple(j, k, l),
        })
    }
}

/// Every triple of `T` with its class, in lexicographic order.
pub fn classify_triples(m: usize) -> Result<impl Iterator<Item = TripleT>> {
    let space = TripleSpace::new(m)?;
    let (js, ks) = (space.js, space.ks);
    let mut out = Vec::with_capacity(js.len() * ks.len() * ks.len());
    for j in &js {
        for k in &ks {
            for l in &ks {
                out.push(TripleT {
                    j: j.clone(),
                    k: k.clone(),
                    l: l.clone(),
                    class: classify_triple(j, k, l),
                });
            }
        }
    }
    Ok(out.into_iter())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn m1_space() {
        let space = TripleSpace::new(1).unwrap();
        assert_eq!(space.len(), 2);
        let classes: Vec<_> = space.classified().map(|t| t.class).collect();
        assert_eq!(classes, [TripleClass::T1, TripleClass::Unmatched]);
    }

    #[test]
    fn examples() {
        assert_eq!(classify_triple(&c(&[2, 2]), &c(&[3]), &c(&[3])), TripleClass::T1);
        assert_eq!(classify_triple(&c(&[2, 2, 2]), &c(&[2, 3]), &c(&[2, 3])), TripleClass::T4);
        assert_eq!(classify_triple(&c(&[8]), &c(&[4, 3]), &c(&[2, 3, 2])), TripleClass::T2);
        assert_eq!(classify_triple(&c(&[8, 6]), &c(&[3, 4, 3, 3]), &c(&[2, 3, 2, 6])), TripleClass::T3);
        assert_eq!(classify_triple(&c(&[2, 2, 2]), &c(&[2, 3]), &c(&[5])), TripleClass::Unmatched);
    }

    #[test]
    fn m10_triple_is_in_t() {
        let space = TripleSpace::new(10).unwrap();
        let (j, k) = (c(&[18, 2, 2]), c(&[18, 3]));
        assert!(space.js.contains(&j) && space.ks.contains(&k));
    }

    #[test]
    fn counts() {
        assert_eq!(TripleSpace::new(3).unwrap().len(), 13 * 8 * 8);
        assert_eq!(classify_triples(2).unwrap().count(), 5 * 3 * 3);
    }
}
