//! Symmetric functions in the elementary basis with exact integer
//! coefficients.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::composition::{Composition, Partition};
use crate::error::{domain, Result};

/// Finite sum `Σ c_λ e_λ` with big-integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// symmetric functions. Terms iterate in [`Partition`] order.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct EFunction {
    terms: BTreeMap<Partition, BigInt>,
}

impl EFunction {
    pub fn zero() -> Self {
        EFunction::default()
    }

    pub fn one() -> Self {
        EFunction::term(Partition::default(), BigInt::one())
    }

    /// `c · e_λ`.
    pub fn term(partition: Partition, coeff: BigInt) -> Self {
        let mut f = EFunction::zero();
        f.add_term(partition, coeff);
        f
    }

    /// `c · e_I`, where `e_I` is `e_λ` for the sorted parts of `I`.
    pub fn e_term(composition: &Composition, coeff: impl Into<BigInt>) -> Self {
        EFunction::term(composition.underlying_partition(), coeff.into())
    }

    /// `e_1^k`.
    pub fn e1_power(k: usize) -> Self {
        EFunction::term(Partition::from_unsorted(alloc::vec![1; k]), BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, partition: &Partition) -> BigInt {
        self.terms.get(partition).cloned().unwrap_or_default()
    }

    /// Coefficient looked up by unsorted parts.
    pub fn coeff_of(&self, parts: &[usize]) -> BigInt {
        self.coeff(&Partition::from_unsorted(parts.to_vec()))
    }

    pub fn terms(&self) -> btree_map::Iter<'_, Partition, BigInt> {
        self.terms.iter()
    }

    /// Adds `coeff · e_λ` in place, pruning a resulting zero.
    pub fn add_term(&mut self, partition: Partition, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(partition) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `coeff · e_I` for an unsorted part list.
    pub fn add_parts(&mut self, parts: &[usize], coeff: BigInt) {
        self.add_term(Partition::from_unsorted(parts.to_vec()), coeff);
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return EFunction::zero();
        }
        EFunction {
            terms: self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect(),
        }
    }

    /// The common degree of all terms, or `None` for the zero function or an
    /// inhomogeneous one.
    pub fn degree(&self) -> Option<usize> {
        let mut sizes = self.terms.keys().map(Partition::size);
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// True iff every coefficient is nonnegative.
    pub fn is_e_positive(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Negative coefficients in canonical term order.
    pub fn negative_terms(&self) -> Vec<(Partition, BigInt)> {
        self.terms
            .iter()
            .filter(|(_, c)| c.is_negative())
            .map(|(p, c)| (p.clone(), c.clone()))
            .collect()
    }

    /// Terms where `self` and `other` differ, as `(λ, self_λ, other_λ)`.
    pub fn diff_terms(&self, other: &EFunction) -> Vec<(Partition, BigInt, BigInt)> {
        let mut keys: Vec<&Partition> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|k| {
                let (a, b) = (self.coeff(k), other.coeff(k));
                (a != b).then(|| (k.clone(), a, b))
            })
            .collect()
    }

    /// Sum of many functions.
    pub fn sum<'a>(parts: impl IntoIterator<Item = &'a EFunction>) -> EFunction {
        let mut out = EFunction::zero();
        for f in parts {
            out += f;
        }
        out
    }
}

impl AddAssign<&EFunction> for EFunction {
    fn add_assign(&mut self, rhs: &EFunction) {
        for (p, c) in &rhs.terms {
            self.add_term(p.clone(), c.clone());
        }
    }
}

impl AddAssign for EFunction {
    fn add_assign(&mut self, rhs: EFunction) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = core::mem::replace(self, rhs);
            for (p, c) in lhs.terms {
                self.add_term(p, c);
            }
        } else {
            for (p, c) in rhs.terms {
                self.add_term(p, c);
            }
        }
    }
}

impl SubAssign<&EFunction> for EFunction {
    fn sub_assign(&mut self, rhs: &EFunction) {
        for (p, c) in &rhs.terms {
            self.add_term(p.clone(), -c);
        }
    }
}

impl Add for &EFunction {
    type Output = EFunction;
    fn add(self, rhs: &EFunction) -> EFunction {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for EFunction {
    type Output = EFunction;
    fn add(mut self, rhs: EFunction) -> EFunction {
        self += rhs;
        self
    }
}

impl Sub for &EFunction {
    type Output = EFunction;
    fn sub(self, rhs: &EFunction) -> EFunction {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &EFunction {
    type Output = EFunction;
    fn neg(self) -> EFunction {
        EFunction {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), -c)).collect(),
        }
    }
}

/// Product in the `e` basis: `e_λ · e_μ = e_{λ ∪ μ}`, extended bilinearly.
impl Mul for &EFunction {
    type Output = EFunction;
    fn mul(self, rhs: &EFunction) -> EFunction {
        let mut out = EFunction::zero();
        for (p, a) in &self.terms {
            for (q, b) in &rhs.terms {
                out.add_term(p.union(q), a * b);
            }
        }
        out
    }
}

impl fmt::Debug for EFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `3·e[3] + 1·e[2,1]`; the zero function prints as `0`.
impl fmt::Display for EFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{}", c)?,
                (0, true) => write!(f, "-{}", c.abs())?,
                (_, false) => write!(f, " + {}", c)?,
                (_, true) => write!(f, " - {}", c.abs())?,
            }
            write!(f, "·e{}", p)?;
        }
        Ok(())
    }
}

/// Memoized power-sum to elementary conversion via Newton's identities:
/// `p_r = (-1)^{r-1} r e_r + Σ_{k=1}^{r-1} (-1)^{k-1} e_k p_{r-k}`.
#[derive(Debug, Clone, Default)]
pub struct PowerSumTable {
    cache: Vec<EFunction>,
}

impl PowerSumTable {
    pub fn new() -> Self {
        PowerSumTable::default()
    }

    /// `p_r` in the `e` basis.
    pub fn p(&mut self, r: usize) -> Result<&EFunction> {
        if r < 1 {
            return Err(domain!("power sum index must be at least 1"));
        }
        while self.cache.len() < r {
            let next = self.cache.len() + 1;
            let value = self.newton_step(next);
            self.cache.push(value);
        }
        Ok(&self.cache[r - 1])
    }

    fn newton_step(&self, r: usize) -> EFunction {
        let sign = |k: usize| if k % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        let mut out = EFunction::term(Partition::from_unsorted(alloc::vec![r]), sign(r) * r);
        for k in 1..r {
            let ek = EFunction::term(Partition::from_unsorted(alloc::vec![k]), sign(k));
            out += &(&ek * &self.cache[r - k - 1]);
        }
        out
    }

    /// `p_λ = ∏ p_{λ_i}`.
    pub fn p_partition(&mut self, partition: &Partition) -> Result<EFunction> {
        let mut out = EFunction::one();
        for &r in partition.parts() {
            let pr = self.p(r)?.clone();
            out = &out * &pr;
        }
        Ok(out)
    }
}

/// `p_r` in the `e` basis.
pub fn p_to_e(r: usize) -> Result<EFunction> {
    PowerSumTable::new().p(r).cloned()
}

/// `p_λ` in the `e` basis.
pub fn p_partition_to_e(partition: &Partition) -> Result<EFunction> {
    PowerSumTable::new().p_partition(partition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeMap;
    use alloc::vec;
    use proptest::prelude::*;
    use alloc::string::ToString;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn ef(terms: &[(&[usize], i64)]) -> EFunction {
        let mut f = EFunction::zero();
        for (p, c) in terms {
            f.add_term(part(p), BigInt::from(*c));
        }
        f
    }

    #[test]
    fn e_term_examples() {
        let c = |v: &[usize]| Composition::new(v.to_vec()).unwrap();
        assert_eq!(EFunction::e_term(&c(&[1, 2]), 1), ef(&[(&[2, 1], 1)]));
        assert_eq!(EFunction::e_term(&c(&[6, 2, 1, 1]), 7), ef(&[(&[6, 2, 1, 1], 7)]));
        assert_eq!(EFunction::e_term(&c(&[3, 3]), -2), ef(&[(&[3, 3], -2)]));
        assert!(EFunction::e_term(&c(&[3, 3]), 0).is_zero());
    }

    #[test]
    fn ring_examples() {
        let a = ef(&[(&[2, 1], 1)]);
        let b = ef(&[(&[2], 1)]);
        assert_eq!(&a * &b, ef(&[(&[2, 2, 1], 1)]));
        assert!((ef(&[(&[3], 3)]) + ef(&[(&[3], -3)])).is_zero());
        let p1 = ef(&[(&[1], 1)]);
        let p3 = ef(&[(&[3], 3), (&[2, 1], 1)]);
        assert_eq!(&p1 * &p3, ef(&[(&[3, 1], 3), (&[2, 1, 1], 1)]));
    }

    #[test]
    fn positivity() {
        let f = ef(&[(&[3], 3), (&[2, 1], 1)]);
        assert!(f.is_e_positive());
        assert!(f.negative_terms().is_empty());
        let g = ef(&[(&[2, 2], -1)]);
        assert!(!g.is_e_positive());
        assert_eq!(g.negative_terms(), vec![(part(&[2, 2]), BigInt::from(-1))]);
    }

    #[test]
    fn display_format() {
        assert_eq!(ef(&[(&[3], 3), (&[2, 1], 1)]).to_string(), "3·e[3] + 1·e[2,1]");
        assert_eq!(ef(&[(&[1, 1], 1), (&[2], -2)]).to_string(), "-2·e[2] + 1·e[1,1]");
        assert_eq!(EFunction::zero().to_string(), "0");
    }

    #[test]
    fn newton_examples() {
        assert_eq!(p_to_e(1).unwrap(), ef(&[(&[1], 1)]));
        assert_eq!(p_to_e(2).unwrap(), ef(&[(&[1, 1], 1), (&[2], -2)]));
        assert_eq!(p_to_e(3).unwrap(), ef(&[(&[1, 1, 1], 1), (&[2, 1], -3), (&[3], 3)]));
        assert!(p_to_e(0).is_err());
        assert_eq!(p_partition_to_e(&part(&[1])).unwrap(), ef(&[(&[1], 1)]));
        assert_eq!(p_partition_to_e(&part(&[2, 1])).unwrap(), ef(&[(&[1, 1, 1], 1), (&[2, 1], -2)]));
    }

    // Independent oracle: expand e_λ into monomials in k variables and compare
    // with the power sum Σ x_i^r. Monomials are exponent vectors.
    type Poly = BTreeMap<Vec<usize>, BigInt>;

    fn e_poly(r: usize, k: usize) -> Poly {
        let mut out = Poly::new();
        for mask in 0u32..(1 << k) {
            if mask.count_ones() as usize == r {
                let exps = (0..k).map(|i| ((mask >> i) & 1) as usize).collect();
                *out.entry(exps).or_default() += 1;
            }
        }
        out
    }

    fn poly_mul(a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *out.entry(e).or_default() += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn to_poly(f: &EFunction, k: usize) -> Poly {
        let mut out = Poly::new();
        for (p, c) in f.terms() {
            let mut term = Poly::new();
            term.insert(vec![0; k], c.clone());
            for &r in p.parts() {
                term = poly_mul(&term, &e_poly(r, k));
            }
            for (e, v) in term {
                *out.entry(e).or_default() += v;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    #[test]
    fn newton_matches_monomial_expansion() {
        let mut table = PowerSumTable::new();
        for r in 1..=6 {
            let k = r;
            let got = to_poly(table.p(r).unwrap(), k);
            let mut expect = Poly::new();
            for i in 0..k {
                let mut e = vec![0; k];
                e[i] = r;
                expect.insert(e, BigInt::one());
            }
            assert_eq!(got, expect, "r = {}", r);
        }
        // p_3 p_2 in five variables
        let got = to_poly(&p_partition_to_e(&part(&[3, 2])).unwrap(), 5);
        let mut expect = Poly::new();
        for i in 0..5 {
            for j in 0..5 {
                let mut e = vec![0; 5];
                e[i] += 3;
                e[j] += 2;
                *expect.entry(e).or_default() += 1;
            }
        }
        assert_eq!(got, expect);
    }

    fn arb_efun() -> impl Strategy<Value = EFunction> {
        proptest::collection::vec((proptest::collection::vec(1usize..4, 0..4), -5i64..6), 0..5).prop_map(|terms| {
            let mut f = EFunction::zero();
            for (p, c) in terms {
                f.add_term(Partition::from_unsorted(p), BigInt::from(c));
            }
            f
        })
    }

    fn arb_homogeneous(deg: usize) -> impl Strategy<Value = EFunction> {
        proptest::collection::vec((proptest::collection::vec(1usize..=deg, 1..=deg), -5i64..6), 0..4).prop_map(
            move |terms| {
                let mut f = EFunction::zero();
                for (mut p, c) in terms {
                    // trim to the requested degree, then pad with ones
                    let mut total = 0;
                    p.retain(|x| {
                        total += x;
                        total <= deg
                    });
                    let s: usize = p.iter().sum();
                    p.extend(core::iter::repeat_n(1, deg - s));
                    f.add_term(Partition::from_unsorted(p), BigInt::from(c));
                }
                f
            },
        )
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_efun(), b in arb_efun(), c in arb_efun(), s in -4i64..5) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            let s = BigInt::from(s);
            prop_assert_eq!((&a * &b).scale(&s), &a.scale(&s) * &b);
            prop_assert!((&a - &a).is_zero());
            for (_, v) in (&a * &b).terms() {
                prop_assert!(!v.is_zero());
            }
        }

        #[test]
        fn product_degree_adds(a in arb_homogeneous(3), b in arb_homogeneous(4)) {
            let prod = &a * &b;
            prop_assert!(prod.is_homogeneous());
            if !prod.is_zero() {
                prop_assert_eq!(prod.degree(), Some(7));
            }
        }
    }
}
