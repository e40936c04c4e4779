//! The algebraic split of `X_{S(4m+2,2m,1)}`.
//!
//! With `n = 6m + 4`:
//!
//! ```text
//! X_S = e_1^2 Y_2 + e_1 X_1 + X_0
//! X_0 = Σ_{B2 pairs} (p_1 q_1 - p_1 - q_1) w'_P w'_Q e_{PQ} + Y
//! Y   = Σ_{T, K >= L, g >= 0} g w'_J w'_K w'_L e_{JKL} + W
//! W   = Σ_{I in A} w_I e_I + Σ_{T'} g w'_J w'_K w'_L e_{JKL}
//! ```
//!
//! Every piece except `W` is visibly a nonnegative `e_I`-expansion. The
//! functions here build each piece, and the `verify_*` functions check the
//! identities exactly.

mod sets;
mod triples;

pub(crate) use sets::ab_class;
pub use sets::{
    b1_from_triples, b1p_from_triples, b2_from_pairs, b2p_from_pairs, membership, s2_relaxed_factorizations,
    s_factorizations, s_membership, separation_surplus, AbSet, Factorization, SSetLabel,
};
pub use triples::{classify_triple, classify_triples, TripleClass, TripleSpace, TripleT};

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::composition::{min2_shards, min2_vec, product_minus_one, theta, weight_of, weight_prime_of, Composition};
use crate::efun::EFunction;
use crate::error::{domain, Error, Result};
use crate::exec::{Executor, Sequential};
use crate::expansions::spider4m_csf_with;

/// `f(j,k,l) = 2jkl - 3jk - 3jl - 2kl + 2j + 2k + 2l`.
pub fn f_poly(j: i64, k: i64, l: i64) -> i64 {
    2 * j * k * l - 3 * j * k - 3 * j * l - 2 * k * l + 2 * j + 2 * k + 2 * l
}

/// `f(j,k,l) >= 0` on `[2, bound]^3` except at `(2,3,3)` and where
/// `min(k, l) = 2`. Returns the offending triples.
pub fn f_exceptions(bound: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for j in 2..=bound {
        for k in 2..=bound {
            for l in 2..=bound {
                let allowed = (j, k, l) == (2, 3, 3) || k.min(l) == 2;
                if !allowed && f_poly(j, k, l) < 0 {
                    out.push((j, k, l));
                }
            }
        }
    }
    out
}

/// `g = f` when `K > L`, `g = f/2` when `K = L`.
pub fn g_coeff(j1: i64, k1: i64, l1: i64, cmp: Ordering) -> Result<i64> {
    let f = f_poly(j1, k1, l1);
    match cmp {
        Ordering::Greater => Ok(f),
        Ordering::Equal if f % 2 == 0 => Ok(f / 2),
        Ordering::Equal => Err(Error::Invariant(alloc::format!(
            "f({}, {}, {}) = {} is odd for K = L",
            j1, k1, l1, f
        ))),
        Ordering::Less => Err(domain!("g is only defined for K >= L")),
    }
}

/// `b(J,K,L) = w_{JKL} + w_{KJL} + w_{KLJ} - w_{JK} w_L - w_{KJ} w_L`.
pub fn b_coeff(j: &Composition, k: &Composition, l: &Composition) -> BigInt {
    let cat = |a: &Composition, b: &Composition, c: &Composition| weight_of(Composition::concat(&[a, b, c]).parts());
    let cat2 = |a: &Composition, b: &Composition| weight_of(Composition::concat(&[a, b]).parts());
    let wl = weight_of(l.parts());
    cat(j, k, l) + cat(k, j, l) + cat(k, l, j) - cat2(j, k) * &wl - cat2(k, j) * &wl
}

pub(crate) fn order_n(m: usize) -> usize {
    6 * m + 4
}

pub(crate) fn check_m(m: usize) -> Result<()> {
    if m < 1 {
        return Err(domain!("m must be at least 1"));
    }
    Ok(())
}

/// Runs `visit` on every composition of `C_n`, sharded across the executor,
/// and sums the per-shard functions.
fn sum_over_min2<F>(n: usize, exec: &impl Executor, visit: F) -> EFunction
where
    F: Fn(&[usize], &mut EFunction) + Sync + Send,
{
    let shards = min2_shards(n, 3).expect("n >= 2");
    let pieces = exec.map(&shards, |shard| {
        let mut acc = EFunction::zero();
        for comp in shard.iter() {
            visit(comp.parts(), &mut acc);
        }
        acc
    });
    pieces.into_iter().fold(EFunction::zero(), |acc, f| acc + f)
}

/// Sum over pairs `(P, Q) ∈ C_p × C_q`, sharded by `P`.
fn sum_over_pairs<F>(p: usize, q: usize, exec: &impl Executor, visit: F) -> EFunction
where
    F: Fn(&Composition, &Composition, &mut EFunction) + Sync + Send,
{
    let ps = min2_vec(p).expect("p >= 2");
    let qs = min2_vec(q).expect("q >= 2");
    let pieces = exec.map(&ps, |pc| {
        let mut acc = EFunction::zero();
        for qc in &qs {
            visit(pc, qc, &mut acc);
        }
        acc
    });
    pieces.into_iter().fold(EFunction::zero(), |acc, f| acc + f)
}

fn cat(parts: &[&[usize]]) -> Vec<usize> {
    let mut out = Vec::with_capacity(parts.iter().map(|p| p.len()).sum());
    for p in parts {
        out.extend_from_slice(p);
    }
    out
}

/// `w_{1I} = ∏ (i_k - 1)` over all parts of `I`.
fn w_one(parts: &[usize]) -> BigInt {
    product_minus_one(parts)
}

/// `Y_2 = Σ_{I ∈ C_{n-2}, Θ_I(4m+2) >= 1} w_{1I} e_I`.
pub fn y2_fun(m: usize) -> Result<EFunction> {
    y2_fun_with(m, &Sequential)
}

pub fn y2_fun_with(m: usize, exec: &impl Executor) -> Result<EFunction> {
    check_m(m)?;
    let n = order_n(m);
    Ok(sum_over_min2(n - 2, exec, |i, acc| {
        if theta(i, 4 * m + 2) >= 1 {
            acc.add_parts(i, w_one(i));
        }
    }))
}

/// `X_1`: the coefficient of `e_1` in the split.
pub fn x1_fun(m: usize) -> Result<EFunction> {
    x1_fun_with(m, &Sequential)
}

pub fn x1_fun_with(m: usize, exec: &impl Executor) -> Result<EFunction> {
    check_m(m)?;
    let n = order_n(m);
    let mut out = sum_over_min2(n - 1, exec, |i, acc| {
        let t = theta(i, 4 * m + 2);
        if t >= 2 {
            acc.add_parts(i, weight_of(i));
        }
        if t >= 1 {
            acc.add_parts(i, w_one(i));
        }
    });
    out += sum_over_pairs(4 * m + 2, 2 * m + 1, exec, |j, k, acc| {
        let (j1, k1) = (j.parts()[0] as i64, k.parts()[0] as i64);
        let c = BigInt::from(k1 * j1 - 2 * j1 + 1) * weight_prime_of(j.parts()) * weight_prime_of(k.parts());
        acc.add_parts(&cat(&[j.parts(), k.parts()]), c);
    });
    Ok(out)
}

/// `X_0 = Σ_{I ∈ C_n} w_I e_I - Σ_{P ∈ C_{4m+3}, Q ∈ C_{2m+1}} w_P w_Q e_{PQ}`.
pub fn x0_fun(m: usize) -> Result<EFunction> {
    x0_fun_with(m, &Sequential)
}

pub fn x0_fun_with(m: usize, exec: &impl Executor) -> Result<EFunction> {
    check_m(m)?;
    let n = order_n(m);
    let mut out = sum_over_min2(n, exec, |i, acc| acc.add_parts(i, weight_of(i)));
    out -= &sum_over_pairs(4 * m + 3, 2 * m + 1, exec, |p, q, acc| {
        acc.add_parts(&cat(&[p.parts(), q.parts()]), weight_of(p.parts()) * weight_of(q.parts()));
    });
    Ok(out)
}

/// `e_1^2 Y_2 + e_1 X_1 + X_0`, which must equal `X_{S(4m+2,2m,1)}`.
pub fn split_recomposition(m: usize, exec: &impl Executor) -> Result<EFunction> {
    let y2 = y2_fun_with(m, exec)?;
    let x1 = x1_fun_with(m, exec)?;
    let x0 = x0_fun_with(m, exec)?;
    Ok(&(&EFunction::e1_power(2) * &y2) + &(&(&EFunction::e1_power(1) * &x1) + &x0))
}

/// `Σ_{P ∈ C_{4m+3}, Q ∈ C_{2m+1}, Θ_P(2m+1) >= 2} (p_1 q_1 - p_1 - q_1) w'_P w'_Q e_{PQ}`.
pub fn b2_pair_sum(m: usize, exec: &impl Executor) -> Result<EFunction> {
    check_m(m)?;
    Ok(sum_over_pairs(4 * m + 3, 2 * m + 1, exec, |p, q, acc| {
        if theta(p.parts(), 2 * m + 1) >= 2 {
            let (p1, q1) = (p.parts()[0] as i64, q.parts()[0] as i64);
            let c = BigInt::from(p1 * q1 - p1 - q1) * weight_prime_of(p.parts()) * weight_prime_of(q.parts());
            acc.add_parts(&cat(&[p.parts(), q.parts()]), c);
        }
    }))
}

/// `Σ_{I ∈ A} w_I e_I`.
pub fn a_sum(m: usize, exec: &impl Executor) -> Result<EFunction> {
    check_m(m)?;
    Ok(sum_over_min2(order_n(m), exec, |i, acc| {
        if ab_class(i, m) == AbSet::A {
            acc.add_parts(i, weight_of(i));
        }
    }))
}

fn sum_over_triples<F>(m: usize, exec: &impl Executor, visit: F) -> EFunction
where
    F: Fn(&Composition, &Composition, &Composition, &mut EFunction) + Sync + Send,
{
    let space = TripleSpace::new(m).expect("m >= 1");
    let pieces = exec.map(&space.js, |j| {
        let mut acc = EFunction::zero();
        for k in &space.ks {
            for l in &space.ks {
                visit(j, k, l, &mut acc);
            }
        }
        acc
    });
    pieces.into_iter().fold(EFunction::zero(), |acc, f| acc + f)
}

fn jkl_parts(j: &Composition, k: &Composition, l: &Composition) -> Vec<usize> {
    cat(&[j.parts(), k.parts(), l.parts()])
}

/// `g(j_1,k_1,l_1) w'_J w'_K w'_L` for a triple with `K >= L`.
pub fn g_term(j: &Composition, k: &Composition, l: &Composition) -> Result<BigInt> {
    let g = g_coeff(j.parts()[0] as i64, k.parts()[0] as i64, l.parts()[0] as i64, k.cmp(l))?;
    Ok(BigInt::from(g) * weight_prime_of(j.parts()) * weight_prime_of(k.parts()) * weight_prime_of(l.parts()))
}

/// `Y = Σ_{T} b(J,K,L) e_{JKL} + Σ_{I ∈ A} w_I e_I`.
pub fn y_fun(m: usize) -> Result<EFunction> {
    y_fun_with(m, &Sequential)
}

pub fn y_fun_with(m: usize, exec: &impl Executor) -> Result<EFunction> {
    check_m(m)?;
    let mut out = sum_over_triples(m, exec, |j, k, l, acc| acc.add_parts(&jkl_parts(j, k, l), b_coeff(j, k, l)));
    out += a_sum(m, exec)?;
    Ok(out)
}

/// `Σ_{T, K >= L, g >= 0} g w'_J w'_K w'_L e_{JKL}`.
pub fn nonneg_g_sum(m: usize, exec: &impl Executor) -> Result<EFunction> {
    check_m(m)?;
    Ok(sum_over_triples(m, exec, |j, k, l, acc| {
        if k >= l {
            let t = g_term(j, k, l).expect("K >= L and f even on K = L");
            if t >= BigInt::zero() {
                acc.add_parts(&jkl_parts(j, k, l), t);
            }
        }
    }))
}

/// `W = Σ_{I ∈ A} w_I e_I + Σ_{T'} g w'_J w'_K w'_L e_{JKL}`.
pub fn w_fun(m: usize) -> Result<EFunction> {
    w_fun_with(m, &Sequential)
}

pub fn w_fun_with(m: usize, exec: &impl Executor) -> Result<EFunction> {
    check_m(m)?;
    let mut out = sum_over_triples(m, exec, |j, k, l, acc| {
        if classify_triple(j, k, l) != TripleClass::Unmatched {
            acc.add_parts(&jkl_parts(j, k, l), g_term(j, k, l).expect("T' has K >= L"));
        }
    });
    out += a_sum(m, exec)?;
    Ok(out)
}

/// Outcome of an exact identity check, with a few auxiliary facts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub lemma: &'static str,
    pub m: usize,
    pub identity_holds: bool,
    /// Up to [`MAX_MISMATCHES`] terms as `(λ, lhs, rhs)`.
    pub mismatches: Vec<(crate::Partition, BigInt, BigInt)>,
    pub side_checks: Vec<SideCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideCheck {
    pub name: String,
    pub holds: bool,
}

pub const MAX_MISMATCHES: usize = 20;

impl IdentityReport {
    fn new(lemma: &'static str, m: usize, lhs: &EFunction, rhs: &EFunction) -> Self {
        let mut mismatches = lhs.diff_terms(rhs);
        mismatches.truncate(MAX_MISMATCHES);
        IdentityReport {
            lemma,
            m,
            identity_holds: lhs == rhs,
            mismatches,
            side_checks: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, holds: bool) {
        self.side_checks.push(SideCheck { name: name.into(), holds });
    }

    pub fn passed(&self) -> bool {
        self.identity_holds && self.side_checks.iter().all(|c| c.holds)
    }
}

/// `e_1^2 Y_2 + e_1 X_1 + X_0 == X_{S(4m+2,2m,1)}`, plus the coefficient
/// simplifications used to get there.
pub fn verify_split(m: usize, exec: &impl Executor) -> Result<IdentityReport> {
    check_m(m)?;
    let n = order_n(m);
    let spider = spider4m_csf_with(m, exec)?;
    let recomposed = split_recomposition(m, exec)?;
    let mut report = IdentityReport::new("x0", m, &recomposed, &spider);

    let js = min2_vec(4 * m + 2)?;
    let ks = min2_vec(2 * m + 1)?;
    let mut coeff_ok = true;
    let mut simplification_ok = true;
    for j in &js {
        for k in &ks {
            let (j1, k1) = (j.parts()[0] as i64, k.parts()[0] as i64);
            let c = k1 * j1 - 2 * j1 + 1;
            coeff_ok &= c >= 1;
            let jk = cat(&[j.parts(), k.parts()]);
            let lhs = w_one(&jk) + weight_of(&jk) - w_one(j.parts()) * weight_of(k.parts());
            let rhs = BigInt::from(c) * weight_prime_of(j.parts()) * weight_prime_of(k.parts());
            simplification_ok &= lhs == rhs;
        }
    }
    report.check("k1*j1 - 2*j1 + 1 >= 1", coeff_ok);
    report.check("w_1JK + w_JK - w_1J w_K = (k1 j1 - 2 j1 + 1) w'_J w'_K", simplification_ok);

    // Z_1 collapses to the w_{1I} part on Θ = 1
    let mut z1 = sum_over_min2(n - 1, exec, |i, acc| {
        if theta(i, 4 * m + 2) == 1 {
            acc.add_parts(i, w_one(i) + weight_of(i));
        }
    });
    z1 -= &sum_over_pairs(4 * m + 3, 2 * m, exec, |j, k, acc| {
        acc.add_parts(&cat(&[j.parts(), k.parts()]), weight_of(j.parts()) * w_one(k.parts()));
    });
    let z1_expected = sum_over_min2(n - 1, exec, |i, acc| {
        if theta(i, 4 * m + 2) == 1 {
            acc.add_parts(i, w_one(i));
        }
    });
    report.check("Z_1 simplification", z1 == z1_expected);

    // Y_2 collapses to the Θ >= 1 part
    let mut y2_full = sum_over_min2(n - 2, exec, |i, acc| acc.add_parts(i, w_one(i)));
    y2_full -= &sum_over_pairs(4 * m + 2, 2 * m, exec, |j, k, acc| {
        acc.add_parts(&cat(&[j.parts(), k.parts()]), w_one(j.parts()) * w_one(k.parts()));
    });
    report.check("Y_2 simplification", y2_full == y2_fun_with(m, exec)?);
    Ok(report)
}

/// `X_0 == Σ_{B2 pairs} (p_1 q_1 - p_1 - q_1) w'_P w'_Q e_{PQ} + Y`.
pub fn verify_y(m: usize, exec: &impl Executor) -> Result<IdentityReport> {
    check_m(m)?;
    let x0 = x0_fun_with(m, exec)?;
    let recomposed = &b2_pair_sum(m, exec)? + &y_fun_with(m, exec)?;
    let mut report = IdentityReport::new("y", m, &recomposed, &x0);

    let ps = min2_vec(4 * m + 3)?;
    let qs = min2_vec(2 * m + 1)?;
    let nonneg = ps.iter().all(|p| {
        let p1 = p.parts()[0] as i64;
        qs.iter().all(|q| {
            let q1 = q.parts()[0] as i64;
            p1 * q1 - p1 - q1 >= 0
        })
    });
    report.check("p1*q1 - p1 - q1 >= 0", nonneg);

    let n = order_n(m);
    let exactly_one = crate::composition::compositions_min2(n)?.all(|i| {
        let hits = AbSet::ALL.iter().filter(|s| membership(&i, **s, m).unwrap_or(false)).count();
        hits == 1
    });
    report.check("A, B1, B1', B2, B2' partition C_n", exactly_one);
    Ok(report)
}

/// `Y == Σ_{T, K >= L, g >= 0} g w'w'w' e_{JKL} + W`, and `T'` equals the union
/// of the four classes.
pub fn verify_t1234(m: usize, exec: &impl Executor) -> Result<IdentityReport> {
    check_m(m)?;
    let y = y_fun_with(m, exec)?;
    let recomposed = &nonneg_g_sum(m, exec)? + &w_fun_with(m, exec)?;
    let mut report = IdentityReport::new("t1234", m, &recomposed, &y);

    let space = TripleSpace::new(m)?;
    let mut classes_ok = true;
    let mut pair_identity_ok = true;
    for (j, k, l) in space.iter() {
        let (j1, k1, l1) = (j.parts()[0] as i64, k.parts()[0] as i64, l.parts()[0] as i64);
        let in_t_prime = k >= l && f_poly(j1, k1, l1) < 0;
        classes_ok &= in_t_prime == (classify_triple(j, k, l) != TripleClass::Unmatched);
        let pair = b_coeff(j, k, l) + b_coeff(j, l, k);
        let expected = BigInt::from(f_poly(j1, k1, l1))
            * weight_prime_of(j.parts())
            * weight_prime_of(k.parts())
            * weight_prime_of(l.parts());
        pair_identity_ok &= pair == expected;
    }
    report.check("T' = T1 ⊔ T2 ⊔ T3 ⊔ T4", classes_ok);
    report.check("b(J,K,L) + b(J,L,K) = f w'_J w'_K w'_L", pair_identity_ok);
    Ok(report)
}
