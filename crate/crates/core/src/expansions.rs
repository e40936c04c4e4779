//! Closed-form `e`-expansions of paths and three-legged spiders.

use alloc::vec::Vec;

use crate::composition::{min2_shards, weight_of, Min2Compositions};
use crate::efun::EFunction;
use crate::error::{domain, Result};
use crate::exec::{Executor, Sequential};

/// `X_{P_n} = Σ_I w_I e_I`, summed over the compositions with `w_I != 0`
/// (first part free, the rest at least 2).
pub fn path_csf_e(n: usize) -> Result<EFunction> {
    path_csf_e_with(n, &Sequential)
}

pub fn path_csf_e_with(n: usize, exec: &impl Executor) -> Result<EFunction> {
    if n < 1 {
        return Err(domain!("path needs n >= 1"));
    }
    let prefixes = path_support_prefixes(n);
    let pieces = exec.map(&prefixes, |prefix| {
        let mut acc = EFunction::zero();
        for comp in Min2Compositions::with_prefix(prefix, n) {
            acc.add_parts(comp.parts(), weight_of(comp.parts()));
        }
        acc
    });
    Ok(pieces.into_iter().fold(EFunction::zero(), |acc, f| acc + f))
}

/// Prefixes whose streams partition the path support of `n`, in order.
fn path_support_prefixes(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for first in 1..=n {
        match n - first {
            0 => out.push(alloc::vec![first]),
            1 => {}
            rest => {
                for shard in min2_shards(rest, 2).expect("rest >= 2") {
                    let mut p = alloc::vec![first];
                    p.extend_from_slice(&shard.prefix);
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Memo of path expansions, `X_{P_k}` for `k = 1, 2, ...`.
#[derive(Debug, Default, Clone)]
pub struct PathTable {
    cache: Vec<Option<EFunction>>,
}

impl PathTable {
    pub fn new() -> Self {
        PathTable::default()
    }

    pub fn get(&mut self, k: usize, exec: &impl Executor) -> Result<&EFunction> {
        if k < 1 {
            return Err(domain!("path needs n >= 1"));
        }
        if self.cache.len() < k {
            self.cache.resize(k, None);
        }
        if self.cache[k - 1].is_none() {
            self.cache[k - 1] = Some(path_csf_e_with(k, exec)?);
        }
        Ok(self.cache[k - 1].as_ref().expect("just filled"))
    }
}

/// `X_{S(a,b,c)} = X_{P_n} + Σ_{i=1}^{c} (X_{P_i} X_{P_{n-i}} - X_{P_{b+i}} X_{P_{n-b-i}})`
/// with `n = a + b + c + 1`.
pub fn spider_csf_e(a: usize, b: usize, c: usize) -> Result<EFunction> {
    spider_csf_e_with(a, b, c, &Sequential)
}

pub fn spider_csf_e_with(a: usize, b: usize, c: usize, exec: &impl Executor) -> Result<EFunction> {
    if !(a >= b && b >= c && c >= 1) {
        return Err(domain!("spider legs must satisfy a >= b >= c >= 1, got ({}, {}, {})", a, b, c));
    }
    let n = a + b + c + 1;
    let mut paths = PathTable::new();
    for k in 1..=n {
        paths.get(k, exec)?;
    }
    let path = |k: usize| paths.cache[k - 1].as_ref().expect("memoized");
    let indices: Vec<usize> = (1..=c).collect();
    let corrections = exec.map(&indices, |&i| {
        let plus = path(i) * path(n - i);
        let minus = path(b + i) * path(n - b - i);
        &plus - &minus
    });
    let mut out = path(n).clone();
    for f in corrections {
        out += f;
    }
    Ok(out)
}

/// `X_{S(4m+2, 2m, 1)}`, homogeneous of degree `6m + 4`.
pub fn spider4m_csf(m: usize) -> Result<EFunction> {
    spider4m_csf_with(m, &Sequential)
}

pub fn spider4m_csf_with(m: usize, exec: &impl Executor) -> Result<EFunction> {
    if m < 1 {
        return Err(domain!("m must be at least 1"));
    }
    spider_csf_e_with(4 * m + 2, 2 * m, 1, exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::Partition;
    use num_bigint::BigInt;

    fn ef(terms: &[(&[usize], i64)]) -> EFunction {
        let mut f = EFunction::zero();
        for (p, c) in terms {
            f.add_parts(p, BigInt::from(*c));
        }
        f
    }

    #[test]
    fn small_paths() {
        assert_eq!(path_csf_e(1).unwrap(), ef(&[(&[1], 1)]));
        assert_eq!(path_csf_e(3).unwrap(), ef(&[(&[3], 3), (&[2, 1], 1)]));
        assert!(path_csf_e(0).is_err());
    }

    #[test]
    fn path_five_by_hand() {
        // (5):5, (1,4):3, (4,1):0, (2,3):4, (3,2):3, (1,2,2):1
        let expect = ef(&[(&[5], 5), (&[4, 1], 3), (&[3, 2], 7), (&[2, 2, 1], 1)]);
        assert_eq!(path_csf_e(5).unwrap(), expect);
    }

    #[test]
    fn top_coefficient_is_n() {
        for n in 1..=16 {
            let f = path_csf_e(n).unwrap();
            assert_eq!(f.coeff(&Partition::new(alloc::vec![n]).unwrap()), BigInt::from(n));
        }
    }

    #[test]
    fn spider_rejects_unsorted_legs() {
        assert!(spider_csf_e(1, 2, 1).is_err());
        assert!(spider_csf_e(2, 2, 0).is_err());
        assert!(spider4m_csf(0).is_err());
    }

    #[test]
    fn spider4m_degree() {
        for m in 1..=3 {
            assert_eq!(spider4m_csf(m).unwrap().degree(), Some(6 * m + 4));
        }
    }
}
