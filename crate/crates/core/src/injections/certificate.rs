//! The end-to-end positivity certificate for one `m`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::composition::{min2_shards, weight_of, Composition};
use crate::decomposition::{
    ab_class, b2_pair_sum, g_term, nonneg_g_sum, w_fun_with, x1_fun_with, y2_fun_with, AbSet, TripleClass, TripleSpace,
};
use crate::efun::EFunction;
use crate::error::Result;
use crate::exec::{Executor, Sequential};
use crate::expansions::spider4m_csf_with;

use super::InjectionMaps;

/// One negative `W` term together with the `A` terms that absorb it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub j: Composition,
    pub k: Composition,
    pub l: Composition,
    pub class: TripleClass,
    pub images: Vec<Composition>,
    /// Coefficient of `e_{JKL}` after the images are added.
    pub net: BigInt,
}

/// The outcome of [`certify`].
#[derive(Debug, Clone)]
pub struct Certificate {
    pub m: usize,
    pub groups: Vec<Group>,
    pub class_counts: BTreeMap<TripleClass, usize>,
    /// Groups whose net coefficient is exactly zero.
    pub zero_net_count: usize,
    /// `A` compositions not used as images, and the sum of their weights.
    pub leftover_a_count: usize,
    pub leftover_a_weight: BigInt,
    /// The groups and leftover terms add back up to `W`.
    pub w_recomposed: bool,
    /// `e_1^2 Y_2 + e_1 X_1 + (B2 sum) + (g >= 0 sum) + W` equals the spider.
    pub identity_checked: bool,
    /// Every piece of that sum is visibly nonnegative.
    pub pieces_nonnegative: bool,
    /// Direct check on the expanded spider.
    pub spider_e_positive: bool,
    pub verdict: bool,
    pub witnesses: Vec<String>,
}

const MAX_WITNESSES: usize = 20;

fn note(witnesses: &mut Vec<String>, w: impl FnOnce() -> String) {
    if witnesses.len() < MAX_WITNESSES {
        witnesses.push(w());
    }
}

fn build_group(
    j: &Composition,
    k: &Composition,
    l: &Composition,
    class: TripleClass,
    maps: &InjectionMaps,
) -> core::result::Result<Group, String> {
    let who = || alloc::format!("J={} K={} L={}", j, k, l);
    let err = |e: crate::Error| alloc::format!("{}: {}", who(), e);
    let images = match class {
        TripleClass::T1 => alloc::vec![(maps.phi1)(j, k, l).map_err(err)?],
        TripleClass::T2 => alloc::vec![(maps.phi2)(j, k, l).map_err(err)?],
        TripleClass::T3 => alloc::vec![(maps.phi3)(j, k, l).map_err(err)?],
        TripleClass::T4 => match k.cmp(l) {
            Ordering::Equal => alloc::vec![maps.phi4(j, k, l).map_err(err)?],
            _ => alloc::vec![maps.phi4(j, k, l).map_err(err)?, maps.phi4(j, l, k).map_err(err)?],
        },
        TripleClass::Unmatched => return Err(alloc::format!("{}: not in a matched class", who())),
    };
    let jkl = Composition::concat(&[j, k, l]).underlying_partition();
    for img in &images {
        if img.size() != jkl.size() || !img.is_min2() || img.underlying_partition() != jkl {
            return Err(alloc::format!("{}: image {} has the wrong shape", who(), img));
        }
    }
    let mut net = g_term(j, k, l).map_err(err)?;
    for img in &images {
        net += weight_of(img.parts());
    }
    Ok(Group {
        j: j.clone(),
        k: k.clone(),
        l: l.clone(),
        class,
        images,
        net,
    })
}

/// Builds and checks the certificate with the standard maps.
pub fn certify(m: usize) -> Result<Certificate> {
    certify_with(m, &InjectionMaps::STANDARD, &Sequential)
}

/// Builds the groups, checks every net is nonnegative (and zero for `T4`),
/// that images are distinct members of `A`, that groups plus unused `A`
/// terms recompose `W`, and that the whole chain recomposes the spider.
/// Failures are recorded as witnesses and turn the verdict false.
pub fn certify_with(m: usize, maps: &InjectionMaps, exec: &impl Executor) -> Result<Certificate> {
    let space = TripleSpace::new(m)?;
    let n = 6 * m + 4;
    let mut witnesses = Vec::new();

    let per_j = exec.map(&space.js, |j| {
        let mut groups = Vec::new();
        let mut errors = Vec::new();
        for k in &space.ks {
            for l in &space.ks {
                let class = crate::decomposition::classify_triple(j, k, l);
                if class == TripleClass::Unmatched {
                    continue;
                }
                match build_group(j, k, l, class, maps) {
                    Ok(g) => groups.push(g),
                    Err(e) => errors.push(e),
                }
            }
        }
        (groups, errors)
    });
    let mut groups = Vec::new();
    for (g, e) in per_j {
        groups.extend(g);
        for msg in e {
            note(&mut witnesses, || msg);
        }
    }
    let mut ok = witnesses.is_empty();

    let mut class_counts: BTreeMap<TripleClass, usize> = TripleClass::MATCHED.into_iter().map(|c| (c, 0)).collect();
    let mut zero_net_count = 0;
    let mut used: BTreeSet<Composition> = BTreeSet::new();
    let mut grouped = EFunction::zero();
    for g in &groups {
        *class_counts.entry(g.class).or_default() += 1;
        if g.net.is_zero() {
            zero_net_count += 1;
        }
        let bad_net = g.net < BigInt::zero() || (g.class == TripleClass::T4 && !g.net.is_zero());
        if bad_net {
            ok = false;
            note(&mut witnesses, || {
                alloc::format!("J={} K={} L={} ({}): net coefficient {}", g.j, g.k, g.l, g.class, g.net)
            });
        }
        for img in &g.images {
            if ab_class(img.parts(), m) != AbSet::A {
                ok = false;
                note(&mut witnesses, || alloc::format!("image {} is not in A", img));
            }
            if !used.insert(img.clone()) {
                ok = false;
                note(&mut witnesses, || alloc::format!("image {} is used twice", img));
            }
        }
        grouped.add_parts(Composition::concat(&[&g.j, &g.k, &g.l]).parts(), g.net.clone());
    }

    // unused A terms
    let shards = min2_shards(n, 3)?;
    let leftovers = exec.map(&shards, |s| {
        let mut f = EFunction::zero();
        let (mut count, mut weight) = (0usize, BigInt::zero());
        for i in s.iter() {
            if ab_class(i.parts(), m) == AbSet::A && !used.contains(&i) {
                let w = weight_of(i.parts());
                count += 1;
                weight += &w;
                f.add_parts(i.parts(), w);
            }
        }
        (f, count, weight)
    });
    let (mut leftover_a_count, mut leftover_a_weight) = (0, BigInt::zero());
    for (f, c, w) in leftovers {
        grouped += f;
        leftover_a_count += c;
        leftover_a_weight += w;
    }

    let w = w_fun_with(m, exec)?;
    let w_recomposed = grouped == w;
    if !w_recomposed {
        note(&mut witnesses, || {
            let d = grouped.diff_terms(&w);
            alloc::format!("groups do not recompose W; first differing term {:?}", d.first())
        });
    }

    let y2 = y2_fun_with(m, exec)?;
    let x1 = x1_fun_with(m, exec)?;
    let b2 = b2_pair_sum(m, exec)?;
    let gpos = nonneg_g_sum(m, exec)?;
    let pieces_nonnegative = [&y2, &x1, &b2, &gpos, &grouped].iter().all(|f| f.is_e_positive());
    if !pieces_nonnegative {
        note(&mut witnesses, || String::from("a piece of the decomposition has a negative coefficient"));
    }
    let mut chain = &EFunction::e1_power(2) * &y2;
    chain += &EFunction::e1_power(1) * &x1;
    chain += b2;
    chain += gpos;
    chain += grouped;
    let spider = spider4m_csf_with(m, exec)?;
    let identity_checked = chain == spider;
    if !identity_checked {
        note(&mut witnesses, || String::from("the recomposed chain differs from the spider expansion"));
    }
    let spider_e_positive = spider.is_e_positive();
    if !spider_e_positive {
        note(&mut witnesses, || alloc::format!("spider has negative terms: {:?}", spider.negative_terms()));
    }

    let verdict = ok && w_recomposed && identity_checked && pieces_nonnegative && spider_e_positive;
    Ok(Certificate {
        m,
        groups,
        class_counts,
        zero_net_count,
        leftover_a_count,
        leftover_a_weight,
        w_recomposed,
        identity_checked,
        pieces_nonnegative,
        spider_e_positive,
        verdict,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m1_certificate() {
        let c = certify(1).unwrap();
        assert!(c.verdict, "{:?}", c.witnesses);
        assert_eq!(c.groups.len(), 1);
        assert_eq!(c.class_counts[&TripleClass::T1], 1);
        assert!(c.identity_checked);
    }

    #[test]
    fn m2_certificate() {
        let c = certify(2).unwrap();
        assert!(c.verdict, "{:?}", c.witnesses);
        assert!(c.groups.iter().filter(|g| g.class == TripleClass::T4).all(|g| g.net.is_zero()));
    }

    #[test]
    fn colliding_maps_fail() {
        fn identity(j: &Composition, k: &Composition, l: &Composition) -> crate::Result<Composition> {
            Ok(Composition::concat(&[j, k, l]))
        }
        let maps = InjectionMaps { phi42: identity, ..InjectionMaps::STANDARD };
        let c = certify_with(3, &maps, &Sequential).unwrap();
        assert!(!c.verdict);
    }
}
