//! JSON documents for verification reports and certificates.

use epos_core::decomposition::IdentityReport;
use epos_core::injections::{Certificate, DisjointnessReport, InjectionReport, Violation};
use serde_json::{json, Map, Value};

fn violations(v: &[Violation]) -> Value {
    v.iter().map(|x| json!({"check": x.check, "witness": x.witness})).collect()
}

fn counts<K: ToString>(it: impl IntoIterator<Item = (K, usize)>) -> Value {
    Value::Object(it.into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<Map<_, _>>())
}

pub fn identity_json(r: &IdentityReport) -> Value {
    json!({
        "lemma": r.lemma,
        "m": r.m,
        "passed": r.passed(),
        "identity_holds": r.identity_holds,
        "side_checks": r.side_checks.iter().map(|c| json!({"name": c.name, "holds": c.holds})).collect::<Vec<_>>(),
        "mismatches": r.mismatches.iter().map(|(p, lhs, rhs)| json!({
            "partition": p.parts(),
            "lhs": lhs.to_string(),
            "rhs": rhs.to_string(),
        })).collect::<Vec<_>>(),
    })
}

pub fn injections_json(r: &InjectionReport) -> Value {
    let maps: Map<String, Value> = r
        .maps
        .iter()
        .map(|(name, s)| {
            let v = json!({
                "domain_size": s.domain_size,
                "distinct_images": s.distinct_images,
                "c_min": s.c_min,
                "c_max": s.c_max,
            });
            (name.to_string(), v)
        })
        .collect();
    json!({
        "lemma": "injections",
        "m": r.m,
        "passed": r.passed(),
        "maps": maps,
        "failure_counts": counts(r.failure_counts.iter().map(|(k, v)| (*k, *v))),
        "violations": violations(&r.violations),
        "bar_reading": {"agree": r.bar_reading.0, "disagree": r.bar_reading.1},
    })
}

pub fn disjointness_json(r: &DisjointnessReport) -> Value {
    json!({
        "lemma": "disjointness",
        "m": r.m,
        "passed": r.passed(),
        "scanned": r.scanned,
        "counts": counts(r.counts.iter().map(|(k, v)| (k, *v))),
        "failure_counts": counts(r.failure_counts.iter().map(|(k, v)| (*k, *v))),
        "violations": violations(&r.violations),
        "relaxed_s2_disjoint": r.relaxed_s2_disjoint,
        "relaxed_s2_count": r.relaxed_s2_count,
    })
}

pub fn certificate_json(c: &Certificate) -> Value {
    json!({
        "m": c.m,
        "group_count": counts(c.class_counts.iter().map(|(k, v)| (k, *v))),
        "zero_net_count": c.zero_net_count,
        "leftover_A_count": c.leftover_a_count,
        "leftover_A_weight": c.leftover_a_weight.to_string(),
        "w_recomposed": c.w_recomposed,
        "identity_checked": c.identity_checked,
        "pieces_nonnegative": c.pieces_nonnegative,
        "spider_e_positive": c.spider_e_positive,
        "verdict": c.verdict,
        "witnesses": c.witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use epos_core::injections::certify;

    #[test]
    fn certificate_fields() {
        let v = certificate_json(&certify(1).unwrap());
        assert_eq!(v["m"], 1);
        assert_eq!(v["verdict"], true);
        assert_eq!(v["group_count"]["T1"], 1);
        assert_eq!(v["witnesses"], json!([]));
        assert!(v["leftover_A_count"].as_u64().unwrap() > 0);
    }
}
