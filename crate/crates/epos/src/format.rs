//! Serialized forms of [`EFunction`] and of verification reports.
//!
//! JSON: `{"degree": n, "basis": "e", "terms": [{"partition": [..], "coeff": "decimal"}]}`
//! with terms in the canonical order of [`EFunction::terms`]. CSV: a
//! `partition,coefficient` header and one row per term, parts separated by
//! spaces. Pretty: the `Display` form, e.g. `3·e[3] + 1·e[2,1]`.

use std::io::Write;

use clap::ValueEnum;
use epos_core::EFunction;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Serialize, Deserialize)]
struct TermJson {
    partition: Vec<usize>,
    coeff: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct EFunctionJson {
    degree: usize,
    basis: String,
    terms: Vec<TermJson>,
}

pub fn efun_to_json(f: &EFunction) -> Value {
    let doc = EFunctionJson {
        degree: f.degree().unwrap_or(0),
        basis: "e".into(),
        terms: f
            .terms()
            .map(|(p, c)| TermJson { partition: p.parts().to_vec(), coeff: c.to_string() })
            .collect(),
    };
    serde_json::to_value(doc).expect("plain data serializes")
}

pub fn efun_from_json(text: &str) -> Result<EFunction, CliError> {
    let doc: EFunctionJson = serde_json::from_str(text)?;
    if doc.basis != "e" {
        return Err(CliError::Usage(format!("unsupported basis {:?}", doc.basis)));
    }
    let mut f = EFunction::zero();
    for t in doc.terms {
        if t.partition.iter().sum::<usize>() != doc.degree {
            return Err(CliError::Usage(format!("term {:?} does not have degree {}", t.partition, doc.degree)));
        }
        f.add_parts(&t.partition, parse_coeff(&t.coeff)?);
    }
    Ok(f)
}

fn parse_coeff(s: &str) -> Result<BigInt, CliError> {
    s.parse().map_err(|_| CliError::Usage(format!("bad coefficient {s:?}")))
}

pub fn write_efun_csv(f: &EFunction, out: impl Write) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["partition", "coefficient"])?;
    for (p, c) in f.terms() {
        let parts: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
        w.write_record([parts.join(" "), c.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn efun_from_csv(text: &str) -> Result<EFunction, CliError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut f = EFunction::zero();
    for row in r.records() {
        let row = row?;
        let (Some(p), Some(c)) = (row.get(0), row.get(1)) else {
            return Err(CliError::Usage("short csv row".into()));
        };
        let parts = p
            .split_whitespace()
            .map(|x| x.parse::<usize>().map_err(|_| CliError::Usage(format!("bad part {x:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        f.add_parts(&parts, parse_coeff(c)?);
    }
    Ok(f)
}

pub fn write_efun(f: &EFunction, format: Format, mut out: impl Write) -> Result<(), CliError> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &efun_to_json(f))?;
            writeln!(out)?;
        }
        Format::Csv => write_efun_csv(f, out)?,
        Format::Pretty => writeln!(out, "{f}")?,
    }
    Ok(())
}

/// Flattens a JSON document into `(dotted.path, scalar)` pairs in document order.
pub fn flatten(value: &Value) -> Vec<(String, String)> {
    fn go(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(map) => {
                for (k, v) in map {
                    go(&key(k), v, out);
                }
            }
            Value::Array(items) if !items.is_empty() => {
                for (i, v) in items.iter().enumerate() {
                    go(&key(&i.to_string()), v, out);
                }
            }
            Value::Array(_) => out.push((prefix.to_string(), String::new())),
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    go("", value, &mut out);
    out
}

/// Reports: JSON as is, CSV as `field,value` rows, pretty as `field: value` lines.
pub fn write_report(doc: &Value, format: Format, mut out: impl Write) -> Result<(), CliError> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, doc)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["field", "value"])?;
            for (k, v) in flatten(doc) {
                w.write_record([k, v])?;
            }
            w.flush()?;
        }
        Format::Pretty => {
            for (k, v) in flatten(doc) {
                writeln!(out, "{k}: {v}")?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use epos_core::expansions::path_csf_e;

    #[test]
    fn p3_in_every_format() {
        let f = path_csf_e(3).unwrap();
        let mut buf = Vec::new();
        write_efun(&f, Format::Pretty, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "3·e[3] + 1·e[2,1]\n");

        let json = efun_to_json(&f);
        assert_eq!(
            json,
            serde_json::json!({"degree": 3, "basis": "e", "terms": [
                {"partition": [3], "coeff": "3"},
                {"partition": [2, 1], "coeff": "1"}
            ]})
        );

        let mut buf = Vec::new();
        write_efun(&f, Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "partition,coefficient\n3,3\n2 1,1\n");
        assert_eq!(efun_from_csv(&text).unwrap(), f);
    }

    #[test]
    fn json_round_trip_with_big_coefficients() {
        let mut f = EFunction::zero();
        f.add_parts(&[4, 2], "123456789012345678901234567890".parse().unwrap());
        f.add_parts(&[6], BigInt::from(-7));
        let text = serde_json::to_string(&efun_to_json(&f)).unwrap();
        assert_eq!(efun_from_json(&text).unwrap(), f);
        assert!(efun_from_json(r#"{"degree":3,"basis":"p","terms":[]}"#).is_err());
        assert!(efun_from_json(r#"{"degree":3,"basis":"e","terms":[{"partition":[2],"coeff":"1"}]}"#).is_err());
    }

    #[test]
    fn flatten_paths() {
        let v = serde_json::json!({"a": 1, "b": {"c": [true, "x"]}, "d": []});
        let flat = flatten(&v);
        assert_eq!(
            flat,
            vec![
                ("a".into(), "1".into()),
                ("b.c.0".into(), "true".into()),
                ("b.c.1".into(), "x".into()),
                ("d".into(), "".into())
            ]
        );
    }
}
