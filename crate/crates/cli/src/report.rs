//! Report envelopes and CSV helpers.

use num_bigint::BigUint;
use serde::Serialize;

use crate::args::Command;
use crate::input::SemigroupInfo;

/// Every JSON report embeds the resolved configuration and the tool version.
#[derive(Serialize)]
pub struct Envelope<'a, T> {
    pub version: &'static str,
    pub config: &'a Command,
    pub semigroup: SemigroupInfo,
    pub result: T,
}

impl<'a, T: Serialize> Envelope<'a, T> {
    pub fn new(config: &'a Command, semigroup: SemigroupInfo, result: T) -> Self {
        Envelope {
            version: env!("CARGO_PKG_VERSION"),
            config,
            semigroup,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Exact integers travel as decimal strings.
pub fn decimal(x: &BigUint) -> String {
    x.to_str_radix(10)
}

pub fn decimals(xs: &[BigUint]) -> Vec<String> {
    xs.iter().map(decimal).collect()
}

#[derive(Serialize)]
pub struct Fraction {
    pub numerator: String,
    pub denominator: String,
}

/// CSV text from a header and rows of already formatted cells.
pub fn csv(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("cells are UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quoting() {
        let text = csv(
            &["n".into(), "lambda_(1,0)".into()],
            &[vec!["0".into(), "".into()]],
        );
        assert_eq!(text, "n,\"lambda_(1,0)\"\n0,\n");
    }
}
