//! Parsers for integer sets (`1..10`, `0,2,4`, `3`) and rational lists.

use std::fmt;
use std::str::FromStr;

use qapery_core::exact::parse_rational;
use qapery_core::ExactRational;
use serde::Serialize;

const MAX_RANGE: u64 = 10_000;

/// Non-negative integers given as inclusive ranges and/or single values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(into = "String")]
pub struct IntSet {
    source: String,
    values: Vec<u64>,
}

impl IntSet {
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> Option<u64> {
        self.values.iter().copied().min()
    }
}

impl FromStr for IntSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut values = Vec::new();
        for part in s.split(',').map(str::trim) {
            let int = |t: &str| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| format!("expected a non-negative integer, got {t:?}"))
            };
            match part.split_once("..") {
                Some((a, b)) => {
                    let (a, b) = (int(a)?, int(b.trim_start_matches('='))?);
                    if b.saturating_sub(a) > MAX_RANGE {
                        return Err(format!("range {part:?} has more than {MAX_RANGE} values"));
                    }
                    values.extend(a..=b);
                }
                None => values.push(int(part)?),
            }
        }
        values.sort_unstable();
        values.dedup();
        Ok(Self {
            source: s.to_string(),
            values,
        })
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl From<IntSet> for String {
    fn from(s: IntSet) -> String {
        s.source
    }
}

/// Comma-separated exact rationals (`0.5,1/3,0.9`).
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(into = "Vec<String>")]
pub struct RationalList(pub Vec<ExactRational>);

impl FromStr for RationalList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|t| parse_rational(t.trim()).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()
            .map(RationalList)
    }
}

impl From<RationalList> for Vec<String> {
    fn from(l: RationalList) -> Vec<String> {
        l.0.iter().map(ToString::to_string).collect()
    }
}
