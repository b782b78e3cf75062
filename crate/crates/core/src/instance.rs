//! JSON instance documents: `{"n", "edges", "weights", "name"}` with weights
//! as decimal strings. Weights are scaled by their least common denominator
//! into exact integers on the way in, and rescaled on the way out.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, WeightedGraph};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("malformed instance document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("weight {index} ({value:?}) is negative")]
    NegativeWeight { index: usize, value: String },
    #[error("weight {index} ({value:?}) is not a decimal number")]
    BadWeight { index: usize, value: String },
    #[error("document declares n = {n} but lists {found} weights")]
    WeightCount { n: usize, found: usize },
    #[error("weights do not fit exact 64-bit arithmetic after scaling")]
    Overflow,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The wire form of an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub weights: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl InstanceDocument {
    pub fn parse(text: &str) -> Result<Self, InstanceError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_graph(g: &WeightedGraph, name: Option<String>) -> Self {
        InstanceDocument {
            n: g.order(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            weights: g
                .weights()
                .iter()
                .map(|&w| format_scaled(w as i128, g.scale()))
                .collect(),
            name,
        }
    }

    pub fn to_graph(&self) -> Result<WeightedGraph, InstanceError> {
        if self.weights.len() != self.n {
            return Err(InstanceError::WeightCount {
                n: self.n,
                found: self.weights.len(),
            });
        }
        let fractions = self
            .weights
            .iter()
            .enumerate()
            .map(|(i, s)| parse_decimal(i, s))
            .collect::<Result<Vec<_>, _>>()?;
        let scale = fractions
            .iter()
            .try_fold(1u64, |acc, &(_, den)| {
                let l = acc.lcm(&den);
                (l <= u64::MAX / 2).then_some(l)
            })
            .ok_or(InstanceError::Overflow)?;
        let weights = fractions
            .iter()
            .map(|&(num, den)| {
                let w = num.checked_mul((scale / den) as u128)?;
                u64::try_from(w).ok()
            })
            .collect::<Option<Vec<_>>>()
            .ok_or(InstanceError::Overflow)?;
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        let mut g = WeightedGraph::from_edges(self.n, &edges, weights).map_err(|e| match e {
            GraphError::WeightOverflow => InstanceError::Overflow,
            other => InstanceError::Graph(other),
        })?;
        g.set_scale(scale);
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance documents always serialize")
    }
}

/// Parses an instance document straight into a graph.
pub fn parse_instance(text: &str) -> Result<WeightedGraph, InstanceError> {
    InstanceDocument::parse(text)?.to_graph()
}

/// `"12.50"` -> `(25, 2)`: a reduced non-negative fraction.
fn parse_decimal(index: usize, s: &str) -> Result<(u128, u64), InstanceError> {
    let bad = || InstanceError::BadWeight {
        index,
        value: s.to_owned(),
    };
    let t = s.trim();
    if t.starts_with('-') {
        return Err(InstanceError::NegativeWeight {
            index,
            value: s.to_owned(),
        });
    }
    let t = t.strip_prefix('+').unwrap_or(t);
    let (int, frac) = match t.split_once('.') {
        Some((i, f)) => (i, f),
        None => (t, ""),
    };
    if int.is_empty() && frac.is_empty()
        || !int.bytes().all(|b| b.is_ascii_digit())
        || !frac.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let frac = frac.trim_end_matches('0');
    if frac.len() > 18 {
        return Err(InstanceError::Overflow);
    }
    let den = 10u64.pow(frac.len() as u32);
    let digits = format!("{int}{frac}");
    let num: u128 = if digits.is_empty() {
        0
    } else {
        digits.parse().map_err(|_| InstanceError::Overflow)?
    };
    let g = num.gcd(&(den as u128)).max(1);
    Ok((num / g, (den as u128 / g) as u64))
}

/// Renders `value / scale` exactly. Decimal when `scale` divides a power of
/// ten (always the case for ingested documents), `p/q` otherwise.
pub fn format_scaled(value: i128, scale: u64) -> String {
    assert!(scale > 0);
    if scale == 1 {
        return value.to_string();
    }
    let mut digits = 0u32;
    let mut pow = 1u128;
    while pow % scale as u128 != 0 {
        if digits == 38 {
            let g = value.unsigned_abs().gcd(&(scale as u128));
            let sign = if value < 0 { "-" } else { "" };
            return format!("{sign}{}/{}", value.unsigned_abs() / g, scale as u128 / g);
        }
        digits += 1;
        pow *= 10;
    }
    let scaled = value.unsigned_abs() * (pow / scale as u128);
    let int = scaled / pow;
    let frac = scaled % pow;
    let sign = if value < 0 { "-" } else { "" };
    if frac == 0 {
        return format!("{sign}{int}");
    }
    let frac = format!("{:0width$}", frac, width = digits as usize);
    format!("{sign}{int}.{}", frac.trim_end_matches('0'))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_integer_weights() {
        let g = parse_instance(r#"{"n":2,"edges":[[0,1]],"weights":["3","1"]}"#).unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
        assert_eq!(g.weights(), &[3, 1]);
        assert_eq!(g.scale(), 1);
    }

    #[test]
    fn common_denominator_scaling() {
        let g =
            parse_instance(r#"{"n":3,"edges":[[0,1],[1,2],[0,2]],"weights":["0.5","0.5","0.5"]}"#)
                .unwrap();
        assert_eq!(g.weights(), &[1, 1, 1]);
        assert_eq!(g.scale(), 2);

        let g = parse_instance(r#"{"n":3,"edges":[],"weights":["0.25","1.5","2"]}"#).unwrap();
        assert_eq!(g.weights(), &[1, 6, 8]);
        assert_eq!(g.scale(), 4);
    }

    #[test]
    fn single_zero_vertex() {
        let g = parse_instance(r#"{"n":1,"edges":[],"weights":["0"],"name":"dot"}"#).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.weights(), &[0]);
    }

    #[test]
    fn rejects_bad_documents() {
        let cases = [
            r#"{"n":2,"edges":[[0,1],[1,0]],"weights":["1","1"]}"#,
            r#"{"n":2,"edges":[[1,1]],"weights":["1","1"]}"#,
            r#"{"n":2,"edges":[[0,2]],"weights":["1","1"]}"#,
        ];
        for doc in cases {
            assert!(
                matches!(parse_instance(doc), Err(InstanceError::Graph(_))),
                "{doc}"
            );
        }
        assert!(matches!(
            parse_instance(r#"{"n":2,"edges":[],"weights":["1","-1"]}"#),
            Err(InstanceError::NegativeWeight { index: 1, .. })
        ));
        assert!(matches!(
            parse_instance(r#"{"n":2,"edges":[],"weights":["1"]}"#),
            Err(InstanceError::WeightCount { n: 2, found: 1 })
        ));
        for w in ["", ".", "1e3", "1/2", "abc", "1.2.3"] {
            let doc = format!(r#"{{"n":1,"edges":[],"weights":["{w}"]}}"#);
            assert!(
                matches!(parse_instance(&doc), Err(InstanceError::BadWeight { .. })),
                "{w:?}"
            );
        }
        assert!(matches!(
            parse_instance(r#"{"n":1,"edges":[]}"#),
            Err(InstanceError::Json(_))
        ));
    }

    #[test]
    fn document_round_trip_keeps_original_units() {
        let text = r#"{"n":3,"edges":[[0,1],[1,2]],"weights":["0.5","2","0.125"],"name":"x"}"#;
        let g = parse_instance(text).unwrap();
        let doc = InstanceDocument::from_graph(&g, Some("x".into()));
        assert_eq!(doc.weights, vec!["0.5", "2", "0.125"]);
        assert_eq!(doc.to_graph().unwrap(), g);
    }

    #[test]
    fn scaled_formatting() {
        assert_eq!(format_scaled(7, 1), "7");
        assert_eq!(format_scaled(1, 2), "0.5");
        assert_eq!(format_scaled(-3, 4), "-0.75");
        assert_eq!(format_scaled(10, 5), "2");
        assert_eq!(format_scaled(1, 3), "1/3");
    }
}
