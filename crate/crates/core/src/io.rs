//! Canonical JSON form of bound quivers, plus DOT export.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::quiver::{BoundQuiver, Path, Quiver, RelationElement};

// Field order is alphabetical so that serde emits sorted keys.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverDoc {
    arrows: Vec<ArrowDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default)]
    relations: Vec<Vec<TermDoc>>,
    vertices: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowDoc {
    from: String,
    id: String,
    to: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    coeff: String,
    path: Vec<String>,
}

pub fn parse_coefficient(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("coefficient {s:?} is not an integer or p/q fraction"));
    if s.is_empty() || s.contains(['.', 'e', 'E', ' ']) {
        return Err(bad());
    }
    if let Some((_, d)) = s.split_once('/') {
        if d.trim_start_matches(['+', '-']).chars().all(|c| c == '0') {
            return Err(bad());
        }
    }
    Rational::from_str(s).map_err(|_| bad())
}

pub fn parse_bound_quiver(text: &str) -> Result<BoundQuiver> {
    let doc: QuiverDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut q = Quiver::new();
    for v in &doc.vertices {
        q.add_vertex(v.clone())?;
    }
    for a in &doc.arrows {
        let s = q
            .vertex(&a.from)
            .map_err(|_| Error::Validation(format!("arrow {:?} starts at undeclared vertex {:?}", a.id, a.from)))?;
        let t = q
            .vertex(&a.to)
            .map_err(|_| Error::Validation(format!("arrow {:?} ends at undeclared vertex {:?}", a.id, a.to)))?;
        q.add_arrow(a.id.clone(), s, t)?;
    }
    let mut relations = Vec::with_capacity(doc.relations.len());
    for (k, rel) in doc.relations.iter().enumerate() {
        let mut terms: Vec<(Rational, Path)> = Vec::with_capacity(rel.len());
        for term in rel {
            let c = parse_coefficient(&term.coeff)?;
            if c.is_zero() {
                return Err(Error::Validation(format!("relation {k} has a zero coefficient")));
            }
            let p = q
                .path_from_ids(&term.path)
                .map_err(|e| Error::Validation(format!("relation {k}: {e}")))?;
            if terms.iter().any(|(_, other)| *other == p) {
                return Err(Error::Validation(format!("relation {k} repeats path {:?}", term.path)));
            }
            if let Some((_, first)) = terms.first() {
                if first.len() != p.len() || first.source() != p.source() || first.target() != p.target() {
                    return Err(Error::Validation(format!(
                        "relation {k} is not normalized: {:?} and {:?} are not parallel paths of one length",
                        first.ids(&q),
                        term.path
                    )));
                }
            }
            terms.push((c, p));
        }
        match RelationElement::new(terms)? {
            Some(r) => relations.push(r),
            None => return Err(Error::Validation(format!("relation {k} is empty"))),
        }
    }
    BoundQuiver::new(q, relations, doc.n)
}

pub fn to_json(bq: &BoundQuiver) -> String {
    let q = bq.quiver();
    let doc = QuiverDoc {
        arrows: q
            .arrows()
            .iter()
            .map(|a| ArrowDoc {
                from: q.vertex_id(a.source).to_string(),
                id: a.id.clone(),
                to: q.vertex_id(a.target).to_string(),
            })
            .collect(),
        n: bq.n(),
        relations: bq
            .relations()
            .iter()
            .map(|r| {
                r.terms()
                    .iter()
                    .map(|(p, c)| TermDoc {
                        coeff: c.to_string(),
                        path: p.ids(q).into_iter().map(String::from).collect(),
                    })
                    .collect()
            })
            .collect(),
        vertices: q.vertices().to_vec(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable document");
    s.push('\n');
    s
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn to_dot(q: &Quiver) -> String {
    let mut out = String::from("digraph quiver {\n");
    for v in q.vertices() {
        let _ = writeln!(out, "  \"{}\";", dot_escape(v));
    }
    for a in q.arrows() {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\"];",
            dot_escape(q.vertex_id(a.source)),
            dot_escape(q.vertex_id(a.target)),
            dot_escape(&a.id)
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const A3: &str = r#"{
  "arrows": [
    {"from": "1", "id": "alpha", "to": "2"},
    {"from": "2", "id": "beta", "to": "3"}
  ],
  "relations": [[{"coeff": "1", "path": ["beta", "alpha"]}]],
  "vertices": ["1", "2", "3"]
}"#;

    #[test]
    fn single_vertex() {
        let bq = parse_bound_quiver(r#"{"vertices":["x"],"arrows":[]}"#).unwrap();
        assert_eq!(bq.quiver().vertex_count(), 1);
        assert!(bq.relations().is_empty());
    }

    #[test]
    fn a3_with_zero_relation() {
        let bq = parse_bound_quiver(A3).unwrap();
        assert_eq!(bq.relations().len(), 1);
        assert_eq!(bq.relations()[0].length(), 2);
    }

    #[test]
    fn rejects_mixed_targets() {
        let text = r#"{"vertices":["1","2","3"],
            "arrows":[{"id":"a","from":"1","to":"2"},{"id":"b","from":"2","to":"3"},{"id":"c","from":"2","to":"2"}],
            "relations":[[{"coeff":"1","path":["b","a"]},{"coeff":"1","path":["c","a"]}]]}"#;
        assert!(matches!(parse_bound_quiver(text), Err(Error::Validation(_))));
    }

    #[test]
    fn rejects_dangling_and_malformed() {
        let dangling = r#"{"vertices":["1"],"arrows":[{"id":"a","from":"1","to":"9"}]}"#;
        assert!(matches!(parse_bound_quiver(dangling), Err(Error::Validation(_))));
        assert!(matches!(parse_bound_quiver("{"), Err(Error::Parse(_))));
        assert!(parse_coefficient("0.5").is_err());
        assert!(parse_coefficient("1/0").is_err());
        assert_eq!(parse_coefficient("-3/6").unwrap().to_string(), "-1/2");
    }

    #[test]
    fn round_trip_is_byte_stable() {
        let bq = parse_bound_quiver(A3).unwrap();
        let text = to_json(&bq);
        assert!(text.ends_with("}\n"));
        let again = parse_bound_quiver(&text).unwrap();
        assert_eq!(again, bq);
        assert_eq!(to_json(&again), text);
    }

    #[test]
    fn dot_lists_every_arrow() {
        let bq = parse_bound_quiver(A3).unwrap();
        let dot = to_dot(bq.quiver());
        assert!(dot.contains("\"1\" -> \"2\" [label=\"alpha\"];"));
        assert_eq!(dot.matches("->").count(), 2);
    }
}
