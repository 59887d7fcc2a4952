//! JSON form of Hodge-Du Bois tables and Lefschetz operators.
//!
//! Rationals are strings `"a"` or `"a/b"`; window values are keyed by the
//! twist as a decimal string. A missing tail key leaves that side undeclared.

use std::collections::BTreeMap;

use serde::de::{Deserializer, Error as _};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{GradedDimension, Tail};
use crate::matrix::QMatrix;
use crate::rational::{format_rational, parse_rational, Polynomial};
use crate::table::{validate_operator, validate_table, HodgeDuBoisTable, LefschetzOperator, ValidationReport};

/// Window values in numeric twist order.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Values(Vec<(String, i64)>);

impl Serialize for Values {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(k, v)| (k, v)))
    }
}

impl<'de> Deserialize<'de> for Values {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<String, i64>::deserialize(d)?;
        for key in map.keys() {
            key.parse::<i64>()
                .map_err(|_| D::Error::custom(format!("twist key {key:?} is not an integer")))?;
        }
        Ok(Values(map.into_iter().collect()))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum TailDoc {
    Zero,
    Poly { coeffs: Vec<String> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GradedDoc {
    window_lo: i64,
    window_hi: i64,
    values: Values,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pos_tail: Option<TailDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    neg_tail: Option<TailDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HodgeDoc {
    p: usize,
    q: usize,
    window_lo: i64,
    window_hi: i64,
    values: Values,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pos_tail: Option<TailDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    neg_tail: Option<TailDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockDoc {
    p: usize,
    q: usize,
    matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableDoc {
    name: String,
    dim: usize,
    smooth: bool,
    seminormal: bool,
    lcdef: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    betti: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coordinate_ring: Option<GradedDoc>,
    hodge: Vec<HodgeDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    lefschetz: Vec<BlockDoc>,
}

fn tail_to_doc(tail: &Tail) -> Option<TailDoc> {
    match tail {
        Tail::Zero => Some(TailDoc::Zero),
        Tail::Polynomial(p) => Some(TailDoc::Poly {
            coeffs: p.coeffs().iter().map(format_rational).collect(),
        }),
        Tail::Undeclared => None,
    }
}

fn graded_to_doc(g: &GradedDimension) -> GradedDoc {
    GradedDoc {
        window_lo: g.window_lo(),
        window_hi: g.window_hi(),
        values: Values(g.values().iter().map(|(m, v)| (m.to_string(), *v as i64)).collect()),
        pos_tail: tail_to_doc(g.pos_tail()),
        neg_tail: tail_to_doc(g.neg_tail()),
    }
}

fn tail_from_doc(doc: Option<TailDoc>, path: &str) -> Result<Tail> {
    match doc {
        None => Ok(Tail::Undeclared),
        Some(TailDoc::Zero) => Ok(Tail::Zero),
        Some(TailDoc::Poly { coeffs }) => {
            let parsed = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    parse_rational(c)
                        .ok_or_else(|| Error::schema(format!("{path}.coeffs[{i}]"), format!("{c:?} is not a rational")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Tail::polynomial(Polynomial::new(parsed)))
        }
    }
}

fn graded_from_doc(doc: GradedDoc, path: &str) -> Result<GradedDimension> {
    let mut values = BTreeMap::new();
    for (key, v) in doc.values.0 {
        let m: i64 = key.parse().expect("checked while deserializing");
        let at = format!("{path}.values.{key}");
        if v < 0 {
            return Err(Error::schema(at, format!("negative dimension {v}")));
        }
        if m < doc.window_lo || m > doc.window_hi {
            return Err(Error::schema(
                at,
                format!("twist outside window [{}, {}]", doc.window_lo, doc.window_hi),
            ));
        }
        values.insert(m, v as u64);
    }
    let pos = tail_from_doc(doc.pos_tail, &format!("{path}.pos_tail"))?;
    let neg = tail_from_doc(doc.neg_tail, &format!("{path}.neg_tail"))?;
    GradedDimension::new(doc.window_lo, doc.window_hi, values, pos, neg)
        .map_err(|msg| Error::schema(format!("{path}.values"), msg))
}

fn parse_doc(bytes: &[u8]) -> Result<TableDoc> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if inner.is_syntax() || inner.is_eof() || inner.is_io() {
            Error::Json(inner.to_string())
        } else {
            Error::schema(path, inner.to_string())
        }
    })
}

/// Parses a table, then validates it. Violations are returned, not raised.
pub fn load_table(bytes: &[u8]) -> Result<(HodgeDuBoisTable, LefschetzOperator, ValidationReport)> {
    let doc = parse_doc(bytes)?;
    let n = doc.dim;
    if doc.lcdef > n {
        return Err(Error::schema("lcdef", format!("lcdef = {} exceeds dim = {n}", doc.lcdef)));
    }
    let mut entries = BTreeMap::new();
    for (idx, h) in doc.hodge.into_iter().enumerate() {
        let path = format!("hodge[{idx}]");
        if h.p > n || h.q > n {
            return Err(Error::schema(path, format!("cell ({}, {}) outside 0..={n}", h.p, h.q)));
        }
        let key = (h.p, h.q);
        let g = graded_from_doc(
            GradedDoc {
                window_lo: h.window_lo,
                window_hi: h.window_hi,
                values: h.values,
                pos_tail: h.pos_tail,
                neg_tail: h.neg_tail,
            },
            &path,
        )?;
        if entries.insert(key, g).is_some() {
            return Err(Error::schema(path, format!("duplicate cell ({}, {})", key.0, key.1)));
        }
    }
    let coordinate_ring = doc
        .coordinate_ring
        .map(|g| graded_from_doc(g, "coordinate_ring"))
        .transpose()?;
    let table = HodgeDuBoisTable {
        name: doc.name,
        n,
        smooth: doc.smooth,
        seminormal: doc.seminormal,
        lcdef_x: doc.lcdef,
        entries,
        betti: doc.betti,
        coordinate_ring,
    };

    let mut op = LefschetzOperator::default();
    for (idx, b) in doc.lefschetz.into_iter().enumerate() {
        let path = format!("lefschetz[{idx}]");
        if b.p >= n.max(1) || b.q >= n.max(1) {
            return Err(Error::schema(path, format!("block ({}, {}) outside 0..{n}", b.p, b.q)));
        }
        let cols = match b.matrix.first() {
            Some(row) => row.len(),
            None => table.dim_or_zero(b.p as i64, b.q as i64, 0)? as usize,
        };
        let mut rows = Vec::with_capacity(b.matrix.len());
        for (r, row) in b.matrix.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::schema(format!("{path}.matrix[{r}]"), "ragged matrix row"));
            }
            let parsed = row
                .iter()
                .enumerate()
                .map(|(c, x)| {
                    parse_rational(x).ok_or_else(|| {
                        Error::schema(format!("{path}.matrix[{r}][{c}]"), format!("{x:?} is not a rational"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(parsed);
        }
        let matrix = QMatrix::from_rows(rows, cols).expect("rows checked");
        if op.blocks.insert((b.p, b.q), matrix).is_some() {
            return Err(Error::schema(path, format!("duplicate block ({}, {})", b.p, b.q)));
        }
    }

    let mut report = validate_table(&table);
    // graded hard Lefschetz is only asserted for catalog tables
    report.violations.extend(validate_operator(&table, &op, false).violations);
    Ok((table, op, report))
}

/// Pretty-printed JSON; `load_table(save_table(t, op))` returns `t` and `op`.
pub fn save_table(table: &HodgeDuBoisTable, op: &LefschetzOperator) -> Vec<u8> {
    let doc = TableDoc {
        name: table.name.clone(),
        dim: table.n,
        smooth: table.smooth,
        seminormal: table.seminormal,
        lcdef: table.lcdef_x,
        betti: table.betti.clone(),
        coordinate_ring: table.coordinate_ring.as_ref().map(graded_to_doc),
        hodge: table
            .entries
            .iter()
            .map(|(&(p, q), g)| {
                let d = graded_to_doc(g);
                HodgeDoc {
                    p,
                    q,
                    window_lo: d.window_lo,
                    window_hi: d.window_hi,
                    values: d.values,
                    pos_tail: d.pos_tail,
                    neg_tail: d.neg_tail,
                }
            })
            .collect(),
        lefschetz: op
            .blocks
            .iter()
            .map(|(&(p, q), m)| BlockDoc {
                p,
                q,
                matrix: (0..m.rows())
                    .map(|r| (0..m.cols()).map(|c| format_rational(m.get(r, c))).collect())
                    .collect(),
            })
            .collect(),
    };
    let mut out = serde_json::to_vec_pretty(&doc).expect("table documents always serialize");
    out.push(b'\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog_table, projective_space_table, CatalogSpec};

    #[test]
    fn round_trip_catalog() {
        let (t, op) = projective_space_table(1, 2, 6).unwrap();
        let (t2, op2, report) = load_table(&save_table(&t, &op)).unwrap();
        assert_eq!((t, op), (t2, op2));
        assert!(report.is_valid(), "{:?}", report.violations);

        let spec = CatalogSpec::new(vec![1, 2], vec![1, 1], None).unwrap();
        let (t, op) = catalog_table(&spec).unwrap();
        let bytes = save_table(&t, &op);
        let (t2, op2, _) = load_table(&bytes).unwrap();
        assert_eq!(save_table(&t2, &op2), bytes);
        assert_eq!((t, op), (t2, op2));
    }

    fn minimal(extra: &str, values: &str) -> String {
        format!(
            r#"{{"name": "x", "dim": 0, "smooth": true, "seminormal": true, {extra}
                "hodge": [{{"p": 0, "q": 0, "window_lo": 0, "window_hi": 3,
                            "values": {values}, "pos_tail": {{"type": "zero"}}}}]}}"#
        )
    }

    #[test]
    fn schema_errors_are_path_addressed() {
        let ok = minimal(r#""lcdef": 0,"#, r#"{"0": 1, "1": 1, "2": 1, "3": 1}"#);
        assert!(load_table(ok.as_bytes()).is_ok());

        let bad = minimal(r#""lcdef": 5,"#, r#"{"0": 1, "1": 1, "2": 1, "3": 1}"#);
        assert!(matches!(load_table(bad.as_bytes()), Err(Error::Schema { path, .. }) if path == "lcdef"));

        let bad = minimal(r#""lcdef": 0,"#, r#"{"0": 1, "1": 1, "2": 1, "3": -1}"#);
        assert!(matches!(load_table(bad.as_bytes()), Err(Error::Schema { path, .. }) if path == "hodge[0].values.3"));

        let bad = minimal(r#""lcdef": 0,"#, r#"{"0": 1, "1": 1, "3": 1}"#);
        assert!(matches!(load_table(bad.as_bytes()), Err(Error::Schema { .. })));

        let bad = minimal(r#""lcdef": "zero","#, r#"{"0": 1}"#);
        assert!(matches!(load_table(bad.as_bytes()), Err(Error::Schema { path, .. }) if path == "lcdef"));

        assert!(matches!(load_table(b"{\"name\": "), Err(Error::Json(_))));
    }

    #[test]
    fn bad_matrix_entries() {
        let (t, op) = projective_space_table(1, 1, 6).unwrap();
        let mut doc: serde_json::Value = serde_json::from_slice(&save_table(&t, &op)).unwrap();
        doc["lefschetz"][0]["matrix"][0][0] = "1/0".into();
        let err = load_table(&serde_json::to_vec(&doc).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Schema { ref path, .. } if path == "lefschetz[0].matrix[0][0]"), "{err}");
    }
}
