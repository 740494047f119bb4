//! JSON input documents (a simplicial complex or a poset, plus cosheaf data)
//! and JSON homology reports.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::cosheaf::CellularCosheaf;
use crate::error::{Error, Result};
use crate::group::{AbGroup, IsoClass};
use crate::homology::{HomologyReport, Pipeline};
use crate::linalg::IntMatrix;
use crate::poset::{FinPoset, SimplicialComplex};

pub const KIND_COMPLEX: &str = "simplicial-complex";
pub const KIND_POSET: &str = "poset";

/// A parsed and validated input document.
#[derive(Clone, Debug)]
pub struct InputDocument {
    /// Present for `simplicial-complex` documents; the cosheaf then lives on its face poset.
    pub complex: Option<SimplicialComplex>,
    pub cosheaf: CellularCosheaf,
}

impl InputDocument {
    pub fn kind(&self) -> &'static str {
        if self.complex.is_some() {
            KIND_COMPLEX
        } else {
            KIND_POSET
        }
    }

    pub fn poset(&self) -> &Arc<FinPoset> {
        self.cosheaf.base()
    }

    pub fn require_complex(&self) -> Result<&SimplicialComplex> {
        self.complex.as_ref().ok_or_else(|| Error::Parse {
            context: "kind".into(),
            message: format!("this operation needs a '{KIND_COMPLEX}' document"),
        })
    }
}

fn perr(context: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        context: context.into(),
        message: message.into(),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, ctx: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| perr(ctx, format!("missing field '{key}'")))
}

fn as_array<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(ctx, "expected an array"))
}

fn as_str<'a>(v: &'a Value, ctx: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| perr(ctx, "expected a string"))
}

fn string_list(v: &Value, ctx: &str) -> Result<Vec<String>> {
    as_array(v, ctx)?
        .iter()
        .enumerate()
        .map(|(i, x)| as_str(x, &format!("{ctx}[{i}]")).map(str::to_string))
        .collect()
}

/// An integer given as a JSON integer or a decimal string.
fn integer(v: &Value, ctx: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(perr(ctx, "expected an integer (write large values as decimal strings)"))
            }
        }
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| perr(ctx, format!("'{s}' is not a decimal integer"))),
        _ => Err(perr(ctx, "expected an integer")),
    }
}

/// A matrix given as a list of rows, checked against the expected shape.
fn matrix(v: &Value, rows: usize, cols: usize, ctx: &str) -> Result<IntMatrix> {
    let rs = as_array(v, ctx)?;
    if rs.len() != rows {
        return Err(Error::DimensionMismatch(format!("{ctx}: {} rows, expected {rows}", rs.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, r) in rs.iter().enumerate() {
        let rctx = format!("{ctx}[{i}]");
        let entries = as_array(r, &rctx)?;
        if entries.len() != cols {
            return Err(Error::DimensionMismatch(format!(
                "{rctx}: {} entries, expected {cols}",
                entries.len()
            )));
        }
        for (j, e) in entries.iter().enumerate() {
            data.push(integer(e, &format!("{rctx}[{j}]"))?);
        }
    }
    IntMatrix::from_data(rows, cols, data)
}

/// Relation matrices have one row per generator; the column count is read
/// from the first row (zero columns when there are no rows).
fn relations(v: Option<&Value>, gens: usize, ctx: &str) -> Result<IntMatrix> {
    let Some(v) = v else {
        return Ok(IntMatrix::zeros(gens, 0));
    };
    let rs = as_array(v, ctx)?;
    let cols = match rs.first() {
        Some(r) => as_array(r, &format!("{ctx}[0]"))?.len(),
        None => 0,
    };
    matrix(v, gens, cols, ctx)
}

fn parse_group(v: &Value, ctx: &str) -> Result<AbGroup> {
    let obj = v.as_object().ok_or_else(|| perr(ctx, "expected an object with 'gens'"))?;
    let gens = field(obj, "gens", ctx)?
        .as_u64()
        .ok_or_else(|| perr(format!("{ctx}.gens"), "expected a nonnegative integer"))? as usize;
    let rel = relations(obj.get("relations"), gens, &format!("{ctx}.relations"))?;
    AbGroup::new(gens, rel)
}

fn json_location(e: &serde_json::Error) -> String {
    format!("line {}, column {}", e.line(), e.column())
}

/// Parses and validates a document. Group and map entries are matched to
/// elements and covering pairs; simplex identifiers may list their vertices
/// in any order.
pub fn parse_document(text: &str) -> Result<InputDocument> {
    let root: Value = serde_json::from_str(text).map_err(|e| perr(json_location(&e), e.to_string()))?;
    let obj = root.as_object().ok_or_else(|| perr("document", "expected a JSON object"))?;
    let kind = as_str(field(obj, "kind", "document")?, "kind")?;
    let (complex, poset) = match kind {
        KIND_COMPLEX => {
            let vertices = string_list(field(obj, "vertices", "document")?, "vertices")?;
            let simplices = as_array(field(obj, "simplices", "document")?, "simplices")?
                .iter()
                .enumerate()
                .map(|(i, s)| string_list(s, &format!("simplices[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let k = SimplicialComplex::new(&vertices, &simplices)?;
            let p = k.face_poset();
            (Some(k), p)
        }
        KIND_POSET => {
            let elements = string_list(field(obj, "elements", "document")?, "elements")?;
            let mut hasse = Vec::new();
            for (i, pair) in as_array(field(obj, "hasse", "document")?, "hasse")?.iter().enumerate() {
                let ctx = format!("hasse[{i}]");
                let pair = string_list(pair, &ctx)?;
                if pair.len() != 2 {
                    return Err(perr(ctx, "expected [upper, lower]"));
                }
                hasse.push((pair[0].clone(), pair[1].clone()));
            }
            (None, crate::poset::validate_poset(&elements, &hasse)?)
        }
        other => {
            return Err(perr(
                "kind",
                format!("unknown kind '{other}', expected '{KIND_COMPLEX}' or '{KIND_POSET}'"),
            ))
        }
    };
    let resolve = |name: &str| -> Result<usize> {
        match &complex {
            Some(k) => {
                let mut idx = Vec::new();
                for v in name.split(',') {
                    let v = v.trim();
                    idx.push(
                        k.vertices()
                            .iter()
                            .position(|w| w == v)
                            .ok_or_else(|| Error::UnknownElement(name.to_string()))?,
                    );
                }
                idx.sort_unstable();
                k.simplex_index(&idx).ok_or_else(|| Error::UnknownElement(name.to_string()))
            }
            None => poset.index_of(name),
        }
    };

    let groups_obj = field(obj, "groups", "document")?
        .as_object()
        .ok_or_else(|| perr("groups", "expected an object keyed by element"))?;
    let mut groups: Vec<Option<AbGroup>> = vec![None; poset.len()];
    for (name, v) in groups_obj {
        let x = resolve(name)?;
        if groups[x].is_some() {
            return Err(Error::Duplicate(format!("group entry for '{}'", poset.name(x))));
        }
        groups[x] = Some(parse_group(v, &format!("groups.{name}"))?);
    }
    let groups = groups
        .into_iter()
        .enumerate()
        .map(|(x, g)| g.ok_or_else(|| Error::MissingGroup(poset.name(x).to_string())))
        .collect::<Result<Vec<_>>>()?;

    let empty = Map::new();
    let maps_obj = match obj.get("maps") {
        Some(v) => v
            .as_object()
            .ok_or_else(|| perr("maps", "expected an object keyed by 'upper>lower'"))?,
        None => &empty,
    };
    let mut mats: Vec<Option<IntMatrix>> = vec![None; poset.hasse().len()];
    for (key, v) in maps_obj {
        let ctx = format!("maps.{key}");
        let (u, l) = key
            .split_once('>')
            .ok_or_else(|| perr(&ctx, "key must have the form 'upper>lower'"))?;
        let (u, l) = (resolve(u.trim())?, resolve(l.trim())?);
        let k = poset.cover_position(u, l).ok_or_else(|| Error::NotCovering {
            upper: poset.name(u).to_string(),
            lower: poset.name(l).to_string(),
        })?;
        if mats[k].is_some() {
            return Err(Error::Duplicate(format!("map entry for '{key}'")));
        }
        mats[k] = Some(matrix(v, groups[l].gens(), groups[u].gens(), &ctx)?);
    }
    let mats = mats
        .into_iter()
        .zip(poset.hasse())
        .map(|(m, &(u, l))| {
            m.ok_or_else(|| Error::MissingMap {
                upper: poset.name(u).to_string(),
                lower: poset.name(l).to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let cosheaf = CellularCosheaf::from_matrices(&Arc::new(poset), groups, mats)?;
    Ok(InputDocument { complex, cosheaf })
}

pub fn read_document(path: &Path) -> Result<InputDocument> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    parse_document(&text)
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(bigint_json).collect()))
            .collect(),
    )
}

/// Small values as JSON integers, anything else as a decimal string.
fn bigint_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) if v.unsigned_abs() < (1 << 53) => json!(v),
        _ => Value::String(x.to_string()),
    }
}

/// Serializes a cosheaf (with its complex, if any) in the input format.
pub fn document_json(complex: Option<&SimplicialComplex>, f: &CellularCosheaf) -> Value {
    let p = f.base();
    let mut groups = Map::new();
    for x in 0..p.len() {
        let g = f.group(x);
        let mut entry = Map::new();
        entry.insert("gens".into(), json!(g.gens()));
        if g.relations().cols() > 0 {
            entry.insert("relations".into(), matrix_json(g.relations()));
        }
        groups.insert(p.name(x).to_string(), Value::Object(entry));
    }
    let mut maps = Map::new();
    for (k, &(u, l)) in p.hasse().iter().enumerate() {
        maps.insert(format!("{}>{}", p.name(u), p.name(l)), matrix_json(f.maps()[k].matrix()));
    }
    let mut doc = Map::new();
    match complex {
        Some(k) => {
            doc.insert("kind".into(), json!(KIND_COMPLEX));
            doc.insert("vertices".into(), json!(k.vertices()));
            let facets: Vec<Vec<&str>> = k
                .simplices()
                .iter()
                .map(|s| s.iter().map(|&v| k.vertices()[v].as_str()).collect())
                .collect();
            doc.insert("simplices".into(), json!(facets));
        }
        None => {
            doc.insert("kind".into(), json!(KIND_POSET));
            doc.insert("elements".into(), json!(p.names()));
            let hasse: Vec<[&str; 2]> = p.hasse().iter().map(|&(u, l)| [p.name(u), p.name(l)]).collect();
            doc.insert("hasse".into(), json!(hasse));
        }
    }
    doc.insert("groups".into(), Value::Object(groups));
    doc.insert("maps".into(), Value::Object(maps));
    Value::Object(doc)
}

#[derive(Serialize, Deserialize)]
struct DegreeJson {
    degree: usize,
    rank: usize,
    torsion: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    #[serde(rename = "H")]
    h: Vec<DegreeJson>,
    pipeline: String,
}

pub fn iso_class_json(g: &IsoClass) -> Value {
    json!({
        "rank": g.free_rank,
        "torsion": g.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

pub fn report_json(r: &HomologyReport) -> Value {
    let out = ReportJson {
        h: r
            .groups
            .iter()
            .enumerate()
            .map(|(degree, g)| DegreeJson {
                degree,
                rank: g.free_rank,
                torsion: g.torsion.iter().map(ToString::to_string).collect(),
            })
            .collect(),
        pipeline: r.pipeline.tag().to_string(),
    };
    serde_json::to_value(out).expect("plain data serializes")
}

/// Parses a report in the format produced by [`report_json`].
pub fn parse_report(text: &str) -> Result<HomologyReport> {
    let raw: ReportJson = serde_json::from_str(text).map_err(|e| perr(json_location(&e), e.to_string()))?;
    let pipeline =
        Pipeline::from_tag(&raw.pipeline).ok_or_else(|| perr("pipeline", format!("unknown tag '{}'", raw.pipeline)))?;
    let mut by_degree = BTreeMap::new();
    for d in raw.h {
        let torsion = d
            .torsion
            .iter()
            .map(|t| t.parse::<BigInt>().map_err(|_| perr(format!("H[{}].torsion", d.degree), "bad integer")))
            .collect::<Result<Vec<_>>>()?;
        if by_degree
            .insert(d.degree, IsoClass { free_rank: d.rank, torsion })
            .is_some()
        {
            return Err(Error::Duplicate(format!("degree {}", d.degree)));
        }
    }
    let len = by_degree.keys().next_back().map_or(0, |&d| d + 1);
    let mut groups = vec![IsoClass::trivial(); len];
    for (d, g) in by_degree {
        groups[d] = g;
    }
    Ok(HomologyReport::new(pipeline, groups))
}

/// Structured error record for failed commands.
pub fn error_json(e: &Error) -> Value {
    let class = match e.class() {
        crate::error::ErrorClass::Input => "input",
        crate::error::ErrorClass::Contract => "contract",
    };
    json!({"error": {"kind": e.kind(), "class": class, "message": e.to_string()}})
}


#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = r#"{
        "kind": "simplicial-complex",
        "vertices": ["a", "b", "c"],
        "simplices": [["a", "b"], ["b", "c"], ["a", "c"]],
        "groups": {
            "a": {"gens": 1}, "b": {"gens": 1}, "c": {"gens": 1},
            "a,b": {"gens": 1}, "b,c": {"gens": 1}, "a,c": {"gens": 1}
        },
        "maps": {
            "a,b>a": [[1]], "a,b>b": [[1]],
            "b,c>b": [[1]], "c,b>c": [[1]],
            "a,c>a": [[1]], "a,c>c": [["1"]]
        }
    }"#;

    #[test]
    fn parses_triangle_boundary() {
        let doc = parse_document(TRIANGLE).unwrap();
        assert_eq!(doc.poset().len(), 6);
        assert_eq!(doc.kind(), KIND_COMPLEX);
    }

    #[test]
    fn missing_map_names_the_pair() {
        let text = TRIANGLE.replace(r#""a,b>b": [[1]],"#, "");
        match parse_document(&text).unwrap_err() {
            Error::MissingMap { upper, lower } => assert_eq!((upper.as_str(), lower.as_str()), ("a,b", "b")),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn empty_file_is_a_syntax_error() {
        let e = parse_document("").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        assert!(e.to_string().contains("line"));
    }

    #[test]
    fn dangling_and_shape_errors() {
        let text = TRIANGLE.replace(r#""a": {"gens": 1},"#, r#""a": {"gens": 1}, "z": {"gens": 1},"#);
        assert!(matches!(parse_document(&text), Err(Error::UnknownElement(_))));
        let text = TRIANGLE.replace(r#""a,b>a": [[1]]"#, r#""a,b>a": [[1, 2]]"#);
        assert!(matches!(parse_document(&text), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn document_round_trip() {
        let doc = parse_document(TRIANGLE).unwrap();
        let again = parse_document(&document_json(doc.complex.as_ref(), &doc.cosheaf).to_string()).unwrap();
        assert_eq!(again.complex, doc.complex);
        for (a, b) in again.cosheaf.maps().iter().zip(doc.cosheaf.maps()) {
            assert_eq!(a.matrix(), b.matrix());
        }
    }

    #[test]
    fn report_round_trip() {
        let r = HomologyReport::new(Pipeline::Cech, vec![
            IsoClass::free(2),
            IsoClass { free_rank: 0, torsion: vec![BigInt::from(2), "123456789012345678901234567890".parse().unwrap()] },
        ]);
        let text = report_json(&r).to_string();
        assert_eq!(parse_report(&text).unwrap(), r);
        assert!(text.contains("\"123456789012345678901234567890\""));
    }
}
