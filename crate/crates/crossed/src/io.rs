//! JSON file formats for groups, matched pairs, braided pairs, categories and center data.
//!
//! Group and matched-pair fields may be given inline or as a path relative to the file.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::braided::BraidedMatchedPair;
use crate::category::{validate_category, CategoryError, PointedCrossedCategory, ScalarTable};
use crate::center::{CenterSimple, CenterStructure};
use crate::group::{self, FiniteGroup, GroupActionOnSet, GroupError, GroupHom, HomError, Side};
use crate::matched::MatchedPair;
use crate::scalar::UnitScalar;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid group: {0}")]
    Group(#[from] GroupError),
    #[error("invalid homomorphism: {0}")]
    Hom(#[from] HomError),
    #[error("invalid category: {0}")]
    Category(#[from] CategoryError),
    #[error("{0}")]
    Format(String),
}

fn format_err(msg: impl Into<String>) -> IoError {
    IoError::Format(msg.into())
}

pub fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Read { path: path.to_path_buf(), source })
}

pub fn write_json(path: &Path, v: &Value) -> Result<(), IoError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    fs::write(path, s).map_err(|source| IoError::Write { path: path.to_path_buf(), source })
}

fn base_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

// --- groups ---------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    #[serde(default)]
    pub name: String,
    pub order: usize,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
}

impl GroupFile {
    pub fn into_group(self) -> Result<FiniteGroup, IoError> {
        if self.table.len() != self.order {
            return Err(format_err(format!("order {} but table has {} rows", self.order, self.table.len())));
        }
        let g = group::validate_named(&self.name, self.table, self.identity)?;
        Ok(match self.elements {
            Some(names) => g.with_element_names(names)?,
            None => g,
        })
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile {
            name: g.name().to_string(),
            order: g.order(),
            identity: g.identity(),
            table: g.table_rows(),
            elements: g.element_names().map(<[String]>::to_vec),
        }
    }
}

pub fn group_to_json(g: &FiniteGroup) -> Value {
    serde_json::to_value(GroupFile::from_group(g)).expect("serializable")
}

pub fn parse_group(text: &str) -> Result<FiniteGroup, IoError> {
    serde_json::from_str::<GroupFile>(text)?.into_group()
}

pub fn load_group(path: &Path) -> Result<FiniteGroup, IoError> {
    parse_group(&read(path)?)
}

pub fn save_group(g: &FiniteGroup, path: &Path) -> Result<(), IoError> {
    write_json(path, &group_to_json(g))
}

/// A group given inline or as a relative path.
fn resolve_group(v: &Value, base: &Path) -> Result<FiniteGroup, IoError> {
    match v {
        Value::String(p) => load_group(&base.join(p)),
        other => serde_json::from_value::<GroupFile>(other.clone())?.into_group(),
    }
}

// --- matched pairs --------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatchedPairFile {
    #[serde(rename = "G")]
    pub g: Value,
    #[serde(rename = "Gamma")]
    pub gamma: Value,
    pub act1: Vec<Vec<usize>>,
    pub act2: Vec<Vec<usize>>,
    #[serde(rename = "act1Side", default = "left")]
    pub act1_side: Side,
    #[serde(rename = "act2Side", default = "left")]
    pub act2_side: Side,
}

fn left() -> Side {
    Side::Left
}

fn check_rows(name: &str, t: &[Vec<usize>], rows: usize, cols: usize) -> Result<(), IoError> {
    if t.len() != rows || t.iter().any(|r| r.len() != cols) {
        return Err(format_err(format!("{name} must be a {rows}x{cols} table")));
    }
    if let Some(x) = t.iter().flatten().find(|&&x| x >= cols) {
        return Err(format_err(format!("{name} entry {x} out of range")));
    }
    Ok(())
}

impl MatchedPairFile {
    /// Shapes are checked; the matched-pair axioms are not.
    pub fn into_pair(self, base: &Path) -> Result<MatchedPair, IoError> {
        let g = resolve_group(&self.g, base)?;
        let gamma = resolve_group(&self.gamma, base)?;
        check_rows("act1", &self.act1, g.order(), gamma.order())?;
        check_rows("act2", &self.act2, gamma.order(), g.order())?;
        let act1 = GroupActionOnSet { actor: g.clone(), set_size: gamma.order(), table: self.act1, side: self.act1_side };
        let act2 = GroupActionOnSet { actor: gamma.clone(), set_size: g.order(), table: self.act2, side: self.act2_side };
        Ok(MatchedPair { g, gamma, act1, act2 })
    }
}

pub fn matched_pair_to_json(mp: &MatchedPair) -> Value {
    json!({
        "G": group_to_json(&mp.g),
        "Gamma": group_to_json(&mp.gamma),
        "act1": mp.act1.table,
        "act2": mp.act2.table,
        "act1Side": mp.act1.side,
        "act2Side": mp.act2.side,
    })
}

fn pair_from_value(v: &Value, base: &Path) -> Result<MatchedPair, IoError> {
    match v {
        Value::String(p) => load_matched_pair(&base.join(p)),
        other => serde_json::from_value::<MatchedPairFile>(other.clone())?.into_pair(base),
    }
}

pub fn parse_matched_pair(text: &str, base: &Path) -> Result<MatchedPair, IoError> {
    serde_json::from_str::<MatchedPairFile>(text)?.into_pair(base)
}

pub fn load_matched_pair(path: &Path) -> Result<MatchedPair, IoError> {
    parse_matched_pair(&read(path)?, &base_of(path))
}

pub fn save_matched_pair(mp: &MatchedPair, path: &Path) -> Result<(), IoError> {
    write_json(path, &matched_pair_to_json(mp))
}

// --- braided pairs --------------------------------------------------------

pub fn braided_pair_to_json(b: &BraidedMatchedPair) -> Value {
    let mut v = matched_pair_to_json(&b.mp);
    v["phi"] = json!(b.phi.image);
    v["psi"] = json!(b.psi.image);
    v
}

pub fn parse_braided_pair(text: &str, base: &Path) -> Result<BraidedMatchedPair, IoError> {
    let v: Value = serde_json::from_str(text)?;
    let mp = pair_from_value(&v, base)?;
    let image = |key: &str| -> Result<Vec<usize>, IoError> {
        let a: Vec<usize> = serde_json::from_value(v.get(key).cloned().ok_or_else(|| format_err(format!("missing {key}")))?)?;
        if a.len() != mp.gamma.order() || a.iter().any(|&x| x >= mp.g.order()) {
            return Err(format_err(format!("{key} must map Gamma into G")));
        }
        Ok(a)
    };
    // Homomorphism failures are axiom failures, reported by the verifier.
    let phi = GroupHom { source: mp.gamma.clone(), target: mp.g.clone(), image: image("phi")? };
    let psi = GroupHom { source: mp.gamma.clone(), target: mp.g.clone(), image: image("psi")? };
    Ok(BraidedMatchedPair { mp, phi, psi })
}

pub fn load_braided_pair(path: &Path) -> Result<BraidedMatchedPair, IoError> {
    parse_braided_pair(&read(path)?, &base_of(path))
}

pub fn save_braided_pair(b: &BraidedMatchedPair, path: &Path) -> Result<(), IoError> {
    write_json(path, &braided_pair_to_json(b))
}

// --- categories -----------------------------------------------------------

fn flatten_scalars(v: &Value, table: &'static str, dims: &[usize], m: u32) -> Result<Vec<u32>, IoError> {
    let total: usize = dims.iter().product();
    if v.as_str() == Some("trivial") {
        return Ok(vec![0; total]);
    }
    let mut out = Vec::with_capacity(total);
    fn walk(v: &Value, depth: usize, dims: &[usize], table: &'static str, m: u32, out: &mut Vec<u32>) -> Result<(), IoError> {
        if depth == dims.len() {
            let index = out.len();
            return match v {
                Value::Null => Err(CategoryError::ZeroScalar { table, index }.into()),
                Value::Number(n) => {
                    let x = n.as_i64().ok_or_else(|| format_err(format!("{table}[{index}] is not an integer")))?;
                    if x < 0 || x >= m as i64 {
                        return Err(CategoryError::ExponentRange { table, index, value: x, m }.into());
                    }
                    out.push(x as u32);
                    Ok(())
                }
                _ => Err(format_err(format!("{table}[{index}] must be an exponent or null"))),
            };
        }
        let a = v.as_array().ok_or_else(|| format_err(format!("{table} must be nested arrays of depth {}", dims.len())))?;
        if a.len() != dims[depth] {
            return Err(format_err(format!("{table} has {} entries at depth {depth}, expected {}", a.len(), dims[depth])));
        }
        a.iter().try_for_each(|x| walk(x, depth + 1, dims, table, m, out))
    }
    walk(v, 0, dims, table, m, &mut out)?;
    Ok(out)
}

fn nest(flat: &[u32], dims: &[usize]) -> Value {
    if flat.iter().all(|&x| x == 0) {
        return json!("trivial");
    }
    fn go(flat: &[u32], dims: &[usize]) -> Value {
        if dims.is_empty() {
            return json!(flat[0]);
        }
        let stride: usize = dims[1..].iter().product();
        Value::Array((0..dims[0]).map(|i| go(&flat[i * stride..(i + 1) * stride], &dims[1..])).collect())
    }
    go(flat, dims)
}

fn dims(cat: &PointedCrossedCategory, t: ScalarTable) -> Vec<usize> {
    let (ng, nl) = (cat.n_g(), cat.n_l());
    match t {
        ScalarTable::J => vec![ng, nl, nl],
        ScalarTable::Phi => vec![ng],
        ScalarTable::Chi => vec![ng, ng, nl],
        ScalarTable::Iota => vec![nl],
    }
}

pub fn category_to_json(cat: &PointedCrossedCategory) -> Value {
    let mut v = json!({
        "Lambda": group_to_json(&cat.lambda),
        "G": group_to_json(cat.g()),
        "Gamma": group_to_json(cat.gamma()),
        "mp": matched_pair_to_json(&cat.mp),
        "grading": cat.grading.image,
        "action": cat.action,
        "M": cat.m,
    });
    for t in ScalarTable::ALL {
        v[t.name()] = nest(cat.table(t), &dims(cat, t));
    }
    v
}

/// Parses and shape-checks a category; the crossed-category axioms are not checked.
pub fn parse_category(text: &str, base: &Path) -> Result<PointedCrossedCategory, IoError> {
    let v: Value = serde_json::from_str(text)?;
    let field = |k: &str| v.get(k).ok_or_else(|| format_err(format!("missing {k}")));
    let lambda = resolve_group(field("Lambda")?, base)?;
    let mp = pair_from_value(field("mp")?, base)?;
    for (k, g) in [("G", &mp.g), ("Gamma", &mp.gamma)] {
        if let Some(x) = v.get(k) {
            let h = resolve_group(x, base)?;
            if h.table_rows() != g.table_rows() || h.identity() != g.identity() {
                return Err(format_err(format!("{k} differs from the matched pair's group")));
            }
        }
    }
    let m: u32 = serde_json::from_value(field("M")?.clone())?;
    if m == 0 {
        return Err(CategoryError::ZeroModulus.into());
    }
    let grading: Vec<usize> = serde_json::from_value(field("grading")?.clone())?;
    if grading.len() != lambda.order() || grading.iter().any(|&x| x >= mp.gamma.order()) {
        return Err(format_err("grading must map Lambda into Gamma"));
    }
    let grading = GroupHom::new(lambda.clone(), mp.gamma.clone(), grading)?;
    let action: Vec<Vec<usize>> = serde_json::from_value(field("action")?.clone())?;
    check_rows("action", &action, mp.g.order(), lambda.order())?;
    let mut cat = PointedCrossedCategory::with_trivial_scalars(lambda, mp, grading, action, m);
    for t in ScalarTable::ALL {
        let d = dims(&cat, t);
        let raw = v.get(t.name()).cloned().unwrap_or_else(|| json!("trivial"));
        *cat.table_mut(t) = flatten_scalars(&raw, t.name(), &d, m)?;
    }
    if let Some(e) = cat.shape_error() {
        return Err(e.into());
    }
    Ok(cat)
}

/// Parses and validates.
pub fn load_category(path: &Path) -> Result<PointedCrossedCategory, IoError> {
    let cat = parse_category(&read(path)?, &base_of(path))?;
    validate_category(&cat)?;
    Ok(cat)
}

pub fn save_category(cat: &PointedCrossedCategory, path: &Path) -> Result<(), IoError> {
    write_json(path, &category_to_json(cat))
}

// --- center ---------------------------------------------------------------

pub fn center_structure_to_json(st: &CenterStructure) -> Value {
    json!({
        "simples": st.simples,
        "tensorTable": st.tensor_table,
        "gActionTable": st.g_action_table,
        "gammaActionTable": st.gamma_action_table,
        "braidingTable": st.braiding_table.iter().map(|row| row.iter().map(|(t, c)| json!({"target": t, "coefficient": c.exponent()})).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "section": st.section,
    })
}

pub fn parse_center_structure(text: &str) -> Result<CenterStructure, IoError> {
    let v: Value = serde_json::from_str(text)?;
    let get = |k: &str| v.get(k).cloned().ok_or_else(|| format_err(format!("missing {k}")));
    let simples: Vec<CenterSimple> = serde_json::from_value(get("simples")?)?;
    let braiding: Vec<Vec<Value>> = serde_json::from_value(get("braidingTable")?)?;
    let braiding_table = braiding
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|e| {
                    let t = e["target"].as_u64().ok_or_else(|| format_err("braiding target"))? as usize;
                    let c = match e["coefficient"].as_u64() {
                        Some(x) => UnitScalar::Root(x as u32),
                        None => UnitScalar::Zero,
                    };
                    Ok((t, c))
                })
                .collect::<Result<Vec<_>, IoError>>()
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(CenterStructure {
        simples,
        tensor_table: serde_json::from_value(get("tensorTable")?)?,
        g_action_table: serde_json::from_value(get("gActionTable")?)?,
        gamma_action_table: serde_json::from_value(get("gammaActionTable")?)?,
        braiding_table,
        section: serde_json::from_value(get("section")?)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::verify_crossed_category;
    use crate::fixtures;

    fn tmp(name: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("crossed-io-{}", std::process::id()));
        fs::create_dir_all(&d).unwrap();
        d.join(name)
    }

    #[test]
    fn group_round_trip() {
        for (name, g) in fixtures::groups() {
            let p = tmp(&format!("{name}.json"));
            save_group(&g, &p).unwrap();
            assert_eq!(load_group(&p).unwrap(), g);
        }
    }

    #[test]
    fn bad_group_files() {
        let swapped = r#"{"name":"bad","order":2,"identity":0,"table":[[0,1],[1,1]]}"#;
        assert!(matches!(parse_group(swapped), Err(IoError::Group(_))));
        assert!(matches!(parse_group("{"), Err(IoError::Json(_))));
        assert!(matches!(parse_group(r#"{"order":3,"identity":0,"table":[[0]]}"#), Err(IoError::Format(_))));
    }

    #[test]
    fn pair_and_category_round_trip() {
        for (name, mp) in fixtures::matched_pairs() {
            let p = tmp(&format!("{name}.mp.json"));
            save_matched_pair(&mp, &p).unwrap();
            assert_eq!(load_matched_pair(&p).unwrap(), mp);
        }
        for (name, b) in fixtures::braided_pairs() {
            let p = tmp(&format!("{name}.bp.json"));
            save_braided_pair(&b, &p).unwrap();
            assert_eq!(load_braided_pair(&p).unwrap(), b);
        }
        for (name, cat) in fixtures::categories() {
            let p = tmp(&format!("{name}.cat.json"));
            save_category(&cat, &p).unwrap();
            assert_eq!(load_category(&p).unwrap(), cat, "{name}");
        }
    }

    #[test]
    fn hand_written_vec_z2_with_group_refs() {
        let d = tmp("refs");
        fs::create_dir_all(&d).unwrap();
        let z2 = r#"{"name":"Z2","order":2,"identity":0,"table":[[0,1],[1,0]]}"#;
        let one = r#"{"name":"1","order":1,"identity":0,"table":[[0]]}"#;
        fs::write(d.join("z2.json"), z2).unwrap();
        fs::write(d.join("one.json"), one).unwrap();
        fs::write(d.join("mp.json"), r#"{"G":"one.json","Gamma":"z2.json","act1":[[0,1]],"act2":[[0],[0]]}"#).unwrap();
        let cat = r#"{"Lambda":"z2.json","mp":"mp.json","grading":[0,1],"action":[[0,1]],"M":2,
                      "J":"trivial","phi":"trivial","chi":"trivial","iota":"trivial"}"#;
        fs::write(d.join("cat.json"), cat).unwrap();
        let c = load_category(&d.join("cat.json")).unwrap();
        assert!(verify_crossed_category(&c).passed());
        assert_eq!(c.n_l(), 2);
    }

    #[test]
    fn bad_scalars_are_rejected() {
        let mut v = category_to_json(&fixtures::cocycle());
        v["J"][1][1][1] = json!(7);
        let e = parse_category(&v.to_string(), Path::new(".")).unwrap_err();
        assert!(matches!(e, IoError::Category(CategoryError::ExponentRange { value: 7, .. })), "{e}");
        v["J"][1][1][1] = Value::Null;
        let e = parse_category(&v.to_string(), Path::new(".")).unwrap_err();
        assert!(matches!(e, IoError::Category(CategoryError::ZeroScalar { .. })), "{e}");
        // A valid exponent that breaks an axiom parses but fails validation.
        v["J"][1][1][1] = json!(1);
        let p = tmp("broken.cat.json");
        write_json(&p, &v).unwrap();
        assert!(matches!(load_category(&p), Err(IoError::Category(CategoryError::Validation { .. }))));
    }

    #[test]
    fn center_structure_round_trip() {
        let cat = fixtures::z4_over_z2();
        let st = crate::center::Center::new(&cat).unwrap().structure().unwrap();
        let v = center_structure_to_json(&st);
        assert_eq!(parse_center_structure(&v.to_string()).unwrap(), st);
    }
}
