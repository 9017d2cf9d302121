//! Group-spec documents (TOML).
//!
//! ```toml
//! version = 1
//! kind = "semidirect"
//! bound = 6
//!
//! [semidirect]
//! n = 2
//! gamma = [[[-1, 0], [0, -1]]]
//!
//! [[semidirect.subgroups]]
//! name = "H"
//! generators = [{ t = ["1/2", "0"], g = [[1, 0], [0, 1]] }]
//! ```

use std::str::FromStr;

use dimdata::branching::{standard_subgroup, SubgroupKind, TorusRestrictionMap};
use dimdata::finquot::IntMatrix;
use dimdata::rootsys::RootDatum;
use dimdata::semidirect::{FiniteSubgroup, GroupElement, SemidirectGroup, DEFAULT_CONDUCTOR_CAP};
use num_rational::Rational64;
use serde::Deserialize;

pub const SPEC_VERSION: u32 = 1;
const GROUP_CAP: usize = 10_000;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecDocument {
    pub version: u32,
    pub kind: String,
    pub bound: Option<i64>,
    pub tolerance: Option<f64>,
    pub conductor_cap: Option<u64>,
    pub connected: Option<ConnectedSpec>,
    pub semidirect: Option<SemidirectSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectedSpec {
    /// Cartan type of G, e.g. "A2" or "A1xT1".
    pub group: String,
    /// One of the standard subgroup names, or omitted when `map` is given.
    pub subgroup: Option<String>,
    pub map: Option<Vec<Vec<i64>>>,
    pub subgroup_type: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemidirectSpec {
    pub n: usize,
    pub gamma: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    pub subgroups: Vec<SubgroupSpec>,
    #[serde(default)]
    pub pool: Vec<Vec<Vec<Vec<i64>>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupSpec {
    pub name: String,
    #[serde(default)]
    pub generators: Vec<ElementSpec>,
    pub elements: Option<Vec<ElementSpec>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementSpec {
    #[serde(default)]
    pub t: Vec<String>,
    pub g: Option<Vec<Vec<i64>>>,
}

/// A document resolved into computational objects.
pub enum Parsed {
    Connected(ConnectedGroup),
    Semidirect(SemidirectInput),
}

pub struct ConnectedGroup {
    pub g: RootDatum,
    pub map: TorusRestrictionMap,
    pub h: RootDatum,
    pub subgroup_name: String,
}

pub struct SemidirectInput {
    pub group: SemidirectGroup,
    pub subgroups: Vec<(String, FiniteSubgroup)>,
    pub pool: Vec<Vec<IntMatrix>>,
}

pub struct Loaded {
    pub parsed: Parsed,
    pub bound: Option<i64>,
    pub tolerance: Option<f64>,
}

/// Errors split into malformed input and failed computation.
#[derive(Debug)]
pub enum LoadError {
    Parse(String),
    Compute(dimdata::Error),
}

impl From<dimdata::Error> for LoadError {
    fn from(e: dimdata::Error) -> Self {
        LoadError::Compute(e)
    }
}

fn parse_err<T>(msg: impl Into<String>) -> Result<T, LoadError> {
    Err(LoadError::Parse(msg.into()))
}

/// Parses "A2", "B2", "A1xT1", "T2", "A1xA1".
pub fn parse_datum(s: &str) -> Result<RootDatum, LoadError> {
    let mut comps = Vec::new();
    let mut torus = 0;
    for part in s.split(['x', '×']) {
        let mut chars = part.trim().chars();
        let Some(label) = chars.next() else { return parse_err(format!("empty factor in {s:?}")) };
        let Ok(rank) = chars.as_str().parse::<usize>() else { return parse_err(format!("bad rank in {part:?}")) };
        if label == 'T' {
            torus += rank;
        } else {
            comps.push((label, rank));
        }
    }
    if comps.is_empty() {
        return Ok(RootDatum::torus(torus));
    }
    Ok(RootDatum::new(&comps, torus).map_err(|e| LoadError::Parse(e.to_string()))?)
}

fn parse_matrix(rows: &[Vec<i64>], n: usize) -> Result<IntMatrix, LoadError> {
    let m = IntMatrix::from_rows(rows).map_err(|e| LoadError::Parse(e.to_string()))?;
    if m.dim() != n {
        return parse_err(format!("expected a {n}×{n} matrix, got {}×{}", m.dim(), m.dim()));
    }
    Ok(m)
}

fn parse_element(e: &ElementSpec, n: usize) -> Result<GroupElement, LoadError> {
    let t = if e.t.is_empty() {
        vec![Rational64::from_integer(0); n]
    } else {
        e.t.iter()
            .map(|s| Rational64::from_str(s.trim()).or_else(|_| parse_err(format!("torus part {s:?} is not a rational p/q"))))
            .collect::<Result<Vec<_>, _>>()?
    };
    if t.len() != n {
        return parse_err(format!("torus part has {} entries, expected {n}", t.len()));
    }
    let g = match &e.g {
        Some(rows) => parse_matrix(rows, n)?,
        None => IntMatrix::identity(n),
    };
    Ok(GroupElement::new(t, g)?)
}

pub fn load(text: &str) -> Result<Loaded, LoadError> {
    let doc: GroupSpecDocument = toml::from_str(text).map_err(|e| LoadError::Parse(e.to_string()))?;
    if doc.version != SPEC_VERSION {
        return parse_err(format!("unsupported spec version {}", doc.version));
    }
    let parsed = match doc.kind.as_str() {
        "connected" => {
            let Some(c) = doc.connected else { return parse_err("kind = \"connected\" needs a [connected] table") };
            if doc.semidirect.is_some() {
                return parse_err("a connected spec cannot carry a [semidirect] table");
            }
            let g = parse_datum(&c.group)?;
            let (map, h, name) = match (&c.subgroup, &c.map) {
                (Some(name), None) => {
                    let Some(kind) = SubgroupKind::parse(name) else { return parse_err(format!("unknown subgroup {name:?}")) };
                    let (f, h) = standard_subgroup(&g, kind)?;
                    (f, h, name.clone())
                }
                (None, Some(m)) => {
                    let Some(ty) = &c.subgroup_type else { return parse_err("an explicit map needs subgroup_type") };
                    let h = parse_datum(ty)?;
                    let f = TorusRestrictionMap::new(m.clone(), g.rank()).map_err(|e| LoadError::Parse(e.to_string()))?;
                    if f.target_rank() != h.rank() {
                        return parse_err(format!("map has {} rows but {ty} has rank {}", f.target_rank(), h.rank()));
                    }
                    (f, h, ty.clone())
                }
                _ => return parse_err("give exactly one of subgroup or map"),
            };
            Parsed::Connected(ConnectedGroup { g, map, h, subgroup_name: name })
        }
        "semidirect" => {
            let Some(s) = doc.semidirect else { return parse_err("kind = \"semidirect\" needs a [semidirect] table") };
            if doc.connected.is_some() {
                return parse_err("a semidirect spec cannot carry a [connected] table");
            }
            let gens = s.gamma.iter().map(|m| parse_matrix(m, s.n)).collect::<Result<Vec<_>, _>>()?;
            let gens = if gens.is_empty() { vec![IntMatrix::identity(s.n)] } else { gens };
            let group = SemidirectGroup::from_generators(&gens, GROUP_CAP)?
                .with_conductor_cap(doc.conductor_cap.unwrap_or(DEFAULT_CONDUCTOR_CAP));
            let mut subgroups = Vec::new();
            for sub in &s.subgroups {
                let h = match &sub.elements {
                    Some(list) => {
                        if !sub.generators.is_empty() {
                            return parse_err(format!("subgroup {} gives both generators and elements", sub.name));
                        }
                        let els = list.iter().map(|e| parse_element(e, s.n)).collect::<Result<Vec<_>, _>>()?;
                        FiniteSubgroup::from_elements(els)?
                    }
                    None => {
                        let els = sub.generators.iter().map(|e| parse_element(e, s.n)).collect::<Result<Vec<_>, _>>()?;
                        FiniteSubgroup::generate(&els, GROUP_CAP)?
                    }
                };
                for x in h.elements() {
                    if group.gamma().index_of(&x.g).is_none() {
                        return Err(LoadError::Compute(dimdata::Error::NotSubgroup(format!(
                            "subgroup {} has component {:?} outside Γ",
                            sub.name, x.g
                        ))));
                    }
                }
                subgroups.push((sub.name.clone(), h));
            }
            let pool = s
                .pool
                .iter()
                .map(|entry| entry.iter().map(|m| parse_matrix(m, s.n)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            Parsed::Semidirect(SemidirectInput { group, subgroups, pool: if pool.is_empty() { vec![gens] } else { pool } })
        }
        other => return parse_err(format!("unknown kind {other:?}")),
    };
    Ok(Loaded { parsed, bound: doc.bound, tolerance: doc.tolerance })
}
