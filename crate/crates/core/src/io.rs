//! JSON file formats and a small registry of loaded objects.
//!
//! Lattices are referenced by name (a registered name or a builtin such as
//! `chain3`) or given inline as `{elements, covers}`. Structure files carry
//! their carrier and, for fuzzy domains, their `L`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::convexity::{DomainKind, StructureMap, Witness};
use crate::error::{Error, Result};
use crate::fuzzy::{Carrier, FuzzyDomain, FuzzySet, SpaceMap};
use crate::lattice::FiniteLattice;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeRef {
    Name(String),
    Inline(LatticeFile),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzySetFile {
    pub carrier: Vec<String>,
    pub lattice: LatticeRef,
    pub values: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetValue {
    Crisp(Vec<String>),
    Fuzzy(BTreeMap<String, String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryFile {
    pub set: SetValue,
    pub degree: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub domain: String,
    pub carrier: Vec<String>,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub l: Option<LatticeRef>,
    #[serde(rename = "M")]
    pub m: LatticeRef,
    pub default: String,
    pub entries: Vec<EntryFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceMapFile {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub graph: BTreeMap<String, String>,
}

/// Parses JSON, reporting `source:line:column` on failure.
pub fn parse_json<T: DeserializeOwned>(text: &str, source: &str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| Error::Format(format!("{source}:{}:{}: {e}", e.line(), e.column())))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    parse_json(&text, &path.display().to_string())
}

pub fn lattice_to_file(lat: &FiniteLattice) -> LatticeFile {
    LatticeFile {
        elements: lat.names().to_vec(),
        covers: lat
            .covers()
            .into_iter()
            .map(|(a, b)| (lat.name(a).to_string(), lat.name(b).to_string()))
            .collect(),
    }
}

pub fn lattice_from_file(file: &LatticeFile) -> Result<FiniteLattice> {
    Ok(FiniteLattice::from_covers(&file.elements, &file.covers)?)
}

pub fn map_to_file(f: &SpaceMap) -> SpaceMapFile {
    SpaceMapFile {
        domain: f.domain().points().to_vec(),
        codomain: f.codomain().points().to_vec(),
        graph: (0..f.domain().len())
            .map(|x| (f.domain().point(x).to_string(), f.codomain().point(f.apply(x)).to_string()))
            .collect(),
    }
}

fn fuzzy_values(d: &FuzzyDomain, a: &FuzzySet) -> BTreeMap<String, String> {
    d.render(a).into_iter().collect()
}

/// A witness as it appears in reports and structure files.
pub fn witness_value(d: &FuzzyDomain, w: &Witness) -> SetValue {
    match w {
        Witness::Crisp(s) => SetValue::Crisp(d.carrier().render(*s)),
        Witness::Fuzzy(a) => SetValue::Fuzzy(fuzzy_values(d, a)),
    }
}

/// Builtins that output files refer to by name.
const COMMON_BUILTINS: &[&str] = &["2", "chain3", "chain4", "chain5", "diamond", "N5", "M3", "boolean3"];

/// Loaded objects by name, plus carrier interning.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    lattices: BTreeMap<String, Arc<FiniteLattice>>,
    carriers: Vec<Arc<Carrier>>,
    structures: BTreeMap<String, StructureMap>,
    maps: BTreeMap<String, SpaceMap>,
    fuzzy_sets: BTreeMap<String, (FuzzyDomain, FuzzySet)>,
}

impl Workspace {
    pub fn new() -> Self {
        Workspace::default()
    }

    pub fn register_lattice(&mut self, name: &str, lat: FiniteLattice) -> Result<Arc<FiniteLattice>> {
        if self.lattices.contains_key(name) {
            return Err(Error::Format(format!("lattice `{name}` registered twice")));
        }
        let lat = Arc::new(lat);
        self.lattices.insert(name.to_string(), lat.clone());
        Ok(lat)
    }

    pub fn lattice(&self, name: &str) -> Option<&Arc<FiniteLattice>> {
        self.lattices.get(name)
    }

    /// Registered names win over builtins; a builtin is registered on first use.
    pub fn resolve_lattice(&mut self, r: &LatticeRef) -> Result<Arc<FiniteLattice>> {
        match r {
            LatticeRef::Name(name) => match self.lattices.get(name) {
                Some(lat) => Ok(lat.clone()),
                None => self.register_lattice(name, FiniteLattice::builtin(name)?),
            },
            LatticeRef::Inline(file) => Ok(Arc::new(lattice_from_file(file)?)),
        }
    }

    /// A reference to `lat`: a registered name, else a common builtin, else inline.
    pub fn lattice_ref(&self, lat: &FiniteLattice) -> LatticeRef {
        if let Some((name, _)) = self.lattices.iter().find(|(_, l)| ***l == *lat) {
            return LatticeRef::Name(name.clone());
        }
        COMMON_BUILTINS
            .iter()
            .find(|name| FiniteLattice::builtin(name).is_ok_and(|b| b == *lat))
            .map(|name| LatticeRef::Name(name.to_string()))
            .unwrap_or_else(|| LatticeRef::Inline(lattice_to_file(lat)))
    }

    pub fn carrier<S: AsRef<str>>(&mut self, points: &[S]) -> Result<Arc<Carrier>> {
        let c = Carrier::new(points)?;
        if let Some(found) = self.carriers.iter().find(|k| ***k == c) {
            return Ok(found.clone());
        }
        let c = Arc::new(c);
        self.carriers.push(c.clone());
        Ok(c)
    }

    pub fn fuzzy_set_from_file(&mut self, file: &FuzzySetFile) -> Result<(FuzzyDomain, FuzzySet)> {
        let x = self.carrier(&file.carrier)?;
        let l = self.resolve_lattice(&file.lattice)?;
        let pairs: Vec<(&String, &String)> = file.values.iter().collect();
        let a = FuzzySet::from_named(&x, &l, &pairs)?;
        Ok((FuzzyDomain::new(x, l)?, a))
    }

    pub fn fuzzy_set_to_file(&self, d: &FuzzyDomain, a: &FuzzySet) -> FuzzySetFile {
        FuzzySetFile {
            carrier: d.carrier().points().to_vec(),
            lattice: self.lattice_ref(d.lattice()),
            values: fuzzy_values(d, a),
        }
    }

    pub fn map_from_file(&mut self, file: &SpaceMapFile) -> Result<SpaceMap> {
        let x = self.carrier(&file.domain)?;
        let y = self.carrier(&file.codomain)?;
        let pairs: Vec<(&String, &String)> = file.graph.iter().collect();
        SpaceMap::from_named(x, y, &pairs)
    }

    pub fn structure_from_file(&mut self, file: &StructureFile) -> Result<StructureMap> {
        let x = self.carrier(&file.carrier)?;
        let m = self.resolve_lattice(&file.m)?;
        let (kind, domain) = match (file.domain.as_str(), &file.l) {
            ("crisp", None) => (DomainKind::Crisp, FuzzyDomain::crisp(x.clone())),
            ("fuzzy", Some(l)) => (DomainKind::Fuzzy, FuzzyDomain::new(x.clone(), self.resolve_lattice(l)?)?),
            ("fuzzy", None) => return Err(Error::Format("a fuzzy structure needs `L`".into())),
            ("crisp", Some(_)) => return Err(Error::Format("a crisp structure takes no `L`".into())),
            (other, _) => return Err(Error::Format(format!("unknown domain `{other}`"))),
        };
        let mut s = StructureMap::with_kind(kind, domain.clone(), m.clone())?;
        s.set_default(m.elem(&file.default)?);
        let mut seen = std::collections::BTreeSet::new();
        for entry in &file.entries {
            let set = match (&entry.set, kind) {
                (SetValue::Crisp(points), DomainKind::Crisp) => {
                    FuzzySet::characteristic(domain.lattice(), x.len(), x.subset(points)?)
                }
                (SetValue::Fuzzy(values), DomainKind::Fuzzy) => {
                    let pairs: Vec<(&String, &String)> = values.iter().collect();
                    FuzzySet::from_named(&x, domain.lattice(), &pairs)?
                }
                (SetValue::Crisp(_), DomainKind::Fuzzy) => {
                    return Err(Error::Format("fuzzy domains take `{point: element}` sets".into()))
                }
                (SetValue::Fuzzy(_), DomainKind::Crisp) => {
                    return Err(Error::Format("crisp domains take `[points]` sets".into()))
                }
            };
            if !seen.insert(domain.encode(&set)) {
                return Err(Error::Format("the same set appears in two entries".into()));
            }
            s.set(&set, m.elem(&entry.degree)?)?;
        }
        Ok(s)
    }

    pub fn structure_to_file(&self, s: &StructureMap) -> StructureFile {
        let d = s.domain();
        StructureFile {
            domain: s.kind().to_string(),
            carrier: s.carrier().points().to_vec(),
            l: match s.kind() {
                DomainKind::Crisp => None,
                DomainKind::Fuzzy => Some(self.lattice_ref(s.lattice())),
            },
            m: self.lattice_ref(s.m()),
            default: s.m().name(s.default_value()).to_string(),
            entries: s
                .entries()
                .map(|(c, v)| EntryFile {
                    set: witness_value(d, &s.witness(c)),
                    degree: s.m().name(v).to_string(),
                })
                .collect(),
        }
    }

    /// Loads a lattice file and registers it under the file stem.
    pub fn load_lattice(&mut self, path: &Path) -> Result<Arc<FiniteLattice>> {
        let file: LatticeFile = read_json(path)?;
        let lat = lattice_from_file(&file)?;
        self.register_lattice(&stem(path), lat)
    }

    pub fn load_structure(&mut self, path: &Path) -> Result<StructureMap> {
        let file: StructureFile = read_json(path)?;
        let s = self.structure_from_file(&file)?;
        self.structures.insert(stem(path), s.clone());
        Ok(s)
    }

    pub fn load_map(&mut self, path: &Path) -> Result<SpaceMap> {
        let file: SpaceMapFile = read_json(path)?;
        let f = self.map_from_file(&file)?;
        self.maps.insert(stem(path), f.clone());
        Ok(f)
    }

    pub fn load_fuzzy_set(&mut self, path: &Path) -> Result<(FuzzyDomain, FuzzySet)> {
        let file: FuzzySetFile = read_json(path)?;
        let pair = self.fuzzy_set_from_file(&file)?;
        self.fuzzy_sets.insert(stem(path), pair.clone());
        Ok(pair)
    }

    pub fn structure(&self, name: &str) -> Option<&StructureMap> {
        self.structures.get(name)
    }

    pub fn map(&self, name: &str) -> Option<&SpaceMap> {
        self.maps.get(name)
    }

    pub fn fuzzy_set(&self, name: &str) -> Option<&(FuzzyDomain, FuzzySet)> {
        self.fuzzy_sets.get(name)
    }
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}
