//! JSON instance files, configuration strings and verdict reports.
//!
//! Every document is an object with a `kind` tag, optional `name`, `seed`
//! and `provenance` metadata, and the fields of its kind. Output is
//! canonical: keys sorted, two-space indentation, a trailing newline.

mod conf;
pub mod docs;
mod report;

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::coloring::ColorGrid;
use crate::models::{Machine, Mcm, Oca, OneCounterEnergyGame, Pda, PushdownEnergyGame, Vass};
use crate::reductions::OcaToOcnParams;
use crate::semilinear::Upc;

pub use conf::{parse_oca_conf, parse_oceg_pos, parse_pda_conf, parse_peg_pos, parse_vass_conf, ConfError};
pub use report::{energy_report, simulation_report, StrategyMove, VerdictReport};

use docs::{GridDoc, McmDoc, OcaDoc, OcegDoc, PdaDoc, PegDoc, UpcDoc, VassDoc};

/// A schema violation, located by a JSON pointer.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{}: {message}", if pointer.is_empty() { "/" } else { pointer.as_str() })]
pub struct SchemaError {
    pub pointer: String,
    pub message: String,
}

impl SchemaError {
    pub fn new(pointer: String, message: String) -> Self {
        SchemaError { pointer, message }
    }
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },
    #[error("schema error at {0}")]
    Schema(#[from] SchemaError),
    #[error("expected a document of kind `{expected}`, found `{found}`")]
    WrongKind { expected: String, found: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Metadata {
    pub name: Option<String>,
    pub seed: Option<u64>,
    pub provenance: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Machine(Machine),
    Upc(Upc),
    OcaToOcnParams(OcaToOcnParams),
    ColorGrid(ColorGrid),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Machine(m) => m.kind(),
            Payload::Upc(_) => "upc",
            Payload::OcaToOcnParams(_) => "oca_to_ocn_params",
            Payload::ColorGrid(_) => "color_grid",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InstanceFile {
    pub metadata: Metadata,
    pub payload: Payload,
}

impl InstanceFile {
    pub fn new(payload: Payload) -> Self {
        InstanceFile {
            metadata: Metadata::default(),
            payload,
        }
    }

    pub fn machine(m: Machine) -> Self {
        InstanceFile::new(Payload::Machine(m))
    }

    pub fn named(mut self, name: &str) -> Self {
        self.metadata.name = Some(name.to_string());
        self
    }
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        let part = match seg {
            Segment::Seq { index } => index.to_string(),
            Segment::Map { key } => key.replace('~', "~0").replace('/', "~1"),
            Segment::Enum { variant } => variant.clone(),
            Segment::Unknown => continue,
        };
        out.push('/');
        out.push_str(&part);
    }
    out
}

fn from_value<T: DeserializeOwned>(v: Value, prefix: &str) -> Result<T, SchemaError> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let pointer = format!("{prefix}{}", pointer_of(e.path()));
        SchemaError::new(pointer, e.into_inner().to_string())
    })
}

fn take<T: DeserializeOwned>(obj: &mut Map<String, Value>, key: &str) -> Result<Option<T>, SchemaError> {
    match obj.remove(key) {
        None => Ok(None),
        Some(v) => from_value(v, &format!("/{key}")).map(Some),
    }
}

pub fn parse(bytes: &[u8]) -> Result<InstanceFile, SchemaError> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| SchemaError::new(String::new(), e.to_string()))?;
    let Value::Object(mut obj) = value else {
        return Err(SchemaError::new(String::new(), "expected an object".into()));
    };
    let kind: String = take(&mut obj, "kind")?.ok_or_else(|| SchemaError::new("/kind".into(), "missing field".into()))?;
    let metadata = Metadata {
        name: take(&mut obj, "name")?,
        seed: take(&mut obj, "seed")?,
        provenance: take(&mut obj, "provenance")?,
    };
    let rest = Value::Object(obj);
    let payload = match kind.as_str() {
        "pda" => Payload::Machine(Machine::Pda(from_value::<PdaDoc>(rest, "")?.to_model()?)),
        "oca" => Payload::Machine(Machine::Oca(from_value::<OcaDoc>(rest, "")?.to_model()?)),
        "vass" => Payload::Machine(Machine::Vass(from_value::<VassDoc>(rest, "")?.to_model()?)),
        "pushdown_energy_game" => {
            Payload::Machine(Machine::PushdownEnergyGame(from_value::<PegDoc>(rest, "")?.to_model()?))
        }
        "one_counter_energy_game" => {
            Payload::Machine(Machine::OneCounterEnergyGame(from_value::<OcegDoc>(rest, "")?.to_model()?))
        }
        "mcm" => Payload::Machine(Machine::Mcm(from_value::<McmDoc>(rest, "")?.to_model()?)),
        "upc" => Payload::Upc(from_value::<UpcDoc>(rest, "")?.to_model()?),
        "oca_to_ocn_params" => Payload::OcaToOcnParams(from_value(rest, "")?),
        "color_grid" => Payload::ColorGrid(from_value::<GridDoc>(rest, "")?.to_model()?),
        other => return Err(SchemaError::new("/kind".into(), format!("unknown kind `{other}`"))),
    };
    Ok(InstanceFile { metadata, payload })
}

fn to_object<T: Serialize>(doc: &T) -> Map<String, Value> {
    match serde_json::to_value(doc).expect("documents serialize") {
        Value::Object(m) => m,
        _ => unreachable!("documents are objects"),
    }
}

pub fn to_value(file: &InstanceFile) -> Value {
    let mut obj = match &file.payload {
        Payload::Machine(Machine::Pda(m)) => to_object(&PdaDoc::from_model(m)),
        Payload::Machine(Machine::Oca(m)) => to_object(&OcaDoc::from_model(m)),
        Payload::Machine(Machine::Vass(m)) => to_object(&VassDoc::from_model(m)),
        Payload::Machine(Machine::PushdownEnergyGame(m)) => to_object(&PegDoc::from_model(m)),
        Payload::Machine(Machine::OneCounterEnergyGame(m)) => to_object(&OcegDoc::from_model(m)),
        Payload::Machine(Machine::Mcm(m)) => to_object(&McmDoc::from_model(m)),
        Payload::Upc(u) => to_object(&UpcDoc::from_model(u)),
        Payload::OcaToOcnParams(p) => to_object(p),
        Payload::ColorGrid(g) => to_object(&GridDoc::from_model(g)),
    };
    obj.insert("kind".into(), Value::String(file.payload.kind().into()));
    let md = &file.metadata;
    if let Some(n) = &md.name {
        obj.insert("name".into(), Value::String(n.clone()));
    }
    if let Some(s) = md.seed {
        obj.insert("seed".into(), Value::from(s));
    }
    if let Some(p) = &md.provenance {
        obj.insert("provenance".into(), Value::from(p.clone()));
    }
    Value::Object(obj)
}

/// Canonical pretty output of any JSON value.
pub fn canonical(value: &Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("values serialize");
    out.push(b'\n');
    out
}

pub fn serialize(file: &InstanceFile) -> Vec<u8> {
    canonical(&to_value(file))
}

pub fn read_file(path: &Path) -> Result<InstanceFile, IoError> {
    let bytes = std::fs::read(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })?;
    Ok(parse(&bytes)?)
}

pub fn write_file(path: &Path, file: &InstanceFile) -> Result<(), IoError> {
    std::fs::write(path, serialize(file)).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}

fn wrong(expected: &str, found: &InstanceFile) -> IoError {
    IoError::WrongKind {
        expected: expected.into(),
        found: found.payload.kind().into(),
    }
}

macro_rules! accessor {
    ($fn:ident, $variant:ident, $ty:ty, $kind:literal) => {
        pub fn $fn(self) -> Result<$ty, IoError> {
            match self.payload {
                Payload::Machine(Machine::$variant(m)) => Ok(m),
                _ => Err(wrong($kind, &self)),
            }
        }
    };
}

impl InstanceFile {
    accessor!(into_pda, Pda, Pda, "pda");
    accessor!(into_oca, Oca, Oca, "oca");
    accessor!(into_vass, Vass, Vass, "vass");
    accessor!(into_peg, PushdownEnergyGame, PushdownEnergyGame, "pushdown_energy_game");
    accessor!(into_oceg, OneCounterEnergyGame, OneCounterEnergyGame, "one_counter_energy_game");
    accessor!(into_mcm, Mcm, Mcm, "mcm");

    pub fn into_upc(self) -> Result<Upc, IoError> {
        match self.payload {
            Payload::Upc(u) => Ok(u),
            _ => Err(wrong("upc", &self)),
        }
    }

    pub fn into_grid(self) -> Result<ColorGrid, IoError> {
        match self.payload {
            Payload::ColorGrid(g) => Ok(g),
            _ => Err(wrong("color_grid", &self)),
        }
    }

    pub fn into_params(self) -> Result<OcaToOcnParams, IoError> {
        match self.payload {
            Payload::OcaToOcnParams(p) => Ok(p),
            _ => Err(wrong("oca_to_ocn_params", &self)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::corpus;

    const VASS: &str = r#"{"kind":"vass","dimension":1,"states":["s"],"actions":["a"],
        "transitions":[{"src":"s","action":"a","dst":"s","effect":[-1]}]}"#;

    #[test]
    fn corpus_round_trips_byte_identically() {
        for (name, m) in corpus::all() {
            let f = InstanceFile::machine(Machine::Mcm(m)).named(name);
            let bytes = serialize(&f);
            let back = parse(&bytes).unwrap();
            assert_eq!(back, f);
            assert_eq!(serialize(&back), bytes);
        }
    }

    #[test]
    fn negative_dimension_points_at_the_field() {
        let bad = VASS.replace("\"dimension\":1", "\"dimension\":-1");
        assert_eq!(parse(bad.as_bytes()).unwrap_err().pointer, "/dimension");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let bad = VASS.replace("\"effect\":[-1]", "\"effect\":[-1],\"weight\":2");
        let e = parse(bad.as_bytes()).unwrap_err();
        assert_eq!(e.pointer, "/transitions/0/weight");
        assert!(e.message.contains("weight"), "{e}");
    }

    #[test]
    fn undeclared_names_are_located() {
        let bad = VASS.replace("\"dst\":\"s\"", "\"dst\":\"t\"");
        assert_eq!(parse(bad.as_bytes()).unwrap_err().pointer, "/transitions/0/dst");
    }

    #[test]
    fn unknown_kind_is_rejected() {
        let bad = VASS.replace("\"vass\"", "\"petri\"");
        assert_eq!(parse(bad.as_bytes()).unwrap_err().pointer, "/kind");
    }

    #[test]
    fn grid_round_trip() {
        let mut g = ColorGrid::new(vec!["p".into()], vec!["q".into(), "r".into()], 2, 3, crate::solvers::Bounds::new(4, 4, 8));
        g.set(0, 1, 2, 3, crate::coloring::Color::White);
        g.set(0, 0, 1, 0, crate::coloring::Color::Black);
        let f = InstanceFile::new(Payload::ColorGrid(g.clone()));
        assert_eq!(parse(&serialize(&f)).unwrap().into_grid().unwrap(), g);
    }

    #[test]
    fn upc_round_trip() {
        let u = Upc::from_fn(vec!["p".into()], vec!["q".into()], (3, 1, 5, 1, 1), |_, _, i, j| j >= i).unwrap();
        let f = InstanceFile::new(Payload::Upc(u.clone()));
        let back = parse(&serialize(&f)).unwrap().into_upc().unwrap();
        assert_eq!(back, u);
    }
}
