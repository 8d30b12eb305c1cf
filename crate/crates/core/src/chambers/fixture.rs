//! Versioned JSON wall-set fixtures.

use serde::{Deserialize, Serialize};

use super::cone::Cone;
use super::walls::{Wall, WallSet};
use crate::error::{Error, Result};
use crate::rational::{self, Q};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledRay {
    pub label: String,
    #[serde(with = "rational::serde_q_vec")]
    pub ray: Vec<Q>,
}

/// Affine section data for rank-3 plots, or plot axes for rank 2.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Section {
    /// The plane `functional·v = 1` (rank 3 only; empty means the sum of
    /// coordinates).
    #[serde(default, with = "rational::serde_q_vec", skip_serializing_if = "Vec::is_empty")]
    pub functional: Vec<Q>,
    #[serde(with = "rational::serde_q_vec")]
    pub x: Vec<Q>,
    #[serde(with = "rational::serde_q_vec")]
    pub y: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    #[serde(default = "default_version")]
    pub version: u32,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub name: String,
    pub surface: String,
    pub basis: Vec<String>,
    pub n: u32,
    #[serde(with = "rational::serde_q_mat")]
    pub bounding_cone: Vec<Vec<Q>>,
    pub walls: Vec<Wall>,
    /// Generators of a cone drawn shaded.
    #[serde(default, with = "rational::serde_q_mat", skip_serializing_if = "Vec::is_empty")]
    pub shaded: Vec<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<LabeledRay>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<Section>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
}

fn default_version() -> u32 {
    FORMAT_VERSION
}

const BUILTIN: &[(&str, &str)] = &[
    ("p2n3", include_str!("../../fixtures/p2n3.json")),
    ("f1n3", include_str!("../../fixtures/f1n3.json")),
    ("p2n12", include_str!("../../fixtures/p2n12.json")),
];

/// Names of the fixtures compiled into the library.
pub fn builtin_names() -> Vec<&'static str> {
    BUILTIN.iter().map(|(n, _)| *n).collect()
}

pub fn builtin_source(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn builtin(name: &str) -> Result<Fixture> {
    let src = builtin_source(name).ok_or_else(|| Error::Fixture(format!("no built-in fixture named {name:?}")))?;
    Fixture::parse(src)
}

impl Fixture {
    pub fn parse(json: &str) -> Result<Fixture> {
        let f: Fixture = serde_json::from_str(json).map_err(|e| Error::Fixture(e.to_string()))?;
        if f.version != FORMAT_VERSION {
            return Err(Error::Fixture(format!("unsupported fixture version {}", f.version)));
        }
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        let k = self.basis.len();
        let bad = |what: &str, len: usize| Error::Fixture(format!("{what} has length {len}, basis has {k} labels"));
        for r in &self.bounding_cone {
            if r.len() != k {
                return Err(bad("bounding cone ray", r.len()));
            }
        }
        for w in &self.walls {
            if w.functional.len() != k {
                return Err(bad(&format!("wall {:?}", w.label), w.functional.len()));
            }
            if rational::is_zero_vec(&w.functional) {
                return Err(Error::Fixture(format!("wall {:?} has a zero functional", w.label)));
            }
        }
        for r in &self.shaded {
            if r.len() != k {
                return Err(bad("shaded ray", r.len()));
            }
        }
        for p in &self.points {
            if p.ray.len() != k {
                return Err(bad(&format!("point {:?}", p.label), p.ray.len()));
            }
        }
        if self.bounding_cone.iter().any(|r| rational::is_zero_vec(r)) {
            return Err(Error::Fixture("bounding cone contains a zero ray".into()));
        }
        Ok(())
    }

    pub fn bounding(&self) -> Result<Cone> {
        if self.bounding_cone.is_empty() {
            Ok(Cone::zero(self.basis.len()))
        } else {
            Cone::from_generators(self.bounding_cone.clone())
        }
    }

    pub fn shaded_cone(&self) -> Result<Option<Cone>> {
        if self.shaded.is_empty() {
            Ok(None)
        } else {
            Cone::from_generators(self.shaded.clone()).map(Some)
        }
    }

    pub fn wall_set(&self) -> Result<WallSet> {
        WallSet::new(&self.surface, self.basis.clone(), self.n, self.bounding()?, self.walls.clone())
    }

    pub fn point(&self, label: &str) -> Option<&[Q]> {
        self.points.iter().find(|p| p.label == label).map(|p| p.ray.as_slice())
    }

    /// Fixture carrying only the data of `ws` (no plot decorations).
    pub fn from_wall_set(ws: &WallSet) -> Fixture {
        Fixture {
            version: FORMAT_VERSION,
            name: String::new(),
            surface: ws.surface.clone(),
            basis: ws.basis.clone(),
            n: ws.n,
            bounding_cone: ws.bounding_cone.generators(),
            walls: ws.walls.clone(),
            shaded: Vec::new(),
            points: Vec::new(),
            section: None,
            title: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixture serializes")
    }
}
