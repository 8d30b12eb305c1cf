use std::cmp::Ordering;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::cone::{signs, Cone};
use crate::error::{check_len, Error, Result};
use crate::hilbpic::{self, HilbDivClass};
use crate::rational::{self, dot, Q};

/// A hyperplane through the origin of `N¹`, given by a functional (the class
/// of a curve, read as a covector). Functionals are kept primitive with
/// positive first nonzero entry, so two walls are equal iff their
/// hyperplanes are.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wall {
    #[serde(with = "rational::serde_q_vec")]
    pub functional: Vec<Q>,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cite: Option<String>,
    /// Free-text base-locus annotation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side_data: Option<String>,
    /// Labels of walls merged into this one.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
}

pub const TAG_UNVERIFIED: &str = "unverified-wall-hood";

impl Wall {
    pub fn new(functional: Vec<Q>, label: &str) -> Result<Wall> {
        let functional = rational::primitive_line(&functional)
            .ok_or_else(|| Error::InvalidParameter(format!("wall {label:?} has a zero functional")))?;
        Ok(Wall { functional, label: label.into(), cite: None, side_data: None, aliases: Vec::new(), tags: Vec::new() })
    }

    pub fn with_cite(mut self, cite: &str) -> Wall {
        self.cite = Some(cite.into());
        self
    }

    fn normalized(mut self) -> Result<Wall> {
        self.functional = rational::primitive_line(&self.functional)
            .ok_or_else(|| Error::InvalidParameter(format!("wall {:?} has a zero functional", self.label)))?;
        Ok(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WallStatus {
    /// Takes both signs on the bounding cone, so it meets its interior.
    Crossing,
    /// Meets the bounding cone only along its boundary (or not at all).
    BoundaryOnly,
    /// Vanishes on the whole bounding cone.
    ContainsCone,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallSet {
    /// Surface spec string, e.g. `p2` or `fr:1`.
    pub surface: String,
    /// Coordinate labels, ending with `B` for a full `N¹(X^[n])`.
    pub basis: Vec<String>,
    pub n: u32,
    pub bounding_cone: Cone,
    pub walls: Vec<Wall>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub walls: WallSet,
    /// Walls whose functional vanishes on the whole subspace.
    pub dropped: Vec<Wall>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Location {
    /// Sign of each wall functional at the class, in wall order.
    pub signs: Vec<i8>,
    /// Sign vector as a string over `+`, `-`, `0`; equal ids mean the same
    /// chamber.
    pub chamber: String,
    pub on_walls: Vec<String>,
}

impl WallSet {
    pub fn new(surface: &str, basis: Vec<String>, n: u32, bounding_cone: Cone, walls: Vec<Wall>) -> Result<WallSet> {
        check_len(basis.len(), bounding_cone.ambient_dim())?;
        let walls = walls
            .into_iter()
            .map(|w| {
                check_len(basis.len(), w.functional.len())?;
                w.normalized()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WallSet { surface: surface.into(), basis, n, bounding_cone, walls })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn wall_status(&self, wall: &Wall) -> WallStatus {
        let vals: Vec<Ordering> = self.bounding_cone.generators().iter().map(|g| rational::sign(&dot(&wall.functional, g))).collect();
        let pos = vals.contains(&Ordering::Greater);
        let neg = vals.contains(&Ordering::Less);
        match (pos, neg) {
            (true, true) => WallStatus::Crossing,
            (false, false) => WallStatus::ContainsCone,
            _ => WallStatus::BoundaryOnly,
        }
    }

    /// Restrict to the subspace spanned by `sub_basis` (vectors in this set's
    /// coordinates), re-expressed in the coordinates of `sub_basis`.
    pub fn restrict_walls(&self, sub_basis: &[Vec<Q>], labels: Vec<String>) -> Result<Restriction> {
        check_len(sub_basis.len(), labels.len())?;
        let bounding = self.bounding_cone.intersect_subspace(sub_basis)?;
        let mut walls: Vec<Wall> = Vec::new();
        let mut dropped = Vec::new();
        for w in &self.walls {
            let f: Vec<Q> = sub_basis.iter().map(|b| dot(&w.functional, b)).collect();
            let Some(f) = rational::primitive_line(&f) else {
                dropped.push(w.clone());
                continue;
            };
            if let Some(existing) = walls.iter_mut().find(|x| x.functional == f) {
                existing.aliases.push(w.label.clone());
                continue;
            }
            walls.push(Wall { functional: f, aliases: Vec::new(), ..w.clone() });
        }
        Ok(Restriction { walls: WallSet { surface: self.surface.clone(), basis: labels, n: self.n, bounding_cone: bounding, walls }, dropped })
    }

    /// Same hyperplanes and the same bounding cone; labels are ignored.
    pub fn same_walls(&self, other: &WallSet) -> bool {
        let mut a: Vec<&Vec<Q>> = self.walls.iter().map(|w| &w.functional).collect();
        let mut b: Vec<&Vec<Q>> = other.walls.iter().map(|w| &w.functional).collect();
        a.sort();
        a.dedup();
        b.sort();
        b.dedup();
        a == b && self.bounding_cone.equivalent(&other.bounding_cone)
    }

    pub fn locate(&self, class: &[Q]) -> Result<Location> {
        check_len(self.rank(), class.len())?;
        if !self.bounding_cone.contains(class)? {
            return Err(Error::OutsideCone);
        }
        let fs: Vec<Vec<Q>> = self.walls.iter().map(|w| w.functional.clone()).collect();
        let signs: Vec<i8> = signs(&fs, class)
            .into_iter()
            .map(|o| match o {
                Ordering::Less => -1,
                Ordering::Equal => 0,
                Ordering::Greater => 1,
            })
            .collect();
        let chamber = signs.iter().map(|s| match s { -1 => '-', 0 => '0', _ => '+' }).collect();
        let on_walls = self.walls.iter().zip(&signs).filter(|(_, s)| **s == 0).map(|(w, _)| w.label.clone()).collect();
        Ok(Location { signs, chamber, on_walls })
    }
}

/// Carry a wall set on `N¹(F_{r+1}^[n])` (basis `E, F, B`) down to
/// `N¹(F_r^[n])`: functionals are pulled back along the roof transport, and
/// the bounding cone is replaced by its image under the downward transport.
/// Whether each hyperplane is really a wall is not decided here; every
/// transported wall is tagged accordingly.
pub fn transport_wallset_down(ws: &WallSet) -> Result<WallSet> {
    let upper: i64 = ws
        .surface
        .strip_prefix("fr:")
        .and_then(|s| s.parse().ok())
        .filter(|&k: &i64| k >= 1)
        .ok_or_else(|| Error::InvalidParameter(format!("transport needs a wall set on F_r with r >= 1, got {:?}", ws.surface)))?;
    if ws.basis != ["E", "F", "B"] {
        return Err(Error::InvalidParameter(format!("transport needs basis E,F,B, got {:?}", ws.basis)));
    }
    let r = upper - 1;
    let surface_basis = vec!["E".to_string(), "F".to_string()];
    let mut down = vec![vec![Q::zero(); 3]; 3];
    for j in 0..3 {
        let mut e = vec![Q::zero(); 3];
        e[j] = rational::q(1);
        let img = hilbpic::transport_down(&HilbDivClass::from_coords(surface_basis.clone(), &e, ws.n)?, r)?.coords();
        for i in 0..3 {
            down[i][j] = img[i].clone();
        }
    }
    let bounding = ws.bounding_cone.image(&down)?;
    let walls = ws
        .walls
        .iter()
        .map(|w| {
            let f = hilbpic::transport_functional_down(&w.functional, r, ws.n)?;
            let mut t = Wall { functional: f, ..w.clone() }.normalized()?;
            if !t.tags.iter().any(|x| x == TAG_UNVERIFIED) {
                t.tags.push(TAG_UNVERIFIED.into());
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    WallSet::new(&format!("fr:{r}"), ws.basis.clone(), ws.n, bounding, walls)
}
