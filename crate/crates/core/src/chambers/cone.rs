//! Exact rational polyhedral cones via the double description method.
//!
//! A cone keeps both descriptions: extreme rays plus a lineality basis, and
//! facet inequalities plus equalities cutting out its linear span. Facets of
//! `cone(G)` are computed as extreme rays of the dual cone `{f : f·g >= 0}`,
//! so a single H-to-V routine serves both directions.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::{check_len, Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{self, dot, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    ambient_dim: usize,
    rays: Matrix,
    lineality: Matrix,
    facets: Matrix,
    equalities: Matrix,
}

/// Generators of `{x : ineqs·x >= 0, eqs·x = 0}` as (lineality basis,
/// extreme rays of the pointed part).
fn h_to_v(ineqs: &[Vec<Q>], eqs: &[Vec<Q>], dim: usize) -> (Matrix, Matrix) {
    let mut all: Matrix = ineqs.to_vec();
    all.extend_from_slice(eqs);
    let lineality = canonical_basis(&linalg::nullspace(&all, dim), dim);

    let mut restrict: Matrix = eqs.to_vec();
    restrict.extend(lineality.iter().cloned());
    let sub = linalg::nullspace(&restrict, dim);
    let w = sub.len();
    if w == 0 {
        return (lineality, Vec::new());
    }
    let rows: Matrix = ineqs
        .iter()
        .map(|a| sub.iter().map(|b| dot(a, b)).collect::<Vec<Q>>())
        .filter(|r| !rational::is_zero_vec(r))
        .collect();
    let rays_w = double_description(&rows, w);
    let mut rays: Matrix = rays_w
        .iter()
        .map(|y| {
            let mut x = vec![Q::zero(); dim];
            for (c, b) in y.iter().zip(&sub) {
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi += c * bi;
                }
            }
            rational::primitive(&x).expect("extreme ray is nonzero")
        })
        .collect();
    rays.sort();
    rays.dedup();
    (lineality, rays)
}

struct DdRay {
    v: Vec<Q>,
    tight: Vec<usize>,
}

/// Extreme rays of the pointed cone `{y ∈ Q^w : rows·y >= 0}`; `rows` must
/// have rank `w`.
fn double_description(rows: &[Vec<Q>], w: usize) -> Matrix {
    // Greedy choice of w independent rows for the initial simplicial cone.
    let mut basis_idx: Vec<usize> = Vec::new();
    let mut basis_rows: Matrix = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut trial = basis_rows.clone();
        trial.push(r.clone());
        if linalg::rank(&trial, w) == trial.len() {
            basis_rows = trial;
            basis_idx.push(i);
            if basis_rows.len() == w {
                break;
            }
        }
    }
    assert_eq!(basis_rows.len(), w, "double description needs a pointed cone");
    let inv = linalg::inverse(&basis_rows).expect("independent rows");
    let mut rays: Vec<DdRay> = (0..w)
        .map(|j| DdRay {
            v: inv.iter().map(|row| row[j].clone()).collect(),
            tight: basis_idx.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &i)| i).collect(),
        })
        .collect();

    for (i, a) in rows.iter().enumerate() {
        if basis_idx.contains(&i) {
            continue;
        }
        let vals: Vec<Q> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let mut next: Vec<DdRay> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common: Vec<usize> = rays[p].tight.iter().copied().filter(|t| rays[n].tight.contains(t)).collect();
                if w >= 2 {
                    let m: Matrix = common.iter().map(|&t| rows[t].clone()).collect();
                    if linalg::rank(&m, w) != w - 2 {
                        continue;
                    }
                }
                let v: Vec<Q> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(nv, pv)| &vals[p] * nv - &vals[n] * pv)
                    .collect();
                let mut tight = common;
                tight.push(i);
                next.push(DdRay { v, tight });
            }
        }
        let mut kept: Vec<DdRay> = Vec::new();
        for (k, mut r) in rays.into_iter().enumerate() {
            match vals[k].cmp(&Q::zero()) {
                Ordering::Greater => kept.push(r),
                Ordering::Equal => {
                    r.tight.push(i);
                    kept.push(r);
                }
                Ordering::Less => {}
            }
        }
        kept.extend(next);
        rays = kept;
    }
    rays.into_iter().map(|r| r.v).collect()
}

/// Row-reduced basis of a subspace, scaled to primitive integer rows.
fn canonical_basis(vectors: &[Vec<Q>], dim: usize) -> Matrix {
    let (red, _) = linalg::rref(vectors, dim);
    red.iter().map(|r| rational::primitive_line(r).expect("nonzero rref row")).collect()
}

impl Cone {
    /// Cone spanned by `gens`. Redundant generators are discarded; rays are
    /// stored primitive and sorted.
    pub fn from_generators(gens: Vec<Vec<Q>>) -> Result<Cone> {
        let Some(first) = gens.first() else {
            return Err(Error::InvalidParameter("cone needs at least one generator; use Cone::zero".into()));
        };
        let dim = first.len();
        for g in &gens {
            check_len(dim, g.len())?;
            if rational::is_zero_vec(g) {
                return Err(Error::ZeroRay);
            }
        }
        Ok(Self::build(dim, &gens))
    }

    pub fn zero(dim: usize) -> Cone {
        Self::build(dim, &[])
    }

    pub fn full(dim: usize) -> Cone {
        let mut gens = Vec::new();
        for i in 0..dim {
            for s in [1, -1] {
                let mut v = vec![Q::zero(); dim];
                v[i] = rational::q(s);
                gens.push(v);
            }
        }
        Self::build(dim, &gens)
    }

    /// Cone `{x : facets·x >= 0, equalities·x = 0}`.
    pub fn from_inequalities(dim: usize, facets: &[Vec<Q>], equalities: &[Vec<Q>]) -> Result<Cone> {
        for r in facets.iter().chain(equalities) {
            check_len(dim, r.len())?;
        }
        let (lin, rays) = h_to_v(facets, equalities, dim);
        let mut gens = rays;
        for l in lin {
            gens.push(l.iter().map(|x| -x).collect());
            gens.push(l);
        }
        Ok(Self::build(dim, &gens))
    }

    fn build(dim: usize, gens: &[Vec<Q>]) -> Cone {
        // Dual cone: its lineality is the annihilator of span(gens), its
        // extreme rays are the facet normals.
        let (equalities, facets) = h_to_v(gens, &[], dim);
        let (lineality, rays) = h_to_v(&facets, &equalities, dim);
        Cone { ambient_dim: dim, rays, lineality, facets, equalities }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Extreme rays (empty if the cone contains a line and has no pointed
    /// part beyond it).
    pub fn rays(&self) -> &[Vec<Q>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<Q>] {
        &self.lineality
    }

    /// Inward facet normals: `f·x >= 0` on the cone.
    pub fn facets(&self) -> &[Vec<Q>] {
        &self.facets
    }

    /// Equalities cutting out the linear span.
    pub fn equalities(&self) -> &[Vec<Q>] {
        &self.equalities
    }

    /// Rays together with both signs of each lineality vector.
    pub fn generators(&self) -> Matrix {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(l.iter().map(|x| -x).collect());
        }
        g
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equalities.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equalities.is_empty()
    }

    pub fn contains(&self, v: &[Q]) -> Result<bool> {
        check_len(self.ambient_dim, v.len())?;
        Ok(self.equalities.iter().all(|e| dot(e, v).is_zero())
            && self.facets.iter().all(|f| !dot(f, v).is_negative()))
    }

    /// Membership in the relative interior.
    pub fn contains_interior(&self, v: &[Q]) -> Result<bool> {
        check_len(self.ambient_dim, v.len())?;
        Ok(self.equalities.iter().all(|e| dot(e, v).is_zero()) && self.facets.iter().all(|f| dot(f, v).is_positive()))
    }

    /// Same set of points.
    pub fn equivalent(&self, other: &Cone) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.generators().iter().all(|g| other.contains(g).unwrap_or(false))
            && other.generators().iter().all(|g| self.contains(g).unwrap_or(false))
    }

    /// `{y : Σ y_j basis_j ∈ self}` in the coordinates of `basis`.
    pub fn intersect_subspace(&self, basis: &[Vec<Q>]) -> Result<Cone> {
        for b in basis {
            check_len(self.ambient_dim, b.len())?;
        }
        if linalg::rank(basis, self.ambient_dim) != basis.len() {
            return Err(Error::InvalidParameter("subspace basis is linearly dependent".into()));
        }
        let k = basis.len();
        let pull = |rows: &[Vec<Q>]| -> Matrix { rows.iter().map(|r| basis.iter().map(|b| dot(r, b)).collect()).collect() };
        Cone::from_inequalities(k, &pull(&self.facets), &pull(&self.equalities))
    }

    /// Image of the cone under `x ↦ m·x`.
    pub fn image(&self, m: &[Vec<Q>]) -> Result<Cone> {
        let out_dim = m.len();
        for row in m {
            check_len(self.ambient_dim, row.len())?;
        }
        let gens: Matrix = self.generators().iter().map(|g| linalg::mat_vec(m, g)).filter(|v| !rational::is_zero_vec(v)).collect();
        Ok(Self::build(out_dim, &gens))
    }
}

impl Default for Cone {
    fn default() -> Self {
        Cone::zero(0)
    }
}

/// Sign of `f·v` for each functional in `fs`.
pub(crate) fn signs(fs: &[Vec<Q>], v: &[Q]) -> Vec<Ordering> {
    fs.iter().map(|f| rational::sign(&dot(f, v))).collect()
}
