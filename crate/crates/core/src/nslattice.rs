//! Néron–Severi lattices of the surfaces we work with: the plane, Hirzebruch
//! surfaces, blowups of either at general points, and K3 surfaces of Picard
//! rank one.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chambers::Cone;
use crate::error::{check_len, Error, Result};
use crate::rational::{self, q, qr, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SurfaceKind {
    P2,
    Hirzebruch { r: u32 },
    Blowup { parent: Box<SurfaceKind>, k: u32 },
    K3 { deg: u32 },
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceKind::P2 => write!(f, "p2"),
            SurfaceKind::Hirzebruch { r } => write!(f, "fr:{r}"),
            SurfaceKind::Blowup { parent, k } => write!(f, "blowup:{parent}:{k}"),
            SurfaceKind::K3 { deg } => write!(f, "k3:{deg}"),
        }
    }
}

/// Answer of an effectivity test that may not be decidable from the data at
/// hand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tristate {
    Yes,
    No,
    Unknown,
}

/// Coordinates of a divisor class over the basis of a [`SurfaceLattice`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceClass {
    #[serde(with = "rational::serde_q_vec")]
    pub coeffs: Vec<Q>,
}

impl SurfaceClass {
    pub fn new(coeffs: Vec<Q>) -> Self {
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(rational::qv(coeffs))
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![Q::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(rational::is_integer)
    }

    pub fn scaled(&self, s: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        check_len(self.rank(), other.rank())?;
        Ok(Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect()))
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scaled(&-Q::one()))
    }

    /// Same coordinates followed by `extra` zeros.
    pub fn extended(&self, extra: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.extend(std::iter::repeat_n(Q::zero(), extra));
        Self::new(c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceLattice {
    labels: Vec<String>,
    gram: Vec<Vec<i64>>,
    canonical: SurfaceClass,
    chi_o: i64,
    eff_generators: Option<Vec<SurfaceClass>>,
    kind: SurfaceKind,
}

pub fn make_p2() -> SurfaceLattice {
    SurfaceLattice {
        labels: vec!["H".into()],
        gram: vec![vec![1]],
        canonical: SurfaceClass::from_ints(&[-3]),
        chi_o: 1,
        eff_generators: Some(vec![SurfaceClass::from_ints(&[1])]),
        kind: SurfaceKind::P2,
    }
}

/// The Hirzebruch surface `F_r` with basis `(E, F)`, where `E² = -r`.
pub fn make_hirzebruch(r: i64) -> Result<SurfaceLattice> {
    let r32 = u32::try_from(r).map_err(|_| Error::InvalidParameter(format!("Hirzebruch index must be >= 0, got {r}")))?;
    Ok(SurfaceLattice {
        labels: vec!["E".into(), "F".into()],
        gram: vec![vec![-r, 1], vec![1, 0]],
        canonical: SurfaceClass::from_ints(&[-2, -(r + 2)]),
        chi_o: 1,
        eff_generators: Some(vec![SurfaceClass::from_ints(&[1, 0]), SurfaceClass::from_ints(&[0, 1])]),
        kind: SurfaceKind::Hirzebruch { r: r32 },
    })
}

/// K3 surface of Picard rank one with polarization `L² = deg`.
pub fn make_k3(deg: i64) -> Result<SurfaceLattice> {
    if ![4, 6, 8].contains(&deg) {
        return Err(Error::InvalidParameter(format!(
            "K3 degree must be 4 (quartic), 6 (quadric∩cubic) or 8 (three quadrics), got {deg}"
        )));
    }
    Ok(SurfaceLattice {
        labels: vec!["L".into()],
        gram: vec![vec![deg]],
        canonical: SurfaceClass::from_ints(&[0]),
        chi_o: 2,
        eff_generators: Some(vec![SurfaceClass::from_ints(&[1])]),
        kind: SurfaceKind::K3 { deg: deg as u32 },
    })
}

/// Number of sections of `aE + bF` on `F_r`: pushing forward to `P¹` gives
/// `⊕_{i=0..a} O(b - i·r)`.
pub fn h0_hirzebruch(r: i64, a: i64, b: i64) -> Result<i64> {
    if a < 0 || r < 0 {
        return Err(Error::InvalidParameter(format!("h0_hirzebruch needs r, a >= 0 (r={r}, a={a})")));
    }
    Ok((0..=a).map(|i| (b - i * r + 1).max(0)).sum())
}

/// `h⁰(O(d))` on the plane.
pub fn h0_p2(d: i64) -> i64 {
    if d < 0 {
        0
    } else {
        (d + 1) * (d + 2) / 2
    }
}

/// Basis change for the roof `F_{r,r+1}`, the blowup of `F_r` at a point of
/// `E`. Column `j` expresses the `j`-th element of the `p₂`-side basis
/// `(p₂*E_{r+1}, p₂*F, f̃)` in the `p₁`-side basis `(p₁*E_r, p₁*F, e)`.
/// The entries do not depend on `r`; the Gram matrices they relate do.
pub fn roof_basis_change(_r: i64) -> [[i64; 3]; 3] {
    // p₂*E_{r+1} = p₁*E - e,  p₂*F = p₁*F,  f̃ = p₁*F - e
    [[1, 0, 0], [0, 1, 1], [-1, 0, -1]]
}

/// Whether the basis change carries the Gram matrix of `Blowup(F_r, 1)` onto
/// that of `Blowup(F_{r+1}, 1)`, i.e. `Mᵀ·G_r·M = G_{r+1}`.
pub fn roof_is_isometry(r: i64) -> Result<bool> {
    let lower = roof_lattice(r)?;
    let upper = roof_lattice(r + 1)?;
    let m = roof_basis_change(r);
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = 0i64;
            for a in 0..3 {
                for b in 0..3 {
                    acc += m[a][i] * lower.gram()[a][b] * m[b][j];
                }
            }
            if acc != upper.gram()[i][j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Blowup(F_r, 1)`, the roof lattice in the `p₁`-side basis.
pub fn roof_lattice(r: i64) -> Result<SurfaceLattice> {
    make_hirzebruch(r)?.blow_up(1)
}

impl SurfaceLattice {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn canonical(&self) -> &SurfaceClass {
        &self.canonical
    }

    pub fn chi_o(&self) -> i64 {
        self.chi_o
    }

    pub fn eff_generators(&self) -> Option<&[SurfaceClass]> {
        self.eff_generators.as_deref()
    }

    pub fn kind(&self) -> &SurfaceKind {
        &self.kind
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn class(&self, coeffs: &[i64]) -> Result<SurfaceClass> {
        check_len(self.rank(), coeffs.len())?;
        Ok(SurfaceClass::from_ints(coeffs))
    }

    /// The pullback of the line class, where one exists: `H` on the plane and
    /// its blowups, `E + rF` on `F_r`, `L` on a K3.
    pub fn hyperplane_class(&self) -> Option<SurfaceClass> {
        match &self.kind {
            SurfaceKind::P2 | SurfaceKind::K3 { .. } => Some(SurfaceClass::from_ints(&[1])),
            SurfaceKind::Hirzebruch { r } => Some(SurfaceClass::from_ints(&[1, *r as i64])),
            SurfaceKind::Blowup { .. } => {
                let root = self.root_kind();
                let base = match root {
                    SurfaceKind::P2 => vec![1],
                    SurfaceKind::Hirzebruch { r } => vec![1, *r as i64],
                    _ => return None,
                };
                let mut v = base;
                v.resize(self.rank(), 0);
                Some(SurfaceClass::from_ints(&v))
            }
        }
    }

    fn root_kind(&self) -> &SurfaceKind {
        let mut k = &self.kind;
        while let SurfaceKind::Blowup { parent, .. } = k {
            k = parent;
        }
        k
    }

    /// Blow up `k` general points. New exceptional curves are appended to the
    /// basis as `E{i}`, numbered after any existing ones.
    pub fn blow_up(&self, k: u32) -> Result<SurfaceLattice> {
        if k == 0 {
            return Err(Error::InvalidParameter("blow_up needs k >= 1".into()));
        }
        let existing = self
            .labels
            .iter()
            .filter(|l| l.len() > 1 && l.starts_with('E') && l[1..].chars().all(|c| c.is_ascii_digit()))
            .count();
        let old = self.rank();
        let new = old + k as usize;
        let mut labels = self.labels.clone();
        labels.extend((1..=k as usize).map(|i| format!("E{}", existing + i)));
        let mut gram = vec![vec![0i64; new]; new];
        for i in 0..old {
            gram[i][..old].copy_from_slice(&self.gram[i]);
        }
        for i in old..new {
            gram[i][i] = -1;
        }
        let mut canonical = self.canonical.extended(k as usize);
        for c in &mut canonical.coeffs[old..] {
            *c = Q::one();
        }
        Ok(SurfaceLattice {
            labels,
            gram,
            canonical,
            chi_o: self.chi_o,
            eff_generators: None,
            kind: SurfaceKind::Blowup { parent: Box::new(self.kind.clone()), k },
        })
    }

    pub fn pair(&self, c: &SurfaceClass, d: &SurfaceClass) -> Result<Q> {
        check_len(self.rank(), c.rank())?;
        check_len(self.rank(), d.rank())?;
        let mut acc = Q::zero();
        for (i, ci) in c.coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                let g = self.gram[i][j];
                if g != 0 {
                    acc += ci * dj * q(g);
                }
            }
        }
        Ok(acc)
    }

    /// Values of `c` against every basis element: the row `c·gram`.
    pub fn dual_values(&self, c: &SurfaceClass) -> Result<Vec<Q>> {
        check_len(self.rank(), c.rank())?;
        Ok((0..self.rank())
            .map(|j| c.coeffs.iter().enumerate().map(|(i, ci)| ci * q(self.gram[i][j])).sum())
            .collect())
    }

    /// Adjunction: `1 + (C² + C·K)/2`.
    pub fn arithmetic_genus(&self, c: &SurfaceClass) -> Result<Q> {
        let cc = self.pair(c, c)?;
        let ck = self.pair(c, &self.canonical)?;
        Ok(Q::one() + (cc + ck) * qr(1, 2))
    }

    /// Riemann–Roch: `χ(O) + (C² - C·K)/2`.
    pub fn chi(&self, c: &SurfaceClass) -> Result<Q> {
        let cc = self.pair(c, c)?;
        let ck = self.pair(c, &self.canonical)?;
        Ok(q(self.chi_o) + (cc - ck) * qr(1, 2))
    }

    /// `h⁰` for the surfaces where it is known in closed form; `None` on
    /// blowups and for non-integral classes.
    pub fn h0(&self, c: &SurfaceClass) -> Result<Option<i64>> {
        check_len(self.rank(), c.rank())?;
        if !c.is_integral() {
            return Ok(None);
        }
        let ints: Option<Vec<i64>> = c.coeffs.iter().map(rational::to_i64).collect();
        let Some(ints) = ints else { return Ok(None) };
        Ok(match &self.kind {
            SurfaceKind::P2 => Some(h0_p2(ints[0])),
            SurfaceKind::Hirzebruch { r } => {
                if ints[0] < 0 {
                    Some(0)
                } else {
                    Some(h0_hirzebruch(*r as i64, ints[0], ints[1])?)
                }
            }
            SurfaceKind::K3 { deg } => {
                let d = ints[0];
                Some(match d.cmp(&0) {
                    std::cmp::Ordering::Less => 0,
                    std::cmp::Ordering::Equal => 1,
                    // Kodaira vanishing: h⁰ = χ for an ample class.
                    std::cmp::Ordering::Greater => 2 + (*deg as i64) * d * d / 2,
                })
            }
            SurfaceKind::Blowup { .. } => None,
        })
    }

    /// Membership in the cone spanned by the known effective generators.
    pub fn effectivity(&self, c: &SurfaceClass) -> Result<Tristate> {
        check_len(self.rank(), c.rank())?;
        let Some(gens) = &self.eff_generators else {
            return Ok(Tristate::Unknown);
        };
        let cone = Cone::from_generators(gens.iter().map(|g| g.coeffs.clone()).collect())?;
        Ok(if cone.contains(&c.coeffs)? { Tristate::Yes } else { Tristate::No })
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.rank()).all(|i| (0..self.rank()).all(|j| self.gram[i][j] == self.gram[j][i]))
    }

    /// `(positive, negative, zero)` counts of the Gram form.
    pub fn signature(&self) -> (usize, usize, usize) {
        let g: Vec<Vec<Q>> = self.gram.iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect();
        signature(&g)
    }
}

/// Signature of a symmetric rational matrix by congruence diagonalization.
pub fn signature(m: &[Vec<Q>]) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(k, i);
                for row in &mut a {
                    row.swap(k, i);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // row_k += row_j then col_k += col_j, so a[k][k] becomes 2·a[k][j].
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for row in &mut a {
                    let v = row[j].clone();
                    row[k] += v;
                }
            } else {
                continue;
            }
        }
        let p = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for c in 0..n {
                let d = &f * &a[k][c];
                a[i][c] -= d;
            }
            for row in &mut a {
                let d = &f * &row[k];
                row[i] -= d;
            }
        }
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    (pos, neg, n - pos - neg)
}
