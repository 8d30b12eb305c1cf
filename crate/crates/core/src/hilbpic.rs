//! Divisor and curve classes on the Hilbert scheme `X^[n]`.
//!
//! `N¹(X^[n])` is spanned by the lifts `D[n]` of a basis of `N¹(X)` together
//! with the exceptional divisor `B` of the Hilbert–Chow morphism. Coordinates
//! are always stored as the surface coefficients followed by the
//! `B`-coefficient. Curves are kept only as linear functionals: their
//! pairings with each `D_i[n]` and with `B`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::linalg;
use crate::nslattice::{self, SurfaceClass, SurfaceLattice};
use crate::rational::{self, q, qr, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "DivJson", try_from = "DivJson")]
pub struct HilbDivClass {
    pub basis: Vec<String>,
    pub surface: SurfaceClass,
    pub b: Q,
    pub n: u32,
}

#[derive(Serialize, Deserialize)]
struct SurfacePartJson {
    basis: Vec<String>,
    #[serde(with = "rational::serde_q_vec")]
    coeffs: Vec<Q>,
}

#[derive(Serialize, Deserialize)]
struct DivJson {
    surface: SurfacePartJson,
    #[serde(with = "rational::serde_q")]
    b: Q,
    n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expr: Option<String>,
}

impl From<HilbDivClass> for DivJson {
    fn from(c: HilbDivClass) -> Self {
        let expr = Some(c.to_string());
        DivJson { surface: SurfacePartJson { basis: c.basis, coeffs: c.surface.coeffs }, b: c.b, n: c.n, expr }
    }
}

impl TryFrom<DivJson> for HilbDivClass {
    type Error = Error;

    fn try_from(j: DivJson) -> Result<Self> {
        HilbDivClass::new(j.surface.basis, SurfaceClass::new(j.surface.coeffs), j.b, j.n)
    }
}

impl HilbDivClass {
    pub fn new(basis: Vec<String>, surface: SurfaceClass, b: Q, n: u32) -> Result<Self> {
        check_len(basis.len(), surface.rank())?;
        if n == 0 {
            return Err(Error::InvalidParameter("number of points must be >= 1".into()));
        }
        Ok(Self { basis, surface, b, n })
    }

    /// The exceptional divisor `B` itself.
    pub fn exceptional(s: &SurfaceLattice, n: u32) -> Result<Self> {
        Self::new(s.labels().to_vec(), SurfaceClass::zero(s.rank()), Q::one(), n)
    }

    pub fn rank(&self) -> usize {
        self.basis.len() + 1
    }

    /// Surface coefficients followed by the `B`-coefficient.
    pub fn coords(&self) -> Vec<Q> {
        let mut v = self.surface.coeffs.clone();
        v.push(self.b.clone());
        v
    }

    pub fn from_coords(basis: Vec<String>, coords: &[Q], n: u32) -> Result<Self> {
        check_len(basis.len() + 1, coords.len())?;
        let k = basis.len();
        Self::new(basis, SurfaceClass::new(coords[..k].to_vec()), coords[k].clone(), n)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis || self.n != other.n {
            return Err(Error::LatticeMismatch(format!(
                "classes on different Hilbert schemes ({:?}, n={}) vs ({:?}, n={})",
                self.basis, self.n, other.basis, other.n
            )));
        }
        Ok(())
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self { surface: self.surface.plus(&other.surface)?, b: &self.b + &other.b, ..self.clone() })
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scaled(&-Q::one()))
    }

    pub fn scaled(&self, s: &Q) -> Self {
        Self { surface: self.surface.scaled(s), b: &self.b * s, ..self.clone() }
    }

    /// Membership in `Pic(X^[n])`, generated by the `D_i[n]` and `B/2`.
    pub fn is_pic_integral(&self) -> bool {
        self.surface.is_integral() && rational::is_integer(&(&self.b * q(2)))
    }

    /// Positive rescaling with `B`-coefficient `-1/2`; needs `b < 0`.
    pub fn normalized_half_b(&self) -> Result<Self> {
        if !self.b.is_negative() {
            return Err(Error::InvalidParameter(format!("class {self} has no negative B-coefficient")));
        }
        Ok(self.scaled(&(qr(-1, 2) / &self.b)))
    }
}

pub(crate) fn format_terms(labels: &[String], coeffs: &[Q]) -> String {
    let mut out = String::new();
    for (label, c) in labels.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if !a.is_one() {
            out.push_str(&a.to_string());
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for HilbDivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut labels = self.basis.clone();
        labels.push("B".into());
        f.write_str(&format_terms(&labels, &self.coords()))
    }
}

/// A curve class on `X^[n]`, stored as its pairings with the divisor basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbCurveClass {
    #[serde(with = "rational::serde_q_vec")]
    pub values: Vec<Q>,
    #[serde(with = "rational::serde_q")]
    pub b_value: Q,
    pub n: u32,
    pub label: String,
}

impl HilbCurveClass {
    pub fn pair(&self, d: &HilbDivClass) -> Result<Q> {
        check_len(self.values.len(), d.surface.rank())?;
        if self.n != d.n {
            return Err(Error::LatticeMismatch(format!("curve on n={} paired with divisor on n={}", self.n, d.n)));
        }
        Ok(rational::dot(&self.values, &d.surface.coeffs) + &self.b_value * &d.b)
    }

    /// Pairing values followed by the `B`-value: the functional in divisor
    /// coordinates.
    pub fn functional(&self) -> Vec<Q> {
        let mut v = self.values.clone();
        v.push(self.b_value.clone());
        v
    }
}

/// `D[n]`: subschemes whose support meets a fixed curve of class `D`.
pub fn lift_divisor(s: &SurfaceLattice, d: &SurfaceClass, n: u32) -> Result<HilbDivClass> {
    HilbDivClass::new(s.labels().to_vec(), d.clone(), Q::zero(), n)
}

/// `C_D[n]`: `n-1` fixed general points and an `n`-th point moving along a
/// curve of class `D`. The moving point stays away from the others, so the
/// curve misses `B`.
pub fn curve_from_divisor(s: &SurfaceLattice, d0: &SurfaceClass, n: u32) -> Result<HilbCurveClass> {
    Ok(HilbCurveClass { values: s.dual_values(d0)?, b_value: Q::zero(), n, label: "C_D".into() })
}

/// Fiber of the Hilbert–Chow morphism over a general point of the diagonal.
/// Its `B`-value `-2` is the one forced by `γ₂·Sev(n) = 5` for a class with
/// `B`-coefficient `-5/2`.
pub fn gamma2(s: &SurfaceLattice, n: u32) -> Result<HilbCurveClass> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("gamma2 needs n >= 2, got {n}")));
    }
    Ok(HilbCurveClass { values: vec![Q::zero(); s.rank()], b_value: q(-2), n, label: "gamma2".into() })
}

pub fn curve_from_pairings(values: Vec<Q>, b_value: Q, n: u32, label: &str) -> HilbCurveClass {
    HilbCurveClass { values, b_value, n, label: label.into() }
}

/// Whether `target` is `source` blown up at points: `source`'s basis and form
/// come first, followed by pairwise orthogonal `(-1)`-classes `E_i` with
/// `K_target = π*K_source + ΣE_i`.
pub fn is_blowup_of(target: &SurfaceLattice, source: &SurfaceLattice) -> bool {
    let (m, k) = (source.rank(), target.rank());
    if k <= m || target.labels()[..m] != *source.labels() {
        return false;
    }
    let g = target.gram();
    for i in 0..k {
        for j in 0..k {
            let expected = if i < m && j < m {
                source.gram()[i][j]
            } else if i == j {
                -1
            } else {
                0
            };
            if g[i][j] != expected {
                return false;
            }
        }
    }
    let kt = &target.canonical().coeffs;
    kt[..m] == source.canonical().coeffs[..] && kt[m..].iter().all(One::is_one)
}

/// `F*` for the rational contraction induced by a blowup `target → source`.
pub fn pullback_blowup_hilb(class: &HilbDivClass, source: &SurfaceLattice, target: &SurfaceLattice) -> Result<HilbDivClass> {
    if class.basis != source.labels() {
        return Err(Error::LatticeMismatch(format!("class basis {:?} is not the source basis {:?}", class.basis, source.labels())));
    }
    if !is_blowup_of(target, source) {
        return Err(Error::LatticeMismatch(format!("{} is not a blowup of {}", target.kind(), source.kind())));
    }
    let extra = target.rank() - source.rank();
    HilbDivClass::new(target.labels().to_vec(), class.surface.extended(extra), class.b.clone(), class.n)
}

/// Pushforward along the blowup `source → target`: exceptional coordinates
/// are dropped.
pub fn pushforward_blowup_hilb(class: &HilbDivClass, source: &SurfaceLattice, target: &SurfaceLattice) -> Result<HilbDivClass> {
    if class.basis != source.labels() {
        return Err(Error::LatticeMismatch(format!("class basis {:?} is not the source basis {:?}", class.basis, source.labels())));
    }
    if !is_blowup_of(source, target) {
        return Err(Error::LatticeMismatch(format!("{} is not a blowup of {}", source.kind(), target.kind())));
    }
    let m = target.rank();
    HilbDivClass::new(target.labels().to_vec(), SurfaceClass::new(class.surface.coeffs[..m].to_vec()), class.b.clone(), class.n)
}

fn roof_matrix(r: i64) -> Vec<Vec<Q>> {
    nslattice::roof_basis_change(r).iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect()
}

fn change_roof_basis(class: &HilbDivClass, m: &[Vec<Q>], target: &SurfaceLattice) -> Result<HilbDivClass> {
    let surface = SurfaceClass::new(linalg::mat_vec(m, &class.surface.coeffs));
    HilbDivClass::new(target.labels().to_vec(), surface, class.b.clone(), class.n)
}

fn check_hirzebruch_class(class: &HilbDivClass) -> Result<()> {
    if class.basis != ["E", "F"] {
        return Err(Error::LatticeMismatch(format!("expected a class on a Hirzebruch surface, got basis {:?}", class.basis)));
    }
    Ok(())
}

/// `p₂∗ ∘ p₁*` through the roof `F_{r,r+1}`: a class on `F_r^[n]` to one on
/// `F_{r+1}^[n]`.
pub fn transport_up(class: &HilbDivClass, r: i64) -> Result<HilbDivClass> {
    check_hirzebruch_class(class)?;
    let lower = nslattice::make_hirzebruch(r)?;
    let upper = nslattice::make_hirzebruch(r + 1)?;
    let roof_lower = nslattice::roof_lattice(r)?;
    let roof_upper = upper.blow_up(1)?;
    let on_roof = pullback_blowup_hilb(class, &lower, &roof_lower)?;
    let to_upper_basis = linalg::inverse(&roof_matrix(r)).expect("roof basis change is unimodular");
    let on_roof = change_roof_basis(&on_roof, &to_upper_basis, &roof_upper)?;
    pushforward_blowup_hilb(&on_roof, &roof_upper, &upper)
}

/// `p₁∗ ∘ p₂*` through the roof: a class on `F_{r+1}^[n]` to one on
/// `F_r^[n]`.
pub fn transport_down(class: &HilbDivClass, r: i64) -> Result<HilbDivClass> {
    check_hirzebruch_class(class)?;
    let lower = nslattice::make_hirzebruch(r)?;
    let upper = nslattice::make_hirzebruch(r + 1)?;
    let roof_lower = nslattice::roof_lattice(r)?;
    let roof_upper = upper.blow_up(1)?;
    let on_roof = pullback_blowup_hilb(class, &upper, &roof_upper)?;
    let on_roof = change_roof_basis(&on_roof, &roof_matrix(r), &roof_lower)?;
    pushforward_blowup_hilb(&on_roof, &roof_lower, &lower)
}

/// Pull a functional on `N¹(F_{r+1}^[n])` back along [`transport_up`],
/// giving the induced functional on `N¹(F_r^[n])`.
pub fn transport_functional_down(functional: &[Q], r: i64, n: u32) -> Result<Vec<Q>> {
    check_len(3, functional.len())?;
    let basis = vec!["E".to_string(), "F".to_string()];
    (0..3)
        .map(|i| {
            let mut e = vec![Q::zero(); 3];
            e[i] = Q::one();
            let img = transport_up(&HilbDivClass::from_coords(basis.clone(), &e, n)?, r)?;
            Ok(rational::dot(functional, &img.coords()))
        })
        .collect()
}

/// Write `λD = J + t·H` where `λ` matches the `B`-coefficients of `D` and
/// `J`; returns `t`.
pub fn slope_decompose(d: &HilbDivClass, j: &HilbDivClass, h: &HilbDivClass) -> Result<Q> {
    d.check_compatible(j)?;
    d.check_compatible(h)?;
    if d.b.is_zero() || j.b.is_zero() {
        return Err(Error::InvalidParameter("slope_decompose needs nonzero B-coefficients in D and J".into()));
    }
    if !h.b.is_zero() {
        return Err(Error::InvalidParameter("slope_decompose needs H with zero B-coefficient".into()));
    }
    let diff = d.scaled(&(&j.b / &d.b)).minus(j)?;
    linalg::coordinates(std::slice::from_ref(&h.surface.coeffs), &diff.surface.coeffs)
        .map(|t| t[0].clone())
        .ok_or_else(|| Error::InvalidParameter(format!("{diff} is not a multiple of {h}")))
}

/// `(h, e)` with `aE + bF = h·H + e·E` on `F_r`, `H = E + rF`, `r >= 1`.
pub fn hirzebruch_he_coords(class: &HilbDivClass, r: i64) -> Result<(Q, Q)> {
    check_hirzebruch_class(class)?;
    if r < 1 {
        return Err(Error::InvalidParameter("H and E only span N¹(F_r) for r >= 1".into()));
    }
    let (a, b) = (&class.surface.coeffs[0], &class.surface.coeffs[1]);
    let h = b / q(r);
    let e = a - &h;
    Ok((h, e))
}
