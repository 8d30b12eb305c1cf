//! Severi divisor classes on Hilbert schemes of points and the solvers for
//! the numerical conditions under which they are divisors.
//!
//! For a curve class `C` on a regular surface `X` with `dim |C| = 3n - 1`,
//! the closure of the locus of node sets of `n`-nodal curves in `|C|` has
//! class `(K_X + 3C)[n] - 5/2·B`. Preconditions that fail are reported as
//! flags on the result, never as errors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hilbpic::{self, HilbDivClass};
use crate::nslattice::{self, make_hirzebruch, make_k3, make_p2, SurfaceClass, SurfaceKind, SurfaceLattice, Tristate};
use crate::rational::{self, q, qr, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flag {
    /// An incomplete linear system was handled with `h⁰ = 3n + codim`.
    EqSevPlusOne,
    DimensionEquationFail,
    H0Ne3n,
    GenusBoundFail,
    K3cNotEffective,
    K3cEffectivityUnknown,
    ExpectedDimFail,
    BelowTregerDegree,
    TregerException,
    K3ExtraSolution,
}

impl Flag {
    pub fn code(self) -> &'static str {
        match self {
            Flag::EqSevPlusOne => "EQ_SEV_PLUS_ONE",
            Flag::DimensionEquationFail => "DIMENSION_EQUATION_FAIL",
            Flag::H0Ne3n => "H0_NE_3N",
            Flag::GenusBoundFail => "GENUS_BOUND_FAIL",
            Flag::K3cNotEffective => "K3C_NOT_EFFECTIVE",
            Flag::K3cEffectivityUnknown => "K3C_EFFECTIVITY_UNKNOWN",
            Flag::ExpectedDimFail => "EXPECTED_DIM_FAIL",
            Flag::BelowTregerDegree => "BELOW_TREGER_DEGREE",
            Flag::TregerException => "TREGER_EXCEPTION",
            Flag::K3ExtraSolution => "K3_EXTRA_SOLUTION",
        }
    }

    pub fn message(self) -> &'static str {
        match self {
            Flag::EqSevPlusOne => {
                "incomplete system: dimension checked as h0 = 3n + codim; the variant h0 = 3n + codim + 1 does not hold"
            }
            Flag::DimensionEquationFail => "h0 does not equal 3n + codim, so the Severi locus is not expected to be a divisor",
            Flag::H0Ne3n => "h0 of the curve class differs from 3n although chi = 3n",
            Flag::GenusBoundFail => "more nodes than the arithmetic genus allows",
            Flag::K3cNotEffective => "K + 3C is not effective",
            Flag::K3cEffectivityUnknown => "effectivity of K + 3C cannot be decided on this surface",
            Flag::ExpectedDimFail => "b < a·r, outside the range where the Severi variety has expected dimension",
            Flag::BelowTregerDegree => "degree below 7: birationality of the forgetful map is not known",
            Flag::TregerException => "(d, n) = (6, 9) is the known exception to birationality",
            Flag::K3ExtraSolution => "solves the dimension equation but is not among the claimed Severi divisors",
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl Serialize for Flag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Pass,
    Fail,
    NotApplicable,
}

impl From<bool> for Check {
    fn from(ok: bool) -> Check {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }
}

/// `value == expected`, where `value` is `h0` or `chi` of the curve class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionCheck {
    pub quantity: &'static str,
    #[serde(with = "rational::serde_q")]
    pub value: Q,
    pub expected: i64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusCheck {
    pub n: u32,
    #[serde(with = "rational::serde_q")]
    pub p_a: Q,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeveriChecks {
    pub dimension_equation: DimensionCheck,
    pub k3c_effective: Tristate,
    pub genus_bound: GenusCheck,
    pub expected_dim_condition: Check,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeveriResult {
    pub surface: String,
    #[serde(rename = "class")]
    pub cls: HilbDivClass,
    /// Positive multiple with `B`-coefficient `-5/2` (subcollection classes).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalized: Option<HilbDivClass>,
    pub checks: SeveriChecks,
    pub flags: Vec<Flag>,
    pub notes: Vec<String>,
}

impl SeveriResult {
    fn flag(&mut self, f: Flag) {
        if !self.flags.contains(&f) {
            self.flags.push(f);
            self.notes.push(f.message().to_string());
        }
    }

    pub fn has_flag(&self, f: Flag) -> bool {
        self.flags.contains(&f)
    }
}

/// Everything that determines a Severi class request.
#[derive(Debug, Clone)]
pub struct SeveriInput {
    pub surface: SurfaceLattice,
    pub curve: SurfaceClass,
    pub n: u32,
    /// Codimension of the linear subsystem.
    pub codim: u32,
    /// Total number of points for the subcollection variant.
    pub m: Option<u32>,
    /// `h⁰(C)` when the surface does not determine it.
    pub h0: Option<i64>,
}

impl SeveriInput {
    pub fn new(surface: SurfaceLattice, curve: SurfaceClass, n: u32) -> SeveriInput {
        SeveriInput { surface, curve, n, codim: 0, m: None, h0: None }
    }
}

fn half_b() -> Q {
    qr(-5, 2)
}

fn core(s: &SurfaceLattice, c: &SurfaceClass, n: u32, codim: u32, h0: Option<i64>) -> Result<SeveriResult> {
    if n == 0 {
        return Err(Error::InvalidParameter("number of nodes must be >= 1".into()));
    }
    let h0 = match h0 {
        Some(h) => h,
        None => s.h0(c)?.ok_or(Error::H0Unavailable)?,
    };
    let k3c = s.canonical().plus(&c.scaled(&q(3)))?;
    let cls = hilbpic::lift_divisor(s, &k3c, n)?.plus(&HilbDivClass::exceptional(s, n)?.scaled(&half_b()))?;
    let expected = 3 * n as i64 + codim as i64;
    let dim_ok = h0 == expected;
    let p_a = s.arithmetic_genus(c)?;
    let genus_ok = q(n as i64) <= p_a;
    let k3c_eff = s.effectivity(&k3c)?;
    let mut res = SeveriResult {
        surface: s.kind().to_string(),
        cls,
        normalized: None,
        checks: SeveriChecks {
            dimension_equation: DimensionCheck { quantity: "h0", value: q(h0), expected, pass: dim_ok },
            k3c_effective: k3c_eff,
            genus_bound: GenusCheck { n, p_a, pass: genus_ok },
            expected_dim_condition: Check::NotApplicable,
        },
        flags: Vec::new(),
        notes: Vec::new(),
    };
    if codim > 0 {
        res.flag(Flag::EqSevPlusOne);
    }
    if !dim_ok {
        res.flag(Flag::DimensionEquationFail);
    }
    if !genus_ok {
        res.flag(Flag::GenusBoundFail);
    }
    match k3c_eff {
        Tristate::Yes => {}
        Tristate::No => res.flag(Flag::K3cNotEffective),
        Tristate::Unknown => res.flag(Flag::K3cEffectivityUnknown),
    }
    Ok(res)
}

/// `(K_X + 3C)[n] - 5/2·B` with its precondition report. `h0` overrides the
/// section count the surface would give.
pub fn severi_class_general(s: &SurfaceLattice, c: &SurfaceClass, n: u32, h0: Option<i64>) -> Result<SeveriResult> {
    core(s, c, n, 0, h0)
}

/// `(3d - 3)H - 5/2·B` on `P^2[n]`; `codim` is the codimension of the
/// linear system of degree-`d` curves used.
pub fn severi_class_p2(d: i64, n: u32, codim: u32) -> Result<SeveriResult> {
    if d < 1 {
        return Err(Error::InvalidParameter(format!("degree must be >= 1, got {d}")));
    }
    let s = make_p2();
    let mut res = core(&s, &SurfaceClass::from_ints(&[d]), n, codim, Some(nslattice::h0_p2(d)))?;
    if d < 7 {
        res.flag(Flag::BelowTregerDegree);
    }
    if (d, n) == (6, 9) {
        res.flag(Flag::TregerException);
    }
    Ok(res)
}

fn binom(a: i64, b: i64) -> BigInt {
    if b < 0 || a < b {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

/// Class on `P^2[m]` of the locus of `m`-point sets containing the node set
/// of an `n`-nodal degree-`d` curve from a codimension-`l` system:
/// `C(m-1,n-1)(3d-3)H - C(m-2,n-2)·5/2·B`.
pub fn severi_class_subcollection(d: i64, n: u32, m: u32, l: u32) -> Result<SeveriResult> {
    if m < n {
        return Err(Error::InvalidParameter(format!("subcollection needs m >= n, got m={m}, n={n}")));
    }
    if n < 2 {
        return Err(Error::InvalidParameter("subcollection needs n >= 2".into()));
    }
    let mut res = severi_class_p2(d, n, l)?;
    let (mi, ni) = (m as i64, n as i64);
    let h = Q::from_integer(binom(mi - 1, ni - 1)) * q(3 * d - 3);
    let b = Q::from_integer(binom(mi - 2, ni - 2)) * half_b();
    let basis = vec!["H".to_string()];
    res.cls = HilbDivClass::new(basis.clone(), SurfaceClass::new(vec![h]), b, m)?;
    let ray_h = qr(mi - 1, ni - 1) * q(3 * d - 3);
    res.normalized = Some(HilbDivClass::new(basis, SurfaceClass::new(vec![ray_h]), half_b(), m)?);
    Ok(res)
}

/// `(3a-2)E + (3b-r-2)F - 5/2·B` on `F_r^[n]` for the curve class `aE + bF`.
/// The dimension check is `chi(aE + bF) = 3n`; `h0 != 3n` is flagged
/// separately.
pub fn severi_class_hirzebruch(r: i64, a: i64, b: i64, n: u32) -> Result<SeveriResult> {
    if a < 0 || b < 0 {
        return Err(Error::InvalidParameter(format!("need a, b >= 0, got ({a}, {b})")));
    }
    let s = make_hirzebruch(r)?;
    let c = SurfaceClass::from_ints(&[a, b]);
    let h0 = nslattice::h0_hirzebruch(r, a, b)?;
    let mut res = core(&s, &c, n, 0, Some(h0))?;
    res.flags.retain(|f| *f != Flag::DimensionEquationFail);
    res.notes = res.flags.iter().map(|f| f.message().to_string()).collect();
    let chi = s.chi(&c)?;
    let expected = 3 * n as i64;
    let chi_ok = chi == q(expected);
    res.checks.dimension_equation = DimensionCheck { quantity: "chi", value: chi, expected, pass: chi_ok };
    if !chi_ok {
        res.flag(Flag::DimensionEquationFail);
    }
    if h0 != expected {
        res.flag(Flag::H0Ne3n);
    }
    let exp_ok = b >= a * r;
    res.checks.expected_dim_condition = exp_ok.into();
    if !exp_ok {
        res.flag(Flag::ExpectedDimFail);
    }
    Ok(res)
}

fn integral_coeffs(c: &SurfaceClass) -> Option<Vec<i64>> {
    c.coeffs.iter().map(rational::to_i64).collect()
}

/// Dispatch to the most specific formula for the input.
pub fn severi_class(input: &SeveriInput) -> Result<SeveriResult> {
    let s = &input.surface;
    if let Some(m) = input.m {
        let d = match (s.kind(), integral_coeffs(&input.curve)) {
            (SurfaceKind::P2, Some(v)) => v[0],
            _ => return Err(Error::InvalidParameter("the subcollection variant needs an integral class on p2".into())),
        };
        return severi_class_subcollection(d, input.n, m, input.codim);
    }
    match (s.kind(), integral_coeffs(&input.curve), input.h0) {
        (SurfaceKind::P2, Some(v), None) if v[0] >= 1 => severi_class_p2(v[0], input.n, input.codim),
        (SurfaceKind::Hirzebruch { r }, Some(v), None) if input.codim == 0 && v[0] >= 0 && v[1] >= 0 => {
            severi_class_hirzebruch(*r as i64, v[0], v[1], input.n)
        }
        _ => core(s, &input.curve, input.n, input.codim, input.h0),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct P2Solution {
    pub d: i64,
    pub n: i64,
    pub flags: Vec<Flag>,
}

fn p2_solution(d: i64, n: i64) -> P2Solution {
    let mut flags = Vec::new();
    if d < 7 {
        flags.push(Flag::BelowTregerDegree);
    }
    if (d, n) == (6, 9) {
        flags.push(Flag::TregerException);
    }
    P2Solution { d, n, flags }
}

/// All `d >= 1` with `C(d+2, 2) = 3n`.
pub fn enumerate_p2(n: i64) -> Vec<P2Solution> {
    (1..).take_while(|&d| nslattice::h0_p2(d) <= 3 * n).filter(|&d| nslattice::h0_p2(d) == 3 * n).map(|d| p2_solution(d, n)).collect()
}

pub fn enumerate_p2_by_d(d: i64) -> Option<i64> {
    let h = nslattice::h0_p2(d);
    (d >= 1 && h % 3 == 0).then_some(h / 3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    /// `chi(aE + bF) = 3n`.
    Chi,
    /// `h0(aE + bF) = 3n`.
    H0Exact,
    /// `n <= p_a(aE + bF)`.
    Genus,
    /// `b >= a·r`.
    ExpectedDim,
    /// `K + 3C` effective.
    K3cEffective,
    /// `a > 0` and `b > a·r`.
    Ample,
}

impl Filter {
    pub const ALL: [Filter; 6] = [Filter::Chi, Filter::H0Exact, Filter::Genus, Filter::ExpectedDim, Filter::K3cEffective, Filter::Ample];

    pub fn name(self) -> &'static str {
        match self {
            Filter::Chi => "chi",
            Filter::H0Exact => "h0_exact",
            Filter::Genus => "genus",
            Filter::ExpectedDim => "expected_dim",
            Filter::K3cEffective => "k3c_effective",
            Filter::Ample => "ample",
        }
    }
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Filter> {
        Filter::ALL
            .into_iter()
            .find(|f| f.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown filter {s:?}; expected one of chi, h0_exact, genus, expected_dim, k3c_effective, ample")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HirzebruchCandidate {
    pub a: i64,
    pub b: i64,
    pub verdicts: BTreeMap<Filter, bool>,
}

/// All `(a, b)` with `a, b >= 0` and `chi(aE + bF) = 3n` on `F_r` that pass
/// every filter in `filters`, each annotated with the verdict of every
/// filter. Writing the equation as `(a+1)(2b + 2 - ra) = 6n` shows `a + 1`
/// divides `6n`.
pub fn enumerate_hirzebruch(r: i64, n: u32, filters: &[Filter]) -> Result<Vec<HirzebruchCandidate>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    if r < 0 {
        return Err(Error::InvalidParameter(format!("Hirzebruch index must be >= 0, got {r}")));
    }
    let six_n = 6 * n as i64;
    let mut out = Vec::new();
    for a1 in (1..=six_n).filter(|a1| six_n % a1 == 0) {
        let a = a1 - 1;
        let twice = six_n / a1 + r * a - 2;
        if twice < 0 || twice % 2 != 0 {
            continue;
        }
        let b = twice / 2;
        let p_a = (a - 1) * (2 * b - a * r - 2) / 2;
        let mut verdicts = BTreeMap::new();
        verdicts.insert(Filter::Chi, true);
        verdicts.insert(Filter::H0Exact, nslattice::h0_hirzebruch(r, a, b)? == 3 * n as i64);
        verdicts.insert(Filter::Genus, n as i64 <= p_a);
        verdicts.insert(Filter::ExpectedDim, b >= a * r);
        verdicts.insert(Filter::K3cEffective, 3 * a - 2 >= 0 && 3 * b - r - 2 >= 0);
        verdicts.insert(Filter::Ample, a > 0 && b > a * r);
        if filters.iter().all(|f| verdicts[f]) {
            out.push(HirzebruchCandidate { a, b, verdicts });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K3Solution {
    pub d: i64,
    pub n: i64,
    pub p_a: i64,
    pub genus_ok: bool,
    pub flags: Vec<Flag>,
}

/// The one Severi divisor claimed for each K3 degree; other solutions are
/// flagged.
const K3_CLAIMED: &[(i64, i64, i64)] = &[(8, 1, 2)];

/// All `(d, n)` with `d >= 1`, `n <= n_max` and `dim |dL| = 3n - 1`, that is
/// `deg·d²/2 + 2 = 3n`.
pub fn enumerate_k3(deg: i64, n_max: i64) -> Result<Vec<K3Solution>> {
    make_k3(deg)?;
    let mut out = Vec::new();
    for d in (1..).take_while(|d| deg * d * d / 2 + 2 <= 3 * n_max) {
        let h0 = deg * d * d / 2 + 2;
        if h0 % 3 != 0 {
            continue;
        }
        let n = h0 / 3;
        let p_a = 1 + deg * d * d / 2;
        let flags = if K3_CLAIMED.contains(&(deg, d, n)) { Vec::new() } else { vec![Flag::K3ExtraSolution] };
        out.push(K3Solution { d, n, p_a, genus_ok: n <= p_a, flags });
    }
    Ok(out)
}

/// Severi classes on `P^2[n]` that are multiples of `kH - 1/2·B` with `k`
/// an integer, which happens exactly for `d ≡ 1 (mod 5)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImposingWall {
    pub d: i64,
    pub k: i64,
    /// Node counts `d < n <= C(d+2,2)/3`.
    pub n_min: i64,
    pub n_max: i64,
}

impl ImposingWall {
    /// `kH - 1/2·B` on `P^2[n]`.
    pub fn class(&self, n: u32) -> Result<HilbDivClass> {
        HilbDivClass::new(vec!["H".into()], SurfaceClass::from_ints(&[self.k]), qr(-1, 2), n)
    }

    pub fn n_range(&self) -> std::ops::RangeInclusive<i64> {
        self.n_min..=self.n_max
    }
}

pub fn imposing_wall(d: i64) -> Result<ImposingWall> {
    if d < 1 || d % 5 != 1 {
        return Err(Error::InvalidParameter(format!("need d ≡ 1 (mod 5), got {d}")));
    }
    Ok(ImposingWall { d, k: (3 * d - 3) / 5, n_min: d + 1, n_max: nslattice::h0_p2(d) / 3 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ramification {
    #[serde(with = "rational::serde_q")]
    pub gamma1_degree: Q,
    #[serde(with = "rational::serde_q")]
    pub gamma2_degree: Q,
}

fn default_sweep(s: &SurfaceLattice) -> Result<SurfaceClass> {
    match s.kind() {
        SurfaceKind::Hirzebruch { .. } => Ok(SurfaceClass::from_ints(&[0, 1])),
        _ => s.hyperplane_class().ok_or_else(|| Error::InvalidParameter(format!("no default sweep curve on {}", s.kind()))),
    }
}

/// Degrees of the Severi class on the two test curves: `γ₁`, a point
/// sweeping a curve of class `sweep` (default `H`, `F` or `L`), and `γ₂`,
/// a fiber of the Hilbert–Chow morphism over the diagonal.
pub fn ramification_report(s: &SurfaceLattice, c: &SurfaceClass, n: u32, sweep: Option<&SurfaceClass>, h0: Option<i64>) -> Result<Ramification> {
    let res = severi_class_general(s, c, n, h0)?;
    let sweep = match sweep {
        Some(d) => d.clone(),
        None => default_sweep(s)?,
    };
    let g1 = hilbpic::curve_from_divisor(s, &sweep, n)?;
    let g2 = hilbpic::gamma2(s, n)?;
    Ok(Ramification { gamma1_degree: g1.pair(&res.cls)?, gamma2_degree: g2.pair(&res.cls)? })
}
