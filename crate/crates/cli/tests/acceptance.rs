//! Acceptance suite: twelve criteria, one PASS/FAIL line each.

#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};

use hilbcone::chambers::fixture;
use hilbcone::hilbpic::{self, HilbDivClass};
use hilbcone::nslattice::{self, make_hirzebruch, make_k3, make_p2, SurfaceClass, SurfaceKind, SurfaceLattice};
use hilbcone::rational::{primitive_line, q, qr, qv};
use hilbcone::severi::{self, Filter, Flag};
use hilbcone::{Cone, Q};
use hilbcone_cli::reproduce::KNOWN_DISCREPANCIES;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: hilbcone::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn p2_class(h: Q, b: Q, n: u32) -> Result<HilbDivClass, String> {
    lib(HilbDivClass::new(vec!["H".into()], SurfaceClass::new(vec![h]), b, n))
}

fn hirz_class(e: Q, f: Q, b: Q, n: u32) -> Result<HilbDivClass, String> {
    lib(HilbDivClass::new(vec!["E".into(), "F".into()], SurfaceClass::new(vec![e, f]), b, n))
}

fn c1_sevclass() -> Outcome {
    let r = lib(severi::severi_class_p2(7, 12, 0))?;
    ensure!(r.cls == p2_class(q(18), qr(-5, 2), 12)?, "Sev(12) = {}", r.cls);
    ensure!(r.flags.is_empty() && r.checks.dimension_equation.pass, "unexpected flags {:?}", r.flags);
    let ram = lib(severi::ramification_report(&make_p2(), &SurfaceClass::from_ints(&[7]), 12, None, None))?;
    ensure!(ram.gamma1_degree == q(3 * 7 - 3) && ram.gamma2_degree == q(5), "degrees ({}, {})", ram.gamma1_degree, ram.gamma2_degree);
    Ok(())
}

fn c2_p2_12() -> Outcome {
    let j = p2_class(q(7), q(-1), 12)?;
    let m = p2_class(q(25), qr(-7, 2), 12)?;
    let h = p2_class(q(1), q(0), 12)?;
    let sev = lib(severi::severi_class_p2(7, 12, 0))?.cls;
    let (tm, ts) = (lib(hilbpic::slope_decompose(&m, &j, &h))?, lib(hilbpic::slope_decompose(&sev, &j, &h))?);
    ensure!(tm == qr(1, 7) && ts == qr(1, 5), "slopes {tm}, {ts}");
    // (2/7)M = J + (1/7)H and (2/5)Sev = J + (1/5)H, checked coordinatewise.
    ensure!(m.scaled(&qr(2, 7)) == lib(j.plus(&h.scaled(&qr(1, 7))))?, "M decomposition");
    ensure!(sev.scaled(&qr(2, 5)) == lib(j.plus(&h.scaled(&qr(1, 5))))?, "Sev decomposition");
    let p4 = hilbpic::curve_from_pairings(qv(&[4]), q(28), 12, "P4");
    let (pj, ps) = (lib(p4.pair(&j))?, lib(p4.pair(&sev))?);
    ensure!(pj == q(0) && ps == q(2), "P4.J = {pj}, P4.Sev = {ps}");
    let (on_h, on_b) = (q(4), q(28));
    ensure!(&on_h * q(7) - &on_b == pj && &on_h * q(18) - qr(5, 2) * &on_b == ps, "hand pairing disagrees");
    Ok(())
}

fn c3_p2_145() -> Outcome {
    let r = lib(severi::severi_class_p2(28, 145, 0))?;
    ensure!(r.cls == p2_class(q(81), qr(-5, 2), 145)?, "Sev(145) = {}", r.cls);
    ensure!(nslattice::h0_p2(28) == 3 * 145, "h0(O(28))");
    let norm = lib(r.cls.normalized_half_b())?;
    let k = norm.surface.coeffs[0].clone();
    ensure!(k == qr(81, 5), "normalized H-coefficient {k}");
    ensure!(k < q(17), "{k} is not below 17");
    // D_17 = 17H - 1/2B; the wall through it and B separates Sev from H.
    let d17 = p2_class(q(17), qr(-1, 2), 145)?;
    ensure!(d17.is_pic_integral(), "D_17 not integral");
    let side = |c: &HilbDivClass| &c.surface.coeffs[0] * &d17.b - &c.b * &d17.surface.coeffs[0];
    let (s_sev, s_h) = (side(&r.cls), side(&p2_class(q(1), q(0), 145)?));
    ensure!(!s_sev.is_zero() && (s_sev < q(0)) != (s_h < q(0)), "Sev on the H side of D_17");
    Ok(())
}

fn c4_p2_18() -> Outcome {
    let r = lib(severi::severi_class_p2(9, 18, 1))?;
    ensure!(r.cls == p2_class(q(24), qr(-5, 2), 18)?, "Sev(18,L) = {}", r.cls);
    let d = &r.checks.dimension_equation;
    ensure!(d.pass && d.value == q(55) && d.expected == 3 * 18 + 1, "dimension check {} vs {}", d.value, d.expected);
    ensure!(r.has_flag(Flag::EqSevPlusOne), "flag missing: {:?}", r.flags);
    Ok(())
}

fn c5_p2_13() -> Outcome {
    let r = lib(severi::severi_class_subcollection(7, 12, 13, 0))?;
    ensure!(r.cls == p2_class(q(216), qr(-55, 2), 13)?, "D = {}", r.cls);
    // C: a point moving on a general line; C': the line passes through a fixed point.
    let c = lib(hilbpic::curve_from_pairings(qv(&[1]), q(0), 13, "C").pair(&r.cls))?;
    let c2 = lib(hilbpic::curve_from_pairings(qv(&[1]), q(2), 13, "C'").pair(&r.cls))?;
    ensure!(c == q(216) && c == q(12 * 18), "C.D = {c}");
    ensure!(c2 == q(161) && c2 == q(18 + 11 * 13), "C'.D = {c2}");
    Ok(())
}

fn c6_hirzebruch() -> Outcome {
    let cases = [((1, 3, 8, 10), (7, 21)), ((1, 4, 7, 10), (10, 18)), ((1, 7, 7, 12), (19, 18))];
    for ((r, a, b, n), (e, f)) in cases {
        let got = lib(severi::severi_class_hirzebruch(r, a, b, n))?;
        ensure!(got.cls == hirz_class(q(e), q(f), qr(-5, 2), n)?, "({r},{a},{b},{n}) -> {}", got.cls);
        let general = lib(severi::severi_class_general(&lib(make_hirzebruch(r))?, &SurfaceClass::from_ints(&[a, b]), n, None))?;
        ensure!(general.cls == got.cls, "general formula gives {}", general.cls);
        // K = -2E - (r+2)F.
        ensure!((e, f) == (3 * a - 2, 3 * b - r - 2), "K+3C by hand");
    }
    let c = lib(severi::severi_class_hirzebruch(1, 7, 7, 12))?.cls;
    let (h, e) = lib(hilbpic::hirzebruch_he_coords(&c, 1))?;
    ensure!(h == q(18) && e == q(1), "(H,E) coordinates ({h},{e})");
    Ok(())
}

/// All `(a, b)` with `a, b >= 0` solving `(a+1)(b+1) - r·a(a+1)/2 = 3n`,
/// by exhaustive search.
fn brute_hirzebruch(r: i64, n: i64) -> BTreeSet<(i64, i64)> {
    let mut out = BTreeSet::new();
    for a in 0..=6 * n {
        for b in 0..=(6 * n + r * 6 * n) {
            if 2 * (a + 1) * (b + 1) - r * a * (a + 1) == 6 * n {
                out.insert((a, b));
            }
        }
    }
    out
}

fn c7_enumerators() -> Outcome {
    let got: BTreeSet<(i64, i64)> = lib(severi::enumerate_hirzebruch(1, 12, &[Filter::Chi]))?.iter().map(|c| (c.a, c.b)).collect();
    ensure!(got == brute_hirzebruch(1, 12), "F_1[12] solutions {got:?}");
    for p in [(7, 7), (2, 12), (0, 35)] {
        ensure!(got.contains(&p), "missing {p:?}");
    }
    for k in 1..=5i64 {
        let sols = lib(severi::enumerate_hirzebruch(2 * k, 12, &[Filter::Chi]))?;
        let a: BTreeSet<i64> = sols.iter().map(|c| c.a).collect();
        ensure!(a == [0, 1, 2, 3, 5, 8, 11, 17, 35].into(), "r={}: a = {a:?}", 2 * k);
        ensure!(sols.iter().all(|c| 36 % (c.a + 1) == 0 && c.b == 36 / (c.a + 1) - 1 + k * c.a), "r={}: b formula", 2 * k);
        let pairs: BTreeSet<(i64, i64)> = sols.iter().map(|c| (c.a, c.b)).collect();
        ensure!(pairs == brute_hirzebruch(2 * k, 12), "r={}: brute force disagrees", 2 * k);
    }
    ensure!(lib(severi::enumerate_k3(6, 100))?.is_empty(), "degree 6 has solutions");
    let k3 = lib(severi::enumerate_k3(8, 10))?;
    ensure!(k3.iter().any(|s| (s.d, s.n) == (1, 2) && s.flags.is_empty()), "(1,2) missing or flagged");
    ensure!(k3.iter().any(|s| (s.d, s.n) == (2, 6) && s.flags.contains(&Flag::K3ExtraSolution)), "(2,6) missing or unflagged");
    let (deg, d, n) = (8, 2, 6);
    ensure!(deg * d * d / 2 + 2 == 3 * n, "(2,6) arithmetic");
    Ok(())
}

fn c8_imposing() -> Outcome {
    for d in [6, 11, 16, 21] {
        let w = lib(severi::imposing_wall(d))?;
        ensure!(5 * w.k == 3 * d - 3, "d={d}: k={}", w.k);
        let sev = lib(severi::severi_class_p2(d, w.n_min as u32, 0))?.cls;
        ensure!(lib(sev.normalized_half_b())? == lib(w.class(w.n_min as u32))?, "d={d}: normalized Severi ray");
    }
    for d in [7, 8, 9, 10] {
        ensure!(severi::imposing_wall(d).is_err(), "d={d} accepted");
    }
    Ok(())
}

fn c9_fixture() -> Outcome {
    let f = lib(fixture::builtin("f1n3"))?;
    let ws = lib(f.wall_set())?;
    ensure!(ws.basis == ["E", "F", "B"], "basis {:?}", ws.basis);
    // H = E + F on F_1.
    let hb = vec![qv(&[1, 1, 0]), qv(&[0, 0, 1])];
    let eff = lib(lib(f.bounding())?.intersect_subspace(&hb))?;
    let want = lib(Cone::from_generators(vec![qv(&[0, 1]), vec![q(1), qr(-1, 2)]]))?;
    ensure!(eff.equivalent(&want), "Eff restricts to rays {:?}", eff.rays());
    for g in want.generators() {
        let lifted: Vec<Q> = (0..3).map(|i| &hb[0][i] * &g[0] + &hb[1][i] * &g[1]).collect();
        ensure!(oracle::fm_contains(&lib(f.bounding())?.generators(), &lifted), "edge ray not in Eff(F_1[3])");
    }
    let res = lib(ws.restrict_walls(&hb, vec!["H".into(), "B".into()]))?;
    let p2n3 = lib(lib(fixture::builtin("p2n3"))?.wall_set())?;
    ensure!(res.walls.same_walls(&p2n3), "restricted walls differ from the P2[3] fixture");
    // The walls through H, 2H-1/2B and H-1/2B in (H, B) coordinates.
    let through = |h: Q, b: Q| primitive_line(&[-b, h]).unwrap();
    let want: BTreeSet<Vec<Q>> = [through(q(1), q(0)), through(q(2), qr(-1, 2)), through(q(1), qr(-1, 2))].into();
    let got: BTreeSet<Vec<Q>> = res.walls.walls.iter().map(|w| primitive_line(&w.functional).unwrap()).collect();
    ensure!(got == want, "walls {got:?}");
    let dropped: Vec<&str> = res.dropped.iter().map(|w| w.label.as_str()).collect();
    ensure!(dropped == ["C_E"], "dropped {dropped:?}");
    ensure!(hb.iter().all(|v| hilbcone::rational::dot(&res.dropped[0].functional, v).is_zero()), "C_E wall does not vanish on <H,B>");
    Ok(())
}

/// Gram matrix of `Blowup(F_r, 1)` in the basis `(E, F, e)`, written out.
fn roof_gram(r: i64) -> [[i64; 3]; 3] {
    [[-r, 1, 0], [1, 0, 0], [0, 0, -1]]
}

fn c10_transport() -> Outcome {
    for r in 0..=10i64 {
        for n in [1u32, 3, 12] {
            let h = hirz_class(q(1), q(r), q(0), n)?;
            let up = lib(hilbpic::transport_up(&h, r))?;
            ensure!(up == hirz_class(q(1), q(r + 1), q(0), n)?, "r={r}: transport_up(H) = {up}");
            let b = hirz_class(q(0), q(0), q(1), n)?;
            ensure!(lib(hilbpic::transport_up(&b, r))? == b, "r={r}: up moves B");
            ensure!(lib(hilbpic::transport_down(&b, r))? == b, "r={r}: down moves B");
        }
        ensure!(lib(nslattice::roof_is_isometry(r))?, "r={r}: roof basis change is not an isometry");
        let m = nslattice::roof_basis_change(r);
        let (lo, hi) = (roof_gram(r), roof_gram(r + 1));
        for i in 0..3 {
            for j in 0..3 {
                let v: i64 = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).map(|(a, b)| m[a][i] * lo[a][b] * m[b][j]).sum();
                ensure!(v == hi[i][j], "r={r}: entry ({i},{j}) is {v}, expected {}", hi[i][j]);
            }
        }
    }
    Ok(())
}

/// Pairing from the textbook intersection forms, without the library's
/// Gram matrices.
fn pairing_oracle(s: &SurfaceLattice, x: &[Q], y: &[Q]) -> Q {
    match s.kind() {
        SurfaceKind::P2 => &x[0] * &y[0],
        SurfaceKind::K3 { deg } => q(*deg as i64) * &x[0] * &y[0],
        SurfaceKind::Hirzebruch { r } => -q(*r as i64) * &x[0] * &y[0] + &x[0] * &y[1] + &x[1] * &y[0],
        SurfaceKind::Blowup { .. } => &x[0] * &y[0] - x[1..].iter().zip(&y[1..]).map(|(a, b)| a * b).sum::<Q>(),
    }
}

/// Canonical class coordinates, written out.
fn canonical_oracle(s: &SurfaceLattice) -> Vec<i64> {
    match s.kind() {
        SurfaceKind::P2 => vec![-3],
        SurfaceKind::K3 { .. } => vec![0],
        SurfaceKind::Hirzebruch { r } => vec![-2, -(*r as i64) - 2],
        SurfaceKind::Blowup { .. } => std::iter::once(-3).chain(std::iter::repeat_n(1, s.rank() - 1)).collect(),
    }
}

fn rand_class(rng: &mut ChaCha8Rng, n: usize) -> Vec<Q> {
    (0..n).map(|_| qr(rng.gen_range(-12..=12), rng.gen_range(1..=4))).collect()
}

fn c11_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e7e71);
    let mut lattices = vec![make_p2(), lib(make_p2().blow_up(1))?, lib(make_p2().blow_up(6))?];
    for r in 0..=4 {
        lattices.push(lib(make_hirzebruch(r))?);
    }
    for d in [4, 6, 8] {
        lattices.push(lib(make_k3(d))?);
    }
    for s in &lattices {
        let n = s.rank();
        for _ in 0..200 {
            let (x, y, z) = (rand_class(&mut rng, n), rand_class(&mut rng, n), rand_class(&mut rng, n));
            let (cx, cy, cz) = (SurfaceClass::new(x.clone()), SurfaceClass::new(y.clone()), SurfaceClass::new(z.clone()));
            let t = qr(rng.gen_range(-9..=9), rng.gen_range(1..=5));
            let pxy = lib(s.pair(&cx, &cy))?;
            ensure!(pxy == pairing_oracle(s, &x, &y), "{}: pairing oracle", s.kind());
            ensure!(pxy == lib(s.pair(&cy, &cx))?, "{}: symmetry", s.kind());
            let lin = lib(cx.scaled(&t).plus(&cz))?;
            ensure!(lib(s.pair(&lin, &cy))? == &t * &pxy + lib(s.pair(&cz, &cy))?, "{}: bilinearity", s.kind());
        }
        let k: Vec<Q> = canonical_oracle(s).into_iter().map(q).collect();
        for _ in 0..200 {
            let c: Vec<Q> = (0..n).map(|_| q(rng.gen_range(-15..=15))).collect();
            let cc = SurfaceClass::new(c.clone());
            let twice = pairing_oracle(s, &c, &c) + pairing_oracle(s, &k, &c);
            ensure!(hilbcone::rational::is_integer(&(&twice / q(2))), "{}: C^2 + K.C odd for {c:?}", s.kind());
            ensure!(lib(s.arithmetic_genus(&cc))? == q(1) + twice / q(2), "{}: adjunction", s.kind());
        }
    }
    for r in 0..=12i64 {
        let s = lib(make_hirzebruch(r))?;
        for a in 0..=12i64 {
            for b in (a * r)..=12i64.max(a * r) {
                if b > 12 {
                    break;
                }
                let chi = (a + 1) * (b + 1) - r * a * (a + 1) / 2;
                ensure!(lib(nslattice::h0_hirzebruch(r, a, b))? == chi, "h0 != chi at (r,a,b) = ({r},{a},{b})");
                ensure!(lib(s.chi(&SurfaceClass::from_ints(&[a, b])))? == q(chi), "chi formula at ({r},{a},{b})");
            }
        }
    }
    for _ in 0..100 {
        let dim = rng.gen_range(1..=4usize);
        let count = rng.gen_range(1..=6usize);
        let gens: Vec<Vec<Q>> = (0..count)
            .map(|_| (0..dim).map(|_| q(rng.gen_range(-3..=3))).collect::<Vec<Q>>())
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        if gens.is_empty() {
            continue;
        }
        let c = lib(Cone::from_generators(gens.clone()))?;
        let back = lib(Cone::from_inequalities(dim, c.facets(), c.equalities()))?;
        ensure!(back == c, "double description round trip failed for {gens:?}");
        if c.is_full_dimensional() {
            let mut facets = c.facets().to_vec();
            facets.sort();
            ensure!(facets == oracle::brute_force_facets(&gens), "facets disagree for {gens:?}");
        }
        for _ in 0..5 {
            let v: Vec<Q> = (0..dim).map(|_| q(rng.gen_range(-4..=4))).collect();
            ensure!(lib(c.contains(&v))? == oracle::fm_contains(&gens, &v), "membership of {v:?} in {gens:?}");
        }
    }
    Ok(())
}

fn c12_reproduce() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_hilbcone")).arg("reproduce").output().map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    ensure!(out.status.code() == Some(0), "exit status {:?}\n{text}", out.status.code());
    let passes = text.lines().filter(|l| l.starts_with("PASS ")).count();
    let warns: Vec<&str> = text.lines().filter(|l| l.starts_with("WARN ")).filter_map(|l| l.split_whitespace().nth(1)).collect();
    ensure!(passes >= 25, "only {passes} PASS lines");
    ensure!(!text.lines().any(|l| l.starts_with("FAIL ")), "FAIL lines present");
    ensure!(warns == KNOWN_DISCREPANCIES, "warnings {warns:?}");
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("Severi class on P2[12] and ramification degrees", c1_sevclass),
        ("P2[12] slopes and P4 pairings", c2_p2_12),
        ("P2[145] class and position against D_17", c3_p2_145),
        ("P2[18] incomplete system and EQ_SEV_PLUS_ONE", c4_p2_18),
        ("P2[13] subcollection class and test curves", c5_p2_13),
        ("Hirzebruch Severi classes", c6_hirzebruch),
        ("Enumerators", c7_enumerators),
        ("Imposing walls", c8_imposing),
        ("F_1[3] fixture restriction", c9_fixture),
        ("Roof transports and isometry", c10_transport),
        ("Property suites", c11_properties),
        ("reproduce command", c12_reproduce),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
