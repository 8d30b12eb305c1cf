use hilbcone::nslattice::{self, make_hirzebruch, make_k3, make_p2, SurfaceClass};
use hilbcone::rational::{q, qr};
use hilbcone::severi::{self, Filter, Flag};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn specializations_agree(d in 1i64..=40, n in 1u32..=200, r in 0i64..=6, a in 0i64..=12, b in 0i64..=30) {
        let p = severi::severi_class_p2(d, n, 0).unwrap();
        let g = severi::severi_class_general(&make_p2(), &SurfaceClass::from_ints(&[d]), n, None).unwrap();
        prop_assert_eq!(&p.cls, &g.cls);
        prop_assert_eq!(p.cls.coords(), vec![q(3 * d - 3), qr(-5, 2)]);
        let h = severi::severi_class_hirzebruch(r, a, b, n).unwrap();
        let g = severi::severi_class_general(&make_hirzebruch(r).unwrap(), &SurfaceClass::from_ints(&[a, b]), n, None).unwrap();
        prop_assert_eq!(&h.cls, &g.cls);
        prop_assert_eq!(h.cls.coords(), vec![q(3 * a - 2), q(3 * b - r - 2), qr(-5, 2)]);
        let m = severi::severi_class_subcollection(d, n.max(2), n.max(2), 0).unwrap();
        prop_assert_eq!(m.cls, severi::severi_class_p2(d, n.max(2), 0).unwrap().cls);
    }

    #[test]
    fn hirzebruch_solutions_round_trip(r in 0i64..=8, n in 1u32..=60) {
        let sols = severi::enumerate_hirzebruch(r, n, &[Filter::Chi]).unwrap();
        let s = make_hirzebruch(r).unwrap();
        for c in &sols {
            prop_assert_eq!(s.chi(&SurfaceClass::from_ints(&[c.a, c.b])).unwrap(), q(3 * n as i64));
            prop_assert_eq!(c.verdicts[&Filter::H0Exact], nslattice::h0_hirzebruch(r, c.a, c.b).unwrap() == 3 * n as i64);
            prop_assert_eq!(c.verdicts[&Filter::Genus], q(n as i64) <= s.arithmetic_genus(&SurfaceClass::from_ints(&[c.a, c.b])).unwrap());
        }
        // exhaustive check over a box that contains every solution
        let bound = 6 * n as i64;
        let mut brute = Vec::new();
        for a in 0..bound {
            for b in 0..=(bound + r * a) {
                if (a + 1) * (b + 1) * 2 - r * a * (a + 1) == 6 * n as i64 {
                    brute.push((a, b));
                }
            }
        }
        prop_assert_eq!(sols.iter().map(|c| (c.a, c.b)).collect::<Vec<_>>(), brute);
    }

    #[test]
    fn plane_and_k3_round_trip(n in 1i64..=400, deg in prop::sample::select(vec![4i64, 6, 8])) {
        for s in severi::enumerate_p2(n) {
            prop_assert_eq!(nslattice::h0_p2(s.d), 3 * n);
        }
        for s in severi::enumerate_k3(deg, n).unwrap() {
            let k3 = make_k3(deg).unwrap();
            prop_assert_eq!(k3.h0(&SurfaceClass::from_ints(&[s.d])).unwrap(), Some(3 * s.n));
            prop_assert!(s.n <= n);
        }
    }
}

#[test]
fn enumerator_examples() {
    let f1: Vec<(i64, i64)> = severi::enumerate_hirzebruch(1, 12, &[Filter::Chi]).unwrap().iter().map(|c| (c.a, c.b)).collect();
    for p in [(7, 7), (2, 12), (0, 35)] {
        assert!(f1.contains(&p));
    }
    for k in 1..=5 {
        let sols = severi::enumerate_hirzebruch(2 * k, 12, &[Filter::Chi]).unwrap();
        let got: Vec<(i64, i64)> = sols.iter().map(|c| (c.a, c.b)).collect();
        let want: Vec<(i64, i64)> = [0, 1, 2, 3, 5, 8, 11, 17, 35].iter().map(|&a| (a, 36 / (a + 1) - 1 + k * a)).collect();
        assert_eq!(got, want, "k={k}");
    }
    assert!(severi::enumerate_k3(6, 100).unwrap().is_empty());
    let k8 = severi::enumerate_k3(8, 10).unwrap();
    assert!(k8.iter().any(|s| (s.d, s.n) == (1, 2) && s.flags.is_empty()));
    assert!(k8.iter().any(|s| (s.d, s.n) == (2, 6) && s.flags == vec![Flag::K3ExtraSolution]));
}

#[test]
fn flags_on_failed_preconditions() {
    let r = severi::severi_class_p2(6, 9, 0).unwrap();
    assert!(r.has_flag(Flag::BelowTregerDegree) && r.has_flag(Flag::TregerException));
    let r = severi::severi_class_p2(7, 20, 0).unwrap();
    assert!(r.has_flag(Flag::DimensionEquationFail) && r.has_flag(Flag::GenusBoundFail));
    assert_eq!(r.cls.to_string(), "18H-5/2B");
    let r = severi::severi_class_hirzebruch(3, 7, 14, 12).unwrap();
    assert!(r.has_flag(Flag::H0Ne3n));
    let r = severi::severi_class_hirzebruch(2, 3, 1, 2).unwrap();
    assert!(r.has_flag(Flag::ExpectedDimFail));
    let r = severi::severi_class_hirzebruch(1, 0, 0, 1).unwrap();
    assert!(r.has_flag(Flag::K3cNotEffective));
    let blown = make_p2().blow_up(1).unwrap();
    let r = severi::severi_class_general(&blown, &SurfaceClass::from_ints(&[7, -1]), 12, Some(36)).unwrap();
    assert!(r.has_flag(Flag::K3cEffectivityUnknown));
    assert!(severi::severi_class_general(&blown, &SurfaceClass::from_ints(&[7, -1]), 12, None).is_err());
}

#[test]
fn imposing_walls() {
    for d in [6, 11, 16, 21] {
        let w = severi::imposing_wall(d).unwrap();
        assert_eq!(q(w.k), qr(3 * d - 3, 5));
        let sev = severi::severi_class_p2(d, w.n_min as u32, 0).unwrap().cls;
        assert_eq!(sev.normalized_half_b().unwrap(), sev.scaled(&qr(1, 5)));
        assert_eq!(w.class(w.n_min as u32).unwrap(), sev.scaled(&qr(1, 5)));
    }
    for d in [7, 8, 9, 10] {
        assert!(severi::imposing_wall(d).is_err());
    }
}
