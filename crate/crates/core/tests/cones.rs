mod support;

use hilbcone::linalg;
use hilbcone::rational::{q, qr, qv};
use hilbcone::{Cone, Q};
use proptest::prelude::*;
use support::oracle::{brute_force_facets, fm_contains};

fn ints(v: &[i64]) -> Vec<Q> {
    qv(v)
}

fn gens_strategy() -> impl Strategy<Value = Vec<Vec<Q>>> {
    (1usize..=4).prop_flat_map(|dim| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 1..=6)
            .prop_map(|vs| vs.into_iter().filter(|v| v.iter().any(|x| *x != 0)).map(|v| ints(&v)).collect::<Vec<_>>())
            .prop_filter("need a nonzero generator", |g: &Vec<Vec<Q>>| !g.is_empty())
    })
}

fn sorted(mut m: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    m.sort();
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generators_facets_round_trip(gens in gens_strategy()) {
        let c = Cone::from_generators(gens.clone()).unwrap();
        let back = Cone::from_inequalities(c.ambient_dim(), c.facets(), c.equalities()).unwrap();
        prop_assert_eq!(&back, &c);
        for g in &gens {
            prop_assert!(c.contains(g).unwrap());
        }
        if c.is_pointed() {
            for r in c.rays() {
                let hit = gens.iter().any(|g| linalg::rank(&[g.clone(), r.clone()], g.len()) == 1
                    && hilbcone::rational::dot(g, r) > Q::from_integer(0.into()));
                prop_assert!(hit, "ray {:?} is not a generator direction", r);
            }
        }
    }

    #[test]
    fn membership_agrees_with_fourier_motzkin(gens in gens_strategy(), raw in prop::collection::vec(-4i64..=4, 4)) {
        let c = Cone::from_generators(gens.clone()).unwrap();
        let v = ints(&raw[..c.ambient_dim()]);
        prop_assert_eq!(c.contains(&v).unwrap(), fm_contains(&gens, &v));
        let sum: Vec<Q> = (0..c.ambient_dim()).map(|i| gens.iter().map(|g| g[i].clone()).sum()).collect();
        prop_assert!(c.contains(&sum).unwrap());
        if c.contains_interior(&v).unwrap() {
            prop_assert!(c.contains(&v).unwrap());
        }
    }

    #[test]
    fn facets_match_brute_force(gens in gens_strategy()) {
        let c = Cone::from_generators(gens.clone()).unwrap();
        prop_assume!(c.is_full_dimensional());
        prop_assert_eq!(sorted(c.facets().to_vec()), brute_force_facets(&gens));
        for f in c.facets() {
            for g in &gens {
                prop_assert!(hilbcone::rational::dot(f, g) >= Q::from_integer(0.into()));
            }
        }
    }

    #[test]
    fn subspace_intersection_is_inside(gens in gens_strategy(), basis_raw in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 1..=3), y_raw in prop::collection::vec(-3i64..=3, 3)) {
        let c = Cone::from_generators(gens).unwrap();
        let d = c.ambient_dim();
        let basis: Vec<Vec<Q>> = basis_raw.iter().take(d).map(|b| ints(&b[..d])).collect();
        prop_assume!(linalg::rank(&basis, d) == basis.len());
        let sub = c.intersect_subspace(&basis).unwrap();
        let embed = |y: &[Q]| -> Vec<Q> { (0..d).map(|i| basis.iter().zip(y).map(|(b, t)| &b[i] * t).sum()).collect() };
        for g in sub.generators() {
            prop_assert!(c.contains(&embed(&g)).unwrap());
        }
        let y = ints(&y_raw[..basis.len()]);
        prop_assert_eq!(sub.contains(&y).unwrap(), c.contains(&embed(&y)).unwrap());
        let identity: Vec<Vec<Q>> = (0..d).map(|i| { let mut e = vec![q(0); d]; e[i] = q(1); e }).collect();
        prop_assert_eq!(c.intersect_subspace(&identity).unwrap(), c);
    }
}

#[test]
fn hirzebruch_effective_cone() {
    let c = Cone::from_generators(vec![qv(&[1, 0]), qv(&[0, 1])]).unwrap();
    assert_eq!(sorted(c.facets().to_vec()), vec![qv(&[0, 1]), qv(&[1, 0])]);
    assert!(!c.contains(&qv(&[-1, 0])).unwrap());
    assert!(c.contains(&qv(&[1, 1])).unwrap());
    let line = c.intersect_subspace(&[qv(&[1, 1])]).unwrap();
    assert_eq!(line.rays(), &[qv(&[1])]);
    assert!(line.is_pointed());
}

#[test]
fn plane_twelve_points_effective_cone() {
    // basis (H, B): B and J = 7H - B
    let c = Cone::from_generators(vec![qv(&[0, 1]), qv(&[7, -1])]).unwrap();
    assert!(c.contains(&[q(18), qr(-5, 2)]).unwrap());
    assert!(c.contains(&[q(25), qr(-7, 2)]).unwrap());
    assert!(!c.contains(&[q(6), q(-1)]).unwrap());
}

#[test]
fn single_ray() {
    let c = Cone::from_generators(vec![qv(&[2, 4, -2])]).unwrap();
    assert_eq!(c.rays(), &[qv(&[1, 2, -1])]);
    assert!(c.contains(&qv(&[3, 6, -3])).unwrap());
    assert!(c.contains(&qv(&[0, 0, 0])).unwrap());
    assert!(!c.contains(&qv(&[-1, -2, 1])).unwrap());
    assert!(!c.contains(&qv(&[1, 2, 0])).unwrap());
    assert!(Cone::from_generators(vec![qv(&[0, 0])]).is_err());
}
