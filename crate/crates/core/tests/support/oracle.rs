//! Brute-force oracles for cone computations, independent of the double
//! description code.

#![allow(dead_code)]

use hilbcone::rational::{dot, primitive, q};
use hilbcone::Q;
use num_traits::{Signed, Zero};

/// Whether `v` is a nonnegative combination of `gens`. The equations
/// `Σ λ_j g_j = v` are solved by row reduction, `λ = λ₀ + N·t`, and the
/// sign conditions `λ >= 0` are then decided by Fourier–Motzkin elimination
/// of `t`.
pub fn fm_contains(gens: &[Vec<Q>], v: &[Q]) -> bool {
    let k = gens.len();
    let a: Vec<Vec<Q>> = (0..v.len()).map(|i| gens.iter().map(|g| g[i].clone()).collect()).collect();
    let aug: Vec<Vec<Q>> = a.iter().zip(v).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    let (red, pivots) = hilbcone::linalg::rref(&aug, k + 1);
    if pivots.contains(&k) {
        return false;
    }
    let mut lambda0 = vec![Q::zero(); k];
    for (row, &p) in red.iter().zip(&pivots) {
        lambda0[p] = row[k].clone();
    }
    let null = hilbcone::linalg::nullspace(&a, k);
    let t = null.len();
    // Rows (c, b) meaning c·t <= b; here -(λ₀ + N t)_j <= 0.
    let mut rows: Vec<(Vec<Q>, Q)> = (0..k).map(|j| (null.iter().map(|n| -n[j].clone()).collect(), lambda0[j].clone())).collect();
    for var in 0..t {
        let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.0[var].is_positive() {
                pos.push(r);
            } else if r.0[var].is_negative() {
                neg.push(r);
            } else {
                keep.push(r);
            }
        }
        for p in &pos {
            for n in &neg {
                let (sp, sn) = (p.0[var].clone(), -n.0[var].clone());
                let c: Vec<Q> = p.0.iter().zip(&n.0).map(|(x, y)| x * &sn + y * &sp).collect();
                keep.push((c, &p.1 * &sn + &n.1 * &sp));
            }
        }
        rows = dedup(keep);
    }
    rows.iter().all(|(_, b)| !b.is_negative())
}

fn dedup(rows: Vec<(Vec<Q>, Q)>) -> Vec<(Vec<Q>, Q)> {
    let mut out: Vec<(Vec<Q>, Q)> = Vec::new();
    for (a, b) in rows {
        let mut full = a.clone();
        full.push(b.clone());
        let norm = match primitive(&full) {
            Some(p) => p,
            None => continue,
        };
        let (na, nb) = (norm[..a.len()].to_vec(), norm[a.len()].clone());
        if !out.iter().any(|(x, y)| *x == na && *y == nb) {
            out.push((na, nb));
        }
    }
    out
}

fn rank(rows: &[Vec<Q>]) -> usize {
    hilbcone::linalg::rank(rows, rows.first().map_or(0, Vec::len))
}

/// Facets of a full-dimensional `cone(gens)` by trying the normal of every
/// `(dim-1)`-subset of generators. Sorted primitive inward normals.
pub fn brute_force_facets(gens: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let dim = gens[0].len();
    if gens.len() + 1 < dim {
        return Vec::new();
    }
    let mut out: Vec<Vec<Q>> = Vec::new();
    let mut idx: Vec<usize> = (0..dim - 1).collect();
    if dim == 1 {
        let f = vec![q(1)];
        let g = vec![-q(1)];
        if gens.iter().all(|x| !x[0].is_negative()) {
            out.push(f);
        }
        if gens.iter().all(|x| !x[0].is_positive()) {
            out.push(g);
        }
        return out;
    }
    loop {
        if idx.iter().all(|&i| i < gens.len()) {
            let sub: Vec<Vec<Q>> = idx.iter().map(|&i| gens[i].clone()).collect();
            if rank(&sub) == dim - 1 {
                let ns = hilbcone::linalg::nullspace(&sub, dim);
                let f = &ns[0];
                let vals: Vec<Q> = gens.iter().map(|g| dot(f, g)).collect();
                let pos = vals.iter().any(Signed::is_positive);
                let neg = vals.iter().any(Signed::is_negative);
                let cand = match (pos, neg) {
                    (true, false) => Some(f.clone()),
                    (false, true) => Some(f.iter().map(|x| -x).collect()),
                    _ => None,
                };
                if let Some(c) = cand.and_then(|c| primitive(&c)) {
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
        }
        // next combination
        let m = gens.len();
        let k = dim - 1;
        let mut i = k;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            if idx[i] < m - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        if idx[k - 1] >= m {
            out.sort();
            return out;
        }
    }
}
