//! Inputs shared by the benchmarks.

use hilbcone::rational::q;
use hilbcone::Q;

/// `count` integral vectors in dimension `dim` on a fixed pseudo-random
/// pattern, all with positive last coordinate so they span a pointed cone.
pub fn sample_generators(dim: usize, count: usize) -> Vec<Vec<Q>> {
    let mut state: i64 = 7;
    (0..count)
        .map(|_| {
            (0..dim)
                .map(|i| {
                    state = (state * 1103 + 12345) % 10007;
                    if i + 1 == dim {
                        q(1 + state % 5)
                    } else {
                        q(state % 9 - 4)
                    }
                })
                .collect()
        })
        .collect()
}
