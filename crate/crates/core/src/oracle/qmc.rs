//! Randomly shifted Halton points for low-dimensional integrals.

use rand::Rng;

use crate::stable_sim::path_rng;

const PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];

fn radical_inverse(mut i: u64, base: u32) -> f64 {
    let b = base as u64;
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += (i % b) as f64 * f;
        i /= b;
        f *= inv;
    }
    r
}

/// Randomized QMC estimate of `∫_{[0,1]^d} g`: `shifts` Cranley–Patterson
/// rotations of the first `points` Halton points. Returns `(mean, standard error)`.
pub fn rqmc<F: FnMut(&[f64]) -> f64>(dim: usize, points: usize, shifts: usize, seed: u64, mut g: F) -> (f64, f64) {
    assert!(dim <= PRIMES.len() && shifts >= 2);
    let mut means = Vec::with_capacity(shifts);
    let mut x = vec![0.0; dim];
    for s in 0..shifts {
        let mut rng = path_rng(seed, s as u64);
        let shift: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
        let mut acc = 0.0;
        for i in 1..=points as u64 {
            for (d, xd) in x.iter_mut().enumerate() {
                *xd = (radical_inverse(i, PRIMES[d]) + shift[d]).fract();
            }
            acc += g(&x);
        }
        means.push(acc / points as f64);
    }
    let m = means.iter().sum::<f64>() / shifts as f64;
    let var = means.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (shifts - 1) as f64;
    (m, (var / shifts as f64).sqrt())
}
