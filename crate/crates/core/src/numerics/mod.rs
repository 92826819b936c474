//! Shared verification machinery: the seeded random stream, Haar sampling,
//! fixed-spectrum state generation, the unitary-orbit optimizer and a small
//! phase-1 simplex.
//!
//! Everything is a pure function of its inputs and an explicit
//! [`SeededStream`]; there is no global randomness anywhere in the crate.

mod orbit;
mod simplex;

pub use orbit::{orbit_optimize, Direction, OrbitObjective, OrbitProblem};
pub use simplex::{lp_feasible, LinearProgram};

use num_complex::Complex64;

use crate::linalg::{ComplexMatrix, DensityMatrix, PureState, Spectrum};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// Counter-based pseudorandom stream (SplitMix64).
///
/// The k-th output is `mix(seed + k * 0x9E3779B97F4A7C15)` with the SplitMix64
/// finalizer `mix(z) = f(z ^ (z >> 30) ...)`; identical seeds therefore
/// reproduce identical sequences bit-for-bit, and the generator is simple
/// enough to reimplement in any language from this comment alone.
#[derive(Debug, Clone)]
pub struct SeededStream {
    seed: u64,
    counter: u64,
}

impl SeededStream {
    pub fn new(seed: u64) -> Self {
        SeededStream { seed, counter: 0 }
    }

    /// Independent stream for a parallel batch member: seed `base ^ index`,
    /// counter reset.
    pub fn fork(&self, index: u64) -> Self {
        SeededStream::new(self.seed ^ index)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        let mut z = self.seed.wrapping_add(self.counter.wrapping_mul(GOLDEN));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform double in `[0, 1)` built from the top 53 bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box-Muller; draws two uniforms per call so the
    /// stream position stays a pure function of the call count.
    pub fn gaussian(&mut self) -> f64 {
        let u1 = loop {
            let u = self.uniform();
            if u > 0.0 {
                break u;
            }
        };
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    /// Complex standard normal (real and imaginary parts N(0, 1/2)).
    pub fn gaussian_complex(&mut self) -> Complex64 {
        Complex64::new(
            self.gaussian() / 2f64.sqrt(),
            self.gaussian() / 2f64.sqrt(),
        )
    }
}

/// Haar-random pure state on the given factors: a complex standard-normal
/// vector, normalized.
pub fn random_haar_pure(dims: &[usize], stream: &mut SeededStream) -> PureState {
    let len: usize = dims.iter().product();
    let mut amps: Vec<Complex64> = (0..len).map(|_| stream.gaussian_complex()).collect();
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a = a.scale(1.0 / norm);
    }
    PureState::new(amps, dims.to_vec()).expect("normalized by construction")
}

/// Haar-random unitary: modified Gram-Schmidt of a complex Gaussian matrix.
///
/// Normalizing each residual by its (real, positive) norm fixes the phase
/// freedom of the QR factorization, which is exactly the convention under
/// which the orthogonal factor of a Ginibre matrix is Haar distributed.
pub fn random_haar_unitary(dim: usize, stream: &mut SeededStream) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| (0..dim).map(|_| stream.gaussian_complex()).collect())
        .collect();
    for k in 0..dim {
        for prev in 0..k {
            let proj: Complex64 = (0..dim)
                .map(|r| cols[prev][r].conj() * cols[k][r])
                .sum();
            for r in 0..dim {
                let sub = proj * cols[prev][r];
                cols[k][r] -= sub;
            }
        }
        let norm: f64 = cols[k].iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut cols[k] {
            *a = a.scale(1.0 / norm);
        }
    }
    let mut u = ComplexMatrix::zeros(dim);
    for (c, col) in cols.iter().enumerate() {
        for (r, &v) in col.iter().enumerate() {
            u.set(r, c, v);
        }
    }
    u
}

/// Random element of `D(H, lambda)`: `U diag(lambda) U†` with Haar `U`.
pub fn random_fixed_spectrum(lambda: &Spectrum, stream: &mut SeededStream) -> DensityMatrix {
    let d = lambda.len();
    let u = random_haar_unitary(d, stream);
    let diag = ComplexMatrix::from_diag(lambda.values());
    let m = u.mul(&diag).expect("square").mul(&u.adjoint()).expect("square");
    DensityMatrix::new(m, vec![d]).expect("unitary conjugation of a valid spectrum")
}
