//! Statevector simulation of the two-qubit product circuit
//! `U = R(x - θ₂) ⊗ R(x - θ₁) · (H ⊗ H)` applied to `|00⟩`.
//!
//! Basis states are indexed `2·b_first + b_second`, where the first tensor
//! factor is `R(x - θ₂)`. Entry `g_b` of the diagonal observable pairs with
//! basis index `b`.

use num_complex::Complex64;

use crate::error::{ensure_finite, Result};

pub type Matrix2 = [[f64; 2]; 2];
pub type Matrix4 = [[f64; 4]; 4];

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

pub const HADAMARD: Matrix2 = [
    [FRAC_1_SQRT_2, FRAC_1_SQRT_2],
    [FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
];

/// Diagonal entries `g₀..g₃` of the measured observable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagonalObservable(pub [f64; 4]);

impl DiagonalObservable {
    pub fn new(g: [f64; 4]) -> Result<Self> {
        const NAMES: [&str; 4] = ["g0", "g1", "g2", "g3"];
        for (name, &v) in NAMES.iter().zip(&g) {
            ensure_finite(name, v)?;
        }
        Ok(Self(g))
    }

    pub fn identity() -> Self {
        Self([1.0; 4])
    }

    pub fn min(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// The full trainable point: two rotation offsets plus the observable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircuitParams {
    pub theta1: f64,
    pub theta2: f64,
    pub g: DiagonalObservable,
}

impl CircuitParams {
    pub const DIM: usize = 6;

    pub fn new(theta1: f64, theta2: f64, g: [f64; 4]) -> Result<Self> {
        Ok(Self {
            theta1: ensure_finite("theta1", theta1)?,
            theta2: ensure_finite("theta2", theta2)?,
            g: DiagonalObservable::new(g)?,
        })
    }

    /// Flattened as `[θ₁, θ₂, g₀, g₁, g₂, g₃]`.
    pub fn to_array(&self) -> [f64; 6] {
        let [g0, g1, g2, g3] = self.g.0;
        [self.theta1, self.theta2, g0, g1, g2, g3]
    }

    pub fn from_array(v: [f64; 6]) -> Self {
        Self {
            theta1: v[0],
            theta2: v[1],
            g: DiagonalObservable([v[2], v[3], v[4], v[5]]),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}

/// Amplitudes over `|00⟩, |01⟩, |10⟩, |11⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateVector(pub [Complex64; 4]);

impl StateVector {
    pub fn basis_00() -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self([Complex64::new(1.0, 0.0), zero, zero, zero])
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.0
    }

    pub fn probabilities(&self) -> [f64; 4] {
        self.0.map(|a| a.norm_sqr())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.probabilities().iter().sum()
    }

    pub fn apply(&self, m: &Matrix4) -> Self {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (row, o) in m.iter().zip(out.iter_mut()) {
            *o = row.iter().zip(&self.0).map(|(&m, &a)| a * m).sum();
        }
        Self(out)
    }
}

/// `R(φ) = [[cos(φ/2), -sin(φ/2)], [sin(φ/2), cos(φ/2)]]`.
pub fn rotation_matrix(phi: f64) -> Matrix2 {
    let (s, c) = (phi / 2.0).sin_cos();
    [[c, -s], [s, c]]
}

/// Kronecker product `a ⊗ b`; `a` acts on the first-written qubit.
pub fn kron(a: &Matrix2, b: &Matrix2) -> Matrix4 {
    let mut out = [[0.0; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul4(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// The full circuit unitary for input `x`.
pub fn circuit_unitary(params: &CircuitParams, x: f64) -> Matrix4 {
    let layer = kron(
        &rotation_matrix(x - params.theta2),
        &rotation_matrix(x - params.theta1),
    );
    matmul4(&layer, &kron(&HADAMARD, &HADAMARD))
}

pub fn prepare_state(params: &CircuitParams, x: f64) -> StateVector {
    StateVector::basis_00().apply(&circuit_unitary(params, x))
}

/// `⟨ψ|G|ψ⟩` for diagonal `G`, computed as `Σ g_b |amp_b|²`.
pub fn expectation(state: &StateVector, g: &DiagonalObservable) -> f64 {
    state
        .probabilities()
        .iter()
        .zip(&g.0)
        .map(|(p, g)| p * g)
        .sum()
}

/// Circuit output `f̂(x) = ⟨ψ(θ₁, θ₂, x)| G |ψ(θ₁, θ₂, x)⟩`.
pub fn fhat(params: &CircuitParams, x: f64) -> f64 {
    expectation(&prepare_state(params, x), &params.g)
}
