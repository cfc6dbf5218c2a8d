//! Closed-form expectation of the circuit and its cubic Maclaurin truncation.
//!
//! With `s₁ = sin(x - θ₁)` and `s₂ = sin(x - θ₂)` the single-qubit outcome
//! probabilities are `p₀(φ) = (1 - sin φ)/2`, `p₁(φ) = (1 + sin φ)/2`, so
//!
//! ```text
//! f̂(x) = c₀ + c₁·s₁ + c₂·s₂ + c₃·s₁·s₂
//! ```
//!
//! Expanding each `sin(x - θ)` about `x = 0` and truncating at degree 3 gives
//! the cubic `a₀ + a₁x + a₂x² + a₃x³`. None of this goes through the
//! statevector code in [`crate::circuit`], so the two can check each other.

use std::f64::consts::FRAC_PI_4;

use crate::circuit::{CircuitParams, DiagonalObservable};

/// `a[k]` is the coefficient of `x^k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicPoly {
    pub a: [f64; 4],
}

impl CubicPoly {
    pub fn eval(&self, x: f64) -> f64 {
        self.a.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

/// Coefficients of `c₀ + c₁·sin(x-θ₁) + c₂·sin(x-θ₂) + c₃·sin(x-θ₁)·sin(x-θ₂)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrigForm {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl TrigForm {
    pub fn eval(&self, theta1: f64, theta2: f64, x: f64) -> f64 {
        let s1 = (x - theta1).sin();
        let s2 = (x - theta2).sin();
        self.c0 + self.c1 * s1 + self.c2 * s2 + self.c3 * s1 * s2
    }
}

/// Probability of reading `bit` on a qubit rotated by `phi` after a Hadamard.
fn outcome_probability(bit: usize, phi: f64) -> f64 {
    let s = phi.sin();
    if bit == 0 {
        0.5 * (1.0 - s)
    } else {
        0.5 * (1.0 + s)
    }
}

pub fn closed_form_expectation(params: &CircuitParams, x: f64) -> f64 {
    let phi_first = x - params.theta2;
    let phi_second = x - params.theta1;
    let mut total = 0.0;
    for first in 0..2 {
        for second in 0..2 {
            total += params.g.0[2 * first + second]
                * outcome_probability(first, phi_first)
                * outcome_probability(second, phi_second);
        }
    }
    total
}

pub fn trig_form(g: &DiagonalObservable) -> TrigForm {
    let [g0, g1, g2, g3] = g.0;
    TrigForm {
        c0: (g0 + g1 + g2 + g3) / 4.0,
        c1: (-g0 + g1 - g2 + g3) / 4.0,
        c2: (-g0 - g1 + g2 + g3) / 4.0,
        c3: (g0 - g1 - g2 + g3) / 4.0,
    }
}

/// Maclaurin coefficients of `sin(x - θ)` through `x³`.
fn shifted_sine_series(theta: f64) -> [f64; 4] {
    let (s, c) = theta.sin_cos();
    [-s, c, s / 2.0, -c / 6.0]
}

/// Product of two power series, truncated after `x³`.
fn mul_truncated(p: &[f64; 4], q: &[f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (i, &pi) in p.iter().enumerate() {
        for (j, &qj) in q.iter().enumerate().take(4 - i) {
            out[i + j] += pi * qj;
        }
    }
    out
}

/// Degree-3 Maclaurin polynomial of `f̂`, i.e. `a_k = f̂⁽ᵏ⁾(0) / k!`.
pub fn cubic_coefficients(params: &CircuitParams) -> CubicPoly {
    let t = trig_form(&params.g);
    let s1 = shifted_sine_series(params.theta1);
    let s2 = shifted_sine_series(params.theta2);
    let s12 = mul_truncated(&s1, &s2);
    let mut a = [0.0; 4];
    for k in 0..4 {
        a[k] = t.c1 * s1[k] + t.c2 * s2[k] + t.c3 * s12[k];
    }
    a[0] += t.c0;
    CubicPoly { a }
}

/// `|f̂(x) - P₃(x)|`, the error left by the cubic truncation.
pub fn cubic_remainder_check(params: &CircuitParams, x: f64) -> f64 {
    (closed_form_expectation(params, x) - cubic_coefficients(params).eval(x)).abs()
}

/// Degree-2 Maclaurin truncations of the four real amplitudes, as
/// `[q₀, q₁, q₂]` coefficients of `1, x, x²`, in basis order.
pub fn amplitude_quadratics(params: &CircuitParams) -> [[f64; 3]; 4] {
    // (cos(φ/2) ∓ sin(φ/2))/√2 = cos/sin(x/2 + β) with β = π/4 - θ/2.
    let qubit = |theta: f64| {
        let (sb, cb) = (FRAC_PI_4 - theta / 2.0).sin_cos();
        [[cb, -sb / 2.0, -cb / 8.0], [sb, cb / 2.0, -sb / 8.0]]
    };
    let first = qubit(params.theta2);
    let second = qubit(params.theta1);
    let mut out = [[0.0; 3]; 4];
    for bf in 0..2 {
        for bs in 0..2 {
            let (p, q) = (first[bf], second[bs]);
            out[2 * bf + bs] = [
                p[0] * q[0],
                p[0] * q[1] + p[1] * q[0],
                p[0] * q[2] + p[1] * q[1] + p[2] * q[0],
            ];
        }
    }
    out
}
