//! Randomized self-checks of the simulator against the closed form and the
//! cubic truncation. Draw `i` is generated from seed `master + i`, so a
//! failing draw can be replayed on its own.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic::{closed_form_expectation, cubic_coefficients, trig_form};
use crate::chemotaxis::restart_seed;
use crate::circuit::{expectation, CircuitParams, StateVector};
use crate::error::{Error, Result};

pub const EQUIVALENCE_TOL: f64 = 1e-12;
pub const NORM_TOL: f64 = 1e-12;
pub const IMAG_TOL: f64 = 1e-15;
pub const BOUND_TOL: f64 = 1e-12;
pub const PERIOD_TOL: f64 = 1e-12;
/// Nominal range of `r(2h) / r(h)` for the cubic remainder (ideal 16).
pub const REMAINDER_RATIO: (f64, f64) = (4.0, 64.0);
pub const REMAINDER_STEP: f64 = 1e-2;
/// Absolute slack on the remainder bound for evaluation round-off.
pub const REMAINDER_SLACK: f64 = 1e-13;

/// Lagrange bound `|f̂(x) - P₃(x)| <= C·x⁴` with
/// `C = (|c₁| + |c₂| + 8|c₃|) / 24`, since `|d⁴/dx⁴ sin(x-θ)| <= 1` and
/// `sin(x-θ₁)·sin(x-θ₂) = (cos(θ₂-θ₁) - cos(2x-θ₁-θ₂)) / 2`.
pub fn remainder_bound(params: &CircuitParams, x: f64) -> f64 {
    let t = trig_form(&params.g);
    (t.c1.abs() + t.c2.abs() + 8.0 * t.c3.abs()) / 24.0 * x.powi(4)
}

/// State preparation under test.
pub type Prepare = fn(&CircuitParams, f64) -> StateVector;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Draw {
    pub seed: u64,
    pub params: CircuitParams,
    pub x: f64,
}

/// `θ ~ U(-π, π)`, `g ~ U(-2, 2)`, `x ~ U(-2π, 2π)`.
pub fn draw(seed: u64) -> Draw {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let theta1 = rng.random_range(-PI..PI);
    let theta2 = rng.random_range(-PI..PI);
    let mut g = [0.0; 4];
    for v in &mut g {
        *v = rng.random_range(-2.0..2.0);
    }
    let x = rng.random_range(-2.0 * PI..2.0 * PI);
    Draw {
        seed,
        params: CircuitParams::from_array([theta1, theta2, g[0], g[1], g[2], g[3]]),
        x,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Worst observed statistic, in the suite's own units.
    pub worst: f64,
    pub detail: String,
    pub failing_seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub trials: usize,
    pub seed: u64,
    pub suites: Vec<SuiteOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }
}

struct Tracker {
    name: &'static str,
    worst: f64,
    failing_seed: Option<u64>,
}

impl Tracker {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            worst: 0.0,
            failing_seed: None,
        }
    }

    fn record(&mut self, seed: u64, stat: f64, ok: bool) {
        if stat > self.worst || stat.is_nan() {
            self.worst = stat;
        }
        if !ok && self.failing_seed.is_none() {
            self.failing_seed = Some(seed);
        }
    }

    fn finish(self, detail: String) -> SuiteOutcome {
        SuiteOutcome {
            name: self.name,
            passed: self.failing_seed.is_none(),
            worst: self.worst,
            detail,
            failing_seed: self.failing_seed,
        }
    }
}

pub fn run(trials: usize, seed: u64) -> Result<VerifyReport> {
    run_with(trials, seed, crate::circuit::prepare_state)
}

/// Runs every suite against an arbitrary state preparation.
pub fn run_with(trials: usize, seed: u64, prepare: Prepare) -> Result<VerifyReport> {
    if trials == 0 {
        return Err(Error::Config("verify needs at least one trial".into()));
    }
    let fhat = |p: &CircuitParams, x: f64| expectation(&prepare(p, x), &p.g);

    let mut equivalence = Tracker::new("oracle-equivalence");
    let mut normalization = Tracker::new("normalization");
    let mut boundedness = Tracker::new("boundedness");
    let mut periodicity = Tracker::new("periodicity");
    let mut remainder = Tracker::new("cubic-remainder");
    let (mut ratio_lo, mut ratio_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut ratio_outliers = 0;

    for i in 0..trials {
        let d = draw(restart_seed(seed, i));
        let p = &d.params;
        let state = prepare(p, d.x);
        let value = expectation(&state, &p.g);

        let diff = (value - closed_form_expectation(p, d.x)).abs();
        equivalence.record(d.seed, diff, diff <= EQUIVALENCE_TOL);

        let norm_err = (state.norm_sqr() - 1.0).abs();
        let imag = state
            .amplitudes()
            .iter()
            .map(|a| a.im.abs())
            .fold(0.0, f64::max);
        normalization.record(d.seed, norm_err, norm_err <= NORM_TOL && imag <= IMAG_TOL);

        let excess = (p.g.min() - value).max(value - p.g.max()).max(0.0);
        boundedness.record(d.seed, excess, excess <= BOUND_TOL);

        let shift = (fhat(p, d.x + 2.0 * PI) - value).abs();
        periodicity.record(d.seed, shift, shift <= PERIOD_TOL);

        let cubic = cubic_coefficients(p);
        let r = |x: f64| (fhat(p, x) - cubic.eval(x)).abs();
        let mut excess: f64 = 0.0;
        for x in [
            -2.0 * REMAINDER_STEP,
            -REMAINDER_STEP,
            REMAINDER_STEP,
            2.0 * REMAINDER_STEP,
        ] {
            excess = excess.max(r(x) - remainder_bound(p, x));
        }
        remainder.record(d.seed, excess.max(0.0), excess <= REMAINDER_SLACK);
        // The ratio is reported only: it leaves the nominal range when the
        // x⁴ coefficient nearly cancels against the x⁵ term (~0.1% of draws).
        let ratio = r(2.0 * REMAINDER_STEP) / r(REMAINDER_STEP);
        if !(REMAINDER_RATIO.0..=REMAINDER_RATIO.1).contains(&ratio) {
            ratio_outliers += 1;
        }
        ratio_lo = ratio_lo.min(ratio);
        ratio_hi = ratio_hi.max(ratio);
    }

    let suites = vec![
        equivalence.finish(format!("max |sim - closed form| (tol {EQUIVALENCE_TOL:e})")),
        normalization.finish(format!("max | |psi|^2 - 1 | (tol {NORM_TOL:e}, imag tol {IMAG_TOL:e})")),
        boundedness.finish(format!("max excursion outside [min g, max g] (tol {BOUND_TOL:e})")),
        periodicity.finish(format!("max |f(x + 2pi) - f(x)| (tol {PERIOD_TOL:e})")),
        remainder.finish(format!(
            "max excess over C*x^4 bound (slack {REMAINDER_SLACK:e}); r(2h)/r(h) in [{ratio_lo:.3}, {ratio_hi:.3}], {ratio_outliers} outside [{}, {}]",
            REMAINDER_RATIO.0, REMAINDER_RATIO.1
        )),
    ];
    Ok(VerifyReport {
        trials,
        seed,
        suites,
    })
}
