//! Chemotaxis: greedy Gaussian random walk over `(θ₁, θ₂, g₀..g₃)`.
//!
//! Each iteration proposes one step and costs one objective evaluation. A
//! fresh step is drawn from `N(0, σ²)` per coordinate; after a successful
//! step the same step is retried until it stops improving ("run"). Every
//! `fail_streak` consecutive failed fresh draws shrink `σ` by
//! `sigma_shrink`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::circuit::CircuitParams;
use crate::error::{Error, Result};
use crate::objective::{max_pointwise_error, performance_index, SampleGrid, TargetFunction};

const DIM: usize = CircuitParams::DIM;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Init {
    /// Draw the start point with [`random_init`] from the run seed.
    Random,
    Params(CircuitParams),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizerConfig {
    pub iterations: usize,
    pub sigma0: f64,
    pub sigma_shrink: f64,
    pub fail_streak: usize,
    pub init: Init,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            iterations: 5000,
            sigma0: 0.3,
            sigma_shrink: 0.7,
            fail_streak: 50,
            init: Init::Random,
            seed: 42,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma0.is_finite() && self.sigma0 > 0.0) {
            return Err(Error::Config(format!(
                "sigma0 must be > 0, got {}",
                self.sigma0
            )));
        }
        if !(self.sigma_shrink > 0.0 && self.sigma_shrink < 1.0) {
            return Err(Error::Config(format!(
                "sigma_shrink must lie in (0, 1), got {}",
                self.sigma_shrink
            )));
        }
        if self.fail_streak == 0 {
            return Err(Error::Config("fail_streak must be at least 1".into()));
        }
        if let Init::Params(p) = &self.init {
            if !p.is_finite() {
                return Err(Error::Config("initial parameters must be finite".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitResult {
    pub best: CircuitParams,
    pub j_final: f64,
    /// `(iteration, best J so far)`, recorded at 0, at every improvement,
    /// and at the final iteration.
    pub j_trace: Vec<(usize, f64)>,
    pub epsilon: f64,
    pub evals: usize,
}

/// Start point: `θᵢ ~ U(-π, π)`, `gᵢ ~ U(-2, 2)`.
pub fn random_init(seed: u64) -> CircuitParams {
    draw_init(&mut ChaCha8Rng::seed_from_u64(seed))
}

fn draw_init<R: Rng>(rng: &mut R) -> CircuitParams {
    use std::f64::consts::PI;
    let mut v = [0.0; DIM];
    for (i, slot) in v.iter_mut().enumerate() {
        let half = if i < 2 { PI } else { 2.0 };
        *slot = rng.random_range(-half..half);
    }
    CircuitParams::from_array(v)
}

/// One chemotaxis run from `cfg.init`.
pub fn optimize(
    target: &TargetFunction,
    grid: &SampleGrid,
    cfg: &OptimizerConfig,
) -> Result<FitResult> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let start = match cfg.init {
        Init::Random => draw_init(&mut rng),
        Init::Params(p) => p,
    };

    let objective = |v: &[f64; DIM], iteration: usize| {
        let j = performance_index(&CircuitParams::from_array(*v), target, grid);
        if j.is_finite() {
            Ok(j)
        } else {
            Err(Error::NonFiniteObjective {
                iteration,
                value: j,
            })
        }
    };

    let mut point = start.to_array();
    let mut j = objective(&point, 0)?;
    let mut evals = 1;
    let mut trace = vec![(0, j)];

    let mut sigma = cfg.sigma0;
    let mut failures = 0;
    let mut run: Option<[f64; DIM]> = None;

    for iteration in 1..=cfg.iterations {
        let step = match run {
            Some(step) => step,
            None => {
                let mut step = [0.0; DIM];
                for s in &mut step {
                    *s = sigma * rng.sample::<f64, _>(StandardNormal);
                }
                step
            }
        };
        let mut candidate = point;
        for (c, s) in candidate.iter_mut().zip(&step) {
            *c += s;
        }
        let jc = objective(&candidate, iteration)?;
        evals += 1;

        if jc < j {
            point = candidate;
            j = jc;
            run = Some(step);
            failures = 0;
            trace.push((iteration, j));
        } else if run.take().is_none() {
            failures += 1;
            if failures >= cfg.fail_streak {
                sigma *= cfg.sigma_shrink;
                failures = 0;
            }
        }
    }
    if trace.last().map(|&(it, _)| it) != Some(cfg.iterations) {
        trace.push((cfg.iterations, j));
    }

    let best = CircuitParams::from_array(point);
    Ok(FitResult {
        best,
        j_final: j,
        j_trace: trace,
        epsilon: max_pointwise_error(&best, target, grid),
        evals,
    })
}

/// Outcome of [`optimize_restarts`].
#[derive(Clone, Debug, PartialEq)]
pub struct MultiStartResult {
    pub best: FitResult,
    pub best_restart: usize,
    /// Final `J` of every restart, by restart index.
    pub restart_j: Vec<f64>,
    pub total_evals: usize,
}

/// Seed of restart `index` given the master seed.
pub fn restart_seed(master: u64, index: usize) -> u64 {
    master.wrapping_add(index as u64)
}

/// Runs `restarts` independent chemotaxis runs (in parallel) seeded with
/// [`restart_seed`] and keeps the lowest final `J`, ties going to the lowest
/// restart index.
pub fn optimize_restarts(
    target: &TargetFunction,
    grid: &SampleGrid,
    cfg: &OptimizerConfig,
    restarts: usize,
) -> Result<MultiStartResult> {
    if restarts == 0 {
        return Err(Error::Config("restarts must be at least 1".into()));
    }
    cfg.validate()?;
    let runs = (0..restarts)
        .into_par_iter()
        .map(|i| {
            let cfg = OptimizerConfig {
                seed: restart_seed(cfg.seed, i),
                ..*cfg
            };
            optimize(target, grid, &cfg)
        })
        .collect::<Result<Vec<_>>>()?;

    let best_restart = runs.iter().enumerate().fold(0, |best, (i, r)| {
        if r.j_final < runs[best].j_final {
            i
        } else {
            best
        }
    });
    let restart_j = runs.iter().map(|r| r.j_final).collect();
    let total_evals = runs.iter().map(|r| r.evals).sum();
    Ok(MultiStartResult {
        best: runs.into_iter().nth(best_restart).expect("restarts >= 1"),
        best_restart,
        restart_j,
        total_evals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::fhat;
    use crate::objective::make_grid;

    fn grid() -> SampleGrid {
        make_grid(30, 1.5).unwrap()
    }

    #[test]
    fn zero_iterations_is_a_no_op() {
        let start = CircuitParams::new(0.2, -0.4, [0.1, 0.5, -0.3, 1.0]).unwrap();
        let cfg = OptimizerConfig {
            iterations: 0,
            init: Init::Params(start),
            ..Default::default()
        };
        let r = optimize(&TargetFunction::Quadratic, &grid(), &cfg).unwrap();
        let j0 = performance_index(&start, &TargetFunction::Quadratic, &grid());
        assert_eq!(r.best, start);
        assert_eq!(r.j_trace, vec![(0, j0)]);
        assert_eq!(r.j_final, j0);
        assert_eq!(r.evals, 1);
    }

    #[test]
    fn same_seed_same_result() {
        let cfg = OptimizerConfig {
            iterations: 800,
            seed: 9,
            ..Default::default()
        };
        let a = optimize(&TargetFunction::Sigmoid, &grid(), &cfg).unwrap();
        let b = optimize(&TargetFunction::Sigmoid, &grid(), &cfg).unwrap();
        assert_eq!(a, b);
        let c = optimize(
            &TargetFunction::Sigmoid,
            &grid(),
            &OptimizerConfig { seed: 10, ..cfg },
        )
        .unwrap();
        assert_ne!(a.best, c.best);
    }

    #[test]
    fn trace_is_monotone_and_accounted() {
        let cfg = OptimizerConfig {
            iterations: 1500,
            seed: 3,
            ..Default::default()
        };
        let r = optimize(&TargetFunction::Gaussian, &grid(), &cfg).unwrap();
        assert!(r
            .j_trace
            .windows(2)
            .all(|w| w[1].1 <= w[0].1 && w[1].0 > w[0].0));
        assert_eq!(r.j_trace.last().unwrap(), &(1500, r.j_final));
        assert_eq!(r.evals, 1501);
        assert!(r.epsilon * r.epsilon <= r.j_final);
    }

    #[test]
    fn rejects_bad_config() {
        let g = grid();
        let t = TargetFunction::Quadratic;
        for cfg in [
            OptimizerConfig {
                sigma0: 0.0,
                ..Default::default()
            },
            OptimizerConfig {
                sigma0: f64::NAN,
                ..Default::default()
            },
            OptimizerConfig {
                sigma_shrink: 1.0,
                ..Default::default()
            },
            OptimizerConfig {
                sigma_shrink: 0.0,
                ..Default::default()
            },
            OptimizerConfig {
                fail_streak: 0,
                ..Default::default()
            },
        ] {
            assert!(matches!(optimize(&t, &g, &cfg), Err(Error::Config(_))));
        }
        assert!(optimize_restarts(&t, &g, &OptimizerConfig::default(), 0).is_err());
    }

    #[test]
    fn non_finite_objective_is_an_error() {
        let t = TargetFunction::custom(|x| if x > 1.0 { f64::NAN } else { x });
        let cfg = OptimizerConfig {
            iterations: 10,
            ..Default::default()
        };
        assert!(matches!(
            optimize(&t, &grid(), &cfg),
            Err(Error::NonFiniteObjective { iteration: 0, .. })
        ));
    }

    #[test]
    fn random_init_ranges() {
        assert_eq!(random_init(5), random_init(5));
        let mut sums = [0.0; DIM];
        for seed in 0..1000 {
            let v = random_init(seed).to_array();
            for (i, x) in v.iter().enumerate() {
                let half = if i < 2 { std::f64::consts::PI } else { 2.0 };
                assert!(*x > -half && *x < half);
                sums[i] += x;
            }
        }
        for s in sums {
            assert!((s / 1000.0).abs() < 0.2);
        }
    }

    #[test]
    fn self_fit_recovers_known_optimum() {
        let truth = CircuitParams::new(0.6, -0.9, [-0.4, 1.1, 0.8, 1.9]).unwrap();
        let target = TargetFunction::custom(move |x| fhat(&truth, x));
        let mut start = truth.to_array();
        for (i, v) in start.iter_mut().enumerate() {
            *v += if i % 2 == 0 { 0.3 } else { -0.25 };
        }
        let cfg = OptimizerConfig {
            init: Init::Params(CircuitParams::from_array(start)),
            seed: 1,
            ..Default::default()
        };
        // single runs from this start can settle near J ~ 1.6e-3
        let r = optimize_restarts(&target, &grid(), &cfg, 10).unwrap();
        assert!(r.best.j_final <= 1e-3, "J = {}", r.best.j_final);
    }

    #[test]
    fn restarts_pick_lowest_and_count_evals() {
        let cfg = OptimizerConfig {
            iterations: 300,
            seed: 100,
            ..Default::default()
        };
        let m = optimize_restarts(&TargetFunction::Quadratic, &grid(), &cfg, 4).unwrap();
        assert_eq!(m.restart_j.len(), 4);
        assert_eq!(m.total_evals, 4 * 301);
        let min = m.restart_j.iter().copied().fold(f64::INFINITY, f64::min);
        assert_eq!(m.best.j_final, min);
        assert_eq!(
            m.restart_j.iter().position(|&j| j == min),
            Some(m.best_restart)
        );
        let single = optimize(
            &TargetFunction::Quadratic,
            &grid(),
            &OptimizerConfig {
                seed: restart_seed(100, m.best_restart),
                ..cfg
            },
        )
        .unwrap();
        assert_eq!(single, m.best);
    }
}
