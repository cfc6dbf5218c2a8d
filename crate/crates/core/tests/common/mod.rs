//! Test-only oracles, kept independent of the library's analytic paths.
#![allow(dead_code)]

/// Fourth-order central stencils `(offset, weight)` for derivatives 1..=3.
const STENCILS: [&[(i32, f64)]; 3] = [
    &[
        (-2, 1.0 / 12.0),
        (-1, -2.0 / 3.0),
        (1, 2.0 / 3.0),
        (2, -1.0 / 12.0),
    ],
    &[
        (-2, -1.0 / 12.0),
        (-1, 4.0 / 3.0),
        (0, -5.0 / 2.0),
        (1, 4.0 / 3.0),
        (2, -1.0 / 12.0),
    ],
    &[
        (-3, 1.0 / 8.0),
        (-2, -1.0),
        (-1, 13.0 / 8.0),
        (1, -13.0 / 8.0),
        (2, 1.0),
        (3, -1.0 / 8.0),
    ],
];

/// `f⁽ᵏ⁾(0) / k!` by central finite differences with step `h`.
pub fn taylor_coefficient(f: impl Fn(f64) -> f64, k: usize, h: f64) -> f64 {
    if k == 0 {
        return f(0.0);
    }
    let d: f64 = STENCILS[k - 1]
        .iter()
        .map(|&(i, w)| w * f(i as f64 * h))
        .sum::<f64>()
        / h.powi(k as i32);
    d / (1..=k).product::<usize>() as f64
}

/// Plain Nelder–Mead minimizer.
pub fn nelder_mead(
    f: impl Fn(&[f64]) -> f64,
    start: &[f64],
    scale: f64,
    iters: usize,
) -> (Vec<f64>, f64) {
    let n = start.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = (0..=n)
        .map(|i| {
            let mut p = start.to_vec();
            if i > 0 {
                p[i - 1] += scale;
            }
            let v = f(&p);
            (p, v)
        })
        .collect();
    for _ in 0..iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|p| p.0[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n].0)
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };
        let xr = along(-1.0);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = along(-2.0);
            let fe = f(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let xc = along(0.5);
            let fc = f(&xc);
            if fc < simplex[n].1 {
                simplex[n] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for p in simplex.iter_mut().skip(1) {
                    for (x, b) in p.0.iter_mut().zip(&best) {
                        *x = b + 0.5 * (*x - b);
                    }
                    p.1 = f(&p.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}

#[test]
fn oracles_self_check() {
    // exp: all Taylor coefficients are 1/k!
    for k in 0..4 {
        let want = 1.0 / (1..=k).product::<usize>() as f64;
        assert!((taylor_coefficient(f64::exp, k, 1e-3) - want).abs() < 1e-8);
    }
    let (x, v) = nelder_mead(
        |p| (p[0] - 1.0).powi(2) + 10.0 * (p[1] + 2.0).powi(2),
        &[0.0, 0.0],
        0.5,
        400,
    );
    assert!(v < 1e-12 && (x[0] - 1.0).abs() < 1e-5 && (x[1] + 2.0).abs() < 1e-5);
}
