#![allow(dead_code)]

use rand::Rng;
use tension_bvp::{parse, Problem, TridiagonalSystem};

/// Strictly diagonally dominant system of size `m` with O(1) entries.
pub fn random_dominant_system<R: Rng>(rng: &mut R, m: usize) -> TridiagonalSystem<f64> {
    let sub: Vec<f64> = (0..m.saturating_sub(1)).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let sup: Vec<f64> = (0..m.saturating_sub(1)).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let diag: Vec<f64> = (0..m)
        .map(|i| {
            let off = if i > 0 { sub[i - 1].abs() } else { 0.0 } + if i + 1 < m { sup[i].abs() } else { 0.0 };
            let mag = off + rng.gen_range(0.1..2.0);
            if rng.gen_bool(0.5) {
                mag
            } else {
                -mag
            }
        })
        .collect();
    let rhs: Vec<f64> = (0..m).map(|_| rng.gen_range(-10.0..10.0)).collect();
    TridiagonalSystem::new(sub, diag, sup, rhs).unwrap()
}

/// `||T y - rhs|| <= 1e-12 (||T|| ||y|| + ||rhs||)`.
pub fn residual_bound_holds(system: &TridiagonalSystem<f64>, y: &[f64]) -> bool {
    let r = system.residual_norm(y).unwrap();
    let y_norm = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    r <= 1e-12 * (system.norm_inf() * y_norm + system.rhs_norm_inf())
}

pub fn rel_inf_diff(a: &[f64], b: &[f64]) -> f64 {
    let diff = a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    let scale = b.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    diff / scale
}

/// `-y'' + y = 2 sin x` on [0, 1] with exact solution `sin x`.
pub fn sine_problem() -> Problem<f64> {
    Problem::new(
        1.0,
        parse("1").unwrap(),
        parse("2*sin(x)").unwrap(),
        (0.0, 1.0),
        (0.0, 1f64.sin()),
        Some(parse("sin(x)").unwrap()),
    )
    .unwrap()
}

/// log2 slopes of consecutive entries.
pub fn slopes(values: &[f64]) -> Vec<f64> {
    values.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}
