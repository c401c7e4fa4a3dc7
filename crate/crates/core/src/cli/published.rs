//! Published maximum errors for the fourth-order scheme, used to annotate
//! `reproduce` output.

/// Example 4.1: rows eps = 1/16, 1/32, 1/64, 1/128; columns N = 16..256.
pub const TABLE1_EPS_DENOMINATORS: [usize; 4] = [16, 32, 64, 128];
pub const TABLE1_N: [usize; 5] = [16, 32, 64, 128, 256];
pub const TABLE1: [[f64; 5]; 4] = [
    [6.09e-7, 0.780e-8, 1.32e-7, 9.98e-9, 1.19e-15],
    [1.12e-6, 1.24e-8, 8.87e-8, 6.52e-9, 4.62e-15],
    [3.54e-6, 2.78e-7, 7.89e-7, 2.54e-8, 9.14e-10],
    [2.27e-5, 1.23e-7, 5.41e-7, 5.55e-8, 4.78e-9],
];

/// Example 4.2: rows eps = 0.1e-3 .. 0.1e-8; columns N = 16, 32.
pub const TABLE2_EPS: [f64; 6] = [1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9];
pub const TABLE2_N: [usize; 2] = [16, 32];
pub const TABLE2: [[f64; 2]; 6] = [
    [0.78e-15, 1.28e-15],
    [0.76e-15, 1.36e-15],
    [0.87e-15, 1.36e-15],
    [0.91e-15, 1.49e-15],
    [0.65e-15, 1.65e-15],
    [2.71e-15, 3.71e-15],
];

/// Errors below this are roundoff; two such values count as agreeing.
pub const ROUNDOFF_LEVEL: f64 = 1e-12;

/// Same decade, or both at roundoff level.
pub fn agrees(ours: f64, published: f64) -> bool {
    if ours <= ROUNDOFF_LEVEL && published <= ROUNDOFF_LEVEL {
        return true;
    }
    ours > 0.0 && (ours / published).log10().abs() <= 1.0
}
