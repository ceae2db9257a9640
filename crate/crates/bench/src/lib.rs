//! Shared instance builders for the benchmark targets.

use leonard_core::*;

/// Johnson-preset array of diameter `d` (with `v = 2d + 1`, the smallest
/// admissible choice, so the diameter is the only size knob).
pub fn johnson_array(d: usize) -> ParameterArray {
    johnson_preset(2 * d as u64 + 1, d)
        .unwrap()
        .array()
        .unwrap()
}

/// Hamming-preset array over a ternary alphabet.
pub fn hamming_array(d: usize) -> ParameterArray {
    hamming_preset(3, d).unwrap().array().unwrap()
}

/// A collision-free q-Racah array at `q = 2`.
pub fn q_racah_array(d: usize) -> ParameterArray {
    let (q, s, s_star, r1) = (
        Scalar::int(2),
        Scalar::int(3),
        Scalar::int(5),
        Scalar::int(7),
    );
    let r2 = &s * &s_star * q.pow(d as i64 + 1) / &r1;
    QRacahParams {
        d,
        h: Scalar::one(),
        h_star: Scalar::one(),
        r1,
        r2,
        s,
        s_star,
        q,
        theta0: Scalar::zero(),
        theta0_star: Scalar::zero(),
    }
    .array()
    .unwrap()
}
