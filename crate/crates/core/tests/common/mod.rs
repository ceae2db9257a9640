//! Shared instance builders for the integration suites.

use leonard_core::*;

pub fn johnson_params(v: u64, d: usize) -> DualHahnParams {
    johnson_preset(v, d).unwrap()
}

pub fn hamming_params(n: u64, d: usize) -> KrawtchoukParams {
    hamming_preset(n, d).unwrap()
}

/// A q-Racah instance with `r2` derived from the product constraint.
pub fn q_racah_params(d: usize, q: Scalar, s: Scalar, s_star: Scalar, r1: Scalar) -> QRacahParams {
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
}

/// Three collision-free rational-q instances with d in {3, 4, 5}.
pub fn q_racah_instances() -> Vec<QRacahParams> {
    vec![
        q_racah_params(3, Scalar::int(2), Scalar::int(3), Scalar::int(5), Scalar::int(7)),
        q_racah_params(4, Scalar::int(2), Scalar::int(3), Scalar::int(5), Scalar::int(7)),
        q_racah_params(5, Scalar::int(3), Scalar::int(2), Scalar::int(7), Scalar::int(5)),
    ]
}

/// Every named test array: three Johnson presets, three Hamming presets,
/// and the three q-Racah instances.
pub fn all_test_arrays() -> Vec<(String, ParameterArray)> {
    let mut out = Vec::new();
    for (v, d) in [(7u64, 3usize), (9, 4), (12, 5)] {
        out.push((
            format!("johnson({v},{d})"),
            johnson_params(v, d).array().unwrap(),
        ));
    }
    for (n, d) in [(2u64, 2usize), (3, 4), (4, 3)] {
        out.push((
            format!("hamming({n},{d})"),
            hamming_params(n, d).array().unwrap(),
        ));
    }
    for params in q_racah_instances() {
        out.push((format!("q-racah(d={})", params.d), params.array().unwrap()));
    }
    out
}

pub fn system(p: &ParameterArray) -> EkrSystem {
    EkrSystem::new(&realize(p).unwrap()).unwrap()
}

/// A `beta = -2` array built from alternating-sign eigenvalue sequences by
/// solving the two compatibility relations with `varphi_1 = 1`.
pub fn alternating_base_array(d: usize) -> ParameterArray {
    let theta: Vec<Scalar> = (0..=d as i64)
        .map(|i| {
            let v = Scalar::int(1 + 3 * i);
            if i % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect();
    let theta_star: Vec<Scalar> = (0..=d as i64)
        .map(|i| {
            let v = Scalar::int(2 + 5 * i);
            if i % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect();
    let stub = ParameterArray::new(
        d,
        theta.clone(),
        theta_star.clone(),
        vec![Scalar::one(); d],
        vec![Scalar::one(); d],
    )
    .unwrap();
    let varphi_1 = Scalar::one();
    let phi: Vec<Scalar> = (1..=d)
        .map(|i| {
            &varphi_1 * stub.vartheta(i)
                + (&theta_star[i] - &theta_star[0]) * (&theta[d - i + 1] - &theta[0])
        })
        .collect();
    let phi_1 = phi[0].clone();
    let varphi: Vec<Scalar> = (1..=d)
        .map(|i| {
            &phi_1 * stub.vartheta(i)
                + (&theta_star[i] - &theta_star[0]) * (&theta[i - 1] - &theta[d])
        })
        .collect();
    ParameterArray::new(d, theta, theta_star, varphi, phi).unwrap()
}

pub fn pass(name: &str) {
    println!("acceptance: {name} ... PASS");
}
