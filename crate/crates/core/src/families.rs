//! Constructors for the three closed-form families and two graph presets.
//!
//! Each constructor produces a [`ParameterArray`] from the family's raw
//! parameters and refuses degenerate inputs: the returned array always
//! passes [`ParameterArray::validate`]. The presets fix the free
//! normalizations at `theta_0 = theta*_0 = 0` and `h = 1`; every quantity
//! computed downstream is invariant under those choices.

use crate::parameter_array::{ParameterArray, ValidationReport};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("parameter precondition violated: {0}")]
    Precondition(String),
    #[error("degenerate parameters: {0}")]
    Degenerate(ValidationReport),
}

/// Raw parameters of the dual Hahn family:
/// `theta_i = theta_0 + h i (i + 1 + s)`, `theta*_i = theta*_0 + s* i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualHahnParams {
    pub d: usize,
    pub h: Scalar,
    pub s: Scalar,
    pub s_star: Scalar,
    pub r: Scalar,
    pub theta0: Scalar,
    pub theta0_star: Scalar,
}

/// Raw parameters of the Krawtchouk family:
/// `theta_i = theta_0 + s i`, `theta*_i = theta*_0 + s* i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrawtchoukParams {
    pub d: usize,
    pub r: Scalar,
    pub s: Scalar,
    pub s_star: Scalar,
    pub theta0: Scalar,
    pub theta0_star: Scalar,
}

/// Raw parameters of the general q-Racah family, subject to
/// `r1 r2 = s s* q^(d+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QRacahParams {
    pub d: usize,
    pub h: Scalar,
    pub h_star: Scalar,
    pub r1: Scalar,
    pub r2: Scalar,
    pub s: Scalar,
    pub s_star: Scalar,
    pub q: Scalar,
    pub theta0: Scalar,
    pub theta0_star: Scalar,
}

impl DualHahnParams {
    pub fn array(&self) -> Result<ParameterArray, FamilyError> {
        dual_hahn(self)
    }
}

impl KrawtchoukParams {
    pub fn array(&self) -> Result<ParameterArray, FamilyError> {
        krawtchouk(self)
    }
}

impl QRacahParams {
    pub fn array(&self) -> Result<ParameterArray, FamilyError> {
        q_racah(self)
    }
}

fn finish(
    d: usize,
    theta: Vec<Scalar>,
    theta_star: Vec<Scalar>,
    varphi: Vec<Scalar>,
    phi: Vec<Scalar>,
) -> Result<ParameterArray, FamilyError> {
    let array = ParameterArray::new(d, theta, theta_star, varphi, phi)
        .expect("family constructor produced wrong sequence lengths");
    let report = array.validate();
    if report.is_valid() {
        Ok(array)
    } else {
        Err(FamilyError::Degenerate(report))
    }
}

fn require(cond: bool, msg: &str) -> Result<(), FamilyError> {
    if cond {
        Ok(())
    } else {
        Err(FamilyError::Precondition(msg.to_owned()))
    }
}

/// Builds the dual Hahn array
/// `varphi_i = h s* i (i-d-1) (i+r)`, `phi_i = h s* i (i-d-1) (i+r-s-d-1)`.
pub fn dual_hahn(params: &DualHahnParams) -> Result<ParameterArray, FamilyError> {
    let DualHahnParams {
        d,
        h,
        s,
        s_star,
        r,
        theta0,
        theta0_star,
    } = params;
    let d = *d;
    require(d >= 1, "d must be at least 1")?;
    require(!h.is_zero(), "h must be nonzero")?;
    require(!s_star.is_zero(), "s_star must be nonzero")?;
    let di = Scalar::int(d as i64);
    let theta = (0..=d as i64)
        .map(|i| {
            let iv = Scalar::int(i);
            theta0 + h * &iv * (&iv + Scalar::one() + s)
        })
        .collect();
    let theta_star = (0..=d as i64)
        .map(|i| theta0_star + s_star * Scalar::int(i))
        .collect();
    let varphi = (1..=d as i64)
        .map(|i| {
            let iv = Scalar::int(i);
            h * s_star * &iv * (&iv - &di - Scalar::one()) * (&iv + r)
        })
        .collect();
    let phi = (1..=d as i64)
        .map(|i| {
            let iv = Scalar::int(i);
            h * s_star * &iv * (&iv - &di - Scalar::one()) * (&iv + r - s - &di - Scalar::one())
        })
        .collect();
    finish(d, theta, theta_star, varphi, phi)
}

/// Builds the Krawtchouk array
/// `varphi_i = r i (i-d-1)`, `phi_i = (r - s s*) i (i-d-1)`.
pub fn krawtchouk(params: &KrawtchoukParams) -> Result<ParameterArray, FamilyError> {
    let KrawtchoukParams {
        d,
        r,
        s,
        s_star,
        theta0,
        theta0_star,
    } = params;
    let d = *d;
    require(d >= 1, "d must be at least 1")?;
    require(!r.is_zero(), "r must be nonzero")?;
    require(!s.is_zero(), "s must be nonzero")?;
    require(!s_star.is_zero(), "s_star must be nonzero")?;
    require(r != &(s * s_star), "r must differ from s*s_star")?;
    let di = Scalar::int(d as i64);
    let theta = (0..=d as i64).map(|i| theta0 + s * Scalar::int(i)).collect();
    let theta_star = (0..=d as i64)
        .map(|i| theta0_star + s_star * Scalar::int(i))
        .collect();
    let varphi = (1..=d as i64)
        .map(|i| {
            let iv = Scalar::int(i);
            r * &iv * (&iv - &di - Scalar::one())
        })
        .collect();
    let phi = (1..=d as i64)
        .map(|i| {
            let iv = Scalar::int(i);
            (r - s * s_star) * &iv * (&iv - &di - Scalar::one())
        })
        .collect();
    finish(d, theta, theta_star, varphi, phi)
}

/// Builds the general q-Racah array. Besides the displayed sequences this
/// enforces `r1 r2 = s s* q^(d+1)` and `q` outside `{0, 1, -1}` (the
/// formulas divide by `1 - q^k`).
pub fn q_racah(params: &QRacahParams) -> Result<ParameterArray, FamilyError> {
    let QRacahParams {
        d,
        h,
        h_star,
        r1,
        r2,
        s,
        s_star,
        q,
        theta0,
        theta0_star,
    } = params;
    let d = *d;
    require(d >= 1, "d must be at least 1")?;
    for (name, value) in [
        ("h", h),
        ("h_star", h_star),
        ("r1", r1),
        ("r2", r2),
        ("s", s),
        ("s_star", s_star),
        ("q", q),
    ] {
        require(!value.is_zero(), &format!("{name} must be nonzero"))?;
    }
    require(
        q != &Scalar::one() && q != &Scalar::int(-1),
        "q must differ from 1 and -1",
    )?;
    require(
        r1 * r2 == s * s_star * q.pow(d as i64 + 1),
        "constraint violated: r1*r2 must equal s*s_star*q^(d+1)",
    )?;
    let one = Scalar::one();
    let theta: Vec<Scalar> = (0..=d as i64)
        .map(|i| {
            theta0 + h * (&one - q.pow(i)) * (&one - s * q.pow(i + 1)) * q.pow(-i)
        })
        .collect();
    let theta_star: Vec<Scalar> = (0..=d as i64)
        .map(|i| {
            theta0_star + h_star * (&one - q.pow(i)) * (&one - s_star * q.pow(i + 1)) * q.pow(-i)
        })
        .collect();
    let varphi: Vec<Scalar> = (1..=d as i64)
        .map(|i| {
            h * h_star
                * q.pow(1 - 2 * i)
                * (&one - q.pow(i))
                * (&one - q.pow(i - d as i64 - 1))
                * (&one - r1 * q.pow(i))
                * (&one - r2 * q.pow(i))
        })
        .collect();
    let phi: Vec<Scalar> = (1..=d as i64)
        .map(|i| {
            h * h_star
                * q.pow(1 - 2 * i)
                * (&one - q.pow(i))
                * (&one - q.pow(i - d as i64 - 1))
                * (r1 - s_star * q.pow(i))
                * (r2 - s_star * q.pow(i))
                / s_star
        })
        .collect();
    finish(d, theta, theta_star, varphi, phi)
}

/// Dual Hahn specialization carried by the Johnson graph `J(v, d)`:
/// `r = d - v - 1`, `s = -v - 2`, `s* = -v(v-1) / (d(v-d))`, with the free
/// normalizations `h = 1`, `theta_0 = theta*_0 = 0`.
pub fn johnson_preset(v: u64, d: usize) -> Result<DualHahnParams, FamilyError> {
    require(d >= 1, "d must be at least 1")?;
    require(
        v > 2 * d as u64,
        "the Johnson regime requires v > 2d",
    )?;
    let vd = v as i64;
    let dd = d as i64;
    Ok(DualHahnParams {
        d,
        h: Scalar::one(),
        s: Scalar::int(-vd - 2),
        s_star: Scalar::ratio(-(vd * (vd - 1)), dd * (vd - dd)),
        r: Scalar::int(dd - vd - 1),
        theta0: Scalar::zero(),
        theta0_star: Scalar::zero(),
    })
}

/// Krawtchouk specialization carried by the Hamming graph `H(d, n)`:
/// `r = n(n-1)`, `s = s* = -n`, with `theta_0 = theta*_0 = 0`.
pub fn hamming_preset(n: u64, d: usize) -> Result<KrawtchoukParams, FamilyError> {
    require(d >= 1, "d must be at least 1")?;
    require(n >= 2, "the Hamming preset requires n >= 2")?;
    let ni = n as i64;
    Ok(KrawtchoukParams {
        d,
        r: Scalar::int(ni * (ni - 1)),
        s: Scalar::int(-ni),
        s_star: Scalar::int(-ni),
        theta0: Scalar::zero(),
        theta0_star: Scalar::zero(),
    })
}
