//! Parameter arrays of Leonard systems.
//!
//! A parameter array `({theta_i}; {theta*_i}; {varphi_i}; {phi_i})` is the
//! isomorphism invariant of a Leonard system of diameter `d`. This module
//! validates candidate arrays, computes the derived quantities (the
//! recurrence constant `beta`, the ratio sums `vartheta_i`, the `tau`/`eta`
//! eigenvalue polynomials), and implements the order-8 symmetry action on
//! arrays.

use serde::{Deserialize, Serialize};

use crate::d4::D4Element;
use crate::scalar::Scalar;

/// Structural problem that prevents even building a [`ParameterArray`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("diameter must be at least 1, got {0}")]
    DiameterTooSmall(usize),
    #[error("sequence {name} has length {got}, expected {expected}")]
    LengthMismatch {
        name: &'static str,
        got: usize,
        expected: usize,
    },
}

/// A single failed validation condition, with the indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationFailure {
    /// `theta_i = theta_j` for `i != j`.
    ThetaRepeated { i: usize, j: usize },
    /// `theta*_i = theta*_j` for `i != j`.
    ThetaStarRepeated { i: usize, j: usize },
    /// `varphi_i = 0`.
    VarphiZero { i: usize },
    /// `phi_i = 0`.
    PhiZero { i: usize },
    /// The compatibility relation
    /// `phi_i = varphi_1 vartheta_i + (theta*_i - theta*_0)(theta_{d-i+1} - theta_0)`
    /// fails at index `i`.
    PhiRelation { i: usize },
    /// The three-term ratio `(theta_{i-2} - theta_{i+1}) / (theta_{i-1} - theta_i)`
    /// differs from the one at `i = 2` (primal or dual sequence).
    RecurrenceInconsistent { dual: bool, i: usize },
}

impl std::fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::ThetaRepeated { i, j } => write!(f, "theta not distinct ({i}, {j})"),
            Self::ThetaStarRepeated { i, j } => write!(f, "theta_star not distinct ({i}, {j})"),
            Self::VarphiZero { i } => write!(f, "varphi[{i}] zero"),
            Self::PhiZero { i } => write!(f, "phi[{i}] zero"),
            Self::PhiRelation { i } => write!(f, "phi relation fails at i = {i}"),
            Self::RecurrenceInconsistent { dual, i } => {
                let seq = if *dual { "theta_star" } else { "theta" };
                write!(f, "eigenvalue recurrence inconsistent for {seq} at i = {i}")
            }
        }
    }
}

/// Outcome of [`ParameterArray::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_valid() {
            write!(f, "valid")
        } else {
            let msgs: Vec<String> = self.failures.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", msgs.join("; "))
        }
    }
}

/// Classification of the base `q` (where `q + 1/q = beta`) as far as the
/// direct-sum criterion needs it: only "is `q = -1`" matters, which is
/// exactly `beta = -2`. `q` itself is never extracted since it may live in a
/// quadratic extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseClass {
    /// `d < 3`: the recurrence is vacuous and the base is arbitrary.
    SmallD,
    /// `beta = -2`, i.e. `q = -1`.
    QIsMinusOne { beta: Scalar },
    /// `beta != -2`.
    QNotMinusOne { beta: Scalar },
}

impl BaseClass {
    pub fn beta(&self) -> Option<&Scalar> {
        match self {
            BaseClass::SmallD => None,
            BaseClass::QIsMinusOne { beta } | BaseClass::QNotMinusOne { beta } => Some(beta),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawParameterArray {
    d: usize,
    theta: Vec<Scalar>,
    theta_star: Vec<Scalar>,
    varphi: Vec<Scalar>,
    phi: Vec<Scalar>,
}

/// The parameter array `({theta_i}_0^d; {theta*_i}_0^d; {varphi_i}_1^d; {phi_i}_1^d)`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawParameterArray", into = "RawParameterArray")]
pub struct ParameterArray {
    d: usize,
    theta: Vec<Scalar>,
    theta_star: Vec<Scalar>,
    varphi: Vec<Scalar>,
    phi: Vec<Scalar>,
}

impl TryFrom<RawParameterArray> for ParameterArray {
    type Error = StructureError;

    fn try_from(raw: RawParameterArray) -> Result<Self, StructureError> {
        ParameterArray::new(raw.d, raw.theta, raw.theta_star, raw.varphi, raw.phi)
    }
}

impl From<ParameterArray> for RawParameterArray {
    fn from(p: ParameterArray) -> Self {
        RawParameterArray {
            d: p.d,
            theta: p.theta,
            theta_star: p.theta_star,
            varphi: p.varphi,
            phi: p.phi,
        }
    }
}

impl ParameterArray {
    /// Builds an array after checking the sequence lengths against `d`.
    /// Mathematical validity is a separate concern; see [`Self::validate`].
    pub fn new(
        d: usize,
        theta: Vec<Scalar>,
        theta_star: Vec<Scalar>,
        varphi: Vec<Scalar>,
        phi: Vec<Scalar>,
    ) -> Result<Self, StructureError> {
        if d < 1 {
            return Err(StructureError::DiameterTooSmall(d));
        }
        let check = |name: &'static str, got: usize, expected: usize| {
            if got == expected {
                Ok(())
            } else {
                Err(StructureError::LengthMismatch {
                    name,
                    got,
                    expected,
                })
            }
        };
        check("theta", theta.len(), d + 1)?;
        check("theta_star", theta_star.len(), d + 1)?;
        check("varphi", varphi.len(), d)?;
        check("phi", phi.len(), d)?;
        Ok(ParameterArray {
            d,
            theta,
            theta_star,
            varphi,
            phi,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `theta_i`, `0 <= i <= d`.
    pub fn theta(&self, i: usize) -> &Scalar {
        &self.theta[i]
    }

    /// `theta*_i`, `0 <= i <= d`.
    pub fn theta_star(&self, i: usize) -> &Scalar {
        &self.theta_star[i]
    }

    /// `varphi_i`, `1 <= i <= d`.
    pub fn varphi(&self, i: usize) -> &Scalar {
        &self.varphi[i - 1]
    }

    /// `phi_i`, `1 <= i <= d`.
    pub fn phi(&self, i: usize) -> &Scalar {
        &self.phi[i - 1]
    }

    pub fn thetas(&self) -> &[Scalar] {
        &self.theta
    }

    pub fn theta_stars(&self) -> &[Scalar] {
        &self.theta_star
    }

    pub fn varphis(&self) -> &[Scalar] {
        &self.varphi
    }

    pub fn phis(&self) -> &[Scalar] {
        &self.phi
    }

    /// `varphi_lo * ... * varphi_hi` (1 when `lo > hi`).
    pub fn varphi_prod(&self, lo: usize, hi: usize) -> Scalar {
        (lo..=hi.min(self.d)).map(|i| self.varphi(i).clone()).product()
    }

    /// `phi_lo * ... * phi_hi` (1 when `lo > hi`).
    pub fn phi_prod(&self, lo: usize, hi: usize) -> Scalar {
        (lo..=hi.min(self.d)).map(|i| self.phi(i).clone()).product()
    }

    /// `tau_i(z) = prod_{h=0}^{i-1} (z - theta_h)`.
    pub fn tau(&self, i: usize, z: &Scalar) -> Scalar {
        (0..i).map(|h| z - &self.theta[h]).product()
    }

    /// `eta_i(z) = prod_{h=0}^{i-1} (z - theta_{d-h})`.
    pub fn eta(&self, i: usize, z: &Scalar) -> Scalar {
        (0..i).map(|h| z - &self.theta[self.d - h]).product()
    }

    /// `tau*_i(z)`, the dual of [`Self::tau`].
    pub fn tau_star(&self, i: usize, z: &Scalar) -> Scalar {
        (0..i).map(|h| z - &self.theta_star[h]).product()
    }

    /// `eta*_i(z)`, the dual of [`Self::eta`].
    pub fn eta_star(&self, i: usize, z: &Scalar) -> Scalar {
        (0..i).map(|h| z - &self.theta_star[self.d - h]).product()
    }

    /// `vartheta_i = sum_{h=0}^{i-1} (theta_h - theta_{d-h}) / (theta_0 - theta_d)`
    /// for `1 <= i <= d`. Satisfies `vartheta_1 = vartheta_d = 1` and the
    /// symmetry `vartheta_{d-i+1} = vartheta_i`.
    pub fn vartheta(&self, i: usize) -> Scalar {
        assert!((1..=self.d).contains(&i), "vartheta index out of range");
        let denom = &self.theta[0] - &self.theta[self.d];
        (0..i)
            .map(|h| (&self.theta[h] - &self.theta[self.d - h]) / &denom)
            .sum()
    }

    /// Checks every arithmetic invariant of a parameter array: pairwise
    /// distinct eigenvalues, nonvanishing `varphi`/`phi`, the `phi`
    /// compatibility relation at every index, and a single common `beta`
    /// across all admissible ratios of both eigenvalue sequences.
    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let d = self.d;
        for i in 0..=d {
            for j in (i + 1)..=d {
                if self.theta[i] == self.theta[j] {
                    failures.push(ValidationFailure::ThetaRepeated { i, j });
                }
                if self.theta_star[i] == self.theta_star[j] {
                    failures.push(ValidationFailure::ThetaStarRepeated { i, j });
                }
            }
        }
        for i in 1..=d {
            if self.varphi(i).is_zero() {
                failures.push(ValidationFailure::VarphiZero { i });
            }
            if self.phi(i).is_zero() {
                failures.push(ValidationFailure::PhiZero { i });
            }
        }
        let thetas_distinct = !failures
            .iter()
            .any(|f| matches!(f, ValidationFailure::ThetaRepeated { .. }));
        if thetas_distinct {
            for i in 1..=d {
                let expected = self.varphi(1) * self.vartheta(i)
                    + (self.theta_star(i) - self.theta_star(0))
                        * (self.theta(d - i + 1) - self.theta(0));
                if self.phi(i) != &expected {
                    failures.push(ValidationFailure::PhiRelation { i });
                }
            }
        }
        if d >= 3 && thetas_distinct {
            let distinct_star = !failures
                .iter()
                .any(|f| matches!(f, ValidationFailure::ThetaStarRepeated { .. }));
            if distinct_star {
                let reference = self.recurrence_ratio(false, 2);
                for i in 2..d {
                    if self.recurrence_ratio(false, i) != reference {
                        failures.push(ValidationFailure::RecurrenceInconsistent { dual: false, i });
                    }
                    if self.recurrence_ratio(true, i) != reference {
                        failures.push(ValidationFailure::RecurrenceInconsistent { dual: true, i });
                    }
                }
            }
        }
        ValidationReport { failures }
    }

    /// `(theta_{i-2} - theta_{i+1}) / (theta_{i-1} - theta_i)`, equal to
    /// `beta + 1` for every `2 <= i <= d-1` on a valid array.
    fn recurrence_ratio(&self, dual: bool, i: usize) -> Scalar {
        let seq = if dual { &self.theta_star } else { &self.theta };
        (&seq[i - 2] - &seq[i + 1]) / (&seq[i - 1] - &seq[i])
    }

    /// Classifies the base of the array. Requires a valid array; reports the
    /// recurrence inconsistencies as an error otherwise.
    pub fn base_class(&self) -> Result<BaseClass, ValidationReport> {
        if self.d < 3 {
            return Ok(BaseClass::SmallD);
        }
        let report = self.validate();
        if !report.is_valid() {
            return Err(report);
        }
        let beta = self.recurrence_ratio(false, 2) - Scalar::one();
        if beta == Scalar::int(-2) {
            Ok(BaseClass::QIsMinusOne { beta })
        } else {
            Ok(BaseClass::QNotMinusOne { beta })
        }
    }

    /// Whether the direct-sum criterion holds: true unless the base is
    /// `q = -1` (i.e. `beta = -2`) with `d` odd. Assumes a valid array.
    pub fn ekr_admissible(&self) -> bool {
        if self.d < 3 {
            return true;
        }
        let beta = self.recurrence_ratio(false, 2) - Scalar::one();
        beta != Scalar::int(-2) || self.d.is_multiple_of(2)
    }

    /// The image of the array under a symmetry-group element, built by
    /// applying the canonical generator word left to right.
    pub fn apply_d4(&self, g: D4Element) -> ParameterArray {
        let mut out = self.clone();
        for generator in g.generators() {
            out = if generator == D4Element::STAR {
                out.apply_star()
            } else if generator == D4Element::DOWN {
                out.apply_down()
            } else {
                out.apply_ddown()
            };
        }
        out
    }

    /// `({theta*_i}; {theta_i}; {varphi_i}; {phi_{d-i+1}})`.
    fn apply_star(&self) -> ParameterArray {
        ParameterArray {
            d: self.d,
            theta: self.theta_star.clone(),
            theta_star: self.theta.clone(),
            varphi: self.varphi.clone(),
            phi: reversed(&self.phi),
        }
    }

    /// `({theta_i}; {theta*_{d-i}}; {phi_{d-i+1}}; {varphi_{d-i+1}})`.
    fn apply_down(&self) -> ParameterArray {
        ParameterArray {
            d: self.d,
            theta: self.theta.clone(),
            theta_star: reversed(&self.theta_star),
            varphi: reversed(&self.phi),
            phi: reversed(&self.varphi),
        }
    }

    /// `({theta_{d-i}}; {theta*_i}; {phi_i}; {varphi_i})`.
    fn apply_ddown(&self) -> ParameterArray {
        ParameterArray {
            d: self.d,
            theta: reversed(&self.theta),
            theta_star: self.theta_star.clone(),
            varphi: self.phi.clone(),
            phi: self.varphi.clone(),
        }
    }
}

fn reversed(xs: &[Scalar]) -> Vec<Scalar> {
    xs.iter().rev().cloned().collect()
}

impl std::fmt::Debug for ParameterArray {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ParameterArray(d={}, theta={:?}, theta_star={:?}, varphi={:?}, phi={:?})",
            self.d, self.theta, self.theta_star, self.varphi, self.phi
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{hamming_preset, johnson_preset, krawtchouk};

    fn sc(n: i64) -> Scalar {
        Scalar::int(n)
    }

    fn johnson(v: u64, d: usize) -> ParameterArray {
        johnson_preset(v, d).unwrap().array().unwrap()
    }

    fn hamming(n: u64, d: usize) -> ParameterArray {
        hamming_preset(n, d).unwrap().array().unwrap()
    }

    /// A Krawtchouk-shaped array built by hand (theta linear in i).
    fn linear_array(d: usize, step: i64) -> ParameterArray {
        krawtchouk(&crate::families::KrawtchoukParams {
            d,
            r: Scalar::int(6),
            s: Scalar::int(step),
            s_star: Scalar::int(-7),
            theta0: Scalar::zero(),
            theta0_star: Scalar::zero(),
        })
        .unwrap()
    }

    #[test]
    fn vartheta_is_one_at_both_ends() {
        let p = johnson(7, 3);
        assert_eq!(p.vartheta(1), Scalar::one());
        assert_eq!(p.vartheta(p.d()), Scalar::one());
    }

    #[test]
    fn vartheta_of_linear_eigenvalues_matches_closed_form() {
        // For theta_i linear in i the ratio sum telescopes to i(d-i+1)/d;
        // check i = 2, d = 4 against a direct evaluation: 3/2.
        let p = linear_array(4, -3);
        assert_eq!(p.vartheta(2), Scalar::ratio(3, 2));
        for i in 1..=4u32 {
            let expected = Scalar::ratio((i * (4 - i + 1)) as i64, 4);
            assert_eq!(p.vartheta(i as usize), expected);
        }
    }

    #[test]
    fn vartheta_symmetry() {
        let p = johnson(9, 4);
        for i in 1..=p.d() {
            assert_eq!(p.vartheta(p.d() - i + 1), p.vartheta(i));
            assert_eq!(p.apply_d4(D4Element::STAR).vartheta(i), p.vartheta(i));
        }
    }

    #[test]
    fn validate_accepts_family_output() {
        assert!(hamming(3, 4).validate().is_valid());
        assert!(johnson(7, 3).validate().is_valid());
    }

    #[test]
    fn validate_flags_zero_varphi() {
        let mut p = hamming(3, 4);
        p.varphi[1] = Scalar::zero();
        let report = p.validate();
        assert!(report
            .failures
            .contains(&ValidationFailure::VarphiZero { i: 2 }));
        assert!(report.to_string().contains("varphi[2] zero"));
    }

    #[test]
    fn validate_flags_repeated_theta() {
        let mut p = hamming(3, 4);
        p.theta[2] = p.theta[1].clone();
        let report = p.validate();
        assert!(report
            .failures
            .contains(&ValidationFailure::ThetaRepeated { i: 1, j: 2 }));
    }

    #[test]
    fn base_class_of_quadratic_eigenvalues_is_two() {
        let p = johnson(7, 3);
        match p.base_class().unwrap() {
            BaseClass::QNotMinusOne { beta } => assert_eq!(beta, sc(2)),
            other => panic!("unexpected base class {other:?}"),
        }
    }

    #[test]
    fn base_class_for_small_d() {
        let p = linear_array(2, 5);
        assert_eq!(p.base_class().unwrap(), BaseClass::SmallD);
        assert!(p.ekr_admissible());
    }

    #[test]
    fn dual_hahn_is_admissible() {
        let p = johnson(9, 4);
        assert!(p.ekr_admissible());
    }

    #[test]
    fn apply_identity_is_noop() {
        let p = johnson(7, 3);
        assert_eq!(p.apply_d4(D4Element::IDENTITY), p);
    }

    #[test]
    fn apply_ddown_swaps_and_reverses_sequences() {
        let p = johnson(7, 3);
        let q = p.apply_d4(D4Element::DDOWN);
        let d = p.d();
        for i in 0..=d {
            assert_eq!(q.theta(i), p.theta(d - i));
            assert_eq!(q.theta_star(i), p.theta_star(i));
        }
        for i in 1..=d {
            assert_eq!(q.varphi(i), p.phi(i));
            assert_eq!(q.phi(i), p.varphi(i));
        }
    }

    #[test]
    fn star_is_an_involution_on_arrays() {
        let p = johnson(7, 3);
        let twice = p.apply_d4(D4Element::STAR).apply_d4(D4Element::STAR);
        assert_eq!(twice, p);
    }

    #[test]
    fn d4_images_stay_valid() {
        let p = hamming(4, 3);
        for g in D4Element::all() {
            assert!(p.apply_d4(g).validate().is_valid(), "image under {g} invalid");
        }
    }

    #[test]
    fn word_application_matches_composition() {
        let p = johnson(7, 3);
        for g in D4Element::all() {
            for h in D4Element::all() {
                let via_word = p.apply_d4(g).apply_d4(h);
                let via_product = p.apply_d4(g.compose(h));
                assert_eq!(via_word, via_product, "g = {g}, h = {h}");
            }
        }
    }

    #[test]
    fn tau_and_eta_evaluations() {
        let p = linear_array(3, -2); // theta_i = -2i
        let z = Scalar::int(7);
        assert_eq!(p.tau(0, &z), Scalar::one());
        assert_eq!(p.tau(2, p.theta(1)), Scalar::zero());
        // eta_d(theta_0) for linear theta with step s: prod over top-3 values
        // (theta_0 - theta_3)(theta_0 - theta_2)(theta_0 - theta_1) = -6 s^3.
        let s = Scalar::int(-2);
        assert_eq!(p.eta(3, p.theta(0)), -(Scalar::int(6) * s.pow(3)));
    }

    #[test]
    fn json_schema_round_trip() {
        let p = johnson(7, 3);
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.contains("\"theta_star\""));
        let back: ParameterArray = serde_json::from_str(&json).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn json_rejects_length_mismatch() {
        let bad = r#"{"d": 2, "theta": ["0", "1", "2"], "theta_star": ["0", "1"], "varphi": ["1", "1"], "phi": ["1", "1"]}"#;
        assert!(serde_json::from_str::<ParameterArray>(bad).is_err());
    }
}
