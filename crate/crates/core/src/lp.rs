//! The linear-programming side: second eigenmatrix, dual vectors, bounds.
//!
//! For an admissible system and an intersection parameter `t`, the vector
//! `f` with `f_0 = 1`, `f_1 = ... = f_t = 0` and `(f Q^T)_1 = ... =
//! (f Q^T)_{d-t} = 0` is unique, equals the dual-standard expansion of
//! `w_t`, and (when its tail is nonnegative) certifies the bound
//! `(f Q^T)_0` on `t`-intersecting families. The three classical families
//! admit terminating (q-)hypergeometric closed forms for both `f` and the
//! bound; this module evaluates those exactly and compares them with the
//! matrix pipeline.

use crate::ekr::EkrSystem;
use crate::families::{DualHahnParams, KrawtchoukParams, QRacahParams};
use crate::matrix::Matrix;
use crate::realization::Realization;
use crate::scalar::Scalar;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LpError {
    #[error("hypergeometric series does not terminate")]
    NonTerminating,
    #[error("denominator factor vanishes at term {k} before the series terminates")]
    DenominatorVanishes { k: usize },
    #[error("closed form undefined for these parameters: {0}")]
    Degenerate(String),
    #[error("index out of range: {0}")]
    IndexRange(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

/// The change-of-basis array `Q` defined by
/// `E_j v* = (<v,v*>/||v||^2) sum_i Q_ij E*_i v`; column 0 is all ones.
#[derive(Debug, Clone)]
pub struct SecondEigenmatrix {
    q: Matrix,
}

impl SecondEigenmatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.q
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        self.q.get(i, j)
    }

    /// `(f Q^T)_i = sum_j f_j Q_ij`.
    pub fn f_q_transpose(&self, f: &[Scalar]) -> Vec<Scalar> {
        let n = self.q.rows();
        (0..n)
            .map(|i| (0..n).map(|j| &f[j] * self.q.get(i, j)).sum())
            .collect()
    }
}

/// Extracts `Q` by expanding the dual standard basis in the standard basis.
pub fn second_eigenmatrix(r: &Realization) -> SecondEigenmatrix {
    let n = r.dim();
    let standard = Matrix::from_fn(n, n, |row, col| r.standard_basis()[col][row].clone());
    let dual_standard = Matrix::from_fn(n, n, |row, col| r.dual_standard_basis()[col][row].clone());
    let x = &standard
        .inverse()
        .expect("standard basis matrix is invertible")
        * &dual_standard;
    let scale = r.norm_sq(r.v()) / r.inner(r.v(), r.v_star());
    SecondEigenmatrix { q: x.scale(&scale) }
}

/// An LP-dual vector for intersection parameter `t`.
#[derive(Debug, Clone, Serialize)]
pub struct DualVector {
    pub t: usize,
    pub f: Vec<Scalar>,
    pub feasible: bool,
    pub bound: Scalar,
}

/// Reads `f` off the dual-standard expansion of `w_t`, verifies the defining
/// zero patterns against `Q`, and computes the bound along two routes:
/// `(f Q^T)_0` and the closed scalar
/// `eta*_d(theta*_0) eta_{d-t}(theta_0) / (phi_1..phi_{d-t} eta*_t(theta*_0))`.
pub fn dual_vector(sys: &EkrSystem, t: usize) -> Result<DualVector, LpError> {
    let d = sys.d();
    if t > d {
        return Err(LpError::IndexRange(format!("t = {t} exceeds d = {d}")));
    }
    let p = sys.realization().params();
    let f = sys.dualstd_to_ekr().column(t);
    if !f[0].is_one() {
        return Err(LpError::Consistency("f_0 != 1".into()));
    }
    if f[1..=t].iter().any(|x| !x.is_zero()) {
        return Err(LpError::Consistency("f does not vanish on 1..t".into()));
    }
    let q = second_eigenmatrix(sys.realization());
    let fqt = q.f_q_transpose(&f);
    if fqt[1..=(d - t)].iter().any(|x| !x.is_zero()) {
        return Err(LpError::Consistency(
            "f Q^T does not vanish on 1..d-t".into(),
        ));
    }
    let bound = fqt[0].clone();
    let closed = p.eta_star(d, p.theta_star(0)) * p.eta(d - t, p.theta(0))
        / (p.phi_prod(1, d - t) * p.eta_star(t, p.theta_star(0)));
    if bound != closed {
        return Err(LpError::Consistency(
            "bound differs between the eigenmatrix route and the closed scalar".into(),
        ));
    }
    let feasible = f[t + 1..].iter().all(|x| !x.is_negative());
    Ok(DualVector {
        t,
        f,
        feasible,
        bound,
    })
}

/// Solves the LP-dual defining system directly and checks it has exactly one
/// solution; returns that solution.
pub fn lp_dual_unique(q: &SecondEigenmatrix, t: usize) -> Result<Vec<Scalar>, LpError> {
    let n = q.matrix().rows();
    let d = n - 1;
    if t > d {
        return Err(LpError::IndexRange(format!("t = {t} exceeds d = {d}")));
    }
    let mut rows = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    let unit_row = |j: usize| {
        let mut row = vec![Scalar::zero(); n];
        row[j] = Scalar::one();
        row
    };
    rows.push(unit_row(0));
    rhs.push(Scalar::one());
    for j in 1..=t {
        rows.push(unit_row(j));
        rhs.push(Scalar::zero());
    }
    for i in 1..=(d - t) {
        rows.push((0..n).map(|j| q.entry(i, j).clone()).collect());
        rhs.push(Scalar::zero());
    }
    let m = Matrix::from_rows(rows);
    if m.inverse().is_none() {
        return Err(LpError::Consistency(
            "LP dual system is not uniquely solvable".into(),
        ));
    }
    m.solve(&rhs)
        .map_err(|e| LpError::Consistency(format!("LP dual solve failed: {e}")))
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`.
pub fn pochhammer(a: &Scalar, k: usize) -> Scalar {
    (0..k).map(|i| a + Scalar::int(i as i64)).product()
}

/// q-shifted factorial `(a; q)_k = prod_{i=0}^{k-1} (1 - a q^i)`.
pub fn q_pochhammer(a: &Scalar, q: &Scalar, k: usize) -> Scalar {
    let one = Scalar::one();
    let mut power = a.clone();
    (0..k)
        .map(|_| {
            let factor = &one - &power;
            power = &power * q;
            factor
        })
        .product()
}

/// Ordinary or basic terminating hypergeometric series.
#[derive(Debug, Clone)]
pub enum HypergeomKind {
    Ordinary,
    Basic { q: Scalar },
}

/// Parameters of a terminating series: some numerator parameter must be a
/// nonpositive integer (ordinary) or of the form `q^{-m}` (basic).
#[derive(Debug, Clone)]
pub struct HypergeomSpec {
    pub kind: HypergeomKind,
    pub numerator: Vec<Scalar>,
    pub denominator: Vec<Scalar>,
    pub argument: Scalar,
}

/// Search bound for recognizing `a = q^{-m}`; series in this crate terminate
/// after at most `d` terms, far below this.
const BASIC_TERMINATION_LIMIT: usize = 4096;

impl HypergeomSpec {
    /// Smallest index past which every further term vanishes.
    fn termination_index(&self) -> Result<usize, LpError> {
        match &self.kind {
            HypergeomKind::Ordinary => self
                .numerator
                .iter()
                .filter_map(|a| {
                    a.to_i64()
                        .filter(|v| *v <= 0)
                        .map(|v| v.unsigned_abs() as usize)
                })
                .min()
                .ok_or(LpError::NonTerminating),
            HypergeomKind::Basic { q } => {
                let mut best: Option<usize> = None;
                for a in &self.numerator {
                    let mut power = a.clone();
                    for m in 0..BASIC_TERMINATION_LIMIT {
                        if power.is_one() {
                            best = Some(best.map_or(m, |b| b.min(m)));
                            break;
                        }
                        power = &power * q;
                    }
                }
                best.ok_or(LpError::NonTerminating)
            }
        }
    }
}

/// Evaluates a terminating series by direct exact summation:
/// ordinary `sum_k prod (a_j)_k / prod (b_j)_k * z^k / k!`,
/// basic `sum_k prod (a_j; q)_k / ((q; q)_k prod (b_j; q)_k) * z^k`.
pub fn hypergeom_terminating(spec: &HypergeomSpec) -> Result<Scalar, LpError> {
    let n = spec.termination_index()?;
    let mut total = Scalar::one();
    let mut term = Scalar::one();
    for k in 0..n {
        let (num_factor, den_factor) = match &spec.kind {
            HypergeomKind::Ordinary => {
                let kv = Scalar::int(k as i64);
                let num: Scalar = spec.numerator.iter().map(|a| a + &kv).product();
                let den: Scalar = spec.denominator.iter().map(|b| b + &kv).product();
                (num, den * Scalar::int(k as i64 + 1))
            }
            HypergeomKind::Basic { q } => {
                let one = Scalar::one();
                let qk = q.pow(k as i64);
                let num: Scalar = spec.numerator.iter().map(|a| &one - a * &qk).product();
                let den: Scalar = spec.denominator.iter().map(|b| &one - b * &qk).product();
                (num, den * (&one - q.pow(k as i64 + 1)))
            }
        };
        if den_factor.is_zero() {
            return Err(LpError::DenominatorVanishes { k: k + 1 });
        }
        term = term * num_factor / den_factor * &spec.argument;
        total = total + &term;
    }
    Ok(total)
}

/// The shape parameters a family closed form depends on. The free
/// normalizations (`h`, `h*`, `theta_0`, `theta*_0`) do not enter.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyShape {
    DualHahn { r: Scalar, s: Scalar },
    Krawtchouk { r: Scalar, s: Scalar, s_star: Scalar },
    QRacah {
        q: Scalar,
        s: Scalar,
        s_star: Scalar,
        r1: Scalar,
        r2: Scalar,
    },
}

impl From<&DualHahnParams> for FamilyShape {
    fn from(p: &DualHahnParams) -> Self {
        FamilyShape::DualHahn {
            r: p.r.clone(),
            s: p.s.clone(),
        }
    }
}

impl From<&KrawtchoukParams> for FamilyShape {
    fn from(p: &KrawtchoukParams) -> Self {
        FamilyShape::Krawtchouk {
            r: p.r.clone(),
            s: p.s.clone(),
            s_star: p.s_star.clone(),
        }
    }
}

impl From<&QRacahParams> for FamilyShape {
    fn from(p: &QRacahParams) -> Self {
        FamilyShape::QRacah {
            q: p.q.clone(),
            s: p.s.clone(),
            s_star: p.s_star.clone(),
            r1: p.r1.clone(),
            r2: p.r2.clone(),
        }
    }
}

fn nonzero(x: Scalar, what: &str) -> Result<Scalar, LpError> {
    if x.is_zero() {
        Err(LpError::Degenerate(format!("{what} vanishes")))
    } else {
        Ok(x)
    }
}

/// The closed form for `f_j`, valid for `t+1 <= j <= d`.
pub fn f_closed_form(
    shape: &FamilyShape,
    d: usize,
    t: usize,
    j: usize,
) -> Result<Scalar, LpError> {
    if !(t + 1..=d).contains(&j) {
        return Err(LpError::IndexRange(format!(
            "closed form defined for t+1 <= j <= d, got j = {j}, t = {t}, d = {d}"
        )));
    }
    let ji = j as i64;
    let ti = t as i64;
    let di = d as i64;
    let one = Scalar::one();
    match shape {
        FamilyShape::DualHahn { r, s } => {
            let numer = pochhammer(&Scalar::int(1 - ji), t)
                * pochhammer(&(s + Scalar::int(ji + 2)), t)
                * pochhammer(&(s - r + &one), j)
                * Scalar::int(-1).pow(ji - 1);
            let denom = nonzero(
                (Scalar::int(ti + 1) - r + s)
                    * pochhammer(&(s + Scalar::int(2)), t)
                    * pochhammer(&one, t)
                    * pochhammer(&(r + Scalar::int(2)), j - 1),
                "dual Hahn prefactor denominator",
            )?;
            let hyp = hypergeom_terminating(&HypergeomSpec {
                kind: HypergeomKind::Ordinary,
                numerator: vec![
                    Scalar::int(ti - ji + 1),
                    s + Scalar::int(ti + ji + 2),
                    one.clone(),
                ],
                denominator: vec![Scalar::int(ti + 1), Scalar::int(ti + 2) - r + s],
                argument: one,
            })?;
            Ok(numer / denom * hyp)
        }
        FamilyShape::Krawtchouk { r, s, s_star } => {
            let ss = s * s_star;
            let gap = nonzero(&ss - r, "s s* - r")?;
            let ratio = (r - &ss) / r;
            let hyp = hypergeom_terminating(&HypergeomSpec {
                kind: HypergeomKind::Ordinary,
                numerator: vec![Scalar::int(ti - ji + 1), one.clone()],
                denominator: vec![Scalar::int(ti + 1)],
                argument: &ss / &gap,
            })?;
            Ok(pochhammer(&Scalar::int(1 - ji), t) / pochhammer(&one, t)
                * ratio.pow(ji - 1)
                * hyp)
        }
        FamilyShape::QRacah { q, s, s_star, r1, r2 } => {
            let qp = |a: &Scalar, k: usize| q_pochhammer(a, q, k);
            let numer = s_star.pow(ji - 1)
                * q.pow((di + 1) * (ji - 1) + ti)
                * qp(&q.pow(1 - ji), t)
                * qp(&(s * q.pow(ji + 2)), t)
                * qp(&(s * q / r1), j)
                * qp(&(s * q / r2), j);
            let denom = nonzero(
                (&one - s * q.pow(ti + 1) / r1)
                    * (&one - s * q.pow(ti + 1) / r2)
                    * qp(q, t)
                    * qp(&(s * q.pow(2)), t)
                    * qp(&(r1 * q.pow(2)), j - 1)
                    * qp(&(r2 * q.pow(2)), j - 1),
                "q-Racah prefactor denominator",
            )?;
            let hyp = hypergeom_terminating(&HypergeomSpec {
                kind: HypergeomKind::Basic { q: q.clone() },
                numerator: vec![
                    q.pow(ti - ji + 1),
                    s * q.pow(ti + ji + 2),
                    q.pow(ti - di - 1) / s_star,
                    q.clone(),
                ],
                denominator: vec![
                    q.pow(ti + 1),
                    s * q.pow(ti + 2) / r1,
                    s * q.pow(ti + 2) / r2,
                ],
                argument: q.clone(),
            })?;
            Ok(numer / denom * hyp)
        }
    }
}

/// The full closed-form dual vector: 1, then `t` zeros, then the closed
/// `f_j` for `j > t`.
pub fn f_closed_vector(shape: &FamilyShape, d: usize, t: usize) -> Result<Vec<Scalar>, LpError> {
    let mut f = vec![Scalar::zero(); d + 1];
    f[0] = Scalar::one();
    for j in (t + 1)..=d {
        f[j] = f_closed_form(shape, d, t, j)?;
    }
    Ok(f)
}

/// The closed form for the bound `(f Q^T)_0`.
pub fn bound_closed_form(shape: &FamilyShape, d: usize, t: usize) -> Result<Scalar, LpError> {
    if t > d {
        return Err(LpError::IndexRange(format!("t = {t} exceeds d = {d}")));
    }
    let k = d - t;
    match shape {
        FamilyShape::DualHahn { r, s } => {
            let numer = pochhammer(&(-(s + Scalar::int(d as i64 + 1))), k);
            let denom = nonzero(
                pochhammer(&(r - s - Scalar::int(d as i64)), k),
                "dual Hahn bound denominator",
            )?;
            Ok(numer / denom)
        }
        FamilyShape::Krawtchouk { r, s, s_star } => {
            let ss = s * s_star;
            let gap = nonzero(&ss - r, "s s* - r")?;
            Ok((ss / gap).pow(k as i64))
        }
        FamilyShape::QRacah { q, s, s_star, r1, .. } => {
            let qp = |a: &Scalar, kk: usize| q_pochhammer(a, q, kk);
            let ti = t as i64;
            let numer = qp(&(s * q.pow(ti + 2)), k) * qp(&(s_star * q.pow(2)), k);
            let denom = nonzero(
                r1.pow(k as i64)
                    * q.pow(k as i64)
                    * qp(&(s * q.pow(ti + 1) / r1), k)
                    * qp(&(s_star * q / r1), k),
                "q-Racah bound denominator",
            )?;
            Ok(numer / denom)
        }
    }
}
