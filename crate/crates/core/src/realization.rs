//! Concrete matrices for a Leonard system in split coordinates.
//!
//! The coordinate system is the split basis `{tau_l(A) v*}`: the primary
//! operator `A` becomes lower bidiagonal with unit subdiagonal and diagonal
//! `theta_0..theta_d`, the dual operator `A*` upper bidiagonal with diagonal
//! `theta*_0..theta*_d` and superdiagonal `varphi_1..varphi_d`, and the
//! `l`-th split basis vector is the `l`-th coordinate vector. Primitive
//! idempotents come from Lagrange interpolation, and the invariant bilinear
//! form is pinned down as the unique symmetric solution of the two
//! intertwining systems, normalized by `<v*, v*> = 1`.

use crate::matrix::{vec_add, vec_is_zero, vec_scale, Matrix};
use crate::parameter_array::{ParameterArray, ValidationReport};
use crate::report::CheckReport;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RealizeError {
    #[error("parameter array is invalid: {0}")]
    InvalidArray(ValidationReport),
    #[error("the intertwining solution space has dimension {0}, expected 1 (invalid array)")]
    GramDimension(usize),
    #[error("degenerate structure: {0}")]
    DegenerateStructure(String),
    #[error("realization invariants failed: {}", .0.join(", "))]
    InvariantFailure(Vec<String>),
}

/// Which split decomposition to compute: the plain one or the one attached
/// to the reversed dual-idempotent ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitVariant {
    Plain,
    Down,
}

/// A Leonard system realized as exact matrices, together with the invariant
/// form and the three distinguished base vectors.
#[derive(Clone)]
pub struct Realization {
    p: ParameterArray,
    a: Matrix,
    a_star: Matrix,
    e: Vec<Matrix>,
    e_star: Vec<Matrix>,
    gram: Matrix,
    gram_space_dim: usize,
    v: Vec<Scalar>,
    v_star: Vec<Scalar>,
    v_star_down: Vec<Scalar>,
}

/// Builds the realization and verifies every structural invariant exactly.
pub fn realize(p: &ParameterArray) -> Result<Realization, RealizeError> {
    let report = p.validate();
    if !report.is_valid() {
        return Err(RealizeError::InvalidArray(report));
    }
    let d = p.d();
    let n = d + 1;

    let mut a = Matrix::zeros(n, n);
    let mut a_star = Matrix::zeros(n, n);
    for l in 0..n {
        a.set(l, l, p.theta(l).clone());
        a_star.set(l, l, p.theta_star(l).clone());
    }
    for l in 0..d {
        a.set(l + 1, l, Scalar::one());
        a_star.set(l, l + 1, p.varphi(l + 1).clone());
    }

    let e = lagrange_idempotents(&a, p.thetas());
    let e_star = lagrange_idempotents(&a_star, p.theta_stars());

    let gram_space = gram_solution_space(&a, &a_star);
    let gram_space_dim = gram_space.dim();
    if gram_space_dim != 1 {
        return Err(RealizeError::GramDimension(gram_space_dim));
    }
    let flat = gram_space.basis_vectors().next().unwrap();
    let gram_raw = Matrix::from_fn(n, n, |r, c| flat[r * n + c].clone());
    if gram_raw.get(0, 0).is_zero() {
        return Err(RealizeError::DegenerateStructure(
            "the invariant form vanishes on the first split vector".into(),
        ));
    }
    let gram = gram_raw.scale(&gram_raw.get(0, 0).recip());

    let mut v_star = vec![Scalar::zero(); n];
    v_star[0] = Scalar::one();
    let v = normalize_leading(e[0].mul_vec(&v_star), "E_0 v*")?;
    let v_star_down = normalize_leading(e_star[d].mul_vec(&v), "E_d* v")?;

    let r = Realization {
        p: p.clone(),
        a,
        a_star,
        e,
        e_star,
        gram,
        gram_space_dim,
        v,
        v_star,
        v_star_down,
    };
    let invariants = r.invariant_report();
    if !invariants.all_passed() {
        return Err(RealizeError::InvariantFailure(invariants.failed_names()));
    }
    Ok(r)
}

fn normalize_leading(v: Vec<Scalar>, what: &str) -> Result<Vec<Scalar>, RealizeError> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(first) => {
            let inv = first.recip();
            Ok(vec_scale(&v, &inv))
        }
        None => Err(RealizeError::DegenerateStructure(format!(
            "{what} is the zero vector"
        ))),
    }
}

/// `E_i = prod_{h != i} (M - theta_h I) / (theta_i - theta_h)`.
fn lagrange_idempotents(m: &Matrix, eigenvalues: &[Scalar]) -> Vec<Matrix> {
    let n = eigenvalues.len();
    let identity = Matrix::identity(n);
    (0..n)
        .map(|i| {
            let mut acc = Matrix::identity(n);
            let mut denom = Scalar::one();
            for (h, theta_h) in eigenvalues.iter().enumerate() {
                if h == i {
                    continue;
                }
                acc = &acc * &(m - &identity.scale(theta_h));
                denom = denom * (&eigenvalues[i] - theta_h);
            }
            acc.scale(&denom.recip())
        })
        .collect()
}

/// Solution space of `{G A = A^T G, G A* = A*^T G, G = G^T}` over the
/// `n^2` entries of `G`.
pub fn gram_solution_space(a: &Matrix, a_star: &Matrix) -> Subspace {
    let n = a.rows();
    let idx = |i: usize, j: usize| i * n + j;
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(3 * n * n);
    for op in [a, a_star] {
        for r in 0..n {
            for c in 0..n {
                // (G op - op^T G)[r][c] = sum_k G[r][k] op[k][c] - op[k][r] G[k][c]
                let mut row = vec![Scalar::zero(); n * n];
                for k in 0..n {
                    row[idx(r, k)] = &row[idx(r, k)] + op.get(k, c);
                    row[idx(k, c)] = &row[idx(k, c)] - op.get(k, r);
                }
                rows.push(row);
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mut row = vec![Scalar::zero(); n * n];
            row[idx(i, j)] = Scalar::one();
            row[idx(j, i)] = Scalar::int(-1);
            rows.push(row);
        }
    }
    Matrix::from_rows(rows).kernel()
}

impl Realization {
    pub fn params(&self) -> &ParameterArray {
        &self.p
    }

    pub fn d(&self) -> usize {
        self.p.d()
    }

    pub fn dim(&self) -> usize {
        self.p.d() + 1
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn a_star(&self) -> &Matrix {
        &self.a_star
    }

    /// Primitive idempotent `E_i` of the primary operator.
    pub fn e(&self, i: usize) -> &Matrix {
        &self.e[i]
    }

    /// Primitive idempotent `E*_i` of the dual operator.
    pub fn e_star(&self, i: usize) -> &Matrix {
        &self.e_star[i]
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Dimension of the intertwining solution space (1 for a genuine array).
    pub fn gram_space_dim(&self) -> usize {
        self.gram_space_dim
    }

    pub fn v(&self) -> &[Scalar] {
        &self.v
    }

    pub fn v_star(&self) -> &[Scalar] {
        &self.v_star
    }

    pub fn v_star_down(&self) -> &[Scalar] {
        &self.v_star_down
    }

    /// `<x, y>` under the invariant form.
    pub fn inner(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        self.gram.bilinear(x, y)
    }

    pub fn norm_sq(&self, x: &[Scalar]) -> Scalar {
        self.inner(x, x)
    }

    /// A copy with `v*` rescaled by `lambda`; everything downstream of the
    /// base-vector choice is covariant under this.
    pub fn rescale_v_star(&self, lambda: &Scalar) -> Realization {
        assert!(!lambda.is_zero(), "v* must stay nonzero");
        let mut out = self.clone();
        out.v_star = vec_scale(&self.v_star, lambda);
        out
    }

    /// The standard basis `{E*_i v}`.
    pub fn standard_basis(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|i| self.e_star[i].mul_vec(&self.v)).collect()
    }

    /// The dual standard basis `{E_j v*}`.
    pub fn dual_standard_basis(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|j| self.e[j].mul_vec(&self.v_star)).collect()
    }

    /// The split basis `{tau_l(A) v*}` (the coordinate vectors, by design).
    pub fn split_basis(&self) -> Vec<Vec<Scalar>> {
        self.tau_orbit(&self.v_star)
    }

    /// The dual split basis `{tau_l(A) v*down}`.
    pub fn dual_split_basis(&self) -> Vec<Vec<Scalar>> {
        self.tau_orbit(&self.v_star_down)
    }

    /// `{tau_l(A) u}` via `u_{l+1} = (A - theta_l I) u_l`.
    fn tau_orbit(&self, u: &[Scalar]) -> Vec<Vec<Scalar>> {
        let mut out = Vec::with_capacity(self.dim());
        let mut current = u.to_vec();
        for l in 0..self.dim() {
            out.push(current.clone());
            if l < self.d() {
                let au = self.a.mul_vec(&current);
                current = au
                    .iter()
                    .zip(&current)
                    .map(|(x, y)| x - self.p.theta(l) * y)
                    .collect();
            }
        }
        out
    }

    /// `||E*_i v||^2` computed from the invariant form.
    pub fn squared_norm_gram(&self, i: usize) -> Scalar {
        let u = self.e_star[i].mul_vec(&self.v);
        self.norm_sq(&u)
    }

    /// `||E*_i v||^2` from the closed product formula
    /// `varphi_1..varphi_i phi_{i+1}..phi_d /
    ///  (eta_d(theta_0) tau*_i(theta*_i) eta*_{d-i}(theta*_i)) * ||v||^2`.
    pub fn squared_norm_formula(&self, i: usize) -> Scalar {
        let p = &self.p;
        let d = p.d();
        let numer = p.varphi_prod(1, i) * p.phi_prod(i + 1, d);
        let denom = p.eta(d, p.theta(0))
            * p.tau_star(i, p.theta_star(i))
            * p.eta_star(d - i, p.theta_star(i));
        numer / denom * self.norm_sq(&self.v)
    }

    /// The split decomposition `{U_l}` (or its `down` variant) computed
    /// purely from idempotent images, sums, and intersections.
    pub fn split_decomposition(&self, variant: SplitVariant) -> Vec<Subspace> {
        let n = self.dim();
        let d = self.d();
        let e_images: Vec<Subspace> = (0..n).map(|j| Subspace::column_space(&self.e[j])).collect();
        let es_images: Vec<Subspace> =
            (0..n).map(|i| Subspace::column_space(&self.e_star[i])).collect();
        (0..n)
            .map(|l| {
                let lower_range: Vec<usize> = match variant {
                    SplitVariant::Plain => (0..=l).collect(),
                    SplitVariant::Down => (d - l..=d).collect(),
                };
                let mut lower = Subspace::zero(n);
                for i in lower_range {
                    lower = lower.sum(&es_images[i]).unwrap();
                }
                let mut upper = Subspace::zero(n);
                for j in l..=d {
                    upper = upper.sum(&e_images[j]).unwrap();
                }
                lower.intersect(&upper).unwrap()
            })
            .collect()
    }

    /// Structural invariants enforced at construction time: the idempotent
    /// algebra, the rank-one property, the tridiagonal support conditions,
    /// the intertwining/nondegeneracy of the form, and the base-vector
    /// normalizations.
    pub fn invariant_report(&self) -> CheckReport {
        let mut rep = CheckReport::new();
        let n = self.dim();
        let d = self.d();
        let identity = Matrix::identity(n);

        let mut orth = true;
        let mut partition_ok = true;
        let mut eigen_ok = true;
        let mut rank_ok = true;
        for (ops, op, thetas) in [
            (&self.e, &self.a, self.p.thetas()),
            (&self.e_star, &self.a_star, self.p.theta_stars()),
        ] {
            let mut total = Matrix::zeros(n, n);
            let mut recombined = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let prod = &ops[i] * &ops[j];
                    let expected = if i == j { ops[i].clone() } else { Matrix::zeros(n, n) };
                    orth &= prod == expected;
                }
                total = &total + &ops[i];
                recombined = &recombined + &ops[i].scale(&thetas[i]);
                rank_ok &= ops[i].rank() == 1;
            }
            partition_ok &= total == identity;
            eigen_ok &= &recombined == op;
        }
        rep.push("idempotent_orthogonality", orth);
        rep.push("idempotent_partition_of_unity", partition_ok);
        rep.push("spectral_decomposition", eigen_ok);
        rep.push("idempotent_rank_one", rank_ok);

        let mut tridiag = true;
        for (outer, mid) in [(&self.e_star, &self.a), (&self.e, &self.a_star)] {
            for i in 0..n {
                let left = &outer[i] * mid;
                for j in 0..n {
                    let prod = &left * &outer[j];
                    let diff = i.abs_diff(j);
                    if diff > 1 {
                        tridiag &= prod.is_zero();
                    } else if diff == 1 {
                        tridiag &= !prod.is_zero();
                    }
                }
            }
        }
        rep.push("tridiagonal_support", tridiag);

        let sym = self.gram == self.gram.transpose();
        let nondegenerate = self.gram.rank() == n;
        let intertwines = (&self.gram * &self.a) == (&self.a.transpose() * &self.gram)
            && (&self.gram * &self.a_star) == (&self.a_star.transpose() * &self.gram);
        rep.push("form_symmetric", sym);
        rep.push("form_nondegenerate", nondegenerate);
        rep.push("form_intertwines", intertwines);
        rep.push("form_normalized", self.gram.get(0, 0).is_one());

        let in_image = |m: &Matrix, x: &[Scalar]| m.mul_vec(x) == x;
        rep.push(
            "base_vectors_in_eigenspaces",
            in_image(&self.e[0], &self.v)
                && in_image(&self.e_star[0], &self.v_star)
                && in_image(&self.e_star[d], &self.v_star_down)
                && !vec_is_zero(&self.v)
                && !vec_is_zero(&self.v_star)
                && !vec_is_zero(&self.v_star_down),
        );
        rep.push(
            "base_vector_pairings_nonzero",
            !self.inner(&self.v, &self.v_star).is_zero()
                && !self.inner(&self.v, &self.v_star_down).is_zero(),
        );

        let standard_nonzero = self.standard_basis().iter().all(|u| !vec_is_zero(u));
        rep.push("standard_basis_nonzero", standard_nonzero);

        // The coordinate convention: tau_l(A) v* is the l-th coordinate vector.
        let split_is_coordinates = self.split_basis().iter().enumerate().all(|(l, u)| {
            let mut e_l = vec![Scalar::zero(); n];
            e_l[l] = Scalar::one();
            *u == e_l
        });
        rep.push("split_basis_is_coordinate_basis", split_is_coordinates);

        rep
    }

    /// The five split/standard transition identities, the sandwich formula
    /// for `E*_0 E_i E*_0`, the squared-norm formula, the split projection
    /// vanishing conditions, and the split-decomposition shape, each as an
    /// exact check.
    pub fn identity_report(&self) -> CheckReport {
        let mut rep = CheckReport::new();
        let p = &self.p;
        let d = self.d();
        let n = self.dim();
        let vv_star = self.inner(&self.v, &self.v_star);
        let vv_star_down = self.inner(&self.v, &self.v_star_down);
        let split = self.split_basis();
        let dual_split = self.dual_split_basis();
        let standard = self.standard_basis();
        let dual_standard = self.dual_standard_basis();

        // (i) E*_i v = ||E*_i v||^2 / <v, v*> * sum_{l<=i} tau*_l(theta*_i)/(varphi_1..varphi_l) tau_l(A) v*
        let mut ok = true;
        for i in 0..n {
            let scale = self.squared_norm_gram(i) / &vv_star;
            let mut rhs = vec![Scalar::zero(); n];
            for l in 0..=i {
                let coeff = &scale * p.tau_star(l, p.theta_star(i)) / p.varphi_prod(1, l);
                rhs = vec_add(&rhs, &vec_scale(&split[l], &coeff));
            }
            ok &= rhs == standard[i];
        }
        rep.push("split_standard_transition_i", ok);

        // (ii) tau_l(A) v* = <v, v*> varphi_1..varphi_l
        //      * sum_{i<=l} eta*_{d-l}(theta*_i) / (tau*_i(theta*_i) eta*_{d-i}(theta*_i) ||E*_i v||^2) E*_i v
        let mut ok = true;
        for l in 0..n {
            let scale = &vv_star * p.varphi_prod(1, l);
            let mut rhs = vec![Scalar::zero(); n];
            for i in 0..=l {
                let coeff = &scale * p.eta_star(d - l, p.theta_star(i))
                    / (p.tau_star(i, p.theta_star(i))
                        * p.eta_star(d - i, p.theta_star(i))
                        * self.squared_norm_gram(i));
                rhs = vec_add(&rhs, &vec_scale(&standard[i], &coeff));
            }
            ok &= rhs == split[l];
        }
        rep.push("split_standard_transition_ii", ok);

        // (iii) E_j v* = sum_{l>=j} eta_{d-l}(theta_j) / (tau_j(theta_j) eta_{d-j}(theta_j)) tau_l(A) v*
        let mut ok = true;
        for j in 0..n {
            let denom = p.tau(j, p.theta(j)) * p.eta(d - j, p.theta(j));
            let mut rhs = vec![Scalar::zero(); n];
            for l in j..n {
                let coeff = p.eta(d - l, p.theta(j)) / &denom;
                rhs = vec_add(&rhs, &vec_scale(&split[l], &coeff));
            }
            ok &= rhs == dual_standard[j];
        }
        rep.push("split_standard_transition_iii", ok);

        // (iv) tau_l(A) v* = sum_{j>=l} tau_l(theta_j) E_j v*
        let mut ok = true;
        for l in 0..n {
            let mut rhs = vec![Scalar::zero(); n];
            for j in l..n {
                let coeff = p.tau(l, p.theta(j));
                rhs = vec_add(&rhs, &vec_scale(&dual_standard[j], &coeff));
            }
            ok &= rhs == split[l];
        }
        rep.push("split_standard_transition_iv", ok);

        // (v) E_j v*down = <v, v*down>/<v, v*> * phi_{d-j+1}..phi_d / (varphi_1..varphi_j) E_j v*
        let mut ok = true;
        for j in 0..n {
            let lhs = self.e[j].mul_vec(&self.v_star_down);
            let coeff =
                &vv_star_down / &vv_star * p.phi_prod(d - j + 1, d) / p.varphi_prod(1, j);
            ok &= lhs == vec_scale(&dual_standard[j], &coeff);
        }
        rep.push("split_standard_transition_v", ok);

        // E*_0 E_i E*_0 = varphi_1..varphi_i phi_1..phi_{d-i}
        //                 / (eta*_d(theta*_0) tau_i(theta_i) eta_{d-i}(theta_i)) E*_0
        let mut ok = true;
        for i in 0..n {
            let lhs = &(&self.e_star[0] * &self.e[i]) * &self.e_star[0];
            let coeff = p.varphi_prod(1, i) * p.phi_prod(1, d - i)
                / (p.eta_star(d, p.theta_star(0))
                    * p.tau(i, p.theta(i))
                    * p.eta(d - i, p.theta(i)));
            ok &= lhs == self.e_star[0].scale(&coeff);
        }
        rep.push("idempotent_sandwich", ok);

        let mut ok = true;
        for i in 0..n {
            ok &= self.squared_norm_gram(i) == self.squared_norm_formula(i);
        }
        rep.push("squared_norm_two_routes", ok);

        // Split decompositions have one-dimensional summands spanning V,
        // with U_0 = E*_0 V, U_d = E_d V, and U_l = span(tau_l(A) v*).
        let u = self.split_decomposition(SplitVariant::Plain);
        let mut ok = u.iter().all(|s| s.dim() == 1);
        let mut all = Subspace::zero(n);
        for s in &u {
            all = all.sum(s).unwrap();
        }
        ok &= all == Subspace::full(n);
        ok &= u[0] == Subspace::column_space(&self.e_star[0]);
        ok &= u[d] == Subspace::column_space(&self.e[d]);
        for (l, s) in u.iter().enumerate() {
            ok &= *s == Subspace::spanned_by(n, split[l].clone());
        }
        rep.push("split_decomposition_shape", ok);

        let u_down = self.split_decomposition(SplitVariant::Down);
        let mut ok = u_down.iter().all(|s| s.dim() == 1);
        for (l, s) in u_down.iter().enumerate() {
            ok &= *s == Subspace::spanned_by(n, dual_split[l].clone());
        }
        rep.push("dual_split_decomposition_shape", ok);

        // F_l E*_i = 0 for l > i and F_l E_j = 0 for l < j, with F_l the
        // projection onto U_l along the other summands.
        match projections_onto(&u) {
            Some(projections) => {
                let mut ok = true;
                for (l, f) in projections.iter().enumerate() {
                    for i in 0..n {
                        if l > i {
                            ok &= (f * &self.e_star[i]).is_zero();
                        }
                        if l < i {
                            ok &= (f * &self.e[i]).is_zero();
                        }
                    }
                }
                rep.push("split_projection_vanishing", ok);
            }
            None => rep.push("split_projection_vanishing", false),
        }

        rep
    }
}

/// Projections onto each summand of a direct-sum decomposition given by
/// one-dimensional subspaces. `None` when the summands fail to be lines
/// spanning the space.
pub fn projections_onto(summands: &[Subspace]) -> Option<Vec<Matrix>> {
    let n = summands.len();
    if summands.iter().any(|s| s.dim() != 1) {
        return None;
    }
    let basis = Matrix::from_fn(n, n, |r, c| summands[c].basis_matrix().get(0, r).clone());
    let inv = basis.inverse()?;
    Some(
        (0..n)
            .map(|l| {
                let mut selector = Matrix::zeros(n, n);
                selector.set(l, l, Scalar::one());
                &(&basis * &selector) * &inv
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{hamming_preset, johnson_preset, QRacahParams};

    fn johnson(v: u64, d: usize) -> Realization {
        realize(&johnson_preset(v, d).unwrap().array().unwrap()).unwrap()
    }

    fn hamming(n: u64, d: usize) -> Realization {
        realize(&hamming_preset(n, d).unwrap().array().unwrap()).unwrap()
    }

    fn q_racah_sample(d: usize) -> Realization {
        let (q, s, s_star, r1) = (
            Scalar::int(2),
            Scalar::int(3),
            Scalar::int(5),
            Scalar::int(7),
        );
        let r2 = &s * &s_star * q.pow(d as i64 + 1) / &r1;
        let params = QRacahParams {
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
        };
        realize(&params.array().unwrap()).unwrap()
    }

    #[test]
    fn d_one_realization_matches_hand_construction() {
        // theta = (0, 1), theta* = (0, 1), varphi_1 = 1, phi_1 = 2
        // (the compatibility relation forces phi_1 = varphi_1 + 1).
        let p = ParameterArray::new(
            1,
            vec![Scalar::int(0), Scalar::int(1)],
            vec![Scalar::int(0), Scalar::int(1)],
            vec![Scalar::int(1)],
            vec![Scalar::int(2)],
        )
        .unwrap();
        let r = realize(&p).unwrap();
        assert_eq!(r.a(), &Matrix::from_i64(&[&[0, 0], &[1, 1]]));
        assert_eq!(r.a_star(), &Matrix::from_i64(&[&[0, 1], &[0, 1]]));
    }

    #[test]
    fn idempotents_partition_unity() {
        let r = johnson(7, 3);
        let mut total = Matrix::zeros(r.dim(), r.dim());
        for i in 0..r.dim() {
            total = &total + r.e(i);
        }
        assert_eq!(total, Matrix::identity(r.dim()));
    }

    #[test]
    fn johnson_realization_passes_all_invariants() {
        let r = johnson(7, 3);
        let rep = r.invariant_report();
        assert!(rep.all_passed(), "failed: {:?}", rep.failed_names());
    }

    #[test]
    fn identity_suite_passes_on_johnson_hamming_q_racah() {
        for r in [johnson(7, 3), hamming(3, 4), q_racah_sample(4)] {
            let rep = r.identity_report();
            assert!(rep.all_passed(), "failed: {:?}", rep.failed_names());
        }
    }

    #[test]
    fn squared_norm_formula_agrees_with_gram_on_small_case() {
        let p = ParameterArray::new(
            1,
            vec![Scalar::int(0), Scalar::int(1)],
            vec![Scalar::int(0), Scalar::int(1)],
            vec![Scalar::int(1)],
            vec![Scalar::int(2)],
        )
        .unwrap();
        let r = realize(&p).unwrap();
        for i in 0..=1 {
            assert_eq!(r.squared_norm_gram(i), r.squared_norm_formula(i));
        }
    }

    #[test]
    fn gram_solution_space_is_one_dimensional() {
        let r = hamming(2, 2);
        assert_eq!(r.gram_space_dim(), 1);
    }

    #[test]
    fn invalid_array_is_rejected() {
        let p = ParameterArray::new(
            1,
            vec![Scalar::int(0), Scalar::int(1)],
            vec![Scalar::int(0), Scalar::int(1)],
            vec![Scalar::int(1)],
            vec![Scalar::int(3)], // violates the compatibility relation
        )
        .unwrap();
        assert!(matches!(realize(&p), Err(RealizeError::InvalidArray(_))));
    }

    #[test]
    fn split_decomposition_endpoints() {
        let r = johnson(7, 3);
        let u = r.split_decomposition(SplitVariant::Plain);
        assert_eq!(u[0], Subspace::column_space(r.e_star(0)));
        assert_eq!(u[3], Subspace::column_space(r.e(3)));
        for s in &u {
            assert_eq!(s.dim(), 1);
        }
    }

    #[test]
    fn standard_basis_is_invertible_and_expands_v_star() {
        let r = q_racah_sample(3);
        let n = r.dim();
        let basis = Matrix::from_fn(n, n, |row, col| r.standard_basis()[col][row].clone());
        assert!(basis.inverse().is_some());
        // The 0-th standard vector spans the same line as v*.
        let first = &r.standard_basis()[0];
        let ratio = &first[0] / &r.v_star()[0];
        assert!(!ratio.is_zero());
        assert_eq!(*first, crate::matrix::vec_scale(r.v_star(), &ratio));
    }
}
