//! The rank-`k` module `V` with basis `v_0, ..., v_{k-1}`, on which `Y` acts
//! as the companion matrix of `Y^k = Σ q_i Y^i` and `e` projects onto `v_0`.

use thiserror::Error;

use crate::coeff::Scalar;
use crate::matrix::{unit_vector, vec_add, vec_scale, vec_sub, Matrix};
use crate::params::ParamSet;
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("index {index} outside 0..{k}")]
    IndexOutOfRange { index: usize, k: usize },
}

#[derive(Clone, Debug)]
pub struct VRep {
    params: ParamSet,
    y: Matrix,
    y_inv: Matrix,
    x: Matrix,
    e: Matrix,
    w: Matrix,
}

impl VRep {
    /// Builds the generator matrices. Non-admissible parameters are accepted;
    /// [`VRep::verify`] reports what breaks.
    pub fn build(ps: &ParamSet) -> Self {
        let k = ps.k();
        let d = ps.domain();
        let unit = |i| unit_vector(d, k, i);

        let mut y = Matrix::zeros(d, k, k);
        for i in 0..k - 1 {
            y.set_column(i, &unit(i + 1));
        }
        y.set_column(k - 1, ps.q_coeffs());

        // Y⁻¹ v_0 = -q_0⁻¹ Σ q_{i+1} v_i
        let y_inv_v0: Vec<Scalar> = (0..k).map(|i| -(ps.q0_inv() * ps.q_coeff(i + 1))).collect();
        let mut y_inv = Matrix::zeros(d, k, k);
        y_inv.set_column(0, &y_inv_v0);
        for i in 1..k {
            y_inv.set_column(i, &unit(i - 1));
        }

        let mut x_cols: Vec<Vec<Scalar>> = Vec::with_capacity(k);
        x_cols.push(vec_scale(&unit(0), ps.lambda()));
        if k > 1 {
            x_cols.push(vec_scale(&y_inv_v0, ps.lambda_inv()));
        }
        for i in 2..k {
            // X v_i = Y⁻¹ X v_{i-1} - δ v_{i-2} + δ A_{i-1} Y⁻¹ v_0
            let prev = y_inv.mul_vec(&x_cols[i - 1]);
            let shifted = vec_scale(&unit(i - 2), ps.delta());
            let tail = vec_scale(&y_inv_v0, &(ps.delta() * ps.a(i - 1)));
            x_cols.push(vec_add(&vec_sub(&prev, &shifted), &tail));
        }
        let x = Matrix::from_columns(d, &x_cols);

        let mut e = Matrix::zeros(d, k, k);
        for i in 0..k {
            e[(0, i)] = ps.a(i).clone();
        }

        let w = x.sub(&Matrix::scalar(d, k, ps.delta())).add(&e.scale(ps.delta()));
        VRep { params: ps.clone(), y, y_inv, x, e, w }
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn k(&self) -> usize {
        self.params.k()
    }

    pub fn y(&self) -> &Matrix {
        &self.y
    }

    pub fn y_inv(&self) -> &Matrix {
        &self.y_inv
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn e(&self) -> &Matrix {
        &self.e
    }

    pub fn w(&self) -> &Matrix {
        &self.w
    }

    /// Coordinates of `v_s = Y^s v_0` for any integer `s`.
    pub fn v_extended(&self, s: i64) -> Vec<Scalar> {
        let k = self.k();
        let d = self.params.domain();
        if (0..k as i64).contains(&s) {
            return unit_vector(d, k, s as usize);
        }
        let (start, step, count) = if s > 0 {
            (k - 1, &self.y, s - (k as i64 - 1))
        } else {
            (0, &self.y_inv, -s)
        };
        let mut v = unit_vector(d, k, start);
        for _ in 0..count {
            v = step.mul_vec(&v);
        }
        v
    }

    /// Right-hand side of `W v_l = λ⁻¹ v_{-l} + δ Σ_{i=1}^{l} (A_{l+1-i} v_{1-i} - v_{l-2i+2})`.
    pub fn w_closed_form(&self, l: usize) -> Result<Vec<Scalar>, RepError> {
        let k = self.k();
        if l >= k {
            return Err(RepError::IndexOutOfRange { index: l, k });
        }
        let ps = &self.params;
        let li = l as i64;
        let mut sum = vec![ps.domain().zero(); k];
        for i in 1..=li {
            let a = ps.a((li + 1 - i) as usize);
            sum = vec_add(&sum, &vec_scale(&self.v_extended(1 - i), a));
            sum = vec_sub(&sum, &self.v_extended(li - 2 * i + 2));
        }
        let head = vec_scale(&self.v_extended(-li), ps.lambda_inv());
        Ok(vec_add(&head, &vec_scale(&sum, ps.delta())))
    }

    /// `(X - Y⁻¹ W Y⁻¹) v_0`, which vanishes exactly for admissible parameters.
    pub fn admissibility_defect(&self) -> Vec<Scalar> {
        let v0 = unit_vector(self.params.domain(), self.k(), 0);
        let lhs = self.x.mul_vec(&v0);
        let rhs = self.y_inv.mul_vec(&self.w.mul_vec(&self.y_inv.mul_vec(&v0)));
        vec_sub(&lhs, &rhs)
    }

    /// `N = YXYX - 1`.
    pub fn n_operator(&self) -> Matrix {
        let yx = self.y.mul(&self.x);
        yx.mul(&yx).sub(&Matrix::identity(self.params.domain(), self.k()))
    }

    /// Columns `v_l, ..., v_{l+k-1}`.
    pub fn shifted_basis(&self, l: i64) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (l..l + self.k() as i64).map(|s| self.v_extended(s)).collect();
        Matrix::from_columns(self.params.domain(), &cols)
    }

    /// Checks every defining relation of the algebra on `V`, plus `N = 0`.
    pub fn verify(&self) -> Report {
        module_relations(&self.params, &self.y, &self.y_inv, &self.x, &self.w, &self.e, Some(self.n_operator()))
    }
}

/// Relation residuals shared by `V` and `Ξ`. Each residual is zero exactly
/// when the relation holds.
pub(crate) fn module_relations(
    ps: &ParamSet,
    y: &Matrix,
    y_inv: &Matrix,
    x: &Matrix,
    w: &Matrix,
    e: &Matrix,
    n_operator: Option<Matrix>,
) -> Report {
    let d = ps.domain();
    let n = y.rows();
    let id = Matrix::identity(d, n);
    let mut report = Report::new();

    let mut kth = Matrix::zeros(d, n, n);
    let mut y_pow = id.clone();
    for l in 0..=ps.k() {
        kth = kth.add(&y_pow.scale(ps.q_coeff(l)));
        if l < ps.k() {
            y_pow = y_pow.mul(y);
        }
    }
    report.push_residual("sum q_l Y^l = 0", kth);
    report.push_residual("Y Y^-1 = 1", y.mul(y_inv).sub(&id));
    report.push_residual("X W = 1", x.mul(w).sub(&id));
    report.push_residual("W X = 1", w.mul(x).sub(&id));
    let lambda_e = e.scale(ps.lambda());
    report.push_residual("X E = lambda E", x.mul(e).sub(&lambda_e));
    report.push_residual("E X = lambda E", e.mul(x).sub(&lambda_e));

    let yx = y.mul(x);
    let xy = x.mul(y);
    report.push_residual("Y X Y X = X Y X Y", yx.mul(&yx).sub(&xy.mul(&xy)));

    let yxy = yx.mul(y);
    let lambda_inv_e = e.scale(ps.lambda_inv());
    report.push_residual("E Y X Y = lambda^-1 E", e.mul(&yxy).sub(&lambda_inv_e));
    report.push_residual("Y X Y E = lambda^-1 E", yxy.mul(e).sub(&lambda_inv_e));

    let mut y_m = id;
    for m in 0..ps.k() {
        let lhs = e.mul(&y_m).mul(e);
        report.push_residual(&format!("E Y^{m} E = A_{m} E"), lhs.sub(&e.scale(ps.a(m))));
        y_m = y_m.mul(y);
    }
    if let Some(n_op) = n_operator {
        report.push_residual("N = Y X Y X - 1 = 0", n_op);
    }
    report
}
