//! The rank-`3k²` module `Ξ = Ξ_0 ⊕ Ξ_1 ⊕ Ξ_2` with bases `v_ij`, `u_ij`, `w_ij`.
//!
//! `Ξ_0 = V ⊗ V` carries the bimodule action; the other two blocks are built
//! in the order `E`, `X`, `Y` on `u`, `Y` on `w`, since `Y w_ij` needs the
//! earlier columns.

use std::fmt;

use thiserror::Error;

use crate::coeff::{Domain, Scalar};
use crate::matrix::{unit_vector, vec_add, vec_scale, vec_sub, Matrix};
use crate::params::{admissibility_report, ParamSet};
use crate::report::Report;
use crate::repv::{module_relations, VRep};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum XiError {
    #[error("Y times its polynomial inverse is not the identity on admissible parameters")]
    InconsistentInverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisClass {
    V = 0,
    U = 1,
    W = 2,
}

impl BasisClass {
    pub const ALL: [BasisClass; 3] = [BasisClass::V, BasisClass::U, BasisClass::W];

    fn letter(self) -> char {
        match self {
            BasisClass::V => 'v',
            BasisClass::U => 'u',
            BasisClass::W => 'w',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex {
    pub class: BasisClass,
    pub i: usize,
    pub j: usize,
}

impl BasisIndex {
    pub fn new(class: BasisClass, i: usize, j: usize) -> Self {
        BasisIndex { class, i, j }
    }

    pub fn flat(&self, k: usize) -> usize {
        self.class as usize * k * k + self.i * k + self.j
    }

    pub fn from_flat(k: usize, t: usize) -> Self {
        let class = BasisClass::ALL[t / (k * k)];
        let r = t % (k * k);
        BasisIndex { class, i: r / k, j: r % k }
    }

    /// Parses labels such as `u[0][1]`.
    pub fn parse_label(label: &str) -> Option<Self> {
        let class = match label.chars().next()? {
            'v' => BasisClass::V,
            'u' => BasisClass::U,
            'w' => BasisClass::W,
            _ => return None,
        };
        let rest = label[1..].strip_prefix('[')?.strip_suffix(']')?;
        let (i, j) = rest.split_once("][")?;
        Some(BasisIndex { class, i: i.parse().ok()?, j: j.parse().ok()? })
    }

    /// All `3k²` indices in flat order.
    pub fn all(k: usize) -> impl Iterator<Item = BasisIndex> {
        (0..3 * k * k).map(move |t| BasisIndex::from_flat(k, t))
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}][{}]", self.class.letter(), self.i, self.j)
    }
}

#[derive(Clone, Debug)]
pub struct XiRep {
    vrep: VRep,
    y: Matrix,
    y_inv: Matrix,
    x: Matrix,
    e: Matrix,
    w: Matrix,
}

/// Expresses `x_ij` for arbitrary integers `i, j` in the basis of `Ξ`, using
/// the `k`-th order recurrence in each index.
pub fn index_normalize(vrep: &VRep, class: BasisClass, i: i64, j: i64) -> Vec<Scalar> {
    let k = vrep.k();
    let d = vrep.params().domain();
    let mut out = vec![d.zero(); 3 * k * k];
    let (a, b) = (vrep.v_extended(i), vrep.v_extended(j));
    let base = class as usize * k * k;
    for (r, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (c, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[base + r * k + c] = x * y;
            }
        }
    }
    out
}

/// Places a vector of `V ⊗ V` into the `V`-class block.
fn embed_v_class(d: &Domain, k: usize, vv: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![d.zero(); 3 * k * k];
    out[..k * k].clone_from_slice(vv);
    out
}

pub fn build_xi(ps: &ParamSet) -> Result<XiRep, XiError> {
    let vrep = VRep::build(ps);
    let k = ps.k();
    let n = 3 * k * k;
    let d = ps.domain();
    let kk = k * k;
    let idx = |c: BasisClass, i: usize, j: usize| BasisIndex::new(c, i, j).flat(k);
    let norm = |c: BasisClass, i: i64, j: i64| index_normalize(&vrep, c, i, j);

    // Left action on the first tensor factor of V ⊗ V.
    let id_k = Matrix::identity(d, k);
    let mut y = Matrix::zeros(d, n, n);
    let mut x = Matrix::zeros(d, n, n);
    let mut e = Matrix::zeros(d, n, n);
    let place_block = |target: &mut Matrix, block: &Matrix| {
        for r in 0..kk {
            for c in 0..kk {
                target[(r, c)] = block[(r, c)].clone();
            }
        }
    };
    place_block(&mut y, &vrep.y().kron(&id_k));
    place_block(&mut x, &vrep.x().kron(&id_k));
    place_block(&mut e, &vrep.e().kron(&id_k));

    // E u_ij = v_0 ⊗ (Y^j X Y^i v_0), E w_ij = λ E u_ij.
    let v0 = unit_vector(d, k, 0);
    for i in 0..k {
        for j in 0..k {
            let mut right = v0.clone();
            for _ in 0..i {
                right = vrep.y().mul_vec(&right);
            }
            right = vrep.x().mul_vec(&right);
            for _ in 0..j {
                right = vrep.y().mul_vec(&right);
            }
            let mut vv = vec![d.zero(); kk];
            vv[..k].clone_from_slice(&right);
            let eu = embed_v_class(d, k, &vv);
            e.set_column(idx(BasisClass::W, i, j), &vec_scale(&eu, ps.lambda()));
            e.set_column(idx(BasisClass::U, i, j), &eu);
        }
    }

    // X u_ij = w_ij, X w_ij = u_ij + δ w_ij - δλ E u_ij.
    for i in 0..k {
        for j in 0..k {
            let (u, w) = (idx(BasisClass::U, i, j), idx(BasisClass::W, i, j));
            x.set_column(u, &unit_vector(d, n, w));
            let eu = e.column(u);
            let mut col = vec_add(&unit_vector(d, n, u), &vec_scale(&unit_vector(d, n, w), ps.delta()));
            col = vec_sub(&col, &vec_scale(&eu, &(ps.delta() * ps.lambda())));
            x.set_column(w, &col);
        }
    }

    for i in 0..k {
        for j in 0..k {
            y.set_column(idx(BasisClass::U, i, j), &norm(BasisClass::U, i as i64 + 1, j as i64));
        }
    }

    // Y w_ij = W u_{i,j+1} + δ u_{1,i+j} - δ Y X v_ij, with W = X - δ + δE.
    let w_apply = |x: &Matrix, e: &Matrix, v: &[Scalar]| {
        let xv = x.mul_vec(v);
        let ev = e.mul_vec(v);
        vec_add(&vec_sub(&xv, &vec_scale(v, ps.delta())), &vec_scale(&ev, ps.delta()))
    };
    for i in 0..k {
        for j in 0..k {
            let u_shift = norm(BasisClass::U, i as i64, j as i64 + 1);
            let mut col = w_apply(&x, &e, &u_shift);
            col = vec_add(&col, &vec_scale(&norm(BasisClass::U, 1, (i + j) as i64), ps.delta()));
            let yxv = y.mul_vec(&x.column(idx(BasisClass::V, i, j)));
            col = vec_sub(&col, &vec_scale(&yxv, ps.delta()));
            y.set_column(idx(BasisClass::W, i, j), &col);
        }
    }

    // Y⁻¹ = -q_0⁻¹ Σ_{i<k} q_{i+1} Y^i
    let mut poly_inv = Matrix::zeros(d, n, n);
    let mut y_pow = Matrix::identity(d, n);
    for i in 0..k {
        poly_inv = poly_inv.add(&y_pow.scale(ps.q_coeff(i + 1)));
        if i + 1 < k {
            y_pow = y_pow.mul(&y);
        }
    }
    let poly_inv = poly_inv.scale(&-ps.q0_inv().clone());
    let y_inv = if y.mul(&poly_inv).is_identity() {
        poly_inv
    } else if admissibility_report(ps).admissible {
        return Err(XiError::InconsistentInverse);
    } else {
        // The k-th order relation fails on Ξ here; keep the genuine inverse
        // when there is one so the remaining relations can still be checked.
        y.inverse().unwrap_or(poly_inv)
    };

    let w = x.sub(&Matrix::scalar(d, n, ps.delta())).add(&e.scale(ps.delta()));
    Ok(XiRep { vrep, y, y_inv, x, e, w })
}

impl XiRep {
    pub fn params(&self) -> &ParamSet {
        self.vrep.params()
    }

    pub fn vrep(&self) -> &VRep {
        &self.vrep
    }

    pub fn k(&self) -> usize {
        self.vrep.k()
    }

    /// `3k²`.
    pub fn dim(&self) -> usize {
        3 * self.k() * self.k()
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

    pub fn normalize(&self, class: BasisClass, i: i64, j: i64) -> Vec<Scalar> {
        index_normalize(&self.vrep, class, i, j)
    }

    pub fn class_indices(&self, classes: &[BasisClass]) -> Vec<usize> {
        let k = self.k();
        BasisIndex::all(k).filter(|b| classes.contains(&b.class)).map(|b| b.flat(k)).collect()
    }

    /// `YXYX - 1` restricted to the `V`-class block.
    pub fn n_on_v_class(&self) -> Matrix {
        let yx = self.y.mul(&self.x);
        let n_full = yx.mul(&yx).sub(&Matrix::identity(self.params().domain(), self.dim()));
        let v = self.class_indices(&[BasisClass::V]);
        n_full.submatrix(&v, &v)
    }

    pub fn verify(&self) -> Report {
        let mut report =
            module_relations(self.params(), &self.y, &self.y_inv, &self.x, &self.w, &self.e, None);
        report.push_residual("N = 0 on the v-class block", self.n_on_v_class());
        report
    }
}

/// The 3×3 identities `X'W' = W'X' = 1` and `X'E' = E'X' = λE'` with
/// `W' = X' - δ + δE'`.
pub fn three_by_three_check(ps: &ParamSet) -> bool {
    let d = ps.domain();
    let (z, one) = (d.zero(), d.one());
    let (delta, lambda) = (ps.delta().clone(), ps.lambda().clone());
    let x = Matrix::from_rows(
        d,
        vec![
            vec![z.clone(), one.clone(), z.clone()],
            vec![one.clone(), delta.clone(), z.clone()],
            vec![z.clone(), -(&delta * &lambda), lambda.clone()],
        ],
    );
    let e = Matrix::from_rows(
        d,
        vec![
            vec![z.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone()],
            vec![one, lambda.clone(), ps.a(0).clone()],
        ],
    );
    let w = x.sub(&Matrix::scalar(d, 3, &delta)).add(&e.scale(&delta));
    let id = Matrix::identity(d, 3);
    let le = e.scale(&lambda);
    x.mul(&w) == id && w.mul(&x) == id && x.mul(&e) == le && e.mul(&x) == le
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{fully_generic, generic_admissible, random_admissible_finite_field, Sign};

    fn rational_k1(q0: (i64, i64)) -> ParamSet {
        let d = Domain::rationals();
        ParamSet::new(
            d.clone(),
            d.int(2),
            d.int(3),
            vec![d.fraction(q0.0, q0.1).unwrap()],
            vec![d.fraction(-7, 9).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn flat_index_round_trip() {
        for k in 1..5 {
            for t in 0..3 * k * k {
                let b = BasisIndex::from_flat(k, t);
                assert_eq!(b.flat(k), t);
                assert_eq!(BasisIndex::parse_label(&b.to_string()), Some(b));
            }
        }
        assert_eq!(BasisIndex::new(BasisClass::U, 0, 0).flat(2), 4);
        assert_eq!(BasisIndex::parse_label("x[0][0]"), None);
        assert_eq!(BasisIndex::parse_label("u[0]"), None);
    }

    #[test]
    fn normalize_examples() {
        let ps = generic_admissible(2, Sign::Plus).unwrap();
        let v = VRep::build(&ps);
        let d = ps.domain();
        assert_eq!(index_normalize(&v, BasisClass::U, 0, 0), unit_vector(d, 12, 4));
        let mut expected = vec![d.zero(); 12];
        expected[0] = ps.q_coeff(0).clone();
        expected[2] = ps.q_coeff(1).clone();
        assert_eq!(index_normalize(&v, BasisClass::V, 2, 0), expected);
        let mut expected = vec![d.zero(); 12];
        expected[8] = -(ps.q0_inv() * ps.q_coeff(1));
        expected[9] = ps.q0_inv().clone();
        assert_eq!(index_normalize(&v, BasisClass::W, 0, -1), expected);
    }

    #[test]
    fn k1_e_on_u() {
        let ps = rational_k1((1, 3));
        let xi = build_xi(&ps).unwrap();
        assert_eq!(xi.e().column(1), vec![ps.lambda().clone(), ps.domain().zero(), ps.domain().zero()]);
        assert!(xi.verify().passed());
    }

    #[test]
    fn x_maps_u_to_w() {
        let ps = random_admissible_finite_field(3, 101, 5).unwrap();
        let xi = build_xi(&ps).unwrap();
        let d = ps.domain();
        for i in 0..3 {
            for j in 0..3 {
                let u = BasisIndex::new(BasisClass::U, i, j).flat(3);
                let w = BasisIndex::new(BasisClass::W, i, j).flat(3);
                assert_eq!(xi.x().column(u), unit_vector(d, 27, w));
            }
        }
    }

    #[test]
    fn y_shifts_w_1j() {
        for k in 1..5 {
            let ps = random_admissible_finite_field(k, 101, 11).unwrap();
            let xi = build_xi(&ps).unwrap();
            for j in 0..k as i64 {
                let w1j = xi.normalize(BasisClass::W, 1, j);
                assert_eq!(xi.y().mul_vec(&w1j), xi.normalize(BasisClass::W, 1, j + 1), "k={k} j={j}");
            }
        }
    }

    #[test]
    fn finite_field_k4_passes() {
        let ps = random_admissible_finite_field(4, 101, 1).unwrap();
        let report = build_xi(&ps).unwrap().verify();
        assert!(report.passed(), "{:?}", report.failures().map(|c| &c.name).collect::<Vec<_>>());
    }

    #[test]
    fn generic_k2_passes() {
        let report = build_xi(&generic_admissible(2, Sign::Plus).unwrap()).unwrap().verify();
        assert!(report.passed(), "{:?}", report.failures().map(|c| &c.name).collect::<Vec<_>>());
    }

    #[test]
    fn non_admissible_k1_fails() {
        let xi = build_xi(&rational_k1((1, 2))).unwrap();
        assert!(!xi.verify().passed());
    }

    #[test]
    fn n_is_not_zero_on_u_class() {
        let ps = random_admissible_finite_field(2, 101, 3).unwrap();
        let xi = build_xi(&ps).unwrap();
        let yx = xi.y().mul(xi.x());
        let n = yx.mul(&yx).sub(&Matrix::identity(ps.domain(), xi.dim()));
        let u = xi.class_indices(&[BasisClass::U]);
        assert!(!n.submatrix(&(0..xi.dim()).collect::<Vec<_>>(), &u).is_zero());
    }

    #[test]
    fn three_by_three() {
        assert!(three_by_three_check(&rational_k1((1, 3))));
        assert!(!three_by_three_check(&fully_generic(1, false).unwrap()));
        assert!(three_by_three_check(&fully_generic(2, true).unwrap()));
    }
}
