//! The algebra itself, realized as its regular representation on `Ξ` through
//! `v_ij ↦ Y^i e Y^j`, `u_ij ↦ Y^i X Y^j`, `w_ij ↦ X Y^i X Y^j`.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use rayon::prelude::*;
use thiserror::Error;

use crate::coeff::{Domain, Scalar};
use crate::matrix::{unit_vector, vec_add, vec_is_zero, vec_scale, Matrix};
use crate::params::{admissibility_report, AdmissibilityReport, ParamSet};
use crate::report::Report;
use crate::repv::VRep;
use crate::repxi::{build_xi, three_by_three_check, BasisClass, BasisIndex, XiError, XiRep};
use crate::words::{Generator, Token, Word};

static NEXT_ID: AtomicU64 = AtomicU64::new(0);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("elements belong to different algebras")]
    RepMismatch,
    #[error("expected {expected} coefficients, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    owner: u64,
    coeffs: Vec<Scalar>,
}

impl AlgebraElement {
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        vec_is_zero(&self.coeffs)
    }

    /// Nonzero coefficients in flat basis order.
    pub fn support(&self, k: usize) -> Vec<(BasisIndex, &Scalar)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| (BasisIndex::from_flat(k, t), c))
            .collect()
    }
}

/// Every check run by the `verify` command.
pub struct Verification {
    pub admissibility: AdmissibilityReport,
    pub v: Report,
    pub xi: Report,
    pub phi: Report,
    pub three_by_three: bool,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.v.passed() && self.xi.passed() && self.phi.passed() && self.three_by_three
    }

    pub fn to_json(&self, d: &Domain, with_residuals: bool) -> serde_json::Value {
        serde_json::json!({
            "admissibility": self.admissibility.to_json(d),
            "v": self.v.to_json(d, with_residuals),
            "xi": self.xi.to_json(d, with_residuals),
            "phi": self.phi.to_json(d, with_residuals),
            "three_by_three": self.three_by_three,
            "passed": self.passed(),
        })
    }
}

pub struct Algebra {
    id: u64,
    xi: XiRep,
    y_powers: OnceLock<Vec<Matrix>>,
    left: Vec<OnceLock<Matrix>>,
    involution: OnceLock<Matrix>,
    one: Vec<Scalar>,
}

impl Algebra {
    pub fn new(xi: XiRep) -> Self {
        let k = xi.k();
        let u00 = BasisIndex::new(BasisClass::U, 0, 0).flat(k);
        // κ = X⁻¹ u_00
        let one = xi.w().column(u00);
        Algebra {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            left: (0..xi.dim()).map(|_| OnceLock::new()).collect(),
            xi,
            y_powers: OnceLock::new(),
            involution: OnceLock::new(),
            one,
        }
    }

    pub fn from_params(ps: &ParamSet) -> Result<Self, XiError> {
        Ok(Algebra::new(build_xi(ps)?))
    }

    pub fn xi(&self) -> &XiRep {
        &self.xi
    }

    pub fn params(&self) -> &ParamSet {
        self.xi.params()
    }

    pub fn domain(&self) -> &Domain {
        self.params().domain()
    }

    pub fn k(&self) -> usize {
        self.xi.k()
    }

    pub fn dim(&self) -> usize {
        self.xi.dim()
    }

    pub fn element(&self, coeffs: Vec<Scalar>) -> Result<AlgebraElement, AlgebraError> {
        if coeffs.len() != self.dim() {
            return Err(AlgebraError::LengthMismatch { expected: self.dim(), got: coeffs.len() });
        }
        Ok(AlgebraElement { owner: self.id, coeffs })
    }

    fn wrap(&self, coeffs: Vec<Scalar>) -> AlgebraElement {
        AlgebraElement { owner: self.id, coeffs }
    }

    pub fn basis_element(&self, b: BasisIndex) -> AlgebraElement {
        self.wrap(unit_vector(self.domain(), self.dim(), b.flat(self.k())))
    }

    pub fn one_element(&self) -> AlgebraElement {
        self.wrap(self.one.clone())
    }

    /// The spelling of a basis element as a word.
    pub fn basis_word(b: BasisIndex) -> Word {
        let (i, j) = (b.i as i64, b.j as i64);
        let mut w = Word::empty();
        if b.class == BasisClass::W {
            w.push(Generator::X, 1);
        }
        w.push(Generator::Y, i);
        w.push(if b.class == BasisClass::V { Generator::E } else { Generator::X }, 1);
        w.push(Generator::Y, j);
        w
    }

    fn generator_matrix(&self, t: Token) -> &Matrix {
        match (t.gen, t.exp > 0) {
            (Generator::X, true) => self.xi.x(),
            (Generator::X, false) => self.xi.w(),
            (Generator::Y, true) => self.xi.y(),
            (Generator::Y, false) => self.xi.y_inv(),
            (Generator::E, _) => self.xi.e(),
        }
    }

    /// Left action of a word on a coordinate vector.
    pub fn apply_word(&self, word: &Word, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for t in word.tokens().iter().rev() {
            let m = self.generator_matrix(*t);
            for _ in 0..t.exp.unsigned_abs() {
                out = m.mul_vec(&out);
            }
        }
        out
    }

    pub fn reduce_word(&self, word: &Word) -> AlgebraElement {
        self.wrap(self.apply_word(word, &self.one))
    }

    fn y_power(&self, i: usize) -> &Matrix {
        let powers = self.y_powers.get_or_init(|| {
            let mut v = vec![Matrix::identity(self.domain(), self.dim())];
            for _ in 1..self.k() {
                let next = v.last().unwrap().mul(self.xi.y());
                v.push(next);
            }
            v
        });
        &powers[i]
    }

    /// Left multiplication by basis element `t`, built on first use.
    pub fn left_matrix(&self, t: usize) -> &Matrix {
        self.left[t].get_or_init(|| {
            let b = BasisIndex::from_flat(self.k(), t);
            let middle = if b.class == BasisClass::V { self.xi.e() } else { self.xi.x() };
            let mut m = self.y_power(b.i).mul(middle).mul(self.y_power(b.j));
            if b.class == BasisClass::W {
                m = self.xi.x().mul(&m);
            }
            m
        })
    }

    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        if a.owner != self.id || b.owner != self.id {
            return Err(AlgebraError::RepMismatch);
        }
        let mut acc = vec![self.domain().zero(); self.dim()];
        for (s, c) in a.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = vec_add(&acc, &vec_scale(&self.left_matrix(s).mul_vec(&b.coeffs), c));
            }
        }
        Ok(self.wrap(acc))
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        if a.owner != self.id || b.owner != self.id {
            return Err(AlgebraError::RepMismatch);
        }
        Ok(self.wrap(vec_add(&a.coeffs, &b.coeffs)))
    }

    pub fn scale(&self, a: &AlgebraElement, s: &Scalar) -> AlgebraElement {
        self.wrap(vec_scale(&a.coeffs, s))
    }

    /// Matrix of the anti-involution on the basis.
    pub fn involution_matrix(&self) -> &Matrix {
        self.involution.get_or_init(|| {
            let cols: Vec<Vec<Scalar>> = BasisIndex::all(self.k())
                .collect::<Vec<_>>()
                .par_iter()
                .map(|b| self.apply_word(&Self::basis_word(*b).reversed(), &self.one))
                .collect();
            Matrix::from_columns(self.domain(), &cols)
        })
    }

    pub fn involution(&self, a: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        if a.owner != self.id {
            return Err(AlgebraError::RepMismatch);
        }
        Ok(self.wrap(self.involution_matrix().mul_vec(&a.coeffs)))
    }

    /// `c[s]` is the left multiplication matrix of basis element `s`; its
    /// column `t` holds the product `b_s b_t`.
    pub fn structure_constants(&self) -> Vec<&Matrix> {
        (0..self.dim()).into_par_iter().for_each(|s| {
            self.left_matrix(s);
        });
        (0..self.dim()).map(|s| self.left_matrix(s)).collect()
    }

    /// Every basis word reduces to its own unit vector.
    pub fn verify_phi(&self) -> Report {
        let cols: Vec<Vec<Scalar>> = BasisIndex::all(self.k())
            .collect::<Vec<_>>()
            .par_iter()
            .map(|b| self.apply_word(&Self::basis_word(*b), &self.one))
            .collect();
        let m = Matrix::from_columns(self.domain(), &cols);
        let mut report = Report::new();
        report.push_residual("basis words reduce to unit vectors", m.sub(&Matrix::identity(self.domain(), self.dim())));
        report
    }

    pub fn verify_all(&self) -> Verification {
        let ps = self.params();
        Verification {
            admissibility: admissibility_report(ps),
            v: VRep::build(ps).verify(),
            xi: self.xi.verify(),
            phi: self.verify_phi(),
            three_by_three: three_by_three_check(ps),
        }
    }

    /// Structure of the two-sided ideal generated by `e`.
    pub fn ideal_check(&self) -> Report {
        let k = self.k();
        let d = self.domain();
        let v = self.xi.class_indices(&[BasisClass::V]);
        let uw = self.xi.class_indices(&[BasisClass::U, BasisClass::W]);
        let mut report = Report::new();

        let gens: [(&str, Token); 5] = [
            ("Y", Token { gen: Generator::Y, exp: 1 }),
            ("Y^-1", Token { gen: Generator::Y, exp: -1 }),
            ("X", Token { gen: Generator::X, exp: 1 }),
            ("X^-1", Token { gen: Generator::X, exp: -1 }),
            ("e", Token { gen: Generator::E, exp: 1 }),
        ];
        for (name, t) in gens {
            let left = self.generator_matrix(t).submatrix(&uw, &v);
            report.push_residual(&format!("{name} * v-class lies in v-class"), left);
            let g = self.reduce_word(&Word::new(vec![t]).expect("valid token"));
            let right_cols: Vec<Vec<Scalar>> =
                v.iter().map(|&s| self.left_matrix(s).mul_vec(&g.coeffs)).collect();
            let right = Matrix::from_columns(d, &right_cols);
            report.push_residual(&format!("v-class * {name} lies in v-class"), right.submatrix(&uw, &(0..v.len()).collect::<Vec<_>>()));
            if name == "Y" {
                let expected: Vec<Vec<Scalar>> = v
                    .iter()
                    .map(|&s| {
                        let b = BasisIndex::from_flat(k, s);
                        self.xi.normalize(BasisClass::V, b.i as i64, b.j as i64 + 1)
                    })
                    .collect();
                report.push_residual("v[i][j] * Y = v[i][j+1]", right.sub(&Matrix::from_columns(d, &expected)));
            }
        }

        let vrep = self.xi.vrep();
        for j in 0..k {
            let column: Vec<usize> = (0..k).map(|i| BasisIndex::new(BasisClass::V, i, j).flat(k)).collect();
            for (name, xi_m, v_m) in [
                ("Y", self.xi.y(), vrep.y()),
                ("X", self.xi.x(), vrep.x()),
                ("e", self.xi.e(), vrep.e()),
            ] {
                let restricted = xi_m.submatrix(&column, &column);
                report.push_residual(&format!("{name} on v[*][{j}] equals V"), restricted.sub(v_m));
            }
        }

        let v00 = self.basis_element(BasisIndex::new(BasisClass::V, 0, 0));
        let generated: Vec<Vec<Scalar>> = v
            .iter()
            .map(|&s| {
                let b = BasisIndex::from_flat(k, s);
                let mut left = Word::empty();
                left.push(Generator::Y, b.i as i64);
                let mut right = Word::empty();
                right.push(Generator::Y, b.j as i64);
                let r = self.reduce_word(&right);
                let tail = self.multiply(&v00, &r).expect("same algebra");
                self.apply_word(&left, &tail.coeffs)
            })
            .collect();
        let generated = Matrix::from_columns(d, &generated);
        let mut expected = Matrix::zeros(d, self.dim(), v.len());
        for (c, &s) in v.iter().enumerate() {
            expected[(s, c)] = d.one();
        }
        report.push_residual("Y^i e Y^j generates v[i][j]", generated.sub(&expected));

        let star = self.involution_matrix();
        report.push_residual("involution preserves v-class", star.submatrix(&uw, &v));
        report
    }

    /// Relations of the quotient by the ideal generated by `e`, with `T_0`
    /// and `T_1` the induced actions of `Y` and `X`.
    pub fn hecke_quotient_check(&self) -> (usize, Report) {
        let d = self.domain();
        let ps = self.params();
        let uw = self.xi.class_indices(&[BasisClass::U, BasisClass::W]);
        let n = uw.len();
        let t0 = self.xi.y().submatrix(&uw, &uw);
        let t1 = self.xi.x().submatrix(&uw, &uw);
        let id = Matrix::identity(d, n);
        let mut report = Report::new();

        let t0t1 = t0.mul(&t1);
        let t1t0 = t1.mul(&t0);
        report.push_residual("T0 T1 T0 T1 = T1 T0 T1 T0", t0t1.mul(&t0t1).sub(&t1t0.mul(&t1t0)));
        let mut kth = Matrix::zeros(d, n, n);
        let mut pow = id.clone();
        for l in 0..=ps.k() {
            kth = kth.add(&pow.scale(ps.q_coeff(l)));
            pow = pow.mul(&t0);
        }
        report.push_residual("sum q_l T0^l = 0", kth);
        report.push_residual("T1^2 = delta T1 + 1", t1.mul(&t1).sub(&t1.scale(ps.delta())).sub(&id));
        let k = ps.k();
        report.push_flag("quotient dimension is 2k^2", n == 2 * k * k);
        (n, report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{generic_admissible, random_admissible_finite_field, Sign};
    use crate::words::parse_word;

    fn bi(class: BasisClass, i: usize, j: usize) -> BasisIndex {
        BasisIndex::new(class, i, j)
    }

    fn fp_algebra(k: usize) -> Algebra {
        Algebra::from_params(&random_admissible_finite_field(k, 101, 4).unwrap()).unwrap()
    }

    #[test]
    fn one_coordinates() {
        let alg = fp_algebra(2);
        let ps = alg.params();
        let one = alg.one_element();
        let k = 2;
        let mut expected = vec![ps.domain().zero(); 12];
        expected[bi(BasisClass::W, 0, 0).flat(k)] = ps.domain().one();
        expected[bi(BasisClass::U, 0, 0).flat(k)] = -ps.delta().clone();
        expected[bi(BasisClass::V, 0, 0).flat(k)] = ps.delta() * ps.lambda();
        assert_eq!(one.coeffs(), &expected[..]);
        assert_eq!(alg.xi().x().mul_vec(one.coeffs()), unit_vector(ps.domain(), 12, 4));
    }

    #[test]
    fn reduce_examples() {
        let alg = fp_algebra(2);
        let ps = alg.params();
        let r = |s: &str| alg.reduce_word(&parse_word(s).unwrap());
        assert_eq!(r("X"), alg.basis_element(bi(BasisClass::U, 0, 0)));
        assert_eq!(r("e Y e"), alg.scale(&alg.basis_element(bi(BasisClass::V, 0, 0)), ps.a(1)));
        assert_eq!(r("Y X Y"), alg.basis_element(bi(BasisClass::U, 1, 1)));
        assert_eq!(r("X Y X Y"), r("Y X Y X"));
        assert_eq!(r(""), alg.one_element());
        let x_inv = r("X^-1");
        let prod = alg.multiply(&x_inv, &alg.basis_element(bi(BasisClass::U, 0, 0))).unwrap();
        assert_eq!(prod, alg.one_element());
    }

    #[test]
    fn multiply_examples() {
        let alg = fp_algebra(2);
        let ps = alg.params();
        let u00 = alg.basis_element(bi(BasisClass::U, 0, 0));
        let v00 = alg.basis_element(bi(BasisClass::V, 0, 0));
        assert_eq!(alg.multiply(&u00, &u00).unwrap(), alg.basis_element(bi(BasisClass::W, 0, 0)));
        assert_eq!(alg.multiply(&v00, &v00).unwrap(), alg.scale(&v00, ps.a(0)));
        assert_eq!(alg.multiply(&v00, &u00).unwrap(), alg.scale(&v00, ps.lambda()));
        let other = fp_algebra(2);
        assert_eq!(other.multiply(&u00, &u00), Err(AlgebraError::RepMismatch));
    }

    #[test]
    fn involution_examples() {
        let alg = fp_algebra(3);
        let s = alg.involution_matrix();
        assert!(s.mul(s).is_identity());
        for i in 0..3 {
            for j in 0..3 {
                for class in [BasisClass::V, BasisClass::U] {
                    let image = alg.involution(&alg.basis_element(bi(class, i, j))).unwrap();
                    assert_eq!(image, alg.basis_element(bi(class, j, i)));
                }
            }
        }
        let w00 = alg.basis_element(bi(BasisClass::W, 0, 0));
        assert_eq!(alg.involution(&w00).unwrap(), w00);
    }

    #[test]
    fn structural_checks_generic_k2() {
        let alg = Algebra::from_params(&generic_admissible(2, Sign::Minus).unwrap()).unwrap();
        assert!(alg.verify_phi().passed());
        let ideal = alg.ideal_check();
        assert!(ideal.passed(), "{:?}", ideal.failures().map(|c| &c.name).collect::<Vec<_>>());
        let (dim, hecke) = alg.hecke_quotient_check();
        assert_eq!(dim, 8);
        assert!(hecke.passed());
    }

    #[test]
    fn structure_constants_k1() {
        let alg = fp_algebra(1);
        let c = alg.structure_constants();
        assert_eq!(c.len(), 3);
        let u00 = bi(BasisClass::U, 0, 0).flat(1);
        assert_eq!(c[u00].column(u00), unit_vector(alg.domain(), 3, bi(BasisClass::W, 0, 0).flat(1)));
    }
}
