//! Parameter sets and the admissibility conditions.
//!
//! A parameter set fixes `k` and the ring elements `q, λ, q_0..q_{k-1},
//! A_0..A_{k-1}`. Admissibility means
//!
//! * `λ - λ⁻¹ = δ(1 - A_0)` with `δ = q - q⁻¹`,
//! * `β = 0`, and
//! * `h_1 = ... = h_{k-1} = 0`,
//!
//! where `β` and `h_l` are the closed forms in [`admissibility_report`]. The
//! same quantities can be recomputed from scratch in the module `V` by
//! [`symbolic_derive_h`], which is how the closed forms are cross-checked.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{CoeffError, Domain, Scalar};
use crate::matrix::Matrix;
use crate::repv::VRep;

/// Retry budget for rejection sampling over finite fields.
pub const RESAMPLING_BUDGET: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("expected {expected} values for {name}, got {got}")]
    LengthMismatch { name: &'static str, expected: usize, got: usize },
    #[error("parameter {0} does not belong to the declared domain")]
    ForeignScalar(String),
    #[error("parameter {0} must be a unit")]
    NotInvertible(&'static str),
    #[error("delta = q - q^-1 is zero")]
    DeltaZero,
    #[error("no usable sample after {0} attempts")]
    ExhaustedResampling(usize),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Which root of `β = 0` is used for `q_0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Debug)]
pub struct ParamSet {
    domain: Domain,
    q: Scalar,
    lambda: Scalar,
    /// `q_0, ..., q_{k-1}` followed by `q_k = -1`.
    q_coeffs: Vec<Scalar>,
    a_coeffs: Vec<Scalar>,
    q_inv: Scalar,
    lambda_inv: Scalar,
    q0_inv: Scalar,
    delta: Scalar,
}

impl ParamSet {
    /// Validates and assembles a parameter set. `q_coeffs` and `a_coeffs`
    /// both have length `k`. Admissibility is not required.
    pub fn new(
        domain: Domain,
        q: Scalar,
        lambda: Scalar,
        q_coeffs: Vec<Scalar>,
        a_coeffs: Vec<Scalar>,
    ) -> Result<Self, ParamError> {
        let k = q_coeffs.len();
        if k == 0 {
            return Err(ParamError::ZeroK);
        }
        if a_coeffs.len() != k {
            return Err(ParamError::LengthMismatch { name: "A_i", expected: k, got: a_coeffs.len() });
        }
        let check = |name: String, s: &Scalar| {
            if domain.contains(s) { Ok(()) } else { Err(ParamError::ForeignScalar(name)) }
        };
        check("q".into(), &q)?;
        check("lambda".into(), &lambda)?;
        for (i, s) in q_coeffs.iter().enumerate() {
            check(format!("q{i}"), s)?;
        }
        for (i, s) in a_coeffs.iter().enumerate() {
            check(format!("A{i}"), s)?;
        }
        let q_inv = q.inv().map_err(|_| ParamError::NotInvertible("q"))?;
        let lambda_inv = lambda.inv().map_err(|_| ParamError::NotInvertible("lambda"))?;
        let q0_inv = q_coeffs[0].inv().map_err(|_| ParamError::NotInvertible("q0"))?;
        let delta = &q - &q_inv;
        if delta.is_zero() {
            return Err(ParamError::DeltaZero);
        }
        let mut q_coeffs = q_coeffs;
        q_coeffs.push(-domain.one());
        Ok(ParamSet { domain, q, lambda, q_coeffs, a_coeffs, q_inv, lambda_inv, q0_inv, delta })
    }

    pub fn k(&self) -> usize {
        self.a_coeffs.len()
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    /// `q_i` for `0 <= i <= k`, with `q_k = -1`.
    pub fn q_coeff(&self, i: usize) -> &Scalar {
        &self.q_coeffs[i]
    }

    /// `q_0, ..., q_{k-1}`.
    pub fn q_coeffs(&self) -> &[Scalar] {
        &self.q_coeffs[..self.k()]
    }

    pub fn a(&self, i: usize) -> &Scalar {
        &self.a_coeffs[i]
    }

    pub fn a_coeffs(&self) -> &[Scalar] {
        &self.a_coeffs
    }

    pub fn q_inv(&self) -> &Scalar {
        &self.q_inv
    }

    pub fn lambda_inv(&self) -> &Scalar {
        &self.lambda_inv
    }

    pub fn q0_inv(&self) -> &Scalar {
        &self.q0_inv
    }

    pub fn delta(&self) -> &Scalar {
        &self.delta
    }

    /// `1` if `k` is odd, `0` otherwise.
    pub fn epsilon(&self) -> usize {
        self.k() % 2
    }

    /// `⌈k/2⌉`, so that `k = 2z - ε`.
    pub fn z(&self) -> usize {
        self.k().div_ceil(2)
    }

    /// Same parameters with `A_i` replaced.
    pub fn with_a(&self, i: usize, value: Scalar) -> Result<Self, ParamError> {
        let mut a = self.a_coeffs.clone();
        a[i] = value;
        ParamSet::new(self.domain.clone(), self.q.clone(), self.lambda.clone(), self.q_coeffs().to_vec(), a)
    }

    fn view(&self) -> Coefficients<'_> {
        Coefficients {
            k: self.k(),
            q: &self.q_coeffs,
            a: &self.a_coeffs,
            lambda: &self.lambda,
            lambda_inv: &self.lambda_inv,
            q0_inv: &self.q0_inv,
            delta: &self.delta,
        }
    }
}

/// Everything the closed forms read, borrowed so that the admissible
/// constructors can evaluate `h_l` on a partially filled `A` vector.
struct Coefficients<'a> {
    k: usize,
    q: &'a [Scalar],
    a: &'a [Scalar],
    lambda: &'a Scalar,
    lambda_inv: &'a Scalar,
    q0_inv: &'a Scalar,
    delta: &'a Scalar,
}

impl Coefficients<'_> {
    fn beta(&self) -> Scalar {
        let q0 = &self.q[0];
        let mut b = &(q0 * self.lambda) - &(self.q0_inv * self.lambda_inv);
        if self.k.is_multiple_of(2) {
            b = &b + self.delta;
        }
        b
    }

    fn h(&self, l: usize) -> Scalar {
        let (k, q) = (self.k, self.q);
        let z = k.div_ceil(2);
        let zero = self.delta.zero_like();
        let mut bracket = zero.clone();
        for r in 1..=(k - l) {
            bracket = &bracket + &(&q[r + l] * &self.a[r]);
        }
        for i in (l + 1).max(z)..=((l + k) / 2) {
            bracket = &bracket - &q[2 * i - l];
        }
        if z >= 1 {
            for i in l.div_ceil(2)..=l.min(z - 1) {
                bracket = &bracket + &q[2 * i - l];
            }
        }
        let head = self.lambda_inv * &(&q[l] + &(self.q0_inv * &q[k - l]));
        &head + &(self.delta * &bracket)
    }
}

#[derive(Clone, Debug)]
pub struct AdmissibilityReport {
    /// `λ - λ⁻¹ - δ(1 - A_0)`.
    pub residual_a: Scalar,
    pub beta: Scalar,
    /// `h_1, ..., h_{k-1}`.
    pub h: Vec<Scalar>,
    pub admissible: bool,
}

impl AdmissibilityReport {
    pub fn to_json(&self, domain: &Domain) -> serde_json::Value {
        serde_json::json!({
            "residual_a": domain.format(&self.residual_a),
            "beta": domain.format(&self.beta),
            "h": self.h.iter().map(|s| domain.format(s)).collect::<Vec<_>>(),
            "admissible": self.admissible,
        })
    }
}

pub fn admissibility_report(ps: &ParamSet) -> AdmissibilityReport {
    let one = ps.domain.one();
    let residual_a = &(&ps.lambda - &ps.lambda_inv) - &(&ps.delta * &(&one - &ps.a_coeffs[0]));
    let view = ps.view();
    let beta = view.beta();
    let h: Vec<Scalar> = (1..ps.k()).map(|l| view.h(l)).collect();
    let admissible = residual_a.is_zero() && beta.is_zero() && h.iter().all(Scalar::is_zero);
    AdmissibilityReport { residual_a, beta, h, admissible }
}

/// `q_0` from the chosen root of `β = 0`.
fn q0_root(k: usize, sign: Sign, q: &Scalar, lambda_inv: &Scalar) -> Scalar {
    match (k % 2 == 1, sign) {
        (true, Sign::Plus) => lambda_inv.clone(),
        (true, Sign::Minus) => -lambda_inv,
        (false, Sign::Plus) => lambda_inv * &q.inv().expect("q is a unit"),
        (false, Sign::Minus) => -(lambda_inv * q),
    }
}

/// Completes `q, λ, q_1..q_{k-1}` to an admissible set: `q_0` from `β = 0`,
/// `A_0` from its relation to `lambda` and `delta`, then `h_l = 0` for `l = k-1` down to `1`, each
/// fixing `A_{k-l}` because its coefficient in `h_l` is `δ q_k = -δ`.
fn complete_admissible(
    domain: &Domain,
    sign: Sign,
    q: Scalar,
    lambda: Scalar,
    upper_q: Vec<Scalar>,
) -> Result<ParamSet, ParamError> {
    let k = upper_q.len() + 1;
    let q_inv = q.inv().map_err(|_| ParamError::NotInvertible("q"))?;
    let lambda_inv = lambda.inv().map_err(|_| ParamError::NotInvertible("lambda"))?;
    let delta = &q - &q_inv;
    let delta_inv = delta.inv().map_err(|_| ParamError::DeltaZero)?;
    let q0 = q0_root(k, sign, &q, &lambda_inv);
    let q0_inv = q0.inv().map_err(|_| ParamError::NotInvertible("q0"))?;

    let mut q_all = vec![q0];
    q_all.extend(upper_q);
    let q_coeffs = q_all.clone();
    q_all.push(-domain.one());

    let mut a = vec![domain.zero(); k];
    a[0] = &domain.one() - &(&(&lambda - &lambda_inv) * &delta_inv);
    for l in (1..k).rev() {
        let view = Coefficients {
            k,
            q: &q_all,
            a: &a,
            lambda: &lambda,
            lambda_inv: &lambda_inv,
            q0_inv: &q0_inv,
            delta: &delta,
        };
        // a[k - l] is still zero here, so this is h_l without its A_{k-l} term
        let rest = view.h(l);
        a[k - l] = &rest * &delta_inv;
    }
    ParamSet::new(domain.clone(), q, lambda, q_coeffs, a)
}

/// Names of the indeterminates of the generic admissible domain.
pub fn generic_indeterminates(k: usize) -> Vec<String> {
    let mut names = vec!["q".to_string(), "lambda".to_string()];
    names.extend((1..k).map(|i| format!("q{i}")));
    names
}

/// Generic admissible parameters over `Q(q, λ, q_1, ..., q_{k-1})`.
pub fn generic_admissible(k: usize, sign: Sign) -> Result<ParamSet, ParamError> {
    if k == 0 {
        return Err(ParamError::ZeroK);
    }
    let domain = Domain::rational_functions(generic_indeterminates(k))?;
    let q = domain.indeterminate("q")?;
    let lambda = domain.indeterminate("lambda")?;
    let upper = (1..k).map(|i| domain.indeterminate(&format!("q{i}"))).collect::<Result<_, _>>()?;
    complete_admissible(&domain, sign, q, lambda, upper)
}

/// Seeded admissible parameters over `F_p`. The root sign for `q_0` is drawn
/// from the same generator as the free parameters.
pub fn random_admissible_finite_field(k: usize, p: u64, seed: u64) -> Result<ParamSet, ParamError> {
    if k == 0 {
        return Err(ParamError::ZeroK);
    }
    let domain = Domain::prime_field(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RESAMPLING_BUDGET {
        let q = domain.int(rng.gen_range(0..p) as i64);
        let lambda = domain.int(rng.gen_range(0..p) as i64);
        let upper: Vec<Scalar> = (1..k).map(|_| domain.int(rng.gen_range(0..p) as i64)).collect();
        let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        if q.is_zero() || lambda.is_zero() {
            continue;
        }
        match complete_admissible(&domain, sign, q, lambda, upper) {
            Ok(ps) => return Ok(ps),
            Err(ParamError::DeltaZero | ParamError::NotInvertible(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(ParamError::ExhaustedResampling(RESAMPLING_BUDGET))
}

/// Parameters over `Q(q, λ, q_0, ..., q_{k-1}, A_0, ..., A_{k-1})` with every
/// parameter free. With `impose_relation_a`, `A_0` is instead set to
/// `1 - (λ - λ⁻¹)/δ` and left out of the indeterminates.
pub fn fully_generic(k: usize, impose_relation_a: bool) -> Result<ParamSet, ParamError> {
    if k == 0 {
        return Err(ParamError::ZeroK);
    }
    let first_a = usize::from(impose_relation_a);
    let mut names = vec!["q".to_string(), "lambda".to_string()];
    names.extend((0..k).map(|i| format!("q{i}")));
    names.extend((first_a..k).map(|i| format!("A{i}")));
    let domain = Domain::rational_functions(names)?;
    let var = |n: String| domain.indeterminate(&n);
    let q = var("q".into())?;
    let lambda = var("lambda".into())?;
    let qs = (0..k).map(|i| var(format!("q{i}"))).collect::<Result<Vec<_>, _>>()?;
    let mut a = Vec::with_capacity(k);
    if impose_relation_a {
        let delta = &q - &q.inv()?;
        a.push(&domain.one() - &(&(&lambda - &lambda.inv()?) * &delta.inv()?));
    }
    for i in first_a..k {
        a.push(var(format!("A{i}"))?);
    }
    ParamSet::new(domain, q, lambda, qs, a)
}

/// `β` and `h_l` recomputed from the module `V` itself.
#[derive(Clone, Debug)]
pub struct DerivedConditions {
    pub params: ParamSet,
    pub beta: Scalar,
    pub h: Vec<Scalar>,
}

/// Builds `V` over the fully generic domain (A_0 relation imposed) and
/// expands `q_0 (X - Y⁻¹ W Y⁻¹) v_0` in the basis `v_0, v_{-1}, ..., v_{1-k}`.
/// The coefficient of `v_0` is `β`, that of `v_{-l}` is `h_l`.
pub fn symbolic_derive_h(k: usize) -> Result<DerivedConditions, ParamError> {
    let params = fully_generic(k, true)?;
    let (beta, h) = derive_conditions(&params);
    Ok(DerivedConditions { params, beta, h })
}

/// The module-side computation behind [`symbolic_derive_h`], usable on any
/// parameter set.
pub fn derive_conditions(params: &ParamSet) -> (Scalar, Vec<Scalar>) {
    let k = params.k();
    let v = VRep::build(params);
    let defect: Vec<Scalar> =
        v.admissibility_defect().iter().map(|x| x * &params.q_coeffs[0]).collect();
    let columns: Vec<Vec<Scalar>> = (0..k as i64).map(|l| v.v_extended(-l)).collect();
    let basis = Matrix::from_columns(params.domain(), &columns);
    let coords = basis.solve(&defect).expect("v_0, v_-1, ..., v_(1-k) is a basis");
    (coords[0].clone(), coords[1..].to_vec())
}
