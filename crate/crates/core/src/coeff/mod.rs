//! Exact coefficient domains.
//!
//! Three kinds of integral domain are supported, all of them fields: the
//! rationals, prime fields, and rational-function fields over the rationals
//! in a named, ordered list of indeterminates. A [`Scalar`] is a value in one
//! of them. Arithmetic between scalars of different kinds is a programming
//! error and panics; [`Domain::equal`] is the checked comparison.

mod fp;
mod parse;
mod poly;
mod ratfn;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use fp::{is_prime, Fp};
pub use poly::{Exponents, Poly};
pub use ratfn::RatFn;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("modulus {0} is not a prime below 2^32")]
    NonPrimeModulus(u64),
    #[error("indeterminate `{0}` declared twice")]
    DuplicateIndeterminate(String),
    #[error("invalid indeterminate name `{0}`")]
    InvalidIndeterminate(String),
    #[error("scalars belong to different domains")]
    DomainMismatch,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("unknown indeterminate `{0}`")]
    UnknownIndeterminate(String),
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
}

/// Serializable description of a domain, as it appears in parameter files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DomainSpec {
    Rationals,
    PrimeField { p: u64 },
    RationalFunctions { indeterminates: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    spec: Arc<DomainSpec>,
}

impl Domain {
    pub fn new(spec: DomainSpec) -> Result<Self, CoeffError> {
        match &spec {
            DomainSpec::Rationals => {}
            DomainSpec::PrimeField { p } => {
                if *p > u32::MAX as u64 || !is_prime(*p) {
                    return Err(CoeffError::NonPrimeModulus(*p));
                }
            }
            DomainSpec::RationalFunctions { indeterminates } => {
                for (i, name) in indeterminates.iter().enumerate() {
                    if !parse::is_identifier(name) {
                        return Err(CoeffError::InvalidIndeterminate(name.clone()));
                    }
                    if indeterminates[..i].contains(name) {
                        return Err(CoeffError::DuplicateIndeterminate(name.clone()));
                    }
                }
            }
        }
        Ok(Domain { spec: Arc::new(spec) })
    }

    pub fn rationals() -> Self {
        Domain { spec: Arc::new(DomainSpec::Rationals) }
    }

    pub fn prime_field(p: u64) -> Result<Self, CoeffError> {
        Self::new(DomainSpec::PrimeField { p })
    }

    pub fn rational_functions<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
    ) -> Result<Self, CoeffError> {
        Self::new(DomainSpec::RationalFunctions {
            indeterminates: names.into_iter().map(Into::into).collect(),
        })
    }

    pub fn spec(&self) -> &DomainSpec {
        &self.spec
    }

    pub fn characteristic(&self) -> u64 {
        match *self.spec {
            DomainSpec::PrimeField { p } => p,
            _ => 0,
        }
    }

    pub fn indeterminates(&self) -> &[String] {
        match &*self.spec {
            DomainSpec::RationalFunctions { indeterminates } => indeterminates,
            _ => &[],
        }
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        self.big_int(BigInt::from(n))
    }

    pub fn big_int(&self, n: BigInt) -> Scalar {
        match &*self.spec {
            DomainSpec::Rationals => Scalar::Rational(BigRational::from_integer(n)),
            DomainSpec::PrimeField { p } => {
                let m = BigInt::from(*p);
                let r = ((n % &m) + &m) % &m;
                Scalar::Prime(Fp::from_u64(u64::try_from(r).expect("reduced"), *p))
            }
            DomainSpec::RationalFunctions { indeterminates } => {
                Scalar::RatFn(RatFn::from_int(indeterminates.len(), n))
            }
        }
    }

    /// The fraction `num/den`; fails if `den` vanishes in the domain.
    pub fn fraction(&self, num: i64, den: i64) -> Result<Scalar, CoeffError> {
        Ok(&self.int(num) * &self.int(den).inv()?)
    }

    pub fn indeterminate(&self, name: &str) -> Result<Scalar, CoeffError> {
        let names = self.indeterminates();
        let idx = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| CoeffError::UnknownIndeterminate(name.to_string()))?;
        Ok(Scalar::RatFn(RatFn::from_poly(Poly::var(names.len(), idx))))
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (&*self.spec, s) {
            (DomainSpec::Rationals, Scalar::Rational(_)) => true,
            (DomainSpec::PrimeField { p }, Scalar::Prime(x)) => x.modulus() == *p,
            (DomainSpec::RationalFunctions { indeterminates }, Scalar::RatFn(r)) => {
                r.nvars() == indeterminates.len()
            }
            _ => false,
        }
    }

    /// Exact equality, checking that both operands live in this domain.
    pub fn equal(&self, a: &Scalar, b: &Scalar) -> Result<bool, CoeffError> {
        if !self.contains(a) || !self.contains(b) {
            return Err(CoeffError::DomainMismatch);
        }
        Ok(a == b)
    }

    /// Parses the scalar literal grammar: integers, indeterminates,
    /// `+ - * /`, `^` with an integer exponent, and parentheses.
    pub fn parse(&self, text: &str) -> Result<Scalar, CoeffError> {
        parse::parse_scalar(self, text)
    }

    /// Canonical text for a scalar; `parse` reads it back to the same value.
    pub fn format(&self, s: &Scalar) -> String {
        match s {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime(x) => x.value().to_string(),
            Scalar::RatFn(r) => format_ratfn(r, self.indeterminates()),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.spec {
            DomainSpec::Rationals => write!(f, "Q"),
            DomainSpec::PrimeField { p } => write!(f, "F_{p}"),
            DomainSpec::RationalFunctions { indeterminates } => {
                write!(f, "Q({})", indeterminates.join(", "))
            }
        }
    }
}

fn format_poly(p: &Poly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (e, c)) in p.terms().iter().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        let constant = e.iter().all(|&x| x == 0);
        if !abs.is_one() || constant {
            factors.push(abs.to_string());
        }
        for (name, &exp) in names.iter().zip(e.iter()) {
            match exp {
                0 => {}
                1 => factors.push(name.clone()),
                n => factors.push(format!("{name}^{n}")),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

fn is_atom(p: &Poly) -> bool {
    match p.terms() {
        [(e, c)] => {
            let nonzero = e.iter().filter(|&&x| x > 0).count();
            (c.is_one() && nonzero == 1 && e.iter().all(|&x| x <= 1))
                || (nonzero == 0 && c.is_positive())
        }
        _ => false,
    }
}

fn format_ratfn(r: &RatFn, names: &[String]) -> String {
    let num = format_poly(r.numerator(), names);
    if r.is_polynomial() {
        return num;
    }
    let num = if r.numerator().len() > 1 { format!("({num})") } else { num };
    let den = format_poly(r.denominator(), names);
    if is_atom(r.denominator()) {
        format!("{num}/{den}")
    } else {
        format!("{num}/({den})")
    }
}

/// An element of a [`Domain`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Prime(Fp),
    RatFn(RatFn),
}

fn mismatch() -> ! {
    panic!("arithmetic between scalars of different domains")
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime(x) => x.is_zero(),
            Scalar::RatFn(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime(x) => x.value() == 1,
            Scalar::RatFn(r) => r.is_one(),
        }
    }

    /// The zero of this scalar's domain.
    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::zero()),
            Scalar::Prime(x) => Scalar::Prime(Fp::from_u64(0, x.modulus())),
            Scalar::RatFn(r) => Scalar::RatFn(RatFn::zero(r.nvars())),
        }
    }

    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::one()),
            Scalar::Prime(x) => Scalar::Prime(Fp::from_u64(1, x.modulus())),
            Scalar::RatFn(r) => Scalar::RatFn(RatFn::one(r.nvars())),
        }
    }

    pub fn inv(&self) -> Result<Scalar, CoeffError> {
        let r = match self {
            Scalar::Rational(r) => (!r.is_zero()).then(|| Scalar::Rational(r.recip())),
            Scalar::Prime(x) => x.inv().map(Scalar::Prime),
            Scalar::RatFn(r) => r.inv().map(Scalar::RatFn),
        };
        r.ok_or(CoeffError::NotInvertible)
    }

    /// Integer power; negative exponents require an invertible base.
    pub fn pow(&self, n: i64) -> Result<Scalar, CoeffError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.one_like();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, CoeffError> {
        Ok(self * &other.inv()?)
    }

    pub fn as_ratfn(&self) -> Option<&RatFn> {
        match self {
            Scalar::RatFn(r) => Some(r),
            _ => None,
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime(a), Scalar::Prime(b)) => Scalar::Prime(*a + *b),
            (Scalar::RatFn(a), Scalar::RatFn(b)) => Scalar::RatFn(a.add(b)),
            _ => mismatch(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Prime(a), Scalar::Prime(b)) => Scalar::Prime(*a - *b),
            (Scalar::RatFn(a), Scalar::RatFn(b)) => Scalar::RatFn(a.sub(b)),
            _ => mismatch(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime(a), Scalar::Prime(b)) => Scalar::Prime(*a * *b),
            (Scalar::RatFn(a), Scalar::RatFn(b)) => Scalar::RatFn(a.mul(b)),
            _ => mismatch(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime(a) => Scalar::Prime(-*a),
            Scalar::RatFn(a) => Scalar::RatFn(a.neg()),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
