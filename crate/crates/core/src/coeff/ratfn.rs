//! Rational functions `num / den` over `Q`, stored as a pair of integer
//! polynomials with `gcd(num, den) = 1` in `Z[x]` and a positive leading
//! coefficient on `den`. Under those two conditions the pair is unique.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::Poly;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn zero(nvars: usize) -> Self {
        RatFn { num: Poly::zero(nvars), den: Poly::one(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        RatFn { num: Poly::one(nvars), den: Poly::one(nvars) }
    }

    pub fn from_poly(p: Poly) -> Self {
        let nvars = p.nvars();
        RatFn { num: p, den: Poly::one(nvars) }
    }

    pub fn from_int(nvars: usize, n: BigInt) -> Self {
        Self::from_poly(Poly::constant(nvars, n))
    }

    /// Reduces `num / den` to canonical form. Panics on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero(num.nvars());
        }
        let g = num.gcd(&den);
        if g.is_one() {
            return Self::sign_normalized(num, den);
        }
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        Self::sign_normalized(num, den)
    }

    fn sign_normalized(num: Poly, den: Poly) -> Self {
        if den.leading_coefficient().is_some_and(|c| c < &BigInt::zero()) {
            RatFn { num: num.neg(), den: den.neg() }
        } else {
            RatFn { num, den }
        }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn neg(&self) -> Self {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_signed(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_signed(other, true)
    }

    fn add_signed(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg() } else { other.clone() };
        }
        let combine = |a: &Poly, b: &Poly| if negate { a.sub(b) } else { a.add(b) };
        if self.den.is_one() && other.den.is_one() {
            return RatFn::from_poly(combine(&self.num, &other.num));
        }
        if self.den == other.den {
            return RatFn::new(combine(&self.num, &other.num), self.den.clone());
        }
        // a/b + c/d with g = gcd(b, d): only factors of g can cancel.
        let g = self.den.gcd(&other.den);
        if g.is_one() {
            let num = combine(&self.num.mul(&other.den), &other.num.mul(&self.den));
            return RatFn::sign_normalized(num, self.den.mul(&other.den));
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = other.den.div_exact(&g).expect("gcd divides");
        let num = combine(&self.num.mul(&d1), &other.num.mul(&b1));
        if num.is_zero() {
            return Self::zero(self.nvars());
        }
        let g2 = num.gcd(&g);
        if g2.is_one() {
            return RatFn::sign_normalized(num, b1.mul(&other.den));
        }
        let num = num.div_exact(&g2).expect("gcd divides");
        let den = b1.mul(&other.den.div_exact(&g2).expect("gcd divides"));
        RatFn::sign_normalized(num, den)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars());
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFn::from_poly(self.num.mul(&other.num));
        }
        let (a, b) = cancel(&self.num, &other.den);
        let (c, d) = cancel(&other.num, &self.den);
        RatFn::sign_normalized(a.mul(&c), d.mul(&b))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFn::sign_normalized(self.den.clone(), self.num.clone()))
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        if c.is_one() {
            return self.clone();
        }
        RatFn::new(self.num.scale(c), self.den.clone())
    }
}

/// Removes the common factor of `n` and `d`.
fn cancel(n: &Poly, d: &Poly) -> (Poly, Poly) {
    if d.is_one() {
        return (n.clone(), d.clone());
    }
    let g = n.gcd(d);
    if g.is_one() {
        return (n.clone(), d.clone());
    }
    (n.div_exact(&g).expect("gcd divides"), d.div_exact(&g).expect("gcd divides"))
}
