//! Arithmetic in the prime field `Z/pZ`, `p < 2^32`.

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        Fp { value: value.rem_euclid(modulus as i64) as u64, modulus }
    }

    pub fn from_u64(value: u64, modulus: u64) -> Self {
        Fp { value: value % modulus, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Fp> {
        if self.value == 0 {
            return None;
        }
        // extended Euclid on (value, p)
        let (mut r0, mut r1) = (self.modulus as i64, self.value as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(Fp::new(t0, self.modulus))
    }
}

impl std::ops::Add for Fp {
    type Output = Fp;

    fn add(self, o: Fp) -> Fp {
        debug_assert_eq!(self.modulus, o.modulus);
        let s = self.value + o.value;
        Fp { value: if s >= self.modulus { s - self.modulus } else { s }, modulus: self.modulus }
    }
}

impl std::ops::Neg for Fp {
    type Output = Fp;

    fn neg(self) -> Fp {
        Fp {
            value: if self.value == 0 { 0 } else { self.modulus - self.value },
            modulus: self.modulus,
        }
    }
}

impl std::ops::Sub for Fp {
    type Output = Fp;

    fn sub(self, o: Fp) -> Fp {
        self + -o
    }
}

impl std::ops::Mul for Fp {
    type Output = Fp;

    fn mul(self, o: Fp) -> Fp {
        debug_assert_eq!(self.modulus, o.modulus);
        Fp { value: self.value * o.value % self.modulus, modulus: self.modulus }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(101));
        assert!(!is_prime(4294967297));
    }

    #[test]
    fn every_unit_has_an_inverse() {
        for p in [2u64, 3, 5, 7, 101] {
            for a in 1..p {
                let x = Fp::from_u64(a, p);
                assert_eq!((x * x.inv().unwrap()).value(), 1);
            }
            assert!(Fp::from_u64(0, p).inv().is_none());
        }
    }
}
