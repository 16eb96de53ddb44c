//! Sparse multivariate polynomials over the integers.
//!
//! A polynomial is a list of `(exponents, coefficient)` terms kept in strictly
//! descending lexicographic order of the exponent vectors, with no zero
//! coefficients. That makes the representation canonical: two polynomials are
//! equal iff their term lists are equal.
//!
//! The GCD is the classical recursive one: strip monomial and integer content,
//! pick a main variable, and run a primitive pseudo-remainder sequence with
//! coefficients in the remaining variables.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 12]>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Exponents, BigInt)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(SmallVec::from_elem(0, nvars), c)] }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range");
        let mut e: Exponents = SmallVec::from_elem(0, nvars);
        e[index] = 1;
        Poly { nvars, terms: vec![(e, BigInt::one())] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, BigInt)>) -> Self {
        let mut terms: Vec<_> = terms.into_iter().collect();
        for (e, _) in &terms {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
        }
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { nvars, terms: combine_sorted(terms) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exponents, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        match self.terms.as_slice() {
            [] => true,
            [(e, _)] => e.iter().all(|&x| x == 0),
            _ => false,
        }
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.terms.first().is_some_and(|(_, c)| c.is_one())
    }

    /// The constant value, if this polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.first().map(|(_, c)| c.clone()).unwrap_or_else(BigInt::zero))
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(e, _)| e[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().map(|&x| x as u32).sum()).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let signed = |c: &BigInt| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), signed(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(e, c)| (e.clone(), signed(c))));
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        if let [(e, c)] = other.terms.as_slice() {
            return self.mul_term(e, c);
        }
        if let [(e, c)] = self.terms.as_slice() {
            return other.mul_term(e, c);
        }
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                prods.push((e, ca * cb));
            }
        }
        prods.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { nvars: self.nvars, terms: combine_sorted(prods) }
    }

    /// Multiplication by a single term keeps the order, so no re-sort.
    pub fn mul_term(&self, e: &[u16], c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(te, tc)| (te.iter().zip(e).map(|(x, y)| x + y).collect(), tc * c))
            .collect();
        Poly { nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, tc)| (e.clone(), tc * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut result = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Non-negative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    fn div_int_exact(&self, c: &BigInt) -> Poly {
        if c.is_one() {
            return self.clone();
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, tc)| (e.clone(), tc / c)).collect(),
        }
    }

    /// Flips the sign if needed so the leading coefficient is positive.
    pub fn with_positive_lead(self) -> Poly {
        match self.leading_coefficient() {
            Some(c) if c.is_negative() => self.neg(),
            _ => self,
        }
    }

    fn min_exponents(&self) -> Exponents {
        let mut m: Exponents = match self.terms.first() {
            Some((e, _)) => e.clone(),
            None => return SmallVec::from_elem(0, self.nvars),
        };
        for (e, _) in &self.terms[1..] {
            for (x, y) in m.iter_mut().zip(e) {
                *x = (*x).min(*y);
            }
        }
        m
    }

    fn shift_down(&self, m: &[u16]) -> Poly {
        if m.iter().all(|&x| x == 0) {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(m).map(|(x, y)| x - y).collect(), c.clone()))
            .collect();
        Poly { nvars: self.nvars, terms }
    }

    fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[var] > 0)
    }

    /// Coefficients with respect to `var`, indexed by degree. The variable's
    /// exponent is zeroed in each coefficient.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Exponents, BigInt)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let d = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            buckets[d].push((e2, c.clone()));
        }
        // Zeroing one coordinate keeps the relative lex order within a bucket.
        buckets.into_iter().map(|terms| Poly { nvars: self.nvars, terms }).collect()
    }

    pub fn from_coefficients_in(nvars: usize, var: usize, coeffs: &[Poly]) -> Poly {
        let mut acc = Poly::zero(nvars);
        let mut e: Exponents = SmallVec::from_elem(0, nvars);
        for (d, c) in coeffs.iter().enumerate() {
            e[var] = d as u16;
            acc = acc.add(&c.mul_term(&e, &BigInt::one()));
        }
        acc
    }

    /// Exact division in `Z[x]`. Returns `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero(self.nvars));
        }
        if let Some(c) = d.as_constant() {
            return self
                .terms
                .iter()
                .all(|(_, tc)| tc.is_multiple_of(&c))
                .then(|| self.div_int_exact(&c));
        }
        // Trailing terms multiply under a monomial order too: a cheap filter.
        let (te, tc) = self.terms.last().unwrap();
        let (de, dc) = d.terms.last().unwrap();
        if te.iter().zip(de).any(|(a, b)| a < b) || !tc.is_multiple_of(dc) {
            return None;
        }
        for var in 0..self.nvars {
            if d.degree_in(var) > self.degree_in(var) {
                return None;
            }
        }
        let (le, lc) = &d.terms[0];
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((re, rc)) = rem.terms.first() {
            if re.iter().zip(le).any(|(a, b)| a < b) {
                return None;
            }
            let (qc, r) = rc.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            let qe: Exponents = re.iter().zip(le).map(|(a, b)| a - b).collect();
            rem = rem.sub(&d.mul_term(&qe, &qc));
            quotient.push((qe, qc));
        }
        Some(Poly { nvars: self.nvars, terms: quotient })
    }

    /// Greatest common divisor in `Z[x_1, ..., x_n]`, normalized to a
    /// positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() {
            return other.clone().with_positive_lead();
        }
        if other.is_zero() {
            return self.clone().with_positive_lead();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::constant(self.nvars, self.content().gcd(&other.content()));
        }
        let ma = self.min_exponents();
        let mb = other.min_exponents();
        let mono: Exponents = ma.iter().zip(&mb).map(|(x, y)| *x.min(y)).collect();
        let a = self.shift_down(&ma);
        let b = other.shift_down(&mb);
        let (ca, cb) = (a.content(), b.content());
        let c = ca.gcd(&cb);
        let a = a.div_int_exact(&ca);
        let b = b.div_int_exact(&cb);
        gcd_primitive(&a, &b).mul_term(&mono, &c).with_positive_lead()
    }
}

fn combine_sorted(sorted: Vec<(Exponents, BigInt)>) -> Vec<(Exponents, BigInt)> {
    let mut out: Vec<(Exponents, BigInt)> = Vec::with_capacity(sorted.len());
    for (e, c) in sorted {
        match out.last_mut() {
            Some((le, lc)) if *le == e => *lc += c,
            _ => {
                if let Some((_, lc)) = out.last() {
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                out.push((e, c));
            }
        }
    }
    if out.last().is_some_and(|(_, c)| c.is_zero()) {
        out.pop();
    }
    out
}

/// GCD of polynomials with unit integer content. Result has positive lead.
fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
    let nvars = a.nvars;
    if a.is_constant() || b.is_constant() {
        return Poly::one(nvars);
    }
    let (a, b) = (a.clone().with_positive_lead(), b.clone().with_positive_lead());
    if a == b {
        return a;
    }
    let (small, large) = if a.len() <= b.len() { (&a, &b) } else { (&b, &a) };
    if large.div_exact(small).is_some() {
        return small.clone();
    }
    // A variable present in only one operand: the gcd divides every
    // coefficient of that operand with respect to it.
    for var in 0..nvars {
        match (a.uses_var(var), b.uses_var(var)) {
            (true, false) => return gcd_with_all(&b, a.coefficients_in(var)),
            (false, true) => return gcd_with_all(&a, b.coefficients_in(var)),
            _ => {}
        }
    }
    let main = (0..nvars)
        .filter(|&v| a.uses_var(v))
        .min_by_key(|&v| a.degree_in(v).min(b.degree_in(v)))
        .expect("non-constant polynomial uses some variable");
    gcd_in_var(&a, &b, main)
}

fn gcd_with_all(start: &Poly, others: Vec<Poly>) -> Poly {
    let mut g = start.clone();
    for p in others.iter().filter(|p| !p.is_zero()) {
        g = g.gcd(p);
        if g.is_one() {
            break;
        }
    }
    g
}

fn gcd_of_slice(ps: &[Poly]) -> Poly {
    let nvars = ps[0].nvars;
    let mut g = Poly::zero(nvars);
    for p in ps.iter().filter(|p| !p.is_zero()) {
        g = g.gcd(p);
        if g.is_one() {
            break;
        }
    }
    g
}

fn trim(r: &mut Vec<Poly>) {
    while r.last().is_some_and(Poly::is_zero) {
        r.pop();
    }
}

/// Sparse pseudo-remainder of dense-in-one-variable polynomials.
fn pseudo_remainder(f: &[Poly], g: &[Poly]) -> Vec<Poly> {
    let dg = g.len() - 1;
    let lc = &g[dg];
    let mut r = f.to_vec();
    trim(&mut r);
    while r.len() > dg {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for t in r.iter_mut() {
            *t = t.mul(lc);
        }
        for (t, gt) in g.iter().enumerate() {
            let idx = t + dr - dg;
            r[idx] = r[idx].sub(&lr.mul(gt));
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
    }
    r
}

fn gcd_in_var(a: &Poly, b: &Poly, var: usize) -> Poly {
    let nvars = a.nvars;
    let mut f = a.coefficients_in(var);
    let mut g = b.coefficients_in(var);
    let cf = gcd_of_slice(&f);
    let cg = gcd_of_slice(&g);
    let content = cf.gcd(&cg);
    for x in f.iter_mut() {
        *x = x.div_exact(&cf).expect("content divides coefficient");
    }
    for x in g.iter_mut() {
        *x = x.div_exact(&cg).expect("content divides coefficient");
    }
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if g.len() == 1 {
            // primitive of degree zero in `var` is a unit
            return content.with_positive_lead();
        }
        let mut r = pseudo_remainder(&f, &g);
        if r.is_empty() {
            break;
        }
        let cr = gcd_of_slice(&r);
        for x in r.iter_mut() {
            *x = x.div_exact(&cr).expect("content divides coefficient");
        }
        f = std::mem::replace(&mut g, r);
    }
    content.mul(&Poly::from_coefficients_in(nvars, var, &g)).with_positive_lead()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(nvars: usize, terms: &[(&[u16], i64)]) -> Poly {
        Poly::from_terms(
            nvars,
            terms.iter().map(|(e, c)| (Exponents::from_slice(e), BigInt::from(*c))),
        )
    }

    #[test]
    fn combine_cancels_terms() {
        let a = p(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let b = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let s = a.sub(&b);
        assert_eq!(s, p(2, &[(&[0, 1], 2)]));
        assert!(a.sub(&a).is_zero());
        let sq = a.mul(&b);
        assert_eq!(sq, p(2, &[(&[2, 0], 1), (&[0, 2], -1)]));
    }

    #[test]
    fn exact_division() {
        let x2m1 = p(1, &[(&[2], 1), (&[0], -1)]);
        let xm1 = p(1, &[(&[1], 1), (&[0], -1)]);
        let xp1 = p(1, &[(&[1], 1), (&[0], 1)]);
        assert_eq!(x2m1.div_exact(&xm1), Some(xp1.clone()));
        assert_eq!(xp1.div_exact(&xm1), None);
        assert_eq!(p(1, &[(&[1], 3)]).div_exact(&p(1, &[(&[0], 2)])), None);
    }

    #[test]
    fn univariate_gcd() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = p(1, &[(&[2], 1), (&[1], 1), (&[0], -2)]);
        let b = p(1, &[(&[2], 1), (&[1], -4), (&[0], 3)]);
        assert_eq!(a.gcd(&b), p(1, &[(&[1], 1), (&[0], -1)]));
    }

    #[test]
    fn multivariate_gcd_with_content_and_monomials() {
        // g = x*y - 2, a = 6 x^2 y g (y+1), b = 4 x y^3 g (x - y)
        let g = p(2, &[(&[1, 1], 1), (&[0, 0], -2)]);
        let a = g.mul(&p(2, &[(&[2, 2], 6), (&[2, 1], 6)]));
        let b = g.mul(&p(2, &[(&[2, 3], 4), (&[1, 4], -4)]));
        let expected = g.mul(&p(2, &[(&[1, 1], 2)]));
        assert_eq!(a.gcd(&b), expected);
        assert_eq!(b.gcd(&a), expected);
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = p(3, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1)]);
        let b = p(3, &[(&[0, 0, 1], 1), (&[0, 0, 0], 1)]);
        assert!(a.gcd(&b).is_one());
    }

    #[test]
    fn gcd_is_sign_normalized() {
        let a = p(1, &[(&[1], -1), (&[0], 1)]);
        let g = a.gcd(&a.scale(&BigInt::from(-3)));
        assert_eq!(g, p(1, &[(&[1], 1), (&[0], -1)]));
    }
}
