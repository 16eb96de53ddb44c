use bmw2k::algebra::Algebra;
use bmw2k::coeff::{Domain, Scalar};
use bmw2k::matrix::{unit_vector, vec_add, vec_scale, Matrix};
use bmw2k::params::{
    admissibility_report, derive_conditions, fully_generic, generic_admissible, random_admissible_finite_field,
    ParamSet, Sign,
};
use bmw2k::repv::VRep;
use bmw2k::repxi::{BasisClass, BasisIndex};
use bmw2k::words::{parse_word, Generator, Token, Word};
use proptest::prelude::*;

fn fp_params(k: usize, seed: u64) -> ParamSet {
    random_admissible_finite_field(k, 101, seed).unwrap()
}

fn word(s: &str) -> Word {
    parse_word(s).unwrap()
}

#[test]
fn field_axioms_exhaustive_f7() {
    let d = Domain::prime_field(7).unwrap();
    let all: Vec<Scalar> = (0..7).map(|n| d.int(n)).collect();
    for a in &all {
        for b in &all {
            assert_eq!(a + b, b + a);
            assert_eq!(a * b, b * a);
            for c in &all {
                assert_eq!(&(a + b) + c, a + &(b + c));
                assert_eq!(&(a * b) * c, a * &(b * c));
                assert_eq!(a * &(b + c), &(a * b) + &(a * c));
            }
        }
        if !a.is_zero() {
            assert!((a * &a.inv().unwrap()).is_one());
        }
    }
}

fn small_ratfn() -> impl Strategy<Value = String> {
    let atom = prop_oneof![
        (-3i64..4).prop_map(|n| n.to_string()),
        Just("q".to_string()),
        Just("lambda".to_string()),
        Just("q1".to_string()),
    ];
    prop::collection::vec((atom, 0u8..4), 1..5).prop_map(|parts| {
        parts
            .into_iter()
            .enumerate()
            .map(|(i, (a, op))| {
                if i == 0 {
                    format!("({a})")
                } else {
                    let op = ["+", "-", "*", "/"][op as usize];
                    format!(" {op} ({a} + 1/2)")
                }
            })
            .collect::<String>()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfn_ring_laws(a in small_ratfn(), b in small_ratfn(), c in small_ratfn()) {
        let d = Domain::rational_functions(["q", "lambda", "q1"]).unwrap();
        let (a, b, c) = (d.parse(&a).unwrap(), d.parse(&b).unwrap(), d.parse(&c).unwrap());
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn ratfn_canonical_form(a in small_ratfn(), b in small_ratfn()) {
        let d = Domain::rational_functions(["q", "lambda", "q1"]).unwrap();
        let (a, b) = (d.parse(&a).unwrap(), d.parse(&b).unwrap());
        let printed = d.format(&a);
        prop_assert_eq!(d.format(&d.parse(&printed).unwrap()), printed);
        let (ra, rb) = (a.as_ratfn().unwrap(), b.as_ratfn().unwrap());
        let cross = ra.numerator().mul(rb.denominator()).sub(&rb.numerator().mul(ra.denominator()));
        prop_assert_eq!(a == b, cross.is_zero());
    }

    #[test]
    fn reduce_is_multiplicative(
        k in 1usize..4,
        seed in 0u64..50,
        w1 in prop::collection::vec((0u8..3, -2i64..3), 0..6),
        w2 in prop::collection::vec((0u8..3, -2i64..3), 0..6),
    ) {
        let to_word = |spec: &[(u8, i64)]| {
            let mut w = Word::empty();
            for &(g, e) in spec {
                let gen = [Generator::X, Generator::Y, Generator::E][g as usize];
                w.push(gen, if gen == Generator::E { e.abs() } else { e });
            }
            w
        };
        let (a, b) = (to_word(&w1), to_word(&w2));
        let alg = Algebra::from_params(&fp_params(k, seed)).unwrap();
        let product = alg.multiply(&alg.reduce_word(&a), &alg.reduce_word(&b)).unwrap();
        prop_assert_eq!(alg.reduce_word(&a.concat(&b)), product);
        prop_assert_eq!(alg.reduce_word(&a.expanded()), alg.reduce_word(&a));
    }
}

/// Every defining relation, checked by reducing both sides as words.
#[test]
fn defining_relations_as_words() {
    for (k, ps) in [(1, fp_params(1, 0)), (3, fp_params(3, 0)), (2, generic_admissible(2, Sign::Minus).unwrap())] {
        let alg = Algebra::from_params(&ps).unwrap();
        let r = |s: &str| alg.reduce_word(&word(s)).coeffs().to_vec();
        let one = r("");
        assert_eq!(r("X X^-1"), one);
        assert_eq!(r("Y^-1 Y"), one);
        let mut kth = vec![ps.domain().zero(); alg.dim()];
        for l in 0..=k {
            let y_l = if l == 0 { one.clone() } else { r(&format!("Y^{l}")) };
            kth = vec_add(&kth, &vec_scale(&y_l, ps.q_coeff(l)));
        }
        assert!(kth.iter().all(Scalar::is_zero), "k={k}");
        // X^-1 = X - δ + δe
        let rhs = vec_add(&vec_add(&r("X"), &vec_scale(&one, &-ps.delta().clone())), &vec_scale(&r("e"), ps.delta()));
        assert_eq!(r("X^-1"), rhs);
        assert_eq!(r("X e"), vec_scale(&r("e"), ps.lambda()));
        assert_eq!(r("e X"), vec_scale(&r("e"), ps.lambda()));
        assert_eq!(r("X Y X Y"), r("Y X Y X"));
        assert_eq!(r("e Y X Y"), vec_scale(&r("e"), ps.lambda_inv()));
        assert_eq!(r("Y X Y e"), vec_scale(&r("e"), ps.lambda_inv()));
        for m in 0..k {
            let w = if m == 0 { "e e".to_string() } else { format!("e Y^{m} e") };
            assert_eq!(r(&w), vec_scale(&r("e"), ps.a(m)), "k={k} m={m}");
        }
    }
}

/// `X Y^l e = Y⁻¹ X Y^{l-1} e - δ Y^{l-2} e + δ A_{l-1} Y⁻¹ e`.
#[test]
fn x_y_e_rewrite_chain() {
    for k in 2..=5 {
        let ps = fp_params(k, 8);
        let alg = Algebra::from_params(&ps).unwrap();
        let r = |s: &str| alg.reduce_word(&word(s)).coeffs().to_vec();
        for l in 2..k {
            let lhs = r(&format!("X Y^{l} e"));
            let mut rhs = r(&format!("Y^-1 X Y^{} e", l - 1));
            let low = if l == 2 { r("e") } else { r(&format!("Y^{} e", l - 2)) };
            rhs = vec_add(&rhs, &vec_scale(&low, &-ps.delta().clone()));
            rhs = vec_add(&rhs, &vec_scale(&r("Y^-1 e"), &(ps.delta() * ps.a(l - 1))));
            assert_eq!(lhs, rhs, "k={k} l={l}");
        }
    }
}

#[test]
fn one_element_coordinates() {
    for k in 1..=3 {
        let ps = generic_admissible(k, Sign::Plus).unwrap();
        let alg = Algebra::from_params(&ps).unwrap();
        let d = ps.domain();
        let mut expected = vec![d.zero(); 3 * k * k];
        expected[BasisIndex::new(BasisClass::W, 0, 0).flat(k)] = d.one();
        expected[BasisIndex::new(BasisClass::U, 0, 0).flat(k)] = -ps.delta().clone();
        expected[BasisIndex::new(BasisClass::V, 0, 0).flat(k)] = ps.delta() * ps.lambda();
        assert_eq!(alg.one_element().coeffs(), &expected[..]);
    }
}

#[test]
fn structure_constant_examples() {
    let alg = Algebra::from_params(&fp_params(2, 5)).unwrap();
    let ps = alg.params();
    let k = 2;
    let c = alg.structure_constants();
    let (u00, v00, w00) = (
        BasisIndex::new(BasisClass::U, 0, 0).flat(k),
        BasisIndex::new(BasisClass::V, 0, 0).flat(k),
        BasisIndex::new(BasisClass::W, 0, 0).flat(k),
    );
    assert_eq!(c[u00].column(u00), unit_vector(ps.domain(), 12, w00));
    assert_eq!(c[v00].column(v00), vec_scale(&unit_vector(ps.domain(), 12, v00), ps.a(0)));
}

#[test]
fn v_module_identities() {
    for k in 1..=5 {
        let ps = fp_params(k, 13);
        let v = VRep::build(&ps);
        for l in -6..6 {
            assert!(v.shifted_basis(l).inverse().is_some(), "k={k} l={l}");
        }
        // X v_i = Y⁻¹ W v_{i-1}
        for i in 1..k {
            assert_eq!(v.x().column(i), v.y_inv().mul_vec(&v.w().column(i - 1)));
        }
        // the image of E is spanned by v_0
        for r in 1..k {
            assert!((0..k).all(|c| v.e()[(r, c)].is_zero()));
        }
    }
}

#[test]
fn defect_matches_report_when_not_admissible() {
    for k in 1..=4 {
        // the A_0 relation is kept, since the closed forms assume it
        let base = fp_params(k, 21);
        let d = base.domain();
        let mut qs = base.q_coeffs().to_vec();
        qs[0] = &qs[0] * &d.int(2);
        let mut a = base.a_coeffs().to_vec();
        if k > 1 {
            a[k - 1] = &a[k - 1] + &d.one();
        }
        let bad = ParamSet::new(d.clone(), base.q().clone(), base.lambda().clone(), qs, a).unwrap();
        assert!(!admissibility_report(&bad).admissible);
        let report = admissibility_report(&bad);
        let v = VRep::build(&bad);
        // q_0 (X - Y⁻¹WY⁻¹) v_0 = β v_0 + Σ h_l v_{-l}
        let mut expected = vec_scale(&v.v_extended(0), &report.beta);
        for (l, h) in report.h.iter().enumerate() {
            expected = vec_add(&expected, &vec_scale(&v.v_extended(-(l as i64) - 1), h));
        }
        let scaled = vec_scale(&v.admissibility_defect(), bad.q_coeff(0));
        assert_eq!(scaled, expected, "k={k}");
        let (beta, h) = derive_conditions(&bad);
        assert_eq!((beta, h), (report.beta.clone(), report.h.clone()));
    }
}

#[test]
fn h_is_triangular_in_a() {
    for k in 2..=5 {
        let ps = fully_generic(k, true).unwrap();
        let names = ps.domain().indeterminates().to_vec();
        let report = admissibility_report(&ps);
        for (idx, h) in report.h.iter().enumerate() {
            let l = idx + 1;
            let r = h.as_ratfn().unwrap();
            for j in (k - l + 1)..k {
                let var = names.iter().position(|n| *n == format!("A{j}")).unwrap();
                assert_eq!(r.numerator().degree_in(var), 0, "h_{l} involves A_{j}");
                assert_eq!(r.denominator().degree_in(var), 0);
            }
            let pivot = names.iter().position(|n| *n == format!("A{}", k - l)).unwrap();
            assert_eq!(r.numerator().degree_in(pivot), 1);
        }
    }
}

#[test]
fn generic_admissible_up_to_six() {
    for k in 1..=6 {
        for sign in [Sign::Plus, Sign::Minus] {
            assert!(admissibility_report(&generic_admissible(k, sign).unwrap()).admissible, "k={k} {sign:?}");
        }
    }
}

#[test]
fn beta_roots() {
    for k in 1..=4 {
        for sign in [Sign::Plus, Sign::Minus] {
            let ps = generic_admissible(k, sign).unwrap();
            let (q0, lambda, q) = (ps.q_coeff(0), ps.lambda(), ps.q());
            let one = ps.domain().one();
            let residual = if k % 2 == 1 {
                &(&(lambda * lambda) * &(q0 * q0)) - &one
            } else {
                // (q_0 λ - q⁻¹)(q_0 λ + q) = λ²q_0² + δλq_0 - 1
                let lhs = &(&(q0 * lambda) - ps.q_inv()) * &(&(q0 * lambda) + q);
                let rhs = &(&(&(lambda * lambda) * &(q0 * q0)) + &(&(ps.delta() * lambda) * q0)) - &one;
                assert_eq!(lhs, rhs);
                lhs
            };
            assert!(residual.is_zero(), "k={k} {sign:?}");
        }
    }
}

#[test]
fn finite_field_examples() {
    let ps = random_admissible_finite_field(2, 101, 7).unwrap();
    assert!(admissibility_report(&ps).admissible);
    let ps = random_admissible_finite_field(1, 5, 0).unwrap();
    let q0 = ps.q_coeff(0);
    assert_eq!(q0 * q0, ps.lambda_inv() * ps.lambda_inv());
    assert_eq!(random_admissible_finite_field(4, 101, 3).unwrap().domain(), &Domain::prime_field(101).unwrap());
}

#[test]
fn xi_inverse_and_blocks() {
    for k in 1..=4 {
        let ps = fp_params(k, 17);
        let alg = Algebra::from_params(&ps).unwrap();
        let xi = alg.xi();
        assert_eq!(xi.y().inverse().unwrap(), *xi.y_inv());
        let v = xi.class_indices(&[BasisClass::V]);
        let uw = xi.class_indices(&[BasisClass::U, BasisClass::W]);
        for m in [xi.y(), xi.x(), xi.e(), xi.y_inv(), xi.w()] {
            assert!(m.submatrix(&uw, &v).is_zero());
        }
        // E maps everything into v_0 ⊗ V
        let outside: Vec<usize> = v.iter().copied().filter(|&t| BasisIndex::from_flat(k, t).i != 0).chain(uw.clone()).collect();
        let all: Vec<usize> = (0..xi.dim()).collect();
        assert!(xi.e().submatrix(&outside, &all).is_zero());
        // E Y^m E = A_m E
        for m in 0..k {
            let lhs = xi.e().mul(&xi.y().pow(m as u32)).mul(xi.e());
            assert_eq!(lhs, xi.e().scale(ps.a(m)));
        }
    }
}

#[test]
fn involution_on_basis() {
    let alg = Algebra::from_params(&generic_admissible(2, Sign::Plus).unwrap()).unwrap();
    for b in BasisIndex::all(2) {
        let image = alg.involution(&alg.basis_element(b)).unwrap();
        if b.class != BasisClass::W {
            assert_eq!(image, alg.basis_element(BasisIndex::new(b.class, b.j, b.i)));
        }
        let reversed = alg.reduce_word(&Algebra::basis_word(b).reversed());
        assert_eq!(image, reversed);
    }
}

#[test]
fn word_tokens_apply_as_matrices() {
    let ps = fp_params(3, 2);
    let alg = Algebra::from_params(&ps).unwrap();
    let xi = alg.xi();
    let w = Word::new(vec![
        Token { gen: Generator::Y, exp: 2 },
        Token { gen: Generator::X, exp: -1 },
        Token { gen: Generator::E, exp: 1 },
    ])
    .unwrap();
    let m: Matrix = xi.y().pow(2).mul(xi.w()).mul(xi.e());
    assert_eq!(alg.reduce_word(&w).coeffs(), &m.mul_vec(alg.one_element().coeffs())[..]);
}
