use std::ffi::{c_char, CStr, CString};
use std::ptr;

use bmw2k_ffi::*;

unsafe fn take_string(s: *mut c_char) -> String {
    let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
    bmw2k_string_free(s);
    text
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(bmw2k_last_error()).to_str().unwrap().to_owned() }
}

const K1_ADMISSIBLE: &str = r#"{"k": 1, "domain": {"kind": "rationals"}, "q": "2", "lambda": "3", "q_i": ["1/3"], "A_i": ["-7/9"]}"#;
const K1_BAD_BETA: &str = r#"{"k": 1, "domain": {"kind": "rationals"}, "q": "2", "lambda": "3", "q_i": ["1/2"], "A_i": ["-7/9"]}"#;

#[test]
fn generic_k2_round_trip() {
    unsafe {
        let mut params = ptr::null_mut();
        assert_eq!(bmw2k_params_generic(2, Bmw2kSign::Plus, &mut params), Bmw2kStatus::Ok);
        assert_eq!(bmw2k_params_k(params), 2);

        let mut alg = ptr::null_mut();
        assert_eq!(bmw2k_algebra_new(params, &mut alg), Bmw2kStatus::Ok);
        bmw2k_params_free(params);
        assert_eq!(bmw2k_algebra_dim(alg), 12);

        let word = CString::new("e Y e").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(bmw2k_reduce_word(alg, word.as_ptr(), &mut out), Bmw2kStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(json.as_object().unwrap().keys().collect::<Vec<_>>(), vec!["v[0][0]"]);

        let mut passed = false;
        assert_eq!(bmw2k_verify(alg, &mut passed, ptr::null_mut()), Bmw2kStatus::Ok);
        assert!(passed);
        bmw2k_algebra_free(alg);
    }
}

#[test]
fn multiply_matches_concatenation() {
    unsafe {
        let mut params = ptr::null_mut();
        assert_eq!(bmw2k_params_finite_field(3, 101, 9, &mut params), Bmw2kStatus::Ok);
        let mut alg = ptr::null_mut();
        assert_eq!(bmw2k_algebra_new(params, &mut alg), Bmw2kStatus::Ok);

        let a = CString::new("Y X^-1").unwrap();
        let b = CString::new("e Y^2 X").unwrap();
        let both = CString::new("Y X^-1 e Y^2 X").unwrap();
        let words = [a.as_ptr(), b.as_ptr()];
        let mut product = ptr::null_mut();
        assert_eq!(bmw2k_multiply_words(alg, words.as_ptr(), 2, &mut product), Bmw2kStatus::Ok);
        let mut reduced = ptr::null_mut();
        assert_eq!(bmw2k_reduce_word(alg, both.as_ptr(), &mut reduced), Bmw2kStatus::Ok);
        assert_eq!(take_string(product), take_string(reduced));

        let mut one = ptr::null_mut();
        assert_eq!(bmw2k_multiply_words(alg, ptr::null(), 0, &mut one), Bmw2kStatus::Ok);
        let empty = CString::new("").unwrap();
        let mut reduced_empty = ptr::null_mut();
        assert_eq!(bmw2k_reduce_word(alg, empty.as_ptr(), &mut reduced_empty), Bmw2kStatus::Ok);
        assert_eq!(take_string(one), take_string(reduced_empty));

        bmw2k_algebra_free(alg);
        bmw2k_params_free(params);
    }
}

#[test]
fn admissibility_from_json() {
    unsafe {
        for (text, expected) in [(K1_ADMISSIBLE, true), (K1_BAD_BETA, false)] {
            let json = CString::new(text).unwrap();
            let mut params = ptr::null_mut();
            assert_eq!(bmw2k_params_from_json(json.as_ptr(), &mut params), Bmw2kStatus::Ok);
            let mut admissible = !expected;
            let mut out = ptr::null_mut();
            assert_eq!(bmw2k_admissibility(params, &mut admissible, &mut out), Bmw2kStatus::Ok);
            assert_eq!(admissible, expected);
            let report: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
            assert_eq!(report["admissible"], expected);
            if !expected {
                assert_eq!(report["beta"], "5/6");
            }

            let mut serialized = ptr::null_mut();
            assert_eq!(bmw2k_params_to_json(params, &mut serialized), Bmw2kStatus::Ok);
            let back: serde_json::Value = serde_json::from_str(&take_string(serialized)).unwrap();
            assert_eq!(back["q_i"][0], if expected { "1/3" } else { "1/2" });
            bmw2k_params_free(params);
        }
    }
}

#[test]
fn non_admissible_verification_fails() {
    unsafe {
        let json = CString::new(K1_BAD_BETA).unwrap();
        let mut params = ptr::null_mut();
        assert_eq!(bmw2k_params_from_json(json.as_ptr(), &mut params), Bmw2kStatus::Ok);
        let mut alg = ptr::null_mut();
        assert_eq!(bmw2k_algebra_new(params, &mut alg), Bmw2kStatus::Ok);
        let mut passed = true;
        let mut out = ptr::null_mut();
        assert_eq!(bmw2k_verify(alg, &mut passed, &mut out), Bmw2kStatus::Ok);
        assert!(!passed);
        let report: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(report["passed"], false);
        bmw2k_algebra_free(alg);
        bmw2k_params_free(params);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut params = ptr::null_mut();
        assert_eq!(bmw2k_params_from_json(ptr::null(), &mut params), Bmw2kStatus::NullPointer);
        assert!(last_error().contains("null"));

        let bad = CString::new("{\"k\": 1}").unwrap();
        assert_eq!(bmw2k_params_from_json(bad.as_ptr(), &mut params), Bmw2kStatus::InvalidParams);
        assert!(!last_error().is_empty());

        assert_eq!(bmw2k_params_finite_field(3, 2, 0, &mut params), Bmw2kStatus::InvalidParams);
        assert_eq!(bmw2k_params_finite_field(3, 101, 0, ptr::null_mut()), Bmw2kStatus::NullPointer);
        assert_eq!(bmw2k_params_generic(0, Bmw2kSign::Minus, &mut params), Bmw2kStatus::InvalidParams);

        assert_eq!(bmw2k_params_generic(1, Bmw2kSign::Minus, &mut params), Bmw2kStatus::Ok);
        assert_eq!(last_error(), "");
        let mut alg = ptr::null_mut();
        assert_eq!(bmw2k_algebra_new(params, &mut alg), Bmw2kStatus::Ok);
        let word = CString::new("e^-1").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(bmw2k_reduce_word(alg, word.as_ptr(), &mut out), Bmw2kStatus::InvalidWord);
        assert!(last_error().contains("not invertible"));
        let invalid_utf8 = [0xffu8 as c_char, 0];
        assert_eq!(bmw2k_reduce_word(alg, invalid_utf8.as_ptr(), &mut out), Bmw2kStatus::InvalidUtf8);
        assert_eq!(bmw2k_reduce_word(ptr::null(), word.as_ptr(), &mut out), Bmw2kStatus::NullPointer);
        assert_eq!(bmw2k_algebra_dim(ptr::null()), 0);
        assert_eq!(bmw2k_params_k(ptr::null()), 0);

        bmw2k_algebra_free(alg);
        bmw2k_params_free(params);
        bmw2k_algebra_free(ptr::null_mut());
        bmw2k_params_free(ptr::null_mut());
        bmw2k_string_free(ptr::null_mut());
    }
}
