use std::ffi::{c_char, CStr};
use std::ptr;

use quotseries_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    qs_string_free(s);
    out
}

unsafe fn coeffs(s: *const QsSeries, upto: i64) -> Vec<String> {
    (0..=upto)
        .map(|k| {
            let mut c = ptr::null_mut();
            assert_eq!(qs_series_coeff(s, k, &mut c), QsStatus::Ok);
            take(c)
        })
        .collect()
}

#[test]
fn u_series_round_trip() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(qs_u_series(1, 5, &mut s), QsStatus::Ok);
        assert_eq!(qs_series_valuation(s), 0);
        assert_eq!(qs_series_precision(s), 6);
        // (1-q)^2/(1-2q)
        assert_eq!(coeffs(s, 5), ["1", "0", "1", "2", "4", "8"]);
        let mut c = ptr::null_mut();
        assert_eq!(qs_series_coeff(s, 6, &mut c), QsStatus::BeyondPrecision);
        assert!(!qs_last_error().is_null());
        let mut r = ptr::null_mut();
        assert_eq!(qs_series_render(s, &mut r), QsStatus::Ok);
        assert!(take(r).starts_with("1 + q^2"));
        qs_series_free(s);
    }
}

#[test]
fn euler_matches_library() {
    let expected = quotseries::surface_quot::euler_dim0(2, 1, 4).unwrap();
    unsafe {
        let mut e = ptr::null_mut();
        assert_eq!(qs_euler_dim0(2, 1, 4, &mut e), QsStatus::Ok);
        let got = coeffs(e, 4);
        for (k, c) in got.iter().enumerate() {
            assert_eq!(*c, expected.coeff(k as i64).unwrap().to_string());
        }
        qs_series_free(e);
    }
}

#[test]
fn curve_matches_oracle() {
    unsafe {
        let (ranks, degrees, twists) = ([1i64], [0i64], [1i64]);
        let (mut z, mut o) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(
            qs_curve(0, 2, ranks.as_ptr(), degrees.as_ptr(), twists.as_ptr(), 1, 4, &mut z),
            QsStatus::Ok
        );
        assert_eq!(qs_oracle_segre(2, degrees.as_ptr(), 1, 4, &mut o), QsStatus::Ok);
        assert_eq!(coeffs(z, 4), coeffs(o, 4));
        qs_series_free(z);
        qs_series_free(o);
    }
}

#[test]
fn general_type_leading_term() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(qs_general_type(2, 2, 2, 0, 3, &mut s), QsStatus::Ok);
        assert_eq!(qs_series_valuation(s), -2);
        qs_series_free(s);
        assert_eq!(qs_general_type(2, 3, 2, 0, 3, &mut s), QsStatus::InvalidArgument);
    }
}

#[test]
fn ky_numbers() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(qs_ky_number(1, 3, &mut c), QsStatus::Ok);
        assert_eq!(take(c), "72");
        assert_eq!(qs_ky_number(-1, 3, &mut c), QsStatus::InvalidArgument);
    }
}

#[test]
fn null_arguments_are_reported() {
    unsafe {
        assert_eq!(qs_u_series(1, 3, ptr::null_mut()), QsStatus::NullPointer);
        let msg = CStr::from_ptr(qs_last_error()).to_str().unwrap();
        assert!(msg.contains("out"));
        let mut s = ptr::null_mut();
        assert_eq!(qs_curve(1, 1, ptr::null(), ptr::null(), ptr::null(), 2, 3, &mut s), QsStatus::NullPointer);
        assert_eq!(qs_series_coeff(ptr::null(), 0, &mut ptr::null_mut()), QsStatus::NullPointer);
        qs_series_free(ptr::null_mut());
        qs_string_free(ptr::null_mut());
    }
}

#[test]
fn header_lists_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/quotseries.h")).unwrap();
    for name in [
        "qs_last_error",
        "qs_u_series",
        "qs_euler_dim0",
        "qs_general_type",
        "qs_curve",
        "qs_oracle_segre",
        "qs_ky_number",
        "qs_series_valuation",
        "qs_series_precision",
        "qs_series_coeff",
        "qs_series_render",
        "qs_series_free",
        "qs_string_free",
        "typedef struct QsSeries QsSeries",
        "QS_STATUS_OK = 0",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
