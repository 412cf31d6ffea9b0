use std::ffi::{CStr, CString};
use std::ptr;

use quadmult_ffi::*;

fn last_error() -> String {
    let p = qm_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn classify_plus_form() {
    let mut report = ptr::null_mut();
    let status = unsafe { qm_classify(1, 1, 1, 150, 1, 0, 0, 0, &mut report) };
    assert_eq!(status, QmStatus::Ok);
    unsafe {
        assert_eq!(qm_report_leaf_count(report), 1);
        assert_eq!(qm_report_consistent_count(report), 1);
        assert_eq!(qm_report_stuck_count(report), 0);
        assert_eq!(qm_report_unexplained_count(report), 0);
        assert!(!qm_report_incomplete(report));
        let json = qm_report_to_json(report);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        qm_string_free(json);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["leaves"][0]["families"][0], "identity");
        qm_report_free(report);
    }
}

#[test]
fn classify_rejects_indefinite_form() {
    let mut report = ptr::null_mut();
    let status = unsafe { qm_classify(1, 3, 1, 50, 1, 0, 0, 0, &mut report) };
    assert_eq!(status, QmStatus::InvalidArgument);
    assert!(report.is_null());
    assert!(last_error().contains("positive definite"));
    assert_eq!(unsafe { qm_classify(1, 1, 1, 50, 1, 0, 0, 0, ptr::null_mut()) }, QmStatus::NullPointer);
}

#[test]
fn verify_family_witness() {
    let fam = CString::new("fp:7").unwrap();
    let (mut passed, mut x, mut y) = (true, 0u64, 0u64);
    let status = unsafe { qm_verify_family(1, -1, 1, fam.as_ptr(), 10, &mut passed, &mut x, &mut y) };
    assert_eq!(status, QmStatus::Ok);
    assert!(!passed);
    assert_eq!(x * x + y * y - x * y, 7);

    let fam = CString::new("fp:5").unwrap();
    let status = unsafe { qm_verify_family(1, -1, 1, fam.as_ptr(), 100, &mut passed, &mut x, &mut y) };
    assert_eq!(status, QmStatus::Ok);
    assert!(passed);

    let bad = CString::new("fp:9").unwrap();
    let status = unsafe { qm_verify_family(1, -1, 1, bad.as_ptr(), 10, &mut passed, &mut x, &mut y) };
    assert_eq!(status, QmStatus::InvalidArgument);
    assert!(last_error().contains("not prime"));
}

#[test]
fn representation_list() {
    let mut list = ptr::null_mut();
    assert_eq!(unsafe { qm_representations(1, -1, 1, 7, &mut list) }, QmStatus::Ok);
    let n = unsafe { qm_representations_len(list) };
    let pairs: Vec<(u64, u64)> = (0..n)
        .map(|i| {
            let (mut x, mut y) = (0, 0);
            assert_eq!(unsafe { qm_representations_get(list, i, &mut x, &mut y) }, QmStatus::Ok);
            (x, y)
        })
        .collect();
    assert_eq!(pairs, [(1, 3), (2, 3), (3, 1), (3, 2)]);
    let (mut x, mut y) = (0, 0);
    assert_eq!(unsafe { qm_representations_get(list, n, &mut x, &mut y) }, QmStatus::InvalidArgument);
    unsafe { qm_representations_free(list) };
}

#[test]
fn replay_json() {
    for theorem in [1, 2] {
        let s = qm_replay_json(theorem);
        assert!(!s.is_null());
        let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
        unsafe { qm_string_free(s) };
        assert!(serde_json::from_str::<serde_json::Value>(&text).is_ok());
    }
    assert!(qm_replay_json(3).is_null());
    assert!(last_error().contains("theorem 3"));
}

#[test]
fn header_declares_every_entry_point() {
    let header = include_str!("../include/quadmult.h");
    for name in [
        "qm_last_error",
        "qm_classify",
        "qm_report_leaf_count",
        "qm_report_consistent_count",
        "qm_report_stuck_count",
        "qm_report_unexplained_count",
        "qm_report_incomplete",
        "qm_report_to_json",
        "qm_report_free",
        "qm_verify_family",
        "qm_representations",
        "qm_representations_len",
        "qm_representations_get",
        "qm_representations_free",
        "qm_replay_json",
        "qm_string_free",
        "typedef struct QmReport QmReport",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
