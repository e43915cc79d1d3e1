//! Drives the C entry points exactly as a foreign caller would, plus a
//! syntax check of the generated header with the system C compiler.

use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use consensus_lab_ffi::{
    clab_borda_consensus, clab_election_canonical_text, clab_election_free, clab_election_parse,
    clab_is_kemeny_consensus, clab_kemeny_consensus, clab_kendall_tau, clab_last_error,
    clab_ranking_distance, clab_slater_consensus, clab_string_free, clab_verify_reduction,
    ClabElection, CLAB_ERR_INVALID, CLAB_ERR_LIMIT, CLAB_NO, CLAB_OK,
};

const THREE_VOTER_ELECTION: &str = "candidates: a,b,c,d\n1: a>b>c>d\n1: c>a>d>b\n1: b>c>d>a\n";
const FIVE_VOTER_ELECTION: &str = "candidates: a,b,c,d\n2: a>b>c>d\n2: b>a>c>d\n1: b>c>a>d\n";

fn parse(text: &str) -> *mut ClabElection {
    let c = CString::new(text).unwrap();
    let mut handle: *mut ClabElection = ptr::null_mut();
    let code = unsafe { clab_election_parse(c.as_ptr(), &mut handle) };
    assert_eq!(code, CLAB_OK);
    assert!(!handle.is_null());
    handle
}

fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let text = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
    unsafe { clab_string_free(ptr) };
    text
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(clab_last_error()) }
        .to_str()
        .unwrap()
        .to_string()
}

fn cstr(text: &str) -> CString {
    CString::new(text).unwrap()
}

#[test]
fn parse_solve_and_free() {
    let election = parse(THREE_VOTER_ELECTION);

    let mut order: *mut c_char = ptr::null_mut();
    let mut score = 0u64;
    let code = unsafe { clab_kemeny_consensus(election, 0, &mut order, &mut score) };
    assert_eq!(code, CLAB_OK);
    assert_eq!(score, 6);
    assert_eq!(take_string(order), "a>b>c>d");

    let mut order: *mut c_char = ptr::null_mut();
    let mut agreement = 0u64;
    let code = unsafe { clab_slater_consensus(election, 0, &mut order, &mut agreement) };
    assert_eq!(code, CLAB_OK);
    assert_eq!(agreement, 5);
    assert_eq!(take_string(order), "a>b>c>d");

    unsafe { clab_election_free(election) };
}

#[test]
fn borda_weak_order_comes_back_as_text() {
    let election = parse(FIVE_VOTER_ELECTION);
    let mut order: *mut c_char = ptr::null_mut();
    let code = unsafe { clab_borda_consensus(election, &mut order) };
    assert_eq!(code, CLAB_OK);
    assert_eq!(take_string(order), "b>a>c>d");
    unsafe { clab_election_free(election) };
}

#[test]
fn canonical_text_round_trips() {
    let election = parse(THREE_VOTER_ELECTION);
    let mut text: *mut c_char = ptr::null_mut();
    let code = unsafe { clab_election_canonical_text(election, &mut text) };
    assert_eq!(code, CLAB_OK);
    let canonical = take_string(text);
    unsafe { clab_election_free(election) };

    let again = parse(&canonical);
    let mut text: *mut c_char = ptr::null_mut();
    assert_eq!(
        unsafe { clab_election_canonical_text(again, &mut text) },
        CLAB_OK
    );
    assert_eq!(take_string(text), canonical);
    unsafe { clab_election_free(again) };
}

#[test]
fn recognition_answers_yes_and_no() {
    let election = parse(THREE_VOTER_ELECTION);
    let yes = cstr("a>b>c>d");
    assert_eq!(
        unsafe { clab_is_kemeny_consensus(election, yes.as_ptr(), 0) },
        CLAB_OK
    );
    let no = cstr("d>c>b>a");
    assert_eq!(
        unsafe { clab_is_kemeny_consensus(election, no.as_ptr(), 0) },
        CLAB_NO
    );
    unsafe { clab_election_free(election) };
}

#[test]
fn distances_match_the_worked_example() {
    let election = parse(THREE_VOTER_ELECTION);
    let mut out = 0u64;
    let near = cstr("a>b>c>d");
    assert_eq!(
        unsafe { clab_ranking_distance(election, near.as_ptr(), &mut out) },
        CLAB_OK
    );
    assert_eq!(out, 6);
    let far = cstr("d>a>b>c");
    assert_eq!(
        unsafe { clab_ranking_distance(election, far.as_ptr(), &mut out) },
        CLAB_OK
    );
    assert_eq!(out, 11);
    unsafe { clab_election_free(election) };

    let x = cstr("a>b>c");
    let y = cstr("c>b>a");
    assert_eq!(
        unsafe { clab_kendall_tau(x.as_ptr(), y.as_ptr(), &mut out) },
        CLAB_OK
    );
    assert_eq!(out, 3);
}

#[test]
fn failures_set_codes_and_messages() {
    let garbage = cstr("garbage here\n");
    let mut handle: *mut ClabElection = ptr::null_mut();
    let code = unsafe { clab_election_parse(garbage.as_ptr(), &mut handle) };
    assert_eq!(code, CLAB_ERR_INVALID);
    assert!(handle.is_null());
    assert!(last_error().contains("line 1"));

    let code = unsafe { clab_election_parse(ptr::null(), &mut handle) };
    assert_eq!(code, CLAB_ERR_INVALID);
    assert!(last_error().contains("null"));

    let election = parse(THREE_VOTER_ELECTION);
    let short = cstr("a>b");
    let mut out = 0u64;
    let code = unsafe { clab_ranking_distance(election, short.as_ptr(), &mut out) };
    assert_eq!(code, CLAB_ERR_INVALID);

    // Four candidates against a bound of three.
    let mut order: *mut c_char = ptr::null_mut();
    let code = unsafe { clab_kemeny_consensus(election, 3, &mut order, &mut out) };
    assert_eq!(code, CLAB_ERR_LIMIT);
    assert!(last_error().contains("limit"));
    unsafe { clab_election_free(election) };

    let bogus = cstr("not_a_reduction");
    let code = unsafe { clab_verify_reduction(bogus.as_ptr(), 0, 0, 0, ptr::null_mut()) };
    assert_eq!(code, CLAB_ERR_INVALID);
    assert!(last_error().contains("not_a_reduction"));
}

#[test]
fn fresh_threads_start_with_no_error() {
    std::thread::spawn(|| assert_eq!(last_error(), ""))
        .join()
        .unwrap();
}

#[test]
fn reduction_harness_reports_agreements() {
    let name = cstr("vc2fas");
    let mut agreements = 0u64;
    let code = unsafe { clab_verify_reduction(name.as_ptr(), 4, 5, 7, &mut agreements) };
    assert_eq!(code, CLAB_OK);
    assert_eq!(agreements, 5);
}

#[test]
fn generated_header_is_valid_c99() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/consensus_lab.h");
    assert!(header.exists(), "header not generated at {header:?}");
    let status = Command::new("cc")
        .args(["-std=c99", "-fsyntax-only", "-x", "c"])
        .arg(&header)
        .status()
        .expect("no C compiler on PATH");
    assert!(status.success(), "header fails to compile as C99");
}
