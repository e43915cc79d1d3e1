//! C ABI over the consensus workbench.
//!
//! Conventions, chosen to survive any C toolchain:
//! - Every entry point returns a status code. `CLAB_OK` doubles as "yes"
//!   for decision calls and `CLAB_NO` as "no"; the `CLAB_ERR_*` codes
//!   mirror the CLI's exit codes.
//! - Elections travel as opaque `ClabElection` handles created by
//!   [`clab_election_parse`] and released by [`clab_election_free`].
//! - Strings returned through out-parameters are NUL-terminated, owned by
//!   the caller, and must be released with [`clab_string_free`].
//! - On any non-OK status except `CLAB_NO`, [`clab_last_error`] returns a
//!   message for the calling thread. Out-parameters are only written on
//!   `CLAB_OK`.
//! - Panics never unwind across the boundary; they become
//!   `CLAB_ERR_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use consensus_lab::formats::{parse_election, serialize_election};
use consensus_lab::recognition::is_kemeny_consensus;
use consensus_lab::reductions::verify_reduction;
use consensus_lab::solvers::{
    borda_consensus, election_slater_input, kemeny_consensus_set, slater_consensus_set,
};
use consensus_lab::{distance_to_election, kendall_tau, Election, Error, Limits, Ranking};

/// Success; for decision calls, "yes".
pub const CLAB_OK: c_int = 0;
/// The decision call completed and the answer is "no".
pub const CLAB_NO: c_int = 1;
/// Malformed input: bad text, bad UTF-8, null pointer, unknown name.
pub const CLAB_ERR_INVALID: c_int = 2;
/// The request exceeds a configured size bound.
pub const CLAB_ERR_LIMIT: c_int = 3;
/// An internal invariant failed; file a bug.
pub const CLAB_ERR_INTERNAL: c_int = 4;

/// An election behind the ABI. Allocation and layout are private.
pub struct ClabElection {
    inner: Election,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_for(error: &Error) -> c_int {
    match error {
        Error::SizeLimit { .. } => CLAB_ERR_LIMIT,
        Error::Internal(_) => CLAB_ERR_INTERNAL,
        _ => CLAB_ERR_INVALID,
    }
}

fn fail(error: Error) -> c_int {
    set_error(&error.to_string());
    status_for(&error)
}

fn guarded(body: impl FnOnce() -> c_int) -> c_int {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic");
            CLAB_ERR_INTERNAL
        }
    }
}

/// Reads a caller string, reporting null and bad UTF-8 as errors.
unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, c_int> {
    if ptr.is_null() {
        set_error(&format!("{what} is null"));
        return Err(CLAB_ERR_INVALID);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error(&format!("{what} is not valid UTF-8"));
        CLAB_ERR_INVALID
    })
}

unsafe fn read_election<'a>(ptr: *const ClabElection) -> Result<&'a Election, c_int> {
    if ptr.is_null() {
        set_error("election handle is null");
        return Err(CLAB_ERR_INVALID);
    }
    Ok(&(*ptr).inner)
}

fn write_string(out: *mut *mut c_char, text: String) -> c_int {
    if out.is_null() {
        set_error("output pointer is null");
        return CLAB_ERR_INVALID;
    }
    match CString::new(text) {
        Ok(owned) => {
            unsafe { *out = owned.into_raw() };
            CLAB_OK
        }
        Err(_) => {
            set_error("result contains an interior NUL byte");
            CLAB_ERR_INTERNAL
        }
    }
}

fn limits_for(max_candidates: u32) -> Limits {
    if max_candidates == 0 {
        Limits::default()
    } else {
        Limits::with_max_candidates(max_candidates as usize)
    }
}

/// Last error message for this thread, NUL-terminated. Owned by the
/// library; valid until the next failing call on the same thread. Empty
/// string when no error has occurred.
///
/// # Safety
/// The returned pointer must not be freed or used after a later failing
/// call on the same thread.
#[no_mangle]
pub unsafe extern "C" fn clab_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parses election text into a fresh handle and writes it to `out`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must point to writable
/// memory for one pointer. On success the caller owns the handle and must
/// release it with `clab_election_free`.
#[no_mangle]
pub unsafe extern "C" fn clab_election_parse(
    text: *const c_char,
    out: *mut *mut ClabElection,
) -> c_int {
    guarded(|| {
        if out.is_null() {
            set_error("output pointer is null");
            return CLAB_ERR_INVALID;
        }
        *out = std::ptr::null_mut();
        let text = match read_str(text, "election text") {
            Ok(t) => t,
            Err(code) => return code,
        };
        match parse_election(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(ClabElection { inner }));
                CLAB_OK
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a handle from `clab_election_parse`. Null is a no-op.
///
/// # Safety
/// `election` must be a handle from `clab_election_parse` that has not
/// already been freed.
#[no_mangle]
pub unsafe extern "C" fn clab_election_free(election: *mut ClabElection) {
    if !election.is_null() {
        drop(Box::from_raw(election));
    }
}

/// Serializes the election in canonical text form.
///
/// # Safety
/// `election` must be a live handle; `out` must point to writable memory
/// for one pointer. The caller frees the string with `clab_string_free`.
#[no_mangle]
pub unsafe extern "C" fn clab_election_canonical_text(
    election: *const ClabElection,
    out: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        let election = match read_election(election) {
            Ok(e) => e,
            Err(code) => return code,
        };
        write_string(out, serialize_election(election))
    })
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `text` must be a string returned by this library that has not already
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn clab_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Number of candidate pairs the two `>`-separated rankings order
/// oppositely, written to `out`.
///
/// # Safety
/// `x` and `y` must be NUL-terminated strings; `out` must point to
/// writable memory for one `uint64_t`.
#[no_mangle]
pub unsafe extern "C" fn clab_kendall_tau(
    x: *const c_char,
    y: *const c_char,
    out: *mut u64,
) -> c_int {
    guarded(|| {
        if out.is_null() {
            set_error("output pointer is null");
            return CLAB_ERR_INVALID;
        }
        let x = match read_str(x, "first ranking") {
            Ok(t) => t,
            Err(code) => return code,
        };
        let y = match read_str(y, "second ranking") {
            Ok(t) => t,
            Err(code) => return code,
        };
        let parsed = x
            .parse::<Ranking>()
            .and_then(|rx| Ok((rx, y.parse::<Ranking>()?)));
        match parsed.and_then(|(rx, ry)| kendall_tau(&rx, &ry)) {
            Ok(d) => {
                *out = d;
                CLAB_OK
            }
            Err(e) => fail(e),
        }
    })
}

/// Sum of distances from the ranking to every ballot, written to `out`.
///
/// # Safety
/// `election` must be a live handle; `order` a NUL-terminated string;
/// `out` writable memory for one `uint64_t`.
#[no_mangle]
pub unsafe extern "C" fn clab_ranking_distance(
    election: *const ClabElection,
    order: *const c_char,
    out: *mut u64,
) -> c_int {
    guarded(|| {
        if out.is_null() {
            set_error("output pointer is null");
            return CLAB_ERR_INVALID;
        }
        let election = match read_election(election) {
            Ok(e) => e,
            Err(code) => return code,
        };
        let order = match read_str(order, "ranking") {
            Ok(t) => t,
            Err(code) => return code,
        };
        match order
            .parse::<Ranking>()
            .and_then(|r| distance_to_election(&r, election))
        {
            Ok(d) => {
                *out = d;
                CLAB_OK
            }
            Err(e) => fail(e),
        }
    })
}

/// First Kemeny consensus in candidate-name order, plus its distance.
/// `max_candidates` of 0 keeps the default size bounds.
///
/// # Safety
/// `election` must be a live handle; `out_order` and `out_score` must
/// point to writable memory. The caller frees the string with
/// `clab_string_free`.
#[no_mangle]
pub unsafe extern "C" fn clab_kemeny_consensus(
    election: *const ClabElection,
    max_candidates: u32,
    out_order: *mut *mut c_char,
    out_score: *mut u64,
) -> c_int {
    guarded(|| {
        if out_score.is_null() {
            set_error("output pointer is null");
            return CLAB_ERR_INVALID;
        }
        let election = match read_election(election) {
            Ok(e) => e,
            Err(code) => return code,
        };
        match kemeny_consensus_set(election, &limits_for(max_candidates), false) {
            Ok(set) => {
                let code = write_string(out_order, set.consensuses[0].to_string());
                if code == CLAB_OK {
                    *out_score = set.optimum;
                }
                code
            }
            Err(e) => fail(e),
        }
    })
}

/// First Slater consensus of the election's majority digraph, plus its
/// weighted agreement score. `max_candidates` of 0 keeps the defaults.
///
/// # Safety
/// As for `clab_kemeny_consensus`.
#[no_mangle]
pub unsafe extern "C" fn clab_slater_consensus(
    election: *const ClabElection,
    max_candidates: u32,
    out_order: *mut *mut c_char,
    out_agreement: *mut u64,
) -> c_int {
    guarded(|| {
        if out_agreement.is_null() {
            set_error("output pointer is null");
            return CLAB_ERR_INVALID;
        }
        let election = match read_election(election) {
            Ok(e) => e,
            Err(code) => return code,
        };
        let (digraph, weights) = election_slater_input(election);
        match slater_consensus_set(&digraph, &weights, &limits_for(max_candidates), false) {
            Ok(set) => {
                let code = write_string(out_order, set.consensuses[0].to_string());
                if code == CLAB_OK {
                    *out_agreement = set.optimum;
                }
                code
            }
            Err(e) => fail(e),
        }
    })
}

/// Borda consensus as a weak order; ties print as `a=b`.
///
/// # Safety
/// `election` must be a live handle; `out_order` must point to writable
/// memory. The caller frees the string with `clab_string_free`.
#[no_mangle]
pub unsafe extern "C" fn clab_borda_consensus(
    election: *const ClabElection,
    out_order: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        let election = match read_election(election) {
            Ok(e) => e,
            Err(code) => return code,
        };
        write_string(out_order, borda_consensus(election).to_string())
    })
}

/// Is the ranking a Kemeny consensus? `CLAB_OK` yes, `CLAB_NO` no.
/// `max_candidates` of 0 keeps the default size bounds.
///
/// # Safety
/// `election` must be a live handle; `order` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn clab_is_kemeny_consensus(
    election: *const ClabElection,
    order: *const c_char,
    max_candidates: u32,
) -> c_int {
    guarded(|| {
        let election = match read_election(election) {
            Ok(e) => e,
            Err(code) => return code,
        };
        let order = match read_str(order, "ranking") {
            Ok(t) => t,
            Err(code) => return code,
        };
        match order
            .parse::<Ranking>()
            .and_then(|r| is_kemeny_consensus(election, &r, &limits_for(max_candidates)))
        {
            Ok(true) => CLAB_OK,
            Ok(false) => CLAB_NO,
            Err(e) => fail(e),
        }
    })
}

/// Runs a named reduction's verification harness: random instances,
/// decided on both sides, compared. `CLAB_OK` means every trial agreed,
/// `CLAB_NO` means a disagreement was found. Passing 0 for `max_size` or
/// `trials` keeps that harness's default. The number of agreeing trials
/// is written to `out_agreements` when it is non-null.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out_agreements` must be null
/// or point to writable memory for one `uint64_t`.
#[no_mangle]
pub unsafe extern "C" fn clab_verify_reduction(
    name: *const c_char,
    max_size: u32,
    trials: u64,
    seed: u64,
    out_agreements: *mut u64,
) -> c_int {
    guarded(|| {
        let name = match read_str(name, "reduction name") {
            Ok(t) => t,
            Err(code) => return code,
        };
        let max_size = (max_size > 0).then_some(max_size as usize);
        let trials = (trials > 0).then_some(trials);
        match verify_reduction(name, max_size, trials, seed, &Limits::default()) {
            Ok(report) => {
                if !out_agreements.is_null() {
                    *out_agreements = report.agreements;
                }
                if report.all_agreed() {
                    CLAB_OK
                } else {
                    CLAB_NO
                }
            }
            Err(e) => fail(e),
        }
    })
}
