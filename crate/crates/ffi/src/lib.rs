//! C interface to the recount solvers.
//!
//! Instances and reports are opaque heap handles released with their
//! `*_free` function. Fallible calls return a [`RecountStatus`]; on failure
//! [`recount_last_error_message`] describes the error for the calling
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use recount::instance::{self, Instance};
use recount::solve::{solve_man, solve_rec, ManAlgo, RecAlgo};
use recount::{tally, Error, RecountSet, SolveReport};

/// Mirrors the command line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecountStatus {
    Ok = 0,
    Internal = 1,
    InvalidInput = 2,
    ResourceLimit = 3,
    Unsupported = 4,
    NullPointer = 5,
}

/// Values for the `algo` argument of [`recount_solve_rec`].
#[repr(C)]
pub enum RecountRecAlgo {
    Dp = 0,
    Brute = 1,
    UnweightedPd = 2,
    Greedy = 3,
}

/// Values for the `algo` argument of [`recount_solve_man`].
#[repr(C)]
pub enum RecountManAlgo {
    Auto = 0,
    Brute = 1,
    PdReg = 2,
    Static = 3,
    Verify = 4,
}

pub struct RecountInstance {
    inner: Instance,
}

pub struct RecountReport {
    report: SolveReport,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes were replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(err: Error) -> RecountStatus {
    let status = match err.exit_code() {
        1 => RecountStatus::Internal,
        3 => RecountStatus::ResourceLimit,
        4 => RecountStatus::Unsupported,
        _ => RecountStatus::InvalidInput,
    };
    set_error(err.to_string());
    status
}

fn null(what: &str) -> RecountStatus {
    set_error(format!("{what} is null"));
    RecountStatus::NullPointer
}

fn invalid(msg: String) -> RecountStatus {
    set_error(msg);
    RecountStatus::InvalidInput
}

/// Message of the last failed call on this thread, or null. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn recount_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a JSON instance.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn recount_instance_parse(text: *const c_char, out: *mut *mut RecountInstance) -> RecountStatus {
    clear_error();
    if text.is_null() {
        return null("text");
    }
    if out.is_null() {
        return null("out");
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return invalid("instance text is not UTF-8".into());
    };
    match instance::parse(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(RecountInstance { inner }));
            RecountStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// # Safety
/// `inst` must come from [`recount_instance_parse`] and not be used again.
#[no_mangle]
pub unsafe extern "C" fn recount_instance_free(inst: *mut RecountInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of candidates, 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live instance handle.
#[no_mangle]
pub unsafe extern "C" fn recount_instance_num_candidates(inst: *const RecountInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.inner.election.num_candidates())
}

/// Number of districts, 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live instance handle.
#[no_mangle]
pub unsafe extern "C" fn recount_instance_num_districts(inst: *const RecountInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.inner.election.num_districts())
}

/// Tallies the instance's manipulation (if any) after recounting the
/// `recount_len` districts in `recount`. Writes one score per candidate to
/// `scores` (capacity `scores_len`, at least the candidate count) and the
/// winner's index to `winner`.
///
/// # Safety
/// `recount` must hold `recount_len` entries (or be null with length 0),
/// `scores` must hold `scores_len` entries and `winner` must be writable.
#[no_mangle]
pub unsafe extern "C" fn recount_tally(
    inst: *const RecountInstance,
    recount: *const usize,
    recount_len: usize,
    scores: *mut i64,
    scores_len: usize,
    winner: *mut usize,
) -> RecountStatus {
    clear_error();
    let Some(inst) = inst.as_ref() else { return null("inst") };
    if scores.is_null() {
        return null("scores");
    }
    if winner.is_null() {
        return null("winner");
    }
    if recount.is_null() && recount_len > 0 {
        return null("recount");
    }
    let e = &inst.inner.election;
    if scores_len < e.num_candidates() {
        return invalid(format!("scores holds {scores_len} entries, need {}", e.num_candidates()));
    }
    let set: Option<RecountSet> =
        (recount_len > 0).then(|| std::slice::from_raw_parts(recount, recount_len).iter().copied().collect());
    match tally(e, inst.inner.manipulation.as_ref(), set.as_ref()) {
        Ok(t) => {
            std::slice::from_raw_parts_mut(scores, scores_len)[..t.scores.len()].copy_from_slice(&t.scores);
            *winner = t.winner;
            RecountStatus::Ok
        }
        Err(e) => fail(e),
    }
}

unsafe fn finish(
    inst: &RecountInstance,
    result: recount::Result<(SolveReport, Option<recount::Tally>)>,
    out: *mut *mut RecountReport,
) -> RecountStatus {
    match result {
        Ok((report, _)) => {
            let json = report.to_json(&inst.inner.election).to_string();
            let json = CString::new(json).expect("JSON has no interior nul");
            *out = Box::into_raw(Box::new(RecountReport { report, json }));
            RecountStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Runs a recount solver on the instance's manipulation. `target` is a
/// candidate index, or -1 for the defender's best response. `budget` of -1
/// uses the instance's defender budget. `algo` is a [`RecountRecAlgo`].
///
/// # Safety
/// `inst` must be a live instance handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn recount_solve_rec(
    inst: *const RecountInstance,
    target: i64,
    algo: u32,
    budget: i64,
    out: *mut *mut RecountReport,
) -> RecountStatus {
    clear_error();
    let Some(inst) = inst.as_ref() else { return null("inst") };
    if out.is_null() {
        return null("out");
    }
    let e = &inst.inner.election;
    let algo = match algo {
        0 => RecAlgo::Dp,
        1 => RecAlgo::Brute,
        2 => RecAlgo::UnweightedPd,
        3 => RecAlgo::Greedy,
        _ => return invalid(format!("unknown recount algorithm {algo}")),
    };
    let target = match target {
        -1 => None,
        t if t >= 0 && (t as usize) < e.num_candidates() => Some(t as usize),
        t => return invalid(format!("target {t} is not a candidate index")),
    };
    let budget = match budget {
        -1 => e.budget_defender(),
        b if b >= 0 => b as usize,
        b => return invalid(format!("budget {b} is negative")),
    };
    finish(inst, solve_rec(e, inst.inner.manipulation.as_ref(), target, algo, budget), out)
}

/// Runs an attacker solver. `algo` is a [`RecountManAlgo`].
///
/// # Safety
/// `inst` must be a live instance handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn recount_solve_man(
    inst: *const RecountInstance,
    regular: bool,
    algo: u32,
    out: *mut *mut RecountReport,
) -> RecountStatus {
    clear_error();
    let Some(inst) = inst.as_ref() else { return null("inst") };
    if out.is_null() {
        return null("out");
    }
    let algo = match algo {
        0 => ManAlgo::Auto,
        1 => ManAlgo::Brute,
        2 => ManAlgo::PdReg,
        3 => ManAlgo::Static,
        4 => ManAlgo::Verify,
        _ => return invalid(format!("unknown attacker algorithm {algo}")),
    };
    let result = solve_man(&inst.inner.election, inst.inner.manipulation.as_ref(), regular, algo);
    finish(inst, result, out)
}

/// The report's decision, false for a null handle.
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn recount_report_decision(report: *const RecountReport) -> bool {
    report.as_ref().is_some_and(|r| r.report.decision)
}

/// Winner's candidate index, or -1 when there is none.
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn recount_report_winner(report: *const RecountReport) -> i64 {
    report.as_ref().and_then(|r| r.report.winner).map_or(-1, |w| w as i64)
}

/// The report as JSON. Release with [`recount_string_free`]. Null for a
/// null handle.
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn recount_report_json(report: *const RecountReport) -> *mut c_char {
    report.as_ref().map_or(ptr::null_mut(), |r| r.json.clone().into_raw())
}

/// # Safety
/// `report` must come from a solve call and not be used again.
#[no_mangle]
pub unsafe extern "C" fn recount_report_free(report: *mut RecountReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `s` must come from [`recount_report_json`] and not be used again.
#[no_mangle]
pub unsafe extern "C" fn recount_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
