//! C ABI for `stabiliscope`.
//!
//! Maps and fiber models are opaque handles created by constructors such as
//! `stb_map_from_json` and released with the matching `*_free`. Every fallible call
//! returns an [`StbStatus`]; on failure [`stb_last_error`] describes the
//! problem for the calling thread. Strings returned through `out` pointers
//! are owned by the caller and must be released with [`stb_string_free`].
//! Rationals cross the boundary as `"a/b"` strings, structured results as
//! JSON in the same shapes the command-line tool prints.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use stabiliscope::cli::{map_from_json, AnalyzeReport};
use stabiliscope::lift::{trajectory, DistinctCurves};
use stabiliscope::{
    build_tf, is_algebraically_stable, run_msa_with, verify_counterexample, Error, FiberModel,
    LiftState, MapSpec, PLMap, Rat, StabilityVerdict, TieBreak,
};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StbStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed or invalid JSON, rational or argument.
    InvalidInput = 3,
    /// A rational outside `[0, 1]` was passed to a map.
    Domain = 4,
    /// A gap or curve index past the end of the model.
    OutOfRange = 5,
    /// A Rust panic was caught at the boundary.
    Internal = 99,
}

/// Piecewise-linear map on `[0, 1]`.
pub struct StbMap(PLMap);

/// Farey-marked fiber model.
pub struct StbModel(FiberModel);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(StbStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Domain(_) => StbStatus::Domain,
            Error::IndexOutOfRange { .. } => StbStatus::OutOfRange,
            _ => StbStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(StbStatus::InvalidInput, e.to_string())
    }
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> StbStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => StbStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            StbStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(StbStatus::NullArgument, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(StbStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn rat_arg(p: *const c_char, what: &str) -> Result<Rat, Failure> {
    Ok(str_arg(p, what)?.parse::<Rat>()?)
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let s = CString::new(s).map_err(|_| Failure(StbStatus::Internal, "NUL in output".into()))?;
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(s.into_raw());
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn stb_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn stb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a map from JSON: `{"n", "monomials"}` or `{"breakpoints", "pieces"}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stb_map_from_json(
    json: *const c_char,
    out: *mut *mut StbMap,
) -> StbStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let map =
            map_from_json(text).map_err(|e| Failure(StbStatus::InvalidInput, e.to_string()))?;
        write_handle(out, StbMap(map), "out")
    })
}

/// The envelope map of `(x, y) ↦ (x², x⁴y⁻³ + y³)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stb_map_fold(out: *mut *mut StbMap) -> StbStatus {
    guard(|| {
        let map = build_tf(&MapSpec::nonstabilisable())?;
        write_handle(out, StbMap(map), "out")
    })
}

/// # Safety
/// `map` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stb_map_free(map: *mut StbMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stb_map_to_json(map: *const StbMap, out: *mut *mut c_char) -> StbStatus {
    guard(|| {
        let map = handle(map, "map")?;
        write_string(out, serde_json::to_string(&map.0)?)
    })
}

/// `T(q)` as an `"a/b"` string.
///
/// # Safety
/// `map` must be a live handle, `q` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stb_map_eval(
    map: *const StbMap,
    q: *const c_char,
    out: *mut *mut c_char,
) -> StbStatus {
    guard(|| {
        let map = handle(map, "map")?;
        let q = rat_arg(q, "q")?;
        write_string(out, map.0.eval(&q)?.to_string())
    })
}

/// `[T(q0), …, T^steps(q0)]` as a JSON array of strings.
///
/// # Safety
/// `map` must be a live handle, `q0` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stb_map_orbit_json(
    map: *const StbMap,
    q0: *const c_char,
    steps: usize,
    out: *mut *mut c_char,
) -> StbStatus {
    guard(|| {
        let map = handle(map, "map")?;
        let q0 = rat_arg(q0, "q0")?;
        write_string(out, serde_json::to_string(&map.0.orbit(&q0, steps)?)?)
    })
}

/// The model `{0, 1}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stb_model_unit(out: *mut *mut StbModel) -> StbStatus {
    guard(|| write_handle(out, StbModel(FiberModel::unit()), "out"))
}

/// Builds a model from `{"marked": [...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stb_model_from_json(
    json: *const c_char,
    out: *mut *mut StbModel,
) -> StbStatus {
    guard(|| {
        let model: FiberModel = serde_json::from_str(str_arg(json, "json")?)?;
        write_handle(out, StbModel(model), "out")
    })
}

/// # Safety
/// `model` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stb_model_free(model: *mut StbModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Number of marked curves, or 0 for a null handle.
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stb_model_num_marked(model: *const StbModel) -> usize {
    model.as_ref().map_or(0, |m| m.0.num_marked())
}

/// Blows up the point of gap `gap` in place, marking the mediant.
///
/// # Safety
/// `model` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn stb_model_blowup(model: *mut StbModel, gap: usize) -> StbStatus {
    guard(|| {
        let model = model.as_mut().ok_or_else(|| null("model"))?;
        model.0 = model.0.blowup_gap(gap)?;
        Ok(())
    })
}

/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stb_model_to_json(
    model: *const StbModel,
    out: *mut *mut c_char,
) -> StbStatus {
    guard(|| write_string(out, serde_json::to_string(&handle(model, "model")?.0)?))
}

/// The dual graph of the marked curves in DOT.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stb_model_to_dot(
    model: *const StbModel,
    out: *mut *mut c_char,
) -> StbStatus {
    guard(|| write_string(out, handle(model, "model")?.0.to_dot()))
}

/// Decides algebraic stability. `out_report`, if not null, receives the
/// verdict and the chosen orbit as JSON.
///
/// # Safety
/// Handles must be live; `out_stable` writable; `out_report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn stb_analyze(
    model: *const StbModel,
    map: *const StbMap,
    out_stable: *mut bool,
    out_report: *mut *mut c_char,
) -> StbStatus {
    guard(|| {
        let model = &handle(model, "model")?.0;
        let map = &handle(map, "map")?.0;
        let verdict = is_algebraically_stable(model, map);
        write_out(out_stable, verdict.is_stable(), "out_stable")?;
        if !out_report.is_null() {
            let report = match &verdict {
                StabilityVerdict::Stable => AnalyzeReport { verdict: "stable".into(), orbit: None },
                StabilityVerdict::Unstable(o) => {
                    AnalyzeReport { verdict: "unstable".into(), orbit: Some(o.trace(model)) }
                }
            };
            write_string(out_report, serde_json::to_string(&report)?)?;
        }
        Ok(())
    })
}

/// Runs at most `budget` rounds of the minimal stabilisation algorithm.
/// `tie_break` is null (smallest start) or one of `smallest-start`,
/// `largest-start`, `random[:seed]`, `any-minimal[:seed]`. The final model
/// is a new handle.
///
/// # Safety
/// Handles must be live; `tie_break` null or NUL-terminated; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn stb_run_msa(
    model: *const StbModel,
    map: *const StbMap,
    budget: usize,
    tie_break: *const c_char,
    out_terminated: *mut bool,
    out_model: *mut *mut StbModel,
) -> StbStatus {
    guard(|| {
        let model = &handle(model, "model")?.0;
        let map = &handle(map, "map")?.0;
        let tie = if tie_break.is_null() {
            TieBreak::SmallestStart
        } else {
            str_arg(tie_break, "tie_break")?.parse::<TieBreak>()?
        };
        if out_terminated.is_null() || out_model.is_null() {
            return Err(null("output"));
        }
        let run = run_msa_with(model, map, budget, tie);
        write_out(out_terminated, run.terminated(), "out_terminated")?;
        write_handle(out_model, StbModel(run.model), "out_model")
    })
}

/// Checks the non-termination certificate over `steps` orbit steps.
/// `out_json`, if not null, receives the full certificate.
///
/// # Safety
/// `map` must be live; `out_valid` writable; `out_json` null or writable.
#[no_mangle]
pub unsafe extern "C" fn stb_certify(
    map: *const StbMap,
    steps: usize,
    out_valid: *mut bool,
    out_json: *mut *mut c_char,
) -> StbStatus {
    guard(|| {
        let cert = verify_counterexample(&handle(map, "map")?.0, steps);
        write_out(out_valid, cert.is_valid(), "out_valid")?;
        if !out_json.is_null() {
            write_string(out_json, serde_json::to_string(&cert)?)?;
        }
        Ok(())
    })
}

/// Lifts `{"comp", "lengths", "length1_curves"}` until stable; writes the
/// visited states as a JSON array.
///
/// # Safety
/// `state_json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stb_lift_sim_json(
    state_json: *const c_char,
    out: *mut *mut c_char,
) -> StbStatus {
    guard(|| {
        let state: LiftState = serde_json::from_str(str_arg(state_json, "state_json")?)?;
        write_string(out, serde_json::to_string(&trajectory(&state, &DistinctCurves))?)
    })
}
