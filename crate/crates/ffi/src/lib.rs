//! C interface to `wavesets`.
//!
//! Sets are passed as opaque `WsSet` handles. Every fallible call returns a
//! `WsStatus`; on anything but `WS_OK` a message is available from
//! `ws_last_error` on the same thread. Strings handed out by the library
//! must be released with `ws_string_free`, handles with `ws_set_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wavesets::classify::classify;
use wavesets::families::{build_family, FamilyId};
use wavesets::h2_enum::{enumerate, CaseId, H2Row};
use wavesets::io::{Metadata, SetDocument};
use wavesets::tiling::{verify_wavelet, Space};
use wavesets::Error;

/// Opaque set handle.
pub struct WsSet {
    doc: SetDocument,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WsStatus {
    Ok = 0,
    /// A check ran and the set failed it.
    Failed = 1,
    NullArgument = 2,
    InvalidUtf8 = 3,
    InvalidDocument = 4,
    MalformedInput = 5,
    Domain = 6,
    NotClassifiable = 7,
    Panic = 8,
}

/// Space selector for `ws_verify`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WsSpace {
    /// Use the space recorded in the document.
    Document = 0,
    L2 = 1,
    H2 = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> WsStatus {
    match e {
        Error::InvalidDocument(_) => WsStatus::InvalidDocument,
        Error::MalformedInterval { .. }
        | Error::MalformedRational(_)
        | Error::DegenerateSlope(..)
        | Error::InvalidPolygonal(_)
        | Error::MustSplitAtZero { .. } => WsStatus::MalformedInput,
        Error::NotClassifiable(_) | Error::NotAWaveletSet(_) => WsStatus::NotClassifiable,
        Error::Domain(_) | Error::InvalidData { .. } | Error::Unbounded(_) => WsStatus::Domain,
    }
}

struct Fail(WsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, turning errors and panics into a status plus last-error text.
fn guard(f: impl FnOnce() -> Result<WsStatus, Fail>) -> WsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            WsStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(WsStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(WsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(p: *const WsSet) -> Result<&'a WsSet, Fail> {
    p.as_ref().ok_or_else(|| Fail(WsStatus::NullArgument, "set handle is null".into()))
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(WsStatus::NullArgument, "output pointer is null".into()));
    }
    *out = CString::new(s).expect("library output has no nul bytes").into_raw();
    Ok(())
}

unsafe fn give_set(out: *mut *mut WsSet, doc: SetDocument) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(WsStatus::NullArgument, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(WsSet { doc }));
    Ok(())
}

fn json<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("outputs always serialize")
}

/// Message for the last failed call on this thread, or null. Owned by the
/// library and valid until the next failing call.
#[no_mangle]
pub extern "C" fn ws_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn ws_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `set` must be null or a handle returned by this library.
#[no_mangle]
pub unsafe extern "C" fn ws_set_free(set: *mut WsSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Parses a set document (or a bare list of `["lo","hi"]` pairs).
///
/// # Safety
/// `json_text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ws_set_from_json(json_text: *const c_char, out: *mut *mut WsSet) -> WsStatus {
    guard(|| {
        let doc = SetDocument::from_json(text(json_text, "json")?)?;
        give_set(out, doc)?;
        Ok(WsStatus::Ok)
    })
}

/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ws_set_to_json(set: *const WsSet, out: *mut *mut c_char) -> WsStatus {
    guard(|| {
        give_string(out, handle(set)?.doc.to_json())?;
        Ok(WsStatus::Ok)
    })
}

/// Number of disjoint intervals in the set, or -1 for a null handle.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ws_set_len(set: *const WsSet) -> isize {
    set.as_ref().map_or(-1, |s| s.doc.intervals.len() as isize)
}

/// Lebesgue measure as an exact fraction string.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ws_set_measure(set: *const WsSet, out: *mut *mut c_char) -> WsStatus {
    guard(|| {
        give_string(out, handle(set)?.doc.intervals.measure().to_string())?;
        Ok(WsStatus::Ok)
    })
}

/// Checks the wavelet-set conditions. Returns `Ok` or `Failed`; when
/// `verdict_json` is non-null it receives the full verdict.
///
/// # Safety
/// `set` must be a live handle; `verdict_json` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn ws_verify(set: *const WsSet, space: WsSpace, verdict_json: *mut *mut c_char) -> WsStatus {
    guard(|| {
        let doc = &handle(set)?.doc;
        let space = match space {
            WsSpace::Document => doc.space,
            WsSpace::L2 => Space::L2,
            WsSpace::H2 => Space::H2,
        };
        let v = verify_wavelet(&doc.intervals, space);
        if !verdict_json.is_null() {
            give_string(verdict_json, json(&v))?;
        }
        if v.passed {
            Ok(WsStatus::Ok)
        } else {
            set_error(v.details.join("; "));
            Ok(WsStatus::Failed)
        }
    })
}

/// Builds a named family, e.g. tag `"KA"` with params `"3/8"`.
///
/// # Safety
/// `tag` and `params` must be nul-terminated strings; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ws_build_family(tag: *const c_char, params: *const c_char, out: *mut *mut WsSet) -> WsStatus {
    guard(|| {
        let fam = FamilyId::parse(text(tag, "tag")?, text(params, "params")?)?;
        let mut doc = SetDocument::new(fam.tag.space(), build_family(&fam)?);
        doc.metadata = Metadata {
            family: Some(fam.tag.name().to_string()),
            params: fam.params.clone(),
            ..Metadata::default()
        };
        give_set(out, doc)?;
        Ok(WsStatus::Ok)
    })
}

/// Classification data of a symmetric L2 wavelet set, as JSON.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ws_classify(set: *const WsSet, out: *mut *mut c_char) -> WsStatus {
    guard(|| {
        let data = classify(&handle(set)?.doc.intervals)?;
        give_string(out, json(&data))?;
        Ok(WsStatus::Ok)
    })
}

/// Three-interval H2 wavelet sets of one case as CSV, header included.
///
/// # Safety
/// `case_name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ws_enumerate_csv(
    case_name: *const c_char,
    r_max: c_int,
    s_max: c_int,
    out: *mut *mut c_char,
) -> WsStatus {
    guard(|| {
        let case: CaseId = text(case_name, "case")?.parse()?;
        let e = enumerate(case, r_max.into(), s_max.into())?;
        let mut csv = format!("{}\n", H2Row::CSV_HEADER);
        for row in &e.rows {
            csv.push_str(&row.csv());
            csv.push('\n');
        }
        give_string(out, csv)?;
        Ok(WsStatus::Ok)
    })
}
