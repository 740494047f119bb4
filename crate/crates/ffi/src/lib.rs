//! C interface: parse a JSON input document into an opaque handle, run the
//! homology pipelines on it, and receive reports as JSON strings.
//!
//! Every fallible function returns a [`CosheafStatus`]; on failure the
//! message is available from [`cosheaf_last_error`] on the same thread.
//! Strings handed out by the library must be released with
//! [`cosheaf_string_free`], documents with [`cosheaf_document_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cosheaf::error::{Error, ErrorClass};
use cosheaf::homology::{bm_homology, crosscheck, derived_homology, subdivision_homology, vertex_cover_cech};
use cosheaf::io::{parse_document, report_json, InputDocument};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosheafStatus {
    Ok = 0,
    InputError = 1,
    ContractError = 2,
    Mismatch = 3,
    NullArgument = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosheafPipeline {
    Bm = 0,
    Cech = 1,
    Derived = 2,
    Subdivision = 3,
}

/// Opaque parsed document.
pub struct CosheafDocument {
    inner: InputDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(e: &Error) -> CosheafStatus {
    set_error(&e.to_string());
    match e.class() {
        ErrorClass::Input => CosheafStatus::InputError,
        ErrorClass::Contract => CosheafStatus::ContractError,
    }
}

fn guarded(f: impl FnOnce() -> CosheafStatus) -> CosheafStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            CosheafStatus::Panic
        }
    }
}

/// Writes `s` as a newly allocated C string into `out`.
///
/// # Safety
/// `out` must be valid for writes.
unsafe fn hand_out(s: String, out: *mut *mut c_char) {
    let c = CString::new(s).expect("JSON output contains no NUL");
    *out = c.into_raw();
}

/// Message of the last failure on this thread. The pointer stays valid until
/// the next failing call on the same thread; never free it.
#[no_mangle]
pub extern "C" fn cosheaf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a NUL-terminated JSON document.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cosheaf_document_parse(json: *const c_char, out: *mut *mut CosheafDocument) -> CosheafStatus {
    guarded(|| {
        if json.is_null() || out.is_null() {
            set_error("null argument");
            return CosheafStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let Ok(text) = CStr::from_ptr(json).to_str() else {
            set_error("document is not valid UTF-8");
            return CosheafStatus::InvalidUtf8;
        };
        match parse_document(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(CosheafDocument { inner }));
                CosheafStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `doc` must come from [`cosheaf_document_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cosheaf_document_free(doc: *mut CosheafDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Number of poset elements (cells, for simplicial-complex documents).
///
/// # Safety
/// `doc` must be a live document handle or null.
#[no_mangle]
pub unsafe extern "C" fn cosheaf_document_element_count(doc: *const CosheafDocument) -> usize {
    doc.as_ref().map_or(0, |d| d.inner.poset().len())
}

/// Homology report as JSON. `max_degree` applies to the derived pipeline;
/// the others report every degree of their complex.
///
/// # Safety
/// `doc` must be a live document handle and `out_json` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cosheaf_homology(
    doc: *const CosheafDocument,
    pipeline: CosheafPipeline,
    max_degree: u32,
    out_json: *mut *mut c_char,
) -> CosheafStatus {
    guarded(|| {
        let Some(d) = doc.as_ref() else {
            set_error("null document");
            return CosheafStatus::NullArgument;
        };
        if out_json.is_null() {
            set_error("null output pointer");
            return CosheafStatus::NullArgument;
        }
        *out_json = ptr::null_mut();
        let f = &d.inner.cosheaf;
        let report = match pipeline {
            CosheafPipeline::Derived => derived_homology(f, max_degree as usize + 1),
            CosheafPipeline::Subdivision => subdivision_homology(f),
            CosheafPipeline::Bm | CosheafPipeline::Cech => match d.inner.require_complex() {
                Ok(k) if pipeline == CosheafPipeline::Bm => bm_homology(k, f),
                Ok(k) => vertex_cover_cech(k, f),
                Err(e) => Err(e),
            },
        };
        match report {
            Ok(r) => {
                hand_out(report_json(&r).to_string(), out_json);
                CosheafStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Runs all four pipelines and writes the reports as a JSON array. Returns
/// [`CosheafStatus::Mismatch`] (with the output still written) when they disagree.
///
/// # Safety
/// `doc` must be a live document handle and `out_json` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cosheaf_crosscheck(doc: *const CosheafDocument, out_json: *mut *mut c_char) -> CosheafStatus {
    guarded(|| {
        let Some(d) = doc.as_ref() else {
            set_error("null document");
            return CosheafStatus::NullArgument;
        };
        if out_json.is_null() {
            set_error("null output pointer");
            return CosheafStatus::NullArgument;
        }
        *out_json = ptr::null_mut();
        let verdict = match d.inner.require_complex().and_then(|k| crosscheck(k, &d.inner.cosheaf)) {
            Ok(v) => v,
            Err(e) => return fail(&e),
        };
        let reports: Vec<_> = verdict.reports.iter().map(report_json).collect();
        hand_out(json_array(reports), out_json);
        if verdict.agree() {
            CosheafStatus::Ok
        } else {
            set_error("pipelines disagree");
            CosheafStatus::Mismatch
        }
    })
}

fn json_array(items: Vec<impl ToString>) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cosheaf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
