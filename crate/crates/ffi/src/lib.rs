//! C interface to the modalwb library.
//!
//! Every fallible function returns an [`MwbStatus`]. On failure the message
//! is available from [`mwb_last_error`] on the same thread until the next call.
//! Handles are opaque and must be released with their `_free` function;
//! strings returned through `out_json` or `out_text` are released with
//! [`mwb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use modalwb::formula::{corpus, parse, Formula};
use modalwb::kripke::{eval_model, FrameCondition, Model};
use modalwb::omega::{builtin, eval_symbolic, region_to_json, Builtin, Point};
use modalwb::prober::{unsat_campaign, CampaignOptions, FrameClassSpec};

/// Result codes shared by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MwbStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    NotFound = 5,
    Failed = 6,
    Panic = 7,
}

/// A parsed formula.
pub struct MwbFormula(Formula);

/// A finite 2-model.
pub struct MwbModel(Model);

/// One of the built-in infinite witness models.
pub struct MwbWitness(Builtin);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Fail(MwbStatus, String);

type Res<T> = Result<T, Fail>;

fn fail<T>(status: MwbStatus, msg: impl Into<String>) -> Res<T> {
    Err(Fail(status, msg.into()))
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(body: impl FnOnce() -> Res<()>) -> MwbStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => MwbStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MwbStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Res<&'a str> {
    if p.is_null() {
        return fail(MwbStatus::NullArgument, format!("{what} is null"));
    }
    CStr::from_ptr(p).to_str().or_else(|_| fail(MwbStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Res<&'a T> {
    p.as_ref().map_or_else(|| fail(MwbStatus::NullArgument, format!("{what} is null")), Ok)
}

unsafe fn put<T>(out: *mut T, value: T) -> Res<()> {
    if out.is_null() {
        return fail(MwbStatus::NullArgument, "output pointer is null");
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Message for the last failed call on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn mwb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn mwb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mwb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses formula syntax such as `[0](p -> <1>q)`.
///
/// # Safety
/// `src` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mwb_formula_parse(src: *const c_char, out: *mut *mut MwbFormula) -> MwbStatus {
    guard(|| {
        let f = parse(text(src, "src")?).or_else(|e| fail(MwbStatus::ParseError, e.to_string()))?;
        put(out, Box::into_raw(Box::new(MwbFormula(f))))
    })
}

/// Looks up a named corpus formula.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mwb_formula_corpus(name: *const c_char, out: *mut *mut MwbFormula) -> MwbStatus {
    guard(|| {
        let name = text(name, "name")?;
        let f = corpus(name).map_or_else(|| fail(MwbStatus::NotFound, format!("no corpus formula `{name}`")), Ok)?;
        put(out, Box::into_raw(Box::new(MwbFormula(f))))
    })
}

/// Renders a formula in the syntax accepted by [`mwb_formula_parse`].
///
/// # Safety
/// `f` must be a live formula handle; `out_text` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mwb_formula_render(f: *const MwbFormula, out_text: *mut *mut c_char) -> MwbStatus {
    guard(|| {
        let f = handle(f, "formula")?;
        put(out_text, owned_string(f.0.to_string()))
    })
}

/// # Safety
/// `f` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mwb_formula_free(f: *mut MwbFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Reads a model from `{"worlds": n, "r0": [[x,y],..], "r1": [..], "valuation": {"p": [..]}}`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mwb_model_from_json(json: *const c_char, out: *mut *mut MwbModel) -> MwbStatus {
    guard(|| {
        let m = Model::from_json(text(json, "json")?).or_else(|e| fail(MwbStatus::InvalidInput, e.to_string()))?;
        put(out, Box::into_raw(Box::new(MwbModel(m))))
    })
}

/// Number of worlds in the model, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live model handle.
#[no_mangle]
pub unsafe extern "C" fn mwb_model_world_count(m: *const MwbModel) -> usize {
    m.as_ref().map_or(0, |m| m.0.frame.world_count())
}

/// Truth set of `f` in `m`: bit `w` of `out_mask` is set when `f` holds at world `w`.
///
/// # Safety
/// `m` and `f` must be live handles; `out_mask` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mwb_model_eval(m: *const MwbModel, f: *const MwbFormula, out_mask: *mut u64) -> MwbStatus {
    guard(|| {
        let (m, f) = (handle(m, "model")?, handle(f, "formula")?);
        put(out_mask, eval_model(&m.0, &f.0))
    })
}

/// # Safety
/// `m` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mwb_model_free(m: *mut MwbModel) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Loads a built-in witness model by name, for example `lemma_satone`.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mwb_witness_builtin(name: *const c_char, out: *mut *mut MwbWitness) -> MwbStatus {
    guard(|| {
        let name = text(name, "name")?;
        let b = builtin(name).map_or_else(|| fail(MwbStatus::NotFound, format!("no witness `{name}`")), Ok)?;
        put(out, Box::into_raw(Box::new(MwbWitness(b))))
    })
}

/// The corpus formula a witness is built for, as a new formula handle.
///
/// # Safety
/// `w` must be a live witness handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mwb_witness_formula(w: *const MwbWitness, out: *mut *mut MwbFormula) -> MwbStatus {
    guard(|| {
        let w = handle(w, "witness")?;
        let f = corpus(w.0.formula).expect("builtins name corpus formulas");
        put(out, Box::into_raw(Box::new(MwbFormula(f))))
    })
}

/// Whether `f` holds at `point`, given as JSON such as `{"m": "omega", "k": "root"}`.
/// A null `point` means the witness's own target point.
///
/// # Safety
/// `w` and `f` must be live handles; `point` must be null or nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mwb_witness_holds(
    w: *const MwbWitness,
    f: *const MwbFormula,
    point: *const c_char,
    out: *mut bool,
) -> MwbStatus {
    guard(|| {
        let (w, f) = (handle(w, "witness")?, handle(f, "formula")?);
        let p = if point.is_null() {
            w.0.target
        } else {
            Point::from_json(text(point, "point")?).or_else(|e| fail(MwbStatus::InvalidInput, e.to_string()))?
        };
        let (region, _) = eval_symbolic(&w.0.model, &f.0).or_else(|e| fail(MwbStatus::Failed, e.to_string()))?;
        put(out, region.contains(p))
    })
}

/// The exact truth region of `f` on the witness, as JSON.
///
/// # Safety
/// `w` and `f` must be live handles; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mwb_witness_region_json(
    w: *const MwbWitness,
    f: *const MwbFormula,
    out_json: *mut *mut c_char,
) -> MwbStatus {
    guard(|| {
        let (w, f) = (handle(w, "witness")?, handle(f, "formula")?);
        let (region, _) = eval_symbolic(&w.0.model, &f.0).or_else(|e| fail(MwbStatus::Failed, e.to_string()))?;
        put(out_json, owned_string(region_to_json(&region).to_string()))
    })
}

/// # Safety
/// `w` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mwb_witness_free(w: *mut MwbWitness) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Searches the frame class for finite models of `f` and writes the campaign report as JSON.
///
/// `class` is a comma-separated condition list such as `wcon0,lcom`. With
/// `samples == 0` every frame of size `min_size..=max_size` is checked;
/// otherwise `samples` random in-class frames per size are drawn from `seed`.
/// `out_ok` receives whether no finite model was found.
///
/// # Safety
/// `f` must be a live handle; `class` must be nul-terminated; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn mwb_probe(
    f: *const MwbFormula,
    class: *const c_char,
    min_size: usize,
    max_size: usize,
    product_only: bool,
    seed: u64,
    samples: u64,
    out_ok: *mut bool,
    out_json: *mut *mut c_char,
) -> MwbStatus {
    guard(|| {
        let f = handle(f, "formula")?;
        let conds = text(class, "class")?
            .split(',')
            .map(|c| c.trim().parse::<FrameCondition>())
            .collect::<Result<Vec<_>, _>>()
            .or_else(|e| fail(MwbStatus::InvalidInput, e.to_string()))?;
        let spec = if product_only { FrameClassSpec::products(conds) } else { FrameClassSpec::general(conds) }
            .or_else(|e| fail(MwbStatus::InvalidInput, e.to_string()))?;
        let opts = if samples == 0 {
            CampaignOptions { min_size, ..CampaignOptions::exhaustive(max_size) }
        } else {
            CampaignOptions::random(min_size, max_size, seed, samples)
        };
        let report =
            unsat_campaign("ffi", &f.0, &spec, &opts).or_else(|e| fail(MwbStatus::InvalidInput, e.to_string()))?;
        let json = serde_json::to_string(&report).expect("report serialises");
        put(out_ok, report.ok)?;
        put(out_json, owned_string(json))
    })
}
