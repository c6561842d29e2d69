use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use modalwb_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = mwb_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    mwb_string_free(s);
    out
}

unsafe fn formula(src: &str) -> *mut MwbFormula {
    let mut f = ptr::null_mut();
    assert_eq!(mwb_formula_parse(c(src).as_ptr(), &mut f), MwbStatus::Ok);
    f
}

#[test]
fn parse_render_round_trip() {
    unsafe {
        let f = formula("[0] (p -> <1>q)");
        let mut out = ptr::null_mut();
        assert_eq!(mwb_formula_render(f, &mut out), MwbStatus::Ok);
        assert_eq!(take(out), "[0](p -> <1>q)");
        mwb_formula_free(f);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(mwb_formula_parse(c("p & ").as_ptr(), &mut f), MwbStatus::ParseError);
        assert!(f.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(mwb_formula_parse(ptr::null(), &mut f), MwbStatus::NullArgument);
        assert_eq!(mwb_formula_corpus(c("nope").as_ptr(), &mut f), MwbStatus::NotFound);
        assert!(last_error().contains("nope"));

        let bytes = [0xffu8 as c_char, 0];
        assert_eq!(mwb_formula_parse(bytes.as_ptr(), &mut f), MwbStatus::InvalidUtf8);

        let g = formula("p");
        assert!(mwb_last_error().is_null());
        assert_eq!(mwb_formula_render(g, ptr::null_mut()), MwbStatus::NullArgument);
        mwb_formula_free(g);
    }
}

#[test]
fn model_evaluation() {
    unsafe {
        let json = c(r#"{"worlds":3,"r0":[[0,1],[1,2]],"r1":[[2,2]],"valuation":{"p":[2]}}"#);
        let mut m = ptr::null_mut();
        assert_eq!(mwb_model_from_json(json.as_ptr(), &mut m), MwbStatus::Ok);
        assert_eq!(mwb_model_world_count(m), 3);
        let f = formula("<0>p | <1>p");
        let mut mask = 0;
        assert_eq!(mwb_model_eval(m, f, &mut mask), MwbStatus::Ok);
        assert_eq!(mask, 0b110);
        mwb_formula_free(f);
        mwb_model_free(m);

        assert_eq!(mwb_model_from_json(c(r#"{"worlds":1,"r0":[[0,4]],"r1":[]}"#).as_ptr(), &mut m), MwbStatus::InvalidInput);
        assert_eq!(mwb_model_world_count(ptr::null()), 0);
    }
}

#[test]
fn witness_membership_and_region() {
    unsafe {
        let mut w = ptr::null_mut();
        assert_eq!(mwb_witness_builtin(c("lemma_sattwo").as_ptr(), &mut w), MwbStatus::Ok);
        let mut f = ptr::null_mut();
        assert_eq!(mwb_witness_formula(w, &mut f), MwbStatus::Ok);
        let mut holds = false;
        assert_eq!(mwb_witness_holds(w, f, ptr::null(), &mut holds), MwbStatus::Ok);
        assert!(holds);
        let bottom = c(r#"{"m":0,"k":"root"}"#);
        assert_eq!(mwb_witness_holds(w, f, bottom.as_ptr(), &mut holds), MwbStatus::Ok);
        assert!(!holds);
        assert_eq!(mwb_witness_holds(w, f, c("{}").as_ptr(), &mut holds), MwbStatus::InvalidInput);

        let p = formula("p");
        let mut json = ptr::null_mut();
        assert_eq!(mwb_witness_region_json(w, p, &mut json), MwbStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert!(v.is_object() || v.is_array());
        mwb_formula_free(p);
        mwb_formula_free(f);
        mwb_witness_free(w);
    }
}

#[test]
fn probe_reports() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(mwb_formula_corpus(c("phi_inf").as_ptr(), &mut f), MwbStatus::Ok);
        let (mut ok, mut json) = (false, ptr::null_mut());
        let class = c("wcon0,lcom,rcom,conf");
        assert_eq!(mwb_probe(f, class.as_ptr(), 1, 3, false, 0, 0, &mut ok, &mut json), MwbStatus::Ok);
        assert!(ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["frames_in_class_total"], 9606);
        assert_eq!(v["mode"], "exhaustive");

        assert_eq!(mwb_probe(f, class.as_ptr(), 4, 4, false, 5, 200, &mut ok, &mut json), MwbStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["seed"], 5);
        assert!(ok);

        let weak = c("wcon0,lcom");
        assert_eq!(mwb_probe(f, weak.as_ptr(), 1, 3, false, 0, 0, &mut ok, &mut json), MwbStatus::Ok);
        assert!(!ok);
        mwb_string_free(json);

        assert_eq!(mwb_probe(f, c("bogus").as_ptr(), 1, 2, false, 0, 0, &mut ok, &mut json), MwbStatus::InvalidInput);
        assert_eq!(mwb_probe(f, class.as_ptr(), 1, 9, false, 0, 0, &mut ok, &mut json), MwbStatus::InvalidInput);
        mwb_formula_free(f);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(mwb_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(crate_dir().join("include/modalwb.h")).unwrap();
    for name in [
        "mwb_last_error",
        "mwb_version",
        "mwb_string_free",
        "mwb_formula_parse",
        "mwb_formula_corpus",
        "mwb_formula_render",
        "mwb_formula_free",
        "mwb_model_from_json",
        "mwb_model_world_count",
        "mwb_model_eval",
        "mwb_model_free",
        "mwb_witness_builtin",
        "mwb_witness_formula",
        "mwb_witness_holds",
        "mwb_witness_region_json",
        "mwb_witness_free",
        "mwb_probe",
    ] {
        assert!(header.contains(&format!("{name}(")), "{name}");
    }
    assert!(header.contains("typedef struct MwbFormula MwbFormula;"));
}

fn static_lib() -> Option<PathBuf> {
    // tests live in target/<profile>/deps
    let exe = std::env::current_exe().ok()?;
    let lib = exe.parent()?.parent()?.join("libmodalwb_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_and_runs() {
    let Some(lib) = static_lib() else {
        eprintln!("static library not found next to the test binary; skipping");
        return;
    };
    let out = tempfile_dir();
    let exe = out.join("smoke");
    let status = Command::new("cc")
        .arg(crate_dir().join("tests/c/smoke.c"))
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("cc runs");
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), env!("CARGO_PKG_VERSION"));
}

fn tempfile_dir() -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("c-smoke");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
