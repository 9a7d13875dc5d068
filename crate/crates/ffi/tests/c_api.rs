//! Exercises the C interface through its exported functions and checks that
//! the generated header compiles as C.

use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use sp4_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { sp4_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sp4_last_error()) }
        .to_str()
        .unwrap()
        .to_string()
}

const TN: &str = r#"{"basis": [
  [["1","0","0","0"],["0","1","0","0"],["0","0","-1","0"],["0","0","0","-1"]],
  [["0","1","0","0"],["0","0","0","0"],["0","0","0","0"],["0","0","-1","0"]],
  [["0","0","0","0"],["0","0","0","1"],["0","0","0","0"],["0","0","0","0"]],
  [["0","0","0","1"],["0","0","1","0"],["0","0","0","0"],["0","0","0","0"]],
  [["0","0","1","0"],["0","0","0","0"],["0","0","0","0"],["0","0","0","0"]]
]}"#;

#[test]
fn catalog_handle_round_trip() {
    let c = sp4_catalog_load();
    assert_eq!(unsafe { sp4_catalog_len(c) }, 65);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { sp4_catalog_to_json(c, &mut json) }, Sp4Status::Sp4Ok);
    let text = CString::new(take(json)).unwrap();
    let mut c2 = ptr::null_mut();
    assert_eq!(
        unsafe { sp4_catalog_from_json(text.as_ptr(), &mut c2) },
        Sp4Status::Sp4Ok
    );
    assert_eq!(unsafe { sp4_catalog_len(c2) }, 65);
    unsafe {
        sp4_catalog_free(c);
        sp4_catalog_free(c2);
    }
}

#[test]
fn catalog_verification_report() {
    let c = sp4_catalog_load();
    let params = CString::new("2,-3,1/2").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { sp4_catalog_verify(c, params.as_ptr(), 1, &mut out) },
        Sp4Status::Sp4Ok
    );
    let report: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["samples"], serde_json::json!(["2", "-3", "1/2"]));
    let bad = CString::new("2,x").unwrap();
    assert_eq!(
        unsafe { sp4_catalog_verify(c, bad.as_ptr(), 1, &mut out) },
        Sp4Status::Sp4ParseError
    );
    assert!(!last_error().is_empty());
    unsafe { sp4_catalog_free(c) };
}

#[test]
fn subalgebra_handles() {
    let json = CString::new(TN).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { sp4_subalgebra_from_json(json.as_ptr(), &mut h) },
        Sp4Status::Sp4Ok
    );
    assert_eq!(unsafe { sp4_subalgebra_dim(h) }, 5);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sp4_subalgebra_identify(h, &mut out) }, Sp4Status::Sp4Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["sw"], "s_{5,37}");
    assert_eq!(unsafe { sp4_subalgebra_invariants(h, &mut out) }, Sp4Status::Sp4Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["dim"], 5);
    let recipe = CString::new("W*shear:alpha:1/2").unwrap();
    let mut img = ptr::null_mut();
    assert_eq!(
        unsafe { sp4_subalgebra_conjugate(h, recipe.as_ptr(), &mut img) },
        Sp4Status::Sp4Ok
    );
    assert_eq!(unsafe { sp4_subalgebra_invariants(img, &mut out) }, Sp4Status::Sp4Ok);
    assert_eq!(serde_json::from_str::<serde_json::Value>(&take(out)).unwrap(), v);
    assert_eq!(unsafe { sp4_subalgebra_to_json(img, &mut out) }, Sp4Status::Sp4Ok);
    assert!(take(out).contains("basis"));
    let bad = CString::new("diag:2,1,1,1").unwrap();
    assert_eq!(
        unsafe { sp4_subalgebra_conjugate(h, bad.as_ptr(), &mut img) },
        Sp4Status::Sp4ParseError
    );
    unsafe {
        sp4_subalgebra_free(h);
        sp4_subalgebra_free(img);
    }
}

#[test]
fn json_functions_and_errors() {
    let json = CString::new(TN).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sp4_identify_json(json.as_ptr(), &mut out) }, Sp4Status::Sp4Ok);
    assert!(take(out).contains("s_{5,37}"));
    assert_eq!(
        unsafe { sp4_invariants_json(json.as_ptr(), &mut out) },
        Sp4Status::Sp4Ok
    );
    take(out);
    let x = CString::new(r#"[["0","0","1","0"],["0","0","0","0"],["0","0","0","0"],["0","0","0","0"]]"#).unwrap();
    assert_eq!(
        unsafe { sp4_classify_element_json(x.as_ptr(), &mut out) },
        Sp4Status::Sp4Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["row"], "X_alpha");
    assert_eq!(last_error(), "");
    let irr = CString::new(r#"[["0","0","0","0"],["0","0","0","1"],["0","0","0","0"],["0","-1","0","0"]]"#).unwrap();
    assert_eq!(
        unsafe { sp4_classify_element_json(irr.as_ptr(), &mut out) },
        Sp4Status::Sp4OutOfScope
    );
    assert!(last_error().contains("spectrum"));
    let broken = CString::new("{\"basis\": [").unwrap();
    assert_eq!(
        unsafe { sp4_identify_json(broken.as_ptr(), &mut out) },
        Sp4Status::Sp4ParseError
    );
    assert!(last_error().contains("line"));
    assert_eq!(
        unsafe { sp4_identify_json(ptr::null(), &mut out) },
        Sp4Status::Sp4NullPointer
    );
    assert_eq!(
        unsafe { sp4_identify_json(json.as_ptr(), ptr::null_mut()) },
        Sp4Status::Sp4NullPointer
    );
    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { sp4_identify_json(invalid.as_ptr().cast(), &mut out) },
        Sp4Status::Sp4InvalidUtf8
    );
    unsafe {
        sp4_string_free(ptr::null_mut());
        sp4_catalog_free(ptr::null_mut());
        sp4_subalgebra_free(ptr::null_mut());
    }
    assert_eq!(unsafe { sp4_catalog_len(ptr::null()) }, 0);
    let v = unsafe { CStr::from_ptr(sp4_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let header = format!("{dir}/include/sp4.h");
    let src = std::env::temp_dir().join(format!("sp4-header-{}.c", std::process::id()));
    std::fs::write(
        &src,
        "#include \"sp4.h\"\nint main(void) {\n  char *out = 0;\n  struct Sp4Catalog *c = sp4_catalog_load();\n  \
         enum Sp4Status s = sp4_catalog_to_json(c, &out);\n  sp4_string_free(out);\n  sp4_catalog_free(c);\n  \
         return s == SP4_OK ? 0 : 1;\n}\n",
    )
    .unwrap();
    assert!(std::path::Path::new(&header).exists());
    let Ok(status) = std::process::Command::new("cc")
        .args([
            "-std=c99",
            "-Wall",
            "-Werror",
            "-fsyntax-only",
            "-I",
            &format!("{dir}/include"),
        ])
        .arg(&src)
        .status()
    else {
        eprintln!("no C compiler available; header syntax check skipped");
        return;
    };
    assert!(status.success(), "generated header does not compile");
}
