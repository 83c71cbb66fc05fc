use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use semigraphoid_ffi::*;

const M: &str = "2.3|14 1.4|23 1.2| 3.4|";

fn parse(text: &str, n: u32) -> Result<*mut SgStatementSet, (SgStatus, String)> {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { sg_statement_set_parse(c.as_ptr(), n, &mut out) };
    if st == SgStatus::Ok {
        Ok(out)
    } else {
        Err((st, last_error()))
    }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sg_last_error()) }.to_str().unwrap().to_string()
}

fn text_of(set: *const SgStatementSet) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sg_statement_set_to_text(set, &mut s) }, SgStatus::Ok);
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { sg_string_free(s) };
    out
}

#[test]
fn parse_and_query() {
    let m = parse(M, 0).unwrap();
    let (mut len, mut n, mut semi, mut sub) = (0usize, 0u32, false, true);
    unsafe {
        assert_eq!(sg_statement_set_len(m, &mut len), SgStatus::Ok);
        assert_eq!(sg_statement_set_ground(m, &mut n), SgStatus::Ok);
        assert_eq!(sg_is_semigraphoid(m, &mut semi), SgStatus::Ok);
        assert_eq!(sg_is_submodular(m, &mut sub), SgStatus::Ok);
    }
    assert_eq!((len, n, semi, sub), (4, 4, true, false));
    let back = parse(&text_of(m), 4).unwrap();
    assert_eq!(text_of(back), text_of(m));
    unsafe {
        sg_statement_set_free(back);
        sg_statement_set_free(m);
    }
}

#[test]
fn closure_is_idempotent_and_closed() {
    let s = parse("1.2| 1.3|2", 3).unwrap();
    let mut semi = true;
    unsafe { sg_is_semigraphoid(s, &mut semi) };
    assert!(!semi);
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { sg_closure(s, &mut c) }, SgStatus::Ok);
    unsafe { sg_is_semigraphoid(c, &mut semi) };
    assert!(semi);
    let mut cc = ptr::null_mut();
    unsafe { sg_closure(c, &mut cc) };
    assert_eq!(text_of(c), text_of(cc));
    // 1.2| and 1.3|2 give 1.23| and hence all four statements with 1 on one side.
    let mut len = 0;
    unsafe { sg_statement_set_len(c, &mut len) };
    assert_eq!(len, 4);
    unsafe {
        sg_statement_set_free(s);
        sg_statement_set_free(c);
        sg_statement_set_free(cc);
    }
}

#[test]
fn error_codes() {
    let (st, msg) = parse("1.2|\n 1.1|3", 0).unwrap_err();
    assert_eq!(st, SgStatus::ParseError);
    assert!(msg.contains("line 2, column 2"), "{msg}");
    assert_eq!(parse("1.2|5", 4).unwrap_err().0, SgStatus::ParseError);

    let bad = [0xffu8, 0];
    let mut out = ptr::null_mut();
    let st = unsafe { sg_statement_set_parse(bad.as_ptr().cast(), 0, &mut out) };
    assert_eq!(st, SgStatus::InvalidUtf8);

    let st = unsafe { sg_statement_set_parse(ptr::null(), 0, &mut out) };
    assert_eq!(st, SgStatus::NullPointer);
    assert_eq!(last_error(), "text is null");

    let mut b = false;
    assert_eq!(unsafe { sg_is_semigraphoid(ptr::null(), &mut b) }, SgStatus::NullPointer);

    let s = parse("1.2| 1.3|2", 3).unwrap();
    assert_eq!(unsafe { sg_is_submodular(s, &mut b) }, SgStatus::NotSemigraphoid);
    assert_eq!(unsafe { sg_is_coarsest(s, &mut b) }, SgStatus::NotSemigraphoid);
    unsafe { sg_statement_set_free(s) };

    let mut g = 0usize;
    assert_eq!(unsafe { sg_gamma(1, &mut g) }, SgStatus::InvalidArgument);
    unsafe {
        sg_statement_set_free(ptr::null_mut());
        sg_string_free(ptr::null_mut());
    }
}

#[test]
fn gamma_values() {
    // n choose 2 pairs times 2^(n-2) conditioning sets.
    for (n, want) in [(2u32, 1usize), (3, 6), (4, 24), (5, 80), (6, 240)] {
        let mut g = 0;
        assert_eq!(unsafe { sg_gamma(n, &mut g) }, SgStatus::Ok);
        assert_eq!(g, want);
    }
}

#[test]
fn verify_report_matches_library() {
    let mut passed = true;
    let mut rep = ptr::null_mut();
    assert_eq!(unsafe { sg_verify_fixtures(false, &mut passed, &mut rep) }, SgStatus::Ok);
    let text = unsafe { CStr::from_ptr(rep) }.to_str().unwrap().to_string();
    unsafe { sg_string_free(rep) };
    let lib = semigraphoid::verify::verify_all(&semigraphoid::fixtures::FixtureSet::embedded(), false);
    assert_eq!(passed, lib.passed());
    assert_eq!(text, lib.to_string());
    assert_eq!(unsafe { sg_verify_fixtures(false, &mut passed, ptr::null_mut()) }, SgStatus::Ok);
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/semigraphoid.h")
}

#[test]
fn header_declares_every_export() {
    let h = std::fs::read_to_string(header()).unwrap();
    let src = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|s| s.split('(').next().unwrap())
        .collect();
    assert_eq!(exports.len(), 13);
    for f in exports {
        assert!(
            h.contains(&format!(" {f}(")) || h.contains(&format!("*{f}(")),
            "{f} missing from header"
        );
    }
    assert!(h.contains("typedef struct SgStatementSet SgStatementSet;"));
}

/// Compiles and runs a small C client against the static library.
#[test]
fn c_client_links_and_runs() {
    let lib_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../target/debug");
    let lib = lib_dir.join("libsemigraphoid_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "semigraphoid.h"
int main(void) {
    SgStatementSet *m = NULL;
    bool sub = true, semi = false;
    if (sg_statement_set_parse("2.3|14 1.4|23 1.2| 3.4|", 0, &m) != SG_STATUS_OK) return 1;
    if (sg_is_semigraphoid(m, &semi) != SG_STATUS_OK || !semi) return 2;
    if (sg_is_submodular(m, &sub) != SG_STATUS_OK || sub) return 3;
    sg_statement_set_free(m);
    if (sg_statement_set_parse("1.x|", 0, &m) != SG_STATUS_PARSE_ERROR) return 4;
    printf("%s\n", sg_last_error());
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("client");
    let st = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(st.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).contains("parse error"));
}
