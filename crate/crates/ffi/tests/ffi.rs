use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use cellkernel_ffi::*;

fn last_error() -> String {
    let p = ck_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    ck_string_free(p);
    s
}

fn instance(n: u32, r: u32, half: bool, ring: &str) -> *mut CkInstance {
    let ring = CString::new(ring).unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { ck_instance_new(n, r, half, ring.as_ptr(), &mut out) };
    assert_eq!(st, CkStatus::Ok);
    out
}

#[test]
fn kernel_ranks_through_the_abi() {
    for (n, r, half, ring, want) in
        [(3, 1, false, "Z", 1), (4, 1, false, "Fp:2", 14), (6, 2, true, "Q", 42), (3, 2, false, "Q", 0)]
    {
        let inst = instance(n, r, half, ring);
        let mut rank = u64::MAX;
        assert_eq!(unsafe { ck_kernel_rank(inst, &mut rank) }, CkStatus::Ok);
        assert_eq!(rank, want, "n={n} r={r} half={half} ring={ring}");
        unsafe { ck_instance_free(inst) };
    }
}

#[test]
fn kernel_json_and_checks() {
    let inst = instance(3, 1, false, "Z");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ck_kernel_json(inst, &mut s) }, CkStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&unsafe { take_string(s) }).unwrap();
    assert_eq!(v["rank"], 1);
    assert_eq!(v["basis"][0]["terms"].as_array().unwrap().len(), 6);

    let name = CString::new("kernel_cell_ideal").unwrap();
    assert_eq!(unsafe { ck_run_check(name.as_ptr(), inst, &mut s) }, CkStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(&unsafe { take_string(s) }).unwrap();
    assert_eq!(report["pass"], true);

    let bad = CString::new("no_such_check").unwrap();
    assert_eq!(unsafe { ck_run_check(bad.as_ptr(), inst, &mut s) }, CkStatus::InvalidArgument);
    assert!(last_error().contains("no_such_check"));
    unsafe { ck_instance_free(inst) };
}

#[test]
fn error_codes() {
    let mut out = ptr::null_mut();
    let ring = CString::new("F4").unwrap();
    assert_eq!(unsafe { ck_instance_new(3, 1, false, ring.as_ptr(), &mut out) }, CkStatus::Ring);
    let ring = CString::new("R").unwrap();
    assert_eq!(unsafe { ck_instance_new(3, 1, false, ring.as_ptr(), &mut out) }, CkStatus::Parse);
    let ring = CString::new("Z").unwrap();
    assert_eq!(unsafe { ck_instance_new(3, 0, false, ring.as_ptr(), &mut out) }, CkStatus::InvalidArgument);
    assert_eq!(unsafe { ck_instance_new(3, 1, false, ptr::null(), &mut out) }, CkStatus::NullPointer);
    assert_eq!(unsafe { ck_instance_new(3, 1, false, ring.as_ptr(), ptr::null_mut()) }, CkStatus::NullPointer);
    let mut rank = 0;
    assert_eq!(unsafe { ck_kernel_rank(ptr::null(), &mut rank) }, CkStatus::NullPointer);

    // commutant-style checks need a field
    let inst = instance(3, 1, false, "Z");
    let name = CString::new("schur_weyl").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ck_run_check(name.as_ptr(), inst, &mut s) }, CkStatus::Ring);
    unsafe { ck_instance_free(inst) };

    // over the size guard: Sym_9 is larger than the default limit
    let inst = instance(9, 1, false, "Q");
    assert_eq!(unsafe { ck_kernel_rank(inst, &mut rank) }, CkStatus::SizeGuard);
    unsafe { ck_instance_free(inst) };
}

#[test]
fn diagrams_through_the_abi() {
    let parse = |s: &str| {
        let c = CString::new(s).unwrap();
        let mut d = ptr::null_mut();
        assert_eq!(unsafe { ck_diagram_parse(c.as_ptr(), &mut d) }, CkStatus::Ok);
        d
    };
    let x = parse("1|2,3,3'|4,1'|5,5'|2'|4'");
    let y = parse("1,3,3',4'|2,1'|5,2',5'|4");
    let (mut m, mut z) = (0u32, ptr::null_mut());
    assert_eq!(unsafe { ck_diagram_mul(x, y, &mut m, &mut z) }, CkStatus::Ok);
    assert_eq!(m, 1);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ck_diagram_to_string(z, &mut s) }, CkStatus::Ok);
    assert_eq!(unsafe { take_string(s) }, "1|2,3,4,3',4'|5,2',5'|1'");

    let small = parse("1|1'");
    assert_eq!(unsafe { ck_diagram_mul(x, small, &mut m, &mut z) }, CkStatus::Mismatch);
    let bad = CString::new("1|9'|").unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { ck_diagram_parse(bad.as_ptr(), &mut d) }, CkStatus::Parse);
    unsafe {
        ck_diagram_free(x);
        ck_diagram_free(y);
        ck_diagram_free(small);
        ck_diagram_free(ptr::null_mut());
        ck_string_free(ptr::null_mut());
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(ck_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

/// Compiles and runs a C program against the generated header and the
/// static library, when a C compiler is available.
#[test]
fn c_program_links_against_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    let header = std::fs::read_to_string(header_dir.join("cellkernel.h")).unwrap();
    for f in
        ["ck_instance_new", "ck_kernel_rank", "ck_run_check", "ck_diagram_mul", "ck_last_error", "CK_STATUS_SIZE_GUARD"]
    {
        assert!(header.contains(f), "header lacks {f}");
    }
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().and_then(|p| p.parent()).unwrap().to_path_buf();
    let staticlib = lib_dir.join("libcellkernel_ffi.a");
    if !staticlib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping C link test: no static library or C compiler");
        return;
    }
    let dir = std::env::temp_dir().join(format!("cellkernel-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "cellkernel.h"
int main(void) {
    CkInstance *inst = NULL;
    uint64_t rank = 0;
    if (ck_instance_new(5, 2, false, "Z", &inst) != CK_STATUS_OK) return 1;
    if (ck_kernel_rank(inst, &rank) != CK_STATUS_OK) return 2;
    ck_instance_free(inst);
    if (ck_instance_new(5, 2, false, "F4", &inst) != CK_STATUS_RING) return 3;
    printf("%llu %s\n", (unsigned long long)rank, ck_last_error() ? "err" : "none");
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(&staticlib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "42 err\n");
    let _ = std::fs::remove_dir_all(&dir);
}
