use std::ffi::{CStr, CString};
use std::ptr;

use tonal_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = tonal_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn graph_handles() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            tonal_graph_parse(c("p 4\ne 0 1\ne 1 2\ne 2 3\n").as_ptr(), &mut g),
            TonalStatus::Ok
        );
        assert_eq!((tonal_graph_order(g), tonal_graph_edge_count(g)), (4, 3));
        let mut classes = 0;
        assert_eq!(tonal_graph_class_count(g, &mut classes), TonalStatus::Ok);
        assert_eq!(classes, 6);
        let mut sf = true;
        assert_eq!(tonal_graph_is_star_forest(g, &mut sf), TonalStatus::Ok);
        assert!(!sf);
        let mut w = ptr::null_mut();
        assert_eq!(tonal_graph_witness(g, &mut w), TonalStatus::Ok);
        assert!(!w.is_null());
        let mut s = ptr::null_mut();
        assert_eq!(tonal_pattern_write(w, &mut s), TonalStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "p 4\ne 0 1 R\ne 1 2 B\ne 2 3 R\n");
        tonal_string_free(s);
        tonal_pattern_free(w);
        tonal_graph_free(g);

        let mut k3 = ptr::null_mut();
        assert_eq!(tonal_graph_parse(c("Bw").as_ptr(), &mut k3), TonalStatus::Ok);
        assert_eq!(tonal_graph_edge_count(k3), 3);
        tonal_graph_free(k3);
    }
}

#[test]
fn errors_have_codes_and_messages() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            tonal_graph_parse(c("p 3\ne 0 1\ne 1 1\n").as_ptr(), &mut g),
            TonalStatus::Parse
        );
        assert!(g.is_null());
        assert!(last_error().contains("byte 10"));
        assert_eq!(tonal_graph_parse(ptr::null(), &mut g), TonalStatus::NullPointer);
        let mut h = ptr::null_mut();
        assert_eq!(tonal_host_canonical(5, &mut h), TonalStatus::Domain);
        let mut v = 0;
        assert_eq!(tonal_star_formula(3, 4, &mut v), TonalStatus::Domain);
        assert_eq!(tonal_star_formula(16, 4, &mut v), TonalStatus::Ok);
        assert_eq!(v, 29);
        assert!(tonal_last_error().is_null());
        assert_eq!(
            tonal_star_forest_bound(16, [2u64, 1].as_ptr(), 2, &mut v),
            TonalStatus::Ok
        );
        assert_eq!(v, 48);
        assert_eq!(
            tonal_star_forest_bound(10, [2u64, 1].as_ptr(), 2, &mut v),
            TonalStatus::Domain
        );
    }
}

#[test]
fn canonical_hosts_and_embeddings() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(tonal_host_canonical(21, &mut h), TonalStatus::Ok);
        assert_eq!(tonal_host_order(h), 21);
        assert_eq!((tonal_host_red_count(h), tonal_host_blue_count(h)), (105, 105));
        let (mut p4, mut k3) = (true, true);
        assert_eq!(tonal_host_obstructions(h, &mut p4, &mut k3), TonalStatus::Ok);
        assert!(!p4 && !k3);

        let mut rbr = ptr::null_mut();
        assert_eq!(
            tonal_pattern_parse(c("p 4\ne 0 1 R\ne 1 2 B\ne 2 3 R\n").as_ptr(), &mut rbr),
            TonalStatus::Ok
        );
        let mut map = [0u64; 4];
        let mut found = true;
        assert_eq!(
            tonal_find_embedding(h, rbr, map.as_mut_ptr(), 4, &mut found),
            TonalStatus::Ok
        );
        assert!(!found);

        let mut sf = ptr::null_mut();
        assert_eq!(
            tonal_pattern_parse(c("p 5\ne 0 1 R\ne 0 2 B\ne 3 4 B\n").as_ptr(), &mut sf),
            TonalStatus::Ok
        );
        let mut map = [u64::MAX; 5];
        assert_eq!(
            tonal_find_embedding(h, sf, map.as_mut_ptr(), 5, &mut found),
            TonalStatus::Ok
        );
        assert!(found);
        assert_eq!(tonal_star_forest_embed(h, sf, map.as_mut_ptr(), 5), TonalStatus::Ok);
        assert!(map.iter().all(|&v| v < 21));
        assert_eq!(
            tonal_star_forest_embed(h, sf, map.as_mut_ptr(), 3),
            TonalStatus::BufferTooSmall
        );

        let mut text = ptr::null_mut();
        assert_eq!(tonal_host_write(h, &mut text), TonalStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(tonal_host_parse(text, &mut again), TonalStatus::Ok);
        assert_eq!(tonal_host_red_count(again), 105);
        tonal_string_free(text);

        let mut eq = false;
        assert_eq!(tonal_pattern_equivalent(rbr, rbr, &mut eq), TonalStatus::Ok);
        assert!(eq);
        tonal_pattern_free(rbr);
        tonal_pattern_free(sf);
        tonal_host_free(h);
        tonal_host_free(again);
    }
}

#[test]
fn exact_search() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            tonal_graph_parse(c("p 4\ne 0 1\ne 1 2\ne 2 3\n").as_ptr(), &mut g),
            TonalStatus::Ok
        );
        let mut r = TonalExtremal::default();
        assert_eq!(
            tonal_extremal_exact(4, g, TONAL_LEVEL_CLASS, 1, false, &mut r),
            TonalStatus::Ok
        );
        assert_eq!((r.value, r.saturated, r.colourings), (3, true, 32));
        assert_eq!(
            tonal_extremal_exact(4, g, 9, 1, false, &mut r),
            TonalStatus::InvalidArgument
        );
        assert_eq!(
            tonal_extremal_exact(9, g, TONAL_LEVEL_TONE, 0, false, &mut r),
            TonalStatus::SizeLimit
        );
        tonal_graph_free(g);
    }
}

/// Compiles a small C program against the generated header and static library.
#[test]
fn header_compiles_and_links_from_c() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let manifest = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    // Integration tests live next to the library artifacts' parent directory.
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libtonal_ffi.a");
    if !lib.exists() {
        panic!("static library not built at {}", lib.display());
    }
    let out_dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let bin = out_dir.join("tonal_c_smoke");
    let status = std::process::Command::new(&cc)
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status();
    let status = match status {
        Ok(s) => s,
        Err(e) => panic!("could not run C compiler {cc:?}: {e}"),
    };
    assert!(status.success(), "C compilation failed");
    let out = std::process::Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "classes=6 value=29 rbr_p4=0 k3=0\n"
    );
}
