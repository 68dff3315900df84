//! C interface to the `tonal` library.
//!
//! Objects are opaque heap handles created by `*_parse`/`*_new` functions and
//! released with the matching `*_free`. Every fallible call returns a
//! [`TonalStatus`]; on failure a message is available from
//! [`tonal_last_error`] until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tonal::embed::CoverageLevel;
use tonal::extremal::{extremal_exact, SearchOptions};
use tonal::{format, patterns, CanonicalSize, ColouredHost, Error, Graph, PatternColouring};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TonalStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    SizeLimit = 4,
    Domain = 5,
    Incomplete = 6,
    BufferTooSmall = 7,
    Internal = 8,
}

/// An uncoloured graph.
pub struct TonalGraph(Graph);

/// A graph with every edge coloured red or blue.
pub struct TonalPattern(PatternColouring);

/// A 2-coloured complete graph.
pub struct TonalHost(ColouredHost);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct TonalExtremal {
    /// Largest min{|R|,|B|} over colourings that fail coverage.
    pub value: u64,
    pub saturated: bool,
    /// Blue-edge mask of the first witness, edges in lexicographic order.
    pub witness_index: u64,
    pub colourings: u64,
}

/// Coverage levels for [`tonal_extremal_exact`].
pub const TONAL_LEVEL_TONE: u32 = 0;
pub const TONAL_LEVEL_CLASS: u32 = 1;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: TonalStatus, msg: impl Into<String>) -> TonalStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> TonalStatus {
    let status = match e {
        Error::InvalidArgument(_) => TonalStatus::InvalidArgument,
        Error::Parse { .. } => TonalStatus::Parse,
        Error::SizeLimit { .. } => TonalStatus::SizeLimit,
        Error::Domain(_) => TonalStatus::Domain,
        Error::Incomplete => TonalStatus::Incomplete,
        Error::Internal(_) => TonalStatus::Internal,
    };
    fail(status, e.to_string())
}

/// Runs `f`, converting library errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), TonalStatus>) -> TonalStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TonalStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(TonalStatus::Internal, "panic inside tonal"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, TonalStatus>;
}

impl<T> OrStatus<T> for tonal::Result<T> {
    fn or_status(self) -> Result<T, TonalStatus> {
        self.map_err(from_error)
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, TonalStatus> {
    if s.is_null() {
        return Err(fail(TonalStatus::NullPointer, "text pointer is null"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| fail(TonalStatus::Parse, format!("input is not UTF-8: {e}")))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, TonalStatus> {
    p.as_ref()
        .ok_or_else(|| fail(TonalStatus::NullPointer, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), TonalStatus> {
    if out.is_null() {
        return Err(fail(TonalStatus::NullPointer, "output pointer is null"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_map(map: &[usize], out: *mut u64, capacity: usize) -> Result<(), TonalStatus> {
    if map.len() > capacity {
        return Err(fail(
            TonalStatus::BufferTooSmall,
            format!("map needs {} slots, buffer has {capacity}", map.len()),
        ));
    }
    if !map.is_empty() && out.is_null() {
        return Err(fail(TonalStatus::NullPointer, "map buffer is null"));
    }
    for (i, &v) in map.iter().enumerate() {
        out.add(i).write(v as u64);
    }
    Ok(())
}

/// Message for the last failed call on this thread, or null. Owned by the
/// library; valid until the next call.
#[no_mangle]
pub extern "C" fn tonal_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tonal_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------- graphs

/// Parses an edge list or graph6 string.
///
/// # Safety
/// `input` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tonal_graph_parse(input: *const c_char, out: *mut *mut TonalGraph) -> TonalStatus {
    guard(|| {
        let g = format::parse_graph(text(input)?).or_status()?;
        put(out, Box::into_raw(Box::new(TonalGraph(g))))
    })
}

/// # Safety
/// `g` must come from [`tonal_graph_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tonal_graph_free(g: *mut TonalGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tonal_graph_order(g: *const TonalGraph) -> u64 {
    g.as_ref().map_or(0, |g| g.0.order() as u64)
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tonal_graph_edge_count(g: *const TonalGraph) -> u64 {
    g.as_ref().map_or(0, |g| g.0.edge_count() as u64)
}

/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tonal_graph_is_star_forest(g: *const TonalGraph, out: *mut bool) -> TonalStatus {
    guard(|| put(out, patterns::is_star_forest(&get(g, "graph")?.0)))
}

/// Number of colourings of `g` up to automorphism.
///
/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tonal_graph_class_count(g: *const TonalGraph, out: *mut u64) -> TonalStatus {
    guard(|| {
        let classes = patterns::enumerate_pattern_classes(&get(g, "graph")?.0).or_status()?;
        put(out, classes.len() as u64)
    })
}

/// Builds the colouring that blocks `g` from canonical hosts. Writes null
/// when `g` is a star forest.
///
/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tonal_graph_witness(g: *const TonalGraph, out: *mut *mut TonalPattern) -> TonalStatus {
    guard(|| {
        let w = patterns::witness_pattern(&get(g, "graph")?.0).or_status()?;
        put(
            out,
            w.map_or(ptr::null_mut(), |w| Box::into_raw(Box::new(TonalPattern(w)))),
        )
    })
}

// ---------------------------------------------------------------- patterns

/// Parses a coloured edge list.
///
/// # Safety
/// `input` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tonal_pattern_parse(input: *const c_char, out: *mut *mut TonalPattern) -> TonalStatus {
    guard(|| {
        let p = format::parse_coloured(text(input)?).or_status()?;
        put(out, Box::into_raw(Box::new(TonalPattern(p))))
    })
}

/// # Safety
/// `p` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tonal_pattern_free(p: *mut TonalPattern) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tonal_pattern_order(p: *const TonalPattern) -> u64 {
    p.as_ref().map_or(0, |p| p.0.order() as u64)
}

/// # Safety
/// `a`, `b` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tonal_pattern_equivalent(
    a: *const TonalPattern,
    b: *const TonalPattern,
    out: *mut bool,
) -> TonalStatus {
    guard(|| {
        let eq = patterns::patterns_equivalent(&get(a, "pattern")?.0, &get(b, "pattern")?.0).or_status()?;
        put(out, eq)
    })
}

/// Serializes a pattern as a coloured edge list. Free with [`tonal_string_free`].
///
/// # Safety
/// `p` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tonal_pattern_write(p: *const TonalPattern, out: *mut *mut c_char) -> TonalStatus {
    guard(|| {
        let s = CString::new(format::write_coloured(&get(p, "pattern")?.0)).expect("edge lists have no nul");
        put(out, s.into_raw())
    })
}

// ---------------------------------------------------------------- hosts

/// Parses a coloured edge list that colours every pair.
///
/// # Safety
/// `input` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tonal_host_parse(input: *const c_char, out: *mut *mut TonalHost) -> TonalStatus {
    guard(|| {
        let h = format::parse_host(text(input)?).or_status()?;
        put(out, Box::into_raw(Box::new(TonalHost(h))))
    })
}

/// The balanced red-clique colouring of K_n; fails with `Domain` when none exists.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tonal_host_canonical(n: u64, out: *mut *mut TonalHost) -> TonalStatus {
    guard(|| {
        let size = CanonicalSize::for_order(n).ok_or_else(|| {
            fail(
                TonalStatus::Domain,
                format!("K_{n} has no balanced red-clique colouring"),
            )
        })?;
        let h = tonal::canonical_colouring(size).or_status()?;
        put(out, Box::into_raw(Box::new(TonalHost(h))))
    })
}

/// # Safety
/// `h` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tonal_host_free(h: *mut TonalHost) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tonal_host_order(h: *const TonalHost) -> u64 {
    h.as_ref().map_or(0, |h| h.0.order() as u64)
}

/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tonal_host_red_count(h: *const TonalHost) -> u64 {
    h.as_ref().map_or(0, |h| h.0.red_count() as u64)
}

/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tonal_host_blue_count(h: *const TonalHost) -> u64 {
    h.as_ref().map_or(0, |h| h.0.blue_count() as u64)
}

/// Serializes a host as a coloured edge list. Free with [`tonal_string_free`].
///
/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tonal_host_write(h: *const TonalHost, out: *mut *mut c_char) -> TonalStatus {
    guard(|| {
        let s = CString::new(format::write_host(&get(h, "host")?.0)).expect("edge lists have no nul");
        put(out, s.into_raw())
    })
}

/// Reports whether the host contains a red-blue-red P4 and a triangle with
/// two red edges and one blue.
///
/// # Safety
/// `h` must be a live handle; both outputs writable.
#[no_mangle]
pub unsafe extern "C" fn tonal_host_obstructions(
    h: *const TonalHost,
    rbr_p4: *mut bool,
    k3_two_one: *mut bool,
) -> TonalStatus {
    guard(|| {
        let rep = tonal::verify_obstructions(&get(h, "host")?.0);
        put(rbr_p4, rep.rbr_p4_found())?;
        put(k3_two_one, rep.k3_two_one_found())
    })
}

// ---------------------------------------------------------------- search

/// Searches for a colour-preserving copy of `p` in `h`. On success writes
/// `found`, and when found, `map[i]` = host vertex of pattern vertex `i`.
///
/// # Safety
/// Handles must be live; `map` must hold `capacity` entries; `found` writable.
#[no_mangle]
pub unsafe extern "C" fn tonal_find_embedding(
    h: *const TonalHost,
    p: *const TonalPattern,
    map: *mut u64,
    capacity: usize,
    found: *mut bool,
) -> TonalStatus {
    guard(|| {
        let e = tonal::find_embedding(&get(h, "host")?.0, &get(p, "pattern")?.0).or_status()?;
        if let Some(e) = &e {
            put_map(e.map(), map, capacity)?;
        }
        put(found, e.is_some())
    })
}

/// Greedy embedding of a coloured star forest; fails with `Domain` when the
/// host is too small or too unbalanced for the guarantee.
///
/// # Safety
/// Handles must be live; `map` must hold `capacity` entries.
#[no_mangle]
pub unsafe extern "C" fn tonal_star_forest_embed(
    h: *const TonalHost,
    p: *const TonalPattern,
    map: *mut u64,
    capacity: usize,
) -> TonalStatus {
    guard(|| {
        let e = tonal::greedy_star_forest_embed(&get(h, "host")?.0, &get(p, "pattern")?.0).or_status()?;
        put_map(e.map(), map, capacity)
    })
}

/// Closed form for stars K_{1,k}.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tonal_star_formula(n: u64, k: u64, out: *mut u64) -> TonalStatus {
    guard(|| put(out, tonal::ot_star_formula(n, k).or_status()?))
}

/// Upper bound for the star forest with star sizes `parts[0..len]`.
///
/// # Safety
/// `parts` must hold `len` entries; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tonal_star_forest_bound(n: u64, parts: *const u64, len: usize, out: *mut u64) -> TonalStatus {
    guard(|| {
        if parts.is_null() && len > 0 {
            return Err(fail(TonalStatus::NullPointer, "parts is null"));
        }
        let parts = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(parts, len)
        };
        put(out, tonal::tot_star_forest_bound(n, parts).or_status()?)
    })
}

/// Exhaustive threshold search over all colourings of K_n.
/// `level` is [`TONAL_LEVEL_TONE`] or [`TONAL_LEVEL_CLASS`]; `workers` = 0
/// uses every core. Hosts with more than 30 edges need `force`.
///
/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tonal_extremal_exact(
    n: u64,
    g: *const TonalGraph,
    level: u32,
    workers: u32,
    force: bool,
    out: *mut TonalExtremal,
) -> TonalStatus {
    guard(|| {
        let level = match level {
            TONAL_LEVEL_TONE => CoverageLevel::Tone,
            TONAL_LEVEL_CLASS => CoverageLevel::Class,
            other => return Err(fail(TonalStatus::InvalidArgument, format!("unknown level {other}"))),
        };
        let n = usize::try_from(n).map_err(|_| fail(TonalStatus::SizeLimit, "n too large"))?;
        let mut opts = SearchOptions {
            force,
            ..SearchOptions::default()
        };
        if workers > 0 {
            opts.workers = workers as usize;
        }
        let r = extremal_exact(n, &get(g, "graph")?.0, level, &opts).or_status()?;
        put(
            out,
            TonalExtremal {
                value: r.value as u64,
                saturated: r.saturated,
                witness_index: r.witness_index,
                colourings: r.colourings,
            },
        )
    })
}
