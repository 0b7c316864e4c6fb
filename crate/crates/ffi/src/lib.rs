//! C ABI over `anyon_mcg`.
//!
//! Models and circuits are opaque heap handles released with their `_free`
//! function. Every fallible call returns an [`AmcgStatus`]; on failure the
//! message is available from [`amcg_last_error`] on the same thread.
//! Matrices are written row-major as interleaved `(re, im)` doubles.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use anyon_mcg::dense::DEFAULT_DENSE_BOUND;
use anyon_mcg::fib::fib_verdict;
use anyon_mcg::mcg::{humphries_gate, humphries_indices, GateOptions};
use anyon_mcg::model::AbelianAnyonModel;
use anyon_mcg::model_file::parse_model;
use anyon_mcg::pauli::is_clifford;
use anyon_mcg::sim::{compare, dense_simulate, stabilizer_simulate, Circuit};
use anyon_mcg::Error;

const DEFAULT_TOL: f64 = 1e-9;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmcgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    NonModular = 4,
    BoundExceeded = 5,
    NotNormalizer = 6,
    BufferTooSmall = 7,
    TheoremViolated = 8,
    Internal = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmcgBackend {
    Stabilizer = 0,
    Dense = 1,
}

/// Opaque model handle.
pub struct AmcgModel {
    inner: Arc<AbelianAnyonModel>,
}

/// Opaque circuit handle.
pub struct AmcgCircuit {
    inner: Circuit,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> AmcgStatus {
    match e {
        Error::Parse { .. } | Error::InvalidRational(_) | Error::ZeroDenominator => AmcgStatus::Parse,
        Error::NonModular(_) => AmcgStatus::NonModular,
        Error::DenseBoundExceeded { .. } | Error::EnumerationTooLarge { .. } => AmcgStatus::BoundExceeded,
        Error::NotNormalizer(_) => AmcgStatus::NotNormalizer,
        Error::TheoremViolated(_) => AmcgStatus::TheoremViolated,
        Error::Internal(_) | Error::NonUnitary { .. } | Error::Io(_) => AmcgStatus::Internal,
        _ => AmcgStatus::InvalidArgument,
    }
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<(), AmcgStatus>) -> AmcgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AmcgStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside anyon_mcg".into());
            AmcgStatus::Panic
        }
    }
}

fn fail(e: Error) -> AmcgStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

fn null(what: &str) -> AmcgStatus {
    set_error(format!("`{what}` is null"));
    AmcgStatus::NullPointer
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, AmcgStatus> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("`{what}` is not UTF-8"));
        AmcgStatus::InvalidArgument
    })
}

unsafe fn model_ref<'a>(m: *const AmcgModel) -> Result<&'a AmcgModel, AmcgStatus> {
    m.as_ref().ok_or_else(|| null("model"))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), AmcgStatus> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), AmcgStatus> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = value;
    Ok(())
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn amcg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn amcg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builtin model by name: `semion`, `z3`, `z4`, `toric` or `trivial`.
///
/// # Safety
/// `name` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn amcg_model_builtin(name: *const c_char, out: *mut *mut AmcgModel) -> AmcgStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        let m = AbelianAnyonModel::builtin(name).map_err(fail)?;
        store(out, AmcgModel { inner: Arc::new(m) })
    })
}

/// `Z/n` with `q(x) = p·x²/(2n)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn amcg_model_cyclic(n: u32, p: i64, out: *mut *mut AmcgModel) -> AmcgStatus {
    guard(|| {
        let m = AbelianAnyonModel::cyclic(n, p).map_err(fail)?;
        store(out, AmcgModel { inner: Arc::new(m) })
    })
}

/// Model from the text of a YAML model-spec file.
///
/// # Safety
/// `spec` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn amcg_model_from_spec(spec: *const c_char, out: *mut *mut AmcgModel) -> AmcgStatus {
    guard(|| {
        let text = str_arg(spec, "spec")?;
        let m = parse_model(text).map_err(fail)?;
        store(out, AmcgModel { inner: Arc::new(m) })
    })
}

/// # Safety
/// `model` must come from an `amcg_model_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn amcg_model_free(model: *mut AmcgModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn amcg_model_order(model: *const AmcgModel, out: *mut usize) -> AmcgStatus {
    guard(|| write(out, model_ref(model)?.inner.order()))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn amcg_model_is_modular(model: *const AmcgModel, out: *mut bool) -> AmcgStatus {
    guard(|| write(out, model_ref(model)?.inner.is_modular()))
}

/// Gauss-sum anchor phase `Σ θ_a⁻¹ / √|G|`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn amcg_model_anchor_phase(model: *const AmcgModel, re: *mut f64, im: *mut f64) -> AmcgStatus {
    guard(|| {
        let z = model_ref(model)?.inner.anchor_phase().map_err(fail)?;
        write(re, z.re)?;
        write(im, z.im)
    })
}

/// Dimension `|G|^genus` of the image of Humphries twist `k`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn amcg_gate_dim(model: *const AmcgModel, genus: usize, k: usize, out: *mut usize) -> AmcgStatus {
    guard(|| {
        let m = model_ref(model)?;
        humphries_gate(genus, k).map_err(fail)?;
        let spec = m.inner.group().power(genus).map_err(fail)?;
        write(out, spec.order() as usize)
    })
}

/// Writes the image of Humphries twist `k` into `buf`, which must hold
/// `2·dim²` doubles.
///
/// # Safety
/// `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn amcg_gate_matrix(
    model: *const AmcgModel,
    genus: usize,
    k: usize,
    buf: *mut f64,
    len: usize,
) -> AmcgStatus {
    guard(|| {
        let m = model_ref(model)?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let gate = humphries_gate(genus, k).map_err(fail)?;
        let u = gate.dense(&m.inner, &GateOptions::default()).map_err(fail)?;
        let need = 2 * u.dim() * u.dim();
        if len < need {
            set_error(format!("buffer holds {len} doubles, need {need}"));
            return Err(AmcgStatus::BufferTooSmall);
        }
        let out = std::slice::from_raw_parts_mut(buf, need);
        for (i, v) in u.data().iter().enumerate() {
            out[2 * i] = v.re;
            out[2 * i + 1] = v.im;
        }
        Ok(())
    })
}

/// Whether every Humphries image at `genus` is a Clifford operator.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn amcg_clifford_check(model: *const AmcgModel, genus: usize, out: *mut bool) -> AmcgStatus {
    guard(|| {
        let m = &model_ref(model)?.inner;
        m.require_modular().map_err(fail)?;
        let spec = m.group().power(genus).map_err(fail)?;
        let mut all = true;
        for k in humphries_indices(genus) {
            let u = humphries_gate(genus, k).and_then(|g| g.dense(m, &GateOptions::default())).map_err(fail)?;
            all &= is_clifford(&u, &spec, DEFAULT_TOL).map_err(fail)?.is_some();
        }
        write(out, all)
    })
}

/// New empty circuit on `|init⟩`; `init` holds `genus · (number of factors)`
/// coordinates, or is null for `|0…0⟩`.
///
/// # Safety
/// `init` must point to `init_len` values when non-null; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn amcg_circuit_new(
    model: *const AmcgModel,
    genus: usize,
    init: *const u32,
    init_len: usize,
    out: *mut *mut AmcgCircuit,
) -> AmcgStatus {
    guard(|| {
        let m = model_ref(model)?.inner.clone();
        let c = if init.is_null() {
            Circuit::zero_state(m, genus).map_err(fail)?
        } else {
            let coords: Vec<i64> = std::slice::from_raw_parts(init, init_len).iter().map(|&v| v as i64).collect();
            let spec = m.group().power(genus).map_err(fail)?;
            if coords.len() != spec.num_factors() {
                return Err(fail(Error::DimensionMismatch { expected: spec.num_factors(), got: coords.len() }));
            }
            let a = spec.element(&coords).map_err(fail)?;
            Circuit::new(m, genus, a).map_err(fail)?
        };
        store(out, AmcgCircuit { inner: c })
    })
}

/// Appends the Humphries twist `T_k`.
///
/// # Safety
/// `circuit` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn amcg_circuit_push_twist(circuit: *mut AmcgCircuit, k: usize) -> AmcgStatus {
    guard(|| {
        let c = circuit.as_mut().ok_or_else(|| null("circuit"))?;
        c.inner.push_twist(k).map_err(fail)
    })
}

/// Number of Fourier-type twists in the circuit.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn amcg_circuit_qft_count(circuit: *const AmcgCircuit, out: *mut usize) -> AmcgStatus {
    guard(|| write(out, circuit.as_ref().ok_or_else(|| null("circuit"))?.inner.qft_count()))
}

/// Outcome probabilities in lexicographic order of `G^g`; `probs` must hold
/// `|G|^g` doubles.
///
/// # Safety
/// `probs` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn amcg_circuit_simulate(
    circuit: *const AmcgCircuit,
    backend: AmcgBackend,
    probs: *mut f64,
    len: usize,
) -> AmcgStatus {
    guard(|| {
        let c = &circuit.as_ref().ok_or_else(|| null("circuit"))?.inner;
        if probs.is_null() {
            return Err(null("probs"));
        }
        let d = match backend {
            AmcgBackend::Stabilizer => stabilizer_simulate(c, DEFAULT_DENSE_BOUND),
            AmcgBackend::Dense => dense_simulate(c, DEFAULT_DENSE_BOUND),
        }
        .map_err(fail)?;
        let p = d.probs();
        if len < p.len() {
            set_error(format!("buffer holds {len} doubles, need {}", p.len()));
            return Err(AmcgStatus::BufferTooSmall);
        }
        std::slice::from_raw_parts_mut(probs, p.len()).copy_from_slice(p);
        Ok(())
    })
}

/// Total-variation distance between the stabilizer and dense backends.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn amcg_circuit_compare(circuit: *const AmcgCircuit, out: *mut f64) -> AmcgStatus {
    guard(|| {
        let c = &circuit.as_ref().ok_or_else(|| null("circuit"))?.inner;
        write(out, compare(c, DEFAULT_DENSE_BOUND).map_err(fail)?)
    })
}

/// # Safety
/// `circuit` must come from [`amcg_circuit_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn amcg_circuit_free(circuit: *mut AmcgCircuit) {
    if !circuit.is_null() {
        drop(Box::from_raw(circuit));
    }
}

/// Minimum projective distance between the basis-normalized Fibonacci `S`
/// and the 24 one-qubit Clifford classes.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn amcg_fib_min_distance(out: *mut f64) -> AmcgStatus {
    guard(|| {
        let v = fib_verdict().map_err(fail)?;
        if v.match_found {
            return Err(fail(Error::TheoremViolated("normalized S is projectively Clifford".into())));
        }
        write(out, v.min_distance)
    })
}
