//! C ABI over `morlab`.
//!
//! Keys and ciphertexts cross the boundary as opaque heap handles released
//! with the matching `*_free` function. Every entry point returns a
//! [`MorlabStatus`]; on failure the thread-local
//! [`morlab_last_error_message`] describes what went wrong. Panics never
//! unwind into C: they are reported as `MORLAB_STATUS_INTERNAL`.
//!
//! Strings handed out by the library are NUL-terminated and must be released
//! with [`morlab_string_free`].
//!
//! Null pointers are detected and reported as `MORLAB_STATUS_NULL_ARG`. Any
//! other pointer argument must come from this library (or, for buffers, be
//! valid for the stated length); that part cannot be checked.
#![allow(clippy::not_unsafe_ptr_arg_deref)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use morlab::aut::Platform;
use morlab::cli::{parse_artifact, write_artifact, Artifact};
use morlab::cryptanalysis::central_aut_attack;
use morlab::protocol::{
    decode_message, encode_message, mor_decrypt, mor_encrypt, mor_keygen, MorCiphertext,
    MorPrivateKey, MorPublicKey,
};
use morlab::rng::seeded;
use morlab::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorlabStatus {
    Ok = 0,
    NullArg = 1,
    InvalidArg = 2,
    Format = 3,
    Invariant = 4,
    NoSolution = 5,
    CapExceeded = 6,
    BufferTooSmall = 7,
    Internal = 8,
}

impl From<&Error> for MorlabStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Format(_) | Error::Version(_) => MorlabStatus::Format,
            Error::InvalidAutomorphism(_) | Error::Inconsistent(_) | Error::SingularMatrix => {
                MorlabStatus::Invariant
            }
            Error::NoSolution(_) | Error::NotCentral(_) => MorlabStatus::NoSolution,
            Error::CapExceeded(_) => MorlabStatus::CapExceeded,
            Error::Internal(_) | Error::Io(_) => MorlabStatus::Internal,
            _ => MorlabStatus::InvalidArg,
        }
    }
}

pub struct MorlabPublicKey(MorPublicKey);
pub struct MorlabPrivateKey(MorPrivateKey);
pub struct MorlabCiphertext(MorCiphertext);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

struct Failure(MorlabStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(MorlabStatus::from(&e), e.to_string())
    }
}

fn null(name: &str) -> Failure {
    Failure(MorlabStatus::NullArg, format!("{name} is null"))
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> MorlabStatus {
    let outcome = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| {
        Err(Failure(
            MorlabStatus::Internal,
            "panic inside morlab".into(),
        ))
    });
    match outcome {
        Ok(()) => {
            set_last_error("");
            MorlabStatus::Ok
        }
        Err(Failure(status, message)) => {
            set_last_error(&message);
            status
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(name))
}

unsafe fn out<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(name))
}

unsafe fn bytes<'a>(data: *const u8, len: usize) -> Result<&'a [u8], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null("message"));
    }
    Ok(slice::from_raw_parts(data, len))
}

unsafe fn text(input: *const c_char) -> Result<String, Failure> {
    if input.is_null() {
        return Err(null("text"));
    }
    CStr::from_ptr(input)
        .to_str()
        .map(str::to_owned)
        .map_err(|_| Failure(MorlabStatus::Format, "text is not UTF-8".into()))
}

fn export(s: String) -> *mut c_char {
    CString::new(s)
        .expect("artifacts contain no NUL")
        .into_raw()
}

fn keygen(
    platform: Result<Platform, Error>,
    seed: u64,
    out_public: *mut *mut MorlabPublicKey,
    out_private: *mut *mut MorlabPrivateKey,
) -> MorlabStatus {
    guard(|| {
        let out_public = unsafe { out(out_public, "out_public")? };
        let out_private = unsafe { out(out_private, "out_private")? };
        let (public, private) = mor_keygen(platform?, &mut seeded(seed))?;
        *out_public = Box::into_raw(Box::new(MorlabPublicKey(public)));
        *out_private = Box::into_raw(Box::new(MorlabPrivateKey(private)));
        Ok(())
    })
}

/// Generates a key pair on the extra-special group of order `p^(2n+1)`.
/// The same `seed` always yields the same keys.
#[no_mangle]
pub extern "C" fn morlab_keygen_extraspecial(
    p: u64,
    n: u32,
    seed: u64,
    out_public: *mut *mut MorlabPublicKey,
    out_private: *mut *mut MorlabPrivateKey,
) -> MorlabStatus {
    keygen(
        Platform::extraspecial(p, n as usize),
        seed,
        out_public,
        out_private,
    )
}

/// Generates a key pair on `(Z/p)^d`.
#[no_mangle]
pub extern "C" fn morlab_keygen_elementary(
    p: u64,
    d: u32,
    seed: u64,
    out_public: *mut *mut MorlabPublicKey,
    out_private: *mut *mut MorlabPrivateKey,
) -> MorlabStatus {
    keygen(
        Platform::elementary(p, d as usize),
        seed,
        out_public,
        out_private,
    )
}

/// Copies the public half of `private_key`.
#[no_mangle]
pub extern "C" fn morlab_private_key_public(
    private_key: *const MorlabPrivateKey,
    out_public: *mut *mut MorlabPublicKey,
) -> MorlabStatus {
    guard(|| {
        let private = unsafe { deref(private_key, "private_key")? };
        let out_public = unsafe { out(out_public, "out_public")? };
        *out_public = Box::into_raw(Box::new(MorlabPublicKey(private.0.public_key()?)));
        Ok(())
    })
}

/// Encrypts `len` bytes read as a big-endian integer below the group order.
#[no_mangle]
pub extern "C" fn morlab_encrypt(
    public_key: *const MorlabPublicKey,
    message: *const u8,
    len: usize,
    seed: u64,
    out_ciphertext: *mut *mut MorlabCiphertext,
) -> MorlabStatus {
    guard(|| {
        let public = unsafe { deref(public_key, "public_key")? };
        let message = unsafe { bytes(message, len)? };
        let out_ciphertext = unsafe { out(out_ciphertext, "out_ciphertext")? };
        let element = encode_message(message, public.0.platform)?;
        let ct = mor_encrypt(&public.0, &element, &mut seeded(seed))?;
        *out_ciphertext = Box::into_raw(Box::new(MorlabCiphertext(ct)));
        Ok(())
    })
}

/// Decrypts into `buffer`. `*out_len` always receives the plaintext length;
/// if it exceeds `capacity` nothing is written and
/// `MORLAB_STATUS_BUFFER_TOO_SMALL` is returned.
#[no_mangle]
pub extern "C" fn morlab_decrypt(
    private_key: *const MorlabPrivateKey,
    ciphertext: *const MorlabCiphertext,
    buffer: *mut u8,
    capacity: usize,
    out_len: *mut usize,
) -> MorlabStatus {
    guard(|| {
        let private = unsafe { deref(private_key, "private_key")? };
        let ciphertext = unsafe { deref(ciphertext, "ciphertext")? };
        let out_len = unsafe { out(out_len, "out_len")? };
        let element = mor_decrypt(&private.0, &ciphertext.0)?;
        let plain = decode_message(&element, private.0.platform)?;
        *out_len = plain.len();
        if plain.len() > capacity {
            return Err(Failure(
                MorlabStatus::BufferTooSmall,
                format!("need {} bytes, have {capacity}", plain.len()),
            ));
        }
        if !plain.is_empty() {
            if buffer.is_null() {
                return Err(null("buffer"));
            }
            unsafe { ptr::copy_nonoverlapping(plain.as_ptr(), buffer, plain.len()) };
        }
        Ok(())
    })
}

/// Recovers `m mod p` from a public key whose automorphism is central.
/// Other keys give `MORLAB_STATUS_NO_SOLUTION`.
#[no_mangle]
pub extern "C" fn morlab_central_attack(
    public_key: *const MorlabPublicKey,
    out_residue: *mut u64,
    out_modulus: *mut u64,
) -> MorlabStatus {
    guard(|| {
        let public = unsafe { deref(public_key, "public_key")? };
        let out_residue = unsafe { out(out_residue, "out_residue")? };
        let out_modulus = unsafe { out(out_modulus, "out_modulus")? };
        let answer = central_aut_attack(&public.0)?;
        *out_residue = answer.residue;
        *out_modulus = answer.modulus;
        Ok(())
    })
}

fn to_text(artifact: Artifact, out_text: *mut *mut c_char) -> Result<(), Failure> {
    let out_text = unsafe { out(out_text, "out_text")? };
    *out_text = export(write_artifact(&artifact));
    Ok(())
}

#[no_mangle]
pub extern "C" fn morlab_public_key_to_text(
    public_key: *const MorlabPublicKey,
    out_text: *mut *mut c_char,
) -> MorlabStatus {
    guard(|| {
        let public = unsafe { deref(public_key, "public_key")? };
        to_text(Artifact::Public(public.0.clone()), out_text)
    })
}

#[no_mangle]
pub extern "C" fn morlab_private_key_to_text(
    private_key: *const MorlabPrivateKey,
    out_text: *mut *mut c_char,
) -> MorlabStatus {
    guard(|| {
        let private = unsafe { deref(private_key, "private_key")? };
        to_text(Artifact::Private(private.0.clone()), out_text)
    })
}

#[no_mangle]
pub extern "C" fn morlab_ciphertext_to_text(
    ciphertext: *const MorlabCiphertext,
    out_text: *mut *mut c_char,
) -> MorlabStatus {
    guard(|| {
        let ciphertext = unsafe { deref(ciphertext, "ciphertext")? };
        to_text(Artifact::Ciphertext(ciphertext.0.clone()), out_text)
    })
}

fn parse(input: *const c_char) -> Result<Artifact, Failure> {
    Ok(parse_artifact(&unsafe { text(input)? })?)
}

fn wrong_kind(expected: &str, got: &Artifact) -> Failure {
    Failure(
        MorlabStatus::Format,
        format!("expected a {expected} artifact, got {}", got.kind().tag()),
    )
}

#[no_mangle]
pub extern "C" fn morlab_public_key_from_text(
    input: *const c_char,
    out_public: *mut *mut MorlabPublicKey,
) -> MorlabStatus {
    guard(|| {
        let out_public = unsafe { out(out_public, "out_public")? };
        match parse(input)? {
            Artifact::Public(key) => *out_public = Box::into_raw(Box::new(MorlabPublicKey(key))),
            other => return Err(wrong_kind("public key", &other)),
        }
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn morlab_private_key_from_text(
    input: *const c_char,
    out_private: *mut *mut MorlabPrivateKey,
) -> MorlabStatus {
    guard(|| {
        let out_private = unsafe { out(out_private, "out_private")? };
        match parse(input)? {
            Artifact::Private(key) => *out_private = Box::into_raw(Box::new(MorlabPrivateKey(key))),
            other => return Err(wrong_kind("private key", &other)),
        }
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn morlab_ciphertext_from_text(
    input: *const c_char,
    out_ciphertext: *mut *mut MorlabCiphertext,
) -> MorlabStatus {
    guard(|| {
        let out_ciphertext = unsafe { out(out_ciphertext, "out_ciphertext")? };
        match parse(input)? {
            Artifact::Ciphertext(ct) => {
                *out_ciphertext = Box::into_raw(Box::new(MorlabCiphertext(ct)))
            }
            other => return Err(wrong_kind("ciphertext", &other)),
        }
        Ok(())
    })
}

/// Message describing the most recent failure on this thread, or an empty
/// string. Valid until the next morlab call on the same thread.
#[no_mangle]
pub extern "C" fn morlab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// # Safety
/// `text` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn morlab_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// # Safety
/// `key` must be null or a handle returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn morlab_public_key_free(key: *mut MorlabPublicKey) {
    if !key.is_null() {
        drop(Box::from_raw(key));
    }
}

/// # Safety
/// `key` must be null or a handle returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn morlab_private_key_free(key: *mut MorlabPrivateKey) {
    if !key.is_null() {
        drop(Box::from_raw(key));
    }
}

/// # Safety
/// `ciphertext` must be null or a handle returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn morlab_ciphertext_free(ciphertext: *mut MorlabCiphertext) {
    if !ciphertext.is_null() {
        drop(Box::from_raw(ciphertext));
    }
}
