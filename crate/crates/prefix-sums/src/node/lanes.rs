//! Masked suffix adds over small groups of lanes.
//!
//! `suffix_add64(lanes, from, delta, backend)` adds `delta` to every lane at
//! position `from` or later and leaves the earlier lanes untouched;
//! `suffix_add16` is the 16-bit counterpart used by the restricted-node
//! update buffers.
//!
//! The vector path broadcasts `delta` into a register, ANDs it with a row of
//! a precomputed mask table and issues one lane-parallel add per register
//! group. Row `t` of a table for `s` lanes has its first `t` entries all-zero
//! and the remaining `s - t` all-ones, so row 0 touches every lane and row
//! `s` none. The scalar path is a plain loop over `lanes[from..]`. Both paths
//! are wrapping and bit-identical; which one runs is decided by the
//! [`Backend`] chosen when a structure is built.

use std::sync::OnceLock;

/// Which suffix-add implementation a structure uses.
///
/// `Simd` falls back to the scalar loop on targets (or lane counts) the
/// vector kernels do not cover, so it is always safe to request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Scalar,
    Simd,
}

impl Backend {
    /// Picks `Simd` when the running CPU supports the vector kernels.
    pub fn auto() -> Self {
        if simd_available() {
            Backend::Simd
        } else {
            Backend::Scalar
        }
    }
}

pub fn simd_available() -> bool {
    #[cfg(target_arch = "x86_64")]
    {
        static AVX2: OnceLock<bool> = OnceLock::new();
        *AVX2.get_or_init(|| std::arch::is_x86_feature_detected!("avx2"))
    }
    #[cfg(not(target_arch = "x86_64"))]
    {
        static NONE: OnceLock<bool> = OnceLock::new();
        *NONE.get_or_init(|| false)
    }
}

// Mask tables. Row t zeroes the first t lanes; alignment suits full-width
// vector loads (rows of the 8-lane 16-bit table are 16-byte aligned, the
// rest 32-byte).
#[repr(C, align(32))]
struct Rows<T, const S: usize, const R: usize>([[T; S]; R]);

const fn mask_rows_u64<const S: usize, const R: usize>() -> [[u64; S]; R] {
    let mut rows = [[0u64; S]; R];
    let mut t = 0;
    while t < R {
        let mut j = 0;
        while j < S {
            rows[t][j] = if j < t { 0 } else { u64::MAX };
            j += 1;
        }
        t += 1;
    }
    rows
}

const fn mask_rows_u16<const S: usize, const R: usize>() -> [[u16; S]; R] {
    let mut rows = [[0u16; S]; R];
    let mut t = 0;
    while t < R {
        let mut j = 0;
        while j < S {
            rows[t][j] = if j < t { 0 } else { u16::MAX };
            j += 1;
        }
        t += 1;
    }
    rows
}

static MASK64X4: Rows<u64, 4, 5> = Rows(mask_rows_u64::<4, 5>());
#[cfg(target_arch = "x86_64")]
static MASK16X8: Rows<u16, 8, 9> = Rows(mask_rows_u16::<8, 9>());
static MASK16X16: Rows<u16, 16, 17> = Rows(mask_rows_u16::<16, 17>());

/// Adds `delta` to `lanes[from..]`, wrapping. `from` may equal `lanes.len()`
/// (empty suffix).
pub fn suffix_add64(lanes: &mut [i64], from: usize, delta: i64, backend: Backend) {
    debug_assert!(from <= lanes.len(), "suffix start {from} out of range");
    if backend == Backend::Simd && lanes.len().is_multiple_of(4) && simd_available() {
        #[cfg(target_arch = "x86_64")]
        {
            unsafe { suffix_add64_avx2(lanes, from, delta) };
            return;
        }
    }
    suffix_add64_scalar(lanes, from, delta);
}

pub fn suffix_add64_scalar(lanes: &mut [i64], from: usize, delta: i64) {
    for lane in &mut lanes[from..] {
        *lane = lane.wrapping_add(delta);
    }
}

/// 16-bit variant for the restricted-node buffers. Debug builds assert that
/// no lane leaves the signed 16-bit range; callers must flush on time.
pub fn suffix_add16(lanes: &mut [i16], from: usize, delta: i16, backend: Backend) {
    debug_assert!(from <= lanes.len(), "suffix start {from} out of range");
    #[cfg(debug_assertions)]
    for &lane in &lanes[from..] {
        let wide = lane as i32 + delta as i32;
        debug_assert!(
            wide >= i16::MIN as i32 && wide <= i16::MAX as i32,
            "16-bit buffer overflow: {lane} + {delta}"
        );
    }
    if backend == Backend::Simd {
        #[cfg(target_arch = "x86_64")]
        {
            if lanes.len() == 16 && simd_available() {
                unsafe { suffix_add16_avx2(lanes, from, delta) };
                return;
            }
            if lanes.len().is_multiple_of(8) {
                unsafe { suffix_add16_sse2(lanes, from, delta) };
                return;
            }
        }
    }
    suffix_add16_scalar(lanes, from, delta);
}

pub fn suffix_add16_scalar(lanes: &mut [i16], from: usize, delta: i16) {
    for lane in &mut lanes[from..] {
        *lane = lane.wrapping_add(delta);
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn suffix_add64_avx2(lanes: &mut [i64], from: usize, delta: i64) {
    use std::arch::x86_64::*;
    let broadcast = _mm256_set1_epi64x(delta);
    let mut c = 0;
    while c + 4 <= lanes.len() {
        let row = from.saturating_sub(c).min(4);
        let mask = _mm256_load_si256(MASK64X4.0[row].as_ptr().cast());
        let add = _mm256_and_si256(broadcast, mask);
        let ptr = lanes.as_mut_ptr().add(c).cast::<__m256i>();
        _mm256_storeu_si256(ptr, _mm256_add_epi64(_mm256_loadu_si256(ptr), add));
        c += 4;
    }
}

#[cfg(target_arch = "x86_64")]
unsafe fn suffix_add16_sse2(lanes: &mut [i16], from: usize, delta: i16) {
    use std::arch::x86_64::*;
    let broadcast = _mm_set1_epi16(delta);
    let mut c = 0;
    while c + 8 <= lanes.len() {
        let row = from.saturating_sub(c).min(8);
        let mask = _mm_load_si128(MASK16X8.0[row].as_ptr().cast());
        let add = _mm_and_si128(broadcast, mask);
        let ptr = lanes.as_mut_ptr().add(c).cast::<__m128i>();
        _mm_storeu_si128(ptr, _mm_add_epi16(_mm_loadu_si128(ptr), add));
        c += 8;
    }
}

// One 256-bit group covers all 16 buffer lanes of a 256-key node.
#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn suffix_add16_avx2(lanes: &mut [i16], from: usize, delta: i16) {
    use std::arch::x86_64::*;
    debug_assert_eq!(lanes.len(), 16);
    let broadcast = _mm256_set1_epi16(delta);
    let mask = _mm256_load_si256(MASK16X16.0[from.min(16)].as_ptr().cast());
    let add = _mm256_and_si256(broadcast, mask);
    let ptr = lanes.as_mut_ptr().cast::<__m256i>();
    _mm256_storeu_si256(ptr, _mm256_add_epi16(_mm256_loadu_si256(ptr), add));
}

#[cfg(not(target_arch = "x86_64"))]
#[allow(dead_code)]
fn unused_masks() {
    // keeps the 16-lane table referenced on targets without vector kernels
    let _ = &MASK16X16;
}
