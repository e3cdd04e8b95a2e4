//! Fixed-width prefix-sum blocks, the building bricks of the wide trees.
//!
//! A two-level node holds `b` keys split into `s = sqrt(b)` segments of `s`
//! keys each. Every segment is stored in inclusive prefix sums, and a
//! `summary` array of `s` values holds the running totals of the segments
//! that precede it (`summary[0] = 0`). A query is then two reads,
//! `summary[i / s] + keys[i]`, and an update is two masked suffix adds: one
//! over the summary rows past the touched segment, one over the tail of the
//! segment itself (see [`lanes`]).
//!
//! The restricted variant accepts only deltas in `[-128, 127]` and buffers
//! them in 16-bit mirrors of `summary` and `keys` so that 8 (or 16) lanes
//! fit in one register group. An 8-bit counter starts at 255 and wraps every
//! 256 updates; the wrap flushes the buffers into the 64-bit arrays before
//! they can overflow (256 * |delta| <= 2^15).
//!
//! # Serialized layout
//!
//! Node types are `#[repr(C, align(32))]`, so a node serialized by value is
//! exactly its fields in declaration order (little-endian on the supported
//! targets), and node arrays can be addressed by byte offset as
//! `index * size_of::<Node>()`:
//!
//! | field | type | notes |
//! |-------|------|-------|
//! | `summary` | `[i64; s]` | prefix of segment totals, `summary[0] = 0` |
//! | `keys` | `[i64; b]` | `s` segments, each in inclusive prefix sums |
//! | `summary_buffer` | `[i16; s]` | restricted only |
//! | `keys_buffer` | `[i16; b]` | restricted only |
//! | `updates` | `u8` | restricted only, starts at 255 |
//!
//! A plain node is `8 * (s + b)` bytes (576 for `b = 64`, 12.5% over the raw
//! keys, `1/sqrt(b)` in general). A restricted node is `10 * (s + b) + 1`
//! bytes before padding and is padded to the next 32-byte multiple; the
//! unpadded overhead over the `8 * b` raw keys is `(2b + 10 * sqrt(b) + 1) /
//! (8b)`: 40.8% for `b = 64`, 32.9% for `b = 256`.

pub mod lanes;

pub use lanes::{suffix_add16, suffix_add16_scalar, suffix_add64, suffix_add64_scalar, Backend};

/// A block of `FANOUT` logical values supporting prefix sums within the
/// block. Implementations are plain `repr(C)` structs so trees can store
/// them serialized back to back.
pub trait PrefixBlock: Clone + Send + Sync + 'static {
    /// Keys per block (`b`).
    const FANOUT: usize;
    /// Lanes per segment (`sqrt(b)` for two-level nodes).
    const LANES: usize;
    /// Whether updates are restricted to 8-bit deltas.
    const RESTRICTED: bool;

    /// Builds a block from at most `FANOUT` values; missing tail values are
    /// treated as zero.
    fn build(values: &[i64]) -> Self;

    /// Inclusive prefix sum of the block's logical values `0..=i`.
    fn sum(&self, i: usize) -> i64;

    /// Total of the whole block; constant time.
    fn back(&self) -> i64;

    /// Adds `delta` to logical value `i`. Restricted blocks require `delta`
    /// in `[-128, 127]`.
    fn update(&mut self, i: usize, delta: i64, backend: Backend);

    /// Serialized size, including alignment padding.
    fn size_bytes() -> usize {
        std::mem::size_of::<Self>()
    }

    /// Exact size of the fields, before padding to the 32-byte alignment.
    fn unpadded_size_bytes() -> usize;
}

macro_rules! two_level_node {
    ($(#[$meta:meta])* $name:ident, $b:expr, $s:expr) => {
        $(#[$meta])*
        #[derive(Clone)]
        #[repr(C, align(32))]
        pub struct $name {
            summary: [i64; $s],
            keys: [i64; $b],
        }

        impl $name {
            pub fn build(values: &[i64]) -> Self {
                assert!(values.len() <= $b, "block takes at most {} values", $b);
                let mut keys = [0i64; $b];
                let mut summary = [0i64; $s];
                for seg in 0..$s {
                    let mut acc = 0i64;
                    for k in 0..$s {
                        let idx = seg * $s + k;
                        if idx < values.len() {
                            acc = acc.wrapping_add(values[idx]);
                        }
                        keys[idx] = acc;
                    }
                }
                let mut acc = 0i64;
                for seg in 1..$s {
                    acc = acc.wrapping_add(keys[seg * $s - 1]);
                    summary[seg] = acc;
                }
                Self { summary, keys }
            }

            #[inline]
            pub fn sum(&self, i: usize) -> i64 {
                debug_assert!(i < $b);
                self.summary[i / $s].wrapping_add(self.keys[i])
            }

            #[inline]
            pub fn back(&self) -> i64 {
                self.summary[$s - 1].wrapping_add(self.keys[$b - 1])
            }

            #[inline]
            pub fn update(&mut self, i: usize, delta: i64, backend: Backend) {
                debug_assert!(i < $b);
                suffix_add64(&mut self.summary, i / $s + 1, delta, backend);
                let seg = i / $s * $s;
                suffix_add64(&mut self.keys[seg..seg + $s], i % $s, delta, backend);
            }

            pub fn summary(&self) -> &[i64] {
                &self.summary
            }

            pub fn keys(&self) -> &[i64] {
                &self.keys
            }
        }

        impl PrefixBlock for $name {
            const FANOUT: usize = $b;
            const LANES: usize = $s;
            const RESTRICTED: bool = false;

            fn build(values: &[i64]) -> Self {
                $name::build(values)
            }
            fn sum(&self, i: usize) -> i64 {
                $name::sum(self, i)
            }
            fn back(&self) -> i64 {
                $name::back(self)
            }
            fn update(&mut self, i: usize, delta: i64, backend: Backend) {
                $name::update(self, i, delta, backend)
            }
            fn unpadded_size_bytes() -> usize {
                8 * ($s + $b)
            }
        }
    };
}

macro_rules! restricted_node {
    ($(#[$meta:meta])* $name:ident, $b:expr, $s:expr) => {
        $(#[$meta])*
        #[derive(Clone)]
        #[repr(C, align(32))]
        pub struct $name {
            summary: [i64; $s],
            keys: [i64; $b],
            summary_buffer: [i16; $s],
            keys_buffer: [i16; $b],
            updates: u8,
        }

        impl $name {
            pub fn build(values: &[i64]) -> Self {
                assert!(values.len() <= $b, "block takes at most {} values", $b);
                let mut keys = [0i64; $b];
                let mut summary = [0i64; $s];
                for seg in 0..$s {
                    let mut acc = 0i64;
                    for k in 0..$s {
                        let idx = seg * $s + k;
                        if idx < values.len() {
                            acc = acc.wrapping_add(values[idx]);
                        }
                        keys[idx] = acc;
                    }
                }
                let mut acc = 0i64;
                for seg in 1..$s {
                    acc = acc.wrapping_add(keys[seg * $s - 1]);
                    summary[seg] = acc;
                }
                Self {
                    summary,
                    keys,
                    summary_buffer: [0; $s],
                    keys_buffer: [0; $b],
                    updates: 255,
                }
            }

            /// Four reads: base arrays plus the sign-extended buffers.
            #[inline]
            pub fn sum(&self, i: usize) -> i64 {
                debug_assert!(i < $b);
                self.summary[i / $s]
                    .wrapping_add(self.keys[i])
                    .wrapping_add(self.summary_buffer[i / $s] as i64)
                    .wrapping_add(self.keys_buffer[i] as i64)
            }

            #[inline]
            pub fn back(&self) -> i64 {
                self.summary[$s - 1]
                    .wrapping_add(self.keys[$b - 1])
                    .wrapping_add(self.summary_buffer[$s - 1] as i64)
                    .wrapping_add(self.keys_buffer[$b - 1] as i64)
            }

            /// Buffered update. The counter wraps to 0 every 256 calls, which
            /// flushes the buffers before the new delta lands.
            #[inline]
            pub fn update(&mut self, i: usize, delta: i8, backend: Backend) {
                debug_assert!(i < $b);
                self.updates = self.updates.wrapping_add(1);
                if self.updates == 0 {
                    self.flush();
                }
                let d = delta as i16;
                suffix_add16(&mut self.summary_buffer, i / $s + 1, d, backend);
                let seg = i / $s * $s;
                suffix_add16(&mut self.keys_buffer[seg..seg + $s], i % $s, d, backend);
            }

            /// Folds the buffers into the 64-bit arrays and zeroes them.
            /// Observable sums are unchanged. Scalar on purpose: flushes are
            /// rare enough that vectorizing them buys nothing.
            pub fn flush(&mut self) {
                for j in 0..$s {
                    self.summary[j] = self.summary[j].wrapping_add(self.summary_buffer[j] as i64);
                    self.summary_buffer[j] = 0;
                }
                for k in 0..$b {
                    self.keys[k] = self.keys[k].wrapping_add(self.keys_buffer[k] as i64);
                    self.keys_buffer[k] = 0;
                }
            }

            pub fn summary_buffer(&self) -> &[i16] {
                &self.summary_buffer
            }

            pub fn keys_buffer(&self) -> &[i16] {
                &self.keys_buffer
            }

            pub fn updates_counter(&self) -> u8 {
                self.updates
            }
        }

        impl PrefixBlock for $name {
            const FANOUT: usize = $b;
            const LANES: usize = $s;
            const RESTRICTED: bool = true;

            fn build(values: &[i64]) -> Self {
                $name::build(values)
            }
            fn sum(&self, i: usize) -> i64 {
                $name::sum(self, i)
            }
            fn back(&self) -> i64 {
                $name::back(self)
            }
            fn update(&mut self, i: usize, delta: i64, backend: Backend) {
                assert!(
                    (-128..=127).contains(&delta),
                    "restricted block takes 8-bit deltas, got {delta}"
                );
                $name::update(self, i, delta as i8, backend)
            }
            fn unpadded_size_bytes() -> usize {
                10 * ($s + $b) + 1
            }
        }
    };
}

two_level_node!(
    /// 16-key two-level node (4 lanes); small enough to check by hand.
    Node16, 16, 4
);
two_level_node!(
    /// 64-key two-level node (8 lanes); summary and each segment fill one
    /// cache line.
    Node64, 64, 8
);
two_level_node!(
    /// 256-key two-level node (16 lanes).
    Node256, 256, 16
);

restricted_node!(
    /// 16-key restricted node with 16-bit update buffers.
    RestrictedNode16, 16, 4
);
restricted_node!(
    /// 64-key restricted node; the whole summary buffer is one 128-bit group.
    RestrictedNode64, 64, 8
);
restricted_node!(
    /// 256-key restricted node; each buffer segment is one 256-bit group.
    RestrictedNode256, 256, 16
);

/// Single-level block: `B` keys kept in inclusive prefix sums, updated with
/// one masked suffix add. Used where the fanout is too small for a two-level
/// split (the digit-decomposition Fenwick tree with `b` of 2 or 4).
#[derive(Clone)]
#[repr(C)]
pub struct FlatBlock<const B: usize> {
    keys: [i64; B],
}

impl<const B: usize> FlatBlock<B> {
    pub fn keys(&self) -> &[i64] {
        &self.keys
    }
}

impl<const B: usize> PrefixBlock for FlatBlock<B> {
    const FANOUT: usize = B;
    const LANES: usize = B;
    const RESTRICTED: bool = false;

    fn build(values: &[i64]) -> Self {
        assert!(values.len() <= B, "block takes at most {B} values");
        let mut keys = [0i64; B];
        let mut acc = 0i64;
        for k in 0..B {
            if k < values.len() {
                acc = acc.wrapping_add(values[k]);
            }
            keys[k] = acc;
        }
        Self { keys }
    }

    fn sum(&self, i: usize) -> i64 {
        self.keys[i]
    }

    fn back(&self) -> i64 {
        self.keys[B - 1]
    }

    fn update(&mut self, i: usize, delta: i64, backend: Backend) {
        suffix_add64(&mut self.keys, i, delta, backend);
    }

    fn unpadded_size_bytes() -> usize {
        8 * B
    }
}
