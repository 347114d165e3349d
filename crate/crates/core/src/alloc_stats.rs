//! Process-wide accounting of live tensor elements.
//!
//! Used by memory tests to confirm that the seed-trick training step never
//! materializes a second parameter-sized buffer. Counters track f64 elements
//! held by [`Tensor`](crate::tensor::Tensor) buffers, not raw bytes.

use std::sync::atomic::{AtomicU64, Ordering};

static LIVE_ELEMENTS: AtomicU64 = AtomicU64::new(0);
static PEAK_ELEMENTS: AtomicU64 = AtomicU64::new(0);

pub(crate) fn record_alloc(elements: usize) {
    let live = LIVE_ELEMENTS.fetch_add(elements as u64, Ordering::Relaxed) + elements as u64;
    PEAK_ELEMENTS.fetch_max(live, Ordering::Relaxed);
}

pub(crate) fn record_free(elements: usize) {
    LIVE_ELEMENTS.fetch_sub(elements as u64, Ordering::Relaxed);
}

/// Tensor elements currently alive.
pub fn live_elements() -> u64 {
    LIVE_ELEMENTS.load(Ordering::Relaxed)
}

/// High-water mark since the last [`reset_peak`].
pub fn peak_elements() -> u64 {
    PEAK_ELEMENTS.load(Ordering::Relaxed)
}

/// Resets the peak to the current live count.
pub fn reset_peak() {
    PEAK_ELEMENTS.store(LIVE_ELEMENTS.load(Ordering::Relaxed), Ordering::Relaxed);
}
