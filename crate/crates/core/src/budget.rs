//! Global caps on exhaustive enumeration.
//!
//! Every operation that materializes element sets checks the element budget
//! and returns [`Error::BudgetExceeded`] instead of sampling.

use core::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_ELEMENT_BUDGET: usize = 4096;
pub const DEFAULT_IDEAL_LATTICE_BUDGET: usize = 512;

static ELEMENTS: AtomicUsize = AtomicUsize::new(DEFAULT_ELEMENT_BUDGET);
static IDEAL_LATTICE: AtomicUsize = AtomicUsize::new(DEFAULT_IDEAL_LATTICE_BUDGET);

pub fn element_budget() -> usize {
    ELEMENTS.load(Ordering::Relaxed)
}

pub fn set_element_budget(n: usize) {
    ELEMENTS.store(n, Ordering::Relaxed);
}

/// Largest ring whose full ideal lattice may be enumerated.
pub fn ideal_lattice_budget() -> usize {
    IDEAL_LATTICE.load(Ordering::Relaxed)
}

pub fn set_ideal_lattice_budget(n: usize) {
    IDEAL_LATTICE.store(n, Ordering::Relaxed);
}

pub(crate) fn check_elements(needed: u128) -> Result<usize> {
    check(needed, element_budget())
}

pub(crate) fn check(needed: u128, budget: usize) -> Result<usize> {
    if needed > budget as u128 {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(needed as usize)
    }
}
