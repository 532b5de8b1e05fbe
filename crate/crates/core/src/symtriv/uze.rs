//! The ring `Z ×' ⊕F_2`: pairs `(a, e)` with `a ∈ Z` and `e` a finite subset
//! of `N` (a vector of `⊕_N F_2`), multiplied by
//! `(a, e)(b, f) = (ab, af + be + ef)` where `af` means `f` if `a` is odd and
//! `∅` otherwise, `+` is symmetric difference and `ef` is intersection.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UZEElement {
    pub a: BigInt,
    pub e: BTreeSet<u32>,
}

impl UZEElement {
    pub fn new(a: impl Into<BigInt>, e: impl IntoIterator<Item = u32>) -> Self {
        UZEElement {
            a: a.into(),
            e: e.into_iter().collect(),
        }
    }

    pub fn zero() -> Self {
        UZEElement::new(0, [])
    }

    pub fn one() -> Self {
        UZEElement::new(1, [])
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.e.is_empty()
    }

    pub fn add(&self, other: &UZEElement) -> UZEElement {
        UZEElement {
            a: &self.a + &other.a,
            e: self.e.symmetric_difference(&other.e).copied().collect(),
        }
    }

    fn a_odd(&self) -> bool {
        self.a.is_odd()
    }
}

impl fmt::Display for UZEElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.e.iter().map(|j| alloc::format!("{j}")).collect();
        write!(f, "({}, {{{}}})", self.a, parts.join(","))
    }
}

fn odd_part(a: &BigInt, e: &BTreeSet<u32>) -> BTreeSet<u32> {
    if a.is_odd() {
        e.clone()
    } else {
        BTreeSet::new()
    }
}

fn xor(x: &BTreeSet<u32>, y: &BTreeSet<u32>) -> BTreeSet<u32> {
    x.symmetric_difference(y).copied().collect()
}

pub fn uze_mul(x: &UZEElement, y: &UZEElement) -> UZEElement {
    let inter: BTreeSet<u32> = x.e.intersection(&y.e).copied().collect();
    UZEElement {
        a: &x.a * &y.a,
        e: xor(&xor(&odd_part(&x.a, &y.e), &odd_part(&y.a, &x.e)), &inter),
    }
}

/// `x` is regular iff `a` is odd and `e = ∅`; such `x` need not be a unit.
pub fn uze_is_regular(x: &UZEElement) -> bool {
    x.a_odd() && x.e.is_empty()
}

/// Smallest index not in `e`.
fn fresh_index(e: &BTreeSet<u32>) -> u32 {
    (0..).find(|j| !e.contains(j)).unwrap_or(0)
}

/// Nonzero `y` with `xy = 0`, for `x` not regular.
pub fn uze_zero_divisor_witness(x: &UZEElement) -> Option<UZEElement> {
    if uze_is_regular(x) {
        return None;
    }
    let w = if x.is_zero() {
        UZEElement::one()
    } else if x.a_odd() {
        // (a, e)(0, e) = (0, e + e) = 0 for odd a
        UZEElement {
            a: BigInt::zero(),
            e: x.e.clone(),
        }
    } else {
        UZEElement::new(0, [fresh_index(&x.e)])
    };
    Some(w)
}

/// Shapes of `Ann(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UZEAnn {
    /// `x` regular.
    Zero,
    /// `x = 0`.
    Whole,
    /// `x = (a, ∅)`, `a` even and nonzero: `0 × ⊕F_2`, not finitely generated.
    ZeroTimesE,
    /// `x = (a, e)`, `a` odd, `e ≠ ∅`: `{(0, f) : f ⊆ e}`, principal on `(0, e)`.
    ZeroTimesSubsets { support: BTreeSet<u32> },
    /// `x = (a, e)`, `a` even and nonzero, `e ≠ ∅`: `{(0, f) : f ∩ e = ∅}`.
    ZeroTimesComplement { support: BTreeSet<u32> },
    /// `x = (0, e)`, `e ≠ ∅`: `{(b, f) : b even, f ∩ e = ∅} ∪ {(b, f) : b odd, e ⊆ f}`.
    Mixed { support: BTreeSet<u32> },
}

impl UZEAnn {
    pub fn contains(&self, y: &UZEElement) -> bool {
        match self {
            UZEAnn::Zero => y.is_zero(),
            UZEAnn::Whole => true,
            UZEAnn::ZeroTimesE => y.a.is_zero(),
            UZEAnn::ZeroTimesSubsets { support } => y.a.is_zero() && y.e.is_subset(support),
            UZEAnn::ZeroTimesComplement { support } => y.a.is_zero() && y.e.is_disjoint(support),
            UZEAnn::Mixed { support } => {
                if y.a_odd() {
                    support.is_subset(&y.e)
                } else {
                    y.e.is_disjoint(support)
                }
            }
        }
    }

    pub fn is_finitely_generated(&self) -> bool {
        matches!(
            self,
            UZEAnn::Zero | UZEAnn::Whole | UZEAnn::ZeroTimesSubsets { .. }
        )
    }

    /// A generator when the annihilator is principal.
    pub fn generator(&self) -> Option<UZEElement> {
        match self {
            UZEAnn::Zero => Some(UZEElement::zero()),
            UZEAnn::Whole => Some(UZEElement::one()),
            UZEAnn::ZeroTimesSubsets { support } => Some(UZEElement {
                a: BigInt::zero(),
                e: support.clone(),
            }),
            _ => None,
        }
    }
}

pub fn uze_annihilator(x: &UZEElement) -> UZEAnn {
    if x.is_zero() {
        UZEAnn::Whole
    } else if uze_is_regular(x) {
        UZEAnn::Zero
    } else if x.a.is_zero() {
        UZEAnn::Mixed { support: x.e.clone() }
    } else if x.a_odd() {
        UZEAnn::ZeroTimesSubsets { support: x.e.clone() }
    } else if x.e.is_empty() {
        UZEAnn::ZeroTimesE
    } else {
        UZEAnn::ZeroTimesComplement { support: x.e.clone() }
    }
}

/// `J^{-1}` for a finitely generated ideal `J`, up to the identification of
/// fractions `y/s` with regular `s = (b, ∅)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UZEInverse {
    /// Every generator has zero integer part: `J^{-1}` is the whole total
    /// quotient ring.
    TotalRing,
    /// `J^{-1} = (1/g) R` restricted to integer parts, `g = gcd(a_i)`.
    EquivPrincipal { gcd: BigInt },
}

pub fn uze_inverse_class(gens: &[UZEElement]) -> UZEInverse {
    let g = gens.iter().fold(BigInt::zero(), |acc, x| acc.gcd(&x.a));
    if g.is_zero() {
        UZEInverse::TotalRing
    } else {
        UZEInverse::EquivPrincipal { gcd: g.abs() }
    }
}

/// Is `y/s` (with `s = (b, ∅)`, `b` odd) in `J^{-1}`, i.e. `y·x_j ∈ sR` for
/// every generator? The test is `b | y.a · x_j.a` since `b` is odd and so
/// acts invertibly on `⊕F_2`.
pub fn uze_fraction_in_inverse(y: &UZEElement, b: &BigInt, gens: &[UZEElement]) -> bool {
    gens.iter().all(|x| {
        let p = uze_mul(y, x);
        (&p.a % b).is_zero()
    })
}

/// `(1, ∅)` divided by `s` lies in `R` iff `s` is a unit, i.e. `b = ±1`.
pub fn uze_is_unit(x: &UZEElement) -> bool {
    x.e.is_empty() && (x.a.is_one() || (-&x.a).is_one())
}
