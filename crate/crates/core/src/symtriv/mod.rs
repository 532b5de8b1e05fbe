//! Exact tiers for two infinite rings: `Z ∝ Q` ([`zq`], [`zqmod`]) and
//! `Z ×' ⊕F_2` with `(a,e)(b,f) = (ab, af + be + ef)` ([`uze`]).

pub mod uze;
pub mod zq;
pub mod zqmod;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Generator `g >= 0` of the subgroup `Σ q_i Z` of `Q`.
pub fn rational_gcd<'a>(qs: impl IntoIterator<Item = &'a BigRational>) -> BigRational {
    let mut num = BigInt::zero();
    let mut den = BigInt::from(1);
    for q in qs {
        if q.is_zero() {
            continue;
        }
        num = num.gcd(q.numer());
        den = den.lcm(q.denom());
    }
    BigRational::new(num, den)
}

/// Generator `l >= 0` of `aZ ∩ bZ` in `Q`; zero if either is zero.
pub fn rational_lcm(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() || b.is_zero() {
        return BigRational::zero();
    }
    BigRational::new(
        a.numer().abs().lcm(&b.numer().abs()),
        a.denom().gcd(b.denom()),
    )
}

/// Is `q` an integer multiple of `g`? (`g = 0` means the zero subgroup.)
pub fn in_rational_line(q: &BigRational, g: &BigRational) -> bool {
    if g.is_zero() {
        q.is_zero()
    } else {
        (q / g).is_integer()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_gcd_and_lcm() {
        assert_eq!(rational_gcd(&[r(2, 3), r(1, 2)]), r(1, 6));
        assert_eq!(rational_gcd(&[r(-4, 1), r(6, 1)]), r(2, 1));
        assert_eq!(rational_gcd(&[]), r(0, 1));
        assert_eq!(rational_lcm(&r(2, 3), &r(1, 2)), r(2, 1));
        assert!(in_rational_line(&r(5, 6), &r(1, 6)));
        assert!(!in_rational_line(&r(1, 4), &r(1, 6)));
    }
}
