//! Ideals of `R = Z ∝ Q` and fractional ideals inside `Q(R) = Q ∝ Q`.
//!
//! For `a ≠ 0`, `R(a,e) = aZ ∝ Q`; for `a = 0`, `R(0,q) = 0 ∝ qZ`. So every
//! finitely generated ideal is `dZ ∝ Q` or `0 ∝ gZ`, and every fractional
//! ideal met here is a product `A × E` of a subgroup of `Q` for each part.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{in_rational_line, rational_gcd, rational_lcm};
use crate::error::{Error, Result};

/// An element `(a, q)` of `Z ∝ Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZQElement {
    pub a: BigInt,
    pub q: BigRational,
}

impl ZQElement {
    pub fn new(a: impl Into<BigInt>, q: BigRational) -> Self {
        ZQElement { a: a.into(), q }
    }

    pub fn zero() -> Self {
        ZQElement::new(0, BigRational::zero())
    }

    pub fn one() -> Self {
        ZQElement::new(1, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.q.is_zero()
    }

    pub fn add(&self, other: &ZQElement) -> ZQElement {
        ZQElement::new(&self.a + &other.a, &self.q + &other.q)
    }

    pub fn to_total(&self) -> QQElement {
        QQElement {
            a: BigRational::from_integer(self.a.clone()),
            q: self.q.clone(),
        }
    }
}

impl fmt::Display for ZQElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.q)
    }
}

/// `(a, e)(a', e') = (aa', ae' + a'e)`.
pub fn zq_mul(x: &ZQElement, y: &ZQElement) -> ZQElement {
    let q = BigRational::from_integer(x.a.clone()) * &y.q + BigRational::from_integer(y.a.clone()) * &x.q;
    ZQElement::new(&x.a * &y.a, q)
}

/// An element of the total quotient ring `Q ∝ Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QQElement {
    pub a: BigRational,
    pub q: BigRational,
}

impl QQElement {
    pub fn mul(&self, y: &QQElement) -> QQElement {
        QQElement {
            a: &self.a * &y.a,
            q: &self.a * &y.q + &y.a * &self.q,
        }
    }

    /// Does it lie in `R = Z ∝ Q`?
    pub fn is_integral(&self) -> bool {
        self.a.is_integer()
    }
}

/// `(a, e)` is regular iff `a ≠ 0`.
pub fn zq_is_regular(x: &ZQElement) -> bool {
    !x.a.is_zero()
}

/// A nonzero `y` with `xy = 0`, when `x` is a zero divisor.
pub fn zq_zero_divisor_witness(x: &ZQElement) -> Option<ZQElement> {
    if zq_is_regular(x) {
        None
    } else {
        Some(ZQElement::new(0, BigRational::one()))
    }
}

/// Normal form of a finitely generated ideal of `Z ∝ Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ZQIdealNF {
    /// `0 ∝ gZ` with `g >= 0`; `g = 0` is the zero ideal.
    ZeroLine { g: BigRational },
    /// `dZ ∝ Q` with `d >= 1`.
    FullLine { d: BigInt },
}

impl fmt::Display for ZQIdealNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZQIdealNF::ZeroLine { g } if g.is_zero() => f.write_str("0"),
            ZQIdealNF::ZeroLine { g } => write!(f, "0 ∝ ({g})Z"),
            ZQIdealNF::FullLine { d } if d.is_one() => f.write_str("R"),
            ZQIdealNF::FullLine { d } => write!(f, "{d}Z ∝ Q"),
        }
    }
}

impl ZQIdealNF {
    pub fn zero() -> Self {
        ZQIdealNF::ZeroLine { g: BigRational::zero() }
    }

    pub fn whole() -> Self {
        ZQIdealNF::FullLine { d: BigInt::one() }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ZQIdealNF::ZeroLine { g } if g.is_zero())
    }

    pub fn contains(&self, x: &ZQElement) -> bool {
        match self {
            ZQIdealNF::ZeroLine { g } => x.a.is_zero() && in_rational_line(&x.q, g),
            ZQIdealNF::FullLine { d } => x.a.is_multiple_of(d),
        }
    }

    pub fn to_fractional(&self) -> ZQFractional {
        match self {
            ZQIdealNF::ZeroLine { g } if g.is_zero() => ZQFractional::Zero,
            ZQIdealNF::ZeroLine { g } => ZQFractional::ZeroScaled { c: g.clone() },
            ZQIdealNF::FullLine { d } => ZQFractional::ScaledLine {
                c: BigRational::from_integer(d.clone()),
            },
        }
    }

    /// A single generator (every finitely generated ideal is principal).
    pub fn generator(&self) -> ZQElement {
        match self {
            ZQIdealNF::ZeroLine { g } => ZQElement::new(0, g.clone()),
            ZQIdealNF::FullLine { d } => ZQElement::new(d.clone(), BigRational::zero()),
        }
    }
}

pub fn zq_ideal_nf(gens: &[ZQElement]) -> ZQIdealNF {
    let d = gens.iter().fold(BigInt::zero(), |acc, x| acc.gcd(&x.a));
    if d.is_zero() {
        ZQIdealNF::ZeroLine {
            g: rational_gcd(gens.iter().map(|x| &x.q)),
        }
    } else {
        ZQIdealNF::FullLine { d }
    }
}

/// An ideal of `Z ∝ Q` that may fail to be finitely generated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ZQIdeal {
    Fg(ZQIdealNF),
    /// Not finitely generated; the fractional shape is recorded.
    NotFg(ZQFractional),
}

impl ZQIdeal {
    pub fn is_finitely_generated(&self) -> bool {
        matches!(self, ZQIdeal::Fg(_))
    }

    pub fn contains(&self, x: &ZQElement) -> bool {
        match self {
            ZQIdeal::Fg(nf) => nf.contains(x),
            ZQIdeal::NotFg(f) => f.contains(&x.to_total()),
        }
    }

    pub fn to_fractional(&self) -> ZQFractional {
        match self {
            ZQIdeal::Fg(nf) => nf.to_fractional(),
            ZQIdeal::NotFg(f) => f.clone(),
        }
    }
}

impl fmt::Display for ZQIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZQIdeal::Fg(nf) => write!(f, "{nf}"),
            ZQIdeal::NotFg(fr) => write!(f, "{fr} (not finitely generated)"),
        }
    }
}

pub fn zq_intersection(i: &ZQIdealNF, j: &ZQIdealNF) -> ZQIdealNF {
    use ZQIdealNF::*;
    match (i, j) {
        (FullLine { d: d1 }, FullLine { d: d2 }) => FullLine { d: d1.lcm(d2) },
        (FullLine { .. }, z @ ZeroLine { .. }) | (z @ ZeroLine { .. }, FullLine { .. }) => z.clone(),
        (ZeroLine { g: g1 }, ZeroLine { g: g2 }) => ZeroLine { g: rational_lcm(g1, g2) },
    }
}

pub fn zq_sum(i: &ZQIdealNF, j: &ZQIdealNF) -> ZQIdealNF {
    use ZQIdealNF::*;
    match (i, j) {
        (FullLine { d: d1 }, FullLine { d: d2 }) => FullLine { d: d1.gcd(d2) },
        (f @ FullLine { .. }, ZeroLine { .. }) | (ZeroLine { .. }, f @ FullLine { .. }) => f.clone(),
        (ZeroLine { g: g1 }, ZeroLine { g: g2 }) => ZeroLine {
            g: rational_gcd([g1, g2]),
        },
    }
}

/// `(0 : x)`: zero when `x` is regular, `0 ∝ Q` (not finitely generated)
/// when `x = (0, e ≠ 0)`, and `R` when `x = 0`.
pub fn zq_annihilator(x: &ZQElement) -> ZQIdeal {
    if !x.a.is_zero() {
        ZQIdeal::Fg(ZQIdealNF::zero())
    } else if !x.q.is_zero() {
        ZQIdeal::NotFg(ZQFractional::ZeroFull)
    } else {
        ZQIdeal::Fg(ZQIdealNF::whole())
    }
}

/// `(I : J) = {x ∈ R : xJ ⊆ I}`, using the single generator of `J`.
pub fn zq_colon(i: &ZQIdealNF, j: &ZQIdealNF) -> ZQIdeal {
    use ZQIdealNF::*;
    match (i, j.generator()) {
        (_, y) if y.is_zero() => ZQIdeal::Fg(ZQIdealNF::whole()),
        (FullLine { d: e }, ZQElement { a: d, .. }) if !d.is_zero() => ZQIdeal::Fg(FullLine {
            d: e / e.gcd(&d),
        }),
        (ZeroLine { g }, ZQElement { a: d, .. }) if !d.is_zero() => ZQIdeal::Fg(ZeroLine {
            g: g / BigRational::from_integer(d.abs()),
        }),
        (FullLine { .. }, _) => ZQIdeal::Fg(ZQIdealNF::whole()),
        (ZeroLine { g }, ZQElement { q: g2, .. }) => {
            if g.is_zero() {
                ZQIdeal::NotFg(ZQFractional::ZeroFull)
            } else {
                ZQIdeal::Fg(FullLine {
                    d: (g / g2).numer().abs(),
                })
            }
        }
    }
}

/// A subgroup of `Q`: `0`, `cZ` with `c > 0`, or `Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QLine {
    Zero,
    Scaled(BigRational),
    Full,
}

impl QLine {
    fn contains(&self, x: &BigRational) -> bool {
        match self {
            QLine::Zero => x.is_zero(),
            QLine::Scaled(c) => (x / c).is_integer(),
            QLine::Full => true,
        }
    }

    fn sum(&self, other: &QLine) -> QLine {
        match (self, other) {
            (QLine::Full, _) | (_, QLine::Full) => QLine::Full,
            (QLine::Zero, x) | (x, QLine::Zero) => x.clone(),
            (QLine::Scaled(a), QLine::Scaled(b)) => QLine::Scaled(rational_gcd([a, b])),
        }
    }

    fn meet(&self, other: &QLine) -> QLine {
        match (self, other) {
            (QLine::Zero, _) | (_, QLine::Zero) => QLine::Zero,
            (QLine::Full, x) | (x, QLine::Full) => x.clone(),
            (QLine::Scaled(a), QLine::Scaled(b)) => QLine::Scaled(rational_lcm(a, b)),
        }
    }
}

/// Fractional ideals of `Z ∝ Q` inside `Q ∝ Q` arising from the v-machinery.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ZQFractional {
    /// `cZ ∝ Q`, `c > 0`; `R` is `ScaledLine { c: 1 }`.
    ScaledLine { c: BigRational },
    /// `0 ∝ cZ`, `c > 0`.
    ZeroScaled { c: BigRational },
    /// `0 ∝ Q`.
    ZeroFull,
    /// `Q ∝ Q`.
    Total,
    Zero,
}

impl fmt::Display for ZQFractional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZQFractional::ScaledLine { c } => write!(f, "({c})Z ∝ Q"),
            ZQFractional::ZeroScaled { c } => write!(f, "0 ∝ ({c})Z"),
            ZQFractional::ZeroFull => f.write_str("0 ∝ Q"),
            ZQFractional::Total => f.write_str("Q ∝ Q"),
            ZQFractional::Zero => f.write_str("0"),
        }
    }
}

impl ZQFractional {
    pub fn ring() -> Self {
        ZQFractional::ScaledLine { c: BigRational::one() }
    }

    /// The pair (first-coordinate subgroup, second-coordinate subgroup).
    pub fn parts(&self) -> (QLine, QLine) {
        match self {
            ZQFractional::ScaledLine { c } => (QLine::Scaled(c.clone()), QLine::Full),
            ZQFractional::ZeroScaled { c } => (QLine::Zero, QLine::Scaled(c.clone())),
            ZQFractional::ZeroFull => (QLine::Zero, QLine::Full),
            ZQFractional::Total => (QLine::Full, QLine::Full),
            ZQFractional::Zero => (QLine::Zero, QLine::Zero),
        }
    }

    pub fn from_parts(a: QLine, e: QLine) -> Result<Self> {
        Ok(match (a, e) {
            (QLine::Scaled(c), QLine::Full) => ZQFractional::ScaledLine { c },
            (QLine::Zero, QLine::Scaled(c)) => ZQFractional::ZeroScaled { c },
            (QLine::Zero, QLine::Full) => ZQFractional::ZeroFull,
            (QLine::Full, QLine::Full) => ZQFractional::Total,
            (QLine::Zero, QLine::Zero) => ZQFractional::Zero,
            _ => return Err(Error::InvalidInput("not an R-submodule of Q ∝ Q of the tracked shapes".into())),
        })
    }

    pub fn contains(&self, x: &QQElement) -> bool {
        let (a, e) = self.parts();
        a.contains(&x.a) && e.contains(&x.q)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        let (a1, e1) = self.parts();
        let (a2, e2) = other.parts();
        Self::from_parts(a1.sum(&a2), e1.sum(&e2))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        let (a1, e1) = self.parts();
        let (a2, e2) = other.parts();
        Self::from_parts(a1.meet(&a2), e1.meet(&e2))
    }

    /// Finitely many elements generating it as an `R`-module, when it is
    /// finitely generated.
    pub fn generators(&self) -> Option<Vec<QQElement>> {
        match self {
            ZQFractional::ScaledLine { c } => Some(vec![QQElement {
                a: c.clone(),
                q: BigRational::zero(),
            }]),
            ZQFractional::ZeroScaled { c } => Some(vec![QQElement {
                a: BigRational::zero(),
                q: c.clone(),
            }]),
            ZQFractional::Zero => Some(Vec::new()),
            ZQFractional::ZeroFull | ZQFractional::Total => None,
        }
    }

    /// Elements that, together with their `R`-multiples and the given
    /// rationals, generate it: used by sampling checks.
    pub fn spanning_sample(&self, ts: &[BigRational]) -> Vec<QQElement> {
        let (a, e) = self.parts();
        let mut out = Vec::new();
        match a {
            QLine::Zero => {}
            QLine::Scaled(c) => out.push(QQElement {
                a: c,
                q: BigRational::zero(),
            }),
            QLine::Full => out.extend(ts.iter().map(|t| QQElement {
                a: t.clone(),
                q: BigRational::zero(),
            })),
        }
        match e {
            QLine::Zero => {}
            QLine::Scaled(c) => out.push(QQElement {
                a: BigRational::zero(),
                q: c,
            }),
            QLine::Full => out.extend(ts.iter().map(|t| QQElement {
                a: BigRational::zero(),
                q: t.clone(),
            })),
        }
        out
    }
}

/// `(R : F)` computed in `Q ∝ Q` by the closed-form table.
pub fn zq_inverse(f: &ZQFractional) -> Result<ZQFractional> {
    Ok(match f {
        ZQFractional::ScaledLine { c } => ZQFractional::ScaledLine { c: c.recip() },
        ZQFractional::ZeroScaled { .. } | ZQFractional::ZeroFull => ZQFractional::Total,
        ZQFractional::Total => ZQFractional::ZeroFull,
        ZQFractional::Zero => return Err(Error::ZeroIdeal),
    })
}

pub fn zq_v_closure(f: &ZQFractional) -> Result<ZQFractional> {
    zq_inverse(&zq_inverse(f)?)
}

/// Finitely many generators of `J` with `I^{-1} = J^{-1}`, both sides
/// recomputed.
pub fn zq_v_finite_witness(i: &ZQIdeal) -> Result<Vec<ZQElement>> {
    let f = i.to_fractional();
    let w = match &f {
        ZQFractional::Zero => return Err(Error::ZeroIdeal),
        ZQFractional::ScaledLine { c } if c.is_integer() => {
            vec![ZQElement::new(c.to_integer(), BigRational::zero())]
        }
        ZQFractional::ZeroScaled { .. } | ZQFractional::ZeroFull => {
            vec![ZQElement::new(0, BigRational::one())]
        }
        _ => return Err(Error::InvalidInput(alloc::format!("{f} is not an integral ideal"))),
    };
    if zq_inverse(&zq_ideal_nf(&w).to_fractional())? != zq_inverse(&f)? {
        return Err(Error::Internal("v-finite witness has a different inverse"));
    }
    Ok(w)
}

/// As an `R`-module: `ScaledLine`, `ZeroScaled` and `Zero` are cyclic;
/// `0 ∝ Q` and `Q ∝ Q` are not finitely generated.
pub fn zq_is_fg(f: &ZQFractional) -> bool {
    f.generators().is_some()
}

/// Every finitely generated ideal of `Z ∝ Q` is principal; returns the
/// generator.
pub fn zq_is_principal(i: &ZQIdealNF) -> (bool, ZQElement) {
    (true, i.generator())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn el(a: i64, n: i64, d: i64) -> ZQElement {
        ZQElement::new(a, r(n, d))
    }

    #[test]
    fn multiplication_law() {
        assert_eq!(zq_mul(&el(2, 1, 3), &el(3, 1, 2)), el(6, 2, 1));
        assert_eq!(zq_mul(&el(0, 1, 1), &el(0, 1, 1)), ZQElement::zero());
    }

    #[test]
    fn regularity() {
        assert!(zq_is_regular(&el(5, 9, 7)));
        let w = zq_zero_divisor_witness(&el(0, 1, 1)).unwrap();
        assert_eq!(zq_mul(&el(0, 1, 1), &w), ZQElement::zero());
    }

    #[test]
    fn normal_forms() {
        assert_eq!(zq_ideal_nf(&[el(4, 1, 2), el(6, 7, 1)]), ZQIdealNF::FullLine { d: 2.into() });
        assert_eq!(zq_ideal_nf(&[el(0, 2, 3), el(0, 1, 2)]), ZQIdealNF::ZeroLine { g: r(1, 6) });
        assert_eq!(zq_ideal_nf(&[el(0, 1, 1)]), ZQIdealNF::ZeroLine { g: r(1, 1) });
        assert!(zq_ideal_nf(&[]).is_zero());
    }

    #[test]
    fn intersection_annihilator_colon() {
        let two = ZQIdealNF::FullLine { d: 2.into() };
        let three = ZQIdealNF::FullLine { d: 3.into() };
        assert_eq!(zq_intersection(&two, &three), ZQIdealNF::FullLine { d: 6.into() });
        assert_eq!(zq_annihilator(&el(0, 1, 1)), ZQIdeal::NotFg(ZQFractional::ZeroFull));
        assert_eq!(zq_annihilator(&el(5, 1, 2)), ZQIdeal::Fg(ZQIdealNF::zero()));
        assert_eq!(zq_colon(&ZQIdealNF::zero(), &ZQIdealNF::ZeroLine { g: r(1, 1) }), zq_annihilator(&el(0, 1, 1)));
        assert_eq!(
            zq_colon(&ZQIdealNF::FullLine { d: 4.into() }, &two),
            ZQIdeal::Fg(ZQIdealNF::FullLine { d: 2.into() })
        );
        assert_eq!(
            zq_colon(&ZQIdealNF::ZeroLine { g: r(3, 4) }, &ZQIdealNF::ZeroLine { g: r(1, 2) }),
            ZQIdeal::Fg(ZQIdealNF::FullLine { d: 3.into() })
        );
    }

    #[test]
    fn inverses_and_v_closures() {
        let f = ZQFractional::ScaledLine { c: r(2, 1) };
        assert_eq!(zq_inverse(&f).unwrap(), ZQFractional::ScaledLine { c: r(1, 2) });
        assert_eq!(zq_inverse(&ZQFractional::ring()).unwrap(), ZQFractional::ring());
        assert_eq!(zq_v_closure(&ZQFractional::ZeroScaled { c: r(1, 6) }).unwrap(), ZQFractional::ZeroFull);
        assert_eq!(zq_v_closure(&f).unwrap(), f);
        assert_eq!(zq_inverse(&ZQFractional::Zero), Err(Error::ZeroIdeal));
    }

    #[test]
    fn v_finite_witnesses() {
        let two = ZQIdeal::Fg(ZQIdealNF::FullLine { d: 2.into() });
        assert_eq!(zq_v_finite_witness(&two).unwrap(), vec![el(2, 0, 1)]);
        let z = ZQIdeal::Fg(ZQIdealNF::ZeroLine { g: r(1, 6) });
        assert_eq!(zq_v_finite_witness(&z).unwrap(), vec![el(0, 1, 1)]);
        assert_eq!(zq_v_finite_witness(&ZQIdeal::Fg(ZQIdealNF::whole())).unwrap(), vec![el(1, 0, 1)]);
        assert!(zq_v_finite_witness(&ZQIdeal::Fg(ZQIdealNF::zero())).is_err());
    }

    #[test]
    fn principal_and_fg() {
        assert_eq!(zq_is_principal(&ZQIdealNF::FullLine { d: 2.into() }).1, el(2, 0, 1));
        assert_eq!(zq_is_principal(&ZQIdealNF::ZeroLine { g: r(3, 4) }).1, el(0, 3, 4));
        assert!(!zq_is_fg(&ZQFractional::ZeroFull));
        assert!(!zq_is_fg(&ZQFractional::Total));
        assert!(zq_is_fg(&ZQFractional::ScaledLine { c: r(1, 2) }));
    }

    #[test]
    fn fractional_lattice_operations() {
        let a = ZQFractional::ScaledLine { c: r(1, 2) };
        let b = ZQFractional::ScaledLine { c: r(1, 3) };
        assert_eq!(a.sum(&b).unwrap(), ZQFractional::ScaledLine { c: r(1, 6) });
        assert_eq!(a.intersection(&b).unwrap(), ZQFractional::ScaledLine { c: r(1, 1) });
        assert_eq!(a.intersection(&ZQFractional::ZeroFull).unwrap(), ZQFractional::ZeroFull);
        assert_eq!(ZQFractional::Total.sum(&a).unwrap(), ZQFractional::Total);
    }
}
