//! Reference computations for the symbolic tiers that share no code with
//! the normal forms they are checked against: breadth-first reachability
//! for subgroups of `Z`, and determinantal divisors for lattices in `Z^m`.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use trivext_core::symtriv::zq::ZQElement;

/// The subgroup `Σ s_i Z` of `Z`, tabulated by breadth-first search on a
/// window around 0.
///
/// A combination reaching `t` can be reordered so that its partial sums stay
/// within `max|s_i|` of `[min(0,t), max(0,t)]`: step up while below `t`, down
/// while above. So a window of radius `|t| + max|s_i|` decides `t` exactly.
#[derive(Debug, Clone)]
pub struct Reach {
    steps: Vec<i64>,
    radius: i64,
    seen: Vec<bool>,
}

impl Reach {
    pub fn new(steps: &[i64], radius: i64) -> Reach {
        let steps: Vec<i64> = steps.iter().map(|s| s.abs()).filter(|&s| s != 0).collect();
        let big = steps.iter().copied().max().unwrap_or(0);
        let w = radius + big;
        let mut seen = vec![false; (2 * w + 1) as usize];
        let mut queue = VecDeque::from([0i64]);
        seen[w as usize] = true;
        while let Some(x) = queue.pop_front() {
            for s in &steps {
                for y in [x + s, x - s] {
                    if y.abs() <= w && !seen[(y + w) as usize] {
                        seen[(y + w) as usize] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        Reach { steps, radius, seen }
    }

    pub fn contains(&mut self, t: i64) -> bool {
        if t.abs() > self.radius {
            *self = Reach::new(&self.steps, 2 * t.abs());
        }
        let w = self.radius + self.steps.iter().copied().max().unwrap_or(0);
        self.seen[(t + w) as usize]
    }
}

fn small(x: &BigInt) -> i64 {
    x.to_i64().expect("sample values fit in i64")
}

/// Membership in the ideal of `Z ∝ Q` generated by a list, straight from
/// `R(a,q) ∋ (b,s)(a,q) = (ba, bq + sa)`: with some `a_i ≠ 0` the second
/// coordinate is unconstrained and the first ranges over `Σ a_i Z`; with
/// every `a_i = 0` only `(0, Σ b_i q_i)` is reached.
#[derive(Debug, Clone)]
pub struct ZQOracle {
    all_a_zero: bool,
    a_reach: Reach,
    /// Common denominator of the `q_i` and the reach of the `q_i L`.
    l: BigInt,
    q_reach: Reach,
}

impl ZQOracle {
    pub fn new(gens: &[ZQElement]) -> ZQOracle {
        let all_a_zero = gens.iter().all(|x| x.a.is_zero());
        let a_steps: Vec<i64> = gens.iter().map(|x| small(&x.a)).collect();
        let l = gens.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.q.denom()));
        let lq = BigRational::from_integer(l.clone());
        let q_steps: Vec<i64> = gens.iter().map(|x| small(&(&x.q * &lq).to_integer())).collect();
        ZQOracle {
            all_a_zero,
            a_reach: Reach::new(&a_steps, 64),
            l,
            q_reach: Reach::new(&q_steps, 4096),
        }
    }

    pub fn contains(&mut self, x: &ZQElement) -> bool {
        if !self.all_a_zero {
            return self.a_reach.contains(small(&x.a));
        }
        if !x.a.is_zero() {
            return false;
        }
        let t = &x.q * BigRational::from_integer(self.l.clone());
        t.is_integer() && self.q_reach.contains(small(&t.to_integer()))
    }
}

fn det(m: &[Vec<BigRational>]) -> BigRational {
    match m.len() {
        0 => BigRational::one(),
        1 => m[0][0].clone(),
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<BigRational>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                let t = &m[0][j] * det(&minor);
                if j % 2 == 0 {
                    t
                } else {
                    -t
                }
            })
            .fold(BigRational::zero(), |a, b| a + b),
    }
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    if n < r {
        return vec![];
    }
    let mut out = subsets(n - 1, r);
    for mut s in subsets(n - 1, r - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// All `r × r` minors of a matrix.
fn minors(rows: &[Vec<BigRational>], r: usize) -> Vec<BigRational> {
    let ncols = rows.first().map_or(0, |x| x.len());
    let mut out = Vec::new();
    for rs in subsets(rows.len(), r) {
        for cs in subsets(ncols, r) {
            let sub: Vec<Vec<BigRational>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect()).collect();
            out.push(det(&sub));
        }
    }
    out
}

/// Rank over `Q` as the size of the largest nonzero minor.
pub fn rank_by_minors(rows: &[Vec<BigRational>]) -> usize {
    let ncols = rows.first().map_or(0, |x| x.len());
    (1..=rows.len().min(ncols))
        .rev()
        .find(|&r| minors(rows, r).iter().any(|d| !d.is_zero()))
        .unwrap_or(0)
}

pub fn to_q(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// `w ∈ Q·rows`.
pub fn in_q_span(rows: &[Vec<BigRational>], w: &[BigRational]) -> bool {
    let mut ext = rows.to_vec();
    ext.push(w.to_vec());
    rank_by_minors(&ext) == rank_by_minors(rows)
}

/// gcd of the `r × r` minors.
fn determinantal_divisor(rows: &[Vec<BigRational>], r: usize) -> BigInt {
    minors(rows, r)
        .iter()
        .fold(BigInt::zero(), |acc, d| acc.gcd(&d.to_integer()))
}

/// `u ∈ Σ Z·rows`. Adding `u` to a generating set keeps the rank `r` exactly
/// when `u` is in the rational span, and the index of the old lattice in the
/// new one is the ratio of the `r`-th determinantal divisors.
pub fn in_z_span(rows: &[Vec<BigInt>], u: &[BigInt]) -> bool {
    if u.iter().all(Zero::is_zero) {
        return true;
    }
    let q: Vec<Vec<BigRational>> = rows.iter().map(|r| to_q(r)).collect();
    let uq = to_q(u);
    if !in_q_span(&q, &uq) {
        return false;
    }
    let r = rank_by_minors(&q);
    let mut ext = q.clone();
    ext.push(uq);
    determinantal_divisor(&q, r).abs() == determinantal_divisor(&ext, r).abs()
}

/// The lattice spanned by `rows` is all of its rational span inside `Z^m`.
pub fn is_saturated(rows: &[Vec<BigInt>]) -> bool {
    let q: Vec<Vec<BigRational>> = rows.iter().map(|r| to_q(r)).collect();
    match rank_by_minors(&q) {
        0 => true,
        r => determinantal_divisor(&q, r).abs().is_one(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn reach_is_the_gcd_subgroup() {
        let mut r = Reach::new(&[6, 10], 10);
        assert!(r.contains(2));
        assert!(r.contains(-4));
        assert!(!r.contains(3));
        assert!(r.contains(1000));
        let mut z = Reach::new(&[0], 5);
        assert!(z.contains(0));
        assert!(!z.contains(1));
    }

    #[test]
    fn oracle_on_small_lists() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let mut o = ZQOracle::new(&[ZQElement::new(0, q(1, 2)), ZQElement::new(0, q(1, 3))]);
        assert!(o.contains(&ZQElement::new(0, q(1, 6))));
        assert!(!o.contains(&ZQElement::new(0, q(1, 12))));
        assert!(!o.contains(&ZQElement::new(1, q(0, 1))));
        let mut p = ZQOracle::new(&[ZQElement::new(4, q(1, 2)), ZQElement::new(6, q(0, 1))]);
        assert!(p.contains(&ZQElement::new(2, q(7, 5))));
        assert!(!p.contains(&ZQElement::new(3, q(0, 1))));
    }

    #[test]
    fn lattice_membership_by_minors() {
        let rows = vec![ints(&[2, 0]), ints(&[3, 0])];
        assert!(in_z_span(&rows, &ints(&[1, 0])));
        assert!(!in_z_span(&rows, &ints(&[1, 1])));
        let rows = vec![ints(&[2, 0]), ints(&[0, 2]), ints(&[1, 1])];
        assert!(in_z_span(&rows, &ints(&[1, -1])));
        assert!(!in_z_span(&rows, &ints(&[1, 0])));
        assert_eq!(rank_by_minors(&[to_q(&ints(&[1, 2, 3])), to_q(&ints(&[2, 4, 6]))]), 1);
        assert!(is_saturated(&[ints(&[2, -1, 0])]));
        assert!(!is_saturated(&[ints(&[2, 0])]));
    }
}
