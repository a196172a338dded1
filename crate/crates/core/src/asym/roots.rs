//! Real-root isolation and refinement over the rationals with Sturm
//! sequences and bisection.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{rat, to_common_denominator, Poly, Rational};

/// An open interval `(low, high)` holding exactly one real root of `poly`,
/// which has opposite nonzero signs at the two ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootEnclosure {
    pub poly: Poly,
    pub low: Rational,
    pub high: Rational,
}

fn sign_at(p: &Poly, x: &Rational) -> Ordering {
    p.eval(x).cmp(&Rational::zero())
}

/// Divides out the positive integer content, keeping the sign of every
/// coefficient.
fn positive_primitive(p: &Poly) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let (nums, _) = to_common_denominator(p.coeffs());
    let g = nums.iter().fold(BigInt::zero(), |g, n| g.gcd(n));
    Poly::from_bigints(nums.into_iter().map(|n| n / &g).collect())
}

/// Sturm sequence `p, p', -rem(p, p'), ...`, each term scaled by a positive
/// constant.
pub fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![positive_primitive(p), positive_primitive(&p.derivative())];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            return seq;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        seq.push(positive_primitive(&-r));
    }
}

fn variations(seq: &[Poly], x: &Rational) -> usize {
    let mut count = 0;
    let mut last = Ordering::Equal;
    for s in seq {
        let v = sign_at(s, x);
        if v == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && v != last {
            count += 1;
        }
        last = v;
    }
    count
}

/// Number of distinct real roots of `p` in `(a, b]`.
pub fn count_roots(p: &Poly, a: &Rational, b: &Rational) -> usize {
    let seq = sturm_sequence(&p.squarefree());
    variations(&seq, a) - variations(&seq, b)
}

/// Bound `1 + max |a_i / a_n|` on the absolute value of every root.
fn cauchy_bound(p: &Poly) -> Rational {
    let lead = p.leading().abs();
    let deg = p.degree().unwrap_or(0);
    let m = p.coeffs()[..deg]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    m + Rational::one()
}

/// A split point strictly inside `(a, b)` where `p` does not vanish.
fn split_point(p: &Poly, a: &Rational, b: &Rational) -> Rational {
    let w = b - a;
    for (n, d) in [(1, 2), (3, 7), (4, 7), (2, 5), (3, 5), (1, 3), (2, 3)] {
        let m = a + &w * rat(n, d);
        if !p.eval(&m).is_zero() {
            return m;
        }
    }
    unreachable!("a nonzero polynomial has at most one root among these points")
}

/// Disjoint isolating intervals for the positive real roots of `p`, sorted
/// ascending.
pub fn isolate_positive_roots(p: &Poly) -> Vec<RootEnclosure> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let v = p.valuation().unwrap_or(0);
    let stripped = Poly::new(p.coeffs()[v..].to_vec());
    let q = stripped.squarefree();
    if q.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let seq = sturm_sequence(&q);
    let mut out = Vec::new();
    let mut stack = vec![(Rational::zero(), cauchy_bound(&q))];
    while let Some((a, b)) = stack.pop() {
        let n = variations(&seq, &a) - variations(&seq, &b);
        match n {
            0 => {}
            1 => out.push(RootEnclosure {
                poly: q.clone(),
                low: a,
                high: b,
            }),
            _ => {
                let m = split_point(&q, &a, &b);
                stack.push((m.clone(), b));
                stack.push((a, m));
            }
        }
    }
    out.sort_by(|x, y| x.low.cmp(&y.low));
    out
}

impl RootEnclosure {
    pub fn width(&self) -> Rational {
        &self.high - &self.low
    }

    pub fn midpoint(&self) -> Rational {
        (&self.low + &self.high) / Rational::from_integer(2.into())
    }

    /// One bisection step; the new interval lies inside the old one.
    pub fn bisect(&self) -> RootEnclosure {
        let m = self.midpoint();
        let sm = sign_at(&self.poly, &m);
        let slo = sign_at(&self.poly, &self.low);
        let (low, high) = if sm == Ordering::Equal {
            // the root is m itself; shrink around it
            let two = Rational::from_integer(2.into());
            ((&self.low + &m) / &two, (&m + &self.high) / &two)
        } else if sm == slo {
            (m, self.high.clone())
        } else {
            (self.low.clone(), m)
        };
        RootEnclosure {
            poly: self.poly.clone(),
            low,
            high,
        }
    }

    /// Bisects until the width is at most `width`.
    pub fn refine(&self, width: &Rational) -> RootEnclosure {
        let mut e = self.clone();
        while &e.width() > width {
            e = e.bisect();
        }
        e
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.low < x && x < &self.high
    }

    /// Whether `other` lies inside `self` (closed containment).
    pub fn encloses(&self, other: &RootEnclosure) -> bool {
        self.low <= other.low && other.high <= self.high
    }
}
