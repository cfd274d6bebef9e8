//! Exact arithmetic in the Gaussian rationals Q(i).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// An element `re + im*i` of Q(i), with `i^2 = -1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        GaussRat {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussRat {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn zero() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        GaussRat {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let norm = &self.re * &self.re + &self.im * &self.im;
        GaussRat {
            re: &self.re / &norm,
            im: -&self.im / &norm,
        }
    }

    /// A square root in Q(i), when one exists.
    ///
    /// Solves `(p + qi)^2 = re + im*i` exactly; returns `None` when the root
    /// does not lie in Q(i).
    pub fn sqrt(&self) -> Option<GaussRat> {
        if self.is_zero() {
            return Some(GaussRat::zero());
        }
        // |self| = sqrt(re^2 + im^2) must be rational.
        let norm = &self.re * &self.re + &self.im * &self.im;
        let t = rational_sqrt(&norm)?;
        let two = BigRational::from_integer(BigInt::from(2));
        // p^2 = (re + t)/2, q^2 = (t - re)/2.
        let p2 = (&self.re + &t) / &two;
        let q2 = (&t - &self.re) / &two;
        let p = rational_sqrt(&p2)?;
        let q = rational_sqrt(&q2)?;
        // Fix signs so that 2pq = im; prefer p > 0, and q >= 0 when p = 0.
        let cand = |p: BigRational, q: BigRational| GaussRat { re: p, im: q };
        for (sp, sq) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let pp = if sp > 0 { p.clone() } else { -p.clone() };
            let qq = if sq > 0 { q.clone() } else { -q.clone() };
            if &two * &pp * &qq == self.im && (&pp * &pp - &qq * &qq) == self.re {
                if pp.is_positive() || (pp.is_zero() && !qq.is_negative()) {
                    return Some(cand(pp, qq));
                }
            }
        }
        None
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: &GaussRat) -> GaussRat {
        self * &rhs.inv()
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            if self.im.is_one() {
                return write!(f, "i");
            }
            return write!(f, "{}*i", self.im);
        }
        if self.im.is_positive() {
            if self.im.is_one() {
                write!(f, "{}+i", self.re)
            } else {
                write!(f, "{}+{}*i", self.re, self.im)
            }
        } else {
            let m = -&self.im;
            if m.is_one() {
                write!(f, "{}-i", self.re)
            } else {
                write!(f, "{}-{}*i", self.re, m)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussRat {
        GaussRat::from_ratio(n, d)
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussRat::i();
        assert_eq!(&i * &i, GaussRat::from_integer(-1));
    }

    #[test]
    fn half_plus_half() {
        assert_eq!(&q(1, 2) + &q(1, 2), GaussRat::one());
    }

    #[test]
    fn division_round_trips() {
        let a = GaussRat::new(
            BigRational::new(BigInt::from(3), BigInt::from(7)),
            BigRational::new(BigInt::from(-2), BigInt::from(5)),
        );
        let b = &GaussRat::i() + &q(4, 3);
        assert_eq!(&(&a / &b) * &b, a);
    }

    #[test]
    fn sqrt_of_minus_four() {
        // sqrt(-4) = 2i
        let r = GaussRat::from_integer(-4).sqrt().unwrap();
        assert_eq!(r, GaussRat::new(BigRational::zero(), BigRational::from_integer(BigInt::from(2))));
    }

    #[test]
    fn sqrt_of_2i() {
        // (1+i)^2 = 2i
        let two_i = GaussRat::new(BigRational::zero(), BigRational::from_integer(BigInt::from(2)));
        let r = two_i.sqrt().unwrap();
        assert_eq!(&r * &r, two_i);
    }

    #[test]
    fn sqrt_rejects_non_squares() {
        assert!(GaussRat::from_integer(2).sqrt().is_none());
        assert!(GaussRat::from_integer(-1).sqrt().is_some()); // = i
        assert!(GaussRat::from_integer(3).sqrt().is_none());
    }
}
