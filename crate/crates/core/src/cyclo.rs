//! Exact arithmetic in cyclotomic fields `Q(zeta_m)`.
//!
//! A value is stored in the power basis `1, z, .., z^(phi(m)-1)` of
//! `Q[x] / Phi_m(x)` with integer numerators over one positive common
//! denominator. The power basis is a `Q`-basis, so the representation is
//! canonical: two values of the same conductor are equal iff their
//! coefficient vectors are. Values of different conductors are compared and
//! combined in `Q(zeta_lcm)`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest conductor accepted.
pub const CONDUCTOR_CAP: u64 = 10_000;

/// `Q(zeta_m)` together with the coefficients of `Phi_m`.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    m: u64,
    /// `Phi_m` from the constant term up, monic.
    phi: Vec<i64>,
}

impl CyclotomicField {
    pub fn new(m: u64) -> Result<Arc<Self>> {
        if m == 0 || m > CONDUCTOR_CAP {
            return Err(Error::ConductorTooLarge(m));
        }
        Ok(Arc::new(Self {
            m,
            phi: cyclotomic_polynomial(m),
        }))
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    /// `phi(m)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Reduces an integer polynomial in `z` modulo `Phi_m`.
    fn reduce_i128(&self, mut p: Vec<i128>) -> Vec<i128> {
        let d = self.degree();
        for i in (d..p.len()).rev() {
            let c = p[i];
            if c != 0 {
                for (j, &f) in self.phi.iter().enumerate().take(d) {
                    p[i - d + j] -= c * f as i128;
                }
                p[i] = 0;
            }
        }
        p.resize(d, 0);
        p
    }

    fn reduce_big(&self, mut p: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree();
        for i in (d..p.len()).rev() {
            if !p[i].is_zero() {
                let c = core::mem::take(&mut p[i]);
                for (j, &f) in self.phi.iter().enumerate().take(d) {
                    if f != 0 {
                        p[i - d + j] -= &c * f;
                    }
                }
            }
        }
        p.resize(d, BigInt::zero());
        p
    }

    /// `sum_k counts[k] z^k` for `counts` of length `m`.
    pub fn from_root_counts(self: &Arc<Self>, counts: &[i64]) -> Cyclotomic {
        debug_assert_eq!(counts.len() as u64, self.m);
        let poly: Vec<i128> = counts.iter().map(|&c| c as i128).collect();
        let reduced = self.reduce_i128(poly);
        Cyclotomic::from_parts(
            self.clone(),
            reduced.into_iter().map(BigInt::from).collect(),
            BigInt::one(),
        )
    }

    /// `z^k`.
    pub fn root(self: &Arc<Self>, k: i64) -> Cyclotomic {
        let mut counts = alloc::vec![0i64; self.m as usize];
        counts[k.rem_euclid(self.m as i64) as usize] = 1;
        self.from_root_counts(&counts)
    }

    pub fn from_rational(self: &Arc<Self>, q: &BigRational) -> Cyclotomic {
        let mut num = alloc::vec![BigInt::zero(); self.degree()];
        num[0] = q.numer().clone();
        Cyclotomic::from_parts(self.clone(), num, q.denom().clone())
    }

    pub fn zero(self: &Arc<Self>) -> Cyclotomic {
        Cyclotomic::from_parts(self.clone(), alloc::vec![BigInt::zero(); self.degree()], BigInt::one())
    }
}

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m % d == 0).collect()
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `Phi_m` as integer coefficients, constant term first, from
/// `Phi_m = prod_{d | m} (x^d - 1)^mu(m/d)`.
fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    let mut p: Vec<i64> = alloc::vec![1];
    let mut denominators = Vec::new();
    for d in divisors(m) {
        match mobius(m / d) {
            1 => {
                let d = d as usize;
                let mut q = alloc::vec![0i64; p.len() + d];
                for (i, &c) in p.iter().enumerate() {
                    q[i + d] += c;
                    q[i] -= c;
                }
                p = q;
            }
            -1 => denominators.push(d as usize),
            _ => {}
        }
    }
    for d in denominators {
        // Exact division by x^d - 1: q_i = p_(i+d) + q_(i+d), from the top.
        let deg = p.len() - 1 - d;
        let mut q = alloc::vec![0i64; deg + 1];
        for i in (0..=deg).rev() {
            let above = if i + d <= deg { q[i + d] } else { 0 };
            q[i] = p[i + d] + above;
        }
        p = q;
    }
    p
}

/// An element of `Q(zeta_m)`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    fn from_parts(field: Arc<CyclotomicField>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut v = Self { field, num, den };
        v.normalize();
        v
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -core::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -core::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() && !g.is_zero() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        rational_field().from_rational(q)
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// `exp(2 pi i k / m)`.
    pub fn root_of_unity(m: u64, k: i64) -> Result<Self> {
        Ok(CyclotomicField::new(m)?.root(k))
    }

    pub fn conductor(&self) -> u64 {
        self.field.m
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Power-basis coefficients `c_0, .., c_(phi(m)-1)`.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        let q = self.to_rational()?;
        q.is_integer().then(|| q.to_integer())
    }

    /// Re-expresses the value in `Q(zeta_target)`; `target` must be a
    /// multiple of the conductor.
    pub fn embed(&self, target: &Arc<CyclotomicField>) -> Self {
        if Arc::ptr_eq(&self.field, target) || self.field.m == target.m {
            return Self {
                field: target.clone(),
                num: self.num.clone(),
                den: self.den.clone(),
            };
        }
        assert_eq!(target.m % self.field.m, 0, "embedding needs a multiple conductor");
        let step = (target.m / self.field.m) as usize;
        let mut poly = alloc::vec![BigInt::zero(); target.m as usize];
        for (k, c) in self.num.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Self::from_parts(target.clone(), target.reduce_big(poly), self.den.clone())
    }

    fn unify(&self, other: &Self) -> Result<(Self, Self)> {
        if self.field.m == other.field.m {
            return Ok((self.clone(), other.embed(&self.field)));
        }
        let l = num_integer::lcm(self.field.m, other.field.m);
        let target = if l == self.field.m {
            self.field.clone()
        } else if l == other.field.m {
            other.field.clone()
        } else {
            CyclotomicField::new(l)?
        };
        Ok((self.embed(&target), other.embed(&target)))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.unify(other)?;
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| x * &b.den + y * &a.den)
            .collect();
        Ok(Self::from_parts(a.field, num, &a.den * &b.den))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.unify(other)?;
        let d = a.field.degree();
        let mut poly = alloc::vec![BigInt::zero(); 2 * d];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        let num = a.field.reduce_big(poly);
        Ok(Self::from_parts(a.field, num, &a.den * &b.den))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::from_parts(self.field.clone(), num, &self.den * q.denom())
    }

    /// Image under the Galois automorphism `z -> z^t`, `gcd(t, m) = 1`.
    pub fn galois(&self, t: i64) -> Self {
        let m = self.field.m as i64;
        let mut poly = alloc::vec![BigInt::zero(); m as usize];
        for (k, c) in self.num.iter().enumerate() {
            let e = (k as i64 * t).rem_euclid(m) as usize;
            poly[e] += c;
        }
        Self::from_parts(self.field.clone(), self.field.reduce_big(poly), self.den.clone())
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// `|z|^2 = z * conj(z)`, a totally nonnegative real value; rational only
    /// in special cases such as roots of unity.
    pub fn abs_squared(&self) -> Self {
        self * &self.conj()
    }

    /// Approximate `(re, im)` given cosine and sine of `2 pi k / m`.
    pub fn to_complex_with(&self, cis: impl Fn(u64, u64) -> (f64, f64)) -> (f64, f64) {
        let den = bigint_to_f64(&self.den);
        let (mut re, mut im) = (0.0, 0.0);
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (cr, ci) = cis(k as u64, self.field.m);
            let v = bigint_to_f64(c) / den;
            re += v * cr;
            im += v * ci;
        }
        (re, im)
    }
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

fn rational_field() -> Arc<CyclotomicField> {
    Arc::new(CyclotomicField {
        m: 1,
        phi: alloc::vec![-1, 1],
    })
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        match self.unify(other) {
            Ok((a, b)) => a.den == b.den && a.num == b.num,
            Err(_) => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (k, c) in self.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z{}", self.field.m)?,
                _ => write!(f, "({c})*z{}^{k}", self.field.m)?,
            }
        }
        Ok(())
    }
}

// Operators panic only when the lcm of two conductors exceeds the cap; use the
// `try_` methods where that can happen.
impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_add(rhs).expect("conductor cap exceeded")
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_add(&-rhs).expect("conductor cap exceeded")
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_mul(rhs).expect("conductor cap exceeded")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), alloc::vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), alloc::vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), alloc::vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), alloc::vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(105).len() - 1, 48);
        // Phi_105 is the first with a coefficient of absolute value 2.
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for m in [2u64, 3, 5, 6, 7, 12, 30] {
            let f = CyclotomicField::new(m).unwrap();
            let counts = alloc::vec![1i64; m as usize];
            assert!(f.from_root_counts(&counts).is_zero(), "m = {m}");
            let z = f.root(1);
            let mut p = Cyclotomic::one();
            for _ in 0..m {
                p = &p * &z;
            }
            assert_eq!(p, Cyclotomic::one());
        }
    }

    #[test]
    fn mixed_conductors() {
        let i = Cyclotomic::root_of_unity(4, 1).unwrap();
        let w = Cyclotomic::root_of_unity(3, 1).unwrap();
        let p = &i * &w;
        assert_eq!(p.conductor(), 12);
        assert_eq!(p, Cyclotomic::root_of_unity(12, 7).unwrap());
        let minus_one = Cyclotomic::root_of_unity(2, 1).unwrap();
        assert_eq!(minus_one, Cyclotomic::from_integer(-1));
        assert_eq!(&i * &i, minus_one);
    }

    #[test]
    fn conjugation_and_norms() {
        let z = Cyclotomic::root_of_unity(7, 2).unwrap();
        assert_eq!(z.conj(), Cyclotomic::root_of_unity(7, 5).unwrap());
        assert_eq!(z.abs_squared(), Cyclotomic::one());
        // |1 + z5|^2 = 2 + z5 + z5^-1 is real but irrational.
        let one_plus = &Cyclotomic::one() + &Cyclotomic::root_of_unity(5, 1).unwrap();
        let n = one_plus.abs_squared();
        assert_eq!(n.conj(), n);
        assert!(n.to_rational().is_none());
        let real = &z + &z.conj();
        assert_eq!(real.conj(), real);
    }

    #[test]
    fn gaussian_period_for_seven() {
        // z + z^2 + z^4 satisfies x^2 + x + 2 = 0.
        let f = CyclotomicField::new(7).unwrap();
        let mut counts = alloc::vec![0i64; 7];
        counts[1] = 1;
        counts[2] = 1;
        counts[4] = 1;
        let eta = f.from_root_counts(&counts);
        let lhs = &(&(&eta * &eta) + &eta) + &Cyclotomic::from_integer(2);
        assert!(lhs.is_zero());
    }

    #[test]
    fn conductor_cap_is_enforced() {
        assert_eq!(
            CyclotomicField::new(CONDUCTOR_CAP + 1).unwrap_err(),
            Error::ConductorTooLarge(CONDUCTOR_CAP + 1)
        );
        let a = Cyclotomic::root_of_unity(9973, 1).unwrap();
        let b = Cyclotomic::root_of_unity(7, 1).unwrap();
        assert!(matches!(a.try_mul(&b), Err(Error::ConductorTooLarge(_))));
    }

    #[test]
    fn rational_scaling() {
        let z = Cyclotomic::root_of_unity(5, 1).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let h = z.scale(&half);
        assert_eq!(&h + &h, z);
        assert_eq!(Cyclotomic::from_integer(3).to_integer(), Some(BigInt::from(3)));
        assert_eq!(h.to_rational(), None);
    }
}
