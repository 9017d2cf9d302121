//! Exact arithmetic in ℤ[ζ_m].
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(m)-1}` modulo the
//! m-th cyclotomic polynomial, which makes the representation canonical: two
//! values are equal iff their coefficient vectors are. Binary operations on
//! values of different conductors lift both to the lcm.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (low degree first) of the m-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u64) -> Arc<Vec<BigInt>> {
    assert!(m >= 1, "conductor must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let div = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &div);
        }
    }
    let p = Arc::new(num);
    phi_cache().lock().unwrap().insert(m, p.clone());
    p
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = &den[dd];
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dd] / lead;
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Euler's totient.
pub fn totient(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// An element of ℤ[ζ_m] in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    m: u64,
    coeffs: Vec<BigInt>,
}

impl Cyclotomic {
    pub fn zero(m: u64) -> Self {
        Self { m, coeffs: vec![BigInt::zero(); totient(m) as usize] }
    }

    pub fn from_int(m: u64, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = n.into();
        z
    }

    /// ζ_m^k, with k reduced mod m.
    pub fn from_root(m: u64, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut poly = vec![BigInt::zero(); e + 1];
        poly[e] = BigInt::one();
        Self::from_poly(m, poly)
    }

    /// Reduces an arbitrary polynomial in ζ_m to canonical form.
    pub fn from_poly(m: u64, poly: Vec<BigInt>) -> Self {
        let mu = m as usize;
        // reduce modulo x^m - 1 first
        let mut folded = vec![BigInt::zero(); mu.max(1)];
        for (i, c) in poly.into_iter().enumerate() {
            if !c.is_zero() {
                folded[i % mu] += c;
            }
        }
        let phi = cyclotomic_polynomial(m);
        let d = phi.len() - 1;
        for i in (d..folded.len()).rev() {
            let c = std::mem::take(&mut folded[i]);
            if c.is_zero() {
                continue;
            }
            // phi is monic
            for j in 0..d {
                folded[i - d + j] -= &c * &phi[j];
            }
        }
        folded.truncate(d);
        folded.resize(d, BigInt::zero());
        Self { m, coeffs: folded }
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Re-expresses the value in ℤ[ζ_big]; `big` must be a multiple of the conductor.
    pub fn lift(&self, big: u64) -> Self {
        assert!(big % self.m == 0, "conductor {} does not divide {}", self.m, big);
        if big == self.m {
            return self.clone();
        }
        let step = (big / self.m) as usize;
        let mut poly = vec![BigInt::zero(); self.coeffs.len() * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Self::from_poly(big, poly)
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        if a.m == b.m {
            return (a.clone(), b.clone());
        }
        let l = a.m.lcm(&b.m);
        (a.lift(l), b.lift(l))
    }

    /// Galois automorphism ζ ↦ ζ^k (k coprime to the conductor).
    pub fn galois(&self, k: i64) -> Self {
        let m = self.m as i64;
        assert_eq!(k.rem_euclid(m).gcd(&m), 1, "galois exponent must be a unit");
        let mut poly = vec![BigInt::zero(); self.m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[(i as i64 * k).rem_euclid(m) as usize] += c;
        }
        Self::from_poly(self.m, poly)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn to_complex(&self) -> Complex64 {
        let theta = std::f64::consts::TAU / self.m as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta * i as f64))
            .sum()
    }

    /// The integer value, or an error naming the offending representative.
    pub fn to_integer(&self) -> Result<BigInt> {
        if self.is_rational() {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotIntegral(format!("{self}")))
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self { m: self.m, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z{}", self.m)?,
                _ => write!(f, "{c}*z{}^{i}", self.m)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::aligned(self, rhs);
        Cyclotomic { m: a.m, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::aligned(self, rhs);
        Cyclotomic { m: a.m, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::aligned(self, rhs);
        let mut poly = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Cyclotomic::from_poly(a.m, poly)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { m: self.m, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $f(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// A cyclotomic numerator over a positive integer denominator, used for
/// group averages that are only collapsed to integers at the end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledCyclotomic {
    pub num: Cyclotomic,
    pub den: BigInt,
}

impl ScaledCyclotomic {
    pub fn new(num: Cyclotomic, den: impl Into<BigInt>) -> Self {
        let den = den.into();
        assert!(den.is_positive(), "denominator must be positive");
        Self { num, den }
    }

    pub fn to_integer(&self) -> Result<BigInt> {
        let n = self.num.to_integer()?;
        let (q, r) = n.div_rem(&self.den);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotIntegral(format!("({}) / {}", self.num, self.den)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn cyclotomic_polynomials() {
        let p = |m| cyclotomic_polynomial(m).iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(p(1), vec![-1, 1]);
        assert_eq!(p(4), vec![1, 0, 1]);
        assert_eq!(p(6), vec![1, -1, 1]);
        assert_eq!(p(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(12), 4);
        assert_eq!(totient(1), 1);
    }

    #[test]
    fn roots_of_unity_sums() {
        assert_eq!(Cyclotomic::from_root(1, 0).to_integer().unwrap(), int(1));
        let s = &Cyclotomic::from_root(4, 1) + &Cyclotomic::from_root(4, 3);
        assert!(s.is_zero());
        assert_eq!(s.to_integer().unwrap(), int(0));
        let t = (0..3).map(|k| Cyclotomic::from_root(3, k)).fold(Cyclotomic::zero(3), |a, b| a + b);
        assert!(t.is_zero());
        let two = &Cyclotomic::from_int(5, 1) + &Cyclotomic::from_int(5, 1);
        assert_eq!(two.to_integer().unwrap(), int(2));
    }

    #[test]
    fn phi_vanishes_at_zeta() {
        for m in 1..=30u64 {
            let phi = cyclotomic_polynomial(m);
            let z = Cyclotomic::from_poly(m, phi.to_vec());
            assert!(z.is_zero(), "Φ_{m}(ζ_{m}) != 0");
        }
    }

    #[test]
    fn scaled_average_collapses() {
        let num = Cyclotomic::from_int(4, 8);
        assert_eq!(ScaledCyclotomic::new(num, 4).to_integer().unwrap(), int(2));
        let bad = ScaledCyclotomic::new(Cyclotomic::from_int(4, 3), 4);
        assert!(matches!(bad.to_integer(), Err(Error::NotIntegral(_))));
        let irr = Cyclotomic::from_root(4, 1);
        assert!(matches!(irr.to_integer(), Err(Error::NotIntegral(_))));
    }

    #[test]
    fn mixed_conductors_lift() {
        // ζ_4 = ζ_12^3
        let a = Cyclotomic::from_root(4, 1);
        let b = Cyclotomic::from_root(12, 3);
        assert!((&a - &b).is_zero());
        let c = &Cyclotomic::from_root(3, 1) * &Cyclotomic::from_root(4, 1);
        assert_eq!(c, Cyclotomic::from_root(12, 7));
    }

    fn arb_cyc(m: u64) -> impl Strategy<Value = Cyclotomic> {
        proptest::collection::vec(-5i64..=5, m as usize)
            .prop_map(move |v| Cyclotomic::from_poly(m, v.into_iter().map(BigInt::from).collect()))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_cyc(12), b in arb_cyc(12), c in arb_cyc(12)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            let z = (&a * &b).to_complex() - a.to_complex() * b.to_complex();
            prop_assert!(z.norm() < 1e-9);
        }

        #[test]
        fn galois_is_a_ring_map(a in arb_cyc(8), b in arb_cyc(8), k in prop::sample::select(vec![1i64, 3, 5, 7])) {
            prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
            prop_assert_eq!((&a + &b).galois(k), &a.galois(k) + &b.galois(k));
        }

        #[test]
        fn galois_fixed_values_are_rational(a in arb_cyc(12)) {
            // the trace to ℚ is fixed by every conjugation
            let tr = [1i64, 5, 7, 11].iter().map(|&k| a.galois(k)).fold(Cyclotomic::zero(12), |s, x| s + x);
            for k in [5i64, 7, 11] {
                prop_assert_eq!(tr.galois(k), tr.clone());
            }
            prop_assert!(tr.is_rational());
            // integers are stable under conjugation
            let n = Cyclotomic::from_int(12, 7);
            prop_assert_eq!(n.galois(5), n);
        }
    }
}
