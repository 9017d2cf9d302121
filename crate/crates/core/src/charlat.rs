//! Weight lattices and the ring of formal characters.
//!
//! A [`FormalCharacter`] is a finite ℤ-combination of lattice characters
//! `[λ]`. Every exact identity in the crate (Weyl denominators, branching,
//! twining characters) is checked in this ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::linalg::{self, rat, RatMatrix};

/// Integer coordinates of a character in a fixed basis of X*(T).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        Weight(self.0.iter().map(|x| x * k).collect())
    }

    pub fn sup_norm(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// X*(T) with a positive-definite rational inner product.
///
/// Pairings are also cached as integers scaled by a common denominator so
/// that length comparisons never leave ℤ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    gram: RatMatrix,
    scaled: Vec<Vec<i128>>,
    denom: i128,
}

impl Lattice {
    pub fn new(gram: RatMatrix) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidLattice("gram matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidLattice(format!("gram not symmetric at ({i},{j})")));
                }
            }
        }
        for k in 1..=n {
            let minor: RatMatrix = gram[..k].iter().map(|r| r[..k].to_vec()).collect();
            if !linalg::det(&minor).is_positive() {
                return Err(Error::InvalidLattice(format!("leading minor {k} is not positive")));
            }
        }
        let denom = gram
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let scaled = gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|q| (q.numer() * (&denom / q.denom())).to_i128().expect("gram entry overflow"))
                    .collect()
            })
            .collect();
        Ok(Self { gram, scaled, denom: denom.to_i128().expect("gram denominator overflow") })
    }

    pub fn from_integers(gram: &[Vec<i64>]) -> Result<Self> {
        Self::new(gram.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    pub fn identity(rank: usize) -> Self {
        let g = (0..rank).map(|i| (0..rank).map(|j| rat(i64::from(i == j))).collect()).collect();
        Self::new(g).expect("identity gram is positive definite")
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(parts: &[&Lattice]) -> Result<Self> {
        let n: usize = parts.iter().map(|l| l.rank()).sum();
        let mut g = vec![vec![rat(0); n]; n];
        let mut off = 0;
        for l in parts {
            for i in 0..l.rank() {
                for j in 0..l.rank() {
                    g[off + i][off + j] = l.gram[i][j].clone();
                }
            }
            off += l.rank();
        }
        Self::new(g)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    /// `denom · (a, b)`, exact.
    pub fn inner_scaled(&self, a: &[i64], b: &[i64]) -> i128 {
        let mut s = 0i128;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    s += self.scaled[i][j] * x as i128 * y as i128;
                }
            }
        }
        s
    }

    /// The common denominator used by [`Lattice::inner_scaled`].
    pub fn denom(&self) -> i128 {
        self.denom
    }

    pub fn inner(&self, a: &Weight, b: &Weight) -> BigRational {
        BigRational::new(BigInt::from(self.inner_scaled(&a.0, &b.0)), BigInt::from(self.denom))
    }

    pub fn norm_sq(&self, w: &Weight) -> BigRational {
        self.inner(w, w)
    }
}

/// A point of the torus, `exp(2πi·angle)` in each coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusPoint {
    angles: Vec<Rational64>,
}

impl TorusPoint {
    pub fn new(angles: Vec<Rational64>) -> Self {
        Self { angles: angles.into_iter().map(reduce_mod_one).collect() }
    }

    pub fn identity(rank: usize) -> Self {
        Self { angles: vec![Rational64::zero(); rank] }
    }

    pub fn angles(&self) -> &[Rational64] {
        &self.angles
    }

    pub fn rank(&self) -> usize {
        self.angles.len()
    }

    /// Smallest m with m·angle ∈ ℤ for all coordinates.
    pub fn order(&self) -> u64 {
        self.angles.iter().fold(1u64, |acc, a| acc.lcm(&(*a.denom() as u64)))
    }

    /// ⟨λ, x⟩ mod 1.
    pub fn pairing(&self, w: &Weight) -> Rational64 {
        let s = w
            .0
            .iter()
            .zip(&self.angles)
            .fold(Rational64::zero(), |acc, (&c, a)| acc + *a * c);
        reduce_mod_one(s)
    }
}

pub(crate) fn reduce_mod_one(q: Rational64) -> Rational64 {
    q - q.floor()
}

/// A finite ℤ-linear combination of lattice characters.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormalCharacter {
    rank: usize,
    terms: BTreeMap<Weight, BigInt>,
}

impl FormalCharacter {
    pub fn zero(rank: usize) -> Self {
        Self { rank, terms: BTreeMap::new() }
    }

    /// The trivial character `[0]`.
    pub fn one(rank: usize) -> Self {
        Self::monomial(Weight::zero(rank), 1)
    }

    pub fn monomial(w: Weight, c: impl Into<BigInt>) -> Self {
        let mut s = Self::zero(w.rank());
        s.add_term(w, c.into());
        s
    }

    pub fn from_terms<C: Into<BigInt>>(rank: usize, terms: impl IntoIterator<Item = (Weight, C)>) -> Self {
        let mut s = Self::zero(rank);
        for (w, c) in terms {
            assert_eq!(w.rank(), rank, "weight rank mismatch");
            s.add_term(w, c.into());
        }
        s
    }

    pub fn add_term(&mut self, w: Weight, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Weight) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.terms.keys()
    }

    /// Sum of coefficients, i.e. the value at the identity.
    pub fn degree(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.rank);
        }
        Self { rank: self.rank, terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect() }
    }

    /// Pushforward along a map of lattices; coefficients of colliding images add.
    pub fn map_weights(&self, rank: usize, f: impl Fn(&Weight) -> Weight) -> Self {
        let mut out = Self::zero(rank);
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }

    /// Per-coordinate maximum of |coord| over the support.
    pub fn coord_bounds(&self) -> Vec<i64> {
        let mut b = vec![0; self.rank];
        for w in self.terms.keys() {
            for (i, &x) in w.0.iter().enumerate() {
                b[i] = b[i].max(x.abs());
            }
        }
        b
    }

    /// Exact quotient by the binomial `1 − [−β]`.
    ///
    /// Along each line `ν + ℤβ` the quotient is the suffix sum of the
    /// numerator; divisibility is equivalent to every line summing to zero.
    pub fn div_binomial(&self, beta: &Weight) -> Result<Self> {
        if beta.is_zero() {
            return Err(Error::DivisionRemainder("division by 1 - [0] = 0".into()));
        }
        let pivot = beta.0.iter().position(|&x| x != 0).expect("nonzero beta");
        let b = beta.0[pivot];
        let mut lines: BTreeMap<Weight, BTreeMap<i64, BigInt>> = BTreeMap::new();
        for (w, c) in &self.terms {
            let q = Integer::div_floor(&w.0[pivot], &b);
            let base = w - &beta.scaled(q);
            lines.entry(base).or_default().insert(q, c.clone());
        }
        let mut out = Self::zero(self.rank);
        for (base, line) in lines {
            let total: BigInt = line.values().sum();
            if !total.is_zero() {
                return Err(Error::DivisionRemainder(format!(
                    "line through {base} in direction {beta} sums to {total}"
                )));
            }
            let lo = *line.keys().next().unwrap();
            let hi = *line.keys().next_back().unwrap();
            let mut acc = BigInt::zero();
            for q in (lo..=hi).rev() {
                if let Some(c) = line.get(&q) {
                    acc += c;
                }
                out.add_term(&base + &beta.scaled(q), acc.clone());
            }
        }
        Ok(out)
    }

    /// Floating evaluation at real angles (each coordinate is `exp(2πi·angle)`).
    pub fn eval_angles(&self, angles: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(w, c)| {
                let phase: f64 = w.0.iter().zip(angles).map(|(&k, &a)| k as f64 * a).sum();
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), std::f64::consts::TAU * phase)
            })
            .sum()
    }

    fn check_rank(&self, other: usize) -> Result<()> {
        if self.rank == other {
            Ok(())
        } else {
            Err(Error::RankMismatch { expected: self.rank, found: other })
        }
    }
}

impl fmt::Debug for FormalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FormalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}[{w}]")?;
        }
        Ok(())
    }
}

impl Add for &FormalCharacter {
    type Output = FormalCharacter;
    fn add(self, rhs: &FormalCharacter) -> FormalCharacter {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &FormalCharacter {
    type Output = FormalCharacter;
    fn sub(self, rhs: &FormalCharacter) -> FormalCharacter {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &FormalCharacter {
    type Output = FormalCharacter;
    fn neg(self) -> FormalCharacter {
        FormalCharacter { rank: self.rank, terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Mul for &FormalCharacter {
    type Output = FormalCharacter;
    fn mul(self, rhs: &FormalCharacter) -> FormalCharacter {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = FormalCharacter::zero(self.rank);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for FormalCharacter {
            type Output = FormalCharacter;
            fn $f(self, rhs: FormalCharacter) -> FormalCharacter {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Convolution product, checking ranks.
pub fn fc_mul(a: &FormalCharacter, b: &FormalCharacter) -> Result<FormalCharacter> {
    a.check_rank(b.rank)?;
    Ok(a * b)
}

/// The support weight of maximal length, ties broken by the lexicographically
/// largest coordinates, together with its coefficient.
pub fn leading_term(c: &FormalCharacter, lat: &Lattice) -> Result<(Weight, BigInt)> {
    c.check_rank(lat.rank())?;
    c.terms
        .iter()
        .max_by(|(a, _), (b, _)| {
            lat.inner_scaled(&a.0, &a.0)
                .cmp(&lat.inner_scaled(&b.0, &b.0))
                .then_with(|| a.cmp(b))
        })
        .map(|(w, k)| (w.clone(), k.clone()))
        .ok_or(Error::ZeroCharacter)
}

/// Floating evaluation `Σ c(λ)·exp(2πi⟨λ, x⟩)`.
pub fn fc_eval(c: &FormalCharacter, x: &TorusPoint) -> Result<Complex64> {
    c.check_rank(x.rank())?;
    Ok(c.terms
        .iter()
        .map(|(w, k)| {
            let p = x.pairing(w);
            let phase = *p.numer() as f64 / *p.denom() as f64;
            Complex64::from_polar(k.to_f64().unwrap_or(f64::NAN), std::f64::consts::TAU * phase)
        })
        .sum())
}

/// Exact evaluation in ℤ[ζ_m], m the order of `x`.
pub fn fc_eval_exact(c: &FormalCharacter, x: &TorusPoint) -> Result<Cyclotomic> {
    c.check_rank(x.rank())?;
    let m = x.order();
    let mut poly = vec![BigInt::zero(); m as usize];
    for (w, k) in &c.terms {
        let p = x.pairing(w);
        let e = (*p.numer() as u64 * (m / *p.denom() as u64)) % m;
        poly[e as usize] += k;
    }
    Ok(Cyclotomic::from_poly(m, poly))
}
