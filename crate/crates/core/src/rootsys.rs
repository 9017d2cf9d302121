//! Root data of compact connected groups.
//!
//! Weights are stored in the fundamental-weight basis (Dynkin labels), with
//! any central torus factor appended as plain coordinates. In this basis the
//! Weyl vector δ is (1,…,1, 0,…,0), dominance is coordinate-wise
//! nonnegativity, and the simple reflection `s_i` acts by `λ ↦ λ − λ_i·α_i`.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::charlat::{FormalCharacter, Lattice, Weight};
use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub fn from_char(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Self::A,
            'B' => Self::B,
            'C' => Self::C,
            'D' => Self::D,
            'E' => Self::E,
            'F' => Self::F,
            'G' => Self::G,
            _ => return None,
        })
    }

    pub fn letter(self) -> char {
        match self {
            Self::A => 'A',
            Self::B => 'B',
            Self::C => 'C',
            Self::D => 'D',
            Self::E => 'E',
            Self::F => 'F',
            Self::G => 'G',
        }
    }

    fn valid_rank(self, r: usize) -> bool {
        match self {
            Self::A => (1..=8).contains(&r),
            Self::B => (2..=8).contains(&r),
            Self::C => (3..=8).contains(&r),
            Self::D => (4..=8).contains(&r),
            Self::E => (6..=8).contains(&r),
            Self::F => r == 4,
            Self::G => r == 2,
        }
    }

    fn weyl_order(self, r: usize) -> u64 {
        let fact = |n: usize| (1..=n as u64).product::<u64>();
        match self {
            Self::A => fact(r + 1),
            Self::B | Self::C => (1u64 << r) * fact(r),
            Self::D => (1u64 << (r - 1)) * fact(r),
            Self::E => match r {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Self::F => 1_152,
            Self::G => 12,
        }
    }

    /// Gram matrix of the simple roots, long roots of squared length 2.
    fn simple_gram(self, r: usize) -> RatMatrix {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let mut b = vec![vec![q(0, 1); r]; r];
        let link = |b: &mut RatMatrix, i: usize, j: usize, v: BigRational| {
            b[i][j] = v.clone();
            b[j][i] = v;
        };
        match self {
            Self::A | Self::D | Self::E => {
                for (i, row) in b.iter_mut().enumerate() {
                    row[i] = q(2, 1);
                }
                let edges: Vec<(usize, usize)> = match self {
                    Self::A => (0..r - 1).map(|i| (i, i + 1)).collect(),
                    Self::D => (0..r - 2).map(|i| (i, i + 1)).chain([(r - 3, r - 1)]).collect(),
                    _ => [(0, 2), (1, 3)].into_iter().chain((2..r - 1).map(|i| (i, i + 1))).collect(),
                };
                for (i, j) in edges {
                    link(&mut b, i, j, q(-1, 1));
                }
            }
            Self::B => {
                for (i, row) in b.iter_mut().enumerate() {
                    row[i] = q(if i + 1 == r { 1 } else { 2 }, 1);
                }
                for i in 0..r - 1 {
                    link(&mut b, i, i + 1, q(-1, 1));
                }
            }
            Self::C => {
                for (i, row) in b.iter_mut().enumerate() {
                    row[i] = q(if i + 1 == r { 2 } else { 1 }, 1);
                }
                for i in 0..r - 2 {
                    link(&mut b, i, i + 1, q(-1, 2));
                }
                link(&mut b, r - 2, r - 1, q(-1, 1));
            }
            Self::F => {
                for (i, row) in b.iter_mut().enumerate() {
                    row[i] = q(if i < 2 { 2 } else { 1 }, 1);
                }
                link(&mut b, 0, 1, q(-1, 1));
                link(&mut b, 1, 2, q(-1, 1));
                link(&mut b, 2, 3, q(-1, 2));
            }
            Self::G => {
                b[0][0] = q(2, 3);
                b[1][1] = q(2, 1);
                link(&mut b, 0, 1, q(-1, 1));
            }
        }
        b
    }
}

/// Root datum of `(simple factors) × U(1)^torus_rank`.
#[derive(Clone, Debug)]
pub struct RootDatum {
    components: Vec<(CartanType, usize)>,
    torus_rank: usize,
    ss_rank: usize,
    cartan: Vec<Vec<i64>>,
    cartan_inv: RatMatrix,
    lattice: Lattice,
    simple_roots: Vec<Weight>,
    positive_roots: Vec<Weight>,
    root_heights: Vec<i64>,
    two_delta: Weight,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components && self.torus_rank == other.torus_rank
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.components.iter().map(|(t, r)| format!("{}{r}", t.letter())).collect();
        if self.torus_rank > 0 {
            parts.push(format!("T{}", self.torus_rank));
        }
        if parts.is_empty() {
            parts.push("T0".into());
        }
        write!(f, "{}", parts.join("x"))
    }
}

/// Builds the root datum of the simple simply-connected group of the given type.
pub fn build_root_datum(label: char, rank: usize) -> Result<RootDatum> {
    RootDatum::new(&[(label, rank)], 0)
}

impl RootDatum {
    pub fn new(components: &[(char, usize)], torus_rank: usize) -> Result<Self> {
        let mut comps = Vec::new();
        for &(c, r) in components {
            let t = CartanType::from_char(c).ok_or(Error::InvalidCartan { label: c, rank: r })?;
            if !t.valid_rank(r) {
                return Err(Error::InvalidCartan { label: c, rank: r });
            }
            comps.push((t, r));
        }
        let ss_rank: usize = comps.iter().map(|c| c.1).sum();
        let n = ss_rank + torus_rank;
        let mut b = vec![vec![BigRational::zero(); ss_rank]; ss_rank];
        let mut off = 0;
        for &(t, r) in &comps {
            let g = t.simple_gram(r);
            for i in 0..r {
                for j in 0..r {
                    b[off + i][off + j] = g[i][j].clone();
                }
            }
            off += r;
        }
        // a_ij = ⟨α_i, α_j^∨⟩ = 2(α_i,α_j)/(α_j,α_j); α_i has weight coordinates a_i·
        let two = BigRational::from_integer(2.into());
        let cartan: Vec<Vec<i64>> = (0..ss_rank)
            .map(|i| {
                (0..ss_rank)
                    .map(|j| {
                        let v = &two * &b[i][j] / &b[j][j];
                        v.to_integer().to_i64().expect("cartan entry")
                    })
                    .collect()
            })
            .collect();
        let cart_q: RatMatrix = cartan
            .iter()
            .map(|r| r.iter().map(|&x| linalg::rat(x)).collect())
            .collect();
        let inv = linalg::inverse(&cart_q).ok_or_else(|| Error::InvalidLattice("singular Cartan matrix".into()))?;
        // (ϖ_i, ϖ_j) = (A⁻¹)_ij · (α_j, α_j)/2
        let mut gram = vec![vec![BigRational::zero(); n]; n];
        for i in 0..ss_rank {
            for j in 0..ss_rank {
                gram[i][j] = &inv[i][j] * &b[j][j] / &two;
            }
        }
        for i in ss_rank..n {
            gram[i][i] = BigRational::one();
        }
        let lattice = Lattice::new(gram)?;
        let simple_roots: Vec<Weight> = (0..ss_rank)
            .map(|i| {
                let mut v = cartan[i].clone();
                v.resize(n, 0);
                Weight(v)
            })
            .collect();

        // positive roots in simple-root coordinates by reflection closure
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..ss_rank {
            let mut e = vec![0; ss_rank];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..ss_rank {
                let pair: i64 = (0..ss_rank).map(|k| beta[k] * cartan[k][i]).sum();
                let mut g = beta.clone();
                g[i] -= pair;
                if g.iter().all(|&x| x >= 0) && g.iter().any(|&x| x > 0) && seen.insert(g.clone()) {
                    queue.push_back(g);
                }
            }
        }
        let mut coords: Vec<Vec<i64>> = seen.into_iter().collect();
        coords.sort_by_key(|c| (c.iter().sum::<i64>(), std::cmp::Reverse(c.clone())));
        let positive_roots = coords
            .iter()
            .map(|c| {
                let mut v = vec![0; n];
                for (k, &ck) in c.iter().enumerate() {
                    for j in 0..ss_rank {
                        v[j] += ck * cartan[k][j];
                    }
                }
                Weight(v)
            })
            .collect();
        let root_heights = coords.iter().map(|c| c.iter().sum()).collect();
        let mut td = vec![2; ss_rank];
        td.resize(n, 0);
        Ok(Self {
            components: comps,
            torus_rank,
            ss_rank,
            cartan,
            cartan_inv: inv,
            lattice,
            simple_roots,
            positive_roots,
            root_heights,
            two_delta: Weight(td),
        })
    }

    /// A torus of the given rank (empty root system).
    pub fn torus(rank: usize) -> Self {
        Self::new(&[], rank).expect("torus datum")
    }

    pub fn rank(&self) -> usize {
        self.ss_rank + self.torus_rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.ss_rank
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn components(&self) -> &[(CartanType, usize)] {
        &self.components
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Positive then negative roots.
    pub fn roots(&self) -> Vec<Weight> {
        self.positive_roots
            .iter()
            .cloned()
            .chain(self.positive_roots.iter().map(|a| -a))
            .collect()
    }

    /// 2δ, the sum of the positive roots.
    pub fn two_delta(&self) -> &Weight {
        &self.two_delta
    }

    pub fn weyl_group_order(&self) -> u64 {
        self.components.iter().map(|&(t, r)| t.weyl_order(r)).product()
    }

    /// `⟨λ, α_i^∨⟩`; in this basis just the i-th coordinate.
    pub fn coroot_pairing(&self, w: &Weight, i: usize) -> i64 {
        w.0[i]
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        w.rank() == self.rank() && w.0[..self.ss_rank].iter().all(|&x| x >= 0)
    }

    pub fn check_dominant(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found: w.rank() });
        }
        if !self.is_dominant(w) {
            return Err(Error::NotDominant(w.0.clone()));
        }
        Ok(())
    }

    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let k = w.0[i];
        if k == 0 {
            return w.clone();
        }
        w - &self.simple_roots[i].scaled(k)
    }

    /// Matrix of `s_i` acting on weight coordinates (columns are images of basis vectors).
    pub fn reflection_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut m: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
        for r in 0..n {
            m[r][i] -= self.simple_roots[i].0[r];
        }
        m
    }

    /// Dominant conjugate together with the parity of the reflections used.
    pub fn dominant_conjugate(&self, w: &Weight) -> (Weight, i8) {
        let mut v = w.clone();
        let mut sign = 1i8;
        while let Some(i) = (0..self.ss_rank).find(|&i| v.0[i] < 0) {
            v = self.reflect(i, &v);
            sign = -sign;
        }
        (v, sign)
    }

    /// Weyl orbit of `w`, each element with `(-1)^ℓ` for the breadth-first
    /// reflection depth at which it was reached from the dominant conjugate.
    pub fn weyl_orbit(&self, w: &Weight) -> Vec<(Weight, i8)> {
        let (start, _) = self.dominant_conjugate(w);
        let mut seen: HashMap<Weight, i8> = HashMap::new();
        let mut order = vec![start.clone()];
        seen.insert(start.clone(), 1);
        let mut q = VecDeque::from([start]);
        while let Some(v) = q.pop_front() {
            let s = seen[&v];
            for i in 0..self.ss_rank {
                let r = self.reflect(i, &v);
                if !seen.contains_key(&r) {
                    seen.insert(r.clone(), -s);
                    order.push(r.clone());
                    q.push_back(r);
                }
            }
        }
        order.into_iter().map(|v| {
            let s = seen[&v];
            (v, s)
        }).collect()
    }

    /// Weyl dimension formula, `Π_{α>0} (λ+δ, α)/(δ, α)`.
    pub fn weyl_dim(&self, lambda: &Weight) -> Result<u64> {
        self.check_dominant(lambda)?;
        let shifted = &lambda.scaled(2) + &self.two_delta;
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for a in &self.positive_roots {
            num *= BigInt::from(self.lattice.inner_scaled(&shifted.0, &a.0));
            den *= BigInt::from(self.lattice.inner_scaled(&self.two_delta.0, &a.0));
        }
        let (q, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(Error::NotIntegral(format!("{num}/{den}")));
        }
        q.to_u64().ok_or(Error::Overflow("weyl_dim"))
    }

    /// Dominant weights of V_λ in order of increasing depth below λ.
    fn dominant_weights_below(&self, lambda: &Weight) -> Vec<(Weight, i64)> {
        let mut depth: HashMap<Weight, i64> = HashMap::from([(lambda.clone(), 0)]);
        let mut q = VecDeque::from([lambda.clone()]);
        while let Some(mu) = q.pop_front() {
            let d = depth[&mu];
            for (a, &h) in self.positive_roots.iter().zip(&self.root_heights) {
                let nu = &mu - a;
                if self.is_dominant(&nu) && !depth.contains_key(&nu) {
                    depth.insert(nu.clone(), d + h);
                    q.push_back(nu);
                }
            }
        }
        let mut out: Vec<(Weight, i64)> = depth.into_iter().collect();
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)));
        out
    }

    /// Multiplicities of the dominant weights of V_λ by Freudenthal's recursion.
    pub fn dominant_multiplicities(&self, lambda: &Weight) -> Result<BTreeMap<Weight, u64>> {
        self.check_dominant(lambda)?;
        let lat = &self.lattice;
        let ld = &lambda.scaled(2) + &self.two_delta;
        let mut mult: HashMap<Weight, u64> = HashMap::new();
        for (mu, _) in self.dominant_weights_below(lambda) {
            if &mu == lambda {
                mult.insert(mu, 1);
                continue;
            }
            // (λ+δ)² − (μ+δ)² = (λ−μ, λ+μ+2δ)
            let lhs = lat.inner_scaled(&(lambda - &mu).0, &(&ld - &(lambda - &mu)).0);
            let mut rhs: i128 = 0;
            for a in &self.positive_roots {
                let mut k = 1;
                loop {
                    let nu = &mu + &a.scaled(k);
                    let (dom, _) = self.dominant_conjugate(&nu);
                    match mult.get(&dom) {
                        Some(&m) if m > 0 => {
                            rhs += 2 * m as i128 * lat.inner_scaled(&nu.0, &a.0);
                        }
                        _ => {
                            if !self.is_below(lambda, &dom) {
                                break;
                            }
                        }
                    }
                    k += 1;
                }
            }
            if lhs <= 0 || rhs % lhs != 0 {
                return Err(Error::NotIntegral(format!("Freudenthal quotient {rhs}/{lhs} at {mu}")));
            }
            mult.insert(mu, (rhs / lhs) as u64);
        }
        Ok(mult.into_iter().filter(|(_, m)| *m > 0).collect())
    }

    /// Whether λ − μ is a nonnegative combination of simple roots.
    fn is_below(&self, lambda: &Weight, mu: &Weight) -> bool {
        let diff = lambda - mu;
        if diff.0[self.ss_rank..].iter().any(|&x| x != 0) {
            return false;
        }
        self.root_coords(&diff).iter().all(|c| c >= &BigRational::zero())
    }

    /// Coordinates of a weight in the simple-root basis (semisimple part only).
    pub fn root_coords(&self, w: &Weight) -> Vec<BigRational> {
        let n = self.ss_rank;
        (0..n)
            .map(|j| (0..n).map(|i| linalg::rat(w.0[i]) * &self.cartan_inv[i][j]).sum())
            .collect()
    }

    /// Leading term with ties broken lexicographically on simple-root
    /// coordinates (then torus coordinates), largest first. Among a Weyl
    /// orbit this picks the dominant element.
    pub fn leading_term(&self, c: &FormalCharacter) -> Result<(Weight, BigInt)> {
        if c.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found: c.rank() });
        }
        let lat = &self.lattice;
        let top = c
            .support()
            .map(|w| lat.inner_scaled(&w.0, &w.0))
            .max()
            .ok_or(Error::ZeroCharacter)?;
        let key = |w: &Weight| (self.root_coords(w), w.0[self.ss_rank..].to_vec());
        let best = c
            .support()
            .filter(|w| lat.inner_scaled(&w.0, &w.0) == top)
            .max_by(|a, b| key(a).cmp(&key(b)))
            .expect("nonempty");
        Ok((best.clone(), c.coeff(best)))
    }

    /// Weight with the given simple-root coordinates.
    pub fn from_root_coords(&self, c: &[i64]) -> Weight {
        let mut v = vec![0; self.rank()];
        for (k, &ck) in c.iter().enumerate() {
            for (j, vj) in v.iter_mut().enumerate().take(self.ss_rank) {
                *vj += ck * self.cartan[k][j];
            }
        }
        Weight(v)
    }

    /// The full character of V_λ.
    pub fn weight_multiplicities(&self, lambda: &Weight) -> Result<FormalCharacter> {
        let dom = self.dominant_multiplicities(lambda)?;
        let mut out = FormalCharacter::zero(self.rank());
        for (mu, m) in dom {
            for (v, _) in self.weyl_orbit(&mu) {
                out.add_term(v, BigInt::from(m));
            }
        }
        Ok(out)
    }

    /// `Π_{α>0} (1 − [−α])`.
    pub fn weyl_denominator(&self) -> FormalCharacter {
        let n = self.rank();
        self.positive_roots.iter().fold(FormalCharacter::one(n), |acc, a| {
            let f = FormalCharacter::from_terms(n, [(Weight::zero(n), 1), (-a, -1)]);
            &acc * &f
        })
    }

    /// `Π_{α∈R} (1 − [−α])`; the 1/|W| factor is kept separately.
    pub fn weyl_density(&self) -> FormalCharacter {
        let p = self.weyl_denominator();
        let n = self.rank();
        let conj = p.map_weights(n, |w| -w);
        &p * &conj
    }

    /// All Weyl group elements as integer matrices on weight coordinates, with signs.
    pub fn weyl_group(&self) -> Vec<(Vec<Vec<i64>>, i8)> {
        let gens: Vec<Vec<Vec<i64>>> = (0..self.ss_rank).map(|i| self.reflection_matrix(i)).collect();
        reflection_group(&gens, self.rank())
    }
}

/// Closure of a set of reflections (integer matrices) with determinant signs.
pub(crate) fn reflection_group(gens: &[Vec<Vec<i64>>], n: usize) -> Vec<(Vec<Vec<i64>>, i8)> {
    let id: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
    let mut seen: HashMap<Vec<Vec<i64>>, i8> = HashMap::from([(id.clone(), 1)]);
    let mut order = vec![id.clone()];
    let mut q = VecDeque::from([id]);
    while let Some(m) = q.pop_front() {
        let s = seen[&m];
        for g in gens {
            let p = mat_mul(g, &m);
            if !seen.contains_key(&p) {
                seen.insert(p.clone(), -s);
                order.push(p.clone());
                q.push_back(p);
            }
        }
    }
    order.into_iter().map(|m| {
        let s = seen[&m];
        (m, s)
    }).collect()
}

pub(crate) fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect())
        .collect()
}

pub(crate) fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charlat::{fc_eval, leading_term, TorusPoint};
    use num_rational::Rational64;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn positive_root_counts() {
        let cases = [
            ('A', 1, 1),
            ('A', 2, 3),
            ('A', 3, 6),
            ('B', 2, 4),
            ('B', 3, 9),
            ('C', 3, 9),
            ('D', 4, 12),
            ('G', 2, 6),
            ('F', 4, 24),
            ('E', 6, 36),
            ('E', 7, 63),
            ('E', 8, 120),
        ];
        for (l, r, n) in cases {
            let d = build_root_datum(l, r).unwrap();
            assert_eq!(d.positive_roots().len(), n, "{l}{r}");
        }
    }

    #[test]
    fn invalid_labels() {
        assert!(build_root_datum('B', 1).is_err());
        assert!(build_root_datum('E', 5).is_err());
        assert!(build_root_datum('H', 3).is_err());
        assert!(build_root_datum('A', 9).is_err());
    }

    #[test]
    fn delta_pairs_to_one_with_every_simple_coroot() {
        for (l, r) in [('A', 3), ('B', 3), ('C', 3), ('D', 4), ('F', 4), ('G', 2), ('E', 6)] {
            let d = build_root_datum(l, r).unwrap();
            let lat = d.lattice();
            for a in d.simple_roots() {
                // 2(2δ, α)/(α, α) = 2
                assert_eq!(lat.inner_scaled(&d.two_delta().0, &a.0), lat.inner_scaled(&a.0, &a.0));
            }
            let sum = d.positive_roots().iter().fold(Weight::zero(d.rank()), |acc, a| &acc + a);
            assert_eq!(&sum, d.two_delta());
            for a in d.roots() {
                assert!(lat.inner_scaled(&a.0, &a.0) > 0);
            }
        }
    }

    #[test]
    fn rank_one() {
        let d = build_root_datum('A', 1).unwrap();
        assert_eq!(d.positive_roots(), &[w(&[2])]);
        assert_eq!(d.two_delta(), &w(&[2]));
        assert_eq!(d.weyl_density(), FormalCharacter::from_terms(1, [(w(&[2]), -1), (w(&[0]), 2), (w(&[-2]), -1)]));
    }

    #[test]
    fn orbits() {
        let a2 = build_root_datum('A', 2).unwrap();
        assert_eq!(a2.weyl_orbit(&w(&[0, 0])).len(), 1);
        assert_eq!(a2.weyl_orbit(&w(&[1, 0])).len(), 3);
        assert_eq!(a2.weyl_orbit(&w(&[1, 1])).len(), 6);
        let a1 = build_root_datum('A', 1).unwrap();
        let o: HashSet<Weight> = a1.weyl_orbit(&w(&[2])).into_iter().map(|p| p.0).collect();
        assert_eq!(o, HashSet::from([w(&[2]), w(&[-2])]));
    }

    #[test]
    fn dimensions() {
        let a2 = build_root_datum('A', 2).unwrap();
        assert_eq!(a2.weyl_dim(&w(&[0, 0])).unwrap(), 1);
        assert_eq!(a2.weyl_dim(&w(&[1, 0])).unwrap(), 3);
        assert_eq!(a2.weyl_dim(&w(&[1, 1])).unwrap(), 8);
        assert!(matches!(a2.weyl_dim(&w(&[-1, 0])), Err(Error::NotDominant(_))));
        let g2 = build_root_datum('G', 2).unwrap();
        assert_eq!(g2.weyl_dim(&w(&[1, 0])).unwrap(), 7);
        assert_eq!(g2.weyl_dim(&w(&[0, 1])).unwrap(), 14);
        let e8 = build_root_datum('E', 8).unwrap();
        assert_eq!(e8.weyl_dim(&w(&[0, 0, 0, 0, 0, 0, 0, 1])).unwrap(), 248);
    }

    #[test]
    fn sl2_string() {
        let a1 = build_root_datum('A', 1).unwrap();
        let c = a1.weight_multiplicities(&w(&[2])).unwrap();
        assert_eq!(c, FormalCharacter::from_terms(1, [(w(&[2]), 1), (w(&[0]), 1), (w(&[-2]), 1)]));
    }

    #[test]
    fn adjoint_zero_weight_from_tensor_product() {
        // V(1,0) ⊗ V(0,1) = V(1,1) ⊕ trivial: weight multiset of the product,
        // computed from the 3 + 3 orbit weights, minus one copy of [0].
        let a2 = build_root_datum('A', 2).unwrap();
        let v: Vec<Weight> = a2.weyl_orbit(&w(&[1, 0])).into_iter().map(|p| p.0).collect();
        let vd: Vec<Weight> = a2.weyl_orbit(&w(&[0, 1])).into_iter().map(|p| p.0).collect();
        let mut zero = 0;
        for x in &v {
            for y in &vd {
                if (x + y).is_zero() {
                    zero += 1;
                }
            }
        }
        let adj = a2.weight_multiplicities(&w(&[1, 1])).unwrap();
        assert_eq!(adj.coeff(&w(&[0, 0])), BigInt::from(zero - 1));
        assert_eq!(adj.coeff(&w(&[0, 0])), BigInt::from(2));
        let fund = a2.weight_multiplicities(&w(&[1, 0])).unwrap();
        assert_eq!(fund.len(), 3);
        assert!(fund.terms().all(|(_, c)| c == &BigInt::one()));
    }

    #[test]
    fn multiplicities_sum_to_dimension() {
        for (l, r) in [('A', 2), ('A', 3), ('B', 2), ('C', 3), ('G', 2), ('D', 4)] {
            let d = build_root_datum(l, r).unwrap();
            for lam in [[1i64, 0], [0, 1], [2, 1], [1, 2]] {
                let mut v = vec![0; r];
                v[0] = lam[0];
                v[r - 1] = lam[1];
                let lw = Weight(v);
                let c = d.weight_multiplicities(&lw).unwrap();
                assert_eq!(c.degree(), BigInt::from(d.weyl_dim(&lw).unwrap()), "{l}{r} {lw}");
            }
        }
    }

    #[test]
    fn weyl_denominator_identity() {
        for (l, r) in [('A', 1), ('A', 2), ('B', 2), ('G', 2)] {
            let d = build_root_datum(l, r).unwrap();
            let n = d.rank();
            let delta = Weight(vec![1; n]);
            let mut alt = FormalCharacter::zero(n);
            for (v, s) in d.weyl_orbit(&delta) {
                alt.add_term(&v - &delta, BigInt::from(s));
            }
            assert_eq!(alt, d.weyl_denominator(), "{l}{r}");
            assert_eq!(alt.len() as u64, d.weyl_group_order());
            assert_eq!(d.weyl_group().len() as u64, d.weyl_group_order());
        }
    }

    #[test]
    fn density_leading_term_is_two_delta() {
        for (l, r) in [('A', 1), ('A', 2), ('A', 3), ('B', 2), ('C', 3), ('G', 2)] {
            let d = build_root_datum(l, r).unwrap();
            let dens = d.weyl_density();
            let sign = if d.positive_roots().len() % 2 == 0 { 1 } else { -1 };
            assert_eq!(d.leading_term(&dens).unwrap(), (d.two_delta().clone(), BigInt::from(sign)));
            // the plain lattice order agrees on the length
            let (lw, _) = leading_term(&dens, d.lattice()).unwrap();
            assert_eq!(d.lattice().norm_sq(&lw), d.lattice().norm_sq(d.two_delta()));
        }
    }

    #[test]
    fn density_is_nonnegative_and_vanishes_at_identity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (l, r) in [('A', 1), ('A', 2), ('B', 2), ('G', 2)] {
            let d = build_root_datum(l, r).unwrap();
            let dens = d.weyl_density();
            assert!(fc_eval(&dens, &TorusPoint::identity(r)).unwrap().norm() < 1e-12);
            for _ in 0..100 {
                let x = TorusPoint::new((0..r).map(|_| Rational64::new(rng.gen_range(0..97), 97)).collect());
                let v = fc_eval(&dens, &x).unwrap();
                assert!(v.re > -1e-9 && v.im.abs() < 1e-9);
            }
        }
    }

    #[test]
    fn torus_factor() {
        let d = RootDatum::new(&[('A', 1)], 1).unwrap();
        assert_eq!(d.rank(), 2);
        assert_eq!(d.positive_roots(), &[w(&[2, 0])]);
        assert_eq!(d.weyl_dim(&w(&[1, -3])).unwrap(), 2);
        let c = d.weight_multiplicities(&w(&[1, 5])).unwrap();
        assert_eq!(c, FormalCharacter::from_terms(2, [(w(&[1, 5]), 1), (w(&[-1, 5]), 1)]));
        let t = RootDatum::torus(2);
        assert_eq!(t.weyl_group_order(), 1);
        assert_eq!(t.weight_multiplicities(&w(&[3, -1])).unwrap(), FormalCharacter::monomial(w(&[3, -1]), 1));
    }

    proptest! {
        #[test]
        fn characters_are_weyl_invariant(a in 0i64..3, b in 0i64..3, ty in 0usize..3) {
            let (l, r) = [('A', 2), ('B', 2), ('G', 2)][ty];
            let d = build_root_datum(l, r).unwrap();
            let c = d.weight_multiplicities(&w(&[a, b])).unwrap();
            for i in 0..2 {
                let s = c.map_weights(2, |v| d.reflect(i, v));
                prop_assert_eq!(&s, &c);
            }
        }

        #[test]
        fn weyl_character_formula(a in 0i64..3, b in 0i64..3, ty in 0usize..3) {
            let (l, r) = [('A', 2), ('B', 2), ('G', 2)][ty];
            let d = build_root_datum(l, r).unwrap();
            let lam = w(&[a, b]);
            let delta = Weight(vec![1; 2]);
            let mut num = FormalCharacter::zero(2);
            for (v, s) in d.weyl_orbit(&(&lam + &delta)) {
                num.add_term(&v - &delta, BigInt::from(s));
            }
            let c = d.weight_multiplicities(&lam).unwrap();
            prop_assert_eq!(&c * &d.weyl_denominator(), num);
        }
    }
}
