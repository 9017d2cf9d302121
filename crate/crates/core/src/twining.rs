//! Diagram automorphisms, quasi root systems and twining characters.
//!
//! A [`PinnedDatum`] is a simply-laced root datum with a permutation θ of the
//! simple nodes, lifted to the Lie algebra through a Chevalley basis with
//! Frenkel–Kac signs. Characters of the θ-fixed torus S̃⁰ live on the lattice
//! spanned by the θ-orbits of simple nodes; the restriction of a weight
//! `λ` sums its Dynkin labels over each orbit.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::charlat::{FormalCharacter, Lattice, Weight};
use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::rootsys::{mat_vec, reflection_group, RootDatum};

/// A simply-laced root datum with a pinned diagram automorphism.
#[derive(Clone, Debug)]
pub struct PinnedDatum {
    base: RootDatum,
    perm: Vec<usize>,
    order: usize,
    orbits: Vec<Vec<usize>>,
    node_orbit: Vec<usize>,
    /// roots in simple-root coordinates, positive ones first
    roots: Vec<Vec<i64>>,
    root_index: HashMap<Vec<i64>, usize>,
    signs: Vec<i8>,
}

impl PinnedDatum {
    /// `perm[i]` is the image of simple node i.
    pub fn new(base: RootDatum, perm: Vec<usize>) -> Result<Self> {
        let n = base.semisimple_rank();
        if base.torus_rank() != 0 || perm.len() != n {
            return Err(Error::NotPinned("permutation must act on the simple nodes of a semisimple datum".into()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::NotPinned(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        let a = base.cartan_matrix();
        if a.iter().flatten().any(|&x| x < -1) {
            return Err(Error::Unsupported("only simply-laced data carry Frenkel-Kac signs".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if a[perm[i]][perm[j]] != a[i][j] {
                    return Err(Error::NotPinned(format!("{perm:?} does not preserve the Cartan matrix")));
                }
            }
        }
        let mut order = 1;
        let mut cur = perm.clone();
        while cur.iter().enumerate().any(|(i, &p)| p != i) {
            cur = cur.iter().map(|&p| perm[p]).collect();
            order += 1;
        }
        let mut node_orbit = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        for i in 0..n {
            if node_orbit[i] != usize::MAX {
                continue;
            }
            let mut o = vec![i];
            let mut j = perm[i];
            while j != i {
                o.push(j);
                j = perm[j];
            }
            o.sort_unstable();
            for &k in &o {
                node_orbit[k] = orbits.len();
            }
            orbits.push(o);
        }

        let pos: Vec<Vec<i64>> = base
            .positive_roots()
            .iter()
            .map(|r| base.root_coords(r).iter().map(|q| q.to_integer().to_i64().unwrap()).collect())
            .collect();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        let root_index: HashMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();

        let mut pd = Self { base, perm, order, orbits, node_orbit, roots, root_index, signs: Vec::new() };
        pd.signs = pd.compute_signs()?;
        Ok(pd)
    }

    pub fn base(&self) -> &RootDatum {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    fn eps_entry(&self, i: usize, j: usize) -> bool {
        i == j || (i < j && self.base.cartan_matrix()[i][j] != 0)
    }

    /// Bimultiplicative sign cocycle on the root lattice.
    pub fn epsilon(&self, a: &[i64], b: &[i64]) -> i8 {
        let mut e = 0i64;
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                if self.eps_entry(i, j) {
                    e += x * y;
                }
            }
        }
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    fn theta_coords(&self, a: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len()];
        for (i, &x) in a.iter().enumerate() {
            out[self.perm[i]] = x;
        }
        out
    }

    /// θ on X*(T), Dynkin coordinates.
    pub fn theta(&self, w: &Weight) -> Weight {
        Weight(self.theta_coords(&w.0))
    }

    fn compute_signs(&self) -> Result<Vec<i8>> {
        let npos = self.roots.len() / 2;
        let mut signs = vec![0i8; self.roots.len()];
        let mut by_height: Vec<usize> = (0..npos).collect();
        by_height.sort_by_key(|&i| self.roots[i].iter().sum::<i64>());
        for &g in &by_height {
            let gamma = &self.roots[g];
            if gamma.iter().sum::<i64>() == 1 {
                signs[g] = 1;
                continue;
            }
            // γ = α_i + β with β a positive root of smaller height
            let (i, b) = (0..gamma.len())
                .find_map(|i| {
                    let mut beta = gamma.clone();
                    beta[i] -= 1;
                    self.root_index.get(&beta).filter(|&&b| b < npos).map(|&b| (i, b))
                })
                .expect("every non-simple positive root has a predecessor");
            let mut ai = vec![0; gamma.len()];
            ai[i] = 1;
            let beta = &self.roots[b];
            signs[g] = signs[b]
                * self.epsilon(&self.theta_coords(&ai), &self.theta_coords(beta))
                * self.epsilon(&ai, beta);
        }
        for k in 0..npos {
            signs[npos + k] = signs[k];
        }
        // θ[E_α, E_β] = [θE_α, θE_β] for every pair of roots with α+β a root
        for (x, a) in self.roots.iter().enumerate() {
            for (y, b) in self.roots.iter().enumerate() {
                let s: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                if let Some(&z) = self.root_index.get(&s) {
                    let lhs = signs[x] * signs[y] * self.epsilon(&self.theta_coords(a), &self.theta_coords(b));
                    let rhs = self.epsilon(a, b) * signs[z];
                    if lhs != rhs {
                        return Err(Error::NotPinned(format!("sign mismatch on {a:?} + {b:?}")));
                    }
                }
            }
        }
        Ok(signs)
    }

    /// Sign c_α with θ(E_α) = c_α E_{θα}; `alpha` in simple-root coordinates.
    pub fn chevalley_sign(&self, alpha: &[i64]) -> Option<i8> {
        self.root_index.get(alpha).map(|&i| self.signs[i])
    }

    /// Restriction X*(T) → X*(S̃⁰): sum of Dynkin labels over each node orbit.
    pub fn restrict(&self, w: &Weight) -> Weight {
        let mut out = vec![0; self.orbits.len()];
        for (i, &x) in w.0.iter().enumerate() {
            out[self.node_orbit[i]] += x;
        }
        Weight(out)
    }

    /// Inner product on X*(S̃⁰) induced by identifying e_O with ϖ_O/|O|.
    pub fn restricted_lattice(&self) -> Result<Lattice> {
        let g = self.base.lattice().gram();
        let k = self.orbits.len();
        let mut out: RatMatrix = vec![vec![BigRational::zero(); k]; k];
        for (a, oa) in self.orbits.iter().enumerate() {
            for (b, ob) in self.orbits.iter().enumerate() {
                let s: BigRational = oa.iter().flat_map(|&i| ob.iter().map(move |&j| g[i][j].clone())).sum();
                out[a][b] = s / BigRational::from_integer(BigInt::from(oa.len() * ob.len()));
            }
        }
        Lattice::new(out)
    }

    /// Joint eigencharacters of S̃⁰ × ⟨s₀⟩ on the root spaces.
    pub fn quasi_roots(&self) -> Result<Vec<QuasiRoot>> {
        let m = self.order;
        let mut done = vec![false; self.roots.len()];
        let mut acc: BTreeMap<(Weight, usize), usize> = BTreeMap::new();
        for start in 0..self.roots.len() {
            if done[start] {
                continue;
            }
            let mut orbit = vec![start];
            let mut c = self.signs[start];
            done[start] = true;
            let mut cur = self.theta_coords(&self.roots[start]);
            while let Some(&idx) = self.root_index.get(&cur) {
                if idx == start {
                    break;
                }
                done[idx] = true;
                orbit.push(idx);
                c *= self.signs[idx];
                cur = self.theta_coords(&cur);
            }
            let k = orbit.len();
            // eigenvalues ζ_m^j of θ on the orbit block satisfy ζ_m^{jk} = c
            let target = if c == 1 { 0 } else { m / 2 };
            if c == -1 && m % 2 == 1 {
                return Err(Error::NotPinned("odd-order automorphism with a negative orbit sign".into()));
            }
            let js: Vec<usize> = (0..m).filter(|j| (j * k) % m == target).collect();
            if js.len() != k {
                return Err(Error::NotPinned(format!("orbit of length {k} has {} eigenvalues", js.len())));
            }
            let p = self.restrict(&self.base.from_root_coords(&self.roots[start]));
            if p.is_zero() {
                continue;
            }
            for j in js {
                *acc.entry((p.clone(), j)).or_default() += 1;
            }
        }
        Ok(acc
            .into_iter()
            .map(|((restricted, component_char), multiplicity)| QuasiRoot { restricted, component_char, multiplicity })
            .collect())
    }

    pub fn restricted_datum(&self) -> Result<RestrictedDatum> {
        RestrictedDatum::new(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct QuasiRoot {
    pub restricted: Weight,
    /// residue j with α(s₀) = ζ_m^j
    pub component_char: usize,
    pub multiplicity: usize,
}

/// The restricted root data of the component s₀S̃⁰.
#[derive(Clone, Debug)]
pub struct RestrictedDatum {
    lattice: Lattice,
    order: usize,
    quasi: Vec<QuasiRoot>,
    /// positive roots of R_{s₀} with their multiplicities m_α
    positive: Vec<(Weight, i64)>,
    two_delta: Weight,
    scale: i64,
    weyl: Vec<(Vec<Vec<i64>>, i8)>,
}

impl RestrictedDatum {
    fn new(pd: &PinnedDatum) -> Result<Self> {
        let lattice = pd.restricted_lattice()?;
        let quasi = pd.quasi_roots()?;
        let rank = lattice.rank();
        let rho = pd.restrict(&Weight(vec![1; pd.base.rank()]));
        let mut positive = Vec::new();
        for q in quasi.iter().filter(|q| q.component_char == 0) {
            let a = &q.restricted;
            if lattice.inner_scaled(&a.0, &rho.0) <= 0 {
                continue;
            }
            // m_α·α collects every quasi root on the positive ray through α
            let pivot = a.0.iter().position(|&x| x != 0).expect("nonzero restricted root");
            let mut total = BigRational::zero();
            for r in &quasi {
                let t = BigRational::new(r.restricted.0[pivot].into(), a.0[pivot].into());
                if t.is_positive()
                    && r.restricted.0.iter().zip(&a.0).all(|(&x, &y)| BigRational::from_integer(x.into()) == &t * BigInt::from(y))
                {
                    total += t * BigInt::from(r.multiplicity as u64);
                }
            }
            if !total.is_integer() {
                return Err(Error::Unsupported(format!("non-integral multiplicity {total} at {a}")));
            }
            positive.push((a.clone(), total.to_integer().to_i64().unwrap()));
        }
        let mut two_delta = Weight::zero(rank);
        for (a, m) in &positive {
            two_delta = &two_delta + &a.scaled(*m);
        }
        let scale = if two_delta.0.iter().all(|x| x % 2 == 0) { 1 } else { 2 };

        let mut gens = Vec::new();
        for (a, _) in &positive {
            let aa = lattice.inner_scaled(&a.0, &a.0);
            let mut cols = Vec::new();
            for k in 0..rank {
                let mut e = vec![0; rank];
                e[k] = 1;
                let num = 2 * lattice.inner_scaled(&e, &a.0);
                if num % aa != 0 {
                    return Err(Error::NotIntegral(format!("reflection in {a} is not integral")));
                }
                let f = (num / aa) as i64;
                cols.push((0..rank).map(|r| e[r] - f * a.0[r]).collect::<Vec<i64>>());
            }
            gens.push((0..rank).map(|r| (0..rank).map(|c| cols[c][r]).collect()).collect::<Vec<Vec<i64>>>());
        }
        let weyl = reflection_group(&gens, rank)
            .into_iter()
            .map(|(m, _)| {
                let d = linalg::int_det(&m);
                let s = if d.is_positive() { 1 } else { -1 };
                (m, s)
            })
            .collect();
        Ok(Self { lattice, order: pd.order, quasi, positive, two_delta, scale, weyl })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn quasi_roots(&self) -> &[QuasiRoot] {
        &self.quasi
    }

    pub fn positive_roots(&self) -> &[(Weight, i64)] {
        &self.positive
    }

    /// 2δ_i = Σ_{α∈R_{s₀}⁺} m_α α.
    pub fn two_delta(&self) -> &Weight {
        &self.two_delta
    }

    /// Output weights are in units of 1/scale (2 when δ_i is half-integral).
    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn weyl_group(&self) -> &[(Vec<Vec<i64>>, i8)] {
        &self.weyl
    }

    fn rank(&self) -> usize {
        self.lattice.rank()
    }

    fn scaled_delta(&self) -> Weight {
        // δ in units of 1/scale
        Weight(self.two_delta.0.iter().map(|x| x * self.scale / 2).collect())
    }

    fn check(&self, mu: &Weight) -> Result<()> {
        if mu.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found: mu.rank() });
        }
        Ok(())
    }

    /// `Σ_w ε(w)[μ + δ_i − wδ_i]`.
    pub fn a_mu(&self, mu: &Weight) -> Result<FormalCharacter> {
        self.check(mu)?;
        let mu = mu.scaled(self.scale);
        let d = self.scaled_delta();
        let mut out = FormalCharacter::zero(self.rank());
        for (w, s) in &self.weyl {
            let wd = Weight(mat_vec(w, &d.0));
            out.add_term(&(&mu + &d) - &wd, BigInt::from(*s));
        }
        Ok(out)
    }

    /// `χ_μ = Σ_w ε(w)[w(μ+δ_i) − δ_i] / Π_{α∈R_{s₀}⁺}(1 − [−m_α α])`, exactly.
    pub fn chi_mu(&self, mu: &Weight) -> Result<FormalCharacter> {
        self.check(mu)?;
        let d = self.scaled_delta();
        let shifted = &mu.scaled(self.scale) + &d;
        let mut num = FormalCharacter::zero(self.rank());
        for (w, s) in &self.weyl {
            num.add_term(&Weight(mat_vec(w, &shifted.0)) - &d, BigInt::from(*s));
        }
        let mut q = num;
        for (a, m) in &self.positive {
            q = q.div_binomial(&a.scaled(m * self.scale))?;
        }
        Ok(q)
    }

    /// `|W|·D_H` on the component: `Π_{quasi roots}(1 − ζ^j[ᾱ])^{mult}`. Needs m ≤ 2.
    pub fn component_density(&self) -> Result<FormalCharacter> {
        if self.order > 2 {
            return Err(Error::Unsupported(format!("component density for automorphism order {}", self.order)));
        }
        let n = self.rank();
        let mut out = FormalCharacter::one(n);
        for q in &self.quasi {
            let z = if q.component_char == 0 { -1 } else { 1 };
            let f = FormalCharacter::from_terms(n, [(Weight::zero(n), 1), (q.restricted.scaled(self.scale), z)]);
            for _ in 0..q.multiplicity {
                out = &out * &f;
            }
        }
        Ok(out)
    }

    /// Checks `χ_μ · |W|D_H = Σ_w w·A(μ)` in the character ring.
    pub fn verify_weyl4(&self, mu: &Weight) -> Result<Weyl4Check> {
        let chi = self.chi_mu(mu)?;
        let lhs = &chi * &self.component_density()?;
        let a = self.a_mu(mu)?;
        let mut rhs = FormalCharacter::zero(self.rank());
        for (w, _) in &self.weyl {
            rhs = &rhs + &a.map_weights(self.rank(), |v| Weight(mat_vec(w, &v.0)));
        }
        let diff = &lhs - &rhs;
        Ok(Weyl4Check { holds: diff.is_zero(), diff })
    }

    /// Evaluates a character of this datum at angles of S̃⁰ (one per orbit coordinate).
    pub fn eval(&self, c: &FormalCharacter, angles: &[f64]) -> Complex64 {
        let a: Vec<f64> = angles.iter().map(|x| x / self.scale as f64).collect();
        c.eval_angles(&a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weyl4Check {
    pub holds: bool,
    pub diff: FormalCharacter,
}

/// The pinned involution of A_{n−1} (n = 3, 4, …) reversing the Dynkin diagram.
pub fn sl_swap(n: usize) -> Result<PinnedDatum> {
    let r = n - 1;
    let base = RootDatum::new(&[('A', r)], 0)?;
    PinnedDatum::new(base, (0..r).rev().collect())
}

type CMat = Vec<Vec<Complex64>>;

fn cmat_mul(a: &CMat, b: &CMat) -> CMat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// Diagonal entries of the θ-fixed torus element of SU(n) with
/// z_k = exp(2πi·angles[k]) in the first half.
fn sl_torus(n: usize, angles: &[f64]) -> Vec<Complex64> {
    let mut d = vec![Complex64::one(); n];
    for (k, a) in angles.iter().enumerate().take(n / 2) {
        let z = Complex64::from_polar(1.0, std::f64::consts::TAU * a);
        d[k] = z;
        d[n - 1 - k] = z.inv();
    }
    d
}

/// Restricted-lattice angles of the same torus element: the coordinate of
/// orbit {i, n−2−i} is the angle of ϖ_i(t) = z_1⋯z_{i+1}.
pub fn sl_restricted_angles(n: usize, angles: &[f64]) -> Vec<f64> {
    let half = (n - 1).div_ceil(2);
    (0..half)
        .map(|i| (0..=i).map(|k| if k < n / 2 { angles[k] } else { 0.0 }).sum())
        .collect()
}

/// `tr(Ad(t) ∘ θ)` on sl_n, from explicit n×n matrices with
/// θ(X) = −J Xᵀ J⁻¹ and J the antidiagonal matrix of alternating signs.
pub fn twisted_trace_adjoint_sl(n: usize, angles: &[f64]) -> Complex64 {
    let zero = Complex64::zero();
    let mut j = vec![vec![zero; n]; n];
    for i in 0..n {
        j[i][n - 1 - i] = Complex64::new(if i % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    // J is a signed permutation matrix, so J⁻¹ = Jᵀ
    let jinv: CMat = (0..n).map(|r| (0..n).map(|c| j[c][r]).collect()).collect();
    let t = sl_torus(n, angles);
    let apply = |x: &CMat| -> CMat {
        let xt: CMat = (0..n).map(|r| (0..n).map(|c| x[c][r]).collect()).collect();
        let th = cmat_mul(&cmat_mul(&j, &xt), &jinv);
        (0..n).map(|r| (0..n).map(|c| -th[r][c] * t[r] / t[c]).collect()).collect()
    };
    let mut trace = zero;
    for r in 0..n {
        for c in 0..n {
            if r == c {
                continue;
            }
            let mut e = vec![vec![zero; n]; n];
            e[r][c] = Complex64::one();
            trace += apply(&e)[r][c];
        }
    }
    // Cartan part: H_k = E_kk − E_{k+1,k+1}; coordinate h_k = d_1 + … + d_k
    for k in 0..n - 1 {
        let mut e = vec![vec![zero; n]; n];
        e[k][k] = Complex64::one();
        e[k + 1][k + 1] = -Complex64::one();
        let img = apply(&e);
        trace += (0..=k).map(|i| img[i][i]).sum::<Complex64>();
    }
    trace
}

/// The 8×8 oracle on sl₃ at t = diag(z, 1, z⁻¹).
pub fn twisted_trace_adjoint(z: Complex64) -> Complex64 {
    twisted_trace_adjoint_sl(3, &[z.arg() / std::f64::consts::TAU])
}

/// Fits η from the first sample with |χ| > 1e-6 and returns it with the
/// largest residual |trace − η·χ| over all samples.
pub fn fit_eta(samples: &[(Complex64, Complex64)]) -> Option<(Complex64, f64)> {
    let (t0, c0) = samples.iter().find(|(_, c)| c.norm() > 1e-6)?;
    let eta = t0 / c0;
    let resid = samples.iter().map(|(t, c)| (t - eta * c).norm()).fold(0.0, f64::max);
    Some((eta, resid))
}
