//! Restriction along torus maps and dimension data of connected subgroups.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::charlat::{FormalCharacter, Weight};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rootsys::{mat_mul, mat_vec, RootDatum};

/// The map X*(T_G) → X*(T_H) dual to T_H ↪ T_G, as a rank(H) × rank(G) matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusRestrictionMap {
    matrix: Vec<Vec<i64>>,
    source_rank: usize,
}

impl TorusRestrictionMap {
    pub fn new(matrix: Vec<Vec<i64>>, source_rank: usize) -> Result<Self> {
        if matrix.iter().any(|r| r.len() != source_rank) {
            return Err(Error::ShapeMismatch(format!(
                "restriction map rows must have length {source_rank}"
            )));
        }
        Ok(Self { matrix, source_rank })
    }

    pub fn identity(rank: usize) -> Self {
        let m = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
        Self { matrix: m, source_rank: rank }
    }

    pub fn zero(target_rank: usize, source_rank: usize) -> Self {
        Self { matrix: vec![vec![0; source_rank]; target_rank], source_rank }
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        Weight(mat_vec(&self.matrix, &w.0))
    }

    /// `self ∘ g` for g acting on X*(T_G).
    pub fn precompose(&self, g: &[Vec<i64>]) -> Self {
        Self { matrix: mat_mul(&self.matrix, g), source_rank: self.source_rank }
    }

    /// Whether the map is onto ℤ^rank(H): the maximal minors have gcd 1.
    pub fn is_surjective(&self) -> bool {
        let r = self.target_rank();
        if r == 0 {
            return true;
        }
        if r > self.source_rank {
            return false;
        }
        let mut g = BigInt::zero();
        for cols in combinations(self.source_rank, r) {
            let minor: Vec<Vec<i64>> = self.matrix.iter().map(|row| cols.iter().map(|&c| row[c]).collect()).collect();
            g = g.gcd(&linalg::int_det(&minor));
        }
        g.abs() == BigInt::from(1)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Standard connected subgroups used by the test matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SubgroupKind {
    MaximalTorus,
    PrincipalA1,
    RegularA1Torus,
}

impl SubgroupKind {
    pub const ALL: [SubgroupKind; 3] = [Self::MaximalTorus, Self::PrincipalA1, Self::RegularA1Torus];

    pub fn name(self) -> &'static str {
        match self {
            Self::MaximalTorus => "maximal-torus",
            Self::PrincipalA1 => "principal-A1",
            Self::RegularA1Torus => "regular-A1xT1",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// Restriction map and root datum of a standard subgroup of SU(2) or SU(3).
pub fn standard_subgroup(g: &RootDatum, kind: SubgroupKind) -> Result<(TorusRestrictionMap, RootDatum)> {
    let r = g.rank();
    if kind == SubgroupKind::MaximalTorus {
        return Ok((TorusRestrictionMap::identity(r), RootDatum::torus(r)));
    }
    let a1 = RootDatum::new(&[('A', 1)], 0)?;
    let a1t = RootDatum::new(&[('A', 1)], 1)?;
    match (g.to_string().as_str(), kind) {
        ("A1", SubgroupKind::PrincipalA1) => Ok((TorusRestrictionMap::identity(1), a1)),
        // SU(2) × U(1) → SU(2), projection onto the first factor
        ("A1", SubgroupKind::RegularA1Torus) => Ok((TorusRestrictionMap::new(vec![vec![1], vec![0]], 1)?, a1t)),
        // Sym² : SU(2) → SO(3) ⊂ SU(3); the defining weights restrict to 2, 0, −2
        ("A2", SubgroupKind::PrincipalA1) => Ok((TorusRestrictionMap::new(vec![vec![2, 2]], 2)?, a1)),
        // S(U(2) × U(1)); the defining rep becomes (doublet, charge 1) + (singlet, charge −2)
        ("A2", SubgroupKind::RegularA1Torus) => {
            Ok((TorusRestrictionMap::new(vec![vec![1, 0], vec![1, 2]], 2)?, a1t))
        }
        _ => Err(Error::Unsupported(format!("{} subgroup of {g}", kind.name()))),
    }
}

/// Decomposition of a restricted representation into H-irreducibles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchingResult {
    pub components: BTreeMap<Weight, u64>,
}

impl BranchingResult {
    pub fn multiplicity(&self, mu: &Weight) -> u64 {
        self.components.get(mu).copied().unwrap_or(0)
    }

    pub fn total_dim(&self, dh: &RootDatum) -> Result<u64> {
        let mut s = 0u64;
        for (mu, m) in &self.components {
            s += m * dh.weyl_dim(mu)?;
        }
        Ok(s)
    }
}

/// Pushforward of a character along the restriction map.
pub fn restrict_fc(c: &FormalCharacter, f: &TorusRestrictionMap) -> Result<FormalCharacter> {
    if c.rank() != f.source_rank {
        return Err(Error::ShapeMismatch(format!(
            "character of rank {} against map with source rank {}",
            c.rank(),
            f.source_rank
        )));
    }
    Ok(c.map_weights(f.target_rank(), |w| f.apply(w)))
}

/// Decomposes a W_H-invariant character by repeated extraction of the
/// longest dominant weight.
pub fn decompose(c: &FormalCharacter, dh: &RootDatum) -> Result<BranchingResult> {
    if c.rank() != dh.rank() {
        return Err(Error::RankMismatch { expected: dh.rank(), found: c.rank() });
    }
    let lat = dh.lattice();
    let mut rest = c.clone();
    let mut components = BTreeMap::new();
    while !rest.is_zero() {
        let top = rest.support().map(|w| lat.inner_scaled(&w.0, &w.0)).max().expect("nonzero");
        let mu = rest
            .support()
            .filter(|w| lat.inner_scaled(&w.0, &w.0) == top && dh.is_dominant(w))
            .max()
            .cloned()
            .ok_or_else(|| {
                Error::InconsistentRestriction("no dominant weight among the longest remaining terms".into())
            })?;
        let k = rest.coeff(&mu);
        if !k.is_positive() {
            return Err(Error::InconsistentRestriction(format!("multiplicity {k} at {mu}")));
        }
        let sub = dh.weight_multiplicities(&mu)?.scale(&k);
        rest = &rest - &sub;
        components.insert(mu, k.to_u64().ok_or(Error::Overflow("branching multiplicity"))?);
    }
    Ok(BranchingResult { components })
}

pub fn branch(dg: &RootDatum, lambda: &Weight, f: &TorusRestrictionMap, dh: &RootDatum) -> Result<BranchingResult> {
    if f.target_rank() != dh.rank() || f.source_rank != dg.rank() {
        return Err(Error::ShapeMismatch(format!(
            "map is {}x{}, groups have ranks {} and {}",
            f.target_rank(),
            f.source_rank,
            dh.rank(),
            dg.rank()
        )));
    }
    let chi = dg.weight_multiplicities(lambda)?;
    decompose(&restrict_fc(&chi, f)?, dh)
}

/// `dim V_λ^H`, the multiplicity of the trivial H-representation.
pub fn dim_datum_connected(dg: &RootDatum, lambda: &Weight, f: &TorusRestrictionMap, dh: &RootDatum) -> Result<u64> {
    Ok(branch(dg, lambda, f, dh)?.multiplicity(&Weight::zero(dh.rank())))
}
