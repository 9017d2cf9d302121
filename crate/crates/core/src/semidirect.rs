//! Irreducible representations of U(1)^n ⋊ Γ by the Mackey machine, and
//! exact dimension data of finite subgroups.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::charlat::Weight;
use crate::cyclo::{Cyclotomic, ScaledCyclotomic};
use crate::error::{Error, Result};
use crate::finquot::{character_table, generate_group, CharacterTable, GammaGroup, IntMatrix};

/// Default cap on the conductor of exact evaluations.
pub const DEFAULT_CONDUCTOR_CAP: u64 = 100_000;

/// U(1)^n ⋊ Γ with (t₁,g₁)(t₂,g₂) = (t₁ + g₁t₂, g₁g₂).
#[derive(Debug)]
pub struct SemidirectGroup {
    gamma: GammaGroup,
    dual: Vec<IntMatrix>,
    table: CharacterTable,
    stab_cache: Mutex<BTreeMap<Vec<usize>, Arc<(GammaGroup, CharacterTable, Vec<usize>)>>>,
    conductor_cap: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    pub t: Vec<Rational64>,
    pub g: IntMatrix,
}

fn frac(x: Rational64) -> Rational64 {
    x - x.floor()
}

impl GroupElement {
    pub fn new(t: Vec<Rational64>, g: IntMatrix) -> Result<Self> {
        if t.len() != g.dim() {
            return Err(Error::RankMismatch { expected: g.dim(), found: t.len() });
        }
        Ok(Self { t: t.into_iter().map(frac).collect(), g })
    }

    pub fn identity(n: usize) -> Self {
        Self { t: vec![Rational64::zero(); n], g: IntMatrix::identity(n) }
    }

    pub fn torus(t: Vec<Rational64>) -> Self {
        let n = t.len();
        Self { t: t.into_iter().map(frac).collect(), g: IntMatrix::identity(n) }
    }

    pub fn component(g: IntMatrix) -> Self {
        Self { t: vec![Rational64::zero(); g.dim()], g }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let gt = act_rat(&self.g, &other.t);
        let t = self.t.iter().zip(gt).map(|(a, b)| frac(*a + b)).collect();
        Self { t, g: self.g.mul(&other.g) }
    }

    pub fn inverse(&self) -> Option<Self> {
        let gi = self.g.inverse()?;
        let t = act_rat(&gi, &self.t).into_iter().map(|x| frac(-x)).collect();
        Some(Self { t, g: gi })
    }

    pub fn in_identity_component(&self) -> bool {
        self.g.is_identity()
    }

    /// Least common denominator of the torus part.
    pub fn denominator(&self) -> i64 {
        self.t.iter().fold(1, |a, x| a.lcm(x.denom()))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.t.iter().map(|x| x.to_string()).collect();
        write!(f, "(({}), {:?})", t.join(","), self.g)
    }
}

fn act_rat(g: &IntMatrix, t: &[Rational64]) -> Vec<Rational64> {
    (0..g.dim())
        .map(|i| (0..g.dim()).fold(Rational64::zero(), |acc, j| acc + t[j] * g.get(i, j)))
        .collect()
}

/// A finite subgroup, stored as a sorted element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSubgroup {
    elements: Vec<GroupElement>,
}

impl FiniteSubgroup {
    pub fn generate(gens: &[GroupElement], cap: usize) -> Result<Self> {
        let n = gens.first().map_or(0, |g| g.t.len());
        let id = GroupElement::identity(n);
        let mut seen: HashSet<GroupElement> = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut q = VecDeque::from([id]);
        while let Some(x) = q.pop_front() {
            for g in gens {
                let y = x.mul(g);
                if seen.insert(y.clone()) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    elements.push(y.clone());
                    q.push_back(y);
                }
            }
        }
        elements.sort();
        Ok(Self { elements })
    }

    /// Checks closure of an explicit element list.
    pub fn from_elements(mut elements: Vec<GroupElement>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let set: HashSet<&GroupElement> = elements.iter().collect();
        let n = elements.first().map_or(0, |e| e.t.len());
        if !set.contains(&GroupElement::identity(n)) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for a in &elements {
            for b in &elements {
                if !set.contains(&a.mul(b)) {
                    return Err(Error::NotSubgroup(format!("{a} · {b} not in the set")));
                }
            }
        }
        Ok(Self { elements })
    }

    pub fn trivial(n: usize) -> Self {
        Self { elements: vec![GroupElement::identity(n)] }
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn conjugate(&self, x: &GroupElement) -> Result<Self> {
        let xi = x.inverse().ok_or(Error::NotUnimodular(0))?;
        let mut elements: Vec<GroupElement> = self.elements.iter().map(|h| x.mul(h).mul(&xi)).collect();
        elements.sort();
        Ok(Self { elements })
    }

    /// Order of H ∩ G⁰.
    pub fn identity_component_order(&self) -> usize {
        self.elements.iter().filter(|e| e.in_identity_component()).count()
    }

    pub fn conductor(&self) -> u64 {
        self.elements.iter().fold(1u64, |a, e| a.lcm(&(e.denominator() as u64)))
    }
}

/// Irrep label: canonical orbit representative and stabilizer character index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IrrepLabel {
    pub weight: Weight,
    pub stab_char: usize,
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.weight, self.stab_char)
    }
}

#[derive(Clone, Debug)]
pub struct MackeyIrrep {
    pub orbit: Vec<Weight>,
    /// `coset[k]` sends the representative to `orbit[k]`; Γ indices.
    pub coset: Vec<usize>,
    pub stab: Vec<usize>,
    pub stab_char: usize,
    stab_data: Arc<(GammaGroup, CharacterTable, Vec<usize>)>,
}

impl MackeyIrrep {
    pub fn label(&self) -> IrrepLabel {
        IrrepLabel { weight: self.orbit[0].clone(), stab_char: self.stab_char }
    }

    pub fn representative(&self) -> &Weight {
        &self.orbit[0]
    }

    pub fn stab_degree(&self) -> u64 {
        self.stab_data.1.dims()[self.stab_char]
    }

    pub fn dim(&self) -> u64 {
        self.orbit.len() as u64 * self.stab_degree()
    }

    /// Whether the irrep is trivial on G⁰.
    pub fn is_pullback(&self) -> bool {
        self.orbit[0].is_zero()
    }

    pub fn is_trivial(&self) -> bool {
        self.is_pullback() && self.stab_char == 0
    }

    /// σ(s) for s ∈ Stab, given as a Γ index.
    fn sigma(&self, s: usize) -> &Cyclotomic {
        let (sg, table, map) = &*self.stab_data;
        let local = map.iter().position(|&x| x == s).expect("element of the stabilizer");
        table.value(sg, self.stab_char, local)
    }
}

impl SemidirectGroup {
    pub fn new(gamma: GammaGroup) -> Result<Self> {
        let dual = gamma
            .elements()
            .iter()
            .map(|g| g.inverse().map(|x| x.transpose()).ok_or(Error::NotUnimodular(0)))
            .collect::<Result<Vec<_>>>()?;
        let table = character_table(&gamma)?;
        Ok(Self { gamma, dual, table, stab_cache: Mutex::new(BTreeMap::new()), conductor_cap: DEFAULT_CONDUCTOR_CAP })
    }

    pub fn from_generators(gens: &[IntMatrix], cap: usize) -> Result<Self> {
        Self::new(generate_group(gens, cap)?)
    }

    pub fn with_conductor_cap(mut self, cap: u64) -> Self {
        self.conductor_cap = cap;
        self
    }

    pub fn n(&self) -> usize {
        self.gamma.dim()
    }

    pub fn gamma(&self) -> &GammaGroup {
        &self.gamma
    }

    pub fn gamma_table(&self) -> &CharacterTable {
        &self.table
    }

    /// Γ acting on X*(U(1)^n) = ℤ^n by g ↦ g^{-T}.
    pub fn act_weight(&self, g: usize, w: &Weight) -> Weight {
        Weight(self.dual[g].apply(&w.0))
    }

    /// Γ-orbit of λ, canonical (lex-smallest) element first, with a transporting element per entry.
    pub fn orbit(&self, w: &Weight) -> Vec<(Weight, usize)> {
        let mut seen: BTreeMap<Weight, usize> = BTreeMap::new();
        for g in 0..self.gamma.order() {
            seen.entry(self.act_weight(g, w)).or_insert(g);
        }
        seen.into_iter().collect()
    }

    pub fn stabilizer(&self, w: &Weight) -> Vec<usize> {
        (0..self.gamma.order()).filter(|&g| self.act_weight(g, w) == *w).collect()
    }

    fn stab_data(&self, stab: &[usize]) -> Result<Arc<(GammaGroup, CharacterTable, Vec<usize>)>> {
        if let Some(d) = self.stab_cache.lock().unwrap().get(stab) {
            return Ok(d.clone());
        }
        let mats: Vec<IntMatrix> = stab.iter().map(|&i| self.gamma.element(i).clone()).collect();
        let sg = generate_group(&mats, self.gamma.order() + 1)?;
        let table = character_table(&sg)?;
        let map: Vec<usize> = sg.elements().iter().map(|m| self.gamma.index_of(m).expect("subgroup element")).collect();
        let data = Arc::new((sg, table, map));
        self.stab_cache.lock().unwrap().insert(stab.to_vec(), data.clone());
        Ok(data)
    }

    /// Irreps attached to the orbit of `w`.
    pub fn irreps_at(&self, w: &Weight) -> Result<Vec<MackeyIrrep>> {
        let orb = self.orbit(w);
        let rep = orb[0].0.clone();
        let stab = self.stabilizer(&rep);
        let data = self.stab_data(&stab)?;
        let coset: Vec<usize> = orb
            .iter()
            .map(|(mu, _)| (0..self.gamma.order()).find(|&g| self.act_weight(g, &rep) == *mu).unwrap())
            .collect();
        let orbit: Vec<Weight> = orb.into_iter().map(|(mu, _)| mu).collect();
        Ok((0..data.1.len())
            .map(|k| MackeyIrrep { orbit: orbit.clone(), coset: coset.clone(), stab: stab.clone(), stab_char: k, stab_data: data.clone() })
            .collect())
    }

    /// All irreps whose canonical representative has sup-norm ≤ bound, sorted by label.
    pub fn enumerate_irreps(&self, bound: i64) -> Result<Vec<MackeyIrrep>> {
        let n = self.n();
        let side = (2 * bound + 1) as usize;
        let total = side.pow(n as u32);
        let reps: BTreeSet<Weight> = (0..total)
            .into_par_iter()
            .filter_map(|mut i| {
                let mut v = vec![0i64; n];
                for x in v.iter_mut() {
                    *x = (i % side) as i64 - bound;
                    i /= side;
                }
                let w = Weight(v);
                let rep = self.orbit(&w).swap_remove(0).0;
                (rep == w).then_some(w)
            })
            .collect();
        let mut out = Vec::new();
        for w in reps {
            if w.sup_norm() <= bound {
                out.extend(self.irreps_at(&w)?);
            }
        }
        out.sort_by_key(|r| r.label());
        Ok(out)
    }

    fn check_conductor(&self, m: u64) -> Result<()> {
        if m > self.conductor_cap {
            return Err(Error::ConductorOverflow { needed: m, cap: self.conductor_cap });
        }
        Ok(())
    }

    /// χ(t, g) = Σ_{μ = rλ, r⁻¹gr ∈ Stab} ζ^{⟨μ,t⟩} σ(r⁻¹gr).
    pub fn induced_char(&self, irrep: &MackeyIrrep, x: &GroupElement) -> Result<Cyclotomic> {
        let gi = self
            .gamma
            .index_of(&x.g)
            .ok_or_else(|| Error::NotSubgroup(format!("{:?} is not in Γ", x.g)))?;
        let den = x.denominator() as u64;
        let m = den.lcm(&self.table.conductor());
        self.check_conductor(m)?;
        let mut acc = Cyclotomic::zero(m);
        for (mu, &r) in irrep.orbit.iter().zip(&irrep.coset) {
            let s = self.gamma.mul(self.gamma.mul(self.gamma.inv(r), gi), r);
            if irrep.stab.binary_search(&s).is_err() {
                continue;
            }
            let pair = mu.0.iter().zip(&x.t).fold(Rational64::zero(), |a, (k, t)| a + t * *k);
            let k = (pair * den as i64).to_integer();
            let phase = Cyclotomic::from_root(den, k);
            acc = &acc + &(&phase * irrep.sigma(s));
        }
        Ok(acc)
    }

    /// dim ρ^H as the exact average of χ_ρ over H.
    pub fn dim_datum_finite(&self, h: &FiniteSubgroup, irrep: &MackeyIrrep) -> Result<u64> {
        let m = h.conductor().lcm(&self.table.conductor());
        self.check_conductor(m)?;
        let mut s = Cyclotomic::zero(m);
        for x in h.elements() {
            s = &s + &self.induced_char(irrep, x)?;
        }
        let v = ScaledCyclotomic::new(s, h.order() as u64).to_integer()?;
        let v = v.to_i64().ok_or(Error::Overflow("dimension datum"))?;
        if v < 0 || v as u64 > irrep.dim() {
            return Err(Error::NotIntegral(format!("datum {v} outside [0, {}] for {}", irrep.dim(), irrep.label())));
        }
        Ok(v as u64)
    }

    /// Labels of G-conjugacy classes meeting H.
    pub fn sato_tate_support(&self, h: &FiniteSubgroup) -> Result<BTreeSet<ClassLabel>> {
        let mut out = BTreeSet::new();
        for x in h.elements() {
            if x.in_identity_component() {
                out.insert(ClassLabel::Torus(self.torus_orbit_rep(&x.t)));
            } else {
                let i = self.gamma.index_of(&x.g).ok_or_else(|| Error::NotSubgroup(format!("{:?} is not in Γ", x.g)))?;
                out.insert(ClassLabel::Component(self.gamma.class_of(i)));
            }
        }
        Ok(out)
    }

    fn torus_orbit_rep(&self, t: &[Rational64]) -> Vec<Rational64> {
        self.gamma
            .elements()
            .iter()
            .map(|g| act_rat(g, t).into_iter().map(frac).collect::<Vec<_>>())
            .min()
            .unwrap()
    }

    /// The subgroup of Γ generated by the given matrices, embedded with zero torus part.
    pub fn gamma_subgroup(&self, gens: &[IntMatrix]) -> Result<FiniteSubgroup> {
        let idx = gens
            .iter()
            .map(|g| self.gamma.index_of(g).ok_or_else(|| Error::NotSubgroup(format!("{g:?} is not in Γ"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup_from_indices(&self.gamma.subgroup_generated(&idx)))
    }

    pub fn subgroup_from_indices(&self, idx: &[usize]) -> FiniteSubgroup {
        let mut elements: Vec<GroupElement> = idx.iter().map(|&i| GroupElement::component(self.gamma.element(i).clone())).collect();
        elements.sort();
        FiniteSubgroup { elements }
    }

    /// Whether every element lies in Γ (zero torus part).
    pub fn inside_gamma(&self, h: &FiniteSubgroup) -> bool {
        h.elements().iter().all(|e| e.t.iter().all(Zero::is_zero) && self.gamma.index_of(&e.g).is_some())
    }
}

/// A G-conjugacy class: a Γ-orbit in the torus, or a Γ-class in a non-identity component.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ClassLabel {
    Torus(Vec<Rational64>),
    Component(usize),
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Torus(t) => {
                let s: Vec<String> = t.iter().map(|x| x.to_string()).collect();
                write!(f, "T({})", s.join(","))
            }
            ClassLabel::Component(c) => write!(f, "C{c}"),
        }
    }
}

/// The Q₈ example: G = U(1)⁴ ⋊ ⟨a, b⟩ with H₁ = ⟨a⟩, H₂ = ⟨b⟩.
pub fn example_q8() -> Result<(SemidirectGroup, FiniteSubgroup, FiniteSubgroup)> {
    let (a, b) = crate::finquot::q8_generators();
    let g = SemidirectGroup::from_generators(&[a.clone(), b.clone()], 1000)?;
    let h1 = g.gamma_subgroup(&[a])?;
    let h2 = g.gamma_subgroup(&[b])?;
    Ok((g, h1, h2))
}
