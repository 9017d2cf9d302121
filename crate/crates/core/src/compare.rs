//! Almost-equality of dimension data: exceptional supports, the
//! classification checks, and a bounded search for almost-equal pairs.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::finquot::{generate_group, no_eigenvalue_one, GammaGroup, IntMatrix};
use crate::semidirect::{FiniteSubgroup, IrrepLabel, SemidirectGroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatumRow {
    pub label: IrrepLabel,
    pub dim: u64,
    pub pullback: bool,
    pub d1: u64,
    pub d2: u64,
}

impl DatumRow {
    pub fn coefficient(&self) -> i64 {
        self.d1 as i64 - self.d2 as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatumReport {
    pub bound: i64,
    pub rows: Vec<DatumRow>,
    pub support: Vec<IrrepLabel>,
    pub order1: usize,
    pub order2: usize,
    pub identity_component_order1: usize,
    pub identity_component_order2: usize,
    /// Both subgroups lie in Γ and Γ has no eigenvalue 1 away from the identity.
    pub lemma_hypotheses: bool,
}

/// Σ a_ρ χ_{ρ*}, stored by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalCharacter {
    pub terms: BTreeMap<IrrepLabel, i64>,
}

impl DatumReport {
    pub fn coefficients(&self) -> BTreeMap<IrrepLabel, i64> {
        self.rows.iter().map(|r| (r.label.clone(), r.coefficient())).collect()
    }

    pub fn exceptional_character(&self) -> ExceptionalCharacter {
        ExceptionalCharacter {
            terms: self.rows.iter().filter(|r| r.d1 != r.d2).map(|r| (r.label.clone(), r.coefficient())).collect(),
        }
    }

    fn row(&self, l: &IrrepLabel) -> Option<&DatumRow> {
        self.rows.iter().find(|r| &r.label == l)
    }
}

/// Evaluates both data on every irrep in the sup-norm box.
pub fn compare_data(h1: &FiniteSubgroup, h2: &FiniteSubgroup, g: &SemidirectGroup, bound: i64) -> Result<DatumReport> {
    let irreps = g.enumerate_irreps(bound)?;
    let rows = irreps
        .par_iter()
        .map(|irr| {
            Ok(DatumRow {
                label: irr.label(),
                dim: irr.dim(),
                pullback: irr.is_pullback(),
                d1: g.dim_datum_finite(h1, irr)?,
                d2: g.dim_datum_finite(h2, irr)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let support = rows.iter().filter(|r| r.d1 != r.d2).map(|r| r.label.clone()).collect();
    let lemma_hypotheses = no_eigenvalue_one(g.gamma()) && g.inside_gamma(h1) && g.inside_gamma(h2) && h1.order() == h2.order();
    Ok(DatumReport {
        bound,
        rows,
        support,
        order1: h1.order(),
        order2: h2.order(),
        identity_component_order1: h1.identity_component_order(),
        identity_component_order2: h2.identity_component_order(),
        lemma_hypotheses,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Certification {
    /// Data differ only on Γ-pullbacks inside the box.
    AlmostEqual,
    NotAlmostEqual,
    Equal,
}

impl Certification {
    pub fn exit_code(self) -> i32 {
        match self {
            Certification::AlmostEqual => 0,
            Certification::NotAlmostEqual => 1,
            Certification::Equal => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Certification::AlmostEqual => "almost-equal",
            Certification::NotAlmostEqual => "not-almost-equal",
            Certification::Equal => "equal",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub checks: Vec<Check>,
    pub certification: Certification,
    /// The box certificate extends to every nonzero orbit.
    pub upgraded: bool,
    pub upgrade_reason: String,
}

impl Classification {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn classify_report(r: &DatumReport) -> Classification {
    let outside: Vec<&IrrepLabel> = r.support.iter().filter(|l| !l.weight.is_zero()).collect();
    let a = Check {
        name: "support-in-pullbacks",
        passed: outside.is_empty(),
        detail: if outside.is_empty() {
            format!("{} exceptional irreps, all trivial on the identity component", r.support.len())
        } else {
            format!("{} exceptional irreps with nonzero orbit, first {}", outside.len(), outside[0])
        },
    };
    let i1 = r.order1 / r.identity_component_order1.max(1);
    let i2 = r.order2 / r.identity_component_order2.max(1);
    let b = Check { name: "component-index", passed: i1 == i2, detail: format!("{i1} {} {i2}", if i1 == i2 { "=" } else { "≠" }) };
    let deg_sum: i64 = r
        .support
        .iter()
        .map(|l| r.row(l).map_or(0, |row| row.coefficient() * row.dim as i64))
        .sum();
    let c = Check { name: "identity-value", passed: deg_sum == 0, detail: format!("Σ a·deg = {deg_sum}") };
    let certification = if r.support.is_empty() {
        Certification::Equal
    } else if a.passed {
        Certification::AlmostEqual
    } else {
        Certification::NotAlmostEqual
    };
    let upgraded = r.lemma_hypotheses && certification != Certification::NotAlmostEqual;
    let upgrade_reason = if upgraded {
        "Γ has no eigenvalue 1 and both subgroups lie in Γ with equal order: data agree on every nonzero orbit".into()
    } else if !r.lemma_hypotheses {
        format!("certified only for orbits with sup-norm ≤ {}", r.bound)
    } else {
        "the box already shows disagreement on a nonzero orbit".into()
    };
    Classification { checks: vec![a, b, c], certification, upgraded, upgrade_reason }
}

/// Subgroups of Γ up to Γ-conjugacy, as sorted index lists ordered by size.
pub fn subgroup_classes(g: &GammaGroup) -> Vec<Vec<usize>> {
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::from([vec![0]]);
    let mut frontier = vec![vec![0usize]];
    while let Some(h) = frontier.pop() {
        for x in 0..g.order() {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = h.clone();
            gens.push(x);
            let k = g.subgroup_generated(&gens);
            if all.insert(k.clone()) {
                frontier.push(k);
            }
        }
    }
    let mut reps: Vec<Vec<usize>> = Vec::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for h in &all {
        if seen.contains(h) {
            continue;
        }
        for x in 0..g.order() {
            seen.insert(g.conjugate_subgroup(h, x));
        }
        reps.push(h.clone());
    }
    reps.sort_by_key(|h| (h.len(), h.clone()));
    reps
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub pool_index: usize,
    pub h1: Vec<IntMatrix>,
    pub h2: Vec<IntMatrix>,
    pub support: Vec<IrrepLabel>,
}

/// Pairs of non-conjugate equal-order subgroups of each admissible Γ whose
/// data differ only on Γ-pullbacks inside the box.
pub fn search_almost_equal(n: usize, pool: &[Vec<IntMatrix>], bound: i64) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    for (pi, gens) in pool.iter().enumerate() {
        let gens = if gens.is_empty() { vec![IntMatrix::identity(n)] } else { gens.clone() };
        let gamma = generate_group(&gens, 100)?;
        if !no_eigenvalue_one(&gamma) {
            continue;
        }
        let g = SemidirectGroup::new(gamma)?;
        let subs = subgroup_classes(g.gamma());
        let pairs: Vec<(usize, usize)> = (0..subs.len())
            .flat_map(|i| (i + 1..subs.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| subs[i].len() == subs[j].len())
            .collect();
        let found = pairs
            .par_iter()
            .map(|&(i, j)| {
                let h1 = g.subgroup_from_indices(&subs[i]);
                let h2 = g.subgroup_from_indices(&subs[j]);
                let r = compare_data(&h1, &h2, &g, bound)?;
                let cl = classify_report(&r);
                Ok((cl.certification == Certification::AlmostEqual).then(|| Candidate {
                    pool_index: pi,
                    h1: subs[i].iter().map(|&k| g.gamma().element(k).clone()).collect(),
                    h2: subs[j].iter().map(|&k| g.gamma().element(k).clone()).collect(),
                    support: r.support,
                }))
            })
            .collect::<Result<Vec<_>>>()?;
        out.extend(found.into_iter().flatten());
    }
    Ok(out)
}
