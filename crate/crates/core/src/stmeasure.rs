//! Floating-point Weyl integration on equispaced torus grids.
//!
//! A trigonometric polynomial whose frequencies satisfy |k| < N in every
//! coordinate is integrated exactly by the N^r-point product grid, so these
//! averages reproduce the exact engines up to roundoff.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::branching::{restrict_fc, TorusRestrictionMap};
use crate::charlat::{FormalCharacter, Weight};
use crate::error::{Error, Result};
use crate::rootsys::RootDatum;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadratureGrid {
    rank: usize,
    n: usize,
}

impl QuadratureGrid {
    pub fn new(rank: usize, n: usize) -> Self {
        assert!(n >= 1, "grid needs at least one point per axis");
        Self { rank, n }
    }

    pub fn points_per_dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.rank as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The i-th node, as angles in [0, 1).
    pub fn node(&self, mut i: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.rank];
        for a in out.iter_mut() {
            *a = (i % self.n) as f64 / self.n as f64;
            i /= self.n;
        }
        out
    }

    /// Grid mean of the character; exact for supports inside the open box of radius N.
    pub fn average(&self, c: &FormalCharacter) -> Result<Complex64> {
        let need = required_points(c);
        if need > self.n {
            return Err(Error::GridTooCoarse { required: need, given: self.n });
        }
        let terms: Vec<(Vec<f64>, f64)> = c
            .terms()
            .map(|(w, k)| (w.0.iter().map(|&x| x as f64).collect(), num_traits::ToPrimitive::to_f64(k).unwrap_or(f64::NAN)))
            .collect();
        let values: Vec<Complex64> = (0..self.len())
            .into_par_iter()
            .map(|i| {
                let x = self.node(i);
                terms
                    .iter()
                    .map(|(w, k)| {
                        let phase: f64 = w.iter().zip(&x).map(|(a, b)| a * b).sum();
                        Complex64::from_polar(*k, std::f64::consts::TAU * phase)
                    })
                    .sum()
            })
            .collect();
        Ok(pairwise_sum(&values) / self.len() as f64)
    }
}

/// Smallest N for which the grid integrates `c` exactly.
pub fn required_points(c: &FormalCharacter) -> usize {
    c.coord_bounds().into_iter().max().unwrap_or(0) as usize + 1
}

fn pairwise_sum(v: &[Complex64]) -> Complex64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let (a, b) = v.split_at(v.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MomentResult {
    pub value: Complex64,
    pub residual_imag: f64,
    pub n: usize,
}

/// `(1/|W_H|) ∫_{T_H} χ_λ|_{T_H} · D_H`, i.e. dim V_λ^H as a float.
pub fn moment_numeric(
    dg: &RootDatum,
    lambda: &Weight,
    f: &TorusRestrictionMap,
    dh: &RootDatum,
    n: usize,
) -> Result<MomentResult> {
    let chi = restrict_fc(&dg.weight_multiplicities(lambda)?, f)?;
    let integrand = &chi * &dh.weyl_density();
    let avg = QuadratureGrid::new(dh.rank(), n).average(&integrand)? / dh.weyl_group_order() as f64;
    Ok(MomentResult { value: avg, residual_imag: avg.im.abs(), n })
}

/// Grid size sufficient for [`moment_numeric`].
pub fn moment_points(dg: &RootDatum, lambda: &Weight, f: &TorusRestrictionMap, dh: &RootDatum) -> Result<usize> {
    let chi = restrict_fc(&dg.weight_multiplicities(lambda)?, f)?;
    Ok(required_points(&(&chi * &dh.weyl_density())))
}

/// `|(1/|W|) ∫ χ_λ · conj(χ_μ) · D_G − δ_{λμ}|`.
pub fn orthogonality_residual(d: &RootDatum, lambda: &Weight, mu: &Weight, n: usize) -> Result<f64> {
    let a = d.weight_multiplicities(lambda)?;
    let b = d.weight_multiplicities(mu)?.map_weights(d.rank(), |w| -w);
    let integrand = &(&a * &b) * &d.weyl_density();
    let avg = QuadratureGrid::new(d.rank(), n).average(&integrand)? / d.weyl_group_order() as f64;
    let target = if lambda == mu { 1.0 } else { 0.0 };
    Ok((avg - target).norm())
}

/// Outcome of the leading-term length check for `χ · D_G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeadingBound {
    pub holds: bool,
    pub equality: bool,
    pub witness: Weight,
    pub coefficient: BigInt,
    pub length_sq: String,
    pub bound_sq: String,
}

/// Checks |leading term of χ·D_G| ≥ |2δ| exactly, and that equality forces χ constant.
pub fn verify_leading_bound(d: &RootDatum, chi: &FormalCharacter) -> Result<LeadingBound> {
    if chi.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    let prod = &d.weyl_density() * chi;
    let (w, c) = d.leading_term(&prod)?;
    let lat = d.lattice();
    let len: BigRational = lat.norm_sq(&w);
    let bound = lat.norm_sq(d.two_delta());
    let equality = len == bound;
    let constant = chi.len() == 1 && chi.support().all(|v| v.is_zero());
    let holds = len >= bound && (!equality || constant);
    Ok(LeadingBound {
        holds,
        equality,
        witness: w,
        coefficient: c,
        length_sq: len.to_string(),
        bound_sq: bound.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::{dim_datum_connected, standard_subgroup, SubgroupKind};
    use crate::rootsys::build_root_datum;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn moments_match_examples() {
        let a2 = build_root_datum('A', 2).unwrap();
        let (f, a1) = standard_subgroup(&a2, SubgroupKind::PrincipalA1).unwrap();
        let triv = moment_numeric(&a2, &w(&[0, 0]), &f, &a1, 8).unwrap();
        assert!((triv.value.re - 1.0).abs() < 1e-12);
        let adj = moment_numeric(&a2, &w(&[1, 1]), &f, &a1, 16).unwrap();
        assert!(adj.value.norm() < 1e-10);
        let (ft, t) = standard_subgroup(&a2, SubgroupKind::MaximalTorus).unwrap();
        let m = moment_numeric(&a2, &w(&[1, 1]), &ft, &t, 4).unwrap();
        assert!((m.value.re - 2.0).abs() < 1e-10);
    }

    #[test]
    fn coarse_grid_reports_required_size() {
        let a2 = build_root_datum('A', 2).unwrap();
        let (f, a1) = standard_subgroup(&a2, SubgroupKind::PrincipalA1).unwrap();
        let need = moment_points(&a2, &w(&[1, 1]), &f, &a1).unwrap();
        assert_eq!(need, 7);
        assert_eq!(
            moment_numeric(&a2, &w(&[1, 1]), &f, &a1, 3),
            Err(Error::GridTooCoarse { required: 7, given: 3 })
        );
    }

    #[test]
    fn exact_and_numeric_agree_on_a_small_matrix() {
        for g in [build_root_datum('A', 1).unwrap(), build_root_datum('A', 2).unwrap()] {
            for kind in SubgroupKind::ALL {
                let (f, h) = standard_subgroup(&g, kind).unwrap();
                for a in 0..3 {
                    let lam = Weight(vec![a; g.rank()]);
                    let n = moment_points(&g, &lam, &f, &h).unwrap();
                    let num = moment_numeric(&g, &lam, &f, &h, n).unwrap();
                    let exact = dim_datum_connected(&g, &lam, &f, &h).unwrap();
                    assert!((num.value.re - exact as f64).abs() < 1e-8, "{g} {kind:?} {lam}");
                    assert!(num.residual_imag < 1e-8);
                }
            }
        }
    }

    #[test]
    fn orthogonality_examples() {
        let a1 = build_root_datum('A', 1).unwrap();
        assert!(orthogonality_residual(&a1, &w(&[1]), &w(&[1]), 8).unwrap() < 1e-10);
        let a2 = build_root_datum('A', 2).unwrap();
        assert!(orthogonality_residual(&a2, &w(&[1, 0]), &w(&[0, 1]), 8).unwrap() < 1e-10);
        assert!(orthogonality_residual(&a2, &w(&[1, 1]), &w(&[1, 1]), 9).unwrap() < 1e-10);
    }

    #[test]
    fn density_nonnegative_on_grid() {
        let b2 = build_root_datum('B', 2).unwrap();
        let dens = b2.weyl_density();
        let g = QuadratureGrid::new(2, 9);
        for i in 0..g.len() {
            let v = dens.eval_angles(&g.node(i));
            assert!(v.re > -1e-9 && v.im.abs() < 1e-9);
        }
    }

    #[test]
    fn leading_bound_examples() {
        let a2 = build_root_datum('A', 2).unwrap();
        let one = FormalCharacter::one(2);
        let r = verify_leading_bound(&a2, &one).unwrap();
        assert!(r.holds && r.equality);
        let adj = a2.weight_multiplicities(&w(&[1, 1])).unwrap();
        let r = verify_leading_bound(&a2, &adj).unwrap();
        assert!(r.holds && !r.equality);
        assert_eq!(r.witness, &w(&[1, 1]) + a2.two_delta());
        let diff = &a2.weight_multiplicities(&w(&[1, 0])).unwrap() - &a2.weight_multiplicities(&w(&[0, 1])).unwrap();
        let r = verify_leading_bound(&a2, &diff).unwrap();
        assert!(r.holds && !r.equality);
        assert_eq!(verify_leading_bound(&a2, &FormalCharacter::zero(2)), Err(Error::ZeroCharacter));
    }
}
