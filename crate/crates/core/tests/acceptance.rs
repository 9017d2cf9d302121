//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use dimdata::branching::{dim_datum_connected, standard_subgroup, SubgroupKind};
use dimdata::charlat::{FormalCharacter, Weight};
use dimdata::compare::{classify_report, compare_data};
use dimdata::cyclo::Cyclotomic;
use dimdata::finquot::{character_table, generate_group, no_eigenvalue_one, GammaGroup, IntMatrix};
use dimdata::rootsys::{build_root_datum, RootDatum};
use dimdata::semidirect::{FiniteSubgroup, GroupElement, SemidirectGroup};
use dimdata::stmeasure::{moment_numeric, moment_points, orthogonality_residual, verify_leading_bound};
use dimdata::twining::{fit_eta, sl_restricted_angles, sl_swap, twisted_trace_adjoint};
use dimdata::Error;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: Error) -> String {
    err.to_string()
}

fn mat(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

/// a = diag(J₁, −J₁), b = J₂ with J_m = [[0, I_m], [−I_m, 0]].
fn example_gens() -> (IntMatrix, IntMatrix) {
    let j1 = mat(&[&[0, 1], &[-1, 0]]);
    let a = IntMatrix::block_diag(&[&j1, &j1.neg()]);
    let b = mat(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]);
    (a, b)
}

fn example_group() -> Result<(SemidirectGroup, FiniteSubgroup, FiniteSubgroup), String> {
    let (a, b) = example_gens();
    let g = SemidirectGroup::from_generators(&[a.clone(), b.clone()], 100).map_err(e)?;
    let h1 = FiniteSubgroup::generate(&[GroupElement::component(a)], 100).map_err(e)?;
    let h2 = FiniteSubgroup::generate(&[GroupElement::component(b)], 100).map_err(e)?;
    Ok((g, h1, h2))
}

fn boxed(rank: usize, max: i64) -> Vec<Weight> {
    let side = max + 1;
    (0..side.pow(rank as u32)).map(|i| Weight((0..rank).map(|k| (i / side.pow(k as u32)) % side).collect())).collect()
}

fn criterion_1() -> Outcome {
    let (g, h1, h2) = example_group()?;
    let gamma = g.gamma();
    ensure(gamma.order() == 8, || format!("|Γ| = {}", gamma.order()))?;
    let involutions: Vec<&IntMatrix> = (0..8).filter(|&i| gamma.element_order(i) == 2).map(|i| gamma.element(i)).collect();
    ensure(involutions == vec![&IntMatrix::identity(4).neg()], || format!("involutions {involutions:?}"))?;
    ensure(no_eigenvalue_one(gamma), || "Γ has an element with eigenvalue 1".into())?;
    let irreps = g.enumerate_irreps(6).map_err(e)?;
    let mut nonzero = 0;
    let mut pullbacks = 0;
    let mut support = Vec::new();
    for irr in &irreps {
        let d1 = g.dim_datum_finite(&h1, irr).map_err(e)?;
        let d2 = g.dim_datum_finite(&h2, irr).map_err(e)?;
        if irr.representative().is_zero() {
            pullbacks += 1;
        } else {
            nonzero += 1;
            ensure(d1 == d2, || format!("{}: {d1} ≠ {d2}", irr.label()))?;
        }
        if d1 != d2 {
            support.push(irr.label());
        }
    }
    ensure(pullbacks == 5, || format!("{pullbacks} pullback irreps"))?;
    ensure(support.len() == 2 && support.iter().all(|l| l.weight.is_zero()), || format!("support {support:?}"))?;
    Ok(format!("{nonzero} nonzero-orbit irreps agree, support size {}", support.len()))
}

fn criterion_2() -> Outcome {
    let (g, h1, h2) = example_group()?;
    let s1 = g.sato_tate_support(&h1).map_err(e)?;
    let s2 = g.sato_tate_support(&h2).map_err(e)?;
    ensure(s1 != s2, || "supports coincide".into())?;
    Ok(format!("|S₁| = {}, |S₂| = {}, |S₁ ∩ S₂| = {}", s1.len(), s2.len(), s1.intersection(&s2).count()))
}

fn criterion_3() -> Outcome {
    let (a, b) = example_gens();
    let p = mat(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
    ensure(p.has_eigenvalue_one(), || "swap has no eigenvalue 1".into())?;
    let gamma = generate_group(&[a.clone(), b.clone(), p], 1000).map_err(e)?;
    ensure(!no_eigenvalue_one(&gamma), || "enlarged Γ passes the eigenvalue test".into())?;
    let g = SemidirectGroup::new(gamma).map_err(e)?;
    let h1 = g.gamma_subgroup(&[a]).map_err(e)?;
    let h2 = g.gamma_subgroup(&[b]).map_err(e)?;
    let c = classify_report(&compare_data(&h1, &h2, &g, 1).map_err(e)?);
    ensure(!c.upgraded, || "upgrade granted".into())?;
    let t = mat(&[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
    ensure(t.has_eigenvalue_one(), || "transvection misses eigenvalue 1".into())?;
    ensure(matches!(generate_group(&[t], 100), Err(Error::CapExceeded(100))), || "transvection closure did not hit the cap".into())?;
    Ok(format!("|Γ'| = {}, upgrade withheld", g.gamma().order()))
}

fn criterion_4() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for g in [build_root_datum('A', 1).unwrap(), build_root_datum('A', 2).unwrap()] {
        for kind in SubgroupKind::ALL {
            let (f, h) = standard_subgroup(&g, kind).map_err(e)?;
            for lam in boxed(g.rank(), 3) {
                let exact = dim_datum_connected(&g, &lam, &f, &h).map_err(e)?;
                let n = moment_points(&g, &lam, &f, &h).map_err(e)?;
                let m = moment_numeric(&g, &lam, &f, &h, n).map_err(e)?;
                let dev = (m.value - Complex64::new(exact as f64, 0.0)).norm();
                ensure(dev < 1e-8, || format!("{g} {} {lam}: exact {exact}, numeric {}", kind.name(), m.value))?;
                worst = worst.max(dev);
                count += 1;
            }
        }
    }
    let a2 = build_root_datum('A', 2).unwrap();
    let adj = Weight(vec![1, 1]);
    for (kind, want) in [(SubgroupKind::PrincipalA1, 0), (SubgroupKind::MaximalTorus, 2)] {
        let (f, h) = standard_subgroup(&a2, kind).map_err(e)?;
        let d = dim_datum_connected(&a2, &adj, &f, &h).map_err(e)?;
        ensure(d == want, || format!("adjoint under {}: {d}", kind.name()))?;
    }
    Ok(format!("{count} cases, max deviation {worst:.1e}"))
}

fn criterion_5() -> Outcome {
    let mut worst = 0.0f64;
    let mut pairs = 0;
    for g in [build_root_datum('A', 1).unwrap(), build_root_datum('A', 2).unwrap()] {
        let ws = boxed(g.rank(), 2);
        for a in &ws {
            for b in &ws {
                let r = match orthogonality_residual(&g, a, b, 1) {
                    Err(Error::GridTooCoarse { required, .. }) => orthogonality_residual(&g, a, b, required),
                    other => other,
                }
                .map_err(e)?;
                ensure(r < 1e-10, || format!("{g} {a} {b}: residual {r:e}"))?;
                worst = worst.max(r);
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs, max residual {worst:.1e}"))
}

fn random_virtual(d: &RootDatum, rng: &mut ChaCha8Rng) -> FormalCharacter {
    loop {
        let mut chi = FormalCharacter::zero(d.rank());
        for _ in 0..rng.gen_range(1..=3) {
            let lam = Weight((0..d.rank()).map(|_| rng.gen_range(0..=2)).collect());
            let c: i64 = rng.gen_range(-3..=3);
            chi = &chi + &d.weight_multiplicities(&lam).unwrap().scale(&BigInt::from(c));
        }
        if !chi.is_zero() {
            return chi;
        }
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut total = 0;
    for (c, r) in [('A', 1), ('A', 2), ('B', 2)] {
        let d = build_root_datum(c, r).unwrap();
        let bound = d.lattice().norm_sq(d.two_delta());
        let mut samples: Vec<FormalCharacter> = (0..20).map(|_| random_virtual(&d, &mut rng)).collect();
        samples.push(FormalCharacter::one(d.rank()).scale(&BigInt::from(-3)));
        for chi in samples {
            let lb = verify_leading_bound(&d, &chi).map_err(e)?;
            // longest support weight of χ·D_G, computed directly
            let prod = &chi * &d.weyl_density();
            let longest: BigRational = prod.support().map(|w| d.lattice().norm_sq(w)).max().unwrap();
            let constant = chi.support().all(|w| w.is_zero());
            ensure(longest >= bound, || format!("{d}: {longest} < {bound} for {chi}"))?;
            ensure((longest == bound) == constant, || format!("{d}: equality mismatch for {chi}"))?;
            ensure(lb.holds && lb.equality == constant && d.lattice().norm_sq(&lb.witness) == longest, || format!("{d}: engine disagrees for {chi}"))?;
            total += 1;
        }
    }
    Ok(format!("{total} characters"))
}

fn criterion_7() -> Outcome {
    let mut invariant = 0;
    for n in [3usize, 4] {
        let pd = sl_swap(n).map_err(e)?;
        let rd = pd.restricted_datum().map_err(e)?;
        for lam in boxed(n - 1, 2) {
            if pd.theta(&lam) != lam {
                continue;
            }
            let mu = pd.restrict(&lam);
            rd.chi_mu(&mu).map_err(e)?;
            let chk = rd.verify_weyl4(&mu).map_err(e)?;
            ensure(chk.holds, || format!("A{}: Weyl identity fails at {mu}: {}", n - 1, chk.diff))?;
            invariant += 1;
        }
    }
    let pd = sl_swap(3).map_err(e)?;
    let rd = pd.restricted_datum().map_err(e)?;
    let chi = rd.chi_mu(&pd.restrict(&Weight(vec![1, 1]))).map_err(e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut samples = Vec::new();
    for _ in 0..10 {
        let a: f64 = rng.gen_range(0.0..1.0);
        let z = Complex64::from_polar(1.0, std::f64::consts::TAU * a);
        let tr = twisted_trace_adjoint(z);
        let expect = -(z * z) - (z * z).inv();
        ensure((tr - expect).norm() < 1e-9, || format!("trace at {z}: {tr} vs {expect}"))?;
        samples.push((tr, rd.eval(&chi, &sl_restricted_angles(3, &[a]))));
    }
    let (eta, resid) = fit_eta(&samples).ok_or("χ_μ vanished on every sample")?;
    ensure((eta.norm() - 1.0).abs() < 1e-9 && resid < 1e-9, || format!("η = {eta}, residual {resid:e}"))?;
    Ok(format!("{invariant} invariant weights, η = {:.3}{:+.3}i, residual {resid:.1e}", eta.re, eta.im))
}

/// Both orthogonality relations recomputed from the table entries.
fn table_exact(g: &GammaGroup) -> Result<String, String> {
    let t = character_table(g).map_err(e)?;
    let sizes: Vec<i64> = g.classes().iter().map(|c| c.len() as i64).collect();
    let order = g.order() as i64;
    let k = sizes.len();
    ensure(t.len() == k, || format!("{} rows for {k} classes", t.len()))?;
    let sum_sq: u64 = t.dims().iter().map(|d| d * d).sum();
    ensure(sum_sq == order as u64, || format!("Σd² = {sum_sq}"))?;
    let rows = t.rows();
    for i in 0..k {
        for j in 0..k {
            let mut s = Cyclotomic::zero(1);
            for c in 0..k {
                s = &s + &(&rows[i][c] * &rows[j][c].conj()).scale(&BigInt::from(sizes[c]));
            }
            let want = if i == j { order } else { 0 };
            ensure(s.to_integer().ok() == Some(BigInt::from(want)), || format!("rows {i},{j}: {s}"))?;
            let mut s = Cyclotomic::zero(1);
            for row in rows {
                s = &s + &(&row[i] * &row[j].conj());
            }
            let want = if i == j { order / sizes[i] } else { 0 };
            ensure(s.to_integer().ok() == Some(BigInt::from(want)), || format!("columns {i},{j}: {s}"))?;
        }
    }
    Ok(format!("{:?}", t.dims()))
}

fn criterion_8() -> Outcome {
    let (a, b) = example_gens();
    let q8 = table_exact(&generate_group(&[a, b], 100).map_err(e)?)?;
    let z4 = table_exact(&generate_group(&[mat(&[&[0, -1], &[1, 0]])], 100).map_err(e)?)?;
    Ok(format!("Q8 degrees {q8}, Z/4 degrees {z4}"))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0usize;
    // connected pairs: trivial datum, range, Weyl conjugation of the embedding
    for g in [build_root_datum('A', 1).unwrap(), build_root_datum('A', 2).unwrap()] {
        let weyl = g.weyl_group();
        for kind in SubgroupKind::ALL {
            let (f, h) = standard_subgroup(&g, kind).map_err(e)?;
            ensure(dim_datum_connected(&g, &Weight::zero(g.rank()), &f, &h).map_err(e)? == 1, || format!("{g} {}: trivial datum", kind.name()))?;
            for lam in boxed(g.rank(), 2) {
                let d = dim_datum_connected(&g, &lam, &f, &h).map_err(e)?;
                ensure(d <= g.weyl_dim(&lam).map_err(e)?, || format!("{g} {lam}: datum {d} exceeds dim"))?;
                let (w, _) = &weyl[rng.gen_range(0..weyl.len())];
                let fw = f.precompose(w);
                ensure(dim_datum_connected(&g, &lam, &fw, &h).map_err(e)? == d, || format!("{g} {lam}: not Weyl invariant"))?;
                checked += 1;
            }
        }
    }
    // finite subgroups of the example group: 50 random conjugations
    let (g, h1, h2) = example_group()?;
    let torus_sub = FiniteSubgroup::generate(&[GroupElement::torus(vec![Rational64::new(1, 2), Rational64::new(1, 3), Rational64::new(0, 1), Rational64::new(1, 6)])], 100).map_err(e)?;
    let mixed = FiniteSubgroup::generate(
        &[GroupElement::torus(vec![Rational64::new(1, 2); 4]), GroupElement::component(IntMatrix::identity(4).neg())],
        100,
    )
    .map_err(e)?;
    let subs = [FiniteSubgroup::trivial(4), h1, h2, torus_sub, mixed];
    let irreps = g.enumerate_irreps(1).map_err(e)?;
    let data = |h: &FiniteSubgroup| -> Result<Vec<u64>, String> {
        irreps.iter().map(|irr| g.dim_datum_finite(h, irr).map_err(e)).collect()
    };
    let base: Vec<Vec<u64>> = subs.iter().map(data).collect::<Result<_, _>>()?;
    for (h, d) in subs.iter().zip(&base) {
        for (irr, v) in irreps.iter().zip(d) {
            ensure(*v <= irr.dim(), || format!("{}: {v} > {}", irr.label(), irr.dim()))?;
            if irr.is_trivial() {
                ensure(*v == 1, || format!("trivial datum {v} for |H| = {}", h.order()))?;
            }
        }
    }
    let mut labels = BTreeSet::new();
    for k in 0..50 {
        let which = k % subs.len();
        let t: Vec<Rational64> = (0..4).map(|_| Rational64::new(rng.gen_range(0..12), rng.gen_range(1..7))).collect();
        let x = GroupElement::new(t, g.gamma().element(rng.gen_range(0..8)).clone()).map_err(e)?;
        let conj = subs[which].conjugate(&x).map_err(e)?;
        ensure(data(&conj)? == base[which], || format!("conjugation {k} changed the data of subgroup {which}"))?;
        labels.insert(which);
        checked += irreps.len();
    }
    Ok(format!("{checked} data checked, {} subgroups conjugated 50 times", labels.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 9] = [
        ("1 quaternion example reproduction", criterion_1, 10),
        ("2 Sato-Tate support divergence", criterion_2, 1),
        ("3 eigenvalue-one negative control", criterion_3, 1),
        ("4 connected exact vs numeric", criterion_4, 60),
        ("5 orthogonality residuals", criterion_5, 30),
        ("6 leading-term length law", criterion_6, 30),
        ("7 twining identities", criterion_7, 30),
        ("8 character-table exactness", criterion_8, 5),
        ("9 global invariants", criterion_9, 60),
    ];
    let mut failed = 0;
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let slow = elapsed > Duration::from_secs(limit);
        let (ok, detail) = match outcome {
            Ok(d) if !slow => (true, d),
            Ok(d) => (false, format!("{d}; exceeded {limit}s")),
            Err(d) => (false, d),
        };
        if !ok {
            failed += 1;
        }
        println!("{} criterion {name} [{:.2}s / {limit}s]: {detail}", if ok { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
