//! Reproducibility suites behind `dimdata verify`.

use dimdata::branching::{branch, dim_datum_connected, standard_subgroup, SubgroupKind};
use dimdata::charlat::{FormalCharacter, Weight};
use dimdata::compare::{classify_report, compare_data};
use dimdata::finquot::{character_table, generate_group, no_eigenvalue_one, q8_generators, IntMatrix};
use dimdata::rootsys::{build_root_datum, RootDatum};
use dimdata::semidirect::{example_q8, SemidirectGroup};
use dimdata::stmeasure::{moment_numeric, moment_points, orthogonality_residual, verify_leading_bound};
use dimdata::twining::{fit_eta, sl_restricted_angles, sl_swap, twisted_trace_adjoint, twisted_trace_adjoint_sl};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const SUITES: [&str; 5] = ["weyl", "branching", "mackey", "twining", "quadrature"];

#[derive(Clone, Debug, Serialize)]
pub struct SuiteCheck {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

pub struct Params {
    pub seed: u64,
    pub bound: i64,
    pub tolerance: f64,
}

struct Recorder {
    suite: &'static str,
    out: Vec<SuiteCheck>,
}

impl Recorder {
    fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String), dimdata::Error>) {
        let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.out.push(SuiteCheck { suite: self.suite, name: name.into(), passed, detail });
    }
}

pub fn run_suite(name: &str, p: &Params) -> Option<Vec<SuiteCheck>> {
    let suite = SUITES.into_iter().find(|s| *s == name)?;
    let mut r = Recorder { suite, out: Vec::new() };
    match suite {
        "weyl" => weyl(&mut r, p),
        "branching" => branching(&mut r),
        "mackey" => mackey(&mut r, p),
        "twining" => twining(&mut r, p),
        _ => quadrature(&mut r, p),
    }
    Some(r.out)
}

fn boxed(rank: usize, max: i64) -> Vec<Weight> {
    let side = max + 1;
    (0..side.pow(rank as u32))
        .map(|i| Weight((0..rank).map(|k| (i / side.pow(k as u32)) % side).collect()))
        .collect()
}

fn types() -> Vec<RootDatum> {
    [('A', 1), ('A', 2), ('A', 3), ('B', 2), ('C', 3), ('G', 2)]
        .into_iter()
        .map(|(c, r)| build_root_datum(c, r).expect("standard type"))
        .collect()
}

/// A nonzero virtual character with small irreducible constituents.
pub fn random_virtual(d: &RootDatum, rng: &mut ChaCha8Rng) -> Result<FormalCharacter, dimdata::Error> {
    loop {
        let mut chi = FormalCharacter::zero(d.rank());
        for _ in 0..rng.gen_range(1..=3) {
            let lam = Weight((0..d.rank()).map(|_| rng.gen_range(0..=2)).collect());
            let c: i64 = rng.gen_range(-3..=3);
            chi = &chi + &d.weight_multiplicities(&lam)?.scale(&c.into());
        }
        if !chi.is_zero() {
            return Ok(chi);
        }
    }
}

fn weyl(r: &mut Recorder, p: &Params) {
    for d in types() {
        r.run(format!("{d}: Weyl dimension = Freudenthal degree"), || {
            for lam in boxed(d.rank(), if d.rank() > 2 { 1 } else { 2 }) {
                let deg = d.weight_multiplicities(&lam)?.degree();
                if deg != d.weyl_dim(&lam)?.into() {
                    return Ok((false, format!("{lam}: {deg}")));
                }
            }
            Ok((true, "all weights in the box".into()))
        });
        r.run(format!("{d}: density leading term"), || {
            let (w, c) = d.leading_term(&d.weyl_density())?;
            let sign = if d.positive_roots().len() % 2 == 0 { 1 } else { -1 };
            Ok((&w == d.two_delta() && c == sign.into(), format!("{w} with coefficient {c}")))
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    for (c, rank) in [('A', 1), ('A', 2), ('B', 2)] {
        let d = build_root_datum(c, rank).expect("standard type");
        r.run(format!("{d}: leading-term length bound on 20 virtual characters"), || {
            let one = verify_leading_bound(&d, &FormalCharacter::one(d.rank()))?;
            if !(one.holds && one.equality) {
                return Ok((false, "constant character misses equality".into()));
            }
            for _ in 0..20 {
                let chi = random_virtual(&d, &mut rng)?;
                let b = verify_leading_bound(&d, &chi)?;
                if !b.holds {
                    return Ok((false, format!("{chi}: |{}|² = {} < {}", b.witness, b.length_sq, b.bound_sq)));
                }
            }
            Ok((true, format!("seed {}", p.seed)))
        });
    }
}

fn branching(r: &mut Recorder) {
    for g in [build_root_datum('A', 1).unwrap(), build_root_datum('A', 2).unwrap()] {
        for kind in SubgroupKind::ALL {
            r.run(format!("{g} ⊃ {}: dimension conserved", kind.name()), || {
                let (f, h) = standard_subgroup(&g, kind)?;
                for lam in boxed(g.rank(), 3) {
                    let b = branch(&g, &lam, &f, &h)?;
                    if b.total_dim(&h)? != g.weyl_dim(&lam)? {
                        return Ok((false, format!("{lam}")));
                    }
                }
                Ok((true, "coords ≤ 3".into()))
            });
        }
    }
    let a2 = build_root_datum('A', 2).unwrap();
    for (kind, want) in [(SubgroupKind::PrincipalA1, 0), (SubgroupKind::MaximalTorus, 2)] {
        r.run(format!("A2 adjoint under {}", kind.name()), || {
            let (f, h) = standard_subgroup(&a2, kind)?;
            let d = dim_datum_connected(&a2, &Weight(vec![1, 1]), &f, &h)?;
            Ok((d == want, format!("{d}")))
        });
    }
}

fn mackey(r: &mut Recorder, p: &Params) {
    r.run("Q8 group and eigenvalue test", || {
        let (g, _, _) = example_q8()?;
        let gamma = g.gamma();
        let inv: Vec<usize> = (0..gamma.order()).filter(|&i| gamma.element_order(i) == 2).collect();
        let unique = inv.len() == 1 && *gamma.element(inv[0]) == IntMatrix::identity(4).neg();
        Ok((gamma.order() == 8 && unique && no_eigenvalue_one(gamma), format!("order {}, {} involution(s)", gamma.order(), inv.len())))
    });
    r.run(format!("Q8 example at bound {}", p.bound), || {
        let (g, h1, h2) = example_q8()?;
        let rep = compare_data(&h1, &h2, &g, p.bound)?;
        let nonzero_agree = rep.rows.iter().filter(|row| !row.pullback).all(|row| row.d1 == row.d2);
        let c = classify_report(&rep);
        let ok = nonzero_agree && rep.support.len() == 2 && c.all_passed() && c.upgraded;
        Ok((ok, format!("{} irreps, support {}", rep.rows.len(), rep.support.len())))
    });
    r.run("Sato-Tate supports differ", || {
        let (g, h1, h2) = example_q8()?;
        Ok((g.sato_tate_support(&h1)? != g.sato_tate_support(&h2)?, String::new()))
    });
    r.run("negative control withholds the upgrade", || {
        let (a, b) = q8_generators();
        let p4 = IntMatrix::from_rows(&[vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 0, 0, 0], vec![0, 1, 0, 0]])?;
        let gamma = generate_group(&[a.clone(), b.clone(), p4], 1000)?;
        let fails = !no_eigenvalue_one(&gamma);
        let g = SemidirectGroup::new(gamma)?;
        let rep = compare_data(&g.gamma_subgroup(&[a])?, &g.gamma_subgroup(&[b])?, &g, 1)?;
        let shear = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]])?;
        let capped = matches!(generate_group(&[shear], 100), Err(dimdata::Error::CapExceeded(_)));
        Ok((fails && !classify_report(&rep).upgraded && capped, String::new()))
    });
    for (name, gens) in [("Q8", vec![q8_generators().0, q8_generators().1]), ("Z/4", vec![IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]).expect("square")])] {
        r.run(format!("{name} character table orthogonality"), || {
            let g = generate_group(&gens, 100)?;
            let t = character_table(&g)?;
            t.check_orthogonality()?;
            Ok((true, format!("degrees {:?}", t.dims())))
        });
    }
}

fn twining(r: &mut Recorder, p: &Params) {
    for n in [3usize, 4] {
        r.run(format!("A{} folded: χ_μ and Weyl identity", n - 1), || {
            let pd = sl_swap(n)?;
            let rd = pd.restricted_datum()?;
            let rank = n - 1;
            let mut count = 0;
            for lam in boxed(rank, 2) {
                if pd.theta(&lam) != lam {
                    continue;
                }
                let mu = pd.restrict(&lam);
                rd.chi_mu(&mu)?;
                if !rd.verify_weyl4(&mu)?.holds {
                    return Ok((false, format!("μ = {mu}")));
                }
                count += 1;
            }
            Ok((true, format!("{count} invariant weights")))
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    r.run("sl3 twisted trace = -z²-z⁻²", || {
        let worst = (0..10)
            .map(|_| {
                let z = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
                (twisted_trace_adjoint(z) + z * z + (z * z).inv()).norm()
            })
            .fold(0.0, f64::max);
        Ok((worst < p.tolerance, format!("max deviation {worst:.2e}")))
    });
    for n in [3usize, 4] {
        r.run(format!("sl{n} twisted trace = η·χ_μ"), || {
            let pd = sl_swap(n)?;
            let rd = pd.restricted_datum()?;
            let adj = pd.restrict(pd.base().positive_roots().last().expect("nonempty"));
            let chi = rd.chi_mu(&adj)?;
            let samples: Vec<(Complex64, Complex64)> = (0..10)
                .map(|_| {
                    let a: Vec<f64> = (0..n / 2).map(|_| rng.gen_range(0.0..1.0)).collect();
                    (twisted_trace_adjoint_sl(n, &a), rd.eval(&chi, &sl_restricted_angles(n, &a)))
                })
                .collect();
            let Some((eta, resid)) = fit_eta(&samples) else { return Ok((false, "χ_μ vanished on all samples".into())) };
            Ok(((eta.norm() - 1.0).abs() < p.tolerance && resid < p.tolerance, format!("η = {:.6}{:+.6}i, residual {resid:.2e}", eta.re, eta.im)))
        });
    }
}

fn quadrature(r: &mut Recorder, p: &Params) {
    for g in [build_root_datum('A', 1).unwrap(), build_root_datum('A', 2).unwrap()] {
        for kind in SubgroupKind::ALL {
            r.run(format!("{g} ⊃ {}: grid moment = exact datum", kind.name()), || {
                let (f, h) = standard_subgroup(&g, kind)?;
                let mut worst = 0.0f64;
                for lam in boxed(g.rank(), 3) {
                    let n = moment_points(&g, &lam, &f, &h)?;
                    let m = moment_numeric(&g, &lam, &f, &h, n)?;
                    let exact = dim_datum_connected(&g, &lam, &f, &h)?;
                    worst = worst.max((m.value - Complex64::new(exact as f64, 0.0)).norm());
                }
                Ok((worst < p.tolerance, format!("max deviation {worst:.2e}")))
            });
        }
        r.run(format!("{g}: orthogonality of irreducible characters"), || {
            let ws = boxed(g.rank(), 2);
            let mut worst = 0.0f64;
            for a in &ws {
                for b in &ws {
                    let res = match orthogonality_residual(&g, a, b, 2) {
                        Err(dimdata::Error::GridTooCoarse { required, .. }) => orthogonality_residual(&g, a, b, required)?,
                        other => other?,
                    };
                    worst = worst.max(res);
                }
            }
            Ok((worst < 1e-10, format!("max residual {worst:.2e}")))
        });
    }
}
