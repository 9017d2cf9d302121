use dimdata::compare::{classify_report, compare_data, search_almost_equal, subgroup_classes, Certification};
use dimdata::finquot::{generate_group, no_eigenvalue_one, q8_generators, IntMatrix};
use dimdata::semidirect::{example_q8, FiniteSubgroup, GroupElement, SemidirectGroup};
use dimdata::Error;
use num_rational::Rational64;

fn swap_blocks() -> IntMatrix {
    IntMatrix::from_rows(&[vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap()
}

#[test]
fn identical_subgroups_are_equal() {
    let (g, h1, _) = example_q8().unwrap();
    let r = compare_data(&h1, &h1, &g, 2).unwrap();
    assert!(r.support.is_empty());
    let c = classify_report(&r);
    assert!(c.all_passed());
    assert_eq!(c.certification, Certification::Equal);
    assert_eq!(c.certification.exit_code(), 2);
}

#[test]
fn example_report_and_classification() {
    let (g, h1, h2) = example_q8().unwrap();
    let r = compare_data(&h1, &h2, &g, 3).unwrap();
    assert_eq!(r.support.len(), 2);
    assert!(r.support.iter().all(|l| l.weight.is_zero()));
    let ex = r.exceptional_character();
    let mut coeffs: Vec<i64> = ex.terms.values().copied().collect();
    coeffs.sort();
    assert_eq!(coeffs, vec![-1, 1]);
    let trivial = r.rows.iter().find(|row| row.label.weight.is_zero() && row.label.stab_char == 0).unwrap();
    assert_eq!(trivial.coefficient(), 0);
    // the two exceptional characters are linear with kernels ⟨a⟩ and ⟨b⟩
    let table = g.gamma_table();
    let (a, b) = q8_generators();
    let ia = g.gamma().index_of(&a).unwrap();
    let ib = g.gamma().index_of(&b).unwrap();
    for l in &r.support {
        assert_eq!(table.dims()[l.stab_char], 1);
        let va = table.value(g.gamma(), l.stab_char, ia).to_integer().unwrap();
        let vb = table.value(g.gamma(), l.stab_char, ib).to_integer().unwrap();
        let coeff = ex.terms[l];
        assert_eq!((va == 1.into(), vb == 1.into()), (coeff == 1, coeff == -1));
    }
    let c = classify_report(&r);
    assert!(c.all_passed(), "{c:?}");
    assert_eq!(c.checks[1].detail, "4 = 4");
    assert_eq!(c.certification, Certification::AlmostEqual);
    assert_eq!(c.certification.exit_code(), 0);
    assert!(c.upgraded);
}

#[test]
fn coefficients_match_float_averages() {
    let (g, h1, h2) = example_q8().unwrap();
    let r = compare_data(&h1, &h2, &g, 1).unwrap();
    let irreps = g.enumerate_irreps(1).unwrap();
    let mean = |h: &FiniteSubgroup, i| {
        h.elements().iter().map(|x| g.induced_char(&irreps[i], x).unwrap().to_complex()).sum::<num_complex::Complex64>() / h.order() as f64
    };
    for (i, row) in r.rows.iter().enumerate() {
        assert_eq!(row.label, irreps[i].label());
        let diff = mean(&h1, i) - mean(&h2, i);
        assert!((diff.re - row.coefficient() as f64).abs() < 1e-9 && diff.im.abs() < 1e-9);
    }
}

#[test]
fn swapping_subgroups_negates_coefficients() {
    let (g, h1, h2) = example_q8().unwrap();
    let r12 = compare_data(&h1, &h2, &g, 1).unwrap();
    let r21 = compare_data(&h2, &h1, &g, 1).unwrap();
    assert_eq!(r12.support, r21.support);
    for (a, b) in r12.rows.iter().zip(&r21.rows) {
        assert_eq!(a.coefficient(), -b.coefficient());
    }
}

#[test]
fn synthetic_violation_is_flagged() {
    let (g, h1, h2) = example_q8().unwrap();
    let mut r = compare_data(&h1, &h2, &g, 1).unwrap();
    let k = r.rows.iter().position(|row| !row.pullback).unwrap();
    r.rows[k].d1 += 1;
    r.support.push(r.rows[k].label.clone());
    let c = classify_report(&r);
    assert!(!c.checks[0].passed);
    assert_eq!(c.certification, Certification::NotAlmostEqual);
    assert_eq!(c.certification.exit_code(), 1);
    assert!(!c.upgraded);
}

#[test]
fn torus_parts_differ_on_nonzero_orbits() {
    let (g, h1, _) = example_q8().unwrap();
    let half = GroupElement::torus(vec![Rational64::new(1, 2); 4]);
    let h = FiniteSubgroup::generate(&[half, GroupElement::component(q8_generators().0)], 100).unwrap();
    let r = compare_data(&h1, &h, &g, 1).unwrap();
    let c = classify_report(&r);
    assert_eq!(c.certification, Certification::NotAlmostEqual);
    assert!(!c.checks[1].passed || !c.checks[0].passed);
}

#[test]
fn negative_control_withholds_upgrade() {
    let (a, b) = q8_generators();
    let gamma = generate_group(&[a.clone(), b.clone(), swap_blocks()], 1000).unwrap();
    assert!(!no_eigenvalue_one(&gamma));
    let g = SemidirectGroup::new(gamma).unwrap();
    let h1 = g.gamma_subgroup(&[a]).unwrap();
    let h2 = g.gamma_subgroup(&[b]).unwrap();
    let r = compare_data(&h1, &h2, &g, 1).unwrap();
    assert!(!r.lemma_hypotheses);
    assert!(!classify_report(&r).upgraded);
}

#[test]
fn subgroup_lattice_of_q8() {
    let (a, b) = q8_generators();
    let q8 = generate_group(&[a, b], 100).unwrap();
    let sizes: Vec<usize> = subgroup_classes(&q8).iter().map(Vec::len).collect();
    assert_eq!(sizes, vec![1, 2, 4, 4, 4, 8]);
}

#[test]
fn search_pools() {
    let (a, b) = q8_generators();
    let found = search_almost_equal(4, &[vec![a.clone(), b.clone()]], 1).unwrap();
    assert_eq!(found.len(), 3);
    let g = generate_group(&[a.clone(), b.clone()], 100).unwrap();
    let ha: Vec<IntMatrix> = g.subgroup_generated(&[g.index_of(&a).unwrap()]).iter().map(|&i| g.element(i).clone()).collect();
    let hb: Vec<IntMatrix> = g.subgroup_generated(&[g.index_of(&b).unwrap()]).iter().map(|&i| g.element(i).clone()).collect();
    assert!(found.iter().any(|c| (c.h1 == ha && c.h2 == hb) || (c.h1 == hb && c.h2 == ha)));
    assert!(found.iter().all(|c| c.support.len() == 2));

    assert!(search_almost_equal(4, &[vec![]], 2).unwrap().is_empty());
    assert!(search_almost_equal(2, &[vec![IntMatrix::identity(2).neg()]], 2).unwrap().is_empty());
    let shear = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
    assert_eq!(search_almost_equal(2, &[vec![shear]], 1), Err(Error::CapExceeded(100)));
    // a conjugated copy of Γ gives the same number of candidates
    let p = IntMatrix::from_rows(&[vec![1, 1, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]).unwrap();
    let pi = p.inverse().unwrap();
    let conj = |x: &IntMatrix| p.mul(x).mul(&pi);
    assert_eq!(search_almost_equal(4, &[vec![conj(&a), conj(&b)]], 1).unwrap().len(), 3);
}
