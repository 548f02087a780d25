mod common;

use common::*;
use lieword::catalog::random_2step;
use lieword::classify::{breadth_profile, classify_breadth};
use lieword::gfp::{Fp, PrimeField};
use lieword::image::{report_from_image, sum_depth, word_image, Budgets};
use lieword::liecore::{HeisenbergForm, LieAlgebra};
use lieword::linalg::{rref, FpMatrix, Subspace};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn change_basis_keeps_axioms_and_series((p, idx, raw, diag) in basis_change()) {
        check_change_basis(p, idx, &raw, &diag)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn dimension_formula((p, n, a, b) in subspace_pair()) {
        check_dimension_formula(p, n, &a, &b)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn image_transports_along_basis_change((p, idx, raw, diag) in basis_change()) {
        check_image_transport(p, idx, &raw, &diag)?;
    }

    #[test]
    fn breadth_profile_invariant_under_basis_change((p, idx, raw, diag) in basis_change()) {
        let es = entries(p);
        let l = &es[idx % es.len()].algebra;
        let f = l.field();
        let m = l.change_basis(&invertible(&f, l.dim(), &raw, &diag)).unwrap();
        let b = Budgets::default().image;
        prop_assert_eq!(breadth_profile(l, b).unwrap(), breadth_profile(&m, b).unwrap());
    }

    #[test]
    fn subspace_membership_and_enumeration((p, n, a, _b) in subspace_pair(), v in prop::collection::vec(0u64..5, 6)) {
        let f = field(p);
        let a: Vec<Vec<Fp>> = a.iter().map(|v| fp_vec(&f, v)).collect();
        let s = Subspace::span(&f, &a, n).unwrap();
        let v = fp_vec(&f, &v[..n]);
        let mut grown = a.clone();
        grown.push(v.clone());
        let same = Subspace::span(&f, &grown, n).unwrap().dim() == s.dim();
        prop_assert_eq!(s.contains(&v).unwrap(), same);
        let pts: Vec<Vec<Fp>> = s.enumerate(u64::MAX).unwrap().collect();
        prop_assert_eq!(pts.len(), (p as usize).pow(s.dim() as u32));
        let distinct: std::collections::HashSet<_> = pts.iter().collect();
        prop_assert_eq!(distinct.len(), pts.len());
        for q in &pts {
            prop_assert!(s.contains(q).unwrap());
        }
    }

    #[test]
    fn rref_is_idempotent(p in prime(), rows in 1usize..5, cols in 1usize..6, raw in prop::collection::vec(any::<u64>(), 30)) {
        let f = field(p);
        let m = FpMatrix::new(rows, cols, fp_vec(&f, &raw[..rows * cols].iter().map(|v| v % p).collect::<Vec<_>>())).unwrap();
        let once = rref(&f, &m);
        let twice = rref(&f, &once.matrix);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn random_2step_is_two_step(p in prime(), g in 2usize..=5, d in 1usize..=10, seed in any::<u64>()) {
        let d = 1 + (d - 1) % (g * (g - 1) / 2);
        let l = random_2step(field(p), g, d, seed).unwrap();
        prop_assert!(l.validate().is_valid());
        prop_assert!(l.nilpotency_class().unwrap() <= 2);
        prop_assert_eq!(l.derived_subalgebra().dim(), d);
        let derived = l.derived_subalgebra();
        prop_assert!(l.bracket_spaces(&l.full_space(), &derived).is_zero());
        prop_assert_eq!(l.dim(), g + d);
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn direct_sum_law(p in prime(), i in 0usize..64, j in 0usize..64) {
        let es = entries(p);
        let small: Vec<_> = es
            .iter()
            .filter(|e| e.algebra.dim() <= 6 && e.algebra.derived_subalgebra().dim() <= 3)
            .collect();
        let a = &small[i % small.len()].algebra;
        let b = &small[j % small.len()].algebra;
        let s = a.direct_sum(b).unwrap();
        let bud = Budgets::default();
        let (wa, wb, ws) = (word_image(a, &bud).unwrap(), word_image(b, &bud).unwrap(), word_image(&s, &bud).unwrap());
        prop_assert_eq!(ws.len(), wa.len() * wb.len());
        let (n, m) = (a.dim(), b.dim());
        for v in s.derived_subalgebra().enumerate(u64::MAX).unwrap() {
            let inside = wa.contains(&v[..n]).unwrap() && wb.contains(&v[n..n + m]).unwrap();
            prop_assert_eq!(ws.contains(&v).unwrap(), inside);
        }
        prop_assert_eq!(ws.is_full(), wa.is_full() && wb.is_full());
    }
}

#[test]
fn quadratic_residues_and_roots() {
    for p in [3u64, 5, 7, 11, 13] {
        let f = field(p);
        let r = f.find_nonsquare();
        let squares = f.units().filter(|&a| f.is_square(a)).count();
        assert_eq!(squares as u64, (p - 1) / 2);
        for a in f.units() {
            assert!(f.is_square(a) ^ f.is_square(f.mul(a, r)));
        }
    }
    for p in [3u64, 5, 7] {
        let f = field(p);
        for a in f.units() {
            for b in f.elements() {
                for c in f.elements() {
                    let mut got = f.solve_quadratic(a, b, c).unwrap();
                    got.sort();
                    let want: Vec<Fp> = f
                        .elements()
                        .filter(|&t| f.add(f.mul(a, f.mul(t, t)), f.add(f.mul(b, t), c)).is_zero())
                        .collect();
                    assert_eq!(got, want, "p={p} {a}t^2+{b}t+{c}");
                }
            }
        }
    }
}

#[test]
fn breadth_invariance_exhaustive_small_catalog() {
    for e in entries(3).iter().filter(|e| e.algebra.dim() <= 7) {
        breadth_invariance_exhaustive(&e.algebra).unwrap();
    }
}

#[test]
fn stem_reduce_preserves_breadth_type_and_image_status() {
    for p in [3, 5] {
        for e in entries(p) {
            stem_preserves(&e.algebra).unwrap();
            let s = e.algebra.stem_reduce().unwrap().stem;
            if s.dim() > 0 {
                assert!(s.derived_subalgebra().contains_subspace(&s.center()).unwrap());
            }
        }
    }
}

#[test]
fn centralizers_contain_the_center() {
    let f = field(3);
    for e in entries(3).iter().filter(|e| e.algebra.dim() <= 6) {
        let l = &e.algebra;
        let z = l.center();
        for x in l.full_space().enumerate(u64::MAX).unwrap() {
            let c = l.centralizer(&l.span(std::slice::from_ref(&x)).unwrap());
            assert!(c.contains_subspace(&z).unwrap());
            assert_eq!(c.dim() == l.dim(), z.contains(&x).unwrap(), "{:?} {x:?}", l.name());
        }
        let _ = &f;
    }
}

#[test]
fn quotient_series_dimensions() {
    for e in entries(3) {
        let l = &e.algebra;
        let series = l.lower_central_series();
        let mut ideals = vec![l.center(), l.derived_subalgebra()];
        ideals.extend(series.terms.iter().cloned());
        for ideal in ideals {
            let q = l.quotient(&ideal).unwrap();
            let qs = q.algebra.lower_central_series().dims();
            for (i, term) in series.terms.iter().enumerate() {
                let want = term.sum(&ideal).unwrap().dim() - ideal.dim();
                let got = qs.get(i).copied().unwrap_or(0);
                assert_eq!(got, want, "{} / ideal of dim {}", e.key, ideal.dim());
            }
        }
    }
}

#[test]
fn heisenberg_certificates_reproduce_the_table() {
    for p in [3, 5, 7] {
        for e in entries(p) {
            let l = &e.algebra;
            match l.heisenberg_normal_form().unwrap() {
                HeisenbergForm::Basis(b) => {
                    assert!(b.verify(l), "{}", e.key);
                    let f = l.field();
                    let z0 = &b.z[0];
                    let zero = vec![Fp::ZERO; l.dim()];
                    let mut basis: Vec<(char, usize, &Vec<Fp>)> = Vec::new();
                    basis.extend(b.x.iter().enumerate().map(|(i, v)| ('x', i, v)));
                    basis.extend(b.y.iter().enumerate().map(|(i, v)| ('y', i, v)));
                    basis.extend(b.z.iter().enumerate().map(|(i, v)| ('z', i, v)));
                    assert_eq!(basis.len(), l.dim());
                    for &(ka, ia, u) in &basis {
                        for &(kb, ib, v) in &basis {
                            let br = l.bracket(u, v).unwrap();
                            let want = match (ka, kb) {
                                ('x', 'y') if ia == ib => z0.clone(),
                                ('y', 'x') if ia == ib => z0.iter().map(|&c| f.neg(c)).collect(),
                                _ => zero.clone(),
                            };
                            assert_eq!(br, want, "{} [{ka}{ia},{kb}{ib}]", e.key);
                        }
                    }
                }
                HeisenbergForm::NotBreadthOne => {
                    assert_ne!(l.derived_subalgebra().dim(), 1, "{}", e.key);
                }
            }
        }
    }
}

#[test]
fn breadth_clauses_match_measured_breadth() {
    for p in [3, 5] {
        for e in entries(p) {
            let c = classify_breadth(&e.algebra, Budgets::default().image).unwrap();
            assert!(c.consistent, "{} at p={p}: {c:?}", e.key);
        }
        for seed in 0..20 {
            let l = random_2step(field(p), 4, 1 + seed as usize % 6, seed).unwrap();
            let c = classify_breadth(&l, Budgets::default().image).unwrap();
            assert!(c.consistent, "seed {seed}: {c:?}");
        }
    }
}

#[test]
fn derived_four_entries_have_breadth_three_or_four() {
    for p in [3, 5] {
        for e in entries(p) {
            let prof = breadth_profile(&e.algebra, Budgets::default().image).unwrap();
            if e.algebra.derived_subalgebra().dim() == 4 {
                assert!(prof.type_set.contains(&3) || prof.type_set.contains(&4), "{}", e.key);
            }
        }
    }
}

#[test]
fn image_contains_zero_is_scaling_closed_and_spans() {
    let b = Budgets::default();
    for p in [3, 5] {
        for e in entries(p) {
            let l = &e.algebra;
            let f = l.field();
            let w = word_image(l, &b).unwrap();
            let derived = l.derived_subalgebra();
            assert!(w.contains(&vec![Fp::ZERO; l.dim()]).unwrap());
            let all: Vec<Vec<Fp>> = w.vectors().collect();
            for v in &all {
                for c in f.units() {
                    let cv: Vec<Fp> = v.iter().map(|&x| f.mul(c, x)).collect();
                    assert!(w.contains(&cv).unwrap(), "{}", e.key);
                }
            }
            assert_eq!(Subspace::span(&f, &all, l.dim()).unwrap(), derived, "{}", e.key);
            let r = report_from_image(l, &w, &b).unwrap();
            assert_eq!(r.sum_depth == 1, r.equals_derived, "{}", e.key);
            assert_eq!(sum_depth(&w).unwrap().depth, r.sum_depth);
        }
    }
}

#[test]
fn zero_dimensional_stem_of_abelian() {
    let f = PrimeField::new(3).unwrap();
    let l = LieAlgebra::abelian(f, 3).unwrap();
    let r = l.stem_reduce().unwrap();
    assert_eq!((r.stem.dim(), r.abelian_dim), (0, 3));
}
