mod common;

use common::*;
use proptest::prelude::*;
use quasihom_core::cartan::{self, act_group, conj, phi, table, CurvatureModuleElement};
use quasihom_core::exactalg::linalg::mat_vec;
use quasihom_core::exactalg::rational::{int, rat};
use quasihom_core::exactalg::{parse_expr, Monomial, Poly, Rational, Var};
use quasihom_core::families::{metric_gcd, FamilyParams};
use quasihom_core::geometry::ricci_operator;
use quasihom_core::killing::{bracket, is_killing, solve_killing, VectorField};
use quasihom_core::liealg::{aff_plus_r, heisenberg, make_sol, make_unipotent_case, sl2, LieAlgebra};
use std::collections::BTreeMap;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -3i64..=3), 0..5).prop_map(|terms| {
        Poly::from_terms(terms.into_iter().map(|((a, b, c), k)| (Monomial([a, b, c]), int(k))))
    })
}

fn small_field() -> impl Strategy<Value = VectorField> {
    (small_poly(), small_poly(), small_poly()).prop_map(|(a, b, c)| VectorField::from_polys([a, b, c]))
}

fn cross_is_zero(a: &[Rational], b: &[Rational]) -> bool {
    (0..3).all(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        (&a[j] * &b[k] - &a[k] * &b[j]) == int(0)
    })
}

proptest! {
    #![proptest_config(fixed_config(12, 0x5eed_0001))]

    #[test]
    fn solved_killing_fields_close_under_bracket(c in small_rational(), d in small_rational()) {
        let p = FamilyParams::new(c, d);
        let g = metric_gcd(&p);
        let basis = solve_killing(&g, 2, &p.exp_rates()).unwrap();
        for x in basis.fields() {
            prop_assert!(is_killing(&g, x));
        }
        let fields = basis.fields();
        for i in 0..fields.len() {
            for j in i + 1..fields.len() {
                prop_assert!(is_killing(&g, &bracket(&fields[i], &fields[j])));
            }
        }
        prop_assert!(basis.algebra().is_ok());
    }

    #[test]
    fn solver_dimension_is_monotone_in_degree(c in small_rational(), d in small_rational()) {
        let p = FamilyParams::new(c, d);
        let g = metric_gcd(&p);
        let dims: Vec<usize> = (0..=3).map(|k| solve_killing(&g, k, &p.exp_rates()).unwrap().dim()).collect();
        prop_assert!(dims.windows(2).all(|w| w[0] <= w[1]), "{dims:?}");
    }

    #[test]
    fn ricci_preserves_line_bundles(c in small_rational(), d in small_rational(), seed in any::<u64>()) {
        let p = FamilyParams::new(c.clone(), d.clone());
        let g = metric_gcd(&p);
        let a = ricci_operator(&g);
        let mut rng = rng(seed);
        for _ in 0..5 {
            let pt = random_point(&mut rng);
            let m = a.at(&pt).unwrap();
            let z = &pt[2];
            let dx = vec![int(1), int(0), int(0)];
            let dz = vec![int(0), int(0), int(1)];
            // Null lines of ∂x^⊥ = span{−Dz ∂x + ∂h, ∂z}: ∂z and a − (g(a,a)/2) ∂z.
            let qa = (&c - &d * &d) * z * z;
            let other = vec![-(&d * z), int(1), -(qa / int(2))];
            for v in [dx, dz, other] {
                prop_assert!(cross_is_zero(&mat_vec(&m, &v), &v));
            }
        }
    }
}

proptest! {
    #![proptest_config(fixed_config(64, 0x5eed_0002))]

    #[test]
    fn jacobi_identity_for_vector_fields(x in small_field(), y in small_field(), z in small_field()) {
        let a = bracket(&x, &bracket(&y, &z));
        let b = bracket(&y, &bracket(&z, &x));
        let c = bracket(&z, &bracket(&x, &y));
        prop_assert!((&(&a + &b) + &c).is_zero());
    }

    #[test]
    fn polynomial_display_reparses(p in small_poly()) {
        let text = p.to_string();
        prop_assert_eq!(parse_expr(&text, &BTreeMap::new()).unwrap(), p);
    }

    #[test]
    fn phi_equivariance_on_group_products(seed in any::<u64>(), coeffs in prop::collection::vec(small_rational(), 6)) {
        let mut rng = rng(seed);
        let w = table().iter().zip(&coeffs).fold(CurvatureModuleElement::zero(), |acc, (row, c)| {
            &acc + &row.preimage.scale(c)
        });
        let p = random_group_element(&mut rng);
        prop_assert!(cartan::is_in_group(&p));
        prop_assert_eq!(phi(&act_group(&p, &w).unwrap()), conj(&p, &phi(&w)));
        prop_assert!(cartan::is_i_symmetric(&phi(&w)));
    }
}

fn family_algebra(c: i64, d: i64, degree: u32) -> LieAlgebra {
    let p = FamilyParams::new(int(c), int(d));
    solve_killing(&metric_gcd(&p), degree, &p.exp_rates()).unwrap().algebra().unwrap()
}

#[test]
fn classification_is_invariant_under_basis_change() {
    let mut rng = rng(0x5eed_0003);
    let algebras = vec![
        LieAlgebra::abelian(3),
        heisenberg(),
        aff_plus_r(),
        sl2(),
        make_sol(int(1), rat(-1, 3)),
        make_unipotent_case(int(1), int(4)),
        make_unipotent_case(int(1), int(3)),
        family_algebra(3, 1, 2),
        family_algebra(1, 1, 2),
        family_algebra(0, 0, 1),
    ];
    for l in algebras {
        let class = l.classify();
        for _ in 0..20 {
            let p = unimodular(&mut rng, l.dim());
            let m = l.change_basis(&p).unwrap();
            assert_eq!(m.classify(), class);
            assert_eq!(m.is_unimodular(), l.is_unimodular());
        }
    }
}

#[test]
fn bracket_of_coordinate_fields_vanishes() {
    let fields: Vec<VectorField> = [Var::X, Var::H, Var::Z].into_iter().map(VectorField::coordinate).collect();
    for a in &fields {
        for b in &fields {
            assert!(bracket(a, b).is_zero());
        }
    }
}
