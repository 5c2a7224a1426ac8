mod support;

use proptest::collection::vec;
use proptest::prelude::*;

use support::*;
use torilocus::exactmath::{int, qsign, rat, rref, MatQ, QuadExt, Rational};
use torilocus::nslocus::{build_equations, LocusProblem};
use torilocus::polyring::{normal_form, reduced_groebner_basis, MonomialOrder, PolyRing};
use torilocus::torus::{binom2, ns_rank, riemann_residual, NSClass, PeriodMatrix};

fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap()
}

fn quad(m: Rational) -> impl Strategy<Value = QuadExt> {
    (small_rational(), small_rational()).prop_map(move |(a, b)| QuadExt::new(a, b, m.clone()).unwrap())
}

fn quad_triple() -> impl Strategy<Value = (QuadExt, QuadExt, QuadExt)> {
    prop_oneof![Just(int(-1)), Just(int(2)), Just(rat(-3, 4)), Just(rat(57, 100))]
        .prop_flat_map(|m| (quad(m.clone()), quad(m.clone()), quad(m)))
}

fn real_quad_pair() -> impl Strategy<Value = (QuadExt, QuadExt)> {
    prop_oneof![Just(int(2)), Just(int(3)), Just(rat(57, 100)), Just(rat(1900, 3))]
        .prop_flat_map(|m| (quad(m.clone()), quad(m)))
}

fn matrix() -> impl Strategy<Value = MatQ> {
    (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| {
        vec(small_rational(), r * c).prop_map(move |v| MatQ::from_fn(r, c, |i, j| v[c * i + j].clone()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rref_is_idempotent_and_kernel_is_annihilated(m in matrix()) {
        let r = rref(&m);
        prop_assert_eq!(&rref(&r.reduced).reduced, &r.reduced);
        prop_assert_eq!(r.rank + r.kernel.len(), m.cols());
        for k in &r.kernel {
            prop_assert!(m.mul_vec(k).iter().all(|x| *x == int(0)));
        }
    }

    #[test]
    fn quadratic_field_laws((x, y, z) in quad_triple()) {
        let xy = x.try_mul(&y).unwrap();
        prop_assert_eq!(xy.try_mul(&z).unwrap(), x.try_mul(&y.try_mul(&z).unwrap()).unwrap());
        prop_assert_eq!(
            x.try_mul(&y.try_add(&z).unwrap()).unwrap(),
            xy.try_add(&x.try_mul(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(xy.norm(), x.norm() * y.norm());
        prop_assert_eq!(xy.conj(), x.conj().try_mul(&y.conj()).unwrap());
        if !x.is_zero() {
            prop_assert_eq!(x.try_mul(&x.inv().unwrap()).unwrap(), QuadExt::rational(int(1), x.m()));
        }
    }

    #[test]
    fn qsign_is_multiplicative_and_matches_floats((x, y) in real_quad_pair()) {
        let (sx, sy) = (qsign(&x).unwrap(), qsign(&y).unwrap());
        prop_assert_eq!(qsign(&x.try_mul(&y).unwrap()).unwrap(), sx * sy);
        let approx = to_f64(x.a()) + to_f64(x.b()) * to_f64(x.m()).sqrt();
        if approx.abs() > 1e-9 {
            prop_assert_eq!(sx, if approx > 0.0 { 1 } else { -1 });
        }
        prop_assert_eq!(sx == 0, x.is_zero());
    }

    #[test]
    fn rank_basis_is_of_type_one_one(case in torus_case()) {
        let tau = case.tau().unwrap();
        let rank = ns_rank(&tau).unwrap();
        let g = case.g;
        // 2·binom(g,2) rational equations on binom(2g,2) unknowns
        prop_assert!(rank.rank >= binom2(2 * g) - 2 * binom2(g));
        for e in &rank.basis {
            let r = riemann_residual(e, &tau).unwrap();
            prop_assert!(r.to_rows().iter().flatten().all(QuadExt::is_zero));
        }
    }

    #[test]
    fn equations_agree_with_the_residual(
        coords in vec(vec(-3i64..=3, 15), 3),
        entries in vec(small_rational(), 9),
    ) {
        let classes = coords.iter().map(|c| NSClass::from_coordinates(3, c).unwrap()).collect::<Vec<_>>();
        let Ok(problem) = LocusProblem::new(classes.clone()) else { return Ok(()) };
        let eqs = build_equations(&problem);
        let ring = problem.ring();
        let mut point = vec![int(1)];
        point.extend(entries.iter().cloned());
        let tau = PeriodMatrix::real(int(-1), MatQ::from_fn(3, 3, |i, j| entries[3 * i + j].clone())).unwrap();
        for (k, e) in classes.iter().enumerate() {
            let r = riemann_residual(e, &tau).unwrap();
            for (n, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
                prop_assert_eq!(ring.eval_rational(&eqs[3 * k + n], &point), r[(i, j)].a().clone());
            }
        }
    }

    #[test]
    fn lex_and_grevlex_bases_generate_the_same_ideal(case in ideal_case(3, 2, 3, 3)) {
        let grevlex = PolyRing::new(["x", "y", "z"][..case.n].iter().copied(), MonomialOrder::GrevLex);
        let lex = grevlex.with_order(MonomialOrder::Lex);
        let gens = case.polys(&grevlex);
        prop_assume!(!gens.is_empty());
        let a = reduced_groebner_basis(&grevlex, &gens);
        let lex_gens: Vec<_> = gens.iter().map(|f| lex.reorder(f)).collect();
        let b = reduced_groebner_basis(&lex, &lex_gens);
        for f in &a {
            prop_assert!(normal_form(&lex, &lex.reorder(f), &b).is_zero());
        }
        for f in &b {
            prop_assert!(normal_form(&grevlex, &grevlex.reorder(f), &a).is_zero());
        }
    }

    #[test]
    fn homogenization_dehomogenizes_back(spec in poly_spec(3, 4, 5)) {
        let ring = PolyRing::new(["t_0", "x", "y", "z"], MonomialOrder::GrevLex);
        let shifted: PolySpec = spec.iter().map(|(c, e)| (*c, [vec![0], e.clone()].concat())).collect();
        let f = build(&ring, &shifted, 4);
        let h = ring.homogenize(&f, 0, &[1, 1, 1, 1]);
        prop_assert!(ring.is_homogeneous(&h));
        prop_assert_eq!(ring.substitute(&h, &[(0, int(1))]), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn s_polynomials_reduce_to_zero(case in ideal_case(3, 3, 3, 3)) {
        check_s_polynomials(&case)?;
    }

    #[test]
    fn reduced_basis_ignores_generator_order(input in shuffle_case()) {
        check_shuffle_invariance(&input)?;
    }

    #[test]
    fn saturation(case in saturation_case()) {
        check_saturation(&case)?;
    }

    #[test]
    fn dimension_and_degree(case in ideal_case(3, 4, 3, 3)) {
        check_dimension_degree(&case)?;
    }

    #[test]
    fn hermitian_round_trip(input in hermitian_case()) {
        check_hermitian_round_trip(&input)?;
    }

    #[test]
    fn residual_is_alternating(case in residual_case()) {
        check_residual_alternating(&case)?;
    }
}

#[test]
fn oracle_on_known_monomial_ideals() {
    use torilocus::polyring::Monomial;
    let m = |e: &[u32]| Monomial::new(e.to_vec());
    assert_eq!(standard_monomial_oracle(&[m(&[2, 0]), m(&[0, 3])], 2), (0, Some(6)));
    assert_eq!(standard_monomial_oracle(&[m(&[1, 1])], 2), (1, None));
    assert_eq!(standard_monomial_oracle(&[m(&[0, 0, 2])], 3), (2, None));
    assert_eq!(standard_monomial_oracle(&[], 3), (3, None));
    assert_eq!(standard_monomial_oracle(&[m(&[0, 0])], 2), (-1, None));
}
