use borel_core::algebra::span_equal;
use borel_core::chops::{e_coeff, sample_generic};
use borel_core::liestruct::{elementary, half, pi_b_minus};
use borel_core::orbits::*;
use borel_core::random::{self, trial_rng};
use borel_core::{RatMatrix, Rational};
use proptest::prelude::*;

fn random_kappa(n: usize, seed: u64) -> Vec<Rational> {
    let mut rng = trial_rng(seed, n as u64);
    (0..n - half(n)).map(|_| random::rational(&mut rng)).collect()
}

fn in_v_plus_span(m: &RatMatrix) -> bool {
    let n = m.rows();
    (0..n).all(|i| (0..n).all(|j| m[(i, j)].is_zero() || (i < j && j + 1 < n - i)))
}

#[test]
fn cross_section_leading_chops_are_units() {
    for n in 2..=8 {
        let f = build_cross_section(n, &random_kappa(n, 1)).unwrap();
        for r in 1..=half(n) {
            let e0 = e_coeff(&f.f, 0, r).unwrap();
            assert!(e0 == Rational::one() || e0 == Rational::from(-1), "n={n} r={r}: {e0}");
        }
    }
}

#[test]
fn h_brackets_land_in_v_plus() {
    for n in 2..=8 {
        let pol = PolarizationData::new(n).unwrap();
        for x in &pol.h {
            for y in &pol.h {
                assert!(in_v_plus_span(&x.commutator(y)), "n={n}");
            }
        }
    }
}

#[test]
fn h_perp_is_trace_orthogonal_to_h() {
    for n in 2..=8 {
        let pol = PolarizationData::new(n).unwrap();
        for x in &pol.h {
            for w in &pol.h_perp {
                assert!(x.trace_pairing(w).is_zero());
            }
        }
        assert_eq!(pol.dim_h(), (n - half(n)) + half(n) + pol.v_plus.len());
    }
}

#[test]
fn dimension_identity_up_to_twelve() {
    for n in 2..=12 {
        let pol = PolarizationData::new(n).unwrap();
        assert_eq!(2 * pol.dim_h() - (n - half(n)), n * (n + 1) / 2, "n={n}");
    }
    assert_eq!(PolarizationData::new(7).unwrap().dim_h(), 16);
}

#[test]
fn isotropy_has_dimension_n_minus_r() {
    for n in 3..=7 {
        let f = build_cross_section(n, &random_kappa(n, 2)).unwrap();
        let rep = isotropy_check(&f).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.kernel_dim, n - half(n));
    }
}

#[test]
fn pukanszky_conditions_hold() {
    for n in 2..=6 {
        for seed in 0..2 {
            let rep = pukanszky_check(n, &random_kappa(n, seed)).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }
    let rep = pukanszky_check(3, &random_kappa(3, 0)).unwrap();
    let v = serde_json::to_value(&rep).unwrap();
    assert_eq!(v["conditions"].as_array().unwrap().len(), 4);
}

#[test]
fn two_by_two_pukanszky_by_hand() {
    let f = build_cross_section(2, &[Rational::from(3)]).unwrap();
    let pol = PolarizationData::new(2).unwrap();
    let e12 = &pi_b_minus(&elementary::<Rational>(2, 1, 2).commutator(&(&f.f - &elementary(2, 1, 2))));
    let expected = &elementary::<Rational>(2, 1, 1) - &elementary(2, 2, 2);
    assert_eq!(e12, &expected);
    assert_eq!(pol.h_perp, vec![expected]);
}

#[test]
fn kappa_round_trip_on_cross_section() {
    for n in 2..=7 {
        let kappa = random_kappa(n, 3);
        let f = build_cross_section(n, &kappa).unwrap();
        assert_eq!(kappa_from_casimirs(&f.as_hessenberg()).unwrap(), kappa);
    }
}

#[test]
fn kappa_matches_casimirs_of_random_generic_points() {
    for n in 2..=6 {
        for t in 0..3 {
            let x = sample_generic(n, &mut trial_rng(4, (n * 10 + t) as u64)).unwrap();
            let kappa = kappa_from_casimirs(&x).unwrap();
            let f = build_cross_section(n, &kappa).unwrap();
            assert_eq!(casimir_vector(&f.f).unwrap(), casimir_vector(x.matrix()).unwrap());
        }
    }
}

#[test]
fn kappa_partial_sums_closed_form() {
    // κ₁ + … + κ_r = (Tr X + I(1,r)) / 2
    for n in 3..=7 {
        let x = sample_generic(n, &mut trial_rng(5, n as u64)).unwrap();
        let kappa = kappa_from_casimirs(&x).unwrap();
        let v = casimir_vector(x.matrix()).unwrap();
        let mut partial = Rational::zero();
        for r in 1..v.len() {
            partial += &kappa[r - 1];
            assert_eq!(partial, (&v[0] + &v[r]) * &Rational::new(1, 2), "n={n} r={r}");
        }
    }
}

#[test]
fn chart_base_point_is_cross_section() {
    for n in 2..=8 {
        let kappa = random_kappa(n, 6);
        let packed = chart_pack(&ChartPoint::base(n, &kappa).unwrap()).unwrap();
        assert_eq!(packed.matrix(), &build_cross_section(n, &kappa).unwrap().f);
    }
}

#[test]
fn chart_slots_cover_b_minus_once() {
    for n in 2..=9 {
        let slots = chart_slots(n);
        assert_eq!(slots.len(), n * (n + 1) / 2);
        let mut unique: Vec<String> = slots.iter().map(Slot::to_string).collect();
        unique.sort();
        unique.dedup();
        assert_eq!(unique.len(), slots.len());
    }
}

#[test]
fn chart_json_and_missing_slots() {
    let c = ChartPoint::base(7, &random_kappa(7, 7)).unwrap();
    let v = serde_json::to_value(&c).unwrap();
    let obj = v.as_object().unwrap();
    assert_eq!(obj.len(), 28);
    for key in ["a1", "a4", "q0_2", "p_5_1", "p0_3", "q_5_1"] {
        assert!(obj.contains_key(key), "{key}");
    }
    let back: ChartPoint = serde_json::from_value(v).unwrap();
    assert_eq!(back, c);
    let mut partial = c.clone();
    partial.slots.remove(&Slot::P(1, 1));
    assert!(chart_pack(&partial).is_err());
}

#[test]
fn fiber_membership_for_scalar_b() {
    for n in 3..=5 {
        let f = build_cross_section(n, &random_kappa(n, 8)).unwrap();
        let pol = PolarizationData::new(n).unwrap();
        let mut ell = f.f.clone();
        for w in &pol.h_perp {
            ell = &ell + w;
        }
        let ell = borel_core::chops::HessenbergPoint::new(ell).unwrap();
        assert!(fiber_membership(&RatMatrix::identity(n), &ell, &f).unwrap());
        let diag = RatMatrix::diagonal(&vec![Rational::from(2); n]);
        assert!(fiber_membership(&diag, &ell, &f).unwrap());
    }
}

#[test]
fn infinitesimal_images_span_h_perp() {
    for n in 2..=8 {
        let f = build_cross_section(n, &random_kappa(n, 9)).unwrap();
        let pol = PolarizationData::new(n).unwrap();
        let im: Vec<Vec<Rational>> = pol.infinitesimal_images(&f).iter().map(|m| m.entries().to_vec()).collect();
        let perp: Vec<Vec<Rational>> = pol.h_perp.iter().map(|m| m.entries().to_vec()).collect();
        assert!(span_equal(&im, &perp).unwrap(), "n={n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn chart_round_trip(n in 2usize..=8, seed in 0u64..1000) {
        let mut rng = trial_rng(seed, n as u64);
        let slots = chart_slots(n).into_iter().map(|s| (s, random::rational(&mut rng))).collect();
        let c = ChartPoint { n, slots };
        let x = chart_pack(&c).unwrap();
        prop_assert_eq!(chart_unpack(&x), c);
        prop_assert_eq!(chart_pack(&chart_unpack(&x)).unwrap(), x);
    }
}
