//! Property and oracle tests: exact-arithmetic invariants checked against
//! independent brute-force searches, and the numerical identities behind the
//! comb constructions checked over exhaustive parameter grids.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fdgw_core::*;

fn cross(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Independent membership oracle: exhaustive search for nonnegative integers
/// (a, b) with a*r1 + b*r2 = |det| * v, i.e. rational combinations with
/// denominator bounded by |det|.  Coefficient numerators of any true member
/// are bounded by the coordinate products, so the scan range is complete.
fn oracle_contains_rank2(r1: &[i64], r2: &[i64], v: &[i64]) -> bool {
    let det = cross(r1, r2).abs();
    assert!(det != 0);
    let bound = 2 * 10 * 10; // coords are sampled in [-10, 10]
    for a in 0..=bound {
        // Solve b from the first coordinate where r2 is nonzero.
        let (i, j) = if r2[0] != 0 { (0, 1) } else { (1, 0) };
        let num = det * v[i] - a * r1[i];
        if num % r2[i] != 0 {
            continue;
        }
        let b = num / r2[i];
        if b < 0 {
            continue;
        }
        if a * r1[j] + b * r2[j] == det * v[j] {
            return true;
        }
    }
    false
}

#[test]
fn cone_membership_matches_bounded_denominator_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0DE);
    let mut checked = 0;
    while checked < 400 {
        let ray = |rng: &mut ChaCha8Rng| {
            [rng.gen_range(-10..=10i64), rng.gen_range(-10..=10i64)]
        };
        let r1 = ray(&mut rng);
        let r2 = ray(&mut rng);
        if (r1[0] == 0 && r1[1] == 0) || (r2[0] == 0 && r2[1] == 0) || cross(&r1, &r2) == 0 {
            continue;
        }
        let v = [rng.gen_range(-10..=10i64), rng.gen_range(-10..=10i64)];
        let cone = RationalCone::of_i64(&[&r1, &r2]);
        let got = cone_contains(&cone, &ClassVector::of_i64(&v)).unwrap();
        let want = oracle_contains_rank2(&r1, &r2, &v);
        assert_eq!(got, want, "rays {r1:?}, {r2:?}, v {v:?}");
        checked += 1;
    }
}

proptest! {
    #[test]
    fn rationals_are_canonical(a in -2000i64..2000, b in 1i64..2000, k in 1i64..50) {
        let r1 = Rational::new(a, b).unwrap();
        let r2 = Rational::new(a * k, b * k).unwrap();
        prop_assert_eq!(r1.numer(), r2.numer());
        prop_assert_eq!(r1.denom(), r2.denom());
        let r3 = Rational::new(-a * k, -(b * k)).unwrap();
        prop_assert_eq!(&r1, &r3);
    }

    #[test]
    fn membership_is_scale_invariant(
        r1x in -10i64..=10, r1y in -10i64..=10,
        r2x in -10i64..=10, r2y in -10i64..=10,
        vx in -10i64..=10, vy in -10i64..=10,
        lambda in 1i64..=7, mu in 1i64..=7,
    ) {
        let r1 = [r1x, r1y];
        let r2 = [r2x, r2y];
        prop_assume!(cross(&r1, &r2) != 0);
        let cone = RationalCone::of_i64(&[&r1, &r2]);
        let scaled_cone = RationalCone::of_i64(&[
            &[mu * r1x, mu * r1y],
            &[mu * r2x, mu * r2y],
        ]);
        let v = ClassVector::of_i64(&[vx, vy]);
        let v_scaled = v.scaled(lambda);
        let base = cone_contains(&cone, &v).unwrap();
        prop_assert_eq!(base, cone_contains(&cone, &v_scaled).unwrap());
        prop_assert_eq!(base, cone_contains(&scaled_cone, &v).unwrap());
    }

    #[test]
    fn threshold_is_the_exact_boundary(
        r1x in -10i64..=10, r1y in -10i64..=10,
        r2x in -10i64..=10, r2y in -10i64..=10,
        bx in -10i64..=10, by in -10i64..=10,
        dx in -10i64..=10, dy in -10i64..=10,
    ) {
        let r1 = [r1x, r1y];
        let r2 = [r2x, r2y];
        prop_assume!(cross(&r1, &r2) != 0);
        prop_assume!(dx != 0 || dy != 0);
        let cone = RationalCone::of_i64(&[&r1, &r2]);
        let base = ClassVector::of_i64(&[bx, by]);
        let dir = ClassVector::of_i64(&[dx, dy]);
        let at = |t: &BigRational| -> Vec<BigRational> {
            vec![
                BigRational::from_integer(BigInt::from(bx)) + t * BigInt::from(dx),
                BigRational::from_integer(BigInt::from(by)) + t * BigInt::from(dy),
            ]
        };
        match cone_threshold(&cone, &base, &dir).unwrap() {
            Threshold::Least(t) => {
                let t = t.as_ratio().clone();
                prop_assert!(!t.is_negative());
                prop_assert!(exact::cone_contains_rational(&cone, &at(&t)).unwrap());
                if !t.is_zero() {
                    for denom in [1i64, 2, 7] {
                        let eps = &t / BigInt::from(denom);
                        let below = &t - &eps;
                        prop_assert!(
                            !exact::cone_contains_rational(&cone, &at(&below)).unwrap(),
                            "membership below the threshold"
                        );
                    }
                }
            }
            Threshold::NoThreshold => {
                // Spot-check a few parameters; none may land inside.
                for t in [0i64, 1, 2, 5, 50] {
                    let t = BigRational::from_integer(BigInt::from(t));
                    prop_assert!(!exact::cone_contains_rational(&cone, &at(&t)).unwrap());
                }
            }
        }
    }
}

fn random_target(rng: &mut ChaCha8Rng) -> Target {
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(3..=10);
        let d = rng.gen_range(1..=n);
        Target::Hypersurface(make_hypersurface(n, d, HypersurfaceAttrs::default()).unwrap())
    } else {
        loop {
            let n = rng.gen_range(3..=10);
            let r = rng.gen_range(1..=n - 2);
            let budget = n - r;
            let mut a: Vec<i64> = (0..r).map(|_| rng.gen_range(0..=budget)).collect();
            a.sort_unstable();
            if a.iter().sum::<i64>() <= budget {
                return Target::ProjBundle(make_proj_bundle(n, r, a).unwrap());
            }
        }
    }
}

/// Classes of exact anticanonical degree `delta` on the target, if any.
fn classes_of_exact_degree(target: &Target, delta: i64) -> Vec<CurveClass> {
    match target {
        Target::Hypersurface(h) => {
            let r = h.index();
            if delta % r == 0 {
                vec![ClassVector::of_i64(&[delta / r])]
            } else {
                vec![]
            }
        }
        Target::ProjBundle(b) => classes_of_degree(b, delta)
            .unwrap()
            .into_iter()
            .map(|t| t.class)
            .collect(),
    }
}

#[test]
fn fiber_excess_vanishes_and_budgets_differ_by_h1_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xFD6);
    let mut checked = 0u64;
    while checked < 10_000 {
        let target = random_target(&mut rng);
        let g = rng.gen_range(0..=5i64);
        let m = rng.gen_range((3 - 3 * g).max(0).max(1)..=40);
        let triple = triple_from_m(&target, g, m).unwrap();
        for beta in classes_of_exact_degree(&target, triple.delta) {
            assert_eq!(
                fiber_excess(&target, &triple, &beta).unwrap(),
                0,
                "target {} triple {triple:?}",
                target.describe()
            );
            if m > g {
                let many = budget_many_points(&target, g, m, &beta).unwrap();
                let upper = budget_one_point_upper(&target, g, m, &beta).unwrap();
                assert_eq!(upper - many, (target.dim() - 1) * g);
                assert_eq!(upper - many, h1_upper(&target, g));
            }
            checked += 1;
        }
    }
}

#[test]
fn balanced_class_enumeration_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBEEF);
    for _ in 0..200 {
        let (b, delta) = loop {
            if let Target::ProjBundle(b) = random_target(&mut rng) {
                let delta = rng.gen_range(0..=50i64);
                break (b, delta);
            }
        };
        let got: Vec<(i64, i64, bool)> = classes_of_degree(&b, delta)
            .unwrap()
            .iter()
            .map(|t| {
                (
                    i64::try_from(t.class.coords()[0].clone()).unwrap(),
                    i64::try_from(t.class.coords()[1].clone()).unwrap(),
                    t.nef,
                )
            })
            .collect();
        // Brute force over the lattice box, with independent nef test
        // (alpha >= a_r * beta is the ray-coefficient condition).
        let mut want = Vec::new();
        for alpha in 0..=delta {
            for beta in 0..=delta {
                if alpha * (b.r + 1) + beta * b.gamma() == delta {
                    want.push((alpha, beta, alpha >= b.a_max() * beta));
                }
            }
        }
        assert_eq!(got, want, "bundle ({}, {}, {:?}), delta {delta}", b.n, b.r, b.a);
        // Each class pairs to delta against the anticanonical divisor.
        let p = b.pairing();
        let minus_k = b.anticanonical();
        for t in classes_of_degree(&b, delta).unwrap() {
            assert_eq!(
                pair(&p, &minus_k, &t.class).unwrap(),
                Rational::integer(delta)
            );
        }
    }
}

#[test]
fn projective_space_comb_thresholds_are_equivalent() {
    // For balanced e on P^n, the tail-count bound e >= m-1 is equivalent to
    // the genus bound e <= n*g.
    for n in 1..=10i64 {
        for g in 0..=5i64 {
            for m in 0..=60i64 {
                if 3 * g - 3 + m < 0 {
                    continue;
                }
                let balance = n * (m + g - 1);
                if balance % (n + 1) != 0 {
                    continue;
                }
                let e = balance / (n + 1);
                assert_eq!(e >= m - 1, e <= n * g, "n={n} g={g} m={m} e={e}");
            }
        }
    }
}

#[test]
fn bundle_comb_is_monotone_with_exact_excess_slope() {
    for n in 3..=10i64 {
        for r in 1..n - 1 {
            for a in all_fano_twists(n, r) {
                let sum: i64 = a.iter().sum();
                let b = make_proj_bundle(n, r, a.clone()).unwrap();
                let gamma = b.gamma();
                let slope = (n - r - 1) * (n - r + 1) - gamma * (n - r);
                assert_eq!(slope > 0, sum >= 2, "slope sign detects twist sum >= 2");
                for g in 0..=2i64 {
                    // Success at parameter k, via the comb's own gate data.
                    let feasible = |k: i64| {
                        let d = bundle_comb_data(&b, g, k);
                        d.m >= 1
                            && 3 * g - 3 + d.m >= 0
                            && d.section_degree > 0
                            && d.section_dim >= 1
                    };
                    let mut first_success = None;
                    for k in 1..=400i64 {
                        match (feasible(k), first_success) {
                            (true, None) => first_success = Some(k),
                            (false, Some(k0)) => {
                                panic!("success at k={k0} but failure at k={k} (n={n}, r={r})")
                            }
                            _ => {}
                        }
                    }
                    if let Some(k0) = first_success {
                        assert!(sum >= 2, "witness despite twist sum {sum}");
                        // The constructed witness agrees with the gate data at
                        // the first success and one later parameter.
                        for k in [k0, k0 + 13] {
                            let w = bundle_comb(&b, g, k).unwrap().into_witness().unwrap();
                            assert_eq!(w.certificate.excess, bundle_comb_data(&b, g, k).section_dim);
                        }
                        assert!(bundle_comb(&b, g, (k0 - 1).max(1)).unwrap().witness().is_none() || k0 == 1);
                        for k in k0..k0 + 20 {
                            let d1 = bundle_comb_data(&b, g, k + 1);
                            let d0 = bundle_comb_data(&b, g, k);
                            assert_eq!(d1.section_dim - d0.section_dim, slope);
                        }
                    } else {
                        assert!(sum < 2, "twist sum {sum} >= 2 should succeed by k = 400");
                    }
                }
            }
        }
    }
}

fn all_fano_twists(n: i64, r: i64) -> Vec<Vec<i64>> {
    fn extend(out: &mut Vec<Vec<i64>>, prefix: Vec<i64>, len: usize, min: i64, budget: i64) {
        if prefix.len() == len {
            out.push(prefix);
            return;
        }
        for next in min..=budget {
            let mut p = prefix.clone();
            p.push(next);
            extend(out, p, len, next, budget - next);
        }
    }
    let mut out = Vec::new();
    extend(&mut out, Vec::new(), r as usize, 0, n - r);
    out
}

#[test]
fn conical_witness_parameters_are_cofinite_in_their_residue_class() {
    let fermat = |n, d| {
        make_hypersurface(
            n,
            d,
            HypersurfaceAttrs {
                fermat: true,
                ..Default::default()
            },
        )
        .unwrap()
    };
    let conical = |n, d| {
        make_hypersurface(
            n,
            d,
            HypersurfaceAttrs {
                conical: Some(ConicalAttr { t_line_family: 1 }),
                ..Default::default()
            },
        )
        .unwrap()
    };
    let cases = vec![
        (fermat(8, 6), 0i64),
        (fermat(8, 6), 1),
        (fermat(8, 6), 2),
        (fermat(7, 5), 1),
        (conical(4, 4), 1),
        (conical(4, 4), 3),
    ];
    for (target, g) in cases {
        let m_min = (3 - 3 * g).max(1);
        let witnesses: Vec<i64> = (m_min..=100)
            .filter(|&m| conical_comb(&target, g, m).unwrap().witness().is_some())
            .collect();
        assert!(
            !witnesses.is_empty(),
            "no witnesses at all for ({}, {}), g = {g}",
            target.n,
            target.d
        );
        // Witness parameters fill the divisibility residue class from the
        // first success onward.
        let r = target.index();
        let n_dim = target.dim();
        let first = witnesses[0];
        let expected: Vec<i64> = (first..=100)
            .filter(|&m| (n_dim * (m + g - 1)) % r == 0)
            .collect();
        assert_eq!(witnesses, expected, "({}, {}), g = {g}", target.n, target.d);
    }
}

#[test]
fn chain_splitting_cap_holds_on_the_full_grid() {
    for n in 4..=40i64 {
        for d in 1..=(n + 3) / 3 {
            let cap = max_component_degree(n, d);
            assert!(cap <= 2, "d <= (n+3)/3 forces the cap to 2");
            for m in 3..=12i64 {
                for e in 0..=30i64 {
                    let report = chain_induction_check(n, d, e, m).unwrap();
                    assert!(
                        report.max_ei_observed <= cap,
                        "n={n} d={d} e={e} m={m}: {} > {cap}",
                        report.max_ei_observed
                    );
                    assert_eq!(report.equality_case_rigid, report.excess() == 0);
                }
            }
        }
    }
}

#[test]
fn component_degree_thresholds_across_the_degree_ranges() {
    for n in 3..=200i64 {
        for d in 1..=n {
            let cap = max_component_degree(n, d);
            if 3 * d <= n + 3 {
                assert!(cap <= 2, "n={n} d={d}");
            }
            if 2 * d < n + 3 {
                assert!(cap <= 3, "n={n} d={d}");
            }
        }
    }
}

#[test]
fn hypersurface_index_divides_every_reported_degree() {
    for n in 3..=20i64 {
        for d in 1..=n {
            let x = make_hypersurface(n, d, HypersurfaceAttrs::default()).unwrap();
            let r = x.index();
            assert_eq!(r, n - d + 1);
            for e in 0..=10 {
                let deg = x.anticanonical_degree(&ClassVector::of_i64(&[e])).unwrap();
                assert_eq!(deg % r, 0);
            }
        }
    }
}

#[test]
fn fujita_threshold_below_one_across_the_valid_range() {
    let one = Rational::integer(1);
    let mut seen = 0;
    for n in 7..=30i64 {
        for d in 1..=n {
            if 2 * d > n + 3 && d < n - 2 {
                let value = fujita_cone_resolution(n, d).unwrap();
                assert_eq!(value, Rational::new(n - d, n + 1 - d).unwrap());
                assert!(value.as_ratio() < one.as_ratio());
                seen += 1;
            }
        }
    }
    assert!(seen > 0, "the (n, d) range must be nonempty");
}
