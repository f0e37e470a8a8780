use std::sync::Arc;

use proptest::prelude::*;
use quiverlab::covariant::{
    basis_rank_check, enumerate_s_xy, eval_covariant, is_semistable_mplus, random_good_chi_data,
    RankCheckOptions,
};
use quiverlab::path::{lusztig_invariants, orbit_equivalent, OrbitOptions};
use quiverlab::quiver::{dominance, Quiver, RootVec, WeightVec};
use quiverlab::reflection::{reduce_to_dominant, reflect_point, verify_z_conditions, Side};
use quiverlab::rep::{
    chi, group_act, in_level_set, moment_map, sample_fiber, DimData, FramedPoint, GroupElement,
    SampleOptions,
};
use quiverlab::strata::{codim_report, stratum_dimension, v_plus};
use quiverlab::{Mat, Q};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn quiver(k: usize) -> Arc<Quiver> {
    Arc::new(match k % 4 {
        0 => Quiver::dynkin_a(1),
        1 => Quiver::dynkin_a(2),
        2 => Quiver::dynkin_a(3),
        _ => Quiver::dynkin_d(4),
    })
}

fn dims_for(q: &Quiver, raw: &[usize]) -> DimData {
    let n = q.n();
    DimData::new(raw[..n].iter().map(|x| x % 3).collect(), raw[n..2 * n].iter().map(|x| x % 3).collect())
}

fn lam_for(n: usize, raw: &[i64]) -> Vec<Q> {
    raw[..n].iter().map(|&x| Q::from(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn moment_map_is_equivariant(k in 0usize..4, raw in prop::collection::vec(0usize..3, 8), seed: u64) {
        let q = quiver(k);
        let dims = dims_for(&q, &raw);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = FramedPoint::<Q>::random(q, dims.clone(), &mut rng, 6).unwrap();
        let g = GroupElement::random(&dims, &mut rng, 4, true);
        let gs = group_act(&g, &s).unwrap();
        for (i, (mu_gs, mu_s)) in moment_map(&gs).iter().zip(moment_map(&s)).enumerate() {
            let conj = &(&g.g[i] * &mu_s) * &g.g[i].inverse().unwrap();
            prop_assert_eq!(mu_gs, &conj);
        }
    }

    #[test]
    fn sampled_points_satisfy_the_moment_equation(
        k in 0usize..4,
        raw in prop::collection::vec(0usize..3, 8),
        lam in prop::collection::vec(-2i64..3, 4),
        seed: u64,
    ) {
        let q = quiver(k);
        let dims = dims_for(&q, &raw);
        let lam = lam_for(q.n(), &lam);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Ok(s) = sample_fiber(q, dims, &lam, &mut rng, SampleOptions::default()) {
            prop_assert!(in_level_set(&s, &lam));
        }
    }

    #[test]
    fn covariants_have_weight_chi_m(
        k in 0usize..3,
        raw in prop::collection::vec(0usize..3, 8),
        m in prop::collection::vec(-1i64..2, 4),
        seed: u64,
    ) {
        let q = quiver(k);
        let dims = dims_for(&q, &raw);
        let m = WeightVec(m[..q.n()].to_vec());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(delta) = random_good_chi_data(&q, &m, &dims, 3, &mut rng) else {
            return Ok(());
        };
        let s = FramedPoint::<Q>::random(q, dims.clone(), &mut rng, 5).unwrap();
        let g = GroupElement::random(&dims, &mut rng, 3, false);
        let lhs = eval_covariant(&delta, &group_act(&g, &s).unwrap()).unwrap();
        let rhs = chi(&m, &g).unwrap() * eval_covariant(&delta, &s).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reflections_satisfy_the_defining_conditions(
        k in 0usize..3,
        raw in prop::collection::vec(0usize..3, 8),
        lam in prop::collection::vec(1i64..4, 4),
        vertex in 0usize..4,
        seed: u64,
    ) {
        let q = quiver(k);
        let dims = dims_for(&q, &raw);
        let lam = lam_for(q.n(), &lam);
        let i = vertex % q.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Ok(s) = sample_fiber(q.clone(), dims.clone(), &lam, &mut rng, SampleOptions::default()) else {
            return Ok(());
        };
        let m = WeightVec(vec![0; q.n()]);
        for side in [Side::Kernel, Side::Cokernel] {
            let r = reflect_point(&s, i, &lam, &m, side).unwrap();
            prop_assert!(verify_z_conditions(&s, &r, i, &lam).all_passed());
            let c = q.cartan_data();
            let expected = dims.d[i] as i64
                + (0..q.n()).filter(|&j| j != i).map(|j| c.a(i, j) * dims.v[j] as i64).sum::<i64>()
                - dims.v[i] as i64;
            prop_assert_eq!(r.point.dims().v[i] as i64, expected);
        }
    }

    #[test]
    fn invariants_and_strata_are_orbit_invariant(
        k in 0usize..3,
        raw in prop::collection::vec(0usize..3, 8),
        seed: u64,
    ) {
        let q = quiver(k);
        let dims = dims_for(&q, &raw);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = FramedPoint::<Q>::random(q, dims.clone(), &mut rng, 5).unwrap();
        let g = GroupElement::random(&dims, &mut rng, 3, false);
        let t = group_act(&g, &s).unwrap();
        prop_assert_eq!(lusztig_invariants(&s, 3), lusztig_invariants(&t, 3));
        prop_assert_eq!(v_plus(&s).v_prime, v_plus(&t).v_prime);
        prop_assert_eq!(is_semistable_mplus(&s), v_plus(&s).v_prime == dims.v);
        prop_assert!(orbit_equivalent(&s, &t, OrbitOptions::default()).unwrap().is_yes());
    }

    #[test]
    fn contingency_matrices_have_the_right_margins(
        rows in prop::collection::vec(0usize..3, 1..4),
        cols in prop::collection::vec(0usize..3, 1..4),
    ) {
        let family = enumerate_s_xy(&rows, &cols);
        if rows.iter().sum::<usize>() != cols.iter().sum::<usize>() {
            prop_assert!(family.is_empty());
        }
        for s in &family {
            for (i, r) in rows.iter().enumerate() {
                prop_assert_eq!(s[i].iter().sum::<usize>(), *r);
            }
            for (j, c) in cols.iter().enumerate() {
                prop_assert_eq!(s.iter().map(|row| row[j]).sum::<usize>(), *c);
            }
        }
        let mut sorted = family.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted, family);
    }

    #[test]
    fn reduction_terminates_dominant_or_empty(
        k in 0usize..4,
        d in prop::collection::vec(0i64..5, 4),
        v in prop::collection::vec(0i64..5, 4),
        lam in prop::collection::vec(-1i64..2, 4),
    ) {
        let q = quiver(k);
        let n = q.n();
        let c = q.cartan_data();
        let (d, v) = (WeightVec(d[..n].to_vec()), RootVec(v[..n].to_vec()));
        let t = reduce_to_dominant(&c, &d, &v, &lam_for(n, &lam), None).unwrap();
        prop_assert!(t.empty || dominance(&c, &d, &t.v).dominant);
        prop_assert!(t.steps.len() <= 64);
    }

    #[test]
    fn lower_strata_are_smaller_when_dominant(
        k in 0usize..3,
        raw in prop::collection::vec(0usize..4, 8),
    ) {
        let q = quiver(k);
        let n = q.n();
        let dims = DimData::new(raw[..n].to_vec(), raw[n..2 * n].iter().map(|x| x % 3).collect());
        let report = codim_report(&q, &dims).unwrap();
        if report.dominant {
            let top = stratum_dimension(&q, &dims, &dims.v).unwrap();
            for row in report.rows.iter().filter(|r| r.v_prime != dims.v) {
                prop_assert!(row.dimension < top);
                if report.regular {
                    prop_assert!(top - row.dimension >= 2);
                }
            }
        }
    }

    #[test]
    fn determinant_is_multiplicative(seed: u64, n in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Mat::<Q>::random(n, n, &mut rng, 6);
        let b = Mat::<Q>::random(n, n, &mut rng, 6);
        prop_assert_eq!((&a * &b).det().unwrap(), a.det().unwrap() * b.det().unwrap());
        prop_assert_eq!(a.rank() + a.kernel().cols(), n);
    }
}

#[test]
fn rank_check_stabilizes_with_more_samples() {
    for (y, x) in [(vec![1, 2], vec![2, 1]), (vec![1, 1, 1], vec![2, 1])] {
        let full = enumerate_s_xy(&y, &x).len();
        let mut last = 0;
        for samples in [1, 2, 4, 8, 12] {
            let opts = RankCheckOptions {
                samples,
                ..RankCheckOptions::default()
            };
            let r = basis_rank_check(&y, &x, opts).unwrap();
            assert!(r >= last);
            last = r;
        }
        assert_eq!(last, full);
    }
}
