//! Determinant covariants, the contingency-matrix basis, and semistability
//! certificates.

use std::sync::Arc;

use quiverlab::covariant::{
    basis_rank_check, enumerate_s_xy, eval_covariant, is_semistable_mplus, search_certificate,
    validate_chi_data, CertificateSearch, ChiData, RankCheckOptions, SearchOptions,
};
use quiverlab::rep::{sample_fiber, DimData, SampleOptions};
use quiverlab::quiver::{Quiver, WeightVec};
use quiverlab::Q;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> quiverlab::Result<()> {
    for s in enumerate_s_xy(&[1, 1], &[1, 1]) {
        println!("S = {s:?}");
    }
    for (y, x) in [(vec![2], vec![1, 1]), (vec![1, 2], vec![2, 1]), (vec![1, 1, 1], vec![1, 1, 1])] {
        let rank = basis_rank_check(&y, &x, RankCheckOptions::default())?;
        println!("Y = {y:?}, X = {x:?}: {} functions, rank {rank}", enumerate_s_xy(&y, &x).len());
    }

    let q = Arc::new(Quiver::dynkin_a(2));
    let dims = DimData::new(vec![1, 1], vec![1, 1]);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let s = sample_fiber(q.clone(), dims.clone(), &[Q::from(0), Q::from(0)], &mut rng, SampleOptions::default())?;
    let m = WeightVec(vec![1, 1]);
    println!("semistable for m = (1,1): {}", is_semistable_mplus(&s));
    match search_certificate(&s, &m, SearchOptions::default()) {
        CertificateSearch::Certified(delta) => {
            println!("certificate: {}", delta.to_json(&q));
            println!("violations: {}", validate_chi_data(&delta, &m, &dims).len());
            println!("f = {}", eval_covariant(&delta, &s)?);
            let back = ChiData::from_json(&q, &delta.to_json(&q))?;
            println!("reloads identically: {}", back == delta);
        }
        CertificateSearch::Unknown { tried } => println!("no certificate in {tried} tries"),
    }
    Ok(())
}
