//! Points of the representation space, the moment map, and sampling of a
//! level set μ = λ·Id.

use std::sync::Arc;

use quiverlab::rep::{
    chi, group_act, in_level_set, moment_map, sample_fiber, DimData, FramedPoint, GroupElement,
    SampleOptions,
};
use quiverlab::quiver::{Quiver, WeightVec};
use quiverlab::{Mat, Q};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> quiverlab::Result<()> {
    let q = Arc::new(Quiver::dynkin_a(1));
    let dims = DimData::new(vec![2], vec![1]);
    let mut s = FramedPoint::<Q>::zero(q.clone(), dims.clone())?;
    s.gamma[0] = Mat::from_i64(&[&[1, 0]]);
    s.delta[0] = Mat::from_i64(&[&[1], &[0]]);
    println!("mu(s) = {}", moment_map(&s)[0]);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a3 = Arc::new(Quiver::dynkin_a(3));
    let dims = DimData::new(vec![1, 0, 1], vec![1, 1, 1]);
    let lam = [Q::new(1, 2), Q::from(2), Q::from(-1)];
    let p = sample_fiber(a3, dims.clone(), &lam, &mut rng, SampleOptions::default())?;
    println!("sampled point on A3 lies in the level set: {}", in_level_set(&p, &lam));

    let g = GroupElement::random(&dims, &mut rng, 5, false);
    let moved = group_act(&g, &p)?;
    println!("g.s stays in the level set: {}", in_level_set(&moved, &lam));
    println!("chi_m(g) for m = (1,0,-1): {}", chi(&WeightVec(vec![1, 0, -1]), &g)?);

    let empty = sample_fiber(q, DimData::new(vec![0], vec![1]), &[Q::from(1)], &mut rng, SampleOptions::default());
    println!("sampling A1 with d = 0, v = 1, lambda = 1: {}", empty.unwrap_err());
    Ok(())
}
