//! Reducing (d, v) to the dominant case, and the limit maps used to drop
//! a simple root.

use std::sync::Arc;

use quiverlab::path::lusztig_invariants;
use quiverlab::reflection::{j_embed, limit_project, reduce_to_dominant};
use quiverlab::rep::{sample_fiber, DimData, SampleOptions};
use quiverlab::quiver::{Quiver, RootVec, WeightVec};
use quiverlab::Q;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> quiverlab::Result<()> {
    let a2 = Quiver::dynkin_a(2);
    let c = a2.cartan_data();
    let zero = [Q::from(0), Q::from(0)];
    let trace = reduce_to_dominant(&c, &WeightVec(vec![1, 1]), &RootVec(vec![2, 0]), &zero, None)?;
    println!("{}", trace.to_json(&a2));

    let nonzero = [Q::from(1), Q::from(3)];
    let trace = reduce_to_dominant(&c, &WeightVec(vec![0, 1]), &RootVec(vec![2, 2]), &nonzero, None)?;
    println!("{}", trace.to_json(&a2));

    let q = Arc::new(a2);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let s = sample_fiber(q, DimData::new(vec![1, 0], vec![2, 1]), &zero, &mut rng, SampleOptions::default())?;
    let limit = limit_project(&s, 0)?;
    println!("limit point has v = {:?}", limit.dims().v);
    println!(
        "invariants preserved: {}",
        lusztig_invariants(&limit, 4) == lusztig_invariants(&s, 4)
    );
    let padded = j_embed(&limit, &[2, 1])?;
    println!(
        "padding back keeps them: {}",
        lusztig_invariants(&padded, 4) == lusztig_invariants(&s, 4)
    );
    Ok(())
}
