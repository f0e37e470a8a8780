//! Path evaluation, invariant functions, and deciding whether two points
//! lie in one orbit.

use std::sync::Arc;

use quiverlab::path::{lusztig_invariants, orbit_equivalent, verify_witness, OrbitOptions, OrbitVerdict, PathExpr};
use quiverlab::rep::{group_act, sample_fiber, DimData, GroupElement, SampleOptions};
use quiverlab::quiver::Quiver;
use quiverlab::Q;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> quiverlab::Result<()> {
    let q = Arc::new(Quiver::dynkin_a(2));
    let dims = DimData::new(vec![1, 1], vec![2, 1]);
    let lam = [Q::from(0), Q::from(0)];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s = sample_fiber(q.clone(), dims.clone(), &lam, &mut rng, SampleOptions::default())?;

    let path = PathExpr::parse(&q, "h1b.h1")?;
    println!("{} evaluates to\n{}", path.to_literal(&q), path.evaluate(&s)?);

    let invariants = lusztig_invariants(&s, 3);
    for inv in invariants.iter().take(6) {
        println!("{} = {}", inv.descriptor, inv.value);
    }
    println!("... {} invariants up to length 3", invariants.len());

    let g = GroupElement::random(&dims, &mut rng, 4, false);
    let t = group_act(&g, &s)?;
    match orbit_equivalent(&s, &t, OrbitOptions::default())? {
        OrbitVerdict::Yes(w) => println!("same orbit, witness verified: {}", verify_witness(&w, &s, &t)),
        other => println!("unexpected verdict: {other}"),
    }
    Ok(())
}
