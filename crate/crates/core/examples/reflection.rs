//! Reflection functors on points and the Coxeter relations.

use std::sync::Arc;

use quiverlab::reflection::{check_coxeter, reflect_point, reflect_word, verify_z_conditions, Side};
use quiverlab::rep::{DimData, FramedPoint};
use quiverlab::quiver::{Quiver, WeightVec, WeylWord};
use quiverlab::{Mat, Q};

fn main() -> quiverlab::Result<()> {
    let q = Arc::new(Quiver::dynkin_a(1));
    let mut s = FramedPoint::<Q>::zero(q, DimData::new(vec![2], vec![1]))?;
    s.gamma[0] = Mat::from_i64(&[&[1, 0]]);
    s.delta[0] = Mat::from_i64(&[&[1], &[0]]);
    let lam = [Q::from(1)];
    let m = WeightVec(vec![0]);

    let r = reflect_point(&s, 0, &lam, &m, Side::Kernel)?;
    println!("gamma' = {}", r.point.gamma[0]);
    println!("delta' =\n{}", r.point.delta[0]);
    println!("lambda' = {:?}", r.lam);
    let report = verify_z_conditions(&s, &r, 0, &lam);
    println!("all six conditions hold: {}", report.all_passed());

    let back = reflect_word(&s, &WeylWord(vec![0, 0]), &lam, &m, Side::Auto)?;
    println!("s_1 s_1 returns lambda = {:?}", back.lam);

    let a2 = Arc::new(Quiver::dynkin_a(2));
    let dims = DimData::new(vec![1, 1], vec![1, 1]);
    let report = check_coxeter(a2, &dims, &[Q::from(1), Q::from(1)], &WeightVec(vec![0, 0]), 10, 7)?;
    for r in &report.relations {
        println!("{:?} {:?}: {} of {} yes", r.relation, r.vertices, r.yes, report.trials);
    }
    Ok(())
}
