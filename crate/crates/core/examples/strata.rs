//! Stratum dimensions and point counts over small prime fields.

use std::sync::Arc;

use quiverlab::strata::{codim_report, count_points_fq, log_slope, stratum_dimension, CountOptions};
use quiverlab::rep::DimData;
use quiverlab::quiver::Quiver;

fn main() -> quiverlab::Result<()> {
    let q = Arc::new(Quiver::dynkin_a(1));
    let dims = DimData::new(vec![2], vec![1]);
    let report = codim_report(&q, &dims)?;
    print!("{}", report.to_csv());

    let mut totals = Vec::new();
    let mut bottom = Vec::new();
    for p in [2, 3, 5, 7] {
        let r = count_points_fq(q.clone(), &dims, &[0], p, CountOptions::default())?;
        println!("p = {p}: {} points, strata {:?}", r.total, r.per_stratum);
        totals.push((p, r.total));
        bottom.push((p, r.per_stratum.get(&vec![0]).copied().unwrap_or(0)));
    }
    println!(
        "growth {:.3} (formula {}), stratum v' = 0 growth {:.3} (formula {})",
        log_slope(&totals),
        stratum_dimension(&q, &dims, &[1])?,
        log_slope(&bottom),
        stratum_dimension(&q, &dims, &[0])?
    );
    Ok(())
}
