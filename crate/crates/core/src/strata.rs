//! The V⁺ stratification of Λ(d, v), stratum dimensions, and exhaustive
//! point counts over small prime fields.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Field, Fp};
use crate::linalg::Mat;
use crate::path::plus_subspaces;
use crate::quiver::{dominance, weight_difference, CorootVec, Quiver, RootVec, WeightVec};
use crate::rep::{in_level_set, DimData, FramedPoint};
use crate::with_prime;

/// Default cap on the number of points enumerated by [`count_points_fq`].
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// dim V_i⁺(s) per vertex, with a column basis of each V_i⁺(s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumLabel<F> {
    pub v_prime: Vec<usize>,
    pub bases: Vec<Mat<F>>,
}

pub fn v_plus<F: Field>(s: &FramedPoint<F>) -> StratumLabel<F> {
    let bases = plus_subspaces(s);
    StratumLabel {
        v_prime: bases.iter().map(Mat::cols).collect(),
        bases,
    }
}

fn pair(x: &RootVec, w: &WeightVec<i64>) -> i64 {
    w.pair(&CorootVec(x.0.clone()))
}

/// dim Λ^{v′} = dim S − Σ v_i² − ⟨v − v′, d − Cv⟩ − ½⟨v − v′, C(v − v′)⟩.
pub fn stratum_dimension(q: &Quiver, dims: &DimData, v_prime: &[usize]) -> Result<i64> {
    if v_prime.len() != dims.n() || dims.n() != q.n() {
        return Err(Error::ShapeMismatch("v' needs one entry per vertex".into()));
    }
    if v_prime.iter().zip(&dims.v).any(|(a, b)| a > b) {
        return Err(Error::RangeViolation(format!(
            "v' = {v_prime:?} is not below v = {:?}",
            dims.v
        )));
    }
    let c = q.cartan_data();
    let total = dims.space_dimension(q) as i64;
    let gl: i64 = dims.v.iter().map(|&x| (x * x) as i64).sum();
    let diff = RootVec(dims.v.iter().zip(v_prime).map(|(&a, &b)| a as i64 - b as i64).collect());
    let dv = weight_difference(&c, &dims.d_weight(), &dims.v_root());
    let cdiff = c.root_to_weight(&diff);
    Ok(total - gl - pair(&diff, &dv) - pair(&diff, &cdiff) / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimRow {
    pub v_prime: Vec<usize>,
    pub dimension: i64,
    /// δ_V minus the stratum dimension.
    pub codimension: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimReport {
    /// dim S − Σ dim gl(V_i).
    pub delta_v: i64,
    pub dominant: bool,
    pub regular: bool,
    pub rows: Vec<CodimRow>,
    /// Every stratum other than the top one has codimension ≥ 1.
    pub codim1: bool,
    /// Every stratum other than the top one has codimension ≥ 2.
    pub codim2: bool,
}

/// All 0 ≤ v′ ≤ v in lexicographic order.
pub fn sub_vectors(v: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &vi in v {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=vi).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

pub fn codim_report(q: &Quiver, dims: &DimData) -> Result<CodimReport> {
    let c = q.cartan_data();
    let delta_v = dims.space_dimension(q) as i64 - dims.v.iter().map(|&x| (x * x) as i64).sum::<i64>();
    let flags = dominance(&c, &dims.d_weight(), &dims.v_root());
    let rows = sub_vectors(&dims.v)
        .into_iter()
        .map(|vp| {
            let dimension = stratum_dimension(q, dims, &vp)?;
            Ok(CodimRow {
                v_prime: vp,
                dimension,
                codimension: delta_v - dimension,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let lower = || rows.iter().filter(|r| r.v_prime != dims.v);
    Ok(CodimReport {
        delta_v,
        dominant: flags.dominant,
        regular: flags.regular,
        codim1: lower().all(|r| r.codimension >= 1),
        codim2: lower().all(|r| r.codimension >= 2),
        rows,
    })
}

impl CodimReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("v_prime,dimension,codimension\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{}", join(&r.v_prime), r.dimension, r.codimension);
        }
        out
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

/// Number of F_p-points of Λ_λ(d, v), in total and per V⁺ stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub prime: u64,
    pub total: u64,
    pub per_stratum: BTreeMap<Vec<usize>, u64>,
}

impl CountReport {
    pub fn to_json(&self) -> Value {
        let strata: Vec<Value> = self
            .per_stratum
            .iter()
            .map(|(k, n)| serde_json::json!({"v_prime": k, "count": n}))
            .collect();
        serde_json::json!({"prime": self.prime, "total": self.total, "per_stratum": strata})
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("v_prime,count\n");
        for (k, n) in &self.per_stratum {
            let _ = writeln!(out, "{},{n}", join(k));
        }
        let _ = writeln!(out, "total,{}", self.total);
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountOptions {
    pub budget: u128,
    /// Worker threads; None uses the rayon default.
    pub jobs: Option<usize>,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            budget: DEFAULT_BUDGET,
            jobs: None,
        }
    }
}

/// Fill the point's entries (arrows, then γ_i, δ_i per vertex, each row-major)
/// from the base-p digits of `index`, most significant first.
fn decode<const P: u64>(template: &mut FramedPoint<Fp<P>>, mut index: u128, n_entries: usize) {
    let mut digits = vec![0u64; n_entries];
    for slot in digits.iter_mut().rev() {
        *slot = (index % P as u128) as u64;
        index /= P as u128;
    }
    let mut it = digits.into_iter();
    let mut fill = |m: &mut Mat<Fp<P>>| {
        let (r, c) = m.shape();
        let entries: Vec<Fp<P>> = (0..r * c).map(|_| Fp::new(it.next().unwrap_or(0) as i64)).collect();
        *m = Mat::from_vec(r, c, entries).expect("shape preserved");
    };
    for m in template.b.iter_mut() {
        fill(m);
    }
    for i in 0..template.gamma.len() {
        fill(&mut template.gamma[i]);
        fill(&mut template.delta[i]);
    }
}

fn count_generic<const P: u64>(
    quiver: Arc<Quiver>,
    dims: &DimData,
    lam: &[i64],
    opts: CountOptions,
) -> Result<CountReport> {
    let n_entries = dims.space_dimension(&quiver);
    let required = (P as u128)
        .checked_pow(n_entries as u32)
        .ok_or(Error::BudgetExceeded {
            required: u128::MAX,
            budget: opts.budget,
        })?;
    if required > opts.budget {
        return Err(Error::BudgetExceeded {
            required,
            budget: opts.budget,
        });
    }
    let lam: Vec<Fp<P>> = lam.iter().map(|&x| Fp::new(x)).collect();
    let zero = FramedPoint::<Fp<P>>::zero(quiver, dims.clone())?;
    let chunks = 256u128.min(required);
    let work = |k: u128| -> BTreeMap<Vec<usize>, u64> {
        let (lo, hi) = (required * k / chunks, required * (k + 1) / chunks);
        let mut s = zero.clone();
        let mut local = BTreeMap::new();
        for index in lo..hi {
            decode(&mut s, index, n_entries);
            if in_level_set(&s, &lam) {
                *local.entry(v_plus(&s).v_prime).or_insert(0u64) += 1;
            }
        }
        local
    };
    let merge = |mut a: BTreeMap<Vec<usize>, u64>, b: BTreeMap<Vec<usize>, u64>| {
        for (k, n) in b {
            *a.entry(k).or_insert(0) += n;
        }
        a
    };
    let run = || {
        (0..chunks)
            .into_par_iter()
            .map(work)
            .reduce(BTreeMap::new, merge)
    };
    let per_stratum = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::RangeViolation(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    Ok(CountReport {
        prime: P,
        total: per_stratum.values().sum(),
        per_stratum,
    })
}

/// Enumerate every point of S(d, v) over F_p, keep those with μ = λ·Id and
/// sort them by V⁺ stratum.
pub fn count_points_fq(
    quiver: Arc<Quiver>,
    dims: &DimData,
    lam: &[i64],
    prime: u64,
    opts: CountOptions,
) -> Result<CountReport> {
    if lam.len() != dims.n() || dims.n() != quiver.n() {
        return Err(Error::ShapeMismatch("lambda and dimensions need one entry per vertex".into()));
    }
    with_prime!(prime, P => count_generic::<P>(quiver.clone(), dims, lam, opts))
}

/// Least-squares slope of ln(count) against ln(p): the growth exponent of a
/// point count.
pub fn log_slope(samples: &[(u64, u64)]) -> f64 {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|(_, n)| *n > 0)
        .map(|&(p, n)| ((p as f64).ln(), (n as f64).ln()))
        .collect();
    let k = pts.len() as f64;
    let (mx, my) = (
        pts.iter().map(|p| p.0).sum::<f64>() / k,
        pts.iter().map(|p| p.1).sum::<f64>() / k,
    );
    let cov: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    cov / var
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn a1(d: usize, v: usize) -> (Arc<Quiver>, DimData) {
        (Arc::new(Quiver::dynkin_a(1)), DimData::new(vec![d], vec![v]))
    }

    #[test]
    fn a1_dimensions() {
        let (q, dims) = a1(2, 1);
        assert_eq!(stratum_dimension(&q, &dims, &[1]).unwrap(), 3);
        assert_eq!(stratum_dimension(&q, &dims, &[0]).unwrap(), 2);
        let (q, dims) = a1(1, 1);
        assert_eq!(stratum_dimension(&q, &dims, &[1]).unwrap(), 1);
        assert_eq!(stratum_dimension(&q, &dims, &[0]).unwrap(), 1);
        assert!(matches!(
            stratum_dimension(&q, &dims, &[2]),
            Err(Error::RangeViolation(_))
        ));
    }

    #[test]
    fn reports() {
        let (q, dims) = a1(2, 1);
        let r = codim_report(&q, &dims).unwrap();
        assert_eq!(r.delta_v, 3);
        assert!(r.dominant && r.codim1 && !r.codim2);
        let (q, dims) = a1(3, 1);
        let r = codim_report(&q, &dims).unwrap();
        assert!(r.regular && r.codim2);
        let (q, dims) = a1(2, 0);
        let r = codim_report(&q, &dims).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0].codimension, 0);
    }

    #[test]
    fn a1_counts() {
        let (q, dims) = a1(2, 1);
        let r2 = count_points_fq(q.clone(), &dims, &[0], 2, CountOptions::default()).unwrap();
        assert_eq!(r2.total, 10);
        assert_eq!(r2.per_stratum[&vec![0]], 4);
        let r3 = count_points_fq(q.clone(), &dims, &[0], 3, CountOptions::default()).unwrap();
        assert_eq!(r3.total, 33);
        assert_eq!(r3.per_stratum[&vec![0]], 9);
        let tight = CountOptions {
            budget: 10,
            jobs: Some(1),
        };
        assert!(matches!(
            count_points_fq(q, &dims, &[0], 2, tight),
            Err(Error::BudgetExceeded { required: 16, .. })
        ));
    }

    #[test]
    fn v_plus_examples() {
        let (q, dims) = a1(2, 1);
        let mut s = FramedPoint::<Q>::zero(q, dims).unwrap();
        assert_eq!(v_plus(&s).v_prime, vec![0]);
        s.gamma[0] = Mat::from_i64(&[&[1, 0]]);
        assert_eq!(v_plus(&s).v_prime, vec![1]);
    }

    #[test]
    fn slopes() {
        let exact: Vec<(u64, u64)> = [2u64, 3, 5, 7].iter().map(|&p| (p, p * p)).collect();
        assert!((log_slope(&exact) - 2.0).abs() < 1e-12);
    }
}
