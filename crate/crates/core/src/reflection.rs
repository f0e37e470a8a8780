//! Point-level reflection functors, Coxeter relation checks and the
//! reduction of (d, v) to the dominant case.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::linalg::Mat;
use crate::path::{orbit_equivalent, verify_witness, OrbitOptions, OrbitVerdict};
use crate::quiver::{dot_reflect, reflect_weight, CartanData, Quiver, RootVec, WeightVec, WeylWord};
use crate::rep::{assemble_ab, in_level_set, sample_fiber, DimData, FramedPoint, SampleOptions, Summand};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Auto,
    Kernel,
    Cokernel,
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Side::Auto),
            "kernel" => Ok(Side::Kernel),
            "cokernel" => Ok(Side::Cokernel),
            other => Err(Error::Parse(format!("unknown side {other:?}"))),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Auto => "auto",
            Side::Kernel => "kernel",
            Side::Cokernel => "cokernel",
        })
    }
}

/// The reflected point together with the new parameters and the maps a_i′,
/// b_i′ it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionResult<F> {
    pub point: FramedPoint<F>,
    pub lam: Vec<F>,
    pub m: WeightVec<i64>,
    /// Kernel or cokernel, never auto.
    pub side: Side,
    pub a_new: Mat<F>,
    pub b_new: Mat<F>,
}

fn undefined(vertex: usize, reason: &str) -> Error {
    Error::ReflectionUndefined {
        vertex,
        reason: reason.into(),
    }
}

/// Replace the blocks at vertex i by those read off from a_i′ and b_i′.
fn rebuild<F: Field>(s: &FramedPoint<F>, i: usize, a: &Mat<F>, b: &Mat<F>) -> Result<FramedPoint<F>> {
    let q = s.quiver();
    let ab = assemble_ab(s, i);
    let vi = a.cols();
    let mut dims = s.dims().clone();
    dims.v[i] = vi;
    let mut arrows = s.b.clone();
    let mut gamma = s.gamma.clone();
    let mut delta = s.delta.clone();
    for ((summand, &size), off) in ab.layout.iter().zip(&ab.sizes).zip(ab.offsets()) {
        let rows = a.submatrix(off, size, 0, vi);
        let cols = b.submatrix(0, vi, off, size);
        match *summand {
            Summand::Framing => {
                delta[i] = rows;
                gamma[i] = cols;
            }
            Summand::Arrow(h) => {
                let arrow = q.arrow(h);
                arrows[arrow.bar] = rows;
                arrows[h] = cols.scale(&F::from_i64(arrow.eps));
            }
        }
    }
    FramedPoint::new(s.quiver_arc().clone(), dims, arrows, gamma, delta)
}

/// Φ_{s_i} at the level of points: the new V_i is ker b_i (kernel side) or
/// a complement of Im a_i (cokernel side), with a_i′b_i′ = a_ib_i − λ_i.
pub fn reflect_point<F: Field>(
    s: &FramedPoint<F>,
    i: usize,
    lam: &[F],
    m: &WeightVec<i64>,
    side: Side,
) -> Result<ReflectionResult<F>> {
    let q = s.quiver();
    if i >= q.n() || lam.len() != q.n() || m.0.len() != q.n() {
        return Err(Error::ShapeMismatch("vertex or parameters do not match the quiver".into()));
    }
    if !in_level_set(s, lam) {
        return Err(Error::MomentMismatch("input point is not in the level set".into()));
    }
    let ab = assemble_ab(s, i);
    let (t, vi) = (ab.t_dim(), s.dims().v[i]);
    let b_epi = ab.b.rank() == vi;
    let a_mono = ab.a.rank() == vi;
    let side = match side {
        Side::Auto if m.0[i] < 0 && a_mono => Side::Cokernel,
        Side::Auto if b_epi => Side::Kernel,
        Side::Auto if a_mono => Side::Cokernel,
        Side::Auto => {
            return Err(undefined(i, "b_i is not surjective and a_i is not injective"))
        }
        Side::Kernel if !b_epi => return Err(undefined(i, "b_i is not surjective")),
        Side::Cokernel if !a_mono => return Err(undefined(i, "a_i is not injective")),
        other => other,
    };
    let target = &(&ab.a * &ab.b) - &Mat::scalar(t, lam[i].clone());
    let (a_new, b_new) = if side == Side::Kernel {
        let a_new = ab.b.kernel();
        let sol = a_new.solve_right(&target)?;
        (a_new, sol.particular)
    } else {
        let b_new = ab.a.left_kernel();
        let sol = b_new.transpose().solve_right(&target.transpose())?;
        (sol.particular.transpose(), b_new)
    };
    let point = rebuild(s, i, &a_new, &b_new)?;
    let c = q.cartan_data();
    let lam_new = reflect_weight(&c, i, &WeightVec(lam.to_vec())).0;
    let m_new = reflect_weight(&c, i, m);
    if !in_level_set(&point, &lam_new) {
        return Err(Error::MomentMismatch(format!("reflection at vertex {i} left the level set")));
    }
    Ok(ReflectionResult {
        point,
        lam: lam_new,
        m: m_new,
        side,
        a_new,
        b_new,
    })
}

/// Outcome of checking the six defining conditions of Z_i^λ on a pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZReport {
    /// Set when the pair does not even have the right shapes.
    pub precondition: Option<String>,
    pub passed: [bool; 6],
}

impl ZReport {
    pub fn all_passed(&self) -> bool {
        self.precondition.is_none() && self.passed.iter().all(|&p| p)
    }

    /// 1-based numbers of the failed conditions.
    pub fn failures(&self) -> Vec<usize> {
        (1..=6).filter(|&k| !self.passed[k - 1]).collect()
    }
}

fn exact<F: Field>(inj: &Mat<F>, surj: &Mat<F>) -> bool {
    let (t, a_dim, b_dim) = (inj.rows(), inj.cols(), surj.rows());
    inj.rank() == a_dim && surj.rank() == b_dim && a_dim + b_dim == t && (surj * inj).is_zero()
}

pub fn verify_z_conditions<F: Field>(
    s: &FramedPoint<F>,
    r: &ReflectionResult<F>,
    i: usize,
    lam: &[F],
) -> ZReport {
    let fail = |msg: String| ZReport {
        precondition: Some(msg),
        passed: [false; 6],
    };
    let q = s.quiver();
    let t = &r.point;
    if i >= q.n() || t.quiver() != q || lam.len() != q.n() || r.lam.len() != q.n() {
        return fail("points, vertex and parameters do not match".into());
    }
    let (dv, dw) = (s.dims(), t.dims());
    let c = q.cartan_data();
    let expected = dot_reflect(&c, i, &dv.d_weight(), &dv.v_root());
    if dv.d != dw.d || dw.v_root() != expected {
        return fail(format!(
            "reflected dimensions {:?} differ from s_i·v = {:?}",
            dw.v, expected.0
        ));
    }
    let (ab, ab_new) = (assemble_ab(s, i), assemble_ab(t, i));
    let touches = |k: usize| q.arrow(k).from == i || q.arrow(k).to == i;
    let c1 = (0..q.arrows().len()).all(|k| touches(k) || s.b[k] == t.b[k]);
    let c2 = (0..q.n()).all(|j| j == i || s.gamma[j] == t.gamma[j]);
    let c3 = (0..q.n()).all(|j| j == i || s.delta[j] == t.delta[j]);
    let c4 = match r.side {
        Side::Cokernel => exact(&ab.a, &ab_new.b),
        _ => exact(&ab_new.a, &ab.b),
    };
    let tdim = ab.t_dim();
    let c5 = &ab_new.a * &ab_new.b == &(&ab.a * &ab.b) - &Mat::scalar(tdim, lam[i].clone());
    let c6 = in_level_set(s, lam) && in_level_set(t, &r.lam);
    ZReport {
        precondition: None,
        passed: [c1, c2, c3, c4, c5, c6],
    }
}

/// A point carried along a Weyl word with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transported<F> {
    pub point: FramedPoint<F>,
    pub lam: Vec<F>,
    pub m: WeightVec<i64>,
}

/// Φ_σ for σ = w₀⋯w_k, applying w_k first.
pub fn reflect_word<F: Field>(
    s: &FramedPoint<F>,
    word: &WeylWord,
    lam: &[F],
    m: &WeightVec<i64>,
    side: Side,
) -> Result<Transported<F>> {
    let mut cur = Transported {
        point: s.clone(),
        lam: lam.to_vec(),
        m: m.clone(),
    };
    let mut prefix = Vec::new();
    for i in word.application_order() {
        let r = reflect_point(&cur.point, i, &cur.lam, &cur.m, side).map_err(|e| {
            Error::WordFailed {
                prefix: prefix.clone(),
                source: Box::new(e),
            }
        })?;
        prefix.push(i);
        cur = Transported {
            point: r.point,
            lam: r.lam,
            m: r.m,
        };
    }
    Ok(cur)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// s_i s_i = 1.
    Involution,
    /// s_i s_j = s_j s_i when a_ij = 0.
    Commutation,
    /// s_i s_j s_i = s_j s_i s_j when a_ij = 1.
    Braid,
    /// Kernel- and cokernel-side reflections agree when λ_i ≠ 0.
    Sides,
}

/// Tallies for one relation over all trials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationTally {
    pub relation: Relation,
    pub vertices: Vec<usize>,
    pub yes: usize,
    pub no: usize,
    pub unknown: usize,
    pub undefined: usize,
    pub skipped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxeterReport {
    pub trials: usize,
    pub seed: u64,
    pub relations: Vec<RelationTally>,
}

impl CoxeterReport {
    /// Every checked relation returned Yes with a verified witness on every trial.
    pub fn all_yes(&self) -> bool {
        self.relations
            .iter()
            .filter(|r| !r.skipped)
            .all(|r| r.yes == self.trials)
    }
}

fn tally<F: Field>(
    entry: &mut RelationTally,
    left: Result<FramedPoint<F>>,
    right: Result<FramedPoint<F>>,
    seed: u64,
) -> Result<()> {
    let (Ok(x), Ok(y)) = (left, right) else {
        entry.undefined += 1;
        return Ok(());
    };
    let opts = OrbitOptions {
        seed,
        ..OrbitOptions::default()
    };
    match orbit_equivalent(&x, &y, opts)? {
        OrbitVerdict::Yes(g) if verify_witness(&g, &x, &y) => entry.yes += 1,
        OrbitVerdict::Yes(_) | OrbitVerdict::No(_) => entry.no += 1,
        OrbitVerdict::Unknown => entry.unknown += 1,
    }
    Ok(())
}

/// Check the Coxeter relations and kernel/cokernel agreement on sampled
/// points of Λ_λ(d, v); every comparison goes through orbit_equivalent.
pub fn check_coxeter<F: Field>(
    q: Arc<Quiver>,
    dims: &DimData,
    lam: &[F],
    m: &WeightVec<i64>,
    trials: usize,
    seed: u64,
) -> Result<CoxeterReport> {
    let n = q.n();
    let c = q.cartan_data();
    let mut relations = Vec::new();
    let blank = |relation, vertices: Vec<usize>, skipped| RelationTally {
        relation,
        vertices,
        yes: 0,
        no: 0,
        unknown: 0,
        undefined: 0,
        skipped,
    };
    for i in 0..n {
        relations.push(blank(Relation::Involution, vec![i], false));
    }
    for i in 0..n {
        for j in i + 1..n {
            match c.a(i, j) {
                0 => relations.push(blank(Relation::Commutation, vec![i, j], false)),
                1 => relations.push(blank(Relation::Braid, vec![i, j], false)),
                _ => relations.push(blank(Relation::Braid, vec![i, j], true)),
            }
        }
    }
    for i in (0..n).filter(|&i| !lam[i].is_zero()) {
        relations.push(blank(Relation::Sides, vec![i], false));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let s = sample_fiber(q.clone(), dims.clone(), lam, &mut rng, SampleOptions::default())?;
        let orbit_seed = seed.wrapping_add(trial as u64);
        let run = |w: &[usize]| -> Result<FramedPoint<F>> {
            reflect_word(&s, &WeylWord(w.to_vec()), lam, m, Side::Auto).map(|t| t.point)
        };
        for entry in relations.iter_mut().filter(|e| !e.skipped) {
            let v = entry.vertices.clone();
            match entry.relation {
                Relation::Involution => {
                    tally(entry, run(&[v[0], v[0]]), Ok(s.clone()), orbit_seed)?
                }
                Relation::Commutation => {
                    tally(entry, run(&[v[0], v[1]]), run(&[v[1], v[0]]), orbit_seed)?
                }
                Relation::Braid => tally(
                    entry,
                    run(&[v[0], v[1], v[0]]),
                    run(&[v[1], v[0], v[1]]),
                    orbit_seed,
                )?,
                Relation::Sides => {
                    let ker = reflect_point(&s, v[0], lam, m, Side::Kernel).map(|r| r.point);
                    let coker = reflect_point(&s, v[0], lam, m, Side::Cokernel).map(|r| r.point);
                    tally(entry, ker, coker, orbit_seed)?
                }
            }
        }
    }
    Ok(CoxeterReport {
        trials,
        seed,
        relations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Reflect,
    Drop,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub vertex: usize,
    pub kind: StepKind,
    /// v after the step.
    pub v: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub v: RootVec,
    pub lam: Vec<Q>,
    pub m: Option<WeightVec<i64>>,
    /// The reflections applied, last one first.
    pub word: WeylWord,
    /// Some coordinate of v became negative: the variety is empty.
    pub empty: bool,
}

impl ReductionTrace {
    pub fn is_dominant(&self) -> bool {
        !self.empty
    }

    pub fn to_json(&self, q: &Quiver) -> Value {
        let label = |i: usize| q.vertices()[i];
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| serde_json::json!({"vertex": label(s.vertex), "kind": s.kind, "v": s.v}))
            .collect();
        let word: Vec<i64> = self.word.0.iter().map(|&i| label(i)).collect();
        serde_json::json!({
            "steps": steps,
            "final": {
                "v": self.v.0,
                "lambda": self.lam.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "m": self.m.as_ref().map(|m| m.0.clone()),
                "word": word,
            },
            "status": if self.empty { "empty" } else { "dominant" },
        })
    }
}

/// While some vertex has 2v_i > d_i + Σ a_ij v_j, reflect there when λ_i ≠ 0
/// and drop a simple root otherwise; the smallest such vertex goes first.
pub fn reduce_to_dominant(
    c: &CartanData,
    d: &WeightVec<i64>,
    v: &RootVec,
    lam: &[Q],
    m: Option<&WeightVec<i64>>,
) -> Result<ReductionTrace> {
    let n = c.n();
    if d.0.len() != n || v.0.len() != n || lam.len() != n || m.is_some_and(|m| m.0.len() != n) {
        return Err(Error::ShapeMismatch("d, v, lambda and m need one entry per vertex".into()));
    }
    if d.0.iter().any(|&x| x < 0) {
        return Err(Error::RangeViolation("d has a negative entry".into()));
    }
    let mut trace = ReductionTrace {
        steps: Vec::new(),
        v: v.clone(),
        lam: lam.to_vec(),
        m: m.cloned(),
        word: WeylWord::identity(),
        empty: v.0.iter().any(|&x| x < 0),
    };
    while !trace.empty {
        let violating = (0..n).find(|&i| {
            let s: i64 = (0..n).filter(|&j| j != i).map(|j| c.a(i, j) * trace.v.0[j]).sum();
            2 * trace.v.0[i] > d.0[i] + s
        });
        let Some(i) = violating else { break };
        let kind = if trace.lam[i].is_zero() {
            trace.v.0[i] -= 1;
            StepKind::Drop
        } else {
            trace.v = dot_reflect(c, i, d, &trace.v);
            trace.lam = reflect_weight(c, i, &WeightVec(trace.lam.clone())).0;
            trace.m = trace.m.as_ref().map(|m| reflect_weight(c, i, m));
            trace.word.0.insert(0, i);
            StepKind::Reflect
        };
        trace.steps.push(ReductionStep {
            vertex: i,
            kind,
            v: trace.v.0.clone(),
        });
        trace.empty = trace.v.0.iter().any(|&x| x < 0);
    }
    Ok(trace)
}

/// Pad a point of S(d, v′) with zero blocks to a point of S(d, v).
pub fn j_embed<F: Field>(s: &FramedPoint<F>, v: &[usize]) -> Result<FramedPoint<F>> {
    let q = s.quiver();
    let small = &s.dims().v;
    if v.len() != small.len() || v.iter().zip(small).any(|(a, b)| a < b) {
        return Err(Error::RangeViolation("target v must dominate the point's v".into()));
    }
    let dims = DimData::new(s.dims().d.clone(), v.to_vec());
    let mut t = FramedPoint::zero(s.quiver_arc().clone(), dims)?;
    for k in 0..q.arrows().len() {
        t.b[k].set_block(0, 0, &s.b[k]);
    }
    for i in 0..q.n() {
        t.gamma[i].set_block(0, 0, &s.gamma[i]);
        t.delta[i].set_block(0, 0, &s.delta[i]);
    }
    Ok(t)
}

/// Restrict a padded point to the leading v′ coordinates at each vertex.
pub fn forget_padding<F: Field>(s: &FramedPoint<F>, v: &[usize]) -> Result<FramedPoint<F>> {
    let q = s.quiver();
    let big = &s.dims().v;
    if v.len() != big.len() || v.iter().zip(big).any(|(a, b)| a > b) {
        return Err(Error::RangeViolation("v must be dominated by the point's v".into()));
    }
    let d = &s.dims().d;
    let b = q
        .arrows()
        .iter()
        .zip(&s.b)
        .map(|(h, m)| m.submatrix(0, v[h.to], 0, v[h.from]))
        .collect();
    let gamma = (0..q.n()).map(|i| s.gamma[i].submatrix(0, v[i], 0, d[i])).collect();
    let delta = (0..q.n()).map(|i| s.delta[i].submatrix(0, d[i], 0, v[i])).collect();
    FramedPoint::new(
        s.quiver_arc().clone(),
        DimData::new(d.clone(), v.to_vec()),
        b,
        gamma,
        delta,
    )
}

/// Extend the columns of `start` to a basis of F^n with standard vectors.
fn extend_basis<F: Field>(start: &Mat<F>, n: usize) -> Mat<F> {
    let mut basis = start.clone();
    for k in 0..n {
        if basis.cols() == n {
            break;
        }
        let e = Mat::from_fn(n, 1, |r, _| if r == k { F::one() } else { F::zero() });
        let next = Mat::hstack(n, &[&basis, &e]).expect("same height");
        if next.rank() == next.cols() {
            basis = next;
        }
    }
    basis
}

/// The limit point of S(d, v − α_i) reached by a one-parameter subgroup at
/// vertex i: either V_i′ ⊇ Im b_i of codimension one (incoming maps land in
/// V_i′, outgoing maps are restricted), or V_i modulo a line in ker a_i.
pub fn limit_project<F: Field>(s: &FramedPoint<F>, i: usize) -> Result<FramedPoint<F>> {
    let q = s.quiver();
    if i >= q.n() {
        return Err(Error::ShapeMismatch(format!("vertex {i} out of range")));
    }
    let vi = s.dims().v[i];
    let ab = assemble_ab(s, i);
    // basis change P of V_i whose last column spans the dropped direction
    let p = if vi > 0 && ab.b.rank() < vi {
        extend_basis(&extend_basis(&ab.b.column_space(), vi).submatrix(0, vi, 0, vi - 1), vi)
    } else if vi > 0 && ab.a.rank() < vi {
        let k = ab.a.kernel().submatrix(0, vi, 0, 1);
        let full = extend_basis(&k, vi);
        Mat::hstack(vi, &[&full.submatrix(0, vi, 1, vi - 1), &k]).expect("same height")
    } else {
        return Err(Error::RankTooLarge(i));
    };
    let p_inv = p.inverse().expect("extended basis is invertible");
    let mut t = s.clone();
    for (k, h) in q.arrows().iter().enumerate() {
        if h.to == i {
            t.b[k] = &p_inv * &t.b[k];
        }
        if h.from == i {
            t.b[k] = &t.b[k] * &p;
        }
    }
    t.gamma[i] = &p_inv * &t.gamma[i];
    t.delta[i] = &t.delta[i] * &p;
    let mut v = s.dims().v.clone();
    v[i] -= 1;
    forget_padding(&t, &v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::lusztig_invariants;
    use crate::rep::moment_map;

    fn a1_point(g: &[i64], d: &[i64]) -> FramedPoint<Q> {
        let q = Arc::new(Quiver::dynkin_a(1));
        let mut s = FramedPoint::zero(q, DimData::new(vec![g.len()], vec![1])).unwrap();
        s.gamma[0] = Mat::from_i64(&[g]);
        let rows: Vec<&[i64]> = d.chunks(1).collect();
        s.delta[0] = Mat::from_i64(&rows);
        s
    }

    #[test]
    fn a1_worked_reflection() {
        let s = a1_point(&[1, 0], &[1, 0]);
        let lam = [Q::from(1)];
        let m = WeightVec(vec![0]);
        let r = reflect_point(&s, 0, &lam, &m, Side::Kernel).unwrap();
        assert_eq!(r.point.gamma[0], Mat::from_i64(&[&[0, -1]]));
        assert_eq!(r.point.delta[0], Mat::from_i64(&[&[0], &[1]]));
        assert_eq!(r.lam, vec![Q::from(-1)]);
        assert_eq!(moment_map(&r.point)[0], Mat::from_i64(&[&[-1]]));
        assert!(verify_z_conditions(&s, &r, 0, &lam).all_passed());

        let mut bent = r.clone();
        bent.point.gamma[0] = Mat::from_i64(&[&[1, -1]]);
        let report = verify_z_conditions(&s, &bent, 0, &lam);
        assert!(report.failures().contains(&5));

        let mut shrunk = r;
        shrunk.point = FramedPoint::zero(s.quiver_arc().clone(), DimData::new(vec![2], vec![2])).unwrap();
        assert!(verify_z_conditions(&s, &shrunk, 0, &lam).precondition.is_some());
    }

    #[test]
    fn undefined_at_zero() {
        let s = a1_point(&[0, 0], &[0, 0]);
        let err = reflect_point(&s, 0, &[Q::from(0)], &WeightVec(vec![0]), Side::Auto);
        assert!(matches!(err, Err(Error::ReflectionUndefined { .. })));
    }

    #[test]
    fn a2_lambda_update() {
        let q = Arc::new(Quiver::dynkin_a(2));
        let lam = [Q::from(1), Q::from(1)];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let dims = DimData::new(vec![1, 1], vec![1, 1]);
        let s = sample_fiber(q, dims, &lam, &mut rng, SampleOptions::default()).unwrap();
        let r = reflect_point(&s, 0, &lam, &WeightVec(vec![0, 0]), Side::Auto).unwrap();
        assert_eq!(r.lam, vec![Q::from(-1), Q::from(2)]);
        assert!(verify_z_conditions(&s, &r, 0, &lam).all_passed());
        let c = reflect_point(&s, 0, &lam, &WeightVec(vec![0, 0]), Side::Cokernel).unwrap();
        assert!(verify_z_conditions(&s, &c, 0, &lam).all_passed());
    }

    #[test]
    fn words() {
        let s = a1_point(&[1, 0], &[1, 0]);
        let lam = [Q::from(1)];
        let m = WeightVec(vec![0]);
        let id = reflect_word(&s, &WeylWord::identity(), &lam, &m, Side::Auto).unwrap();
        assert_eq!(id.point, s);
        let back = reflect_word(&s, &WeylWord(vec![0, 0]), &lam, &m, Side::Auto).unwrap();
        assert_eq!(back.lam, lam.to_vec());
        assert!(orbit_equivalent(&back.point, &s, OrbitOptions::default()).unwrap().is_yes());

        let z = a1_point(&[0, 0], &[0, 0]);
        let err = reflect_word(&z, &WeylWord(vec![0]), &[Q::from(0)], &m, Side::Auto);
        assert!(matches!(err, Err(Error::WordFailed { ref prefix, .. }) if prefix.is_empty()));
    }

    #[test]
    fn coxeter_small() {
        let q = Arc::new(Quiver::dynkin_a(2));
        let dims = DimData::new(vec![1, 1], vec![1, 1]);
        let lam = [Q::from(1), Q::from(1)];
        let report = check_coxeter(q, &dims, &lam, &WeightVec(vec![0, 0]), 3, 7).unwrap();
        assert!(report.all_yes(), "{report:?}");

        let a1 = Quiver::dynkin_a(1);
        let two = Arc::new(a1.disjoint_union(&a1));
        let dims = DimData::new(vec![2, 2], vec![1, 1]);
        let lam = [Q::from(1), Q::from(2)];
        let report = check_coxeter(two, &dims, &lam, &WeightVec(vec![0, 0]), 3, 1).unwrap();
        assert!(report.relations.iter().any(|r| r.relation == Relation::Commutation));
        assert!(report.all_yes(), "{report:?}");
    }

    #[test]
    fn reductions() {
        let a2 = Quiver::dynkin_a(2).cartan_data();
        let zero = [Q::from(0), Q::from(0)];
        let t = reduce_to_dominant(&a2, &WeightVec(vec![1, 1]), &RootVec(vec![2, 0]), &zero, None).unwrap();
        assert_eq!(t.steps.len(), 2);
        assert!(t.steps.iter().all(|s| s.vertex == 0 && s.kind == StepKind::Drop));
        assert_eq!(t.v, RootVec(vec![0, 0]));
        assert!(t.is_dominant());

        let a1 = Quiver::dynkin_a(1).cartan_data();
        let t = reduce_to_dominant(&a1, &WeightVec(vec![2]), &RootVec(vec![1]), &[Q::from(5)], None).unwrap();
        assert!(t.steps.is_empty() && t.is_dominant());
        let t = reduce_to_dominant(&a1, &WeightVec(vec![0]), &RootVec(vec![1]), &[Q::from(1)], None).unwrap();
        assert!(t.empty);
        assert_eq!(t.v, RootVec(vec![-1]));
        assert_eq!(t.steps[0].kind, StepKind::Reflect);
    }

    #[test]
    fn embedding_and_limits() {
        let q = Arc::new(Quiver::dynkin_a(2));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let s = FramedPoint::<Q>::random(q.clone(), DimData::new(vec![1, 2], vec![1, 1]), &mut rng, 5).unwrap();
        let big = j_embed(&s, &[2, 3]).unwrap();
        assert_eq!(forget_padding(&big, &[1, 1]).unwrap(), s);
        assert_eq!(lusztig_invariants(&big, 3), lusztig_invariants(&s, 3));

        let zero = [Q::from(0), Q::from(0)];
        let t = sample_fiber(q, DimData::new(vec![1, 0], vec![2, 1]), &zero, &mut rng, SampleOptions::default())
            .unwrap();
        let l = limit_project(&t, 0).unwrap();
        assert_eq!(l.dims().v, vec![1, 1]);
        assert_eq!(lusztig_invariants(&l, 4), lusztig_invariants(&t, 4));

        let w = a1_point(&[1, 0], &[1, 0]);
        assert!(matches!(limit_project(&w, 0), Err(Error::RankTooLarge(0))));
    }
}
