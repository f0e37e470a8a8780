//! Paths and b-paths, their evaluation on points, invariant generators,
//! intertwiners and orbit comparison.
//!
//! Literal syntax: `h3.h1` is the path applying `h1` first; `@2` is the empty
//! path at vertex 2; `[2^1 h3.h1 1^2]` is a b-path whose rightmost loop factor
//! is applied first.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Mat;
use crate::quiver::Quiver;
use crate::rep::{group_act, FramedPoint, GroupElement};

/// How the empty path evaluates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EmptyPathConvention {
    /// Identity on V_i, making evaluation an algebra map.
    #[default]
    Identity,
    /// The zero map, as the definition is literally printed.
    Zero,
}

/// A composable sequence of arrows, or the empty path at a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathExpr {
    source: usize,
    target: usize,
    /// Arrow indices in the order they are applied.
    arrows: Vec<usize>,
}

impl PathExpr {
    pub fn empty(vertex: usize) -> Self {
        PathExpr {
            source: vertex,
            target: vertex,
            arrows: Vec::new(),
        }
    }

    /// Build from arrows listed in application order.
    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let Some(&first) = arrows.first() else {
            return Err(Error::Parse("use PathExpr::empty for the empty path".into()));
        };
        for w in arrows.windows(2) {
            if q.arrow(w[0]).to != q.arrow(w[1]).from {
                return Err(Error::ShapeMismatch(format!(
                    "arrows {} and {} are not composable",
                    q.arrow(w[0]).id,
                    q.arrow(w[1]).id
                )));
            }
        }
        Ok(PathExpr {
            source: q.arrow(first).from,
            target: q.arrow(*arrows.last().expect("nonempty")).to,
            arrows,
        })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.source == self.target
    }

    /// `self` after `before`; None if the endpoints do not match.
    pub fn compose(&self, before: &PathExpr) -> Option<PathExpr> {
        if before.target != self.source {
            return None;
        }
        let mut arrows = before.arrows.clone();
        arrows.extend(&self.arrows);
        Some(PathExpr {
            source: before.source,
            target: self.target,
            arrows,
        })
    }

    /// Parse `h3.h1` or `@i`.
    pub fn parse(q: &Quiver, text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some(label) = text.strip_prefix('@') {
            let label = label
                .trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("invalid empty path {text:?}")))?;
            return Ok(PathExpr::empty(q.vertex_index(label)?));
        }
        let mut arrows = text
            .split('.')
            .map(|id| q.arrow_index(id.trim()))
            .collect::<Result<Vec<_>>>()?;
        arrows.reverse();
        PathExpr::from_arrows(q, arrows)
    }

    pub fn to_literal(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("@{}", q.vertices()[self.source]);
        }
        let ids: Vec<&str> = self.arrows.iter().rev().map(|&h| q.arrow(h).id.as_str()).collect();
        ids.join(".")
    }

    pub fn evaluate<F: Field>(&self, s: &FramedPoint<F>) -> Result<Mat<F>> {
        self.evaluate_with(s, EmptyPathConvention::Identity)
    }

    pub fn evaluate_with<F: Field>(
        &self,
        s: &FramedPoint<F>,
        conv: EmptyPathConvention,
    ) -> Result<Mat<F>> {
        let v = &s.dims().v;
        if self.arrows.is_empty() {
            return Ok(match conv {
                EmptyPathConvention::Identity => Mat::identity(v[self.source]),
                EmptyPathConvention::Zero => Mat::zeros(v[self.source], v[self.source]),
            });
        }
        let mut acc = s.b[self.arrows[0]].clone();
        for &h in &self.arrows[1..] {
            acc = s.b[h].try_mul(&acc)?;
        }
        Ok(acc)
    }
}

/// `[i_{m+1}^{r_{m+1}} α^{(m)} … α^{(1)} i_1^{r_1}]`, stored in application
/// order: `loops[0]` is i₁^{r₁}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BPathExpr {
    loops: Vec<(usize, u32)>,
    paths: Vec<PathExpr>,
}

impl BPathExpr {
    /// The empty b-path at a vertex.
    pub fn empty(vertex: usize) -> Self {
        BPathExpr {
            loops: vec![(vertex, 0)],
            paths: Vec::new(),
        }
    }

    /// A plain path seen as a b-path with no framing loops.
    pub fn from_path(p: PathExpr) -> Self {
        BPathExpr {
            loops: vec![(p.source, 0), (p.target, 0)],
            paths: vec![p],
        }
    }

    /// Loops and paths in application order; endpoints must chain.
    pub fn new(loops: Vec<(usize, u32)>, paths: Vec<PathExpr>) -> Result<Self> {
        if loops.len() != paths.len() + 1 {
            return Err(Error::ShapeMismatch(
                "a b-path needs one more loop factor than paths".into(),
            ));
        }
        for (j, p) in paths.iter().enumerate() {
            if p.source != loops[j].0 || p.target != loops[j + 1].0 {
                return Err(Error::ShapeMismatch(format!(
                    "path {j} of the b-path does not match its loop vertices"
                )));
            }
        }
        Ok(BPathExpr { loops, paths })
    }

    pub fn source(&self) -> usize {
        self.loops[0].0
    }

    pub fn target(&self) -> usize {
        self.loops.last().expect("at least one loop").0
    }

    pub fn len(&self) -> usize {
        self.loops.iter().map(|l| l.1 as usize).sum::<usize>()
            + self.paths.iter().map(PathExpr::len).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// No framing loops: the b-path is an element of the path algebra.
    pub fn is_plain(&self) -> bool {
        self.loops.iter().all(|l| l.1 == 0)
    }

    /// `self` after `before`; None if the endpoints do not match.
    pub fn compose(&self, before: &BPathExpr) -> Option<BPathExpr> {
        if before.target() != self.source() {
            return None;
        }
        let mut loops = before.loops.clone();
        let joint = loops.pop().expect("at least one loop");
        loops.push((joint.0, joint.1 + self.loops[0].1));
        loops.extend(&self.loops[1..]);
        let mut paths = before.paths.clone();
        paths.extend(self.paths.iter().cloned());
        Some(BPathExpr { loops, paths })
    }

    /// Parse `[2^1 h3.h1 1^2]`, `[@1]` or a bare path literal.
    pub fn parse(q: &Quiver, text: &str) -> Result<Self> {
        let text = text.trim();
        let Some(inner) = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')) else {
            let p = PathExpr::parse(q, text)?;
            return Ok(BPathExpr::from_path(p));
        };
        let tokens: Vec<&str> = inner.split_whitespace().collect();
        if tokens.len() == 1 && tokens[0].starts_with('@') {
            let p = PathExpr::parse(q, tokens[0])?;
            return Ok(BPathExpr::empty(p.source));
        }
        if tokens.len() % 2 == 0 {
            return Err(Error::Parse(format!(
                "b-path {text:?} must alternate vertex powers and paths"
            )));
        }
        let mut loops = Vec::new();
        let mut paths = Vec::new();
        for (k, tok) in tokens.iter().rev().enumerate() {
            if k % 2 == 0 {
                let (vert, exp) = tok.split_once('^').unwrap_or((tok, "1"));
                let label = vert
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("invalid vertex power {tok:?}")))?;
                let r = exp
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("invalid exponent in {tok:?}")))?;
                loops.push((q.vertex_index(label)?, r));
            } else {
                paths.push(PathExpr::parse(q, tok)?);
            }
        }
        BPathExpr::new(loops, paths)
    }

    pub fn to_literal(&self, q: &Quiver) -> String {
        match (self.is_plain(), self.paths.as_slice()) {
            (true, []) => return format!("[@{}]", q.vertices()[self.source()]),
            (true, [p]) => return p.to_literal(q),
            _ => {}
        }
        let mut tokens = Vec::new();
        for (j, &(vert, r)) in self.loops.iter().enumerate().rev() {
            tokens.push(format!("{}^{}", q.vertices()[vert], r));
            if j > 0 {
                tokens.push(self.paths[j - 1].to_literal(q));
            }
        }
        format!("[{}]", tokens.join(" "))
    }

    pub fn evaluate<F: Field>(&self, s: &FramedPoint<F>) -> Result<Mat<F>> {
        self.evaluate_with(s, EmptyPathConvention::Identity)
    }

    /// (γδ)^{r_{m+1}} ∘ α^{(m)}(s) ∘ … ∘ α^{(1)}(s) ∘ (γδ)^{r_1} : V_{β₀} → V_{β₁}.
    pub fn evaluate_with<F: Field>(
        &self,
        s: &FramedPoint<F>,
        conv: EmptyPathConvention,
    ) -> Result<Mat<F>> {
        let v = &s.dims().v;
        if self.is_empty() && conv == EmptyPathConvention::Zero {
            return Ok(Mat::zeros(v[self.target()], v[self.source()]));
        }
        let loop_factor = |(vert, r): (usize, u32)| (&s.gamma[vert] * &s.delta[vert]).pow(r);
        let mut acc = loop_factor(self.loops[0]);
        for (p, &l) in self.paths.iter().zip(&self.loops[1..]) {
            acc = p.evaluate_with(s, conv)?.try_mul(&acc)?;
            acc = loop_factor(l).try_mul(&acc)?;
        }
        Ok(acc)
    }
}

/// All paths of length 1..=max_len, shortest first, arrows in canonical order.
pub fn enumerate_paths(q: &Quiver, max_len: usize) -> Vec<PathExpr> {
    let mut out = Vec::new();
    let mut frontier: Vec<PathExpr> = (0..q.arrows().len())
        .map(|h| PathExpr::from_arrows(q, vec![h]).expect("single arrow"))
        .collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for h in q.arrows_out(p.target) {
                let mut arrows = p.arrows.clone();
                arrows.push(h);
                next.push(PathExpr {
                    source: p.source,
                    target: q.arrow(h).to,
                    arrows,
                });
            }
        }
        out.append(&mut frontier);
        frontier = next;
    }
    out
}

/// A named invariant value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariant<F> {
    pub descriptor: String,
    pub value: F,
}

/// Traces of closed paths of length 1..=max_len, then every entry of
/// δ_{β₁} β(s) γ_{β₀} for paths β of length 0..=max_len.
pub fn lusztig_invariants<F: Field>(s: &FramedPoint<F>, max_len: usize) -> Vec<Invariant<F>> {
    let q = s.quiver();
    let n = q.n();
    // evaluations of all paths, computed incrementally by length
    let mut levels: Vec<Vec<(PathExpr, Mat<F>)>> = vec![(0..n)
        .map(|i| (PathExpr::empty(i), Mat::identity(s.dims().v[i])))
        .collect()];
    for len in 1..=max_len {
        let mut next = Vec::new();
        if len == 1 {
            for (h, arrow) in q.arrows().iter().enumerate() {
                next.push((
                    PathExpr {
                        source: arrow.from,
                        target: arrow.to,
                        arrows: vec![h],
                    },
                    s.b[h].clone(),
                ));
            }
        } else {
            for (p, m) in &levels[len - 1] {
                for h in q.arrows_out(p.target) {
                    let mut arrows = p.arrows.clone();
                    arrows.push(h);
                    next.push((
                        PathExpr {
                            source: p.source,
                            target: q.arrow(h).to,
                            arrows,
                        },
                        &s.b[h] * m,
                    ));
                }
            }
        }
        levels.push(next);
    }
    let mut out = Vec::new();
    for level in &levels[1..] {
        for (p, m) in level {
            if p.is_closed() {
                out.push(Invariant {
                    descriptor: format!("tr({})", p.to_literal(q)),
                    value: m.trace(),
                });
            }
        }
    }
    for level in &levels {
        for (p, m) in level {
            let framed = &(&s.delta[p.target] * m) * &s.gamma[p.source];
            let lit = p.to_literal(q);
            for r in 0..framed.rows() {
                for c in 0..framed.cols() {
                    out.push(Invariant {
                        descriptor: format!("entry({lit})[{r},{c}]"),
                        value: framed[(r, c)].clone(),
                    });
                }
            }
        }
    }
    out
}

/// Least B-stable family of subspaces containing every Im γ_i, as a column
/// basis per vertex.
pub fn plus_subspaces<F: Field>(s: &FramedPoint<F>) -> Vec<Mat<F>> {
    let q = s.quiver();
    let v = &s.dims().v;
    let mut w: Vec<Mat<F>> = (0..q.n()).map(|i| s.gamma[i].column_space()).collect();
    loop {
        let mut changed = false;
        for (h, arrow) in q.arrows().iter().enumerate() {
            let image = &s.b[h] * &w[arrow.from];
            let joined = Mat::hstack(v[arrow.to], &[&w[arrow.to], &image])
                .expect("subspace bases share the ambient dimension")
                .column_space();
            if joined.cols() > w[arrow.to].cols() {
                w[arrow.to] = joined;
                changed = true;
            }
        }
        if !changed {
            return w;
        }
    }
}

/// Solutions (g_i) of g_{h₁}B_h(s) = B_h(t)g_{h₀}, g_iγ_i(s) = γ_i(t),
/// δ_i(s) = δ_i(t)g_i: a particular solution plus a basis of the
/// homogeneous solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace<F> {
    pub particular: Vec<Mat<F>>,
    pub basis: Vec<Vec<Mat<F>>>,
}

impl<F: Field> HomSpace<F> {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// particular + Σ c_k basis_k.
    pub fn point(&self, coeffs: &[F]) -> Vec<Mat<F>> {
        let mut g = self.particular.clone();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            for (gi, bi) in g.iter_mut().zip(b) {
                *gi = &*gi + &bi.scale(c);
            }
        }
        g
    }

    /// Membership test for a candidate tuple.
    pub fn contains(&self, g: &[Mat<F>]) -> bool {
        let diff: Vec<F> = g
            .iter()
            .zip(&self.particular)
            .flat_map(|(a, p)| (a - p).entries().to_vec())
            .collect();
        let cols: Vec<Vec<F>> = self
            .basis
            .iter()
            .map(|b| b.iter().flat_map(|m| m.entries().to_vec()).collect())
            .collect();
        let a = Mat::from_fn(diff.len(), cols.len(), |r, c| cols[c][r].clone());
        a.solve_right(&Mat::column(diff)).is_ok()
    }
}

/// Intertwiners from s to t with the framing fixed to the identity; None
/// when there are none.
pub fn hom_space<F: Field>(s: &FramedPoint<F>, t: &FramedPoint<F>) -> Result<Option<HomSpace<F>>> {
    if s.dims() != t.dims() {
        return Err(Error::ShapeMismatch("points have different dimensions".into()));
    }
    let q = s.quiver();
    let v = &s.dims().v;
    let d = &s.dims().d;
    let offsets: Vec<usize> = v
        .iter()
        .scan(0, |acc, &x| {
            let o = *acc;
            *acc += x * x;
            Some(o)
        })
        .collect();
    let unknowns: usize = v.iter().map(|x| x * x).sum();
    let g_idx = |i: usize, r: usize, c: usize| offsets[i] + r * v[i] + c;
    let mut rows: Vec<(Vec<(usize, F)>, F)> = Vec::new();
    for (h, arrow) in q.arrows().iter().enumerate() {
        let (i1, i0) = (arrow.to, arrow.from);
        let (bs, bt) = (&s.b[h], &t.b[h]);
        for r in 0..v[i1] {
            for c in 0..v[i0] {
                let mut eq = Vec::new();
                for k in 0..v[i1] {
                    eq.push((g_idx(i1, r, k), bs[(k, c)].clone()));
                }
                for k in 0..v[i0] {
                    eq.push((g_idx(i0, k, c), -bt[(r, k)].clone()));
                }
                rows.push((eq, F::zero()));
            }
        }
    }
    for i in 0..q.n() {
        for r in 0..v[i] {
            for c in 0..d[i] {
                let eq = (0..v[i])
                    .map(|k| (g_idx(i, r, k), s.gamma[i][(k, c)].clone()))
                    .collect();
                rows.push((eq, t.gamma[i][(r, c)].clone()));
            }
        }
        for r in 0..d[i] {
            for c in 0..v[i] {
                let eq = (0..v[i])
                    .map(|k| (g_idx(i, k, c), t.delta[i][(r, k)].clone()))
                    .collect();
                rows.push((eq, s.delta[i][(r, c)].clone()));
            }
        }
    }
    let mut a: Mat<F> = Mat::zeros(rows.len(), unknowns);
    let mut rhs = Mat::zeros(rows.len(), 1);
    for (r, (eq, val)) in rows.into_iter().enumerate() {
        for (col, coeff) in eq {
            a[(r, col)] = a[(r, col)].clone() + coeff;
        }
        rhs[(r, 0)] = val;
    }
    let sol = match a.solve_right(&rhs) {
        Ok(sol) => sol,
        Err(Error::NoSolution) => return Ok(None),
        Err(e) => return Err(e),
    };
    let unpack = |x: Vec<F>| -> Vec<Mat<F>> {
        (0..q.n())
            .map(|i| Mat::from_fn(v[i], v[i], |r, c| x[g_idx(i, r, c)].clone()))
            .collect()
    };
    Ok(Some(HomSpace {
        particular: unpack(sol.particular.col(0)),
        basis: (0..sol.kernel.cols())
            .map(|j| unpack(sol.kernel.col(j)))
            .collect(),
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitVerdict<F> {
    /// Invertible g with g·s = t.
    Yes(GroupElement<F>),
    No(String),
    Unknown,
}

impl<F> OrbitVerdict<F> {
    pub fn is_yes(&self) -> bool {
        matches!(self, OrbitVerdict::Yes(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            OrbitVerdict::Yes(_) => "Yes",
            OrbitVerdict::No(_) => "No",
            OrbitVerdict::Unknown => "Unknown",
        }
    }
}

impl<F> fmt::Display for OrbitVerdict<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitVerdict::No(reason) => write!(f, "No ({reason})"),
            other => write!(f, "{}", other.label()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitOptions {
    /// Random points of the intertwiner space tried for invertibility.
    pub trials: usize,
    pub seed: u64,
    /// Maximal path length of the invariants compared.
    pub invariant_len: usize,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions {
            trials: 20,
            seed: 0,
            invariant_len: 4,
        }
    }
}

fn invertible_tuple<F: Field>(g: &[Mat<F>]) -> bool {
    g.iter().all(Mat::is_invertible)
}

/// Decide whether t lies in the G_v-orbit of s.
pub fn orbit_equivalent<F: Field>(
    s: &FramedPoint<F>,
    t: &FramedPoint<F>,
    opts: OrbitOptions,
) -> Result<OrbitVerdict<F>> {
    if s.dims() != t.dims() {
        return Ok(OrbitVerdict::No("different dimension vectors".into()));
    }
    let yes = |g: Vec<Mat<F>>| OrbitVerdict::Yes(GroupElement { g, k: None });
    let Some(st) = hom_space(s, t)? else {
        return Ok(OrbitVerdict::No("no intertwiner from s to t".into()));
    };
    if invertible_tuple(&st.particular) {
        return Ok(yes(st.particular));
    }
    if st.dimension() == 0 {
        return Ok(OrbitVerdict::No("the unique intertwiner is singular".into()));
    }
    match hom_space(t, s)? {
        None => return Ok(OrbitVerdict::No("no intertwiner from t to s".into())),
        Some(ts) if ts.dimension() != st.dimension() => {
            return Ok(OrbitVerdict::No(format!(
                "intertwiner spaces have dimensions {} and {}",
                st.dimension(),
                ts.dimension()
            )))
        }
        Some(_) => {}
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.trials {
        let coeffs: Vec<F> = (0..st.dimension()).map(|_| F::sample(&mut rng, 10)).collect();
        let g = st.point(&coeffs);
        if invertible_tuple(&g) {
            return Ok(yes(g));
        }
    }
    let (is, it) = (
        lusztig_invariants(s, opts.invariant_len),
        lusztig_invariants(t, opts.invariant_len),
    );
    if let Some((a, _)) = is.iter().zip(&it).find(|(a, b)| a.value != b.value) {
        return Ok(OrbitVerdict::No(format!("invariant {} differs", a.descriptor)));
    }
    Ok(OrbitVerdict::Unknown)
}

/// Check a claimed witness: g invertible and g·s = t.
pub fn verify_witness<F: Field>(
    g: &GroupElement<F>,
    s: &FramedPoint<F>,
    t: &FramedPoint<F>,
) -> bool {
    group_act(g, s).map(|gs| gs == *t).unwrap_or(false)
}

/// A uniformly random coefficient vector, for callers sampling hom spaces.
pub fn random_coefficients<F: Field, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<F> {
    (0..n).map(|_| F::sample(rng, 10)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::rep::DimData;
    use std::sync::Arc;

    fn a1_point(g: &[i64], d: &[i64]) -> FramedPoint<Q> {
        let dd = g.len();
        let q = Arc::new(Quiver::dynkin_a(1));
        let mut s = FramedPoint::zero(q, DimData::new(vec![dd], vec![1])).unwrap();
        s.gamma[0] = Mat::from_i64(&[g]);
        let rows: Vec<&[i64]> = d.chunks(1).collect();
        s.delta[0] = Mat::from_i64(&rows);
        s
    }

    #[test]
    fn parse_and_print() {
        let q = Quiver::dynkin_a(3);
        let p = PathExpr::parse(&q, "h2.h1").unwrap();
        assert_eq!((p.source(), p.target(), p.len()), (0, 2, 2));
        assert_eq!(p.to_literal(&q), "h2.h1");
        assert!(PathExpr::parse(&q, "h1.h2").is_err());
        let e = PathExpr::parse(&q, "@2").unwrap();
        assert!(e.is_empty() && e.source() == 1);
        let b = BPathExpr::parse(&q, "[3^1 h2.h1 1^2]").unwrap();
        assert_eq!(b.len(), 5);
        assert_eq!(b.to_literal(&q), "[3^1 h2.h1 1^2]");
        assert!(BPathExpr::parse(&q, "[2^1 h2.h1 1^2]").is_err());
        assert_eq!(BPathExpr::parse(&q, "[@2]").unwrap(), BPathExpr::empty(1));
    }

    #[test]
    fn evaluation_examples() {
        let s = a1_point(&[1, 0], &[1, 0]);
        let e = PathExpr::empty(0);
        assert_eq!(e.evaluate(&s).unwrap(), Mat::identity(1));
        assert!(e.evaluate_with(&s, EmptyPathConvention::Zero).unwrap().is_zero());
        let q = s.quiver().clone();
        let b = BPathExpr::parse(&q, "[1^2]").unwrap();
        assert_eq!(b.evaluate(&s).unwrap(), Mat::from_i64(&[&[1]]));

        let q = Arc::new(Quiver::dynkin_a(2));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let s: FramedPoint<Q> =
            FramedPoint::random(q.clone(), DimData::new(vec![1, 1], vec![2, 3]), &mut rng, 5)
                .unwrap();
        let h = PathExpr::parse(&q, "h1").unwrap();
        assert_eq!(h.evaluate(&s).unwrap(), s.b[h.arrows()[0]]);
        let hb = PathExpr::parse(&q, "h1b").unwrap();
        let loop2 = PathExpr::parse(&q, "h1b.h1").unwrap();
        assert_eq!(loop2, hb.compose(&h).unwrap());
        assert_eq!(
            loop2.evaluate(&s).unwrap(),
            &hb.evaluate(&s).unwrap() * &h.evaluate(&s).unwrap()
        );
        let bp = BPathExpr::parse(&q, "[1^1 h1b 2^0 h1 1^1]").unwrap();
        let gd = &s.gamma[0] * &s.delta[0];
        assert_eq!(
            bp.evaluate(&s).unwrap(),
            &(&gd * &loop2.evaluate(&s).unwrap()) * &gd
        );
    }

    #[test]
    fn invariant_examples() {
        let s = a1_point(&[1, 0], &[1, 0]);
        let inv = lusztig_invariants(&s, 3);
        let vals: Vec<Q> = inv.iter().map(|x| x.value.clone()).collect();
        assert_eq!(vals, vec![Q::from(1), Q::from(0), Q::from(0), Q::from(0)]);
        assert_eq!(inv[0].descriptor, "entry(@1)[0,0]");
        let z = FramedPoint::<Q>::zero(s.quiver_arc().clone(), s.dims().clone()).unwrap();
        assert!(lusztig_invariants(&z, 2).iter().all(|x| x.value.is_zero()));
    }

    #[test]
    fn hom_space_examples() {
        let q = Arc::new(Quiver::dynkin_a(2));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let dims = DimData::new(vec![1, 0], vec![1, 2]);
        let s: FramedPoint<Q> = FramedPoint::random(q, dims.clone(), &mut rng, 5).unwrap();
        let hs = hom_space(&s, &s).unwrap().unwrap();
        assert!(hs.contains(&GroupElement::<Q>::identity(&dims).g));
        let g = GroupElement::random(&dims, &mut rng, 5, false);
        let gs = group_act(&g, &s).unwrap();
        assert!(hom_space(&s, &gs).unwrap().unwrap().contains(&g.g));
        match orbit_equivalent(&s, &gs, OrbitOptions::default()).unwrap() {
            OrbitVerdict::Yes(w) => assert!(verify_witness(&w, &s, &gs)),
            other => panic!("expected Yes, got {other}"),
        }
        assert!(orbit_equivalent(&s, &s, OrbitOptions::default()).unwrap().is_yes());

        let s = a1_point(&[1], &[0]);
        let t = a1_point(&[0], &[1]);
        let h = hom_space(&s, &t).unwrap().unwrap();
        assert_eq!(h.dimension(), 0);
        assert!(h.particular[0].is_zero());
        assert!(matches!(
            orbit_equivalent(&s, &t, OrbitOptions::default()).unwrap(),
            OrbitVerdict::No(_)
        ));
    }

    #[test]
    fn plus_subspace_fixpoint() {
        let s = a1_point(&[1, 0], &[1, 0]);
        assert_eq!(plus_subspaces(&s)[0].cols(), 1);
        let s = a1_point(&[0, 0], &[1, 0]);
        assert_eq!(plus_subspaces(&s)[0].cols(), 0);
    }
}
