//! Framed representations of a doubled quiver: points of S(d, v), the group
//! actions, the complex and real moment maps, and a sampler for the level
//! sets μ = λ·Id.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::field::{Conjugate, Field, Q};
use crate::linalg::Mat;
use crate::quiver::{Quiver, RootVec, WeightVec};

/// Framing dimensions d (sizes of the D_i) and dimensions v (sizes of the V_i).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DimData {
    pub d: Vec<usize>,
    pub v: Vec<usize>,
}

impl DimData {
    pub fn new(d: Vec<usize>, v: Vec<usize>) -> Self {
        assert_eq!(d.len(), v.len(), "d and v must have the same length");
        DimData { d, v }
    }

    /// Build from signed vectors, rejecting negative entries.
    pub fn from_signed(d: &[i64], v: &[i64]) -> Result<Self> {
        if d.len() != v.len() {
            return Err(Error::ShapeMismatch(format!(
                "d has {} entries, v has {}",
                d.len(),
                v.len()
            )));
        }
        let conv = |x: &[i64], name: &str| -> Result<Vec<usize>> {
            x.iter()
                .map(|&e| {
                    usize::try_from(e)
                        .map_err(|_| Error::RangeViolation(format!("{name} has entry {e} < 0")))
                })
                .collect()
        };
        Ok(DimData::new(conv(d, "d")?, conv(v, "v")?))
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }

    pub fn d_weight(&self) -> WeightVec<i64> {
        WeightVec(self.d.iter().map(|&x| x as i64).collect())
    }

    pub fn v_root(&self) -> RootVec {
        RootVec(self.v.iter().map(|&x| x as i64).collect())
    }

    /// dim S(d, v) = Σ_h v_{h1} v_{h0} + 2 Σ d_i v_i.
    pub fn space_dimension(&self, q: &Quiver) -> usize {
        let arrows: usize = q.arrows().iter().map(|h| self.v[h.to] * self.v[h.from]).sum();
        let framing: usize = self.d.iter().zip(&self.v).map(|(d, v)| 2 * d * v).sum();
        arrows + framing
    }

    fn check(&self, q: &Quiver) -> Result<()> {
        if self.n() != q.n() {
            return Err(Error::ShapeMismatch(format!(
                "dimension vectors have length {}, quiver has {} vertices",
                self.n(),
                q.n()
            )));
        }
        Ok(())
    }
}

/// A point (B, γ, δ) of S(d, v). `b` is indexed by arrow position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedPoint<F> {
    quiver: Arc<Quiver>,
    dims: DimData,
    pub b: Vec<Mat<F>>,
    pub gamma: Vec<Mat<F>>,
    pub delta: Vec<Mat<F>>,
}

impl<F: Field> FramedPoint<F> {
    pub fn new(
        quiver: Arc<Quiver>,
        dims: DimData,
        b: Vec<Mat<F>>,
        gamma: Vec<Mat<F>>,
        delta: Vec<Mat<F>>,
    ) -> Result<Self> {
        let s = FramedPoint {
            quiver,
            dims,
            b,
            gamma,
            delta,
        };
        s.check_shapes()?;
        Ok(s)
    }

    pub fn zero(quiver: Arc<Quiver>, dims: DimData) -> Result<Self> {
        dims.check(&quiver)?;
        let b = quiver
            .arrows()
            .iter()
            .map(|h| Mat::zeros(dims.v[h.to], dims.v[h.from]))
            .collect();
        let gamma = (0..dims.n()).map(|i| Mat::zeros(dims.v[i], dims.d[i])).collect();
        let delta = (0..dims.n()).map(|i| Mat::zeros(dims.d[i], dims.v[i])).collect();
        Ok(FramedPoint {
            quiver,
            dims,
            b,
            gamma,
            delta,
        })
    }

    /// Every entry drawn independently with the given height.
    pub fn random<R: Rng + ?Sized>(
        quiver: Arc<Quiver>,
        dims: DimData,
        rng: &mut R,
        height: u32,
    ) -> Result<Self> {
        let mut s = Self::zero(quiver, dims)?;
        for m in s.b.iter_mut().chain(&mut s.gamma).chain(&mut s.delta) {
            *m = Mat::random(m.rows(), m.cols(), rng, height);
        }
        Ok(s)
    }

    fn check_shapes(&self) -> Result<()> {
        let q = &self.quiver;
        self.dims.check(q)?;
        let (d, v) = (&self.dims.d, &self.dims.v);
        let bad = |what: String| Err(Error::ShapeMismatch(what));
        if self.b.len() != q.arrows().len() {
            return bad(format!("{} arrow maps for {} arrows", self.b.len(), q.arrows().len()));
        }
        for (h, m) in q.arrows().iter().zip(&self.b) {
            if m.shape() != (v[h.to], v[h.from]) {
                return bad(format!("B_{} has shape {:?}", h.id, m.shape()));
            }
        }
        if self.gamma.len() != q.n() || self.delta.len() != q.n() {
            return bad("framing maps do not match the vertex count".into());
        }
        for i in 0..q.n() {
            if self.gamma[i].shape() != (v[i], d[i]) {
                return bad(format!("gamma at vertex {i} has shape {:?}", self.gamma[i].shape()));
            }
            if self.delta[i].shape() != (d[i], v[i]) {
                return bad(format!("delta at vertex {i} has shape {:?}", self.delta[i].shape()));
            }
        }
        Ok(())
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn quiver_arc(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dims(&self) -> &DimData {
        &self.dims
    }

    pub fn arrow_map(&self, id: &str) -> Result<&Mat<F>> {
        Ok(&self.b[self.quiver.arrow_index(id)?])
    }

    /// Number of scalar coordinates.
    pub fn entry_count(&self) -> usize {
        self.b
            .iter()
            .chain(&self.gamma)
            .chain(&self.delta)
            .map(|m| m.rows() * m.cols())
            .sum()
    }

    pub fn to_json(&self) -> Value {
        let mut b = Map::new();
        for (h, m) in self.quiver.arrows().iter().zip(&self.b) {
            b.insert(h.id.clone(), m.to_json());
        }
        let mut obj = Map::new();
        obj.insert("d".into(), Value::from(self.dims.d.clone()));
        obj.insert("v".into(), Value::from(self.dims.v.clone()));
        obj.insert("B".into(), Value::Object(b));
        obj.insert(
            "gamma".into(),
            Value::Array(self.gamma.iter().map(Mat::to_json).collect()),
        );
        obj.insert(
            "delta".into(),
            Value::Array(self.delta.iter().map(Mat::to_json).collect()),
        );
        obj.insert("field".into(), Value::String(F::tag()));
        Value::Object(obj)
    }

    pub fn from_json(quiver: Arc<Quiver>, value: &Value) -> Result<Self> {
        let field = value
            .get("field")
            .and_then(Value::as_str)
            .unwrap_or("Q")
            .to_string();
        if field != F::tag() {
            return Err(Error::WrongField {
                expected: F::tag(),
                found: field,
            });
        }
        let dims = DimData::new(usize_list(value, "d")?, usize_list(value, "v")?);
        dims.check(&quiver)?;
        let bobj = value
            .get("B")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("point needs a \"B\" object".into()))?;
        for key in bobj.keys() {
            quiver.arrow_index(key)?;
        }
        let mut b = Vec::new();
        for h in quiver.arrows() {
            let (r, c) = (dims.v[h.to], dims.v[h.from]);
            b.push(match bobj.get(&h.id) {
                Some(m) => Mat::from_json(m, r, c)?,
                None if r * c == 0 => Mat::zeros(r, c),
                None => return Err(Error::Parse(format!("missing map for arrow {}", h.id))),
            });
        }
        let blocks = |key: &str, shape: &dyn Fn(usize) -> (usize, usize)| -> Result<Vec<Mat<F>>> {
            let arr = value
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("point needs a \"{key}\" array")))?;
            if arr.len() != dims.n() {
                return Err(Error::ShapeMismatch(format!(
                    "\"{key}\" has {} blocks for {} vertices",
                    arr.len(),
                    dims.n()
                )));
            }
            arr.iter()
                .enumerate()
                .map(|(i, m)| {
                    let (r, c) = shape(i);
                    Mat::from_json(m, r, c)
                })
                .collect()
        };
        let gamma = blocks("gamma", &|i| (dims.v[i], dims.d[i]))?;
        let delta = blocks("delta", &|i| (dims.d[i], dims.v[i]))?;
        FramedPoint::new(quiver, dims.clone(), b, gamma, delta)
    }
}

fn usize_list(value: &Value, key: &str) -> Result<Vec<usize>> {
    value
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse(format!("point needs a \"{key}\" array")))?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|u| u as usize)
                .ok_or_else(|| Error::Parse(format!("\"{key}\" entries must be nonnegative integers")))
        })
        .collect()
}

/// One summand of T_i = D_i ⊕ ⨁_{h₁ = i} V_{h₀}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Summand {
    Framing,
    /// V_{h₀} for the arrow with this index.
    Arrow(usize),
}

/// a_i : V_i → T_i and b_i : T_i → V_i at one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexAB<F> {
    pub vertex: usize,
    pub layout: Vec<Summand>,
    /// Size of each summand, in layout order.
    pub sizes: Vec<usize>,
    pub a: Mat<F>,
    pub b: Mat<F>,
}

impl<F: Field> VertexAB<F> {
    pub fn t_dim(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Offset of each summand inside T_i.
    pub fn offsets(&self) -> Vec<usize> {
        self.sizes
            .iter()
            .scan(0, |acc, &s| {
                let o = *acc;
                *acc += s;
                Some(o)
            })
            .collect()
    }
}

/// a_i = [δ_i; B_{h̄}…] and b_i = [γ_i, ε(h)B_h…] over arrows with h₁ = i.
pub fn assemble_ab<F: Field>(s: &FramedPoint<F>, i: usize) -> VertexAB<F> {
    let q = s.quiver();
    let into = q.arrows_into(i);
    let mut layout = vec![Summand::Framing];
    let mut sizes = vec![s.dims.d[i]];
    let mut a_blocks = vec![&s.delta[i]];
    let mut b_parts = vec![s.gamma[i].clone()];
    for &h in &into {
        let arrow = q.arrow(h);
        layout.push(Summand::Arrow(h));
        sizes.push(s.dims.v[arrow.from]);
        a_blocks.push(&s.b[arrow.bar]);
        b_parts.push(s.b[h].scale(&F::from_i64(arrow.eps)));
    }
    let vi = s.dims.v[i];
    let a = Mat::vstack(vi, &a_blocks).expect("a_i blocks have v_i columns");
    let b = Mat::hstack(vi, &b_parts.iter().collect::<Vec<_>>()).expect("b_i blocks have v_i rows");
    VertexAB {
        vertex: i,
        layout,
        sizes,
        a,
        b,
    }
}

/// μ_i = Σ_{h₁ = i} ε(h) B_h B_{h̄} + γ_i δ_i.
pub fn moment_map<F: Field>(s: &FramedPoint<F>) -> Vec<Mat<F>> {
    let q = s.quiver();
    (0..q.n())
        .map(|i| {
            let mut mu = &s.gamma[i] * &s.delta[i];
            for h in q.arrows_into(i) {
                let arrow = q.arrow(h);
                let term = (&s.b[h] * &s.b[arrow.bar]).scale(&F::from_i64(arrow.eps));
                mu = &mu + &term;
            }
            mu
        })
        .collect()
}

/// μ_i computed as b_i a_i.
pub fn moment_map_via_ab<F: Field>(s: &FramedPoint<F>) -> Vec<Mat<F>> {
    (0..s.quiver().n())
        .map(|i| {
            let ab = assemble_ab(s, i);
            &ab.b * &ab.a
        })
        .collect()
}

/// μ_{I,i} = (i/2)(b_i b_i* − a_i* a_i).
pub fn moment_map_real<F: Conjugate>(s: &FramedPoint<F>) -> Vec<Mat<F>> {
    let half_i = F::imag_unit() * F::from_i64(2).inv().expect("2 is invertible");
    (0..s.quiver().n())
        .map(|i| {
            let ab = assemble_ab(s, i);
            let diff = &(&ab.b * &ab.b.adjoint()) - &(&ab.a.adjoint() * &ab.a);
            diff.scale(&half_i)
        })
        .collect()
}

/// μ(s) = λ·Id at every vertex.
pub fn in_level_set<F: Field>(s: &FramedPoint<F>, lam: &[F]) -> bool {
    moment_map(s)
        .iter()
        .zip(lam)
        .all(|(mu, l)| *mu == Mat::scalar(mu.rows(), l.clone()))
}

/// Deformation and stability parameters; `xi` is only carried along.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterPair<F> {
    pub m: WeightVec<i64>,
    pub lam: WeightVec<F>,
    pub xi: Option<WeightVec<Q>>,
}

/// An element of G_v, optionally with a GL(D) component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement<F> {
    pub g: Vec<Mat<F>>,
    pub k: Option<Vec<Mat<F>>>,
}

impl<F: Field> GroupElement<F> {
    pub fn identity(dims: &DimData) -> Self {
        GroupElement {
            g: dims.v.iter().map(|&v| Mat::identity(v)).collect(),
            k: None,
        }
    }

    /// Random invertible blocks (resampled until invertible).
    pub fn random<R: Rng + ?Sized>(dims: &DimData, rng: &mut R, height: u32, with_d: bool) -> Self {
        let draw = |n: usize, rng: &mut R| loop {
            let m = Mat::random(n, n, rng, height);
            if m.is_invertible() {
                break m;
            }
        };
        let g = dims.v.iter().map(|&v| draw(v, rng)).collect();
        let k = with_d.then(|| dims.d.iter().map(|&d| draw(d, rng)).collect());
        GroupElement { g, k }
    }

    /// Per-vertex inverses, or the first singular block.
    pub fn inverse(&self) -> Result<Self> {
        let inv = |blocks: &[Mat<F>]| -> Result<Vec<Mat<F>>> {
            blocks
                .iter()
                .enumerate()
                .map(|(i, m)| m.inverse().ok_or(Error::SingularBlock(i)))
                .collect()
        };
        Ok(GroupElement {
            g: inv(&self.g)?,
            k: self.k.as_deref().map(inv).transpose()?,
        })
    }
}

/// g·(B, γ, δ) = (g_{h₁} B_h g_{h₀}⁻¹, g γ k⁻¹, k δ g⁻¹).
pub fn group_act<F: Field>(g: &GroupElement<F>, s: &FramedPoint<F>) -> Result<FramedPoint<F>> {
    let q = s.quiver();
    if g.g.len() != q.n() || g.g.iter().zip(&s.dims.v).any(|(m, &v)| m.shape() != (v, v)) {
        return Err(Error::ShapeMismatch("group element does not match v".into()));
    }
    if let Some(k) = &g.k {
        if k.len() != q.n() || k.iter().zip(&s.dims.d).any(|(m, &d)| m.shape() != (d, d)) {
            return Err(Error::ShapeMismatch("GL(D) component does not match d".into()));
        }
    }
    let inv = g.inverse()?;
    let b = q
        .arrows()
        .iter()
        .zip(&s.b)
        .map(|(h, m)| &(&g.g[h.to] * m) * &inv.g[h.from])
        .collect();
    let mut gamma: Vec<Mat<F>> = (0..q.n()).map(|i| &g.g[i] * &s.gamma[i]).collect();
    let mut delta: Vec<Mat<F>> = (0..q.n()).map(|i| &s.delta[i] * &inv.g[i]).collect();
    if let (Some(k), Some(kinv)) = (&g.k, &inv.k) {
        for i in 0..q.n() {
            gamma[i] = &gamma[i] * &kinv[i];
            delta[i] = &k[i] * &delta[i];
        }
    }
    FramedPoint::new(s.quiver.clone(), s.dims.clone(), b, gamma, delta)
}

/// χ_m(g) = Π det(g_i)^{m_i}.
pub fn chi<F: Field>(m: &WeightVec<i64>, g: &GroupElement<F>) -> Result<F> {
    let mut acc = F::one();
    for (i, (gi, &mi)) in g.g.iter().zip(&m.0).enumerate() {
        let det = gi.det()?;
        acc = acc * det.pow_i64(mi).ok_or(Error::SingularBlock(i))?;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleOptions {
    /// Bound on numerators and denominators of random rationals.
    pub height: u32,
    /// Number of fresh Ω-halves tried before giving up.
    pub retries: usize,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            height: 10,
            retries: 20,
        }
    }
}

/// Position of an unknown block inside the flattened unknown vector.
enum Unknown {
    Arrow(usize),
    Delta(usize),
}

/// Draw a point of Λ_λ(d, v): random B_Ω and γ, then a random solution of
/// the (linear) moment equations in B_{Ω̄} and δ.
pub fn sample_fiber<F: Field, R: Rng + ?Sized>(
    quiver: Arc<Quiver>,
    dims: DimData,
    lam: &[F],
    rng: &mut R,
    opts: SampleOptions,
) -> Result<FramedPoint<F>> {
    dims.check(&quiver)?;
    if lam.len() != dims.n() {
        return Err(Error::ShapeMismatch(format!(
            "lambda has {} entries for {} vertices",
            lam.len(),
            dims.n()
        )));
    }
    let q = quiver.clone();
    let v = &dims.v;
    let mut blocks = Vec::new();
    let mut offset = BTreeMap::new();
    let mut total = 0;
    for (k, h) in q.arrows().iter().enumerate() {
        if h.eps == -1 {
            offset.insert(("B", k), total);
            blocks.push(Unknown::Arrow(k));
            total += v[h.to] * v[h.from];
        }
    }
    for i in 0..q.n() {
        offset.insert(("D", i), total);
        blocks.push(Unknown::Delta(i));
        total += dims.d[i] * v[i];
    }
    let eq_offsets: Vec<usize> = v
        .iter()
        .scan(0, |acc, &x| {
            let o = *acc;
            *acc += x * x;
            Some(o)
        })
        .collect();
    let n_eq: usize = v.iter().map(|x| x * x).sum();
    let mut rhs = Mat::zeros(n_eq, 1);
    for i in 0..q.n() {
        for r in 0..v[i] {
            rhs[(eq_offsets[i] + r * v[i] + r, 0)] = lam[i].clone();
        }
    }

    for _ in 0..opts.retries {
        let mut s: FramedPoint<F> = FramedPoint::zero(quiver.clone(), dims.clone())?;
        for k in q.omega() {
            let h = q.arrow(k);
            s.b[k] = Mat::random(v[h.to], v[h.from], rng, opts.height);
        }
        for i in 0..q.n() {
            s.gamma[i] = Mat::random(v[i], dims.d[i], rng, opts.height);
        }
        let mut sys = Mat::zeros(n_eq, total);
        for i in 0..q.n() {
            let vi = v[i];
            let base = eq_offsets[i];
            for hk in q.arrows_into(i) {
                let h = q.arrow(hk);
                if h.eps == 1 {
                    // B_h · X with X = B_{h̄} of shape v_{h0} × v_i
                    let known = &s.b[hk];
                    let off = offset[&("B", h.bar)];
                    let w = v[h.from];
                    for r in 0..vi {
                        for c in 0..vi {
                            for kk in 0..w {
                                sys[(base + r * vi + c, off + kk * vi + c)] = known[(r, kk)].clone();
                            }
                        }
                    }
                } else {
                    // −X · B_{h̄} with X = B_h of shape v_i × v_{h0}
                    let known = &s.b[h.bar];
                    let off = offset[&("B", hk)];
                    let w = v[h.from];
                    for r in 0..vi {
                        for c in 0..vi {
                            for kk in 0..w {
                                sys[(base + r * vi + c, off + r * w + kk)] = -known[(kk, c)].clone();
                            }
                        }
                    }
                }
            }
            // γ_i · δ_i with δ_i of shape d_i × v_i
            let off = offset[&("D", i)];
            for r in 0..vi {
                for c in 0..vi {
                    for kk in 0..dims.d[i] {
                        sys[(base + r * vi + c, off + kk * vi + c)] = s.gamma[i][(r, kk)].clone();
                    }
                }
            }
        }
        let sol = match sys.solve_right(&rhs) {
            Ok(sol) => sol,
            Err(Error::NoSolution) => continue,
            Err(e) => return Err(e),
        };
        let mut x = sol.particular;
        for j in 0..sol.kernel.cols() {
            let t = F::sample(rng, opts.height);
            for r in 0..total {
                x[(r, 0)] = x[(r, 0)].clone() + t.clone() * sol.kernel[(r, j)].clone();
            }
        }
        for blk in &blocks {
            let (rows, cols, off) = match *blk {
                Unknown::Arrow(k) => {
                    let h = q.arrow(k);
                    (v[h.to], v[h.from], offset[&("B", k)])
                }
                Unknown::Delta(i) => (dims.d[i], v[i], offset[&("D", i)]),
            };
            let m = Mat::from_fn(rows, cols, |r, c| x[(off + r * cols + c, 0)].clone());
            match *blk {
                Unknown::Arrow(k) => s.b[k] = m,
                Unknown::Delta(i) => s.delta[i] = m,
            }
        }
        debug_assert!(in_level_set(&s, lam));
        return Ok(s);
    }
    Err(Error::FiberSampleFailed {
        attempts: opts.retries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::QI;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn a1_point(g: [i64; 2], d: [i64; 2]) -> FramedPoint<Q> {
        let q = Arc::new(Quiver::dynkin_a(1));
        let mut s = FramedPoint::zero(q, DimData::new(vec![2], vec![1])).unwrap();
        s.gamma[0] = Mat::from_i64(&[&g]);
        s.delta[0] = Mat::from_i64(&[&[d[0]], &[d[1]]]);
        s
    }

    #[test]
    fn ab_layout() {
        let q = Arc::new(Quiver::dynkin_a(2));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s: FramedPoint<Q> =
            FramedPoint::random(q.clone(), DimData::new(vec![1, 2], vec![2, 1]), &mut rng, 5).unwrap();
        let h = q.arrow_index("h1").unwrap();
        let hb = q.arrow_index("h1b").unwrap();
        let ab2 = assemble_ab(&s, 1);
        assert_eq!(ab2.layout, vec![Summand::Framing, Summand::Arrow(h)]);
        assert_eq!(ab2.a, Mat::vstack(1, &[&s.delta[1], &s.b[hb]]).unwrap());
        assert_eq!(ab2.b, Mat::hstack(1, &[&s.gamma[1], &s.b[h]]).unwrap());
        let ab1 = assemble_ab(&s, 0);
        assert_eq!(ab1.a, Mat::vstack(2, &[&s.delta[0], &s.b[h]]).unwrap());
        assert_eq!(ab1.b, Mat::hstack(2, &[&s.gamma[0], &-&s.b[hb]]).unwrap());
        assert_eq!(moment_map(&s), moment_map_via_ab(&s));
        assert_eq!(s.entry_count(), s.dims().space_dimension(s.quiver()));
    }

    #[test]
    fn a1_moment_maps() {
        let s = a1_point([1, 0], [1, 0]);
        assert_eq!(moment_map(&s)[0], Mat::from_i64(&[&[1]]));
        let z = FramedPoint::<Q>::zero(s.quiver_arc().clone(), s.dims().clone()).unwrap();
        assert!(moment_map(&z)[0].is_zero());

        let si = FramedPoint::new(
            s.quiver_arc().clone(),
            s.dims().clone(),
            vec![],
            vec![s.gamma[0].map(|x| QI::from(x.clone()))],
            vec![s.delta[0].map(|x| QI::from(x.clone()))],
        )
        .unwrap();
        assert!(moment_map_real(&si)[0].is_zero());
        let mut doubled = si.clone();
        doubled.gamma[0] = doubled.gamma[0].scale(&QI::from_i64(2));
        let expected = QI::new(Q::zero(), Q::new(3, 2));
        assert_eq!(moment_map_real(&doubled)[0], Mat::scalar(1, expected));
    }

    #[test]
    fn scalar_group_action() {
        let s = a1_point([1, 2], [3, 4]);
        let t = Q::from(5);
        let g = GroupElement {
            g: vec![Mat::scalar(1, t.clone())],
            k: None,
        };
        let gs = group_act(&g, &s).unwrap();
        assert_eq!(gs.gamma[0], s.gamma[0].scale(&t));
        assert_eq!(gs.delta[0], s.delta[0].scale(&t.inv().unwrap()));
        assert_eq!(moment_map(&gs), moment_map(&s));
        let sing = GroupElement {
            g: vec![Mat::zeros(1, 1)],
            k: None,
        };
        assert_eq!(group_act(&sing, &s), Err(Error::SingularBlock(0)));
    }

    #[test]
    fn actions_commute() {
        let q = Arc::new(Quiver::dynkin_a(2));
        let dims = DimData::new(vec![2, 1], vec![1, 2]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s: FramedPoint<Q> = FramedPoint::random(q, dims.clone(), &mut rng, 5).unwrap();
        let full = GroupElement::random(&dims, &mut rng, 5, true);
        let gv = GroupElement {
            g: full.g.clone(),
            k: None,
        };
        let gd = GroupElement {
            g: GroupElement::<Q>::identity(&dims).g,
            k: full.k.clone(),
        };
        let one = group_act(&gd, &group_act(&gv, &s).unwrap()).unwrap();
        let two = group_act(&gv, &group_act(&gd, &s).unwrap()).unwrap();
        assert_eq!(one, two);
        assert_eq!(one, group_act(&full, &s).unwrap());
    }

    #[test]
    fn sampler_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let a1 = Arc::new(Quiver::dynkin_a(1));
        let err = sample_fiber(
            a1.clone(),
            DimData::new(vec![0], vec![1]),
            &[Q::from(1)],
            &mut rng,
            SampleOptions::default(),
        );
        assert_eq!(err, Err(Error::FiberSampleFailed { attempts: 20 }));
        let s = sample_fiber(
            a1,
            DimData::new(vec![2], vec![1]),
            &[Q::from(1)],
            &mut rng,
            SampleOptions::default(),
        )
        .unwrap();
        assert_eq!(&s.gamma[0] * &s.delta[0], Mat::from_i64(&[&[1]]));
        let a2 = Arc::new(Quiver::dynkin_a(2));
        let s = sample_fiber(
            a2,
            DimData::new(vec![1, 1], vec![1, 1]),
            &[Q::zero(), Q::zero()],
            &mut rng,
            SampleOptions::default(),
        )
        .unwrap();
        assert!(moment_map(&s).iter().all(Mat::is_zero));
    }

    #[test]
    fn point_json_round_trip() {
        let q = Arc::new(Quiver::dynkin_a(3));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let s: FramedPoint<Q> =
            FramedPoint::random(q.clone(), DimData::new(vec![1, 0, 2], vec![2, 1, 1]), &mut rng, 7)
                .unwrap();
        let back = FramedPoint::<Q>::from_json(q.clone(), &s.to_json()).unwrap();
        assert_eq!(back, s);
        assert!(matches!(
            FramedPoint::<QI>::from_json(q, &s.to_json()),
            Err(Error::WrongField { .. })
        ));
    }
}
