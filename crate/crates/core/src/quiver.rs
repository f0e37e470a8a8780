//! Doubled quivers, Cartan data and the Weyl group actions on weights, roots
//! and dimension vectors.
//!
//! Vertices are addressed by their position `0..n` in [`Quiver::vertices`];
//! the user-facing vertex labels only appear in JSON and on the command line.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::linalg::Mat;

/// One arrow of the doubled quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    /// Source vertex index (h₀).
    pub from: usize,
    /// Target vertex index (h₁).
    pub to: usize,
    /// +1 on Ω, −1 on Ω̄.
    pub eps: i64,
    /// Index of the reversed arrow h̄.
    pub bar: usize,
}

/// A doubled quiver with arrows kept in ascending id order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<i64>,
    arrows: Vec<Arrow>,
}

#[derive(Serialize, Deserialize)]
struct ArrowJson {
    id: String,
    from: i64,
    to: i64,
    eps: i64,
    bar: String,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: Vec<i64>,
    arrows: Vec<ArrowJson>,
}

impl Quiver {
    /// Validate and build a quiver from labelled arrows
    /// `(id, from label, to label, eps, bar id)`.
    pub fn new(vertices: Vec<i64>, arrows: Vec<(String, i64, i64, i64, String)>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidQuiver(msg));
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(*v) {
                return bad(format!("duplicate vertex {v}"));
            }
        }
        let vindex: HashMap<i64, usize> =
            vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut arrows = arrows;
        arrows.sort_by(|a, b| a.0.cmp(&b.0));
        let aindex: HashMap<&str, usize> = arrows
            .iter()
            .enumerate()
            .map(|(k, a)| (a.0.as_str(), k))
            .collect();
        if aindex.len() != arrows.len() {
            return bad("duplicate arrow id".into());
        }
        let mut built = Vec::with_capacity(arrows.len());
        for (id, from, to, eps, bar) in &arrows {
            let (Some(&f), Some(&t)) = (vindex.get(from), vindex.get(to)) else {
                return bad(format!("arrow {id} uses an unknown vertex"));
            };
            if f == t {
                return bad(format!("arrow {id} is a loop"));
            }
            if *eps != 1 && *eps != -1 {
                return bad(format!("arrow {id} has eps {eps}"));
            }
            let Some(&b) = aindex.get(bar.as_str()) else {
                return bad(format!("arrow {id} has unknown bar {bar}"));
            };
            built.push(Arrow {
                id: id.clone(),
                from: f,
                to: t,
                eps: *eps,
                bar: b,
            });
        }
        for (k, h) in built.iter().enumerate() {
            let hb = &built[h.bar];
            if h.bar == k || hb.bar != k {
                return bad(format!("bar is not a fixed-point-free involution at {}", h.id));
            }
            if hb.from != h.to || hb.to != h.from {
                return bad(format!("{} and its bar are not reversed", h.id));
            }
            if hb.eps != -h.eps {
                return bad(format!("{} and its bar have equal eps", h.id));
            }
        }
        Ok(Quiver {
            vertices,
            arrows: built,
        })
    }

    /// Vertices labelled `1..=n`; each edge `(a, b)` (1-based) becomes the Ω
    /// arrow `h{k}: a → b` and its reverse `h{k}b`.
    pub fn from_edges(n: usize, edges: &[(i64, i64)]) -> Result<Self> {
        let mut arrows = Vec::new();
        for (k, &(a, b)) in edges.iter().enumerate() {
            let id = format!("h{}", k + 1);
            let bar = format!("{id}b");
            arrows.push((id.clone(), a, b, 1, bar.clone()));
            arrows.push((bar, b, a, -1, id));
        }
        Quiver::new((1..=n as i64).collect(), arrows)
    }

    pub fn dynkin_a(n: usize) -> Self {
        let edges: Vec<(i64, i64)> = (1..n as i64).map(|k| (k, k + 1)).collect();
        Quiver::from_edges(n, &edges).expect("type A quiver")
    }

    /// Type D_n (n ≥ 4): a chain 1–…–(n−1) with vertex n attached to n−2.
    pub fn dynkin_d(n: usize) -> Self {
        assert!(n >= 4, "type D needs at least 4 vertices");
        let n64 = n as i64;
        let mut edges: Vec<(i64, i64)> = (1..n64 - 1).map(|k| (k, k + 1)).collect();
        edges.push((n64 - 2, n64));
        Quiver::from_edges(n, &edges).expect("type D quiver")
    }

    /// Two vertices joined by two edges.
    pub fn kronecker() -> Self {
        Quiver::from_edges(2, &[(1, 2), (1, 2)]).expect("Kronecker quiver")
    }

    /// Cycle on n ≥ 3 vertices (affine type A).
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let n64 = n as i64;
        let edges: Vec<(i64, i64)> = (1..=n64).map(|k| (k, k % n64 + 1)).collect();
        Quiver::from_edges(n, &edges).expect("cycle quiver")
    }

    /// Disjoint union; vertices of `other` are relabelled after those of
    /// `self` and its arrow ids get a `'` suffix.
    pub fn disjoint_union(&self, other: &Quiver) -> Self {
        let shift = self.vertices.iter().copied().max().unwrap_or(0);
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().map(|v| v + shift));
        let mut arrows = self.labelled_arrows();
        for (id, f, t, e, b) in other.labelled_arrows() {
            arrows.push((format!("{id}'"), f + shift, t + shift, e, format!("{b}'")));
        }
        Quiver::new(vertices, arrows).expect("disjoint union of valid quivers")
    }

    fn labelled_arrows(&self) -> Vec<(String, i64, i64, i64, String)> {
        self.arrows
            .iter()
            .map(|h| {
                (
                    h.id.clone(),
                    self.vertices[h.from],
                    self.vertices[h.to],
                    h.eps,
                    self.arrows[h.bar].id.clone(),
                )
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[i64] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, k: usize) -> &Arrow {
        &self.arrows[k]
    }

    pub fn vertex_index(&self, label: i64) -> Result<usize> {
        self.vertices
            .iter()
            .position(|&v| v == label)
            .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {label}")))
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize> {
        self.arrows
            .binary_search_by(|h| h.id.as_str().cmp(id))
            .map_err(|_| Error::InvalidQuiver(format!("unknown arrow {id}")))
    }

    /// Indices of arrows in Ω.
    pub fn omega(&self) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&k| self.arrows[k].eps == 1)
            .collect()
    }

    /// Arrows with h₁ = i, in canonical order.
    pub fn arrows_into(&self, i: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&k| self.arrows[k].to == i)
            .collect()
    }

    /// Arrows with h₀ = i, in canonical order.
    pub fn arrows_out(&self, i: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&k| self.arrows[k].from == i)
            .collect()
    }

    pub fn cartan_data(&self) -> CartanData {
        let n = self.n();
        let mut adjacency = vec![vec![0i64; n]; n];
        for h in &self.arrows {
            adjacency[h.from][h.to] += 1;
        }
        CartanData::from_adjacency(adjacency)
    }

    pub fn to_json(&self) -> Value {
        let arrows = self
            .labelled_arrows()
            .into_iter()
            .map(|(id, from, to, eps, bar)| ArrowJson {
                id,
                from,
                to,
                eps,
                bar,
            })
            .collect();
        serde_json::to_value(QuiverJson {
            vertices: self.vertices.clone(),
            arrows,
        })
        .expect("quiver serializes")
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let raw: QuiverJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("quiver: {e}")))?;
        Quiver::new(
            raw.vertices,
            raw.arrows
                .into_iter()
                .map(|a| (a.id, a.from, a.to, a.eps, a.bar))
                .collect(),
        )
    }
}

/// Adjacency matrix A and Cartan matrix C = 2I − A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub adjacency: Vec<Vec<i64>>,
    pub cartan: Vec<Vec<i64>>,
}

impl CartanData {
    pub fn from_adjacency(adjacency: Vec<Vec<i64>>) -> Self {
        let n = adjacency.len();
        let cartan = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { 2 } else { 0 } - adjacency[i][j])
                    .collect()
            })
            .collect();
        CartanData { adjacency, cartan }
    }

    pub fn n(&self) -> usize {
        self.cartan.len()
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.adjacency[i][j]
    }

    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    /// Positive definiteness via leading principal minors.
    pub fn is_finite_type(&self) -> bool {
        let c: Mat<Q> = self.to_mat();
        (1..=self.n()).all(|k| {
            let minor = c.submatrix(0, k, 0, k).det().expect("square minor");
            !minor.is_zero() && !minor.is_negative()
        })
    }

    pub fn to_mat<F: Field>(&self) -> Mat<F> {
        let n = self.n();
        Mat::from_fn(n, n, |i, j| F::from_i64(self.cartan[i][j]))
    }

    /// C·v, the image of a root-lattice vector in weight coordinates.
    pub fn root_to_weight(&self, v: &RootVec) -> WeightVec<i64> {
        WeightVec(
            (0..self.n())
                .map(|i| (0..self.n()).map(|j| self.cartan[i][j] * v.0[j]).sum())
                .collect(),
        )
    }

    /// max{1, a_ij²}.
    pub fn k_bound(&self) -> i64 {
        self.adjacency
            .iter()
            .flatten()
            .map(|a| a * a)
            .max()
            .unwrap_or(0)
            .max(1)
    }
}

/// Exact coordinates usable in weight vectors: integers or field elements.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(n: i64) -> Self;
    fn is_zero_scalar(&self) -> bool;
}

impl Scalar for i64 {
    fn from_int(n: i64) -> Self {
        n
    }
    fn is_zero_scalar(&self) -> bool {
        *self == 0
    }
}

impl<F: Field> Scalar for F {
    fn from_int(n: i64) -> Self {
        F::from_i64(n)
    }
    fn is_zero_scalar(&self) -> bool {
        self.is_zero()
    }
}

/// Coordinates in the fundamental-weight basis ω̄ (houses d, m and λ).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVec<T = i64>(pub Vec<T>);

/// Coordinates in the simple-root basis (houses v).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVec(pub Vec<i64>);

/// Coordinates in the simple-coroot basis (houses u).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CorootVec(pub Vec<i64>);

impl<T: Scalar> WeightVec<T> {
    pub fn zero(n: usize) -> Self {
        WeightVec(vec![T::from_int(0); n])
    }

    /// ⟨u∨, x⟩ = Σ u_i x_i.
    pub fn pair(&self, u: &CorootVec) -> T {
        self.0
            .iter()
            .zip(&u.0)
            .fold(T::from_int(0), |acc, (x, &ui)| acc + T::from_int(ui) * x.clone())
    }
}

impl RootVec {
    pub fn zero(n: usize) -> Self {
        RootVec(vec![0; n])
    }

    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        RootVec(v)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// A word `[w₀, …, w_k]` in the simple reflections, acting as
/// s_{w₀} ∘ … ∘ s_{w_k} (the last letter is applied first).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord(Vec::new())
    }

    pub fn inverse(&self) -> Self {
        WeylWord(self.0.iter().rev().copied().collect())
    }

    /// Letters in the order they act.
    pub fn application_order(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().rev().copied()
    }
}

/// s_i on weights: x_j ↦ x_j − c_ij x_i.
pub fn reflect_weight<T: Scalar>(c: &CartanData, i: usize, x: &WeightVec<T>) -> WeightVec<T> {
    let xi = x.0[i].clone();
    WeightVec(
        x.0.iter()
            .enumerate()
            .map(|(j, xj)| xj.clone() - T::from_int(c.c(i, j)) * xi.clone())
            .collect(),
    )
}

pub fn reflect_weight_word<T: Scalar>(
    c: &CartanData,
    w: &WeylWord,
    x: &WeightVec<T>,
) -> WeightVec<T> {
    w.application_order()
        .fold(x.clone(), |acc, i| reflect_weight(c, i, &acc))
}

/// s_i on the root lattice: α_j ↦ α_j − c_ij α_i.
pub fn reflect_root(c: &CartanData, i: usize, v: &RootVec) -> RootVec {
    let mut out = v.0.clone();
    out[i] = v.0[i] - (0..c.n()).map(|j| c.c(i, j) * v.0[j]).sum::<i64>();
    RootVec(out)
}

/// s_i on the coroot lattice (same matrix as on roots, C being symmetric).
pub fn reflect_coroot(c: &CartanData, i: usize, u: &CorootVec) -> CorootVec {
    CorootVec(reflect_root(c, i, &RootVec(u.0.clone())).0)
}

/// One generator of the affine action: v_i ↦ d_i − v_i + Σ_{j≠i} a_ij v_j.
pub fn dot_reflect(c: &CartanData, i: usize, d: &WeightVec<i64>, v: &RootVec) -> RootVec {
    let mut out = v.0.clone();
    let s: i64 = (0..c.n()).filter(|&j| j != i).map(|j| c.a(i, j) * v.0[j]).sum();
    out[i] = d.0[i] - v.0[i] + s;
    RootVec(out)
}

/// σ·v = σ(v − d) + d for σ given by a word.
pub fn dot_action(c: &CartanData, w: &WeylWord, d: &WeightVec<i64>, v: &RootVec) -> RootVec {
    w.application_order()
        .fold(v.clone(), |acc, i| dot_reflect(c, i, d, &acc))
}

/// Σ 2d_i v_i − vᵀCv.
pub fn variety_dimension(c: &CartanData, d: &WeightVec<i64>, v: &RootVec) -> i64 {
    let cv = c.root_to_weight(v);
    (0..c.n()).map(|i| v.0[i] * (2 * d.0[i] - cv.0[i])).sum()
}

/// d − Cv in weight coordinates.
pub fn weight_difference(c: &CartanData, d: &WeightVec<i64>, v: &RootVec) -> WeightVec<i64> {
    let cv = c.root_to_weight(v);
    WeightVec(d.0.iter().zip(&cv.0).map(|(a, b)| a - b).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Dominance {
    pub dominant: bool,
    pub regular: bool,
}

pub fn dominance(c: &CartanData, d: &WeightVec<i64>, v: &RootVec) -> Dominance {
    let w = weight_difference(c, d, v);
    Dominance {
        dominant: w.0.iter().all(|&x| x >= 0),
        regular: w.0.iter().all(|&x| x > 0),
    }
}

/// An element of W stored as its integer action matrix on the root lattice,
/// together with one word producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: Vec<Vec<i64>>,
    pub word: WeylWord,
}

impl WeylElement {
    pub fn act_root(&self, v: &RootVec) -> RootVec {
        RootVec(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(&v.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }
}

fn reflection_matrix(c: &CartanData, i: usize) -> Vec<Vec<i64>> {
    let n = c.n();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|k| {
                    let id = i64::from(r == k);
                    if r == i {
                        id - c.c(i, k)
                    } else {
                        id
                    }
                })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// All elements of a finite Weyl group, by breadth-first closure under the
/// simple reflections. The first element is the identity.
pub fn enumerate_weyl(c: &CartanData) -> Result<Vec<WeylElement>> {
    if !c.is_finite_type() {
        return Err(Error::NotFiniteType);
    }
    let n = c.n();
    let gens: Vec<_> = (0..n).map(|i| reflection_matrix(c, i)).collect();
    let identity: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut seen = HashSet::from([identity.clone()]);
    let mut out = vec![WeylElement {
        matrix: identity,
        word: WeylWord::identity(),
    }];
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for (i, g) in gens.iter().enumerate() {
            let m = mat_mul(g, &out[k].matrix);
            if seen.insert(m.clone()) {
                let mut word = vec![i];
                word.extend(&out[k].word.0);
                out.push(WeylElement {
                    matrix: m,
                    word: WeylWord(word),
                });
                queue.push_back(out.len() - 1);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenericityMode {
    /// 0 < u ≤ v.
    Uv,
    /// 0 < u_i ≤ K v_i with K = max{1, a_ij²}.
    UvTilde,
    /// σ(m, λ) avoids the Ũ-hyperplanes of σ·v for every σ ∈ W.
    Gv,
    /// u ranges over the real coroots.
    Hinf,
}

impl std::str::FromStr for GenericityMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "uv" => Ok(GenericityMode::Uv),
            "uvtilde" | "uv-tilde" => Ok(GenericityMode::UvTilde),
            "gv" => Ok(GenericityMode::Gv),
            "hinf" => Ok(GenericityMode::Hinf),
            _ => Err(Error::Parse(format!("unknown genericity mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Genericity {
    Generic,
    /// (m, λ) (or σ(m, λ)) lies on H_u.
    OnHyperplane {
        u: CorootVec,
        sigma: Option<WeylWord>,
    },
}

impl Genericity {
    pub fn is_generic(&self) -> bool {
        matches!(self, Genericity::Generic)
    }
}

/// (m, λ) ∈ H_u.
pub fn on_hyperplane<T: Scalar>(m: &WeightVec<i64>, lam: &WeightVec<T>, u: &CorootVec) -> bool {
    m.pair(u) == 0 && lam.pair(u).is_zero_scalar()
}

/// Nonzero u with 0 ≤ u_i ≤ bound_i, by increasing total then lexicographically.
fn box_vectors(bound: &[i64]) -> Vec<CorootVec> {
    let mut out = vec![Vec::new()];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (0..=b.max(0)).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out.retain(|u| u.iter().any(|&x| x != 0));
    out.sort_by(|a, b| {
        a.iter()
            .sum::<i64>()
            .cmp(&b.iter().sum::<i64>())
            .then_with(|| a.cmp(b))
    });
    out.into_iter().map(CorootVec).collect()
}

fn first_hyperplane<T: Scalar>(
    m: &WeightVec<i64>,
    lam: &WeightVec<T>,
    us: impl IntoIterator<Item = CorootVec>,
) -> Option<CorootVec> {
    us.into_iter().find(|u| on_hyperplane(m, lam, u))
}

/// Positive real coroots W·{α_i∨} of a finite-type Cartan matrix.
pub fn positive_coroots(c: &CartanData) -> Result<Vec<CorootVec>> {
    let w = enumerate_weyl(c)?;
    let mut set = HashSet::new();
    for e in &w {
        for i in 0..c.n() {
            let r = e.act_root(&RootVec::simple(c.n(), i));
            if r.is_nonnegative() {
                set.insert(CorootVec(r.0));
            }
        }
    }
    let mut out: Vec<_> = set.into_iter().collect();
    out.sort_by(|a, b| {
        a.0.iter()
            .sum::<i64>()
            .cmp(&b.0.iter().sum::<i64>())
            .then_with(|| a.cmp(b))
    });
    Ok(out)
}

/// Decide whether (m, λ) avoids the hyperplanes of the chosen family.
/// `d` is required for [`GenericityMode::Gv`].
pub fn genericity<T: Scalar>(
    c: &CartanData,
    m: &WeightVec<i64>,
    lam: &WeightVec<T>,
    v: &RootVec,
    mode: GenericityMode,
    d: Option<&WeightVec<i64>>,
) -> Result<Genericity> {
    let violated = |u: CorootVec, sigma: Option<WeylWord>| Genericity::OnHyperplane { u, sigma };
    match mode {
        GenericityMode::Uv => Ok(first_hyperplane(m, lam, box_vectors(&v.0))
            .map_or(Genericity::Generic, |u| violated(u, None))),
        GenericityMode::UvTilde => {
            let k = c.k_bound();
            let bound: Vec<i64> = v.0.iter().map(|x| k * x).collect();
            Ok(first_hyperplane(m, lam, box_vectors(&bound))
                .map_or(Genericity::Generic, |u| violated(u, None)))
        }
        GenericityMode::Hinf => Ok(first_hyperplane(m, lam, positive_coroots(c)?)
            .map_or(Genericity::Generic, |u| violated(u, None))),
        GenericityMode::Gv => {
            let d = d.ok_or_else(|| {
                Error::Parse("genericity mode Gv needs the framing vector d".into())
            })?;
            let k = c.k_bound();
            for e in enumerate_weyl(c)? {
                let sv = dot_action(c, &e.word, d, v);
                if !sv.is_nonnegative() {
                    continue;
                }
                let sm = reflect_weight_word(c, &e.word, m);
                let sl = reflect_weight_word(c, &e.word, lam);
                let bound: Vec<i64> = sv.0.iter().map(|x| k * x).collect();
                if let Some(u) = first_hyperplane(&sm, &sl, box_vectors(&bound)) {
                    return Ok(violated(u, Some(e.word)));
                }
            }
            Ok(Genericity::Generic)
        }
    }
}

/// Parse a comma-separated integer list such as `1,0,2`.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("invalid integer {x:?}")))
        })
        .collect()
}
