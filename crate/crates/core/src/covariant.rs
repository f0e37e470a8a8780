//! Determinant covariants f_Δ = det Ψ_Δ attached to chi-data, the
//! contingency-matrix basis {f_S} of the block model, and semistability
//! tests and certificates.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Field, Fp, Q};
use crate::linalg::Mat;
use crate::path::{enumerate_paths, plus_subspaces, BPathExpr, PathExpr};
use crate::quiver::{Quiver, WeightVec};
use crate::rep::{DimData, FramedPoint};

/// A standard basis vector e_index of D_vertex (or its dual covector).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FramingVector {
    pub vertex: usize,
    pub index: usize,
}

/// A summand of the source space Y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    /// The copy V_i^{(h)}.
    V { vertex: usize, copy: usize },
    /// The line C·a_l.
    A(usize),
}

/// A summand of the target space Z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    /// The copy V_j^{[k]}.
    V { vertex: usize, copy: usize },
    /// The line C·b_l.
    B(usize),
}

/// An integer combination of b-paths.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathCombo(pub Vec<(i64, BPathExpr)>);

impl PathCombo {
    pub fn single(b: BPathExpr) -> Self {
        PathCombo(vec![(1, b)])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|(c, _)| *c == 0)
    }

    fn terms(&self) -> impl Iterator<Item = &(i64, BPathExpr)> {
        self.0.iter().filter(|(c, _)| *c != 0)
    }

    pub fn evaluate<F: Field>(&self, s: &FramedPoint<F>, rows: usize, cols: usize) -> Result<Mat<F>> {
        let mut acc = Mat::zeros(rows, cols);
        for (c, b) in self.terms() {
            let m = b.evaluate(s)?;
            if m.shape() != (rows, cols) {
                return Err(Error::ShapeMismatch("b-path has the wrong type".into()));
            }
            acc = &acc + &m.scale(&F::from_i64(*c));
        }
        Ok(acc)
    }
}

/// The combinatorial data Δ defining a covariant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChiData {
    pub m_plus: Vec<usize>,
    pub m_minus: Vec<usize>,
    /// Framing vectors a_1…a_{m⁻}.
    pub a: Vec<FramingVector>,
    /// Framing covectors b_1…b_{m⁺}.
    pub b: Vec<FramingVector>,
    /// Nonzero entries α; absent pairs are zero.
    pub entries: BTreeMap<(Source, Target), PathCombo>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ChiCondition {
    /// Both sides of Ψ have the same dimension N.
    Balance,
    /// m_i⁺ − m_i⁻ = m_i.
    Weight,
    /// Indices, framing vectors and b-path types are consistent.
    Typing,
    /// One of the seven normalization conditions.
    Good(u8),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: ChiCondition,
    pub message: String,
}

impl ChiData {
    pub fn m_plus_total(&self) -> usize {
        self.b.len()
    }

    pub fn m_minus_total(&self) -> usize {
        self.a.len()
    }

    /// (dim Z, dim Y) = (Σ m_i⁺ v_i + m⁺, Σ m_i⁻ v_i + m⁻).
    pub fn sizes(&self, v: &[usize]) -> (usize, usize) {
        let z = self.m_plus.iter().zip(v).map(|(m, v)| m * v).sum::<usize>() + self.b.len();
        let y = self.m_minus.iter().zip(v).map(|(m, v)| m * v).sum::<usize>() + self.a.len();
        (z, y)
    }

    fn source_vertex(&self, s: Source) -> Option<usize> {
        match s {
            Source::V { vertex, .. } => Some(vertex),
            Source::A(l) => self.a.get(l).map(|f| f.vertex),
        }
    }

    fn target_vertex(&self, t: Target) -> Option<usize> {
        match t {
            Target::V { vertex, .. } => Some(vertex),
            Target::B(l) => self.b.get(l).map(|f| f.vertex),
        }
    }

    fn sources(&self) -> Vec<Source> {
        let mut out = Vec::new();
        for (i, &m) in self.m_minus.iter().enumerate() {
            out.extend((0..m).map(|h| Source::V { vertex: i, copy: h }));
        }
        out.extend((0..self.a.len()).map(Source::A));
        out
    }

    fn targets(&self) -> Vec<Target> {
        let mut out = Vec::new();
        for (j, &m) in self.m_plus.iter().enumerate() {
            out.extend((0..m).map(|k| Target::V { vertex: j, copy: k }));
        }
        out.extend((0..self.b.len()).map(Target::B));
        out
    }

    pub fn to_json(&self, q: &Quiver) -> Value {
        let label = |i: usize| q.vertices()[i];
        let fv = |f: &FramingVector| serde_json::json!({"vertex": label(f.vertex), "index": f.index + 1});
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|((src, tgt), combo)| {
                let from = match *src {
                    Source::V { vertex, copy } => {
                        serde_json::json!({"vertex": label(vertex), "copy": copy + 1})
                    }
                    Source::A(l) => serde_json::json!({"a": l + 1}),
                };
                let to = match *tgt {
                    Target::V { vertex, copy } => {
                        serde_json::json!({"vertex": label(vertex), "copy": copy + 1})
                    }
                    Target::B(l) => serde_json::json!({"b": l + 1}),
                };
                let value: Vec<Value> = combo
                    .0
                    .iter()
                    .map(|(c, b)| serde_json::json!([c, b.to_literal(q)]))
                    .collect();
                serde_json::json!({"from": from, "to": to, "value": value})
            })
            .collect();
        serde_json::json!({
            "m_plus": self.m_plus,
            "m_minus": self.m_minus,
            "A": self.a.iter().map(fv).collect::<Vec<_>>(),
            "B": self.b.iter().map(fv).collect::<Vec<_>>(),
            "entries": entries,
        })
    }

    pub fn from_json(q: &Quiver, value: &Value) -> Result<Self> {
        let raw: ChiJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("chi-data: {e}")))?;
        let fv = |f: &FramingJson| -> Result<FramingVector> {
            Ok(FramingVector {
                vertex: q.vertex_index(f.vertex)?,
                index: one_based(f.index, "framing index")?,
            })
        };
        let mut entries = BTreeMap::new();
        for e in &raw.entries {
            let src = match e.from {
                EndJson::Copy { vertex, copy } => Source::V {
                    vertex: q.vertex_index(vertex)?,
                    copy: one_based(copy, "copy")?,
                },
                EndJson::A { a } => Source::A(one_based(a, "a index")?),
                EndJson::B { .. } => return Err(Error::Parse("an entry cannot start at b".into())),
            };
            let tgt = match e.to {
                EndJson::Copy { vertex, copy } => Target::V {
                    vertex: q.vertex_index(vertex)?,
                    copy: one_based(copy, "copy")?,
                },
                EndJson::B { b } => Target::B(one_based(b, "b index")?),
                EndJson::A { .. } => return Err(Error::Parse("an entry cannot end at a".into())),
            };
            let combo = match &e.value {
                Value::String(lit) => PathCombo::single(BPathExpr::parse(q, lit)?),
                Value::Array(terms) => PathCombo(
                    terms
                        .iter()
                        .map(|t| {
                            let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
                                Error::Parse("combination terms are [coefficient, literal]".into())
                            })?;
                            let c = pair[0]
                                .as_i64()
                                .ok_or_else(|| Error::Parse("integer coefficient expected".into()))?;
                            let lit = pair[1]
                                .as_str()
                                .ok_or_else(|| Error::Parse("path literal expected".into()))?;
                            Ok((c, BPathExpr::parse(q, lit)?))
                        })
                        .collect::<Result<_>>()?,
                ),
                other => return Err(Error::Parse(format!("invalid entry value {other}"))),
            };
            entries.insert((src, tgt), combo);
        }
        Ok(ChiData {
            m_plus: raw.m_plus,
            m_minus: raw.m_minus,
            a: raw.a.iter().map(fv).collect::<Result<_>>()?,
            b: raw.b.iter().map(fv).collect::<Result<_>>()?,
            entries,
        })
    }
}

fn one_based(x: usize, what: &str) -> Result<usize> {
    x.checked_sub(1)
        .ok_or_else(|| Error::Parse(format!("{what} is 1-based")))
}

#[derive(Deserialize)]
struct FramingJson {
    vertex: i64,
    index: usize,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum EndJson {
    Copy { vertex: i64, copy: usize },
    A { a: usize },
    B { b: usize },
}

#[derive(Deserialize)]
struct EntryJson {
    from: EndJson,
    to: EndJson,
    value: Value,
}

#[derive(Deserialize)]
struct ChiJson {
    m_plus: Vec<usize>,
    m_minus: Vec<usize>,
    #[serde(rename = "A", default)]
    a: Vec<FramingJson>,
    #[serde(rename = "B", default)]
    b: Vec<FramingJson>,
    #[serde(default)]
    entries: Vec<EntryJson>,
}

/// Check Δ against the character m and the dimensions; an empty list means
/// Δ is balanced, of weight χ_m and χ-good.
pub fn validate_chi_data(delta: &ChiData, m: &WeightVec<i64>, dims: &DimData) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |condition, message: String| out.push(Violation { condition, message });
    let n = dims.n();
    if delta.m_plus.len() != n || delta.m_minus.len() != n || m.0.len() != n {
        push(ChiCondition::Typing, "multiplicity vectors do not match the vertex count".into());
        return out;
    }
    let (z, y) = delta.sizes(&dims.v);
    if z != y {
        push(ChiCondition::Balance, format!("dim Z = {z} but dim Y = {y}"));
    }
    for i in 0..n {
        let (p, mm) = (delta.m_plus[i] as i64, delta.m_minus[i] as i64);
        if p - mm != m.0[i] {
            push(
                ChiCondition::Weight,
                format!("vertex {i}: m+ - m- = {} but m = {}", p - mm, m.0[i]),
            );
        }
        if p + mm != m.0[i].abs() {
            push(
                ChiCondition::Good(1),
                format!("vertex {i}: m+ + m- = {} but |m| = {}", p + mm, m.0[i].abs()),
            );
        }
    }
    for (name, list) in [("A", &delta.a), ("B", &delta.b)] {
        for (l, f) in list.iter().enumerate() {
            if f.vertex >= n || f.index >= dims.d[f.vertex] {
                push(ChiCondition::Typing, format!("{name}[{l}] is not a basis vector of a framing space"));
            }
        }
    }
    let sources: BTreeSet<Source> = delta.sources().into_iter().collect();
    let targets: BTreeSet<Target> = delta.targets().into_iter().collect();
    let mut row_support: BTreeMap<Source, usize> = BTreeMap::new();
    let mut col_support: BTreeMap<Target, usize> = BTreeMap::new();
    let mut b_links: BTreeMap<usize, usize> = BTreeMap::new();
    let mut a_links: BTreeMap<usize, usize> = BTreeMap::new();
    for ((src, tgt), combo) in &delta.entries {
        if combo.is_zero() {
            continue;
        }
        if !sources.contains(src) || !targets.contains(tgt) {
            push(ChiCondition::Typing, format!("entry {src:?} -> {tgt:?} is out of range"));
            continue;
        }
        let (Some(i), Some(j)) = (delta.source_vertex(*src), delta.target_vertex(*tgt)) else {
            continue;
        };
        for (_, b) in combo.terms() {
            if b.source() != i || b.target() != j {
                push(
                    ChiCondition::Typing,
                    format!("entry {src:?} -> {tgt:?} needs type ({i},{j})"),
                );
            }
            if !b.is_plain() {
                push(
                    ChiCondition::Good(3),
                    format!("entry {src:?} -> {tgt:?} uses framing loops"),
                );
            }
        }
        match (src, tgt) {
            (Source::A(_), Target::B(_)) => push(
                ChiCondition::Good(2),
                format!("entry {src:?} -> {tgt:?} links two framing lines"),
            ),
            (Source::V { .. }, Target::B(l)) => {
                *row_support.entry(*src).or_default() += 1;
                *b_links.entry(*l).or_default() += 1;
            }
            (Source::A(l), Target::V { .. }) => {
                *col_support.entry(*tgt).or_default() += 1;
                *a_links.entry(*l).or_default() += 1;
            }
            (Source::V { .. }, Target::V { .. }) => {
                *row_support.entry(*src).or_default() += 1;
                *col_support.entry(*tgt).or_default() += 1;
            }
        }
    }
    for (src, count) in row_support {
        let Source::V { vertex, .. } = src else { continue };
        if count > dims.v[vertex] {
            push(ChiCondition::Good(4), format!("{src:?} has {count} nonzero entries"));
        }
    }
    for (tgt, count) in col_support {
        let Target::V { vertex, .. } = tgt else { continue };
        if count > dims.v[vertex] {
            push(ChiCondition::Good(5), format!("{tgt:?} has {count} nonzero entries"));
        }
    }
    for (l, count) in b_links {
        if count > 1 {
            push(ChiCondition::Good(6), format!("b_{l} is linked to {count} copies"));
        }
    }
    for (l, count) in a_links {
        if count > 1 {
            push(ChiCondition::Good(7), format!("a_{l} is linked to {count} copies"));
        }
    }
    out
}

/// The matrix Ψ_Δ(s) : Y → Z, rows indexed by Z and columns by Y, summands
/// in the order copies by vertex then framing lines.
pub fn assemble_psi<F: Field>(delta: &ChiData, s: &FramedPoint<F>) -> Result<Mat<F>> {
    let dims = s.dims();
    let v = &dims.v;
    if delta.m_plus.len() != dims.n() || delta.m_minus.len() != dims.n() {
        return Err(Error::BalanceViolated(
            "multiplicity vectors do not match the vertex count".into(),
        ));
    }
    let (z, y) = delta.sizes(v);
    if z != y {
        return Err(Error::BalanceViolated(format!("dim Z = {z} but dim Y = {y}")));
    }
    for f in delta.a.iter().chain(&delta.b) {
        if f.vertex >= dims.n() || f.index >= dims.d[f.vertex] {
            return Err(Error::ShapeMismatch("framing vector out of range".into()));
        }
    }
    let mut col_off = BTreeMap::new();
    let mut off = 0;
    for src in delta.sources() {
        col_off.insert(src, off);
        off += match src {
            Source::V { vertex, .. } => v[vertex],
            Source::A(_) => 1,
        };
    }
    let mut row_off = BTreeMap::new();
    off = 0;
    for tgt in delta.targets() {
        row_off.insert(tgt, off);
        off += match tgt {
            Target::V { vertex, .. } => v[vertex],
            Target::B(_) => 1,
        };
    }
    let mut psi = Mat::zeros(z, y);
    for ((src, tgt), combo) in &delta.entries {
        if combo.is_zero() {
            continue;
        }
        let (Some(&c0), Some(&r0)) = (col_off.get(src), row_off.get(tgt)) else {
            return Err(Error::ShapeMismatch(format!("entry {src:?} -> {tgt:?} is out of range")));
        };
        let i = delta.source_vertex(*src).expect("source in range");
        let j = delta.target_vertex(*tgt).expect("target in range");
        let alpha = combo.evaluate(s, v[j], v[i])?;
        let with_source = match *src {
            Source::V { .. } => alpha,
            Source::A(l) => {
                let a = delta.a[l];
                let col = s.gamma[a.vertex].submatrix(0, v[a.vertex], a.index, 1);
                alpha.try_mul(&col)?
            }
        };
        let block = match *tgt {
            Target::V { .. } => with_source,
            Target::B(l) => {
                let b = delta.b[l];
                let row = s.delta[b.vertex].submatrix(b.index, 1, 0, v[b.vertex]);
                row.try_mul(&with_source)?
            }
        };
        psi.set_block(r0, c0, &block);
    }
    Ok(psi)
}

/// f_Δ(s) = det Ψ_Δ(s).
pub fn eval_covariant<F: Field>(delta: &ChiData, s: &FramedPoint<F>) -> Result<F> {
    assemble_psi(delta, s)?.det()
}

/// Nonnegative integer matrices with the given row and column sums, in
/// lexicographic (row-major) order.
pub fn enumerate_s_xy(row_sums: &[usize], col_sums: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if row_sums.iter().sum::<usize>() != col_sums.iter().sum::<usize>() {
        return out;
    }
    let (p, q) = (row_sums.len(), col_sums.len());
    let mut cur = vec![vec![0usize; q]; p];
    let mut col_left = col_sums.to_vec();
    fn rec(
        i: usize,
        j: usize,
        row_left: usize,
        row_sums: &[usize],
        cur: &mut Vec<Vec<usize>>,
        col_left: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let (p, q) = (cur.len(), col_left.len());
        if i == p {
            if col_left.iter().all(|&c| c == 0) {
                out.push(cur.clone());
            }
            return;
        }
        if j == q {
            if row_left == 0 {
                let next = if i + 1 < p { row_sums[i + 1] } else { 0 };
                rec(i + 1, 0, next, row_sums, cur, col_left, out);
            }
            return;
        }
        let hi = row_left.min(col_left[j]);
        for x in 0..=hi {
            cur[i][j] = x;
            col_left[j] -= x;
            rec(i, j + 1, row_left - x, row_sums, cur, col_left, out);
            col_left[j] += x;
        }
        cur[i][j] = 0;
    }
    if p == 0 {
        if col_sums.iter().all(|&c| c == 0) {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, 0, row_sums[0], row_sums, &mut cur, &mut col_left, &mut out);
    out
}

/// A point of H^{XY}: blocks Hom(X_j, Y_i)^{⊕ r_ij} for i ∈ J⁺, j ∈ J⁻, plus
/// the framing blocks A^{i0} : X₀ → Y_i and A^{0j} : X_j → Y₀.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialBlockPoint<F> {
    pub y_dims: Vec<usize>,
    pub x_dims: Vec<usize>,
    pub y0: usize,
    pub x0: usize,
    /// `main[i][j]` holds the r_ij copies of A^{ij}.
    pub main: Vec<Vec<Vec<Mat<F>>>>,
    pub left: Vec<Mat<F>>,
    pub bottom: Vec<Mat<F>>,
}

impl<F: Field> SpecialBlockPoint<F> {
    /// Random point with r_ij = 1 and X₀ = Y₀ = 0.
    pub fn random_simple<R: Rng + ?Sized>(
        y_dims: &[usize],
        x_dims: &[usize],
        rng: &mut R,
        height: u32,
    ) -> Self {
        let r = vec![vec![1; x_dims.len()]; y_dims.len()];
        Self::random(y_dims, x_dims, 0, 0, &r, rng, height)
    }

    pub fn random<R: Rng + ?Sized>(
        y_dims: &[usize],
        x_dims: &[usize],
        y0: usize,
        x0: usize,
        r: &[Vec<usize>],
        rng: &mut R,
        height: u32,
    ) -> Self {
        let main = y_dims
            .iter()
            .enumerate()
            .map(|(i, &yi)| {
                x_dims
                    .iter()
                    .enumerate()
                    .map(|(j, &xj)| (0..r[i][j]).map(|_| Mat::random(yi, xj, rng, height)).collect())
                    .collect()
            })
            .collect();
        let left = y_dims.iter().map(|&yi| Mat::random(yi, x0, rng, height)).collect();
        let bottom = x_dims.iter().map(|&xj| Mat::random(y0, xj, rng, height)).collect();
        SpecialBlockPoint {
            y_dims: y_dims.to_vec(),
            x_dims: x_dims.to_vec(),
            y0,
            x0,
            main,
            left,
            bottom,
        }
    }

    /// Build the simple case from one block per (i, j).
    pub fn simple(y_dims: &[usize], x_dims: &[usize], blocks: Vec<Vec<Mat<F>>>) -> Result<Self> {
        let mut main = Vec::new();
        for (i, row) in blocks.into_iter().enumerate() {
            let mut r = Vec::new();
            for (j, m) in row.into_iter().enumerate() {
                if m.shape() != (y_dims[i], x_dims[j]) {
                    return Err(Error::ShapeMismatch(format!("block ({i},{j}) has shape {:?}", m.shape())));
                }
                r.push(vec![m]);
            }
            main.push(r);
        }
        Ok(SpecialBlockPoint {
            y_dims: y_dims.to_vec(),
            x_dims: x_dims.to_vec(),
            y0: 0,
            x0: 0,
            left: y_dims.iter().map(|&y| Mat::zeros(y, 0)).collect(),
            bottom: x_dims.iter().map(|&x| Mat::zeros(0, x)).collect(),
            main,
        })
    }
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect()
}

/// det Φ_{φ,α,β}(p) with Φ = [Σ_k φ_ij[k] A_ij^{(k)} | A^{i0}α ; βA^{0j} | 0]
/// mapping X ⊕ Ã → Y ⊕ B̃.
pub fn eval_phi_ab<F: Field>(
    phi: &[Vec<Vec<F>>],
    alpha: &Mat<F>,
    beta: &Mat<F>,
    p: &SpecialBlockPoint<F>,
) -> Result<F> {
    let (ny, nx) = (p.y_dims.iter().sum::<usize>(), p.x_dims.iter().sum::<usize>());
    if alpha.rows() != p.x0 || beta.cols() != p.y0 {
        return Err(Error::ShapeMismatch("alpha or beta does not match X0/Y0".into()));
    }
    let (na, nb) = (alpha.cols(), beta.rows());
    if nx + na != ny + nb {
        return Err(Error::ShapeMismatch(format!(
            "Phi maps a {}-dimensional space to a {}-dimensional one",
            nx + na,
            ny + nb
        )));
    }
    let (yo, xo) = (offsets(&p.y_dims), offsets(&p.x_dims));
    let mut m = Mat::zeros(ny + nb, nx + na);
    for (i, row) in p.main.iter().enumerate() {
        for (j, copies) in row.iter().enumerate() {
            let coeffs = phi
                .get(i)
                .and_then(|r| r.get(j))
                .ok_or_else(|| Error::ShapeMismatch("phi does not cover every block".into()))?;
            if coeffs.len() != copies.len() {
                return Err(Error::ShapeMismatch(format!("phi_({i},{j}) has the wrong length")));
            }
            let mut block = Mat::zeros(p.y_dims[i], p.x_dims[j]);
            for (c, a) in coeffs.iter().zip(copies) {
                block = &block + &a.scale(c);
            }
            m.set_block(yo[i], xo[j], &block);
        }
    }
    for (i, a) in p.left.iter().enumerate() {
        m.set_block(yo[i], nx, &a.try_mul(alpha)?);
    }
    for (j, a) in p.bottom.iter().enumerate() {
        m.set_block(ny, xo[j], &beta.try_mul(a)?);
    }
    m.det()
}

/// f_S(p) = det of the block matrix [s_ij A^{ij}] (r_ij = 1, X₀ = Y₀ = 0).
pub fn eval_fs<F: Field>(s: &[Vec<usize>], p: &SpecialBlockPoint<F>) -> Result<F> {
    if p.x0 != 0 || p.y0 != 0 {
        return Err(Error::ShapeMismatch("f_S needs X0 = Y0 = 0".into()));
    }
    if s.len() != p.y_dims.len() || s.iter().any(|r| r.len() != p.x_dims.len()) {
        return Err(Error::ShapeMismatch("S does not match the block layout".into()));
    }
    if p.main.iter().flatten().any(|copies| copies.len() != 1) {
        return Err(Error::ShapeMismatch("f_S needs one copy of each block".into()));
    }
    let phi: Vec<Vec<Vec<F>>> = s
        .iter()
        .map(|r| r.iter().map(|&x| vec![F::from_i64(x as i64)]).collect())
        .collect();
    eval_phi_ab(&phi, &Mat::zeros(0, 0), &Mat::zeros(0, 0), p)
}

const RANK_PRIME: u64 = 2_147_483_647;

fn to_residue(x: &Q) -> Option<Fp<RANK_PRIME>> {
    let p = num_bigint::BigInt::from(RANK_PRIME);
    let reduce = |n: &num_bigint::BigInt| -> i64 {
        let r = ((n % &p) + &p) % &p;
        r.to_i64().expect("residue fits in i64")
    };
    let den = Fp::<RANK_PRIME>::new(reduce(x.denom()));
    den.inv().map(|d| Fp::new(reduce(x.numer())) * d)
}

/// Exact rank of a rational matrix, using full rank modulo a large prime as
/// a shortcut certificate.
pub fn exact_rank(m: &Mat<Q>) -> usize {
    let full = m.rows().min(m.cols());
    let residues: Option<Vec<Fp<RANK_PRIME>>> = m.entries().iter().map(to_residue).collect();
    if let Some(res) = residues {
        let reduced = Mat::from_vec(m.rows(), m.cols(), res).expect("same shape");
        if reduced.rank() == full {
            return full;
        }
    }
    m.rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankCheckOptions {
    pub samples: usize,
    pub seed: u64,
    pub height: u32,
    /// Largest N = Σ dim X_j accepted.
    pub max_dim: usize,
}

impl Default for RankCheckOptions {
    fn default() -> Self {
        RankCheckOptions {
            samples: 8,
            seed: 0,
            height: 10,
            max_dim: 8,
        }
    }
}

/// Rank of the matrix (f_S(p_k)) over `samples` random rational points p_k
/// and all S ∈ 𝒮^{XY}.
pub fn basis_rank_check(y_dims: &[usize], x_dims: &[usize], opts: RankCheckOptions) -> Result<usize> {
    let n: usize = x_dims.iter().sum();
    if n > opts.max_dim || y_dims.iter().sum::<usize>() > opts.max_dim {
        return Err(Error::RangeViolation(format!(
            "total dimension {n} exceeds the cap {}",
            opts.max_dim
        )));
    }
    let family = enumerate_s_xy(y_dims, x_dims);
    if family.is_empty() {
        return Ok(0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut values = Vec::with_capacity(opts.samples * family.len());
    for _ in 0..opts.samples {
        let p = SpecialBlockPoint::<Q>::random_simple(y_dims, x_dims, &mut rng, opts.height);
        for s in &family {
            values.push(eval_fs(s, &p)?);
        }
    }
    let m = Mat::from_vec(opts.samples, family.len(), values)?;
    Ok(exact_rank(&m))
}

/// Polarization of the 2×2 determinant: returns (det[a₁|b₂] + det[b₁|a₂], det(A+B) − det A − det B)
/// for 2×2 matrices, columns written a₁, a₂.
pub fn det_identity_columns<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Result<(F, F)> {
    let mixed = |left: &Mat<F>, right: &Mat<F>| -> Result<F> {
        Mat::hstack(2, &[&left.submatrix(0, 2, 0, 1), &right.submatrix(0, 2, 1, 1)])?.det()
    };
    let lhs = mixed(a, b)? + mixed(b, a)?;
    let rhs = (a + b).det()? - a.det()? - b.det()?;
    Ok((lhs, rhs))
}

/// Block polarization identity for 2×2 blocks A, B, C, D: returns both sides of
/// the six-term relation.
pub fn det_identity_blocks<F: Field>(
    a: &Mat<F>,
    b: &Mat<F>,
    c: &Mat<F>,
    d: &Mat<F>,
) -> Result<(F, F)> {
    let col = |m: &Mat<F>, j: usize| m.submatrix(0, 2, j, 1);
    let pair = |x: Mat<F>, y: Mat<F>| -> Result<F> { Mat::hstack(2, &[&x, &y])?.det() };
    let lhs = pair(col(a, 0), col(b, 0))? * pair(col(c, 1), col(d, 1))?
        - pair(col(a, 0), col(b, 1))? * pair(col(c, 1), col(d, 0))?
        - pair(col(a, 1), col(b, 0))? * pair(col(c, 0), col(d, 1))?
        + pair(col(a, 1), col(b, 1))? * pair(col(c, 0), col(d, 0))?;
    let z = Mat::zeros(2, 2);
    let block = |tl: &Mat<F>, tr: &Mat<F>, bl: &Mat<F>, br: &Mat<F>| -> Result<F> {
        let top = Mat::hstack(2, &[tl, tr])?;
        let bottom = Mat::hstack(2, &[bl, br])?;
        Mat::vstack(4, &[&top, &bottom])?.det()
    };
    let rhs = -block(a, b, c, d)? + block(a, &z, &z, d)? + block(&z, b, c, &z)?;
    Ok((lhs, rhs))
}

/// s lies in Λ_{m₊} iff the B-stable span of the Im γ_i is all of V.
pub fn is_semistable_mplus<F: Field>(s: &FramedPoint<F>) -> bool {
    plus_subspaces(s)
        .iter()
        .zip(&s.dims().v)
        .all(|(w, &v)| w.cols() == v)
}

/// f_Δ(s) ≠ 0 for a Δ of weight χ_m: a certificate of χ_m-semistability.
pub fn certify_semistable<F: Field>(
    s: &FramedPoint<F>,
    delta: &ChiData,
    m: &WeightVec<i64>,
) -> Result<bool> {
    if delta.m_plus.len() != m.0.len() || delta.m_minus.len() != m.0.len() {
        return Err(Error::BalanceViolated("multiplicities do not match m".into()));
    }
    for i in 0..m.0.len() {
        if delta.m_plus[i] as i64 - delta.m_minus[i] as i64 != m.0[i] {
            return Err(Error::BalanceViolated(format!(
                "vertex {i}: m+ - m- differs from m"
            )));
        }
    }
    Ok(!eval_covariant(delta, s)?.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateSearch {
    Certified(ChiData),
    Unknown { tried: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: usize,
    pub seed: u64,
    pub max_path_len: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 200,
            seed: 0,
            max_path_len: 3,
        }
    }
}

fn random_path_between<R: Rng + ?Sized>(
    pool: &[PathExpr],
    from: usize,
    to: usize,
    rng: &mut R,
) -> Option<BPathExpr> {
    let mut choices: Vec<BPathExpr> = pool
        .iter()
        .filter(|p| p.source() == from && p.target() == to)
        .cloned()
        .map(BPathExpr::from_path)
        .collect();
    if from == to {
        choices.push(BPathExpr::empty(from));
    }
    choices.choose(rng).cloned()
}

fn random_framing<R: Rng + ?Sized>(d: &[usize], rng: &mut R) -> Option<FramingVector> {
    let options: Vec<FramingVector> = d
        .iter()
        .enumerate()
        .flat_map(|(vertex, &dv)| (0..dv).map(move |index| FramingVector { vertex, index }))
        .collect();
    options.choose(rng).copied()
}

/// Random χ_m-good data for the given dimensions, or None when the random
/// wiring leaves a summand without an admissible entry.
pub fn random_good_chi_data<R: Rng + ?Sized>(
    q: &Quiver,
    m: &WeightVec<i64>,
    dims: &DimData,
    max_path_len: usize,
    rng: &mut R,
) -> Option<ChiData> {
    let n = q.n();
    let pool = enumerate_paths(q, max_path_len);
    let m_plus: Vec<usize> = m.0.iter().map(|&x| x.max(0) as usize).collect();
    let m_minus: Vec<usize> = m.0.iter().map(|&x| (-x).max(0) as usize).collect();
    let mut delta = ChiData {
        m_plus,
        m_minus,
        ..ChiData::default()
    };
    let (z, y) = delta.sizes(&dims.v);
    for _ in z..y {
        delta.b.push(random_framing(&dims.d, rng)?);
    }
    for _ in y..z {
        delta.a.push(random_framing(&dims.d, rng)?);
    }
    // each source coordinate is matched with one target coordinate, so every
    // row and column support stays within its dimension
    let mut src_slots: Vec<Source> = Vec::new();
    for src in delta.sources() {
        let k = match src {
            Source::V { vertex, .. } => dims.v[vertex],
            Source::A(_) => 1,
        };
        src_slots.extend(std::iter::repeat(src).take(k));
    }
    let mut tgt_slots: Vec<Target> = Vec::new();
    for tgt in delta.targets() {
        let k = match tgt {
            Target::V { vertex, .. } => dims.v[vertex],
            Target::B(_) => 1,
        };
        tgt_slots.extend(std::iter::repeat(tgt).take(k));
    }
    tgt_slots.shuffle(rng);
    for (src, tgt) in src_slots.into_iter().zip(tgt_slots) {
        if matches!((src, tgt), (Source::A(_), Target::B(_))) {
            return None;
        }
        let i = delta.source_vertex(src)?;
        let j = delta.target_vertex(tgt)?;
        let path = random_path_between(&pool, i, j, rng)?;
        let combo = delta.entries.entry((src, tgt)).or_default();
        combo.0.push((rng.gen_range(1..=3), path));
    }
    debug_assert!(n == dims.n());
    validate_chi_data(&delta, m, dims).is_empty().then_some(delta)
}

/// Budgeted random search for a χ_m-good Δ with f_Δ(s) ≠ 0.
pub fn search_certificate<F: Field>(
    s: &FramedPoint<F>,
    m: &WeightVec<i64>,
    opts: SearchOptions,
) -> CertificateSearch {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.budget {
        let Some(delta) = random_good_chi_data(s.quiver(), m, s.dims(), opts.max_path_len, &mut rng)
        else {
            continue;
        };
        if matches!(eval_covariant(&delta, s), Ok(x) if !x.is_zero()) {
            return CertificateSearch::Certified(delta);
        }
    }
    CertificateSearch::Unknown { tried: opts.budget }
}
