//! Ice quivers, paths and path-algebra elements.
//!
//! Paths are stored in traversal order: `arrows[0]` is applied first. The
//! printed form follows the usual right-to-left composition convention, so the
//! path with `arrows == [a1, a2, a3]` prints as `a3 a2 a1`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub name: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite quiver with a frozen subquiver. Vertices and arrows are addressed
/// by their index; the arrow index order is the monomial tie-break order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IceQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    frozen_vertices: Vec<bool>,
    frozen_arrows: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    LoopArrow { arrow: String, vertex: String },
    FrozenArrowEndpoint { arrow: String },
    DuplicateVertex(String),
    DuplicateArrow(String),
    UnknownVertex { arrow: String, vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LoopArrow { arrow, vertex } => {
                write!(f, "arrow {arrow} is a loop at vertex {vertex}")
            }
            Violation::FrozenArrowEndpoint { arrow } => {
                write!(f, "frozen arrow {arrow} has an unfrozen endpoint")
            }
            Violation::DuplicateVertex(v) => write!(f, "vertex {v} declared twice"),
            Violation::DuplicateArrow(a) => write!(f, "arrow {a} declared twice"),
            Violation::UnknownVertex { arrow, vertex } => {
                write!(f, "arrow {arrow} refers to missing vertex index {vertex}")
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid ice quiver: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct InvalidQuiver(pub Vec<Violation>);

impl IceQuiver {
    /// Builds a quiver, rejecting it when [`IceQuiver::validate`] reports anything.
    pub fn new(
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        frozen_vertices: Vec<bool>,
        frozen_arrows: Vec<bool>,
    ) -> Result<Self, InvalidQuiver> {
        let q = Self::new_unchecked(vertices, arrows, frozen_vertices, frozen_arrows);
        let violations = q.validate();
        if violations.is_empty() {
            Ok(q)
        } else {
            Err(InvalidQuiver(violations))
        }
    }

    pub fn new_unchecked(
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        frozen_vertices: Vec<bool>,
        frozen_arrows: Vec<bool>,
    ) -> Self {
        assert_eq!(vertices.len(), frozen_vertices.len());
        assert_eq!(arrows.len(), frozen_arrows.len());
        IceQuiver {
            vertices,
            arrows,
            frozen_vertices,
            frozen_arrows,
        }
    }

    /// Convenience constructor from `(name, tail, head, frozen)` tuples, with
    /// vertices named by their index and the given frozen vertex indices.
    pub fn from_spec(
        vertex_names: &[&str],
        frozen: &[usize],
        arrows: &[(&str, usize, usize, bool)],
    ) -> Result<Self, InvalidQuiver> {
        let vertices = vertex_names.iter().map(|s| s.to_string()).collect();
        let mut fv = vec![false; vertex_names.len()];
        for &v in frozen {
            fv[v] = true;
        }
        let arr = arrows
            .iter()
            .map(|&(n, t, h, _)| Arrow {
                name: n.to_string(),
                tail: t,
                head: h,
            })
            .collect();
        let fa = arrows.iter().map(|a| a.3).collect();
        Self::new(vertices, arr, fv, fa)
    }

    /// All invariant violations; empty iff the quiver is a valid ice quiver.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if self.vertices[..i].contains(v) {
                out.push(Violation::DuplicateVertex(v.clone()));
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if self.arrows[..i].iter().any(|b| b.name == a.name) {
                out.push(Violation::DuplicateArrow(a.name.clone()));
            }
            let n = self.vertices.len();
            if a.tail >= n || a.head >= n {
                out.push(Violation::UnknownVertex {
                    arrow: a.name.clone(),
                    vertex: a.tail.max(a.head),
                });
                continue;
            }
            if a.tail == a.head {
                out.push(Violation::LoopArrow {
                    arrow: a.name.clone(),
                    vertex: self.vertices[a.tail].clone(),
                });
            }
            if self.frozen_arrows[i]
                && !(self.frozen_vertices[a.tail] && self.frozen_vertices[a.head])
            {
                out.push(Violation::FrozenArrowEndpoint {
                    arrow: a.name.clone(),
                });
            }
        }
        out
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn is_frozen_vertex(&self, v: usize) -> bool {
        self.frozen_vertices[v]
    }

    pub fn is_frozen_arrow(&self, a: usize) -> bool {
        self.frozen_arrows[a]
    }

    pub fn frozen_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.frozen_vertices[v]).collect()
    }

    pub fn mutable_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| !self.frozen_vertices[v]).collect()
    }

    pub fn unfrozen_arrows(&self) -> Vec<usize> {
        (0..self.num_arrows()).filter(|&a| !self.frozen_arrows[a]).collect()
    }

    pub fn frozen_arrows(&self) -> Vec<usize> {
        (0..self.num_arrows()).filter(|&a| self.frozen_arrows[a]).collect()
    }

    /// Arrows with tail at `v`.
    pub fn arrows_out(&self, v: usize) -> Vec<usize> {
        (0..self.num_arrows()).filter(|&a| self.arrows[a].tail == v).collect()
    }

    /// Arrows with head at `v`.
    pub fn arrows_in(&self, v: usize) -> Vec<usize> {
        (0..self.num_arrows()).filter(|&a| self.arrows[a].head == v).collect()
    }

    /// The same quiver with a different frozen part.
    pub fn with_frozen(&self, frozen_vertices: Vec<bool>, frozen_arrows: Vec<bool>) -> Result<Self, InvalidQuiver> {
        Self::new(self.vertices.clone(), self.arrows.clone(), frozen_vertices, frozen_arrows)
    }

    /// `(tail, head)` per arrow.
    pub fn arrow_ends(&self) -> Vec<(usize, usize)> {
        self.arrows.iter().map(|a| (a.tail, a.head)).collect()
    }

    pub fn idempotent(&self, v: usize) -> Path {
        Path::idempotent(v)
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        let ar = &self.arrows[a];
        Path {
            tail: ar.tail,
            head: ar.head,
            arrows: vec![a],
        }
    }

    /// Builds a path from arrow names written right-to-left (`"a3 a2 a1"`).
    pub fn path_from_names(&self, names: &[&str]) -> Option<Path> {
        let mut p: Option<Path> = None;
        for n in names.iter().rev() {
            let a = self.arrow_path(self.arrow_index(n)?);
            p = Some(match p {
                None => a,
                Some(prev) => compose(&a, &prev)?,
            });
        }
        p
    }

    pub fn display_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e{}", self.vertices[p.tail]);
        }
        p.arrows
            .iter()
            .rev()
            .map(|&a| self.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn display_element<F: Field>(&self, x: &Element<F>) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        // largest term first
        for (i, (p, c)) in x.terms().iter().rev().enumerate() {
            let neg = c.to_string().starts_with('-');
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                s.push_str(&format!("{mag} "));
            }
            s.push_str(&self.display_path(p));
        }
        s
    }
}

/// A path of the quiver; the empty path carries its vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Path {
    pub tail: usize,
    pub head: usize,
    /// Traversal order, first arrow first.
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn idempotent(v: usize) -> Self {
        Path {
            tail: v,
            head: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        !self.arrows.is_empty() && self.tail == self.head
    }

    /// Builds a path from a traversal-order arrow word; `None` if not composable.
    pub fn from_word(word: &[usize], ends: &[(usize, usize)]) -> Option<Path> {
        let first = *word.first()?;
        for w in word.windows(2) {
            if ends[w[0]].1 != ends[w[1]].0 {
                return None;
            }
        }
        Some(Path {
            tail: ends[first].0,
            head: ends[*word.last().unwrap()].1,
            arrows: word.to_vec(),
        })
    }

    /// Sub-path covering `arrows[range]`, as a path with correct endpoints.
    pub fn slice(&self, from: usize, to: usize, ends: &[(usize, usize)]) -> Path {
        if from == to {
            let v = if from == 0 {
                self.tail
            } else {
                ends[self.arrows[from - 1]].1
            };
            return Path::idempotent(v);
        }
        Path {
            tail: ends[self.arrows[from]].0,
            head: ends[self.arrows[to - 1]].1,
            arrows: self.arrows[from..to].to_vec(),
        }
    }

    /// Total degree under a per-arrow weight.
    pub fn weight(&self, weights: &[u32]) -> u32 {
        self.arrows.iter().map(|&a| weights[a]).sum()
    }
}

impl Ord for Path {
    /// Length first, then lexicographic in traversal order by arrow index.
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.tail.cmp(&other.tail))
            .then_with(|| self.head.cmp(&other.head))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `p·q` (first `q`, then `p`), or `None` when `head(q) != tail(p)`.
pub fn compose(p: &Path, q: &Path) -> Option<Path> {
    if q.head != p.tail {
        return None;
    }
    let mut arrows = q.arrows.clone();
    arrows.extend_from_slice(&p.arrows);
    Some(Path {
        tail: q.tail,
        head: p.head,
        arrows,
    })
}

/// Finite linear combination of paths with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element<F> {
    terms: BTreeMap<Path, F>,
}

impl<F: Field> Default for Element<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Element<F> {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_path(p: Path) -> Self {
        Self::monomial(p, F::one())
    }

    pub fn monomial(p: Path, c: F) -> Self {
        let mut e = Self::zero();
        e.add_term(p, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Path, F)>) -> Self {
        let mut e = Self::zero();
        for (p, c) in terms {
            e.add_term(p, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Path, F> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Path, F> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, p: &Path) -> F {
        self.terms.get(p).cloned().unwrap_or_else(F::zero)
    }

    pub fn add_term(&mut self, p: Path, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&p);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    /// Largest path under the length-lexicographic order, with its coefficient.
    pub fn leading(&self) -> Option<(&Path, &F)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(p, v)| (p.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), -c.clone());
        }
        out
    }

    /// Bilinear extension of [`compose`]: `self · other`.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(r) = compose(p, q) {
                    out.add_term(r, a.clone() * b.clone());
                }
            }
        }
        out
    }

    /// Common `(tail, head)` of all terms, if the element is endpoint-homogeneous.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let ends = (first.tail, first.head);
        it.all(|p| (p.tail, p.head) == ends).then_some(ends)
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|p| p.len()).max().unwrap_or(0)
    }

    pub fn max_weight(&self, weights: &[u32]) -> u32 {
        self.terms.keys().map(|p| p.weight(weights)).max().unwrap_or(0)
    }

    /// True when every term has the same weight.
    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        let mut it = self.terms.keys().map(|p| p.weight(weights));
        match it.next() {
            None => true,
            Some(w) => it.all(|x| x == w),
        }
    }
}
