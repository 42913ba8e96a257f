//! Noncommutative Gröbner bases for two-sided ideals of a path algebra.
//!
//! The monomial order is the one on [`Path`]: length first, then
//! lexicographic on the traversal-order arrow indices. Completion processes
//! pending elements in order of their weight (a positive per-arrow grading,
//! path length by default) and stops at a weight cap.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap, HashSet};

use serde::Serialize;

use crate::field::Field;
use crate::quiver::{Element, Path};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GbError {
    #[error("degree cap {cap} is below the relation degree {degree}")]
    CapBelowRelationDegree { cap: u32, degree: u32 },
    #[error("relation {index} mixes paths with different endpoints")]
    NotEndpointHomogeneous { index: usize },
    #[error("relation {index} is not homogeneous for the grading")]
    InhomogeneousRelation { index: usize },
    #[error("arrow weights must be positive")]
    NonPositiveWeight,
    #[error("degree {degree} is outside the certified range ({certified})")]
    OutsideCertifiedRange { degree: u32, certified: Certification },
}

/// Length-then-lexicographic order on paths, ties broken by arrow index.
///
/// The order itself is fixed; the `weights` only steer the order in which
/// overlaps are processed and where completion is truncated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialOrder {
    pub weights: Vec<u32>,
}

impl MonomialOrder {
    pub fn length_lex(num_arrows: usize) -> Self {
        MonomialOrder {
            weights: vec![1; num_arrows],
        }
    }

    pub fn graded(weights: Vec<u32>) -> Self {
        MonomialOrder { weights }
    }

    pub fn is_length(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GbStatus {
    Complete,
    TruncatedAtDegree(u32),
}

/// Degrees for which normal forms are known to be correct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Certification {
    All,
    UpTo(u32),
    Uncertified,
}

impl std::fmt::Display for Certification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Certification::All => write!(f, "all degrees"),
            Certification::UpTo(d) => write!(f, "degrees <= {d}"),
            Certification::Uncertified => write!(f, "uncertified"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GbOptions {
    pub order: MonomialOrder,
    pub degree_cap: u32,
    /// Use the direct minimisation for purely monomial inputs.
    pub monomial_fast_path: bool,
}

impl GbOptions {
    pub fn new(order: MonomialOrder, degree_cap: u32) -> Self {
        GbOptions {
            order,
            degree_cap,
            monomial_fast_path: true,
        }
    }
}

/// A reduced Gröbner basis: monic, interreduced, with a completion status.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F> {
    elements: Vec<Element<F>>,
    lead_index: HashMap<Path, usize>,
    lead_lengths: BTreeSet<usize>,
    order: MonomialOrder,
    status: GbStatus,
    homogeneous: bool,
    ends: Vec<(usize, usize)>,
    num_vertices: usize,
}

/// Finiteness of the normal-word basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Finiteness {
    Finite(usize),
    InfiniteWithGrowth,
    UnknownBeyond(u32),
}

#[derive(Clone, Debug)]
pub struct NormalWordBasis {
    /// Sorted by `(tail, head, length, word)`.
    pub words: Vec<Path>,
    pub verdict: Finiteness,
}

impl NormalWordBasis {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Words of each length, in length order.
    pub fn by_length(&self) -> BTreeMap<usize, Vec<&Path>> {
        let mut m: BTreeMap<usize, Vec<&Path>> = BTreeMap::new();
        for w in &self.words {
            m.entry(w.len()).or_default().push(w);
        }
        for v in m.values_mut() {
            v.sort();
        }
        m
    }
}

/// Multiplies `left · x · right` where `left` is applied last.
fn sandwich<F: Field>(left: &Path, x: &Element<F>, right: &Path, c: &F) -> Element<F> {
    let mut out = Element::zero();
    for (p, v) in x.terms() {
        let mut arrows = Vec::with_capacity(right.len() + p.len() + left.len());
        arrows.extend_from_slice(&right.arrows);
        arrows.extend_from_slice(&p.arrows);
        arrows.extend_from_slice(&left.arrows);
        out.add_term(
            Path {
                tail: right.tail,
                head: left.head,
                arrows,
            },
            v.clone() * c.clone(),
        );
    }
    out
}

fn monic<F: Field>(x: &Element<F>) -> Element<F> {
    let c = x.leading().expect("nonzero").1.inv();
    x.scale(&c)
}

/// Working state of the completion; shared by the reducer and the final basis.
struct Reducer<F> {
    slots: Vec<Option<Element<F>>>,
    lead_index: HashMap<Path, usize>,
    lead_lengths: BTreeMap<usize, usize>,
    ends: Vec<(usize, usize)>,
}

impl<F: Field> Reducer<F> {
    fn new(ends: Vec<(usize, usize)>) -> Self {
        Reducer {
            slots: Vec::new(),
            lead_index: HashMap::new(),
            lead_lengths: BTreeMap::new(),
            ends,
        }
    }

    /// Leftmost-shortest occurrence of a leading word inside `p`:
    /// `(start, end, slot)` so that `p.arrows[start..end]` is that word.
    fn find_divisor(&self, p: &Path) -> Option<(usize, usize, usize)> {
        find_divisor_in(&self.lead_index, self.lead_lengths.keys().copied(), p, &self.ends)
    }

    fn insert(&mut self, g: Element<F>) -> usize {
        let lw = g.leading().unwrap().0.clone();
        *self.lead_lengths.entry(lw.len()).or_insert(0) += 1;
        let i = self.slots.len();
        self.lead_index.insert(lw, i);
        self.slots.push(Some(g));
        i
    }

    fn remove(&mut self, i: usize) -> Element<F> {
        let g = self.slots[i].take().unwrap();
        let lw = g.leading().unwrap().0;
        self.lead_index.remove(lw);
        let c = self.lead_lengths.get_mut(&lw.len()).unwrap();
        *c -= 1;
        if *c == 0 {
            self.lead_lengths.remove(&lw.len());
        }
        g
    }

    fn reduce(&self, x: &Element<F>) -> Element<F> {
        reduce_with(x, |p| {
            self.find_divisor(p)
                .map(|(s, e, i)| (s, e, self.slots[i].as_ref().unwrap()))
        }, &self.ends)
    }
}

fn find_divisor_in(
    index: &HashMap<Path, usize>,
    lengths: impl Iterator<Item = usize> + Clone,
    p: &Path,
    ends: &[(usize, usize)],
) -> Option<(usize, usize, usize)> {
    let n = p.len();
    for start in 0..=n {
        for l in lengths.clone() {
            if start + l > n {
                break;
            }
            let sub = p.slice(start, start + l, ends);
            if let Some(&i) = index.get(&sub) {
                return Some((start, start + l, i));
            }
        }
    }
    None
}

/// Full reduction, always rewriting the largest reducible term first.
fn reduce_with<'a, F: Field>(
    x: &Element<F>,
    divisor: impl Fn(&Path) -> Option<(usize, usize, &'a Element<F>)>,
    ends: &[(usize, usize)],
) -> Element<F> {
    let mut work = x.clone().into_terms();
    let mut done = Element::zero();
    while let Some((p, c)) = work.pop_last() {
        match divisor(&p) {
            None => done.add_term(p, c),
            Some((s, e, g)) => {
                let left = p.slice(e, p.len(), ends);
                let right = p.slice(0, s, ends);
                // g is monic with leading word p[s..e]; subtract c·left·g·right
                let t = sandwich(&left, g, &right, &-c.clone());
                for (q, v) in t.into_terms() {
                    if q == p {
                        continue;
                    }
                    let vanished = {
                        let entry = work.entry(q.clone()).or_insert_with(F::zero);
                        *entry = entry.clone() + v;
                        entry.is_zero()
                    };
                    if vanished {
                        work.remove(&q);
                    }
                }
            }
        }
    }
    done
}

/// Overlap S-elements between `f` and `g`: a proper suffix of `lw(f)` equal
/// to a proper prefix of `lw(g)` (traversal order). Returns `(weight, S)`.
fn overlaps<F: Field>(
    f: &Element<F>,
    g: &Element<F>,
    weights: &[u32],
    ends: &[(usize, usize)],
) -> Vec<(u32, Element<F>)> {
    let u = f.leading().unwrap().0;
    let v = g.leading().unwrap().0;
    let mut out = Vec::new();
    if u.is_empty() || v.is_empty() {
        return out;
    }
    for k in 1..u.len().min(v.len()) {
        // u = A ++ B, v = B ++ C with |B| = k
        if u.arrows[u.len() - k..] != v.arrows[..k] {
            continue;
        }
        let a = u.slice(0, u.len() - k, ends);
        let c = v.slice(k, v.len(), ends);
        let word_weight = u.weight(weights) + c.weight(weights);
        let one = F::one();
        let fc = sandwich(&c, f, &Path::idempotent(u.tail), &one);
        let ag = sandwich(&Path::idempotent(v.head), g, &a, &one);
        out.push((word_weight, fc.sub(&ag)));
    }
    out
}

fn is_monomial<F: Field>(x: &Element<F>) -> bool {
    x.num_terms() == 1
}

/// Completes `relations` to a reduced Gröbner basis.
pub fn buchberger<F: Field>(
    relations: &[Element<F>],
    ends: &[(usize, usize)],
    num_vertices: usize,
    options: &GbOptions,
) -> Result<GroebnerBasis<F>, GbError> {
    let weights = &options.order.weights;
    if weights.contains(&0) {
        return Err(GbError::NonPositiveWeight);
    }
    let mut homogeneous = true;
    for (i, r) in relations.iter().enumerate() {
        if !r.is_zero() && r.endpoints().is_none() {
            return Err(GbError::NotEndpointHomogeneous { index: i });
        }
        let d = r.max_weight(weights);
        if d > options.degree_cap {
            return Err(GbError::CapBelowRelationDegree {
                cap: options.degree_cap,
                degree: d,
            });
        }
        homogeneous &= r.is_homogeneous(weights);
    }

    if options.monomial_fast_path && relations.iter().all(|r| r.is_zero() || is_monomial(r)) {
        return Ok(monomial_basis(relations, ends, num_vertices, options.order.clone()));
    }

    let mut red: Reducer<F> = Reducer::new(ends.to_vec());
    let mut heap: BinaryHeap<(Reverse<u32>, Reverse<usize>)> = BinaryHeap::new();
    let mut store: Vec<Option<Element<F>>> = Vec::new();
    let push = |heap: &mut BinaryHeap<_>, store: &mut Vec<Option<Element<F>>>, w: u32, x: Element<F>| {
        store.push(Some(x));
        heap.push((Reverse(w), Reverse(store.len() - 1)));
    };
    for r in relations {
        if !r.is_zero() {
            push(&mut heap, &mut store, r.max_weight(weights), r.clone());
        }
    }
    let mut truncated = false;

    while let Some((Reverse(_w), Reverse(k))) = heap.pop() {
        let h = store[k].take().unwrap();
        let r = red.reduce(&h);
        if r.is_zero() {
            continue;
        }
        let r = monic(&r);
        let lw = r.leading().unwrap().0.clone();
        // elements whose leading word contains lw must be re-reduced
        let contains: Vec<usize> = red
            .slots
            .iter()
            .enumerate()
            .filter_map(|(i, g)| {
                let g = g.as_ref()?;
                let glw = g.leading().unwrap().0;
                contains_subword(glw, &lw, ends).then_some(i)
            })
            .collect();
        for i in contains {
            let g = red.remove(i);
            let w = g.max_weight(weights);
            push(&mut heap, &mut store, w, g);
        }
        let idx = red.insert(r);
        let new = red.slots[idx].clone().unwrap();
        let mut pending = Vec::new();
        for (i, g) in red.slots.iter().enumerate() {
            let Some(g) = g else { continue };
            pending.extend(overlaps(&new, g, weights, ends));
            if i != idx {
                pending.extend(overlaps(g, &new, weights, ends));
            }
        }
        for (w, s) in pending {
            if s.is_zero() {
                continue;
            }
            let sw = s.max_weight(weights).max(w);
            if sw > options.degree_cap {
                truncated = true;
                continue;
            }
            push(&mut heap, &mut store, sw, s);
        }
    }

    // interreduce tails
    let gens: Vec<Element<F>> = red.slots.iter().flatten().cloned().collect();
    let mut elements = Vec::with_capacity(gens.len());
    for g in &gens {
        let (lw, c) = g.leading().unwrap();
        let tail = g.sub(&Element::monomial(lw.clone(), c.clone()));
        let mut out = red.reduce(&tail);
        out.add_term(lw.clone(), c.clone());
        elements.push(out);
    }
    let status = if truncated {
        GbStatus::TruncatedAtDegree(options.degree_cap)
    } else {
        GbStatus::Complete
    };
    Ok(GroebnerBasis::from_parts(elements, options.order.clone(), status, homogeneous, ends, num_vertices))
}

fn contains_subword(haystack: &Path, needle: &Path, ends: &[(usize, usize)]) -> bool {
    if needle.is_empty() {
        // an idempotent divides every path through its vertex
        return haystack.tail == needle.tail || haystack.head == needle.tail || {
            let n = haystack.len();
            (1..n).any(|i| haystack.slice(i, i, ends).tail == needle.tail)
        };
    }
    haystack.arrows.windows(needle.len()).any(|w| w == needle.arrows.as_slice())
}

/// A monomial ideal is its own Gröbner basis once redundant words are removed.
fn monomial_basis<F: Field>(
    relations: &[Element<F>],
    ends: &[(usize, usize)],
    num_vertices: usize,
    order: MonomialOrder,
) -> GroebnerBasis<F> {
    let mut words: Vec<Path> = relations
        .iter()
        .filter_map(|r| r.leading().map(|(p, _)| p.clone()))
        .collect();
    words.sort();
    words.dedup();
    let mut kept: Vec<Path> = Vec::new();
    for w in words {
        if !kept.iter().any(|k| contains_subword(&w, k, ends)) {
            kept.push(w);
        }
    }
    let elements = kept.into_iter().map(Element::from_path).collect();
    GroebnerBasis::from_parts(elements, order, GbStatus::Complete, true, ends, num_vertices)
}

impl<F: Field> GroebnerBasis<F> {
    fn from_parts(
        mut elements: Vec<Element<F>>,
        order: MonomialOrder,
        status: GbStatus,
        homogeneous: bool,
        ends: &[(usize, usize)],
        num_vertices: usize,
    ) -> Self {
        elements.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
        let mut lead_index = HashMap::new();
        let mut lead_lengths = BTreeSet::new();
        for (i, g) in elements.iter().enumerate() {
            let lw = g.leading().unwrap().0.clone();
            lead_lengths.insert(lw.len());
            lead_index.insert(lw, i);
        }
        GroebnerBasis {
            elements,
            lead_index,
            lead_lengths,
            order,
            status,
            homogeneous,
            ends: ends.to_vec(),
            num_vertices,
        }
    }

    pub fn elements(&self) -> &[Element<F>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn status(&self) -> GbStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == GbStatus::Complete
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn ends(&self) -> &[(usize, usize)] {
        &self.ends
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// True when every input relation was homogeneous for the order's weights.
    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn leading_words(&self) -> Vec<&Path> {
        self.elements.iter().map(|g| g.leading().unwrap().0).collect()
    }

    pub fn max_leading_len(&self) -> usize {
        self.lead_lengths.iter().next_back().copied().unwrap_or(0)
    }

    /// Range of weights (in the order's grading) on which normal forms are exact.
    ///
    /// A truncated completion of homogeneous relations is exact up to its cap;
    /// with inhomogeneous relations nothing is claimed.
    pub fn certification(&self) -> Certification {
        match self.status {
            GbStatus::Complete => Certification::All,
            GbStatus::TruncatedAtDegree(d) if self.homogeneous => Certification::UpTo(d),
            GbStatus::TruncatedAtDegree(_) => Certification::Uncertified,
        }
    }

    /// Whether normal forms are certified for weights up to `cap` under `weights`.
    pub fn covers(&self, weights: &[u32], cap: u32) -> bool {
        match self.certification() {
            Certification::All => true,
            Certification::Uncertified => false,
            // weight >= length, so a length certificate covers any grading
            Certification::UpTo(d) => (self.order.weights == weights || self.order.is_length()) && cap <= d,
        }
    }

    pub fn is_normal(&self, p: &Path) -> bool {
        self.divisor(p).is_none()
    }

    fn divisor(&self, p: &Path) -> Option<(usize, usize, usize)> {
        find_divisor_in(&self.lead_index, self.lead_lengths.iter().copied(), p, &self.ends)
    }

    /// Normal form without a certification check.
    pub fn reduce(&self, x: &Element<F>) -> Element<F> {
        reduce_with(
            x,
            |p| self.divisor(p).map(|(s, e, i)| (s, e, &self.elements[i])),
            &self.ends,
        )
    }

    /// Normal form of a path, which is the common case.
    pub fn reduce_path(&self, p: &Path) -> Element<F> {
        if self.is_normal(p) {
            return Element::from_path(p.clone());
        }
        self.reduce(&Element::from_path(p.clone()))
    }

    /// Normal form, refusing inputs beyond the certified range.
    pub fn normal_form(&self, x: &Element<F>) -> Result<Element<F>, GbError> {
        let d = x.max_weight(&self.order.weights);
        match self.certification() {
            Certification::All => {}
            Certification::UpTo(c) if d <= c => {}
            certified => return Err(GbError::OutsideCertifiedRange { degree: d, certified }),
        }
        Ok(self.reduce(x))
    }

    /// Normal words, with a finiteness verdict.
    ///
    /// Words are listed up to `length_cap`, except that a Finite verdict always
    /// comes with the whole (finite) basis.
    pub fn enumerate_basis(&self, length_cap: usize) -> NormalWordBasis {
        let verdict_kind = match self.status {
            GbStatus::Complete => Some(self.ufnarovski_finite()),
            GbStatus::TruncatedAtDegree(_) => None,
        };
        let cap = match verdict_kind {
            Some(true) => usize::MAX,
            _ => length_cap,
        };
        let mut words = self.normal_words_upto(cap, |_| true);
        words.sort_by(|a, b| (a.tail, a.head, a).cmp(&(b.tail, b.head, b)));
        let verdict = match (verdict_kind, self.status) {
            (Some(true), _) => Finiteness::Finite(words.len()),
            (Some(false), _) => Finiteness::InfiniteWithGrowth,
            (None, GbStatus::TruncatedAtDegree(d)) => Finiteness::UnknownBeyond(d),
            (None, GbStatus::Complete) => unreachable!(),
        };
        NormalWordBasis { words, verdict }
    }

    /// Breadth-first growth of normal words, extending on the head side.
    fn normal_words_upto(&self, cap: usize, keep: impl Fn(&Path) -> bool) -> Vec<Path> {
        let mut out = Vec::new();
        let mut layer: Vec<Path> = (0..self.num_vertices)
            .map(Path::idempotent)
            .filter(|p| self.is_normal(p))
            .collect();
        let mut len = 0;
        while !layer.is_empty() {
            out.extend(layer.iter().cloned());
            if len == cap {
                break;
            }
            let mut next = Vec::new();
            for w in &layer {
                for (a, &(t, h)) in self.ends.iter().enumerate() {
                    if t != w.head {
                        continue;
                    }
                    let mut arrows = w.arrows.clone();
                    arrows.push(a);
                    let p = Path {
                        tail: w.tail,
                        head: h,
                        arrows,
                    };
                    if self.suffix_normal(&p) && keep(&p) {
                        next.push(p);
                    }
                }
            }
            layer = next;
            len += 1;
        }
        out
    }

    /// Normality of `p` given that `p` minus its last arrow is normal.
    fn suffix_normal(&self, p: &Path) -> bool {
        let n = p.len();
        for &l in &self.lead_lengths {
            if l > n {
                break;
            }
            let sub = p.slice(n - l, n, &self.ends);
            if self.lead_index.contains_key(&sub) {
                return false;
            }
        }
        true
    }

    /// Cycle detection on the graph of normal words of length `L`.
    fn ufnarovski_finite(&self) -> bool {
        let l = self.max_leading_len().saturating_sub(1).max(1);
        let nodes: Vec<Path> = self
            .normal_words_upto(l, |_| true)
            .into_iter()
            .filter(|p| p.len() == l)
            .collect();
        let index: HashMap<&[usize], usize> = nodes.iter().enumerate().map(|(i, p)| (p.arrows.as_slice(), i)).collect();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        for (i, u) in nodes.iter().enumerate() {
            for (a, &(t, h)) in self.ends.iter().enumerate() {
                if t != u.head {
                    continue;
                }
                let mut arrows = u.arrows.clone();
                arrows.push(a);
                let p = Path {
                    tail: u.tail,
                    head: h,
                    arrows,
                };
                if !self.is_normal(&p) {
                    continue;
                }
                if let Some(&j) = index.get(&p.arrows[1..]) {
                    adj[i].push(j);
                }
            }
        }
        !has_cycle(&adj)
    }

    /// Number of normal words per `(tail, head, degree)` up to `degree_cap`.
    pub fn graded_dimensions(&self, weights: &[u32], degree_cap: u32) -> Result<BTreeMap<(usize, usize, u32), usize>, GbError> {
        if weights.contains(&0) {
            return Err(GbError::NonPositiveWeight);
        }
        for (i, g) in self.elements.iter().enumerate() {
            if !g.is_homogeneous(weights) {
                return Err(GbError::InhomogeneousRelation { index: i });
            }
        }
        if !self.covers(weights, degree_cap) {
            return Err(GbError::OutsideCertifiedRange {
                degree: degree_cap,
                certified: self.certification(),
            });
        }
        let mut table = BTreeMap::new();
        for p in self.normal_words_upto(degree_cap as usize, |p| p.weight(weights) <= degree_cap) {
            *table.entry((p.tail, p.head, p.weight(weights))).or_insert(0) += 1;
        }
        Ok(table)
    }

    /// Normal words with tail `v` and weight exactly `degree`, sorted.
    pub fn words_from(&self, v: usize, weights: &[u32], degree: u32) -> Vec<Path> {
        let mut out: Vec<Path> = Vec::new();
        let mut layer = vec![Path::idempotent(v)];
        if !self.is_normal(&layer[0]) {
            return out;
        }
        while !layer.is_empty() {
            let mut next = Vec::new();
            for w in layer {
                let ww = w.weight(weights);
                if ww == degree {
                    out.push(w);
                    continue;
                }
                for (a, &(t, h)) in self.ends.iter().enumerate() {
                    if t != w.head || ww + weights[a] > degree {
                        continue;
                    }
                    let mut arrows = w.arrows.clone();
                    arrows.push(a);
                    let p = Path {
                        tail: w.tail,
                        head: h,
                        arrows,
                    };
                    if self.suffix_normal(&p) {
                        next.push(p);
                    }
                }
            }
            layer = next;
        }
        out.sort();
        out
    }
}

fn has_cycle(adj: &[Vec<usize>]) -> bool {
    // iterative three-colour DFS
    let n = adj.len();
    let mut colour = vec![0u8; n];
    for s in 0..n {
        if colour[s] != 0 {
            continue;
        }
        let mut stack = vec![(s, 0usize)];
        colour[s] = 1;
        while let Some(&mut (u, ref mut k)) = stack.last_mut() {
            if *k < adj[u].len() {
                let v = adj[u][*k];
                *k += 1;
                match colour[v] {
                    0 => {
                        colour[v] = 1;
                        stack.push((v, 0));
                    }
                    1 => return true,
                    _ => {}
                }
            } else {
                colour[u] = 2;
                stack.pop();
            }
        }
    }
    false
}

/// Words that survive, as a set, for quick membership tests.
pub fn word_set(basis: &NormalWordBasis) -> HashSet<Path> {
    basis.words.iter().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::quiver::IceQuiver;
    use num_traits::One;

    fn triangle(frozen: bool) -> IceQuiver {
        if frozen {
            IceQuiver::from_spec(&["1", "2", "3"], &[0, 1], &[("a1", 0, 1, true), ("a2", 1, 2, false), ("a3", 2, 0, false)])
        } else {
            IceQuiver::from_spec(&["1", "2", "3"], &[], &[("a1", 0, 1, false), ("a2", 1, 2, false), ("a3", 2, 0, false)])
        }
        .unwrap()
    }

    fn rel(q: &IceQuiver, names: &[&str]) -> Element<Q> {
        Element::from_path(q.path_from_names(names).unwrap())
    }

    fn gb(q: &IceQuiver, rels: &[Element<Q>], fast: bool) -> GroebnerBasis<Q> {
        let mut o = GbOptions::new(MonomialOrder::length_lex(q.num_arrows()), 10);
        o.monomial_fast_path = fast;
        buchberger(rels, &q.arrow_ends(), q.num_vertices(), &o).unwrap()
    }

    #[test]
    fn triangle_ice_relations_are_already_a_basis() {
        let q = triangle(true);
        let rels = vec![rel(&q, &["a1", "a3"]), rel(&q, &["a2", "a1"])];
        for fast in [true, false] {
            let g = gb(&q, &rels, fast);
            assert_eq!(g.len(), 2);
            assert!(g.is_complete());
            let b = g.enumerate_basis(5);
            assert_eq!(b.verdict, Finiteness::Finite(7));
            let x = Element::from_path(q.path_from_names(&["a3", "a2", "a1"]).unwrap());
            assert!(g.normal_form(&x).unwrap().is_zero());
            let y = Element::from_path(q.path_from_names(&["a3", "a2"]).unwrap());
            assert_eq!(g.normal_form(&y).unwrap(), y);
        }
    }

    #[test]
    fn plain_triangle_has_six_words() {
        let q = triangle(false);
        let rels = vec![rel(&q, &["a1", "a3"]), rel(&q, &["a2", "a1"]), rel(&q, &["a3", "a2"])];
        let g = gb(&q, &rels, false);
        assert_eq!(g.enumerate_basis(5).verdict, Finiteness::Finite(6));
    }

    #[test]
    fn empty_and_cancelling_relations() {
        let q = triangle(true);
        let g = gb(&q, &[], true);
        assert!(g.is_empty() && g.is_complete());
        assert_eq!(g.enumerate_basis(4).verdict, Finiteness::InfiniteWithGrowth);
        let x = rel(&q, &["a3", "a2", "a1"]);
        let g = gb(&q, &[x.sub(&x)], false);
        assert!(g.is_empty());
        let e1 = Element::<Q>::from_path(q.idempotent(0));
        assert_eq!(g.normal_form(&e1).unwrap(), e1);
    }

    #[test]
    fn single_arrow_quiver() {
        let q = IceQuiver::from_spec(&["1", "2"], &[], &[("a", 0, 1, false)]).unwrap();
        let g: GroebnerBasis<Q> = gb(&q, &[], true);
        assert_eq!(g.enumerate_basis(3).verdict, Finiteness::Finite(3));
    }

    #[test]
    fn commutativity_relation_completes() {
        // square: a:1->2, b:2->4, c:1->3, d:3->4 with ba - dc and a zero relation
        let q = IceQuiver::from_spec(
            &["1", "2", "3", "4"],
            &[],
            &[("a", 0, 1, false), ("b", 1, 3, false), ("c", 0, 2, false), ("d", 2, 3, false)],
        )
        .unwrap();
        let r = rel(&q, &["b", "a"]).sub(&rel(&q, &["d", "c"]));
        let g = gb(&q, &[r], false);
        assert!(g.is_complete());
        let b = g.enumerate_basis(4);
        assert_eq!(b.verdict, Finiteness::Finite(4 + 4 + 1));
    }

    #[test]
    fn overlap_generates_new_element() {
        // a:1->2, b:2->1 with aba = a, so bab reduces and the ideal needs completion
        let q = IceQuiver::from_spec(&["1", "2"], &[], &[("a", 0, 1, false), ("b", 1, 0, false)]).unwrap();
        let r = rel(&q, &["a", "b", "a"]).sub(&rel(&q, &["a"]));
        let r2 = rel(&q, &["b", "a", "b"]).sub(&rel(&q, &["b"]));
        let g = gb(&q, &[r, r2], false);
        assert!(g.is_complete());
        for x in g.elements() {
            assert!(g.reduce(x).is_zero());
        }
        // ab and ba become idempotent-like; abab = ab
        let abab = rel(&q, &["a", "b", "a", "b"]);
        let ab = rel(&q, &["a", "b"]);
        assert_eq!(g.normal_form(&abab).unwrap(), g.normal_form(&ab).unwrap());
    }

    #[test]
    fn truncation_certifies_homogeneous_input_only() {
        let q = IceQuiver::from_spec(&["1", "2"], &[], &[("a", 0, 1, false), ("b", 1, 0, false), ("c", 1, 0, false)]).unwrap();
        // bab - cac forces an infinite basis (overlaps keep producing words)
        let r = rel(&q, &["b", "a", "b"]).sub(&rel(&q, &["c", "a", "c"]));
        let mut o = GbOptions::new(MonomialOrder::length_lex(3), 6);
        o.monomial_fast_path = false;
        let g: GroebnerBasis<Q> = buchberger(&[r], &q.arrow_ends(), 2, &o).unwrap();
        if let GbStatus::TruncatedAtDegree(d) = g.status() {
            assert_eq!(d, 6);
            assert_eq!(g.certification(), Certification::UpTo(6));
            let long = Element::<Q>::from_path(Path::from_word(&[0, 1, 0, 1, 0, 1, 0], &q.arrow_ends()).unwrap());
            assert!(matches!(g.normal_form(&long), Err(GbError::OutsideCertifiedRange { .. })));
        }
        let o = GbOptions::new(MonomialOrder::length_lex(3), 2);
        let r = rel(&q, &["b", "a", "b"]);
        assert_eq!(
            buchberger::<Q>(&[r], &q.arrow_ends(), 2, &o).unwrap_err(),
            GbError::CapBelowRelationDegree { cap: 2, degree: 3 }
        );
    }

    #[test]
    fn graded_counts_for_triangle() {
        let q = triangle(true);
        let rels = vec![rel(&q, &["a1", "a3"]), rel(&q, &["a2", "a1"])];
        let g = gb(&q, &rels, true);
        let t = g.graded_dimensions(&[1, 1, 1], 3).unwrap();
        assert_eq!(t.get(&(1, 0, 2)), Some(&1));
        let deg0: usize = t.iter().filter(|(k, _)| k.2 == 0).map(|(_, v)| *v).sum();
        assert_eq!(deg0, 3);
        assert_eq!(t.values().sum::<usize>(), 7);
        assert_eq!(g.words_from(1, &[1, 1, 1], 2).len(), 1);
    }

    #[test]
    fn inhomogeneous_grading_rejected() {
        let q = triangle(true);
        let r = rel(&q, &["a3", "a2", "a1"]).sub(&Element::monomial(q.idempotent(0), Q::one()));
        let g = gb(&q, &[r], false);
        assert_eq!(g.graded_dimensions(&[1, 1, 1], 2), Err(GbError::InhomogeneousRelation { index: 0 }));
    }
}
