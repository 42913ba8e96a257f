//! Cyclic derivatives, the splitting operator Δ, Jacobian relations and the
//! search for a positive grading making the potential homogeneous.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::field::Field;
use crate::potential::Potential;
use crate::quiver::{Element, IceQuiver, Path};

/// `∂_a` of a linear combination of cycles.
pub fn cyclic_derivative<F: Field>(q: &IceQuiver, w: &Potential<F>, a: usize) -> Element<F> {
    cyclic_derivative_of(q, w.element(), a)
}

/// `∂_a` applied term-wise; terms that are not cycles are ignored.
pub fn cyclic_derivative_of<F: Field>(q: &IceQuiver, x: &Element<F>, a: usize) -> Element<F> {
    let ar = q.arrow(a);
    let mut out = Element::zero();
    for (p, c) in x.terms() {
        if !p.is_cycle() {
            continue;
        }
        for (i, &b) in p.arrows.iter().enumerate() {
            if b != a {
                continue;
            }
            let mut arrows = p.arrows[i + 1..].to_vec();
            arrows.extend_from_slice(&p.arrows[..i]);
            out.add_term(
                Path {
                    tail: ar.head,
                    head: ar.tail,
                    arrows,
                },
                c.clone(),
            );
        }
    }
    out
}

/// One summand `c · left ⊗ arrow ⊗ right` of an element of `A ⊗ 𝕂Q₁ ⊗ A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorTerm<F> {
    /// Applied after the arrow; starts at the arrow's head.
    pub left: Path,
    pub arrow: usize,
    /// Applied before the arrow; ends at the arrow's tail.
    pub right: Path,
    pub coeff: F,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorTriple<F> {
    pub terms: Vec<TensorTerm<F>>,
}

impl<F: Field> TensorTriple<F> {
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Multiplies the three factors back together.
    pub fn collapse(&self) -> Element<F> {
        let mut out = Element::zero();
        for t in &self.terms {
            let mut arrows = t.right.arrows.clone();
            arrows.push(t.arrow);
            arrows.extend_from_slice(&t.left.arrows);
            out.add_term(
                Path {
                    tail: t.right.tail,
                    head: t.left.head,
                    arrows,
                },
                t.coeff.clone(),
            );
        }
        out
    }
}

/// `Δ_a(x)`: every occurrence of `a` split into what comes after and before.
pub fn delta<F: Field>(q: &IceQuiver, x: &Element<F>, a: usize) -> TensorTriple<F> {
    let ends = q.arrow_ends();
    let mut terms = Vec::new();
    for (p, c) in x.terms() {
        for (i, &b) in p.arrows.iter().enumerate() {
            if b == a {
                terms.push(TensorTerm {
                    left: p.slice(i + 1, p.len(), &ends),
                    arrow: a,
                    right: p.slice(0, i, &ends),
                    coeff: c.clone(),
                });
            }
        }
    }
    TensorTriple { terms }
}

/// `(a, ∂_a W)` for every unfrozen arrow with a nonzero derivative.
pub fn jacobian_relations<F: Field>(q: &IceQuiver, w: &Potential<F>) -> Vec<(usize, Element<F>)> {
    q.unfrozen_arrows()
        .into_iter()
        .map(|a| (a, cyclic_derivative(q, w, a)))
        .filter(|(_, r)| !r.is_zero())
        .collect()
}

/// The two expressions `Σ_{a out of v} (∂_a W)a` and `Σ_{b into v} b(∂_b W)`,
/// computed independently in the path algebra.
pub fn vertex_potential_identity<F: Field>(q: &IceQuiver, w: &Potential<F>, v: usize) -> (Element<F>, Element<F>) {
    let mut lhs = Element::zero();
    for a in q.arrows_out(v) {
        let d = cyclic_derivative(q, w, a);
        lhs = lhs.add(&d.multiply(&Element::from_path(q.arrow_path(a))));
    }
    let mut rhs = Element::zero();
    for b in q.arrows_in(v) {
        let d = cyclic_derivative(q, w, b);
        rhs = rhs.add(&Element::from_path(q.arrow_path(b)).multiply(&d));
    }
    (lhs, rhs)
}

/// Positive integer arrow degrees with every potential term of degree `total`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grading {
    pub degrees: Vec<u32>,
    pub total: u32,
}

impl Grading {
    pub fn by_length(q: &IceQuiver, total: u32) -> Self {
        Grading {
            degrees: vec![1; q.num_arrows()],
            total,
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Whether every term of `w` has degree `total`.
    pub fn makes_homogeneous<F: Field>(&self, w: &Potential<F>) -> bool {
        w.terms().keys().all(|p| p.weight(&self.degrees) == self.total)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GradingError {
    #[error("the potential is zero")]
    ZeroPotential,
    #[error("no positive grading makes the potential homogeneous")]
    Infeasible,
}

/// Finds a positive grading making `w` homogeneous.
///
/// Feasibility is decided exactly over ℚ; the returned grading minimises the
/// largest arrow degree and, among those, is lexicographically least in arrow
/// order. Arrows not occurring in `w` get degree 1.
pub fn find_positive_grading<F: Field>(q: &IceQuiver, w: &Potential<F>) -> Result<Grading, GradingError> {
    if w.is_zero() {
        return Err(GradingError::ZeroPotential);
    }
    let n = q.num_arrows();
    let counts: Vec<Vec<i64>> = w
        .terms()
        .keys()
        .map(|p| {
            let mut c = vec![0i64; n];
            for &a in &p.arrows {
                c[a] += 1;
            }
            c
        })
        .collect();
    let witness = rational_witness(&counts, n).ok_or(GradingError::Infeasible)?;
    let used: Vec<usize> = (0..n).filter(|&a| counts.iter().any(|c| c[a] > 0)).collect();
    let bound = used.iter().map(|&a| witness[a]).max().unwrap_or(1);
    for m in 1..=bound {
        if let Some(g) = search_bounded(&counts, &used, n, m) {
            return Ok(g);
        }
    }
    // the witness itself is feasible with max degree `bound`
    unreachable!("witness grading must be found by the bounded search")
}

/// Phase-one simplex on `A y = -A·1`, `y ≥ 0`, rows `term_k - term_0`;
/// returns the cleared-denominator grading `1 + y`.
fn rational_witness(counts: &[Vec<i64>], n: usize) -> Option<Vec<u32>> {
    let rows: Vec<Vec<BigRational>> = counts[1..]
        .iter()
        .map(|c| (0..n).map(|j| BigRational::from_integer(BigInt::from(c[j] - counts[0][j]))).collect())
        .collect();
    let rhs: Vec<BigRational> = rows
        .iter()
        .map(|r| -r.iter().fold(BigRational::zero(), |s, x| s + x))
        .collect();
    let y = phase_one(&rows, &rhs, n)?;
    let lcm = y
        .iter()
        .fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let degs: Option<Vec<u32>> = y
        .iter()
        .map(|v| {
            let d = (v + BigRational::one()) * BigRational::from_integer(lcm.clone());
            d.to_integer().to_u32()
        })
        .collect();
    degs
}

/// Feasible point of `{A y = b, y ≥ 0}` or `None`, via Bland's rule.
fn phase_one(a: &[Vec<BigRational>], b: &[BigRational], n: usize) -> Option<Vec<BigRational>> {
    let m = a.len();
    if m == 0 {
        return Some(vec![BigRational::zero(); n]);
    }
    // columns: n originals, m artificials, then rhs
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = vec![BigRational::zero(); width];
        for j in 0..n {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = BigRational::one();
        row[width - 1] = if flip { -b[i].clone() } else { b[i].clone() };
        t.push(row);
    }
    // objective: minimise sum of artificials, written as reduced costs
    let mut obj = vec![BigRational::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    loop {
        let Some(enter) = (0..n + m).find(|&j| obj[j].is_negative()) else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave?;
        let piv = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x = &*x / &piv;
        }
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == r || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                *x -= &f * p;
            }
        }
        let f = obj[enter].clone();
        for (x, p) in obj.iter_mut().zip(&prow) {
            *x -= &f * p;
        }
        basis[r] = enter;
    }
    if !obj[width - 1].is_zero() {
        return None;
    }
    let mut y = vec![BigRational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            y[bv] = t[i][width - 1].clone();
        }
    }
    Some(y)
}

/// Lexicographically least grading with all degrees in `1..=m`, if any.
fn search_bounded(counts: &[Vec<i64>], used: &[usize], n: usize, m: u32) -> Option<Grading> {
    let mut degrees = vec![1u32; n];
    // remaining[k][i]: occurrences in term k of arrows used[i..]
    let remaining: Vec<Vec<i64>> = counts
        .iter()
        .map(|c| {
            let mut r = vec![0i64; used.len() + 1];
            for i in (0..used.len()).rev() {
                r[i] = r[i + 1] + c[used[i]];
            }
            r
        })
        .collect();
    let mut partial = vec![0i64; counts.len()];
    if assign(counts, used, &remaining, 0, m as i64, &mut degrees, &mut partial) {
        let total = counts[0].iter().zip(&degrees).map(|(c, d)| *c as u32 * d).sum();
        return Some(Grading { degrees, total });
    }
    None
}

fn assign(
    counts: &[Vec<i64>],
    used: &[usize],
    remaining: &[Vec<i64>],
    i: usize,
    m: i64,
    degrees: &mut [u32],
    partial: &mut [i64],
) -> bool {
    // common total must lie in every term's reachable interval
    let lo = (0..counts.len()).map(|k| partial[k] + remaining[k][i]).max().unwrap();
    let hi = (0..counts.len()).map(|k| partial[k] + remaining[k][i] * m).min().unwrap();
    if lo > hi {
        return false;
    }
    if i == used.len() {
        return true;
    }
    let a = used[i];
    for d in 1..=m {
        for k in 0..counts.len() {
            partial[k] += counts[k][a] * d;
        }
        degrees[a] = d as u32;
        if assign(counts, used, remaining, i + 1, m, degrees, partial) {
            return true;
        }
        for k in 0..counts.len() {
            partial[k] -= counts[k][a] * d;
        }
    }
    degrees[a] = 1;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn triangle() -> IceQuiver {
        IceQuiver::from_spec(&["1", "2", "3"], &[0, 1], &[("a1", 0, 1, true), ("a2", 1, 2, false), ("a3", 2, 0, false)]).unwrap()
    }

    fn w(q: &IceQuiver, terms: &[(&[&str], i64)]) -> Potential<Q> {
        Potential::new(
            q,
            terms.iter().map(|(names, c)| (q.path_from_names(names).unwrap(), Q::from_integer((*c).into()))),
        )
        .unwrap()
    }

    #[test]
    fn derivatives_of_the_triangle() {
        let q = triangle();
        let pot = w(&q, &[(&["a3", "a2", "a1"], 1)]);
        let d2 = cyclic_derivative(&q, &pot, 1);
        assert_eq!(q.display_element(&d2), "a1 a3");
        let d3 = cyclic_derivative(&q, &pot, 2);
        assert_eq!(q.display_element(&d3), "a2 a1");
        let rels = jacobian_relations(&q, &pot);
        assert_eq!(rels.iter().map(|r| r.0).collect::<Vec<_>>(), vec![1, 2]);
        let free = q.with_frozen(vec![false; 3], vec![false; 3]).unwrap();
        let rels = jacobian_relations(&free, &pot);
        assert_eq!(rels.len(), 3);
        assert_eq!(free.display_element(&rels[0].1), "a3 a2");
        assert!(jacobian_relations(&q, &Potential::<Q>::zero()).is_empty());
    }

    #[test]
    fn delta_splits_each_occurrence() {
        let q = triangle();
        let x = Element::<Q>::from_path(q.path_from_names(&["a3", "a2", "a1"]).unwrap());
        let d = delta(&q, &x, 0);
        assert_eq!(d.len(), 1);
        assert_eq!(q.display_path(&d.terms[0].left), "a3 a2");
        assert_eq!(d.terms[0].right, q.idempotent(0));
        assert!(delta(&q, &Element::<Q>::from_path(q.idempotent(0)), 0).is_empty());

        let q2 = IceQuiver::from_spec(&["1", "2"], &[], &[("a", 0, 1, false), ("b", 1, 0, false)]).unwrap();
        let aba = Element::<Q>::from_path(q2.path_from_names(&["a", "b", "a"]).unwrap());
        let d = delta(&q2, &aba, 0);
        assert_eq!(d.len(), 2);
        assert_eq!(d.collapse(), aba.scale(&Q::from_integer(2.into())));
    }

    #[test]
    fn vertex_identity_on_triangle() {
        let q = triangle();
        let pot = w(&q, &[(&["a3", "a2", "a1"], 1)]);
        let (l, r) = vertex_potential_identity(&q, &pot, 2);
        assert_eq!(l, r);
        assert_eq!(q.display_element(&l), "a2 a1 a3");
        let (l, r) = vertex_potential_identity(&q, &Potential::<Q>::zero(), 0);
        assert!(l.is_zero() && r.is_zero());
    }

    #[test]
    fn gradings() {
        let q = triangle();
        let pot = w(&q, &[(&["a3", "a2", "a1"], 1)]);
        let g = find_positive_grading(&q, &pot).unwrap();
        assert_eq!(g, Grading { degrees: vec![1, 1, 1], total: 3 });
        let sq = w(&q, &[(&["a3", "a2", "a1"], 1), (&["a3", "a2", "a1", "a3", "a2", "a1"], 1)]);
        assert_eq!(find_positive_grading(&q, &sq), Err(GradingError::Infeasible));
        assert_eq!(find_positive_grading(&q, &Potential::<Q>::zero()), Err(GradingError::ZeroPotential));
    }

    #[test]
    fn asymmetric_grading_found() {
        // a 2-cycle and a 3-cycle sharing an arrow: deg(b) = deg(c) + deg(d)
        let q = IceQuiver::from_spec(
            &["1", "2", "3"],
            &[],
            &[("a", 0, 1, false), ("b", 1, 0, false), ("c", 1, 2, false), ("d", 2, 0, false)],
        )
        .unwrap();
        let pot = w(&q, &[(&["b", "a"], 1), (&["d", "c", "a"], -1)]);
        let g = find_positive_grading(&q, &pot).unwrap();
        assert!(g.makes_homogeneous(&pot));
        assert_eq!(g.degrees, vec![1, 2, 1, 1]);
        assert_eq!(g.total, 3);
    }
}
