//! Slow, obviously-correct reference computations for cross-checking the
//! engine in tests.
//!
//! Nothing here calls the Gröbner-basis reduction or the minimal resolution
//! code. Linear algebra is a plain dense Gaussian elimination written below.

use std::collections::{BTreeMap, HashMap};

use icecy::complexcheck::{res_generators, res_images, Generator};
use icecy::fdalg::{FDAlgebra, Module};
use icecy::{compose, Element, Field, GroebnerBasis, IceQuiver, Path, Potential};

/// Row-reduces `rows` in place and returns the pivot columns.
pub fn row_reduce<F: Field>(rows: &mut Vec<Vec<F>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = F::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..cols {
                    let v = rows[r][j].clone();
                    rows[i][j] = rows[i][j].clone() - f.clone() * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Field>(mut rows: Vec<Vec<F>>) -> usize {
    row_reduce(&mut rows).len()
}

/// All composable paths of weight at most `cap`, by weight.
pub fn all_paths(ends: &[(usize, usize)], num_vertices: usize, weights: &[u32], cap: u32) -> BTreeMap<u32, Vec<Path>> {
    let mut out: BTreeMap<u32, Vec<Path>> = BTreeMap::new();
    let mut frontier: Vec<Path> = (0..num_vertices).map(Path::idempotent).collect();
    out.insert(0, frontier.clone());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for (a, &(t, _)) in ends.iter().enumerate() {
                if t != p.head {
                    continue;
                }
                let w = p.weight(weights) + weights[a];
                if w > cap {
                    continue;
                }
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                let q = Path::from_word(&arrows, ends).expect("composable by construction");
                out.entry(w).or_default().push(q.clone());
                next.push(q);
            }
        }
        frontier = next;
    }
    out
}

/// Normal words of a homogeneous ideal found by linear algebra alone.
#[derive(Clone, Debug)]
pub struct BruteBasis {
    pub words: Vec<Path>,
    /// Number of normal words in each weight.
    pub counts: BTreeMap<u32, usize>,
    /// Whether the top weights contributed no words, so the basis has
    /// probably been found in full.
    pub stable: bool,
}

/// Enumerates every path of weight at most `cap`, spans the degree pieces of
/// the two-sided ideal by all products `u·r·v`, and keeps the paths that are
/// not leading words (largest in the path order) of an ideal element. The
/// relations must be homogeneous for `weights`.
pub fn brute_basis<F: Field>(
    relations: &[Element<F>],
    ends: &[(usize, usize)],
    num_vertices: usize,
    weights: &[u32],
    cap: u32,
) -> BruteBasis {
    let paths = all_paths(ends, num_vertices, weights, cap);
    let empty = Vec::new();
    let mut words = Vec::new();
    let mut counts = BTreeMap::new();
    for deg in 0..=cap {
        let ps = paths.get(&deg).unwrap_or(&empty);
        let mut blocks: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
        for p in ps {
            blocks.entry((p.tail, p.head)).or_default().push(p.clone());
        }
        let mut found = 0;
        for ((t, h), mut block) in blocks {
            // columns in decreasing order so that pivots are leading words
            block.sort_by(|a, b| b.cmp(a));
            let col: HashMap<&Path, usize> = block.iter().enumerate().map(|(i, p)| (p, i)).collect();
            let mut rows = Vec::new();
            for r in relations {
                let Some(lead) = r.terms().keys().next() else { continue };
                let rw = lead.weight(weights);
                if rw > deg {
                    continue;
                }
                for du in 0..=deg - rw {
                    let dv = deg - rw - du;
                    for u in paths.get(&du).unwrap_or(&empty) {
                        if u.tail != lead.head || u.head != h {
                            continue;
                        }
                        for v in paths.get(&dv).unwrap_or(&empty) {
                            if v.tail != t || v.head != lead.tail {
                                continue;
                            }
                            let mut row = vec![F::zero(); block.len()];
                            for (p, c) in r.terms() {
                                let full = compose(u, &compose(p, v).expect("composable")).expect("composable");
                                let j = col[&full];
                                row[j] = row[j].clone() + c.clone();
                            }
                            rows.push(row);
                        }
                    }
                }
            }
            let pivots = row_reduce(&mut rows);
            for (j, p) in block.iter().enumerate() {
                if !pivots.contains(&j) {
                    words.push(p.clone());
                    found += 1;
                }
            }
        }
        counts.insert(deg, found);
    }
    let top = weights.iter().copied().max().unwrap_or(1);
    let stable = (cap.saturating_sub(top) + 1..=cap).all(|d| counts.get(&d).copied().unwrap_or(0) == 0);
    words.sort();
    BruteBasis { words, counts, stable }
}

/// `dim Ext^i_A(M, N)` for `0 ≤ i ≤ max_i`, computed from the non-minimal
/// resolution `res(A) ⊗_A M`. Only meaningful when `res(A) → A` is a
/// quasi-isomorphism.
///
/// `Hom_A(A e_a ⊗ M_b, N) = Hom_K(M_b, N_a)`, and a generator image
/// `Σ c · l ⊗ g' ⊗ r` induces `φ ↦ Σ c · N_l ∘ φ_{g'} ∘ M_r`.
pub fn brute_ext<F: Field>(
    q: &IceQuiver,
    w: &Potential<F>,
    a: &FDAlgebra<F>,
    gb: &GroebnerBasis<F>,
    m: &Module<F>,
    n: &Module<F>,
    max_i: usize,
) -> Vec<usize> {
    let images = res_images(q, w, a, gb);
    let gens = res_generators(q);
    // cochain space C^i = ⊕_g Hom(M_b, N_a), flattened row-major
    let layout = |gs: &[Generator]| -> (Vec<usize>, usize) {
        let mut offs = Vec::new();
        let mut total = 0;
        for g in gs {
            let (x, y) = g.ends(q);
            offs.push(total);
            total += n.dims()[x] * m.dims()[y];
        }
        (offs, total)
    };
    let act = |module: &Module<F>, v: &[(usize, F)], rows: usize, cols: usize| -> Vec<Vec<F>> {
        let mut out = vec![vec![F::zero(); cols]; rows];
        for (b, c) in v {
            let mat = module.action(*b);
            for (i, row) in out.iter_mut().enumerate() {
                for (j, x) in row.iter_mut().enumerate() {
                    *x = x.clone() + c.clone() * mat.get(i, j).clone();
                }
            }
        }
        out
    };
    // δ^i : C^{i-1} → C^i as a dense matrix (rows = dim C^i)
    let coboundary = |i: usize| -> (usize, usize, Vec<Vec<F>>) {
        let (src_offs, src_dim) = layout(&gens[i - 1]);
        let (dst_offs, dst_dim) = layout(&gens[i]);
        let pos: HashMap<Generator, usize> = gens[i - 1].iter().enumerate().map(|(k, g)| (*g, k)).collect();
        let mut d = vec![vec![F::zero(); src_dim]; dst_dim];
        for (k, g) in gens[i].iter().enumerate() {
            let (ga, gb_) = g.ends(q);
            for (l, g2, r, c) in &images.images[g] {
                let (a2, b2) = g2.ends(q);
                let nl = act(n, l, n.dims()[ga], n.dims()[a2]);
                let mr = act(m, r, m.dims()[b2], m.dims()[gb_]);
                let k2 = pos[g2];
                // (δφ)_g[s][t] = Σ c · nl[s][u] · φ_{g2}[u][v] · mr[v][t]
                for s in 0..n.dims()[ga] {
                    for t in 0..m.dims()[gb_] {
                        let row = dst_offs[k] + s * m.dims()[gb_] + t;
                        for u in 0..n.dims()[a2] {
                            if nl[s][u].is_zero() {
                                continue;
                            }
                            for v in 0..m.dims()[b2] {
                                if mr[v][t].is_zero() {
                                    continue;
                                }
                                let colx = src_offs[k2] + u * m.dims()[b2] + v;
                                d[row][colx] = d[row][colx].clone() + c.clone() * nl[s][u].clone() * mr[v][t].clone();
                            }
                        }
                    }
                }
            }
        }
        (dst_dim, src_dim, d)
    };
    let dims: Vec<usize> = (0..4).map(|i| layout(&gens[i]).1).collect();
    let ranks: Vec<usize> = (0..=4)
        .map(|i| if i == 0 || i == 4 { 0 } else { rank(coboundary(i).2) })
        .collect();
    (0..=max_i)
        .map(|i| if i < 4 { dims[i] - ranks[i] - ranks[i + 1] } else { 0 })
        .collect()
}
