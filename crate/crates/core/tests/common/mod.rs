#![allow(dead_code)]

use std::path::PathBuf;

use icecy::fdalg::FDAlgebra;
use icecy::jacobian::jacobian_relations;
use icecy::{buchberger, parse_ice_qp, Element, GbOptions, GroebnerBasis, IceQuiver, MonomialOrder, Path, Potential, QpFile, Q};
use num_bigint::BigInt;
use proptest::prelude::RngExt;
use proptest::test_runner::{RngAlgorithm, TestRng};

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

pub fn load(name: &str) -> (QpFile, Potential<Q>) {
    let text = std::fs::read_to_string(corpus_path(name)).unwrap();
    let f = parse_ice_qp(&text).unwrap();
    let w = f.potential().unwrap();
    (f, w)
}

/// A ChaCha generator fixed by `seed`.
pub fn seeded(seed: u8) -> TestRng {
    TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32])
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn relations(quiver: &IceQuiver, w: &Potential<Q>) -> Vec<Element<Q>> {
    jacobian_relations(quiver, w).into_iter().map(|r| r.1).collect()
}

pub fn length_gb(quiver: &IceQuiver, w: &Potential<Q>, cap: u32) -> GroebnerBasis<Q> {
    buchberger(
        &relations(quiver, w),
        &quiver.arrow_ends(),
        quiver.num_vertices(),
        &GbOptions::new(MonomialOrder::length_lex(quiver.num_arrows()), cap),
    )
    .unwrap()
}

/// The algebra when the Gröbner basis completes and the basis is finite.
pub fn finite_algebra(quiver: &IceQuiver, w: &Potential<Q>) -> Option<(GroebnerBasis<Q>, FDAlgebra<Q>)> {
    let gb = length_gb(quiver, w, 12);
    let a = FDAlgebra::from_groebner(quiver, &gb).ok()?;
    (a.dim() <= 40).then_some((gb, a))
}

/// Simple cycles of length 2 to `max_len`, one rotation each.
pub fn cycles(ends: &[(usize, usize)], max_len: usize) -> Vec<Vec<usize>> {
    fn go(ends: &[(usize, usize)], start: usize, path: &mut Vec<usize>, seen: &mut Vec<usize>, max_len: usize, out: &mut Vec<Vec<usize>>) {
        let here = path.last().map_or(start, |&a| ends[a].1);
        for (a, &(t, h)) in ends.iter().enumerate() {
            if t != here {
                continue;
            }
            if h == start && path.len() + 1 >= 2 {
                let mut c = path.clone();
                c.push(a);
                // keep the rotation starting with the smallest arrow
                if c.iter().min() == c.first() {
                    out.push(c);
                }
            } else if h > start && !seen.contains(&h) && path.len() + 1 < max_len {
                path.push(a);
                seen.push(h);
                go(ends, start, path, seen, max_len, out);
                seen.pop();
                path.pop();
            }
        }
    }
    let nv = ends.iter().map(|&(t, h)| t.max(h) + 1).max().unwrap_or(0);
    let mut out = Vec::new();
    for s in 0..nv {
        go(ends, s, &mut Vec::new(), &mut vec![s], max_len, &mut out);
    }
    out
}

/// A random ice quiver with a nonzero potential made of up to three simple
/// cycles with small integer coefficients.
pub fn random_ice_qp(rng: &mut TestRng) -> (IceQuiver, Potential<Q>) {
    loop {
        let n = rng.random_range(2..=4usize);
        let m = rng.random_range(2..=6usize);
        let mut ends = Vec::new();
        for _ in 0..m {
            let t = rng.random_range(0..n);
            let mut h = rng.random_range(0..n - 1);
            if h >= t {
                h += 1;
            }
            ends.push((t, h));
        }
        let cs = cycles(&ends, 4);
        if cs.is_empty() {
            continue;
        }
        let frozen_v: Vec<bool> = (0..n).map(|_| rng.random_bool(0.4)).collect();
        let frozen_a: Vec<bool> = ends.iter().map(|&(t, h)| frozen_v[t] && frozen_v[h] && rng.random_bool(0.5)).collect();
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let arrow_names: Vec<String> = (1..=m).map(|i| format!("a{i}")).collect();
        let arrows: Vec<(&str, usize, usize, bool)> = ends
            .iter()
            .enumerate()
            .map(|(i, &(t, h))| (arrow_names[i].as_str(), t, h, frozen_a[i]))
            .collect();
        let fv: Vec<usize> = (0..n).filter(|&v| frozen_v[v]).collect();
        let quiver = IceQuiver::from_spec(&name_refs, &fv, &arrows).unwrap();
        let k = rng.random_range(1..=cs.len().min(3));
        let mut pool = cs.clone();
        let mut terms: Vec<(Path, Q)> = Vec::new();
        for _ in 0..k {
            let c = pool.swap_remove(rng.random_range(0..pool.len()));
            let coeff = [1i64, -1, 2, -2][rng.random_range(0..4)];
            terms.push((Path::from_word(&c, &quiver.arrow_ends()).unwrap(), q(coeff)));
        }
        let w = Potential::new(&quiver, terms).unwrap();
        if w.is_zero() {
            continue;
        }
        return (quiver, w);
    }
}
