mod common;

use common::{finite_algebra, load, relations};
use icecy::fdalg::{ext_dims, minimal_projective_resolution, projective_module, simple_module, ProjDim};
use icecy::jacobian::{find_positive_grading, vertex_potential_identity};
use icecy::{IceQuiver, Q};
use icecy_oracle::{brute_basis, brute_ext};

fn length_basis(name: &str, cap: u32) -> icecy_oracle::BruteBasis {
    let (f, w) = load(name);
    let q = &f.quiver;
    brute_basis(&relations(q, &w), &q.arrow_ends(), q.num_vertices(), &vec![1; q.num_arrows()], cap)
}

#[test]
fn brute_basis_triangle_ice() {
    let b = length_basis("triangle-ice.qp", 5);
    assert_eq!(b.words.len(), 7);
    assert!(b.stable);
    assert_eq!(b.counts[&2], 1);
    assert!((3..=5).all(|d| b.counts[&d] == 0));
}

#[test]
fn brute_basis_triangle_plain() {
    let b = length_basis("triangle-plain.qp", 5);
    assert_eq!(b.words.len(), 6);
    assert!(b.stable);
}

#[test]
fn brute_basis_a_prime() {
    let b = length_basis("a-prime.qp", 6);
    assert_eq!(b.words.len(), 13);
    assert_eq!(b.counts.values().copied().collect::<Vec<_>>(), vec![4, 5, 3, 1, 0, 0, 0]);
}

#[test]
fn brute_basis_without_relations_counts_paths() {
    // linear A_4: 1 -> 2 -> 3 -> 4
    let q = IceQuiver::from_spec(&["1", "2", "3", "4"], &[], &[("a", 0, 1, false), ("b", 1, 2, false), ("c", 2, 3, false)]).unwrap();
    let b = brute_basis::<Q>(&[], &q.arrow_ends(), 4, &[1, 1, 1], 5);
    assert_eq!(b.words.len(), 4 * 5 / 2);
    assert!(b.stable);
}

#[test]
fn brute_basis_matches_engine_on_corpus() {
    for name in ["triangle-ice.qp", "triangle-plain.qp", "a-prime.qp"] {
        let (f, w) = load(name);
        let (_, a) = finite_algebra(&f.quiver, &w).unwrap();
        let mut engine = a.words().to_vec();
        engine.sort();
        assert_eq!(length_basis(name, 6).words, engine, "{name}");
    }
}

/// `Ext^0..3(S_u, S_v)` by the oracle, row `u`, column `v`.
fn oracle_simple_table(name: &str) -> Vec<Vec<Vec<usize>>> {
    let (f, w) = load(name);
    let (gb, a) = finite_algebra(&f.quiver, &w).unwrap();
    let n = a.num_vertices();
    (0..n)
        .map(|u| {
            (0..n)
                .map(|v| {
                    let (su, sv) = (simple_module(&a, u), simple_module(&a, v));
                    let brute = brute_ext(&f.quiver, &w, &a, &gb, &su, &sv, 3);
                    let fast = ext_dims(&a, &su, &sv, 3);
                    assert!(fast.complete);
                    assert_eq!(brute, fast.dims, "{name}: S{u}, S{v}");
                    brute
                })
                .collect()
        })
        .collect()
}

#[test]
fn ext_table_triangle_ice() {
    let expected = vec![
        vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]],
        vec![vec![0, 0, 0, 0], vec![1, 0, 0, 0], vec![0, 1, 0, 0]],
        vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![1, 0, 0, 1]],
    ];
    assert_eq!(oracle_simple_table("triangle-ice.qp"), expected);
}

#[test]
fn ext_table_a_prime() {
    let expected = vec![
        vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 1, 0]],
        vec![vec![0, 0, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 0], vec![0, 1, 0, 0]],
        vec![vec![0, 0, 0, 0], vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 1, 0]],
        vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![1, 0, 0, 1]],
    ];
    assert_eq!(oracle_simple_table("a-prime.qp"), expected);
}

#[test]
fn projectives_have_no_higher_ext() {
    for name in ["triangle-ice.qp", "a-prime.qp"] {
        let (f, w) = load(name);
        let (gb, a) = finite_algebra(&f.quiver, &w).unwrap();
        for u in 0..a.num_vertices() {
            let p = projective_module(&a, u);
            for v in 0..a.num_vertices() {
                let s = simple_module(&a, v);
                let brute = brute_ext(&f.quiver, &w, &a, &gb, &p, &s, 3);
                assert_eq!(brute, ext_dims(&a, &p, &s, 3).dims);
                assert!(brute[1..].iter().all(|&x| x == 0));
            }
        }
    }
}

#[test]
fn frozen_simples_resolve_in_length_two() {
    for name in ["triangle-ice.qp", "a-prime.qp"] {
        let (f, w) = load(name);
        let (_, a) = finite_algebra(&f.quiver, &w).unwrap();
        for v in f.quiver.frozen_vertices() {
            let pd = minimal_projective_resolution(&a, &simple_module(&a, v), 12).pdim();
            assert!(matches!(pd, ProjDim::Exactly(d) if d <= 2), "{name}: {pd}");
        }
    }
}

#[test]
fn gr26_vertex_identity_and_grading() {
    let (f, w) = load("gr26.qp");
    for v in 0..f.quiver.num_vertices() {
        let (lhs, rhs) = vertex_potential_identity(&f.quiver, &w, v);
        assert_eq!(lhs, rhs, "vertex {}", f.quiver.vertex_name(v));
    }
    let g = find_positive_grading(&f.quiver, &w).unwrap();
    // substitute the degrees into every term
    for p in w.terms().keys() {
        let d: u32 = p.arrows.iter().map(|&a| g.degrees[a]).sum();
        assert_eq!(d, g.total);
    }
    assert!(g.degrees.iter().all(|&d| d >= 1));
    assert!(g.degrees.iter().any(|&d| d != g.degrees[0]));
}
