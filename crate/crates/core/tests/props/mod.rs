//! Randomized property checks, shared by the `properties` and `acceptance`
//! targets.

use std::sync::OnceLock;

use crate::common::{self, cycles, q, random_ice_qp, relations};
use icecy::complexcheck::{build_res_complex, graded_check_all, homology, verify_complex, BimoduleComplex, GradedVerdict, HomologyReport, HomologyVerdict};
use icecy::cyverify::cy_report;
use icecy::fdalg::{ext_dims, hom_space, injective_module, minimal_projective_resolution, projective_module, simple_module, FDAlgebra, ProjDim};
use icecy::jacobian::{cyclic_derivative_of, delta, find_positive_grading, vertex_potential_identity};
use icecy::{buchberger, compose, parse_ice_qp, print_ice_qp, Element, FieldSpec, GbOptions, GroebnerBasis, IceQuiver, MonomialOrder, Path, Potential, Q};
use icecy_oracle::{brute_basis, brute_ext};
use proptest::prelude::RngExt;
use proptest::test_runner::TestRng;

pub const CASES: usize = 200;

struct Case {
    quiver: IceQuiver,
    w: Potential<Q>,
    gb: GroebnerBasis<Q>,
    a: FDAlgebra<Q>,
    complex: BimoduleComplex<Q>,
    hom: HomologyReport,
}

fn case(quiver: IceQuiver, w: Potential<Q>) -> Option<Case> {
    let (gb, a) = common::finite_algebra(&quiver, &w)?;
    let complex = build_res_complex(&quiver, &w, &a, &gb);
    let hom = homology(&complex);
    Some(Case { quiver, w, gb, a, complex, hom })
}

/// The first `CASES` finite-dimensional random instances.
fn finite_cases() -> &'static [Case] {
    static CELL: OnceLock<Vec<Case>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut rng = common::seeded(1);
        let mut out = Vec::new();
        while out.len() < CASES {
            let (quiver, w) = random_ice_qp(&mut rng);
            out.extend(case(quiver, w));
        }
        out
    })
}

/// The first `CASES` random instances whose complex is a resolution.
fn quasi_iso_cases() -> &'static [Case] {
    static CELL: OnceLock<Vec<Case>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut rng = common::seeded(2);
        let mut out = Vec::new();
        while out.len() < CASES {
            let (quiver, w) = random_ice_qp(&mut rng);
            if let Some(c) = case(quiver, w) {
                if c.hom.verdict == HomologyVerdict::QuasiIso {
                    out.push(c);
                }
            }
        }
        out
    })
}

fn random_path(rng: &mut TestRng, ends: &[(usize, usize)], nv: usize, max_len: usize) -> Path {
    let mut arrows = Vec::new();
    let mut here = rng.random_range(0..nv);
    let start = here;
    for _ in 0..rng.random_range(0..=max_len) {
        let out: Vec<usize> = (0..ends.len()).filter(|&a| ends[a].0 == here).collect();
        if out.is_empty() {
            break;
        }
        let a = out[rng.random_range(0..out.len())];
        arrows.push(a);
        here = ends[a].1;
    }
    if arrows.is_empty() {
        Path::idempotent(start)
    } else {
        Path::from_word(&arrows, ends).unwrap()
    }
}

fn random_element(rng: &mut TestRng, ends: &[(usize, usize)], nv: usize, max_len: usize) -> Element<Q> {
    let mut x = Element::zero();
    for _ in 0..rng.random_range(1..=4) {
        let c = rng.random_range(-3i64..=3);
        if c != 0 {
            x = x.add(&Element::monomial(random_path(rng, ends, nv, max_len), q(c)));
        }
    }
    x
}

pub fn composites_vanish_on_random_ice_qps() {
    for (k, c) in finite_cases().iter().enumerate() {
        assert!(verify_complex(&c.complex).passed(), "case {k}: {:?}", c.quiver);
    }
}

pub fn homology_vanishes_at_positions_zero_and_one() {
    for (k, c) in finite_cases().iter().enumerate() {
        assert_eq!(c.hom.augmentation_cokernel, 0, "case {k}");
        assert_eq!(c.hom.homology[0], 0, "case {k}: {:?}", c.quiver);
        assert_eq!(c.hom.homology[1], 0, "case {k}: {:?}", c.quiver);
    }
}

pub fn euler_characteristic_is_dim_a_on_resolutions() {
    for c in quasi_iso_cases() {
        assert_eq!(c.complex.euler_characteristic(), c.a.dim() as i64);
    }
}

pub fn vertex_identity_holds_everywhere() {
    let mut rng = common::seeded(3);
    for _ in 0..256 {
        let (quiver, w) = random_ice_qp(&mut rng);
        for v in 0..quiver.num_vertices() {
            let (lhs, rhs) = vertex_potential_identity(&quiver, &w, v);
            assert_eq!(lhs, rhs);
        }
    }
}

pub fn cyclic_derivatives_are_rotation_invariant() {
    let mut rng = common::seeded(4);
    let mut checked = 0;
    while checked < 256 {
        let (quiver, _) = random_ice_qp(&mut rng);
        let ends = quiver.arrow_ends();
        let cs = cycles(&ends, 4);
        let base = &cs[rng.random_range(0..cs.len())];
        // powers make arrows repeat
        let word: Vec<usize> = base.iter().copied().cycle().take(base.len() * rng.random_range(1..=2)).collect();
        let c: Element<Q> = Element::from_path(Path::from_word(&word, &ends).unwrap());
        for r in 0..word.len() {
            let mut rot = word.clone();
            rot.rotate_left(r);
            let rc = Element::from_path(Path::from_word(&rot, &ends).unwrap());
            for a in 0..quiver.num_arrows() {
                assert_eq!(cyclic_derivative_of(&quiver, &c, a), cyclic_derivative_of(&quiver, &rc, a));
            }
        }
        checked += 1;
    }
}

pub fn delta_collapse_reconstructs_weighted_potential() {
    let mut rng = common::seeded(5);
    for _ in 0..256 {
        let (quiver, w) = random_ice_qp(&mut rng);
        let mut sum = Element::zero();
        for a in 0..quiver.num_arrows() {
            sum = sum.add(&delta(&quiver, w.element(), a).collapse());
        }
        let weighted = Element::from_terms(w.terms().iter().map(|(p, c)| (p.clone(), c.clone() * q(p.len() as i64))));
        assert_eq!(sum, weighted);
    }
}

pub fn groebner_normal_forms_are_confluent() {
    let mut rng = common::seeded(6);
    let mut checked = 0;
    while checked < CASES {
        let (quiver, w) = random_ice_qp(&mut rng);
        let gb = common::length_gb(&quiver, &w, 12);
        if !gb.is_complete() {
            continue;
        }
        let ends = quiver.arrow_ends();
        let nv = quiver.num_vertices();
        for _ in 0..5 {
            let x = random_element(&mut rng, &ends, nv, 4);
            let y = random_element(&mut rng, &ends, nv, 4);
            let lhs = gb.normal_form(&x.multiply(&y)).unwrap();
            let nx = gb.normal_form(&x).unwrap();
            let ny = gb.normal_form(&y).unwrap();
            assert_eq!(lhs, gb.normal_form(&nx.multiply(&ny)).unwrap());
        }
        for r in relations(&quiver, &w) {
            assert!(gb.normal_form(&r).unwrap().is_zero());
            let (t, h) = r.endpoints().unwrap();
            let u = loop {
                let u = random_path(&mut rng, &ends, nv, 3);
                if u.tail == h {
                    break Element::from_path(u);
                }
            };
            let v = loop {
                let v = random_path(&mut rng, &ends, nv, 3);
                if v.head == t {
                    break Element::from_path(v);
                }
            };
            let urv = u.multiply(&r).multiply(&v);
            assert!(!urv.is_zero());
            assert!(gb.normal_form(&urv).unwrap().is_zero());
        }
        // reduced: no leading word divides another
        let leads = gb.leading_words();
        for (i, p) in leads.iter().enumerate() {
            for (j, s) in leads.iter().enumerate() {
                if i != j && !s.is_empty() {
                    assert!(!p.arrows.windows(s.len()).any(|win| win == s.arrows.as_slice()));
                }
            }
        }
        checked += 1;
    }
}

pub fn monomial_fast_path_matches_buchberger() {
    let mut rng = common::seeded(7);
    for _ in 0..256 {
        let (quiver, _) = random_ice_qp(&mut rng);
        let ends = quiver.arrow_ends();
        let nv = quiver.num_vertices();
        let mut rels: Vec<Element<Q>> = Vec::new();
        for _ in 0..rng.random_range(1..=4) {
            let p = random_path(&mut rng, &ends, nv, 3);
            if !p.is_empty() {
                rels.push(Element::from_path(p));
            }
        }
        let mut opts = GbOptions::new(MonomialOrder::length_lex(ends.len()), 10);
        let fast = buchberger(&rels, &ends, nv, &opts).unwrap();
        opts.monomial_fast_path = false;
        let slow = buchberger(&rels, &ends, nv, &opts).unwrap();
        assert_eq!(fast.elements(), slow.elements());
        assert_eq!(fast.status(), slow.status());
    }
}

pub fn oracle_basis_matches_engine() {
    let mut rng = common::seeded(8);
    let mut checked = 0;
    while checked < CASES {
        let (quiver, w) = random_ice_qp(&mut rng);
        let Some((_, a)) = common::finite_algebra(&quiver, &w) else { continue };
        let Ok(g) = find_positive_grading(&quiver, &w) else { continue };
        let top = a.words().iter().map(|p| p.weight(&g.degrees)).max().unwrap();
        let brute = brute_basis(&relations(&quiver, &w), &quiver.arrow_ends(), quiver.num_vertices(), &g.degrees, top + g.max_degree());
        assert!(brute.stable);
        let mut engine = a.words().to_vec();
        engine.sort();
        assert_eq!(brute.words, engine, "{:?}", quiver);
        checked += 1;
    }
}

pub fn oracle_ext_matches_minimal_resolutions() {
    for c in quasi_iso_cases() {
        let n = c.a.num_vertices();
        let mut mods: Vec<_> = (0..n).map(|v| simple_module(&c.a, v)).collect();
        mods.push(projective_module(&c.a, 0));
        mods.push(injective_module(&c.a, n - 1));
        for m in &mods {
            for s in &mods {
                let fast = ext_dims(&c.a, m, s, 3);
                assert!(fast.complete);
                assert_eq!(brute_ext(&c.quiver, &c.w, &c.a, &c.gb, m, s, 3), fast.dims, "{:?}", c.quiver);
            }
        }
    }
}

pub fn boundary_supported_modules_have_pdim_at_most_two() {
    for c in quasi_iso_cases() {
        for v in c.quiver.frozen_vertices() {
            let res = minimal_projective_resolution(&c.a, &simple_module(&c.a, v), 12);
            assert!(matches!(res.pdim(), ProjDim::Exactly(d) if d <= 2), "{:?}", c.quiver);
        }
    }
}

pub fn resolutions_pass_every_structural_check() {
    for c in quasi_iso_cases() {
        let report = cy_report(&c.a, &c.quiver.frozen_vertices(), 3).unwrap();
        assert!(report.passed(), "{:?}\n{:?}", c.quiver, report);
        // the table is closed under (M, N, i) <-> (N, M, d - i)
        for r in &report.left.duality.rows {
            assert_eq!(r.ext_mn, r.ext_nm);
        }
    }
}

pub fn graded_verdict_agrees_with_direct_homology() {
    let mut checked = 0;
    for c in finite_cases().iter().chain(quasi_iso_cases()) {
        let Ok(g) = find_positive_grading(&c.quiver, &c.w) else { continue };
        let top = c.a.words().iter().map(|p| p.weight(&g.degrees)).max().unwrap();
        let cap = top + g.total + g.max_degree();
        let gb = buchberger(
            &relations(&c.quiver, &c.w),
            &c.quiver.arrow_ends(),
            c.quiver.num_vertices(),
            &GbOptions::new(MonomialOrder::graded(g.degrees.clone()), cap),
        )
        .unwrap();
        let report = graded_check_all(&c.quiver, &c.w, &g, &gb, cap).unwrap();
        let graded_ok = matches!(report.verdict, GradedVerdict::BoundedCertificate(_));
        assert_eq!(graded_ok, c.hom.verdict == HomologyVerdict::QuasiIso, "{:?}", c.quiver);
        checked += 1;
    }
    assert!(checked >= CASES);
}

pub fn algebras_and_modules_satisfy_axioms() {
    for c in finite_cases() {
        assert!(c.a.check_axioms());
        assert_eq!(c.a.opposite().opposite().dim(), c.a.dim());
        for v in 0..c.a.num_vertices() {
            let p = projective_module(&c.a, v);
            let m = injective_module(&c.a, v);
            assert!(p.check(&c.a) && m.check(&c.a) && simple_module(&c.a, v).check(&c.a));
            // Yoneda
            assert_eq!(hom_space(&c.a, &p, &m).dim(), m.dims()[v]);
        }
    }
}

pub fn path_composition_laws() {
    let mut rng = common::seeded(9);
    for _ in 0..256 {
        let (quiver, _) = random_ice_qp(&mut rng);
        let ends = quiver.arrow_ends();
        let nv = quiver.num_vertices();
        let p = random_path(&mut rng, &ends, nv, 4);
        assert_eq!(compose(&Path::idempotent(p.head), &p).as_ref(), Some(&p));
        assert_eq!(compose(&p, &Path::idempotent(p.tail)).as_ref(), Some(&p));
        let (x, y, z) = (
            random_path(&mut rng, &ends, nv, 3),
            random_path(&mut rng, &ends, nv, 3),
            random_path(&mut rng, &ends, nv, 3),
        );
        let left = compose(&x, &y).and_then(|xy| compose(&xy, &z));
        let right = compose(&y, &z).and_then(|yz| compose(&x, &yz));
        assert_eq!(left, right);
    }
}

pub fn print_then_parse_round_trips() {
    let mut rng = common::seeded(10);
    for _ in 0..256 {
        let (quiver, w) = random_ice_qp(&mut rng);
        let text = print_ice_qp(FieldSpec::Rational, &quiver, &w);
        let back = parse_ice_qp(&text).unwrap();
        assert_eq!(back.quiver, quiver);
        assert_eq!(back.potential::<Q>().unwrap(), w);
    }
}
