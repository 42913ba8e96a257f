//! End-to-end run on one input file, producing a serializable report.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::complexcheck::{
    build_dual_complex, build_res_complex, graded_check_all, homology, verify_complex, verify_selfduality_diagram,
    BimoduleComplex, ComplexCheck, DiagramReport, GradedReport, GradedVerdict, HomologyReport, HomologyVerdict,
};
use crate::cyverify::{cy_report, CYReport};
use crate::fdalg::{global_dimension, FDAlgebra, ProjDim};
use crate::field::Field;
use crate::jacobian::{find_positive_grading, jacobian_relations, Grading};
use crate::ncgb::{buchberger, Certification, Finiteness, GbOptions, GbStatus, GroebnerBasis, MonomialOrder};
use crate::parse::{FieldSpec, QpFile};
use crate::potential::Potential;
use crate::quiver::{Element, IceQuiver};

pub const SCHEMA_VERSION: &str = "icecy-report/1";
pub const DEFAULT_RESOLUTION_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    BimoduleInternally3CY,
    NotQuasiIso,
    BoundedCertificate,
    Unsupported,
    Error,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::BimoduleInternally3CY | Verdict::BoundedCertificate => 0,
            Verdict::NotQuasiIso => 1,
            Verdict::Unsupported | Verdict::Error => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineOptions {
    /// Gröbner truncation (length, or graded degree with `graded`).
    pub degree_cap: Option<u32>,
    /// Use the per-simple graded check instead of the finite-dimensional one.
    pub graded: bool,
    pub resolution_cap: usize,
    /// Run the structural checks on `B = eAe` after a positive verdict.
    pub structural_checks: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            degree_cap: None,
            graded: false,
            resolution_cap: DEFAULT_RESOLUTION_CAP,
            structural_checks: true,
        }
    }
}

/// `2·(longest potential term) + 8`.
pub fn default_length_cap<F: Field>(w: &Potential<F>) -> u32 {
    2 * w.terms().keys().map(|p| p.len() as u32).max().unwrap_or(0) + 8
}

/// `2·deg W + max arrow degree`.
pub fn default_graded_cap(g: &Grading) -> u32 {
    2 * g.total + g.max_degree()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParseStage {
    pub vertices: usize,
    pub arrows: usize,
    pub frozen_vertices: Vec<String>,
    pub frozen_arrows: Vec<String>,
    pub potential: String,
    pub potential_terms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationLine {
    pub arrow: String,
    pub derivative: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GbStage {
    pub status: GbStatus,
    pub certification: Certification,
    pub weights: Vec<u32>,
    pub degree_cap: u32,
    pub size: usize,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisStage {
    pub verdict: Finiteness,
    pub dimension: Option<usize>,
    pub words_by_length: BTreeMap<usize, Vec<String>>,
    /// `dim e_h A e_t`, indexed `[h][t]`.
    pub cartan: Option<Vec<Vec<usize>>>,
    pub global_dimension: Option<ProjDim>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexStage {
    pub term_dims: [usize; 4],
    pub composition: ComplexCheck,
    pub diagram: DiagramReport,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stages {
    pub parse: Option<ParseStage>,
    pub relations: Option<Vec<RelationLine>>,
    pub grading: Option<Grading>,
    pub gb: Option<GbStage>,
    pub basis: Option<BasisStage>,
    pub complex: Option<ComplexStage>,
    pub homology: Option<HomologyReport>,
    pub graded: Option<GradedReport>,
    pub cy: Option<CYReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub schema: String,
    pub input_digest: String,
    pub field: String,
    pub certificate: String,
    pub options: PipelineOptions,
    pub stages: Stages,
    pub verdict: Verdict,
    pub bounded_degree: Option<u32>,
    pub detail: String,
    pub notes: Vec<String>,
    /// Wall-clock milliseconds per stage; not part of golden comparisons.
    pub timings_ms: BTreeMap<String, u64>,
}

pub struct PipelineOutput<F> {
    pub report: RunReport,
    pub complex: Option<BimoduleComplex<F>>,
}

struct Run<'a, F> {
    q: &'a IceQuiver,
    opts: &'a PipelineOptions,
    report: RunReport,
    complex: Option<BimoduleComplex<F>>,
    clock: Instant,
}

impl<F: Field> Run<'_, F> {
    fn lap(&mut self, stage: &str) {
        let ms = self.clock.elapsed().as_millis() as u64;
        self.report.timings_ms.insert(stage.to_string(), ms);
        self.clock = Instant::now();
    }

    fn finish(mut self, verdict: Verdict, detail: impl Into<String>) -> PipelineOutput<F> {
        self.report.verdict = verdict;
        self.report.detail = detail.into();
        PipelineOutput {
            report: self.report,
            complex: self.complex,
        }
    }

    fn gb_stage(&self, gb: &GroebnerBasis<F>, cap: u32) -> GbStage {
        GbStage {
            status: gb.status(),
            certification: gb.certification(),
            weights: gb.order().weights.clone(),
            degree_cap: cap,
            size: gb.len(),
            elements: gb.elements().iter().map(|e| self.q.display_element(e)).collect(),
        }
    }

    fn graded(mut self, w: &Potential<F>, rels: &[Element<F>], grading: Grading, cap: u32) -> PipelineOutput<F> {
        let q = self.q;
        let gb = match buchberger(rels, &q.arrow_ends(), q.num_vertices(), &GbOptions::new(MonomialOrder::graded(grading.degrees.clone()), cap)) {
            Ok(gb) => gb,
            Err(e) => return self.finish(Verdict::Error, format!("Gröbner basis: {e}")),
        };
        self.report.stages.gb = Some(self.gb_stage(&gb, cap));
        self.report.stages.grading = Some(grading.clone());
        self.lap("gb");
        let rep = match graded_check_all(q, w, &grading, &gb, cap) {
            Ok(r) => r,
            Err(e) => return self.finish(Verdict::Unsupported, format!("graded check: {e}")),
        };
        self.lap("graded");
        let verdict = rep.verdict.clone();
        self.report.stages.graded = Some(rep);
        match verdict {
            GradedVerdict::BoundedCertificate(d) => {
                self.report.bounded_degree = Some(d);
                self.finish(
                    Verdict::BoundedCertificate,
                    format!("res(A) ⊗ S_v → S_v is exact in every internal degree ≤ {d} for every simple S_v"),
                )
            }
            GradedVerdict::NotExact { vertex, degree } => self.finish(
                Verdict::NotQuasiIso,
                format!("res(A) ⊗ S_{} → S_{} has homology in degree {degree}", q.vertex_name(vertex), q.vertex_name(vertex)),
            ),
        }
    }

    fn finite(mut self, w: &Potential<F>, gb: &GroebnerBasis<F>) -> PipelineOutput<F> {
        let q = self.q;
        let a = match FDAlgebra::from_groebner(q, gb) {
            Ok(a) => a,
            Err(e) => return self.finish(Verdict::Error, e.to_string()),
        };
        let gldim = global_dimension(&a, self.opts.resolution_cap);
        if let Some(b) = self.report.stages.basis.as_mut() {
            b.cartan = Some(a.cartan_matrix());
            b.global_dimension = Some(gldim);
        }
        self.lap("algebra");
        let c = build_res_complex(q, w, &a, gb);
        let composition = verify_complex(&c);
        let dual = build_dual_complex(q, w, &a, gb);
        let diagram = verify_selfduality_diagram(q, &a, &c, &dual);
        self.report.stages.complex = Some(ComplexStage {
            term_dims: c.term_dims(),
            composition: composition.clone(),
            diagram: diagram.clone(),
        });
        self.lap("complex");
        let h = homology(&c);
        self.complex = Some(c);
        self.report.stages.homology = Some(h.clone());
        self.lap("homology");
        if !composition.passed() {
            return self.finish(Verdict::Error, "res(A) is not a complex");
        }
        if !diagram.passed() {
            return self.finish(Verdict::Error, "the comparison with the dual complex failed");
        }
        match h.verdict {
            HomologyVerdict::NotQuasiIso(pos) => {
                let detail = format!(
                    "res(A) → A has homology at positions {pos:?} (dims {:?}); this does not rule out the one-sided internal Calabi–Yau property",
                    h.homology
                );
                self.finish(Verdict::NotQuasiIso, detail)
            }
            HomologyVerdict::QuasiIso => {
                let frozen = q.frozen_vertices();
                let e = frozen.iter().map(|&v| format!("e{}", q.vertex_name(v))).collect::<Vec<_>>().join("+");
                if self.opts.structural_checks {
                    match cy_report(&a, &frozen, 3) {
                        Ok(cy) => {
                            let ok = cy.passed();
                            self.report.stages.cy = Some(cy);
                            self.lap("cy");
                            if !ok {
                                return self.finish(
                                    Verdict::Error,
                                    "res(A) → A is a quasi-isomorphism but a structural check failed",
                                );
                            }
                        }
                        Err(err) => return self.finish(Verdict::Error, err.to_string()),
                    }
                }
                let e = if e.is_empty() { "0".to_string() } else { e };
                self.finish(
                    Verdict::BimoduleInternally3CY,
                    format!("res(A) → A is a quasi-isomorphism: bimodule internally 3-Calabi–Yau with respect to {e}"),
                )
            }
        }
    }
}

/// Runs the whole pipeline over the field `F` (which must match `file.field`).
pub fn run_pipeline<F: Field>(file: &QpFile, opts: &PipelineOptions, input_digest: &str) -> PipelineOutput<F> {
    let q = &file.quiver;
    let certificate = match file.field {
        FieldSpec::Rational => "exact over Q".to_string(),
        FieldSpec::Prime(p) => format!("characteristic-p certificate (p = {p})"),
    };
    let mut run: Run<F> = Run {
        q,
        opts,
        report: RunReport {
            schema: SCHEMA_VERSION.to_string(),
            input_digest: input_digest.to_string(),
            field: file.field.label(),
            certificate,
            options: opts.clone(),
            stages: Stages::default(),
            verdict: Verdict::Error,
            bounded_degree: None,
            detail: String::new(),
            notes: Vec::new(),
            timings_ms: BTreeMap::new(),
        },
        complex: None,
        clock: Instant::now(),
    };
    let w: Potential<F> = match file.potential() {
        Ok(w) => w,
        Err(e) => return run.finish(Verdict::Error, e.to_string()),
    };
    run.report.stages.parse = Some(ParseStage {
        vertices: q.num_vertices(),
        arrows: q.num_arrows(),
        frozen_vertices: q.frozen_vertices().iter().map(|&v| q.vertex_name(v).to_string()).collect(),
        frozen_arrows: q.frozen_arrows().iter().map(|&a| q.arrow(a).name.clone()).collect(),
        potential: q.display_element(w.element()),
        potential_terms: w.terms().len(),
    });
    let rels = jacobian_relations(q, &w);
    run.report.stages.relations = Some(
        rels.iter()
            .map(|(a, r)| RelationLine {
                arrow: q.arrow(*a).name.clone(),
                derivative: q.display_element(r),
            })
            .collect(),
    );
    let rels: Vec<Element<F>> = rels.into_iter().map(|r| r.1).collect();
    run.lap("parse");

    if opts.graded {
        let grading = match find_positive_grading(q, &w) {
            Ok(g) => g,
            Err(e) => return run.finish(Verdict::Unsupported, format!("no positive grading: {e}")),
        };
        let cap = opts.degree_cap.unwrap_or_else(|| default_graded_cap(&grading));
        return run.graded(&w, &rels, grading, cap);
    }

    let cap = opts.degree_cap.unwrap_or_else(|| default_length_cap(&w));
    let gb = match buchberger(&rels, &q.arrow_ends(), q.num_vertices(), &GbOptions::new(MonomialOrder::length_lex(q.num_arrows()), cap)) {
        Ok(gb) => gb,
        Err(e) => return run.finish(Verdict::Error, format!("Gröbner basis: {e}")),
    };
    run.report.stages.gb = Some(run.gb_stage(&gb, cap));
    run.lap("gb");
    let basis = gb.enumerate_basis(cap as usize);
    let mut by_length: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for w in &basis.words {
        by_length.entry(w.len()).or_default().push(q.display_path(w));
    }
    let dimension = match basis.verdict {
        Finiteness::Finite(n) => Some(n),
        _ => None,
    };
    run.report.stages.basis = Some(BasisStage {
        verdict: basis.verdict,
        dimension,
        words_by_length: by_length,
        cartan: None,
        global_dimension: None,
    });
    run.lap("basis");
    if dimension.is_some() {
        return run.finite(&w, &gb);
    }
    // not known to be finite-dimensional: fall back to the graded check
    match find_positive_grading(q, &w) {
        Ok(g) => {
            run.report.stages.gb = None;
            run.report
                .notes
                .push("the algebra is not known to be finite-dimensional; used the graded per-simple check".into());
            let cap = default_graded_cap(&g);
            run.graded(&w, &rels, g, cap)
        }
        Err(_) => run.finish(
            Verdict::Unsupported,
            "unsupported: completion-sensitive (neither finite-dimensional nor positively graded)",
        ),
    }
}

impl RunReport {
    /// The report with timing data removed, for golden comparisons.
    pub fn without_timings(&self) -> RunReport {
        RunReport {
            timings_ms: BTreeMap::new(),
            ..self.clone()
        }
    }
}
