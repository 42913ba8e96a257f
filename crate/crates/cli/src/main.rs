use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use icecy::complexcheck::BimoduleComplex;
use icecy::cyverify::default_test_modules;
use icecy::fdalg::{minimal_projective_resolution, FDAlgebra};
use icecy::jacobian::{find_positive_grading, jacobian_relations};
use icecy::pipeline::{default_graded_cap, default_length_cap, run_pipeline, PipelineOptions, RunReport, Verdict};
use icecy::{buchberger, parse_ice_qp, Field, FieldSpec, Finiteness, Fp, GbOptions, MonomialOrder, QpFile, Q};
use sha2::{Digest, Sha256};

/// Exact computations with frozen Jacobian algebras.
#[derive(Parser)]
#[command(name = "icecy", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Input file in the ice-quiver-with-potential format.
    file: PathBuf,
    /// Override the field declared in the file: `Q`, `Fp` or `Fp:<prime>`.
    #[arg(long)]
    field: Option<String>,
    /// Gröbner truncation: path length, or internal degree with `--graded`.
    #[arg(long, env = "ICECY_DEGREE_CAP")]
    degree_cap: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Build res(A), decide exactness and run the structural checks.
    Check {
        #[command(flatten)]
        common: Common,
        /// Use the degree-by-degree check against each simple module.
        #[arg(long)]
        graded: bool,
        /// Maximal length of minimal projective resolutions.
        #[arg(long, env = "ICECY_RESOLUTION_CAP", default_value_t = 12)]
        resolution_cap: usize,
        /// Skip the checks on the boundary algebra.
        #[arg(long)]
        no_structural: bool,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write the differentials as sparse triplets into this directory.
        #[arg(long)]
        dump_matrices: Option<PathBuf>,
    },
    /// Print the Gröbner basis of the Jacobian ideal.
    Gb {
        #[command(flatten)]
        common: Common,
        /// Truncate by the positive grading instead of by length.
        #[arg(long)]
        graded: bool,
    },
    /// List the normal-word basis by length.
    Basis {
        #[command(flatten)]
        common: Common,
    },
    /// Print the cyclic derivatives along the unfrozen arrows.
    Relations {
        #[command(flatten)]
        common: Common,
    },
    /// Find a positive grading making the potential homogeneous.
    Grade {
        #[command(flatten)]
        common: Common,
    },
    /// Minimal projective resolution of `S<v>`, `P<v>`, `I<v>` or `radP<v>`.
    Resolve {
        #[command(flatten)]
        common: Common,
        /// Module name, e.g. `S3`.
        module: String,
        #[arg(long, env = "ICECY_RESOLUTION_CAP", default_value_t = 12)]
        resolution_cap: usize,
    },
}

fn parse_field(s: &str) -> Result<FieldSpec> {
    match s {
        "Q" | "q" => Ok(FieldSpec::Rational),
        "Fp" | "fp" => Ok(FieldSpec::Prime(icecy::field::DEFAULT_PRIME)),
        _ => {
            let p = s
                .strip_prefix("Fp:")
                .or_else(|| s.strip_prefix("fp:"))
                .ok_or_else(|| anyhow!("unknown field `{s}` (expected Q, Fp or Fp:<prime>)"))?;
            Ok(FieldSpec::Prime(p.parse().with_context(|| format!("bad prime `{p}`"))?))
        }
    }
}

struct Input {
    file: QpFile,
    digest: String,
}

fn load(common: &Common) -> Result<Input> {
    let bytes = fs::read(&common.file).with_context(|| format!("reading {}", common.file.display()))?;
    let text = String::from_utf8(bytes.clone()).context("input is not UTF-8")?;
    let mut file = parse_ice_qp(&text).map_err(|e| anyhow!("{}: {e}", common.file.display()))?;
    if let Some(f) = &common.field {
        file.field = parse_field(f)?;
    }
    if let FieldSpec::Prime(p) = file.field {
        Fp::set_modulus(p).map_err(|e| anyhow!("{e}"))?;
    }
    Ok(Input {
        file,
        digest: Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect(),
    })
}

fn render(r: &RunReport) {
    println!("input     sha256:{}", r.input_digest);
    println!("field     {} ({})", r.field, r.certificate);
    if let Some(p) = &r.stages.parse {
        println!("quiver    {} vertices, {} arrows, frozen {:?}", p.vertices, p.arrows, p.frozen_vertices);
        println!("potential {}", p.potential);
    }
    if let Some(gb) = &r.stages.gb {
        println!("gb        {} elements, {:?}, certified {}", gb.size, gb.status, gb.certification);
    }
    if let Some(b) = &r.stages.basis {
        match b.dimension {
            Some(n) => println!("basis     dim A = {n}"),
            None => println!("basis     {:?}", b.verdict),
        }
        if let Some(g) = &b.global_dimension {
            println!("gldim     {g}");
        }
    }
    if let Some(g) = &r.stages.grading {
        println!("grading   {:?}, deg W = {}", g.degrees, g.total);
    }
    if let Some(c) = &r.stages.complex {
        println!("res(A)    term dims {:?}", c.term_dims);
        println!("complex   composites zero {:?}", c.composition.composites_zero);
        println!("dual      diagram {}", if c.diagram.passed() { "ok" } else { "FAILED" });
    }
    if let Some(h) = &r.stages.homology {
        println!(
            "homology  {:?}, cokernel of mu0 {}, Euler {} vs dim A {}",
            h.homology, h.augmentation_cokernel, h.euler_characteristic, h.dim_algebra
        );
    }
    if let Some(g) = &r.stages.graded {
        let bad = g.rows.iter().filter(|row| !row.exact()).count();
        println!("graded    {} (vertex, degree) rows up to degree {}, {bad} inexact", g.rows.len(), g.degree_cap);
    }
    if let Some(cy) = &r.stages.cy {
        for (side, s) in [("A", &cy.left), ("A^op", &cy.right)] {
            println!(
                "cy[{side}]   duality {} ({} rows), dim B {}, dim A/AeA {}, Gorenstein dim {:?}, End_B(eA) {}, stable {}",
                if s.duality.balanced() { "balanced" } else { "UNBALANCED" },
                s.duality.rows.len(),
                s.boundary.dim_b,
                s.boundary.dim_quotient,
                s.gorenstein.gorenstein_dimension,
                s.endo.dim_end,
                s.endo.dim_stable
            );
        }
    }
    for n in &r.notes {
        println!("note      {n}");
    }
    match r.bounded_degree {
        Some(d) => println!("verdict   {:?}({d})", r.verdict),
        None => println!("verdict   {:?}", r.verdict),
    }
    println!("          {}", r.detail);
}

fn dump(dir: &Path, complex: &BimoduleComplex<impl Field>) -> Result<()> {
    fs::create_dir_all(dir)?;
    for (name, text) in complex.dump_matrices() {
        fs::write(dir.join(format!("{name}.triplets")), text)?;
    }
    Ok(())
}

fn check<F: Field>(input: &Input, opts: &PipelineOptions, report: Option<&Path>, dump_dir: Option<&Path>) -> Result<Verdict> {
    let out = run_pipeline::<F>(&input.file, opts, &input.digest);
    render(&out.report);
    if let Some(path) = report {
        fs::write(path, serde_json::to_string_pretty(&out.report)? + "\n")?;
    }
    if let (Some(dir), Some(c)) = (dump_dir, &out.complex) {
        dump(dir, c)?;
    }
    Ok(out.report.verdict)
}

fn gb<F: Field>(input: &Input, cap: Option<u32>, graded: bool) -> Result<()> {
    let q = &input.file.quiver;
    let w = input.file.potential::<F>()?;
    let rels: Vec<_> = jacobian_relations(q, &w).into_iter().map(|r| r.1).collect();
    let (order, cap) = if graded {
        let g = find_positive_grading(q, &w)?;
        let cap = cap.unwrap_or_else(|| default_graded_cap(&g));
        (MonomialOrder::graded(g.degrees), cap)
    } else {
        (MonomialOrder::length_lex(q.num_arrows()), cap.unwrap_or_else(|| default_length_cap(&w)))
    };
    let gb = buchberger(&rels, &q.arrow_ends(), q.num_vertices(), &GbOptions::new(order, cap))?;
    println!("# {} elements, {:?}, certified {}", gb.len(), gb.status(), gb.certification());
    for e in gb.elements() {
        println!("{}", q.display_element(e));
    }
    Ok(())
}

fn basis<F: Field>(input: &Input, cap: Option<u32>) -> Result<()> {
    let q = &input.file.quiver;
    let w = input.file.potential::<F>()?;
    let rels: Vec<_> = jacobian_relations(q, &w).into_iter().map(|r| r.1).collect();
    let cap = cap.unwrap_or_else(|| default_length_cap(&w));
    let gb = buchberger(&rels, &q.arrow_ends(), q.num_vertices(), &GbOptions::new(MonomialOrder::length_lex(q.num_arrows()), cap))?;
    let b = gb.enumerate_basis(cap as usize);
    match b.verdict {
        Finiteness::Finite(n) => println!("# Finite({n})"),
        v => println!("# {v:?}; words up to length {cap}"),
    }
    for (len, words) in b.by_length() {
        let shown: Vec<String> = words.iter().map(|p| q.display_path(p)).collect();
        println!("{len}: {}", shown.join(", "));
    }
    Ok(())
}

fn relations<F: Field>(input: &Input) -> Result<()> {
    let q = &input.file.quiver;
    let w = input.file.potential::<F>()?;
    for (a, r) in jacobian_relations(q, &w) {
        println!("d/d{} W = {}", q.arrow(a).name, q.display_element(&r));
    }
    Ok(())
}

fn grade<F: Field>(input: &Input) -> Result<()> {
    let q = &input.file.quiver;
    let w = input.file.potential::<F>()?;
    let g = find_positive_grading(q, &w)?;
    for (a, d) in g.degrees.iter().enumerate() {
        println!("deg {} = {d}", q.arrow(a).name);
    }
    println!("deg W = {}", g.total);
    println!(
        "homogeneity check: {}",
        if g.makes_homogeneous(&w) { "every term has degree deg W" } else { "FAILED" }
    );
    Ok(())
}

fn resolve<F: Field>(input: &Input, cap: Option<u32>, module: &str, res_cap: usize) -> Result<()> {
    let q = &input.file.quiver;
    let w = input.file.potential::<F>()?;
    let rels: Vec<_> = jacobian_relations(q, &w).into_iter().map(|r| r.1).collect();
    let cap = cap.unwrap_or_else(|| default_length_cap(&w));
    let gb = buchberger(&rels, &q.arrow_ends(), q.num_vertices(), &GbOptions::new(MonomialOrder::length_lex(q.num_arrows()), cap))?;
    let a = FDAlgebra::from_groebner(q, &gb)?;
    let m = default_test_modules(&a)
        .into_iter()
        .find(|t| t.name == module)
        .ok_or_else(|| anyhow!("unknown module `{module}` (use S<v>, P<v>, I<v> or radP<v>)"))?;
    let res = minimal_projective_resolution(&a, &m.module, res_cap);
    println!("# vertices {}", a.vertex_names().join(" "));
    for (i, row) in res.betti(a.num_vertices()).iter().enumerate() {
        let gens: Vec<String> = row
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(v, &k)| if k == 1 { format!("P{}", a.vertex_names()[v]) } else { format!("P{}^{k}", a.vertex_names()[v]) })
            .collect();
        println!("P_{i} = {}", if gens.is_empty() { "0".into() } else { gens.join(" + ") });
    }
    println!("pdim {} = {}", module, res.pdim());
    Ok(())
}

fn dispatch<R>(input: &Input, f_q: impl FnOnce() -> R, f_p: impl FnOnce() -> R) -> R {
    match input.file.field {
        FieldSpec::Rational => f_q(),
        FieldSpec::Prime(_) => f_p(),
    }
}

fn run(cli: Cli) -> Result<Verdict> {
    match cli.command {
        Command::Check {
            common,
            graded,
            resolution_cap,
            no_structural,
            report,
            dump_matrices,
        } => {
            let input = load(&common)?;
            let opts = PipelineOptions {
                degree_cap: common.degree_cap,
                graded,
                resolution_cap,
                structural_checks: !no_structural,
            };
            let (r, d) = (report.as_deref(), dump_matrices.as_deref());
            dispatch(&input, || check::<Q>(&input, &opts, r, d), || check::<Fp>(&input, &opts, r, d))
        }
        Command::Gb { common, graded } => {
            let input = load(&common)?;
            let cap = common.degree_cap;
            dispatch(&input, || gb::<Q>(&input, cap, graded), || gb::<Fp>(&input, cap, graded))?;
            Ok(Verdict::BimoduleInternally3CY)
        }
        Command::Basis { common } => {
            let input = load(&common)?;
            let cap = common.degree_cap;
            dispatch(&input, || basis::<Q>(&input, cap), || basis::<Fp>(&input, cap))?;
            Ok(Verdict::BimoduleInternally3CY)
        }
        Command::Relations { common } => {
            let input = load(&common)?;
            dispatch(&input, || relations::<Q>(&input), || relations::<Fp>(&input))?;
            Ok(Verdict::BimoduleInternally3CY)
        }
        Command::Grade { common } => {
            let input = load(&common)?;
            dispatch(&input, || grade::<Q>(&input), || grade::<Fp>(&input))?;
            Ok(Verdict::BimoduleInternally3CY)
        }
        Command::Resolve {
            common,
            module,
            resolution_cap,
        } => {
            let input = load(&common)?;
            let cap = common.degree_cap;
            if module.is_empty() {
                bail!("empty module name");
            }
            dispatch(
                &input,
                || resolve::<Q>(&input, cap, &module, resolution_cap),
                || resolve::<Fp>(&input, cap, &module, resolution_cap),
            )?;
            Ok(Verdict::BimoduleInternally3CY)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(v) => ExitCode::from(v.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
