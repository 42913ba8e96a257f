use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::RngExt;
use proptest::test_runner::{RngAlgorithm, TestRng};
use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn icecy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_icecy")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("terminated by a signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("icecy-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_input(name: &str, text: &str) -> PathBuf {
    let p = scratch(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn report(args: &[&str], tag: &str) -> (i32, Value) {
    let out_path = scratch(&format!("{tag}.json"));
    let mut full = args.to_vec();
    let s = out_path.to_str().unwrap().to_string();
    full.extend(["--report", &s]);
    let out = icecy(&full);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("timings_ms");
    (code(&out), v)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn exit_codes_on_the_corpus() {
    for (name, expected) in [("triangle-ice.qp", 0), ("triangle-plain.qp", 1), ("a-prime.qp", 0), ("gr26.qp", 0)] {
        let out = icecy(&["check", path_str(&corpus(name))]);
        assert_eq!(code(&out), expected, "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn verdict_lines() {
    let out = icecy(&["check", path_str(&corpus("triangle-ice.qp"))]);
    assert!(stdout(&out).contains("verdict   BimoduleInternally3CY"));
    let out = icecy(&["check", path_str(&corpus("triangle-plain.qp"))]);
    assert!(stdout(&out).contains("verdict   NotQuasiIso"));
    let out = icecy(&["check", path_str(&corpus("gr26.qp")), "--graded", "--degree-cap", "24"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verdict   BoundedCertificate(24)"));
}

#[test]
fn unsupported_input_exits_two() {
    // infinite-dimensional, and no positive grading makes `b a + b a b a` homogeneous
    let p = write_input(
        "unsupported.qp",
        "field Q\nvertices 1 2\narrows\n  a: 1 -> 2\n  b: 2 -> 1\n  x: 1 -> 2\n  y: 2 -> 1\npotential\n  b a\n  b a b a\n",
    );
    let out = icecy(&["check", path_str(&p)]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("completion-sensitive"));
}

#[test]
fn relations_basis_and_grade() {
    let out = icecy(&["relations", path_str(&corpus("triangle-ice.qp"))]);
    assert_eq!(stdout(&out), "d/da2 W = a1 a3\nd/da3 W = a2 a1\n");
    let out = icecy(&["basis", path_str(&corpus("triangle-ice.qp"))]);
    assert!(stdout(&out).starts_with("# Finite(7)\n"));
    assert!(stdout(&out).contains("2: a3 a2\n"));
    let out = icecy(&["grade", path_str(&corpus("gr26.qp"))]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("homogeneity check: every term has degree deg W"));
}

#[test]
fn resolve_a_simple() {
    let out = icecy(&["resolve", path_str(&corpus("triangle-ice.qp")), "S3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("pdim S3 = 3"));
    let out = icecy(&["resolve", path_str(&corpus("triangle-ice.qp")), "S9"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn reports_match_golden_files() {
    for name in ["triangle-ice", "triangle-plain", "a-prime", "gr26"] {
        let (_, v) = report(&["check", path_str(&corpus(&format!("{name}.qp")))], name);
        let golden: Value = serde_json::from_str(&std::fs::read_to_string(corpus(&format!("golden/{name}.report.json"))).unwrap()).unwrap();
        assert_eq!(v, golden, "{name}");
        assert_eq!(v["schema"], "icecy-report/1");
    }
}

#[test]
fn reports_are_byte_stable() {
    let input = corpus("a-prime.qp");
    let args = ["check", path_str(&input)];
    let (_, first) = report(&args, "stable-1");
    let (_, second) = report(&args, "stable-2");
    assert_eq!(serde_json::to_string(&first).unwrap(), serde_json::to_string(&second).unwrap());
}

#[test]
fn prime_field_runs_are_labelled() {
    let (c, v) = report(&["check", path_str(&corpus("triangle-ice.qp")), "--field", "Fp:101"], "fp");
    assert_eq!(c, 0);
    assert!(v["certificate"].as_str().unwrap().contains("characteristic-p"));
}

#[test]
fn matrix_dumps_are_written() {
    let dir = scratch("dump");
    let out = icecy(&["check", path_str(&corpus("triangle-ice.qp")), "--dump-matrices", path_str(&dir)]);
    assert_eq!(code(&out), 0);
    for i in 0..4 {
        assert!(dir.join(format!("mu{i}.triplets")).exists());
    }
}

#[test]
fn definitely_malformed_inputs_exit_two() {
    let base = std::fs::read_to_string(corpus("triangle-ice.qp")).unwrap();
    let cases = [
        String::new(),
        "# only a comment\n".to_string(),
        base.replace("field Q", "field R"),
        base.replace("field Q", "field Q\nfield Q"),
        base.replace("a2: 2 -> 3", "a2: 2 -> 7"),
        base.replace("a2: 2 -> 3", "a2: 2 3"),
        base.replace("a3: 3 -> 1", "a3: 3 -> 3"),
        base.replace("a3 a2 a1", "a3 a2 zz"),
        base.replace("a3 a2 a1", "a2 a3 a1"),
        base.replace("a3 a2 a1", "a3 a2"),
        base.replace("frozen_vertices 1 2", "frozen_vertices 1 9"),
        base.replace("vertices 1 2 3", "vertices 1 2 2 3"),
        base + "  a9: 1 -> 2\n",
    ];
    for (k, text) in cases.iter().enumerate() {
        let p = write_input(&format!("bad-{k}.qp"), text);
        let out = icecy(&["check", path_str(&p)]);
        assert_eq!(code(&out), 2, "case {k}:\n{text}");
        assert!(!out.stderr.is_empty(), "case {k}: no diagnostic");
    }
    assert_eq!(code(&icecy(&["check", "/nonexistent/input.qp"])), 2);
    assert_eq!(code(&icecy(&["check", path_str(&corpus("triangle-ice.qp")), "--field", "Fp:12"])), 2);
}

#[test]
fn fuzzed_inputs_never_crash() {
    let sources: Vec<String> = ["triangle-ice.qp", "triangle-plain.qp", "a-prime.qp"]
        .iter()
        .map(|n| std::fs::read_to_string(corpus(n)).unwrap())
        .collect();
    let junk = ["->", ":", "frozen", "-", "+", "2/0", "1/2", "potential", "arrows", "vertices", "x", "\u{3b1}", "#", "0"];
    let mut rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[11; 32]);
    for k in 0..200 {
        let src = &sources[rng.random_range(0..sources.len())];
        let mut lines: Vec<String> = src.lines().map(String::from).collect();
        match rng.random_range(0..4) {
            0 => {
                lines.remove(rng.random_range(0..lines.len()));
            }
            1 => {
                let i = rng.random_range(0..lines.len());
                let j = rng.random_range(0..lines.len());
                lines.swap(i, j);
            }
            2 => {
                let i = rng.random_range(0..lines.len());
                let mut toks: Vec<String> = lines[i].split_whitespace().map(String::from).collect();
                let at = rng.random_range(0..=toks.len());
                toks.insert(at, junk[rng.random_range(0..junk.len())].to_string());
                lines[i] = format!("  {}", toks.join(" "));
            }
            _ => {
                let text = lines.join("\n");
                let cut = rng.random_range(0..text.len());
                let cut = (0..=cut).rev().find(|&c| text.is_char_boundary(c)).unwrap();
                lines = vec![text[..cut].to_string()];
            }
        }
        let text = lines.join("\n") + "\n";
        let p = write_input(&format!("fuzz-{k}.qp"), &text);
        let out = icecy(&["check", path_str(&p)]);
        let c = code(&out);
        assert!(matches!(c, 0..=2), "case {k}: exit {c}\n{text}\n{}", String::from_utf8_lossy(&out.stderr));
        if c == 2 {
            assert!(!out.stderr.is_empty() || stdout(&out).contains("verdict"), "case {k}: silent failure");
        }
    }
}
