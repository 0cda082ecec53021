use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use graphex::config::ModelConfig;
use graphex::io::{parse_edge_list, parse_labeled_csv, parse_manifest, parse_pixel_csv};
use graphex_core::GraphonSpec;

const THREE_PART: &str = "I = 0.1\n[S]\nfamily = \"exp\"\nparams = [0.5, 1.0]\n[W]\nfamily = \"inverse-power\"\nparams = [2.0, 2.0]\n";
const EXP_PRODUCT: &str = "[W]\nfamily = \"exp-product\"\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphex"))
        .args(args)
        .env_remove("GRAPHEX_SEED")
        .output()
        .expect("binary runs")
}

fn run_with_env(args: &[&str], seed: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphex"))
        .args(args)
        .env("GRAPHEX_SEED", seed)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn golden(name: &str) -> String {
    fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn simulate_writes_labeled_unlabeled_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let model = write(dir.path(), "three-part.toml", THREE_PART);
    let out = dir.path().join("g");
    let o = run(&["simulate", s(&model), "--size", "15", "--seed", "3", "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let labeled = parse_labeled_csv(&fs::read_to_string(dir.path().join("g.labeled.csv")).unwrap()).unwrap();
    let edges = parse_edge_list(&fs::read_to_string(dir.path().join("g.edges")).unwrap()).unwrap();
    let manifest = parse_manifest(&fs::read_to_string(dir.path().join("g.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest.command, "simulate");
    assert_eq!((manifest.seed, manifest.size, manifest.epsilon), (3, Some(15.0), Some(1e-3)));
    assert_eq!(edges, labeled.forget_labels());
    assert_eq!((manifest.edges, manifest.vertices), (edges.edge_count(), edges.vertex_count()));
    let counts = manifest.counts.unwrap();
    assert_eq!(counts.w + counts.s + counts.i, manifest.edges);
    assert!(counts.w > 0 && counts.s > 0 && counts.i > 0);
}

#[test]
fn outputs_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let model = write(dir.path(), "three-part.toml", THREE_PART);
    let out = dir.path().join("g");
    assert_eq!(code(&run(&["simulate", s(&model), "--size", "4", "--seed", "6", "--out", s(&out)])), 0);
    for suffix in ["labeled.csv", "edges", "manifest.json"] {
        let got = fs::read_to_string(dir.path().join(format!("g.{suffix}"))).unwrap();
        assert_eq!(got, golden(&format!("three-part-s4-seed6.{suffix}")), "{suffix}");
    }
    let seq = dir.path().join("seq.txt");
    assert_eq!(code(&run(&["sequence", s(&dir.path().join("g.labeled.csv")), "--out", s(&seq)])), 0);
    assert_eq!(fs::read_to_string(&seq).unwrap(), golden("three-part-s4-seed6.sequence"));

    let path = write(dir.path(), "path.edges", "# a path and a triangle\n1 2\n2 3\n\n4 5\n5 6\n4 6\n");
    let est = dir.path().join("est");
    assert_eq!(code(&run(&["estimate", s(&path), "--size", "4", "--out", s(&est)])), 0);
    assert_eq!(fs::read_to_string(dir.path().join("est.pixel.csv")).unwrap(), golden("path-triangle.pixel.csv"));
    assert_eq!(fs::read_to_string(dir.path().join("est.pgm")).unwrap(), golden("path-triangle.pgm"));
}

#[test]
fn seed_precedence_is_flag_model_env_default() {
    let dir = tempfile::tempdir().unwrap();
    let plain = write(dir.path(), "plain.toml", EXP_PRODUCT);
    let seeded = write(dir.path(), "seeded.toml", &format!("seed = 8\n{EXP_PRODUCT}"));
    let seed_of = |o: &Output, name: &str| {
        assert_eq!(code(o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        parse_manifest(&fs::read_to_string(dir.path().join(format!("{name}.manifest.json"))).unwrap()).unwrap().seed
    };
    let out = |name: &str| dir.path().join(name);
    let o = run_with_env(&["simulate", s(&seeded), "--size", "2", "--seed", "4", "--out", s(&out("a"))], "9");
    assert_eq!(seed_of(&o, "a"), 4);
    let o = run_with_env(&["simulate", s(&seeded), "--size", "2", "--out", s(&out("b"))], "9");
    assert_eq!(seed_of(&o, "b"), 8);
    let o = run_with_env(&["simulate", s(&plain), "--size", "2", "--out", s(&out("c"))], "9");
    assert_eq!(seed_of(&o, "c"), 9);
    let o = run(&["simulate", s(&plain), "--size", "2", "--out", s(&out("d"))]);
    assert_eq!(seed_of(&o, "d"), 0);
    let o = run_with_env(&["simulate", s(&plain), "--size", "2", "--out", s(&out("e"))], "nine");
    assert_eq!(code(&o), 2);
}

#[test]
fn estimate_round_trips_to_the_edge_density() {
    let dir = tempfile::tempdir().unwrap();
    let model = write(dir.path(), "three-part.toml", THREE_PART);
    let size = 12.5;
    assert_eq!(code(&run(&["simulate", s(&model), "--size", "12.5", "--seed", "2", "--out", s(&dir.path().join("g"))])), 0);
    let manifest = parse_manifest(&fs::read_to_string(dir.path().join("g.manifest.json")).unwrap()).unwrap();
    let o = run(&["estimate", s(&dir.path().join("g.edges")), "--size", "12.5", "--out", s(&dir.path().join("w"))]);
    assert_eq!(code(&o), 0);
    let pixel = parse_pixel_csv(&fs::read_to_string(dir.path().join("w.pixel.csv")).unwrap()).unwrap();
    assert_eq!(pixel.size(), manifest.vertices);
    // The pixel file is a valid graphon source for a model.
    let m = write(dir.path(), "est.toml", "[W]\npixel = \"w.pixel.csv\"\n");
    let loaded = ModelConfig::load(&m).unwrap();
    let GraphonSpec::Pixel(px) = loaded.graphex.graphon() else { panic!("pixel graphon expected") };
    let l1 = px.l1_norm();
    let expect = 2.0 * manifest.edges as f64 / (size * size);
    assert!((l1 - expect).abs() <= 4.0 * f64::EPSILON * expect, "{l1} vs {expect}");

    let o = run(&["estimate", s(&dir.path().join("g.edges")), "--no-size", "--out", s(&dir.path().join("u"))]);
    assert_eq!(code(&o), 0);
    let unit = parse_pixel_csv(&fs::read_to_string(dir.path().join("u.pixel.csv")).unwrap()).unwrap();
    assert_eq!(unit.values(), px.values());
    assert_eq!(unit.cell_width(), 1.0 / manifest.vertices as f64);
}

#[test]
fn sample_keeps_everything_at_p_one() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.edges", "1 2\n2 3\n3 1\n3 4\n");
    let o = run(&["sample", s(&g), "--p", "1", "--seed", "1", "--out", s(&dir.path().join("a"))]);
    assert_eq!(code(&o), 0);
    let kept = parse_edge_list(&fs::read_to_string(dir.path().join("a.edges")).unwrap()).unwrap();
    assert_eq!(kept, parse_edge_list("1 2\n2 3\n3 1\n3 4\n").unwrap().canonical());
    let manifest = parse_manifest(&fs::read_to_string(dir.path().join("a.manifest.json")).unwrap()).unwrap();
    assert_eq!((manifest.command.as_str(), manifest.p, manifest.edges), ("sample", Some(1.0), 4));
    let o = run(&["sample", s(&g), "--p", "0", "--out", s(&dir.path().join("b"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read_to_string(dir.path().join("b.edges")).unwrap(), "");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x");
    let trivial = write(dir.path(), "trivial.toml", "I = 0.0\n");
    assert_eq!(code(&run(&["simulate", s(&trivial), "--size", "1", "--out", s(&out)])), 2);
    let unknown = write(dir.path(), "unknown.toml", "colour = 1\n");
    assert_eq!(code(&run(&["simulate", s(&unknown), "--size", "1", "--out", s(&out)])), 2);
    let model = write(dir.path(), "exp.toml", EXP_PRODUCT);
    assert_eq!(code(&run(&["simulate", s(&model), "--size", "-1", "--out", s(&out)])), 2);
    let missing = dir.path().join("missing.toml");
    assert_eq!(code(&run(&["simulate", s(&missing), "--size", "1", "--out", s(&out)])), 3);
    let unwritable = dir.path().join("no/such/dir/g");
    assert_eq!(code(&run(&["simulate", s(&model), "--size", "1", "--out", s(&unwritable)])), 3);
    let bad = write(dir.path(), "bad.edges", "1 x\n");
    assert_eq!(code(&run(&["estimate", s(&bad), "--no-size", "--out", s(&out)])), 2);
    let empty = write(dir.path(), "empty.edges", "");
    assert_eq!(code(&run(&["estimate", s(&empty), "--no-size", "--out", s(&out)])), 2);
    assert_eq!(code(&run(&["estimate", s(&empty), "--out", s(&out)])), 2);
    assert_eq!(code(&run(&["sample", s(&bad), "--p", "2", "--out", s(&out)])), 2);
    assert_eq!(code(&run(&["verify", "--suite", "nonsense"])), 2);
    assert_eq!(code(&run(&["verify", "--suite", "projectivity", "--alpha", "1.5"])), 2);
}

#[test]
fn verify_reports_and_gates() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.csv");
    let o = run(&["verify", "--suite", "projectivity", "--seed", "3", "--out", s(&report)]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&report).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(graphex::io::REPORT_HEADER));
    assert!(lines.next().unwrap().starts_with("projectivity,"));
    // Same seed, same bytes on standard output.
    let stdout = run(&["verify", "--suite", "projectivity", "--seed", "3"]);
    assert_eq!(String::from_utf8(stdout.stdout).unwrap(), text);

    // An alpha near one rejects almost any pair of ensembles.
    let o = run(&["verify", "--suite", "sampling-invariance", "--replicates", "200", "--alpha", "0.999"]);
    assert_eq!(code(&o), 1);

    let tiny = write(dir.path(), "tiny.edges", "1 2\n2 3\n");
    let o = run(&["verify", "--suite", "coupling-bounds", "--graph", s(&tiny), "--ratio", "0.5", "--ratio", "0.25"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let rows = String::from_utf8(o.stdout).unwrap();
    assert_eq!(rows.lines().count(), 1 + 4);
}
