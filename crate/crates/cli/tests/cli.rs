//! End-to-end runs of the `quadual` binary.

use std::fs;
use std::path::PathBuf;

use assert_cmd::Command;
use quick_xml::events::Event;
use quick_xml::Reader;
use tempfile::TempDir;

use quadual::congruent;
use quadual_cli::parse_document;

const SQUARE: &str = r#"{"vertices":[[0,0],[0.5,0],[0.5,0.5],[0,0.5]],"label":"square"}"#;
const RECTANGLE: &str = r#"{"vertices":[[0,0],[0.4,0],[0.4,0.6],[0,0.6]]}"#;
const KITE: &str = r#"{"vertices":[[0,0],[1,0],[1.3,0.9],[-0.2,0.7]]}"#;
const DART: &str = r#"{"vertices":[[0,0],[1,0],[0.4,0.3],[0.1,1]]}"#;

fn equiangular_crossed() -> String {
    let s = 0.5f64.sqrt();
    format!(r#"{{"vertices":[[0,0],[1,0],[{},{}],[{},{}]]}}"#, 1.0 - s, s, 1.0 - s, -s)
}

fn quadual() -> Command {
    Command::cargo_bin("quadual").unwrap()
}

fn stdout_of(args: &[&str], stdin: &str) -> (String, String, i32) {
    let out = quadual().args(args).write_stdin(stdin.to_string()).output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn numbers_after(prefix: &str, text: &str) -> Vec<f64> {
    let line = text.lines().find(|l| l.starts_with(prefix)).unwrap_or_else(|| panic!("no {prefix} in {text}"));
    line[prefix.len()..].split(',').map(|x| x.trim().parse().unwrap()).collect()
}

#[test]
fn classify_each_class() {
    for (doc, class) in [(KITE, "convex"), (DART, "non-convex-simple"), (&equiangular_crossed(), "self-intersecting")] {
        let (out, _, code) = stdout_of(&["classify"], doc);
        assert_eq!((out.trim(), code), (class, 0));
        let (json, _, _) = stdout_of(&["classify", "--json"], doc);
        assert_eq!(json.trim(), format!(r#"{{"class":"{class}"}}"#));
    }
}

#[test]
fn verify_square_passes() {
    let (out, _, code) = stdout_of(&["verify"], SQUARE);
    assert_eq!(code, 0, "{out}");
    for name in ["edge-sums", "diagonals", "class-preservation", "involution", "parallelogram", "compass"] {
        let row = out.lines().find(|l| l.starts_with(name)).unwrap();
        assert!(row.contains("PASS"), "{row}");
    }
}

#[test]
fn dual_of_rectangle_swaps_sides() {
    let (out, err, code) = stdout_of(&["dual"], RECTANGLE);
    assert_eq!(code, 0);
    let sides = numbers_after("edge lengths: ", &err);
    for (s, want) in sides.iter().zip([0.6, 0.4, 0.6, 0.4]) {
        assert!((s - want).abs() < 1e-12, "{sides:?}");
    }
    let diagonals = numbers_after("diagonals: ", &err);
    for d in diagonals {
        assert!((d - 0.52f64.sqrt()).abs() < 1e-12);
    }
    let doc = parse_document(&out).unwrap();
    assert_eq!(doc.label.as_deref(), Some("dual"));

    let (json, _, _) = stdout_of(&["dual", "--json"], RECTANGLE);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["edge_lengths"].as_array().unwrap().len(), 4);
}

#[test]
fn crossed_equiangular_keeps_its_class() {
    let (out, _, code) = stdout_of(&["verify"], &equiangular_crossed());
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("self-intersecting -> self-intersecting"), "{out}");
}

#[test]
fn dual_twice_is_congruent_to_input() {
    let dir = TempDir::new().unwrap();
    for (i, doc) in [SQUARE, RECTANGLE, KITE, DART, &equiangular_crossed()].into_iter().enumerate() {
        let input = dir.path().join(format!("q{i}.json"));
        let once = dir.path().join(format!("d{i}.json"));
        fs::write(&input, doc).unwrap();
        quadual().args(["dual", "--in"]).arg(&input).arg("--out").arg(&once).assert().success();
        let (twice, _, code) = stdout_of(&["dual", "--in", once.to_str().unwrap()], "");
        assert_eq!(code, 0);
        let original = parse_document(doc).unwrap().quadrangle.normalize();
        let back = parse_document(&twice).unwrap().quadrangle;
        let r = congruent(&back, &original, 1e-8, false);
        assert!(r.congruent, "{doc}: {r:?}");
    }
}

#[test]
fn dual_pipes_into_dual() {
    let (once, _, _) = stdout_of(&["dual"], KITE);
    let (twice, _, code) = stdout_of(&["dual"], &once);
    assert_eq!(code, 0);
    let back = parse_document(&twice).unwrap();
    assert_eq!(back.label.as_deref(), Some("dual of dual"));
    let original = parse_document(KITE).unwrap().quadrangle.normalize();
    assert!(congruent(&back.quadrangle, &original, 1e-8, false).congruent);
}

#[test]
fn compass_matches_dual() {
    let (out, err, code) = stdout_of(&["compass"], KITE);
    assert_eq!(code, 0, "{err}");
    assert!(parse_document(&out).is_ok());
    let line = err.lines().find(|l| l.starts_with("deviation from algebraic dual")).unwrap();
    let value: f64 = line.split(": ").nth(1).unwrap().split(' ').next().unwrap().parse().unwrap();
    assert!(value < 1e-12, "{line}");
    assert!(line.ends_with("(relabel shift 0)"));
    let radii = numbers_after("radii |B1A| |B1C| |D1A| |D1C|: ", &err);
    let expected = numbers_after("expected 1-s1 1-s2 1-s4 1-s3: ", &err);
    for (r, e) in radii.iter().zip(&expected) {
        assert!((r - e).abs() < 1e-12);
    }
}

#[test]
fn compass_refuses_non_convex() {
    let (_, err, code) = stdout_of(&["compass"], DART);
    assert_eq!(code, 2);
    assert!(err.contains("not convex"), "{err}");
}

#[test]
fn sweep_reports_every_step() {
    let dir = TempDir::new().unwrap();
    let end = dir.path().join("end.json");
    fs::write(&end, r#"{"vertices":[[0,0],[1,0],[1,1],[2.2,0.2]]}"#).unwrap();
    let start = r#"{"vertices":[[0,0],[1,0],[1,1],[0,1]]}"#;
    let (out, _, code) = stdout_of(&["sweep", "--end", end.to_str().unwrap(), "--steps", "64"], start);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(1).take_while(|l| !l.starts_with("class constant")).collect();
    assert_eq!(rows.len(), 64);
    assert!(rows[21].contains("degenerate"), "{}", rows[21]);
    assert!(rows[0].contains("convex") && rows[63].contains("self-intersecting"));
    assert!(out.contains("class constant: false"));

    let (json, _, _) = stdout_of(&["sweep", "--json", "--end", end.to_str().unwrap(), "--steps", "5"], start);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 5);
}

#[test]
fn random_verification() {
    let (out, _, code) = stdout_of(&["verify", "--random", "40", "--seed", "11"], "");
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("40 random quadrangles, seed 11"));
    let (again, _, _) = stdout_of(&["verify", "--random", "40", "--seed", "11"], "");
    assert_eq!(out, again);
}

#[test]
fn tolerance_too_tight_fails_verification() {
    let (out, err, code) = stdout_of(&["verify", "--tol", "1e-30"], KITE);
    assert_eq!(code, 4, "{out}");
    assert!(out.contains("FAIL"));
    assert!(err.contains("verification failed"));
}

#[test]
fn exit_codes() {
    let degenerate = r#"{"vertices":[[0,0],[1,0],[2,0],[0,1]]}"#;
    let (_, err, code) = stdout_of(&["classify"], degenerate);
    assert_eq!(code, 2);
    assert!(err.contains("validation error: degenerate"), "{err}");

    let (_, err, code) = stdout_of(&["dual"], "{\"vertices\": [[0,0],\n[1,0]");
    assert_eq!(code, 2);
    assert!(err.contains("parse error at line 2"), "{err}");

    let (_, err, code) = stdout_of(&["dual"], r#"{"vertices":[[0,0],[1,0],[1,1]]}"#);
    assert_eq!(code, 2);
    assert!(err.contains("expected 4 vertices"), "{err}");

    assert_eq!(stdout_of(&["frobnicate"], "").2, 1);
    assert_eq!(stdout_of(&["dual", "--tol", "abc"], "").2, 1);
    assert_eq!(stdout_of(&["dual", "--tol", "-1"], SQUARE).2, 1);
    assert_eq!(stdout_of(&["--help"], "").2, 0);
    assert_eq!(stdout_of(&["classify", "--in", "/nonexistent/q.json"], "").2, 2);

    // fine under the default threshold, degenerate under a coarse one
    let nearly = r#"{"vertices":[[0,0],[1,0],[2,0.0001],[0,1]]}"#;
    assert_eq!(stdout_of(&["classify"], nearly).2, 0);
    assert_eq!(stdout_of(&["classify", "--eps", "1e-4"], nearly).2, 2);
}

#[test]
fn degenerate_dual_exits_three() {
    // a side of length 1e-19 is harmless here but squeezes the dual's angle at N
    let doc = r#"{"vertices":[[0,0],[1e-19,0],[1.4,0.7],[-0.3,1.0]]}"#;
    assert_eq!(stdout_of(&["classify"], doc).2, 0);
    let (_, err, code) = stdout_of(&["dual"], doc);
    assert_eq!(code, 3, "{err}");
    assert!(err.starts_with("error: dual quadrangle is degenerate"), "{err}");
    assert_eq!(stdout_of(&["render"], doc).2, 3);
}

fn svg_attr(svg: &str, element: &[u8], attr: &[u8]) -> Vec<String> {
    let mut reader = Reader::from_str(svg);
    let mut found = Vec::new();
    loop {
        match reader.read_event().unwrap() {
            Event::Start(e) | Event::Empty(e) if e.name().as_ref() == element => {
                if let Some(a) = e.try_get_attribute(attr).unwrap() {
                    found.push(String::from_utf8(a.value.to_vec()).unwrap());
                }
            }
            Event::Eof => break,
            _ => {}
        }
    }
    found
}

fn assert_well_formed(svg: &str) {
    let mut reader = Reader::from_str(svg);
    let (mut depth, mut roots) = (0i32, 0);
    loop {
        match reader.read_event().expect("well-formed XML") {
            Event::Start(_) => {
                if depth == 0 {
                    roots += 1;
                }
                depth += 1;
            }
            Event::End(_) => depth -= 1,
            Event::Empty(_) if depth == 0 => roots += 1,
            Event::Text(t) if depth == 0 => assert!(t.unescape().unwrap().trim().is_empty()),
            Event::Eof => break,
            _ => {}
        }
        assert!(depth >= 0);
    }
    assert_eq!((depth, roots), (0, 1));
}

#[test]
fn render_is_well_formed_svg() {
    for doc in [SQUARE, KITE, DART, &equiangular_crossed()] {
        let (svg, _, code) = stdout_of(&["render", "--diagonals"], doc);
        assert_eq!(code, 0);
        assert_well_formed(&svg);

        let view: Vec<f64> = svg_attr(&svg, b"svg", b"viewBox")[0].split(' ').map(|x| x.parse().unwrap()).collect();
        let xs: Vec<f64> = svg_attr(&svg, b"circle", b"cx").iter().map(|x| x.parse().unwrap()).collect();
        let ys: Vec<f64> = svg_attr(&svg, b"circle", b"cy").iter().map(|x| x.parse().unwrap()).collect();
        assert_eq!(xs.len(), 8);
        let (x0, x1) = xs.iter().fold((f64::MAX, f64::MIN), |(a, b), &x| (a.min(x), b.max(x)));
        let (y0, y1) = ys.iter().fold((f64::MAX, f64::MIN), |(a, b), &y| (a.min(y), b.max(y)));
        let (mx, my) = (0.05 * (x1 - x0), 0.05 * (y1 - y0));
        assert!(view[0] <= x0 - mx && view[0] + view[2] >= x1 + mx, "{view:?}");
        assert!(view[1] <= y0 - my && view[1] + view[3] >= y1 + my, "{view:?}");
        assert_eq!(svg_attr(&svg, b"line", b"x1").len(), 4);

        for number in xs.iter().chain(&ys) {
            let digits = number.to_string().chars().filter(char::is_ascii_digit).collect::<String>();
            assert!(digits.trim_start_matches('0').len() <= 9, "{number}");
        }
    }
}

#[test]
fn render_options_and_file_output() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("q.svg");
    quadual()
        .args(["render", "--no-labels", "--width", "300", "--height", "120", "--out"])
        .arg(&path)
        .write_stdin(SQUARE)
        .assert()
        .success()
        .stdout("");
    let svg = fs::read_to_string(&path).unwrap();
    assert_well_formed(&svg);
    assert_eq!(svg_attr(&svg, b"svg", b"width"), ["300"]);
    assert!(svg_attr(&svg, b"text", b"x").is_empty());
    assert!(svg.contains("<title>square</title>"));
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Set `UPDATE_GOLDEN=1` to rewrite the expected files.
fn check_golden(name: &str, actual: &str) {
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, actual).unwrap();
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(actual, expected, "{name} differs from golden file");
}

#[test]
fn golden_outputs() {
    check_golden("square.svg", &stdout_of(&["render", "--diagonals"], SQUARE).0);
    check_golden("square-classify.txt", &stdout_of(&["classify"], SQUARE).0);
    check_golden("kite-sweep.txt", &{
        let dir = TempDir::new().unwrap();
        let end = dir.path().join("end.json");
        fs::write(&end, RECTANGLE).unwrap();
        stdout_of(&["sweep", "--end", end.to_str().unwrap(), "--steps", "5"], KITE).0
    });
}
