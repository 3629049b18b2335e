use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bishop_ruled::geometry::analyze_point;
use bishop_ruled::smarandache::JetMode;
use bishop_ruled::Vec3;
use bishop_ruled_cli::{Overrides, RunConfig, Session, OUT_DIR_ENV};
use serde_json::Value;
use tempfile::TempDir;

const HELIX: &str = r#"{"curve": {"kind": "builtin", "name": "helix"}}"#;
const SLANT: &str = r#"{"curve": {"kind": "bishop_profile", "name": "slant",
    "params": {"samples": [[0, 0.4, 0.4], [6.283185307179586, 0.4, 0.4]]}}}"#;

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str], config: &Path, out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bishop-ruled"))
        .args(args)
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .env_remove(OUT_DIR_ENV)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn grid_rows(path: &Path) -> Vec<Vec<String>> {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,v,K,H,class,singular"));
    lines.map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check named {name}"))
}

#[test]
fn analyze_helix_writes_three_reports() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "helix.json", HELIX);
    let out = tmp.path().join("out");
    let o = run(&["analyze"], &cfg, &out);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for kind in ["tn1", "tn2", "n1n2"] {
        assert!(out.join(format!("{kind}_report.json")).is_file(), "{kind}");
    }
    assert!(out.join("frames.csv").is_file());
    let n1n2 = json(&out.join("n1n2_report.json"));
    assert_eq!(n1n2["developable"], true);
    assert_eq!(n1n2["kind"], "n1n2");
    assert_eq!(json(&out.join("tn1_report.json"))["developable"], false);
}

#[test]
fn circle_tn1_is_a_developable_cylinder_with_constant_mean_curvature() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "c.json", r#"{"curve": {"kind": "builtin", "name": "circle"}, "kinds": ["tn1"]}"#);
    let out = tmp.path().join("out");
    let o = run(&["analyze"], &cfg, &out);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&out.join("tn1_report.json"));
    assert_eq!(r["developable"], true);
    let cmc = r["cmc"].as_f64().expect("constant mean curvature");
    assert!((cmc + 0.5).abs() < 1e-6, "cmc {cmc}");
}

#[test]
fn bad_configs_exit_2_without_output() {
    let tmp = TempDir::new().unwrap();
    let cases = [
        ("syntax", "{ not json"),
        ("unknown_field", r#"{"curve": {"kind": "builtin", "name": "helix"}, "colour": 1}"#),
        ("unknown_curve", r#"{"curve": {"kind": "builtin", "name": "trefoil"}}"#),
        ("unknown_kind", r#"{"curve": {"kind": "builtin", "name": "helix"}, "kinds": ["tn3"]}"#),
        ("ns_one", r#"{"curve": {"kind": "builtin", "name": "helix"}, "ns": 1}"#),
        ("bad_domain", r#"{"curve": {"kind": "builtin", "name": "helix", "domain": [1, 1]}}"#),
        ("missing_spec", r#"{"curve": "nowhere.json"}"#),
    ];
    for (name, body) in cases {
        let cfg = write_config(tmp.path(), &format!("{name}.json"), body);
        let out = tmp.path().join(format!("out_{name}"));
        let o = run(&["analyze"], &cfg, &out);
        assert_eq!(code(&o), 2, "{name}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!out.exists(), "{name} left an output directory");
    }
}

#[test]
fn degenerate_curve_exits_3_without_output() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "point.json",
        r#"{"curve": {"kind": "builtin", "name": "helix", "params": {"radius": 0, "pitch": 0}}}"#,
    );
    let out = tmp.path().join("out");
    let o = run(&["analyze"], &cfg, &out);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!out.exists());
}

#[test]
fn unwritable_output_exits_4() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "helix.json", HELIX);
    let blocker = tmp.path().join("file");
    fs::write(&blocker, "").unwrap();
    let o = run(&["grid", "--kinds", "tn1", "--ns", "5", "--nv", "3"], &cfg, &blocker.join("out"));
    assert_eq!(code(&o), 4, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn mesh_has_full_lattice_and_is_reproducible() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "helix.json", HELIX);
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for out in [&a, &b] {
        let o = run(&["mesh", "--kinds", "tn1"], &cfg, out);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    let obj = fs::read_to_string(a.join("tn1.obj")).unwrap();
    assert_eq!(obj, fs::read_to_string(b.join("tn1.obj")).unwrap());
    assert_eq!(fs::read(a.join("tn1_vertices.csv")).unwrap(), fs::read(b.join("tn1_vertices.csv")).unwrap());

    let vertices: Vec<Vec3> = obj
        .lines()
        .filter_map(|l| l.strip_prefix("v "))
        .map(|l| {
            let c: Vec<f64> = l.split(' ').map(|x| x.parse().unwrap()).collect();
            Vec3::new(c[0], c[1], c[2])
        })
        .collect();
    assert_eq!(vertices.len(), 201 * 41);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 2 * 200 * 40);

    // s = 0 is row 100, v = 0 is column 20
    let p = vertices[100 * 41 + 20];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((p - Vec3::new(-h, 0.5, 0.5)).norm() < 1e-9, "{p:?}");
}

#[test]
fn mesh_faces_follow_the_unit_normal() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "helix.json", HELIX);
    let out = tmp.path().join("out");
    let args = ["mesh", "--ns", "101", "--nv", "21"];
    let o = run(&args, &cfg, &out);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let overrides = Overrides { ns: Some(101), nv: Some(21), ..Overrides::default() };
    let session = Session::new(RunConfig::load(&cfg, &overrides).unwrap()).unwrap();
    let points: Vec<(f64, f64)> = session.mesh_grid().unwrap().points().collect();
    for surface in &session.surfaces {
        let kind = surface.kind();
        let obj = fs::read_to_string(out.join(format!("{kind}.obj"))).unwrap();
        let vertices: Vec<Vec3> = obj
            .lines()
            .filter_map(|l| l.strip_prefix("v "))
            .map(|l| {
                let c: Vec<f64> = l.split(' ').map(|x| x.parse().unwrap()).collect();
                Vec3::new(c[0], c[1], c[2])
            })
            .collect();
        let faces: Vec<[usize; 3]> = obj
            .lines()
            .filter_map(|l| l.strip_prefix("f "))
            .map(|l| {
                let f: Vec<usize> = l.split(' ').map(|x| x.parse::<usize>().unwrap() - 1).collect();
                [f[0], f[1], f[2]]
            })
            .collect();
        let face_normal = |f: &[usize; 3]| (vertices[f[1]] - vertices[f[0]]).cross(&(vertices[f[2]] - vertices[f[0]]));
        let normal = |k: usize| {
            let (s, v) = points[k];
            analyze_point(surface, s, v, JetMode::Numeric, 1e-6).ok().map(|a| a.normal)
        };
        let mut checked = 0;
        for quad in faces.chunks(2) {
            let mut corners: Vec<usize> = quad.iter().flatten().copied().collect();
            corners.sort_unstable();
            corners.dedup();
            let Some(normals) = corners.iter().map(|&k| normal(k)).collect::<Option<Vec<_>>>() else { continue };
            // near a singular point the lattice does not resolve the normal field
            if normals.iter().any(|n| n.dot(&normals[0]) < 0.5) {
                continue;
            }
            let n = normal(quad[0][0]).unwrap();
            let (s, v) = points[quad[0][0]];
            for f in quad {
                assert!(face_normal(f).dot(&n) > 0.0, "{kind} face {f:?} at ({s}, {v})");
            }
            checked += 1;
        }
        // N1N2 loses the 200 quads touching its singular ruling v = 0
        assert!(checked > 1750, "{kind}: only {checked} of 2000 quads checked");
    }
}

#[test]
fn grid_n1n2_is_flat_and_tn1_matches_closed_form() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "helix.json", HELIX);
    let out = tmp.path().join("out");
    let o = run(&["grid", "--kinds", "tn1,n1n2"], &cfg, &out);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let n1n2 = grid_rows(&out.join("n1n2_grid.csv"));
    assert!(!n1n2.is_empty());
    for row in n1n2.iter().filter(|r| r[5] == "0") {
        let k: f64 = row[2].parse().unwrap();
        assert!(k.abs() < 1e-8, "K = {k} at s = {}, v = {}", row[0], row[1]);
    }

    let tn1 = grid_rows(&out.join("tn1_grid.csv"));
    let origin = tn1
        .iter()
        .find(|r| r[0].parse::<f64>().unwrap().abs() < 1e-12 && r[1].parse::<f64>().unwrap().abs() < 1e-12)
        .expect("grid contains (0, 0)");
    let h: f64 = origin[3].parse().unwrap();
    assert!((h + 0.5).abs() < 1e-5, "H(0, 0) = {h}");
}

#[test]
fn n1n2_rulings_at_v_zero_are_singular_without_the_gap() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "helix.json",
        r#"{"curve": {"kind": "builtin", "name": "helix"}, "kinds": ["n1n2"], "n1n2_v_gap": 0, "ns": 11, "nv": 5}"#,
    );
    let out = tmp.path().join("out");
    let o = run(&["grid"], &cfg, &out);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = grid_rows(&out.join("n1n2_grid.csv"));
    assert_eq!(rows.len(), 11 * 5);
    let on_curve: Vec<_> = rows.iter().filter(|r| r[1].parse::<f64>().unwrap() == 0.0).collect();
    assert_eq!(on_curve.len(), 11);
    for row in on_curve {
        assert_eq!(row[5], "1", "s = {}", row[0]);
        assert_eq!(row[4], "singular");
    }
}

#[test]
fn verify_helix_passes() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "helix.json", HELIX);
    let out = tmp.path().join("out");
    let o = run(&["verify"], &cfg, &out);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let r = json(&out.join("verify.json"));
    assert_eq!(r["passed"], true);
    assert_eq!(check(&r, "n1n2 K vanishes")["passed"], true);
    assert_eq!(check(&r, "n1n2 kappa_g = -kappa")["passed"], true);
}

#[test]
fn verify_slant_helix_n1n2_is_minimal() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "slant.json", SLANT);
    let out = tmp.path().join("out");
    let o = run(&["verify", "--kinds", "n1n2"], &cfg, &out);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let r = json(&out.join("verify.json"));
    assert_eq!(check(&r, "n1n2 minimal iff slant helix")["passed"], true);
}

#[test]
fn output_directory_from_environment() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "helix.json", HELIX);
    let out = tmp.path().join("env_out");
    let o = Command::new(env!("CARGO_BIN_EXE_bishop-ruled"))
        .args(["grid", "--kinds", "tn2", "--ns", "5", "--nv", "3", "--config"])
        .arg(&cfg)
        .env(OUT_DIR_ENV, &out)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.join("tn2_grid.csv").is_file());
}

#[test]
fn kinds_flag_limits_outputs() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "helix.json", HELIX);
    let out = tmp.path().join("out");
    let o = run(&["grid", "--kinds", "tn1", "--ns", "5", "--nv", "3"], &cfg, &out);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut names: Vec<String> = fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names, ["tn1_grid.csv"]);
}

#[test]
fn curve_spec_path_is_relative_to_the_config() {
    let tmp = TempDir::new().unwrap();
    let sub = tmp.path().join("specs");
    fs::create_dir(&sub).unwrap();
    fs::write(sub.join("circle.json"), r#"{"kind": "builtin", "name": "circle", "params": {"radius": 2}}"#).unwrap();
    let cfg = write_config(&sub, "run.json", r#"{"curve": "circle.json", "kinds": ["tn1"]}"#);
    let out = tmp.path().join("out");
    let o = run(&["analyze"], &cfg, &out);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&out.join("tn1_report.json"));
    assert_eq!(r["curve"], "circle");
    // the TN1 base curve (T + N1)/√2 is a unit circle whatever the radius
    let cmc = r["cmc"].as_f64().unwrap();
    assert!((cmc + 0.5).abs() < 1e-6, "cmc {cmc}");
    let frames = fs::read_to_string(out.join("frames.csv")).unwrap();
    let k1: f64 = frames.lines().nth(1).unwrap().split(',').nth(10).unwrap().parse().unwrap();
    assert!((k1 - 0.5).abs() < 1e-6, "k1 {k1}");
}
