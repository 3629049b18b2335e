//! File formats and all-or-nothing writes.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use bishop_ruled::geometry::{GridSample, PointClass, SurfaceReport};
use bishop_ruled::verify::{CheckResult, VerificationReport};
use bishop_ruled::{BishopData, RuledSurface, SurfaceGrid, Vec3};
use serde::Serialize;

use crate::CliError;

/// Files rendered in memory and committed together.
#[derive(Debug, Default)]
pub struct OutputSet {
    files: Vec<(String, Vec<u8>)>,
}

impl OutputSet {
    pub fn add(&mut self, name: impl Into<String>, contents: impl Into<Vec<u8>>) {
        self.files.push((name.into(), contents.into()));
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.files.iter().map(|(n, _)| n.as_str())
    }

    /// Writes every file to a temporary name, then renames them all. On error
    /// the temporaries are removed and nothing under its final name is left.
    pub fn commit(&self, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
        let io_err = |path: &Path, source: io::Error| CliError::Io { path: path.to_path_buf(), source };
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        let mut staged: Vec<(PathBuf, PathBuf)> = Vec::new();
        let cleanup = |staged: &[(PathBuf, PathBuf)]| {
            for (tmp, _) in staged {
                let _ = fs::remove_file(tmp);
            }
        };
        for (name, contents) in &self.files {
            let tmp = dir.join(format!(".{name}.tmp"));
            if let Err(e) = fs::write(&tmp, contents) {
                let _ = fs::remove_file(&tmp);
                cleanup(&staged);
                return Err(io_err(&tmp, e));
            }
            staged.push((tmp, dir.join(name)));
        }
        for (i, (tmp, dest)) in staged.iter().enumerate() {
            if let Err(e) = fs::rename(tmp, dest) {
                cleanup(&staged[i..]);
                return Err(io_err(dest, e));
            }
        }
        Ok(staged.into_iter().map(|(_, dest)| dest).collect())
    }
}

/// 17 significant digits.
fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "NaN".into()
    }
}

pub fn frames_csv(b: &BishopData) -> String {
    let mut out = String::from("s,Tx,Ty,Tz,N1x,N1y,N1z,N2x,N2y,N2z,k1,k2,theta\n");
    for i in 0..b.len() {
        let row: Vec<String> = [b.s[i]]
            .into_iter()
            .chain(b.t[i].iter().copied())
            .chain(b.n1[i].iter().copied())
            .chain(b.n2[i].iter().copied())
            .chain([b.k1[i], b.k2[i], b.theta[i]])
            .map(num)
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn grid_csv(samples: &[GridSample]) -> String {
    let mut out = String::from("s,v,K,H,class,singular\n");
    for p in samples {
        let (k, h) = p.analysis.map_or((f64::NAN, f64::NAN), |a| (a.k, a.h));
        let class = p.class();
        let singular = u8::from(class == PointClass::Singular);
        let _ = writeln!(out, "{},{},{},{},{},{singular}", num(p.s), num(p.v), num(k), num(h), class.name());
    }
    out
}

#[derive(Serialize)]
struct Histogram {
    elliptic: usize,
    hyperbolic: usize,
    parabolic: usize,
    planar: usize,
    singular: usize,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    curve: &'a str,
    kind: String,
    developable: bool,
    minimal: bool,
    cmc: Option<f64>,
    histogram: Histogram,
    #[serde(rename = "maxAbsK")]
    max_abs_k: f64,
    #[serde(rename = "maxAbsH")]
    max_abs_h: f64,
    singular_points: Vec<[f64; 2]>,
    regular_points: usize,
    h_range: [f64; 2],
    kappa_eps: f64,
    grid: [usize; 2],
}

pub fn report_json(curve: &str, r: &SurfaceReport, grid: &SurfaceGrid) -> String {
    let h = &r.histogram;
    let json = ReportJson {
        curve,
        kind: r.kind.to_string(),
        developable: r.developable,
        minimal: r.minimal,
        cmc: r.cmc,
        histogram: Histogram {
            elliptic: h.elliptic,
            hyperbolic: h.hyperbolic,
            parabolic: h.parabolic,
            planar: h.planar,
            singular: h.singular,
        },
        max_abs_k: r.max_abs_k,
        max_abs_h: r.max_abs_h,
        singular_points: r.singular_points.iter().map(|&(s, v)| [s, v]).collect(),
        regular_points: r.regular_points,
        h_range: [r.h_range.0, r.h_range.1],
        kappa_eps: r.kappa_eps,
        grid: [grid.s.len(), grid.v.len()],
    };
    serde_json::to_string_pretty(&json).expect("report serializes") + "\n"
}

#[derive(Serialize)]
struct CheckJson<'a> {
    name: &'a str,
    asserted: bool,
    passed: bool,
    max_deviation: f64,
    tolerance: Option<f64>,
    location: Option<[f64; 2]>,
    samples: usize,
    note: &'a str,
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    curve: &'a str,
    passed: bool,
    checks: Vec<CheckJson<'a>>,
}

fn check_json(c: &CheckResult) -> CheckJson<'_> {
    CheckJson {
        name: &c.name,
        asserted: c.asserted,
        passed: c.passed,
        max_deviation: c.max_deviation,
        tolerance: c.asserted.then_some(c.tolerance),
        location: c.location.map(|(s, v)| [s, v]),
        samples: c.samples,
        note: &c.note,
    }
}

pub fn verify_json(curve: &str, report: &VerificationReport) -> String {
    let json = VerifyJson { curve, passed: report.passed(), checks: report.checks.iter().map(check_json).collect() };
    serde_json::to_string_pretty(&json).expect("verification report serializes") + "\n"
}

/// Vertex lattice of one surface with per-vertex curvature data.
#[derive(Debug, Clone)]
pub struct MeshGrid {
    pub ns: usize,
    pub nv: usize,
    /// `s`-major: vertex `(i, j)` sits at `i * nv + j`.
    pub vertices: Vec<Vec3>,
    pub normals: Vec<Option<Vec3>>,
    pub k: Vec<f64>,
    pub h: Vec<f64>,
    /// [`PointClass::code`]; singular vertices carry `-1`.
    pub class: Vec<i32>,
}

impl MeshGrid {
    pub fn build(surface: &RuledSurface, grid: &SurfaceGrid, samples: &[GridSample]) -> Result<Self, CliError> {
        let mut vertices = Vec::with_capacity(grid.len());
        for (s, v) in grid.points() {
            vertices.push(surface.point(s, v).map_err(CliError::Numeric)?);
        }
        Ok(MeshGrid {
            ns: grid.s.len(),
            nv: grid.v.len(),
            vertices,
            normals: samples.iter().map(|p| p.analysis.map(|a| a.normal)).collect(),
            k: samples.iter().map(|p| p.analysis.map_or(f64::NAN, |a| a.k)).collect(),
            h: samples.iter().map(|p| p.analysis.map_or(f64::NAN, |a| a.h)).collect(),
            class: samples.iter().map(|p| p.class().code()).collect(),
        })
    }

    pub fn triangle_count(&self) -> usize {
        2 * (self.ns - 1) * (self.nv - 1)
    }

    /// Two triangles per lattice quad, counterclockwise seen from the normal
    /// at the quad's first vertex. Where that normal is undefined the quad
    /// keeps the lattice orientation, which follows `χ_s × χ_v`.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let idx = |i: usize, j: usize| i * self.nv + j;
        let mut out = Vec::with_capacity(self.triangle_count());
        for i in 0..self.ns - 1 {
            for j in 0..self.nv - 1 {
                let (a, b, c, d) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
                let p = &self.vertices;
                let lattice = (p[b] - p[a]).cross(&(p[d] - p[a]));
                let flip = self.normals[a].is_some_and(|n| lattice.dot(&n) < 0.0);
                if flip {
                    out.push([a, d, c]);
                    out.push([a, c, b]);
                } else {
                    out.push([a, b, c]);
                    out.push([a, c, d]);
                }
            }
        }
        out
    }

    pub fn to_obj(&self, title: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {title}");
        let _ = writeln!(out, "# {} x {} vertices, s-major", self.ns, self.nv);
        for p in &self.vertices {
            let _ = writeln!(out, "v {} {} {}", num(p.x), num(p.y), num(p.z));
        }
        for [a, b, c] in self.triangles() {
            let _ = writeln!(out, "f {} {} {}", a + 1, b + 1, c + 1);
        }
        out
    }

    /// Per-vertex scalars, one row per OBJ vertex.
    pub fn scalars_csv(&self) -> String {
        let mut out = String::from("index,x,y,z,K,H,class\n");
        for (i, p) in self.vertices.iter().enumerate() {
            let _ = writeln!(
                out,
                "{i},{},{},{},{},{},{}",
                num(p.x),
                num(p.y),
                num(p.z),
                num(self.k[i]),
                num(self.h[i]),
                self.class[i]
            );
        }
        out
    }
}
