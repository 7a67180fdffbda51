//! Profile and surface discretisation, plus OBJ / CSV / JSON writers.

use std::collections::{HashMap, HashSet};
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::immersion::{
    check_immersible, detect_closure, stereographic, ClosureResult, ProfileCurve, ThetaProfile,
    CLOSURE_TOL, DEFAULT_Q_MAX,
};
use crate::spherical_family::{classify, SphericalParams};

/// Smallest number of profile samples per period of `f`.
pub const MIN_SAMPLES_PER_PERIOD: usize = 16;
/// Smallest number of rotation samples.
pub const MIN_RING: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Projection {
    /// Keep the points of `S³_c ⊂ ℝ⁴`.
    None,
    Stereographic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Vertices {
    R3(Vec<[f64; 3]>),
    R4(Vec<[f64; 4]>),
}

impl Vertices {
    pub fn len(&self) -> usize {
        match self {
            Vertices::R3(v) => v.len(),
            Vertices::R4(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshProvenance {
    pub params: Option<SphericalParams>,
    pub closure: Option<ClosureResult>,
    pub projection: Projection,
}

/// Quad mesh on an `ns × nt` grid that wraps in both directions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceMesh {
    pub ns: usize,
    pub nt: usize,
    pub vertices: Vertices,
    /// 0-based vertex indices.
    pub faces: Vec<[usize; 4]>,
    pub wrap_s: bool,
    pub wrap_t: bool,
    pub provenance: MeshProvenance,
}

impl SurfaceMesh {
    /// Connects a row-major `ns × nt` vertex grid (`index = i·nt + j`) into
    /// doubly periodic quads. Three-dimensional meshes are wound so that the
    /// enclosed signed volume is non-negative.
    pub fn torus_grid(ns: usize, nt: usize, vertices: Vertices, provenance: MeshProvenance) -> Result<Self> {
        if ns == 0 || nt == 0 {
            return Err(Error::InvalidMesh(format!("empty grid {ns} x {nt}")));
        }
        if vertices.len() != ns * nt {
            return Err(Error::InvalidMesh(format!(
                "{} vertices for a {ns} x {nt} grid",
                vertices.len()
            )));
        }
        let idx = |i: usize, j: usize| (i % ns) * nt + (j % nt);
        let mut faces = Vec::with_capacity(ns * nt);
        for i in 0..ns {
            for j in 0..nt {
                faces.push([idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)]);
            }
        }
        let mut mesh = Self {
            ns,
            nt,
            vertices,
            faces,
            wrap_s: true,
            wrap_t: true,
            provenance,
        };
        if mesh.signed_volume().is_some_and(|v| v < 0.0) {
            mesh.flip();
        }
        Ok(mesh)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn flip(&mut self) {
        for f in &mut self.faces {
            f.swap(1, 3);
        }
    }

    /// Signed volume enclosed by the quads (split into two triangles each).
    /// `None` for meshes in ℝ⁴.
    pub fn signed_volume(&self) -> Option<f64> {
        let Vertices::R3(v) = &self.vertices else {
            return None;
        };
        let tri = |a: [f64; 3], b: [f64; 3], c: [f64; 3]| {
            a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0])
        };
        let total: f64 = self
            .faces
            .iter()
            .map(|f| tri(v[f[0]], v[f[1]], v[f[2]]) + tri(v[f[0]], v[f[2]], v[f[3]]))
            .sum();
        Some(total / 6.0)
    }

    pub fn edge_count(&self) -> usize {
        let mut edges = HashSet::new();
        for f in &self.faces {
            for k in 0..4 {
                let (a, b) = (f[k], f[(k + 1) % 4]);
                edges.insert((a.min(b), a.max(b)));
            }
        }
        edges.len()
    }

    /// `V - E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.faces.len() as i64
    }

    /// Every directed edge occurs once and is matched by its reverse.
    pub fn is_watertight(&self) -> bool {
        let mut half: HashMap<(usize, usize), usize> = HashMap::new();
        for f in &self.faces {
            for k in 0..4 {
                *half.entry((f[k], f[(k + 1) % 4])).or_insert(0) += 1;
            }
        }
        half.iter()
            .all(|(&(a, b), &n)| n == 1 && a != b && half.get(&(b, a)) == Some(&1))
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.vertex_count();
        if let Some(bad) = self.faces.iter().flatten().find(|&&i| i >= n) {
            return Err(Error::InvalidMesh(format!("face index {bad} out of range for {n} vertices")));
        }
        Ok(())
    }
}

fn check_resolution(closure: &ClosureResult, ns: usize) -> Result<()> {
    let need = MIN_SAMPLES_PER_PERIOD as u64 * closure.q;
    if (ns as u64) < need {
        return Err(Error::Range(format!("ns = {ns} is below {need} (16 per period over q = {})", closure.q)));
    }
    Ok(())
}

/// Closed profile curve over `closure.q` periods with `ns` samples.
pub fn build_profile(params: &SphericalParams, closure: &ClosureResult, ns: usize) -> Result<ProfileCurve> {
    check_resolution(closure, ns)?;
    let tp = ThetaProfile::new(params)?;
    ProfileCurve::closed(&tp, closure, ns)
}

/// Swept surface `X(s, t)` on an `ns × nt` grid.
pub fn build_surface_mesh(
    params: &SphericalParams,
    closure: &ClosureResult,
    ns: usize,
    nt: usize,
    projection: Projection,
) -> Result<SurfaceMesh> {
    if nt < MIN_RING {
        return Err(Error::Range(format!("nt = {nt} is below {MIN_RING}")));
    }
    check_resolution(closure, ns)?;
    let tp = ThetaProfile::new(params)?;
    let curve = ProfileCurve::closed(&tp, closure, ns)?;
    let ts: Vec<f64> = (0..nt)
        .map(|j| std::f64::consts::TAU * j as f64 / nt as f64)
        .collect();

    let ambient: Vec<[f64; 4]> = curve
        .samples
        .par_iter()
        .flat_map_iter(|p| {
            let tp = &tp;
            ts.iter().map(move |&t| tp.surface_point_at(p.s, p.theta, t))
        })
        .collect();

    let vertices = match projection {
        Projection::None => Vertices::R4(ambient),
        Projection::Stereographic => Vertices::R3(
            ambient
                .par_iter()
                .map(|&x| stereographic(x, params.c))
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    SurfaceMesh::torus_grid(
        ns,
        nt,
        vertices,
        MeshProvenance {
            params: Some(*params),
            closure: Some(*closure),
            projection,
        },
    )
}

/// Writes `v` / `f` lines: coordinates with 17 significant digits, faces
/// 1-indexed. Only three-dimensional meshes can be written.
pub fn export_obj<W: Write>(mesh: &SurfaceMesh, mut sink: W) -> Result<()> {
    mesh.validate()?;
    let Vertices::R3(vs) = &mesh.vertices else {
        return Err(Error::InvalidMesh(
            "OBJ output needs 3D vertices; project the mesh first".into(),
        ));
    };
    for v in vs {
        writeln!(sink, "v {:.16e} {:.16e} {:.16e}", v[0], v[1], v[2])?;
    }
    for f in &mesh.faces {
        writeln!(sink, "f {} {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1, f[3] + 1)?;
    }
    sink.flush()?;
    Ok(())
}

/// Shortest decimal that parses back to `x`.
pub fn format_f64(x: f64) -> String {
    format!("{x:?}")
}

/// Anything that can be written as a CSV table.
pub trait CsvTable {
    fn header(&self) -> Vec<&'static str>;
    fn records(&self) -> Vec<Vec<String>>;
}

/// Header row then one row per record, `,`-separated and LF-terminated.
pub fn export_csv<T: CsvTable + ?Sized, W: Write>(table: &T, sink: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    w.write_record(table.header())?;
    for r in table.records() {
        w.write_record(&r)?;
    }
    w.flush()?;
    Ok(())
}

/// Pretty-printed JSON followed by a newline. Field order follows the
/// struct definitions.
pub fn export_json<T: Serialize + ?Sized, W: Write>(record: &T, mut sink: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut sink, record)?;
    writeln!(sink)?;
    sink.flush()?;
    Ok(())
}

impl CsvTable for ProfileCurve {
    fn header(&self) -> Vec<&'static str> {
        vec!["s", "theta", "x1", "x2", "x3", "x4"]
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.samples
            .iter()
            .map(|p| {
                let mut r = vec![format_f64(p.s), format_f64(p.theta)];
                r.extend(p.point.iter().map(|&v| format_f64(v)));
                r
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub q_max: u64,
    pub closure_tol: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            q_max: DEFAULT_Q_MAX,
            closure_tol: CLOSURE_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub m: f64,
    pub ell: f64,
    pub theta: Option<f64>,
    /// Error code when `Θ` could not be computed.
    pub error: Option<String>,
    pub closure: Option<ClosureResult>,
    /// `ℓ - √(cm)`.
    pub lower_gap: f64,
    /// `(cm + 1)/2 - ℓ`; `Θ` diverges as this goes to zero.
    pub upper_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedCell {
    pub m: f64,
    pub ell: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanTable {
    pub c: f64,
    pub config: ScanConfig,
    pub rows: Vec<ScanRow>,
    pub skipped: Vec<SkippedCell>,
}

impl CsvTable for ScanTable {
    fn header(&self) -> Vec<&'static str> {
        vec!["m", "ell", "Theta", "closed", "p", "q", "embedded"]
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                let head = vec![format_f64(r.m), format_f64(r.ell)];
                let tail = match (&r.theta, &r.error, &r.closure) {
                    (Some(t), _, Some(cl)) => vec![
                        format_f64(*t),
                        "true".into(),
                        cl.p.to_string(),
                        cl.q.to_string(),
                        cl.embedded.to_string(),
                    ],
                    (Some(t), _, None) => vec![
                        format_f64(*t),
                        "false".into(),
                        String::new(),
                        String::new(),
                        "false".into(),
                    ],
                    (None, err, _) => vec![
                        err.clone().unwrap_or_default(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                    ],
                };
                head.into_iter().chain(tail).collect()
            })
            .collect()
    }
}

fn axis(range: (f64, f64), n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![range.0],
        _ => (0..n)
            .map(|k| range.0 + (range.1 - range.0) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// `Θ` over an inclusive `m × ℓ` grid. Cells outside the immersible region
/// are listed in `skipped`; numerical failures stay in `rows` with a code.
pub fn scan_theta(
    c: f64,
    m_range: (f64, f64),
    ell_range: (f64, f64),
    resolution: (usize, usize),
    config: &ScanConfig,
) -> Result<ScanTable> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Domain(format!("curvature c = {c} must be positive")));
    }
    let finite = [m_range.0, m_range.1, ell_range.0, ell_range.1];
    if finite.iter().any(|v| !v.is_finite()) {
        return Err(Error::Range("scan ranges must be finite".into()));
    }
    let cells: Vec<(f64, f64)> = axis(m_range, resolution.0)
        .into_iter()
        .flat_map(|m| axis(ell_range, resolution.1).into_iter().map(move |l| (m, l)))
        .collect();

    let results: Vec<std::result::Result<ScanRow, SkippedCell>> = cells
        .par_iter()
        .map(|&(m, ell)| {
            let params = SphericalParams::new(c, m, ell).expect("c checked above");
            if let Err(e) = check_immersible(&params) {
                return Err(SkippedCell {
                    m,
                    ell,
                    reason: format!("{}:{}", e.code(), classify(c, m, ell)),
                });
            }
            let (theta, error) = match ThetaProfile::new(&params) {
                Ok(tp) => (Some(tp.big_theta()), None),
                Err(e) => (None, Some(e.code().to_string())),
            };
            Ok(ScanRow {
                m,
                ell,
                theta,
                error,
                closure: theta.and_then(|t| detect_closure(t, config.q_max, config.closure_tol)),
                lower_gap: ell - (c * m).sqrt(),
                upper_gap: 0.5 * (c * m + 1.0) - ell,
            })
        })
        .collect();

    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for r in results {
        match r {
            Ok(row) => rows.push(row),
            Err(s) => skipped.push(s),
        }
    }
    if rows.is_empty() {
        return Err(Error::Range("scan ranges do not meet the immersible region".into()));
    }
    Ok(ScanTable {
        c,
        config: *config,
        rows,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::immersion::solve_for_ell;

    fn prov() -> MeshProvenance {
        MeshProvenance {
            params: None,
            closure: None,
            projection: Projection::Stereographic,
        }
    }

    #[test]
    fn obj_golden_two_by_two() {
        // Grid winding [v00, v10, v11, v01] encloses volume -1/3 for these
        // vertices, so every face is reversed on output.
        let v = Vertices::R3(vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        let mesh = SurfaceMesh::torus_grid(2, 2, v, prov()).unwrap();
        let mut out = Vec::new();
        export_obj(&mesh, &mut out).unwrap();
        let expect = "\
v 0.0000000000000000e0 0.0000000000000000e0 0.0000000000000000e0
v 1.0000000000000000e0 0.0000000000000000e0 0.0000000000000000e0
v 0.0000000000000000e0 1.0000000000000000e0 0.0000000000000000e0
v 0.0000000000000000e0 0.0000000000000000e0 1.0000000000000000e0
f 1 2 4 3
f 2 1 3 4
f 3 4 2 1
f 4 3 1 2
";
        assert_eq!(String::from_utf8(out).unwrap(), expect);
    }

    #[test]
    fn obj_rejects_four_dimensional_mesh() {
        let v = Vertices::R4(vec![[0.0; 4]; 9]);
        let mesh = SurfaceMesh::torus_grid(3, 3, v, prov()).unwrap();
        assert!(matches!(export_obj(&mesh, Vec::new()), Err(Error::InvalidMesh(_))));
    }

    #[test]
    fn grid_topology() {
        for (ns, nt) in [(3, 3), (16, 4), (20, 7)] {
            let v = Vertices::R4(vec![[0.0; 4]; ns * nt]);
            let mesh = SurfaceMesh::torus_grid(ns, nt, v, prov()).unwrap();
            assert_eq!(mesh.euler_characteristic(), 0);
            assert!(mesh.is_watertight());
            assert_eq!(mesh.faces.len(), ns * nt);
        }
    }

    #[test]
    fn embedded_example_mesh() {
        let sol = solve_for_ell(1.0, 0.51, 1, 1).unwrap();
        let p = SphericalParams::new(1.0, 0.51, sol.ell).unwrap();
        let mesh = build_surface_mesh(&p, &sol.closure, 64, 16, Projection::Stereographic).unwrap();
        assert_eq!(mesh.vertex_count(), 64 * 16);
        assert_eq!(mesh.euler_characteristic(), 0);
        assert!(mesh.is_watertight());
        assert!(mesh.signed_volume().unwrap() > 0.0);

        let raw = build_surface_mesh(&p, &sol.closure, 32, 4, Projection::None).unwrap();
        let Vertices::R4(v) = &raw.vertices else { panic!() };
        for x in v {
            let n2: f64 = x.iter().map(|a| a * a).sum();
            assert!((n2 - 1.0).abs() < 1e-12);
        }
        assert!(raw.is_watertight());
    }

    #[test]
    fn resolution_preconditions() {
        let sol = solve_for_ell(1.0, 0.51, 1, 1).unwrap();
        let p = SphericalParams::new(1.0, 0.51, sol.ell).unwrap();
        assert!(matches!(build_profile(&p, &sol.closure, 15), Err(Error::Range(_))));
        assert!(matches!(
            build_surface_mesh(&p, &sol.closure, 32, 2, Projection::None),
            Err(Error::Range(_))
        ));
        let curve = build_profile(&p, &sol.closure, 16).unwrap();
        assert!(curve.seam_gap.unwrap() <= 1e-8);
    }

    #[test]
    fn scan_csv_layout() {
        let table = scan_theta(1.0, (0.51, 0.51), (0.73, 0.76), (1, 2), &ScanConfig {
            q_max: 50,
            closure_tol: 1e-2,
        })
        .unwrap();
        assert_eq!(table.rows.len(), 1);
        assert_eq!(table.skipped.len(), 1);
        let mut out = Vec::new();
        export_csv(&table, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("m,ell,Theta,closed,p,q,embedded"));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(&row[..2], &["0.51", "0.73"]);
        assert_eq!(&row[3..], &["true", "1", "1", "true"]);
        assert!(!text.contains('\r'));
    }

    #[test]
    fn json_round_trip() {
        let table = scan_theta(1.0, (0.1, 0.2), (0.5, 0.55), (2, 2), &ScanConfig::default()).unwrap();
        let mut out = Vec::new();
        export_json(&table, &mut out).unwrap();
        let back: ScanTable = serde_json::from_slice(&out).unwrap();
        assert_eq!(back, table);
    }
}
