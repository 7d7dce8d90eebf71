//! Implicit-surface polygonization and mesh/plot export.
//!
//! The polygonizer walks a uniform grid and splits every cell into the six
//! Kuhn tetrahedra around the main diagonal. Adjacent cells agree on every
//! face diagonal, so the triangulation is watertight across cells, and a
//! tetrahedron has no ambiguous sign cases at all. Zero-set vertices are
//! placed by linear interpolation along crossing edges plus one secant
//! refinement. Cell corners are evaluated with a float copy of the exact
//! polynomial; this is the single exact-to-float conversion point.
//!
//! Grid slabs are processed in parallel and stitched in slab order, so the
//! output is deterministic regardless of thread scheduling.

use std::collections::HashMap;
use std::io::Write as _;
use std::path::Path;

use rayon::prelude::*;
use thiserror::Error;

use crate::curves::PlanarPolyline;
use crate::poly::MultiPoly;
use crate::surfaces::Surface;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("io error writing {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Axis-aligned sampling box with a common per-axis cell count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: [f64; 3],
    pub max: [f64; 3],
    /// Cells per axis; clamped to 8..=512 by validation to cap memory.
    pub resolution: u32,
}

impl GridSpec {
    pub fn new(min: [f64; 3], max: [f64; 3], resolution: u32) -> Result<Self, MeshError> {
        for i in 0..3 {
            if !(min[i] < max[i]) || !min[i].is_finite() || !max[i].is_finite() {
                return Err(MeshError::InvalidGrid(format!(
                    "axis {i}: need finite min < max, got {} .. {}",
                    min[i], max[i]
                )));
            }
        }
        if !(8..=512).contains(&resolution) {
            return Err(MeshError::InvalidGrid(format!(
                "resolution {resolution} outside 8..=512"
            )));
        }
        Ok(GridSpec { min, max, resolution })
    }

    pub fn cube(half_extent: f64, resolution: u32) -> Result<Self, MeshError> {
        Self::new([-half_extent; 3], [half_extent; 3], resolution)
    }

    fn step(&self) -> [f64; 3] {
        let r = self.resolution as f64;
        [
            (self.max[0] - self.min[0]) / r,
            (self.max[1] - self.min[1]) / r,
            (self.max[2] - self.min[2]) / r,
        ]
    }

    pub fn cell_diagonal(&self) -> f64 {
        let s = self.step();
        (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt()
    }

    fn corner(&self, ix: u32, iy: u32, iz: u32) -> [f64; 3] {
        let s = self.step();
        [
            self.min[0] + s[0] * ix as f64,
            self.min[1] + s[1] * iy as f64,
            self.min[2] + s[2] * iz as f64,
        ]
    }
}

/// Triangle mesh with per-vertex normals from the gradient of the defining
/// polynomial. A missing normal marks a vertex where the gradient collapsed
/// (a singular point); no substitute direction is invented for it.
#[derive(Debug, Clone, Default)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub normals: Vec<Option<[f64; 3]>>,
    pub triangles: Vec<[u32; 3]>,
}

impl Mesh {
    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }
}

/// Outcome of a gradient-normal query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormalResult {
    Unit([f64; 3]),
    /// Gradient norm below threshold: the point is (numerically) singular.
    Singular,
}

const SINGULAR_GRADIENT: f64 = 1e-9;

/// Unit gradient directions of the surface at the given points; singular
/// points are flagged instead of faked.
pub fn gradient_normals(surface: &Surface, points: &[[f64; 3]]) -> Vec<NormalResult> {
    let grad = gradient_polys(surface);
    points.iter().map(|p| normal_at(&grad, *p)).collect()
}

fn gradient_polys(surface: &Surface) -> [MultiPoly<f64>; 3] {
    let f = surface.affine();
    [
        f.partial(0).expect("arity 3").to_f64(),
        f.partial(1).expect("arity 3").to_f64(),
        f.partial(2).expect("arity 3").to_f64(),
    ]
}

fn normal_at(grad: &[MultiPoly<f64>; 3], p: [f64; 3]) -> NormalResult {
    let g = [
        grad[0].eval_f64(&p),
        grad[1].eval_f64(&p),
        grad[2].eval_f64(&p),
    ];
    let norm = (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt();
    if norm < SINGULAR_GRADIENT {
        NormalResult::Singular
    } else {
        NormalResult::Unit([g[0] / norm, g[1] / norm, g[2] / norm])
    }
}

// Kuhn tetrahedra: six paths from corner 0 to corner 7 through the cube,
// corners numbered by coordinate bits (bit0 = x, bit1 = y, bit2 = z).
const TETS: [[u8; 4]; 6] = [
    [0, 1, 3, 7],
    [0, 1, 5, 7],
    [0, 2, 3, 7],
    [0, 2, 6, 7],
    [0, 4, 5, 7],
    [0, 4, 6, 7],
];

#[derive(Clone, Copy)]
struct EdgeVertex {
    key: u64,
    pos: [f64; 3],
}

/// Polygonize the zero set of the surface's affine polynomial over the grid.
/// Boxes with no sign change produce the empty mesh.
pub fn polygonize(surface: &Surface, grid: &GridSpec) -> Result<Mesh, MeshError> {
    GridSpec::new(grid.min, grid.max, grid.resolution)?;
    let f = surface.affine().to_f64();
    let res = grid.resolution;
    let nplane = ((res + 1) * (res + 1)) as usize;

    let eval_plane = |iz: u32| -> Vec<f64> {
        let mut plane = vec![0.0; nplane];
        for ix in 0..=res {
            for iy in 0..=res {
                plane[(ix * (res + 1) + iy) as usize] = f.eval_f64(&grid.corner(ix, iy, iz));
            }
        }
        plane
    };

    // slab = one layer of cells between corner planes iz and iz+1
    let slabs: Vec<Vec<[EdgeVertex; 3]>> = (0..res)
        .into_par_iter()
        .map(|iz| {
            let lower = eval_plane(iz);
            let upper = eval_plane(iz + 1);
            let mut triangles = Vec::new();
            let corner_index = |ix: u32, iy: u32, gz: u32| -> u64 {
                ((ix as u64 * (res as u64 + 1)) + iy as u64) * (res as u64 + 1) + gz as u64
            };
            for ix in 0..res {
                for iy in 0..res {
                    // cube corner data: value, grid index, position
                    let mut vals = [0.0f64; 8];
                    let mut keys = [0u64; 8];
                    let mut pos = [[0.0f64; 3]; 8];
                    for (bit, item) in vals.iter_mut().enumerate() {
                        let dx = (bit & 1) as u32;
                        let dy = ((bit >> 1) & 1) as u32;
                        let dz = ((bit >> 2) & 1) as u32;
                        let (gx, gy, gz) = (ix + dx, iy + dy, iz + dz);
                        let plane = if dz == 0 { &lower } else { &upper };
                        *item = plane[(gx * (res + 1) + gy) as usize];
                        keys[bit] = corner_index(gx, gy, gz);
                        pos[bit] = grid.corner(gx, gy, gz);
                    }
                    for tet in &TETS {
                        march_tet(&f, tet, &vals, &keys, &pos, &mut triangles);
                    }
                }
            }
            triangles
        })
        .collect();

    // stitch slabs in order, deduplicating vertices by canonical edge key
    let grad = gradient_polys(surface);
    let mut mesh = Mesh::default();
    let mut index: HashMap<u64, u32> = HashMap::new();
    let eps_area = 1e-12 * grid.cell_diagonal() * grid.cell_diagonal();
    for slab in slabs {
        for tri in slab {
            let mut ids = [0u32; 3];
            for (slot, ev) in tri.iter().enumerate() {
                let id = *index.entry(ev.key).or_insert_with(|| {
                    mesh.vertices.push(ev.pos);
                    mesh.normals.push(match normal_at(&grad, ev.pos) {
                        NormalResult::Unit(u) => Some(u),
                        NormalResult::Singular => None,
                    });
                    (mesh.vertices.len() - 1) as u32
                });
                ids[slot] = id;
            }
            if ids[0] == ids[1] || ids[1] == ids[2] || ids[0] == ids[2] {
                continue;
            }
            let (a, b, c) = (
                mesh.vertices[ids[0] as usize],
                mesh.vertices[ids[1] as usize],
                mesh.vertices[ids[2] as usize],
            );
            let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
            let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
            let cross = [
                u[1] * v[2] - u[2] * v[1],
                u[2] * v[0] - u[0] * v[2],
                u[0] * v[1] - u[1] * v[0],
            ];
            let area2 = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
            if area2 < eps_area {
                continue;
            }
            // orient along the gradient (outward where F grows)
            let mut flip = false;
            if let Some(n) = mesh.normals[ids[0] as usize] {
                if cross[0] * n[0] + cross[1] * n[1] + cross[2] * n[2] < 0.0 {
                    flip = true;
                }
            }
            if flip {
                ids.swap(1, 2);
            }
            mesh.triangles.push(ids);
        }
    }
    Ok(mesh)
}

fn march_tet(
    f: &MultiPoly<f64>,
    tet: &[u8; 4],
    vals: &[f64; 8],
    keys: &[u64; 8],
    pos: &[[f64; 3]; 8],
    out: &mut Vec<[EdgeVertex; 3]>,
) {
    let inside = |v: f64| v < 0.0;
    let mut neg: Vec<u8> = Vec::with_capacity(4);
    let mut non: Vec<u8> = Vec::with_capacity(4);
    for &c in tet {
        if inside(vals[c as usize]) {
            neg.push(c);
        } else {
            non.push(c);
        }
    }
    let vertex = |a: u8, b: u8| -> EdgeVertex {
        let (a, b) = if keys[a as usize] < keys[b as usize] { (a, b) } else { (b, a) };
        let (fa, fb) = (vals[a as usize], vals[b as usize]);
        let (pa, pb) = (pos[a as usize], pos[b as usize]);
        let mut t = fa / (fa - fb);
        // one secant refinement against the true polynomial
        let at = |t: f64| {
            [
                pa[0] + t * (pb[0] - pa[0]),
                pa[1] + t * (pb[1] - pa[1]),
                pa[2] + t * (pb[2] - pa[2]),
            ]
        };
        let fm = f.eval_f64(&at(t));
        let (t_opp, f_opp) = if (fm < 0.0) == (fa < 0.0) { (1.0, fb) } else { (0.0, fa) };
        if (fm - f_opp).abs() > 1e-300 {
            let refined = t - fm * (t_opp - t) / (f_opp - fm);
            if refined.is_finite() {
                t = refined.clamp(0.0, 1.0);
            }
        }
        EdgeVertex {
            key: (keys[a as usize] << 32) | keys[b as usize],
            pos: at(t),
        }
    };
    match neg.len() {
        1 => {
            let a = neg[0];
            out.push([vertex(a, non[0]), vertex(a, non[1]), vertex(a, non[2])]);
        }
        3 => {
            let a = non[0];
            out.push([vertex(a, neg[0]), vertex(a, neg[1]), vertex(a, neg[2])]);
        }
        2 => {
            // quad across the four mixed edges, split into two triangles
            let (a, b) = (neg[0], neg[1]);
            let (c, d) = (non[0], non[1]);
            let (ac, ad, bd, bc) = (vertex(a, c), vertex(a, d), vertex(b, d), vertex(b, c));
            out.push([ac, ad, bd]);
            out.push([ac, bd, bc]);
        }
        _ => {}
    }
}

fn fmt_coord(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v }; // normalize -0.0
    format!("{v:.6}")
}

/// Write a standard text OBJ (v/vn/f records, 1-based indices). Byte-stable
/// for identical input. Faces reference normals only when every corner has
/// one.
pub fn export_obj(mesh: &Mesh, path: &Path) -> Result<(), MeshError> {
    let io_err = |source| MeshError::Io { path: path.display().to_string(), source };
    let mut out = String::new();
    for v in &mesh.vertices {
        out.push_str(&format!("v {} {} {}\n", fmt_coord(v[0]), fmt_coord(v[1]), fmt_coord(v[2])));
    }
    let mut normal_ids: Vec<Option<u32>> = Vec::with_capacity(mesh.normals.len());
    let mut next = 1u32;
    for n in &mesh.normals {
        match n {
            Some(u) => {
                out.push_str(&format!("vn {} {} {}\n", fmt_coord(u[0]), fmt_coord(u[1]), fmt_coord(u[2])));
                normal_ids.push(Some(next));
                next += 1;
            }
            None => normal_ids.push(None),
        }
    }
    for t in &mesh.triangles {
        let ns = [
            normal_ids[t[0] as usize],
            normal_ids[t[1] as usize],
            normal_ids[t[2] as usize],
        ];
        if let (Some(n0), Some(n1), Some(n2)) = (ns[0], ns[1], ns[2]) {
            out.push_str(&format!(
                "f {}//{} {}//{} {}//{}\n",
                t[0] + 1,
                n0,
                t[1] + 1,
                n1,
                t[2] + 1,
                n2
            ));
        } else {
            out.push_str(&format!("f {} {} {}\n", t[0] + 1, t[1] + 1, t[2] + 1));
        }
    }
    let mut file = std::fs::File::create(path).map_err(io_err)?;
    file.write_all(out.as_bytes()).map_err(io_err)
}

#[derive(Debug, Clone, Copy)]
pub struct SvgOptions {
    pub stroke_width: f64,
    /// Target width of the longer image side in SVG units.
    pub size: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { stroke_width: 0.01, size: 640.0 }
    }
}

/// Write curve branches as an SVG 1.1 document, one path per polyline, with
/// the viewBox fitted to the data (y axis flipped to mathematical
/// orientation). Byte-stable for identical input.
pub fn export_svg(polylines: &[PlanarPolyline], path: &Path, options: &SvgOptions) -> Result<(), MeshError> {
    let io_err = |source| MeshError::Io { path: path.display().to_string(), source };
    let mut min = [f64::INFINITY; 2];
    let mut max = [f64::NEG_INFINITY; 2];
    for line in polylines {
        for p in &line.points {
            min[0] = min[0].min(p[0]);
            min[1] = min[1].min(-p[1]);
            max[0] = max[0].max(p[0]);
            max[1] = max[1].max(-p[1]);
        }
    }
    if polylines.iter().all(|l| l.points.is_empty()) {
        min = [-1.0, -1.0];
        max = [1.0, 1.0];
    }
    let margin = 0.05 * ((max[0] - min[0]).max(max[1] - min[1])).max(1e-9);
    let (w, h) = (max[0] - min[0] + 2.0 * margin, max[1] - min[1] + 2.0 * margin);
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" viewBox=\"{} {} {} {}\">\n",
        fmt_coord(options.size),
        fmt_coord(min[0] - margin),
        fmt_coord(min[1] - margin),
        fmt_coord(w),
        fmt_coord(h)
    ));
    for line in polylines {
        if line.points.len() < 2 {
            continue;
        }
        let mut d = String::new();
        for (i, p) in line.points.iter().enumerate() {
            d.push_str(if i == 0 { "M" } else { " L" });
            d.push_str(&format!("{} {}", fmt_coord(p[0]), fmt_coord(-p[1])));
        }
        if line.closed {
            d.push_str(" Z");
        }
        out.push_str(&format!(
            "  <path d=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\"/>\n",
            d,
            fmt_coord(options.stroke_width)
        ));
    }
    out.push_str("</svg>\n");
    let mut file = std::fs::File::create(path).map_err(io_err)?;
    file.write_all(out.as_bytes()).map_err(io_err)
}

/// Closest point on a triangle to `p` (Ericson's region test), squared
/// distance.
fn point_triangle_dist_sq(p: [f64; 3], a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    let sub = |u: [f64; 3], v: [f64; 3]| [u[0] - v[0], u[1] - v[1], u[2] - v[2]];
    let dot = |u: [f64; 3], v: [f64; 3]| u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    let ab = sub(b, a);
    let ac = sub(c, a);
    let ap = sub(p, a);
    let d1 = dot(ab, ap);
    let d2 = dot(ac, ap);
    let closest;
    if d1 <= 0.0 && d2 <= 0.0 {
        closest = a;
    } else {
        let bp = sub(p, b);
        let d3 = dot(ab, bp);
        let d4 = dot(ac, bp);
        if d3 >= 0.0 && d4 <= d3 {
            closest = b;
        } else {
            let vc = d1 * d4 - d3 * d2;
            if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
                let v = d1 / (d1 - d3);
                closest = [a[0] + v * ab[0], a[1] + v * ab[1], a[2] + v * ab[2]];
            } else {
                let cp = sub(p, c);
                let d5 = dot(ab, cp);
                let d6 = dot(ac, cp);
                if d6 >= 0.0 && d5 <= d6 {
                    closest = c;
                } else {
                    let vb = d5 * d2 - d1 * d6;
                    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
                        let w = d2 / (d2 - d6);
                        closest = [a[0] + w * ac[0], a[1] + w * ac[1], a[2] + w * ac[2]];
                    } else {
                        let va = d3 * d6 - d5 * d4;
                        if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
                            let w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
                            closest = [
                                b[0] + w * (c[0] - b[0]),
                                b[1] + w * (c[1] - b[1]),
                                b[2] + w * (c[2] - b[2]),
                            ];
                        } else {
                            let denom = 1.0 / (va + vb + vc);
                            let v = vb * denom;
                            let w = vc * denom;
                            closest = [
                                a[0] + ab[0] * v + ac[0] * w,
                                a[1] + ab[1] * v + ac[1] * w,
                                a[2] + ab[2] * v + ac[2] * w,
                            ];
                        }
                    }
                }
            }
        }
    }
    let d = sub(p, closest);
    dot(d, d)
}

/// Largest distance from any sample point to the mesh surface (nearest
/// triangle), via a centroid hash. This is the resampling metric for
/// symmetry checks: two triangulations of one surface sample different
/// vertices, so vertex-cloud distances overstate the geometric deviation.
pub fn point_mesh_distance(points: &[[f64; 3]], mesh: &Mesh) -> f64 {
    if points.is_empty() || mesh.triangles.is_empty() {
        return f64::INFINITY;
    }
    let tri = |t: &[u32; 3]| {
        (
            mesh.vertices[t[0] as usize],
            mesh.vertices[t[1] as usize],
            mesh.vertices[t[2] as usize],
        )
    };
    // hash triangles by centroid; cell size = max triangle diameter
    let mut cell = 0.0f64;
    for t in &mesh.triangles {
        let (a, b, c) = tri(t);
        for (u, v) in [(a, b), (b, c), (a, c)] {
            let d = ((u[0] - v[0]).powi(2) + (u[1] - v[1]).powi(2) + (u[2] - v[2]).powi(2)).sqrt();
            cell = cell.max(d);
        }
    }
    let cell = cell.max(1e-12);
    let key = |p: [f64; 3]| -> (i64, i64, i64) {
        (
            (p[0] / cell).floor() as i64,
            (p[1] / cell).floor() as i64,
            (p[2] / cell).floor() as i64,
        )
    };
    let mut buckets: HashMap<(i64, i64, i64), Vec<usize>> = HashMap::new();
    for (i, t) in mesh.triangles.iter().enumerate() {
        let (a, b, c) = tri(t);
        let centroid = [
            (a[0] + b[0] + c[0]) / 3.0,
            (a[1] + b[1] + c[1]) / 3.0,
            (a[2] + b[2] + c[2]) / 3.0,
        ];
        buckets.entry(key(centroid)).or_default().push(i);
    }
    let mut worst = 0.0f64;
    for p in points {
        let (kx, ky, kz) = key(*p);
        let mut best = f64::INFINITY;
        let mut ring = 0i64;
        loop {
            for dx in -ring..=ring {
                for dy in -ring..=ring {
                    for dz in -ring..=ring {
                        if dx.abs().max(dy.abs()).max(dz.abs()) != ring {
                            continue;
                        }
                        if let Some(ids) = buckets.get(&(kx + dx, ky + dy, kz + dz)) {
                            for &i in ids {
                                let (a, b, c) = tri(&mesh.triangles[i]);
                                best = best.min(point_triangle_dist_sq(*p, a, b, c));
                            }
                        }
                    }
                }
            }
            // a centroid in ring r is at least (r-1)*cell - cell/2 away
            let safe = ((ring - 1).max(0) as f64 - 0.5).max(0.0) * cell;
            if (best.sqrt() <= safe && best < f64::INFINITY) || ring > 1_000 {
                break;
            }
            ring += 1;
        }
        worst = worst.max(best.sqrt());
    }
    worst
}

/// One-sided Hausdorff distance between vertex clouds, via a spatial hash.
pub fn vertex_hausdorff(from: &[[f64; 3]], to: &[[f64; 3]]) -> f64 {
    if from.is_empty() || to.is_empty() {
        return f64::INFINITY;
    }
    // cell size from target density
    let mut min = [f64::INFINITY; 3];
    let mut max = [f64::NEG_INFINITY; 3];
    for p in to {
        for i in 0..3 {
            min[i] = min[i].min(p[i]);
            max[i] = max[i].max(p[i]);
        }
    }
    let extent = (max[0] - min[0]).max(max[1] - min[1]).max(max[2] - min[2]).max(1e-9);
    let cell = extent / (to.len() as f64).cbrt().max(1.0);
    let key = |p: &[f64; 3]| -> (i64, i64, i64) {
        (
            ((p[0] - min[0]) / cell).floor() as i64,
            ((p[1] - min[1]) / cell).floor() as i64,
            ((p[2] - min[2]) / cell).floor() as i64,
        )
    };
    let mut buckets: HashMap<(i64, i64, i64), Vec<usize>> = HashMap::new();
    for (i, p) in to.iter().enumerate() {
        buckets.entry(key(p)).or_default().push(i);
    }
    let mut worst = 0.0f64;
    for p in from {
        let (kx, ky, kz) = key(p);
        let mut best = f64::INFINITY;
        let mut ring = 0i64;
        while best == f64::INFINITY || (ring as f64 - 1.0) * cell < best {
            for dx in -ring..=ring {
                for dy in -ring..=ring {
                    for dz in -ring..=ring {
                        if dx.abs().max(dy.abs()).max(dz.abs()) != ring {
                            continue;
                        }
                        if let Some(ids) = buckets.get(&(kx + dx, ky + dy, kz + dz)) {
                            for &i in ids {
                                let q = to[i];
                                let d = ((p[0] - q[0]).powi(2)
                                    + (p[1] - q[1]).powi(2)
                                    + (p[2] - q[2]).powi(2))
                                .sqrt();
                                best = best.min(d);
                            }
                        }
                    }
                }
            }
            ring += 1;
            if ring > 4 && best < f64::INFINITY {
                break;
            }
            if ring > 1_000 {
                break;
            }
        }
        worst = worst.max(best);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::HomogeneousForm;
    use crate::surfaces::{general_q_spherical, Provenance};
    use crate::{QPoly, Rat};

    fn rat(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn unit_sphere() -> Surface {
        let g0 = HomogeneousForm::constant(3, rat(1));
        let f1 = HomogeneousForm::zero(3, 1);
        let f0 = HomogeneousForm::constant(3, -rat(1));
        general_q_spherical(2, 1, &g0, &[], &[f1, f0]).unwrap()
    }

    #[test]
    fn sphere_mesh_radius() {
        let grid = GridSpec::cube(2.0, 64).unwrap();
        let mesh = polygonize(&unit_sphere(), &grid).unwrap();
        assert!(!mesh.is_empty());
        let mut worst = 0.0f64;
        for v in &mesh.vertices {
            let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            worst = worst.max((r - 1.0).abs());
        }
        assert!(worst < 0.01, "radial error {worst}");
        // normals point along the position vector for the sphere
        for (v, n) in mesh.vertices.iter().zip(mesh.normals.iter()) {
            let n = n.expect("sphere is regular");
            let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            let dot = (v[0] * n[0] + v[1] * n[1] + v[2] * n[2]) / r;
            assert!((dot - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn residual_bound_with_gradient_scale() {
        let grid = GridSpec::cube(2.0, 32).unwrap();
        let s = unit_sphere();
        let mesh = polygonize(&s, &grid).unwrap();
        let f = s.affine().to_f64();
        let diag = grid.cell_diagonal();
        for (v, n) in mesh.vertices.iter().zip(mesh.normals.iter()) {
            if n.is_none() {
                continue;
            }
            let grad = gradient_normals(&s, &[*v]);
            let NormalResult::Unit(_) = grad[0] else { continue };
            // |F(v)| < 10 * diag * |grad F(v)| + eps
            let g = [
                s.affine().partial(0).unwrap().to_f64().eval_f64(v),
                s.affine().partial(1).unwrap().to_f64().eval_f64(v),
                s.affine().partial(2).unwrap().to_f64().eval_f64(v),
            ];
            let gn = (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt();
            assert!(f.eval_f64(v).abs() < 10.0 * diag * gn + 1e-9);
        }
    }

    #[test]
    fn no_sign_change_gives_empty_mesh() {
        // sphere polynomial restricted to a far-away box
        let grid = GridSpec::new([5.0, 5.0, 5.0], [6.0, 6.0, 6.0], 8).unwrap();
        let mesh = polygonize(&unit_sphere(), &grid).unwrap();
        assert!(mesh.is_empty());
        assert!(mesh.vertices.is_empty());
    }

    #[test]
    fn doubling_resolution_does_not_worsen_sphere() {
        let err_at = |res: u32| {
            let grid = GridSpec::cube(2.0, res).unwrap();
            let mesh = polygonize(&unit_sphere(), &grid).unwrap();
            mesh.vertices
                .iter()
                .map(|v| ((v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt() - 1.0).abs())
                .fold(0.0f64, f64::max)
        };
        assert!(err_at(64) <= err_at(32) + 1e-12);
    }

    #[test]
    fn plane_normals_constant() {
        let plane = Surface::new(QPoly::var(4, 3), None, Provenance::Custom).unwrap();
        let normals = gradient_normals(&plane, &[[0.3, -0.2, 0.0], [1.0, 2.0, 0.0]]);
        for n in normals {
            assert_eq!(n, NormalResult::Unit([0.0, 0.0, 1.0]));
        }
    }

    #[test]
    fn singular_point_flagged() {
        // two-point surface at its singular origin
        let s = crate::surfaces::two_point_surface(
            &crate::surfaces::TwoPointParams::new(2, rat(2)).unwrap(),
        )
        .unwrap();
        let normals = gradient_normals(&s, &[[0.0, 0.0, 0.0]]);
        assert_eq!(normals[0], NormalResult::Singular);
    }

    #[test]
    fn obj_export_shapes() {
        let dir = std::env::temp_dir().join("qsphere_obj_test");
        std::fs::create_dir_all(&dir).unwrap();

        // empty mesh: valid OBJ with zero records
        let path = dir.join("empty.obj");
        export_obj(&Mesh::default(), &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "");

        // single triangle: 3 v lines, 1 f line
        let mesh = Mesh {
            vertices: vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
            normals: vec![Some([0.0, 0.0, 1.0]); 3],
            triangles: vec![[0, 1, 2]],
        };
        let path = dir.join("tri.obj");
        export_obj(&mesh, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 3);
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 1);
        assert!(text.contains("f 1//1 2//2 3//3"));

        // round trip: parse the emitted OBJ and count vertices
        let grid = GridSpec::cube(2.0, 16).unwrap();
        let mesh = polygonize(&unit_sphere(), &grid).unwrap();
        let path = dir.join("sphere.obj");
        export_obj(&mesh, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(
            text.lines().filter(|l| l.starts_with("v ")).count(),
            mesh.vertices.len()
        );
        // byte-stable rerun
        let path2 = dir.join("sphere2.obj");
        export_obj(&mesh, &path2).unwrap();
        assert_eq!(text, std::fs::read_to_string(&path2).unwrap());
    }

    #[test]
    fn svg_export_basic() {
        let dir = std::env::temp_dir().join("qsphere_svg_test");
        std::fs::create_dir_all(&dir).unwrap();
        let lines = vec![PlanarPolyline {
            points: vec![[0.0, 0.0], [1.0, 0.5], [0.0, 1.0]],
            closed: true,
            branch: 0,
        }];
        let path = dir.join("c.svg");
        export_svg(&lines, &path, &SvgOptions::default()).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("<svg"));
        assert_eq!(text.matches("<path").count(), 1);
        assert!(text.contains("Z\""));
    }

    #[test]
    fn hausdorff_of_identical_clouds_is_zero() {
        let grid = GridSpec::cube(2.0, 16).unwrap();
        let mesh = polygonize(&unit_sphere(), &grid).unwrap();
        assert_eq!(vertex_hausdorff(&mesh.vertices, &mesh.vertices), 0.0);
        let shifted: Vec<[f64; 3]> = mesh
            .vertices
            .iter()
            .map(|v| [v[0] + 0.005, v[1], v[2]])
            .collect();
        let d = vertex_hausdorff(&shifted, &mesh.vertices);
        assert!(d <= 0.005 + 1e-12);
    }
}
