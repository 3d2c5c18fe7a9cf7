use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

impl Orientation {
    pub fn other(self) -> Orientation {
        match self {
            Orientation::Horizontal => Orientation::Vertical,
            Orientation::Vertical => Orientation::Horizontal,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Orientation::Horizontal => "h",
            Orientation::Vertical => "v",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

/// Closed axis-aligned rectangle `[x0, x1] x [y0, y1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rect {
    pub x0: Rational,
    pub y0: Rational,
    pub x1: Rational,
    pub y1: Rational,
}

impl Rect {
    pub fn new(x0: Rational, y0: Rational, x1: Rational, y1: Rational) -> Rect {
        Rect { x0, y0, x1, y1 }
    }

    pub fn from_ints(x0: i64, y0: i64, x1: i64, y1: i64) -> Rect {
        use crate::rational::int;
        Rect::new(int(x0), int(y0), int(x1), int(y1))
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.x0 <= p.x && p.x <= self.x1 && self.y0 <= p.y && p.y <= self.y1
    }

    fn interiors_meet(&self, o: &Rect) -> bool {
        let lx = if self.x0 > o.x0 { &self.x0 } else { &o.x0 };
        let hx = if self.x1 < o.x1 { &self.x1 } else { &o.x1 };
        let ly = if self.y0 > o.y0 { &self.y0 } else { &o.y0 };
        let hy = if self.y1 < o.y1 { &self.y1 } else { &o.y1 };
        lx < hx && ly < hy
    }

    pub fn corners(&self) -> [Point; 4] {
        let p = |x: &Rational, y: &Rational| Point { x: x.clone(), y: y.clone() };
        [p(&self.x0, &self.y0), p(&self.x1, &self.y0), p(&self.x1, &self.y1), p(&self.x0, &self.y1)]
    }

    pub fn describe(&self) -> String {
        format!(
            "[{}, {}] x [{}, {}]",
            format_rational(&self.x0),
            format_rational(&self.x1),
            format_rational(&self.y0),
            format_rational(&self.y1)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexClass {
    Boundary,
    Crossing,
    TJunction,
}

#[derive(Debug, Clone)]
pub struct Vertex {
    pub point: Point,
    pub edges: Vec<usize>,
    pub faces: Vec<usize>,
    pub class: VertexClass,
}

impl Vertex {
    pub fn on_boundary(&self) -> bool {
        self.class == VertexClass::Boundary
    }
}

/// Minimal edge: a rectangle side piece between two consecutive vertices.
#[derive(Debug, Clone)]
pub struct Edge {
    pub orientation: Orientation,
    /// `y` for horizontal edges, `x` for vertical ones.
    pub line: Rational,
    pub lo: Rational,
    pub hi: Rational,
    /// Endpoints at `lo` and `hi`.
    pub ends: [usize; 2],
    pub faces: Vec<usize>,
    pub boundary: bool,
}

#[derive(Debug, Clone)]
pub struct TMesh {
    pub faces: Vec<Rect>,
    pub edges: Vec<Edge>,
    pub vertices: Vec<Vertex>,
    /// Per face, its boundary edges with the sign induced by counter-clockwise orientation.
    pub face_edges: Vec<Vec<(usize, i8)>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeshStats {
    pub faces: usize,
    pub edges: usize,
    pub vertices: usize,
    pub interior_edges: usize,
    pub interior_vertices: usize,
    pub crossings: usize,
    pub t_junctions: usize,
}

type EdgeKey = (Orientation, Rational, Rational, Rational);

pub fn build_tmesh(rects: &[Rect]) -> Result<TMesh> {
    if rects.is_empty() {
        return Err(Error::Malformed("no rectangles".into()));
    }
    for (i, r) in rects.iter().enumerate() {
        if r.x0 >= r.x1 || r.y0 >= r.y1 {
            return Err(Error::Malformed(format!("face {i} is degenerate: {}", r.describe())));
        }
    }
    for i in 0..rects.len() {
        for j in i + 1..rects.len() {
            if rects[i].interiors_meet(&rects[j]) {
                return Err(Error::Overlap(i, j));
            }
        }
    }

    let mut points: BTreeSet<Point> = BTreeSet::new();
    for r in rects {
        points.extend(r.corners());
    }
    let vertex_points: Vec<Point> = points.into_iter().collect();
    let vertex_index: BTreeMap<Point, usize> = vertex_points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();

    // Split every side at the vertices lying on it.
    let mut pieces: BTreeMap<EdgeKey, Vec<(usize, i8)>> = BTreeMap::new();
    for (f, r) in rects.iter().enumerate() {
        let sides = [
            (Orientation::Horizontal, &r.y0, &r.x0, &r.x1, 1i8),
            (Orientation::Vertical, &r.x1, &r.y0, &r.y1, 1i8),
            (Orientation::Horizontal, &r.y1, &r.x0, &r.x1, -1i8),
            (Orientation::Vertical, &r.x0, &r.y0, &r.y1, -1i8),
        ];
        for (o, line, a, b, sign) in sides {
            let mut cuts: Vec<Rational> = vertex_points
                .iter()
                .filter_map(|p| {
                    let (l, t) = match o {
                        Orientation::Horizontal => (&p.y, &p.x),
                        Orientation::Vertical => (&p.x, &p.y),
                    };
                    (l == line && a <= t && t <= b).then(|| t.clone())
                })
                .collect();
            cuts.sort();
            for w in cuts.windows(2) {
                pieces.entry((o, line.clone(), w[0].clone(), w[1].clone())).or_default().push((f, sign));
            }
        }
    }

    let mut edges = Vec::with_capacity(pieces.len());
    let mut face_edges: Vec<Vec<(usize, i8)>> = vec![Vec::new(); rects.len()];
    for (e, ((o, line, lo, hi), fs)) in pieces.into_iter().enumerate() {
        if fs.len() > 2 {
            return Err(Error::Malformed(format!("edge on line {} bounds {} faces", format_rational(&line), fs.len())));
        }
        let at = |t: &Rational| match o {
            Orientation::Horizontal => Point { x: t.clone(), y: line.clone() },
            Orientation::Vertical => Point { x: line.clone(), y: t.clone() },
        };
        let ends = [vertex_index[&at(&lo)], vertex_index[&at(&hi)]];
        for &(f, s) in &fs {
            face_edges[f].push((e, s));
        }
        let faces: Vec<usize> = fs.iter().map(|p| p.0).collect();
        edges.push(Edge { orientation: o, line, lo, hi, ends, boundary: faces.len() == 1, faces });
    }

    let mut vertices: Vec<Vertex> = vertex_points
        .into_iter()
        .map(|p| {
            let faces = rects.iter().enumerate().filter(|(_, r)| r.contains(&p)).map(|(i, _)| i).collect();
            Vertex { point: p, edges: Vec::new(), faces, class: VertexClass::Boundary }
        })
        .collect();
    for (e, ed) in edges.iter().enumerate() {
        for &v in &ed.ends {
            vertices[v].edges.push(e);
        }
    }
    for (v, vx) in vertices.iter_mut().enumerate() {
        if vx.edges.iter().any(|&e| edges[e].boundary) {
            vx.class = VertexClass::Boundary;
            continue;
        }
        let h = vx.edges.iter().filter(|&&e| edges[e].orientation == Orientation::Horizontal).count();
        let vv = vx.edges.len() - h;
        vx.class = match (h, vv) {
            (2, 2) => VertexClass::Crossing,
            (2, 1) | (1, 2) => VertexClass::TJunction,
            _ => {
                return Err(Error::Malformed(format!("interior vertex {v} has {h} horizontal and {vv} vertical edges")))
            }
        };
    }

    let mesh = TMesh { faces: rects.to_vec(), edges, vertices, face_edges };
    mesh.check_topology()?;
    Ok(mesh)
}

impl TMesh {
    fn check_topology(&self) -> Result<()> {
        let n = self.faces.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for e in &self.edges {
            if e.faces.len() == 2 {
                let a = find(&mut parent, e.faces[0]);
                let b = find(&mut parent, e.faces[1]);
                parent[a] = b;
            }
        }
        let root = find(&mut parent, 0);
        if let Some(f) = (0..n).find(|&f| find(&mut parent, f) != root) {
            return Err(Error::Disconnected(format!("face {f} is not reachable from face 0 through shared edges")));
        }
        let chi = self.vertices.len() as i64 - self.edges.len() as i64 + n as i64;
        if chi != 1 {
            return Err(Error::NotSimplyConnected(chi));
        }
        Ok(())
    }

    pub fn stats(&self) -> MeshStats {
        let interior_edges = self.edges.iter().filter(|e| !e.boundary).count();
        let crossings = self.vertices.iter().filter(|v| v.class == VertexClass::Crossing).count();
        let t_junctions = self.vertices.iter().filter(|v| v.class == VertexClass::TJunction).count();
        MeshStats {
            faces: self.faces.len(),
            edges: self.edges.len(),
            vertices: self.vertices.len(),
            interior_edges,
            interior_vertices: crossings + t_junctions,
            crossings,
            t_junctions,
        }
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(|&e| !self.edges[e].boundary)
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).filter(|&v| !self.vertices[v].on_boundary())
    }

    pub fn bounding_box(&self) -> Rect {
        let mut b = self.faces[0].clone();
        for r in &self.faces[1..] {
            if r.x0 < b.x0 {
                b.x0 = r.x0.clone();
            }
            if r.y0 < b.y0 {
                b.y0 = r.y0.clone();
            }
            if r.x1 > b.x1 {
                b.x1 = r.x1.clone();
            }
            if r.y1 > b.y1 {
                b.y1 = r.y1.clone();
            }
        }
        b
    }

    /// Applies `(x, y) -> (a x + b, c y + d)` with `a, c > 0`.
    pub fn map_affine(&self, a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<TMesh> {
        if a <= &Rational::zero() || c <= &Rational::zero() {
            return Err(Error::Malformed("affine map must preserve orientation".into()));
        }
        let rects: Vec<Rect> =
            self.faces.iter().map(|r| Rect::new(a * &r.x0 + b, c * &r.y0 + d, a * &r.x1 + b, c * &r.y1 + d)).collect();
        build_tmesh(&rects)
    }
}
