use crate::error::{Error, Result};
use crate::mesh::{Orientation, TMesh};
use crate::rational::{format_rational, Rational};

/// Sets `r` on the interior edges of one line lying inside `span`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Override {
    pub orientation: Orientation,
    pub line: Rational,
    pub span: (Rational, Rational),
    pub r: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothnessProfile {
    /// Indexed by edge; `None` on boundary edges.
    pub edge_r: Vec<Option<u32>>,
    /// Indexed by vertex; `(r of the vertical line, r of the horizontal line)` at interior vertices.
    pub vertex_pair: Vec<Option<(u32, u32)>>,
}

pub fn build_smoothness(mesh: &TMesh, default_r: u32, overrides: &[Override]) -> Result<SmoothnessProfile> {
    let mut edge_r: Vec<Option<u32>> = mesh.edges.iter().map(|e| (!e.boundary).then_some(default_r)).collect();
    let mut set_by: Vec<Option<usize>> = vec![None; mesh.edges.len()];
    for (k, ov) in overrides.iter().enumerate() {
        let mut hit = false;
        for e in mesh.interior_edges() {
            let ed = &mesh.edges[e];
            if ed.orientation == ov.orientation && ed.line == ov.line && ov.span.0 <= ed.lo && ed.hi <= ov.span.1 {
                if let Some(prev) = set_by[e] {
                    if overrides[prev].r != ov.r {
                        return Err(Error::ChainConflict(
                            describe_line(ov.orientation, &ov.line),
                            format!("overrides {prev} and {k} disagree"),
                        ));
                    }
                }
                edge_r[e] = Some(ov.r);
                set_by[e] = Some(k);
                hit = true;
            }
        }
        if !hit {
            return Err(Error::DanglingOverride(k));
        }
    }

    let mut vertex_pair = vec![None; mesh.vertices.len()];
    for v in mesh.interior_vertices() {
        let mut rh: Option<u32> = None;
        let mut rv: Option<u32> = None;
        for &e in &mesh.vertices[v].edges {
            let ed = &mesh.edges[e];
            let r = edge_r[e].expect("interior vertex edges are interior");
            let slot = match ed.orientation {
                Orientation::Vertical => &mut rh,
                Orientation::Horizontal => &mut rv,
            };
            match *slot {
                Some(prev) if prev != r => {
                    return Err(Error::ChainConflict(
                        describe_line(ed.orientation, &ed.line),
                        format!("edges meeting at vertex {v} carry r = {prev} and r = {r}"),
                    ))
                }
                _ => *slot = Some(r),
            }
        }
        vertex_pair[v] = Some((rh.unwrap(), rv.unwrap()));
    }
    Ok(SmoothnessProfile { edge_r, vertex_pair })
}

fn describe_line(o: Orientation, line: &Rational) -> String {
    match o {
        Orientation::Horizontal => format!("y = {}", format_rational(line)),
        Orientation::Vertical => format!("x = {}", format_rational(line)),
    }
}

impl SmoothnessProfile {
    pub fn r(&self, edge: usize) -> u32 {
        self.edge_r[edge].expect("r is only defined on interior edges")
    }

    pub fn uniform(mesh: &TMesh, r: u32) -> SmoothnessProfile {
        build_smoothness(mesh, r, &[]).expect("uniform smoothness is always consistent")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{build_tmesh, Rect};
    use crate::rational::{frac, int};

    fn grid2() -> TMesh {
        let h = frac(1, 2);
        let z = int(0);
        let o = int(1);
        build_tmesh(&[
            Rect::new(z.clone(), z.clone(), h.clone(), h.clone()),
            Rect::new(h.clone(), z.clone(), o.clone(), h.clone()),
            Rect::new(z.clone(), h.clone(), h.clone(), o.clone()),
            Rect::new(h.clone(), h.clone(), o.clone(), o.clone()),
        ])
        .unwrap()
    }

    #[test]
    fn defaults_and_override() {
        let m = grid2();
        let s = build_smoothness(&m, 1, &[]).unwrap();
        assert_eq!(s.edge_r.iter().flatten().count(), 4);
        let c = m.interior_vertices().next().unwrap();
        assert_eq!(s.vertex_pair[c], Some((1, 1)));

        let ov = Override { orientation: Orientation::Horizontal, line: frac(1, 2), span: (int(0), int(1)), r: 2 };
        let s = build_smoothness(&m, 1, &[ov]).unwrap();
        assert_eq!(s.vertex_pair[c], Some((1, 2)));
        for e in m.interior_edges() {
            let want = if m.edges[e].orientation == Orientation::Horizontal { 2 } else { 1 };
            assert_eq!(s.r(e), want);
        }
    }

    #[test]
    fn conflicts_and_dangling() {
        let m = grid2();
        let a = Override { orientation: Orientation::Horizontal, line: frac(1, 2), span: (int(0), frac(1, 2)), r: 1 };
        let b = Override { orientation: Orientation::Horizontal, line: frac(1, 2), span: (frac(1, 2), int(1)), r: 2 };
        assert!(matches!(build_smoothness(&m, 1, &[a.clone(), b]), Err(Error::ChainConflict(..))));
        let c = Override { orientation: Orientation::Horizontal, line: frac(1, 2), span: (int(0), int(1)), r: 2 };
        assert!(matches!(build_smoothness(&m, 1, &[a, c]), Err(Error::ChainConflict(..))));
        let d = Override { orientation: Orientation::Vertical, line: frac(1, 3), span: (int(0), int(1)), r: 2 };
        assert_eq!(build_smoothness(&m, 1, &[d]), Err(Error::DanglingOverride(0)));
    }
}
