//! Python bindings: mesh loading, dimension reports, the rank oracle and fixtures.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use tmesh_dim::io::{
    parse_degree_range, parse_mesh_file, parse_mesh_str, render_level_svg, serialize_reports, write_mesh_str, MeshDoc,
};
use tmesh_dim::{fixtures, Analysis, Bidegree, DimReport, Error, OrderingStrategy, Rect};

create_exception!(tmesh_dim, TMeshError, PyException);
create_exception!(tmesh_dim, AssumptionViolated, TMeshError);
create_exception!(tmesh_dim, DecompositionMismatch, TMeshError);

fn err(e: Error) -> PyErr {
    match e {
        Error::AssumptionViolated(_) => AssumptionViolated::new_err(e.to_string()),
        Error::DecompositionMismatch { .. } => DecompositionMismatch::new_err(e.to_string()),
        Error::Parse { .. } => PyValueError::new_err(e.to_string()),
        _ => TMeshError::new_err(e.to_string()),
    }
}

fn bd(p: (i64, i64)) -> Bidegree {
    Bidegree(p.0, p.1)
}

fn strategy(name: &str) -> PyResult<OrderingStrategy> {
    name.parse().map_err(err)
}

/// Dimension report at one bi-degree.
#[pyclass(frozen, module = "tmesh_dim")]
struct Report {
    inner: DimReport,
}

#[pymethods]
impl Report {
    #[getter]
    fn m(&self) -> (i64, i64) {
        (self.inner.m.0, self.inner.m.1)
    }
    #[getter]
    fn chi(&self) -> i64 {
        self.inner.chi
    }
    #[getter]
    fn lower(&self) -> Option<i64> {
        self.inner.lower_special.or(self.inner.lower_general)
    }
    #[getter]
    fn lower_general(&self) -> Option<i64> {
        self.inner.lower_general
    }
    #[getter]
    fn upper(&self) -> Option<i64> {
        self.inner.upper
    }
    #[getter]
    fn certified(&self) -> bool {
        self.inner.certified
    }
    #[getter]
    fn exact(&self) -> Option<i64> {
        self.inner.exact
    }
    #[getter]
    fn oracle(&self) -> Option<i64> {
        self.inner.oracle
    }
    #[getter]
    fn configuration1(&self) -> bool {
        self.inner.configuration1
    }
    /// Per-level `(chi_i, h0_c, h0_i_upper)`.
    fn level_split(&self) -> Vec<(i64, i64, Option<i64>)> {
        self.inner.levels.iter().map(|l| (l.chi, l.h0_c, l.h0_i_upper)).collect()
    }
    fn to_json(&self) -> String {
        serialize_reports(std::slice::from_ref(&self.inner))
    }
    fn __repr__(&self) -> String {
        let r = &self.inner;
        let opt = |v: Option<i64>| v.map_or("None".to_string(), |x| x.to_string());
        let cert = if r.certified { "True" } else { "False" };
        format!(
            "Report(m=({}, {}), chi={}, lower={}, upper={}, certified={})",
            r.m.0,
            r.m.1,
            r.chi,
            opt(self.lower()),
            opt(r.upper),
            cert
        )
    }
}

/// A T-mesh with deficits and smoothness, analysed into active levels.
#[pyclass(frozen, module = "tmesh_dim")]
struct Mesh {
    doc: MeshDoc,
    analysis: Analysis,
}

impl Mesh {
    fn from_doc(doc: MeshDoc) -> PyResult<Mesh> {
        let analysis = doc.analysis().map_err(err)?;
        Ok(Mesh { doc, analysis })
    }
}

#[pymethods]
impl Mesh {
    /// Builds a mesh from integer rectangles `(x0, y0, x1, y1)`.
    #[new]
    #[pyo3(signature = (rects, deficits=None, r=1, levels=None))]
    fn new(
        rects: Vec<(i64, i64, i64, i64)>,
        deficits: Option<Vec<(i64, i64)>>,
        r: u32,
        levels: Option<Vec<(i64, i64)>>,
    ) -> PyResult<Mesh> {
        let n = rects.len();
        let deficits = deficits.unwrap_or_else(|| vec![(0, 0); n]);
        if deficits.len() != n {
            return Err(PyValueError::new_err(format!("{} deficits for {} faces", deficits.len(), n)));
        }
        Mesh::from_doc(MeshDoc {
            rects: rects.into_iter().map(|(a, b, c, d)| Rect::from_ints(a, b, c, d)).collect(),
            deficits: deficits.into_iter().map(bd).collect(),
            default_r: r,
            overrides: Vec::new(),
            levels: levels.map(|l| l.into_iter().map(bd).collect()),
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Mesh> {
        Mesh::from_doc(parse_mesh_str(text).map_err(err)?)
    }

    #[staticmethod]
    fn from_file(path: std::path::PathBuf) -> PyResult<Mesh> {
        Mesh::from_doc(parse_mesh_file(&path).map_err(err)?)
    }

    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Mesh> {
        let text =
            fixtures::mesh_text(name).ok_or_else(|| PyValueError::new_err(format!("unknown fixture {name:?}")))?;
        Mesh::from_json(text)
    }

    fn to_json(&self) -> String {
        write_mesh_str(&self.doc)
    }

    #[getter]
    fn num_faces(&self) -> usize {
        self.analysis.mesh.faces.len()
    }

    #[getter]
    fn levels(&self) -> Vec<(i64, i64)> {
        self.analysis.profile.levels.iter().map(|b| (b.0, b.1)).collect()
    }

    /// `(c, h)` per active level.
    fn relative_betti(&self) -> Vec<(i64, i64)> {
        self.analysis.levels.iter().map(|l| (l.c, l.h)).collect()
    }

    fn euler(&self, m: (i64, i64)) -> PyResult<i64> {
        self.analysis.euler_characteristic(bd(m)).map_err(err)
    }

    #[pyo3(signature = (m, ordering="auto", oracle=false))]
    fn report(&self, py: Python<'_>, m: (i64, i64), ordering: &str, oracle: bool) -> PyResult<Report> {
        let s = strategy(ordering)?;
        let a = &self.analysis;
        let inner = py.detach(|| {
            let mut r = a.report(bd(m), s)?;
            if oracle {
                r.oracle = Some(a.oracle(bd(m)));
            }
            Ok::<_, Error>(r)
        });
        Ok(Report { inner: inner.map_err(err)? })
    }

    /// Reports over a range such as `"3,3:5,5"`.
    #[pyo3(signature = (degrees, ordering="auto", oracle=false))]
    fn sweep(&self, py: Python<'_>, degrees: &str, ordering: &str, oracle: bool) -> PyResult<Vec<Report>> {
        let s = strategy(ordering)?;
        let ds = parse_degree_range(degrees).map_err(err)?;
        let a = &self.analysis;
        let rs = py.detach(|| a.sweep(&ds, s, oracle)).map_err(err)?;
        Ok(rs.into_iter().map(|inner| Report { inner }).collect())
    }

    fn oracle(&self, py: Python<'_>, m: (i64, i64)) -> i64 {
        let a = &self.analysis;
        py.detach(|| a.oracle(bd(m)))
    }

    fn svg(&self, level: usize) -> PyResult<String> {
        if level == 0 || level > self.analysis.levels.len() {
            return Err(PyValueError::new_err(format!("level must be in 1..={}", self.analysis.levels.len())));
        }
        Ok(render_level_svg(&self.analysis, level))
    }

    fn __repr__(&self) -> String {
        format!("Mesh(faces={}, levels={:?})", self.num_faces(), self.levels())
    }
}

/// `dim (L_{i-1}(-b) / L_i(-b))_m` for the given level sequence.
#[pyfunction]
fn dim_m(levels: Vec<(i64, i64)>, i: usize, b: (i64, i64), m: (i64, i64)) -> PyResult<i64> {
    let lv: Vec<Bidegree> = levels.into_iter().map(bd).collect();
    tmesh_dim::dim_m(&lv, i, bd(b), bd(m)).map_err(err)
}

#[pyfunction]
fn fixture_names() -> Vec<&'static str> {
    fixtures::names().collect()
}

#[pymodule]
fn tmesh_dim_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Mesh>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(dim_m, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    m.add("TMeshError", m.py().get_type::<TMeshError>())?;
    m.add("AssumptionViolated", m.py().get_type::<AssumptionViolated>())?;
    m.add("DecompositionMismatch", m.py().get_type::<DecompositionMismatch>())?;
    Ok(())
}
