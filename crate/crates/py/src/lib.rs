//! Python bindings: `Complex`, `Poset` and `Module` wrappers plus the
//! verification sweeps. Fields are passed as strings, `"q"` or `"p:<prime>"`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use hcm_core::formats::{parse_facets, parse_module, parse_poset, write_facets, write_module, write_poset};
use hcm_core::homalg::reduced_homology;
use hcm_core::sposet::{self, face_poset, glued_simplices, random_simplicial_poset, validate};
use hcm_core::sqfree::{self, canonical_betti, from_complex, koszul_betti, module_dim, omega_module};
use hcm_core::topocm::{self, hochster_betti, krull_dimension};
use hcm_core::verify::{self, SweepScope};
use hcm_core::{BettiTable, Error, Face, FieldSpec, SimplicialComplex, SimplicialPoset, SquarefreeModule};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field(spec: &str) -> PyResult<FieldSpec> {
    spec.parse().map_err(err)
}

fn face(n: usize, vertices: Vec<u32>) -> PyResult<Face> {
    if let Some(&v) = vertices.iter().find(|&&v| v == 0 || v as usize > n) {
        return Err(err(Error::VertexOutOfRange { vertex: v, n }));
    }
    Ok(Face::from_vertices(vertices))
}

fn tuple(f: Face) -> Vec<u32> {
    f.vertices().collect()
}

/// `{(i, (v1, v2, ..)): β_{i,F}}`.
fn betti_dict<'py>(py: Python<'py>, t: &BettiTable) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for (i, f, b) in t.iter() {
        d.set_item((i, PyTuple::new(py, f.vertices())?), b)?;
    }
    Ok(d)
}

/// Simplicial complex on vertices `1..=n`, given by its facets.
#[pyclass(module = "hcm", name = "Complex", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Complex(SimplicialComplex);

#[pymethods]
impl Complex {
    #[new]
    fn new(n: usize, facets: Vec<Vec<u32>>) -> PyResult<Self> {
        let gens = facets.into_iter().map(|f| face(n, f)).collect::<PyResult<Vec<_>>>()?;
        SimplicialComplex::new(n, gens).map(Complex).map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_facets(text).map(Complex).map_err(err)
    }

    /// The complex `{∅}` on `n` vertices.
    #[staticmethod]
    fn empty(n: usize) -> Self {
        Complex(SimplicialComplex::empty(n))
    }

    #[staticmethod]
    fn void(n: usize) -> Self {
        Complex(SimplicialComplex::void(n))
    }

    #[staticmethod]
    fn simplex(n: usize) -> Self {
        Complex(SimplicialComplex::simplex(n))
    }

    #[staticmethod]
    fn boundary_simplex(d: usize) -> Self {
        Complex(verify::boundary_simplex(d))
    }

    #[staticmethod]
    fn cycle(m: usize) -> Self {
        Complex(verify::cycle_graph(m))
    }

    #[staticmethod]
    fn rp2() -> Self {
        Complex(verify::rp2())
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.vertex_count()
    }

    fn facets(&self) -> Vec<Vec<u32>> {
        self.0.facets().iter().map(|&f| tuple(f)).collect()
    }

    fn is_void(&self) -> bool {
        self.0.is_void()
    }

    fn dimension(&self) -> PyResult<isize> {
        self.0.dimension().map_err(err)
    }

    fn f_vector(&self) -> Vec<usize> {
        self.0.f_vector()
    }

    fn skeleton(&self, i: isize) -> Self {
        Complex(self.0.skeleton(i))
    }

    fn link(&self, face_vertices: Vec<u32>) -> PyResult<Self> {
        let f = face(self.n(), face_vertices)?;
        self.0.link(f).map(Complex).map_err(err)
    }

    /// Induced subcomplex on `keep`, with the original labels.
    fn restrict(&self, keep: Vec<u32>) -> PyResult<Self> {
        let w = face(self.n(), keep)?;
        Ok(Complex(self.0.restrict_keep_labels(w)))
    }

    /// Deletes the given vertices, keeping the remaining labels.
    fn delete(&self, vertices: Vec<u32>) -> PyResult<Self> {
        let w = face(self.n(), vertices)?;
        Ok(Complex(self.0.restrict_keep_labels(Face::full(self.n()).difference(w))))
    }

    fn cone(&self) -> PyResult<Self> {
        self.0.cone().map(Complex).map_err(err)
    }

    /// Reduced homology dimensions, starting at degree -1.
    #[pyo3(signature = (field = "q"))]
    fn homology(&self, field: &str) -> PyResult<Vec<usize>> {
        let h = reduced_homology(&self.0, self::field(field)?).map_err(err)?;
        Ok(h.as_slice().to_vec())
    }

    #[pyo3(signature = (field = "q"))]
    fn is_cm(&self, field: &str) -> PyResult<bool> {
        topocm::is_cohen_macaulay(&self.0, self::field(field)?).map_err(err)
    }

    #[pyo3(signature = (l, field = "q"))]
    fn is_l_cm(&self, l: usize, field: &str) -> PyResult<bool> {
        topocm::is_l_cm(&self.0, l, self::field(field)?).map_err(err)
    }

    #[pyo3(signature = (field = "q"))]
    fn max_l(&self, field: &str) -> PyResult<usize> {
        topocm::max_l(&self.0, self::field(field)?).map_err(err)
    }

    /// `{(i, F): β_{i,F}}` of the Stanley-Reisner ring.
    #[pyo3(signature = (field = "q"))]
    fn betti<'py>(&self, py: Python<'py>, field: &str) -> PyResult<Bound<'py, PyDict>> {
        betti_dict(py, &hochster_betti(&self.0, self::field(field)?).map_err(err)?)
    }

    /// Betti numbers of the canonical module; raises unless Cohen-Macaulay.
    #[pyo3(signature = (field = "q"))]
    fn canonical_betti<'py>(&self, py: Python<'py>, field: &str) -> PyResult<Bound<'py, PyDict>> {
        let t = hochster_betti(&self.0, self::field(field)?).map_err(err)?;
        let d = krull_dimension(&self.0).map_err(err)?;
        betti_dict(py, &canonical_betti(&t, self.n(), d).map_err(err)?)
    }

    fn ring(&self) -> Module {
        Module(from_complex(&self.0))
    }

    fn face_poset(&self) -> Poset {
        Poset(face_poset(&self.0))
    }

    fn to_text(&self) -> String {
        write_facets(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Complex(n={}, facets={:?})", self.n(), self.facets())
    }
}

/// Simplicial poset with a designated bottom element.
#[pyclass(module = "hcm", name = "Poset", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Poset(SimplicialPoset);

#[pymethods]
impl Poset {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let raw = parse_poset(text).map_err(err)?;
        validate(&raw).map(Poset).map_err(err)
    }

    #[staticmethod]
    fn glued(d: usize, m: usize) -> PyResult<Self> {
        glued_simplices(d, m).map(Poset).map_err(err)
    }

    #[staticmethod]
    fn random(n: usize, rank: usize, seed: u64) -> PyResult<Self> {
        random_simplicial_poset(n, rank, seed).map(Poset).map_err(err)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.0.vertex_count()
    }

    fn __len__(&self) -> usize {
        self.0.element_count()
    }

    fn skeleton(&self, i: usize) -> Self {
        Poset(self.0.skeleton(i))
    }

    fn restrict(&self, keep: Vec<u32>) -> PyResult<Self> {
        let w = face(self.vertex_count(), keep)?;
        Ok(Poset(self.0.restrict(w)))
    }

    fn order_complex(&self) -> PyResult<Complex> {
        self.0.order_complex().map(Complex).map_err(err)
    }

    fn face_ring(&self) -> PyResult<Module> {
        sposet::face_ring_module(&self.0).map(Module).map_err(err)
    }

    #[pyo3(signature = (field = "q"))]
    fn is_cm(&self, field: &str) -> PyResult<bool> {
        sposet::is_poset_cm(&self.0, self::field(field)?).map_err(err)
    }

    #[pyo3(signature = (l, field = "q"))]
    fn is_l_cm(&self, l: usize, field: &str) -> PyResult<bool> {
        sposet::is_poset_l_cm(&self.0, l, self::field(field)?).map_err(err)
    }

    #[pyo3(signature = (field = "q"))]
    fn max_l(&self, field: &str) -> PyResult<usize> {
        sposet::poset_max_l(&self.0, self::field(field)?).map_err(err)
    }

    fn to_text(&self) -> String {
        write_poset(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Poset(elements={}, rank={})", self.0.element_count(), self.0.rank())
    }
}

/// Squarefree module over `k[x_1..x_n]`.
#[pyclass(module = "hcm", name = "Module", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Module(SquarefreeModule);

#[pymethods]
impl Module {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_module(text).map(Module).map_err(err)
    }

    /// `k[F](-F)`, concentrated in degree `F`.
    #[staticmethod]
    fn omega(n: usize, f: Vec<u32>) -> PyResult<Self> {
        Ok(Module(omega_module(n, face(n, f)?)))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn dim(&self) -> PyResult<usize> {
        module_dim(&self.0).map_err(err)
    }

    /// `{(v1, v2, ..): dim M_F}` over the nonzero components.
    fn components<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (f, dim) in self.0.components() {
            d.set_item(PyTuple::new(py, f.vertices())?, dim)?;
        }
        Ok(d)
    }

    fn skeleton(&self, i: usize) -> Self {
        Module(sqfree::module_skeleton(&self.0, i))
    }

    fn restrict(&self, keep: Vec<u32>) -> PyResult<Self> {
        Ok(Module(sqfree::restrict(&self.0, face(self.n(), keep)?)))
    }

    #[pyo3(signature = (field = "q"))]
    fn betti<'py>(&self, py: Python<'py>, field: &str) -> PyResult<Bound<'py, PyDict>> {
        betti_dict(py, &koszul_betti(&self.0, self::field(field)?).map_err(err)?)
    }

    #[pyo3(signature = (field = "q"))]
    fn canonical_betti<'py>(&self, py: Python<'py>, field: &str) -> PyResult<Bound<'py, PyDict>> {
        let t = koszul_betti(&self.0, self::field(field)?).map_err(err)?;
        let d = module_dim(&self.0).map_err(err)?;
        betti_dict(py, &canonical_betti(&t, self.n(), d).map_err(err)?)
    }

    #[pyo3(signature = (field = "q"))]
    fn is_cm(&self, field: &str) -> PyResult<bool> {
        sqfree::is_module_cm(&self.0, self::field(field)?).map_err(err)
    }

    #[pyo3(signature = (l, field = "q"))]
    fn is_l_cm(&self, l: usize, field: &str) -> PyResult<bool> {
        sqfree::is_module_l_cm(&self.0, l, self::field(field)?).map_err(err)
    }

    #[pyo3(signature = (field = "q"))]
    fn max_l(&self, field: &str) -> PyResult<usize> {
        sqfree::module_max_l(&self.0, self::field(field)?).map_err(err)
    }

    #[pyo3(signature = (field = "q"))]
    fn is_2cm_via_canonical(&self, field: &str) -> PyResult<bool> {
        sqfree::is_2cm_via_canonical(&self.0, self::field(field)?).map_err(err)
    }

    fn to_text(&self) -> String {
        write_module(&self.0)
    }

    fn __repr__(&self) -> String {
        let comps: Vec<String> = self.0.components().map(|(f, d)| format!("{{{f}}}:{d}")).collect();
        format!("Module(n={}, components=[{}])", self.n(), comps.join(", "))
    }
}

/// Runs a named sweep; returns `(passed, report_text)`.
#[pyfunction]
#[pyo3(signature = (sweep, n = 5, seed = None, fields = vec!["p:2".to_string(), "q".to_string()], random_complexes = None, random_posets = None))]
fn run_sweep(
    py: Python<'_>,
    sweep: &str,
    n: usize,
    seed: Option<u64>,
    fields: Vec<String>,
    random_complexes: Option<usize>,
    random_posets: Option<usize>,
) -> PyResult<(bool, String)> {
    if n > 5 {
        return Err(err(Error::TooLargeForExhaustive(n)));
    }
    let fields = fields.iter().map(|f| field(f)).collect::<PyResult<Vec<_>>>()?;
    let defaults = SweepScope::default();
    let scope = SweepScope {
        max_n: n,
        seed: seed.unwrap_or(defaults.seed),
        random_complexes: random_complexes.unwrap_or(defaults.random_complexes),
        random_posets: random_posets.unwrap_or(defaults.random_posets),
        ..defaults
    };
    let report = py
        .detach(|| verify::run_sweep(sweep, &scope, &fields))
        .ok_or_else(|| PyValueError::new_err(format!("unknown sweep `{sweep}`")))?;
    Ok((report.passed(), report.to_text()))
}

#[pymodule]
pub fn hcm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Complex>()?;
    m.add_class::<Poset>()?;
    m.add_class::<Module>()?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    m.add("SWEEPS", verify::SWEEPS.to_vec())?;
    Ok(())
}
