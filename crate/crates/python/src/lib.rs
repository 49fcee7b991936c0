//! Python bindings: `Graph` and `Algebra`.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use pathalg::{
    enumerate_basis, hilbert_series, parse_poly, path_pair_relations, reduced_relations,
    verify_basis_with, LayeredGraph, VerifyOptions,
};

fn to_py(e: pathalg::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A validated layered graph.
#[pyclass(frozen, name = "Graph")]
struct PyGraph {
    inner: Arc<LayeredGraph>,
}

impl PyGraph {
    fn wrap(g: pathalg::Result<LayeredGraph>) -> PyResult<PyGraph> {
        Ok(PyGraph {
            inner: Arc::new(g.map_err(to_py)?),
        })
    }
}

#[pymethods]
impl PyGraph {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<PyGraph> {
        PyGraph::wrap(LayeredGraph::parse(text))
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<PyGraph> {
        PyGraph::wrap(pathalg::load_graph(path))
    }

    #[staticmethod]
    fn boolean_lattice(n: u32) -> PyResult<PyGraph> {
        PyGraph::wrap(pathalg::boolean_lattice(n))
    }

    #[staticmethod]
    fn chain(n: u32) -> PyResult<PyGraph> {
        PyGraph::wrap(pathalg::chain(n))
    }

    #[staticmethod]
    fn partition_lattice(n: u32) -> PyResult<PyGraph> {
        PyGraph::wrap(pathalg::partition_lattice(n))
    }

    #[staticmethod]
    fn subspace_lattice(q: u32, n: u32) -> PyResult<PyGraph> {
        PyGraph::wrap(pathalg::subspace_lattice(q, n))
    }

    fn to_text(&self) -> String {
        self.inner.to_string()
    }

    fn max_level(&self) -> u32 {
        self.inner.max_level()
    }

    /// `(id, level)` pairs.
    fn vertices(&self) -> Vec<(String, u32)> {
        let g = &self.inner;
        g.vertices()
            .map(|v| (g.vertex_id(v).to_string(), g.level(v)))
            .collect()
    }

    /// `(id, tail, head)` triples.
    fn edges(&self) -> Vec<(String, String, String)> {
        let g = &self.inner;
        g.edges()
            .map(|e| {
                (
                    g.edge_id(e).to_string(),
                    g.vertex_id(g.tail(e)).to_string(),
                    g.vertex_id(g.head(e)).to_string(),
                )
            })
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({} vertices, {} edges)",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// The quotient algebra of a graph, acting on its basis.
#[pyclass(frozen, name = "Algebra")]
struct PyAlgebra {
    inner: pathalg::Algebra,
}

#[pymethods]
impl PyAlgebra {
    #[new]
    fn new(graph: &PyGraph) -> PyAlgebra {
        PyAlgebra {
            inner: pathalg::Algebra::new(graph.inner.clone()),
        }
    }

    /// Normal form of an edge expression, rendered as text.
    fn normal_form(&self, expr: &str) -> PyResult<String> {
        let g = self.inner.graph();
        let p = parse_poly(expr, g).map_err(to_py)?;
        let nf = self.inner.normal_form(&p).map_err(to_py)?;
        Ok(nf.render(g))
    }

    fn hilbert_series(&self, max_level: u32) -> Vec<usize> {
        hilbert_series(self.inner.graph(), max_level)
    }

    /// Basis sequences as lists of `(vertex, multiplicity)`.
    fn enumerate_basis(&self, max_level: u32) -> Vec<Vec<(String, u32)>> {
        let g = self.inner.graph();
        enumerate_basis(g, max_level)
            .iter()
            .map(|b| {
                b.pairs()
                    .iter()
                    .map(|p| (g.vertex_id(p.vertex).to_string(), p.mult))
                    .collect()
            })
            .collect()
    }

    /// Rendered relation generators; `family` is "reduced" or "path-pairs".
    #[pyo3(signature = (family = "reduced"))]
    fn relations(&self, family: &str) -> PyResult<Vec<String>> {
        let g = self.inner.graph();
        let gens = match family {
            "reduced" => reduced_relations(g),
            "path-pairs" => path_pair_relations(g, false),
            other => return Err(PyValueError::new_err(format!("unknown family {other:?}"))),
        };
        Ok(gens.iter().map(|r| r.render(g)).collect())
    }

    /// Runs the dimension checks; returns a dict with `passed`, `rows`
    /// (one dict per degree) and `failures`.
    #[pyo3(signature = (max_level, alt_chosen = true))]
    fn verify<'py>(&self, py: Python<'py>, max_level: u32, alt_chosen: bool) -> PyResult<Bound<'py, PyDict>> {
        let opts = VerifyOptions {
            alternate_chosen: alt_chosen,
            ..VerifyOptions::default()
        };
        let report = verify_basis_with(self.inner.graph(), max_level, &opts).map_err(to_py)?;
        let rows = report
            .rows
            .iter()
            .map(|r| {
                let d = PyDict::new(py);
                d.set_item("degree", r.degree)?;
                d.set_item("dim_t", r.dim_t)?;
                d.set_item("dim_r", r.dim_r)?;
                d.set_item("dim_a", r.dim_a)?;
                d.set_item("basis_count", r.basis_count)?;
                d.set_item("pass", r.pass)?;
                Ok(d)
            })
            .collect::<PyResult<Vec<_>>>()?;
        let out = PyDict::new(py);
        out.set_item("passed", report.passed())?;
        out.set_item("rows", rows)?;
        out.set_item(
            "failures",
            report.failures.iter().map(ToString::to_string).collect::<Vec<_>>(),
        )?;
        Ok(out)
    }
}

#[pymodule]
fn pathalg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyAlgebra>()?;
    Ok(())
}
