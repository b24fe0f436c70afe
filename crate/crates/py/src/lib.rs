//! Python bindings for `lcvanish`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use lcvanish::cli::{parse_instance, run_instance, RunOptions};
use lcvanish::fparith::{Fp, LucasTable};
use lcvanish::frobstream::{alpha_component_streamed, FrobLayout, LiveTally, ProductForm, StreamStats};
use lcvanish::poly::{default_var_names, parse_int_poly, IntPoly, PolyRing};
use lcvanish::vanish::{self, BoundSpec, DecideOptions, Mode};
use lcvanish::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Consistency(_) | Error::Disagreement(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn names_for(n: usize, variables: Option<Vec<String>>) -> Vec<String> {
    variables.unwrap_or_else(|| default_var_names(n))
}

/// Multinomial coefficient `total! / prod(parts!)` reduced mod `p`.
#[pyfunction]
fn multinomial_mod_p(total: u64, parts: Vec<u64>, p: u64) -> PyResult<u32> {
    let field = Fp::new(p).map_err(py_err)?;
    lcvanish::fparith::multinomial_mod_p(total, &parts, field).map_err(py_err)
}

/// Streamed `alpha_j(x^offset * y)` for the subset product `product`,
/// returned as polynomial text.
#[pyfunction]
#[pyo3(signature = (product, y, offset, p, j, variables=None))]
fn alpha(product: &str, y: &str, offset: Vec<u32>, p: u64, j: u32, variables: Option<Vec<String>>) -> PyResult<String> {
    let field = Fp::new(p).map_err(py_err)?;
    let names = names_for(offset.len(), variables);
    let ring = PolyRing::new(names.len(), field);
    let product = ring.parse(product, &names).map_err(py_err)?;
    let y = ring.parse(y, &names).map_err(py_err)?;
    let layout = FrobLayout::new(field, j).map_err(py_err)?;
    let table = LucasTable::new(field).map_err(py_err)?;
    let mut stats = StreamStats::default();
    let pf = ProductForm::new(&product, &y);
    let out = alpha_component_streamed(&ring, &pf, &offset, &layout, &table, &LiveTally::new(), &mut stats)
        .map_err(py_err)?;
    Ok(ring.format_with(&out, &names))
}

type WitnessTuple = (u32, Vec<u32>, usize);

#[pyclass(module = "lcvanish_py", frozen)]
struct Verdict {
    inner: vanish::Verdict,
}

#[pymethods]
impl Verdict {
    #[getter]
    fn result(&self) -> String {
        self.inner.result.to_string()
    }

    /// `(j, offset, generator)` or `None`.
    #[getter]
    fn witness(&self) -> Option<WitnessTuple> {
        self.inner
            .witness
            .as_ref()
            .map(|w| (w.j, w.offset.clone(), w.generator))
    }

    #[getter]
    fn r(&self) -> Option<u32> {
        self.inner.r
    }

    #[getter]
    fn u(&self) -> Option<u32> {
        self.inner.u
    }

    #[getter]
    fn peak_live_monomials(&self) -> u64 {
        self.inner.counters.peak_live_monomials
    }

    #[getter]
    fn max_degree(&self) -> u64 {
        self.inner.counters.max_degree
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("Verdict({}, r={:?}, u={:?})", self.inner.result, self.inner.r, self.inner.u)
    }
}

#[pyclass(module = "lcvanish_py", frozen)]
struct Instance {
    inner: vanish::Instance,
}

#[pymethods]
impl Instance {
    #[new]
    #[pyo3(signature = (generators, n, p, degree, variables=None, prune=false))]
    fn new(
        generators: Vec<String>,
        n: usize,
        p: u64,
        degree: usize,
        variables: Option<Vec<String>>,
        prune: bool,
    ) -> PyResult<Self> {
        let names = names_for(n, variables);
        let f: Vec<IntPoly> = generators
            .iter()
            .map(|g| parse_int_poly(g, &names))
            .collect::<Result<_, _>>()
            .map_err(py_err)?;
        let inner = vanish::build_instance_with(&f, p, degree, Some(names), vanish::InstanceOptions { prune })
            .map_err(py_err)?;
        Ok(Instance { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.nvars()
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn num_generators(&self) -> usize {
        self.inner.module().generators().len()
    }

    #[getter]
    fn trivially_vanishing(&self) -> bool {
        self.inner.is_trivially_vanishing()
    }

    #[getter]
    fn warnings(&self) -> Vec<String> {
        self.inner.warnings().to_vec()
    }

    #[pyo3(signature = (bound="finite-length", mode="streaming", max_steps=4))]
    fn decide(&self, py: Python<'_>, bound: &str, mode: &str, max_steps: u32) -> PyResult<Verdict> {
        let bound: BoundSpec = bound.parse().map_err(py_err)?;
        let mode: Mode = mode.parse().map_err(py_err)?;
        let opts = DecideOptions {
            max_steps,
            timings: false,
        };
        let inner = py
            .detach(|| vanish::decide_vanishing_with(&self.inner, bound, mode, opts))
            .map_err(py_err)?;
        Ok(Verdict { inner })
    }

    /// `(is_zero, witness)` for the streamed test of `beta_j = 0`.
    fn beta_is_zero(&self, py: Python<'_>, j: u32) -> PyResult<(bool, Option<WitnessTuple>)> {
        let out = py
            .detach(|| vanish::beta_j_is_zero_streamed(&self.inner, j))
            .map_err(py_err)?;
        Ok((out.is_zero, out.witness.map(|w| (w.j, w.offset, w.generator))))
    }

    fn recheck(&self, verdict: &Verdict) -> PyResult<bool> {
        vanish::recheck_witness(&self.inner, &verdict.inner).map_err(py_err)
    }
}

/// Runs an instance file and returns the JSON report.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
#[pyo3(signature = (path, prime, degree, mode="streaming", bound="finite-length", max_steps=4, deterministic=true))]
fn run_file(
    py: Python<'_>,
    path: &str,
    prime: u64,
    degree: usize,
    mode: &str,
    bound: &str,
    max_steps: u32,
    deterministic: bool,
) -> PyResult<String> {
    let opts = RunOptions {
        mode: mode.parse().map_err(py_err)?,
        bound: bound.parse().map_err(py_err)?,
        max_steps,
        deterministic,
        ..RunOptions::new(prime, degree)
    };
    py.detach(|| {
        let file = parse_instance(path)?;
        run_instance(&file, &opts)?.to_json()
    })
    .map_err(py_err)
}

#[pymodule]
pub fn lcvanish_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(multinomial_mod_p, m)?)?;
    m.add_function(wrap_pyfunction!(alpha, m)?)?;
    m.add_function(wrap_pyfunction!(run_file, m)?)?;
    m.add_class::<Instance>()?;
    m.add_class::<Verdict>()?;
    Ok(())
}
