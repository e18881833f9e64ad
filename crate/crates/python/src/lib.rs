//! Python module `mixedcake`. Rationals cross the boundary as `"p/q"`
//! strings; anything whose `str()` parses (ints, `fractions.Fraction`) is
//! accepted as input. Reports come back as plain dicts.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyList;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mixedcake::cake::{self, Agent};
use mixedcake::labeling::random_sperner_labeling;
use mixedcake::rational::{self as q, Rational};
use mixedcake::triangulation::{self as tri, EquilateralOutcome, DEFAULT_CELL_CAP};
use mixedcake::{degree, lab, solver, svg, Error};

create_exception!(mixedcake, MixedcakeError, PyException);
create_exception!(mixedcake, ConjectureGapError, MixedcakeError);
create_exception!(mixedcake, ResourceCapError, MixedcakeError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::ConjectureGap { .. } => ConjectureGapError::new_err(e.to_string()),
        Error::ResourceCap { .. } => ResourceCapError::new_err(e.to_string()),
        other => MixedcakeError::new_err(other.to_string()),
    }
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    q::parse(&obj.str()?.to_cow()?).map_err(to_py)
}

fn rationals(objs: &[Bound<'_, PyAny>]) -> PyResult<Vec<Rational>> {
    objs.iter().map(rational).collect()
}

fn strings(rs: &[Rational]) -> Vec<String> {
    rs.iter().map(q::format).collect()
}

fn json_to_py<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| MixedcakeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Piecewise-constant value density on `[0, 1]`; values may be negative.
#[pyclass(name = "ValueDensity", frozen, from_py_object)]
#[derive(Clone)]
struct PyValueDensity(cake::ValueDensity);

#[pymethods]
impl PyValueDensity {
    /// `values` are densities, or per-slice totals with `slice_values=True`.
    #[new]
    #[pyo3(signature = (breakpoints, values, slice_values = false))]
    fn new(
        breakpoints: Vec<Bound<'_, PyAny>>,
        values: Vec<Bound<'_, PyAny>>,
        slice_values: bool,
    ) -> PyResult<Self> {
        let (b, v) = (rationals(&breakpoints)?, rationals(&values)?);
        let d = if slice_values {
            cake::ValueDensity::from_slice_values(b, v)
        } else {
            cake::ValueDensity::new(b, v)
        };
        d.map(Self).map_err(to_py)
    }

    #[getter]
    fn breakpoints(&self) -> Vec<String> {
        strings(self.0.breakpoints())
    }

    #[getter]
    fn values(&self) -> Vec<String> {
        strings(self.0.values())
    }

    fn total(&self) -> String {
        q::format(&self.0.total())
    }

    fn value_of(&self, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<String> {
        let v = self
            .0
            .value_of(&rational(a)?, &rational(b)?)
            .map_err(to_py)?;
        Ok(q::format(&v))
    }

    fn max_abs_density(&self) -> String {
        q::format(&self.0.max_abs_density())
    }

    fn __repr__(&self) -> String {
        format!(
            "ValueDensity(breakpoints={:?}, values={:?})",
            self.breakpoints(),
            self.values()
        )
    }
}

fn densities(agents: &[PyValueDensity]) -> Vec<cake::ValueDensity> {
    agents.iter().map(|a| a.0.clone()).collect()
}

/// Connected division: interior cuts and the 1-based piece of each agent.
#[pyclass(name = "Division", frozen, from_py_object)]
#[derive(Clone)]
struct PyDivision(cake::Division);

#[pymethods]
impl PyDivision {
    #[new]
    fn new(cuts: Vec<Bound<'_, PyAny>>, assignment: Vec<usize>) -> PyResult<Self> {
        cake::Division::new(rationals(&cuts)?, assignment)
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn cuts(&self) -> Vec<String> {
        strings(self.0.cuts())
    }

    #[getter]
    fn assignment(&self) -> Vec<usize> {
        self.0.assignment().to_vec()
    }

    /// Largest envy over all agents; `<= 0` means envy-free.
    fn max_envy(&self, agents: Vec<PyValueDensity>) -> PyResult<String> {
        cake::max_envy(&self.0, &densities(&agents))
            .map(|e| q::format(&e))
            .map_err(to_py)
    }

    fn agent_envy(&self, agents: Vec<PyValueDensity>, i: usize) -> PyResult<String> {
        if i >= agents.len() || agents.len() != self.0.assignment().len() {
            return Err(MixedcakeError::new_err(
                "agent index or agent count does not match the division",
            ));
        }
        Ok(q::format(&cake::agent_envy(
            &self.0,
            &densities(&agents),
            i,
        )))
    }

    fn __repr__(&self) -> String {
        format!(
            "Division(cuts={:?}, assignment={:?})",
            self.cuts(),
            self.assignment()
        )
    }
}

/// Triangulation of the simplex of partitions with an owner per vertex.
#[pyclass(name = "Triangulation", frozen)]
struct PyTriangulation {
    inner: tri::Triangulation,
    owners: Option<Vec<usize>>,
    ownership: Option<tri::Ownership>,
}

#[pymethods]
impl PyTriangulation {
    #[staticmethod]
    #[pyo3(signature = (n, depth, cell_cap = DEFAULT_CELL_CAP))]
    fn barycentric(n: usize, depth: usize, cell_cap: u64) -> PyResult<Self> {
        let (inner, own) = tri::barycentric_triangulation(n, depth, cell_cap).map_err(to_py)?;
        Ok(Self {
            inner,
            owners: Some(own.owner.clone()),
            ownership: Some(own),
        })
    }

    /// Grid of the triangle with `d` segments per side, with a friendly
    /// diverse ownership; raises when none exists.
    #[staticmethod]
    #[pyo3(signature = (d, cell_cap = DEFAULT_CELL_CAP))]
    fn equilateral(d: usize, cell_cap: u64) -> PyResult<Self> {
        match tri::equilateral_friendly_n3(d, cell_cap).map_err(to_py)? {
            EquilateralOutcome::Feasible {
                triangulation,
                ownership,
                ..
            } => Ok(Self {
                inner: triangulation,
                owners: Some(ownership.owner.clone()),
                ownership: Some(ownership),
            }),
            EquilateralOutcome::Infeasible { rejections } => Err(MixedcakeError::new_err(format!(
                "no friendly diverse ownership: {}",
                rejections
                    .iter()
                    .map(|r| r.reason.as_str())
                    .collect::<Vec<_>>()
                    .join("; ")
            ))),
        }
    }

    #[staticmethod]
    fn trivial(n: usize) -> PyResult<Self> {
        Ok(Self {
            inner: tri::Triangulation::trivial(n).map_err(to_py)?,
            owners: None,
            ownership: None,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn vertices(&self) -> Vec<Vec<String>> {
        self.inner
            .vertices()
            .iter()
            .map(|p| strings(p.lengths()))
            .collect()
    }

    #[getter]
    fn cells(&self) -> Vec<Vec<usize>> {
        self.inner.cells().to_vec()
    }

    /// 0-based owning agent per vertex, or `None` for the bare simplex.
    #[getter]
    fn owners(&self) -> Option<Vec<usize>> {
        self.owners.clone()
    }

    fn max_diameter_squared(&self) -> String {
        q::format(&self.inner.max_diameter_squared())
    }

    fn ownership_is_valid(&self) -> bool {
        self.ownership.as_ref().is_some_and(|o| {
            o.check_diverse(&self.inner).is_ok() && o.check_friendly(&self.inner).is_ok()
        })
    }

    fn interior_degree(&self, labels: Vec<usize>) -> PyResult<i64> {
        self.check_labels(&labels)?;
        Ok(degree::interior_degree(&self.inner, &labels))
    }

    fn boundary_degree(&self, labels: Vec<usize>) -> PyResult<String> {
        self.check_labels(&labels)?;
        Ok(q::format(&degree::boundary_degree(&self.inner, &labels)))
    }

    /// Cells carrying every label, in index order.
    fn fully_labeled_cells(&self, labels: Vec<usize>) -> PyResult<Vec<usize>> {
        self.check_labels(&labels)?;
        Ok(solver::find_fully_labeled_scan(&self.inner, &labels)
            .into_iter()
            .map(|(c, _)| c)
            .collect())
    }

    /// Random labeling obeying the boundary condition, from a seed.
    fn random_sperner_labeling(&self, seed: u64) -> Vec<usize> {
        random_sperner_labeling(&self.inner, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// SVG picture (triangles only), optionally labeled.
    #[pyo3(signature = (labels = None))]
    fn svg(&self, labels: Option<Vec<usize>>) -> PyResult<String> {
        if let Some(l) = &labels {
            self.check_labels(l)?;
        }
        svg::render(&self.inner, labels.as_deref(), self.ownership.as_ref()).map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.inner.cells().len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Triangulation(n={}, vertices={}, cells={})",
            self.inner.n(),
            self.inner.vertices().len(),
            self.inner.cells().len()
        )
    }
}

impl PyTriangulation {
    fn check_labels(&self, labels: &[usize]) -> PyResult<()> {
        let n = self.inner.n();
        if labels.len() != self.inner.vertices().len() || labels.iter().any(|&l| l == 0 || l > n) {
            return Err(MixedcakeError::new_err(format!(
                "need one label in 1..={n} for each of {} vertices",
                self.inner.vertices().len()
            )));
        }
        Ok(())
    }
}

/// Approximately envy-free connected division; returns the full report.
#[pyfunction]
#[pyo3(signature = (agents, delta, method = "scan", triangulation = "barycentric", cell_cap = DEFAULT_CELL_CAP))]
fn solve<'py>(
    py: Python<'py>,
    agents: Vec<PyValueDensity>,
    delta: &Bound<'py, PyAny>,
    method: &str,
    triangulation: &str,
    cell_cap: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let mut options = solver::SolveOptions::new(rational(delta)?);
    options.method = method.parse().map_err(to_py)?;
    options.triangulation = triangulation.parse().map_err(to_py)?;
    options.cell_cap = cell_cap;
    let agents: Vec<Agent> = densities(&agents).into_iter().map(Agent::from).collect();
    let report = py
        .detach(|| solver::solve(&agents, &options))
        .map_err(to_py)?;
    json_to_py(py, &report)
}

/// Cut-and-choose for two agents.
#[pyfunction]
#[pyo3(signature = (cutter, chooser, tolerance = None))]
fn divide_two_agents(
    cutter: PyValueDensity,
    chooser: PyValueDensity,
    tolerance: Option<Bound<'_, PyAny>>,
) -> PyResult<PyDivision> {
    let tol = match tolerance {
        Some(t) => rational(&t)?,
        None => q::ratio(1, 1_000_000),
    };
    cake::divide_two_agents(&cutter.0, &chooser.0, &tol)
        .map(PyDivision)
        .map_err(to_py)
}

/// Exhaustive grid search; returns `(division, max_envy)`.
#[pyfunction]
#[pyo3(signature = (agents, grid, cap = 100_000_000))]
fn brute_force_envy_free(
    py: Python<'_>,
    agents: Vec<PyValueDensity>,
    grid: usize,
    cap: u64,
) -> PyResult<(PyDivision, String)> {
    let ds = densities(&agents);
    let (d, envy) = py
        .detach(|| solver::brute_force_envy_free(&ds, grid, cap))
        .map_err(to_py)?;
    Ok((PyDivision(d), q::format(&envy)))
}

/// Agents from a JSON profile document.
#[pyfunction]
fn load_profile(text: &str) -> PyResult<Vec<PyValueDensity>> {
    Ok(cake::load_profile(text)
        .map_err(to_py)?
        .into_iter()
        .map(PyValueDensity)
        .collect())
}

/// The three-agent, four-slice fixture whose agents all value the cake at −3.
#[pyfunction]
fn counterexample_agents() -> Vec<PyValueDensity> {
    cake::counterexample_agents()
        .into_iter()
        .map(PyValueDensity)
        .collect()
}

/// Runs a named check and returns its records, the summary last.
#[pyfunction]
#[pyo3(signature = (name, n = 3, depth = 1, trials = 20, seed = 0, multi = 2))]
fn check<'py>(
    py: Python<'py>,
    name: &str,
    n: usize,
    depth: usize,
    trials: usize,
    seed: u64,
    multi: usize,
) -> PyResult<Bound<'py, PyList>> {
    let report = py
        .detach(|| match name {
            "degree" => lab::check_degree_lemma(n, depth, trials, seed),
            "residues" => lab::check_three_agent_residues(depth, trials, seed),
            "sperner" => lab::check_sperner_degree(n, depth, trials, seed),
            "sumreplace" => lab::check_sumreplace(n, depth, trials, seed, multi),
            "prime" => lab::check_prime(n, depth, trials, seed),
            "appendix" => lab::appendix_fixture_check(),
            "conjecture" => lab::conjecture_search(n, depth, trials, seed),
            other => Err(Error::InvalidInput(format!("unknown check {other:?}"))),
        })
        .map_err(to_py)?;
    let out = PyList::empty(py);
    for r in &report.records {
        out.append(json_to_py(py, r)?)?;
    }
    out.append(json_to_py(py, &report.summary)?)?;
    Ok(out)
}

#[pymodule]
#[pyo3(name = "mixedcake")]
fn mixedcake_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyValueDensity>()?;
    m.add_class::<PyDivision>()?;
    m.add_class::<PyTriangulation>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(divide_two_agents, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_envy_free, m)?)?;
    m.add_function(wrap_pyfunction!(load_profile, m)?)?;
    m.add_function(wrap_pyfunction!(counterexample_agents, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add("MixedcakeError", py.get_type::<MixedcakeError>())?;
    m.add("ConjectureGapError", py.get_type::<ConjectureGapError>())?;
    m.add("ResourceCapError", py.get_type::<ResourceCapError>())?;
    Ok(())
}
