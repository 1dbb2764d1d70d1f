//! Python bindings. Elements and vectors cross the boundary in their
//! canonical text form; reports and budgets as JSON strings.

use std::fmt::Display;
use std::sync::Arc;

use affine_induced::certify::{self, Budgets};
use affine_induced::cli::{run_config, scenarios, ScenarioConfig};
use affine_induced::modules::{build_inducing, induce, ModuleDescriptor};
use affine_induced::parabolic::parabolic_from_subset;
use affine_induced::pbw::{AmbientOrder, Straightener};
use affine_induced::{LieBasisElement, LieElement};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::json;

fn err(e: impl Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn levi(subset: &[usize]) -> PyResult<Vec<usize>> {
    subset.iter().map(|&s| s.checked_sub(1).ok_or_else(|| err("simple roots are numbered from 1"))).collect()
}

fn spec(label: &str, subset: &[usize]) -> PyResult<Arc<affine_induced::ParabolicSpec>> {
    let alg = Arc::new(affine_induced::AffineAlgebra::new(label).map_err(err)?);
    Ok(Arc::new(parabolic_from_subset(alg, &levi(subset)?).map_err(err)?))
}

fn budgets(text: Option<&str>) -> PyResult<Budgets> {
    let b: Budgets = match text {
        Some(t) => serde_json::from_str(t).map_err(err)?,
        None => Budgets::default(),
    };
    b.validate().map_err(err)?;
    Ok(b)
}

/// The affine algebra of `sl(r+1)` for a label `A1`..`A8`.
#[pyclass(frozen)]
struct AffineAlgebra {
    inner: Arc<affine_induced::AffineAlgebra>,
}

#[pymethods]
impl AffineAlgebra {
    #[new]
    fn new(label: &str) -> PyResult<Self> {
        Ok(AffineAlgebra { inner: Arc::new(affine_induced::AffineAlgebra::new(label).map_err(err)?) })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.root_system().label().to_string()
    }

    /// Basis elements with loop degree in `[lo, hi]`, then `c` and `d`.
    fn basis(&self, lo: i64, hi: i64) -> Vec<String> {
        self.inner.basis_window(lo, hi).iter().map(ToString::to_string).collect()
    }

    fn bracket(&self, x: &str, y: &str) -> PyResult<String> {
        let x: LieElement = x.parse().map_err(err)?;
        let y: LieElement = y.parse().map_err(err)?;
        Ok(self.inner.bracket(&x, &y).map_err(err)?.to_string())
    }

    /// The invariant form on loop basis elements.
    fn form(&self, x: &str, y: &str) -> PyResult<String> {
        let x: LieBasisElement = x.parse().map_err(err)?;
        let y: LieBasisElement = y.parse().map_err(err)?;
        Ok(affine_induced::rational::fmt_q(&self.inner.loop_form(&x, &y)))
    }

    fn __repr__(&self) -> String {
        format!("AffineAlgebra('{}')", self.inner.root_system().label())
    }
}

/// The module induced from a descriptor (JSON) over the parabolic given by
/// `subset` (1-based simple roots).
#[pyclass(frozen)]
struct InducedModule {
    inner: affine_induced::modules::InducedModule,
}

#[pymethods]
impl InducedModule {
    #[new]
    fn new(label: &str, subset: Vec<usize>, module: &str) -> PyResult<Self> {
        let sp = spec(label, &subset)?;
        let desc: ModuleDescriptor = serde_json::from_str(module).map_err(err)?;
        let v = build_inducing(&desc, &sp).map_err(err)?;
        Ok(InducedModule { inner: induce(sp, v).map_err(err)? })
    }

    #[getter]
    fn charge(&self) -> String {
        affine_induced::rational::fmt_q(&self.inner.charge())
    }

    /// Basis vectors `u ⊗ b` of total degree at most `max_degree`.
    fn basis(&self, max_degree: u32, window: i64) -> Vec<String> {
        self.inner
            .basis(max_degree, window)
            .into_iter()
            .map(|(u, b)| affine_induced::modules::ModuleVector::basis(u, b).to_string())
            .collect()
    }

    fn act(&self, x: &str, v: &str) -> PyResult<String> {
        let x: LieElement = x.parse().map_err(err)?;
        let v = self.inner.parse_vector(v).map_err(err)?;
        Ok(self.inner.act(&x, &v).map_err(err)?.to_string())
    }

    /// `x·(y·v) − y·(x·v) − [x, y]·v` for basis elements `x`, `y`.
    fn representation_defect(&self, x: &str, y: &str, v: &str) -> PyResult<String> {
        let x: LieBasisElement = x.parse().map_err(err)?;
        let y: LieBasisElement = y.parse().map_err(err)?;
        let v = self.inner.parse_vector(v).map_err(err)?;
        Ok(self.inner.representation_defect(&x, &y, &v).map_err(err)?.to_string())
    }

    /// `(key, component)` pairs of the weight decomposition.
    fn weight_components(&self, v: &str) -> PyResult<Vec<(Vec<i64>, String)>> {
        let v = self.inner.parse_vector(v).map_err(err)?;
        Ok(self.inner.weight_components(&v).into_iter().map(|c| (c.key, c.vector.to_string())).collect())
    }

    #[pyo3(signature = (v, budgets=None))]
    fn descend(&self, v: &str, budgets: Option<&str>) -> PyResult<String> {
        let b = self::budgets(budgets)?;
        let v = self.inner.parse_vector(v).map_err(err)?;
        let out = certify::descend(&self.inner, &v, &b).map_err(err)?;
        let j = json!({"verdict": out.verdict, "witness": out.witness, "exhausted": out.exhausted, "attempts": out.attempts});
        Ok(j.to_string())
    }

    #[pyo3(signature = (budgets=None))]
    fn probe(&self, budgets: Option<&str>) -> PyResult<String> {
        let b = self::budgets(budgets)?;
        let r = certify::irreducibility_probe(&self.inner, &b).map_err(err)?;
        serde_json::to_string(&r).map_err(err)
    }
}

/// Normal form of a word in the enveloping algebra, in the parabolic-adapted
/// PBW order.
#[pyfunction]
fn normal_order(label: &str, subset: Vec<usize>, word: Vec<String>) -> PyResult<String> {
    let e = Straightener::new(AmbientOrder::new(spec(label, &subset)?));
    let w: Vec<LieBasisElement> = word.iter().map(|s| s.parse().map_err(err)).collect::<PyResult<_>>()?;
    Ok(e.normal_order(&w).to_string())
}

/// Runs a bundled scenario, a config path or inline config JSON; returns the
/// JSON report.
#[pyfunction]
fn run_scenario(config: &str) -> PyResult<String> {
    let cfg = if config.trim_start().starts_with('{') {
        ScenarioConfig::from_json(config)
    } else {
        scenarios::load(config)
    }
    .map_err(err)?;
    run_config(&cfg).and_then(|o| o.report.to_json()).map_err(err)
}

#[pyfunction]
fn scenario_names() -> Vec<&'static str> {
    scenarios::names()
}

#[pyfunction]
fn selftest(labels: Vec<String>) -> PyResult<String> {
    let r = certify::algebra_selftest(&labels, None).map_err(err)?;
    serde_json::to_string(&r).map_err(err)
}

#[pymodule]
#[pyo3(name = "affine_induced")]
fn python_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<AffineAlgebra>()?;
    m.add_class::<InducedModule>()?;
    m.add_function(wrap_pyfunction!(normal_order, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(scenario_names, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
