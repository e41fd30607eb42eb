//! Python bindings: the main types and operations of Cl(s,t), exposed as a
//! small functional surface plus a `Representation` class. Rational matrix
//! entries cross the boundary as exact (numerator, denominator) int pairs.

use num::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use cliffordian::blade::Signature;
use cliffordian::matrix::{Rational, RationalMatrix};
use cliffordian::planar::run_demo;
use cliffordian::prolong::{
    check_sa_identity, epsilon_signs_for, first_prolongation, lie_algebra_basis, Flavor,
    GroupSpec, OneForm, SxiChecker,
};
use cliffordian::rep::{
    classify as classify_rs, generic_element, left_regular_rep, monomial_check, periodicity_rep,
    right_regular_rep, span_witness, verify_relations, RepKind, RepSet,
};

fn signature(s: u32, t: u32) -> PyResult<Signature> {
    if s + t > 10 {
        return Err(PyValueError::new_err("s + t > 10 is beyond desk scale"));
    }
    Ok(Signature::new(s, t))
}

fn matrix_to_py(m: &RationalMatrix) -> Vec<Vec<(BigInt, BigInt)>> {
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| {
                    let e = &m[(r, c)];
                    (e.numer().clone(), e.denom().clone())
                })
                .collect()
        })
        .collect()
}

/// Decompose Cl(s,t) into base tensor factors, outermost first.
#[pyfunction]
fn classify(s: u32, t: u32) -> PyResult<Vec<String>> {
    let sig = signature(s, t)?;
    classify_rs(&sig)
        .map(|r| r.factor_names())
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// A k x k matrix representation of Cl(s,t) aligned with the canonical
/// blade basis.
#[pyclass]
struct Representation {
    inner: RepSet,
}

#[pymethods]
impl Representation {
    #[new]
    #[pyo3(signature = (s, t, kind = "periodicity"))]
    fn new(s: u32, t: u32, kind: &str) -> PyResult<Self> {
        let sig = signature(s, t)?;
        let kind = RepKind::parse(kind)
            .ok_or_else(|| PyValueError::new_err(format!("unknown kind: {kind}")))?;
        let inner = match kind {
            RepKind::LeftRegular => left_regular_rep(&sig),
            RepKind::RightRegular => right_regular_rep(&sig),
            RepKind::Periodicity => {
                periodicity_rep(&sig).map_err(|e| PyValueError::new_err(e.to_string()))?
            }
        };
        Ok(Representation { inner })
    }

    /// Blade names in canonical order ("E", "I1", ..., "I1I2", ...).
    fn blades(&self) -> Vec<String> {
        self.inner.blade_names()
    }

    /// The k matrices as nested lists of (numerator, denominator) pairs.
    fn matrices(&self) -> Vec<Vec<Vec<(BigInt, BigInt)>>> {
        self.inner.matrices.iter().map(matrix_to_py).collect()
    }

    /// Exact relation check; returns (valid, violation_messages).
    fn verify(&self) -> (bool, Vec<String>) {
        let report = verify_relations(&self.inner);
        let valid = report.is_valid();
        (
            valid,
            report.violations.into_iter().map(|v| v.message).collect(),
        )
    }

    fn monomial(&self) -> bool {
        monomial_check(&self.inner)
    }

    /// Rank of the span {F_i X} at the found witness vector.
    fn span_rank(&self) -> PyResult<usize> {
        span_witness(&self.inner)
            .map(|w| w.rank)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// sum_i coeffs[i] * F_i with coeffs as (numerator, denominator) pairs.
    fn generic_element(&self, coeffs: Vec<(i64, i64)>) -> PyResult<Vec<Vec<(BigInt, BigInt)>>> {
        let coeffs: Vec<Rational> = coeffs
            .into_iter()
            .map(|(n, d)| Rational::new(n.into(), d.into()))
            .collect();
        generic_element(&self.inner, &coeffs)
            .map(|m| matrix_to_py(&m))
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Representation({}, kind={}, k={})",
            self.inner.sig,
            self.inner.kind.as_str(),
            self.inner.k()
        )
    }
}

/// Sign coefficients per blade plus the identity status of S^A.
#[pyfunction]
fn epsilon_signs<'py>(py: Python<'py>, s: u32, t: u32) -> PyResult<Bound<'py, PyDict>> {
    let sig = signature(s, t)?;
    let eps = epsilon_signs_for(&sig).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let report = check_sa_identity(&right_regular_rep(&sig), &eps);
    let out = PyDict::new(py);
    out.set_item("signs", eps.signs.clone())?;
    out.set_item("exact_identity", report.exact_all())?;
    out.set_item("hull_identity", report.hull_all())?;
    Ok(out)
}

/// dim g and dim g^(1) for the chosen flavor on the model O^m.
#[pyfunction]
#[pyo3(signature = (s, t, m = 1, flavor = "clifford"))]
fn prolongation_dims<'py>(
    py: Python<'py>,
    s: u32,
    t: u32,
    m: usize,
    flavor: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let sig = signature(s, t)?;
    let flavor = Flavor::parse(flavor)
        .ok_or_else(|| PyValueError::new_err(format!("unknown flavor: {flavor}")))?;
    let spec = GroupSpec::new(sig, m, flavor);
    let g = lie_algebra_basis(&spec);
    let g1 = first_prolongation(&g);
    let out = PyDict::new(py);
    out.set_item("n", spec.model_dim())?;
    out.set_item("dim_g", g.basis.len())?;
    out.set_item("dim_g1", g1.len())?;
    Ok(out)
}

/// Membership of every standard S^xi in the first prolongation of the
/// Cliffordian flavor, plus the injectivity rank of xi -> S^xi.
#[pyfunction]
#[pyo3(signature = (s, t, m = 1))]
fn sxi_membership<'py>(py: Python<'py>, s: u32, t: u32, m: usize) -> PyResult<Bound<'py, PyDict>> {
    let sig = signature(s, t)?;
    let spec = GroupSpec::new(sig, m, Flavor::Cliffordian);
    let checker = SxiChecker::new(&spec).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let n = spec.model_dim();
    let memberships: Vec<bool> = (0..n)
        .map(|a| checker.check(&OneForm::standard(n, a)))
        .collect();
    let rank = checker.injectivity_rank();
    let out = PyDict::new(py);
    out.set_item("dim_g1", checker.prolongation_dim())?;
    out.set_item("ok", memberships.iter().all(|&b| b) && rank == n)?;
    out.set_item("memberships", memberships)?;
    out.set_item("injectivity_rank", rank)?;
    Ok(out)
}

/// Seeded demo: deform the trivial connection on O^m by a random one-form
/// and measure torsion preservation and geodesic planarity both ways.
#[pyfunction]
#[pyo3(signature = (s, t, m = 1, seed = 0))]
fn planar_demo<'py>(
    py: Python<'py>,
    s: u32,
    t: u32,
    m: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let sig = signature(s, t)?;
    let demo =
        run_demo(&sig, m, seed, 1e-3, 1.0).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let out = PyDict::new(py);
    out.set_item("torsion_preserved", demo.torsion_preserved)?;
    out.set_item("base_preserves_affinors", demo.base_preserves_affinors)?;
    out.set_item("forward_residual", demo.forward_residual)?;
    out.set_item("reverse_residual", demo.reverse_residual)?;
    out.set_item(
        "ok",
        demo.torsion_preserved
            && demo.base_preserves_affinors
            && demo.forward_residual <= 1e-7
            && demo.reverse_residual <= 1e-7,
    )?;
    Ok(out)
}

#[pymodule]
fn cliffordian_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Representation>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(epsilon_signs, m)?)?;
    m.add_function(wrap_pyfunction!(prolongation_dims, m)?)?;
    m.add_function(wrap_pyfunction!(sxi_membership, m)?)?;
    m.add_function(wrap_pyfunction!(planar_demo, m)?)?;
    Ok(())
}
