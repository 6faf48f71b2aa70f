//! Python bindings: partitions, structure tensors, group tables, orbit
//! enumeration, counting and the verification suites.

use std::path::PathBuf;

use plie_core::correspondence::{self, Filter};
use plie_core::counting::{self, transversal_k};
use plie_core::lazard;
use plie_core::structures::{parse_tensor, write_tensor};
use plie_core::{Error, Module};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(plie, PlieError, PyException);
create_exception!(plie, BudgetError, PlieError);
create_exception!(plie, HypothesisError, PlieError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Budget { .. } => BudgetError::new_err(e.to_string()),
        Error::Hypothesis(_) => HypothesisError::new_err(e.to_string()),
        Error::Parse { .. } | Error::InvalidPartition(_) | Error::NotPrime(_) | Error::Precondition(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PlieError::new_err(e.to_string()),
    }
}

fn side(s: &str) -> PyResult<plie_core::Side> {
    s.parse().map_err(to_py)
}

/// Enumeration caps; every enumeration checks them before running.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Budget {
    inner: plie_core::Budget,
}

#[pymethods]
impl Budget {
    #[new]
    #[pyo3(signature = (gl_order=None, tensor_space=None, assoc_full_order=None, assoc_samples=None, lattice_order=None, endo_candidates=None, verify_work=None))]
    fn new(
        gl_order: Option<u64>,
        tensor_space: Option<u64>,
        assoc_full_order: Option<usize>,
        assoc_samples: Option<usize>,
        lattice_order: Option<usize>,
        endo_candidates: Option<u64>,
        verify_work: Option<u64>,
    ) -> Self {
        let d = plie_core::Budget::default();
        Budget {
            inner: plie_core::Budget {
                gl_order: gl_order.map(u128::from).unwrap_or(d.gl_order),
                tensor_space: tensor_space.map(u128::from).unwrap_or(d.tensor_space),
                assoc_full_order: assoc_full_order.unwrap_or(d.assoc_full_order),
                assoc_samples: assoc_samples.unwrap_or(d.assoc_samples),
                lattice_order: lattice_order.unwrap_or(d.lattice_order),
                endo_candidates: endo_candidates.map(u128::from).unwrap_or(d.endo_candidates),
                verify_work: verify_work.map(u128::from).unwrap_or(d.verify_work),
                ..d
            },
        }
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

fn budget(b: Option<Budget>) -> plie_core::Budget {
    b.map(|b| b.inner).unwrap_or_default()
}

#[pyclass(from_py_object)]
#[derive(Clone)]
struct Partition {
    inner: plie_core::Partition,
}

#[pymethods]
impl Partition {
    #[new]
    fn new(parts: Vec<usize>) -> PyResult<Self> {
        Ok(Partition { inner: plie_core::Partition::new(parts).map_err(to_py)? })
    }

    #[staticmethod]
    fn all(n: usize) -> Vec<Partition> {
        plie_core::Partition::all(n).into_iter().map(|inner| Partition { inner }).collect()
    }

    #[getter]
    fn parts(&self) -> Vec<usize> {
        self.inner.parts().to_vec()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn dual(&self) -> Partition {
        Partition { inner: self.inner.dual() }
    }

    fn __eq__(&self, other: &Partition) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Partition({})", self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// Bracket structure on `U = ⊕ Z/p^λ_i` (side "ring") or
/// `V = ⊕ F_p[T]/(T^λ_i)` (side "algebra") with values in `Ω₁`.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct StructureTensor {
    inner: plie_core::StructureTensor,
}

fn tensor(inner: plie_core::StructureTensor) -> StructureTensor {
    StructureTensor { inner }
}

#[pymethods]
impl StructureTensor {
    /// `alpha[(i*t + j)*t + l]` is the coefficient of the `l`-th `Ω₁` generator in `[u_i, u_j]`.
    #[new]
    fn new(p: u64, partition: &Partition, side_name: &str, alpha: Vec<u64>) -> PyResult<Self> {
        let m = Module::new(p, partition.inner.clone(), side(side_name)?).map_err(to_py)?;
        Ok(tensor(plie_core::StructureTensor::new(m, alpha).map_err(to_py)?))
    }

    #[staticmethod]
    fn zero(p: u64, partition: &Partition, side_name: &str) -> PyResult<Self> {
        let m = Module::new(p, partition.inner.clone(), side(side_name)?).map_err(to_py)?;
        Ok(tensor(plie_core::StructureTensor::zero(m)))
    }

    /// Skew-symmetric tensor from `(i, j, l, value)` with `[u_j, u_i] = -[u_i, u_j]`.
    #[staticmethod]
    fn antisymmetric(
        p: u64,
        partition: &Partition,
        side_name: &str,
        entries: Vec<(usize, usize, usize, i64)>,
    ) -> PyResult<Self> {
        let m = Module::new(p, partition.inner.clone(), side(side_name)?).map_err(to_py)?;
        Ok(tensor(plie_core::StructureTensor::antisymmetric(m, &entries).map_err(to_py)?))
    }

    #[staticmethod]
    #[pyo3(signature = (p, side_name="ring"))]
    fn heisenberg(p: u64, side_name: &str) -> PyResult<Self> {
        Ok(tensor(plie_core::StructureTensor::heisenberg(p, side(side_name)?).map_err(to_py)?))
    }

    #[staticmethod]
    #[pyo3(signature = (p, side_name="ring"))]
    fn filiform4(p: u64, side_name: &str) -> PyResult<Self> {
        Ok(tensor(plie_core::StructureTensor::filiform4(p, side(side_name)?).map_err(to_py)?))
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(tensor(parse_tensor(text).map_err(to_py)?))
    }

    fn to_text(&self) -> String {
        write_tensor(&self.inner)
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn shape(&self) -> Partition {
        Partition { inner: self.inner.shape().clone() }
    }

    #[getter]
    fn side(&self) -> String {
        self.inner.side().to_string()
    }

    #[getter]
    fn alpha(&self) -> Vec<u64> {
        self.inner.alpha().to_vec()
    }

    fn get(&self, i: usize, j: usize, l: usize) -> u64 {
        self.inner.get(i, j, l)
    }

    /// The same coefficients on the other side.
    fn theta(&self) -> StructureTensor {
        tensor(self.inner.theta())
    }

    fn is_alternating(&self) -> bool {
        self.inner.is_alternating()
    }

    fn jacobi_holds(&self) -> bool {
        self.inner.jacobi_holds()
    }

    fn is_lie(&self) -> bool {
        self.inner.is_lie()
    }

    fn is_nilpotent(&self) -> PyResult<bool> {
        self.inner.is_nilpotent().map_err(to_py)
    }

    fn nilpotency_class(&self) -> Option<usize> {
        self.inner.nilpotency_class()
    }

    fn __eq__(&self, other: &StructureTensor) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("StructureTensor(p={}, shape=({}), side={})", self.inner.p(), self.inner.shape(), self.inner.side())
    }
}

/// Multiplication table on `0..order`, with `0` the identity.
#[pyclass]
struct GroupTable {
    inner: lazard::GroupTable,
}

#[pymethods]
impl GroupTable {
    #[staticmethod]
    #[pyo3(signature = (text, budget=None))]
    fn from_text(text: &str, budget: Option<Budget>) -> PyResult<Self> {
        Ok(GroupTable { inner: lazard::GroupTable::parse(text, &self::budget(budget)).map_err(to_py)? })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    fn mul(&self, x: usize, y: usize) -> PyResult<usize> {
        if x >= self.inner.order() || y >= self.inner.order() {
            return Err(PyValueError::new_err("element index out of range"));
        }
        Ok(self.inner.mul(x, y))
    }

    fn element_order(&self, x: usize) -> PyResult<u64> {
        if x >= self.inner.order() {
            return Err(PyValueError::new_err("element index out of range"));
        }
        Ok(self.inner.element_order(x))
    }

    fn exponent(&self) -> u64 {
        self.inner.exponent()
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn derived_order(&self) -> usize {
        self.inner.derived_subgroup().len()
    }

    fn center_order(&self) -> usize {
        self.inner.center().len()
    }

    fn nilpotency_class(&self) -> Option<usize> {
        self.inner.nilpotency_class()
    }

    /// Type of the group as a partition (dual of the `Ω`-series type).
    fn group_type(&self) -> PyResult<Partition> {
        Ok(Partition { inner: self.inner.group_type().map_err(to_py)? })
    }

    fn is_isomorphic(&self, other: &GroupTable, budget: Option<Budget>) -> PyResult<bool> {
        lazard::groups_isomorphic(&self.inner, &other.inner, &self::budget(budget)).map_err(to_py)
    }

    /// The Lie ring of a class-2 group with `p` odd.
    fn lie_ring(&self) -> PyResult<StructureTensor> {
        Ok(tensor(lazard::lp_class2(&self.inner).map_err(to_py)?))
    }

    fn __eq__(&self, other: &GroupTable) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("GroupTable(order={}, p={})", self.inner.order(), self.inner.p())
    }
}

/// The group of a nilpotent Lie structure of class below `p`, via BCH.
#[pyfunction]
#[pyo3(signature = (t, budget=None))]
fn gp(t: &StructureTensor, budget: Option<Budget>) -> PyResult<GroupTable> {
    Ok(GroupTable { inner: lazard::gp(&t.inner, &self::budget(budget)).map_err(to_py)? })
}

/// Orbit representatives with orbit sizes, in canonical order.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
#[pyo3(signature = (p, partition, side_name="ring", alternating=false, lie=false, nilpotent=false, budget=None))]
fn orbits(
    py: Python<'_>,
    p: u64,
    partition: &Partition,
    side_name: &str,
    alternating: bool,
    lie: bool,
    nilpotent: bool,
    budget: Option<Budget>,
) -> PyResult<Vec<(StructureTensor, usize)>> {
    let filter = Filter { alternating: alternating || lie, jacobi: lie, nilpotent };
    let s = side(side_name)?;
    let b = self::budget(budget);
    let lam = partition.inner.clone();
    let report = py.detach(|| correspondence::orbits(&lam, p, s, filter, &b)).map_err(to_py)?;
    Ok(report.orbits.into_iter().map(|o| (tensor(o.representative), o.size)).collect())
}

type CountRows = Vec<(Vec<usize>, u64)>;

/// Per-partition counts `[(parts, count)]` and the total for groups of order `p^n`.
#[pyfunction]
#[pyo3(signature = (p, n, transversal=None, budget=None))]
fn count(
    py: Python<'_>,
    p: u64,
    n: usize,
    transversal: Option<PathBuf>,
    budget: Option<Budget>,
) -> PyResult<(CountRows, u64)> {
    let b = self::budget(budget);
    let report = py
        .detach(|| {
            let t = transversal_k(p, n, transversal.as_deref(), &b)?;
            counting::count_report(p, n, &t, &b, false)
        })
        .map_err(to_py)?;
    let rows = report.rows.iter().map(|r| (r.partition.parts().to_vec(), r.count)).collect();
    Ok((rows, report.total))
}

/// Correspondence checks on one shape: `(passed, report text)`.
#[pyfunction]
#[pyo3(signature = (p, partition, budget=None))]
fn verify_gencorr(py: Python<'_>, p: u64, partition: &Partition, budget: Option<Budget>) -> PyResult<(bool, String)> {
    let b = self::budget(budget);
    let lam = partition.inner.clone();
    let r = py.detach(|| correspondence::verify_gencorr(&lam, p, &b)).map_err(to_py)?;
    Ok((r.passed(), r.render()))
}

/// Group and Lie ring dictionary checks for `gp(t)`: `(passed, report text)`.
#[pyfunction]
#[pyo3(signature = (t, budget=None))]
fn verify_ml_properties(t: &StructureTensor, budget: Option<Budget>) -> PyResult<(bool, String)> {
    let b = self::budget(budget);
    let g = lazard::gp(&t.inner, &b).map_err(to_py)?;
    let r = lazard::verify_ml_properties(&g, &t.inner, &b).map_err(to_py)?;
    Ok((r.passed(), r.render("group dictionary")))
}

/// `(|N_E|, |C(K)|, equal)` for `E = gp(t)` with `t` on shape `(1,…,1)`.
#[pyfunction]
#[pyo3(signature = (t, budget=None))]
fn verify_ne_equals_c(t: &StructureTensor, budget: Option<Budget>) -> PyResult<(usize, usize, bool)> {
    let b = self::budget(budget);
    let g = lazard::gp(&t.inner, &b).map_err(to_py)?;
    let r = counting::verify_ne_equals_c(&g, &b).map_err(to_py)?;
    Ok((r.n_endo, r.c_set, r.equal))
}

/// BCH terms up to `class` as `(numerator, denominator, bracket)`.
#[pyfunction]
fn bch_terms(class: usize) -> PyResult<Vec<(String, String, String)>> {
    if class == 0 {
        return Err(PyValueError::new_err("class must be at least 1"));
    }
    Ok(lazard::bch_terms(class)
        .terms
        .iter()
        .map(|t| {
            let shown = t.to_string();
            let bracket = shown.split_once(' ').map(|(_, w)| w.to_string()).unwrap_or_default();
            (t.coeff.numer().to_string(), t.coeff.denom().to_string(), bracket)
        })
        .collect())
}

#[pymodule]
pub fn plie(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("PlieError", m.py().get_type::<PlieError>())?;
    m.add("BudgetError", m.py().get_type::<BudgetError>())?;
    m.add("HypothesisError", m.py().get_type::<HypothesisError>())?;
    m.add_class::<Budget>()?;
    m.add_class::<Partition>()?;
    m.add_class::<StructureTensor>()?;
    m.add_class::<GroupTable>()?;
    m.add_function(wrap_pyfunction!(gp, m)?)?;
    m.add_function(wrap_pyfunction!(orbits, m)?)?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(verify_gencorr, m)?)?;
    m.add_function(wrap_pyfunction!(verify_ml_properties, m)?)?;
    m.add_function(wrap_pyfunction!(verify_ne_equals_c, m)?)?;
    m.add_function(wrap_pyfunction!(bch_terms, m)?)?;
    Ok(())
}
