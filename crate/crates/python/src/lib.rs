use std::collections::BTreeMap;

use hlseries::congruences::{self, CongruenceClaim, EtaQuotientSpec};
use hlseries::framework::{self, Nu};
use hlseries::{hall_littlewood, identities, partitions, recursion, Partition};
use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: hlseries::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn coeffs(s: hlseries::IntSeries) -> Vec<BigInt> {
    s.into_coeffs()
}

/// A Rogers-Ramanujan specification `R_nu(a, b)`.
#[pyclass(name = "RRSpec", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyRRSpec {
    inner: hlseries::RRSpec,
}

#[pymethods]
impl PyRRSpec {
    /// `nu` is a string such as "1,-1" or "(2,-2)".
    #[new]
    fn new(nu: &str, a: u32, b: u32) -> PyResult<Self> {
        let nu: Nu = nu.parse().map_err(err)?;
        Ok(PyRRSpec { inner: hlseries::RRSpec::new(nu, a, b).map_err(err)? })
    }

    #[getter]
    fn nu(&self) -> (i64, i64) {
        self.inner.nu().pair()
    }

    #[getter]
    fn a(&self) -> u32 {
        self.inner.a()
    }

    #[getter]
    fn b(&self) -> u32 {
        self.inner.b()
    }

    #[getter]
    fn kappa(&self) -> usize {
        self.inner.kappa()
    }

    #[getter]
    fn t_exponent(&self) -> usize {
        self.inner.t_exponent()
    }

    fn sum_side(&self, truncation: usize) -> Vec<BigInt> {
        coeffs(framework::sum_side(&self.inner, truncation))
    }

    fn product_side(&self, truncation: usize) -> Vec<BigInt> {
        coeffs(framework::product_side(&self.inner, truncation))
    }

    /// Exponents `c(0), ..., c(kappa - 1)`.
    fn c_table(&self) -> Vec<i64> {
        framework::c_table(&self.inner).values().to_vec()
    }

    #[staticmethod]
    fn all_up_to(max: u32) -> Vec<PyRRSpec> {
        hlseries::RRSpec::all_up_to(max).into_iter().map(|inner| PyRRSpec { inner }).collect()
    }

    fn __repr__(&self) -> String {
        format!("RRSpec('{}', {}, {})", self.inner.nu(), self.inner.a(), self.inner.b())
    }
}

/// Coefficients `a(0..=count)` of `prod (1-q^t)^{c(t)}` for a periodic table `c`.
#[pyfunction]
fn recurse(c_table: Vec<i64>, count: usize) -> PyResult<Vec<BigInt>> {
    if c_table.is_empty() {
        return Err(PyValueError::new_err("empty exponent table"));
    }
    let k = c_table.len();
    recursion::recurse_coefficients(|n| c_table[n % k], count).map(coeffs).map_err(err)
}

#[pyfunction]
fn fhat_eval(n: usize, x: Vec<BigRational>) -> PyResult<BigRational> {
    recursion::fhat_eval(n, &x).map_err(err)
}

#[pyfunction]
fn hl_principal(parts: Vec<u32>, t_exponent: usize, truncation: usize) -> PyResult<Vec<BigInt>> {
    if t_exponent == 0 {
        return Err(PyValueError::new_err("t_exponent must be at least 1"));
    }
    let lambda = Partition::new(parts).map_err(err)?;
    Ok(coeffs(hall_littlewood::hl_principal(&lambda, t_exponent, truncation)))
}

#[pyfunction]
fn hl_eval(parts: Vec<u32>, x: Vec<BigRational>, t: BigRational) -> PyResult<BigRational> {
    let lambda = Partition::new(parts).map_err(err)?;
    hall_littlewood::hl_branching_at_points(&lambda, &x, &t).map_err(err)
}

#[pyfunction]
fn partition_count(n: usize) -> BigInt {
    partitions::partition_count(n)
}

#[pyfunction]
fn psi_series(m: u32, truncation: usize) -> PyResult<Vec<BigInt>> {
    if m < 2 {
        return Err(PyValueError::new_err("m must be at least 2"));
    }
    Ok(coeffs(congruences::psi_series(m, truncation)))
}

#[pyfunction]
#[pyo3(signature = (m, stride, offset, modulus, truncation = 25000))]
fn verify_claim<'py>(
    py: Python<'py>,
    m: u32,
    stride: u64,
    offset: u64,
    modulus: u64,
    truncation: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let claim = CongruenceClaim::new(m, stride, offset, modulus).map_err(err)?;
    let r = congruences::verify_claim(&claim, truncation);
    let d = PyDict::new(py);
    d.set_item("claim", claim.to_string())?;
    d.set_item("verified", r.verified())?;
    d.set_item("samples_checked", r.samples_checked)?;
    d.set_item("verified_through", r.verified_through)?;
    d.set_item(
        "counterexample",
        r.counterexample.map(|c| (c.n, c.argument, c.value.parse::<BigInt>().expect("decimal"))),
    )?;
    Ok(d)
}

/// Empirical `(A, B, samples)` candidates.
#[pyfunction]
#[pyo3(signature = (m, p, a_max, truncation = 25000, min_samples = congruences::MIN_SAMPLES_FLOOR))]
fn scan_progressions(m: u32, p: u64, a_max: u64, truncation: usize, min_samples: usize) -> PyResult<Vec<(u64, u64, usize)>> {
    let found = congruences::scan_progressions(m, p, a_max, truncation, min_samples).map_err(err)?;
    Ok(found.into_iter().map(|c| (c.claim.stride, c.claim.offset, c.samples)).collect())
}

/// `kind` is one of even, odd, kernel, dyson, gh.
#[pyfunction]
#[pyo3(signature = (kind, m = None, truncation = 40))]
fn verify_identity<'py>(py: Python<'py>, kind: &str, m: Option<u32>, truncation: usize) -> PyResult<Bound<'py, PyDict>> {
    let need_m = || m.ok_or_else(|| PyValueError::new_err(format!("{kind} identity needs m")));
    let (check, holds) = match kind {
        "even" => {
            let c = identities::verify_even_identity(need_m()?, truncation).map_err(err)?;
            (c.clone(), c.holds)
        }
        "odd" => {
            let c = identities::verify_odd_identity(need_m()?, truncation).map_err(err)?;
            (c.clone(), c.holds)
        }
        "kernel" => {
            let c = identities::verify_kernel_identity(need_m()?, truncation).map_err(err)?;
            (c.clone(), c.holds)
        }
        "dyson" => {
            let c = identities::dyson_check(truncation);
            (c.clone(), c.holds)
        }
        "gh" => {
            let r = identities::gh_product_check(truncation);
            let holds = r.holds();
            (r.product, holds)
        }
        other => return Err(PyValueError::new_err(format!("unknown identity {other:?}"))),
    };
    let d = PyDict::new(py);
    d.set_item("holds", holds)?;
    d.set_item("first_mismatch", check.first_mismatch)?;
    d.set_item("lhs", check.lhs.into_coeffs())?;
    d.set_item("rhs", check.rhs.into_coeffs())?;
    Ok(d)
}

#[pyfunction]
fn sturm_bound(weight: u64, level: u64) -> u64 {
    congruences::sturm_bound(weight, level)
}

#[pyfunction]
fn gamma0_index(level: u64) -> u64 {
    congruences::gamma0_index(level)
}

#[pyfunction]
fn kronecker_symbol(a: BigInt, n: BigInt) -> i8 {
    congruences::kronecker_symbol(&a, &n)
}

/// `(cond24_delta, cond24_co_delta, twice_weight, discriminant or None)`.
#[pyfunction]
fn eta_quotient_conditions(level: u64, exponents: BTreeMap<u64, i64>) -> PyResult<(bool, bool, i64, Option<BigInt>)> {
    let spec = EtaQuotientSpec::new(level, exponents).map_err(err)?;
    let r = congruences::eta_quotient_conditions(&spec).map_err(err)?;
    Ok((r.cond24_delta, r.cond24_co_delta, r.twice_weight, r.character_discriminant))
}

#[pymodule]
#[pyo3(name = "hlseries")]
fn hlseries_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRRSpec>()?;
    m.add_function(wrap_pyfunction!(recurse, m)?)?;
    m.add_function(wrap_pyfunction!(fhat_eval, m)?)?;
    m.add_function(wrap_pyfunction!(hl_principal, m)?)?;
    m.add_function(wrap_pyfunction!(hl_eval, m)?)?;
    m.add_function(wrap_pyfunction!(partition_count, m)?)?;
    m.add_function(wrap_pyfunction!(psi_series, m)?)?;
    m.add_function(wrap_pyfunction!(verify_claim, m)?)?;
    m.add_function(wrap_pyfunction!(scan_progressions, m)?)?;
    m.add_function(wrap_pyfunction!(verify_identity, m)?)?;
    m.add_function(wrap_pyfunction!(sturm_bound, m)?)?;
    m.add_function(wrap_pyfunction!(gamma0_index, m)?)?;
    m.add_function(wrap_pyfunction!(kronecker_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(eta_quotient_conditions, m)?)?;
    Ok(())
}
