//! Python bindings for the collatz-rings workbench.
//!
//! The main types (Ring, Poly, RationalSeries, DyadicRational) are exposed
//! as classes; counts, censuses, valuations, and the verification suites
//! are module-level functions. Elements travel as strings in the same
//! textual syntax the CLI uses; counts come back as Python ints.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use collatz_rings::census;
use collatz_rings::dyadic;
use collatz_rings::parity;
use collatz_rings::poly;
use collatz_rings::ring::{factorize, make_ring};
use collatz_rings::series::{self, ParityMap};
use collatz_rings::valuation;
use collatz_rings::verify;

fn err(e: collatz_rings::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn which(condensed: bool) -> ParityMap {
    if condensed {
        ParityMap::Condensed
    } else {
        ParityMap::Full
    }
}

/// A supported coefficient ring, created from a spec string such as
/// "Z/4", "F9=F3[y]/(y^2+1)", "F2[t]", or "Z".
#[pyclass(name = "Ring", frozen)]
struct PyRing {
    inner: collatz_rings::Ring,
}

#[pymethods]
impl PyRing {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(PyRing {
            inner: make_ring(spec).map_err(err)?,
        })
    }

    #[getter]
    fn spec(&self) -> String {
        self.inner.spec_string()
    }

    #[getter]
    fn characteristic(&self) -> u64 {
        self.inner.characteristic()
    }

    #[getter]
    fn cardinality(&self) -> Option<BigUint> {
        self.inner.cardinality()
    }

    #[getter]
    fn is_finite(&self) -> bool {
        self.inner.is_finite()
    }

    /// Prime factorization of the characteristic as [(p, alpha), ...].
    fn char_factors(&self) -> PyResult<Vec<(u64, u32)>> {
        Ok(self
            .inner
            .char_factorization()
            .map_err(err)?
            .factors()
            .to_vec())
    }

    /// All elements of a finite ring, formatted.
    fn elements(&self) -> PyResult<Vec<String>> {
        Ok(self
            .inner
            .enumerate_elements()
            .map_err(err)?
            .iter()
            .map(|e| self.inner.format_elem(e))
            .collect())
    }

    fn is_unit(&self, elem: &str) -> PyResult<bool> {
        let e = self.inner.parse_elem(elem).map_err(err)?;
        Ok(self.inner.is_unit(&e))
    }

    /// Parse a polynomial in this ring: "[c0,c1,...]".
    fn poly(&self, text: &str) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: collatz_rings::Poly::parse(&self.inner, text).map_err(err)?,
        })
    }

    /// Build the rational series u(1+xv)^{-1} from two polynomial strings.
    fn series(&self, u: &str, v: &str) -> PyResult<PySeries> {
        let u = collatz_rings::Poly::parse(&self.inner, u).map_err(err)?;
        let v = collatz_rings::Poly::parse(&self.inner, v).map_err(err)?;
        Ok(PySeries {
            inner: series::RationalSeries::new(self.inner.clone(), u, v).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("Ring({:?})", self.inner.spec_string())
    }

    fn __eq__(&self, other: &PyRing) -> bool {
        self.inner == other.inner
    }
}

/// A polynomial over a Ring, little-endian coefficients.
#[pyclass(name = "Poly", frozen)]
struct PyPoly {
    inner: collatz_rings::Poly,
}

#[pymethods]
impl PyPoly {
    #[getter]
    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    #[getter]
    fn is_odd(&self) -> bool {
        self.inner.is_odd()
    }

    #[getter]
    fn ring(&self) -> PyRing {
        PyRing {
            inner: self.inner.ring().clone(),
        }
    }

    /// One step of the Collatz map.
    fn step(&self) -> PyPoly {
        PyPoly {
            inner: poly::collatz_step(&self.inner),
        }
    }

    /// One step of the auxiliary map ((x+1)f - f(0))/x.
    fn step_pi(&self) -> PyPoly {
        PyPoly {
            inner: poly::pi_step(&self.inner),
        }
    }

    /// Iterate with cycle detection; returns a dict with keys
    /// cycle_found, preperiod, cycle, steps, trace.
    #[pyo3(signature = (budget = None, trace = false))]
    fn orbit<'py>(
        &self,
        py: Python<'py>,
        budget: Option<u64>,
        trace: bool,
    ) -> PyResult<Bound<'py, PyDict>> {
        let budget = match budget {
            Some(b) => b,
            None => poly::default_orbit_budget(&self.inner).map_err(err)?,
        };
        let report = poly::orbit(&self.inner, budget, trace);
        let out = PyDict::new(py);
        out.set_item("cycle_found", report.cycle_found())?;
        out.set_item("preperiod", report.preperiod)?;
        out.set_item(
            "cycle",
            report
                .cycle
                .iter()
                .map(|f| PyPoly { inner: f.clone() })
                .collect::<Vec<_>>(),
        )?;
        out.set_item("steps", report.steps_taken)?;
        out.set_item(
            "trace",
            report.trace.map(|t| {
                t.into_iter()
                    .map(|f| PyPoly { inner: f })
                    .collect::<Vec<_>>()
            }),
        )?;
        Ok(out)
    }

    /// Binomial-sum periodicity criterion (positive characteristic).
    fn is_periodic(&self) -> PyResult<bool> {
        poly::is_periodic(&self.inner).map_err(err)
    }

    fn exact_period(&self) -> PyResult<u64> {
        poly::exact_period(&self.inner).map_err(err)
    }

    /// 2 K(deg f), the universal period divisor for odd f.
    fn period_divisor_bound(&self) -> PyResult<BigUint> {
        poly::period_divisor_bound(&self.inner).map_err(err)
    }

    /// Over Z: "zero-cycle" | "constant-cycle" | "not-periodic".
    fn classify_char_zero(&self) -> PyResult<&'static str> {
        Ok(match poly::char_zero_classify(&self.inner).map_err(err)? {
            poly::CharZeroClass::OnZeroCycle => "zero-cycle",
            poly::CharZeroClass::OnConstantCycle => "constant-cycle",
            poly::CharZeroClass::NotPeriodic => "not-periodic",
        })
    }

    /// Over a field: T^(pd(d+1)-d)(f) is periodic (recomputed, not trusted).
    fn preperiod_bound_check(&self) -> PyResult<bool> {
        poly::preperiod_bound_check(&self.inner).map_err(err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Poly({:?} over {})",
            self.inner.to_string(),
            self.inner.ring().spec_string()
        )
    }

    fn __eq__(&self, other: &PyPoly) -> bool {
        self.inner == other.inner
    }
}

/// An eventually periodic power series in rational form u(1+xv)^{-1}.
#[pyclass(name = "RationalSeries", frozen)]
struct PySeries {
    inner: series::RationalSeries,
}

#[pymethods]
impl PySeries {
    #[getter]
    fn u(&self) -> String {
        self.inner.numerator().to_string()
    }

    #[getter]
    fn v(&self) -> String {
        self.inner.v_part().to_string()
    }

    #[getter]
    fn is_odd(&self) -> bool {
        self.inner.is_odd()
    }

    fn step(&self) -> PySeries {
        PySeries {
            inner: series::series_t(&self.inner),
        }
    }

    fn step_condensed(&self) -> PySeries {
        PySeries {
            inner: series::series_t_condensed(&self.inner),
        }
    }

    /// Constant terms of the first n iterates, formatted.
    #[pyo3(signature = (n, condensed = false))]
    fn parity_vector(&self, n: usize, condensed: bool) -> Vec<String> {
        let ring = self.inner.ring().clone();
        series::parity_vector(&self.inner, n, which(condensed))
            .iter()
            .map(|e| ring.format_elem(e))
            .collect()
    }

    /// First m series coefficients, formatted.
    fn truncate(&self, m: usize) -> Vec<String> {
        let ring = self.inner.ring().clone();
        self.inner
            .truncate(m)
            .iter()
            .map(|e| ring.format_elem(e))
            .collect()
    }

    #[pyo3(signature = (budget = 100_000))]
    fn orbit<'py>(&self, py: Python<'py>, budget: u64) -> PyResult<Bound<'py, PyDict>> {
        let report = series::series_orbit(&self.inner, budget).map_err(err)?;
        let ring = self.inner.ring().clone();
        let out = PyDict::new(py);
        out.set_item("preperiod", report.preperiod)?;
        out.set_item(
            "cycle",
            report
                .cycle
                .iter()
                .map(|f| PySeries { inner: f.clone() })
                .collect::<Vec<_>>(),
        )?;
        out.set_item(
            "parity_trace",
            report
                .parity_trace
                .iter()
                .map(|e| ring.format_elem(e))
                .collect::<Vec<_>>(),
        )?;
        out.set_item("steps", report.steps_taken)?;
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!(
            "RationalSeries(u={}, v={} over {})",
            self.inner.numerator(),
            self.inner.v_part(),
            self.inner.ring().spec_string()
        )
    }

    fn __eq__(&self, other: &PySeries) -> bool {
        self.inner == other.inner
    }
}

/// A 2-adic rational: reduced fraction with odd denominator.
#[pyclass(name = "DyadicRational", frozen)]
struct PyDyadic {
    inner: dyadic::DyadicRational,
}

#[pymethods]
impl PyDyadic {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyDyadic {
            inner: dyadic::DyadicRational::parse(text).map_err(err)?,
        })
    }

    #[getter]
    fn numer(&self) -> BigInt {
        self.inner.numer().clone()
    }

    #[getter]
    fn denom(&self) -> BigInt {
        self.inner.denom().clone()
    }

    #[getter]
    fn is_odd(&self) -> bool {
        self.inner.is_odd()
    }

    /// Full map: f/2 or 3f+1.
    fn step(&self) -> PyDyadic {
        PyDyadic {
            inner: dyadic::dyadic_t(&self.inner),
        }
    }

    /// Condensed map: f/2 or (3f+1)/2.
    fn step_condensed(&self) -> PyDyadic {
        PyDyadic {
            inner: dyadic::dyadic_t_condensed(&self.inner),
        }
    }

    #[pyo3(signature = (n, condensed = false))]
    fn parity_vector(&self, n: usize, condensed: bool) -> Vec<u64> {
        dyadic::parity_vector_z2(&self.inner, n, which(condensed))
    }

    /// First m 2-adic digits, little-endian.
    fn digits(&self, m: usize) -> Vec<u64> {
        self.inner.digits(m)
    }

    #[pyo3(signature = (budget = 10_000, condensed = false))]
    fn orbit<'py>(
        &self,
        py: Python<'py>,
        budget: u64,
        condensed: bool,
    ) -> PyResult<Bound<'py, PyDict>> {
        let report = dyadic::dyadic_orbit(&self.inner, budget, which(condensed));
        let out = PyDict::new(py);
        out.set_item("cycle_found", report.cycle_found())?;
        out.set_item("preperiod", report.preperiod)?;
        out.set_item(
            "cycle",
            report
                .cycle
                .iter()
                .map(|f| PyDyadic { inner: f.clone() })
                .collect::<Vec<_>>(),
        )?;
        out.set_item("steps", report.steps_taken)?;
        Ok(out)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("DyadicRational({:?})", self.inner.to_string())
    }

    fn __eq__(&self, other: &PyDyadic) -> bool {
        self.inner == other.inner
    }
}

// ---------------------------------------------------------------------
// valuations
// ---------------------------------------------------------------------

/// v_p(n), the exponent of p in n.
#[pyfunction]
fn vp(p: u64, n: BigUint) -> PyResult<u64> {
    valuation::vp(p, &n).map_err(err)
}

/// Sum of the base-p digits of n.
#[pyfunction]
fn digit_sum(p: u64, n: BigUint) -> u64 {
    valuation::digit_sum(p, &n)
}

/// v_p(C(n, m)) by the carry-counting digit formula.
#[pyfunction]
fn binom_valuation(p: u64, n: BigUint, m: BigUint) -> PyResult<u64> {
    valuation::binom_valuation(p, &n, &m).map_err(err)
}

/// C(n, m) mod p by digit products.
#[pyfunction]
fn binom_mod_p(p: u64, n: BigUint, m: BigUint) -> u64 {
    valuation::binom_mod_p(p, &n, &m)
}

/// K(n) for the given positive characteristic.
#[pyfunction]
fn threshold_constant(modulus: u64, n: u64) -> PyResult<BigUint> {
    valuation::threshold_constant(&factorize(modulus), n).map_err(err)
}

/// Both sides of the K(n) | k equivalence; they always agree.
#[pyfunction]
fn divisibility_equivalence(modulus: u64, n: u64, k: BigUint) -> PyResult<(bool, bool)> {
    valuation::divisibility_equivalence_check(&factorize(modulus), n, &k).map_err(err)
}

// ---------------------------------------------------------------------
// counting
// ---------------------------------------------------------------------

/// L_n = alpha^n + beta^n: points of period dividing n at alphabet size q.
#[pyfunction]
fn lucas_like(q: u64, n: u64) -> BigUint {
    parity::lucas_like(q, n)
}

/// Number of cycles of exact length n at alphabet size q.
#[pyfunction]
fn z_count(q: u64, n: u64) -> PyResult<BigUint> {
    parity::z_count(q, n).map_err(err)
}

#[pyfunction]
fn j_count(q: u64, n: u64) -> PyResult<BigUint> {
    parity::j_count(q, n).map_err(err)
}

#[pyfunction]
fn mobius(n: u64) -> i64 {
    parity::mobius(n)
}

/// Z_n * n / alpha^n; drifts to 1 as n grows.
#[pyfunction]
fn asymptotic_ratio(q: u64, n: u64) -> PyResult<f64> {
    parity::asymptotic_ratio(q, n).map_err(err)
}

#[pyfunction]
fn enumerate_cyclically_zero_dense(q: u64, n: usize) -> PyResult<Vec<Vec<u64>>> {
    parity::enumerate_cyclically_zero_dense(q, n).map_err(err)
}

#[pyfunction]
fn condense(v: Vec<u64>) -> PyResult<Vec<u64>> {
    parity::condense(&v).map_err(err)
}

#[pyfunction]
fn expand(v: Vec<u64>) -> Vec<u64> {
    parity::expand(&v)
}

#[pyfunction]
fn is_cyclically_zero_dense(v: Vec<u64>) -> PyResult<bool> {
    parity::is_cyclically_zero_dense(&v).map_err(err)
}

/// Cycles of length 2p^k over F_q, closed form.
#[pyfunction]
fn count_cycles_formula(q: u64, p: u64, k: u32) -> PyResult<BigUint> {
    census::count_cycles_formula(q, p, k).map_err(err)
}

/// Brute-force cycle census over a finite ring: {length: count}.
#[pyfunction]
fn brute_force_census(ring: &PyRing, max_deg: usize) -> PyResult<BTreeMap<u64, u64>> {
    Ok(census::brute_force_census(&ring.inner, max_deg)
        .map_err(err)?
        .counts)
}

/// Matrix-route census over a field, degrees < p^k: {length: count}.
#[pyfunction]
fn matrix_census(ring: &PyRing, k: u32) -> PyResult<BTreeMap<u64, u64>> {
    Ok(census::matrix_census(&ring.inner, k).map_err(err)?.counts)
}

// ---------------------------------------------------------------------
// series constructions
// ---------------------------------------------------------------------

/// The unique condensed-map periodic point with the given parity vector
/// (elements in the ring's textual syntax).
#[pyfunction]
fn periodic_from_parity(ring: &PyRing, v: Vec<String>) -> PyResult<PySeries> {
    let elems: Result<Vec<_>, _> = v.iter().map(|t| ring.inner.parse_elem(t)).collect();
    Ok(PySeries {
        inner: series::periodic_from_parity(&ring.inner, &elems.map_err(err)?).map_err(err)?,
    })
}

/// The unique full-map periodic point with the given cyclically zero-dense
/// parity vector.
#[pyfunction]
fn periodic_from_cyclic_parity(ring: &PyRing, v: Vec<String>) -> PyResult<PySeries> {
    let elems: Result<Vec<_>, _> = v.iter().map(|t| ring.inner.parse_elem(t)).collect();
    Ok(PySeries {
        inner: series::periodic_from_cyclic_parity(&ring.inner, &elems.map_err(err)?)
            .map_err(err)?,
    })
}

/// (|Omega_n|, cycles of exact length n) over a finite ring.
#[pyfunction]
fn omega_census(ring: &PyRing, n: usize) -> PyResult<(BigUint, Vec<Vec<PySeries>>)> {
    let (count, cycles) = series::omega_census(&ring.inner, n).map_err(err)?;
    Ok((
        count,
        cycles
            .into_iter()
            .map(|c| c.into_iter().map(|f| PySeries { inner: f }).collect())
            .collect(),
    ))
}

// ---------------------------------------------------------------------
// 2-adic constructions
// ---------------------------------------------------------------------

/// The unique condensed-map periodic point with the given parity bits.
#[pyfunction]
fn periodic_from_parity_z2(bits: Vec<u64>) -> PyResult<PyDyadic> {
    Ok(PyDyadic {
        inner: dyadic::periodic_from_parity_z2(&bits).map_err(err)?,
    })
}

/// The unique full-map periodic point with the given cyclically zero-dense
/// bits.
#[pyfunction]
fn periodic_from_cyclic_parity_z2(bits: Vec<u64>) -> PyResult<PyDyadic> {
    Ok(PyDyadic {
        inner: dyadic::periodic_from_cyclic_parity_z2(&bits).map_err(err)?,
    })
}

/// All full-map cycles of exact length n.
#[pyfunction]
fn enumerate_z2_cycles(n: usize) -> PyResult<Vec<Vec<PyDyadic>>> {
    Ok(dyadic::enumerate_z2_cycles(n)
        .map_err(err)?
        .into_iter()
        .map(|c| c.into_iter().map(|f| PyDyadic { inner: f }).collect())
        .collect())
}

/// Number of full-map cycles of exact length n.
#[pyfunction]
fn z2_cycle_count(n: u64) -> PyResult<BigUint> {
    dyadic::z2_cycle_count(n).map_err(err)
}

/// Number of condensed-map cycles of exact length n.
#[pyfunction]
fn condensed_cycle_count(n: u64) -> PyResult<BigUint> {
    dyadic::condensed_cycle_count(n).map_err(err)
}

// ---------------------------------------------------------------------
// verification
// ---------------------------------------------------------------------

/// Run one verification suite; returns
/// {"suite": ..., "passed": ..., "checks": [(name, passed, detail), ...]}.
#[pyfunction]
#[pyo3(signature = (name, seed = 0x5eed))]
fn run_suite<'py>(py: Python<'py>, name: &str, seed: u64) -> PyResult<Bound<'py, PyDict>> {
    let report = verify::run_suite(name, seed).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("suite", report.suite)?;
    out.set_item("passed", report.passed())?;
    out.set_item(
        "checks",
        report
            .checks
            .iter()
            .map(|c| (c.name.clone(), c.passed, c.detail.clone()))
            .collect::<Vec<_>>(),
    )?;
    Ok(out)
}

/// Names of all verification suites.
#[pyfunction]
fn suites() -> Vec<&'static str> {
    verify::SUITES.to_vec()
}

#[pymodule]
fn collatz_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyRing>()?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PySeries>()?;
    m.add_class::<PyDyadic>()?;
    m.add_function(wrap_pyfunction!(vp, m)?)?;
    m.add_function(wrap_pyfunction!(digit_sum, m)?)?;
    m.add_function(wrap_pyfunction!(binom_valuation, m)?)?;
    m.add_function(wrap_pyfunction!(binom_mod_p, m)?)?;
    m.add_function(wrap_pyfunction!(threshold_constant, m)?)?;
    m.add_function(wrap_pyfunction!(divisibility_equivalence, m)?)?;
    m.add_function(wrap_pyfunction!(lucas_like, m)?)?;
    m.add_function(wrap_pyfunction!(z_count, m)?)?;
    m.add_function(wrap_pyfunction!(j_count, m)?)?;
    m.add_function(wrap_pyfunction!(mobius, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_cyclically_zero_dense, m)?)?;
    m.add_function(wrap_pyfunction!(condense, m)?)?;
    m.add_function(wrap_pyfunction!(expand, m)?)?;
    m.add_function(wrap_pyfunction!(is_cyclically_zero_dense, m)?)?;
    m.add_function(wrap_pyfunction!(count_cycles_formula, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_census, m)?)?;
    m.add_function(wrap_pyfunction!(matrix_census, m)?)?;
    m.add_function(wrap_pyfunction!(periodic_from_parity, m)?)?;
    m.add_function(wrap_pyfunction!(periodic_from_cyclic_parity, m)?)?;
    m.add_function(wrap_pyfunction!(omega_census, m)?)?;
    m.add_function(wrap_pyfunction!(periodic_from_parity_z2, m)?)?;
    m.add_function(wrap_pyfunction!(periodic_from_cyclic_parity_z2, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_z2_cycles, m)?)?;
    m.add_function(wrap_pyfunction!(z2_cycle_count, m)?)?;
    m.add_function(wrap_pyfunction!(condensed_cycle_count, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(suites, m)?)?;
    Ok(())
}
