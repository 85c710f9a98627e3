//! Python bindings: geometry counts, exact bounds, code construction and
//! decoding. Rationals come back as `fractions.Fraction`.

use multiset_codes::bounds::{self, BoundReport};
use multiset_codes::codes::{
    best_syndrome_class, delete_channel, enumerate_code, CodeFile, CodeInstance, CodeParams,
    Decoder,
};
use multiset_codes::combinatorics::format_rational;
use multiset_codes::geometry;
use multiset_codes::gf::Gf;
use multiset_codes::poly::Poly;
use multiset_codes::ring::Variant;
use multiset_codes::{Error, Multiset, Rational};
use pyo3::create_exception;
use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(multiset_codes_py, DecodingError, PyValueError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Uncorrectable(_) => DecodingError::new_err(e.to_string()),
        Error::Overflow(_) => PyOverflowError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for multiset_codes::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn fraction<'py>(py: Python<'py>, x: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((format_rational(x),))
}

/// |B(center, r)|, center given as a multiplicity vector.
#[pyfunction]
fn ball_size(center: Vec<u32>, r: u64) -> PyResult<u128> {
    geometry::ball_size_gf(&Multiset::new(center), r).py()
}

/// Ball size by scanning the whole space.
#[pyfunction]
fn ball_brute(center: Vec<u32>, r: u64) -> PyResult<u128> {
    geometry::ball_brute(&Multiset::new(center), r).py()
}

#[pyfunction]
fn distance(a: Vec<u32>, b: Vec<u32>) -> PyResult<u64> {
    geometry::distance(&Multiset::new(a), &Multiset::new(b)).py()
}

#[pyfunction]
#[pyo3(signature = (q, r_plus, r_minus=None))]
fn ideal_set_size(q: u64, r_plus: u64, r_minus: Option<u64>) -> PyResult<u128> {
    geometry::ideal_set_size(q, r_plus, r_minus.unwrap_or(r_plus)).py()
}

#[pyfunction]
fn c_coeff(q: u64, m: u64) -> PyResult<u128> {
    geometry::c_coeff(q, m).py()
}

#[pyfunction]
fn pair_count(n: u64, q: u64, m: u64) -> PyResult<u128> {
    geometry::pair_count(n, q, m).py()
}

#[pyfunction]
fn avg_ball<'py>(py: Python<'py>, n: u64, q: u64, r: u64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &geometry::avg_ball(n, q, r).py()?)
}

#[pyfunction]
fn sphere_packing<'py>(py: Python<'py>, n: u64, q: u64, t: u64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &bounds::sphere_packing(n, q, t).py()?)
}

#[pyfunction]
fn kt_anticode<'py>(py: Python<'py>, n: u64, q: u64, t: u64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &bounds::kt_anticode(n, q, t).py()?)
}

#[pyfunction]
fn gv_lower<'py>(py: Python<'py>, n: u64, q: u64, t: u64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &bounds::gv_lower(n, q, t).py()?)
}

/// Largest code with minimum distance `d` (exhaustive; small spaces only).
#[pyfunction]
fn exact_max_code(n: u64, q: u64, d: u64) -> PyResult<u64> {
    bounds::exact_max_code_distance(n, q, d).py()
}

/// All bounds for minimum distance `d`, as a dict.
#[pyfunction]
fn bound_report<'py>(py: Python<'py>, n: u64, q: u64, d: u64) -> PyResult<Bound<'py, PyDict>> {
    let r = BoundReport::for_distance(n, q, d).py()?;
    let out = PyDict::new(py);
    out.set_item("n", n)?;
    out.set_item("q", q)?;
    out.set_item("d", d)?;
    out.set_item("t", r.t)?;
    out.set_item("space", r.space)?;
    out.set_item("sphere_packing", fraction(py, &r.sphere_packing)?)?;
    out.set_item("sphere_packing_vacuous", r.sphere_packing_vacuous)?;
    match &r.kt_anticode {
        Some(kt) => out.set_item("kt_anticode", fraction(py, kt)?)?,
        None => out.set_item("kt_anticode", py.None())?,
    }
    out.set_item("kt_anticode_vacuous", r.kt_anticode_vacuous)?;
    out.set_item("gv_lower", fraction(py, &r.gv_lower)?)?;
    out.set_item("consistent", r.is_consistent())?;
    Ok(out)
}

/// Removes `r` elements of the multiset uniformly at random.
#[pyfunction]
#[pyo3(signature = (word, r, seed=0))]
fn delete(word: Vec<u32>, r: u64, seed: u64) -> PyResult<Vec<u32>> {
    Ok(delete_channel(&Multiset::new(word), r, seed).py()?.counts().to_vec())
}

/// One syndrome class of the projective or affine construction, with its
/// decoder.
#[pyclass(module = "multiset_codes_py", frozen)]
struct Code {
    decoder: Decoder,
}

impl Code {
    fn instance(&self) -> &CodeInstance {
        self.decoder.code()
    }

    fn from_instance(code: CodeInstance) -> PyResult<Self> {
        Ok(Code {
            decoder: Decoder::new(code).py()?,
        })
    }

    fn word(&self, word: &Bound<'_, PyAny>) -> PyResult<Multiset> {
        let p = self.instance().params();
        if let Ok(text) = word.extract::<String>() {
            return p.parse_multiset(&text).py();
        }
        let counts: Vec<u32> = word.extract()?;
        if counts.len() != p.q() {
            return Err(PyValueError::new_err(format!(
                "expected {} multiplicities, got {}",
                p.q(),
                counts.len()
            )));
        }
        Ok(Multiset::new(counts))
    }
}

#[pymethods]
impl Code {
    #[new]
    #[pyo3(signature = (variant, s, t, n, f=None, syndrome=None))]
    fn new(
        variant: &str,
        s: u32,
        t: u32,
        n: u32,
        f: Option<Vec<u32>>,
        syndrome: Option<&str>,
    ) -> PyResult<Self> {
        let variant: Variant = variant.parse().py()?;
        let field = Gf::from_order(s).py()?;
        let params = match f {
            Some(f) => {
                let f = Poly::from_labels(&field, f).py()?;
                CodeParams::new(variant, field, f, n, t).py()?
            }
            None => CodeParams::with_auto_modulus(variant, field, n, t).py()?,
        };
        let code = match syndrome {
            Some(text) => {
                let c = params.group().parse_element(text).py()?;
                enumerate_code(&params, &c).py()?
            }
            None => best_syndrome_class(&params).py()?.1,
        };
        Code::from_instance(code)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Code::from_instance(CodeFile::from_json(text).py()?.to_instance().py()?)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PyValueError::new_err(format!("cannot read {path}: {e}")))?;
        Code::from_json(&text)
    }

    fn to_json(&self) -> String {
        CodeFile::from_instance(self.instance()).to_json()
    }

    fn save(&self, path: &str) -> PyResult<()> {
        std::fs::write(path, self.to_json() + "\n")
            .map_err(|e| PyValueError::new_err(format!("cannot write {path}: {e}")))
    }

    #[getter]
    fn variant(&self) -> String {
        self.instance().params().variant().to_string()
    }

    #[getter]
    fn n(&self) -> u32 {
        self.instance().params().n()
    }

    #[getter]
    fn t(&self) -> u32 {
        self.instance().params().t()
    }

    #[getter]
    fn q(&self) -> usize {
        self.instance().params().q()
    }

    #[getter]
    fn modulus(&self) -> Vec<u32> {
        self.instance().params().modulus().coeffs().to_vec()
    }

    #[getter]
    fn syndrome(&self) -> String {
        self.instance().syndrome().to_string()
    }

    #[getter]
    fn group_order(&self) -> PyResult<u128> {
        self.instance().params().group_order().py()
    }

    /// Codewords as multiplicity vectors, in enumeration order.
    #[getter]
    fn codewords(&self) -> Vec<Vec<u32>> {
        self.instance()
            .codewords()
            .iter()
            .map(|m| m.counts().to_vec())
            .collect()
    }

    fn min_distance(&self) -> Option<u64> {
        self.instance().min_distance()
    }

    /// Symbol notation, e.g. `{0,1,inf}`.
    fn format(&self, word: &Bound<'_, PyAny>) -> PyResult<String> {
        Ok(self.instance().params().format_multiset(&self.word(word)?))
    }

    /// Returns `(codeword, deleted)` as multiplicity vectors. Accepts a
    /// multiplicity list or symbol text.
    fn decode(&self, received: &Bound<'_, PyAny>) -> PyResult<(Vec<u32>, Vec<u32>)> {
        let d = self.decoder.decode(&self.word(received)?).py()?;
        Ok((d.codeword.counts().to_vec(), d.error.counts().to_vec()))
    }

    fn __len__(&self) -> usize {
        self.instance().len()
    }

    fn __repr__(&self) -> String {
        let p = self.instance().params();
        format!(
            "Code(variant={}, s={}, t={}, n={}, syndrome={}, size={})",
            p.variant(),
            p.s(),
            p.t(),
            p.n(),
            self.instance().syndrome(),
            self.instance().len()
        )
    }
}

#[pymodule]
fn multiset_codes_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DecodingError", m.py().get_type::<DecodingError>())?;
    m.add_class::<Code>()?;
    m.add_function(wrap_pyfunction!(ball_size, m)?)?;
    m.add_function(wrap_pyfunction!(ball_brute, m)?)?;
    m.add_function(wrap_pyfunction!(distance, m)?)?;
    m.add_function(wrap_pyfunction!(ideal_set_size, m)?)?;
    m.add_function(wrap_pyfunction!(c_coeff, m)?)?;
    m.add_function(wrap_pyfunction!(pair_count, m)?)?;
    m.add_function(wrap_pyfunction!(avg_ball, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_packing, m)?)?;
    m.add_function(wrap_pyfunction!(kt_anticode, m)?)?;
    m.add_function(wrap_pyfunction!(gv_lower, m)?)?;
    m.add_function(wrap_pyfunction!(exact_max_code, m)?)?;
    m.add_function(wrap_pyfunction!(bound_report, m)?)?;
    m.add_function(wrap_pyfunction!(delete, m)?)?;
    Ok(())
}
