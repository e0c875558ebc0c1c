//! Python bindings: `import degree_trees_py`.
//!
//! Degree constraints are accepted either as a spec string (`"0:4,1:1,2:1,3:1"`
//! or `"0,0,0,0,1,2,3"`) or as a list of outdegrees. Prefix codes cross the
//! boundary as `list[int]`.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use degree_trees::cli::parse_degree_spec;
use degree_trees::oracle::{self, DEFAULT_EXHAUSTIVE_BOUND};
use degree_trees::{
    codec, degree, sampler, stats, DegreeMultiset, Error, ExpressionStyle, OperatorAlphabet,
    SeededRandom, TreeCount,
};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Invariant(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

#[derive(FromPyObject)]
enum Degrees {
    Spec(String),
    List(Vec<usize>),
}

impl Degrees {
    fn multiset(&self) -> PyResult<DegreeMultiset> {
        match self {
            Degrees::Spec(s) => parse_degree_spec(s),
            Degrees::List(v) => DegreeMultiset::from_degrees(v),
        }
        .map_err(to_py)
    }
}

/// Seeded tree sampler. Successive calls continue one random stream.
#[pyclass]
struct Sampler {
    rng: SeededRandom,
}

#[pymethods]
impl Sampler {
    #[new]
    #[pyo3(signature = (seed=None))]
    fn new(seed: Option<u64>) -> Self {
        let seed = seed.unwrap_or_else(SeededRandom::entropy_seed);
        Sampler {
            rng: SeededRandom::new(seed),
        }
    }

    #[getter]
    fn seed(&self) -> u64 {
        use degree_trees::RandomSource;
        self.rng.seed().expect("seeded source")
    }

    /// Uniformly random prefix code using exactly the given degrees.
    fn sample(&mut self, degrees: Degrees) -> PyResult<Vec<usize>> {
        let m = degrees.multiset()?;
        sampler::sample_tree(&m, &mut self.rng)
            .map(|s| s.into_vec())
            .map_err(to_py)
    }

    #[pyo3(signature = (degrees, count))]
    fn sample_many(&mut self, degrees: Degrees, count: usize) -> PyResult<Vec<Vec<usize>>> {
        let m = degrees.multiset()?;
        (0..count)
            .map(|_| {
                sampler::sample_tree(&m, &mut self.rng)
                    .map(|s| s.into_vec())
                    .map_err(to_py)
            })
            .collect()
    }
}

#[pyfunction]
fn charge(code: Vec<usize>) -> PyResult<i64> {
    degree::charge(&code).map(|c| c.value()).map_err(to_py)
}

#[pyfunction]
fn prefix_charges(code: Vec<usize>) -> PyResult<Vec<i64>> {
    degree::prefix_charges(&code)
        .map(|v| v.into_iter().map(|c| c.value()).collect())
        .map_err(to_py)
}

#[pyfunction]
fn is_well_formed(code: Vec<usize>) -> bool {
    degree::is_well_formed(&code)
}

#[pyfunction]
fn is_constructible(degrees: Degrees) -> PyResult<bool> {
    Ok(degrees.multiset()?.is_constructible())
}

/// Returns `(complete_prefix_length, complete_expression_count, tail_charge)`.
#[pyfunction]
fn decompose(code: Vec<usize>) -> PyResult<(usize, usize, i64)> {
    let d = degree::decompose(&code).map_err(to_py)?;
    Ok((
        d.complete_prefix_length,
        d.complete_expression_count,
        d.tail_charge.value(),
    ))
}

#[pyfunction]
fn find_rotation_point(code: Vec<usize>) -> PyResult<usize> {
    sampler::find_rotation_point(&code).map_err(to_py)
}

#[pyfunction]
fn rotate(code: Vec<usize>, k: usize) -> PyResult<Vec<usize>> {
    sampler::rotate(&code, k)
        .map(|s| s.into_vec())
        .map_err(to_py)
}

#[pyfunction]
fn sample_tree(degrees: Degrees, seed: u64) -> PyResult<Vec<usize>> {
    let m = degrees.multiset()?;
    sampler::sample_tree(&m, &mut SeededRandom::new(seed))
        .map(|s| s.into_vec())
        .map_err(to_py)
}

#[pyfunction]
fn count_trees(degrees: Degrees) -> PyResult<TreeCount> {
    oracle::count_trees(&degrees.multiset()?).map_err(to_py)
}

#[pyfunction]
fn catalan(n: usize) -> TreeCount {
    oracle::catalan(n)
}

#[pyfunction]
#[pyo3(signature = (degrees, max_nodes=DEFAULT_EXHAUSTIVE_BOUND))]
fn enumerate_trees(degrees: Degrees, max_nodes: usize) -> PyResult<Vec<Vec<usize>>> {
    let set = oracle::enumerate_trees_bounded(&degrees.multiset()?, max_nodes).map_err(to_py)?;
    Ok(set.into_iter().map(|s| s.into_vec()).collect())
}

#[pyfunction]
fn to_sexpr(code: Vec<usize>) -> PyResult<String> {
    codec::decode_prefix(&code)
        .map(|t| codec::to_sexpr(&t))
        .map_err(to_py)
}

#[pyfunction]
fn to_dot(code: Vec<usize>) -> PyResult<String> {
    codec::decode_prefix(&code)
        .map(|t| codec::to_dot(&t))
        .map_err(to_py)
}

#[pyfunction]
fn to_json(code: Vec<usize>) -> PyResult<String> {
    codec::decode_prefix(&code)
        .map(|t| codec::to_json(&t))
        .map_err(to_py)
}

/// Renders a prefix code as an expression. `alphabet` maps arity to symbols;
/// `style` is `"infix"` or `"prefix"`.
#[pyfunction]
#[pyo3(signature = (code, alphabet, seed, style="infix"))]
fn render_expression(
    code: Vec<usize>,
    alphabet: BTreeMap<usize, Vec<String>>,
    seed: u64,
    style: &str,
) -> PyResult<String> {
    let style = match style {
        "infix" => ExpressionStyle::Infix,
        "prefix" => ExpressionStyle::Prefix,
        other => return Err(PyValueError::new_err(format!("unknown style {other:?}"))),
    };
    let alphabet = OperatorAlphabet::new(alphabet).map_err(to_py)?;
    let tree = codec::decode_prefix(&code).map_err(to_py)?;
    codec::render_expression(&tree, &alphabet, &mut SeededRandom::new(seed), style).map_err(to_py)
}

/// Frequency report as a JSON string.
#[pyfunction]
#[pyo3(signature = (degrees, samples, seed, max_nodes=DEFAULT_EXHAUSTIVE_BOUND))]
fn uniformity_report(
    degrees: Degrees,
    samples: u64,
    seed: u64,
    max_nodes: usize,
) -> PyResult<String> {
    let m = degrees.multiset()?;
    stats::uniformity_report(&m, samples, max_nodes, &mut SeededRandom::new(seed))
        .map(|r| r.to_json())
        .map_err(to_py)
}

#[pymodule]
fn degree_trees_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Sampler>()?;
    m.add_function(wrap_pyfunction!(charge, m)?)?;
    m.add_function(wrap_pyfunction!(prefix_charges, m)?)?;
    m.add_function(wrap_pyfunction!(is_well_formed, m)?)?;
    m.add_function(wrap_pyfunction!(is_constructible, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(find_rotation_point, m)?)?;
    m.add_function(wrap_pyfunction!(rotate, m)?)?;
    m.add_function(wrap_pyfunction!(sample_tree, m)?)?;
    m.add_function(wrap_pyfunction!(count_trees, m)?)?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_trees, m)?)?;
    m.add_function(wrap_pyfunction!(to_sexpr, m)?)?;
    m.add_function(wrap_pyfunction!(to_dot, m)?)?;
    m.add_function(wrap_pyfunction!(to_json, m)?)?;
    m.add_function(wrap_pyfunction!(render_expression, m)?)?;
    m.add_function(wrap_pyfunction!(uniformity_report, m)?)?;
    Ok(())
}
