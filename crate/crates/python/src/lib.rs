//! Python bindings: abelian groups, permutation groups, lattices with their
//! cohomology and flasque resolutions, and every CLI command on JSON input.

use std::sync::Arc;

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use shagraph::abelian::{smith_normal_form, IntegerMatrix, PresentedGroup};
use shagraph::cli::{execute, fixtures::fixtures as bundled, Command};
use shagraph::glattice::{
    coflasque_report, flasque_report, flasque_resolution, h1, tate_h0, tate_h_minus1, FiniteGroup, GLattice, Subgroup,
};
use shagraph::Error;

create_exception!(shagraph_py, ShagraphError, PyException);
create_exception!(shagraph_py, VerificationError, ShagraphError);
create_exception!(shagraph_py, LimitExceeded, ShagraphError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Verification(_) => VerificationError::new_err(e.to_string()),
        Error::LimitExceeded(_) => LimitExceeded::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn matrix(rows: Vec<Vec<BigInt>>, cols: usize) -> PyResult<IntegerMatrix> {
    if rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err(format!("every row must have {cols} entries")));
    }
    Ok(IntegerMatrix::from_rows(cols, &rows))
}

fn square(rows: Vec<Vec<BigInt>>) -> PyResult<IntegerMatrix> {
    let n = rows.len();
    matrix(rows, n)
}

/// A finitely generated abelian group `Z^n / <relations>`.
#[pyclass(name = "AbelianGroup", frozen)]
struct PyAbelianGroup {
    inner: PresentedGroup,
}

#[pymethods]
impl PyAbelianGroup {
    /// `relations` is a list of rows of length `generators`.
    #[new]
    #[pyo3(signature = (generators, relations=Vec::new()))]
    fn new(generators: usize, relations: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let inner = PresentedGroup::new(generators, matrix(relations, generators)?).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (free, torsion=Vec::new()))]
    fn from_factors(free: usize, torsion: Vec<BigInt>) -> Self {
        Self {
            inner: PresentedGroup::from_factors(free, torsion),
        }
    }

    /// Invariant factors as a string such as `"Z^1 x Z/2 x Z/6"`.
    fn invariants(&self) -> String {
        self.inner.canonical_form().to_string()
    }

    fn free_rank(&self) -> usize {
        self.inner.canonical_form().free_rank
    }

    fn torsion(&self) -> Vec<BigInt> {
        self.inner.canonical_form().torsion
    }

    /// `None` for infinite groups.
    fn order(&self) -> Option<BigInt> {
        self.inner.order()
    }

    fn is_trivial(&self) -> bool {
        self.inner.is_zero_group()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner.canonical_form() == other.inner.canonical_form()
    }

    fn __repr__(&self) -> String {
        format!("AbelianGroup({})", self.invariants())
    }
}

/// Smith normal form of an integer matrix: a dict with `d`, `u`, `v` (so that
/// `u * m * v = d`), `diagonal` and `rank`.
#[pyfunction]
fn snf(py: Python<'_>, rows: Vec<Vec<BigInt>>) -> PyResult<Bound<'_, PyDict>> {
    let cols = rows.first().map_or(0, Vec::len);
    let s = smith_normal_form(&matrix(rows, cols)?);
    let out = PyDict::new(py);
    out.set_item("d", s.d.to_rows())?;
    out.set_item("u", s.u.to_rows())?;
    out.set_item("v", s.v.to_rows())?;
    out.set_item("diagonal", s.diagonal())?;
    out.set_item("rank", s.rank)?;
    Ok(out)
}

/// A finite permutation group.
#[pyclass(name = "FiniteGroup", frozen)]
struct PyFiniteGroup {
    inner: Arc<FiniteGroup>,
}

#[pymethods]
impl PyFiniteGroup {
    /// Generated by permutations of `0..degree`, each given as its image list.
    #[new]
    fn new(degree: usize, generators: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(FiniteGroup::new(degree, generators).map_err(to_py)?.into())
    }

    #[staticmethod]
    fn trivial() -> Self {
        FiniteGroup::trivial().into()
    }

    #[staticmethod]
    fn cyclic(n: usize) -> PyResult<Self> {
        Ok(FiniteGroup::cyclic(n).map_err(to_py)?.into())
    }

    #[staticmethod]
    fn klein_four() -> Self {
        FiniteGroup::klein_four().into()
    }

    #[staticmethod]
    fn symmetric(n: usize) -> PyResult<Self> {
        Ok(FiniteGroup::symmetric(n).map_err(to_py)?.into())
    }

    #[staticmethod]
    fn dihedral(n: usize) -> PyResult<Self> {
        Ok(FiniteGroup::dihedral(n).map_err(to_py)?.into())
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn whole(&self) -> PySubgroup {
        self.wrap(self.inner.whole())
    }

    fn trivial_subgroup(&self) -> PySubgroup {
        self.wrap(self.inner.trivial_subgroup())
    }

    fn subgroups(&self) -> Vec<PySubgroup> {
        self.inner.subgroups().into_iter().map(|h| self.wrap(h)).collect()
    }

    /// One subgroup from each conjugacy class.
    fn class_representatives(&self) -> Vec<PySubgroup> {
        self.inner
            .subgroup_class_representatives()
            .into_iter()
            .map(|h| self.wrap(h))
            .collect()
    }

    /// The subgroup generated by the given permutations.
    fn generate(&self, perms: Vec<Vec<usize>>) -> PyResult<PySubgroup> {
        Ok(self.wrap(self.inner.subgroup_from_perms(&perms).map_err(to_py)?))
    }

    fn __repr__(&self) -> String {
        format!("FiniteGroup(order={})", self.inner.order())
    }
}

impl PyFiniteGroup {
    fn wrap(&self, inner: Subgroup) -> PySubgroup {
        PySubgroup {
            group: self.inner.clone(),
            inner,
        }
    }
}

impl From<FiniteGroup> for PyFiniteGroup {
    fn from(g: FiniteGroup) -> Self {
        Self { inner: Arc::new(g) }
    }
}

#[pyclass(name = "Subgroup", frozen)]
struct PySubgroup {
    group: Arc<FiniteGroup>,
    inner: Subgroup,
}

#[pymethods]
impl PySubgroup {
    /// Indices of the elements in the ambient group's enumeration.
    fn elements(&self) -> Vec<usize> {
        self.inner.elements().to_vec()
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn is_normal(&self) -> bool {
        self.inner.is_normal_in(&self.group)
    }

    fn is_subgroup_of(&self, other: &PySubgroup) -> bool {
        self.inner.is_subgroup_of(&other.inner)
    }

    fn __repr__(&self) -> String {
        format!("Subgroup(order={})", self.inner.order())
    }
}

/// A lattice with an action of a finite group.
#[pyclass(name = "Lattice", frozen)]
struct PyLattice {
    inner: GLattice,
}

#[pymethods]
impl PyLattice {
    /// One square integer matrix per generator of `group`.
    #[new]
    fn new(group: &PyFiniteGroup, generator_action: Vec<Vec<Vec<BigInt>>>) -> PyResult<Self> {
        let rank = generator_action.first().map_or(0, Vec::len);
        let actions = generator_action.into_iter().map(square).collect::<PyResult<Vec<_>>>()?;
        let inner = GLattice::from_generator_action(group.inner.clone(), rank, actions).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn trivial(group: &PyFiniteGroup, rank: usize) -> Self {
        GLattice::trivial(group.inner.clone(), rank).into()
    }

    /// The permutation lattice `Z[G/H]`.
    #[staticmethod]
    fn permutation(group: &PyFiniteGroup, h: &PySubgroup) -> Self {
        GLattice::permutation(group.inner.clone(), &h.inner).into()
    }

    #[staticmethod]
    fn regular(group: &PyFiniteGroup) -> Self {
        GLattice::regular(group.inner.clone()).into()
    }

    /// The character lattice of the norm-one torus.
    #[staticmethod]
    fn norm_one(group: &PyFiniteGroup) -> Self {
        GLattice::norm_one(group.inner.clone()).into()
    }

    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn dual(&self) -> Self {
        self.inner.dual().into()
    }

    /// The matrix by which group element `g` acts.
    fn action(&self, g: usize) -> PyResult<Vec<Vec<BigInt>>> {
        if g >= self.inner.group().order() {
            return Err(PyValueError::new_err(format!("no group element {g}")));
        }
        Ok(self.inner.action(g).to_rows())
    }

    /// `(Ĥ^-1(H, M), Ĥ^0(H, M))` as invariant-factor strings.
    fn tate(&self, h: &PySubgroup) -> (String, String) {
        (
            tate_h_minus1(&h.inner, &self.inner).to_string(),
            tate_h0(&h.inner, &self.inner).to_string(),
        )
    }

    fn h1(&self, h: &PySubgroup) -> PyResult<String> {
        Ok(h1(&h.inner, &self.inner).map_err(to_py)?.to_string())
    }

    fn is_flasque(&self) -> PyResult<bool> {
        Ok(flasque_report(&self.inner).map_err(to_py)?.holds)
    }

    fn is_coflasque(&self) -> PyResult<bool> {
        Ok(coflasque_report(&self.inner).map_err(to_py)?.holds)
    }

    /// `0 -> self -> Q -> S -> 0` with `Q` a permutation lattice and `S`
    /// flasque. Returns a dict with `permutation`, `flasque`, `summands`
    /// (list of `(subgroup, multiplicity)`), `inject` and `surject`.
    fn flasque_resolution<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let res = flasque_resolution(&self.inner).map_err(to_py)?;
        let group = self.inner.group().clone();
        let summands: Vec<(PySubgroup, usize)> = res
            .permutation_summands
            .into_iter()
            .map(|(inner, k)| {
                (
                    PySubgroup {
                        group: group.clone(),
                        inner,
                    },
                    k,
                )
            })
            .collect();
        let out = PyDict::new(py);
        out.set_item("permutation", PyLattice::from(res.sequence.mid))?;
        out.set_item("flasque", PyLattice::from(res.sequence.quot))?;
        out.set_item("summands", summands)?;
        out.set_item("inject", res.sequence.inject.to_rows())?;
        out.set_item("surject", res.sequence.surject.to_rows())?;
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!("Lattice(rank={}, group order={})", self.inner.rank(), self.inner.group().order())
    }
}

impl From<GLattice> for PyLattice {
    fn from(inner: GLattice) -> Self {
        Self { inner }
    }
}

/// Runs a CLI command on a JSON document and returns the report as JSON.
/// Failures are reported in the `status` and `failure` fields, never raised.
#[pyfunction]
#[pyo3(signature = (command, input, parallel=None))]
fn run_command(py: Python<'_>, command: &str, input: &str, parallel: Option<usize>) -> PyResult<String> {
    let command: Command = command.parse().map_err(to_py)?;
    let input = input.as_bytes().to_vec();
    let report = py.detach(move || execute(command, &input, parallel));
    Ok(report.to_json())
}

/// Bundled examples as `(name, command, input JSON)` triples.
#[pyfunction]
fn fixtures() -> Vec<(String, String, String)> {
    bundled()
        .into_iter()
        .map(|f| {
            let input = String::from_utf8(f.input_bytes()).expect("fixtures are UTF-8");
            (f.name.to_string(), f.command.to_string(), input)
        })
        .collect()
}

#[pymodule]
fn shagraph_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("ShagraphError", py.get_type::<ShagraphError>())?;
    m.add("VerificationError", py.get_type::<VerificationError>())?;
    m.add("LimitExceeded", py.get_type::<LimitExceeded>())?;
    m.add_class::<PyAbelianGroup>()?;
    m.add_class::<PyFiniteGroup>()?;
    m.add_class::<PySubgroup>()?;
    m.add_class::<PyLattice>()?;
    m.add_function(wrap_pyfunction!(snf, m)?)?;
    m.add_function(wrap_pyfunction!(run_command, m)?)?;
    m.add_function(wrap_pyfunction!(fixtures, m)?)?;
    Ok(())
}
