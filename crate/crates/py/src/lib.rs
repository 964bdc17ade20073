//! Python bindings for `disconnected_core`.

use disconnected_core::abgroup::{AbHom, FGAbelianGroup};
use disconnected_core::autbrd::diagram_automorphisms;
use disconnected_core::cli::{self, Format, Options};
use disconnected_core::cohomology::{cohomology_group, GammaModule, DEFAULT_COHOMOLOGY_BUDGET};
use disconnected_core::exactlin::{smith_normal_form as snf, IntMatrix};
use disconnected_core::grouptable;
use disconnected_core::rootdatum::{BasedRootDatum, RootDatum as CoreRootDatum, DEFAULT_WEYL_CAP};
use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn err(e: disconnected_core::Error) -> PyErr {
    match e {
        disconnected_core::Error::BudgetExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn matrix(rows: &[Vec<BigInt>]) -> PyResult<IntMatrix> {
    let cols = rows.first().map_or(0, Vec::len);
    IntMatrix::from_rows(cols, rows.to_vec()).map_err(err)
}

/// A based root datum: roots and coroots as integer vectors in a lattice of rank `rank`.
#[pyclass(name = "RootDatum", module = "disconnected")]
struct PyRootDatum {
    inner: BasedRootDatum,
}

#[pymethods]
impl PyRootDatum {
    #[new]
    #[pyo3(signature = (rank, roots, coroots, simple=None))]
    fn new(rank: usize, roots: Vec<Vec<BigInt>>, coroots: Vec<Vec<BigInt>>, simple: Option<Vec<usize>>) -> PyResult<Self> {
        let datum = CoreRootDatum::new(rank, roots, coroots).checked().map_err(err)?;
        let inner = match simple {
            Some(s) => BasedRootDatum::new(datum, s),
            None => BasedRootDatum::with_generic_base(datum),
        }
        .map_err(err)?;
        Ok(Self { inner })
    }

    /// Root datum of the given Cartan matrix, simply connected unless `adjoint`.
    #[staticmethod]
    #[pyo3(signature = (cartan, adjoint=false))]
    fn from_cartan(cartan: Vec<Vec<i64>>, adjoint: bool) -> PyResult<Self> {
        let rows: Vec<&[i64]> = cartan.iter().map(Vec::as_slice).collect();
        Ok(Self {
            inner: BasedRootDatum::from_cartan(&rows, adjoint).map_err(err)?,
        })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.datum().rank()
    }

    #[getter]
    fn roots(&self) -> Vec<Vec<BigInt>> {
        self.inner.datum().roots().to_vec()
    }

    #[getter]
    fn simple(&self) -> Vec<usize> {
        self.inner.simple_indices().to_vec()
    }

    fn cartan_matrix(&self) -> Vec<Vec<BigInt>> {
        self.inner.cartan_matrix().row_vecs()
    }

    #[pyo3(signature = (cap=DEFAULT_WEYL_CAP))]
    fn weyl_order(&self, cap: usize) -> PyResult<usize> {
        Ok(self.inner.weyl_generate(cap).map_err(err)?.order())
    }

    /// `(torus_rank, invariant_factors)` of the center.
    fn center(&self) -> (usize, Vec<BigInt>) {
        let z = self.inner.datum().center();
        (z.group.torus_rank(), z.group.finite_part().invariant_factors().to_vec())
    }

    /// Matrices of the based-datum automorphisms, one per lifted diagram symmetry.
    fn diagram_automorphisms(&self) -> PyResult<Vec<Vec<Vec<BigInt>>>> {
        let a = diagram_automorphisms(&self.inner).map_err(err)?;
        Ok(a.lifted.iter().map(|x| x.matrix().row_vecs()).collect())
    }

    fn __repr__(&self) -> String {
        let d = self.inner.datum();
        format!("RootDatum(rank={}, roots={})", d.rank(), d.root_count())
    }
}

/// A finite group given by its multiplication table.
#[pyclass(name = "FiniteGroup", module = "disconnected")]
struct PyFiniteGroup {
    inner: grouptable::FiniteGroup,
}

#[pymethods]
impl PyFiniteGroup {
    #[staticmethod]
    fn cyclic(n: usize) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("order must be positive"));
        }
        Ok(Self {
            inner: grouptable::FiniteGroup::cyclic(n),
        })
    }

    #[staticmethod]
    fn symmetric(k: usize) -> Self {
        Self {
            inner: grouptable::FiniteGroup::symmetric(k).0,
        }
    }

    #[staticmethod]
    #[pyo3(signature = (degree, generators, cap=grouptable::DEFAULT_GROUP_CAP))]
    fn from_permutations(degree: usize, generators: Vec<Vec<usize>>, cap: usize) -> PyResult<Self> {
        let (inner, _) = grouptable::FiniteGroup::from_generators(degree, &generators, cap).map_err(err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (table, generators=None))]
    fn from_table(table: Vec<Vec<usize>>, generators: Option<Vec<usize>>) -> PyResult<Self> {
        let gens = generators.unwrap_or_default();
        let inner = grouptable::FiniteGroup::from_table(&table, gens).map_err(err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn generators(&self) -> Vec<usize> {
        self.inner.generators().to_vec()
    }

    fn table(&self) -> Vec<Vec<usize>> {
        self.inner.table_rows()
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        if a >= self.inner.order() || b >= self.inner.order() {
            return Err(PyValueError::new_err("element out of range"));
        }
        Ok(self.inner.mul(a, b))
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn center(&self) -> Vec<usize> {
        self.inner.center()
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("FiniteGroup(order={})", self.inner.order())
    }
}

/// Diagonal of the Smith normal form.
#[pyfunction]
fn smith_normal_form(m: Vec<Vec<BigInt>>) -> PyResult<Vec<BigInt>> {
    Ok(snf(&matrix(&m)?).diagonal())
}

/// Invariant factors of `Hᵖ(Γ, ⊕ ℤ/mᵢ)`; `action` gives one matrix on the
/// summands per generator of `group`, defaulting to the trivial action.
#[pyfunction]
#[pyo3(signature = (group, moduli, p, action=None, budget=DEFAULT_COHOMOLOGY_BUDGET))]
fn cohomology(
    group: &PyFiniteGroup,
    moduli: Vec<BigInt>,
    p: usize,
    action: Option<Vec<Vec<Vec<BigInt>>>>,
    budget: usize,
) -> PyResult<Vec<BigInt>> {
    let coeff = FGAbelianGroup::from_cyclic_orders(&moduli);
    let gamma = group.inner.clone();
    let module = match action {
        None => GammaModule::trivial(gamma, coeff),
        Some(mats) => {
            let images = mats
                .iter()
                .map(|m| {
                    let m = matrix(m)?;
                    let m = match coeff.ambient_basis() {
                        Some(b) => b
                            .from_ambient
                            .checked_mul(&m)
                            .and_then(|x| x.checked_mul(&b.to_ambient))
                            .map_err(err)?,
                        None => m,
                    };
                    AbHom::new(coeff.clone(), coeff.clone(), m).map_err(err)
                })
                .collect::<PyResult<Vec<_>>>()?;
            GammaModule::from_generator_action(gamma, coeff, images)
        }
    }
    .map_err(err)?;
    let h = cohomology_group(&module, p, budget).map_err(err)?;
    Ok(h.group().invariant_factors().to_vec())
}

/// Runs a CLI command on a problem document and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (problem, command="classify", seed=0))]
fn run_json(problem: &str, command: &str, seed: u64) -> PyResult<String> {
    let command = match command {
        "classify" => cli::Command::Classify,
        "weyl" => cli::Command::Weyl,
        "dynkin" => cli::Command::Dynkin,
        "center" => cli::Command::Center,
        "check" => cli::Command::Check,
        other => return Err(PyValueError::new_err(format!("unknown command {other:?}"))),
    };
    let (out, code) = cli::execute(command, problem, Some(Format::Json), &Options::default(), seed);
    match code {
        0 => Ok(out),
        2 => Err(PyRuntimeError::new_err(out)),
        _ => Err(PyValueError::new_err(out)),
    }
}

#[pymodule]
fn disconnected(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootDatum>()?;
    m.add_class::<PyFiniteGroup>()?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(run_json, m)?)?;
    Ok(())
}
