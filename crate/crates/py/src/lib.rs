//! Python bindings: load descriptions and run report commands.

use std::path::PathBuf;

use fcalg::description::{describe, load_description, parse_description, Description};
use fcalg::limits::Limits;
use fcalg::report::{envelope, render, run_command, Command};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(fcalg_py, FcalgError, PyException);

fn to_py(err: fcalg::Error) -> PyErr {
    let text = format!("{}: {err}", err.kind());
    if err.is_input_error() {
        PyValueError::new_err(text)
    } else {
        FcalgError::new_err(text)
    }
}

fn limits(enumeration_cap: Option<u64>, factor_degree_cap: Option<usize>) -> Limits {
    let mut l = Limits::default();
    if let Some(c) = enumeration_cap {
        l.enumeration_cap = u128::from(c);
    }
    if let Some(c) = factor_degree_cap {
        l.factor_degree_cap = c;
    }
    l
}

/// A loaded algebra description.
#[pyclass(name = "Algebra", frozen)]
struct PyAlgebra {
    desc: Description,
}

#[pymethods]
impl PyAlgebra {
    #[getter]
    fn name(&self) -> Option<String> {
        self.desc.name.clone()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.desc.algebra.dim()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.desc.algebra.labels().to_vec()
    }

    #[getter]
    fn digest(&self) -> String {
        self.desc.digest.clone()
    }

    /// Names of the described elements.
    fn elements(&self) -> Vec<String> {
        self.desc.elements.keys().cloned().collect()
    }

    fn radical_dim(&self) -> usize {
        self.desc.algebra.jacobson_radical().dim()
    }

    fn center_dim(&self) -> usize {
        self.desc.algebra.center().dim()
    }

    /// Structure-constant description as a JSON string.
    fn describe(&self) -> String {
        describe(&self.desc.algebra, &self.desc.elements).to_string()
    }

    /// Run a report command and return the report JSON text.
    #[pyo3(signature = (command, args = Vec::new(), enumeration_cap = None, factor_degree_cap = None))]
    fn run(
        &self,
        py: Python<'_>,
        command: &str,
        args: Vec<String>,
        enumeration_cap: Option<u64>,
        factor_degree_cap: Option<usize>,
    ) -> PyResult<String> {
        let cmd = Command::from_args(command, &args).map_err(to_py)?;
        let limits = limits(enumeration_cap, factor_degree_cap);
        let desc = &self.desc;
        let bytes = py
            .detach(|| {
                run_command(desc, &cmd, &limits).map(|o| render(&envelope(desc, &cmd, &limits, o, None)))
            })
            .map_err(to_py)?;
        Ok(String::from_utf8(bytes).expect("reports are UTF-8"))
    }
}

#[pyfunction]
fn load(path: PathBuf) -> PyResult<PyAlgebra> {
    load_description(&path)
        .map(|desc| PyAlgebra { desc })
        .map_err(to_py)
}

#[pyfunction]
fn loads(text: &str) -> PyResult<PyAlgebra> {
    parse_description(text.as_bytes())
        .map(|desc| PyAlgebra { desc })
        .map_err(to_py)
}

/// Add the module contents to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", fcalg::report::VERSION)?;
    m.add("FcalgError", m.py().get_type::<FcalgError>())?;
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(load, m)?)?;
    m.add_function(wrap_pyfunction!(loads, m)?)?;
    Ok(())
}

#[pymodule]
fn fcalg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}
