use pyo3::prelude::*;

#[pymodule]
fn threecubes_py(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
