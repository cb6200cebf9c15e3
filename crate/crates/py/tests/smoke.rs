use std::ffi::CString;

use pyo3::prelude::*;
use pyo3::types::PyModule;

/// Registers the module in an embedded interpreter and runs the Python smoke
/// script against it.
#[test]
fn python_smoke_script() {
    Python::attach(|py| -> PyResult<()> {
        let m = PyModule::new(py, "hcm")?;
        hcm::hcm(&m)?;
        py.import("sys")?.getattr("modules")?.set_item("hcm", &m)?;
        let script = CString::new(include_str!("../python/smoke_test.py")).unwrap();
        let smoke = PyModule::from_code(py, &script, c"smoke_test.py", c"smoke_test")?;
        smoke.getattr("main")?.call0()?;
        Ok(())
    })
    .unwrap_or_else(|e| panic!("{e}"));
}
