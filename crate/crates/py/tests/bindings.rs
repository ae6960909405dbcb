//! The module driven from an embedded interpreter.

use pyo3::prelude::*;
use pyo3::types::PyDict;

use ellwak_py::ellwak_py;

fn run(code: &str) {
    pyo3::append_to_inittab!(ellwak_py);
    pyo3::prepare_freethreaded_python();
    Python::with_gil(|py| {
        let globals = PyDict::new_bound(py);
        py.run_bound(code, Some(&globals), None).unwrap_or_else(|e| panic!("{e}"));
    });
}

#[test]
fn module_surface() {
    run(r#"
import ellwak
rep = ellwak.verify("special", window=3, p_order=1)
assert rep.all_pass() and len(rep) == 4
r = rep.get("delta.formal")
assert r.status == "PASS" and r.compared > 0 and r.mismatch is None
assert ellwak.Field("S_II").sector_shift() == ["-2", "-1", "-1", "0"]
assert ellwak.Field("PhiLL(2)").name == "PhiLL(2)"
try:
    ellwak.Field("nope")
    raise AssertionError
except ValueError:
    pass
# x^-2 carries p^3, beyond P = 1.
assert [m for m, _ in ellwak.theta(1, 2)] == [-1, 0, 1, 2]
"#);
}
