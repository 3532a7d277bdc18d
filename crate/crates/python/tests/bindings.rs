use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(code: &str) {
    Python::with_gil(|py| {
        let module = pyo3::wrap_pymodule!(fiberface_py::fiberface)(py);
        let locals = PyDict::new_bound(py);
        locals.set_item("ff", module).unwrap();
        if let Err(e) = py.run_bound(code, None, Some(&locals)) {
            e.print(py);
            panic!("python snippet failed");
        }
    });
}

#[test]
fn arithmetic_from_python() {
    run("assert ff.special_primes(80) == [13, 19, 31, 61, 73]\n\
         assert ff.genus_gamma0(11) == 1\n\
         assert ff.tower(2).splitlines()[2].split('\\t')[2] == '78400'\n");
}

#[test]
fn groups_and_triangulations_from_python() {
    let pres = include_str!("../../core/fixtures/b_orbifold.pres");
    let table = include_str!("../../core/fixtures/n_cover.table");
    Python::with_gil(|py| {
        let module = pyo3::wrap_pymodule!(fiberface_py::fiberface)(py);
        let locals = PyDict::new_bound(py);
        locals.set_item("ff", module).unwrap();
        locals.set_item("pres", pres).unwrap();
        locals.set_item("table", table).unwrap();
        let code = "n = ff.Presentation(pres).subgroup(table)\n\
                    assert n.homology() == (1, [4, 8])\n\
                    assert n.alexander()[0] == 't^4 + 30*t^2 + 1'\n\
                    w = ff.Triangulation.whitehead()\n\
                    assert w.norm_bound([0, 0]) == 0\n\
                    try:\n    ff.Presentation('nonsense')\nexcept ValueError:\n    pass\nelse:\n    raise AssertionError('parsed nonsense')\n";
        if let Err(e) = py.run_bound(code, None, Some(&locals)) {
            e.print(py);
            panic!("python snippet failed");
        }
    });
}
