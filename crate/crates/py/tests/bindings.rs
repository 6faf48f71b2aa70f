use plie::plie as plie_module;
use pyo3::prelude::*;

fn run(code: &str) {
    pyo3::append_to_inittab!(plie_module);
    Python::initialize();
    Python::attach(|py| {
        let code = std::ffi::CString::new(code).unwrap();
        py.run(&code, None, None).map_err(|e| e.display(py)).unwrap();
    });
}

#[test]
fn module_round_trip() {
    run(r#"
import plie
h = plie.StructureTensor.heisenberg(3)
g = plie.gp(h)
assert (g.order, g.exponent(), g.group_type().parts) == (27, 3, [1, 1, 1])
assert h.theta().theta() == h and h.theta().side == "algebra"
assert plie.count(3, 2) == ([([2], 1), ([1, 1], 1)], 2)
assert [n for _, n in plie.orbits(3, plie.Partition([3]), lie=True, nilpotent=True)] == [1]
try:
    plie.count(2, 3)
    raise AssertionError("p < n accepted")
except ValueError as e:
    assert "requires p" in str(e)
"#);
}
