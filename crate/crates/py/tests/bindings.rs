use pyo3::prelude::*;
use pyo3::types::PyDict;

use lcvanish_py::lcvanish_py;

#[test]
fn module_surface() {
    pyo3::append_to_inittab!(lcvanish_py);
    Python::attach(|py| {
        let m = py.import("lcvanish_py").unwrap();
        let locals = PyDict::new(py);
        locals.set_item("lv", m).unwrap();
        let code = c"
assert lv.multinomial_mod_p(3, [1, 2], 3) == 0
assert lv.multinomial_mod_p(4, [1, 3], 5) == 4
assert lv.alpha('x1^2', '1', [1], 2, 1) == 'x1'
inst = lv.Instance(['x1', 'x1'], 1, 2, 2)
v = inst.decide(bound='finite-length', mode='compare')
assert v.result == 'VANISHES', v
top = lv.Instance(['x1', 'x2'], 2, 3, 2)
w = top.decide(bound='user:1')
assert w.result == 'NONVANISHING'
assert w.witness == (1, [0, 0], 1)
assert top.recheck(w)
assert top.beta_is_zero(1)[0] is False
try:
    lv.Instance(['x1'], 1, 4, 1)
    raise AssertionError('composite prime accepted')
except ValueError as e:
    assert '4 is not prime' in str(e)
";
        py.run(code, None, Some(&locals)).unwrap();
    });
}
