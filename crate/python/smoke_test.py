"""Smoke test for the quasihom Python module.

Build and install first, e.g.

    maturin build -m crates/py/Cargo.toml --release
    pip install target/wheels/quasihom-*.whl

then run ``python python/smoke_test.py``.
"""

from fractions import Fraction

import quasihom as q


def check(cond, what):
    if not cond:
        raise AssertionError(what)
    print(f"ok  {what}")


def main():
    flat = q.Metric(["1", "0", "0", "0", "1", "0"])
    check(flat.signature() == (2, 1), "flat metric is Lorentzian")
    check(flat.constant_curvature() == 0, "flat metric has k = 0")
    check(flat.killing(max_degree=1).dim == 6, "flat Killing algebra has dimension 6")

    g = q.Metric.family(3, 1)
    check(g.det() == "-1", "det g_{3,1} = -1")
    check(g.constant_curvature() is None, "g_{3,1} is not of constant curvature")
    for f in q.family_killing_fields(3, 1):
        check(f.is_killing(g), f"{f} is Killing for g_{{3,1}}")

    alg = g.killing(max_degree=2, exp_rates=[(0, 0, 0), (-1, 0, 0)])
    check(alg.dim == 4, "g_{3,1} has a 4-dimensional Killing algebra")
    check(alg.algebra().classify() == "RplusSl2", "its algebra is R + sl(2,R)")
    check(alg.orbit_rank([0, 0, 0]) == 3, "the full algebra is transitive")

    result = q.classify_family(1, 1)
    check(result["tag"] == "LorentzHeisenberg", "g_{1,1} is the Lorentz Heisenberg geometry")
    check(q.parameter_tag(0, 2) == "AdS3", "C = 0, D != 0 predicts AdS3")
    check(q.Metric.family(0, "1/2").constant_curvature() == Fraction(-1, 16), "k(g_{0,1/2}) = -1/16")

    custom = q.Metric(["1", "D*z", "0", "C*z^2", "1", "0"], params={"C": "3", "D": 1}, base_point=["0", "0", "1/2"])
    check(custom.components() == q.Metric.family(3, 1).components(), "parameterized spec matches the family")

    x = q.VectorField(["1", "0", "0"])
    y = q.VectorField(["0", "-h", "z"])
    check(y.bracket(q.VectorField(["0", "1", "0"])) == q.VectorField(["0", "1", "0"]), "[Y, dh] = dh")
    check(x.eval([1, 2, 3]) == [1, 0, 0], "exact evaluation")

    table = q.verify_table()
    check(table["all_passed"] and len(table["rows"]) == 6, "curvature-module table verifies")

    sol = q.make_unipotent_case(1, 4)
    check(sol.complement_eigenvalues() == (1, -3), "unipotent case (1, 4) has eigenvalues 1, -3")
    check(not sol.is_unimodular(), "it is not unimodular")
    check(q.heisenberg().derived_series_dims() == [3, 1, 0], "Heisenberg derived series")
    check(q.classify_o21_element([[1, 0, 0], [0, 0, 0], [0, 0, -1]]) == "Semisimple", "H is semisimple")

    try:
        q.Metric(["1", "0", "0", "1", "0", "1"])
    except ValueError as e:
        check("signature" in str(e), "Riemannian input is rejected")
    else:
        raise AssertionError("Riemannian input accepted")

    print("all smoke checks passed")


if __name__ == "__main__":
    main()
