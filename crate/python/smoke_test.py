"""Smoke test for the Python bindings.

Build and install first:
    pip install --no-build-isolation -e crates/diassocle-py
"""

from pathlib import Path

import diassocle_py as dl

FIXTURES = Path(__file__).resolve().parent.parent / "crates" / "diassocle" / "fixtures"


def trees():
    assert [dl.catalan(n) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]
    assert dl.trees(2) == ["(• (• •))", "((• •) •)"]
    assert dl.face("(• (• •))", 0) == "(• •)"
    assert [dl.star("(• (• •))", i) for i in range(3)] == ["⊣"] * 3
    assert [dl.star("((• •) •)", i) for i in range(3)] == ["⊢"] * 3


def averaging():
    r = dl.RAvgAlgebra.shipping("a_plus_a_sum")
    assert r.dims == (1, 2)
    assert r.operator == [["1", "1"]]
    assert r.verify() and r.mc_check() and r.graph_is_subalgebra() and r.nijenhuis_check()
    assert r.betti(3) == [0, 2, 0, 0]
    assert r.operator_betti(3) == [1, 2, 0, 0]
    assert r.les_exact(3)
    assert dl.RAvgAlgebra.from_json(r.to_json("a_plus_a_sum")) == r

    k = dl.RAvgAlgebra.shipping("kx2_adjoint")
    bad = k.with_operator([["0", "1"], ["1", "0"]])
    assert not bad.verify() and not bad.mc_check() and bad.bidegree_vanishing()
    p = k.operator_cochain()
    assert k.derived_bracket(p, p).is_zero()
    q = bad.operator_cochain()
    assert not bad.derived_bracket(q, q).is_zero()
    assert k.theta(p) == k.induced_diass().cochain()
    assert k.d_p(k.d_p(p)).is_zero()


def diassociative():
    d = dl.DiassAlgebra.shipping("kx2_direct_sum")
    assert d.dim == 4 and d.verify()
    pi = d.cochain()
    assert pi.arity == 2 and pi.mm_bracket(pi).is_zero()
    assert dl.Cochain.from_json(pi.to_json()) == pi
    assert d.quotient().induced_diass() == d
    assert len(d.betti(2)) == 3


def fixtures_and_cli():
    for path in sorted(FIXTURES.glob("*.json")):
        kind, ok, report = dl.verify_fixture(path.read_text())
        assert ok, (path.name, report)
    kind, ok, _ = dl.verify_fixture((FIXTURES / "invalid" / "not_averaging.json").read_text())
    assert kind == "ravg" and not ok
    code, out, _ = dl.run_cli(["les", str(FIXTURES / "a_plus_a_sum.json"), "--nmax", "3"])
    assert code == 0 and "exact at 9 nodes" in out
    code, _, err = dl.run_cli(["verify", str(FIXTURES / "invalid" / "zero_denominator.json")])
    assert code == 2 and "$.operators.P[0][0]" in err
    try:
        dl.RAvgAlgebra.from_json((FIXTURES / "invalid" / "zero_denominator.json").read_text())
    except ValueError:
        pass
    else:
        raise AssertionError("a zero denominator was accepted")


if __name__ == "__main__":
    for check in (trees, averaging, diassociative, fixtures_and_cli):
        check()
        print(f"ok  {check.__name__}")
    print("python smoke test passed")
