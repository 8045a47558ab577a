import math
import os
import pathlib
import subprocess

import pytest

import galoiskit as gk

FIXTURES = pathlib.Path(__file__).resolve().parents[2] / "fixtures"

AND = gk.Operation(2, 2, [0, 0, 0, 1])
OR = gk.Operation(2, 2, [0, 1, 1, 1])
XOR = gk.Operation(2, 2, [0, 1, 1, 0])
NOT = gk.Operation(2, 1, [1, 0])


def test_operations_and_malcev():
    assert AND(1, 1) == 1
    assert AND((0, 1)) == 0
    assert gk.star(AND, OR).table == [0, 0, 0, 1, 0, 1, 0, 1]
    assert gk.tau(gk.tau(XOR)) == XOR
    assert gk.delta(gk.nabla(NOT)) == NOT
    with pytest.raises(gk.PreconditionError):
        gk.Operation(2, 2, [0, 1, 1])
    with pytest.raises(gk.PreconditionError):
        gk.linear_class_fixture(2, 2, 2)


def test_closures():
    cls = gk.close_composition(gk.OperationClass(2, [AND]), 2)
    assert len(cls) == 4 and AND in cls
    assert len(gk.close_composition(gk.OperationClass(2, [NOT]), 1)) == 2


def test_constraints():
    rf = gk.RepetitionFunction(2, 2)
    for t in [(0, 0), (0, 1), (1, 1)]:
        rf[t] = math.inf
    assert rf[(0, 1)] == math.inf and rf[(1, 0)] == 0
    leq = gk.Constraint(rf, gk.Relation(2, 2, [(0, 0), (0, 1), (1, 1)]))
    assert gk.satisfies_constraint(AND, leq)["satisfied"]
    verdict = gk.satisfies_constraint(NOT, leq)
    assert not verdict["satisfied"]
    assert verdict["witness"] == [[0, 1]]
    assert verdict["image"] == [1, 0]


def test_clusters_and_galois():
    ord_ = gk.order_cluster(2)
    verdict = gk.satisfies_cluster(XOR, ord_, 4)
    assert not verdict["satisfied"]
    assert verdict["witness"]["output"] == [0, 1, 1, 0]
    assert gk.satisfies_cluster(NOT, ord_, 4)["satisfied"]
    assert len(gk.c_pol([ord_], 2)) == 18
    projections = gk.projections_class(2, 2)
    assert gk.c_pol(gk.cl_inv(gk.OperationClass(2), 2), 2) == projections
    cluster, witness, _ = gk.separating_cluster(projections, AND)
    assert witness["output"] == [0, 0, 0, 1]
    with pytest.raises(gk.NoSeparatorError):
        gk.separating_cluster(projections, gk.projection(2, 1, 2))
    with pytest.raises(gk.BudgetExceeded):
        gk.c_pol([ord_], 2, budget=10)


def test_load_fixture():
    ws = gk.load(str(FIXTURES / "boolean.gk"))
    assert len(ws["classes"]["mono"]) == 9
    assert gk.satisfies_cluster(ws["operations"]["XOR"], ws["clusters"]["ord"])["satisfied"] is False


def test_suite():
    results = gk.run_suite("malcev")
    assert results and all(r["passed"] for r in results)


@pytest.mark.skipif("GALOISKIT_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_exit_codes():
    cli = os.environ["GALOISKIT_CLI"]
    boolean = str(FIXTURES / "boolean.gk")
    ok = subprocess.run([cli, "-i", boolean, "satisfies", "--fn", "AND", "--constraint", "mono"])
    assert ok.returncode == 0
    bad = subprocess.run([cli, "-i", boolean, "satisfies", "--fn", "XOR", "--cluster", "ord"],
                         capture_output=True, text=True)
    assert bad.returncode == 1
    assert "output=(0,1,1,0)" in bad.stdout
