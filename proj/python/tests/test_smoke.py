from fractions import Fraction

import numpy as np
import pytest

import conelab


def test_version():
    assert conelab.__version__ == "0.1.0"


def test_builtin_registry_lookup():
    reg = conelab.builtin_registry()
    assert reg["schema_version"] == 1
    by_name = {f["name"]: f for f in reg["fixtures"]}
    assert by_name["qubit"]["summands"] == [{"family": "ComplexHerm", "rank": 2}]
    square = [[Fraction(x["num"], x["den"]) for x in g] for g in by_name["square-cone"]["generators"]]
    assert sorted(square) == sorted([[1, 1, 1], [-1, 1, 1], [-1, -1, 1], [1, -1, 1]])


def test_run_checks_on_a_small_registry():
    reg = {
        "fixtures": [
            {"name": "qubit", "kind": "eja", "summands": [{"family": "ComplexHerm", "rank": 2}],
             "expect": {"self-dual": True}},
            {"name": "corner", "kind": "shared-corner",
             "expect": {"homogeneous": True, "pure-transitive": False}},
        ]
    }
    report = conelab.run_checks(reg, checks=["self-dual", "homogeneous", "pure-transitive"], seed=7)
    assert report["summary"]["ok"]
    corner = report["fixtures"][1]
    statuses = {c["check"]: c["status"] for c in corner["checks"]}
    assert statuses == {"self-dual": "inconclusive", "homogeneous": "holds", "pure-transitive": "fails"}
    assert corner["checks"][2]["violation"]["invariant"] == "face profile"


def test_mismatch_and_parse_errors():
    reg = {"fixtures": [{"name": "qubit", "kind": "eja", "summands": [{"family": "ComplexHerm", "rank": 2}],
                         "expect": {"self-dual": False}}]}
    report = conelab.run_checks(reg, checks="self-dual")
    assert not report["summary"]["ok"]
    assert report["summary"]["mismatches"][0]["got"] == "holds"
    with pytest.raises(conelab.ParseError, match=r"fixtures\[0\]"):
        conelab.run_checks({"fixtures": [{"name": "x"}]})
    with pytest.raises(conelab.ParseError):
        conelab.run_checks(None, checks="no-such-check")


def test_jordan_algebra_identities():
    alg = conelab.JordanAlgebra([("QuatHerm", 2)])
    assert alg.dim == 6 and alg.rank == 2
    a, b, c = (alg.random_element(seed) for seed in (1, 2, 3))
    aa = alg.product(a, a)
    assert np.allclose(alg.product(aa, alg.product(b, a)), alg.product(alg.product(aa, b), a), atol=1e-10)
    assert abs(alg.trace_inner(alg.product(a, b), c) - alg.trace_inner(b, alg.product(a, c))) < 1e-10
    assert np.allclose(alg.eigenvalues(alg.unit()), [1.0, 1.0])


def test_classify():
    lt = conelab.classify("local-tomography", 8)
    assert lt["survivors"] == ["ComplexHerm"]
    assert conelab.classify("classicality", 8, 2)["survivors"] == ["RealSym", "ComplexHerm"]


def test_steer_maximally_entangled_state():
    state = conelab.canonical_state("two-qubits")
    half = np.array([0.5, 0.5, 0.0, 0.0])  # I/2 in the qubit coordinates
    up = np.array([1.0, 0.0, 0.0, 0.0])
    result = conelab.steer("two-qubits", [0.25 * up, half - 0.25 * up], state)
    assert result["status"] == "steered"
    assert len(result["effects"]) == 2
