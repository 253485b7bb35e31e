import json

import pytest

import symrep

C2 = {"field": {"p": 2}, "generators": ["2 2\n1 1\n0 1\n"], "n_max": 12, "seed": 5, "checks": ["decompose"]}


def test_version():
    assert symrep.__version__
    assert "koszul" in symrep.known_checks()


def test_session_cyclic():
    s = symrep.Session(json.dumps(C2))
    assert s.order == 2 and s.characteristic == 2 and s.dim == 2
    for n in range(10):
        dims = sorted(s.class_dim(i) for i, k in s.decompose_sym(n) for _ in range(k))
        # Sym^n of the natural C2 module: free part plus a trivial summand for even n
        expected = [1] * (n % 2 == 0) + [2] * ((n + 1) // 2)
        assert dims == expected


def test_run_report():
    r = symrep.run(C2)
    assert r["status"] == "ok"
    assert len(r["decompositions"]) == 13
    assert symrep.run(C2) == r


def test_config_error():
    with pytest.raises(symrep.ConfigError):
        symrep.run({"field": {"p": 2}})


def test_sha256():
    assert symrep.sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
