import pytest

import resolvent as rv


def z(m, *orders):
    return rv.Module(m, list(orders))


def test_module_canonical_form():
    x = z(4, 4, 2)
    assert x.factors == [2, 4]
    assert str(x) == "Z/2 + Z/4"
    assert x == z(4, 2, 4)


def test_tor_ladder():
    for n in range(4):
        assert rv.tor(z(4, 2), z(4, 2), n) == z(4, 2)


def test_homology_matches_tor():
    b = z(4, 2)
    for n in (1, 2):
        assert rv.homology(b, n, "pointed-free", coeff=b) == rv.tor(b, b, n - 1)
    assert str(rv.homology(z(2, 2), 1)) == "Z/2"


def test_compare_flagship():
    rep = rv.compare(z(4, 2), ["pointed-free", "tv-min", "oracle"], 2, coeff=z(4, 2))
    assert rep["verdict"] == "isomorphic"
    assert {c["value"]["module"] for c in rep["cells"]} == {"Z/2"}
    assert all(c["millis"] == 0 for c in rep["cells"])


def test_resolve_shape():
    obj = rv.resolve(z(4, 2), "tv-min", 2)
    assert obj["augmented"] is True
    assert obj["levels"][0]["factors"] == [2]
    assert len(obj["levels"]) == 4


def test_errors():
    with pytest.raises(ValueError):
        z(4, 3)
    with pytest.raises(ValueError):
        rv.homology(z(4, 2), 1, "no-such-method")
    with pytest.raises(ValueError):
        rv.homology(z(4, 2), 0)
    with pytest.raises(rv.EnumerationTooLarge):
        rv.homology(z(4, 2), 2, "set-free")


def test_guard_is_adjustable():
    old = rv.max_enumeration()
    try:
        rv.set_max_enumeration(100)
        with pytest.raises(rv.EnumerationTooLarge):
            rv.homology(z(2, 2), 3, "set-free")
    finally:
        rv.set_max_enumeration(old)
    assert rv.homology(z(2, 2), 3, "set-free") == z(2)


def test_suites_are_deterministic():
    assert rv.run_suites(7) == rv.run_suites(7)
