"""Smoke test for the shagraph_py extension.

Build and install the wheel first, for example:

    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/shagraph_py-*.whl
    python python/smoke_test.py
"""

import json
import os

import shagraph_py as sg


def check_abelian():
    s = sg.snf([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert s["diagonal"] == [2, 6, 12], s["diagonal"]
    assert s["rank"] == 3
    g = sg.AbelianGroup(2, [[2, 0], [0, 3]])
    assert g.invariants() == "Z/6"
    assert g.order() == 6
    assert sg.AbelianGroup(3, [[1, 1, 0]]).invariants() == "Z^2"
    assert sg.AbelianGroup.from_factors(0, []).is_trivial()
    assert g == sg.AbelianGroup.from_factors(0, [6])


def check_lattices():
    c2 = sg.FiniteGroup.cyclic(2)
    sign = sg.Lattice(c2, [[[-1]]])
    whole = c2.whole()
    assert sign.h1(whole) == "Z/2"
    assert sign.tate(whole) == ("Z/2", "0")
    assert not sign.is_flasque()
    assert sg.Lattice.regular(c2).is_flasque()

    v4 = sg.FiniteGroup.klein_four()
    assert len(v4.subgroups()) == 5
    t = sg.Lattice.norm_one(v4)
    assert t.rank() == 3
    res = t.flasque_resolution()
    q, s = res["permutation"], res["flasque"]
    assert q.rank() == t.rank() + s.rank()
    assert s.is_flasque()
    assert all(v4.order() % h.order() == 0 for h, _ in res["summands"])

    os.environ["SHAGRAPH_MAX_GROUP_ORDER"] = "2"
    try:
        sg.FiniteGroup.cyclic(4)
    except sg.LimitExceeded:
        pass
    else:
        raise AssertionError("group order bound was not enforced")
    finally:
        del os.environ["SHAGRAPH_MAX_GROUP_ORDER"]


def check_commands():
    names = []
    for name, command, text in sg.fixtures():
        report = json.loads(sg.run_command(command, text))
        assert report["status"] == "ok", (name, report["failure"])
        names.append(name)
    assert "triangle" in names
    bad = json.loads(sg.run_command("sha", "{}"))
    assert bad["status"] == "invalid_input"


if __name__ == "__main__":
    check_abelian()
    check_lattices()
    check_commands()
    print("smoke test passed")
