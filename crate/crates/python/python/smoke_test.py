"""Smoke test for the klv extension module.

Run after `maturin develop` (or with the built shared library on PYTHONPATH).
"""

import klv


def main():
    m = klv.Model.clans(2, 1)
    assert len(m) == 6, m
    assert m.rank == 3
    orbits = m.orbits()
    assert orbits[-1] == {"backend": "clan", "payload": "1+1", "d": 2}

    assert m.classify(1, "+-+") == "NoncompactTypeI"
    assert m.string_set(1, "+-+") == ["+-+", "-++", "11+"]
    assert m.raising_pair("1+1") == (1, "+11")
    assert m.leq("+-+", "1+1") and not m.leq("++-", "11+")
    assert sorted(m.closure("+11")) == sorted(["++-", "+-+", "+11"])
    assert ("11+", "1+1") in m.covers()
    assert m.chain_count() > 0
    assert m.to_dot().startswith("digraph")
    assert all(c == [1] for _, _, c in m.table())

    d = klv.Model.diagonal(4)
    assert d.kl_poly("1324", "3412") == [1, 1]
    assert d.mu("1324", "3412") == 1
    assert d.kl_poly("3412", "1324") == []

    rep = klv.verify("clans(2,2)")
    assert rep["violations"] == [], rep
    assert "elapsed_ms" not in rep

    try:
        klv.Model.clans(9, 9)
    except ValueError:
        pass
    else:
        raise AssertionError("size cap not enforced")

    print("smoke test ok:", m, d)


if __name__ == "__main__":
    main()
