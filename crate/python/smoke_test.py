"""Smoke test for the Python bindings.

Build and install first:  pip install --no-build-isolation crates/py
"""

import json

import ellwak


def main():
    assert "special" in ellwak.suites()
    ids = [r[0] for r in ellwak.relations("special")]
    assert ids == ["theta.quasiPeriodicity", "theta.inversion", "delta.formal", "invQnumEll.inverse"], ids

    rep = ellwak.verify("special", window=4, p_order=2)
    assert rep.all_pass(), rep.to_text()
    assert len(rep) == 4
    doc = json.loads(rep.to_json())
    assert doc["suite"] == "special" and len(doc["relations"]) == 4

    rec = ellwak.verify("screening", window=3, p_order=1, relation="S2S1").records[0]
    assert rec.id == "S2S1" and rec.status == "PASS" and rec.mismatch is None

    e = ellwak.Field("E")
    assert e.sector_shift() == ["0", "-1", "-1", "2"], e.sector_shift()
    assert sorted(ellwak.commutator_supports("ePlus", "eMinus", window=4)) == sorted(["k", "-k"])

    th = dict(ellwak.theta(p_order=1, window=1))
    assert th[-1].startswith("-1*p") and th[0].startswith("1 ") and th[1].startswith("-1 "), th

    c = ellwak.contraction("psiPlus", "psiMinus", window=2, p_order=0)
    assert [n for n, _ in c] == [1, 2], c

    try:
        ellwak.verify("nosuch")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown suite accepted")
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
