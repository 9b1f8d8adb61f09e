"""Smoke test for the `brenke` extension module."""

import json

import brenke
from brenke import BrenkeError, BrenkeSet, PowerSeries, Scalar


def main():
    w = Scalar.omega()
    assert w * w + w + 1 == Scalar(0)
    x = Scalar("3/4", 2)
    assert x * x.inverse() == Scalar(1)
    assert (x * x.conj()).v == "0"
    assert Scalar.from_json(x.to_json()) == x
    re, im = x.to_complex()
    assert abs(complex(x) - complex(re, im)) < 1e-12

    t = PowerSeries([0, 1] + [0] * 8)
    e = t.exp()
    assert e[5] == Scalar("1/120")
    assert e.mul(e.reciprocal()) == PowerSeries([1] + [0] * 9)
    assert PowerSeries.from_json(e.to_json()) == e

    names = {name for name, _, _ in brenke.samples()}
    assert {"laguerre", "g1", "g2"} <= names

    lag = brenke.family("laguerre", order=20, a1=1, **{"lambda": 1}, mu=2, gamma=3)
    for oracle in ("recurrence", "dual", "delta"):
        assert lag.check(d=2, n_max=15, oracle=oracle)["verdict"] == "positive", oracle
    report = lag.classify(n_max=15)
    assert report["label"] == "B32_Laguerre"
    assert report["recovered_params"]["gamma"]["u"] == "3"

    herm = brenke.family("hermite", order=12, c2=1, c3=1, alpha=1)
    assert [c.u for c in herm.a.coeffs[:5]] == ["1", "0", "1", "1", "1/2"]
    assert brenke.family("g1", order=12).symmetry_order() == 3

    try:
        brenke.family("hermite", c3=0)
    except BrenkeError as err:
        assert "c3" in str(err)
    else:
        raise AssertionError("c3 = 0 must be rejected")

    bumped = BrenkeSet(herm.a + PowerSeries([0, 0, 0, 0, 1] + [0] * 8), herm.b)
    assert not bumped.is_d_orthogonal(2, 10)

    code, out, _ = brenke.cli(["classify", "--sample", "g2", "-N", "20", "--json"])
    assert code == 0 and json.loads(out)["label"] == "Sym3Fold_G2"
    print("smoke test passed")


if __name__ == "__main__":
    main()
