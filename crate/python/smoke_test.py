"""Smoke test for the mixedcake extension module.

Build and install first:  pip install --no-build-isolation .
Then run:                  python python/smoke_test.py
"""

from fractions import Fraction

import mixedcake


def main() -> None:
    agents = mixedcake.counterexample_agents()
    assert [a.total() for a in agents] == ["-3", "-3", "-3"]
    assert agents[0].value_of(0, Fraction(1, 4)) == "-1"
    assert agents[0].max_abs_density() == "24"

    fair = mixedcake.Division(["7/8", "15/16"], [1, 2, 3])
    assert fair.max_envy(agents) == "0"

    report = mixedcake.solve(agents, "1/16", triangulation="equilateral")
    assert report["n"] == 3 and len(report["cuts"]) == 2
    envy = Fraction(report["measured_envy"])
    assert envy <= 72 * Fraction(1, 16), envy
    print("solve:", report["cuts"], report["assignment"], "envy", report["measured_envy"])

    division, best = mixedcake.brute_force_envy_free(agents, 32)
    assert Fraction(best) <= 0, best
    print("brute force:", division, best)

    uniform = mixedcake.ValueDensity(["0", "1"], ["1"])
    halves = mixedcake.divide_two_agents(uniform, uniform)
    assert halves.cuts == ["1/2"]

    tri = mixedcake.Triangulation.barycentric(3, 2)
    assert len(tri) == 36 and tri.ownership_is_valid()
    labels = tri.random_sperner_labeling(1)
    assert tri.interior_degree(labels) == 1 and tri.boundary_degree(labels) == "1"
    assert len(tri.fully_labeled_cells(labels)) % 2 == 1
    assert tri.svg(labels).startswith("<svg")

    records = mixedcake.check("degree", n=3, depth=2, trials=25, seed=7)
    assert records[-1]["summary"] and records[-1]["passed"] == 25
    assert mixedcake.check("appendix")[-1]["pass"]

    try:
        mixedcake.check("prime", n=4)
    except mixedcake.MixedcakeError:
        pass
    else:
        raise AssertionError("composite n accepted")
    try:
        mixedcake.Triangulation.barycentric(3, 9, cell_cap=1000)
    except mixedcake.ResourceCapError:
        pass
    else:
        raise AssertionError("cap not enforced")

    print("smoke test passed")


if __name__ == "__main__":
    main()
