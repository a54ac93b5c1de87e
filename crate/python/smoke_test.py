#!/usr/bin/env python3
"""Smoke test for the pysurvivor extension module.

Build the module and run this script with it on the path:

    cargo build -p pysurvivor
    cp target/debug/libpysurvivor.so target/debug/pysurvivor.so
    PYTHONPATH=target/debug python3 python/smoke_test.py
"""

import math

import pysurvivor as ps


def main() -> None:
    # deterministic generation and the text round trip
    net = ps.Network.generate(9, seed=4, alpha=1.1, p_nocap=0.0)
    again = ps.Network.parse(net.to_text())
    assert again.to_text() == net.to_text()
    assert net.node_count == 9 and net.link_count == len(net.links())
    assert math.isclose(sum(p for _, _, p, _ in net.links()), 1.0, abs_tol=1e-9)

    # a hand-built four-cycle: the disjoint pair is the two sides
    square = ps.Network(4, [(0, 1, 0.25, True), (1, 2, 0.25, True),
                            (2, 3, 0.25, True), (3, 0, 0.25, True)])
    pair = ps.disjoint_pair(square, 0, 2)
    assert pair is not None and sorted(pair[0] + pair[1]) == [0, 1, 2, 3]
    tuned = ps.tunable_pair(square, 0, 2)
    assert tuned is not None and tuned[2] == 0.0  # no separating link

    # find a solvable random instance and cross-check solvers and evaluator
    checked = 0
    seed = 0
    while checked < 5:
        seed += 1
        net = ps.Network.generate(8, seed=seed, alpha=1.1, p_nocap=0.0)
        ref = ps.solve_two_connections(net, 0, 1, 2, 3, "bf")
        if not ref.feasible:
            continue
        sol = ps.solve_two_connections(net, 0, 1, 2, 3, "3a")
        assert sol.feasible
        assert sol.objective >= ref.objective - 1e-9
        pf1, pf2 = ps.evaluate(net, 0, 1, 2, 3, sol.p1, sol.b1, sol.p2, sol.b2)
        assert pf1 == 0.0
        assert math.isclose(pf2, sol.objective, abs_tol=1e-9)
        checked += 1

    # admission into a half-claimed square: primary must use the free side
    admitted = ps.solve_admission(square, 0, 2, backup_links=[2, 3],
                                  primary_links=[], k=2)
    assert admitted is not None
    primary, backup, after = admitted
    assert sorted(primary) == [0, 1] and sorted(backup) == [2, 3]
    assert "primary 0" in after

    # shared-backup pair on a dense generated graph, when one exists
    found = False
    for seed in range(1, 40):
        net = ps.Network.generate(8, seed=seed, alpha=1.1, p_nocap=0.0)
        quad = ps.solve_shared_backup_pair(net, 0, 1, 2, 3)
        if quad is None:
            continue
        p1, b1, p2, b2 = quad
        pf1, pf2 = ps.evaluate(net, 0, 1, 2, 3, p1, b1, p2, b2)
        assert pf1 == 0.0 and pf2 == 0.0
        found = True
        break
    assert found, "no shared-backup instance found in 40 seeds"

    # a small experiment: reference search is always optimal
    out = ps.run_experiment("free-form", trials=60, nodes=8, seed=4242,
                            alpha=1.1, p_nocap=0.4, cut_level=3)
    assert out["completed"] > 0
    feasible, optimal = out["rates"]["bf"]
    assert optimal == 1.0

    print("pysurvivor smoke test passed")


if __name__ == "__main__":
    main()
