"""Smoke test for the rhlab extension module. Run after `pip install`."""

import math

import rhlab


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    q = rhlab.rh_tails(0.9)
    assert close(q[0], math.log(10), 1e-12), q[:4]
    assert close(q[3], 0.171351, 1e-6), q[:4]
    assert rhlab.rh_tails(0.5, "steady-state")[:3] == [1.0, 0.5, 1.0 / 6.0]
    assert close(sum(rhlab.distribution(0.99)), 1.0, 1e-9)

    mean, var, trunc = rhlab.variance_search_cost(1 - 1e-6)
    assert 1.87 <= var <= 1.90 and trunc < 1e-10, var
    assert close(rhlab.mean_search_cost(0.9), math.log(10) / 0.9, 1e-12)
    assert close(rhlab.variance_upper_bound(0.9, "steady-state"), 10.0 + 1.0 / 3.0, 1e-9)
    assert close(rhlab.tail_upper_bound(4, 0.9), 10 / (9 + math.e**3), 1e-9)
    assert close(rhlab.ode_majorant(4.0, 0.9), math.log(9 + math.e**3) - 3, 1e-9)
    w = rhlab.lambert_w(1.0)
    assert close(w * math.exp(w), 1.0, 1e-14)
    assert rhlab.logistic_limit_density(0.0) == 0.25

    try:
        rhlab.rh_tails(1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("alpha = 1 accepted")

    t = rhlab.Table(64, "rh", seed=1)
    for k in range(40):
        age, inspected, _ = t.insert(k)
        assert age >= 1 and inspected >= 1
    assert len(t) == 40 and 5 in t
    stored = dict(s for s in t.slots() if isinstance(s, tuple))
    assert t.search(5) == stored[5]
    try:
        t.insert(5)
    except ValueError:
        pass
    else:
        raise AssertionError("duplicate key accepted")
    assert t.remove(5) >= 1 and 5 not in t
    gone = t.delete_random()
    assert gone not in t and len(t) == 38
    assert t.snapshot().splitlines()[0] == "index,state,key,age"
    assert sum(t.age_histogram().values()) == 38
    t.verify()
    try:
        t.search(5)
    except KeyError:
        pass
    else:
        raise AssertionError("removed key found")

    report = rhlab.simulate(20000, 0.9, "rh", "insert-only", replications=2, seed=3)
    assert report["all_pass"], report
    assert close(report["empirical_mean"]["value"], math.log(10) / 0.9, 0.05)
    assert len(report["replications"]) == 2

    print("rhlab", rhlab.__version__, "smoke test passed")


if __name__ == "__main__":
    main()
