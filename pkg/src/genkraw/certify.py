"""Run the certification suites against one parameter set."""

from __future__ import annotations

import logging
import random
from dataclasses import replace

import gmpy2
import mpmath

from . import dpsystem, limit, p5, toda
from .numerics import EXACT, float_mode, pochhammer
from .weight import WeightParams, kummer_m_terminating, laguerre

log = logging.getLogger(__name__)

SUITES = ("compat", "toda", "p5", "cosgrove", "kummer", "limit")

# order-2 decay: ratio 4 +- 20% per halving
ORDER2_BAND = (3.2, 4.8)
# classical limit: ratio 2 +- 30% per doubling of s
LIMIT_BAND = (1.4, 2.6)
X_N_TOL = mpmath.mpf("1e-30")


def tampered_states(centre: WeightParams, index: int, delta):
    """A trajectory source that adds ``delta`` to y_index at the centre parameter only."""
    delta = EXACT.convert(delta)

    def states_fn(q: WeightParams):
        states = dpsystem.iterate(q)
        if q.c == centre.c and q.alpha == centre.alpha and q.N == centre.N:
            states[index] = replace(states[index], y=states[index].y + delta)
        return states

    return states_fn


def _in_band(ratios, band) -> bool:
    lo, hi = band
    return all(lo <= r <= hi for r in ratios)


def _fmt(values, digits=6):
    return [mpmath.nstr(v, digits) for v in values]


def suite_compat(p, ns, states_fn):
    j = dpsystem.coefficients_from_states(p, states_fn(p))
    xs = dpsystem.sample_abscissae(p, 3)
    bad = []
    for n in ns:
        if not 1 <= n <= p.N - 1:
            continue
        for x in xs:
            r1, r2 = dpsystem.compatibility_residuals(p, j, n, x)
            if r1 != 0 or r2 != 0:
                bad.append({"n": n, "x": str(x), "r1": str(r1), "r2": str(r2)})
    return not bad, {"abscissae": [str(x) for x in xs], "nonzero": bad[:10]}


def suite_toda(p, ns, states_fn):
    source = lambda q: dpsystem.coefficients_from_states(q, states_fn(q))  # noqa: E731
    out, ok = {}, True
    for n in ns:
        r = toda.toda_convergence(p, n, method=source)
        good = _in_band(r["ratio_a"], ORDER2_BAND) and _in_band(r["ratio_b"], ORDER2_BAND)
        ok &= good
        out[str(n)] = {"ratio_a": _fmt(r["ratio_a"]), "ratio_b": _fmt(r["ratio_b"]), "passed": good}
    return ok, out


def suite_p5(p, ns, states_fn, prec):
    out, ok = {}, True
    hs = toda.h_ladder(p, range(4, 9))
    for n in ns:
        if not 1 <= n <= p.N - 1:
            continue
        try:
            sample, info = p5.sample_at(p, n, p.c, prec, states_fn=states_fn)
            pf = p.to_mode(float_mode(prec))
            dy = abs(p5.forward_y_n(pf, n, sample) - info["y_n_float"])
            dx = abs(p5.forward_x_n(pf, n, sample) - pf.mode.convert(info["x_n"]))
            conv = p5.p5_convergence(p, n, hs, prec, states_fn=states_fn)
            conv_y = p5.p5_convergence(p, n, hs, prec, via="y", states_fn=states_fn)
        except (ValueError, ZeroDivisionError) as exc:
            ok = False
            out[str(n)] = {"passed": False, "error": str(exc)}
            continue
        y_tol = pf.mode.convert(2) ** (-(prec // 4)) * (1 + abs(info["y_n_float"]))
        good = dy <= y_tol and dx <= X_N_TOL and _in_band(conv["ratio"], ORDER2_BAND)
        ok &= good
        out[str(n)] = {
            "y": mpmath.nstr(sample.y, 20),
            "y_prime": mpmath.nstr(sample.y_prime, 20),
            "y_n_roundtrip": mpmath.nstr(dy, 5),
            "x_n_error": mpmath.nstr(dx, 5),
            "ratio": _fmt(conv["ratio"]),
            "ratio_via_y": _fmt(conv_y["ratio"]),
            "passed": good,
        }
    return ok, out


def suite_cosgrove(p, ns, states_fn, prec):
    out, ok = {}, True
    z0 = p5.z_centre(p.c)
    hzs = [z0 / 2**k for k in range(4, 9)]
    for n in ns:
        r = p5.cosgrove_convergence(p, n, hzs, z0, prec, states_fn=states_fn)
        good = _in_band(r["ratio"], ORDER2_BAND)
        ok &= good
        out[str(n)] = {"z0": str(z0), "ratio": _fmt(r["ratio"]), "passed": good}
    return ok, out


def kummer_identity_holds(p: WeightParams) -> bool:
    N, alpha, c = p.N, p.alpha, p.c
    lhs = kummer_m_terminating(N, 1 - alpha, -c)
    rhs = gmpy2.fac(N) / pochhammer(1 - alpha, N) * laguerre(N, -alpha, -c)
    return lhs == rhs


def random_params(rng: random.Random, max_N: int = 50) -> WeightParams:
    N = rng.randint(1, max_N)
    alpha = gmpy2.mpq(rng.randint(-400, 99), rng.randint(1, 100))
    while not alpha < 1:
        alpha -= 1
    c = gmpy2.mpq(rng.randint(1, 400), rng.randint(1, 100))
    return WeightParams(N, alpha, c)


def suite_kummer(p, seed=0, count=20):
    rng = random.Random(seed)
    cases = [p] + [random_params(rng) for _ in range(count)]
    failed = [c.as_dict() for c in cases if not kummer_identity_holds(c)]
    return not failed, {"cases": len(cases), "failed": failed}


def suite_limit(p, prob="1/3", scales=(250, 500, 1000, 2000)):
    ladder = limit.deviation_ladder(p.N, prob, scales)
    devs = ladder["deviation"]
    monotone = all(a > b for a, b in zip(devs, devs[1:]))
    good = monotone and _in_band(ladder["ratio"], LIMIT_BAND)
    return good, {
        "N": p.N,
        "p": prob,
        "s": list(scales),
        "deviation": [mpmath.nstr(mpmath.mpf(int(d.numerator)) / int(d.denominator), 6) for d in devs],
        "ratio": [round(r, 4) for r in ladder["ratio"]],
    }


def certify(p: WeightParams, ns=None, suites=SUITES, tamper=None, prec: int = p5.P5_PREC, seed: int = 0) -> dict:
    """Run the selected suites; ``tamper=(index, delta)`` perturbs y_index at ``p.c``."""
    if not p.exact:
        raise ValueError("certification runs on exact parameters")
    unknown = set(suites) - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suites: {sorted(unknown)}")
    ns = [max(1, p.N // 2)] if ns is None else list(ns)
    states_fn = dpsystem.iterate if tamper is None else tampered_states(p, *tamper)
    results = {}
    for name in suites:
        log.info("suite %s", name)
        if name == "compat":
            ok, detail = suite_compat(p, ns, states_fn)
        elif name == "toda":
            ok, detail = suite_toda(p, ns, states_fn)
        elif name == "p5":
            ok, detail = suite_p5(p, ns, states_fn, prec)
        elif name == "cosgrove":
            ok, detail = suite_cosgrove(p, ns, states_fn, prec)
        elif name == "kummer":
            ok, detail = suite_kummer(p, seed)
        else:
            ok, detail = suite_limit(p)
        results[name] = {"passed": bool(ok), "details": detail}
    return {
        "params": p.as_dict(),
        "n": ns,
        "tamper": None if tamper is None else {"index": tamper[0], "delta": EXACT.render(tamper[1])},
        "suites": results,
        "passed": all(r["passed"] for r in results.values()),
    }
