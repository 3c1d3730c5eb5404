"""Float-mode experiments on the discrete system: perturbation, shooting, figure data."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from . import dpsystem, limit
from .moments import JacobiCoefficients
from .numerics import EXACT, float_mode
from .weight import WeightParams

log = logging.getLogger(__name__)


@dataclass
class RunOutcome:
    """Float iteration of the discrete system from a given y0."""

    a_sq: list
    b: list
    singular_at: int | None = None
    singular_reason: str | None = None

    def first_nonpositive(self, N: int):
        for n in range(1, min(N, len(self.a_sq) - 1) + 1):
            if not self.a_sq[n] > 0:
                return n
        return None


def run_from(p: WeightParams, y0) -> RunOutcome:
    """Iterate without raising; a singularity truncates the run."""
    N, alpha, c = p.N, p.alpha, p.c
    s = dpsystem.XYState(0, p.mode.convert(0), p.mode.convert(y0))
    states = [s]
    try:
        for _ in range(N + 1):
            s = dpsystem.step(p, s)
            states.append(s)
    except (dpsystem.SingularTrajectoryError, ZeroDivisionError) as exc:
        out = RunOutcome([c * (N * t.x - t.n) for t in states], [], None, str(exc))
        out.singular_at = getattr(exc, "n", len(states))
        return out
    a_sq = [c * (N * t.x - t.n) for t in states]
    b = [-N * t.y - (N + 1 + c - t.n - alpha) for t in states[: N + 1]]
    return RunOutcome(a_sq, b)


@dataclass
class PerturbReport:
    params: dict
    delta: str
    prec: int
    failed: bool
    first_failure: int | None
    reason: str
    boundary: object | None
    profile: list = field(default_factory=list)

    def as_dict(self, digits: int = 20) -> dict:
        m = float_mode(self.prec)
        return {
            "params": self.params,
            "delta": self.delta,
            "prec": self.prec,
            "failed": self.failed,
            "first_failure": self.first_failure,
            "reason": self.reason,
            "a_sq_N_plus_1": None if self.boundary is None else m.render(self.boundary, 10),
            "profile": [{"n": n, "a_sq": m.render(a, digits)} for n, a in self.profile],
        }


def perturb(p: WeightParams, delta, prec: int, tol="1e-20") -> PerturbReport:
    """Iterate from ``y0 + delta`` at ``prec`` bits and report the first failure.

    A run fails at the first n in 1..N with ``a_n^2 <= 0``, at a
    singularity, or when ``|a_{N+1}^2| > tol``.
    """
    if not p.exact:
        raise ValueError("pass exact parameters; the float mode is chosen by prec")
    mode = float_mode(prec)
    pf = p.to_mode(mode)
    delta_text = delta if isinstance(delta, str) else EXACT.render(delta)
    y0 = mode.convert(dpsystem.y0_closed_form(p)) + mode.convert(delta_text)
    run = run_from(pf, y0)
    tol = mode.convert(tol)
    profile = list(enumerate(run.a_sq))
    bad = run.first_nonpositive(p.N)
    if run.singular_at is not None and (bad is None or run.singular_at < bad):
        return PerturbReport(p.as_dict(), delta_text, prec, True, run.singular_at, run.singular_reason, None, profile)
    if bad is not None:
        return PerturbReport(p.as_dict(), delta_text, prec, True, bad, f"a_{bad}^2 <= 0", None, profile)
    boundary = run.a_sq[p.N + 1]
    if abs(boundary) > tol:
        return PerturbReport(
            p.as_dict(), delta_text, prec, True, p.N + 1, "|a_{N+1}^2| exceeds tolerance", boundary, profile
        )
    return PerturbReport(p.as_dict(), delta_text, prec, False, None, "boundary closed", boundary, profile)


@dataclass
class ShootResult:
    roots: list
    rejected: list
    closed_form: object
    prec: int
    # (min b_n, max b_n) along each admissible root's trajectory
    b_ranges: list = field(default_factory=list)
    # |sum b_n - N(N+1)/2|: zero for a measure on {0..N}, whose Jacobi spectrum is 0..N
    trace_gaps: list = field(default_factory=list)

    def closest_to_closed_form(self):
        return min(self.roots, key=lambda r: abs(r - self.closed_form)) if self.roots else None

    def consistent_roots(self):
        """Admissible roots that also pass the trace test."""
        tol = float_mode(self.prec).convert(2) ** (-(self.prec // 4))
        return [r for r, g in zip(self.roots, self.trace_gaps) if g <= tol]

    def as_dict(self) -> dict:
        m = float_mode(self.prec)
        return {
            "prec": self.prec,
            "closed_form_y0": m.render(self.closed_form),
            "admissible_roots": [m.render(r) for r in self.roots],
            "root_b_ranges": [[m.render(lo, 12), m.render(hi, 12)] for lo, hi in self.b_ranges],
            "root_trace_gaps": [m.render(g, 6) for g in self.trace_gaps],
            "trace_consistent_roots": [m.render(r) for r in self.consistent_roots()],
            "rejected_sign_changes": [{"y0": m.render(r), "why": why} for r, why in self.rejected],
        }


def shooting_function(pf: WeightParams, y0):
    """``a_{N+1}^2`` reached from y0, or None at a singularity."""
    run = run_from(pf, y0)
    if run.singular_at is not None:
        return None
    return run.a_sq[pf.N + 1]


def _signature(pf, y0):
    """``(first failing index or None, sign of a_{N+1}^2)``; None at a singularity."""
    run = run_from(pf, y0)
    if run.singular_at is not None:
        return None, None
    v = run.a_sq[pf.N + 1]
    return (run.first_nonpositive(pf.N), 0 if v == 0 else (1 if v > 0 else -1)), v


def _bisect(pf, a, b, max_iter):
    fa = shooting_function(pf, a)
    for _ in range(max_iter):
        if a == b:
            break
        mid = (a + b) / 2
        if mid == a or mid == b:
            break
        fm = shooting_function(pf, mid)
        if fm is None:
            break
        if fm == 0:
            return mid
        if (fa < 0) == (fm < 0):
            a, fa = mid, fm
        else:
            b = mid
    return (a + b) / 2


def shoot(
    p: WeightParams,
    lo,
    hi,
    prec: int,
    subdivisions: int = 64,
    max_iter: int | None = None,
    refine_depth: int = 4,
    refine_subdivisions: int = 16,
    max_evals: int = 100_000,
) -> ShootResult:
    """Find every y0 in [lo, hi] with ``a_{N+1}^2 = 0`` and a_1^2..a_N^2 > 0.

    The bracket is scanned on a uniform grid and every sign change is refined
    by bisection. The admissible set (all interior a_n^2 > 0) can be far
    narrower than a grid cell and sits next to poles of a_{N+1}^2, so cells
    whose endpoints differ in the first failing a_n^2 are rescanned on a finer
    grid, up to ``refine_depth`` levels and ``max_evals`` trajectory runs.
    """
    mode = float_mode(prec)
    pf = p.to_mode(mode)
    lo, hi = mode.convert(EXACT.convert(lo)), mode.convert(EXACT.convert(hi))
    if not lo < hi:
        raise ValueError("empty bracket")
    max_iter = prec + 16 if max_iter is None else max_iter
    tol = mode.convert(2) ** (-(prec // 4))
    candidates = []
    evals = 0
    work = [(lo, hi, 0)]
    while work:
        wlo, whi, depth = work.pop()
        count = subdivisions if depth == 0 else refine_subdivisions
        grid = [wlo + (whi - wlo) * k / count for k in range(count + 1)]
        sigs = [_signature(pf, g) for g in grid]
        evals += len(grid)
        for k in range(count):
            (sa, fa), (sb, fb) = sigs[k], sigs[k + 1]
            if fa is not None and fb is not None:
                if fa == 0:
                    candidates.append((grid[k], grid[k]))
                elif fa * fb < 0:
                    candidates.append((grid[k], grid[k + 1]))
            if sa != sb and depth < refine_depth and evals < max_evals:
                work.append((grid[k], grid[k + 1], depth + 1))
        if sigs[-1][1] == 0:
            candidates.append((grid[-1], grid[-1]))
    if evals >= max_evals:
        log.warning("shooting refinement stopped at the evaluation budget (%d runs)", evals)
    if not candidates:
        raise ValueError("no sign change of a_{N+1}^2 inside the bracket")
    roots, rejected, b_ranges, gaps = [], [], [], []
    trace = p.N * (p.N + 1) // 2
    for a, b in candidates:
        y0 = _bisect(pf, a, b, max_iter)
        if any(abs(y0 - r) <= tol for r in roots) or any(abs(y0 - r) <= tol for r, _ in rejected):
            continue
        run = run_from(pf, y0)
        if run.singular_at is not None:
            rejected.append((y0, f"singular at n={run.singular_at}"))
        elif abs(run.a_sq[p.N + 1]) > tol:
            rejected.append((y0, "pole of a_{N+1}^2, not a root"))
        elif run.first_nonpositive(p.N) is not None:
            rejected.append((y0, f"a_{run.first_nonpositive(p.N)}^2 <= 0"))
        else:
            roots.append(y0)
            b_ranges.append((min(run.b), max(run.b)))
            gaps.append(abs(sum(run.b) - trace))
    order = sorted(range(len(roots)), key=lambda k: roots[k])
    roots, b_ranges, gaps = [roots[k] for k in order], [b_ranges[k] for k in order], [gaps[k] for k in order]
    rejected.sort(key=lambda r: r[0])
    if len(roots) > 1:
        log.warning("%d admissible y0 values found in the bracket", len(roots))
    return ShootResult(roots, rejected, mode.convert(dpsystem.y0_closed_form(p)), prec, b_ranges, gaps)


FIGURES = {
    1: (80, "-1", "2"),
    2: (80, "0.8", "2"),
    3: (80, "-1", "30"),
    4: (80, "-2000", "1000"),
}
FIGURE4_P = "1/3"


def figure_params(fig: int) -> WeightParams:
    N, alpha, c = FIGURES[fig]
    return WeightParams(N, EXACT.parse(alpha), EXACT.parse(c))


def figure_data(fig: int) -> dict[str, JacobiCoefficients]:
    """Coefficient series plotted in figure ``fig`` (exact)."""
    if fig not in FIGURES:
        raise ValueError(f"unknown figure {fig}; choose from {sorted(FIGURES)}")
    p = figure_params(fig)
    series = {"generalized": dpsystem.trajectory(p)}
    if fig == 4:
        series["classical"] = limit.krawtchouk_table(p.N, EXACT.parse(FIGURE4_P))
    return series


def unimodal(seq) -> bool:
    """Strictly increasing then strictly decreasing."""
    k = max(range(len(seq)), key=lambda i: seq[i])
    up = all(seq[i] < seq[i + 1] for i in range(k))
    down = all(seq[i] > seq[i + 1] for i in range(k, len(seq) - 1))
    return up and down
