"""Ground-truth checks for reductions: distances, domination, witness replay, size bounds."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

from .graph import EXACT, Graph, GraphError, Witness, WitnessError, replay_witness
from .paths import apsp

REL_TOL = 1e-9


def _same(a, b, mode) -> bool:
    if a is None or b is None:
        return a is None and b is None
    if mode == EXACT:
        return a == b
    return math.isclose(a, b, rel_tol=REL_TOL, abs_tol=0.0)


@dataclass
class Verdict:
    ok: bool
    detail: str = ""
    violations: list = field(default_factory=list)
    pairs: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_distance_preserving(g: Graph, g2: Graph, R=None, vertex_map=None) -> Verdict:
    """Compare terminal-pair distances of ``g`` and ``g2``.

    ``vertex_map`` maps ids of ``g2`` to ids of ``g`` (identity by default).
    Exact graphs must agree exactly; approximate ones within ``REL_TOL``.
    """
    R = sorted(g.terminals if R is None else R)
    back = {v: v for v in g2.vertices} if vertex_map is None else dict(vertex_map)
    forward = {orig: new for new, orig in back.items()}
    missing = [t for t in R if t not in forward or forward[t] not in g2]
    if missing:
        raise GraphError(f"terminals missing from the reduced graph: {missing[:8]}")
    d1 = apsp(g, R)
    d2 = apsp(g2, [forward[t] for t in R])
    mode = g.mode if g.mode == g2.mode else "approx"
    bad = []
    pairs = []
    for u, v, a in d1.pairs():
        b = d2[forward[u], forward[v]]
        ok = _same(a, b, mode)
        pairs.append((u, v, a, b, ok))
        if not ok:
            bad.append((u, v, a, b))
    detail = f"{len(pairs)} terminal pairs, {len(bad)} violated"
    return Verdict(not bad, detail, bad, pairs)


def verify_domination(g: Graph, g2: Graph, vertex_map=None) -> Verdict:
    """Every surviving pair is at least as far apart in ``g2`` as in ``g``."""
    back = {v: v for v in g2.vertices} if vertex_map is None else dict(vertex_map)
    if len(set(back.values())) != len(back):
        raise GraphError("vertex map is not injective")
    for orig in back.values():
        if orig not in g:
            raise GraphError(f"vertex map points at unknown vertex {orig}")
    d2 = apsp(g2, back.keys())
    d1 = apsp(g, back.values())
    exact = g.mode == EXACT and g2.mode == EXACT
    bad = []
    for x, y, b in d2.pairs():
        a = d1[back[x], back[y]]
        if b is None:
            continue
        if a is None:
            bad.append((x, y, a, b))
        elif exact and b < a:
            bad.append((x, y, a, b))
        elif not exact and b < a * (1 - REL_TOL):
            bad.append((x, y, a, b))
    n = len(back)
    return Verdict(not bad, f"{n * (n - 1) // 2} surviving pairs, {len(bad)} violated", bad)


def verify_witness_replay(g: Graph, w: Witness, g2: Graph) -> Verdict:
    try:
        out = replay_witness(g, w)
    except WitnessError as exc:
        return Verdict(False, str(exc), [exc.index])
    if out != g2:
        return Verdict(False, "replayed graph differs from the reduced graph",
                       [_first_difference(out, g2)])
    return Verdict(True, f"{len(w)} ops replayed")


def _first_difference(a: Graph, b: Graph) -> str:
    if a.mode != b.mode:
        return "length mode"
    va, vb = set(a.vertices), set(b.vertices)
    if va != vb:
        return f"vertices {sorted(va ^ vb)[:5]}"
    for v in sorted(va):
        if a.is_terminal(v) != b.is_terminal(v):
            return f"terminal flag of {v}"
    ea = {(u, v): (l, i) for u, v, l, i in a.edges()}
    eb = {(u, v): (l, i) for u, v, l, i in b.edges()}
    for key in sorted(set(ea) | set(eb)):
        if ea.get(key) != eb.get(key):
            return f"edge {key}: {ea.get(key)} vs {eb.get(key)}"
    return "unknown"


@dataclass
class SizeReport:
    n: int
    m: int
    k: int
    family: str
    bound: Optional[str]
    ok: bool
    ratio: Optional[float] = None

    def __bool__(self):
        return self.ok


def size_bound_report(g: Graph, g2: Graph, family: str = "general",
                      k: Optional[int] = None, q: Optional[int] = None) -> SizeReport:
    """Check the concrete size bound for ``family`` (``tree``, ``general`` or ``tw``).

    Trees: ``|V'| <= 2k - 2``.  General: ``|V'| <= k + k**4`` and
    ``|E'| <= k**4 + k**2``.  Treewidth: no hard bound, only ``|V'| / (q**3 k)``.
    """
    k = len(g.terminals) if k is None else k
    n, m = g2.n, g2.m
    if family == "tree":
        limit = max(2 * k - 2, k)
        return SizeReport(n, m, k, family, f"|V'| <= {limit}", n <= limit)
    if family == "general":
        ok = n <= k + k ** 4 and m <= k ** 4 + k ** 2
        return SizeReport(n, m, k, family,
                          f"|V'| <= {k + k ** 4}, |E'| <= {k ** 4 + k ** 2}", ok)
    if family == "tw":
        if q is None:
            raise ValueError("the tw family needs q")
        ratio = n / (q ** 3 * k) if k else 0.0
        return SizeReport(n, m, k, family, None, True, ratio)
    raise ValueError(f"unknown family {family!r}")


@dataclass
class VerificationReport:
    distances: Verdict
    domination: Optional[Verdict] = None
    witness: Optional[Verdict] = None
    size: Optional[SizeReport] = None

    @property
    def passed(self) -> bool:
        parts = [self.distances, self.domination, self.witness, self.size]
        return all(bool(p) for p in parts if p is not None)

    def lines(self) -> list:
        out = []
        d = self.distances
        out.append(f"distances: {'PASS' if d else 'FAIL'} ({d.detail})")
        for u, v, a, b in d.violations[:20]:
            out.append(f"  violated {u} {v}: d_G={a} d_G'={b}")
        if self.domination is not None:
            dm = self.domination
            out.append(f"domination: {'PASS' if dm else 'FAIL'} ({dm.detail})")
            for x, y, a, b in dm.violations[:20]:
                out.append(f"  violated {x} {y}: d_G={a} d_G'={b}")
        if self.witness is not None:
            w = self.witness
            out.append(f"witness: {'PASS' if w else 'FAIL'} ({w.detail})")
        if self.size is not None:
            s = self.size
            bound = s.bound or f"ratio |V'|/(q^3 k) = {s.ratio:.4f}"
            out.append(f"size: {'PASS' if s else 'FAIL'} |V'|={s.n} |E'|={s.m} k={s.k} [{bound}]")
        return out

    def summary(self) -> dict:
        out = {
            "passed": self.passed,
            "distances": bool(self.distances),
            "violated_pairs": len(self.distances.violations),
        }
        if self.domination is not None:
            out["domination"] = bool(self.domination)
        if self.witness is not None:
            out["witness"] = bool(self.witness)
        if self.size is not None:
            out["size"] = {"n": self.size.n, "m": self.size.m, "k": self.size.k,
                           "family": self.size.family, "ok": self.size.ok}
        return out

    def render(self) -> str:
        body = "\n".join(self.lines())
        return f"{body}\n--- summary ---\n{json.dumps(self.summary(), sort_keys=True)}\n"


def verify_reduction(g: Graph, g2: Graph, witness: Optional[Witness] = None,
                     R=None, family: Optional[str] = None, q=None) -> VerificationReport:
    report = VerificationReport(verify_distance_preserving(g, g2, R))
    report.domination = verify_domination(g, g2)
    if witness is not None:
        report.witness = verify_witness_replay(g, witness, g2)
    if family is not None:
        report.size = size_bound_report(g, g2, family, q=q)
    return report
