"""Dot-and-line pictures of arrows, and text summaries of (bi)simplicial sets.

Pictures put the source row on top and the target row underneath, so the
multiplication ``2→1:[0,0]`` is a fork of two top vertices into one bottom
vertex.  ``*`` is a vertex, ``o`` an undefined source position of a partial
map.
"""
from __future__ import annotations

from typing import Optional

from .bar_segal import SegalReport, TruncSSet
from .bisimplicial import DoubleSegalReport, TruncBiSSet
from .simplex_cats import IntervalMap, Map, OpArrow, PartialMap, TotalMap

SPACING = 4


def _plain(f: Map) -> TotalMap | PartialMap:
    if isinstance(f, IntervalMap):
        return f.underlying
    if isinstance(f, OpArrow):
        return f.underlying
    return f


def _round_div(a: int, b: int) -> int:
    # round half away from zero, integer only
    q, r = divmod(abs(a), b)
    q += 2 * r >= b
    return q if a >= 0 else -q


def render_ascii(f: Map) -> str:
    g = _plain(f)
    n, m = g.source, g.target
    width = max(n, m, 1)
    xs = [(width - n) * SPACING // 2 + SPACING * i for i in range(n)]
    xt = [(width - m) * SPACING // 2 + SPACING * j for j in range(m)]
    cols = max(width * SPACING - SPACING + 1, 1)
    edges = [(xs[i], xt[v]) for i, v in enumerate(g.images) if v is not None]
    height = max([1] + [abs(b - a) - 1 for a, b in edges])

    def blank():
        return [" "] * (cols + 2)

    top_labels, top, bottom, bottom_labels = blank(), blank(), blank(), blank()
    for i, x in enumerate(xs):
        top[x] = "o" if g.images[i] is None else "*"
        for k, ch in enumerate(str(i)):
            top_labels[x + k] = ch
    for j, x in enumerate(xt):
        bottom[x] = "*"
        for k, ch in enumerate(str(j)):
            bottom_labels[x + k] = ch
    middle = [blank() for _ in range(height)]
    for a, b in edges:
        ch = "|" if a == b else ("/" if b < a else "\\")
        for r in range(1, height + 1):
            x = a + _round_div((b - a) * r, height + 1)
            middle[r - 1][x] = ch
    rows = [str(f)] + ["".join(r).rstrip() for r in [top_labels, top, *middle, bottom, bottom_labels]]
    return "\n".join(rows) + "\n"


def render_dot(f: Map) -> str:
    g = _plain(f)
    lines = [f'digraph "{f}" {{', "  rankdir=TB;", "  node [shape=point, width=0.12];"]
    lines.append("  { rank=same;")
    for i in range(g.source):
        style = ", shape=circle, style=solid, width=0.12" if g.images[i] is None else ""
        lines.append(f'    s{i} [xlabel="{i}"{style}];')
    lines.append("  }")
    lines.append("  { rank=same;")
    for j in range(g.target):
        lines.append(f'    t{j} [xlabel="{j}"];')
    lines.append("  }")
    for i, v in enumerate(g.images):
        if v is not None:
            lines.append(f"  s{i} -> t{v} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_arrow(f: Map, style: str = "ascii") -> str:
    if style == "ascii":
        return render_ascii(f)
    if style == "dot":
        return render_dot(f)
    raise ValueError(f"unknown style {style!r}")


def _table(header: list[str], rows: list[list[str]]) -> list[str]:
    widths = [max(len(h), *(len(r[k]) for r in rows)) if rows else len(h) for k, h in enumerate(header)]
    fmt = "  ".join(f"{{:>{w}}}" for w in widths)
    return [fmt.format(*header)] + [fmt.format(*r) for r in rows]


def render_summary(
    X: TruncSSet | TruncBiSSet,
    report: Optional[SegalReport | DoubleSegalReport] = None,
) -> str:
    if isinstance(X, TruncBiSSet):
        lines = [f"bisimplicial set, N={X.N}, M={X.M}"]
        header = ["n\\m"] + [str(m) for m in range(X.M + 1)]
        rows = [[str(n)] + [str(X.size(n, m)) for m in range(X.M + 1)] for n in range(X.N + 1)]
        lines += _table(header, rows)
        lines.append(
            f"generators: {len(X.hfaces)} horizontal faces, {len(X.hdegens)} horizontal degeneracies, "
            f"{len(X.vfaces)} vertical faces, {len(X.vdegens)} vertical degeneracies"
        )
    else:
        lines = [f"simplicial set, N={X.N}"]
        verdicts = {}
        if isinstance(report, SegalReport):
            verdicts = {v.level: v for v in report.verdicts}
        header = ["n", "|X_n|", "faces", "degeneracies", "segal"]
        rows = []
        for n in range(X.N + 1):
            faces = sum(1 for (k, _) in X.faces if k == n)
            degens = sum(1 for (k, _) in X.degeneracies if k == n)
            v = verdicts.get(n)
            rows.append([str(n), str(X.size(n)), str(faces), str(degens), v.status if v else "-"])
        lines += _table(header, rows)
    if report is not None:
        lines.append(f"segal check ({report.mode}): {'PASS' if report.passed else 'FAIL'}")
        for line in report.lines():
            if "fail" in line:
                lines.append(f"  {line}")
    return "\n".join(lines) + "\n"
