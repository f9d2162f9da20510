"""Command-line surface: bases, cohomology tables, named verification suites, GL_g decompositions."""
from __future__ import annotations

import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import click

from .gcore import (
    HAIRY,
    STABLE,
    VIEWS,
    Bidegree,
    assemble_complex,
    betti,
    betti_by_weight,
    cached_betti,
    code_version,
    stored_betti,
)
from .koszulce import critical_degree_ce, critical_degree_lie

KIND_NAMES = {
    "fg": "fG",
    "g": "G",
    "gc": "GC",
    "ce": "CE",
    "gcex": "GCex",
    "ceex": "CEex",
    "ppicg": "ppICG",
    "picg": "pICG",
    "icg": "ICG",
    "gstable": "Gstable",
    "fstable": "Fstable",
    "cstable": "Cstable",
}
LIE_KINDS = ("G", "GC", "GCex", "Gstable")
SUITES = ("dsq", "thm1", "thm2", "tables4", "cgamma", "ppicg-bound", "stable-homotopy", "stabilization", "koszul")
# desk caps: larger pieces are out of reach for exact elimination in pure Python
MAX_G = 8
MAX_W = 4


def _kind(name: str) -> str:
    try:
        return KIND_NAMES[name.lower()]
    except KeyError:
        raise click.BadParameter(f"unknown kind {name!r}; choose from {', '.join(KIND_NAMES)}") from None


def _h_range(kind: str, W: int) -> range:
    if kind in ("G", "GC", "GCex"):
        return range(-W - 2, W + 3)
    return range(-3 * W - 2, 3 * W + 3)


def _is_critical(kind: str, m: int, W: int, H: int, stored: int) -> bool:
    if kind in LIE_KINDS:
        return 1 - stored == critical_degree_lie(m, W, H)
    return stored == critical_degree_ce(m, W, H)


# ----------------------------------------------------------------------------
# emission


def _emit(doc: dict, fmt: str, columns: list[str], text_row: Callable[[dict], str]) -> None:
    if fmt == "json":
        click.echo(json.dumps(doc, sort_keys=True, indent=2))
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for r in doc["rows"]:
            w.writerow({k: ("" if r.get(k) is None else str(r[k]).lower() if isinstance(r.get(k), bool) else r[k]) for k in columns})
        click.echo(buf.getvalue(), nl=False)
    else:
        for r in doc["rows"]:
            click.echo(text_row(r))


def _meta(kind: str, **params) -> dict:
    return dict({k: v for k, v in params.items() if v is not None}, kind=kind, version=code_version())


# ----------------------------------------------------------------------------
# cohomology cells


def _cell_rows(job: tuple) -> list[dict]:
    kind, g, m, W, H, extra, mode, use_cache = job
    if kind in HAIRY:
        cx = assemble_complex(kind, **extra)
        crit = -(extra["n"] - 2) * extra["C"]
        return [
            {"W": None, "H": None, "k": k, "dim": v, "critical": k == crit}
            for k, v in sorted(stored_betti(cx, mode).items())
            if v
        ]
    if kind in STABLE:
        from .stable import build_stable

        cx = build_stable(kind[0], extra["M"], extra["N"], W, H, extra.get("transformed", False), m)
        back = VIEWS[cx.view][1]
        bt = betti(cx, mode)
    else:
        bt = cached_betti(kind, g, m, W, H, mode, use_cache) if kind != "CEex" else betti(assemble_complex(kind, g, m, Bidegree(W, H)), mode)
        view = bt.meta.get("view", "fG")
        back = VIEWS[view][1]
    rows = []
    for (_, _, k), v in sorted(bt.dims.items(), key=lambda kv: kv[0][2]):
        if v:
            rows.append({"W": W, "H": H, "k": k, "dim": v, "critical": bool(_is_critical(kind, m, W, H, back(k)))})
    return rows


def _run_cells(jobs: list[tuple], threads: int) -> list[dict]:
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(_cell_rows, jobs))
    else:
        parts = [_cell_rows(j) for j in jobs]
    return [r for p in parts for r in p]


# ----------------------------------------------------------------------------
# verification suites


@dataclass
class SuiteResult:
    name: str
    ok: bool = True
    checked: int = 0
    witness: dict | None = None
    notes: list = field(default_factory=list)

    def fail(self, **witness) -> SuiteResult:
        self.ok = False
        if self.witness is None:
            self.witness = {k: _plain(v) for k, v in witness.items()}
        return self

    def to_dict(self) -> dict:
        return {"suite": self.name, "ok": self.ok, "checked": self.checked, "witness": self.witness, "notes": self.notes}


def _plain(v):
    if isinstance(v, (str, int, bool)) or v is None:
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, set)):
        return [_plain(x) for x in v]
    ser = getattr(v, "serialize", None)
    return ser() if ser else str(v)


def _by_degree(basis, deg) -> dict[int, list]:
    out: dict[int, list] = {}
    for b in basis:
        out.setdefault(deg(b), []).append(b)
    return out


def suite_dsq(g_max: int = 2, ms=(1, 2), W_max: int = 3, stable: bool = True, MN_max: int = 2, stable_W: int = 2) -> SuiteResult:
    """Every composite of the differentials vanishes: contraction, cut and their anticommutator separately."""
    from .diff import d_contract, d_cut, differential_matrix
    from .graphs import degree, enumerate_basis
    from .koszulce import ce_complex

    res = SuiteResult("dsq")
    for g in range(g_max + 1):
        for m in ms:
            for W in range(1, W_max + 1):
                for H in range(-W - 2, W + 3):
                    for kind, conn in (("fG", False), ("G", True)):
                        bases = _by_degree(enumerate_basis(g, m, W, H, conn), degree)
                        dc = d_contract
                        dx = lambda x, c=conn: d_cut(x, c)
                        for k in bases:
                            if k + 2 not in bases:
                                continue

                            def comp(d1, d2):
                                A = differential_matrix(bases[k], bases.get(k + 1, []), d1)
                                B = differential_matrix(bases.get(k + 1, []), bases[k + 2], d2)
                                return B @ A

                            for name, M in (
                                ("contract^2", comp(dc, dc)),
                                ("cut^2", comp(dx, dx)),
                                ("anticommutator", comp(dc, dx) + comp(dx, dc)),
                            ):
                                res.checked += 1
                                if not M.is_zero():
                                    return res.fail(kind=kind, g=g, m=m, W=W, H=H, degree=k, composite=name)
                    bad = ce_complex(g, m, W, H).check_dsq()
                    res.checked += 1
                    if bad:
                        return res.fail(kind="CE", g=g, m=m, W=W, H=H, degrees=bad)
    if stable:
        from .stable import build_stable, d_vertex_graded, stable_bounds

        for kind in ("G", "F", "C"):
            for M in range(MN_max + 1):
                for N in range(MN_max + 1 - M):
                    for W in range(stable_W + 1):
                        hb = stable_bounds(kind, W) + M + N
                        for H in range(-hb, hb + 1):
                            for m, tr in ((m, tr) for m in ms for tr in (False, True)):
                                cx = build_stable(kind, M, N, W, H, tr, m)
                                res.checked += 1
                                bad = cx.check_dsq()
                                if bad:
                                    return res.fail(kind=kind + "stable", m=m, M=M, N=N, W=W, H=H, transformed=tr, degrees=bad)
                                if tr:
                                    # the vertex-graded part squares to zero on its own
                                    bases = {k: list(v) for k, v in cx.bases.items()}
                                    for k in bases:
                                        if k + 2 in bases and k + 1 in bases:
                                            A = differential_matrix(bases[k], bases[k + 1], d_vertex_graded)
                                            B = differential_matrix(bases[k + 1], bases[k + 2], d_vertex_graded)
                                            res.checked += 1
                                            if not (B @ A).is_zero():
                                                return res.fail(kind=kind + "stable", M=M, N=N, W=W, H=H, degree=k, composite="vertex-graded^2")
    return res


def suite_lie_concentration(ms=(1, 2), Ws=(1, 2), extra_g: int = 4, mode: str = "certified") -> SuiteResult:
    """Connected dual complex: lower bound at every g, concentration once g >= W + 2."""
    res = SuiteResult("thm1")
    for m in ms:
        for W in Ws:
            for g in range(0, W + extra_g + 1):
                for H in range(-W - 2, W + 3):
                    kc = critical_degree_lie(m, W, H)
                    bt = betti(assemble_complex("GC", g, m, Bidegree(W, H)), mode)
                    res.checked += 1
                    for (_, _, k), v in bt.nonzero().items():
                        if k < kc:
                            return res.fail(g=g, m=m, W=W, H=H, degree=k, dim=v, critical=kc, violated="lower bound")
                        if g >= W + 2 and k != kc:
                            return res.fail(g=g, m=m, W=W, H=H, degree=k, dim=v, critical=kc, violated="concentration")
    return res


def suite_ce_concentration(ms=(1, 2), cells=((1, 3), (2, 6)), mode: str = "certified") -> SuiteResult:
    """Chevalley-Eilenberg cohomology sits in the critical degree."""
    res = SuiteResult("thm2")
    for m in ms:
        for W, g in cells:
            for H in range(-3 * W, 3 * W + 1):
                kc = critical_degree_ce(m, W, H)
                bt = betti(assemble_complex("CE", g, m, Bidegree(W, H)), mode)
                res.checked += 1
                for (_, _, k), v in bt.nonzero().items():
                    if k != kc:
                        return res.fail(g=g, m=m, W=W, H=H, degree=k, dim=v, critical=kc)
    return res


def low_weight_characters(g: int, m: int) -> dict:
    """{W: {H: character}} of gr^W H(GC) for W = 1, 2, summed over degrees."""
    from collections import Counter

    out = {}
    for W in (1, 2):
        out[W] = {}
        for H in range(-W - 2, W + 3):
            ch = Counter()
            for c in betti_by_weight(assemble_complex("GC", g, m, Bidegree(W, H))).values():
                ch.update(c)
            if ch:
                out[W][H] = +ch
    return out


def suite_weight_tables(g: int = 6, ms=(1, 2)) -> SuiteResult:
    """Decompositions of gr^1, gr^2, the free Lie square and its complement against the reference data."""
    from . import _reference as ref
    from .glrep import character_difference, decompose, free_lie_square

    res = SuiteResult("tables4")
    if g != 6:
        res.notes.append("reference data is given for g = 6 only")
        return res.fail(g=g, reason="no reference data")
    for m in ms:
        par = "even" if m % 2 == 0 else "odd"
        chars = low_weight_characters(g, m)
        sq = free_lie_square(chars[1])
        rel = {H: character_difference(sq.get(H, {}), chars[2].get(H, {})) for H in sq}
        for label, table, computed in (
            ("generators", ref.GENERATORS[par], chars[1]),
            ("weight two", ref.WEIGHT_TWO[par], chars[2]),
            ("exterior square", ref.EXTERIOR_SQUARE[par], sq),
            ("relations", ref.RELATIONS[par], rel),
        ):
            for H in sorted(set(table) | set(computed)):
                got = dict(decompose(computed.get(H, {}), g))
                res.checked += 1
                if got != table.get(H, {}):
                    return res.fail(m=m, table=label, H=H, computed=sorted(got.items()), expected=sorted(table.get(H, {}).items()))
    return res


def suite_cgamma(max_vertices: int = 4, max_edges: int = 5) -> SuiteResult:
    """Every dash pattern complex of a connected base graph lives in degree 1 - #vertices."""
    from .graphs import multigraphs
    from .stable import cgamma_complex

    res = SuiteResult("cgamma")
    for v in range(1, max_vertices + 1):
        for e in range(v - 1, max_edges + 1):
            for es in multigraphs(v, e, True):
                b = {k: x for k, x in stored_betti(cgamma_complex(es, v), "exact").items() if x}
                res.checked += 1
                if set(b) - {1 - v}:
                    return res.fail(vertices=v, edges=list(es), cohomology=b)
    return res


def suite_ppicg_bound(n: int = 3, r_max: int = 3, C_max: int = 2) -> SuiteResult:
    """Hairy complexes: lower degree bound for ppICG, exact degree for pICG and ICG."""
    res = SuiteResult("ppicg-bound")
    for kind in ("ppICG", "pICG", "ICG"):
        for r in range(1, r_max + 1):
            for C in range(C_max + 1):
                crit = -(n - 2) * C
                cx = assemble_complex(kind, n=n, r=r, C=C)
                bad = cx.check_dsq()
                res.checked += 1
                if bad:
                    return res.fail(kind=kind, n=n, r=r, C=C, dsq_degrees=bad)
                for k, v in stored_betti(cx, "exact").items():
                    if v and (k < crit if kind == "ppICG" else k != crit):
                        return res.fail(kind=kind, n=n, r=r, C=C, degree=k, dim=v, bound=crit)
    return res


def _stable_cells(kind: str, MN_max: int, W_max: int):
    from .stable import stable_bounds

    for M in range(MN_max + 1):
        for N in range(MN_max + 1 - M):
            for W in range(W_max + 1):
                hb = stable_bounds(kind, W) + M + N
                for H in range(-hb, hb + 1):
                    yield M, N, W, H


def suite_stable_homotopy(MN_max: int = 2, W_max: int = 2, m: int = 1) -> SuiteResult:
    """Transformation isomorphism, homotopy identities and the small-subcomplex dimension counts."""
    from .stable import build_stable, check_transform, homotopy_check, subcomplex_P, subcomplex_R

    res = SuiteResult("stable-homotopy")
    for kind in ("G", "F", "C"):
        for M, N, W, H in _stable_cells(kind, MN_max, W_max):
            res.checked += 1
            if not check_transform(kind, M, N, W, H, m):
                return res.fail(kind=kind, M=M, N=N, W=W, H=H, check="transform")
            if kind == "G":
                continue
            rep = homotopy_check(kind, M, N, W, H, m)
            if not rep.ok:
                return res.fail(kind=kind, M=M, N=N, W=W, H=H, check="homotopy", element=rep.witness)
            total = sum(stored_betti(build_stable(kind, M, N, W, H, False, m), "exact").values())
            small = len(subcomplex_P(M, N, W, H, m) if kind == "F" else subcomplex_R(M, N, W, H, m))
            if total != small:
                return res.fail(kind=kind, M=M, N=N, W=W, H=H, check="dimension", cohomology=total, subcomplex=small)
    return res


def suite_stabilization(MN_max: int = 2, W_max: int = 2, m: int = 1) -> SuiteResult:
    """Observed onset genus of the finite auxiliary complexes never exceeds the bound."""
    from .stable import build_stable, stabilization_bound, stabilization_scan

    res = SuiteResult("stabilization")
    for kind in ("G", "F", "C"):
        for M, N, W, H in _stable_cells(kind, MN_max, W_max):
            if not build_stable(kind, M, N, W, H, False, m).total_dim():
                continue
            bound = stabilization_bound(kind, M, N, W, H)
            onset = stabilization_scan(kind, M, N, W, H, max(bound, 0), m)
            res.checked += 1
            if onset is None:
                return res.fail(kind=kind, M=M, N=N, W=W, H=H, bound=bound, onset="not reached")
            if onset == bound:
                res.notes.append(f"{kind}({M},{N},{W},{H}) onset equals bound {bound}")
    return res


def suite_koszul(g: int = 6, m: int = 1, W0: int = 2, qd=None) -> SuiteResult:
    """Quadratic duality checks in weight two and the presentation of low-weight CE cohomology."""
    from .koszulce import a_presentation, ce_complex, ce_vanishes_above_edge_degree_zero, koszul_low_weight_check, quadratic_data

    res = SuiteResult("koszul")
    qd = qd or quadratic_data(g, m)
    for H in sorted(qd.wedge_dims):
        res.checked += 1
        if qd.R_dims[H] + qd.gr2_dims.get(H, 0) != qd.wedge_dims[H]:
            return res.fail(H=H, check="complementary", R=qd.R_dims[H], gr2=qd.gr2_dims.get(H, 0), wedge=qd.wedge_dims[H])
        if not qd.bracket_closed[H]:
            return res.fail(H=H, check="bracket closed")
        if not qd.annihilates[H]:
            return res.fail(H=H, check="annihilation")
        if qd.pairing_rank[H] != qd.R_dims[H]:
            return res.fail(H=H, check="pairing rank", rank=qd.pairing_rank[H], R=qd.R_dims[H])
    rep = koszul_low_weight_check(g, m, W0, qd)
    res.checked += 1
    if not rep.ok():
        bad = {f"{W},{H}": rep.cohomology[(W, H)] for (W, H), ok in rep.concentrated.items() if not ok}
        return res.fail(check="bar concentration", cells=bad)
    if g >= 3 * W0:
        pres = a_presentation(g, m, W0)
        for (W, H), dims in sorted(pres.dims.items()):
            res.checked += 1
            ce = {k: v for k, v in stored_betti(ce_complex(g, m, W, H)).items() if v}
            if dims != ce:
                return res.fail(W=W, H=H, check="presentation", presentation=dims, cohomology=ce)
            if not ce_vanishes_above_edge_degree_zero(g, m, W, H):
                return res.fail(W=W, H=H, check="edge degree")
        if not all(pres.image_rank_match.values()):
            return res.fail(check="relations span the image of d")
    else:
        res.notes.append(f"presentation check needs g >= {3 * W0}; skipped")
    return res


def run_suite(name: str, **params) -> SuiteResult:
    fn = {
        "dsq": suite_dsq,
        "thm1": suite_lie_concentration,
        "thm2": suite_ce_concentration,
        "tables4": suite_weight_tables,
        "cgamma": suite_cgamma,
        "ppicg-bound": suite_ppicg_bound,
        "stable-homotopy": suite_stable_homotopy,
        "stabilization": suite_stabilization,
        "koszul": suite_koszul,
    }[name]
    return fn(**params)


# ----------------------------------------------------------------------------
# commands


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Exact computations in decorated graph complexes."""


_format = click.option("--format", "fmt", type=click.Choice(["json", "csv", "text"]), default="text", show_default=True)
_mode = click.option("--mode", type=click.Choice(["exact", "certified"]), default="certified", show_default=True)


def _check_caps(g, W):
    if g is not None and not 0 <= g <= MAX_G:
        raise click.BadParameter(f"g must lie in [0, {MAX_G}]")
    if W is not None and not 0 <= W <= MAX_W:
        raise click.BadParameter(f"W must lie in [0, {MAX_W}]")


@main.command()
@click.option("--kind", required=True)
@click.option("--g", type=int)
@click.option("--m", type=int, default=1, show_default=True)
@click.option("--W", "W", type=int)
@click.option("--H", "H", type=int)
@click.option("--n", type=int)
@click.option("--r", type=int)
@click.option("--C", "C", type=int)
@click.option("--M", "M", type=int, default=0)
@click.option("--N", "N", type=int, default=0)
@click.option("--transformed", is_flag=True)
@_format
def basis(kind, g, m, W, H, n, r, C, M, N, transformed, fmt):
    """List the canonical basis of one graded piece."""
    kind = _kind(kind)
    _check_caps(g, W)
    if m < 1:
        raise click.BadParameter("m must be positive")
    if kind in HAIRY:
        if None in (n, r, C):
            raise click.UsageError(f"{kind} needs --n, --r and --C")
        cx = assemble_complex(kind, n=n, r=r, C=C)
        meta = _meta(kind, n=n, r=r, C=C)
    elif kind in STABLE:
        from .stable import build_stable

        if None in (W, H):
            raise click.UsageError(f"{kind} needs --W and --H")
        cx = build_stable(kind[0], M, N, W, H, transformed, m)
        meta = _meta(kind, m=m, M=M, N=N, W=W, H=H)
    else:
        if None in (g, W, H):
            raise click.UsageError(f"{kind} needs --g, --W and --H")
        cx = assemble_complex(kind, g, m, Bidegree(W, H))
        meta = _meta(kind, g=g, m=m, W=W, H=H)
    rows = [{"k": cx.report_degree(k), "label": cx.labels(b)} for k in cx.degrees() for b in cx.bases[k]]
    rows.sort(key=lambda r: (r["k"], r["label"]))
    _emit({"meta": meta, "rows": rows}, fmt, ["k", "label"], lambda r: f"{r['k']}\t{r['label']}")


@main.command()
@click.option("--kind", required=True)
@click.option("--g", type=int)
@click.option("--m", type=int, default=1, show_default=True)
@click.option("--W", "W", type=int, help="single weight")
@click.option("--W-max", "W_max", type=int, help="all weights 1..W_max")
@click.option("--H", "H", type=int, help="single imbalance (default: all)")
@click.option("--n", type=int)
@click.option("--r", type=int)
@click.option("--C", "C", type=int)
@click.option("--M", "M", type=int, default=0)
@click.option("--N", "N", type=int, default=0)
@click.option("--threads", type=int, default=1, show_default=True)
@click.option("--no-cache", is_flag=True)
@_format
@_mode
def cohomology(kind, g, m, W, W_max, H, n, r, C, M, N, threads, no_cache, fmt, mode):
    """Betti numbers per (W, H, k) with a flag marking the critical degree."""
    kind = _kind(kind)
    _check_caps(g, W if W is not None else W_max)
    if kind in HAIRY:
        if None in (n, r, C):
            raise click.UsageError(f"{kind} needs --n, --r and --C")
        jobs = [(kind, None, None, None, None, {"n": n, "r": r, "C": C}, mode, False)]
        meta = _meta(kind, n=n, r=r, C=C, mode=mode)
    else:
        if W is None and W_max is None:
            raise click.UsageError("give --W or --W-max")
        if kind not in STABLE and g is None:
            raise click.UsageError(f"{kind} needs --g")
        Ws = [W] if W is not None else list(range(1, W_max + 1))
        extra = {"M": M, "N": N} if kind in STABLE else {}
        jobs = [(kind, g, m, w, h, extra, mode, not no_cache) for w in Ws for h in ([H] if H is not None else _h_range(kind, w))]
        meta = _meta(kind, g=g, m=m, W=Ws, H=H, mode=mode, **extra)
    rows = _run_cells(jobs, threads)
    _emit(
        {"meta": meta, "rows": rows},
        fmt,
        ["W", "H", "k", "dim", "critical"],
        lambda r: f"W={r['W']} H={r['H']} k={r['k']} dim={r['dim']} critical={str(r['critical']).lower()}",
    )


@main.command()
@click.argument("suite", type=click.Choice(SUITES))
@click.option("--g", type=int)
@click.option("--m", "ms", type=int, multiple=True, help="repeatable; default depends on the suite")
@click.option("--W-max", "W_max", type=int)
@click.option("--max-edges", type=int, default=5, show_default=True)
@click.option("--max-vertices", type=int, default=4, show_default=True)
@click.option("--MN-max", "MN_max", type=int, default=2, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text", show_default=True)
def verify(suite, g, ms, W_max, max_edges, max_vertices, MN_max, fmt):
    """Run a named verification suite; exits with status 1 and a witness on failure."""
    ms = tuple(ms) or None
    params: dict = {}
    if suite == "dsq":
        params = dict(g_max=2 if g is None else g, ms=ms or (1, 2), W_max=3 if W_max is None else W_max, MN_max=MN_max)
    elif suite == "thm1":
        params = dict(ms=ms or (1, 2), Ws=tuple(range(1, (W_max or 2) + 1)))
    elif suite == "thm2":
        params = dict(ms=ms or (1, 2))
        if g is not None:
            params["cells"] = tuple((w, g) for w in range(1, (W_max or 2) + 1))
    elif suite == "tables4":
        params = dict(g=6 if g is None else g, ms=ms or (1, 2))
    elif suite == "cgamma":
        params = dict(max_vertices=max_vertices, max_edges=max_edges)
    elif suite == "ppicg-bound":
        params = {}
    elif suite in ("stable-homotopy", "stabilization"):
        params = dict(MN_max=MN_max, W_max=2 if W_max is None else W_max, m=(ms or (1,))[0])
    elif suite == "koszul":
        params = dict(g=6 if g is None else g, m=(ms or (1,))[0], W0=2 if W_max is None else W_max)
    res = run_suite(suite, **params)
    doc = dict(res.to_dict(), meta=_meta(suite, **{k: _plain(v) for k, v in params.items()}))
    if fmt == "json":
        click.echo(json.dumps(doc, sort_keys=True, indent=2))
    else:
        click.echo(f"{'PASS' if res.ok else 'FAIL'} {suite} ({res.checked} checks)")
        for note in res.notes:
            click.echo(f"  note: {note}")
        if not res.ok:
            click.echo("witness: " + json.dumps(res.witness, sort_keys=True))
    sys.exit(0 if res.ok else 1)


@main.command("gl-decompose")
@click.option("--kind", default="gc", show_default=True)
@click.option("--g", type=int, required=True)
@click.option("--m", type=int, default=1, show_default=True)
@click.option("--W", "W", type=int, required=True)
@click.option("--H", "H", type=int, required=True)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text", show_default=True)
def gl_decompose(kind, g, m, W, H, fmt):
    """Irreducible GL_g constituents of the cohomology of one piece, per degree."""
    from .glrep import decompose, format_weight, irrep_dimension

    kind = _kind(kind)
    _check_caps(g, W)
    if kind in HAIRY or kind in STABLE:
        raise click.BadParameter(f"{kind} carries no GL_g action")
    rows = []
    for k, ch in sorted(betti_by_weight(assemble_complex(kind, g, m, Bidegree(W, H))).items()):
        for lam, mult in decompose(ch, g):
            rows.append({"k": k, "highest_weight": list(lam), "mult": mult, "dim": irrep_dimension(lam, g)})
    doc = {"meta": _meta(kind, g=g, m=m, W=W, H=H), "rows": rows}
    if fmt == "json":
        click.echo(json.dumps(doc, sort_keys=True, indent=2))
    else:
        for r in rows:
            click.echo(f"k={r['k']} λ={format_weight(r['highest_weight'])} mult={r['mult']} dim={r['dim']}")


if __name__ == "__main__":
    main()
