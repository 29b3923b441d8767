"""Command-line interface: enumeration, Betti tables, verification suites, dumps.

Exit codes: 0 success, 2 usage error, 3 verification failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__, cache

TOOL = "dihedral-gravity"
N_MIN, N_MAX, LINALG_MAX = 3, 12, 8

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_IO = 0, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    ns: list[int]
    k: int | None = None
    q: int | None = None
    r: int | None = None
    method: str | None = None
    space: str | None = None
    suite: str | None = None
    target: str | None = None
    fmt: str = "json"
    cache_dir: str | None = None
    jobs: int = 1
    count: bool = False
    verify_cayley: bool = False
    all_methods: bool = False
    out: str | None = None
    extra: dict = field(default_factory=dict)

    def params(self) -> dict:
        out = {"n": self.ns if len(self.ns) > 1 else self.ns[0]}
        for name in ("k", "q", "r", "method", "space", "suite", "target"):
            val = getattr(self, name)
            if val is not None:
                out[name] = val
        for name in ("count", "verify_cayley", "all_methods"):
            if getattr(self, name):
                out[name] = True
        return out


# ---------------------------------------------------------------------------
# serialization helpers


def rational(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def matrix_json(m) -> dict:
    entries = [[r, c, rational(v)] for (r, c), v in sorted(m.entries.items())]
    return {"rows": m.rows, "cols": m.cols, "entries": entries}


def _parse_n(text: str) -> list[int]:
    for sep in ("..", "-", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            try:
                lo_i, hi_i = int(lo), int(hi)
            except ValueError:
                raise argparse.ArgumentTypeError(f"bad n range {text!r}")
            if lo_i > hi_i:
                raise argparse.ArgumentTypeError(f"empty n range {text!r}")
            return list(range(lo_i, hi_i + 1))
    try:
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n {text!r}")


def _check_range(cfg: RunConfig, linalg: bool) -> None:
    cap = LINALG_MAX if linalg and not cfg.extra.get("allow_large") else N_MAX
    for n in cfg.ns:
        if not N_MIN <= n <= cap:
            raise UsageError(f"n = {n} outside the supported range {N_MIN}..{cap}")


def _pairs(n: int, ids) -> list[list[int]]:
    from .polygon import chord_table

    table = chord_table(n)
    return [list(table[c]) for c in ids]


def _init_worker(cache_dir: str | None) -> None:
    if cache_dir is not None:
        cache.set_cache_dir(cache_dir)


def _map(cfg: RunConfig, fn, tasks: list) -> list:
    """Run ``fn`` over tasks, in a bounded process pool if asked; order preserved."""
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs, initializer=_init_worker, initargs=(cfg.cache_dir,)) as pool:
            return list(pool.map(fn, tasks))
    return [fn(t) for t in tasks]


# ---------------------------------------------------------------------------
# commands: each returns (result, table rows, text lines, ok)


def cmd_dissections(cfg: RunConfig):
    from .polygon import dissections
    from .series import cayley_count

    _check_range(cfg, linalg=False)
    result, rows, lines, ok = [], [], [], True
    for n in cfg.ns:
        ks = [cfg.k] if cfg.k is not None else list(range(n - 2))
        for k in ks:
            if not 0 <= k <= n - 3:
                raise UsageError(f"k = {k} outside 0..{n - 3} for n = {n}")
            ds = dissections(n, k)
            entry = {"n": n, "k": k, "count": len(ds)}
            if not cfg.count:
                entry["dissections"] = [_pairs(n, d.chord_ids) for d in ds]
            if cfg.verify_cayley:
                expected = cayley_count(n, k)
                entry["cayley"] = expected
                entry["agree"] = expected == len(ds)
                ok &= entry["agree"]
            result.append(entry)
            rows.append({key: entry[key] for key in ("n", "k", "count", "cayley", "agree") if key in entry})
            if cfg.count and len(cfg.ns) == 1 and cfg.k is not None:
                line = str(len(ds))
            else:
                line = f"n={n} k={k}: {len(ds)}"
            if cfg.verify_cayley:
                line += " (cayley agrees)" if entry["agree"] else f" (cayley says {expected})"
            lines.append(line)
            if not cfg.count:
                for d in ds:
                    lines.append("  " + " ".join(f"{a}-{b}" for a, b in _pairs(n, d.chord_ids)))
    return result, rows, lines, ok


def _brown(method: str, n: int) -> list[int]:
    if method == "kernel":
        from .cobar import brown_betti_kernel

        return brown_betti_kernel(n)
    if method == "series":
        from .series import brown_betti_series

        return brown_betti_series(n)
    from .series import euler_betti

    return euler_betti(n)


def _moduli(method: str, n: int) -> list[int]:
    if method == "kernel":
        from .arnold import betti_moduli

        return betti_moduli(n)
    from .series import poincare_moduli

    c = list(poincare_moduli(n).coeffs)
    return c + [0] * (n - 2 - len(c))


def _betti_task(task):
    space, method, n = task
    return (_brown if space == "brown" else _moduli)(method, n)


def cmd_betti(cfg: RunConfig):
    space = cfg.space or "moduli"
    if space == "moduli":
        methods = ["kernel", "series"] if cfg.all_methods else [cfg.method or "kernel"]
        if "euler" in methods:
            raise UsageError("the euler method applies to --space brown only")
    else:
        methods = ["kernel", "series", "euler"] if cfg.all_methods else [cfg.method or "series"]
    linalg = "kernel" in methods
    _check_range(cfg, linalg=False)
    if linalg:
        cap = N_MAX if cfg.extra.get("allow_large") else LINALG_MAX
        for n in cfg.ns:
            if n > cap:
                raise UsageError(f"kernel method capped at n = {cap}")
    tasks = [(space, m, n) for n in cfg.ns for m in methods]
    values = iter(_map(cfg, _betti_task, tasks))
    result, rows, lines, ok = [], [], [], True
    for n in cfg.ns:
        per = {m: next(values) for m in methods}
        first = per[methods[0]]
        agree = sum(1 for m in methods if per[m] == first)
        entry = {"n": n, "space": space, "betti": first, "methods": per}
        if len(methods) > 1:
            entry["agree"] = f"{agree}/{len(methods)}"
            ok &= agree == len(methods)
        result.append(entry)
        for m in methods:
            rows.append({"n": n, "space": space, "method": m, "betti": " ".join(map(str, per[m]))})
        line = ",".join(map(str, first))
        if len(cfg.ns) > 1:
            line = f"n={n}: {line}"
        lines.append(line)
        if len(methods) > 1:
            if agree == len(methods):
                lines.append(f"{agree}/{len(methods)} methods agree")
            else:
                lines.append(f"methods disagree: " + "; ".join(f"{m}={per[m]}" for m in methods))
    return result, rows, lines, ok


def _verify_task(task):
    suite, n, r = task
    from . import cobar, gravity

    if suite == "welldefined":
        reps = gravity.well_definedness(n)
        fails = [{"k": rp.k, "chord": _pairs(n, rp.chord_ids)[0], "failures": len(rp.failures)} for rp in reps if not rp.ok]
        return [{"n": n, "instance": "all chords", "relations": sum(rp.relations_checked for rp in reps), "ok": not fails, "failures": fails}]
    if suite == "exactness":
        out = []
        for q in range(n - 2):
            rep = cobar.check_exactness(cobar.build_row(n, q))
            out.append({"n": n, "instance": f"q={q}", "dims": rep.dims, "homology": rep.homology, "ok": rep.exact})
        return out
    if suite == "filtration":
        filt = gravity.residual_filtration(n)
        monotone = all(
            all(a <= b for a, b in zip(d, d[1:])) and d[-1] == gravity.build_space(n, k).dim
            for k, d in filt.dims.items()
        )
        fails = gravity.filtration_compatibility(n)
        return [{"n": n, "instance": "residual filtration", "dims": {str(k): v for k, v in filt.dims.items()},
                 "ok": monotone and not fails, "failures": len(fails)}]
    if suite == "phi":
        out = []
        rs = [r] if r is not None else list(range(n - 2))
        for rr in rs:
            for k in range(rr, n - 2):
                rep = gravity.check_phi(n, rr, k, with_psi=n <= 7)
                out.append({"n": n, "instance": f"r={rr} k={k}", "gr_dim": rep.gr_dim, "target_dim": rep.target_dim,
                            "phi_rank": rep.phi_rank, "phi_psi_identity": rep.phi_psi_identity, "ok": rep.ok})
        return out
    if suite == "coradical":
        rep = gravity.coradical_check(n)
        return [{"n": n, "instance": f"degree={row['degree']} k={row['k']}", "F": row["F"], "R": row["R"], "ok": row["equal"]}
                for row in rep.rows] + [{"n": n, "instance": "filtration compatibility", "ok": not rep.filtration_failures}]
    raise UsageError(f"unknown suite {suite!r}")  # pragma: no cover


def cmd_verify(cfg: RunConfig):
    _check_range(cfg, linalg=True)
    if cfg.r is not None and cfg.suite != "phi":
        raise UsageError("--r applies to the phi suite only")
    for n in cfg.ns:
        if cfg.r is not None and not 0 <= cfg.r <= n - 3:
            raise UsageError(f"r = {cfg.r} outside 0..{n - 3} for n = {n}")
    chunks = _map(cfg, _verify_task, [(cfg.suite, n, cfg.r) for n in cfg.ns])
    result = [inst for chunk in chunks for inst in chunk]
    ok = all(inst["ok"] for inst in result)
    rows = [{"n": inst["n"], "suite": cfg.suite, "instance": inst["instance"], "ok": inst["ok"]} for inst in result]
    lines = [f"{'PASS' if inst['ok'] else 'FAIL'} {cfg.suite} n={inst['n']} {inst['instance']}" for inst in result]
    passed = sum(inst["ok"] for inst in result)
    lines.append(f"{passed}/{len(result)} instances passed")
    return {"suite": cfg.suite, "instances": result, "passed": passed, "total": len(result)}, rows, lines, ok


def _dump_row(n: int, q: int) -> dict:
    from .cobar import build_row
    from .polygon import _subpolygons

    row = build_row(n, q)
    positions = []
    for p, lay in enumerate(row.layouts):
        blocks = []
        for key, md, off, dims in lay.blocks:
            blocks.append({
                "dissection": _pairs(n, key),
                "regions": [list(reg.vertices) for reg in _subpolygons(n, key)],
                "multidegree": list(md),
                "offset": off,
                "dims": list(dims),
            })
        positions.append({"p": p, "dim": lay.size, "blocks": blocks})
    ranks = row.complex.ranks()
    return {
        "n": n,
        "q": q,
        "dims": row.dims,
        "ranks": ranks,
        "positions": positions,
        "differentials": [matrix_json(d) for d in row.differentials],
    }


def _dump_space(n: int, k: int) -> dict:
    from .exactla import RationalMatrix
    from .gravity import build_space

    sp = build_space(n, k)
    kernel = sp.relation_kernel
    kmat = RationalMatrix.from_columns(len(sp.spanning_monomials), kernel)
    return {
        "n": n,
        "k": k,
        "c_degree": k + 1,
        "grav_degree": k + 1 - (n - 3),
        "monomials": [_pairs(n, m) for m in sp.spanning_monomials],
        "residual_counts": sp.residual_counts,
        "pivots": sp.pivot_basis,
        "rank": sp.dim,
        "relations": len(kernel),
        "relation_kernel": matrix_json(kmat),
        "filtration": sp.filtration_dims(),
    }


def cmd_dump(cfg: RunConfig):
    _check_range(cfg, linalg=True)
    if len(cfg.ns) != 1:
        raise UsageError("dump takes a single n")
    n = cfg.ns[0]
    if cfg.target == "row":
        if cfg.q is None or not 0 <= cfg.q <= n - 3:
            raise UsageError(f"dump row needs --q in 0..{n - 3}")
        result = _dump_row(n, cfg.q)
        rows = [{"p": p, "dim": d} for p, d in enumerate(result["dims"])]
        lines = [f"dims {result['dims']}", f"ranks {result['ranks']}"]
    else:
        if cfg.k is None or not 0 <= cfg.k <= n - 3:
            raise UsageError(f"dump space needs --k in 0..{n - 3}")
        result = _dump_space(n, cfg.k)
        rows = [{"monomial": " ".join(f"{a}-{b}" for a, b in m), "residual": r, "pivot": i in set(result["pivots"])}
                for i, (m, r) in enumerate(zip(result["monomials"], result["residual_counts"]))]
        lines = [f"{len(result['monomials'])} monomials, rank {result['rank']}, {result['relations']} relations"]
    return result, rows, lines, True


COMMANDS = {"dissections": cmd_dissections, "betti": cmd_betti, "verify": cmd_verify, "dump": cmd_dump}


# ---------------------------------------------------------------------------
# argument parsing and rendering


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=["json", "csv", "text"], default=None)
    common.add_argument("--cache-dir", default=None, help=f"cache directory (default: ${cache.ENV_VAR})")
    common.add_argument("--jobs", type=int, default=None, help="worker processes for independent tasks")
    common.add_argument("--allow-large", action="store_true", help="lift the n <= 8 cap on linear algebra")

    parser = argparse.ArgumentParser(prog=TOOL, description="Dihedral gravity cooperad and Brown's moduli spaces.", parents=[common])
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dissections", parents=[common], help="enumerate or count dissections")
    p.add_argument("--n", type=_parse_n, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--count", action="store_true")
    p.add_argument("--verify-cayley", action="store_true")

    p = sub.add_parser("betti", parents=[common], help="Betti numbers of M_0,n or Brown's space")
    p.add_argument("--space", choices=["moduli", "brown"], default="moduli")
    p.add_argument("--n", type=_parse_n, required=True)
    p.add_argument("--method", choices=["kernel", "series", "euler"])
    p.add_argument("--all-methods", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=["welldefined", "exactness", "filtration", "phi", "coradical"])
    p.add_argument("--n", type=_parse_n, required=True)
    p.add_argument("--r", type=int)

    p = sub.add_parser("dump", parents=[common], help="write a row complex or space presentation")
    p.add_argument("target", choices=["row", "space"])
    p.add_argument("--n", type=_parse_n, required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--out", help="output file (default: stdout)")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    jobs = args.jobs if args.jobs is not None else 1
    if jobs < 1:
        raise UsageError("--jobs must be at least 1")
    default_fmt = "text" if args.command in ("betti", "dissections") else "json"
    cfg = RunConfig(
        command=args.command,
        ns=args.n,
        k=getattr(args, "k", None),
        q=getattr(args, "q", None),
        r=getattr(args, "r", None),
        method=getattr(args, "method", None),
        space=getattr(args, "space", None),
        suite=getattr(args, "suite", None),
        target=getattr(args, "target", None),
        fmt=args.fmt or default_fmt,
        cache_dir=args.cache_dir,
        jobs=jobs,
        count=getattr(args, "count", False),
        verify_cayley=getattr(args, "verify_cayley", False),
        all_methods=getattr(args, "all_methods", False),
        out=getattr(args, "out", None),
    )
    cfg.extra["allow_large"] = args.allow_large
    return cfg


def render(cfg: RunConfig, result, rows, lines) -> str:
    if cfg.fmt == "json":
        doc = {"tool": TOOL, "version": __version__, "command": cfg.command, "params": cfg.params(), "result": result}
        return json.dumps(doc, indent=2) + "\n"
    if cfg.fmt == "csv":
        buf = io.StringIO()
        fields: list[str] = []
        for row in rows:
            for key in row:
                if key not in fields:
                    fields.append(key)
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = _config(args)
        if cfg.cache_dir is not None:
            cache.set_cache_dir(cfg.cache_dir)
        result, rows, lines, ok = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"{TOOL}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"{TOOL}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    text = render(cfg, result, rows, lines)
    try:
        if cfg.out:
            with open(cfg.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"{TOOL}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
