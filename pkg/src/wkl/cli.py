"""
Command-line front end.

    wkl kl --type A3 --weights 1,1,1 -J "" -x s2 -y s2.s1.s3.s2 --method chains
    wkl table --type B2 --weights 1,2 -J s1 --kind P --format csv
    wkl verify --type B2 --weights 1,2 --all-J

Exit status: 0 success, 1 verification failure, 2 usage error, 3 math error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys as _sys
from dataclasses import asdict, dataclass, field, fields

from .chains import chain_report, coeff_p, coeff_q, p_via_multichains, q_via_multichains
from .coxeter import CoxeterSystem, all_subsets, format_element, format_gens, gen_subset, new_system, parse_element
from .errors import MathError, ParseError, VerifyFailed, WKLError
from .heckemod import get_module
from .klcore import KINDS, PolyTable, p_poly, poly_table, q_poly, r_poly, r_tilde
from .laurent import to_vexp
from .verify import run_suites

TASKS = ("group", "dj", "rpoly", "kl", "qpoly", "chains", "coeff", "table", "verify")
METHODS = ("recursive", "chains", "coeff")
FORMATS = ("text", "json", "csv")

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_MATH = 0, 1, 2, 3


@dataclass
class JobConfig:
    """One invocation. Field names double as the keys of a ``--config`` document."""

    task: str
    type: str
    weights: list[int] | None = None
    J: list[str] = field(default_factory=list)
    all_J: bool = False
    x: str | None = None
    y: str | None = None
    gamma: str | None = None
    method: str = "recursive"
    kind: str | None = None
    format: str = "text"
    output: str | None = None
    max_gap: int | None = None
    vanish_gap: int = 3

    @classmethod
    def from_dict(cls, doc: dict) -> JobConfig:
        known = {f.name for f in fields(cls)}
        extra = set(doc) - known
        if extra:
            raise ParseError(f"unknown config keys: {', '.join(sorted(extra))}")
        if "task" not in doc or "type" not in doc:
            raise ParseError("config needs at least 'task' and 'type'")
        doc = dict(doc)
        if isinstance(doc.get("weights"), str):
            doc["weights"] = _parse_weights(doc["weights"])
        if isinstance(doc.get("J"), str):
            doc["J"] = _split_j(doc["J"])
        if doc.get("gamma") is not None:
            doc["gamma"] = str(doc["gamma"])
        cfg = cls(**doc)
        cfg.validate()
        return cfg

    def to_dict(self) -> dict:
        return asdict(self)

    def validate(self) -> None:
        if self.task not in TASKS:
            raise ParseError(f"unknown task {self.task!r}")
        if self.method not in METHODS:
            raise ParseError(f"unknown method {self.method!r}")
        if self.format not in FORMATS:
            raise ParseError(f"unknown format {self.format!r}")
        if self.method != "recursive" and self.task not in ("kl", "qpoly"):
            raise ParseError(f"--method applies to kl and qpoly, not {self.task}")
        if self.task in ("rpoly", "kl", "qpoly", "chains", "coeff") and (self.x is None or self.y is None):
            raise ParseError(f"{self.task} needs -x and -y")
        needs_gamma = self.task == "coeff" or self.method == "coeff"
        if needs_gamma and self.gamma is None:
            raise ParseError("coefficient extraction needs --gamma")
        if self.gamma is not None:
            to_vexp(self.gamma)
        allowed = {
            "rpoly": ("R", "Rtilde"),
            "chains": ("P", "Q"),
            "coeff": ("P", "Q"),
            "table": KINDS,
        }.get(self.task)
        if self.kind is not None and (allowed is None or self.kind not in allowed):
            raise ParseError(f"--kind {self.kind} is not valid for {self.task}")
        if self.all_J and self.task != "verify":
            raise ParseError("--all-J only applies to verify")


def _parse_weights(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise ParseError(f"bad weights {text!r}") from exc


def _split_j(text: str) -> list[str]:
    return [t for t in text.replace(" ", ",").split(",") if t]


# ---------------------------------------------------------------------------
# rendering


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def _json(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def render_table(kind: str, system: CoxeterSystem, J, fmt: str = "text") -> str:
    """All nonzero entries of one kind, ordered by y then x."""
    table = poly_table(system, J, kind)
    return _render_poly_table(table, fmt)


def _render_poly_table(table: PolyTable, fmt: str) -> str:
    sys = table.ctx.sys
    rows = [(format_element(sys, x), format_element(sys, y), p) for x, y, p in table.rows()]
    if fmt == "json":
        return _json(
            {
                "system": sys.name,
                "weights": list(sys.weights),
                "J": sorted(table.ctx.J),
                "kind": table.kind,
                "entries": [{"x": x, "y": y, "poly": p.to_json(), "text": str(p)} for x, y, p in rows],
            }
        )
    if fmt == "csv":
        return _csv([["x", "y", "kind", "poly"]] + [[x, y, table.kind, str(p)] for x, y, p in rows])
    wx = max([len(r[0]) for r in rows] + [1])
    wy = max([len(r[1]) for r in rows] + [1])
    return "".join(f"{x:<{wx}}  {y:<{wy}}  {p}\n" for x, y, p in rows)


def _render_elements(sys: CoxeterSystem, elems, fmt: str) -> str:
    rows = [(format_element(sys, w), w.length, sys.weight_of(w)) for w in elems]
    if fmt == "json":
        return _json([{"elem": a, "length": b, "weight": c} for a, b, c in rows])
    if fmt == "csv":
        return _csv([["elem", "length", "weight"]] + [list(r) for r in rows])
    return "".join(f"{a}\t{b}\t{c}\n" for a, b, c in rows)


def _render_poly(cfg: JobConfig, kind: str, poly) -> str:
    if cfg.format == "json":
        return _json({"x": cfg.x, "y": cfg.y, "kind": kind, "method": cfg.method, "poly": poly.to_json(), "text": str(poly)})
    if cfg.format == "csv":
        return _csv([["x", "y", "kind", "poly"], [cfg.x, cfg.y, kind, str(poly)]])
    return f"{poly}\n"


def _render_coeff(cfg: JobConfig, kind: str, value: int) -> str:
    if cfg.format == "json":
        return _json({"x": cfg.x, "y": cfg.y, "kind": kind, "gamma": cfg.gamma, "coeff": value})
    if cfg.format == "csv":
        return _csv([["x", "y", "kind", "gamma", "coeff"], [cfg.x, cfg.y, kind, cfg.gamma, value]])
    return f"{value}\n"


def _render_chains(cfg: JobConfig, report: dict) -> str:
    from .laurent import LaurentPoly

    if cfg.format == "json":
        return _json(report)
    rows = [(" < ".join(c["entries"]), str(LaurentPoly.from_json(c["scriptR"]))) for c in report["chains"]]
    total = str(LaurentPoly.from_json(report["sum"]))
    if cfg.format == "csv":
        return _csv([["chain", "poly"]] + [list(r) for r in rows] + [["sum", total]])
    return "".join(f"{a}: {b}\n" for a, b in rows) + f"sum: {total}\n"


# ---------------------------------------------------------------------------
# dispatch


def _verify(cfg: JobConfig, system: CoxeterSystem) -> tuple[str, bool]:
    subsets = all_subsets(system) if cfg.all_J else [gen_subset(system, cfg.J)]
    ok = True
    blocks = []
    for J in subsets:
        results = run_suites(get_module(system, J), cfg.max_gap, cfg.vanish_gap)
        ok = ok and all(r.passed for r in results)
        blocks.append((J, results))
    if cfg.format == "json":
        doc = {
            "system": system.name,
            "weights": list(system.weights),
            "passed": ok,
            "runs": [
                {"J": sorted(J), "checks": [asdict(r) for r in results]} for J, results in blocks
            ],
        }
        return _json(doc), ok
    if cfg.format == "csv":
        rows = [["J", "check", "passed", "checked", "counterexample", "note"]]
        for J, results in blocks:
            for r in results:
                rows.append([format_gens(J), r.name, r.passed, r.checked, r.counterexample or "", r.note or ""])
        return _csv(rows), ok
    out = []
    for J, results in blocks:
        out.append(f"{system.name} weights={','.join(map(str, system.weights))} J={{{format_gens(J)}}}\n")
        out += [f"  {r.line()}\n" for r in results]
    out.append("ALL PASS\n" if ok else "VERIFY FAILED\n")
    return "".join(out), ok


def execute(cfg: JobConfig) -> tuple[str, int]:
    """Run one job and return (rendered output, exit status); raises WKLError."""
    cfg.validate()
    system = new_system(cfg.type, cfg.weights)
    if cfg.task == "group":
        return _render_elements(system, system.elements(), cfg.format), EXIT_OK
    if cfg.task == "verify":
        text, ok = _verify(cfg, system)
        return text, EXIT_OK if ok else EXIT_VERIFY
    ctx = get_module(system, cfg.J)
    if cfg.task == "dj":
        return _render_elements(system, ctx.dj, cfg.format), EXIT_OK
    if cfg.task == "table":
        return render_table(cfg.kind or "P", system, ctx.J, cfg.format), EXIT_OK
    x = parse_element(system, cfg.x)
    y = parse_element(system, cfg.y)
    ctx.check(x, y)
    if cfg.task == "rpoly":
        kind = cfg.kind or "R"
        f = r_poly if kind == "R" else r_tilde
        return _render_poly(cfg, kind, f(ctx, None, x, y)), EXIT_OK
    if cfg.task == "chains":
        return _render_chains(cfg, chain_report(ctx, None, x, y, cfg.kind or "P")), EXIT_OK
    kind = cfg.kind or ("Q" if cfg.task == "qpoly" else "P")
    if cfg.task == "coeff" or cfg.method == "coeff":
        f = coeff_p if kind == "P" else coeff_q
        return _render_coeff(cfg, kind, f(ctx, None, x, y, cfg.gamma)), EXIT_OK
    if kind == "P":
        poly = p_poly(ctx, None, x, y) if cfg.method == "recursive" else p_via_multichains(ctx, None, x, y)
    else:
        poly = q_poly(ctx, None, x, y) if cfg.method == "recursive" else q_via_multichains(ctx, None, x, y)
    return _render_poly(cfg, kind, poly), EXIT_OK


def run(cfg: JobConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or _sys.stdout
    stderr = stderr or _sys.stderr
    try:
        text, status = execute(cfg)
    except ParseError as exc:
        print(f"wkl: usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except MathError as exc:
        print(f"wkl: math error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_MATH
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if status == EXIT_VERIFY:
        print(f"wkl: {VerifyFailed.__doc__}", file=stderr)
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wkl", description="Weighted parabolic Kazhdan-Lusztig polynomials.")
    p.add_argument("task", nargs="?", choices=TASKS)
    p.add_argument("--config", help="JSON job document; explicit flags override its fields")
    p.add_argument("--type", help='system descriptor, e.g. A3, B2, D4, "I2(5)", A1xA2')
    p.add_argument("--weights", help="comma separated generator weights")
    p.add_argument("-J", dest="J", help='generators of J, e.g. "s1,s3" or ""')
    p.add_argument("--all-J", dest="all_J", action="store_true", default=None, help="verify: every subset J")
    p.add_argument("-x")
    p.add_argument("-y")
    p.add_argument("--gamma", help='exponent as "k" or "k/2"')
    p.add_argument("--method", choices=METHODS)
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--output", "-o")
    p.add_argument("--max-gap", dest="max_gap", type=int, help="verify: cap l(y)-l(x) for chain checks")
    p.add_argument("--vanish-gap", dest="vanish_gap", type=int, help="verify: cap for over-enumeration (default 3)")
    return p


def config_from_args(ns: argparse.Namespace) -> JobConfig:
    doc: dict = {}
    if ns.config:
        try:
            with open(ns.config, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read config {ns.config}: {exc}") from exc
        if not isinstance(doc, dict):
            raise ParseError("config must be a JSON object")
    for name in ("task", "type", "weights", "J", "all_J", "x", "y", "gamma", "method", "kind", "format", "output", "max_gap", "vanish_gap"):
        value = getattr(ns, name)
        if value is not None:
            doc[name] = value
    return JobConfig.from_dict(doc)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(ns)
    except ParseError as exc:
        print(f"wkl: usage error: {exc}", file=_sys.stderr)
        return EXIT_USAGE
    except WKLError as exc:  # pragma: no cover
        print(f"wkl: error: {exc}", file=_sys.stderr)
        return EXIT_MATH
    return run(cfg)


if __name__ == "__main__":  # pragma: no cover
    _sys.exit(main())
