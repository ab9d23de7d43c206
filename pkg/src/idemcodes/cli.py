"""Command-line front end.

    idemcodes ssp|wedderburn|idempotents|codes|search --group SPEC --field gf(P^K) [options]

Every option can also be set through an ``IDEMCODES_<NAME>`` environment
variable (``IDEMCODES_GROUP``, ``IDEMCODES_BUDGET``, ...); flags win.
Exit status: 0 success, 2 when every component was unsupported, 1 on errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .codes import DEFAULT_BUDGET, code_search, export_generator_matrix
from .errors import BadParameters, CharacteristicDividesOrder, IdemcodesError, ParseError
from .fields import FieldCtx, factorize, get_field
from .groups import Group, cyclic_group, group_direct, group_metacyclic, is_nilpotent, load_cayley
from .idempotents import primitive_idempotents_nilpotent, primitive_idempotents_trivial_twisting
from .shoda import strong_shoda_pairs, wedderburn_report

COMMANDS = ("ssp", "wedderburn", "idempotents", "codes", "search")
ENV_PREFIX = "IDEMCODES_"


# -- group spec mini-language ---------------------------------------------------------------


class _Parser:
    """spec := cyclic(INT) | metacyclic(INT,INT,INT) | direct(spec,spec) | cayley(PATH)"""

    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def fail(self, msg: str):
        raise ParseError(msg, self.text, self.pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch: str) -> None:
        self.skip()
        if self.text[self.pos : self.pos + 1] != ch:
            self.fail(f"expected {ch!r}")
        self.pos += 1

    def name(self) -> str:
        self.skip()
        m = re.compile(r"[a-z]+").match(self.text, self.pos)
        if not m:
            self.fail("expected a constructor name")
        self.pos = m.end()
        return m.group()

    def integer(self) -> int:
        self.skip()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.fail("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def path(self) -> str:
        self.skip()
        depth, start = 0, self.pos
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c == "(":
                depth += 1
            elif c == ")":
                if depth == 0:
                    break
                depth -= 1
            self.pos += 1
        out = self.text[start : self.pos].strip()
        if not out:
            self.fail("expected a path")
        return out

    def spec(self) -> tuple[Group, str]:
        start = self.pos
        kind = self.name()
        self.expect("(")
        if kind == "cyclic":
            n = self.integer()
            self.expect(")")
            return self._build(start, lambda: cyclic_group(n)), f"cyclic({n})"
        if kind == "metacyclic":
            m = self.integer()
            self.expect(",")
            n = self.integer()
            self.expect(",")
            r = self.integer()
            self.expect(")")
            return self._build(start, lambda: group_metacyclic(m, n, r)), f"metacyclic({m},{n},{r})"
        if kind == "direct":
            A, a = self.spec()
            self.expect(",")
            B, b = self.spec()
            self.expect(")")
            G = group_direct(A, B)
            G.name = f"direct({a},{b})"
            return G, G.name
        if kind == "cayley":
            p = self.path()
            self.expect(")")
            return self._build(start, lambda: load_cayley(resolve_cayley_path(p))), f"cayley({p})"
        self.pos = start
        self.fail(f"unknown constructor {kind!r}")
        raise AssertionError

    def _build(self, start: int, make):
        try:
            return make()
        except BadParameters as exc:
            raise BadParameters(f"{exc} (at position {start})") from exc


def resolve_cayley_path(p: str) -> Path:
    """A path on disk, or else the name of a table shipped with the package."""
    path = Path(p)
    if path.exists():
        return path
    packaged = resources.files("idemcodes") / "data" / p
    if packaged.is_file():
        return Path(str(packaged))
    raise BadParameters(f"Cayley table {p!r} not found")


def parse_group_spec(text: str) -> Group:
    """Group for a spec string; ``G.name`` is the canonical (whitespace-free) form."""
    parser = _Parser(text)
    G, canon = parser.spec()
    parser.skip()
    if parser.pos != len(text):
        parser.fail("trailing input")
    G.name = canon
    return G


def canonical_spec(text: str) -> str:
    return parse_group_spec(text).name


_FIELD_RE = re.compile(r"^\s*(?:gf|GF)\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)\s*$")


def parse_field_spec(text: str) -> FieldCtx:
    """``gf(p)``, ``gf(p^k)`` or ``gf(q)`` with q a prime power."""
    m = _FIELD_RE.match(text)
    if not m:
        raise ParseError("expected gf(P) or gf(P^K)", text, 0)
    base, exp = int(m.group(1)), int(m.group(2) or 1)
    f = factorize(base) if base > 1 else {}
    if len(f) != 1 or exp < 1:
        raise BadParameters(f"{text!r} is not a prime power field")
    ((p, e),) = f.items()
    return get_field(p, e * exp)


def field_name(F: FieldCtx) -> str:
    return f"gf({F.p}^{F.k})" if F.k > 1 else f"gf({F.p})"


# -- configuration ---------------------------------------------------------------------------


@dataclass
class RunConfig:
    command: str
    group_spec: str
    field: str
    budget: int = DEFAULT_BUDGET
    output: str = "text"
    export_path: str | None = None
    threads: int = 1
    strategy: str = "all_idempotents"
    method: str = "gray"
    normal_elements: int | None = 4
    pair_method: str = "general"
    dump_idempotents: bool = False
    timing: bool = True
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise BadParameters(f"unknown command {self.command!r}")
        if self.output not in ("text", "json"):
            raise BadParameters("output must be text or json")
        for name, allowed in (("strategy", ("all_components", "all_idempotents")), ("method", ("gray", "exhaustive")),
                              ("pair_method", ("general", "metabelian", "auto"))):
            if getattr(self, name) not in allowed:
                raise BadParameters(f"{name} must be one of {', '.join(allowed)}")
        if self.budget < 1 or self.threads < 1:
            raise BadParameters("budget and threads must be positive")
        if self.normal_elements is not None and self.normal_elements < 1:
            raise BadParameters("normal-elements must be positive or 'all'")


def _env(name: str, default):
    return os.environ.get(ENV_PREFIX + name.upper(), default)


def _normal_arg(text: str) -> int | None:
    if str(text).lower() == "all":
        return None
    return int(text)


class _ArgParser(argparse.ArgumentParser):
    """Usage errors become BadParameters so they exit with status 1, not argparse's 2."""

    def error(self, message: str):
        raise BadParameters(message)


def build_parser() -> argparse.ArgumentParser:
    p = _ArgParser(prog="idemcodes", description="Minimal left group codes from primitive idempotents.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--group", default=_env("group", None), help="cyclic(n) | metacyclic(m,n,r) | direct(A,B) | cayley(path)")
    p.add_argument("--field", default=_env("field", None), help="gf(p) or gf(p^k)")
    p.add_argument("--budget", type=int, default=_env("budget", str(DEFAULT_BUDGET)))
    p.add_argument("--output", choices=("text", "json"), default=_env("output", "text"))
    p.add_argument("--export", default=_env("export", None), help="directory for generator matrices")
    p.add_argument("--threads", type=int, default=_env("threads", "1"))
    p.add_argument("--strategy", choices=("all_components", "all_idempotents"), default=_env("strategy", "all_idempotents"))
    p.add_argument("--method", choices=("gray", "exhaustive"), default=_env("method", "gray"))
    p.add_argument("--normal-elements", type=_normal_arg, default=_env("normal_elements", "4"),
                   help="normal elements tried per component (integer or 'all')")
    p.add_argument("--pair-method", choices=("general", "metabelian", "auto"), default=_env("pair_method", "general"))
    p.add_argument("--dump-idempotents", action="store_true", default=_env("dump_idempotents", "") not in ("", "0"))
    p.add_argument("--no-timing", action="store_true", default=_env("no_timing", "") not in ("", "0"))
    return p


def config_from_args(argv: list[str] | None = None) -> RunConfig:
    a = build_parser().parse_args(argv)
    if not a.group or not a.field:
        raise BadParameters("--group and --field are required (or IDEMCODES_GROUP / IDEMCODES_FIELD)")
    return RunConfig(
        command=a.command,
        group_spec=a.group,
        field=a.field,
        budget=a.budget,
        output=a.output,
        export_path=a.export,
        threads=a.threads,
        strategy=a.strategy,
        method=a.method,
        normal_elements=a.normal_elements,
        pair_method=a.pair_method,
        dump_idempotents=a.dump_idempotents,
        timing=not a.no_timing,
    )


# -- pipeline ------------------------------------------------------------------------------------


def _indices(xs) -> str:
    return ",".join(map(str, xs))


def _run_ssp(G, F, cfg, rep, lines) -> int:
    pairs = strong_shoda_pairs(G, F, method=cfg.pair_method)
    rep["pairs"] = [
        {"H": list(p.H.elems), "K": list(p.K.elems), "index_HK": p.m, "o": p.o,
         "E": list(p.E.elems) if p.E is not None else None,
         "twisting": None if p.twist is None else ("trivial" if p.twist.trivial else "nontrivial")}
        for p in pairs
    ]
    for p in pairs:
        lines.append(p.describe())
    return 0


def _run_wedderburn(G, F, cfg, rep, lines) -> int:
    w = wedderburn_report(G, F, strong_shoda_pairs(G, F, method=cfg.pair_method))
    rep["complete"] = w.complete
    rep["total_dim"] = w.total_dim
    rep["components"] = [
        {"pair": {"H": list(c.pair.H.elems), "K": list(c.pair.K.elems)}, "class": list(c.cls.residues),
         "matrix_size": c.matrix_size, "field_order": c.field_order, "dim": c.component_dim}
        for c in w.components
    ]
    for c in w.components:
        lines.append(f"M_{c.matrix_size}(GF({c.field_order}))  dim={c.component_dim}  H={_indices(c.pair.H.elems)} "
                     f"K={_indices(c.pair.K.elems)} class={c.cls}")
    lines.append(f"total dim {w.total_dim} of {G.n}; complete={w.complete}")
    return 0 if w.complete else 2


def _run_idempotents(G, F, cfg, rep, lines) -> int:
    w = wedderburn_report(G, F, strong_shoda_pairs(G, F, method=cfg.pair_method))
    comps = []
    supported = 0
    for c in w.components:
        entry = {"pair": {"H": list(c.pair.H.elems), "K": list(c.pair.K.elems)}, "class": list(c.cls.residues),
                 "matrix_size": c.matrix_size, "field_order": c.field_order, "construction": None, "skipped": None,
                 "notes": [], "idempotents": []}
        lines.append(f"component M_{c.matrix_size}(GF({c.field_order})) H={_indices(c.pair.H.elems)} "
                     f"K={_indices(c.pair.K.elems)} class={c.cls}")
        try:
            if c.pair.twist is not None and c.pair.twist.trivial:
                ps = primitive_idempotents_trivial_twisting(G, c.pair, c.cls, F)
            elif is_nilpotent(G):
                ps = primitive_idempotents_nilpotent(G, c.pair, c.cls, F)
            else:
                ps = None
                entry["skipped"] = "nontrivial twisting outside the nilpotent construction"
        except IdemcodesError as exc:
            ps = None
            entry["skipped"] = f"{exc.code}: {exc}"
        if ps is None:
            lines.append(f"  skipped: {entry['skipped']}")
        else:
            supported += 1
            entry["construction"] = ps.construction
            entry["notes"] = list(ps.notes)
            for e, prov in zip(ps.idems, ps.provenance):
                entry["idempotents"].append({"element": e.format(), "provenance": list(prov)})
                lines.append(f"  {list(prov)}  {e.format()}")
        comps.append(entry)
    rep["components"] = comps
    return 0 if supported else 2


def _run_codes(G, F, cfg, rep, lines) -> int:
    pairs = strong_shoda_pairs(G, F, method=cfg.pair_method)
    report = code_search(G, F, cfg.strategy, pairs=pairs, normal_elements=cfg.normal_elements, method=cfg.method,
                         budget=cfg.budget, threads=cfg.threads, group_name=G.name)
    rep.update(report.to_json(timing=cfg.timing))
    if cfg.dump_idempotents:
        _attach_idempotents(G, F, rep, report)
    if cfg.command == "codes":
        for r in report.results:
            c = r.component
            head = f"M_{c.matrix_size}(GF({c.field_order})) H={_indices(c.pair.H.elems)} K={_indices(c.pair.K.elems)} class={c.cls}"
            if r.skipped:
                lines.append(f"{head}  skipped: {r.skipped}")
                continue
            lines.append(f"{head}  construction={r.construction}")
            for code in r.codes:
                d = f"<={code.d}" if code.d_is_bound else str(code.d)
                lines.append(f"  [{code.length},{code.k},{d}] idempotent={code.provenance['idempotent_index']} "
                             f"variant={code.provenance['variant']}")
    else:
        lines.append(f"group {G.name} (order {G.n}) over {field_name(F)}")
        for k, d in report.best().items():
            lines.append(f"  k={k} d={d}")
        for r in report.results:
            if r.skipped:
                lines.append(f"  skipped component M_{r.component.matrix_size}(GF({r.component.field_order})): {r.skipped}")
        if cfg.timing:
            total = sum(report.timing.values())
            lines.append(f"  time {total * 1000:.0f} ms")
    if cfg.export_path:
        _export(report, Path(cfg.export_path))
    return 0 if report.supported else 2


def _attach_idempotents(G, F, rep, report) -> None:
    for entry, r in zip(rep["components"], report.results):
        if r.skipped:
            continue
        comp = r.component
        if r.construction == "trivial_twisting":
            ps = primitive_idempotents_trivial_twisting(G, comp.pair, comp.cls, F)
        else:
            ps = primitive_idempotents_nilpotent(G, comp.pair, comp.cls, F)
        entry["idempotents"] = [{"element": e.format(), "provenance": list(p)} for e, p in zip(ps.idems, ps.provenance)]


def _export(report, directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for ci, r in enumerate(report.results):
        for code in r.codes:
            p = code.provenance
            name = f"code_c{ci}_v{p['variant']}_e{p['idempotent_index']}.txt"
            (directory / name).write_text(export_generator_matrix(code))


_HANDLERS = {
    "ssp": _run_ssp,
    "wedderburn": _run_wedderburn,
    "idempotents": _run_idempotents,
    "codes": _run_codes,
    "search": _run_codes,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns (exit status, rendered output)."""
    rep: dict = {"command": cfg.command, "group": cfg.group_spec, "field": cfg.field, "order": 0, "status": "error"}
    lines: list[str] = []
    try:
        cfg.validate()
        G = parse_group_spec(cfg.group_spec)
        F = parse_field_spec(cfg.field)
        rep.update(group=G.name, field=field_name(F), order=G.n)
        if math.gcd(G.n, F.p) != 1:
            raise CharacteristicDividesOrder(f"characteristic {F.p} divides |G| = {G.n}")
        rep["ordering"] = G.labels
        t0 = time.perf_counter()
        status = _HANDLERS[cfg.command](G, F, cfg, rep, lines)
        if cfg.timing and cfg.command not in ("codes", "search"):
            rep["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
        rep["group"], rep["field"] = G.name, field_name(F)
        rep["status"] = "ok" if status == 0 else "unsupported"
    except IdemcodesError as exc:
        rep["status"] = "error"
        rep["error"] = {"code": exc.code, "message": str(exc)}
        lines = [f"error [{exc.code}]: {exc}"]
        status = 1
    if cfg.output == "json":
        return status, json.dumps(rep, indent=2, sort_keys=True)
    return status, "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
    except IdemcodesError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1
    status, out = run(cfg)
    print(out, file=sys.stdout if status != 1 or cfg.output == "json" else sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
