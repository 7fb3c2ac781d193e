"""Command-line interface: ``mzvkit {eval,product,regularize,verify,series}``.

Data goes to stdout, diagnostics to stderr. Exit codes: 0 success,
1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Optional, Sequence

from .index import Index, enumerate_indices, parse_index, stuffle
from .linear import DomainError
from .numerics import MZVCache, default_cache, eval_index_sum, eval_mzv, eval_star, set_default_cache
from .regularization import shuffle_regularize, stuffle_regularize
from .verify import (
    Report,
    verify_binomial_identities,
    verify_double_shuffle,
    verify_duality,
    verify_genfunc,
    verify_genfunc_symmetry,
    verify_regpoly_sum,
    verify_stuffle_collapse,
    verify_stuffle_expansion,
    verify_thm1,
    verify_thm2,
    verify_thm3,
)
from .words import Word, WordSum, index_to_word, shuffle, word_to_index

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

IDENTITIES = ("thm1", "thm2", "regpoly-sum", "thm3", "genfunc", "double-shuffle", "stuffle-expansion", "duality")
DEFAULT_MAX_WEIGHT = {
    "thm1": 12,
    "thm2": 10,
    "regpoly-sum": 10,
    "thm3": 12,
    "genfunc": 10,
    "double-shuffle": 7,
    "stuffle-expansion": 4,
    "duality": 12,
}
STUFFLE_MAX_R = 6
SERIES = ("T", "thm3-rhs", "genfunc")


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    digits: int = 30
    max_weight: Optional[int] = None
    format: str = "text"
    cache_dir: Optional[str] = None
    args: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.digits < 8:
            raise UsageError(f"--digits must be at least 8, got {self.digits}")
        if self.format not in ("text", "json", "csv"):
            raise UsageError(f"unknown format {self.format!r}")


_WORD_RE = re.compile(r"^[xy]+$|^ε$")


def parse_operand(text: str):
    """An index such as ``(1,2)`` / ``1,2`` / ``()``, or a word such as ``xyy``."""
    s = text.strip()
    if _WORD_RE.match(s):
        return Word.empty() if s == "ε" else Word.parse(s)
    return parse_index(s)


def _to_index(x) -> Index:
    if isinstance(x, Word):
        return Index(()) if x.length == 0 else word_to_index(x)
    return x


def _to_word(x) -> Word:
    if isinstance(x, Index):
        return Word.empty() if not x else index_to_word(x)
    return x


def _common_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--digits", type=int, default=None, help="decimal precision (default 30, minimum 8)")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--cache-dir", default=None, help="directory of the persistent value cache (or $MZV_CACHE_DIR)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="mzvkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate ζ(k) or ζ*(k)")
    p.add_argument("operand")
    p.add_argument("--star", action="store_true", help="evaluate the zeta-star value")

    p = sub.add_parser("product", parents=[common], help="expand a shuffle or stuffle product")
    p.add_argument("left")
    p.add_argument("right")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--shuffle", dest="kind", action="store_const", const="shuffle")
    g.add_argument("--stuffle", dest="kind", action="store_const", const="stuffle")

    p = sub.add_parser("regularize", parents=[common], help="regularized polynomial of a divergent index")
    p.add_argument("operand")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--shuffle", dest="kind", action="store_const", const="shuffle")
    g.add_argument("--stuffle", dest="kind", action="store_const", const="stuffle")

    p = sub.add_parser("verify", parents=[common], help="run an identity check")
    p.add_argument("identity", choices=IDENTITIES)
    p.add_argument("--max-weight", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--k", type=int, default=None)

    p = sub.add_parser("series", parents=[common], help="dump a generating series")
    p.add_argument("name", choices=SERIES)
    p.add_argument("--max-weight", type=int, default=None)
    return parser


# ---------------------------------------------------------------------------
# commands


def cmd_eval(cfg: CliConfig, out) -> int:
    x = _to_index(parse_operand(cfg.args["operand"]))
    if not x.admissible:
        raise DomainError(f"{x} is non-admissible; use regularize")
    value = eval_star(x, cfg.digits) if cfg.args.get("star") else eval_mzv(x, cfg.digits)
    err = f"{float(value.abs_error_bound):.1e}"
    if cfg.format == "json":
        rec = {"index": list(x), "star": bool(cfg.args.get("star")), "digits": cfg.digits,
               "value": value.to_string(cfg.digits), "abs_error_bound": err}
        print(json.dumps(rec), file=out)
    elif cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["index", "star", "digits", "value", "abs_error_bound"])
        w.writerow([str(x), int(bool(cfg.args.get("star"))), cfg.digits, value.to_string(cfg.digits), err])
    else:
        print(f"{value.to_string(cfg.digits)} ± {err}", file=out)
    return EXIT_OK


def cmd_product(cfg: CliConfig, out) -> int:
    u, v = parse_operand(cfg.args["left"]), parse_operand(cfg.args["right"])
    kind = cfg.args.get("kind") or ("shuffle" if isinstance(u, Word) and isinstance(v, Word) else "stuffle")
    if kind == "shuffle":
        res = shuffle(_to_word(u), _to_word(v))
        text = res.render()
        items = [(str(w) if w.length else "", c) for w, c in res._sorted_items()]
    else:
        res = stuffle(_to_index(u), _to_index(v))
        text = res.render()
        items = [(str(k), c) for k, c in res._sorted_items()]
    if cfg.format == "json":
        terms = [{"term": t, "coeff_num": getattr(c, "numerator", c), "coeff_den": getattr(c, "denominator", 1)}
                 for t, c in items]
        print(json.dumps({"product": kind, "terms": terms}), file=out)
    elif cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["term", "coeff"])
        for t, c in items:
            w.writerow([t, str(c)])
    else:
        print(text, file=out)
    return EXIT_OK


def cmd_regularize(cfg: CliConfig, out) -> int:
    x = parse_operand(cfg.args["operand"])
    kind = cfg.args.get("kind") or "shuffle"
    poly = shuffle_regularize(_to_word(x)) if kind == "shuffle" else stuffle_regularize(_to_index(x))
    numeric = None
    if cfg.args.get("numeric"):
        numeric = [eval_index_sum(c, cfg.digits).to_string(cfg.digits) for c in poly.coeffs]
    if cfg.format == "json":
        rec = {"regularization": kind, "input": str(x), "poly": poly.to_json()}
        if numeric is not None:
            rec["numeric"] = numeric
        print(json.dumps(rec, ensure_ascii=False), file=out)
    elif cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["power", "index", "coeff", "numeric"])
        for power, c in enumerate(poly.coeffs):
            for idx, q in c._sorted_items():
                w.writerow([power, str(idx), str(q), numeric[power] if numeric else ""])
    else:
        print(poly.render(), file=out)
        if numeric is not None:
            for power, v in enumerate(numeric):
                print(f"T^{power}: {v}", file=out)
    return EXIT_OK


def _check_positive(name: str, value: Optional[int]) -> None:
    if value is not None and value < 1:
        raise UsageError(f"--{name} must be at least 1, got {value}")


def _rk_pairs(cfg: CliConfig, max_weight: int) -> List[tuple]:
    r, k = cfg.args.get("r"), cfg.args.get("k")
    pairs = []
    for w in range(2, max_weight + 1):
        for rr in range(1, w):
            kk = w - rr
            if (r is None or rr == r) and (k is None or kk == k):
                pairs.append((rr, kk))
    if r is not None and k is not None and (r, k) not in pairs:
        pairs.append((r, k))
    return sorted(pairs)


def generate_reports(cfg: CliConfig) -> Iterator[Report]:
    ident = cfg.args["identity"]
    r, k = cfg.args.get("r"), cfg.args.get("k")
    _check_positive("r", r)
    _check_positive("k", k)
    mw = cfg.max_weight if cfg.max_weight is not None else DEFAULT_MAX_WEIGHT[ident]
    d = cfg.digits
    if ident in ("thm1", "thm2", "regpoly-sum"):
        fn = {"thm1": verify_thm1, "thm2": verify_thm2, "regpoly-sum": verify_regpoly_sum}[ident]
        for rr, kk in _rk_pairs(cfg, mw):
            yield fn(rr, kk, d)
    elif ident == "thm3":
        if mw < 2:
            raise UsageError("--max-weight must be at least 2")
        yield verify_thm3(mw, d)
    elif ident == "genfunc":
        if mw < 2:
            raise UsageError("--max-weight must be at least 2")
        yield verify_genfunc(mw, d)
        yield verify_genfunc_symmetry(mw, d)
    elif ident == "duality":
        for w in range(2, mw + 1):
            for idx in enumerate_indices(w):
                if idx.admissible:
                    yield verify_duality(idx, d)
    elif ident == "double-shuffle":
        adm = [i for w in range(2, mw + 1) for i in enumerate_indices(w) if i.admissible]
        for u in adm:
            for v in adm:
                if u.weight + v.weight <= mw and u <= v:
                    yield verify_double_shuffle(u, v, d)
    elif ident == "stuffle-expansion":
        rs = [r] if r is not None else list(range(2, STUFFLE_MAX_R + 1))
        for rr in rs:
            for w in range(1, mw + 1):
                for a in enumerate_indices(w):
                    if len(a) > rr - 1:
                        continue
                    for i in range(rr - len(a)):
                        yield verify_stuffle_expansion(a, i, rr)
                    yield verify_stuffle_collapse(a, rr)
        yield verify_binomial_identities(6, 6)


CSV_HEADER = ["identity", "params", "slot", "lhs", "rhs", "abs_error", "tolerance", "pass", "millis"]


def _params_text(rep: Report) -> str:
    return " ".join(f"{k}={v}" for k, v in rep.params.items() if k != "digits")


def emit_reports(reports: Iterable[Report], fmt: str, out) -> bool:
    all_ok = True
    writer = None
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_HEADER)
    for rep in reports:
        all_ok &= rep.passed
        if fmt == "json":
            print(json.dumps(rep.to_json(), ensure_ascii=False), file=out)
        elif fmt == "csv":
            rec = rep.to_json()
            params = json.dumps({k: v for k, v in rec["params"].items() if k != "slots"}, separators=(",", ":"))
            for slot, a, b, e in rep.rows():
                slot_txt = "" if slot is None else (",".join(map(str, slot)) if isinstance(slot, tuple) else str(slot))
                writer.writerow([rep.identity, params, slot_txt, rep._fmt(a), rep._fmt(b),
                                 _err_txt(e), rec["tolerance"], int(rep.passed), rec["millis"]])
        else:
            rec = rep.to_json()
            err = rec["abs_error"]
            if isinstance(err, list):
                worst = max(rep.abs_error) if rep.abs_error else 0
                err = f"max {_err_txt(worst)} over {len(rep.abs_error)}"
            print(f"{'PASS' if rep.passed else 'FAIL'} {rep.identity} {_params_text(rep)} "
                  f"|lhs-rhs|={err} tol={rec['tolerance']} ({rec['millis']:.1f} ms)", file=out)
        out.flush()
    return all_ok


def _err_txt(e) -> str:
    from .verify import _fmt_err

    return _fmt_err(e)


def cmd_verify(cfg: CliConfig, out) -> int:
    ok = emit_reports(generate_reports(cfg), cfg.format, out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_series(cfg: CliConfig, out) -> int:
    from .series import build_gamma_genfunc, build_rhs_thm3, build_T_series

    name = cfg.args["name"]
    mw = cfg.max_weight if cfg.max_weight is not None else 12
    if mw < 2:
        raise UsageError("--max-weight must be at least 2")
    if name == "genfunc":
        g = build_gamma_genfunc(mw, cfg.digits)
        rows = [((i, d - i), g[(i, d - i)]) for d in range(mw + 1) for i in range(d, -1, -1)]
    else:
        s = build_T_series(mw, cfg.digits) if name == "T" else build_rhs_thm3(mw, cfg.digits)
        rows = [((n,), s[n]) for n in range(mw + 1)]
    if cfg.format == "json":
        recs = [{"degree": list(deg), "coeff": v.to_string(cfg.digits)} for deg, v in rows]
        print(json.dumps({"series": name, "order": mw, "coefficients": recs}), file=out)
    elif cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["degree_x", "degree_y", "coeff"] if name == "genfunc" else ["degree", "coeff"])
        for deg, v in rows:
            w.writerow(list(deg) + [v.to_string(cfg.digits)])
    else:
        for deg, v in rows:
            print(" ".join(map(str, deg)), v.to_string(cfg.digits), file=out)
    return EXIT_OK


COMMANDS = {
    "eval": cmd_eval,
    "product": cmd_product,
    "regularize": cmd_regularize,
    "verify": cmd_verify,
    "series": cmd_series,
}


def make_config(ns: argparse.Namespace) -> CliConfig:
    args = {k: v for k, v in vars(ns).items() if k not in ("command", "digits", "format", "cache_dir", "max_weight")}
    args["numeric"] = ns.digits is not None
    return CliConfig(
        command=ns.command,
        digits=30 if ns.digits is None else ns.digits,
        max_weight=getattr(ns, "max_weight", None),
        format=ns.format,
        cache_dir=ns.cache_dir,
        args=args,
    )


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        cfg = make_config(ns)
    except UsageError as exc:
        print(f"mzvkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    cache = None
    if cfg.cache_dir:
        cache = MZVCache.in_dir(cfg.cache_dir)
        set_default_cache(cache)
    else:
        cache = default_cache()
    try:
        code = COMMANDS[cfg.command](cfg, out)
    except (UsageError, DomainError) as exc:
        print(f"mzvkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if cache.path is not None:
            cache.save()
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
