"""Command-line interface.

Every subcommand prints one JSON document on stdout (``--pretty`` switches
to an indented key/value rendering).  Exit codes: 0 success, 2 invalid
input or missing constants, 3 unsupported field, 4 resource limit.

Defaults for precision and resource ceilings can be put in a key=value file
named by ``--config`` or the ``HYPERSHAF_CONFIG`` environment variable::

    precision = 192
    max_work = 100000000
    max_grid = 8000000000
    jobs = 2
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .bounds import (
    DEFAULT_PREC,
    BoundInputs,
    MissingConstantError,
    T_guarantees,
    corollary_count_bound,
    effgen_bound,
    faltings_bound,
    omega_evgy,
    omega_gyoryyu,
    propeff_i_bound,
    propgeom_disc_bound,
    regulator_bound,
    theorem_bound_i,
    theorem_bound_ii,
    wp_count_bound,
)
from .limits import ResourceLimitError
from .numberfield import QQ, ExactLog, PlaceSet, UnsupportedFieldError, factorization
from .parsing import parse_element, parse_field, parse_form, parse_places, parse_poly

EXIT_OK, EXIT_INVALID, EXIT_UNSUPPORTED, EXIT_RESOURCE = 0, 2, 3, 4

BOUND_PARTS = (
    "i",
    "ii",
    "corollary",
    "wp",
    "faltings",
    "propgeom",
    "effgen",
    "regulator",
    "T",
    "omega-gy",
    "omega-evgy",
    "propeff",
)
_NEEDS = {
    "ii": ("c6", "c7"),
    "corollary": ("c6", "c7"),
    "omega-gy": ("kappa",),
    "omega-evgy": ("c6", "c7"),
    "propeff": ("h_delta",),
}


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# config
# ---------------------------------------------------------------------------


def load_config(path: str | None) -> dict:
    path = path or os.environ.get("HYPERSHAF_CONFIG")
    if not path:
        return {}
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key = value")
            k, v = (s.strip() for s in line.split("=", 1))
            if k not in ("precision", "max_work", "max_grid", "jobs"):
                raise UsageError(f"{path}:{n}: unknown key {k!r}")
            try:
                out[k] = int(v)
            except ValueError:
                raise UsageError(f"{path}:{n}: {k} must be an integer") from None
    return out


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _places_json(T: PlaceSet) -> list[str]:
    return [str(P) for P in T.sorted()]


def _factor_json(alpha) -> list:
    K = alpha.field
    out = []
    for P, e in factorization(alpha):
        out.append([P.ell if K.is_rational else str(P), e])
    return out


def _sign(alpha) -> int | None:
    if alpha.field.is_rational:
        return 1 if alpha.a > 0 else -1
    return None


def _parse_height_bound(text: str):
    t = text.strip().replace(" ", "")
    for pre in ("log(", "ln("):
        if t.startswith(pre) and t.endswith(")"):
            return ExactLog(Fraction(1), Fraction(t[len(pre) : -1]))
    for pre in ("log", "ln"):
        if t.startswith(pre):
            return ExactLog(Fraction(1), Fraction(t[len(pre) :]))
    try:
        return Fraction(t)
    except ValueError:
        raise UsageError(f"cannot parse height bound {text!r}") from None


def _frac_opt(x):
    if x is None:
        return None
    try:
        return Fraction(x)
    except ValueError:
        raise UsageError(f"not a rational number: {x!r}") from None


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_bounds(args, cfg) -> dict:
    K = parse_field(args.field)
    S = parse_places(args.S, K)
    prec = args.precision
    c6, c7, kappa = _frac_opt(args.c6), _frac_opt(args.c7), _frac_opt(args.kappa)
    illustrative = bool(args.illustrative_constants)
    if illustrative:
        c6 = Fraction(3) if c6 is None else c6
        c7 = Fraction(1) if c7 is None else c7
        kappa = Fraction(1) if kappa is None else kappa
    inp = BoundInputs.from_places(S, args.genus, c6=c6, c7=c7, kappa=kappa, illustrative=illustrative)
    g, d, DK = inp.g, inp.d, inp.D_K
    norms = list(inp.norms)
    have = {"c6": c6 is not None, "c7": c7 is not None, "kappa": kappa is not None, "h_delta": args.h_delta is not None}

    def run(part):
        if part == "i":
            return theorem_bound_i(inp, prec).to_json()
        if part == "ii":
            return theorem_bound_ii(inp, prec).to_json()
        if part == "corollary":
            return corollary_count_bound(inp, prec).to_json()
        if part == "wp":
            return wp_count_bound(inp, prec).to_json()
        if part == "faltings":
            return faltings_bound(inp, prec).to_json()
        if part == "propgeom":
            return propgeom_disc_bound(g, inp.s, d, DK, norms, prec).to_json()
        if part == "effgen":
            return effgen_bound(inp.s, d, DK, norms, prec).to_json()
        if part == "regulator":
            return regulator_bound(d, DK, norms, prec).to_json()
        if part == "T":
            tg = T_guarantees(inp, prec)
            return {
                "formula": "T_guarantees",
                "t_max": tg["t_max"],
                "N_T_max": tg["N_T_max"],
                "p_T_max": tg["p_T_max"],
                "log_N_T_max": tg["log_N_T_max"].to_json(),
            }
        if part == "omega-gy":
            n = 2 * g + 1
            m = n * (n - 1) * (n - 2)
            return omega_gyoryyu(
                m, d, inp.s, inp.N_S, kappa, None, norms, DK, prec, illustrative
            ).to_json()
        if part == "omega-evgy":
            n = 2 * g + 2
            return omega_evgy(n, d, inp.s, max(inp.p, 1), DK, c6, c7, prec, illustrative).to_json()
        if part == "propeff":
            if args.h_delta is None:
                raise MissingConstantError("part propeff needs --h-delta")
            return propeff_i_bound(2 * g + 1, d, inp.s, inp.N_S, DK, _frac_opt(args.h_delta), prec).to_json()
        raise UsageError(f"unknown part {part!r}")

    parts = BOUND_PARTS if args.part == "all" else (args.part,)
    results, skipped = {}, {}
    for part in parts:
        missing = [k for k in _NEEDS.get(part, ()) if not have[k]]
        if missing and args.part == "all":
            skipped[part] = "missing " + ", ".join(missing)
            continue
        if missing:
            raise MissingConstantError(
                f"part {part} needs {', '.join(missing)}; pass them or --illustrative-constants"
            )
        results[part] = run(part)
    out = {
        "command": "bounds",
        "version": __version__,
        "field": str(K),
        "S": _places_json(S),
        "genus": g,
        "precision_bits": prec,
        "inputs": inp.echo(),
        "certified": not illustrative,
        "results": results,
    }
    if skipped:
        out["skipped"] = skipped
    if illustrative:
        out["watermark"] = "ILLUSTRATIVE CONSTANTS (c6=3, c7=1, kappa=1): NOT CERTIFIED"
    return out


def cmd_extend_pid(args, cfg) -> dict:
    from .classgroup import extend_to_pid_report

    K = parse_field(args.field)
    S = parse_places(args.S, K)
    rep = extend_to_pid_report(K, S)
    return {
        "command": "extend-pid",
        "version": __version__,
        "field": str(K),
        "S": _places_json(S),
        "added": [{"prime": str(P), "norm": P.norm} for P in rep.added],
        "T": _places_json(rep.T),
        "h_K": rep.h_K,
        "h_S": rep.h_S,
        "checks": rep.checks,
        "ok": rep.ok,
    }


def cmd_disc(args, cfg) -> dict:
    from .weierstrass import model_discriminant, model_discriminant_via_form

    K = parse_field(args.field)
    f = parse_poly(args.poly, K)
    f2 = parse_poly(args.f2, K) if args.f2 else None
    D = model_discriminant(f, f2, args.genus)
    out = {
        "command": "disc",
        "version": __version__,
        "field": str(K),
        "genus": args.genus,
        "f": f.to_strings(),
        "f2": f2.to_strings() if f2 is not None else None,
        "delta": str(D),
        "delta_sign": _sign(D) if D else None,
        "delta_factorization": _factor_json(D) if D else [],
        "separable": bool(D),
    }
    if f2 is None or f2.is_zero():
        out["delta_via_form"] = str(model_discriminant_via_form(f, args.genus))
        out["routes_agree"] = out["delta_via_form"] == out["delta"]
    return out


def cmd_reduce(args, cfg) -> dict:
    from .reduction import UnitBasisU, sl2_reduce_form, u_reduce, unipotent_reduce

    K = parse_field(args.field)
    S = parse_places(args.S, K)
    given = [x for x in (args.poly, args.form, args.delta) if x]
    if len(given) != 1:
        raise UsageError("give exactly one of --poly, --form, --delta")
    out = {"command": "reduce", "version": __version__, "field": str(K), "S": _places_json(S)}
    if args.delta:
        from .classgroup import sunit_group

        if args.genus is None:
            raise UsageError("--delta needs --genus")
        D = parse_element(args.delta, K)
        G = sunit_group(K, S)
        try:
            r = u_reduce(D, UnitBasisU(G, args.genus, not args.even))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        out.update(
            mode="u",
            m=r.m,
            omega=str(r.omega),
            delta=str(r.delta),
            torsion_exponent=r.torsion_exponent,
            exponents=list(r.exponents),
            generators=[str(e) for e in G.generators],
            bound_checked=r.bound_checked,
        )
        return out
    if args.form:
        F = parse_form(args.form, K)
        phi, Fs = sl2_reduce_form(F, S)
        from .forms import disc_form

        out.update(
            mode="sl2",
            input=str(F),
            matrix=phi.entries(),
            reduced=str(Fs),
            coefficients=[str(c) for c in Fs.coeffs],
            delta=str(disc_form(Fs)),
        )
        return out
    f = parse_poly(args.poly, K)
    if args.canonical:
        from .enumerate import canonical_form

        if args.genus is None:
            raise UsageError("--canonical needs --genus")
        if not K.is_rational:
            raise UnsupportedFieldError("canonical forms are implemented over Q only")
        rec = canonical_form(f, args.genus, [P.ell for P in S.primes])
        out.update(mode="canonical", record=rec.to_json())
        return out
    tau, g = unipotent_reduce(f, S)
    from .forms import disc_poly

    out.update(mode="unipotent", input=f.to_strings(), tau=str(tau), reduced=g.to_strings(), delta=str(disc_poly(g)))
    return out


def cmd_sunit(args, cfg) -> dict:
    from .sunits import solve_sunit_equation

    K = QQ if args.field is None else parse_field(args.field)
    T = parse_places(args.S, K)
    b = _parse_height_bound(args.height_bound)
    sols = solve_sunit_equation(T, b, cfg.get("max_work"))
    return {
        "command": "sunit",
        "version": __version__,
        "T": _places_json(T),
        "height_bound": str(b),
        "count": len(sols),
        "solutions": [s.to_json() for s in sols],
    }


def cmd_enumerate(args, cfg) -> dict | None:
    from .enumerate import SearchSpec, enumerate_curves

    S = [int(p) for p in args.S.replace("{", "").replace("}", "").split(",") if p.strip()]
    degrees = tuple(int(x) for x in args.degrees.split(",")) if args.degrees else ()
    try:
        spec = SearchSpec(args.genus, tuple(S), args.box, degrees, max_work=args.max_grid or cfg.get("max_grid"))
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    jobs = args.jobs or cfg.get("jobs") or 1
    ts = None
    if args.timestamp:
        import datetime

        ts = datetime.datetime.now(datetime.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    cat = enumerate_curves(spec, jobs=jobs, progress_path=args.progress, timestamp=ts)
    if args.output:
        cat.write(args.output)
        return {
            "command": "enumerate",
            "version": __version__,
            "output": args.output,
            "count": len(cat),
            "header": cat.header,
        }
    sys.stdout.write(cat.dumps())
    return None


def cmd_verify_laws(args, cfg) -> dict:
    from .laws import verify_laws

    fields = tuple(int(x) for x in args.fields.split(",")) if args.fields else None
    rep = verify_laws(args.trials, args.seed, fields) if fields else verify_laws(args.trials, args.seed)
    rep.pop("_seconds", None)
    return {"command": "verify-laws", "version": __version__, **rep}


def cmd_catalog(args, cfg) -> dict:
    from .enumerate import load_catalog, query

    cat = load_catalog(args.input, verify=not args.no_verify)
    primes = [int(p) for p in args.primes.split(",") if p.strip()] if args.primes else None
    recs = query(cat.records, args.genus, primes, args.max_height, args.tier, args.wp)
    return {
        "command": "catalog",
        "version": __version__,
        "header": cat.header,
        "verified": not args.no_verify,
        "count": len(recs),
        "records": [r.to_json() for r in recs],
    }


COMMANDS = {
    "bounds": cmd_bounds,
    "extend-pid": cmd_extend_pid,
    "disc": cmd_disc,
    "reduce": cmd_reduce,
    "sunit": cmd_sunit,
    "enumerate": cmd_enumerate,
    "verify-laws": cmd_verify_laws,
    "catalog": cmd_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hypershaf", description="Hyperelliptic curves with good reduction outside S")
    p.add_argument("--version", action="version", version=f"hypershaf {__version__}")
    p.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    p.add_argument("--config", help="key=value config file (default: $HYPERSHAF_CONFIG)")
    p.add_argument("--precision", type=int, default=None, help=f"interval precision in bits (default {DEFAULT_PREC})")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bounds", help="certified evaluation of the explicit bounds")
    b.add_argument("--field", default="Q")
    b.add_argument("--S", default="")
    b.add_argument("--genus", type=int, required=True)
    b.add_argument("--part", default="i", choices=BOUND_PARTS + ("all",))
    b.add_argument("--c6")
    b.add_argument("--c7")
    b.add_argument("--kappa")
    b.add_argument("--h-delta", dest="h_delta", help="h(Delta) for part propeff")
    b.add_argument("--illustrative-constants", action="store_true", help="c6=3, c7=1, kappa=1 (not certified)")

    e = sub.add_parser("extend-pid", help="adjoin primes until O_T is a PID")
    e.add_argument("--field", default="Q")
    e.add_argument("--S", default="")

    d = sub.add_parser("disc", help="model discriminant of y^2 + f2 y = f")
    d.add_argument("--field", default="Q")
    d.add_argument("--poly", required=True)
    d.add_argument("--f2")
    d.add_argument("--genus", type=int, required=True)

    r = sub.add_parser("reduce", help="unipotent, covariant, U- or canonical reduction")
    r.add_argument("--field", default="Q")
    r.add_argument("--S", default="")
    r.add_argument("--poly")
    r.add_argument("--form")
    r.add_argument("--delta")
    r.add_argument("--genus", type=int)
    r.add_argument("--even", action="store_true", help="use the even-degree window for --delta")
    r.add_argument("--canonical", action="store_true", help="full canonical record of y^2 = poly")

    s = sub.add_parser("sunit", help="solve x + y = 1 in T-units over Q")
    s.add_argument("--field", default=None)
    s.add_argument("--S", default="")
    s.add_argument("--height-bound", dest="height_bound", required=True, help="e.g. 1.4 or 'log 4'")

    n = sub.add_parser("enumerate", help="box search for curves with T-unit discriminant")
    n.add_argument("--genus", type=int, required=True)
    n.add_argument("--S", default="")
    n.add_argument("--box", type=int, required=True)
    n.add_argument("--degrees", help="comma list within {2g+1, 2g+2} (default 2g+1)")
    n.add_argument("--jobs", type=int, default=None)
    n.add_argument("--output", "-o")
    n.add_argument("--progress", help="append-only progress file; rerunning resumes")
    n.add_argument("--timestamp", action="store_true", help="stamp the catalog header")
    n.add_argument("--max-grid", dest="max_grid", type=int)

    v = sub.add_parser("verify-laws", help="randomized exact checks of the transformation laws")
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--fields", help="comma list of d for Q(sqrt(-d)); 0 means Q")

    c = sub.add_parser("catalog", help="load, re-verify and query a catalog file")
    c.add_argument("--input", "-i", required=True)
    c.add_argument("--genus", type=int)
    c.add_argument("--primes", help="only records with Delta supported on these primes")
    c.add_argument("--max-height", dest="max_height", type=float)
    c.add_argument("--tier", choices=("exact", "fingerprint", "heuristic"))
    c.add_argument("--wp", choices=("yes", "unknown"))
    c.add_argument("--no-verify", dest="no_verify", action="store_true")
    return p


def _pretty(obj, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict):
                lines.append(f"{pad}-")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return "\n".join(lines)


def emit(obj, pretty: bool) -> None:
    if pretty:
        sys.stdout.write(_pretty(obj) + "\n")
    else:
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _fail(code: int, msg: str) -> int:
    sys.stderr.write(json.dumps({"error": msg, "exit_code": code}) + "\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = load_config(args.config)
    except UsageError as exc:
        return _fail(EXIT_INVALID, str(exc))
    except OSError as exc:
        return _fail(EXIT_INVALID, f"cannot read config: {exc}")
    if args.precision is None:
        args.precision = cfg.get("precision", DEFAULT_PREC)
    if args.precision < 32:
        return _fail(EXIT_INVALID, "precision must be at least 32 bits")
    if "max_work" in cfg:
        os.environ.setdefault("HYPERSHAF_MAX_WORK", str(cfg["max_work"]))
    if "max_grid" in cfg:
        os.environ.setdefault("HYPERSHAF_MAX_GRID", str(cfg["max_grid"]))
    try:
        out = COMMANDS[args.command](args, cfg)
    except UnsupportedFieldError as exc:
        return _fail(EXIT_UNSUPPORTED, str(exc))
    except ResourceLimitError as exc:
        return _fail(EXIT_RESOURCE, str(exc))
    except (MissingConstantError, UsageError) as exc:
        return _fail(EXIT_INVALID, str(exc))
    except (ValueError, ZeroDivisionError, NotImplementedError, OSError) as exc:
        if isinstance(exc, NotImplementedError):
            return _fail(EXIT_UNSUPPORTED, str(exc))
        return _fail(EXIT_INVALID, str(exc))
    if out is not None:
        emit(out, args.pretty)
    return EXIT_OK


def load_schema(name: str) -> dict:
    """Shipped JSON schema for a command ('extend-pid' -> extend_pid.json) or catalog part."""
    from importlib import resources

    fn = name.replace("-", "_") + ".json"
    return json.loads(resources.files("hypershaf").joinpath("schemas", fn).read_text(encoding="utf-8"))


if __name__ == "__main__":
    sys.exit(main())
