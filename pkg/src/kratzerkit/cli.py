"""Command-line front end.

Subcommands eval/diagnose/correct/solve/fit run the library in process by
default; ``--server URL`` sends the same request to a running HTTP service
instead.  ``serve`` starts that service.  Numeric output is rendered at 12
significant digits in JSON or CSV; specs come from a JSON file, stdin
(``-``) or family/parameter flags, with flags overriding file values.

Exit codes: 0 success (diagnose: potential is sound), 1 diagnose found the
well-depth/minimum flaw, 2 unreadable spec or config, 3 domain error or an
operation without a defined result.
"""

from __future__ import annotations

import argparse
import json
import sys

from pydantic import ValidationError

from . import __version__
from . import potentials as pot
from .config import CSV, OUTPUT_FORMATS, RunConfig, config_from_dict, \
    load_config
from .errors import DomainError, KratzerkitError, SpecLoadError
from .service import handlers
from .service import schemas as sch

_PARAM_FLAGS = ("De", "re", "alpha", "delta", "lam", "tau", "gamma", "V0", "c")

EXIT_OK = 0
EXIT_FLAWED = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3


def _sig12(x: float) -> str:
    # + 0.0 turns negative zero into plain zero
    return f"{x + 0.0:.12g}"


def _round12(obj):
    """Recursively clamp floats to 12 significant digits for JSON output."""
    if isinstance(obj, float):
        return float(_sig12(obj))
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def _dump_json(record: dict) -> str:
    return json.dumps(_round12(record), indent=2)


def _csv_cell(value) -> str:
    if value is None:
        return "undefined"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return _sig12(value)
    return str(value)


def _csv_table(header, rows) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_csv_cell(c) for c in row) for row in rows)
    return "\n".join(lines)


def _csv_fields(record: dict) -> str:
    rows = []
    for key, value in record.items():
        if isinstance(value, dict):
            rows.extend((f"{key}.{k}", v) for k, v in value.items())
        else:
            rows.append((key, value))
    return _csv_table(("field", "value"), rows)


# ---------------------------------------------------------------------------
# spec assembly

def _read_spec_record(args, allow_corrected_overrides=False) -> dict:
    """Spec dict from file/stdin plus flag overrides."""
    if args.spec is not None:
        if args.spec == "-":
            text = sys.stdin.read()
        else:
            try:
                with open(args.spec, "r") as fh:
                    text = fh.read()
            except OSError as exc:
                raise SpecLoadError(f"cannot read spec file: {exc}")
        try:
            record = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecLoadError(f"spec is not valid JSON: {exc}")
        if not isinstance(record, dict):
            raise SpecLoadError("spec JSON must be an object")
        if "family" not in record and isinstance(record.get("spec"), dict):
            # accept `correct` output verbatim; the spec rides in an envelope
            record = record["spec"]
    else:
        if args.family is None:
            raise SpecLoadError(
                "no spec given: pass a spec file, '-' for stdin, "
                "or --family with parameter flags"
            )
        record = {"family": args.family, "params": {}}

    if args.family is not None:
        record["family"] = args.family
    params = dict(record.get("params", {}))
    overridden = False
    for name in _PARAM_FLAGS:
        value = getattr(args, name)
        if value is not None:
            params[pot._JSON_NAMES.get(name, name)] = value
            overridden = True
    if overridden and not allow_corrected_overrides \
            and ("coefficients" in record or "screening" in record):
        raise DomainError(
            "cannot override parameters of a corrected spec; correct the "
            "adjusted base potential instead"
        )
    record["params"] = params
    return record


def _run_config(args) -> RunConfig:
    if getattr(args, "config", None):
        return load_config(args.config)
    return RunConfig()


def _config_record(path: str) -> dict:
    try:
        with open(path, "r") as fh:
            record = json.load(fh)
    except OSError as exc:
        raise SpecLoadError(f"cannot read config file: {exc}")
    except json.JSONDecodeError as exc:
        raise SpecLoadError(f"config file is not valid JSON: {exc}")
    config_from_dict(record)  # fail fast with the library's messages
    return record


# ---------------------------------------------------------------------------
# transport: run handlers in process or against a remote service

_ROUTES = {
    "eval": (sch.EvalRequest, handlers.handle_eval),
    "diagnose": (sch.DiagnoseRequest, handlers.handle_diagnose),
    "correct": (sch.CorrectRequest, handlers.handle_correct),
    "solve": (sch.SolveRequest, handlers.handle_solve),
    "fit": (sch.FitRequest, handlers.handle_fit),
}


class RemoteError(Exception):
    def __init__(self, exit_code: int, message: str):
        super().__init__(message)
        self.exit_code = exit_code


def _call(args, route: str, body: dict) -> dict:
    if args.server:
        return _call_remote(args.server, route, body)
    model_cls, handler = _ROUTES[route]
    try:
        request = model_cls(**body)
    except ValidationError as exc:
        raise SpecLoadError(f"bad request: {exc}")
    return handler(request).model_dump()


def _call_remote(base: str, route: str, body: dict) -> dict:
    import httpx

    url = base.rstrip("/") + "/" + route
    try:
        response = httpx.post(url, json=body, timeout=600.0)
    except httpx.HTTPError as exc:
        raise RemoteError(EXIT_DOMAIN, f"cannot reach server: {exc}")
    if response.status_code >= 400:
        try:
            payload = response.json()
        except ValueError:
            payload = {}
        detail = payload.get("detail", response.text)
        code = EXIT_PARSE if response.status_code == 422 else EXIT_DOMAIN
        raise RemoteError(code, f"server error: {detail}")
    return response.json()


# ---------------------------------------------------------------------------
# subcommands

def _cmd_eval(args) -> tuple[str, int]:
    body = {"spec": _read_spec_record(args)}
    if args.r is not None:
        values = []
        for chunk in args.r:
            values.extend(float(v) for v in chunk.split(","))
        body["r_values"] = values
    if args.r_start is not None or args.r_stop is not None \
            or args.r_step is not None:
        body.update(r_start=args.r_start, r_stop=args.r_stop,
                    r_step=args.r_step)
    result = _call(args, "eval", body)
    if _format(args) == CSV:
        rows = [(row["r"], row["value"], row["derivative1"],
                 row["derivative2"]) for row in result["rows"]]
        return _csv_table(("r", "value", "derivative1", "derivative2"),
                          rows), EXIT_OK
    return _dump_json(result), EXIT_OK


def _cmd_diagnose(args) -> tuple[str, int]:
    result = _call(args, "diagnose", {"spec": _read_spec_record(args)})
    code = EXIT_FLAWED if result["is_flawed"] else EXIT_OK
    if _format(args) == CSV:
        return _csv_fields(result), code
    return _dump_json(result), code


def _cmd_correct(args) -> tuple[str, int]:
    result = _call(args, "correct", {"spec": _read_spec_record(args)})
    # always JSON: the corrected spec must reload as a spec file
    return _dump_json(result), EXIT_OK


def _cmd_solve(args) -> tuple[str, int]:
    body = {"spec": _read_spec_record(args), "l": args.l, "n_max": args.nmax}
    if args.config:
        body["config"] = _config_record(args.config)
    result = _call(args, "solve", body)
    if _format(args) == CSV:
        rows = [(row["n"], row["l"], row["energy"])
                for row in result["levels"]]
        return _csv_table(("n", "l", "energy"), rows), EXIT_OK
    return _dump_json(result), EXIT_OK


def _cmd_fit(args) -> tuple[str, int]:
    record = _read_spec_record(args, allow_corrected_overrides=True)
    family = record["family"]
    initial = dict(record.get("params", {}))
    screening = record.get("screening")
    if screening is not None:
        # a corrected spec file fits as the regenerated screened form
        if screening.get("form") != "exponential" \
                or record.get("additive") is not None:
            raise DomainError(
                "only exponentially screened corrected specs are fittable"
            )
        initial.setdefault("alpha", screening.get("params", {}).get("alpha"))
    body = {
        "family": family,
        "initial": initial,
        "free": [f.strip() for f in args.free.split(",") if f.strip()],
        "data": _read_spectrum(args.data),
    }
    if args.config:
        body["config"] = _config_record(args.config)
    result = _call(args, "fit", body)
    if _format(args) == CSV:
        return _csv_fields(result), EXIT_OK
    return _dump_json(result), EXIT_OK


def _read_spectrum(path: str) -> dict:
    from .fitting import SpectrumData

    if path == "-":
        data = SpectrumData.from_csv(sys.stdin)
    else:
        data = SpectrumData.from_csv(path)
    return {"entries": [list(e) for e in data.entries],
            "weights": list(data.weights)}


def _cmd_serve(args) -> tuple[str, int]:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return "", EXIT_OK


def _format(args) -> str:
    if args.format is not None:
        return args.format
    return _run_config(args).output_format


# ---------------------------------------------------------------------------
# argument parsing

def _add_spec_arguments(sub):
    sub.add_argument("spec", nargs="?", default=None,
                     help="spec JSON file, or '-' for stdin")
    sub.add_argument("--family", help="potential family tag or alias")
    for name in _PARAM_FLAGS:
        flag = "--" + pot._JSON_NAMES.get(name, name)
        kind = int if name == "tau" else float
        sub.add_argument(flag, dest=name, type=kind, default=None)


def _add_common_arguments(sub):
    sub.add_argument("--config", help="run config JSON file")
    sub.add_argument("--format", choices=OUTPUT_FORMATS, default=None)
    sub.add_argument("--out", help="write output to this file")
    sub.add_argument("--server", help="base URL of a running service")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kratzerkit",
        description="Kratzer-family potentials: evaluate, diagnose the "
                    "well-depth flaw, correct it, solve for bound states, "
                    "fit spectra.",
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("eval", help="tabulate V, V', V''")
    _add_spec_arguments(p)
    _add_common_arguments(p)
    p.add_argument("--r", action="append",
                   help="radius or comma-separated radii (repeatable)")
    p.add_argument("--r-start", type=float, default=None)
    p.add_argument("--r-stop", type=float, default=None)
    p.add_argument("--r-step", type=float, default=None)
    p.set_defaults(run=_cmd_eval)

    p = commands.add_parser("diagnose",
                            help="check the claimed minimum and depth")
    _add_spec_arguments(p)
    _add_common_arguments(p)
    p.set_defaults(run=_cmd_diagnose)

    p = commands.add_parser("correct",
                            help="regenerate well coefficients")
    _add_spec_arguments(p)
    _add_common_arguments(p)
    p.set_defaults(run=_cmd_correct)

    p = commands.add_parser("solve", help="bound vibrational levels")
    _add_spec_arguments(p)
    _add_common_arguments(p)
    p.add_argument("--l", dest="l", type=int, default=0,
                   help="angular momentum quantum number")
    p.add_argument("--nmax", type=int, default=10,
                   help="highest vibrational index to search for")
    p.set_defaults(run=_cmd_solve)

    p = commands.add_parser("fit", help="least-squares fit to a spectrum")
    _add_spec_arguments(p)
    _add_common_arguments(p)
    p.add_argument("data", help="spectrum CSV (n,l,energy[,weight])")
    p.add_argument("--free", required=True,
                   help="comma-separated parameters to vary, e.g. De,re")
    p.set_defaults(run=_cmd_fit)

    p = commands.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(run=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        output, code = args.run(args)
    except SpecLoadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except KratzerkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except RemoteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code

    if output:
        if getattr(args, "out", None):
            with open(args.out, "w") as fh:
                fh.write(output + "\n")
        else:
            print(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
