"""Thin command-line client for the centerfocus service.

Every subcommand builds a request model, sends it through an HTTP client --
an in-process ASGI test client by default, or a remote server with
``--server URL`` -- and renders the JSON response.  ``serve`` runs the
service under uvicorn.

Exit codes: 0 success; 2 malformed input; 3 the mathematical verdict is
"no" (e.g. the polynomial is not a comitant); 4 an internal check failed;
5 the time budget was exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VERDICT_NO = 3
EXIT_INTERNAL = 4
EXIT_BUDGET = 5


def _client(server: str | None):
    if server:
        import httpx

        return httpx.Client(base_url=server, timeout=None)
    from fastapi.testclient import TestClient

    from .service.app import app

    return TestClient(app, raise_server_exceptions=False)


def _read_arg_maybe_file(value: str) -> str:
    if os.path.exists(value) and os.path.isfile(value):
        with open(value, "r", encoding="utf-8") as handle:
            return handle.read()
    return value


def _system_payload(value: str):
    text = _read_arg_maybe_file(value).strip()
    if text.startswith("{"):
        return json.loads(text)
    return text


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _bail(args, response) -> int:
    try:
        detail = response.json().get("detail", response.text)
    except Exception:
        detail = response.text
    print("error: %s" % detail, file=sys.stderr)
    if response.status_code == 408:
        return EXIT_BUDGET
    if response.status_code in (400, 422):
        return EXIT_INPUT
    return EXIT_INTERNAL


def cmd_focal(args, client) -> int:
    response = client.post("/focal", json={
        "system": _system_payload(args.system),
        "order": args.order,
        "convention": args.convention.replace("-", "_"),
        "budget_seconds": args.budget,
    })
    if response.status_code != 200:
        return _bail(args, response)
    body = response.json()
    lines = ["%s, gauge %s" % (body["signature"], body["convention"])]
    lines += ["L%d = %s" % (q["k"], q["L"]) for q in body["quantities"]]
    _emit(args, body, lines)
    return EXIT_OK


def cmd_pseudo(args, client) -> int:
    point = None
    if args.point:
        point = json.loads(_read_arg_maybe_file(args.point))
    response = client.post("/pseudo", json={
        "system": _system_payload(args.system),
        "k": args.k,
        "mode": args.mode,
        "free": args.free.split(",") if args.free else None,
        "point": point,
        "heavy": args.heavy,
        "budget_seconds": args.budget,
    })
    if response.status_code != 200:
        return _bail(args, response)
    body = response.json()
    lines = ["%s, mode %s" % (body["signature"], body["mode"])]
    if body.get("reports"):
        for rep in body["reports"]:
            lines.append("k=%d: %d equations, %d unknowns, degree %d, types %s"
                         % (rep["k"], rep["m"], rep["n"], rep["N"],
                            " + ".join("(%s)" % ",".join(map(str, t)) for t in rep["types"])))
    else:
        for sol in body["solutions"]:
            lines.append("k=%d (%dx%d), free %s" % (sol["k"], sol["m"], sol["n"],
                                                    ",".join(sol["chosen_free"])))
            lines.append("  sigma = %s" % sol["sigma"])
            lines.append("  numerator = %s" % sol["numerator"])
            for nm, poly in sol["free_terms"].items():
                lines.append("  companion[%s] = %s" % (nm, poly))
            if sol.get("value_at_zero_free") is not None:
                lines.append("  G%d (free=0) = %s" % (sol["k"], sol["value_at_zero_free"]))
    _emit(args, body, lines)
    return EXIT_OK


def cmd_comitant_check(args, client) -> int:
    response = client.post("/comitant-check", json={
        "system": _system_payload(args.system),
        "polynomial": _read_arg_maybe_file(args.poly),
        "budget_seconds": args.budget,
    })
    if response.status_code != 200:
        return _bail(args, response)
    body = response.json()
    if body["comitant"]:
        lines = ["comitant of type (%s), weight %d"
                 % (",".join(map(str, body["type"])), body["weight"])]
        _emit(args, body, lines)
        return EXIT_OK
    if not body["homogeneous"]:
        lines = ["not a comitant: %s" % body["reason"]]
    elif body["reason"] == "half-integer weight":
        lines = ["not a comitant: type (%s) has half-integer weight"
                 % ",".join(map(str, body["type"]))]
    else:
        lines = ["not a comitant: %s residual %s" % (body["witness_operator"], body["residual"])]
    _emit(args, body, lines)
    return EXIT_VERDICT_NO


def cmd_hilbert(args, client) -> int:
    series = _read_arg_maybe_file(args.series).strip()
    payload = json.loads(series) if series.startswith("{") else series
    response = client.post("/hilbert", json={
        "series": payload,
        "krull": args.krull,
        "expand": args.expand,
    })
    if response.status_code != 200:
        return _bail(args, response)
    body = response.json()

    def mono(exps):
        factors = [v if e == 1 else "%s^%d" % (v, e)
                   for v, e in zip(body["variables"], exps) if e]
        return "*".join(factors)

    den = " ".join("(1 - %s)^%d" % (mono(exps), mult) for exps, mult in body["denominator"])
    lines = ["series in %s: (%s) / %s" % (",".join(body["variables"]), body["numerator"], den)]
    if body.get("krull") is not None:
        lines.append("krull dimension: %d" % body["krull"])
    if body.get("coefficients") is not None:
        lines.append("coefficients: %s" % " ".join(map(str, body["coefficients"])))
    _emit(args, body, lines)
    return EXIT_OK


def cmd_rho(args, client) -> int:
    response = client.post("/rho", json={"signature": args.signature})
    if response.status_code != 200:
        return _bail(args, response)
    body = response.json()
    _emit(args, body, ["rho(%s) = %d  (coefficient slots: %d)"
                       % (body["signature"], body["rho"], body["slot_count"])])
    return EXIT_OK


def cmd_verify(args, client) -> int:
    response = client.post("/verify", json={
        "suite": args.suite,
        "seed": args.seed,
        "budget_seconds": args.budget,
    })
    if response.status_code != 200:
        return _bail(args, response)
    body = response.json()
    if args.json:
        print(json.dumps(body, indent=2))
    else:
        marks = {"pass": "PASS", "fail": "FAIL", "logged-discrepancy": "NOTE"}
        for check in body["checks"]:
            print("%-4s %s" % (marks[check["verdict"]], check["name"]))
            if check["verdict"] != "pass":
                print("     expected %s, got %s" % (check["expected"], check["got"]))
        res = body["results"]
        print("%d checks: %d passed, %d failed, %d logged discrepancies"
              % (res["total"], res["passed"], res["failed"], res["logged_discrepancies"]))
    return EXIT_OK if body["ok"] else EXIT_INTERNAL


def cmd_serve(args, client) -> int:
    import uvicorn

    uvicorn.run("centerfocus.service.app:app", host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="centerfocus",
        description="Exact focal quantities, comitants and Hilbert series "
        "for planar polynomial differential systems.",
    )
    parser.add_argument("--json", action="store_true", help="emit raw JSON responses")
    parser.add_argument("--seed", type=int, default=1, help="seed for randomized checks")
    parser.add_argument("--budget", type=float, default=None, metavar="SECONDS",
                        help="abort heavy symbolic work after this many seconds (exit 5)")
    parser.add_argument("--server", default=None, metavar="URL",
                        help="talk to a running service instead of computing in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("focal", help="focal quantities on the variety chart")
    p.add_argument("--system", required=True, help="shorthand, JSON text, or a JSON file path")
    p.add_argument("--order", type=int, default=1, metavar="K")
    p.add_argument("--convention", choices=["coordinate", "zero-mean"], default="coordinate")
    p.set_defaults(fn=cmd_focal)

    p = sub.add_parser("pseudo", help="defining focal quantities of the generic system")
    p.add_argument("--system", required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--mode", choices=["symbolic", "point", "structure"], default="symbolic")
    p.add_argument("--free", default=None, help="comma-separated free unknowns, e.g. b2,d3")
    p.add_argument("--point", default=None, help="JSON file or text mapping coefficients to rationals")
    p.add_argument("--heavy", action="store_true", help="allow the expensive symbolic order-2 solve")
    p.set_defaults(fn=cmd_pseudo)

    p = sub.add_parser("comitant-check", help="operator test for a polynomial")
    p.add_argument("--system", required=True)
    p.add_argument("--poly", required=True, help="polynomial text or a file containing it")
    p.set_defaults(fn=cmd_comitant_check)

    p = sub.add_parser("hilbert", help="Krull dimension / expansion of a factored series")
    p.add_argument("--series", required=True,
                   help="builtin:S01, builtin:SI01, JSON text, or a JSON file path")
    p.add_argument("--krull", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--expand", type=int, default=None, metavar="N")
    p.set_defaults(fn=cmd_hilbert)

    p = sub.add_parser("rho", help="algebraic-basis bound for a signature")
    p.add_argument("--signature", required=True, help="e.g. 1,2,3 or s(1,2,3)")
    p.set_defaults(fn=cmd_rho)

    p = sub.add_parser("verify", help="run the built-in reproduction suite")
    p.add_argument("--suite", choices=["paper"], default="paper")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(fn=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "serve":
        return cmd_serve(args, None)
    try:
        client = _client(args.server)
    except Exception as exc:
        print("error: cannot reach service: %s" % exc, file=sys.stderr)
        return EXIT_INTERNAL
    with client:
        try:
            return args.fn(args, client)
        except json.JSONDecodeError as exc:
            print("error: bad JSON input: %s" % exc, file=sys.stderr)
            return EXIT_INPUT
        except OSError as exc:
            print("error: %s" % exc, file=sys.stderr)
            return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
