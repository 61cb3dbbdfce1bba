"""Command-line client for the certification service.

Every subcommand builds a request model, sends it through HTTP (to
--server if given, otherwise to the bundled app in-process) and renders
the JSON response.  Exit codes are a function of the result only:

    0  success / certificate
    1  usage or input error
    2  not a sum of squares
    3  inconclusive
    4  violated contract (missing obstruction, failed demo stage)
"""

from __future__ import annotations

import argparse
import json
import sys

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_SOS = 2
EXIT_INCONCLUSIVE = 3
EXIT_CONTRACT = 4


def _make_client(server: str | None):
    if server:
        import httpx

        return httpx.Client(base_url=server)
    from fastapi.testclient import TestClient

    from .service.app import app

    return TestClient(app)


def _canonical_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(args, payload, text_lines) -> None:
    if args.json:
        out = _canonical_json(payload)
    else:
        out = "\n".join(text_lines) + "\n"
    sys.stdout.write(out)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)


def _post(args, path: str, body: dict):
    with _make_client(args.server) as client:
        response = client.post(path, json=body)
    payload = response.json()
    if response.status_code != 200:
        message = payload.get("message") or payload.get("detail") or str(payload)
        sys.stderr.write(f"error: {message}\n")
        code = EXIT_CONTRACT if payload.get("error") == "contract_violation" else EXIT_USAGE
        raise SystemExit(code)
    return payload


def _cmd_check_sos(args) -> int:
    body = {
        "vars": args.vars,
        "poly": args.poly,
        "degree": args.degree,
        "accept_tol": args.accept_tol,
        "converge_tol": args.converge_tol,
        "max_iters": args.max_iters,
    }
    payload = _post(args, "/check-sos", body)
    status = payload["status"]
    if status == "certificate":
        lines = [
            "certificate: sum of squares",
            f"residual: {payload['residual']}",
            f"iterations: {payload['iterations']}",
        ] + [f"g[{i}] = {g}" for i, g in enumerate(payload["gs"] or [])]
        code = EXIT_OK
    elif status == "not_sos":
        lines = [
            "not a sum of squares",
            f"kind: {payload['kind']}",
            f"witness word: {payload['witness_word']}",
            f"top word: {payload['top_word']}",
            f"coefficient: {payload['coefficient']}",
        ]
        code = EXIT_NOT_SOS
    else:
        lines = [
            "inconclusive",
            f"iterations: {payload['iterations']}",
            f"min eigenvalue: {payload['min_eigenvalue']}",
        ]
        code = EXIT_INCONCLUSIVE
    _emit(args, payload, lines)
    return code


def _cmd_refute(args) -> int:
    body = {"vars": args.vars, "poly": args.poly, "seed": args.seed}
    if args.gs:
        body["gs"] = args.gs
    elif args.random:
        r, dmax, count = args.random
        body["random"] = {"count": count, "max_polys": r, "max_degree": dmax}
    else:
        sys.stderr.write("error: provide --gs or --random\n")
        return EXIT_USAGE
    payload = _post(args, "/refute-conjugation", body)
    lines = []
    for rec in payload["records"]:
        if rec["refuted"]:
            lines.append(
                f"refuted gs=[{'; '.join(rec['gs'])}]: witness {rec['witness_word']}, "
                f"coefficient {rec['coefficient']}"
            )
        else:
            lines.append(f"NOT refuted gs=[{'; '.join(rec['gs'])}]: {rec['error']}")
    lines.append(payload["summary"])
    _emit(args, payload, lines)
    return EXIT_OK if payload["all_refuted"] else EXIT_CONTRACT


def _cmd_eval(args) -> int:
    matrices = [json.loads(m) for m in args.matrix]
    body = {"vars": args.vars, "poly": args.poly, "matrices": matrices}
    payload = _post(args, "/eval", body)
    n = payload["n"]
    entries = payload["entries"]
    lines = [
        "  ".join(repr(entries[i * n + j]) for j in range(n)) for i in range(n)
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_gram(args) -> int:
    body = {"vars": args.vars, "poly": args.poly, "degree": args.degree}
    payload = _post(args, "/gram", body)
    basis = payload["basis"]
    n = len(basis)
    entries = payload["entries"]
    lines = [f"basis: {basis}"] + [
        "  ".join(repr(entries[i * n + j]) for j in range(n)) for i in range(n)
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_shift_demo(args) -> int:
    body = {"size": args.size, "vectors": [v.split(",") for v in args.vector] or None}
    payload = _post(args, "/shift-demo", body)
    lines = [f"truncation size {payload['size']}, subdiagonal {payload['subdiagonal']}"]
    lines += [f"e_{bf['k']}: form = {bf['value']}" for bf in payload["basis_forms"]]
    lines += [
        f"vector [{', '.join(vf['vector'])}]: form = {vf['value']}, closed form = {vf['closed_form']}"
        for vf in payload["vector_forms"]
    ]
    lines.append(f"all values nonpositive: {payload['all_nonpositive']}")
    _emit(args, payload, lines)
    return EXIT_OK if payload["all_nonpositive"] else EXIT_CONTRACT


def _cmd_paper_demo(args) -> int:
    dims = [int(x) for x in args.dims.split(",") if x]
    body = {"dims": dims, "samples": args.samples, "seed": args.seed}
    payload = _post(args, "/paper-demo", body)
    _emit(args, payload, payload["transcript"])
    if payload["all_passed"]:
        return EXIT_OK
    sys.stderr.write(f"failed stages: {', '.join(payload['failed_stages'])}\n")
    return EXIT_CONTRACT


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncsos",
        description="Noncommutative sum-of-squares certification toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_vars=True):
        if needs_vars:
            p.add_argument(
                "--vars",
                required=True,
                help="comma list of variables; trailing ' marks a non-self-adjoint pair",
            )
        p.add_argument("--server", help="base URL of a running service (default: in-process)")
        p.add_argument("--json", action="store_true", help="emit canonical JSON")
        p.add_argument("--text", dest="json", action="store_false", help="emit text (default)")
        p.add_argument("--out", help="also write the output to this path")

    p = sub.add_parser("check-sos", help="decide SoS membership")
    p.add_argument("poly")
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--accept-tol", type=float, default=1e-7, dest="accept_tol")
    p.add_argument("--converge-tol", type=float, default=1e-10, dest="converge_tol")
    p.add_argument("--max-iters", type=int, default=20000, dest="max_iters")
    common(p)
    p.set_defaults(func=_cmd_check_sos)

    p = sub.add_parser("refute-conjugation", help="obstruct sum g_i* p g_i for given or random g")
    p.add_argument("poly")
    p.add_argument("--gs", action="append", default=[], help="conjugator polynomial (repeatable)")
    p.add_argument(
        "--random",
        nargs=3,
        type=int,
        metavar=("R", "DMAX", "COUNT"),
        help="generate COUNT random tuples of up to R polynomials of degree <= DMAX",
    )
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=_cmd_refute)

    p = sub.add_parser("eval", help="evaluate a polynomial at a matrix tuple")
    p.add_argument("poly")
    p.add_argument(
        "--matrix",
        action="append",
        default=[],
        required=True,
        help="JSON rows for one variable, in declaration order (repeatable)",
    )
    common(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("gram", help="canonical Gram matrix of a symmetric polynomial")
    p.add_argument("poly")
    p.add_argument("--degree", type=int, default=None)
    common(p)
    p.set_defaults(func=_cmd_gram)

    p = sub.add_parser("shift-demo", help="truncated weighted-shift quadratic forms")
    p.add_argument("--size", type=int, default=64)
    p.add_argument(
        "--vector",
        action="append",
        default=[],
        help="comma list of rationals (last coordinate must be 0); repeatable",
    )
    common(p, needs_vars=False)
    p.set_defaults(func=_cmd_shift_demo)

    p = sub.add_parser("paper-demo", help="run the full reproduction pipeline")
    p.add_argument("--dims", default="1,2,3,4,5,6")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    common(p, needs_vars=False)
    p.set_defaults(func=_cmd_paper_demo)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
