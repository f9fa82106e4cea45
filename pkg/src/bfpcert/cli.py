"""Command-line interface.

Exit codes: 0 success / verdict true, 1 verdict false, 2 input error,
3 internal failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import __version__
from .biquadratic import enumerate_system
from .certify import certify, verify_certificate
from .chirotope import Chirotope, check_axioms
from .exceptions import BfpError, InputError, ParseError
from .generate import moment_chirotope, random_configuration
from .io import (
    certificate_to_json,
    format_chirotope,
    format_configuration,
    load_certificate,
    load_chirotope,
)
from .omp import is_euclidean
from .rational_lp import Infeasible, bfp_from_farkas, encode_system, solve_feasibility

log = logging.getLogger("bfpcert")

OK, VERDICT_FALSE, INPUT_ERROR, INTERNAL = 0, 1, 2, 3


@dataclass
class CommandOutcome:
    exit_code: int
    report: str
    artifact_path: Optional[str] = None
    data: Optional[dict] = None


def _load(args) -> Chirotope:
    if not args.input:
        raise InputError("--input is required")
    chi = load_chirotope(args.input)
    if args.max_n is not None and chi.n > args.max_n:
        raise InputError(f"n={chi.n} exceeds --max-n {args.max_n}")
    return chi


def _write(path, text):
    Path(path).write_text(text)
    return str(path)


def cmd_axioms(args):
    chi = _load(args)
    rep = check_axioms(chi)
    data = {
        "alternating_ok": rep.alternating_ok,
        "nonzero_ok": rep.nonzero_ok,
        "exchange_ok": rep.exchange_ok,
        "gp_ok": rep.gp_ok,
        "violations": [list(map(str, v)) for v in rep.violations],
    }
    return CommandOutcome(OK if rep.ok else VERDICT_FALSE, rep.summary(), data=data)


def cmd_uniform(args):
    chi = _load(args)
    u = chi.is_uniform()
    zeros = chi.signs.count(0)
    text = "uniform" if u else f"not uniform ({zeros} zero signs)"
    return CommandOutcome(OK if u else VERDICT_FALSE, text, data={"uniform": u, "zeros": zeros})


def cmd_system(args):
    chi = _load(args)
    system = enumerate_system(chi)
    dump = system.dump()
    counts = f"inequalities: {len(system.inequalities)}\nequations: {len(system.equations)}"
    path = _write(args.out, dump) if args.out else None
    report = counts if path else dump + counts
    data = {"inequalities": len(system.inequalities), "equations": len(system.equations)}
    return CommandOutcome(OK, report, path, data)


def cmd_euclidean(args):
    chi = _load(args)
    euclid, witness = is_euclidean(chi, args.f, args.g)
    if euclid:
        return CommandOutcome(OK, "Euclidean", data={"euclidean": True})
    f, g, cycle = witness
    report = "non-Euclidean\n" + cycle.dump(f, g).rstrip()
    data = {"euclidean": False, "f": f, "g": g, "pivots": [str(p) for p in cycle.pivots]}
    return CommandOutcome(VERDICT_FALSE, report, data=data)


def cmd_certify(args):
    chi = _load(args)
    cert, prog, cycle, attempts = certify(chi, args.f, args.g)
    for a in attempts:
        log.info("cycle for f=%d g=%d rejected: %s", a.f, a.g, a.error)
    if cert is None:
        if not attempts:
            return CommandOutcome(OK, "Euclidean: no non-degenerate cycle, nothing to certify")
        report = (
            f"non-Euclidean, but none of {len(attempts)} cycles converted to a certificate\n"
            + "\n".join(f"  f={a.f} g={a.g}: {a.error}" for a in attempts[:10])
            + "\ntry: bfpcert lp-certify"
        )
        return CommandOutcome(INTERNAL, report)
    path = _write(args.out, certificate_to_json(cert)) if args.out else None
    report = "\n".join(
        [
            "non-realizable: biquadratic final polynomial found",
            cycle.dump(prog.f, prog.g).rstrip(),
            "types: " + " ".join(cert.types),
            f"inequalities: {len(cert.inequalities)}  equations: {len(cert.equations)}",
        ]
    )
    if path is None:
        report += "\n" + certificate_to_json(cert).rstrip()
    data = {"f": prog.f, "g": prog.g, "types": list(cert.types)}
    return CommandOutcome(VERDICT_FALSE, report, path, data)


def cmd_lp_certify(args):
    chi = _load(args)
    system = enumerate_system(chi)
    ls = encode_system(system)
    if args.lp_out:
        _write(args.lp_out, ls.to_lp())
    res = solve_feasibility(ls)
    if not isinstance(res, Infeasible):
        return CommandOutcome(OK, "feasible: no biquadratic obstruction", data={"feasible": True})
    cert = bfp_from_farkas(system, ls, res.certificate)
    path = _write(args.out, certificate_to_json(cert)) if args.out else None
    report = (
        "infeasible: non-realizable, biquadratic final polynomial found\n"
        f"inequalities: {len(cert.inequalities)}  equations: {len(cert.equations)}"
    )
    if path is None:
        report += "\n" + certificate_to_json(cert).rstrip()
    return CommandOutcome(VERDICT_FALSE, report, path, {"feasible": False})


def cmd_verify(args):
    chi = _load(args)
    if not args.cert:
        raise InputError("--cert is required")
    cert = load_certificate(args.cert)
    rep = verify_certificate(chi, cert)
    data = {"valid": rep.valid, "failures": rep.failures}
    return CommandOutcome(OK if rep.valid else VERDICT_FALSE, rep.summary(), data=data)


def cmd_gen(args):
    if args.r is None:
        raise InputError("--r is required")
    rng = random.Random(args.seed)
    n = args.n
    if n is None:
        hi = args.max_n if args.max_n is not None else args.r + 4
        n = rng.randint(args.r + 1, hi)
    if args.kind == "moment":
        chi = moment_chirotope(n, args.r)
        config_text = None
    else:
        config = random_configuration(n, args.r, rng, args.spread)
        chi = Chirotope.from_configuration(config)
        config_text = format_configuration(config)
    text = format_chirotope(chi)
    path = _write(args.out, text) if args.out else None
    if args.config_out and config_text:
        _write(args.config_out, config_text)
    return CommandOutcome(OK, text.rstrip() if path is None else f"wrote {path}", path)


COMMANDS = {
    "axioms": (cmd_axioms, "check the chirotope axioms"),
    "uniform": (cmd_uniform, "report whether the chirotope is uniform"),
    "system": (cmd_system, "dump the biquadratic inequalities and equations"),
    "euclidean": (cmd_euclidean, "search all programs (f, g) for a non-degenerate cycle"),
    "certify": (cmd_certify, "build a biquadratic final polynomial from a pivot cycle"),
    "lp-certify": (cmd_lp_certify, "decide the log-linear system exactly, certificate from Farkas"),
    "verify": (cmd_verify, "verify a certificate against a chirotope"),
    "gen": (cmd_gen, "write a realizable test chirotope"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bfpcert", description="Biquadratic final polynomial certificates for oriented matroids.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--input", help="chirotope or configuration file")
        sp.add_argument("--out", help="output file")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--max-n", type=int, dest="max_n")
        sp.add_argument("-v", "--verbose", action="store_true")
        if name in ("euclidean", "certify"):
            sp.add_argument("--f", type=int, help="restrict the scan to this objective element")
            sp.add_argument("--g", type=int, help="restrict the scan to this element at infinity")
        if name == "verify":
            sp.add_argument("--cert", help="certificate file")
        if name == "lp-certify":
            sp.add_argument("--lp-out", dest="lp_out", help="also write the linear system in LP format")
        if name == "gen":
            sp.add_argument("--kind", choices=("moment", "random"), default="random")
            sp.add_argument("--n", type=int)
            sp.add_argument("--r", type=int)
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--spread", type=int, default=5)
            sp.add_argument("--config-out", dest="config_out")
    return p


def _dispatch(args) -> CommandOutcome:
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    func = COMMANDS[args.command][0]
    try:
        return func(args)
    except ParseError as exc:
        return CommandOutcome(INPUT_ERROR, f"parse error: {exc}")
    except InputError as exc:
        return CommandOutcome(INPUT_ERROR, f"input error: {exc}")
    except BfpError as exc:
        return CommandOutcome(INTERNAL, f"{type(exc).__name__}: {exc}")


def run(argv=None) -> CommandOutcome:
    return _dispatch(build_parser().parse_args(argv))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    outcome = _dispatch(args)
    if args.format == "json":
        payload = {"exit_code": outcome.exit_code, "report": outcome.report, "artifact": outcome.artifact_path}
        payload.update(outcome.data or {})
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        stream = sys.stderr if outcome.exit_code >= INPUT_ERROR else sys.stdout
        print(outcome.report, file=stream)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
