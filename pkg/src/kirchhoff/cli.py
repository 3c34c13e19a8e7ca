"""Command-line front end.

Results go to stdout as JSON (17 significant digits). Errors go to stderr
as a JSON object. Exit codes: 0 success, 1 input error, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import sys

from . import boundary, inverse, phasor, powerflow, reduction
from .errors import InputError, KirchhoffError, ParseError
from .laplacian import Laplacian, laplacian_violations, network_laplacian
from .netgraph import incidence, n_components
from .netlist import dumps, matrix_csv, read_netlist, read_target


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, usage=self.format_usage().strip())


def _real_setup(doc):
    L = network_laplacian(doc.network)
    return L, reduction.BlockLaplacian(L, doc.partition)


def cmd_validate(args):
    report = {"file": args.file, "valid": True}
    try:
        doc = read_netlist(args.file)
    except InputError as exc:
        report.update(valid=False, errors=[exc.to_dict()])
        return 1, report
    net = doc.network
    comps = n_components(net)
    report.update(
        nodes=net.N,
        edges=net.M,
        boundary=list(doc.partition.boundary),
        internal=list(doc.partition.internal),
        components=comps,
        connected=comps == 1,
        resistive=net.is_resistive,
        frequency=doc.frequency,
    )
    errors = []
    if comps != 1:
        errors.append({"error": "Disconnected", "message": f"graph has {comps} connected components"})
    if net.is_resistive:
        bad = laplacian_violations(network_laplacian(net))
        if comps == 1 and bad:
            errors.append({"error": "InvalidLaplacian", "violations": bad})
    elif doc.frequency is None:
        errors.append({"error": "MissingFrequency", "message": "reactive elements need a frequency"})
    if errors:
        report.update(valid=False, errors=errors)
        return 1, report
    return 0, report


def cmd_laplacian(args):
    doc = read_netlist(args.file)
    L = network_laplacian(doc.network)
    if args.format == "csv":
        return 0, matrix_csv(L.matrix, L.nodes)
    return 0, {"nodes": list(L.nodes), "laplacian": L.matrix}


def cmd_reduce(args):
    doc = read_netlist(args.file)
    red = reduction.kron_reduce(network_laplacian(doc.network), doc.partition)
    return 0, {
        "nodes": list(red.laplacian.nodes),
        "laplacian": red.L_S,
        "edges": [
            {"id": e.id, "tail": e.tail, "head": e.head, "conductance": e.element.conductance}
            for e in red.network.edges
        ],
    }


def cmd_resistance(args):
    doc = read_netlist(args.file)
    ends = [s.strip() for s in args.between.split(",")]
    if len(ends) != 2:
        raise UsageError("--between expects two node ids separated by a comma")
    for n in ends:
        if n not in doc.network.nodes:
            raise ParseError(f"unknown node {n!r} in --between", field="--between", id=n)
    R = reduction.effective_resistance(network_laplacian(doc.network), *ends)
    return 0, {"between": ends, "resistance": R}


def _solution_dict(sol, bl_or_none=None):
    out = {
        "potentials": {n: v for n, v in sol.potentials().items()},
        "currents": {n: v for n, v in sol.currents().items()},
        "prescribed": sorted(sol.prescribed),
    }
    if bl_or_none is not None:
        out["residual"] = sol.residual(bl_or_none)
    return out


def cmd_solve(args):
    doc = read_netlist(args.file)
    _, bl = _real_setup(doc)
    psi_B = doc.vector("boundary_potentials", doc.partition.boundary)
    J_C = doc.vector("internal_currents", doc.partition.internal, default=0.0)
    sol = boundary.combined_solve(bl, psi_B, J_C)
    return 0, _solution_dict(sol, bl)


def cmd_powerflow(args):
    doc = read_netlist(args.file)
    _, bl = _real_setup(doc)
    spec = powerflow.PowerSpec(
        doc.vector("boundary_potentials", doc.partition.boundary),
        doc.vector("internal_powers", doc.partition.internal, default=0.0),
    )
    res = powerflow.pf_solve(bl, spec, n_random=args.starts, seed=args.seed)
    internal = doc.partition.internal
    return 0, {
        "open_circuit_potentials": dict(zip(internal, powerflow.open_circuit_potentials(bl, spec))),
        "solutions_found": [
            {
                "potentials": dict(zip(internal, s.psi_C)),
                "residual": s.residual,
                "iterations": s.iterations,
                "degenerate": s.degenerate,
            }
            for s in res.solutions
        ],
        "starts": res.starts,
        "converged": res.converged,
        "failures": res.failures,
        "tolerance": res.tol,
    }


def cmd_inverse_check(args):
    doc = read_netlist(args.file)
    doc.network.conductances()
    rep = inverse.identifiability(incidence(doc.network), doc.partition, probes=args.probes, seed=args.seed)
    return 0, rep.to_dict()


def cmd_inverse_fit(args):
    doc = read_netlist(args.file)
    doc.network.conductances()
    nodes, matrix = read_target(args.target)
    if set(nodes) != set(doc.partition.boundary) or len(nodes) != doc.partition.N_B:
        raise ParseError("target nodes must be exactly the boundary nodes", field="target.nodes")
    fit = inverse.reconstruct(
        incidence(doc.network), doc.partition, Laplacian(matrix, nodes), strict=args.strict, seed=args.seed
    )
    return 0, {
        "g": {e.id: gk for e, gk in zip(doc.network.edges, fit.g)},
        "misfit": fit.misfit,
        "iterations": fit.iterations,
    }


def _phasor_setup(args):
    doc = read_netlist(args.file)
    omega = args.omega if args.omega is not None else doc.frequency
    return doc, phasor.complex_laplacian(doc.network, omega), omega


def cmd_phasor_reduce(args):
    doc, Lc, omega = _phasor_setup(args)
    red = phasor.complex_kron_reduce(Lc, doc.partition)
    return 0, {"omega": omega, "nodes": list(red.nodes), "laplacian": red.matrix}


def cmd_phasor_solve(args):
    doc, Lc, omega = _phasor_setup(args)
    psi_B = doc.vector("boundary_potentials", doc.partition.boundary, dtype=complex)
    sol = phasor.complex_boundary_solve(Lc, doc.partition, psi_B)
    out = {"omega": omega}
    out.update(_solution_dict(sol))
    return 0, out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kirchhoff", description="Analysis of open linear resistive (and RLC) networks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="structural report on a netlist")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("laplacian", help="weighted Laplacian D G D^T")
    s.add_argument("file")
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.set_defaults(func=cmd_laplacian)

    s = sub.add_parser("reduce", help="Kron reduction onto the boundary nodes")
    s.add_argument("file")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("resistance", help="effective resistance between two nodes")
    s.add_argument("file")
    s.add_argument("--between", required=True, metavar="A,B")
    s.set_defaults(func=cmd_resistance)

    s = sub.add_parser("solve", help="boundary potentials plus internal currents")
    s.add_argument("file")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("powerflow", help="prescribed internal powers, multi-start Newton")
    s.add_argument("file")
    s.add_argument("--starts", type=int, default=powerflow.N_RANDOM_STARTS, help="number of random starts")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_powerflow)

    inv = sub.add_parser("inverse", help="conductance identification from L_S").add_subparsers(
        dest="inverse_command", required=True
    )
    s = inv.add_parser("check", help="local identifiability report")
    s.add_argument("file")
    s.add_argument("--probes", type=int, default=3)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_inverse_check)
    s = inv.add_parser("fit", help="fit conductances to a target boundary Laplacian")
    s.add_argument("file")
    s.add_argument("--target", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--strict", action="store_true", help="fail on a rank-deficient Jacobian")
    s.set_defaults(func=cmd_inverse_fit)

    ph = sub.add_parser("phasor", help="steady-state RLC analysis").add_subparsers(
        dest="phasor_command", required=True
    )
    for name, func in (("reduce", cmd_phasor_reduce), ("solve", cmd_phasor_solve)):
        s = ph.add_parser(name)
        s.add_argument("file")
        s.add_argument("--omega", type=float, default=None, help="angular frequency (rad/s)")
        s.set_defaults(func=func)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        code, out = args.func(args)
    except KirchhoffError as exc:
        _emit_error(exc.to_dict())
        return exc.exit_code
    except OSError as exc:
        _emit_error({"error": "FileError", "message": str(exc)})
        return 1
    except Exception as exc:  # noqa: BLE001 - never leak a bare traceback
        _emit_error({"error": type(exc).__name__, "message": str(exc)})
        return 2
    sys.stdout.write((out if isinstance(out, str) else dumps(out)) + "\n")
    return code


def _emit_error(obj):
    sys.stderr.write(dumps(obj) + "\n")


if __name__ == "__main__":
    sys.exit(main())
