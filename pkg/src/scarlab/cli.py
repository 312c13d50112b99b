"""Command-line front end.

One subcommand per experiment family.  Every run prints one PASS/FAIL line
per check and writes a CSV (deterministic body) plus a JSON sidecar carrying
the tool version, the resolved configuration, and a timestamp.

Exit codes: 0 all checks pass, 1 a physics check failed, 2 numerical
failure, 3 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time

EXIT_OK = 0
EXIT_PHYSICS = 1
EXIT_NUMERICAL = 2
EXIT_INVALID = 3


def _apply_thread_cap():
    cap = os.environ.get("SCARLAB_THREADS")
    if not cap:
        return
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS",
                "NUMEXPR_NUM_THREADS"):
        os.environ.setdefault(var, cap)


_apply_thread_cap()

import numpy as np  # noqa: E402  (after the thread cap)

from . import __version__  # noqa: E402
from .errors import ScarlabError  # noqa: E402


class CheckLog:
    """Collects named checks, prints PASS/FAIL lines, tracks the exit code."""

    def __init__(self):
        self.failed = False

    def check(self, name: str, ok: bool, detail: str = ""):
        status = "PASS" if ok else "FAIL"
        suffix = f"  ({detail})" if detail else ""
        print(f"{status}: {name}{suffix}")
        if not ok:
            self.failed = True

    def info(self, name: str, detail: str):
        print(f"INFO: {name}  ({detail})")

    @property
    def exit_code(self) -> int:
        return EXIT_PHYSICS if self.failed else EXIT_OK


def _write_outputs(outdir: str, name: str, header, rows, config: dict):
    os.makedirs(outdir, exist_ok=True)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    csv_path = os.path.join(outdir, f"{name}.csv")
    with open(csv_path, "w") as fh:
        fh.write(buf.getvalue())
    config = {k: v for k, v in config.items()
              if isinstance(v, (int, float, str, bool, list, type(None)))}
    sidecar = {"version": __version__, "config": config,
               "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S")}
    with open(os.path.join(outdir, f"{name}.json"), "w") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
    return csv_path


def _parse_range(text: str):
    """'4..7' -> [4,5,6,7]; '4,6,8' -> [4,6,8]; '5' -> [5]."""
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(t) for t in text.split(",")]


def _parse_floats(text: str):
    return [float(t) for t in text.split(",")]


def _parse_spin(text: str) -> float:
    if "/" in text:
        num, den = text.split("/")
        return float(num) / float(den)
    return float(text)


def cmd_elliptic(args, log: CheckLog) -> int:
    from .elliptic import complete_K, jacobi, solve_q_kappa
    rng = np.random.default_rng(args.seed)
    kappas = rng.uniform(0.0, 0.95, args.points)
    us = rng.uniform(-20.0, 20.0, args.points)
    worst_id1 = worst_id2 = worst_per = 0.0
    for kappa, u in zip(kappas, us):
        sn, cn, dn = jacobi(u, kappa)
        worst_id1 = max(worst_id1, abs(sn * sn + cn * cn - 1.0))
        worst_id2 = max(worst_id2, abs(dn * dn + kappa * kappa * sn * sn - 1.0))
        sn4, cn4, dn4 = jacobi(u + 4.0 * complete_K(kappa), kappa)
        worst_per = max(worst_per, abs(sn4 - sn), abs(cn4 - cn), abs(dn4 - dn))
    log.check("sn^2 + cn^2 = 1", worst_id1 <= 1e-11, f"max {worst_id1:.2e}")
    log.check("dn^2 + k^2 sn^2 = 1", worst_id2 <= 1e-11, f"max {worst_id2:.2e}")
    log.check("4K periodicity", worst_per <= 1e-11, f"max {worst_per:.2e}")
    worst_rt = 0.0
    for jx, jy, jz in rng.uniform(-1.0, 1.0, (50, 3)):
        vals = sorted((jx, jy, jz))
        jz2, jx2, jy2 = vals[0], vals[1], vals[2]
        # kappa^2 = (Jy^2-Jx^2)/(Jy^2-Jz^2) <= 1 needs |Jz| < Jx
        if jy2 <= 0.0 or jx2 <= 0.0 or jx2 - jz2 < 1e-3 \
                or jy2 - jx2 < 1e-8 or abs(jz2) >= jx2:
            continue
        try:
            q, mod = solve_q_kappa(jx2, jy2, jz2)
        except ScarlabError:
            continue
        sn, cn, dn = jacobi(q, mod.kappa)
        worst_rt = max(worst_rt, abs(dn - jx2 / jy2), abs(cn - jz2 / jy2))
    log.check("coupling round-trip", worst_rt <= 1e-10, f"max {worst_rt:.2e}")
    rows = [["sn2cn2", repr(worst_id1)], ["dn2k2sn2", repr(worst_id2)],
            ["periodicity", repr(worst_per)], ["roundtrip", repr(worst_rt)]]
    _write_outputs(args.out, "elliptic", ["check", "max_residual"], rows, vars(args))
    return log.exit_code


def cmd_frame(args, log: CheckLog) -> int:
    from .frames import CsseCouplings, xyz_reduction
    if args.couplings:
        with open(args.couplings) as fh:
            c = CsseCouplings.from_json(fh.read())
    else:
        c = CsseCouplings(J1=args.J1, J2=args.J2, J3=args.J3,
                          J12=args.J12, J13=args.J13, J23=args.J23)
    sol = xyz_reduction(c)
    jx, jy, jz = sol.xyz
    evals = np.sort(np.linalg.eigvalsh(c.matrix()))
    match = float(np.abs(np.sort(np.array([jx, jy, jz])) - evals).max())
    log.check("frame residual", sol.residual <= 1e-10, f"{sol.residual:.2e}")
    log.check("eigenvalue match", match <= 1e-10, f"{match:.2e}")
    log.check("ordering Jy >= Jx", jy >= jx - 1e-12, f"Jx={jx:.6f} Jy={jy:.6f}")
    rows = [[sol.psi, sol.phi, sol.theta, repr(jx), repr(jy), repr(jz), repr(sol.residual)]]
    _write_outputs(args.out, "frame", ["psi", "phi", "theta", "Jx", "Jy", "Jz", "residual"],
                   rows, vars(args))
    return log.exit_code


def cmd_scar_verify(args, log: CheckLog) -> int:
    from .elliptic import commensurate_q, jacobi_fraction
    from .hamiltonian import build_on_graph, build_xyz_chain
    from .lattice import ScarGraph, check_circuit_rule, generate
    from .scar import ScarSpec, gz_state, residual
    from .spinops import SpinSystem
    helicity = +1 if args.helicity in ("+", "+1", "1") else -1
    if args.graph:
        with open(args.graph) as fh:
            g = ScarGraph.from_json(fh.read())
    elif args.lattice != "chain":
        dims = [int(t) for t in args.dims.split(",")] if args.dims else [args.N]
        g = generate(args.lattice, *dims)
    else:
        g = None
    denom = args.denominator or args.N
    q = commensurate_q(args.p, denom, args.kappa)
    spec = ScarSpec(helicity=helicity, p=args.p, gamma=args.gamma,
                    kappa=args.kappa, q=q)
    if g is None:
        system = SpinSystem(args.S, args.N)
        sn, cn, dn = jacobi_fraction(q.fraction, q.modulus)
        H = build_xyz_chain(args.N, args.S, dn, 1.0, cn)
    else:
        rep = check_circuit_rule(g, q)
        log.check("circuit rule", rep.satisfied, rep.admissible_q)
        if not rep.satisfied:
            return log.exit_code
        system = SpinSystem(args.S, g.num_vertices)
        H = build_on_graph(g, args.S, q)
    psi = gz_state(system, spec, graph=g)
    res = residual(H, psi)
    log.check("eigenstate residual", res <= args.tol, f"{res:.2e} <= {args.tol:.1e}")
    rows = [[args.S, system.N, args.p, args.kappa, args.gamma, helicity, repr(res)]]
    _write_outputs(args.out, "scar_verify",
                   ["S", "N", "p", "kappa", "gamma", "helicity", "residual"],
                   rows, vars(args))
    return log.exit_code


def cmd_degeneracy_scan(args, log: CheckLog) -> int:
    from .spectra import scan_degeneracy
    S_list = [_parse_spin(t) for t in args.S.split(",")]
    N_list = _parse_range(args.N)
    p_list = _parse_range(args.p)
    scan = scan_degeneracy(S_list, N_list, args.kappa, p_list)
    os.makedirs(args.out, exist_ok=True)
    csv_path = os.path.join(args.out, "degeneracy_scan.csv")
    with open(csv_path, "w") as fh:
        fh.write(scan.to_csv())
    with open(os.path.join(args.out, "degeneracy_scan.json"), "w") as fh:
        config = {k: v for k, v in vars(args).items()
                  if isinstance(v, (int, float, str, bool, list, type(None)))}
        doc = json.loads(scan.sidecar(config))
        doc["version"] = __version__
        doc["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S")
        json.dump(doc, fh, indent=2, sort_keys=True)
    for r in scan.rows:
        if r.flag.startswith("error"):
            log.check(f"S={r.S} N={r.N} p={r.p}", False, r.flag)
        elif "special-q" in r.flag:
            log.info(f"S={r.S} N={r.N} p={r.p}",
                     f"count={r.count} special-q (4NS not expected)")
        else:
            log.check(f"S={r.S} N={r.N} p={r.p} count=4NS",
                      r.count == r.expected, f"count={r.count} expected={r.expected}")
    print(f"wrote {csv_path}")
    return log.exit_code


def cmd_projections(args, log: CheckLog) -> int:
    from .scar import projections
    gammas = _parse_floats(args.gammas)
    rows = []
    ok_budget = True
    for gamma in gammas:
        p_same, p_oppo = projections(args.N, args.S, args.p, args.kappa, gamma)
        rows.append([gamma, repr(p_same), repr(p_oppo)])
        if p_same + p_oppo > 1.0 + 1e-12:
            ok_budget = False
    log.check("P+ + P- <= 1", ok_budget)
    if args.kappa == 0.0:
        worst = max(abs(1.0 - float(r[1])) for r in rows)
        log.check("P+ = 1 at kappa=0", worst <= 1e-10, f"max dev {worst:.2e}")
    _write_outputs(args.out, "projections", ["gamma", "P_plus", "P_minus"],
                   rows, vars(args))
    return log.exit_code


def cmd_span(args, log: CheckLog) -> int:
    from .scar import span_rank
    kappas = _parse_floats(args.kappas)
    rows = []
    cap = int(round(4 * args.N * args.S))
    ok = True
    for kappa in kappas:
        rank = span_rank(args.N, args.S, kappa, p=args.p)
        rows.append([kappa, rank])
        if rank > cap:
            ok = False
    log.check(f"rank <= 4NS = {cap}", ok, str([r[1] for r in rows]))
    _write_outputs(args.out, "span", ["kappa", "rank"], rows, vars(args))
    return log.exit_code


def cmd_lattice_check(args, log: CheckLog) -> int:
    from .elliptic import commensurate_q
    from .lattice import ScarGraph, check_circuit_rule, check_vertex_rule, classify
    with open(args.graph) as fh:
        g = ScarGraph.from_json(fh.read())
    violations = check_vertex_rule(g)
    log.check("vertex rule", not violations,
              f"{len(violations)} violating vertices" if violations else "all zero")
    if args.p is not None and args.denominator is not None:
        q = commensurate_q(args.p, args.denominator, args.kappa)
        rep = check_circuit_rule(g, q)
        log.check("circuit rule", rep.satisfied, rep.admissible_q)
    cls = classify(g)
    log.info("classification", cls)
    rows = [[g.num_vertices, len(g.edges), cls]]
    _write_outputs(args.out, "lattice_check", ["vertices", "edges", "classification"],
                   rows, vars(args))
    return log.exit_code


def cmd_lattice_generate(args, log: CheckLog) -> int:
    from .lattice import generate
    dims = [int(t) for t in args.dims.split(",")]
    options = {}
    if args.shift is not None:
        options["shift"] = args.shift
    g = generate(args.kind, *dims, **options)
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, f"{args.kind}.json")
    with open(path, "w") as fh:
        fh.write(g.to_json())
    log.check("generated", True, f"{g.num_vertices} vertices, {len(g.edges)} edges")
    print(f"wrote {path}")
    return log.exit_code


def cmd_algebra_check(args, log: CheckLog) -> int:
    from .algebra import (degenerate_subspace, lambda_op, standard_sga_witness,
                          subspace_deficit, tau, tau_double_prime)
    from .elliptic import commensurate_q, jacobi_fraction
    from .hamiltonian import build_xyz_chain
    from .scar import gz_energy
    from .spinops import SpinSystem, StateVector, all_up
    N, S, p = args.N, args.S, args.p
    q0 = 2.0 * math.pi * p / N
    H = build_xyz_chain(N, S, 1.0, 1.0, math.cos(q0))
    t = tau(N, S, q0)
    lam = lambda_op(N, S, q0)
    comm = H.matrix @ t.matrix - t.matrix @ H.matrix
    d1 = float(np.abs((comm - lam.matrix).toarray()).max())
    d2 = float(np.abs((t.matrix @ lam.matrix - lam.matrix @ t.matrix).toarray()).max())
    log.check("[H, tau] = Lambda", d1 <= 1e-11, f"{d1:.2e}")
    log.check("[tau, Lambda] = 0", d2 <= 1e-11, f"{d2:.2e}")
    wit = standard_sga_witness(N, S, p)
    worst = max(wit.commutator_residuals)
    log.check("tower ladder closure", worst <= 1e-10, f"max {worst:.2e}")
    rows = [["commutator", repr(d1)], ["mutual", repr(d2)], ["tower", repr(worst)]]
    system = SpinSystem(S, N)
    for kappa in _parse_floats(args.kappas):
        q = commensurate_q(p, N, kappa)
        tpp = tau_double_prime(N, S, q)
        if kappa == 0.0:
            dev = float(np.abs((tpp.matrix - t.matrix).toarray()).max())
            log.check("tau'' = tau at kappa=0", dev <= 1e-13, f"{dev:.2e}")
            rows.append(["tau_pp_limit", repr(dev)])
            continue
        sn, cn, dn = jacobi_fraction(q.fraction, q.modulus)
        Hk = build_xyz_chain(N, S, dn, 1.0, cn)
        basis = degenerate_subspace(Hk, gz_energy(N, S, q))
        vec = all_up(system).amplitudes
        worst_def = 0.0
        for _ in range(int(round(2 * N * S))):
            vec = tpp.matrix @ vec
            psi = StateVector(system, vec / np.linalg.norm(vec))
            worst_def = max(worst_def, subspace_deficit(basis, psi))
        log.info(f"tau'' deficit kappa={kappa}", f"{worst_def:.3e}")
        rows.append([f"deficit_{kappa}", repr(worst_def)])
    _write_outputs(args.out, "algebra_check", ["check", "value"], rows, vars(args))
    return log.exit_code


def cmd_schwinger_check(args, log: CheckLog) -> int:
    from .schwinger import (annihilator_report, decomposition_check,
                            zeta_tower_fidelities)
    N, S, p = args.N, args.S, args.p
    fids = zeta_tower_fidelities(N, S, p)
    dev = max(abs(1.0 - f) for f in fids)
    log.check("zeta-states = rotated tower", dev <= 1e-12, f"max dev {dev:.2e}")
    rep = annihilator_report(N, S)
    worst = max(rep[k] for k in ("zeta", "eta", "epsilon"))
    log.check("zeta/eta/epsilon annihilate", worst <= 1e-12, f"max {worst:.2e}")
    log.check("generic bilinear fails", rep["generic"] > 1e-4, f"{rep['generic']:.2e}")
    q0 = 2.0 * math.pi * p / N
    dcp = decomposition_check(N, S, q0)
    log.check("bilinear decomposition", dcp <= 1e-11, f"{dcp:.2e}")
    rows = [["tower_fidelity_dev", repr(dev)], ["annihilation", repr(worst)],
            ["generic_control", repr(rep["generic"])], ["decomposition", repr(dcp)]]
    _write_outputs(args.out, "schwinger_check", ["check", "value"], rows, vars(args))
    return log.exit_code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="scarlab",
                                 description="Elliptic scar state toolkit")
    ap.add_argument("--out", default=".", help="output directory")
    sub = ap.add_subparsers(dest="command", required=True)

    p_el = sub.add_parser("elliptic", help="elliptic identity suite")
    p_el.add_argument("--points", type=int, default=10000)
    p_el.add_argument("--seed", type=int, default=0)
    p_el.set_defaults(func=cmd_elliptic)

    p_fr = sub.add_parser("frame", help="reduce a CSSE coupling set to XYZ")
    p_fr.add_argument("--couplings", help="couplings JSON path")
    for name in ("J1", "J2", "J3", "J12", "J13", "J23"):
        p_fr.add_argument(f"--{name}", type=float, default=0.0)
    p_fr.set_defaults(func=cmd_frame)

    p_sv = sub.add_parser("scar-verify", help="eigenstate residual of a scar state")
    p_sv.add_argument("--lattice", default="chain")
    p_sv.add_argument("--graph", help="graph JSON path (overrides --lattice)")
    p_sv.add_argument("--dims", help="generator dims, comma separated")
    p_sv.add_argument("--N", type=int, default=6)
    p_sv.add_argument("--S", type=_parse_spin, default=0.5)
    p_sv.add_argument("--p", type=int, default=1)
    p_sv.add_argument("--kappa", type=float, default=0.0)
    p_sv.add_argument("--gamma", type=float, default=0.0)
    p_sv.add_argument("--helicity", default="+")
    p_sv.add_argument("--denominator", type=int)
    p_sv.add_argument("--tol", type=float, default=1e-10)
    p_sv.set_defaults(func=cmd_scar_verify)

    p_dg = sub.add_parser("degeneracy-scan", help="degeneracy at the scar energy")
    p_dg.add_argument("--S", default="1")
    p_dg.add_argument("--N", default="4..7")
    p_dg.add_argument("--kappa", type=float, default=0.8)
    p_dg.add_argument("--p", default="1")
    p_dg.set_defaults(func=cmd_degeneracy_scan)

    p_pj = sub.add_parser("projections", help="tower projections of the scar")
    p_pj.add_argument("--N", type=int, default=7)
    p_pj.add_argument("--S", type=_parse_spin, default=1.0)
    p_pj.add_argument("--p", type=int, default=1)
    p_pj.add_argument("--kappa", type=float, default=0.8)
    p_pj.add_argument("--gammas", default="0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")
    p_pj.set_defaults(func=cmd_projections)

    p_sp = sub.add_parser("span", help="rank of the scar family span")
    p_sp.add_argument("--N", type=int, default=7)
    p_sp.add_argument("--S", type=_parse_spin, default=1.0)
    p_sp.add_argument("--p", type=int, default=1)
    p_sp.add_argument("--kappas", default="0.0,0.2,0.5,0.8")
    p_sp.set_defaults(func=cmd_span)

    p_lc = sub.add_parser("lattice-check", help="rules and classification of a graph")
    p_lc.add_argument("--graph", required=True)
    p_lc.add_argument("--p", type=int)
    p_lc.add_argument("--denominator", type=int)
    p_lc.add_argument("--kappa", type=float, default=0.0)
    p_lc.set_defaults(func=cmd_lattice_check)

    p_lg = sub.add_parser("lattice-generate", help="write a generator graph JSON")
    p_lg.add_argument("--kind", required=True)
    p_lg.add_argument("--dims", required=True)
    p_lg.add_argument("--shift", type=int)
    p_lg.set_defaults(func=cmd_lattice_generate)

    p_ac = sub.add_parser("algebra-check", help="ladder algebra and deformations")
    p_ac.add_argument("--N", type=int, default=5)
    p_ac.add_argument("--S", type=_parse_spin, default=0.5)
    p_ac.add_argument("--p", type=int, default=1)
    p_ac.add_argument("--kappas", default="0.0,0.2,0.4")
    p_ac.set_defaults(func=cmd_algebra_check)

    p_sc = sub.add_parser("schwinger-check", help="boson realization checks")
    p_sc.add_argument("--N", type=int, default=4)
    p_sc.add_argument("--S", type=_parse_spin, default=0.5)
    p_sc.add_argument("--p", type=int, default=1)
    p_sc.set_defaults(func=cmd_schwinger_check)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0,) else 0
    log = CheckLog()
    try:
        return args.func(args, log)
    except (FileNotFoundError, json.JSONDecodeError, ValueError, KeyError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ScarlabError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
