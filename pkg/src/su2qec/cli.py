"""Command-line entry point: build, verify, spectrum, decode-table, encode-check, qubit-cost."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import codes, decoder, statevector, su2
from .lattice import Lattice, LatticeSizeError, build_chain, build_honeycomb
from .pauli import PauliString, commutes, enumerate_errors, in_group, pauli_from

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_DECODE_N = 48


class UsageError(Exception):
    pass


def _num(x):
    """Round floats to 12 significant digits so output is byte-stable."""
    if isinstance(x, (float, np.floating)):
        v = float(f"{float(x):.12g}")
        return 0.0 if v == 0 else v
    if isinstance(x, dict):
        return {k: _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def dumps(obj) -> str:
    return json.dumps(_num(obj), indent=1, sort_keys=True)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# config -> objects
# ---------------------------------------------------------------------------


def lattice_from(args) -> Lattice | None:
    try:
        if args.chain is not None:
            return build_chain(args.chain, args.boundary)
        if args.honeycomb is not None:
            return build_honeycomb(*args.honeycomb, args.boundary)
    except LatticeSizeError as e:
        raise UsageError(str(e)) from e
    return None


def code_from(args) -> codes.StabilizerCode:
    name = args.code
    if name == "vertex":
        return codes.vertex_block_code()
    if name == "carbon":
        return codes.carbon_code()
    if name == "422":
        return codes.code_422()
    lat = lattice_from(args)
    if lat is None:
        raise UsageError(f"--code {name} needs a lattice: pass --chain N or --honeycomb NX NY")
    try:
        if name == "1":
            return codes.build_code1(lat)
        return codes.build_code2(lat)
    except codes.DotAssignmentError as e:
        raise UsageError(f"code II cannot be placed on this lattice: {e}") from e


def summary_line(code: codes.StabilizerCode) -> str:
    n, k, d = code.n, code.k, code.declared[2]
    return f"{code.name}: [[{n},{k},{d}]] n={n} k={k}"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_build(args) -> int:
    code = code_from(args)
    code.check()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(code.to_json() + "\n")
    print(summary_line(code))
    return EXIT_OK


def single_qubit_correction(code: codes.StabilizerCode) -> dict:
    try:
        table = decoder.build_decode_table(code)
    except decoder.NotCorrectableError as e:
        return {"corrected": 0, "total": 3 * code.n, "pass": False, "reason": str(e)}
    ok = sum(
        decoder.correct(code, table, pauli_from(code.n, supp, lets))
        for supp, lets in enumerate_errors(code.n, 1)
    )
    return {"corrected": ok, "total": 3 * code.n, "pass": ok == 3 * code.n}


def verify_report(code: codes.StabilizerCode, lat: Lattice | None, seed: int = 0, budget: int = 1_000_000) -> dict:
    checks: dict[str, dict] = {}
    try:
        code.check()
        checks["generators"] = {"pass": True}
    except Exception as e:  # report, do not crash
        checks["generators"] = {"pass": False, "reason": str(e)}
    n, k, d = code.declared
    checks["parameters"] = {"declared": [n, k, d], "n": code.n, "k": code.k, "pass": (code.n, code.k) == (n, k)}

    dist = codes.verify_distance(code, budget)
    dist_ok = True
    if isinstance(dist["distance"], int):
        dist_ok = dist["distance"] == d
    elif dist["exhaustive"] and dist["distance"] is not None:
        dist_ok = False  # nothing found up to the declared distance
    checks["distance"] = {**dist, "declared": d, "pass": dist_ok}
    if not dist["exhaustive"]:
        checks["distance"]["bounded_verification"] = True

    if d >= 3 and code.n <= MAX_DECODE_N:
        checks["single_qubit_correction"] = single_qubit_correction(code)
    elif d >= 3:
        checks["single_qubit_correction"] = {"bounded_verification": True, "pass": True, "reason": f"n={code.n} > {MAX_DECODE_N}"}

    if code.n <= statevector.MAX_QUBITS:
        dim = statevector.codespace_projector_dim(code, seed=seed)
        checks["codespace_dim"] = {"projector_rank": dim, "expected": 2**code.k, "pass": dim == 2**code.k}
    else:
        checks["codespace_dim"] = {"bounded_verification": True, "pass": True, "reason": f"n={code.n} > {statevector.MAX_QUBITS}"}

    if lat is not None and lat.kind == "chain" and code.name.startswith("code1"):
        checks["topological"] = topological_check(code, lat)

    passed = all(c["pass"] for c in checks.values())
    return {"code": code.name, "checks": checks, "pass": passed}


def topological_check(code: codes.StabilizerCode, lat: Lattice) -> dict:
    """Bottom-link X string: a logical on periodic chains, broken by the corners otherwise."""
    xt = codes.bottom_string(lat)
    comm = all(commutes(xt, g) for g in code.generators)
    out = {
        "operator_support": list(xt.support),
        "commutes_with_stabilizers": comm,
        "in_stabilizer_group": in_group(xt, code.generators),
    }
    out["pass"] = (comm and not out["in_stabilizer_group"]) if lat.periodic else not comm
    return out


def cmd_verify(args) -> int:
    lat = lattice_from(args) if args.code in ("1", "2") else None
    code = code_from(args)
    rep = verify_report(code, lat, seed=args.seed)
    _emit(args, dumps(rep))
    return EXIT_OK if rep["pass"] else EXIT_FAIL


def _spectrum_block(rep: su2.SpectrumReport) -> dict:
    return {
        "basis_dim": rep.dim_a,
        "eigenvalues": rep.eigenvalues_a,
        "logical_dim": rep.dim_b,
        "logical_eigenvalues": rep.eigenvalues_b,
        "comparison": {"max_abs_diff": rep.max_abs_diff, "pass": rep.passed},
    }


def spectrum_report(args) -> dict:
    lat = lattice_from(args)
    if lat is None:
        raise UsageError("spectrum needs --chain N or --honeycomb NX NY")
    g2, a, tol = args.g2, args.a, args.tol
    if g2 <= 0 or a <= 0:
        raise UsageError("--g2 and --a must be positive")
    if lat.n_links > su2.MAX_KS_LINKS:
        raise UsageError(f"{lat.n_links} links exceeds the {su2.MAX_KS_LINKS}-link cap of the full electric basis")
    out = {"code": args.code, "lattice": lat.kind, "size": list(lat.size), "boundary": lat.boundary, "g2": g2, "a": a, "tol": tol}
    try:
        if args.code == "1" and lat.kind == "chain":
            reps = su2.compare_code1_chain(lat.size[0], lat.boundary, g2, a, tol)
            if "all" in reps:
                out.update(_spectrum_block(reps["all"]))
            else:
                out["sectors"] = {k: _spectrum_block(v) for k, v in reps.items()}
                out["comparison"] = {
                    "max_abs_diff": max(v.max_abs_diff for v in reps.values()),
                    "pass": all(v.passed for v in reps.values()),
                }
        elif args.code == "1":
            phys = su2.gauss_project(lat, su2.build_ks_hamiltonian(lat, g2, a))
            out.update(_spectrum_block(su2.spectrum_compare(phys, su2.code1_lattice_logical_hamiltonian(lat, g2, a), tol)))
        elif args.code == "2":
            rep, leak = su2.compare_code2(lat, g2, a, tol)
            out.update(_spectrum_block(rep))
            out["sector_leakage"] = leak
            out["comparison"]["pass"] = rep.passed and leak == 0.0
        else:
            raise UsageError("spectrum supports --code 1 or --code 2")
    except codes.DotAssignmentError as e:
        raise UsageError(f"code II cannot be placed on this lattice: {e}") from e
    except ValueError as e:
        raise UsageError(str(e)) from e
    return out


def cmd_spectrum(args) -> int:
    out = spectrum_report(args)
    _emit(args, dumps(out))
    return EXIT_OK if out["comparison"]["pass"] else EXIT_FAIL


def cmd_decode_table(args) -> int:
    code = code_from(args)
    letters = args.letters or ("Z" if args.code == "vertex" else "XYZ")
    if code.n > MAX_DECODE_N:
        raise UsageError(f"decode tables are limited to n <= {MAX_DECODE_N}")
    try:
        table = decoder.build_decode_table(code, 1, letters)
    except decoder.NotCorrectableError as e:
        out = {"code": code.name, "letters": letters, "correctable": False, "mode": "detect-only", "reason": str(e)}
    else:
        rows = table.to_rows()
        out = {
            "code": code.name,
            "letters": letters,
            "correctable": True,
            "mode": "correct",
            "n_rows": len(rows),
            "n_error_syndromes": sum(1 for r in rows if "1" in r["syndrome"]),
            "rows": rows,
        }
    _emit(args, dumps(out))
    return EXIT_OK


def encode_check_report(seed: int = 0) -> dict:
    rng = np.random.default_rng(seed)
    checks = {}
    alpha, beta = statevector.alpha_state(), statevector.beta_state()
    ea = statevector.encode_code1_link([1, 0])
    eb = statevector.encode_code1_link([0, 1])
    diff = max(np.max(np.abs(ea.amplitudes - alpha.amplitudes)), np.max(np.abs(eb.amplitudes - beta.amplitudes)))
    checks["code1_link"] = {"max_amplitude_error": float(diff), "pass": bool(diff <= 1e-12)}

    codewords = {
        "000": (0b0000, 0b1111),
        "110": (0b1100, 0b0011),
        "101": (0b1010, 0b0101),
        "011": (0b0110, 0b1001),
    }
    worst = 0.0
    for key, (i, j) in codewords.items():
        ref = np.zeros(16, dtype=complex)
        ref[i] = ref[j] = 1 / np.sqrt(2)
        got = statevector.code422_codeword(tuple(int(c) for c in key)).amplitudes
        worst = max(worst, float(np.max(np.abs(got - ref))))
    checks["code422_table"] = {"max_amplitude_error": worst, "pass": worst <= 1e-12}

    carbon = codes.carbon_code()
    basis = [statevector.encode_code2_vertex(np.eye(4)[i]) for i in range(4)]
    stab_err = max(
        abs(statevector.expectation(s, g) - 1) for s in basis for g in carbon.generators
    )
    lx, lz = carbon.logical_xs, carbon.logical_zs
    mapping = all(
        statevector.verify_logical_action(op, basis, PauliString.from_str(exp))
        for op, exp in zip(lx + lz, ["XI", "IX", "ZI", "IZ"])
    )
    checks["code2_vertex"] = {"max_stabilizer_error": float(stab_err), "logical_mapping": mapping,
                              "pass": bool(stab_err <= 1e-12 and mapping)}

    iso = 0.0
    for _ in range(4):
        u = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        u /= np.linalg.norm(u)
        v /= np.linalg.norm(v)
        before = np.vdot(u, v)
        after = statevector.encode_code2_vertex(u).inner(statevector.encode_code2_vertex(v))
        iso = max(iso, abs(before - after))
        u2, v2 = u[:2] / np.linalg.norm(u[:2]), v[:2] / np.linalg.norm(v[:2])
        iso = max(iso, abs(np.vdot(u2, v2) - statevector.encode_code1_link(u2).inner(statevector.encode_code1_link(v2))))
    checks["isometry"] = {"max_inner_product_error": float(iso), "pass": bool(iso <= 1e-12)}

    dims = {}
    for code in (codes.vertex_block_code(), carbon, codes.build_code1(build_chain(1))):
        dims[code.name] = {"projector_rank": statevector.codespace_projector_dim(code, seed), "expected": 2**code.k}
    checks["codespace_dims"] = {"codes": dims, "pass": all(v["projector_rank"] == v["expected"] for v in dims.values())}
    return {"checks": checks, "seed": seed, "pass": all(c["pass"] for c in checks.values())}


def cmd_encode_check(args) -> int:
    rep = encode_check_report(args.seed)
    _emit(args, dumps(rep))
    return EXIT_OK if rep["pass"] else EXIT_FAIL


def cmd_qubit_cost(args) -> int:
    if args.chain is None or args.chain < 1:
        raise UsageError("qubit-cost needs --chain N with N >= 1")
    _emit(args, codes.format_qubit_cost(args.chain))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_lattice(p, code_choices, default_code):
    p.add_argument("--code", choices=code_choices, default=default_code)
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--chain", type=int, metavar="N", help="plaquette chain with N plaquettes")
    grp.add_argument("--honeycomb", type=int, nargs=2, metavar=("NX", "NY"), help="honeycomb with NX x NY hexagons")
    p.add_argument("--boundary", choices=["aperiodic", "periodic"], default="aperiodic")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="su2qec", description="Error-correcting codes for truncated SU(2) lattice gauge theory")
    sub = parser.add_subparsers(dest="command", required=True)
    all_codes = ["1", "2", "vertex", "carbon", "422"]

    p = sub.add_parser("build", help="build a code and print [[n,k,d]]")
    _add_lattice(p, all_codes, "1")
    p.add_argument("--out", help="write the code JSON here")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="check parameters, distance, correction and codespace dimension")
    _add_lattice(p, all_codes, "1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="compare the Gauss-law sector of the lattice Hamiltonian with a logical Hamiltonian")
    _add_lattice(p, ["1", "2"], "1")
    p.add_argument("--g2", type=float, default=1.0, help="squared gauge coupling")
    p.add_argument("--a", type=float, default=1.0, help="lattice spacing")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("decode-table", help="weight-1 syndrome lookup table")
    _add_lattice(p, all_codes, "vertex")
    p.add_argument("--letters", help="error alphabet, e.g. Z or XYZ (default Z for the vertex block, else XYZ)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decode_table)

    p = sub.add_parser("encode-check", help="run the encoding-circuit property checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode_check)

    p = sub.add_parser("qubit-cost", help="physical-qubit comparison for an N-plaquette chain")
    p.add_argument("--chain", type=int, metavar="N", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_qubit_cost)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
