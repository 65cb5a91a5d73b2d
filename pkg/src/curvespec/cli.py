"""Command-line front end.

Thin wrappers only: every number printed here is produced by a library
call.  Exit codes: 0 success / verified, 1 verification failed (nonzero
residual, violated bound, deficient rank, or no witness where one is
required), 2 input error.  Fractions cross this boundary as ``p/q``
strings; no floating point appears on any interface.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bounds as bounds_mod
from . import newton as newton_mod
from .basictypes import TypeCombo, alpha_max, basic_type
from .errors import CurveSpecError
from .expressions import (
    expression_spectrum,
    expression_type_combo,
    parse_expression,
    parse_parts,
)
from .formulas import (
    find_spectral_pair_counterexample,
    spectral_pairs_from_graph,
    spectrum_from_graph,
)
from .recombine import (
    Detachment,
    SwapInstance,
    basis_kernel,
    basis_rank,
    decompose_chain,
    decompose_graph,
    decompose_graph_to_basic,
    recover_multiplicity,
    spectrum_to_basic,
    swap_at_divisor,
    tangential_identity_check,
)
from .resolution import load_graph
from .spectrum import SpectrumCombo, as_rational, format_rational

OK, FAILED, INPUT_ERROR = 0, 1, 2


def _load_spectrum(args) -> tuple[SpectrumCombo, int | None]:
    """Spectrum plus, when determined by the input, the germ multiplicity."""
    if getattr(args, "graph", None):
        graph = load_graph(args.graph)
        return spectrum_from_graph(graph), graph.multiplicity(graph.base)
    terms = parse_expression(args.type)
    combo = expression_spectrum(terms)
    if len(terms) == 1 and terms[0][0] == 1:
        return combo, terms[0][1].multiplicity()
    return combo, None


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_spec(args) -> int:
    combo, mult = _load_spectrum(args)
    payload = {
        "terms": combo.to_json_terms(),
        "mu": combo.total_mass(),
        "alpha_max": format_rational(combo.max_value()) if combo else None,
    }
    lines = [str(combo), f"mu = {payload['mu']}"]
    if payload["alpha_max"] is not None:
        lines.append(f"alpha_max = {payload['alpha_max']}")
    if args.recover_mult:
        recovered = recover_multiplicity(combo, args.dmax)
        payload["multiplicity"] = recovered
        lines.append(f"multiplicity = {recovered}")
    _emit(args, payload, lines)
    return OK


def cmd_spp(args) -> int:
    if args.graph:
        graph = load_graph(args.graph)
    else:
        terms = parse_expression(args.type)
        if len(terms) != 1 or terms[0][0] != 1:
            raise CurveSpecError("spectral pairs need a single unweighted atom or a graph")
        graph = terms[0][1].graph()
    pairs = spectral_pairs_from_graph(graph)
    payload = {
        "terms": [
            {"value": format_rational(v), "weight": w, "coeff": c}
            for (v, w), c in pairs.items()
        ],
        "mass": pairs.total_mass(),
    }
    _emit(args, payload, [str(pairs), f"mass = {payload['mass']}"])
    return OK


def _format_type_combo(combo: TypeCombo) -> str:
    return str(combo)


def cmd_decompose(args) -> int:
    if args.graph:
        graph = load_graph(args.graph)
        chains = decompose_graph(graph)
        basics = decompose_graph_to_basic(graph)
        chain_text = " ".join(
            f"{'+' if coeff > 0 else '-'} {abs(coeff)}*{ct}"
            for ct, coeff in sorted(chains.items(), key=lambda kv: (len(kv[0].parts), kv[0].parts))
        ).lstrip("+ ")
        payload = {
            "chains": [
                {"parts": list(ct.parts), "coeff": coeff} for ct, coeff in sorted(
                    chains.items(), key=lambda kv: (len(kv[0].parts), kv[0].parts)
                )
            ],
            "basic": [
                {"p": bt.p, "q": bt.q, "coeff": c} for bt, c in basics.items()
            ],
        }
        _emit(args, payload, [f"chains: {chain_text}", f"basic: {_format_type_combo(basics)}"])
        return OK
    terms = parse_expression(args.type)
    if len(terms) == 1 and terms[0][0] == 1 and terms[0][1].kind == "chain":
        combo = decompose_chain(terms[0][1].args)
    else:
        spectrum = expression_spectrum(terms)
        solved = spectrum_to_basic(spectrum, args.dmax)
        if solved is None:
            print("infeasible: spectrum is outside the span of the candidate types")
            return FAILED
        combo = solved
    payload = {"basic": [{"p": bt.p, "q": bt.q, "coeff": c} for bt, c in combo.items()]}
    _emit(args, payload, [f"basic: {_format_type_combo(combo)}"])
    return OK


def _parse_detach(spec: str | None) -> Detachment:
    if not spec:
        return Detachment()
    germs = 0
    subtrees: tuple[int, ...] = ()
    for token in spec.split(";"):
        token = token.strip()
        if not token:
            continue
        key, _, value = token.partition("=")
        if key == "germs":
            germs = int(value)
        elif key == "subtrees":
            subtrees = tuple(int(x) for x in value.split(",") if x.strip())
        else:
            raise CurveSpecError(f"unknown detach token {token!r}")
    return Detachment(germs=germs, subtrees=subtrees)


def cmd_check(args) -> int:
    if args.kind == "swap":
        graph = load_graph(args.graph)
        instance = SwapInstance(
            graph=graph,
            pivot=args.pivot,
            detached=_parse_detach(args.detach),
            degree=args.degree,
        )
        residual = swap_at_divisor(instance).spec_residual
        print(f"swap residual: {residual}")
        return OK if not residual else FAILED
    if args.kind == "eq1":
        parts = parse_parts(args.parts)
        residual = tangential_identity_check(parts)
        print(f"tangential residual: {residual}")
        return OK if not residual else FAILED
    if args.kind == "ring26":
        from .basictypes import check_generator_relation

        type_res, spec_res = check_generator_relation(args.q, args.q2)
        print(f"type residual: {type_res}")
        print(f"spectrum residual: {spec_res}")
        return OK if not type_res and not spec_res else FAILED
    if args.kind == "spp-additivity":
        witness = find_spectral_pair_counterexample(args.budget)
        if witness is None:
            print(f"no witness within multiplicity budget {args.budget}")
            return FAILED
        print(f"witness parts: {witness.parts[0]} and {witness.parts[1]}")
        print(f"spectrum residual: {witness.spec_residual}")
        print(f"spectral-pair residual: {witness.spp_residual}")
        return OK
    raise CurveSpecError(f"unknown check kind {args.kind!r}")


def cmd_bounds(args) -> int:
    if args.kind == "givental":
        if args.graph:
            graph = load_graph(args.graph)
            combo = spectrum_from_graph(graph)
            r = args.r if args.r else bounds_mod.givental_r(graph)
        else:
            combo = expression_spectrum(parse_expression(args.type))
            if not args.r:
                raise CurveSpecError("--r is required with --type input")
            r = args.r
        report = bounds_mod.givental_check(combo, r)
        k = len(report.alphas)
        if not report.alphas:
            print(f"r={report.r}, k=0, no pairs, OK")
            return OK
        pair_note = (
            "no pairs"
            if k <= report.r
            else f"{k - report.r - 1 + 1} pairs, equalities at {list(report.equality_indices)}"
        )
        verdict = "OK" if report.holds else f"VIOLATED at {list(report.violations)}"
        print(f"r={report.r}, k={k}, {pair_note}, {verdict}")
        return OK if report.holds else FAILED
    if args.kind == "durfee-curve":
        combo, mult = _load_spectrum(args)
        m = args.mult if args.mult else mult
        if m is None:
            raise CurveSpecError("--mult is required for weighted expressions")
        rows = []
        alphas = [as_rational(a) for a in args.alpha.split(",")]
        ok = True
        for alpha in alphas:
            lhs, rhs, holds = bounds_mod.durfee_curve_check(combo, m, alpha)
            ok = ok and holds
            rows.append((alpha, lhs, rhs, holds))
        for alpha, lhs, rhs, holds in rows:
            print(
                f"alpha={format_rational(alpha)}: {format_rational(lhs)} > "
                f"{format_rational(rhs)} {'OK' if holds else 'FAILED'}"
            )
        return OK if ok else FAILED
    if args.kind == "durfee-newton":
        diag = newton_mod.load_diagram(args.diagram)
        alpha = as_rational(args.alpha)
        if args.sweep:
            onset = None
            worst = None
            for t in range(1, args.scale + 1):
                lhs, rhs, holds = newton_mod.durfee_newton_check(diag, alpha, t)
                gap = rhs * (1 - alpha) ** diag.n - lhs * (1 - alpha) ** diag.n
                worst = gap if worst is None else max(worst, gap)
                if holds and onset is None:
                    onset = t
                print(
                    f"t={t}: {format_rational(lhs)} > {format_rational(rhs)} "
                    f"{'OK' if holds else 'FAILED'}"
                )
            print(f"onset scale: {onset if onset is not None else 'not reached'}")
            print(f"empirical minimal constant: {format_rational(max(worst, Fraction(0)))}")
            return OK if onset is not None else FAILED
        lhs, rhs, holds = newton_mod.durfee_newton_check(diag, alpha, args.scale)
        print(f"{format_rational(lhs)} > {format_rational(rhs)} {'OK' if holds else 'FAILED'}")
        return OK if holds else FAILED
    raise CurveSpecError(f"unknown bounds kind {args.kind!r}")


def cmd_independence(args) -> int:
    count, rank = basis_rank(args.dmax)
    payload = {"d_max": args.dmax, "candidates": count, "rank": rank}
    lines = [f"d_max = {args.dmax}: {count} candidates, rank {rank}"]
    if rank < count:
        relations = basis_kernel(args.dmax)
        payload["relations"] = [str(rel) for rel in relations]
        lines.append(f"{len(relations)} independent relation(s) found:")
        lines.extend(f"  0 = {rel}" for rel in relations)
    _emit(args, payload, lines)
    return OK if rank == count else FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvespec",
        description="Exact spectra of plane curve singularities from resolution graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, with_recover=False):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--type", help="type expression, e.g. '2*basic(2,2) - ord(4)'")
        src.add_argument("--graph", help="path to a graph JSON file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if with_recover:
            p.add_argument("--recover-mult", action="store_true")
            p.add_argument("--dmax", type=int, default=None)

    p_spec = sub.add_parser("spec", help="spectrum, mu, alpha_max")
    add_io(p_spec, with_recover=True)
    p_spec.set_defaults(func=cmd_spec)

    p_spp = sub.add_parser("spp", help="spectral pairs")
    add_io(p_spp)
    p_spp.set_defaults(func=cmd_spp)

    p_dec = sub.add_parser("decompose", help="chain and basic-type decomposition")
    add_io(p_dec)
    p_dec.add_argument("--dmax", type=int, default=None)
    p_dec.set_defaults(func=cmd_decompose)

    p_check = sub.add_parser("check", help="verify recombination identities")
    p_check.add_argument("kind", choices=["swap", "eq1", "ring26", "spp-additivity"])
    p_check.add_argument("--graph")
    p_check.add_argument("--pivot", type=int)
    p_check.add_argument("--detach", help="e.g. 'germs=2' or 'germs=1;subtrees=3,4'")
    p_check.add_argument("--degree", type=int, default=None)
    p_check.add_argument("--parts", help="semicolon-separated atoms for eq1")
    p_check.add_argument("--q", type=int)
    p_check.add_argument("--q2", type=int)
    p_check.add_argument("--budget", type=int, default=8)
    p_check.set_defaults(func=cmd_check)

    p_bounds = sub.add_parser("bounds", help="spectral inequalities")
    p_bounds.add_argument("kind", choices=["givental", "durfee-curve", "durfee-newton"])
    p_bounds.add_argument("--type")
    p_bounds.add_argument("--graph")
    p_bounds.add_argument("--diagram")
    p_bounds.add_argument("--alpha", default="0", help="exact fraction, e.g. 1/2")
    p_bounds.add_argument("--mult", type=int, default=None)
    p_bounds.add_argument("--r", type=int, default=None)
    p_bounds.add_argument("--scale", type=int, default=1)
    p_bounds.add_argument("--sweep", action="store_true")
    p_bounds.add_argument("--json", action="store_true")
    p_bounds.set_defaults(func=cmd_bounds)

    p_ind = sub.add_parser("independence", help="rank of basic-type spectra")
    p_ind.add_argument("--dmax", type=int, required=True)
    p_ind.add_argument("--json", action="store_true")
    p_ind.set_defaults(func=cmd_independence)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CurveSpecError as err:
        print(f"error: {err}", file=sys.stderr)
        return INPUT_ERROR
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return INPUT_ERROR
    except (ValueError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
