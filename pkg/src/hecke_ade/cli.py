"""Command-line front end.

Subcommands: label, orbit, admissible, rep, classical, render.  Seeds are
JSON files carrying either a label-indexed entry map or a tableau triplet,
plus optional place specializations that are substituted before any orbit is
enumerated.  All outputs are deterministic.
"""
from __future__ import annotations

import argparse
import json
import re
import sys

from .errors import HeckeAdeError, SeedFormatError
from .exact_arith import Monomial, PlaceSymbol, parse_monomial
from .root_data import (RootSystemType, build_labelling, label_from_text,
                        weight_data)
from .sequences import ContentSeq, delta_invariant, enumerate_orbit
from .tableaux import (is_admissible, is_level1, is_level1_by_shapes,
                       render_ascii, triplet_from_seq)
from .representations import (build_rep, classical_limit,
                              irreducibility_evidence, passes_to_quotient,
                              restrict_to_finite, verify_finite_relations,
                              verify_gl_embeddings, verify_relations,
                              verify_weyl_relations)

_PLACE_NAME = re.compile(r"(?:g|gamma)(\d+)")


def _place_from_name(name: str) -> PlaceSymbol:
    m = _PLACE_NAME.fullmatch(name.strip())
    if not m:
        raise SeedFormatError(f"bad place name {name!r}")
    return PlaceSymbol(int(m.group(1)))


def _monomial_from_value(value) -> Monomial:
    if isinstance(value, str):
        return parse_monomial(value)
    if isinstance(value, dict):
        return Monomial.from_json(value)
    raise SeedFormatError(f"cannot read a monomial from {value!r}")


def load_seed(path: str, labelling) -> ContentSeq:
    """Read a seed file: an ``entries`` map or a T1/T2/T3 triplet, plus
    optional ``places`` specializations applied up front."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SeedFormatError(f"cannot read seed {path}: {exc}") from exc
    subs = {}
    for name, decl in data.get("places", {}).items():
        if isinstance(decl, dict) and "expr" in decl:
            subs[_place_from_name(name)] = parse_monomial(decl["expr"])
    if "entries" in data:
        try:
            entries = {label_from_text(k): _monomial_from_value(v)
                       for k, v in data["entries"].items()}
            seq = ContentSeq(labelling, entries)
        except (ValueError, KeyError) as exc:
            raise SeedFormatError(f"bad entries: {exc}") from exc
    elif "T1" in data:
        from .tableaux import Tableau, TripletTableau
        try:
            t1 = Tableau.from_json(data["T1"])
            t2 = Tableau.from_json(data["T2"]) if "T2" in data else t1.restrict(1)
            t3 = (Tableau.from_json(data["T3"]) if "T3" in data
                  else t1.restrict(labelling.k) if labelling.lpp == labelling.k
                  else None)
            if t3 is None:
                raise SeedFormatError("T3 is required for this labelling")
            seq = TripletTableau(labelling, t1, t2, t3).content_seq()
        except ValueError as exc:
            raise SeedFormatError(f"bad tableau seed: {exc}") from exc
    else:
        raise SeedFormatError("seed needs an 'entries' map or a tableau triplet")
    if subs:
        seq = seq.substitute(subs)
    return seq


def _emit(payload: dict, out_path: str | None):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _labelling_from_args(args):
    rst = RootSystemType(args.type, args.rank)
    return build_labelling(rst, args.vertex)


def cmd_label(args) -> int:
    lab = _labelling_from_args(args)
    print(f"{lab.rst} vertex {lab.vertex}: l={lab.l} l'={lab.lp} "
          f"l''={lab.lpp} k={lab.k}")
    for j in lab.vertex_labels():
        print(f"  {j.text():>5}  ->  standard {lab.to_standard[j]}")
    if args.out:
        _emit(lab.to_json(), args.out)
    return 0


def _orbit_payload(args, want_orbit=True):
    lab = _labelling_from_args(args)
    seq = load_seed(args.seed, lab)
    result = is_admissible(seq, max_size=args.max_orbit)
    orbit = result.orbit if result.admissible else enumerate_orbit(
        seq, max_size=args.max_orbit)
    wd = weight_data(lab)
    payload = orbit.to_json() if want_orbit else {}
    payload["admissible"] = result.admissible
    if result.witness is not None:
        payload["witness"] = result.witness.to_json()["entries"]
    payload["level1"] = is_level1(orbit)
    if result.admissible:
        payload["level1_by_shapes"] = is_level1_by_shapes(orbit)
    payload["delta"] = delta_invariant(orbit.members[0], wd).to_json()
    payload["size"] = len(orbit)
    return lab, seq, result, orbit, payload


def cmd_orbit(args) -> int:
    _, _, result, orbit, payload = _orbit_payload(args)
    print(f"orbit size {len(orbit)}; admissible: {result.admissible}; "
          f"level 1: {payload['level1']}")
    _emit(payload, args.out)
    return 0


def cmd_admissible(args) -> int:
    _, _, result, orbit, payload = _orbit_payload(args, want_orbit=False)
    print("admissible" if result.admissible else "not admissible")
    _emit(payload, args.out)
    return 0


def cmd_rep(args) -> int:
    lab = _labelling_from_args(args)
    seq = load_seed(args.seed, lab)
    result = is_admissible(seq, max_size=args.max_orbit)
    if not result.admissible:
        from .errors import NotAdmissible
        raise NotAdmissible(f"witness: {result.witness!r}")
    rep = build_rep(result.orbit)
    wd = weight_data(lab)
    report = verify_relations(rep)
    gl_report = verify_gl_embeddings(rep)
    evidence = irreducibility_evidence(rep)
    payload = rep.to_json()
    payload["report"] = report.to_json()
    payload["gl_report"] = gl_report.to_json()
    payload["irreducibility"] = evidence.to_json()
    payload["passes_to_quotient"] = passes_to_quotient(rep, wd)
    payload["delta"] = delta_invariant(rep.orbit.members[0], wd).to_json()
    fin = restrict_to_finite(rep)
    payload["finite"] = {
        "irreducible_by_level1": fin.irreducible_by_level1,
        "report": verify_finite_relations(fin).to_json(),
    }
    if args.eps is not None:
        wrep = classical_limit(rep, args.eps)
        payload["classical"] = {
            "eps": args.eps,
            "r": {i.text(): [[str(v) for v in row] for row in wrep.r_mats[i]]
                  for i in lab.vertex_labels()},
            "report": verify_weyl_relations(wrep).to_json(),
        }
    print(f"dim {rep.dim}; relations ok: {report.ok}; "
          f"quotient: {payload['passes_to_quotient']}")
    _emit(payload, args.out)
    return 0


def cmd_classical(args) -> int:
    if args.eps is None:
        args.eps = 1
    return cmd_rep(args)


def cmd_render(args) -> int:
    lab = _labelling_from_args(args)
    seq = load_seed(args.seed, lab)
    trip = triplet_from_seq(seq)
    if trip is None:
        from .errors import NotATableau
        raise NotATableau("seed is not the content sequence of a tableau triplet")
    sys.stdout.write(render_ascii(trip))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hecke-ade",
        description="orbits, tableaux and seminormal matrices for marked "
                    "simply-laced diagrams")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("--type", "-t", required=True, choices="ADE")
        p.add_argument("--rank", "-r", required=True, type=int)
        p.add_argument("--vertex", "-v", required=True, type=int,
                       help="marked vertex, standard numbering")
        if seed:
            p.add_argument("--seed", "-s", required=True,
                           help="path to a seed JSON file")
            p.add_argument("--max-orbit", type=int, default=5000)
        p.add_argument("--out", "-o", default=None, help="write JSON here")

    p = sub.add_parser("label", help="show the branch relabelling")
    common(p, seed=False)
    p.set_defaults(func=cmd_label)

    for name, fn, hlp in [
            ("orbit", cmd_orbit, "enumerate the truncated orbit of a seed"),
            ("admissible", cmd_admissible, "decide admissibility only"),
            ("rep", cmd_rep, "build and verify the seminormal matrices"),
            ("classical", cmd_classical, "matrices plus the q=eps limit"),
            ("render", cmd_render, "draw the seed as tableaux")]:
        p = sub.add_parser(name, help=hlp)
        common(p)
        if name in ("rep", "classical"):
            p.add_argument("--eps", type=int, choices=(1, -1), default=None)
        p.set_defaults(func=fn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HeckeAdeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
