"""Command-line front end: JSON state files in, deterministic reports out.

State file schema (version 1)::

    {
      "format": 1,
      "dimension": 6,           # 6..9
      "degree": 3,
      "scalar_mode": "rational",  # or "float"
      "amplitudes": [
        {"indices": [1, 2, 3], "re": "1", "im": "0"},
        ...
      ]
    }

In rational mode ``re``/``im`` are fraction strings ("p/q" or "p"); in float
mode they are decimal strings.  Indices are 1-based and pairwise distinct;
non-increasing triples are normalized by permutation sign on load and
duplicate index sets are rejected.

Exit codes: 0 classified, 2 input error, 3 unclassified.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .classify import classify
from .exterior import (AltTensor, canonical_state, embed_three_qubits,
                       embed_three_qutrits, slocc_apply, sort_indices)
from .invariants import (J_DEGREES, eight_i, invariant_is_zero, nine_js,
                         qutrit_normal_form_coefficients,
                         qutrit_normal_invariants, quartic_d, seven_j)
from .oracle import random_invertible, random_state, selfcheck
from .scalars import GaussianRational, imag_part, to_complex
from .spectra import occupation_spectrum, pinning_analysis

FORMAT_VERSION = 1


class CliError(Exception):
    """Input error; the message names the offending field."""


# ---------------------------------------------------------------------------
# scalar and state (de)serialization


def _parse_scalar(entry, mode, where):
    re_s = entry.get("re", "0")
    im_s = entry.get("im", "0")
    try:
        if mode == "rational":
            re = Fraction(str(re_s))
            im = Fraction(str(im_s))
            if im == 0 and re.denominator == 1:
                return int(re)
            return GaussianRational(re, im)
        re = float(re_s)
        im = float(im_s)
        return complex(re, im)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"{where}: bad scalar ({exc})") from None


def _format_scalar(value, mode):
    if mode == "rational":
        if isinstance(value, GaussianRational):
            return str(value.re), str(value.im)
        return str(Fraction(value)), "0"
    c = to_complex(value)
    return repr(c.real), repr(c.imag)


def parse_state(doc) -> tuple:
    """(AltTensor, mode) from a state-file dict; raises CliError on bad input."""
    if doc.get("format") != FORMAT_VERSION:
        raise CliError("format: expected version 1")
    dim = doc.get("dimension")
    if not isinstance(dim, int) or not 6 <= dim <= 9:
        raise CliError("dimension: must be an integer in 6..9")
    if doc.get("degree") != 3:
        raise CliError("degree: must be 3")
    mode = doc.get("scalar_mode")
    if mode not in ("rational", "float"):
        raise CliError("scalar_mode: must be 'rational' or 'float'")
    amps = doc.get("amplitudes")
    if not isinstance(amps, list):
        raise CliError("amplitudes: must be a list")
    seen = set()
    terms = []
    for pos, entry in enumerate(amps):
        where = f"amplitudes[{pos}]"
        idx = entry.get("indices")
        if (not isinstance(idx, list) or len(idx) != 3
                or any(not isinstance(i, int) for i in idx)):
            raise CliError(f"{where}.indices: need three integers")
        if any(not 1 <= i <= dim for i in idx):
            raise CliError(f"{where}.indices: out of range 1..{dim}")
        sign, st = sort_indices(idx)
        if sign == 0:
            raise CliError(f"{where}.indices: repeated index")
        if st in seen:
            raise CliError(f"{where}.indices: duplicate index set {list(st)}")
        seen.add(st)
        terms.append((tuple(idx), _parse_scalar(entry, mode, where)))
    return AltTensor.from_terms(dim, 3, terms), mode


def state_document(p: AltTensor, mode: str) -> dict:
    amps = []
    for t, v in p.terms():
        re_s, im_s = _format_scalar(v, mode)
        amps.append({"indices": list(t), "re": re_s, "im": im_s})
    return {
        "format": FORMAT_VERSION,
        "dimension": p.dim,
        "degree": 3,
        "scalar_mode": mode,
        "amplitudes": amps,
    }


def load_state(path) -> tuple:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CliError(f"input: cannot read {path} ({exc})") from None
    except json.JSONDecodeError as exc:
        raise CliError(f"input: invalid JSON ({exc})") from None
    return parse_state(doc)


def emit(doc, stream=None):
    stream = stream or sys.stdout
    json.dump(doc, stream, sort_keys=True, indent=2)
    stream.write("\n")


# ---------------------------------------------------------------------------
# report assembly


def _value_field(value, mode, degree, scale):
    re_s, im_s = _format_scalar(value, mode)
    field = {"re": re_s, "im": im_s, "degree": degree}
    if mode == "float":
        field["zero"] = invariant_is_zero(value, scale, degree)
    else:
        field["zero"] = not value
    return field


def build_report(p: AltTensor, mode: str, real: bool = False) -> dict:
    scale = p.max_abs()
    label = classify(p, real_mode=real)
    report = {
        "format": FORMAT_VERSION,
        "tool": {"name": "trivec", "version": __version__},
        "arithmetic": "exact" if mode == "rational" else "float",
        "input": {
            "dimension": p.dim,
            "degree": 3,
            "amplitude_count": len(p.masks()),
            "norm_sq": _format_scalar(p.norm_sq(), mode)[0],
        },
        "classification": {
            "dimension": p.dim,
            "label": label.label,
            "signature": list(_jsonable(x) for x in label.signature),
        },
        "invariants": {},
        "spectrum": None,
    }
    inv = report["invariants"]
    if p.dim == 6:
        inv["quartic_d"] = _value_field(quartic_d(p), mode, 4, scale)
    elif p.dim == 7:
        inv["seven_j"] = _value_field(seven_j(p), mode, 7, scale)
    elif p.dim == 8:
        inv["eight_i"] = _value_field(eight_i(p), mode, 16, scale)
    else:
        js = label.detail.get("J") or nine_js(p)
        for name, val, deg in zip(("J12", "J18", "J24", "J30"), js, J_DEGREES):
            inv[name] = _value_field(val, mode, deg, scale)
        deltas = label.detail.get("deltas")
        if deltas is not None:
            for name, val, deg in zip(("Delta132", "Delta48", "Delta48p", "Delta24"),
                                      deltas, (132, 48, 48, 24)):
                inv[name] = _value_field(val, mode, deg, scale)
                if name == "Delta132" and mode == "float":
                    inv[name]["confidence"] = "low"
        if "rank_T" in label.detail:
            report["classification"]["rank_T"] = label.detail["rank_T"]
    if p.dim in (6, 7) and not p.is_zero():
        spec = occupation_spectrum(p)
        pin = pinning_analysis(p)
        report["spectrum"] = {
            "occupations_descending": [float(x) for x in spec.eigenvalues],
            "constraints": pin["constraints"],
            "pinning": {
                "support_pattern": pin["support_pattern"],
                "consistent": pin["consistent"],
                "violations": pin["violations"],
            },
        }
    return report


def _jsonable(x):
    if isinstance(x, bool) or isinstance(x, int):
        return x
    return str(x)


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args) -> int:
    p, mode = load_state(args.input)
    if args.mode:
        want = "rational" if args.mode == "exact" else "float"
        if want != mode:
            raise CliError(f"mode: file is {mode}, requested {args.mode}")
    if args.real and any(imag_part(v) for v in p.masks().values()):
        raise CliError("real: state has nonreal amplitudes")
    report = build_report(p, mode, real=args.real)
    emit(report)
    return 0 if report["classification"]["label"] != "Unclassified" else 3


def cmd_canonical(args) -> int:
    params = ()
    if args.params:
        try:
            params = tuple(Fraction(tok) for tok in args.params.split(","))
        except ValueError as exc:
            raise CliError(f"params: {exc}") from None
    try:
        p = canonical_state(args.dim, args.cls, params)
    except KeyError as exc:
        raise CliError(f"class: {exc.args[0]}") from None
    except ValueError as exc:
        raise CliError(f"params: {exc}") from None
    doc = state_document(p, "rational")
    if args.out:
        with open(args.out, "w") as fh:
            emit(doc, fh)
    else:
        emit(doc)
    return 0


def cmd_random(args) -> int:
    if args.slocc_of:
        p, mode = load_state(args.slocc_of)
        g = random_invertible(p.dim, args.seed)
        out = slocc_apply(g, p)
    else:
        if args.dim is None:
            raise CliError("dim: required without --slocc-of")
        out = random_state(args.dim, args.seed)
        mode = "rational"
    doc = state_document(out, mode)
    if args.out:
        with open(args.out, "w") as fh:
            emit(doc, fh)
    else:
        emit(doc)
    return 0


def _load_psi(path, count, mode):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"input: {exc}") from None
    amps = doc.get("amplitudes")
    if not isinstance(amps, list) or len(amps) > count:
        raise CliError(f"amplitudes: expected at most {count} entries")
    psi = {}
    for pos, entry in enumerate(amps):
        where = f"amplitudes[{pos}]"
        idx = entry.get("indices")
        if not isinstance(idx, list) or len(idx) != 3:
            raise CliError(f"{where}.indices: need three labels")
        key = tuple(idx)
        if key in psi:
            raise CliError(f"{where}.indices: duplicate {idx}")
        psi[key] = _parse_scalar(entry, mode, where)
    return psi


def cmd_embed(args) -> int:
    mode = args.mode or "exact"
    mode = "rational" if mode == "exact" else "float"
    if args.type == "qubit3":
        psi = _load_psi(args.input, 8, mode)
        for key in psi:
            if any(b not in (0, 1) for b in key):
                raise CliError(f"indices: qubit labels are 0/1, got {list(key)}")
        p = embed_three_qubits(psi)
    else:
        psi = _load_psi(args.input, 27, mode)
        for key in psi:
            if any(m not in (1, 2, 3) for m in key):
                raise CliError(f"indices: qutrit labels are 1..3, got {list(key)}")
        p = embed_three_qutrits(psi)
    doc = state_document(p, mode)
    if args.out:
        with open(args.out, "w") as fh:
            emit(doc, fh)
    report = {"embedded": doc if not args.out else {"written_to": args.out},
              "classification": None}
    label = classify(p)
    report["classification"] = {"dimension": p.dim, "label": label.label}
    if args.type == "qutrit3":
        nf = qutrit_normal_form_coefficients(psi)
        if nf is not None and mode == "rational":
            vals = qutrit_normal_invariants(*nf)
            scale = p.max_abs()
            verdicts = {k: _value_field(vals[k], mode, deg, scale)
                        for k, deg in (("D36", 36), ("D24", 24), ("D21", 21))}
            report["qutrit_family_separation"] = verdicts
        else:
            report["qutrit_family_separation"] = None
    emit(report)
    return 0


def cmd_rdm(args) -> int:
    p, mode = load_state(args.input)
    if p.is_zero():
        raise CliError("amplitudes: zero state has no density matrix")
    spec = occupation_spectrum(p)
    report = {
        "format": FORMAT_VERSION,
        "tool": {"name": "trivec", "version": __version__},
        "dimension": p.dim,
        "occupations_descending": [float(x) for x in spec.eigenvalues],
    }
    if p.dim in (6, 7):
        pin = pinning_analysis(p)
        report["constraints"] = pin["constraints"]
        report["pinning"] = {
            "support_pattern": pin["support_pattern"],
            "class_label": pin["class_label"],
            "consistent": pin["consistent"],
            "violations": pin["violations"],
        }
    else:
        report["constraints"] = None
        report["note"] = "polytope constraints are tabulated for 6 and 7 modes only"
    emit(report)
    return 0


def cmd_selfcheck(args) -> int:
    results = selfcheck(verbose=True)
    bad = [name for name, ok in results if not ok]
    emit({"checks": [{"name": n, "ok": ok} for n, ok in results],
          "passed": not bad})
    return 0 if not bad else 1


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="trivec",
        description="Classify pure three-fermion states (6..9 modes), "
                    "compute their invariants and occupation spectra.")
    ap.add_argument("--json", action="store_true",
                    help="emit JSON reports (always on; accepted for compatibility)")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify a state file")
    c.add_argument("--input", required=True)
    c.add_argument("--real", action="store_true",
                   help="real classification (splits the generic class)")
    c.add_argument("--mode", choices=("exact", "float"))
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("canonical", help="write a canonical representative")
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--class", dest="cls", required=True)
    c.add_argument("--params", help="comma-separated family parameters")
    c.add_argument("--out")
    c.set_defaults(func=cmd_canonical)

    c = sub.add_parser("random", help="random state or random group image")
    c.add_argument("--dim", type=int)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--slocc-of", dest="slocc_of",
                   help="apply a random invertible element to this state file")
    c.add_argument("--out")
    c.set_defaults(func=cmd_random)

    c = sub.add_parser("embed", help="embed qubit/qutrit amplitudes")
    c.add_argument("--type", choices=("qubit3", "qutrit3"), required=True)
    c.add_argument("--input", required=True)
    c.add_argument("--out")
    c.add_argument("--mode", choices=("exact", "float"))
    c.set_defaults(func=cmd_embed)

    c = sub.add_parser("rdm", help="occupation spectrum and pinning report")
    c.add_argument("--input", required=True)
    c.set_defaults(func=cmd_rdm)

    c = sub.add_parser("selfcheck", help="run the brute-force audit suite")
    c.set_defaults(func=cmd_selfcheck)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
