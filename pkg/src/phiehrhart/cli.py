"""Command-line front end.

Reads a JSON problem description and prints deterministic JSON (or a
human-readable rendering with ``--pretty``).  Exit codes: 0 success,
1 invalid input, 2 a verification check failed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import oracle
from .equivariant import (
    GroupAction,
    InvarianceError,
    aggregate_orbits,
    equivariant_coeff,
    orbit_decomposition,
    verify_closed_form,
)
from .geometry import DegenerateInput, HalfOpenSimplex, Polytope, half_open_decomposition
from .groups import AbelianGroup, LatticeHomomorphism
from .rings import CoefficientRing, GroupRingElement
from .series import (
    RationalGroupSeries,
    ehrhart_series,
    hstar,
    reciprocity_check,
    shifted_dilation_series,
    simplify_best_effort,
)
from .transforms import (
    Weight,
    brion_check,
    polytope_transform,
    q_ehrhart_series,
    weighted_brion_check,
    weighted_ehrhart_series,
)

COMMANDS = (
    "series",
    "hstar",
    "expand",
    "reciprocity-check",
    "transform",
    "brion-check",
    "weighted-series",
    "weighted-brion-check",
    "q-series",
    "shifted-series",
    "equivariant",
    "oracle-check",
)


class SpecError(ValueError):
    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where


class CheckFailed(Exception):
    def __init__(self, payload: dict):
        super().__init__("verification failed")
        self.payload = payload


@dataclass
class ProblemSpec:
    ring: CoefficientRing
    group: AbelianGroup
    phi: LatticeHomomorphism
    dim: int
    polytope: Polytope | None = None
    simplices: list | None = None
    weight: Weight | None = None
    linear_form: list | None = None
    action: GroupAction | None = None
    shift: tuple | None = None
    q: int | None = None
    order: int | None = None
    expected_series: dict | None = None
    closed_form: list | None = None
    extra: dict = field(default_factory=dict)

    @property
    def shape(self):
        """The polytope, or the manual decomposition if that was given."""
        if self.simplices is not None:
            return self.simplices
        return self.polytope

    def pieces(self) -> list:
        if self.simplices is not None:
            return self.simplices
        return half_open_decomposition(self.polytope)


# -- validation ------------------------------------------------------------------


def _int(x, where) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SpecError(where, f"expected an integer, got {x!r}")
    return x


def _int_list(x, where, length=None) -> list:
    if not isinstance(x, list):
        raise SpecError(where, f"expected a list, got {x!r}")
    out = [_int(v, f"{where}[{i}]") for i, v in enumerate(x)]
    if length is not None and len(out) != length:
        raise SpecError(where, f"expected length {length}, got {len(out)}")
    return out


def _coord(x, where):
    if isinstance(x, list):
        if len(x) != 2:
            raise SpecError(where, "a rational coordinate is [numerator, denominator]")
        num, den = _int(x[0], f"{where}[0]"), _int(x[1], f"{where}[1]")
        if den == 0:
            raise SpecError(where, "zero denominator")
        return Fraction(num, den)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            raise SpecError(where, f"not a rational number: {x!r}") from None
    return Fraction(_int(x, where))


def _point(x, where, dim) -> tuple:
    if not isinstance(x, list) or len(x) != dim:
        raise SpecError(where, f"expected a point of dimension {dim}")
    return tuple(_coord(c, f"{where}[{i}]") for i, c in enumerate(x))


def _require(obj, key, where):
    if key not in obj:
        raise SpecError(where, f"missing key {key!r}")
    return obj[key]


def parse_spec(data: Any) -> ProblemSpec:
    if not isinstance(data, dict):
        raise SpecError("$", "top level must be an object")
    ring_d = data.get("ring", {"kind": "integers"})
    try:
        if isinstance(ring_d, dict) and "modulus" in ring_d:
            _int(ring_d["modulus"], "$.ring.modulus")
        ring = CoefficientRing.from_json(ring_d)
    except (ValueError, TypeError, AttributeError) as e:
        raise SpecError("$.ring", str(e)) from None

    group_d = data.get("group", {"invariant_factors": []})
    if not isinstance(group_d, dict):
        raise SpecError("$.group", "expected an object")
    factors = _int_list(group_d.get("invariant_factors", []), "$.group.invariant_factors")
    if any(f < 0 for f in factors):
        raise SpecError("$.group.invariant_factors", "factors must be >= 0")
    group = AbelianGroup(tuple(factors))
    r = len(group.invariant_factors)

    poly = simplices = None
    if "polytope" in data:
        pd = data["polytope"]
        if not isinstance(pd, dict):
            raise SpecError("$.polytope", "expected an object")
        verts = pd.get("vertices", pd.get("points"))
        if not isinstance(verts, list) or not verts:
            raise SpecError("$.polytope.vertices", "expected a nonempty list of points")
        dim = len(verts[0]) if isinstance(verts[0], list) else -1
        pts = [_point(v, f"$.polytope.vertices[{i}]", dim) for i, v in enumerate(verts)]
        poly = Polytope(pts)
    elif "simplices" in data:
        sd = data["simplices"]
        if not isinstance(sd, list) or not sd:
            raise SpecError("$.simplices", "expected a nonempty list")
        simplices, dim = [], None
        for i, s in enumerate(sd):
            w = f"$.simplices[{i}]"
            verts = _require(s, "vertices", w)
            if dim is None:
                dim = len(verts[0]) if verts and isinstance(verts[0], list) else -1
            pts = [_point(v, f"{w}.vertices[{j}]", dim) for j, v in enumerate(verts)]
            removed = s.get("removed_facets")
            if removed is not None and (not isinstance(removed, list) or len(removed) != len(pts)):
                raise SpecError(f"{w}.removed_facets", "one flag per vertex required")
            try:
                simplices.append(HalfOpenSimplex(pts, removed))
            except (ValueError, DegenerateInput) as e:
                raise SpecError(w, str(e)) from None
    else:
        raise SpecError("$", "need 'polytope' or 'simplices'")

    phi_d = data.get("phi")
    if phi_d is None:
        phi = LatticeHomomorphism.trivial(dim, group)
    else:
        images = _require(phi_d, "images", "$.phi")
        if not isinstance(images, list) or len(images) != dim:
            raise SpecError("$.phi.images", f"expected {dim} images")
        phi = LatticeHomomorphism(
            group, [_int_list(g, f"$.phi.images[{i}]", r) for i, g in enumerate(images)]
        )

    spec = ProblemSpec(ring, group, phi, dim, poly, simplices)

    if "weight" in data:
        wd = data["weight"]
        mons = _require(wd, "monomials", "$.weight") if isinstance(wd, dict) else None
        if not isinstance(mons, list):
            raise SpecError("$.weight.monomials", "expected a list")
        items = []
        for i, m in enumerate(mons):
            w = f"$.weight.monomials[{i}]"
            items.append((_int(_require(m, "coeff", w), f"{w}.coeff"),
                          _int_list(_require(m, "exponents", w), f"{w}.exponents", dim)))
            if any(a < 0 for a in items[-1][1]):
                raise SpecError(f"{w}.exponents", "exponents must be nonnegative")
        spec.weight = Weight(items)
    if "linear_form" in data:
        spec.linear_form = _int_list(data["linear_form"], "$.linear_form", dim)
    if "action" in data:
        ad = data["action"]
        mats = _require(ad, "matrices", "$.action") if isinstance(ad, dict) else None
        if not isinstance(mats, list):
            raise SpecError("$.action.matrices", "expected a list of matrices")
        for i, m in enumerate(mats):
            if not isinstance(m, list) or len(m) != dim:
                raise SpecError(f"$.action.matrices[{i}]", f"expected a {dim}x{dim} matrix")
            for j, row in enumerate(m):
                _int_list(row, f"$.action.matrices[{i}][{j}]", dim)
        try:
            spec.action = GroupAction.generated_by(mats, dim)
        except ValueError as e:
            raise SpecError("$.action", str(e)) from None
    if "shift" in data:
        spec.shift = _point(data["shift"], "$.shift", dim)
    if "q" in data:
        spec.q = _int(data["q"], "$.q")
        if spec.q < 1:
            raise SpecError("$.q", "must be positive")
    if "order" in data:
        spec.order = _int(data["order"], "$.order")
    if "expected_series" in data:
        spec.expected_series = data["expected_series"]
    if "closed_form" in data:
        spec.closed_form = data["closed_form"]
    return spec


# -- output helpers --------------------------------------------------------------


def _series_out(S: RationalGroupSeries, pretty: bool):
    return S.pretty() if pretty else S.to_json()


def _gre_out(x: GroupRingElement, pretty: bool):
    return x.pretty() if pretty else x.to_json()


def _load_series(data, where, ring, group) -> RationalGroupSeries:
    try:
        return RationalGroupSeries.from_json(data, ring, group)
    except (KeyError, TypeError, ValueError) as e:
        raise SpecError(where, f"malformed series: {e}") from None


def _need(value, name):
    if value is None:
        raise SpecError("$", f"this command needs {name!r}")
    return value


def _need_polytope(spec: ProblemSpec) -> Polytope:
    if spec.polytope is None:
        raise SpecError("$.polytope", "this command needs a polytope")
    return spec.polytope


# -- commands ------------------------------------------------------------------


def _compare_expected(spec: ProblemSpec, S: RationalGroupSeries, out: dict):
    if spec.expected_series is None:
        return
    E = _load_series(spec.expected_series, "$.expected_series", spec.ring, spec.group)
    ok = S.equals(E)
    out["matches_expected"] = ok
    if not ok:
        raise CheckFailed(out)


def cmd_series(spec, args):
    S = ehrhart_series(spec.shape, spec.phi, spec.ring)
    if args.simplify:
        S = simplify_best_effort(S)
    out = {"series": _series_out(S, args.pretty)}
    _compare_expected(spec, S, out)
    return out


def cmd_hstar(spec, args):
    rows = []
    for s in spec.pieces():
        num, den = hstar(s, spec.phi, spec.ring)
        S = RationalGroupSeries(num, den)
        rows.append({
            "simplex": s.to_json(),
            "hstar": num.pretty() if args.pretty else num.to_json(),
            "denominator": S.to_json()["denominator"],
        })
    return {"pieces": rows}


def cmd_expand(spec, args):
    S = ehrhart_series(spec.shape, spec.phi, spec.ring)
    coeffs = S.expand(args.order)
    return {"order": args.order, "coefficients": [_gre_out(c, args.pretty) for c in coeffs]}


def cmd_reciprocity(spec, args):
    rows, ok = [], True
    for s in spec.pieces():
        if not s.is_lattice:
            raise SpecError("$", "reciprocity needs lattice simplices")
        rep = reciprocity_check(s, spec.phi, spec.ring)
        ok &= rep.equal
        rows.append({
            "simplex": s.to_json(),
            "hstar_equal": rep.hstar_equal,
            "series_equal": rep.series_equal,
            "hstar_lhs": rep.hstar_lhs.pretty() if args.pretty else rep.hstar_lhs.to_json(),
            "hstar_rhs": rep.hstar_rhs.pretty() if args.pretty else rep.hstar_rhs.to_json(),
        })
    out = {"pieces": rows, "equal": ok}
    if not ok:
        raise CheckFailed(out)
    return out


def cmd_transform(spec, args):
    F = polytope_transform(spec.shape, spec.phi, spec.ring)
    return {"transform": F.to_json()}


def _brion_out(rep, args):
    out = {"equal": rep.equal, "lhs": rep.lhs.to_json(), "rhs": rep.rhs.to_json()}
    if not rep.equal:
        raise CheckFailed(out)
    return out


def cmd_brion(spec, args):
    return _brion_out(brion_check(_need_polytope(spec), spec.phi, spec.ring), args)


def cmd_weighted_series(spec, args):
    w = _need(spec.weight, "weight")
    S = weighted_ehrhart_series(spec.shape, spec.phi, w, spec.ring)
    if args.simplify:
        S = simplify_best_effort(S)
    out = {"series": _series_out(S, args.pretty), "weight_degree": w.degree}
    _compare_expected(spec, S, out)
    return out


def cmd_weighted_brion(spec, args):
    w = _need(spec.weight, "weight")
    return _brion_out(weighted_brion_check(_need_polytope(spec), spec.phi, w, spec.ring), args)


def cmd_q_series(spec, args):
    ell = _need(spec.linear_form, "linear_form")
    res = q_ehrhart_series(spec.shape, ell, spec.phi, spec.ring)
    S = simplify_best_effort(res.series) if args.simplify else res.series
    return {
        "group": res.group.to_json(),
        "series": _series_out(S, args.pretty),
        "polynomial_in_q": res.polynomial_in_q,
    }


def cmd_shifted_series(spec, args):
    v = _need(spec.shift, "shift")
    try:
        S = shifted_dilation_series(_need_polytope(spec), v, spec.q)
    except ValueError as e:
        raise SpecError("$.q", str(e)) from None
    out = {"series": _series_out(S, args.pretty), "coefficients": [c.coeff(()) for c in S.expand(args.order)]}
    return out


def cmd_equivariant(spec, args):
    H = _need(spec.action, "action")
    P = _need_polytope(spec)
    try:
        rows, agree = [], True
        for n in range(args.order + 1):
            cf = equivariant_coeff(P, spec.phi, H, n, spec.ring)
            agg = aggregate_orbits(orbit_decomposition(P, spec.phi, H, n), spec.phi, H, spec.ring)
            agree &= cf == agg
            rows.append({"n": n, "values": [_gre_out(v, args.pretty) for v in cf.values]})
    except InvarianceError as e:
        raise SpecError("$.action", str(e)) from None
    out = {
        "classes": [[[list(r) for r in H.elements[i]] for i in cl] for cl in H.classes],
        "coefficients": rows,
        "orbit_aggregation_agrees": agree,
    }
    ok = agree
    if spec.closed_form is not None:
        if not isinstance(spec.closed_form, list) or len(spec.closed_form) != len(H.classes):
            raise SpecError("$.closed_form", f"expected {len(H.classes)} series, one per class")
        forms = [
            _load_series(f, f"$.closed_form[{k}]", spec.ring, spec.group) for k, f in enumerate(spec.closed_form)
        ]
        rep = verify_closed_form(P, spec.phi, H, forms, args.order, spec.ring)
        out["closed_form_equal"] = rep.equal
        out["mismatches"] = [list(m) for m in rep.mismatches]
        ok &= rep.equal
    if not ok:
        raise CheckFailed(out)
    return out


def cmd_oracle_check(spec, args):
    """Series expansion against brute-force sums for ``n = 0..order``."""
    rng = random.Random(args.seed)
    w = spec.weight
    if w is None and args.seed is not None:
        # a seeded random affine weight exercises the operator route too
        w = Weight([(rng.randint(-3, 3), tuple(int(i == j) for j in range(spec.dim)))
                    for i in range(spec.dim)] + [(rng.randint(-3, 3), (0,) * spec.dim)])
    S = ehrhart_series(spec.shape, spec.phi, spec.ring)
    coeffs = S.expand(args.order)
    table, ok = [], True
    for n, c in enumerate(coeffs):
        b = oracle.brute_ehrhart(spec.shape, spec.phi, n, spec.ring)
        row = {"n": n, "series": _gre_out(c, args.pretty), "oracle": _gre_out(b, args.pretty), "equal": c == b}
        ok &= c == b
        table.append(row)
    out = {"table": table}
    if w is not None and w.monomials:
        Sw = weighted_ehrhart_series(spec.shape, spec.phi, w, spec.ring).expand(args.order)
        wrows = []
        for n, c in enumerate(Sw):
            b = oracle.brute_weighted(spec.shape, spec.phi, w, n, spec.ring)
            wrows.append({"n": n, "series": _gre_out(c, args.pretty), "oracle": _gre_out(b, args.pretty),
                          "equal": c == b})
            ok &= c == b
        out["weight"] = w.to_json()
        out["weighted_table"] = wrows
    out["equal"] = ok
    if not ok:
        raise CheckFailed(out)
    return out


DISPATCH = {
    "series": cmd_series,
    "hstar": cmd_hstar,
    "expand": cmd_expand,
    "reciprocity-check": cmd_reciprocity,
    "transform": cmd_transform,
    "brion-check": cmd_brion,
    "weighted-series": cmd_weighted_series,
    "weighted-brion-check": cmd_weighted_brion,
    "q-series": cmd_q_series,
    "shifted-series": cmd_shifted_series,
    "equivariant": cmd_equivariant,
    "oracle-check": cmd_oracle_check,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="phiehrhart", description="Exact phi-Ehrhart series over group rings.")
    p.add_argument("--input", "-i", required=True, help="problem JSON file ('-' for stdin)")
    p.add_argument("--command", "-c", required=True, choices=COMMANDS)
    p.add_argument("--order", "-N", type=int, default=None, help="truncation order (default 12)")
    p.add_argument("--seed", type=int, default=None, help="seed for randomized extra checks")
    p.add_argument("--pretty", action="store_true", help="render group ring elements as w-powers")
    p.add_argument("--simplify", action="store_true", help="cancel verified common factors")
    return p


def _render(payload: dict, pretty: bool) -> str:
    if pretty:
        return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as e:
        print(f"error: cannot read {args.input}: {e.strerror}", file=stderr)
        return 1
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        print(f"error: malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}", file=stderr)
        return 1
    try:
        spec = parse_spec(data)
        if args.order is None:
            args.order = spec.order if spec.order is not None else 12
        if args.order < 0:
            raise SpecError("--order", "must be nonnegative")
        body = DISPATCH[args.command](spec, args)
        code = 0
    except SpecError as e:
        print(f"error: {e}", file=stderr)
        return 1
    except (DegenerateInput, ValueError) as e:
        print(f"error: $: {e}", file=stderr)
        return 1
    except CheckFailed as e:
        body, code = e.payload, 2
    payload = {"command": args.command, "ok": code == 0, "result": body}
    print(_render(payload, args.pretty), file=stdout)
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
