"""JSON file formats for instances, certificates and bases.

Integers are written as decimal strings and rationals as ``"p/q"`` so that
values of any size survive every JSON reader. ``dumps`` is canonical
(sorted keys, fixed indentation), so files round-trip byte for byte.
"""

import json
from fractions import Fraction

from .checks import Check
from .solver import DEFAULT_DELTA, KnapsackInstance, SolveCertificate

INSTANCE_FORMAT = "knapsack-instance"
CERTIFICATE_FORMAT = "knapsack-certificate"


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def int_str(x) -> str:
    return str(int(x))


def rat_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_int(s) -> int:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ValueError(f"expected an integer string, got {s!r}")
    return int(s)


def parse_rat(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ValueError(f"expected a rational string, got {s!r}")
    return Fraction(s)


def _opt(f, x):
    return None if x is None else f(x)


def instance_to_dict(A, b, delta=None, **header) -> dict:
    d = {
        "format": INSTANCE_FORMAT,
        "m": len(A),
        "n": len(A[0]),
        "A": [int_str(x) for row in A for x in row],
        "b": [int_str(x) for x in b],
    }
    if delta is not None:
        d["delta"] = rat_str(delta)
    for key, val in header.items():
        if val is not None:
            d[key] = str(val)
    return d


def instance_from_dict(d: dict):
    """Return ``(A, b, delta)``; ``A`` is a flat row-major list (nested rows are also accepted)."""
    m, n = int(d["m"]), int(d["n"])
    raw = d["A"]
    if raw and not isinstance(raw[0], list):
        if len(raw) != m * n:
            raise ValueError(f"A has {len(raw)} entries, expected {m * n}")
        raw = [raw[i * n:(i + 1) * n] for i in range(m)]
    A = [[parse_int(x) for x in row] for row in raw]
    if len(A) != m or any(len(r) != n for r in A):
        raise ValueError(f"A does not have shape {m}x{n}")
    b = [parse_int(x) for x in d["b"]]
    if len(b) != m:
        raise ValueError(f"b has {len(b)} entries, expected {m}")
    delta = parse_rat(d["delta"]) if "delta" in d else None
    return A, b, delta


def read_instance(path):
    with open(path) as fh:
        return instance_from_dict(json.load(fh))


def check_to_dict(c: Check) -> dict:
    d = {"name": c.name, "holds": c.holds}
    if c.lhs is not None:
        d["lhs"] = rat_str(c.lhs)
        d["rhs"] = rat_str(c.rhs)
        d["margin"] = rat_str(c.margin)
    return d


def check_from_dict(d: dict) -> Check:
    return Check(d["name"], bool(d["holds"]), _opt(parse_rat, d.get("lhs")), _opt(parse_rat, d.get("rhs")))


def certificate_to_dict(inst: KnapsackInstance, cert: SolveCertificate, exit_status: int) -> dict:
    return {
        "format": CERTIFICATE_FORMAT,
        "instance": instance_to_dict(inst.A, inst.b),
        "regime": cert.regime,
        "applicable": list(cert.applicable),
        "status": cert.status,
        "exit_status": exit_status,
        "delta": rat_str(cert.delta),
        "cone_offset": _opt(rat_str, cert.cone_offset),
        "z": _opt(lambda z: [int_str(x) for x in z], cert.z),
        "u": [int_str(x) for x in cert.u],
        "c": [rat_str(x) for x in cert.c],
        "v": [int_str(x) for x in cert.v],
        "reduced_basis": [[int_str(x) for x in row] for row in cert.reduced_basis],
        "babai_error_sq": rat_str(cert.babai_error_sq),
        "babai_bound": rat_str(cert.babai_bound),
        "checks": [check_to_dict(c) for c in cert.checks],
    }


def certificate_from_dict(d: dict):
    """Return ``(instance, certificate, exit_status)``."""
    if d.get("format") != CERTIFICATE_FORMAT:
        raise ValueError("not a certificate file")
    A, b, _ = instance_from_dict(d["instance"])
    inst = KnapsackInstance(tuple(map(tuple, A)), tuple(b))
    cert = SolveCertificate(
        regime=d["regime"],
        status=d["status"],
        z=_opt(lambda z: tuple(parse_int(x) for x in z), d["z"]),
        u=tuple(parse_int(x) for x in d["u"]),
        c=tuple(parse_rat(x) for x in d["c"]),
        v=tuple(parse_int(x) for x in d["v"]),
        reduced_basis=tuple(tuple(parse_int(x) for x in row) for row in d["reduced_basis"]),
        babai_error_sq=parse_rat(d["babai_error_sq"]),
        babai_bound=parse_rat(d["babai_bound"]),
        applicable=tuple(d.get("applicable", ())),
        delta=parse_rat(d.get("delta", rat_str(DEFAULT_DELTA))),
        cone_offset=_opt(parse_rat, d.get("cone_offset")),
        checks=[check_from_dict(c) for c in d.get("checks", [])],
    )
    return inst, cert, int(d["exit_status"])


def basis_from_dict(d: dict):
    basis = [[parse_int(x) for x in row] for row in d["basis"]]
    target = [parse_rat(x) for x in d["target"]] if "target" in d else None
    return basis, target
