"""Tower document format, seeded random tower generation, and reports.

Documents and reports are UTF-8 JSON.  All integers (and rationals, as
"p/q") are serialized as decimal strings so arbitrary precision survives
any consumer; parsing accepts bare JSON integers as well.  Serialization
is canonical - sorted keys, fixed indentation - so identical inputs and
seeds produce byte-identical output.  Wall-clock timing is carried on the
Report object but kept out of the canonical bytes unless explicitly
requested, to preserve byte-for-byte determinism.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .tower import Move, NodeMove, ProductMove, TowerSpec, validate_tower

FORMAT_VERSION = 1


class TowerDocumentError(ValueError):
    """Malformed or schema-violating tower document; message carries context."""


def _canonical_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def encode_int(x):
    return str(int(x))


def encode_rational(x):
    return str(Fraction(x))


def _parse_int(value, where):
    if isinstance(value, bool):
        raise TowerDocumentError(f"{where}: expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            raise TowerDocumentError(f"{where}: {value!r} is not a decimal integer") from None
    raise TowerDocumentError(f"{where}: expected an integer or decimal string, got {type(value).__name__}")


def _parse_int_list(value, where):
    if not isinstance(value, list):
        raise TowerDocumentError(f"{where}: expected a list")
    return tuple(_parse_int(v, f"{where}[{i}]") for i, v in enumerate(value))


def emit_tower(spec):
    """Canonical JSON text of a tower spec."""
    moves = []
    for move in spec.moves:
        if isinstance(move, ProductMove):
            moves.append({"type": "product"})
        else:
            moves.append(
                {
                    "type": "node",
                    "alpha_exponents": [encode_int(x) for x in move.alpha_exponents],
                    "t_exponents": [encode_int(x) for x in move.t_exponents],
                }
            )
    doc = {
        "format_version": encode_int(FORMAT_VERSION),
        "base_dim": encode_int(spec.base_dim),
        "moves": moves,
    }
    return _canonical_json(doc)


def parse_tower(text):
    """Parse and validate a tower document; errors carry line/field context."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TowerDocumentError(
            f"malformed document: {exc.msg} (line {exc.lineno}, column {exc.colno})"
        ) from None
    if not isinstance(doc, dict):
        raise TowerDocumentError("document root must be an object")
    version = _parse_int(doc.get("format_version", FORMAT_VERSION), "format_version")
    if version != FORMAT_VERSION:
        raise TowerDocumentError(f"format_version: unsupported version {version}")
    if "base_dim" not in doc:
        raise TowerDocumentError("missing field 'base_dim'")
    base_dim = _parse_int(doc["base_dim"], "base_dim")
    raw_moves = doc.get("moves", [])
    if not isinstance(raw_moves, list):
        raise TowerDocumentError("moves: expected a list")
    moves = []
    for i, raw in enumerate(raw_moves):
        where = f"moves[{i}]"
        if not isinstance(raw, dict):
            raise TowerDocumentError(f"{where}: expected an object")
        kind = raw.get("type")
        if kind == "product":
            moves.append(ProductMove())
        elif kind == "node":
            if "alpha_exponents" not in raw:
                raise TowerDocumentError(f"{where}: node move missing field 'alpha_exponents'")
            if "t_exponents" not in raw:
                raise TowerDocumentError(f"{where}: node move missing field 't_exponents'")
            moves.append(
                NodeMove(
                    alpha_exponents=_parse_int_list(raw["alpha_exponents"], f"{where}.alpha_exponents"),
                    t_exponents=_parse_int_list(raw["t_exponents"], f"{where}.t_exponents"),
                )
            )
        else:
            raise TowerDocumentError(f"{where}: unknown move type {kind!r}")
    spec = TowerSpec(base_dim=base_dim, moves=tuple(moves))
    violations = validate_tower(spec)
    if violations:
        raise TowerDocumentError(
            "invalid tower: " + "; ".join(v.detail for v in violations)
        )
    return spec


def random_tower(p, d, max_exponent, seed):
    """Deterministic random tower: d-1 moves, each uniformly Product or Node,
    Node exponents uniform in [-max_exponent, max_exponent] (the trivial
    character is allowed)."""
    if p < 1 or d < 1 or max_exponent < 1:
        raise TowerDocumentError("random_tower requires p >= 1, d >= 1, max_exponent >= 1")
    rng = random.Random(seed)
    moves = []
    for k in range(d - 1):
        if rng.randrange(2) == 0:
            moves.append(ProductMove())
        else:
            alpha = tuple(rng.randint(-max_exponent, max_exponent) for _ in range(k))
            t = tuple(rng.randint(-max_exponent, max_exponent) for _ in range(p))
            moves.append(NodeMove(alpha_exponents=alpha, t_exponents=t))
    return TowerSpec(base_dim=p, moves=tuple(moves))


@dataclass
class Report:
    """Machine-readable command report; violations empty iff the run succeeded."""

    command: str
    seed: Optional[int] = None
    checked: int = 0
    passed: int = 0
    skipped: int = 0
    violations: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    elapsed_ms: Optional[float] = None

    def ok(self):
        return not self.violations

    def to_dict(self, include_timing=False):
        out = {
            "command": self.command,
            "seed": None if self.seed is None else encode_int(self.seed),
            "counts": {
                "checked": encode_int(self.checked),
                "passed": encode_int(self.passed),
                "skipped": encode_int(self.skipped),
            },
            "violations": self.violations,
        }
        if self.data:
            out["data"] = self.data
        if include_timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out

    def to_json(self, include_timing=False):
        return _canonical_json(self.to_dict(include_timing=include_timing))


def report_from_outcome(command, outcome, seed=None, data=None):
    return Report(
        command=command,
        seed=seed,
        checked=outcome.checked,
        passed=outcome.passed,
        skipped=outcome.skipped,
        violations=list(outcome.violations),
        data=data or {},
    )
