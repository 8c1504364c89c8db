"""Backend dispatch for the lattice row-sum kernel.

The compiled double-double kernel (``_lattice_ext``) is used when it was
built and the requested precision fits in about 106 bits; otherwise the
mpmath implementation in ``_lattice_py`` runs.  Both return the same row
sums ``(S_2, S_3, S_4, S_6)`` as mpc values.
"""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction

import mpmath

from ..errors import ParameterError
from . import _lattice_py

try:
    from . import _lattice_ext
except ImportError:  # not built; pure Python only
    _lattice_ext = None

__all__ = [
    "COMPILED_MAX_PRECISION",
    "available_backends",
    "get_backend",
    "use_backend",
    "row_sums",
    "em_terms",
    "em_remainder",
]

COMPILED_MAX_PRECISION = 106

_state = {"backend": "compiled" if _lattice_ext is not None else "python"}


def available_backends() -> list[str]:
    return ["compiled", "python"] if _lattice_ext is not None else ["python"]


def get_backend() -> str:
    return _state["backend"]


@contextmanager
def use_backend(name: str):
    """Temporarily force ``"compiled"`` or ``"python"``."""
    if name not in available_backends():
        raise ParameterError(f"backend {name!r} unavailable; have {available_backends()}")
    old = _state["backend"]
    _state["backend"] = name
    try:
        yield
    finally:
        _state["backend"] = old


def em_terms(precision: int) -> int:
    """Euler-Maclaurin terms for the tail expansion at a given precision."""
    return _lattice_py.EM_TERMS + max(0, (precision - 128 + 5) // 5)


def em_remainder(s: int, N: int, precision: int) -> float:
    return _lattice_py.em_remainder(s, N, em_terms(precision))


def _split(x) -> tuple[float, float]:
    hi = float(x)
    return hi, float(x - hi)


def _coefficient_tables():
    tables = []
    for s in _lattice_py.POWERS:
        row = []
        for c in _lattice_py.em_coefficients(s, _lattice_py.EM_TERMS):
            hi = float(c)
            row.append((hi, float(c - Fraction(hi))))
        tables.append(row)
    return tables


_TABLES = None


def _compiled_rows(centred, N, exclude_zero_at):
    global _TABLES
    if _TABLES is None:
        _TABLES = _coefficient_tables()
    packed = []
    with mpmath.workprec(128):
        for w in centred:
            rh, rl = _split(w.real)
            ih, il = _split(w.imag)
            packed.append((rh, rl, ih, il))
    raw = _lattice_ext.many_row_sums(packed, N, exclude_zero_at, _TABLES)
    out = []
    with mpmath.workprec(128):
        for sums in raw:
            out.append(
                tuple(
                    mpmath.mpc(mpmath.mpf(a) + b, mpmath.mpf(c) + d)
                    for a, b, c, d in sums
                )
            )
    return out


def row_sums(offsets, N: int, precision: int, exclude_zero_at=None) -> list:
    """``(S_2, S_3, S_4, S_6)`` for each offset, S_s(w) = sum_m (w - m)^-s.

    The direct block covers ``|m| <= N``; the remainder comes from Hurwitz
    zeta asymptotics.  ``exclude_zero_at`` names the index of an integer
    offset whose ``m = 0`` term is dropped.
    """
    with mpmath.workprec(precision + 20):
        centred = []
        for w in offsets:
            w = mpmath.mpc(w)
            centred.append(w - mpmath.nint(w.real))
        if get_backend() == "compiled" and precision <= COMPILED_MAX_PRECISION:
            return _compiled_rows(centred, N, exclude_zero_at)
        return _lattice_py.many_row_sums(centred, N, exclude_zero_at, em_terms(precision))
