"""Pfister forms <<a1,...,an>> = <1,-a1> (x) ... (x) <1,-an>."""

from __future__ import annotations

from .errors import DimensionNotPower, NotPfister
from .forms import QuadraticForm, isometric, rep_set, split_off, subform_test


def pfister_build(model, slots) -> QuadraticForm:
    m1 = model.minus_one
    entries = [0]
    for a in slots:
        entries = entries + [x ^ a ^ m1 for x in entries]
    return QuadraticForm(model, entries)


def pure_part(pi: QuadraticForm) -> QuadraticForm:
    """pi' with pi = <1> _|_ pi'."""
    if pi.dim == 0 or pi.dim & (pi.dim - 1):
        raise NotPfister(f"{pi} has dimension {pi.dim}")
    return split_off(pi, 0)


def _fold_count(phi: QuadraticForm) -> int:
    d = phi.dim
    if d == 0 or d & (d - 1):
        raise DimensionNotPower(f"dim {d} is not a power of 2")
    return d.bit_length() - 1


def _search(phi, n, candidates, start, slots, partial):
    if len(slots) == n:
        return tuple(slots)
    for idx in range(start, len(candidates)):
        a = candidates[idx]
        nxt = partial.tensor(pfister_build(phi.model, [a]))
        # every sub-Pfister form of a Pfister form is a subform of it
        if not subform_test(nxt, phi):
            continue
        found = _search(phi, n, candidates, idx + 1, slots + [a], nxt)
        if found is not None:
            return found
    return None


def pfister_recognize(phi: QuadraticForm):
    """Slots ``(a1, ..., an)`` with <<a1,...,an>> isometric to ``phi``, or None.

    Slots are searched in increasing order among classes a with -a in D(phi);
    partial products must embed in ``phi``.
    """
    n = _fold_count(phi)
    if n == 0:
        return () if isometric(phi, QuadraticForm(phi.model, [0])) else None
    m1 = phi.model.minus_one
    reps = rep_set(phi)
    if 0 not in reps:
        return None
    candidates = sorted(a for a in phi.model.group.elements() if a ^ m1 in reps)
    slots = _search(phi, n, candidates, 0, [], QuadraticForm(phi.model, [0]))
    if slots is not None and not isometric(pfister_build(phi.model, slots), phi):
        return None
    return slots


def pfister_recognize_similar(phi: QuadraticForm):
    """``(b, slots)`` with b*phi isometric to <<slots>> (GP_n membership), or None."""
    _fold_count(phi)
    for b in sorted(rep_set(phi)):
        slots = pfister_recognize(phi.scale(b))
        if slots is not None:
            return b, slots
    return None


def is_pfister(phi: QuadraticForm) -> bool:
    d = phi.dim
    if d == 0 or d & (d - 1):
        return False
    return pfister_recognize(phi) is not None
