"""Small helpers shared by the two algebras' element types."""

from __future__ import annotations


def add_term(acc: dict, basis, scalar) -> None:
    """acc[basis] += scalar, dropping exact zeros."""
    if basis in acc:
        s = acc[basis] + scalar
        if s.is_zero():
            del acc[basis]
        else:
            acc[basis] = s
    elif not scalar.is_zero():
        acc[basis] = scalar


def combine(a: dict, b: dict, negate_b: bool = False) -> dict:
    out = dict(a)
    for basis, s in b.items():
        add_term(out, basis, -s if negate_b else s)
    return out


def scale(terms: dict, scalar) -> dict:
    if scalar.is_zero():
        return {}
    return {basis: scalar * s for basis, s in terms.items()}


def format_terms(pairs) -> str:
    """pairs: [(basis_string, Scalar)]; renders 'c*[..] + c*[..]'."""
    if not pairs:
        return "0"
    chunks = []
    for basis, s in pairs:
        text = str(s)
        if text == "1":
            chunk = basis
        elif text == "-1":
            chunk = "-" + basis
        else:
            chunk = f"{text}*{basis}"
        chunks.append(chunk)
    out = chunks[0]
    for chunk in chunks[1:]:
        if chunk.startswith("-"):
            out += " - " + chunk[1:]
        else:
            out += " + " + chunk
    return out
