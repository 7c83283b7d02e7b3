"""Groebner bases and normal forms in the grevlex order.

Buchberger's algorithm with the normal pair-selection strategy (smallest
lcm of leading monomials first) and the coprime leading-term criterion,
returning the reduced monic basis.  Intended for the desk-scale ideals that
show up in containment tests and base-locus bookkeeping, not for heavy
elimination work.
"""

from __future__ import annotations

import heapq

from .poly import MultiPoly, grevlex_key, mono_div, mono_divides, mono_lcm, mono_mul


def normal_form(f, basis):
    """Remainder of f under full division by the polynomials in `basis`:
    every term of the result is divisible by no leading monomial."""
    if not isinstance(f, MultiPoly):
        raise ValueError("normal_form expects a polynomial")
    ring = f.ring
    field = ring.field
    lead = []
    for g in basis:
        if g.is_zero():
            continue
        if g.ring != ring:
            raise ValueError("basis polynomial from a different ring")
        e, c = g.leading_term()
        lead.append((e, field.inv(c), g))
    remainder = {}
    work = dict(f.terms)
    while work:
        e = max(work, key=grevlex_key)
        hit = None
        for le, linv, g in lead:
            if mono_divides(le, e):
                hit = (le, linv, g)
                break
        if hit is None:
            remainder[e] = work.pop(e)
            continue
        le, linv, g = hit
        factor = field.mul(work[e], linv)
        shift = mono_div(e, le)
        # work -= factor * x^shift * g; the term at e cancels exactly
        for ge, gc in g.terms.items():
            m = mono_mul(ge, shift)
            cur = field.sub(work.get(m, field.zero), field.mul(factor, gc))
            if field.is_zero(cur):
                work.pop(m, None)
            else:
                work[m] = cur
        assert e not in work
    return MultiPoly(ring, remainder)


def s_polynomial(f, g):
    ring = f.ring
    field = ring.field
    ef, cf = f.leading_term()
    eg, cg = g.leading_term()
    l = mono_lcm(ef, eg)
    mf = ring.monomial(mono_div(l, ef)) * field.inv(cf)
    mg = ring.monomial(mono_div(l, eg)) * field.inv(cg)
    return f * mf - g * mg


def groebner_basis(generators):
    """Reduced monic Groebner basis (grevlex) of the ideal the generators
    span.  The zero ideal returns []; any unit in the ideal returns [1]."""
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    basis = []
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators from different rings")
        basis.append(g.monic())

    pairs = []
    counter = 0

    def push_pairs(new_index):
        nonlocal counter
        enew = basis[new_index].leading_term()[0]
        for i in range(new_index):
            ei = basis[i].leading_term()[0]
            l = mono_lcm(ei, enew)
            # coprime leading terms reduce to zero; skip the pair
            if l == mono_mul(ei, enew):
                continue
            heapq.heappush(pairs, (sum(l), grevlex_key(l), counter, i, new_index))
            counter += 1

    for k in range(len(basis)):
        push_pairs(k)

    while pairs:
        _, _, _, i, j = heapq.heappop(pairs)
        r = normal_form(s_polynomial(basis[i], basis[j]), basis)
        if r.is_zero():
            continue
        basis.append(r.monic())
        push_pairs(len(basis) - 1)
        if r.total_degree() == 0:
            break  # unit ideal, nothing more to learn

    return _reduce_basis(basis)


def _reduce_basis(basis):
    """Interreduce: drop redundant members, fully reduce tails, sort by
    descending leading monomial."""
    ring = basis[0].ring
    if any(not g.is_zero() and g.total_degree() == 0 for g in basis):
        return [ring.one()]
    lead = [g.leading_term()[0] for g in basis]
    keep = []
    for i, g in enumerate(basis):
        li = lead[i]
        redundant = False
        for j in range(len(basis)):
            if j == i:
                continue
            if mono_divides(lead[j], li):
                # break ties so exactly one of equal leading monomials stays
                if lead[j] == li and j > i:
                    continue
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        rest = keep[:i] + keep[i + 1 :]
        r = normal_form(g, rest)
        if not r.is_zero():
            out.append(r.monic())
    out.sort(key=lambda g: grevlex_key(g.leading_term()[0]), reverse=True)
    return out


def in_ideal(f, basis):
    """Ideal membership test against an already-computed Groebner basis."""
    return normal_form(f, basis).is_zero()
