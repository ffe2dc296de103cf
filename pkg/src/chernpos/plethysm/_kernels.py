"""Hot loops of the plethysm construction, each in a numba and a numpy flavour.

Encodings shared by both flavours:

* ``perms``: (P, r) int64, every permutation of 0..r-1, ``signs`` their signs.
* Row monomials are encoded as sum_i base**value over the columns; with
  base = 2a + 1 the code determines the exponent vector.  ``row_lookup``
  maps a code to the index of that monomial in the Sym^{2a} basis.
* A multiset i_1 <= ... <= i_d of basis indices has colex rank
  sum_j binom(i_j + j - 1, j) (j from 1); ``binom`` is a Pascal table.
"""

from __future__ import annotations

import numpy as np

from .._accel import njit

CHUNK = 1 << 16


@njit(nogil=True, cache=True)
def _phi_accumulate_nb(perms, signs, first_idx, n_cols, row_weight, row_lookup, binom, out, start, stop):
    n_perm = perms.shape[0]
    r = perms.shape[1]
    n_first = first_idx.shape[0]
    if stop <= start:
        return
    # odometer over the columns; digit 0 is the first column
    digit = np.empty(n_cols, np.int64)
    perm_of = np.empty(n_cols, np.int64)
    codes = np.zeros(r, np.int64)
    idx = np.empty(r, np.int64)
    q = start
    digit[0] = q % n_first
    q //= n_first
    perm_of[0] = first_idx[digit[0]]
    for i in range(1, n_cols):
        digit[i] = q % n_perm
        q //= n_perm
        perm_of[i] = digit[i]
    sgn = 1
    for i in range(n_cols):
        sgn *= signs[perm_of[i]]
        for j in range(r):
            codes[j] += row_weight[perms[perm_of[i], j]]
    for t in range(start, stop):
        # insertion sort: r is tiny and np.sort carries call overhead
        for j in range(r):
            v = row_lookup[codes[j]]
            m = j
            while m > 0 and idx[m - 1] > v:
                idx[m] = idx[m - 1]
                m -= 1
            idx[m] = v
        rank = 0
        for j in range(r):
            rank += binom[idx[j] + j, j + 1]
        out[rank] += sgn
        # advance to t + 1, updating codes and sign by the columns that change
        i = 0
        while i < n_cols:
            old = perm_of[i]
            base = n_first if i == 0 else n_perm
            digit[i] += 1
            carry = digit[i] == base
            if carry:
                digit[i] = 0
            new = first_idx[digit[i]] if i == 0 else digit[i]
            perm_of[i] = new
            sgn *= signs[old] * signs[new]
            for j in range(r):
                codes[j] += row_weight[perms[new, j]] - row_weight[perms[old, j]]
            if not carry:
                break
            i += 1


def _phi_accumulate_np(perms, signs, first_idx, n_cols, row_weight, row_lookup, binom, out, start, stop):
    n_perm, r = perms.shape
    n_first = first_idx.shape[0]
    weighted = row_weight[perms]  # (P, r)
    for lo in range(start, stop, CHUNK):
        t = np.arange(lo, min(lo + CHUNK, stop), dtype=np.int64)
        f = first_idx[t % n_first]
        q = t // n_first
        sgn = signs[f].copy()
        codes = weighted[f].copy()
        for _ in range(1, n_cols):
            c = q % n_perm
            q //= n_perm
            sgn *= signs[c]
            codes += weighted[c]
        idx = np.sort(row_lookup[codes], axis=1)
        rank = np.zeros(len(t), dtype=np.int64)
        for j in range(r):
            rank += binom[idx[:, j] + j, j + 1]
        np.add.at(out, rank, sgn)


@njit(nogil=True, cache=True)
def _lift_nb(child_polys, child_parent, child_label, forms, table, n_parents, p):
    size_out = 0
    for s in range(table.shape[0]):
        for k in range(table.shape[1]):
            if table[s, k] + 1 > size_out:
                size_out = table[s, k] + 1
    n_vars = forms.shape[1]
    out = np.zeros((n_parents, size_out), np.int64)
    for c in range(child_polys.shape[0]):
        par = child_parent[c]
        lab = child_label[c]
        for s in range(child_polys.shape[1]):
            v = child_polys[c, s]
            if v == 0:
                continue
            for k in range(n_vars):
                f = forms[lab, k]
                if f == 0:
                    continue
                i = table[s, k]
                out[par, i] = (out[par, i] + v * f) % p
    return out


def _lift_np(child_polys, child_parent, child_label, forms, table, n_parents, p):
    size_out = int(table.max()) + 1
    out = np.zeros((n_parents, size_out), dtype=np.int64)
    rows = child_parent[:, None]
    for k in range(forms.shape[1]):
        coeff = forms[child_label, k]
        if not coeff.any():
            continue
        contrib = (child_polys * coeff[:, None]) % p
        np.add.at(out, (rows, table[None, :, k]), contrib)
        out %= p
    return out


PHI_KERNELS = {"numba": _phi_accumulate_nb, "numpy": _phi_accumulate_np}
LIFT_KERNELS = {"numba": _lift_nb, "numpy": _lift_np}
