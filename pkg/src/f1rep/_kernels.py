"""Backtracking search for structure-preserving partial injections.

Every enumeration in the package (morphisms between representations, ladders
between exact sequences, lifts through epimorphisms) reduces to the same
problem: given two finite sets of elements, each carrying a family of labelled
partial injections, find all maps ``f`` from source to target elements (or to
zero) such that

* ``f`` is injective away from zero,
* ``f(S_lab(x)) == T_lab(f(x))`` for every label and source element,
* ``f(x)`` lies in the allowed set for ``x``.

The hot loop is compiled with numba when available.  Setting the environment
variable ``F1REP_DISABLE_JIT=1`` (before import) runs the identical code as
plain Python instead; both paths must give the same answers.
"""

import os

import numpy as np

_DISABLED = os.environ.get("F1REP_DISABLE_JIT", "").strip().lower() in {"1", "true", "yes"}

try:
    if _DISABLED:
        raise ImportError("jit disabled by F1REP_DISABLE_JIT")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(fn):
            return fn

        return wrap


BACKEND = "numba" if HAS_NUMBA else "python"

UNSET = -2


@njit(cache=True, nogil=True)
def _consistent(x, v, assign, src_fun, tgt_fun):
    n_lab = src_fun.shape[0]
    for lab in range(n_lab):
        y = src_fun[lab, x]
        tv = -1
        if v >= 0:
            tv = tgt_fun[lab, v]
        if y < 0:
            if tv != -1:
                return False
        elif y == x:
            if tv != v:
                return False
        else:
            ay = assign[y]
            if ay != UNSET and ay != tv:
                return False
    return True


@njit(cache=True, nogil=True)
def search_maps(allowed, order, src_fun, src_pre, tgt_fun, limit, out):
    """Enumerate admissible maps in lexicographic order of ``order``.

    ``allowed[x, c]`` says whether source element ``x`` may go to value
    ``c - 1`` (column 0 is zero).  Solutions are written row-wise into ``out``
    while it has room, with ``-1`` for zero.  Stops after ``limit`` solutions
    when ``limit > 0``.  Returns the number of solutions found.
    """
    n_src = allowed.shape[0]
    n_cols = allowed.shape[1]
    n_lab = src_fun.shape[0]
    if n_src == 0:
        return 1
    assign = np.full(n_src, UNSET, dtype=np.int64)
    used = np.zeros(n_cols, dtype=np.bool_)
    nxt = np.zeros(n_src, dtype=np.int64)
    count = 0
    p = 0
    while p >= 0:
        x = order[p]
        if assign[x] >= 0:
            used[assign[x]] = False
        assign[x] = UNSET

        # a labelled preimage that is already placed pins the value of x
        forced = -3
        for lab in range(n_lab):
            w = src_pre[lab, x]
            if w >= 0 and w != x and assign[w] != UNSET:
                fv = -1
                if assign[w] >= 0:
                    fv = tgt_fun[lab, assign[w]]
                if forced == -3:
                    forced = fv
                elif forced != fv:
                    forced = -4
        c = nxt[p]
        found = False
        if forced == -4:
            c = n_cols
        elif forced != -3:
            if c <= forced + 1:
                c = forced + 1
                v = forced
                if allowed[x, c] and (v < 0 or not used[v]):
                    if _consistent(x, v, assign, src_fun, tgt_fun):
                        found = True
            if not found:
                c = n_cols
        else:
            while c < n_cols:
                v = c - 1
                if allowed[x, c] and (v < 0 or not used[v]):
                    if _consistent(x, v, assign, src_fun, tgt_fun):
                        found = True
                        break
                c += 1
        if found:
            v = c - 1
            assign[x] = v
            if v >= 0:
                used[v] = True
            nxt[p] = c + 1
            if p == n_src - 1:
                if count < out.shape[0]:
                    for i in range(n_src):
                        out[count, i] = assign[i]
                count += 1
                if limit > 0 and count >= limit:
                    return count
            else:
                p += 1
                nxt[p] = 0
        else:
            nxt[p] = 0
            p -= 1
    return count


@njit(cache=True, nogil=True)
def component_labels(succ):
    """Connected components of the undirected graph given by ``succ``.

    ``succ[lab, x]`` is a neighbour of ``x`` (or -1).  Returns one label per
    node; labels are the smallest node index of each component.
    """
    n = succ.shape[1]
    parent = np.arange(n)
    for lab in range(succ.shape[0]):
        for x in range(n):
            y = succ[lab, x]
            if y < 0:
                continue
            rx = x
            while parent[rx] != rx:
                rx = parent[rx]
            ry = y
            while parent[ry] != ry:
                ry = parent[ry]
            if rx != ry:
                if rx < ry:
                    parent[ry] = rx
                else:
                    parent[rx] = ry
    labels = np.empty(n, dtype=np.int64)
    for x in range(n):
        r = x
        while parent[r] != r:
            r = parent[r]
        labels[x] = r
    return labels
