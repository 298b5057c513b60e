"""Line-oriented text formats.

``.lie``::

    # comment
    p 5
    dim 3
    bracket 1 2 : 0 2 0      (1-based i < j; omitted pairs are zero)
    pmap 1 : 1 0 0           (optional image of e_1 under the p-map)

``.mod``::

    p 2
    algdim 2
    moddim 2
    action 1 :
    0 0
    1 1
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .gfp import DTYPE, is_prime
from .lie import LieAlgebra, check_jacobi
from .restricted import PMap, RestrictedAlgebra, verify_p_map


class FormatError(ValueError):
    def __init__(self, lineno: int, msg: str):
        self.lineno = lineno
        super().__init__("line %d: %s" % (lineno, msg) if lineno else msg)


class PMapError(ValueError):
    pass


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _ints(tokens, no: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(no, "expected integers, got %r" % " ".join(tokens)) from None


def _header(no: int, words, key: str) -> int:
    if len(words) != 2 or words[0] != key:
        raise FormatError(no, "expected '%s <int>'" % key)
    return _ints(words[1:], no)[0]


def parse_lie(text: str, check: bool = True) -> tuple[LieAlgebra, Optional[PMap]]:
    """Parse a ``.lie`` file; validates Jacobi and, when present, the p-map."""
    p = n = None
    brackets: dict = {}
    pmap_rows: dict = {}
    for no, line in _lines(text):
        words = line.split()
        head = words[0]
        if head == "p":
            p = _header(no, words, "p")
            if not is_prime(p):
                raise FormatError(no, "modulus %d is not prime" % p)
            continue
        if head == "dim":
            n = _header(no, words, "dim")
            if n < 0:
                raise FormatError(no, "negative dimension")
            continue
        if p is None or n is None:
            raise FormatError(no, "'p' and 'dim' must precede %r" % head)
        if ":" not in words:
            raise FormatError(no, "missing ':'")
        colon = words.index(":")
        idx = _ints(words[1:colon], no)
        vec = _ints(words[colon + 1:], no)
        if len(vec) != n:
            raise FormatError(no, "expected %d coordinates, got %d" % (n, len(vec)))
        if head == "bracket":
            if len(idx) != 2 or not 1 <= idx[0] < idx[1] <= n:
                raise FormatError(no, "bracket needs 1 <= i < j <= %d" % n)
            key = (idx[0] - 1, idx[1] - 1)
            if key in brackets:
                raise FormatError(no, "duplicate bracket %d %d" % tuple(idx))
            brackets[key] = vec
        elif head == "pmap":
            if len(idx) != 1 or not 1 <= idx[0] <= n:
                raise FormatError(no, "pmap needs 1 <= i <= %d" % n)
            if idx[0] - 1 in pmap_rows:
                raise FormatError(no, "duplicate pmap %d" % idx[0])
            pmap_rows[idx[0] - 1] = vec
        else:
            raise FormatError(no, "unknown keyword %r" % head)
    if p is None or n is None:
        raise FormatError(0, "missing 'p' or 'dim' header")
    alg = LieAlgebra.from_brackets(p, n, brackets)
    if check:
        check_jacobi(alg)
    pmap = None
    if pmap_rows:
        rows = np.zeros((n, n), dtype=DTYPE)
        for i, v in pmap_rows.items():
            rows[i] = v
        pmap = PMap(alg, rows)
        if check and not verify_p_map(RestrictedAlgebra(alg, pmap)):
            raise PMapError("pmap lines do not define a p-operation")
    return alg, pmap


def emit_lie(alg: LieAlgebra, pmap: Optional[PMap] = None, comments=()) -> str:
    """Canonical text: headers, nonzero brackets in (i, j) order, then every pmap row."""
    out = ["# %s" % c for c in comments]
    out += ["p %d" % alg.p, "dim %d" % alg.dim]
    n = alg.dim
    for i in range(n):
        for j in range(i + 1, n):
            v = alg.table[i, j]
            if v.any():
                out.append("bracket %d %d : %s" % (i + 1, j + 1, " ".join(map(str, v.tolist()))))
    if pmap is not None:
        for i in range(n):
            out.append("pmap %d : %s" % (i + 1, " ".join(map(str, pmap.images[i].tolist()))))
    return "\n".join(out) + "\n"


def parse_mod(text: str) -> tuple[int, np.ndarray]:
    """Return ``(p, action)`` with ``action`` of shape (algdim, moddim, moddim)."""
    items = list(_lines(text))
    heads = {}
    pos = 0
    for key in ("p", "algdim", "moddim"):
        if pos >= len(items):
            raise FormatError(0, "missing '%s' header" % key)
        no, line = items[pos]
        heads[key] = _header(no, line.split(), key)
        pos += 1
    p, n, m = heads["p"], heads["algdim"], heads["moddim"]
    if not is_prime(p):
        raise FormatError(items[0][0], "modulus %d is not prime" % p)
    action = np.zeros((n, m, m), dtype=DTYPE)
    seen = set()
    while pos < len(items):
        no, line = items[pos]
        words = line.split()
        if words[0] != "action" or words[-1] != ":" or len(words) != 3:
            raise FormatError(no, "expected 'action <i> :'")
        i = _ints(words[1:2], no)[0]
        if not 1 <= i <= n or i in seen:
            raise FormatError(no, "bad or repeated action index %d" % i)
        seen.add(i)
        pos += 1
        for r in range(m):
            if pos >= len(items):
                raise FormatError(0, "action %d: expected %d rows" % (i, m))
            rno, rline = items[pos]
            row = _ints(rline.split(), rno)
            if len(row) != m:
                raise FormatError(rno, "expected %d entries" % m)
            action[i - 1, r] = row
            pos += 1
    return p, action % p


def emit_mod(p: int, action: np.ndarray, comments=()) -> str:
    action = np.asarray(action, dtype=DTYPE) % p
    n, m = action.shape[0], action.shape[1]
    out = ["# %s" % c for c in comments]
    out += ["p %d" % p, "algdim %d" % n, "moddim %d" % m]
    for i in range(n):
        out.append("action %d :" % (i + 1))
        out.extend(" ".join(map(str, row)) for row in action[i].tolist())
    return "\n".join(out) + "\n"
