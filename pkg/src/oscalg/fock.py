"""Fock-space representations of the quadratic algebra.

States of the rank-r space are r-tuples of partitions; b_{-m} appends a
part m to a channel, b_m removes one with weight m times its multiplicity,
so [b_m, b_n] = m delta_{m+n,0} matches the symplectic form with no hidden
rescaling.  Quadratic elements act per anti-diagonal by the finitely many
terms whose annihilation indices occur as parts, which keeps every
computation finite and exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .laurent import rat
from .quadops import QuadraticElement, tau_hat

F0 = Fraction(0)


# ---------------------------------------------------------------------------
# states and vectors
# ---------------------------------------------------------------------------

def _canon_partition(parts) -> tuple:
    parts = tuple(sorted((int(p) for p in parts), reverse=True))
    if parts and parts[-1] < 1:
        raise ValueError("partition parts must be positive integers")
    return parts

def canon_state(state) -> tuple:
    """Canonical basis label: a tuple of weakly decreasing partitions."""
    return tuple(_canon_partition(lam) for lam in state)

def state_degree(state) -> int:
    return sum(sum(lam) for lam in state)

class FockVector:
    """Finite rational combination of partition-tuple basis states."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms=None):
        self.rank = int(rank)
        if self.rank < 1:
            raise ValueError("rank must be a positive integer")
        clean = {}
        if terms:
            for state, c in terms.items():
                c = rat(c)
                if not c:
                    continue
                state = canon_state(state)
                if len(state) != self.rank:
                    raise ValueError("state has wrong number of channels")
                clean[state] = clean.get(state, F0) + c
                if not clean[state]:
                    del clean[state]
        self.terms = clean

    @classmethod
    def vacuum(cls, rank: int = 1) -> "FockVector":
        return cls(rank, {tuple(() for _ in range(rank)): 1})

    @classmethod
    def basis(cls, state, coeff=1) -> "FockVector":
        state = canon_state(state)
        return cls(len(state), {state: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FockVector") -> "FockVector":
        assert self.rank == other.rank
        out = dict(self.terms)
        for state, c in other.terms.items():
            out[state] = out.get(state, F0) + c
        return FockVector(self.rank, out)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other.scale(-1)

    def scale(self, s) -> "FockVector":
        s = rat(s)
        return FockVector(self.rank, {st: s * c for st, c in self.terms.items()})

    def __neg__(self) -> "FockVector":
        return self.scale(-1)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FockVector) and self.rank == other.rank
                and self.terms == other.terms)

    def terms_sorted(self):
        """Terms in print order: degree, then the graded_basis order."""
        keys = sorted(self.terms, reverse=True)
        keys.sort(key=state_degree)
        return [(st, self.terms[st]) for st in keys]

    def __repr__(self):
        return f"FockVector({format_vector(self)!r})"


class VoaConfig:
    """Rank of the tensor power and the distinguished channel (1-based)."""

    __slots__ = ("rank", "embedding")

    def __init__(self, rank: int = 1, embedding: int = 1):
        if not 1 <= embedding <= rank:
            raise ValueError("embedding channel out of range")
        self.rank = int(rank)
        self.embedding = int(embedding)


# ---------------------------------------------------------------------------
# mode and quadratic actions
# ---------------------------------------------------------------------------

def _mode_on_partition(n: int, lam: tuple):
    """Images of b_n on one partition: list of (new partition, coefficient)."""
    if n < 0:
        return [(tuple(sorted(lam + (-n,), reverse=True)), F0 + 1)]
    mult = lam.count(n)
    if not mult:
        return []
    out = list(lam)
    out.remove(n)
    return [(tuple(out), Fraction(n * mult))]

def apply_mode(n: int, channel: int, v: FockVector) -> FockVector:
    """Action of b_n on the given channel (1-based)."""
    if n == 0:
        raise ValueError("b_0 is central; it never acts as a mode")
    if not 1 <= channel <= v.rank:
        raise ValueError("channel out of range")
    ch = channel - 1
    out = {}
    for state, c in v.terms.items():
        for lam2, w in _mode_on_partition(n, state[ch]):
            st2 = state[:ch] + (lam2,) + state[ch + 1:]
            out[st2] = out.get(st2, F0) + c * w
    return FockVector(v.rank, out)

def _pair_on_partition(a: int, bb: int, lam: tuple):
    """Images of :b_a b_b: on one partition, a <= b, annihilators first."""
    out = []
    if a < 0 and bb < 0:
        lam2 = tuple(sorted(lam + (-a, -bb), reverse=True))
        out.append((lam2, F0 + 1))
    elif a < 0 < bb:
        for lam2, w in _mode_on_partition(bb, lam):
            lam3 = tuple(sorted(lam2 + (-a,), reverse=True))
            out.append((lam3, w))
    else:
        for lam2, w in _mode_on_partition(bb, lam):
            for lam3, w2 in _mode_on_partition(a, lam2):
                out.append((lam3, w * w2))
    return out

def _diagonal_on_state(series, state, ch: int):
    """Images of one diagonal series on a basis state; finite by inspection
    of the parts present in the channel."""
    d = series.d
    lam = state[ch]
    moves = []
    # both indices creating: a in [d+1, d//2]
    for a in range(d + 1, d // 2 + 1):
        c = series.coeff(a)
        if c:
            if 2 * a == d:
                c = c / 2
            moves.append((a, d - a, c))
    # both indices annihilating: a in [1, d//2]
    for a in range(1, d // 2 + 1):
        c = series.coeff(a)
        if c and (a in lam) and (d - a in lam):
            if 2 * a == d:
                c = c / 2
            moves.append((a, d - a, c))
    # one of each: the annihilation index must be a part
    for bb in sorted(set(lam)):
        if bb <= d:
            continue
        c = series.coeff(d - bb)
        if c:
            moves.append((d - bb, bb, c))
    out = []
    for a, bb, c in moves:
        for lam2, w in _pair_on_partition(a, bb, lam):
            st2 = state[:ch] + (lam2,) + state[ch + 1:]
            out.append((st2, c * w))
    return out

def apply_quadratic(A: QuadraticElement, v: FockVector,
                    cfg: VoaConfig | None = None) -> FockVector:
    """Action of a quadratic element on the distinguished channel."""
    if cfg is None:
        cfg = VoaConfig(v.rank, 1)
    if cfg.rank != v.rank:
        raise ValueError("configuration rank does not match the vector")
    ch = cfg.embedding - 1
    out = {}
    if A.central:
        for state, c in v.terms.items():
            out[state] = out.get(state, F0) + A.central * c
    for e, ce in A.linear.coeffs.items():
        for state, c in v.terms.items():
            for lam2, w in _mode_on_partition(e, state[ch]):
                st2 = state[:ch] + (lam2,) + state[ch + 1:]
                out[st2] = out.get(st2, F0) + ce * c * w
    for series in A.quad.values():
        for state, c in v.terms.items():
            for st2, w in _diagonal_on_state(series, state, ch):
                out[st2] = out.get(st2, F0) + c * w
    return FockVector(v.rank, out)

def virasoro(p: int, v: FockVector, cfg: VoaConfig | None = None) -> FockVector:
    """L_p as the normal-ordered quadratic tau_hat(p) on one channel."""
    return apply_quadratic(tau_hat(p), v, cfg)

def virasoro_all(p: int, v: FockVector) -> FockVector:
    """L_p summed over every channel of the tensor power."""
    out = FockVector(v.rank)
    for e in range(1, v.rank + 1):
        out = out + apply_quadratic(tau_hat(p), v, VoaConfig(v.rank, e))
    return out


# ---------------------------------------------------------------------------
# central charge and exponentials
# ---------------------------------------------------------------------------

def measure_central_charge(p: int, vectors, apply_L=None) -> Fraction:
    """Solve ([L_p, L_-p] - 2p L_0) v = (c/12)(p^3 - p) v for c.

    apply_L(q, v) defaults to the distinguished-channel virasoro; pass
    virasoro_all for a diagonal tensor action.  Inconsistency across the
    supplied vectors is an error naming a witnessing vector.
    """
    if p in (-1, 0, 1):
        raise ValueError("p must satisfy p^3 - p != 0")
    if apply_L is None:
        apply_L = virasoro
    denom = Fraction(p ** 3 - p, 12)
    c_found = None
    for v in vectors:
        if v.is_zero():
            raise ValueError("test vectors must be nonzero")
        w = (apply_L(p, apply_L(-p, v)) - apply_L(-p, apply_L(p, v))
             - apply_L(0, v).scale(2 * p))
        state, coeff = v.terms_sorted()[0]
        mu = w.terms.get(state, F0) / coeff
        if w != v.scale(mu):
            raise ValueError(f"not an eigenvector of [L_p, L_-p] - 2p L_0: "
                             f"{format_vector(v)}")
        c = mu / denom
        if c_found is None:
            c_found = c
        elif c != c_found:
            raise ValueError(f"inconsistent central charge: {c} != {c_found} "
                             f"on {format_vector(v)}")
    if c_found is None:
        raise ValueError("no test vectors supplied")
    return c_found

def exp_apply(A: QuadraticElement, v: FockVector, group_scalar=None,
              cfg: VoaConfig | None = None) -> FockVector:
    """exp(A) v for strictly degree-lowering A, or the eigenvalue
    exponential a^mu for a pure number-operator A and a group scalar a."""
    if A.central:
        raise ValueError("a central summand would exponentiate to e^c")
    offsets = set(A.quad)
    if any(d < 0 for d in offsets):
        raise ValueError("degree-raising diagonal: exp is not locally nilpotent")
    if 0 in offsets:
        if offsets != {0} or not A.linear.is_zero():
            raise ValueError("number-operator exponential requires a pure "
                             "offset-0 quadratic part")
        if group_scalar is None:
            raise ValueError("number-operator exponential needs a group scalar")
        a = rat(group_scalar)
        series = A.quad[0]
        if cfg is None:
            cfg = VoaConfig(v.rank, 1)
        ch = cfg.embedding - 1
        out = {}
        for state, c in v.terms.items():
            mu = F0
            for part in set(state[ch]):
                mu += series.coeff(part) * part * state[ch].count(part)
            if mu.denominator != 1:
                raise ValueError(f"non-integral eigenvalue {mu} on "
                                 f"{format_label(state)}")
            out[state] = c * a ** int(mu)
        return FockVector(v.rank, out)
    if any(e < 0 for e in A.linear.coeffs):
        raise ValueError("creation mode: exp is not locally nilpotent")
    acc = v
    w = v
    k = 1
    while True:
        w = apply_quadratic(A, w, cfg)
        if w.is_zero():
            return acc
        acc = acc + w.scale(Fraction(1, factorial(k)))
        k += 1


# ---------------------------------------------------------------------------
# graded bases and labels
# ---------------------------------------------------------------------------

def _partitions(n: int, maxpart: int | None = None):
    """Partitions of n in descending lexicographic order."""
    if maxpart is None:
        maxpart = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, maxpart), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest

def graded_basis(d: int, r: int):
    """All rank-r basis states of total degree d, leading channels heaviest
    first and partitions in descending lexicographic order."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if r == 1:
        return [(lam,) for lam in _partitions(d)]
    out = []
    for k in range(d, -1, -1):
        for lam in _partitions(k):
            for rest in graded_basis(d - k, r - 1):
                out.append((lam,) + rest)
    return out

def format_partition(lam) -> str:
    return "[" + ",".join(str(p) for p in lam) + "]"

def format_label(state) -> str:
    if len(state) == 1:
        return format_partition(state[0])
    return "(" + "|".join(format_partition(lam) for lam in state) + ")"

def parse_partition(text: str) -> tuple:
    text = text.strip()
    if text == "-":
        return ()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"bad partition {text!r}: expected [..] or -")
    inner = text[1:-1].strip()
    if not inner:
        return ()
    return _canon_partition(int(p) for p in inner.split(","))

def parse_label(text: str) -> tuple:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        return tuple(parse_partition(p) for p in text[1:-1].split("|"))
    return (parse_partition(text),)

def format_vector(v: FockVector) -> str:
    if v.is_zero():
        return "0"
    chunks = []
    for state, c in v.terms_sorted():
        label = format_label(state)
        mag = abs(c)
        body = label if mag == 1 else f"{mag}*{label}"
        if not chunks:
            chunks.append(body if c > 0 else "-" + body)
        else:
            chunks.append(("+ " if c > 0 else "- ") + body)
    return " ".join(chunks)
