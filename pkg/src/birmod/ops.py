"""The multiplicative operator family on modular symbols.

Four basic operators act on formal sums of symbols: entrywise scaling by k
(which annihilates a symbol exactly when every scaled entry vanishes), the
k-fold lift summing over all entrywise preimages, its averaged version with
rational coefficients, and the torsion-shift average summing over shifts by
k-torsion tuples.  A level-l product (lift one factor, concatenate) and a
torsion coproduct (split positions, scale one side, sign-canonicalize the
other) complete the family.

Composition identities are verified at the tuple level: composites are
expanded in the free module on all entry tuples, including the all-zero
tuple, and the acceptability projection (drop all-zero tuples) is applied
once at the end.  At that level the identities hold exactly.  Composing
the projected operators instead breaks the commutation and torsion-shift
identities precisely on symbols annihilated by scaling; those instances
are genuine and are reported in an informational section, never asserted
away.

Internally entries are interned to small integers so the hot loops sort
and hash machine ints rather than rationals; interned tuples are ordered
by intern id, a valid canonical form for equality testing, and entries
are decoded and re-sorted by value on the way out.
"""

import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import gcd, lcm

from .qz import QZ, preimages, torsion
from .symbols import (FormalSum, Symbol, canonicalize, enumerate_symbols,
                      minus_canonicalize, relation_rows, relation_matrix,
                      TWO_TORSION)

MAX_STORED_FAILURES = 50


def _check_k(k):
    if not isinstance(k, int) or k < 1:
        raise ValueError("operator index must be a positive integer")


# entry interning; derived tables may race benignly, the id table may not

_IDS = {}
_VALS = []
_ILOCK = threading.Lock()


def _iid(a):
    i = _IDS.get(a)
    if i is None:
        with _ILOCK:
            i = _IDS.get(a)
            if i is None:
                i = len(_VALS)
                _VALS.append(a)
                _IDS[a] = i
    return i


_ZID = _iid(QZ(0))
_MUL = {}
_PRE = {}
_TOR = {}
_ADD = {}


def _mul_id(k, i):
    r = _MUL.get((k, i))
    if r is None:
        r = _iid(_VALS[i] * k)
        _MUL[(k, i)] = r
    return r


def _pre_ids(k, i):
    r = _PRE.get((k, i))
    if r is None:
        r = tuple(_iid(p) for p in preimages(_VALS[i], k))
        _PRE[(k, i)] = r
    return r


def _tor_ids(k):
    r = _TOR.get(k)
    if r is None:
        r = tuple(_iid(t) for t in torsion(k))
        _TOR[k] = r
    return r


def _add_id(i, j):
    r = _ADD.get((i, j))
    if r is None:
        r = _iid(_VALS[i] + _VALS[j])
        _ADD[(i, j)] = r
    return r


def _enc(entries):
    return tuple(sorted(_iid(a) for a in entries))


def _dec(t):
    return canonicalize(_VALS[i] for i in t)


# raw pipelines: dicts {interned entry tuple: coefficient}, no drop

def _raw_of(fs):
    return {_enc(s): c for s, c in fs.terms.items()}


def _raw_sigma(k, sums):
    out = {}
    for t, c in sums.items():
        key = tuple(sorted(_mul_id(k, i) for i in t))
        out[key] = out.get(key, 0) + c
    return {t: c for t, c in out.items() if c}


def _raw_rho(k, sums):
    out = {}
    for t, c in sums.items():
        for combo in product(*[_pre_ids(k, i) for i in t]):
            key = tuple(sorted(combo))
            out[key] = out.get(key, 0) + c
    return {t: c for t, c in out.items() if c}


def _raw_e(k, sums):
    shifts = _tor_ids(k)
    out = {}
    for t, c in sums.items():
        for combo in product(shifts, repeat=len(t)):
            key = tuple(sorted(_add_id(i, s) for i, s in zip(t, combo)))
            out[key] = out.get(key, 0) + c
    return {t: c for t, c in out.items() if c}


def _project(sums):
    return {t: c for t, c in sums.items() if any(i != _ZID for i in t)}


def _wrap(sums, arity, rational):
    return FormalSum({Symbol(_dec(t)): c for t, c in _project(sums).items()},
                     arity, rational)


def _raw_json(sums):
    out = []
    for t, c in sums.items():
        out.append({"c": str(c), "s": [str(a) for a in _dec(t)]})
    out.sort(key=lambda item: item["s"])
    return out


def sigma_op(k, x):
    """Entrywise scaling by k; a symbol dies iff all scaled entries vanish."""
    _check_k(k)
    return _wrap(_raw_sigma(k, _raw_of(x)), x.arity, x.rational)


def rho_op(k, x):
    """Sum over all k^arity entrywise preimage tuples."""
    _check_k(k)
    return _wrap(_raw_rho(k, _raw_of(x)), x.arity, x.rational)


def rho_hat_op(k, x):
    """Averaged lift: rho_op divided by k^arity; needs rational coefficients."""
    _check_k(k)
    if not x.rational:
        raise ValueError("averaged lift needs a rational-coefficient sum")
    return rho_op(k, x).scale(Fraction(1, k ** x.arity))


def e_op(k, x):
    """Sum over all k^arity torsion-shift tuples of the shifted symbol."""
    _check_k(k)
    return _wrap(_raw_e(k, _raw_of(x)), x.arity, x.rational)


def _nabla_tuples(ell, tx_ids, ty_ids):
    out = {}
    for lift in product(*[_pre_ids(ell, i) for i in tx_ids]):
        key = tuple(sorted(lift + ty_ids))
        out[key] = out.get(key, 0) + 1
    return out


def nabla_op(ell, x, y, strict=True):
    """Level-ell product: sum over lifts of the first factor, concatenated.

    The level is explicit and never inferred from the second factor.  With
    strict=True every entry of y must have order dividing ell (the second
    factor lives at that level); the relaxed form is what the ring
    homomorphism law needs on lifted factors.
    """
    if not isinstance(ell, int) or ell < 2:
        raise ValueError("product level must be an integer >= 2")
    out = {}
    for sy, cy in y.terms.items():
        if strict and any(ell % a.order for a in sy):
            raise ValueError("entry order does not divide the level")
        ty = tuple(_iid(a) for a in sy)
        for sx, cx in x.terms.items():
            tx = tuple(_iid(a) for a in sx)
            for t, m in _nabla_tuples(ell, tx, ty).items():
                out[t] = out.get(t, 0) + m * cx * cy
    arity = x.arity + y.arity if out else 0
    return _wrap(out, arity, x.rational or y.rational)


class DeltaSum:
    """Output of the coproduct: tensor terms grouped by arity split."""

    def __init__(self):
        self.buckets = {}

    def add(self, split, left, right, coeff):
        if not coeff:
            return
        b = self.buckets.setdefault(split, {})
        key = (left, right)
        c = b.get(key, 0) + coeff
        if c:
            b[key] = c
        else:
            del b[key]
            if not b:
                del self.buckets[split]

    def is_zero(self):
        return not self.buckets

    def __eq__(self, other):
        if not isinstance(other, DeltaSum):
            return NotImplemented
        return self.buckets == other.buckets

    def items(self):
        out = []
        for split in sorted(self.buckets):
            for (l, r), c in sorted(self.buckets[split].items()):
                out.append((split, l, r, c))
        return out

    def map_sigma(self, k):
        """Apply scaling by k to both tensor legs, renormalizing the right."""
        out = DeltaSum()
        for split, l, r, c in self.items():
            left = tuple(sorted(a * k for a in l))
            if not any(left):
                continue
            rep, sign = minus_canonicalize(canonicalize(a * k for a in r))
            if sign == TWO_TORSION:
                continue
            out.add(split, Symbol(left), rep, sign * c)
        return out

    def to_json(self):
        return [{"split": list(split), "left": l.to_json(),
                 "right": r.to_json(), "c": str(c)}
                for split, l, r, c in self.items()]


def delta_op(x, N=None):
    """Torsion coproduct of a formal sum, optionally pinned to modulus N.

    For each symbol and each proper position split with both sides
    nonempty, the positions whose entries generate a subgroup of some
    order m >= 2 feed the right leg (sign-canonicalized, two-torsion
    classes collapse) while the remaining entries are scaled by m on the
    left (dropped if that kills them all).  Arity-1 input has no proper
    split, so it maps to zero.
    """
    out = DeltaSum()
    for s, coeff in x.terms.items():
        n = len(s)
        if N is not None and any(N % a.order for a in s):
            raise ValueError("symbol entries are not %d-torsion" % N)
        for r in range(1, n):
            for right_pos in combinations(range(n), r):
                sub = tuple(s[i] for i in right_pos)
                m = lcm(*[a.order for a in sub])
                if m < 2:
                    continue
                left = tuple(sorted(s[i] * m for i in range(n)
                                    if i not in right_pos))
                if not any(left):
                    continue
                rep, sign = minus_canonicalize(canonicalize(sub))
                if sign == TWO_TORSION:
                    continue
                out.add((n - r, r), Symbol(left), rep, sign * coeff)
    return out


def split_by_modulus(fs):
    """Split a formal sum into its exact-modulus components."""
    parts = {}
    for s, c in fs.terms.items():
        parts.setdefault(s.modulus, {})[s] = c
    return {m: FormalSum(t, fs.arity, fs.rational)
            for m, t in sorted(parts.items())}


# law verification

@dataclass
class LawCheck:
    law: str
    checked: int = 0
    failures: int = 0
    samples: list = field(default_factory=list)

    def record(self, ok, payload):
        self.checked += 1
        if not ok:
            self.failures += 1
            if len(self.samples) < MAX_STORED_FAILURES:
                self.samples.append(payload)


@dataclass
class OperatorReport:
    suite: str
    grid: dict
    laws: list
    info: dict

    @property
    def failures_total(self):
        return sum(l.failures for l in self.laws)

    def to_json(self):
        return {
            "suite": self.suite,
            "grid": self.grid,
            "laws": [{"law": l.law, "checked": l.checked,
                      "failures": l.failures, "samples": l.samples}
                     for l in self.laws],
            "info": self.info,
            "failures_total": self.failures_total,
        }


def _thread_count(threads):
    if threads is None:
        threads = os.environ.get("BIRMOD_THREADS", "1")
    try:
        return max(1, int(threads))
    except ValueError:
        return 1


def _run_cells(worker, cells, threads):
    if threads <= 1:
        return [worker(cell) for cell in cells]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, cells))


def _merge_cells(results, law_names):
    laws = {name: LawCheck(name) for name in law_names}
    info_rows = []
    for cell_laws, cell_info in results:
        for name, items in cell_laws.items():
            chk = laws[name]
            for ok, payload in items:
                chk.record(ok, payload)
        info_rows.extend(cell_info)
    return list(laws.values()), info_rows


def _lemma48_cell(args):
    n, N, ks = args
    results = {name: [] for name in _LEMMA48_LAWS}
    info = []
    for sym in enumerate_symbols(n, N):
        t = _enc(sym)
        x = {t: 1}
        tag = {"n": n, "N": N, "symbol": sym.to_json()}
        sig = {k: _raw_sigma(k, x) for k in ks}
        rho = {k: _raw_rho(k, x) for k in ks}
        for k in ks:
            for l in ks:
                lhs = _raw_sigma(k, sig[l])
                rhs = _raw_sigma(k * l, x)
                results["scale_multiplicative"].append(
                    (lhs == rhs, {**tag, "k": k, "l": l}))
                lhs = _raw_rho(k, rho[l])
                rhs = _raw_rho(k * l, x)
                results["lift_multiplicative"].append(
                    (lhs == rhs, {**tag, "k": k, "l": l}))
                if gcd(k, l) == 1:
                    lhs = _raw_sigma(k, rho[l])
                    rhs = _raw_rho(l, sig[k])
                    results["scale_lift_commute"].append(
                        (lhs == rhs, {**tag, "k": k, "l": l}))
        for k in ks:
            lhs = _raw_rho(k, sig[k])
            rhs = _raw_e(k, x)
            results["lift_scale_torsion_shift"].append(
                (lhs == rhs, {**tag, "k": k}))
            lhs = _raw_sigma(k, rho[k])
            rhs = {t: k ** n}
            results["scale_lift_scalar"].append(
                (lhs == rhs, {**tag, "k": k}))
            xq = FormalSum.of(sym, rational=True)
            back = sigma_op(k, rho_hat_op(k, xq))
            results["averaged_lift_section"].append(
                (back == xq, {**tag, "k": k}))
        # the projected composites genuinely deviate on annihilated symbols
        for k in ks:
            if not any(_project(sig[k])):
                xs = FormalSum.of(sym)
                for l in ks:
                    if gcd(k, l) == 1:
                        lp = sigma_op(k, rho_op(l, xs))
                        rp = rho_op(l, sigma_op(k, xs))
                        if lp != rp:
                            info.append({**tag, "k": k, "l": l,
                                         "law": "scale_lift_commute",
                                         "projected_lhs": lp.to_json(),
                                         "projected_rhs": rp.to_json()})
                lp = rho_op(k, sigma_op(k, xs))
                rp = e_op(k, xs)
                if lp != rp:
                    info.append({**tag, "k": k,
                                 "law": "lift_scale_torsion_shift",
                                 "projected_lhs": lp.to_json(),
                                 "projected_rhs": rp.to_json()})
    return results, info


_LEMMA48_LAWS = (
    "scale_multiplicative",
    "lift_multiplicative",
    "scale_lift_commute",
    "lift_scale_torsion_shift",
    "scale_lift_scalar",
    "averaged_lift_section",
)


def _ringhom_cell(args):
    (n1, m1, n2, m2, ks) = args
    results = {"lift_product_hom": []}
    for sx in enumerate_symbols(n1, m1):
        tx = _enc(sx)
        for sy in enumerate_symbols(n2, m2):
            ty = _enc(sy)
            for ell in ks:
                prod_xy = _nabla_tuples(ell, tx, ty)
                for k in ks:
                    lhs = _raw_rho(k, prod_xy)
                    rhs = {}
                    for u, cu in _raw_rho(k, {tx: 1}).items():
                        for v, cv in _raw_rho(k, {ty: 1}).items():
                            for t, m in _nabla_tuples(ell, u, v).items():
                                rhs[t] = rhs.get(t, 0) + m * cu * cv
                    results["lift_product_hom"].append(
                        (lhs == rhs,
                         {"nx": n1, "mx": m1, "ny": n2, "my": m2,
                          "k": k, "l": ell, "x": sx.to_json(),
                          "y": sy.to_json()}))
    return results, []


def _coalg_cell(args):
    n, N, ks = args
    results = {"scale_coproduct_hom": []}
    info = []
    for sym in enumerate_symbols(n, N):
        x = FormalSum.of(sym)
        dx = delta_op(x, N)
        for k in ks:
            lhs = dx.map_sigma(k)
            rhs = delta_op(sigma_op(k, x), N)
            tag = {"n": n, "N": N, "k": k, "symbol": sym.to_json()}
            if gcd(k, N) == 1:
                results["scale_coproduct_hom"].append((lhs == rhs, tag))
            elif lhs != rhs:
                info.append({**tag, "law": "scale_coproduct_hom",
                             "note": "non-coprime instance differs",
                             "lhs": lhs.to_json(), "rhs": rhs.to_json()})
    return results, info


def check_laws(suite, max_n, max_N, ks, threads=None):
    """Verify an operator-law suite on the full (arity, modulus) grid.

    Returns a report; zero failures is the assertion of every law at every
    grid point.  The ``lemma48`` suite covers the composition laws of the
    four basic operators, ``ringhom`` the product compatibility of the
    lift, ``coalg`` the coproduct compatibility of scaling (asserted for
    coprime scale only, other instances are reported as information).
    """
    ks = tuple(sorted(set(ks)))
    if not ks or any(k < 2 for k in ks):
        raise ValueError("operator indices must be integers >= 2")
    threads = _thread_count(threads)
    grid = {"max_n": max_n, "max_N": max_N, "ks": list(ks)}
    if suite == "lemma48":
        cells = [(n, N, ks) for n in range(1, max_n + 1)
                 for N in range(2, max_N + 1)]
        results = _run_cells(_lemma48_cell, cells, threads)
        laws, info_rows = _merge_cells(results, _LEMMA48_LAWS)
        info = {
            "scalar_note": ("scale_after_lift equals k**arity times the "
                            "identity; the scalar is k itself only at "
                            "arity 1"),
            "projected_composite_deviations": info_rows,
        }
    elif suite == "ringhom":
        cells = [(n1, m1, n2, m2, ks)
                 for n1 in range(1, max_n + 1)
                 for m1 in range(2, max_N + 1)
                 for n2 in range(1, max_n + 1)
                 for m2 in range(2, max_N + 1)]
        results = _run_cells(_ringhom_cell, cells, threads)
        laws, info_rows = _merge_cells(results, ("lift_product_hom",))
        info = {"notes": "product level is explicit; lifted second factors "
                         "are accepted without the order check"}
    elif suite == "coalg":
        cells = [(n, N, ks) for n in range(1, max_n + 1)
                 for N in range(2, max_N + 1)]
        results = _run_cells(_coalg_cell, cells, threads)
        laws, info_rows = _merge_cells(results, ("scale_coproduct_hom",))
        info = {"non_coprime_reports": info_rows}
    else:
        raise ValueError("unknown suite %r" % suite)
    return OperatorReport(suite, grid, laws, info)


_RELMAT_CACHE = {}


def _relmat(n, N, minus):
    key = (n, N, minus)
    if key not in _RELMAT_CACHE:
        _RELMAT_CACHE[key] = relation_matrix(n, N, minus)
    return _RELMAT_CACHE[key]


def descent_failures(n, N, minus, ks):
    """Relation vectors whose operator images leave the relation span.

    Empty output means the operators descend to the presented quotient at
    (n, N): the image of every relation row decomposes by exact modulus
    and each component lies in the rational span of the relation rows of
    the target module.
    """
    fails = []
    for i, row in enumerate(relation_rows(n, N, minus)):
        for k in ks:
            for name, image in (("scale", sigma_op(k, row)),
                                ("lift", rho_op(k, row)),
                                ("torsion_shift", e_op(k, row))):
                for M, comp in split_by_modulus(image).items():
                    if not _relmat(n, M, minus).contains(comp):
                        fails.append({"row": i, "k": k, "op": name,
                                      "target_modulus": M,
                                      "component": comp.to_json()})
    return fails
