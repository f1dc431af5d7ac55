"""Exact multivariate rational functions over arbitrary-precision integers.

Polynomials are dicts mapping exponent tuples (one slot per generator) to
nonzero int coefficients.  A RationalFunction keeps num/den in lowest terms
with the denominator's leading coefficient positive under graded-lex order,
so structural equality decides value equality and hashing is safe.

The gcd is a primitive PRS over the integers, multivariate via recursive
content extraction.  Exchange-step divisions almost always cancel exactly
against the numerator of the outgoing variable, so the full gcd machinery
is a fallback, not the common path.
"""

from __future__ import annotations

import math
from functools import reduce

# -- polynomial layer: dict[tuple[int,...], int], no zero coefficients ------


def _pzero():
    return {}


def _pconst(nvars: int, c: int) -> dict:
    return {(0,) * nvars: c} if c else {}


def _pgen(nvars: int, i: int) -> dict:
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): 1}


def _grlex(e) -> tuple:
    return (sum(e), e)


def _plead(p: dict) -> tuple:
    e = max(p, key=_grlex)
    return e, p[e]


def _padd(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            del out[e]
    return out


def _pneg(a: dict) -> dict:
    return {e: -c for e, c in a.items()}


def _psub(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) - c
        if v:
            out[e] = v
        else:
            del out[e]
    return out


def _pmul(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def _pscale(a: dict, c: int) -> dict:
    if not c:
        return {}
    return {e: v * c for e, v in a.items()}


def _content(p: dict) -> int:
    return reduce(math.gcd, p.values(), 0)


def _pdiv_int(p: dict, c: int) -> dict:
    return {e: v // c for e, v in p.items()}


def _pdiv_exact(p: dict, d: dict):
    """q with p == q*d, or None when d does not divide p."""
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    if not p:
        return {}
    de, dc = _plead(d)
    q = {}
    r = dict(p)
    while r:
        re, rc = _plead(r)
        e = tuple(x - y for x, y in zip(re, de))
        if any(x < 0 for x in e) or rc % dc:
            return None
        c = rc // dc
        q[e] = c
        for me, mc in d.items():
            ne = tuple(x + y for x, y in zip(e, me))
            v = r.get(ne, 0) - c * mc
            if v:
                r[ne] = v
            else:
                r.pop(ne, None)
    return q


def _possign(p: dict) -> dict:
    if p and _plead(p)[1] < 0:
        return _pneg(p)
    return p


# gcd support: univariate view in one exponent slot, coefficients are
# polynomials in the remaining slots (same arity, slot zeroed)

def _deg_x(p: dict, x: int) -> int:
    return max((e[x] for e in p), default=-1)


def _coeff_x(p: dict, x: int, d: int) -> dict:
    out = {}
    for e, c in p.items():
        if e[x] == d:
            ze = list(e)
            ze[x] = 0
            out[tuple(ze)] = c
    return out


def _shift_x(p: dict, x: int, d: int) -> dict:
    out = {}
    for e, c in p.items():
        ze = list(e)
        ze[x] += d
        out[tuple(ze)] = c
    return out


def _cont_x(p: dict, x: int) -> dict:
    cont = {}
    for d in range(_deg_x(p, x) + 1):
        cd = _coeff_x(p, x, d)
        if cd:
            cont = _pgcd(cont, cd)
    return cont


def _prem(a: dict, b: dict, x: int) -> dict:
    db = _deg_x(b, x)
    lb = _coeff_x(b, x, db)
    r = a
    while r and _deg_x(r, x) >= db:
        dr = _deg_x(r, x)
        lr = _coeff_x(r, x, dr)
        # lb*r - lr*x^(dr-db)*b kills the x^dr coefficient exactly
        r = _psub(_pmul(r, lb), _pmul(_shift_x(b, x, dr - db), lr))
    return r


def _pick_main(a: dict, b: dict):
    for p in (a, b):
        for e in p:
            for i, v in enumerate(e):
                if v:
                    return i
    return None


def _pgcd(a: dict, b: dict) -> dict:
    """Gcd including integer content, leading coefficient positive."""
    if not a:
        return _possign(b)
    if not b:
        return _possign(a)
    ca, cb = _content(a), _content(b)
    cint = math.gcd(ca, cb)
    a = _pdiv_int(a, ca)
    b = _pdiv_int(b, cb)
    x = _pick_main(a, b)
    if x is None:
        return _pconst(len(next(iter(a))), cint)
    if _deg_x(a, x) == 0 or _deg_x(b, x) == 0:
        # one side is free of x: gcd divides the x-content of the other
        free, other = (a, b) if _deg_x(a, x) == 0 else (b, a)
        g = _pgcd(free, _cont_x(other, x))
        return _possign(_pscale(g, cint))
    conta, contb = _cont_x(a, x), _cont_x(b, x)
    cg = _pgcd(conta, contb)
    A = _pdiv_exact(a, conta)
    B = _pdiv_exact(b, contb)
    if _deg_x(A, x) < _deg_x(B, x):
        A, B = B, A
    while B:
        R = _prem(A, B, x)
        A = B
        if R:
            B = _pdiv_exact(R, _cont_x(R, x))
        else:
            B = {}
    return _possign(_pscale(_pmul(cg, A), cint))


# -- rational layer ----------------------------------------------------------


def _normalize(nvars: int, num: dict, den: dict):
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return {}, _pconst(nvars, 1)
    cn, cd = _content(num), _content(den)
    g = math.gcd(cn, cd)
    if g > 1:
        num = _pdiv_int(num, g)
        den = _pdiv_int(den, g)
    mono = None
    if len(den) == 1:
        mono = next(iter(den))
    elif len(num) == 1:
        mono = next(iter(num))
    if mono is not None:
        if any(mono):
            m = tuple(
                min(min(e[i] for e in num), min(e[i] for e in den)) for i in range(nvars)
            )
            if any(m):
                num = {tuple(x - y for x, y in zip(e, m)): c for e, c in num.items()}
                den = {tuple(x - y for x, y in zip(e, m)): c for e, c in den.items()}
    else:
        gp = _pgcd(num, den)
        if len(gp) > 1 or any(next(iter(gp))):
            num = _pdiv_exact(num, gp)
            den = _pdiv_exact(den, gp)
            cn, cd = _content(num), _content(den)
            g = math.gcd(cn, cd)
            if g > 1:
                num = _pdiv_int(num, g)
                den = _pdiv_int(den, g)
    if _plead(den)[1] < 0:
        num = _pneg(num)
        den = _pneg(den)
    return num, den


def _sorted_items(p: dict) -> tuple:
    return tuple(sorted(p.items(), key=lambda t: _grlex(t[0]), reverse=True))


class RationalFunction:
    __slots__ = ("nvars", "num", "den", "_key", "_hash")

    def __init__(self, nvars: int, num: dict, den: dict | None = None):
        if den is None:
            den = _pconst(nvars, 1)
        num, den = _normalize(nvars, num, den)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        key = (nvars, _sorted_items(num), _sorted_items(den))
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash(key))

    def __setattr__(self, *a):
        raise AttributeError("RationalFunction is immutable")

    # coercion: ints mix freely
    def _co(self, other):
        if isinstance(other, RationalFunction):
            if other.nvars != self.nvars:
                raise ValueError("mixed generator arities")
            return other
        if isinstance(other, int):
            return RationalFunction(self.nvars, _pconst(self.nvars, other))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = RationalFunction(self.nvars, _pconst(self.nvars, other))
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RationalFunction(self.nvars, _padd(self.num, o.num), dict(self.den))
        return RationalFunction(
            self.nvars,
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.nvars, _pneg(self.num), dict(self.den))

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.nvars, _pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        if len(o.num) > 1 and len(self.den) == 1:
            # cluster exchange divisions cancel exactly almost always;
            # try that before falling back to the full gcd
            q = _pdiv_exact(self.num, o.num)
            if q is not None:
                return RationalFunction(self.nvars, _pmul(q, o.den), dict(self.den))
        return RationalFunction(
            self.nvars, _pmul(self.num, o.den), _pmul(self.den, o.num)
        )

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (RationalFunction(self.nvars, _pconst(self.nvars, 1)) / self) ** (-k)
        out = RationalFunction(self.nvars, _pconst(self.nvars, 1))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __repr__(self):
        return f"RationalFunction({render(self)})"


def gens(nvars: int) -> tuple[RationalFunction, ...]:
    return tuple(RationalFunction(nvars, _pgen(nvars, i)) for i in range(nvars))


def const(nvars: int, c: int) -> RationalFunction:
    return RationalFunction(nvars, _pconst(nvars, c))


def is_laurent(r: RationalFunction) -> bool:
    """True when r is an honest Laurent polynomial over the integers:
    denominator a single monomial with coefficient one."""
    return len(r.den) == 1 and _plead(r.den)[1] == 1


def denominator_is_monomial(r: RationalFunction) -> bool:
    """Weaker check: single-term denominator, any integer coefficient."""
    return len(r.den) == 1


def exchange_step(z_k: RationalFunction, in_vars, out_vars) -> RationalFunction:
    """(product of in_vars + product of out_vars) / z_k; empty products are 1."""
    if not z_k:
        raise ZeroDivisionError("exchange at a zero variable")
    nv = z_k.nvars
    pin = const(nv, 1)
    for v in in_vars:
        pin = pin * v
    pout = const(nv, 1)
    for v in out_vars:
        pout = pout * v
    return (pin + pout) / z_k


def _term_str(e, c, names) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(names[i])
        elif k:
            parts.append(f"{names[i]}^{k}")
    if not parts:
        return str(c)
    body = "*".join(parts)
    if c == 1:
        return body
    if c == -1:
        return f"-{body}"
    return f"{c}*{body}"


def _poly_str(p: dict, names) -> str:
    if not p:
        return "0"
    terms = [_term_str(e, c, names) for e, c in _sorted_items(p)]
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def render(r: RationalFunction, names=None) -> str:
    """Fully expanded text form with deterministic graded-lex term order."""
    if names is None:
        names = [f"x{i+1}" for i in range(r.nvars)]
    num = _poly_str(r.num, names)
    if r.den == _pconst(r.nvars, 1):
        return num
    return f"({num})/({_poly_str(r.den, names)})"
