"""Exact coefficient fields: the rationals, prime fields GF(p) and extensions GF(p^k).

Elements are kept in a canonical raw form (Fraction for the rationals, an int
residue in [0, p) for GF(p), a tuple of k residues for GF(p^k)) and can be
wrapped in FieldElement for operator syntax.  The raw-level methods on
CoefficientField are what the linear-algebra kernels call in hot loops.

The module also provides the multi-prime lifting tools: Chinese remaindering
and rational reconstruction of a residue into a bounded fraction.
"""

from __future__ import annotations

import math
from fractions import Fraction


class FieldMismatchError(ValueError):
    """Raised when elements of two different fields are combined."""


def _as_int(x, what):
    if isinstance(x, bool) or not isinstance(x, int):
        raise ValueError(f"{what} must be an int, got {x!r}")
    return x


# ---------------------------------------------------------------------------
# univariate polynomial helpers over GF(p), used for extension-field arithmetic
# (coefficient lists, ascending powers, no trailing zeros)


def _upoly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _upoly_mulmod(a, b, f, p):
    """a*b mod f over GF(p); f monic, len(f) = deg+1."""
    n = len(a) + len(b) - 1
    prod = [0] * max(n, 0)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _upoly_rem(prod, f, p)


def _upoly_rem(a, f, p):
    a = list(a)
    k = len(f) - 1
    for i in range(len(a) - 1, k - 1, -1):
        c = a[i] % p
        if c:
            a[i] = 0
            for j in range(k):
                a[i - k + j] = (a[i - k + j] - c * f[j]) % p
    del a[k:]
    return _upoly_trim(a)


def _upoly_powmod(a, e, f, p):
    result = [1]
    base = _upoly_rem(a, f, p)
    while e:
        if e & 1:
            result = _upoly_mulmod(result, base, f, p)
        base = _upoly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _upoly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        # a mod b with b made monic on the fly
        inv = pow(b[-1], -1, p)
        bm = [(c * inv) % p for c in b]
        r = list(a)
        for i in range(len(r) - 1, len(bm) - 2, -1):
            c = r[i] % p
            if c:
                r[i] = 0
                for j in range(len(bm) - 1):
                    r[i - len(bm) + 1 + j] = (r[i - len(bm) + 1 + j] - c * bm[j]) % p
        a, b = bm, _upoly_trim(r)
    return a


def _is_irreducible(tail, p):
    """Rabin test for the monic polynomial u^k + tail over GF(p)."""
    k = len(tail)
    f = list(tail) + [1]
    if k == 0:
        return False
    if k == 1:
        return True
    x = [0, 1]
    # u^(p^k) == u mod f
    xp = _upoly_powmod(x, p ** k, f, p)
    lhs = list(xp)
    while len(lhs) < 2:
        lhs.append(0)
    lhs[1] = (lhs[1] - 1) % p
    if _upoly_trim(lhs):
        return False
    # gcd(u^(p^(k/r)) - u, f) == 1 for each prime r | k
    r = 2
    kk = k
    checked = set()
    while kk > 1:
        while kk % r:
            r += 1
        if r not in checked:
            checked.add(r)
            xq = _upoly_powmod(x, p ** (k // r), f, p)
            d = list(xq)
            while len(d) < 2:
                d.append(0)
            d[1] = (d[1] - 1) % p
            g = _upoly_gcd(f, _upoly_trim(d), p)
            if len(g) != 1:
                return False
        kk //= r
    return True


def _default_modulus(p, k):
    """Deterministic irreducible monic u^k + tail: smallest tail in base-p order."""
    for code in range(p ** k):
        tail = []
        c = code
        for _ in range(k):
            tail.append(c % p)
            c //= p
        if _is_irreducible(tail, p):
            return tuple(tail)
    raise ValueError(f"no irreducible polynomial of degree {k} over GF({p})")


def _is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class CoefficientField:
    """An exact field: kind is one of 'rational', 'prime', 'extension'.

    Raw element forms:
      rational   Fraction
      prime      int in [0, p)
      extension  tuple of k ints in [0, p), coefficients of 1, u, ..., u^(k-1)
    """

    __slots__ = ("kind", "p", "k", "modulus", "_redrows")

    def __init__(self, kind, p=None, k=1, modulus=None):
        self.kind = kind
        if kind == "rational":
            self.p = None
            self.k = 1
            self.modulus = None
            self._redrows = None
        elif kind in ("prime", "extension"):
            _as_int(p, "p")
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")
            self.p = p
            self.k = k
            if kind == "prime":
                if k != 1:
                    raise ValueError("prime field has k = 1")
                self.modulus = None
                self._redrows = None
            else:
                if k < 2:
                    raise ValueError("extension field needs k >= 2")
                if modulus is None:
                    modulus = _default_modulus(p, k)
                modulus = tuple(int(c) % p for c in modulus)
                if len(modulus) != k:
                    raise ValueError("modulus tail must have k coefficients")
                if not _is_irreducible(list(modulus), p):
                    raise ValueError(f"u^{k} + {list(modulus)} is not irreducible over GF({p})")
                self.modulus = modulus
                # reduction rows: u^(k+j) expressed in the power basis, j = 0..k-2
                rows = []
                cur = [(-c) % p for c in modulus]  # u^k
                rows.append(tuple(cur))
                for _ in range(k - 2):
                    cur = [0] + cur
                    top = cur.pop()
                    if top:
                        cur = [(cur[i] + top * rows[0][i]) % p for i in range(k)]
                    rows.append(tuple(cur))
                self._redrows = tuple(rows)
        else:
            raise ValueError(f"unknown field kind {kind!r}")

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, CoefficientField)
            and self.kind == other.kind
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.kind, self.p, self.k, self.modulus))

    def __repr__(self):
        if self.kind == "rational":
            return "QQ"
        if self.kind == "prime":
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    @property
    def characteristic(self):
        return 0 if self.kind == "rational" else self.p

    @property
    def order(self):
        if self.kind == "rational":
            return None
        return self.p ** self.k

    @property
    def is_finite(self):
        return self.kind != "rational"

    # -- raw constants and coercion ----------------------------------------

    @property
    def zero(self):
        if self.kind == "rational":
            return _FR_ZERO
        if self.kind == "prime":
            return 0
        return (0,) * self.k

    @property
    def one(self):
        if self.kind == "rational":
            return _FR_ONE
        if self.kind == "prime":
            return 1
        return (1,) + (0,) * (self.k - 1)

    def generator(self):
        """Raw u for extensions; errors elsewhere."""
        if self.kind != "extension":
            raise ValueError(f"{self!r} has no generator u")
        return (0, 1) + (0,) * (self.k - 2)

    def from_int(self, n):
        if self.kind == "rational":
            return Fraction(n)
        if self.kind == "prime":
            return n % self.p
        return (n % self.p,) + (0,) * (self.k - 1)

    def coerce(self, x):
        """Accept ints, Fractions, FieldElements and raw values; return raw."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatchError(f"element of {x.field!r} used in {self!r}")
            return x.raw
        if isinstance(x, bool):
            raise ValueError("bool is not a field element")
        if isinstance(x, int):
            return self.from_int(x)
        if self.kind == "rational":
            if isinstance(x, Fraction):
                return x
            raise ValueError(f"cannot coerce {x!r} into {self!r}")
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes in {self!r}")
            num = self.from_int(x.numerator)
            den = self.from_int(x.denominator)
            return self.mul(num, self.inv(den))
        if self.kind == "extension" and isinstance(x, tuple) and len(x) == self.k:
            return tuple(int(c) % self.p for c in x)
        raise ValueError(f"cannot coerce {x!r} into {self!r}")

    def element(self, x):
        return FieldElement(self, self.coerce(x))

    # -- raw arithmetic ------------------------------------------------------

    def add(self, a, b):
        if self.kind == "prime":
            return (a + b) % self.p
        if self.kind == "rational":
            return a + b
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        if self.kind == "prime":
            return (a - b) % self.p
        if self.kind == "rational":
            return a - b
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        if self.kind == "prime":
            return (-a) % self.p
        if self.kind == "rational":
            return -a
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        if self.kind == "prime":
            return a * b % self.p
        if self.kind == "rational":
            return a * b
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        out = [c % p for c in prod[:k]]
        for j in range(k - 1):
            c = prod[k + j] % p
            if c:
                row = self._redrows[j]
                for i in range(k):
                    out[i] = (out[i] + c * row[i]) % p
        return tuple(out)

    def inv(self, a):
        if self.kind == "prime":
            if a % self.p == 0:
                raise ZeroDivisionError(f"inverse of 0 in {self!r}")
            return pow(a, -1, self.p)
        if self.kind == "rational":
            if not a:
                raise ZeroDivisionError("inverse of 0 in QQ")
            return 1 / a
        if not any(a):
            raise ZeroDivisionError(f"inverse of 0 in {self!r}")
        p = self.p
        f = list(self.modulus) + [1]
        # extended Euclid: find s with s*a == 1 mod f
        r0, r1 = f, _upoly_trim(list(a))
        s0, s1 = [], [1]
        while r1:
            inv_lc = pow(r1[-1], -1, p)
            q = []  # quotient of r0 by r1
            r = list(r0)
            dq = len(r) - len(r1)
            q = [0] * (dq + 1) if dq >= 0 else []
            for i in range(len(r) - 1, len(r1) - 2, -1):
                if i - (len(r1) - 1) < 0:
                    break
                c = (r[i] * inv_lc) % p
                if c:
                    q[i - (len(r1) - 1)] = c
                    for j in range(len(r1)):
                        r[i - len(r1) + 1 + j] = (r[i - len(r1) + 1 + j] - c * r1[j]) % p
            r0, r1 = r1, _upoly_trim(r)
            # s update: s0 - q*s1
            qs = [0] * (len(q) + len(s1) - 1 if q and s1 else 0)
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        qs[i + j] = (qs[i + j] + qi * sj) % p
            news = [0] * max(len(s0), len(qs))
            for i in range(len(news)):
                v = (s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)
                news[i] = v % p
            s0, s1 = s1, _upoly_trim(news)
        # r0 is the gcd (a nonzero constant since f is irreducible)
        c_inv = pow(r0[0], -1, p)
        s0 = [(c * c_inv) % p for c in s0]
        s0 += [0] * (self.k - len(s0))
        return tuple(s0[: self.k])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        if self.kind == "prime":
            return a == 0
        if self.kind == "rational":
            return not a
        return not any(a)

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # -- enumeration / randomness -------------------------------------------

    def elements(self):
        """All raw elements, deterministic order; finite fields only."""
        if self.kind == "prime":
            return (i for i in range(self.p))
        if self.kind == "extension":
            def gen():
                for code in range(self.p ** self.k):
                    c, out = code, []
                    for _ in range(self.k):
                        out.append(c % self.p)
                        c //= self.p
                    yield tuple(out)
            return gen()
        raise ValueError("cannot enumerate QQ")

    def random(self, rng, lo=None, hi=None):
        """Uniform raw element; for QQ, an integer drawn from [lo, hi]."""
        if self.kind == "rational":
            if lo is None or hi is None:
                raise ValueError("random rational draws need an integer range")
            return Fraction(rng.randint(lo, hi))
        if lo is not None or hi is not None:
            return self.from_int(rng.randint(lo, hi))
        if self.kind == "prime":
            return rng.randrange(self.p)
        return tuple(rng.randrange(self.p) for _ in range(self.k))

    # -- residue lifting ------------------------------------------------------

    def residue(self, a):
        """Canonical integer lift in [0, p); prime fields only."""
        if self.kind != "prime":
            raise ValueError(f"residue lift needs a prime field, not {self!r}")
        return a % self.p

    def in_prime_subfield(self, a):
        """True if a lies in GF(p) inside an extension (or trivially otherwise)."""
        if self.kind == "extension":
            return not any(a[1:])
        return True

    # -- strings --------------------------------------------------------------

    def to_str(self, a):
        if self.kind == "rational":
            return str(a)
        if self.kind == "prime":
            return str(a % self.p)
        parts = []
        for e in range(self.k - 1, -1, -1):
            c = a[e]
            if not c:
                continue
            if e == 0:
                parts.append(str(c))
            else:
                upow = "u" if e == 1 else f"u^{e}"
                parts.append(upow if c == 1 else f"{c}*{upow}")
        if not parts:
            return "0"
        return "+".join(parts)

    def format_coefficient(self, a):
        """Coefficient as used inside polynomial strings (parenthesized if composite)."""
        s = self.to_str(a)
        if self.kind == "extension" and any(op in s[1:] for op in "+-"):
            return f"({s})"
        return s

    def parse(self, s):
        """Inverse of to_str, returning a raw element."""
        s = s.strip().replace(" ", "")
        if self.kind == "rational":
            return Fraction(s)
        if self.kind == "prime":
            return int(s, 10) % self.p
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        out = [0] * self.k
        if not s:
            raise ValueError("empty field element string")
        i = 0
        n = len(s)
        while i < n:
            sign = 1
            if s[i] == "+":
                i += 1
            elif s[i] == "-":
                sign = -1
                i += 1
            j = i
            while j < n and s[j] not in "+-":
                j += 1
            term = s[i:j]
            i = j
            if not term:
                raise ValueError(f"malformed field element string {s!r}")
            if "u" in term:
                coef_s, _, tail = term.partition("u")
                coef = int(coef_s.rstrip("*"), 10) if coef_s.rstrip("*") else 1
                if tail.startswith("^"):
                    e = int(tail[1:], 10)
                elif not tail:
                    e = 1
                else:
                    raise ValueError(f"malformed field element term {term!r}")
            else:
                coef = int(term, 10)
                e = 0
            if e >= self.k:
                raise ValueError(f"power u^{e} out of range for {self!r}")
            out[e] = (out[e] + sign * coef) % self.p
        return tuple(out)

    def to_json(self):
        if self.kind == "rational":
            return {"kind": "rationals"}
        obj = {"kind": "gf", "p": self.p}
        if self.k > 1:
            obj["k"] = self.k
        return obj

    @staticmethod
    def from_json(obj):
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ValueError(f"bad field spec {obj!r}")
        if obj["kind"] in ("rationals", "rational", "QQ"):
            return rationals()
        if obj["kind"] == "gf":
            return GF(obj["p"], obj.get("k", 1))
        raise ValueError(f"unknown field kind {obj['kind']!r}")


_FR_ZERO = Fraction(0)
_FR_ONE = Fraction(1)

_QQ = CoefficientField("rational")


def rationals():
    """The field of rational numbers."""
    return _QQ


def GF(p, k=1, modulus=None):
    """Finite field with p^k elements; modulus is the tail of a monic degree-k
    polynomial (defaults to a deterministic irreducible one)."""
    if k == 1:
        if modulus is not None:
            raise ValueError("GF(p) takes no modulus")
        return CoefficientField("prime", p)
    return CoefficientField("extension", p, k, modulus)


class FieldElement:
    """A raw value bound to its field, with operator syntax."""

    __slots__ = ("field", "raw")

    def __init__(self, field, raw):
        self.field = field
        self.raw = raw

    def _coerce_other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"cannot combine elements of {self.field!r} and {other.field!r}"
                )
            return other.raw
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.raw, self._coerce_other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.raw, self._coerce_other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._coerce_other(other), self.raw))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.raw))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.raw, self._coerce_other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.raw, self._coerce_other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._coerce_other(other), self.raw))

    def __pow__(self, e):
        return FieldElement(self.field, self.field.pow(self.raw, e))

    def __eq__(self, other):
        try:
            return self.raw == self._coerce_other(other)
        except (ValueError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.raw))

    def __bool__(self):
        return not self.field.is_zero(self.raw)

    def is_zero(self):
        return self.field.is_zero(self.raw)

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.raw))

    def __str__(self):
        return self.field.to_str(self.raw)

    def __repr__(self):
        return f"{self.field!r}({self.field.to_str(self.raw)})"


# ---------------------------------------------------------------------------
# multi-prime lifting


def crt_combine(residues, moduli):
    """Solve x == residues[i] mod moduli[i]; moduli must be pairwise coprime.

    Returns the unique solution in [0, prod(moduli)).
    """
    if len(residues) != len(moduli):
        raise ValueError("residues and moduli must have equal length")
    if not moduli:
        raise ValueError("need at least one modulus")
    for m in moduli:
        if _as_int(m, "modulus") < 2:
            raise ValueError(f"modulus {m} must be >= 2")
    for i in range(len(moduli)):
        for j in range(i + 1, len(moduli)):
            g = math.gcd(moduli[i], moduli[j])
            if g != 1:
                raise ValueError(
                    f"moduli {moduli[i]} and {moduli[j]} are not coprime (gcd {g})"
                )
    x, m = residues[0] % moduli[0], moduli[0]
    for r, q in zip(residues[1:], moduli[1:]):
        # x + m*t == r mod q
        t = ((r - x) * pow(m % q, -1, q)) % q
        x += m * t
        m *= q
    return x % m


def rational_reconstruct(r, m):
    """Find n/d with n == d*r mod m, |n|, d <= floor(sqrt(m/2)), gcd(n, d) = 1, d > 0.

    Returns a Fraction, or None if no such pair exists.  Half-extended Euclid
    with early stop.
    """
    _as_int(r, "residue")
    _as_int(m, "modulus")
    if m < 2:
        raise ValueError("modulus must be >= 2")
    r %= m
    if r == 0:
        return Fraction(0)
    bound = math.isqrt(m // 2)
    r0, r1 = m, r
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if r1 == 0 or abs(t1) > bound:
        return None
    n, d = r1, t1
    if d < 0:
        n, d = -n, -d
    if d == 0 or math.gcd(abs(n), d) != 1:
        return None
    if (n - d * r) % m != 0:
        return None
    return Fraction(n, d)


class LiftResult:
    """Outcome of lifting vectors of GF(p) residues to rational numbers."""

    __slots__ = ("moduli", "residues", "combined_modulus", "values", "ok")

    def __init__(self, moduli, residues, combined_modulus, values, ok):
        self.moduli = moduli
        self.residues = residues
        self.combined_modulus = combined_modulus
        self.values = values
        self.ok = ok

    @property
    def all_ok(self):
        return all(self.ok)

    def __repr__(self):
        good = sum(self.ok)
        return f"LiftResult({good}/{len(self.ok)} lifted, modulus ~1e{len(str(self.combined_modulus)) - 1})"


def lift_rationals(residue_vectors, moduli):
    """CRT-combine per-modulus residue vectors and rationally reconstruct each entry.

    residue_vectors[i] is the vector of residues mod moduli[i]; all vectors must
    share one length.  Entries that fail reconstruction get value None, ok False.
    """
    if len(residue_vectors) != len(moduli):
        raise ValueError("one residue vector per modulus required")
    if not moduli:
        raise ValueError("need at least one modulus")
    width = len(residue_vectors[0])
    for vec in residue_vectors:
        if len(vec) != width:
            raise ValueError("residue vectors must share one length")
    combined = []
    for j in range(width):
        combined.append(crt_combine([vec[j] for vec in residue_vectors], moduli))
    m = 1
    for q in moduli:
        m *= q
    values, ok = [], []
    for x in combined:
        f = rational_reconstruct(x, m)
        values.append(f)
        ok.append(f is not None)
    return LiftResult(tuple(moduli), tuple(tuple(v) for v in residue_vectors), m, values, ok)


def primes_from(start, count):
    """The first `count` primes >= start (deterministic Miller-Rabin)."""
    out = []
    n = max(2, start)
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n += 1
    return out
