"""Finite quotients o_r = o/p^r of 2-adic discrete valuation rings.

Three kinds, all with residue characteristic 2:

* ``char0-unramified``  Z/2^r                       (q = 2, e = 1)
* ``char2-equal``       F_q[t]/(t^r), q in {2, 4}
* ``char0-eisenstein``  Z_2[pi]/(pi^2 - 2) mod pi^r (q = 2, e = 2)

Every element has a canonical integer code in [0, size).  Scalar arithmetic
runs on plain ints inside RingElem; the _v* kernels do the same arithmetic on
numpy arrays of codes and are what the group layer is built on.

Short CLI aliases: z2, f2t, f4t, eis2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cyclo import CycloElem

KIND_CHAR0 = "char0-unramified"
KIND_CHAR2 = "char2-equal"
KIND_EIS = "char0-eisenstein"

_ALIASES = {
    "z2": (KIND_CHAR0, 2),
    "f2t": (KIND_CHAR2, 2),
    "f4t": (KIND_CHAR2, 4),
    "eis2": (KIND_EIS, 2),
}

# F_4 = F_2[u]/(u^2+u+1) on codes 0,1,2,3 = 0,1,u,1+u. Addition is xor.
_MUL4 = np.array([[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]], dtype=np.int64)
_INV4 = (0, 1, 3, 2)
_SQ4 = np.array([0, 1, 3, 2], dtype=np.int64)
_TR4 = (0, 0, 1, 1)  # Tr(x) = x + x^2 down to F_2


@dataclass(frozen=True)
class RingSpec:
    """Immutable description of one truncated ring o_r."""

    kind: str
    q: int
    r: int

    def __post_init__(self):
        if self.kind not in (KIND_CHAR0, KIND_CHAR2, KIND_EIS):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.r < 1:
            raise ValueError("level r must be >= 1")
        if self.kind == KIND_CHAR2:
            if self.q not in (2, 4):
                raise ValueError("char2-equal supports q in {2, 4}")
        elif self.q != 2:
            raise ValueError("char-zero kinds have residue field F_2")

    @property
    def ell(self):
        return (self.r + 1) // 2

    @property
    def ell_prime(self):
        return self.r // 2

    @property
    def e(self):
        """Ramification index over Z_2; None in equal characteristic."""
        if self.kind == KIND_CHAR0:
            return 1
        if self.kind == KIND_EIS:
            return 2
        return None

    @property
    def size(self):
        return self.q**self.r

    @property
    def char_two(self):
        return self.kind == KIND_CHAR2

    # eisenstein coordinate split: code = a + b << a_bits, a mod 2^ceil(r/2), b mod 2^floor(r/2)
    @property
    def _a_bits(self):
        return (self.r + 1) // 2

    @property
    def _b_bits(self):
        return self.r // 2

    @property
    def short_name(self):
        for k, v in _ALIASES.items():
            if v == (self.kind, self.q):
                return k
        raise AssertionError

    def __repr__(self):
        return f"RingSpec({self.short_name}, r={self.r})"


def make_ring(kind: str, q: int | None = None, r: int | None = None) -> RingSpec:
    """Build a RingSpec; kind may be a long name or a short alias like 'f4t'."""
    if kind in _ALIASES:
        k, qq = _ALIASES[kind]
        if q is not None and q != qq:
            raise ValueError(f"alias {kind} fixes q = {qq}")
        q = qq
        kind = k
    if q is None or r is None:
        raise ValueError("q and r are required")
    return RingSpec(kind, q, r)


@dataclass(frozen=True)
class RingElem:
    spec: RingSpec
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.spec.size:
            raise ValueError(f"code {self.code} out of range for {self.spec}")

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __sub__(self, other):
        return add(self, neg(other))

    def __neg__(self):
        return neg(self)

    def __repr__(self):
        return f"<{encode_elem(self)} in {self.spec.short_name} r={self.spec.r}>"


def elem(spec: RingSpec, code: int) -> RingElem:
    return RingElem(spec, int(code))


def zero(spec):
    return RingElem(spec, 0)


def one(spec):
    return RingElem(spec, 1)


def uniformizer(spec) -> RingElem:
    """pi: 2 for Z/2^r, t in equal characteristic, the ramified root for eisenstein."""
    if spec.kind == KIND_CHAR0:
        code = 2 % spec.size
    elif spec.kind == KIND_CHAR2:
        code = spec.q if spec.r > 1 else 0
    else:
        code = 1 << spec._a_bits if spec.r > 1 else 0
    return RingElem(spec, code)


def from_integer(spec, n: int) -> RingElem:
    """Image of the rational integer n in the ring."""
    if spec.kind == KIND_CHAR0:
        return RingElem(spec, n % spec.size)
    if spec.kind == KIND_EIS:
        return RingElem(spec, n % (1 << spec._a_bits))
    return RingElem(spec, n % 2)


def _check(x: RingElem, y: RingElem):
    if x.spec != y.spec:
        raise ValueError("ring mismatch")


# ---------------------------------------------------------------- vector kernels


def _vadd(spec, x, y):
    if spec.kind == KIND_CHAR0:
        return (x + y) & (spec.size - 1)
    if spec.kind == KIND_CHAR2:
        return x ^ y
    ab, bb = spec._a_bits, spec._b_bits
    am, bm = (1 << ab) - 1, (1 << bb) - 1
    a = ((x & am) + (y & am)) & am
    b = (((x >> ab) & bm) + ((y >> ab) & bm)) & bm
    return a | (b << ab)


def _vneg(spec, x):
    if spec.kind == KIND_CHAR0:
        return (-x) & (spec.size - 1)
    if spec.kind == KIND_CHAR2:
        return x if np.isscalar(x) else x.copy()
    ab, bb = spec._a_bits, spec._b_bits
    am, bm = (1 << ab) - 1, (1 << bb) - 1
    a = (-(x & am)) & am
    b = (-((x >> ab) & bm)) & bm
    return a | (b << ab)


def _vmul(spec, x, y):
    if spec.kind == KIND_CHAR0:
        return (x * y) & (spec.size - 1)
    if spec.kind == KIND_CHAR2 and spec.q == 2:
        r = spec.r
        out = np.zeros_like(x * y)
        for i in range(r):
            bit = (y >> i) & 1
            out ^= (x << i) * bit
        return out & (spec.size - 1)
    if spec.kind == KIND_CHAR2:
        r = spec.r
        out = np.zeros_like(x * y)
        for i in range(r):
            di = (x >> (2 * i)) & 3
            for j in range(r - i):
                dj = (y >> (2 * j)) & 3
                out ^= _MUL4[di, dj] << (2 * (i + j))
        return out
    ab, bb = spec._a_bits, spec._b_bits
    am, bm = (1 << ab) - 1, (1 << bb) - 1
    a, b = x & am, (x >> ab) & bm
    c, d = y & am, (y >> ab) & bm
    # (a + b pi)(c + d pi) = ac + 2bd + (ad + bc) pi, using pi^2 = 2
    ra = (a * c + 2 * b * d) & am
    rb = (a * d + b * c) & bm
    return ra | (rb << ab)


def _vsquare(spec, x):
    """x*x, with the cheap Frobenius route in characteristic two."""
    if spec.kind == KIND_CHAR2:
        r = spec.r
        out = np.zeros_like(x + np.int64(0))
        if spec.q == 2:
            for i in range((r + 1) // 2):
                out |= (((x >> i) & 1)) << (2 * i)
            return out & (spec.size - 1)
        for i in range((r + 1) // 2):
            out |= _SQ4[(x >> (2 * i)) & 3] << (4 * i)
        return out & (spec.size - 1)
    return _vmul(spec, x, x)


def _vval(spec, x):
    """Valuation vector with val(0) = r."""
    x = np.asarray(x)
    r = spec.r
    out = np.full(x.shape, r, dtype=np.int64)
    if spec.kind == KIND_CHAR0:
        for k in range(r - 1, -1, -1):
            out = np.where((x >> k) & 1, k, out)
        return out
    if spec.kind == KIND_CHAR2:
        w = 1 if spec.q == 2 else 2
        mask = (1 << w) - 1
        for k in range(r - 1, -1, -1):
            out = np.where(((x >> (w * k)) & mask) != 0, k, out)
        return out
    ab, bb = spec._a_bits, spec._b_bits
    a, b = x & ((1 << ab) - 1), (x >> ab) & ((1 << bb) - 1)
    va = np.full(x.shape, r, dtype=np.int64)
    for k in range(ab - 1, -1, -1):
        va = np.where((a >> k) & 1, np.minimum(2 * k, r), va)
    vb = np.full(x.shape, r, dtype=np.int64)
    for k in range(bb - 1, -1, -1):
        vb = np.where((b >> k) & 1, np.minimum(2 * k + 1, r), vb)
    return np.minimum(va, vb)


def _vinv(spec, x):
    """Newton inversion y <- y(2 - xy); caller guarantees units."""
    if spec.kind == KIND_CHAR2 and spec.q == 4:
        y = np.asarray([_INV4[c] for c in np.atleast_1d(x) & 3], dtype=np.int64).reshape(np.shape(x))
    else:
        y = np.ones_like(np.asarray(x), dtype=np.int64)
    two = np.int64(0) if spec.kind == KIND_CHAR2 else np.int64(from_integer(spec, 2).code)
    prec = 1
    while prec < spec.r:
        y = _vmul(spec, y, _vadd(spec, two, _vneg(spec, _vmul(spec, x, y))))
        prec *= 2
    return y


def _vproj(spec, s_spec, x):
    if spec.kind != s_spec.kind or spec.q != s_spec.q or s_spec.r > spec.r:
        raise ValueError("projection needs the same kind and a lower level")
    if spec.kind == KIND_CHAR0:
        return x & (s_spec.size - 1)
    if spec.kind == KIND_CHAR2:
        w = 1 if spec.q == 2 else 2
        return x & ((1 << (w * s_spec.r)) - 1)
    ab, bb = spec._a_bits, spec._b_bits
    a, b = x & ((1 << ab) - 1), (x >> ab) & ((1 << bb) - 1)
    a2 = a & ((1 << s_spec._a_bits) - 1)
    b2 = b & ((1 << s_spec._b_bits) - 1)
    return a2 | (b2 << s_spec._a_bits)


# ---------------------------------------------------------------- scalar ops


def add(x: RingElem, y: RingElem) -> RingElem:
    _check(x, y)
    return RingElem(x.spec, int(_vadd(x.spec, np.int64(x.code), np.int64(y.code))))


def mul(x: RingElem, y: RingElem) -> RingElem:
    _check(x, y)
    return RingElem(x.spec, int(_vmul(x.spec, np.int64(x.code), np.int64(y.code))))


def neg(x: RingElem) -> RingElem:
    return RingElem(x.spec, int(_vneg(x.spec, np.int64(x.code))))


def val(x: RingElem) -> int:
    """pi-adic valuation, with val(0) = r."""
    return int(_vval(x.spec, np.int64(x.code)))


def is_unit(x: RingElem) -> bool:
    return val(x) == 0


def inv(x: RingElem) -> RingElem:
    if not is_unit(x):
        raise ValueError(f"{x} is not a unit")
    return RingElem(x.spec, int(_vinv(x.spec, np.int64(x.code))))


def truncate(spec: RingSpec, s: int) -> RingSpec:
    """The level-s quotient of the same ring, s <= r."""
    if not 1 <= s <= spec.r:
        raise ValueError(f"truncation level {s} not in [1, {spec.r}]")
    return RingSpec(spec.kind, spec.q, s)


def proj(spec_r: RingSpec, spec_s: int | RingSpec, x: RingElem) -> RingElem:
    """Natural projection o_r -> o_s for s <= r (gamma on units)."""
    s_spec = spec_s if isinstance(spec_s, RingSpec) else truncate(spec_r, spec_s)
    if x.spec != spec_r:
        raise ValueError("element not in the source ring")
    return RingElem(s_spec, int(_vproj(spec_r, s_spec, np.int64(x.code))))


def _vlift(spec_to: RingSpec, spec_from: RingSpec, x):
    if spec_to.kind != spec_from.kind or spec_to.q != spec_from.q or spec_from.r > spec_to.r:
        raise ValueError("lift needs the same kind and a higher level")
    if spec_to.kind != KIND_EIS:
        return x  # codes are literal coordinates, already valid upstairs
    ab = spec_from._a_bits
    a, b = x & ((1 << ab) - 1), (x >> ab) & ((1 << spec_from._b_bits) - 1)
    return a | (b << spec_to._a_bits)


def lift(spec_to: RingSpec, x: RingElem) -> RingElem:
    """Coordinate-identity section of proj: proj(spec_to, x.spec, lift(x)) = x."""
    return RingElem(spec_to, int(_vlift(spec_to, x.spec, np.int64(x.code))))


def _vdiv_pi(spec, x):
    # one division by pi on codes; caller guarantees val >= 1
    if spec.kind == KIND_CHAR0:
        return x >> 1
    if spec.kind == KIND_CHAR2:
        return x >> (1 if spec.q == 2 else 2)
    ab = spec._a_bits
    a, b = x & ((1 << ab) - 1), x >> ab
    return b | ((a >> 1) << ab)  # (a + b*pi)/pi = b + (a/2)*pi


def div_pi_power(spec: RingSpec, x, k: int):
    """Codes of x / pi^k (vectorized); requires val(x) >= k.

    The quotient is only defined modulo pi^(r-k); this returns the canonical
    representative with vanishing top coordinates.
    """
    x = np.asarray(x, dtype=np.int64)
    for _ in range(k):
        if np.any(_vval(spec, x) < 1):
            raise ValueError("element not divisible by the requested pi power")
        x = _vdiv_pi(spec, x)
    return x


_TABLE_BUDGET = 1 << 22


@lru_cache(maxsize=None)
def _tables(spec: RingSpec):
    """(val_table, inv_table, unit_codes) for rings small enough to enumerate."""
    if spec.size > _TABLE_BUDGET:
        raise ValueError(f"{spec} too large to enumerate ({spec.size} elements)")
    codes = np.arange(spec.size, dtype=np.int64)
    vals = _vval(spec, codes)
    unit_codes = codes[vals == 0]
    inv_table = np.full(spec.size, -1, dtype=np.int64)
    inv_table[unit_codes] = _vinv(spec, unit_codes)
    vals.setflags(write=False)
    inv_table.setflags(write=False)
    unit_codes.setflags(write=False)
    return vals, inv_table, unit_codes


def unit_codes(spec: RingSpec) -> np.ndarray:
    """Codes of the unit group, ascending (read-only array)."""
    return _tables(spec)[2]


def units(spec: RingSpec) -> list[RingElem]:
    return [RingElem(spec, int(c)) for c in unit_codes(spec)]


def unit_count(spec: RingSpec) -> int:
    return (spec.q - 1) * spec.q ** (spec.r - 1)


def square_unit_codes(spec: RingSpec) -> np.ndarray:
    return np.unique(_vsquare(spec, unit_codes(spec)))


def squares_of_units(spec: RingSpec) -> set[RingElem]:
    return {RingElem(spec, int(c)) for c in square_unit_codes(spec)}


def sqrt1_count(spec: RingSpec) -> int:
    """|{x unit : x^2 = 1}|, exhaustively when the ring is enumerable.

    For q = 4 truncations above the table budget the count uses the char-2
    identity x^2 = 1 iff (x+1)^2 = 0 iff val(x+1) >= ceil(r/2); agreement with
    exhaustive enumeration is asserted in the tests for every enumerable level.
    """
    if spec.size <= _TABLE_BUDGET:
        # val + square only; the inverse table _tables would build is dead weight here
        codes = np.arange(spec.size, dtype=np.int64)
        u = codes[_vval(spec, codes) == 0]
        return int(np.count_nonzero(_vsquare(spec, u) == 1))
    if spec.char_two:
        return spec.q ** (spec.r // 2)
    raise ValueError(f"{spec} too large to enumerate")


# ---------------------------------------------------------------- additive character


def psi_order(spec: RingSpec) -> int:
    """Order of the root-of-unity values taken by psi."""
    if spec.kind == KIND_CHAR0:
        return spec.size
    if spec.kind == KIND_CHAR2:
        return 2
    return 1 << spec._a_bits


def psi_exponent(spec: RingSpec, x) -> "int | np.ndarray":
    """Exponent j with psi(x) = zeta_N^j, N = psi_order(spec). Vectorized.

    z2: psi(x) = zeta_{2^r}^x.  f2t/f4t: psi(x) = (-1)^{Tr(alpha a_{r-1})} with
    Tr(alpha) = 1 (alpha = u for q = 4 since Tr(1) = 0 there).  eis2:
    psi(a + b pi) = zeta_{2^l}^a zeta_{2^l'}^b.  All satisfy psi(pi^{r-1}) != 1.
    """
    if spec.kind == KIND_CHAR0:
        return x % spec.size
    if spec.kind == KIND_CHAR2:
        if spec.q == 2:
            return (x >> (spec.r - 1)) & 1
        top = (x >> (2 * (spec.r - 1))) & 3
        # alpha = u is code 2
        if np.isscalar(top) or np.ndim(top) == 0:
            return _TR4[int(_MUL4[2, int(top)])]
        t = _MUL4[2, top]
        return np.asarray(_TR4, dtype=np.int64)[t]
    ab, bb = spec._a_bits, spec._b_bits
    a, b = x & ((1 << ab) - 1), (x >> ab) & ((1 << bb) - 1)
    return (a + (b << (ab - bb))) & ((1 << ab) - 1)


def psi(spec: RingSpec, x: RingElem) -> CycloElem:
    """The fixed additive character as an exact root of unity."""
    if x.spec != spec:
        raise ValueError("element not in the stated ring")
    n = psi_order(spec)
    return CycloElem.from_root(n, int(psi_exponent(spec, x.code)))


# ---------------------------------------------------------------- text encoding


def encode_elem(x: RingElem) -> str:
    spec = x.spec
    if spec.kind == KIND_CHAR0:
        return str(x.code)
    if spec.kind == KIND_CHAR2:
        w = 1 if spec.q == 2 else 2
        digits = [(x.code >> (w * i)) & ((1 << w) - 1) for i in range(spec.r)]
        return ",".join(str(d) for d in digits)
    ab = spec._a_bits
    a, b = x.code & ((1 << ab) - 1), x.code >> ab
    return f"{a}+{b}*pi"


def parse_elem(spec: RingSpec, text: str) -> RingElem:
    text = text.strip()
    if spec.kind == KIND_CHAR0:
        return RingElem(spec, int(text) % spec.size)
    if spec.kind == KIND_CHAR2:
        w = 1 if spec.q == 2 else 2
        digits = [int(p) for p in text.split(",")]
        if len(digits) > spec.r or any(not 0 <= d < spec.q for d in digits):
            raise ValueError(f"bad element text {text!r}")
        return RingElem(spec, sum(d << (w * i) for i, d in enumerate(digits)))
    if "+" not in text:
        raise ValueError(f"bad element text {text!r}")
    a_s, b_s = text.split("+")
    b_s = b_s.replace("*pi", "")
    a = int(a_s) % (1 << spec._a_bits)
    b = int(b_s) % (1 << spec._b_bits)
    return RingElem(spec, a | (b << spec._a_bits))
