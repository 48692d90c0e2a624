"""Exact arithmetic in Z[x]/(x^n - 1), the redundant cyclotomic integer model.

An element is an integer coefficient vector c of length n standing for
sum_j c[j] * zeta_n^j.  The representation is redundant: equality and
rationality tests go through canonical reduction modulo the n-th cyclotomic
polynomial, computed exactly by iterated integer polynomial division of
x^n - 1 by the Phi_d for proper divisors d.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm

import numpy as np


class NotRational(ValueError):
    """Raised when a cyclotomic value expected to be a rational integer is not."""


def _as_vec(n, coeffs):
    v = np.asarray(coeffs, dtype=np.int64)
    if v.shape != (n,):
        raise ValueError(f"coefficient vector must have length {n}")
    return v


@dataclass(frozen=True)
class CycloElem:
    """Integer combination of n-th roots of unity, coefficients indexed by exponent."""

    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_vec(self.n, self.coeffs))

    @staticmethod
    def zero(n):
        return CycloElem(n, np.zeros(n, dtype=np.int64))

    @staticmethod
    def from_int(c, n=1):
        v = np.zeros(n, dtype=np.int64)
        v[0] = c
        return CycloElem(n, v)

    @staticmethod
    def from_root(n, j):
        """zeta_n^j as an element of Z[x]/(x^n - 1)."""
        v = np.zeros(n, dtype=np.int64)
        v[j % n] = 1
        return CycloElem(n, v)

    def __eq__(self, other):
        if not isinstance(other, CycloElem):
            if isinstance(other, (int, np.integer)):
                other = CycloElem.from_int(int(other))
            else:
                return NotImplemented
        m = lcm(self.n, other.n)
        a = canonical(_lift(self, m))
        b = canonical(_lift(other, m))
        return a.shape == b.shape and bool(np.array_equal(a, b))

    def __hash__(self):
        return hash((self.n, self.coeffs.tobytes()))

    def __repr__(self):
        return f"CycloElem(n={self.n}, coeffs={self.coeffs.tolist()})"

    def complex(self):
        j = np.arange(self.n)
        return complex(np.sum(self.coeffs * np.exp(2j * np.pi * j / self.n)))


def _lift(x: CycloElem, m: int) -> CycloElem:
    """Rewrite x in Z[y]/(y^m - 1) via zeta_n = zeta_m^(m/n). Requires n | m."""
    if x.n == m:
        return x
    if m % x.n:
        raise ValueError("target order must be a multiple")
    k = m // x.n
    v = np.zeros(m, dtype=np.int64)
    v[np.arange(x.n) * k] = x.coeffs
    return CycloElem(m, v)


def cyclo_add(x: CycloElem, y: CycloElem) -> CycloElem:
    m = lcm(x.n, y.n)
    return CycloElem(m, _lift(x, m).coeffs + _lift(y, m).coeffs)


def cyclo_neg(x: CycloElem) -> CycloElem:
    return CycloElem(x.n, -x.coeffs)


def cyclo_sub(x: CycloElem, y: CycloElem) -> CycloElem:
    return cyclo_add(x, cyclo_neg(y))


def cyclo_mul(x: CycloElem, y: CycloElem) -> CycloElem:
    m = lcm(x.n, y.n)
    a = _lift(x, m).coeffs
    b = _lift(y, m).coeffs
    full = np.convolve(a, b)
    out = full[:m].copy()
    out[: len(full) - m] += full[m:]
    return CycloElem(m, out)


def cyclo_conj(x: CycloElem) -> CycloElem:
    """Complex conjugation, zeta^j -> zeta^-j."""
    idx = (-np.arange(x.n)) % x.n
    out = np.zeros(x.n, dtype=np.int64)
    np.add.at(out, idx, x.coeffs)
    return CycloElem(x.n, out)


def _polydiv_exact(num, den):
    """Exact division of integer polynomials, highest coefficient last. Raises if inexact."""
    num = list(num)
    dden = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quot = [0] * (len(num) - dden)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + dden]
        quot[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num):
        raise ValueError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Coefficients of Phi_n, constant term first, computed by exact division."""
    if n == 1:
        return (-1, 1)
    poly = [0] * (n + 1)
    poly[0], poly[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            poly = _polydiv_exact(poly, cyclotomic_poly(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def reduction_matrix(n: int) -> np.ndarray:
    """Matrix [n, phi(n)] sending exponent j to the vector of x^j mod Phi_n."""
    phi = cyclotomic_poly(n)
    d = len(phi) - 1
    out = np.zeros((n, d), dtype=np.int64)
    # x^j mod Phi_n by the linear recurrence x^d = -(phi_0 + ... + phi_{d-1} x^{d-1})
    row = np.zeros(d, dtype=np.int64)
    row[0] = 1
    for j in range(n):
        out[j] = row
        top = row[d - 1]
        row = np.roll(row, 1)
        row[0] = 0
        if top:
            row = row - top * np.asarray(phi[:d], dtype=np.int64)
    return out


def canonical(x: CycloElem) -> np.ndarray:
    """Canonical coefficient vector of x in the power basis of Z[zeta_n]."""
    return x.coeffs @ reduction_matrix(x.n)


def to_integer(x: CycloElem) -> int:
    """The value of x as a rational integer; NotRational if it is not one."""
    v = canonical(x)
    if np.any(v[1:]):
        raise NotRational(f"not a rational integer: canonical form {v.tolist()}")
    return int(v[0])


def float_check(x: CycloElem, tol: float = 1e-6) -> bool:
    """Consistency of the redundant vector against its canonical reduction, numerically."""
    z = np.exp(2j * np.pi / x.n)
    direct = np.sum(x.coeffs * z ** np.arange(x.n))
    v = canonical(x)
    reduced = np.sum(v * z ** np.arange(len(v)))
    return bool(abs(direct - reduced) < tol)


@lru_cache(maxsize=None)
def conj_matrix(n: int) -> np.ndarray:
    """Matrix [phi(n), phi(n)] of complex conjugation in the power basis."""
    red = reduction_matrix(n)
    d = red.shape[1]
    out = np.zeros((d, d), dtype=np.int64)
    for i in range(d):
        out[i] = red[(-i) % n]
    return out


@lru_cache(maxsize=None)
def product_tensor(n: int) -> np.ndarray:
    """Tensor S[a, b, :] = power-basis vector of zeta^a * zeta^b."""
    red = reduction_matrix(n)
    d = red.shape[1]
    out = np.zeros((d, d, d), dtype=np.int64)
    for a in range(d):
        for b in range(d):
            out[a, b] = red[(a + b) % n]
    return out


@lru_cache(maxsize=None)
def embed_matrix(n_from: int, n_to: int) -> np.ndarray:
    """Matrix [phi(n_from), phi(n_to)] realizing Z[zeta_{n_from}] inside Z[zeta_{n_to}]."""
    if n_to % n_from:
        raise ValueError("embedding requires n_from | n_to")
    k = n_to // n_from
    red = reduction_matrix(n_to)
    d_from = reduction_matrix(n_from).shape[1]
    return red[(np.arange(d_from) * k) % n_to].copy()


def from_canonical(n: int, vec) -> CycloElem:
    """CycloElem from a power-basis vector (padded into the redundant model)."""
    vec = np.asarray(vec, dtype=np.int64)
    out = np.zeros(n, dtype=np.int64)
    out[: len(vec)] = vec
    return CycloElem(n, out)
