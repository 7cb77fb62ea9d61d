"""Quaternion scalar/vector/matrix arithmetic on plain numpy arrays.

A quaternion is a float64 array whose trailing axis has length 4, holding the
real part followed by the i, j, k imaginary coefficients.  A quaternion vector
is an (n, 4) array, a matrix an (m, n, 4) array.  Every operation here is a
pure function and broadcasts over leading axes, so the same routines serve
scalars, vectors and matrices.

Reduction order in the Hermitian products is fixed left-to-right so repeated
runs are bit-identical.
"""
from __future__ import annotations

import numpy as np

__all__ = [
    "quat",
    "as_quat",
    "as_qvector",
    "as_qmatrix",
    "hamilton_mul",
    "involution",
    "conjugate",
    "norm_sq",
    "split_product",
    "hermitian_dot",
    "hermitian_matvec",
]

_CONJ_SIGNS = np.array([1.0, -1.0, -1.0, -1.0])

# each involution -mu q mu keeps the real part and the mu coefficient,
# flipping the other two imaginary coefficients
_INVOLUTION_SIGNS = {
    "i": np.array([1.0, 1.0, -1.0, -1.0]),
    "j": np.array([1.0, -1.0, 1.0, -1.0]),
    "k": np.array([1.0, -1.0, -1.0, 1.0]),
}


def quat(a=0.0, b=0.0, c=0.0, d=0.0) -> np.ndarray:
    """Build the quaternion a + b*i + c*j + d*k as a (4,) array."""
    return np.array([a, b, c, d], dtype=np.float64)


def _coerce(values, ndim: int, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != ndim or arr.shape[-1] != 4:
        raise ValueError(
            f"{name} must be a {ndim}-d array with trailing axis 4, got shape {arr.shape}"
        )
    return arr


def as_quat(values, name: str = "quaternion") -> np.ndarray:
    """Coerce to a single quaternion of shape (4,)."""
    return _coerce(values, 1, name)


def as_qvector(values, name: str = "quaternion vector") -> np.ndarray:
    """Coerce to a quaternion vector of shape (n, 4)."""
    return _coerce(values, 2, name)


def as_qmatrix(values, name: str = "quaternion matrix") -> np.ndarray:
    """Coerce to a quaternion matrix of shape (m, n, 4)."""
    return _coerce(values, 3, name)


def hamilton_mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Non-commutative quaternion product, broadcasting over leading axes."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    xa, xb, xc, xd = x[..., 0], x[..., 1], x[..., 2], x[..., 3]
    ya, yb, yc, yd = y[..., 0], y[..., 1], y[..., 2], y[..., 3]
    return np.stack(
        [
            xa * ya - xb * yb - xc * yc - xd * yd,
            xa * yb + xb * ya + xc * yd - xd * yc,
            xa * yc - xb * yd + xc * ya + xd * yb,
            xa * yd + xb * yc - xc * yb + xd * ya,
        ],
        axis=-1,
    )


def involution(q: np.ndarray, axis: str) -> np.ndarray:
    """Reflection -mu q mu about one imaginary axis, axis in {'i', 'j', 'k'}."""
    try:
        signs = _INVOLUTION_SIGNS[axis]
    except KeyError:
        raise ValueError(f"axis must be one of 'i', 'j', 'k', got {axis!r}") from None
    return np.asarray(q, dtype=np.float64) * signs


def conjugate(q: np.ndarray) -> np.ndarray:
    """Quaternion conjugate: negate the three imaginary coefficients."""
    return np.asarray(q, dtype=np.float64) * _CONJ_SIGNS


def norm_sq(q: np.ndarray) -> float | np.ndarray:
    """Squared norm, the sum of the four squared components.

    Returns a float for a single quaternion and an array when broadcasting.
    """
    q = np.asarray(q, dtype=np.float64)
    out = np.sum(q * q, axis=-1)
    return float(out) if out.ndim == 0 else out


def split_product(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Commutative componentwise product on the quaternion basis.

    Unlike the Hamilton product this multiplies matching components only, so
    it broadcasts like an ordinary elementwise product (a vector against a
    scalar quaternion applies the scalar to every element).
    """
    return np.asarray(x, dtype=np.float64) * np.asarray(y, dtype=np.float64)


def hermitian_dot(w: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Inner product conj(w_k) * u_k summed over a pair of equal-length vectors."""
    w = as_qvector(w, "w")
    u = as_qvector(u, "u")
    if w.shape[0] != u.shape[0]:
        raise ValueError(f"length mismatch: w has {w.shape[0]} elements, u has {u.shape[0]}")
    products = hamilton_mul(conjugate(w), u)
    total = products[0].copy()
    for k in range(1, products.shape[0]):
        total += products[k]
    return total


def hermitian_matvec(W: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Apply the conjugate transpose of an (m, n, 4) matrix to an (m, 4) vector.

    Output element i is the Hermitian inner product of column i of W with x.
    """
    W = as_qmatrix(W, "W")
    x = as_qvector(x, "x")
    if W.shape[0] != x.shape[0]:
        raise ValueError(f"dimension mismatch: W has {W.shape[0]} rows, x has {x.shape[0]} elements")
    out = np.zeros((W.shape[1], 4))
    for k in range(W.shape[0]):
        out += hamilton_mul(conjugate(W[k]), x[k])
    return out
