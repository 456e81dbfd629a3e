"""Filter kernels, edge handling, and convolution.

Exact kernels carry integer weights plus a divisor so that pipelines can
defer the normalizing division; convolution therefore returns a
:class:`FilterResult` pair (numerator matrix, divisor).  Division happens
once, at the caller's chosen boundary, which keeps integer pipelines
bit-exact.

Convolution uses flipped kernel indexing (output (p, q) sums
weight(i, j) * input(p - i, q - j) over window offsets), which matters
only for asymmetric kernels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .matrix import DimensionError, Matrix, ScalarMode
from .structured import binomial, coefficient_matrix

FLOAT_KERNEL_TOL = 1e-12


class EdgeMode(Enum):
    """Boundary policy: shrink the output, or extend the input."""

    CROP = "crop"
    REPLICATE = "replicate"
    MIRROR = "mirror"
    ZERO = "zero"


@dataclass(frozen=True)
class FilterResult:
    """Filter output as a (numerator, divisor) pair.

    Float pipelines always carry divisor 1.  Exact pipelines keep the
    kernel divisor so equality checks can run on integers.
    """

    numerator: Matrix
    divisor: int

    def __post_init__(self):
        if self.divisor < 1:
            raise ValueError("divisor must be a positive integer")

    def to_matrix(self) -> Matrix:
        """Divide out the divisor; exact results stay exact when the
        divisor is 1, otherwise the quotient is a float matrix."""
        if self.divisor == 1:
            return self.numerator
        num = self.numerator
        data = tuple(x / self.divisor for x in num.data)
        return Matrix(num.rows, num.cols, data, ScalarMode.FLOAT)

    def exact(self) -> Matrix:
        """Exact integer quotient; raises if any entry has a remainder."""
        num = self.numerator
        if num.mode is not ScalarMode.EXACT:
            raise ValueError("exact() requires an exact-mode numerator")
        out = []
        for x in num.data:
            q, r = divmod(x, self.divisor)
            if r:
                raise ValueError(
                    f"entry {x} is not divisible by {self.divisor}"
                )
            out.append(q)
        return Matrix(num.rows, num.cols, tuple(out), ScalarMode.EXACT)

    def rounded(self) -> Matrix:
        """Integer quotient rounded half away from zero.

        Exact numerators round via integer arithmetic, so the result is
        reproducible bit-for-bit.
        """
        num = self.numerator
        out = []
        if num.mode is ScalarMode.EXACT:
            d = self.divisor
            for x in num.data:
                q = (2 * abs(x) + d) // (2 * d)
                out.append(q if x >= 0 else -q)
        else:
            for x in num.data:
                v = x / self.divisor
                out.append(
                    math.floor(v + 0.5) if v >= 0 else math.ceil(v - 0.5)
                )
        return Matrix(num.rows, num.cols, tuple(out), ScalarMode.EXACT)


@dataclass(frozen=True)
class Kernel:
    """Filter weight window.

    ``weights`` is either an exact integer matrix paired with a positive
    ``divisor`` (weights sum exactly to the divisor), or a float matrix
    with divisor 1 whose entries sum to 1 within 1e-12.  ``anchor`` is
    the 1-based position aligned over the output pixel; ``radius`` is set
    for square odd kernels, where the anchor is the center.
    """

    weights: Matrix
    divisor: int
    anchor: tuple[int, int]
    radius: int | None = None

    def __post_init__(self):
        if self.divisor < 1:
            raise ValueError("divisor must be a positive integer")
        total = (
            math.fsum(self.weights.data)
            if self.weights.mode is ScalarMode.FLOAT
            else sum(self.weights.data)
        )
        if self.weights.mode is ScalarMode.EXACT:
            if total != self.divisor:
                raise ValueError(
                    f"weights sum to {total}, divisor is {self.divisor}"
                )
        else:
            if self.divisor != 1:
                raise ValueError("float kernels must carry divisor 1")
            if abs(total - 1.0) > FLOAT_KERNEL_TOL:
                raise ValueError(f"float weights sum to {total}, expected 1")
        ar, ac = self.anchor
        if not (1 <= ar <= self.weights.rows and 1 <= ac <= self.weights.cols):
            raise ValueError(f"anchor {self.anchor} outside the weight window")
        if self.radius is not None:
            r = self.radius
            if (
                self.weights.rows != 2 * r + 1
                or self.weights.cols != 2 * r + 1
                or self.anchor != (r + 1, r + 1)
            ):
                raise ValueError("radius kernels must be square odd, centered")

    @property
    def height(self) -> int:
        return self.weights.rows

    @property
    def width(self) -> int:
        return self.weights.cols

    def margins(self) -> tuple[int, int, int, int]:
        """(top, bottom, left, right) reach of the window around the anchor."""
        ar, ac = self.anchor
        return ar - 1, self.height - ar, ac - 1, self.width - ac

    def as_float(self) -> "Kernel":
        if self.weights.mode is ScalarMode.FLOAT:
            return self
        w = self.weights
        data = tuple(x / self.divisor for x in w.data)
        return Kernel(
            Matrix(w.rows, w.cols, data, ScalarMode.FLOAT),
            1,
            self.anchor,
            self.radius,
        )


def _center(n: int) -> int:
    # 1-based anchor row/col for an n-wide window: ceil(n / 2).
    return (n + 1) // 2


def box_kernel(r: int) -> Kernel:
    """Uniform (2r+1)-square window, divisor (2r+1)^2."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    size = 2 * r + 1
    return Kernel(
        Matrix.filled(size, size, 1), size * size, (r + 1, r + 1), radius=r
    )


def gaussian_kernel(r: int) -> Kernel:
    """Binomial approximation to the Gaussian, radius r.

    Weight (i, j), indexed from the center, is
    binomial(2r, i+r) * binomial(2r, j+r); the divisor is 4^(2r).
    """
    if r < 0:
        raise ValueError("radius must be nonnegative")
    size = 2 * r + 1
    row = [binomial(2 * r, t) for t in range(size)]
    data = tuple(ri * rj for ri in row for rj in row)
    return Kernel(Matrix(size, size, data), 4 ** (2 * r), (r + 1, r + 1), radius=r)


def gaussian_kernel_rect(a: int, b: int) -> Kernel:
    """Rectangular a x b binomial kernel, divisor 2^(a+b-2).

    Weight (i, j), indexed from the top-left corner, is
    binomial(a-1, i-1) * binomial(b-1, j-1).  Even sides have no central
    entry, so the anchor sits at (ceil(a/2), ceil(b/2)).
    """
    if a < 1 or b < 1:
        raise ValueError("kernel sides must be positive")
    col = [binomial(a - 1, i) for i in range(a)]
    row = [binomial(b - 1, j) for j in range(b)]
    data = tuple(ci * rj for ci in col for rj in row)
    radius = (a - 1) // 2 if a == b and a % 2 == 1 else None
    return Kernel(
        Matrix(a, b, data), 2 ** (a + b - 2), (_center(a), _center(b)), radius
    )


def gaussian_kernel_sampled(r: int, s: float) -> Kernel:
    """(2r+1)-square kernel sampled from the 2-D Gaussian density with
    standard deviation ``s``, renormalized to unit sum."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if s <= 0:
        raise ValueError("standard deviation must be positive")
    size = 2 * r + 1
    raw = [
        math.exp(-(x * x + y * y) / (2.0 * s * s))
        for x in range(-r, r + 1)
        for y in range(-r, r + 1)
    ]
    total = math.fsum(raw)
    data = tuple(v / total for v in raw)
    return Kernel(
        Matrix(size, size, data, ScalarMode.FLOAT), 1, (r + 1, r + 1), radius=r
    )


def interpolation_kernel(r: int, s: int) -> Kernel:
    """Blend between the box and binomial-Gaussian windows.

    The weights are the coefficient matrix of a (2r+1)-square with
    a = b = s, divisor 2^(2s) (2r+1-s)^2; s = 0 is the box kernel and
    s = 2r the Gaussian one.
    """
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if not 0 <= s <= 2 * r:
        raise ValueError(f"interpolation step must satisfy 0 <= s <= 2r, got {s}")
    size = 2 * r + 1
    weights = coefficient_matrix(size, size, s, s)
    divisor = 2 ** (2 * s) * (size - s) ** 2
    return Kernel(weights, divisor, (r + 1, r + 1), radius=r)


def _reflect(i: int, n: int) -> int:
    # Mirror about the edge entry without repeating it ("abcb" style).
    if i < 1:
        return 2 - i
    if i > n:
        return 2 * n - i
    return i


def extend_asym(
    a: Matrix, top: int, bottom: int, left: int, right: int, mode: EdgeMode
) -> Matrix:
    """Extend with per-side margins; used for anchored rectangular windows."""
    if mode is EdgeMode.CROP:
        raise ValueError("cropping does not extend; pass an extension mode")
    if min(top, bottom, left, right) < 0:
        raise ValueError("margins must be nonnegative")
    m, n, d = a.rows, a.cols, a.data
    if mode is EdgeMode.MIRROR and (
        max(top, bottom) >= m or max(left, right) >= n
    ):
        raise DimensionError(
            f"mirror margins {top}/{bottom}/{left}/{right} too large for "
            f"{m}x{n} matrix"
        )
    if top == bottom == left == right == 0:
        return a
    zero = 0.0 if a.mode is ScalarMode.FLOAT else 0
    out = []
    for i in range(1 - top, m + bottom + 1):
        for j in range(1 - left, n + right + 1):
            if 1 <= i <= m and 1 <= j <= n:
                out.append(d[(i - 1) * n + (j - 1)])
            elif mode is EdgeMode.ZERO:
                out.append(zero)
            elif mode is EdgeMode.REPLICATE:
                si = min(max(i, 1), m)
                sj = min(max(j, 1), n)
                out.append(d[(si - 1) * n + (sj - 1)])
            else:
                si = _reflect(i, m)
                sj = _reflect(j, n)
                out.append(d[(si - 1) * n + (sj - 1)])
    return Matrix(m + top + bottom, n + left + right, tuple(out), a.mode)


def extend(a: Matrix, r: int, mode: EdgeMode) -> Matrix:
    """Extend by r rows and columns on every side; the central block is
    the input."""
    if r < 0:
        raise ValueError("extension radius must be nonnegative")
    return extend_asym(a, r, r, r, r, mode)


def convolve_crop(kernel: Kernel, a: Matrix) -> FilterResult:
    """Convolve and keep only fully covered output positions.

    The output is (m - kh + 1) x (n - kw + 1), indexed from the first
    position where the whole window fits.
    """
    if kernel.weights.mode is ScalarMode.FLOAT or a.mode is ScalarMode.FLOAT:
        kernel = kernel.as_float()
        a = a.to_float()
    kh, kw = kernel.height, kernel.width
    m, n = a.rows, a.cols
    if m < kh or n < kw:
        raise DimensionError(
            f"{kh}x{kw} kernel does not fit a {m}x{n} matrix"
        )
    # Flipping the window once turns the convolution into a plain
    # correlation scan.
    w = kernel.weights.data
    wf = tuple(reversed(w))
    d = a.data
    out_m, out_n = m - kh + 1, n - kw + 1
    zero = 0.0 if a.mode is ScalarMode.FLOAT else 0
    out = []
    for p in range(out_m):
        row0 = p * n
        for q in range(out_n):
            acc = zero
            k = 0
            for u in range(kh):
                base = row0 + u * n + q
                for v in range(kw):
                    acc += wf[k] * d[base + v]
                    k += 1
            out.append(acc)
    return FilterResult(
        Matrix(out_m, out_n, tuple(out), a.mode), kernel.divisor
    )


def convolve(kernel: Kernel, a: Matrix, mode: EdgeMode) -> FilterResult:
    """Convolve under an edge policy.

    Cropping shrinks the output; extension modes pad the input by the
    window margins first and return an output the size of the input,
    aligned through the kernel anchor.
    """
    if mode is EdgeMode.CROP:
        return convolve_crop(kernel, a)
    top, bottom, left, right = kernel.margins()
    return convolve_crop(kernel, extend_asym(a, top, bottom, left, right, mode))


def _binomial_line_kernel(r: int, horizontal: bool) -> Kernel:
    coeffs = [binomial(2 * r, t) for t in range(2 * r + 1)]
    if horizontal:
        w = Matrix(1, 2 * r + 1, tuple(coeffs))
        anchor = (1, r + 1)
    else:
        w = Matrix(2 * r + 1, 1, tuple(coeffs))
        anchor = (r + 1, 1)
    return Kernel(w, 4**r, anchor)


def separable_convolve(r: int, a: Matrix, mode: EdgeMode) -> FilterResult:
    """Binomial Gaussian blur as a horizontal then a vertical 1-D pass.

    Extension happens once, on the full window margin, so the result
    matches the direct 2-D convolution entry for entry.
    """
    if r < 0:
        raise ValueError("radius must be nonnegative")
    row_k = _binomial_line_kernel(r, horizontal=True)
    col_k = _binomial_line_kernel(r, horizontal=False)
    if a.mode is ScalarMode.FLOAT:
        row_k, col_k = row_k.as_float(), col_k.as_float()
    work = a if mode is EdgeMode.CROP else extend(a, r, mode)
    first = convolve_crop(row_k, work)
    second = convolve_crop(col_k, first.numerator)
    return FilterResult(second.numerator, first.divisor * second.divisor)
