"""Blur execution strategies, their equivalence check, and a benchmark.

The same binomial Gaussian blur runs three ways: direct 2-D convolution,
two separable 1-D passes, or repeated pair-sum collapses of the
edge-extended image divided by 4^(2r) at the end.  In exact mode the
three must agree bit for bit on their (numerator, divisor) pairs; the
report and benchmark objects record whether they do.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass
from enum import Enum

from .collapse import collapse_down_power, collapse_power, collapse_right_power
from .kernels import (
    EdgeMode,
    FilterResult,
    convolve,
    extend,
    extend_asym,
    gaussian_kernel,
    gaussian_kernel_rect,
    separable_convolve,
)
from .matrix import DimensionError, Matrix, ScalarMode, scale

FLOAT_TOLERANCE = 1e-9


class Method(Enum):
    DIRECT = "direct"
    SEPARABLE = "separable"
    COLLAPSE = "collapse"


@dataclass(frozen=True)
class BlurRequest:
    """Parameters of one blur run.

    Exactly one of ``radius`` (square window) or ``rect`` (a x b window)
    must be set.  ``mode`` selects exact-integer or float arithmetic.
    """

    radius: int | None = None
    rect: tuple[int, int] | None = None
    method: Method = Method.COLLAPSE
    edge: EdgeMode = EdgeMode.REPLICATE
    mode: ScalarMode = ScalarMode.EXACT

    def __post_init__(self):
        if (self.radius is None) == (self.rect is None):
            raise ValueError("set exactly one of radius and rect")
        if self.radius is not None and self.radius < 0:
            raise ValueError("radius must be nonnegative")
        if self.rect is not None and (self.rect[0] < 1 or self.rect[1] < 1):
            raise ValueError("rectangle sides must be positive")


def _coerce_mode(a: Matrix, mode: ScalarMode) -> Matrix:
    if a.mode is mode:
        return a
    if mode is ScalarMode.FLOAT:
        return a.to_float()
    raise ValueError("cannot run an exact pipeline on a float matrix")


def _collapse_blur(a: Matrix, r: int, edge: EdgeMode) -> FilterResult:
    work = a if edge is EdgeMode.CROP else extend(a, r, edge)
    if min(work.rows, work.cols) <= 2 * r:
        raise DimensionError(
            f"image too small to collapse {2 * r} times under cropping"
        )
    num = collapse_power(work, 2 * r)
    if a.mode is ScalarMode.FLOAT:
        return FilterResult(scale(4.0 ** (-2 * r), num), 1)
    return FilterResult(num, 4 ** (2 * r))


def _rect_collapse_blur(a: Matrix, ab: tuple[int, int], edge: EdgeMode) -> FilterResult:
    h, w = ab
    kernel = gaussian_kernel_rect(h, w)
    if edge is EdgeMode.CROP:
        work = a
    else:
        top, bottom, left, right = kernel.margins()
        work = extend_asym(a, top, bottom, left, right, edge)
    if work.rows < h or work.cols < w:
        raise DimensionError(
            f"image too small for a {h}x{w} window under cropping"
        )
    num = collapse_right_power(collapse_down_power(work, h - 1), w - 1)
    if a.mode is ScalarMode.FLOAT:
        return FilterResult(scale(2.0 ** (-(h + w - 2)), num), 1)
    return FilterResult(num, 2 ** (h + w - 2))


def _rect_separable(a: Matrix, ab: tuple[int, int], edge: EdgeMode) -> FilterResult:
    h, w = ab
    row_k = gaussian_kernel_rect(1, w)
    col_k = gaussian_kernel_rect(h, 1)
    if edge is EdgeMode.CROP:
        work = a
    else:
        top, bottom, left, right = gaussian_kernel_rect(h, w).margins()
        work = extend_asym(a, top, bottom, left, right, edge)
    if a.mode is ScalarMode.FLOAT:
        row_k, col_k = row_k.as_float(), col_k.as_float()
    first = convolve(row_k, work, EdgeMode.CROP)
    second = convolve(col_k, first.numerator, EdgeMode.CROP)
    return FilterResult(second.numerator, first.divisor * second.divisor)


def blur(a: Matrix, req: BlurRequest) -> FilterResult:
    """Run one blur request; see :class:`BlurRequest`."""
    a = _coerce_mode(a, req.mode)
    if req.radius is not None:
        r = req.radius
        if req.method is Method.DIRECT:
            return convolve(gaussian_kernel(r), a, req.edge)
        if req.method is Method.SEPARABLE:
            return separable_convolve(r, a, req.edge)
        return _collapse_blur(a, r, req.edge)
    if req.method is Method.DIRECT:
        return convolve(gaussian_kernel_rect(*req.rect), a, req.edge)
    if req.method is Method.SEPARABLE:
        return _rect_separable(a, req.rect, req.edge)
    return _rect_collapse_blur(a, req.rect, req.edge)


def rect_blur(a: Matrix, h: int, w: int, edge: EdgeMode) -> FilterResult:
    """Rectangular h x w blur via directional collapses."""
    return blur(a, BlurRequest(rect=(h, w), method=Method.COLLAPSE,
                               edge=edge, mode=a.mode))


def deviation(x: FilterResult, y: FilterResult) -> float:
    """Max entrywise difference between two filter results as values.

    Exact pairs compare by cross-multiplication, so 0.0 means identical
    rational values, not merely close floats.
    """
    nx, ny = x.numerator, y.numerator
    if nx.rows != ny.rows or nx.cols != ny.cols:
        raise DimensionError("results have different shapes")
    if nx.mode is ScalarMode.EXACT and ny.mode is ScalarMode.EXACT:
        if all(
            p * y.divisor == q * x.divisor for p, q in zip(nx.data, ny.data)
        ):
            return 0.0
    return max(
        abs(p / x.divisor - q / y.divisor) for p, q in zip(nx.data, ny.data)
    )


@dataclass(frozen=True)
class EquivalenceReport:
    radius: int
    edge: EdgeMode
    mode: ScalarMode
    deviations: dict[tuple[str, str], float]
    max_deviation: float
    tolerance: float
    passed: bool


def equivalence_report(a: Matrix, r: int, edge: EdgeMode) -> EquivalenceReport:
    """Run all three strategies and compare them pairwise.

    The tolerance is 0 for exact-mode images and 1e-9 for float ones;
    failures are recorded in the report, not raised.
    """
    results = {
        method.value: blur(a, BlurRequest(radius=r, method=method,
                                          edge=edge, mode=a.mode))
        for method in Method
    }
    names = [m.value for m in Method]
    devs = {}
    for i, first in enumerate(names):
        for second in names[i + 1 :]:
            devs[(first, second)] = deviation(results[first], results[second])
    worst = max(devs.values())
    tol = 0.0 if a.mode is ScalarMode.EXACT else FLOAT_TOLERANCE
    return EquivalenceReport(
        radius=r,
        edge=edge,
        mode=a.mode,
        deviations=devs,
        max_deviation=worst,
        tolerance=tol,
        passed=worst <= tol,
    )


# Deterministic benchmark images come from a 64-bit linear congruential
# generator (Knuth's MMIX multiplier/increment); the top byte of each
# state supplies one pixel in 0..255.
LCG_SEED = 0x5EED
_LCG_MULT = 6364136223846793005
_LCG_INC = 1442695040888963407
_LCG_MASK = (1 << 64) - 1


def seeded_image(rows: int, cols: int, seed: int = LCG_SEED) -> Matrix:
    state = seed & _LCG_MASK
    data = []
    for _ in range(rows * cols):
        state = (state * _LCG_MULT + _LCG_INC) & _LCG_MASK
        data.append(state >> 56)
    return Matrix(rows, cols, tuple(data), ScalarMode.EXACT)


def entry_ops(method: Method, rows: int, cols: int, r: int, edge: EdgeMode) -> int:
    """Accumulation count of one strategy, mirroring its loop structure.

    Direct counts one multiply-accumulate per window tap; separable the
    same across both 1-D passes; collapse one addition per produced
    entry of every directional pass.
    """
    if edge is EdgeMode.CROP:
        me, ne = rows, cols
    else:
        me, ne = rows + 2 * r, cols + 2 * r
    out_m, out_n = me - 2 * r, ne - 2 * r
    k = 2 * r + 1
    if method is Method.DIRECT:
        return out_m * out_n * k * k
    if method is Method.SEPARABLE:
        return me * out_n * k + out_m * out_n * k
    total = 0
    m, n = me, ne
    for _ in range(2 * r):
        total += (m - 1) * n + (m - 1) * (n - 1)
        m, n = m - 1, n - 1
    return total


@dataclass(frozen=True)
class BenchRow:
    size: int
    radius: int
    method: str
    median_ns: int
    entry_ops: int
    max_deviation: float


CSV_HEADER = "size,radius,method,median_ns,entry_ops,max_deviation"

TIMING_CONTRACT = (
    "timed sections run sequentially on a single thread; "
    "wall times are medians over the requested repetitions"
)


@dataclass(frozen=True)
class BenchReport:
    rows: tuple[BenchRow, ...]
    timing_contract: str = TIMING_CONTRACT

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for row in self.rows:
            lines.append(
                f"{row.size},{row.radius},{row.method},{row.median_ns},"
                f"{row.entry_ops},{row.max_deviation:.2e}"
            )
        return "\n".join(lines) + "\n"


def benchmark(
    sizes: list[int],
    radii: list[int],
    repetitions: int,
    edge: EdgeMode = EdgeMode.REPLICATE,
    mode: ScalarMode = ScalarMode.EXACT,
) -> BenchReport:
    """Time every (size, radius, method) cell on a seeded image.

    Each cell reports the median wall time, its accumulation count, and
    the deviation of its result from the direct strategy's.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be at least 1")
    rows = []
    for size in sizes:
        image = _coerce_mode(seeded_image(size, size), mode)
        for r in radii:
            reference = None
            for method in Method:
                req = BlurRequest(radius=r, method=method, edge=edge, mode=mode)
                times = []
                result = None
                for _ in range(repetitions):
                    start = time.perf_counter_ns()
                    result = blur(image, req)
                    times.append(time.perf_counter_ns() - start)
                if method is Method.DIRECT:
                    reference = result
                rows.append(
                    BenchRow(
                        size=size,
                        radius=r,
                        method=method.value,
                        median_ns=int(statistics.median(times)),
                        entry_ops=entry_ops(method, size, size, r, edge),
                        max_deviation=deviation(result, reference),
                    )
                )
    return BenchReport(tuple(rows))
