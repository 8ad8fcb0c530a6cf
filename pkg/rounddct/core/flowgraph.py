"""
flowgraph: multiplication-free butterfly networks and operation counting
Corey Rayburn Yung <coreyrayburnyung@gmail.com>
Copyright 2020-2021, Corey Rayburn Yung
License: Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0)

Flow graphs are written once, as plain Python over eight operands, and then run
with different operand types:
    numpy scalars or rows: ordinary evaluation. Passing an (8, N) array runs
        the graph on N column vectors at once.
    Counted: every two-operand addition or subtraction increments a shared
        Tally, so arithmetic cost is measured rather than estimated.

Every graph starts with the same butterfly a_i = x_i + x_(7-i) and
b_i = x_i - x_(7-i). Even-indexed outputs depend only on 'a' and odd-indexed
outputs only on 'b', which holds for any kernel whose rows are alternately
symmetric and antisymmetric.

Contents:
    Tally (dataclass): running operation counts.
    Counted (dataclass): operand wrapper that reports arithmetic to a Tally.
    FlowGraph (dataclass): a named forward/inverse graph pair and the kernel
        it computes.
    GRAPHS (dict[str, FlowGraph]): built-in graphs keyed by name.
    fast_forward (Callable): C0 @ x with 22 additions.
    fast_inverse (Callable): C0.T @ X with 22 additions.
    dense_forward (Callable): sign-aware direct product for any {-1, 0, 1}
        kernel.
    kernel_forward (Callable): runs a TransformSpec's kernel, preferring its
        flow graph.
    audit_cost (Callable): instrumented ArithmeticCost of a TransformSpec.

"""
from __future__ import annotations
from collections.abc import Callable, Sequence
import dataclasses
import logging
import math
from typing import Any, Union

import numpy as np

import rounddct
from rounddct.core.base import BLOCK, DimensionError, KernelError, NonFiniteError


LOGGER = logging.getLogger(__name__)

Graph = Callable[[Sequence[Any]], list[Any]]

""" Instrumentation """

@dataclasses.dataclass
class Tally(object):
    """Running count of arithmetic operations."""
    additions: int = 0
    multiplications: int = 0
    bit_shifts: int = 0

    """ Public Methods """

    def cost(self) -> rounddct.transforms.ArithmeticCost:
        """Returns the counts as an ArithmeticCost."""
        return rounddct.transforms.ArithmeticCost(
            additions = self.additions,
            multiplications = self.multiplications,
            bit_shifts = self.bit_shifts)


@dataclasses.dataclass
class Counted(object):
    """Real operand that records the arithmetic performed on it.

    Negation is free because it always folds into an adjacent addition or
    subtraction. Multiplication by 0 or +/-1 is free, by another power of two
    is a bit-shift, and by anything else is a multiplication.

    Args:
        value (float): current numeric value.
        tally (Tally): shared counter updated by every operation.

    """
    value: float
    tally: Tally

    """ Dunder Methods """

    def __add__(self, other: Union[Counted, float]) -> Counted:
        self.tally.additions += 1
        return Counted(self.value + _unwrap(other), self.tally)

    def __radd__(self, other: float) -> Counted:
        return self.__add__(other)

    def __sub__(self, other: Union[Counted, float]) -> Counted:
        self.tally.additions += 1
        return Counted(self.value - _unwrap(other), self.tally)

    def __rsub__(self, other: float) -> Counted:
        self.tally.additions += 1
        return Counted(_unwrap(other) - self.value, self.tally)

    def __neg__(self) -> Counted:
        return Counted(-self.value, self.tally)

    def __mul__(self, factor: float) -> Counted:
        magnitude = abs(factor)
        if magnitude not in (0.0, 1.0):
            exponent = math.log2(magnitude)
            if exponent == round(exponent):
                self.tally.bit_shifts += 1
            else:
                self.tally.multiplications += 1
        return Counted(self.value * factor, self.tally)

    def __rmul__(self, factor: float) -> Counted:
        return self.__mul__(factor)


def _unwrap(item: Union[Counted, float]) -> float:
    return item.value if isinstance(item, Counted) else item

def _butterfly(x: Sequence[Any]) -> tuple[list[Any], list[Any]]:
    """Returns the symmetric sums 'a' and antisymmetric differences 'b'."""
    a = [x[i] + x[BLOCK - 1 - i] for i in range(BLOCK // 2)]
    b = [x[i] - x[BLOCK - 1 - i] for i in range(BLOCK // 2)]
    return a, b

def _unfold(alpha: Sequence[Any], beta: Sequence[Any]) -> list[Any]:
    """Inverse of the butterfly: y_i = alpha_i + beta_i, y_(7-i) = alpha_i -
    beta_i."""
    head = [alpha[i] + beta[i] for i in range(BLOCK // 2)]
    tail = [alpha[i] - beta[i] for i in reversed(range(BLOCK // 2))]
    return head + tail

""" Round-Off Graph """

def round_off_forward(x: Sequence[Any]) -> list[Any]:
    """Computes C0 @ x: 8 butterfly, 6 even, and 8 odd additions."""
    a, b = _butterfly(x)
    c0 = a[0] + a[3]
    c1 = a[1] + a[2]
    even = [c0 + c1, a[0] - a[3], c0 - c1, a[2] - a[1]]
    odd = [
        (b[0] + b[1]) + b[2],
        (b[0] - b[2]) - b[3],
        (b[0] - b[1]) + b[3],
        (b[2] - b[1]) - b[3]]
    return [even[0], odd[0], even[1], odd[1], even[2], odd[2], even[3], odd[3]]

def round_off_inverse(X: Sequence[Any]) -> list[Any]:
    """Computes C0.T @ X, the transposed network."""
    e = X[0] + X[4]
    f = X[0] - X[4]
    alpha = [e + X[2], f - X[6], f + X[6], e - X[2]]
    beta = [
        (X[1] + X[3]) + X[5],
        (X[1] - X[5]) - X[7],
        (X[1] - X[3]) + X[7],
        (X[5] - X[3]) - X[7]]
    return _unfold(alpha, beta)

""" Signed DCT Graph """

def signed_forward(x: Sequence[Any]) -> list[Any]:
    """Computes sign(C) @ x with 24 additions."""
    a, b = _butterfly(x)
    c0 = a[0] + a[3]
    c1 = a[1] + a[2]
    c2 = a[0] - a[3]
    c3 = a[1] - a[2]
    s1 = b[0] + b[1]
    s2 = b[0] - b[1]
    s3 = b[2] + b[3]
    s4 = b[2] - b[3]
    return [
        c0 + c1, s1 + s3, c2 + c3, s2 - s3,
        c0 - c1, s2 + s3, c2 - c3, s2 + s4]

def signed_inverse(X: Sequence[Any]) -> list[Any]:
    """Computes sign(C).T @ X with 24 additions."""
    e = X[0] + X[4]
    f = X[0] - X[4]
    g = X[2] + X[6]
    h = X[2] - X[6]
    p = X[1] + X[3]
    q = X[1] - X[3]
    u = X[5] + X[7]
    v = X[5] - X[7]
    alpha = [e + g, f + h, f - h, e - g]
    beta = [p + u, q - u, q + u, q + v]
    return _unfold(alpha, beta)

""" Graph Catalog """

@dataclasses.dataclass(frozen = True)
class FlowGraph(object):
    """Hand-built network for one integer kernel.

    Args:
        name (str): key in GRAPHS.
        forward (Graph): computes kernel @ x.
        inverse (Graph): computes kernel.T @ X.
        kernel (Callable[[], np.ndarray]): returns the kernel the graph
            realizes, used to check the graph against a TransformSpec.

    """
    name: str
    forward: Graph
    inverse: Graph
    kernel: Callable[[], np.ndarray]


def _signed_kernel() -> np.ndarray:
    return np.sign(rounddct.transforms.exact_dct_matrix())


GRAPHS: dict[str, FlowGraph] = {
    'round_off': FlowGraph(
        name = 'round_off',
        forward = round_off_forward,
        inverse = round_off_inverse,
        kernel = lambda: rounddct.transforms.c0_matrix()),
    'signed': FlowGraph(
        name = 'signed',
        forward = signed_forward,
        inverse = signed_inverse,
        kernel = _signed_kernel)}

""" Evaluation """

def _columns(item: Any) -> np.ndarray:
    """Validates one 8-point vector or an (8, N) stack of column vectors."""
    values = np.asarray(item, dtype = float)
    if values.ndim not in (1, 2) or values.shape[0] != BLOCK:
        raise DimensionError(
            f'expected {BLOCK} values or an ({BLOCK}, N) array, got shape '
            f'{values.shape}')
    if not np.all(np.isfinite(values)):
        raise NonFiniteError('flow graph input contains non-finite values')
    return values

def _run(graph: Graph, item: Any) -> np.ndarray:
    values = _columns(item)
    return np.stack(graph(list(values)))

def fast_forward(x: Any, graph: str = 'round_off') -> np.ndarray:
    """Computes kernel @ x with a built-in flow graph.

    Args:
        x (Any): an 8-point vector or an (8, N) array of column vectors.
        graph (str): key in GRAPHS. Defaults to 'round_off', which realizes
            C0 with 22 additions.

    Raises:
        DimensionError: if 'x' does not have 8 rows.
        NonFiniteError: if 'x' contains NaN or infinite values.

    Returns:
        np.ndarray: same shape as 'x'. Integer inputs give exact results.

    """
    return _run(GRAPHS[graph].forward, x)

def fast_inverse(X: Any, graph: str = 'round_off') -> np.ndarray:
    """Computes kernel.T @ X with the transposed flow graph.

    Scaling the coefficients by diag(d ** 2) first, with d the orthogonalizer
    diagonal, makes this the exact inverse of fast_forward.

    """
    return _run(GRAPHS[graph].inverse, X)

def dense_forward(kernel: np.ndarray, x: Sequence[Any]) -> list[Any]:
    """Computes kernel @ x for a {-1, 0, 1} kernel without multiplying.

    Zero entries are skipped, the first nonzero entry of a row costs nothing
    (a -1 becomes a free negation), and each further entry costs one addition
    or subtraction. An all-zero row yields 0.

    Raises:
        KernelError: if 'kernel' has entries outside {-1, 0, 1}.

    """
    kernel = np.asarray(kernel)
    if not np.all(np.isin(kernel, (-1, 0, 1))):
        raise KernelError('dense evaluation needs a {-1, 0, 1} kernel')
    outputs = []
    for row in kernel:
        total = None
        for entry, operand in zip(row, x):
            if entry == 0:
                continue
            if total is None:
                total = operand if entry > 0 else -operand
            elif entry > 0:
                total = total + operand
            else:
                total = total - operand
        outputs.append(x[0] * 0.0 if total is None else total)
    return outputs

def _executor(spec: rounddct.transforms.TransformSpec) -> Graph:
    """Returns a callable computing the integer kernel of 'spec'."""
    if spec.graph is not None:
        try:
            flow = GRAPHS[spec.graph]
        except KeyError:
            raise KernelError(
                f'{spec.name} names an unknown flow graph {spec.graph}')
        if (spec.integer_kernel is not None
                and not np.array_equal(spec.integer_kernel, flow.kernel())):
            raise KernelError(
                f'{spec.name} kernel does not match the {flow.name} graph')
        return flow.forward
    if spec.integer_kernel is not None:
        kernel = spec.integer_kernel
        return lambda x: dense_forward(kernel, x)
    raise KernelError(f'{spec.name} has no executable integer kernel')

def kernel_forward(
    spec: rounddct.transforms.TransformSpec,
    x: Any) -> np.ndarray:
    """Computes the integer kernel of 'spec' applied to 'x'.

    Raises:
        KernelError: if 'spec' has neither a flow graph nor an integer kernel.

    """
    return _run(_executor(spec), x)

def audit_cost(
    spec: rounddct.transforms.TransformSpec,
    scaled: bool = False) -> rounddct.transforms.ArithmeticCost:
    """Counts the operations of one kernel evaluation by instrumentation.

    Args:
        spec (rounddct.transforms.TransformSpec): transform with a flow graph
            or an integer kernel.
        scaled (bool): whether to also count applying the diagonal instead of
            merging it into quantization. Defaults to False.

    Raises:
        KernelError: if 'spec' has no executable kernel.

    Returns:
        rounddct.transforms.ArithmeticCost: measured operation counts.

    """
    graph = _executor(spec)
    tally = Tally()
    outputs = graph([Counted(0.0, tally) for _ in range(BLOCK)])
    if scaled and spec.diagonal is not None:
        outputs = [
            o * float(d) if isinstance(o, Counted) else o
            for o, d in zip(outputs, spec.diagonal)]
    cost = tally.cost()
    LOGGER.debug('audited %s: %s', spec.name, cost)
    return cost
