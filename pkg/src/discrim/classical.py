"""Discrimination of two classical channels given as column-stochastic matrices.

Entries may be floats or :class:`fractions.Fraction`; every routine here uses
only ``+ - * / abs`` and comparisons, so rational inputs give exact answers.
Indices are 0-based; :func:`one_based` converts for display.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Dict, Iterator, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import CapacityError, ShapeError, ValidationError

COLUMN_TOL = 1e-12
FLOAT_TIE = 1e-12
SUPPORT_TOL = 1e-12
ENUM_LIMIT = 10 ** 6

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


@dataclass(frozen=True)
class StochasticChannel:
    """Column ``k`` of ``matrix`` is the output distribution on input ``k``."""
    matrix: Tuple[Tuple, ...]
    name: str = ""

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.matrix)
        if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
            raise ValidationError("stochastic matrix must be a non-empty rectangle")
        for j, row in enumerate(rows):
            for k, x in enumerate(row):
                if isinstance(x, bool) or not isinstance(x, (int, float, Fraction)):
                    raise ValidationError(f"entry ({j}, {k}) is not a real number: {x!r}")
                if x < 0 or x != x:
                    raise ValidationError(f"entry ({j}, {k}) is negative or NaN: {x!r}")
        for k in range(len(rows[0])):
            col = [rows[j][k] for j in range(len(rows))]
            total = sum(col)
            exact = all(_is_exact(x) for x in col)
            if (total != 1) if exact else abs(total - 1) > COLUMN_TOL:
                raise ValidationError(f"column {k} sums to {total}, expected 1")
        object.__setattr__(self, "matrix", rows)

    @property
    def outputs(self) -> int:
        return len(self.matrix)

    @property
    def inputs(self) -> int:
        return len(self.matrix[0])

    @property
    def exact(self) -> bool:
        return all(_is_exact(x) for row in self.matrix for x in row)

    def __getitem__(self, jk):
        j, k = jk
        return self.matrix[j][k]

    def column(self, k: int) -> Tuple:
        return tuple(row[k] for row in self.matrix)

    def to_array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.matrix])

    def __eq__(self, other):
        if not isinstance(other, StochasticChannel):
            return NotImplemented
        return self.matrix == other.matrix

    __hash__ = None


def _same_shape(m0: StochasticChannel, m1: StochasticChannel):
    if (m0.outputs, m0.inputs) != (m1.outputs, m1.inputs):
        raise ShapeError(f"channel shapes differ: {m0.outputs}x{m0.inputs} "
                         f"vs {m1.outputs}x{m1.inputs}")


def _tie_eps(*channels) -> float:
    return 0 if all(c.exact for c in channels) else FLOAT_TIE


def _l1(u, v):
    return sum(abs(a - b) for a, b in zip(u, v))


def one_based(idx):
    """Shift an index, tuple of indices or policy to the 1-based labels used in print."""
    if isinstance(idx, int):
        return idx + 1
    return tuple(i + 1 for i in idx)


# -- one-shot and parallel ------------------------------------------------------

class OneShotResult(NamedTuple):
    value: Any
    best_input: int


def one_shot_optimum(m0: StochasticChannel, m1: StochasticChannel) -> OneShotResult:
    _same_shape(m0, m1)
    eps = _tie_eps(m0, m1)
    best, arg = None, 0
    for k in range(m0.inputs):
        d = _l1(m0.column(k), m1.column(k))
        if best is None or d > best + eps:
            best, arg = d, k
    return OneShotResult(HALF + QUARTER * best, arg)


def _column_product(m: StochasticChannel, inputs: Sequence[int]):
    dist = [1]
    for k in inputs:
        col = m.column(k)
        dist = [p * c for p in dist for c in col]
    return dist


class NonadaptiveResult(NamedTuple):
    value: Any
    best_inputs: Tuple[int, ...]


def nonadaptive_optimum(m0: StochasticChannel, m1: StochasticChannel,
                        n: int) -> NonadaptiveResult:
    """Best parallel use of ``n`` copies; lexicographically first maximizer."""
    _same_shape(m0, m1)
    if n < 1:
        raise ValueError("n must be positive")
    if m0.inputs ** n > ENUM_LIMIT:
        raise CapacityError(f"{m0.inputs}^{n} input tuples exceed {ENUM_LIMIT}")
    eps = _tie_eps(m0, m1)
    best, arg = None, None
    for ks in product(range(m0.inputs), repeat=n):
        d = _l1(_column_product(m0, ks), _column_product(m1, ks))
        if best is None or d > best + eps:
            best, arg = d, ks
    return NonadaptiveResult(HALF + QUARTER * best, arg)


# -- two adaptive uses -------------------------------------------------------------

@dataclass(frozen=True)
class ClassicalTwoStepPolicy:
    """Feed ``first_input``; on output ``j`` feed ``response[j]`` next."""
    first_input: int
    response: Tuple[int, ...]

    def one_based(self):
        return self.first_input + 1, tuple(r + 1 for r in self.response)


class TwoStepResult(NamedTuple):
    value: Any
    policy: "ClassicalTwoStepPolicy"


def two_step_objective(m0, m1, k: int, response: Sequence[int]):
    """``sum_j || M0(j,k) M0|f(j)> - M1(j,k) M1|f(j)> ||_1`` for one policy."""
    total = 0
    for j, l in enumerate(response):
        a, b = m0[j, k], m1[j, k]
        if a == 0 and b == 0:
            continue
        total += _l1([a * x for x in m0.column(l)], [b * x for x in m1.column(l)])
    return total


def adaptive_two_step_optimum(m0: StochasticChannel, m1: StochasticChannel) -> TwoStepResult:
    """Exhaustive search over the first input and every response map."""
    _same_shape(m0, m1)
    if m0.inputs ** m0.outputs > ENUM_LIMIT:
        raise CapacityError(f"{m0.inputs}^{m0.outputs} response maps exceed {ENUM_LIMIT}")
    eps = _tie_eps(m0, m1)
    best, arg = None, None
    for k in range(m0.inputs):
        for f in product(range(m0.inputs), repeat=m0.outputs):
            d = two_step_objective(m0, m1, k, f)
            if best is None or d > best + eps:
                best, arg = d, ClassicalTwoStepPolicy(k, f)
    return TwoStepResult(HALF + QUARTER * best, arg)


@dataclass(frozen=True)
class PosteriorState:
    q: object
    p0: object
    p1: object
    defined: bool = True


def posterior(m0: StochasticChannel, m1: StochasticChannel, k: int, j: int,
              prior=HALF) -> PosteriorState:
    """Outcome probability and posterior over the channel after seeing ``j`` on ``k``.

    ``prior`` is the probability of channel 0. A zero-probability outcome
    yields ``defined=False`` with ``p0 = p1 = None``.
    """
    _same_shape(m0, m1)
    if not (0 <= k < m0.inputs and 0 <= j < m0.outputs):
        raise IndexError(f"(j, k) = ({j}, {k}) out of range")
    w0 = prior * m0[j, k]
    w1 = (1 - prior) * m1[j, k]
    q = w0 + w1
    if q == 0:
        return PosteriorState(q, None, None, defined=False)
    return PosteriorState(q, w0 / q, w1 / q)


def two_step_posterior_form(m0: StochasticChannel, m1: StochasticChannel):
    """Two-use optimum written through the equal-prior posteriors.

    ``1/2 + 1/4 max_k sum_j 2 q(j,k) max_l || p0 M0|l> - p1 M1|l> ||_1`` with
    ``q = (M0 + M1)/2``.
    """
    _same_shape(m0, m1)
    best = None
    for k in range(m0.inputs):
        total = 0
        for j in range(m0.outputs):
            st = posterior(m0, m1, k, j)
            if not st.defined:
                continue
            inner = max(_l1([st.p0 * x for x in m0.column(l)], [st.p1 * x for x in m1.column(l)])
                        for l in range(m0.inputs))
            total += 2 * st.q * inner
        best = total if best is None or total > best else best
    return HALF + QUARTER * best


# -- strategy trees ---------------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    guess: int


@dataclass(frozen=True)
class Node:
    input: int
    children: Tuple[Union["Node", Leaf], ...]


Tree = Union[Node, Leaf]


def tree_depth(tree: Tree) -> int:
    if isinstance(tree, Leaf):
        return 0
    return 1 + max(tree_depth(c) for c in tree.children)


def tree_success(tree: Tree, m0: StochasticChannel, m1: StochasticChannel):
    """Equal-prior probability that ``tree`` names the right channel."""
    def walk(t, w0, w1):
        if isinstance(t, Leaf):
            return w0 if t.guess == 0 else w1
        if len(t.children) != m0.outputs:
            raise ShapeError("tree node must have one child per channel output")
        return sum(walk(child, w0 * m0[j, t.input], w1 * m1[j, t.input])
                   for j, child in enumerate(t.children))
    return walk(tree, HALF, HALF)


def format_tree(tree: Tree, indent: str = "") -> str:
    """Multi-line rendering with 1-based inputs and outputs."""
    if isinstance(tree, Leaf):
        return f"{indent}guess {tree.guess}"
    lines = [f"{indent}input {tree.input + 1}"]
    for j, child in enumerate(tree.children):
        lines.append(f"{indent}  output {j + 1}:")
        lines.append(format_tree(child, indent + "    "))
    return "\n".join(lines)


class AdaptiveResult(NamedTuple):
    value: Any
    tree: "Tree"


def adaptive_optimum(m0: StochasticChannel, m1: StochasticChannel, n: int) -> AdaptiveResult:
    """Optimal ``n``-use adaptive strategy via the posterior recursion.

    ``V_0(pi) = max(pi, 1 - pi)`` and
    ``V_t(pi) = max_k sum_j q_pi(j,k) V_{t-1}(posterior)``; returns
    ``V_n(1/2)`` with a tree attaining it.
    """
    _same_shape(m0, m1)
    if n < 1:
        raise ValueError("n must be positive")
    if (m0.inputs * m0.outputs) ** n > ENUM_LIMIT:
        raise CapacityError(f"({m0.inputs}*{m0.outputs})^{n} exceeds {ENUM_LIMIT}")
    exact = m0.exact and m1.exact
    eps = _tie_eps(m0, m1)
    memo: Dict = {}

    def key(t, pi):
        return (t, pi) if exact else (t, round(float(pi) * 1e12))

    def solve(t, pi):
        kk = key(t, pi)
        if kk in memo:
            return memo[kk]
        if t == 0:
            res = (pi, Leaf(0)) if pi >= 1 - pi else (1 - pi, Leaf(1))
        else:
            res = None
            for k in range(m0.inputs):
                total, children = 0, []
                for j in range(m0.outputs):
                    st = posterior(m0, m1, k, j, pi)
                    if not st.defined:
                        children.append(Leaf(0))
                        continue
                    v, sub = solve(t - 1, st.p0)
                    total += st.q * v
                    children.append(sub)
                if res is None or total > res[0] + eps:
                    res = (total, Node(k, tuple(children)))
        memo[kk] = res
        return res

    value, tree = solve(n, HALF)
    return AdaptiveResult(value, tree)


# -- perfect discrimination ------------------------------------------------------

def _positive(x) -> bool:
    return x > 0 if _is_exact(x) else x > SUPPORT_TOL


def perfect_one_shot(m0: StochasticChannel, m1: StochasticChannel) -> Optional[int]:
    """Smallest input whose two output distributions have disjoint supports."""
    _same_shape(m0, m1)
    for k in range(m0.inputs):
        if not any(_positive(a) and _positive(b) for a, b in zip(m0.column(k), m1.column(k))):
            return k
    return None


def count_trees(inputs: int, outputs: int, depth: int) -> int:
    """Number of deterministic strategy trees of depth at most ``depth``."""
    total = 2
    for _ in range(depth):
        total = 2 + inputs * total ** outputs
    return total


def iter_trees(inputs: int, outputs: int, depth: int) -> Iterator[Tree]:
    yield Leaf(0)
    yield Leaf(1)
    if depth == 0:
        return
    subtrees = list(iter_trees(inputs, outputs, depth - 1))
    for k in range(inputs):
        for children in product(subtrees, repeat=outputs):
            yield Node(k, children)


@dataclass(frozen=True)
class PerfectEquivalenceReport:
    perfect_tree: Optional[Tree]
    best_value: object
    best_tree: Tree
    one_shot_witness: Optional[int]
    trees_searched: int

    @property
    def perfect(self) -> bool:
        return self.perfect_tree is not None

    @property
    def consistent(self) -> bool:
        """Whether a perfect tree exists exactly when a single use suffices."""
        return self.perfect == (self.one_shot_witness is not None)


def perfect_equivalence_check(m0: StochasticChannel, m1: StochasticChannel,
                              n_max: int) -> PerfectEquivalenceReport:
    """Enumerate every strategy tree of depth <= ``n_max`` looking for success 1."""
    _same_shape(m0, m1)
    count = count_trees(m0.inputs, m0.outputs, n_max)
    if count > ENUM_LIMIT:
        raise CapacityError(f"{count} strategy trees exceed {ENUM_LIMIT}")
    exact = m0.exact and m1.exact
    best_value, best_tree, perfect = None, None, None
    for tree in iter_trees(m0.inputs, m0.outputs, n_max):
        v = tree_success(tree, m0, m1)
        if best_value is None or v > best_value:
            best_value, best_tree = v, tree
        if perfect is None and (v == 1 if exact else v >= 1 - FLOAT_TIE):
            perfect = tree
    return PerfectEquivalenceReport(perfect, best_value, best_tree,
                                    perfect_one_shot(m0, m1), count)


# -- worked examples -------------------------------------------------------------

def _frac(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def example1() -> Tuple[StochasticChannel, StochasticChannel]:
    """Two 2x2 channels with rational entries."""
    m0 = StochasticChannel(_frac([["1/3", "8/9"], ["2/3", "1/9"]]), name="example1_m0")
    m1 = StochasticChannel(_frac([["0", "1/3"], ["1", "2/3"]]), name="example1_m1")
    return m0, m1


def example2() -> Tuple[StochasticChannel, StochasticChannel]:
    """3x4 pair whose best single-use input is not used by the best parallel pair."""
    m0 = StochasticChannel(((0.86, 0.45, 1.0, 0.5),
                            (0.14, 0.1, 0.0, 0.5),
                            (0.0, 0.45, 0.0, 0.0)), name="example2_m0")
    m1 = StochasticChannel(((0.15, 0.1, 0.5, 0.0),
                            (0.85, 0.8, 0.5, 1.0),
                            (0.0, 0.1, 0.0, 0.0)), name="example2_m1")
    return m0, m1


def example3() -> Tuple[StochasticChannel, StochasticChannel]:
    """3x4 pair whose best single-use input does not open the best adaptive scheme."""
    m0 = StochasticChannel(((1.0, 0.5, 0.828, 0.76),
                            (0.0, 0.5, 0.092, 0.04),
                            (0.0, 0.0, 0.08, 0.2)), name="example3_m0")
    m1 = StochasticChannel(((0.5, 0.0, 0.092, 0.04),
                            (0.5, 1.0, 0.828, 0.76),
                            (0.0, 0.0, 0.08, 0.2)), name="example3_m1")
    return m0, m1
