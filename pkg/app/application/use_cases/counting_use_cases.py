"""Point counting over finite fields and c2 invariants"""
import logging
import multiprocessing as mp
import threading
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from app.application.use_cases.polynomial_use_cases import PolynomialUseCases
from app.domain.entities.field_spec import FieldSpec
from app.domain.entities.multigraph import MultiGraph
from app.domain.entities.sparse_poly import SparsePoly
from app.domain.exceptions import BudgetExceededError, ConsistencyError, PolynomialError, PreconditionError
from app.infrastructure.config.settings import settings

logger = logging.getLogger(__name__)

# Polynomials over GF(q): ((monomial, coefficient), ...) sorted by monomial,
# a monomial being ((var, exp), ...) sorted by var, coefficients nonzero field elements
FMono = Tuple[Tuple[int, int], ...]
FPoly = Tuple[Tuple[FMono, int], ...]
System = Tuple[FPoly, ...]
Ambient = Union[int, Sequence[int]]

_MEMO_LIMIT = 200000


def ambient_variables(ambient: Ambient) -> FrozenSet[int]:
    """An int n stands for a1..an, a sequence lists the variable ids"""
    if isinstance(ambient, int):
        return frozenset(range(1, ambient + 1))
    return frozenset(ambient)


def to_field_poly(poly: SparsePoly, field: FieldSpec) -> FPoly:
    terms: Dict[FMono, int] = {}
    for monomial, coeff in poly.terms:
        value = field.from_int(coeff)
        if value:
            mono = tuple((i + 1, x) for i, x in enumerate(monomial) if x)
            terms[mono] = value
    return tuple(sorted(terms.items()))


def _combine(items: Iterable[Tuple[FMono, int]], field: FieldSpec) -> FPoly:
    terms: Dict[FMono, int] = {}
    for mono, coeff in items:
        terms[mono] = field.add(terms.get(mono, 0), coeff)
    return tuple(sorted((m, c) for m, c in terms.items() if c))


def _mono_mul(a: FMono, b: FMono) -> FMono:
    exps = dict(a)
    for var, x in b:
        exps[var] = exps.get(var, 0) + x
    return tuple(sorted(exps.items()))


def _mul(f: FPoly, g: FPoly, field: FieldSpec) -> FPoly:
    return _combine(((_mono_mul(m1, m2), field.mul(c1, c2)) for m1, c1 in f for m2, c2 in g), field)


def _sub(f: FPoly, g: FPoly, field: FieldSpec) -> FPoly:
    return _combine(list(f) + [(m, field.neg(c)) for m, c in g], field)


def _variables(f: FPoly) -> FrozenSet[int]:
    return frozenset(var for mono, _ in f for var, _ in mono)


def _degree_in(f: FPoly, var: int) -> int:
    return max((x for mono, _ in f for v, x in mono if v == var), default=0)


def _split(f: FPoly, var: int) -> Tuple[FPoly, FPoly]:
    """(f^1, f_1) with f = f^1 * x + f_1 for f of degree <= 1 in x"""
    upper, lower = [], []
    for mono, coeff in f:
        rest = tuple((v, x) for v, x in mono if v != var)
        if len(rest) == len(mono):
            lower.append((mono, coeff))
        else:
            upper.append((rest, coeff))
    return tuple(sorted(upper)), tuple(sorted(lower))


def _substitute(f: FPoly, var: int, value: int, field: FieldSpec) -> FPoly:
    items = []
    for mono, coeff in f:
        power = 0
        rest = []
        for v, x in mono:
            if v == var:
                power = x
            else:
                rest.append((v, x))
        if power:
            coeff = field.mul(coeff, field.pow(value, power))
            if not coeff:
                continue
        items.append((tuple(rest), coeff))
    return _combine(items, field)


def _monic(f: FPoly, field: FieldSpec) -> FPoly:
    lead = f[0][1]
    if lead == 1:
        return f
    inverse = field.inv(lead)
    return tuple((m, field.mul(c, inverse)) for m, c in f)


def _is_constant(f: FPoly) -> bool:
    return len(f) == 1 and f[0][0] == ()


@lru_cache(maxsize=32)
def field_for(q: int) -> FieldSpec:
    return FieldSpec.make(q)


# Brute force: polynomials compiled to (coefficient, [(position, exponent), ...])
# and grouped by the deepest position they use
Compiled = List[Tuple[int, List[Tuple[int, int]]]]
Levels = List[List[Compiled]]


def _vanishes(compiled: Compiled, values: List[int], field: FieldSpec) -> bool:
    total = 0
    for coeff, factors in compiled:
        term = coeff
        for pos, x in factors:
            term = field.mul(term, field.pow(values[pos], x))
            if not term:
                break
        if term:
            total = field.add(total, term)
    return total == 0


def _walk(field: FieldSpec, by_level: Levels, values: List[int], depth: int) -> int:
    if depth == len(by_level):
        return 1
    found = 0
    for value in field.elements():
        values[depth] = value
        if all(_vanishes(compiled, values, field) for compiled in by_level[depth]):
            found += _walk(field, by_level, values, depth + 1)
    return found


def _count_from(task: Tuple[int, Levels, int]) -> int:
    """Zeros with the first position fixed to ``value``"""
    q, by_level, value = task
    field = field_for(q)
    values = [0] * len(by_level)
    values[0] = value
    if not all(_vanishes(compiled, values, field) for compiled in by_level[0]):
        return 0
    return _walk(field, by_level, values, 1)


class _EliminationCounter:
    """Exact [f_1, ..., f_k]_q by variable elimination

    A variable in which every polynomial is linear is removed with the
    one/two-polynomial formulas, or the pivot recursion
    [f, G] = [f^1, f_1, G] + [Res(f, G)] - [f^1, Res(f, G)] when it occurs in
    more polynomials. Systems without such a variable branch on the values of
    their most frequent variable. Systems are normalized (monic, deduplicated,
    sorted), split into variable-disjoint blocks and memoized per block.
    """

    def __init__(self, field: FieldSpec, budget: int, memo: Dict[System, int], lock: threading.Lock):
        self.field = field
        self.budget = budget
        self.memo = memo
        self.lock = lock
        self.leaves = 0

    def count(self, polys: Iterable[FPoly], variables: FrozenSet[int]) -> int:
        q = self.field.q
        system = set()
        for f in polys:
            if not f:
                continue
            if _is_constant(f):
                return 0
            system.add(_monic(f, self.field))
        if not system:
            return q ** len(variables)
        blocks = self._blocks(system)
        used = frozenset().union(*(block_vars for _, block_vars in blocks))
        result = q ** len(variables - used)
        for block, block_vars in blocks:
            part = self._core(block, block_vars)
            if part == 0:
                return 0
            result *= part
        return result

    def _blocks(self, system: Iterable[FPoly]) -> List[Tuple[System, FrozenSet[int]]]:
        groups: List[Tuple[List[FPoly], set]] = []
        for f in sorted(system):
            fv = set(_variables(f))
            merged_polys, merged_vars = [f], fv
            rest = []
            for polys, vs in groups:
                if vs & merged_vars:
                    merged_polys.extend(polys)
                    merged_vars |= vs
                else:
                    rest.append((polys, vs))
            groups = rest + [(merged_polys, merged_vars)]
        return sorted((tuple(sorted(polys)), frozenset(vs)) for polys, vs in groups)

    def _core(self, system: System, variables: FrozenSet[int]) -> int:
        with self.lock:
            cached = self.memo.get(system)
        if cached is not None:
            return cached
        result = self._eliminate(system, variables)
        with self.lock:
            if len(self.memo) >= _MEMO_LIMIT:
                self.memo.clear()
            self.memo[system] = result
        return result

    def _pivot(self, system: System, variables: FrozenSet[int]) -> Optional[int]:
        best = None
        for var in sorted(variables):
            containing = [f for f in system if var in _variables(f)]
            if any(_degree_in(f, var) > 1 for f in containing):
                continue
            key = (len(containing), var)
            if best is None or key < best:
                best = key
        return None if best is None else best[1]

    def _eliminate(self, system: System, variables: FrozenSet[int]) -> int:
        field, q = self.field, self.field.q
        x = self._pivot(system, variables)
        if x is None:
            return self._branch(system, variables)
        linear = [f for f in system if x in _variables(f)]
        rest = [f for f in system if x not in _variables(f)]
        remaining = variables - {x}
        if len(linear) == 1:
            f1, f0 = _split(linear[0], x)
            return (
                q * self.count([f1, f0] + rest, remaining)
                + self.count(rest, remaining)
                - self.count([f1] + rest, remaining)
            )
        if len(linear) == 2:
            f1, f0 = _split(linear[0], x)
            g1, g0 = _split(linear[1], x)
            res = _sub(_mul(f1, g0, field), _mul(g1, f0, field), field)
            return (
                q * self.count([f1, f0, g1, g0] + rest, remaining)
                + self.count([res] + rest, remaining)
                - self.count([f1, g1] + rest, remaining)
            )
        f1, f0 = _split(linear[0], x)
        others = linear[1:]
        resultants = []
        for g in others:
            g1, g0 = _split(g, x)
            resultants.append(_sub(_mul(f1, g0, field), _mul(f0, g1, field), field))
        return (
            self.count([f1, f0] + others + rest, variables)
            + self.count(resultants + rest, remaining)
            - self.count([f1] + resultants + rest, remaining)
        )

    def _branch(self, system: System, variables: FrozenSet[int]) -> int:
        frequency: Dict[int, int] = {}
        for f in system:
            for var in _variables(f):
                frequency[var] = frequency.get(var, 0) + 1
        var = min(frequency, key=lambda v: (-frequency[v], v))
        self.leaves += self.field.q
        if self.leaves > self.budget:
            raise BudgetExceededError(self.leaves, self.budget)
        remaining = variables - {var}
        return sum(
            self.count([_substitute(f, var, value, self.field) for f in system], remaining)
            for value in self.field.elements()
        )


class CountingUseCases:
    """[f_1, ..., f_k]_q over an affine space of chosen variables, and c2"""

    def __init__(
        self,
        polynomials: PolynomialUseCases,
        budget: int = settings.COUNT_BUDGET,
        workers: int = settings.WORKERS,
        parallel_from: int = settings.PARALLEL_MIN_TASKS,
    ):
        self.polynomials = polynomials
        self.budget = budget
        self.workers = workers
        self.parallel_from = parallel_from
        self._memo: Dict[int, Dict[System, int]] = {}
        self._lock = threading.Lock()

    @staticmethod
    def field(q: int) -> FieldSpec:
        return field_for(q)

    def _prepare(self, polys: Sequence[SparsePoly], ambient: Ambient, field: FieldSpec) -> Tuple[List[FPoly], FrozenSet[int]]:
        variables = ambient_variables(ambient)
        converted = []
        for poly in polys:
            outside = set(poly.variables()) - variables
            if outside:
                raise PolynomialError(f"polynomial uses a{min(outside)} outside the ambient variables")
            converted.append(to_field_poly(poly, field))
        return converted, variables

    def count_affine(self, polys: Sequence[SparsePoly], ambient: Ambient, q: int) -> int:
        """Enumeration with pruning: variables in descending frequency, a
        polynomial is evaluated as soon as all its variables are fixed

        The values of the first variable are independent branches; with
        several workers they run in a process pool and are summed in value
        order.
        """
        field = self.field(q)
        converted, variables = self._prepare(polys, ambient, field)
        system = []
        for f in converted:
            if not f:
                continue
            if _is_constant(f):
                return 0
            system.append(f)
        frequency: Dict[int, int] = {}
        for f in system:
            for var in _variables(f):
                frequency[var] = frequency.get(var, 0) + 1
        order = sorted(frequency, key=lambda v: (-frequency[v], v))
        needed = q ** len(order)
        if needed > self.budget:
            raise BudgetExceededError(needed, self.budget)
        position = {var: i for i, var in enumerate(order)}
        by_level: Levels = [[] for _ in order]
        for f in system:
            compiled = [(c, [(position[v], x) for v, x in mono]) for mono, c in f]
            level = max(position[v] for v in _variables(f))
            by_level[level].append(compiled)
        if not order:
            found = 1
        else:
            tasks = [(q, by_level, value) for value in field.elements()]
            if self.workers > 1 and needed >= self.parallel_from:
                with mp.Pool(processes=self.workers) as pool:
                    parts = pool.map(_count_from, tasks)
            else:
                parts = [_count_from(task) for task in tasks]
            found = sum(parts)

        result = found * q ** (len(variables) - len(order))
        logger.debug("📊 brute-force count over GF(%d): %d", q, result)
        return result

    def count_affine_eliminated(self, polys: Sequence[SparsePoly], ambient: Ambient, q: int) -> int:
        field = self.field(q)
        converted, variables = self._prepare(polys, ambient, field)
        with self._lock:
            memo = self._memo.setdefault(q, {})
        counter = _EliminationCounter(field, self.budget, memo, self._lock)
        result = counter.count(converted, variables)
        logger.debug("📊 eliminated count over %s: %d (%d branch leaves)", field.describe(), result, counter.leaves)
        return result

    def count(self, polys: Sequence[SparsePoly], ambient: Ambient, q: int, method: str = "eliminated") -> int:
        if method == "brute-force":
            return self.count_affine(polys, ambient, q)
        if method == "eliminated":
            return self.count_affine_eliminated(polys, ambient, q)
        raise PreconditionError(f"unknown counting method '{method}'")

    # c2 invariants

    def _c2(self, graph: MultiGraph, poly: SparsePoly, q: int, what: str) -> int:
        count = self.count_affine_eliminated([poly], graph.edge_ids, q)
        if count % (q * q):
            raise ConsistencyError(f"q^2 = {q * q} does not divide [{what}]_{q} = {count} on {graph.name}")
        return count // (q * q) % q

    def _check_c2_graph(self, graph: MultiGraph) -> None:
        if graph.degenerate or not graph.is_connected():
            raise PreconditionError("c2 needs a connected graph")
        if graph.loop_number() < 2:
            raise PreconditionError(f"c2 needs h >= 2, graph has h = {graph.loop_number()}")

    def c2_dual(self, graph: MultiGraph, q: int) -> int:
        """[Z_G]_q / q^2 mod q with Z_G = V(phi_G)"""
        self._check_c2_graph(graph)
        return self._c2(graph, self.polynomials.phi(graph), q, "Z_G")

    def c2_parametric(self, graph: MultiGraph, q: int) -> int:
        """[X_G]_q / q^2 mod q with X_G = V(Psi_G)"""
        self._check_c2_graph(graph)
        return self._c2(graph, self.polynomials.psi(graph), q, "X_G")
