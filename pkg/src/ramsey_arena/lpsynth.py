"""Synthesis of potential tables by exact linear programming.

A candidate Painter strategy induces linear constraints on the table cells:
one row per enumerated move configuration (the same enumeration the verify
module uses), plus the structural assumptions -- blue-monotone columns,
equal spacing for the distance classes, and red-move gains that shrink as
the blue class grows.  The objective maximizes the minimum of the 2+ row.
A hill climber flips one strategy cell at a time, keeping flips that do not
hurt the objective.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from .core import BLUE, RED, BlueClass, GameKind, MissingCapitalError, RedClass, VertexType
from .painter import (DirectiveKind, Pattern, Rule, StrategyTable,
                      builtin_strategy, type_universe)
from .potential import PotentialTable, builtin_table
from .rational import ExtendedRational
from .simplex import (INFEASIBLE, OPTIMAL, UNBOUNDED, solve_linear_system,
                      solve_standard)
from .verify import iter_pair_configs

_Q = ("0", "1", "2+")


def lp_variables(game: GameKind) -> List[str]:
    cols = builtin_table(game).finite_column_names()
    return [f"{c}^{q}" for c in cols for q in _Q] + ["t"]


def cell_var(game: GameKind, red: RedClass, blue: BlueClass) -> str:
    name = builtin_table(game).column_name(red)
    if name is None:
        raise KeyError(f"{red} has no finite column in the {game.value} game")
    return f"{name}^{BlueClass(blue)}"


@dataclass
class Constraint:
    label: str
    coeffs: Dict[str, Fraction]
    sense: str                      # "<=" or "=="
    rhs: Fraction
    pair: Optional[Tuple[VertexType, VertexType]] = None  # strategy cell behind the row

    def evaluate(self, assignment: Dict[str, Fraction]) -> Fraction:
        return sum((c * assignment[v] for v, c in self.coeffs.items()), Fraction(0))

    def satisfied_by(self, assignment: Dict[str, Fraction]) -> bool:
        lhs = self.evaluate(assignment)
        return lhs == self.rhs if self.sense == "==" else lhs <= self.rhs

    def render(self) -> str:
        terms = " ".join(f"{'+' if c >= 0 else '-'}{abs(c)}*{v}"
                         for v, c in sorted(self.coeffs.items()))
        return f"[{self.label}] {terms} {self.sense} {self.rhs}"


@dataclass
class LinearProgram:
    game: GameKind
    variables: List[str]
    constraints: List[Constraint]
    impossible: List[str] = field(default_factory=list)  # infinite-jump configurations

    def dumps(self) -> str:
        lines = [f"var {v}" for v in self.variables]
        lines.append("max t")
        lines.extend(c.render() for c in self.constraints)
        for label in self.impossible:
            lines.append(f"# impossible: {label}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Pair-level strategies (the hill climber's search space)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PairRule:
    """Decision for one unordered type pair; (tu, tv) fixes the directive's
    orientation (the directive's v is tv)."""

    tu: VertexType
    tv: VertexType
    color: str
    directive: DirectiveKind


def _pair_key(ta: VertexType, tb: VertexType) -> Tuple[VertexType, VertexType]:
    return (ta, tb) if str(ta) <= str(tb) else (tb, ta)


class PairStrategy:
    """A total map from unordered type pairs to decisions."""

    def __init__(self, game: GameKind, rules: Dict[Tuple[VertexType, VertexType], PairRule]):
        self.game = game
        self.rules = rules

    @classmethod
    def from_strategy(cls, strategy: StrategyTable) -> "PairStrategy":
        universe = type_universe(strategy.game)
        rules = {}
        for ta, tb in itertools.combinations_with_replacement(universe, 2):
            rule, forward = strategy.first_match(ta, tb)
            tu, tv = (ta, tb) if forward else (tb, ta)
            rules[_pair_key(ta, tb)] = PairRule(tu, tv, rule.color, rule.directive)
        return cls(strategy.game, rules)

    @classmethod
    def all_blue(cls, game: GameKind) -> "PairStrategy":
        universe = type_universe(game)
        rules = {}
        for ta, tb in itertools.combinations_with_replacement(universe, 2):
            rules[_pair_key(ta, tb)] = PairRule(ta, tb, BLUE, DirectiveKind.NONE)
        return cls(game, rules)

    def key(self) -> Tuple:
        return tuple((k, r.color) for k, r in sorted(self.rules.items(), key=str))

    def flipped(self, pair: Tuple[VertexType, VertexType]) -> "PairStrategy":
        rule = self.rules[pair]
        if rule.color == RED:
            new = PairRule(rule.tu, rule.tv, BLUE, DirectiveKind.NONE)
        else:
            new = PairRule(rule.tu, rule.tv, RED,
                           _default_directive(self.game, rule.tu, rule.tv))
        rules = dict(self.rules)
        rules[pair] = new
        return PairStrategy(self.game, rules)

    def to_strategy_table(self) -> StrategyTable:
        rules = []
        ordered = sorted(self.rules.items(), key=lambda kv: (kv[1].color != BLUE, str(kv[0])))
        for i, (_, r) in enumerate(ordered):
            rules.append(Rule(f"p{i}",
                              Pattern([(r.tu.red, r.tu.blue)], str(r.tu)),
                              Pattern([(r.tv.red, r.tv.blue)], str(r.tv)),
                              r.color, r.directive))
        return StrategyTable(self.game, rules)


def _same_shape(a: RedClass, b: RedClass) -> bool:
    groups = ({RedClass.L0, RedClass.L1}, {RedClass.N0, RedClass.N1},
              {RedClass.F0, RedClass.F1, RedClass.F2, RedClass.F3})
    return any(a in g and b in g for g in groups)


def red_flip_is_safe(tu: VertexType, tv: VertexType) -> bool:
    """A pair may be colored red only if its endpoints can never share a red
    component (else a red reply could close a cycle or merge two capitals,
    which the cross-component constraint model cannot see)."""
    return not _same_shape(tu.red, tv.red)


def _default_directive(game: GameKind, tu: VertexType, tv: VertexType) -> DirectiveKind:
    """Capital policy for a freshly flipped red pair: none when the joined
    component stays small or keeps its old capital, otherwise the played
    edge (edge-capital games) or the v endpoint (the P8 game)."""
    for kind in (DirectiveKind.NONE,
                 DirectiveKind.EDGE_UV if game.capital_kind == "edge" else DirectiveKind.VERTEX_V):
        try:
            next(iter_pair_configs(game, tu, tv, RED, kind, "probe", builtin_table(game)))
            return kind
        except (MissingCapitalError, StopIteration):
            continue
        except Exception:
            continue
    return DirectiveKind.NONE


# ---------------------------------------------------------------------------
# Constraint generation
# ---------------------------------------------------------------------------


def _as_pairs(strategy) -> PairStrategy:
    if isinstance(strategy, PairStrategy):
        return strategy
    return PairStrategy.from_strategy(strategy)


def generate_constraints(game: GameKind, strategy, jump: Fraction) -> LinearProgram:
    """The full constraint system of a strategy at a fixed jump.

    Rows: every enumerated move configuration (delta f <= jump), the
    blue-monotone columns, equal spacing for the center/end and distance
    classes, the red-move monotone-gain assumption, the fixed origin cell,
    and the objective links t <= c(X^2+).
    """
    jump = Fraction(jump)
    pairs = _as_pairs(strategy)
    table = builtin_table(game)
    cols = table.finite_column_names()
    variables = lp_variables(game)
    constraints: List[Constraint] = []
    impossible: List[str] = []
    seen_rows: Dict[Tuple, str] = {}
    transitions: Set[Tuple[str, str]] = set()

    for key, rule in sorted(pairs.rules.items(), key=str):
        label_base = f"{rule.color}({rule.tu},{rule.tv})"
        for idx, cfg in enumerate(iter_pair_configs(game, rule.tu, rule.tv, rule.color,
                                                    rule.directive, label_base, table)):
            label = f"{label_base}#{idx}"
            if not cfg.delta.is_finite:
                impossible.append(f"{label}: {cfg.witness()}")
                continue
            coeffs: Dict[str, Fraction] = {}
            for _, old, new in cfg.affected:
                for t, sign in ((new, 1), (old, -1)):
                    var = cell_var(game, t.red, t.blue)
                    coeffs[var] = coeffs.get(var, Fraction(0)) + sign
                if rule.color == RED and old.red != new.red:
                    transitions.add((table.column_name(old.red), table.column_name(new.red)))
            coeffs = {v: c for v, c in coeffs.items() if c != 0}
            if not coeffs:
                continue
            row_key = (tuple(sorted(coeffs.items())), jump)
            if row_key in seen_rows:
                continue
            seen_rows[row_key] = label
            constraints.append(Constraint(f"{label}: {cfg.witness()}", coeffs,
                                          "<=", jump, pair=key))

    constraints.append(Constraint("origin: c(O^0)=0", {"O^0": Fraction(1)}, "==", Fraction(0)))
    for col in cols:
        constraints.append(Constraint(
            f"blue-monotone({col},0->1)",
            {f"{col}^1": Fraction(1), f"{col}^0": Fraction(-1)}, ">=", Fraction(0)))
        constraints.append(Constraint(
            f"blue-monotone({col},1->2+)",
            {f"{col}^2+": Fraction(1), f"{col}^1": Fraction(-1)}, ">=", Fraction(0)))
    spacing = {"L", "L0", "L1", "N0", "N1", "F0", "F1", "F2", "F3"}
    for col in cols:
        if col in spacing:
            constraints.append(Constraint(
                f"equal-spacing({col})",
                {f"{col}^0": Fraction(1), f"{col}^1": Fraction(-2), f"{col}^2+": Fraction(1)},
                "==", Fraction(0)))
    for x_col, z_col in sorted(transitions):
        if x_col == z_col:
            continue
        for i, j in ((0, 1), (1, 2)):
            qi, qj = _Q[i], _Q[j]
            constraints.append(Constraint(
                f"monotone-gain({x_col}->{z_col},{qi}>={qj})",
                {f"{z_col}^{qi}": Fraction(1), f"{x_col}^{qi}": Fraction(-1),
                 f"{z_col}^{qj}": Fraction(-1), f"{x_col}^{qj}": Fraction(1)},
                ">=", Fraction(0)))
    for col in cols:
        constraints.append(Constraint(
            f"objective-link({col})",
            {"t": Fraction(1), f"{col}^2+": Fraction(-1)}, "<=", Fraction(0)))
    return LinearProgram(game, variables, constraints, impossible)


# ---------------------------------------------------------------------------
# Solving
# ---------------------------------------------------------------------------


@dataclass
class LPSolution:
    status: str
    assignment: Optional[Dict[str, Fraction]]
    objective: Optional[Fraction]
    duals: Dict[str, Fraction] = field(default_factory=dict)


def _normalized_rows(lp: LinearProgram):
    """(coeff vector, rhs, is_equality, constraint) with >= flipped to <=."""
    index = {v: i for i, v in enumerate(lp.variables)}
    rows = []
    for con in lp.constraints:
        vec = [Fraction(0)] * len(lp.variables)
        for v, c in con.coeffs.items():
            vec[index[v]] = Fraction(c)
        rhs = Fraction(con.rhs)
        if con.sense == ">=":
            vec = [-c for c in vec]
            rhs = -rhs
        rows.append((vec, rhs, con.sense == "==", con))
    return rows


def solve_lp(lp: LinearProgram) -> LPSolution:
    """Exact optimum of `maximize t` over the constraint rows.

    Solves through the dual (the systems are row-heavy), recovers the primal
    vertex from the optimal dual basis and verifies feasibility and strong
    duality exactly; infeasible and unbounded programs are reported as such.
    """
    if lp.impossible:
        return LPSolution(INFEASIBLE, None, None)
    rows = _normalized_rows(lp)
    nvar = len(lp.variables)
    t_index = lp.variables.index("t")
    objective = [Fraction(0)] * nvar
    objective[t_index] = Fraction(1)

    # dual: min sum rhs_i * y_i  s.t.  sum y_i * row_i = objective, y >= 0
    # (free multipliers for equalities, split into two nonnegative columns)
    G: List[List[Fraction]] = [[] for _ in range(nvar)]
    d: List[Fraction] = []
    col_meta: List[Tuple[int, int]] = []  # (row index, sign)
    for ri, (vec, rhs, is_eq, _) in enumerate(rows):
        for j in range(nvar):
            G[j].append(vec[j])
        d.append(rhs)
        col_meta.append((ri, 1))
        if is_eq:
            for j in range(nvar):
                G[j].append(-vec[j])
            d.append(-rhs)
            col_meta.append((ri, -1))
    result = solve_standard(G, objective, d)
    if result.status == INFEASIBLE:
        zero_ok = all((rhs == 0 if is_eq else rhs >= 0) for _, rhs, is_eq, _ in rows)
        return LPSolution(UNBOUNDED if zero_ok else INFEASIBLE, None, None)
    if result.status == UNBOUNDED:
        return LPSolution(INFEASIBLE, None, None)

    ncols = len(d)
    basis_cols = []
    basis_costs = []
    for b in result.basis:
        if b < ncols:
            basis_cols.append([G[j][b] for j in range(nvar)])
            basis_costs.append(d[b])
        else:  # artificial unit column for dual row b - ncols
            unit = [Fraction(0)] * nvar
            unit[b - ncols] = Fraction(1)
            basis_cols.append(unit)
            basis_costs.append(Fraction(0))
    # primal vertex: G_B^T x = d_B
    x = solve_linear_system(basis_cols, basis_costs)
    if x is None:
        raise ArithmeticError("degenerate dual basis: primal recovery failed")
    assignment = dict(zip(lp.variables, x))
    duals: Dict[str, Fraction] = {}
    for col, w in enumerate(result.x):
        if w != 0:
            ri, sign = col_meta[col]
            duals[rows[ri][3].label] = duals.get(rows[ri][3].label, Fraction(0)) + sign * w
    for vec, rhs, is_eq, con in rows:
        lhs = sum(c * xi for c, xi in zip(vec, x))
        if (is_eq and lhs != rhs) or (not is_eq and lhs > rhs):
            raise ArithmeticError(f"primal recovery violated {con.label}")
    if x[t_index] != result.objective:
        raise ArithmeticError("strong duality check failed")
    return LPSolution(OPTIMAL, assignment, x[t_index], duals)


def check_feasibility(table: PotentialTable, lp: LinearProgram) -> List[str]:
    """Names of constraints the table violates (empty means feasible)."""
    assignment: Dict[str, Fraction] = {}
    for var in lp.variables:
        if var == "t":
            continue
        col, q = var.rsplit("^", 1)
        cell = table.columns[col][_Q.index(q)]
        if not cell.is_finite:
            return [f"cell {var} is infinite"]
        assignment[var] = cell.finite
    assignment["t"] = min(table.columns[c][2].finite for c in lp.game and
                          builtin_table(lp.game).finite_column_names())
    assignment["t"] = min(assignment[f"{c}^2+"]
                          for c in table.finite_column_names())
    out = [f"impossible configuration: {label}" for label in lp.impossible]
    for con in lp.constraints:
        if not con.satisfied_by(assignment):
            out.append(f"{con.label}: lhs={con.evaluate(assignment)} {con.sense} {con.rhs}")
    return out


def table_from_assignment(game: GameKind, jump: Fraction,
                          assignment: Dict[str, Fraction]) -> PotentialTable:
    cols = builtin_table(game).finite_column_names()
    columns = {c: tuple(ExtendedRational(assignment[f"{c}^{q}"]) for q in _Q) for c in cols}
    return PotentialTable(game, jump, columns)


# ---------------------------------------------------------------------------
# Hill climbing
# ---------------------------------------------------------------------------


@dataclass
class ClimbResult:
    strategy: PairStrategy
    table: Optional[PotentialTable]
    objective: Optional[Fraction]
    iterations: int
    history: List[Fraction] = field(default_factory=list)


def hill_climb(game: GameKind, initial_strategy, jump: Fraction,
               max_iters: int = 25) -> ClimbResult:
    """Flip one strategy cell at a time, guided by binding constraints.

    A flip is kept when the re-solved objective does not drop (reverting
    only on strictly worse results); candidate cells are ranked by the
    magnitude of their constraint's dual value, ties by label.  Stops at a
    local optimum, after max_iters flips, or when no unvisited flip helps.
    """
    jump = Fraction(jump)
    current = _as_pairs(initial_strategy)
    sol = solve_lp(generate_constraints(game, current, jump))
    best_obj = sol.objective if sol.status == OPTIMAL else None
    visited = {current.key()}
    history = [best_obj] if best_obj is not None else []
    iterations = 0
    for _ in range(max_iters):
        candidates = _flip_candidates(generate_constraints(game, current, jump), sol, current)
        moved = False
        for pair in candidates:
            nxt = current.flipped(pair)
            if nxt.key() in visited:
                continue
            visited.add(nxt.key())
            nxt_sol = solve_lp(generate_constraints(game, nxt, jump))
            if nxt_sol.status != OPTIMAL:
                continue
            if best_obj is None or nxt_sol.objective >= best_obj:
                current, sol, best_obj = nxt, nxt_sol, nxt_sol.objective
                history.append(best_obj)
                iterations += 1
                moved = True
                break
        if not moved:
            break
    table = (table_from_assignment(game, jump, sol.assignment)
             if sol.status == OPTIMAL else None)
    return ClimbResult(current, table, best_obj, iterations, history)


def _flip_candidates(lp: LinearProgram, sol: LPSolution,
                     strategy: PairStrategy) -> List[Tuple[VertexType, VertexType]]:
    """Strategy cells behind binding constraints, most influential first."""
    if sol.status != OPTIMAL:
        # infeasible start: every cell is a candidate, deterministic order
        return [k for k in sorted(strategy.rules, key=str)]
    ranked: List[Tuple[Fraction, str, Tuple]] = []
    seen: Set[Tuple] = set()
    for con in lp.constraints:
        if con.pair is None:
            continue
        dual = abs(sol.duals.get(con.label, Fraction(0)))
        tight = con.evaluate(sol.assignment) == con.rhs
        if dual == 0 and not tight:
            continue
        if con.pair in seen:
            continue
        seen.add(con.pair)
        ranked.append((-dual, con.label, con.pair))
    ranked.sort(key=lambda item: (item[0], item[1]))
    out = []
    for _, _, pair in ranked:
        rule = strategy.rules[pair]
        if rule.color == BLUE and not red_flip_is_safe(rule.tu, rule.tv):
            continue
        out.append(pair)
    return out
