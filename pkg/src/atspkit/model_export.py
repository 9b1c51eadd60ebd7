"""MIP model emission and the external-solver cut loop.

Two formulations of the arc-variable ATSP model are written in the
algebraic LP text format: MTZ (compact, continuous order variables) and DFJ
(degree constraints plus lazily accumulated subtour cuts).  The cut loop
emulates callback-style lazy constraints by full re-solve rounds against
any external MIP solver, exchanged through files.
"""

from dataclasses import dataclass, field

FORMULATIONS = ("MTZ", "DFJ")

_TERMS_PER_LINE = 8


class SolutionParseError(ValueError):
    """Solution file violates the grammar, integrality, or degree rules."""


class CutLoopError(ValueError):
    """External solver returned a solution the emitted model forbids."""


@dataclass(frozen=True)
class MipModel:
    """Structural description of one formulation instance."""

    formulation: str
    n: int
    cuts: tuple = ()

    def counts(self):
        return count_model(self.n, self.formulation, len(self.cuts))


@dataclass
class CutLoopState:
    """Progress of the iterative re-solve rounds."""

    n: int
    round: int = 0
    cuts: list = field(default_factory=list)
    last_solution: frozenset | None = None
    status: str = "needs_solve"


def _wrap(label, terms, relation):
    """One constraint (or objective) as deterministic wrapped lines."""
    lines = []
    current = f" {label}:"
    for k, term in enumerate(terms):
        piece = (" " + term) if k == 0 else (" + " + term)
        if k and k % _TERMS_PER_LINE == 0:
            lines.append(current)
            current = "  " + piece
        else:
            current += piece
    lines.append(current + " " + relation)
    return lines


def emit_lp(m, formulation, cuts=()):
    """Deterministic LP-format text for the given cost matrix.

    Variables are x_i_j (binary, i != j) and, for MTZ, continuous order
    variables u_1 .. u_{n-1} with the standard big-M (= n) constraints.
    DFJ cuts are one row per provided node subset.  Constraint order is
    pinned: degree-out ascending, degree-in ascending, then order
    constraints / cuts in creation order.
    """
    formulation = formulation.upper()
    if formulation not in FORMULATIONS:
        raise ValueError(f"unknown formulation {formulation!r}")
    n = m.n
    c = m.costs
    lines = [f"\\ atspkit model formulation={formulation} n={n} cuts={len(cuts)}",
             "Minimize"]
    obj_terms = [f"{int(c[i, j])} x_{i}_{j}"
                 for i in range(n) for j in range(n) if i != j]
    obj_lines = _wrap("obj", obj_terms, "")
    obj_lines[-1] = obj_lines[-1].rstrip()
    lines.extend(obj_lines)
    lines.append("Subject To")
    for i in range(n):
        terms = [f"x_{i}_{j}" for j in range(n) if j != i]
        lines.extend(_wrap(f"out_{i}", terms, "= 1"))
    for j in range(n):
        terms = [f"x_{i}_{j}" for i in range(n) if i != j]
        lines.extend(_wrap(f"in_{j}", terms, "= 1"))
    if formulation == "MTZ":
        for i in range(1, n):
            for j in range(1, n):
                if i != j:
                    lines.append(f" ord_{i}_{j}: u_{i} - u_{j} + {n} x_{i}_{j}"
                                 f" <= {n - 1}")
    else:
        for k, cut in enumerate(cuts):
            subset = sorted(cut)
            terms = [f"x_{i}_{j}" for i in subset for j in subset if i != j]
            lines.extend(_wrap(f"cut_{k}", terms, f"<= {len(subset) - 1}"))
    if formulation == "MTZ":
        lines.append("Bounds")
        for i in range(1, n):
            lines.append(f" 1 <= u_{i} <= {n - 1}")
    lines.append("Binaries")
    names = [f"x_{i}_{j}" for i in range(n) for j in range(n) if i != j]
    for k in range(0, len(names), _TERMS_PER_LINE):
        lines.append(" " + " ".join(names[k:k + _TERMS_PER_LINE]))
    lines.append("End")
    return ("\n".join(lines) + "\n").encode("utf-8")


def count_model(n, formulation, cuts=0):
    """Closed-form variable and constraint counts without materializing."""
    if n < 2:
        raise ValueError("n must be >= 2")
    formulation = formulation.upper()
    if formulation not in FORMULATIONS:
        raise ValueError(f"unknown formulation {formulation!r}")
    binaries = n * (n - 1)
    if formulation == "MTZ":
        return {"binaries": binaries, "continuous": n - 1,
                "constraints": 2 * n + (n - 1) * (n - 2)}
    return {"binaries": binaries, "continuous": 0, "constraints": 2 * n + cuts}


def parse_solution(text, n):
    """Parse "<variable> <value>" lines into the selected arc set.

    x_i_j values must round to 0 or 1 within 1e-6; other variables (u_*)
    are ignored.  Out-degree and in-degree must both be exactly 1 for every
    node.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    arcs = set()
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise SolutionParseError(f"expected '<name> <value>': {line!r}")
        name, value = parts
        if not name.startswith("x_"):
            continue
        try:
            i, j = (int(v) for v in name[2:].split("_"))
            val = float(value)
        except ValueError:
            raise SolutionParseError(f"malformed entry {line!r}") from None
        if not (0 <= i < n and 0 <= j < n and i != j):
            raise SolutionParseError(f"variable {name} out of range for n={n}")
        if abs(val - round(val)) > 1e-6 or round(val) not in (0, 1):
            raise SolutionParseError(f"non-integral value for {name}: {value}")
        if round(val) == 1:
            arcs.add((i, j))
    out_deg = [0] * n
    in_deg = [0] * n
    for (i, j) in arcs:
        out_deg[i] += 1
        in_deg[j] += 1
    for v in range(n):
        if out_deg[v] != 1 or in_deg[v] != 1:
            raise SolutionParseError(
                f"degree violation at node {v}: out={out_deg[v]} in={in_deg[v]}")
    return frozenset(arcs)


def _solution_cycles(arcs, n):
    succ = {i: j for (i, j) in arcs}
    seen = set()
    cycs = []
    for i in range(n):
        if i not in seen:
            cyc = [i]
            seen.add(i)
            j = succ[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = succ[j]
            cycs.append(cyc)
    return cycs


def cut_loop_step(state, arcs):
    """Advance the cut loop with one integral solver solution.

    A single n-cycle finishes the loop (status tour_found); otherwise one
    DFJ cut per subtour is appended and another solve round is requested.
    Re-offering an already-cut subtour is a solver error: the emitted model
    forbids it.
    """
    cycs = _solution_cycles(arcs, state.n)
    state.last_solution = frozenset(arcs)
    if len(cycs) == 1:
        state.status = "tour_found"
        return state
    existing = {frozenset(c) for c in state.cuts}
    for cyc in cycs:
        subset = frozenset(cyc)
        if subset in existing:
            raise CutLoopError(f"subtour {sorted(subset)} was already cut")
        state.cuts.append(sorted(subset))
    state.round += 1
    state.status = "needs_solve"
    return state
