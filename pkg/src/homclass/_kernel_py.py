"""Pure-Python backtracking kernel (fallback when the extension is absent).

Operates on the flat problem encoding built by :mod:`homclass.kernels`:
variables are assigned in index order, candidate values ascend, and every
constraint is checked as soon as its largest variable is assigned.
"""


def _prepare(problem):
    checks = []
    for var in range(problem.na):
        cs = []
        for ci in problem.checks_for[var]:
            vars_ = problem.cons_vars[ci]
            cs.append((vars_, problem.rel_sets[problem.cons_rel[ci]]))
        checks.append(cs)
    return checks


def search(problem, injective: bool, count: bool):
    """Return ``(number_found, first_witness)``.

    With ``count`` false the search stops at the first solution.
    """
    na = problem.na
    doms = problem.domains
    checks = _prepare(problem)
    assign = [0] * na
    used = set()
    found = 0
    first = None

    # explicit stack of candidate positions keeps deep structures off the C stack
    pos = [0] * na
    var = 0
    while var >= 0:
        if var == na:
            found += 1
            if first is None:
                first = tuple(assign)
            if not count:
                break
            var -= 1
            if var >= 0 and injective:
                used.discard(assign[var])
            continue
        dom = doms[var]
        i = pos[var]
        advanced = False
        while i < len(dom):
            b = dom[i]
            i += 1
            if injective and b in used:
                continue
            assign[var] = b
            ok = True
            for vars_, rel in checks[var]:
                if tuple(assign[v] for v in vars_) not in rel:
                    ok = False
                    break
            if ok:
                advanced = True
                break
        pos[var] = i
        if advanced:
            if injective:
                used.add(assign[var])
            var += 1
            if var < na:
                pos[var] = 0
        else:
            pos[var] = 0
            var -= 1
            if var >= 0 and injective:
                used.discard(assign[var])
    return found, first
