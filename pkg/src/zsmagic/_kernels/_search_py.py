"""Pure-Python nowhere-zero search kernel.

Same contract as the compiled ``_search`` module; see ``search`` there.
"""

from __future__ import annotations

SAT, UNSAT, UNKNOWN = 1, 0, -1


def search(n_vars, n_edges, moduli, var_coord, var_ptr, entry_edge, entry_coef,
           check_ptr, check_edge, value_ptr, values, budget):
    moduli = [int(x) for x in moduli]
    var_coord = [int(x) for x in var_coord]
    var_ptr = [int(x) for x in var_ptr]
    entry_edge = [int(x) for x in entry_edge]
    entry_coef = [int(x) for x in entry_coef]
    check_ptr = [int(x) for x in check_ptr]
    check_edge = [int(x) for x in check_edge]
    value_ptr = [int(x) for x in value_ptr]
    values = [int(x) for x in values]
    ncoord = len(moduli)

    # per-variable entry lists with flat partial-sum offsets
    var_entries = []
    for v in range(n_vars):
        c = var_coord[v]
        var_entries.append([(c * n_edges + entry_edge[i], entry_coef[i])
                            for i in range(var_ptr[v], var_ptr[v + 1])])
    var_mod = [moduli[var_coord[v]] for v in range(n_vars)]
    var_checks = [check_edge[check_ptr[v]:check_ptr[v + 1]] for v in range(n_vars)]
    var_values = [values[value_ptr[v]:value_ptr[v + 1]] for v in range(n_vars)]
    offsets = [c * n_edges for c in range(ncoord)]

    partial = [0] * (ncoord * n_edges)
    choice = [-1] * (n_vars + 1)
    nodes = 0
    depth = 0
    while True:
        if depth == n_vars:
            return SAT, [var_values[v][choice[v]] for v in range(n_vars)], nodes
        v = depth
        entries = var_entries[v]
        n = var_mod[v]
        vals = var_values[v]
        idx = choice[v]
        if idx >= 0:
            old = vals[idx]
            if old:
                for pos, coef in entries:
                    partial[pos] = (partial[pos] - old * coef) % n
        idx += 1
        if idx == len(vals):
            choice[v] = -1
            depth -= 1
            if depth < 0:
                return UNSAT, [], nodes
            continue
        choice[v] = idx
        val = vals[idx]
        if val:
            for pos, coef in entries:
                partial[pos] = (partial[pos] + val * coef) % n
        nodes += 1
        if nodes > budget:
            return UNKNOWN, [], nodes
        ok = True
        for e in var_checks[v]:
            for off in offsets:
                if partial[off + e]:
                    break
            else:
                ok = False
                break
        if ok:
            depth += 1
            choice[depth] = -1
