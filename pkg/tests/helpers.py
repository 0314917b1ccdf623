from hullkit.group import generate_closure, parse_cycles


def sub(G, *cycles):
    """Subgroup of a permutation group generated by cycle-notation strings."""
    degree = len(G.perms[0])
    return generate_closure(G, [G.perm_index[parse_cycles(c, degree)] for c in cycles])


def el(G, cycles):
    return G.perm_index[parse_cycles(cycles, len(G.perms[0]))]


def elements(G, *cycles):
    return {el(G, c) for c in cycles}
