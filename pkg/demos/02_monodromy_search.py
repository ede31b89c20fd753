"""Realizability by permutations.

A cover of the sphere with n branching points exists exactly when there are
permutations s_1, ..., s_n of {1..d} with the prescribed cycle types, whose
product is the identity, generating a transitive group. The search below
finds such a tuple or proves there is none."""
from hurwitz import parse_candidate
from hurwitz.permgroup import (
    SearchBudget,
    SearchStats,
    class_size,
    cycle_type,
    format_cycles,
    product,
    realizable_by_search,
    verify_witness,
)

# Permutations are 0-based tuples; compose(p, q) applies p first, then q.
# Cycle notation is printed 1-based.

for text in [
    "o0 <-[4]- o0 : 2,2|2,2|2,2",  # the Klein four-group does it
    "o0 <-[4]- o0 : 2,2|2,2|3,1",  # no solution at all
    "o1 <-[6]- o0 : 4,2|3,3|3,3",  # a torus over the sphere that cannot exist
    "o0 <-[7]- o0 : 2,2,2,1|3,3,1|6,1",
]:
    c = parse_candidate(text)
    stats = SearchStats()
    v = realizable_by_search(c, stats=stats)
    sizes = [class_size(p) for p in c.partitions]
    print(f"{c}\n  class sizes {sizes}, {stats.nodes} nodes, {v.kind}")
    if v.kind == "realizable":
        w = v.witness
        print("  witness:", w)
        print("  cycle types:", [str(cycle_type(p)) for p in w.perms])
        print("  product:", format_cycles(product(w.perms)), "| verified:", verify_witness(c, w))

# A tight budget turns a long search into an honest "unknown".
big = parse_candidate("o4 <-[12]- o0 : 12|12|4,4,3,1")
print(big, "->", realizable_by_search(big, SearchBudget(max_nodes=10)))
print(big, "->", realizable_by_search(big).kind)
