"""Certify the small corpus algebras and print their heredity data.

Run with ``python demos/verify_corpus.py``.  For each algebra we verify the
split quasi-hereditary axioms, print the ranks along the heredity chain, and
show that standards and costandards are Ext-orthogonal.  The dual numbers
then serve as a negative control: every candidate standard is refuted with
the failing axiom and a witness.
"""

from qhkit import NotQuasiHereditary, Poset, ZZ, ext_orthogonality_table, verify_split_qh
from qhkit.corpus import E1, E1xE1, E2, dual_number_candidates, dual_numbers

for item in (E1(ZZ), E2(ZZ), E1xE1(ZZ)):
    qh = item.verify()
    print(f"{item.name}: labels {qh.labels}, chain ranks {qh.chain_ranks()}")
    for lam in qh.labels:
        print(f"  Delta({lam}) rank {qh.standards[lam].rank}, "
              f"nabla({lam}) rank {qh.costandard(lam).rank}")
    table = ext_orthogonality_table(qh, max_degree=2)
    print(f"  Ext-orthogonality holds on all {len(table.cells)} cells: "
          f"{all(cell[-1] for cell in table.cells)}")

A = dual_numbers(ZZ)
for cand in dual_number_candidates(ZZ):
    try:
        verify_split_qh(A, Poset(["1"]), {"1": cand})
    except NotQuasiHereditary as exc:
        print(f"dual numbers, candidate of rank {cand.rank}: axiom ({exc.axiom}) fails")
