"""Compare an integral structure with its reductions modulo primes.

Run with ``python demos/integral_base_change.py``.  Over E1 defined over ZZ we
reduce modulo a sample of primes, check that Hom ranks between standard and
costandard filtered modules do not jump, and then look at a module whose
arrow acts by multiplication by 2.  Its Ext group against a costandard has
2-torsion, so the integral filtration test fails and only the fiber at 2
disagrees with the generic answer.
"""

from importlib.resources import files

from qhkit import (
    ext, fiberwise_filtration_check, hom_base_change_check, parse_algebra_spec, prime_sample,
    verify_split_qh,
)

parsed = parse_algebra_spec(files("qhkit").joinpath("data/E1.json").read_text())
qh = verify_split_qh(parsed.algebra, parsed.poset, parsed.standards)
M = parsed.extras["torsion2"]

sample = prime_sample(qh, user=[11], modules=[M])
print(f"primes {sample.primes} with provenance {sample.provenance}")

for lam in qh.labels:
    rep = hom_base_change_check(qh.standards[lam], qh.costandard(lam), sample)
    print(f"Hom(Delta({lam}), nabla({lam})): rank {rep.integral_rank}, fibers {rep.fiber_ranks}")

e = ext(M, qh.costandard("2"), 1)
print(f"Ext^1(torsion2, nabla(2)): free rank {e.free_rank}, torsion {e.torsion}")
report = fiberwise_filtration_check(M, qh, sample)
print(f"integral criterion {report.ext_criterion}, fibers {report.fibers}")
print(f"fibers that disagree: {report.failing_primes}")
