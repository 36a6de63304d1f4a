"""Approximation into a given variety, including the degenerate case.

Here the jet (0, 0) sits on v^2 = y^2, where the discriminant 4 y^2 of the
projection vanishes identically along the jet.  The pipeline then adds the
discriminant to the equations and works on the smaller variety.
"""

from nashapprox.core import ApproxConfig
from nashapprox.problemio import parse_problem, run_problem
from nashapprox.problems import descent_problem, sqrt_problem
from nashapprox.verify import verify_result

cfg = ApproxConfig()
for title, doc in (("sqrt: v^2 = 1 + y along (x, sqrt(1+x))", sqrt_problem(8)), ("descent: v^2 = y^2 at 0", descent_problem(8))):
    res = run_problem(parse_problem(doc, cfg), (1, 2, 3), cfg)
    print(title)
    for line in res.trace:
        print("   ", line)
    for nu in res.nu_list:
        print(f"  nu={nu}:", [f.annihilator.to_multi().to_text(["x", "z"]) for f in res.functions[nu]])
    print("  verified:", verify_result(res, cfg).passed, "\n")
