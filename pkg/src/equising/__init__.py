"""equising: exact computation with equisingularity invariants.

Submodules:

- ``polynomials``: exact sparse rational polynomials, resultants,
  discriminants, gcd/squarefree, Newton polygons, and the expression parser
- ``germs``: hypersurface germs, multiplicity, Whitney arc tests
- ``dimtype``: Zariski dimensionality type via sampled linear projections
- ``puiseux``: Newton-Puiseux expansions and characteristic data
- ``resolution``: embedded resolution of plane-curve germs by point blowups
- ``quasiordinary``: quasi-ordinary certificates and characteristic monomials
- ``strata``: combinatorial stratification engine (filtrations, coarseness)
- ``cli``: command-line front end
"""

from equising.polynomials import (
    Poly,
    PolyError,
    ParseError,
    parse,
    resultant,
    discriminant,
    gcd,
    squarefree_part,
    newton_polygon,
)

__all__ = [
    "Poly",
    "PolyError",
    "ParseError",
    "parse",
    "resultant",
    "discriminant",
    "gcd",
    "squarefree_part",
    "newton_polygon",
]

__version__ = "0.1.0"
