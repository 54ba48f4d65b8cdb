"""Reference data at g = 3: the printed Weyl table and push-forward formulas.

``PRINTED_G3`` transcribes the printed push-forward formulas factor by
factor, brackets included. Three rows carry a sign slip in print; the
rows in ``CORRECTED_G3`` differ from print only in those signs. The
corrected signs are forced by independent results:

* ``{1}``: the class must be ``(1+p)[T_1] = (1+p)(p-1) lambda_1``, and
  ``[T_1] = (p-1) lambda_1`` is printed separately;
* ``{2,1}``: the printed ``lambda_3`` term already agrees with
  ``(1+p)[T_2]``; only the ``lambda_1 lambda_2`` term has the opposite sign;
* ``{3,2}``: the factor ``(-1+p-p^2)`` is negative for every prime, so
  its degree against the ample class ``lambda_1`` would be negative.
"""
from __future__ import annotations

from .ppoly import P, PPoly
from .tautring import TautClass

G = 3


def _c(terms) -> TautClass:
    return TautClass(G, terms)


# mu -> multiplicity in square brackets
G3_BRACKETS: dict[tuple[int, ...], PPoly] = {
    (): (1 + P) * (1 + P + P ** 2),
    (1,): 1 + P,
    (2, 1): 1 + P,
    (3, 1): 1 + P,
    (3, 2, 1): 1 + P ** 3,
}

PRINTED_G3: dict[tuple[int, ...], TautClass] = {
    (): _c({(): (1 + P) * (1 + P + P ** 2)}),
    (1,): _c({(1,): (1 + P) * (1 - P)}),
    (2,): _c({(2,): (P - 1) * (P ** 2 - 1)}),
    (2, 1): _c({(1, 2): (1 + P) * (1 - P) * (1 + P ** 2),
                (3,): (1 + P) * -2 * (-1 + P ** 3)}),
    (3,): _c({(3,): (P - 1) * (P ** 2 - 1) * (P ** 3 - 1)}),
    (3, 1): _c({(1, 3): (1 + P) * (-1 + P) ** 2 * (1 - P + P ** 2)}),
    (3, 2): _c({(2, 3): (-1 + P) ** 3 * (1 + P) * (-1 + P - P ** 2) * (1 + P + P ** 2)}),
    (3, 2, 1): _c({(1, 2, 3): (1 + P ** 3) * (P - 1) * (P ** 2 + 1) * (P ** 3 - 1)}),
}

CORRECTED_G3: dict[tuple[int, ...], TautClass] = dict(PRINTED_G3)
CORRECTED_G3[(1,)] = _c({(1,): (1 + P) * (P - 1)})
CORRECTED_G3[(2, 1)] = _c({(1, 2): (1 + P) * (P - 1) * (1 + P ** 2),
                           (3,): (1 + P) * -2 * (-1 + P ** 3)})
CORRECTED_G3[(3, 2)] = _c({(2, 3): (-1 + P) ** 3 * (1 + P) * (1 - P + P ** 2) * (1 + P + P ** 2)})

SIGN_SLIPS = {
    (1,): "printed factor (1-p) should be (p-1)",
    (2, 1): "printed factor (1-p) on l1*l2 should be (p-1)",
    (3, 2): "printed factor (-1+p-p^2) should be (1-p+p^2)",
}

# mu, nu, bracket permutation, length, word; the printed table lists {3} twice
PRINTED_WEYL_G3 = [
    ((), (1, 2, 3), (4, 5, 6, 1, 2, 3), 6, (3, 2, 3, 1, 2, 3)),
    ((1,), (1, 2, 2), (4, 5, 1, 6, 2, 3), 5, (2, 3, 1, 2, 3)),
    ((2,), (1, 1, 2), (4, 1, 5, 2, 6, 3), 4, (3, 1, 2, 3)),
    ((3,), (0, 1, 2), (1, 4, 5, 2, 3, 6), 3, (3, 2, 3)),
    ((2, 1), (1, 1, 1), (4, 1, 2, 5, 6, 3), 3, (1, 2, 3)),
    ((3,), (0, 1, 2), (1, 4, 5, 2, 3, 6), 3, (3, 2, 3)),
    ((3, 1), (0, 1, 1), (1, 4, 2, 5, 3, 6), 2, (2, 3)),
    ((3, 2), (0, 0, 1), (1, 2, 4, 3, 5, 6), 1, (3,)),
    ((3, 2, 1), (0, 0, 0), (1, 2, 3, 4, 5, 6), 0, ()),
]
