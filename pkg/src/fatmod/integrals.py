"""Exact evaluation of the tautological integrals, each by two routes.

Every report carries a closed-form value and an independently assembled
value (census times Pfaffian volumes where the enumeration caps allow,
otherwise assembly of the closed sub-formulas), and they must agree exactly.
The genus parameter is unbounded on the formula route; census routes are
capped by the workspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Optional

from .enumeration import catalan
from .errors import WrongType
from .hyperelliptic import count_t1, count_t2
from .kontsevich import cell_volume, hyperelliptic_cell_volume
from .workspace import Workspace

KAPPA_DUALITY_DENOMINATOR = 12  # kappa_1 = ([W1] + [boundary]) / 12
ELLIPTIC_TAIL_FACTOR = Fraction(1, 24)


@dataclass(frozen=True)
class IntegralReport:
    name: str
    param_name: str
    param: int
    value_closed: Fraction
    value_assembled: Fraction
    assembled_mode: str  # "census" or "formula"
    provenance: tuple

    @property
    def match(self) -> bool:
        return self.value_closed == self.value_assembled


def _ws(workspace) -> Workspace:
    return workspace if workspace is not None else Workspace()


def _tree_cell_volume_formula(d: int) -> Fraction:
    # odd-valence tree with 2d+1 edges: Pfaffian 4**d, half-scaled simplex
    return Fraction(factorial(d), factorial(2 * d))


def _doubled_cell_volume_formula(d: int) -> Fraction:
    return Fraction(factorial(d), 2 ** d * factorial(2 * d))


def psi_top_genus0(n: int, workspace: Optional[Workspace] = None
                   ) -> IntegralReport:
    """Top self-intersection of the cotangent class in genus zero: 1.

    Closed route: (n-2)! C_{n-3} (n-3)!/(2n-6)!; assembled route: trees with
    n-1 labeled leaves times their cell volumes.
    """
    if n < 3:
        raise WrongType("need n >= 3")
    ws = _ws(workspace)
    closed = Fraction(factorial(n - 2) * catalan(n - 3) * factorial(n - 3),
                      factorial(2 * n - 6))
    if n == 3:
        return IntegralReport("genus0", "n", n, closed, Fraction(1),
                              "formula",
                              ("moduli of three marked points is a single "
                               "unlabeled point",))
    if n <= ws.caps.genus0_assembled_n:
        census = ws.tree_census(n - 1, "trivalent")
        assembled = census.orbifold_sum(
            weight=lambda e: factorial(n - 1) * cell_volume(e.graph).value)
        mode = "census"
        notes = ("tree census %r; leaf labelings counted as (n-1)!/|Aut|"
                 % census.descriptor,)
    else:
        assembled = (Fraction(factorial(n - 2) * catalan(n - 3))
                     * _tree_cell_volume_formula(n - 3))
        mode = "formula"
        notes = ("labeled tree count times volume formula",)
    return IntegralReport("genus0", "n", n, closed, assembled, mode, notes)


def psi_top_moduli(g: int, workspace: Optional[Workspace] = None
                   ) -> IntegralReport:
    """Top power of the cotangent class over the one-pointed moduli space.

    Closed route: (3g-2)!/(2^g (6g-4)!) times the orbifold class count;
    assembled route: per-cell Pfaffian volumes.  Both consume the trivalent
    census, but the closed route uses only automorphism orders.
    """
    if g < 1:
        raise WrongType("need g >= 1")
    ws = _ws(workspace)
    census = ws.trivalent_census(g)
    # the closed route rebuilds the weighted class count from a pristine
    # census, so a corrupted census on the assembled route is detected
    aut_sum = ws.pristine_trivalent_census(g).orbifold_sum()
    closed = Fraction(factorial(3 * g - 2),
                      2 ** g * factorial(6 * g - 4)) * aut_sum
    assembled = census.orbifold_sum(
        weight=lambda e: cell_volume(e.graph).value)
    return IntegralReport(
        "psi-top", "g", g, closed, assembled, "census",
        ("census %r, %d classes, weighted count %s"
         % (census.descriptor, len(census), aut_sum),))


def psi_top_hyperelliptic(g: int, workspace: Optional[Workspace] = None
                          ) -> IntegralReport:
    """psi^(2g-1) over the closed hyperelliptic locus:
    1/(2^(2g) (2g+1)!)."""
    if g < 1:
        raise WrongType("need g >= 1")
    ws = _ws(workspace)
    closed = Fraction(1, 2 ** (2 * g) * factorial(2 * g + 1))
    if g <= ws.caps.hyperelliptic_assembled_g:
        census = ws.hyperelliptic_census(g)
        assembled = census.orbifold_sum(
            weight=lambda e: hyperelliptic_cell_volume(e.payload).value)
        mode = "census"
        notes = ("census %r, %d cells" % (census.descriptor, len(census)),)
    else:
        assembled = (Fraction(catalan(2 * g - 1), 2 * (2 * g + 1))
                     * _doubled_cell_volume_formula(2 * g - 1))
        mode = "formula"
        notes = ("orbifold cell count C_{2g-1}/(2(2g+1)) times the doubled "
                 "cell volume d!/(2^d (2d)!), d = 2g-1",)
    return IntegralReport("hevol", "g", g, closed, assembled, mode, notes)


def w1_h_integral(g: int, workspace: Optional[Workspace] = None
                  ) -> IntegralReport:
    """psi^(2g-2) over the Witten-cycle intersection with the hyperelliptic
    locus: (10g^2-13g+3)/(2^(2g-2) (2g+1)!)."""
    if g < 2:
        raise WrongType("need g >= 2")
    ws = _ws(workspace)
    closed = Fraction(10 * g * g - 13 * g + 3,
                      2 ** (2 * g - 2) * factorial(2 * g + 1))
    if g <= ws.caps.w1_assembled_g:
        comps = ws.w1_components(g)
        vol = lambda e: hyperelliptic_cell_volume(e.payload).value
        assembled = (comps.multiplicity1 * comps.component1.orbifold_sum(vol)
                     + comps.multiplicity2 * comps.component2.orbifold_sum(vol))
        mode = "census"
        notes = ("component censuses %r (multiplicity %d) and %r "
                 "(multiplicity %d), per-cell volumes"
                 % (comps.component1.descriptor, comps.multiplicity1,
                    comps.component2.descriptor, comps.multiplicity2),)
    else:
        vol = _doubled_cell_volume_formula(2 * g - 2)
        assembled = vol * (2 * count_t1(g) + 3 * count_t2(g))
        mode = "formula"
        notes = ("common cell volume (2g-2)!/(2^(2g-2) (4g-4)!) times the "
                 "weighted component counts",)
    return IntegralReport("w1h", "g", g, closed, assembled, mode, notes)


def boundary_integral(g: int, workspace: Optional[Workspace] = None
                      ) -> IntegralReport:
    """psi^(2g-2) over the boundary part of the closed hyperelliptic locus:
    1/(2^(2g-1) (2g-1)!).

    Assembled as half of the genus-(g-1) hyperelliptic top integral; the
    factor 1/2 and the exponent shift come from identifying the relevant
    boundary component with half of the universal curve and applying the
    string equation.
    """
    if g < 2:
        raise WrongType("need g >= 2")
    ws = _ws(workspace)
    closed = Fraction(1, 2 ** (2 * g - 1) * factorial(2 * g - 1))
    sub = psi_top_hyperelliptic(g - 1, ws)
    assembled = Fraction(1, 2) * sub.value_assembled
    return IntegralReport(
        "boundary", "g", g, closed, assembled, sub.assembled_mode,
        ("one half of the genus-%d hyperelliptic top integral (string "
         "equation step)" % (g - 1),) + sub.provenance)


def boundary_integral_stable_path(g: int,
                                  workspace: Optional[Workspace] = None
                                  ) -> Fraction:
    """Alternative route through stable one-node cells: rooted trivalent
    trees with 2g leaves, doubled; the rooted census count over two, times
    the common doubled-cell volume."""
    ws = _ws(workspace)
    rooted = ws.tree_census(2 * g, "trivalent", rooting="rooted")
    return Fraction(len(rooted), 2) * _doubled_cell_volume_formula(2 * g - 2)


def main_theorem(g: int, workspace: Optional[Workspace] = None
                 ) -> IntegralReport:
    """kappa_1 psi^(2g-2) over the closed hyperelliptic locus:
    (2g-1)^2/(2^(2g) (2g+1)!).

    For g >= 2 this is (w1h + boundary)/12 under the duality constant; the
    g = 1 value is the twelfth of the boundary point weighted by its order-2
    automorphism group.
    """
    if g < 1:
        raise WrongType("need g >= 1")
    ws = _ws(workspace)
    closed = Fraction((2 * g - 1) ** 2, 2 ** (2 * g) * factorial(2 * g + 1))
    if g == 1:
        assembled = Fraction(1, KAPPA_DUALITY_DENOMINATOR) * Fraction(1, 2)
        return IntegralReport(
            "main-theorem", "g", 1, closed, assembled, "formula",
            ("no 5-valent cells exist at genus one; the boundary is a "
             "single point with an automorphism group of order two",))
    poly = 10 * g * g - 13 * g + 3 + g * (2 * g + 1)
    if poly != 3 * (2 * g - 1) ** 2:
        raise AssertionError("numerator identity failed at g=%d" % g)
    w1h = w1_h_integral(g, ws)
    boundary = boundary_integral(g, ws)
    assembled = (w1h.value_assembled + boundary.value_assembled) \
        / KAPPA_DUALITY_DENOMINATOR
    mode = "census" if "census" in (w1h.assembled_mode,
                                    boundary.assembled_mode) else "formula"
    return IntegralReport(
        "main-theorem", "g", g, closed, assembled, mode,
        ("(w1h + boundary)/12",) + w1h.provenance + boundary.provenance)


def hodge_corollary(g: int, workspace: Optional[Workspace] = None
                    ) -> IntegralReport:
    """The alternating Hodge-integral combination:
    (14g^2-11g+3)/(3 2^(2g) (2g+1)!).

    Assembled as the main value plus the elliptic-tail boundary term
    (1/24) / (2^(2g-2) (2g-1)!).
    """
    if g < 2:
        raise WrongType("need g >= 2")
    ws = _ws(workspace)
    closed = Fraction(14 * g * g - 11 * g + 3,
                      3 * 2 ** (2 * g) * factorial(2 * g + 1))
    main = main_theorem(g, ws)
    tail = ELLIPTIC_TAIL_FACTOR / (2 ** (2 * g - 2) * factorial(2 * g - 1))
    assembled = main.value_assembled + tail
    return IntegralReport(
        "corollary", "g", g, closed, assembled, main.assembled_mode,
        ("main value plus elliptic-tail term (1/24)/(2^(2g-2)(2g-1)!)",)
        + main.provenance)


def bernoulli(n: int) -> Fraction:
    """Bernoulli numbers, B_1 = -1/2 convention."""
    values = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        for k in range(m):
            acc += comb(m + 1, k) * values[k]
        values.append(-acc / (m + 1))
    return values[n]


def zeta_negative(g: int) -> Fraction:
    """zeta(1 - 2g) = -B_{2g}/(2g), the virtual Euler characteristic of the
    one-pointed moduli space."""
    return -bernoulli(2 * g) / (2 * g)


def euler_report(g: int, workspace: Optional[Workspace] = None
                 ) -> IntegralReport:
    """Virtual Euler characteristic via the alternating census sum against
    the Bernoulli closed form."""
    if g < 1:
        raise WrongType("need g >= 1")
    ws = _ws(workspace)
    closed = zeta_negative(g)
    census = ws.all_valence_census(g)
    assembled = census.orbifold_sum(
        weight=lambda e: (-1) ** (e.graph.num_edges - 1))
    return IntegralReport(
        "euler", "g", g, closed, assembled, "census",
        ("alternating sum over %r, %d classes; closed form -B_{2g}/2g"
         % (census.descriptor, len(census)),))


IDENTITIES = {
    "genus0": ("n", psi_top_genus0),
    "psi-top": ("g", psi_top_moduli),
    "hevol": ("g", psi_top_hyperelliptic),
    "w1h": ("g", w1_h_integral),
    "boundary": ("g", boundary_integral),
    "main-theorem": ("g", main_theorem),
    "corollary": ("g", hodge_corollary),
    "euler": ("g", euler_report),
}
